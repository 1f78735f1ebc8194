//! Builds character n-gram profiles and compares them with rank-order
//! distance and Dice overlap, then trains a profile-per-class model.
//!
//! Run with `cargo run --example ngram_profiles`.

use mushannif::ngram::{
    dice_similarity, manhattan_distance, ngram_profile, Measure, NgramModel,
};
use mushannif::textproc::Preprocessor;

fn main() {
    // grams never cross token boundaries
    let profile = ngram_profile("المودعين في البنك", 3, None);
    println!("trigrams of 'المودعين في البنك':");
    println!("rank\tgram\tfreq");
    for (gram, freq) in profile.entries() {
        println!("{}\t{gram}\t{freq}", profile.rank_of(gram).unwrap());
    }
    println!();

    let a = ngram_profile("المودعين", 3, None);
    let b = ngram_profile("المودعون", 3, None);
    println!("comparing 'المودعين' with 'المودعون':");
    println!("  rank distance: {}", manhattan_distance(&a, &b).unwrap());
    println!("  dice overlap:  {:.4}", dice_similarity(&a, &b).unwrap());
    println!("  (distance to itself: {}, overlap with itself: {:.1})",
        manhattan_distance(&a, &a).unwrap(),
        dice_similarity(&a, &a).unwrap(),
    );
    println!();

    // a model keeps one truncated profile per class
    let pre = Preprocessor::default_system();
    let classes = vec![
        (
            "رياضة".to_string(),
            vec![
                pre.process_text("r0", "فاز الفريق في مباراة كرة القدم"),
                pre.process_text("r1", "سجل اللاعب هدف الفوز في الملعب"),
            ],
        ),
        (
            "اقتصاد".to_string(),
            vec![
                pre.process_text("e0", "ارتفعت الاسهم في البورصة العالمية"),
                pre.process_text("e1", "اعلن البنك المركزي عن خطة الاستثمار"),
            ],
        ),
    ];
    let model = NgramModel::train(&classes, 3, Some(300), pre.fingerprint()).unwrap();
    println!(
        "model: n={} truncation={:?} classes={:?}",
        model.n(),
        model.truncation(),
        model.classes()
    );

    let query = pre.process_text("q", "تعادل الفريقان في مباراة مثيرة");
    for measure in [Measure::Manhattan, Measure::Dice] {
        let prediction = model.classify(&query, measure, &pre.fingerprint()).unwrap();
        println!(
            "  {} says: {} (margin {:.4})",
            measure.as_str(),
            prediction.label,
            prediction.margin
        );
    }
}
