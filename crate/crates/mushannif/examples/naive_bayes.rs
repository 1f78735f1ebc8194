//! Trains a Naive Bayes classifier on a tiny two-class corpus and walks
//! through priors, smoothed likelihoods, and a classification.
//!
//! Run with `cargo run --example naive_bayes`.

use mushannif::bayes::NBModel;
use mushannif::textproc::{ProcessedDocument, Preprocessor};

fn group(pre: &Preprocessor, label: &str, texts: &[&str]) -> (String, Vec<ProcessedDocument>) {
    let docs = texts
        .iter()
        .enumerate()
        .map(|(i, t)| pre.process_text(&format!("{label}/{i}"), t))
        .collect();
    (label.to_string(), docs)
}

fn main() {
    let pre = Preprocessor::default_system();

    let classes = vec![
        group(
            &pre,
            "رياضة",
            &[
                "فاز الفريق في مباراة كرة القدم",
                "سجل اللاعب هدف الفوز في الملعب",
                "انطلقت البطولة بمشاركة عشرة فرق",
            ],
        ),
        group(
            &pre,
            "اقتصاد",
            &[
                "ارتفعت اسعار الاسهم في البورصة",
                "اعلن البنك المركزي عن خطة جديدة للاستثمار",
                "انخفض سعر النفط في الاسواق العالمية",
            ],
        ),
    ];

    let model = NBModel::train(&classes, 1.0, pre.fingerprint()).expect("trainable corpus");

    println!("classes:        {:?}", model.classes());
    println!("vocabulary:     {} terms", model.vocabulary().len());
    println!("alpha:          {}", model.alpha());
    println!();

    for class in model.classes() {
        println!("Pr({class}) = {:.4}", model.prior(class).unwrap());
    }
    println!();

    // smoothing keeps unseen tokens from zeroing a product
    for token in ["فريق", "بنك", "قمر"] {
        for class in model.classes() {
            println!(
                "Pr({token} | {class}) = {:.5}",
                model.likelihood(class, token).unwrap()
            );
        }
    }
    println!();

    let query = "حقق الفريق فوزا جديدا في البطولة";
    let doc = pre.process_text("query", query);
    let prediction = model.classify(&doc, &pre.fingerprint()).unwrap();

    println!("query: {query}");
    println!("predicted class: {}", prediction.label);
    println!("log-score margin over runner-up: {:.4}", prediction.margin);
    println!();
    println!("class\tlog score");
    for (label, score) in prediction.ranked() {
        println!("{label}\t{score:.4}");
    }
}
