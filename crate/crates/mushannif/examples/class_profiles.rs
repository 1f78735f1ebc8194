//! Builds class profiles incrementally from preprocessed documents and
//! prints the token statistics a Naive Bayes model is made of.
//!
//! Run with `cargo run --example class_profiles`.

use mushannif::bayes::ClassProfile;
use mushannif::textproc::Preprocessor;

fn main() {
    let pre = Preprocessor::default_system();

    let sport_docs = [
        "فاز الفريق في مباراة كرة القدم بهدفين",
        "سجل المهاجم هدف الفوز في الدقيقة الاخيرة من المباراة",
        "تدرب اللاعبون في الملعب استعدادا للبطولة",
    ];

    let mut profile = ClassProfile::new("رياضة");
    for (i, text) in sport_docs.iter().enumerate() {
        let doc = pre.process_text(&format!("doc{i}"), text);
        println!("adding {} -> {}", doc.source_id, doc.tokens.join(" "));
        profile.add_document(&doc);
    }

    println!();
    println!("class:            {}", profile.label());
    println!("documents:        {}", profile.doc_count());
    println!("distinct tokens:  {}", profile.vocabulary_size());
    println!("total count:      {}", profile.total_count());
    println!();

    // each document contributes every distinct token once, so a count says
    // "this many documents of the class contain the token"
    println!("token\tdocuments containing it");
    for (token, count) in profile.tokens() {
        println!("{token}\t{count}");
    }

    println!();
    println!(
        "token 'مبارا' appears in {} of {} documents",
        profile.count_of("مبارا"),
        profile.doc_count()
    );
}
