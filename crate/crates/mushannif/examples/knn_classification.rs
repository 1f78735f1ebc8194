//! Classifies a document by its nearest neighbors under cosine similarity
//! over tf-idf vectors, showing the retrieved neighbors and the vote.
//!
//! Run with `cargo run --example knn_classification`.

use mushannif::knn::{KnnModel, Weighting};
use mushannif::textproc::Preprocessor;

fn main() {
    let pre = Preprocessor::default_system();

    let training = [
        ("رياضة", "فاز الفريق في مباراة كرة القدم"),
        ("رياضة", "سجل المهاجم هدفين في الملعب"),
        ("رياضة", "تدرب اللاعبون استعدادا للبطولة"),
        ("اقتصاد", "ارتفعت الاسهم في سوق المال"),
        ("اقتصاد", "اعلن البنك عن ارباح قياسية"),
        ("اقتصاد", "انخفض سعر النفط في الاسواق"),
    ];

    let docs: Vec<_> = training
        .iter()
        .enumerate()
        .map(|(i, (label, text))| {
            (
                label.to_string(),
                pre.process_text(&format!("train/{i}"), text),
            )
        })
        .collect();

    let model = KnnModel::train(&docs, Weighting::TfIdf, pre.fingerprint()).unwrap();
    println!("trained on {} documents, {} terms, weighting {}",
        model.vectors().len(),
        model.vocabulary().terms().len(),
        model.weighting().as_str(),
    );
    println!();

    let query = "خسر الفريق المباراة رغم تسجيل هدف مبكر";
    let doc = pre.process_text("query", query);

    // idf learned at training time is reused for the query vector,
    // so unseen query terms simply contribute nothing
    let k = 3;
    let neighbors = model.neighbors(&doc, k, &pre.fingerprint()).unwrap();
    println!("query: {query}");
    println!();
    println!("nearest {k} neighbors:");
    println!("doc\tclass\tcosine");
    for n in &neighbors {
        println!("{}\t{}\t{:.4}", n.doc_id, n.label, n.similarity);
    }
    println!();

    let prediction = model.classify(&doc, k, &pre.fingerprint()).unwrap();
    println!("votes:");
    for (label, votes) in &prediction.scores {
        println!("  {label}: {votes}");
    }
    println!();
    println!("predicted class: {}", prediction.label);
}
