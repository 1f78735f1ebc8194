//! Runs every classifier over the same stratified split of a small corpus
//! and prints the ranked comparison plus the winner's full report.
//!
//! Run with `cargo run --example compare_classifiers`.

use mushannif::corpus::{Corpus, LabeledDocument, SplitSpec};
use mushannif::eval::{compare_classifiers, ClassifierSpec, PipelineSpec};
use mushannif::knn::Weighting;
use mushannif::ngram::Measure;

fn main() {
    let sport = [
        "فاز الفريق في مباراة كرة القدم وسجل المهاجم هدفين",
        "انطلقت البطولة بمشاركة عشرة فرق في الملعب الجديد",
        "حقق المنتخب فوزا كبيرا في مباراة كرة السلة",
        "تدرب الحارس على صد الكرات قبل المباراة النهائية",
        "تعادل الفريقان في مباراة مثيرة حسمها هدف اللاعب البديل",
    ];
    let econ = [
        "ارتفعت الاسهم في سوق المال وحققت البورصة ارباحا",
        "اعلن البنك المركزي عن خطة تمويل لدعم الاستثمار",
        "انخفض سعر النفط في الاسواق العالمية وتراجعت الارباح",
        "وقعت الوزارة اتفاقية تجارة حرة لتنشيط الصادرات",
        "سجل الاقتصاد نموا قويا بفضل زيادة الانتاج الصناعي",
    ];

    let mut documents = Vec::new();
    for (class, texts) in [("رياضة", &sport), ("اقتصاد", &econ)] {
        for (i, text) in texts.iter().enumerate() {
            documents.push(LabeledDocument::labeled(format!("{class}/{i}"), class, *text));
        }
    }
    let corpus = Corpus::from_documents(documents);

    let specs = [
        ClassifierSpec::NaiveBayes { alpha: 1.0 },
        ClassifierSpec::Knn {
            k: 3,
            weighting: Weighting::TfIdf,
        },
        ClassifierSpec::Ngram {
            n: 3,
            truncation: Some(300),
            measure: Measure::Manhattan,
        },
        ClassifierSpec::Ngram {
            n: 3,
            truncation: Some(300),
            measure: Measure::Dice,
        },
    ];

    let split = SplitSpec {
        train_fraction: 0.6,
        seed: 3,
    };
    let comparison =
        compare_classifiers(&corpus, &specs, &PipelineSpec::default(), &split).unwrap();

    println!("{}", comparison.to_tsv());

    let winner = comparison.winner();
    println!(
        "winner: {} ({})",
        winner.classifier, winner.params
    );
    println!();
    println!("{}", winner.report.to_tsv());
}
