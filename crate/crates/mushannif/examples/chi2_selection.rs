//! Scores term-class association with the chi-squared statistic and picks
//! the most discriminative terms for each class.
//!
//! Run with `cargo run --example chi2_selection`.

use mushannif::textproc::Preprocessor;
use mushannif::vectorize::{chi_squared, contingency_for_term, select_top_terms, ContingencyTable};

fn main() {
    // a hand-built contingency table: how often a term and a class
    // co-occur across documents
    let table = ContingencyTable {
        a: 4, // class documents containing the term
        b: 1, // other documents containing the term
        c: 1, // class documents without the term
        d: 4, // other documents without the term
    };
    println!(
        "chi2 for a={} b={} c={} d={}: {}",
        table.a,
        table.b,
        table.c,
        table.d,
        chi_squared(&table).unwrap()
    );
    println!();

    let pre = Preprocessor::default_system();
    let texts = [
        ("رياضة", "فاز الفريق في مباراة كرة القدم"),
        ("رياضة", "سجل المهاجم هدف الفوز في المباراة"),
        ("رياضة", "تدرب اللاعبون في ملعب النادي"),
        ("اقتصاد", "ارتفعت الاسهم في سوق المال"),
        ("اقتصاد", "اعلن البنك المركزي خطة الاستثمار"),
        ("اقتصاد", "انخفض سعر النفط في الاسواق"),
    ];
    let docs: Vec<_> = texts
        .iter()
        .enumerate()
        .map(|(i, (label, text))| {
            (
                label.to_string(),
                pre.process_text(&format!("doc{i}"), text),
            )
        })
        .collect();

    // the table behind one term, derived from document presence
    let table = contingency_for_term(&docs, "مبارا", "رياضة");
    println!(
        "'مبارا' vs class 'رياضة': a={} b={} c={} d={}",
        table.a, table.b, table.c, table.d
    );
    println!();

    for class in ["رياضة", "اقتصاد"] {
        println!("top terms for {class}:");
        println!("rank\tterm\tchi2");
        for (i, scored) in select_top_terms(&docs, class, 5).unwrap().iter().enumerate() {
            println!("{}\t{}\t{:.4}", i + 1, scored.term, scored.score);
        }
        println!();
    }
}
