//! Walks a sentence through each preprocessing stage: tokenization,
//! orthographic normalization, stop-word removal, and light stemming.
//!
//! Run with `cargo run --example preprocess_pipeline`.

use mushannif::textproc::{
    light_stem, normalize, remove_stopwords, tokenize, NormalizationProfile, Preprocessor,
    StemmerConfig, StopList,
};

fn main() {
    let text = "ذهب الطلاب إلى المكتبة، وقرأوا الكتبَ العلمية في قاعة المطالعة عام 2024.";
    println!("input:\n  {text}\n");

    let tokens = tokenize(text);
    println!("tokens ({}):", tokens.len());
    println!("  {}\n", tokens.join(" | "));

    let profile = NormalizationProfile::system();
    let normalized: Vec<String> = tokens.iter().map(|t| normalize(t, &profile)).collect();
    println!("normalized ({} profile):", profile.name());
    println!("  {}\n", normalized.join(" | "));

    // the khreisat profile folds fewer letters and maps a final yaa instead
    let khreisat = NormalizationProfile::khreisat();
    let alt: Vec<String> = tokens.iter().map(|t| normalize(t, &khreisat)).collect();
    println!("normalized ({} profile):", khreisat.name());
    println!("  {}\n", alt.join(" | "));

    let stops = StopList::default_arabic(&profile);
    let content = remove_stopwords(normalized, &stops);
    println!("after stop-word removal ({} entries in list):", stops.len());
    println!("  {}\n", content.join(" | "));

    let stemmer = StemmerConfig::default();
    println!("stemmed (one prefix, one suffix, stems stay >= {} letters):", stemmer.min_stem_len());
    for token in &content {
        let stem = light_stem(token, &stemmer);
        if stem == *token {
            println!("  {token}  (unchanged)");
        } else {
            println!("  {token}  ->  {stem}");
        }
    }
    println!();

    // the Preprocessor bundles the whole chain and stamps its configuration
    let pre = Preprocessor::default_system();
    let doc = pre.process_text("demo", text);
    println!("full chain with deduplication:");
    println!("  {}", doc.tokens.join(" | "));
    println!("\nfingerprint: {}", pre.fingerprint());
    println!("(models refuse input preprocessed under a different fingerprint)");
}
