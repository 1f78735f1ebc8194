//! Arabic text classification toolkit.
//!
//! The crate covers the full pipeline from raw UTF-8 text to evaluation
//! reports:
//!
//! * [`corpus`] loads `root/<class>/<file>` directory trees and produces
//!   deterministic stratified train/test splits.
//! * [`textproc`] tokenizes Arabic text, folds letter variants, strips
//!   diacritics, removes stop words, and applies a light affix stemmer.
//! * [`vectorize`] turns token sequences into TF or TF-IDF vectors and
//!   ranks terms by chi-squared association for feature selection.
//! * [`bayes`] trains Naive Bayes models over incrementally built class
//!   profiles.
//! * [`knn`] classifies by cosine similarity against stored training
//!   vectors.
//! * [`ngram`] classifies by character n-gram profile comparison, with
//!   rank-based Manhattan dissimilarity or the Dice coefficient.
//! * [`eval`] scores predictions into deterministic TSV/JSON reports and
//!   runs whole experiments end to end.
//!
//! Every trained model records a [`textproc::PreprocessFingerprint`] and
//! refuses documents prepared under a different preprocessing
//! configuration, so a model can never silently consume incompatible
//! input.
//!
//! The `examples/` directory holds one runnable program per capability;
//! `cargo run --example compare_classifiers` is a good starting point.

pub mod bayes;
pub mod corpus;
pub mod eval;
pub mod knn;
pub mod ngram;
pub mod prediction;
pub mod textproc;
pub mod vectorize;

pub use bayes::{BayesError, ClassProfile, NBModel};
pub use corpus::{
    load_corpus, split_corpus, Corpus, CorpusError, CorpusSplit, LabeledDocument, SplitSpec,
};
pub use eval::{
    compare_classifiers, run_experiment, score_predictions, ClassMetrics, ClassifierSpec,
    Comparison, EvalError, EvalReport, PipelineSpec, RunMetadata,
};
pub use knn::{cosine_similarity, KnnError, KnnModel, Neighbor, Weighting};
pub use ngram::{
    classify_ngram, dice_similarity, manhattan_distance, ngram_profile, Measure, NGramProfile,
    NgramError, NgramModel,
};
pub use prediction::Prediction;
pub use textproc::{
    light_stem, normalize, preprocess, preprocess_text, remove_stopwords, tokenize,
    NormalizationProfile, PreprocessFingerprint, PreprocessOptions, Preprocessor,
    ProcessedDocument, StemmerConfig, StopList, TextError,
};
