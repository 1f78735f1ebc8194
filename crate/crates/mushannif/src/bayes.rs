//! Naive Bayes classification over incrementally built class profiles.
//!
//! Training folds each document into its class profile in arrival order; a
//! profile records how many documents contributed each token. Because the
//! standard pipeline deduplicates tokens within a document first, a token
//! counts at most once per document and the stored count is a document
//! frequency. Scoring runs in log space with additive smoothing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use indexmap::IndexMap;
use thiserror::Error;

use crate::prediction::Prediction;
use crate::textproc::{PreprocessFingerprint, ProcessedDocument};

/// Errors from profile building, training, scoring, and model files.
#[derive(Debug, Error)]
pub enum BayesError {
    #[error("class {0} has no documents")]
    EmptyClass(String),
    #[error("model needs at least 2 classes, got {0}")]
    DegenerateModel(usize),
    #[error("smoothing parameter must be a positive finite number, got {0}")]
    InvalidAlpha(f64),
    #[error("training produced an empty vocabulary")]
    EmptyVocabulary,
    #[error("duplicate class label {0} in training input")]
    DuplicateClass(String),
    #[error("document was preprocessed with {got}, model expects {expected}")]
    IncompatiblePreprocessing { expected: String, got: String },
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Format(String),
}

/// The accumulated token statistics of one class. Tokens are kept in first
/// appearance order, mirroring how the profile grows document by document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    label: String,
    token_counts: IndexMap<String, u64>,
    doc_count: u64,
}

impl ClassProfile {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            token_counts: IndexMap::new(),
            doc_count: 0,
        }
    }

    /// Folds one document in: each distinct token of the document bumps its
    /// count by one. A token seen for the first time is appended to the
    /// profile; existing tokens keep their position.
    pub fn add_document(&mut self, doc: &ProcessedDocument) {
        let distinct: Vec<&str> = {
            let mut seen = BTreeSet::new();
            doc.tokens
                .iter()
                .map(String::as_str)
                .filter(|t| seen.insert(*t))
                .collect()
        };
        for token in distinct {
            *self
                .token_counts
                .entry(token.to_string())
                .or_insert(0) += 1;
        }
        self.doc_count += 1;
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn doc_count(&self) -> u64 {
        self.doc_count
    }

    /// How many contributing documents contained `token`.
    pub fn count_of(&self, token: &str) -> u64 {
        self.token_counts.get(token).copied().unwrap_or(0)
    }

    /// Tokens in first-appearance order with their counts.
    pub fn tokens(&self) -> impl Iterator<Item = (&str, u64)> {
        self.token_counts.iter().map(|(t, &c)| (t.as_str(), c))
    }

    /// Number of distinct tokens in the profile.
    pub fn vocabulary_size(&self) -> usize {
        self.token_counts.len()
    }

    /// Sum of all token counts.
    pub fn total_count(&self) -> u64 {
        self.token_counts.values().sum()
    }
}

/// Builds a profile from a class's documents in the order given.
pub fn build_class_profile(
    label: &str,
    docs: &[ProcessedDocument],
) -> Result<ClassProfile, BayesError> {
    if docs.is_empty() {
        return Err(BayesError::EmptyClass(label.to_string()));
    }
    let mut profile = ClassProfile::new(label);
    for doc in docs {
        profile.add_document(doc);
    }
    Ok(profile)
}

const NB_MAGIC: &str = "mushannif-nb v1";

/// A trained Naive Bayes model.
#[derive(Debug, Clone)]
pub struct NBModel {
    profiles: Vec<ClassProfile>,
    total_docs: u64,
    vocabulary: BTreeSet<String>,
    alpha: f64,
    fingerprint: PreprocessFingerprint,
}

impl NBModel {
    /// Trains from per-class document groups. Every class needs at least one
    /// document, labels must be unique, at least two classes must be
    /// present, and the pooled vocabulary may not be empty. `alpha` is the
    /// additive smoothing constant.
    pub fn train(
        classes: &[(String, Vec<ProcessedDocument>)],
        alpha: f64,
        fingerprint: PreprocessFingerprint,
    ) -> Result<Self, BayesError> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(BayesError::InvalidAlpha(alpha));
        }
        if classes.len() < 2 {
            return Err(BayesError::DegenerateModel(classes.len()));
        }
        let mut seen = BTreeSet::new();
        for (label, _) in classes {
            if !seen.insert(label.as_str()) {
                return Err(BayesError::DuplicateClass(label.clone()));
            }
        }
        let mut profiles = Vec::with_capacity(classes.len());
        for (label, docs) in classes {
            profiles.push(build_class_profile(label, docs)?);
        }
        profiles.sort_by(|a, b| a.label.cmp(&b.label));
        let vocabulary: BTreeSet<String> = profiles
            .iter()
            .flat_map(|p| p.token_counts.keys().cloned())
            .collect();
        if vocabulary.is_empty() {
            return Err(BayesError::EmptyVocabulary);
        }
        let total_docs = profiles.iter().map(|p| p.doc_count).sum();
        Ok(Self {
            profiles,
            total_docs,
            vocabulary,
            alpha,
            fingerprint,
        })
    }

    /// Profiles in label order.
    pub fn profiles(&self) -> &[ClassProfile] {
        &self.profiles
    }

    pub fn classes(&self) -> Vec<&str> {
        self.profiles.iter().map(|p| p.label.as_str()).collect()
    }

    pub fn vocabulary(&self) -> &BTreeSet<String> {
        &self.vocabulary
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn fingerprint(&self) -> &PreprocessFingerprint {
        &self.fingerprint
    }

    pub fn total_docs(&self) -> u64 {
        self.total_docs
    }

    /// Prior probability of a class: its share of the training documents.
    pub fn prior(&self, label: &str) -> Option<f64> {
        self.profiles
            .iter()
            .find(|p| p.label == label)
            .map(|p| p.doc_count as f64 / self.total_docs as f64)
    }

    /// Smoothed token likelihood
    /// `(count + alpha) / (profile_total + alpha * |V|)`.
    pub fn likelihood(&self, label: &str, token: &str) -> Option<f64> {
        let profile = self.profiles.iter().find(|p| p.label == label)?;
        let denom = profile.total_count() as f64 + self.alpha * self.vocabulary.len() as f64;
        Some((profile.count_of(token) as f64 + self.alpha) / denom)
    }

    /// Scores a document against every class in log space: log prior plus
    /// the sum of log likelihoods of its tokens (with multiplicity). Tokens
    /// outside the training vocabulary are skipped. The document must carry
    /// the fingerprint of the preprocessing the model was trained with.
    pub fn classify(
        &self,
        doc: &ProcessedDocument,
        fingerprint: &PreprocessFingerprint,
    ) -> Result<Prediction, BayesError> {
        if *fingerprint != self.fingerprint {
            return Err(BayesError::IncompatiblePreprocessing {
                expected: self.fingerprint.to_string(),
                got: fingerprint.to_string(),
            });
        }
        let mut scores = BTreeMap::new();
        for profile in &self.profiles {
            let mut score = (profile.doc_count as f64 / self.total_docs as f64).ln();
            let denom = profile.total_count() as f64 + self.alpha * self.vocabulary.len() as f64;
            for token in &doc.tokens {
                if !self.vocabulary.contains(token) {
                    continue;
                }
                score += ((profile.count_of(token) as f64 + self.alpha) / denom).ln();
            }
            scores.insert(profile.label.clone(), score);
        }
        Prediction::from_scores(scores).ok_or(BayesError::DegenerateModel(0))
    }

    /// Serializes the model to its line-oriented text form.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{NB_MAGIC}");
        let _ = writeln!(out, "fingerprint {}", self.fingerprint);
        let _ = writeln!(out, "alpha {}", self.alpha);
        for profile in &self.profiles {
            let _ = writeln!(out, "[class {} docs={}]", profile.label, profile.doc_count);
            let mut entries: Vec<(&String, &u64)> = profile.token_counts.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            for (token, count) in entries {
                let _ = writeln!(out, "{token}\t{count}");
            }
        }
        out
    }

    /// Parses a model from its text form.
    pub fn deserialize(content: &str) -> Result<Self, BayesError> {
        let mut lines = content.lines();
        match lines.next() {
            Some(NB_MAGIC) => {}
            other => {
                return Err(BayesError::Format(format!(
                    "expected header {NB_MAGIC:?}, got {other:?}"
                )))
            }
        }
        let fingerprint = lines
            .next()
            .and_then(|l| l.strip_prefix("fingerprint "))
            .and_then(PreprocessFingerprint::parse)
            .ok_or_else(|| BayesError::Format("missing or bad fingerprint line".into()))?;
        let alpha: f64 = lines
            .next()
            .and_then(|l| l.strip_prefix("alpha "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| BayesError::Format("missing or bad alpha line".into()))?;
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(BayesError::InvalidAlpha(alpha));
        }

        let mut profiles: Vec<ClassProfile> = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("[class ") {
                let inner = rest
                    .strip_suffix(']')
                    .ok_or_else(|| BayesError::Format(format!("unterminated section {line:?}")))?;
                let (label, docs) = inner
                    .rsplit_once(" docs=")
                    .ok_or_else(|| BayesError::Format(format!("bad section header {line:?}")))?;
                let doc_count: u64 = docs
                    .parse()
                    .map_err(|_| BayesError::Format(format!("bad doc count in {line:?}")))?;
                profiles.push(ClassProfile {
                    label: label.to_string(),
                    token_counts: IndexMap::new(),
                    doc_count,
                });
            } else {
                let profile = profiles
                    .last_mut()
                    .ok_or_else(|| BayesError::Format("token line before any class".into()))?;
                let (token, count) = line
                    .split_once('\t')
                    .ok_or_else(|| BayesError::Format(format!("bad token line {line:?}")))?;
                let count: u64 = count
                    .parse()
                    .map_err(|_| BayesError::Format(format!("bad count in {line:?}")))?;
                profile.token_counts.insert(token.to_string(), count);
            }
        }
        if profiles.len() < 2 {
            return Err(BayesError::DegenerateModel(profiles.len()));
        }
        profiles.sort_by(|a, b| a.label.cmp(&b.label));
        let vocabulary: BTreeSet<String> = profiles
            .iter()
            .flat_map(|p| p.token_counts.keys().cloned())
            .collect();
        if vocabulary.is_empty() {
            return Err(BayesError::EmptyVocabulary);
        }
        let total_docs = profiles.iter().map(|p| p.doc_count).sum();
        Ok(Self {
            profiles,
            total_docs,
            vocabulary,
            alpha,
            fingerprint,
        })
    }

    /// Writes the model file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), BayesError> {
        let path = path.as_ref();
        fs::write(path, self.serialize()).map_err(|source| BayesError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads a model file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, BayesError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| BayesError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::deserialize(&content)
    }

    /// Writes one plain-text file per class into `dir`: the profile's tokens
    /// in first-appearance order, one per line. The file is named after the
    /// class with a `.txt` extension.
    pub fn write_class_files(&self, dir: impl AsRef<Path>) -> Result<(), BayesError> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(|source| BayesError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for profile in &self.profiles {
            let path = dir.join(format!("{}.txt", profile.label));
            let mut content = String::new();
            for (token, _) in profile.tokens() {
                content.push_str(token);
                content.push('\n');
            }
            fs::write(&path, content).map_err(|source| BayesError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pdoc(id: &str, tokens: &[&str]) -> ProcessedDocument {
        ProcessedDocument::new(id, tokens.iter().map(|t| t.to_string()).collect())
    }

    fn fp() -> PreprocessFingerprint {
        PreprocessFingerprint {
            profile: "system".into(),
            stemmer_hash: "0".repeat(16),
            stoplist_hash: "1".repeat(16),
        }
    }

    #[test]
    fn profile_grows_in_first_appearance_order() {
        let mut p = ClassProfile::new("c");
        p.add_document(&pdoc("1", &["ب", "ا"]));
        p.add_document(&pdoc("2", &["ا", "ج"]));
        let tokens: Vec<(&str, u64)> = p.tokens().collect();
        assert_eq!(tokens, [("ب", 1), ("ا", 2), ("ج", 1)]);
        assert_eq!(p.doc_count(), 2);
    }

    #[test]
    fn profile_counts_each_document_once_per_token() {
        let mut p = ClassProfile::new("c");
        // repeated token within one document still counts once
        p.add_document(&pdoc("1", &["ا", "ا", "ا"]));
        assert_eq!(p.count_of("ا"), 1);
    }

    #[test]
    fn build_class_profile_rejects_empty() {
        assert!(matches!(
            build_class_profile("c", &[]),
            Err(BayesError::EmptyClass(_))
        ));
    }

    fn two_class_model(alpha: f64) -> NBModel {
        let classes = vec![
            (
                "a".to_string(),
                vec![
                    pdoc("a1", &["x", "y"]),
                    pdoc("a2", &["x"]),
                    pdoc("a3", &["z"]),
                ],
            ),
            ("b".to_string(), vec![pdoc("b1", &["z"])]),
        ];
        NBModel::train(&classes, alpha, fp()).unwrap()
    }

    #[test]
    fn priors_are_document_shares() {
        let model = two_class_model(1.0);
        assert!((model.prior("a").unwrap() - 0.75).abs() < 1e-12);
        assert!((model.prior("b").unwrap() - 0.25).abs() < 1e-12);
        assert_eq!(model.prior("zzz"), None);
    }

    #[test]
    fn likelihoods_match_hand_computation() {
        // class a counts: x=2, y=1, z=1 (total 4); vocab {x,y,z}; alpha=1
        // P(x|a) = (2+1)/(4+3) = 3/7
        let model = two_class_model(1.0);
        assert!((model.likelihood("a", "x").unwrap() - 3.0 / 7.0).abs() < 1e-12);
        assert!((model.likelihood("a", "y").unwrap() - 2.0 / 7.0).abs() < 1e-12);
        // unseen token in class b: (0+1)/(1+3) = 1/4
        assert!((model.likelihood("b", "x").unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn classify_prefers_matching_class() {
        let model = two_class_model(1.0);
        let p = model.classify(&pdoc("t", &["x", "y"]), &fp()).unwrap();
        assert_eq!(p.label, "a");
        assert_eq!(p.scores.len(), 2);
        assert!(p.margin > 0.0);
    }

    #[test]
    fn classify_skips_oov_tokens() {
        let model = two_class_model(1.0);
        let with_oov = model
            .classify(&pdoc("t", &["x", "غريب", "y"]), &fp())
            .unwrap();
        let without = model.classify(&pdoc("t", &["x", "y"]), &fp()).unwrap();
        assert_eq!(with_oov.scores, without.scores);
    }

    #[test]
    fn classify_all_oov_falls_back_to_priors() {
        let model = two_class_model(1.0);
        let p = model.classify(&pdoc("t", &["غريب"]), &fp()).unwrap();
        assert_eq!(p.label, "a");
        let expected = 0.75f64.ln() - 0.25f64.ln();
        assert!((p.margin - expected).abs() < 1e-12);
    }

    #[test]
    fn classify_rejects_mismatched_fingerprint() {
        let model = two_class_model(1.0);
        let other = PreprocessFingerprint {
            profile: "khreisat".into(),
            stemmer_hash: "0".repeat(16),
            stoplist_hash: "1".repeat(16),
        };
        assert!(matches!(
            model.classify(&pdoc("t", &["x"]), &other),
            Err(BayesError::IncompatiblePreprocessing { .. })
        ));
    }

    #[test]
    fn train_validations() {
        let one_class = vec![("a".to_string(), vec![pdoc("1", &["x"])])];
        assert!(matches!(
            NBModel::train(&one_class, 1.0, fp()),
            Err(BayesError::DegenerateModel(1))
        ));

        let dup = vec![
            ("a".to_string(), vec![pdoc("1", &["x"])]),
            ("a".to_string(), vec![pdoc("2", &["y"])]),
        ];
        assert!(matches!(
            NBModel::train(&dup, 1.0, fp()),
            Err(BayesError::DuplicateClass(_))
        ));

        let ok = vec![
            ("a".to_string(), vec![pdoc("1", &["x"])]),
            ("b".to_string(), vec![pdoc("2", &["y"])]),
        ];
        for bad_alpha in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                NBModel::train(&ok, bad_alpha, fp()),
                Err(BayesError::InvalidAlpha(_))
            ));
        }

        let empty_class = vec![
            ("a".to_string(), vec![pdoc("1", &["x"])]),
            ("b".to_string(), vec![]),
        ];
        assert!(matches!(
            NBModel::train(&empty_class, 1.0, fp()),
            Err(BayesError::EmptyClass(_))
        ));

        let empty_vocab = vec![
            ("a".to_string(), vec![pdoc("1", &[])]),
            ("b".to_string(), vec![pdoc("2", &[])]),
        ];
        assert!(matches!(
            NBModel::train(&empty_vocab, 1.0, fp()),
            Err(BayesError::EmptyVocabulary)
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let model = two_class_model(0.5);
        let text = model.serialize();
        assert!(text.starts_with("mushannif-nb v1\n"));
        let back = NBModel::deserialize(&text).unwrap();
        assert_eq!(back.serialize(), text);
        assert_eq!(back.alpha(), 0.5);
        assert_eq!(back.total_docs(), 4);
        assert_eq!(back.fingerprint(), model.fingerprint());
        // scoring agrees exactly
        let doc = pdoc("t", &["x", "z"]);
        let p1 = model.classify(&doc, &fp()).unwrap();
        let p2 = back.classify(&doc, &fp()).unwrap();
        assert_eq!(p1.scores, p2.scores);
    }

    #[test]
    fn deserialize_rejects_garbage() {
        assert!(matches!(
            NBModel::deserialize("not a model"),
            Err(BayesError::Format(_))
        ));
        assert!(matches!(
            NBModel::deserialize("mushannif-nb v2\n"),
            Err(BayesError::Format(_))
        ));
        let missing_alpha = "mushannif-nb v1\nfingerprint a:b:c\n";
        assert!(matches!(
            NBModel::deserialize(missing_alpha),
            Err(BayesError::Format(_))
        ));
    }

    #[test]
    fn save_and_load_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.nb");
        let model = two_class_model(1.0);
        model.save(&path).unwrap();
        let back = NBModel::load(&path).unwrap();
        assert_eq!(back.serialize(), model.serialize());
    }

    #[test]
    fn class_files_list_tokens_in_arrival_order() {
        let dir = tempfile::tempdir().unwrap();
        let classes = vec![
            (
                "sport".to_string(),
                vec![pdoc("1", &["كره", "ملعب"]), pdoc("2", &["هدف", "كره"])],
            ),
            ("econ".to_string(), vec![pdoc("3", &["سوق"])]),
        ];
        let model = NBModel::train(&classes, 1.0, fp()).unwrap();
        model.write_class_files(dir.path()).unwrap();
        let sport = fs::read_to_string(dir.path().join("sport.txt")).unwrap();
        assert_eq!(sport, "كره\nملعب\nهدف\n");
        let econ = fs::read_to_string(dir.path().join("econ.txt")).unwrap();
        assert_eq!(econ, "سوق\n");
    }
}
