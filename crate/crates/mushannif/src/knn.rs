//! K-nearest-neighbor classification with cosine similarity.
//!
//! Training stores one weight vector per document (raw term frequency or
//! TF-IDF over the training vocabulary) together with the collection's IDF
//! table, so test documents are weighted with training-time statistics. A
//! test document takes the majority label of its k most similar neighbors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::prediction::Prediction;
use crate::textproc::{PreprocessFingerprint, ProcessedDocument};
use crate::vectorize::{idf_table, term_frequency, TermWeights, Vocabulary};

/// Errors from training, scoring, and model files.
#[derive(Debug, Error)]
pub enum KnnError {
    #[error("training set is empty")]
    EmptyTraining,
    #[error("k must be between 1 and {n} (the training set size), got {k}")]
    InvalidK { k: usize, n: usize },
    #[error("vector length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
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

/// Which weighting the stored vectors use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weighting {
    Tf,
    TfIdf,
}

impl Weighting {
    pub fn as_str(self) -> &'static str {
        match self {
            Weighting::Tf => "tf",
            Weighting::TfIdf => "tfidf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "tf" => Some(Weighting::Tf),
            "tfidf" => Some(Weighting::TfIdf),
            _ => None,
        }
    }
}

/// Cosine similarity of two equal-length vectors. A zero vector on either
/// side yields similarity 0.
pub fn cosine_similarity(a: &TermWeights, b: &TermWeights) -> Result<f64, KnnError> {
    if a.weights.len() != b.weights.len() {
        return Err(KnnError::LengthMismatch(a.weights.len(), b.weights.len()));
    }
    let mut dot = 0.0;
    let mut na = 0.0;
    let mut nb = 0.0;
    for (&x, &y) in a.weights.iter().zip(&b.weights) {
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (na.sqrt() * nb.sqrt()))
}

/// One stored training vector.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingVector {
    pub label: String,
    pub weights: TermWeights,
}

/// One retrieved neighbor.
#[derive(Debug, Clone, PartialEq)]
pub struct Neighbor {
    pub doc_id: String,
    pub label: String,
    pub similarity: f64,
}

const KNN_MAGIC: &str = "mushannif-knn v1";

/// A trained k-NN model: the vectorized training set plus everything needed
/// to vectorize test documents the same way.
#[derive(Debug, Clone)]
pub struct KnnModel {
    vectors: Vec<TrainingVector>,
    vocabulary: Vocabulary,
    weighting: Weighting,
    idf: Vec<f64>,
    fingerprint: PreprocessFingerprint,
}

impl KnnModel {
    /// Builds the model from labeled documents. The vocabulary and IDF table
    /// come from the training collection alone; the IDF table is stored even
    /// under plain TF weighting so the choice can be revisited at test time
    /// by retraining, not by guessing.
    pub fn train(
        docs: &[(String, ProcessedDocument)],
        weighting: Weighting,
        fingerprint: PreprocessFingerprint,
    ) -> Result<Self, KnnError> {
        if docs.is_empty() {
            return Err(KnnError::EmptyTraining);
        }
        let vocabulary = Vocabulary::from_documents(docs.iter().map(|(_, d)| d));
        let processed: Vec<&ProcessedDocument> = docs.iter().map(|(_, d)| d).collect();
        let owned: Vec<ProcessedDocument> = processed.iter().map(|d| (*d).clone()).collect();
        let idf = idf_table(&owned, &vocabulary).map_err(|_| KnnError::EmptyTraining)?;
        let vectors = docs
            .iter()
            .map(|(label, doc)| {
                let mut tw = term_frequency(doc, &vocabulary);
                if weighting == Weighting::TfIdf {
                    for (w, &f) in tw.weights.iter_mut().zip(&idf) {
                        *w *= f;
                    }
                }
                TrainingVector {
                    label: label.clone(),
                    weights: tw,
                }
            })
            .collect();
        Ok(Self {
            vectors,
            vocabulary,
            weighting,
            idf,
            fingerprint,
        })
    }

    pub fn vectors(&self) -> &[TrainingVector] {
        &self.vectors
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn fingerprint(&self) -> &PreprocessFingerprint {
        &self.fingerprint
    }

    /// Distinct training labels in lexicographic order.
    pub fn classes(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.vectors.iter().map(|v| v.label.as_str()).collect();
        set.into_iter().collect()
    }

    /// Vectorizes a document with the training vocabulary and, under TF-IDF
    /// weighting, the training-time IDF table.
    pub fn vectorize(&self, doc: &ProcessedDocument) -> TermWeights {
        let mut tw = term_frequency(doc, &self.vocabulary);
        if self.weighting == Weighting::TfIdf {
            for (w, &f) in tw.weights.iter_mut().zip(&self.idf) {
                *w *= f;
            }
        }
        tw
    }

    /// The k most similar training documents, ordered by decreasing
    /// similarity with ties broken by document id. `k` must lie in
    /// `1..=n` for a training set of size `n`.
    pub fn neighbors(
        &self,
        doc: &ProcessedDocument,
        k: usize,
        fingerprint: &PreprocessFingerprint,
    ) -> Result<Vec<Neighbor>, KnnError> {
        if *fingerprint != self.fingerprint {
            return Err(KnnError::IncompatiblePreprocessing {
                expected: self.fingerprint.to_string(),
                got: fingerprint.to_string(),
            });
        }
        if k == 0 || k > self.vectors.len() {
            return Err(KnnError::InvalidK {
                k,
                n: self.vectors.len(),
            });
        }
        let query = self.vectorize(doc);
        let mut scored: Vec<Neighbor> = self
            .vectors
            .iter()
            .map(|tv| {
                let similarity = cosine_similarity(&query, &tv.weights)
                    .expect("training vectors share the vocabulary length");
                Neighbor {
                    doc_id: tv.weights.doc_id.clone(),
                    label: tv.label.clone(),
                    similarity,
                }
            })
            .collect();
        scored.sort_by(|x, y| {
            y.similarity
                .partial_cmp(&x.similarity)
                .unwrap()
                .then_with(|| x.doc_id.cmp(&y.doc_id))
        });
        scored.truncate(k);
        Ok(scored)
    }

    /// Majority vote over the k nearest neighbors. Every training class
    /// appears in the score table (zero when unrepresented among the
    /// neighbors); vote ties break to the lexicographically smaller label.
    pub fn classify(
        &self,
        doc: &ProcessedDocument,
        k: usize,
        fingerprint: &PreprocessFingerprint,
    ) -> Result<Prediction, KnnError> {
        let neighbors = self.neighbors(doc, k, fingerprint)?;
        let mut votes: BTreeMap<String, f64> = self
            .classes()
            .into_iter()
            .map(|c| (c.to_string(), 0.0))
            .collect();
        for n in &neighbors {
            *votes.get_mut(&n.label).expect("neighbor label is a class") += 1.0;
        }
        Ok(Prediction::from_scores(votes).expect("training set is non-empty"))
    }

    /// Serializes the model to its line-oriented text form. Weights are
    /// written sparsely as `index:value` pairs.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{KNN_MAGIC}");
        let _ = writeln!(out, "fingerprint {}", self.fingerprint);
        let _ = writeln!(out, "weighting {}", self.weighting.as_str());
        let _ = writeln!(out, "vocab {}", self.vocabulary.len());
        for term in self.vocabulary.terms() {
            let _ = writeln!(out, "{term}");
        }
        let _ = writeln!(out, "idf {}", self.idf.len());
        for v in &self.idf {
            let _ = writeln!(out, "{v}");
        }
        for tv in &self.vectors {
            let _ = write!(out, "vector\t{}\t{}\t", tv.weights.doc_id, tv.label);
            let mut first = true;
            for (i, &w) in tv.weights.weights.iter().enumerate() {
                if w != 0.0 {
                    if !first {
                        out.push(' ');
                    }
                    let _ = write!(out, "{i}:{w}");
                    first = false;
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses a model from its text form.
    pub fn deserialize(content: &str) -> Result<Self, KnnError> {
        let mut lines = content.lines();
        match lines.next() {
            Some(KNN_MAGIC) => {}
            other => {
                return Err(KnnError::Format(format!(
                    "expected header {KNN_MAGIC:?}, got {other:?}"
                )))
            }
        }
        let fingerprint = lines
            .next()
            .and_then(|l| l.strip_prefix("fingerprint "))
            .and_then(PreprocessFingerprint::parse)
            .ok_or_else(|| KnnError::Format("missing or bad fingerprint line".into()))?;
        let weighting = lines
            .next()
            .and_then(|l| l.strip_prefix("weighting "))
            .and_then(Weighting::parse)
            .ok_or_else(|| KnnError::Format("missing or bad weighting line".into()))?;
        let vocab_len: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("vocab "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| KnnError::Format("missing or bad vocab line".into()))?;
        let mut terms = Vec::with_capacity(vocab_len);
        for _ in 0..vocab_len {
            terms.push(
                lines
                    .next()
                    .ok_or_else(|| KnnError::Format("truncated vocabulary".into()))?
                    .to_string(),
            );
        }
        let vocabulary = Vocabulary::from_terms(terms.iter().cloned());
        if vocabulary.len() != vocab_len {
            return Err(KnnError::Format(
                "vocabulary terms are not distinct".into(),
            ));
        }
        let idf_len: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("idf "))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| KnnError::Format("missing or bad idf line".into()))?;
        if idf_len != vocab_len {
            return Err(KnnError::Format(format!(
                "idf table length {idf_len} does not match vocabulary size {vocab_len}"
            )));
        }
        let mut idf = Vec::with_capacity(idf_len);
        for _ in 0..idf_len {
            let v: f64 = lines
                .next()
                .and_then(|l| l.parse().ok())
                .ok_or_else(|| KnnError::Format("truncated or bad idf table".into()))?;
            idf.push(v);
        }
        let mut vectors = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let rest = line
                .strip_prefix("vector\t")
                .ok_or_else(|| KnnError::Format(format!("unexpected line {line:?}")))?;
            let (doc_id, rest) = rest
                .split_once('\t')
                .ok_or_else(|| KnnError::Format(format!("bad vector line {line:?}")))?;
            let (label, pairs) = rest
                .split_once('\t')
                .ok_or_else(|| KnnError::Format(format!("bad vector line {line:?}")))?;
            let mut weights = vec![0.0; vocab_len];
            for pair in pairs.split(' ').filter(|p| !p.is_empty()) {
                let (i, w) = pair
                    .split_once(':')
                    .ok_or_else(|| KnnError::Format(format!("bad weight pair {pair:?}")))?;
                let i: usize = i
                    .parse()
                    .map_err(|_| KnnError::Format(format!("bad index in {pair:?}")))?;
                if i >= vocab_len {
                    return Err(KnnError::Format(format!(
                        "index {i} out of range for vocabulary of {vocab_len}"
                    )));
                }
                weights[i] = w
                    .parse()
                    .map_err(|_| KnnError::Format(format!("bad weight in {pair:?}")))?;
            }
            vectors.push(TrainingVector {
                label: label.to_string(),
                weights: TermWeights {
                    doc_id: doc_id.to_string(),
                    weights,
                },
            });
        }
        if vectors.is_empty() {
            return Err(KnnError::EmptyTraining);
        }
        Ok(Self {
            vectors,
            vocabulary,
            weighting,
            idf,
            fingerprint,
        })
    }

    /// Writes the model file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), KnnError> {
        let path = path.as_ref();
        fs::write(path, self.serialize()).map_err(|source| KnnError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads a model file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, KnnError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| KnnError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::deserialize(&content)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    fn tw(id: &str, weights: &[f64]) -> TermWeights {
        TermWeights {
            doc_id: id.into(),
            weights: weights.to_vec(),
        }
    }

    #[test]
    fn cosine_frozen_values() {
        // identical vectors
        assert!((cosine_similarity(&tw("a", &[1.0, 2.0]), &tw("b", &[1.0, 2.0])).unwrap() - 1.0).abs() < 1e-12);
        // orthogonal vectors
        assert_eq!(
            cosine_similarity(&tw("a", &[1.0, 0.0]), &tw("b", &[0.0, 1.0])).unwrap(),
            0.0
        );
        // 45 degrees: 1/sqrt(2)
        let got = cosine_similarity(&tw("a", &[1.0, 0.0]), &tw("b", &[1.0, 1.0])).unwrap();
        assert!((got - 0.7071067811865475).abs() < 1e-12, "got {got}");
    }

    #[test]
    fn cosine_zero_vector_is_zero() {
        assert_eq!(
            cosine_similarity(&tw("a", &[0.0, 0.0]), &tw("b", &[1.0, 2.0])).unwrap(),
            0.0
        );
    }

    #[test]
    fn cosine_length_mismatch() {
        assert!(matches!(
            cosine_similarity(&tw("a", &[1.0]), &tw("b", &[1.0, 2.0])),
            Err(KnnError::LengthMismatch(1, 2))
        ));
    }

    fn sample_training() -> Vec<(String, ProcessedDocument)> {
        vec![
            ("sport".into(), pdoc("s1", &["كره", "ملعب", "هدف"])),
            ("sport".into(), pdoc("s2", &["كره", "فريق"])),
            ("econ".into(), pdoc("e1", &["سوق", "مال"])),
            ("econ".into(), pdoc("e2", &["سوق", "بنك", "مال"])),
        ]
    }

    #[test]
    fn neighbors_sorted_by_similarity_then_id() {
        let model = KnnModel::train(&sample_training(), Weighting::Tf, fp()).unwrap();
        let ns = model.neighbors(&pdoc("t", &["كره"]), 4, &fp()).unwrap();
        assert_eq!(ns.len(), 4);
        assert!(ns[0].similarity >= ns[1].similarity);
        // the two كره documents come first
        assert_eq!(ns[0].label, "sport");
        assert_eq!(ns[1].label, "sport");
        // econ docs share no terms with the query: similarity 0, id order
        assert_eq!(ns[2].doc_id, "e1");
        assert_eq!(ns[3].doc_id, "e2");
    }

    #[test]
    fn self_query_is_nearest_under_tf() {
        let training = sample_training();
        let model = KnnModel::train(&training, Weighting::Tf, fp()).unwrap();
        let ns = model.neighbors(&training[0].1, 1, &fp()).unwrap();
        assert_eq!(ns[0].doc_id, "s1");
        assert!((ns[0].similarity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_majority_vote() {
        let model = KnnModel::train(&sample_training(), Weighting::TfIdf, fp()).unwrap();
        let p = model.classify(&pdoc("t", &["سوق", "مال"]), 3, &fp()).unwrap();
        assert_eq!(p.label, "econ");
        // all classes present in the score table
        assert_eq!(p.scores.len(), 2);
        assert_eq!(p.scores["econ"] + p.scores["sport"], 3.0);
    }

    #[test]
    fn classify_tie_breaks_lexicographically() {
        let training = vec![
            ("b".to_string(), pdoc("1", &["س"])),
            ("a".to_string(), pdoc("2", &["س"])),
        ];
        let model = KnnModel::train(&training, Weighting::Tf, fp()).unwrap();
        let p = model.classify(&pdoc("t", &["س"]), 2, &fp()).unwrap();
        assert_eq!(p.label, "a");
        assert_eq!(p.margin, 0.0);
    }

    #[test]
    fn invalid_k_rejected() {
        let model = KnnModel::train(&sample_training(), Weighting::Tf, fp()).unwrap();
        for k in [0, 5] {
            assert!(matches!(
                model.neighbors(&pdoc("t", &["كره"]), k, &fp()),
                Err(KnnError::InvalidK { .. })
            ));
        }
    }

    #[test]
    fn mismatched_fingerprint_rejected() {
        let model = KnnModel::train(&sample_training(), Weighting::Tf, fp()).unwrap();
        let other = PreprocessFingerprint {
            profile: "khreisat".into(),
            stemmer_hash: "0".repeat(16),
            stoplist_hash: "1".repeat(16),
        };
        assert!(matches!(
            model.classify(&pdoc("t", &["كره"]), 1, &other),
            Err(KnnError::IncompatiblePreprocessing { .. })
        ));
    }

    #[test]
    fn empty_training_rejected() {
        assert!(matches!(
            KnnModel::train(&[], Weighting::Tf, fp()),
            Err(KnnError::EmptyTraining)
        ));
    }

    #[test]
    fn test_doc_uses_training_idf() {
        // a term present in every training doc has idf 0, so a test doc made
        // of only that term becomes a zero vector under tfidf
        let training = vec![
            ("a".to_string(), pdoc("1", &["عام", "خاص"])),
            ("b".to_string(), pdoc("2", &["عام", "نادر"])),
        ];
        let model = KnnModel::train(&training, Weighting::TfIdf, fp()).unwrap();
        let v = model.vectorize(&pdoc("t", &["عام", "عام"]));
        assert!(v.weights.iter().all(|&w| w == 0.0));
        // and its neighbors all score 0
        let ns = model.neighbors(&pdoc("t", &["عام"]), 2, &fp()).unwrap();
        assert!(ns.iter().all(|n| n.similarity == 0.0));
    }

    #[test]
    fn serialization_round_trips() {
        let model = KnnModel::train(&sample_training(), Weighting::TfIdf, fp()).unwrap();
        let text = model.serialize();
        assert!(text.starts_with("mushannif-knn v1\n"));
        let back = KnnModel::deserialize(&text).unwrap();
        assert_eq!(back.serialize(), text);
        // behavior matches
        let doc = pdoc("t", &["كره", "سوق"]);
        let p1 = model.classify(&doc, 3, &fp()).unwrap();
        let p2 = back.classify(&doc, 3, &fp()).unwrap();
        assert_eq!(p1.label, p2.label);
        assert_eq!(p1.scores, p2.scores);
    }

    #[test]
    fn deserialize_rejects_garbage() {
        assert!(matches!(
            KnnModel::deserialize("junk"),
            Err(KnnError::Format(_))
        ));
        let truncated = "mushannif-knn v1\nfingerprint a:b:c\nweighting tf\nvocab 3\nterm1\n";
        assert!(matches!(
            KnnModel::deserialize(truncated),
            Err(KnnError::Format(_))
        ));
    }

    #[test]
    fn save_and_load_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.knn");
        let model = KnnModel::train(&sample_training(), Weighting::Tf, fp()).unwrap();
        model.save(&path).unwrap();
        let back = KnnModel::load(&path).unwrap();
        assert_eq!(back.serialize(), model.serialize());
    }

    proptest! {
        #[test]
        fn cosine_bounded_and_scale_invariant(
            xs in proptest::collection::vec(0.0f64..10.0, 4),
            ys in proptest::collection::vec(0.0f64..10.0, 4),
            scale in 0.1f64..100.0,
        ) {
            let a = tw("a", &xs);
            let b = tw("b", &ys);
            let sim = cosine_similarity(&a, &b).unwrap();
            prop_assert!((-1e-9..=1.0 + 1e-9).contains(&sim));
            // scaling one side leaves the similarity unchanged
            let scaled: Vec<f64> = xs.iter().map(|&x| x * scale).collect();
            let sim2 = cosine_similarity(&tw("a", &scaled), &b).unwrap();
            prop_assert!((sim - sim2).abs() < 1e-9);
        }

        #[test]
        fn cosine_symmetric(
            xs in proptest::collection::vec(-5.0f64..5.0, 3),
            ys in proptest::collection::vec(-5.0f64..5.0, 3),
        ) {
            let a = tw("a", &xs);
            let b = tw("b", &ys);
            let s1 = cosine_similarity(&a, &b).unwrap();
            let s2 = cosine_similarity(&b, &a).unwrap();
            prop_assert!((s1 - s2).abs() < 1e-12);
        }
    }
}
