//! Corpus loading and splitting.
//!
//! A corpus is a set of UTF-8 text documents, each optionally carrying a
//! class label. [`load_corpus`] reads the directory layout
//! `root/<class>/<file>`, and [`split_corpus`] produces deterministic
//! stratified train/test splits from a seed.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

/// Errors from corpus loading and splitting.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus root {0} does not exist or is not a directory")]
    NotFound(String),
    #[error("file {0} is not valid UTF-8 text")]
    Decode(String),
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("corpus contains no documents")]
    EmptyCorpus,
    #[error("train fraction must be strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("document {0} has no label; splitting requires fully labeled corpora")]
    Unlabeled(String),
    #[error("class {class} has only {count} document(s); at least 2 are needed to split")]
    Stratification { class: String, count: usize },
}

/// One document: a stable id, an optional class label, and its raw text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledDocument {
    pub id: String,
    pub label: Option<String>,
    pub text: String,
}

impl LabeledDocument {
    pub fn new(id: impl Into<String>, label: Option<String>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label,
            text: text.into(),
        }
    }

    /// Convenience constructor for a labeled document.
    pub fn labeled(
        id: impl Into<String>,
        label: impl Into<String>,
        text: impl Into<String>,
    ) -> Self {
        Self::new(id, Some(label.into()), text)
    }
}

/// A collection of documents with a sorted class list. Documents are kept
/// sorted by id, classes sorted lexicographically, so every derived artifact
/// is order-independent of how the documents arrived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    documents: Vec<LabeledDocument>,
    classes: Vec<String>,
}

impl Corpus {
    /// Builds a corpus from documents; the class list is derived from the
    /// labels present.
    pub fn from_documents(mut documents: Vec<LabeledDocument>) -> Self {
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        let classes: BTreeSet<String> = documents
            .iter()
            .filter_map(|d| d.label.clone())
            .collect();
        Self {
            documents,
            classes: classes.into_iter().collect(),
        }
    }

    /// Builds a corpus with an explicit class list (a superset of the labels
    /// in use; empty classes are legitimate, e.g. an empty class directory).
    fn from_parts(mut documents: Vec<LabeledDocument>, classes: BTreeSet<String>) -> Self {
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        debug_assert!(documents
            .iter()
            .filter_map(|d| d.label.as_ref())
            .all(|l| classes.contains(l)));
        Self {
            documents,
            classes: classes.into_iter().collect(),
        }
    }

    /// Documents in id order.
    pub fn documents(&self) -> &[LabeledDocument] {
        &self.documents
    }

    /// Class names in lexicographic order.
    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    /// Documents belonging to one class, in id order.
    pub fn documents_in_class<'a>(&'a self, class: &'a str) -> impl Iterator<Item = &'a LabeledDocument> {
        self.documents
            .iter()
            .filter(move |d| d.label.as_deref() == Some(class))
    }
}

/// Reads one UTF-8 text file, stripping a leading byte-order mark if present.
pub fn read_text_file(path: impl AsRef<Path>) -> Result<String, CorpusError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8(bytes)
        .map_err(|_| CorpusError::Decode(path.display().to_string()))?;
    Ok(text.strip_prefix('\u{feff}').unwrap_or(&text).to_string())
}

/// Loads a corpus from `root/<class>/<file>` layout. Each immediate
/// subdirectory of `root` names a class; every regular file inside becomes a
/// document with id `<class>/<filename>` and that class as its label.
/// Entries whose names start with `.` are skipped, as are non-directories at
/// the root. Files are visited in name order, so ids and the resulting
/// corpus are stable across runs and platforms.
pub fn load_corpus(root: impl AsRef<Path>) -> Result<Corpus, CorpusError> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(CorpusError::NotFound(root.display().to_string()));
    }
    let mut class_dirs = Vec::new();
    let entries = fs::read_dir(root).map_err(|source| CorpusError::Io {
        path: root.display().to_string(),
        source,
    })?;
    for entry in entries {
        let entry = entry.map_err(|source| CorpusError::Io {
            path: root.display().to_string(),
            source,
        })?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if name.starts_with('.') || !entry.path().is_dir() {
            continue;
        }
        class_dirs.push((name, entry.path()));
    }
    class_dirs.sort_by(|a, b| a.0.cmp(&b.0));

    let mut documents = Vec::new();
    let mut classes = BTreeSet::new();
    for (class, dir) in class_dirs {
        classes.insert(class.clone());
        let mut files = Vec::new();
        let entries = fs::read_dir(&dir).map_err(|source| CorpusError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        for entry in entries {
            let entry = entry.map_err(|source| CorpusError::Io {
                path: dir.display().to_string(),
                source,
            })?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if name.starts_with('.') || !entry.path().is_file() {
                continue;
            }
            files.push((name, entry.path()));
        }
        files.sort_by(|a, b| a.0.cmp(&b.0));
        for (name, path) in files {
            let text = read_text_file(&path)?;
            documents.push(LabeledDocument::labeled(
                format!("{class}/{name}"),
                class.clone(),
                text,
            ));
        }
    }
    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(Corpus::from_parts(documents, classes))
}

/// Parameters for a stratified split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    /// Fraction of each class that goes to the training side, in (0, 1).
    pub train_fraction: f64,
    /// Seed for the shuffle; equal seeds give equal splits.
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            train_fraction: 0.4,
            seed: 0,
        }
    }
}

/// A train/test partition of a corpus.
#[derive(Debug, Clone)]
pub struct CorpusSplit {
    pub train: Corpus,
    pub test: Corpus,
}

/// Splits a fully labeled corpus class by class. For each class (taken in
/// canonical order) the member documents are shuffled with a stream drawn
/// from one ChaCha20 generator seeded by `spec.seed`, and the first
/// `round(train_fraction * class_size)` go to the training side, clamped so
/// both sides keep at least one document. Rounding is half away from zero.
/// Classes with fewer than two documents cannot satisfy the clamp and are
/// reported as errors.
pub fn split_corpus(corpus: &Corpus, spec: &SplitSpec) -> Result<CorpusSplit, CorpusError> {
    if !(spec.train_fraction > 0.0 && spec.train_fraction < 1.0) {
        return Err(CorpusError::InvalidFraction(spec.train_fraction));
    }
    if let Some(doc) = corpus.documents().iter().find(|d| d.label.is_none()) {
        return Err(CorpusError::Unlabeled(doc.id.clone()));
    }
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut train_docs = Vec::new();
    let mut test_docs = Vec::new();
    for class in corpus.classes() {
        let mut members: Vec<&LabeledDocument> = corpus.documents_in_class(class).collect();
        if members.is_empty() {
            continue;
        }
        if members.len() < 2 {
            return Err(CorpusError::Stratification {
                class: class.clone(),
                count: members.len(),
            });
        }
        members.shuffle(&mut rng);
        let m = members.len();
        let raw = spec.train_fraction * m as f64;
        let n_train = ((raw + 0.5).floor() as usize).clamp(1, m - 1);
        for (i, doc) in members.into_iter().enumerate() {
            if i < n_train {
                train_docs.push(doc.clone());
            } else {
                test_docs.push(doc.clone());
            }
        }
    }

    let classes: BTreeSet<String> = corpus.classes().iter().cloned().collect();
    Ok(CorpusSplit {
        train: Corpus::from_parts(train_docs, classes.clone()),
        test: Corpus::from_parts(test_docs, classes),
    })
}
