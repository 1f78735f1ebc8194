//! Character n-gram profile classification.
//!
//! A profile is the ranked list of a text's character n-grams (most frequent
//! first), optionally truncated to its top `L` entries. Grams never cross
//! token boundaries. A document is classified by comparing its profile to
//! each class profile with either the rank-based Manhattan dissimilarity or
//! the set-based Dice coefficient.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::prediction::Prediction;
use crate::textproc::{tokenize, PreprocessFingerprint, ProcessedDocument};

/// Errors from profile comparison and model files.
#[derive(Debug, Error)]
pub enum NgramError {
    #[error("profiles use different gram sizes: {0} vs {1}")]
    GramSizeMismatch(usize, usize),
    #[error("model has no class profiles")]
    EmptyModel,
    #[error("class profiles disagree on gram size or truncation")]
    MixedProfiles,
    #[error("document was preprocessed with {got}, model expects {expected}")]
    IncompatiblePreprocessing { expected: String, got: String },
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed profile file: {0}")]
    Format(String),
}

/// A ranked n-gram frequency profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NGramProfile {
    n: usize,
    /// `(gram, frequency)` sorted by decreasing frequency, ties by gram.
    entries: Vec<(String, u64)>,
    /// 1-based rank of each kept gram.
    rank: HashMap<String, usize>,
    /// The length cutoff the profile was built with, if any.
    truncation: Option<usize>,
}

impl NGramProfile {
    fn from_counts(
        counts: BTreeMap<String, u64>,
        n: usize,
        truncation: Option<usize>,
    ) -> Self {
        let mut entries: Vec<(String, u64)> = counts.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        if let Some(l) = truncation {
            entries.truncate(l);
        }
        let rank = entries
            .iter()
            .enumerate()
            .map(|(i, (g, _))| (g.clone(), i + 1))
            .collect();
        Self {
            n,
            entries,
            rank,
            truncation,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Kept entries in rank order.
    pub fn entries(&self) -> &[(String, u64)] {
        &self.entries
    }

    /// 1-based rank of a gram, if it survived truncation.
    pub fn rank_of(&self, gram: &str) -> Option<usize> {
        self.rank.get(gram).copied()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The penalty charged for a gram missing from this profile: the
    /// truncation cutoff when one was set, otherwise the profile length.
    pub fn missing_penalty(&self) -> u64 {
        self.truncation.unwrap_or(self.entries.len()) as u64
    }

    fn gram_set(&self) -> BTreeSet<&str> {
        self.entries.iter().map(|(g, _)| g.as_str()).collect()
    }

    /// Serializes the profile to its text form.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let l = match self.truncation {
            Some(l) => l.to_string(),
            None => "none".to_string(),
        };
        let _ = writeln!(out, "mushannif-ngram v1 n={} L={}", self.n, l);
        for (gram, freq) in &self.entries {
            let _ = writeln!(out, "{gram}\t{freq}");
        }
        out
    }

    /// Parses a serialized profile. Entries are re-sorted on load so the
    /// canonical order never depends on the file's line order.
    pub fn deserialize(content: &str) -> Result<Self, NgramError> {
        let mut lines = content.lines();
        let header = lines
            .next()
            .ok_or_else(|| NgramError::Format("empty file".into()))?;
        let rest = header
            .strip_prefix("mushannif-ngram v1 n=")
            .ok_or_else(|| NgramError::Format(format!("bad header {header:?}")))?;
        let (n_str, l_str) = rest
            .split_once(" L=")
            .ok_or_else(|| NgramError::Format(format!("bad header {header:?}")))?;
        let n: usize = n_str
            .parse()
            .map_err(|_| NgramError::Format(format!("bad gram size {n_str:?}")))?;
        if n == 0 {
            return Err(NgramError::Format("gram size must be at least 1".into()));
        }
        let truncation = match l_str {
            "none" => None,
            other => Some(
                other
                    .parse()
                    .map_err(|_| NgramError::Format(format!("bad truncation {other:?}")))?,
            ),
        };
        let mut counts = BTreeMap::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let (gram, freq) = line
                .split_once('\t')
                .ok_or_else(|| NgramError::Format(format!("bad entry line {line:?}")))?;
            if gram.chars().count() != n {
                return Err(NgramError::Format(format!(
                    "gram {gram:?} is not {n} characters"
                )));
            }
            let freq: u64 = freq
                .parse()
                .map_err(|_| NgramError::Format(format!("bad frequency in {line:?}")))?;
            if counts.insert(gram.to_string(), freq).is_some() {
                return Err(NgramError::Format(format!("duplicate gram {gram:?}")));
            }
        }
        if let Some(l) = truncation {
            if counts.len() > l {
                return Err(NgramError::Format(format!(
                    "profile holds {} grams but claims truncation {l}",
                    counts.len()
                )));
            }
        }
        Ok(Self::from_counts(counts, n, truncation))
    }

    /// Writes the profile file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), NgramError> {
        let path = path.as_ref();
        fs::write(path, self.serialize()).map_err(|source| NgramError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads a profile file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, NgramError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| NgramError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::deserialize(&content)
    }
}

fn count_grams<'a>(
    tokens: impl IntoIterator<Item = &'a str>,
    n: usize,
) -> BTreeMap<String, u64> {
    assert!(n >= 1, "gram size must be at least 1");
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for token in tokens {
        let chars: Vec<char> = token.chars().collect();
        if chars.len() < n {
            continue;
        }
        for window in chars.windows(n) {
            let gram: String = window.iter().collect();
            *counts.entry(gram).or_insert(0) += 1;
        }
    }
    counts
}

/// Builds a profile from raw text. The text is tokenized first, so grams
/// never span two tokens; tokens shorter than `n` contribute nothing.
pub fn ngram_profile(text: &str, n: usize, truncation: Option<usize>) -> NGramProfile {
    let tokens = tokenize(text);
    ngram_profile_from_tokens(tokens.iter().map(String::as_str), n, truncation)
}

/// Builds a profile from an already tokenized stream.
pub fn ngram_profile_from_tokens<'a>(
    tokens: impl IntoIterator<Item = &'a str>,
    n: usize,
    truncation: Option<usize>,
) -> NGramProfile {
    NGramProfile::from_counts(count_grams(tokens, n), n, truncation)
}

/// Rank-based Manhattan dissimilarity of a document profile against a class
/// profile: for every gram the document keeps, the absolute rank difference,
/// or the class profile's missing penalty when the class lacks the gram.
/// The measure is directional; swapping the arguments changes it.
pub fn manhattan_distance(doc: &NGramProfile, class: &NGramProfile) -> Result<u64, NgramError> {
    if doc.n != class.n {
        return Err(NgramError::GramSizeMismatch(doc.n, class.n));
    }
    let penalty = class.missing_penalty();
    let mut total = 0u64;
    for (i, (gram, _)) in doc.entries.iter().enumerate() {
        let doc_rank = (i + 1) as u64;
        total += match class.rank_of(gram) {
            Some(r) => doc_rank.abs_diff(r as u64),
            None => penalty,
        };
    }
    Ok(total)
}

/// Dice coefficient over the two profiles' gram sets:
/// `2 |A ∩ B| / (|A| + |B|)`. Two empty profiles count as identical.
pub fn dice_similarity(a: &NGramProfile, b: &NGramProfile) -> Result<f64, NgramError> {
    if a.n != b.n {
        return Err(NgramError::GramSizeMismatch(a.n, b.n));
    }
    let sa = a.gram_set();
    let sb = b.gram_set();
    if sa.is_empty() && sb.is_empty() {
        return Ok(1.0);
    }
    let common = sa.intersection(&sb).count();
    Ok(2.0 * common as f64 / (sa.len() + sb.len()) as f64)
}

/// Which comparison drives classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Manhattan,
    Dice,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Manhattan => "manhattan",
            Measure::Dice => "dice",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "manhattan" => Some(Measure::Manhattan),
            "dice" => Some(Measure::Dice),
            _ => None,
        }
    }
}

/// Classifies raw text against a set of class profiles. The document profile
/// is built with the class profiles' gram size and truncation so ranks are
/// comparable. Scores are Dice similarities, or negated Manhattan distances
/// so that higher is always better.
pub fn classify_ngram(
    profiles: &BTreeMap<String, NGramProfile>,
    text: &str,
    measure: Measure,
) -> Result<Prediction, NgramError> {
    let mut iter = profiles.values();
    let first = iter.next().ok_or(NgramError::EmptyModel)?;
    if iter.any(|p| p.n != first.n || p.truncation != first.truncation) {
        return Err(NgramError::MixedProfiles);
    }
    let doc = ngram_profile(text, first.n, first.truncation);
    classify_profile(profiles, &doc, measure)
}

fn classify_profile(
    profiles: &BTreeMap<String, NGramProfile>,
    doc: &NGramProfile,
    measure: Measure,
) -> Result<Prediction, NgramError> {
    let mut scores = BTreeMap::new();
    for (label, profile) in profiles {
        let score = match measure {
            Measure::Manhattan => -(manhattan_distance(doc, profile)? as f64),
            Measure::Dice => dice_similarity(doc, profile)?,
        };
        scores.insert(label.clone(), score);
    }
    Prediction::from_scores(scores).ok_or(NgramError::EmptyModel)
}

const NGRAM_MODEL_MAGIC: &str = "mushannif-ngram-model v1";

/// A multi-class n-gram model: one profile per class, built from the
/// concatenated token streams of the class's training documents.
#[derive(Debug, Clone)]
pub struct NgramModel {
    profiles: BTreeMap<String, NGramProfile>,
    n: usize,
    truncation: Option<usize>,
    fingerprint: PreprocessFingerprint,
}

impl NgramModel {
    /// Trains per-class profiles. Documents of a class contribute their
    /// tokens in the order given.
    pub fn train(
        classes: &[(String, Vec<ProcessedDocument>)],
        n: usize,
        truncation: Option<usize>,
        fingerprint: PreprocessFingerprint,
    ) -> Result<Self, NgramError> {
        if classes.is_empty() {
            return Err(NgramError::EmptyModel);
        }
        assert!(n >= 1, "gram size must be at least 1");
        let mut profiles = BTreeMap::new();
        for (label, docs) in classes {
            let tokens = docs
                .iter()
                .flat_map(|d| d.tokens.iter())
                .map(String::as_str);
            profiles.insert(
                label.clone(),
                ngram_profile_from_tokens(tokens, n, truncation),
            );
        }
        Ok(Self {
            profiles,
            n,
            truncation,
            fingerprint,
        })
    }

    pub fn profiles(&self) -> &BTreeMap<String, NGramProfile> {
        &self.profiles
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn fingerprint(&self) -> &PreprocessFingerprint {
        &self.fingerprint
    }

    pub fn classes(&self) -> Vec<&str> {
        self.profiles.keys().map(String::as_str).collect()
    }

    /// Classifies a preprocessed document: its tokens are profiled with the
    /// model's gram size and truncation, then compared class by class.
    pub fn classify(
        &self,
        doc: &ProcessedDocument,
        measure: Measure,
        fingerprint: &PreprocessFingerprint,
    ) -> Result<Prediction, NgramError> {
        if *fingerprint != self.fingerprint {
            return Err(NgramError::IncompatiblePreprocessing {
                expected: self.fingerprint.to_string(),
                got: fingerprint.to_string(),
            });
        }
        let doc_profile = ngram_profile_from_tokens(
            doc.tokens.iter().map(String::as_str),
            self.n,
            self.truncation,
        );
        classify_profile(&self.profiles, &doc_profile, measure)
    }

    /// Serializes the model to its line-oriented text form.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{NGRAM_MODEL_MAGIC}");
        let _ = writeln!(out, "fingerprint {}", self.fingerprint);
        let _ = writeln!(out, "n {}", self.n);
        let l = match self.truncation {
            Some(l) => l.to_string(),
            None => "none".to_string(),
        };
        let _ = writeln!(out, "L {l}");
        for (label, profile) in &self.profiles {
            let _ = writeln!(out, "[class {label}]");
            for (gram, freq) in profile.entries() {
                let _ = writeln!(out, "{gram}\t{freq}");
            }
        }
        out
    }

    /// Parses a model from its text form.
    pub fn deserialize(content: &str) -> Result<Self, NgramError> {
        let mut lines = content.lines();
        match lines.next() {
            Some(NGRAM_MODEL_MAGIC) => {}
            other => {
                return Err(NgramError::Format(format!(
                    "expected header {NGRAM_MODEL_MAGIC:?}, got {other:?}"
                )))
            }
        }
        let fingerprint = lines
            .next()
            .and_then(|l| l.strip_prefix("fingerprint "))
            .and_then(PreprocessFingerprint::parse)
            .ok_or_else(|| NgramError::Format("missing or bad fingerprint line".into()))?;
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("n "))
            .and_then(|v| v.parse().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| NgramError::Format("missing or bad gram size line".into()))?;
        let truncation = match lines
            .next()
            .and_then(|l| l.strip_prefix("L "))
            .ok_or_else(|| NgramError::Format("missing truncation line".into()))?
        {
            "none" => None,
            other => Some(other.parse().map_err(|_| {
                NgramError::Format(format!("bad truncation {other:?}"))
            })?),
        };
        let mut profiles: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("[class ") {
                let label = rest
                    .strip_suffix(']')
                    .ok_or_else(|| NgramError::Format(format!("unterminated section {line:?}")))?;
                if profiles.contains_key(label) {
                    return Err(NgramError::Format(format!("duplicate class {label:?}")));
                }
                profiles.insert(label.to_string(), BTreeMap::new());
                current = Some(label.to_string());
            } else {
                let label = current
                    .as_ref()
                    .ok_or_else(|| NgramError::Format("entry line before any class".into()))?;
                let (gram, freq) = line
                    .split_once('\t')
                    .ok_or_else(|| NgramError::Format(format!("bad entry line {line:?}")))?;
                if gram.chars().count() != n {
                    return Err(NgramError::Format(format!(
                        "gram {gram:?} is not {n} characters"
                    )));
                }
                let freq: u64 = freq
                    .parse()
                    .map_err(|_| NgramError::Format(format!("bad frequency in {line:?}")))?;
                profiles
                    .get_mut(label)
                    .expect("current section exists")
                    .insert(gram.to_string(), freq);
            }
        }
        if profiles.is_empty() {
            return Err(NgramError::EmptyModel);
        }
        let profiles = profiles
            .into_iter()
            .map(|(label, counts)| (label, NGramProfile::from_counts(counts, n, truncation)))
            .collect();
        Ok(Self {
            profiles,
            n,
            truncation,
            fingerprint,
        })
    }

    /// Writes the model file.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), NgramError> {
        let path = path.as_ref();
        fs::write(path, self.serialize()).map_err(|source| NgramError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Reads a model file.
    pub fn load(path: impl AsRef<Path>) -> Result<Self, NgramError> {
        let path = path.as_ref();
        let content = fs::read_to_string(path).map_err(|source| NgramError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::deserialize(&content)
    }
}
