//! Term weighting and feature selection.
//!
//! Documents become dense vectors over a shared [`Vocabulary`] using raw
//! term frequency or TF-IDF (base-10 logarithm). Chi-squared scoring over
//! document-presence contingency tables drives per-class term selection.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::textproc::ProcessedDocument;

/// Errors from weighting and selection.
#[derive(Debug, Error)]
pub enum VectorizeError {
    #[error("cannot compute IDF over an empty document collection")]
    EmptyCollection,
    #[error("contingency table has a zero marginal ({0}); chi-squared is undefined")]
    DegenerateMargin(String),
    #[error("class {0} does not appear among the labeled documents")]
    UnknownClass(String),
}

/// A sorted term list with reverse lookup. Index positions are stable for a
/// given term set, so vectors built from the same vocabulary are comparable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Collects the distinct terms of `docs` in lexicographic order.
    pub fn from_documents<'a>(docs: impl IntoIterator<Item = &'a ProcessedDocument>) -> Self {
        let set: BTreeSet<String> = docs
            .into_iter()
            .flat_map(|d| d.tokens.iter().cloned())
            .collect();
        Self::from_terms(set)
    }

    /// Builds a vocabulary from an explicit term set.
    pub fn from_terms(terms: impl IntoIterator<Item = String>) -> Self {
        let set: BTreeSet<String> = terms.into_iter().collect();
        let terms: Vec<String> = set.into_iter().collect();
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Self { terms, index }
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.index.contains_key(term)
    }
}

/// A dense weight vector for one document, aligned to a vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct TermWeights {
    pub doc_id: String,
    pub weights: Vec<f64>,
}

impl TermWeights {
    /// The weight of `term` under `vocab`, zero for out-of-vocabulary terms.
    pub fn weight_of(&self, vocab: &Vocabulary, term: &str) -> f64 {
        vocab
            .index_of(term)
            .map_or(0.0, |i| self.weights.get(i).copied().unwrap_or(0.0))
    }
}

/// Raw term frequency: position `i` counts occurrences of `vocab.terms()[i]`
/// in the document. Out-of-vocabulary tokens contribute nothing.
pub fn term_frequency(doc: &ProcessedDocument, vocab: &Vocabulary) -> TermWeights {
    let mut weights = vec![0.0; vocab.len()];
    for token in &doc.tokens {
        if let Some(i) = vocab.index_of(token) {
            weights[i] += 1.0;
        }
    }
    TermWeights {
        doc_id: doc.source_id.clone(),
        weights,
    }
}

/// Per-term document frequencies: how many documents contain each term at
/// least once.
fn document_frequencies(docs: &[ProcessedDocument], vocab: &Vocabulary) -> Vec<u64> {
    let mut df = vec![0u64; vocab.len()];
    for doc in docs {
        let distinct: BTreeSet<&str> = doc.tokens.iter().map(String::as_str).collect();
        for term in distinct {
            if let Some(i) = vocab.index_of(term) {
                df[i] += 1;
            }
        }
    }
    df
}

/// The IDF table for a collection: `log10(N / df)` per term, zero for terms
/// absent from every document.
pub fn idf_table(docs: &[ProcessedDocument], vocab: &Vocabulary) -> Result<Vec<f64>, VectorizeError> {
    if docs.is_empty() {
        return Err(VectorizeError::EmptyCollection);
    }
    let n = docs.len() as f64;
    let df = document_frequencies(docs, vocab);
    Ok(df
        .into_iter()
        .map(|d| if d == 0 { 0.0 } else { (n / d as f64).log10() })
        .collect())
}

/// TF-IDF vectors for a whole collection: term frequency times
/// `log10(N / df)`. A term present in every document gets weight zero, as
/// does a term absent from all of them.
pub fn tf_idf(
    docs: &[ProcessedDocument],
    vocab: &Vocabulary,
) -> Result<Vec<TermWeights>, VectorizeError> {
    let idf = idf_table(docs, vocab)?;
    Ok(docs
        .iter()
        .map(|doc| {
            let mut tw = term_frequency(doc, vocab);
            for (w, &f) in tw.weights.iter_mut().zip(&idf) {
                *w *= f;
            }
            tw
        })
        .collect())
}

/// Document-presence counts for one (term, class) pair:
/// `a` = documents of the class containing the term,
/// `b` = documents of other classes containing the term,
/// `c` = documents of the class missing the term,
/// `d` = documents of other classes missing the term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContingencyTable {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ContingencyTable {
    pub fn total(&self) -> u64 {
        self.a + self.b + self.c + self.d
    }
}

/// The chi-squared association statistic
/// `N (ad - cb)^2 / ((a+c)(b+d)(a+b)(c+d))`. Any zero marginal makes the
/// statistic undefined and is reported as an error.
pub fn chi_squared(t: &ContingencyTable) -> Result<f64, VectorizeError> {
    let (a, b, c, d) = (t.a as f64, t.b as f64, t.c as f64, t.d as f64);
    for (label, margin) in [
        ("a+c", a + c),
        ("b+d", b + d),
        ("a+b", a + b),
        ("c+d", c + d),
    ] {
        if margin == 0.0 {
            return Err(VectorizeError::DegenerateMargin(label.to_string()));
        }
    }
    let n = a + b + c + d;
    let diff = a * d - c * b;
    Ok(n * diff * diff / ((a + c) * (b + d) * (a + b) * (c + d)))
}

/// A selected term with its chi-squared score.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredTerm {
    pub term: String,
    pub score: f64,
}

/// Builds the presence contingency table of `term` against `class` over a
/// labeled collection.
pub fn contingency_for_term(
    docs: &[(String, ProcessedDocument)],
    term: &str,
    class: &str,
) -> ContingencyTable {
    let mut t = ContingencyTable {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
    };
    for (label, doc) in docs {
        let present = doc.tokens.iter().any(|tok| tok == term);
        let in_class = label == class;
        match (in_class, present) {
            (true, true) => t.a += 1,
            (false, true) => t.b += 1,
            (true, false) => t.c += 1,
            (false, false) => t.d += 1,
        }
    }
    t
}

/// Ranks every term of the collection by chi-squared association with
/// `class` and returns the top `n`. Terms whose contingency table has a zero
/// marginal (the term is in every document or none, or the collection has a
/// single class) are skipped. Ties on score break toward the
/// lexicographically smaller term.
pub fn select_top_terms(
    docs: &[(String, ProcessedDocument)],
    class: &str,
    n: usize,
) -> Result<Vec<ScoredTerm>, VectorizeError> {
    if !docs.iter().any(|(label, _)| label == class) {
        return Err(VectorizeError::UnknownClass(class.to_string()));
    }
    let vocab = Vocabulary::from_documents(docs.iter().map(|(_, d)| d));
    let mut scored = Vec::new();
    for term in vocab.terms() {
        let table = contingency_for_term(docs, term, class);
        match chi_squared(&table) {
            Ok(score) => scored.push(ScoredTerm {
                term: term.clone(),
                score,
            }),
            Err(VectorizeError::DegenerateMargin(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    scored.sort_by(|x, y| {
        y.score
            .partial_cmp(&x.score)
            .unwrap()
            .then_with(|| x.term.cmp(&y.term))
    });
    scored.truncate(n);
    Ok(scored)
}
