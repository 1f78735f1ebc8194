//! Evaluation: per-class and aggregate metrics, deterministic reports, and
//! an end-to-end experiment harness.
//!
//! Per class, `cc` counts documents of the class classified correctly, `tcf`
//! counts documents assigned to the class, and `tc` counts documents truly
//! in the class. Precision is `cc/tcf` and recall is `cc/tc`; either is
//! absent when its denominator is zero.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bayes::{BayesError, NBModel};
use crate::corpus::{split_corpus, Corpus, CorpusError, SplitSpec};
use crate::knn::{KnnError, KnnModel, Weighting};
use crate::ngram::{Measure, NgramError, NgramModel};
use crate::textproc::{
    NormalizationProfile, PreprocessOptions, Preprocessor, ProcessedDocument, StemmerConfig,
    StopList,
};

/// Errors from scoring and experiment running.
#[derive(Debug, Error)]
pub enum EvalError {
    #[error("no predictions to score")]
    EmptyEval,
    #[error("comparison needs at least 2 classifier configurations, got {0}")]
    TooFewSpecs(usize),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Bayes(#[from] BayesError),
    #[error(transparent)]
    Knn(#[from] KnnError),
    #[error(transparent)]
    Ngram(#[from] NgramError),
}

/// Counts and derived rates for one class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub cc: u64,
    pub tcf: u64,
    pub tc: u64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

/// Provenance of an evaluation run, carried in reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub classifier: String,
    pub params: String,
    pub preprocessing: String,
    pub seed: u64,
    pub train_fraction: f64,
    pub train_docs: usize,
    pub test_docs: usize,
}

/// A full evaluation report. Field order, map order, and number formatting
/// are all fixed, so equal inputs yield byte-identical reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub metadata: Option<RunMetadata>,
    pub total: u64,
    pub accuracy: f64,
    pub micro_precision: f64,
    pub micro_recall: f64,
    pub macro_precision: Option<f64>,
    pub macro_recall: Option<f64>,
    pub per_class: BTreeMap<String, ClassMetrics>,
    pub confusion: BTreeMap<String, BTreeMap<String, u64>>,
}

fn fmt6(v: f64) -> String {
    format!("{v:.6}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), fmt6)
}

impl EvalReport {
    /// Tab-separated rendering: metadata, aggregates, the per-class table,
    /// and the confusion matrix (rows are true classes, columns predicted).
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        if let Some(m) = &self.metadata {
            let _ = writeln!(out, "classifier\t{}", m.classifier);
            let _ = writeln!(out, "params\t{}", m.params);
            let _ = writeln!(out, "preprocessing\t{}", m.preprocessing);
            let _ = writeln!(out, "seed\t{}", m.seed);
            let _ = writeln!(out, "train_fraction\t{}", fmt6(m.train_fraction));
            let _ = writeln!(out, "train_docs\t{}", m.train_docs);
            let _ = writeln!(out, "test_docs\t{}", m.test_docs);
            out.push('\n');
        }
        let _ = writeln!(out, "total\t{}", self.total);
        let _ = writeln!(out, "accuracy\t{}", fmt6(self.accuracy));
        let _ = writeln!(out, "micro_precision\t{}", fmt6(self.micro_precision));
        let _ = writeln!(out, "micro_recall\t{}", fmt6(self.micro_recall));
        let _ = writeln!(out, "macro_precision\t{}", fmt_opt(self.macro_precision));
        let _ = writeln!(out, "macro_recall\t{}", fmt_opt(self.macro_recall));
        out.push('\n');
        let _ = writeln!(out, "class\tcc\ttcf\ttc\tprecision\trecall");
        for (class, m) in &self.per_class {
            let _ = writeln!(
                out,
                "{class}\t{}\t{}\t{}\t{}\t{}",
                m.cc,
                m.tcf,
                m.tc,
                fmt_opt(m.precision),
                fmt_opt(m.recall)
            );
        }
        out.push('\n');
        let _ = write!(out, "confusion");
        for class in self.confusion.keys() {
            let _ = write!(out, "\t{class}");
        }
        out.push('\n');
        for (gold, row) in &self.confusion {
            let _ = write!(out, "{gold}");
            for count in row.values() {
                let _ = write!(out, "\t{count}");
            }
            out.push('\n');
        }
        out
    }

    /// Pretty-printed JSON rendering.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Scores a sequence of `(gold_label, predicted_label)` pairs. The class set
/// is the union of gold and predicted labels; the confusion matrix is
/// zero-filled over the full set so its shape depends only on the classes.
pub fn score_predictions(pairs: &[(String, String)]) -> Result<EvalReport, EvalError> {
    if pairs.is_empty() {
        return Err(EvalError::EmptyEval);
    }
    let mut classes: Vec<&str> = Vec::new();
    {
        let mut set = std::collections::BTreeSet::new();
        for (gold, pred) in pairs {
            set.insert(gold.as_str());
            set.insert(pred.as_str());
        }
        classes.extend(set);
    }
    let mut confusion: BTreeMap<String, BTreeMap<String, u64>> = classes
        .iter()
        .map(|&g| {
            (
                g.to_string(),
                classes.iter().map(|&p| (p.to_string(), 0u64)).collect(),
            )
        })
        .collect();
    for (gold, pred) in pairs {
        *confusion
            .get_mut(gold)
            .expect("gold class present")
            .get_mut(pred)
            .expect("predicted class present") += 1;
    }

    let mut per_class = BTreeMap::new();
    let mut cc_sum = 0u64;
    let mut tcf_sum = 0u64;
    let mut tc_sum = 0u64;
    for &class in &classes {
        let cc = confusion[class][class];
        let tc: u64 = confusion[class].values().sum();
        let tcf: u64 = confusion.values().map(|row| row[class]).sum();
        cc_sum += cc;
        tcf_sum += tcf;
        tc_sum += tc;
        per_class.insert(
            class.to_string(),
            ClassMetrics {
                cc,
                tcf,
                tc,
                precision: (tcf > 0).then(|| cc as f64 / tcf as f64),
                recall: (tc > 0).then(|| cc as f64 / tc as f64),
            },
        );
    }

    let total = pairs.len() as u64;
    let accuracy = cc_sum as f64 / total as f64;
    let micro_precision = cc_sum as f64 / tcf_sum as f64;
    let micro_recall = cc_sum as f64 / tc_sum as f64;
    let macro_of = |pick: fn(&ClassMetrics) -> Option<f64>| {
        let defined: Vec<f64> = per_class.values().filter_map(pick).collect();
        if defined.is_empty() {
            None
        } else {
            Some(defined.iter().sum::<f64>() / defined.len() as f64)
        }
    };
    Ok(EvalReport {
        metadata: None,
        total,
        accuracy,
        micro_precision,
        micro_recall,
        macro_precision: macro_of(|m| m.precision),
        macro_recall: macro_of(|m| m.recall),
        per_class,
        confusion,
    })
}

/// One classifier configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassifierSpec {
    NaiveBayes {
        alpha: f64,
    },
    Knn {
        k: usize,
        weighting: Weighting,
    },
    Ngram {
        n: usize,
        truncation: Option<usize>,
        measure: Measure,
    },
}

impl ClassifierSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifierSpec::NaiveBayes { .. } => "nb",
            ClassifierSpec::Knn { .. } => "knn",
            ClassifierSpec::Ngram { .. } => "ngram",
        }
    }

    pub fn params_string(&self) -> String {
        match self {
            ClassifierSpec::NaiveBayes { alpha } => format!("alpha={alpha}"),
            ClassifierSpec::Knn { k, weighting } => {
                format!("k={k} weighting={}", weighting.as_str())
            }
            ClassifierSpec::Ngram {
                n,
                truncation,
                measure,
            } => {
                let l = truncation.map_or_else(|| "none".to_string(), |l| l.to_string());
                format!("n={n} L={l} measure={}", measure.as_str())
            }
        }
    }

    /// Whether the preprocessing chain should deduplicate tokens when the
    /// caller leaves the choice open. Profile-count training wants each
    /// document reduced to distinct tokens; the vector and gram classifiers
    /// keep frequencies.
    pub fn default_dedupe(&self) -> bool {
        matches!(self, ClassifierSpec::NaiveBayes { .. })
    }
}

/// One preprocessing configuration for an experiment. `dedupe: None` defers
/// to the classifier's preference.
#[derive(Debug, Clone)]
pub struct PipelineSpec {
    pub profile: NormalizationProfile,
    pub stops: StopList,
    pub stemmer: StemmerConfig,
    pub stem: bool,
    pub dedupe: Option<bool>,
}

impl Default for PipelineSpec {
    fn default() -> Self {
        let profile = NormalizationProfile::system();
        let stops = StopList::default_arabic(&profile);
        Self {
            profile,
            stops,
            stemmer: StemmerConfig::default(),
            stem: true,
            dedupe: None,
        }
    }
}

impl PipelineSpec {
    /// Builds the concrete preprocessor for a classifier, resolving the
    /// dedupe default.
    pub fn preprocessor_for(&self, classifier: &ClassifierSpec) -> Preprocessor {
        let dedupe = self.dedupe.unwrap_or_else(|| classifier.default_dedupe());
        Preprocessor::new(
            self.profile.clone(),
            self.stops.clone(),
            self.stemmer.clone(),
            PreprocessOptions {
                dedupe,
                stem: self.stem,
            },
        )
    }
}

fn group_by_class(
    corpus: &Corpus,
    pre: &Preprocessor,
) -> Vec<(String, Vec<ProcessedDocument>)> {
    corpus
        .classes()
        .iter()
        .filter_map(|class| {
            let docs: Vec<ProcessedDocument> = corpus
                .documents_in_class(class)
                .map(|d| pre.process(d))
                .collect();
            (!docs.is_empty()).then(|| (class.clone(), docs))
        })
        .collect()
}

/// Splits the corpus, trains the configured classifier on the training side,
/// classifies every test document, and scores the outcome. The returned
/// report carries full run metadata.
pub fn run_experiment(
    corpus: &Corpus,
    classifier: &ClassifierSpec,
    pipeline: &PipelineSpec,
    split: &SplitSpec,
) -> Result<EvalReport, EvalError> {
    let parts = split_corpus(corpus, split)?;
    let pre = pipeline.preprocessor_for(classifier);
    let fingerprint = pre.fingerprint();

    let mut pairs = Vec::with_capacity(parts.test.len());
    match classifier {
        ClassifierSpec::NaiveBayes { alpha } => {
            let groups = group_by_class(&parts.train, &pre);
            let model = NBModel::train(&groups, *alpha, fingerprint.clone())?;
            for doc in parts.test.documents() {
                let gold = doc.label.clone().expect("split output is labeled");
                let p = model.classify(&pre.process(doc), &fingerprint)?;
                pairs.push((gold, p.label));
            }
        }
        ClassifierSpec::Knn { k, weighting } => {
            let training: Vec<(String, ProcessedDocument)> = parts
                .train
                .documents()
                .iter()
                .map(|d| {
                    (
                        d.label.clone().expect("split output is labeled"),
                        pre.process(d),
                    )
                })
                .collect();
            let model = KnnModel::train(&training, *weighting, fingerprint.clone())?;
            for doc in parts.test.documents() {
                let gold = doc.label.clone().expect("split output is labeled");
                let p = model.classify(&pre.process(doc), *k, &fingerprint)?;
                pairs.push((gold, p.label));
            }
        }
        ClassifierSpec::Ngram {
            n,
            truncation,
            measure,
        } => {
            let groups = group_by_class(&parts.train, &pre);
            let model = NgramModel::train(&groups, *n, *truncation, fingerprint.clone())?;
            for doc in parts.test.documents() {
                let gold = doc.label.clone().expect("split output is labeled");
                let p = model.classify(&pre.process(doc), *measure, &fingerprint)?;
                pairs.push((gold, p.label));
            }
        }
    }

    let mut report = score_predictions(&pairs)?;
    report.metadata = Some(RunMetadata {
        classifier: classifier.name().to_string(),
        params: classifier.params_string(),
        preprocessing: fingerprint.to_string(),
        seed: split.seed,
        train_fraction: split.train_fraction,
        train_docs: parts.train.len(),
        test_docs: parts.test.len(),
    });
    Ok(report)
}

/// One row of a classifier comparison.
#[derive(Debug, Clone)]
pub struct ComparisonRow {
    pub classifier: String,
    pub params: String,
    pub report: EvalReport,
    pub winner: bool,
}

/// Comparison of several classifier configurations on one split.
#[derive(Debug, Clone)]
pub struct Comparison {
    pub rows: Vec<ComparisonRow>,
}

impl Comparison {
    pub fn winner(&self) -> &ComparisonRow {
        self.rows.first().expect("comparison has rows")
    }

    /// Tab-separated summary table, best configuration first.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "classifier\tparams\taccuracy\tmicro_precision\tmicro_recall\tmacro_precision\tmacro_recall\twinner"
        );
        for row in &self.rows {
            let r = &row.report;
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                row.classifier,
                row.params,
                fmt6(r.accuracy),
                fmt6(r.micro_precision),
                fmt6(r.micro_recall),
                fmt_opt(r.macro_precision),
                fmt_opt(r.macro_recall),
                if row.winner { "*" } else { "" }
            );
        }
        out
    }
}

/// Runs every configuration on the same corpus, pipeline, and split, and
/// ranks them by accuracy (stable on ties, so equal-accuracy rows keep the
/// order they were given in). The first row is flagged as the winner.
pub fn compare_classifiers(
    corpus: &Corpus,
    specs: &[ClassifierSpec],
    pipeline: &PipelineSpec,
    split: &SplitSpec,
) -> Result<Comparison, EvalError> {
    if specs.len() < 2 {
        return Err(EvalError::TooFewSpecs(specs.len()));
    }
    let mut rows = Vec::with_capacity(specs.len());
    for spec in specs {
        let report = run_experiment(corpus, spec, pipeline, split)?;
        rows.push(ComparisonRow {
            classifier: spec.name().to_string(),
            params: spec.params_string(),
            report,
            winner: false,
        });
    }
    rows.sort_by(|a, b| {
        b.report
            .accuracy
            .partial_cmp(&a.report.accuracy)
            .expect("accuracy is finite")
    });
    rows[0].winner = true;
    Ok(Comparison { rows })
}
