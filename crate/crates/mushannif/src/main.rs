//! Command-line front end for the classification library.
//!
//! Exit codes: 0 on success, 1 for command-line usage errors, 2 for data
//! errors (unreadable files, malformed models, incompatible preprocessing).

use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mushannif::corpus::{load_corpus, read_text_file, Corpus, SplitSpec};
use mushannif::eval::{
    compare_classifiers, run_experiment, ClassifierSpec, PipelineSpec,
};
use mushannif::knn::{KnnModel, Weighting};
use mushannif::ngram::{Measure, NgramModel};
use mushannif::prediction::Prediction;
use mushannif::textproc::{
    NormalizationProfile, PreprocessOptions, Preprocessor, ProcessedDocument, StemmerConfig,
    StopList,
};
use mushannif::vectorize::select_top_terms;
use mushannif::NBModel;

#[derive(Parser)]
#[command(
    name = "mushannif",
    version,
    about = "Arabic text classification: preprocessing, training, and evaluation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the preprocessing chain over a file or corpus directory
    Preprocess(PreprocessCmd),
    /// Train a classifier on a labeled corpus and save the model
    Train(TrainCmd),
    /// Classify a file or directory of files with a saved model
    Classify(ClassifyCmd),
    /// Split a corpus, train, and score the held-out documents
    Evaluate(EvaluateCmd),
    /// Rank each class's most discriminative terms by chi-squared score
    Chi2(Chi2Cmd),
    /// Evaluate several classifier configurations on the same split
    Compare(CompareCmd),
    /// Write per-class token files from a saved Naive Bayes model
    DumpClassFiles(DumpClassFilesCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    System,
    Khreisat,
}

impl ProfileArg {
    fn build(self) -> NormalizationProfile {
        match self {
            ProfileArg::System => NormalizationProfile::system(),
            ProfileArg::Khreisat => NormalizationProfile::khreisat(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl Switch {
    fn is_on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassifierArg {
    Nb,
    Knn,
    Ngram,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightingArg {
    Tf,
    Tfidf,
}

impl WeightingArg {
    fn build(self) -> Weighting {
        match self {
            WeightingArg::Tf => Weighting::Tf,
            WeightingArg::Tfidf => Weighting::TfIdf,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureArg {
    Manhattan,
    Dice,
}

impl MeasureArg {
    fn build(self) -> Measure {
        match self {
            MeasureArg::Manhattan => Measure::Manhattan,
            MeasureArg::Dice => Measure::Dice,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

#[derive(Clone, Copy)]
struct Truncation(Option<usize>);

fn parse_truncation(s: &str) -> Result<Truncation, String> {
    if s == "none" {
        return Ok(Truncation(None));
    }
    let l: usize = s
        .parse()
        .map_err(|_| format!("expected a positive integer or \"none\", got {s:?}"))?;
    if l == 0 {
        return Err("truncation length must be at least 1".to_string());
    }
    Ok(Truncation(Some(l)))
}

fn parse_alpha(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("smoothing must be a positive finite number".to_string())
    }
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("invalid number {s:?}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err("train fraction must be strictly between 0 and 1".to_string())
    }
}

fn parse_positive(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("invalid integer {s:?}"))?;
    if v == 0 {
        return Err("value must be at least 1".to_string());
    }
    Ok(v)
}

/// Preprocessing options shared by every subcommand that reads text.
#[derive(Args, Clone)]
struct PreprocFlags {
    /// Letter normalization profile (classify defaults to the model's)
    #[arg(long, value_enum)]
    normalize: Option<ProfileArg>,
    /// Apply the light stemmer
    #[arg(long, value_enum, default_value = "on")]
    stem: Switch,
    /// Keep only each token's first occurrence (default depends on the
    /// classifier: on for nb, off otherwise)
    #[arg(long, value_enum)]
    dedupe: Option<Switch>,
    /// Stop-word list file, one word per line (default: bundled Arabic list)
    #[arg(long, value_name = "PATH")]
    stoplist: Option<PathBuf>,
    /// Stemmer affix file with [prefixes] and [suffixes] sections
    #[arg(long, value_name = "PATH")]
    stemmer: Option<PathBuf>,
}

impl PreprocFlags {
    fn build(
        &self,
        fallback_profile: Option<&str>,
        default_dedupe: bool,
    ) -> Result<Preprocessor, Box<dyn Error>> {
        let profile = match (self.normalize, fallback_profile) {
            (Some(arg), _) => arg.build(),
            (None, Some(name)) => NormalizationProfile::by_name(name).ok_or_else(|| {
                format!(
                    "model was trained with unknown normalization profile {name:?}; \
                     pass --normalize explicitly"
                )
            })?,
            (None, None) => NormalizationProfile::system(),
        };
        let stops = match &self.stoplist {
            Some(path) => StopList::load(path, &profile)?,
            None => StopList::default_arabic(&profile),
        };
        let stemmer = match &self.stemmer {
            Some(path) => StemmerConfig::from_file(path)?,
            None => StemmerConfig::default(),
        };
        let options = PreprocessOptions {
            dedupe: self.dedupe.map_or(default_dedupe, Switch::is_on),
            stem: self.stem.is_on(),
        };
        Ok(Preprocessor::new(profile, stops, stemmer, options))
    }
}

/// Classifier choice and hyperparameters.
#[derive(Args, Clone)]
struct ClassifierFlags {
    /// Classifier family
    #[arg(long, value_enum, default_value = "nb")]
    classifier: ClassifierArg,
    /// Additive smoothing for Naive Bayes
    #[arg(long, default_value = "1", value_parser = parse_alpha)]
    alpha: f64,
    /// Neighbor count for k-NN
    #[arg(short, long, default_value = "5", value_parser = parse_positive)]
    k: usize,
    /// Term weighting for k-NN
    #[arg(long, value_enum, default_value = "tfidf")]
    weighting: WeightingArg,
    /// Gram size for the n-gram classifier
    #[arg(short = 'n', long = "gram-size", default_value = "3", value_parser = parse_positive)]
    gram_size: usize,
    /// Profile length cutoff for the n-gram classifier, or "none"
    #[arg(long, default_value = "300", value_parser = parse_truncation)]
    truncation: Truncation,
    /// Profile comparison measure for the n-gram classifier
    #[arg(long, value_enum, default_value = "manhattan")]
    measure: MeasureArg,
}

impl ClassifierFlags {
    fn spec(&self) -> ClassifierSpec {
        match self.classifier {
            ClassifierArg::Nb => ClassifierSpec::NaiveBayes { alpha: self.alpha },
            ClassifierArg::Knn => ClassifierSpec::Knn {
                k: self.k,
                weighting: self.weighting.build(),
            },
            ClassifierArg::Ngram => ClassifierSpec::Ngram {
                n: self.gram_size,
                truncation: self.truncation.0,
                measure: self.measure.build(),
            },
        }
    }
}

#[derive(Args)]
struct PreprocessCmd {
    /// Text file, or corpus directory laid out as root/<class>/<file>
    input: PathBuf,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrainCmd {
    /// Corpus directory laid out as root/<class>/<file>
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    /// Where to write the model file
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    #[command(flatten)]
    classifier: ClassifierFlags,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Also write per-class token files into this directory (nb only)
    #[arg(long, value_name = "DIR")]
    dump_class_files: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyCmd {
    /// Saved model file (kind is detected from its header)
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    /// Text file or directory of text files to classify
    input: PathBuf,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Neighbor count when the model is k-NN
    #[arg(short, long, default_value = "5", value_parser = parse_positive)]
    k: usize,
    /// Comparison measure when the model is n-gram
    #[arg(long, value_enum, default_value = "manhattan")]
    measure: MeasureArg,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateCmd {
    /// Corpus directory laid out as root/<class>/<file>
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    #[command(flatten)]
    classifier: ClassifierFlags,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Fraction of each class used for training
    #[arg(long, default_value = "0.4", value_parser = parse_fraction)]
    train_fraction: f64,
    /// Seed for the stratified split
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Report format
    #[arg(long, value_enum, default_value = "tsv")]
    format: FormatArg,
    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Chi2Cmd {
    /// Corpus directory laid out as root/<class>/<file>
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    /// How many terms to keep per class
    #[arg(long, default_value = "30", value_parser = parse_positive)]
    top: usize,
    /// Restrict the ranking to one class
    #[arg(long, value_name = "NAME")]
    class: Option<String>,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Write output here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareCmd {
    /// Corpus directory laid out as root/<class>/<file>
    #[arg(long, value_name = "DIR")]
    corpus: PathBuf,
    #[command(flatten)]
    classifier: ClassifierFlags,
    #[command(flatten)]
    pre: PreprocFlags,
    /// Fraction of each class used for training
    #[arg(long, default_value = "0.4", value_parser = parse_fraction)]
    train_fraction: f64,
    /// Seed for the stratified split
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Write the table here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DumpClassFilesCmd {
    /// Saved Naive Bayes model file
    #[arg(long, value_name = "PATH")]
    model: PathBuf,
    /// Directory to write one token file per class into
    #[arg(long, value_name = "DIR")]
    out_dir: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let usage_error = !matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if usage_error {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Box<dyn Error>> {
    match cli.command {
        Command::Preprocess(cmd) => preprocess_cmd(cmd),
        Command::Train(cmd) => train_cmd(cmd),
        Command::Classify(cmd) => classify_cmd(cmd),
        Command::Evaluate(cmd) => evaluate_cmd(cmd),
        Command::Chi2(cmd) => chi2_cmd(cmd),
        Command::Compare(cmd) => compare_cmd(cmd),
        Command::DumpClassFiles(cmd) => dump_class_files_cmd(cmd),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Box<dyn Error>> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn preprocess_cmd(cmd: PreprocessCmd) -> Result<(), Box<dyn Error>> {
    // standalone preprocessing shows the plain token stream, so
    // deduplication stays off unless asked for
    let pre = cmd.pre.build(None, false)?;
    let mut output = String::new();
    if cmd.input.is_dir() {
        let corpus = load_corpus(&cmd.input)?;
        for doc in corpus.documents() {
            let processed = pre.process(doc);
            output.push_str(&processed.source_id);
            output.push('\t');
            output.push_str(&processed.tokens.join(" "));
            output.push('\n');
        }
        eprintln!(
            "preprocessed {} documents [{}]",
            corpus.len(),
            pre.fingerprint()
        );
    } else {
        let text = read_text_file(&cmd.input)?;
        let processed = pre.process_text(&cmd.input.display().to_string(), &text);
        for token in &processed.tokens {
            output.push_str(token);
            output.push('\n');
        }
        eprintln!(
            "{} tokens [{}]",
            processed.tokens.len(),
            pre.fingerprint()
        );
    }
    emit(&cmd.out, &output)
}

fn group_by_class(corpus: &Corpus, pre: &Preprocessor) -> Vec<(String, Vec<ProcessedDocument>)> {
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

fn train_cmd(cmd: TrainCmd) -> Result<(), Box<dyn Error>> {
    let spec = cmd.classifier.spec();
    let pre = cmd.pre.build(None, spec.default_dedupe())?;
    let fingerprint = pre.fingerprint();
    let corpus = load_corpus(&cmd.corpus)?;

    match spec {
        ClassifierSpec::NaiveBayes { alpha } => {
            let groups = group_by_class(&corpus, &pre);
            let model = NBModel::train(&groups, alpha, fingerprint.clone())?;
            model.save(&cmd.model)?;
            if let Some(dir) = &cmd.dump_class_files {
                model.write_class_files(dir)?;
            }
            eprintln!(
                "trained nb model: {} classes, {} documents, vocabulary {} [{}]",
                model.profiles().len(),
                model.total_docs(),
                model.vocabulary().len(),
                fingerprint
            );
        }
        ClassifierSpec::Knn { weighting, .. } => {
            if cmd.dump_class_files.is_some() {
                return Err("--dump-class-files applies only to nb models".into());
            }
            let training: Vec<(String, ProcessedDocument)> = corpus
                .documents()
                .iter()
                .map(|d| {
                    (
                        d.label.clone().expect("loaded corpora are labeled"),
                        pre.process(d),
                    )
                })
                .collect();
            let model = KnnModel::train(&training, weighting, fingerprint.clone())?;
            model.save(&cmd.model)?;
            eprintln!(
                "trained knn model: {} vectors, vocabulary {} [{}]",
                model.vectors().len(),
                model.vocabulary().len(),
                fingerprint
            );
        }
        ClassifierSpec::Ngram { n, truncation, .. } => {
            if cmd.dump_class_files.is_some() {
                return Err("--dump-class-files applies only to nb models".into());
            }
            let groups = group_by_class(&corpus, &pre);
            let model = NgramModel::train(&groups, n, truncation, fingerprint.clone())?;
            model.save(&cmd.model)?;
            eprintln!(
                "trained ngram model: {} classes, n={} [{}]",
                model.profiles().len(),
                n,
                fingerprint
            );
        }
    }
    eprintln!("model written to {}", cmd.model.display());
    Ok(())
}

enum LoadedModel {
    Nb(NBModel),
    Knn(KnnModel),
    Ngram(NgramModel),
}

impl LoadedModel {
    fn load(path: &Path) -> Result<Self, Box<dyn Error>> {
        let content = fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let header = content.lines().next().unwrap_or("");
        if header == "mushannif-nb v1" {
            Ok(LoadedModel::Nb(NBModel::deserialize(&content)?))
        } else if header == "mushannif-knn v1" {
            Ok(LoadedModel::Knn(KnnModel::deserialize(&content)?))
        } else if header == "mushannif-ngram-model v1" {
            Ok(LoadedModel::Ngram(NgramModel::deserialize(&content)?))
        } else if header.starts_with("mushannif-ngram v1") {
            Err(format!(
                "{} holds a single n-gram profile, not a multi-class model; \
                 train one with `mushannif train --classifier ngram`",
                path.display()
            )
            .into())
        } else {
            Err(format!("{} is not a recognized model file", path.display()).into())
        }
    }

    fn profile_name(&self) -> &str {
        match self {
            LoadedModel::Nb(m) => &m.fingerprint().profile,
            LoadedModel::Knn(m) => &m.fingerprint().profile,
            LoadedModel::Ngram(m) => &m.fingerprint().profile,
        }
    }

    fn default_dedupe(&self) -> bool {
        matches!(self, LoadedModel::Nb(_))
    }

    fn classify(
        &self,
        doc: &ProcessedDocument,
        pre: &Preprocessor,
        k: usize,
        measure: Measure,
    ) -> Result<Prediction, Box<dyn Error>> {
        let fp = pre.fingerprint();
        Ok(match self {
            LoadedModel::Nb(m) => m.classify(doc, &fp)?,
            LoadedModel::Knn(m) => m.classify(doc, k, &fp)?,
            LoadedModel::Ngram(m) => m.classify(doc, measure, &fp)?,
        })
    }
}

fn classify_cmd(cmd: ClassifyCmd) -> Result<(), Box<dyn Error>> {
    let model = LoadedModel::load(&cmd.model)?;
    let pre = cmd
        .pre
        .build(Some(model.profile_name()), model.default_dedupe())?;
    let measure = cmd.measure.build();

    let mut output = String::new();
    if cmd.input.is_dir() {
        let mut files: Vec<(String, PathBuf)> = Vec::new();
        for entry in fs::read_dir(&cmd.input)
            .map_err(|e| format!("cannot read {}: {e}", cmd.input.display()))?
        {
            let entry = entry.map_err(|e| format!("cannot read {}: {e}", cmd.input.display()))?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if name.starts_with('.') || !entry.path().is_file() {
                continue;
            }
            files.push((name, entry.path()));
        }
        files.sort_by(|a, b| a.0.cmp(&b.0));
        if files.is_empty() {
            return Err(format!("{} contains no files", cmd.input.display()).into());
        }
        for (name, path) in files {
            let text = read_text_file(&path)?;
            let doc = pre.process_text(&name, &text);
            let p = model.classify(&doc, &pre, cmd.k, measure)?;
            let best = p.scores[&p.label];
            output.push_str(&format!("{name}\t{}\t{best:.6}\n", p.label));
        }
    } else {
        let text = read_text_file(&cmd.input)?;
        let doc = pre.process_text(&cmd.input.display().to_string(), &text);
        let p = model.classify(&doc, &pre, cmd.k, measure)?;
        for (label, score) in p.ranked() {
            output.push_str(&format!("{label}\t{score:.6}\n"));
        }
    }
    emit(&cmd.out, &output)
}

fn evaluate_cmd(cmd: EvaluateCmd) -> Result<(), Box<dyn Error>> {
    let corpus = load_corpus(&cmd.corpus)?;
    let spec = cmd.classifier.spec();
    let pipeline = pipeline_from_flags(&cmd.pre)?;
    let split = SplitSpec {
        train_fraction: cmd.train_fraction,
        seed: cmd.seed,
    };
    let report = run_experiment(&corpus, &spec, &pipeline, &split)?;
    let rendered = match cmd.format {
        FormatArg::Tsv => report.to_tsv(),
        FormatArg::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
    };
    emit(&cmd.out, &rendered)
}

fn pipeline_from_flags(flags: &PreprocFlags) -> Result<PipelineSpec, Box<dyn Error>> {
    let profile = flags.normalize.unwrap_or(ProfileArg::System).build();
    let stops = match &flags.stoplist {
        Some(path) => StopList::load(path, &profile)?,
        None => StopList::default_arabic(&profile),
    };
    let stemmer = match &flags.stemmer {
        Some(path) => StemmerConfig::from_file(path)?,
        None => StemmerConfig::default(),
    };
    Ok(PipelineSpec {
        profile,
        stops,
        stemmer,
        stem: flags.stem.is_on(),
        dedupe: flags.dedupe.map(Switch::is_on),
    })
}

fn chi2_cmd(cmd: Chi2Cmd) -> Result<(), Box<dyn Error>> {
    let corpus = load_corpus(&cmd.corpus)?;
    // presence counts ignore within-document repeats, so the dedupe default
    // is immaterial here
    let pre = cmd.pre.build(None, true)?;
    let docs: Vec<(String, ProcessedDocument)> = corpus
        .documents()
        .iter()
        .map(|d| {
            (
                d.label.clone().expect("loaded corpora are labeled"),
                pre.process(d),
            )
        })
        .collect();
    let classes: Vec<String> = match &cmd.class {
        Some(class) => {
            if !corpus.classes().contains(class) {
                return Err(format!(
                    "class {class:?} is not in the corpus (classes: {})",
                    corpus.classes().join(", ")
                )
                .into());
            }
            vec![class.clone()]
        }
        None => corpus.classes().to_vec(),
    };
    let mut output = String::new();
    for class in &classes {
        let top = select_top_terms(&docs, class, cmd.top)?;
        for (rank, scored) in top.iter().enumerate() {
            output.push_str(&format!(
                "{class}\t{}\t{}\t{:.6}\n",
                rank + 1,
                scored.term,
                scored.score
            ));
        }
    }
    emit(&cmd.out, &output)
}

fn compare_cmd(cmd: CompareCmd) -> Result<(), Box<dyn Error>> {
    let corpus = load_corpus(&cmd.corpus)?;
    let pipeline = pipeline_from_flags(&cmd.pre)?;
    let split = SplitSpec {
        train_fraction: cmd.train_fraction,
        seed: cmd.seed,
    };
    // the flags parameterize each family; both n-gram measures compete
    let specs = [
        ClassifierSpec::NaiveBayes {
            alpha: cmd.classifier.alpha,
        },
        ClassifierSpec::Knn {
            k: cmd.classifier.k,
            weighting: cmd.classifier.weighting.build(),
        },
        ClassifierSpec::Ngram {
            n: cmd.classifier.gram_size,
            truncation: cmd.classifier.truncation.0,
            measure: Measure::Manhattan,
        },
        ClassifierSpec::Ngram {
            n: cmd.classifier.gram_size,
            truncation: cmd.classifier.truncation.0,
            measure: Measure::Dice,
        },
    ];
    let comparison = compare_classifiers(&corpus, &specs, &pipeline, &split)?;
    emit(&cmd.out, &comparison.to_tsv())
}

fn dump_class_files_cmd(cmd: DumpClassFilesCmd) -> Result<(), Box<dyn Error>> {
    let model = match LoadedModel::load(&cmd.model)? {
        LoadedModel::Nb(m) => m,
        _ => {
            return Err(format!(
                "{} is not a Naive Bayes model; class files exist only for nb",
                cmd.model.display()
            )
            .into())
        }
    };
    model.write_class_files(&cmd.out_dir)?;
    eprintln!(
        "wrote {} class files to {}",
        model.profiles().len(),
        cmd.out_dir.display()
    );
    Ok(())
}
