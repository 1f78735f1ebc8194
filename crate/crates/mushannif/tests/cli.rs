//! End-to-end tests of the command-line binary: output formats, exit
//! codes, and determinism across invocations.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mushannif"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn write_corpus(root: &Path) {
    let sport = [
        "فاز الفريق في مباراة كرة القدم وسجل المهاجم هدفين في الملعب",
        "انطلقت البطولة وشارك اللاعبون في سباق الجري حول الملعب",
        "حقق المنتخب فوزا كبيرا في مباراة كرة السلة امام الفريق الضيف",
        "تدرب الحارس على صد الكرات قبل انطلاق المباراة النهائية",
    ];
    let econ = [
        "ارتفعت الاسهم في سوق المال وحققت البورصة ارباحا كبيرة",
        "اعلن البنك المركزي عن خطة تمويل جديدة لدعم الاستثمار",
        "انخفض سعر النفط في الاسواق العالمية وتراجعت ارباح الشركات",
        "وقعت الوزارة اتفاقية تجارة حرة لتنشيط الصادرات والواردات",
    ];
    for (class, texts) in [("sport", &sport), ("econ", &econ)] {
        let dir = root.join(class);
        fs::create_dir_all(&dir).unwrap();
        for (i, text) in texts.iter().enumerate() {
            fs::write(dir.join(format!("doc{i}.txt")), text).unwrap();
        }
    }
}

struct Fixture {
    _dir: tempfile::TempDir,
    corpus: PathBuf,
    root: PathBuf,
}

fn fixture() -> Fixture {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    write_corpus(&corpus);
    let root = dir.path().to_path_buf();
    Fixture {
        _dir: dir,
        corpus,
        root,
    }
}

#[test]
fn help_exits_zero_and_documents_subcommands() {
    let out = run(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in [
        "preprocess",
        "train",
        "classify",
        "evaluate",
        "chi2",
        "compare",
        "dump-class-files",
    ] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
    // every subcommand's help also exits 0
    for sub in ["preprocess", "train", "classify", "evaluate", "chi2", "compare"] {
        let out = run(&[sub, "--help"]);
        assert!(out.status.success(), "{sub} --help failed");
        assert!(stdout(&out).contains("default"), "{sub} --help lists no defaults");
    }
}

#[test]
fn unknown_flag_exits_one() {
    let out = run(&["evaluate", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!stderr(&out).is_empty());
}

#[test]
fn invalid_flag_value_exits_one() {
    let f = fixture();
    let corpus = f.corpus.to_str().unwrap();
    for args in [
        vec!["evaluate", "--corpus", corpus, "--train-fraction", "1.5"],
        vec!["evaluate", "--corpus", corpus, "--alpha", "-1"],
        vec!["evaluate", "--corpus", corpus, "-k", "0"],
        vec!["evaluate", "--corpus", corpus, "--truncation", "abc"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn missing_input_exits_two() {
    let out = run(&["train", "--corpus", "/no/such/dir", "--model", "/tmp/x.model"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("error:"));

    let f = fixture();
    let out = run(&[
        "classify",
        "--model",
        f.root.join("missing.model").to_str().unwrap(),
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn preprocess_streams_tokens() {
    let f = fixture();
    let out = run(&["preprocess", f.corpus.join("sport/doc0.txt").to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let tokens: Vec<&str> = text.lines().collect();
    assert!(tokens.contains(&"فريق"));
    assert!(tokens.contains(&"مبارا"));
    // stop words are gone
    assert!(!tokens.contains(&"في"));
    // diagnostics go to stderr, not stdout
    assert!(stderr(&out).contains("tokens"));
}

#[test]
fn train_then_classify_round_trip_nb() {
    let f = fixture();
    let model = f.root.join("m.nb");
    let out = run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--classifier",
        "nb",
        "--model",
        model.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "train failed: {}", stderr(&out));
    assert!(fs::read_to_string(&model)
        .unwrap()
        .starts_with("mushannif-nb v1\n"));

    let out = run(&[
        "classify",
        "--model",
        model.to_str().unwrap(),
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "classify failed: {}", stderr(&out));
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    // one line per class, best first, label TAB score
    assert_eq!(lines.len(), 2);
    let first: Vec<&str> = lines[0].split('\t').collect();
    assert_eq!(first.len(), 2);
    assert_eq!(first[0], "sport");
    let s0: f64 = first[1].parse().unwrap();
    let s1: f64 = lines[1].split('\t').nth(1).unwrap().parse().unwrap();
    assert!(s0 >= s1);
}

#[test]
fn classify_directory_lists_files_in_name_order() {
    let f = fixture();
    let model = f.root.join("m.nb");
    run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
    ]);
    let out = run(&[
        "classify",
        "--model",
        model.to_str().unwrap(),
        f.corpus.join("econ").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), 4);
    let names: Vec<&str> = lines.iter().map(|l| l.split('\t').next().unwrap()).collect();
    assert_eq!(names, ["doc0.txt", "doc1.txt", "doc2.txt", "doc3.txt"]);
    for line in &lines {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 3, "line {line:?}");
        assert_eq!(fields[1], "econ");
    }
}

#[test]
fn knn_and_ngram_models_round_trip() {
    let f = fixture();
    let knn = f.root.join("m.knn");
    let out = run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--classifier",
        "knn",
        "--model",
        knn.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(fs::read_to_string(&knn)
        .unwrap()
        .starts_with("mushannif-knn v1\n"));
    let out = run(&[
        "classify",
        "--model",
        knn.to_str().unwrap(),
        "-k",
        "3",
        f.corpus.join("econ/doc0.txt").to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).starts_with("econ\t"));

    let ngram = f.root.join("m.ngram");
    let out = run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--classifier",
        "ngram",
        "-n",
        "3",
        "--model",
        ngram.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(fs::read_to_string(&ngram)
        .unwrap()
        .starts_with("mushannif-ngram-model v1\n"));
    for measure in ["manhattan", "dice"] {
        let out = run(&[
            "classify",
            "--model",
            ngram.to_str().unwrap(),
            "--measure",
            measure,
            f.corpus.join("sport/doc2.txt").to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).starts_with("sport\t"), "measure {measure}");
    }
}

#[test]
fn mismatched_preprocessing_is_a_data_error() {
    let f = fixture();
    let model = f.root.join("m.nb");
    run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
        "--normalize",
        "system",
    ]);
    let out = run(&[
        "classify",
        "--model",
        model.to_str().unwrap(),
        "--normalize",
        "khreisat",
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("preprocessed with"));
}

#[test]
fn evaluate_is_deterministic_and_seed_sensitive() {
    let f = fixture();
    let args = [
        "evaluate",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--classifier",
        "nb",
        "--train-fraction",
        "0.5",
        "--seed",
        "11",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(stdout(&a), stdout(&b), "same invocation differs");
    assert!(stdout(&a).contains("accuracy\t"));
    assert!(stdout(&a).contains("class\tcc\ttcf\ttc\tprecision\trecall"));

    let mut other = args;
    other[8] = "12";
    let c = run(&other);
    assert_eq!(stdout(&c).lines().count(), stdout(&a).lines().count());
}

#[test]
fn evaluate_emits_json_when_asked() {
    let f = fixture();
    let out = run(&[
        "evaluate",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--train-fraction",
        "0.5",
        "--format",
        "json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!(v["accuracy"].is_number());
    assert_eq!(v["metadata"]["classifier"], "nb");
    assert!(v["confusion"]["sport"]["econ"].is_number());
}

#[test]
fn evaluate_writes_to_out_file() {
    let f = fixture();
    let report = f.root.join("report.tsv");
    let out = run(&[
        "evaluate",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--train-fraction",
        "0.5",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty(), "stdout not empty with --out");
    assert!(fs::read_to_string(&report).unwrap().contains("accuracy\t"));
}

#[test]
fn chi2_emits_ranked_table() {
    let f = fixture();
    let out = run(&[
        "chi2",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--top",
        "5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert!(!lines.is_empty());
    let mut seen_classes = std::collections::BTreeSet::new();
    for line in &lines {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 4, "line {line:?}");
        seen_classes.insert(fields[0]);
        let rank: usize = fields[1].parse().unwrap();
        assert!((1..=5).contains(&rank));
        let score: f64 = fields[3].parse().unwrap();
        assert!(score >= 0.0);
    }
    assert_eq!(
        seen_classes.into_iter().collect::<Vec<_>>(),
        ["econ", "sport"]
    );

    // restricting to one class filters the table
    let out = run(&[
        "chi2",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--class",
        "sport",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().all(|l| l.starts_with("sport\t")));

    // unknown class is a data error
    let out = run(&[
        "chi2",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--class",
        "nosuch",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_ranks_configurations() {
    let f = fixture();
    let args = [
        "compare",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--train-fraction",
        "0.5",
        "--seed",
        "3",
        "-k",
        "1",
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    // header + nb + knn + two ngram rows
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("classifier\tparams\taccuracy"));
    assert!(lines[1].ends_with("\t*"), "first row not flagged winner");
    // deterministic
    let again = run(&args);
    assert_eq!(stdout(&again), text);
}

#[test]
fn dump_class_files_writes_token_lists() {
    let f = fixture();
    let model = f.root.join("m.nb");
    let dump = f.root.join("classfiles");
    run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--model",
        model.to_str().unwrap(),
    ]);
    let out = run(&[
        "dump-class-files",
        "--model",
        model.to_str().unwrap(),
        "--out-dir",
        dump.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    for class in ["sport", "econ"] {
        let content = fs::read_to_string(dump.join(format!("{class}.txt"))).unwrap();
        assert!(!content.is_empty());
        // distinct tokens, one per line
        let tokens: Vec<&str> = content.lines().collect();
        let set: std::collections::BTreeSet<&&str> = tokens.iter().collect();
        assert_eq!(set.len(), tokens.len());
    }

    // train --dump-class-files lists the same tokens; the order differs
    // because a loaded model keeps the sorted order of the model file
    let dump2 = f.root.join("classfiles2");
    let out = run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--model",
        f.root.join("m2.nb").to_str().unwrap(),
        "--dump-class-files",
        dump2.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let mut a: Vec<String> = fs::read_to_string(dump.join("sport.txt"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    let mut b: Vec<String> = fs::read_to_string(dump2.join("sport.txt"))
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);

    // non-nb models have no class files
    let knn = f.root.join("m.knn");
    run(&[
        "train",
        "--corpus",
        f.corpus.to_str().unwrap(),
        "--classifier",
        "knn",
        "--model",
        knn.to_str().unwrap(),
    ]);
    let out = run(&[
        "dump-class-files",
        "--model",
        knn.to_str().unwrap(),
        "--out-dir",
        f.root.join("nope").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn custom_stoplist_and_stemmer_files_are_honored() {
    let f = fixture();
    let stoplist = f.root.join("stops.txt");
    fs::write(&stoplist, "# custom list\nفاز\n").unwrap();
    let out = run(&[
        "preprocess",
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
        "--stoplist",
        stoplist.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let tokens: Vec<&str> = text.lines().collect();
    assert!(!tokens.contains(&"فاز"), "custom stop word survived");
    // the bundled list is replaced entirely, so في now passes through
    assert!(tokens.contains(&"في"));

    let stemmer = f.root.join("affixes.txt");
    fs::write(&stemmer, "[prefixes]\nال\n[suffixes]\nين\n").unwrap();
    let out = run(&[
        "preprocess",
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
        "--stemmer",
        stemmer.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let tokens: Vec<&str> = text.lines().collect();
    // وسجل keeps its و prefix under the reduced affix table
    assert!(tokens.contains(&"وسجل"), "tokens: {tokens:?}");

    // malformed affix file is a data error
    fs::write(&stemmer, "ال\n[prefixes]\n").unwrap();
    let out = run(&[
        "preprocess",
        f.corpus.join("sport/doc0.txt").to_str().unwrap(),
        "--stemmer",
        stemmer.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
