use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rbccr_cli::records;
use rbccr_core::{allocate_counts, parse_csv, parse_keel, sphere_radii, split_by_class, standardize, LabelColumn};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_rbccr"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/keel").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn resample_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = data("glass1.dat");
    let outs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let out = dir.path().join(format!("o{i}.csv"));
            let o = run(&[
                "resample",
                "--input",
                input.to_str().unwrap(),
                "--method",
                "rb-ccr",
                "--region",
                "H",
                "--seed",
                "42",
                "--output",
                out.to_str().unwrap(),
            ]);
            assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
            std::fs::read(out).unwrap()
        })
        .collect();
    assert_eq!(outs[0], outs[1]);
}

#[test]
fn glass1_row_count_matches_allocation() {
    let o = run(&["resample", "--input", data("glass1.dat").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();

    let d = parse_keel(&std::fs::read_to_string(data("glass1.dat")).unwrap()).unwrap();
    let (z, _) = standardize(&d);
    let (x_min, x_maj) = split_by_class(&z);
    let radii = sphere_radii(&x_min, &x_maj, 5.0).unwrap();
    let g = allocate_counts(&radii, 138, 76).unwrap().total();
    assert_eq!(text.lines().count() - 1, 138 + 76 + g);
    let stderr = String::from_utf8(o.stderr).unwrap();
    let ratio = 138.0 / (76 + g) as f64;
    assert!(
        stderr.contains(&format!("achieved imbalance ratio {ratio:.4}")),
        "{stderr}"
    );
}

#[test]
fn none_echoes_input_with_provenance() {
    let input = data("ecoli1.dat");
    let o = run(&["resample", "--input", input.to_str().unwrap(), "--method", "none"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let d = parse_keel(&std::fs::read_to_string(&input).unwrap()).unwrap();
    let (min, maj) = d.class_indices();
    let mut expected = Vec::new();
    for &i in maj.iter().chain(&min) {
        let p = if d.labels[i] == d.minority_label {
            "original-minority"
        } else {
            "original-majority"
        };
        let vals: Vec<String> = d.features.row(i).iter().map(|v| v.to_string()).collect();
        expected.push(format!("{},{},{p}", vals.join(","), d.labels[i]));
    }
    assert_eq!(text.lines().skip(1).collect::<Vec<_>>(), expected);
}

#[test]
fn resampled_csv_reparses_without_loss() {
    let o = run(&[
        "resample",
        "--input",
        data("glass0.dat").to_str().unwrap(),
        "--method",
        "smote",
        "--seed",
        "3",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let stripped: String = text
        .lines()
        .map(|l| format!("{}\n", l.rsplit_once(',').unwrap().0))
        .collect();
    let back = parse_csv(&stripped, &LabelColumn::default()).unwrap();
    assert_eq!(back.len(), text.lines().count() - 1);
    for (line, row) in text.lines().skip(1).zip(back.features.iter_rows()) {
        let cells: Vec<f64> = line.split(',').take(row.len()).map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells, row);
    }
}

#[test]
fn exit_codes_under_faults() {
    let dir = tempfile::tempdir().unwrap();
    let corrupt = dir.path().join("bad.csv");
    std::fs::write(&corrupt, "a,b,class\n1,2,x\n3,oops,y\n").unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let wrong = dir.path().join("wrong.csv");
    std::fs::write(&wrong, "dataset,score\nx,1\n").unwrap();

    assert_eq!(code(&run(&["resample", "--input", "/definitely/missing.csv"])), 2);
    assert_eq!(code(&run(&["resample", "--input", corrupt.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["resample", "--bogus-flag"])), 1);
    assert_eq!(
        code(&run(&[
            "resample",
            "--input",
            data("glass1.dat").to_str().unwrap(),
            "--energy",
            "-1"
        ])),
        1
    );
    assert_eq!(code(&run(&["report", empty.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["report", wrong.to_str().unwrap()])), 1);
    assert_eq!(code(&run(&["report", "/definitely/missing.csv"])), 2);
    assert_eq!(code(&run(&["benchmark", "/definitely/missing.cfg"])), 2);
    assert_eq!(code(&run(&["--help"])), 0);
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("bench.cfg");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn benchmark_cardinality_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            "seed = 4\noutput = out\n[dataset]\npath = {}\n[method]\nname = none\n[method]\nname = rb-ccr\nenergy = 1, 5\ngamma = 1\nregions = H, LEH\n",
            data("ecoli2.dat").display()
        ),
    );
    let o = run(&["benchmark", cfg.to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("out");
    let first: Vec<Vec<u8>> = ["records.csv", "ranks.csv", "wilcoxon.csv", "friedman.csv", "holm.csv"]
        .iter()
        .map(|f| std::fs::read(out.join(f)).unwrap())
        .collect();
    let recs = records::from_csv(std::str::from_utf8(&first[0]).unwrap()).unwrap();
    assert_eq!(recs.len(), 20);
    assert_eq!(recs.iter().filter(|r| r.method == "none").count(), 10);
    assert_eq!(recs.iter().filter(|r| r.method == "rb-ccr").count(), 10);
    assert_eq!(records::to_csv(&recs).as_bytes(), first[0].as_slice());

    assert_eq!(code(&run(&["benchmark", cfg.to_str().unwrap(), "--jobs", "1"])), 0);
    for (f, before) in ["records.csv", "ranks.csv", "wilcoxon.csv", "friedman.csv", "holm.csv"]
        .iter()
        .zip(&first)
    {
        assert_eq!(&std::fs::read(out.join(f)).unwrap(), before, "{f}");
    }
}

#[test]
fn benchmark_skips_failures_and_fails_when_nothing_runs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,class\n1,x\n2,y\nnope,x\n").unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            "output = out\n[dataset]\npath = bad.csv\n[dataset]\npath = {}\n[method]\nname = none\n",
            data("glass1.dat").display()
        ),
    );
    let o = run(&["benchmark", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("skipped"));
    let recs = records::from_csv(&std::fs::read_to_string(dir.path().join("out/records.csv")).unwrap()).unwrap();
    assert_eq!(recs.len(), 10);

    let cfg = write_config(
        dir.path(),
        "output = out2\n[dataset]\npath = bad.csv\n[method]\nname = none\n",
    );
    assert_eq!(code(&run(&["benchmark", cfg.to_str().unwrap()])), 1);
}

#[test]
fn report_on_planted_records() {
    let dir = tempfile::tempdir().unwrap();
    let rows = [
        ("d1", "none", 0.5),
        ("d1", "ros", 0.6),
        ("d1", "rb-ccr", 0.9),
        ("d2", "none", 0.4),
        ("d2", "ros", 0.4),
        ("d2", "rb-ccr", 0.8),
    ];
    let mut text = format!("{}\n", records::HEADER.join(","));
    for (d, m, v) in rows {
        for rep in 0..5 {
            for fold in 0..2 {
                text.push_str(&format!("{d},{m},,knn,{rep},{fold},{v},{v},{v},{v},{v},{v},1\n"));
            }
        }
    }
    let path = dir.path().join("records.csv");
    std::fs::write(&path, text).unwrap();
    let out = dir.path().join("report");
    let o = run(&["report", path.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let summary = std::fs::read_to_string(out.join("summary.csv")).unwrap();
    let row = |method: &str| -> Vec<f64> {
        let line = summary
            .lines()
            .find(|l| l.starts_with(&format!("knn,g_mean,{method},")))
            .unwrap();
        line.split(',').skip(3).map(|c| c.parse().unwrap()).collect()
    };
    // d1 ranks rb-ccr, ros, none; d2 ties none and ros at 2.5
    let rb = row("rb-ccr");
    assert!((rb[0] - 0.85).abs() < 1e-12);
    assert_eq!(&rb[1..], &[1.0, 2.0]);
    let ros = row("ros");
    assert!((ros[0] - 0.5).abs() < 1e-12);
    assert_eq!(&ros[1..], &[2.25, 0.0]);
    assert_eq!(&row("none")[1..], &[2.75, 0.0]);
    let pairwise = std::fs::read_to_string(out.join("pairwise.csv")).unwrap();
    assert!(pairwise.contains("knn,auc,ros,none,1,0,1\n"));
}
