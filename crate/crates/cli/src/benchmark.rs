use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use rbccr_core::stats::{control_comparisons, DEFAULT_ALPHA};
use rbccr_core::{friedman, rank_table, run_cv, wilcoxon_one_sided, EvalRecord, Metric, RankTable};

use crate::config::{parse_config, BenchmarkConfig};
use crate::error::{invalid, read_to_string, write, CliError};
use crate::records;
use crate::resample::load_dataset;

/// Files written by a benchmark run.
#[derive(Debug, Clone)]
pub struct BenchmarkOutputs {
    pub records: PathBuf,
    pub ranks: PathBuf,
    pub wilcoxon: PathBuf,
    pub friedman: PathBuf,
    pub holm: PathBuf,
    pub failed_datasets: Vec<String>,
}

/// Runs every (dataset, method, classifier) cell. A dataset that fails to
/// load or evaluate is dropped as a whole so the rank tables stay complete.
pub fn run_benchmark(config: &BenchmarkConfig) -> (Vec<EvalRecord>, Vec<String>) {
    let outcomes: Vec<(String, Result<Vec<EvalRecord>, CliError>)> = config
        .datasets
        .par_iter()
        .map(|src| {
            let label = src.path.display().to_string();
            let result = load_dataset(&src.path, src.format, &src.label_column).and_then(|d| {
                log::info!(
                    "{}: {} rows, {} features, IR {:.2}",
                    d.name,
                    d.len(),
                    d.n_features(),
                    d.imbalance_ratio()
                );
                let mut recs = Vec::new();
                for grid in &config.grids {
                    for clf in &config.classifiers {
                        let r = run_cv(&d, grid, clf, &config.plan)
                            .map_err(|e| invalid(format!("{} / {} / {clf}: {e}", d.name, grid.name)))?;
                        recs.extend(r);
                    }
                }
                Ok(recs)
            });
            (label, result)
        })
        .collect();
    let mut all = Vec::new();
    let mut failed = Vec::new();
    for (label, r) in outcomes {
        match r {
            Ok(recs) => all.extend(recs),
            Err(e) => {
                log::warn!("skipping {label}: {e}");
                failed.push(label);
            }
        }
    }
    (all, failed)
}

fn classifiers(records: &[EvalRecord]) -> Vec<String> {
    let mut seen: Vec<String> = Vec::new();
    for r in records {
        if !seen.contains(&r.classifier) {
            seen.push(r.classifier.clone());
        }
    }
    seen
}

/// Rank tables per `(classifier, metric)`.
pub fn rank_tables(records: &[EvalRecord]) -> Result<Vec<(String, RankTable)>, CliError> {
    let mut out = Vec::new();
    for clf in classifiers(records) {
        let subset: Vec<EvalRecord> = records.iter().filter(|r| r.classifier == clf).cloned().collect();
        for metric in Metric::ALL {
            out.push((clf.clone(), rank_table(&subset, metric)?));
        }
    }
    Ok(out)
}

fn num(v: f64) -> String {
    v.to_string()
}

/// Per dataset the mean of each method, then an `average rank` row.
pub fn ranks_csv(tables: &[(String, RankTable)]) -> String {
    let mut out = String::new();
    let mut last_methods: Option<&Vec<String>> = None;
    for (clf, t) in tables {
        if last_methods != Some(&t.methods) {
            out.push_str("classifier,metric,dataset,");
            out.push_str(&t.methods.join(","));
            out.push('\n');
            last_methods = Some(&t.methods);
        }
        for (d, row) in t.datasets.iter().zip(&t.means) {
            let cells: Vec<String> = row.iter().copied().map(num).collect();
            out.push_str(&format!("{clf},{},{d},{}\n", t.metric.name(), cells.join(",")));
        }
        let ranks: Vec<String> = t.average_ranks.iter().copied().map(num).collect();
        out.push_str(&format!("{clf},{},average rank,{}\n", t.metric.name(), ranks.join(",")));
    }
    out
}

/// One-sided tests of every `rb-ccr*` method against `ccr`, per classifier
/// and metric, on per-dataset means.
pub fn wilcoxon_csv(tables: &[(String, RankTable)]) -> String {
    let mut out = String::from("classifier,metric,method,baseline,datasets,statistic,p_value,significant,note\n");
    for (clf, t) in tables {
        let Some(base) = t.column("ccr") else { continue };
        for m in t.methods.iter().filter(|m| m.starts_with("rb-ccr")) {
            let col = t.column(m).expect("method present");
            let prefix = format!("{clf},{},{m},ccr,{}", t.metric.name(), t.datasets.len());
            match wilcoxon_one_sided(&col, &base, DEFAULT_ALPHA) {
                Ok(r) => out.push_str(&format!(
                    "{prefix},{},{},{},{}\n",
                    r.statistic,
                    r.p_value,
                    r.significant,
                    if r.degenerate { "all differences zero" } else { "" }
                )),
                Err(e) => out.push_str(&format!("{prefix},,,,{}\n", e.to_string().replace(',', ";"))),
            }
        }
    }
    out
}

/// Friedman test per table, plus Holm-adjusted comparisons to the
/// best-ranked method.
pub fn friedman_csv(tables: &[(String, RankTable)]) -> (String, String) {
    let mut fr = String::from("classifier,metric,datasets,methods,statistic,p_value,significant\n");
    let mut holm = String::from("classifier,metric,control,method,average_rank,z,p_value,p_holm,significant\n");
    for (clf, t) in tables {
        let metric = t.metric.name();
        match friedman(&t.means, DEFAULT_ALPHA) {
            Ok(f) => fr.push_str(&format!(
                "{clf},{metric},{},{},{},{},{}\n",
                t.datasets.len(),
                t.methods.len(),
                f.test.statistic,
                f.test.p_value,
                f.test.significant
            )),
            Err(e) => {
                log::warn!("{clf}/{metric}: {e}");
                continue;
            }
        }
        if let Ok((control, cmp)) = control_comparisons(&t.average_ranks, t.datasets.len()) {
            for c in cmp {
                holm.push_str(&format!(
                    "{clf},{metric},{},{},{},{},{},{},{}\n",
                    t.methods[control],
                    t.methods[c.method],
                    t.average_ranks[c.method],
                    c.z,
                    c.p_value,
                    c.p_holm,
                    c.p_holm < DEFAULT_ALPHA
                ));
            }
        }
    }
    (fr, holm)
}

fn check_unique_names(config: &BenchmarkConfig) -> Result<(), CliError> {
    let mut seen = BTreeSet::new();
    for src in &config.datasets {
        let stem = src
            .path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if !seen.insert(stem.clone()) {
            return Err(invalid(format!("two datasets are both named `{stem}`")));
        }
    }
    Ok(())
}

pub fn cmd_benchmark(config_path: &Path, jobs: Option<usize>) -> Result<BenchmarkOutputs, CliError> {
    let text = read_to_string(config_path)?;
    let base = config_path.parent().unwrap_or(Path::new("."));
    let config = parse_config(&text, base)?;
    check_unique_names(&config)?;
    std::fs::create_dir_all(&config.output).map_err(|e| CliError::io(&config.output, e))?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(invalid("--jobs must be at least 1"));
        }
        pool = pool.num_threads(j);
    }
    let pool = pool.build().map_err(|e| invalid(format!("thread pool: {e}")))?;
    let (recs, failed) = pool.install(|| run_benchmark(&config));
    if recs.is_empty() {
        return Err(invalid("every dataset failed; nothing to report"));
    }

    let tables = rank_tables(&recs)?;
    let (fr, holm) = friedman_csv(&tables);
    let outputs = BenchmarkOutputs {
        records: config.output.join("records.csv"),
        ranks: config.output.join("ranks.csv"),
        wilcoxon: config.output.join("wilcoxon.csv"),
        friedman: config.output.join("friedman.csv"),
        holm: config.output.join("holm.csv"),
        failed_datasets: failed,
    };
    write(&outputs.records, &records::to_csv(&recs))?;
    write(&outputs.ranks, &ranks_csv(&tables))?;
    write(&outputs.wilcoxon, &wilcoxon_csv(&tables))?;
    write(&outputs.friedman, &fr)?;
    write(&outputs.holm, &holm)?;
    Ok(outputs)
}
