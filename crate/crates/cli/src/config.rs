//! Benchmark configuration files.
//!
//! Line-oriented `key = value` pairs. Top-level keys come first; `[dataset]`
//! and `[method]` headers open repeatable blocks. `#` starts a comment.
//!
//! ```text
//! seed = 42
//! output = results
//! classifiers = knn, gnb
//! standardization = training-fold      # or whole-dataset
//! inner_resampling = per-inner-fold    # or once-on-outer-train
//!
//! [dataset]
//! path = ../data/keel/*.dat            # glob, relative to this file
//! format = keel                        # keel (default for .dat) or csv
//! label_column = class                 # csv only
//!
//! [method]
//! name = rb-ccr
//! regions = L, E, H, LEH               # rb-ccr only
//! energy = 0.5, 1, 2.5                 # optional grid overrides
//! gamma = 1
//! candidates = 100
//! k = 1, 3, 5                          # smote
//! label = rb-ccr-small                 # optional method name in tables
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use rbccr_core::evaluation::{InnerResampling, Standardization, ENERGY_GRID, GAMMA_GRID, SMOTE_K_GRID};
use rbccr_core::{ClassifierSpec, CvPlan, HyperGrid, LabelColumn, Method, ResamplerConfig, SamplingRegion};

use crate::error::{invalid, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Keel,
}

impl DataFormat {
    /// `.dat` files are KEEL, everything else CSV.
    pub fn infer(path: &Path) -> DataFormat {
        match path.extension().and_then(|e| e.to_str()) {
            Some("dat") => DataFormat::Keel,
            _ => DataFormat::Csv,
        }
    }
}

impl FromStr for DataFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(DataFormat::Csv),
            "keel" | "dat" => Ok(DataFormat::Keel),
            other => Err(invalid(format!("unknown format `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSource {
    pub path: PathBuf,
    pub format: DataFormat,
    pub label_column: LabelColumn,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkConfig {
    pub datasets: Vec<DatasetSource>,
    pub grids: Vec<HyperGrid>,
    pub classifiers: Vec<ClassifierSpec>,
    pub plan: CvPlan,
    pub output: PathBuf,
}

#[derive(Default)]
struct Block {
    line: usize,
    entries: Vec<(usize, String, String)>,
}

impl Block {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        let pos = self.entries.iter().position(|(_, k, _)| k == key)?;
        let (line, _, v) = self.entries.remove(pos);
        Some((line, v))
    }

    fn finish(self, what: &str) -> Result<(), CliError> {
        match self.entries.first() {
            Some((line, k, _)) => Err(invalid(format!("line {line}: unknown key `{k}` in {what}"))),
            None => Ok(()),
        }
    }
}

fn list<T: FromStr>(line: usize, key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| invalid(format!("line {line}: bad value `{}` for `{key}`", s.trim())))
        })
        .collect()
}

fn one<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, CliError> {
    value
        .trim()
        .parse()
        .map_err(|_| invalid(format!("line {line}: bad value `{value}` for `{key}`")))
}

fn method_grid(mut block: Block) -> Result<HyperGrid, CliError> {
    let (line, name) = block
        .take("name")
        .ok_or_else(|| invalid(format!("line {}: [method] without `name`", block.line)))?;
    let method: Method = name.parse()?;
    let energies = match block.take("energy") {
        Some((l, v)) => list(l, "energy", &v)?,
        None => ENERGY_GRID.to_vec(),
    };
    let gammas = match block.take("gamma") {
        Some((l, v)) => list(l, "gamma", &v)?,
        None => GAMMA_GRID.to_vec(),
    };
    let ks = match block.take("k") {
        Some((l, v)) => list(l, "k", &v)?,
        None => SMOTE_K_GRID.to_vec(),
    };
    let candidates = match block.take("candidates") {
        Some((l, v)) => one(l, "candidates", &v)?,
        None => rbccr_core::sampling::DEFAULT_CANDIDATES,
    };
    let regions: Vec<SamplingRegion> = match block.take("regions") {
        Some((l, v)) if method == Method::RbCcr => list(l, "regions", &v)?,
        Some((l, _)) => return Err(invalid(format!("line {l}: `regions` only applies to rb-ccr"))),
        None => SamplingRegion::ALL.to_vec(),
    };
    let label = block.take("label").map(|(_, v)| v);
    block.finish("[method]")?;

    let base = ResamplerConfig {
        candidates,
        ..ResamplerConfig::new(method)
    };
    let configs: Vec<ResamplerConfig> = match method {
        Method::None | Method::Ros | Method::Rus => vec![base],
        Method::Smote => ks.iter().map(|&k| ResamplerConfig { k_neighbors: k, ..base }).collect(),
        Method::Ccr => energies
            .iter()
            .map(|&energy| ResamplerConfig { energy, ..base })
            .collect(),
        Method::RbCcr => {
            let mut out = Vec::new();
            for &region in &regions {
                let gs: &[f64] = if region == SamplingRegion::LEH {
                    &gammas[..1]
                } else {
                    &gammas
                };
                for &energy in &energies {
                    for &gamma in gs {
                        out.push(ResamplerConfig {
                            energy,
                            gamma,
                            region,
                            ..base
                        });
                    }
                }
            }
            out
        }
    };
    let default_name = match (method, regions.as_slice()) {
        (Method::RbCcr, [r]) => format!("rb-ccr[{r}]"),
        _ => method.to_string(),
    };
    let grid = HyperGrid {
        name: label.unwrap_or(default_name),
        configs,
    };
    grid.validate().map_err(|e| invalid(format!("line {line}: {e}")))?;
    Ok(grid)
}

fn expand_paths(base: &Path, pattern: &str, line: usize) -> Result<Vec<PathBuf>, CliError> {
    let full = base.join(pattern);
    let full = full.to_string_lossy();
    if !full.contains(['*', '?', '[']) {
        return Ok(vec![PathBuf::from(full.as_ref())]);
    }
    let mut paths: Vec<PathBuf> = glob::glob(&full)
        .map_err(|e| invalid(format!("line {line}: bad pattern: {e}")))?
        .filter_map(Result::ok)
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(invalid(format!("line {line}: `{pattern}` matches no files")));
    }
    Ok(paths)
}

fn dataset_sources(mut block: Block, base: &Path) -> Result<Vec<DatasetSource>, CliError> {
    let (line, pattern) = block
        .take("path")
        .ok_or_else(|| invalid(format!("line {}: [dataset] without `path`", block.line)))?;
    let format = block.take("format").map(|(_, v)| v.parse::<DataFormat>()).transpose()?;
    let label_column = match block.take("label_column") {
        Some((_, v)) => match v.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(v),
        },
        None => LabelColumn::default(),
    };
    block.finish("[dataset]")?;
    Ok(expand_paths(base, &pattern, line)?
        .into_iter()
        .map(|path| DatasetSource {
            format: format.unwrap_or_else(|| DataFormat::infer(&path)),
            path,
            label_column: label_column.clone(),
        })
        .collect())
}

/// Parses a configuration; relative paths resolve against `base_dir`.
pub fn parse_config(text: &str, base_dir: &Path) -> Result<BenchmarkConfig, CliError> {
    let mut top = Block::default();
    let mut blocks: Vec<(String, Block)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim().to_ascii_lowercase();
            if name != "dataset" && name != "method" {
                return Err(invalid(format!("line {line}: unknown section `[{name}]`")));
            }
            blocks.push((
                name,
                Block {
                    line,
                    entries: Vec::new(),
                },
            ));
            continue;
        }
        let (k, v) = content
            .split_once('=')
            .ok_or_else(|| invalid(format!("line {line}: expected `key = value`")))?;
        let (k, v) = (k.trim().to_ascii_lowercase(), v.trim().to_string());
        let target = blocks.last_mut().map_or(&mut top, |(_, b)| b);
        if target.entries.iter().any(|(_, key, _)| *key == k) {
            return Err(invalid(format!("line {line}: duplicate key `{k}`")));
        }
        target.entries.push((line, k, v));
    }

    let mut plan = CvPlan::new(0);
    if let Some((l, v)) = top.take("seed") {
        plan.master_seed = one(l, "seed", &v)?;
    }
    if let Some((l, v)) = top.take("standardization") {
        plan.standardization = match v.as_str() {
            "training-fold" => Standardization::TrainingFold,
            "whole-dataset" => Standardization::WholeDataset,
            _ => return Err(invalid(format!("line {l}: unknown standardization `{v}`"))),
        };
    }
    if let Some((l, v)) = top.take("inner_resampling") {
        plan.inner_resampling = match v.as_str() {
            "per-inner-fold" => InnerResampling::PerInnerFold,
            "once-on-outer-train" => InnerResampling::OnceOnOuterTrain,
            _ => return Err(invalid(format!("line {l}: unknown inner_resampling `{v}`"))),
        };
    }
    let classifiers = match top.take("classifiers") {
        Some((l, v)) => {
            let specs: Vec<ClassifierSpec> = list(l, "classifiers", &v)?;
            for s in &specs {
                s.validate().map_err(|e| invalid(format!("line {l}: {e}")))?;
            }
            specs
        }
        None => vec![ClassifierSpec::knn()],
    };
    let output = base_dir.join(top.take("output").map_or_else(|| "results".to_string(), |(_, v)| v));
    top.finish("the top level")?;

    let mut datasets = Vec::new();
    let mut grids: Vec<HyperGrid> = Vec::new();
    for (name, block) in blocks {
        if name == "dataset" {
            datasets.extend(dataset_sources(block, base_dir)?);
        } else {
            let line = block.line;
            let grid = method_grid(block)?;
            if grids.iter().any(|g| g.name == grid.name) {
                return Err(invalid(format!("line {line}: method `{}` listed twice", grid.name)));
            }
            grids.push(grid);
        }
    }
    if datasets.is_empty() {
        return Err(invalid("no [dataset] blocks"));
    }
    if grids.is_empty() {
        return Err(invalid("no [method] blocks"));
    }
    Ok(BenchmarkConfig {
        datasets,
        grids,
        classifiers,
        plan,
        output,
    })
}
