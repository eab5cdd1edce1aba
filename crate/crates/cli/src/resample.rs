use std::io::Write;
use std::path::PathBuf;

use rbccr_core::{
    parse_csv, parse_keel, resample_dataset, standardize, Dataset, LabelColumn, Method, Provenance, ResamplerConfig,
    SamplingRegion,
};

use crate::config::DataFormat;
use crate::error::{read_to_string, CliError};

#[derive(Debug, Clone)]
pub struct ResampleArgs {
    pub input: PathBuf,
    pub format: Option<DataFormat>,
    pub label_column: LabelColumn,
    pub method: Method,
    pub energy: f64,
    pub gamma: f64,
    pub region: SamplingRegion,
    pub candidates: usize,
    pub k: usize,
    pub seed: u64,
    /// `None` writes to standard output.
    pub output: Option<PathBuf>,
    pub force_unscaled: bool,
}

pub fn load_dataset(
    path: &std::path::Path,
    format: DataFormat,
    label_column: &LabelColumn,
) -> Result<Dataset, CliError> {
    let text = read_to_string(path)?;
    let parsed = match format {
        DataFormat::Keel => parse_keel(&text),
        DataFormat::Csv => parse_csv(&text, label_column),
    };
    let mut d = parsed.map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    d.name = path
        .file_stem()
        .map_or_else(|| d.name.clone(), |s| s.to_string_lossy().into_owned());
    Ok(d)
}

fn push_row(out: &mut String, values: &[f64], label: &str, provenance: Provenance) {
    for v in values {
        out.push_str(&v.to_string());
        out.push(',');
    }
    out.push_str(label);
    out.push(',');
    out.push_str(&provenance.to_string());
    out.push('\n');
}

/// Resamples the input and renders the combined training set as CSV.
///
/// Resampling happens in standardized space unless `force_unscaled` is set;
/// untouched rows are echoed from the input, moved and synthetic rows are
/// mapped back to input units.
pub fn resample_to_csv(args: &ResampleArgs) -> Result<(String, f64), CliError> {
    let format = args.format.unwrap_or_else(|| DataFormat::infer(&args.input));
    let d = load_dataset(&args.input, format, &args.label_column)?;
    let config = ResamplerConfig {
        method: args.method,
        energy: args.energy,
        gamma: args.gamma,
        region: args.region,
        candidates: args.candidates,
        k_neighbors: args.k,
        seed: args.seed,
        allow_unscaled: args.force_unscaled,
    };
    config.validate()?;
    let (work, scaling) = if args.force_unscaled {
        (d.clone(), None)
    } else {
        let (z, p) = standardize(&d);
        (z, Some(p))
    };
    let out = resample_dataset(&work, &config)?;
    let back = |m: &rbccr_core::Matrix| match &scaling {
        Some(p) => p.invert(m),
        None => Ok(m.clone()),
    };
    let majority = back(&out.majority)?;
    let synthetic = back(&out.synthetic)?;
    let (min_rows, maj_rows) = d.class_indices();
    let majority_label = d.majority_label().to_string();

    let mut text = String::new();
    let mut header: Vec<&str> = d.feature_names.iter().map(String::as_str).collect();
    header.extend(["class", "provenance"]);
    text.push_str(&header.join(","));
    text.push('\n');
    for (j, &src) in out.majority_source.iter().enumerate() {
        if out.translated[j] {
            push_row(
                &mut text,
                majority.row(j),
                &majority_label,
                Provenance::TranslatedMajority,
            );
        } else {
            push_row(
                &mut text,
                d.features.row(maj_rows[src]),
                &majority_label,
                Provenance::OriginalMajority,
            );
        }
    }
    for &i in &min_rows {
        push_row(
            &mut text,
            d.features.row(i),
            &d.minority_label,
            Provenance::OriginalMinority,
        );
    }
    for row in synthetic.iter_rows() {
        push_row(&mut text, row, &d.minority_label, Provenance::Synthetic);
    }
    eprintln!(
        "{}: {} majority, {} minority + {} synthetic, achieved imbalance ratio {:.4}",
        d.name,
        out.majority.rows(),
        out.minority.rows(),
        out.synthetic.rows(),
        out.achieved_ratio
    );
    Ok((text, out.achieved_ratio))
}

pub fn cmd_resample(args: &ResampleArgs) -> Result<(), CliError> {
    let (text, _) = resample_to_csv(args)?;
    match &args.output {
        Some(path) => crate::error::write(path, &text),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(std::path::Path::new("<stdout>"), e)),
    }
}
