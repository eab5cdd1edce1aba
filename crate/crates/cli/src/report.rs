use std::path::Path;

use rbccr_core::EvalRecord;

use crate::benchmark::rank_tables;
use crate::error::{read_to_string, CliError};
use crate::records;

/// Per classifier, metric and method: mean of dataset means, average rank,
/// and the number of datasets on which the method is (jointly) best.
pub fn summary_csv(records: &[EvalRecord]) -> Result<String, CliError> {
    let mut out = String::from("classifier,metric,method,mean,average_rank,wins\n");
    for (clf, t) in rank_tables(records)? {
        for (j, m) in t.methods.iter().enumerate() {
            let mean = t.means.iter().map(|row| row[j]).sum::<f64>() / t.datasets.len() as f64;
            let wins = t
                .ranks
                .iter()
                .filter(|row| row[j] == row.iter().copied().fold(f64::INFINITY, f64::min))
                .count();
            out.push_str(&format!(
                "{clf},{},{m},{mean},{},{wins}\n",
                t.metric.name(),
                t.average_ranks[j]
            ));
        }
    }
    Ok(out)
}

/// Dataset-level wins, losses and ties for every ordered pair of methods.
pub fn pairwise_csv(records: &[EvalRecord]) -> Result<String, CliError> {
    let mut out = String::from("classifier,metric,method,opponent,wins,losses,ties\n");
    for (clf, t) in rank_tables(records)? {
        for (a, ma) in t.methods.iter().enumerate() {
            for (b, mb) in t.methods.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (mut w, mut l, mut ties) = (0, 0, 0);
                for row in &t.means {
                    match row[a].total_cmp(&row[b]) {
                        std::cmp::Ordering::Greater => w += 1,
                        std::cmp::Ordering::Less => l += 1,
                        std::cmp::Ordering::Equal => ties += 1,
                    }
                }
                out.push_str(&format!("{clf},{},{ma},{mb},{w},{l},{ties}\n", t.metric.name()));
            }
        }
    }
    Ok(out)
}

/// Writes `summary.csv` and `pairwise.csv` into `output_dir`, or prints the
/// summary when no directory is given.
pub fn cmd_report(records_path: &Path, output_dir: Option<&Path>) -> Result<(), CliError> {
    let recs = records::from_csv(&read_to_string(records_path)?)
        .map_err(|e| CliError::Invalid(format!("{}: {e}", records_path.display())))?;
    let summary = summary_csv(&recs)?;
    match output_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
            crate::error::write(&dir.join("summary.csv"), &summary)?;
            crate::error::write(&dir.join("pairwise.csv"), &pairwise_csv(&recs)?)
        }
        None => {
            print!("{summary}");
            Ok(())
        }
    }
}
