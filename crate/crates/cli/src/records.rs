//! The records table: one row per outer fold.
//!
//! Columns: `dataset,method,params,classifier,rep,fold,precision,recall,
//! specificity,auc,f_measure,g_mean,achieved_ratio`.

use rbccr_core::EvalRecord;

use crate::error::{invalid, CliError};

pub const HEADER: [&str; 13] = [
    "dataset",
    "method",
    "params",
    "classifier",
    "rep",
    "fold",
    "precision",
    "recall",
    "specificity",
    "auc",
    "f_measure",
    "g_mean",
    "achieved_ratio",
];

pub fn to_csv(records: &[EvalRecord]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(HEADER).expect("in-memory write");
    for r in records {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("csv output is UTF-8")
}

/// Parses a records table, requiring the exact header and at least one row.
pub fn from_csv(text: &str) -> Result<Vec<EvalRecord>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| invalid(format!("records: {e}")))?.clone();
    if header.iter().ne(HEADER) {
        return Err(invalid(format!(
            "records: expected header `{}`, found `{}`",
            HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let records: Vec<EvalRecord> = r
        .deserialize()
        .enumerate()
        .map(|(i, rec)| rec.map_err(|e| invalid(format!("records row {}: {e}", i + 2))))
        .collect::<Result<_, _>>()?;
    if records.is_empty() {
        return Err(invalid("records: no rows"));
    }
    Ok(records)
}
