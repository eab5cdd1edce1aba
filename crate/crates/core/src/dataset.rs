//! Binary classification datasets: KEEL and CSV parsing, z-score scaling,
//! class partitioning and stratified fold generation.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, ParseError, Result};
use crate::matrix::Matrix;

/// A dense binary-labelled dataset with a designated minority class.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub name: String,
    pub feature_names: Vec<String>,
    pub features: Matrix,
    pub labels: Vec<String>,
    pub minority_label: String,
    standardized: bool,
}

impl Dataset {
    /// Validates the binary-class invariants and picks the minority label.
    ///
    /// The minority is the rarer label; on equal counts the lexicographically
    /// smaller label wins.
    pub fn new(
        name: impl Into<String>,
        feature_names: Vec<String>,
        features: Matrix,
        labels: Vec<String>,
    ) -> Result<Self> {
        if features.rows() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: features.rows(),
                found: labels.len(),
            });
        }
        if feature_names.len() != features.cols() {
            return Err(Error::DimensionMismatch {
                expected: features.cols(),
                found: feature_names.len(),
            });
        }
        if features.cols() == 0 {
            return Err(Error::InvalidParameter("dataset needs at least one feature".into()));
        }
        if features.as_slice().iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite feature value".into()));
        }
        let minority_label = minority_of(&labels)?;
        Ok(Self {
            name: name.into(),
            feature_names,
            features,
            labels,
            minority_label,
            standardized: false,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.features.cols()
    }

    pub fn is_standardized(&self) -> bool {
        self.standardized
    }

    pub fn majority_label(&self) -> &str {
        self.labels
            .iter()
            .find(|l| **l != self.minority_label)
            .map(String::as_str)
            .unwrap_or("")
    }

    /// `true` for every minority row.
    pub fn minority_mask(&self) -> Vec<bool> {
        self.labels.iter().map(|l| *l == self.minority_label).collect()
    }

    /// Row indices of the minority and majority classes, in dataset order.
    pub fn class_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut min = Vec::new();
        let mut maj = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            if *l == self.minority_label {
                min.push(i);
            } else {
                maj.push(i);
            }
        }
        (min, maj)
    }

    pub fn imbalance_ratio(&self) -> f64 {
        let (min, maj) = self.class_indices();
        maj.len() as f64 / min.len() as f64
    }

    /// Rows at `indices`. The minority designation is inherited even when the
    /// subset's counts would pick the other label.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            name: self.name.clone(),
            feature_names: self.feature_names.clone(),
            features: self.features.select_rows(indices),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            minority_label: self.minority_label.clone(),
            standardized: self.standardized,
        }
    }

    /// Replaces the feature matrix, keeping labels and names.
    pub fn with_features(&self, features: Matrix, standardized: bool) -> Result<Dataset> {
        if features.rows() != self.len() || features.cols() != self.n_features() {
            return Err(Error::DimensionMismatch {
                expected: self.len() * self.n_features(),
                found: features.rows() * features.cols(),
            });
        }
        Ok(Dataset {
            features,
            standardized,
            ..self.clone()
        })
    }

    /// Marks the features as living in standardized space without rescaling.
    pub fn assume_standardized(mut self) -> Dataset {
        self.standardized = true;
        self
    }

    /// Serializes as CSV with a header row; the class is the last column.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<&str> = self.feature_names.iter().map(String::as_str).collect();
        header.push("class");
        out.push_str(&header.join(","));
        out.push('\n');
        for (row, label) in self.features.iter_rows().zip(&self.labels) {
            for v in row {
                out.push_str(&v.to_string());
                out.push(',');
            }
            out.push_str(label);
            out.push('\n');
        }
        out
    }
}

fn minority_of(labels: &[String]) -> Result<String> {
    let mut counts: Vec<(&String, usize)> = Vec::new();
    for l in labels {
        match counts.iter_mut().find(|(k, _)| *k == l) {
            Some((_, c)) => *c += 1,
            None => counts.push((l, 1)),
        }
    }
    match counts.len() {
        0 | 1 => Err(ParseError::TooFewClasses.into()),
        2 => {
            let (a, b) = (counts[0], counts[1]);
            let minority = match a.1.cmp(&b.1) {
                std::cmp::Ordering::Less => a.0,
                std::cmp::Ordering::Greater => b.0,
                std::cmp::Ordering::Equal => a.0.min(b.0),
            };
            Ok(minority.clone())
        }
        _ => Err(ParseError::TooManyClasses {
            line: 0,
            label: counts[2].0.clone(),
        }
        .into()),
    }
}

#[derive(Debug, Clone)]
enum AttrKind {
    Numeric,
    Nominal(Vec<String>),
}

#[derive(Debug, Clone)]
struct Attribute {
    name: String,
    kind: AttrKind,
}

fn parse_attribute(rest: &str, line: usize) -> Result<Attribute, ParseError> {
    let rest = rest.trim();
    let (name, spec) = if let Some(stripped) = rest.strip_prefix('\'') {
        let end = stripped.find('\'').ok_or_else(|| ParseError::MalformedHeader {
            line,
            msg: "unterminated quoted attribute name".into(),
        })?;
        (stripped[..end].to_string(), stripped[end + 1..].trim())
    } else {
        let split = rest
            .find(|c: char| c.is_whitespace() || c == '{')
            .ok_or_else(|| ParseError::MalformedHeader {
                line,
                msg: "attribute without a type".into(),
            })?;
        (rest[..split].to_string(), rest[split..].trim())
    };
    if name.is_empty() || spec.is_empty() {
        return Err(ParseError::MalformedHeader {
            line,
            msg: "attribute without a type".into(),
        });
    }
    if let Some(body) = spec.strip_prefix('{') {
        let body = body.strip_suffix('}').ok_or_else(|| ParseError::MalformedHeader {
            line,
            msg: "unterminated nominal set".into(),
        })?;
        let values = body
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        return Ok(Attribute {
            name,
            kind: AttrKind::Nominal(values),
        });
    }
    let keyword = spec.split(|c: char| c.is_whitespace() || c == '[').next().unwrap_or("");
    match keyword.to_ascii_lowercase().as_str() {
        "real" | "integer" | "numeric" => Ok(Attribute {
            name,
            kind: AttrKind::Numeric,
        }),
        _ => Err(ParseError::UnknownAttributeType {
            line,
            kind: keyword.to_string(),
        }),
    }
}

fn name_list(rest: &str) -> Vec<String> {
    rest.split(',')
        .map(|s| s.trim().trim_matches('\'').to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Parses a KEEL `.dat` file.
///
/// Nominal input attributes are encoded as integers in order of first
/// appearance in the data section. `@inputs`/`@outputs` are honored when
/// present; otherwise the last attribute is the class.
pub fn parse_keel(text: &str) -> Result<Dataset> {
    let mut relation = String::new();
    let mut attributes: Vec<Attribute> = Vec::new();
    let mut inputs: Option<Vec<String>> = None;
    let mut outputs: Option<Vec<String>> = None;
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut saw_data = false;

    for (lineno, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let Some(directive) = line.strip_prefix('@') else {
            return Err(ParseError::MalformedHeader {
                line: lineno,
                msg: "data row before @data".into(),
            }
            .into());
        };
        let (word, rest) = directive.split_once(char::is_whitespace).unwrap_or((directive, ""));
        match word.to_ascii_lowercase().as_str() {
            "relation" => relation = rest.trim().trim_matches('\'').to_string(),
            "attribute" => attributes.push(parse_attribute(rest, lineno)?),
            "inputs" | "input" => inputs = Some(name_list(rest)),
            "outputs" | "output" => outputs = Some(name_list(rest)),
            "data" => {
                saw_data = true;
                break;
            }
            other => {
                return Err(ParseError::MalformedHeader {
                    line: lineno,
                    msg: format!("unknown directive @{other}"),
                }
                .into())
            }
        }
    }
    if !saw_data {
        return Err(ParseError::MalformedHeader {
            line: text.lines().count(),
            msg: "missing @data".into(),
        }
        .into());
    }
    if attributes.len() < 2 {
        return Err(ParseError::MalformedHeader {
            line: 1,
            msg: "need at least one input and one class attribute".into(),
        }
        .into());
    }

    let position = |name: &str| attributes.iter().position(|a| a.name == name);
    let class_col = match &outputs {
        Some(out) => {
            if out.len() != 1 {
                return Err(ParseError::MalformedHeader {
                    line: 1,
                    msg: "exactly one output attribute is supported".into(),
                }
                .into());
            }
            position(&out[0]).ok_or_else(|| ParseError::MalformedHeader {
                line: 1,
                msg: format!("unknown output attribute `{}`", out[0]),
            })?
        }
        None => attributes.len() - 1,
    };
    let input_cols: Vec<usize> = match &inputs {
        Some(names) => names
            .iter()
            .map(|n| {
                position(n).ok_or_else(|| ParseError::MalformedHeader {
                    line: 1,
                    msg: format!("unknown input attribute `{n}`"),
                })
            })
            .collect::<Result<_, _>>()?,
        None => (0..attributes.len()).filter(|&c| c != class_col).collect(),
    };

    let width = attributes.len();
    let mut codes: Vec<HashMap<String, usize>> = vec![HashMap::new(); width];
    let mut features = Matrix::with_cols(input_cols.len());
    let mut labels = Vec::new();
    let mut classes: Vec<String> = Vec::new();
    let mut row = vec![0.0; input_cols.len()];

    for (lineno, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if cells.len() != width {
            return Err(ParseError::Arity {
                line: lineno,
                expected: width,
                found: cells.len(),
            }
            .into());
        }
        for (k, &c) in input_cols.iter().enumerate() {
            let cell = cells[c];
            if cell.is_empty() || cell == "?" {
                return Err(ParseError::MissingValue {
                    line: lineno,
                    column: c,
                }
                .into());
            }
            row[k] = match &attributes[c].kind {
                AttrKind::Numeric => cell.parse::<f64>().map_err(|_| ParseError::NonNumeric {
                    line: lineno,
                    column: c,
                    value: cell.to_string(),
                })?,
                AttrKind::Nominal(values) => {
                    if !values.iter().any(|v| v == cell) {
                        return Err(ParseError::UndeclaredNominal {
                            line: lineno,
                            value: cell.to_string(),
                        }
                        .into());
                    }
                    let table = &mut codes[c];
                    let next = table.len();
                    *table.entry(cell.to_string()).or_insert(next) as f64
                }
            };
        }
        let label = cells[class_col];
        if label.is_empty() || label == "?" {
            return Err(ParseError::MissingValue {
                line: lineno,
                column: class_col,
            }
            .into());
        }
        if !classes.iter().any(|c| c == label) {
            if classes.len() == 2 {
                return Err(ParseError::TooManyClasses {
                    line: lineno,
                    label: label.to_string(),
                }
                .into());
            }
            classes.push(label.to_string());
        }
        features.push_row(&row)?;
        labels.push(label.to_string());
    }
    if labels.is_empty() {
        return Err(ParseError::Empty.into());
    }
    let names = input_cols.iter().map(|&c| attributes[c].name.clone()).collect();
    Dataset::new(relation, names, features, labels)
}

/// Which CSV column holds the class label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Name(String),
    Index(usize),
}

impl Default for LabelColumn {
    fn default() -> Self {
        LabelColumn::Name("class".into())
    }
}

/// Parses a rectangular CSV with a header row. Every non-label column must be numeric.
pub fn parse_csv(text: &str, label_column: &LabelColumn) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| ParseError::Csv(e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let label_idx = match label_column {
        LabelColumn::Name(n) => headers
            .iter()
            .position(|h| h == n)
            .ok_or_else(|| ParseError::MissingLabelColumn(n.clone()))?,
        LabelColumn::Index(i) if *i < headers.len() => *i,
        LabelColumn::Index(i) => return Err(ParseError::MissingLabelColumn(i.to_string()).into()),
    };
    let feature_cols: Vec<usize> = (0..headers.len()).filter(|&c| c != label_idx).collect();
    let mut features = Matrix::with_cols(feature_cols.len());
    let mut labels = Vec::new();
    let mut row = vec![0.0; feature_cols.len()];
    for record in reader.records() {
        let record = record.map_err(|e| match e.kind() {
            csv::ErrorKind::UnequalLengths { pos, expected_len, len } => ParseError::Arity {
                line: pos.as_ref().map_or(0, |p| p.line() as usize),
                expected: *expected_len as usize,
                found: *len as usize,
            },
            _ => ParseError::Csv(e.to_string()),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        for (k, &c) in feature_cols.iter().enumerate() {
            let cell = &record[c];
            if cell.is_empty() || cell == "?" {
                return Err(ParseError::MissingValue { line, column: c }.into());
            }
            row[k] = cell.parse::<f64>().map_err(|_| ParseError::NonNumeric {
                line,
                column: c,
                value: cell.to_string(),
            })?;
        }
        let label = &record[label_idx];
        if label.is_empty() {
            return Err(ParseError::MissingValue {
                line,
                column: label_idx,
            }
            .into());
        }
        features.push_row(&row)?;
        labels.push(label.to_string());
        let distinct = {
            let mut d: Vec<&String> = labels.iter().collect();
            d.sort();
            d.dedup();
            d.len()
        };
        if distinct > 2 {
            return Err(ParseError::TooManyClasses {
                line,
                label: label.to_string(),
            }
            .into());
        }
    }
    if labels.is_empty() {
        return Err(ParseError::Empty.into());
    }
    let names = feature_cols.iter().map(|&c| headers[c].clone()).collect();
    Dataset::new("csv", names, features, labels)
}

/// Per-column z-score parameters (population standard deviation).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingParams {
    pub means: Vec<f64>,
    /// Always positive; constant columns store 1.0 and map to zeros.
    pub standard_deviations: Vec<f64>,
}

impl ScalingParams {
    pub fn fit(x: &Matrix) -> Self {
        let n = x.rows().max(1) as f64;
        let m = x.cols();
        let mut means = vec![0.0; m];
        for row in x.iter_rows() {
            for (acc, v) in means.iter_mut().zip(row) {
                *acc += v;
            }
        }
        means.iter_mut().for_each(|v| *v /= n);
        let mut var = vec![0.0; m];
        for row in x.iter_rows() {
            for ((acc, v), mu) in var.iter_mut().zip(row).zip(&means) {
                *acc += (v - mu) * (v - mu);
            }
        }
        let standard_deviations = var
            .iter()
            .zip(&means)
            .map(|(v, mu)| {
                let sd = (v / n).sqrt();
                if sd <= 1e-12 * mu.abs().max(1.0) {
                    1.0
                } else {
                    sd
                }
            })
            .collect();
        Self {
            means,
            standard_deviations,
        }
    }

    /// Whether column `j` was constant at fit time.
    fn constant(&self, x: &Matrix, j: usize) -> bool {
        self.standard_deviations[j] == 1.0
            && x.iter_rows()
                .all(|r| (r[j] - self.means[j]).abs() <= 1e-12 * self.means[j].abs().max(1.0))
    }

    pub fn apply(&self, x: &Matrix) -> Result<Matrix> {
        if x.cols() != self.means.len() {
            return Err(Error::DimensionMismatch {
                expected: self.means.len(),
                found: x.cols(),
            });
        }
        let mut out = x.clone();
        for i in 0..out.rows() {
            let row = out.row_mut(i);
            for ((v, mu), sd) in row.iter_mut().zip(&self.means).zip(&self.standard_deviations) {
                *v = (*v - mu) / sd;
            }
        }
        Ok(out)
    }

    pub fn invert(&self, z: &Matrix) -> Result<Matrix> {
        if z.cols() != self.means.len() {
            return Err(Error::DimensionMismatch {
                expected: self.means.len(),
                found: z.cols(),
            });
        }
        let mut out = z.clone();
        for i in 0..out.rows() {
            let row = out.row_mut(i);
            for ((v, mu), sd) in row.iter_mut().zip(&self.means).zip(&self.standard_deviations) {
                *v = *v * sd + mu;
            }
        }
        Ok(out)
    }
}

/// Fits z-score parameters on `d` and applies them. Constant columns become zeros.
pub fn standardize(d: &Dataset) -> (Dataset, ScalingParams) {
    let params = ScalingParams::fit(&d.features);
    let mut z = params.apply(&d.features).expect("fitted on the same matrix");
    for j in 0..z.cols() {
        if params.constant(&d.features, j) {
            for i in 0..z.rows() {
                z.set(i, j, 0.0);
            }
        }
    }
    let out = d.with_features(z, true).expect("same shape");
    (out, params)
}

/// Splits rows into `(X_min, X_maj)`, preserving within-class order.
pub fn split_by_class(d: &Dataset) -> (Matrix, Matrix) {
    let (min, maj) = d.class_indices();
    (d.features.select_rows(&min), d.features.select_rows(&maj))
}

/// A `(train, test)` pair of row indices, each sorted ascending.
pub type Fold = (Vec<usize>, Vec<usize>);

/// Stratified k-fold partition. Each class is shuffled with `seed` and dealt
/// round-robin into the folds, so per-class fold counts differ by at most one.
pub fn stratified_kfold(d: &Dataset, k: usize, seed: u64) -> Result<Vec<Fold>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let (mut min, mut maj) = d.class_indices();
    for (name, members) in [(&d.minority_label, &min), (&d.majority_label().to_string(), &maj)] {
        if members.len() < k {
            return Err(Error::ClassTooSmall {
                class: name.clone(),
                count: members.len(),
                needed: k,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    min.shuffle(&mut rng);
    maj.shuffle(&mut rng);
    let mut tests: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (pos, &i) in min.iter().enumerate() {
        tests[pos % k].push(i);
    }
    let offset = min.len() % k;
    for (pos, &i) in maj.iter().enumerate() {
        tests[(pos + offset) % k].push(i);
    }
    let n = d.len();
    Ok(tests
        .into_iter()
        .map(|mut test| {
            test.sort_unstable();
            let mut in_test = vec![false; n];
            test.iter().for_each(|&i| in_test[i] = true);
            let train = (0..n).filter(|&i| !in_test[i]).collect();
            (train, test)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn toy(label_pattern: &[&str]) -> Dataset {
        let rows: Vec<[f64; 1]> = (0..label_pattern.len()).map(|i| [i as f64]).collect();
        Dataset::new(
            "toy",
            vec!["x".into()],
            Matrix::from_rows(&rows).unwrap(),
            labels(label_pattern),
        )
        .unwrap()
    }

    const KEEL: &str = "@relation tiny
@attribute a real [0.0, 5.0]
@attribute color {a, b}
@attribute Class {positive, negative}
@data
1.0, a, negative
2.0, b, positive
3.0, a, negative
";

    #[test]
    fn keel_nominal_codes_follow_first_appearance() {
        let d = parse_keel(KEEL).unwrap();
        assert_eq!(d.name, "tiny");
        assert_eq!(d.n_features(), 2);
        let codes: Vec<f64> = d.features.iter_rows().map(|r| r[1]).collect();
        assert_eq!(codes, vec![0.0, 1.0, 0.0]);
        assert_eq!(d.minority_label, "positive");
    }

    #[test]
    fn keel_honors_inputs_outputs() {
        let text = "@relation io
@attribute Class {x, y}
@attribute f1 real
@attribute f2 integer
@inputs f2, f1
@outputs Class
@data
x, 1.5, 7
y, 2.5, 8
x, 3.5, 9
";
        let d = parse_keel(text).unwrap();
        assert_eq!(d.feature_names, vec!["f2", "f1"]);
        assert_eq!(d.features.row(0), &[7.0, 1.5]);
        assert_eq!(d.minority_label, "y");
    }

    #[test]
    fn keel_errors_carry_line_numbers() {
        let one_class = "@relation r\n@attribute a real\n@attribute c {p,n}\n@data\n1.0, p\n";
        assert_eq!(parse_keel(one_class), Err(ParseError::TooFewClasses.into()));

        let arity = "@relation r\n@attribute a real\n@attribute c {p,n}\n@data\n1.0, p\n2.0\n";
        assert!(matches!(
            parse_keel(arity),
            Err(Error::Parse(ParseError::Arity {
                line: 6,
                expected: 2,
                found: 1
            }))
        ));

        let three = "@relation r\n@attribute a real\n@attribute c {p,n,q}\n@data\n1,p\n2,n\n3,q\n";
        assert!(matches!(
            parse_keel(three),
            Err(Error::Parse(ParseError::TooManyClasses { line: 7, .. }))
        ));

        let kind = "@relation r\n@attribute a string\n@attribute c {p,n}\n@data\n";
        assert!(matches!(
            parse_keel(kind),
            Err(Error::Parse(ParseError::UnknownAttributeType { line: 2, .. }))
        ));

        let header = "@relation r\n@attribute\n@data\n";
        assert!(matches!(
            parse_keel(header),
            Err(Error::Parse(ParseError::MalformedHeader { line: 2, .. }))
        ));

        let missing = "@relation r\n@attribute a real\n@attribute c {p,n}\n@data\n?, p\n1, n\n";
        assert!(matches!(
            parse_keel(missing),
            Err(Error::Parse(ParseError::MissingValue { line: 5, .. }))
        ));
    }

    #[test]
    fn csv_minority_by_count() {
        let text = "x,y,label\n0,1,0\n1,1,0\n2,0,0\n3,3,1\n";
        let d = parse_csv(text, &LabelColumn::Name("label".into())).unwrap();
        assert_eq!(d.minority_label, "1");
        assert_eq!(d.n_features(), 2);
        assert!(matches!(
            parse_csv(text, &LabelColumn::Name("nope".into())),
            Err(Error::Parse(ParseError::MissingLabelColumn(_)))
        ));
    }

    #[test]
    fn csv_rejects_bad_cells() {
        let text = "x,class\n1,a\nfoo,b\n";
        assert!(matches!(
            parse_csv(text, &LabelColumn::default()),
            Err(Error::Parse(ParseError::NonNumeric { .. }))
        ));
        let ragged = "x,class\n1,a\n2,b,3\n";
        assert!(matches!(
            parse_csv(ragged, &LabelColumn::default()),
            Err(Error::Parse(ParseError::Arity { .. }))
        ));
    }

    #[test]
    fn csv_matches_keel() {
        let keel = "@relation r\n@attribute a real\n@attribute b integer\n@attribute Class {positive, negative}\n@data\n0.5, 1, negative\n1.25, 2, positive\n-3, 4, negative\n";
        let k = parse_keel(keel).unwrap();
        let csv = "a,b,Class\n0.5,1,negative\n1.25,2,positive\n-3,4,negative\n";
        let c = parse_csv(csv, &LabelColumn::Name("Class".into())).unwrap();
        assert_eq!(k.features, c.features);
        assert_eq!(k.labels, c.labels);
        assert_eq!(k.minority_label, c.minority_label);
        assert_eq!(k.feature_names, c.feature_names);
    }

    #[test]
    fn tie_breaks_to_smaller_label() {
        let d = toy(&["b", "a", "b", "a"]);
        assert_eq!(d.minority_label, "a");
    }

    #[test]
    fn standardize_population_sd() {
        let d = Dataset::new(
            "s",
            vec!["x".into(), "c".into()],
            Matrix::from_rows(&[[1.0, 5.0], [3.0, 5.0]]).unwrap(),
            labels(&["p", "n"]),
        )
        .unwrap();
        let (z, params) = standardize(&d);
        assert_eq!(params.means[0], 2.0);
        assert_eq!(params.standard_deviations[0], 1.0);
        assert_eq!(z.features.row(0), &[-1.0, 0.0]);
        assert_eq!(z.features.row(1), &[1.0, 0.0]);
        assert!(z.is_standardized());
    }

    #[test]
    fn constant_column_maps_to_zero() {
        let d = Dataset::new(
            "s",
            vec!["c".into()],
            Matrix::from_rows(&[[5.0], [5.0], [5.0]]).unwrap(),
            labels(&["p", "n", "n"]),
        )
        .unwrap();
        let (z, _) = standardize(&d);
        assert!(z.features.as_slice().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn split_preserves_order() {
        let d = toy(&["1", "0", "1", "0", "0"]);
        let (min, maj) = split_by_class(&d);
        assert_eq!(min.as_slice(), &[0.0, 2.0]);
        assert_eq!(maj.as_slice(), &[1.0, 3.0, 4.0]);
    }

    #[test]
    fn kfold_stratification() {
        let d = toy(&["0", "0", "0", "0", "1", "0", "0", "0", "0", "1"]);
        let folds = stratified_kfold(&d, 2, 7).unwrap();
        for (_, test) in &folds {
            let min = test.iter().filter(|&&i| d.labels[i] == "1").count();
            assert_eq!((test.len() - min, min), (4, 1));
        }
        assert_eq!(folds, stratified_kfold(&d, 2, 7).unwrap());

        let mut pattern = vec!["0"; 9];
        pattern.extend(["1"; 3]);
        let d = toy(&pattern);
        for (_, test) in stratified_kfold(&d, 3, 1).unwrap() {
            let min = test.iter().filter(|&&i| d.labels[i] == "1").count();
            assert_eq!((test.len() - min, min), (3, 1));
        }
    }

    #[test]
    fn kfold_rejects_small_class() {
        let d = toy(&["0", "0", "0", "1"]);
        assert!(matches!(
            stratified_kfold(&d, 2, 0),
            Err(Error::ClassTooSmall {
                count: 1,
                needed: 2,
                ..
            })
        ));
    }
}
