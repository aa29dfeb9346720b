//! Annual multivariate time-series ingestion, transforms, and descriptive
//! statistics.
//!
//! Data enter as CSV text with a leading integer `year` column and one
//! numeric column per variable. Gaps, duplicate years, and non-numeric
//! cells are load-time errors; there is no representable "missing" state.
//! Transforms (log, difference, lag) produce new datasets: differencing
//! and lagging shorten the shared year index from the front and every
//! member series is re-truncated so downstream regressions always see
//! equal-length columns.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum number of observations accepted at load time. Individual
/// statistical procedures enforce their own, stricter floors on top.
pub const MIN_OBSERVATIONS: usize = 10;

/// A transform applied to a series, recorded in its lineage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Transform {
    /// Natural logarithm. Only recorded when every pre-transform value was
    /// strictly positive.
    Log,
    /// d-th difference, d >= 1.
    Diff(usize),
    /// Lag by k periods, k >= 1.
    Lag(usize),
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::Log => write!(f, "log"),
            Transform::Diff(d) => write!(f, "diff-{d}"),
            Transform::Lag(k) => write!(f, "lag-{k}"),
        }
    }
}

/// One named annual series with a consecutive year index.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TimeSeries {
    pub name: String,
    pub start_year: i64,
    pub values: Vec<f64>,
    pub transform_lineage: Vec<Transform>,
}

impl TimeSeries {
    pub fn new(name: impl Into<String>, start_year: i64, values: Vec<f64>) -> Self {
        TimeSeries {
            name: name.into(),
            start_year,
            values,
            transform_lineage: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Year of the observation at `index`.
    pub fn year_at(&self, index: usize) -> i64 {
        self.start_year + index as i64
    }

    /// Natural log of every value. Errors on the first non-positive value,
    /// naming the offending year.
    pub fn log(&self) -> Result<TimeSeries> {
        for (i, &v) in self.values.iter().enumerate() {
            if v <= 0.0 {
                return Err(Error::NonPositiveLog {
                    variable: self.name.clone(),
                    value: v,
                    year: self.year_at(i),
                });
            }
        }
        let mut out = self.clone();
        out.values = self.values.iter().map(|v| v.ln()).collect();
        out.transform_lineage.push(Transform::Log);
        Ok(out)
    }

    /// d-th difference; the series shortens by `d` from the front.
    pub fn diff(&self, d: usize) -> Result<TimeSeries> {
        if d == 0 {
            return Err(Error::InvalidSpec("difference order must be >= 1".into()));
        }
        if d >= self.len() {
            return Err(Error::OrderTooLarge {
                order: d,
                length: self.len(),
            });
        }
        let mut values = self.values.clone();
        for _ in 0..d {
            values = values.windows(2).map(|w| w[1] - w[0]).collect();
        }
        Ok(TimeSeries {
            name: self.name.clone(),
            start_year: self.start_year + d as i64,
            values,
            transform_lineage: {
                let mut l = self.transform_lineage.clone();
                l.push(Transform::Diff(d));
                l
            },
        })
    }

    /// Lag by k periods: value reported for year t is the original value at
    /// t - k. The series shortens by `k` from the front.
    pub fn lag(&self, k: usize) -> Result<TimeSeries> {
        if k == 0 {
            return Err(Error::InvalidSpec("lag order must be >= 1".into()));
        }
        if k >= self.len() {
            return Err(Error::OrderTooLarge {
                order: k,
                length: self.len(),
            });
        }
        Ok(TimeSeries {
            name: self.name.clone(),
            start_year: self.start_year + k as i64,
            values: self.values[..self.len() - k].to_vec(),
            transform_lineage: {
                let mut l = self.transform_lineage.clone();
                l.push(Transform::Lag(k));
                l
            },
        })
    }
}

/// A collection of series sharing one consecutive year index.
///
/// Values are immutable after construction; all transforms return new
/// datasets.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dataset {
    variables: Vec<TimeSeries>,
    start_year: i64,
    len: usize,
}

impl Dataset {
    /// Assemble a dataset from series that must already share an identical
    /// year index.
    pub fn from_series(variables: Vec<TimeSeries>) -> Result<Dataset> {
        if variables.is_empty() {
            return Err(Error::InvalidSpec("dataset has no variables".into()));
        }
        let start_year = variables[0].start_year;
        let len = variables[0].len();
        if len == 0 {
            return Err(Error::TooShort { got: 0, needed: 1 });
        }
        let mut seen = std::collections::BTreeSet::new();
        for s in &variables {
            if s.start_year != start_year || s.len() != len {
                return Err(Error::InvalidSpec(format!(
                    "series `{}` is not aligned with the common year index",
                    s.name
                )));
            }
            if !seen.insert(s.name.clone()) {
                return Err(Error::InvalidSpec(format!(
                    "duplicate variable name `{}`",
                    s.name
                )));
            }
        }
        Ok(Dataset {
            variables,
            start_year,
            len,
        })
    }

    pub fn n_obs(&self) -> usize {
        self.len
    }

    pub fn start_year(&self) -> i64 {
        self.start_year
    }

    pub fn end_year(&self) -> i64 {
        self.start_year + self.len as i64 - 1
    }

    pub fn years(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len).map(move |i| self.start_year + i as i64)
    }

    pub fn variable_names(&self) -> Vec<&str> {
        self.variables.iter().map(|s| s.name.as_str()).collect()
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.variables
    }

    pub fn get(&self, name: &str) -> Result<&TimeSeries> {
        self.variables
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Apply a transform to one variable, re-aligning every series to the
    /// shared index that survives (diff/lag shrink it from the front).
    pub fn transform(&self, variable: &str, kind: Transform) -> Result<Dataset> {
        let target = self.get(variable)?;
        let transformed = match kind {
            Transform::Log => target.log()?,
            Transform::Diff(d) => target.diff(d)?,
            Transform::Lag(k) => target.lag(k)?,
        };
        let new_start = transformed.start_year;
        let new_len = transformed.len();
        let offset = (new_start - self.start_year) as usize;
        let variables = self
            .variables
            .iter()
            .map(|s| {
                if s.name == variable {
                    transformed.clone()
                } else {
                    let mut t = s.clone();
                    t.start_year = new_start;
                    t.values = s.values[offset..offset + new_len].to_vec();
                    t
                }
            })
            .collect();
        Dataset::from_series(variables)
    }

    /// Rename a variable in place (naming is pure configuration).
    pub fn rename(&self, old: &str, new: &str) -> Result<Dataset> {
        self.get(old)?;
        if old != new && self.variables.iter().any(|s| s.name == new) {
            return Err(Error::InvalidSpec(format!(
                "variable `{new}` already exists"
            )));
        }
        let variables = self
            .variables
            .iter()
            .map(|s| {
                let mut t = s.clone();
                if t.name == old {
                    t.name = new.to_string();
                }
                t
            })
            .collect();
        Dataset::from_series(variables)
    }

    /// Restrict to a subset of variables, preserving the given order.
    pub fn select(&self, names: &[&str]) -> Result<Dataset> {
        let variables = names
            .iter()
            .map(|n| self.get(n).cloned())
            .collect::<Result<Vec<_>>>()?;
        Dataset::from_series(variables)
    }
}

/// Regression specification: dependent variable, ordered regressors, and
/// deterministic terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub dependent: String,
    pub regressors: Vec<String>,
    pub intercept: bool,
    pub trend: bool,
}

impl ModelSpec {
    pub fn new(dependent: impl Into<String>, regressors: Vec<String>) -> Self {
        ModelSpec {
            dependent: dependent.into(),
            regressors,
            intercept: true,
            trend: false,
        }
    }

    /// Check that the dependent is not among the regressors and that every
    /// name resolves in `data`.
    pub fn validate(&self, data: &Dataset) -> Result<()> {
        if self.regressors.iter().any(|r| *r == self.dependent) {
            return Err(Error::InvalidSpec(format!(
                "dependent `{}` also appears among the regressors",
                self.dependent
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for r in &self.regressors {
            if !seen.insert(r) {
                return Err(Error::InvalidSpec(format!("duplicate regressor `{r}`")));
            }
        }
        data.get(&self.dependent)?;
        for r in &self.regressors {
            data.get(r)?;
        }
        Ok(())
    }
}

/// Per-variable descriptive statistics.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariableStats {
    pub variable: String,
    pub count: usize,
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Descriptive statistics for every variable in a dataset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryStats {
    pub per_variable: Vec<VariableStats>,
}

/// Count, mean, sample standard deviation, min, and max per variable.
pub fn summary_stats(data: &Dataset) -> SummaryStats {
    let per_variable = data
        .series()
        .iter()
        .map(|s| {
            let n = s.len();
            let mean = s.values.iter().sum::<f64>() / n as f64;
            let var = if n > 1 {
                s.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
            } else {
                0.0
            };
            let min = s.values.iter().cloned().fold(f64::INFINITY, f64::min);
            let max = s.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            VariableStats {
                variable: s.name.clone(),
                count: n,
                mean,
                std_dev: var.sqrt(),
                min,
                max,
            }
        })
        .collect();
    SummaryStats { per_variable }
}

/// Column-to-variable mapping used at load time. Keys are CSV column
/// headers, values are the variable names the dataset will carry.
pub type Schema = BTreeMap<String, String>;

/// Parse CSV text into a dataset.
///
/// The first column must be `year` (consecutive integers, no gaps or
/// duplicates); every mapped column must be present and fully numeric.
/// An empty schema maps every non-year column onto itself.
pub fn load_dataset(source: &str, schema: &Schema) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());

    let headers: Vec<String> = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .map(|h| h.to_string())
        .collect();

    if headers.first().map(String::as_str) != Some("year") {
        return Err(Error::Parse(
            "first column must be `year`".to_string(),
        ));
    }
    if headers.len() < 2 {
        return Err(Error::Parse("no data columns after `year`".to_string()));
    }

    // Resolve which columns to keep and under which variable names.
    let mut columns: Vec<(usize, String)> = Vec::new();
    if schema.is_empty() {
        for (i, h) in headers.iter().enumerate().skip(1) {
            columns.push((i, h.clone()));
        }
    } else {
        for (col, var) in schema {
            let idx = headers
                .iter()
                .position(|h| h == col)
                .ok_or_else(|| Error::MissingColumn(col.clone()))?;
            if idx == 0 {
                return Err(Error::InvalidSpec(
                    "the `year` column cannot be mapped to a variable".into(),
                ));
            }
            columns.push((idx, var.clone()));
        }
    }

    let mut years: Vec<i64> = Vec::new();
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); columns.len()];

    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(e.to_string()))?;
        let year_field = record
            .get(0)
            .ok_or_else(|| Error::Parse("empty record".into()))?;
        let year: i64 = year_field
            .parse()
            .map_err(|_| Error::Parse(format!("invalid year `{year_field}`")))?;
        years.push(year);
        for (slot, (idx, var)) in columns.iter().enumerate() {
            let field = record
                .get(*idx)
                .ok_or_else(|| Error::MissingColumn(var.clone()))?;
            let value: f64 = field.parse().map_err(|_| Error::NonNumericCell {
                column: var.clone(),
                year,
                value: field.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NonNumericCell {
                    column: var.clone(),
                    year,
                    value: field.to_string(),
                });
            }
            data[slot].push(value);
        }
    }

    if years.len() < MIN_OBSERVATIONS {
        return Err(Error::TooShort {
            got: years.len(),
            needed: MIN_OBSERVATIONS,
        });
    }

    let start_year = years[0];
    for (i, &y) in years.iter().enumerate() {
        let expected = start_year + i as i64;
        if y == expected {
            continue;
        }
        if i > 0 && y == years[i - 1] {
            return Err(Error::DuplicateYear(y));
        }
        return Err(Error::YearGap(expected));
    }

    let variables = columns
        .into_iter()
        .zip(data)
        .map(|((_, var), values)| TimeSeries::new(var, start_year, values))
        .collect();
    Dataset::from_series(variables)
}

/// Serialize a dataset back to the CSV layout accepted by [`load_dataset`].
/// Values are written with shortest round-trip precision, so a reload
/// reproduces them exactly.
pub fn to_csv(data: &Dataset) -> String {
    let mut out = String::from("year");
    for name in data.variable_names() {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for i in 0..data.n_obs() {
        out.push_str(&(data.start_year() + i as i64).to_string());
        for s in data.series() {
            out.push(',');
            out.push_str(&format!("{}", s.values[i]));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_csv(n: usize) -> String {
        let mut s = String::from("year,CO2,GDP\n");
        for i in 0..n {
            s.push_str(&format!("{},{},{}\n", 2000 + i, 10 + i, 20 + 2 * i));
        }
        s
    }

    #[test]
    fn load_rejects_too_short() {
        let err = load_dataset(&toy_csv(3), &Schema::new()).unwrap_err();
        assert!(matches!(err, Error::TooShort { got: 3, needed: 10 }));
    }

    #[test]
    fn load_full_table() {
        let mut csv = String::from("year,CO2,GDP,AI,ENU,FDI,URB\n");
        for i in 0..32 {
            csv.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                1990 + i,
                5000.0 + i as f64,
                30000.0 + 100.0 * i as f64,
                100.0 + i as f64,
                7000.0 - i as f64,
                200.0 + i as f64,
                2.0e8 + 1.0e6 * i as f64,
            ));
        }
        let d = load_dataset(&csv, &Schema::new()).unwrap();
        assert_eq!(d.n_obs(), 32);
        assert_eq!(d.variable_names().len(), 6);
        assert_eq!(d.start_year(), 1990);
        assert_eq!(d.end_year(), 2021);
    }

    #[test]
    fn load_detects_year_gap() {
        let mut csv = String::from("year,x\n");
        for y in 1990..=2021 {
            if y == 2005 {
                continue;
            }
            csv.push_str(&format!("{y},1.0\n"));
        }
        let err = load_dataset(&csv, &Schema::new()).unwrap_err();
        assert!(matches!(err, Error::YearGap(2005)));
    }

    #[test]
    fn load_detects_duplicate_year() {
        let mut csv = String::from("year,x\n");
        for y in 2000..2012 {
            csv.push_str(&format!("{y},1.0\n"));
            if y == 2005 {
                csv.push_str(&format!("{y},2.0\n"));
            }
        }
        let err = load_dataset(&csv, &Schema::new()).unwrap_err();
        assert!(matches!(err, Error::DuplicateYear(2005)));
    }

    #[test]
    fn load_rejects_non_numeric_cell() {
        let mut csv = toy_csv(12);
        csv.push_str("2012,abc,3.0\n");
        let err = load_dataset(&csv, &Schema::new()).unwrap_err();
        match err {
            Error::NonNumericCell { column, year, .. } => {
                assert_eq!(column, "CO2");
                assert_eq!(year, 2012);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn schema_maps_and_detects_missing_column() {
        let mut schema = Schema::new();
        schema.insert("CO2".into(), "LCO2".into());
        let d = load_dataset(&toy_csv(12), &schema).unwrap();
        assert_eq!(d.variable_names(), vec!["LCO2"]);

        let mut bad = Schema::new();
        bad.insert("NOPE".into(), "x".into());
        let err = load_dataset(&toy_csv(12), &bad).unwrap_err();
        assert!(matches!(err, Error::MissingColumn(c) if c == "NOPE"));
    }

    #[test]
    fn log_of_exact_powers() {
        let e = std::f64::consts::E;
        let s = TimeSeries::new("x", 2000, vec![1.0, e, e * e]);
        let t = s.log().unwrap();
        assert!((t.values[0] - 0.0).abs() < 1e-15);
        assert!((t.values[1] - 1.0).abs() < 1e-15);
        assert!((t.values[2] - 2.0).abs() < 1e-14);
        assert_eq!(t.transform_lineage, vec![Transform::Log]);
    }

    #[test]
    fn log_rejects_non_positive_naming_year() {
        let s = TimeSeries::new("x", 2000, vec![2.0, 0.0, 5.0]);
        let err = s.log().unwrap_err();
        match err {
            Error::NonPositiveLog { year, .. } => assert_eq!(year, 2001),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn first_differences() {
        let s = TimeSeries::new("x", 2000, vec![1.0, 3.0, 6.0, 10.0]);
        let d = s.diff(1).unwrap();
        assert_eq!(d.values, vec![2.0, 3.0, 4.0]);
        assert_eq!(d.start_year, 2001);
    }

    #[test]
    fn repeated_diff_equals_higher_order_diff() {
        let s = TimeSeries::new("x", 2000, vec![1.0, 4.0, 9.0, 16.0, 25.0, 36.0]);
        let twice = s.diff(1).unwrap().diff(1).unwrap();
        let once = s.diff(2).unwrap();
        assert_eq!(twice.values, once.values);
        assert_eq!(twice.start_year, once.start_year);
    }

    #[test]
    fn transform_realigns_all_series() {
        let d = load_dataset(&toy_csv(12), &Schema::new()).unwrap();
        let t = d.transform("CO2", Transform::Diff(1)).unwrap();
        assert_eq!(t.n_obs(), 11);
        assert_eq!(t.start_year(), 2001);
        // untouched variable trimmed from the front
        assert_eq!(t.get("GDP").unwrap().values[0], 22.0);
    }

    #[test]
    fn summary_of_constant_and_simple_series() {
        let d = Dataset::from_series(vec![
            TimeSeries::new("c", 2000, vec![5.0, 5.0, 5.0]),
            TimeSeries::new("x", 2000, vec![1.0, 2.0, 3.0]),
        ])
        .unwrap();
        let s = summary_stats(&d);
        let c = &s.per_variable[0];
        assert_eq!((c.mean, c.std_dev, c.min, c.max), (5.0, 0.0, 5.0, 5.0));
        let x = &s.per_variable[1];
        assert_eq!(x.count, 3);
        assert_eq!(x.mean, 2.0);
        assert!((x.std_dev - 1.0).abs() < 1e-15);
        assert_eq!((x.min, x.max), (1.0, 3.0));
    }

    #[test]
    fn summary_matches_two_pass_oracle() {
        // Fixed 32-point pseudo-random series (linear congruential, frozen).
        let mut state: u64 = 0x2545F4914F6CDD1D;
        let mut values = Vec::with_capacity(32);
        for _ in 0..32 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            values.push((state >> 11) as f64 / (1u64 << 53) as f64 * 10.0 - 5.0);
        }
        let d = Dataset::from_series(vec![TimeSeries::new("x", 1990, values.clone())]).unwrap();
        let s = &summary_stats(&d).per_variable[0];

        // Independent brute-force pass over the definitions.
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let mut ss = 0.0;
        for v in &values {
            ss += (v - mean) * (v - mean);
        }
        let std = (ss / (n - 1) as f64).sqrt();
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &v in &values {
            min = min.min(v);
            max = max.max(v);
        }
        assert_eq!(s.count, n);
        assert!((s.mean - mean).abs() < 1e-14);
        assert!((s.std_dev - std).abs() < 1e-14);
        assert_eq!(s.min, min);
        assert_eq!(s.max, max);
    }

    #[test]
    fn model_spec_validation() {
        let d = load_dataset(&toy_csv(12), &Schema::new()).unwrap();
        let ok = ModelSpec::new("CO2", vec!["GDP".into()]);
        ok.validate(&d).unwrap();
        let bad = ModelSpec::new("CO2", vec!["CO2".into()]);
        assert!(bad.validate(&d).is_err());
        let missing = ModelSpec::new("CO2", vec!["XYZ".into()]);
        assert!(missing.validate(&d).is_err());
    }

    #[test]
    fn csv_round_trip_is_identity() {
        let d = load_dataset(&toy_csv(15), &Schema::new()).unwrap();
        let text = to_csv(&d);
        let back = load_dataset(&text, &Schema::new()).unwrap();
        assert_eq!(back.start_year(), d.start_year());
        for (a, b) in d.series().iter().zip(back.series()) {
            assert_eq!(a.name, b.name);
            assert_eq!(a.values, b.values);
        }
    }
}
