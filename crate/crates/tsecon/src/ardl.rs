//! ARDL order selection, the Pesaran-Shin-Smith bounds F-test for a levels
//! relationship, long-run coefficient extraction, and the two-step error
//! correction model.
//!
//! The workhorse regression is the conditional error-correction form of an
//! ARDL(p, q1..qk):
//!
//! ```text
//! Δy_t = c [+ bt] + β_y y_{t-1} + Σ_j β_j x_{j,t-1}
//!        + Σ_{i=1..p-1} γ_i Δy_{t-i}
//!        + Σ_j Σ_{l=0..q_j-1} δ_{jl} Δx_{j,t-l} + ε_t
//! ```
//!
//! A regressor with order q_j = 0 enters only through its contemporaneous
//! level x_{j,t} (no difference terms), which keeps the representation an
//! exact reparametrization of the levels ARDL. The bounds test is the F
//! statistic on the joint nullity of all k+1 levels coefficients; the
//! long-run coefficient of regressor j is -β_j/β_y with delta-method
//! standard errors.

pub mod tables {
    //! Bounds critical values.
    //!
    //! `GENERAL_CASE3` holds the Pesaran-Shin-Smith (2001) Table CI(iii)
    //! asymptotic bounds for the unrestricted-intercept/no-trend case,
    //! k = 0..10. `PAPER_K5` is an alternative k = 5 set in circulation for
    //! small samples; it is selectable so published decision tables using it
    //! can be reproduced bit-exactly. The two sets disagree, which is why
    //! both ship and every result is labeled with the set it used.

    /// Significance levels of the bounds rows, in the order stored.
    pub const LEVELS: [f64; 4] = [0.10, 0.05, 0.025, 0.01];

    /// Rows: k = 0..10. Columns: (I0, I1) at 10%, 5%, 2.5%, 1%.
    pub const GENERAL_CASE3: [[(f64, f64); 4]; 11] = [
        [(6.58, 6.58), (8.21, 8.21), (9.80, 9.80), (11.79, 11.79)],
        [(4.04, 4.78), (4.94, 5.73), (5.77, 6.68), (6.84, 7.84)],
        [(3.17, 4.14), (3.79, 4.85), (4.41, 5.52), (5.15, 6.36)],
        [(2.72, 3.77), (3.23, 4.35), (3.69, 4.89), (4.29, 5.61)],
        [(2.45, 3.52), (2.86, 4.01), (3.25, 4.49), (3.74, 5.06)],
        [(2.26, 3.35), (2.62, 3.79), (2.96, 4.18), (3.41, 4.68)],
        [(2.12, 3.23), (2.45, 3.61), (2.75, 3.99), (3.15, 4.43)],
        [(2.03, 3.13), (2.32, 3.50), (2.60, 3.84), (2.96, 4.26)],
        [(1.95, 3.06), (2.22, 3.39), (2.48, 3.70), (2.79, 4.10)],
        [(1.88, 2.99), (2.14, 3.30), (2.37, 3.60), (2.65, 3.97)],
        [(1.83, 2.94), (2.06, 3.24), (2.28, 3.50), (2.54, 3.86)],
    ];

    /// Alternative k = 5 bounds at 10%, 5%, 2.5%, 1%.
    pub const PAPER_K5: [(f64, f64); 4] = [(2.07, 3.00), (2.43, 3.27), (2.81, 3.84), (3.10, 4.20)];
}

use serde::Serialize;

use crate::dataio::{Dataset, ModelSpec};
use crate::error::{Error, Result};
use crate::linreg::{self, DesignMatrix, RegressionFit};

/// Lag structure of an ARDL(p, q1..qk): p >= 1 lags of the dependent,
/// q_j >= 0 per regressor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArdlOrder {
    pub p: usize,
    pub q: Vec<usize>,
}

impl ArdlOrder {
    pub fn new(p: usize, q: Vec<usize>) -> Self {
        ArdlOrder { p, q }
    }

    pub fn total_lags(&self) -> usize {
        self.p + self.q.iter().sum::<usize>()
    }

    fn max_depth(&self) -> usize {
        self.p.max(self.q.iter().copied().max().unwrap_or(0)).max(1)
    }
}

impl std::fmt::Display for ArdlOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ARDL({}", self.p)?;
        for q in &self.q {
            write!(f, ",{q}")?;
        }
        write!(f, ")")
    }
}

/// Information criterion used for order selection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Criterion {
    Aic,
    Bic,
    Hq,
}

impl Criterion {
    fn of(self, fit: &RegressionFit) -> f64 {
        match self {
            Criterion::Aic => fit.aic,
            Criterion::Bic => fit.bic,
            Criterion::Hq => fit.hq,
        }
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(Criterion::Aic),
            "bic" => Ok(Criterion::Bic),
            "hq" => Ok(Criterion::Hq),
            other => Err(Error::InvalidSpec(format!("unknown criterion `{other}`"))),
        }
    }
}

/// Fitted conditional error-correction regression.
#[derive(Debug, Clone, Serialize)]
pub struct ArdlFit {
    pub order: ArdlOrder,
    pub dependent: String,
    pub regressors: Vec<String>,
    pub levels_fit: RegressionFit,
    /// Names of the k+1 levels columns inside `levels_fit` (dependent first).
    pub levels_names: Vec<String>,
    pub effective_sample: usize,
    /// The design behind `levels_fit`; restricted refits and residual
    /// diagnostics run against it.
    #[serde(skip)]
    design: DesignMatrix,
}

impl ArdlFit {
    pub fn design(&self) -> &DesignMatrix {
        &self.design
    }
}

/// Which embedded bounds table to test against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundsTable {
    General,
    PaperTable4,
}

impl std::str::FromStr for BoundsTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "general" => Ok(BoundsTable::General),
            "paper-table4" => Ok(BoundsTable::PaperTable4),
            other => Err(Error::InvalidSpec(format!("unknown bounds table `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundsDecision {
    Cointegrated,
    Inconclusive,
    NotCointegrated,
}

impl std::fmt::Display for BoundsDecision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundsDecision::Cointegrated => write!(f, "cointegrated"),
            BoundsDecision::Inconclusive => write!(f, "inconclusive"),
            BoundsDecision::NotCointegrated => write!(f, "not cointegrated"),
        }
    }
}

/// One significance row of the bounds test.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsRow {
    pub significance: f64,
    pub i0_bound: f64,
    pub i1_bound: f64,
    pub decision: BoundsDecision,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsResult {
    pub f_statistic: f64,
    pub k: usize,
    /// Deterministic-term case of the test regression.
    pub case: String,
    pub table: BoundsTable,
    pub rows: Vec<BoundsRow>,
}

impl BoundsResult {
    pub fn decision_at(&self, significance: f64) -> Option<BoundsDecision> {
        self.rows
            .iter()
            .find(|r| (r.significance - significance).abs() < 1e-12)
            .map(|r| r.decision)
    }
}

/// Long-run coefficient with delta-method inference.
#[derive(Debug, Clone, Serialize)]
pub struct LongRunCoefficient {
    pub name: String,
    pub coefficient: f64,
    pub standard_error: f64,
    pub t_statistic: f64,
    pub p_value: f64,
}

/// Two-step error-correction fit.
#[derive(Debug, Clone, Serialize)]
pub struct EcmFit {
    /// Static levels regression of step one (the equilibrium relationship).
    pub long_run: RegressionFit,
    /// Short-run regression of step two: differences plus the lagged
    /// equilibrium error.
    pub short_run: RegressionFit,
    pub ect_coefficient: f64,
    pub ect_standard_error: f64,
    pub ect_t_statistic: f64,
    pub ect_p_value: f64,
    /// True iff the ECT coefficient lies in (-2, 0).
    pub convergent: bool,
    pub effective_sample: usize,
}

fn level_name(var: &str) -> String {
    format!("{var}(-1)")
}

fn diff_name(var: &str, lag: usize) -> String {
    if lag == 0 {
        format!("D({var})")
    } else {
        format!("D({var}(-{lag}))")
    }
}

/// Build the conditional error-correction design over rows t = t0..n-1.
/// `t0` must be at least the order's own maximum depth; order selection
/// passes the grid-wide depth so every candidate shares one sample.
fn build_cec_design(
    data: &Dataset,
    spec: &ModelSpec,
    order: &ArdlOrder,
    t0: usize,
) -> Result<DesignMatrix> {
    let n = data.n_obs();
    if t0 < order.max_depth() {
        return Err(Error::InvalidSpec(
            "trim depth smaller than the order's maximum lag".into(),
        ));
    }
    if t0 >= n {
        return Err(Error::TooShort { got: n, needed: t0 + 1 });
    }
    let y = &data.get(&spec.dependent)?.values;
    let dy: Vec<f64> = (t0..n).map(|t| y[t] - y[t - 1]).collect();

    let mut names = Vec::new();
    let mut cols: Vec<Vec<f64>> = Vec::new();

    // levels block: dependent first, then regressors
    names.push(level_name(&spec.dependent));
    cols.push((t0..n).map(|t| y[t - 1]).collect());
    for (j, reg) in spec.regressors.iter().enumerate() {
        let x = &data.get(reg)?.values;
        if order.q[j] == 0 {
            names.push(reg.clone());
            cols.push((t0..n).map(|t| x[t]).collect());
        } else {
            names.push(level_name(reg));
            cols.push((t0..n).map(|t| x[t - 1]).collect());
        }
    }

    // short-run dynamics
    for i in 1..order.p {
        names.push(diff_name(&spec.dependent, i));
        cols.push((t0..n).map(|t| y[t - i] - y[t - i - 1]).collect());
    }
    for (j, reg) in spec.regressors.iter().enumerate() {
        let x = &data.get(reg)?.values;
        for l in 0..order.q[j] {
            names.push(diff_name(reg, l));
            cols.push((t0..n).map(|t| x[t - l] - x[t - l - 1]).collect());
        }
    }

    DesignMatrix::with_deterministics(names, cols, dy, spec.intercept, spec.trend)
}

/// Fit the conditional error-correction regression for a fixed order.
pub fn fit_ardl(data: &Dataset, spec: &ModelSpec, order: &ArdlOrder) -> Result<ArdlFit> {
    spec.validate(data)?;
    if order.p == 0 {
        return Err(Error::InvalidSpec("ARDL requires p >= 1".into()));
    }
    if order.q.len() != spec.regressors.len() {
        return Err(Error::InvalidSpec(format!(
            "order has {} q entries for {} regressors",
            order.q.len(),
            spec.regressors.len()
        )));
    }
    let t0 = order.max_depth();
    let design = build_cec_design(data, spec, order, t0)?;
    let fit = linreg::ols_fit(&design)?;
    let mut levels_names = vec![level_name(&spec.dependent)];
    for (j, reg) in spec.regressors.iter().enumerate() {
        levels_names.push(if order.q[j] == 0 {
            reg.clone()
        } else {
            level_name(reg)
        });
    }
    let effective_sample = data.n_obs() - t0;
    Ok(ArdlFit {
        order: order.clone(),
        dependent: spec.dependent.clone(),
        regressors: spec.regressors.clone(),
        levels_fit: fit,
        levels_names,
        effective_sample,
        design,
    })
}

/// Pick the order minimizing `criterion` over p in [1, max_p] and
/// q_j in [0, max_q], all candidates evaluated on the common sample trimmed
/// at the grid-wide maximum lag. Ties break toward fewer total lags, then
/// lexicographically smaller (p, q).
pub fn select_order(
    data: &Dataset,
    spec: &ModelSpec,
    max_p: usize,
    max_q: usize,
    criterion: Criterion,
) -> Result<ArdlOrder> {
    spec.validate(data)?;
    if max_p == 0 {
        return Err(Error::InvalidSpec("max_p must be >= 1".into()));
    }
    let k = spec.regressors.len();
    let t0 = max_p.max(max_q).max(1);

    let mut best: Option<(f64, usize, ArdlOrder)> = None;
    let mut qs = vec![0usize; k];
    loop {
        for p in 1..=max_p {
            let order = ArdlOrder::new(p, qs.clone());
            if let Ok(design) = build_cec_design(data, spec, &order, t0) {
                if let Ok(fit) = linreg::ols_fit(&design) {
                    let value = criterion.of(&fit);
                    let candidate = (value, order.total_lags(), order);
                    let better = match &best {
                        None => true,
                        Some((bv, bt, bo)) => {
                            (value, candidate.1, &candidate.2.p, &candidate.2.q)
                                < (*bv, *bt, &bo.p, &bo.q)
                        }
                    };
                    if better {
                        best = Some(candidate);
                    }
                }
            }
        }
        // advance the q vector odometer-style
        let mut pos = k;
        while pos > 0 {
            if qs[pos - 1] < max_q {
                qs[pos - 1] += 1;
                break;
            }
            qs[pos - 1] = 0;
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
    }

    best.map(|(_, _, order)| order).ok_or_else(|| {
        Error::InvalidSpec(
            "no feasible ARDL order: every candidate was rank deficient or df-infeasible".into(),
        )
    })
}

/// Decision rows for a given F statistic against a set of (I0, I1) bounds.
fn bounds_rows(f_statistic: f64, bounds: &[(f64, f64)]) -> Vec<BoundsRow> {
    tables::LEVELS
        .iter()
        .zip(bounds)
        .map(|(&significance, &(i0, i1))| BoundsRow {
            significance,
            i0_bound: i0,
            i1_bound: i1,
            decision: if f_statistic > i1 {
                BoundsDecision::Cointegrated
            } else if f_statistic < i0 {
                BoundsDecision::NotCointegrated
            } else {
                BoundsDecision::Inconclusive
            },
        })
        .collect()
}

/// Bounds F-test on the joint nullity of every levels coefficient,
/// compared against the embedded (k, case) bounds.
pub fn bounds_f_test(fit: &ArdlFit, table: BoundsTable) -> Result<BoundsResult> {
    let k = fit.regressors.len();
    let unrestricted = &fit.levels_fit;

    // case label: bounds tables shipped for unrestricted intercept, no trend
    let has_const = unrestricted.position("const").is_some();
    let has_trend = unrestricted.position("trend").is_some();
    if !has_const || has_trend {
        return Err(Error::InvalidSpec(
            "bounds critical values are embedded for the unrestricted-intercept, no-trend case only"
                .into(),
        ));
    }

    let bounds: Vec<(f64, f64)> = match table {
        BoundsTable::PaperTable4 => {
            if k != 5 {
                return Err(Error::InvalidSpec(format!(
                    "the paper-table4 bounds set is defined for k = 5, got k = {k}"
                )));
            }
            tables::PAPER_K5.to_vec()
        }
        BoundsTable::General => {
            if k >= tables::GENERAL_CASE3.len() {
                return Err(Error::InvalidSpec(format!(
                    "no embedded bounds for k = {k}"
                )));
            }
            tables::GENERAL_CASE3[k].to_vec()
        }
    };

    let f_statistic = levels_f_statistic(fit)?;
    let rows = bounds_rows(f_statistic, &bounds);

    Ok(BoundsResult {
        f_statistic,
        k,
        case: "unrestricted intercept, no trend".into(),
        table,
        rows,
    })
}

/// F statistic for the joint restriction that all levels coefficients are
/// zero, computed from restricted and unrestricted residual sums of squares.
fn levels_f_statistic(fit: &ArdlFit) -> Result<f64> {
    let unrestricted = &fit.levels_fit;
    let m = fit.levels_names.len();
    let drop: Vec<&str> = fit.levels_names.iter().map(String::as_str).collect();

    let restricted_design = fit.design().drop_columns(&drop)?;
    let restricted = linreg::ols_fit(&restricted_design)?;

    let df_u = unrestricted.df_resid as f64;
    if unrestricted.rss <= 0.0 {
        return Err(Error::Degenerate("perfect unrestricted fit".into()));
    }
    Ok(((restricted.rss - unrestricted.rss) / m as f64) / (unrestricted.rss / df_u))
}

/// Long-run coefficients -beta_j / beta_y for every regressor and the
/// intercept, with delta-method standard errors from the levels-fit
/// covariance.
pub fn long_run_coefficients(fit: &ArdlFit) -> Result<Vec<LongRunCoefficient>> {
    let reg_fit = &fit.levels_fit;
    let dep_name = &fit.levels_names[0];
    let y_pos = reg_fit
        .position(dep_name)
        .ok_or_else(|| Error::InvalidSpec("levels fit lacks the dependent level".into()))?;
    let beta_y = reg_fit.coefficients[y_pos];
    if beta_y.abs() < 1e-8 {
        return Err(Error::DegenerateLongRun(beta_y.abs()));
    }
    let cov = reg_fit.covariance();

    let mut out = Vec::new();
    let mut targets: Vec<(String, String)> = fit
        .regressors
        .iter()
        .zip(fit.levels_names.iter().skip(1))
        .map(|(reg, lvl)| (reg.clone(), lvl.clone()))
        .collect();
    if reg_fit.position("const").is_some() {
        targets.push(("C".into(), "const".into()));
    }

    for (display, col) in targets {
        let j_pos = reg_fit
            .position(&col)
            .ok_or_else(|| Error::InvalidSpec(format!("levels fit lacks `{col}`")))?;
        let beta_j = reg_fit.coefficients[j_pos];
        let theta = -beta_j / beta_y;
        // gradient of theta wrt (beta_j, beta_y)
        let g_j = -1.0 / beta_y;
        let g_y = beta_j / (beta_y * beta_y);
        let var = g_j * g_j * cov[(j_pos, j_pos)]
            + g_y * g_y * cov[(y_pos, y_pos)]
            + 2.0 * g_j * g_y * cov[(j_pos, y_pos)];
        let se = var.max(0.0).sqrt();
        let t = if se > 0.0 { theta / se } else { f64::INFINITY };
        out.push(LongRunCoefficient {
            name: display,
            coefficient: theta,
            standard_error: se,
            t_statistic: t,
            p_value: linreg::t_p_value(t, reg_fit.df_resid),
        });
    }
    Ok(out)
}

/// Conventional two-step error-correction model: a static levels regression
/// supplies the lagged equilibrium error, then the short-run regression of
/// Δy on lagged Δy, current and lagged Δx, and ECT_{t-1}.
pub fn fit_ecm(data: &Dataset, spec: &ModelSpec, order: &ArdlOrder) -> Result<EcmFit> {
    spec.validate(data)?;
    if order.p == 0 {
        return Err(Error::InvalidSpec("ARDL requires p >= 1".into()));
    }
    if order.q.len() != spec.regressors.len() {
        return Err(Error::InvalidSpec(format!(
            "order has {} q entries for {} regressors",
            order.q.len(),
            spec.regressors.len()
        )));
    }
    let n = data.n_obs();
    let y = &data.get(&spec.dependent)?.values;

    // step one: static levels regression
    let mut lvl_names = Vec::new();
    let mut lvl_cols = Vec::new();
    for reg in &spec.regressors {
        lvl_names.push(reg.clone());
        lvl_cols.push(data.get(reg)?.values.clone());
    }
    let lvl_design = DesignMatrix::with_deterministics(
        lvl_names,
        lvl_cols,
        y.clone(),
        spec.intercept,
        spec.trend,
    )?;
    let long_run = linreg::ols_fit(&lvl_design)?;
    let ect = &long_run.residuals;

    // step two: short-run dynamics; Δx always enters contemporaneously
    let t0 = order.max_depth();
    let dy: Vec<f64> = (t0..n).map(|t| y[t] - y[t - 1]).collect();
    let mut names = Vec::new();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for i in 1..order.p {
        names.push(diff_name(&spec.dependent, i));
        cols.push((t0..n).map(|t| y[t - i] - y[t - i - 1]).collect());
    }
    for (j, reg) in spec.regressors.iter().enumerate() {
        let x = &data.get(reg)?.values;
        for l in 0..order.q[j].max(1) {
            names.push(diff_name(reg, l));
            cols.push((t0..n).map(|t| x[t - l] - x[t - l - 1]).collect());
        }
    }
    names.push("CointEq(-1)".into());
    cols.push((t0..n).map(|t| ect[t - 1]).collect());

    let design = DesignMatrix::with_deterministics(names, cols, dy, spec.intercept, false)?;
    let short_run = linreg::ols_fit(&design)?;
    let pos = short_run.position("CointEq(-1)").expect("ect column");
    let ect_coefficient = short_run.coefficients[pos];
    let convergent = ect_coefficient > -2.0 && ect_coefficient < 0.0;

    Ok(EcmFit {
        ect_coefficient,
        ect_standard_error: short_run.standard_errors[pos],
        ect_t_statistic: short_run.t_statistics[pos],
        ect_p_value: short_run.p_values[pos],
        convergent,
        effective_sample: n - t0,
        long_run,
        short_run,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataio::TimeSeries;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn dataset(pairs: Vec<(&str, Vec<f64>)>) -> Dataset {
        Dataset::from_series(
            pairs
                .into_iter()
                .map(|(name, values)| TimeSeries::new(name, 2000, values))
                .collect(),
        )
        .unwrap()
    }

    fn noiseless_ardl_1_0(n: usize) -> Dataset {
        // y_t = 2 + 0.5 y_{t-1} + 1.0 x_t, exactly
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let mut y = vec![4.0 + x[0]];
        for t in 1..n {
            y.push(2.0 + 0.5 * y[t - 1] + x[t]);
        }
        dataset(vec![("y", y), ("x", x)])
    }

    #[test]
    fn paper_decision_rows() {
        let rows = bounds_rows(5.3421, &tables::PAPER_K5);
        assert!(rows.iter().all(|r| r.decision == BoundsDecision::Cointegrated));
        // cointegrated at 1% because 5.3421 > 4.20
        assert_eq!(rows[3].significance, 0.01);
        assert_eq!(rows[3].i1_bound, 4.20);

        let rows = bounds_rows(1.0, &tables::PAPER_K5);
        assert!(rows
            .iter()
            .all(|r| r.decision == BoundsDecision::NotCointegrated));

        let rows = bounds_rows(3.10, &tables::PAPER_K5);
        assert_eq!(rows[1].significance, 0.05);
        assert_eq!((rows[1].i0_bound, rows[1].i1_bound), (2.43, 3.27));
        assert_eq!(rows[1].decision, BoundsDecision::Inconclusive);
    }

    #[test]
    fn bounds_are_ordered() {
        for (k, rows) in tables::GENERAL_CASE3.iter().enumerate() {
            for (i0, i1) in rows {
                if k == 0 {
                    assert!(i0 <= i1);
                } else {
                    assert!(i0 < i1, "k={k}");
                }
            }
        }
        for (i0, i1) in &tables::PAPER_K5 {
            assert!(i0 < i1);
        }
    }

    #[test]
    fn long_run_identity_on_noiseless_ardl() {
        let data = noiseless_ardl_1_0(80);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let fit = fit_ardl(&data, &spec, &ArdlOrder::new(1, vec![0])).unwrap();
        // Δy = 2 - 0.5 y_{t-1} + x_t exactly
        let lr = long_run_coefficients(&fit).unwrap();
        let x_lr = lr.iter().find(|c| c.name == "x").unwrap();
        assert!(
            (x_lr.coefficient - 2.0).abs() < 1e-12,
            "long-run {}",
            x_lr.coefficient
        );
        let c_lr = lr.iter().find(|c| c.name == "C").unwrap();
        assert!((c_lr.coefficient - 4.0).abs() < 1e-9);
    }

    #[test]
    fn singleton_grid_is_unconditional() {
        let data = noiseless_ardl_1_0(60);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let order = select_order(&data, &spec, 1, 0, Criterion::Aic).unwrap();
        assert_eq!(order, ArdlOrder::new(1, vec![0]));
    }

    #[test]
    fn equal_criterion_breaks_toward_fewer_lags() {
        // y_t = t makes Δy constant, so every feasible candidate fits
        // perfectly and ties at -inf; the smallest total lag order wins.
        let n = 40;
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let y: Vec<f64> = (0..n).map(|t| t as f64).collect();
        let x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let data = dataset(vec![("y", y), ("x", x)]);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let order = select_order(&data, &spec, 1, 3, Criterion::Aic).unwrap();
        assert_eq!(order, ArdlOrder::new(1, vec![0]));
    }

    #[test]
    fn selected_order_refits_identically() {
        let data = noiseless_ardl_1_0(60);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let order = select_order(&data, &spec, 1, 0, Criterion::Aic).unwrap();
        let a = fit_ardl(&data, &spec, &order).unwrap();
        let b = fit_ardl(&data, &spec, &ArdlOrder::new(1, vec![0])).unwrap();
        assert_eq!(a.levels_fit.coefficients, b.levels_fit.coefficients);
    }

    #[test]
    fn levels_fit_matches_hand_assembled_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let n = 30;
        let x: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let mut y = vec![0.0];
        for t in 1..n {
            let e: f64 = rng.sample(StandardNormal);
            y.push(1.0 + 0.6 * y[t - 1] + 0.8 * x[t] + 0.5 * e);
        }
        let data = dataset(vec![("y", y.clone()), ("x", x.clone())]);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let fit = fit_ardl(&data, &spec, &ArdlOrder::new(1, vec![1])).unwrap();

        // hand-built conditional EC design for ARDL(1,1): rows t = 1..n-1
        let ones = vec![1.0; n - 1];
        let y_lag: Vec<f64> = (1..n).map(|t| y[t - 1]).collect();
        let x_lag: Vec<f64> = (1..n).map(|t| x[t - 1]).collect();
        let dx: Vec<f64> = (1..n).map(|t| x[t] - x[t - 1]).collect();
        let dy: Vec<f64> = (1..n).map(|t| y[t] - y[t - 1]).collect();
        let (beta, _, _) = crate::linreg::tests::normal_equations_oracle(
            &[ones, y_lag, x_lag, dx],
            &dy,
        );
        let names = ["const", "y(-1)", "x(-1)", "D(x)"];
        for (name, expected) in names.iter().zip(&beta) {
            let got = fit.levels_fit.coefficient(name).unwrap();
            assert!(
                (got - expected).abs() < 1e-9 * expected.abs().max(1.0),
                "{name}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn f_statistic_invariant_to_regressor_rescaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let n = 80;
        let mut x = vec![0.0];
        let mut y = vec![0.0];
        for t in 1..n {
            x.push(x[t - 1] + rng.sample::<f64, _>(StandardNormal));
            y.push(2.0 * x[t] + rng.sample::<f64, _>(StandardNormal));
        }
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let order = ArdlOrder::new(1, vec![1]);

        let data = dataset(vec![("y", y.clone()), ("x", x.clone())]);
        let f1 = bounds_f_test(&fit_ardl(&data, &spec, &order).unwrap(), BoundsTable::General)
            .unwrap()
            .f_statistic;

        let scaled: Vec<f64> = x.iter().map(|v| 100.0 * v).collect();
        let data2 = dataset(vec![("y", y), ("x", scaled)]);
        let f2 = bounds_f_test(&fit_ardl(&data2, &spec, &order).unwrap(), BoundsTable::General)
            .unwrap()
            .f_statistic;
        assert!((f1 - f2).abs() < 1e-8 * f1.abs().max(1.0), "{f1} vs {f2}");
    }

    #[test]
    fn instantaneous_adjustment_gives_ect_near_minus_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let n = 300;
        let mut x = vec![0.0];
        for t in 1..n {
            x.push(x[t - 1] + rng.sample::<f64, _>(StandardNormal));
        }
        let y: Vec<f64> = x
            .iter()
            .map(|v| 2.0 * v + 0.3 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let data = dataset(vec![("y", y), ("x", x)]);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let ecm = fit_ecm(&data, &spec, &ArdlOrder::new(1, vec![1])).unwrap();
        assert!(
            (ecm.ect_coefficient + 1.0).abs() < 0.15,
            "ect = {}",
            ecm.ect_coefficient
        );
        assert!(ecm.convergent);
    }

    #[test]
    fn degenerate_long_run_is_an_error() {
        // a pure random walk has beta_y near zero only by luck, so force the
        // degenerate path directly through a tiny coefficient
        let data = noiseless_ardl_1_0(50);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let mut fit = fit_ardl(&data, &spec, &ArdlOrder::new(1, vec![0])).unwrap();
        let pos = fit.levels_fit.position("y(-1)").unwrap();
        fit.levels_fit.coefficients[pos] = 1e-12;
        assert!(matches!(
            long_run_coefficients(&fit),
            Err(Error::DegenerateLongRun(_))
        ));
    }

    #[test]
    fn paper_table_requires_k5() {
        let data = noiseless_ardl_1_0(50);
        let spec = ModelSpec::new("y", vec!["x".into()]);
        let fit = fit_ardl(&data, &spec, &ArdlOrder::new(1, vec![1])).unwrap();
        assert!(bounds_f_test(&fit, BoundsTable::PaperTable4).is_err());
    }
}
