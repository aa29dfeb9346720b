//! ADF, Phillips-Perron, and DF-GLS unit-root tests with automatic
//! lag/bandwidth selection, embedded critical values, and per-variable
//! I(0)/I(1) classification.
//!
//! All three tests share the Dickey-Fuller regression
//!
//! ```text
//! Δy_t = [μ + βt] + γ y_{t-1} + Σ_{i=1..p} φ_i Δy_{t-i} + e_t
//! ```
//!
//! and report the t-ratio on γ (left-tailed: reject the unit root when the
//! statistic falls below the critical value). PP runs the regression with
//! zero augmentation lags and corrects the statistic nonparametrically
//! with a Bartlett long-run variance; DF-GLS first detrends the series by
//! GLS against local-to-unity quasi-differences (ᾱ = 1 + c̄/T, c̄ = -7 for
//! the constant case and -13.5 with trend) and then runs the regression
//! with no deterministic terms.

pub mod tables;

use serde::Serialize;

use crate::dataio::{Dataset, TimeSeries};
use crate::error::{Error, Result};
use crate::linreg::{self, DesignMatrix};

/// Minimum effective regression sample accepted by the tests.
pub const MIN_EFFECTIVE_SAMPLE: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum UnitRootTest {
    Adf,
    Pp,
    DfGls,
}

impl std::fmt::Display for UnitRootTest {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UnitRootTest::Adf => write!(f, "ADF"),
            UnitRootTest::Pp => write!(f, "P-P"),
            UnitRootTest::DfGls => write!(f, "DF-GLS"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Deterministics {
    None,
    Constant,
    ConstantTrend,
}

/// Augmentation-lag policy for ADF and DF-GLS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LagPolicy {
    Fixed(usize),
    /// AIC search over p in [0, pmax].
    AicMax(usize),
    /// AIC search bounded by floor(12 (T/100)^{1/4}).
    Schwert,
}

/// Bandwidth policy for the PP correction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BandwidthPolicy {
    Fixed(usize),
    Automatic,
}

#[derive(Debug, Clone, Copy)]
pub struct UnitRootSpec {
    pub test: UnitRootTest,
    pub deterministics: Deterministics,
    pub lag_policy: LagPolicy,
    pub bandwidth_policy: BandwidthPolicy,
}

impl UnitRootSpec {
    pub fn new(test: UnitRootTest, deterministics: Deterministics) -> Self {
        UnitRootSpec {
            test,
            deterministics,
            lag_policy: LagPolicy::Schwert,
            bandwidth_policy: BandwidthPolicy::Automatic,
        }
    }

    pub fn with_lags(mut self, policy: LagPolicy) -> Self {
        self.lag_policy = policy;
        self
    }

    pub fn with_bandwidth(mut self, policy: BandwidthPolicy) -> Self {
        self.bandwidth_policy = policy;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.test == UnitRootTest::DfGls && self.deterministics == Deterministics::None {
            return Err(Error::InvalidSpec(
                "DF-GLS requires a constant or constant+trend".into(),
            ));
        }
        Ok(())
    }
}

/// Critical values at 1%, 5%, 10%.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalValues {
    pub one: f64,
    pub five: f64,
    pub ten: f64,
}

/// Textual p-value band bracketed by the three critical values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PValueBand {
    BelowOnePct,
    OneToFivePct,
    FiveToTenPct,
    AboveTenPct,
}

impl std::fmt::Display for PValueBand {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PValueBand::BelowOnePct => write!(f, "p < 0.01"),
            PValueBand::OneToFivePct => write!(f, "0.01 <= p < 0.05"),
            PValueBand::FiveToTenPct => write!(f, "0.05 <= p < 0.10"),
            PValueBand::AboveTenPct => write!(f, "p >= 0.10"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    RejectUnitRoot,
    FailToReject,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitRootResult {
    pub test: UnitRootTest,
    pub deterministics: Deterministics,
    pub statistic: f64,
    pub lags_used: usize,
    pub bandwidth_used: Option<usize>,
    pub effective_nobs: usize,
    pub critical_values: CriticalValues,
    pub p_value_band: PValueBand,
    /// Reject iff statistic < 5% critical value (left tail).
    pub decision: Decision,
}

impl UnitRootResult {
    /// Significance stars under the usual convention: *** below the 1%
    /// value, ** below 5%, * below 10%.
    pub fn stars(&self) -> &'static str {
        match self.p_value_band {
            PValueBand::BelowOnePct => "***",
            PValueBand::OneToFivePct => "**",
            PValueBand::FiveToTenPct => "*",
            PValueBand::AboveTenPct => "",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntegrationOrder {
    I0,
    I1,
    I2OrHigher,
}

impl std::fmt::Display for IntegrationOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IntegrationOrder::I0 => write!(f, "I(0)"),
            IntegrationOrder::I1 => write!(f, "I(1)"),
            IntegrationOrder::I2OrHigher => write!(f, "I(2)+"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntegrationClass {
    pub variable: String,
    pub order: IntegrationOrder,
}

struct DfRegression {
    statistic: f64,
    gamma: f64,
    gamma_se: f64,
    residuals: Vec<f64>,
    nobs: usize,
}

/// Dickey-Fuller regression with `lags` augmentation terms; returns the
/// t-ratio on the lagged level.
fn df_regression(y: &[f64], lags: usize, det: Deterministics) -> Result<DfRegression> {
    let n = y.len();
    if n < lags + 3 {
        return Err(Error::TooShort { got: n, needed: lags + 3 });
    }
    let start = lags + 1;
    let nobs = n - start;

    let mut names = vec!["level".to_string()];
    let mut cols: Vec<Vec<f64>> = vec![(start..n).map(|t| y[t - 1]).collect()];
    for i in 1..=lags {
        names.push(format!("dlag{i}"));
        cols.push((start..n).map(|t| y[t - i] - y[t - i - 1]).collect());
    }
    let dy: Vec<f64> = (start..n).map(|t| y[t] - y[t - 1]).collect();

    let (intercept, trend) = match det {
        Deterministics::None => (false, false),
        Deterministics::Constant => (true, false),
        Deterministics::ConstantTrend => (true, true),
    };
    let design = DesignMatrix::with_deterministics(names, cols, dy, intercept, trend)?;
    let fit = linreg::ols_fit(&design)?;
    let j = fit.position("level").expect("level column present");
    Ok(DfRegression {
        statistic: fit.t_statistics[j],
        gamma: fit.coefficients[j],
        gamma_se: fit.standard_errors[j],
        residuals: fit.residuals,
        nobs,
    })
}

/// Schwert's maximum-lag rule floor(12 (T/100)^{1/4}).
pub fn schwert_max_lags(n: usize) -> usize {
    (12.0 * (n as f64 / 100.0).powf(0.25)).floor() as usize
}

/// AIC lag selection over p in [0, pmax] with every candidate evaluated on
/// the common pmax-trimmed sample; ties go to the smaller order.
fn select_adf_lags(y: &[f64], pmax: usize, det: Deterministics) -> Result<usize> {
    let n = y.len();
    // keep enough degrees of freedom for the largest candidate
    let det_k = match det {
        Deterministics::None => 0,
        Deterministics::Constant => 1,
        Deterministics::ConstantTrend => 2,
    };
    let mut pmax = pmax;
    while pmax > 0 && n.saturating_sub(pmax + 1) <= pmax + det_k + 2 {
        pmax -= 1;
    }
    let start = pmax + 1;
    if n <= start + det_k + 2 {
        return Err(Error::TooShort { got: n, needed: start + det_k + 3 });
    }

    let dy_common: Vec<f64> = (start..n).map(|t| y[t] - y[t - 1]).collect();
    let mut best = (f64::INFINITY, 0usize);
    for p in 0..=pmax {
        let mut names = vec!["level".to_string()];
        let mut cols: Vec<Vec<f64>> = vec![(start..n).map(|t| y[t - 1]).collect()];
        for i in 1..=p {
            names.push(format!("dlag{i}"));
            cols.push((start..n).map(|t| y[t - i] - y[t - i - 1]).collect());
        }
        let design = DesignMatrix::with_deterministics(
            names,
            cols,
            dy_common.clone(),
            det_k >= 1,
            det_k == 2,
        )?;
        let fit = linreg::ols_fit(&design)?;
        if fit.aic < best.0 {
            best = (fit.aic, p);
        }
    }
    Ok(best.1)
}

fn resolve_lags(y: &[f64], policy: LagPolicy, det: Deterministics) -> Result<usize> {
    let n = y.len();
    let p = match policy {
        LagPolicy::Fixed(p) => p,
        LagPolicy::AicMax(pmax) => select_adf_lags(y, pmax, det)?,
        LagPolicy::Schwert => select_adf_lags(y, schwert_max_lags(n), det)?,
    };
    if p + 5 >= n {
        return Err(Error::InvalidSpec(format!(
            "lag policy yields p = {p} with only {n} observations"
        )));
    }
    Ok(p)
}

/// GLS detrending against local-to-unity quasi-differences.
fn gls_detrend(y: &[f64], det: Deterministics) -> Result<Vec<f64>> {
    let n = y.len();
    let t_f = n as f64;
    let c_bar = match det {
        Deterministics::Constant => -7.0,
        Deterministics::ConstantTrend => -13.5,
        Deterministics::None => {
            return Err(Error::InvalidSpec(
                "GLS detrending needs deterministic terms".into(),
            ))
        }
    };
    let alpha = 1.0 + c_bar / t_f;

    let quasi = |col: &[f64]| -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        out.push(col[0]);
        for t in 1..n {
            out.push(col[t] - alpha * col[t - 1]);
        }
        out
    };

    let ones = vec![1.0; n];
    let mut det_cols: Vec<Vec<f64>> = vec![ones];
    let mut names = vec!["const".to_string()];
    if det == Deterministics::ConstantTrend {
        det_cols.push((1..=n).map(|t| t as f64).collect());
        names.push("trend".to_string());
    }

    let zy = quasi(y);
    let zd: Vec<Vec<f64>> = det_cols.iter().map(|c| quasi(c)).collect();
    let design = DesignMatrix::new(names, zd, zy)?;
    let fit = linreg::ols_fit(&design)?;

    let mut detrended = Vec::with_capacity(n);
    for t in 0..n {
        let mut d_val = fit.coefficients[0];
        if det == Deterministics::ConstantTrend {
            d_val += fit.coefficients[1] * (t as f64 + 1.0);
        }
        detrended.push(y[t] - d_val);
    }
    Ok(detrended)
}

/// Embedded finite-sample critical values.
///
/// `n` is the series length handed to the test; surfaces are evaluated at
/// the zero-lag regression sample size n - 1, which is also how the
/// simulation oracle indexes its quantiles.
pub fn unit_root_critical_values(
    test: UnitRootTest,
    det: Deterministics,
    n: usize,
) -> Result<CriticalValues> {
    if n < MIN_EFFECTIVE_SAMPLE {
        return Err(Error::TooShort { got: n, needed: MIN_EFFECTIVE_SAMPLE });
    }
    let t_eff = (n - 1) as f64;
    let vals = match (test, det) {
        (UnitRootTest::Adf | UnitRootTest::Pp, Deterministics::None) => {
            tables::surface_at(&tables::MACKINNON_NC, t_eff)
        }
        (UnitRootTest::Adf | UnitRootTest::Pp, Deterministics::Constant) => {
            tables::surface_at(&tables::MACKINNON_C, t_eff)
        }
        (UnitRootTest::Adf | UnitRootTest::Pp, Deterministics::ConstantTrend) => {
            tables::surface_at(&tables::MACKINNON_CT, t_eff)
        }
        (UnitRootTest::DfGls, Deterministics::Constant) => tables::dfgls_demeaned_at(t_eff),
        (UnitRootTest::DfGls, Deterministics::ConstantTrend) => tables::ers_trend_at(t_eff),
        (UnitRootTest::DfGls, Deterministics::None) => {
            return Err(Error::InvalidSpec(
                "no critical values for DF-GLS without deterministics".into(),
            ))
        }
    };
    Ok(CriticalValues {
        one: vals[0],
        five: vals[1],
        ten: vals[2],
    })
}

fn band_and_decision(statistic: f64, cv: CriticalValues) -> (PValueBand, Decision) {
    let band = if statistic < cv.one {
        PValueBand::BelowOnePct
    } else if statistic < cv.five {
        PValueBand::OneToFivePct
    } else if statistic < cv.ten {
        PValueBand::FiveToTenPct
    } else {
        PValueBand::AboveTenPct
    };
    let decision = if statistic < cv.five {
        Decision::RejectUnitRoot
    } else {
        Decision::FailToReject
    };
    (band, decision)
}

/// Run one unit-root test on a raw series.
pub fn unit_root_test_values(y: &[f64], spec: &UnitRootSpec) -> Result<UnitRootResult> {
    spec.validate()?;
    let n = y.len();

    let (statistic, lags_used, bandwidth_used, nobs) = match spec.test {
        UnitRootTest::Adf => {
            let p = resolve_lags(y, spec.lag_policy, spec.deterministics)?;
            let reg = df_regression(y, p, spec.deterministics)?;
            (reg.statistic, p, None, reg.nobs)
        }
        UnitRootTest::DfGls => {
            let detrended = gls_detrend(y, spec.deterministics)?;
            let p = resolve_lags(&detrended, spec.lag_policy, Deterministics::None)?;
            let reg = df_regression(&detrended, p, Deterministics::None)?;
            (reg.statistic, p, None, reg.nobs)
        }
        UnitRootTest::Pp => {
            let reg = df_regression(y, 0, spec.deterministics)?;
            let m = reg.nobs as f64;
            let bw = match spec.bandwidth_policy {
                BandwidthPolicy::Fixed(b) => b,
                BandwidthPolicy::Automatic => linreg::automatic_bandwidth(reg.nobs),
            };
            let gamma0 = reg.residuals.iter().map(|u| u * u).sum::<f64>() / m;
            let lam2 = linreg::long_run_variance(&[reg.residuals.clone()], Some(bw))?
                .omega_scalar();
            if lam2 <= 0.0 || gamma0 <= 0.0 {
                return Err(Error::Degenerate("zero residual variance in PP".into()));
            }
            let s = gamma0.sqrt();
            let z_tau = (gamma0 / lam2).sqrt() * reg.statistic
                - (lam2 - gamma0) * m * reg.gamma_se / (2.0 * lam2.sqrt() * s);
            (z_tau, 0, Some(bw), reg.nobs)
        }
    };

    if nobs < MIN_EFFECTIVE_SAMPLE {
        return Err(Error::TooShort { got: nobs, needed: MIN_EFFECTIVE_SAMPLE });
    }

    let cv = unit_root_critical_values(spec.test, spec.deterministics, n.min(nobs + 1 + lags_used))?;
    let (band, decision) = band_and_decision(statistic, cv);
    Ok(UnitRootResult {
        test: spec.test,
        deterministics: spec.deterministics,
        statistic,
        lags_used,
        bandwidth_used,
        effective_nobs: nobs,
        critical_values: cv,
        p_value_band: band,
        decision,
    })
}

/// Run one unit-root test on a named series.
pub fn unit_root_test(y: &TimeSeries, spec: &UnitRootSpec) -> Result<UnitRootResult> {
    unit_root_test_values(&y.values, spec)
}

/// Classify every variable of a dataset as I(0), I(1), or I(2)+ under one
/// test template: I(0) if the level test rejects at 5%, otherwise I(1) if
/// the first-difference test rejects, otherwise I(2)+.
pub fn classify_integration(data: &Dataset, spec: &UnitRootSpec) -> Result<Vec<IntegrationClass>> {
    data.series()
        .iter()
        .map(|s| {
            let level = unit_root_test(s, spec)?;
            let order = if level.decision == Decision::RejectUnitRoot {
                IntegrationOrder::I0
            } else {
                let diff = s.diff(1)?;
                let d = unit_root_test(&diff, spec)?;
                if d.decision == Decision::RejectUnitRoot {
                    IntegrationOrder::I1
                } else {
                    IntegrationOrder::I2OrHigher
                }
            };
            Ok(IntegrationClass {
                variable: s.name.clone(),
                order,
            })
        })
        .collect()
}
