//! Ordinary least squares with full inference output, information criteria,
//! and Bartlett-kernel long-run variance estimation.
//!
//! Everything else in the crate (unit-root tests, ARDL, cointegrating
//! regressions, causality, diagnostics) reduces to fits of this module's
//! [`DesignMatrix`]. Solutions go through an SVD so that rank deficiency is
//! detected with a scale-aware cutoff (smallest singular value below
//! `1e-10` times the largest) instead of an unstable explicit inverse.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::{Error, Result};

/// Relative singular-value cutoff below which a design is declared rank
/// deficient.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Named regression design: an n x k matrix of regressors plus a length-n
/// response.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    names: Vec<String>,
    x: DMatrix<f64>,
    y: DVector<f64>,
}

impl DesignMatrix {
    /// Build a design from named columns. Requires n > k and equal column
    /// lengths; full rank is checked at fit time.
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>, response: Vec<f64>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::InvalidSpec(
                "column name count does not match column count".into(),
            ));
        }
        let n = response.len();
        let k = columns.len();
        if k == 0 {
            return Err(Error::InvalidSpec("design has no columns".into()));
        }
        for (name, col) in names.iter().zip(&columns) {
            if col.len() != n {
                return Err(Error::InvalidSpec(format!(
                    "column `{name}` has length {} but the response has length {n}",
                    col.len()
                )));
            }
        }
        if n <= k {
            return Err(Error::InsufficientObservations { n, k });
        }
        let x = DMatrix::from_fn(n, k, |i, j| columns[j][i]);
        let y = DVector::from_vec(response);
        Ok(DesignMatrix { names, x, y })
    }

    /// Convenience constructor: optional intercept and trend columns are
    /// prepended to the supplied regressors.
    pub fn with_deterministics(
        names: Vec<String>,
        columns: Vec<Vec<f64>>,
        response: Vec<f64>,
        intercept: bool,
        trend: bool,
    ) -> Result<Self> {
        let n = response.len();
        let mut all_names = Vec::new();
        let mut all_cols = Vec::new();
        if intercept {
            all_names.push("const".to_string());
            all_cols.push(vec![1.0; n]);
        }
        if trend {
            all_names.push("trend".to_string());
            all_cols.push((1..=n).map(|t| t as f64).collect());
        }
        all_names.extend(names);
        all_cols.extend(columns);
        DesignMatrix::new(all_names, all_cols, response)
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }

    pub fn k(&self) -> usize {
        self.x.ncols()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn response(&self) -> &[f64] {
        self.y.as_slice()
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.names.iter().position(|n| n == name)?;
        Some(self.x.column(j).iter().cloned().collect())
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.x.row(i).iter().cloned().collect()
    }

    pub(crate) fn matrix(&self) -> &DMatrix<f64> {
        &self.x
    }

    /// A copy of the design with the listed columns removed (used for
    /// restricted fits in F-tests).
    pub fn drop_columns(&self, drop: &[&str]) -> Result<DesignMatrix> {
        let keep: Vec<usize> = (0..self.k())
            .filter(|&j| !drop.contains(&self.names[j].as_str()))
            .collect();
        if keep.is_empty() {
            return Err(Error::InvalidSpec(
                "restricted design would have no columns".into(),
            ));
        }
        let names = keep.iter().map(|&j| self.names[j].clone()).collect();
        let columns = keep
            .iter()
            .map(|&j| self.x.column(j).iter().cloned().collect())
            .collect();
        DesignMatrix::new(names, columns, self.y.as_slice().to_vec())
    }
}

/// Full OLS output: point estimates, classical inference, residual
/// diagnostics inputs, and information criteria.
#[derive(Debug, Clone, Serialize)]
pub struct RegressionFit {
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_statistics: Vec<f64>,
    pub p_values: Vec<f64>,
    pub residuals: Vec<f64>,
    pub fitted: Vec<f64>,
    pub rss: f64,
    pub r_squared: f64,
    pub aic: f64,
    pub bic: f64,
    pub hq: f64,
    pub n: usize,
    pub df_resid: usize,
    /// Residual variance rss / df_resid.
    pub sigma2: f64,
    /// Unscaled coefficient covariance (X'X)^-1; multiply by sigma2 for the
    /// classical covariance matrix.
    #[serde(skip)]
    pub cov_unscaled: DMatrix<f64>,
}

impl RegressionFit {
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.position(name).map(|j| self.coefficients[j])
    }

    pub fn standard_error(&self, name: &str) -> Option<f64> {
        self.position(name).map(|j| self.standard_errors[j])
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Scaled covariance sigma2 * (X'X)^-1.
    pub fn covariance(&self) -> DMatrix<f64> {
        &self.cov_unscaled * self.sigma2
    }
}

/// Two-sided p-value for a t-ratio with `df` residual degrees of freedom.
pub fn t_p_value(t: f64, df: usize) -> f64 {
    if df == 0 {
        return f64::NAN;
    }
    let dist = StudentsT::new(0.0, 1.0, df as f64).expect("valid t distribution");
    2.0 * (1.0 - dist.cdf(t.abs()))
}

/// Least-squares fit of a design matrix.
///
/// Coefficients minimize the residual sum of squares; standard errors,
/// t-ratios, and two-sided Student-t p-values use the classical formulas
/// with n - k residual degrees of freedom. A perfect fit (rss = 0) is
/// allowed: the information criteria are reported as -inf.
pub fn ols_fit(design: &DesignMatrix) -> Result<RegressionFit> {
    let n = design.n();
    let k = design.k();
    let x = &design.x;
    let y = &design.y;

    let svd = x.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smax > 0.0) || smin < RANK_TOLERANCE * smax {
        return Err(Error::RankDeficient(design.names.join(", ")));
    }

    let beta = svd
        .solve(y, 0.0)
        .map_err(|e| Error::Degenerate(e.to_string()))?;

    let fitted = x * &beta;
    let residuals = y - &fitted;
    let rss = residuals.dot(&residuals);
    let df_resid = n - k;
    // scale-aware perfect-fit flag so criteria do not rank fp noise
    let perfect = rss <= 1e-24 * y.dot(y).max(1e-300);

    // (X'X)^-1 = V diag(1/s^2) V'
    let v_t = svd.v_t.as_ref().expect("svd computed with v");
    let mut cov_unscaled = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let mut acc = 0.0;
            for r in 0..svd.singular_values.len() {
                let s = svd.singular_values[r];
                acc += v_t[(r, a)] * v_t[(r, b)] / (s * s);
            }
            cov_unscaled[(a, b)] = acc;
        }
    }

    let sigma2 = rss / df_resid as f64;
    let mut standard_errors = Vec::with_capacity(k);
    let mut t_statistics = Vec::with_capacity(k);
    let mut p_values = Vec::with_capacity(k);
    for j in 0..k {
        let se = (sigma2 * cov_unscaled[(j, j)]).max(0.0).sqrt();
        let t = if se > 0.0 { beta[j] / se } else { f64::INFINITY };
        standard_errors.push(se);
        t_statistics.push(t);
        p_values.push(t_p_value(t, df_resid));
    }

    // R^2 against the centered total sum of squares when an intercept (or
    // any constant column) is present, uncentered otherwise.
    let has_const = (0..k).any(|j| {
        let col = x.column(j);
        let first = col[0];
        col.iter().all(|v| (v - first).abs() < 1e-12) && first != 0.0
    });
    let tss = if has_const {
        let mean = y.mean();
        y.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
    } else {
        y.dot(y)
    };
    let r_squared = if perfect {
        1.0
    } else if tss > 0.0 {
        (1.0 - rss / tss).clamp(0.0, 1.0)
    } else {
        0.0
    };

    let (aic, bic, hq) = if perfect {
        (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY)
    } else {
        information_criteria(rss, n, k)?
    };

    Ok(RegressionFit {
        names: design.names.clone(),
        coefficients: beta.as_slice().to_vec(),
        standard_errors,
        t_statistics,
        p_values,
        residuals: residuals.as_slice().to_vec(),
        fitted: fitted.as_slice().to_vec(),
        rss,
        r_squared,
        aic,
        bic,
        hq,
        n,
        df_resid,
        sigma2,
        cov_unscaled,
    })
}

/// AIC, BIC, and Hannan-Quinn from the residual sum of squares:
/// `aic = n ln(rss/n) + 2k`, `bic = n ln(rss/n) + k ln(n)`,
/// `hq = n ln(rss/n) + 2k ln(ln(n))`.
pub fn information_criteria(rss: f64, n: usize, k: usize) -> Result<(f64, f64, f64)> {
    if n <= k {
        return Err(Error::InsufficientObservations { n, k });
    }
    if rss <= 0.0 {
        return Err(Error::PerfectFit);
    }
    let n_f = n as f64;
    let base = n_f * (rss / n_f).ln();
    let k_f = k as f64;
    Ok((
        base + 2.0 * k_f,
        base + k_f * n_f.ln(),
        base + 2.0 * k_f * n_f.ln().ln(),
    ))
}

/// Kernel long-run covariance output.
///
/// `omega` is the two-sided long-run covariance
/// `Γ0 + Σ_{j=1..B} w_j (Γ_j + Γ_j')` and `lambda_one_sided` the one-sided
/// `Σ_{j=0..B} w_j Γ_j`, with Bartlett weights `w_j = 1 - j/(B+1)` and
/// uncentered sample autocovariances `Γ_j = (1/n) Σ_t u_t u_{t-j}'`.
#[derive(Debug, Clone)]
pub struct LongRunVariance {
    pub omega: DMatrix<f64>,
    pub lambda_one_sided: DMatrix<f64>,
    pub bandwidth: usize,
    pub dim: usize,
}

impl LongRunVariance {
    /// Scalar omega for one-dimensional input.
    pub fn omega_scalar(&self) -> f64 {
        self.omega[(0, 0)]
    }
}

/// Automatic Bartlett bandwidth `floor(4 (n/100)^{2/9})`.
pub fn automatic_bandwidth(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

/// Bartlett-kernel long-run covariance of one or more residual columns.
/// Inputs are used as-is (no demeaning); pass OLS residuals from a model
/// with an intercept if a zero mean is required.
pub fn long_run_variance(columns: &[Vec<f64>], bandwidth: Option<usize>) -> Result<LongRunVariance> {
    let dim = columns.len();
    if dim == 0 {
        return Err(Error::InvalidSpec("no residual columns".into()));
    }
    let n = columns[0].len();
    for c in columns {
        if c.len() != n {
            return Err(Error::InvalidSpec(
                "residual columns have unequal lengths".into(),
            ));
        }
    }
    let bw = bandwidth.unwrap_or_else(|| automatic_bandwidth(n));
    if n < bw + 2 {
        return Err(Error::BandwidthTooLarge { bandwidth: bw, n });
    }

    let gamma = |j: usize| -> DMatrix<f64> {
        let mut g = DMatrix::zeros(dim, dim);
        for t in j..n {
            for a in 0..dim {
                for b in 0..dim {
                    g[(a, b)] += columns[a][t] * columns[b][t - j];
                }
            }
        }
        g / n as f64
    };

    let gamma0 = gamma(0);
    let mut omega = gamma0.clone();
    let mut lambda = gamma0;
    for j in 1..=bw {
        let w = 1.0 - j as f64 / (bw as f64 + 1.0);
        let gj = gamma(j);
        omega += (&gj + gj.transpose()) * w;
        lambda += gj * w;
    }

    Ok(LongRunVariance {
        omega,
        lambda_one_sided: lambda,
        bandwidth: bw,
        dim,
    })
}
