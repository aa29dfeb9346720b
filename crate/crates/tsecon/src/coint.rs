//! Cointegrating-regression estimators: fully modified OLS
//! (Phillips-Hansen), dynamic OLS (Saikkonen/Stock-Watson), and canonical
//! cointegrating regression (Park).
//!
//! All three estimate the levels relationship y_t = α + β'x_t + u_t for
//! I(1) regressors, correcting OLS for endogeneity and serial correlation.
//! Let v_t = Δx_t and ξ_t = (u_t, v_t')' with long-run covariance Ω and
//! one-sided Λ (Bartlett kernel, shared with the rest of the crate):
//!
//! * FMOLS replaces y with y⁺_t = y_t − Ω_uv Ω_vv⁻¹ v_t and subtracts the
//!   bias term Δ⁺ = Λ_vu − Λ_vv Ω_vv⁻¹ Ω_vu from the stochastic normal
//!   equations.
//! * CCR transforms both sides: x*_t = x_t − (Σ⁻¹Λ₂)'ξ_t and
//!   y*_t = y_t − (Σ⁻¹Λ₂ β̂ + [0, Ω_vv⁻¹Ω_vu]')'ξ_t with Σ the
//!   contemporaneous covariance of ξ and β̂ the preliminary OLS slope,
//!   then runs OLS on the transformed data.
//! * DOLS augments the levels regression with Δx_{t+j}, j in [-q, q], and
//!   rescales the OLS covariance by a long-run variance of the residual.
//!
//! Standard errors use the conditional long-run variance
//! ω = Ω_uu − Ω_uv Ω_vv⁻¹ Ω_vu (FMOLS/CCR) or the residual long-run
//! variance (DOLS); p-values are asymptotic standard normal.
//!
//! Integration preconditions (I(1) variables) are the caller's contract;
//! the pipeline checks them against the unit-root stage and warns.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::dataio::{Dataset, ModelSpec};
use crate::error::{Error, Result};
use crate::linreg::{self, DesignMatrix};

/// Minimum effective sample after trimming.
pub const MIN_EFFECTIVE_SAMPLE: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CointMethod {
    Fmols,
    Dols,
    Ccr,
}

impl std::fmt::Display for CointMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CointMethod::Fmols => write!(f, "FMOLS"),
            CointMethod::Dols => write!(f, "DOLS"),
            CointMethod::Ccr => write!(f, "CCR"),
        }
    }
}

/// Tuning knobs: kernel bandwidth for FMOLS/CCR (and the DOLS residual
/// variance), leads/lags window for DOLS.
#[derive(Debug, Clone, Copy)]
pub struct CointTuning {
    /// Bartlett bandwidth; `None` selects floor(4 (n/100)^{2/9}).
    pub bandwidth: Option<usize>,
    /// DOLS leads/lags q; the window is [-q, q].
    pub leads_lags: usize,
}

impl Default for CointTuning {
    fn default() -> Self {
        // q = 1 preserves degrees of freedom at the ~30-observation samples
        // this toolkit targets
        CointTuning {
            bandwidth: None,
            leads_lags: 1,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CointFit {
    pub method: CointMethod,
    pub names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub t_statistics: Vec<f64>,
    pub p_values: Vec<f64>,
    pub bandwidth: Option<usize>,
    pub leads_lags: Option<usize>,
    pub effective_sample: usize,
}

impl CointFit {
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|j| self.coefficients[j])
    }
}

fn normal_p(z: f64) -> f64 {
    let dist = Normal::new(0.0, 1.0).expect("standard normal");
    2.0 * (1.0 - dist.cdf(z.abs()))
}

struct Trimmed {
    y: Vec<f64>,
    x: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
    m: usize,
}

/// Drop the first observation so Δx is defined on every remaining row.
fn trim(data: &Dataset, spec: &ModelSpec) -> Result<Trimmed> {
    let n = data.n_obs();
    let y_full = &data.get(&spec.dependent)?.values;
    let y: Vec<f64> = y_full[1..].to_vec();
    let mut x = Vec::new();
    let mut v = Vec::new();
    for reg in &spec.regressors {
        let col = &data.get(reg)?.values;
        x.push(col[1..].to_vec());
        v.push(col.windows(2).map(|w| w[1] - w[0]).collect());
    }
    Ok(Trimmed { y, x, v, m: n - 1 })
}

fn levels_design(names: &[String], x: &[Vec<f64>], y: &[f64], intercept: bool) -> Result<DesignMatrix> {
    DesignMatrix::with_deterministics(names.to_vec(), x.to_vec(), y.to_vec(), intercept, false)
}

/// Estimate the levels relationship with the chosen method.
pub fn coint_fit(
    data: &Dataset,
    spec: &ModelSpec,
    method: CointMethod,
    tuning: CointTuning,
) -> Result<CointFit> {
    spec.validate(data)?;
    if spec.trend {
        return Err(Error::InvalidSpec(
            "cointegrating regressions are implemented with intercept-only deterministics".into(),
        ));
    }
    if spec.regressors.is_empty() {
        return Err(Error::InvalidSpec("no regressors".into()));
    }
    match method {
        CointMethod::Fmols => fmols(data, spec, tuning),
        CointMethod::Ccr => ccr(data, spec, tuning),
        CointMethod::Dols => dols(data, spec, tuning),
    }
}

/// Long-run pieces shared by FMOLS and CCR.
struct Corrections {
    omega_uv_ovv_inv: DVector<f64>, // Ω_vv^-1 Ω_vu  (k)
    delta_plus: DVector<f64>,       // Λ_vu - Λ_vv Ω_vv^-1 Ω_vu  (k)
    omega_cond: f64,                // Ω_uu - Ω_uv Ω_vv^-1 Ω_vu
    sigma: DMatrix<f64>,            // contemporaneous covariance of ξ
    lambda: DMatrix<f64>,           // one-sided Λ
    bandwidth: usize,
}

fn corrections(residuals: &[f64], v: &[Vec<f64>], bandwidth: Option<usize>) -> Result<Corrections> {
    let k = v.len();
    let mut cols = Vec::with_capacity(k + 1);
    cols.push(residuals.to_vec());
    cols.extend(v.iter().cloned());
    let lrv = linreg::long_run_variance(&cols, bandwidth)?;
    let omega = &lrv.omega;
    let lambda = lrv.lambda_one_sided.clone();

    let omega_vv = omega.view((1, 1), (k, k)).into_owned();
    let omega_vu = DVector::from_fn(k, |i, _| omega[(i + 1, 0)]);
    let lambda_vu = DVector::from_fn(k, |i, _| lambda[(i + 1, 0)]);
    let lambda_vv = lambda.view((1, 1), (k, k)).into_owned();

    let ovv_inv = omega_vv
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("singular long-run innovation covariance".into()))?;
    let omega_uv_ovv_inv = &ovv_inv * &omega_vu;
    let delta_plus = &lambda_vu - &lambda_vv * &omega_uv_ovv_inv;
    let omega_cond = omega[(0, 0)] - omega_vu.dot(&omega_uv_ovv_inv);
    if omega_cond <= 0.0 {
        return Err(Error::Degenerate(
            "conditional long-run variance is not positive".into(),
        ));
    }

    // contemporaneous covariance of ξ
    let m = residuals.len() as f64;
    let dim = k + 1;
    let mut sigma = DMatrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = 0.0;
            for t in 0..residuals.len() {
                acc += cols[a][t] * cols[b][t];
            }
            sigma[(a, b)] = acc / m;
        }
    }

    Ok(Corrections {
        omega_uv_ovv_inv,
        delta_plus,
        omega_cond,
        sigma,
        lambda,
        bandwidth: lrv.bandwidth,
    })
}

fn inference_from(
    method: CointMethod,
    names: Vec<String>,
    beta: DVector<f64>,
    ztz_inv: &DMatrix<f64>,
    omega: f64,
    m: usize,
    bandwidth: Option<usize>,
    leads_lags: Option<usize>,
) -> CointFit {
    let kk = beta.len();
    let mut standard_errors = Vec::with_capacity(kk);
    let mut t_statistics = Vec::with_capacity(kk);
    let mut p_values = Vec::with_capacity(kk);
    for j in 0..kk {
        let se = (omega * ztz_inv[(j, j)]).max(0.0).sqrt();
        let t = if se > 0.0 { beta[j] / se } else { f64::INFINITY };
        standard_errors.push(se);
        t_statistics.push(t);
        p_values.push(normal_p(t));
    }
    CointFit {
        method,
        names,
        coefficients: beta.as_slice().to_vec(),
        standard_errors,
        t_statistics,
        p_values,
        bandwidth,
        leads_lags,
        effective_sample: m,
    }
}

fn fmols(data: &Dataset, spec: &ModelSpec, tuning: CointTuning) -> Result<CointFit> {
    let tr = trim(data, spec)?;
    if tr.m < MIN_EFFECTIVE_SAMPLE {
        return Err(Error::TooShort { got: tr.m, needed: MIN_EFFECTIVE_SAMPLE });
    }
    let k = spec.regressors.len();
    let design = levels_design(&spec.regressors, &tr.x, &tr.y, spec.intercept)?;
    let ols = linreg::ols_fit(&design)?;
    let corr = corrections(&ols.residuals, &tr.v, tuning.bandwidth)?;

    // endogeneity-corrected response
    let y_plus: Vec<f64> = (0..tr.m)
        .map(|t| {
            let mut adj = 0.0;
            for j in 0..k {
                adj += corr.omega_uv_ovv_inv[j] * tr.v[j][t];
            }
            tr.y[t] - adj
        })
        .collect();

    // normal equations with additive bias correction on stochastic rows
    let z = design.matrix();
    let ztz = z.transpose() * z;
    let ztz_inv = ztz
        .try_inverse()
        .ok_or_else(|| Error::RankDeficient(design.names().join(", ")))?;
    let yv = DVector::from_vec(y_plus);
    let mut zty = z.transpose() * yv;
    // deterministic columns precede the regressors in the design
    let offset = design.k() - k;
    for j in 0..k {
        zty[offset + j] -= tr.m as f64 * corr.delta_plus[j];
    }
    let beta = &ztz_inv * zty;

    Ok(inference_from(
        CointMethod::Fmols,
        design.names().to_vec(),
        beta,
        &ztz_inv,
        corr.omega_cond,
        tr.m,
        Some(corr.bandwidth),
        None,
    ))
}

fn ccr(data: &Dataset, spec: &ModelSpec, tuning: CointTuning) -> Result<CointFit> {
    let tr = trim(data, spec)?;
    if tr.m < MIN_EFFECTIVE_SAMPLE {
        return Err(Error::TooShort { got: tr.m, needed: MIN_EFFECTIVE_SAMPLE });
    }
    let k = spec.regressors.len();
    let design = levels_design(&spec.regressors, &tr.x, &tr.y, spec.intercept)?;
    let ols = linreg::ols_fit(&design)?;
    let corr = corrections(&ols.residuals, &tr.v, tuning.bandwidth)?;

    // ξ rows
    let xi = |t: usize| -> DVector<f64> {
        let mut row = DVector::zeros(k + 1);
        row[0] = ols.residuals[t];
        for j in 0..k {
            row[j + 1] = tr.v[j][t];
        }
        row
    };

    let sigma_inv = corr
        .sigma
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Degenerate("singular contemporaneous covariance".into()))?;
    // Λ₂: the v-block columns of the one-sided Λ, (k+1) x k
    let lambda2 = corr.lambda.view((0, 1), (k + 1, k)).into_owned();
    let a_x = &sigma_inv * &lambda2; // (k+1) x k

    // preliminary slope estimates feed the y transformation
    let offset = design.k() - k;
    let beta_ols = DVector::from_fn(k, |j, _| ols.coefficients[offset + j]);
    let mut a_y = &a_x * &beta_ols; // (k+1)
    for j in 0..k {
        a_y[j + 1] += corr.omega_uv_ovv_inv[j];
    }

    let mut x_star = vec![Vec::with_capacity(tr.m); k];
    let mut y_star = Vec::with_capacity(tr.m);
    for t in 0..tr.m {
        let w = xi(t);
        for j in 0..k {
            let shift = a_x.column(j).dot(&w);
            x_star[j].push(tr.x[j][t] - shift);
        }
        y_star.push(tr.y[t] - a_y.dot(&w));
    }

    let star_design = levels_design(&spec.regressors, &x_star, &y_star, spec.intercept)?;
    let star_ols = linreg::ols_fit(&star_design)?;
    let z = star_design.matrix();
    let ztz_inv = (z.transpose() * z)
        .try_inverse()
        .ok_or_else(|| Error::RankDeficient(star_design.names().join(", ")))?;
    let beta = DVector::from_vec(star_ols.coefficients.clone());

    Ok(inference_from(
        CointMethod::Ccr,
        star_design.names().to_vec(),
        beta,
        &ztz_inv,
        corr.omega_cond,
        tr.m,
        Some(corr.bandwidth),
        None,
    ))
}

/// Levels plus leads and lags of Δx, symmetrically trimmed: rows run from
/// q+1 to n-1-q (0-based), so the sample shrinks by 2q+1.
pub fn build_dols_design(data: &Dataset, spec: &ModelSpec, q: usize) -> Result<DesignMatrix> {
    spec.validate(data)?;
    let n = data.n_obs();
    if n < 2 * q + 2 + spec.regressors.len() + 2 {
        return Err(Error::OrderTooLarge { order: q, length: n });
    }
    let lo = q + 1;
    let hi = n - q; // exclusive
    let y = &data.get(&spec.dependent)?.values;
    let response: Vec<f64> = (lo..hi).map(|t| y[t]).collect();

    let mut names = Vec::new();
    let mut cols = Vec::new();
    for reg in &spec.regressors {
        let x = &data.get(reg)?.values;
        names.push(reg.clone());
        cols.push((lo..hi).map(|t| x[t]).collect());
    }
    for reg in &spec.regressors {
        let x = &data.get(reg)?.values;
        for j in -(q as i64)..=(q as i64) {
            let name = match j.cmp(&0) {
                std::cmp::Ordering::Less => format!("D({reg}({j}))"),
                std::cmp::Ordering::Equal => format!("D({reg})"),
                std::cmp::Ordering::Greater => format!("D({reg}(+{j}))"),
            };
            names.push(name);
            cols.push(
                (lo..hi)
                    .map(|t| {
                        let s = (t as i64 + j) as usize;
                        x[s] - x[s - 1]
                    })
                    .collect(),
            );
        }
    }
    DesignMatrix::with_deterministics(names, cols, response, spec.intercept, false)
}

fn dols(data: &Dataset, spec: &ModelSpec, tuning: CointTuning) -> Result<CointFit> {
    let q = tuning.leads_lags;
    let design = build_dols_design(data, spec, q)?;
    let m = design.n();
    if m < MIN_EFFECTIVE_SAMPLE {
        return Err(Error::TooShort { got: m, needed: MIN_EFFECTIVE_SAMPLE });
    }
    let fit = linreg::ols_fit(&design)?;
    let omega = linreg::long_run_variance(&[fit.residuals.clone()], tuning.bandwidth)?;

    // report intercept and levels only; the Δx window is nuisance
    let k = spec.regressors.len();
    let keep: Vec<usize> = (0..design.k())
        .filter(|&j| {
            let name = &design.names()[j];
            name == "const" || spec.regressors.contains(name)
        })
        .collect();
    assert_eq!(keep.len(), k + usize::from(spec.intercept));

    let names: Vec<String> = keep.iter().map(|&j| design.names()[j].clone()).collect();
    let beta = DVector::from_fn(keep.len(), |i, _| fit.coefficients[keep[i]]);
    let mut sub_cov = DMatrix::zeros(keep.len(), keep.len());
    for (a, &ja) in keep.iter().enumerate() {
        for (b, &jb) in keep.iter().enumerate() {
            sub_cov[(a, b)] = fit.cov_unscaled[(ja, jb)];
        }
    }

    Ok(inference_from(
        CointMethod::Dols,
        names,
        beta,
        &sub_cov,
        omega.omega_scalar(),
        m,
        Some(omega.bandwidth),
        Some(q),
    ))
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

    fn spec_xy() -> ModelSpec {
        ModelSpec::new("y", vec!["x".into()])
    }

    /// Project `target` orthogonal to each column in `basis` (Gram-Schmidt).
    fn orthogonalize(mut target: Vec<f64>, basis: &[Vec<f64>]) -> Vec<f64> {
        for b in basis {
            let bb: f64 = b.iter().map(|v| v * v).sum();
            let tb: f64 = target.iter().zip(b).map(|(a, c)| a * c).sum();
            let f = tb / bb;
            for (t, c) in target.iter_mut().zip(b) {
                *t -= f * c;
            }
        }
        target
    }

    #[test]
    fn fmols_reduces_to_ols_under_exact_orthogonality() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let n = 60;
        let mut x = vec![0.0];
        for t in 1..n {
            x.push(x[t - 1] + rng.sample::<f64, _>(StandardNormal));
        }
        // errors orthogonal to const, x (trimmed) and Δx, so the OLS
        // residuals coincide with them and every correction term vanishes
        let x_trim = x[1..].to_vec();
        let v: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let ones = vec![1.0; n - 1];
        let raw: Vec<f64> = (0..n - 1).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let e = orthogonalize(raw, &[ones.clone(), x_trim.clone(), v.clone()]);
        let mut y = vec![0.0; n];
        for t in 1..n {
            y[t] = 1.0 + 2.0 * x[t] + e[t - 1];
        }
        y[0] = 1.0 + 2.0 * x[0];

        let data = dataset(vec![("y", y.clone()), ("x", x.clone())]);
        let fm = coint_fit(
            &data,
            &spec_xy(),
            CointMethod::Fmols,
            CointTuning { bandwidth: Some(0), leads_lags: 1 },
        )
        .unwrap();

        let ols_design = DesignMatrix::with_deterministics(
            vec!["x".into()],
            vec![x_trim],
            y[1..].to_vec(),
            true,
            false,
        )
        .unwrap();
        let ols = linreg::ols_fit(&ols_design).unwrap();
        for (name, expect) in [("const", ols.coefficients[0]), ("x", ols.coefficients[1])] {
            let got = fm.coefficient(name).unwrap();
            assert!(
                (got - expect).abs() < 1e-10 * expect.abs().max(1.0),
                "{name}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn fmols_and_ccr_location_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let n = 200;
        let mut x = vec![0.0];
        let mut y = vec![0.0];
        for t in 1..n {
            let v: f64 = rng.sample(StandardNormal);
            let u: f64 = 0.7 * v + 0.5 * rng.sample::<f64, _>(StandardNormal);
            x.push(x[t - 1] + v);
            y.push(2.0 * x[t] + u);
        }
        let shifted: Vec<f64> = x.iter().map(|v| v + 57.0).collect();
        for method in [CointMethod::Fmols, CointMethod::Ccr] {
            let a = coint_fit(
                &dataset(vec![("y", y.clone()), ("x", x.clone())]),
                &spec_xy(),
                method,
                CointTuning::default(),
            )
            .unwrap();
            let b = coint_fit(
                &dataset(vec![("y", y.clone()), ("x", shifted.clone())]),
                &spec_xy(),
                method,
                CointTuning::default(),
            )
            .unwrap();
            let sa = a.coefficient("x").unwrap();
            let sb = b.coefficient("x").unwrap();
            assert!((sa - sb).abs() < 1e-8, "{method}: {sa} vs {sb}");
        }
    }

    #[test]
    fn dols_design_counting() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let n = 40;
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|_| {
                let mut w = vec![0.0];
                for t in 1..n {
                    w.push(w[t - 1] + rng.sample::<f64, _>(StandardNormal));
                }
                w
            })
            .collect();
        let data = dataset(vec![
            ("y", cols[0].clone()),
            ("x1", cols[1].clone()),
            ("x2", cols[2].clone()),
        ]);
        let spec = ModelSpec::new("y", vec!["x1".into(), "x2".into()]);

        let d0 = build_dols_design(&data, &spec, 0).unwrap();
        // intercept + 2 levels + 2 contemporaneous differences
        assert_eq!(d0.k(), 5);
        assert_eq!(d0.n(), n - 1);

        let d1 = build_dols_design(&data, &spec, 1).unwrap();
        // intercept + 2 levels + 6 difference columns; sample shrinks by 2q+1
        assert_eq!(d1.k(), 9);
        assert_eq!(d1.n(), n - 3);
    }

    #[test]
    fn dols_design_matches_explicit_indexing() {
        let n = 30;
        let x: Vec<f64> = (0..n).map(|t| (t * t) as f64 * 0.1).collect();
        let y: Vec<f64> = (0..n).map(|t| t as f64).collect();
        let data = dataset(vec![("y", y.clone()), ("x", x.clone())]);
        let spec = spec_xy();
        let d = build_dols_design(&data, &spec, 1).unwrap();
        // rows are t = 2..n-1 (0-based)
        let lead = d.column("D(x(+1))").unwrap();
        let lag = d.column("D(x(-1))").unwrap();
        let level = d.column("x").unwrap();
        for (i, t) in (2..n - 1).enumerate() {
            assert_eq!(level[i], x[t]);
            assert_eq!(lead[i], x[t + 1] - x[t]);
            assert_eq!(lag[i], x[t - 1] - x[t - 2]);
        }
        assert_eq!(d.response()[0], y[2]);
    }

    #[test]
    fn dols_without_difference_columns_is_ols() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let n = 50;
        let mut x = vec![0.0];
        let mut y = vec![0.0];
        for t in 1..n {
            x.push(x[t - 1] + rng.sample::<f64, _>(StandardNormal));
            y.push(1.0 + 0.5 * x[t] + rng.sample::<f64, _>(StandardNormal));
        }
        let data = dataset(vec![("y", y.clone()), ("x", x.clone())]);
        let d = build_dols_design(&data, &spec_xy(), 0).unwrap();
        let reduced = d.drop_columns(&["D(x)"]).unwrap();
        let fit = linreg::ols_fit(&reduced).unwrap();

        let direct = DesignMatrix::with_deterministics(
            vec!["x".into()],
            vec![x[1..].to_vec()],
            y[1..].to_vec(),
            true,
            false,
        )
        .unwrap();
        let dfit = linreg::ols_fit(&direct).unwrap();
        for j in 0..2 {
            assert!((fit.coefficients[j] - dfit.coefficients[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn too_short_sample_is_rejected() {
        let x: Vec<f64> = (0..15).map(|t| t as f64).collect();
        let y: Vec<f64> = (0..15).map(|t| (t * 2) as f64 + 0.5).collect();
        let data = dataset(vec![("y", y), ("x", x)]);
        assert!(matches!(
            coint_fit(&data, &spec_xy(), CointMethod::Fmols, CointTuning::default()),
            Err(Error::TooShort { .. })
        ));
    }
}
