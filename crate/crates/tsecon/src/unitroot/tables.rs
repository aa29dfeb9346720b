//! Embedded finite-sample critical values for the unit-root tests.
//!
//! ADF and Phillips-Perron tau statistics (and the GLS-demeaned variant,
//! which shares the no-deterministics tau distribution) use the MacKinnon
//! (2010) response-surface coefficients: cv = b0 + b1/T + b2/T^2 + b3/T^3
//! with T the observation count of the zero-lag test regression. The
//! GLS-detrended (constant + trend) case uses the Elliott-Rothenberg-Stock
//! (1996) Table 1 values with interpolation in 1/T.
//!
//! The crate's own Monte Carlo engine revalidates these tables; see the
//! acceptance suite.

/// Response-surface coefficients: rows are 1%, 5%, 10%.
type Surface = [[f64; 4]; 3];

/// No deterministic terms.
pub const MACKINNON_NC: Surface = [
    [-2.56574, -2.2358, -3.627, 0.0],
    [-1.94100, -0.2686, -3.365, 31.223],
    [-1.61682, 0.2656, -2.714, 25.364],
];

/// Constant.
pub const MACKINNON_C: Surface = [
    [-3.43035, -6.5393, -16.786, -79.433],
    [-2.86154, -2.8903, -4.234, -40.040],
    [-2.56677, -1.5384, -2.809, 0.0],
];

/// Constant and linear trend.
pub const MACKINNON_CT: Surface = [
    [-3.95877, -9.0531, -28.428, -134.155],
    [-3.41049, -4.3904, -9.036, -45.374],
    [-3.12705, -2.5856, -3.925, -22.380],
];

/// Evaluate a response surface at regression sample size `t`.
pub fn surface_at(surface: &Surface, t: f64) -> [f64; 3] {
    let mut out = [0.0; 3];
    for (i, row) in surface.iter().enumerate() {
        out[i] = row[0] + row[1] / t + row[2] / (t * t) + row[3] / (t * t * t);
    }
    out
}

/// Elliott-Rothenberg-Stock (1996) Table 1, GLS-detrended case
/// (constant + trend). Columns: 1%, 5%, 10%. Row order: T = 50, 100, 200,
/// and the asymptotic row.
pub const ERS_TREND: [(f64, [f64; 3]); 4] = [
    (50.0, [-3.77, -3.19, -2.89]),
    (100.0, [-3.58, -3.03, -2.74]),
    (200.0, [-3.46, -2.93, -2.64]),
    (f64::INFINITY, [-3.48, -2.89, -2.57]),
];

/// Finite-sample quantiles for the GLS-demeaned statistic.
///
/// The demeaned statistic converges to the no-deterministics tau
/// distribution, but the convergence is slow (the GLS weight on the mean is
/// O(1/T)), so asymptotic values understate the tail for the sample sizes
/// this crate targets. Rows were simulated with the crate's own engine:
/// driftless Gaussian random walks, zero-lag test regression, 400,000
/// replications per sample size (seed 777); the final row is the MacKinnon
/// asymptote the sequence converges to. First column is the regression
/// sample size T = n - 1.
pub const DFGLS_DEMEANED: [(f64, [f64; 3]); 15] = [
    (24.0, [-3.1903, -2.5122, -2.2028]),
    (31.0, [-3.0476, -2.4064, -2.1004]),
    (39.0, [-2.9677, -2.3338, -2.0288]),
    (49.0, [-2.8847, -2.2675, -1.9591]),
    (64.0, [-2.8211, -2.2060, -1.9021]),
    (79.0, [-2.7872, -2.1693, -1.8587]),
    (99.0, [-2.7426, -2.1247, -1.8133]),
    (129.0, [-2.7010, -2.0892, -1.7765]),
    (159.0, [-2.6850, -2.0687, -1.7545]),
    (199.0, [-2.6678, -2.0407, -1.7276]),
    (299.0, [-2.6380, -2.0139, -1.6921]),
    (399.0, [-2.6096, -1.9914, -1.6747]),
    (599.0, [-2.5891, -1.9753, -1.6545]),
    (799.0, [-2.5954, -1.9715, -1.6500]),
    (f64::INFINITY, [-2.56574, -1.94100, -1.61682]),
];

fn interpolate_inverse_t(table: &[(f64, [f64; 3])], t: f64) -> [f64; 3] {
    if t <= table[0].0 {
        return table[0].1;
    }
    for w in table.windows(2) {
        let (t0, lo) = w[0];
        let (t1, hi) = w[1];
        if t <= t1 {
            // interpolate in 1/T so the asymptotic row is reachable
            let x = 1.0 / t;
            let x0 = 1.0 / t0;
            let x1 = if t1.is_infinite() { 0.0 } else { 1.0 / t1 };
            let frac = (x - x0) / (x1 - x0);
            let mut out = [0.0; 3];
            for i in 0..3 {
                out[i] = lo[i] + frac * (hi[i] - lo[i]);
            }
            return out;
        }
    }
    table[table.len() - 1].1
}

/// Interpolate the ERS trend table linearly in 1/T. Samples below the
/// smallest tabulated size fall back on the T = 50 row.
pub fn ers_trend_at(t: f64) -> [f64; 3] {
    interpolate_inverse_t(&ERS_TREND, t)
}

/// Interpolate the simulated GLS-demeaned table linearly in 1/T.
pub fn dfgls_demeaned_at(t: f64) -> [f64; 3] {
    interpolate_inverse_t(&DFGLS_DEMEANED, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn asymptotic_values_match_published_limits() {
        let c = surface_at(&MACKINNON_C, 1.0e12);
        assert!((c[0] + 3.43035).abs() < 1e-9);
        assert!((c[1] + 2.86154).abs() < 1e-9);
        assert!((c[2] + 2.56677).abs() < 1e-9);
    }

    #[test]
    fn ers_interpolation_hits_table_rows() {
        assert_eq!(ers_trend_at(50.0), ERS_TREND[0].1);
        assert_eq!(ers_trend_at(100.0), ERS_TREND[1].1);
        let mid = ers_trend_at(150.0);
        assert!(mid[1] < ERS_TREND[2].1[1] && mid[1] > ERS_TREND[1].1[1]);
        let huge = ers_trend_at(1.0e9);
        assert!((huge[1] - (-2.89)).abs() < 1e-3);
    }
}
