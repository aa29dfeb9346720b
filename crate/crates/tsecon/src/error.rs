//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse input: {0}")]
    Parse(String),

    #[error("column `{0}` not found in input")]
    MissingColumn(String),

    #[error("non-numeric value `{value}` for column `{column}` at year {year}")]
    NonNumericCell {
        column: String,
        year: i64,
        value: String,
    },

    #[error("year column has a gap: year {0} is missing")]
    YearGap(i64),

    #[error("year column has a duplicate: year {0} appears twice")]
    DuplicateYear(i64),

    #[error("series too short: {got} observations, at least {needed} required")]
    TooShort { got: usize, needed: usize },

    #[error("variable `{0}` not found in dataset")]
    UnknownVariable(String),

    #[error("log transform of `{variable}`: non-positive value {value} at year {year}")]
    NonPositiveLog {
        variable: String,
        value: f64,
        year: i64,
    },

    #[error("transform order {order} is not smaller than series length {length}")]
    OrderTooLarge { order: usize, length: usize },

    #[error("design matrix is rank deficient (columns: {0})")]
    RankDeficient(String),

    #[error("not enough observations: n = {n} with k = {k} parameters")]
    InsufficientObservations { n: usize, k: usize },

    #[error("residual sum of squares is zero: information criteria undefined for a perfect fit")]
    PerfectFit,

    #[error("bandwidth {bandwidth} too large for {n} observations")]
    BandwidthTooLarge { bandwidth: usize, n: usize },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("long-run relationship undefined: |coefficient on lagged level of the dependent| = {0:.3e} below tolerance")]
    DegenerateLongRun(f64),

    #[error("a variable classified as I(2) or higher: {0}; ARDL bounds testing is not valid")]
    IntegratedOfOrderTwo(String),

    #[error("degenerate statistic: {0}")]
    Degenerate(String),

    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
