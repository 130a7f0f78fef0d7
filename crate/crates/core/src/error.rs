use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("director has zero length")]
    ZeroDirector,
    #[error("argument out of domain: {0}")]
    Domain(&'static str),
    #[error("impedance resonance: d2*k is within {distance:e} of zeta")]
    ImpedancePole { distance: f64 },
    #[error("no total internal reflection: nT = {n_t} exceeds n = {n}")]
    NoTotalInternalReflection { n: f64, n_t: f64 },
    #[error("grid too coarse: {points_per_wavelength:.2} points per wavelength (need 8)")]
    UnderResolved { points_per_wavelength: f64 },
    #[error("unsupported boundary configuration: {0}")]
    UnsupportedBoundary(&'static str),
    #[error("boundary rows left unset on {count} nodes")]
    MissingBoundary { count: usize },
    #[error("singular system at pivot {pivot}")]
    Singular { pivot: usize },
    #[error("solver did not converge: relative residual {residual:e} after {iterations} iterations")]
    NotConverged { residual: f64, iterations: usize },
    #[error("time step {dt:e} exceeds stability limit {dt_max:e}")]
    Unstable { dt: f64, dt_max: f64 },
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and positive",
        })
    }
}

pub(crate) fn check_nonnegative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and non-negative",
        })
    }
}
