use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input parameter is out of its domain (negative, non-finite, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation needs the squeezed-thermal form `c2 = -c1`.
    #[error("covariance matrix is not in STS form (c1 = {c1}, c2 = {c2})")]
    NotStsForm { c1: f64, c2: f64 },

    /// `Δ² - 4 det C` is negative beyond round-off.
    #[error("inconsistent covariance matrix: discriminant {0} < 0")]
    InconsistentSpectrum(f64),

    #[error("product state (c = 0): {0} is undefined")]
    ProductState(&'static str),

    #[error("unphysical covariance matrix: {0}")]
    Unphysical(String),

    #[error("criterion is not monotone in r near r = {r}")]
    NonMonotone { r: f64 },

    #[error("invalid scan spec: {0}")]
    Spec(String),

    #[error("quantity {0} was not scanned")]
    MissingQuantity(String),
}
