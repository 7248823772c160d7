//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("parameter {value} outside domain [{lo}, {hi}]")]
    OutsideDomain { value: f64, lo: f64, hi: f64 },

    #[error("singular curve point: |r'(t)| = 0 near t = {t}")]
    SingularPoint { t: f64 },

    #[error("degenerate parametrization: r_u x r_v = 0 at (u, v) = ({u}, {v})")]
    DegenerateParametrization { u: f64, v: f64 },

    #[error("degenerate metric: E*G - F^2 = {det} <= 0")]
    DegenerateMetric { det: f64 },

    #[error("layer coordinates break down: {0}")]
    LayerBreakdown(String),

    #[error("constraint matrix is singular at the sample point; constraints are not second class there")]
    NotSecondClassAtPoint,

    #[error("degenerate latitude: theta = {theta} touches a pole")]
    DegenerateLatitude { theta: f64 },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("eigensolver failed: {0}")]
    SolverFailure(String),

    #[error("invalid usage: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
