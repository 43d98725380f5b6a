//! Gamma kernels and the entire functions the solutions are built from.

mod dd;
mod gamma;
mod series;

pub use gamma::{gamma, gamma_ratio, log_gamma, MAX_GAMMA_ARG};
pub use series::{
    ks_coefficients, ks_eval, ks_eval_detailed, ml_eval, ml_eval_detailed, KilbasSaigoParams, MittagLefflerParams,
    SeriesEvalConfig, SeriesSum, ML_MAX_ABS_Z,
};
