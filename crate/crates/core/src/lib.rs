//! Fundamental systems of solutions for the degenerate fractional equation
//!
//! ```text
//! D^{γ_0,…,γ_m} u(y) = λ y^s u(y),   y > 0,  s ≥ 0,  λ ∈ ℂ
//! ```
//!
//! where `D^{γ_0,…,γ_m}` is the Dzhrbashyan-Nersesyan derivative, i.e. the
//! composition `D^{γ_m−1} D^{γ_{m−1}} ⋯ D^{γ_0}` of Riemann-Liouville
//! operators. The solutions are series in Kilbas-Saigo functions
//!
//! ```text
//! u_k(y) = y^{α_k} E_{α, (α+s)/α, (α_k+s)/α}(λ y^{α+s}),   k = 0..m−1
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`special_fn`]: gamma kernels, Mittag-Leffler and Kilbas-Saigo series.
//! * [`dn_operator`]: the operator as an exact algebra on monomials `C·y^δ`.
//! * [`solver`]: fundamental, general and Cauchy solutions plus residual checks.
//! * [`oracle`]: independent quadrature/finite-difference checks of the algebra.
//! * [`suites`]: randomized verification suites shared by the CLI and tests.
//! * [`cli`]: the `dnfrac` command-line front end.
//!
//! Grid evaluation and randomized trials run on rayon when the `parallel`
//! feature is enabled (the default) and sequentially otherwise.

// `!(x > 0.0)` guards are meant to reject NaN as well
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dn_operator;
pub mod error;
pub mod oracle;
pub mod par;
pub mod report;
pub mod solver;
pub mod special_fn;
pub mod suites;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use report::ResidualReport;
