//! Power-series evaluation of the Mittag-Leffler and Kilbas-Saigo functions.
//!
//! Both functions are entire, `Σ c_i z^i` with positive coefficients whose
//! successive ratios `c_{i+1}/c_i` decrease monotonically to zero. The sum is
//! stopped after two consecutive terms below `rel_tol·|S|` once the ratio
//! bound `|z|·c_{i+1}/c_i < 1/2` holds; from then on the tail is dominated by
//! a geometric series with ratio 1/2, so the remainder is at most the last
//! accepted term.
//!
//! Terms and the running sum are carried in double-double arithmetic. This
//! does not help when the coefficients themselves are only known to `f64`
//! precision, but it removes summation error entirely, which is what limits
//! alternating sums such as `e^{-10}`.

use num_complex::Complex64;

use super::dd::{ComplexDd, Dd};
use super::gamma::{gamma, gamma_ratio, gamma_ratio_dd};
use crate::error::{domain, invalid, Error, Result};

/// Largest `|z|` accepted by [`ml_eval`].
pub const ML_MAX_ABS_Z: f64 = 100.0;

/// Stopping rule parameters shared by every series in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesEvalConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesEvalConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 100_000,
        }
    }
}

impl SeriesEvalConfig {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        let cfg = Self { rel_tol, max_terms };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1.0) {
            return Err(invalid(format!("rel_tol must lie in (0, 1), got {}", self.rel_tol)));
        }
        if self.max_terms < 1 {
            return Err(invalid("max_terms must be at least 1"));
        }
        Ok(())
    }
}

/// Parameters `(α, m, l)` of the Kilbas-Saigo function `E_{α,m,l}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KilbasSaigoParams {
    alpha: f64,
    m_param: f64,
    l_param: f64,
}

impl KilbasSaigoParams {
    /// Validates `α > 0`, `m > 0` and `αl + 1 > 0`. The last condition keeps
    /// every gamma argument `α(jm + l) + 1` positive, since they grow with `j`.
    pub fn new(alpha: f64, m_param: f64, l_param: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(invalid(format!("Kilbas-Saigo alpha must be > 0, got {alpha}")));
        }
        if !m_param.is_finite() || m_param <= 0.0 {
            return Err(invalid(format!("Kilbas-Saigo m must be > 0, got {m_param}")));
        }
        if !l_param.is_finite() || alpha * l_param + 1.0 <= 0.0 {
            return Err(invalid(format!(
                "Kilbas-Saigo parameters need alpha*l + 1 > 0, got alpha={alpha}, l={l_param}"
            )));
        }
        Ok(Self {
            alpha,
            m_param,
            l_param,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn m_param(&self) -> f64 {
        self.m_param
    }

    pub fn l_param(&self) -> f64 {
        self.l_param
    }

    /// `c_{i+1} / c_i = Γ(α(im + l) + 1) / Γ(α(im + l + 1) + 1)`.
    pub fn coefficient_ratio(&self, i: usize) -> Result<f64> {
        gamma_ratio(self.gamma_arg(i), 1.0, self.alpha + 1.0)
    }

    fn coefficient_ratio_dd(&self, i: usize) -> Result<Dd> {
        gamma_ratio_dd(self.gamma_arg(i), 1.0, self.alpha + 1.0)
    }

    fn gamma_arg(&self, i: usize) -> f64 {
        self.alpha * (i as f64 * self.m_param + self.l_param)
    }
}

/// Parameters `(α, β)` of the Mittag-Leffler function `E_{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MittagLefflerParams {
    alpha: f64,
    beta: f64,
}

impl MittagLefflerParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(invalid(format!("Mittag-Leffler alpha must be > 0, got {alpha}")));
        }
        if !beta.is_finite() || beta <= 0.0 {
            return Err(invalid(format!("Mittag-Leffler beta must be > 0, got {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Result of a series summation, with the diagnostics the solver needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: Complex64,
    /// Number of terms added to the sum.
    pub terms: usize,
    /// `Σ |term_i|`; the ratio to `|value|` is the condition number of the sum.
    pub abs_sum: f64,
}

impl SeriesSum {
    pub fn condition(&self) -> f64 {
        let v = self.value.norm();
        if v == 0.0 {
            f64::INFINITY
        } else {
            self.abs_sum / v
        }
    }
}

/// Sums `Σ t_i` with `t_0 = first`, `t_{i+1} = t_i · z · ratio(i)`.
fn sum_ratio_series<F>(first: Dd, z: Complex64, cfg: &SeriesEvalConfig, mut ratio: F) -> Result<SeriesSum>
where
    F: FnMut(usize) -> Result<Dd>,
{
    cfg.validate()?;
    let zdd = ComplexDd::from_c64(z);
    let zabs = z.norm();
    let mut term = ComplexDd::real(first);
    let mut sum = ComplexDd::default();
    let mut abs_sum = 0.0;
    let mut small_run = 0usize;

    for i in 0..cfg.max_terms {
        sum += term;
        let term_abs = term.norm_hi();
        abs_sum += term_abs;
        let sum_abs = sum.norm_hi();
        if !sum_abs.is_finite() || !term_abs.is_finite() {
            return Err(domain(format!("series overflow after {} terms at |z| = {zabs}", i + 1)));
        }

        small_run = if term_abs <= cfg.rel_tol * sum_abs {
            small_run + 1
        } else {
            0
        };
        let r = ratio(i)?;
        if small_run >= 2 && r.hi * zabs < 0.5 {
            return Ok(SeriesSum {
                value: sum.to_c64(),
                terms: i + 1,
                abs_sum,
            });
        }
        term = term * zdd * r;
    }
    Err(Error::TruncationFailure {
        max_terms: cfg.max_terms,
    })
}

/// Mittag-Leffler function `E_{α,β}(z) = Σ z^n / Γ(αn + β)` for `|z| ≤ 100`.
pub fn ml_eval(params: MittagLefflerParams, z: Complex64, cfg: &SeriesEvalConfig) -> Result<Complex64> {
    ml_eval_detailed(params, z, cfg).map(|s| s.value)
}

pub fn ml_eval_detailed(params: MittagLefflerParams, z: Complex64, cfg: &SeriesEvalConfig) -> Result<SeriesSum> {
    if !(z.norm() <= ML_MAX_ABS_Z) {
        return Err(domain(format!(
            "Mittag-Leffler series evaluation is limited to |z| <= {ML_MAX_ABS_Z}, got |z| = {}",
            z.norm()
        )));
    }
    let MittagLefflerParams { alpha, beta } = params;
    let first = Dd::ONE / Dd::from(gamma(beta)?);
    // Γ(αn + β) / Γ(α(n+1) + β)
    sum_ratio_series(first, z, cfg, |n| gamma_ratio_dd(alpha * n as f64 + beta, 0.0, alpha))
}

/// Coefficients `c_0..=c_n` of the Kilbas-Saigo series.
pub fn ks_coefficients(params: KilbasSaigoParams, n: usize) -> Result<Vec<f64>> {
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(1.0);
    for i in 1..=n {
        let prev = coeffs[i - 1];
        coeffs.push(prev * params.coefficient_ratio(i - 1)?);
    }
    Ok(coeffs)
}

/// Kilbas-Saigo function `E_{α,m,l}(z) = Σ c_i z^i`.
pub fn ks_eval(params: KilbasSaigoParams, z: Complex64, cfg: &SeriesEvalConfig) -> Result<Complex64> {
    ks_eval_detailed(params, z, cfg).map(|s| s.value)
}

pub fn ks_eval_detailed(params: KilbasSaigoParams, z: Complex64, cfg: &SeriesEvalConfig) -> Result<SeriesSum> {
    sum_ratio_series(Dd::ONE, z, cfg, |i| params.coefficient_ratio_dd(i))
}
