//! Numerical cross-checks for the monomial algebra.
//!
//! Riemann-Liouville integrals of `t^δ` are computed by tanh-sinh quadrature
//! of the defining convolution, and derivatives by a Richardson-extrapolated
//! central difference of that quadrature. Nothing here uses the power rule.

mod quadrature;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dn_operator::{dn_trace, rl_step, DnSequence, Monomial, PowerRuleResult};
use crate::error::{domain, invalid, Error, Result};
use crate::par::{self, Execution};
use crate::report::ResidualReport;
use crate::special_fn::gamma;

use quadrature::{cutoff, tanh_sinh_log};

/// Tolerance of [`validate_algebra`]; limited by the finite-difference step.
pub const ORACLE_TOL: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Tanh-sinh refinement levels; the finest step is `2^{−levels}`.
    pub levels: u32,
    pub abs_tol: f64,
    /// Finite-difference step relative to `y`.
    pub diff_step_rel: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            levels: 10,
            abs_tol: 1e-9,
            diff_step_rel: 1e-5,
        }
    }
}

impl QuadratureConfig {
    pub fn new(levels: u32, abs_tol: f64, diff_step_rel: f64) -> Result<Self> {
        let cfg = Self {
            levels,
            abs_tol,
            diff_step_rel,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(4..=14).contains(&self.levels) {
            return Err(invalid(format!(
                "quadrature levels must lie in [4, 14], got {}",
                self.levels
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(invalid(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if !(self.diff_step_rel > 0.0 && self.diff_step_rel < 0.1) {
            return Err(invalid(format!(
                "diff_step_rel must lie in (0, 0.1), got {}",
                self.diff_step_rel
            )));
        }
        Ok(())
    }
}

/// `I^σ t^δ` at `y`, i.e. `1/Γ(σ) ∫_0^y (y−t)^{σ−1} t^δ dt`, by quadrature.
///
/// With `t = yx` the integral becomes `y^{σ+δ} ∫_0^1 (1−x)^{σ−1} x^δ dx`.
pub fn rl_integral_numeric(sigma: f64, delta: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(domain(format!("integral order must be > 0, got {sigma}")));
    }
    if !(delta > -1.0 && delta.is_finite()) {
        return Err(domain(format!("integrand t^{delta} is not integrable at 0")));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(format!("y must be > 0, got {y}")));
    }
    let est = tanh_sinh_log(
        |lx, l1mx| delta * lx + (sigma - 1.0) * l1mx,
        cutoff(delta + 1.0),
        cutoff(sigma),
        cfg.levels,
    );
    let scale = y.powf(sigma + delta) / gamma(sigma)?;
    let n = est.len();
    let value = est[n - 1] * scale;
    let change = (est[n - 1] - est[n - 2]).abs() * scale.abs();
    if !value.is_finite() || change > cfg.abs_tol * value.abs().max(1.0) {
        return Err(Error::ConvergenceFailure(format!(
            "I^{sigma} t^{delta} at y={y}: last level changed the estimate by {change:e}"
        )));
    }
    Ok(value)
}

/// `D^γ t^δ = d/dy I^{1−γ} t^δ` at `y` for `0 < γ ≤ 1`.
///
/// Central differences at steps `h` and `2h`, combined as `(4D_h − D_{2h})/3`.
pub fn rl_derivative_numeric(gamma_ord: f64, delta: f64, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(gamma_ord > 0.0 && gamma_ord <= 1.0) {
        return Err(domain(format!("derivative order must lie in (0, 1], got {gamma_ord}")));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(format!("y must be > 0, got {y}")));
    }
    cfg.validate()?;
    let sigma = 1.0 - gamma_ord;
    let f = |x: f64| {
        if sigma == 0.0 {
            Ok(x.powf(delta))
        } else {
            rl_integral_numeric(sigma, delta, x, cfg)
        }
    };
    let h = y * cfg.diff_step_rel;
    let d1 = (f(y + h)? - f(y - h)?) / (2.0 * h);
    let d2 = (f(y + 2.0 * h)? - f(y - 2.0 * h)?) / (4.0 * h);
    Ok((4.0 * d1 - d2) / 3.0)
}

/// Numeric `I^σ` of a monomial at `y`; order 0 is the identity.
fn integrate_monomial(sigma: f64, input: Monomial, y: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if input.is_zero() {
        return Ok(0.0);
    }
    let base = if sigma == 0.0 {
        y.powf(input.exponent)
    } else {
        rl_integral_numeric(sigma, input.exponent, y, cfg)?
    };
    Ok(input.coeff.re * base)
}

/// Algebra-vs-numeric discrepancy: relative when the algebra gives a term,
/// the numeric magnitude itself when it gives the kernel.
fn discrepancy(algebraic: &PowerRuleResult, y: f64, numeric: f64) -> f64 {
    match algebraic {
        PowerRuleResult::Kernel => numeric.abs(),
        PowerRuleResult::Term(m) => {
            let a = m.eval(y).re;
            (a - numeric).abs() / a.abs()
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Trial {
    gamma: f64,
    delta: f64,
    y: f64,
    /// `{γ_0, γ_1}` and input exponent for the stage-by-stage check.
    seq: [f64; 2],
    seq_delta: f64,
}

const KERNEL_DRAW_PROB: f64 = 0.2;

fn draw_trial(rng: &mut ChaCha8Rng) -> Trial {
    // (0, 1]
    let gamma = 1.0 - rng.random_range(0.0..1.0);
    let kernel = gamma > 0.1 && rng.random_bool(KERNEL_DRAW_PROB);
    let delta = if kernel {
        gamma - 1.0
    } else {
        rng.random_range(-0.9..3.0)
    };
    let y = rng.random_range(0.2..=2.0);

    let g0 = 1.0 - rng.random_range(0.0..1.0);
    let g1 = 1.0 - rng.random_range(0.0..g0);
    let alpha0 = g0 - 1.0;
    let seq_delta = if rng.random_bool(KERNEL_DRAW_PROB) {
        alpha0
    } else {
        rng.random_range(alpha0 + 0.05..3.0)
    };
    Trial {
        gamma,
        delta,
        y,
        seq: [g0, g1],
        seq_delta,
    }
}

fn run_trial(t: &Trial, cfg: &QuadratureConfig) -> Result<(f64, String)> {
    let mut worst = (0.0, String::new());
    let mut note = |err: f64, what: String| {
        if err > worst.0 || err.is_nan() {
            worst = (err, what);
        }
    };

    let algebraic = rl_step(t.gamma, Monomial::power(t.delta))?;
    let numeric = rl_derivative_numeric(t.gamma, t.delta, t.y, cfg)?;
    note(
        discrepancy(&algebraic, t.y, numeric),
        format!("rl_step gamma={} delta={} y={}", t.gamma, t.delta, t.y),
    );

    let seq = DnSequence::new(t.seq.to_vec())?;
    let trace = dn_trace(&seq, Monomial::power(t.seq_delta))?;
    let input = Monomial::power(t.seq_delta);
    let sigma0 = 1.0 - t.seq[0];
    let sigma1 = 1.0 - t.seq[1];
    let label = |stage: usize| format!("trace {:?} delta={} stage {stage} y={}", t.seq, t.seq_delta, t.y);

    let stage0 = integrate_monomial(sigma0, input, t.y, cfg)?;
    note(discrepancy(&trace[0].result, t.y, stage0), label(0));

    let stage1 = rl_derivative_numeric(t.seq[0], t.seq_delta, t.y, cfg)?;
    note(discrepancy(&trace[1].result, t.y, stage1), label(1));

    if let (Some(prev), Some(step)) = (trace[1].result.term(), trace.get(2)) {
        let stage2 = integrate_monomial(sigma1, prev, t.y, cfg)?;
        note(discrepancy(&step.result, t.y, stage2), label(2));
    }
    Ok(worst)
}

/// Randomized comparison of the monomial algebra with the quadrature oracle.
///
/// Each trial checks one `rl_step` against [`rl_derivative_numeric`] and the
/// full stage trace of one `m = 1` sequence against numeric stages applied to
/// the preceding algebraic monomial. About a fifth of the draws are kernel
/// powers, where the numeric result itself must be below the tolerance.
pub fn validate_algebra(seed: u64, trials: usize, cfg: &QuadratureConfig) -> Result<ResidualReport> {
    validate_algebra_with(seed, trials, cfg, Execution::default())
}

pub fn validate_algebra_with(
    seed: u64,
    trials: usize,
    cfg: &QuadratureConfig,
    exec: Execution,
) -> Result<ResidualReport> {
    if trials == 0 {
        return Err(invalid("validate_algebra needs at least one trial"));
    }
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<Trial> = (0..trials).map(|_| draw_trial(&mut rng)).collect();
    let results = par::map(&draws, exec, |t| (t.y, run_trial(t, cfg)));

    let mut report: Option<ResidualReport> = None;
    for (y, r) in results {
        let one = match r {
            Ok((err, what)) => ResidualReport::new(err, y, trials, ORACLE_TOL).with_note(what),
            Err(e) => ResidualReport::failed(ORACLE_TOL, e.to_string()),
        };
        report = Some(match report {
            None => one,
            Some(acc) => acc.merge(one),
        });
    }
    Ok(report.expect("at least one trial"))
}
