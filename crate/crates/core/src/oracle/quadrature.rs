//! Tanh-sinh quadrature for `∫_0^1 x^p (1−x)^q dx` style integrands.
//!
//! The substitution `x = 1/(1+e^{−u})`, `u = π sinh t` gives
//! `dx = π cosh t · x(1−x) dt`. Both `ln x` and `ln(1−x)` are formed directly
//! from `u`, so points arbitrarily close to either endpoint are represented
//! without cancellation and the integrand may be evaluated in log space.

use std::f64::consts::PI;

/// `(ln x, ln(1−x))` at `u`.
fn log_nodes(u: f64) -> (f64, f64) {
    // ln(1/(1+e^{−u})) = −softplus(−u)
    (-softplus(-u), -softplus(u))
}

fn softplus(v: f64) -> f64 {
    if v > 0.0 {
        v + (-v).exp().ln_1p()
    } else {
        v.exp().ln_1p()
    }
}

/// Integrates `exp(g(ln x, ln(1−x)))` over `(0, 1)`.
///
/// `t` runs over `[−t_lo, t_hi]`; level `l` has step `2^{−l}`, and the
/// estimates of all levels `0..=levels` are returned so the caller can judge
/// convergence.
pub(crate) fn tanh_sinh_log<G>(g: G, t_lo: f64, t_hi: f64, levels: u32) -> Vec<f64>
where
    G: Fn(f64, f64) -> f64,
{
    let node = |t: f64| {
        let u = PI * t.sinh();
        let (lx, l1mx) = log_nodes(u);
        let lw = (PI * t.cosh()).ln() + lx + l1mx;
        (g(lx, l1mx) + lw).exp()
    };

    let mut estimates = Vec::with_capacity(levels as usize + 1);
    // level 0: integer nodes
    let mut sum = node(0.0);
    let mut k = 1.0;
    while k <= t_hi {
        sum += node(k);
        k += 1.0;
    }
    let mut k = 1.0;
    while k <= t_lo {
        sum += node(-k);
        k += 1.0;
    }
    let mut h = 1.0;
    estimates.push(sum * h);

    for _ in 1..=levels {
        h *= 0.5;
        // new nodes are the odd multiples of h
        let mut t = h;
        while t <= t_hi {
            sum += node(t);
            t += 2.0 * h;
        }
        let mut t = h;
        while t <= t_lo {
            sum += node(-t);
            t += 2.0 * h;
        }
        estimates.push(sum * h);
    }
    estimates
}

/// Half-width in `t` beyond which an endpoint factor decaying like
/// `e^{−rate·|u|}` is below `e^{−50}`.
pub(crate) fn cutoff(rate: f64) -> f64 {
    const CAP: f64 = 20.0;
    if rate <= 0.0 {
        return CAP;
    }
    (50.0 / (PI * rate)).asinh().min(CAP)
}
