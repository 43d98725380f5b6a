//! Termwise checks that the series solve the equation and the Cauchy data.

use num_complex::Complex64;

use crate::dn_operator::{
    boundary_apply_monomial, dn_apply_monomial, dn_power_rule_continued, Monomial, PowerRuleResult,
};
use crate::error::{Error, Result};
use crate::report::ResidualReport;
use crate::special_fn::{ks_eval, SeriesEvalConfig};

use super::{cauchy_solution, fundamental_system, CauchyData, ProblemSpec, SeriesSolution, MAX_VERIFY_TERMS};

/// Point at which the boundary operators are also evaluated numerically.
pub const CAUCHY_PROBE_Y: f64 = 1e-6;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `D^γ y^δ` for one series term: composition when every stage converges,
/// otherwise the continued closed form (second field `true`).
fn operator_image(spec: &ProblemSpec, delta: f64) -> Result<(PowerRuleResult, bool)> {
    match dn_apply_monomial(spec.seq(), Monomial::power(delta)) {
        Ok(r) => Ok((r, false)),
        Err(Error::Domain(_)) => Ok((dn_power_rule_continued(spec.seq(), delta)?, true)),
        Err(e) => Err(e),
    }
}

/// `c_n / c_{n−1}` for `n = 1..`, extended on demand.
struct Ratios<'a> {
    sol: &'a SeriesSolution,
    values: Vec<f64>,
}

impl<'a> Ratios<'a> {
    fn new(sol: &'a SeriesSolution) -> Self {
        Self {
            sol,
            values: vec![f64::NAN],
        }
    }

    fn get(&mut self, n: usize) -> Result<f64> {
        while self.values.len() <= n {
            let r = self.sol.coefficient_ratio(self.values.len())?;
            self.values.push(r);
        }
        Ok(self.values[n])
    }
}

/// Smallest `N` with `|c_N z^N| ≤ target` once the ratio bound
/// `|z|·c_{N+1}/c_N < 1/2` holds. `c_n z^n` is carried as one product so
/// that neither factor over- or underflows on its own.
fn truncation_index(ratios: &mut Ratios, z: f64, target: f64) -> Result<usize> {
    if z == 0.0 {
        return Ok(0);
    }
    let mut term = 1.0;
    for n in 0..=MAX_VERIFY_TERMS {
        let next = ratios.get(n + 1)? * z;
        if term <= target && next < 0.5 {
            return Ok(n);
        }
        term *= next;
    }
    Err(Error::TruncationFailure {
        max_terms: MAX_VERIFY_TERMS,
    })
}

/// Residual `D^γ u − λ y^s u` of one fundamental solution on a grid.
///
/// Term `n ≥ 1` of `D^γ u` is paired with term `n − 1` of `λ y^s u`; the
/// operator side comes from the monomial algebra and the pairing is checked
/// to produce equal exponents. The series is cut at `N` chosen per grid point
/// so that the unpaired last term is below `tol/10` relative, and that term
/// is included in the residual. The error is relative to `|λ y^s u|`, or
/// absolute when `λ = 0`.
///
/// Terms in the strip `α_{m−1} ≥ δ` (possible only for `n = 1`, `k = 0` when
/// `γ_m + s + γ_0 ≤ 1`) have a divergent classical composition; their image is
/// taken from the analytically continued closed form and counted in
/// [`ResidualReport::regularized_terms`].
pub fn verify_residual(spec: &ProblemSpec, sol: &SeriesSolution, y_grid: &[f64], tol: f64) -> ResidualReport {
    match residual_inner(spec, sol, y_grid, tol) {
        Ok(r) => r,
        Err(e) => ResidualReport::failed(tol, format!("mode {}: {e}", sol.mode())),
    }
}

fn residual_inner(spec: &ProblemSpec, sol: &SeriesSolution, y_grid: &[f64], tol: f64) -> Result<ResidualReport> {
    if y_grid.is_empty() {
        return Err(crate::error::invalid("empty residual grid"));
    }
    if let Some(y) = y_grid.iter().find(|y| !(**y > 0.0 && y.is_finite())) {
        return Err(crate::error::domain(format!("residual grid needs y > 0, got {y}")));
    }
    let cfg = SeriesEvalConfig::default();
    let (a, b, s) = (sol.step(), sol.base_exponent(), spec.s());
    let lambda = sol.lambda();

    if !operator_image(spec, b)?.0.is_kernel() {
        return Err(crate::error::domain(format!("leading term y^{b} is not annihilated")));
    }

    let mut ratios = Ratios::new(sol);
    let mut series = Vec::with_capacity(y_grid.len());
    let mut n_max = 0;
    for &y in y_grid {
        let z = lambda * y.powf(a);
        let e = ks_eval(sol.ks_params(), z, &cfg)?;
        let n = truncation_index(&mut ratios, z.norm(), 0.1 * tol * e.norm())?;
        n_max = n_max.max(n);
        series.push(e);
    }

    // operator image of y^{an+b}, n = 1..=N
    let mut images = Vec::with_capacity(n_max);
    let mut regularized = 0;
    for n in 1..=n_max {
        let delta = a * n as f64 + b;
        let (img, reg) = operator_image(spec, delta)?;
        regularized += reg as usize;
        let term = img
            .term()
            .ok_or_else(|| crate::error::domain(format!("term n={n} (y^{delta}) unexpectedly annihilated")))?;
        let paired = a * (n - 1) as f64 + b + s;
        if (term.exponent - paired).abs() > 1e-12 * paired.abs().max(1.0) {
            return Err(crate::error::domain(format!(
                "n={n}: operator exponent {} does not match lambda y^s exponent {paired}",
                term.exponent
            )));
        }
        images.push(term);
    }

    let mut worst = (0.0_f64, y_grid[0]);
    for (&y, e) in y_grid.iter().zip(&series) {
        // t_n = c_n (λ y^a)^n; the y^b factor is common to every term
        let z = lambda * y.powf(a);
        let rhs_factor = lambda * y.powf(s);
        let mut t = Complex64::new(1.0, 0.0);
        let mut res = ZERO;
        for (i, img) in images.iter().enumerate() {
            let n = i + 1;
            let rhs = rhs_factor * t;
            t *= z * ratios.get(n)?;
            let du = img.coeff * t * y.powf(img.exponent - a * n as f64 - b);
            res += du - rhs;
        }
        // unpaired last term of λ y^s u
        res -= rhs_factor * t;

        let scale = rhs_factor.norm() * e.norm();
        let err = if scale > 0.0 { res.norm() / scale } else { res.norm() };
        if err > worst.0 || err.is_nan() {
            worst = (err, y);
        }
    }
    let mut report = ResidualReport::new(worst.0, worst.1, n_max + 1, tol);
    report.regularized_terms = regularized;
    Ok(report)
}

/// `lim_{y→0+} D^{α_j} u_k`, from the truncated series.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryLimit {
    /// Sum of the constant terms; every other term has a positive exponent.
    pub value: Complex64,
    /// No term survived as a constant (all annihilated or vanishing).
    pub exact_zero: bool,
    /// `D^{α_j} u_k` evaluated at [`CAUCHY_PROBE_Y`].
    pub probe: Complex64,
    pub terms: usize,
}

/// Applies `D^{α_j}` to every stored term of `sol` and classifies the result
/// by exponent sign. Only the `n = 0` term of mode `k = j` may be a constant;
/// any other constant or negative exponent means the limit does not exist in
/// the termwise sense and is reported as an error.
pub fn boundary_limit(spec: &ProblemSpec, sol: &SeriesSolution, j: usize) -> Result<BoundaryLimit> {
    let (a, b, lambda) = (sol.step(), sol.base_exponent(), sol.lambda());
    let mut value = ZERO;
    let mut exact_zero = true;
    let mut probe = ZERO;
    // weight_n = c_n λ^n
    let mut weight = Complex64::new(1.0, 0.0);
    for n in 0..sol.coeffs().len() {
        if n > 0 {
            weight *= lambda * sol.coefficient_ratio(n)?;
        }
        let delta = a * n as f64 + b;
        let img = boundary_apply_monomial(spec.seq(), j, Monomial::power(delta))?;
        let Some(term) = img.term() else { continue };
        let designated = n == 0 && sol.mode() == j;
        if term.exponent == 0.0 && designated {
            value += weight * term.coeff;
            exact_zero = false;
        } else if term.exponent <= 0.0 || designated {
            return Err(Error::UnsupportedDomain(format!(
                "D^(alpha_{j}) of mode {} term n={n} has exponent {} (no termwise limit at 0)",
                sol.mode(),
                term.exponent
            )));
        }
        if weight != ZERO {
            probe += weight * term.eval(CAUCHY_PROBE_Y);
        }
    }
    Ok(BoundaryLimit {
        value,
        exact_zero,
        probe,
        terms: sol.coeffs().len(),
    })
}

/// Checks `lim_{y→0+} D^{α_j} u = A_j` for the Cauchy solution.
///
/// The symbolic limit decides the verdict; the error of each `A_j` is relative
/// to `|A_j|` (or to `max |A|` when `A_j = 0`). The numeric value at
/// [`CAUCHY_PROBE_Y`] is reported in the note only, since terms with small
/// positive exponents are far from negligible there.
pub fn verify_cauchy_limits(spec: &ProblemSpec, data: &CauchyData, tol: f64) -> ResidualReport {
    match cauchy_inner(spec, data, tol) {
        Ok(r) => r,
        Err(e) => ResidualReport::failed(tol, e.to_string()),
    }
}

fn cauchy_inner(spec: &ProblemSpec, data: &CauchyData, tol: f64) -> Result<ResidualReport> {
    let weights = cauchy_solution(spec, data)?;
    let sols = fundamental_system(spec, &SeriesEvalConfig::default())?;
    let a_max = data.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let mut max_err = 0.0_f64;
    let mut max_probe = 0.0_f64;
    let mut terms = 0;
    for (j, target) in data.values().iter().enumerate() {
        let mut limit = ZERO;
        let mut probe = ZERO;
        for (sol, d) in sols.iter().zip(weights.values()) {
            let bl = boundary_limit(spec, sol, j)?;
            limit += d * bl.value;
            probe += d * bl.probe;
            terms = terms.max(bl.terms);
        }
        let scale = if target.norm() > 0.0 {
            target.norm()
        } else if a_max > 0.0 {
            a_max
        } else {
            1.0
        };
        max_err = max_err.max((limit - target).norm() / scale);
        max_probe = max_probe.max((probe - target).norm() / scale);
    }
    Ok(ResidualReport::new(max_err, 0.0, terms, tol)
        .with_note(format!("probe y={CAUCHY_PROBE_Y:e} rel_dev={max_probe:.3e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dn_operator::{caputo_sequence, DnSequence};
    use crate::solver::{default_grid, fundamental_solution, linspace};
    use crate::special_fn::gamma;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(g: &[f64], s: f64, lambda: Complex64) -> ProblemSpec {
        ProblemSpec::new(DnSequence::new(g.to_vec()).unwrap(), s, lambda).unwrap()
    }

    fn cfg() -> SeriesEvalConfig {
        SeriesEvalConfig::default()
    }

    #[test]
    fn zero_lambda_residual_is_exact() {
        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(0.0, 0.0));
        for k in 0..2 {
            let u = fundamental_solution(&p, k, &cfg()).unwrap();
            let r = verify_residual(&p, &u, &default_grid(), 1e-10);
            assert!(r.passed && r.max_rel_error == 0.0, "{r}");
        }
    }

    #[test]
    fn classical_ode_residual() {
        let p = spec(&[1.0, 1.0], 1.0, c(1.5, -0.5));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let r = verify_residual(&p, &u, &linspace(0.1, 2.0, 20), 1e-10);
        assert!(r.passed, "{r}");
        assert_eq!(r.regularized_terms, 0);
    }

    #[test]
    fn fractional_residuals() {
        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(-2.0, 1.0));
        for k in 0..2 {
            let u = fundamental_solution(&p, k, &cfg()).unwrap();
            let r = verify_residual(&p, &u, &linspace(0.1, 1.0, 10), 1e-8);
            assert!(r.passed, "k={k}: {r}");
            // a tighter target only costs more terms
            let r = verify_residual(&p, &u, &linspace(0.1, 1.0, 10), 1e-13);
            assert!(r.passed, "k={k}: {r}");
        }
    }

    #[test]
    fn strip_term_is_regularized() {
        // γ_m + s + γ_0 = 0.9 ≤ 1: the n = 1 term of u_0 needs the continued form
        let p = spec(&[0.5, 0.8, 0.4], 0.0, c(1.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let r = verify_residual(&p, &u, &linspace(0.1, 1.0, 10), 1e-8);
        assert!(r.passed, "{r}");
        assert_eq!(r.regularized_terms, 1);
        // and its Cauchy limits are not termwise
        let data = CauchyData::new(&p, vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!(!verify_cauchy_limits(&p, &data, 1e-8).passed);
    }

    #[test]
    fn truncation_is_not_silent() {
        let p = spec(&[0.1, 0.95], 0.0, c(10.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let r = verify_residual(&p, &u, &[1.0], 1e-8);
        assert!(!r.passed);
        let r = verify_residual(&p, &u, &[-1.0], 1e-8);
        assert!(!r.passed && r.note.is_some());
    }

    #[test]
    fn boundary_matrix_is_diagonal() {
        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(1.3, -0.4));
        let sols = fundamental_system(&p, &cfg()).unwrap();
        for (k, u) in sols.iter().enumerate() {
            for j in 0..2 {
                let bl = boundary_limit(&p, u, j).unwrap();
                if j == k {
                    let want = gamma(1.0 + p.seq().alphas()[k]).unwrap();
                    assert!((bl.value.re - want).abs() < 1e-14 * want);
                    assert!(!bl.exact_zero);
                } else {
                    assert!(bl.exact_zero && bl.value == ZERO);
                }
            }
        }
    }

    #[test]
    fn cauchy_examples() {
        let p = ProblemSpec::new(caputo_sequence(1.7, 2).unwrap(), 1.0, c(1.0, 0.0)).unwrap();
        let data = CauchyData::new(&p, vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let r = verify_cauchy_limits(&p, &data, 1e-8);
        assert!(r.passed, "{r}");

        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(0.0, 0.0));
        let data = CauchyData::new(&p, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = verify_cauchy_limits(&p, &data, 1e-8);
        assert!(r.passed && r.max_rel_error < 1e-15, "{r}");
    }
}
