//! Fundamental system, general solution and Cauchy problem for
//! `D^{γ_0,…,γ_m} u = λ y^s u`.
//!
//! Mode `k` is the series `u_k = Σ c_n λ^n y^{an+b}` with `a = α + s`,
//! `b = α_k` and `c_n = c_{n−1} Γ(an+b+1−α)/Γ(an+b+1)`, which is
//! `y^{α_k} E_{α,a/α,(α_k+s)/α}(λ y^a)`.

mod verify;

pub use verify::{boundary_limit, verify_cauchy_limits, verify_residual, BoundaryLimit, CAUCHY_PROBE_Y};

use num_complex::Complex64;

use crate::dn_operator::DnSequence;
use crate::error::{domain, invalid, Error, Result};
use crate::par::{self, Execution};
use crate::special_fn::{
    gamma, gamma_ratio, ks_coefficients, ks_eval_detailed, KilbasSaigoParams, SeriesEvalConfig, SeriesSum,
};

/// Largest `|λ|` accepted by [`ProblemSpec::new`].
pub const MAX_ABS_LAMBDA: f64 = 10.0;

/// Hard cap on the number of series terms used by verification.
pub const MAX_VERIFY_TERMS: usize = 10_000;

const SUBNORMAL_GUARD: f64 = 1e-290;

/// `y` up to which [`fundamental_solution`] pre-computes coefficients.
const COEFF_REF_Y: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    seq: DnSequence,
    s: f64,
    lambda: Complex64,
}

impl ProblemSpec {
    pub fn new(seq: DnSequence, s: f64, lambda: Complex64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(invalid(format!("degeneracy exponent s must be >= 0, got {s}")));
        }
        if !(lambda.norm() <= MAX_ABS_LAMBDA) {
            return Err(invalid(format!(
                "|lambda| must be <= {MAX_ABS_LAMBDA}, got {}",
                lambda.norm()
            )));
        }
        Ok(Self { seq, s, lambda })
    }

    pub fn seq(&self) -> &DnSequence {
        &self.seq
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    /// Series step `a = α + s`.
    pub fn step(&self) -> f64 {
        self.seq.alpha() + self.s
    }

    pub fn m(&self) -> usize {
        self.seq.m()
    }
}

/// One fundamental solution `u_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution {
    a: f64,
    b: f64,
    k: usize,
    alpha: f64,
    coeffs: Vec<f64>,
    lambda: Complex64,
    ks_params: KilbasSaigoParams,
}

impl SeriesSolution {
    pub fn step(&self) -> f64 {
        self.a
    }

    pub fn base_exponent(&self) -> f64 {
        self.b
    }

    pub fn mode(&self) -> usize {
        self.k
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn ks_params(&self) -> KilbasSaigoParams {
        self.ks_params
    }

    /// Pre-computed `c_0, c_1, …` (enough for `|λ| y^a` with `y ≤ 2`).
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `c_n / c_{n−1} = Γ(an+b+1−α) / Γ(an+b+1)` for `n ≥ 1`.
    pub fn coefficient_ratio(&self, n: usize) -> Result<f64> {
        debug_assert!(n >= 1);
        gamma_ratio(self.a * n as f64 + self.b - self.alpha, 1.0, 1.0 + self.alpha)
    }

    /// `c_0..=c_n`, extending the stored prefix with the recurrence.
    pub fn coefficients(&self, n: usize) -> Result<Vec<f64>> {
        let mut out: Vec<f64> = self.coeffs.iter().copied().take(n + 1).collect();
        while out.len() <= n {
            let i = out.len();
            out.push(out[i - 1] * self.coefficient_ratio(i)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CauchyData {
    values: Vec<Complex64>,
}

impl CauchyData {
    pub fn new(spec: &ProblemSpec, values: Vec<Complex64>) -> Result<Self> {
        check_len("Cauchy data", values.len(), spec.m())?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralSolutionWeights {
    values: Vec<Complex64>,
}

impl GeneralSolutionWeights {
    pub fn new(spec: &ProblemSpec, values: Vec<Complex64>) -> Result<Self> {
        check_len("general solution weights", values.len(), spec.m())?;
        Ok(Self { values })
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

fn check_len(what: &str, len: usize, m: usize) -> Result<()> {
    if len != m {
        return Err(invalid(format!("{what} need m = {m} entries, got {len}")));
    }
    Ok(())
}

/// Builds `u_k`, checking the recurrence against the Kilbas-Saigo coefficients.
pub fn fundamental_solution(spec: &ProblemSpec, k: usize, cfg: &SeriesEvalConfig) -> Result<SeriesSolution> {
    cfg.validate()?;
    let m = spec.m();
    if k >= m {
        return Err(Error::Index { index: k, len: m });
    }
    let alpha = spec.seq.alpha();
    let a = spec.step();
    let b = spec.seq.alphas()[k];
    let ks_params = KilbasSaigoParams::new(alpha, a / alpha, (b + spec.s) / alpha)?;
    let mut sol = SeriesSolution {
        a,
        b,
        k,
        alpha,
        coeffs: vec![1.0],
        lambda: spec.lambda,
        ks_params,
    };

    // coefficients until c_n z^n is negligible for |z| = max(1, |λ|)·2^a
    let z_ref = spec.lambda.norm().max(1.0) * COEFF_REF_Y.powf(a);
    let mut scaled = 1.0_f64;
    let mut peak = 1.0_f64;
    for n in 1..=cfg.max_terms.min(MAX_VERIFY_TERMS) {
        let r = sol.coefficient_ratio(n)?;
        let c = sol.coeffs[n - 1] * r;
        sol.coeffs.push(c);
        scaled *= r * z_ref;
        peak = peak.max(scaled);
        if scaled <= 1e-17 * peak && r * z_ref < 0.5 {
            break;
        }
    }

    let check = ks_coefficients(ks_params, sol.coeffs.len() - 1)?;
    for (n, (c, d)) in sol.coeffs.iter().zip(&check).enumerate() {
        // subnormal coefficients carry too few bits for a relative comparison
        let size = c.abs().max(d.abs());
        if size > SUBNORMAL_GUARD && (c - d).abs() > 1e-12 * size {
            return Err(domain(format!(
                "mode {k}: recurrence coefficient c_{n} = {c:e} disagrees with Kilbas-Saigo {d:e}"
            )));
        }
    }
    Ok(sol)
}

/// All `m` fundamental solutions.
pub fn fundamental_system(spec: &ProblemSpec, cfg: &SeriesEvalConfig) -> Result<Vec<SeriesSolution>> {
    (0..spec.m()).map(|k| fundamental_solution(spec, k, cfg)).collect()
}

/// `u_k(y) = y^b E_{α,m,l}(λ y^a)`.
pub fn eval_solution(sol: &SeriesSolution, y: f64, cfg: &SeriesEvalConfig) -> Result<Complex64> {
    eval_solution_detailed(sol, y, cfg).map(|s| s.value)
}

/// As [`eval_solution`], keeping the series diagnostics (scaled by `y^b`).
pub fn eval_solution_detailed(sol: &SeriesSolution, y: f64, cfg: &SeriesEvalConfig) -> Result<SeriesSum> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(domain(format!("solutions are evaluated at y > 0, got {y}")));
    }
    let z = sol.lambda * y.powf(sol.a);
    let mut sum = ks_eval_detailed(sol.ks_params, z, cfg)?;
    let scale = y.powf(sol.b);
    sum.value *= scale;
    sum.abs_sum *= scale;
    Ok(sum)
}

/// `Σ d_k u_k(y)` over already built fundamental solutions.
pub fn eval_general(
    sols: &[SeriesSolution],
    weights: &GeneralSolutionWeights,
    y: f64,
    cfg: &SeriesEvalConfig,
) -> Result<Complex64> {
    check_len("general solution weights", weights.values.len(), sols.len())?;
    let mut total = Complex64::new(0.0, 0.0);
    for (sol, d) in sols.iter().zip(&weights.values) {
        if *d != Complex64::new(0.0, 0.0) {
            total += d * eval_solution(sol, y, cfg)?;
        }
    }
    Ok(total)
}

/// General solution `Σ d_k u_k(y)`.
pub fn general_solution(
    spec: &ProblemSpec,
    weights: &GeneralSolutionWeights,
    y: f64,
    cfg: &SeriesEvalConfig,
) -> Result<Complex64> {
    eval_general(&fundamental_system(spec, cfg)?, weights, y, cfg)
}

/// Weights `d_k = A_k / Γ(α_k + 1)` solving the Cauchy problem.
pub fn cauchy_solution(spec: &ProblemSpec, data: &CauchyData) -> Result<GeneralSolutionWeights> {
    check_len("Cauchy data", data.values.len(), spec.m())?;
    let values = data
        .values
        .iter()
        .zip(spec.seq.alphas())
        .map(|(a, alpha_k)| Ok(a / gamma(alpha_k + 1.0)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralSolutionWeights { values })
}

/// Values of every mode at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct GridPoint {
    pub y: f64,
    pub values: Vec<Complex64>,
}

/// Evaluates all `sols` at every `y`; rows keep the order of `ys`.
pub fn eval_grid(
    sols: &[SeriesSolution],
    ys: &[f64],
    cfg: &SeriesEvalConfig,
    exec: Execution,
) -> Result<Vec<GridPoint>> {
    par::map(ys, exec, |&y| {
        let values = sols
            .iter()
            .map(|s| eval_solution(s, y, cfg))
            .collect::<Result<Vec<_>>>()?;
        Ok(GridPoint { y, values })
    })
    .into_iter()
    .collect()
}

/// `points` equally spaced values from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let step = (end - start) / (points - 1) as f64;
            (0..points)
                .map(|i| if i == points - 1 { end } else { start + step * i as f64 })
                .collect()
        }
    }
}

/// `y = 0.1, 0.2, …, 2.0`.
pub fn default_grid() -> Vec<f64> {
    (1..=20).map(|i| i as f64 / 10.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dn_operator::{caputo_sequence, hilfer_sequence, rl_sequence, HilferParams};
    use crate::special_fn::{ml_eval, MittagLefflerParams};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn spec(g: &[f64], s: f64, lambda: Complex64) -> ProblemSpec {
        ProblemSpec::new(DnSequence::new(g.to_vec()).unwrap(), s, lambda).unwrap()
    }

    fn cfg() -> SeriesEvalConfig {
        SeriesEvalConfig::default()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn spec_validation() {
        let seq = DnSequence::new(vec![1.0, 1.0]).unwrap();
        assert!(ProblemSpec::new(seq.clone(), -0.1, c(1.0, 0.0)).is_err());
        assert!(ProblemSpec::new(seq.clone(), 0.0, c(11.0, 0.0)).is_err());
        assert!(ProblemSpec::new(seq, 0.0, c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn gaussian_mode() {
        // {1,1}, s = 1: u' = λ y u, u = exp(λ y²/2)
        let p = spec(&[1.0, 1.0], 1.0, c(1.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        for (n, cn) in u.coeffs().iter().enumerate().take(10) {
            let want = 1.0 / (2f64.powi(n as i32) * gamma(n as f64 + 1.0).unwrap());
            assert!((cn - want).abs() < 1e-15 * want);
        }
        let v = eval_solution(&u, 1.0, &cfg()).unwrap();
        assert!((v.re - 0.5f64.exp()).abs() < 1e-15 * 1.7);
        let p = spec(&[1.0, 1.0], 1.0, c(-0.7, 2.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        for y in [0.3, 1.1, 1.9] {
            let want = (p.lambda() * y * y / 2.0).exp();
            assert!(rel(eval_solution(&u, y, &cfg()).unwrap(), want) < 1e-13);
        }
    }

    #[test]
    fn exponential_mode() {
        let p = spec(&[1.0, 1.0], 0.0, c(-3.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let v = eval_solution(&u, 2.0, &cfg()).unwrap();
        assert!(rel(v, c((-6f64).exp(), 0.0)) < 1e-12);
    }

    #[test]
    fn zero_lambda_is_leading_power() {
        let p = spec(&[0.5, 1.0], 0.0, c(0.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        assert_eq!(eval_solution(&u, 2.0, &cfg()).unwrap(), c(2f64.powf(-0.5), 0.0));
    }

    #[test]
    fn mittag_leffler_reduction() {
        let p = ProblemSpec::new(rl_sequence(0.5, 1).unwrap(), 0.0, c(-1.3, 0.4)).unwrap();
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let ml = MittagLefflerParams::new(0.5, 0.5).unwrap();
        for y in [0.2_f64, 0.9, 1.7] {
            let want = gamma(0.5).unwrap() * ml_eval(ml, p.lambda() * y.sqrt(), &cfg()).unwrap() * y.powf(-0.5);
            assert!(rel(eval_solution(&u, y, &cfg()).unwrap(), want) < 1e-12);
        }
    }

    #[test]
    fn ks_parameters_and_indices() {
        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(1.0, 0.0));
        let a = p.seq().alpha();
        let u1 = fundamental_solution(&p, 1, &cfg()).unwrap();
        assert!((u1.ks_params().m_param() - (a + 0.5) / a).abs() < 1e-15);
        assert!((u1.ks_params().l_param() - (p.seq().alphas()[1] + 0.5) / a).abs() < 1e-15);
        assert!(matches!(
            fundamental_solution(&p, 2, &cfg()),
            Err(Error::Index { index: 2, len: 2 })
        ));
    }

    #[test]
    fn recurrence_identity_and_positivity() {
        let p = spec(&[0.35, 0.8, 0.6, 0.9], 1.3, c(2.0, -1.0));
        for k in 0..p.m() {
            let u = fundamental_solution(&p, k, &cfg()).unwrap();
            let (a, b, al) = (u.step(), u.base_exponent(), p.seq().alpha());
            for n in 1..u.coeffs().len() {
                let x = a * n as f64 + b + 1.0;
                let back = u.coeffs()[n] * gamma_ratio(x, 0.0, -al).unwrap();
                let prev = u.coeffs()[n - 1];
                if prev > 1e-280 {
                    assert!((back - prev).abs() <= 1e-12 * prev, "k={k} n={n}");
                }
                assert!(u.coeffs()[n] >= 0.0);
            }
        }
    }

    #[test]
    fn ratio_decay() {
        // the ratio decays like (an)^{-α}, so a fixed threshold needs α large enough
        let p = spec(&[1.0, 1.0, 0.9, 0.6], 0.5, c(10.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        // c_200 itself underflows here; the ratio does not
        assert!(u.coefficient_ratio(201).unwrap() * 10.0 < 1e-3);

        let p = spec(&[0.6, 0.7], 0.2, c(10.0, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let cs = u.coefficients(201).unwrap();
        let ratios: Vec<f64> = (1..=201).map(|n| cs[n] / cs[n - 1]).collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));
        let scaled = ratios[199] * (0.5 * 200.0_f64).powf(0.3);
        assert!((scaled - 1.0).abs() < 0.05, "{scaled}");
    }

    #[test]
    fn extending_coefficients_matches_prefix() {
        let p = spec(&[0.9, 0.9], 0.0, c(0.5, 0.0));
        let u = fundamental_solution(&p, 0, &cfg()).unwrap();
        let n = u.coeffs().len() + 20;
        let ext = u.coefficients(n).unwrap();
        assert_eq!(&ext[..u.coeffs().len()], u.coeffs());
        assert_eq!(ext.len(), n + 1);
    }

    /// `Σ_k d_k Σ_n λ^n y^{an+α_k} Π_j Γ(aj+b+1−α)/Γ(aj+b+1)` with every gamma
    /// evaluated separately.
    fn brute_force(p: &ProblemSpec, d: &[Complex64], y: f64) -> Complex64 {
        let (a, al) = (p.step(), p.seq().alpha());
        let mut total = c(0.0, 0.0);
        for (k, dk) in d.iter().enumerate() {
            let b = p.seq().alphas()[k];
            let mut cn = 1.0;
            let mut inner = c(0.0, 0.0);
            for n in 0..80 {
                if n > 0 {
                    let x = a * n as f64 + b + 1.0;
                    cn *= gamma(x - al).unwrap() / gamma(x).unwrap();
                }
                inner += cn * p.lambda().powu(n as u32) * y.powf(a * n as f64 + b);
            }
            total += dk * inner;
        }
        total
    }

    #[test]
    fn general_solution_matches_double_sum() {
        let p = spec(&[0.8, 0.75, 0.9], 0.4, c(1.2, -0.8));
        let d = vec![c(0.3, 1.0), c(-2.0, 0.5)];
        let w = GeneralSolutionWeights::new(&p, d.clone()).unwrap();
        for y in [0.15, 0.6, 1.0, 1.4] {
            let got = general_solution(&p, &w, y, &cfg()).unwrap();
            assert!(rel(got, brute_force(&p, &d, y)) < 1e-10, "y={y}");
        }
        let zero = GeneralSolutionWeights::new(&p, vec![c(0.0, 0.0); 2]).unwrap();
        assert_eq!(general_solution(&p, &zero, 0.5, &cfg()).unwrap(), c(0.0, 0.0));
        let e1 = GeneralSolutionWeights::new(&p, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let u1 = fundamental_solution(&p, 1, &cfg()).unwrap();
        assert_eq!(
            general_solution(&p, &e1, 0.5, &cfg()).unwrap(),
            eval_solution(&u1, 0.5, &cfg()).unwrap()
        );
    }

    #[test]
    fn cauchy_weights() {
        let p = ProblemSpec::new(rl_sequence(0.6, 1).unwrap(), 0.0, c(1.0, 0.0)).unwrap();
        let w = cauchy_solution(&p, &CauchyData::new(&p, vec![c(1.0, 0.0)]).unwrap()).unwrap();
        assert!((w.values()[0].re - 1.0 / gamma(0.6).unwrap()).abs() < 1e-15);
        // the RL eigenfunction y^{α−1} E_{α,α}(λ y^α)
        let u = eval_general(&fundamental_system(&p, &cfg()).unwrap(), &w, 0.8, &cfg()).unwrap();
        let ml = MittagLefflerParams::new(0.6, 0.6).unwrap();
        let want = 0.8_f64.powf(-0.4) * ml_eval(ml, c(0.8_f64.powf(0.6), 0.0), &cfg()).unwrap();
        assert!(rel(u, want) < 1e-12);
        let zero = cauchy_solution(&p, &CauchyData::new(&p, vec![c(0.0, 0.0)]).unwrap()).unwrap();
        assert_eq!(zero.values(), &[c(0.0, 0.0)]);
        assert!(CauchyData::new(&p, vec![]).is_err());
    }

    #[test]
    fn reductions_mode_exponents() {
        let s = 0.7;
        let p = ProblemSpec::new(rl_sequence(2.4, 3).unwrap(), s, c(1.0, 0.0)).unwrap();
        for (k, u) in fundamental_system(&p, &cfg()).unwrap().iter().enumerate() {
            let j = 3 - k;
            assert!((u.base_exponent() - (2.4 - j as f64)).abs() < 1e-14);
            assert!((u.ks_params().l_param() - (2.4 + s - j as f64) / 2.4).abs() < 1e-14);
        }
        let p = ProblemSpec::new(caputo_sequence(1.7, 2).unwrap(), 1.0, c(1.0, 0.0)).unwrap();
        for (k, u) in fundamental_system(&p, &cfg()).unwrap().iter().enumerate() {
            assert_eq!(u.base_exponent(), k as f64);
        }
        let h = hilfer_sequence(HilferParams::new(1.4, 0.3, 2).unwrap()).unwrap();
        let p = ProblemSpec::new(h, 0.0, c(1.0, 0.0)).unwrap();
        for (k, u) in fundamental_system(&p, &cfg()).unwrap().iter().enumerate() {
            assert!((u.base_exponent() - (k as f64 - 0.7 * 0.6)).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_and_linspace() {
        assert_eq!(linspace(0.1, 2.0, 1), vec![0.1]);
        let g = linspace(0.1, 2.0, 50);
        assert_eq!(g.len(), 50);
        assert_eq!(g[49], 2.0);
        let p = spec(&[0.7, 0.9, 0.8], 0.5, c(1.0, 0.0));
        let sols = fundamental_system(&p, &cfg()).unwrap();
        let a = eval_grid(&sols, &g, &cfg(), Execution::Sequential).unwrap();
        let b = eval_grid(&sols, &g, &cfg(), Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert!(eval_grid(&sols, &[0.5, 0.0], &cfg(), Execution::Sequential).is_err());
        assert_eq!(default_grid().len(), 20);
    }
}
