//! Randomized verification suites shared by the CLI and the test targets.
//!
//! Every suite draws its cases from a `ChaCha8Rng` seeded by the caller, so a
//! seed reproduces a run exactly; the cases are then checked in parallel (or
//! sequentially, per [`Execution`]) and reduced to one [`ResidualReport`].

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dn_operator::{
    caputo_sequence, dn_apply_monomial, dn_power_rule, hilfer_sequence, rl_sequence, DnSequence, HilferParams, Monomial,
};
use crate::error::Result;
use crate::oracle::{validate_algebra_with, QuadratureConfig};
use crate::par::{self, Execution};
use crate::report::ResidualReport;
use crate::solver::{
    boundary_limit, default_grid, eval_solution, eval_solution_detailed, fundamental_solution, fundamental_system,
    linspace, verify_cauchy_limits, verify_residual, CauchyData, ProblemSpec, MAX_VERIFY_TERMS,
};
use crate::special_fn::{gamma, ks_eval, ml_eval_detailed, KilbasSaigoParams, MittagLefflerParams, SeriesEvalConfig};

pub const DEFAULT_SEED: u64 = 7;

/// Largest series condition number `Σ|t_n| / |Σ t_n|` a randomly drawn
/// problem may have before it is redrawn. Rounding in the coefficients alone
/// contributes about `1e-16` times this number to any comparison.
pub const DESK_COND_MAX: f64 = 1e5;

/// Largest `|λ|` drawn by the samplers.
pub const SAMPLE_LAMBDA_MAX: f64 = 5.0;

pub const RESIDUAL_TOL: f64 = 1e-8;
pub const ORACLE_TOL: f64 = crate::oracle::ORACLE_TOL;
pub const POWER_RULE_TOL: f64 = 1e-10;
pub const EXPONENT_TOL: f64 = 1e-12;
pub const SPECIAL_CASE_TOL: f64 = 1e-10;
pub const CLOSED_FORM_TOL: f64 = 1e-10;
pub const FACTORY_TOL: f64 = 1e-14;
pub const CAUCHY_TOL: f64 = 1e-8;
pub const BOUNDARY_DIAG_TOL: f64 = 1e-10;

/// Redraw budget per requested case before a sampler gives up.
const MAX_DRAWS_PER_CASE: usize = 200;

/// Sequence with `m` uniform in `1..=m_max` and `γ_k` uniform in `(0, 1]`,
/// redrawn until `α > 0`.
pub fn random_sequence(rng: &mut ChaCha8Rng, m_max: usize) -> DnSequence {
    let m = rng.random_range(1..=m_max);
    loop {
        let g: Vec<f64> = (0..=m).map(|_| 1.0 - rng.random_range(0.0..1.0)).collect();
        if let Ok(seq) = DnSequence::new(g) {
            return seq;
        }
    }
}

/// `λ` uniform in the disk `|λ| ≤ r_max`.
pub fn random_lambda(rng: &mut ChaCha8Rng, r_max: f64) -> Complex64 {
    let r = r_max * rng.random_range(0.0..=1.0f64).sqrt();
    Complex64::from_polar(r, rng.random_range(0.0..TAU))
}

fn verify_cfg() -> SeriesEvalConfig {
    SeriesEvalConfig {
        max_terms: MAX_VERIFY_TERMS,
        ..SeriesEvalConfig::default()
    }
}

/// True when every mode sums within [`MAX_VERIFY_TERMS`] terms with
/// condition number at most `cond_max` on the whole grid.
pub fn is_desk_scale(spec: &ProblemSpec, grid: &[f64], cond_max: f64) -> bool {
    let cfg = verify_cfg();
    let Ok(sols) = fundamental_system(spec, &cfg) else {
        return false;
    };
    sols.iter().all(|u| {
        grid.iter()
            .all(|&y| eval_solution_detailed(u, y, &cfg).is_ok_and(|d| d.condition() <= cond_max))
    })
}

struct Draws<T> {
    cases: Vec<T>,
    rejected: usize,
}

fn draw_cases<T>(
    rng: &mut ChaCha8Rng,
    count: usize,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> std::result::Result<Draws<T>, String> {
    let mut cases = Vec::with_capacity(count);
    let mut rejected = 0;
    while cases.len() < count {
        if rejected > MAX_DRAWS_PER_CASE * count.max(1) {
            return Err(format!(
                "sampler rejected {rejected} draws for {} accepted cases",
                cases.len()
            ));
        }
        match draw(rng) {
            Some(c) => cases.push(c),
            None => rejected += 1,
        }
    }
    Ok(Draws { cases, rejected })
}

fn fold_reports(reports: impl IntoIterator<Item = ResidualReport>, tol: f64) -> ResidualReport {
    reports
        .into_iter()
        .reduce(ResidualReport::merge)
        .unwrap_or_else(|| ResidualReport::new(0.0, f64::NAN, 0, tol))
}

fn relative(got: Complex64, want: Complex64) -> f64 {
    let scale = want.norm();
    if scale > 0.0 {
        (got - want).norm() / scale
    } else {
        got.norm()
    }
}

/// Algebra versus quadrature oracle on `trials` random monomials.
pub fn oracle_suite(seed: u64, trials: usize, tol: f64, exec: Execution) -> Result<ResidualReport> {
    Ok(validate_algebra_with(seed, trials, &QuadratureConfig::default(), exec)?.with_tolerance(tol))
}

/// Closed power rule against the composition on random `(seq, δ)` with
/// `δ − α_{m−1} ∈ (0, 4]`, `m ≤ 5`. Coefficients are compared relatively at
/// `tol`, exponents absolutely at [`EXPONENT_TOL`].
pub fn power_rule_suite(seed: u64, pairs: usize, tol: f64) -> ResidualReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeff = ResidualReport::new(0.0, f64::NAN, pairs, tol);
    let mut expo = ResidualReport::new(0.0, f64::NAN, pairs, EXPONENT_TOL);
    for _ in 0..pairs {
        let seq = random_sequence(&mut rng, 5);
        let delta = seq.alphas()[seq.m() - 1] + 4.0 * (1.0 - rng.random_range(0.0..1.0));
        let closed = dn_power_rule(&seq, delta);
        let composed = dn_apply_monomial(&seq, Monomial::power(delta));
        let (Ok(closed), Ok(composed)) = (closed, composed) else {
            return ResidualReport::failed(
                tol,
                format!("power rule undefined for {:?}, delta={delta}", seq.gammas()),
            );
        };
        let (Some(c), Some(d)) = (closed.term(), composed.term()) else {
            return ResidualReport::failed(tol, format!("unexpected kernel for {:?}, delta={delta}", seq.gammas()));
        };
        coeff = coeff.merge(ResidualReport::new(relative(d.coeff, c.coeff), delta, pairs, tol));
        expo = expo.merge(ResidualReport::new(
            (c.exponent - d.exponent).abs(),
            delta,
            pairs,
            EXPONENT_TOL,
        ));
    }
    coeff.merge(expo).with_note("worst_y is delta")
}

/// `dn_apply_monomial(y^{α_k})` must be the kernel for every `k < m`; the
/// error is the number of exceptions.
pub fn kernel_suite(seed: u64, sequences: usize) -> ResidualReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut misses = 0usize;
    let mut checked = 0usize;
    for _ in 0..sequences {
        let seq = random_sequence(&mut rng, 5);
        for k in 0..seq.m() {
            checked += 1;
            let hit = dn_apply_monomial(&seq, Monomial::power(seq.alphas()[k])).is_ok_and(|r| r.is_kernel());
            misses += !hit as usize;
        }
    }
    ResidualReport::new(misses as f64, f64::NAN, checked, 0.0).with_note(format!("{checked} kernel powers"))
}

#[derive(Debug, Clone)]
struct Problem {
    spec: ProblemSpec,
}

/// Residual of every fundamental solution of `problems` random desk-scale
/// problems (`m ≤ 4`, `s ∈ [0, 2]`, `|λ| ≤ 5`) on 20 points of `[0.1, 1]`.
pub fn residual_suite(seed: u64, problems: usize, tol: f64, exec: Execution) -> ResidualReport {
    let grid = linspace(0.1, 1.0, 20);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = draw_cases(&mut rng, problems, |rng| {
        let seq = random_sequence(rng, 4);
        let s = rng.random_range(0.0..=2.0);
        let spec = ProblemSpec::new(seq, s, random_lambda(rng, SAMPLE_LAMBDA_MAX)).ok()?;
        is_desk_scale(&spec, &grid, DESK_COND_MAX).then_some(Problem { spec })
    });
    let draws = match draws {
        Ok(d) => d,
        Err(e) => return ResidualReport::failed(tol, e),
    };
    let reports = par::map(&draws.cases, exec, |p| {
        let sols = match fundamental_system(&p.spec, &SeriesEvalConfig::default()) {
            Ok(s) => s,
            Err(e) => return ResidualReport::failed(tol, e.to_string()),
        };
        let r = fold_reports(sols.iter().map(|u| verify_residual(&p.spec, u, &grid, tol)), tol);
        r.with_note(format!(
            "{:?} s={} lambda={}",
            p.spec.seq().gammas(),
            p.spec.s(),
            p.spec.lambda()
        ))
    });
    let regularized: usize = reports.iter().map(|r| r.regularized_terms).sum();
    fold_reports(reports, tol).with_note(format!(
        "{problems} problems, {} redrawn, {regularized} continued terms",
        draws.rejected
    ))
}

/// `s = 0`: `u_k / y^{α_k}` against `Γ(α_k+1) E_{α,α_k+1}(λ y^α)` on
/// `y = 0.1, …, 2.0` for random desk-scale problems.
pub fn special_case_suite(seed: u64, problems: usize, tol: f64, exec: Execution) -> ResidualReport {
    let grid = default_grid();
    let cfg = verify_cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ml_ok = |spec: &ProblemSpec| {
        let alpha = spec.seq().alpha();
        spec.seq().alphas()[..spec.m()].iter().all(|&ak| {
            let Ok(ml) = MittagLefflerParams::new(alpha, ak + 1.0) else {
                return false;
            };
            grid.iter().all(|&y| {
                ml_eval_detailed(ml, spec.lambda() * y.powf(alpha), &cfg).is_ok_and(|d| d.condition() <= DESK_COND_MAX)
            })
        })
    };
    let draws = draw_cases(&mut rng, problems, |rng| {
        let seq = random_sequence(rng, 4);
        let spec = ProblemSpec::new(seq, 0.0, random_lambda(rng, SAMPLE_LAMBDA_MAX)).ok()?;
        (is_desk_scale(&spec, &grid, DESK_COND_MAX) && ml_ok(&spec)).then_some(Problem { spec })
    });
    let draws = match draws {
        Ok(d) => d,
        Err(e) => return ResidualReport::failed(tol, e),
    };
    let reports = par::map(&draws.cases, exec, |p| special_case_one(&p.spec, &grid, tol, &cfg));
    fold_reports(reports, tol).with_note(format!("{problems} problems, {} redrawn", draws.rejected))
}

fn special_case_one(spec: &ProblemSpec, grid: &[f64], tol: f64, cfg: &SeriesEvalConfig) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let alpha = spec.seq().alpha();
        let mut report = ResidualReport::new(0.0, f64::NAN, 0, tol);
        for k in 0..spec.m() {
            let u = fundamental_solution(spec, k, cfg)?;
            let ak = spec.seq().alphas()[k];
            let ml = MittagLefflerParams::new(alpha, ak + 1.0)?;
            let g = gamma(ak + 1.0)?;
            for &y in grid {
                let lhs = eval_solution(&u, y, cfg)? / y.powf(ak);
                let e = ml_eval_detailed(ml, spec.lambda() * y.powf(alpha), cfg)?;
                let r = ResidualReport::new(relative(lhs, e.value * g), y, e.terms, tol);
                report = report.merge(r);
            }
        }
        Ok(report)
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// `E_{1,1,1}(z) = (e^z−1)/z`, `E_{1,1,0}(z) = e^z`, `E_{1,2,1}(z) = e^{z/2}`
/// on random `|z| ≤ 10` plus the real endpoints, and `exp(λy²/2)` from the
/// `{1, 1}`, `s = 1` problem.
pub fn closed_form_suite(seed: u64, points: usize, tol: f64) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let cfg = SeriesEvalConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut zs = vec![
            Complex64::new(10.0, 0.0),
            Complex64::new(-10.0, 0.0),
            Complex64::new(0.0, 10.0),
        ];
        zs.extend((0..points).map(|_| random_lambda(&mut rng, 10.0)));

        let ks = |m: f64, l: f64| KilbasSaigoParams::new(1.0, m, l);
        let (p111, p110, p121) = (ks(1.0, 1.0)?, ks(1.0, 0.0)?, ks(2.0, 1.0)?);
        let mut report = ResidualReport::new(0.0, f64::NAN, 0, tol);
        for &z in &zs {
            report = report
                .merge(ResidualReport::new(
                    relative(ks_eval(p111, z, &cfg)?, exp_m1_over(z)),
                    z.norm(),
                    0,
                    tol,
                ))
                .merge(ResidualReport::new(
                    relative(ks_eval(p110, z, &cfg)?, z.exp()),
                    z.norm(),
                    0,
                    tol,
                ))
                .merge(ResidualReport::new(
                    relative(ks_eval(p121, z, &cfg)?, (z / 2.0).exp()),
                    z.norm(),
                    0,
                    tol,
                ));
        }

        let seq = DnSequence::new(vec![1.0, 1.0])?;
        for _ in 0..10 {
            let lambda = random_lambda(&mut rng, SAMPLE_LAMBDA_MAX);
            let spec = ProblemSpec::new(seq.clone(), 1.0, lambda)?;
            let u = fundamental_solution(&spec, 0, &cfg)?;
            for y in linspace(0.1, 2.0, 20) {
                let want = (lambda * y * y / 2.0).exp();
                report = report.merge(ResidualReport::new(
                    relative(eval_solution(&u, y, &cfg)?, want),
                    y,
                    0,
                    tol,
                ));
            }
        }
        Ok(report)
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// `(e^z − 1)/z` without cancellation near 0.
fn exp_m1_over(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        // 1 + z/2 + z²/6 + z³/24 + z⁴/120
        Complex64::new(1.0, 0.0) + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)))
    } else if z.im == 0.0 {
        Complex64::new(z.re.exp_m1() / z.re, 0.0)
    } else {
        (z.exp() - 1.0) / z
    }
}

/// RL, Caputo and Hilfer factories against their `α_k` formulas, and the
/// Hilfer endpoints against the other two factories entry by entry.
pub fn factory_suite(seed: u64, cases: usize, tol: f64) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        let mut mismatched = 0usize;
        for _ in 0..cases {
            let m = rng.random_range(1..=5usize);
            let alpha = m as f64 - rng.random_range(0.0..1.0);
            let mu = rng.random_range(0.0..=1.0);
            let mf = m as f64;
            let rl = rl_sequence(alpha, m)?;
            let cap = caputo_sequence(alpha, m)?;
            let hil = hilfer_sequence(HilferParams::new(alpha, mu, m)?)?;
            for k in 0..m {
                let kf = k as f64;
                worst = worst
                    .max((rl.alphas()[k] - (alpha + kf - mf)).abs())
                    .max((cap.alphas()[k] - kf).abs())
                    .max((hil.alphas()[k] - (kf - (1.0 - mu) * (mf - alpha))).abs());
            }
            for s in [&rl, &cap, &hil] {
                worst = worst.max((s.alpha() - alpha).abs());
            }
            let h0 = hilfer_sequence(HilferParams::new(alpha, 0.0, m)?)?;
            let h1 = hilfer_sequence(HilferParams::new(alpha, 1.0, m)?)?;
            mismatched += (h0.gammas() != rl.gammas()) as usize + (h1.gammas() != cap.gammas()) as usize;
        }
        let r = ResidualReport::new(worst, f64::NAN, cases, tol);
        let exact = ResidualReport::new(mismatched as f64, f64::NAN, cases, 0.0);
        Ok(r.merge(exact)
            .with_note(format!("{mismatched} Hilfer endpoint mismatches")))
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// Mode exponents of the fundamental systems built from the factories.
pub fn mode_exponent_suite(seed: u64, cases: usize, tol: f64) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let cfg = SeriesEvalConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        for _ in 0..cases {
            let m = rng.random_range(1..=4usize);
            let mf = m as f64;
            let alpha = mf - rng.random_range(0.0..1.0);
            let mu = rng.random_range(0.0..=1.0);
            let s = rng.random_range(0.0..=2.0);
            let lambda = random_lambda(&mut rng, SAMPLE_LAMBDA_MAX);
            let systems = [
                rl_sequence(alpha, m)?,
                caputo_sequence(alpha, m)?,
                hilfer_sequence(HilferParams::new(alpha, mu, m)?)?,
            ];
            for (which, seq) in systems.into_iter().enumerate() {
                let sols = fundamental_system(&ProblemSpec::new(seq, s, lambda)?, &cfg)?;
                for (k, u) in sols.iter().enumerate() {
                    let kf = k as f64;
                    let want = match which {
                        // y^{α−j}, j = m−k
                        0 => alpha - (mf - kf),
                        1 => kf,
                        _ => kf - (1.0 - mu) * (mf - alpha),
                    };
                    worst = worst.max((u.base_exponent() - want).abs());
                    if which == 0 {
                        let l = (alpha + s - (mf - kf)) / alpha;
                        worst = worst.max((u.ks_params().l_param() - l).abs());
                    }
                }
            }
        }
        Ok(ResidualReport::new(worst, f64::NAN, cases, tol))
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// Special case `s = 0`, closed forms, factories and mode exponents. The
/// given tolerance applies to the first two; the exact-arithmetic checks keep
/// [`FACTORY_TOL`] unless `tol` is tighter.
pub fn reductions_suite(seed: u64, tol: f64, exec: Execution) -> ResidualReport {
    let exact_tol = FACTORY_TOL.min(tol);
    special_case_suite(seed, 50, tol, exec)
        .merge(closed_form_suite(seed, 100, tol))
        .merge(factory_suite(seed, 100, exact_tol))
        .merge(mode_exponent_suite(seed, 20, exact_tol))
}

/// Outcome of the Cauchy suite, split by check.
#[derive(Debug, Clone)]
pub struct CauchyOutcome {
    /// `lim D^{α_j} u_k` against `Γ(1+α_k) δ_jk`.
    pub matrix: ResidualReport,
    /// Cauchy solution limits against random data.
    pub data: ResidualReport,
    /// Draws discarded because the `n = 1` term of `u_0` has no termwise
    /// boundary limit (`γ_0 + γ_m + s ≤ 1`).
    pub strip_rejected: usize,
}

impl CauchyOutcome {
    pub fn combined(&self) -> ResidualReport {
        self.matrix
            .clone()
            .merge(self.data.clone())
            .with_note(format!("{} strip draws redrawn", self.strip_rejected))
    }
}

/// Boundary-limit matrix and data recovery for random problems outside the
/// strip `γ_0 + γ_m + s ≤ 1`.
pub fn cauchy_suite(seed: u64, problems: usize, tol: f64) -> CauchyOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws = draw_cases(&mut rng, problems, |rng| {
        let seq = random_sequence(rng, 4);
        let s = rng.random_range(0.0..=2.0);
        let g = seq.gammas();
        if g[0] + g[seq.m()] + s <= 1.0 {
            return None;
        }
        let spec = ProblemSpec::new(seq, s, random_lambda(rng, SAMPLE_LAMBDA_MAX)).ok()?;
        let data: Vec<Complex64> = (0..spec.m())
            .map(|_| Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
            .collect();
        Some((spec, data))
    });
    let draws = match draws {
        Ok(d) => d,
        Err(e) => {
            let f = ResidualReport::failed(tol, e);
            return CauchyOutcome {
                matrix: f.clone(),
                data: f,
                strip_rejected: 0,
            };
        }
    };

    let mut matrix = ResidualReport::new(0.0, f64::NAN, 0, BOUNDARY_DIAG_TOL.min(tol));
    let mut data = ResidualReport::new(0.0, f64::NAN, 0, tol);
    for (spec, values) in &draws.cases {
        matrix = matrix.merge(boundary_matrix_report(spec, BOUNDARY_DIAG_TOL.min(tol)));
        let report = match CauchyData::new(spec, values.clone()) {
            Ok(d) => verify_cauchy_limits(spec, &d, tol),
            Err(e) => ResidualReport::failed(tol, e.to_string()),
        };
        data = data.merge(report);
    }
    CauchyOutcome {
        matrix,
        data,
        strip_rejected: draws.rejected,
    }
}

/// Diagonal entries relative to `Γ(1+α_k)`; an off-diagonal entry that is not
/// symbolically zero counts as an infinite error.
fn boundary_matrix_report(spec: &ProblemSpec, tol: f64) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let sols = fundamental_system(spec, &SeriesEvalConfig::default())?;
        let mut worst = 0.0_f64;
        for (k, u) in sols.iter().enumerate() {
            for j in 0..spec.m() {
                let bl = boundary_limit(spec, u, j)?;
                let err = if j == k {
                    let want = gamma(1.0 + spec.seq().alphas()[k])?;
                    relative(bl.value, Complex64::new(want, 0.0))
                } else if bl.exact_zero && bl.value == Complex64::new(0.0, 0.0) {
                    0.0
                } else {
                    f64::INFINITY
                };
                worst = worst.max(err);
            }
        }
        Ok(ResidualReport::new(worst, 0.0, sols.len(), tol))
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// `c_n/c_{n−1} · ((α+s)n)^α` for `n ∈ [50, 200]` over random parameters.
/// The error is the largest `|log10|` of that product, so `tol = 1` means
/// every value lies in `[0.1, 10]`.
pub fn ratio_suite(seed: u64, sets: usize, tol: f64) -> ResidualReport {
    let inner = || -> Result<ResidualReport> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0_f64;
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for _ in 0..sets {
            let seq = random_sequence(&mut rng, 4);
            let s = rng.random_range(0.0..=2.0);
            let spec = ProblemSpec::new(seq, s, random_lambda(&mut rng, SAMPLE_LAMBDA_MAX))?;
            let alpha = spec.seq().alpha();
            let k = rng.random_range(0..spec.m());
            let u = fundamental_solution(&spec, k, &SeriesEvalConfig::default())?;
            for n in 50..=200 {
                let v = u.coefficient_ratio(n)? * (spec.step() * n as f64).powf(alpha);
                lo = lo.min(v);
                hi = hi.max(v);
                worst = worst.max(v.log10().abs());
            }
        }
        Ok(ResidualReport::new(worst, f64::NAN, sets, tol).with_note(format!("range [{lo:.4}, {hi:.4}]")))
    };
    inner().unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
}

/// Suites selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Residual,
    Oracle,
    Reductions,
    Cauchy,
    Algebra,
    Ratio,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Algebra,
        Suite::Oracle,
        Suite::Residual,
        Suite::Reductions,
        Suite::Cauchy,
        Suite::Ratio,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Residual => "residual",
            Suite::Oracle => "oracle",
            Suite::Reductions => "reductions",
            Suite::Cauchy => "cauchy",
            Suite::Algebra => "algebra",
            Suite::Ratio => "ratio",
        }
    }

    pub fn default_tol(self) -> f64 {
        match self {
            Suite::Residual => RESIDUAL_TOL,
            Suite::Oracle => ORACLE_TOL,
            Suite::Reductions => SPECIAL_CASE_TOL,
            Suite::Cauchy => CAUCHY_TOL,
            Suite::Algebra => POWER_RULE_TOL,
            Suite::Ratio => 1.0,
        }
    }

    pub fn run(self, seed: u64, tol: Option<f64>, exec: Execution) -> ResidualReport {
        let tol = tol.unwrap_or(self.default_tol());
        match self {
            Suite::Residual => residual_suite(seed, 50, tol, exec),
            Suite::Oracle => {
                oracle_suite(seed, 100, tol, exec).unwrap_or_else(|e| ResidualReport::failed(tol, e.to_string()))
            }
            Suite::Reductions => reductions_suite(seed, tol, exec),
            Suite::Cauchy => cauchy_suite(seed, 20, tol).combined(),
            Suite::Algebra => power_rule_suite(seed, 500, tol).merge(kernel_suite(seed, 100)),
            Suite::Ratio => ratio_suite(seed, 20, tol),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}
