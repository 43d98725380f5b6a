use crate::error::{invalid, Result};

/// The sequence `{γ_0, …, γ_m}` defining a Dzhrbashyan-Nersesyan operator,
/// together with its partial orders `α_k = γ_0 + … + γ_k − 1`.
///
/// Immutable once built; every `γ_k` lies in `(0, 1]` and the total order
/// `α = α_m` is positive, so `α_0 < α_1 < … < α_m` and `α_0 ∈ (−1, 0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DnSequence {
    gammas: Vec<f64>,
    alphas: Vec<f64>,
}

impl DnSequence {
    pub fn new(gammas: Vec<f64>) -> Result<Self> {
        if gammas.len() < 2 {
            return Err(invalid(format!(
                "a DN sequence needs at least two entries (m >= 1), got {}",
                gammas.len()
            )));
        }
        if let Some((k, g)) = gammas.iter().enumerate().find(|(_, g)| !(**g > 0.0 && **g <= 1.0)) {
            return Err(invalid(format!("gamma_{k} = {g} is outside (0, 1]")));
        }
        let mut alphas = Vec::with_capacity(gammas.len());
        let mut partial = 0.0;
        for g in &gammas {
            partial += g;
            alphas.push(partial - 1.0);
        }
        let alpha = *alphas.last().unwrap();
        if alpha <= 0.0 {
            return Err(invalid(format!("order alpha = sum(gamma) - 1 = {alpha} must be > 0")));
        }
        Ok(Self { gammas, alphas })
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// `α_0, …, α_m`.
    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    /// Total order `α = α_m`.
    pub fn alpha(&self) -> f64 {
        self.alphas[self.m()]
    }

    /// Number of fundamental solutions; the sequence has `m + 1` entries.
    pub fn m(&self) -> usize {
        self.gammas.len() - 1
    }

    /// Index of the kernel power `y^{α_k}` (`k < m`) matching `delta`, if any.
    pub fn kernel_index(&self, delta: f64) -> Option<usize> {
        self.alphas[..self.m()].iter().position(|&a| is_same_exponent(delta, a))
    }
}

/// Exponent equality used for kernel detection: `|δ − a| ≤ 1e-12·max(1, |a|)`.
pub(crate) fn is_same_exponent(delta: f64, a: f64) -> bool {
    (delta - a).abs() <= KERNEL_TOL * a.abs().max(1.0)
}

pub(crate) const KERNEL_TOL: f64 = 1e-12;

fn check_order(alpha: f64, m: usize) -> Result<()> {
    if m < 1 {
        return Err(invalid("m must be >= 1"));
    }
    let mf = m as f64;
    if !(alpha > mf - 1.0 && alpha <= mf) {
        return Err(invalid(format!(
            "alpha = {alpha} must lie in (m - 1, m] = ({}, {mf}]",
            mf - 1.0
        )));
    }
    Ok(())
}

/// Riemann-Liouville derivative of order `α ∈ (m−1, m]`: `{α−m+1, 1, …, 1}`.
pub fn rl_sequence(alpha: f64, m: usize) -> Result<DnSequence> {
    check_order(alpha, m)?;
    let deficit = m as f64 - alpha;
    let mut gammas = vec![1.0 - deficit];
    gammas.extend(std::iter::repeat_n(1.0, m));
    DnSequence::new(gammas)
}

/// Caputo derivative of order `α ∈ (m−1, m]`: `{1, …, 1, α−m+1}`.
pub fn caputo_sequence(alpha: f64, m: usize) -> Result<DnSequence> {
    check_order(alpha, m)?;
    let deficit = m as f64 - alpha;
    let mut gammas = vec![1.0; m];
    gammas.push(1.0 - deficit);
    DnSequence::new(gammas)
}

/// Parameters of the Hilfer derivative: order `α ∈ (m−1, m]`, type `μ ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HilferParams {
    alpha: f64,
    mu: f64,
    m: usize,
}

impl HilferParams {
    pub fn new(alpha: f64, mu: f64, m: usize) -> Result<Self> {
        check_order(alpha, m)?;
        if !(0.0..=1.0).contains(&mu) {
            return Err(invalid(format!("Hilfer mu = {mu} must lie in [0, 1]")));
        }
        Ok(Self { alpha, mu, m })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

/// Hilfer derivative as a DN sequence:
/// `{1 − (1−μ)(m−α), 1, …, 1, 1 − μ(m−α)}` with `m − 1` ones in the middle.
///
/// `μ = 0` gives exactly the [`rl_sequence`] entries and `μ = 1` exactly the
/// [`caputo_sequence`] entries.
pub fn hilfer_sequence(p: HilferParams) -> Result<DnSequence> {
    let deficit = p.m as f64 - p.alpha;
    let mut gammas = vec![1.0 - (1.0 - p.mu) * deficit];
    gammas.extend(std::iter::repeat_n(1.0, p.m - 1));
    gammas.push(1.0 - p.mu * deficit);
    DnSequence::new(gammas)
}
