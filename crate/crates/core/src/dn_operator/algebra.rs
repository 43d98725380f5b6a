//! The full operator and the Cauchy boundary operators on monomials.
//!
//! Both are compositions of two primitives, a Riemann-Liouville integral of
//! order `1 − γ_k` and `d/dy`:
//!
//! ```text
//! D^{γ_0,…,γ_m} = I^{1−γ_m} (d/dy I^{1−γ_{m−1}}) ⋯ (d/dy I^{1−γ_0})
//! D^{α_j}       = I^{1−γ_j} d/dy ⋯ I^{1−γ_1} d/dy I^{1−γ_0}
//! ```
//!
//! Acting on `y^δ`, every intermediate exponent is `δ − α_k` (after an
//! integral) or `δ − α_k − 1` (after a derivative). Exponents are taken from
//! the stored `α_k` rather than accumulated stage by stage.

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::special_fn::gamma_ratio;

use super::monomial::{Monomial, PowerRuleResult};
use super::sequence::{is_same_exponent, DnSequence};

/// One elementary stage of a composition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StageKind {
    /// Riemann-Liouville integral of the given order (`0` is the identity).
    Integral(f64),
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceStep {
    pub stage: StageKind,
    pub result: PowerRuleResult,
}

struct Tracker<'a> {
    seq: &'a DnSequence,
    delta: f64,
    coeff: Complex64,
    /// current exponent is `delta - shift`
    shift: f64,
    trace: Vec<TraceStep>,
}

impl<'a> Tracker<'a> {
    fn new(seq: &'a DnSequence, input: Monomial) -> Self {
        Self {
            seq,
            delta: input.exponent,
            coeff: input.coeff,
            shift: 0.0,
            trace: Vec::new(),
        }
    }

    fn exponent(&self) -> f64 {
        self.delta - self.shift
    }

    fn record(&mut self, stage: StageKind) {
        let result = PowerRuleResult::Term(Monomial::new(self.coeff, self.exponent()));
        self.trace.push(TraceStep { stage, result });
    }

    /// `I^{1−γ_k}`, landing on exponent `δ − α_k`.
    fn integral(&mut self, k: usize) -> Result<()> {
        let sigma = 1.0 - self.seq.gammas()[k];
        if sigma > 0.0 {
            let e = self.exponent();
            if e <= -1.0 {
                return Err(domain(format!(
                    "stage {k}: RL integral of order {sigma} diverges on y^{e}"
                )));
            }
            self.coeff *= gamma_ratio(e, 1.0, 1.0 + sigma)?;
        }
        self.shift = self.seq.alphas()[k];
        self.record(StageKind::Integral(sigma));
        Ok(())
    }

    /// `d/dy` applied to `y^{δ − α_k}`; `false` when that is a constant.
    fn derivative(&mut self, k: usize) -> bool {
        let alpha_k = self.seq.alphas()[k];
        if is_same_exponent(self.delta, alpha_k) {
            self.trace.push(TraceStep {
                stage: StageKind::Derivative,
                result: PowerRuleResult::Kernel,
            });
            return false;
        }
        self.coeff *= self.delta - alpha_k;
        self.shift = alpha_k + 1.0;
        self.record(StageKind::Derivative);
        true
    }

    fn finish(self) -> Vec<TraceStep> {
        self.trace
    }
}

fn check_input(input: &Monomial) -> Result<()> {
    if !(input.exponent > -1.0) {
        return Err(domain(format!("input exponent must be > -1, got {}", input.exponent)));
    }
    Ok(())
}

/// Stage-by-stage image of `input` under the full operator. The last step is
/// the result; a [`PowerRuleResult::Kernel`] step ends the trace.
pub fn dn_trace(seq: &DnSequence, input: Monomial) -> Result<Vec<TraceStep>> {
    check_input(&input)?;
    let mut t = Tracker::new(seq, input);
    if input.is_zero() {
        t.record(StageKind::Integral(0.0));
        return Ok(t.finish());
    }
    for k in 0..seq.m() {
        t.integral(k)?;
        if !t.derivative(k) {
            return Ok(t.finish());
        }
    }
    t.integral(seq.m())?;
    Ok(t.finish())
}

/// Full operator `D^{γ_0,…,γ_m}` applied to a monomial by composition.
pub fn dn_apply_monomial(seq: &DnSequence, input: Monomial) -> Result<PowerRuleResult> {
    Ok(dn_trace(seq, input)?.last().expect("trace is never empty").result)
}

/// Closed-form power rule
/// `D^{γ_0,…,γ_m} y^δ = Γ(δ+1)/Γ(δ+1−α) · y^{δ−α}` for `δ − α_{m−1} > 0`,
/// and the kernel for `δ ∈ {α_0, …, α_{m−1}}`.
pub fn dn_power_rule(seq: &DnSequence, delta: f64) -> Result<PowerRuleResult> {
    if !(delta > -1.0) {
        return Err(domain(format!("power rule needs delta > -1, got {delta}")));
    }
    if seq.kernel_index(delta).is_some() {
        return Ok(PowerRuleResult::Kernel);
    }
    let alpha_prev = seq.alphas()[seq.m() - 1];
    if delta - alpha_prev <= 0.0 {
        return Err(Error::UnsupportedDomain(format!(
            "closed form needs delta - alpha_(m-1) > 0, got delta = {delta}, alpha_(m-1) = {alpha_prev}"
        )));
    }
    cancelled_form(seq, delta)
}

/// The closed form continued past `δ − α_{m−1} > 0`: it only requires
/// `δ + 1 − α > 0`. In the strip `δ ≤ α_{m−1}` the last integral of the
/// composition diverges classically and this is its finite-part value.
pub fn dn_power_rule_continued(seq: &DnSequence, delta: f64) -> Result<PowerRuleResult> {
    if !(delta > -1.0) {
        return Err(domain(format!("power rule needs delta > -1, got {delta}")));
    }
    if seq.kernel_index(delta).is_some() {
        return Ok(PowerRuleResult::Kernel);
    }
    if delta + 1.0 - seq.alpha() <= 0.0 {
        return Err(Error::UnsupportedDomain(format!(
            "continued power rule needs delta + 1 - alpha > 0, got delta = {delta}, alpha = {}",
            seq.alpha()
        )));
    }
    cancelled_form(seq, delta)
}

fn cancelled_form(seq: &DnSequence, delta: f64) -> Result<PowerRuleResult> {
    let alpha = seq.alpha();
    let coeff = gamma_ratio(delta, 1.0, 1.0 - alpha)?;
    Ok(PowerRuleResult::Term(Monomial::new(
        Complex64::new(coeff, 0.0),
        delta - alpha,
    )))
}

/// Cauchy boundary operator `D^{α_j}` (`0 ≤ j ≤ m−1`) applied to a monomial,
/// built from `D^{α_0} = I^{1−γ_0}` and `D^{α_k} = I^{1−γ_k} d/dy D^{α_{k−1}}`.
pub fn boundary_apply_monomial(seq: &DnSequence, j: usize, input: Monomial) -> Result<PowerRuleResult> {
    Ok(boundary_trace(seq, j, input)?
        .last()
        .expect("trace is never empty")
        .result)
}

pub fn boundary_trace(seq: &DnSequence, j: usize, input: Monomial) -> Result<Vec<TraceStep>> {
    if j >= seq.m() {
        return Err(Error::Index { index: j, len: seq.m() });
    }
    check_input(&input)?;
    let mut t = Tracker::new(seq, input);
    if input.is_zero() {
        t.record(StageKind::Integral(0.0));
        return Ok(t.finish());
    }
    t.integral(0)?;
    for k in 1..=j {
        if !t.derivative(k - 1) {
            return Ok(t.finish());
        }
        t.integral(k)?;
    }
    Ok(t.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dn_operator::{rl_sequence, rl_step};
    use crate::special_fn::gamma;

    fn seq(g: &[f64]) -> DnSequence {
        DnSequence::new(g.to_vec()).unwrap()
    }

    fn rel(a: Complex64, b: f64) -> f64 {
        (a - b).norm() / b.abs()
    }

    #[test]
    fn first_derivative_of_y() {
        let r = dn_apply_monomial(&seq(&[1.0, 1.0]), Monomial::power(1.0)).unwrap();
        let t = r.term().unwrap();
        assert!(rel(t.coeff, 1.0) < 1e-15);
        assert_eq!(t.exponent, 0.0);
    }

    #[test]
    fn kernel_powers_vanish() {
        let s = seq(&[0.7, 0.9, 0.8]);
        for &a in &s.alphas()[..2] {
            assert!(dn_apply_monomial(&s, Monomial::power(a)).unwrap().is_kernel());
            assert!(dn_power_rule(&s, a).unwrap().is_kernel());
        }
    }

    #[test]
    fn half_order_rl_on_y_to_three_halves() {
        let r = dn_apply_monomial(&seq(&[0.5, 1.0]), Monomial::power(1.5))
            .unwrap()
            .term()
            .unwrap();
        let want = gamma(2.5).unwrap() / gamma(2.0).unwrap();
        assert!(rel(r.coeff, want) < 1e-14);
        assert!((r.exponent - 1.0).abs() < 1e-15);
        // the single-step RL derivative gives the same monomial
        let direct = rl_step(0.5, Monomial::power(1.5)).unwrap().term().unwrap();
        assert!((direct.coeff - r.coeff).norm() < 1e-14);
    }

    #[test]
    fn power_rule_examples() {
        let s = rl_sequence(0.5, 1).unwrap();
        let r = dn_power_rule(&s, 1.0).unwrap().term().unwrap();
        assert!(rel(r.coeff, 1.0 / gamma(1.5).unwrap()) < 1e-14);
        assert!((r.exponent - 0.5).abs() < 1e-15);

        let s = seq(&[0.7, 0.9, 0.8]);
        let delta = s.alpha() + 0.5 + s.alphas()[1];
        let closed = dn_power_rule(&s, delta).unwrap().term().unwrap();
        let composed = dn_apply_monomial(&s, Monomial::power(delta)).unwrap().term().unwrap();
        assert!((closed.coeff - composed.coeff).norm() <= 1e-12 * closed.coeff.norm());
        assert!((closed.exponent - composed.exponent).abs() < 1e-12);
    }

    /// The un-cancelled product form, evaluated where every factor is finite.
    fn literal_product_form(s: &DnSequence, delta: f64) -> f64 {
        let m = s.m();
        let a = s.alphas();
        let mut num = gamma(delta + 1.0).unwrap();
        for &ak in &a[..m] {
            num *= (delta - ak) * gamma(delta - ak).unwrap();
        }
        let den: f64 = a.iter().map(|&ak| gamma(delta - ak + 1.0).unwrap()).product();
        num / den
    }

    #[test]
    fn product_form_telescopes_to_cancelled_form() {
        let s = seq(&[0.6, 0.85, 0.9, 0.4]);
        for delta in [2.2, 3.05, 5.5] {
            let closed = dn_power_rule(&s, delta).unwrap().term().unwrap();
            assert!(rel(closed.coeff, literal_product_form(&s, delta)) < 1e-12);
        }
    }

    #[test]
    fn power_rule_domains() {
        let s = seq(&[0.4, 0.5, 0.6]);
        assert!(matches!(dn_power_rule(&s, -1.0), Err(Error::Domain(_))));
        // α_1 = -0.1; δ = -0.3 is neither a kernel power nor above α_1
        assert!(matches!(dn_power_rule(&s, -0.3), Err(Error::UnsupportedDomain(_))));
        // composition diverges there too: the last integral meets y^{-1.2}
        assert!(matches!(
            dn_apply_monomial(&s, Monomial::power(-0.3)),
            Err(Error::Domain(_))
        ));
        // the continued form is finite because δ + 1 − α = 0.8 > 0
        assert!(dn_power_rule_continued(&s, -0.3).unwrap().term().is_some());
    }

    #[test]
    fn boundary_three_cases() {
        let s = seq(&[0.7, 0.9, 0.8]);
        let a = s.alphas().to_vec();
        let c0 = boundary_apply_monomial(&s, 0, Monomial::power(a[0]))
            .unwrap()
            .term()
            .unwrap();
        assert!(rel(c0.coeff, gamma(1.0 + a[0]).unwrap()) < 1e-14);
        assert_eq!(c0.exponent, 0.0);

        assert!(boundary_apply_monomial(&s, 1, Monomial::power(a[0]))
            .unwrap()
            .is_kernel());

        let t = boundary_apply_monomial(&s, 0, Monomial::power(a[1]))
            .unwrap()
            .term()
            .unwrap();
        let want = gamma(1.0 + a[1]).unwrap() / gamma(1.0 + a[1] - a[0]).unwrap();
        assert!(rel(t.coeff, want) < 1e-14);
        assert!((t.exponent - (a[1] - a[0])).abs() < 1e-15);

        let c1 = boundary_apply_monomial(&s, 1, Monomial::power(a[1]))
            .unwrap()
            .term()
            .unwrap();
        assert!(rel(c1.coeff, gamma(1.0 + a[1]).unwrap()) < 1e-14);
        assert_eq!(c1.exponent, 0.0);

        assert!(matches!(
            boundary_apply_monomial(&s, 2, Monomial::power(1.0)),
            Err(Error::Index { index: 2, len: 2 })
        ));
    }

    #[test]
    fn trace_stops_at_kernel() {
        let s = seq(&[0.6, 0.8, 0.9]);
        let tr = dn_trace(&s, Monomial::power(s.alphas()[1])).unwrap();
        // I, d, I, d(kernel)
        assert_eq!(tr.len(), 4);
        assert!(tr.last().unwrap().result.is_kernel());
    }
}
