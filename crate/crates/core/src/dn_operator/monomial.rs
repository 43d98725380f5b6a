use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::special_fn::gamma_ratio;

use super::sequence::KERNEL_TOL;

/// A term `coeff · y^exponent`. A zero coefficient is the zero monomial,
/// whatever the exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Monomial {
    pub coeff: Complex64,
    pub exponent: f64,
}

impl Monomial {
    pub fn new(coeff: Complex64, exponent: f64) -> Self {
        Self { coeff, exponent }
    }

    /// `y^exponent` with unit coefficient.
    pub fn power(exponent: f64) -> Self {
        Self::new(Complex64::new(1.0, 0.0), exponent)
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff == Complex64::new(0.0, 0.0)
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        if self.is_zero() {
            return self.coeff;
        }
        self.coeff * y.powf(self.exponent)
    }

    pub fn scale(self, factor: Complex64) -> Self {
        Self::new(self.coeff * factor, self.exponent)
    }

    /// Riemann-Liouville integral of order `sigma ≥ 0`:
    /// `I^σ y^δ = Γ(δ+1)/Γ(δ+1+σ) · y^{δ+σ}`, defined for `δ > −1`.
    pub(crate) fn integrate(self, sigma: f64) -> Result<Self> {
        if sigma == 0.0 || self.is_zero() {
            return Ok(self);
        }
        if self.exponent <= -1.0 {
            return Err(domain(format!(
                "RL integral of order {sigma} diverges for y^{} (exponent <= -1)",
                self.exponent
            )));
        }
        let factor = gamma_ratio(self.exponent, 1.0, 1.0 + sigma)?;
        Ok(Self::new(self.coeff * factor, self.exponent + sigma))
    }

    /// `d/dy`; `None` when the monomial is a constant.
    pub(crate) fn differentiate(self) -> Option<Self> {
        if self.exponent.abs() <= KERNEL_TOL {
            return None;
        }
        Some(Self::new(self.coeff * self.exponent, self.exponent - 1.0))
    }
}

/// Image of a monomial under an operator: annihilated, or a single term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PowerRuleResult {
    Kernel,
    Term(Monomial),
}

impl PowerRuleResult {
    pub fn is_kernel(&self) -> bool {
        matches!(self, PowerRuleResult::Kernel)
    }

    pub fn term(&self) -> Option<Monomial> {
        match self {
            PowerRuleResult::Kernel => None,
            PowerRuleResult::Term(m) => Some(*m),
        }
    }

    pub fn eval(&self, y: f64) -> Complex64 {
        self.term().map_or(Complex64::new(0.0, 0.0), |m| m.eval(y))
    }
}

/// Riemann-Liouville differintegral of order `order` applied to a monomial.
///
/// Negative orders integrate; order 0 is the identity; a positive order
/// `p − 1 < order ≤ p` integrates by `p − order` and then differentiates `p`
/// times. Differentiating a constant yields [`PowerRuleResult::Kernel`], which
/// is how the kernel powers `y^{order−1}, …, y^{order−p}` vanish.
pub fn rl_step(order: f64, input: Monomial) -> Result<PowerRuleResult> {
    if input.is_zero() {
        return Ok(PowerRuleResult::Term(Monomial::zero()));
    }
    if order <= 0.0 {
        return input.integrate(-order).map(PowerRuleResult::Term);
    }
    let p = order.ceil();
    let mut current = input.integrate(p - order)?;
    for _ in 0..p as usize {
        match current.differentiate() {
            Some(next) => current = next,
            None => return Ok(PowerRuleResult::Kernel),
        }
    }
    Ok(PowerRuleResult::Term(current))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::gamma;

    fn approx(a: Complex64, b: f64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.abs().max(1e-300)
    }

    #[test]
    fn integrating_one() {
        let r = rl_step(-1.0, Monomial::power(0.0)).unwrap().term().unwrap();
        assert!(approx(r.coeff, 1.0, 1e-15));
        assert_eq!(r.exponent, 1.0);
    }

    #[test]
    fn kernel_power_of_half_derivative() {
        assert_eq!(rl_step(0.5, Monomial::power(-0.5)).unwrap(), PowerRuleResult::Kernel);
    }

    #[test]
    fn half_derivative_of_y() {
        let r = rl_step(0.5, Monomial::power(1.0)).unwrap().term().unwrap();
        let want = gamma(2.0).unwrap() / gamma(1.5).unwrap();
        assert!(approx(r.coeff, want, 1e-14));
        assert!((r.exponent - 0.5).abs() < 1e-15);
    }

    #[test]
    fn higher_order_kernels() {
        // D^{1.5} kills y^{0.5} and y^{-0.5}
        assert!(rl_step(1.5, Monomial::power(0.5)).unwrap().is_kernel());
        assert!(rl_step(1.5, Monomial::power(-0.5)).unwrap().is_kernel());
        // ordinary second derivative of y^3
        let r = rl_step(2.0, Monomial::power(3.0)).unwrap().term().unwrap();
        assert!(approx(r.coeff, 6.0, 1e-15));
        assert_eq!(r.exponent, 1.0);
    }

    #[test]
    fn divergent_integral_is_a_domain_error() {
        assert!(rl_step(-0.5, Monomial::power(-1.0)).is_err());
        assert!(rl_step(0.3, Monomial::power(-1.2)).is_err());
    }

    #[test]
    fn zero_maps_to_zero() {
        let r = rl_step(0.7, Monomial::zero()).unwrap();
        assert!(r.term().unwrap().is_zero());
    }
}
