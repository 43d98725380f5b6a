//! Dzhrbashyan-Nersesyan operators: sequences, the power rule, and the
//! Cauchy boundary operators, all acting on single monomials.

mod algebra;
mod monomial;
mod sequence;

pub use algebra::{
    boundary_apply_monomial, boundary_trace, dn_apply_monomial, dn_power_rule, dn_power_rule_continued, dn_trace,
    StageKind, TraceStep,
};
pub use monomial::{rl_step, Monomial, PowerRuleResult};
pub use sequence::{caputo_sequence, hilfer_sequence, rl_sequence, DnSequence, HilferParams};
