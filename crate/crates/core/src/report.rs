use std::fmt;

/// Verdict of a verification run.
///
/// `passed` is always `max_rel_error <= tolerance`, except that a run which
/// could not complete (truncation failure, divergent term) is constructed
/// through [`ResidualReport::failed`] and never passes.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub max_rel_error: f64,
    pub worst_y: f64,
    pub terms_used: usize,
    pub passed: bool,
    pub tolerance: f64,
    /// Terms whose operator image was only defined through the analytically
    /// continued power rule (divergent classical integral).
    pub regularized_terms: usize,
    pub note: Option<String>,
}

impl ResidualReport {
    pub fn new(max_rel_error: f64, worst_y: f64, terms_used: usize, tolerance: f64) -> Self {
        Self {
            max_rel_error,
            worst_y,
            terms_used,
            passed: max_rel_error <= tolerance,
            tolerance,
            regularized_terms: 0,
            note: None,
        }
    }

    pub fn failed(tolerance: f64, note: impl Into<String>) -> Self {
        Self {
            max_rel_error: f64::INFINITY,
            worst_y: f64::NAN,
            terms_used: 0,
            passed: false,
            tolerance,
            regularized_terms: 0,
            note: Some(note.into()),
        }
    }

    /// Re-judges the report against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.max_rel_error <= tolerance;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Combines two reports: worst error wins, a failure anywhere is a failure.
    pub fn merge(self, other: ResidualReport) -> ResidualReport {
        let (worst, best) = if other.max_rel_error > self.max_rel_error
            || (other.max_rel_error.is_nan() && !self.max_rel_error.is_nan())
        {
            (other, self)
        } else {
            (self, other)
        };
        let note = worst.note.clone().or(best.note.clone());
        ResidualReport {
            max_rel_error: worst.max_rel_error,
            worst_y: worst.worst_y,
            terms_used: worst.terms_used.max(best.terms_used),
            passed: worst.passed && best.passed,
            tolerance: worst.tolerance.max(best.tolerance),
            regularized_terms: worst.regularized_terms + best.regularized_terms,
            note,
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} max_rel_err={:e} tol={:e} worst_y={} terms={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.max_rel_error,
            self.tolerance,
            self.worst_y,
            self.terms_used
        )?;
        if let Some(note) = &self.note {
            write!(f, " ({note})")?;
        }
        Ok(())
    }
}
