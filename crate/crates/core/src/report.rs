use std::fmt;

use serde::Serialize;

use crate::matrix::{vector, Vector};
use crate::scalar::Scalar;

/// Number of failures kept verbatim in a report; later ones are only counted.
pub const MAX_RECORDED_FAILURES: usize = 16;

/// One violated instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    /// Basis indices (0-based) of the arguments.
    pub indices: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_vec = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        write!(
            f,
            "{} at {:?}: lhs = ({}), rhs = ({})",
            self.identity,
            self.indices,
            fmt_vec(&self.lhs),
            fmt_vec(&self.rhs)
        )
    }
}

/// Outcome of an identity check: passes iff there are no failures.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub failures: Vec<Failure>,
    /// Failures beyond [`MAX_RECORDED_FAILURES`] that were counted but dropped.
    pub omitted: usize,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure_count(&self) -> usize {
        self.failures.len() + self.omitted
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.failures.first()
    }

    pub fn push(&mut self, failure: Failure) {
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(failure);
        } else {
            self.omitted += 1;
        }
    }

    /// Records a failure when `lhs != rhs`.
    pub fn expect_eq(&mut self, identity: &str, indices: &[usize], lhs: Vector, rhs: Vector) {
        if lhs != rhs {
            self.push(Failure { identity: identity.to_string(), indices: indices.to_vec(), lhs, rhs });
        }
    }

    /// Records a failure when `value` is nonzero (`rhs` is reported as zero).
    pub fn expect_zero(&mut self, identity: &str, indices: &[usize], value: Vector) {
        if !vector::is_zero(&value) {
            let rhs = vector::zeros(value.len());
            self.push(Failure { identity: identity.to_string(), indices: indices.to_vec(), lhs: value, rhs });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        for f in other.failures {
            self.push(f);
        }
        self.omitted += other.omitted;
    }

    /// One-line summary naming the first failure, used in error messages.
    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => "pass".to_string(),
            Some(f) => format!("{} failure(s); first: {f}", self.failure_count()),
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS");
        }
        writeln!(f, "FAIL ({} failure(s))", self.failure_count())?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        if self.omitted > 0 {
            writeln!(f, "  ... {} more", self.omitted)?;
        }
        Ok(())
    }
}
