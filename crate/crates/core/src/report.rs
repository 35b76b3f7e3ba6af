//! Check outcomes and the tolerance set they are judged against.

use alloc::string::String;
use alloc::vec::Vec;

use crate::element::GroupElement;

/// Numeric slack used by the checks, one knob per error regime.
///
/// Every report records the tolerance it was judged against, so a stored
/// report is meaningful without the configuration that produced it.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Tolerances {
    /// Floating-point slack for algebraic identities that are exact in real
    /// arithmetic (group laws, metric axioms, translation inequalities).
    /// One rounding step per arithmetic operation keeps residuals near
    /// 1e-16 at unit scale; 1e-9 leaves room for the largest sampled
    /// magnitudes.
    pub fp: f64,
    /// Relative slack for the homomorphism law. Separate from `fp` because
    /// the residual compares two independently rounded composition chains.
    pub hom: f64,
    /// Absolute slack for slope factorization residuals.
    pub fact_abs: f64,
    /// Relative part of the factorization slack, scaled by the local
    /// magnitude of the factored function.
    pub fact_rel: f64,
    /// Slack for n-th root round trips (`n`-fold power of the root against
    /// the original element).
    pub root: f64,
    /// Tail threshold for limit-style checks: convergence probes and
    /// uniqueness sequences must end below this value.
    pub limit: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fp: 1e-9,
            hom: 1e-9,
            fact_abs: 1e-10,
            fact_rel: 1e-9,
            root: 1e-10,
            limit: 1e-6,
        }
    }
}

/// One point of a recorded sweep (radius/step against observed value).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ProfilePoint {
    /// Sweep parameter: a radius, a sequence index, or a root order.
    pub parameter: f64,
    /// Observed value at that parameter.
    pub value: f64,
}

/// Concrete inputs that exhibited the worst violation of a check.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Witness {
    /// What the recorded elements violated.
    pub message: String,
    /// The offending elements.
    pub elements: Vec<GroupElement>,
}

/// Outcome of a single check.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VerificationReport {
    /// Stable check identifier.
    pub check: String,
    /// Name of the law the check verifies.
    pub anchor: String,
    /// Verdict.
    pub passed: bool,
    /// Number of sampled inputs examined.
    pub samples: usize,
    /// Degenerate inputs that were skipped rather than judged.
    pub skipped: usize,
    /// Largest violation observed (0 when every sample satisfied the law
    /// outright).
    pub max_violation: f64,
    /// Tolerance the violations were compared against.
    pub tolerance: f64,
    /// Description of the probe set, when the check evaluated one.
    pub probe: Option<String>,
    /// Recorded sweep, when the check produced one.
    pub profile: Vec<ProfilePoint>,
    /// Worst offending inputs, when the check failed on a sample.
    pub witness: Option<Witness>,
    /// Free-form notes (e.g. estimated constants, tail values).
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Fresh report that passes until a violation is recorded.
    pub fn new(check: &str, anchor: &str, tolerance: f64) -> Self {
        VerificationReport {
            check: String::from(check),
            anchor: String::from(anchor),
            passed: true,
            samples: 0,
            skipped: 0,
            max_violation: 0.0,
            tolerance,
            probe: None,
            profile: Vec::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Records one observation: keeps the running maximum and captures a
    /// witness the first time the tolerance is exceeded by a new maximum.
    pub fn observe<F>(&mut self, violation: f64, witness: F)
    where
        F: FnOnce() -> Witness,
    {
        if violation > self.max_violation {
            self.max_violation = violation;
            if violation > self.tolerance {
                self.witness = Some(witness());
            }
        }
    }

    /// Final verdict from the recorded maximum plus any extra conditions the
    /// check folded in through `and_condition`.
    pub fn finish(mut self) -> Self {
        self.passed = self.passed && self.max_violation <= self.tolerance;
        self
    }

    /// Fold an extra pass/fail condition into the verdict.
    pub fn and_condition(&mut self, ok: bool, note: &str) {
        if !ok {
            self.passed = false;
            self.notes.push(String::from(note));
        }
    }
}

/// True when the sequence is non-increasing within `slack` from some index
/// in its first half onward.
///
/// Limit checks use this as their "eventually decreasing" test: early terms
/// may wobble, the tail may not.
pub fn eventually_decreasing(values: &[f64], slack: f64) -> bool {
    if values.len() < 2 {
        return true;
    }
    let latest_start = values.len() / 2;
    'start: for start in 0..=latest_start {
        for w in values[start..].windows(2) {
            if w[1] > w[0] + slack {
                continue 'start;
            }
        }
        return true;
    }
    false
}
