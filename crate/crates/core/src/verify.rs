//! Monte-Carlo verification campaigns.
//!
//! Sample `i` of a run draws from `RngSeed(seed).derive(i)`, so results do not
//! depend on how rayon splits the work.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{bound_theorem1, bound_theorem2, proof_cut_inequalities};
use crate::concurrence::{
    class1_norm_closed_form, class1_residuals_closed_form, concurrence_closed_form, concurrence_pure,
    purity_closed_form, schmidt_state,
};
use crate::error::{Error, Result};
use crate::gpt::{gpt_norm, CatalogOp};
use crate::states::{random_pure_state, random_schmidt_params, RngSeed};
use crate::tensor::{purity, Subsystem, SystemDims};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Theorem-1 soundness on Schmidt-form pure states plus the three
    /// class-I residual identities.
    T1Pure,
    /// `C >= max_{Y7,Y8,Y9} norm - 1` on Schmidt-form pure states.
    CorollaryNumeric,
    /// Bipartite-cut inequalities and Theorem-2 soundness on Haar-random pure
    /// states in `(2,2,2)` and, at a tenth of the sample count, `(2,3,2)`.
    Cuts,
    /// Closed-form concurrence, purities and class-I norms against the
    /// numeric pipeline.
    ClosedForms,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::T1Pure, Suite::CorollaryNumeric, Suite::Cuts, Suite::ClosedForms];

    pub fn name(self) -> &'static str {
        match self {
            Suite::T1Pure => "t1-pure",
            Suite::CorollaryNumeric => "corollary-numeric",
            Suite::Cuts => "cuts",
            Suite::ClosedForms => "closed-forms",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "unknown suite `{s}` (expected one of t1-pure, corollary-numeric, cuts, closed-forms)"
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunConfig {
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            seed: 42,
            tolerance: 1e-9,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be >= 1".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameter(format!("tolerance must be > 0, got {}", self.tolerance)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
struct Outcome {
    /// Smallest slack of the inequalities checked (`+inf` if none).
    slack: f64,
    /// Largest disagreement between two routes (`0` if none).
    discrepancy: f64,
    violated: bool,
}

#[derive(Debug, Clone, Copy)]
struct Tally {
    violations: u64,
    min_slack: f64,
    max_discrepancy: f64,
    first_violation: Option<u64>,
}

impl Tally {
    const EMPTY: Tally = Tally {
        violations: 0,
        min_slack: f64::INFINITY,
        max_discrepancy: 0.0,
        first_violation: None,
    };

    fn merge(self, other: Tally) -> Tally {
        Tally {
            violations: self.violations + other.violations,
            min_slack: self.min_slack.min(other.min_slack),
            max_discrepancy: self.max_discrepancy.max(other.max_discrepancy),
            first_violation: match (self.first_violation, other.first_violation) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub suite: Suite,
    pub samples: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub violations: u64,
    /// Smallest inequality slack for inequality suites; largest `|closed -
    /// numeric|` for `closed-forms`.
    pub worst_residual: f64,
    /// Largest disagreement between two computation routes, where the suite
    /// compares any.
    pub max_discrepancy: Option<f64>,
    /// Index of the first failing sample.
    pub first_violation: Option<u64>,
    pub elapsed_seconds: f64,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn run_samples(count: u64, f: impl Fn(u64) -> Result<Outcome> + Sync) -> Result<Tally> {
    (0..count)
        .into_par_iter()
        .map(|i| {
            let o = f(i)?;
            Ok(Tally {
                violations: u64::from(o.violated),
                min_slack: o.slack,
                max_discrepancy: o.discrepancy,
                first_violation: o.violated.then_some(i),
            })
        })
        .try_reduce(|| Tally::EMPTY, |a, b| Ok(a.merge(b)))
}

pub fn run_suite(suite: Suite, config: &RunConfig) -> Result<VerifySummary> {
    config.validate()?;
    let start = Instant::now();
    let seed = RngSeed(config.seed);
    let tol = config.tolerance;
    let (tally, samples) = match suite {
        Suite::T1Pure => (run_samples(config.samples, |i| t1_pure_sample(seed.derive(i), tol))?, config.samples),
        Suite::CorollaryNumeric => (
            run_samples(config.samples, |i| corollary_sample(seed.derive(i), tol))?,
            config.samples,
        ),
        Suite::ClosedForms => (
            run_samples(config.samples, |i| closed_form_sample(seed.derive(i), tol))?,
            config.samples,
        ),
        Suite::Cuts => {
            let qubits = SystemDims::QUBITS;
            let wide = SystemDims::new(2, 3, 2)?;
            let extra = config.samples.div_ceil(10);
            let other = RngSeed(config.seed ^ 0x5eed_0232);
            let a = run_samples(config.samples, |i| cut_sample(qubits, seed.derive(i), tol))?;
            let mut b = run_samples(extra, |i| cut_sample(wide, other.derive(i), tol))?;
            b.first_violation = b.first_violation.map(|i| i + config.samples);
            (a.merge(b), config.samples + extra)
        }
    };
    let worst_residual = match suite {
        Suite::ClosedForms => tally.max_discrepancy,
        _ => tally.min_slack,
    };
    let max_discrepancy = matches!(suite, Suite::T1Pure | Suite::ClosedForms).then_some(tally.max_discrepancy);
    Ok(VerifySummary {
        suite,
        samples,
        seed: config.seed,
        tolerance: tol,
        violations: tally.violations,
        worst_residual,
        max_discrepancy,
        first_violation: tally.first_violation,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

/// Theorem-2 soundness and cut inequalities for `count` Haar-random pure
/// states of the given dims (which must satisfy `m <= n, p`).
pub fn run_cut_campaign(dims: SystemDims, count: u64, seed: u64, tol: f64) -> Result<VerifySummary> {
    let config = RunConfig {
        samples: count,
        seed,
        tolerance: tol,
    };
    config.validate()?;
    let start = Instant::now();
    let tally = run_samples(count, |i| cut_sample(dims, RngSeed(seed).derive(i), tol))?;
    Ok(VerifySummary {
        suite: Suite::Cuts,
        samples: count,
        seed,
        tolerance: tol,
        violations: tally.violations,
        worst_residual: tally.min_slack,
        max_discrepancy: None,
        first_violation: tally.first_violation,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    })
}

fn t1_pure_sample(seed: RngSeed, tol: f64) -> Result<Outcome> {
    let params = random_schmidt_params(seed);
    let v = schmidt_state(&params);
    let c = concurrence_pure(&v)?;
    let report = bound_theorem1(&v.density())?;
    let closed = class1_residuals_closed_form(&params);
    let mut slack = c - report.lower_bound;
    let mut discrepancy = 0.0f64;
    for (k, op) in [CatalogOp::Y1, CatalogOp::Y2, CatalogOp::Y3].into_iter().enumerate() {
        let excess = report.norms[&op] - 1.0;
        let numeric = c * c - excess * excess;
        discrepancy = discrepancy.max((numeric - closed[k]).abs());
        slack = slack.min(numeric).min(closed[k]);
    }
    Ok(Outcome {
        slack,
        discrepancy,
        violated: slack < -tol || discrepancy > tol,
    })
}

fn corollary_sample(seed: RngSeed, tol: f64) -> Result<Outcome> {
    let v = schmidt_state(&random_schmidt_params(seed));
    let s = v.density();
    let c = concurrence_pure(&v)?;
    let mut max_norm = f64::NEG_INFINITY;
    for op in [CatalogOp::Y7, CatalogOp::Y8, CatalogOp::Y9] {
        max_norm = max_norm.max(gpt_norm(&s, op.operation())?);
    }
    let slack = c - (max_norm - 1.0);
    Ok(Outcome {
        slack,
        discrepancy: 0.0,
        violated: slack < -tol,
    })
}

fn closed_form_sample(seed: RngSeed, tol: f64) -> Result<Outcome> {
    let params = random_schmidt_params(seed);
    let v = schmidt_state(&params);
    let s = v.density();
    let mut discrepancy = (concurrence_closed_form(&params)? - concurrence_pure(&v)?).abs();
    for (party, op) in Subsystem::ALL.into_iter().zip([CatalogOp::Y1, CatalogOp::Y2, CatalogOp::Y3]) {
        let numeric = gpt_norm(&s, op.operation())?;
        discrepancy = discrepancy.max((class1_norm_closed_form(&params, party) - numeric).abs());
        let numeric_purity = purity(&s.partial_trace(party))?;
        discrepancy = discrepancy.max((purity_closed_form(&params, party) - numeric_purity).abs());
    }
    Ok(Outcome {
        slack: f64::INFINITY,
        discrepancy,
        violated: discrepancy > tol,
    })
}

fn cut_sample(dims: SystemDims, seed: RngSeed, tol: f64) -> Result<Outcome> {
    let v = random_pure_state(dims, seed);
    let c = concurrence_pure(&v)?;
    let bound = bound_theorem2(&v.density())?;
    let mut slack = c - bound.lower_bound;
    for check in proof_cut_inequalities(&v, tol)? {
        slack = slack.min(check.residual);
    }
    Ok(Outcome {
        slack,
        discrepancy: 0.0,
        violated: slack < -tol,
    })
}
