//! Analytic lower bounds on tripartite concurrence from GPT trace norms.
//!
//! Every bound has the form `C(rho) >= max_k coeff_k (||T_Yk(rho)|| - 1)`. The
//! report keeps the raw norms, the coefficients and the (possibly negative)
//! terms; `lower_bound` floors the maximum at zero.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::concurrence::concurrence_pure;
use crate::error::{Error, Result};
use crate::gpt::{gpt_norm, CatalogOp};
use crate::tensor::{purity, PureState, Subsystem, SystemDims, TripartiteState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Three qubits, `Y1..Y3` with coefficient 1 and `Y4..Y6` with `1/sqrt 2`.
    T1,
    /// General `m x n x p` with `m <= n, p`.
    T2,
    /// Three qubits whose decomposition is assumed to contain only
    /// `l0|000> + l4|111>` states; all nine operations with coefficient 1.
    Corollary,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::Corollary => "Corollary",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub dims: [usize; 3],
    pub norms: BTreeMap<CatalogOp, f64>,
    pub coefficients: BTreeMap<CatalogOp, f64>,
    /// `coefficient * (norm - 1)`; may be negative.
    pub bound_terms: BTreeMap<CatalogOp, f64>,
    /// `max(0, max bound_terms)`.
    pub lower_bound: f64,
    /// True when the bound rests on a caller-asserted hypothesis.
    pub conditional: bool,
    pub notes: Vec<String>,
}

impl BoundReport {
    fn build(
        theorem: Theorem,
        s: &TripartiteState,
        weighted: &[(CatalogOp, f64)],
        conditional: bool,
        notes: Vec<String>,
    ) -> Result<Self> {
        let mut norms = BTreeMap::new();
        let mut coefficients = BTreeMap::new();
        let mut bound_terms = BTreeMap::new();
        for &(op, coeff) in weighted {
            let norm = gpt_norm(s, op.operation())?;
            norms.insert(op, norm);
            coefficients.insert(op, coeff);
            bound_terms.insert(op, coeff * (norm - 1.0));
        }
        let lower_bound = bound_terms.values().copied().fold(0.0, f64::max);
        Ok(Self {
            theorem,
            dims: s.dims().as_array(),
            norms,
            coefficients,
            bound_terms,
            lower_bound,
            conditional,
            notes,
        })
    }

    /// Operation attaining the bound, if any term is positive.
    pub fn witness(&self) -> Option<CatalogOp> {
        self.bound_terms
            .iter()
            .filter(|(_, &t)| t > 0.0)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(&op, _)| op)
    }

    /// Largest discrepancy between stored terms and `coefficient * (norm - 1)`.
    pub fn consistency_error(&self) -> f64 {
        self.bound_terms
            .iter()
            .map(|(op, &t)| (self.coefficients[op] * (self.norms[op] - 1.0) - t).abs())
            .fold(0.0, f64::max)
    }
}

fn require_qubits(s: &TripartiteState, theorem: &'static str, hint: &str) -> Result<()> {
    let d = s.dims();
    if d != SystemDims::QUBITS {
        return Err(Error::UnsupportedDims {
            theorem,
            required: "(2, 2, 2)",
            m: d.m,
            n: d.n,
            p: d.p,
            hint: hint.to_string(),
        });
    }
    Ok(())
}

/// Three-qubit bound: `max{||T_Yi|| - 1, (||T_Yj|| - 1)/sqrt 2}`, `i = 1..3`, `j = 4..6`.
pub fn bound_theorem1(s: &TripartiteState) -> Result<BoundReport> {
    require_qubits(s, "Theorem 1", "; use bound_theorem2 for other dimensions")?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let weighted = [
        (CatalogOp::Y1, 1.0),
        (CatalogOp::Y2, 1.0),
        (CatalogOp::Y3, 1.0),
        (CatalogOp::Y4, r),
        (CatalogOp::Y5, r),
        (CatalogOp::Y6, r),
    ];
    BoundReport::build(Theorem::T1, s, &weighted, false, Vec::new())
}

/// Effective bipartite dimensions of the three single-party cuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimensionCoefficients {
    pub m: usize,
    /// `min(n, m p)`
    pub q: usize,
    /// `min(p, m n)`
    pub r: usize,
}

impl DimensionCoefficients {
    pub fn new(dims: SystemDims) -> Self {
        Self {
            m: dims.m,
            q: dims.n.min(dims.m * dims.p),
            r: dims.p.min(dims.m * dims.n),
        }
    }

    /// `sqrt(1 / (k (k - 1)))`, or `None` for a one-dimensional cut.
    pub fn coefficient(k: usize) -> Option<f64> {
        (k >= 2).then(|| (1.0 / (k * (k - 1)) as f64).sqrt())
    }
}

/// Subsystem order that moves the first smallest party to the front, as
/// `bound_theorem2` requires; the other two keep their relative order.
pub fn theorem2_order(dims: SystemDims) -> [Subsystem; 3] {
    let smallest = Subsystem::ALL
        .into_iter()
        .min_by_key(|&s| dims.get(s))
        .expect("three parties");
    let mut order = [smallest; 3];
    for (slot, s) in order[1..]
        .iter_mut()
        .zip(Subsystem::ALL.into_iter().filter(|&s| s != smallest))
    {
        *slot = s;
    }
    order
}

/// General bound for `m <= n, p`:
/// `max{c_m (||T_Ya|| - 1), c_q (||T_Yb|| - 1), c_r (||T_Yc|| - 1)}` with
/// `Ya in {Y1, Y4}`, `Yb in {Y2, Y6}`, `Yc in {Y3, Y5}` and
/// `c_k = sqrt(1/(k(k-1)))`. Cuts of dimension one are omitted.
pub fn bound_theorem2(s: &TripartiteState) -> Result<BoundReport> {
    let dims = s.dims();
    if dims.m > dims.n || dims.m > dims.p {
        let order = theorem2_order(dims);
        return Err(Error::UnsupportedDims {
            theorem: "Theorem 2",
            required: "with m <= n and m <= p",
            m: dims.m,
            n: dims.n,
            p: dims.p,
            hint: format!(
                "; reorder subsystems as ({}, {}, {}) with TripartiteState::permute_subsystems",
                order[0], order[1], order[2]
            ),
        });
    }
    let k = DimensionCoefficients::new(dims);
    let mut weighted = Vec::with_capacity(6);
    let mut notes = Vec::new();
    for (dim, label, ops) in [
        (k.m, "m", [CatalogOp::Y1, CatalogOp::Y4]),
        (k.q, "q", [CatalogOp::Y2, CatalogOp::Y6]),
        (k.r, "r", [CatalogOp::Y3, CatalogOp::Y5]),
    ] {
        match DimensionCoefficients::coefficient(dim) {
            Some(c) => weighted.extend(ops.map(|op| (op, c))),
            None => notes.push(format!("{}/{} omitted: {label} = 1", ops[0], ops[1])),
        }
    }
    BoundReport::build(Theorem::T2, s, &weighted, false, notes)
}

/// `max_j ||T_Yj|| - 1` over all nine operations. Valid only if `rho` has a
/// decomposition into `l0|000> + l4|111>` states; the caller asserts this and
/// the report is marked conditional.
pub fn bound_corollary(s: &TripartiteState) -> Result<BoundReport> {
    require_qubits(s, "Corollary", "")?;
    let weighted: Vec<(CatalogOp, f64)> = CatalogOp::ALL.iter().map(|&op| (op, 1.0)).collect();
    BoundReport::build(
        Theorem::Corollary,
        s,
        &weighted,
        true,
        vec!["assumes every state of some pure decomposition has the form l0|000> + l4|111>".into()],
    )
}

/// One bipartite cut `k | rest` of a pure state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutCheck {
    pub party: Subsystem,
    /// `1 - Tr rho_k^2`
    pub linear_entropy: f64,
    /// `1 / (M (M - 1))` with `M` the smaller side of the cut; 0 when `M = 1`.
    pub coefficient: f64,
    /// Partial transpose and one-versus-two realignment norms of this cut.
    pub norms: [(CatalogOp, f64); 2],
    /// `linear_entropy - coefficient * max(0, max norm - 1)^2`
    pub residual: f64,
    pub holds: bool,
}

/// Checks `1 - Tr rho_k^2 >= (||T_Y(rho)|| - 1)^2 / (M (M - 1))` for each
/// party `k` and both operations acting on that cut (`A: Y1, Y4`;
/// `B: Y2, Y6`; `C: Y3, Y5`). Residuals down to `-tol` count as holding.
pub fn proof_cut_inequalities(v: &PureState, tol: f64) -> Result<[CutCheck; 3]> {
    let dims = v.dims();
    let s = v.density();
    let [m, n, p] = dims.as_array();
    let cut = |party: Subsystem, ops: [CatalogOp; 2]| -> Result<CutCheck> {
        let smaller = match party {
            Subsystem::A => m.min(n * p),
            Subsystem::B => n.min(m * p),
            Subsystem::C => p.min(m * n),
        };
        let coefficient = if smaller >= 2 {
            1.0 / (smaller * (smaller - 1)) as f64
        } else {
            0.0
        };
        let linear_entropy = 1.0 - purity(&v.reduced(party))?;
        let n0 = gpt_norm(&s, ops[0].operation())?;
        let n1 = gpt_norm(&s, ops[1].operation())?;
        let excess = (n0.max(n1) - 1.0).max(0.0);
        let residual = linear_entropy - coefficient * excess * excess;
        Ok(CutCheck {
            party,
            linear_entropy,
            coefficient,
            norms: [(ops[0], n0), (ops[1], n1)],
            residual,
            holds: residual >= -tol,
        })
    };
    Ok([
        cut(Subsystem::A, [CatalogOp::Y1, CatalogOp::Y4])?,
        cut(Subsystem::B, [CatalogOp::Y2, CatalogOp::Y6])?,
        cut(Subsystem::C, [CatalogOp::Y3, CatalogOp::Y5])?,
    ])
}

/// `sum_i p_i C(|v_i>)`, an upper bound on the concurrence of the mixture.
pub fn ensemble_concurrence(ensemble: &[(f64, &PureState)]) -> Result<f64> {
    ensemble
        .iter()
        .map(|&(w, v)| Ok(w * concurrence_pure(v)?))
        .sum()
}
