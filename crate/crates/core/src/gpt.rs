//! Generalized partial transpositions of tripartite density matrices.
//!
//! A density matrix element `rho[(a, b, c), (a', b', c')]` carries six index
//! slots: a row slot and a column slot per party. A [`GptOperation`] flips
//! the side (row or column) of a subset of those slots; the image matrix is
//! indexed by whichever slots end up on each side. Within a side, slots are
//! ordered by party A, B, C and, within a party, the row slot precedes the
//! column slot. With this ordering `{c_A, r_B}` gives
//! `X[(i, j, m), (k, l, n)] = rho[(i, k, m), (j, l, n)]`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::trace_norm;
use crate::tensor::{ComplexMatrix, Subsystem, TripartiteState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Row,
    Column,
}

/// One of the six index slots of a tripartite operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexSlot {
    pub subsystem: Subsystem,
    pub side: Side,
}

impl IndexSlot {
    /// All six slots in canonical order.
    pub const ALL: [IndexSlot; 6] = [
        IndexSlot::new(Subsystem::A, Side::Row),
        IndexSlot::new(Subsystem::A, Side::Column),
        IndexSlot::new(Subsystem::B, Side::Row),
        IndexSlot::new(Subsystem::B, Side::Column),
        IndexSlot::new(Subsystem::C, Side::Row),
        IndexSlot::new(Subsystem::C, Side::Column),
    ];

    pub const fn new(subsystem: Subsystem, side: Side) -> Self {
        Self { subsystem, side }
    }

    /// Row transposition of one party (`r_k`).
    pub const fn row(subsystem: Subsystem) -> Self {
        Self::new(subsystem, Side::Row)
    }

    /// Column transposition of one party (`c_k`).
    pub const fn col(subsystem: Subsystem) -> Self {
        Self::new(subsystem, Side::Column)
    }

    /// Position in the canonical order, also the bit used by [`GptOperation`].
    #[inline]
    const fn bit(self) -> u8 {
        let base = match self.subsystem {
            Subsystem::A => 0,
            Subsystem::B => 2,
            Subsystem::C => 4,
        };
        match self.side {
            Side::Row => base,
            Side::Column => base + 1,
        }
    }
}

impl fmt::Display for IndexSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Row => 'r',
            Side::Column => 'c',
        };
        write!(f, "{side}{}", self.subsystem)
    }
}

/// A set of slot flips. The empty set is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GptOperation {
    mask: u8,
}

impl GptOperation {
    pub const IDENTITY: GptOperation = GptOperation { mask: 0 };

    pub fn from_slots(slots: impl IntoIterator<Item = IndexSlot>) -> Self {
        let mask = slots.into_iter().fold(0u8, |m, s| m | (1 << s.bit()));
        Self { mask }
    }

    const fn from_mask(mask: u8) -> Self {
        Self { mask: mask & 0x3f }
    }

    /// Flips every one of the six slots; the image is the plain transpose.
    pub const fn full_transpose() -> Self {
        Self::from_mask(0x3f)
    }

    /// Every subset of the six slots, identity first.
    pub fn all() -> impl Iterator<Item = GptOperation> {
        (0u8..64).map(Self::from_mask)
    }

    pub fn contains(&self, slot: IndexSlot) -> bool {
        self.mask & (1 << slot.bit()) != 0
    }

    pub fn is_identity(&self) -> bool {
        self.mask == 0
    }

    /// Flipped slots in canonical order.
    pub fn slots(&self) -> impl Iterator<Item = IndexSlot> + '_ {
        IndexSlot::ALL.into_iter().filter(|s| self.contains(*s))
    }

    /// Applying `self` then `other`: slots flipped twice return to their side.
    pub fn compose(self, other: GptOperation) -> GptOperation {
        Self::from_mask(self.mask ^ other.mask)
    }

    /// Side a slot sits on after this operation is applied.
    pub fn side_of(&self, slot: IndexSlot) -> Side {
        match (slot.side, self.contains(slot)) {
            (s, false) => s,
            (Side::Row, true) => Side::Column,
            (Side::Column, true) => Side::Row,
        }
    }

    /// Catalog name if this operation is one of `Y1..Y9`, else the slot list.
    pub fn name(&self) -> String {
        if let Some(op) = CatalogOp::ALL.into_iter().find(|c| c.operation() == *self) {
            return op.to_string();
        }
        if self.is_identity() {
            return "identity".to_string();
        }
        self.slots().map(|s| s.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for GptOperation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl Serialize for GptOperation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

/// Parses `"Y1".."Y9"`, `"identity"`, or a comma list of atomic slots such
/// as `"cA,rBC"` (case-insensitive; side letter and party letters in either
/// order, a multi-party token expands to one slot per party).
impl FromStr for GptOperation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("identity") || t.eq_ignore_ascii_case("id") {
            return Ok(Self::IDENTITY);
        }
        if let Ok(op) = t.parse::<CatalogOp>() {
            return Ok(op.operation());
        }
        let mut slots = Vec::new();
        for token in t.split(',') {
            slots.extend(parse_slot_token(token.trim()).ok_or_else(|| Error::UnknownOperation(s.to_string()))?);
        }
        Ok(Self::from_slots(slots))
    }
}

fn parse_slot_token(token: &str) -> Option<Vec<IndexSlot>> {
    if token.len() < 2 || !token.is_ascii() {
        return None;
    }
    let side_of = |ch: char| match ch {
        'r' => Some(Side::Row),
        'c' => Some(Side::Column),
        _ => None,
    };
    let parties = |s: &str| -> Option<Vec<Subsystem>> {
        s.chars()
            .map(|ch| match ch.to_ascii_uppercase() {
                'A' => Some(Subsystem::A),
                'B' => Some(Subsystem::B),
                'C' => Some(Subsystem::C),
                _ => None,
            })
            .collect()
    };
    let build = |side: Side, subs: Vec<Subsystem>| subs.into_iter().map(|s| IndexSlot::new(s, side)).collect();

    // mixed case: the lowercase r/c is the side, uppercase letters are parties
    let lower: Vec<(usize, char)> = token.char_indices().filter(|(_, ch)| ch.is_ascii_lowercase()).collect();
    let has_upper = token.chars().any(|ch| ch.is_ascii_uppercase());
    if has_upper && lower.len() == 1 {
        let (pos, ch) = lower[0];
        let side = side_of(ch)?;
        let rest: String = token.chars().enumerate().filter(|&(i, _)| i != pos).map(|(_, c)| c).collect();
        if pos != 0 && pos != token.len() - 1 {
            return None;
        }
        return Some(build(side, parties(&rest)?));
    }
    let lowered = token.to_ascii_lowercase();
    let (first, rest) = lowered.split_at(1);
    if let (Some(side), Some(subs)) = (side_of(first.chars().next()?), parties(rest)) {
        return Some(build(side, subs));
    }
    let (head, last) = lowered.split_at(lowered.len() - 1);
    if let (Some(side), Some(subs)) = (side_of(last.chars().next()?), parties(head)) {
        return Some(build(side, subs));
    }
    None
}

/// Classes of catalog operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OperationClass {
    /// Partial transposition of one party.
    I,
    /// One party against the other two.
    II,
    /// Realignment of two parties, third untouched.
    III,
}

/// The nine operations `Y1..Y9` used by the concurrence bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogOp {
    Y1,
    Y2,
    Y3,
    Y4,
    Y5,
    Y6,
    Y7,
    Y8,
    Y9,
}

impl CatalogOp {
    pub const ALL: [CatalogOp; 9] = [
        CatalogOp::Y1,
        CatalogOp::Y2,
        CatalogOp::Y3,
        CatalogOp::Y4,
        CatalogOp::Y5,
        CatalogOp::Y6,
        CatalogOp::Y7,
        CatalogOp::Y8,
        CatalogOp::Y9,
    ];

    /// 1-based index, `Y4 -> 4`.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(k: usize) -> Option<Self> {
        Self::ALL.get(k.checked_sub(1)?).copied()
    }

    pub fn operation(self) -> GptOperation {
        use Subsystem::{A, B, C};
        let (r, c) = (IndexSlot::row, IndexSlot::col);
        let slots: &[IndexSlot] = match self {
            CatalogOp::Y1 => &[c(A), r(A)],
            CatalogOp::Y2 => &[c(B), r(B)],
            CatalogOp::Y3 => &[c(C), r(C)],
            // {c_A, r_BC}
            CatalogOp::Y4 => &[c(A), r(B), r(C)],
            // {c_AB, r_C}
            CatalogOp::Y5 => &[c(A), c(B), r(C)],
            // {c_AC, r_B}
            CatalogOp::Y6 => &[c(A), c(C), r(B)],
            CatalogOp::Y7 => &[c(A), r(B)],
            CatalogOp::Y8 => &[c(A), r(C)],
            CatalogOp::Y9 => &[c(B), r(C)],
        };
        GptOperation::from_slots(slots.iter().copied())
    }

    pub fn class(self) -> OperationClass {
        match self {
            CatalogOp::Y1 | CatalogOp::Y2 | CatalogOp::Y3 => OperationClass::I,
            CatalogOp::Y4 | CatalogOp::Y5 | CatalogOp::Y6 => OperationClass::II,
            _ => OperationClass::III,
        }
    }
}

impl fmt::Display for CatalogOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y{}", self.number())
    }
}

impl Serialize for CatalogOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for CatalogOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t
            .strip_prefix('Y')
            .or_else(|| t.strip_prefix('y'))
            .map(|d| d.trim_start_matches('_'))
            .ok_or_else(|| Error::UnknownOperation(s.to_string()))?;
        digits
            .parse::<usize>()
            .ok()
            .and_then(CatalogOp::from_number)
            .ok_or_else(|| Error::UnknownOperation(s.to_string()))
    }
}

/// Parses a list of operations separated by `;`. A chunk made only of catalog
/// names (`"Y1,Y4"`) expands to several operations; any other chunk is one
/// slot-list operation (`"cA,rB"`).
pub fn parse_operation_list(s: &str) -> Result<Vec<GptOperation>> {
    let mut out = Vec::new();
    for chunk in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let tokens: Vec<&str> = chunk.split(',').map(str::trim).collect();
        let named: Vec<Option<GptOperation>> = tokens
            .iter()
            .map(|t| {
                if t.eq_ignore_ascii_case("identity") {
                    Some(GptOperation::IDENTITY)
                } else {
                    t.parse::<CatalogOp>().ok().map(CatalogOp::operation)
                }
            })
            .collect();
        if named.iter().all(Option::is_some) {
            out.extend(named.into_iter().flatten());
        } else if named.iter().any(Option::is_some) && tokens.len() > 1 {
            return Err(Error::UnknownOperation(format!(
                "`{chunk}` mixes catalog names with slots; separate operations with `;`"
            )));
        } else {
            out.push(chunk.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::UnknownOperation(s.to_string()));
    }
    Ok(out)
}

/// Image of `rho` under the slot flips of `y`.
///
/// The output has shape (product of row-side slot dims) x (product of
/// column-side slot dims); each entry is `rho` at its original six-index
/// position.
pub fn apply_gpt(s: &TripartiteState, y: GptOperation) -> ComplexMatrix {
    let dims = s.dims();
    let d = dims.total();
    let slot_dim = |slot: IndexSlot| dims.get(slot.subsystem);

    // mixed-radix strides of every slot within its destination group
    let mut stride = [0usize; 6];
    let mut out_rows = 1;
    let mut out_cols = 1;
    for slot in IndexSlot::ALL.iter().rev() {
        let k = slot.bit() as usize;
        match y.side_of(*slot) {
            Side::Row => {
                stride[k] = out_rows;
                out_rows *= slot_dim(*slot);
            }
            Side::Column => {
                stride[k] = out_cols;
                out_cols *= slot_dim(*slot);
            }
        }
    }

    // offsets contributed by an original row index (row slots) or column index
    // (column slots) to the output (row, col) position
    let offsets = |side: Side| -> Vec<(usize, usize)> {
        (0..d)
            .map(|i| {
                let (a, b, c) = dims.unflatten(i).expect("in range");
                let mut off = (0usize, 0usize);
                for (sub, value) in [(Subsystem::A, a), (Subsystem::B, b), (Subsystem::C, c)] {
                    let slot = IndexSlot::new(sub, side);
                    let contrib = value * stride[slot.bit() as usize];
                    match y.side_of(slot) {
                        Side::Row => off.0 += contrib,
                        Side::Column => off.1 += contrib,
                    }
                }
                off
            })
            .collect()
    };
    let from_row = offsets(Side::Row);
    let from_col = offsets(Side::Column);

    let rho = s.rho();
    let mut data = vec![Complex64::new(0.0, 0.0); out_rows * out_cols];
    for (i, &(ri, ci)) in from_row.iter().enumerate() {
        for (j, &(rj, cj)) in from_col.iter().enumerate() {
            data[(ri + rj) * out_cols + (ci + cj)] = rho[(i, j)];
        }
    }
    ComplexMatrix::new(out_rows, out_cols, data).expect("image of a valid state is finite")
}

/// `||T_y(rho)||`, the trace norm of the GPT image.
pub fn gpt_norm(s: &TripartiteState, y: GptOperation) -> Result<f64> {
    trace_norm(&apply_gpt(s, y))
}

/// Trace norms of all nine catalog operations, in order `Y1..Y9`.
pub fn catalog_norms(s: &TripartiteState) -> Result<[f64; 9]> {
    let mut out = [0.0; 9];
    for (k, op) in CatalogOp::ALL.into_iter().enumerate() {
        out[k] = gpt_norm(s, op.operation())?;
    }
    Ok(out)
}

/// Outcome of the GPT separability test over the catalog.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GptVerdict {
    pub entangled: bool,
    pub norms: Vec<(CatalogOp, f64)>,
    /// Operations whose norm exceeds `1 + tol`.
    pub violations: Vec<(CatalogOp, f64)>,
}

/// A separable state has `||T_Y(rho)|| <= 1` for every `Y`; any catalog
/// norm above `1 + tol` certifies entanglement.
pub fn is_gpt_entangled(s: &TripartiteState, tol: f64) -> Result<GptVerdict> {
    let norms: Vec<(CatalogOp, f64)> = CatalogOp::ALL
        .into_iter()
        .zip(catalog_norms(s)?)
        .collect();
    let violations: Vec<(CatalogOp, f64)> = norms.iter().copied().filter(|&(_, v)| v > 1.0 + tol).collect();
    Ok(GptVerdict {
        entangled: !violations.is_empty(),
        norms,
        violations,
    })
}

/// Checks that flipping all six slots reproduces the plain transpose to 1e-12.
pub fn full_transpose_identity_check(s: &TripartiteState) -> bool {
    let image = apply_gpt(s, GptOperation::full_transpose());
    image.shape() == s.rho().shape() && image.max_abs_diff(&s.rho().transpose()) <= 1e-12
}
