//! Dense complex matrices and tripartite state containers.
//!
//! Flattening convention: a basis state `|a>|b>|c>` of an `m x n x p` system
//! lives at flat index `(a * n + b) * p + c` (row-major, subsystem order A, B, C).

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::linalg;

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix shape must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries supplied for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if !data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from real rows. Convenient for small literals.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::new(r, c, data)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entrywise modulus of `self - other`. Shapes must agree.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in max_abs_diff");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `M - M^dagger`; infinite for non-square input.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[k * rhs.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in matrix product")
    }
}

/// One of the three parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
            Subsystem::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            "C" | "c" => Ok(Subsystem::C),
            other => Err(Error::InvalidParameter(format!("unknown subsystem label `{other}`"))),
        }
    }
}

/// Local dimensions `(m, n, p)` of subsystems A, B, C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemDims {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl SystemDims {
    pub const QUBITS: SystemDims = SystemDims { m: 2, n: 2, p: 2 };

    pub fn new(m: usize, n: usize, p: usize) -> Result<Self> {
        if m == 0 || n == 0 || p == 0 {
            return Err(Error::InvalidParameter(format!(
                "subsystem dimensions must be >= 1, got ({m}, {n}, {p})"
            )));
        }
        Ok(Self { m, n, p })
    }

    /// Total Hilbert-space dimension `m * n * p`.
    #[inline]
    pub fn total(&self) -> usize {
        self.m * self.n * self.p
    }

    #[inline]
    pub fn get(&self, s: Subsystem) -> usize {
        self.as_array()[s.index()]
    }

    #[inline]
    pub fn as_array(&self) -> [usize; 3] {
        [self.m, self.n, self.p]
    }

    pub fn flat_index(&self, a: usize, b: usize, c: usize) -> Result<usize> {
        if a >= self.m || b >= self.n || c >= self.p {
            return Err(Error::IndexOutOfRange {
                a,
                b,
                c,
                m: self.m,
                n: self.n,
                p: self.p,
            });
        }
        Ok((a * self.n + b) * self.p + c)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn unflatten(&self, index: usize) -> Result<(usize, usize, usize)> {
        if index >= self.total() {
            return Err(Error::DimensionMismatch(format!(
                "flat index {index} out of range for total dimension {}",
                self.total()
            )));
        }
        let c = index % self.p;
        let b = (index / self.p) % self.n;
        let a = index / (self.n * self.p);
        Ok((a, b, c))
    }
}

impl fmt::Display for SystemDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.n, self.p)
    }
}

/// `(a * n + b) * p + c`.
pub fn flat_index(a: usize, b: usize, c: usize, dims: SystemDims) -> Result<usize> {
    dims.flat_index(a, b, c)
}

/// Normalized pure state of a tripartite system.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: SystemDims,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(dims: SystemDims, amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::check_len(dims, &amplitudes)?;
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > Tolerances::DEFAULT.normalization {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm. Fails on the zero vector.
    pub fn normalized(dims: SystemDims, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        Self::check_len(dims, &amplitudes)?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized { norm_sqr: norm * norm });
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self { dims, amplitudes })
    }

    /// Computational basis state `|a b c>`.
    pub fn basis(dims: SystemDims, a: usize, b: usize, c: usize) -> Result<Self> {
        let idx = dims.flat_index(a, b, c)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { dims, amplitudes: amps })
    }

    /// Product state `|x> (x) |y> (x) |z>`; each factor is normalized first.
    pub fn product(x: &[Complex64], y: &[Complex64], z: &[Complex64]) -> Result<Self> {
        let dims = SystemDims::new(x.len(), y.len(), z.len())?;
        let mut amps = Vec::with_capacity(dims.total());
        for xa in x {
            for yb in y {
                for zc in z {
                    amps.push(xa * yb * zc);
                }
            }
        }
        Self::normalized(dims, amps)
    }

    fn check_len(dims: SystemDims, amplitudes: &[Complex64]) -> Result<()> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for total dimension {}",
                amplitudes.len(),
                dims.total()
            )));
        }
        Ok(())
    }

    pub fn dims(&self) -> SystemDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, a: usize, b: usize, c: usize) -> Result<Complex64> {
        Ok(self.amplitudes[self.dims.flat_index(a, b, c)?])
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch("inner product of states with different dims".into()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Reduced density matrix of one party, contracted directly from the
    /// amplitudes without forming `|v><v|`.
    pub fn reduced(&self, keep: Subsystem) -> ComplexMatrix {
        let [m, n, p] = self.dims.as_array();
        let psi = &self.amplitudes;
        let at = |a: usize, b: usize, c: usize| psi[(a * n + b) * p + c];
        let k = self.dims.get(keep);
        let mut out = ComplexMatrix::zeros(k, k);
        for x in 0..k {
            for y in x..k {
                let mut acc = Complex64::new(0.0, 0.0);
                match keep {
                    Subsystem::A => {
                        for b in 0..n {
                            for c in 0..p {
                                acc += at(x, b, c) * at(y, b, c).conj();
                            }
                        }
                    }
                    Subsystem::B => {
                        for a in 0..m {
                            for c in 0..p {
                                acc += at(a, x, c) * at(a, y, c).conj();
                            }
                        }
                    }
                    Subsystem::C => {
                        for a in 0..m {
                            for b in 0..n {
                                acc += at(a, b, x) * at(a, b, y).conj();
                            }
                        }
                    }
                }
                out[(x, y)] = acc;
                out[(y, x)] = acc.conj();
            }
        }
        out
    }

    /// Rank-one density matrix `|v><v|`.
    pub fn density(&self) -> TripartiteState {
        let d = self.dims.total();
        let v = &self.amplitudes;
        let rho = ComplexMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj());
        TripartiteState {
            dims: self.dims,
            rho,
        }
    }
}

/// `|v><v|` as a validated tripartite state.
pub fn outer_product(v: &PureState) -> TripartiteState {
    v.density()
}

/// Density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct TripartiteState {
    dims: SystemDims,
    rho: ComplexMatrix,
}

impl TripartiteState {
    /// Validates shape, hermiticity, unit trace and positive semidefiniteness.
    pub fn new(dims: SystemDims, rho: ComplexMatrix) -> Result<Self> {
        Self::validate(dims, &rho, &Tolerances::DEFAULT)?;
        Ok(Self { dims, rho })
    }

    pub fn validate(dims: SystemDims, rho: &ComplexMatrix, tol: &Tolerances) -> Result<()> {
        let d = dims.total();
        if rho.shape() != (d, d) {
            return Err(Error::DimensionMismatch(format!(
                "density matrix is {}x{}, dims {dims} need {d}x{d}",
                rho.rows(),
                rho.cols()
            )));
        }
        if !rho.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = rho.hermitian_deviation();
        if dev > tol.hermiticity {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = rho.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let eigs = linalg::hermitian_eigenvalues(rho)?;
        if let Some(&min) = eigs.first() {
            if min < -tol.psd {
                return Err(Error::InvalidState(format!(
                    "not positive semidefinite (min eigenvalue {min:e})"
                )));
            }
        }
        Ok(())
    }

    /// Maximally mixed state `I / d`.
    pub fn maximally_mixed(dims: SystemDims) -> Self {
        let d = dims.total();
        Self {
            dims,
            rho: ComplexMatrix::identity(d).scale(1.0 / d as f64),
        }
    }

    /// Convex combination `sum_i w_i rho_i`. Weights must be non-negative and
    /// sum to one; every component must share the same dims.
    pub fn mixture(components: &[(f64, &TripartiteState)]) -> Result<Self> {
        let (_, first) = components
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty mixture".into()))?;
        let dims = first.dims;
        let mut total = 0.0;
        let mut rho = ComplexMatrix::zeros(dims.total(), dims.total());
        for &(w, s) in components {
            if !(w.is_finite() && w >= 0.0) {
                return Err(Error::InvalidParameter(format!("mixture weight {w} is negative")));
            }
            if s.dims != dims {
                return Err(Error::DimensionMismatch("mixture components differ in dims".into()));
            }
            total += w;
            for (acc, z) in rho.data.iter_mut().zip(s.rho.data()) {
                *acc += z * w;
            }
        }
        if (total - 1.0).abs() > Tolerances::DEFAULT.trace {
            return Err(Error::InvalidParameter(format!("mixture weights sum to {total}")));
        }
        Ok(Self { dims, rho })
    }

    /// Mixture of pure states `sum_i w_i |v_i><v_i|`.
    pub fn from_ensemble(ensemble: &[(f64, &PureState)]) -> Result<Self> {
        let densities: Vec<(f64, TripartiteState)> =
            ensemble.iter().map(|&(w, v)| (w, v.density())).collect();
        let refs: Vec<(f64, &TripartiteState)> = densities.iter().map(|(w, s)| (*w, s)).collect();
        Self::mixture(&refs)
    }

    pub fn dims(&self) -> SystemDims {
        self.dims
    }

    pub fn rho(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn into_rho(self) -> ComplexMatrix {
        self.rho
    }

    /// Reduced density matrix of `keep`, tracing out the other two parties.
    pub fn partial_trace(&self, keep: Subsystem) -> ComplexMatrix {
        let [m, n, p] = self.dims.as_array();
        let k = self.dims.get(keep);
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * p + c;
        let mut out = ComplexMatrix::zeros(k, k);
        for x in 0..k {
            for y in 0..k {
                let mut acc = Complex64::new(0.0, 0.0);
                match keep {
                    Subsystem::A => {
                        for b in 0..n {
                            for c in 0..p {
                                acc += self.rho[(idx(x, b, c), idx(y, b, c))];
                            }
                        }
                    }
                    Subsystem::B => {
                        for a in 0..m {
                            for c in 0..p {
                                acc += self.rho[(idx(a, x, c), idx(a, y, c))];
                            }
                        }
                    }
                    Subsystem::C => {
                        for a in 0..m {
                            for b in 0..n {
                                acc += self.rho[(idx(a, b, x), idx(a, b, y))];
                            }
                        }
                    }
                }
                out[(x, y)] = acc;
            }
        }
        out
    }

    /// Relabels parties so that new subsystem `k` is old subsystem `order[k]`.
    ///
    /// `order` must be a permutation of `[A, B, C]`.
    pub fn permute_subsystems(&self, order: [Subsystem; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for s in order {
            seen[s.index()] = true;
        }
        if seen.iter().any(|&x| !x) {
            return Err(Error::InvalidParameter(format!(
                "subsystem order {order:?} is not a permutation"
            )));
        }
        let old = self.dims.as_array();
        let new_dims = SystemDims::new(old[order[0].index()], old[order[1].index()], old[order[2].index()])?;
        let d = new_dims.total();
        // old flat index of a new multi-index
        let remap: Vec<usize> = (0..d)
            .map(|i| {
                let (x0, x1, x2) = new_dims.unflatten(i).expect("in range");
                let mut o = [0usize; 3];
                o[order[0].index()] = x0;
                o[order[1].index()] = x1;
                o[order[2].index()] = x2;
                (o[0] * old[1] + o[1]) * old[2] + o[2]
            })
            .collect();
        let rho = ComplexMatrix::from_fn(d, d, |i, j| self.rho[(remap[i], remap[j])]);
        Ok(Self { dims: new_dims, rho })
    }
}

/// Reduced density matrix of one party.
pub fn partial_trace(s: &TripartiteState, keep: Subsystem) -> ComplexMatrix {
    s.partial_trace(keep)
}

/// `Tr(R^2)` for a square matrix; the real part is returned.
pub fn purity(r: &ComplexMatrix) -> Result<f64> {
    if !r.is_square() {
        return Err(Error::NotSquare {
            rows: r.rows(),
            cols: r.cols(),
        });
    }
    let n = r.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += r[(i, j)] * r[(j, i)];
        }
    }
    Ok(acc.re)
}
