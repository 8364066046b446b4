//! Eigenvalues, singular values and trace norms of small dense complex matrices.
//!
//! Both solvers are cyclic Jacobi methods: two-sided for Hermitian
//! eigenvalues, one-sided (Hestenes) for singular values. They are slower
//! than QR-based routines for large orders, but the matrices here are at most
//! a few dozen rows and Jacobi gives small singular values to high absolute
//! accuracy, which the trace norm of rank-deficient matrices depends on.

use num_complex::Complex64;

use crate::config::{Tolerances, JACOBI_MAX_SWEEPS, JACOBI_REL_TOL};
use crate::error::{Error, Result};
use crate::tensor::ComplexMatrix;

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = m.hermitian_deviation();
    if dev > Tolerances::DEFAULT.hermiticity {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.rows();
    let mut a: Vec<Complex64> = m.data().to_vec();
    // symmetrize so rotations act on an exactly Hermitian matrix
    for i in 0..n {
        a[i * n + i] = Complex64::new(a[i * n + i].re, 0.0);
        for j in (i + 1)..n {
            let z = (a[i * n + j] + a[j * n + i].conj()) * 0.5;
            a[i * n + j] = z;
            a[j * n + i] = z.conj();
        }
    }
    jacobi_hermitian(&mut a, n)?;
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

/// In-place cyclic Jacobi; on return the diagonal of `a` holds the eigenvalues.
fn jacobi_hermitian(a: &mut [Complex64], n: usize) -> Result<()> {
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if total == 0.0 || n < 2 {
        return Ok(());
    }
    let threshold = JACOBI_REL_TOL * total;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(a, n);
        if off <= threshold {
            return Ok(());
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let (c, s) = rotation(aqq - app, r);
                // U = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on the (p, q) plane
                let u_pq = phase * s;
                let u_qp = -phase.conj() * s;
                // A <- A U
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * c;
                }
                // A <- U^dagger A
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c + aqk * u_qp.conj();
                    a[q * n + k] = apk * u_pq.conj() + aqk * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
            }
        }
    }
    if off_diagonal_norm(a, n) <= threshold {
        Ok(())
    } else {
        Err(Error::NoConvergence {
            sweeps: JACOBI_MAX_SWEEPS,
        })
    }
}

/// Cosine and sine of the Jacobi angle that annihilates the real off-diagonal
/// entry `r` of `[[a_pp, r], [r, a_qq]]`, given `diff = a_qq - a_pp`.
#[inline]
fn rotation(diff: f64, r: f64) -> (f64, f64) {
    let theta = diff / (2.0 * r);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

const SVD_MAX_SWEEPS: usize = 60;

/// Singular values of `m` in descending order; there are `min(rows, cols)` of them.
///
/// One-sided Jacobi: columns of `m` (or of `m^dagger` when `m` is wide) are
/// orthogonalized pairwise and the final column norms are the singular values.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let (rows, cols) = m.shape();
    // column-major working copy with at most `rows` columns
    let mut w: Vec<Vec<Complex64>> = if cols <= rows {
        (0..cols).map(|j| (0..rows).map(|i| m[(i, j)]).collect()).collect()
    } else {
        (0..rows).map(|i| (0..cols).map(|j| m[(i, j)].conj()).collect()).collect()
    };
    let k = w.len();
    let eps = f64::EPSILON;
    let tol = eps * w.first().map_or(1, Vec::len) as f64;
    // columns below this squared norm are numerically zero
    let negligible = (eps * m.frobenius_norm()).powi(2);
    let mut converged = k < 2;
    for _ in 0..SVD_MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..k - 1 {
            for q in (p + 1)..k {
                let (alpha, beta, gamma) = {
                    let (wp, wq) = (&w[p], &w[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = Complex64::new(0.0, 0.0);
                    for (x, y) in wp.iter().zip(wq) {
                        alpha += x.norm_sqr();
                        beta += y.norm_sqr();
                        gamma += x.conj() * y;
                    }
                    (alpha, beta, gamma)
                };
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() || alpha.min(beta) <= negligible {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let (c, s) = rotation(beta - alpha, g);
                let u_pq = phase * s;
                let u_qp = -phase.conj() * s;
                let (head, tail) = w.split_at_mut(q);
                let (wp, wq) = (&mut head[p], &mut tail[0]);
                for (x, y) in wp.iter_mut().zip(wq.iter_mut()) {
                    let (xp, yq) = (*x, *y);
                    *x = xp * c + yq * u_qp;
                    *y = xp * u_pq + yq * c;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: SVD_MAX_SWEEPS,
        });
    }
    let mut sv: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    Ok(sv)
}

/// Trace norm: the sum of singular values.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(singular_values(m)?.iter().sum())
}

/// Trace norm through the Hermitian Gram matrix: `sum_i sqrt(eig_i(G))` with
/// `G = M^dagger M` (or `M M^dagger` when `M` is wide, which has the same
/// nonzero spectrum and fewer spurious zeros).
///
/// Eigenvalues in `[-clamp * max|G|, 0)` are treated as zero; anything more
/// negative is reported as a numerical breakdown.
pub fn trace_norm_gram(m: &ComplexMatrix) -> Result<f64> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let adj = m.adjoint();
    let gram = if m.cols() <= m.rows() {
        adj.matmul(m)?
    } else {
        m.matmul(&adj)?
    };
    let scale = gram.data().iter().map(|z| z.norm()).fold(0.0, f64::max);
    let floor = -Tolerances::DEFAULT.clamp * scale;
    let mut total = 0.0;
    for e in hermitian_eigenvalues(&gram)? {
        if e < floor {
            return Err(Error::NumericalBreakdown(format!(
                "Gram eigenvalue {e:e} below clamp threshold {floor:e}"
            )));
        }
        total += e.max(0.0).sqrt();
    }
    Ok(total)
}
