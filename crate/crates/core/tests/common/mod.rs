//! Reference computations for the integration tests. Nothing here calls the
//! crate's eigen/SVD solvers or its GPT slot machinery.

#![allow(dead_code)]

use triconc::{Complex64, ComplexMatrix, SystemDims, TripartiteState};

/// Eigenvalues of a real symmetric matrix (row-major, order `n`) by classic
/// cyclic Jacobi with a fixed budget of 50 sweeps.
pub fn jacobi_symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    for _ in 0..50 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j] * a[i * n + j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut e: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    e.sort_by(|x, y| x.total_cmp(y));
    e
}

/// Eigenvalues of a Hermitian `H = X + iY` through the real embedding
/// `[[X, -Y], [Y, X]]`, whose spectrum is that of `H` with every value doubled.
pub fn hermitian_eigenvalues_oracle(h: &ComplexMatrix) -> Vec<f64> {
    let n = h.rows();
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = h[(i, j)];
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let e = jacobi_symmetric_eigenvalues(a, m);
    e.chunks(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect()
}

/// Sum of singular values: half the absolute spectrum of the Hermitian
/// dilation `[[0, M], [M^dagger, 0]]`, whose eigenvalues are `+-sigma_i`.
pub fn trace_norm_oracle(m: &ComplexMatrix) -> f64 {
    let (r, c) = m.shape();
    let dilation = ComplexMatrix::from_fn(r + c, r + c, |i, j| match (i < r, j < r) {
        (true, false) => m[(i, j - r)],
        (false, true) => m[(j, i - r)].conj(),
        _ => Complex64::new(0.0, 0.0),
    });
    0.5 * hermitian_eigenvalues_oracle(&dilation)
        .into_iter()
        .map(f64::abs)
        .sum::<f64>()
}

/// `rho` entry addressed by six explicit indices.
pub fn element(s: &TripartiteState, row: (usize, usize, usize), col: (usize, usize, usize)) -> Complex64 {
    let d = s.dims();
    let idx = |(a, b, c): (usize, usize, usize)| (a * d.n + b) * d.p + c;
    s.rho()[(idx(row), idx(col))]
}

/// Partial transpose on one party by swapping that party's row and column index.
pub fn partial_transpose(s: &TripartiteState, party: usize) -> ComplexMatrix {
    let d = s.dims();
    let total = d.total();
    ComplexMatrix::from_fn(total, total, |i, j| {
        let mut r = unflat(d, i);
        let mut c = unflat(d, j);
        std::mem::swap(&mut r[party], &mut c[party]);
        element(s, (r[0], r[1], r[2]), (c[0], c[1], c[2]))
    })
}

pub fn unflat(d: SystemDims, i: usize) -> [usize; 3] {
    [i / (d.n * d.p), (i / d.p) % d.n, i % d.p]
}

/// Explicit realignment images of the class-III operations:
/// * `Y7`: `X[(i,j,m),(k,l,n)] = rho[(i,k,m),(j,l,n)]`
/// * `Y8`: `X[(i,j,k),(l,m,n)] = rho[(i,k,m),(j,l,n)]`
/// * `Y9`: `X[(i,k,l),(j,m,n)] = rho[(i,k,m),(j,l,n)]`
pub fn realignment(s: &TripartiteState, which: usize) -> ComplexMatrix {
    let SystemDims { m, n, p } = s.dims();
    match which {
        7 => ComplexMatrix::from_fn(m * m * p, n * n * p, |r, c| {
            let (i, j, mm) = (r / (m * p), (r / p) % m, r % p);
            let (k, l, nn) = (c / (n * p), (c / p) % n, c % p);
            element(s, (i, k, mm), (j, l, nn))
        }),
        8 => ComplexMatrix::from_fn(m * m * n, n * p * p, |r, c| {
            let (i, j, k) = (r / (m * n), (r / n) % m, r % n);
            let (l, mm, nn) = (c / (p * p), (c / p) % p, c % p);
            element(s, (i, k, mm), (j, l, nn))
        }),
        9 => ComplexMatrix::from_fn(m * n * n, m * p * p, |r, c| {
            let (i, k, l) = (r / (n * n), (r / n) % n, r % n);
            let (j, mm, nn) = (c / (p * p), (c / p) % p, c % p);
            element(s, (i, k, mm), (j, l, nn))
        }),
        _ => panic!("no explicit formula for Y{which}"),
    }
}
