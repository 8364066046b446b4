//! State factories: GHZ basis, GHZ-diagonal (DCT) mixtures, two-term
//! `l0|000> + l4|111>` states, and seeded random states.
//!
//! All random factories draw from [`rand_pcg::Pcg64`] (PCG XSL-RR 128/64)
//! seeded through SplitMix64, so a given [`RngSeed`] yields the same stream on
//! every platform. Parallel workers derive per-sample seeds with
//! [`RngSeed::derive`] instead of sharing a generator.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_distr::StandardNormal;
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::concurrence::{check_special_type, SchmidtParams};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::tensor::{PureState, SystemDims, TripartiteState};

/// Seed for the crate's random factories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> Pcg64 {
        Pcg64::seed_from_u64(self.0)
    }

    /// Independent substream seed for task `index`.
    pub fn derive(self, index: u64) -> RngSeed {
        RngSeed(splitmix64(self.0 ^ splitmix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
    }
}

impl From<u64> for RngSeed {
    fn from(seed: u64) -> Self {
        RngSeed(seed)
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// `(|j>_AB |0>_C +/- |3-j>_AB |1>_C) / sqrt 2`, where `j = j1 j2` in binary
/// with `j1` the A qubit.
pub fn ghz_basis_state(j: usize, sign: Sign) -> Result<PureState> {
    if j > 3 {
        return Err(Error::InvalidParameter(format!("GHZ basis label {j} outside 0..=3")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    let (j1, j2) = (j >> 1, j & 1);
    let k = 3 - j;
    let (k1, k2) = (k >> 1, k & 1);
    let dims = SystemDims::QUBITS;
    amps[dims.flat_index(j1, j2, 0)?] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dims.flat_index(k1, k2, 1)?] = Complex64::new(sign.value() * FRAC_1_SQRT_2, 0.0);
    PureState::new(dims, amps)
}

/// All eight GHZ basis states, ordered `(0,+), (0,-), (1,+), ...`.
pub fn ghz_basis() -> Vec<PureState> {
    (0..4)
        .flat_map(|j| [Sign::Plus, Sign::Minus].map(|s| ghz_basis_state(j, s).expect("j in range")))
        .collect()
}

/// Weights of a GHZ-diagonal (DCT) state: `lambda0_plus |Psi0+><Psi0+| +
/// lambda0_minus |Psi0-><Psi0-| + sum_j lambda[j-1] (|Psij+><Psij+| + |Psij-><Psij-|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DctWeights {
    pub lambda0_plus: f64,
    pub lambda0_minus: f64,
    pub lambda: [f64; 3],
}

impl DctWeights {
    /// Requires non-negative weights with `l0+ + l0- + 2 (l1 + l2 + l3) = 1`.
    pub fn new(lambda0_plus: f64, lambda0_minus: f64, lambda: [f64; 3]) -> Result<Self> {
        let all = [lambda0_plus, lambda0_minus, lambda[0], lambda[1], lambda[2]];
        if all.iter().any(|&w| !(w.is_finite() && w >= 0.0)) {
            return Err(Error::InvalidParameter(format!("DCT weights must be non-negative: {all:?}")));
        }
        let total = lambda0_plus + lambda0_minus + 2.0 * lambda.iter().sum::<f64>();
        if (total - 1.0).abs() > Tolerances::DEFAULT.trace {
            return Err(Error::InvalidParameter(format!("DCT weights sum to {total}, expected 1")));
        }
        Ok(Self {
            lambda0_plus,
            lambda0_minus,
            lambda,
        })
    }

    /// `l0+ = 1/3`, `l1 = l3 = 1/6`, `l0- = l2 = 0`.
    pub fn worked_example() -> Self {
        Self::new(1.0 / 3.0, 0.0, [1.0 / 6.0, 0.0, 1.0 / 6.0]).expect("weights sum to one")
    }

    /// Weight attached to `|Psi_j^sign>`.
    pub fn weight(&self, j: usize, sign: Sign) -> f64 {
        match (j, sign) {
            (0, Sign::Plus) => self.lambda0_plus,
            (0, Sign::Minus) => self.lambda0_minus,
            (j, _) => self.lambda[j - 1],
        }
    }
}

/// Convex mixture of GHZ-basis projectors with DCT weights.
pub fn dct_state(w: &DctWeights) -> TripartiteState {
    let mut ensemble = Vec::with_capacity(8);
    for j in 0..4 {
        for sign in [Sign::Plus, Sign::Minus] {
            ensemble.push((w.weight(j, sign), ghz_basis_state(j, sign).expect("j in range")));
        }
    }
    let refs: Vec<(f64, &PureState)> = ensemble.iter().map(|(p, v)| (*p, v)).collect();
    TripartiteState::from_ensemble(&refs).expect("validated weights")
}

/// `l0|000> + l4|111>` with `l0, l4 >= 0` and `l0^2 + l4^2 = 1`.
pub fn special_type_state(lambda0: f64, lambda4: f64) -> Result<PureState> {
    check_special_type(lambda0, lambda4)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 8];
    amps[0] = Complex64::new(lambda0, 0.0);
    amps[7] = Complex64::new(lambda4, 0.0);
    PureState::new(SystemDims::QUBITS, amps)
}

/// Schmidt parameters with `l` uniform on the positive orthant of the unit
/// 4-sphere (absolute values of normalized Gaussians) and `psi` uniform on `[0, pi]`.
pub fn random_schmidt_params(seed: RngSeed) -> SchmidtParams {
    random_schmidt_params_with(&mut seed.rng())
}

pub fn random_schmidt_params_with<R: Rng + ?Sized>(rng: &mut R) -> SchmidtParams {
    loop {
        let mut lambda = [0.0f64; 5];
        for l in &mut lambda {
            let g: f64 = rng.sample(StandardNormal);
            *l = g.abs();
        }
        let norm = lambda.iter().map(|l| l * l).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let lambda = lambda.map(|l| l / norm);
        let psi = rng.random_range(0.0..=PI);
        return SchmidtParams::new(lambda, psi).expect("normalized by construction");
    }
}

fn complex_gaussian_vector<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

/// Haar-random pure state: `d` independent complex Gaussians, normalized.
pub fn random_pure_state(dims: SystemDims, seed: RngSeed) -> PureState {
    random_pure_state_with(dims, &mut seed.rng())
}

pub fn random_pure_state_with<R: Rng + ?Sized>(dims: SystemDims, rng: &mut R) -> PureState {
    loop {
        let amps = complex_gaussian_vector(rng, dims.total());
        if let Ok(v) = PureState::normalized(dims, amps) {
            return v;
        }
    }
}

/// Tensor product of three independent Haar-random local states.
pub fn random_product_state(dims: SystemDims, seed: RngSeed) -> PureState {
    random_product_state_with(dims, &mut seed.rng())
}

pub fn random_product_state_with<R: Rng + ?Sized>(dims: SystemDims, rng: &mut R) -> PureState {
    loop {
        let x = complex_gaussian_vector(rng, dims.m);
        let y = complex_gaussian_vector(rng, dims.n);
        let z = complex_gaussian_vector(rng, dims.p);
        if let Ok(v) = PureState::product(&x, &y, &z) {
            return v;
        }
    }
}

fn random_weights<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..count).map(|_| rng.random::<f64>()).collect();
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            return w.into_iter().map(|x| x / total).collect();
        }
    }
}

/// `sum_i p_i |v_i><v_i|` over `rank` Haar-random vectors with weights from
/// normalized uniform draws. Requires `1 <= rank <= d`.
pub fn random_mixed_state(dims: SystemDims, rank: usize, seed: RngSeed) -> Result<TripartiteState> {
    if rank == 0 || rank > dims.total() {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} outside 1..={}",
            dims.total()
        )));
    }
    let mut rng = seed.rng();
    let vectors: Vec<PureState> = (0..rank).map(|_| random_pure_state_with(dims, &mut rng)).collect();
    let weights = random_weights(&mut rng, rank);
    let ensemble: Vec<(f64, &PureState)> = weights.iter().copied().zip(&vectors).collect();
    TripartiteState::from_ensemble(&ensemble)
}

/// Random separable state: a mixture of between 1 and `max_terms` random
/// product states. Returns the components alongside the state.
pub fn random_separable_state(
    dims: SystemDims,
    max_terms: usize,
    seed: RngSeed,
) -> Result<(TripartiteState, Vec<(f64, PureState)>)> {
    if max_terms == 0 {
        return Err(Error::InvalidParameter("need at least one product term".into()));
    }
    let mut rng = seed.rng();
    let count = rng.random_range(1..=max_terms);
    let vectors: Vec<PureState> = (0..count).map(|_| random_product_state_with(dims, &mut rng)).collect();
    let weights = random_weights(&mut rng, count);
    let ensemble: Vec<(f64, &PureState)> = weights.iter().copied().zip(&vectors).collect();
    let state = TripartiteState::from_ensemble(&ensemble)?;
    Ok((state, weights.into_iter().zip(vectors).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{purity, ComplexMatrix, Subsystem};

    #[test]
    fn ghz_basis_examples() {
        let g = ghz_basis_state(0, Sign::Plus).unwrap();
        let a = g.amplitudes();
        assert!((a[0].re - FRAC_1_SQRT_2).abs() < 1e-15 && (a[7].re - FRAC_1_SQRT_2).abs() < 1e-15);
        let v = ghz_basis_state(1, Sign::Minus).unwrap();
        let nz: Vec<(usize, f64)> = v
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > 0.0)
            .map(|(i, z)| (i, z.re))
            .collect();
        assert_eq!(nz, vec![(2, FRAC_1_SQRT_2), (5, -FRAC_1_SQRT_2)]);
        assert!(ghz_basis_state(4, Sign::Plus).is_err());
    }

    #[test]
    fn ghz_basis_orthonormal() {
        let basis = ghz_basis();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let ip = x.inner(y).unwrap();
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - Complex64::new(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dct_examples() {
        let ghz = dct_state(&DctWeights::new(1.0, 0.0, [0.0; 3]).unwrap());
        let want = ghz_basis_state(0, Sign::Plus).unwrap().density();
        assert!(ghz.rho().max_abs_diff(want.rho()) < 1e-15);

        let uniform = dct_state(&DctWeights::new(0.125, 0.125, [0.125; 3]).unwrap());
        assert!(uniform.rho().max_abs_diff(&ComplexMatrix::identity(8).scale(0.125)) < 1e-15);

        let ex = dct_state(&DctWeights::worked_example());
        let rc = ex.partial_trace(Subsystem::C);
        assert!(rc.max_abs_diff(&ComplexMatrix::diagonal(&[0.5, 0.5])) < 1e-15);

        assert!(DctWeights::new(0.5, 0.0, [0.5, 0.0, 0.0]).is_err());
        assert!(DctWeights::new(1.2, -0.2, [0.0; 3]).is_err());
    }

    #[test]
    fn special_type_examples() {
        assert_eq!(
            special_type_state(1.0, 0.0).unwrap(),
            PureState::basis(SystemDims::QUBITS, 0, 0, 0).unwrap()
        );
        let v = special_type_state(0.6, 0.8).unwrap();
        assert_eq!(v.amplitudes()[0].re, 0.6);
        assert_eq!(v.amplitudes()[7].re, 0.8);
        assert!(special_type_state(0.6, 0.7).is_err());
    }

    #[test]
    fn random_factories_are_reproducible() {
        let s = RngSeed(7);
        assert_eq!(random_schmidt_params(s), random_schmidt_params(s));
        assert_ne!(random_schmidt_params(s), random_schmidt_params(RngSeed(8)));
        let dims = SystemDims::new(2, 3, 2).unwrap();
        let v = random_pure_state(dims, s);
        assert_eq!(v, random_pure_state(dims, s));
        assert_eq!(v.amplitudes().len(), 12);
        let norm: f64 = v.amplitudes().iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(
            random_mixed_state(dims, 12, s).unwrap(),
            random_mixed_state(dims, 12, s).unwrap()
        );
        assert_ne!(s.derive(0), s.derive(1));
        assert_eq!(s.derive(3), RngSeed(7).derive(3));
    }

    #[test]
    fn random_schmidt_params_in_domain() {
        for i in 0..10_000 {
            let p = random_schmidt_params(RngSeed(1).derive(i));
            let mu_sum: f64 = p.mu().iter().sum();
            assert!((mu_sum - 1.0).abs() < 1e-9);
            assert!(p.lambda().iter().all(|&l| l >= 0.0));
            assert!((0.0..=PI).contains(&p.psi()));
        }
    }

    #[test]
    fn haar_mean_purity() {
        // E[Tr rho_A^2] = (m + np) / (mnp + 1) = 6/9 for three qubits
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|i| {
                let v = random_pure_state(SystemDims::QUBITS, RngSeed(99).derive(i));
                purity(&v.reduced(Subsystem::A)).unwrap()
            })
            .sum::<f64>()
            / n as f64;
        assert!((mean - 6.0 / 9.0).abs() < 0.01, "mean purity {mean}");
    }

    #[test]
    fn random_mixed_state_ranks() {
        let q = SystemDims::QUBITS;
        let pure = random_mixed_state(q, 1, RngSeed(3)).unwrap();
        assert!((purity(pure.rho()).unwrap() - 1.0).abs() < 1e-10);
        let full = random_mixed_state(q, 8, RngSeed(3)).unwrap();
        TripartiteState::validate(q, full.rho(), &Tolerances::DEFAULT).unwrap();
        assert!(random_mixed_state(q, 0, RngSeed(3)).is_err());
        assert!(random_mixed_state(q, 9, RngSeed(3)).is_err());
    }
}
