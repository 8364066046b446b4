//! Pure-state concurrence and the closed forms for three-qubit states in
//! generalized Schmidt form
//! `l0|000> + l1 e^{i psi}|100> + l2|101> + l3|110> + l4|111>`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::tensor::{purity, PureState, Subsystem, SystemDims};

/// `sqrt(3 - Tr rho_A^2 - Tr rho_B^2 - Tr rho_C^2)` for a normalized pure state of
/// any local dimensions. Small negative radicands from rounding are clamped.
pub fn concurrence_pure(v: &PureState) -> Result<f64> {
    let norm_sqr: f64 = v.amplitudes().iter().map(|z| z.norm_sqr()).sum();
    if (norm_sqr - 1.0).abs() > Tolerances::DEFAULT.normalization {
        return Err(Error::NotNormalized { norm_sqr });
    }
    let mut radicand = 3.0;
    for keep in Subsystem::ALL {
        radicand -= purity(&v.reduced(keep))?;
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Generalized Schmidt parameters of a three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchmidtParams {
    lambda: [f64; 5],
    psi: f64,
}

/// Squared amplitudes and the phase-sensitive combination
/// `delta = |l1 l4 e^{i psi} - l2 l3|^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchmidtDerived {
    pub mu: [f64; 5],
    pub delta: f64,
}

impl SchmidtParams {
    /// Requires `l_i >= 0`, `0 <= psi <= pi` and `sum l_i^2 = 1` (to 1e-9).
    /// Phases outside `[0, pi]` are rejected, not reduced.
    pub fn new(lambda: [f64; 5], psi: f64) -> Result<Self> {
        if lambda.iter().any(|&l| !(l.is_finite() && l >= 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "Schmidt amplitudes must be finite and non-negative, got {lambda:?}"
            )));
        }
        if !(psi.is_finite() && (0.0..=PI).contains(&psi)) {
            return Err(Error::InvalidParameter(format!("phase {psi} outside [0, pi]")));
        }
        let norm_sqr: f64 = lambda.iter().map(|l| l * l).sum();
        if (norm_sqr - 1.0).abs() > Tolerances::DEFAULT.normalization {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { lambda, psi })
    }

    pub fn lambda(&self) -> [f64; 5] {
        self.lambda
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn mu(&self) -> [f64; 5] {
        self.lambda.map(|l| l * l)
    }

    pub fn delta(&self) -> f64 {
        let [_, l1, l2, l3, l4] = self.lambda;
        (Complex64::from_polar(l1 * l4, self.psi) - l2 * l3).norm_sqr()
    }

    pub fn derived(&self) -> SchmidtDerived {
        SchmidtDerived {
            mu: self.mu(),
            delta: self.delta(),
        }
    }
}

/// Amplitude vector over `(2, 2, 2)`; nonzero only at flat indices 0, 4, 5, 6, 7.
pub fn schmidt_state(p: &SchmidtParams) -> PureState {
    let [l0, l1, l2, l3, l4] = p.lambda;
    let zero = Complex64::new(0.0, 0.0);
    let mut amps = vec![zero; 8];
    amps[0] = Complex64::new(l0, 0.0);
    amps[4] = Complex64::from_polar(l1, p.psi);
    amps[5] = Complex64::new(l2, 0.0);
    amps[6] = Complex64::new(l3, 0.0);
    amps[7] = Complex64::new(l4, 0.0);
    PureState::new(SystemDims::QUBITS, amps).expect("validated parameters give a normalized state")
}

/// Closed-form single-party purities of a Schmidt-form state.
pub fn purity_closed_form(p: &SchmidtParams, party: Subsystem) -> f64 {
    let SchmidtDerived { mu, delta } = p.derived();
    match party {
        Subsystem::A => 1.0 - 2.0 * mu[0] * (1.0 - mu[0] - mu[1]),
        Subsystem::B => 1.0 - 2.0 * mu[0] * (1.0 - mu[0] - mu[1] - mu[2]) - 2.0 * delta,
        Subsystem::C => 1.0 - 2.0 * mu[0] * (1.0 - mu[0] - mu[1] - mu[3]) - 2.0 * delta,
    }
}

/// Squared concurrence `2 mu0 (3 - 3 mu0 - 3 mu1 - mu2 - mu3) + 4 delta`, unclamped.
pub fn concurrence_squared_closed_form(p: &SchmidtParams) -> f64 {
    let SchmidtDerived { mu, delta } = p.derived();
    2.0 * mu[0] * (3.0 - 3.0 * mu[0] - 3.0 * mu[1] - mu[2] - mu[3]) + 4.0 * delta
}

/// Concurrence from the closed form. Radicands in `[-1e-12, 0)` are clamped;
/// more negative values indicate misuse and are reported.
pub fn concurrence_closed_form(p: &SchmidtParams) -> Result<f64> {
    let radicand = concurrence_squared_closed_form(p);
    if radicand < -Tolerances::DEFAULT.clamp {
        return Err(Error::NumericalBreakdown(format!(
            "negative squared concurrence {radicand:e}"
        )));
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Closed-form trace norm of the partial transpose on `party`
/// (`A -> Y1`, `B -> Y2`, `C -> Y3`).
pub fn class1_norm_closed_form(p: &SchmidtParams, party: Subsystem) -> f64 {
    let SchmidtDerived { mu, delta } = p.derived();
    let radicand = match party {
        Subsystem::A => mu[0] * (mu[2] + mu[3] + mu[4]),
        Subsystem::B => delta + mu[0] * (mu[3] + mu[4]),
        Subsystem::C => delta + mu[0] * (mu[2] + mu[4]),
    };
    1.0 + 2.0 * radicand.max(0.0).sqrt()
}

/// Right-hand sides of `C^2 - (||rho^{T_Yk}|| - 1)^2` for `k = 1, 2, 3`:
/// `2 mu0 mu4 + 4 delta`, `4 mu0 mu2 + 2 mu0 mu4`, `4 mu0 mu3 + 2 mu0 mu4`.
pub fn class1_residuals_closed_form(p: &SchmidtParams) -> [f64; 3] {
    let SchmidtDerived { mu, delta } = p.derived();
    [
        2.0 * mu[0] * mu[4] + 4.0 * delta,
        4.0 * mu[0] * mu[2] + 2.0 * mu[0] * mu[4],
        4.0 * mu[0] * mu[3] + 2.0 * mu[0] * mu[4],
    ]
}

/// For `l0|000> + l4|111>`: the concurrence `sqrt(6 mu0 mu4)` and the common
/// trace norm `1 + 2 l0 l4` shared by all nine catalog operations.
pub fn special_type_values(lambda0: f64, lambda4: f64) -> Result<(f64, f64)> {
    check_special_type(lambda0, lambda4)?;
    let (mu0, mu4) = (lambda0 * lambda0, lambda4 * lambda4);
    Ok(((6.0 * mu0 * mu4).sqrt(), 1.0 + 2.0 * lambda0 * lambda4))
}

pub(crate) fn check_special_type(lambda0: f64, lambda4: f64) -> Result<()> {
    if !(lambda0.is_finite() && lambda4.is_finite() && lambda0 >= 0.0 && lambda4 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "amplitudes must be non-negative, got ({lambda0}, {lambda4})"
        )));
    }
    let norm_sqr = lambda0 * lambda0 + lambda4 * lambda4;
    if (norm_sqr - 1.0).abs() > Tolerances::DEFAULT.normalization {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn params(lambda: [f64; 5], psi: f64) -> SchmidtParams {
        SchmidtParams::new(lambda, psi).unwrap()
    }

    #[test]
    fn concurrence_pure_examples() {
        let prod = PureState::basis(SystemDims::QUBITS, 0, 0, 0).unwrap();
        assert_eq!(concurrence_pure(&prod).unwrap(), 0.0);

        let ghz = schmidt_state(&params([FRAC_1_SQRT_2, 0.0, 0.0, 0.0, FRAC_1_SQRT_2], 0.0));
        assert!((concurrence_pure(&ghz).unwrap() - 1.5f64.sqrt()).abs() < 1e-12);

        // (|000> + |101>)/sqrt2: purities (1/2, 1, 1/2)
        let v = schmidt_state(&params([FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0, 0.0], 0.0));
        assert!((v.amplitudes()[5].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((concurrence_pure(&v).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn schmidt_state_places_amplitudes() {
        let v = schmidt_state(&params([1.0, 0.0, 0.0, 0.0, 0.0], 0.0));
        assert_eq!(v, PureState::basis(SystemDims::QUBITS, 0, 0, 0).unwrap());
        let p = params([0.5, 0.5, 0.5, 0.5, 0.0], PI / 2.0);
        let v = schmidt_state(&p);
        assert!((v.amplitude(1, 0, 0).unwrap() - Complex64::new(0.0, 0.5)).norm() < 1e-15);
        assert_eq!(v.amplitude(1, 1, 0).unwrap(), Complex64::new(0.5, 0.0));
    }

    #[test]
    fn parameter_validation() {
        assert!(SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.1], 0.0).is_err());
        assert!(SchmidtParams::new([-1.0, 0.0, 0.0, 0.0, 0.0], 0.0).is_err());
        assert!(SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.0], -0.1).is_err());
        assert!(SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.0], 3.2).is_err());
        assert!(SchmidtParams::new([1.0, 0.0, 0.0, 0.0, 0.0], PI).is_ok());
    }

    #[test]
    fn closed_form_examples() {
        let ghz = params([FRAC_1_SQRT_2, 0.0, 0.0, 0.0, FRAC_1_SQRT_2], 0.0);
        assert!((concurrence_closed_form(&ghz).unwrap() - 1.224744871391589).abs() < 1e-12);
        assert!((class1_norm_closed_form(&ghz, Subsystem::A) - 2.0).abs() < 1e-12);
        let prod = params([1.0, 0.0, 0.0, 0.0, 0.0], 0.0);
        assert_eq!(concurrence_closed_form(&prod).unwrap(), 0.0);
        for party in Subsystem::ALL {
            assert_eq!(class1_norm_closed_form(&prod, party), 1.0);
        }
    }

    #[test]
    fn delta_depends_on_phase() {
        let l = 0.5f64;
        // l1 l4 e^{i psi} - l2 l3 with all l = 1/2: |e^{i psi} - 1|^2 / 16
        let at0 = params([0.0, l, l, l, l], 0.0);
        assert_eq!(at0.delta(), 0.0);
        let p = params([0.0, l, l, l, l], PI);
        assert!((p.delta() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn special_type_examples() {
        let (c, n) = special_type_values(FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap();
        assert!((c - 1.5f64.sqrt()).abs() < 1e-12 && (n - 2.0).abs() < 1e-12);
        assert_eq!(special_type_values(1.0, 0.0).unwrap(), (0.0, 1.0));
        let (c, n) = special_type_values(0.6, 0.8).unwrap();
        assert!((c - (6.0f64 * 0.36 * 0.64).sqrt()).abs() < 1e-12);
        assert!((c - 1.175755).abs() < 1e-6);
        assert!((n - 1.96).abs() < 1e-12);
        assert!(special_type_values(0.6, 0.6).is_err());
        assert!(special_type_values(-0.6, 0.8).is_err());
    }
}
