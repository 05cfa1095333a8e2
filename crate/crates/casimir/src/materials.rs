//! Dielectric response models on the imaginary frequency axis, the
//! Debye–Hückel screening length, and the low-frequency validity bound.
//!
//! Everything is SI. The Drude term is written σ/(ε₀ξ), which is the SI
//! rendering of the Gaussian 4πσ/ω.

use crate::constants;
use crate::error::{Error, Result};

/// Default carrier mobility for the intrinsic-semiconductor model,
/// an ambipolar germanium scale (m²/(V·s)). The dynamic conductivity it
/// induces is a model knob, echoed into output metadata by the CLI.
pub const DEFAULT_MOBILITY: f64 = 0.2;

/// Dielectric response of a half-space material, evaluated at imaginary
/// frequency iξ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DielectricModel {
    /// Idealized mirror; ε is treated as an analytic infinity, never as a
    /// large float.
    PerfectConductor,
    /// Low-frequency metal: ε(iξ) = 1 + σ/(ε₀ξ).
    DrudeConductivity {
        /// DC conductivity σ (S/m), > 0.
        sigma: f64,
    },
    /// Frequency-independent dielectric: ε(iξ) = ε_s.
    StaticDielectric {
        /// Relative permittivity, ≥ 1.
        eps_s: f64,
    },
    /// Semiconductor with equal thermally generated electron and hole
    /// densities: ε(iξ) = ε_s + σ_c/(ε₀ξ) with σ_c = c_t·e·µ.
    IntrinsicSemiconductor {
        /// Lattice relative permittivity, ≥ 1.
        eps_s: f64,
        /// Total carrier concentration c_t = c_e + c_h (1/m³), > 0.
        carrier_density: f64,
        /// Carrier mobility µ (m²/(V·s)), > 0.
        mobility: f64,
    },
}

impl DielectricModel {
    pub fn drude(sigma: f64) -> Result<Self> {
        let model = DielectricModel::DrudeConductivity { sigma };
        model.validate()?;
        Ok(model)
    }

    pub fn static_dielectric(eps_s: f64) -> Result<Self> {
        let model = DielectricModel::StaticDielectric { eps_s };
        model.validate()?;
        Ok(model)
    }

    /// Intrinsic semiconductor with the default mobility.
    pub fn intrinsic_semiconductor(eps_s: f64, carrier_density: f64) -> Result<Self> {
        Self::intrinsic_semiconductor_with_mobility(eps_s, carrier_density, DEFAULT_MOBILITY)
    }

    pub fn intrinsic_semiconductor_with_mobility(
        eps_s: f64,
        carrier_density: f64,
        mobility: f64,
    ) -> Result<Self> {
        let model = DielectricModel::IntrinsicSemiconductor {
            eps_s,
            carrier_density,
            mobility,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            DielectricModel::PerfectConductor => Ok(()),
            DielectricModel::DrudeConductivity { sigma } => {
                if !(sigma > 0.0) {
                    return Err(Error::not_positive("sigma", sigma));
                }
                Ok(())
            }
            DielectricModel::StaticDielectric { eps_s } => {
                if !(eps_s >= 1.0) {
                    return Err(Error::Domain {
                        parameter: "eps_s",
                        requirement: "at least 1",
                        value: eps_s,
                    });
                }
                Ok(())
            }
            DielectricModel::IntrinsicSemiconductor {
                eps_s,
                carrier_density,
                mobility,
            } => {
                if !(eps_s >= 1.0) {
                    return Err(Error::Domain {
                        parameter: "eps_s",
                        requirement: "at least 1",
                        value: eps_s,
                    });
                }
                if !(carrier_density > 0.0) {
                    return Err(Error::not_positive("carrier_density", carrier_density));
                }
                if !(mobility > 0.0) {
                    return Err(Error::not_positive("mobility", mobility));
                }
                Ok(())
            }
        }
    }

    /// Free-carrier conductivity entering the 1/ξ term (S/m); zero for
    /// models without free carriers.
    pub fn conductivity(&self) -> f64 {
        match *self {
            DielectricModel::DrudeConductivity { sigma } => sigma,
            DielectricModel::IntrinsicSemiconductor {
                carrier_density,
                mobility,
                ..
            } => carrier_density * constants::ELEMENTARY_CHARGE * mobility,
            _ => 0.0,
        }
    }

    /// True when the ξ→0 permittivity diverges (free carriers present or
    /// ideal mirror); such models reflect TM fully at zero frequency.
    pub fn diverges_at_zero_frequency(&self) -> bool {
        matches!(
            self,
            DielectricModel::PerfectConductor
                | DielectricModel::DrudeConductivity { .. }
                | DielectricModel::IntrinsicSemiconductor { .. }
        )
    }

    /// Short identifier for output metadata.
    pub fn label(&self) -> &'static str {
        match self {
            DielectricModel::PerfectConductor => "perfect-conductor",
            DielectricModel::DrudeConductivity { .. } => "drude",
            DielectricModel::StaticDielectric { .. } => "static-dielectric",
            DielectricModel::IntrinsicSemiconductor { .. } => "intrinsic-semiconductor",
        }
    }
}

/// Permittivity on the imaginary axis: finite, or the perfect-conductor
/// infinity that consumers must branch on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Permittivity {
    Finite(f64),
    Infinite,
}

impl Permittivity {
    /// Unwrap the finite value; the infinite sentinel is a contract
    /// violation here because all arithmetic on it must go through the
    /// analytic limit paths.
    pub fn finite(self) -> Result<f64> {
        match self {
            Permittivity::Finite(v) => Ok(v),
            Permittivity::Infinite => Err(Error::Contract(
                "perfect conductor permittivity requested as a finite number; \
                 use the reflection-limit path",
            )),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Permittivity::Infinite)
    }
}

/// Relative permittivity ε(iξ) at imaginary angular frequency ξ > 0.
///
/// ξ = 0 is deliberately out of domain: every consumer of the ξ→0 limit
/// must use the analytic reflection limits instead.
pub fn eps_imag_axis(model: &DielectricModel, xi: f64) -> Result<Permittivity> {
    model.validate()?;
    if !(xi > 0.0) {
        return Err(Error::not_positive("xi", xi));
    }
    let eps = match *model {
        DielectricModel::PerfectConductor => return Ok(Permittivity::Infinite),
        DielectricModel::DrudeConductivity { sigma } => {
            1.0 + sigma / (constants::VACUUM_PERMITTIVITY * xi)
        }
        DielectricModel::StaticDielectric { eps_s } => eps_s,
        DielectricModel::IntrinsicSemiconductor { eps_s, .. } => {
            eps_s + model.conductivity() / (constants::VACUUM_PERMITTIVITY * xi)
        }
    };
    Ok(Permittivity::Finite(eps))
}

/// Carrier kinetics entering the low-frequency validity bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarrierKinetics {
    /// Typical thermal velocity of a carrier (m/s), > 0.
    pub thermal_velocity: f64,
}

impl CarrierKinetics {
    pub fn new(thermal_velocity: f64) -> Result<Self> {
        if !(thermal_velocity > 0.0) {
            return Err(Error::not_positive("thermal_velocity", thermal_velocity));
        }
        Ok(CarrierKinetics { thermal_velocity })
    }
}

/// Debye–Hückel field penetration length (m):
/// λ = sqrt(ε_s·ε₀·k_B·T / (e²·c_t)).
pub fn debye_length(eps_s: f64, temperature: f64, carrier_density: f64) -> Result<f64> {
    if !(eps_s >= 1.0) {
        return Err(Error::Domain {
            parameter: "eps_s",
            requirement: "at least 1",
            value: eps_s,
        });
    }
    if !(temperature > 0.0) {
        return Err(Error::not_positive("temperature", temperature));
    }
    if !(carrier_density > 0.0) {
        return Err(Error::not_positive("carrier_density", carrier_density));
    }
    let e = constants::ELEMENTARY_CHARGE;
    Ok(
        (eps_s * constants::VACUUM_PERMITTIVITY * constants::BOLTZMANN * temperature
            / (e * e * carrier_density))
            .sqrt(),
    )
}

/// Highest angular frequency (rad/s) at which treating the screening length
/// as frequency-independent remains defensible: v_c/λ. Callers compare
/// Matsubara frequencies against this and raise a warning flag, not an
/// error, when exceeded.
pub fn validity_max_frequency(kinetics: CarrierKinetics, lambda: f64) -> Result<f64> {
    if !(kinetics.thermal_velocity > 0.0) {
        return Err(Error::not_positive(
            "thermal_velocity",
            kinetics.thermal_velocity,
        ));
    }
    if !(lambda > 0.0) {
        return Err(Error::not_positive("lambda", lambda));
    }
    Ok(kinetics.thermal_velocity / lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Oracle: direct evaluation of sqrt(eps_s eps0 kB T / (e^2 c_t)) with the
    // CODATA constants, written out independently of the implementation.
    fn debye_oracle(eps_s: f64, t: f64, ct: f64) -> f64 {
        let num = eps_s * 8.8541878128e-12 * 1.380649e-23 * t;
        let den = 1.602176634e-19_f64.powi(2) * ct;
        (num / den).sqrt()
    }

    #[test]
    fn debye_length_intrinsic_germanium() {
        // eps_s = 16, T = 300 K, c_t = 4.7e19 m^-3 -> about 0.7 um,
        // the ~1 um scale expected for intrinsic Ge at room temperature.
        let lambda = debye_length(16.0, 300.0, 4.7e19).unwrap();
        let expected = debye_oracle(16.0, 300.0, 4.7e19);
        assert_relative_eq!(lambda, expected, max_relative = 1e-14);
        assert_relative_eq!(lambda, 6.9739e-7, max_relative = 1e-4);
        assert!((lambda - 0.68e-6).abs() / 0.68e-6 < 0.05);
    }

    #[test]
    fn debye_length_sqrt_temperature_scaling() {
        let t0 = 137.0;
        let l1 = debye_length(1.0, t0, 1e20).unwrap();
        let l2 = debye_length(1.0, 4.0 * t0, 1e20).unwrap();
        assert_relative_eq!(l2, 2.0 * l1, max_relative = 1e-14);
    }

    #[test]
    fn debye_length_metallic_sub_nanometer() {
        let lambda = debye_length(1.0, 300.0, 8.5e28).unwrap();
        assert!(lambda < 1e-9, "metal screening length {lambda} not < 1 nm");
    }

    #[test]
    fn debye_length_rejects_bad_inputs() {
        assert!(debye_length(0.5, 300.0, 1e19).is_err());
        assert!(debye_length(16.0, 0.0, 1e19).is_err());
        assert!(debye_length(16.0, 300.0, -1.0).is_err());
    }

    #[test]
    fn eps_static_is_constant() {
        let m = DielectricModel::static_dielectric(16.0).unwrap();
        for xi in [1e6, 1e10, 1e16] {
            assert_eq!(eps_imag_axis(&m, xi).unwrap().finite().unwrap(), 16.0);
        }
    }

    #[test]
    fn eps_drude_reference_point_and_limit() {
        let m = DielectricModel::drude(1.0).unwrap();
        // at xi = sigma/eps0 the Drude term equals 1, so eps = 2
        let xi = 1.0 / constants::VACUUM_PERMITTIVITY;
        assert_relative_eq!(
            eps_imag_axis(&m, xi).unwrap().finite().unwrap(),
            2.0,
            max_relative = 1e-12
        );
        // high-frequency limit -> 1
        let hi = eps_imag_axis(&m, 1e30).unwrap().finite().unwrap();
        assert_relative_eq!(hi, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn eps_perfect_conductor_is_sentinel() {
        let m = DielectricModel::PerfectConductor;
        let eps = eps_imag_axis(&m, 1e12).unwrap();
        assert!(eps.is_infinite());
        assert!(eps.finite().is_err());
    }

    #[test]
    fn eps_rejects_nonpositive_frequency() {
        let m = DielectricModel::drude(1.0).unwrap();
        assert!(eps_imag_axis(&m, 0.0).is_err());
        assert!(eps_imag_axis(&m, -1.0).is_err());
    }

    #[test]
    fn semiconductor_conductivity_from_carriers() {
        let m = DielectricModel::intrinsic_semiconductor(16.0, 4.7e19).unwrap();
        let sigma = m.conductivity();
        assert_relative_eq!(sigma, 4.7e19 * 1.602176634e-19 * 0.2, max_relative = 1e-14);
        assert!(m.diverges_at_zero_frequency());
    }

    #[test]
    fn validity_bound_examples() {
        let k = CarrierKinetics::new(1e5).unwrap();
        // v_c/lambda ~ 1e10: the 10 GHz regime quoted for germanium
        assert_relative_eq!(
            validity_max_frequency(k, 1e-5).unwrap(),
            1e10,
            max_relative = 1e-14
        );
        let b1 = validity_max_frequency(k, 1e-6).unwrap();
        let b2 = validity_max_frequency(k, 2e-6).unwrap();
        assert_relative_eq!(b1, 2.0 * b2, max_relative = 1e-14);
        let k2 = CarrierKinetics::new(2e5).unwrap();
        assert_relative_eq!(
            validity_max_frequency(k2, 1e-6).unwrap(),
            2e11,
            max_relative = 1e-14
        );
    }

    proptest! {
        // lambda(eps_s, T, c_t) = lambda(1,1,1) * sqrt(eps_s T / c_t)
        #[test]
        fn debye_length_homogeneity(
            eps_s in 1.0f64..100.0,
            t in 1.0f64..2000.0,
            ct in 1e15f64..1e29,
        ) {
            let lambda = debye_length(eps_s, t, ct).unwrap();
            let unit = debye_length(1.0, 1.0, 1.0).unwrap();
            let scaled = unit * (eps_s * t / ct).sqrt();
            prop_assert!((lambda - scaled).abs() <= 1e-12 * lambda.abs());
        }

        // eps(i xi) >= 1 and non-increasing in xi over the working decades
        #[test]
        fn eps_monotone_nonincreasing(
            sigma in 1e-2f64..1e8,
            eps_s in 1.0f64..100.0,
            ct in 1e15f64..1e25,
            base in 6.0f64..15.0,
        ) {
            let models = [
                DielectricModel::drude(sigma).unwrap(),
                DielectricModel::static_dielectric(eps_s).unwrap(),
                DielectricModel::intrinsic_semiconductor(eps_s, ct).unwrap(),
            ];
            let xi_lo = 10f64.powf(base);
            let xi_hi = 10f64.powf(base + 1.0);
            for m in &models {
                let lo = eps_imag_axis(m, xi_lo).unwrap().finite().unwrap();
                let hi = eps_imag_axis(m, xi_hi).unwrap().finite().unwrap();
                prop_assert!(lo >= 1.0);
                prop_assert!(hi >= 1.0);
                prop_assert!(hi <= lo * (1.0 + 1e-12));
            }
        }
    }
}
