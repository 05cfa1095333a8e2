//! Physical constants in SI units (CODATA 2018).
//!
//! Values are compiled in and never read from configuration.

/// Boltzmann constant k_B (J/K). Exact since the 2019 SI redefinition.
pub const BOLTZMANN: f64 = 1.380_649e-23;

/// Reduced Planck constant ħ (J·s). Exact.
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Elementary charge e (C). Exact.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Speed of light in vacuum c (m/s). Exact.
pub const LIGHT_SPEED: f64 = 299_792_458.0;

/// Identifier echoed into output metadata so results are traceable to the
/// constants revision they were computed with.
pub const CONSTANTS_VERSION: &str = "CODATA-2018";

/// The full constant set as one value, for callers that want to pass
/// constants around explicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// k_B (J/K)
    pub boltzmann: f64,
    /// ħ (J·s)
    pub reduced_planck: f64,
    /// ε₀ (F/m)
    pub vacuum_permittivity: f64,
    /// e (C)
    pub elementary_charge: f64,
    /// c (m/s)
    pub light_speed: f64,
}

/// The compiled-in SI constant set.
pub const SI: PhysicalConstants = PhysicalConstants {
    boltzmann: BOLTZMANN,
    reduced_planck: REDUCED_PLANCK,
    vacuum_permittivity: VACUUM_PERMITTIVITY,
    elementary_charge: ELEMENTARY_CHARGE,
    light_speed: LIGHT_SPEED,
};

/// Thermal voltage k_B·T/e (volts).
pub fn thermal_voltage(temperature: f64) -> f64 {
    BOLTZMANN * temperature / ELEMENTARY_CHARGE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_positive_and_finite() {
        for v in [
            SI.boltzmann,
            SI.reduced_planck,
            SI.vacuum_permittivity,
            SI.elementary_charge,
            SI.light_speed,
        ] {
            assert!(v > 0.0 && v.is_finite());
        }
    }

    #[test]
    fn thermal_voltage_room_temperature() {
        // k_B * 300 K / e = 25.85 mV
        let vt = thermal_voltage(300.0);
        assert!((vt - 0.02585).abs() < 1e-4);
    }
}
