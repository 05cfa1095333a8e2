//! End-to-end anchors: free energies and pressures frozen from an
//! independent 40-digit-arithmetic evaluation of the ideal-mirror closed
//! form and of the Drude reflection integrals.
//!
//! For ideal mirrors the per-frequency q-integral has the polylogarithm
//! closed form
//!     ∫_v^∞ u·ln(1 − e^{−u}) du = −[v·Li₂(e^{−v}) + Li₃(e^{−v})],
//! so the full Matsubara sum can be evaluated to arbitrary precision
//! without any quadrature. The values below were computed that way
//! (mpmath, 40 significant digits) and are independent of every code path
//! under test.

use approx::assert_relative_eq;
use casimir::lifshitz::ScreeningSpec;
use casimir::materials::DielectricModel;
use casimir::quad::QuadratureSpec;
use casimir::thermal::{free_energy, free_energy_t0, pressure, GapConfig};

const D: f64 = 1e-6;

/// (T [K], free energy per area [J/m²]) for ideal mirrors at d = 1 µm.
const IDEAL_FREE_ENERGY: &[(f64, f64)] = &[
    (600.0, -5.095124342e-10),
    (300.0, -4.449333280e-10),
    (150.0, -4.349476880e-10),
    (75.0, -4.335797908e-10),
    (37.5, -4.334013229e-10),
];

const IDEAL_T0: f64 = -4.333752574825845e-10;

#[test]
fn ideal_mirror_free_energy_matches_polylog_reference() {
    let pc = DielectricModel::PerfectConductor;
    let off = ScreeningSpec::off();
    for &(t, reference) in IDEAL_FREE_ENERGY {
        let gap = GapConfig::new(D, t).unwrap();
        let b = free_energy(&gap, &pc, &off).unwrap();
        assert_relative_eq!(b.total, reference, max_relative = 1e-8);
    }
    let e0 = free_energy_t0(D, &pc, &off, &QuadratureSpec::default()).unwrap();
    assert_relative_eq!(e0, IDEAL_T0, max_relative = 1e-8);
}

#[test]
fn drude_pressure_matches_quadrature_reference() {
    // same reference machinery, Drude sigma = 4.5e7 S/m at d = 5 µm,
    // T = 300 K, against the pressure integrand in each polarization
    let gap = GapConfig::new(5e-6, 300.0).unwrap();
    let drude = DielectricModel::drude(4.5e7).unwrap();
    let off = ScreeningSpec::off();
    let p_drude = pressure(&gap, &drude, &off).unwrap();
    let p_ideal = pressure(&gap, &DielectricModel::PerfectConductor, &off).unwrap();
    assert_relative_eq!(p_ideal, -3.2302011e-6, max_relative = 1e-6);
    assert_relative_eq!(p_drude, -1.6436912e-6, max_relative = 1e-6);
    assert_relative_eq!(p_drude / p_ideal, 0.50885105, max_relative = 1e-6);
}
