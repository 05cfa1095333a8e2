//! Screened electrostatic calibration between semiconductor plates: the
//! exponentially screened plate potentials, the stored field energy per unit
//! area, the separation-correction factor, the sphere–plate force through the
//! proximity force approximation, and the field-strength-dependent effective
//! screening length.

use crate::constants::{thermal_voltage, VACUUM_PERMITTIVITY};
use crate::error::{Error, Result};

/// Inputs for one calibration configuration: plates at ±V/2, vacuum gap d,
/// plate permittivity ε_s and screening length λ at temperature T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CalibrationScenario {
    /// Total plate-to-plate applied voltage (V). May be zero.
    pub applied_voltage: f64,
    /// Plate separation d (m), > 0.
    pub separation: f64,
    /// Plate relative permittivity, ≥ 1.
    pub eps_s: f64,
    /// Debye screening length λ (m), > 0.
    pub lambda: f64,
    /// Temperature (K), > 0.
    pub temperature: f64,
}

impl CalibrationScenario {
    pub fn new(
        applied_voltage: f64,
        separation: f64,
        eps_s: f64,
        lambda: f64,
        temperature: f64,
    ) -> Result<Self> {
        let s = CalibrationScenario {
            applied_voltage,
            separation,
            eps_s,
            lambda,
            temperature,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.applied_voltage.is_finite() {
            return Err(Error::Domain {
                parameter: "applied_voltage",
                requirement: "finite",
                value: self.applied_voltage,
            });
        }
        if !(self.separation > 0.0) {
            return Err(Error::not_positive("separation", self.separation));
        }
        if !(self.eps_s >= 1.0) {
            return Err(Error::Domain {
                parameter: "eps_s",
                requirement: "at least 1",
                value: self.eps_s,
            });
        }
        if !(self.lambda > 0.0) {
            return Err(Error::not_positive("lambda", self.lambda));
        }
        if !(self.temperature > 0.0) {
            return Err(Error::not_positive("temperature", self.temperature));
        }
        Ok(())
    }

    /// Dimensionless length y = ε_s·d/λ.
    pub fn y(&self) -> f64 {
        self.eps_s * self.separation / self.lambda
    }

    /// k_B·T/e in volts, the scale against which surface potential drops are
    /// measured.
    pub fn thermal_voltage(&self) -> f64 {
        thermal_voltage(self.temperature)
    }

    fn with_lambda(&self, lambda: f64) -> Self {
        CalibrationScenario { lambda, ..*self }
    }
}

/// Surface potential V_s = (V/2)·1/(1 + 2λ/(ε_s·d)); approaches V/2 as
/// λ → 0 (unscreened conductor).
pub fn surface_potential(scenario: &CalibrationScenario) -> Result<f64> {
    scenario.validate()?;
    let ratio = 2.0 * scenario.lambda / (scenario.eps_s * scenario.separation);
    Ok(scenario.applied_voltage / 2.0 / (1.0 + ratio))
}

/// Potential drop V/2 − V_s between the bulk of a plate and its surface, in
/// the cancellation-free form (V/2)·ρ/(1 + ρ) with ρ = 2λ/(ε_s·d); the
/// direct subtraction loses digits once the plates screen weakly (large y).
pub fn surface_potential_drop(scenario: &CalibrationScenario) -> Result<f64> {
    scenario.validate()?;
    let ratio = 2.0 * scenario.lambda / (scenario.eps_s * scenario.separation);
    Ok(scenario.applied_voltage / 2.0 * ratio / (1.0 + ratio))
}

/// The piecewise potential: exponential recovery toward ±V/2 inside the
/// plates, linear across the vacuum gap. Plate 1 occupies x ≤ 0, the gap
/// 0 ≤ x ≤ d, plate 2 x ≥ d.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreenedPotentialProfile {
    pub surface_potential: f64,
    /// V/2 − V_s, stored in the stable form.
    pub surface_drop: f64,
    pub applied_voltage: f64,
    pub lambda: f64,
    pub separation: f64,
    pub eps_s: f64,
}

impl ScreenedPotentialProfile {
    pub fn new(scenario: &CalibrationScenario) -> Result<Self> {
        Ok(ScreenedPotentialProfile {
            surface_potential: surface_potential(scenario)?,
            surface_drop: surface_potential_drop(scenario)?,
            applied_voltage: scenario.applied_voltage,
            lambda: scenario.lambda,
            separation: scenario.separation,
            eps_s: scenario.eps_s,
        })
    }

    /// V₁(x) for x ≤ 0: V/2 − (V/2 − V_s)·e^{x/λ}.
    pub fn plate(&self, x: f64) -> f64 {
        self.applied_voltage / 2.0 - self.surface_drop * (x / self.lambda).exp()
    }

    /// V₀(x) for 0 ≤ x ≤ d: linear from +V_s to −V_s, zero at the midpoint.
    pub fn gap(&self, x: f64) -> f64 {
        self.surface_potential * (1.0 - 2.0 * x / self.separation)
    }

    /// Slope of the plate potential at the surface, (V/2 − V_s)/λ.
    pub fn plate_surface_field(&self) -> f64 {
        self.surface_drop / self.lambda
    }

    /// Slope of the gap potential, −2V_s/d (uniform field).
    pub fn gap_field(&self) -> f64 {
        -2.0 * self.surface_potential / self.separation
    }

    /// Residual of the displacement-continuity condition
    /// ε_s·V₁′(0) = V₀′(0), normalized by the field scale.
    pub fn displacement_continuity_residual(&self) -> f64 {
        let lhs = self.eps_s * self.plate_surface_field();
        let rhs = -self.gap_field();
        let scale = lhs.abs().max(rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            (lhs - rhs).abs() / scale
        }
    }
}

/// Stored field energy per unit area for the screened capacitor,
/// 𝓔 = ½·(ε₀V²/d)·(y + y²)/(y + 2)², strictly below the ideal-capacitor
/// value ½ε₀V²/d at finite y.
pub fn field_energy_per_area(scenario: &CalibrationScenario) -> Result<f64> {
    scenario.validate()?;
    let v = scenario.applied_voltage;
    Ok(0.5 * VACUUM_PERMITTIVITY * v * v / scenario.separation
        * separation_correction_factor(scenario.y())?)
}

/// Ideal (unscreened) parallel-plate energy per unit area ½ε₀V²/d.
pub fn ideal_field_energy_per_area(scenario: &CalibrationScenario) -> Result<f64> {
    scenario.validate()?;
    let v = scenario.applied_voltage;
    Ok(0.5 * VACUUM_PERMITTIVITY * v * v / scenario.separation)
}

/// The bracket (y + y²)/(y + 2)² ∈ (0, 1), strictly increasing in
/// y = ε_s·d/λ with limit 1. Under the proximity-force 1/d fit, a separation
/// inferred from an electrostatic calibration must be multiplied by this
/// factor.
pub fn separation_correction_factor(y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::not_positive("y", y));
    }
    Ok((y + y * y) / ((y + 2.0) * (y + 2.0)))
}

/// Sphere–plate force via the proximity force approximation,
/// F = 2πR·𝓔(d). Positive values mean attraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfaForce {
    /// Attractive force magnitude (N).
    pub force: f64,
    /// Set when R < 100·d, where the proximity approximation degrades.
    pub radius_warning: bool,
}

pub fn pfa_sphere_plate_force(scenario: &CalibrationScenario, radius: f64) -> Result<PfaForce> {
    if !(radius > 0.0) {
        return Err(Error::not_positive("radius", radius));
    }
    let energy = field_energy_per_area(scenario)?;
    Ok(PfaForce {
        force: 2.0 * std::f64::consts::PI * radius * energy,
        radius_warning: radius < 100.0 * scenario.separation,
    })
}

/// λ′/λ as a function of the dimensionless potential drop Φ:
/// |Φ|/sqrt(e^Φ + e^{−Φ} − 2), evaluated through the identity
/// e^Φ + e^{−Φ} − 2 = 4·sinh²(Φ/2) so small Φ loses no precision.
/// Even in Φ, equal to 1 at Φ = 0, non-increasing in |Φ|.
pub fn screening_ratio(phi: f64) -> f64 {
    if phi == 0.0 {
        return 1.0;
    }
    let s = 2.0 * (phi / 2.0).sinh();
    (phi / s).abs()
}

/// Self-consistent effective screening length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveScreening {
    /// λ′ (m), ≤ λ.
    pub lambda_prime: f64,
    /// The converged dimensionless potential drop Φ = e·(V/2 − V_s)/k_BT.
    pub phi: f64,
    pub iterations: usize,
}

const FIXED_POINT_MAX_ITERATIONS: usize = 1000;
const FIXED_POINT_REL_TOL: f64 = 1e-10;

/// Solve the coupled system for the effective screening length: V_s follows
/// from λ′ through the surface-potential formula, Φ = (V/2 − V_s)/(k_BT/e),
/// and λ′/λ from Φ through [`screening_ratio`]; iterate to a fixed point,
/// halving the step if the iteration starts to oscillate.
pub fn effective_screening_length(scenario: &CalibrationScenario) -> Result<EffectiveScreening> {
    scenario.validate()?;
    let vt = scenario.thermal_voltage();
    let lambda = scenario.lambda;

    let mut lp = lambda;
    let mut prev_step = 0.0_f64;
    for iteration in 0..FIXED_POINT_MAX_ITERATIONS {
        let phi = surface_potential_drop(&scenario.with_lambda(lp))? / vt;
        let mut next = lambda * screening_ratio(phi);
        let step = next - lp;
        if prev_step * step < 0.0 {
            // oscillation: damp the update
            next = lp + 0.5 * step;
        }
        prev_step = step;
        let done = (next - lp).abs() <= FIXED_POINT_REL_TOL * next.abs();
        lp = next;
        if done {
            return Ok(EffectiveScreening {
                lambda_prime: lp,
                phi,
                iterations: iteration + 1,
            });
        }
    }
    Err(Error::FixedPointNonConvergence {
        iterations: FIXED_POINT_MAX_ITERATIONS,
        last_ratio: lp / lambda,
    })
}

/// Separation-correction table: rows (y, factor), y linearly spaced over the
/// inclusive range.
pub fn figure1_data(y_min: f64, y_max: f64, n_points: usize) -> Result<Vec<(f64, f64)>> {
    table(y_min, y_max, n_points, separation_correction_factor)
}

/// Effective-length table: rows (Φ, λ′/λ) over the inclusive range.
pub fn figure2_data(phi_min: f64, phi_max: f64, n_points: usize) -> Result<Vec<(f64, f64)>> {
    table(phi_min, phi_max, n_points, |phi| Ok(screening_ratio(phi)))
}

fn table(
    lo: f64,
    hi: f64,
    n_points: usize,
    f: impl Fn(f64) -> Result<f64>,
) -> Result<Vec<(f64, f64)>> {
    if n_points < 2 {
        return Err(Error::Domain {
            parameter: "n_points",
            requirement: "at least 2",
            value: n_points as f64,
        });
    }
    if !(hi > lo) {
        return Err(Error::Domain {
            parameter: "range",
            requirement: "max strictly above min",
            value: hi - lo,
        });
    }
    let mut rows = Vec::with_capacity(n_points);
    for i in 0..n_points {
        // endpoints exact
        let x = if i == n_points - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n_points - 1) as f64
        };
        rows.push((x, f(x)?));
    }
    Ok(rows)
}
