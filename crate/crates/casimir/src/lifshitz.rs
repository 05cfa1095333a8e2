//! Per-frequency mode physics between two identical half-spaces: transverse
//! wavevectors, TE/TM reflection functions with the optional Debye-screening
//! term in the material wavevector, the mode functions G, and the q-integrals
//! behind the free energy and pressure.
//!
//! Zero frequency never goes through the permittivity models; every model
//! supplies its analytic ξ→0 reflection limit instead.

use crate::constants::LIGHT_SPEED;
use crate::error::{Error, Result};
use crate::materials::{self, debye_length, DielectricModel, Permittivity};
use crate::quad::{self, QuadratureSpec};

/// Whether and how the Debye term λ⁻² enters the material wavevector γ₁.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScreeningMode {
    /// Unmodified material wavevector.
    Off,
    /// Fixed screening length (m), > 0.
    DebyeFixed { lambda: f64 },
    /// Screening length computed from material parameters at the evaluation
    /// temperature.
    DebyeComputed { eps_s: f64, carrier_density: f64 },
}

/// Screening configuration. `apply_to_tm` decides whether the λ⁻² term also
/// enters the TM wavevector; it is recorded as false whenever screening is
/// off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScreeningSpec {
    pub mode: ScreeningMode,
    pub apply_to_tm: bool,
}

impl ScreeningSpec {
    pub fn off() -> Self {
        ScreeningSpec {
            mode: ScreeningMode::Off,
            apply_to_tm: false,
        }
    }

    /// Fixed-λ screening; the screening argument is polarization-agnostic,
    /// so `apply_to_tm` defaults to true in the CLI and most callers.
    pub fn debye_fixed(lambda: f64, apply_to_tm: bool) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::not_positive("lambda", lambda));
        }
        Ok(ScreeningSpec {
            mode: ScreeningMode::DebyeFixed { lambda },
            apply_to_tm,
        })
    }

    pub fn debye_computed(eps_s: f64, carrier_density: f64, apply_to_tm: bool) -> Result<Self> {
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
        Ok(ScreeningSpec {
            mode: ScreeningMode::DebyeComputed {
                eps_s,
                carrier_density,
            },
            apply_to_tm,
        })
    }

    pub fn is_off(&self) -> bool {
        matches!(self.mode, ScreeningMode::Off)
    }

    /// Resolve the screening length. `DebyeComputed` needs the evaluation
    /// temperature; passing `None` for it is a domain error so the T = 0
    /// integral path cannot silently pick an arbitrary λ.
    pub fn resolve(&self, temperature: Option<f64>) -> Result<ResolvedScreening> {
        let lambda = match self.mode {
            ScreeningMode::Off => None,
            ScreeningMode::DebyeFixed { lambda } => {
                if !(lambda > 0.0) {
                    return Err(Error::not_positive("lambda", lambda));
                }
                Some(lambda)
            }
            ScreeningMode::DebyeComputed {
                eps_s,
                carrier_density,
            } => match temperature {
                Some(t) => Some(debye_length(eps_s, t, carrier_density)?),
                None => {
                    return Err(Error::Domain {
                        parameter: "temperature",
                        requirement: "supplied (DebyeComputed screening has no T = 0 limit)",
                        value: f64::NAN,
                    })
                }
            },
        };
        Ok(ResolvedScreening {
            lambda,
            apply_to_tm: if lambda.is_some() {
                self.apply_to_tm
            } else {
                false
            },
        })
    }

    pub fn label(&self) -> &'static str {
        match self.mode {
            ScreeningMode::Off => "off",
            ScreeningMode::DebyeFixed { .. } => "debye-fixed",
            ScreeningMode::DebyeComputed { .. } => "debye-computed",
        }
    }
}

/// Screening with the Debye length already resolved to a number; this is
/// what the per-frequency functions consume.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolvedScreening {
    /// `None` when screening is off.
    pub lambda: Option<f64>,
    pub apply_to_tm: bool,
}

impl ResolvedScreening {
    pub fn off() -> Self {
        ResolvedScreening {
            lambda: None,
            apply_to_tm: false,
        }
    }

    pub fn fixed(lambda: f64, apply_to_tm: bool) -> Result<Self> {
        ScreeningSpec::debye_fixed(lambda, apply_to_tm)?.resolve(None)
    }

    /// λ⁻² for the given polarization; zero when the term does not apply.
    fn inv_lambda_sq(&self, polarization: Polarization) -> f64 {
        match (self.lambda, polarization) {
            (Some(l), Polarization::Te) => 1.0 / (l * l),
            (Some(l), Polarization::Tm) if self.apply_to_tm => 1.0 / (l * l),
            _ => 0.0,
        }
    }
}

/// Field polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// Electric field parallel to the surfaces.
    Te,
    /// Magnetic field parallel to the surfaces.
    Tm,
}

/// One (q, ξ, d) evaluation point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePoint {
    /// Transverse wavenumber (1/m), ≥ 0.
    pub q: f64,
    /// Imaginary angular frequency (rad/s), ≥ 0.
    pub xi: f64,
    /// Plate separation (m), > 0.
    pub d: f64,
}

impl ModePoint {
    pub fn new(q: f64, xi: f64, d: f64) -> Result<Self> {
        if q < 0.0 || !q.is_finite() {
            return Err(Error::negative("q", q));
        }
        if xi < 0.0 || !xi.is_finite() {
            return Err(Error::negative("xi", xi));
        }
        if !(d > 0.0) {
            return Err(Error::not_positive("d", d));
        }
        Ok(ModePoint { q, xi, d })
    }
}

/// Vacuum transverse wavevector γ₀ = sqrt(q² + ξ²/c²).
///
/// Written with the same floating-point operations as [`gamma_material`] so
/// that a unit-permittivity material yields γ₁ bitwise equal to γ₀ and the
/// reflection ratio vanishes exactly.
pub fn gamma_vacuum(q: f64, xi: f64) -> Result<f64> {
    if q < 0.0 {
        return Err(Error::negative("q", q));
    }
    if xi < 0.0 {
        return Err(Error::negative("xi", xi));
    }
    let kappa = xi / LIGHT_SPEED;
    Ok((q * q + kappa * kappa).sqrt())
}

/// Material transverse wavevector, with the Debye floor when screening is
/// active: γ₁ = sqrt(q² + [λ⁻²] + ε(iξ)·ξ²/c²).
///
/// The perfect conductor has no finite γ₁; asking for one is a contract
/// violation (use the reflection limits).
pub fn gamma_material(
    q: f64,
    xi: f64,
    model: &DielectricModel,
    screening: &ResolvedScreening,
) -> Result<f64> {
    gamma_material_polarized(q, xi, model, screening, Polarization::Te)
}

/// As [`gamma_material`], but dropping the λ⁻² term for TM when
/// `apply_to_tm` is false.
fn gamma_material_polarized(
    q: f64,
    xi: f64,
    model: &DielectricModel,
    screening: &ResolvedScreening,
    polarization: Polarization,
) -> Result<f64> {
    if q < 0.0 {
        return Err(Error::negative("q", q));
    }
    if xi < 0.0 {
        return Err(Error::negative("xi", xi));
    }
    let inv_l2 = screening.inv_lambda_sq(polarization);
    let dispersive = if xi == 0.0 {
        // allowed only when the screening floor (or trivially ε-independent
        // material term) keeps the expression analytic
        match model {
            DielectricModel::PerfectConductor => {
                return Err(Error::Contract(
                    "gamma_material is undefined for a perfect conductor",
                ))
            }
            _ => 0.0,
        }
    } else {
        match materials::eps_imag_axis(model, xi)? {
            Permittivity::Finite(eps) => {
                let kappa = xi / LIGHT_SPEED;
                eps * (kappa * kappa)
            }
            Permittivity::Infinite => {
                return Err(Error::Contract(
                    "gamma_material is undefined for a perfect conductor",
                ))
            }
        }
    };
    Ok((q * q + inv_l2 + dispersive).sqrt())
}

/// Analytic ξ→0 limit of the TE reflection ratio.
///
/// Unscreened finite materials lose the TE zero-frequency mode entirely
/// (γ₁→γ₀ so r→0); a screened material keeps a wavevector floor of 1/λ and
/// reflects like (sqrt(q²+λ⁻²)−q)/(sqrt(q²+λ⁻²)+q); the perfect conductor
/// reflects fully.
pub fn zero_frequency_te_reflection_limit(
    model: &DielectricModel,
    screening: &ResolvedScreening,
    q: f64,
) -> Result<f64> {
    if q < 0.0 {
        return Err(Error::negative("q", q));
    }
    model.validate()?;
    if matches!(model, DielectricModel::PerfectConductor) {
        return Ok(1.0);
    }
    match screening.lambda {
        None => Ok(0.0),
        Some(lambda) => {
            let g1 = q.hypot(1.0 / lambda);
            Ok((g1 - q) / (g1 + q))
        }
    }
}

/// Analytic ξ→0 limit of the TM reflection ratio.
///
/// Any model whose ε(iξ) diverges as ξ→0 (perfect conductor, Drude,
/// intrinsic semiconductor) reflects TM fully; a static dielectric keeps
/// r = (ε_s·γ₀ − γ₁)/(ε_s·γ₀ + γ₁) with the screening floor in γ₁ only when
/// it applies to TM.
pub fn zero_frequency_tm_reflection_limit(
    model: &DielectricModel,
    screening: &ResolvedScreening,
    q: f64,
) -> Result<f64> {
    if q < 0.0 {
        return Err(Error::negative("q", q));
    }
    model.validate()?;
    if model.diverges_at_zero_frequency() {
        return Ok(1.0);
    }
    let eps_s = match *model {
        DielectricModel::StaticDielectric { eps_s } => eps_s,
        // diverging models returned above
        _ => unreachable!("non-divergent model is StaticDielectric"),
    };
    let inv_l2 = screening.inv_lambda_sq(Polarization::Tm);
    if inv_l2 == 0.0 {
        // γ₁ = γ₀ = q; the ratio is q-independent, with the q = 0 value
        // taken as the continuous limit
        return Ok((eps_s - 1.0) / (eps_s + 1.0));
    }
    let g1 = (q * q + inv_l2).sqrt();
    Ok((eps_s * q - g1) / (eps_s * q + g1))
}

/// TE reflection ratio r = (γ₁−γ₀)/(γ₁+γ₀) ∈ [0, 1]. ξ = 0 dispatches to
/// the analytic limit.
pub fn reflection_te(
    point: &ModePoint,
    model: &DielectricModel,
    screening: &ResolvedScreening,
) -> Result<f64> {
    reflection(point, Polarization::Te, model, screening)
}

/// TM reflection ratio r = (ε·γ₀−γ₁)/(ε·γ₀+γ₁) ∈ (−1, 1]. The screening
/// term enters γ₁ only when `apply_to_tm` is set. ξ = 0 dispatches to the
/// analytic limit.
pub fn reflection_tm(
    point: &ModePoint,
    model: &DielectricModel,
    screening: &ResolvedScreening,
) -> Result<f64> {
    reflection(point, Polarization::Tm, model, screening)
}

/// Reflection ratio for either polarization.
pub fn reflection(
    point: &ModePoint,
    polarization: Polarization,
    model: &DielectricModel,
    screening: &ResolvedScreening,
) -> Result<f64> {
    if point.q < 0.0 {
        return Err(Error::negative("q", point.q));
    }
    if point.xi == 0.0 {
        return match polarization {
            Polarization::Te => zero_frequency_te_reflection_limit(model, screening, point.q),
            Polarization::Tm => zero_frequency_tm_reflection_limit(model, screening, point.q),
        };
    }
    model.validate()?;
    if matches!(model, DielectricModel::PerfectConductor) {
        return Ok(1.0);
    }
    let g0 = gamma_vacuum(point.q, point.xi)?;
    let g1 = gamma_material_polarized(point.q, point.xi, model, screening, polarization)?;
    match polarization {
        Polarization::Te => Ok((g1 - g0) / (g1 + g0)),
        Polarization::Tm => {
            let eps = materials::eps_imag_axis(model, point.xi)?.finite()?;
            Ok((eps * g0 - g1) / (eps * g0 + g1))
        }
    }
}

/// Mode function G = 1 − r²·e^{−2γ₀d} ∈ (0, 1].
pub fn mode_function(
    point: &ModePoint,
    polarization: Polarization,
    model: &DielectricModel,
    screening: &ResolvedScreening,
) -> Result<f64> {
    let r = reflection(point, polarization, model, screening)?;
    let g0 = gamma_vacuum(point.q, point.xi)?;
    Ok(mode_function_from_reflection(r, 2.0 * g0 * point.d))
}

/// G evaluated from a reflection ratio and the decay exponent u = 2γ₀d,
/// arranged so no precision is lost when r is close to 1:
/// G = (1 − e^{−u}) + (1 − r²)·e^{−u}, both addends non-negative.
fn mode_function_from_reflection(r: f64, u: f64) -> f64 {
    if r == 0.0 {
        return 1.0;
    }
    let decay = (-u).exp();
    (-(-u).exp_m1()) + (1.0 - r) * (1.0 + r) * decay
}

/// ln G = ln1p(−r²e^{−u}); exactly 0 when r = 0. The ln1p route keeps full
/// relative accuracy in the large-u tail, where forming G ≈ 1 − tiny first
/// would truncate the tail at machine epsilon.
fn log_mode_function(r: f64, u: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    (-(r * r) * (-u).exp()).ln_1p()
}

/// Width of the u = 2γ₀d integration window. Beyond u₀ + 60 the integrand
/// is bounded by e^{−60} ≈ 9e-27 of its scale, far below any tolerance here.
const U_SPAN: f64 = 60.0;

/// The per-frequency q-integral f(ξ) = (1/2π)·∫₀^∞ ln G(q, iξ) q dq, in
/// 1/m² (free energy per area per k_BT). Always ≤ 0.
///
/// Internally integrates over u = 2γ₀d, the natural decay variable, so the
/// semi-infinite tail is benign at any separation.
pub fn mode_integral_f(
    xi: f64,
    d: f64,
    model: &DielectricModel,
    screening: &ResolvedScreening,
    polarization: Polarization,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    if xi < 0.0 {
        return Err(Error::negative("xi", xi));
    }
    if !(d > 0.0) {
        return Err(Error::not_positive("d", d));
    }
    let u0 = 2.0 * xi * d / LIGHT_SPEED;
    let integrand = |u: f64| -> Result<f64> {
        if u == 0.0 {
            // u·ln G -> 0 even where G -> 0
            return Ok(0.0);
        }
        let point = mode_point_from_u(u, xi, d);
        let r = reflection(&point, polarization, model, screening)?;
        Ok(log_mode_function(r, u) * u)
    };
    let integral = quad::integrate(integrand, u0, u0 + U_SPAN, quad_spec)?;
    Ok(integral.value / (8.0 * std::f64::consts::PI * d * d))
}

/// The q-integral of the analytic d-derivative of ln G,
/// g(ξ) = (1/2π)·∫₀^∞ [2γ₀·r²·e^{−2γ₀d}/G] q dq, in 1/m³. Always ≥ 0;
/// the pressure is −k_BT·Σ′ g.
pub fn pressure_mode_integral(
    xi: f64,
    d: f64,
    model: &DielectricModel,
    screening: &ResolvedScreening,
    polarization: Polarization,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    if xi < 0.0 {
        return Err(Error::negative("xi", xi));
    }
    if !(d > 0.0) {
        return Err(Error::not_positive("d", d));
    }
    let u0 = 2.0 * xi * d / LIGHT_SPEED;
    let integrand = |u: f64| -> Result<f64> {
        if u == 0.0 {
            // u²·r²e^{−u}/G -> 0 as u -> 0 even at full reflection
            return Ok(0.0);
        }
        let point = mode_point_from_u(u, xi, d);
        let r = reflection(&point, polarization, model, screening)?;
        if r == 0.0 {
            return Ok(0.0);
        }
        let decay = (-u).exp();
        let g = mode_function_from_reflection(r, u);
        Ok(u * u * r * r * decay / g)
    };
    let integral = quad::integrate(integrand, u0, u0 + U_SPAN, quad_spec)?;
    Ok(integral.value / (8.0 * std::f64::consts::PI * d * d * d))
}

/// Map the integration variable u = 2γ₀d back to a mode point. Rounding can
/// push q² a hair negative at the lower endpoint; clamp to the light line.
fn mode_point_from_u(u: f64, xi: f64, d: f64) -> ModePoint {
    let g0 = u / (2.0 * d);
    let kappa = xi / LIGHT_SPEED;
    let q2 = g0 * g0 - kappa * kappa;
    ModePoint {
        q: if q2 > 0.0 { q2.sqrt() } else { 0.0 },
        xi,
        d,
    }
}
