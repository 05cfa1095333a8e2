//! Matsubara machinery: the frequency grid, the primed free-energy sum with
//! its truncation bound, the T = 0 integral limit, pressure from the analytic
//! distance derivative, entropy by finite differences, and the sum-versus-
//! integral gap diagnostic behind the Third-Law discussion.

use crate::constants::{BOLTZMANN, LIGHT_SPEED, REDUCED_PLANCK};
use crate::error::{Error, Result};
use crate::lifshitz::{
    mode_integral_f, pressure_mode_integral, Polarization, ResolvedScreening, ScreeningSpec,
};
use crate::materials::{validity_max_frequency, CarrierKinetics, DielectricModel};
use crate::quad::{self, QuadratureSpec};

/// Gap geometry, temperature and numerical budgets for one free-energy or
/// pressure evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapConfig {
    /// Plate separation d (m), > 0.
    pub separation: f64,
    /// Temperature (K), ≥ 0. The T = 0 case is served by the integral form,
    /// never by the sum.
    pub temperature: f64,
    /// Relative tolerance for truncating the Matsubara sum.
    pub sum_rel_tol: f64,
    /// Hard cap on the Matsubara index.
    pub n_max: usize,
    /// Tolerances for the per-frequency q-integrals.
    pub quad: QuadratureSpec,
    /// Optional carrier kinetics; when present together with an active
    /// screening length, evaluations flag Matsubara frequencies beyond the
    /// v_c/λ validity bound.
    pub kinetics: Option<CarrierKinetics>,
}

impl GapConfig {
    pub fn new(separation: f64, temperature: f64) -> Result<Self> {
        let config = GapConfig {
            separation,
            temperature,
            sum_rel_tol: 1e-9,
            n_max: 100_000,
            quad: QuadratureSpec::default(),
            kinetics: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.separation > 0.0) {
            return Err(Error::not_positive("separation", self.separation));
        }
        if self.temperature < 0.0 || !self.temperature.is_finite() {
            return Err(Error::negative("temperature", self.temperature));
        }
        if !(self.sum_rel_tol > 0.0) {
            return Err(Error::not_positive("sum_rel_tol", self.sum_rel_tol));
        }
        if self.n_max < 1 {
            return Err(Error::Domain {
                parameter: "n_max",
                requirement: "at least 1",
                value: self.n_max as f64,
            });
        }
        self.quad.validate()
    }

    fn at_temperature(&self, temperature: f64) -> Self {
        GapConfig {
            temperature,
            ..*self
        }
    }
}

/// Free energy per unit area with its per-index, per-polarization terms.
///
/// `total` reconstructs exactly as the ordered sum of `te_terms` and
/// `tm_terms` (interleaved per index); the truncation estimate is a
/// diagnostic bound on the discarded tail, not part of the total.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeEnergyBreakdown {
    /// Free energy per unit area (J/m²), ≤ 0.
    pub total: f64,
    /// k_BT-weighted TE term per Matsubara index (J/m²), index 0 first,
    /// carrying the n = 0 half weight.
    pub te_terms: Vec<f64>,
    /// Same for TM.
    pub tm_terms: Vec<f64>,
    /// The isolated n = 0 TE term (J/m²), equal to `te_terms[0]`.
    pub n_zero_te: f64,
    /// The isolated n = 0 TM term (J/m²), equal to `tm_terms[0]`.
    pub n_zero_tm: f64,
    /// Number of Matsubara indices evaluated (including n = 0).
    pub n_used: usize,
    /// Geometric bound on the truncated tail (J/m², ≤ 0).
    pub truncation_estimate: f64,
    /// Validity warnings raised during evaluation.
    pub validity_warnings: Vec<String>,
}

impl FreeEnergyBreakdown {
    /// Re-sum the stored terms in evaluation order; equals `total` exactly.
    pub fn reconstruct_total(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.te_terms.len() {
            sum += self.te_terms[i] + self.tm_terms[i];
        }
        sum
    }
}

/// Matsubara angular frequency ω_n = 2π·n·k_B·T/ħ (rad/s).
pub fn matsubara_frequency(n: usize, temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(Error::not_positive("temperature", temperature));
    }
    Ok(2.0 * std::f64::consts::PI * n as f64 * BOLTZMANN * temperature / REDUCED_PLANCK)
}

/// Thermal mode photon number n(ω) = coth(ħω/2k_BT), > 1.
pub fn photon_number(omega: f64, temperature: f64) -> Result<f64> {
    let x = coth_argument(omega, temperature)?;
    Ok(1.0 / x.tanh())
}

/// n(ω) − 1 = 2/(e^{ħω/k_BT} − 1), the thermal excess over the saturated
/// zero-point value. Numerically faithful where coth(x) rounds to 1, which
/// is what finite-difference probes of the temperature derivative need.
pub fn photon_number_excess(omega: f64, temperature: f64) -> Result<f64> {
    let x = coth_argument(omega, temperature)?;
    Ok(2.0 / (2.0 * x).exp_m1())
}

/// Analytic temperature derivative dn/dT = (ħω/2k_BT²)·csch²(ħω/2k_BT) > 0.
/// Vanishes exponentially as T → 0.
pub fn photon_number_dt(omega: f64, temperature: f64) -> Result<f64> {
    let x = coth_argument(omega, temperature)?;
    let sinh = x.sinh();
    Ok((x / temperature) / (sinh * sinh))
}

fn coth_argument(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) {
        return Err(Error::not_positive("omega", omega));
    }
    if !(temperature > 0.0) {
        return Err(Error::not_positive("temperature", temperature));
    }
    Ok(REDUCED_PLANCK * omega / (2.0 * BOLTZMANN * temperature))
}

/// Both-polarization q-integrals at one frequency.
fn mode_pair(
    xi: f64,
    d: f64,
    model: &DielectricModel,
    screening: &ResolvedScreening,
    quad_spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let te = mode_integral_f(xi, d, model, screening, Polarization::Te, quad_spec)?;
    let tm = mode_integral_f(xi, d, model, screening, Polarization::Tm, quad_spec)?;
    Ok((te, tm))
}

/// Finite-temperature free energy per unit area,
/// 𝓔 = k_BT·Σ′_n [f_TE(ω_n) + f_TM(ω_n)], the prime halving the n = 0 term.
///
/// The sum stops once the latest index contributes below `sum_rel_tol`
/// relatively for two consecutive indices; the discarded tail is bounded
/// geometrically from the observed decay ratio.
pub fn free_energy(
    gap: &GapConfig,
    model: &DielectricModel,
    screening: &ScreeningSpec,
) -> Result<FreeEnergyBreakdown> {
    gap.validate()?;
    model.validate()?;
    if !(gap.temperature > 0.0) {
        return Err(Error::Domain {
            parameter: "temperature",
            requirement: "strictly positive (use free_energy_t0 for T = 0)",
            value: gap.temperature,
        });
    }
    let resolved = screening.resolve(Some(gap.temperature))?;
    let d = gap.separation;
    let kt = BOLTZMANN * gap.temperature;

    let mut te_terms = Vec::new();
    let mut tm_terms = Vec::new();
    let mut total = 0.0;
    let mut below_count = 0;
    let mut converged = false;
    let mut prev_term = 0.0_f64;
    let mut last_term = 0.0_f64;

    let mut n = 0usize;
    while n <= gap.n_max {
        let weight = if n == 0 { 0.5 } else { 1.0 };
        let xi = matsubara_frequency(n, gap.temperature)?;
        let (f_te, f_tm) = mode_pair(xi, d, model, &resolved, &gap.quad)?;
        let te = weight * kt * f_te;
        let tm = weight * kt * f_tm;
        te_terms.push(te);
        tm_terms.push(tm);
        let term = te + tm;
        total += term;

        if n >= 1 {
            if term.abs() <= gap.sum_rel_tol * total.abs() {
                below_count += 1;
            } else {
                below_count = 0;
            }
            prev_term = last_term;
            last_term = term;
            if below_count >= 2 {
                converged = true;
                break;
            }
        } else {
            last_term = term;
        }
        n += 1;
    }

    let truncation_estimate = geometric_tail(prev_term, last_term);
    let n_used = te_terms.len();

    let mut breakdown = FreeEnergyBreakdown {
        total,
        n_zero_te: te_terms[0],
        n_zero_tm: tm_terms[0],
        te_terms,
        tm_terms,
        n_used,
        truncation_estimate,
        validity_warnings: Vec::new(),
    };

    if !converged {
        return Err(Error::SumNonConvergence {
            n_max: gap.n_max,
            tail_estimate: truncation_estimate,
            partial: Some(Box::new(breakdown)),
        });
    }

    if let (Some(kinetics), Some(lambda)) = (gap.kinetics, resolved.lambda) {
        let bound = validity_max_frequency(kinetics, lambda)?;
        let max_xi = matsubara_frequency(n_used - 1, gap.temperature)?;
        if max_xi > bound {
            breakdown.validity_warnings.push(format!(
                "highest Matsubara frequency {max_xi:.3e} rad/s exceeds the \
                 screening validity bound v_c/lambda = {bound:.3e} rad/s"
            ));
        }
    }

    Ok(breakdown)
}

/// Geometric bound on the truncated tail from the last two terms.
fn geometric_tail(prev_term: f64, last_term: f64) -> f64 {
    if last_term == 0.0 || prev_term == 0.0 {
        return 0.0;
    }
    let ratio = (last_term / prev_term).abs();
    if ratio < 1.0 {
        last_term * ratio / (1.0 - ratio)
    } else {
        // decay not yet geometric; quote the last term itself
        last_term
    }
}

/// Frequencies above ~30·c/d contribute below e^{−60} of scale to the
/// ω-integrals; integrate over [0, cap].
fn omega_cap(d: f64) -> f64 {
    30.0 * LIGHT_SPEED / d
}

/// Zero-temperature free energy per unit area,
/// 𝓔₀ = (ħ/2π)·∫₀^∞ [f_TE(ω) + f_TM(ω)] dω.
pub fn free_energy_t0(
    d: f64,
    model: &DielectricModel,
    screening: &ScreeningSpec,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::not_positive("d", d));
    }
    model.validate()?;
    let resolved = screening.resolve(None)?;
    let inner = quad_spec.tightened(0.1);
    let integrand = |omega: f64| -> Result<f64> {
        let (te, tm) = mode_pair(omega, d, model, &resolved, &inner)?;
        Ok(te + tm)
    };
    let integral = quad::integrate(integrand, 0.0, omega_cap(d), quad_spec)?;
    Ok(REDUCED_PLANCK / (2.0 * std::f64::consts::PI) * integral.value)
}

/// Finite-temperature Casimir pressure (N/m², negative = attractive),
/// P = −∂𝓔/∂d evaluated with the analytic integrand derivative under the
/// same Matsubara truncation contract as [`free_energy`].
pub fn pressure(
    gap: &GapConfig,
    model: &DielectricModel,
    screening: &ScreeningSpec,
) -> Result<f64> {
    gap.validate()?;
    model.validate()?;
    if !(gap.temperature > 0.0) {
        return Err(Error::Domain {
            parameter: "temperature",
            requirement: "strictly positive (use pressure_t0 for T = 0)",
            value: gap.temperature,
        });
    }
    let resolved = screening.resolve(Some(gap.temperature))?;
    let d = gap.separation;
    let kt = BOLTZMANN * gap.temperature;

    let mut total = 0.0;
    let mut below_count = 0;
    let mut prev_term = 0.0_f64;
    let mut last_term = 0.0_f64;
    for n in 0..=gap.n_max {
        let weight = if n == 0 { 0.5 } else { 1.0 };
        let xi = matsubara_frequency(n, gap.temperature)?;
        let g_te = pressure_mode_integral(xi, d, model, &resolved, Polarization::Te, &gap.quad)?;
        let g_tm = pressure_mode_integral(xi, d, model, &resolved, Polarization::Tm, &gap.quad)?;
        let term = weight * kt * (g_te + g_tm);
        total += term;
        if n >= 1 {
            if term.abs() <= gap.sum_rel_tol * total.abs() {
                below_count += 1;
            } else {
                below_count = 0;
            }
            prev_term = last_term;
            last_term = term;
            if below_count >= 2 {
                return Ok(-total);
            }
        } else {
            last_term = term;
        }
    }
    Err(Error::SumNonConvergence {
        n_max: gap.n_max,
        tail_estimate: geometric_tail(prev_term, last_term),
        partial: None,
    })
}

/// Zero-temperature pressure, P = −(ħ/2π)·∫₀^∞ [g_TE(ω) + g_TM(ω)] dω.
pub fn pressure_t0(
    d: f64,
    model: &DielectricModel,
    screening: &ScreeningSpec,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::not_positive("d", d));
    }
    model.validate()?;
    let resolved = screening.resolve(None)?;
    let inner = quad_spec.tightened(0.1);
    let integrand = |omega: f64| -> Result<f64> {
        let te = pressure_mode_integral(omega, d, model, &resolved, Polarization::Te, &inner)?;
        let tm = pressure_mode_integral(omega, d, model, &resolved, Polarization::Tm, &inner)?;
        Ok(te + tm)
    };
    let integral = quad::integrate(integrand, 0.0, omega_cap(d), quad_spec)?;
    Ok(-REDUCED_PLANCK / (2.0 * std::f64::consts::PI) * integral.value)
}

/// Entropy per unit area S = −∂F/∂T by central finite difference over ±dT.
///
/// The thermodynamic sign is used here; the Third-Law diagnostic |S| → 0 is
/// insensitive to it.
pub fn entropy(
    gap: &GapConfig,
    model: &DielectricModel,
    screening: &ScreeningSpec,
    dt: f64,
) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::not_positive("dT", dt));
    }
    if !(gap.temperature > dt) {
        return Err(Error::Domain {
            parameter: "temperature",
            requirement: "greater than dT",
            value: gap.temperature,
        });
    }
    let hi = free_energy(&gap.at_temperature(gap.temperature + dt), model, screening)?;
    let lo = free_energy(&gap.at_temperature(gap.temperature - dt), model, screening)?;
    Ok(-(hi.total - lo.total) / (2.0 * dt))
}

/// Entropy of the isolated n = 0 term alone, the quantity whose apparent
/// Third-Law violation the full sum resolves. Computed by the same central
/// difference, restricted to the n = 0 TE + TM contribution.
pub fn entropy_n_zero(
    gap: &GapConfig,
    model: &DielectricModel,
    screening: &ScreeningSpec,
    dt: f64,
) -> Result<f64> {
    if !(dt > 0.0) {
        return Err(Error::not_positive("dT", dt));
    }
    if !(gap.temperature > dt) {
        return Err(Error::Domain {
            parameter: "temperature",
            requirement: "greater than dT",
            value: gap.temperature,
        });
    }
    let hi = free_energy(&gap.at_temperature(gap.temperature + dt), model, screening)?;
    let lo = free_energy(&gap.at_temperature(gap.temperature - dt), model, screening)?;
    let hi0 = hi.n_zero_te + hi.n_zero_tm;
    let lo0 = lo.n_zero_te + lo.n_zero_tm;
    Ok(-(hi0 - lo0) / (2.0 * dt))
}

/// Relative deviation of the Matsubara sum from its T = 0 integral limit at
/// each listed temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct GapDeviations {
    /// The T = 0 reference value (J/m²).
    pub reference_t0: f64,
    /// (T, |𝓔(T) − 𝓔₀|/|𝓔₀|) rows in input order.
    pub rows: Vec<(f64, f64)>,
    /// True when the reference vanishes (vacuum-like configuration); rows
    /// are then empty rather than 0/0.
    pub degenerate: bool,
}

/// Deviation of the finite-temperature sum from the T = 0 integral across a
/// temperature list. `base` supplies the separation and numerical budgets;
/// its own temperature field is ignored.
pub fn sum_vs_integral_gap(
    base: &GapConfig,
    model: &DielectricModel,
    screening: &ScreeningSpec,
    temperatures: &[f64],
) -> Result<GapDeviations> {
    for &t in temperatures {
        if !(t > 0.0) {
            return Err(Error::not_positive("temperature", t));
        }
    }
    let reference = free_energy_t0(base.separation, model, screening, &base.quad)?;
    if reference == 0.0 {
        return Ok(GapDeviations {
            reference_t0: reference,
            rows: Vec::new(),
            degenerate: true,
        });
    }
    let mut rows = Vec::with_capacity(temperatures.len());
    for &t in temperatures {
        let breakdown = free_energy(&base.at_temperature(t), model, screening)?;
        rows.push((t, (breakdown.total - reference).abs() / reference.abs()));
    }
    Ok(GapDeviations {
        reference_t0: reference,
        rows,
        degenerate: false,
    })
}
