//! Finite-temperature Casimir free energy and pressure between parallel
//! half-spaces via Matsubara summation, with an optional Debye-screening
//! floor on the material wavevector, plus the screened electrostatic
//! calibration formulas for semiconductor plates.
//!
//! The library is organized by what each layer computes:
//!
//! - [`constants`]: CODATA constant set, SI throughout.
//! - [`materials`]: dielectric models ε(iξ), the Debye–Hückel length, and
//!   the v_c/λ validity bound.
//! - [`lifshitz`]: per-frequency reflection functions, the screening
//!   modification of γ₁, mode functions, and the q-integrals.
//! - [`thermal`]: the primed Matsubara sum with truncation bounds, the
//!   T = 0 integral limit, pressure, entropy, and sum-versus-integral
//!   diagnostics.
//! - [`electrostatics`]: screened plate potentials, calibration energy and
//!   PFA force, and the field-strength-dependent effective screening length.
//! - [`cli`]: the `casimir` command-line front end (CSV/JSON emission).
//!
//! Sign conventions: free energies and pressures are negative for
//! attraction; entropy is S = −∂F/∂T; the calibration force is reported as
//! a positive attraction magnitude.
//!
//! The runnable examples under `examples/` walk through each capability;
//! start with `free_energy_breakdown` and `factor_of_two`.

// validations use `!(x > 0.0)` so NaN is rejected along with the sign;
// quadrature node constants keep their published digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod constants;
pub mod electrostatics;
pub mod error;
pub mod lifshitz;
pub mod materials;
pub mod quad;
pub mod thermal;

pub use error::{Error, Result};
pub use lifshitz::{Polarization, ResolvedScreening, ScreeningMode, ScreeningSpec};
pub use materials::{CarrierKinetics, DielectricModel, Permittivity};
pub use quad::QuadratureSpec;
pub use thermal::{FreeEnergyBreakdown, GapConfig};
