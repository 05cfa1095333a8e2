//! Adaptive Gauss–Kronrod quadrature on finite intervals.
//!
//! A 15-point Kronrod rule paired with its embedded 7-point Gauss rule
//! supplies a per-panel error estimate; the panel with the largest estimate
//! is bisected until the summed estimate meets the requested tolerance.
//! Panels are refined in a deterministic order so results are reproducible
//! bit for bit.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances and budget for one adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance floor; convergence requires
    /// `err <= max(abs_tol, rel_tol * |value|)`.
    pub abs_tol: f64,
    /// Maximum number of panel bisections before giving up.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            rel_tol: 1e-9,
            abs_tol: 1e-300,
            max_subdivisions: 400,
        }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        QuadratureSpec {
            rel_tol,
            ..Self::default()
        }
    }

    /// A copy with the relative tolerance scaled down, used for inner
    /// integrals so their noise stays below an outer integration's budget.
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec {
            rel_tol: (self.rel_tol * factor).max(1e-14),
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::not_positive("rel_tol", self.rel_tol));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::not_positive("abs_tol", self.abs_tol));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain {
                parameter: "max_subdivisions",
                requirement: "at least 1",
                value: self.max_subdivisions as f64,
            });
        }
        Ok(())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: f64,
    /// Conservative bound on the absolute error, summed over panels.
    pub error_estimate: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
}

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is
// symmetric) and the matching weights, with the embedded 7-point Gauss
// weights. Standard QUADPACK values.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One Kronrod-15 evaluation over [a, b]: returns the Kronrod value and
/// |K15 - G7| as the error estimate.
fn kronrod15<F>(f: &mut F, a: f64, b: f64) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx)?;
        let f2 = f(center + dx)?;
        let sum = f1 + f2;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss nodes
            gauss += WG[j / 2] * sum;
        }
    }

    Ok((kronrod * half, (kronrod - gauss).abs() * half.abs()))
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        // largest error first; ties broken by position for determinism
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Integrate `f` over the finite interval [a, b] to the requested tolerance.
///
/// The integrand may itself fail (e.g. when it wraps an inner integration);
/// the first failure aborts the integration.
pub fn integrate<F>(mut f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            subdivisions: 0,
        });
    }

    let (value, error) = kronrod15(&mut f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    // panels whose width has reached the f64 grid keep their value but stop
    // contributing refinable error
    let mut settled_value = 0.0;

    let mut subdivisions = 0;
    loop {
        // re-sum from the live panels every pass: running updates would
        // accumulate subtraction drift large enough to mask tolerances on
        // tiny integrals
        let mut total_value = settled_value;
        let mut total_error = 0.0;
        for p in heap.iter() {
            total_value += p.value;
            total_error += p.error;
        }
        let tolerance = spec.abs_tol.max(spec.rel_tol * total_value.abs());
        if total_error <= tolerance {
            return Ok(Integral {
                value: total_value,
                error_estimate: total_error,
                subdivisions,
            });
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(Error::QuadratureNonConvergence {
                max_subdivisions: spec.max_subdivisions,
                residual: total_error,
            });
        }

        let worst = heap.pop().expect("heap never empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            settled_value += worst.value;
            continue;
        }
        let (lv, le) = kronrod15(&mut f, worst.a, mid)?;
        let (rv, re) = kronrod15(&mut f, mid, worst.b)?;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: lv,
            error: le,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: rv,
            error: re,
        });
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x| Ok(x * x * x - 2.0 * x + 1.0), -1.0, 3.0, &spec()).unwrap();
        // antiderivative x^4/4 - x^2 + x evaluated at the bounds
        assert_relative_eq!(r.value, 16.0, max_relative = 1e-14);
    }

    #[test]
    fn exponential_tail() {
        let r = integrate(|x| Ok((-x).exp() * x), 0.0, 60.0, &spec()).unwrap();
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-12);
        assert!(r.error_estimate <= 1e-9);
    }

    #[test]
    fn log_endpoint_singularity() {
        // ∫₀¹ ln x dx = -1; integrable singularity at 0 handled by subdivision
        let r = integrate(|x| Ok(x.ln()), 0.0, 1.0, &spec()).unwrap();
        assert_relative_eq!(r.value, -1.0, max_relative = 1e-9);
    }

    #[test]
    fn zero_integrand_converges_immediately() {
        let r = integrate(|_| Ok(0.0), 0.0, 10.0, &spec()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate(|_| Ok(1.0), 2.0, 2.0, &spec()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn subdivision_budget_exhaustion_reports_residual() {
        let tight = QuadratureSpec {
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            max_subdivisions: 2,
        };
        // oscillatory integrand that cannot converge in two splits
        let err = integrate(|x| Ok((50.0 * x).sin() / (x + 1e-3)), 0.0, 10.0, &tight).unwrap_err();
        match err {
            Error::QuadratureNonConvergence { residual, .. } => assert!(residual > 0.0),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn integrand_errors_propagate() {
        let err = integrate(
            |x| {
                if x > 0.5 {
                    Err(Error::not_positive("probe", x))
                } else {
                    Ok(x)
                }
            },
            0.0,
            1.0,
            &spec(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Domain { .. }));
    }

    #[test]
    fn invalid_spec_rejected() {
        let bad = QuadratureSpec {
            rel_tol: 0.0,
            ..QuadratureSpec::default()
        };
        assert!(integrate(Ok, 0.0, 1.0, &bad).is_err());
    }

    #[test]
    fn determinism_bitwise() {
        let run = || {
            integrate(|x| Ok((x * x).sin() * (-x).exp()), 0.0, 20.0, &spec())
                .unwrap()
                .value
        };
        assert_eq!(run().to_bits(), run().to_bits());
    }
}
