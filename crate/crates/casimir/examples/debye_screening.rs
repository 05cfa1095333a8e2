//! Debye–Hückel screening lengths and dielectric response on the imaginary
//! frequency axis for a few representative materials.
//!
//! Run with: cargo run --example debye_screening

use casimir::materials::{
    debye_length, eps_imag_axis, validity_max_frequency, CarrierKinetics, DielectricModel,
    Permittivity,
};

fn main() {
    println!("Debye-Hückel screening lengths, lambda = sqrt(eps_s eps0 kB T / (e^2 c_t))\n");

    let cases = [
        ("intrinsic Ge (300 K)", 16.0, 300.0, 4.7e19),
        ("intrinsic Ge (77 K)", 16.0, 77.0, 4.7e19),
        ("doped Ge, 1e20 m^-3", 16.0, 300.0, 1e20),
        ("good metal, 8.5e28 m^-3", 1.0, 300.0, 8.5e28),
    ];
    println!(
        "{:<28} {:>8} {:>8} {:>12} {:>14}",
        "material", "eps_s", "T [K]", "c_t [1/m^3]", "lambda"
    );
    for (name, eps, t, ct) in cases {
        let lambda = debye_length(eps, t, ct).unwrap();
        println!(
            "{name:<28} {eps:>8.1} {t:>8.1} {ct:>12.2e} {:>11.3} nm",
            lambda * 1e9
        );
    }

    println!("\nPermittivity on the imaginary axis, eps(i xi):\n");
    let models = [
        (
            "gold-like Drude, sigma = 4.5e7 S/m",
            DielectricModel::drude(4.5e7).unwrap(),
        ),
        (
            "intrinsic Ge",
            DielectricModel::intrinsic_semiconductor(16.0, 4.7e19).unwrap(),
        ),
        (
            "static dielectric, eps = 16",
            DielectricModel::static_dielectric(16.0).unwrap(),
        ),
    ];
    print!("{:<38}", "xi [rad/s]:");
    let frequencies = [1e10, 1e12, 1e14, 1e16];
    for xi in frequencies {
        print!(" {xi:>11.0e}");
    }
    println!();
    for (name, model) in &models {
        print!("{name:<38}");
        for xi in frequencies {
            match eps_imag_axis(model, xi).unwrap() {
                Permittivity::Finite(eps) => print!(" {eps:>11.4e}"),
                Permittivity::Infinite => print!(" {:>11}", "inf"),
            }
        }
        println!();
    }

    // Treating lambda as frequency-independent is defensible only below
    // v_c/lambda; germanium's carriers put that near 10 GHz.
    let kinetics = CarrierKinetics::new(1e5).unwrap();
    let lambda_ge = debye_length(16.0, 300.0, 4.7e19).unwrap();
    let bound = validity_max_frequency(kinetics, lambda_ge).unwrap();
    println!(
        "\nvalidity bound for Ge: v_c/lambda = {bound:.3e} rad/s \
         ({:.1} GHz) with v_c = 1e5 m/s",
        bound / (2.0 * std::f64::consts::PI * 1e9)
    );
}
