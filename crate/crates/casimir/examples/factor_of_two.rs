//! Pressure ratio between an unscreened Drude metal and a perfect conductor
//! as a function of separation at room temperature. At large separations the
//! lost n = 0 TE mode halves the force.
//!
//! Run with: cargo run --example factor_of_two

use casimir::lifshitz::ScreeningSpec;
use casimir::materials::DielectricModel;
use casimir::thermal::{pressure, GapConfig};

fn main() {
    let drude = DielectricModel::drude(4.5e7).unwrap();
    let pc = DielectricModel::PerfectConductor;
    let off = ScreeningSpec::off();

    println!("Drude (sigma = 4.5e7 S/m, unscreened) vs perfect conductor, T = 300 K\n");
    println!(
        "{:>10} {:>16} {:>16} {:>9}",
        "d [um]", "P_drude [Pa]", "P_perfect [Pa]", "ratio"
    );
    for i in 0..10 {
        let d = 1e-6 * 10f64.powf(1.7 * i as f64 / 9.0); // 1..50 um
        let gap = GapConfig::new(d, 300.0).unwrap();
        let p_drude = pressure(&gap, &drude, &off).unwrap();
        let p_pc = pressure(&gap, &pc, &off).unwrap();
        println!(
            "{:>10.3} {:>16.6e} {:>16.6e} {:>9.5}",
            d * 1e6,
            p_drude,
            p_pc,
            p_drude / p_pc
        );
    }
    println!(
        "\nThe ratio approaches 1/2 once the n = 0 terms dominate (d of a few microns and up)."
    );
}
