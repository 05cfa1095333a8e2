//! Electrostatic calibration between screened semiconductor plates: surface
//! potential, stored energy versus the ideal capacitor, the separation
//! correction factor, and the sphere-plate force from the proximity force
//! approximation.
//!
//! Run with: cargo run --example electrostatic_calibration

use casimir::electrostatics::{
    field_energy_per_area, ideal_field_energy_per_area, pfa_sphere_plate_force,
    separation_correction_factor, surface_potential, CalibrationScenario, ScreenedPotentialProfile,
};

fn main() {
    // germanium plates: eps_s = 16, lambda = 0.8 um, so y = 20 at d = 1 um
    let scenario = CalibrationScenario::new(0.1, 1e-6, 16.0, 0.8e-6, 300.0).unwrap();
    let y = scenario.y();

    println!(
        "plates at ±V/2 with V = {} V, d = 1 um, eps_s = 16, lambda = 0.8 um",
        0.1
    );
    println!("dimensionless length y = eps_s d / lambda = {y}\n");

    let vs = surface_potential(&scenario).unwrap();
    println!(
        "surface potential V_s            = {vs:.6e} V (V/2 = {:.6e} V)",
        0.05
    );

    let profile = ScreenedPotentialProfile::new(&scenario).unwrap();
    println!(
        "potential: plate body {:.4e} V at x = -3 lambda, gap midpoint {:+.1e} V",
        profile.plate(-3.0 * scenario.lambda),
        profile.gap(scenario.separation / 2.0)
    );
    println!(
        "displacement continuity residual = {:.2e}\n",
        profile.displacement_continuity_residual()
    );

    let energy = field_energy_per_area(&scenario).unwrap();
    let ideal = ideal_field_energy_per_area(&scenario).unwrap();
    println!("stored field energy per area     = {energy:.6e} J/m^2");
    println!("ideal capacitor energy per area  = {ideal:.6e} J/m^2");
    println!(
        "ratio = {:.6} = separation correction factor (y + y^2)/(y + 2)^2 = {:.6}",
        energy / ideal,
        separation_correction_factor(y).unwrap()
    );
    println!(
        "a 1/d force fit therefore misreads the separation unless multiplied by \
         this factor\n"
    );

    let radius = 1e-2;
    let f = pfa_sphere_plate_force(&scenario, radius).unwrap();
    println!(
        "PFA sphere-plate force, R = 1 cm  = {:.6e} N (attractive){}",
        f.force,
        if f.radius_warning {
            "  [R < 100 d warning]"
        } else {
            ""
        }
    );

    println!("\ncorrection factor across separations (eps_s = 16, lambda = 0.8 um):");
    println!("{:>10} {:>8} {:>10}", "d [um]", "y", "factor");
    for d_um in [0.25, 0.5, 1.0, 2.0, 5.0, 20.0] {
        let y = 16.0 * d_um / 0.8;
        println!(
            "{d_um:>10.2} {y:>8.1} {:>10.5}",
            separation_correction_factor(y).unwrap()
        );
    }
}
