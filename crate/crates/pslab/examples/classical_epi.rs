//! The classical side of the story: rotate two independent real random
//! variables into one, watch the differential entropy beat the weighted
//! average of the inputs, and confirm Gaussians are the extremal case.
//!
//! Run with: cargo run --example classical_epi

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use pslab::classical::{
    check_classical_epi, differential_entropy, gaussian_match, scaled_convolution, GridDensity,
    MixingAngle,
};

fn main() -> pslab::Result<()> {
    let dx = 0.01;

    let standard = GridDensity::gaussian(0.0, 1.0, dx)?;
    let wide = GridDensity::gaussian(0.0, 4.0, dx)?;
    let theta = MixingAngle::new(FRAC_PI_4)?;

    println!("gaussian N(0,1) combined with N(0,4) at the balanced angle:");
    let check = check_classical_epi(&standard, &wide, theta)?;
    println!("  entropy gap = {:.6} (closed form 0.5*ln(5/4) = 0.111572)", check.gap);
    println!("  quadrature drift before renormalizing = {:.3e}", check.drift);

    let same = check_classical_epi(&standard, &standard, theta)?;
    println!("\nequal gaussian inputs are the equality case: gap = {:.3e}", same.gap);

    let box_a = GridDensity::uniform(0.0, 1.0, dx)?;
    let box_b = GridDensity::uniform(0.0, 1.0, dx)?;
    let boxes = check_classical_epi(&box_a, &box_b, theta)?;
    println!("\ntwo unit boxes leave a strictly positive gap: {:.6}", boxes.gap);

    let eighth = MixingAngle::new(FRAC_PI_8)?;
    let result = scaled_convolution(&standard, &wide, eighth)?;
    println!("\nmoment transport at an uneven angle (cos^2 = {:.4}):", eighth.cos().powi(2));
    let c2 = eighth.cos().powi(2);
    let s2 = eighth.sin().powi(2);
    println!("  mean     {:.6} (expect {:.6})", result.density.mean(), 0.0);
    println!(
        "  variance {:.6} (expect {:.6})",
        result.density.variance(),
        c2 * 1.0 + s2 * 4.0
    );

    let match_out = gaussian_match(&result.density)?;
    println!(
        "\ngaussian with the same variance has entropy {:.6} >= observed {:.6}",
        differential_entropy(&match_out),
        differential_entropy(&result.density)
    );
    Ok(())
}
