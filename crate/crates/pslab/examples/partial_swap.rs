//! The partial-swap channel from first principles: build the interpolated
//! swap unitary, push a product state through it, trace out the second
//! factor, and confirm the explicit three-term formula gives the same state.
//!
//! Run with: cargo run --example partial_swap

use num_complex::Complex64;

use pslab::channel::{
    convolve_explicit, convolve_via_trace, partial_swap_unitary, MixingParameter,
};
use pslab::matrix::ComplexMatrix;
use pslab::sample::{derived_seed, random_density};

fn main() -> pslab::Result<()> {
    let d = 3;
    let base = 42;
    let rho = random_density(derived_seed(base, d, 0, 0), d)?;
    let sigma = random_density(derived_seed(base, d, 0, 1), d)?;

    println!("unitarity of the interpolated swap (max |U*U - 1| entry):");
    for &t in &[0.1, 0.3, 0.5, 0.7, 0.9] {
        let u = partial_swap_unitary(MixingParameter::new(t)?, d);
        let defect = u.adjoint().mul(&u)?.max_abs_diff(&ComplexMatrix::identity(d * d))?;
        println!("  t = {t:.1}: {defect:.3e}");
    }

    println!("\nagreement of the traced-out form with the explicit formula:");
    for &t in &[0.25, 0.5, 0.75] {
        let t = MixingParameter::new(t)?;
        let via_trace = convolve_via_trace(&rho, &sigma, t)?;
        let explicit = convolve_explicit(&rho, &sigma, t)?;
        let gap = via_trace.matrix().max_abs_diff(explicit.matrix())?;
        println!("  t = {:.2}: max entry gap {:.3e}", t.t(), gap);
    }

    let one = MixingParameter::new(1.0)?;
    let zero = MixingParameter::new(0.0)?;
    println!("\nendpoints return the inputs unchanged:");
    println!(
        "  t = 1 gives rho   (gap {:.3e})",
        convolve_explicit(&rho, &sigma, one)?.matrix().max_abs_diff(rho.matrix())?
    );
    println!(
        "  t = 0 gives sigma (gap {:.3e})",
        convolve_explicit(&rho, &sigma, zero)?.matrix().max_abs_diff(sigma.matrix())?
    );

    let half = MixingParameter::new(0.5)?;
    let forward = convolve_explicit(&rho, &sigma, half)?;
    let swapped = convolve_explicit(&sigma, &rho, half)?;
    let asym = forward.matrix().sub(swapped.matrix())?;
    let comm = ComplexMatrix::commutator(rho.matrix(), sigma.matrix())?
        .scale(Complex64::new(0.0, 1.0));
    println!(
        "\nswapping the arguments flips the commutator term: residual {:.3e}",
        asym.max_abs_diff(&comm)?
    );
    Ok(())
}
