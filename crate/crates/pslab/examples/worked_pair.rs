//! The fully worked 2x2 pair: a pure state along the first axis mixed with
//! a pure state along the diagonal axis at equal weight.
//!
//! Every number printed here has a closed form, which makes this the
//! quickest end-to-end sanity check of the channel, the spectral
//! majorization statement, and the entropy inequality.
//!
//! Run with: cargo run --example worked_pair

use num_complex::Complex64;

use pslab::channel::{convolve_explicit, equality_witness, MixingParameter};
use pslab::entropy::von_neumann_entropy;
use pslab::epi::{check_epi, check_theorem1};
use pslab::hermitian::DensityMatrix;
use pslab::matrix::ComplexMatrix;

fn main() -> pslab::Result<()> {
    let rho = DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0]))?;
    let half = Complex64::new(0.5, 0.0);
    let sigma =
        DensityMatrix::new(ComplexMatrix::from_rows(&[vec![half, half], vec![half, half]])?)?;
    let t = MixingParameter::new(0.5)?;

    let out = convolve_explicit(&rho, &sigma, t)?;
    println!("output matrix (expect [[3/4, (1+i)/4], [(1-i)/4, 1/4]]):");
    for i in 0..2 {
        let row: Vec<String> = (0..2)
            .map(|j| {
                let z = out.matrix()[(i, j)];
                format!("{:+.6}{:+.6}i", z.re, z.im)
            })
            .collect();
        println!("  [{}]", row.join(", "));
    }

    let spectrum = out.spectrum();
    println!("\noutput spectrum (expect 1/2 +- sqrt(3)/4):");
    println!("  {:.15}", spectrum.values()[0]);
    println!("  {:.15}", spectrum.values()[1]);

    let verdict = check_theorem1(&rho, &sigma, t)?;
    println!("\nmajorization: holds = {}, equality = {}", verdict.holds, verdict.is_equality);
    println!("prefix gaps: {:?}", verdict.prefix_gaps);

    let epi = check_epi(&rho, &sigma, t)?;
    println!("\nboth inputs are pure, so the entropy gap is the output entropy:");
    println!("  S(out) = {:.15}", von_neumann_entropy(&out)?);
    println!("  gap    = {:.15} (expect 0.245775366668471)", epi.gap);

    let witness = equality_witness(rho.hermitian(), sigma.hermitian(), t)?;
    println!("\nshared top eigenvector (absent because the inputs differ): {:?}", witness.is_none());
    Ok(())
}
