//! Spectral majorization made tangible: the output spectrum of the channel
//! is always majorized by the weighted mix of the input spectra, and the
//! relation is certified by an explicit doubly stochastic matrix built from
//! at most n - 1 T-transforms.
//!
//! Run with: cargo run --example majorization_witness

use pslab::channel::{convolve_explicit, MixingParameter};
use pslab::hermitian::Spectrum;
use pslab::majorization::{hlp_witness, majorizes};
use pslab::sample::{derived_seed, random_density};

fn main() -> pslab::Result<()> {
    let d = 5;
    let base = 11;
    let rho = random_density(derived_seed(base, d, 0, 0), d)?;
    let sigma = random_density(derived_seed(base, d, 0, 1), d)?;
    let t = MixingParameter::new(0.6)?;

    let out = convolve_explicit(&rho, &sigma, t)?;
    let mix = Spectrum::mix(rho.spectrum(), sigma.spectrum(), t.t())?;

    println!("mixed input spectra: {:?}", mix.values());
    println!("output spectrum:     {:?}", out.spectrum().values());

    let verdict = majorizes(&mix, out.spectrum())?;
    println!("\nmajorization holds = {}", verdict.holds);
    println!("prefix gaps (each must be >= 0): {:?}", verdict.prefix_gaps);
    println!("smallest prefix gap: {:.6e}", verdict.min_prefix_gap());

    let witness = hlp_witness(out.spectrum(), &mix)?;
    println!("\ndoubly stochastic witness D with D * mix = output:");
    for row in &witness.matrix {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:.6}")).collect();
        println!("  [{}]", cells.join(", "));
    }

    let image = witness.apply(mix.values());
    let residual = image
        .iter()
        .zip(out.spectrum().values())
        .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs()));
    println!("\nreconstruction residual |D*mix - output|_max = {residual:.3e}");
    witness.validate()?;
    println!("row sums, column sums, and entry signs all check out");
    Ok(())
}
