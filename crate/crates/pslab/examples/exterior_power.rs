//! Exterior-power lifts: sums of the k largest eigenvalues become single
//! top eigenvalues one grade up, commutators lift to commutators, and the
//! star combination of lifts tracks the lift of the star combination.
//!
//! Run with: cargo run --example exterior_power

use pslab::channel::MixingParameter;
use pslab::exterior::{
    commutator_lift_check, ky_fan_via_lift, lift_operator, top_eigen_sum_check, ExteriorBasis,
};
use pslab::hermitian::HermitianOperator;
use pslab::matrix::ComplexMatrix;
use pslab::sample::{derived_seed, random_contraction, random_density};

fn main() -> pslab::Result<()> {
    let simple = HermitianOperator::new(ComplexMatrix::diag(&[3.0, 2.0, 1.0]))?;
    let basis = ExteriorBasis::new(3, 2)?;
    println!("grade-2 basis of a 3-dimensional space: {:?}", basis.indices());
    let lifted = basis.lift(simple.matrix())?;
    println!("lift of diag(3, 2, 1) at grade 2 (expect diag(5, 4, 3)):");
    for i in 0..3 {
        println!("  {:.1}", lifted[(i, i)].re);
    }

    let d = 5;
    let base = 77;
    let a = random_contraction(derived_seed(base, d, 0, 0), d)?;
    let b = random_contraction(derived_seed(base, d, 0, 1), d)?;

    println!("\ntop eigenvalue of the lift vs k-term eigenvalue sum:");
    for k in 1..=d {
        let residual = top_eigen_sum_check(&a, k)?;
        println!("  k = {k}: residual {residual:.3e}");
    }

    println!("\nlifted commutator vs commutator of lifts:");
    for k in 1..=d {
        let residual = commutator_lift_check(a.matrix(), b.matrix(), k)?;
        println!("  k = {k}: residual {residual:.3e}");
    }

    let rho = random_density(derived_seed(base, d, 1, 0), d)?;
    let sigma = random_density(derived_seed(base, d, 1, 1), d)?;
    let t = MixingParameter::new(0.5)?;
    println!("\npartial-sum bound for the channel output via the lift:");
    for k in 1..=d {
        let check = ky_fan_via_lift(&rho, &sigma, t, k)?;
        println!(
            "  k = {k}: sum of top {k} output eigenvalues {:.9} <= mixed bound {:.9} (lift residual {:.2e})",
            check.lhs, check.rhs, check.channel_lift_residual
        );
    }

    let full = lift_operator(a.matrix(), d)?;
    println!(
        "\ntop grade collapses to the trace: lift entry {:.12}, eigenvalue sum {:.12}",
        full[(0, 0)].re,
        a.spectrum()?.sum()
    );
    Ok(())
}
