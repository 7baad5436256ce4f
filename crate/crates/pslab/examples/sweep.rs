//! A randomized verification sweep driven entirely from library code,
//! mirroring what the command-line binary does: sample pairs at several
//! dimensions, run every check at every mixing weight, and summarize.
//!
//! Run with: cargo run --example sweep

use pslab::report::{cmd_sweep, render_report, CheckKind, SweepConfig};

fn main() -> pslab::Result<()> {
    let config = SweepConfig {
        seed: 7,
        dims: vec![2, 3, 4],
        t_grid: vec![0.1, 0.5, 0.9],
        trials: 5,
        checks: CheckKind::ALL.to_vec(),
        equal_pair: false,
    };

    let report = cmd_sweep(&config)?;

    println!("check tallies:");
    for (name, counts) in &report.counts {
        println!("  {name:<10} pass {:>4}  fail {:>4}", counts.pass, counts.fail);
    }
    println!("\nworst observed margins:");
    if let Some(gap) = report.worst.min_prefix_gap {
        println!("  smallest majorization prefix gap: {gap:.3e}");
    }
    if let Some(gap) = report.worst.min_entropy_gap {
        println!("  smallest entropy gap:             {gap:.3e}");
    }
    if let Some(residual) = report.worst.max_identity_residual {
        println!("  largest decomposition residual:   {residual:.3e}");
    }

    if report.total_failures() == 0 {
        println!("\nall {} checks passed", report.counts.values().map(|c| c.pass).sum::<u64>());
    } else {
        println!("\nfailures recorded: {}", report.total_failures());
        for case in &report.failures {
            println!("  {} at t = {}, dim = {}: {}", case.check, case.t, case.dim, case.detail);
        }
    }

    let rendered = render_report(&report)?;
    println!("\nfull report is plain JSON ({} bytes)", rendered.len());
    Ok(())
}
