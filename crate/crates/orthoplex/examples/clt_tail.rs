//! Monte Carlo check that a sum of independent uniform coordinates has
//! Gaussian-sized lower tails, at sample counts where the comparison is
//! meaningful.
//!
//! The estimate is seeded and sharded, so the same invocation always
//! reproduces the same numbers.
//!
//! Run with `cargo run --example clt_tail`.

use orthoplex::concentration::clt_tail_probability;
use orthoplex::Result;

fn main() -> Result<()> {
    println!("Tail of a centered sum of d* uniform coordinates below a");
    println!("threshold proportional to -sqrt(d*):");
    println!(
        "{:>6} {:>6} {:>10} {:>12} {:>12} {:>12}",
        "d*", "C", "samples", "estimate", "stderr", "gaussian"
    );
    for (d_star, c) in [(20u64, 0.5f64), (50, 0.5), (50, 1.0)] {
        let report = clt_tail_probability(d_star, c, 400_000, 11)?;
        println!(
            "{:>6} {:>6.2} {:>10} {:>12.6} {:>12.2e} {:>12.6}",
            d_star, c, 400_000, report.estimate, report.stderr, report.gaussian
        );
    }

    println!("\nDoubling the samples tightens the standard error and keeps the");
    println!("estimate inside it:");
    for samples in [100_000u64, 200_000, 400_000, 800_000] {
        let report = clt_tail_probability(50, 1.0, samples, 11)?;
        println!(
            "  {samples:>7} samples: estimate {:.6} +- {:.1e} (gaussian {:.6})",
            report.estimate, report.stderr, report.gaussian
        );
    }

    let a = clt_tail_probability(50, 1.0, 200_000, 99)?;
    let b = clt_tail_probability(50, 1.0, 200_000, 99)?;
    println!("\nSame seed, same answer: {} hits vs {} hits.", a.hits, b.hits);
    Ok(())
}
