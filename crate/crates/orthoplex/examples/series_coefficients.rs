//! Extraction of the correction series that refines the leading
//! saddle-point estimate.
//!
//! The series is a power series in alpha^2 = (n/d)^2 whose coefficients are
//! rational numbers; the crate recovers them numerically by sampling an
//! auxiliary analytic function on a circle and differentiating spectrally.
//!
//! Run with `cargo run --example series_coefficients`.

use orthoplex::asymptotics::{b_coefficients, b_series};
use orthoplex::Result;

fn main() -> Result<()> {
    let coefficients = b_coefficients(8)?;
    println!("Correction-series coefficients b_k (series variable alpha^2):");
    for (k, value) in coefficients.iter().enumerate() {
        println!("  b_{k} = {value:>22.15e}");
    }
    println!("\nThe first three are exactly 1, 1/12 = {:.15}, and", 1.0 / 12.0);
    println!("-3/160 = {:.15}; the extraction reproduces them to", -3.0 / 160.0);
    println!("within 1e-8 and keeps going where hand computation stops.");

    println!("\nPartial sums of the series at a few aspect ratios:");
    println!("{:>8} {:>18} {:>18} {:>18}", "alpha", "order 2", "order 4", "order 8");
    for alpha in [0.1, 0.5, 1.0, 2.0] {
        println!(
            "{:>8.2} {:>18.12} {:>18.12} {:>18.12}",
            alpha,
            b_series(alpha, 2)?,
            b_series(alpha, 4)?,
            b_series(alpha, 8)?
        );
    }
    println!("\nAt small alpha the orders agree to many digits; at alpha = 2 the");
    println!("series is asymptotic rather than convergent and the tail grows.");
    Ok(())
}
