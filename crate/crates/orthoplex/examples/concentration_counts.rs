//! Where the mass of a large-dimensional ball actually sits: deficit
//! counts, coordinate-value statistics, support shells, and the exact
//! second moment.
//!
//! Run with `cargo run --example concentration_counts`.

use orthoplex::concentration::{
    deficit_count, few_ones_count, large_coordinate_count, second_moment, shell_ratio,
    smallest_deficit_a,
};
use orthoplex::Result;

fn main() -> Result<()> {
    println!("Deficit counts: how much l1 mass can avoid coordinates <= k?");
    let (d, n, k) = (64, 8, 2);
    for a in [0, 1, 2, 4] {
        let report = deficit_count(d, n, k, a, false)?;
        println!(
            "  a = {a}: fraction with small-coordinate mass <= n - a is {:.6}",
            report.fraction()
        );
    }
    let target = 1.0 / d as f64;
    if let Some(a) = smallest_deficit_a(d, n, k, false, target)? {
        println!("  smallest a with fraction <= 1/d: {a}");
    }

    println!("\nSphere points with at most n/2 coordinates equal to +-1 are rare:");
    for n in [4, 8, 12, 16] {
        let d = 100 * n;
        let report = few_ones_count(d, n)?;
        println!(
            "  d = {d:>5}, n = {n:>3}: fraction {:.3e} (2^(-n/2) = {:.3e})",
            report.fraction(),
            (2.0f64).powf(-(n as f64) / 2.0)
        );
    }

    println!("\nBall points with a coordinate of absolute value >= 6k:");
    for d in [16, 64, 256] {
        let report = large_coordinate_count(d, d, 1.0)?;
        println!(
            "  d = n = {d:>4}: fraction {:.3e} (1/d = {:.3e})",
            report.fraction(),
            1.0 / d as f64
        );
    }

    println!("\nAdjacent support shells compare by an exact rational ratio:");
    let (d, n, c) = (25, 200, 2.0);
    for l in 1..=4 {
        let ratio = shell_ratio(d, n, c, l)?;
        println!("  l = {l}: shell ratio {ratio}");
    }

    println!("\nExact second moment of one coordinate over the ball:");
    println!("{:>6} {:>6} {:>22} {:>16}", "d", "n", "moment", "vs (n/d)^2");
    for d in [2, 5, 10, 20] {
        let n = 4 * d;
        let report = second_moment(d, n)?;
        println!(
            "{:>6} {:>6} {:>22} {:>16.6}",
            d,
            n,
            format!("{}", report.moment),
            report.ratio_to_alpha_sq
        );
    }
    println!("\nThe ratio to (n/d)^2 settles near 2 as d grows, matching the");
    println!("continuous cross-polytope limit 2d^2/((d+1)(d+2)) -> 2.");
    Ok(())
}
