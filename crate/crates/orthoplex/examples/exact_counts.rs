//! Exact lattice-point counts: the Delannoy table, its symmetry, support
//! shells, box truncations, and the counting polynomial.
//!
//! Run with `cargo run --example exact_counts`.

use orthoplex::counts::{
    bounded_ball_count, delannoy, delannoy_table, sphere_count, support_shell_count,
};
use orthoplex::ehrhart::ehrhart_polynomial;
use orthoplex::Result;

fn main() -> Result<()> {
    println!("Ball counts |B_n in Z^d| for small d, n:");
    let table = delannoy_table(8, 8);
    print!("{:>6}", "d\\n");
    for n in 0..=8 {
        print!("{n:>10}");
    }
    println!();
    for (d, row) in table.iter().enumerate() {
        print!("{d:>6}");
        for value in row {
            print!("{value:>10}");
        }
        println!();
    }

    println!("\nThe table is symmetric: |B_n in Z^d| = |B_d in Z^n|.");
    println!(
        "  d=3, n=7: {}    d=7, n=3: {}",
        delannoy(3, 7),
        delannoy(7, 3)
    );

    println!("\nSphere counts (points with |x|_1 exactly n) telescope the ball:");
    let d = 5;
    let mut accumulated = orthoplex::BigCount::from(0u32);
    for n in 0..=4 {
        accumulated += sphere_count(d, n);
        println!(
            "  sum of spheres 0..={n} = {accumulated}, ball = {}",
            delannoy(d, n)
        );
    }

    println!("\nSupport shells split the ball by the number of nonzero coordinates:");
    let (d, n) = (6, 4);
    let mut total = orthoplex::BigCount::from(0u32);
    for s in 0..=d.min(n) {
        let shell = support_shell_count(d, s, n);
        println!("  s = {s}: {shell}");
        total += shell;
    }
    println!("  total = {total}, ball = {}", delannoy(d, n));

    println!("\nBox truncation |x_i| <= m saturates once m >= n:");
    for m in 0..=4 {
        println!("  m = {m}: {}", bounded_ball_count(6, 4, m)?);
    }

    let poly = ehrhart_polynomial(4)?;
    println!("\nCounting polynomial for d = 4 (coefficients by degree):");
    for (degree, coefficient) in poly.coefficients().iter().enumerate() {
        println!("  n^{degree}: {coefficient}");
    }
    println!(
        "  evaluated at n = 10: {} (direct count {})",
        poly.eval_count(10),
        delannoy(4, 10)
    );
    Ok(())
}
