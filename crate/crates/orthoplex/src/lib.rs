//! Exact counts, asymptotic estimates, and discrete averaging operators for
//! the integer points of cross-polytopes (l1 balls in Z^d).
//!
//! The crate has three layers:
//!
//! * integer-exact combinatorics: [`counts`] and [`ehrhart`];
//! * analysis of the same numbers: [`asymptotics`] (saddle-point and regime
//!   estimates) and [`contour`] (generating-function quadrature);
//! * operators on the lattice: [`grid`] (averages and maximal functions),
//!   [`multiplier`] (Fourier symbols), and [`concentration`]
//!   (where the mass of a ball actually sits).
//!
//! [`verify`] aggregates each module's invariant checks into a runnable
//! suite, and [`cli`] exposes everything as a batch front end; the `orthoplex`
//! binary is a thin wrapper around it.
//!
//! Start with the runnable examples, one per capability:
//!
//! ```text
//! cargo run --example exact_counts          # count tables and shells
//! cargo run --example estimates_vs_exact    # estimate accuracy sweeps
//! cargo run --example series_coefficients   # correction-series extraction
//! cargo run --example contour_quadrature    # counts from contour integrals
//! cargo run --example averaging_operators   # grid averages, maximal ops
//! cargo run --example multiplier_symbols    # Fourier symbol bounds
//! cargo run --example concentration_counts  # deficit / support statistics
//! cargo run --example clt_tail              # Monte Carlo tail comparison
//! ```

pub mod asymptotics;
pub mod bands;
pub mod cli;
pub mod concentration;
pub mod contour;
pub mod counts;
pub mod ehrhart;
pub mod error;
pub mod grid;
pub mod multiplier;
pub mod verify;

pub use counts::{BigCount, LatticePoint};
pub use error::{Error, Guards, Result};
