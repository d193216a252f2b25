//! Cross-module invariant suites behind the `verify` subcommand.
//!
//! Each suite bundles the structural identities, oracle comparisons, and
//! recorded-band checks of one layer of the crate into named pass/fail
//! outcomes.  The grids scale with the caller's --max-d/--max-n bounds
//! (each check also has its own design cap); a check whose grid becomes
//! empty under tight bounds reports itself as skipped rather than failing.
//!
//! All checks are deterministic: randomized ones use fixed seeds, so two
//! runs of the same suite produce identical reports.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::asymptotics::{b_coefficients, b_series, exact_volume, saddle_params};
use crate::bands;
use crate::concentration::{
    clt_tail_probability, deficit_count, few_ones_count, shell_ratio, smallest_deficit_a,
};
use crate::contour::{contour_count, saddle_split, taylor_remainder_check, ContourSpec, Kernel};
use crate::counts::{
    approx_ln, bounded_ball_count, composition_class_count, delannoy, delannoy_table,
    enumerate_ball_with_guards, sphere_count, support_shell_count, BigCount,
};
use crate::ehrhart::ehrhart_polynomial;
use crate::error::{Guards, Result};
use crate::grid::{
    ball_average, maximal_function, norm_probe_curve, sphere_average, AverageKind, GridFunction,
    RadiusSet,
};
use crate::multiplier::{
    direct_symbol, multiplier_m, multiplier_s, FrequencyPoint, SymbolKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The available check suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Counts,
    Asymptotics,
    Contour,
    Operators,
    Concentration,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Counts => "counts",
            Suite::Asymptotics => "asymptotics",
            Suite::Contour => "contour",
            Suite::Operators => "operators",
            Suite::Concentration => "concentration",
            Suite::All => "all",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        match name {
            "counts" => Some(Suite::Counts),
            "asymptotics" => Some(Suite::Asymptotics),
            "contour" => Some(Suite::Contour),
            "operators" => Some(Suite::Operators),
            "concentration" => Some(Suite::Concentration),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: &'static str,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The outcomes of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failures(&self) -> usize {
        self.outcomes.iter().filter(|o| !o.passed).count()
    }
}

struct Runner<'a> {
    max_d: u64,
    max_n: u64,
    guards: &'a Guards,
    outcomes: Vec<CheckOutcome>,
}

impl<'a> Runner<'a> {
    fn check(
        &mut self,
        suite: &'static str,
        check: &'static str,
        body: impl FnOnce(&Self) -> Result<(bool, String)>,
    ) {
        let (passed, detail) = match body(self) {
            Ok(outcome) => outcome,
            Err(e) => (false, format!("error: {e}")),
        };
        self.outcomes.push(CheckOutcome {
            suite,
            check,
            passed,
            detail,
        });
    }
}

fn skipped(reason: &str) -> (bool, String) {
    (true, format!("skipped: {reason}"))
}

/// Runs one suite (or all of them) under the given size bounds.
pub fn run_suite(suite: Suite, max_d: u64, max_n: u64, guards: &Guards) -> VerifyReport {
    let mut runner = Runner {
        max_d,
        max_n,
        guards,
        outcomes: Vec::new(),
    };
    match suite {
        Suite::Counts => counts_suite(&mut runner),
        Suite::Asymptotics => asymptotics_suite(&mut runner),
        Suite::Contour => contour_suite(&mut runner),
        Suite::Operators => operators_suite(&mut runner),
        Suite::Concentration => concentration_suite(&mut runner),
        Suite::All => {
            counts_suite(&mut runner);
            asymptotics_suite(&mut runner);
            contour_suite(&mut runner);
            operators_suite(&mut runner);
            concentration_suite(&mut runner);
        }
    }
    VerifyReport {
        outcomes: runner.outcomes,
    }
}

fn counts_suite(r: &mut Runner) {
    const SUITE: &str = "counts";

    r.check(SUITE, "enumeration agrees with closed form", |r| {
        let dmax = r.max_d.min(5);
        let nmax = r.max_n.min(7);
        let mut pairs = 0u32;
        for d in 1..=dmax {
            for n in 0..=nmax {
                let seen = enumerate_ball_with_guards(d, n, r.guards)?.count() as u64;
                if BigCount::from(seen) != delannoy(d, n) {
                    return Ok((false, format!("mismatch at d={d}, n={n}")));
                }
                pairs += 1;
            }
        }
        Ok((true, format!("{pairs} pairs")))
    });

    r.check(SUITE, "count is symmetric in dimension and radius", |r| {
        let m = r.max_d.min(200).max(1);
        let table = delannoy_table(m, m);
        for d in 0..=m as usize {
            for n in 0..d {
                if table[d][n] != table[n][d] {
                    return Ok((false, format!("asymmetric at d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("grid {m} x {m}")))
    });

    r.check(SUITE, "support shells partition the ball", |r| {
        let dmax = r.max_d.min(24);
        let nmax = r.max_n.min(24);
        for d in 1..=dmax {
            for n in 0..=nmax {
                let total: BigCount = (0..=d.min(n)).map(|s| support_shell_count(d, s, n)).sum();
                if total != delannoy(d, n) {
                    return Ok((false, format!("mismatch at d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}")))
    });

    r.check(SUITE, "sphere counts accumulate to the ball", |r| {
        let dmax = r.max_d.min(24);
        let nmax = r.max_n.min(24);
        for d in 1..=dmax {
            let total: BigCount = (0..=nmax).map(|k| sphere_count(d, k)).sum();
            if total != delannoy(d, nmax) {
                return Ok((false, format!("mismatch at d={d}")));
            }
        }
        Ok((true, format!("d <= {dmax}, n = {nmax}")))
    });

    r.check(SUITE, "box truncation is monotone and saturates", |r| {
        let d = r.max_d.min(6).max(1);
        let n = r.max_n.min(10);
        let mut last = BigCount::one();
        for m in 0..=n {
            let count = bounded_ball_count(d, n, m)?;
            if count < last {
                return Ok((false, format!("drop at m={m}")));
            }
            last = count;
        }
        if last != delannoy(d, n) {
            return Ok((false, "bound m=n fails to saturate".into()));
        }
        Ok((true, format!("d={d}, n={n}")))
    });

    r.check(SUITE, "lattice polynomial evaluates to the counts", |r| {
        let dmax = r.max_d.min(14) as u32;
        let nmax = r.max_n.min(12);
        for d in 1..=dmax {
            let poly = ehrhart_polynomial(d)?;
            if poly.coefficients().iter().any(|c| !c.is_positive()) {
                return Ok((false, format!("nonpositive coefficient at d={d}")));
            }
            for n in 0..=nmax {
                if poly.eval_count(n) != delannoy(d as u64, n) {
                    return Ok((false, format!("mismatch at d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}, coefficients positive")))
    });

    r.check(SUITE, "sign-magnitude classes partition the sphere", |r| {
        let dmax = r.max_d.min(4);
        let nmax = r.max_n.min(5);
        for d in 1..=dmax {
            for n in 1..=nmax {
                let mut classes: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
                for p in enumerate_ball_with_guards(d, n, r.guards)? {
                    let norm: i64 = p.iter().map(|v| v.abs()).sum();
                    if norm != n as i64 {
                        continue;
                    }
                    let mut profile = vec![0u64; n as usize];
                    for &v in &p {
                        if v != 0 {
                            profile[(v.abs() - 1) as usize] += 1;
                        }
                    }
                    while profile.last() == Some(&0) {
                        profile.pop();
                    }
                    *classes.entry(profile).or_insert(0) += 1;
                }
                let mut total = BigCount::default();
                for (profile, seen) in &classes {
                    let expect = composition_class_count(d, profile)?;
                    if BigCount::from(*seen) != expect {
                        return Ok((false, format!("class {profile:?} at d={d}, n={n}")));
                    }
                    total += expect;
                }
                if total != sphere_count(d, n) {
                    return Ok((false, format!("classes miss points at d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}")))
    });
}

fn asymptotics_suite(r: &mut Runner) {
    const SUITE: &str = "asymptotics";

    r.check(SUITE, "series coefficients match their known values", |_| {
        let b = b_coefficients(2)?;
        let targets = [1.0, 1.0 / 12.0, -3.0 / 160.0];
        for (k, (&got, &want)) in b.iter().zip(targets.iter()).enumerate() {
            if (got - want).abs() > 1e-8 {
                return Ok((false, format!("b_{k} = {got}, want {want}")));
            }
        }
        Ok((true, "orders 0..=2 within 1e-8".into()))
    });

    r.check(SUITE, "uniform estimate ratio stays in its band", |r| {
        if r.max_d < 1 {
            return Ok(skipped("needs d >= 1"));
        }
        let band = bands::measure_uniform_ratio_band(r.max_d.min(300))?;
        Ok((
            band.within(bands::UNIFORM_RATIO_LO, bands::UNIFORM_RATIO_HI),
            format!("[{:.6}, {:.6}]", band.lo, band.hi),
        ))
    });

    r.check(SUITE, "central diagonal stays in its band", |r| {
        let hi = r.max_d.min(200);
        if hi < 10 {
            return Ok(skipped("needs d >= 10"));
        }
        let band = bands::measure_central_ratio_band(10, hi);
        Ok((
            band.within(bands::CENTRAL_RATIO_LO, bands::CENTRAL_RATIO_HI),
            format!("[{:.6}, {:.6}]", band.lo, band.hi),
        ))
    });

    r.check(SUITE, "saddle radius is monotone in the aspect ratio", |r| {
        let d = r.max_d.clamp(2, 240);
        let mut last = 0.0f64;
        for n in 1..=d {
            let p = saddle_params(d, n)?;
            if p.r <= last {
                return Ok((false, format!("not increasing at n={n}")));
            }
            last = p.r;
        }
        Ok((true, format!("n = 1..={d} at d={d}")))
    });

    r.check(SUITE, "correction series is even", |_| {
        for alpha in [0.1f64, 0.25, 0.4, 0.5] {
            let diff = (b_series(alpha, 8)? - b_series(-alpha, 8)?).abs();
            if diff > 1e-15 {
                return Ok((false, format!("asymmetry {diff} at alpha={alpha}")));
            }
        }
        Ok((true, "alpha in {0.1, 0.25, 0.4, 0.5}".into()))
    });

    r.check(SUITE, "count dominates the continuous volume", |r| {
        let dmax = r.max_d.min(12);
        let nmax = r.max_n.min(24);
        for d in 1..=dmax {
            for n in 0..=nmax {
                let volume = exact_volume(d, n);
                let count = BigRational::from_integer(delannoy(d, n).into());
                if volume > count {
                    return Ok((false, format!("volume exceeds count at d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}, exact rationals")))
    });

    r.check(SUITE, "binomial regime agrees with the uniform form", |r| {
        if r.max_d < 2 {
            return Ok(skipped("needs d >= 2"));
        }
        let (c, gap) = bands::measure_binomial_agreement(r.max_d.min(300))?;
        Ok((
            c <= bands::BINOMIAL_AGREEMENT_C,
            format!("normalized excess {c:.6}, worst gap {gap:.4}"),
        ))
    });

    r.check(SUITE, "volume regime agrees with the uniform form", |r| {
        if r.max_n < 2 {
            return Ok(skipped("needs n >= 2"));
        }
        let (c, gap) = bands::measure_volume_agreement(r.max_n.min(300))?;
        Ok((
            c <= bands::VOLUME_AGREEMENT_C,
            format!("normalized excess {c:.6}, worst gap {gap:.4}"),
        ))
    });

    r.check(SUITE, "refined estimate ratio stays in [1/10, 10]", |r| {
        if r.max_d < 1 {
            return Ok(skipped("needs d >= 1"));
        }
        let band = bands::measure_refined_ratio_band(r.max_d.min(500))?;
        Ok((
            band.within(bands::REFINED_RATIO_LO, bands::REFINED_RATIO_HI),
            format!("[{:.6}, {:.6}]", band.lo, band.hi),
        ))
    });
}

fn contour_suite(r: &mut Runner) {
    const SUITE: &str = "contour";

    r.check(SUITE, "quadrature reproduces exact counts", |r| {
        let dmax = r.max_d.min(12).max(1);
        let nmax = r.max_n.min(12);
        for d in 1..=dmax {
            for n in 0..=nmax {
                for kernel in [Kernel::Ball, Kernel::Sphere] {
                    let spec = ContourSpec::at_default_radius(d, n, 256, kernel);
                    let got = contour_count(d, n, &spec)?;
                    let exact = match kernel {
                        Kernel::Ball => delannoy(d, n),
                        Kernel::Sphere => sphere_count(d, n),
                    };
                    let exact = approx_ln(&exact).exp();
                    if (got - exact).abs() > 1e-9 * exact.max(1.0) {
                        return Ok((
                            false,
                            format!("{} off at d={d}, n={n}: {got} vs {exact}", kernel.name()),
                        ));
                    }
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}, both kernels, 256 nodes")))
    });

    r.check(SUITE, "quadrature is radius independent", |r| {
        let d = r.max_d.min(12).max(1);
        let n = r.max_n.min(7).min(d);
        let exact = approx_ln(&delannoy(d, n)).exp();
        for radius in [0.2f64, 0.4, 0.6, 0.8] {
            let spec = ContourSpec {
                radius,
                nodes: 256,
                kernel: Kernel::Ball,
            };
            let got = contour_count(d, n, &spec)?;
            if (got - exact).abs() > 1e-8 * exact {
                return Ok((false, format!("radius {radius} off: {got} vs {exact}")));
            }
        }
        Ok((true, format!("d={d}, n={n}, radii 0.2..0.8")))
    });

    r.check(SUITE, "node doubling is converged", |r| {
        let dmax = r.max_d.min(12).max(1);
        let n = r.max_n.min(6);
        for d in 1..=dmax {
            let coarse = contour_count(d, n, &ContourSpec::at_default_radius(d, n, 256, Kernel::Ball))?;
            let fine = contour_count(d, n, &ContourSpec::at_default_radius(d, n, 512, Kernel::Ball))?;
            if (coarse - fine).abs() > 1e-10 * fine.abs().max(1.0) {
                return Ok((false, format!("drift at d={d}: {coarse} vs {fine}")));
            }
        }
        Ok((true, format!("d <= {dmax}, n = {n}, 256 vs 512 nodes")))
    });

    r.check(SUITE, "split arcs reassemble the sphere count", |r| {
        let d = r.max_d.min(40).max(2);
        let n = (d / 2).max(1);
        let split = saddle_split(d, n, 0.3)?;
        let exact = approx_ln(&sphere_count(d, n)).exp();
        let got = split.count();
        let ok = (got - exact).abs() <= 1e-6 * exact;
        Ok((ok, format!("d={d}, n={n}: {got:.6e} vs {exact:.6e}")))
    });

    r.check(SUITE, "tail arc decays as the size grows", |r| {
        let mut sizes: Vec<u64> = [10u64, 20, 40, 80]
            .into_iter()
            .filter(|&d| d <= r.max_d)
            .collect();
        if sizes.len() < 2 {
            return Ok(skipped("needs d >= 20"));
        }
        sizes.truncate(4);
        let mut last = f64::INFINITY;
        let mut tails = Vec::new();
        for &d in &sizes {
            let split = saddle_split(d, d / 2, 0.4)?;
            tails.push(split.tail_ratio);
            if split.tail_ratio >= last {
                return Ok((false, format!("tail not decaying: {tails:?}")));
            }
            last = split.tail_ratio;
        }
        Ok((true, format!("tail ratios {tails:?}")))
    });

    r.check(SUITE, "cubic remainder bound holds on the split arc", |r| {
        let d = r.max_d.min(50).max(2);
        let n = (d / 2).max(1);
        // The check normalizes by the cubic bound, so 1 is the limit.
        let worst = taylor_remainder_check(d, n, 60, 0.05)?;
        Ok((
            worst <= 1.0,
            format!("d={d}, n={n}: worst normalized remainder {worst:.4}"),
        ))
    });
}

fn operators_suite(r: &mut Runner) {
    const SUITE: &str = "operators";

    r.check(SUITE, "averages contract every lp norm", |r| {
        let dmax = r.max_d.min(3).max(1) as u32;
        let rmax = r.max_n.min(3).max(1) as u32;
        for dim in 1..=dmax {
            let f = GridFunction::random_signs(dim, 4 + rmax, 11)?;
            for radius in 1..=rmax {
                for kind in [AverageKind::Ball, AverageKind::Sphere] {
                    let averaged = match kind {
                        AverageKind::Ball => ball_average(&f, radius)?,
                        AverageKind::Sphere => sphere_average(&f, radius)?,
                    };
                    for p in [1.0, 2.0, f64::INFINITY] {
                        if averaged.lp_norm(p) > f.lp_norm(p) + 1e-10 {
                            return Ok((
                                false,
                                format!("{} expands p={p} at dim={dim}, R={radius}", kind.name()),
                            ));
                        }
                    }
                }
            }
        }
        Ok((true, format!("dim <= {dmax}, R <= {rmax}, p in {{1, 2, inf}}")))
    });

    r.check(SUITE, "sphere averages assemble the ball average", |r| {
        let rmax = r.max_n.min(3).max(1) as u32;
        let f = GridFunction::random_sparse(2, 7, 0.25, 13)?;
        for radius in 1..=rmax {
            let ball = ball_average(&f, radius)?;
            let mut assembled = vec![0.0f64; ball.values().len()];
            for k in 0..=radius {
                let sphere = sphere_average(&f, k)?;
                let weight = approx_ln(&sphere_count(2, k as u64)).exp();
                for (acc, v) in assembled.iter_mut().zip(sphere.values()) {
                    *acc += weight * v;
                }
            }
            let total = approx_ln(&delannoy(2, radius as u64)).exp();
            for (acc, v) in assembled.iter_mut().zip(ball.values()) {
                if (*acc - total * v).abs() > 1e-10 * total {
                    return Ok((false, format!("identity off at R={radius}")));
                }
            }
        }
        Ok((true, format!("R <= {rmax} pointwise to 1e-10")))
    });

    r.check(SUITE, "larger radius sets dominate pointwise", |_| {
        let f = GridFunction::random_signs(2, 6, 19)?;
        let small = maximal_function(&f, &RadiusSet::Explicit(vec![1, 2]), AverageKind::Ball)?;
        let large = maximal_function(&f, &RadiusSet::Explicit(vec![1, 2, 4]), AverageKind::Ball)?;
        let ok = small
            .values()
            .iter()
            .zip(large.values())
            .all(|(s, l)| *s <= l + 1e-12);
        Ok((ok, "E = {1,2} vs {1,2,4}".into()))
    });

    r.check(SUITE, "symbol dynamic program matches direct sums", |r| {
        let dmax = r.max_d.min(4).max(1);
        let nmax = r.max_n.min(8);
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let d = rng.gen_range(1..=dmax);
            let n = rng.gen_range(0..=nmax);
            let coords: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
            let xi = FrequencyPoint::new(coords)?;
            let ball = multiplier_m(d, n, &xi)?;
            let direct = direct_symbol(d, n, &xi, SymbolKind::Ball)?;
            if (ball.re - direct.re).abs() > 1e-12 || direct.im.abs() > 1e-12 {
                return Ok((false, format!("ball symbol off at d={d}, n={n}")));
            }
            if ball.re.abs() > 1.0 + 1e-10 {
                return Ok((false, format!("symbol out of range at d={d}, n={n}")));
            }
            let sphere = multiplier_s(d, n, &xi)?;
            let direct = direct_symbol(d, n, &xi, SymbolKind::Sphere)?;
            if (sphere.re - direct.re).abs() > 1e-12 {
                return Ok((false, format!("sphere symbol off at d={d}, n={n}")));
            }
        }
        Ok((true, format!("100 seeded triples, d <= {dmax}, n <= {nmax}")))
    });

    r.check(SUITE, "symbol is periodic modulo one", |_| {
        let base = FrequencyPoint::new(vec![0.31, -0.18])?;
        let shifted = FrequencyPoint::new(vec![1.31, -2.18])?;
        let a = multiplier_m(2, 5, &base)?;
        let b = multiplier_m(2, 5, &shifted)?;
        Ok((
            (a.re - b.re).abs() <= 1e-10,
            format!("difference {:.2e}", (a.re - b.re).abs()),
        ))
    });

    r.check(SUITE, "maximal norm probes saturate under their caps", |r| {
        let dmax = r.max_d.min(4).max(1) as u32;
        for dim in 1..=dmax {
            let set = RadiusSet::FullRange {
                max: bands::NORM_PROBE_MAX_RADIUS[dim as usize - 1],
            };
            let curve = norm_probe_curve(
                dim,
                &set,
                bands::NORM_PROBE_P,
                bands::NORM_PROBE_TRIALS,
                bands::NORM_PROBE_SEED,
            )?;
            if curve.windows(2).any(|w| w[1] < w[0]) {
                return Ok((false, format!("curve not monotone at dim={dim}")));
            }
            let last = *curve.last().unwrap();
            if last > bands::NORM_PROBE_CAPS[dim as usize - 1] {
                return Ok((false, format!("cap exceeded at dim={dim}: {last:.4}")));
            }
            let mid = curve[curve.len() / 2];
            if last - mid > bands::NORM_PROBE_SATURATION_SLACK * last {
                return Ok((false, format!("late growth at dim={dim}")));
            }
        }
        Ok((true, format!("dim <= {dmax}, recorded caps and slack")))
    });
}

fn concentration_suite(r: &mut Runner) {
    const SUITE: &str = "concentration";

    r.check(SUITE, "deficit counter agrees with enumeration", |r| {
        let dmax = r.max_d.min(5);
        let nmax = r.max_n.min(7);
        for d in 1..=dmax {
            for n in 0..=nmax {
                for k in 0..=2u64 {
                    for a in 0..=n.min(3) {
                        for surface in [false, true] {
                            let report = deficit_count(d, n, k, a, surface)?;
                            let brute = enumerate_ball_with_guards(d, n, r.guards)?
                                .filter(|p| {
                                    let norm: i64 = p.iter().map(|v| v.abs()).sum();
                                    if surface && norm != n as i64 {
                                        return false;
                                    }
                                    let small: i64 = p
                                        .iter()
                                        .map(|v| v.abs())
                                        .filter(|&v| v <= k as i64)
                                        .sum();
                                    small <= (n - a) as i64
                                })
                                .count() as u64;
                            if report.bad_count != BigCount::from(brute) {
                                return Ok((
                                    false,
                                    format!("d={d}, n={n}, k={k}, a={a}, surface={surface}"),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}, k <= 2, a <= 3")))
    });

    r.check(SUITE, "few-ones counter agrees with enumeration", |r| {
        let dmax = r.max_d.min(5);
        let nmax = r.max_n.min(7);
        for d in 1..=dmax {
            for n in 0..=nmax {
                let report = few_ones_count(d, n)?;
                let brute = enumerate_ball_with_guards(d, n, r.guards)?
                    .filter(|p| {
                        let norm: i64 = p.iter().map(|v| v.abs()).sum();
                        let ones = p.iter().filter(|v| v.abs() == 1).count() as u64;
                        norm == n as i64 && 2 * ones <= n
                    })
                    .count() as u64;
                if report.bad_count != BigCount::from(brute) {
                    return Ok((false, format!("d={d}, n={n}")));
                }
            }
        }
        Ok((true, format!("d <= {dmax}, n <= {nmax}")))
    });

    r.check(SUITE, "deficit count is monotone", |r| {
        let d = r.max_d.min(4).max(1);
        let n = r.max_n.min(6).max(2);
        let mut last = deficit_count(d, n, 1, 0, false)?.bad_count;
        for a in 1..=n {
            let bad = deficit_count(d, n, 1, a, false)?.bad_count;
            if bad > last {
                return Ok((false, format!("grows at a={a}")));
            }
            last = bad;
        }
        let mut last = deficit_count(d, 2, 1, 2, false)?.bad_count;
        for m in 3..=n.max(3) {
            let bad = deficit_count(d, m, 1, 2, false)?.bad_count;
            if bad < last {
                return Ok((false, format!("shrinks at n={m}")));
            }
            last = bad;
        }
        Ok((true, format!("d={d}, nonincreasing in a, nondecreasing in n")))
    });

    r.check(SUITE, "deficit threshold stabilizes with dimension", |r| {
        let dims: Vec<u64> = [16u64, 64, 256].into_iter().filter(|&d| d <= r.max_d).collect();
        if dims.len() < 2 {
            return Ok(skipped("needs d >= 64"));
        }
        let mut values = Vec::new();
        for &d in &dims {
            let n = (d as f64).sqrt().floor() as u64;
            match smallest_deficit_a(d, n, 2, false, 1.0 / d as f64)? {
                Some(a) => values.push(a),
                None => return Ok((false, format!("no threshold reaches 1/d at d={d}"))),
            }
        }
        let first = values[0];
        let ok = values.iter().all(|&a| a <= first);
        Ok((ok, format!("dims {dims:?} need a = {values:?}")))
    });

    r.check(SUITE, "few-ones fraction decays exponentially", |r| {
        if r.max_n < 2 {
            return Ok(skipped("needs n >= 2"));
        }
        let c = bands::measure_few_ones_constant(r.max_n.min(12))?;
        Ok((
            c <= bands::FEW_ONES_CONST,
            format!("normalized constant {c:.6}"),
        ))
    });

    r.check(SUITE, "large coordinates are rare", |r| {
        if r.max_d < 16 {
            return Ok(skipped("needs d >= 16"));
        }
        for k in [1u64, 2] {
            let c = bands::measure_large_coordinate_constant(k, r.max_d)?;
            if c > bands::LARGE_COORD_CONST {
                return Ok((false, format!("k={k}: constant {c:.2e}")));
            }
        }
        Ok((true, "k in {1, 2} under the recorded constant".into()))
    });

    r.check(SUITE, "second moment ratio stays in its band", |r| {
        if r.max_d < 2 {
            return Ok(skipped("needs d >= 2"));
        }
        let band = bands::measure_second_moment_band(r.max_d.min(30))?;
        Ok((
            band.within(bands::SECOND_MOMENT_RATIO_LO, bands::SECOND_MOMENT_RATIO_HI),
            format!("[{:.4}, {:.4}]", band.lo, band.hi),
        ))
    });

    r.check(SUITE, "shell ratios match their closed form", |r| {
        let d = r.max_d.min(25);
        if d < 12 {
            return Ok(skipped("needs d >= 12"));
        }
        let n = 8 * d;
        for l in 1..=2u64 {
            // shell_ratio asserts the closed form internally.
            let ratio = shell_ratio(d, n, 2.0, l)?;
            if !ratio.is_positive() {
                return Ok((false, format!("nonpositive ratio at l={l}")));
            }
        }
        let steep_d = r.max_d.min(36);
        if steep_d >= 16 {
            let steep_n = (steep_d as f64).powf(1.5).round() as u64;
            let ratio = shell_ratio(steep_d, steep_n, 2.0, 1)?;
            if ratio > BigRational::new(1.into(), 2.into()) {
                return Ok((false, format!("steep regime ratio {ratio}")));
            }
        }
        Ok((true, format!("d = {d}, identity asserted, steep regime <= 1/2")))
    });

    r.check(SUITE, "tail estimate approaches its gaussian limit", |_| {
        let report = clt_tail_probability(20, 0.5, 20_000, 5)?;
        let again = clt_tail_probability(20, 0.5, 20_000, 5)?;
        if report != again {
            return Ok((false, "nondeterministic".into()));
        }
        let ok = report.estimate > 0.0
            && (report.estimate - report.gaussian).abs() <= 5.0 * report.stderr;
        Ok((
            ok,
            format!(
                "estimate {:.5} vs gaussian {:.5} ({:.1} stderr)",
                report.estimate,
                report.gaussian,
                (report.estimate - report.gaussian).abs() / report.stderr
            ),
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in [
            Suite::Counts,
            Suite::Asymptotics,
            Suite::Contour,
            Suite::Operators,
            Suite::Concentration,
            Suite::All,
        ] {
            assert_eq!(Suite::from_name(suite.name()), Some(suite));
        }
        assert_eq!(Suite::from_name("nonsense"), None);
    }

    #[test]
    fn counts_suite_passes_at_oracle_scale() {
        let report = run_suite(Suite::Counts, 5, 7, &Guards::default());
        for outcome in &report.outcomes {
            assert!(outcome.passed, "{}: {}", outcome.check, outcome.detail);
        }
    }

    #[test]
    fn tight_bounds_skip_rather_than_fail() {
        let report = run_suite(Suite::Concentration, 2, 2, &Guards::default());
        assert!(report.all_passed());
        assert!(report
            .outcomes
            .iter()
            .any(|o| o.detail.starts_with("skipped")));
    }

    #[test]
    fn full_run_is_deterministic() {
        let a = run_suite(Suite::All, 6, 6, &Guards::default());
        let b = run_suite(Suite::All, 6, 6, &Guards::default());
        assert_eq!(a, b);
        assert!(a.all_passed(), "failures: {:?}", a
            .outcomes
            .iter()
            .filter(|o| !o.passed)
            .collect::<Vec<_>>());
    }
}
