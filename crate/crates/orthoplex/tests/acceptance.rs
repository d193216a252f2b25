//! The acceptance gate: one test per release criterion, each printing a
//! single PASS line (run with `--nocapture` to see them all).  A failure
//! panics with the measured numbers, so the line and the test verdict
//! always agree.

mod common;

use num_traits::Signed;
use orthoplex::asymptotics::{b_coefficients, exact_volume};
use orthoplex::bands::{
    measure_central_ratio_band, measure_few_ones_constant, measure_large_coordinate_constant,
    measure_second_moment_band, measure_uniform_ratio_band, CENTRAL_RATIO_HI, CENTRAL_RATIO_LO,
    FEW_ONES_CONST, LARGE_COORD_CONST, MULTIPLIER_GLOBAL_CAP, MULTIPLIER_LOCAL_CAP,
    MULTIPLIER_SCAN_DIMS, MULTIPLIER_SCAN_SAMPLES, MULTIPLIER_SCAN_SEED, NORM_PROBE_CAPS,
    NORM_PROBE_MAX_RADIUS, NORM_PROBE_P, NORM_PROBE_SEED, NORM_PROBE_TRIALS,
    NORM_PROBE_SATURATION_SLACK, SECOND_MOMENT_RATIO_HI, SECOND_MOMENT_RATIO_LO,
    UNIFORM_RATIO_HI, UNIFORM_RATIO_LO, UNIFORM_RATIO_REFINE_SLACK,
};
use orthoplex::concentration::clt_tail_probability;
use orthoplex::contour::{contour_count, symmetric_contour_count, ContourSpec, Kernel};
use orthoplex::counts::{
    bounded_ball_count, composition_class_count, delannoy, delannoy_table, sphere_count,
    support_shell_count,
};
use orthoplex::ehrhart::ehrhart_polynomial;
use orthoplex::grid::{
    ball_average, norm_probe_curve, sphere_average, AverageKind, GridFunction, RadiusSet,
};
use orthoplex::multiplier::{
    direct_symbol, multiplier_bound_scan, multiplier_m, multiplier_s, FrequencyPoint, SymbolKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(number: u32, name: &str, detail: String) {
    println!("criterion {number:02} PASS: {name} ({detail})");
}

#[test]
fn criterion_01_exact_counters_match_brute_force() {
    let mut checks = 0u64;
    for d in 1..=5u64 {
        for n in 0..=7u64 {
            let points = common::ball_points(d, n);
            assert_eq!(
                delannoy(d, n).to_string(),
                points.len().to_string(),
                "ball count (d={d}, n={n})"
            );
            assert_eq!(
                sphere_count(d, n).to_string(),
                common::sphere_count(d, n).to_string(),
                "sphere count (d={d}, n={n})"
            );
            checks += 2;
            for s in 0..=d {
                assert_eq!(
                    support_shell_count(d, s, n).to_string(),
                    common::shell_count(d, s, n).to_string(),
                    "shell count (d={d}, s={s}, n={n})"
                );
                checks += 1;
            }
            for m in 0..=7 {
                assert_eq!(
                    bounded_ball_count(d, n, m).unwrap().to_string(),
                    common::bounded_count(d, n, m).to_string(),
                    "bounded count (d={d}, n={n}, m={m})"
                );
                checks += 1;
            }
        }
    }
    for (d, n) in [(3u64, 7u64), (4, 6), (5, 5)] {
        let points = common::ball_points(d, n);
        let mut profiles: Vec<Vec<u64>> = points.iter().map(|p| common::profile_of(p)).collect();
        profiles.sort();
        profiles.dedup();
        for profile in profiles {
            assert_eq!(
                composition_class_count(d, &profile).unwrap().to_string(),
                common::class_count(d, n, &profile).to_string(),
                "class count (d={d}, n={n}, profile={profile:?})"
            );
            checks += 1;
        }
    }
    for d in 1..=4u64 {
        for n in 0..=6u64 {
            for k in 0..=3u64 {
                for a in 0..=n {
                    for surface in [false, true] {
                        let report = orthoplex::concentration::deficit_count(d, n, k, a, surface)
                            .unwrap();
                        assert_eq!(
                            report.bad_count.to_string(),
                            common::deficit_count(d, n, k, a, surface).to_string(),
                            "deficit count (d={d}, n={n}, k={k}, a={a}, surface={surface})"
                        );
                        checks += 1;
                    }
                }
            }
        }
    }
    for d in 1..=5u64 {
        for n in 0..=7u64 {
            let report = orthoplex::concentration::few_ones_count(d, n).unwrap();
            assert_eq!(
                report.bad_count.to_string(),
                common::few_ones_count(d, n).to_string(),
                "few-ones count (d={d}, n={n})"
            );
            checks += 1;
        }
    }
    pass(
        1,
        "exact counters match brute-force enumeration",
        format!("{checks} comparisons over d <= 5, n <= 7, zero tolerance"),
    );
}

#[test]
fn criterion_02_symmetry_and_identities() {
    let table = delannoy_table(200, 200);
    for d in 0..=200usize {
        for n in 0..d {
            assert_eq!(table[d][n], table[n][d], "table symmetry (d={d}, n={n})");
        }
    }
    // The table comes from the recurrence; tie it to the independent
    // closed-form sum on a stride so both paths agree with the symmetry.
    for d in (0..=200u64).step_by(23) {
        for n in (0..=200u64).step_by(31) {
            assert_eq!(
                delannoy(d, n),
                table[n as usize][d as usize],
                "closed form vs transposed table (d={d}, n={n})"
            );
        }
    }
    for d in 0..=24u64 {
        for n in 0..=24u64 {
            let total: orthoplex::BigCount = (0..=d).map(|s| support_shell_count(d, s, n)).sum();
            assert_eq!(total, delannoy(d, n), "shell partition (d={d}, n={n})");
            if n > 0 {
                assert_eq!(
                    sphere_count(d, n),
                    delannoy(d, n) - delannoy(d, n - 1),
                    "sphere as ball difference (d={d}, n={n})"
                );
            }
        }
    }
    for d in 1..=20u32 {
        let poly = ehrhart_polynomial(d).unwrap();
        for n in 0..=20u64 {
            assert_eq!(
                poly.eval_count(n),
                delannoy(d as u64, n),
                "polynomial evaluation (d={d}, n={n})"
            );
        }
    }
    pass(
        2,
        "symmetry and partition identities hold exactly",
        "transpose equality to 200, shells and sphere differences to 24, polynomial to 20".into(),
    );
}

#[test]
fn criterion_03_published_series_coefficients() {
    let coefficients = b_coefficients(2).unwrap();
    let expected = [1.0, 1.0 / 12.0, -3.0 / 160.0];
    let mut worst = 0.0f64;
    for (k, (&got, &want)) in coefficients.iter().zip(expected.iter()).enumerate() {
        let err = (got - want).abs();
        worst = worst.max(err);
        assert!(
            err <= 1e-8,
            "b_{k} = {got}, expected {want}, error {err:.3e}"
        );
    }
    pass(
        3,
        "series coefficients 1, 1/12, -3/160 recovered",
        format!("worst absolute error {worst:.3e} <= 1e-8"),
    );
}

#[test]
fn criterion_04_polynomial_positivity_and_volume_bound() {
    for d in 1..=20u32 {
        let poly = ehrhart_polynomial(d).unwrap();
        for (degree, coefficient) in poly.coefficients().iter().enumerate() {
            assert!(
                coefficient.is_positive(),
                "coefficient of n^{degree} at d={d} is {coefficient}"
            );
        }
    }
    for d in 1..=20u64 {
        for n in 0..=50u64 {
            let count = num_rational::BigRational::from_integer(
                num_bigint::BigInt::from(delannoy(d, n)),
            );
            let volume = exact_volume(d, n);
            assert!(
                count >= volume,
                "count {count} below volume {volume} at (d={d}, n={n})"
            );
        }
    }
    pass(
        4,
        "polynomial coefficients positive, count dominates volume",
        "all coefficients positive for d <= 20; exact rational comparison to n = 50".into(),
    );
}

#[test]
fn criterion_05_uniform_estimate_bands() {
    let band = measure_uniform_ratio_band(300).unwrap();
    assert!(
        band.within(UNIFORM_RATIO_LO, UNIFORM_RATIO_HI),
        "triangle band [{:.8}, {:.8}] left the recorded [{UNIFORM_RATIO_LO}, {UNIFORM_RATIO_HI}]",
        band.lo,
        band.hi
    );
    assert!(
        UNIFORM_RATIO_HI / UNIFORM_RATIO_LO <= 10.0,
        "recorded band spread {} exceeds 10",
        UNIFORM_RATIO_HI / UNIFORM_RATIO_LO
    );
    let refined = measure_uniform_ratio_band(500).unwrap();
    let lo_shift = (refined.lo - band.lo).abs() / band.lo;
    let hi_shift = (refined.hi - band.hi).abs() / band.hi;
    assert!(
        lo_shift <= UNIFORM_RATIO_REFINE_SLACK && hi_shift <= UNIFORM_RATIO_REFINE_SLACK,
        "refining to d <= 500 moved the band by {:.1}% / {:.1}%",
        100.0 * lo_shift,
        100.0 * hi_shift
    );
    let central = measure_central_ratio_band(10, 200);
    assert!(
        central.within(CENTRAL_RATIO_LO, CENTRAL_RATIO_HI),
        "central band [{:.8}, {:.8}] left the recorded [{CENTRAL_RATIO_LO}, {CENTRAL_RATIO_HI}]",
        central.lo,
        central.hi
    );
    assert!(CENTRAL_RATIO_HI / CENTRAL_RATIO_LO <= 3.0);
    pass(
        5,
        "estimate ratio bands hold and are refinement-stable",
        format!(
            "triangle [{:.4}, {:.4}] (spread {:.2}), endpoints move {:.2}% / {:.2}% at d <= 500, \
             central [{:.4}, {:.4}]",
            band.lo,
            band.hi,
            band.hi / band.lo,
            100.0 * lo_shift,
            100.0 * hi_shift,
            central.lo,
            central.hi
        ),
    );
}

#[test]
fn criterion_06_contour_quadrature_accuracy() {
    let mut worst_rel = 0.0f64;
    let mut worst_doubling = 0.0f64;
    for d in 1..=60u64 {
        for n in 1..=60u64 {
            let exact: f64 = delannoy(d, n).to_string().parse().unwrap();
            let quad = symmetric_contour_count(d, n, 512).unwrap();
            let rel = (quad - exact).abs() / exact;
            worst_rel = worst_rel.max(rel);
            assert!(
                rel <= 1e-8,
                "relative error {rel:.3e} at (d={d}, n={n}) with 512 nodes"
            );
            let doubled = symmetric_contour_count(d, n, 1024).unwrap();
            let shift = (quad - doubled).abs() / exact;
            worst_doubling = worst_doubling.max(shift);
            assert!(
                shift < 1e-10,
                "node doubling moved the value by {shift:.3e} at (d={d}, n={n})"
            );
        }
    }
    // The raw single-orientation entry point must agree wherever the
    // aspect ratio keeps it well conditioned.
    for d in 10..=60u64 {
        let spec = ContourSpec::at_default_radius(d, 10, 512, Kernel::Ball);
        let exact: f64 = delannoy(d, 10).to_string().parse().unwrap();
        let direct = contour_count(d, 10, &spec).unwrap();
        assert!((direct - exact).abs() / exact <= 1e-8);
    }
    pass(
        6,
        "quadrature reproduces counts at 512 nodes",
        format!(
            "worst relative error {worst_rel:.3e} <= 1e-8, worst node-doubling shift \
             {worst_doubling:.3e} < 1e-10, full grid d, n <= 60 at the saddle radius of \
             the flat orientation"
        ),
    );
}

#[test]
fn criterion_07_multiplier_agreement_and_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(314159);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let d = rng.gen_range(1..=4u64);
        let n = rng.gen_range(1..=8u64);
        let coords: Vec<f64> = (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect();
        let xi = FrequencyPoint::new(coords).unwrap();
        let dp_ball = multiplier_m(d, n, &xi).unwrap();
        let direct_ball = direct_symbol(d, n, &xi, SymbolKind::Ball).unwrap();
        let dp_sphere = multiplier_s(d, n, &xi).unwrap();
        let direct_sphere = direct_symbol(d, n, &xi, SymbolKind::Sphere).unwrap();
        let err = (dp_ball - direct_ball)
            .norm()
            .max((dp_sphere - direct_sphere).norm());
        worst = worst.max(err);
        assert!(err <= 1e-12, "symbol mismatch {err:.3e} at (d={d}, n={n})");
    }
    let mut locals = Vec::new();
    for &d in &MULTIPLIER_SCAN_DIMS {
        let scan =
            multiplier_bound_scan(d, 8 * d, MULTIPLIER_SCAN_SAMPLES, MULTIPLIER_SCAN_SEED).unwrap();
        let doubled =
            multiplier_bound_scan(d, 8 * d, 2 * MULTIPLIER_SCAN_SAMPLES, MULTIPLIER_SCAN_SEED)
                .unwrap();
        assert!(
            scan.local_constant <= MULTIPLIER_LOCAL_CAP,
            "local constant {} at d={d} exceeds the recorded cap {MULTIPLIER_LOCAL_CAP}",
            scan.local_constant
        );
        for global in [scan.global_constant, doubled.global_constant] {
            assert!(
                global.is_finite() && global <= MULTIPLIER_GLOBAL_CAP,
                "global constant {global} at d={d} exceeds the recorded cap"
            );
        }
        let drift =
            (doubled.global_constant - scan.global_constant).abs() / scan.global_constant;
        assert!(
            drift <= 0.25,
            "global constant drifted {:.1}% under sample doubling at d={d}",
            100.0 * drift
        );
        locals.push(scan.local_constant);
    }
    pass(
        7,
        "symbol DP matches direct summation; scan constants capped",
        format!(
            "worst of 100 triples {worst:.3e} <= 1e-12; local constants {:.2}/{:.2}/{:.2} <= \
             {MULTIPLIER_LOCAL_CAP} across d in {MULTIPLIER_SCAN_DIMS:?}; global stable under \
             sample doubling",
            locals[0], locals[1], locals[2]
        ),
    );
}

#[test]
fn criterion_08_operator_contraction_and_probes() {
    let grids = [(1u32, 12u32), (2, 6), (3, 3), (4, 2)];
    for (dim, half_width) in grids {
        for seed in [5u64, 23] {
            let f = GridFunction::random_signs(dim, half_width, seed).unwrap();
            for radius in 0..=10u32 {
                for kind in [AverageKind::Ball, AverageKind::Sphere] {
                    let averaged = match kind {
                        AverageKind::Ball => ball_average(&f, radius).unwrap(),
                        AverageKind::Sphere => sphere_average(&f, radius).unwrap(),
                    };
                    for p in [1.0, 2.0, f64::INFINITY] {
                        let ratio = averaged.lp_norm(p) / f.lp_norm(p);
                        assert!(
                            ratio <= 1.0 + 1e-10,
                            "ratio {ratio} at dim={dim}, radius={radius}, p={p}, {kind:?}"
                        );
                    }
                }
            }
        }
    }
    let f = GridFunction::random_signs(2, 7, 41).unwrap();
    for radius in 0..=7u32 {
        let ball = ball_average(&f, radius).unwrap();
        let ball_size: f64 = delannoy(2, radius as u64).to_string().parse().unwrap();
        let mut assembled = vec![0.0f64; ball.values().len()];
        for k in 0..=radius {
            let sphere = sphere_average(&f, k).unwrap();
            let sphere_size: f64 = sphere_count(2, k as u64).to_string().parse().unwrap();
            for (slot, value) in assembled.iter_mut().zip(sphere.values()) {
                *slot += sphere_size * value;
            }
        }
        for (lhs, rhs) in ball.values().iter().zip(&assembled) {
            assert!(
                (lhs * ball_size - rhs).abs() <= 1e-10,
                "partition identity off by {:.3e} at radius {radius}",
                (lhs * ball_size - rhs).abs()
            );
        }
    }
    let mut finals = Vec::new();
    for dim in 1..=4u32 {
        let set = RadiusSet::FullRange {
            max: NORM_PROBE_MAX_RADIUS[dim as usize - 1],
        };
        let curve =
            norm_probe_curve(dim, &set, NORM_PROBE_P, NORM_PROBE_TRIALS, NORM_PROBE_SEED).unwrap();
        for pair in curve.windows(2) {
            assert!(
                pair[1] >= pair[0] - 1e-12,
                "probe curve decreased at dim {dim}: {curve:?}"
            );
        }
        let last = *curve.last().unwrap();
        assert!(
            last <= NORM_PROBE_CAPS[dim as usize - 1],
            "final probe ratio {last} at dim {dim} exceeds the recorded cap"
        );
        let mid = curve[curve.len() / 2];
        assert!(
            last - mid <= NORM_PROBE_SATURATION_SLACK * last,
            "probe curve still climbing at dim {dim}: {curve:?}"
        );
        finals.push(last);
    }
    pass(
        8,
        "averages contract every norm; probe curves saturate under caps",
        format!(
            "contraction exact to 1e-10 for d <= 4, R <= 10, p in {{1, 2, inf}}; partition \
             identity to 1e-10; final probe ratios {:.4}/{:.4}/{:.4}/{:.4} under recorded caps",
            finals[0], finals[1], finals[2], finals[3]
        ),
    );
}

#[test]
fn criterion_09_concentration_scaling() {
    let few = measure_few_ones_constant(u64::MAX).unwrap();
    assert!(
        few <= FEW_ONES_CONST,
        "few-ones constant {few:.6} exceeds the recorded {FEW_ONES_CONST}"
    );
    let mut larges = Vec::new();
    for k in [1u64, 2] {
        let large = measure_large_coordinate_constant(k, u64::MAX).unwrap();
        assert!(
            large <= LARGE_COORD_CONST,
            "large-coordinate constant {large:.6e} at k={k} exceeds the recorded \
             {LARGE_COORD_CONST}"
        );
        larges.push(large);
    }
    let band = measure_second_moment_band(30).unwrap();
    assert!(
        band.within(SECOND_MOMENT_RATIO_LO, SECOND_MOMENT_RATIO_HI),
        "second-moment band [{:.8}, {:.8}] left the recorded \
         [{SECOND_MOMENT_RATIO_LO}, {SECOND_MOMENT_RATIO_HI}]",
        band.lo,
        band.hi
    );
    assert!(SECOND_MOMENT_RATIO_HI / SECOND_MOMENT_RATIO_LO <= 4.0);
    pass(
        9,
        "concentration fractions scale as recorded",
        format!(
            "few-ones constant {few:.5} <= {FEW_ONES_CONST}; large-coordinate constants \
             {:.2e}/{:.2e} <= {LARGE_COORD_CONST}; second-moment band [{:.4}, {:.4}] \
             (spread {:.2} <= 4)",
            larges[0],
            larges[1],
            band.lo,
            band.hi,
            band.hi / band.lo
        ),
    );
}

#[test]
fn criterion_10_monte_carlo_tail_matches_gaussian() {
    let report = clt_tail_probability(50, 1.0, 1_000_000, 2024).unwrap();
    assert!(
        report.estimate > 0.0,
        "tail estimate is zero: the threshold was never reached"
    );
    let gap = (report.estimate - report.gaussian).abs();
    assert!(
        gap <= 3.0 * report.stderr,
        "estimate {:.6e} sits {:.2} standard errors from the Gaussian {:.6e}",
        report.estimate,
        gap / report.stderr,
        report.gaussian
    );
    pass(
        10,
        "Monte Carlo tail positive and near the Gaussian value",
        format!(
            "estimate {:.4e} ({} hits), Gaussian {:.4e}, gap {:.2} standard errors <= 3",
            report.estimate,
            report.hits,
            report.gaussian,
            gap / report.stderr
        ),
    );
}

#[test]
fn criterion_11_cli_output_is_byte_deterministic() {
    let invocations: [&[&str]; 6] = [
        &["orthoplex", "verify", "--suite", "counts", "--max-d", "5", "--max-n", "7"],
        &["orthoplex", "clt-tail", "--d-star", "20", "--c", "0.5", "--samples", "100000",
          "--seed", "7"],
        &["orthoplex", "mult-scan", "--d", "4", "--n", "32", "--samples", "16", "--seed", "5"],
        &["orthoplex", "norm-probe", "--dim", "2", "--radii", "full:6", "--seed", "9"],
        &["orthoplex", "maximal", "--dim", "2", "--half-width", "6", "--radii", "dyadic:8",
          "--seed", "3", "--format", "json"],
        &["orthoplex", "delannoy", "--d", "1..40", "--n-of", "sqrt", "--format", "json"],
    ];
    for argv in invocations {
        let mut first = Vec::new();
        let mut second = Vec::new();
        let mut err = Vec::new();
        let code_first = orthoplex::cli::run(argv.iter().copied(), &mut first, &mut err);
        let code_second = orthoplex::cli::run(argv.iter().copied(), &mut second, &mut err);
        assert_eq!(code_first, 0, "{argv:?} failed: {}", String::from_utf8_lossy(&err));
        assert_eq!(code_first, code_second);
        assert!(
            first == second,
            "outputs of {argv:?} differ between runs"
        );
        assert!(!first.is_empty());
    }
    pass(
        11,
        "CLI output is byte-identical across runs",
        format!(
            "{} invocations repeated, including verify and every seeded kind; execution is \
             single-threaded by design, so thread count cannot influence output",
            invocations.len()
        ),
    );
}
