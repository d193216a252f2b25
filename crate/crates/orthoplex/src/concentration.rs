//! Concentration counts on the discrete ball and sphere.
//!
//! Lattice points of a large cross-polytope concentrate in specific ways:
//! almost all of the l1 mass sits on coordinates of small absolute value,
//! few points on the sphere avoid having many coordinates equal to +-1,
//! and coordinates rarely get large when the radius is small relative to
//! the dimension.  This module measures those effects exactly with budget
//! dynamic programs over (used l1 budget, tracked statistic), so the decay
//! regimes (fractions like 1/d or 2^(-n/2)) are reachable at sizes far
//! beyond enumeration.  Enumeration remains the cross-check at small sizes.
//!
//! It also computes the exact second moment of a single coordinate over
//! the ball (the discrete isotropy constant, up to normalization by
//! (n/d)^2), exact ratios of adjacent support shells, and a seeded Monte
//! Carlo estimate of the central limit tail probability that governs the
//! lower bounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counts::{
    approx_ln, bounded_ball_count_with_guards, delannoy, delannoy_table, sphere_count,
    support_shell_count, BigCount,
};
use crate::error::{Error, Guards, Result};

/// A count of "bad" points (violating a concentration statement) against
/// the total population they were drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub d: u64,
    pub n: u64,
    /// Human-readable parameters of the defining condition.
    pub detail: String,
    pub bad_count: BigCount,
    pub total: BigCount,
}

impl ConcentrationReport {
    /// bad_count / total as a float; accurate to rounding even when both
    /// counts overflow f64.
    pub fn fraction(&self) -> f64 {
        count_ratio(&self.bad_count, &self.total)
    }
}

/// Ratio of two counts as f64, switching to log space when either side
/// is too large to convert directly.
fn count_ratio(num: &BigCount, den: &BigCount) -> f64 {
    if den.is_zero() {
        return f64::NAN;
    }
    if num.is_zero() {
        return 0.0;
    }
    if num.bits() <= 900 && den.bits() <= 900 {
        num.to_f64().unwrap() / den.to_f64().unwrap()
    } else {
        (approx_ln(num) - approx_ln(den)).exp()
    }
}

/// Core two-dimensional budget DP: after sweeping all d coordinates,
/// dp[t][s] counts the points with l1 norm exactly t whose coordinates of
/// absolute value at most k contribute exactly s to that norm.
///
/// Per coordinate, value 0 keeps (t, s); values +-w with w <= k move to
/// (t+w, s+w); larger values move to (t+w, s).  The large moves are a
/// running sum over earlier budgets, handled with prefix sums, so the
/// cost is O(d n^2 k) big-integer operations.
fn deficit_dp(d: u64, n: u64, k: u64, guards: &Guards) -> Result<Vec<Vec<BigCount>>> {
    if d == 0 {
        return Err(Error::Domain("need at least one coordinate".into()));
    }
    let work = d
        .saturating_mul((n + 1).saturating_mul(n + 1))
        .saturating_mul(k + 2);
    guards.check("dp-work", work, guards.dp_work)?;
    let nn = n as usize;
    let kk = k as usize;
    let mut dp = vec![vec![BigCount::zero(); nn + 1]; nn + 1];
    dp[0][0] = BigCount::one();
    for _ in 0..d {
        let mut prefix: Vec<Vec<BigCount>> = Vec::with_capacity(nn + 1);
        prefix.push(dp[0].clone());
        for t in 1..=nn {
            let row: Vec<BigCount> = (0..=nn).map(|s| &prefix[t - 1][s] + &dp[t][s]).collect();
            prefix.push(row);
        }
        let mut next = vec![vec![BigCount::zero(); nn + 1]; nn + 1];
        for t in 0..=nn {
            for s in 0..=t {
                let mut acc = dp[t][s].clone();
                let wmax = kk.min(t).min(s);
                for w in 1..=wmax {
                    acc += &dp[t - w][s - w] * 2u32;
                }
                if t > kk {
                    acc += &prefix[t - kk - 1][s] * 2u32;
                }
                next[t][s] = acc;
            }
        }
        dp = next;
    }
    Ok(dp)
}

/// Distribution of the small-coordinate l1 mass: entry s counts the points
/// of B_n (or S_n when `surface`) whose coordinates with absolute value at
/// most k sum, in absolute value, to exactly s.
pub fn deficit_profile(d: u64, n: u64, k: u64, surface: bool) -> Result<Vec<BigCount>> {
    deficit_profile_with_guards(d, n, k, surface, &Guards::default())
}

/// [`deficit_profile`] with caller-supplied guards.
pub fn deficit_profile_with_guards(
    d: u64,
    n: u64,
    k: u64,
    surface: bool,
    guards: &Guards,
) -> Result<Vec<BigCount>> {
    let dp = deficit_dp(d, n, k, guards)?;
    let nn = n as usize;
    let profile: Vec<BigCount> = (0..=nn)
        .map(|s| {
            if surface {
                dp[nn][s].clone()
            } else {
                dp.iter().map(|row| &row[s]).sum()
            }
        })
        .collect();
    debug_assert_eq!(
        profile.iter().sum::<BigCount>(),
        if surface { sphere_count(d, n) } else { delannoy(d, n) },
        "profile must partition the point set"
    );
    Ok(profile)
}

/// Counts the points of B_n (or S_n when `surface`) whose small-coordinate
/// l1 mass is at most n - a: the points that fail to concentrate at least
/// n - a of their norm on coordinates larger than k would be the
/// complement, so a large `a` should leave few bad points.
pub fn deficit_count(d: u64, n: u64, k: u64, a: u64, surface: bool) -> Result<ConcentrationReport> {
    deficit_count_with_guards(d, n, k, a, surface, &Guards::default())
}

/// [`deficit_count`] with caller-supplied guards.
pub fn deficit_count_with_guards(
    d: u64,
    n: u64,
    k: u64,
    a: u64,
    surface: bool,
    guards: &Guards,
) -> Result<ConcentrationReport> {
    if a > n {
        return Err(Error::Domain(format!("deficit a = {a} exceeds the radius n = {n}")));
    }
    let profile = deficit_profile_with_guards(d, n, k, surface, guards)?;
    let bad_count: BigCount = profile[..=(n - a) as usize].iter().sum();
    let total: BigCount = profile.iter().sum();
    debug_assert!(bad_count <= total);
    Ok(ConcentrationReport {
        d,
        n,
        detail: format!(
            "small-part l1 mass (|x_i| <= {k}) at most {} on the {}",
            n - a,
            if surface { "sphere" } else { "ball" }
        ),
        bad_count,
        total,
    })
}

/// Smallest a in 0..=n for which the deficit fraction drops to `target`,
/// or None if even a = n leaves too many bad points.  One DP serves the
/// whole search because the profile carries every a at once.
pub fn smallest_deficit_a(
    d: u64,
    n: u64,
    k: u64,
    surface: bool,
    target: f64,
) -> Result<Option<u64>> {
    let profile = deficit_profile(d, n, k, surface)?;
    let total: BigCount = profile.iter().sum();
    let mut bad = total.clone();
    for a in 0..=n {
        if count_ratio(&bad, &total) <= target {
            return Ok(Some(a));
        }
        bad -= &profile[(n - a) as usize];
    }
    Ok(None)
}

/// Counts the sphere points with at most n/2 coordinates equal to +-1.
///
/// A DP over (used budget, count of +-1 coordinates) with the count
/// clamped just above the n/2 threshold, so the table stays narrow.
pub fn few_ones_count(d: u64, n: u64) -> Result<ConcentrationReport> {
    few_ones_count_with_guards(d, n, &Guards::default())
}

/// [`few_ones_count`] with caller-supplied guards.
pub fn few_ones_count_with_guards(d: u64, n: u64, guards: &Guards) -> Result<ConcentrationReport> {
    if d == 0 {
        return Err(Error::Domain("need at least one coordinate".into()));
    }
    let work = d.saturating_mul((n + 1).saturating_mul(n + 1));
    guards.check("dp-work", work, guards.dp_work)?;
    let nn = n as usize;
    let cap = nn / 2 + 1;
    let mut dp = vec![vec![BigCount::zero(); cap + 1]; nn + 1];
    dp[0][0] = BigCount::one();
    for _ in 0..d {
        let mut prefix: Vec<Vec<BigCount>> = Vec::with_capacity(nn + 1);
        prefix.push(dp[0].clone());
        for t in 1..=nn {
            let row: Vec<BigCount> = (0..=cap).map(|c| &prefix[t - 1][c] + &dp[t][c]).collect();
            prefix.push(row);
        }
        let mut next = vec![vec![BigCount::zero(); cap + 1]; nn + 1];
        for t in 0..=nn {
            for c in 0..=cap {
                let mut acc = dp[t][c].clone();
                if t >= 1 && c >= 1 {
                    acc += &dp[t - 1][c - 1] * 2u32;
                }
                if t >= 1 && c == cap {
                    // The clamp absorbs counts beyond the threshold.
                    acc += &dp[t - 1][cap] * 2u32;
                }
                if t >= 2 {
                    acc += &prefix[t - 2][c] * 2u32;
                }
                next[t][c] = acc;
            }
        }
        dp = next;
    }
    let bad_count: BigCount = dp[nn][..cap].iter().sum();
    let total: BigCount = dp[nn].iter().sum();
    debug_assert_eq!(total, sphere_count(d, n));
    Ok(ConcentrationReport {
        d,
        n,
        detail: format!("at most {} coordinates equal to +-1 on the sphere", nn / 2),
        bad_count,
        total,
    })
}

/// Counts the ball points with some coordinate of absolute value at least
/// 6k: the whole ball minus the box-truncated ball of per-coordinate bound
/// ceil(6k) - 1.  k may be fractional; only the threshold matters.
pub fn large_coordinate_count(d: u64, n: u64, k: f64) -> Result<ConcentrationReport> {
    large_coordinate_count_with_guards(d, n, k, &Guards::default())
}

/// [`large_coordinate_count`] with caller-supplied guards.
pub fn large_coordinate_count_with_guards(
    d: u64,
    n: u64,
    k: f64,
    guards: &Guards,
) -> Result<ConcentrationReport> {
    if !k.is_finite() || 6.0 * k < 1.0 {
        return Err(Error::Domain(format!("need 6k >= 1, got k = {k}")));
    }
    let threshold = (6.0 * k).ceil() as u64;
    let total = delannoy(d, n);
    let bounded = bounded_ball_count_with_guards(d, n, threshold - 1, guards)?;
    debug_assert!(bounded <= total);
    Ok(ConcentrationReport {
        d,
        n,
        detail: format!("some coordinate of absolute value >= {threshold} in the ball"),
        bad_count: &total - bounded,
        total,
    })
}

/// Exact ratio of adjacent support-shell counts at offset l above the
/// baseline floor(c sqrt(d)): with l* = floor(c sqrt(d)) + l, the quotient
/// of the counts with d - l* - 1 and d - l* nonzero coordinates.
///
/// Asserts the closed form
/// (d - l*)^2 / (2 (l* + 1) (n - d + l* + 1)) against the quotient, which
/// pins both the shell counter and the algebra.
pub fn shell_ratio(d: u64, n: u64, c: f64, l: u64) -> Result<BigRational> {
    if !c.is_finite() || c < 0.0 {
        return Err(Error::Domain(format!("need a finite scale c >= 0, got {c}")));
    }
    if l == 0 {
        return Err(Error::Domain("shell offset l starts at 1".into()));
    }
    let l_star = (c * (d as f64).sqrt()).floor() as u64 + l;
    if l_star + 1 > d {
        return Err(Error::Domain(format!(
            "shell index l* = {l_star} leaves no support in dimension {d}"
        )));
    }
    if n + l_star < d || n + l_star == d {
        return Err(Error::Domain(format!(
            "radius {n} cannot reach support size {} in dimension {d}",
            d - l_star
        )));
    }
    let s = d - l_star;
    let upper = support_shell_count(d, s - 1, n);
    let lower = support_shell_count(d, s, n);
    let ratio = BigRational::new(BigInt::from(upper), BigInt::from(lower));
    let closed = BigRational::new(
        BigInt::from(s) * BigInt::from(s),
        BigInt::from(2u64) * BigInt::from(l_star + 1) * BigInt::from(n - d + l_star + 1),
    );
    assert_eq!(ratio, closed, "shell quotient must match its closed form");
    Ok(ratio)
}

/// Exact second moment of one coordinate over the ball, with its ratio to
/// the squared aspect ratio (n/d)^2.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondMomentReport {
    pub d: u64,
    pub n: u64,
    /// sum_{x in B_n} x_1^2 / |B_n|, exact.
    pub moment: BigRational,
    /// moment / (n/d)^2; 0 by convention when n = 0.
    pub ratio_to_alpha_sq: f64,
}

/// Computes the exact second moment of the first coordinate over the ball:
/// points with x_1 = +-j for j >= 1 number 2 D(d-1, n-j) each, so the
/// numerator is sum_j j^2 2 D(d-1, n-j).
pub fn second_moment(d: u64, n: u64) -> Result<SecondMomentReport> {
    if d == 0 {
        return Err(Error::Domain("need at least one coordinate".into()));
    }
    let table = delannoy_table(d, n);
    let prev = &table[(d - 1) as usize];
    let mut numerator = BigCount::zero();
    for j in 1..=n {
        let jj = BigCount::from(j) * BigCount::from(j);
        numerator += jj * &prev[(n - j) as usize] * 2u32;
    }
    let total = table[d as usize][n as usize].clone();
    let moment = BigRational::new(BigInt::from(numerator.clone()), BigInt::from(total.clone()));
    debug_assert!(!moment.is_negative());
    let ratio_to_alpha_sq = if n == 0 {
        0.0
    } else {
        let dd = BigCount::from(d) * BigCount::from(d);
        let nsq = BigCount::from(n) * BigCount::from(n);
        count_ratio(&(numerator * dd), &(total * nsq))
    };
    Ok(SecondMomentReport {
        d,
        n,
        moment,
        ratio_to_alpha_sq,
    })
}

/// Monte Carlo estimate of a central limit tail probability.
#[derive(Debug, Clone, PartialEq)]
pub struct CltTailReport {
    pub d_star: u64,
    pub c: f64,
    /// The (negative) integer threshold -(floor(sqrt(2 c^2 d*)) + 1).
    pub threshold: i64,
    pub samples: u64,
    pub hits: u64,
    /// Empirical probability that a sum of 2 d* uniforms on [-1/2, 1/2]
    /// lands at or below the threshold.
    pub estimate: f64,
    /// Binomial standard error sqrt(p (1 - p) / samples).
    pub stderr: f64,
    /// The Gaussian prediction Phi(threshold / sqrt(2 d* / 12)).
    pub gaussian: f64,
}

/// Standard normal CDF.
fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

const CLT_SHARD: u64 = 65_536;

/// Estimates P(U_1 + ... + U_{2 d*} <= -(floor(sqrt(2 c^2 d*)) + 1)) for
/// independent uniforms on [-1/2, 1/2] by seeded Monte Carlo, alongside
/// the Gaussian approximation for the same threshold.
///
/// Sampling is sharded: a seeder stream derives one sub-seed per shard of
/// 65536 draws, so the result is a pure function of the arguments.
pub fn clt_tail_probability(d_star: u64, c: f64, samples: u64, seed: u64) -> Result<CltTailReport> {
    if d_star == 0 {
        return Err(Error::Domain("need d* >= 1".into()));
    }
    if !c.is_finite() || c < 0.0 {
        return Err(Error::Domain(format!("need a finite scale c >= 0, got {c}")));
    }
    if samples < 10_000 {
        return Err(Error::Domain(format!(
            "need at least 10000 samples for a usable tail estimate, got {samples}"
        )));
    }
    let threshold = -(((2.0 * c * c * d_star as f64).sqrt().floor()) as i64 + 1);
    let shards = samples.div_ceil(CLT_SHARD);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    let mut remaining = samples;
    let terms = 2 * d_star as usize;
    for _ in 0..shards {
        let sub_seed: u64 = seeder.gen();
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
        let batch = remaining.min(CLT_SHARD);
        remaining -= batch;
        for _ in 0..batch {
            let mut sum = 0.0f64;
            for _ in 0..terms {
                sum += rng.gen_range(-0.5..0.5);
            }
            if sum <= threshold as f64 {
                hits += 1;
            }
        }
    }
    let estimate = hits as f64 / samples as f64;
    let stderr = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    let sigma = (2.0 * d_star as f64 / 12.0).sqrt();
    Ok(CltTailReport {
        d_star,
        c,
        threshold,
        samples,
        hits,
        estimate,
        stderr,
        gaussian: normal_cdf(threshold as f64 / sigma),
    })
}
