//! Exact lattice-point counts for the discrete l1 ball ("cross-polytope").
//!
//! Everything here is integer-exact, built on arbitrary-precision counts:
//!
//! * [`delannoy`]: D(d,n) = #{x in Z^d : |x|_1 <= n}, via the closed sum
//!   D(d,n) = sum_k 2^k C(d,k) C(n,k).
//! * [`delannoy_by_recurrence`] / [`delannoy_table`]: the same numbers from
//!   D(d,n) = D(d-1,n) + D(d,n-1) + D(d-1,n-1), used as an internal
//!   cross-check and for bulk tables.
//! * [`sphere_count`]: #{x : |x|_1 = n} as a difference of ball counts.
//! * [`support_shell_count`]: points with exactly s nonzero coordinates.
//! * [`bounded_ball_count`]: ball points with every |x_i| <= m, by a
//!   per-coordinate budget DP.
//! * [`composition_class_count`]: size of a symmetry class of points with a
//!   prescribed multiset of nonzero absolute values.
//! * [`enumerate_ball`]: the points themselves, lexicographically, as a lazy
//!   iterator behind a size guard.
//!
//! Conventions: d = 0 gives the one-point lattice {()}, so every count with
//! d = 0 is 1; counts with n = 0 are likewise 1 (only the origin).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Guards, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// A point of Z^d as a coordinate vector of length d.
pub type LatticePoint = Vec<i64>;

/// Binomial coefficient C(n, k) by a multiplicative running product.
///
/// Each intermediate product C(n,0), C(n,1), ... is itself a binomial
/// coefficient, so every division below is exact.
pub(crate) fn binomial(n: u64, k: u64) -> BigCount {
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 0..k {
        acc = acc * BigCount::from(n - i) / BigCount::from(i + 1);
    }
    acc
}

/// Number of lattice points in the closed l1 ball of radius n in Z^d:
///
/// D(d,n) = sum_{k=0}^{min(d,n)} 2^k C(d,k) C(n,k).
///
/// The k-th term counts points with exactly k nonzero coordinates: choose
/// the support (C(d,k)), the signs (2^k), and the positive magnitudes
/// summing to at most n (C(n,k)).  Symmetric in d and n, equal to 1 when
/// either argument is 0.
pub fn delannoy(d: u64, n: u64) -> BigCount {
    let kmax = d.min(n);
    let mut total = BigCount::zero();
    let mut c_d = BigCount::one(); // C(d,k), updated multiplicatively
    let mut c_n = BigCount::one(); // C(n,k)
    let mut pow2 = BigCount::one(); // 2^k
    for k in 0..=kmax {
        if k > 0 {
            c_d = c_d * BigCount::from(d - k + 1) / BigCount::from(k);
            c_n = c_n * BigCount::from(n - k + 1) / BigCount::from(k);
            pow2 *= BigCount::from(2u32);
        }
        total += &pow2 * &c_d * &c_n;
    }
    // Cheap inputs are cross-checked against the independent recurrence.
    debug_assert!(
        d > 16 || n > 16 || total == delannoy_by_recurrence(d, n),
        "sum formula disagrees with recurrence at d={d}, n={n}"
    );
    total
}

/// D(d,n) from the three-term recurrence
/// D(d,n) = D(d-1,n) + D(d,n-1) + D(d-1,n-1), D = 1 on the axes.
///
/// Independent of [`delannoy`]; O(d*n) additions.
pub fn delannoy_by_recurrence(d: u64, n: u64) -> BigCount {
    delannoy_table(d, n)
        .pop()
        .and_then(|mut row| row.pop())
        .expect("table is nonempty")
}

/// Full table T[i][j] = D(i,j) for 0 <= i <= d, 0 <= j <= n, by the
/// recurrence. The cheap way to get many counts at once.
pub fn delannoy_table(d: u64, n: u64) -> Vec<Vec<BigCount>> {
    let (d, n) = (d as usize, n as usize);
    let mut table: Vec<Vec<BigCount>> = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let v = if i == 0 || j == 0 {
                BigCount::one()
            } else {
                &table[i - 1][j] + &row[j - 1] + &table[i - 1][j - 1]
            };
            row.push(v);
        }
        table.push(row);
    }
    table
}

/// Number of lattice points with |x|_1 exactly n in Z^d:
/// the ball count difference D(d,n) - D(d,n-1), or 1 when n = 0.
pub fn sphere_count(d: u64, n: u64) -> BigCount {
    if n == 0 {
        return BigCount::one();
    }
    delannoy(d, n) - delannoy(d, n - 1)
}

/// Points of the l1 ball of radius n in Z^d with exactly s nonzero
/// coordinates: 2^s C(d,s) C(n,s).  Choose the support (C(d,s)), a sign per
/// nonzero coordinate (2^s), and positive magnitudes with sum at most n
/// (C(n,s) compositions-with-slack).  Summed over s this recovers the
/// closed form of [`delannoy`].
///
/// Returns 0 when s > min(d, n); equals 1 when s = 0.
pub fn support_shell_count(d: u64, s: u64, n: u64) -> BigCount {
    if s > d.min(n) {
        return BigCount::zero();
    }
    let mut pow2 = BigCount::one();
    for _ in 0..s {
        pow2 *= BigCount::from(2u32);
    }
    pow2 * binomial(d, s) * binomial(n, s)
}

/// Number of points with |x|_1 <= n and every coordinate bounded,
/// |x_i| <= m, computed by a budget dynamic program.
///
/// The generating polynomial of a single coordinate by used budget is
/// 1 + 2z + ... + 2z^m; convolving it d times and summing coefficients of
/// z^0..z^n gives the count.  Exact; O(d * n * min(n,m)) big-integer ops,
/// behind the `dp-work` guard.
pub fn bounded_ball_count(d: u64, n: u64, m: u64) -> Result<BigCount> {
    bounded_ball_count_with_guards(d, n, m, &Guards::default())
}

/// [`bounded_ball_count`] with caller-supplied guards.
pub fn bounded_ball_count_with_guards(
    d: u64,
    n: u64,
    m: u64,
    guards: &Guards,
) -> Result<BigCount> {
    let reach = n.min(m);
    guards.check(
        "dp-work",
        d.saturating_mul(n.max(1)).saturating_mul(reach.max(1)),
        guards.dp_work,
    )?;
    let n_us = n as usize;
    // dp[t] = number of prefixes using l1 budget exactly t.
    let mut dp = vec![BigCount::zero(); n_us + 1];
    dp[0] = BigCount::one();
    for _ in 0..d {
        let mut next = vec![BigCount::zero(); n_us + 1];
        for t in 0..=n_us {
            if dp[t].is_zero() {
                continue;
            }
            next[t] += &dp[t];
            let hi = reach.min((n_us - t) as u64) as usize;
            for w in 1..=hi {
                next[t + w] += &dp[t] * 2u32;
            }
        }
        dp = next;
    }
    Ok(dp.into_iter().sum())
}

/// Size of the class of l1-sphere-or-ball points whose nonzero coordinates
/// realize a prescribed multiplicity profile (j_1, ..., j_K): j_k
/// coordinates equal +-k.  With |j| = sum j_k, the class has
///
/// ```text
/// 2^|j| * d! / (j_1! ... j_K! (d - |j|)!)
/// ```
///
/// elements: a multinomial choice of which coordinates carry which
/// magnitude, times a sign per nonzero coordinate.
///
/// Errors if |j| > d (the profile does not fit in d coordinates).
pub fn composition_class_count(d: u64, profile: &[u64]) -> Result<BigCount> {
    let support: u64 = profile.iter().sum();
    if support > d {
        return Err(Error::Domain(format!(
            "profile occupies {support} coordinates but d = {d}"
        )));
    }
    let mut count = BigCount::one();
    let mut remaining = d;
    for &j in profile {
        count *= binomial(remaining, j);
        remaining -= j;
    }
    let mut pow2 = BigCount::one();
    for _ in 0..support {
        pow2 *= BigCount::from(2u32);
    }
    Ok(count * pow2)
}

/// Lazy lexicographic enumeration of the l1 ball points.
///
/// Yields every x in Z^d with |x|_1 <= n in lexicographic order
/// (first coordinate most significant), starting at (-n, 0, ..., 0) and
/// ending at (n, 0, ..., 0).  Guarded: errors if D(d,n) exceeds the
/// enumeration cap.
pub fn enumerate_ball(d: u64, n: u64) -> Result<BallPoints> {
    enumerate_ball_with_guards(d, n, &Guards::default())
}

/// [`enumerate_ball`] with caller-supplied guards.
pub fn enumerate_ball_with_guards(d: u64, n: u64, guards: &Guards) -> Result<BallPoints> {
    let count = delannoy(d, n);
    let cap = BigCount::from(guards.enumeration_points);
    if count > cap {
        return Err(Error::Guard {
            guard: "enumeration-points",
            detail: format!(
                "ball (d={d}, n={n}) holds {count} points, cap is {}",
                guards.enumeration_points
            ),
        });
    }
    Ok(BallPoints::new(d, n))
}

/// Iterator over l1 ball points in lexicographic order. See [`enumerate_ball`].
#[derive(Debug)]
pub struct BallPoints {
    n: i64,
    cur: Option<LatticePoint>,
}

impl BallPoints {
    fn new(d: u64, n: u64) -> Self {
        let d = d as usize;
        let n = n as i64;
        // Lexicographically smallest point: all budget on the first
        // coordinate, negatively. For d = 0 the single point is ().
        let mut first = vec![0i64; d];
        if d > 0 {
            first[0] = -n;
        }
        BallPoints {
            n,
            cur: Some(first),
        }
    }
}

impl Iterator for BallPoints {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let cur = self.cur.as_mut()?;
        let out = cur.clone();
        let d = cur.len();
        // Advance like an odometer: find the rightmost coordinate that can
        // still grow within its remaining budget, bump it, and reset the
        // tail to its lexicographic minimum (-remaining, 0, ..., 0).
        let mut prefix: i64 = cur.iter().map(|v| v.abs()).sum();
        let mut advanced = false;
        for i in (0..d).rev() {
            prefix -= cur[i].abs();
            let budget = self.n - prefix;
            if cur[i] + 1 <= budget {
                cur[i] += 1;
                let remaining = budget - cur[i].abs();
                if i + 1 < d {
                    cur[i + 1] = -remaining;
                    for v in cur[i + 2..].iter_mut() {
                        *v = 0;
                    }
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            self.cur = None;
        }
        Some(out)
    }
}

/// Natural log of a count, accurate to ~1e-15 relative for any size.
///
/// Counts outgrow f64 range quickly (already around d = n = 370), so ratio
/// and band checks work in log space via the top 53 bits plus the exponent.
pub fn approx_ln(count: &BigCount) -> f64 {
    if count.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = count.bits();
    if bits <= 53 {
        return count.to_f64().expect("fits f64").ln();
    }
    let shift = bits - 53;
    let top = (count >> shift).to_f64().expect("53 bits fit f64");
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn delannoy_axes_are_one() {
        assert_eq!(delannoy(5, 0), BigCount::one());
        assert_eq!(delannoy(0, 7), BigCount::one());
        assert_eq!(delannoy(0, 0), BigCount::one());
    }

    #[test]
    fn delannoy_small_values() {
        // Frozen from direct enumeration of the balls.
        assert_eq!(delannoy(1, 1), BigCount::from(3u32));
        assert_eq!(delannoy(2, 1), BigCount::from(5u32));
        assert_eq!(delannoy(2, 2), BigCount::from(13u32));
        assert_eq!(delannoy(3, 2), BigCount::from(25u32));
        assert_eq!(delannoy(3, 3), BigCount::from(63u32));
    }

    #[test]
    fn recurrence_matches_sum_formula() {
        let table = delannoy_table(12, 12);
        for d in 0..=12u64 {
            for n in 0..=12u64 {
                assert_eq!(table[d as usize][n as usize], delannoy(d, n));
            }
        }
    }

    #[test]
    fn sphere_values() {
        assert_eq!(sphere_count(2, 1), BigCount::from(4u32));
        assert_eq!(sphere_count(9, 0), BigCount::one());
        assert_eq!(sphere_count(2, 2), BigCount::from(8u32));
    }

    #[test]
    fn shell_values() {
        assert_eq!(support_shell_count(2, 1, 2), BigCount::from(8u32));
        assert_eq!(support_shell_count(7, 0, 3), BigCount::one());
        assert_eq!(support_shell_count(2, 2, 2), BigCount::from(4u32));
        assert_eq!(support_shell_count(2, 3, 5), BigCount::zero());
        assert_eq!(support_shell_count(4, 3, 2), BigCount::zero());
    }

    #[test]
    fn shells_partition_the_ball() {
        for d in 0..=8u64 {
            for n in 0..=8u64 {
                let total: BigCount = (0..=d.min(n)).map(|s| support_shell_count(d, s, n)).sum();
                assert_eq!(total, delannoy(d, n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn bounded_ball_values() {
        assert_eq!(bounded_ball_count(2, 2, 1).unwrap(), BigCount::from(9u32));
        assert_eq!(bounded_ball_count(3, 4, 0).unwrap(), BigCount::one());
        // m >= n bounds nothing.
        assert_eq!(bounded_ball_count(3, 4, 4).unwrap(), delannoy(3, 4));
        assert_eq!(bounded_ball_count(3, 4, 9).unwrap(), delannoy(3, 4));
    }

    #[test]
    fn composition_class_values() {
        assert_eq!(
            composition_class_count(3, &[1, 1]).unwrap(),
            BigCount::from(24u32)
        );
        assert_eq!(composition_class_count(5, &[]).unwrap(), BigCount::one());
        assert_eq!(
            composition_class_count(2, &[1]).unwrap(),
            BigCount::from(4u32)
        );
        assert!(composition_class_count(2, &[2, 1]).is_err());
    }

    #[test]
    fn composition_classes_partition_the_sphere() {
        // Sum of class sizes over profiles with weight sum(k * j_k) = n
        // equals the sphere count. d = 3, n = 4: profiles over values 1..4.
        let d = 3u64;
        let n = 4u64;
        let mut total = BigCount::zero();
        for j1 in 0..=4u64 {
            for j2 in 0..=2u64 {
                for j3 in 0..=1u64 {
                    for j4 in 0..=1u64 {
                        if j1 + 2 * j2 + 3 * j3 + 4 * j4 != n {
                            continue;
                        }
                        if j1 + j2 + j3 + j4 > d {
                            continue;
                        }
                        total += composition_class_count(d, &[j1, j2, j3, j4]).unwrap();
                    }
                }
            }
        }
        assert_eq!(total, sphere_count(d, n));
    }

    #[test]
    fn enumeration_order_d2_n1() {
        let pts: Vec<_> = enumerate_ball(2, 1).unwrap().collect();
        assert_eq!(
            pts,
            vec![
                vec![-1, 0],
                vec![0, -1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0]
            ]
        );
    }

    #[test]
    fn enumeration_count_and_order() {
        for d in 0..=4u64 {
            for n in 0..=5u64 {
                let pts: Vec<_> = enumerate_ball(d, n).unwrap().collect();
                assert_eq!(BigCount::from(pts.len()), delannoy(d, n), "d={d} n={n}");
                for w in pts.windows(2) {
                    assert!(w[0] < w[1], "not strictly lexicographic at {w:?}");
                }
                for p in &pts {
                    let norm: i64 = p.iter().map(|v| v.abs()).sum();
                    assert!(norm <= n as i64);
                }
            }
        }
    }

    #[test]
    fn enumeration_guard_fires() {
        // D(10, 100) is far above the default cap.
        match enumerate_ball(10, 100) {
            Err(Error::Guard { guard, .. }) => assert_eq!(guard, "enumeration-points"),
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn approx_ln_matches_f64_range() {
        let c = delannoy(40, 40);
        let exact = c.to_f64().unwrap().ln();
        assert!((approx_ln(&c) - exact).abs() < 1e-12 * exact.abs());
        // And stays finite far beyond f64 range.
        let big = delannoy(900, 900);
        assert!(big.to_f64().is_none() || big.to_f64() == Some(f64::INFINITY));
        assert!(approx_ln(&big).is_finite());
    }

    proptest! {
        #[test]
        fn prop_symmetry(d in 0u64..40, n in 0u64..40) {
            prop_assert_eq!(delannoy(d, n), delannoy(n, d));
        }

        #[test]
        fn prop_sphere_is_ball_difference(d in 1u64..20, n in 1u64..20) {
            prop_assert_eq!(
                sphere_count(d, n) + delannoy(d, n - 1),
                delannoy(d, n)
            );
        }

        #[test]
        fn prop_ball_monotone_in_n(d in 1u64..20, n in 0u64..20) {
            prop_assert!(delannoy(d, n) < delannoy(d, n + 1));
        }

        #[test]
        fn prop_bounded_monotone_in_m(d in 1u64..6, n in 0u64..10, m in 0u64..10) {
            let lo = bounded_ball_count(d, n, m).unwrap();
            let hi = bounded_ball_count(d, n, m + 1).unwrap();
            prop_assert!(lo <= hi);
            prop_assert!(hi <= delannoy(d, n));
        }
    }
}
