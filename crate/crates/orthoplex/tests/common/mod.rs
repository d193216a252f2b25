//! Brute-force reference counts used by the acceptance gate.
//!
//! Everything here is deliberately independent of the library under test:
//! points come from a plain recursive generator (the library enumerates
//! with an odometer), and every statistic is a filter over the generated
//! list.  Slow and obviously correct, usable up to d <= 5, n <= 7.

/// All x in Z^d with |x|_1 <= n, by recursion on the first coordinate.
pub fn ball_points(d: u64, n: u64) -> Vec<Vec<i64>> {
    if d == 0 {
        return vec![Vec::new()];
    }
    let mut points = Vec::new();
    let bound = n as i64;
    for first in -bound..=bound {
        for mut rest in ball_points(d - 1, n - first.unsigned_abs()) {
            rest.insert(0, first);
            points.push(rest);
        }
    }
    points
}

pub fn l1(point: &[i64]) -> u64 {
    point.iter().map(|v| v.unsigned_abs()).sum()
}

pub fn sphere_count(d: u64, n: u64) -> u64 {
    ball_points(d, n)
        .iter()
        .filter(|p| l1(p) == n)
        .count() as u64
}

/// Ball points with exactly s nonzero coordinates.
pub fn shell_count(d: u64, s: u64, n: u64) -> u64 {
    ball_points(d, n)
        .iter()
        .filter(|p| p.iter().filter(|v| **v != 0).count() as u64 == s)
        .count() as u64
}

/// Ball points with every |x_i| <= m.
pub fn bounded_count(d: u64, n: u64, m: u64) -> u64 {
    ball_points(d, n)
        .iter()
        .filter(|p| p.iter().all(|v| v.unsigned_abs() <= m))
        .count() as u64
}

/// The multiplicity profile of a point: entry k-1 counts the coordinates
/// of absolute value k, trimmed of trailing zeros.
pub fn profile_of(point: &[i64]) -> Vec<u64> {
    let max = point.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0);
    let mut profile = vec![0u64; max as usize];
    for v in point {
        let a = v.unsigned_abs();
        if a > 0 {
            profile[a as usize - 1] += 1;
        }
    }
    profile
}

/// Ball points whose multiplicity profile equals `profile` exactly.
pub fn class_count(d: u64, n: u64, profile: &[u64]) -> u64 {
    let mut trimmed = profile.to_vec();
    while trimmed.last() == Some(&0) {
        trimmed.pop();
    }
    ball_points(d, n)
        .iter()
        .filter(|p| profile_of(p) == trimmed)
        .count() as u64
}

/// Ball (or sphere) points whose small-coordinate l1 mass, summed over
/// coordinates with |x_i| <= k, is at most n - a.
pub fn deficit_count(d: u64, n: u64, k: u64, a: u64, surface: bool) -> u64 {
    ball_points(d, n)
        .iter()
        .filter(|p| {
            if surface && l1(p) != n {
                return false;
            }
            let small: u64 = p
                .iter()
                .map(|v| v.unsigned_abs())
                .filter(|&v| v <= k)
                .sum();
            small <= n - a
        })
        .count() as u64
}

/// Sphere points with at most n/2 coordinates equal to +-1.
pub fn few_ones_count(d: u64, n: u64) -> u64 {
    ball_points(d, n)
        .iter()
        .filter(|p| {
            l1(p) == n && p.iter().filter(|v| v.unsigned_abs() == 1).count() as u64 <= n / 2
        })
        .count() as u64
}
