//! Fourier symbols of the ball and sphere averaging operators.
//!
//! Frequencies live on the torus, normalized to [-1/2, 1/2)^d, with the
//! character convention e(y) = exp(-2 pi i y).  The symbols are the
//! normalized exponential sums
//!
//! ```text
//! m_n(xi) = |B_n|^-1 sum_{|x|_1 <= n} e(x . xi),
//! s_n(xi) = |S_n|^-1 sum_{|x|_1 = n} e(x . xi),
//! ```
//!
//! computed exactly (up to rounding) by a budget dynamic program: sweep
//! coordinates, convolving a vector indexed by used l1 budget with the
//! per-coordinate profile.  Grouping +-k makes every profile entry real,
//! 2 cos(2 pi k xi_i), so the symbols are real; the DP runs alongside an
//! identical xi = 0 run (whose totals are the counts) and both vectors are
//! rescaled together, which normalizes without ever forming the
//! astronomically large raw sums.
//!
//! The scale for decay statements is the sin-norm
//! omega(xi) = (sum_i sin^2(pi xi_i))^(1/2), the natural torus-periodic
//! substitute for |xi|; [`torus_partition`] splits the torus into the
//! region closer to 0 than to its antipode (all coordinates shifted by
//! 1/2) and its complement, and [`multiplier_bound_scan`] measures the
//! empirical constants in the local bound |m_n - 1| <~ (alpha omega)^2
//! and the global bound |m_n| <~ (alpha omega)^-1 + alpha^(-1/7).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

use crate::counts::{composition_class_count, enumerate_ball_with_guards};
use crate::error::{Error, Guards, Result};

/// A frequency on the torus, each coordinate reduced to [-1/2, 1/2).
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyPoint {
    coords: Vec<f64>,
}

/// Reduce a real number mod 1 into [-1/2, 1/2).
fn reduce(x: f64) -> f64 {
    let t = x.rem_euclid(1.0);
    if t >= 0.5 {
        t - 1.0
    } else {
        t
    }
}

impl FrequencyPoint {
    /// Builds a frequency, reducing every coordinate mod 1. The symbols
    /// only depend on coordinates mod 1, so nothing is lost.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Domain("frequency needs at least one coordinate".into()));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("non-finite frequency {coords:?}")));
        }
        Ok(FrequencyPoint {
            coords: coords.into_iter().map(reduce).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// The antipodal frequency: every coordinate shifted by 1/2.
    pub fn antipode(&self) -> FrequencyPoint {
        FrequencyPoint {
            coords: self.coords.iter().map(|c| reduce(c + 0.5)).collect(),
        }
    }
}

/// The sin-norm omega(xi) = sqrt(sum_i sin^2(pi xi_i)).
pub fn torus_norm(xi: &FrequencyPoint) -> f64 {
    xi.coords
        .iter()
        .map(|c| (PI * c).sin().powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Which half of the torus a frequency falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Closer (in sin-norm) to 0 than to the antipodal point.
    Central,
    /// Closer to the antipode.
    Outer,
}

impl Region {
    pub fn name(self) -> &'static str {
        match self {
            Region::Central => "central",
            Region::Outer => "outer",
        }
    }
}

/// Central iff omega(xi) <= omega(xi + (1/2,...,1/2)); ties are central.
pub fn torus_partition(xi: &FrequencyPoint) -> Region {
    if torus_norm(xi) <= torus_norm(&xi.antipode()) {
        Region::Central
    } else {
        Region::Outer
    }
}

/// Which exponential sum a symbol evaluation normalizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    Ball,
    Sphere,
}

/// Core budget DP. Returns (value at xi, nonnegative reference total), both
/// in a common arbitrary rescaling, for the requested kind.
fn symbol_dp(d: u64, n: u64, xi: &FrequencyPoint, kind: SymbolKind, guards: &Guards) -> Result<f64> {
    if xi.dim() != d as usize {
        return Err(Error::Domain(format!(
            "frequency has {} coordinates, expected d = {d}",
            xi.dim()
        )));
    }
    let work = d.saturating_mul((n + 1).saturating_mul(n + 1));
    guards.check("dp-work", work, guards.dp_work)?;
    let nn = n as usize;
    let mut cur = vec![0.0f64; nn + 1];
    cur[0] = 1.0;
    let mut reference = cur.clone();
    let mut profile = vec![0.0f64; nn + 1];
    for &c in xi.coords() {
        profile[0] = 1.0;
        for (w, slot) in profile.iter_mut().enumerate().skip(1) {
            *slot = 2.0 * (2.0 * PI * w as f64 * c).cos();
        }
        let mut next = vec![0.0f64; nn + 1];
        let mut ref_next = vec![0.0f64; nn + 1];
        for t in 0..=nn {
            let mut acc = 0.0;
            let mut ref_acc = 0.0;
            for w in 0..=t {
                acc += cur[t - w] * profile[w];
                let rp = if w == 0 { 1.0 } else { 2.0 };
                ref_acc += reference[t - w] * rp;
            }
            next[t] = acc;
            ref_next[t] = ref_acc;
        }
        // Joint rescale: keeps the ratio intact and both vectors in range
        // no matter how large the raw counts get.
        let scale = ref_next.iter().cloned().fold(0.0f64, f64::max);
        debug_assert!(scale > 0.0);
        for (a, b) in next.iter_mut().zip(ref_next.iter_mut()) {
            *a /= scale;
            *b /= scale;
        }
        cur = next;
        reference = ref_next;
    }
    let (num, den) = match kind {
        SymbolKind::Ball => (cur.iter().sum::<f64>(), reference.iter().sum::<f64>()),
        SymbolKind::Sphere => (cur[nn], reference[nn]),
    };
    let value = num / den;
    debug_assert!(value.abs() <= 1.0 + 1e-9, "symbol out of range: {value}");
    Ok(value)
}

/// Ball symbol m_n(xi). Real by the +-k pairing; returned as complex with
/// zero imaginary part for interface uniformity.
pub fn multiplier_m(d: u64, n: u64, xi: &FrequencyPoint) -> Result<Complex64> {
    multiplier_m_with_guards(d, n, xi, &Guards::default())
}

/// [`multiplier_m`] with caller-supplied guards.
pub fn multiplier_m_with_guards(
    d: u64,
    n: u64,
    xi: &FrequencyPoint,
    guards: &Guards,
) -> Result<Complex64> {
    Ok(Complex64::new(symbol_dp(d, n, xi, SymbolKind::Ball, guards)?, 0.0))
}

/// Sphere symbol s_n(xi).
pub fn multiplier_s(d: u64, n: u64, xi: &FrequencyPoint) -> Result<Complex64> {
    multiplier_s_with_guards(d, n, xi, &Guards::default())
}

/// [`multiplier_s`] with caller-supplied guards.
pub fn multiplier_s_with_guards(
    d: u64,
    n: u64,
    xi: &FrequencyPoint,
    guards: &Guards,
) -> Result<Complex64> {
    Ok(Complex64::new(symbol_dp(d, n, xi, SymbolKind::Sphere, guards)?, 0.0))
}

/// Reference evaluation by direct summation over the enumerated points.
///
/// Exponential cost in practice (it walks the whole ball), kept solely to
/// validate the DP against; shares no code with it.
pub fn direct_symbol(d: u64, n: u64, xi: &FrequencyPoint, kind: SymbolKind) -> Result<Complex64> {
    if xi.dim() != d as usize {
        return Err(Error::Domain(format!(
            "frequency has {} coordinates, expected d = {d}",
            xi.dim()
        )));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    let mut count = 0u64;
    for p in enumerate_ball_with_guards(d, n, &Guards::default())? {
        let norm: i64 = p.iter().map(|v| v.abs()).sum();
        if kind == SymbolKind::Sphere && norm != n as i64 {
            continue;
        }
        let dot: f64 = p
            .iter()
            .zip(xi.coords())
            .map(|(&x, &c)| x as f64 * c)
            .sum();
        // e(y) = exp(-2 pi i y)
        acc += Complex64::from_polar(1.0, -2.0 * PI * dot);
        count += 1;
    }
    Ok(acc / count as f64)
}

/// Average of e(x . xi) over one symmetry class: the points whose nonzero
/// coordinates realize the multiplicity profile (j_1, ..., j_K), j_k
/// coordinates equal to +-k.
///
/// Brute force over the value box {-K..K}^d, supported for d <= 3; the
/// matched point count is asserted against the closed-form class size.
pub fn beta_multiplier(d: u64, profile: &[u64], xi: &FrequencyPoint) -> Result<Complex64> {
    if d == 0 || d > 3 {
        return Err(Error::Domain(format!(
            "class averages are enumerated brute-force, d <= 3 only (got {d})"
        )));
    }
    if xi.dim() != d as usize {
        return Err(Error::Domain(format!(
            "frequency has {} coordinates, expected d = {d}",
            xi.dim()
        )));
    }
    let class_size = composition_class_count(d, profile)?;
    let k = profile.len() as i64;
    let side = 2 * k + 1;
    let total = (side as u64).pow(d as u32);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut matched = 0u64;
    let mut point = vec![-k; d as usize];
    for _ in 0..total {
        let mut counts = vec![0u64; k as usize];
        let mut ok = true;
        for &v in &point {
            if v != 0 {
                counts[(v.abs() - 1) as usize] += 1;
            }
        }
        for (have, want) in counts.iter().zip(profile.iter()) {
            if have != want {
                ok = false;
                break;
            }
        }
        if ok {
            matched += 1;
            let dot: f64 = point
                .iter()
                .zip(xi.coords())
                .map(|(&x, &c)| x as f64 * c)
                .sum();
            acc += Complex64::from_polar(1.0, -2.0 * PI * dot);
        }
        for i in (0..point.len()).rev() {
            if point[i] < k {
                point[i] += 1;
                break;
            }
            point[i] = -k;
        }
    }
    assert_eq!(
        crate::counts::BigCount::from(matched),
        class_size,
        "matched points disagree with the closed-form class size"
    );
    Ok(acc / matched as f64)
}

/// Empirical constants for the symbol decay bounds at one (d, n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundScan {
    pub d: u64,
    pub n: u64,
    pub alpha: f64,
    /// max |m_n - 1| / (alpha omega)^2 over sampled xi with alpha omega <= 1.
    pub local_constant: f64,
    /// max |m_n| / ((alpha omega)^-1 + alpha^(-1/7)) over sampled xi != 0.
    pub global_constant: f64,
    /// How many samples informed each constant.
    pub local_points: u32,
    pub global_points: u32,
}

/// Samples the torus and measures the constants of the local and global
/// symbol bounds. Requires the dense regime n > d.
///
/// The sample plan is deterministic given the seed: half the budget
/// uniform over the torus, a quarter axis-aligned, a quarter stratified
/// toward small norms (uniform draws scaled by 2^-j), which is what feeds
/// the local bound in the alpha omega <= 1 region.
pub fn multiplier_bound_scan(d: u64, n: u64, samples: u32, seed: u64) -> Result<BoundScan> {
    multiplier_bound_scan_with_guards(d, n, samples, seed, &Guards::default())
}

/// [`multiplier_bound_scan`] with caller-supplied guards.
pub fn multiplier_bound_scan_with_guards(
    d: u64,
    n: u64,
    samples: u32,
    seed: u64,
    guards: &Guards,
) -> Result<BoundScan> {
    if d == 0 || n <= d {
        return Err(Error::Domain(format!(
            "bound scan targets the dense regime n > d, got d={d}, n={n}"
        )));
    }
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let alpha = n as f64 / d as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let du = d as usize;
    let mut points: Vec<FrequencyPoint> = Vec::with_capacity(samples as usize);
    let uniform = samples / 2;
    let axis = samples / 4;
    let strat = samples - uniform - axis;
    for _ in 0..uniform {
        let coords: Vec<f64> = (0..du).map(|_| rng.gen_range(-0.5..0.5)).collect();
        points.push(FrequencyPoint::new(coords)?);
    }
    for k in 0..axis {
        let i = (k as usize) % du;
        let t: f64 = rng.gen_range(-0.5..0.5);
        let mut coords = vec![0.0; du];
        coords[i] = t;
        points.push(FrequencyPoint::new(coords)?);
    }
    for k in 0..strat {
        let scale = 0.5f64.powi(1 + (k as i32) % 10);
        let coords: Vec<f64> = (0..du)
            .map(|_| rng.gen_range(-0.5..0.5) * scale)
            .collect();
        points.push(FrequencyPoint::new(coords)?);
    }
    let mut local = 0.0f64;
    let mut global = 0.0f64;
    let mut local_points = 0u32;
    let mut global_points = 0u32;
    for xi in &points {
        let omega = torus_norm(xi);
        if omega == 0.0 {
            continue;
        }
        let m = multiplier_m_with_guards(d, n, xi, guards)?.re;
        let scaled = alpha * omega;
        if scaled <= 1.0 {
            local = local.max((m - 1.0).abs() / (scaled * scaled));
            local_points += 1;
        }
        global = global.max(m.abs() / (1.0 / scaled + alpha.powf(-1.0 / 7.0)));
        global_points += 1;
    }
    Ok(BoundScan {
        d,
        n,
        alpha,
        local_constant: local,
        global_constant: global,
        local_points,
        global_points,
    })
}
