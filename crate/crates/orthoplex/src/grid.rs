//! Averaging and maximal operators on dense grid functions.
//!
//! Everything acts on [`GridFunction`]: a real-valued function on the box
//! [-L, L]^d (d <= 4), stored dense, extended by zero outside the box.
//! The operators:
//!
//! * [`ball_average`]: (M_R f)(x) = |B_R|^-1 sum_{|y|_1 <= R} f(x - y);
//! * [`sphere_average`]: the same over |y|_1 = R exactly;
//! * [`maximal_function`]: sup over a set of radii of |average|;
//! * [`operator_norm_probe`] / [`norm_probe_curve`]: empirical l^p
//!   operator-norm lower bounds for the maximal operator, from seeded
//!   trial functions (delta, random signs, random sparse).
//!
//! Zero padding means each computed average equals the true lattice-wide
//! average of the zero-extended function, restricted to the box; since
//! restriction only shrinks l^p norms, every average is an honest l^p
//! contraction on the box, with no boundary caveats.  The stencil touches
//! no padding on the sub-box |x_i| <= L - R (where it "fits").
//!
//! Averages are normalized by exact lattice counts, and kernels come from
//! the exact enumeration, both guarded against oversized requests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counts::{enumerate_ball_with_guards, LatticePoint};
use crate::error::{Error, Guards, Result};

/// Dense function on the lattice box [-L, L]^d, d <= 4, zero outside.
///
/// Sites are indexed lexicographically (first coordinate most
/// significant): flat index = sum_i (x_i + L) * (2L+1)^(d-1-i).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    dim: u32,
    half_width: u32,
    values: Vec<f64>,
}

impl GridFunction {
    /// The zero function on [-L, L]^dim. Guarded by `box-sites`.
    pub fn new(dim: u32, half_width: u32) -> Result<Self> {
        Self::new_with_guards(dim, half_width, &Guards::default())
    }

    /// [`GridFunction::new`] with caller-supplied guards.
    pub fn new_with_guards(dim: u32, half_width: u32, guards: &Guards) -> Result<Self> {
        if dim == 0 || dim > 4 {
            return Err(Error::Domain(format!(
                "grid functions support 1 <= dim <= 4, got {dim}"
            )));
        }
        let side = 2 * half_width as u64 + 1;
        let sites = side.pow(dim);
        guards.check("box-sites", sites, guards.box_sites)?;
        Ok(GridFunction {
            dim,
            half_width,
            values: vec![0.0; sites as usize],
        })
    }

    /// Point mass at the origin.
    pub fn delta(dim: u32, half_width: u32) -> Result<Self> {
        let mut f = Self::new(dim, half_width)?;
        let origin = vec![0i64; dim as usize];
        f.set(&origin, 1.0);
        Ok(f)
    }

    /// Independent +-1 values at every site, seeded.
    pub fn random_signs(dim: u32, half_width: u32, seed: u64) -> Result<Self> {
        let mut f = Self::new(dim, half_width)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in f.values.iter_mut() {
            *v = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        }
        Ok(f)
    }

    /// Sparse +-1 values: each site carries a sign with probability
    /// `density`, else 0. Seeded.
    pub fn random_sparse(dim: u32, half_width: u32, density: f64, seed: u64) -> Result<Self> {
        if !(0.0..=1.0).contains(&density) {
            return Err(Error::Domain(format!(
                "density must lie in [0, 1], got {density}"
            )));
        }
        let mut f = Self::new(dim, half_width)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for v in f.values.iter_mut() {
            if rng.gen_bool(density) {
                *v = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            }
        }
        Ok(f)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn half_width(&self) -> u32 {
        self.half_width
    }

    /// Side length 2L + 1.
    pub fn side(&self) -> usize {
        2 * self.half_width as usize + 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Flat index of a point, or None outside the box.
    pub fn index_of(&self, point: &[i64]) -> Option<usize> {
        assert_eq!(point.len(), self.dim as usize, "dimension mismatch");
        let hw = self.half_width as i64;
        let side = self.side();
        let mut flat = 0usize;
        for &c in point {
            if c < -hw || c > hw {
                return None;
            }
            flat = flat * side + (c + hw) as usize;
        }
        Some(flat)
    }

    /// Coordinates of a flat index.
    pub fn point_of(&self, mut index: usize) -> LatticePoint {
        assert!(index < self.values.len());
        let hw = self.half_width as i64;
        let side = self.side();
        let mut point = vec![0i64; self.dim as usize];
        for c in point.iter_mut().rev() {
            *c = (index % side) as i64 - hw;
            index /= side;
        }
        point
    }

    /// Value at a point; zero outside the box (the padding convention).
    pub fn value(&self, point: &[i64]) -> f64 {
        match self.index_of(point) {
            Some(i) => self.values[i],
            None => 0.0,
        }
    }

    /// Sets a value; panics if the point is outside the box.
    pub fn set(&mut self, point: &[i64], v: f64) {
        let i = self
            .index_of(point)
            .unwrap_or_else(|| panic!("point {point:?} outside the box"));
        self.values[i] = v;
    }

    /// l^p norm over the box; p may be infinite. Requires p >= 1.
    pub fn lp_norm(&self, p: f64) -> f64 {
        assert!(p >= 1.0, "l^p norms need p >= 1, got {p}");
        if p.is_infinite() {
            return self.values.iter().fold(0.0, |m, v| m.max(v.abs()));
        }
        if p == 1.0 {
            return self.values.iter().map(|v| v.abs()).sum();
        }
        if p == 2.0 {
            return self.values.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        self.values
            .iter()
            .map(|v| v.abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// Largest half-width so that a radius-R stencil never touches the
    /// padding: L - R (None if R exceeds L).
    pub fn fitting_half_width(&self, radius: u32) -> Option<u32> {
        self.half_width.checked_sub(radius)
    }
}

/// Ball or sphere averaging.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AverageKind {
    Ball,
    Sphere,
}

impl AverageKind {
    pub fn name(self) -> &'static str {
        match self {
            AverageKind::Ball => "ball",
            AverageKind::Sphere => "sphere",
        }
    }
}

/// The stencil of a given kind and radius, as explicit points.
fn kernel_points(
    dim: u32,
    radius: u32,
    kind: AverageKind,
    guards: &Guards,
) -> Result<Vec<LatticePoint>> {
    let all = enumerate_ball_with_guards(dim as u64, radius as u64, guards)?;
    let pts: Vec<LatticePoint> = match kind {
        AverageKind::Ball => all.collect(),
        AverageKind::Sphere => all
            .filter(|p| p.iter().map(|v| v.abs()).sum::<i64>() == radius as i64)
            .collect(),
    };
    Ok(pts)
}

fn average_with_kernel(f: &GridFunction, points: &[LatticePoint], guards: &Guards) -> Result<GridFunction> {
    let work = (f.values.len() as u64).saturating_mul(points.len() as u64);
    guards.check("dp-work", work, guards.dp_work)?;
    let mut out = GridFunction::new_with_guards(f.dim, f.half_width, guards)?;
    let side = f.side();
    let hw = f.half_width as i64;
    let dim = f.dim as usize;
    let inv = 1.0 / points.len() as f64;
    let mut coords = vec![-hw; dim];
    for idx in 0..f.values.len() {
        let mut acc = 0.0;
        'pts: for y in points {
            let mut flat = 0usize;
            for i in 0..dim {
                let c = coords[i] - y[i];
                if c < -hw || c > hw {
                    continue 'pts; // sample falls in the zero padding
                }
                flat = flat * side + (c + hw) as usize;
            }
            acc += f.values[flat];
        }
        out.values[idx] = acc * inv;
        // Advance site coordinates lexicographically.
        for i in (0..dim).rev() {
            if coords[i] < hw {
                coords[i] += 1;
                break;
            }
            coords[i] = -hw;
        }
    }
    Ok(out)
}

/// (M_R f)(x) = |B_R|^-1 sum_{|y|_1 <= R} f(x-y), zero-padded.
pub fn ball_average(f: &GridFunction, radius: u32) -> Result<GridFunction> {
    ball_average_with_guards(f, radius, &Guards::default())
}

/// [`ball_average`] with caller-supplied guards.
pub fn ball_average_with_guards(
    f: &GridFunction,
    radius: u32,
    guards: &Guards,
) -> Result<GridFunction> {
    let pts = kernel_points(f.dim, radius, AverageKind::Ball, guards)?;
    average_with_kernel(f, &pts, guards)
}

/// The spherical mean over |y|_1 = R exactly; at R = 0 the identity.
pub fn sphere_average(f: &GridFunction, radius: u32) -> Result<GridFunction> {
    sphere_average_with_guards(f, radius, &Guards::default())
}

/// [`sphere_average`] with caller-supplied guards.
pub fn sphere_average_with_guards(
    f: &GridFunction,
    radius: u32,
    guards: &Guards,
) -> Result<GridFunction> {
    let pts = kernel_points(f.dim, radius, AverageKind::Sphere, guards)?;
    average_with_kernel(f, &pts, guards)
}

/// A set of radii for maximal operators, realized to a concrete sorted list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RadiusSet {
    /// 0, 1, ..., max.
    FullRange { max: u32 },
    /// Powers of two up to max: 1, 2, 4, ...
    Dyadic { max: u32 },
    /// Arbitrary radii, deduplicated and sorted on realization.
    Explicit(Vec<u32>),
    /// lo, lo+1, ..., hi.
    Interval { lo: u32, hi: u32 },
}

impl RadiusSet {
    /// The concrete sorted, deduplicated radius list. Errors if empty or
    /// ill-formed.
    pub fn realize(&self) -> Result<Vec<u32>> {
        let mut v: Vec<u32> = match self {
            RadiusSet::FullRange { max } => (0..=*max).collect(),
            RadiusSet::Dyadic { max } => {
                let mut v = Vec::new();
                let mut r = 1u32;
                while r <= *max {
                    v.push(r);
                    match r.checked_mul(2) {
                        Some(next) => r = next,
                        None => break,
                    }
                }
                v
            }
            RadiusSet::Explicit(list) => list.clone(),
            RadiusSet::Interval { lo, hi } => {
                if lo > hi {
                    return Err(Error::Domain(format!(
                        "interval radius set needs lo <= hi, got {lo} > {hi}"
                    )));
                }
                (*lo..=*hi).collect()
            }
        };
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::Domain("empty radius set".into()));
        }
        Ok(v)
    }
}

/// (M_{*,E} f)(x) = sup_{R in E} |(average_R f)(x)|.
///
/// Radii beyond 2 * dim * L are dropped when realizing E: from that
/// distance on, every stencil covers the whole box, the ball averages
/// shrink monotonically in R, and sphere averages vanish.  Errors if
/// nothing remains.
pub fn maximal_function(f: &GridFunction, set: &RadiusSet, kind: AverageKind) -> Result<GridFunction> {
    maximal_function_with_guards(f, set, kind, &Guards::default())
}

/// [`maximal_function`] with caller-supplied guards.
pub fn maximal_function_with_guards(
    f: &GridFunction,
    set: &RadiusSet,
    kind: AverageKind,
    guards: &Guards,
) -> Result<GridFunction> {
    let reach = 2 * f.dim * f.half_width;
    let radii: Vec<u32> = set.realize()?.into_iter().filter(|r| *r <= reach).collect();
    if radii.is_empty() {
        return Err(Error::Domain(format!(
            "no radius in the set is representable on the grid (all exceed {reach})"
        )));
    }
    let mut out = GridFunction::new_with_guards(f.dim, f.half_width, guards)?;
    for r in radii {
        let pts = kernel_points(f.dim, r, kind, guards)?;
        let avg = average_with_kernel(f, &pts, guards)?;
        for (o, a) in out.values.iter_mut().zip(avg.values.iter()) {
            *o = o.max(a.abs());
        }
    }
    Ok(out)
}

/// Support half-width of the trial functions used by the norm probes.
const PROBE_SUPPORT: u32 = 3;

/// Empirical ratios ||M_{*,E_k} f||_p / ||f||_p for the nested prefixes
/// E_1 subset E_2 subset ... of the realized radius set, maximized over a
/// family of seeded trial functions (delta, `trials` random-sign fields,
/// `trials` sparse fields).
///
/// Trial functions live on [-3, 3]^dim and the computation box pads them
/// by the largest radius, so every average is captured in full and the
/// ratios carry no truncation bias.  The curve is nondecreasing by
/// construction; its saturation (rather than growth) as radii accumulate
/// is the empirical signature of a bounded maximal operator.
pub fn norm_probe_curve(
    dim: u32,
    set: &RadiusSet,
    p: f64,
    trials: u32,
    seed: u64,
) -> Result<Vec<f64>> {
    norm_probe_curve_with_guards(dim, set, p, trials, seed, &Guards::default())
}

/// [`norm_probe_curve`] with caller-supplied guards.
pub fn norm_probe_curve_with_guards(
    dim: u32,
    set: &RadiusSet,
    p: f64,
    trials: u32,
    seed: u64,
    guards: &Guards,
) -> Result<Vec<f64>> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("need p >= 1, got {p}")));
    }
    let radii = set.realize()?;
    let rmax = *radii.last().expect("nonempty");
    let half_width = PROBE_SUPPORT + rmax;
    // Build the trial family, all supported in the inner box.
    let mut trial_fns = Vec::new();
    let mut base = GridFunction::new_with_guards(dim, half_width, guards)?;
    let origin = vec![0i64; dim as usize];
    base.set(&origin, 1.0);
    trial_fns.push(base);
    for t in 0..trials {
        let inner = GridFunction::random_signs(dim, PROBE_SUPPORT, seed.wrapping_add(t as u64))?;
        trial_fns.push(embed(&inner, half_width, guards)?);
        let sparse = GridFunction::random_sparse(
            dim,
            PROBE_SUPPORT,
            0.125,
            seed.wrapping_add(1_000_003 + t as u64),
        )?;
        trial_fns.push(embed(&sparse, half_width, guards)?);
    }
    let mut curve = vec![0.0f64; radii.len()];
    for f in &trial_fns {
        let fnorm = f.lp_norm(p);
        if fnorm == 0.0 {
            continue; // an all-zero sparse draw probes nothing
        }
        let mut running = GridFunction::new_with_guards(dim, half_width, guards)?;
        for (k, &r) in radii.iter().enumerate() {
            let pts = kernel_points(dim, r, AverageKind::Ball, guards)?;
            let avg = average_with_kernel(f, &pts, guards)?;
            for (o, a) in running.values.iter_mut().zip(avg.values.iter()) {
                *o = o.max(a.abs());
            }
            curve[k] = curve[k].max(running.lp_norm(p) / fnorm);
        }
    }
    Ok(curve)
}

/// The last point of [`norm_probe_curve`]: the best observed
/// ||M_{*,E} f||_p / ||f||_p over the whole radius set.
pub fn operator_norm_probe(
    dim: u32,
    set: &RadiusSet,
    p: f64,
    trials: u32,
    seed: u64,
) -> Result<f64> {
    let curve = norm_probe_curve(dim, set, p, trials, seed)?;
    Ok(*curve.last().expect("realized set is nonempty"))
}

/// Copies a function into a larger box (same values, wider padding).
fn embed(f: &GridFunction, half_width: u32, guards: &Guards) -> Result<GridFunction> {
    assert!(half_width >= f.half_width);
    let mut out = GridFunction::new_with_guards(f.dim, half_width, guards)?;
    for idx in 0..f.values.len() {
        if f.values[idx] != 0.0 {
            let p = f.point_of(idx);
            out.set(&p, f.values[idx]);
        }
    }
    Ok(out)
}
