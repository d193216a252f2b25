//! Asymptotic estimates for the l1 ball counts, organized by regime.
//!
//! Write alpha = n/d.  The generating function of a single coordinate is
//! h(z) = (1+z)/(1-z), and D(d,n) is the z^n coefficient of h(z)^d/(1-z).
//! The saddle point of h(z)^d z^-n sits at the unique root in (0,1) of
//! 2z = (1-z^2) alpha, namely
//!
//! ```text
//! r = (sqrt(1+alpha^2) - 1)/alpha = alpha/(1 + sqrt(1+alpha^2)),
//! ```
//!
//! and drives everything here:
//!
//! * [`uniform_estimate`] (1 <= n <= d): D(d,n) up to bounded factors is
//!   h(r)^d r^-n / sqrt(n), valid with the same constants across the whole
//!   triangle n <= d.
//! * [`binomial_form_estimate`] (n <= d/2): 2^n C(d,n) exp(n alpha/2 +
//!   n alpha^2/4), the small-alpha expansion of the same quantity.
//! * [`volume_form_estimate`] (n >= 2d): volume of the ball times
//!   exp(d/(12 alpha^2)); the count approaches the volume (2n)^d/d!.
//! * [`pemantle_wilson_estimate`]: the smooth-point asymptotic with its
//!   explicit constant, exact in the limit along fixed alpha; kept as the
//!   sharp comparison point.
//!
//! The correction series g(alpha) = sum b_k alpha^(2k) interpolating
//! between these regimes has b_0 = 1, b_1 = 1/12, b_2 = -3/160;
//! [`b_coefficients`] extracts the b_k numerically and [`b_series`] sums
//! them.  All estimates report their natural log as the authoritative
//! value; the direct value may overflow to infinity for large d, n.

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

/// Everything about the saddle point of h(z)^d z^-n at a given (d, n).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleParams {
    pub d: u64,
    pub n: u64,
    /// n/d.
    pub alpha: f64,
    /// Saddle radius in (0, 1): the root of 2z = (1-z^2) alpha.
    pub r: f64,
    /// h(r) = (1+r)/(1-r).
    pub h_r: f64,
    /// Second derivative at the saddle of
    /// f(z) = log(1+z) - log(1-z) - alpha log z; equals
    /// alpha^2/r + alpha/r^2 via the saddle equation.
    pub beta: f64,
}

/// Which estimate produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EstimatorKind {
    Uniform,
    BinomialForm,
    VolumeForm,
    PemantleWilson,
}

impl EstimatorKind {
    pub fn name(self) -> &'static str {
        match self {
            EstimatorKind::Uniform => "uniform",
            EstimatorKind::BinomialForm => "binomial",
            EstimatorKind::VolumeForm => "volume",
            EstimatorKind::PemantleWilson => "pw",
        }
    }
}

/// An estimate of D(d,n). `log_estimate` is authoritative; `estimate` is
/// exp of it and may be +inf when the count exceeds f64 range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateReport {
    pub d: u64,
    pub n: u64,
    pub kind: EstimatorKind,
    pub log_estimate: f64,
    pub estimate: f64,
}

impl EstimateReport {
    fn new(d: u64, n: u64, kind: EstimatorKind, log_estimate: f64) -> Self {
        EstimateReport {
            d,
            n,
            kind,
            log_estimate,
            estimate: log_estimate.exp(),
        }
    }
}

/// Saddle-point data for d, n >= 1.
///
/// Uses the cancellation-free form r = alpha/(1 + sqrt(1+alpha^2)).
/// For n <= d the radius obeys alpha/(sqrt(2)+1) <= r <= alpha/2 <= 1/2
/// and beta lies in [4/alpha, 9/alpha].
pub fn saddle_params(d: u64, n: u64) -> Result<SaddleParams> {
    if d == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "saddle point needs d >= 1 and n >= 1, got d={d}, n={n}"
        )));
    }
    let alpha = n as f64 / d as f64;
    let r = alpha / (1.0 + (1.0 + alpha * alpha).sqrt());
    let h_r = (1.0 + r) / (1.0 - r);
    let beta = alpha * alpha / r + alpha / (r * r);
    debug_assert!(
        (2.0 * r - (1.0 - r * r) * alpha).abs() <= 1e-12 * alpha,
        "saddle equation residual too large at d={d}, n={n}"
    );
    Ok(SaddleParams {
        d,
        n,
        alpha,
        r,
        h_r,
        beta,
    })
}

/// The uniform estimate h(r)^d r^-n / sqrt(n), valid with absolute
/// constants on the whole triangle 1 <= n <= d.
///
/// Rejects n > d; the count is symmetric, so swap the arguments to land in
/// the supported triangle.
pub fn uniform_estimate(d: u64, n: u64) -> Result<EstimateReport> {
    if n > d {
        return Err(Error::Domain(format!(
            "uniform estimate needs n <= d (got n={n} > d={d}); \
             counts are symmetric, swap the arguments"
        )));
    }
    let sp = saddle_params(d, n)?;
    let log = d as f64 * sp.h_r.ln() - n as f64 * sp.r.ln() - 0.5 * (n as f64).ln();
    Ok(EstimateReport::new(d, n, EstimatorKind::Uniform, log))
}

/// The same quantity written directly in d and n:
///
/// ```text
/// (d / (sqrt(d^2+n^2) - n))^d * (n / (sqrt(d^2+n^2) - d))^n / sqrt(n)
/// ```
///
/// with sqrt(d^2+n^2) - d evaluated as n^2/(sqrt(d^2+n^2) + d) to dodge
/// cancellation.  Kept as an independent algebraic route for cross-checks.
pub fn uniform_log_explicit(d: u64, n: u64) -> Result<f64> {
    if n > d || n == 0 {
        return Err(Error::Domain(format!(
            "explicit form needs 1 <= n <= d, got d={d}, n={n}"
        )));
    }
    let (df, nf) = (d as f64, n as f64);
    let hyp = df.hypot(nf);
    let base_d = df / (hyp - nf);
    let base_n = nf * (hyp + df) / (nf * nf);
    Ok(df * base_d.ln() + nf * base_n.ln() - 0.5 * nf.ln())
}

/// ln C(d, n) summed termwise; exact to f64 rounding, O(n).
pub(crate) fn ln_binomial(d: u64, n: u64) -> f64 {
    let n = n.min(d - n.min(d));
    let mut acc = 0.0;
    for k in 1..=n {
        acc += ((d - n + k) as f64).ln() - (k as f64).ln();
    }
    acc
}

/// ln d!, O(d).
pub(crate) fn ln_factorial(d: u64) -> f64 {
    (2..=d).map(|k| (k as f64).ln()).sum()
}

/// Sparse regime n <= d/2: log D ~ log(2^n C(d,n)) + n alpha/2 + n alpha^2/4.
///
/// The dropped term is O(n alpha^3), so this is sharp for n well below d.
pub fn binomial_form_estimate(d: u64, n: u64) -> Result<EstimateReport> {
    if d == 0 || 2 * n > d {
        return Err(Error::Domain(format!(
            "binomial-form estimate needs n <= d/2, got d={d}, n={n}"
        )));
    }
    let alpha = n as f64 / d as f64;
    let log = n as f64 * LN_2
        + ln_binomial(d, n)
        + n as f64 * alpha / 2.0
        + n as f64 * alpha * alpha / 4.0;
    Ok(EstimateReport::new(d, n, EstimatorKind::BinomialForm, log))
}

/// Exact volume of the l1 ball of radius n in R^d: (2n)^d / d!.
pub fn exact_volume(d: u64, n: u64) -> BigRational {
    let mut num = BigInt::one();
    for _ in 0..d {
        num *= BigInt::from(2 * n);
    }
    let mut den = BigInt::one();
    for k in 2..=d {
        den *= BigInt::from(k);
    }
    BigRational::new(num, den)
}

/// Dense regime n >= 2d: log D ~ log((2n)^d/d!) + d/(12 alpha^2).
///
/// The count converges to the volume of the solid ball from above; the
/// exponential factor is the leading discrete correction, with the next
/// term O(d/alpha^3) dropped.
pub fn volume_form_estimate(d: u64, n: u64) -> Result<EstimateReport> {
    if d == 0 || n < 2 * d {
        return Err(Error::Domain(format!(
            "volume-form estimate needs n >= 2d, got d={d}, n={n}"
        )));
    }
    let alpha = n as f64 / d as f64;
    let log = d as f64 * (2.0 * n as f64).ln() - ln_factorial(d)
        + d as f64 / (12.0 * alpha * alpha);
    Ok(EstimateReport::new(d, n, EstimatorKind::VolumeForm, log))
}

/// The smooth-point asymptotic with its explicit constant:
///
/// ```text
/// sqrt(1/(2 pi)) h(r)^d r^-n
///   * sqrt(alpha / (d (1 + alpha - sqrt(1+alpha^2))^2 sqrt(1+alpha^2)))
/// ```
///
/// Exact in the limit d -> inf along fixed alpha = n/d; the ratio to the
/// true count tends to 1.  Valid input: d, n >= 1.
pub fn pemantle_wilson_estimate(d: u64, n: u64) -> Result<EstimateReport> {
    let sp = saddle_params(d, n)?;
    let alpha = sp.alpha;
    let root = (1.0 + alpha * alpha).sqrt();
    let log = -0.5 * (2.0 * PI).ln()
        + sp.d as f64 * sp.h_r.ln()
        - sp.n as f64 * sp.r.ln()
        + 0.5
            * (alpha.ln()
                - (sp.d as f64).ln()
                - 2.0 * (1.0 + alpha - root).ln()
                - root.ln()); // root.ln() = 0.5 ln(1+alpha^2)
    Ok(EstimateReport::new(
        d,
        n,
        EstimatorKind::PemantleWilson,
        log,
    ))
}

/// Highest correction-series order supported; accuracy of the numeric
/// extraction is validated through this order.
pub const MAX_B_ORDER: usize = 12;

/// The function whose Taylor coefficients (in alpha^2) are the b_k:
///
/// ```text
/// g(z) = (log(1+r(z)) - log(1-r(z)))/z - log(2 r(z)/z),
/// r(z) = z/(1 + sqrt(1+z^2)),
/// ```
///
/// evaluated for complex z with the cancellation-free forms
/// 2 r/z = 2/(1 + sqrt(1+z^2)).  Analytic for |z| <= 0.8 (the nearest
/// branch points sit at z = +-i).
fn g_fn(z: Complex64) -> Complex64 {
    let root = (Complex64::new(1.0, 0.0) + z * z).sqrt();
    let r = z / (Complex64::new(1.0, 0.0) + root);
    let artanh = ((Complex64::new(1.0, 0.0) + r).ln() - (Complex64::new(1.0, 0.0) - r).ln()) / z;
    let log_2r_over_z = (Complex64::new(2.0, 0.0) / (Complex64::new(1.0, 0.0) + root)).ln();
    artanh - log_2r_over_z
}

fn b_table() -> &'static [f64; MAX_B_ORDER + 1] {
    static TABLE: OnceLock<[f64; MAX_B_ORDER + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Taylor coefficients of an analytic function via trapezoidal
        // sampling on a circle (spectral-accuracy numerical
        // differentiation). g is even, so only even coefficients appear:
        // b_k = coefficient of z^(2k).  Radius 3/4 keeps the rounding
        // amplification rho^(-2k) small while staying inside the domain
        // of analyticity; with M = 512 nodes the aliasing error is far
        // below rounding.
        const M: usize = 512;
        const RHO: f64 = 0.75;
        let samples: Vec<Complex64> = (0..M)
            .map(|m| {
                let theta = 2.0 * PI * m as f64 / M as f64;
                g_fn(Complex64::from_polar(RHO, theta))
            })
            .collect();
        let mut out = [0.0; MAX_B_ORDER + 1];
        for (k, slot) in out.iter_mut().enumerate() {
            let j = 2 * k;
            let mut acc = Complex64::new(0.0, 0.0);
            for (m, gval) in samples.iter().enumerate() {
                let theta = 2.0 * PI * (m * j % M) as f64 / M as f64;
                acc += gval * Complex64::from_polar(1.0, -theta);
            }
            *slot = acc.re / (M as f64 * RHO.powi(j as i32));
        }
        out
    })
}

/// Correction-series coefficients [b_0, ..., b_max_order], b_0 = 1.
///
/// Extracted numerically once and cached; supported through order
/// [`MAX_B_ORDER`].
pub fn b_coefficients(max_order: usize) -> Result<Vec<f64>> {
    if max_order > MAX_B_ORDER {
        return Err(Error::Domain(format!(
            "correction series supported through order {MAX_B_ORDER}, got {max_order}"
        )));
    }
    Ok(b_table()[..=max_order].to_vec())
}

/// Sum of the correction series sum_{k=1}^{order} b_k alpha^(2k).
///
/// The constant term b_0 = 1 is excluded: it belongs to the main term of
/// the estimates, not the correction.  Requires |alpha| <= 1/2, where the
/// tail beyond order 12 is below 1e-8.
pub fn b_series(alpha: f64, order: usize) -> Result<f64> {
    if !(alpha.abs() <= 0.5) {
        return Err(Error::Domain(format!(
            "correction series is used for |alpha| <= 1/2, got {alpha}"
        )));
    }
    let coeffs = b_coefficients(order)?;
    let a2 = alpha * alpha;
    let mut acc = 0.0;
    let mut pow = 1.0;
    for &c in &coeffs[1..] {
        pow *= a2;
        acc += c * pow;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counts::{approx_ln, delannoy};
    use proptest::prelude::*;

    #[test]
    fn saddle_radius_known_points() {
        // alpha = 1: r = sqrt(2) - 1.
        let sp = saddle_params(7, 7).unwrap();
        assert!((sp.r - (std::f64::consts::SQRT_2 - 1.0)).abs() < 1e-15);
        // d=2, n=1: r = (sqrt(5)-2).../ (sqrt(1.25)-1)*2 = 0.23606...
        let sp = saddle_params(2, 1).unwrap();
        assert!((sp.r - 0.236_067_977_499_79).abs() < 1e-12);
    }

    #[test]
    fn saddle_interval_bounds() {
        for d in 1..=60u64 {
            for n in 1..=d {
                let sp = saddle_params(d, n).unwrap();
                let a = sp.alpha;
                assert!(sp.r >= a / (std::f64::consts::SQRT_2 + 1.0) - 1e-15);
                assert!(sp.r <= a / 2.0 + 1e-15);
                assert!(sp.r <= 0.5 + 1e-15);
                assert!(sp.beta >= 4.0 / a - 1e-9);
                assert!(sp.beta <= 9.0 / a + 1e-9);
            }
        }
    }

    #[test]
    fn saddle_rejects_degenerate() {
        assert!(saddle_params(0, 3).is_err());
        assert!(saddle_params(3, 0).is_err());
    }

    #[test]
    fn uniform_estimate_central_value() {
        // d = n = 1: h(r)/r = (sqrt(2)+1)^2, log ~ 1.76275.
        let rep = uniform_estimate(1, 1).unwrap();
        let expected = 2.0 * (std::f64::consts::SQRT_2 + 1.0).ln();
        assert!((rep.log_estimate - expected).abs() < 1e-12);
    }

    #[test]
    fn uniform_rejects_n_above_d() {
        match uniform_estimate(3, 5) {
            Err(Error::Domain(msg)) => assert!(msg.contains("swap")),
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn explicit_form_agrees_with_saddle_form() {
        for d in 1..=80u64 {
            for n in (1..=d).step_by(3) {
                let a = uniform_estimate(d, n).unwrap().log_estimate;
                let b = uniform_log_explicit(d, n).unwrap();
                assert!(
                    (a - b).abs() <= 1e-9 * a.abs().max(1.0),
                    "d={d} n={n}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn binomial_form_domain() {
        assert!(binomial_form_estimate(10, 6).is_err());
        let rep = binomial_form_estimate(10, 0).unwrap();
        assert_eq!(rep.log_estimate, 0.0);
    }

    #[test]
    fn volume_value_and_domain() {
        // (2*3)^2/2! = 18.
        assert_eq!(
            exact_volume(2, 3),
            BigRational::from(BigInt::from(18))
        );
        assert!(volume_form_estimate(3, 5).is_err());
        let rep = volume_form_estimate(1, 2).unwrap();
        // d=1: volume 2n = 4, correction 1/(12*4).
        assert!((rep.log_estimate - (4.0f64.ln() + 1.0 / 48.0)).abs() < 1e-14);
    }

    #[test]
    fn count_dominates_volume() {
        // The ball contains a unit cube around each of its lattice points,
        // so the count always dominates the volume.
        for d in 1..=12u64 {
            for n in 1..=30u64 {
                let vol = exact_volume(d, n);
                let count = BigRational::from(BigInt::from(delannoy(d, n)));
                assert!(count >= vol, "d={d} n={n}");
            }
        }
    }

    #[test]
    fn pemantle_wilson_sharpens_with_d() {
        // Along alpha = 1 the ratio exact/estimate tends to 1.
        let gap = |m: u64| {
            let rep = pemantle_wilson_estimate(m, m).unwrap();
            (approx_ln(&delannoy(m, m)) - rep.log_estimate).abs()
        };
        assert!(gap(200) < 0.01);
        assert!(gap(200) < gap(20));
        assert!(gap(20) < gap(5));
    }

    #[test]
    fn b_low_orders_match_published_values() {
        let b = b_coefficients(2).unwrap();
        assert!((b[0] - 1.0).abs() < 1e-10, "b0 = {}", b[0]);
        assert!((b[1] - 1.0 / 12.0).abs() < 1e-10, "b1 = {}", b[1]);
        assert!((b[2] + 3.0 / 160.0).abs() < 1e-10, "b2 = {}", b[2]);
    }

    #[test]
    fn b_series_edges() {
        assert_eq!(b_series(0.0, 12).unwrap(), 0.0);
        assert!(b_series(0.6, 12).is_err());
        assert!(b_coefficients(13).is_err());
        // Tail between orders 6 and 12 at alpha = 1/2 is already tiny.
        let a = b_series(0.5, 6).unwrap();
        let b = b_series(0.5, 12).unwrap();
        assert!((a - b).abs() < 1e-4);
    }

    #[test]
    fn b_matches_exact_rational_oracle() {
        let numeric = b_coefficients(MAX_B_ORDER).unwrap();
        let exact = series_oracle::exact_b();
        for (k, (num, ex)) in numeric.iter().zip(exact.iter()).enumerate() {
            let exf = series_oracle::to_f64(ex);
            assert!(
                (num - exf).abs() < 1e-10,
                "b_{k}: numeric {num} vs exact {exf}"
            );
        }
    }

    proptest! {
        #[test]
        fn prop_g_even_in_alpha(a in -0.5f64..0.5) {
            let order = 12;
            let plus = b_series(a, order).unwrap();
            let minus = b_series(-a, order).unwrap();
            prop_assert!((plus - minus).abs() < 1e-15);
        }

        #[test]
        fn prop_uniform_log_finite(d in 1u64..1_000_000, frac in 0.0f64..1.0) {
            let n = ((d as f64 * frac) as u64).max(1).min(d);
            let rep = uniform_estimate(d, n).unwrap();
            prop_assert!(rep.log_estimate.is_finite());
        }
    }

    /// Exact rational computation of the b_k by formal power series
    /// composition.  Entirely independent of the numeric extraction: only
    /// rational arithmetic, no floating point until the final comparison.
    mod series_oracle {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        use num_traits::{One, Signed, ToPrimitive, Zero};

        const ORDER: usize = 14; // series in u = alpha^2, kept past order 12

        type Series = Vec<BigRational>;

        fn rat(n: i64, d: i64) -> BigRational {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        }

        fn mul(a: &Series, b: &Series) -> Series {
            let mut out = vec![BigRational::zero(); ORDER + 1];
            for (i, ai) in a.iter().enumerate() {
                if ai.is_zero() {
                    continue;
                }
                for (j, bj) in b.iter().enumerate() {
                    if i + j > ORDER {
                        break;
                    }
                    out[i + j] += ai * bj;
                }
            }
            out
        }

        /// R(u) with r = alpha * R(alpha^2): coefficients C(1/2, k+1).
        fn r_over_alpha() -> Series {
            let mut c = BigRational::one(); // C(1/2, k)
            let mut out = vec![BigRational::zero(); ORDER + 1];
            for k in 1..=(ORDER + 1) {
                // C(1/2,k) = C(1/2,k-1) * (1/2 - (k-1))/k
                c = c * (rat(1, 2) - rat(k as i64 - 1, 1)) / rat(k as i64, 1);
                if k - 1 <= ORDER {
                    out[k - 1] = c.clone();
                }
            }
            out
        }

        /// Exact [b_0, ..., b_12].
        pub fn exact_b() -> Vec<BigRational> {
            let rr = r_over_alpha();
            // (log(1+r) - log(1-r))/alpha = 2 sum_j u^j R(u)^(2j+1)/(2j+1).
            let r2 = mul(&rr, &rr);
            let mut artanh = vec![BigRational::zero(); ORDER + 1];
            let mut odd_pow = rr.clone(); // R^(2j+1)
            for j in 0..=ORDER {
                let scale = rat(2, 2 * j as i64 + 1);
                for (i, c) in odd_pow.iter().enumerate() {
                    if i + j > ORDER {
                        break;
                    }
                    artanh[i + j] += &scale * c; // the u^j shift
                }
                odd_pow = mul(&odd_pow, &r2);
            }
            // log(2R(u)) = log(1 + w), w = 2R - 1 (w(0) = 0).
            let mut w = rr.clone();
            for c in w.iter_mut() {
                *c *= rat(2, 1);
            }
            w[0] -= BigRational::one();
            debug_assert!(w[0].is_zero());
            let mut log2r = vec![BigRational::zero(); ORDER + 1];
            let mut wpow = vec![BigRational::zero(); ORDER + 1];
            wpow[0] = BigRational::one();
            for m in 1..=ORDER {
                wpow = mul(&wpow, &w);
                let sign = if m % 2 == 1 { 1 } else { -1 };
                let scale = rat(sign, m as i64);
                for (i, c) in wpow.iter().enumerate() {
                    log2r[i] += &scale * c;
                }
            }
            (0..=12).map(|k| &artanh[k] - &log2r[k]).collect()
        }

        pub fn to_f64(x: &BigRational) -> f64 {
            x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
        }

        #[test]
        fn oracle_reproduces_published_coefficients() {
            let b = exact_b();
            assert_eq!(b[0], BigRational::one());
            assert_eq!(b[1], rat(1, 12));
            assert_eq!(b[2], rat(-3, 160));
        }

        #[test]
        fn oracle_coefficients_are_exactly_representable() {
            for (k, c) in exact_b().iter().enumerate() {
                assert!(
                    c.denom().abs().to_f64().unwrap() < 1e300,
                    "b_{k} denominator huge"
                );
            }
        }
    }
}
