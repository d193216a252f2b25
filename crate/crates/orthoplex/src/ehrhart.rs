//! The lattice-count polynomial of the l1 ball.
//!
//! For fixed dimension d the count n -> D(d,n) is a polynomial in n of
//! degree d with rational coefficients (the dilation-counting polynomial of
//! the unit cross-polytope).  Expanding the closed sum with
//! C(n,k) = (n)(n-1)...(n-k+1)/k! gives
//!
//! ```text
//! D(d,n) = sum_{k=0}^{d} (2^k C(d,k) / k!) * n^(k-falling)
//! ```
//!
//! whose leading coefficient is 2^d/d!, the volume of the unit ball.  All
//! coefficients turn out strictly positive; this module asserts it.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counts::BigCount;
use crate::error::{Guards, Result};

/// Dense polynomial p(n) = sum_j coefficients[j] * n^j with exact rational
/// coefficients; p(n) = D(d,n) for every integer n >= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    dim: u32,
    coefficients: Vec<BigRational>,
}

impl EhrhartPolynomial {
    /// Dimension d; also the degree.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Coefficients by ascending power, length d + 1.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Leading coefficient, equal to 2^d/d!.
    pub fn leading(&self) -> &BigRational {
        self.coefficients.last().expect("degree >= 0")
    }

    /// Exact rational evaluation at integer n (Horner).
    pub fn eval(&self, n: u64) -> BigRational {
        let x = BigRational::from(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// Evaluation as a count; panics if the value is not a nonnegative
    /// integer (it always is, for integer n).
    pub fn eval_count(&self, n: u64) -> BigCount {
        let v = self.eval(n);
        assert!(v.is_integer(), "polynomial value at {n} is not an integer");
        let i = v.to_integer();
        assert!(!i.is_negative());
        i.to_biguint().expect("nonnegative")
    }
}

/// Builds the count polynomial of the d-dimensional l1 ball.
///
/// Guarded by `polynomial-dim` (default 64): coefficients are exact
/// rationals whose size grows quickly with d.
pub fn ehrhart_polynomial(d: u32) -> Result<EhrhartPolynomial> {
    ehrhart_polynomial_with_guards(d, &Guards::default())
}

/// [`ehrhart_polynomial`] with caller-supplied guards.
pub fn ehrhart_polynomial_with_guards(d: u32, guards: &Guards) -> Result<EhrhartPolynomial> {
    guards.check("polynomial-dim", d as u64, guards.polynomial_dim as u64)?;
    let du = d as usize;
    let mut coeffs = vec![BigRational::zero(); du + 1];
    // Falling factorial n(n-1)...(n-k+1) as an integer polynomial in n,
    // extended one factor per step; ff has degree k.
    let mut ff: Vec<BigInt> = vec![BigInt::one()];
    let mut weight_num = BigUint::one(); // 2^k C(d,k)
    let mut kfact = BigUint::one(); // k!
    for k in 0..=du {
        if k > 0 {
            // ff *= (n - (k-1))
            let shift = BigInt::from(k as i64 - 1);
            let mut next = vec![BigInt::zero(); ff.len() + 1];
            for (j, c) in ff.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &shift;
            }
            ff = next;
            weight_num = weight_num * 2u32 * BigUint::from(d as u64 - k as u64 + 1)
                / BigUint::from(k as u64);
            kfact *= BigUint::from(k as u64);
        }
        let weight = BigRational::new(
            BigInt::from(weight_num.clone()),
            BigInt::from(kfact.clone()),
        );
        for (j, c) in ff.iter().enumerate() {
            coeffs[j] += &weight * c;
        }
    }
    // Positivity of every coefficient is a theorem for this polytope family;
    // it doubles as a cheap guard against expansion mistakes.
    for (j, c) in coeffs.iter().enumerate() {
        assert!(
            c.is_positive(),
            "coefficient of n^{j} is {c}, expected positive (d = {d})"
        );
    }
    Ok(EhrhartPolynomial {
        dim: d,
        coefficients: coeffs,
    })
}
