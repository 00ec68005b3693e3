//! Numeric field abstraction so the simplex runs on floats or exact rationals.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and comparisons need no tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Pivot and sign tolerance; zero for exact fields.
    fn tol() -> Self;

    /// `self -= f * x`, the inner loop of every pivot.
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self = self.clone() - f.clone() * x.clone();
    }

    fn is_pos(&self) -> bool {
        *self > Self::tol()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tol()
    }

    fn is_negligible(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn tol() -> Self {
        1e-9
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        *self -= f * x;
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_f64(v: f64) -> Self {
        rational_from_f64(v)
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn tol() -> Self {
        Zero::zero()
    }
    fn sub_mul(&mut self, f: &Self, x: &Self) {
        if f.is_zero() || x.is_zero() {
            return;
        }
        *self -= f * x;
    }
}

/// Simplest rational within ~1e-12 (relative) of `v`.
///
/// Instance data is stored as floats; values such as `0.5*0.8 - 0.5*0.01`
/// carry construction noise, and walking the continued-fraction convergents
/// recovers the intended fraction (`79/200`) instead of the dyadic expansion.
pub fn rational_from_f64(v: f64) -> BigRational {
    assert!(v.is_finite(), "cannot convert non-finite value {v} to a rational");
    let exact = BigRational::from_float(v).expect("finite float");
    let tol = 1e-12 * v.abs().max(1.0);
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    loop {
        let a = rem.floor().to_integer();
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let conv = BigRational::new(h.clone(), k.clone());
        let err = (&conv - &exact).abs();
        if Scalar::to_f64(&err) <= tol {
            return conv;
        }
        let frac = &rem - BigRational::from_integer(a);
        if frac.is_zero() {
            return conv;
        }
        rem = frac.recip();
    }
}
