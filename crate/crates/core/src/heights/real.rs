//! Fixed-point real arithmetic on dyadic rationals: a big-integer mantissa
//! with a fixed number of fractional bits. The only transcendental operation
//! the height machinery needs is the logarithm of a positive integer, done by
//! the inverse-hyperbolic-tangent series with guard bits and verified decay.
//!
//! Rounding is to nearest at every operation, so each operation contributes
//! at most one ulp (2^-bits) of error; the height code folds a conservative
//! static envelope for these contributions into reported residuals.

use num_traits::{Signed, Zero};

use crate::exactlin::rat_to_f64;
use crate::{Int, Rat};

const GUARD_BITS: u32 = 32;

/// A real value `mant / 2^bits`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Dyadic {
    mant: Int,
    bits: u32,
}

fn round_div(n: &Int, d: &Int) -> Int {
    // Round to nearest, ties away from zero; d > 0.
    debug_assert!(d.is_positive());
    let two_n = n << 1u32;
    let num = if n.is_negative() { two_n - d } else { two_n + d };
    num / (d << 1u32)
}

impl Dyadic {
    pub fn zero(bits: u32) -> Self {
        Dyadic { mant: Int::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Dyadic { mant: Int::from(1) << bits, bits }
    }

    pub fn from_int(x: &Int, bits: u32) -> Self {
        Dyadic { mant: x << bits, bits }
    }

    pub fn from_rat(r: &Rat, bits: u32) -> Self {
        Dyadic { mant: round_div(&(r.numer() << bits), r.denom()), bits }
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = Rat::from_float(x).expect("finite float");
        Dyadic::from_rat(&r, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn to_rat(&self) -> Rat {
        Rat::new(self.mant.clone(), Int::from(1) << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.to_rat())
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        debug_assert_eq!(self.bits, other.bits);
        Dyadic { mant: &self.mant + &other.mant, bits: self.bits }
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        debug_assert_eq!(self.bits, other.bits);
        Dyadic { mant: &self.mant - &other.mant, bits: self.bits }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mant: -self.mant.clone(), bits: self.bits }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul_int(&self, c: &Int) -> Dyadic {
        Dyadic { mant: &self.mant * c, bits: self.bits }
    }

    /// Multiplication by an exact rational, rounded to nearest.
    pub fn mul_rat(&self, r: &Rat) -> Dyadic {
        Dyadic { mant: round_div(&(&self.mant * r.numer()), r.denom()), bits: self.bits }
    }

    pub fn max(&self, other: &Dyadic) -> Dyadic {
        if self.mant >= other.mant {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Absolute difference as an f64, the residual currency.
    pub fn abs_diff_f64(&self, other: &Dyadic) -> f64 {
        self.sub(other).abs().to_f64()
    }
}

/// Precision context: the working precision in fractional bits and a cached
/// ln 2 at guarded precision.
#[derive(Clone, Debug)]
pub struct Precision {
    bits: u32,
    ln2_guarded: Int,
}

impl Precision {
    pub fn new(bits: u32) -> Self {
        assert!(bits >= 16, "precision below 16 bits is not useful here");
        let p = bits + GUARD_BITS;
        // ln 2 = 2 atanh(1/3).
        let t = round_div(&(Int::from(1) << p), &Int::from(3));
        let ln2_guarded = atanh_series(&t, p) << 1u32;
        Precision { bits, ln2_guarded }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// A conservative bound on the absolute rounding error of one dyadic
    /// operation at this precision.
    pub fn ulp_f64(&self) -> f64 {
        2.0f64.powi(-(self.bits as i32))
    }

    pub fn zero(&self) -> Dyadic {
        Dyadic::zero(self.bits)
    }

    pub fn one(&self) -> Dyadic {
        Dyadic::one(self.bits)
    }

    /// Natural logarithm of a positive integer: split off the binary exponent
    /// and run the atanh series on the mantissa in [1, 2).
    pub fn ln_int(&self, x: &Int) -> Dyadic {
        assert!(x.is_positive(), "logarithm of a nonpositive integer");
        let p = self.bits + GUARD_BITS;
        let e = (x.bits() - 1) as u32;
        let m_fp: Int = if p >= e { x << (p - e) } else { x >> (e - p) };
        let unit: Int = Int::from(1) << p;
        let num = &m_fp - &unit;
        let den = &m_fp + &unit;
        let t = round_div(&(num << p), &den);
        let ln_m = atanh_series(&t, p) << 1u32;
        let guarded = ln_m + Int::from(e) * &self.ln2_guarded;
        Dyadic { mant: round_div(&guarded, &(Int::from(1) << GUARD_BITS)), bits: self.bits }
    }

    /// ln of a positive rational.
    pub fn ln_rat(&self, r: &Rat) -> Dyadic {
        assert!(r.is_positive());
        self.ln_int(r.numer()).sub(&self.ln_int(r.denom()))
    }
}

/// atanh(t) = t + t³/3 + t⁵/5 + …, everything fixed-point at `p` bits;
/// requires |t| ≤ 2^p / 3 so terms decay at least ninefold.
fn atanh_series(t: &Int, p: u32) -> Int {
    let mut sum = t.clone();
    let mut term = t.clone();
    let tsq = round_div(&(t * t), &(Int::from(1) << p));
    let mut k = 1u32;
    loop {
        term = round_div(&(&term * &tsq), &(Int::from(1) << p));
        if term.is_zero() {
            break;
        }
        k += 2;
        sum += round_div(&term, &Int::from(k));
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_small_integers() {
        let prec = Precision::new(128);
        let ln2 = prec.ln_int(&Int::from(2)).to_f64();
        assert!((ln2 - std::f64::consts::LN_2).abs() < 1e-15);
        let ln10 = prec.ln_int(&Int::from(10)).to_f64();
        assert!((ln10 - 10f64.ln()).abs() < 1e-15);
        assert!(prec.ln_int(&Int::from(1)).is_zero());
    }

    #[test]
    fn ln_is_additive_on_products() {
        let prec = Precision::new(128);
        let a = prec.ln_int(&Int::from(6));
        let b = prec.ln_int(&Int::from(2)).add(&prec.ln_int(&Int::from(3)));
        assert!(a.abs_diff_f64(&b) < 1e-36);
    }

    #[test]
    fn ln_of_huge_integer_tracks_exponent() {
        let prec = Precision::new(128);
        let x = Int::from(7).pow(400);
        let v = prec.ln_int(&x).to_f64();
        assert!((v - 400.0 * 7f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn rational_scaling_rounds_to_nearest() {
        let prec = Precision::new(64);
        let x = Dyadic::from_int(&Int::from(1), prec.bits());
        let third = x.mul_rat(&Rat::new(Int::from(1), Int::from(3)));
        assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-18);
    }
}
