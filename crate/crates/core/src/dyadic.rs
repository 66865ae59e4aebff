//! Exact dyadic rationals `num / 2^exp` on arbitrary-precision numerators.
//!
//! Used wherever sums of powers of two must be compared without rounding:
//! Kraft sums over code lengths and the generalized Kraft inequality for
//! finite-state lossless encoders.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    num: BigUint,
    exp: u32,
}

impl Dyadic {
    pub fn zero() -> Self {
        Self { num: BigUint::zero(), exp: 0 }
    }

    /// The value `2^(-e)`.
    pub fn pow2_neg(e: u32) -> Self {
        Self { num: BigUint::one(), exp: e }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let exp = self.exp.max(other.exp);
        let num = (&self.num << (exp - self.exp)) + (&other.num << (exp - other.exp));
        Dyadic { num, exp }
    }

    pub fn add_pow2_neg(&mut self, e: u32) {
        *self = self.add(&Dyadic::pow2_neg(e));
    }

    pub fn compare(&self, other: &Dyadic) -> Ordering {
        let exp = self.exp.max(other.exp);
        (&self.num << (exp - self.exp)).cmp(&(&other.num << (exp - other.exp)))
    }

    pub fn compare_one(&self) -> Ordering {
        self.num.cmp(&(BigUint::one() << self.exp))
    }

    pub fn is_le_one(&self) -> bool {
        self.compare_one() != Ordering::Greater
    }

    /// Nearest f64, intended for reporting only.
    pub fn to_f64(&self) -> f64 {
        if self.num.is_zero() {
            return 0.0;
        }
        let bits = self.num.bits();
        if bits <= 52 {
            return self.num.to_f64().unwrap() * (self.exp as f64).exp2().recip();
        }
        let shift = bits - 52;
        let top = (&self.num >> shift).to_f64().unwrap();
        top * (shift as f64 - self.exp as f64).exp2()
    }

    /// `-log2` of the value, reported as f64; infinite for zero.
    pub fn neg_log2(&self) -> f64 {
        if self.num.is_zero() {
            return f64::INFINITY;
        }
        let bits = self.num.bits();
        let shift = bits.saturating_sub(53);
        let top = (&self.num >> shift).to_f64().unwrap();
        self.exp as f64 - (top.log2() + shift as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halves_sum_to_one() {
        let mut s = Dyadic::zero();
        s.add_pow2_neg(1);
        s.add_pow2_neg(2);
        s.add_pow2_neg(2);
        assert_eq!(s.compare_one(), Ordering::Equal);
        assert!(s.is_le_one());
        assert_eq!(s.to_f64(), 1.0);
        assert_eq!(s.neg_log2(), 0.0);
    }

    #[test]
    fn comparisons_align_exponents() {
        let a = Dyadic::pow2_neg(3); // 1/8
        let b = Dyadic::pow2_neg(2); // 1/4
        assert_eq!(a.compare(&b), Ordering::Less);
        assert_eq!(a.add(&a).compare(&b), Ordering::Equal);
    }

    #[test]
    fn neg_log2_of_quarter() {
        assert!((Dyadic::pow2_neg(2).neg_log2() - 2.0).abs() < 1e-12);
    }
}
