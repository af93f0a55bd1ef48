use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rationals.
pub type Q = BigRational;

/// `n/d` as an exact rational. Panics on `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_to_f64(x: &Q) -> f64 {
    ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

/// Exact square root of a nonnegative rational, when it is rational.
pub fn q_sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Commutative ring containing the rationals. Every coefficient ring in
/// this crate is a Q-algebra, so `from_rational` is always available.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    fn from_rational(value: &Q) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn from_int(value: i64) -> Self {
        Self::from_rational(&qi(value))
    }
    fn scale_q(&self, c: &Q) -> Self {
        self.mul(&Self::from_rational(c))
    }
    fn pow(&self, n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Ring for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(value: &Q) -> Self {
        value.clone()
    }
}

/// Rings whose elements can be rounded to a double.
pub trait ToF64 {
    fn to_f64(&self) -> f64;
}

impl ToF64 for Q {
    fn to_f64(&self) -> f64 {
        q_to_f64(self)
    }
}

/// Square roots that a ring can adjoin or find. Returns the root with
/// positive real value.
pub trait RadicalRing: Ring {
    fn principal_sqrt(&self) -> Option<Self>;
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_roots() {
        assert_eq!(q_sqrt_exact(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(q_sqrt_exact(&q(2, 1)), None);
        assert_eq!(q_sqrt_exact(&q(-1, 1)), None);
    }

    #[test]
    fn pow_and_binomial() {
        assert_eq!(q(2, 3).pow(3), q(8, 27));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }
}
