use std::fmt;

use super::ring::{Ring, Q};

/// Dense univariate polynomial, trailing zeros trimmed.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Polynomial<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero_poly() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: R, n: usize) -> Self {
        let mut v = vec![R::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// `Some(deg)`, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    /// Lowest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_poly(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg_poly(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn sub_poly(&self, other: &Self) -> Self {
        self.add_poly(&other.neg_poly())
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product with all terms above `max_deg` dropped.
    pub fn mul_truncated(&self, other: &Self, max_deg: usize) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_poly();
        }
        let top = (self.coeffs.len() + other.coeffs.len() - 2).min(max_deg);
        let mut out = vec![R::zero(); top + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > top || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > top {
                    break;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn truncate(&self, max_deg: usize) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .take(max_deg.saturating_add(1))
                .cloned()
                .collect(),
        )
    }

    pub fn shift_up(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return Self::zero_poly();
        }
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&R::from_int(i as i64)))
                .collect(),
        )
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero_poly();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul_poly(inner).add_poly(&Self::constant(c.clone()));
        }
        acc
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    /// Coefficients reversed with respect to the formal degree `n`.
    pub fn reversed(&self, n: usize) -> Self {
        Self::new((0..=n).map(|i| self.coeff(n - i)).collect())
    }
}

impl Polynomial<Q> {
    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| Q::from_int(c)).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.try_inverse().expect("nonzero leading")),
        }
    }

    /// Euclidean division. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv = divisor.leading().unwrap().try_inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero_poly(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if !Ring::is_zero(&c) {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &c * b;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd; the gcd of two zeros is zero.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero_poly() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + super::ring::q_to_f64(c);
        }
        acc
    }
}

impl<R: Ring> Ring for Polynomial<R> {
    fn zero() -> Self {
        Self::zero_poly()
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_poly()
    }
    fn add(&self, other: &Self) -> Self {
        self.add_poly(other)
    }
    fn neg(&self) -> Self {
        self.neg_poly()
    }
    fn mul(&self, other: &Self) -> Self {
        self.mul_poly(other)
    }
    fn try_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => self.coeffs[0].try_inverse().map(Self::constant),
            _ => None,
        }
    }
    fn from_rational(value: &Q) -> Self {
        Self::constant(R::from_rational(value))
    }
}

impl fmt::Display for Polynomial<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Ring::is_zero(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::q;

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = Polynomial::from_ints(&[-2, 1, 1]);
        let b = Polynomial::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_ints(&[-1, 1]));
        let (qt, r) = a.div_rem(&Polynomial::from_ints(&[-1, 1]));
        assert_eq!(qt, Polynomial::from_ints(&[2, 1]));
        assert!(r.is_zero_poly());
    }

    #[test]
    fn compose_and_eval() {
        let p = Polynomial::from_ints(&[1, 0, 1]);
        let inner = Polynomial::from_ints(&[1, 1]);
        let c = p.compose(&inner);
        assert_eq!(c, Polynomial::from_ints(&[2, 2, 1]));
        assert_eq!(c.eval(&q(1, 2)), q(13, 4));
        assert_eq!(c.derivative(), Polynomial::from_ints(&[2, 2]));
    }

    #[test]
    fn truncated_product() {
        let a = Polynomial::from_ints(&[1, 1, 1]);
        assert_eq!(a.mul_truncated(&a, 2), Polynomial::from_ints(&[1, 2, 3]));
    }
}
