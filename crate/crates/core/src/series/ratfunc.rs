use std::fmt;

use thiserror::Error;

use super::polynomial::Polynomial;
use super::ring::{Ring, Q};
use super::truncated::{SeriesError, TruncatedSeries, Var};

#[derive(Debug, Error, PartialEq)]
pub enum RationalFunctionError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at {0}")]
    Pole(String),
    #[error("denominator vanishes at the expansion point")]
    SingularExpansion,
}

/// Quotient of two rational polynomials, kept coprime with a monic
/// denominator so that structural equality is equality of functions.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalFunction {
    num: Polynomial<Q>,
    den: Polynomial<Q>,
}

impl RationalFunction {
    pub fn new(num: Polynomial<Q>, den: Polynomial<Q>) -> Result<Self, RationalFunctionError> {
        if den.is_zero_poly() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        if num.is_zero_poly() {
            return Ok(Self::from_poly(Polynomial::zero_poly()));
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().unwrap().try_inverse().unwrap();
        Ok(RationalFunction {
            num: n.scale(&lead),
            den: d.scale(&lead),
        })
    }

    pub fn from_poly(p: Polynomial<Q>) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::constant(Q::one()),
        }
    }

    pub fn from_ints(num: &[i64], den: &[i64]) -> Self {
        Self::new(Polynomial::from_ints(num), Polynomial::from_ints(den))
            .expect("nonzero denominator")
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Polynomial::var())
    }

    pub fn numerator(&self) -> &Polynomial<Q> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<Q> {
        &self.den
    }

    pub fn is_zero_fn(&self) -> bool {
        self.num.is_zero_poly()
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RationalFunctionError> {
        if other.is_zero_fn() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        Self::new(self.num.mul_poly(&other.den), self.den.mul_poly(&other.num))
    }

    pub fn powi(&self, n: i32) -> Result<Self, RationalFunctionError> {
        let p = Ring::pow(self, n.unsigned_abs());
        if n >= 0 {
            Ok(p)
        } else {
            Self::one().checked_div(&p)
        }
    }

    pub fn eval(&self, x: &Q) -> Result<Q, RationalFunctionError> {
        let d = self.den.eval(x);
        if Ring::is_zero(&d) {
            return Err(RationalFunctionError::Pole(x.to_string()));
        }
        Ok(self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &Self) -> Result<Self, RationalFunctionError> {
        // Homogenized Horner: N(p/q) q^n / (D(p/q) q^m) times q^(m-n).
        let p = &inner.num;
        let qd = &inner.den;
        let hom = |poly: &Polynomial<Q>, deg: usize| -> Polynomial<Q> {
            let mut acc = Polynomial::zero_poly();
            for i in 0..=deg {
                let term = Ring::pow(p, i as u32)
                    .mul_poly(&Ring::pow(qd, (deg - i) as u32))
                    .scale(&poly.coeff(i));
                acc = acc.add_poly(&term);
            }
            acc
        };
        let n = self.num.degree().unwrap_or(0);
        let m = self.den.degree().unwrap_or(0);
        let mut top = hom(&self.num, n);
        let mut bot = hom(&self.den, m);
        if m > n {
            top = top.mul_poly(&Ring::pow(qd, (m - n) as u32));
        } else {
            bot = bot.mul_poly(&Ring::pow(qd, (n - m) as u32));
        }
        if bot.is_zero_poly() {
            return Err(RationalFunctionError::ZeroDenominator);
        }
        Self::new(top, bot)
    }

    pub fn derivative(&self) -> Self {
        let n = self
            .num
            .derivative()
            .mul_poly(&self.den)
            .sub_poly(&self.num.mul_poly(&self.den.derivative()));
        Self::new(n, self.den.mul_poly(&self.den)).expect("nonzero denominator")
    }

    /// Taylor expansion at `x = 0` in the variable `var`.
    pub fn to_series(
        &self,
        var: Var,
        order: usize,
    ) -> Result<TruncatedSeries<Q>, RationalFunctionError> {
        let n = TruncatedSeries::from_poly(var, &self.num, order);
        let d = TruncatedSeries::from_poly(var, &self.den, order);
        n.checked_div(&d).map_err(|e| match e {
            SeriesError::NotInvertible => RationalFunctionError::SingularExpansion,
            other => RationalFunctionError::Pole(other.to_string()),
        })
    }
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero_poly())
    }
    fn one() -> Self {
        Self::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_fn()
    }
    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::new(self.num.add_poly(&other.num), self.den.clone()).unwrap();
        }
        Self::new(
            self.num
                .mul_poly(&other.den)
                .add_poly(&other.num.mul_poly(&self.den)),
            self.den.mul_poly(&other.den),
        )
        .unwrap()
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg_poly(),
            den: self.den.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul_poly(&other.num), self.den.mul_poly(&other.den)).unwrap()
    }
    fn try_inverse(&self) -> Option<Self> {
        Self::one().checked_div(self).ok()
    }
    fn from_rational(value: &Q) -> Self {
        Self::constant(value.clone())
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0) == Q::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::q;

    #[test]
    fn canonical_form_and_arith() {
        let a = RationalFunction::from_ints(&[-1, 0, 1], &[-2, 2]);
        assert_eq!(a, RationalFunction::from_ints(&[1, 1], &[2]));
        let x = RationalFunction::x();
        let inv = x.add(&RationalFunction::one()).try_inverse().unwrap();
        let back = inv.mul(&x.add(&RationalFunction::one()));
        assert_eq!(back, RationalFunction::one());
    }

    #[test]
    fn composition_matches_evaluation() {
        let f = RationalFunction::from_ints(&[1, 2], &[3, 0, 1]);
        let g = RationalFunction::from_ints(&[0, 1], &[1, 1]);
        let h = f.compose(&g).unwrap();
        let x = q(2, 5);
        assert_eq!(h.eval(&x).unwrap(), f.eval(&g.eval(&x).unwrap()).unwrap());
    }

    #[test]
    fn derivative_of_reciprocal() {
        let f = RationalFunction::from_ints(&[1], &[0, 1]);
        assert_eq!(
            f.derivative(),
            RationalFunction::from_ints(&[-1], &[0, 0, 1])
        );
    }

    #[test]
    fn pole_reported() {
        let f = RationalFunction::from_ints(&[1], &[-1, 1]);
        assert!(matches!(
            f.eval(&q(1, 1)),
            Err(RationalFunctionError::Pole(_))
        ));
    }
}
