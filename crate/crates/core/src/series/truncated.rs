use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use super::polynomial::Polynomial;
use super::ring::{Ring, Q};

/// Name of the expansion variable. Series in different variables never mix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize)]
pub enum Var {
    /// Face weight `g`.
    G,
    /// Rescaled weight `G = g R_1^2`.
    RescaledG,
    /// Kernel argument `t`.
    T,
    /// Local coordinate at the critical point.
    Epsilon,
    /// Uniformizing parameter `x`.
    X,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::G => "g",
            Var::RescaledG => "G",
            Var::T => "t",
            Var::Epsilon => "eps",
            Var::X => "x",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SeriesError {
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VariableMismatch(Var, Var),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstant,
    #[error("reversion needs zero constant term and invertible linear term")]
    NotRevertible,
    #[error("square root needs constant term 1")]
    SqrtConstant,
    #[error("divisor valuation {divisor} exceeds dividend valuation {dividend}")]
    Pole { dividend: usize, divisor: usize },
    #[error("series vanishes to its known order")]
    Indeterminate,
    #[error("not divisible by {0:?}^{1}")]
    NotDivisible(Var, usize),
}

/// Power series known modulo `var^(order+1)`. Results of arithmetic carry
/// the smallest order that is still exact.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncatedSeries<R> {
    var: Var,
    coeffs: Vec<R>,
}

impl<R: Ring> TruncatedSeries<R> {
    /// `coeffs[n]` is the coefficient of `var^n`; the order is `len - 1`.
    pub fn new(var: Var, coeffs: Vec<R>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a truncated series needs at least one coefficient"
        );
        TruncatedSeries { var, coeffs }
    }

    pub fn zero(var: Var, order: usize) -> Self {
        Self::new(var, vec![R::zero(); order + 1])
    }

    pub fn constant(var: Var, c: R, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::constant(var, R::one(), order)
    }

    pub fn monomial(var: Var, c: R, n: usize, order: usize) -> Self {
        let mut s = Self::zero(var, order);
        if n <= order {
            s.coeffs[n] = c;
        }
        s
    }

    /// The variable itself.
    pub fn variable(var: Var, order: usize) -> Self {
        Self::monomial(var, R::one(), 1, order)
    }

    pub fn from_poly(var: Var, p: &Polynomial<R>, order: usize) -> Self {
        Self::new(var, (0..=order).map(|i| p.coeff(i)).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `var^n`. Panics beyond the known order.
    pub fn coeff(&self, n: usize) -> &R {
        assert!(
            n <= self.order(),
            "coefficient {n} beyond known order {}",
            self.order()
        );
        &self.coeffs[n]
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Self::new(self.var, self.coeffs[..=n].to_vec())
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero_series(&self) -> bool {
        self.valuation().is_none()
    }

    /// Polynomial part, i.e. the known coefficients.
    pub fn to_poly(&self) -> Polynomial<R> {
        Polynomial::new(self.coeffs.clone())
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncatedSeries<S> {
        TruncatedSeries::new(self.var, self.coeffs.iter().map(f).collect())
    }

    fn same_var(&self, other: &Self) -> Result<(), SeriesError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(SeriesError::VariableMismatch(self.var, other.var))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::new(
            self.var,
            (0..=n)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_var(other)?;
        let n = self.order().min(other.order());
        Ok(Self::new(
            self.var,
            (0..=n)
                .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
                .collect(),
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_var(other)?;
        let n = self.order().min(other.order());
        let mut out = vec![R::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if !other.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
                }
            }
        }
        Ok(Self::new(self.var, out))
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map_coeffs(|a| a.mul(c))
    }

    pub fn add_constant(&self, c: &R) -> Self {
        let mut s = self.clone();
        s.coeffs[0] = s.coeffs[0].add(c);
        s
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let inv0 = self.coeffs[0]
            .try_inverse()
            .ok_or(SeriesError::NotInvertible)?;
        let n = self.order();
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for m in 1..=n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add(&self.coeffs[k].mul(&out[m - k]));
                }
            }
            out.push(acc.neg().mul(&inv0));
        }
        Ok(Self::new(self.var, out))
    }

    /// Quotient by a series with invertible constant term.
    pub fn checked_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_var(other)?;
        let inv0 = other.coeffs[0]
            .try_inverse()
            .ok_or(SeriesError::NotInvertible)?;
        let n = self.order().min(other.order());
        let mut out: Vec<R> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..=m {
                if !other.coeffs[k].is_zero() {
                    acc = acc.sub(&other.coeffs[k].mul(&out[m - k]));
                }
            }
            out.push(acc.mul(&inv0));
        }
        Ok(Self::new(self.var, out))
    }

    /// Quotient where leading powers cancel. The divisor must have an
    /// invertible leading coefficient and valuation at most the dividend's.
    pub fn div_cancelling(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_var(other)?;
        let vb = other.valuation().ok_or(SeriesError::Indeterminate)?;
        let na = self.order() as isize;
        let nb = other.order() as isize;
        let va = self.valuation().unwrap_or(self.order() + 1);
        if va < vb {
            return Err(SeriesError::Pole {
                dividend: va,
                divisor: vb,
            });
        }
        let known = (na - va as isize).min(nb - vb as isize);
        let result_order = va as isize - vb as isize + known;
        if result_order < 0 {
            return Err(SeriesError::Indeterminate);
        }
        if known < 0 {
            return Ok(Self::zero(self.var, result_order as usize));
        }
        let a = Self::new(self.var, self.coeffs[va..=(va + known as usize)].to_vec());
        let b = Self::new(self.var, other.coeffs[vb..=(vb + known as usize)].to_vec());
        Ok(a.checked_div(&b)?.mul_var_pow(va - vb))
    }

    /// Multiplication by `var^k`; the order grows by `k`.
    pub fn mul_var_pow(&self, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(self.var, v)
    }

    /// Exact division by `var^k`; the order drops by `k`.
    pub fn div_var_pow(&self, k: usize) -> Result<Self, SeriesError> {
        if k > self.order() || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(SeriesError::NotDivisible(self.var, k));
        }
        Ok(Self::new(self.var, self.coeffs[k..].to_vec()))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var, self.order());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        if self.coeffs[0] != R::one() {
            return Err(SeriesError::SqrtConstant);
        }
        let half = R::from_rational(&super::ring::q(1, 2));
        let n = self.order();
        let mut out: Vec<R> = vec![R::one()];
        for m in 1..=n {
            let mut acc = self.coeffs[m].clone();
            for k in 1..m {
                acc = acc.sub(&out[k].mul(&out[m - k]));
            }
            out.push(acc.mul(&half));
        }
        Ok(Self::new(self.var, out))
    }

    /// `self(inner)`. The result lives in the variable of `inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.truncate(n);
        let mut acc = TruncatedSeries::constant(inner.var, self.coeffs[n].clone(), n);
        for c in self.coeffs[..n].iter().rev() {
            acc = (&acc * &inner).add_constant(c);
        }
        Ok(acc)
    }

    /// Compositional inverse via Lagrange inversion, expressed in `new_var`.
    pub fn revert(&self, new_var: Var) -> Result<Self, SeriesError> {
        let n = self.order();
        if n == 0 || !self.coeffs[0].is_zero() {
            return Err(SeriesError::NotRevertible);
        }
        if self.coeffs[1].try_inverse().is_none() {
            return Err(SeriesError::NotRevertible);
        }
        // w = x / a(x), known to order n - 1
        let shifted = Self::new(self.var, self.coeffs[1..].to_vec());
        let w = shifted.inverse()?;
        let mut out = vec![R::zero(); n + 1];
        let mut wp = Self::one(self.var, n - 1);
        for (m, slot) in out.iter_mut().enumerate().skip(1) {
            wp = &wp * &w;
            *slot = wp.coeffs[m - 1].scale_q(&super::ring::q(1, m as i64));
        }
        Ok(Self::new(new_var, out))
    }

    /// Sum of the known terms at `value`.
    pub fn eval_truncated(&self, value: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(value).add(c);
        }
        acc
    }

    /// Derivative with respect to the series variable.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(self.var, 0);
        }
        Self::new(
            self.var,
            (1..=self.order())
                .map(|i| self.coeffs[i].mul(&R::from_int(i as i64)))
                .collect(),
        )
    }
}

impl TruncatedSeries<Q> {
    pub fn from_ints(var: Var, v: &[i64]) -> Self {
        Self::new(var, v.iter().map(|&c| Q::from_int(c)).collect())
    }

    pub fn lift<S: Ring>(&self) -> TruncatedSeries<S> {
        self.map_coeffs(S::from_rational)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<R: Ring> $tr<&TruncatedSeries<R>> for &TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $method(self, rhs: &TruncatedSeries<R>) -> TruncatedSeries<R> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl<R: Ring> $tr<TruncatedSeries<R>> for TruncatedSeries<R> {
            type Output = TruncatedSeries<R>;
            fn $method(self, rhs: TruncatedSeries<R>) -> TruncatedSeries<R> {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<R: Ring> Neg for &TruncatedSeries<R> {
    type Output = TruncatedSeries<R>;
    fn neg(self) -> TruncatedSeries<R> {
        TruncatedSeries::neg(self)
    }
}

impl fmt::Display for TruncatedSeries<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
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
                1 => write!(f, "{c}*{v}")?,
                _ => write!(f, "{c}*{v}^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({v}^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::{q, qi};

    fn s(v: &[i64]) -> TruncatedSeries<Q> {
        TruncatedSeries::from_ints(Var::G, v)
    }

    #[test]
    fn inverse_and_division() {
        let a = s(&[1, -1, 0, 0, 0]);
        assert_eq!(a.inverse().unwrap(), s(&[1, 1, 1, 1, 1]));
        let b = s(&[2, 3, 0, 1, 0]);
        let c = b.checked_div(&a).unwrap();
        assert_eq!(&c * &a, b);
    }

    #[test]
    fn catalan_square_root() {
        // sqrt(1-8g) gives R_inf = (1 - sqrt(1-8g)) / (4g) = sum 2^n Cat(n) g^n
        let r = s(&[1, -8, 0, 0, 0, 0, 0]).sqrt().unwrap();
        let num = s(&[1, 0, 0, 0, 0, 0, 0]) - r;
        let rinf = num.div_var_pow(1).unwrap().scale(&q(1, 4));
        assert_eq!(rinf, s(&[1, 2, 8, 40, 224, 1344]));
    }

    #[test]
    fn reversion_roundtrip() {
        let a = TruncatedSeries::from_ints(Var::X, &[0, 1, 3, -2, 5, 7, 1]);
        let b = a.revert(Var::G).unwrap();
        let id = a.compose(&b).unwrap();
        assert_eq!(id, TruncatedSeries::variable(Var::G, 6));
        assert_eq!(b.compose(&a).unwrap(), TruncatedSeries::variable(Var::X, 6));
    }

    #[test]
    fn orders_never_extrapolate() {
        let a = s(&[1, 1, 1]);
        let b = s(&[1, 1, 1, 1, 1]);
        assert_eq!((&a * &b).order(), 2);
        assert_eq!(a.mul_var_pow(2).order(), 4);
    }

    #[test]
    fn cancelling_division() {
        let a = s(&[0, 0, 2, 2, 0, 0]);
        let b = s(&[0, 1, 1, 0, 0, 0]);
        let c = a.div_cancelling(&b).unwrap();
        assert_eq!(c, s(&[0, 2, 0, 0, 0]));
        assert!(matches!(
            b.div_cancelling(&a),
            Err(SeriesError::Pole { .. })
        ));
    }

    #[test]
    #[should_panic(expected = "variable mismatch")]
    fn mixing_variables_panics() {
        let a = s(&[1, 1]);
        let b = TruncatedSeries::from_ints(Var::RescaledG, &[1, 1]);
        let _ = &a + &b;
    }

    #[test]
    fn compose_with_known_inner() {
        let outer = TruncatedSeries::from_ints(Var::X, &[1, 1, 1, 1]);
        let inner = s(&[0, 2, 0, 0]);
        assert_eq!(outer.compose(&inner).unwrap(), s(&[1, 2, 4, 8]));
        assert_eq!(qi(3), Q::from_int(3));
    }
}
