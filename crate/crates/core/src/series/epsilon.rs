use thiserror::Error;

use super::polynomial::Polynomial;
use super::ratfunc::RationalFunction;
use super::ring::{Ring, Q};
use super::truncated::{SeriesError, TruncatedSeries, Var};

#[derive(Debug, Error, PartialEq)]
pub enum EpsilonError {
    #[error("pole of order {0} at the critical point")]
    Pole(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `Σ a_i (1-ε)^i (1+ε)^(n-i)` for a polynomial of formal degree `n`.
fn homogenize(p: &Polynomial<Q>, n: usize) -> Polynomial<Q> {
    let minus = Polynomial::from_ints(&[1, -1]);
    let plus = Polynomial::from_ints(&[1, 1]);
    let mut acc = Polynomial::zero_poly();
    for i in 0..=n {
        let c = p.coeff(i);
        if Ring::is_zero(&c) {
            continue;
        }
        let term = Ring::pow(&minus, i as u32)
            .mul_poly(&Ring::pow(&plus, (n - i) as u32))
            .scale(&c);
        acc = acc.add_poly(&term);
    }
    acc
}

/// Powers of `(1+ε)`, possibly negative, as an ε-series.
fn one_plus_eps_pow(e: i64, order: usize) -> TruncatedSeries<Q> {
    let base = TruncatedSeries::from_poly(Var::Epsilon, &Polynomial::from_ints(&[1, 1]), order);
    let p = base.pow(e.unsigned_abs() as u32);
    if e >= 0 {
        p
    } else {
        p.inverse().expect("constant term 1")
    }
}

/// Expansion of `f(x)` at `x = (1-ε)/(1+ε)` to order `ε^order`.
pub fn rf_expand_epsilon(
    f: &RationalFunction,
    order: usize,
) -> Result<TruncatedSeries<Q>, EpsilonError> {
    if f.is_zero_fn() {
        return Ok(TruncatedSeries::zero(Var::Epsilon, order));
    }
    let n = f.numerator().degree().unwrap_or(0);
    let m = f.denominator().degree().unwrap_or(0);
    let top = homogenize(f.numerator(), n);
    let bot = homogenize(f.denominator(), m);
    let v = top.valuation().expect("nonzero numerator");
    let w = bot.valuation().expect("nonzero denominator");
    if w > v {
        return Err(EpsilonError::Pole(w - v));
    }
    let a = TruncatedSeries::from_poly(
        Var::Epsilon,
        &Polynomial::new(top.coeffs()[v..].to_vec()),
        order,
    );
    let b = TruncatedSeries::from_poly(
        Var::Epsilon,
        &Polynomial::new(bot.coeffs()[w..].to_vec()),
        order,
    );
    let quotient = a.checked_div(&b)?;
    let scaled = &quotient * &one_plus_eps_pow(m as i64 - n as i64, order);
    Ok(scaled.mul_var_pow(v - w).truncate(order))
}

/// `x^m` with `x = (1-ε)/(1+ε)`.
pub fn x_power_epsilon(m: usize, order: usize) -> TruncatedSeries<Q> {
    let minus = TruncatedSeries::from_poly(Var::Epsilon, &Polynomial::from_ints(&[1, -1]), order);
    &minus.pow(m as u32) * &one_plus_eps_pow(-(m as i64), order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::q;

    #[test]
    fn weight_at_critical_point() {
        // g = x(1+x^2)/(1+x)^4 becomes (1-ε^4)/8
        let g = RationalFunction::new(
            Polynomial::from_ints(&[0, 1, 0, 1]),
            Ring::pow(&Polynomial::from_ints(&[1, 1]), 4),
        )
        .unwrap();
        let e = rf_expand_epsilon(&g, 8).unwrap();
        let mut want = vec![Q::zero(); 9];
        want[0] = q(1, 8);
        want[4] = q(-1, 8);
        assert_eq!(e, TruncatedSeries::new(Var::Epsilon, want));
    }

    #[test]
    fn pole_detected() {
        let f = RationalFunction::from_ints(&[1], &[-1, 1]);
        assert_eq!(rf_expand_epsilon(&f, 4), Err(EpsilonError::Pole(1)));
    }

    #[test]
    fn powers_of_x() {
        let x = rf_expand_epsilon(&RationalFunction::x(), 6).unwrap();
        assert_eq!(x_power_epsilon(3, 6), x.pow(3));
        let zero_at_one = RationalFunction::from_ints(&[-1, 1], &[1]);
        let e = rf_expand_epsilon(&zero_at_one, 3).unwrap();
        assert_eq!(e.valuation(), Some(1));
    }
}
