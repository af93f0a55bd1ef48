//! Parametric closed forms: the `C`, `Y` and `x` parametrizations, the
//! homographic recursion for `Y_k`, and the resulting formulas for `t_k`,
//! `T_k`, `R_k` and `G_k`.

use thiserror::Error;

use crate::series::{Polynomial, RationalFunction, Ring, SeriesError, TruncatedSeries, Var, Q};

#[derive(Debug, Error, PartialEq)]
pub enum ClosedFormError {
    #[error("pole of the parametrization")]
    Pole,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

fn poly(v: &[i64]) -> Polynomial<Q> {
    Polynomial::from_ints(v)
}

fn rf(num: Polynomial<Q>, den: Polynomial<Q>) -> RationalFunction {
    RationalFunction::new(num, den).expect("nonzero denominator")
}

fn pw(p: &Polynomial<Q>, n: u32) -> Polynomial<Q> {
    Ring::pow(p, n)
}

/// `1 - x^n`.
fn one_minus_xn(n: usize) -> Polynomial<Q> {
    Polynomial::constant(Q::one()).sub_poly(&Polynomial::monomial(Q::one(), n))
}

/// `g(x) = x(1+x²)/(1+x)⁴`.
pub fn g_of_x() -> RationalFunction {
    rf(poly(&[0, 1, 0, 1]), pw(&poly(&[1, 1]), 4))
}

/// `C(x) = x/(1+x²)`.
pub fn c_of_x() -> RationalFunction {
    rf(poly(&[0, 1]), poly(&[1, 0, 1]))
}

/// `G(x) = x(1+x+x²+x³+x⁴)² / ((1+x)⁴(1+x²)³)`.
pub fn big_g_of_x() -> RationalFunction {
    let num = poly(&[0, 1]).mul_poly(&pw(&poly(&[1, 1, 1, 1, 1]), 2));
    rf(
        num,
        pw(&poly(&[1, 1]), 4).mul_poly(&pw(&poly(&[1, 0, 1]), 3)),
    )
}

/// `R_1(x) = (1+x+x²+x³+x⁴)/(1+x²)²`.
pub fn r1_of_x() -> RationalFunction {
    rf(poly(&[1, 1, 1, 1, 1]), pw(&poly(&[1, 0, 1]), 2))
}

/// `r_∞(x) = (1+x)²(1+x²)/(1+x+x²+x³+x⁴)`.
pub fn r_inf_rescaled_of_x() -> RationalFunction {
    rf(
        pw(&poly(&[1, 1]), 2).mul_poly(&poly(&[1, 0, 1])),
        poly(&[1, 1, 1, 1, 1]),
    )
}

/// `(1-x^(k-1))(1-x^(k+5)) / ((1-x^(k+1))(1-x^(k+3)))`, shared by `t_k` and `T_k`.
fn slice_ratio(k: usize) -> RationalFunction {
    let num = one_minus_xn(k - 1).mul_poly(&one_minus_xn(k + 5));
    rf(num, one_minus_xn(k + 1).mul_poly(&one_minus_xn(k + 3)))
}

/// Rescaled `t_k = T_k / R_1`.
pub fn tk_rescaled_closed(k: usize) -> RationalFunction {
    assert!(k >= 1);
    let pre = rf(poly(&[0, 1, 1, 1]), poly(&[1, 1, 1, 1, 1]));
    pre.mul(&slice_ratio(k))
}

/// `T_k = R_k - R_1`.
pub fn tk_closed(k: usize) -> RationalFunction {
    assert!(k >= 1);
    let pre = rf(poly(&[0, 1, 1, 1]), pw(&poly(&[1, 0, 1]), 2));
    pre.mul(&slice_ratio(k))
}

/// `R_k`, with `R_0 = 0`.
pub fn rk_closed(k: usize) -> RationalFunction {
    if k == 0 {
        return RationalFunction::zero();
    }
    let pre = rf(pw(&poly(&[1, 1]), 2), poly(&[1, 0, 1]));
    let num = one_minus_xn(k).mul_poly(&one_minus_xn(k + 4));
    pre.mul(&rf(num, one_minus_xn(k + 1).mul_poly(&one_minus_xn(k + 3))))
}

/// Two-point function as the displayed product formula.
pub fn gk_closed(k: usize) -> RationalFunction {
    assert!(k >= 1);
    let num = pw(&poly(&[1, -1]), 3)
        .mul_poly(&pw(&poly(&[1, 1]), 2))
        .mul_poly(&poly(&[1, 1, 1]))
        .mul_poly(&Polynomial::monomial(Q::one(), k - 1))
        .mul_poly(&one_minus_xn(2 * k + 3));
    let den = poly(&[1, 0, 1])
        .mul_poly(&one_minus_xn(k))
        .mul_poly(&one_minus_xn(k + 1))
        .mul_poly(&one_minus_xn(k + 2))
        .mul_poly(&one_minus_xn(k + 3));
    let f = rf(num, den);
    if k == 1 {
        f.sub(&RationalFunction::one())
    } else {
        f
    }
}

/// `Y_k = -(1+x+x²)/(1+x²)² · (1-x^(k+3))/(1-x^(k+1))`.
pub fn yk_closed(k: usize) -> RationalFunction {
    assert!(k >= 1);
    let pre = rf(poly(&[-1, -1, -1]), pw(&poly(&[1, 0, 1]), 2));
    pre.mul(&rf(one_minus_xn(k + 3), one_minus_xn(k + 1)))
}

/// `f(1/x)`.
pub fn reciprocal_argument(f: &RationalFunction) -> RationalFunction {
    f.compose(&rf(poly(&[1]), poly(&[0, 1])))
        .expect("1/x is a valid argument")
}

/// Evaluates an integer polynomial at an element of any ring.
fn at<F: Ring>(c: &F, coeffs: &[i64]) -> F {
    let mut acc = F::zero();
    for &a in coeffs.iter().rev() {
        acc = acc.mul(c).add(&F::from_int(a));
    }
    acc
}

fn div<F: Ring>(a: &F, b: &F) -> Result<F, ClosedFormError> {
    Ok(a.mul(&b.try_inverse().ok_or(ClosedFormError::Pole)?))
}

/// `G(C) = C(C²-C-1)²/(2C+1)²`.
pub fn g_of_c<F: Ring>(c: &F) -> Result<F, ClosedFormError> {
    let q = at(c, &[-1, -1, 1]);
    div(&c.mul(&q).mul(&q), &at(c, &[1, 2]).pow(2))
}

/// `h̃₄(C) = C(C³+2C²-C-1)/((C-1)(2C+1)²)`.
pub fn h4_of_c<F: Ring>(c: &F) -> Result<F, ClosedFormError> {
    div(
        &c.mul(&at(c, &[-1, -1, 2, 1])),
        &at(c, &[-1, 1]).mul(&at(c, &[1, 2]).pow(2)),
    )
}

/// Line of double roots `t(C) = -C(C+1)/(C²-C-1)`.
pub fn t_line_of_c<F: Ring>(c: &F) -> Result<F, ClosedFormError> {
    div(&c.mul(&at(c, &[1, 1])).neg(), &at(c, &[-1, -1, 1]))
}

/// `t(Y) = -(C+Y+1)(C³+C²+Y) / (C(C²-C-1)Y)`.
pub fn t_of_y<F: Ring>(c: &F, y: &F) -> Result<F, ClosedFormError> {
    let num = at(c, &[1, 1])
        .add(y)
        .mul(&at(c, &[0, 0, 1, 1]).add(y))
        .neg();
    div(&num, &c.mul(&at(c, &[-1, -1, 1])).mul(y))
}

/// `φ(Y)` on the branch selected by `Y_1 = -(C+1)` at `t = 0`.
pub fn phi_of_y<F: Ring>(c: &F, y: &F) -> Result<F, ClosedFormError> {
    let c2 = c.mul(c);
    // C⁴+2C³+C² + Y(1+C-C²)
    let inner = at(c, &[0, 0, 1, 2, 1]).add(&y.mul(&at(c, &[1, 1, -1])));
    let num = c.mul(&at(c, &[-1, -1, 1])).mul(y).mul(&inner).neg();
    let den = at(c, &[1, 2])
        .pow(2)
        .mul(&c2.add(y))
        .mul(&at(c, &[0, 0, 1, 1]).add(y));
    div(&num, &den)
}

/// Left side of `0 = C²(C+1)² + ((C+1)(C²+1) + C(C²-C-1)t)Y + Y²`.
pub fn eq_y_residual<F: Ring>(c: &F, t: &F, y: &F) -> F {
    let b = at(c, &[1, 1, 1, 1]).add(&c.mul(&at(c, &[-1, -1, 1])).mul(t));
    c.mul(c)
        .mul(&at(c, &[1, 1]).pow(2))
        .add(&b.mul(y))
        .add(&y.mul(y))
}

/// The quadratic in `φ` at fixed `(C, t)`.
pub fn phi_quadratic_residual<F: Ring>(c: &F, t: &F, phi: &F) -> F {
    let cp1_3 = at(c, &[1, 1]).pow(3);
    let q = at(c, &[-1, -1, 1]);
    let q2 = q.mul(&q);
    let k0 = c
        .mul(&cp1_3)
        .mul(&c.mul(&at(c, &[-1, -1, 2, 1])).add(&q2.mul(t)));
    let k1 = at(c, &[1, 2]).pow(2).mul(
        &c.mul(&at(c, &[-1, 1]))
            .mul(&cp1_3)
            .add(&at(c, &[1, 1]).mul(&at(c, &[1, 3, 1, -2, 2])).mul(t))
            .add(&c.mul(&q2).mul(&t.mul(t))),
    );
    let k2 = at(c, &[1, 2]).pow(4).mul(t).mul(&t.add(&F::one()));
    k0.sub(&k1.mul(phi)).add(&k2.mul(&phi.mul(phi)))
}

/// `(t+1)⁵G² - (t-1)(t+1)²G - t`.
pub fn eq_tg_residual<F: Ring>(t: &F, g: &F) -> F {
    let tp1 = t.add(&F::one());
    tp1.pow(5)
        .mul(&g.mul(g))
        .sub(&t.sub(&F::one()).mul(&tp1.pow(2)).mul(g))
        .sub(t)
}

/// `h̃₄⁽¹⁾ = (G(t+1)φ + tω((t+1)φ-1)) / (G + tω((t+1)φ-1))`.
pub fn h4_first<F: Ring>(g: &F, t: &F, phi: &F, omega: &F) -> Result<F, ClosedFormError> {
    let tp1 = t.add(&F::one());
    let w = t.mul(omega).mul(&tp1.mul(phi).sub(&F::one()));
    div(&g.mul(&tp1).mul(phi).add(&w), &g.add(&w))
}

/// `h̃₄⁽²⁾ = (G(ωt²-t-φ) - tφ((t+1)ω-1)) / (G(t+1)(tω-1) - tφ((t+1)ω-1))`.
pub fn h4_second<F: Ring>(g: &F, t: &F, phi: &F, omega: &F) -> Result<F, ClosedFormError> {
    let tp1 = t.add(&F::one());
    let v = t.mul(phi).mul(&tp1.mul(omega).sub(&F::one()));
    let num = g.mul(&omega.mul(&t.mul(t)).sub(t).sub(phi)).sub(&v);
    let den = g.mul(&tp1).mul(&t.mul(omega).sub(&F::one())).sub(&v);
    div(&num, &den)
}

/// `φ` and `ω` on the line of double roots.
pub fn line_phi<F: Ring>(t: &F) -> Result<F, ClosedFormError> {
    div(t, &t.add(&F::one()).pow(2))
}

pub fn line_omega<F: Ring>(t: &F, g: &F) -> Result<F, ClosedFormError> {
    let tp1 = t.add(&F::one());
    div(&t.sub(&g.mul(&tp1.pow(2))), &t.mul(&tp1))
}

/// The two factors of the recursion between consecutive `Y`'s.
pub fn recursion_factors<F: Ring>(c: &F, y_prev: &F, y: &F) -> (F, F) {
    let c2 = c.mul(c);
    let first = at(c, &[0, 0, 0, 1, 1])
        .sub(&c2.mul(y_prev))
        .sub(&c2.mul(y))
        .sub(&y_prev.mul(y));
    let cp1 = at(c, &[1, 1]);
    let second = c2
        .mul(&cp1.pow(2))
        .add(&cp1.pow(2).mul(y_prev))
        .sub(&c.mul(&cp1).mul(y))
        .add(&y_prev.mul(y));
    (first, second)
}

/// `Y(t)` with the minus determination, pinned by `Y(0) = -(C+1)`.
pub fn y_of_t_numeric(c: f64, t: f64) -> f64 {
    let b = (c + 1.0) * (c * c + 1.0) + c * (c * c - c - 1.0) * t;
    let disc = b * b - 4.0 * c * c * (c + 1.0) * (c + 1.0);
    -0.5 * (b + disc.sqrt())
}

/// Report of the exact checks on the line of double roots.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecialLineReport {
    pub tg_residual_vanishes: bool,
    pub h4_expressions_agree: bool,
    pub h4_matches_parametrization: bool,
    pub g_at_half: Q,
}

impl SpecialLineReport {
    pub fn all_hold(&self) -> bool {
        self.tg_residual_vanishes && self.h4_expressions_agree && self.h4_matches_parametrization
    }
}

/// All checks as identities in the symbol `C`.
pub fn check_special_line() -> Result<SpecialLineReport, ClosedFormError> {
    let c = RationalFunction::x();
    let g = g_of_c(&c)?;
    let t = t_line_of_c(&c)?;
    let phi = line_phi(&t)?;
    let omega = line_omega(&t, &g)?;
    let h1 = h4_first(&g, &t, &phi, &omega)?;
    let h2 = h4_second(&g, &t, &phi, &omega)?;
    Ok(SpecialLineReport {
        tg_residual_vanishes: eq_tg_residual(&t, &g).is_zero(),
        h4_expressions_agree: h1 == h2,
        h4_matches_parametrization: h1 == h4_of_c(&c)?,
        g_at_half: g_of_c(&crate::series::q(1, 2))?,
    })
}

/// The map `Y ↦ (aY + b)/(cY + d)` with coefficients in `x`.
#[derive(Clone, Debug)]
pub struct HomographicMap {
    pub a: RationalFunction,
    pub b: RationalFunction,
    pub c: RationalFunction,
    pub d: RationalFunction,
}

impl HomographicMap {
    /// `a = (C+1)², b = C²(C+1)², c = -1, d = C(C+1)` with `C = x/(1+x²)`.
    pub fn from_x() -> Self {
        let cc = c_of_x();
        let cp1 = cc.add(&RationalFunction::one());
        HomographicMap {
            a: cp1.pow(2),
            b: cc.pow(2).mul(&cp1.pow(2)),
            c: RationalFunction::from_int(-1),
            d: cc.mul(&cp1),
        }
    }

    pub fn apply(&self, y: &RationalFunction) -> Result<RationalFunction, ClosedFormError> {
        div(&self.a.mul(y).add(&self.b), &self.c.mul(y).add(&self.d))
    }

    /// `α = -(1+x+x²)/(1+x²)²`, `β = x²α`.
    pub fn fixed_points(&self) -> (RationalFunction, RationalFunction) {
        let alpha = rf(poly(&[-1, -1, -1]), pw(&poly(&[1, 0, 1]), 2));
        let beta = alpha.mul(&rf(poly(&[0, 0, 1]), poly(&[1])));
        (alpha, beta)
    }

    /// `(cβ + d)/(cα + d)`.
    pub fn multiplier(&self) -> Result<RationalFunction, ClosedFormError> {
        let (alpha, beta) = self.fixed_points();
        div(
            &self.c.mul(&beta).add(&self.d),
            &self.c.mul(&alpha).add(&self.d),
        )
    }

    /// Sum and product of the fixed points from the map coefficients:
    /// fixed points solve `cY² + (d-a)Y - b = 0`.
    pub fn trace_relations_hold(&self) -> bool {
        let (alpha, beta) = self.fixed_points();
        let sum_ok = div(&self.a.sub(&self.d), &self.c).ok() == Some(alpha.add(&beta));
        let prod_ok = div(&self.b.neg(), &self.c).ok() == Some(alpha.mul(&beta));
        sum_ok && prod_ok
    }
}

/// `W_k = (Y_k - α)/(Y_k - β)`.
pub fn w_k(k: usize) -> Result<RationalFunction, ClosedFormError> {
    let (alpha, beta) = HomographicMap::from_x().fixed_points();
    let y = yk_closed(k);
    div(&y.sub(&alpha), &y.sub(&beta))
}

/// Name of a one-parameter change of variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamName {
    XOfG,
    COfX,
    GOfC,
    TOfY,
}

/// A change of variables with the interval on which it is used.
#[derive(Clone, Debug)]
pub struct Parametrization {
    pub name: ParamName,
    pub forward: RationalFunction,
    pub interval: (Q, Q),
}

impl Parametrization {
    /// `g(x)` on `[0, 1]`, inverted as `x(g)`.
    pub fn x_of_g() -> Self {
        Parametrization {
            name: ParamName::XOfG,
            forward: g_of_x(),
            interval: (Q::zero(), Q::one()),
        }
    }

    pub fn c_of_x() -> Self {
        Parametrization {
            name: ParamName::COfX,
            forward: c_of_x(),
            interval: (Q::zero(), Q::one()),
        }
    }

    pub fn g_of_c() -> Self {
        let f = g_of_c(&RationalFunction::x()).expect("rational in C");
        Parametrization {
            name: ParamName::GOfC,
            forward: f,
            interval: (Q::zero(), crate::series::q(1, 2)),
        }
    }

    /// `t(Y)` at fixed `C`, on the branch interval `[-(C+1), -C²(C+1))`.
    pub fn t_of_y(c: &Q) -> Self {
        let cc = RationalFunction::constant(c.clone());
        let f = t_of_y(&cc, &RationalFunction::x()).expect("C in (0, 1/2)");
        let cp1 = c + Q::one();
        Parametrization {
            name: ParamName::TOfY,
            forward: f,
            interval: (-cp1.clone(), -(c * c * cp1)),
        }
    }

    /// Sign of the derivative at `samples` interior points, constant when injective.
    pub fn is_monotone(&self, samples: usize) -> bool {
        let d = self.forward.derivative();
        let (lo, hi) = &self.interval;
        let mut sign = 0i8;
        for i in 1..samples {
            let s = lo + (hi - lo) * Q::from_int(i as i64) / Q::from_int(samples as i64);
            let Ok(v) = d.eval(&s) else { return false };
            let sv = if v > Q::zero() {
                1
            } else if v < Q::zero() {
                -1
            } else {
                0
            };
            if sv == 0 || (sign != 0 && sv != sign) {
                return false;
            }
            sign = sv;
        }
        true
    }
}

/// `x(g)` as a power series in `g`.
pub fn x_of_g_series(order: usize) -> Result<TruncatedSeries<Q>, ClosedFormError> {
    let g = g_of_x()
        .to_series(Var::X, order)
        .map_err(|_| ClosedFormError::Pole)?;
    Ok(g.revert(Var::G)?)
}

/// A rational function of `x`, expanded in `g` through `x(g)`.
pub fn expand_in_g(
    f: &RationalFunction,
    order: usize,
) -> Result<TruncatedSeries<Q>, ClosedFormError> {
    let xg = x_of_g_series(order)?;
    let fx = f
        .to_series(Var::X, order)
        .map_err(|_| ClosedFormError::Pole)?;
    Ok(fx.compose(&xg)?)
}

/// A rational function of `x`, expanded in the rescaled `G` through `x(G)`.
pub fn expand_in_big_g(
    f: &RationalFunction,
    order: usize,
) -> Result<TruncatedSeries<Q>, ClosedFormError> {
    let big_g = big_g_of_x()
        .to_series(Var::X, order)
        .map_err(|_| ClosedFormError::Pole)?;
    let xg = big_g.revert(Var::RescaledG)?;
    let fx = f
        .to_series(Var::X, order)
        .map_err(|_| ClosedFormError::Pole)?;
    Ok(fx.compose(&xg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    #[test]
    fn first_slices() {
        assert_eq!(rk_closed(1), r1_of_x());
        assert!(rk_closed(0).is_zero());
        for k in 1..6 {
            assert_eq!(rk_closed(k).eval(&Q::zero()).unwrap(), Q::one());
            let telescoped = rk_closed(k).sub(&rk_closed(k - 1));
            let want = if k == 1 {
                telescoped.sub(&RationalFunction::one())
            } else {
                telescoped
            };
            assert_eq!(gk_closed(k), want);
        }
    }

    #[test]
    fn y_initial_condition() {
        let cc = c_of_x();
        assert_eq!(yk_closed(1), cc.add(&RationalFunction::one()).neg());
        let (alpha, beta) = HomographicMap::from_x().fixed_points();
        assert_eq!(beta, alpha.mul(&RationalFunction::x().pow(2)));
    }

    #[test]
    fn t_at_anchor_and_branch() {
        let c = q(1, 3);
        let y1 = -(&c + Q::one());
        assert_eq!(t_of_y(&c, &y1).unwrap(), Q::zero());
        assert_eq!(phi_of_y(&c, &y1).unwrap(), h4_of_c(&c).unwrap());
        let yn = y_of_t_numeric(1.0 / 3.0, 0.0);
        assert!((yn + 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn special_line() {
        let r = check_special_line().unwrap();
        assert!(r.all_hold());
        assert_eq!(r.g_at_half, q(25, 128));
    }
}
