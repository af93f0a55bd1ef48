//! Expansions at `x = (1-ε)/(1+ε)`, i.e. `g = (1-ε⁴)/8`. The coefficient
//! of `ε⁶` carries the `(g*-g)^{3/2}` singularity; ratios of such
//! coefficients give local-limit expectations.

use crate::closed_form::gk_closed;
use crate::series::{
    rf_expand_epsilon, x_power_epsilon, Jet, QuadExt, RadicalRing, RationalFunction, Ring, ToF64,
    TruncatedSeries, Var, Q,
};

use super::iterated::{prefactor, rho};
use super::{check_range, HullError};

/// Expansion order used for singular coefficients (odd terms checked up to it).
const EPS_ORDER: usize = 7;

fn check_even<R: Ring>(s: &TruncatedSeries<R>) -> Result<(), HullError> {
    for n in [1, 2, 3, 5, 7] {
        if n <= s.order() && !s.coeff(n).is_zero() {
            return Err(HullError::UnexpectedCoefficient(n));
        }
    }
    Ok(())
}

/// `[ε⁶] f` for a rational function of `x`, after checking that the odd
/// and `ε²` coefficients vanish.
pub fn singular_coeff(f: &RationalFunction) -> Result<Q, HullError> {
    let s = rf_expand_epsilon(f, EPS_ORDER)?;
    check_even(&s)?;
    Ok(s.coeff(6).clone())
}

/// `[ε⁶] G_k`.
pub fn two_point_singular_coeff(k: usize) -> Result<Q, HullError> {
    singular_coeff(&gk_closed(k))
}

type Triple<E> = (TruncatedSeries<E>, TruncatedSeries<E>, TruncatedSeries<E>);

/// Coefficients of the quadratic for `ν` where `λ = 1 + εν`.
///
/// With `P(λ) = aλ² - bλ + c`, `ν` solves `aν² + (P'(1)/ε)ν + P(1)/ε² = 0`;
/// both divisions are exact.
fn nu_quadratic<E: Ring>(alpha_sq: &E, d: usize, order: usize) -> Result<Triple<E>, HullError> {
    let n = order + 1;
    let rho_e = rf_expand_epsilon(&rho(d), n)?;
    let xp = |m: usize| x_power_epsilon(m, n).lift::<E>();
    let r = rho_e.lift::<E>().scale(alpha_sq);
    let c = r.add_constant(&E::from_int(-1));
    let a = &xp(2 * d + 4) * &c;
    let b = &(&r * &(&xp(d + 1) + &xp(d + 3))) - &(&xp(d - 1) + &xp(d + 5));
    let big_b = (&a.scale(&E::from_int(2)) - &b).div_var_pow(1)?;
    let big_c = (&(&a - &b) + &c).div_var_pow(2)?;
    Ok((
        a.truncate(order - 1),
        big_b.truncate(order - 1),
        big_c.truncate(order - 1),
    ))
}

/// `λ(α,d) = 1 + εν(ε)` as an ε-series over a ring holding `α²`, on the
/// root that vanishes at `α = 1`.
pub fn lambda_epsilon<E: RadicalRing>(
    alpha_sq: &E,
    d: usize,
    order: usize,
) -> Result<TruncatedSeries<E>, HullError> {
    if d == 1 {
        return Ok(TruncatedSeries::one(Var::Epsilon, order));
    }
    let (a, b, c) = nu_quadratic(alpha_sq, d, order)?;
    // At α = 1, c₀ = 0 and ν₀ = (-b₀ + s|b₀|)/(2a₀) vanishes for s = sign(b₀).
    let (_, b_one, _) = nu_quadratic(&Q::one(), d, order)?;
    let sign = if b_one.coeff(0) >= &Q::zero() { 1 } else { -1 };
    let a0 = a.coeff(0).clone();
    let b0 = b.coeff(0).clone();
    let c0 = c.coeff(0).clone();
    let disc = b0.mul(&b0).sub(&E::from_int(4).mul(&a0).mul(&c0));
    let root = disc
        .principal_sqrt()
        .ok_or(HullError::NoSquareRoot)?
        .scale_q(&Q::from_int(sign));
    let two_a0_inv = a0
        .scale_q(&Q::from_int(2))
        .try_inverse()
        .ok_or(HullError::NoSquareRoot)?;
    let nu0 = b0.neg().add(&root).mul(&two_a0_inv);
    // Newton with the frozen derivative 2a₀ν₀ + b₀ = ±√disc.
    let deriv_inv = root.try_inverse().ok_or(HullError::NoSquareRoot)?;
    let mut nu = TruncatedSeries::constant(Var::Epsilon, nu0, order - 1);
    for _ in 0..order {
        let f = &(&(&a * &(&nu * &nu)) + &(&b * &nu)) + &c;
        nu = &nu - &f.scale(&deriv_inv);
    }
    Ok(nu.mul_var_pow(1).add_constant(&E::one()))
}

/// `H_k(α,d)` as an ε-series from the two `λ` expansions.
pub fn hull_epsilon<E: Ring>(
    k: usize,
    d: usize,
    lam_d: &TruncatedSeries<E>,
    lam_e: &TruncatedSeries<E>,
) -> Result<TruncatedSeries<E>, HullError> {
    check_range(k, d)?;
    let n = lam_d.order().min(lam_e.order());
    let xp = |m: usize| x_power_epsilon(m, n).lift::<E>();
    let one = TruncatedSeries::<E>::one(Var::Epsilon, n);
    let pre = rf_expand_epsilon(&prefactor(), n)?.lift::<E>();
    let n1 = &xp(k - 1) * &(lam_e - &(&xp(1) * lam_d));
    let n2 = &one - &(&(lam_d * lam_e) * &xp(2 * k + 3));
    let dd = |lam: &TruncatedSeries<E>, m: usize| &one - &(lam * &xp(m));
    let den = &(&dd(lam_d, k + 1) * &dd(lam_d, k + 3)) * &(&dd(lam_e, k) * &dd(lam_e, k + 2));
    let num = &(&pre * &n1) * &n2;
    Ok(num.div_cancelling(&den)?)
}

const LAMBDA_ORDER: usize = EPS_ORDER + 4;

fn expectation_ratio<E: Ring>(h: &TruncatedSeries<E>, k: usize) -> Result<E, HullError> {
    check_even(h)?;
    let gk = two_point_singular_coeff(k)?;
    let inv = gk.try_inverse().ok_or(HullError::VanishingNormalisation)?;
    Ok(h.coeff(6).scale_q(&inv))
}

/// `E_k(α^ℒ(d))` for rational `α²`, computed exactly in a tower of
/// quadratic extensions and rounded once.
pub fn expectation_alpha_exact(k: usize, d: usize, alpha_sq: &Q) -> Result<f64, HullError> {
    check_range(k, d)?;
    type Inner = QuadExt<Q>;
    type Tower = QuadExt<QuadExt<Q>>;
    let a2 = Inner::from_rational(alpha_sq);
    let lam_d: TruncatedSeries<Inner> = lambda_epsilon(&a2, d, LAMBDA_ORDER)?;
    let lam_e: TruncatedSeries<Inner> = lambda_epsilon(&a2, d - 1, LAMBDA_ORDER)?;
    let inner = lam_d.map_coeffs(|c| Tower::base(c.clone()));
    let outer = lam_e.map_coeffs(|c| match c.radicand() {
        Some(r) => Tower::new(
            Inner::base(c.rational_part().clone()),
            Inner::base(c.surd_part().clone()),
            Inner::base(r.clone()),
        ),
        None => Tower::base(Inner::base(c.rational_part().clone())),
    });
    let h = hull_epsilon(k, d, &inner, &outer)?;
    Ok(expectation_ratio(&h, k)?.to_f64())
}

/// `p_k(ℒ(d) = 2p)` for `p = 0..=pmax`, exactly, from the expansion of
/// `E_k(α^ℒ)` around `α² = 0`.
pub fn finite_k_distribution(k: usize, d: usize, pmax: usize) -> Result<Vec<Q>, HullError> {
    check_range(k, d)?;
    let a2 = Jet::var(pmax);
    let lam_d = lambda_epsilon(&a2, d, LAMBDA_ORDER)?;
    let lam_e = lambda_epsilon(&a2, d - 1, LAMBDA_ORDER)?;
    let h = hull_epsilon(k, d, &lam_d, &lam_e)?;
    let e = expectation_ratio(&h, k)?;
    Ok((0..=pmax).map(|p| e.coeff(p)).collect())
}

/// `E_k(ℒ(d)) = 2 ∂/∂(α²) E_k(α^ℒ)` at `α² = 1`, exactly.
pub fn finite_k_mean_singular(k: usize, d: usize) -> Result<Q, HullError> {
    check_range(k, d)?;
    let a2 = Jet::one().add(&Jet::var(1));
    let lam_d = lambda_epsilon(&a2, d, LAMBDA_ORDER)?;
    let lam_e = lambda_epsilon(&a2, d - 1, LAMBDA_ORDER)?;
    let h = hull_epsilon(k, d, &lam_d, &lam_e)?;
    let e = expectation_ratio(&h, k)?;
    Ok(e.coeff(1) * Q::from_int(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::g_of_x;
    use crate::series::q;

    #[test]
    fn weight_expansion() {
        let s = rf_expand_epsilon(&g_of_x(), 7).unwrap();
        assert_eq!(s.coeff(4), &q(-1, 8));
        assert_eq!(singular_coeff(&g_of_x()).unwrap(), Q::zero());
    }

    #[test]
    fn normalisation_at_alpha_one() {
        for (k, d) in [(3, 2), (5, 3)] {
            let e = expectation_alpha_exact(k, d, &Q::one()).unwrap();
            assert!((e - 1.0).abs() < 1e-14, "{e}");
            let dist = finite_k_distribution(k, d, 30).unwrap();
            assert_eq!(dist[0], Q::zero());
        }
    }

    #[test]
    fn mean_matches_closed_form() {
        for (k, d) in [(3, 2), (4, 3), (6, 3), (7, 5)] {
            let m = finite_k_mean_singular(k, d).unwrap();
            assert_eq!(m, crate::hull::e_k_mean(k, d).unwrap(), "k={k} d={d}");
        }
    }

    #[test]
    fn distribution_mass_and_mean() {
        let dist = finite_k_distribution(4, 2, 30).unwrap();
        let mass: f64 = dist.iter().map(crate::series::q_to_f64).sum();
        let mean: f64 = dist
            .iter()
            .enumerate()
            .map(|(p, v)| 2.0 * p as f64 * crate::series::q_to_f64(v))
            .sum();
        assert!((mass - 1.0).abs() < 1e-9, "{mass}");
        let exact = crate::series::q_to_f64(&crate::hull::e_k_mean(4, 2).unwrap());
        assert!((mean - exact).abs() < 1e-6, "{mean} vs {exact}");
    }
}
