//! `H_k(α,d)` as a `g`-series with coefficients polynomial in `α²`.

use crate::classical::{solve_classical, SliceSeriesTable};
use crate::closed_form::{big_g_of_x, x_of_g_series};
use crate::kernel::{iterate_t, kernel_apply, solve_phi_omega, to_weight_g, KernelSystem};
use crate::series::{Polynomial, RationalFunction, Ring, TruncatedSeries, Var, Q};

use super::{check_range, HullError};

/// `g`-series whose coefficients are polynomials in `a = α²`.
pub type AlphaSeries = TruncatedSeries<Polynomial<Q>>;

/// Sets `α² = alpha_sq`.
pub fn specialize_alpha(s: &AlphaSeries, alpha_sq: &Q) -> TruncatedSeries<Q> {
    s.map_coeffs(|p| p.eval(alpha_sq))
}

/// `[g^f]` as the list of coefficients of `a^0, a^1, ...`: the number of
/// maps with `f` white faces and hull perimeter `2p` at index `p`.
pub fn perimeter_counts(s: &AlphaSeries, f: usize) -> Vec<Q> {
    s.coeff(f).coeffs().to_vec()
}

fn a_var() -> Polynomial<Q> {
    Polynomial::var()
}

/// Caches the kernel system, the slice table and `t_1..t_kmax` for one
/// working order.
#[derive(Clone, Debug)]
pub struct HullSeriesEngine {
    order: usize,
    table: SliceSeriesTable,
    system: KernelSystem,
    t: Vec<TruncatedSeries<Q>>,
}

impl HullSeriesEngine {
    pub fn new(kmax: usize, order: usize) -> Result<Self, HullError> {
        let table = solve_classical(kmax, order)?;
        let system = solve_phi_omega(order, order)?;
        let t = iterate_t(&system.phi, kmax.max(1))?;
        Ok(HullSeriesEngine {
            order,
            table,
            system,
            t,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &SliceSeriesTable {
        &self.table
    }

    pub fn system(&self) -> &KernelSystem {
        &self.system
    }

    fn r1(&self) -> TruncatedSeries<Q> {
        self.table.r(1).expect("R_1 present")
    }

    pub fn two_point(&self, k: usize) -> Result<TruncatedSeries<Q>, HullError> {
        Ok(self.table.two_point(k)?)
    }

    /// Rescaled `t_k` as a `G`-series.
    pub fn t(&self, k: usize) -> &TruncatedSeries<Q> {
        &self.t[k - 1]
    }

    /// `K^{k-d}(α² T_d) - K^{k-d}(α² T_{d-1})`, computed in rescaled form
    /// as `R_1 (k̃^{k-d}(α² t_d) - k̃^{k-d}(α² t_{d-1}))`.
    pub fn h_iterated(&self, k: usize, d: usize) -> Result<AlphaSeries, HullError> {
        if d == 1 && k >= 2 {
            return Ok(self.two_point(k)?.lift());
        }
        check_range(k, d)?;
        assert!(k <= self.t.len(), "engine built for k <= {}", self.t.len());
        let a = a_var();
        let mut upper = self.t(d).lift::<Polynomial<Q>>().scale(&a);
        let mut lower = self.t(d - 1).lift::<Polynomial<Q>>().scale(&a);
        for _ in 0..(k - d) {
            upper = kernel_apply(&self.system.phi, &upper)?;
            lower = kernel_apply(&self.system.phi, &lower)?;
        }
        let r1 = self.r1();
        let h = to_weight_g(&(&upper - &lower), &r1);
        Ok(&h * &r1.lift())
    }

    /// The closed form in `λ(α,d)` expanded as a formal `x`-series, with
    /// `μ_d = λ(α,d) x^(d-1)` solved by fixed point, then composed with `x(g)`.
    pub fn h_closed_series(&self, k: usize, d: usize) -> Result<AlphaSeries, HullError> {
        check_range(k, d)?;
        let n = self.order;
        let mu_d = mu_series(d, n)?;
        let mu_e = mu_series(d - 1, n)?;
        let xs =
            |m: usize| TruncatedSeries::<Polynomial<Q>>::monomial(Var::X, Polynomial::one(), m, n);
        let one = TruncatedSeries::<Polynomial<Q>>::one(Var::X, n);
        let pre = prefactor().to_series(Var::X, n)?.lift::<Polynomial<Q>>();
        let j = k - d;
        let num = &(&pre * &(&mu_e - &mu_d)) * &xs(j + 1);
        let num = &num * &(&one - &(&(&mu_d * &mu_e) * &xs(2 * j + 6)));
        let den_part = |mu: &TruncatedSeries<Polynomial<Q>>| {
            (&one - &(mu * &xs(j + 2)))
                .checked_mul(&(&one - &(mu * &xs(j + 4))))
                .expect("same variable")
        };
        let den = &den_part(&mu_d) * &den_part(&mu_e);
        let hx = num.checked_div(&den)?;
        let xg = x_of_g_series(n)?.lift::<Polynomial<Q>>();
        Ok(hx.compose(&xg)?)
    }

    /// `k̃^{k-d}(t^λ_d) - t^λ_k` in powers of `G`; zero when the deformed
    /// identity holds at this `λ`.
    pub fn generalized_lambda_residual(
        &self,
        k: usize,
        d: usize,
        lambda: &Q,
    ) -> Result<TruncatedSeries<Q>, HullError> {
        assert!(d >= 1 && k >= d);
        let n = self.order;
        let mut t = deformed_t(d, lambda, n)?;
        for _ in 0..(k - d) {
            t = kernel_apply(&self.system.phi, &t)?;
        }
        Ok(&t - &deformed_t(k, lambda, n)?)
    }
}

/// `(1-x²)²(1+x+x²)/(1+x²)`.
pub(crate) fn prefactor() -> RationalFunction {
    let p = |v: &[i64]| Polynomial::from_ints(v);
    RationalFunction::new(
        Ring::pow(&p(&[1, 0, -1]), 2).mul_poly(&p(&[1, 1, 1])),
        p(&[1, 0, 1]),
    )
    .unwrap()
}

/// `ρ(d) = (1-x^(d-1))(1-x^(d+5)) / ((1-x^(d+1))(1-x^(d+3)))`.
pub fn rho(d: usize) -> RationalFunction {
    let om = |n: usize| Polynomial::constant(Q::one()).sub_poly(&Polynomial::monomial(Q::one(), n));
    RationalFunction::new(
        om(d - 1).mul_poly(&om(d + 5)),
        om(d + 1).mul_poly(&om(d + 3)),
    )
    .unwrap()
}

/// `μ = 1 - α² ρ (1-μx²)(1-μx⁴)/(1-μx⁶)` as an `x`-series over `Q[α²]`.
fn mu_series(d: usize, n: usize) -> Result<TruncatedSeries<Polynomial<Q>>, HullError> {
    let one = TruncatedSeries::<Polynomial<Q>>::one(Var::X, n);
    if d == 1 {
        return Ok(one);
    }
    let rho_a = rho(d)
        .to_series(Var::X, n)?
        .lift::<Polynomial<Q>>()
        .scale(&a_var());
    let xs = |m: usize| TruncatedSeries::<Polynomial<Q>>::monomial(Var::X, Polynomial::one(), m, n);
    let mut mu = &one - &rho_a;
    for _ in 0..(n + 2) {
        let f = &(&one - &(&mu * &xs(2))) * &(&one - &(&mu * &xs(4)));
        let next = &one - &(&rho_a * &f.checked_div(&(&one - &(&mu * &xs(6))))?);
        if next == mu {
            break;
        }
        mu = next;
    }
    Ok(mu)
}

/// Rescaled `t_k` with `x^k` replaced by `λ x^k`, as a `G`-series.
fn deformed_t(k: usize, lambda: &Q, n: usize) -> Result<TruncatedSeries<Q>, HullError> {
    let p = |v: &[i64]| Polynomial::from_ints(v);
    let om = |m: usize| {
        Polynomial::constant(Q::one()).sub_poly(&Polynomial::monomial(lambda.clone(), m))
    };
    let pre = RationalFunction::new(p(&[0, 1, 1, 1]), p(&[1, 1, 1, 1, 1])).unwrap();
    let ratio = RationalFunction::new(
        om(k - 1).mul_poly(&om(k + 5)),
        om(k + 1).mul_poly(&om(k + 3)),
    )
    .unwrap();
    let f = pre.mul(&ratio);
    let big_g = big_g_of_x().to_series(Var::X, n)?;
    let x_of_big_g = big_g.revert(Var::RescaledG)?;
    let fx = f.to_series(Var::X, n)?;
    Ok(fx.compose(&x_of_big_g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    #[test]
    fn alpha_one_gives_two_point() {
        let e = HullSeriesEngine::new(6, 7).unwrap();
        for (k, d) in [(3, 2), (5, 2), (5, 4)] {
            let h = e.h_iterated(k, d).unwrap();
            assert_eq!(specialize_alpha(&h, &Q::one()), e.two_point(k).unwrap());
        }
    }

    #[test]
    fn routes_agree_small() {
        let e = HullSeriesEngine::new(5, 6).unwrap();
        assert_eq!(
            e.h_iterated(4, 2).unwrap(),
            e.h_closed_series(4, 2).unwrap()
        );
        assert_eq!(
            e.h_iterated(5, 3).unwrap(),
            e.h_closed_series(5, 3).unwrap()
        );
    }

    #[test]
    fn perimeter_is_at_least_two() {
        let e = HullSeriesEngine::new(5, 6).unwrap();
        let h = e.h_iterated(5, 3).unwrap();
        assert!(specialize_alpha(&h, &Q::zero()).is_zero_series());
    }

    #[test]
    fn deformed_identity() {
        let e = HullSeriesEngine::new(5, 6).unwrap();
        for lam in [q(1, 2), q(-1, 3), Q::one()] {
            assert!(e
                .generalized_lambda_residual(5, 2, &lam)
                .unwrap()
                .is_zero_series());
        }
    }

    #[test]
    fn out_of_range() {
        let e = HullSeriesEngine::new(4, 3).unwrap();
        assert!(matches!(
            e.h_iterated(3, 3),
            Err(HullError::DistanceOutOfRange { .. })
        ));
    }
}
