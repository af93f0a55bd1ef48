//! The closed system for `φ(t,G)` and `ω(t,G)`, the kernel `k̃(t)` and the
//! recursion `t_k = k̃(t_{k-1})`, all solved order by order in `G`.

use thiserror::Error;

use crate::classical::SliceSeriesTable;
use crate::series::{Polynomial, Ring, SeriesError, TruncatedSeries, Var, Q};

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("bracket not divisible by t at G^{0}")]
    NotDivisibleByT(usize),
    #[error("kernel argument has a nonzero constant term")]
    NonzeroConstant,
    #[error("fixed point not reached after {0} sweeps")]
    NoConvergence(usize),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Series in `G` whose coefficients are polynomials in `t` of degree at
/// most `t_order`. Products drop `t`-powers above the cap.
#[derive(Clone, PartialEq, Debug)]
pub struct BivariateSeries {
    cols: Vec<Polynomial<Q>>,
    t_order: usize,
}

impl BivariateSeries {
    pub fn zero(g_order: usize, t_order: usize) -> Self {
        BivariateSeries {
            cols: vec![Polynomial::zero_poly(); g_order + 1],
            t_order,
        }
    }

    pub fn one(g_order: usize, t_order: usize) -> Self {
        let mut s = Self::zero(g_order, t_order);
        s.cols[0] = Polynomial::constant(Q::one());
        s
    }

    /// The monomial `G^a t^b`.
    pub fn monomial(a: usize, b: usize, g_order: usize, t_order: usize) -> Self {
        let mut s = Self::zero(g_order, t_order);
        if a <= g_order && b <= t_order {
            s.cols[a] = Polynomial::monomial(Q::one(), b);
        }
        s
    }

    /// A `G`-series constant in `t`.
    pub fn from_g_series(s: &TruncatedSeries<Q>, t_order: usize) -> Self {
        BivariateSeries {
            cols: s
                .coeffs()
                .iter()
                .map(|c| Polynomial::constant(c.clone()))
                .collect(),
            t_order,
        }
    }

    pub fn from_columns(cols: Vec<Polynomial<Q>>, t_order: usize) -> Self {
        assert!(!cols.is_empty());
        BivariateSeries {
            cols: cols.into_iter().map(|c| c.truncate(t_order)).collect(),
            t_order,
        }
    }

    pub fn g_order(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn t_order(&self) -> usize {
        self.t_order
    }

    /// `[G^a t^b]`.
    pub fn coeff(&self, a: usize, b: usize) -> Q {
        self.cols[a].coeff(b)
    }

    /// Polynomial in `t` multiplying `G^a`.
    pub fn g_column(&self, a: usize) -> &Polynomial<Q> {
        &self.cols[a]
    }

    /// `G`-series multiplying `t^b`.
    pub fn t_column(&self, b: usize) -> TruncatedSeries<Q> {
        TruncatedSeries::new(
            Var::RescaledG,
            self.cols.iter().map(|c| c.coeff(b)).collect(),
        )
    }

    pub fn at_t_zero(&self) -> TruncatedSeries<Q> {
        self.t_column(0)
    }

    pub fn max_t_degree(&self) -> usize {
        self.cols
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero_poly())
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&Polynomial<Q>, &Polynomial<Q>) -> Polynomial<Q>,
    ) -> Self {
        let n = self.g_order().min(other.g_order());
        BivariateSeries {
            cols: (0..=n).map(|a| f(&self.cols[a], &other.cols[a])).collect(),
            t_order: self.t_order.min(other.t_order),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add_poly(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub_poly(b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.g_order().min(other.g_order());
        let tn = self.t_order.min(other.t_order);
        let mut cols = vec![Polynomial::zero_poly(); n + 1];
        for i in 0..=n {
            if self.cols[i].is_zero_poly() {
                continue;
            }
            for j in 0..=(n - i) {
                if !other.cols[j].is_zero_poly() {
                    cols[i + j] =
                        cols[i + j].add_poly(&self.cols[i].mul_truncated(&other.cols[j], tn));
                }
            }
        }
        BivariateSeries { cols, t_order: tn }
    }

    /// Inverse of a series whose `G^0` coefficient is a nonzero constant.
    pub fn inverse(&self) -> Result<Self, KernelError> {
        let c0 = &self.cols[0];
        if c0.degree() != Some(0) {
            return Err(KernelError::Series(SeriesError::NotInvertible));
        }
        let inv0 = c0.coeff(0).try_inverse().unwrap();
        let n = self.g_order();
        let mut out: Vec<Polynomial<Q>> = vec![Polynomial::constant(inv0.clone())];
        for m in 1..=n {
            let mut acc = Polynomial::zero_poly();
            for k in 1..=m {
                if !self.cols[k].is_zero_poly() {
                    acc = acc.add_poly(&self.cols[k].mul_truncated(&out[m - k], self.t_order));
                }
            }
            out.push(acc.scale(&inv0).neg_poly());
        }
        Ok(BivariateSeries {
            cols: out,
            t_order: self.t_order,
        })
    }

    /// Multiplication by `G`, keeping the `G`-order.
    pub fn mul_g(&self) -> Self {
        let mut cols = vec![Polynomial::zero_poly()];
        cols.extend(self.cols[..self.g_order()].iter().cloned());
        BivariateSeries {
            cols,
            t_order: self.t_order,
        }
    }

    /// Exact division by `t`; fails loudly if any column has a constant term.
    pub fn div_t(&self) -> Result<Self, KernelError> {
        let mut cols = Vec::with_capacity(self.cols.len());
        for (a, c) in self.cols.iter().enumerate() {
            if !Ring::is_zero(&c.coeff(0)) {
                return Err(KernelError::NotDivisibleByT(a));
            }
            cols.push(Polynomial::new(
                c.coeffs().iter().skip(1).cloned().collect(),
            ));
        }
        Ok(BivariateSeries {
            cols,
            t_order: self.t_order,
        })
    }

    pub fn truncate(&self, g_order: usize, t_order: usize) -> Self {
        let n = g_order.min(self.g_order());
        BivariateSeries {
            cols: self.cols[..=n]
                .iter()
                .map(|c| c.truncate(t_order))
                .collect(),
            t_order,
        }
    }

    /// Substitutes a `G`-series over `R` for `t`.
    pub fn eval_t<R: Ring>(&self, t_in: &TruncatedSeries<R>) -> TruncatedSeries<R> {
        let n = self.g_order().min(t_in.order());
        let t_in = t_in.truncate(n);
        let top = self.max_t_degree();
        let col = |b: usize| self.t_column(b).truncate(n).map_coeffs(R::from_rational);
        let mut acc = col(top);
        for b in (0..top).rev() {
            acc = &(&acc * &t_in) + &col(b);
        }
        acc
    }
}

/// Solution triple of the rescaled system.
#[derive(Clone, Debug)]
pub struct KernelSystem {
    pub phi: BivariateSeries,
    pub omega: BivariateSeries,
    pub h4: TruncatedSeries<Q>,
    pub sweeps: usize,
}

fn t_plus_one(n: usize, tn: usize) -> BivariateSeries {
    BivariateSeries::one(n, tn).add(&BivariateSeries::monomial(0, 1, n, tn))
}

/// Right-hand sides of both equations for the given `(φ, ω)`. The value
/// `h̃₄ = φ(0)` is read from `phi`.
fn system_rhs(
    phi: &BivariateSeries,
    omega: &BivariateSeries,
) -> Result<(BivariateSeries, BivariateSeries), KernelError> {
    let n = phi.g_order();
    let tn = phi.t_order();
    let one = BivariateSeries::one(n, tn);
    let t = BivariateSeries::monomial(0, 1, n, tn);
    let tp1 = t_plus_one(n, tn);
    let h = BivariateSeries::from_g_series(&phi.at_t_zero(), tn);
    let inv_one_minus_h = one.sub(&h).inverse()?;

    let u = tp1.mul(phi);
    let bracket_omega = u.mul(&one.sub(&u).inverse()?).sub(&h.mul(&inv_one_minus_h));
    let omega_rhs = bracket_omega.div_t()?.mul_g();

    let inv_v = one.sub(&tp1.mul(omega)).inverse()?;
    let t_omega = t.mul(omega);
    let term1 = t_omega.mul(&inv_v);
    let term2 = inv_one_minus_h
        .mul(&phi.sub(&h).add(&t_omega.mul(&h)))
        .mul(&inv_v);
    let phi_rhs = BivariateSeries::monomial(1, 0, n, tn).add(&term1.add(&term2).div_t()?.mul_g());
    Ok((phi_rhs, omega_rhs))
}

/// Fixed-point solution seeded with `φ = G`, `ω = 0`, alternating full
/// updates of `ω` and `φ`.
pub fn solve_phi_omega(g_order: usize, t_order: usize) -> Result<KernelSystem, KernelError> {
    let mut phi = BivariateSeries::monomial(1, 0, g_order, t_order);
    let mut omega = BivariateSeries::zero(g_order, t_order);
    let max_sweeps = 2 * (g_order + 1) + 2;
    for sweep in 1..=max_sweeps {
        let (_, omega_next) = system_rhs(&phi, &omega)?;
        let (phi_next, _) = system_rhs(&phi, &omega_next)?;
        let done = omega_next == omega && phi_next == phi;
        omega = omega_next;
        phi = phi_next;
        if done {
            let h4 = phi.at_t_zero();
            return Ok(KernelSystem {
                phi,
                omega,
                h4,
                sweeps: sweep,
            });
        }
    }
    Err(KernelError::NoConvergence(max_sweeps))
}

/// Differences between both sides of the system; zero for a solution.
pub fn system_residuals(
    sys: &KernelSystem,
) -> Result<(BivariateSeries, BivariateSeries), KernelError> {
    let (phi_rhs, omega_rhs) = system_rhs(&sys.phi, &sys.omega)?;
    Ok((sys.phi.sub(&phi_rhs), sys.omega.sub(&omega_rhs)))
}

/// `k̃(t) = (t+1)φ / (1 - (t+1)φ)` as a bivariate series.
pub fn rescaled_kernel(phi: &BivariateSeries) -> Result<BivariateSeries, KernelError> {
    let n = phi.g_order();
    let tn = phi.t_order();
    let u = t_plus_one(n, tn).mul(phi);
    Ok(u.mul(&BivariateSeries::one(n, tn).sub(&u).inverse()?))
}

/// `k̃(t_in)` for a `G`-series `t_in` with zero constant term.
pub fn kernel_apply<R: Ring>(
    phi: &BivariateSeries,
    t_in: &TruncatedSeries<R>,
) -> Result<TruncatedSeries<R>, KernelError> {
    if !t_in.coeff(0).is_zero() {
        return Err(KernelError::NonzeroConstant);
    }
    let phi_t = phi.eval_t(t_in);
    let u = &t_in.add_constant(&R::one()).truncate(phi_t.order()) * &phi_t;
    let one_minus = (-&u).add_constant(&R::one());
    Ok(u.checked_div(&one_minus)?)
}

/// `t_1 = 0, t_2, ..., t_kmax` as `G`-series.
pub fn iterate_t(
    phi: &BivariateSeries,
    kmax: usize,
) -> Result<Vec<TruncatedSeries<Q>>, KernelError> {
    let mut out = vec![TruncatedSeries::zero(Var::RescaledG, phi.g_order())];
    while out.len() < kmax {
        let next = kernel_apply(phi, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `G(g) = g R_1(g)^2`.
pub fn rescaled_weight(r1: &TruncatedSeries<Q>) -> TruncatedSeries<Q> {
    (r1 * r1).mul_var_pow(1).truncate(r1.order())
}

/// Rewrites a `G`-series as a `g`-series using `G = g R_1^2`.
pub fn to_weight_g<R: Ring>(s: &TruncatedSeries<R>, r1: &TruncatedSeries<Q>) -> TruncatedSeries<R> {
    let big_g = rescaled_weight(r1).map_coeffs(R::from_rational);
    s.compose(&big_g).expect("G(g) has zero constant term")
}

/// `R_k = R_1 (t_k + 1)` for `k = 1..kmax`, in powers of `g`.
pub fn slice_series_from_kernel(
    sys: &KernelSystem,
    table: &SliceSeriesTable,
    kmax: usize,
) -> Result<Vec<TruncatedSeries<Q>>, KernelError> {
    let r1 = table.r(1).expect("R_1 present");
    let ts = iterate_t(&sys.phi, kmax)?;
    Ok(ts
        .iter()
        .map(|t| &r1 * &to_weight_g(t, &r1).add_constant(&Q::one()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Rescaled,
    Unrescaled,
}

/// Coefficients `K_p`, `p = 0..P`, either as `G`-series `k̃_p` or as
/// `g`-series `K_p = R_1^(1-p) k̃_p(G(g))`.
#[derive(Clone, Debug)]
pub struct KernelSeries {
    pub provenance: Provenance,
    pub coefficients: Vec<TruncatedSeries<Q>>,
}

pub fn rescaled_kernel_coefficients(
    phi: &BivariateSeries,
    p: usize,
) -> Result<KernelSeries, KernelError> {
    let k = rescaled_kernel(phi)?;
    Ok(KernelSeries {
        provenance: Provenance::Rescaled,
        coefficients: (0..=p).map(|i| k.t_column(i)).collect(),
    })
}

/// Multiplies a `g`-series by `R_1^e`.
fn times_r1_pow(s: &TruncatedSeries<Q>, r1: &TruncatedSeries<Q>, e: i64) -> TruncatedSeries<Q> {
    let base = if e >= 0 {
        r1.clone()
    } else {
        r1.inverse().expect("R_1(0) = 1")
    };
    s * &base.pow(e.unsigned_abs() as u32)
}

pub fn kernel_coefficients(
    phi: &BivariateSeries,
    table: &SliceSeriesTable,
    p: usize,
) -> Result<KernelSeries, KernelError> {
    let r1 = table.r(1).expect("R_1 present");
    let rescaled = rescaled_kernel_coefficients(phi, p)?;
    let coefficients = rescaled
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, kp)| times_r1_pow(&to_weight_g(kp, &r1), &r1, 1 - i as i64))
        .collect();
    Ok(KernelSeries {
        provenance: Provenance::Unrescaled,
        coefficients,
    })
}

/// `f_{2i}(g) = f̃_{2i}(G(g)) / R_1^i`, read off `ω = Σ f̃_{2i} t^(i-2)`.
pub fn boundary_f(sys: &KernelSystem, table: &SliceSeriesTable, i: usize) -> TruncatedSeries<Q> {
    assert!(i >= 2);
    let r1 = table.r(1).expect("R_1 present");
    times_r1_pow(
        &to_weight_g(&sys.omega.t_column(i - 2), &r1),
        &r1,
        -(i as i64),
    )
}

/// `h_{2i}(g)`, read off `φ = Σ h̃_{2i} t^(i-2)`.
pub fn boundary_h(sys: &KernelSystem, table: &SliceSeriesTable, i: usize) -> TruncatedSeries<Q> {
    assert!(i >= 2);
    let r1 = table.r(1).expect("R_1 present");
    times_r1_pow(
        &to_weight_g(&sys.phi.t_column(i - 2), &r1),
        &r1,
        -(i as i64),
    )
}

/// `f_{2i} - g K_{i-1}` for `i = 2..=P+1`; all zero when the identification
/// of `Ω` with the kernel holds.
pub fn omega_kernel_residuals(
    sys: &KernelSystem,
    table: &SliceSeriesTable,
    p: usize,
) -> Result<Vec<TruncatedSeries<Q>>, KernelError> {
    let ks = kernel_coefficients(&sys.phi, table, p)?;
    Ok((2..=p + 1)
        .map(|i| {
            let gk = ks.coefficients[i - 1]
                .mul_var_pow(1)
                .truncate(table.order());
            &boundary_f(sys, table, i) - &gk
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::solve_classical;

    #[test]
    fn lowest_orders() {
        let sys = solve_phi_omega(4, 4).unwrap();
        assert_eq!(
            sys.h4,
            TruncatedSeries::from_ints(Var::RescaledG, &[0, 1, 0, 1, 3])
        );
        assert_eq!(sys.omega.coeff(2, 0), Q::one());
        assert_eq!(sys.omega.coeff(1, 0), Q::zero());
        let (a, b) = system_residuals(&sys).unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn second_slice_from_h4() {
        let sys = solve_phi_omega(6, 6).unwrap();
        let t = iterate_t(&sys.phi, 2).unwrap();
        assert!(t[0].is_zero_series());
        let h = &sys.h4;
        let want = h.checked_div(&(-h).add_constant(&Q::one())).unwrap();
        assert_eq!(t[1], want);
        assert_eq!(
            t[1].coeffs()[..4],
            TruncatedSeries::from_ints(Var::RescaledG, &[0, 1, 1, 2]).coeffs()[..]
        );
    }

    #[test]
    fn empty_kernel() {
        let zero = BivariateSeries::zero(5, 5);
        let t = TruncatedSeries::from_ints(Var::RescaledG, &[0, 1, 2, 3, 4, 5]);
        assert!(kernel_apply(&zero, &t).unwrap().is_zero_series());
        assert_eq!(
            kernel_apply(&zero, &t.add_constant(&Q::one())),
            Err(KernelError::NonzeroConstant)
        );
    }

    #[test]
    fn matches_classical_low_order() {
        let table = solve_classical(5, 8).unwrap();
        let sys = solve_phi_omega(8, 8).unwrap();
        let rk = slice_series_from_kernel(&sys, &table, 5).unwrap();
        for (k, r) in rk.iter().enumerate() {
            assert_eq!(*r, table.r(k + 1).unwrap(), "k = {}", k + 1);
        }
        let ks = kernel_coefficients(&sys.phi, &table, 3).unwrap();
        assert_eq!(ks.coefficients[0].coeff(1), &Q::one());
        for res in omega_kernel_residuals(&sys, &table, 4).unwrap() {
            assert!(res.is_zero_series());
        }
    }
}
