//! The classical slice recursion `R_k = 1 + g R_k (R_{k+1} + R_{k-1})`.

use thiserror::Error;

use crate::series::{q, Ring, TruncatedSeries, Var, Q};

#[derive(Debug, Error, PartialEq)]
pub enum ClassicalError {
    #[error("no fixed point after {0} sweeps")]
    NoConvergence(usize),
    #[error("k = {0} is outside the computed table")]
    OutOfRange(usize),
}

/// Update order for the fixed-point sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    Jacobi,
    Ascending,
    Descending,
}

/// `R_1..R_K` (with `K > kmax + order`) and `R_∞` modulo `g^(order+1)`.
#[derive(Clone, Debug)]
pub struct SliceSeriesTable {
    order: usize,
    kmax: usize,
    r: Vec<TruncatedSeries<Q>>,
    r_inf: TruncatedSeries<Q>,
    sweeps: usize,
}

impl SliceSeriesTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    pub fn r_infinity(&self) -> &TruncatedSeries<Q> {
        &self.r_inf
    }

    /// `R_k`, with `R_0 = 0`. Beyond the table, `R_k = R_∞` holds for
    /// `k > order` since `R_k - R_∞ = O(g^k)`.
    pub fn r(&self, k: usize) -> Result<TruncatedSeries<Q>, ClassicalError> {
        if k == 0 {
            Ok(TruncatedSeries::zero(Var::G, self.order))
        } else if k <= self.r.len() {
            Ok(self.r[k - 1].clone())
        } else if k > self.order {
            Ok(self.r_inf.clone())
        } else {
            Err(ClassicalError::OutOfRange(k))
        }
    }

    /// `G_k = R_k - R_{k-1} - δ_{k,1}`.
    pub fn two_point(&self, k: usize) -> Result<TruncatedSeries<Q>, ClassicalError> {
        let mut gk = &self.r(k)? - &self.r(k - 1)?;
        if k == 1 {
            gk = gk.add_constant(&Q::from_int(-1));
        }
        Ok(gk)
    }

    /// `R_k - 1 - g R_k (R_{k+1} + R_{k-1})`; zero for a solution.
    pub fn residual(&self, k: usize) -> Result<TruncatedSeries<Q>, ClassicalError> {
        let rk = self.r(k)?;
        let g = TruncatedSeries::variable(Var::G, self.order);
        let rhs = (&g * &rk) * (&self.r(k + 1)? + &self.r(k - 1)?);
        Ok((&rk - &rhs).add_constant(&Q::from_int(-1)))
    }
}

/// `R_∞` from `R = 1 + 2 g R²` by iteration.
pub fn r_infinity(order: usize) -> TruncatedSeries<Q> {
    let g2 = TruncatedSeries::monomial(Var::G, Q::from_int(2), 1, order);
    let mut r = TruncatedSeries::one(Var::G, order);
    loop {
        let next = (&g2 * &(&r * &r)).add_constant(&Q::one());
        if next == r {
            return r;
        }
        r = next;
    }
}

/// `R_∞ = (1 - √(1-8g)) / (4g)`.
pub fn r_infinity_closed(order: usize) -> TruncatedSeries<Q> {
    let mut c = vec![Q::zero(); order + 2];
    c[0] = Q::one();
    c[1] = Q::from_int(-8);
    let root = TruncatedSeries::new(Var::G, c)
        .sqrt()
        .expect("constant term 1");
    let num = (-&root).add_constant(&Q::one());
    num.div_var_pow(1)
        .expect("zero constant term")
        .scale(&q(1, 4))
}

pub fn solve_classical(kmax: usize, order: usize) -> Result<SliceSeriesTable, ClassicalError> {
    solve_classical_with(kmax, order, Schedule::Jacobi)
}

/// Fixed-point solution on `k = 1..K` with `R_{K+1} = R_∞`, where `K`
/// exceeds both `kmax` and `order + 1`. Each sweep fixes at least one more
/// coefficient, so a no-op sweep occurs within `order + 2` sweeps.
pub fn solve_classical_with(
    kmax: usize,
    order: usize,
    schedule: Schedule,
) -> Result<SliceSeriesTable, ClassicalError> {
    let big_k = kmax.max(1) + order + 2;
    let r_inf = r_infinity(order);
    let g = TruncatedSeries::variable(Var::G, order);
    let mut r = vec![TruncatedSeries::one(Var::G, order); big_k];
    let zero = TruncatedSeries::zero(Var::G, order);
    let update = |r: &[TruncatedSeries<Q>], k: usize| -> TruncatedSeries<Q> {
        let below = if k == 0 { &zero } else { &r[k - 1] };
        let above = if k + 1 == big_k { &r_inf } else { &r[k + 1] };
        ((&g * &r[k]) * (below + above)).add_constant(&Q::one())
    };
    let max_sweeps = order + 3;
    for sweep in 1..=max_sweeps {
        let mut changed = false;
        match schedule {
            Schedule::Jacobi => {
                let next: Vec<_> = (0..big_k).map(|k| update(&r, k)).collect();
                changed = next != r;
                r = next;
            }
            Schedule::Ascending | Schedule::Descending => {
                let ks: Vec<usize> = if schedule == Schedule::Ascending {
                    (0..big_k).collect()
                } else {
                    (0..big_k).rev().collect()
                };
                for k in ks {
                    let v = update(&r, k);
                    if v != r[k] {
                        changed = true;
                        r[k] = v;
                    }
                }
            }
        }
        if !changed {
            return Ok(SliceSeriesTable {
                order,
                kmax,
                r,
                r_inf,
                sweeps: sweep,
            });
        }
    }
    Err(ClassicalError::NoConvergence(max_sweeps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_limit() {
        let r = r_infinity(6);
        assert_eq!(
            r,
            TruncatedSeries::from_ints(Var::G, &[1, 2, 8, 40, 224, 1344, 8448])
        );
        assert_eq!(r, r_infinity_closed(6));
    }

    #[test]
    fn first_coefficients() {
        let t = solve_classical(3, 6).unwrap();
        let r1 = t.r(1).unwrap();
        assert_eq!(r1.coeff(1), &Q::from_int(1));
        assert_eq!(r1.coeff(2), &Q::from_int(3));
        assert_eq!(t.r(2).unwrap().coeff(1), &Q::from_int(2));
        let g1 = t.two_point(1).unwrap();
        assert_eq!(g1.coeff(0), &Q::from_int(0));
        assert_eq!(g1.coeff(1), &Q::from_int(1));
        assert_eq!(g1.coeff(2), &Q::from_int(3));
    }

    #[test]
    fn schedules_agree() {
        let a = solve_classical_with(5, 8, Schedule::Jacobi).unwrap();
        let b = solve_classical_with(5, 8, Schedule::Ascending).unwrap();
        let c = solve_classical_with(5, 8, Schedule::Descending).unwrap();
        for k in 1..=5 {
            assert_eq!(a.r(k), b.r(k));
            assert_eq!(a.r(k), c.r(k));
            assert!(a.residual(k).unwrap().is_zero_series());
        }
    }

    #[test]
    fn stabilisation_starts_after_order() {
        let t = solve_classical(12, 10).unwrap();
        assert_eq!(t.r(11).unwrap(), *t.r_infinity());
        assert_ne!(t.r(10).unwrap(), *t.r_infinity());
    }
}
