//! Closed-form statistics of the hull perimeter.

use num_bigint::BigInt;
use serde::Serialize;

use crate::series::{binomial, q_to_f64, Polynomial, RationalFunction, Ring, Q};

use super::{check_range, HullError};

/// `E_∞(α^ℒ(d))` for `d ≥ 2`.
pub fn e_inf_alpha(alpha: f64, d: usize) -> Result<f64, HullError> {
    assert!(d >= 2);
    let a2 = alpha * alpha;
    let term = |m: f64| -> Result<f64, HullError> {
        let num = m * (9.0 - a2) + 8.0 * a2;
        let den = m * (1.0 - a2) + 8.0 * a2;
        let r = num / den;
        if !(r >= 0.0) {
            return Err(HullError::NegativeRadicand);
        }
        Ok(r.sqrt())
    };
    let d = d as f64;
    Ok(term((d + 1.0) * (d + 3.0))? - term(d * (d + 2.0))?)
}

/// `E_∞(ℒ(d)) = 3(d⁴+6d³+10d²+3d-5) / (8(d+1)(d+2))`.
pub fn e_inf_mean(d: usize) -> Q {
    let d = Q::from_int(d as i64);
    let num = Polynomial::from_ints(&[-5, 3, 10, 6, 1]).eval(&d) * Q::from_int(3);
    let den = Q::from_int(8) * (&d + Q::from_int(1)) * (&d + Q::from_int(2));
    num / den
}

/// `A(p) = Σ_{q<p} 2^q C(p-1,q) C(2q+1,q)`, by direct summation.
pub fn a_coefficient(p: usize) -> BigInt {
    assert!(p >= 1);
    let mut acc = BigInt::from(0);
    let mut two = BigInt::from(1);
    for qq in 0..p as u64 {
        acc += &two * binomial(p as u64 - 1, qq) * binomial(2 * qq + 1, qq);
        two *= 2;
    }
    acc
}

/// `A(1..=pmax)` from `Σ A(p) z^p = (√((1-z)/(1-9z)) - 1)/4`, whose
/// coefficients `s_n` obey `(n+1)s_{n+1} = (10n+4)s_n - 9(n-1)s_{n-1}`.
/// Index 0 holds 0.
pub fn a_coefficients(pmax: usize) -> Vec<BigInt> {
    let mut s = vec![BigInt::from(1), BigInt::from(4)];
    for n in 1..pmax {
        let nb = n as i64;
        let next = (BigInt::from(10 * nb + 4) * &s[n] - BigInt::from(9 * (nb - 1)) * &s[n - 1])
            / BigInt::from(nb + 1);
        s.push(next);
    }
    let mut out: Vec<BigInt> = s.into_iter().take(pmax + 1).map(|v| v / 4).collect();
    out[0] = BigInt::from(0);
    out
}

fn ratio_pair(d: usize) -> (Q, Q) {
    let d = d as i64;
    (
        Q::new(((d - 1) * (d + 5)).into(), ((d + 1) * (d + 3)).into()),
        Q::new(((d - 2) * (d + 4)).into(), (d * (d + 2)).into()),
    )
}

/// `p_∞(ℒ(d) = 2p)`, exactly.
pub fn p_inf(d: usize, p: usize) -> Q {
    assert!(d >= 2 && p >= 1);
    let (r1, r2) = ratio_pair(d);
    let nine_p = Ring::pow(&Q::from_int(9), p as u32);
    let pref = Q::from_int(12) / nine_p;
    pref * (Ring::pow(&r1, p as u32) - Ring::pow(&r2, p as u32)) * Q::from_integer(a_coefficient(p))
}

/// Probabilities `p = 1..=P` with `P` the first index whose term falls
/// below `cutoff`, and a geometric bound on the omitted tail.
#[derive(Clone, Debug, Serialize)]
pub struct ProbabilityTable {
    pub d: usize,
    pub probabilities: Vec<f64>,
    pub mass: f64,
    pub tail_bound: f64,
}

impl ProbabilityTable {
    /// Probability of `ℒ(d) = 2p`.
    pub fn get(&self, p: usize) -> f64 {
        self.probabilities
            .get(p.wrapping_sub(1))
            .copied()
            .unwrap_or(0.0)
    }
}

/// Table of `p_∞` in double precision. `A(p)/9^p` follows the scaled
/// recurrence, which is stable since its other solution decays like `9^-p`.
pub fn p_inf_table(d: usize, cutoff: f64) -> ProbabilityTable {
    assert!(d >= 2);
    let (r1, r2) = ratio_pair(d);
    let (r1, r2) = (q_to_f64(&r1), q_to_f64(&r2));
    // σ_n = s_n / 9^n, with p_∞(2p) = 3 σ_p (r1^p - r2^p)
    let mut sig_prev = 1.0;
    let mut sig = 4.0 / 9.0;
    let (mut pw1, mut pw2) = (r1, r2);
    let mut probs = Vec::new();
    let mut mass = 0.0;
    let mut comp = 0.0;
    let mut n = 1usize;
    loop {
        let term = 3.0 * sig * (pw1 - pw2);
        probs.push(term);
        // Neumaier summation
        let t = mass + term;
        comp += if mass.abs() >= term.abs() {
            (mass - t) + term
        } else {
            (term - t) + mass
        };
        mass = t;
        if term < cutoff && n > 2 {
            break;
        }
        let nf = n as f64;
        let next = ((10.0 * nf + 4.0) * sig / 9.0 - (nf - 1.0) * sig_prev / 9.0) / (nf + 1.0);
        sig_prev = sig;
        sig = next;
        pw1 *= r1;
        pw2 *= r2;
        n += 1;
    }
    let last = probs[probs.len() - 1];
    let prev = probs[probs.len() - 2];
    let ratio = last / prev;
    let tail_bound = if ratio < 1.0 {
        last * ratio / (1.0 - ratio)
    } else {
        f64::INFINITY
    };
    ProbabilityTable {
        d,
        probabilities: probs,
        mass: mass + comp,
        tail_bound,
    }
}

/// The finite-`k` mean as a rational function of `k` at fixed `d`.
pub fn e_k_mean_in_k(d: usize) -> RationalFunction {
    let k = RationalFunction::x();
    let c = |v: i64| RationalFunction::from_int(v);
    let kp = |a: i64| k.add(&c(a));
    let dq = |a: i64| RationalFunction::from_int(d as i64 + a);
    let dd = d as i64;
    let sextic = Polynomial::from_ints(&[-36, -42, 103, 348, 283, 90, 10]);
    let pre_num = k.mul(&kp(1)).mul(&kp(2)).mul(&kp(3));
    let pre_den = c(2)
        .mul(&kp(0).scale_q(&Q::from_int(2)).add(&c(3)))
        .mul(&RationalFunction::from_poly(sextic));
    let pre = pre_num.checked_div(&pre_den).expect("nonzero");

    let p1 = dq(-1).mul(&dq(1)).mul(&dq(3)).mul(&dq(5));
    let quad1 = RationalFunction::from_poly(Polynomial::from_ints(&[4, 20, 5]));
    let inner1 = kp(1)
        .pow(2)
        .mul(&kp(3).pow(2))
        .mul(&quad1)
        .sub(&p1.mul(&c(5 * dd * dd + 20 * dd + 24)))
        .sub(&c(18));
    let first = p1
        .mul(&kp(2))
        .mul(&inner1)
        .checked_div(&dq(2).mul(&kp(1).pow(2)).mul(&kp(3).pow(2)))
        .expect("nonzero");

    let p2 = dq(-2).mul(&dq(0)).mul(&dq(2)).mul(&dq(4));
    let quad2 = RationalFunction::from_poly(Polynomial::from_ints(&[-11, 10, 5]));
    let inner2 = k
        .pow(2)
        .mul(&kp(2).pow(2))
        .mul(&quad2)
        .sub(&p2.mul(&c(5 * dd * dd + 10 * dd + 9)))
        .sub(&c(18));
    let second = p2
        .mul(&kp(1))
        .mul(&inner2)
        .checked_div(&dq(1).mul(&k.pow(2)).mul(&kp(2).pow(2)))
        .expect("nonzero");

    pre.mul(&first.sub(&second))
}

/// `E_k(ℒ(d))`, exactly, for `2 ≤ d ≤ k-1`.
pub fn e_k_mean(k: usize, d: usize) -> Result<Q, HullError> {
    check_range(k, d)?;
    Ok(e_k_mean_in_k(d).eval(&Q::from_int(k as i64))?)
}

/// Limit at infinity of a rational function, when finite.
pub fn limit_at_infinity(f: &RationalFunction) -> Option<Q> {
    let n = f.numerator().degree();
    let m = f.denominator().degree().unwrap_or(0);
    match n {
        None => Some(Q::zero()),
        Some(n) if n < m => Some(Q::zero()),
        Some(n) if n == m => {
            Some(f.numerator().leading().unwrap() / f.denominator().leading().unwrap())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::q;

    #[test]
    fn a_values() {
        assert_eq!(a_coefficient(1), BigInt::from(1));
        assert_eq!(a_coefficient(2), BigInt::from(7));
        let rec = a_coefficients(40);
        for p in 1..=40 {
            assert_eq!(rec[p], a_coefficient(p), "p = {p}");
        }
    }

    #[test]
    fn infinite_k_values() {
        assert_eq!(e_inf_mean(2), q(105, 32));
        assert_eq!(p_inf(2, 1), q(28, 45));
        assert!((e_inf_alpha(1.0, 7).unwrap() - 1.0).abs() < 1e-15);
        assert!(e_inf_alpha(0.0, 7).unwrap().abs() < 1e-15);
    }

    #[test]
    fn table_matches_exact() {
        let t = p_inf_table(5, 1e-15);
        for p in 1..30 {
            let e = q_to_f64(&p_inf(5, p));
            assert!((t.get(p) - e).abs() <= 1e-14 * e.max(1e-300), "p = {p}");
        }
    }

    #[test]
    fn finite_k_limit() {
        assert_eq!(limit_at_infinity(&e_k_mean_in_k(2)), Some(q(105, 32)));
    }
}
