use super::ring::{q_sqrt_exact, q_to_f64, RadicalRing, Ring, ToF64, Q};
use super::truncated::{TruncatedSeries, Var};

/// Truncated polynomial in a small parameter `δ`. `cap = None` marks an
/// element known exactly (a polynomial); otherwise terms above `δ^cap`
/// are unknown.
#[derive(Clone, Debug)]
pub struct Jet {
    coeffs: Vec<Q>,
    cap: Option<usize>,
}

impl Jet {
    pub fn new(mut coeffs: Vec<Q>, cap: Option<usize>) -> Self {
        if let Some(c) = cap {
            coeffs.truncate(c + 1);
        }
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Jet { coeffs, cap }
    }

    /// `δ` itself, known to order `cap`.
    pub fn var(cap: usize) -> Self {
        Jet::new(vec![Q::zero(), Q::one()], Some(cap))
    }

    pub fn constant(c: Q) -> Self {
        Jet::new(vec![c], None)
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    fn join_cap(&self, other: &Self) -> Option<usize> {
        match (self.cap, other.cap) {
            (None, c) | (c, None) => c,
            (Some(a), Some(b)) => Some(a.min(b)),
        }
    }

    fn as_series(&self, cap: usize) -> TruncatedSeries<Q> {
        TruncatedSeries::new(Var::Epsilon, (0..=cap).map(|i| self.coeff(i)).collect())
    }
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        let n = match self.join_cap(other) {
            Some(c) => c + 1,
            None => self.coeffs.len().max(other.coeffs.len()),
        };
        (0..n).all(|i| self.coeff(i) == other.coeff(i))
    }
}

impl Ring for Jet {
    fn zero() -> Self {
        Jet::new(Vec::new(), None)
    }
    fn one() -> Self {
        Jet::constant(Q::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Jet::new(
            (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
            self.join_cap(other),
        )
    }
    fn neg(&self) -> Self {
        Jet::new(self.coeffs.iter().map(|c| -c).collect(), self.cap)
    }
    fn mul(&self, other: &Self) -> Self {
        let cap = self.join_cap(other);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Jet::new(Vec::new(), cap);
        }
        let mut top = self.coeffs.len() + other.coeffs.len() - 2;
        if let Some(c) = cap {
            top = top.min(c);
        }
        let mut out = vec![Q::zero(); top + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(top + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(top + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Jet::new(out, cap)
    }
    fn try_inverse(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        if Ring::is_zero(&c0) {
            return None;
        }
        match self.cap {
            None if self.coeffs.len() <= 1 => Some(Jet::constant(c0.recip())),
            None => None,
            Some(cap) => {
                let inv = self.as_series(cap).inverse().ok()?;
                Some(Jet::new(inv.coeffs().to_vec(), Some(cap)))
            }
        }
    }
    fn from_rational(value: &Q) -> Self {
        Jet::constant(value.clone())
    }
}

impl RadicalRing for Jet {
    fn principal_sqrt(&self) -> Option<Self> {
        let c0 = self.coeff(0);
        let s0 = q_sqrt_exact(&c0)?;
        if Ring::is_zero(&s0) {
            return None;
        }
        match self.cap {
            None if self.coeffs.len() <= 1 => Some(Jet::constant(s0)),
            None => None,
            Some(cap) => {
                let unit = self.as_series(cap).scale(&c0.recip()).sqrt().ok()?;
                Some(Jet::new(unit.scale(&s0).coeffs().to_vec(), Some(cap)))
            }
        }
    }
}

impl ToF64 for Jet {
    /// Value at `δ = 0`.
    fn to_f64(&self) -> f64 {
        q_to_f64(&self.coeff(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::q;

    #[test]
    fn inverse_and_root() {
        let d = Jet::var(4);
        let one_plus = Jet::one().add(&d);
        let inv = one_plus.try_inverse().unwrap();
        assert_eq!(inv.mul(&one_plus), Jet::one());
        let four = Jet::constant(q(4, 1)).add(&d);
        let r = four.principal_sqrt().unwrap();
        assert_eq!(r.mul(&r), four);
        assert_eq!(r.coeff(0), q(2, 1));
    }

    #[test]
    fn exact_polynomials_are_not_invertible() {
        let p = Jet::new(vec![q(1, 1), q(1, 1)], None);
        assert!(p.try_inverse().is_none());
    }
}
