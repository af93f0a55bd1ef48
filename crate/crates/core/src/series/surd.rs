use super::ring::{q_sqrt_exact, RadicalRing, Ring, ToF64, Q};

/// Element `a + b √D` of a quadratic extension. The radicand is `None`
/// until an irrational part appears, so rational elements mix freely
/// with any extension.
#[derive(Clone, Debug)]
pub struct QuadExt<F> {
    a: F,
    b: F,
    radicand: Option<F>,
}

impl<F: Ring> QuadExt<F> {
    pub fn new(a: F, b: F, radicand: F) -> Self {
        QuadExt {
            a,
            b,
            radicand: Some(radicand),
        }
    }

    pub fn base(a: F) -> Self {
        QuadExt {
            a,
            b: F::zero(),
            radicand: None,
        }
    }

    /// `√D` itself.
    pub fn sqrt_of(radicand: F) -> Self {
        QuadExt {
            a: F::zero(),
            b: F::one(),
            radicand: Some(radicand),
        }
    }

    pub fn rational_part(&self) -> &F {
        &self.a
    }

    pub fn surd_part(&self) -> &F {
        &self.b
    }

    pub fn radicand(&self) -> Option<&F> {
        self.radicand.as_ref()
    }

    fn join(&self, other: &Self) -> Option<F> {
        match (&self.radicand, &other.radicand) {
            (None, r) | (r, None) => r.clone(),
            (Some(r), Some(s)) => {
                assert!(r == s, "elements of different quadratic extensions");
                Some(r.clone())
            }
        }
    }

    fn norm(&self) -> F {
        let sq = self.a.mul(&self.a);
        match &self.radicand {
            None => sq,
            Some(d) => sq.sub(&self.b.mul(&self.b).mul(d)),
        }
    }
}

impl<F: Ring> PartialEq for QuadExt<F> {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl<F: Ring> Ring for QuadExt<F> {
    fn zero() -> Self {
        Self::base(F::zero())
    }
    fn one() -> Self {
        Self::base(F::one())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        QuadExt {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
            radicand: self.join(other),
        }
    }
    fn neg(&self) -> Self {
        QuadExt {
            a: self.a.neg(),
            b: self.b.neg(),
            radicand: self.radicand.clone(),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let r = self.join(other);
        let mut a = self.a.mul(&other.a);
        if let Some(d) = &r {
            let bb = self.b.mul(&other.b);
            if !bb.is_zero() {
                a = a.add(&bb.mul(d));
            }
        }
        let b = self.a.mul(&other.b).add(&self.b.mul(&other.a));
        QuadExt { a, b, radicand: r }
    }
    fn try_inverse(&self) -> Option<Self> {
        let inv = self.norm().try_inverse()?;
        Some(QuadExt {
            a: self.a.mul(&inv),
            b: self.b.neg().mul(&inv),
            radicand: self.radicand.clone(),
        })
    }
    fn from_rational(value: &Q) -> Self {
        Self::base(F::from_rational(value))
    }
}

impl<F: Ring + ToF64> ToF64 for QuadExt<F> {
    fn to_f64(&self) -> f64 {
        let a = self.a.to_f64();
        let Some(d) = &self.radicand else { return a };
        let bs = self.b.to_f64() * d.to_f64().sqrt();
        if a * bs < 0.0 {
            // a + b√D = N / (a - b√D) avoids cancellation
            self.norm().to_f64() / (a - bs)
        } else {
            a + bs
        }
    }
}

impl RadicalRing for QuadExt<Q> {
    fn principal_sqrt(&self) -> Option<Self> {
        if !Ring::is_zero(&self.b) {
            return None;
        }
        if let Some(r) = q_sqrt_exact(&self.a) {
            return Some(Self::base(r));
        }
        if self.a > Q::zero() {
            Some(Self::sqrt_of(self.a.clone()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::ring::q;

    #[test]
    fn arithmetic_in_q_sqrt2() {
        let s = QuadExt::sqrt_of(q(2, 1));
        assert_eq!(s.mul(&s), QuadExt::base(q(2, 1)));
        let x = QuadExt::base(q(1, 1)).add(&s);
        let inv = x.try_inverse().unwrap();
        assert_eq!(inv.mul(&x), QuadExt::one());
        assert!((x.to_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn cancellation_free_rounding() {
        // 10^8 - sqrt(10^16 - 1) ≈ 5e-9
        let big = q(100_000_000, 1);
        let d = &big * &big - q(1, 1);
        let x = QuadExt::new(big, q(-1, 1), d);
        let v = x.to_f64();
        assert!((v - 5e-9).abs() < 1e-22);
    }

    #[test]
    fn tower() {
        type T = QuadExt<QuadExt<Q>>;
        let s2 = QuadExt::sqrt_of(q(2, 1));
        let s3: T = QuadExt::sqrt_of(QuadExt::base(q(3, 1)));
        let s2t: T = QuadExt::base(s2);
        let p = s2t.mul(&s3);
        assert_eq!(p.mul(&p), T::from_int(6));
        assert!((p.to_f64() - 6f64.sqrt()).abs() < 1e-14);
    }
}
