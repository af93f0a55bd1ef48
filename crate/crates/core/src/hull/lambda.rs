//! Numeric `λ(α,d)` at fixed `x` and the closed form of `H_k(α,d)`.

use serde::Serialize;

use super::{check_range, HullError};

fn rho_f64(d: usize, x: f64) -> f64 {
    let om = |n: usize| 1.0 - x.powi(n as i32);
    om(d - 1) * om(d + 5) / (om(d + 1) * om(d + 3))
}

/// Coefficients `(A, B, C)` of `Aλ² + Bλ + C = 0`.
fn quadratic(alpha: f64, d: usize, x: f64) -> (f64, f64, f64) {
    let s = alpha * alpha * rho_f64(d, x) - 1.0;
    let xp = |n: usize| x.powi(n as i32);
    let a = xp(2 * d + 4) * s;
    let b = -(alpha * alpha * rho_f64(d, x) * (xp(d + 1) + xp(d + 3)) - (xp(d - 1) + xp(d + 5)));
    (a, b, s)
}

/// Both roots, computed without cancellation.
fn roots(alpha: f64, d: usize, x: f64) -> Result<(f64, f64, f64), HullError> {
    let (a, b, c) = quadratic(alpha, d, x);
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Err(HullError::BranchLost {
            alpha,
            discriminant: disc,
        });
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    Ok((q / a, c / q, disc))
}

/// The anchored root of the `λ` quadratic and its companion.
#[derive(Clone, Debug, Serialize)]
pub struct LambdaSolution {
    pub alpha: f64,
    pub d: usize,
    pub x: f64,
    pub lambda: f64,
    pub companion_root: f64,
    pub discriminant: f64,
}

impl LambdaSolution {
    /// `λ · companion · x^(2d+4)`, equal to 1.
    pub fn root_product(&self) -> f64 {
        self.lambda * self.companion_root * self.x.powi(2 * self.d as i32 + 4)
    }
}

const CONTINUATION_STEPS: usize = 64;

/// `λ(α,d)` at `x`, followed from `λ(1,d) = 1` by continuation in `α`.
pub fn lambda_of(alpha: f64, d: usize, x: f64) -> Result<LambdaSolution, HullError> {
    assert!(d >= 1 && x > 0.0 && x < 1.0);
    let alpha = alpha.abs();
    let mut current = 1.0;
    let mut last = (1.0, 1.0, 0.0);
    for i in 1..=CONTINUATION_STEPS {
        let a = 1.0 + (alpha - 1.0) * i as f64 / CONTINUATION_STEPS as f64;
        let (r1, r2, disc) = roots(a, d, x)?;
        let (near, far) = if (r1 - current).abs() <= (r2 - current).abs() {
            (r1, r2)
        } else {
            (r2, r1)
        };
        if (near - far).abs() <= 1e-12 * near.abs().max(far.abs()) {
            return Err(HullError::BranchLost {
                alpha: a,
                discriminant: disc,
            });
        }
        current = near;
        last = (near, far, disc);
    }
    Ok(LambdaSolution {
        alpha,
        d,
        x,
        lambda: last.0,
        companion_root: last.1,
        discriminant: last.2,
    })
}

/// `H_k(α,d)` at numeric `x` from the closed form in `λ(α,d)` and `λ(α,d-1)`.
pub fn h_closed(k: usize, d: usize, alpha: f64, x: f64) -> Result<f64, HullError> {
    check_range(k, d)?;
    let l = lambda_of(alpha, d, x)?.lambda;
    let lp = if d == 2 {
        1.0
    } else {
        lambda_of(alpha, d - 1, x)?.lambda
    };
    let xp = |n: usize| x.powi(n as i32);
    let pre = (1.0 - x * x).powi(2) * (1.0 + x + x * x) / (1.0 + x * x);
    let num = xp(k - 1) * (lp - x * l) * (1.0 - l * lp * xp(2 * k + 3));
    let den =
        (1.0 - l * xp(k + 1)) * (1.0 - l * xp(k + 3)) * (1.0 - lp * xp(k)) * (1.0 - lp * xp(k + 2));
    Ok(pre * num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::gk_closed;

    #[test]
    fn anchored_at_one() {
        let s = lambda_of(1.0, 7, 0.4).unwrap();
        assert!((s.lambda - 1.0).abs() < 1e-13);
        assert!((s.root_product() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn even_in_alpha_and_root_product() {
        for &(a, d, x) in &[(0.3, 2, 0.2), (0.7, 5, 0.5), (0.0, 3, 0.3)] {
            let p = lambda_of(a, d, x).unwrap();
            let m = lambda_of(-a, d, x).unwrap();
            assert_eq!(p.lambda, m.lambda);
            assert!((p.root_product() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_limits() {
        for (k, d) in [(3, 2), (5, 3), (6, 4)] {
            let x = 0.3;
            let g = gk_closed(k).eval_f64(x);
            assert!((h_closed(k, d, 1.0, x).unwrap() - g).abs() < 1e-12 * g.abs());
            assert!(h_closed(k, d, 0.0, x).unwrap().abs() < 1e-12);
        }
    }
}
