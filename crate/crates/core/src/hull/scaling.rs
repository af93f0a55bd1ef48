//! Large-distance limit laws of the rescaled perimeter `L = ℒ(d)/d²`.

use std::f64::consts::PI;

use super::stats::e_inf_alpha;
use super::HullError;

/// The scaling factor `c`.
pub const SCALING_C: f64 = 0.25;

/// `lim E_∞(e^{-τL}) = (1+cτ)^{-3/2}`.
pub fn laplace_limit(tau: f64) -> f64 {
    (1.0 + SCALING_C * tau).powf(-1.5)
}

/// Limiting density `(2/√π) √L c^{-3/2} e^{-L/c}`.
pub fn density_limit(l: f64) -> f64 {
    if l <= 0.0 {
        return 0.0;
    }
    2.0 / PI.sqrt() * l.sqrt() * SCALING_C.powf(-1.5) * (-l / SCALING_C).exp()
}

/// `lim E_k(ℒ(uk))/(uk)² = (3c/2)(1+u-3u⁶+u⁷)`.
pub fn u_mean_limit(u: f64) -> f64 {
    1.5 * SCALING_C * (1.0 + u - 3.0 * u.powi(6) + u.powi(7))
}

/// `E_∞(e^{-τℒ(d)/d²})`.
pub fn laplace_at_d(tau: f64, d: usize) -> Result<f64, HullError> {
    let alpha = (-tau / (d * d) as f64).exp();
    e_inf_alpha(alpha, d)
}

fn simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// `∫ L^m density(L) dL` by adaptive Simpson after `L = c s²`, which turns
/// the integrand into the smooth `c^m (4/√π) s^{2m+2} e^{-s²}`.
pub fn integrate_density_moment(m: u32) -> f64 {
    let f = move |s: f64| {
        SCALING_C.powi(m as i32) * 4.0 / PI.sqrt() * s.powi(2 * m as i32 + 2) * (-s * s).exp()
    };
    let (a, b) = (0.0, 14.0);
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(&f, a, b, fa, fm, fb, whole, 1e-14, 50)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits() {
        assert_eq!(laplace_limit(0.0), 1.0);
        assert_eq!(u_mean_limit(1.0), 0.0);
        assert_eq!(u_mean_limit(0.5), 0.5478515625);
    }

    #[test]
    fn density_moments() {
        assert!((integrate_density_moment(0) - 1.0).abs() < 1e-12);
        assert!((integrate_density_moment(1) - 0.375).abs() < 1e-12);
    }

    #[test]
    fn laplace_converges() {
        let errs: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&d| (laplace_at_d(1.0, d).unwrap() - laplace_limit(1.0)).abs())
            .collect();
        assert!(
            errs[0] > errs[1] && errs[1] > errs[2] && errs[2] < 2e-2,
            "{errs:?}"
        );
    }
}
