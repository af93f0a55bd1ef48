//! Large-distance limits of the hull perimeter.

use eulerian_slices::hull::stats::limit_at_infinity;
use eulerian_slices::hull::{
    density_limit, e_k_mean, e_k_mean_in_k, integrate_density_moment, laplace_at_d, laplace_limit,
    u_mean_limit,
};
use eulerian_slices::series::q_to_f64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mean = e_k_mean_in_k(2);
    println!("E_k(L(2)) = {mean}");
    println!(
        "  k -> inf: {:?}",
        limit_at_infinity(&mean).map(|q| q.to_string())
    );

    for tau in [0.5, 1.0, 2.0] {
        let at: Vec<String> = [25, 100, 200]
            .iter()
            .map(|&d| Ok(format!("{:.6}", laplace_at_d(tau, d)?)))
            .collect::<Result<_, eulerian_slices::hull::HullError>>()?;
        println!(
            "tau = {tau}: E exp(-tau L/d^2) = {} -> {:.6}",
            at.join(", "),
            laplace_limit(tau)
        );
    }

    println!(
        "density: mass {:.12}, mean {:.12}",
        integrate_density_moment(0),
        integrate_density_moment(1)
    );
    for l in [0.1, 0.375, 1.0] {
        println!("  density({l}) = {:.9}", density_limit(l));
    }

    let k = 400;
    for u in [0.25, 0.5, 0.75] {
        let d = (u * k as f64) as usize;
        let v = q_to_f64(&e_k_mean(k, d)?) / (d * d) as f64;
        println!("u = {u}: E_k(L)/d^2 = {v:.6}, limit {:.6}", u_mean_limit(u));
    }
    Ok(())
}
