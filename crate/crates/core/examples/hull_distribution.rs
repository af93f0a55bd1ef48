//! Laws of the hull perimeter at distance d, for k = ∞ and finite k.

use eulerian_slices::hull::{e_inf_mean, e_k_mean, finite_k_distribution, p_inf, p_inf_table};
use eulerian_slices::series::q_to_f64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in [2, 3, 5] {
        let first: Vec<String> = (1..=4).map(|p| p_inf(d, p).to_string()).collect();
        let table = p_inf_table(d, 1e-15);
        println!("d = {d}: P(L = 2p), p = 1..4: {}", first.join(", "));
        println!("        mass {:.15}, E(L) = {}", table.mass, e_inf_mean(d));
    }

    let (k, d) = (6, 3);
    let dist = finite_k_distribution(k, d, 6)?;
    println!("k = {k}, d = {d}:");
    for (p, pr) in dist.iter().enumerate() {
        println!("  P(L = {}) = {pr} ~ {:.6}", 2 * p, q_to_f64(pr));
    }
    println!("  E(L) = {}", e_k_mean(k, d)?);
    Ok(())
}
