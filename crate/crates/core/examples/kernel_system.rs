//! Solves the (Φ, Ω) system and rebuilds R_k through the kernel recursion.

use eulerian_slices::classical::solve_classical;
use eulerian_slices::kernel::{
    iterate_t, slice_series_from_kernel, solve_phi_omega, system_residuals,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let order = 10;
    let sys = solve_phi_omega(order, order)?;
    println!("h4 = {}", sys.h4);

    let (a, b) = system_residuals(&sys)?;
    println!(
        "residuals vanish: {} (after {} sweeps)",
        a.is_zero() && b.is_zero(),
        sys.sweeps
    );

    for (k, t) in iterate_t(&sys.phi, 3)?.iter().enumerate() {
        println!("t_{} = {t}", k + 1);
    }

    let table = solve_classical(6, order)?;
    let rs = slice_series_from_kernel(&sys, &table, 6)?;
    for (i, r) in rs.iter().enumerate() {
        let k = i + 1;
        println!(
            "R_{k}: kernel route = classical route: {}",
            *r == table.r(k)?
        );
    }
    Ok(())
}
