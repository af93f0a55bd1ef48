//! Distance-dependent two-point function from the classical relation.
//!
//! `cargo run --example two_point -- 5 12` prints `G_1..G_5` to order 12.

use eulerian_slices::classical::solve_classical;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>());
    let kmax = args.next().transpose()?.unwrap_or(4);
    let order = args.next().transpose()?.unwrap_or(10);

    let table = solve_classical(kmax, order)?;
    println!("R_inf = {}", table.r_infinity());
    for k in 1..=kmax {
        println!("G_{k} = {}", table.two_point(k)?);
    }
    Ok(())
}
