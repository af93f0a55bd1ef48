//! Closed forms in the uniformizing variable x.

use eulerian_slices::closed_form::{
    check_special_line, expand_in_g, gk_closed, reciprocal_argument, rk_closed, w_k, x_of_g_series,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("x(g) = {}", x_of_g_series(8)?);
    for k in 1..=3 {
        let r = rk_closed(k);
        println!("R_{k}(x) = {r}");
        println!(
            "  symmetric under x -> 1/x: {}",
            reciprocal_argument(&r) == r
        );
        println!("  W_{k} = {}", w_k(k)?);
    }
    println!("G_3(g) = {}", expand_in_g(&gk_closed(3), 10)?);

    let line = check_special_line()?;
    println!(
        "special line holds: {} (G at 1/2 = {})",
        line.all_hold(),
        line.g_at_half
    );
    Ok(())
}
