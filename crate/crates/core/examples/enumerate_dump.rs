//! Dumps every rooted map with F white faces, one record per line.

use eulerian_slices::oracle::enumerate_maps;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(2);
    for m in enumerate_maps(f)? {
        println!("{}", m.to_record());
    }
    Ok(())
}
