//! Counts rooted maps directly and compares with the series.

use eulerian_slices::classical::solve_classical;
use eulerian_slices::hull::{perimeter_counts, HullSeriesEngine};
use eulerian_slices::oracle::{count_hull, count_two_point, enumerate_maps, verify_slice_split};
use eulerian_slices::series::Q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fmax = 4;
    for f in 1..=fmax {
        println!("F = {f}: {} rooted maps", enumerate_maps(f)?.len());
    }

    let table = solve_classical(6, fmax)?;
    for k in 1..=5 {
        let counted: Vec<u64> = (1..=fmax)
            .map(|f| count_two_point(f, k))
            .collect::<Result<_, _>>()?;
        let series: Vec<String> = (1..=fmax)
            .map(|f| table.two_point(k).map(|g| g.coeff(f).to_string()))
            .collect::<Result<_, _>>()?;
        println!(
            "k = {k}: counted {counted:?}, series [{}]",
            series.join(", ")
        );
    }

    let engine = HullSeriesEngine::new(6, fmax)?;
    let (k, d) = (4, 2);
    let h = engine.h_iterated(k, d)?;
    for f in 1..=fmax {
        let counted = count_hull(f, k, d)?;
        let series = perimeter_counts(&h, f);
        let agree = counted.iter().all(|(&p, &n)| {
            series.get(p).cloned().unwrap_or_default() == Q::from_integer(n.into())
        });
        println!("hull k = {k}, d = {d}, F = {f}: {counted:?} agrees: {agree}");
    }

    let report = verify_slice_split(4)?;
    println!(
        "split of {} slices holds: {}",
        report.slices,
        report.holds()
    );
    Ok(())
}
