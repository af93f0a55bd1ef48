//! One line per acceptance criterion; exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use eulerian_slices::classical::solve_classical;
use eulerian_slices::closed_form::{
    big_g_of_x, c_of_x, check_special_line, expand_in_g, g_of_c, g_of_x, gk_closed, r1_of_x,
    rk_closed, w_k, yk_closed, HomographicMap,
};
use eulerian_slices::hull::stats::limit_at_infinity;
use eulerian_slices::hull::{
    e_inf_mean, e_k_mean, e_k_mean_in_k, integrate_density_moment, laplace_at_d, laplace_limit,
    p_inf, p_inf_table, perimeter_counts, specialize_alpha, u_mean_limit, HullSeriesEngine,
};
use eulerian_slices::kernel::{slice_series_from_kernel, solve_phi_omega};
use eulerian_slices::oracle::{count_hull, count_two_point};
use eulerian_slices::series::{
    q, q_to_f64, rf_expand_epsilon, RationalFunction, Ring, TruncatedSeries, Var, Q,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, detail: impl Into<String>) -> Outcome {
    let detail = detail.into();
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn h4_series() -> Outcome {
    let sys = solve_phi_omega(10, 10).map_err(err)?;
    let want = TruncatedSeries::from_ints(
        Var::RescaledG,
        &[0, 1, 0, 1, 3, 9, 31, 114, 435, 1713, 6924],
    );
    ensure(sys.h4 == want, format!("h4 = {}", sys.h4))
}

fn recursion_equivalence() -> Outcome {
    let (kmax, order) = (8, 16);
    let table = solve_classical(kmax, order).map_err(err)?;
    let sys = solve_phi_omega(order, order).map_err(err)?;
    let rs = slice_series_from_kernel(&sys, &table, kmax).map_err(err)?;
    for (i, r) in rs.iter().enumerate() {
        if *r != table.r(i + 1).map_err(err)? {
            return Err(format!("R_{} differs", i + 1));
        }
    }
    Ok(format!(
        "R_1 (t_k + 1) = R_k for k <= {kmax} at order {order}"
    ))
}

fn closed_form_agreement() -> Outcome {
    let (kmax, order) = (10, 20);
    let table = solve_classical(kmax, order).map_err(err)?;
    for k in 1..=kmax {
        if expand_in_g(&rk_closed(k), order).map_err(err)? != table.r(k).map_err(err)? {
            return Err(format!("R_{k} differs"));
        }
        let g = expand_in_g(&gk_closed(k), order).map_err(err)?;
        if g != table.two_point(k).map_err(err)? {
            return Err(format!("G_{k} differs"));
        }
        if !g.coeffs().iter().all(|c| c.is_integer() && *c >= qi(0)) {
            return Err(format!(
                "G_{k} has a coefficient that is not a nonnegative integer"
            ));
        }
    }
    Ok(format!(
        "R_k and G_k for k <= {kmax} at order {order}; G_k integral and nonnegative"
    ))
}

fn rational_identities() -> Outcome {
    let h = HomographicMap::from_x();
    let mut ok =
        yk_closed(1) == c_of_x().add(&RationalFunction::one()).neg() && h.trace_relations_hold();
    for k in 2..=10 {
        ok &= h.apply(&yk_closed(k - 1)).map_err(err)? == yk_closed(k);
        ok &= w_k(k).map_err(err)? == w_k(k - 1).map_err(err)?.mul(&RationalFunction::x());
    }
    if !ok {
        return Err("homographic recursion or W_k geometric property fails".into());
    }
    let line = check_special_line().map_err(err)?;
    if !(line.tg_residual_vanishes && line.h4_expressions_agree && line.h4_matches_parametrization)
    {
        return Err(format!("special line: {line:?}"));
    }
    let via_c = g_of_c(&c_of_x()).map_err(err)?;
    let via_r1 = g_of_x().mul(&r1_of_x().pow(2));
    ensure(
        via_c == big_g_of_x() && via_r1 == big_g_of_x(),
        "Y_k recursion, W_k, tG residual, h4 on the line, G(C(x))",
    )
}

fn brute_force_oracle() -> Outcome {
    let (fmax, kmax) = (3, 6);
    let table = solve_classical(kmax, fmax).map_err(err)?;
    for k in 1..=kmax {
        let g = table.two_point(k).map_err(err)?;
        for f in 1..=fmax {
            let n = count_two_point(f, k).map_err(err)?;
            if qi(n as i64) != *g.coeff(f) {
                return Err(format!(
                    "F = {f}, k = {k}: counted {n}, series {}",
                    g.coeff(f)
                ));
            }
        }
    }
    let small = [(1, 1, 1), (1, 2, 1), (1, 3, 0)]
        .iter()
        .all(|&(f, k, n)| count_two_point(f, k) == Ok(n));
    if !small {
        return Err("single-face counts".into());
    }
    let engine = HullSeriesEngine::new(3, fmax).map_err(err)?;
    let h = engine.h_iterated(3, 2).map_err(err)?;
    for f in 1..=fmax {
        let counted = count_hull(f, 3, 2).map_err(err)?;
        let series = perimeter_counts(&h, f);
        let len = series.len().max(counted.keys().max().map_or(0, |p| p + 1));
        for p in 0..len {
            let c = qi(counted.get(&p).copied().unwrap_or(0) as i64);
            if series.get(p).cloned().unwrap_or_else(|| qi(0)) != c {
                return Err(format!("hull F = {f}, p = {p}"));
            }
        }
    }
    Ok(format!(
        "two-point F <= {fmax}, k <= {kmax}; hull (k,d) = (3,2), F <= {fmax}"
    ))
}

fn hull_routes() -> Outcome {
    let order = 8;
    let engine = HullSeriesEngine::new(5, order).map_err(err)?;
    for (k, d) in [(3, 2), (4, 2), (4, 3), (5, 3)] {
        let h = engine.h_iterated(k, d).map_err(err)?;
        if h != engine.h_closed_series(k, d).map_err(err)? {
            return Err(format!("routes differ at ({k},{d})"));
        }
        if specialize_alpha(&h, &qi(1)) != engine.two_point(k).map_err(err)? {
            return Err(format!("H_{k}(1,{d}) != G_{k}"));
        }
    }
    Ok(format!(
        "iterated = closed form and H_k(1,d) = G_k at order {order}"
    ))
}

fn statistics() -> Outcome {
    if e_inf_mean(2) != q(105, 32) || p_inf(2, 1) != q(28, 45) {
        return Err(format!(
            "E(L(2)) = {}, p(2,1) = {}",
            e_inf_mean(2),
            p_inf(2, 1)
        ));
    }
    for d in [2, 5, 10, 20] {
        let mass = p_inf_table(d, 1e-15).mass;
        if (mass - 1.0).abs() > 1e-9 {
            return Err(format!("mass at d = {d} is {mass}"));
        }
    }
    if limit_at_infinity(&e_k_mean_in_k(2)) != Some(q(105, 32)) {
        return Err("E_k(L(2)) does not tend to 105/32".into());
    }
    let v = q_to_f64(&e_k_mean(2000, 1000).map_err(err)?) / 1e6;
    let want = u_mean_limit(0.5);
    let rel = (v - want).abs() / want;
    ensure(
        rel < 1e-2,
        format!("105/32, 28/45, unit mass, k-limit; u = 1/2 relative gap {rel:.2e}"),
    )
}

fn singular_structure() -> Outcome {
    for k in 1..=8 {
        let e = rf_expand_epsilon(&gk_closed(k), 7).map_err(err)?;
        let odd_zero = (1..=7).step_by(2).all(|i| e.coeff(i).is_zero());
        if !odd_zero || !e.coeff(2).is_zero() || *e.coeff(6) <= qi(0) {
            return Err(format!("G_{k} = {e}"));
        }
    }
    let g = rf_expand_epsilon(&g_of_x(), 8).map_err(err)?;
    let want =
        TruncatedSeries::from_ints(Var::Epsilon, &[1, 0, 0, 0, -1, 0, 0, 0, 0]).scale(&q(1, 8));
    ensure(g == want, format!("k <= 8 structure; g = {g}"))
}

fn limit_laws() -> Outcome {
    let mut worst: f64 = 0.0;
    for tau in [0.5, 1.0, 2.0] {
        let errs: Vec<f64> = [50, 100, 200]
            .iter()
            .map(|&d| laplace_at_d(tau, d).map(|v| (v - laplace_limit(tau)).abs()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        if !(errs[0] > errs[1] && errs[1] > errs[2]) {
            return Err(format!("error not decreasing at tau = {tau}: {errs:?}"));
        }
        worst = worst.max(errs[2]);
    }
    let (m0, m1) = (integrate_density_moment(0), integrate_density_moment(1));
    let moments = (m0 - 1.0).abs().max((m1 - 0.375).abs());
    ensure(
        worst < 2e-2 && moments < 1e-9,
        format!("Laplace gap {worst:.2e} at d = 200; moment gap {moments:.1e}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("h4 expansion", h4_series, Some(Duration::from_secs(5))),
        (
            "recursion equivalence",
            recursion_equivalence,
            Some(Duration::from_secs(30)),
        ),
        ("closed-form agreement", closed_form_agreement, None),
        ("rational-function identities", rational_identities, None),
        (
            "brute-force oracle",
            brute_force_oracle,
            Some(Duration::from_secs(300)),
        ),
        ("hull route equivalence", hull_routes, None),
        ("statistics numbers", statistics, None),
        ("singular structure", singular_structure, None),
        ("limit laws", limit_laws, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > *b => Err(format!("took {took:.1?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {}. {name}: {detail} [{took:.2?}]", i + 1)
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
