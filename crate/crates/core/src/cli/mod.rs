//! Command-line front end: coefficient tables, perimeter distributions,
//! statistics sweeps, map dumps and the verification ledger.

pub mod output;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::classical::solve_classical;
use crate::closed_form::{expand_in_g, gk_closed, rk_closed, x_of_g_series};
use crate::hull::{
    density_limit, e_inf_alpha, e_inf_mean, e_k_mean, expectation_alpha_exact,
    finite_k_distribution, laplace_at_d, laplace_limit, p_inf, p_inf_table, u_mean_limit,
    HullError,
};
use crate::kernel::{iterate_t, slice_series_from_kernel, solve_phi_omega};
use crate::oracle::{enumerate_maps, OracleError};
use crate::series::{q_to_f64, TruncatedSeries, Q};

pub use output::{fmt_sig, Format, Table};
pub use verify::{run_suites, Suite, VerificationLedger, VerifyConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Hull(#[from] HullError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn compute<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Compute(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "eulerian",
    version,
    about = "Slice generating functions and hull statistics of planar Eulerian triangulations"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Truncation order in g (or G).
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, value_enum, global = true, default_value = "csv")]
    pub format: Format,
    /// Significant digits of floating-point output.
    #[arg(long, global = true, default_value_t = 12)]
    pub precision: usize,
    /// Write to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients of the two-point function G_k.
    TwoPoint {
        #[arg(long)]
        k: usize,
    },
    /// Coefficients of one of the slice series.
    Series(SeriesArgs),
    /// Distribution of the hull perimeter at distance d.
    HullDist(HullDistArgs),
    /// Mean hull perimeter, or E(alpha^L), for a list of distances.
    HullMean(HullMeanArgs),
    /// Large-distance limit laws.
    Scaling(ScalingArgs),
    /// Dump every rooted map with F white faces.
    Enumerate {
        #[arg(long)]
        faces: usize,
    },
    /// Run verification suites and print the ledger.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    /// R_k in g.
    R,
    /// G_k in g.
    G,
    /// R_inf in g.
    RInf,
    /// Rescaled t_k in G.
    T,
    /// h4 in G.
    H4,
    /// x(g), inverse of g = x(1+x^2)/(1+x)^4.
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Classical,
    Kernel,
    Closed,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, value_enum)]
    pub kind: SeriesKind,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// How R_k and G_k are computed.
    #[arg(long, value_enum, default_value = "classical")]
    pub route: Route,
}

#[derive(Debug, Args)]
pub struct HullDistArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 20)]
    pub pmax: usize,
    /// Finite k; omitted means the infinite-k law.
    #[arg(long, conflicts_with = "infinite")]
    pub k: Option<usize>,
    #[arg(long)]
    pub infinite: bool,
    /// Add L = 2p/d², the density of L and its limit.
    #[arg(long)]
    pub rescaled: bool,
}

#[derive(Debug, Args)]
pub struct HullMeanArgs {
    /// Comma-separated distances.
    #[arg(long, value_delimiter = ',', required = true)]
    pub d: Vec<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Report E(alpha^L) instead of E(L); rational like 1/2 or decimal.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Law {
    /// E(exp(-tau L(d)/d²)) against (1 + tau/4)^(-3/2).
    Laplace,
    /// Limiting density of L.
    Density,
    /// E_k(L(uk))/(uk)² against (3/8)(1+u-3u⁶+u⁷).
    UMean,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, value_enum)]
    pub law: Law,
    #[arg(long, value_delimiter = ',', default_value = "0.5,1,2")]
    pub tau: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "50,100,200")]
    pub d: Vec<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub l_max: f64,
    #[arg(long, default_value_t = 21)]
    pub points: usize,
    #[arg(long, default_value_t = 2000)]
    pub k: usize,
    #[arg(long, value_delimiter = ',', default_value = "0.25,0.5,0.75")]
    pub u: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run; all when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    /// Series order, also the face bound of the oracle suite.
    #[arg(long, default_value_t = 8)]
    pub orders: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = output::emit(&text, cli.common.out.as_deref()) {
                eprintln!("error: {e}");
                return 1;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(m)) => {
            eprintln!("usage error: {m}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Output text and whether the command succeeded.
pub fn run(cli: &Cli) -> Result<(String, bool), CliError> {
    let c = &cli.common;
    if c.format == Format::Records && !matches!(cli.command, Command::Enumerate { .. }) {
        return Err(CliError::Usage(
            "--format records only applies to enumerate".into(),
        ));
    }
    match &cli.command {
        Command::TwoPoint { k } => two_point(c, *k).map(|s| (s, true)),
        Command::Series(a) => series(c, a).map(|s| (s, true)),
        Command::HullDist(a) => hull_dist(c, a).map(|s| (s, true)),
        Command::HullMean(a) => hull_mean(c, a).map(|s| (s, true)),
        Command::Scaling(a) => scaling(c, a).map(|s| (s, true)),
        Command::Enumerate { faces } => enumerate(c, *faces).map(|s| (s, true)),
        Command::Verify(a) => Ok(verify_cmd(c, a)),
    }
}

fn render(c: &Common, table: &Table, json: Value) -> String {
    match c.format {
        Format::Json => output::to_json(&json),
        _ => table.to_csv(),
    }
}

/// Rows from `n = 1` (or the single constant row at order 0).
fn coefficient_output(c: &Common, s: &TruncatedSeries<Q>, meta: Value) -> String {
    let start = usize::from(s.order() > 0);
    let mut t = Table::new(vec!["n", "coefficient"]);
    for n in start..=s.order() {
        t.push(vec![n.to_string(), s.coeff(n).to_string()]);
    }
    let mut json = meta;
    json["order"] = json!(s.order());
    json["coefficients"] = Value::Array(
        s.coeffs()
            .iter()
            .map(|q| Value::String(q.to_string()))
            .collect(),
    );
    render(c, &t, json)
}

fn two_point(c: &Common, k: usize) -> Result<String, CliError> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let order = c.order.unwrap_or(10);
    let g = solve_classical(k, order)
        .and_then(|t| t.two_point(k))
        .map_err(compute)?;
    Ok(coefficient_output(c, &g, json!({ "k": k })))
}

fn series(c: &Common, a: &SeriesArgs) -> Result<String, CliError> {
    let order = c.order.unwrap_or(10);
    let k = a.k;
    if k == 0 && matches!(a.kind, SeriesKind::G | SeriesKind::T) {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let s = match (a.kind, a.route) {
        (SeriesKind::R | SeriesKind::G, Route::Classical) => {
            let t = solve_classical(k.max(1), order).map_err(compute)?;
            if a.kind == SeriesKind::R {
                t.r(k)
            } else {
                t.two_point(k)
            }
            .map_err(compute)?
        }
        (SeriesKind::R | SeriesKind::G, Route::Kernel) => {
            let t = solve_classical(k.max(1), order).map_err(compute)?;
            let sys = solve_phi_omega(order, order).map_err(compute)?;
            let rs = slice_series_from_kernel(&sys, &t, k.max(1)).map_err(compute)?;
            let r = |j: usize| {
                if j == 0 {
                    TruncatedSeries::zero(crate::series::Var::G, order)
                } else {
                    rs[j - 1].clone()
                }
            };
            if a.kind == SeriesKind::R {
                r(k)
            } else {
                let mut d = &r(k) - &r(k - 1);
                if k == 1 {
                    d = d.add_constant(&Q::from_integer((-1).into()));
                }
                d
            }
        }
        (SeriesKind::R | SeriesKind::G, Route::Closed) => {
            let f = if a.kind == SeriesKind::R {
                rk_closed(k)
            } else {
                gk_closed(k)
            };
            expand_in_g(&f, order).map_err(compute)?
        }
        (SeriesKind::RInf, _) => crate::classical::r_infinity(order),
        (SeriesKind::T, _) => {
            let sys = solve_phi_omega(order, order).map_err(compute)?;
            iterate_t(&sys.phi, k)
                .map_err(compute)?
                .pop()
                .expect("k >= 1")
        }
        (SeriesKind::H4, _) => solve_phi_omega(order, order).map_err(compute)?.h4,
        (SeriesKind::X, _) => x_of_g_series(order).map_err(compute)?,
    };
    let kind = SeriesKind::to_possible_value(&a.kind)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let route = Route::to_possible_value(&a.route)
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    Ok(coefficient_output(
        c,
        &s,
        json!({ "kind": kind, "k": k, "route": route, "variable": s.var().symbol() }),
    ))
}

/// Largest `p` for which the exact column of `hull-dist` is filled.
pub const EXACT_PMAX: usize = 200;

fn hull_dist(c: &Common, a: &HullDistArgs) -> Result<String, CliError> {
    let d = a.d;
    if d < 2 {
        return Err(CliError::Usage("--d must be at least 2".into()));
    }
    let prec = c.precision;
    let (exact, probs, mass, tail): (Vec<Option<Q>>, Vec<f64>, f64, f64) = match a.k {
        None => {
            let table = p_inf_table(d, 1e-15);
            let exact: Vec<Option<Q>> = (1..=a.pmax)
                .map(|p| (p <= EXACT_PMAX).then(|| p_inf(d, p)))
                .collect();
            let probs = (1..=a.pmax)
                .zip(&exact)
                .map(|(p, e)| e.as_ref().map(q_to_f64).unwrap_or_else(|| table.get(p)))
                .collect();
            (exact, probs, table.mass, table.tail_bound)
        }
        Some(k) => {
            let dist = finite_k_distribution(k, d, a.pmax)?;
            let mass: Q = dist.iter().cloned().sum();
            let mass = q_to_f64(&mass);
            let exact: Vec<Option<Q>> = dist.into_iter().skip(1).map(Some).collect();
            let probs = exact
                .iter()
                .map(|e| q_to_f64(e.as_ref().unwrap()))
                .collect();
            (exact, probs, mass, 1.0 - mass)
        }
    };
    let mut header = vec!["p", "probability", "exact"];
    if a.rescaled {
        header.extend(["L", "scaled_density", "limit_density"]);
    }
    let mut t = Table::new(header);
    let mut rows = Vec::new();
    let scale = (d * d) as f64 / 2.0;
    for (i, (pr, ex)) in probs.iter().zip(&exact).enumerate() {
        let p = i + 1;
        let ex_s = ex.as_ref().map(|q| q.to_string()).unwrap_or_default();
        let mut row = vec![p.to_string(), fmt_sig(*pr, prec), ex_s.clone()];
        let mut obj = json!({ "p": p, "probability": output::json_num(*pr, prec), "exact": ex.as_ref().map(|q| q.to_string()) });
        if a.rescaled {
            let l = 2.0 * p as f64 / (d * d) as f64;
            let (sd, ld) = (pr * scale, density_limit(l));
            row.extend([fmt_sig(l, prec), fmt_sig(sd, prec), fmt_sig(ld, prec)]);
            obj["L"] = output::json_num(l, prec);
            obj["scaled_density"] = output::json_num(sd, prec);
            obj["limit_density"] = output::json_num(ld, prec);
        }
        t.push(row);
        rows.push(obj);
    }
    let json = json!({
        "d": d,
        "k": a.k,
        "mode": if a.k.is_some() { "finite-k" } else { "infinite-k" },
        "rows": rows,
        "mass": output::json_num(mass, prec),
        "tail_bound": output::json_num(tail, prec),
    });
    Ok(render(c, &t, json))
}

/// Parses `a/b`, an integer, or a decimal (read exactly from `f64`).
pub fn parse_rational(s: &str) -> Result<Q, CliError> {
    let bad = || CliError::Usage(format!("cannot read {s:?} as a rational number"));
    if let Ok(q) = s.parse::<Q>() {
        return Ok(q);
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    Q::from_float(x).ok_or_else(bad)
}

fn hull_mean(c: &Common, a: &HullMeanArgs) -> Result<String, CliError> {
    let prec = c.precision;
    let alpha = a.alpha.as_deref().map(parse_rational).transpose()?;
    let mut t = Table::new(vec!["d", "k", "value", "exact"]);
    let mut rows = Vec::new();
    for &d in &a.d {
        if d < 2 || a.k.is_some_and(|k| d + 1 > k) {
            return Err(CliError::Usage(format!("distance {d} outside 2..=k-1")));
        }
        let (value, exact): (f64, Option<Q>) = match (a.k, &alpha) {
            (None, None) => {
                let m = e_inf_mean(d);
                (q_to_f64(&m), Some(m))
            }
            (Some(k), None) => {
                let m = e_k_mean(k, d)?;
                (q_to_f64(&m), Some(m))
            }
            (None, Some(al)) => (e_inf_alpha(q_to_f64(al), d)?, None),
            (Some(k), Some(al)) => (expectation_alpha_exact(k, d, &(al * al))?, None),
        };
        let k_s = a.k.map(|k| k.to_string()).unwrap_or_else(|| "inf".into());
        let ex_s = exact.as_ref().map(|q| q.to_string());
        t.push(vec![
            d.to_string(),
            k_s.clone(),
            fmt_sig(value, prec),
            ex_s.clone().unwrap_or_default(),
        ]);
        rows.push(
            json!({ "d": d, "k": k_s, "value": output::json_num(value, prec), "exact": ex_s }),
        );
    }
    let quantity = if alpha.is_some() { "alpha^L" } else { "L" };
    Ok(render(
        c,
        &t,
        json!({ "quantity": quantity, "alpha": a.alpha, "rows": rows }),
    ))
}

fn scaling(c: &Common, a: &ScalingArgs) -> Result<String, CliError> {
    let prec = c.precision;
    let f = |x: f64| fmt_sig(x, prec);
    let n = |x: f64| output::json_num(x, prec);
    match a.law {
        Law::Laplace => {
            let mut t = Table::new(vec!["tau", "d", "value", "limit", "abs_error"]);
            let mut rows = Vec::new();
            for &tau in &a.tau {
                for &d in &a.d {
                    if d < 2 || tau < 0.0 {
                        return Err(CliError::Usage("need d >= 2 and tau >= 0".into()));
                    }
                    let v = laplace_at_d(tau, d)?;
                    let lim = laplace_limit(tau);
                    t.push(vec![
                        f(tau),
                        d.to_string(),
                        f(v),
                        f(lim),
                        f((v - lim).abs()),
                    ]);
                    rows.push(json!({ "tau": n(tau), "d": d, "value": n(v), "limit": n(lim), "abs_error": n((v - lim).abs()) }));
                }
            }
            Ok(render(c, &t, json!({ "law": "laplace", "rows": rows })))
        }
        Law::Density => {
            if a.points < 2 || a.l_max <= 0.0 {
                return Err(CliError::Usage("need --points >= 2 and --l-max > 0".into()));
            }
            let mut t = Table::new(vec!["L", "density"]);
            let mut rows = Vec::new();
            for i in 0..a.points {
                let l = a.l_max * i as f64 / (a.points - 1) as f64;
                let v = density_limit(l);
                t.push(vec![f(l), f(v)]);
                rows.push(json!({ "L": n(l), "density": n(v) }));
            }
            Ok(render(c, &t, json!({ "law": "density", "rows": rows })))
        }
        Law::UMean => {
            let mut t = Table::new(vec!["u", "k", "d", "value", "limit"]);
            let mut rows = Vec::new();
            for &u in &a.u {
                let d = (u * a.k as f64).round() as usize;
                if d < 2 || d + 1 > a.k {
                    return Err(CliError::Usage(format!(
                        "u = {u} gives d = {d} outside 2..=k-1"
                    )));
                }
                let v = q_to_f64(&e_k_mean(a.k, d)?) / (d * d) as f64;
                let lim = u_mean_limit(d as f64 / a.k as f64);
                t.push(vec![f(u), a.k.to_string(), d.to_string(), f(v), f(lim)]);
                rows.push(json!({ "u": n(u), "k": a.k, "d": d, "value": n(v), "limit": n(lim) }));
            }
            Ok(render(c, &t, json!({ "law": "u-mean", "rows": rows })))
        }
    }
}

fn enumerate(c: &Common, faces: usize) -> Result<String, CliError> {
    let maps = enumerate_maps(faces)?;
    let records: Vec<String> = maps.iter().map(|m| m.to_record()).collect();
    Ok(match c.format {
        Format::Records => records.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => {
            let list: Vec<Value> = records.iter().map(|r| record_json(r)).collect();
            output::to_json(&json!({ "faces": faces, "count": maps.len(), "maps": list }))
        }
        Format::Csv => {
            let mut t = Table::new(vec!["E", "alpha", "sigma", "root", "colors"]);
            for r in &records {
                let v = record_json(r);
                let perm = |k: &str| {
                    v[k].as_array()
                        .unwrap()
                        .iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                t.push(vec![
                    v["E"].to_string(),
                    perm("alpha"),
                    perm("sigma"),
                    v["root"].to_string(),
                    v["colors"].as_str().unwrap().into(),
                ]);
            }
            t.to_csv()
        }
    })
}

/// Splits a dump record into its named fields.
fn record_json(r: &str) -> Value {
    let mut obj = serde_json::Map::new();
    for part in r.split("; ") {
        let (key, val) = part.split_once('=').expect("key=value");
        let v = match key {
            "alpha" | "sigma" => Value::Array(
                val.trim_matches(['[', ']'])
                    .split(',')
                    .map(|x| json!(x.parse::<usize>().expect("dart")))
                    .collect(),
            ),
            "colors" => Value::String(val.into()),
            _ => json!(val.parse::<usize>().expect("integer")),
        };
        obj.insert(key.into(), v);
    }
    Value::Object(obj)
}

fn verify_cmd(c: &Common, a: &VerifyArgs) -> (String, bool) {
    let ledger = run_suites(
        &a.suite,
        VerifyConfig {
            orders: a.orders,
            seed: a.seed,
        },
    );
    let ok = ledger.passed();
    let text = match c.format {
        Format::Csv => {
            let mut t = Table::new(vec![
                "name",
                "category",
                "status",
                "max_abs_error",
                "detail",
            ]);
            for ch in &ledger.checks {
                let err = match ch.max_abs_error {
                    verify::Accuracy::Exact => "exact".to_string(),
                    verify::Accuracy::MaxAbs(e) => fmt_sig(e, c.precision),
                };
                let status = serde_json::to_value(ch.status)
                    .unwrap()
                    .as_str()
                    .unwrap()
                    .to_string();
                t.push(vec![
                    ch.name.clone(),
                    ch.category.into(),
                    status,
                    err,
                    ch.detail.clone(),
                ]);
            }
            t.to_csv()
        }
        _ => output::to_json(&serde_json::to_value(&ledger).expect("serializable")),
    };
    (text, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> String {
        let cli =
            Cli::try_parse_from(std::iter::once("eulerian").chain(args.iter().copied())).unwrap();
        run(&cli).unwrap().0
    }

    #[test]
    fn two_point_rows() {
        assert_eq!(
            run_args(&["two-point", "--k", "1", "--order", "2"]),
            "n,coefficient\n1,1\n2,3\n"
        );
        assert_eq!(
            run_args(&["two-point", "--k", "5", "--order", "0"]),
            "n,coefficient\n0,0\n"
        );
        let j: Value = serde_json::from_str(&run_args(&[
            "two-point",
            "--k",
            "1",
            "--order",
            "2",
            "--format",
            "json",
        ]))
        .unwrap();
        assert_eq!(j["k"], 1);
        assert_eq!(j["coefficients"], json!(["0", "1", "3"]));
    }

    #[test]
    fn hull_dist_first_row() {
        assert_eq!(
            run_args(&["hull-dist", "--d", "2", "--pmax", "1"]),
            "p,probability,exact\n1,0.622222222222,28/45\n"
        );
    }

    #[test]
    fn enumerate_triangle() {
        assert_eq!(
            run_args(&["enumerate", "--faces", "1", "--format", "records"]),
            "E=3; alpha=[1,0,3,2,5,4]; sigma=[5,2,1,4,3,0]; root=0; colors=01\n"
        );
    }

    #[test]
    fn rational_arguments() {
        assert_eq!(parse_rational("1/2").unwrap(), crate::series::q(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), crate::series::q(1, 4));
        assert!(parse_rational("x").is_err());
    }
}
