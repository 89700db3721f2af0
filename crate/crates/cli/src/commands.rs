//! Subcommand implementations.

use std::fs;
use std::time::{Duration, Instant, SystemTime, UNIX_EPOCH};

use bookcross::bounds::Provenance;
use bookcross::chordgraph::{build_chord_graph, orbit_valency};
use bookcross::drawings::{count_crossings, dds_drawing};
use bookcross::exact::wcnf::{emit_dimacs_wcnf, encode_wcnf, WcnfMode};
use bookcross::exact::{nu_exact, Budget, ExactResult};
use bookcross::formulas::{binom4, dds_limit_ratio, prior_lower_ratio, to_f64, z_k};
use bookcross::sdp::{certify_bound, fj_dense, fj_for, fj_reduced, BoundCache, CacheRecord, CertifiedBound};
use bookcross::Error;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{grid, Cell, Report};
use crate::{Cli, Command, Config, MethodArg, WcnfModeArg, EXIT_INPUT};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Parse { .. } | Error::Unsupported(_) | Error::Cap { .. } => EXIT_INPUT,
            _ => 1,
        };
        CliError { code, msg: e.to_string() }
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn bad_input<T>(msg: impl Into<String>) -> Res<T> {
    Err(CliError { code: EXIT_INPUT, msg: msg.into() })
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError { code: 1, msg: format!("{}: {e}", path.display()) }
}

pub fn run(cli: &Cli) -> Res<Report> {
    let cfg = &cli.config;
    validate(cfg)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| CliError { code: 1, msg: e.to_string() })?;
    pool.install(|| match &cli.command {
        Command::Graph { n } => graph(*n),
        Command::Dds { n, k } => dds(*n, *k),
        Command::Zk { k, n_min, n_max } => zk(*k, *n_min, *n_max),
        Command::Exact { n, k, wcnf_out, wcnf_mode, assignment } => {
            exact(cfg, *n, *k, wcnf_out.as_deref(), *wcnf_mode, *assignment)
        }
        Command::Sdp { n, k, method, cached, no_cache } => sdp(cfg, *n, *k, *method, *cached, *no_cache),
        Command::Table { which: 1, ks, n_min, n_max, .. } => table1(cfg, ks, *n_min, *n_max),
        Command::Table { which: 2, ks, m, .. } => table2(cfg, ks, m),
        Command::Table { ks, m, no_sdp, .. } => table3(cfg, ks, m[0], *no_sdp),
    })
}

fn validate(cfg: &Config) -> Res<()> {
    if let Some(t) = cfg.time_limit {
        if !(t > 0.0 && t.is_finite()) {
            return bad_input("--time-limit must be a positive number of seconds");
        }
    }
    if cfg.max_nodes == Some(0) {
        return bad_input("--max-nodes must be positive");
    }
    if !(cfg.tol > 0.0 && cfg.tol <= 1e-2) {
        return bad_input("--tol must lie in (0, 1e-2]");
    }
    Ok(())
}

fn budget(cfg: &Config) -> Budget {
    Budget { max_nodes: cfg.max_nodes, max_time: cfg.time_limit.map(Duration::from_secs_f64) }
}

fn graph(n: usize) -> Res<Report> {
    let g = build_chord_graph(n)?;
    let orbits: Vec<_> = (2..=g.d())
        .map(|i| {
            let r = g.orbit_range(i);
            let degree = g.degree(r.start);
            let mut o = json!({"distance": i, "size": r.len(), "degree": degree});
            if n % 2 == 1 {
                o["valency_formula"] = json!(orbit_valency(i, g.d()));
            }
            o
        })
        .collect();
    let mut pretty = format!(
        "G_{n}: {} vertices, {} edges, {} orbits, C({n},4) = {}\n",
        g.num_vertices(),
        g.num_edges(),
        g.num_orbits(),
        binom4(n as u64)
    );
    for o in &orbits {
        pretty.push_str(&format!("orbit distance={} size={} degree={}\n", o["distance"], o["size"], o["degree"]));
    }
    pretty.push_str(&g.edge_list_string());
    let mut csv = String::from("u,v\n");
    for (u, v) in g.edges() {
        csv.push_str(&format!("{u},{v}\n"));
    }
    let mut r = Report::new("graph", Vec::new(), pretty);
    r.data = json!({
        "n": n,
        "vertices": g.vertices().iter().map(|c| [c.a(), c.b()]).collect::<Vec<_>>(),
        "orbits": orbits,
        "edges": g.edges(),
    });
    r.csv_override = Some(csv);
    Ok(r)
}

fn dds(n: usize, k: usize) -> Res<Report> {
    let t = Instant::now();
    let dr = dds_drawing(n, k)?;
    let crossings = count_crossings(&dr);
    let formula = z_k(n as u64, k as u64)?;
    if crossings != formula {
        return Err(Error::Invariant(format!("drawing has {crossings} crossings, formula gives {formula}")).into());
    }
    let pretty = format!("{dr}crossings: {crossings}\n");
    let cell = Cell::new(k, Some(n), "crossings", crossings, Provenance::Dds).runtime(t.elapsed().as_secs_f64());
    let mut r = Report::new("dds", vec![cell], pretty);
    r.data = json!({"n": n, "k": k, "pages": dr.pages(), "crossings": crossings});
    Ok(r)
}

fn zk(k: usize, n_min: usize, n_max: usize) -> Res<Report> {
    if k == 0 || n_min == 0 || n_min > n_max {
        return bad_input(format!("need k >= 1 and 1 <= n-min <= n-max, got k={k}, n-min={n_min}, n-max={n_max}"));
    }
    let mut cells = Vec::new();
    let mut pretty = format!("{:>6}  {:>12}\n", "n", format!("Z_{k}(n)"));
    for n in n_min..=n_max {
        let z = z_k(n as u64, k as u64)?;
        pretty.push_str(&format!("{n:>6}  {z:>12}\n"));
        cells.push(Cell::new(k, Some(n), "z_k", z, Provenance::Formula));
    }
    Ok(Report::new("zk", cells, pretty))
}

fn exact_cell(r: &ExactResult) -> Cell {
    let provenance = if !r.proved_optimal {
        Provenance::BudgetExceeded
    } else if r.k >= r.n.div_ceil(2) {
        Provenance::Formula
    } else {
        Provenance::Exact
    };
    Cell::new(r.k, Some(r.n), "nu", r.nu, provenance)
        .detail(json!({"cut": r.cut_size, "optimal": r.proved_optimal, "nodes": r.nodes_explored}))
        .runtime(r.wall_time.as_secs_f64())
}

fn exact(
    cfg: &Config,
    n: usize,
    k: usize,
    wcnf_out: Option<&std::path::Path>,
    mode: WcnfModeArg,
    show_assignment: bool,
) -> Res<Report> {
    let r = nu_exact(n, k, budget(cfg))?;
    if let Some(path) = wcnf_out {
        let w = encode_wcnf(&build_chord_graph(n)?, k)?;
        let mode = match mode {
            WcnfModeArg::Hard => WcnfMode::Hard,
            WcnfModeArg::AllSoft => WcnfMode::AllSoft,
        };
        let f = fs::File::create(path).map_err(|e| io_err(path, e))?;
        emit_dimacs_wcnf(&w, mode, std::io::BufWriter::new(f)).map_err(|e| io_err(path, e))?;
    }
    let mut cell = exact_cell(&r);
    let mut pretty = if r.proved_optimal {
        format!("nu_{k}(K_{n}) = {}\n", r.nu)
    } else {
        format!("nu_{k}(K_{n}) <= {} (budget exhausted, not proved optimal)\n", r.nu)
    };
    pretty.push_str(&format!(
        "max {k}-cut: {}\nnodes: {}\ntime: {:.3}s\n",
        r.cut_size,
        r.nodes_explored,
        r.wall_time.as_secs_f64()
    ));
    if show_assignment {
        cell.detail["assignment"] = json!(r.assignment.color_of);
        let colors: Vec<String> = r.assignment.color_of.iter().map(|c| c.to_string()).collect();
        pretty.push_str(&format!("pages: {}\n", colors.join(" ")));
    }
    let mut rep = Report::new("exact", vec![cell], pretty);
    rep.partial = !r.proved_optimal;
    Ok(rep)
}

fn now_secs() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn solve_certified(n: usize, k: usize, method: MethodArg, tol: f64) -> Res<CertifiedBound> {
    let run = match method {
        MethodArg::Auto => fj_for(n, k, tol)?,
        MethodArg::Dense => fj_dense(&build_chord_graph(n)?, k, tol)?,
        MethodArg::Reduced => fj_reduced(n, k, tol)?,
    };
    Ok(certify_bound(&run)?)
}

fn sdp(cfg: &Config, n: usize, k: usize, method: MethodArg, cached: bool, no_cache: bool) -> Res<Report> {
    let cache = BoundCache::in_dir(&cfg.cache_dir);
    let t = Instant::now();
    let hit = if cached { cache.get(n, k)? } else { None };
    let (bound, from_cache) = match hit {
        Some(rec) => (rec.to_bound(), true),
        None => (solve_certified(n, k, method, cfg.tol)?, false),
    };
    let secs = t.elapsed().as_secs_f64();
    let updated = if !from_cache && !no_cache {
        let mut rec = CacheRecord::from_bound(&bound);
        rec.timestamp = now_secs();
        cache.insert(&rec)?
    } else {
        false
    };
    let cell = Cell::new(k, Some(n), "nu_lower", bound.nu_lower, Provenance::SdpCertified)
        .detail(json!({
            "fj": bound.fj_value,
            "ratio": bound.ratio(),
            "margin": bound.certificate_feasibility_margin,
            "method": bound.method,
            "solver_tol": bound.solver_tol,
            "from_cache": from_cache,
        }))
        .runtime(secs);
    let pretty = format!(
        "FJ_{k}(G_{n}) <= {:.6}\nnu_{k}(K_{n}) >= {}\nratio (C(n,4) - FJ)/C(n,4) = {:.5e}\nmethod: {}, tol {:e}, repair margin {:.3e}\n{}\n",
        bound.fj_value,
        bound.nu_lower,
        bound.ratio(),
        bound.method.as_str(),
        bound.solver_tol,
        bound.certificate_feasibility_margin,
        if from_cache {
            "read from cache".to_string()
        } else if updated {
            format!("cached in {}", cache.path().display())
        } else if no_cache {
            "not cached".to_string()
        } else {
            "cache already holds an at least as strong bound".to_string()
        }
    );
    Ok(Report::new("sdp", vec![cell], pretty))
}

fn ks_or(ks: &[usize], default: std::ops::RangeInclusive<usize>) -> Res<Vec<usize>> {
    let mut ks = if ks.is_empty() { default.collect() } else { ks.to_vec() };
    ks.sort_unstable();
    ks.dedup();
    if ks.contains(&0) {
        return bad_input("k must be positive");
    }
    Ok(ks)
}

fn table1(cfg: &Config, ks: &[usize], n_min: usize, n_max: usize) -> Res<Report> {
    let ks = ks_or(ks, 3..=5)?;
    if n_min < 5 || n_min > n_max {
        return bad_input(format!("need 5 <= n-min <= n-max, got {n_min}..{n_max}"));
    }
    let work: Vec<(usize, usize)> = ks.iter().flat_map(|&k| (n_min..=n_max).map(move |n| (k, n))).collect();
    let results: Vec<Res<ExactResult>> = work.par_iter().map(|&(k, n)| Ok(nu_exact(n, k, budget(cfg))?)).collect();
    let results = results.into_iter().collect::<Res<Vec<_>>>()?;
    let cells: Vec<Cell> = results.iter().map(exact_cell).collect();
    let columns: Vec<String> = (n_min..=n_max).map(|n| n.to_string()).collect();
    let rows: Vec<(String, Vec<String>)> = ks
        .iter()
        .map(|&k| {
            let row = cells
                .iter()
                .filter(|c| c.k == k)
                .map(|c| match c.provenance {
                    Provenance::BudgetExceeded => format!("<={}*", c.value),
                    _ => c.value.to_string(),
                })
                .collect();
            (k.to_string(), row)
        })
        .collect();
    let partial = cells.iter().any(|c| c.provenance == Provenance::BudgetExceeded);
    let mut pretty = format!("nu_k(K_n)\n{}", grid("k\\n", &columns, &rows));
    if partial {
        pretty.push_str("* budget exceeded: best drawing found, not proved optimal\n");
    }
    let mut r = Report::new("table 1", cells, pretty);
    r.partial = partial;
    Ok(r)
}

/// Certified ratio at `(m, k)`, from the cache when present; otherwise solved and cached.
fn ratio_cell(cfg: &Config, m: usize, k: usize) -> Res<Cell> {
    let t = Instant::now();
    if k >= m.div_ceil(2) {
        // K_m embeds without crossings, so the relaxation is exactly C(m,4)
        return Ok(Cell::new(k, Some(m), "ratio_lower", 0.0, Provenance::Formula).detail(json!({"nu_lower": 0})));
    }
    let cache = BoundCache::in_dir(&cfg.cache_dir);
    let bound = match cache.get(m, k)? {
        Some(rec) => rec.to_bound(),
        None => {
            let b = solve_certified(m, k, MethodArg::Auto, cfg.tol)?;
            let mut rec = CacheRecord::from_bound(&b);
            rec.timestamp = now_secs();
            cache.insert(&rec)?;
            b
        }
    };
    Ok(Cell::new(k, Some(m), "ratio_lower", bound.ratio(), Provenance::SdpCertified)
        .detail(json!({"fj": bound.fj_value, "nu_lower": bound.nu_lower}))
        .runtime(t.elapsed().as_secs_f64()))
}

fn sci(v: &serde_json::Value) -> String {
    match v.as_f64() {
        Some(0.0) => "0".into(),
        Some(x) => format!("{x:.4e}"),
        None => v.to_string(),
    }
}

fn prior_cell(k: usize) -> Res<Cell> {
    Ok(Cell::new(k, None, "limit_lower", to_f64(&prior_lower_ratio(k as u64)?), Provenance::PriorBound))
}

fn table2(cfg: &Config, ks: &[usize], ms: &[usize]) -> Res<Report> {
    let ks = ks_or(ks, 3..=20)?;
    let mut ms = ms.to_vec();
    ms.sort_unstable();
    ms.dedup();
    if ms.iter().any(|&m| m < 5) {
        return bad_input("m must be at least 5");
    }
    let work: Vec<(usize, usize)> = ks.iter().flat_map(|&k| ms.iter().map(move |&m| (k, m))).collect();
    let sdp_cells = work.par_iter().map(|&(k, m)| ratio_cell(cfg, m, k)).collect::<Vec<_>>();
    let mut cells = Vec::new();
    let mut rows = Vec::new();
    let mut sdp_cells = sdp_cells.into_iter();
    for &k in &ks {
        let mut row = Vec::new();
        for _ in &ms {
            let c = sdp_cells.next().expect("one cell per (k, m)")?;
            row.push(sci(&c.value));
            cells.push(c);
        }
        let p = prior_cell(k)?;
        row.push(sci(&p.value));
        cells.push(p);
        rows.push((k.to_string(), row));
    }
    let mut columns: Vec<String> = ms.iter().map(|m| format!("m={m}")).collect();
    columns.push("prior".into());
    let pretty = format!("certified lower bounds on nu_k(K_n)/C(n,4), valid for n > m\n{}", grid("k", &columns, &rows));
    Ok(Report::new("table 2", cells, pretty))
}

fn table3(cfg: &Config, ks: &[usize], m: usize, no_sdp: bool) -> Res<Report> {
    let ks = ks_or(ks, 3..=20)?;
    let fj: Vec<Option<Cell>> = if no_sdp {
        ks.iter().map(|_| None).collect()
    } else {
        let r: Vec<Res<Cell>> = ks.par_iter().map(|&k| ratio_cell(cfg, m, k)).collect();
        r.into_iter().map(|c| c.map(Some)).collect::<Res<_>>()?
    };
    let mut cells = Vec::new();
    let mut rows = Vec::new();
    for (&k, fj) in ks.iter().zip(fj) {
        let prior = prior_cell(k)?;
        let upper = to_f64(&dds_limit_ratio(k as u64));
        let mut row = vec![sci(&prior.value)];
        cells.push(prior);
        match fj {
            Some(c) => {
                let ratio = c.value.as_f64().unwrap_or(0.0);
                let quotient = ratio / upper;
                row.push(sci(&c.value));
                row.push(sci(&json!(upper)));
                row.push(format!("{quotient:.4}"));
                cells.push(
                    Cell::new(k, None, "limit_lower", ratio, Provenance::Lifted)
                        .detail(json!({"m": m, "quotient": quotient}))
                        .runtime(c.runtime_s),
                );
            }
            None => {
                row.push("-".into());
                row.push(sci(&json!(upper)));
                row.push("-".into());
            }
        }
        cells.push(Cell::new(k, None, "limit_upper", upper, Provenance::Formula));
        rows.push((k.to_string(), row));
    }
    let columns = ["prior lower".to_string(), format!("SDP lower (m={m})"), "DDS upper".into(), "quotient".into()];
    let pretty = format!("bounds on lim nu_k(K_n)/C(n,4)\n{}", grid("k", &columns, &rows));
    Ok(Report::new("table 3", cells, pretty))
}
