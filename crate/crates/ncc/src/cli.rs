use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use ncc_core::pgroup::{build_gamma_graph, GammaGraph};
use ncc_core::Limits;
use serde_json::json;

use crate::batch::{collect_targets, run, RunOptions, Status};
use crate::cache::{write_atomic, Cache};
use crate::error::{Error, Result};
use crate::report::Invariant;
use crate::tower::{tower, TowerRequest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// Covering numbers of finite groups, quaternion quotient towers and p-group
/// branch graphs.
#[derive(Debug, Parser)]
#[command(name = "ncc", version)]
pub struct Cli {
    /// Group file, directory of group files, or an inline definition such
    /// as "construct dihedral 8" or "quat:p=5,k=3,variant=PGL1,i=1".
    #[arg(long, value_name = "FILE|DIR|DEF")]
    pub input: Vec<String>,

    /// Invariants to compute: ncc, nac, peo, meo, d, classes.
    #[arg(long, default_value = "ncc", value_name = "LIST")]
    pub compute: String,

    /// ncc along a quotient tower: p,variant,i,kmin,kmax.
    #[arg(long, value_name = "SPEC")]
    pub tower: Option<String>,

    /// Follow the index-p line subgroups along the tower.
    #[arg(long, requires = "tower")]
    pub subgroups: bool,

    /// Branch graph of p-groups: p,d,k,max-order.
    #[arg(long, value_name = "SPEC")]
    pub gamma: Option<String>,

    #[arg(long, value_name = "N")]
    pub max_order: Option<usize>,

    #[arg(long, value_name = "N")]
    pub nac_cap: Option<usize>,

    /// Cross-check ncc against the exhaustive oracle.
    #[arg(long)]
    pub oracle: bool,

    #[arg(long, default_value = "./.ncc-cache", value_name = "PATH")]
    pub cache_dir: PathBuf,

    /// Disable the cache.
    #[arg(long)]
    pub no_cache: bool,

    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl Cli {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(n) = self.max_order {
            l.max_order = n;
        }
        if let Some(n) = self.nac_cap {
            l.nac = n;
        }
        l
    }
}

fn parse_gamma(s: &str) -> Result<(u64, u32, usize, usize)> {
    let bad = || Error::Semantic(format!("gamma expects p,d,k,max-order, got {s:?}"));
    let nums: Vec<u64> = s
        .split(',')
        .map(|w| w.trim().parse::<u64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    let [p, d, k, max] = nums.as_slice() else {
        return Err(bad());
    };
    Ok((*p, *d as u32, *k as usize, *max as usize))
}

fn gamma_json(g: &GammaGraph) -> String {
    let vertices: Vec<_> = g
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| json!({ "id": i, "label": v.group.label(), "order": v.order, "ncc": v.ncc, "d": v.d }))
        .collect();
    let edges: Vec<_> = g
        .edges
        .iter()
        .map(|e| json!({ "child": e.child, "parent": e.parent, "multiplicity": e.multiplicity }))
        .collect();
    let tree: Vec<_> = g.spanning_tree().into_iter().map(|(c, p)| json!([c, p])).collect();
    json!({
        "p": g.p, "d": g.d, "k": g.k, "max_order": g.max_order,
        "vertices": vertices, "edges": edges, "spanning_tree": tree,
    })
    .to_string()
}

/// Runs the command line and returns the process exit code.
pub fn execute(cli: &Cli) -> i32 {
    match execute_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute_inner(cli: &Cli) -> Result<i32> {
    if cli.input.is_empty() && cli.tower.is_none() && cli.gamma.is_none() {
        return Err(Error::Semantic("nothing to do: pass --input, --tower or --gamma".into()));
    }
    if cli.format == Format::Dot && (!cli.input.is_empty() || cli.tower.is_some()) {
        return Err(Error::Semantic("--format dot only applies to --gamma".into()));
    }
    let limits = cli.limits();
    let mut out = String::new();
    let mut status = Status::Ok;

    if !cli.input.is_empty() {
        let opts = RunOptions {
            invariants: Invariant::parse_list(&cli.compute)?,
            oracle: cli.oracle,
            limits,
            cache: (!cli.no_cache).then(|| Cache::new(&cli.cache_dir)),
        };
        let targets = collect_targets(&cli.input)?;
        for o in run(&targets, &opts) {
            if o.cache_hit {
                eprintln!("cache hit: {}", o.report.input);
            }
            if let Some(e) = &o.report.error {
                eprintln!("{}: {e}", o.report.input);
            }
            status = status.max(o.status);
            out.push_str(&match cli.format {
                Format::Json => o.report.to_json_line(),
                _ => o.report.to_text_line(),
            });
            out.push('\n');
        }
    }

    if let Some(spec) = &cli.tower {
        let mut req: TowerRequest = spec.parse()?;
        req.subgroups = cli.subgroups;
        let report = tower(&req, &limits);
        if report.rows.iter().any(|r| r.error.is_some()) {
            status = status.max(Status::Failed);
        }
        match cli.format {
            Format::Json => {
                out.push_str(&report.to_json());
                out.push('\n');
            }
            _ => out.push_str(&report.to_text()),
        }
    }

    if let Some(spec) = &cli.gamma {
        let (p, d, k, max) = parse_gamma(spec)?;
        let g = build_gamma_graph(p, d, k, max, &limits)?;
        if !g.root_reachable() {
            return Err(Error::Assertion("a vertex does not reach the elementary abelian root".into()));
        }
        match cli.format {
            Format::Json => {
                out.push_str(&gamma_json(&g));
                out.push('\n');
            }
            Format::Text => out.push_str(&g.to_text()),
            Format::Dot => out.push_str(&g.to_dot()),
        }
    }

    match &cli.out {
        Some(path) => write_atomic(path, out.as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("stdout", e))?;
        }
    }
    Ok(status.exit_code())
}

/// Parses `std::env::args`; usage errors exit with 1.
pub fn main() -> i32 {
    match Cli::try_parse() {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            code
        }
    }
}
