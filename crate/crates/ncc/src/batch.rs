//! Batch computation of invariants over many inputs.

use std::fs;
use std::path::Path;
use std::time::Instant;

use ncc_core::group::conjugacy_classes;
use ncc_core::invariants::{d_min_generators, meo, nac, ncc, ncc_oracle, peo, AutAction};
use ncc_core::{FiniteGroup, Limits};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::{sha256_hex, Cache, Entry};
use crate::error::{Error, Result};
use crate::groupfile::GroupSpecFile;
use crate::report::{CoverReport, GroupReport, Invariant};

/// One input: a definition, or the error met while reading it.
#[derive(Debug)]
pub struct Target {
    pub name: String,
    pub file: Result<GroupSpecFile>,
}

/// Expands `--input` values. A path to a file is read, a directory
/// contributes its regular non-hidden files in name order, and anything else
/// is parsed as an inline definition.
pub fn collect_targets(inputs: &[String]) -> Result<Vec<Target>> {
    let mut out = Vec::new();
    for input in inputs {
        let path = Path::new(input);
        if path.is_dir() {
            let mut files: Vec<_> = fs::read_dir(path)
                .map_err(|e| Error::io(input.clone(), e))?
                .filter_map(|e| e.ok())
                .map(|e| e.path())
                .filter(|p| p.is_file())
                .filter(|p| !p.file_name().is_some_and(|n| n.to_string_lossy().starts_with('.')))
                .collect();
            files.sort();
            for f in files {
                out.push(read_target(&f));
            }
        } else if path.is_file() {
            out.push(read_target(path));
        } else {
            let text = input.replace("\\n", "\n");
            let file = text.parse::<GroupSpecFile>().map_err(|e| match e {
                Error::Syntax { .. } => Error::Semantic(format!(
                    "{input:?} is neither a file, a directory nor an inline definition ({e})"
                )),
                e => e,
            });
            out.push(Target {
                name: input.clone(),
                file,
            });
        }
    }
    Ok(out)
}

fn read_target(path: &Path) -> Target {
    let name = path.display().to_string();
    let file = fs::read_to_string(path)
        .map_err(|e| Error::io(name.clone(), e))
        .and_then(|text| text.parse());
    Target { name, file }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub invariants: Vec<Invariant>,
    pub oracle: bool,
    pub limits: Limits,
    pub cache: Option<Cache>,
}

/// What happened to one target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// Unreadable input or a cap or parameter error.
    Failed,
    /// A computed value did not pass its check.
    AssertionFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Ok => 0,
            Self::Failed => 1,
            Self::AssertionFailed => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: GroupReport,
    pub cache_hit: bool,
    pub status: Status,
}

/// Runs every target on the rayon pool; outcomes keep the input order.
pub fn run(targets: &[Target], opts: &RunOptions) -> Vec<Outcome> {
    targets.par_iter().map(|t| run_one(t, opts)).collect()
}

fn failed(mut report: GroupReport, e: &Error) -> Outcome {
    report.error = Some(e.to_string());
    let status = match e {
        Error::Assertion(_) => Status::AssertionFailed,
        _ => Status::Failed,
    };
    Outcome {
        report,
        cache_hit: false,
        status,
    }
}

pub fn run_one(target: &Target, opts: &RunOptions) -> Outcome {
    let file = match &target.file {
        Ok(f) => f,
        Err(e) => return failed(GroupReport::empty(&target.name, ""), e),
    };
    let canonical = file.canonical();
    let hash = sha256_hex(canonical.as_bytes());
    let mut report = GroupReport::empty(&target.name, &hash);
    match fill(&mut report, file, &canonical, opts) {
        Ok(cache_hit) => Outcome {
            report,
            cache_hit,
            status: Status::Ok,
        },
        Err(e) => failed(report, &e),
    }
}

/// Names of the cache entries needed for a report.
fn steps(opts: &RunOptions) -> Vec<&'static str> {
    let mut s = vec!["group"];
    s.extend(opts.invariants.iter().map(|i| i.name()));
    if opts.oracle {
        if !opts.invariants.contains(&Invariant::Ncc) {
            s.push("ncc");
        }
        s.push("oracle");
    }
    s
}

/// Everything besides the input that cached values depend on.
pub fn cache_context(limits: &Limits) -> String {
    format!(
        "max_order={} dense={} iso={} oracle={} nac={}",
        limits.max_order, limits.dense_table, limits.iso, limits.oracle, limits.nac
    )
}

fn fill(report: &mut GroupReport, file: &GroupSpecFile, canonical: &str, opts: &RunOptions) -> Result<bool> {
    let context = cache_context(&opts.limits);
    let mut group: Option<FiniteGroup> = None;
    let mut all_hit = true;
    for step in steps(opts) {
        let key = Cache::key(canonical, step, &context);
        let cached = opts.cache.as_ref().and_then(|c| c.get(&key, &report.hash, step));
        let entry = match cached {
            Some(e) => e,
            None => {
                all_hit = false;
                let g = match &group {
                    Some(g) => g,
                    None => group.insert(file.build(&opts.limits)?),
                };
                let start = Instant::now();
                let value = compute(step, g, &opts.limits)?;
                let entry = Entry {
                    input_hash: report.hash.clone(),
                    invariant: step.to_string(),
                    value,
                    micros: start.elapsed().as_micros() as u64,
                };
                if let Some(c) = &opts.cache {
                    c.put(&key, &entry)?;
                }
                entry
            }
        };
        apply(report, step, &entry)?;
    }
    if let (Some(o), Some(n)) = (report.oracle, &report.ncc) {
        if o != n.value {
            return Err(Error::Assertion(format!(
                "ncc {} disagrees with the exhaustive oracle {o}",
                n.value
            )));
        }
    }
    Ok(all_hit)
}

fn compute(step: &str, g: &FiniteGroup, limits: &Limits) -> Result<Value> {
    Ok(match step {
        "group" => json!({ "label": g.label(), "order": g.order() }),
        "ncc" => {
            let cert = ncc(g);
            cert.verify(&AutAction::inner(g))
                .map_err(|e| Error::Assertion(format!("ncc certificate: {e}")))?;
            json!(CoverReport::verified(&cert))
        }
        "nac" => match nac(g, limits) {
            Ok(cert) => {
                cert.verify(&AutAction::inner(g))
                    .map_err(|e| Error::Assertion(format!("nac certificate: {e}")))?;
                json!({ "cover": CoverReport::verified(&cert) })
            }
            Err(e @ ncc_core::Error::SizeCap { .. }) => json!({ "note": e.to_string() }),
            Err(e) => return Err(e.into()),
        },
        "peo" => json!(peo(g).into_iter().collect::<Vec<_>>()),
        "meo" => json!(meo(g).into_iter().collect::<Vec<_>>()),
        "d" => {
            let p = smallest_prime_factor(g.order());
            match p {
                Some(p) if is_prime_power(g.order(), p) => json!(d_min_generators(g, p as u64)?),
                _ => Value::Null,
            }
        }
        "classes" => json!(conjugacy_classes(g).len()),
        "oracle" => match ncc_oracle(g, limits) {
            Ok(v) => json!({ "value": v }),
            Err(e @ ncc_core::Error::SizeCap { .. }) => json!({ "note": e.to_string() }),
            Err(e) => return Err(e.into()),
        },
        _ => unreachable!("unknown step {step}"),
    })
}

fn corrupt(step: &str) -> Error {
    Error::Semantic(format!("cache entry for {step} is malformed"))
}

fn de<T: serde::de::DeserializeOwned>(step: &str, v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|_| corrupt(step))
}

fn apply(report: &mut GroupReport, step: &str, entry: &Entry) -> Result<()> {
    let v = &entry.value;
    match step {
        "group" => {
            report.label = Some(v["label"].as_str().ok_or_else(|| corrupt(step))?.to_string());
            report.order = Some(v["order"].as_u64().ok_or_else(|| corrupt(step))? as usize);
        }
        "ncc" => report.ncc = Some(de(step, v)?),
        "nac" => {
            if let Some(c) = v.get("cover") {
                report.nac = Some(de(step, c)?);
            } else {
                report.nac_note = Some(v["note"].as_str().ok_or_else(|| corrupt(step))?.to_string());
            }
        }
        "peo" => report.peo = Some(de(step, v)?),
        "meo" => report.meo = Some(de(step, v)?),
        "d" => report.d = de(step, v)?,
        "classes" => report.classes = Some(de(step, v)?),
        "oracle" => {
            if let Some(x) = v.get("value") {
                report.oracle = Some(de(step, x)?);
            } else {
                report.oracle_note = Some(v["note"].as_str().ok_or_else(|| corrupt(step))?.to_string());
            }
        }
        _ => unreachable!(),
    }
    if step != "group" {
        report.micros.insert(step.to_string(), entry.micros);
    }
    Ok(())
}

fn smallest_prime_factor(n: usize) -> Option<usize> {
    (2..=n).find(|d| n % d == 0)
}

fn is_prime_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}
