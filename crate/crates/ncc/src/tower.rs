//! `ncc` along a tower of congruence quotients `k = kmin..=kmax`.

use std::fmt::Write;
use std::str::FromStr;
use std::time::Instant;

use ncc_core::invariants::ncc;
use ncc_core::padic::{build_quotient, line_subgroups, QuotientGroupSpec, Variant};
use ncc_core::Limits;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerRequest {
    pub p: u64,
    pub variant: Variant,
    pub i: u32,
    pub kmin: u32,
    pub kmax: u32,
    /// Also follow each index-`p` subgroup labeled by a line.
    pub subgroups: bool,
}

/// `p,variant,i,kmin,kmax`, e.g. `5,PGL1,1,2,5`.
impl FromStr for TowerRequest {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::Semantic(format!("tower expects p,variant,i,kmin,kmax, got {s:?}"));
        let [p, variant, i, kmin, kmax] = parts.as_slice() else {
            return Err(bad());
        };
        let num = |w: &str| w.parse::<u64>().map_err(|_| bad());
        let req = Self {
            p: num(p)?,
            variant: variant.parse()?,
            i: num(i)? as u32,
            kmin: num(kmin)? as u32,
            kmax: num(kmax)? as u32,
            subgroups: false,
        };
        if req.kmin > req.kmax {
            return Err(Error::Semantic(format!("empty level range {}..={}", req.kmin, req.kmax)));
        }
        Ok(req)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerRow {
    pub k: u32,
    pub order: Option<usize>,
    pub ncc: Option<usize>,
    /// `ncc` of each line subgroup, in the order of [`TowerReport::lines`].
    pub subgroup_ncc: Vec<usize>,
    pub micros: u64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubgroupColumn {
    pub line: String,
    pub values: Vec<Option<usize>>,
    pub max: Option<usize>,
    pub terminal: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub quotient: String,
    pub rows: Vec<TowerRow>,
    /// Over consecutive computed rows.
    pub nondecreasing: bool,
    pub strictly_increasing: bool,
    pub max_ncc: Option<usize>,
    /// First level at which `max_ncc` is reached.
    pub first_max_level: Option<u32>,
    /// First level from which the value stays constant to the end, when at
    /// least two levels share it.
    pub stable_from: Option<u32>,
    pub lines: Vec<SubgroupColumn>,
}

fn row(req: &TowerRequest, k: u32, limits: &Limits) -> (TowerRow, Vec<String>) {
    let start = Instant::now();
    let mut out = TowerRow {
        k,
        order: None,
        ncc: None,
        subgroup_ncc: Vec::new(),
        micros: 0,
        error: None,
    };
    let mut labels = Vec::new();
    let result = (|| -> Result<()> {
        let spec = QuotientGroupSpec::new(req.p, k, req.variant, req.i)?;
        let q = build_quotient(&spec, limits)?;
        out.order = Some(q.group.order());
        out.ncc = Some(ncc(&q.group).value);
        if req.subgroups {
            for line in line_subgroups(&q)? {
                let (h, _) = line.subgroup.to_group(line.label(), limits)?;
                labels.push(line.label());
                out.subgroup_ncc.push(ncc(&h).value);
            }
        }
        Ok(())
    })();
    if let Err(e) = result {
        out.error = Some(e.to_string());
    }
    out.micros = start.elapsed().as_micros() as u64;
    (out, labels)
}

pub fn tower(req: &TowerRequest, limits: &Limits) -> TowerReport {
    let results: Vec<(TowerRow, Vec<String>)> = (req.kmin..=req.kmax)
        .into_par_iter()
        .map(|k| row(req, k, limits))
        .collect();
    let labels = results
        .iter()
        .find(|(_, l)| !l.is_empty())
        .map(|(_, l)| l.clone())
        .unwrap_or_default();
    let rows: Vec<TowerRow> = results.into_iter().map(|(r, _)| r).collect();

    let values: Vec<(u32, usize)> = rows.iter().filter_map(|r| r.ncc.map(|v| (r.k, v))).collect();
    let pairs = || values.windows(2).filter(|w| w[1].0 == w[0].0 + 1);
    let nondecreasing = pairs().all(|w| w[1].1 >= w[0].1);
    let strictly_increasing = pairs().all(|w| w[1].1 > w[0].1);
    let max_ncc = values.iter().map(|&(_, v)| v).max();
    let first_max_level = max_ncc.and_then(|m| values.iter().find(|&&(_, v)| v == m).map(|&(k, _)| k));
    let stable_from = values.last().and_then(|&(_, last)| {
        let run = values.iter().rev().take_while(|&&(_, v)| v == last).count();
        (run >= 2).then(|| values[values.len() - run].0)
    });

    let lines = labels
        .iter()
        .enumerate()
        .map(|(j, line)| {
            let col: Vec<Option<usize>> = rows.iter().map(|r| r.subgroup_ncc.get(j).copied()).collect();
            SubgroupColumn {
                line: line.clone(),
                max: col.iter().flatten().copied().max(),
                terminal: col.last().copied().flatten(),
                values: col,
            }
        })
        .collect();

    TowerReport {
        quotient: format!("quat:p={},variant={},i={}", req.p, req.variant.name(), req.i),
        rows,
        nondecreasing,
        strictly_increasing,
        max_ncc,
        first_max_level,
        stable_from,
        lines,
    }
}

impl TowerReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tower reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tower {}", self.quotient);
        let _ = write!(s, "{:>3} {:>8} {:>5}", "k", "order", "ncc");
        for (j, _) in self.lines.iter().enumerate() {
            let _ = write!(s, " {:>5}", format!("H{j}"));
        }
        s.push('\n');
        let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        for r in &self.rows {
            let _ = write!(s, "{:>3} {:>8} {:>5}", r.k, show(r.order), show(r.ncc));
            for j in 0..self.lines.len() {
                let _ = write!(s, " {:>5}", show(r.subgroup_ncc.get(j).copied()));
            }
            if let Some(e) = &r.error {
                let _ = write!(s, "  error: {e}");
            }
            s.push('\n');
        }
        for (j, c) in self.lines.iter().enumerate() {
            let _ = writeln!(s, "H{j}: {}", c.line);
        }
        let _ = writeln!(
            s,
            "nondecreasing={} strictly_increasing={} max={} first_max_level={} stable_from={}",
            self.nondecreasing,
            self.strictly_increasing,
            show(self.max_ncc),
            self.first_max_level.map_or("-".into(), |k| k.to_string()),
            self.stable_from.map_or("-".into(), |k| k.to_string()),
        );
        s
    }
}
