use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ncc_core::invariants::CoverCertificate;
use ncc_core::Elem;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    Ncc,
    Nac,
    Peo,
    Meo,
    D,
    Classes,
}

impl Invariant {
    pub const ALL: [Invariant; 6] = [Self::Ncc, Self::Nac, Self::Peo, Self::Meo, Self::D, Self::Classes];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ncc => "ncc",
            Self::Nac => "nac",
            Self::Peo => "peo",
            Self::Meo => "meo",
            Self::D => "d",
            Self::Classes => "classes",
        }
    }

    /// Parses a comma-separated list, keeping the canonical order and
    /// dropping repeats.
    pub fn parse_list(s: &str) -> Result<Vec<Invariant>> {
        let mut out: Vec<Invariant> = s
            .split(',')
            .map(str::trim)
            .filter(|w| !w.is_empty())
            .map(str::parse)
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::Semantic("no invariants requested".into()));
        }
        Ok(out)
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Semantic(format!("unknown invariant {s:?}; expected ncc, nac, peo, meo, d or classes")))
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A covering number with generators of one witness subgroup per chosen
/// class. Only verified certificates are turned into reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverReport {
    pub value: usize,
    pub orbits: usize,
    pub witnesses: Vec<Vec<Elem>>,
    pub verified: bool,
}

impl CoverReport {
    pub fn verified(cert: &CoverCertificate) -> Self {
        Self {
            value: cert.value,
            orbits: cert.orbit_count,
            witnesses: cert.witnesses.iter().map(|w| w.generators()).collect(),
            verified: true,
        }
    }
}

/// Everything computed for one input. Serialized as one JSON line with the
/// keys in field order; absent values are `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub input: String,
    pub hash: String,
    pub label: Option<String>,
    pub order: Option<usize>,
    pub ncc: Option<CoverReport>,
    pub nac: Option<CoverReport>,
    pub nac_note: Option<String>,
    pub peo: Option<Vec<u32>>,
    pub meo: Option<Vec<u32>>,
    pub d: Option<u32>,
    pub classes: Option<usize>,
    pub oracle: Option<usize>,
    pub oracle_note: Option<String>,
    /// Wall time per invariant in microseconds, as first computed.
    pub micros: BTreeMap<String, u64>,
    pub error: Option<String>,
}

impl GroupReport {
    pub fn empty(input: impl Into<String>, hash: impl Into<String>) -> Self {
        Self {
            input: input.into(),
            hash: hash.into(),
            label: None,
            order: None,
            ncc: None,
            nac: None,
            nac_note: None,
            peo: None,
            meo: None,
            d: None,
            classes: None,
            oracle: None,
            oracle_note: None,
            micros: BTreeMap::new(),
            error: None,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn to_text_line(&self) -> String {
        let mut s = self.input.clone();
        if let Some(e) = &self.error {
            s.push_str(&format!("  error: {e}"));
            return s;
        }
        let set = |v: &Option<Vec<u32>>| {
            v.as_ref().map(|v| {
                let items: Vec<String> = v.iter().map(u32::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
        };
        let mut field = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                s.push_str(&format!("  {k}={v}"));
            }
        };
        field("order", self.order.map(|o| o.to_string()));
        field("ncc", self.ncc.as_ref().map(|c| c.value.to_string()));
        field("nac", self.nac.as_ref().map(|c| c.value.to_string()));
        field("nac", self.nac_note.as_ref().map(|n| format!("skipped ({n})")));
        field("peo", set(&self.peo));
        field("meo", set(&self.meo));
        field("d", self.d.map(|d| d.to_string()));
        field("classes", self.classes.map(|c| c.to_string()));
        field("oracle", self.oracle.map(|o| o.to_string()));
        s
    }
}
