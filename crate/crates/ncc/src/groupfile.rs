//! Text formats for group definitions.
//!
//! ```text
//! perm 5            table 3           construct dihedral 8
//! (0 1 2 3 4)       0 1 2             quat:p=5,k=3,variant=PGL1,i=1
//! (2 3 4)           1 2 0
//!                   2 0 1
//! ```
//!
//! Points are zero-based, fixed points are omitted and `()` is the identity.
//! Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::str::FromStr;

use ncc_core::group::{from_generators_labeled, Permutation};
use ncc_core::padic::{build_quotient, QuotientGroupSpec};
use ncc_core::pgroup::Construct;
use ncc_core::{FiniteGroup, Limits};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpecFile {
    Perm { degree: usize, gens: Vec<Permutation> },
    Table { n: usize, rows: Vec<Vec<u32>> },
    Construct(Construct),
    Quat(QuotientGroupSpec),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn parse_cycles(line: usize, text: &str, degree: usize) -> Result<Permutation> {
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut current: Option<Vec<u32>> = None;
    let mut number: Option<(usize, u64)> = None;
    let mut seen = vec![None; degree];

    let mut finish_number = |current: &mut Option<Vec<u32>>, number: &mut Option<(usize, u64)>| -> Result<()> {
        if let Some((col, x)) = number.take() {
            if x as usize >= degree {
                return Err(Error::Semantic(format!(
                    "line {line}, column {col}: point {x} is outside 0..{degree}"
                )));
            }
            if let Some(prev) = seen[x as usize] {
                return Err(Error::Semantic(format!(
                    "line {line}, column {col}: point {x} already moved at column {prev}, not a permutation"
                )));
            }
            seen[x as usize] = Some(col);
            current.as_mut().expect("numbers only inside cycles").push(x as u32);
        }
        Ok(())
    };

    for (i, ch) in text.char_indices() {
        let col = text[..i].chars().count() + 1;
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(syntax(line, col, "nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                finish_number(&mut current, &mut number)?;
                let c = current.take().ok_or_else(|| syntax(line, col, "')' without '('"))?;
                if !c.is_empty() {
                    cycles.push(c);
                }
            }
            '0'..='9' => {
                if current.is_none() {
                    return Err(syntax(line, col, "point outside a cycle"));
                }
                let digit = u64::from(ch as u8 - b'0');
                number = Some(match number {
                    Some((start, x)) => (
                        start,
                        x.checked_mul(10)
                            .and_then(|x| x.checked_add(digit))
                            .ok_or_else(|| syntax(line, start, "point too large"))?,
                    ),
                    None => (col, digit),
                });
            }
            ' ' | '\t' | ',' => finish_number(&mut current, &mut number)?,
            _ => return Err(syntax(line, col, format!("unexpected {ch:?}"))),
        }
    }
    if current.is_some() {
        return Err(syntax(line, text.chars().count() + 1, "unclosed '('"));
    }
    Permutation::from_cycles(degree, &cycles)
        .ok_or_else(|| Error::Semantic(format!("line {line}: not a permutation of 0..{degree}")))
}

fn parse_header_number(line: usize, rest: &str, offset: usize, what: &str) -> Result<usize> {
    let rest_trim = rest.trim();
    rest_trim.parse::<usize>().map_err(|_| {
        let col = offset + rest.len() - rest.trim_start().len() + 1;
        syntax(line, col, format!("expected {what}, found {rest_trim:?}"))
    })
}

impl FromStr for GroupSpecFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (first_no, first) = lines.next().ok_or_else(|| syntax(1, 1, "empty group file"))?;
        let head = first.trim_start();
        let indent = first.len() - head.len();

        if let Some(rest) = head.strip_prefix("quat:") {
            if let Some((no, _)) = lines.next() {
                return Err(syntax(no, 1, "trailing content after quat spec"));
            }
            let spec: QuotientGroupSpec = head.parse().map_err(|e| {
                syntax(first_no, indent + 6, format!("bad quotient spec {rest:?}: {e}"))
            })?;
            return Ok(Self::Quat(spec));
        }
        let (word, rest) = head.split_once(char::is_whitespace).unwrap_or((head, ""));
        // column just before `rest`
        let rest_offset = indent + word.len() + usize::from(head.len() > word.len());
        match word {
            "construct" => {
                if let Some((no, _)) = lines.next() {
                    return Err(syntax(no, 1, "trailing content after constructor"));
                }
                let c: Construct = rest
                    .trim()
                    .parse()
                    .map_err(|e| syntax(first_no, rest_offset + 1, format!("{e}")))?;
                Ok(Self::Construct(c))
            }
            "perm" => {
                let degree = parse_header_number(first_no, rest, rest_offset, "a degree")?;
                let gens = lines
                    .map(|(no, l)| parse_cycles(no, l, degree))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Self::Perm { degree, gens })
            }
            "table" => {
                let n = parse_header_number(first_no, rest, rest_offset, "an order")?;
                let mut rows = Vec::with_capacity(n);
                let mut last_line = first_no;
                for (no, l) in lines {
                    last_line = no;
                    if rows.len() == n {
                        return Err(syntax(no, 1, format!("more than {n} rows")));
                    }
                    let mut row = Vec::with_capacity(n);
                    let mut col = 1;
                    for word in l.split(char::is_whitespace) {
                        if !word.is_empty() {
                            let x: u32 = word
                                .parse()
                                .map_err(|_| syntax(no, col, format!("expected an element index, found {word:?}")))?;
                            row.push(x);
                        }
                        col += word.chars().count() + 1;
                    }
                    if row.len() != n {
                        return Err(syntax(no, 1, format!("row has {} entries, expected {n}", row.len())));
                    }
                    let mut seen = vec![false; n];
                    for (j, &x) in row.iter().enumerate() {
                        if x as usize >= n {
                            return Err(Error::Semantic(format!(
                                "line {no}: entry {j} is {x}, outside 0..{n}"
                            )));
                        }
                        if std::mem::replace(&mut seen[x as usize], true) {
                            return Err(Error::Semantic(format!(
                                "line {no}: {x} repeats in row {}, not a group table",
                                rows.len()
                            )));
                        }
                    }
                    rows.push(row);
                }
                if rows.len() != n {
                    return Err(syntax(last_line + 1, 1, format!("{} rows, expected {n}", rows.len())));
                }
                Ok(Self::Table { n, rows })
            }
            _ => Err(syntax(
                first_no,
                indent + 1,
                format!("unknown format {word:?}; expected perm, table, construct or quat:"),
            )),
        }
    }
}

/// The canonical text of a definition.
impl fmt::Display for GroupSpecFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Perm { degree, gens } => {
                writeln!(f, "perm {degree}")?;
                for g in gens {
                    writeln!(f, "{g}")?;
                }
                Ok(())
            }
            Self::Table { n, rows } => {
                writeln!(f, "table {n}")?;
                for row in rows {
                    let words: Vec<String> = row.iter().map(u32::to_string).collect();
                    writeln!(f, "{}", words.join(" "))?;
                }
                Ok(())
            }
            Self::Construct(c) => writeln!(f, "construct {c}"),
            Self::Quat(spec) => writeln!(f, "{spec}"),
        }
    }
}

impl GroupSpecFile {
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// One-line description used as the group label.
    pub fn label(&self) -> String {
        match self {
            Self::Perm { degree, gens } => {
                let gens: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                format!("perm {degree}: {}", gens.join(" "))
            }
            Self::Table { n, .. } => format!("table {n}"),
            Self::Construct(c) => c.to_string(),
            Self::Quat(spec) => spec.to_string(),
        }
    }

    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        Ok(match self {
            Self::Perm { degree, gens } => {
                from_generators_labeled(*degree, gens, self.label(), limits)?.0
            }
            Self::Table { n, rows } => {
                let flat: Vec<u32> = rows.iter().flatten().copied().collect();
                FiniteGroup::from_table(*n, &flat, self.label(), limits)?.0
            }
            Self::Construct(c) => c.build(limits)?,
            Self::Quat(spec) => build_quotient(spec, limits)?.group,
        })
    }
}
