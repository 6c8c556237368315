//! Instance files.
//!
//! The canonical form is a JSON document with `n`, `m`, `k` and `ballots`
//! (1-based candidate lists), one ballot per line:
//!
//! ```text
//! {
//!   "n": 3,
//!   "m": 4,
//!   "k": 2,
//!   "ballots": [
//!     [1, 2],
//!     [1, 3],
//!     [4]
//!   ]
//! }
//! ```
//!
//! Any JSON layout is accepted on input; [`write_instance`] always produces
//! the form above, so canonical files survive a parse/write cycle unchanged.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::instance::Instance;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    n: usize,
    m: usize,
    k: usize,
    ballots: Vec<Vec<usize>>,
}

fn from_one_based(m: usize, k: usize, ballots: Vec<Vec<usize>>) -> Result<Instance> {
    let mut zero_based = Vec::with_capacity(ballots.len());
    for (i, ballot) in ballots.into_iter().enumerate() {
        if ballot.contains(&0) {
            return Err(Error::CandidateOutOfRange {
                voter: i + 1,
                candidate: 0,
                m,
            });
        }
        zero_based.push(ballot.into_iter().map(|c| c - 1).collect());
    }
    Instance::new(m, k, zero_based)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("instance: {e}")))?;
    if raw.ballots.len() != raw.n {
        return Err(Error::BallotCountMismatch {
            n: raw.n,
            ballots: raw.ballots.len(),
        });
    }
    from_one_based(raw.m, raw.k, raw.ballots)
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\n  \"n\": {},\n  \"m\": {},\n  \"k\": {},\n  \"ballots\": [\n",
        inst.n(),
        inst.m(),
        inst.k()
    );
    for (i, ballot) in inst.ballots().iter().enumerate() {
        let items: Vec<String> = ballot.iter().map(|c| (c + 1).to_string()).collect();
        let sep = if i + 1 < inst.n() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", items.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Reads the plain approval-profile format: one ballot per line as
/// whitespace-separated 1-based candidate indices. Blank lines and lines
/// starting with `#` are skipped. `m` defaults to the largest index seen.
pub fn parse_approval_lines(text: &str, k: usize, m: Option<usize>) -> Result<Instance> {
    let mut ballots = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let ballot = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| {
                    Error::Parse(format!("line {}: bad candidate index {tok:?}", line_no + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        ballots.push(ballot);
    }
    let m = m.unwrap_or_else(|| ballots.iter().flatten().copied().max().unwrap_or(0));
    from_one_based(m, k, ballots)
}
