//! Systematic rounding of a fractional committee into an explicit lottery.
//!
//! Candidates are ordered by ascending fractional part (ties by index) and laid
//! out as consecutive half-open intervals of length `p_c` on `[0, k)`. For an
//! offset `u ∈ [0, 1)`, the committee is every candidate whose interval holds
//! one of `u, u+1, ..., u+k-1`. Since `p_c ≤ 1` no interval holds two points,
//! so each committee has exactly `k` members, and candidate `c` is hit for a
//! set of offsets of total length `p_c`.
//!
//! The committee only changes where `u` crosses the fractional part of a
//! cumulative sum, so the lottery has at most `m` cells.

use num_traits::{One, Zero};

use crate::committee::{Committee, FractionalCommittee, RandomizedCommittee};
use crate::error::{Error, Result};
use crate::rational::Rational;

fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// Whether the half-open interval `[start, end)` contains some `u + j`, `j ∈ ℤ`.
fn hits(start: &Rational, end: &Rational, u: &Rational) -> bool {
    if start >= end {
        return false;
    }
    let first = (start - u).ceil() + u;
    first < *end
}

pub fn decompose(p: &FractionalCommittee) -> Result<RandomizedCommittee> {
    // re-validate so hand-built inputs get a clear error
    let p = FractionalCommittee::new(p.values().to_vec(), p.k())
        .map_err(|e| Error::InvalidFractional(e.to_string()))?;
    let m = p.m();
    let k = p.k();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| frac(p.get(a)).cmp(&frac(p.get(b))).then(a.cmp(&b)));

    let mut intervals = Vec::with_capacity(m);
    let mut cursor = Rational::zero();
    for &c in &order {
        let end = &cursor + p.get(c);
        intervals.push((c, cursor.clone(), end.clone()));
        cursor = end;
    }

    let mut cuts: Vec<Rational> = intervals.iter().map(|(_, s, _)| frac(s)).collect();
    cuts.sort();
    cuts.dedup();
    debug_assert!(cuts.first().is_some_and(Zero::is_zero));

    let mut entries = Vec::with_capacity(cuts.len());
    for (idx, u) in cuts.iter().enumerate() {
        let next = cuts.get(idx + 1).cloned().unwrap_or_else(Rational::one);
        let weight = next - u;
        let w: Committee = intervals
            .iter()
            .filter(|(_, s, e)| hits(s, e, u))
            .map(|(c, _, _)| *c)
            .collect();
        if w.len() != k {
            return Err(Error::Invariant(format!(
                "rounding cell produced {} members, expected {k}",
                w.len()
            )));
        }
        entries.push((weight, w));
    }
    RandomizedCommittee::merged(entries, m, k)
}
