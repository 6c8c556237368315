//! Integral, fractional and randomized committees.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A set of candidates, stored sorted and without duplicates.
///
/// No size is enforced here: MES and GCR legitimately return committees
/// smaller than `k`. [`RandomizedCommittee`] enforces `|W| = k` on its support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Committee(Vec<usize>);

impl Committee {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        Committee(members)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, candidate: usize) -> bool {
        self.0.binary_search(&candidate).is_ok()
    }

    pub fn union(&self, other: &Committee) -> Committee {
        Committee::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }

    pub fn is_superset_of(&self, other: &Committee) -> bool {
        other.0.iter().all(|&c| self.contains(c))
    }

    fn check_range(&self, m: usize) -> Result<()> {
        match self.0.last() {
            Some(&c) if c >= m => Err(Error::InvalidCommittee(format!(
                "candidate {} outside 1..={m}",
                c + 1
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<usize> for Committee {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Committee::new(iter.into_iter().collect())
    }
}

/// Per-candidate selection probabilities in `[0, 1]` summing exactly to `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalCommittee {
    p: Vec<Rational>,
    k: usize,
}

impl FractionalCommittee {
    pub fn new(p: Vec<Rational>, k: usize) -> Result<Self> {
        for (c, v) in p.iter().enumerate() {
            if !rational::is_nonnegative(v) || *v > Rational::one() {
                return Err(Error::InvalidFractional(format!(
                    "p of candidate {} is {}, outside [0, 1]",
                    c + 1,
                    rational::format(v)
                )));
            }
        }
        let total = rational::sum(&p);
        if total != rational::from_usize(k) {
            return Err(Error::InvalidFractional(format!(
                "probabilities sum to {}, expected {k}",
                rational::format(&total)
            )));
        }
        Ok(FractionalCommittee { p, k })
    }

    /// `1_W` over `m` candidates.
    pub fn indicator(members: &[usize], m: usize) -> Self {
        let mut p = vec![Rational::zero(); m];
        let mut k = 0;
        for &c in members {
            if p[c].is_zero() {
                p[c] = Rational::one();
                k += 1;
            }
        }
        FractionalCommittee { p, k }
    }

    pub fn get(&self, candidate: usize) -> &Rational {
        &self.p[candidate]
    }

    pub fn values(&self) -> &[Rational] {
        &self.p
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    /// Candidates with `p_c = 1`.
    pub fn integral_part(&self) -> Committee {
        self.p
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_one())
            .map(|(c, _)| c)
            .collect()
    }
}

/// An explicit lottery over size-`k` committees, kept sorted by committee.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomizedCommittee {
    entries: Vec<(Rational, Committee)>,
    m: usize,
    k: usize,
}

impl RandomizedCommittee {
    /// Validates a lottery: positive weights summing to one, every committee of
    /// size `k` within `0..m`, no committee repeated.
    pub fn new(entries: Vec<(Rational, Committee)>, m: usize, k: usize) -> Result<Self> {
        let mut entries = entries;
        entries.sort_by(|a, b| a.1.cmp(&b.1));
        for pair in entries.windows(2) {
            if pair[0].1 == pair[1].1 {
                return Err(Error::InvalidLottery(format!(
                    "committee {:?} appears twice",
                    one_based(&pair[0].1)
                )));
            }
        }
        for (lambda, w) in &entries {
            if *lambda <= Rational::zero() {
                return Err(Error::InvalidLottery(format!(
                    "non-positive weight {}",
                    rational::format(lambda)
                )));
            }
            if w.len() != k {
                return Err(Error::InvalidLottery(format!(
                    "committee {:?} has size {}, expected {k}",
                    one_based(w),
                    w.len()
                )));
            }
            w.check_range(m)
                .map_err(|e| Error::InvalidLottery(e.to_string()))?;
        }
        let total = rational::sum(entries.iter().map(|(l, _)| l));
        if !total.is_one() {
            return Err(Error::InvalidLottery(format!(
                "weights sum to {}",
                rational::format(&total)
            )));
        }
        Ok(RandomizedCommittee { entries, m, k })
    }

    /// Like [`RandomizedCommittee::new`], but first merges repeated committees
    /// and drops zero weights.
    pub fn merged(
        entries: impl IntoIterator<Item = (Rational, Committee)>,
        m: usize,
        k: usize,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Committee, Rational> = BTreeMap::new();
        for (lambda, w) in entries {
            *acc.entry(w).or_insert_with(Rational::zero) += lambda;
        }
        let entries = acc
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(w, l)| (l, w))
            .collect();
        Self::new(entries, m, k)
    }

    /// The degenerate lottery `{(1, W)}`.
    pub fn certain(w: Committee, m: usize) -> Result<Self> {
        let k = w.len();
        Self::new(vec![(Rational::one(), w)], m, k)
    }

    pub fn entries(&self) -> &[(Rational, Committee)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = &Committee> {
        self.entries.iter().map(|(_, w)| w)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// The fractional committee implemented by a lottery: `p = Σ_j λ_j 1_{W_j}`.
pub fn marginals(lottery: &RandomizedCommittee) -> FractionalCommittee {
    let mut p = vec![Rational::zero(); lottery.m];
    for (lambda, w) in &lottery.entries {
        for &c in w.members() {
            p[c] += lambda;
        }
    }
    FractionalCommittee { p, k: lottery.k }
}

pub(crate) fn one_based(w: &Committee) -> Vec<usize> {
    w.members().iter().map(|c| c + 1).collect()
}
