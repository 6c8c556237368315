//! Approval-based committee elections.
//!
//! Voters and candidates are 0-based here; the file formats in
//! [`crate::harness::format`] convert from and to 1-based indices.

use std::collections::BTreeMap;

use crate::committee::FractionalCommittee;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A validated election: `n` non-empty ballots over candidates `0..m` and a
/// committee size `1 <= k <= m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    m: usize,
    k: usize,
    ballots: Vec<Vec<usize>>,
    approvers: Vec<Vec<usize>>,
}

impl Instance {
    /// Validates and builds an instance. Ballots are sorted and deduplicated.
    pub fn new(m: usize, k: usize, ballots: Vec<Vec<usize>>) -> Result<Self> {
        if ballots.is_empty() {
            return Err(Error::NoVoters);
        }
        if k == 0 {
            return Err(Error::KZero);
        }
        if k > m {
            return Err(Error::KTooLarge { k, m });
        }
        let mut clean = Vec::with_capacity(ballots.len());
        for (i, mut ballot) in ballots.into_iter().enumerate() {
            if ballot.is_empty() {
                return Err(Error::EmptyBallot { voter: i + 1 });
            }
            if let Some(&c) = ballot.iter().find(|&&c| c >= m) {
                return Err(Error::CandidateOutOfRange {
                    voter: i + 1,
                    candidate: c + 1,
                    m,
                });
            }
            ballot.sort_unstable();
            ballot.dedup();
            clean.push(ballot);
        }
        let mut approvers = vec![Vec::new(); m];
        for (i, ballot) in clean.iter().enumerate() {
            for &c in ballot {
                approvers[c].push(i);
            }
        }
        Ok(Instance {
            m,
            k,
            ballots: clean,
            approvers,
        })
    }

    pub fn n(&self) -> usize {
        self.ballots.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted ballot `A_i`.
    pub fn ballot(&self, voter: usize) -> &[usize] {
        &self.ballots[voter]
    }

    pub fn ballots(&self) -> &[Vec<usize>] {
        &self.ballots
    }

    /// Sorted voters approving `candidate` (`N_c`).
    pub fn approvers(&self, candidate: usize) -> &[usize] {
        &self.approvers[candidate]
    }

    pub fn approves(&self, voter: usize, candidate: usize) -> bool {
        self.ballots[voter].binary_search(&candidate).is_ok()
    }

    /// The uniform initial budget `k / n`.
    pub fn fair_budget(&self) -> Rational {
        rational::ratio(self.k as i64, self.n() as i64)
    }

    /// `|A_i ∩ W|` for a sorted or unsorted candidate slice.
    pub fn overlap(&self, voter: usize, committee: &[usize]) -> usize {
        committee
            .iter()
            .filter(|&&c| self.approves(voter, c))
            .count()
    }

    /// Ballots as bitmasks; only meaningful for `m <= 64`.
    pub(crate) fn ballot_masks(&self) -> Vec<u64> {
        debug_assert!(self.m <= 64);
        self.ballots
            .iter()
            .map(|b| b.iter().fold(0u64, |acc, &c| acc | (1u64 << c)))
            .collect()
    }
}

/// `u_i(p) = Σ_{c ∈ A_i} p_c`.
pub fn utility(inst: &Instance, voter: usize, p: &FractionalCommittee) -> Result<Rational> {
    if voter >= inst.n() {
        return Err(Error::VoterOutOfRange {
            voter: voter + 1,
            n: inst.n(),
        });
    }
    Ok(rational::sum(inst.ballot(voter).iter().map(|&c| p.get(c))))
}

/// Partitions `voters` into maximal groups with identical ballots, ordered by
/// smallest member. Members within a group are ascending.
pub fn unanimous_partition(voters: &[usize], inst: &Instance) -> Vec<Vec<usize>> {
    let mut by_ballot: BTreeMap<&[usize], Vec<usize>> = BTreeMap::new();
    for &i in voters {
        by_ballot.entry(inst.ballot(i)).or_default().push(i);
    }
    let mut groups: Vec<Vec<usize>> = by_ballot
        .into_values()
        .map(|mut g| {
            g.sort_unstable();
            g.dedup();
            g
        })
        .collect();
    groups.sort_by_key(|g| g[0]);
    groups
}
