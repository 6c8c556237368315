//! Greedy Cohesive Rule.
//!
//! A group `N'` is weakly `(β, T)`-cohesive when `|N'| ≥ |T|·n/k` and every
//! member approves at least `β` candidates of `T`. Each step picks, among
//! active voters and unused candidates, the group maximising `β`, then
//! minimising `|T|`, then maximising `|N'|`; remaining ties go to the
//! lexicographically smallest `T`. The chosen `T` joins the committee and
//! `N'` becomes inactive.
//!
//! The search is exhaustive over candidate subsets and exponential in `m`.

use itertools::Itertools;
use log::warn;

use crate::committee::Committee;
use crate::error::Result;
use crate::instance::Instance;
use crate::limits::{Limits, GCR_SOFT_LIMIT_M, HARD_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcrStep {
    /// `N_j`, ascending.
    pub voters: Vec<usize>,
    /// `T_j`.
    pub candidates: Committee,
    /// `β_j`.
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GcrTrace {
    pub steps: Vec<GcrStep>,
    pub w_gcr: Committee,
    /// Inactive voters, ascending.
    pub n_gcr: Vec<usize>,
}

impl GcrTrace {
    /// Voters never inactivated.
    pub fn active_voters(&self, n: usize) -> Vec<usize> {
        (0..n)
            .filter(|i| self.n_gcr.binary_search(i).is_err())
            .collect()
    }
}

/// The best weakly cohesive group among `active` voters using candidates from
/// `available`, or `None` if there is none.
pub fn find_best_weakly_cohesive(
    active: &[usize],
    available: &Committee,
    inst: &Instance,
) -> Option<GcrStep> {
    if active.is_empty() {
        return None;
    }
    let masks = inst.ballot_masks();
    let n = inst.n();
    let k = inst.k();

    // A candidate nobody active approves never helps: dropping it from T keeps
    // N' and shrinks |T|.
    let relevant: Vec<usize> = available
        .members()
        .iter()
        .copied()
        .filter(|&c| active.iter().any(|&i| inst.approves(i, c)))
        .collect();
    let relevant_mask = relevant.iter().fold(0u64, |acc, &c| acc | (1 << c));
    let max_beta = active
        .iter()
        .map(|&i| (masks[i] & relevant_mask).count_ones() as usize)
        .max()
        .unwrap_or(0)
        .min(k);

    for beta in (1..=max_beta).rev() {
        for size in beta..=k.min(relevant.len()) {
            let mut best: Option<(u64, Vec<usize>)> = None;
            for combo in relevant.iter().copied().combinations(size) {
                let t_mask = combo.iter().fold(0u64, |acc, &c| acc | (1 << c));
                let group: Vec<usize> = active
                    .iter()
                    .copied()
                    .filter(|&i| (masks[i] & t_mask).count_ones() as usize >= beta)
                    .collect();
                // |N'| ≥ |T|·n/k, compared exactly as integers
                if group.len() * k < size * n {
                    continue;
                }
                if best.as_ref().is_none_or(|(_, g)| group.len() > g.len()) {
                    best = Some((t_mask, group));
                }
            }
            if let Some((t_mask, voters)) = best {
                let candidates = (0..inst.m()).filter(|&c| t_mask & (1 << c) != 0).collect();
                return Some(GcrStep {
                    voters,
                    candidates,
                    beta,
                });
            }
        }
    }
    None
}

pub fn run_gcr(inst: &Instance) -> Result<GcrTrace> {
    Limits {
        max_n: usize::MAX,
        max_m: HARD_CAP,
    }
    .check_m(inst.m())?;
    if inst.m() > GCR_SOFT_LIMIT_M {
        warn!(
            "GCR enumerates candidate subsets; m = {} is above the documented limit of {}",
            inst.m(),
            GCR_SOFT_LIMIT_M
        );
    }

    let mut active: Vec<usize> = (0..inst.n()).collect();
    let mut available: Committee = (0..inst.m()).collect();
    let mut steps = Vec::new();
    while let Some(step) = find_best_weakly_cohesive(&active, &available, inst) {
        active.retain(|i| step.voters.binary_search(i).is_err());
        available = available
            .members()
            .iter()
            .copied()
            .filter(|&c| !step.candidates.contains(c))
            .collect();
        steps.push(step);
    }

    let w_gcr = steps
        .iter()
        .fold(Committee::default(), |acc, s| acc.union(&s.candidates));
    let mut n_gcr: Vec<usize> = steps
        .iter()
        .flat_map(|s| s.voters.iter().copied())
        .collect();
    n_gcr.sort_unstable();
    Ok(GcrTrace {
        steps,
        w_gcr,
        n_gcr,
    })
}
