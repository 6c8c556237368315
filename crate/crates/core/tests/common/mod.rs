//! Independent reference implementations used by the integration suites.
//! They follow the definitions literally and share no code with the crate
//! beyond its data types.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use bwcv::bw_gcr::BwGcrOutput;
use bwcv::gcr::GcrTrace;
use bwcv::ledger::PaymentLedger;
use bwcv::rational::{from_usize, ratio};
use bwcv::{Committee, FractionalCommittee, Instance, RandomizedCommittee, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 1-based ballots to an instance.
pub fn instance(m: usize, k: usize, ballots: &[&[usize]]) -> Instance {
    let ballots = ballots
        .iter()
        .map(|b| b.iter().map(|c| c - 1).collect())
        .collect();
    Instance::new(m, k, ballots).unwrap()
}

pub fn committee(one_based: &[usize]) -> Committee {
    Committee::new(one_based.iter().map(|c| c - 1).collect())
}

pub fn fractional(p: &[(i64, i64)], k: usize) -> FractionalCommittee {
    FractionalCommittee::new(p.iter().map(|&(a, b)| ratio(a, b)).collect(), k).unwrap()
}

fn ballot_set(inst: &Instance, i: usize) -> BTreeSet<usize> {
    inst.ballot(i).iter().copied().collect()
}

fn overlap(inst: &Instance, i: usize, w: &Committee) -> usize {
    inst.ballot(i).iter().filter(|c| w.contains(**c)).count()
}

fn voter_subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1u32..(1 << n)).map(move |s| (0..n).filter(|i| s & (1 << i) != 0).collect())
}

fn common(inst: &Instance, group: &[usize]) -> BTreeSet<usize> {
    let mut it = group.iter();
    let first = ballot_set(inst, *it.next().unwrap());
    it.fold(first, |acc, &i| {
        acc.intersection(&ballot_set(inst, i)).copied().collect()
    })
}

/// JR, literally: no group of size ≥ n/k with a common candidate is left
/// entirely unrepresented.
pub fn literal_jr(w: &Committee, inst: &Instance) -> bool {
    voter_subsets(inst.n()).all(|s| {
        !(s.len() * inst.k() >= inst.n()
            && !common(inst, &s).is_empty()
            && s.iter().all(|&i| overlap(inst, i, w) == 0))
    })
}

/// EJR, literally: every ℓ-cohesive group has a member with ≥ ℓ approved.
pub fn literal_ejr(w: &Committee, inst: &Instance) -> bool {
    voter_subsets(inst.n()).all(|s| {
        let shared = common(inst, &s).len();
        (1..=inst.k()).all(|l| {
            let cohesive = s.len() * inst.k() >= l * inst.n() && shared >= l;
            !cohesive || s.iter().any(|&i| overlap(inst, i, w) >= l)
        })
    })
}

/// FJR, literally: for every weakly (β, T)-cohesive group some member has
/// at least β approved committee members.
pub fn literal_fjr(w: &Committee, inst: &Instance) -> bool {
    let m = inst.m();
    voter_subsets(inst.n()).all(|s| {
        (1u32..(1 << m)).all(|t| {
            let t_set: BTreeSet<usize> = (0..m).filter(|c| t & (1 << c) != 0).collect();
            if t_set.len() > inst.k() || s.len() * inst.k() < t_set.len() * inst.n() {
                return true;
            }
            (1..=t_set.len()).all(|beta| {
                let weakly_cohesive = s
                    .iter()
                    .all(|&i| ballot_set(inst, i).intersection(&t_set).count() >= beta);
                !weakly_cohesive || s.iter().any(|&i| overlap(inst, i, w) >= beta)
            })
        })
    })
}

/// Σ over the lottery, computed entry by entry.
pub fn marginals_oracle(x: &RandomizedCommittee, m: usize) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); m];
    for (l, w) in x.entries() {
        for (c, pc) in p.iter_mut().enumerate() {
            if w.contains(c) {
                *pc += l;
            }
        }
    }
    p
}

/// Lottery invariants: weights positive and summing to 1, committees
/// distinct and of size k, marginals equal to `p`.
pub fn lottery_basics_ok(
    x: &RandomizedCommittee,
    p: &FractionalCommittee,
    inst: &Instance,
) -> Result<(), String> {
    let total: Rational = x.entries().iter().map(|(l, _)| l.clone()).sum();
    if total != from_usize(1) {
        return Err(format!("weights sum to {total}"));
    }
    if x.entries().iter().any(|(l, _)| *l <= Rational::zero()) {
        return Err("non-positive weight".into());
    }
    let distinct: BTreeSet<&Committee> = x.support().collect();
    if distinct.len() != x.len() {
        return Err("repeated committee".into());
    }
    if let Some(w) = x.support().find(|w| w.len() != inst.k()) {
        return Err(format!("committee {:?} has wrong size", w.members()));
    }
    if marginals_oracle(x, inst.m()) != p.values() {
        return Err("marginals differ from p".into());
    }
    if p.values().iter().sum::<Rational>() != from_usize(inst.k()) {
        return Err("p does not sum to k".into());
    }
    Ok(())
}

/// [`lottery_basics_ok`] plus the support bound of decomposed lotteries.
pub fn lottery_ok(
    x: &RandomizedCommittee,
    p: &FractionalCommittee,
    inst: &Instance,
) -> Result<(), String> {
    lottery_basics_ok(x, p, inst)?;
    if x.len() > inst.m() {
        return Err(format!("support {} exceeds m", x.len()));
    }
    Ok(())
}

/// Every voter spent at least `min(k, |A_i|)/n` on approved candidates.
pub fn spending_bound_oracle(inst: &Instance, ledger: &PaymentLedger) -> Result<(), String> {
    for i in 0..inst.n() {
        let approved: Rational = inst
            .ballot(i)
            .iter()
            .map(|&c| ledger.spent(i, c).clone())
            .sum();
        let bound = ratio(inst.k().min(inst.ballot(i).len()) as i64, inst.n() as i64);
        if approved < bound {
            return Err(format!(
                "voter {} spent {approved} < {bound} on approved",
                i + 1
            ));
        }
    }
    Ok(())
}

fn unanimous_groups(inst: &Instance, voters: &[usize]) -> Vec<Vec<usize>> {
    let mut by_ballot: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for &i in voters {
        by_ballot
            .entry(inst.ballot(i).to_vec())
            .or_default()
            .push(i);
    }
    by_ballot.into_values().collect()
}

/// Budget facts of a BW-GCR run, re-derived from the trace: the zero-budget
/// criterion in both directions, funded groups having `β = |T|`, active
/// voters getting at least `k/n`, non-negativity and the total.
pub fn bw_gcr_budget_oracle(inst: &Instance, out: &BwGcrOutput) -> Result<(), String> {
    let (n, k) = (inst.n() as i64, inst.k() as i64);
    let trace: &GcrTrace = &out.trace;
    let mut inactive = BTreeSet::new();
    for step in &trace.steps {
        for group in unanimous_groups(inst, &step.voters) {
            let formula = ratio(k, n) - ratio(step.beta as i64, group.len() as i64);
            let formula = if formula < Rational::zero() {
                Rational::zero()
            } else {
                formula
            };
            let zero_iff = (step.beta as i64) * n >= (group.len() as i64) * k;
            if formula.is_zero() != zero_iff {
                return Err(format!("zero-budget criterion broken for {group:?}"));
            }
            if !formula.is_zero() && step.beta != step.candidates.len() {
                return Err(format!("funded group {group:?} with beta < |T|"));
            }
            inactive.extend(group);
        }
    }
    let active: Vec<usize> = (0..inst.n()).filter(|i| !inactive.contains(i)).collect();
    for &i in &active {
        if out.budgets[i] < ratio(k, n) {
            return Err(format!("active voter {} below k/n", i + 1));
        }
    }
    if out.budgets.iter().any(|b| *b < Rational::zero()) {
        return Err("negative budget".into());
    }
    let total: Rational = out.budgets.iter().cloned().sum();
    if total != from_usize(inst.k() - trace.w_gcr.len()) {
        return Err(format!("budgets sum to {total}"));
    }
    Ok(())
}

/// A random valid fractional committee whose entries have a common
/// denominator `d ≤ max_den`.
pub fn random_fractional(
    rng: &mut ChaCha8Rng,
    m: usize,
    k: usize,
    max_den: i64,
) -> FractionalCommittee {
    let d = rng.random_range(1..=max_den);
    let mut units = vec![0i64; m];
    let mut left = k as i64 * d;
    while left > 0 {
        let c = rng.random_range(0..m);
        let room = d - units[c];
        if room == 0 {
            continue;
        }
        let add = rng.random_range(1..=room.min(left));
        units[c] += add;
        left -= add;
    }
    FractionalCommittee::new(units.into_iter().map(|u| ratio(u, d)).collect(), k).unwrap()
}
