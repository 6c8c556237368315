//! JR, PJR, EJR, EJR+ and FJR for a single committee.
//!
//! EJR and FJR enumerate candidate sets `T` instead of voter groups: if any
//! group violates the axiom for `(ℓ, T)` then so does the set of *all*
//! under-served voters that qualify for `T`, so it suffices to test that
//! maximal set for each `T`.

use itertools::Itertools;

use super::{mask_of, masks_for, members_of, Axiom, Relation, Verdict, Witness};
use crate::committee::Committee;
use crate::error::Result;
use crate::instance::Instance;
use crate::limits::Limits;
use crate::rational::from_usize;

fn overlaps(w: &Committee, inst: &Instance) -> Vec<usize> {
    (0..inst.n())
        .map(|i| inst.overlap(i, w.members()))
        .collect()
}

/// `|group| ≥ size·n/k`, exactly.
fn large_enough(group: usize, size: usize, inst: &Instance) -> bool {
    group * inst.k() >= size * inst.n()
}

fn group_witness(
    voters: Vec<usize>,
    candidates: Vec<usize>,
    level: usize,
    overlap: &[usize],
) -> Witness {
    let best = voters.iter().map(|&i| overlap[i]).max().unwrap_or(0);
    Witness {
        voters,
        candidates,
        level: Some(level),
        lhs: from_usize(best),
        rhs: from_usize(level),
        relation: Relation::AtLeast,
        committee: None,
    }
}

pub fn check_jr(w: &Committee, inst: &Instance) -> Verdict {
    let overlap = overlaps(w, inst);
    for c in 0..inst.m() {
        let group: Vec<usize> = inst
            .approvers(c)
            .iter()
            .copied()
            .filter(|&i| overlap[i] == 0)
            .collect();
        if !group.is_empty() && large_enough(group.len(), 1, inst) {
            return Verdict::fail(Axiom::Jr, group_witness(group, vec![c], 1, &overlap));
        }
    }
    Verdict::pass(Axiom::Jr)
}

pub fn check_pjr(w: &Committee, inst: &Instance) -> Result<Verdict> {
    check_pjr_with(w, inst, &Limits::from_env())
}

/// Enumerates all voter groups. For a group with `c` common candidates, the
/// union of whose ballots meets the committee in `u` members, the smallest
/// violated level is `u + 1`, provided the group is `(u+1)`-cohesive.
pub fn check_pjr_with(w: &Committee, inst: &Instance, limits: &Limits) -> Result<Verdict> {
    limits.check_n(inst.n())?;
    let masks = masks_for(inst)?;
    let w_mask = mask_of(w.members());
    let (n, k) = (inst.n(), inst.k());

    let subsets = 1usize << n;
    let mut common = vec![u64::MAX; subsets];
    let mut union = vec![0u64; subsets];
    for s in 1..subsets {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        common[s] = common[rest] & masks[low];
        union[s] = union[rest] | masks[low];

        let size = s.count_ones() as usize;
        let max_level = (common[s].count_ones() as usize).min(size * k / n);
        let covered = (union[s] & w_mask).count_ones() as usize;
        if covered < max_level {
            let level = covered + 1;
            let voters = members_of(s as u64);
            return Ok(Verdict::fail(
                Axiom::Pjr,
                Witness {
                    voters,
                    candidates: members_of(common[s]),
                    level: Some(level),
                    lhs: from_usize(covered),
                    rhs: from_usize(level),
                    relation: Relation::AtLeast,
                    committee: None,
                },
            ));
        }
    }
    Ok(Verdict::pass(Axiom::Pjr))
}

pub fn check_ejr(w: &Committee, inst: &Instance) -> Result<Verdict> {
    check_ejr_with(w, inst, &Limits::from_env())
}

pub fn check_ejr_with(w: &Committee, inst: &Instance, limits: &Limits) -> Result<Verdict> {
    limits.check_m(inst.m())?;
    let masks = masks_for(inst)?;
    let overlap = overlaps(w, inst);
    for level in 1..=inst.k() {
        let under: Vec<usize> = (0..inst.n()).filter(|&i| overlap[i] < level).collect();
        // only candidates approved by enough under-served voters can be in T
        let pool: Vec<usize> = (0..inst.m())
            .filter(|&c| {
                let support = under.iter().filter(|&&i| inst.approves(i, c)).count();
                large_enough(support, level, inst)
            })
            .collect();
        for t in pool.into_iter().combinations(level) {
            let t_mask = mask_of(&t);
            let group: Vec<usize> = under
                .iter()
                .copied()
                .filter(|&i| masks[i] & t_mask == t_mask)
                .collect();
            if large_enough(group.len(), level, inst) {
                return Ok(Verdict::fail(
                    Axiom::Ejr,
                    group_witness(group, t, level, &overlap),
                ));
            }
        }
    }
    Ok(Verdict::pass(Axiom::Ejr))
}

pub fn check_ejr_plus(w: &Committee, inst: &Instance) -> Verdict {
    let overlap = overlaps(w, inst);
    for c in (0..inst.m()).filter(|&c| !w.contains(c)) {
        for level in 1..=inst.k() {
            let group: Vec<usize> = inst
                .approvers(c)
                .iter()
                .copied()
                .filter(|&i| overlap[i] < level)
                .collect();
            if !group.is_empty() && large_enough(group.len(), level, inst) {
                return Verdict::fail(
                    Axiom::EjrPlus,
                    group_witness(group, vec![c], level, &overlap),
                );
            }
        }
    }
    Verdict::pass(Axiom::EjrPlus)
}

pub fn check_fjr(w: &Committee, inst: &Instance) -> Result<Verdict> {
    check_fjr_with(w, inst, &Limits::from_env())
}

pub fn check_fjr_with(w: &Committee, inst: &Instance, limits: &Limits) -> Result<Verdict> {
    limits.check_m(inst.m())?;
    let masks = masks_for(inst)?;
    let overlap = overlaps(w, inst);
    let k = inst.k();
    // a voter with k approved members can never be under-served
    let pool: Vec<usize> = (0..inst.m())
        .filter(|&c| inst.approvers(c).iter().any(|&i| overlap[i] < k))
        .collect();
    for size in 1..=k.min(pool.len()) {
        for t in pool.iter().copied().combinations(size) {
            let t_mask = mask_of(&t);
            for beta in 1..=size {
                let group: Vec<usize> = (0..inst.n())
                    .filter(|&i| {
                        overlap[i] < beta && (masks[i] & t_mask).count_ones() as usize >= beta
                    })
                    .collect();
                if !group.is_empty() && large_enough(group.len(), size, inst) {
                    return Ok(Verdict::fail(
                        Axiom::Fjr,
                        group_witness(group, t, beta, &overlap),
                    ));
                }
            }
        }
    }
    Ok(Verdict::pass(Axiom::Fjr))
}
