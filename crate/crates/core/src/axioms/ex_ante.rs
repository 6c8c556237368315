//! Fair-share axioms on a fractional committee `p`, with `u_i(p) = Σ_{c ∈ A_i} p_c`.

use std::collections::HashMap;

use num_traits::Zero;

use super::{masks_for, members_of, Axiom, Relation, Verdict, Witness};
use crate::committee::FractionalCommittee;
use crate::error::Result;
use crate::instance::{unanimous_partition, utility, Instance};
use crate::limits::Limits;
use crate::rational::{from_usize, ratio, Rational};

fn utilities(p: &FractionalCommittee, inst: &Instance) -> Vec<Rational> {
    (0..inst.n())
        .map(|i| utility(inst, i, p).expect("voter index in range"))
        .collect()
}

fn shortfall(voters: Vec<usize>, candidates: Vec<usize>, lhs: Rational, rhs: Rational) -> Witness {
    Witness {
        voters,
        candidates,
        level: None,
        lhs,
        rhs,
        relation: Relation::AtLeast,
        committee: None,
    }
}

/// Checks `u_i ≥ bound(i)` for every voter.
fn per_voter(
    axiom: Axiom,
    p: &FractionalCommittee,
    inst: &Instance,
    bound: impl Fn(usize) -> Rational,
) -> Verdict {
    let u = utilities(p, inst);
    for (i, ui) in u.into_iter().enumerate() {
        let rhs = bound(i);
        if ui < rhs {
            let witness = shortfall(vec![i], inst.ballot(i).to_vec(), ui, rhs);
            return Verdict::fail(axiom, witness);
        }
    }
    Verdict::pass(axiom)
}

/// `u_i ≥ min(k, |A_i|)/n`.
pub fn check_ifs(p: &FractionalCommittee, inst: &Instance) -> Verdict {
    let (n, k) = (inst.n() as i64, inst.k());
    per_voter(Axiom::Ifs, p, inst, |i| {
        ratio(k.min(inst.ballot(i).len()) as i64, n)
    })
}

/// `u_i ≥ min(k/n, |A_i|)`.
pub fn check_strong_ifs(p: &FractionalCommittee, inst: &Instance) -> Verdict {
    let fair = inst.fair_budget();
    per_voter(Axiom::StrongIfs, p, inst, |i| {
        fair.clone().min(from_usize(inst.ballot(i).len()))
    })
}

/// `u_i > 0`.
pub fn check_positive_share(p: &FractionalCommittee, inst: &Instance) -> Verdict {
    for (i, ui) in utilities(p, inst).into_iter().enumerate() {
        if ui.is_zero() {
            let mut witness = shortfall(vec![i], inst.ballot(i).to_vec(), ui, Rational::zero());
            witness.relation = Relation::GreaterThan;
            return Verdict::fail(Axiom::PositiveShare, witness);
        }
    }
    Verdict::pass(Axiom::PositiveShare)
}

/// Checks every maximal unanimous group; a violated sub-group implies its
/// maximal group is violated too, since the bound grows with `|S|`.
fn per_unanimous_group(
    axiom: Axiom,
    p: &FractionalCommittee,
    inst: &Instance,
    bound: impl Fn(usize, usize) -> Rational,
) -> Verdict {
    let everyone: Vec<usize> = (0..inst.n()).collect();
    for group in unanimous_partition(&everyone, inst) {
        let ballot = inst.ballot(group[0]).to_vec();
        let u = utility(inst, group[0], p).expect("voter index in range");
        let rhs = bound(group.len(), ballot.len());
        if u < rhs {
            return Verdict::fail(axiom, shortfall(group, ballot, u, rhs));
        }
    }
    Verdict::pass(axiom)
}

/// `u(S) ≥ |S|/n · min(k, |A|)`.
pub fn check_ufs(p: &FractionalCommittee, inst: &Instance) -> Verdict {
    let (n, k) = (inst.n() as i64, inst.k());
    per_unanimous_group(Axiom::Ufs, p, inst, |size, approved| {
        ratio((size * k.min(approved)) as i64, n)
    })
}

/// `u(S) ≥ min(|S|·k/n, |A|)`.
pub fn check_strong_ufs(p: &FractionalCommittee, inst: &Instance) -> Verdict {
    let (n, k) = (inst.n() as i64, inst.k());
    per_unanimous_group(Axiom::StrongUfs, p, inst, |size, approved| {
        ratio((size * k) as i64, n).min(from_usize(approved))
    })
}

/// Walks all non-empty voter subsets `S` and checks
/// `Σ_{c ∈ ∪A_i} p_c ≥ bound(S)`. The left side only depends on the union,
/// so it is cached by union mask.
fn per_voter_subset(
    axiom: Axiom,
    p: &FractionalCommittee,
    inst: &Instance,
    limits: &Limits,
    bound: impl Fn(&[usize], u64) -> Rational,
) -> Result<Verdict> {
    limits.check_n(inst.n())?;
    let masks = masks_for(inst)?;
    let subsets = 1usize << inst.n();
    let mut union = vec![0u64; subsets];
    let mut covered: HashMap<u64, Rational> = HashMap::new();
    for s in 1..subsets {
        let low = s.trailing_zeros() as usize;
        union[s] = union[s & (s - 1)] | masks[low];
        let lhs = covered
            .entry(union[s])
            .or_insert_with(|| members_of(union[s]).iter().map(|&c| p.get(c)).sum())
            .clone();
        let voters = members_of(s as u64);
        let rhs = bound(&voters, union[s]);
        if lhs < rhs {
            let witness = shortfall(voters, members_of(union[s]), lhs, rhs);
            return Ok(Verdict::fail(axiom, witness));
        }
    }
    Ok(Verdict::pass(axiom))
}

pub fn check_gfs(p: &FractionalCommittee, inst: &Instance) -> Result<Verdict> {
    check_gfs_with(p, inst, &Limits::from_env())
}

/// `Σ_{c ∈ ∪_{i∈S} A_i} p_c ≥ Σ_{i∈S} min(k, |A_i|)/n` for every `S`.
pub fn check_gfs_with(
    p: &FractionalCommittee,
    inst: &Instance,
    limits: &Limits,
) -> Result<Verdict> {
    let (n, k) = (inst.n() as i64, inst.k());
    per_voter_subset(Axiom::Gfs, p, inst, limits, |voters, _| {
        let total: usize = voters.iter().map(|&i| k.min(inst.ballot(i).len())).sum();
        ratio(total as i64, n)
    })
}

pub fn check_strong_gfs_capped(p: &FractionalCommittee, inst: &Instance) -> Result<Verdict> {
    check_strong_gfs_capped_with(p, inst, &Limits::from_env())
}

/// `Σ_{c ∈ ∪_{i∈S} A_i} p_c ≥ min(|S|·k/n, |∪_{i∈S} A_i|)` for every `S`.
pub fn check_strong_gfs_capped_with(
    p: &FractionalCommittee,
    inst: &Instance,
    limits: &Limits,
) -> Result<Verdict> {
    let (n, k) = (inst.n() as i64, inst.k() as i64);
    per_voter_subset(Axiom::StrongGfsCapped, p, inst, limits, |voters, union| {
        ratio(voters.len() as i64 * k, n).min(from_usize(union.count_ones() as usize))
    })
}
