//! BW-GCR: GCR for the ex-post guarantee, then a BW-MES sub-call on the
//! remaining seats with carefully chosen budgets.
//!
//! A voter in the `z`-th unanimous group `N_j^z` of the `j`-th cohesive group
//! gets `max{0, k/n − β_j/|N_j^z|}`; still-active voters split what is left of
//! the seats GCR left open evenly. The sub-call buys from the candidates GCR
//! did not pick, and every committee of the final lottery is a sub-call
//! committee plus the GCR committee.

use num_traits::Zero;

use crate::bw_mes::{run_bw_mes, BwMesOutput, BwMesParams, Completion};
use crate::committee::{Committee, FractionalCommittee, RandomizedCommittee};
use crate::error::{Error, Result};
use crate::gcr::{run_gcr, GcrStep, GcrTrace};
use crate::instance::{unanimous_partition, Instance};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwGcrOutput {
    pub lottery: RandomizedCommittee,
    pub p: FractionalCommittee,
    pub trace: GcrTrace,
    pub budgets: Vec<Rational>,
    pub k_mes: usize,
    /// `None` when GCR already filled all `k` seats.
    pub sub_call: Option<BwMesOutput>,
}

/// `max{0, k/n − β/|group|}`.
fn cohesive_budget(inst: &Instance, beta: usize, group_size: usize) -> Rational {
    let b = inst.fair_budget() - rational::ratio(beta as i64, group_size as i64);
    b.max(Rational::zero())
}

fn unanimous_groups<'a>(
    trace: &'a GcrTrace,
    inst: &'a Instance,
) -> impl Iterator<Item = (&'a GcrStep, Vec<usize>)> + 'a {
    trace.steps.iter().flat_map(move |step| {
        unanimous_partition(&step.voters, inst)
            .into_iter()
            .map(move |group| (step, group))
    })
}

/// Budgets for the BW-MES sub-call; they sum to the number of open seats.
///
/// If GCR inactivated every voter but seats remain, the leftover is spread
/// evenly over all voters instead of over the (empty) active set.
pub fn assign_budgets(trace: &GcrTrace, inst: &Instance) -> Result<Vec<Rational>> {
    let n = inst.n();
    let k_mes = inst.k() - trace.w_gcr.len();
    let mut budgets = vec![Rational::zero(); n];
    for (step, group) in unanimous_groups(trace, inst) {
        let b = cohesive_budget(inst, step.beta, group.len());
        for i in group {
            budgets[i] = b.clone();
        }
    }

    let residual = rational::from_usize(k_mes) - rational::sum(&budgets);
    if residual < Rational::zero() {
        return Err(Error::NegativeResidual(rational::format(&residual)));
    }
    let active = trace.active_voters(n);
    if !active.is_empty() {
        let share = residual / rational::from_usize(active.len());
        for i in active {
            budgets[i] = share.clone();
        }
    } else if !residual.is_zero() {
        let share = residual / rational::from_usize(n);
        for b in &mut budgets {
            *b += &share;
        }
    }
    Ok(budgets)
}

/// Verifies the structural facts the construction rests on, for one run:
///
/// * `b_i = 0` exactly when `β_j ≥ |N_j^z|·k/n` (per unanimous group);
/// * a cohesive group with a positively funded member has `β_j = |T_j|`;
/// * every still-active voter gets at least `k/n`;
/// * budgets are non-negative and sum to the number of open seats.
pub fn check_budget_claims(trace: &GcrTrace, inst: &Instance, budgets: &[Rational]) -> Result<()> {
    let fail = |msg: String| Err(Error::Invariant(msg));
    let k = rational::from_usize(inst.k());
    let n = rational::from_usize(inst.n());

    for (step, group) in unanimous_groups(trace, inst) {
        let b = cohesive_budget(inst, step.beta, group.len());
        let threshold = rational::from_usize(group.len()) * &k / &n;
        let saturated = rational::from_usize(step.beta) >= threshold;
        if b.is_zero() != saturated {
            return fail(format!("zero-budget criterion fails for group {group:?}"));
        }
        if !b.is_zero() && step.beta != step.candidates.len() {
            return fail(format!(
                "funded group {group:?} has beta {} but |T| = {}",
                step.beta,
                step.candidates.len()
            ));
        }
    }
    let fair = inst.fair_budget();
    for i in trace.active_voters(inst.n()) {
        if budgets[i] < fair {
            return fail(format!("active voter {} gets less than k/n", i + 1));
        }
    }
    if budgets.iter().any(|b| *b < Rational::zero()) {
        return fail("negative budget".into());
    }
    let k_mes = inst.k() - trace.w_gcr.len();
    if rational::sum(budgets) != rational::from_usize(k_mes) {
        return fail("budgets do not sum to k_mes".into());
    }
    Ok(())
}

pub fn run_bw_gcr(inst: &Instance, completion: Completion) -> Result<BwGcrOutput> {
    let trace = run_gcr(inst)?;
    if trace.w_gcr.len() > inst.k() {
        return Err(Error::Invariant(format!(
            "GCR selected {} > k candidates",
            trace.w_gcr.len()
        )));
    }
    let budgets = assign_budgets(&trace, inst)?;
    check_budget_claims(&trace, inst, &budgets)?;
    let k_mes = inst.k() - trace.w_gcr.len();

    if k_mes == 0 {
        let lottery = RandomizedCommittee::certain(trace.w_gcr.clone(), inst.m())?;
        let p = FractionalCommittee::indicator(trace.w_gcr.members(), inst.m());
        return Ok(BwGcrOutput {
            lottery,
            p,
            trace,
            budgets,
            k_mes,
            sub_call: None,
        });
    }

    let pool: Committee = (0..inst.m())
        .filter(|&c| !trace.w_gcr.contains(c))
        .collect();
    let sub = run_bw_mes(
        inst,
        &BwMesParams {
            budgets: Some(budgets.clone()),
            pool: Some(pool),
            size: Some(k_mes),
            completion,
        },
    )?;
    let lottery = RandomizedCommittee::new(
        sub.lottery
            .entries()
            .iter()
            .map(|(l, w)| (l.clone(), w.union(&trace.w_gcr)))
            .collect(),
        inst.m(),
        inst.k(),
    )?;
    let mut p = sub.p.values().to_vec();
    for &c in trace.w_gcr.members() {
        p[c] += rational::one();
    }
    let p = FractionalCommittee::new(p, inst.k())?;
    Ok(BwGcrOutput {
        lottery,
        p,
        trace,
        budgets,
        k_mes,
        sub_call: Some(sub),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::committee::marginals;
    use crate::rational::{int, ratio};

    #[test]
    fn gfs_counterexample() {
        let inst = Instance::new(4, 2, vec![vec![0, 1], vec![0, 2], vec![3]]).unwrap();
        let out = run_bw_gcr(&inst, Completion::Default).unwrap();
        assert_eq!(out.budgets, vec![int(0), int(0), int(1)]);
        assert_eq!(out.k_mes, 1);
        assert_eq!(out.p.values(), &[int(1), int(0), int(0), int(1)]);
        assert_eq!(
            out.lottery.entries(),
            &[(int(1), Committee::new(vec![0, 3]))]
        );
        assert_eq!(marginals(&out.lottery), out.p);
    }

    #[test]
    fn all_seats_taken_by_gcr() {
        let inst = Instance::new(3, 2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        let out = run_bw_gcr(&inst, Completion::Default).unwrap();
        assert_eq!(out.k_mes, 0);
        assert_eq!(out.budgets, vec![int(0), int(0)]);
        assert!(out.sub_call.is_none());
        assert_eq!(
            out.lottery.entries(),
            &[(int(1), Committee::new(vec![0, 1]))]
        );
    }

    #[test]
    fn leftover_seats_without_active_voters() {
        // every voter joins the single cohesive group around c1, all budgets
        // are zero by formula, yet one seat remains
        let inst = Instance::new(4, 2, vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        let trace = run_gcr(&inst).unwrap();
        assert_eq!(trace.w_gcr.members(), &[0]);
        assert_eq!(trace.n_gcr, vec![0, 1, 2, 3]);
        let budgets = assign_budgets(&trace, &inst).unwrap();
        assert_eq!(budgets, vec![ratio(1, 4); 4]);
        let out = run_bw_gcr(&inst, Completion::Default).unwrap();
        assert!(out.lottery.support().all(|w| w.len() == 2 && w.contains(0)));
    }

    #[test]
    fn active_voters_share_residual() {
        let inst = Instance::new(
            5,
            3,
            vec![vec![0], vec![0], vec![0], vec![1, 2], vec![3], vec![4]],
        )
        .unwrap();
        let trace = run_gcr(&inst).unwrap();
        let budgets = assign_budgets(&trace, &inst).unwrap();
        check_budget_claims(&trace, &inst, &budgets).unwrap();
        let fair = inst.fair_budget();
        for i in trace.active_voters(inst.n()) {
            assert!(budgets[i] >= fair);
        }
    }
}
