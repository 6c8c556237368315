//! First phase of the Method of Equal Shares, with arbitrary starting budgets.
//!
//! Each candidate costs 1. A candidate `c` is ρ-affordable when its approvers
//! can cover the cost with nobody paying more than ρ:
//! `Σ_{i ∈ N_c} min(b_i, ρ) = 1`. Each round buys the candidate with the
//! smallest such ρ (lowest index on ties) and charges `min(b_i, ρ)` to each
//! approver.

use num_traits::{One, Zero};

use crate::committee::Committee;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ledger::PaymentLedger;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MesConfig {
    pub budgets: Vec<Rational>,
    pub pool: Committee,
    pub capacity: usize,
}

impl MesConfig {
    /// Budgets `k/n`, every candidate, capacity `k`.
    pub fn standard(inst: &Instance) -> Self {
        MesConfig {
            budgets: vec![inst.fair_budget(); inst.n()],
            pool: (0..inst.m()).collect(),
            capacity: inst.k(),
        }
    }

    pub fn validate(&self, inst: &Instance) -> Result<()> {
        if self.budgets.len() != inst.n() {
            return Err(Error::InvalidConfig(format!(
                "{} budgets for {} voters",
                self.budgets.len(),
                inst.n()
            )));
        }
        if let Some(i) = self
            .budgets
            .iter()
            .position(|b| !rational::is_nonnegative(b))
        {
            return Err(Error::InvalidConfig(format!(
                "negative budget for voter {}",
                i + 1
            )));
        }
        if self.pool.members().last().is_some_and(|&c| c >= inst.m()) {
            return Err(Error::InvalidConfig("pool candidate out of range".into()));
        }
        Ok(())
    }
}

/// One purchase: the candidate, its price cap ρ, and the budgets right before.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MesStep {
    pub candidate: usize,
    pub rho: Rational,
    pub budgets_before: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MesResult {
    pub w_mes: Committee,
    pub ledger: PaymentLedger,
    pub selection_order: Vec<MesStep>,
}

/// The minimum ρ with `Σ_{i ∈ N_c} min(b_i, ρ) = 1`, or `None` when the
/// approvers of `candidate` hold less than 1 in total.
///
/// Walks the approvers' budgets in ascending order: if the `j` poorest pay
/// everything they have, the others split the rest evenly, and that share is
/// the answer as soon as it does not exceed the next budget.
pub fn rho_affordability(
    candidate: usize,
    budgets: &[Rational],
    inst: &Instance,
) -> Option<Rational> {
    let mut held: Vec<&Rational> = inst
        .approvers(candidate)
        .iter()
        .map(|&i| &budgets[i])
        .collect();
    held.sort();
    let total = rational::sum(held.iter().copied());
    if total < Rational::one() {
        return None;
    }
    let mut paid = Rational::zero();
    let t = held.len();
    for (j, b) in held.iter().enumerate() {
        let rho = (Rational::one() - &paid) / rational::from_usize(t - j);
        if rho <= **b {
            return Some(rho);
        }
        paid += *b;
    }
    unreachable!("total >= 1 guarantees a threshold segment")
}

pub fn run_mes(inst: &Instance, cfg: &MesConfig) -> Result<MesResult> {
    cfg.validate(inst)?;
    let mut ledger = PaymentLedger::new(cfg.budgets.clone(), inst.m());
    let mut chosen: Vec<usize> = Vec::new();
    let mut order = Vec::new();

    while chosen.len() < cfg.capacity {
        let budgets = ledger.remaining_budgets();
        let best = cfg
            .pool
            .members()
            .iter()
            .filter(|c| !chosen.contains(c))
            .filter_map(|&c| rho_affordability(c, budgets, inst).map(|rho| (c, rho)))
            // pool is ascending, so keeping the first minimum breaks ties by index
            .fold(None::<(usize, Rational)>, |best, (c, rho)| match best {
                Some((_, ref r)) if *r <= rho => best,
                _ => Some((c, rho)),
            });
        let Some((candidate, rho)) = best else { break };

        let budgets_before = budgets.to_vec();
        for &i in inst.approvers(candidate) {
            let amount = ledger.remaining(i).clone().min(rho.clone());
            ledger.pay(i, candidate, &amount)?;
        }
        chosen.push(candidate);
        order.push(MesStep {
            candidate,
            rho,
            budgets_before,
        });
    }

    Ok(MesResult {
        w_mes: Committee::new(chosen),
        ledger,
        selection_order: order,
    })
}
