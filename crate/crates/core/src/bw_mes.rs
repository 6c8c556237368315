//! BW-MES: run MES, spend the leftover budgets to complete a fractional
//! committee, then round it into a lottery.
//!
//! Completion happens in two stages. In the first, every voter who still
//! approves some unselected pool candidate spends all of their remaining budget
//! on such candidates. In the second, the remaining voters (all of whose
//! approved pool candidates were already bought) spend on any pool candidate
//! that still has room below 1. The split of stage-one money across candidates
//! is left to a [`CompletionStrategy`].

use std::str::FromStr;

use num_traits::{One, Zero};

use crate::committee::{Committee, FractionalCommittee, RandomizedCommittee};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::ledger::PaymentLedger;
use crate::mes::{run_mes, MesConfig, MesResult, MesStep};
use crate::rational::{self, Rational};
use crate::rounding::decompose;

/// Mutable view over a completion in progress.
pub struct CompletionState<'a> {
    pub inst: &'a Instance,
    pub pool: &'a Committee,
    pub w_mes: &'a Committee,
    pub p: Vec<Rational>,
    pub ledger: PaymentLedger,
}

impl CompletionState<'_> {
    /// Pool candidates not bought by MES, ascending.
    pub fn open_candidates(&self) -> Vec<usize> {
        self.pool
            .members()
            .iter()
            .copied()
            .filter(|&c| !self.w_mes.contains(c))
            .collect()
    }

    /// `Σ_{i ∈ N_c} b_i` over the current remaining budgets.
    pub fn collective_budget(&self, candidate: usize) -> Rational {
        rational::sum(
            self.inst
                .approvers(candidate)
                .iter()
                .map(|&i| self.ledger.remaining(i)),
        )
    }

    /// Every approver of `candidate` spends their whole remaining budget on it.
    pub fn fund_with_approvers(&mut self, candidate: usize) -> Result<()> {
        for &i in self.inst.approvers(candidate) {
            let amount = self.ledger.remaining(i).clone();
            self.ledger.pay(i, candidate, &amount)?;
            self.p[candidate] += amount;
        }
        Ok(())
    }

    /// Voters with no approved open candidate and money left, ascending.
    fn stage_two_voters(&self) -> Vec<usize> {
        let open = self.open_candidates();
        (0..self.inst.n())
            .filter(|&i| !self.ledger.remaining(i).is_zero())
            .filter(|&i| !open.iter().any(|&c| self.inst.approves(i, c)))
            .collect()
    }
}

/// A member of the BW-MES family: how leftover budgets are spent.
pub trait CompletionStrategy {
    /// Stage one: voters approving an open candidate spend everything on open
    /// candidates they approve. Implementations must only pay for approved
    /// candidates here; this is checked afterwards.
    fn fund_approved(&self, state: &mut CompletionState<'_>) -> Result<()>;

    /// Stage two: each remaining voter, in ascending order, fills pool
    /// candidates in ascending order up to 1, skipping saturated ones.
    fn fund_remaining(&self, state: &mut CompletionState<'_>) -> Result<()> {
        for i in state.stage_two_voters() {
            for &c in state.pool.members() {
                let left = state.ledger.remaining(i).clone();
                if left.is_zero() {
                    break;
                }
                let room = Rational::one() - &state.p[c];
                if room <= Rational::zero() {
                    continue;
                }
                let amount = left.min(room);
                state.ledger.pay(i, c, &amount)?;
                state.p[c] += amount;
            }
        }
        Ok(())
    }
}

/// Built-in completion strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Completion {
    /// Open candidates in ascending index; each takes all leftover budget of
    /// its approvers.
    #[default]
    Default,
    /// Repeatedly fund the open candidate whose approvers hold the most
    /// leftover budget (lowest index on ties).
    MesContinuation,
}

impl Completion {
    pub const ALL: [Completion; 2] = [Completion::Default, Completion::MesContinuation];

    pub fn name(self) -> &'static str {
        match self {
            Completion::Default => "default",
            Completion::MesContinuation => "mes-continuation",
        }
    }
}

impl FromStr for Completion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Completion::Default),
            "mes-continuation" => Ok(Completion::MesContinuation),
            other => Err(Error::Parse(format!("unknown completion {other:?}"))),
        }
    }
}

impl CompletionStrategy for Completion {
    fn fund_approved(&self, state: &mut CompletionState<'_>) -> Result<()> {
        match self {
            Completion::Default => {
                for c in state.open_candidates() {
                    state.fund_with_approvers(c)?;
                }
            }
            Completion::MesContinuation => {
                let mut open = state.open_candidates();
                loop {
                    let best = open
                        .iter()
                        .enumerate()
                        .map(|(pos, &c)| (pos, c, state.collective_budget(c)))
                        .fold(None::<(usize, usize, Rational)>, |best, cur| match best {
                            Some(ref b) if b.2 >= cur.2 => best,
                            _ => Some(cur),
                        });
                    match best {
                        Some((pos, c, budget)) if !budget.is_zero() => {
                            state.fund_with_approvers(c)?;
                            open.remove(pos);
                        }
                        _ => break,
                    }
                }
            }
        }
        Ok(())
    }
}

/// Completes the MES outcome to a fractional committee of size `total` over
/// `pool`, using the given strategy.
pub fn complete_fractional(
    inst: &Instance,
    mes: &MesResult,
    pool: &Committee,
    total: usize,
    strategy: &dyn CompletionStrategy,
) -> Result<(FractionalCommittee, PaymentLedger)> {
    let mut p = vec![Rational::zero(); inst.m()];
    for &c in mes.w_mes.members() {
        p[c] = Rational::one();
    }
    let mut state = CompletionState {
        inst,
        pool,
        w_mes: &mes.w_mes,
        p,
        ledger: mes.ledger.clone(),
    };

    let open = state.open_candidates();
    let stage_one: Vec<usize> = (0..inst.n())
        .filter(|&i| open.iter().any(|&c| inst.approves(i, c)))
        .collect();
    let before: Vec<Vec<Rational>> = stage_one
        .iter()
        .map(|&i| state.ledger.spent_row(i).to_vec())
        .collect();

    strategy.fund_approved(&mut state)?;

    for (&i, old) in stage_one.iter().zip(&before) {
        if !state.ledger.remaining(i).is_zero() {
            return Err(Error::InfeasibleCompletion(format!(
                "voter {} kept budget after stage one",
                i + 1
            )));
        }
        let strays =
            (0..inst.m()).any(|c| state.ledger.spent(i, c) != &old[c] && !inst.approves(i, c));
        if strays {
            return Err(Error::InfeasibleCompletion(format!(
                "voter {} paid for an unapproved candidate in stage one",
                i + 1
            )));
        }
    }

    strategy.fund_remaining(&mut state)?;

    if let Some(i) = (0..inst.n()).find(|&i| !state.ledger.remaining(i).is_zero()) {
        return Err(Error::InfeasibleCompletion(format!(
            "voter {} could not spend their budget",
            i + 1
        )));
    }
    if let Some(c) = (0..inst.m()).find(|&c| state.p[c] > Rational::one()) {
        return Err(Error::InfeasibleCompletion(format!(
            "candidate {} exceeds 1",
            c + 1
        )));
    }
    if let Some(c) = (0..inst.m()).find(|&c| state.p[c] != state.ledger.paid_for(c)) {
        return Err(Error::Invariant(format!(
            "p of candidate {} differs from its payments",
            c + 1
        )));
    }
    state.ledger.check()?;
    let p = FractionalCommittee::new(state.p, total)
        .map_err(|e| Error::InfeasibleCompletion(e.to_string()))?;
    Ok((p, state.ledger))
}

/// Overrides for the sub-call made by BW-GCR. `None` means the standard
/// choice: budgets `k/n`, every candidate, size `k`.
#[derive(Debug, Clone, Default)]
pub struct BwMesParams {
    pub budgets: Option<Vec<Rational>>,
    pub pool: Option<Committee>,
    pub size: Option<usize>,
    pub completion: Completion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BwMesOutput {
    pub p: FractionalCommittee,
    pub lottery: RandomizedCommittee,
    pub ledger: PaymentLedger,
    pub w_mes: Committee,
    pub mes_steps: Vec<MesStep>,
}

pub fn run_bw_mes(inst: &Instance, params: &BwMesParams) -> Result<BwMesOutput> {
    let size = params.size.unwrap_or(inst.k());
    let pool = params
        .pool
        .clone()
        .unwrap_or_else(|| (0..inst.m()).collect());
    let budgets = params
        .budgets
        .clone()
        .unwrap_or_else(|| vec![inst.fair_budget(); inst.n()]);
    if rational::sum(&budgets) != rational::from_usize(size) {
        return Err(Error::InvalidConfig(format!(
            "budgets sum to {}, expected {size}",
            rational::format(&rational::sum(&budgets))
        )));
    }
    if size > pool.len() {
        return Err(Error::InvalidConfig(format!(
            "size {size} exceeds pool of {}",
            pool.len()
        )));
    }

    let cfg = MesConfig {
        budgets,
        pool: pool.clone(),
        capacity: size,
    };
    let mes = run_mes(inst, &cfg)?;
    let (p, ledger) = complete_fractional(inst, &mes, &pool, size, &params.completion)?;
    let lottery = decompose(&p)?;
    Ok(BwMesOutput {
        p,
        lottery,
        ledger,
        w_mes: mes.w_mes,
        mes_steps: mes.selection_order,
    })
}

/// Whether every voter spent at least `min(k, |A_i|) / n` on approved
/// candidates. Holds for every BW-MES run that starts from budgets `k/n`.
pub fn spending_lower_bound_holds(inst: &Instance, ledger: &PaymentLedger) -> bool {
    let n = rational::from_usize(inst.n());
    (0..inst.n()).all(|i| {
        let bound = rational::from_usize(inst.k().min(inst.ballot(i).len())) / &n;
        ledger.spent_on(i, inst.ballot(i)) >= bound
    })
}
