use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Who paid how much for which candidate.
///
/// `spent[i][c]` is `y_ic`, `remaining[i]` is `b_i`. Every payment moves money
/// from `remaining` to `spent`, so `initial[i] = Σ_c y_ic + b_i` holds at all
/// times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaymentLedger {
    initial: Vec<Rational>,
    spent: Vec<Vec<Rational>>,
    remaining: Vec<Rational>,
}

impl PaymentLedger {
    pub fn new(budgets: Vec<Rational>, m: usize) -> Self {
        let n = budgets.len();
        PaymentLedger {
            initial: budgets.clone(),
            spent: vec![vec![Rational::zero(); m]; n],
            remaining: budgets,
        }
    }

    pub fn n(&self) -> usize {
        self.initial.len()
    }

    pub fn m(&self) -> usize {
        self.spent.first().map_or(0, Vec::len)
    }

    /// Moves `amount` of voter `i`'s remaining budget onto candidate `c`.
    pub fn pay(&mut self, voter: usize, candidate: usize, amount: &Rational) -> Result<()> {
        if amount.is_zero() {
            return Ok(());
        }
        if *amount < Rational::zero() || *amount > self.remaining[voter] {
            return Err(Error::Invariant(format!(
                "voter {} cannot pay {} from remaining {}",
                voter + 1,
                rational::format(amount),
                rational::format(&self.remaining[voter])
            )));
        }
        self.remaining[voter] -= amount;
        self.spent[voter][candidate] += amount;
        Ok(())
    }

    pub fn spent(&self, voter: usize, candidate: usize) -> &Rational {
        &self.spent[voter][candidate]
    }

    pub fn spent_row(&self, voter: usize) -> &[Rational] {
        &self.spent[voter]
    }

    pub fn remaining(&self, voter: usize) -> &Rational {
        &self.remaining[voter]
    }

    pub fn remaining_budgets(&self) -> &[Rational] {
        &self.remaining
    }

    pub fn initial(&self, voter: usize) -> &Rational {
        &self.initial[voter]
    }

    pub fn initial_budgets(&self) -> &[Rational] {
        &self.initial
    }

    /// `Σ_i y_ic`.
    pub fn paid_for(&self, candidate: usize) -> Rational {
        rational::sum(self.spent.iter().map(|row| &row[candidate]))
    }

    /// `Σ_c y_ic`.
    pub fn total_spent(&self, voter: usize) -> Rational {
        rational::sum(&self.spent[voter])
    }

    /// `Σ_{c ∈ ballot} y_ic`.
    pub fn spent_on(&self, voter: usize, candidates: &[usize]) -> Rational {
        rational::sum(candidates.iter().map(|&c| &self.spent[voter][c]))
    }

    /// Non-negativity and per-voter conservation.
    pub fn check(&self) -> Result<()> {
        for i in 0..self.n() {
            if self.remaining[i] < Rational::zero()
                || self.spent[i].iter().any(|y| *y < Rational::zero())
            {
                return Err(Error::Invariant(format!(
                    "negative entry for voter {}",
                    i + 1
                )));
            }
            if self.total_spent(i) + &self.remaining[i] != self.initial[i] {
                return Err(Error::Invariant(format!(
                    "budget of voter {} not conserved",
                    i + 1
                )));
            }
        }
        Ok(())
    }
}
