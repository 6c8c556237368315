use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::axioms::{Axiom, Outcome};
use crate::bw_gcr::run_bw_gcr;
use crate::bw_mes::{run_bw_mes, spending_lower_bound_holds, BwMesParams, Completion};
use crate::committee::{one_based, FractionalCommittee};
use crate::error::{Error, Result};
use crate::gcr::{run_gcr, GcrTrace};
use crate::instance::Instance;
use crate::ledger::PaymentLedger;
use crate::mes::{run_mes, MesConfig, MesStep};
use crate::rational::{self, Rational};

use super::dictator::random_dictator;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    RandomDictator,
    Mes,
    BwMes,
    Gcr,
    BwGcr,
}

impl Rule {
    pub const ALL: [Rule; 5] = [
        Rule::RandomDictator,
        Rule::Mes,
        Rule::BwMes,
        Rule::Gcr,
        Rule::BwGcr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::RandomDictator => "random-dictator",
            Rule::Mes => "mes",
            Rule::BwMes => "bw-mes",
            Rule::Gcr => "gcr",
            Rule::BwGcr => "bw-gcr",
        }
    }

    /// Whether the rule enumerates candidate subsets.
    pub fn is_exponential(self) -> bool {
        matches!(self, Rule::Gcr | Rule::BwGcr)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule {s:?}")))
    }
}

/// The axioms each rule is known to satisfy.
pub fn guaranteed_axioms(rule: Rule) -> Vec<Axiom> {
    match rule {
        Rule::RandomDictator => vec![Axiom::Gfs],
        Rule::Mes => vec![Axiom::Ejr, Axiom::EjrPlus],
        Rule::BwMes => vec![Axiom::Gfs, Axiom::StrongUfs, Axiom::Ejr, Axiom::EjrPlus],
        Rule::Gcr => vec![Axiom::Fjr],
        Rule::BwGcr => vec![Axiom::StrongUfs, Axiom::Fjr],
    }
}

#[derive(Debug, Clone)]
pub struct RuleOutcome {
    pub outcome: Outcome,
    /// Marginals of the lottery; `None` for single-committee rules.
    pub fractional: Option<FractionalCommittee>,
    /// Rule-specific trace, already in report form.
    pub details: Value,
}

fn rationals(values: &[Rational]) -> Value {
    values.iter().map(rational::format).collect()
}

fn mes_steps(steps: &[MesStep]) -> Value {
    steps
        .iter()
        .map(|s| json!({ "candidate": s.candidate + 1, "rho": rational::format(&s.rho) }))
        .collect()
}

fn payments(ledger: &PaymentLedger) -> Value {
    (0..ledger.n())
        .map(|i| rationals(ledger.spent_row(i)))
        .collect()
}

fn gcr_steps(trace: &GcrTrace) -> Value {
    trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "voters": s.voters.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "candidates": one_based(&s.candidates),
                "beta": s.beta,
            })
        })
        .collect()
}

pub fn run_rule(inst: &Instance, rule: Rule, completion: Completion) -> Result<RuleOutcome> {
    match rule {
        Rule::RandomDictator => {
            let (p, lottery) = random_dictator(inst)?;
            Ok(RuleOutcome {
                outcome: Outcome::Lottery(lottery),
                fractional: Some(p),
                details: json!({}),
            })
        }
        Rule::Mes => {
            let result = run_mes(inst, &MesConfig::standard(inst))?;
            let details = json!({
                "selection_order": mes_steps(&result.selection_order),
                "remaining_budgets": rationals(result.ledger.remaining_budgets()),
            });
            Ok(RuleOutcome {
                outcome: Outcome::Committee(result.w_mes),
                fractional: None,
                details,
            })
        }
        Rule::BwMes => {
            let out = run_bw_mes(
                inst,
                &BwMesParams {
                    completion,
                    ..BwMesParams::default()
                },
            )?;
            let details = json!({
                "completion": completion.name(),
                "w_mes": one_based(&out.w_mes),
                "selection_order": mes_steps(&out.mes_steps),
                "payments": payments(&out.ledger),
                "spending_bound_holds": spending_lower_bound_holds(inst, &out.ledger),
            });
            Ok(RuleOutcome {
                outcome: Outcome::Lottery(out.lottery),
                fractional: Some(out.p),
                details,
            })
        }
        Rule::Gcr => {
            let trace = run_gcr(inst)?;
            let details = json!({ "steps": gcr_steps(&trace) });
            Ok(RuleOutcome {
                outcome: Outcome::Committee(trace.w_gcr),
                fractional: None,
                details,
            })
        }
        Rule::BwGcr => {
            let out = run_bw_gcr(inst, completion)?;
            let details = json!({
                "completion": completion.name(),
                "steps": gcr_steps(&out.trace),
                "w_gcr": one_based(&out.trace.w_gcr),
                "budgets": rationals(&out.budgets),
                "k_mes": out.k_mes,
                "w_mes": out.sub_call.as_ref().map(|s| one_based(&s.w_mes)),
            });
            Ok(RuleOutcome {
                outcome: Outcome::Lottery(out.lottery),
                fractional: Some(out.p),
                details,
            })
        }
    }
}
