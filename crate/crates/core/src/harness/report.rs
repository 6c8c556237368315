//! The JSON report written by `bwcv run` and the outcome reader used by
//! `bwcv verify`. Indices are 1-based and every rational is a `"n/d"` string.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::format::write_instance;
use super::run::RuleOutcome;
use crate::axioms::{Outcome, Verdict, Witness};
use crate::committee::{marginals, one_based, Committee, RandomizedCommittee};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::rational::{self, Rational};

mod opt_rationals {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::rational::{self, Rational};

    pub fn serialize<S: Serializer>(
        values: &Option<Vec<Rational>>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match values {
            Some(v) => s.collect_seq(v.iter().map(rational::format)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Vec<Rational>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|v| {
            v.iter()
                .map(|t| rational::parse(t).map_err(serde::de::Error::custom))
                .collect()
        })
        .transpose()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LotteryEntry {
    #[serde(with = "rational::as_string")]
    pub probability: Rational,
    pub committee: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub voters: Vec<usize>,
    pub candidates: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(with = "rational::as_string")]
    pub lhs: Rational,
    pub relation: String,
    #[serde(with = "rational::as_string")]
    pub rhs: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub committee: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub axiom: String,
    pub satisfied: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessRecord>,
}

impl From<&Witness> for WitnessRecord {
    fn from(w: &Witness) -> Self {
        WitnessRecord {
            voters: w.voters.iter().map(|i| i + 1).collect(),
            candidates: w.candidates.iter().map(|c| c + 1).collect(),
            level: w.level,
            lhs: w.lhs.clone(),
            relation: w.relation.symbol().to_string(),
            rhs: w.rhs.clone(),
            committee: w.committee.as_ref().map(one_based),
        }
    }
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        VerdictRecord {
            axiom: v.axiom.name().to_string(),
            satisfied: v.satisfied(),
            witness: v.witness.as_ref().map(WitnessRecord::from),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub rule: String,
    pub instance_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub committee: Option<Vec<usize>>,
    #[serde(
        default,
        with = "opt_rationals",
        skip_serializing_if = "Option::is_none"
    )]
    pub fractional: Option<Vec<Rational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lottery: Option<Vec<LotteryEntry>>,
    #[serde(default)]
    pub details: Value,
    #[serde(default)]
    pub verdicts: Vec<VerdictRecord>,
    #[serde(default)]
    pub elapsed_us: u64,
}

/// SHA-256 of the canonical instance file, hex encoded.
pub fn instance_digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(write_instance(inst).as_bytes()))
}

pub fn lottery_entries(x: &RandomizedCommittee) -> Vec<LotteryEntry> {
    x.entries()
        .iter()
        .map(|(l, w)| LotteryEntry {
            probability: l.clone(),
            committee: one_based(w),
        })
        .collect()
}

impl RunReport {
    pub fn new(
        rule: &str,
        inst: &Instance,
        result: &RuleOutcome,
        verdicts: &[Verdict],
        elapsed: Duration,
    ) -> Self {
        let (committee, lottery) = match &result.outcome {
            Outcome::Committee(w) => (Some(one_based(w)), None),
            Outcome::Lottery(x) => (None, Some(lottery_entries(x))),
        };
        RunReport {
            rule: rule.to_string(),
            instance_digest: instance_digest(inst),
            committee,
            fractional: result.fractional.as_ref().map(|p| p.values().to_vec()),
            lottery,
            details: result.details.clone(),
            verdicts: verdicts.iter().map(VerdictRecord::from).collect(),
            elapsed_us: u64::try_from(elapsed.as_micros()).unwrap_or(u64::MAX),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }
}

/// Fields `verify` reads from an outcome file; a run report qualifies.
#[derive(Debug, Deserialize)]
struct OutcomeFile {
    #[serde(default)]
    committee: Option<Vec<usize>>,
    #[serde(default, with = "opt_rationals")]
    fractional: Option<Vec<Rational>>,
    #[serde(default)]
    lottery: Option<Vec<LotteryEntry>>,
}

fn committee_from(members: &[usize], m: usize) -> Result<Committee> {
    if let Some(&c) = members.iter().find(|&&c| c == 0 || c > m) {
        return Err(Error::InvalidCommittee(format!(
            "candidate {c} outside 1..={m}"
        )));
    }
    let w = Committee::new(members.iter().map(|c| c - 1).collect());
    if w.len() != members.len() {
        return Err(Error::InvalidCommittee("repeated candidate".into()));
    }
    Ok(w)
}

/// Reads a lottery (preferred) or a single committee from JSON. A
/// `fractional` field, if present, must equal the lottery's marginals.
pub fn parse_outcome(text: &str, inst: &Instance) -> Result<Outcome> {
    let file: OutcomeFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("outcome: {e}")))?;
    if let Some(entries) = file.lottery {
        let entries = entries
            .iter()
            .map(|e| {
                Ok((
                    e.probability.clone(),
                    committee_from(&e.committee, inst.m())?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let lottery = RandomizedCommittee::new(entries, inst.m(), inst.k())?;
        if let Some(p) = file.fractional {
            if marginals(&lottery).values() != p.as_slice() {
                return Err(Error::InvalidLottery(
                    "fractional committee differs from the lottery marginals".into(),
                ));
            }
        }
        return Ok(Outcome::Lottery(lottery));
    }
    match file.committee {
        Some(members) => Ok(Outcome::Committee(committee_from(&members, inst.m())?)),
        None => Err(Error::Parse(
            "outcome has neither a lottery nor a committee".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::{verify_outcome, Axiom};
    use crate::bw_mes::Completion;
    use crate::harness::{run_rule, Rule};
    use crate::limits::Limits;
    use crate::rational::ratio;

    fn inst() -> Instance {
        Instance::new(4, 2, vec![vec![0, 1], vec![0, 2], vec![3]]).unwrap()
    }

    #[test]
    fn report_round_trip_reproduces_verdicts() {
        let inst = inst();
        let axioms = [Axiom::Gfs, Axiom::StrongUfs, Axiom::Fjr];
        let limits = Limits::default();
        let out = run_rule(&inst, Rule::BwGcr, Completion::Default).unwrap();
        let verdicts = verify_outcome(&inst, &out.outcome, &axioms, &limits).unwrap();
        let report = RunReport::new("bw-gcr", &inst, &out, &verdicts, Duration::from_micros(5));
        let text = report.to_json();
        let back = RunReport::parse(&text).unwrap();
        assert_eq!(back, report);

        let outcome = parse_outcome(&text, &inst).unwrap();
        assert_eq!(outcome, out.outcome);
        let again: Vec<VerdictRecord> = verify_outcome(&inst, &outcome, &axioms, &limits)
            .unwrap()
            .iter()
            .map(VerdictRecord::from)
            .collect();
        assert_eq!(again, back.verdicts);
        // GFS fails at the first two voters: 1 < 4/3
        let gfs = &back.verdicts[0];
        assert!(!gfs.satisfied);
        let w = gfs.witness.as_ref().unwrap();
        assert_eq!(w.voters, vec![1, 2]);
        assert_eq!((w.lhs.clone(), w.rhs.clone()), (ratio(1, 1), ratio(4, 3)));
    }

    #[test]
    fn rationals_are_strings() {
        let inst = inst();
        let out = run_rule(&inst, Rule::RandomDictator, Completion::Default).unwrap();
        let text = RunReport::new("random-dictator", &inst, &out, &[], Duration::ZERO).to_json();
        assert!(text.contains("\"1/3\""));
        assert!(!text.contains("0.33"));
    }

    #[test]
    fn outcome_errors() {
        let inst = inst();
        assert!(parse_outcome(r#"{"committee":[5]}"#, &inst).is_err());
        assert!(parse_outcome(r#"{"committee":[1,1]}"#, &inst).is_err());
        assert!(parse_outcome(r#"{}"#, &inst).is_err());
        let bad_sum = r#"{"lottery":[{"probability":"1/2","committee":[1,2]}]}"#;
        assert!(matches!(
            parse_outcome(bad_sum, &inst),
            Err(Error::InvalidLottery(_))
        ));
        let mismatch = r#"{"fractional":["1/1","0/1","1/1","0/1"],
            "lottery":[{"probability":"1/1","committee":[1,4]}]}"#;
        assert!(matches!(
            parse_outcome(mismatch, &inst),
            Err(Error::InvalidLottery(_))
        ));
        assert_eq!(
            parse_outcome(r#"{"committee":[4,1]}"#, &inst).unwrap(),
            Outcome::Committee(Committee::new(vec![0, 3]))
        );
    }

    #[test]
    fn digest_is_stable() {
        let d = instance_digest(&inst());
        assert_eq!(d.len(), 64);
        assert_eq!(d, instance_digest(&inst()));
    }
}
