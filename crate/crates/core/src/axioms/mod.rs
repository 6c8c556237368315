//! Exact verifiers for the ex-post (integral) and ex-ante (fractional)
//! fairness axioms.
//!
//! Every checker returns a [`Verdict`]. A violated verdict carries a
//! [`Witness`]: the offending voters, the relevant candidates, the level `ℓ`
//! or `β` where one applies, and the failing inequality with both sides as
//! exact rationals. For ex-post axioms the inequality is "some member of the
//! group has at least `level` approved committee members" (`lhs` is the best
//! member's overlap); for PJR it is the overlap of the group's union with the
//! committee.

mod ex_ante;
mod ex_post;

use std::fmt;
use std::str::FromStr;

pub use ex_ante::{
    check_gfs, check_gfs_with, check_ifs, check_positive_share, check_strong_gfs_capped,
    check_strong_gfs_capped_with, check_strong_ifs, check_strong_ufs, check_ufs,
};
pub use ex_post::{
    check_ejr, check_ejr_plus, check_ejr_with, check_fjr, check_fjr_with, check_jr, check_pjr,
    check_pjr_with,
};

use crate::committee::{marginals, Committee, FractionalCommittee, RandomizedCommittee};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::limits::{Limits, HARD_CAP};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Jr,
    Pjr,
    Ejr,
    EjrPlus,
    Fjr,
    PositiveShare,
    Ifs,
    StrongIfs,
    Ufs,
    StrongUfs,
    Gfs,
    StrongGfsCapped,
}

impl Axiom {
    pub const ALL: [Axiom; 12] = [
        Axiom::Jr,
        Axiom::Pjr,
        Axiom::Ejr,
        Axiom::EjrPlus,
        Axiom::Fjr,
        Axiom::PositiveShare,
        Axiom::Ifs,
        Axiom::StrongIfs,
        Axiom::Ufs,
        Axiom::StrongUfs,
        Axiom::Gfs,
        Axiom::StrongGfsCapped,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Jr => "jr",
            Axiom::Pjr => "pjr",
            Axiom::Ejr => "ejr",
            Axiom::EjrPlus => "ejr+",
            Axiom::Fjr => "fjr",
            Axiom::PositiveShare => "positive-share",
            Axiom::Ifs => "ifs",
            Axiom::StrongIfs => "strong-ifs",
            Axiom::Ufs => "ufs",
            Axiom::StrongUfs => "strong-ufs",
            Axiom::Gfs => "gfs",
            Axiom::StrongGfsCapped => "strong-gfs",
        }
    }

    /// Ex-post axioms are judged on every committee in the support.
    pub fn is_ex_post(self) -> bool {
        matches!(
            self,
            Axiom::Jr | Axiom::Pjr | Axiom::Ejr | Axiom::EjrPlus | Axiom::Fjr
        )
    }

    /// Parses a comma-separated list; empty input gives an empty list.
    pub fn parse_list(text: &str) -> Result<Vec<Axiom>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let alias = match lower.as_str() {
            "ejr-plus" => "ejr+",
            "strong-gfs-capped" => "strong-gfs",
            other => other,
        };
        Axiom::ALL
            .into_iter()
            .find(|a| a.name() == alias)
            .ok_or_else(|| Error::Parse(format!("unknown axiom {s:?}")))
    }
}

/// The relation the axiom requires between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    AtLeast,
    GreaterThan,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::AtLeast => lhs >= rhs,
            Relation::GreaterThan => lhs > rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtLeast => ">=",
            Relation::GreaterThan => ">",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub voters: Vec<usize>,
    pub candidates: Vec<usize>,
    /// `ℓ` for JR/PJR/EJR/EJR+, `β` for FJR.
    pub level: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    /// The support committee that fails, when a lottery was checked.
    pub committee: Option<Committee>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub axiom: Axiom,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn satisfied(&self) -> bool {
        self.witness.is_none()
    }

    pub(crate) fn pass(axiom: Axiom) -> Self {
        Verdict {
            axiom,
            witness: None,
        }
    }

    pub(crate) fn fail(axiom: Axiom, witness: Witness) -> Self {
        debug_assert!(!witness.relation.holds(&witness.lhs, &witness.rhs));
        Verdict {
            axiom,
            witness: Some(witness),
        }
    }
}

/// Something to verify: a lottery or a single committee of any size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Lottery(RandomizedCommittee),
    Committee(Committee),
}

pub fn check_committee(
    axiom: Axiom,
    w: &Committee,
    inst: &Instance,
    limits: &Limits,
) -> Result<Verdict> {
    match axiom {
        Axiom::Jr => Ok(check_jr(w, inst)),
        Axiom::Pjr => check_pjr_with(w, inst, limits),
        Axiom::Ejr => check_ejr_with(w, inst, limits),
        Axiom::EjrPlus => Ok(check_ejr_plus(w, inst)),
        Axiom::Fjr => check_fjr_with(w, inst, limits),
        _ => check_fractional(
            axiom,
            &FractionalCommittee::indicator(w.members(), inst.m()),
            inst,
            limits,
        ),
    }
}

pub fn check_fractional(
    axiom: Axiom,
    p: &FractionalCommittee,
    inst: &Instance,
    limits: &Limits,
) -> Result<Verdict> {
    if p.m() != inst.m() {
        return Err(Error::InvalidFractional(format!(
            "{} probabilities for {} candidates",
            p.m(),
            inst.m()
        )));
    }
    match axiom {
        Axiom::PositiveShare => Ok(check_positive_share(p, inst)),
        Axiom::Ifs => Ok(check_ifs(p, inst)),
        Axiom::StrongIfs => Ok(check_strong_ifs(p, inst)),
        Axiom::Ufs => Ok(check_ufs(p, inst)),
        Axiom::StrongUfs => Ok(check_strong_ufs(p, inst)),
        Axiom::Gfs => check_gfs_with(p, inst, limits),
        Axiom::StrongGfsCapped => check_strong_gfs_capped_with(p, inst, limits),
        ex_post => Err(Error::Parse(format!(
            "{ex_post} is an ex-post axiom and needs integral committees"
        ))),
    }
}

/// Checks each axiom: ex-post ones on every support committee (reporting the
/// first failure), ex-ante ones on the implemented fractional committee.
pub fn verify_outcome(
    inst: &Instance,
    outcome: &Outcome,
    axioms: &[Axiom],
    limits: &Limits,
) -> Result<Vec<Verdict>> {
    axioms
        .iter()
        .map(|&axiom| match outcome {
            Outcome::Committee(w) => check_committee(axiom, w, inst, limits),
            Outcome::Lottery(x) if axiom.is_ex_post() => {
                for w in x.support() {
                    let mut verdict = check_committee(axiom, w, inst, limits)?;
                    if let Some(witness) = verdict.witness.as_mut() {
                        witness.committee = Some(w.clone());
                        return Ok(verdict);
                    }
                }
                Ok(Verdict::pass(axiom))
            }
            Outcome::Lottery(x) => check_fractional(axiom, &marginals(x), inst, limits),
        })
        .collect()
}

pub(crate) fn masks_for(inst: &Instance) -> Result<Vec<u64>> {
    if inst.m() > HARD_CAP {
        return Err(Error::SizeLimitExceeded {
            what: "m",
            value: inst.m(),
            limit: HARD_CAP,
        });
    }
    Ok(inst.ballot_masks())
}

pub(crate) fn mask_of(members: &[usize]) -> u64 {
    members.iter().fold(0u64, |acc, &c| acc | (1u64 << c))
}

pub(crate) fn members_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&b| mask & (1u64 << b) != 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_names_round_trip() {
        for a in Axiom::ALL {
            assert_eq!(a.name().parse::<Axiom>().unwrap(), a);
        }
        assert_eq!(
            Axiom::parse_list("gfs, strong-ufs,ejr+").unwrap(),
            vec![Axiom::Gfs, Axiom::StrongUfs, Axiom::EjrPlus]
        );
        assert!(Axiom::parse_list("").unwrap().is_empty());
        assert!(Axiom::parse_list("core").is_err());
    }
}
