use crate::committee::{marginals, Committee, FractionalCommittee, RandomizedCommittee};
use crate::error::Result;
use crate::instance::Instance;
use crate::rational::{self, Rational};

/// A favourite committee of `voter`: the `min(k, |A_i|)` lowest-index
/// approved candidates, padded with the lowest-index others.
fn favourite(inst: &Instance, voter: usize) -> Committee {
    let approved = inst.ballot(voter);
    let mut members: Vec<usize> = approved.iter().copied().take(inst.k()).collect();
    let padding = (0..inst.m()).filter(|c| approved.binary_search(c).is_err());
    members.extend(padding.take(inst.k() - members.len()));
    Committee::new(members)
}

/// Random Dictator: each voter, with probability `1/n`, picks a favourite
/// committee. Ties between favourites are broken by lowest index, so the
/// result is deterministic.
pub fn random_dictator(inst: &Instance) -> Result<(FractionalCommittee, RandomizedCommittee)> {
    let weight: Rational = rational::ratio(1, inst.n() as i64);
    let entries: Vec<_> = (0..inst.n())
        .map(|i| (weight.clone(), favourite(inst, i)))
        .collect();
    let lottery = RandomizedCommittee::merged(entries, inst.m(), inst.k())?;
    Ok((marginals(&lottery), lottery))
}
