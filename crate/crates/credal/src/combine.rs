//! Evidence fusion and conditioning rules.
//!
//! Dempster's rule is the normalized pairwise-intersection product of
//! masses; the conjunctive rule is its unnormalized variant, retaining the
//! conflict mass on the empty set. Both are implemented as sparse double
//! loops over focal pairs with hash accumulation, `O(|E1|·|E2|)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::Subset;
use crate::mass::{mobius_inverse, MassFunction, Mode, MASS_TOL, PRUNE_TOL};

/// Conflict between two combined belief functions.
///
/// `kappa` is the mass the conjunctive product assigns to the empty set;
/// `weight` is the natural-log weight of conflict `-ln(1 - kappa)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConflictReport {
    pub kappa: f64,
    pub weight: f64,
}

/// True iff the cores intersect, i.e. Dempster's combination exists.
pub fn combinable(m1: &MassFunction, m2: &MassFunction) -> Result<bool> {
    m1.frame().ensure_same(m2.frame(), "combinable")?;
    Ok(m1.core().intersects(&m2.core()))
}

fn conjunctive_product(m1: &MassFunction, m2: &MassFunction) -> Result<BTreeMap<Subset, f64>> {
    m1.frame().ensure_same(m2.frame(), "combination")?;
    let mut acc: BTreeMap<Subset, f64> = BTreeMap::new();
    for (a, ma) in m1.focal_elements() {
        for (b, mb) in m2.focal_elements() {
            let inter = a.intersection(b);
            *acc.entry(inter).or_insert(0.0) += ma * mb;
        }
    }
    Ok(acc)
}

/// Dempster's rule of combination. Fails with `NonCombinable` on total
/// conflict (`kappa = 1`).
pub fn dempster_combine(
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<(MassFunction, ConflictReport)> {
    let acc = conjunctive_product(m1, m2)?;
    let frame = m1.frame().clone();
    let kappa = acc.get(&frame.empty()).copied().unwrap_or(0.0);
    if kappa >= 1.0 - PRUNE_TOL {
        return Err(Error::NonCombinable(format!(
            "total conflict between {} and {}",
            frame.describe(&m1.core()),
            frame.describe(&m2.core())
        )));
    }
    let entries: Vec<(Subset, f64)> = acc
        .into_iter()
        .filter(|(s, _)| !s.is_empty())
        .map(|(s, m)| (s, m / (1.0 - kappa)))
        .collect();
    let combined = MassFunction::new(frame, entries, Mode::Normalized)?;
    Ok((
        combined,
        ConflictReport {
            kappa,
            weight: -(1.0 - kappa).ln(),
        },
    ))
}

/// Conjunctive (unnormalized) combination: conflict stays on the empty set.
pub fn conjunctive_combine(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let acc = conjunctive_product(m1, m2)?;
    MassFunction::new(m1.frame().clone(), acc, Mode::Unnormalized)
}

/// Left fold of Dempster's rule over a sequence.
pub fn dempster_combine_all(ms: &[MassFunction]) -> Result<MassFunction> {
    let (first, rest) = ms
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("nothing to combine".into()))?;
    let mut acc = first.clone();
    for m in rest {
        acc = dempster_combine(&acc, m)?.0;
    }
    Ok(acc)
}

/// Total natural-log weight of conflict of a sequence, folded left.
/// Weights of conflict combine additively along the fold.
pub fn weight_of_conflict(ms: &[MassFunction]) -> Result<f64> {
    let (first, rest) = ms
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("nothing to combine".into()))?;
    let mut acc = first.clone();
    let mut total = 0.0;
    for m in rest {
        let (next, report) = dempster_combine(&acc, m)?;
        total += report.weight;
        acc = next;
    }
    Ok(total)
}

/// Dempster's rule of conditioning: combination with the categorical belief
/// function on `event`. Satisfies `pl(A|B) = pl(A ∩ B) / pl(B)`.
pub fn dempster_condition(m: &MassFunction, event: &Subset) -> Result<MassFunction> {
    let cat = MassFunction::categorical(m.frame().clone(), event.clone())?;
    Ok(dempster_combine(m, &cat)?.0)
}

/// Geometric conditioning: belief values satisfy
/// `b_G(A|B) = b(A ∩ B) / b(B)`. Built by Moebius inversion of the
/// conditioned belief table, so the frame must be within the enumeration
/// cap; fails when the quotient table is not a belief function.
pub fn geometric_condition(m: &MassFunction, event: &Subset) -> Result<MassFunction> {
    let denom = m.belief(event)?;
    if denom <= PRUNE_TOL {
        return Err(Error::Degenerate(format!(
            "geometric conditioning on {} with zero belief",
            m.frame().describe(event)
        )));
    }
    let bel = m.belief_table()?;
    let n = m.frame().size();
    let mask = event.mask() as usize;
    let table: Vec<f64> = (0..1usize << n).map(|a| bel[a & mask] / denom).collect();
    mobius_inverse(m.frame(), &table)
}

/// Uniform discounting: every focal mass is scaled by `1 - eps` and `eps`
/// is added to the whole frame.
pub fn discount(m: &MassFunction, eps: f64) -> Result<MassFunction> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::InvalidArgument(format!(
            "discount rate {eps} outside [0,1]"
        )));
    }
    let frame = m.frame().clone();
    let full = frame.full();
    let mut entries: Vec<(Subset, f64)> = m
        .focal_elements()
        .map(|(s, v)| (s.clone(), v * (1.0 - eps)))
        .collect();
    entries.push((full, eps));
    MassFunction::new(frame, entries, m.mode())
}

impl ConflictReport {
    /// Check the defining relation between the two fields.
    pub fn consistent(&self) -> bool {
        (self.weight - -(1.0 - self.kappa).ln()).abs() < MASS_TOL
    }
}
