//! Basic probability assignments and the belief/plausibility calculus.
//!
//! A [`MassFunction`] is a sparse map from focal elements (subsets of a
//! frame) to strictly positive masses summing to one. In
//! [`Mode::Normalized`] the empty set carries no mass; in
//! [`Mode::Unnormalized`] an empty-set entry is allowed and records conflict
//! retained by the conjunctive rule.
//!
//! Everything here is immutable after construction and safe to share across
//! threads.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::limits::check_enum_cap;

/// Tolerance for normalization and equality checks.
pub const MASS_TOL: f64 = 1e-9;
/// Masses below this after arithmetic are pruned and the rest renormalized.
pub const PRUNE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Normalized,
    Unnormalized,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Normalized => "normalized",
            Mode::Unnormalized => "unnormalized",
        }
    }
}

/// A basic probability assignment over a frame.
#[derive(Debug, Clone)]
pub struct MassFunction {
    frame: Frame,
    focal: BTreeMap<Subset, f64>,
    mode: Mode,
}

/// Boolean classification of a mass function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub bayesian: bool,
    pub consonant: bool,
    pub simple_support: bool,
    pub vacuous: bool,
}

impl MassFunction {
    /// Build a mass function from `(set, mass)` entries.
    ///
    /// Entries with the same set accumulate. Masses must be non-negative and
    /// sum to one within `1e-9`; entries below the pruning threshold are
    /// dropped and the remainder renormalized exactly.
    pub fn new<I>(frame: Frame, entries: I, mode: Mode) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut focal: BTreeMap<Subset, f64> = BTreeMap::new();
        for (set, mass) in entries {
            if set.universe_len() != frame.size() {
                return Err(Error::FrameMismatch(format!(
                    "set over {} elements on a frame of {}",
                    set.universe_len(),
                    frame.size()
                )));
            }
            if !mass.is_finite() || mass < -MASS_TOL {
                return Err(Error::InvalidMass {
                    set: frame.describe(&set),
                    mass,
                });
            }
            if set.is_empty() && mode == Mode::Normalized && mass > MASS_TOL {
                return Err(Error::EmptySetMass);
            }
            *focal.entry(set).or_insert(0.0) += mass.max(0.0);
        }
        let sum: f64 = focal.values().sum();
        if (sum - 1.0).abs() > MASS_TOL {
            return Err(Error::NotNormalized {
                sum,
                mode: mode.as_str(),
            });
        }
        let mut mf = MassFunction { frame, focal, mode };
        mf.prune();
        Ok(mf)
    }

    fn prune(&mut self) {
        self.focal
            .retain(|s, m| *m > PRUNE_TOL && !(self.mode == Mode::Normalized && s.is_empty()));
        let sum: f64 = self.focal.values().sum();
        if sum > 0.0 {
            for m in self.focal.values_mut() {
                *m /= sum;
            }
        }
    }

    /// All mass on the whole frame: the representation of total ignorance.
    pub fn vacuous(frame: Frame) -> Self {
        let full = frame.full();
        MassFunction {
            frame,
            focal: [(full, 1.0)].into(),
            mode: Mode::Normalized,
        }
    }

    /// All mass on one non-empty set.
    pub fn categorical(frame: Frame, set: Subset) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::InvalidArgument(
                "categorical set must be non-empty".into(),
            ));
        }
        MassFunction::new(frame, [(set, 1.0)], Mode::Normalized)
    }

    /// Mass `sigma` on `focus`, the rest on the whole frame.
    pub fn simple_support(frame: Frame, focus: Subset, sigma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&sigma) {
            return Err(Error::InvalidArgument(format!(
                "support degree {sigma} outside [0,1]"
            )));
        }
        let full = frame.full();
        MassFunction::new(
            frame,
            [(focus, sigma), (full, 1.0 - sigma)],
            Mode::Normalized,
        )
    }

    /// Bayesian mass function from a probability vector over singletons.
    pub fn bayesian(frame: Frame, probs: &[f64]) -> Result<Self> {
        if probs.len() != frame.size() {
            return Err(Error::InvalidArgument(format!(
                "{} probabilities for a frame of {}",
                probs.len(),
                frame.size()
            )));
        }
        let entries: Vec<(Subset, f64)> = probs
            .iter()
            .enumerate()
            .map(|(i, &p)| (frame.singleton(i), p))
            .collect();
        MassFunction::new(frame, entries, Mode::Normalized)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn focal_elements(&self) -> impl Iterator<Item = (&Subset, f64)> {
        self.focal.iter().map(|(s, &m)| (s, m))
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    pub fn mass(&self, set: &Subset) -> f64 {
        self.focal.get(set).copied().unwrap_or(0.0)
    }

    /// Conflict mass `m(∅)` (zero in normalized mode).
    pub fn empty_set_mass(&self) -> f64 {
        self.mass(&self.frame.empty())
    }

    fn require_normalized(&self, what: &str) -> Result<()> {
        if self.mode == Mode::Normalized {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "{what} requires a normalized mass function"
            )))
        }
    }

    /// Belief (lower probability) of an event: mass of all focal elements
    /// contained in it. (`0.0 +` maps the empty sum's negative zero back
    /// to plain zero.)
    pub fn belief(&self, set: &Subset) -> Result<f64> {
        self.check_set(set)?;
        self.require_normalized("belief")?;
        Ok(0.0
            + self
                .focal
                .iter()
                .filter(|(s, _)| s.is_subset_of(set))
                .map(|(_, m)| m)
                .sum::<f64>())
    }

    /// Plausibility (upper probability): mass of all focal elements meeting
    /// the event; equals `1 - belief(complement)`.
    pub fn plausibility(&self, set: &Subset) -> Result<f64> {
        self.check_set(set)?;
        self.require_normalized("plausibility")?;
        Ok(0.0
            + self
                .focal
                .iter()
                .filter(|(s, _)| s.intersects(set))
                .map(|(_, m)| m)
                .sum::<f64>())
    }

    fn check_set(&self, set: &Subset) -> Result<()> {
        if set.universe_len() != self.frame.size() {
            return Err(Error::FrameMismatch("event is not over this frame".into()));
        }
        Ok(())
    }

    /// Union of the focal elements.
    pub fn core(&self) -> Subset {
        let mut c = self.frame.empty();
        for (s, _) in self.focal_elements() {
            if !s.is_empty() {
                c = c.union(s);
            }
        }
        c
    }

    pub fn is_bayesian(&self) -> bool {
        self.focal.keys().all(|s| s.cardinality() == 1)
    }

    pub fn is_vacuous(&self) -> bool {
        self.focal.len() == 1 && self.focal.keys().next().unwrap().is_full()
    }

    /// Focal elements totally ordered by inclusion.
    pub fn is_consonant(&self) -> bool {
        let mut sets: Vec<&Subset> = self.focal.keys().collect();
        sets.sort_by_key(|s| s.cardinality());
        sets.windows(2).all(|w| w[0].is_subset_of(w[1]))
    }

    /// At most one focal element besides the whole frame.
    pub fn is_simple_support(&self) -> bool {
        let non_theta = self.focal.keys().filter(|s| !s.is_full()).count();
        non_theta <= 1
    }

    pub fn classify(&self) -> Classification {
        Classification {
            bayesian: self.is_bayesian(),
            consonant: self.is_consonant(),
            simple_support: self.is_simple_support(),
            vacuous: self.is_vacuous(),
        }
    }

    /// Full belief vector indexed by bitmask over a small frame,
    /// `bel[mask] = b(mask)`, computed by a fast zeta transform.
    pub fn belief_table(&self) -> Result<Vec<f64>> {
        self.require_normalized("belief_table")?;
        let n = self.frame.size();
        check_enum_cap(n)?;
        let mut table = vec![0.0f64; 1 << n];
        for (s, m) in self.focal_elements() {
            table[s.mask() as usize] += m;
        }
        zeta_in_place(&mut table, n);
        Ok(table)
    }

    /// Weak inclusion: `self(A) >= other(A)` for every event.
    pub fn weakly_includes(&self, other: &MassFunction) -> Result<bool> {
        self.frame.ensure_same(&other.frame, "weak inclusion")?;
        let a = self.belief_table()?;
        let b = other.belief_table()?;
        Ok(a.iter().zip(b.iter()).all(|(x, y)| *x >= *y - MASS_TOL))
    }

    /// Pointwise convex combination of mass functions.
    pub fn convex_combination(parts: &[MassFunction], weights: &[f64]) -> Result<MassFunction> {
        if parts.is_empty() || parts.len() != weights.len() {
            return Err(Error::InvalidArgument(
                "mismatched convex combination".into(),
            ));
        }
        let frame = parts[0].frame.clone();
        let mut entries: BTreeMap<Subset, f64> = BTreeMap::new();
        let wsum: f64 = weights.iter().sum();
        if (wsum - 1.0).abs() > MASS_TOL || weights.iter().any(|w| *w < -MASS_TOL) {
            return Err(Error::InvalidArgument("weights must be convex".into()));
        }
        let mode = if parts.iter().any(|p| p.mode == Mode::Unnormalized) {
            Mode::Unnormalized
        } else {
            Mode::Normalized
        };
        for (part, &w) in parts.iter().zip(weights.iter()) {
            frame.ensure_same(&part.frame, "convex combination")?;
            for (s, m) in part.focal_elements() {
                *entries.entry(s.clone()).or_insert(0.0) += w.max(0.0) * m;
            }
        }
        MassFunction::new(frame, entries, mode)
    }

    /// Drop the empty-set entry and renormalize; errors on total conflict.
    pub fn normalized_part(&self) -> Result<MassFunction> {
        let k = self.empty_set_mass();
        if (1.0 - k).abs() <= PRUNE_TOL {
            return Err(Error::TotalConflict);
        }
        let entries: Vec<(Subset, f64)> = self
            .focal_elements()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, m)| (s.clone(), m / (1.0 - k)))
            .collect();
        MassFunction::new(self.frame.clone(), entries, Mode::Normalized)
    }

    /// Same focal elements with masses within `tol` (absent entries count as
    /// zero mass).
    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        if !self.frame.same_as(&other.frame) {
            return false;
        }
        let keys: std::collections::BTreeSet<&Subset> =
            self.focal.keys().chain(other.focal.keys()).collect();
        keys.into_iter()
            .all(|k| (self.mass(k) - other.mass(k)).abs() <= tol)
    }
}

/// Moebius inversion: recover the unique mass function inducing a belief
/// table. `bel` is indexed by bitmask (length `2^n`) with `bel[0] = 0` and
/// `bel[full] = 1`. Fails when some recovered mass is below `-1e-9`, i.e.
/// the table violates superadditivity and is not a belief function.
pub fn mobius_inverse(frame: &Frame, bel: &[f64]) -> Result<MassFunction> {
    let n = frame.size();
    check_enum_cap(n)?;
    if bel.len() != 1 << n {
        return Err(Error::InvalidArgument(format!(
            "belief table of length {}, expected 2^{n}",
            bel.len()
        )));
    }
    if bel[0].abs() > MASS_TOL {
        return Err(Error::NotABeliefFunction(format!(
            "bel(empty) = {}",
            bel[0]
        )));
    }
    if (bel[(1 << n) - 1] - 1.0).abs() > MASS_TOL {
        return Err(Error::NotABeliefFunction(format!(
            "bel(frame) = {}",
            bel[(1 << n) - 1]
        )));
    }
    let mut table = bel.to_vec();
    mobius_in_place(&mut table, n);
    let mut entries = Vec::new();
    for (mask, &m) in table.iter().enumerate() {
        if m < -MASS_TOL {
            let set = Subset::from_mask(n, mask as u64);
            return Err(Error::NotABeliefFunction(format!(
                "recovered mass {m} on {}",
                frame.describe(&set)
            )));
        }
        if m > PRUNE_TOL && mask != 0 {
            entries.push((Subset::from_mask(n, mask as u64), m));
        }
    }
    MassFunction::new(frame.clone(), entries, Mode::Normalized)
}

/// In-place zeta transform over the subset lattice: `f[A] <- sum_{B ⊆ A} f[B]`.
pub fn zeta_in_place(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..f.len() {
            if mask & bit != 0 {
                f[mask] += f[mask ^ bit];
            }
        }
    }
}

/// In-place Moebius transform, the inverse of [`zeta_in_place`].
pub fn mobius_in_place(f: &mut [f64], n: usize) {
    for i in 0..n {
        let bit = 1usize << i;
        for mask in 0..f.len() {
            if mask & bit != 0 {
                f[mask] -= f[mask ^ bit];
            }
        }
    }
}
