//! Probability transforms of belief functions, and belief-function
//! inference from likelihood vectors (Bayesian, Dirichlet, consonant).

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::{MassFunction, Mode, PRUNE_TOL};

/// A probability distribution over the singletons of a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    frame: Frame,
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(frame: Frame, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != frame.size() {
            return Err(Error::InvalidArgument(format!(
                "{} probabilities for a frame of {}",
                probs.len(),
                frame.size()
            )));
        }
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|p| !p.is_finite() || *p < -1e-9) || (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "probabilities must be non-negative and sum to 1 (sum = {sum})"
            )));
        }
        Ok(ProbabilityDistribution {
            frame,
            probs: probs.iter().map(|p| p.max(0.0)).collect(),
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn values(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, i: usize) -> f64 {
        self.probs[i]
    }

    /// Probability of an event as the sum over its singletons.
    pub fn prob_of(&self, set: &Subset) -> f64 {
        set.iter().map(|i| self.probs[i]).sum()
    }

    pub fn to_mass(&self) -> MassFunction {
        MassFunction::bayesian(self.frame.clone(), &self.probs).expect("valid distribution")
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.frame.same_as(&other.frame)
            && self
                .probs
                .iter()
                .zip(other.probs.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Smets' pignistic transform: each focal mass is split equally among the
/// elements of its focal set. `BetP` is the barycenter of the credal set.
pub fn pignistic(m: &MassFunction) -> Result<ProbabilityDistribution> {
    let frame = m.frame().clone();
    let mut probs = vec![0.0; frame.size()];
    for (set, mass) in m.focal_elements() {
        let card = set.cardinality();
        if card == 0 {
            return Err(Error::InvalidArgument(
                "pignistic transform requires a normalized mass function".into(),
            ));
        }
        let share = mass / card as f64;
        for i in set.iter() {
            probs[i] += share;
        }
    }
    ProbabilityDistribution::new(frame, probs)
}

/// Relative plausibility of singletons: `pl(x)` normalized over the frame.
pub fn relative_plausibility(m: &MassFunction) -> Result<ProbabilityDistribution> {
    let frame = m.frame().clone();
    let mut pl = vec![0.0; frame.size()];
    for (set, mass) in m.focal_elements() {
        for i in set.iter() {
            pl[i] += mass;
        }
    }
    let total: f64 = pl.iter().sum();
    if total <= PRUNE_TOL {
        return Err(Error::Degenerate(
            "all singleton plausibilities are zero".into(),
        ));
    }
    pl.iter_mut().for_each(|p| *p /= total);
    ProbabilityDistribution::new(frame, pl)
}

/// Relative belief of singletons: `b(x)` normalized over the frame. Errors
/// when no singleton carries mass (no fallback is applied).
pub fn relative_belief(m: &MassFunction) -> Result<ProbabilityDistribution> {
    let frame = m.frame().clone();
    let mut bel = vec![0.0; frame.size()];
    for (set, mass) in m.focal_elements() {
        if set.cardinality() == 1 {
            bel[set.iter().next().unwrap()] += mass;
        }
    }
    let total: f64 = bel.iter().sum();
    if total <= PRUNE_TOL {
        return Err(Error::Degenerate(
            "relative belief is undefined: no singleton carries mass".into(),
        ));
    }
    bel.iter_mut().for_each(|p| *p /= total);
    ProbabilityDistribution::new(frame, bel)
}

/// Dirichlet belief function from a likelihood vector: singleton masses
/// proportional to the likelihoods scaled by `1 - m_theta`, the remainder on
/// the whole frame.
pub fn dirichlet_from_likelihoods(
    frame: &Frame,
    gammas: &[f64],
    m_theta: f64,
) -> Result<MassFunction> {
    if gammas.len() != frame.size() {
        return Err(Error::InvalidArgument(format!(
            "{} likelihoods for a frame of {}",
            gammas.len(),
            frame.size()
        )));
    }
    if !(0.0..=1.0).contains(&m_theta) {
        return Err(Error::InvalidArgument(format!(
            "m_theta {m_theta} outside [0,1]"
        )));
    }
    if gammas.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::InvalidArgument(
            "likelihoods must be finite and non-negative".into(),
        ));
    }
    let total: f64 = gammas.iter().sum();
    if total <= 0.0 {
        return Err(Error::Degenerate("all likelihoods are zero".into()));
    }
    let mut entries: Vec<(Subset, f64)> = gammas
        .iter()
        .enumerate()
        .map(|(i, &g)| (frame.singleton(i), g / total * (1.0 - m_theta)))
        .collect();
    entries.push((frame.full(), m_theta));
    MassFunction::new(frame.clone(), entries, Mode::Normalized)
}

/// Consonant belief function from a likelihood vector: the focal elements
/// are the nested upper-level sets of the likelihoods and the singleton
/// plausibilities equal `gamma_x / gamma_max`. Tied values merge into a
/// single nesting step.
pub fn consonant_from_likelihoods(frame: &Frame, gammas: &[f64]) -> Result<MassFunction> {
    if gammas.len() != frame.size() {
        return Err(Error::InvalidArgument(format!(
            "{} likelihoods for a frame of {}",
            gammas.len(),
            frame.size()
        )));
    }
    if gammas.iter().any(|g| !g.is_finite() || *g < 0.0) {
        return Err(Error::InvalidArgument(
            "likelihoods must be finite and non-negative".into(),
        ));
    }
    let mut levels: Vec<f64> = gammas.iter().copied().filter(|g| *g > 0.0).collect();
    if levels.is_empty() {
        return Err(Error::Degenerate("all likelihoods are zero".into()));
    }
    levels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    levels.dedup();
    let gamma_max = levels[0];

    let mut entries = Vec::with_capacity(levels.len());
    for (t, &level) in levels.iter().enumerate() {
        let upper = frame.subset_of_indices((0..frame.size()).filter(|&i| gammas[i] >= level));
        let next = levels.get(t + 1).copied().unwrap_or(0.0);
        entries.push((upper, (level - next) / gamma_max));
    }
    MassFunction::new(frame.clone(), entries, Mode::Normalized)
}
