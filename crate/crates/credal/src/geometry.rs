//! The belief space as a simplex.
//!
//! Belief functions on a frame of size `n` are points of `R^(2^n - 2)`,
//! with one coordinate per non-trivial event (the values on the empty set
//! and on the whole frame are fixed). This module exposes the credal-set
//! vertices of a belief function, the constant-L1 geometry of consistent
//! probabilities, conditional subspaces, the convex-combination behaviour
//! of Dempster's rule, and the closed-form constructions available on
//! binary frames.

use crate::combine::{conjunctive_combine, dempster_combine};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::limits::check_enum_cap;
use crate::mass::{MassFunction, Mode, PRUNE_TOL};
use crate::transform::ProbabilityDistribution;

/// Largest frame for which permutation vertices are enumerated.
pub const PERMUTATION_CAP: usize = 10;
/// Largest number of focal-selection vertices enumerated.
pub const SELECTION_CAP: usize = 1 << 20;
/// Largest core for conditional-subspace enumeration.
pub const CORE_CAP: usize = 16;

/// Dense vector of belief values over all events `∅ ⊊ A ⊊ Θ`, ordered by
/// ascending bitmask so serialized vectors are reproducible.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefVector {
    frame: Frame,
    values: Vec<f64>,
}

impl BeliefVector {
    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Coordinates in ascending bitmask order; index `k` holds `b(k + 1)`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value_of_mask(&self, mask: u64) -> f64 {
        let full = (1u64 << self.frame.size()) - 1;
        if mask == 0 {
            0.0
        } else if mask == full {
            1.0
        } else {
            self.values[(mask - 1) as usize]
        }
    }

    /// Recover the mass function by Moebius inversion; fails when the vector
    /// is not superadditive.
    pub fn to_mass(&self) -> Result<MassFunction> {
        let n = self.frame.size();
        let mut table = vec![0.0; 1 << n];
        for (k, v) in self.values.iter().enumerate() {
            table[k + 1] = *v;
        }
        table[(1 << n) - 1] = 1.0;
        crate::mass::mobius_inverse(&self.frame, &table)
    }

    /// Pointwise convex combination in belief coordinates.
    pub fn convex(parts: &[&BeliefVector], weights: &[f64]) -> Result<BeliefVector> {
        if parts.is_empty() || parts.len() != weights.len() {
            return Err(Error::InvalidArgument(
                "mismatched convex combination".into(),
            ));
        }
        let frame = parts[0].frame.clone();
        let mut values = vec![0.0; parts[0].values.len()];
        for (part, &w) in parts.iter().zip(weights) {
            frame.ensure_same(&part.frame, "belief vectors")?;
            for (acc, v) in values.iter_mut().zip(part.values.iter()) {
                *acc += w * v;
            }
        }
        Ok(BeliefVector { frame, values })
    }

    pub fn approx_eq(&self, other: &BeliefVector, tol: f64) -> bool {
        self.frame.same_as(&other.frame)
            && self
                .values
                .iter()
                .zip(other.values.iter())
                .all(|(a, b)| (a - b).abs() <= tol)
    }
}

/// Belief coordinates of a mass function (frame within the enumeration cap).
pub fn to_belief_vector(m: &MassFunction) -> Result<BeliefVector> {
    let table = m.belief_table()?;
    let n = m.frame().size();
    Ok(BeliefVector {
        frame: m.frame().clone(),
        values: table[1..(1 << n) - 1].to_vec(),
    })
}

/// The vertices of the credal set of a belief function.
///
/// `by_permutation` lists one distribution per permutation of the frame (in
/// lexicographic permutation order, with repeats): the mass of each focal
/// element goes to its earliest element. `by_selection` lists one
/// distribution per choice of a single element from each focal element
/// (`Π_k |A_k|` entries); it contains every permutation vertex and is the
/// enumeration used when a credal polytope is listed exhaustively.
#[derive(Debug, Clone)]
pub struct CredalVertexSet {
    pub by_permutation: Vec<ProbabilityDistribution>,
    pub by_selection: Vec<ProbabilityDistribution>,
}

impl CredalVertexSet {
    /// Distinct vertices (1e-9 tolerance) of the permutation list.
    pub fn unique(&self) -> Vec<ProbabilityDistribution> {
        let mut out: Vec<ProbabilityDistribution> = Vec::new();
        for p in &self.by_permutation {
            if !out.iter().any(|q| q.approx_eq(p, 1e-9)) {
                out.push(p.clone());
            }
        }
        out
    }

    /// Distinct selection vertices (1e-9 tolerance).
    pub fn unique_selections(&self) -> Vec<ProbabilityDistribution> {
        let mut out: Vec<ProbabilityDistribution> = Vec::new();
        for p in &self.by_selection {
            if !out.iter().any(|q| q.approx_eq(p, 1e-9)) {
                out.push(p.clone());
            }
        }
        out
    }

    /// Average of the permutation list, with multiplicity.
    pub fn permutation_average(&self) -> ProbabilityDistribution {
        average(&self.by_permutation)
    }
}

fn average(list: &[ProbabilityDistribution]) -> ProbabilityDistribution {
    let frame = list[0].frame().clone();
    let mut acc = vec![0.0; frame.size()];
    for p in list {
        for (a, v) in acc.iter_mut().zip(p.values()) {
            *a += v;
        }
    }
    let k = list.len() as f64;
    acc.iter_mut().for_each(|a| *a /= k);
    ProbabilityDistribution::new(frame, acc).expect("average of distributions")
}

/// Enumerate the credal-set vertices of a normalized mass function.
pub fn credal_vertices(m: &MassFunction) -> Result<CredalVertexSet> {
    let frame = m.frame().clone();
    let n = frame.size();
    if n > PERMUTATION_CAP {
        return Err(Error::OperationTooLarge {
            what: "credal vertex enumeration",
            size: n,
            cap: PERMUTATION_CAP,
        });
    }
    let focal: Vec<(Subset, f64)> = m.focal_elements().map(|(s, v)| (s.clone(), v)).collect();
    if focal.iter().any(|(s, _)| s.is_empty()) {
        return Err(Error::InvalidArgument(
            "credal vertices need a normalized input".into(),
        ));
    }

    let mut by_permutation = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut probs = vec![0.0; n];
        let mut seen = frame.empty();
        for &x in &perm {
            let share: f64 = focal
                .iter()
                .filter(|(s, _)| s.contains(x) && !s.intersects(&seen))
                .map(|(_, v)| v)
                .sum();
            probs[x] = share;
            seen.insert(x);
        }
        by_permutation.push(ProbabilityDistribution::new(frame.clone(), probs)?);
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let members: Vec<Vec<usize>> = focal.iter().map(|(s, _)| s.iter().collect()).collect();
    let count: usize = members.iter().map(|m| m.len()).product();
    if count > SELECTION_CAP {
        return Err(Error::OperationTooLarge {
            what: "credal selection enumeration",
            size: count,
            cap: SELECTION_CAP,
        });
    }
    let mut by_selection = Vec::with_capacity(count);
    let mut choice = vec![0usize; focal.len()];
    loop {
        let mut probs = vec![0.0; n];
        for (k, (_, v)) in focal.iter().enumerate() {
            probs[members[k][choice[k]]] += v;
        }
        by_selection.push(ProbabilityDistribution::new(frame.clone(), probs)?);
        // Odometer over per-focal-element choices, last position fastest.
        let mut pos = focal.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < members[pos].len() {
                break;
            }
            choice[pos] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            break;
        }
    }

    Ok(CredalVertexSet {
        by_permutation,
        by_selection,
    })
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// L1 distance between a belief function and a probability, summed over all
/// events. For probabilities dominating the belief function this is constant
/// and depends only on the belief function.
pub fn l1_distance(m: &MassFunction, p: &ProbabilityDistribution) -> Result<f64> {
    m.frame().ensure_same(p.frame(), "L1 distance")?;
    let bel = m.belief_table()?;
    let n = m.frame().size();
    let mut ptable = vec![0.0f64; 1 << n];
    for mask in 1usize..1 << n {
        let low = mask.trailing_zeros() as usize;
        ptable[mask] = ptable[mask & (mask - 1)] + p.prob(low);
    }
    Ok(bel
        .iter()
        .zip(ptable.iter())
        .map(|(b, q)| (b - q).abs())
        .sum())
}

/// Closed-form value of the constant L1 distance between a belief function
/// and any dominating probability.
pub fn l1_constant(m: &MassFunction) -> Result<f64> {
    let core = m.core();
    let n = m.frame().size();
    check_enum_cap(n)?;
    let core_size = core.cardinality();
    let outside = n - core_size;
    // Sum of belief over the non-empty proper subsets of the core.
    let members: Vec<usize> = core.iter().collect();
    let mut sum = 0.0;
    for mask in 1u64..(1u64 << core_size) - 1 {
        let mut set = m.frame().empty();
        for (k, &x) in members.iter().enumerate() {
            if mask & (1 << k) != 0 {
                set.insert(x);
            }
        }
        sum += m.belief(&set)?;
    }
    Ok((1u64 << outside) as f64 * (((1u64 << (core_size - 1)) - 1) as f64 - sum))
}

/// Slack of the limit-simplex bound: `2^(n-1) - Σ_A b(A)`, which is zero
/// exactly for Bayesian belief functions.
pub fn limit_simplex_gap(m: &MassFunction) -> Result<f64> {
    let bel = m.belief_table()?;
    let n = m.frame().size();
    let total: f64 = bel.iter().sum();
    Ok((1u64 << (n - 1)) as f64 - total)
}

/// Vertices of the conditional subspace of `m`: the combinations of `m`
/// with every categorical belief function on a non-empty subset of its
/// core, in ascending mask order. The input itself appears as the entry for
/// the full core.
pub fn conditional_subspace_vertices(m: &MassFunction) -> Result<Vec<MassFunction>> {
    let core = m.core();
    let k = core.cardinality();
    if k > CORE_CAP {
        return Err(Error::CoreTooLarge {
            size: k,
            limit: CORE_CAP,
        });
    }
    let members: Vec<usize> = core.iter().collect();
    let mut out = Vec::with_capacity((1usize << k) - 1);
    for mask in 1u64..1u64 << k {
        let mut set = m.frame().empty();
        for (j, &x) in members.iter().enumerate() {
            if mask & (1 << j) != 0 {
                set.insert(x);
            }
        }
        let cat = MassFunction::categorical(m.frame().clone(), set)?;
        out.push(dempster_combine(m, &cat)?.0);
    }
    Ok(out)
}

/// Conflict mass between two belief functions without building the
/// combination.
fn conflict_mass(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    Ok(conjunctive_combine(m1, m2)?.empty_set_mass())
}

/// Weights transported by Dempster's rule across a convex combination:
/// combining `b` with `Σ_i α_i b_i` equals `Σ_i β_i (b ⊕ b_i)` with
/// `β_i ∝ α_i k(b, b_i)` where `k` is the normalization constant of the
/// pairwise sum.
pub fn dempster_convex_weights(
    b: &MassFunction,
    bs: &[MassFunction],
    alphas: &[f64],
) -> Result<Vec<f64>> {
    if bs.is_empty() || bs.len() != alphas.len() {
        return Err(Error::InvalidArgument("mismatched convex weights".into()));
    }
    let mut weighted = Vec::with_capacity(bs.len());
    for (bi, &a) in bs.iter().zip(alphas) {
        if a < -PRUNE_TOL {
            return Err(Error::InvalidArgument(
                "convex weights must be non-negative".into(),
            ));
        }
        let k = 1.0 - conflict_mass(b, bi)?;
        weighted.push(a.max(0.0) * k);
    }
    let total: f64 = weighted.iter().sum();
    if total <= PRUNE_TOL {
        return Err(Error::NonCombinable(
            "no member of the convex combination is combinable with the conditioning function"
                .into(),
        ));
    }
    Ok(weighted.into_iter().map(|w| w / total).collect())
}

/// Belief coordinates `[m(x), m(y)]` of a binary mass function.
pub fn binary_coords(m: &MassFunction) -> Result<[f64; 2]> {
    if m.frame().size() != 2 {
        return Err(Error::InvalidArgument("binary frame required".into()));
    }
    Ok([
        m.mass(&m.frame().singleton(0)),
        m.mass(&m.frame().singleton(1)),
    ])
}

/// Foci of a binary conditional subspace. `None` marks a focus at infinity
/// (no mass on the corresponding singleton while ignorance remains).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryFoci {
    pub fx: Option<[f64; 2]>,
    pub fy: Option<[f64; 2]>,
}

/// Foci of the conditional subspace generated by a binary belief function:
/// `F_x = [1, -m(Θ)/m(x)]` and `F_y = [-m(Θ)/m(y), 1]`. For Bayesian inputs
/// the foci collapse onto the categorical vertices.
pub fn binary_foci(m: &MassFunction) -> Result<BinaryFoci> {
    let [mx, my] = binary_coords(m)?;
    let mt = 1.0 - mx - my;
    let focus = |mass: f64, make: fn(f64) -> [f64; 2]| {
        if mass > PRUNE_TOL {
            Some(make(-mt / mass))
        } else if mt <= PRUNE_TOL {
            // Bayesian limit: the focus degenerates onto the vertex.
            Some(make(0.0))
        } else {
            None
        }
    };
    Ok(BinaryFoci {
        fx: focus(mx, |v| [1.0, v]),
        fy: focus(my, |v| [v, 1.0]),
    })
}

/// Unique decomposition of a binary belief function into two simple support
/// functions, `e_x ⊕ e_y = m`, returned as the pair of support masses
/// `(w_x, w_y)`. Fails on the two categorical belief functions, the only
/// non-separable points of the binary belief space.
pub fn binary_canonical_decomposition(m: &MassFunction) -> Result<(f64, f64)> {
    let [mx, my] = binary_coords(m)?;
    if (mx - 1.0).abs() <= PRUNE_TOL || (my - 1.0).abs() <= PRUNE_TOL {
        return Err(Error::Degenerate(
            "categorical binary belief functions are not separable".into(),
        ));
    }
    Ok((mx / (1.0 - my), my / (1.0 - mx)))
}

/// Line through `p` with direction `d`, in implicit form `a·x + b·y = c`.
fn implicit(p: [f64; 2], d: [f64; 2]) -> [f64; 3] {
    let a = d[1];
    let b = -d[0];
    [a, b, a * p[0] + b * p[1]]
}

fn intersect_lines(l1: [f64; 3], l2: [f64; 3]) -> Option<[f64; 2]> {
    let det = l1[0] * l2[1] - l1[1] * l2[0];
    if det.abs() < 1e-12 {
        return None;
    }
    Some([
        (l1[2] * l2[1] - l1[1] * l2[2]) / det,
        (l1[0] * l2[2] - l1[2] * l2[0]) / det,
    ])
}

/// Dempster's combination on a binary frame by the focal construction:
/// project the second operand onto the probability simplex, combine the
/// projections with the first operand, and intersect the two lines through
/// the probabilistic coordinates and the foci. Singular configurations
/// (Bayesian first operand, degenerate lines) fall back to the algebraic
/// rule; the flag reports which route produced the result.
pub fn binary_dempster_geometric(
    m1: &MassFunction,
    m2: &MassFunction,
) -> Result<(MassFunction, bool)> {
    m1.frame()
        .ensure_same(m2.frame(), "geometric combination")?;
    let frame = m1.frame().clone();
    if frame.size() != 2 {
        return Err(Error::InvalidArgument("binary frame required".into()));
    }
    let fallback = |note: &str| -> Result<(MassFunction, bool)> {
        let _ = note;
        Ok((dempster_combine(m1, m2)?.0, true))
    };
    if m1.is_bayesian() {
        // Both construction lines collapse onto the probability simplex.
        return fallback("bayesian first operand");
    }
    let [m2x, m2y] = binary_coords(m2)?;
    let foci = binary_foci(m1)?;
    let projections = (
        ProbabilityDistribution::new(frame.clone(), vec![m2x, 1.0 - m2x])?,
        ProbabilityDistribution::new(frame.clone(), vec![1.0 - m2y, m2y])?,
    );
    let px = match dempster_combine(m1, &projections.0.to_mass()) {
        Ok((m, _)) => binary_coords(&m)?,
        Err(_) => return fallback("x projection not combinable"),
    };
    let py = match dempster_combine(m1, &projections.1.to_mass()) {
        Ok((m, _)) => binary_coords(&m)?,
        Err(_) => return fallback("y projection not combinable"),
    };
    // A focus at infinity turns its pencil of lines into a parallel family:
    // vertical for F_x, horizontal for F_y.
    let lx = match foci.fx {
        Some(f) => implicit(px, [f[0] - px[0], f[1] - px[1]]),
        None => implicit(px, [0.0, 1.0]),
    };
    let ly = match foci.fy {
        Some(f) => implicit(py, [f[0] - py[0], f[1] - py[1]]),
        None => implicit(py, [1.0, 0.0]),
    };
    let Some([mx, my]) = intersect_lines(lx, ly) else {
        return fallback("singular line intersection");
    };
    if !(0.0..=1.0 + 1e-9).contains(&mx) || !(0.0..=1.0 + 1e-9).contains(&my) {
        return fallback("intersection outside the belief triangle");
    }
    let mt = (1.0 - mx - my).max(0.0);
    let combined = MassFunction::new(
        frame.clone(),
        [
            (frame.singleton(0), mx.clamp(0.0, 1.0)),
            (frame.singleton(1), my.clamp(0.0, 1.0)),
            (frame.full(), mt),
        ],
        Mode::Normalized,
    )?;
    Ok((combined, false))
}

/// Algebraic closed form of Dempster's rule on a binary frame, used as an
/// independent oracle for the geometric construction.
pub fn binary_dempster_algebraic(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    let [ax, ay] = binary_coords(m1)?;
    let [bx, by] = binary_coords(m2)?;
    let denom = 1.0 - ax * by - ay * bx;
    if denom.abs() < PRUNE_TOL {
        return Err(Error::NonCombinable(
            "total conflict on the binary frame".into(),
        ));
    }
    let mx = 1.0 - (1.0 - ax) * (1.0 - bx) / denom;
    let my = 1.0 - (1.0 - ay) * (1.0 - by) / denom;
    let frame = m1.frame().clone();
    MassFunction::new(
        frame.clone(),
        [
            (frame.singleton(0), mx),
            (frame.singleton(1), my),
            (frame.full(), 1.0 - mx - my),
        ],
        Mode::Normalized,
    )
}
