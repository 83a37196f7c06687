//! Families of compatible frames modeled as partitions of one base frame.
//!
//! Every member of a family is a [`PartitionFrame`]: a partition of an
//! explicit base frame, carrying its own induced [`Frame`] whose elements
//! are the blocks. Minimal refinement is the meet (blockwise intersection),
//! maximal coarsening the join (connected components of the block-overlap
//! relation), and mass functions travel along [`Refining`] maps by vacuous
//! extension and restriction.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::mass::MassFunction;

/// A structure-preserving map from a coarse frame into disjoint, covering
/// subsets of a finer frame.
#[derive(Debug, Clone)]
pub struct Refining {
    source: Frame,
    target: Frame,
    images: Vec<Subset>,
}

impl Refining {
    pub fn new(source: Frame, target: Frame, images: Vec<Subset>) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::InvalidRefining(format!(
                "{} images for a source of {}",
                images.len(),
                source.size()
            )));
        }
        let mut seen = target.empty();
        for (i, img) in images.iter().enumerate() {
            if img.universe_len() != target.size() {
                return Err(Error::InvalidRefining(
                    "image is not over the target frame".into(),
                ));
            }
            if img.is_empty() {
                return Err(Error::InvalidRefining(format!(
                    "element {} has an empty image",
                    source.label(i)
                )));
            }
            if seen.intersects(img) {
                return Err(Error::InvalidRefining(format!(
                    "image of {} overlaps an earlier image",
                    source.label(i)
                )));
            }
            seen = seen.union(img);
        }
        if !seen.is_full() {
            return Err(Error::InvalidRefining(
                "images do not cover the target frame".into(),
            ));
        }
        Ok(Refining {
            source,
            target,
            images,
        })
    }

    pub fn source(&self) -> &Frame {
        &self.source
    }

    pub fn target(&self) -> &Frame {
        &self.target
    }

    pub fn image_of_element(&self, i: usize) -> &Subset {
        &self.images[i]
    }

    /// Image of a subset of the source: union of its element images.
    pub fn image(&self, set: &Subset) -> Result<Subset> {
        if set.universe_len() != self.source.size() {
            return Err(Error::FrameMismatch(
                "set is not over the source frame".into(),
            ));
        }
        let mut out = self.target.empty();
        for i in set.iter() {
            out = out.union(&self.images[i]);
        }
        Ok(out)
    }

    /// Largest subset of the source whose image is contained in `set`.
    pub fn inner_reduction(&self, set: &Subset) -> Result<Subset> {
        if set.universe_len() != self.target.size() {
            return Err(Error::FrameMismatch(
                "set is not over the target frame".into(),
            ));
        }
        Ok(self.source.subset_of_indices(
            (0..self.source.size()).filter(|&i| self.images[i].is_subset_of(set)),
        ))
    }

    /// Smallest subset of the source implied by `set`: the elements whose
    /// image meets it.
    pub fn outer_reduction(&self, set: &Subset) -> Result<Subset> {
        if set.universe_len() != self.target.size() {
            return Err(Error::FrameMismatch(
                "set is not over the target frame".into(),
            ));
        }
        Ok(self
            .source
            .subset_of_indices((0..self.source.size()).filter(|&i| self.images[i].intersects(set))))
    }

    /// Transport a mass function on the source onto the target, focal
    /// element by focal element. Restriction undoes this exactly.
    pub fn vacuous_extension(&self, m: &MassFunction) -> Result<MassFunction> {
        self.source.ensure_same(m.frame(), "vacuous extension")?;
        let entries: Result<Vec<(Subset, f64)>> = m
            .focal_elements()
            .map(|(s, v)| Ok((self.image(s)?, v)))
            .collect();
        MassFunction::new(self.target.clone(), entries?, m.mode())
    }

    /// Marginalize a mass function on the target back to the source: each
    /// focal element contributes its mass to its outer reduction.
    pub fn restriction(&self, m: &MassFunction) -> Result<MassFunction> {
        self.target.ensure_same(m.frame(), "restriction")?;
        let mut acc: BTreeMap<Subset, f64> = BTreeMap::new();
        for (s, v) in m.focal_elements() {
            *acc.entry(self.outer_reduction(s)?).or_insert(0.0) += v;
        }
        MassFunction::new(self.source.clone(), acc, m.mode())
    }
}

/// A partition of a base frame, together with the coarse frame induced by
/// its blocks. Block labels join the member labels with `+`.
#[derive(Debug, Clone)]
pub struct PartitionFrame {
    base: Frame,
    blocks: Vec<Subset>,
    coarse: Frame,
}

impl PartitionFrame {
    pub fn new(base: Frame, blocks: Vec<Subset>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidPartition(
                "a partition needs at least one block".into(),
            ));
        }
        let mut seen = base.empty();
        for b in &blocks {
            if b.universe_len() != base.size() {
                return Err(Error::InvalidPartition(
                    "block is not over the base frame".into(),
                ));
            }
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if seen.intersects(b) {
                return Err(Error::InvalidPartition(format!(
                    "block {} overlaps an earlier block",
                    base.describe(b)
                )));
            }
            seen = seen.union(b);
        }
        if !seen.is_full() {
            return Err(Error::InvalidPartition(
                "blocks do not cover the base frame".into(),
            ));
        }
        let labels: Vec<String> = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|i| base.label(i))
                    .collect::<Vec<_>>()
                    .join("+")
            })
            .collect();
        let coarse = Frame::new(labels)?;
        Ok(PartitionFrame {
            base,
            blocks,
            coarse,
        })
    }

    pub fn from_label_blocks(base: &Frame, blocks: &[Vec<&str>]) -> Result<Self> {
        let sets: Result<Vec<Subset>> = blocks
            .iter()
            .map(|b| base.subset_of_labels(b.iter().copied()))
            .collect();
        PartitionFrame::new(base.clone(), sets?)
    }

    /// One block per base element.
    pub fn discrete(base: &Frame) -> Self {
        let blocks = (0..base.size()).map(|i| base.singleton(i)).collect();
        PartitionFrame::new(base.clone(), blocks).expect("discrete partition")
    }

    /// The unique unitary frame: a single block covering the base.
    pub fn unit(base: &Frame) -> Self {
        PartitionFrame::new(base.clone(), vec![base.full()]).expect("unit partition")
    }

    pub fn base(&self) -> &Frame {
        &self.base
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// The induced coarse frame (one element per block).
    pub fn frame(&self) -> &Frame {
        &self.coarse
    }

    pub fn is_unit(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.base.size()
    }

    /// Index of the block containing base element `x`.
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(x))
            .expect("partition covers the base")
    }

    /// Same set of blocks, regardless of listing order.
    pub fn same_partition(&self, other: &PartitionFrame) -> bool {
        self.base.same_as(&other.base)
            && self.blocks.len() == other.blocks.len()
            && self.blocks.iter().all(|b| other.blocks.contains(b))
    }

    /// True when every block of `self` is a union of blocks of `finer`.
    pub fn is_coarsening_of(&self, finer: &PartitionFrame) -> bool {
        self.base.same_as(&finer.base)
            && finer
                .blocks
                .iter()
                .all(|fb| self.blocks.iter().any(|cb| fb.is_subset_of(cb)))
    }

    /// Refining from this partition's coarse frame onto the base frame.
    pub fn refining_to_base(&self) -> Refining {
        Refining::new(self.coarse.clone(), self.base.clone(), self.blocks.clone())
            .expect("partition blocks form a refining")
    }

    /// Refining from this partition's coarse frame onto a finer partition's
    /// coarse frame. Fails unless `self` is a coarsening of `finer`.
    pub fn refining_to(&self, finer: &PartitionFrame) -> Result<Refining> {
        if !self.is_coarsening_of(finer) {
            return Err(Error::InvalidRefining(format!(
                "{:?} is not a coarsening of {:?}",
                self.coarse, finer.coarse
            )));
        }
        let images: Vec<Subset> = self
            .blocks
            .iter()
            .map(|cb| {
                finer.coarse.subset_of_indices(
                    (0..finer.size()).filter(|&j| finer.blocks[j].is_subset_of(cb)),
                )
            })
            .collect();
        Refining::new(self.coarse.clone(), finer.coarse.clone(), images)
    }
}

/// Minimal refinement (meet): the partition whose blocks are all non-empty
/// intersections of one block per input. Returns the refinings from each
/// input onto the result.
pub fn minimal_refinement(frames: &[PartitionFrame]) -> Result<(PartitionFrame, Vec<Refining>)> {
    let base = shared_base(frames)?;
    // Group base elements by their tuple of block indices, keeping the
    // first-seen order of tuples so the block list is deterministic.
    let mut tuples: Vec<(Vec<usize>, Subset)> = Vec::new();
    for x in 0..base.size() {
        let key: Vec<usize> = frames.iter().map(|f| f.block_of(x)).collect();
        match tuples.iter_mut().find(|(k, _)| *k == key) {
            Some((_, s)) => s.insert(x),
            None => {
                let mut s = base.empty();
                s.insert(x);
                tuples.push((key, s));
            }
        }
    }
    tuples.sort_by(|a, b| a.0.cmp(&b.0));
    let blocks: Vec<Subset> = tuples.into_iter().map(|(_, s)| s).collect();
    let refined = PartitionFrame::new(base.clone(), blocks)?;
    let refinings: Result<Vec<Refining>> = frames.iter().map(|f| f.refining_to(&refined)).collect();
    Ok((refined, refinings?))
}

/// Maximal coarsening (join): the finest common coarsening, computed as the
/// connected components of the block-overlap relation.
pub fn maximal_coarsening(frames: &[PartitionFrame]) -> Result<PartitionFrame> {
    let base = shared_base(frames)?;
    let n = base.size();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for f in frames {
        for b in f.blocks() {
            let mut it = b.iter();
            if let Some(first) = it.next() {
                for x in it {
                    let (a, b) = (find(&mut parent, first), find(&mut parent, x));
                    parent[a] = b;
                }
            }
        }
    }
    let mut blocks: Vec<(usize, Subset)> = Vec::new();
    for x in 0..n {
        let root = find(&mut parent, x);
        match blocks.iter_mut().find(|(r, _)| *r == root) {
            Some((_, s)) => s.insert(x),
            None => {
                let mut s = base.empty();
                s.insert(x);
                blocks.push((root, s));
            }
        }
    }
    blocks.sort_by(|a, b| a.1.cmp(&b.1));
    PartitionFrame::new(base.clone(), blocks.into_iter().map(|(_, s)| s).collect())
}

/// Maximal coarsening by the literal splitting procedure: start from the
/// unit frame and split any block containing a proper non-empty sub-union
/// expressible in every input partition. Slower than the component search;
/// kept as an independent cross-check.
pub fn maximal_coarsening_by_splitting(frames: &[PartitionFrame]) -> Result<PartitionFrame> {
    let base = shared_base(frames)?;
    let mut blocks = vec![base.full()];
    loop {
        let mut split: Option<(usize, Subset)> = None;
        'scan: for (i, block) in blocks.iter().enumerate() {
            // Fixpoint closure: grow a candidate sub-union from each seed
            // until it is a union of whole blocks of every partition.
            for seed in block.iter() {
                let mut u = base.singleton(seed);
                loop {
                    let mut grown = u.clone();
                    for f in frames {
                        for fb in f.blocks() {
                            if fb.intersects(&grown) {
                                grown = grown.union(fb);
                            }
                        }
                    }
                    grown = grown.intersection(block);
                    if grown == u {
                        break;
                    }
                    u = grown;
                }
                if !u.is_empty() && u != *block {
                    split = Some((i, u));
                    break 'scan;
                }
            }
        }
        match split {
            Some((i, u)) => {
                let rest = blocks[i].difference(&u);
                blocks[i] = u;
                blocks.push(rest);
            }
            None => break,
        }
    }
    blocks.sort();
    PartitionFrame::new(base.clone(), blocks)
}

fn shared_base(frames: &[PartitionFrame]) -> Result<Frame> {
    let first = frames
        .first()
        .ok_or_else(|| Error::InvalidArgument("at least one partition required".into()))?;
    for f in frames.iter().skip(1) {
        first.base().ensure_same(f.base(), "partition base")?;
    }
    Ok(first.base().clone())
}

/// Outcome of an independence-of-frames check. A failing witness is a tuple
/// of block indices, one per frame, with empty joint intersection.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub independent: bool,
    pub witness: Option<Vec<usize>>,
}

/// Independence of frames: every selection of one block per partition has a
/// non-empty intersection, equivalently the minimal refinement has exactly
/// `Π_i |Θ_i|` blocks.
///
/// The definition is strict: partitions that merely overlap "generically"
/// can still fail it. On base `{1,2,3,4}`, the pair `{1,2|3|4}` and
/// `{1,3|2,4}` — sometimes informally treated as independent — is not,
/// since blocks `{3}` and `{2,4}` are disjoint; the returned witness names
/// such a pair.
pub fn is_independent(frames: &[PartitionFrame]) -> Result<IndependenceReport> {
    let base = shared_base(frames)?;
    let mut choice = vec![0usize; frames.len()];
    loop {
        let mut inter = base.full();
        for (f, &c) in frames.iter().zip(choice.iter()) {
            inter = inter.intersection(&f.blocks()[c]);
        }
        if inter.is_empty() {
            return Ok(IndependenceReport {
                independent: false,
                witness: Some(choice),
            });
        }
        let mut pos = frames.len();
        loop {
            if pos == 0 {
                return Ok(IndependenceReport {
                    independent: true,
                    witness: None,
                });
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < frames[pos].size() {
                break;
            }
            choice[pos] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            return Ok(IndependenceReport {
                independent: true,
                witness: None,
            });
        }
    }
}

/// Combinability of every possible collection of belief functions on the
/// frames, over their minimal refinement. Equivalent to independence.
pub fn combinability_always(frames: &[PartitionFrame]) -> Result<bool> {
    Ok(is_independent(frames)?.independent)
}

/// The six lattice independence relations evaluated on a list of partitions
/// of a shared base, in the given order (the second relation of each triple
/// is order-dependent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeRelations {
    pub i1: bool,
    pub i2: bool,
    pub i3: bool,
    pub i1_dual: bool,
    pub i2_dual: bool,
    pub i3_dual: bool,
}

#[allow(clippy::needless_range_loop)] // j orders the relations; it indexes and slices
pub fn lattice_relations(frames: &[PartitionFrame]) -> Result<LatticeRelations> {
    let base = shared_base(frames)?;
    if frames.len() < 2 {
        return Err(Error::InvalidArgument(
            "lattice relations need at least two frames".into(),
        ));
    }
    let n = frames.len();
    let others = |j: usize| -> Vec<PartitionFrame> {
        frames
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, f)| f.clone())
            .collect()
    };
    let prefix = |j: usize| -> Vec<PartitionFrame> { frames[..j].to_vec() };

    // Upper semimodular forms: meet = minimal refinement, join = maximal
    // coarsening, bottom = the discrete partition, height = n - |blocks|.
    let mut i1 = true;
    for j in 0..n {
        let join = maximal_coarsening(&others(j))?;
        let meet = minimal_refinement(&[frames[j].clone(), join])?.0;
        if meet.same_partition(&frames[j]) {
            i1 = false;
            break;
        }
    }
    let mut i2 = true;
    for j in 1..n {
        let join = maximal_coarsening(&prefix(j))?;
        let meet = minimal_refinement(&[frames[j].clone(), join])?.0;
        if !meet.is_discrete() {
            i2 = false;
            break;
        }
    }
    let join_all = maximal_coarsening(frames)?;
    let lhs = base.size() as i64 - join_all.size() as i64;
    let rhs: i64 = frames
        .iter()
        .map(|f| base.size() as i64 - f.size() as i64)
        .sum();
    let i3 = lhs == rhs;

    // Lower semimodular duals: meet = maximal coarsening, join = minimal
    // refinement, bottom = the unit frame, height = |blocks| - 1.
    let mut i1_dual = true;
    for j in 0..n {
        let join = minimal_refinement(&others(j))?.0;
        let meet = maximal_coarsening(&[frames[j].clone(), join])?;
        if meet.same_partition(&frames[j]) {
            i1_dual = false;
            break;
        }
    }
    let mut i2_dual = true;
    for j in 1..n {
        let join = minimal_refinement(&prefix(j))?.0;
        let meet = maximal_coarsening(&[frames[j].clone(), join])?;
        if !meet.is_unit() {
            i2_dual = false;
            break;
        }
    }
    let refine_all = minimal_refinement(frames)?.0;
    let lhs = refine_all.size() as i64 - 1;
    let rhs: i64 = frames.iter().map(|f| f.size() as i64 - 1).sum();
    let i3_dual = lhs == rhs;

    Ok(LatticeRelations {
        i1,
        i2,
        i3,
        i1_dual,
        i2_dual,
        i3_dual,
    })
}

/// A registry of partitions of one base frame, closed under minimal
/// refinement and maximal coarsening on request. Always contains the
/// discrete partition and the unit frame.
#[derive(Debug, Clone)]
pub struct FrameFamily {
    base: Frame,
    members: Vec<PartitionFrame>,
}

impl FrameFamily {
    pub fn new(base: Frame, partitions: Vec<PartitionFrame>) -> Result<Self> {
        let mut family = FrameFamily {
            base: base.clone(),
            members: Vec::with_capacity(partitions.len() + 2),
        };
        family.insert(PartitionFrame::discrete(&base));
        family.insert(PartitionFrame::unit(&base));
        for p in partitions {
            base.ensure_same(p.base(), "family member")?;
            family.insert(p);
        }
        Ok(family)
    }

    fn insert(&mut self, p: PartitionFrame) -> bool {
        if self.members.iter().any(|m| m.same_partition(&p)) {
            false
        } else {
            self.members.push(p);
            true
        }
    }

    pub fn base(&self) -> &Frame {
        &self.base
    }

    pub fn members(&self) -> &[PartitionFrame] {
        &self.members
    }

    /// Close the registry under pairwise minimal refinement and maximal
    /// coarsening.
    pub fn close(&mut self) -> Result<()> {
        loop {
            let mut added = false;
            let snapshot = self.members.clone();
            for i in 0..snapshot.len() {
                for j in (i + 1)..snapshot.len() {
                    let pair = [snapshot[i].clone(), snapshot[j].clone()];
                    added |= self.insert(minimal_refinement(&pair)?.0);
                    added |= self.insert(maximal_coarsening(&pair)?);
                }
            }
            if !added {
                return Ok(());
            }
        }
    }

    /// Refining between two comparable members (from the coarser onto the
    /// finer).
    pub fn refining_between(&self, coarse: usize, fine: usize) -> Result<Refining> {
        self.members[coarse].refining_to(&self.members[fine])
    }
}

/// Transport a mass function from a partition's coarse frame onto the base
/// frame's minimal-refinement representation (plain vacuous extension via
/// the block refining).
pub fn extend_to_base(p: &PartitionFrame, m: &MassFunction) -> Result<MassFunction> {
    p.refining_to_base().vacuous_extension(m)
}

/// Categorical mass function on a partition's coarse frame, then extended
/// to the base. Used by combinability searches.
pub fn categorical_on_blocks(p: &PartitionFrame, block_set: &Subset) -> Result<MassFunction> {
    let cat = MassFunction::categorical(p.frame().clone(), block_set.clone())?;
    extend_to_base(p, &cat)
}
