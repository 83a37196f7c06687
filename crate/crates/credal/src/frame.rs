//! Frames of discernment and bitmask-encoded subsets.
//!
//! A [`Frame`] is a finite, ordered set of mutually exclusive outcomes.
//! Events are [`Subset`] values: fixed-width bitmasks over the frame's
//! elements, ordered by their integer value so that collections of subsets
//! iterate in a canonical, reproducible order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Debug)]
struct FrameInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// A finite set of distinct, ordered outcome labels.
///
/// Cloning is cheap (shared storage). Two frames are equal when they carry
/// the same labels in the same order; the element order is fixed at
/// construction because subset encodings depend on it.
#[derive(Clone)]
pub struct Frame {
    inner: Arc<FrameInner>,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidFrame(
                "a frame needs at least one element".into(),
            ));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidFrame("empty element label".into()));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidFrame(format!(
                    "duplicate element label {l:?}"
                )));
            }
        }
        Ok(Frame {
            inner: Arc::new(FrameInner { labels, index }),
        })
    }

    /// Frame with labels `q1..qn` (used for synthetic spaces).
    pub fn indexed(prefix: &str, n: usize) -> Result<Self> {
        Frame::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    /// Checks interoperability of two frames, with a pointer fast path.
    pub fn same_as(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }

    pub fn ensure_same(&self, other: &Frame, what: &str) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::FrameMismatch(format!(
                "{what}: {:?} vs {:?}",
                self.inner.labels, other.inner.labels
            )))
        }
    }

    pub fn empty(&self) -> Subset {
        Subset::empty(self.size())
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn singleton(&self, i: usize) -> Subset {
        Subset::singleton(self.size(), i)
    }

    pub fn subset_of_indices<I: IntoIterator<Item = usize>>(&self, iter: I) -> Subset {
        let mut s = self.empty();
        for i in iter {
            assert!(i < self.size(), "element index {i} out of range");
            s.insert(i);
        }
        s
    }

    pub fn subset_of_labels<'a, I: IntoIterator<Item = &'a str>>(&self, iter: I) -> Result<Subset> {
        let mut s = self.empty();
        for l in iter {
            match self.position(l) {
                Some(i) => s.insert(i),
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "label {l:?} is not an element of the frame"
                    )))
                }
            }
        }
        Ok(s)
    }

    /// Render a subset using the frame's labels, in frame order.
    pub fn describe(&self, s: &Subset) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Frame({:?})", self.inner.labels)
    }
}

const BITS: usize = 64;

/// A subset of a frame, stored as a little-endian bitmask.
///
/// `Ord` compares the bitmask as an unsigned integer, which makes
/// `BTreeMap<Subset, _>` iterate focal elements in ascending mask order —
/// the canonical order used everywhere masses or belief values are listed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    len: usize,
    bits: Box<[u64]>,
}

impl Subset {
    fn blocks(len: usize) -> usize {
        len.div_ceil(BITS)
    }

    pub fn empty(len: usize) -> Self {
        Subset {
            len,
            bits: vec![0; Self::blocks(len)].into_boxed_slice(),
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, i: usize) -> Self {
        let mut s = Self::empty(len);
        s.insert(i);
        s
    }

    /// Subset of a small frame from the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Self {
        assert!(len <= BITS, "from_mask only covers single-block frames");
        assert!(
            len == BITS || mask < (1u64 << len),
            "mask has bits outside the frame"
        );
        let mut s = Self::empty(len);
        s.bits[0] = mask;
        s
    }

    /// Low-word view of the mask (only valid for frames of at most 64 elements).
    pub fn mask(&self) -> u64 {
        assert!(self.len <= BITS);
        self.bits[0]
    }

    pub fn universe_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len, "element index {i} out of range");
        self.bits[i / BITS] |= 1 << (i % BITS);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.bits[i / BITS] & (1 << (i % BITS)) != 0
    }

    pub fn cardinality(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.cardinality() == self.len
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.len, other.len, "subsets of different frames");
    }

    pub fn union(&self, other: &Self) -> Self {
        self.check(other);
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(a, b)| a | b)
            .collect();
        Subset {
            len: self.len,
            bits,
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.check(other);
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(a, b)| a & b)
            .collect();
        Subset {
            len: self.len,
            bits,
        }
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.check(other);
        let bits = self
            .bits
            .iter()
            .zip(other.bits.iter())
            .map(|(a, b)| a & !b)
            .collect();
        Subset {
            len: self.len,
            bits,
        }
    }

    pub fn complement(&self) -> Self {
        Subset::full(self.len).difference(self)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.check(other);
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check(other);
        self.bits
            .iter()
            .zip(other.bits.iter())
            .any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.contains(i))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.bits.iter().rev().cmp(other.bits.iter().rev()))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", idx.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_rejects_duplicates_and_empties() {
        assert!(Frame::new(["a", "b", "a"]).is_err());
        assert!(Frame::new(Vec::<String>::new()).is_err());
        assert!(Frame::new(["a", ""]).is_err());
    }

    #[test]
    fn subset_algebra() {
        let f = Frame::new(["a", "b", "c", "d"]).unwrap();
        let ab = f.subset_of_labels(["a", "b"]).unwrap();
        let bc = f.subset_of_labels(["b", "c"]).unwrap();
        assert_eq!(ab.intersection(&bc), f.subset_of_indices([1]));
        assert_eq!(ab.union(&bc), f.subset_of_indices([0, 1, 2]));
        assert_eq!(ab.complement(), f.subset_of_indices([2, 3]));
        assert!(f.subset_of_indices([1]).is_subset_of(&ab));
        assert!(!ab.is_subset_of(&bc));
        assert_eq!(ab.cardinality(), 2);
        assert_eq!(f.describe(&ab), "{a,b}");
    }

    #[test]
    fn subset_order_matches_mask_value() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        let mut sets: Vec<Subset> = (1u64..8).map(|m| Subset::from_mask(3, m)).collect();
        sets.sort();
        let masks: Vec<u64> = sets.iter().map(|s| s.mask()).collect();
        assert_eq!(masks, vec![1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(f.describe(&sets[2]), "{a,b}");
    }

    #[test]
    fn wide_frames_cross_block_boundaries() {
        let f = Frame::indexed("q", 130).unwrap();
        let mut s = f.empty();
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.cardinality(), 3);
        assert!(s.contains(64));
        assert_eq!(s.complement().cardinality(), 127);
        let t = f.subset_of_indices([64, 129]);
        assert!(t.is_subset_of(&s));
        assert!(s > t);
    }
}
