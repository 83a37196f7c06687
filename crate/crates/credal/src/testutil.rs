//! Shared fixtures and random generators for unit tests.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::frame::{Frame, Subset};
use crate::mass::{MassFunction, Mode};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The recurring two-focal-element example: m({t1}) = 2/3, m({t1,t2}) = 1/3
/// on a ternary frame.
pub fn ming_mass() -> MassFunction {
    let f = Frame::new(["t1", "t2", "t3"]).unwrap();
    MassFunction::new(
        f.clone(),
        [
            (f.subset_of_labels(["t1"]).unwrap(), 2.0 / 3.0),
            (f.subset_of_labels(["t1", "t2"]).unwrap(), 1.0 / 3.0),
        ],
        Mode::Normalized,
    )
    .unwrap()
}

/// Random normalized mass function with at most `max_focals` focal elements
/// on a frame of at most 64 elements.
pub fn random_mass(rng: &mut impl Rng, frame: &Frame, max_focals: usize) -> MassFunction {
    let n = frame.size();
    let count = rng.gen_range(1..=max_focals.max(1));
    let mut entries: Vec<(Subset, f64)> = Vec::with_capacity(count);
    let mut total = 0.0;
    for _ in 0..count {
        let mask = rng.gen_range(1..(1u64 << n));
        let w: f64 = rng.gen_range(0.05..1.0);
        entries.push((Subset::from_mask(n, mask), w));
        total += w;
    }
    for e in entries.iter_mut() {
        e.1 /= total;
    }
    MassFunction::new(frame.clone(), entries, Mode::Normalized).unwrap()
}

pub fn random_bayesian(rng: &mut impl Rng, frame: &Frame) -> MassFunction {
    let mut probs: Vec<f64> = (0..frame.size())
        .map(|_| rng.gen_range(0.01..1.0))
        .collect();
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    MassFunction::bayesian(frame.clone(), &probs).unwrap()
}

/// Random binary mass function [m(x), m(y), m(Theta)] with every component
/// at least `floor`.
pub fn random_binary(rng: &mut impl Rng, frame: &Frame, floor: f64) -> MassFunction {
    assert_eq!(frame.size(), 2);
    loop {
        let a: f64 = rng.gen_range(floor..1.0);
        let b: f64 = rng.gen_range(floor..1.0);
        let c: f64 = rng.gen_range(floor..1.0);
        let s = a + b + c;
        let (a, b) = (a / s, b / s);
        let entries = [
            (frame.singleton(0), a),
            (frame.singleton(1), b),
            (frame.full(), 1.0 - a - b),
        ];
        if entries.iter().all(|(_, m)| *m >= floor / 3.0) {
            return MassFunction::new(frame.clone(), entries, Mode::Normalized).unwrap();
        }
    }
}
