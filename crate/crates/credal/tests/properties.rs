//! Property tests for the calculus invariants on small random frames.

use proptest::prelude::*;

use credal::combine::{
    combinable, conjunctive_combine, dempster_combine, dempster_condition, geometric_condition,
};
use credal::frame::{Frame, Subset};
use credal::mass::{mobius_inverse, MassFunction, Mode};
use credal::transform::{pignistic, relative_plausibility};

/// Strategy: a normalized mass function on a frame of `n` elements with at
/// most `max_focals` focal elements.
fn arb_mass(n: usize, max_focals: usize) -> impl Strategy<Value = MassFunction> {
    let frame = Frame::indexed("e", n).unwrap();
    prop::collection::vec((1..(1u64 << n), 0.05f64..1.0), 1..=max_focals).prop_map(move |raw| {
        let total: f64 = raw.iter().map(|(_, w)| w).sum();
        let entries: Vec<(Subset, f64)> = raw
            .into_iter()
            .map(|(mask, w)| (Subset::from_mask(n, mask), w / total))
            .collect();
        MassFunction::new(frame.clone(), entries, Mode::Normalized).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Moebius inversion undoes the belief table exactly.
    #[test]
    fn mobius_roundtrip(m in (2usize..=8).prop_flat_map(|n| arb_mass(n, 6))) {
        let bel = m.belief_table().unwrap();
        let back = mobius_inverse(m.frame(), &bel).unwrap();
        prop_assert!(back.approx_eq(&m, 1e-9));
    }

    /// The two-event instance of superadditivity, on all pairs of events.
    #[test]
    fn superadditivity_pairs(m in (2usize..=5).prop_flat_map(|n| arb_mass(n, 6))) {
        let n = m.frame().size();
        for a in 0u64..(1 << n) {
            for b in 0u64..(1 << n) {
                let sa = Subset::from_mask(n, a);
                let sb = Subset::from_mask(n, b);
                let lhs = m.belief(&sa.union(&sb)).unwrap();
                let rhs = m.belief(&sa).unwrap() + m.belief(&sb).unwrap()
                    - m.belief(&sa.intersection(&sb)).unwrap();
                prop_assert!(lhs >= rhs - 1e-9);
            }
        }
    }

    /// Plausibility dominates belief everywhere, with equality on every
    /// event exactly for Bayesian mass functions.
    #[test]
    fn plausibility_dominates_belief(m in (2usize..=6).prop_flat_map(|n| arb_mass(n, 6))) {
        let n = m.frame().size();
        let mut tight = true;
        for mask in 0u64..(1 << n) {
            let s = Subset::from_mask(n, mask);
            let b = m.belief(&s).unwrap();
            let pl = m.plausibility(&s).unwrap();
            prop_assert!(pl >= b - 1e-9);
            if (pl - b).abs() > 1e-9 {
                tight = false;
            }
        }
        prop_assert_eq!(tight, m.is_bayesian());
    }

    /// Dempster's rule is commutative, and associative on random triples.
    #[test]
    fn dempster_commutes_and_associates(
        (m1, m2, m3) in (2usize..=5).prop_flat_map(|n| (arb_mass(n, 4), arb_mass(n, 4), arb_mass(n, 4)))
    ) {
        if let (Ok(ab), Ok(ba)) = (dempster_combine(&m1, &m2), dempster_combine(&m2, &m1)) {
            prop_assert!(ab.0.approx_eq(&ba.0, 1e-9));
            let left = dempster_combine(&ab.0, &m3);
            let right = dempster_combine(&m2, &m3).and_then(|bc| dempster_combine(&m1, &bc.0));
            match (left, right) {
                (Ok((l, _)), Ok((r, _))) => prop_assert!(l.approx_eq(&r, 1e-9)),
                (Err(_), Err(_)) => {}
                _ => prop_assert!(false, "associativity combinability mismatch"),
            }
        }
    }

    /// Normalizing the non-empty part of a conjunctive combination gives
    /// Dempster's rule, for every combinable pair.
    #[test]
    fn conjunctive_normalizes_to_dempster(
        (m1, m2) in (2usize..=6).prop_flat_map(|n| (arb_mass(n, 5), arb_mass(n, 5)))
    ) {
        let conj = conjunctive_combine(&m1, &m2).unwrap();
        match dempster_combine(&m1, &m2) {
            Ok((d, report)) => {
                prop_assert!((conj.empty_set_mass() - report.kappa).abs() < 1e-9);
                prop_assert!(conj.normalized_part().unwrap().approx_eq(&d, 1e-9));
            }
            Err(_) => prop_assert!((conj.empty_set_mass() - 1.0).abs() < 1e-9),
        }
    }

    /// Combining a Bayesian with anything yields a Bayesian proportional to
    /// prior times singleton plausibility.
    #[test]
    #[allow(clippy::needless_range_loop)]
    fn bayes_theorem_property(
        (p_raw, m) in (2usize..=5).prop_flat_map(|n| (
            prop::collection::vec(0.05f64..1.0, n),
            arb_mass(n, 5),
        ))
    ) {
        let frame = m.frame().clone();
        let total: f64 = p_raw.iter().sum();
        let probs: Vec<f64> = p_raw.iter().map(|w| w / total).collect();
        let p = MassFunction::bayesian(frame.clone(), &probs).unwrap();
        if let Ok((combined, _)) = dempster_combine(&p, &m) {
            prop_assert!(combined.is_bayesian());
            let mut expect: Vec<f64> = (0..frame.size())
                .map(|i| probs[i] * m.plausibility(&frame.singleton(i)).unwrap())
                .collect();
            let z: f64 = expect.iter().sum();
            for e in expect.iter_mut() {
                *e /= z;
            }
            for i in 0..frame.size() {
                prop_assert!((combined.mass(&frame.singleton(i)) - expect[i]).abs() < 1e-9);
            }
        }
    }

    /// Dempster conditioning satisfies the plausibility quotient on every
    /// event (exhaustive over events, frames of size at most 6).
    #[test]
    fn conditioning_matches_plausibility_quotient(
        (m, event_mask) in (2usize..=6).prop_flat_map(|n| (arb_mass(n, 5), 1..(1u64 << n)))
    ) {
        let n = m.frame().size();
        let event = Subset::from_mask(n, event_mask);
        match dempster_condition(&m, &event) {
            Ok(cond) => {
                let plb = m.plausibility(&event).unwrap();
                for mask in 0u64..(1 << n) {
                    let a = Subset::from_mask(n, mask);
                    let lhs = cond.plausibility(&a).unwrap();
                    let rhs = m.plausibility(&a.intersection(&event)).unwrap() / plb;
                    prop_assert!((lhs - rhs).abs() < 1e-9);
                }
            }
            Err(_) => prop_assert!(m.plausibility(&event).unwrap() < 1e-9),
        }
    }

    /// Geometric conditioning satisfies the belief quotient whenever it is
    /// defined.
    #[test]
    fn geometric_conditioning_matches_belief_quotient(
        (m, event_mask) in (2usize..=6).prop_flat_map(|n| (arb_mass(n, 5), 1..(1u64 << n)))
    ) {
        let n = m.frame().size();
        let event = Subset::from_mask(n, event_mask);
        if let Ok(cond) = geometric_condition(&m, &event) {
            let denom = m.belief(&event).unwrap();
            for mask in 0u64..(1 << n) {
                let a = Subset::from_mask(n, mask);
                let lhs = cond.belief(&a).unwrap();
                let rhs = m.belief(&a.intersection(&event)).unwrap() / denom;
                prop_assert!((lhs - rhs).abs() < 1e-9);
            }
        }
    }

    /// Consonance is equivalent to the min rule for belief on every pair of
    /// events (exhaustive on frames of size at most 6).
    #[test]
    fn consonance_characterization(m in (2usize..=6).prop_flat_map(|n| arb_mass(n, 4))) {
        let n = m.frame().size();
        let mut min_rule = true;
        'outer: for a in 0u64..(1 << n) {
            for b in 0u64..(1 << n) {
                let sa = Subset::from_mask(n, a);
                let sb = Subset::from_mask(n, b);
                let lhs = m.belief(&sa.intersection(&sb)).unwrap();
                let rhs = m.belief(&sa).unwrap().min(m.belief(&sb).unwrap());
                if (lhs - rhs).abs() > 1e-9 {
                    min_rule = false;
                    break 'outer;
                }
            }
        }
        prop_assert_eq!(min_rule, m.is_consonant());
    }

    /// The Voorbraak property: the relative plausibility is a perfect
    /// representative under combination with Bayesians.
    #[test]
    fn voorbraak_property(
        (m, p_raw) in (2usize..=6).prop_flat_map(|n| (arb_mass(n, 5), prop::collection::vec(0.05f64..1.0, n)))
    ) {
        let frame = m.frame().clone();
        let total: f64 = p_raw.iter().sum();
        let probs: Vec<f64> = p_raw.iter().map(|w| w / total).collect();
        let p = MassFunction::bayesian(frame, &probs).unwrap();
        let lhs = dempster_combine(&relative_plausibility(&m).unwrap().to_mass(), &p).unwrap().0;
        let rhs = dempster_combine(&m, &p).unwrap().0;
        prop_assert!(lhs.approx_eq(&rhs, 1e-9));
    }

    /// The pignistic distribution lies between belief and plausibility on
    /// singletons, and vacuous combination is the identity.
    #[test]
    fn pignistic_sandwich_and_unit(m in (2usize..=6).prop_flat_map(|n| arb_mass(n, 6))) {
        let frame = m.frame().clone();
        let bet = pignistic(&m).unwrap();
        for i in 0..frame.size() {
            let s = frame.singleton(i);
            prop_assert!(m.belief(&s).unwrap() - 1e-9 <= bet.prob(i));
            prop_assert!(bet.prob(i) <= m.plausibility(&s).unwrap() + 1e-9);
        }
        let vac = MassFunction::vacuous(frame);
        prop_assert!(combinable(&m, &vac).unwrap());
        let (same, report) = dempster_combine(&m, &vac).unwrap();
        prop_assert!(same.approx_eq(&m, 1e-12));
        prop_assert!(report.kappa.abs() < 1e-12);
    }
}
