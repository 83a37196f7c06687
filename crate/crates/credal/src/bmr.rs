//! Belief Modeling Regression.
//!
//! An evidential model is learned from feature/pose training pairs: each
//! feature column is clustered by EM into a Gaussian mixture, and each
//! cluster is refined into the set of training poses whose feature value
//! it dominates. At test time a feature value becomes a Dirichlet mass
//! function over its clusters, travels through the refining onto the set
//! of training poses, and the per-feature evidence is fused conjunctively.
//! The resulting belief estimate yields point (pignistic), interval
//! (lower/upper expectation) and conflict outputs.

use crate::combine::conjunctive_combine;
use crate::error::{Error, Result};
use crate::frame::Frame;
use crate::gmm::{fit_em_1d, GaussianMixture1D};
use crate::mass::{MassFunction, Mode};
use crate::partition::Refining;
use crate::transform::{dirichlet_from_likelihoods, pignistic};

/// Pose samples (`T x D`) paired with `N` scalar feature columns of length
/// `T`.
#[derive(Debug, Clone)]
pub struct TrainingSet {
    pub poses: Vec<Vec<f64>>,
    pub features: Vec<Vec<f64>>,
}

impl TrainingSet {
    pub fn new(poses: Vec<Vec<f64>>, features: Vec<Vec<f64>>) -> Result<Self> {
        let t = poses.len();
        if t < 2 {
            return Err(Error::InvalidTrainingData(
                "need at least two training pairs".into(),
            ));
        }
        let d = poses[0].len();
        if d == 0 || poses.iter().any(|p| p.len() != d) {
            return Err(Error::InvalidTrainingData(
                "ragged or empty pose rows".into(),
            ));
        }
        if poses.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrainingData("non-finite pose entry".into()));
        }
        if features.is_empty() {
            return Err(Error::InvalidTrainingData(
                "need at least one feature column".into(),
            ));
        }
        for col in &features {
            if col.len() != t {
                return Err(Error::InvalidTrainingData(
                    "feature column length differs from pose count".into(),
                ));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidTrainingData(
                    "non-finite feature value".into(),
                ));
            }
        }
        Ok(TrainingSet { poses, features })
    }

    pub fn len(&self) -> usize {
        self.poses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poses.is_empty()
    }

    pub fn pose_dim(&self) -> usize {
        self.poses[0].len()
    }

    pub fn feature_count(&self) -> usize {
        self.features.len()
    }
}

/// Learned per-feature structure: the mixture and the refining from its
/// cluster frame onto the pose frame.
#[derive(Debug, Clone)]
pub struct FeatureModel {
    pub mixture: GaussianMixture1D,
    pub refining: Refining,
    pub m_theta: f64,
}

/// The learned evidential model.
#[derive(Debug, Clone)]
pub struct EvidentialModel {
    pose_frame: Frame,
    poses: Vec<Vec<f64>>,
    features: Vec<FeatureModel>,
    weighted_likelihoods: bool,
}

/// Knobs for [`learn_model`].
#[derive(Debug, Clone)]
pub struct LearnOptions {
    pub seed: u64,
    /// Override the default per-feature discount `1/n_i`.
    pub m_theta: Option<f64>,
    /// Use `weight * density` responsibilities (default) or raw densities.
    pub weighted_likelihoods: bool,
}

impl Default for LearnOptions {
    fn default() -> Self {
        LearnOptions {
            seed: 0,
            m_theta: None,
            weighted_likelihoods: true,
        }
    }
}

/// A belief estimate on the pose frame: an unnormalized mass function
/// whose empty-set mass records the conflict among features. Features whose
/// likelihoods all underflowed contributed vacuously and are listed.
#[derive(Debug, Clone)]
pub struct BeliefEstimate {
    pub mass: MassFunction,
    pub conflict: f64,
    pub vacuous_features: Vec<usize>,
}

/// Fit the per-feature mixtures and refinings. Empty clusters (components
/// dominating no training value) are dropped and the cluster count
/// adjusted, so every refining image is non-empty.
pub fn learn_model(
    training: &TrainingSet,
    clusters: &[usize],
    opts: &LearnOptions,
) -> Result<EvidentialModel> {
    if clusters.len() != training.feature_count() {
        return Err(Error::InvalidArgument(format!(
            "{} cluster counts for {} features",
            clusters.len(),
            training.feature_count()
        )));
    }
    let t = training.len();
    let pose_frame = Frame::indexed("q", t)?;
    let mut features = Vec::with_capacity(clusters.len());
    for (i, (&k, column)) in clusters.iter().zip(training.features.iter()).enumerate() {
        let mixture = fit_em_1d(column, k, opts.seed.wrapping_add(i as u64))?;
        // Hard-assign every training sample to its dominant component.
        let assignment: Vec<usize> = column
            .iter()
            .map(|&y| mixture.dominant(y, opts.weighted_likelihoods))
            .collect();
        let mut kept = Vec::new();
        let mut images = Vec::new();
        for j in 0..mixture.len() {
            let members: Vec<usize> = (0..t).filter(|&s| assignment[s] == j).collect();
            if !members.is_empty() {
                kept.push(mixture.components()[j]);
                images.push(pose_frame.subset_of_indices(members));
            }
        }
        let mixture = GaussianMixture1D::new(normalize_weights(kept))?;
        let n_i = mixture.len();
        let cluster_frame = Frame::new((0..n_i).map(|j| format!("f{i}c{j}")))?;
        let refining = Refining::new(cluster_frame, pose_frame.clone(), images)?;
        let m_theta = opts.m_theta.unwrap_or(1.0 / n_i as f64);
        if !(0.0..=1.0).contains(&m_theta) {
            return Err(Error::InvalidArgument(format!(
                "m_theta {m_theta} outside [0,1]"
            )));
        }
        features.push(FeatureModel {
            mixture,
            refining,
            m_theta,
        });
    }
    Ok(EvidentialModel {
        pose_frame,
        poses: training.poses.clone(),
        features,
        weighted_likelihoods: opts.weighted_likelihoods,
    })
}

fn normalize_weights(mut comps: Vec<crate::gmm::Component>) -> Vec<crate::gmm::Component> {
    let total: f64 = comps.iter().map(|c| c.weight).sum();
    if total > 0.0 {
        for c in comps.iter_mut() {
            c.weight /= total;
        }
    }
    comps
}

impl EvidentialModel {
    pub fn from_parts(
        poses: Vec<Vec<f64>>,
        features: Vec<FeatureModel>,
        weighted_likelihoods: bool,
    ) -> Result<Self> {
        let t = poses.len();
        if t == 0 || features.is_empty() {
            return Err(Error::InvalidModel("empty model".into()));
        }
        let pose_frame = Frame::indexed("q", t)?;
        for f in &features {
            pose_frame.ensure_same(f.refining.target(), "feature refining target")?;
            if f.refining.source().size() != f.mixture.len() {
                return Err(Error::InvalidModel(
                    "mixture size differs from refining source".into(),
                ));
            }
            if !(0.0..=1.0).contains(&f.m_theta) {
                return Err(Error::InvalidModel(format!(
                    "m_theta {} outside [0,1]",
                    f.m_theta
                )));
            }
        }
        Ok(EvidentialModel {
            pose_frame,
            poses,
            features,
            weighted_likelihoods,
        })
    }

    pub fn pose_frame(&self) -> &Frame {
        &self.pose_frame
    }

    pub fn poses(&self) -> &[Vec<f64>] {
        &self.poses
    }

    pub fn pose_dim(&self) -> usize {
        self.poses[0].len()
    }

    pub fn features(&self) -> &[FeatureModel] {
        &self.features
    }

    pub fn weighted_likelihoods(&self) -> bool {
        self.weighted_likelihoods
    }

    /// Per-feature evidence for a test value: Dirichlet mass over the
    /// cluster frame, vacuously extended onto the pose frame. `None` when
    /// every likelihood underflows (extreme tail), in which case the
    /// feature contributes the vacuous belief function.
    fn feature_evidence(&self, index: usize, y: f64) -> Result<Option<MassFunction>> {
        let fm = &self.features[index];
        let gammas = fm.mixture.likelihoods(y, self.weighted_likelihoods);
        if gammas.iter().all(|&g| g <= 0.0) {
            return Ok(None);
        }
        let dirichlet = dirichlet_from_likelihoods(fm.refining.source(), &gammas, fm.m_theta)?;
        Ok(Some(fm.refining.vacuous_extension(&dirichlet)?))
    }
}

/// Conjunctive fusion of per-feature evidence for a test feature vector.
pub fn predict_belief(model: &EvidentialModel, features: &[f64]) -> Result<BeliefEstimate> {
    if features.len() != model.features.len() {
        return Err(Error::InvalidArgument(format!(
            "{} feature values for a model with {}",
            features.len(),
            model.features.len()
        )));
    }
    let mut acc: Option<MassFunction> = None;
    let mut vacuous_features = Vec::new();
    for (i, &y) in features.iter().enumerate() {
        let evidence = match model.feature_evidence(i, y)? {
            Some(e) => e,
            None => {
                vacuous_features.push(i);
                MassFunction::vacuous(model.pose_frame.clone())
            }
        };
        acc = Some(match acc {
            None => evidence,
            Some(prev) => conjunctive_combine(&prev, &evidence)?,
        });
    }
    let mass = acc.expect("at least one feature");
    let conflict = mass.empty_set_mass();
    // Reinterpret a conflict-free product as unnormalized anyway: the
    // estimate type carries the conflict explicitly.
    let mass = if mass.mode() == Mode::Unnormalized {
        mass
    } else {
        MassFunction::new(
            model.pose_frame.clone(),
            mass.focal_elements().map(|(s, v)| (s.clone(), v)),
            Mode::Unnormalized,
        )?
    };
    Ok(BeliefEstimate {
        mass,
        conflict,
        vacuous_features,
    })
}

/// Pignistic expected pose of an estimate. Fails on total conflict.
pub fn point_estimate(estimate: &BeliefEstimate, model: &EvidentialModel) -> Result<Vec<f64>> {
    let normalized = estimate.mass.normalized_part()?;
    let bet = pignistic(&normalized)?;
    let d = model.pose_dim();
    let mut out = vec![0.0; d];
    for (k, pose) in model.poses.iter().enumerate() {
        let p = bet.prob(k);
        for (o, v) in out.iter_mut().zip(pose.iter()) {
            *o += p * v;
        }
    }
    Ok(out)
}

/// Exact lower/upper expected pose per component over the credal set of
/// the estimate, via the Choquet form `Σ_A m(A) · min/max_{k ∈ A} q_k`.
#[allow(clippy::needless_range_loop)] // c indexes bounds and pose components in step
pub fn interval_estimate(
    estimate: &BeliefEstimate,
    model: &EvidentialModel,
) -> Result<Vec<(f64, f64)>> {
    let normalized = estimate.mass.normalized_part()?;
    let d = model.pose_dim();
    let mut out = vec![(0.0f64, 0.0f64); d];
    for (set, mass) in normalized.focal_elements() {
        for c in 0..d {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for k in set.iter() {
                let v = model.poses[k][c];
                lo = lo.min(v);
                hi = hi.max(v);
            }
            out[c].0 += mass * lo;
            out[c].1 += mass * hi;
        }
    }
    Ok(out)
}

/// Ratio of training poses resolved by the model: the number of non-empty
/// intersections of one cluster image per feature, over `T`. One means the
/// pose frame is the minimal refinement of the feature frames.
pub fn model_consistency(model: &EvidentialModel) -> f64 {
    let t = model.pose_frame.size();
    let mut count = 0usize;
    let sizes: Vec<usize> = model.features.iter().map(|f| f.mixture.len()).collect();
    let mut choice = vec![0usize; sizes.len()];
    loop {
        let mut inter = model.pose_frame.full();
        for (f, &j) in model.features.iter().zip(choice.iter()) {
            inter = inter.intersection(f.refining.image_of_element(j));
        }
        if !inter.is_empty() {
            count += 1;
        }
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return count as f64 / t as f64;
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < sizes[pos] {
                break;
            }
            choice[pos] = 0;
        }
        if choice.iter().all(|&c| c == 0) {
            return count as f64 / t as f64;
        }
    }
}

/// Closed-form upper (or lower) bound of the single-feature estimate with
/// zero discount: `(1/Z) Σ_j Γ_j(y) · max_{k in cluster j} q_k^c`. Used as
/// the independent oracle for [`interval_estimate`].
pub fn single_feature_bound(
    model: &EvidentialModel,
    feature: usize,
    y: f64,
    component: usize,
    upper: bool,
) -> Result<f64> {
    let fm = &model.features[feature];
    let gammas = fm.mixture.likelihoods(y, model.weighted_likelihoods);
    let z: f64 = gammas.iter().sum();
    if z == 0.0 {
        return Err(Error::Degenerate(
            "likelihoods underflow at this feature value".into(),
        ));
    }
    let mut acc = 0.0;
    for (j, &g) in gammas.iter().enumerate() {
        let image = fm.refining.image_of_element(j);
        let ext = image.iter().map(|k| model.poses[k][component]).fold(
            if upper {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            },
            |a, b| {
                if upper {
                    a.max(b)
                } else {
                    a.min(b)
                }
            },
        );
        acc += g * ext;
    }
    Ok(acc / z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Subset;
    use crate::geometry::credal_vertices;

    /// Poses 1, 2, 5 with feature values 23, 38, 86 and two clusters:
    /// EM puts {23, 38} in one component and {86} in the other.
    pub(crate) fn toy_model(m_theta: Option<f64>) -> EvidentialModel {
        let training = TrainingSet::new(
            vec![vec![1.0], vec![2.0], vec![5.0]],
            vec![vec![23.0, 38.0, 86.0]],
        )
        .unwrap();
        learn_model(
            &training,
            &[2],
            &LearnOptions {
                m_theta,
                ..Default::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn toy_clusters_split_as_expected() {
        let model = toy_model(None);
        let rho = &model.features[0].refining;
        let images: Vec<Subset> = (0..rho.source().size())
            .map(|j| rho.image_of_element(j).clone())
            .collect();
        let f = model.pose_frame().clone();
        assert!(images.contains(&f.subset_of_indices([0, 1])));
        assert!(images.contains(&f.subset_of_indices([2])));
        assert!((model.features[0].m_theta - 0.5).abs() < 1e-12);
    }

    #[test]
    fn single_cluster_maps_to_all_poses() {
        let training = TrainingSet::new(
            vec![vec![1.0], vec![2.0], vec![5.0]],
            vec![vec![23.0, 38.0, 86.0]],
        )
        .unwrap();
        let model = learn_model(&training, &[1], &LearnOptions::default()).unwrap();
        assert!(model.features[0].refining.image_of_element(0).is_full());
        assert!((model_consistency(&model) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn complementary_features_fully_resolve_the_poses() {
        // Two 2-cluster features whose images cross: all four
        // intersections are non-empty, so every pose is separately
        // resolved.
        let training = TrainingSet::new(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![
                vec![0.0, 0.1, 9.0, 9.1], // {q1,q2} | {q3,q4}
                vec![0.0, 9.0, 0.1, 9.1], // {q1,q3} | {q2,q4}
            ],
        )
        .unwrap();
        let model = learn_model(&training, &[2, 2], &LearnOptions::default()).unwrap();
        assert!((model_consistency(&model) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn identical_feature_columns_learn_identical_refinings() {
        let col = vec![1.0, 1.1, 7.0, 7.2];
        let training = TrainingSet::new(
            vec![vec![0.0], vec![0.1], vec![1.0], vec![1.1]],
            vec![col.clone(), col],
        )
        .unwrap();
        let model = learn_model(&training, &[2, 2], &LearnOptions::default()).unwrap();
        for j in 0..2 {
            assert_eq!(
                model.features[0].refining.image_of_element(j),
                model.features[1].refining.image_of_element(j)
            );
        }
        assert!((model_consistency(&model) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn prediction_at_cluster_mean_is_categorical() {
        let model = toy_model(Some(0.0));
        let mean = model.features[0].mixture.components()[1].mean;
        let est = predict_belief(&model, &[mean]).unwrap();
        assert!(est.conflict.abs() < 1e-12);
        // Nearly all mass on the dominant cluster's pose set.
        let dominant = model.features[0].mixture.dominant(mean, true);
        let image = model.features[0].refining.image_of_element(dominant);
        assert!(est.mass.mass(image) > 0.999);
        let point = point_estimate(&est, &model).unwrap();
        let expect: f64 =
            image.iter().map(|k| model.poses()[k][0]).sum::<f64>() / image.cardinality() as f64;
        assert!((point[0] - expect).abs() < 1e-3);
    }

    #[test]
    fn equidistant_two_cluster_masses() {
        // With m_theta = 1/2 and equal responsibilities, the Dirichlet
        // masses are (1/4, 1/4, 1/2).
        let model = toy_model(Some(0.5));
        let fm = &model.features[0];
        let (c0, c1) = (fm.mixture.components()[0], fm.mixture.components()[1]);
        // Find y with equal weighted likelihoods by bisection.
        let mut lo = c0.mean;
        let mut hi = c1.mean;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            let g = fm.mixture.likelihoods(mid, true);
            if g[0] > g[1] {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let y = 0.5 * (lo + hi);
        let est = predict_belief(&model, &[y]).unwrap();
        let f = model.pose_frame().clone();
        assert!((est.mass.mass(&f.subset_of_indices([0, 1])) - 0.25).abs() < 1e-6);
        assert!((est.mass.mass(&f.subset_of_indices([2])) - 0.25).abs() < 1e-6);
        assert!((est.mass.mass(&f.full()) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn disjoint_cluster_images_conflict() {
        // Two features whose dominant clusters point at disjoint pose
        // sets: conjunctive combination keeps mass on the empty set, plus
        // partial-agreement focal elements through the Dirichlet discounts.
        let training = TrainingSet::new(
            vec![vec![0.0], vec![1.0], vec![2.0], vec![3.0]],
            vec![
                vec![0.0, 0.1, 9.0, 9.1], // splits {q1,q2} | {q3,q4}
                vec![0.0, 7.0, 7.1, 7.2], // splits {q1} | {q2,q3,q4}
            ],
        )
        .unwrap();
        let model = learn_model(
            &training,
            &[2, 2],
            &LearnOptions {
                m_theta: Some(0.2),
                ..Default::default()
            },
        )
        .unwrap();
        // Feature 1 points at {q3,q4}, feature 2 at {q1}: disjoint.
        let est = predict_belief(&model, &[9.05, 0.05]).unwrap();
        assert!(est.conflict > 0.0);
        // Hand product of the dominant masses: each feature puts 0.8 of
        // its mass on its top cluster, so conflict is at least 0.64 times
        // the dominant responsibilities, and the partial combinations
        // {q3,q4}∩Θ and Θ∩{q1} keep positive mass.
        let f = model.pose_frame().clone();
        assert!(est.mass.mass(&f.subset_of_indices([2, 3])) > 0.0);
        assert!(est.mass.mass(&f.subset_of_indices([0])) > 0.0);
        // Adding a feature never decreases conflict.
        let training3 = TrainingSet::new(
            training.poses.clone(),
            vec![
                training.features[0].clone(),
                training.features[1].clone(),
                vec![1.0, 8.0, 1.1, 8.1],
            ],
        )
        .unwrap();
        let model3 = learn_model(
            &training3,
            &[2, 2, 2],
            &LearnOptions {
                m_theta: Some(0.2),
                ..Default::default()
            },
        )
        .unwrap();
        let est3 = predict_belief(&model3, &[9.05, 0.05, 1.05]).unwrap();
        assert!(est3.conflict >= est.conflict - 1e-12);
    }

    #[test]
    fn bayesian_variant_yields_disjoint_focal_elements() {
        let training = TrainingSet::new(
            (0..8).map(|i| vec![i as f64]).collect(),
            vec![
                (0..8)
                    .map(|i| (i / 2) as f64 * 10.0 + (i % 2) as f64 * 0.1)
                    .collect(),
                (0..8).map(|i| (i % 4) as f64 * 10.0).collect(),
            ],
        )
        .unwrap();
        let model = learn_model(
            &training,
            &[4, 4],
            &LearnOptions {
                m_theta: Some(0.0),
                ..Default::default()
            },
        )
        .unwrap();
        let est = predict_belief(&model, &[15.0, 12.0]).unwrap();
        let focals: Vec<Subset> = est
            .mass
            .focal_elements()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, _)| s.clone())
            .collect();
        for (i, a) in focals.iter().enumerate() {
            for b in focals.iter().skip(i + 1) {
                assert!(!a.intersects(b), "focal elements must be pairwise disjoint");
            }
        }
    }

    #[test]
    fn point_estimates() {
        let model = toy_model(Some(0.0));
        let f = model.pose_frame().clone();
        // Categorical estimate on a single pose.
        let cat = BeliefEstimate {
            mass: MassFunction::new(
                f.clone(),
                [(f.subset_of_indices([2]), 1.0)],
                Mode::Unnormalized,
            )
            .unwrap(),
            conflict: 0.0,
            vacuous_features: vec![],
        };
        assert!((point_estimate(&cat, &model).unwrap()[0] - 5.0).abs() < 1e-12);

        // Vacuous estimate: centroid of the training poses.
        let vac = BeliefEstimate {
            mass: MassFunction::new(f.clone(), [(f.full(), 1.0)], Mode::Unnormalized).unwrap(),
            conflict: 0.0,
            vacuous_features: vec![],
        };
        assert!((point_estimate(&vac, &model).unwrap()[0] - 8.0 / 3.0).abs() < 1e-12);

        // Equal responsibilities over clusters {q1,q2} and {q3} with zero
        // discount: pignistic splits the first cluster's half over two
        // poses, giving 0.5*1.5 + 0.5*5 = 3.25.
        let half = BeliefEstimate {
            mass: MassFunction::new(
                f.clone(),
                [
                    (f.subset_of_indices([0, 1]), 0.5),
                    (f.subset_of_indices([2]), 0.5),
                ],
                Mode::Unnormalized,
            )
            .unwrap(),
            conflict: 0.0,
            vacuous_features: vec![],
        };
        assert!((point_estimate(&half, &model).unwrap()[0] - 3.25).abs() < 1e-12);
        // Interval bounds: (min 1 + 5)/2 = 3.0 and (max 2 + 5)/2 = 3.5.
        let iv = interval_estimate(&half, &model).unwrap();
        assert!((iv[0].0 - 3.0).abs() < 1e-12);
        assert!((iv[0].1 - 3.5).abs() < 1e-12);
    }

    #[test]
    fn interval_of_bayesian_and_vacuous_estimates() {
        let model = toy_model(Some(0.0));
        let f = model.pose_frame().clone();
        let bayes = BeliefEstimate {
            mass: MassFunction::new(
                f.clone(),
                [
                    (f.subset_of_indices([0]), 0.2),
                    (f.subset_of_indices([1]), 0.3),
                    (f.subset_of_indices([2]), 0.5),
                ],
                Mode::Unnormalized,
            )
            .unwrap(),
            conflict: 0.0,
            vacuous_features: vec![],
        };
        let iv = interval_estimate(&bayes, &model).unwrap();
        let expect = 0.2 * 1.0 + 0.3 * 2.0 + 0.5 * 5.0;
        assert!((iv[0].0 - expect).abs() < 1e-12);
        assert!((iv[0].1 - expect).abs() < 1e-12);

        let vac = BeliefEstimate {
            mass: MassFunction::new(f.clone(), [(f.full(), 1.0)], Mode::Unnormalized).unwrap(),
            conflict: 0.0,
            vacuous_features: vec![],
        };
        let iv = interval_estimate(&vac, &model).unwrap();
        assert!((iv[0].0 - 1.0).abs() < 1e-12);
        assert!((iv[0].1 - 5.0).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn choquet_matches_vertex_enumeration() {
        // Lower/upper expectations agree with the min/max over the credal
        // vertices whenever the pose frame is small.
        let training = TrainingSet::new(
            (0..6).map(|i| vec![(i * i) as f64, -(i as f64)]).collect(),
            vec![
                (0..6).map(|i| (i / 2) as f64 * 7.0).collect(),
                (0..6).map(|i| (i % 3) as f64 * 5.0).collect(),
            ],
        )
        .unwrap();
        let model = learn_model(&training, &[3, 3], &LearnOptions::default()).unwrap();
        for y in [[3.0, 2.0], [7.5, 4.0], [10.0, 9.0]] {
            let est = predict_belief(&model, &y).unwrap();
            let Ok(normalized) = est.mass.normalized_part() else {
                continue;
            };
            let iv = interval_estimate(&est, &model).unwrap();
            let vs = credal_vertices(&normalized).unwrap();
            for c in 0..model.pose_dim() {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for p in &vs.by_selection {
                    let e: f64 = (0..6).map(|k| p.prob(k) * model.poses()[k][c]).sum();
                    lo = lo.min(e);
                    hi = hi.max(e);
                }
                assert!((iv[c].0 - lo).abs() < 1e-9);
                assert!((iv[c].1 - hi).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn tail_feature_values_contribute_vacuously() {
        let model = toy_model(Some(0.0));
        let est = predict_belief(&model, &[1e9]).unwrap();
        assert_eq!(est.vacuous_features, vec![0]);
        assert!(est.mass.mass(&model.pose_frame().full()) > 0.999);
    }

    #[test]
    fn single_feature_bound_formula_matches_interval() {
        let model = toy_model(Some(0.0));
        for step in 0..50 {
            let y = 20.0 + step as f64 * 1.4;
            let est = predict_belief(&model, &[y]).unwrap();
            if est.mass.normalized_part().is_err() {
                continue;
            }
            let iv = interval_estimate(&est, &model).unwrap();
            let lo = single_feature_bound(&model, 0, y, 0, false).unwrap();
            let hi = single_feature_bound(&model, 0, y, 0, true).unwrap();
            assert!((iv[0].0 - lo).abs() < 1e-9, "lower bound at y = {y}");
            assert!((iv[0].1 - hi).abs() < 1e-9, "upper bound at y = {y}");
        }
    }
}
