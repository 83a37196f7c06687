//! JSON document formats and CSV ingestion.
//!
//! Documents carry frame elements as labels (not bitmask integers) so they
//! diff cleanly; the canonical label order is the frame order and focal
//! elements are listed by ascending bitmask. Reals are serialized with 17
//! significant digits, which round-trips every f64 bit-exactly.
//!
//! All parsers validate against the core types' invariants and return
//! errors rather than panicking, whatever the input.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::bmr::{EvidentialModel, FeatureModel, TrainingSet};
use crate::error::{Error, Result};
use crate::frame::{Frame, Subset};
use crate::gmm::{Component, GaussianMixture1D};
use crate::mass::{MassFunction, Mode};
use crate::partition::{FrameFamily, PartitionFrame, Refining};
use crate::total::TotalBeliefProblem;
use crate::transform::ProbabilityDistribution;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassEntryDoc {
    pub set: Vec<String>,
    pub mass: f64,
}

/// `{"frame": [...], "masses": [{"set": [...], "mass": m}, ...], "mode": ...}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MassFunctionDoc {
    pub frame: Vec<String>,
    pub masses: Vec<MassEntryDoc>,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_mode() -> String {
    "normalized".into()
}

impl MassFunctionDoc {
    pub fn from_mass(m: &MassFunction) -> Self {
        let frame = m.frame();
        MassFunctionDoc {
            frame: frame.labels().to_vec(),
            masses: m
                .focal_elements()
                .map(|(s, v)| MassEntryDoc {
                    set: s.iter().map(|i| frame.label(i).to_string()).collect(),
                    mass: v,
                })
                .collect(),
            mode: m.mode().as_str().to_string(),
        }
    }

    pub fn to_mass(&self) -> Result<MassFunction> {
        let frame = Frame::new(self.frame.clone())?;
        let mode = parse_mode(&self.mode)?;
        let entries: Result<Vec<(Subset, f64)>> = self
            .masses
            .iter()
            .map(|e| {
                Ok((
                    frame.subset_of_labels(e.set.iter().map(String::as_str))?,
                    e.mass,
                ))
            })
            .collect();
        MassFunction::new(frame, entries?, mode)
    }
}

fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "normalized" => Ok(Mode::Normalized),
        "unnormalized" => Ok(Mode::Unnormalized),
        other => Err(Error::Document(format!("unknown mode {other:?}"))),
    }
}

pub fn parse_mass_json(s: &str) -> Result<MassFunction> {
    let doc: MassFunctionDoc =
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_mass()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbabilityDoc {
    pub frame: Vec<String>,
    pub probabilities: Vec<f64>,
}

impl ProbabilityDoc {
    pub fn from_distribution(p: &ProbabilityDistribution) -> Self {
        ProbabilityDoc {
            frame: p.frame().labels().to_vec(),
            probabilities: p.values().to_vec(),
        }
    }

    pub fn to_distribution(&self) -> Result<ProbabilityDistribution> {
        let frame = Frame::new(self.frame.clone())?;
        ProbabilityDistribution::new(frame, self.probabilities.clone())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub blocks: Vec<Vec<String>>,
}

/// `{"base": [...], "partitions": [{"blocks": [[...], ...]}, ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub base: Vec<String>,
    pub partitions: Vec<PartitionDoc>,
}

impl FamilyDoc {
    pub fn to_partitions(&self) -> Result<(Frame, Vec<PartitionFrame>)> {
        let base = Frame::new(self.base.clone())?;
        let mut out = Vec::with_capacity(self.partitions.len());
        for p in &self.partitions {
            let blocks: Result<Vec<Subset>> = p
                .blocks
                .iter()
                .map(|b| base.subset_of_labels(b.iter().map(String::as_str)))
                .collect();
            out.push(PartitionFrame::new(base.clone(), blocks?)?);
        }
        Ok((base, out))
    }

    pub fn to_family(&self) -> Result<FrameFamily> {
        let (base, partitions) = self.to_partitions()?;
        FrameFamily::new(base, partitions)
    }
}

pub fn parse_family_json(s: &str) -> Result<(Frame, Vec<PartitionFrame>)> {
    let doc: FamilyDoc = serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_partitions()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionalDoc {
    pub element: String,
    pub masses: Vec<MassEntryDoc>,
}

/// A restricted total-belief instance: the coarse and fine frames, the
/// cell image of every coarse element, the prior (on the coarse frame) and
/// one conditional per coarse element in the prior's core.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemDoc {
    pub coarse_frame: Vec<String>,
    pub fine_frame: Vec<String>,
    pub cells: Vec<Vec<String>>,
    pub prior: Vec<MassEntryDoc>,
    pub conditionals: Vec<ConditionalDoc>,
}

impl ProblemDoc {
    pub fn to_problem(&self) -> Result<TotalBeliefProblem> {
        let coarse = Frame::new(self.coarse_frame.clone())?;
        let fine = Frame::new(self.fine_frame.clone())?;
        if self.cells.len() != coarse.size() {
            return Err(Error::Document(format!(
                "{} cells for a coarse frame of {}",
                self.cells.len(),
                coarse.size()
            )));
        }
        let images: Result<Vec<Subset>> = self
            .cells
            .iter()
            .map(|c| fine.subset_of_labels(c.iter().map(String::as_str)))
            .collect();
        let refining = Refining::new(coarse.clone(), fine.clone(), images?)?;
        let prior_entries: Result<Vec<(Subset, f64)>> = self
            .prior
            .iter()
            .map(|e| {
                Ok((
                    coarse.subset_of_labels(e.set.iter().map(String::as_str))?,
                    e.mass,
                ))
            })
            .collect();
        let prior = MassFunction::new(coarse.clone(), prior_entries?, Mode::Normalized)?;
        let mut conditionals = BTreeMap::new();
        for c in &self.conditionals {
            let omega = coarse.position(&c.element).ok_or_else(|| {
                Error::Document(format!(
                    "conditional element {:?} not in the coarse frame",
                    c.element
                ))
            })?;
            let entries: Result<Vec<(Subset, f64)>> = c
                .masses
                .iter()
                .map(|e| {
                    Ok((
                        fine.subset_of_labels(e.set.iter().map(String::as_str))?,
                        e.mass,
                    ))
                })
                .collect();
            let m = MassFunction::new(fine.clone(), entries?, Mode::Normalized)?;
            if conditionals.insert(omega, m).is_some() {
                return Err(Error::Document(format!(
                    "duplicate conditional for element {:?}",
                    c.element
                )));
            }
        }
        TotalBeliefProblem::new(refining, prior, conditionals)
    }

    pub fn from_problem(problem: &TotalBeliefProblem) -> Self {
        let coarse = problem.refining().source();
        let fine = problem.fine_frame();
        let describe = |f: &Frame, s: &Subset| -> Vec<String> {
            s.iter().map(|i| f.label(i).to_string()).collect()
        };
        ProblemDoc {
            coarse_frame: coarse.labels().to_vec(),
            fine_frame: fine.labels().to_vec(),
            cells: (0..coarse.size())
                .map(|i| describe(fine, problem.refining().image_of_element(i)))
                .collect(),
            prior: problem
                .prior()
                .focal_elements()
                .map(|(s, v)| MassEntryDoc {
                    set: describe(coarse, s),
                    mass: v,
                })
                .collect(),
            conditionals: (0..coarse.size())
                .filter_map(|i| {
                    problem.conditional(i).map(|m| ConditionalDoc {
                        element: coarse.label(i).to_string(),
                        masses: m
                            .focal_elements()
                            .map(|(s, v)| MassEntryDoc {
                                set: describe(fine, s),
                                mass: v,
                            })
                            .collect(),
                    })
                })
                .collect(),
        }
    }
}

pub fn parse_problem_json(s: &str) -> Result<TotalBeliefProblem> {
    let doc: ProblemDoc = serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_problem()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureDoc {
    pub mixture: Vec<ComponentDoc>,
    /// Pose indices (0-based) per cluster; a disjoint cover of the poses.
    pub clusters: Vec<Vec<usize>>,
    pub m_theta: f64,
}

/// A serialized evidential model: pose matrix plus per-feature mixtures
/// and cluster-to-pose index lists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDoc {
    pub poses: Vec<Vec<f64>>,
    #[serde(default = "default_true")]
    pub weighted_likelihoods: bool,
    pub features: Vec<FeatureDoc>,
}

fn default_true() -> bool {
    true
}

impl ModelDoc {
    pub fn from_model(model: &EvidentialModel) -> Self {
        ModelDoc {
            poses: model.poses().to_vec(),
            weighted_likelihoods: model.weighted_likelihoods(),
            features: model
                .features()
                .iter()
                .map(|f| FeatureDoc {
                    mixture: f
                        .mixture
                        .components()
                        .iter()
                        .map(|c| ComponentDoc {
                            weight: c.weight,
                            mean: c.mean,
                            variance: c.variance,
                        })
                        .collect(),
                    clusters: (0..f.mixture.len())
                        .map(|j| f.refining.image_of_element(j).iter().collect())
                        .collect(),
                    m_theta: f.m_theta,
                })
                .collect(),
        }
    }

    pub fn to_model(&self) -> Result<EvidentialModel> {
        let t = self.poses.len();
        if t == 0 {
            return Err(Error::Document("model with no poses".into()));
        }
        let pose_frame = Frame::indexed("q", t)?;
        let mut features = Vec::with_capacity(self.features.len());
        for (i, f) in self.features.iter().enumerate() {
            if f.mixture.len() != f.clusters.len() {
                return Err(Error::Document(format!(
                    "feature {i}: {} components but {} clusters",
                    f.mixture.len(),
                    f.clusters.len()
                )));
            }
            let comps: Vec<Component> = f
                .mixture
                .iter()
                .map(|c| Component {
                    weight: c.weight,
                    mean: c.mean,
                    variance: c.variance,
                })
                .collect();
            let mixture = GaussianMixture1D::new(comps)?;
            let mut images = Vec::with_capacity(f.clusters.len());
            for idxs in &f.clusters {
                if idxs.iter().any(|&k| k >= t) {
                    return Err(Error::Document(format!(
                        "feature {i}: cluster index out of range (T = {t})"
                    )));
                }
                images.push(pose_frame.subset_of_indices(idxs.iter().copied()));
            }
            let cluster_frame = Frame::new((0..f.clusters.len()).map(|j| format!("f{i}c{j}")))?;
            let refining = Refining::new(cluster_frame, pose_frame.clone(), images)?;
            features.push(FeatureModel {
                mixture,
                refining,
                m_theta: f.m_theta,
            });
        }
        EvidentialModel::from_parts(self.poses.clone(), features, self.weighted_likelihoods)
    }
}

pub fn parse_model_json(s: &str) -> Result<EvidentialModel> {
    let doc: ModelDoc = serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))?;
    doc.to_model()
}

/// Training CSV: header `pose_0..pose_{D-1}, feat_0..feat_{N-1}`, one row
/// per training pair.
pub fn parse_training_csv(data: &str) -> Result<TrainingSet> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(data.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::Document(e.to_string()))?
        .clone();
    let mut pose_cols = Vec::new();
    let mut feat_cols = Vec::new();
    for (idx, name) in headers.iter().enumerate() {
        if let Some(n) = name.strip_prefix("pose_") {
            let k: usize = n
                .parse()
                .map_err(|_| Error::Document(format!("bad pose column {name:?}")))?;
            pose_cols.push((k, idx));
        } else if let Some(n) = name.strip_prefix("feat_") {
            let k: usize = n
                .parse()
                .map_err(|_| Error::Document(format!("bad feature column {name:?}")))?;
            feat_cols.push((k, idx));
        } else {
            return Err(Error::Document(format!("unexpected column {name:?}")));
        }
    }
    pose_cols.sort_unstable();
    feat_cols.sort_unstable();
    for (want, (got, _)) in pose_cols.iter().enumerate() {
        if *got != want {
            return Err(Error::Document(
                "pose columns must be pose_0..pose_{D-1}".into(),
            ));
        }
    }
    for (want, (got, _)) in feat_cols.iter().enumerate() {
        if *got != want {
            return Err(Error::Document(
                "feature columns must be feat_0..feat_{N-1}".into(),
            ));
        }
    }
    if pose_cols.is_empty() || feat_cols.is_empty() {
        return Err(Error::Document(
            "need at least one pose and one feature column".into(),
        ));
    }
    let mut poses = Vec::new();
    let mut features: Vec<Vec<f64>> = vec![Vec::new(); feat_cols.len()];
    for record in reader.records() {
        let record = record.map_err(|e| Error::Document(e.to_string()))?;
        let get = |idx: usize| -> Result<f64> {
            record
                .get(idx)
                .ok_or_else(|| Error::Document("short row".into()))?
                .parse::<f64>()
                .map_err(|e| Error::Document(format!("bad number: {e}")))
        };
        let mut pose = Vec::with_capacity(pose_cols.len());
        for &(_, idx) in &pose_cols {
            pose.push(get(idx)?);
        }
        poses.push(pose);
        for (col, &(_, idx)) in features.iter_mut().zip(feat_cols.iter()) {
            col.push(get(idx)?);
        }
    }
    TrainingSet::new(poses, features)
}

/// Render training data back to the CSV schema.
pub fn training_to_csv(training: &TrainingSet) -> String {
    let d = training.pose_dim();
    let n = training.feature_count();
    let mut out = String::new();
    let header: Vec<String> = (0..d)
        .map(|i| format!("pose_{i}"))
        .chain((0..n).map(|i| format!("feat_{i}")))
        .collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for (k, pose) in training.poses.iter().enumerate() {
        let row: Vec<String> = pose
            .iter()
            .map(|v| format!("{v}"))
            .chain((0..n).map(|i| format!("{}", training.features[i][k])))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// JSON serializer printing every real with 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize a document with fixed 17-significant-digit reals. Identical
/// values always produce identical bytes.
pub fn to_json(value: &impl Serialize) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigitFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Document(e.to_string()))?;
    String::from_utf8(out).map_err(|e| Error::Document(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bmr::{learn_model, LearnOptions};

    #[test]
    fn mass_document_roundtrip() {
        let f = Frame::new(["a", "b", "c"]).unwrap();
        let m = MassFunction::new(
            f.clone(),
            [
                (f.subset_of_labels(["a"]).unwrap(), 1.0 / 3.0),
                (f.subset_of_labels(["a", "c"]).unwrap(), 2.0 / 3.0),
            ],
            Mode::Normalized,
        )
        .unwrap();
        let doc = MassFunctionDoc::from_mass(&m);
        let json = to_json(&doc).unwrap();
        let back = parse_mass_json(&json).unwrap();
        assert!(back.approx_eq(&m, 0.0));
        // Serialization is byte-stable for the canonical ordering.
        assert_eq!(json, to_json(&MassFunctionDoc::from_mass(&back)).unwrap());
    }

    #[test]
    fn seventeen_digit_reals_roundtrip_bit_exactly() {
        let values = [5.0 / 6.0, 1.0 / 91.0, f64::MIN_POSITIVE, 0.1 + 0.2];
        for v in values {
            let s = to_json(&v).unwrap();
            let back: f64 = serde_json::from_str(&s).unwrap();
            assert_eq!(v.to_bits(), back.to_bits(), "{s}");
        }
    }

    #[test]
    fn documents_reject_malformed_input() {
        assert!(parse_mass_json("{").is_err());
        assert!(parse_mass_json("{\"frame\":[],\"masses\":[]}").is_err());
        assert!(parse_mass_json(
            "{\"frame\":[\"a\"],\"masses\":[{\"set\":[\"zz\"],\"mass\":1.0}]}"
        )
        .is_err());
        assert!(parse_mass_json(
            "{\"frame\":[\"a\",\"b\"],\"masses\":[{\"set\":[\"a\"],\"mass\":0.4}]}"
        )
        .is_err());
        // Empty set mass is only valid in unnormalized mode.
        assert!(parse_mass_json(
            "{\"frame\":[\"a\"],\"masses\":[{\"set\":[],\"mass\":0.2},{\"set\":[\"a\"],\"mass\":0.8}]}"
        )
        .is_err());
        assert!(parse_mass_json(
            "{\"frame\":[\"a\"],\"masses\":[{\"set\":[],\"mass\":0.2},{\"set\":[\"a\"],\"mass\":0.8}],\"mode\":\"unnormalized\"}"
        )
        .is_ok());
    }

    #[test]
    fn family_document_parses() {
        let json = r#"{"base":["1","2","3","4"],
            "partitions":[{"blocks":[["1","2"],["3","4"]]},
                          {"name":"odd-even","blocks":[["1","3"],["2","4"]]}]}"#;
        let (base, parts) = parse_family_json(json).unwrap();
        assert_eq!(base.size(), 4);
        assert_eq!(parts.len(), 2);
        assert!(
            parse_family_json(r#"{"base":["1","2"],"partitions":[{"blocks":[["1"]]}]}"#).is_err()
        );
    }

    #[test]
    fn problem_document_roundtrip() {
        let json = r#"{
            "coarse_frame": ["w1","w2","w3"],
            "fine_frame": ["a1","a2","b1","c1","c2"],
            "cells": [["a1","a2"],["b1"],["c1","c2"]],
            "prior": [{"set":["w1","w2","w3"],"mass":1.0}],
            "conditionals": [
              {"element":"w1","masses":[{"set":["a1"],"mass":0.3},{"set":["a2"],"mass":0.7}]},
              {"element":"w2","masses":[{"set":["b1"],"mass":1.0}]},
              {"element":"w3","masses":[{"set":["c1"],"mass":0.4},{"set":["c2"],"mass":0.6}]}
            ]}"#;
        let problem = parse_problem_json(json).unwrap();
        let doc = ProblemDoc::from_problem(&problem);
        let again = doc.to_problem().unwrap();
        assert!(again.prior().approx_eq(problem.prior(), 0.0));
        let solution = crate::total::solve(&problem, 1).unwrap();
        assert!(crate::total::verify_total(&solution.total, &problem)
            .unwrap()
            .all_ok());
    }

    #[test]
    fn model_document_roundtrip() {
        let training = TrainingSet::new(
            vec![vec![1.0], vec![2.0], vec![5.0]],
            vec![vec![23.0, 38.0, 86.0]],
        )
        .unwrap();
        let model = learn_model(&training, &[2], &LearnOptions::default()).unwrap();
        let doc = ModelDoc::from_model(&model);
        let json = to_json(&doc).unwrap();
        let back = parse_model_json(&json).unwrap();
        let est_a = crate::bmr::predict_belief(&model, &[30.0]).unwrap();
        let est_b = crate::bmr::predict_belief(&back, &[30.0]).unwrap();
        assert!(est_a.mass.approx_eq(&est_b.mass, 0.0));

        // Out-of-range cluster indices are rejected.
        let bad = r#"{"poses":[[1.0]],"features":[{"mixture":[{"weight":1.0,"mean":0.0,"variance":1.0}],"clusters":[[7]],"m_theta":0.0}]}"#;
        assert!(parse_model_json(bad).is_err());
    }

    #[test]
    fn training_csv_roundtrip_and_validation() {
        let csv = "pose_0,pose_1,feat_0,feat_1\n1.0,2.0,10,20\n3.0,4.0,30,40\n";
        let t = parse_training_csv(csv).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.pose_dim(), 2);
        assert_eq!(t.feature_count(), 2);
        assert_eq!(t.features[1], vec![20.0, 40.0]);
        let rendered = training_to_csv(&t);
        let back = parse_training_csv(&rendered).unwrap();
        assert_eq!(back.poses, t.poses);

        assert!(parse_training_csv("x,y\n1,2\n").is_err());
        assert!(parse_training_csv("pose_0,feat_0\n1.0\n").is_err());
        assert!(parse_training_csv("pose_0,feat_1\n1.0,2.0\n3.0,4.0\n").is_err());
        assert!(parse_training_csv("pose_0,feat_0\nNaN,2.0\n1.0,4.0\n").is_err());
    }
}
