//! One-dimensional Gaussian mixtures fitted by EM.
//!
//! Initialization is k-means++ on the scalar values with a seeded RNG, so
//! fits are deterministic given the seed. Variances are floored at
//! `1e-6 * range^2` to keep degenerate clusters (single points, duplicated
//! values) well defined.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_ITERS: usize = 200;
pub const LL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Component {
    pub weight: f64,
    pub mean: f64,
    pub variance: f64,
}

impl Component {
    pub fn density(&self, y: f64) -> f64 {
        let d = y - self.mean;
        (-(d * d) / (2.0 * self.variance)).exp()
            / (2.0 * std::f64::consts::PI * self.variance).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMixture1D {
    components: Vec<Component>,
}

impl GaussianMixture1D {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidModel(
                "a mixture needs at least one component".into(),
            ));
        }
        let wsum: f64 = components.iter().map(|c| c.weight).sum();
        if (wsum - 1.0).abs() > 1e-6 {
            return Err(Error::InvalidModel(format!(
                "mixture weights sum to {wsum}"
            )));
        }
        for c in &components {
            if c.weight <= 0.0 || c.variance <= 0.0 || !c.mean.is_finite() {
                return Err(Error::InvalidModel(format!("invalid component {c:?}")));
            }
        }
        Ok(GaussianMixture1D { components })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Per-component likelihoods of a value: `weight * density` when
    /// `weighted`, raw densities otherwise.
    pub fn likelihoods(&self, y: f64, weighted: bool) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| {
                if weighted {
                    c.weight * c.density(y)
                } else {
                    c.density(y)
                }
            })
            .collect()
    }

    pub fn log_likelihood(&self, values: &[f64]) -> f64 {
        values
            .iter()
            .map(|&y| {
                let p: f64 = self
                    .components
                    .iter()
                    .map(|c| c.weight * c.density(y))
                    .sum();
                p.max(f64::MIN_POSITIVE).ln()
            })
            .sum()
    }

    /// Index of the component with the largest likelihood for `y`.
    pub fn dominant(&self, y: f64, weighted: bool) -> usize {
        let ls = self.likelihoods(y, weighted);
        ls.iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(i, _)| i)
            .unwrap()
    }
}

/// Fit a k-component mixture to scalar values by EM with k-means++
/// initialization. Deterministic for a fixed seed.
pub fn fit_em_1d(values: &[f64], k: usize, seed: u64) -> Result<GaussianMixture1D> {
    if values.is_empty() || k == 0 {
        return Err(Error::InvalidArgument("need values and k >= 1".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidTrainingData(
            "non-finite feature value".into(),
        ));
    }
    let mut distinct: Vec<f64> = values.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    if k > distinct.len() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds the {} distinct values",
            distinct.len()
        )));
    }
    let lo = distinct[0];
    let hi = distinct[distinct.len() - 1];
    let range = (hi - lo).max(f64::MIN_POSITIVE);
    let floor = 1e-6 * range * range;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut means = kmeanspp(values, k, &mut rng);
    means.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let n = values.len();
    let mut comps: Vec<Component> = means
        .into_iter()
        .map(|m| Component {
            weight: 1.0 / k as f64,
            mean: m,
            variance: (range * range / (k * k) as f64).max(floor),
        })
        .collect();

    let mut resp = vec![vec![0.0f64; k]; n];
    let mut prev_ll = f64::NEG_INFINITY;
    for _ in 0..MAX_ITERS {
        // E step.
        for (i, &y) in values.iter().enumerate() {
            let mut total = 0.0;
            for (j, c) in comps.iter().enumerate() {
                let p = c.weight * c.density(y);
                resp[i][j] = p;
                total += p;
            }
            if total <= 0.0 {
                // Far tail of every component: hard-assign to the nearest
                // mean.
                let j = nearest(&comps, y);
                for (jj, r) in resp[i].iter_mut().enumerate() {
                    *r = if jj == j { 1.0 } else { 0.0 };
                }
            } else {
                for r in resp[i].iter_mut() {
                    *r /= total;
                }
            }
        }
        // M step.
        for j in 0..k {
            let nj: f64 = (0..n).map(|i| resp[i][j]).sum();
            if nj <= 1e-12 {
                continue; // keep a starved component where it is
            }
            let mean = (0..n).map(|i| resp[i][j] * values[i]).sum::<f64>() / nj;
            let var = (0..n)
                .map(|i| resp[i][j] * (values[i] - mean).powi(2))
                .sum::<f64>()
                / nj;
            comps[j] = Component {
                weight: nj / n as f64,
                mean,
                variance: var.max(floor),
            };
        }
        let wsum: f64 = comps.iter().map(|c| c.weight).sum();
        for c in comps.iter_mut() {
            c.weight /= wsum;
        }
        let mixture = GaussianMixture1D {
            components: comps.clone(),
        };
        let ll = mixture.log_likelihood(values);
        if (ll - prev_ll).abs() < LL_TOL {
            break;
        }
        prev_ll = ll;
    }
    GaussianMixture1D::new(comps)
}

fn nearest(comps: &[Component], y: f64) -> usize {
    comps
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1.mean - y)
                .abs()
                .partial_cmp(&(b.1.mean - y).abs())
                .unwrap()
        })
        .map(|(i, _)| i)
        .unwrap()
}

fn kmeanspp(values: &[f64], k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let mut centers = Vec::with_capacity(k);
    centers.push(values[rng.gen_range(0..values.len())]);
    while centers.len() < k {
        let d2: Vec<f64> = values
            .iter()
            .map(|&v| {
                centers
                    .iter()
                    .map(|&c| (v - c) * (v - c))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect();
        let total: f64 = d2.iter().sum();
        if total <= 0.0 {
            // Remaining values coincide with chosen centers; the distinct
            // count check above guarantees another value exists.
            let next = values
                .iter()
                .copied()
                .find(|v| !centers.contains(v))
                .unwrap_or(values[0]);
            centers.push(next);
            continue;
        }
        let mut draw = rng.gen_range(0.0..total);
        let mut chosen = values[values.len() - 1];
        for (i, &v) in values.iter().enumerate() {
            if draw < d2[i] {
                chosen = v;
                break;
            }
            draw -= d2[i];
        }
        centers.push(chosen);
    }
    centers
}
