//! Sampled exactness test for `P_α(x) = f(x) + α d_Γ(F(x))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::rational::{from_f64, to_f64, QVec};
use crate::model::{Gamma, GmpInstance};

use super::distance::{distance_to_gamma, ortho_distance, Norm};

/// Distance used in the penalty term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PenaltyNorm {
    Plain { norm: Norm },
    /// per-factor `inner` norm, combined across factors with `outer`
    Ortho { inner: Norm, outer: Norm },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PenaltyConfig {
    pub r0: f64,
    pub levels: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for PenaltyConfig {
    fn default() -> Self {
        PenaltyConfig { r0: 0.5, levels: 12, samples: 128, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PenaltyRow {
    pub alpha: f64,
    /// `min P_α(x) − P_α(x̄)` over the samples at each radius
    pub margins: Vec<f64>,
    /// no sample at the two finest radii improves on `x̄`
    pub exact_suspected: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PenaltyReport {
    pub norm: PenaltyNorm,
    pub radii: Vec<f64>,
    pub rows: Vec<PenaltyRow>,
    pub smallest_exact_alpha: Option<f64>,
}

/// `d_Γ(y)` in the requested norm at a float point.
pub fn penalty_distance(inst: &GmpInstance, y: &[f64], norm: PenaltyNorm) -> Result<f64> {
    let g = match &inst.gamma {
        Gamma::Disjunctive(g) => g,
        Gamma::Analytic(a) => {
            return match norm {
                PenaltyNorm::Plain { norm: Norm::L2 } => Ok(a.distance(y)),
                _ => Err(Error::AnalyticGamma),
            }
        }
    };
    let yq: QVec = y.iter().map(|&v| from_f64(v)).collect::<Option<_>>().ok_or_else(|| Error::Input("non-finite F(x)".into()))?;
    match norm {
        PenaltyNorm::Plain { norm: Norm::L2 } => Ok(to_f64(&distance_to_gamma(g, &yq, Norm::L2)).sqrt()),
        PenaltyNorm::Plain { norm } => Ok(to_f64(&distance_to_gamma(g, &yq, norm))),
        PenaltyNorm::Ortho { inner, outer } => ortho_distance(g, &yq, inner, outer)
            .map(|d| to_f64(&d))
            .ok_or_else(|| Error::Input("ortho penalty needs an interval-product Γ and l1/l∞ norms".into())),
    }
}

pub fn penalty_probe(inst: &GmpInstance, alphas: &[f64], norm: PenaltyNorm, cfg: &PenaltyConfig) -> Result<PenaltyReport> {
    let f = inst.objective.as_ref().ok_or(Error::MissingObjective)?;
    let xbar = inst.point_f64();
    let n = inst.n();
    let fbar = f.eval_f64(&xbar)[0];
    let mut radii = Vec::new();
    // per radius: (f(x) - f(x̄), d_Γ(F(x))) for every sample
    let mut samples: Vec<Vec<(f64, f64)>> = Vec::new();
    for j in 0..=cfg.levels {
        let r = cfg.r0 * 0.5f64.powi(j as i32);
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(j as u64);
        let mut here = Vec::with_capacity(cfg.samples);
        for k in 0..cfg.samples {
            let s: Vec<f64> = if k < 2 * n {
                (0..n).map(|i| if i == k / 2 { if k % 2 == 0 { 1.0 } else { -1.0 } } else { 0.0 }).collect()
            } else {
                (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()
            };
            let x: Vec<f64> = xbar.iter().zip(&s).map(|(a, b)| a + r * b).collect();
            let d = penalty_distance(inst, &inst.map.eval_f64(&x), norm)?;
            here.push((f.eval_f64(&x)[0] - fbar, d));
        }
        radii.push(r);
        samples.push(here);
    }
    let rows: Vec<PenaltyRow> = alphas
        .iter()
        .map(|&alpha| {
            let margins: Vec<f64> = samples
                .iter()
                .map(|s| s.iter().map(|(df, d)| df + alpha * d).fold(f64::INFINITY, f64::min))
                .collect();
            let fine = &margins[margins.len().saturating_sub(2)..];
            PenaltyRow { alpha, exact_suspected: fine.iter().all(|&m| m >= -1e-14), margins }
        })
        .collect();
    let smallest_exact_alpha = rows.iter().filter(|r| r.exact_suspected).map(|r| r.alpha).reduce(f64::min);
    Ok(PenaltyReport { norm, radii, rows, smallest_exact_alpha })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{prototype_set, SmoothMap};
    use crate::kernel::rational::qvec;

    #[test]
    fn mpcc_closed_form() {
        // G = x1, H = x2, f = x1 + x2; exact from α = 2 on
        let inst = GmpInstance::new(
            "mpcc",
            SmoothMap::parse(2, &["x1", "x2"]).unwrap(),
            Gamma::Disjunctive(prototype_set(crate::model::PrototypeKind::Cc, 1)),
            qvec(&[0, 0]),
        )
        .unwrap();
        let norm = PenaltyNorm::Ortho { inner: Norm::Linf, outer: Norm::L1 };
        for (g, h, d) in [(0.375, 0.25, 0.25), (-0.125, 0.5, 0.125), (0.5, -0.25, 0.25)] {
            assert_eq!(penalty_distance(&inst, &[g, h], norm).unwrap(), d);
        }
        let with_f = inst.with_objective(SmoothMap::parse(2, &["x1 + x2"]).unwrap()).unwrap();
        let rep = penalty_probe(&with_f, &[0.5, 4.0], norm, &PenaltyConfig::default()).unwrap();
        assert!(!rep.rows[0].exact_suspected);
        assert_eq!(rep.smallest_exact_alpha, Some(4.0));
    }
}
