//! Sampling probe for metric subregularity of `x ↦ F(x) − Γ`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kernel::rational::{qf, to_f64, vec_to_f64, Rational};
use crate::model::GmpInstance;

use super::distance::gamma_distance_f64;
use super::feasible::{feasible_distance, feasible_pool, is_feasible_f64, FeasiblePool};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeConfig {
    /// largest radius; radii are `r0·2⁻ʲ`, `j = 0..=levels`
    pub r0: f64,
    pub levels: usize,
    pub samples: usize,
    pub seed: u64,
    /// grid cells per radius for the sampled feasible pool
    pub pool_resolution: usize,
    /// log-log slope at or below which divergence is suspected
    pub threshold: f64,
    /// number of finest radii entering the slope fit
    pub fit_points: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig {
            r0: 0.5,
            levels: 20,
            samples: 512,
            seed: 0,
            pool_resolution: 8,
            threshold: -0.25,
            fit_points: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeVerdict {
    Bounded { kappa: f64 },
    DivergenceSuspected,
    Inconclusive,
}

impl std::fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProbeVerdict::Bounded { kappa } => write!(f, "BOUNDED({})", fmt_kappa(*kappa)),
            ProbeVerdict::DivergenceSuspected => write!(f, "DIVERGENCE_SUSPECTED"),
            ProbeVerdict::Inconclusive => write!(f, "INCONCLUSIVE"),
        }
    }
}

fn fmt_kappa(k: f64) -> String {
    if k == 0.0 {
        "0".into()
    } else {
        format!("{k:.3}")
    }
}

/// The worst sample at one radius.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbePoint {
    pub radius: f64,
    pub x: Vec<f64>,
    pub d_feasible: f64,
    pub d_gamma: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    #[serde(flatten)]
    pub verdict: ProbeVerdict,
    pub slope: Option<f64>,
    /// `ρ_j`, `None` where every sample was feasible
    pub ratios: Vec<Option<f64>>,
    pub radii: Vec<f64>,
    /// maximizing points over the fitted radii, coarse to fine
    pub witness: Vec<ProbePoint>,
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Unit directions: `±eᵢ`, the extra seeds, then uniform samples.
fn directions(n: usize, extra: &[Vec<f64>], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let push = |v: Vec<f64>, out: &mut Vec<Vec<f64>>| {
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 0.0 && out.len() < count {
            out.push(v.into_iter().map(|a| a / norm).collect());
        }
    };
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = s;
            push(v, &mut out);
        }
    }
    for e in extra {
        push(e.clone(), &mut out);
        push(e.iter().map(|a| -a).collect(), &mut out);
    }
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let nn: f64 = v.iter().map(|a| a * a).sum();
        if nn > 1e-12 && nn <= 1.0 {
            push(v, &mut out);
        }
    }
    out
}

/// Samples `x̄ + r·s` at each radius and records `ρ = max d_X(x) / d_Γ(F(x))`
/// over the infeasible samples. `seeds` are extra directions tried at every
/// radius.
pub fn mscq_probe(inst: &GmpInstance, cfg: &ProbeConfig, seeds: &[Vec<f64>]) -> Result<ProbeResult> {
    let xbar = inst.point_f64();
    let n = inst.n();
    let mut radii = Vec::new();
    let mut ratios = Vec::new();
    let mut best_points: Vec<Option<ProbePoint>> = Vec::new();
    for j in 0..=cfg.levels {
        let r_exact: Rational = qf(1, 1 << j.min(62)) * Rational::from_float(cfg.r0).unwrap_or_else(|| qf(1, 2));
        let r = to_f64(&r_exact);
        let pool: Option<FeasiblePool> = match inst.feasible_override {
            Some(_) => None,
            None => Some(feasible_pool(inst, &r_exact, cfg.pool_resolution)?),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(j as u64);
        let mut best: Option<ProbePoint> = None;
        let mut seen = HashSet::new();
        for s in directions(n, seeds, cfg.samples, &mut rng) {
            let x: Vec<f64> = xbar.iter().zip(&s).map(|(a, b)| a + r * b).collect();
            if !seen.insert(x.iter().map(|v| v.to_bits()).collect::<Vec<u64>>()) {
                continue;
            }
            let dx = feasible_distance(inst, &x, pool.as_ref())?;
            if dx <= 0.0 || (inst.feasible_override.is_none() && is_feasible_f64(inst, &x)) {
                continue;
            }
            let dg = gamma_distance_f64(&inst.gamma, &inst.map.eval_f64(&x));
            if !(dg > 0.0) || !dg.is_finite() {
                continue;
            }
            let ratio = dx / dg;
            if best.as_ref().is_none_or(|b| ratio > b.ratio) {
                best = Some(ProbePoint { radius: r, x, d_feasible: dx, d_gamma: dg, ratio });
            }
        }
        radii.push(r);
        ratios.push(best.as_ref().map(|b| b.ratio));
        best_points.push(best);
    }
    let observed: Vec<usize> = (0..radii.len()).filter(|&j| ratios[j].is_some()).collect();
    if observed.is_empty() {
        return Ok(ProbeResult {
            verdict: ProbeVerdict::Bounded { kappa: 0.0 },
            slope: None,
            ratios,
            radii,
            witness: vec![],
        });
    }
    if observed.len() < 3 {
        return Ok(ProbeResult { verdict: ProbeVerdict::Inconclusive, slope: None, ratios, radii, witness: vec![] });
    }
    let fit: Vec<usize> = observed[observed.len().saturating_sub(cfg.fit_points)..].to_vec();
    let pts: Vec<(f64, f64)> = fit.iter().map(|&j| (radii[j].ln(), ratios[j].unwrap().ln())).collect();
    let slope = ls_slope(&pts);
    let witness: Vec<ProbePoint> = fit.iter().filter_map(|&j| best_points[j].clone()).collect();
    let verdict = if slope <= cfg.threshold {
        ProbeVerdict::DivergenceSuspected
    } else {
        let kappa = observed.iter().map(|&j| ratios[j].unwrap()).fold(0.0, f64::max);
        ProbeVerdict::Bounded { kappa }
    };
    Ok(ProbeResult { verdict, slope: Some(slope), ratios, radii, witness })
}

/// Float copies of rational seed directions.
pub fn seed_directions(dirs: &[crate::kernel::QVec]) -> Vec<Vec<f64>> {
    dirs.iter().map(|d| vec_to_f64(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let pts: Vec<(f64, f64)> = (0..8).map(|j| {
            let r = 2f64.powi(-j);
            (r.ln(), (3.0 * r.powf(-0.5)).ln())
        }).collect();
        assert!((ls_slope(&pts) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn directions_are_deterministic_units() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        let da = directions(3, &[vec![1.0, 1.0, 0.0]], 40, &mut a);
        assert_eq!(da, directions(3, &[vec![1.0, 1.0, 0.0]], 40, &mut b));
        assert_eq!(da.len(), 40);
        assert!(da.iter().all(|v| (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12));
        assert_eq!(da[0], vec![1.0, 0.0, 0.0]);
    }
}
