//! First sufficient condition, in a fixed order, that certifies MSCQ.

use serde::Serialize;

use super::conditions::{derive_seed, dir_order_condition, order_condition, polynomial_order, separable_local_max, soscms, Outcome};
use super::normality::{check_pq_normality, CheckConfig};
use super::verdict::Status;
use crate::error::Result;
use crate::model::{is_admissible, GmpInstance, MultiIndex};
use crate::multipliers::direction_classes;
use crate::kernel::rational::vec_to_f64;
use crate::oracle::{mscq_probe, ProbeVerdict};

pub fn ordinal(m: u32) -> String {
    let suffix = match (m % 10, m % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{m}{suffix}")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderOutcome {
    /// e.g. `Polyn. 4th-OSC`, or `probe: BOUNDED(0.707)` when nothing certified
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeVerdict>,
}

impl LadderOutcome {
    pub fn certified(&self) -> bool {
        self.probe.is_none()
    }
}

fn holds(o: Outcome) -> bool {
    matches!(o, Outcome::Holds(_))
}

/// Tries, in order: affine map, SOSCMS, the polynomial 2nd-order condition
/// (quadratic maps), m-th order conditions, the polynomial m-th order
/// condition, separable local maxima, directional m-th order conditions,
/// quasi-normality. Falls back to the probe.
pub fn first_certifying(inst: &GmpInstance, cfg: &CheckConfig) -> Result<LadderOutcome> {
    let done = |label: String| Ok(LadderOutcome { label, probe: None });
    let g = inst.disjunctive()?;
    let seed = derive_seed(cfg.seed, "ladder");
    if inst.map.is_affine() {
        return done("Robinson SC".into());
    }
    if holds(soscms(inst)?) {
        return done("SOSCMS".into());
    }
    let deg = inst.map.degree().unwrap_or(2);
    if deg == 2 && holds(polynomial_order(inst, seed)?) {
        return done("Polyn. 2nd-OSC".into());
    }
    for m in 3..=deg {
        if holds(order_condition(inst, m, seed)?) {
            return done(format!("{}-OSC", ordinal(m)));
        }
    }
    if deg >= 3 && holds(polynomial_order(inst, seed)?) {
        return done(format!("Polyn. {}-OSC", ordinal(deg)));
    }
    if holds(separable_local_max(inst)?) {
        return done("Pseudo-normality".into());
    }
    for m in 2..=deg {
        if holds(dir_order_condition(inst, m, seed)?) {
            return done(format!("Dir. {}-OSC", ordinal(m)));
        }
    }
    let quasi = MultiIndex::quasi(inst.d());
    if is_admissible(g, &quasi) && check_pq_normality(inst, &quasi, false, cfg)?.status == Status::Holds {
        return done("Quasi-normality".into());
    }
    let seeds: Vec<Vec<f64>> =
        direction_classes(inst)?.into_iter().filter_map(|c| c.pullback_witness.map(|u| vec_to_f64(&u))).collect();
    let probe = mscq_probe(inst, &cfg.probe, &seeds)?;
    Ok(LadderOutcome { label: format!("probe: {}", probe.verdict), probe: Some(probe.verdict) })
}

#[cfg(test)]
mod tests {
    use super::ordinal;

    #[test]
    fn ordinals() {
        let got: Vec<String> = [1, 2, 3, 4, 11, 12, 13, 21, 22].into_iter().map(ordinal).collect();
        assert_eq!(got, ["1st", "2nd", "3rd", "4th", "11th", "12th", "13th", "21st", "22nd"]);
    }
}
