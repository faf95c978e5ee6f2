//! Individual constraint qualification checks.

use serde::Serialize;

use super::conditions::{
    cone_rays, derive_seed, dir_order_condition, order_condition, polynomial_order, relevant_classes, separable_local_max,
    soscms, soscpn, soscpqn, span_basis, Outcome,
};
use super::verdict::{Certificate, Condition, Verdict, Witness};
use crate::cones::regular_normal_cone;
use crate::error::{Error, Result};
use crate::kernel::rational::{neg, QVec};
use crate::model::{is_admissible, GmpInstance, MultiIndex};
use crate::multipliers::lambda0;
use crate::oracle::{witness_search, ProbeConfig, WitnessConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckConfig {
    pub seed: u64,
    pub witness: WitnessConfig,
    pub probe: ProbeConfig,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, witness: WitnessConfig::default(), probe: ProbeConfig::default() }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        let mut c = CheckConfig { seed, ..Default::default() };
        c.probe.seed = seed;
        c
    }
}

/// Turns the outcome of a sufficient condition into a verdict on that
/// condition.
pub fn outcome_verdict(c: Condition, o: Outcome) -> Verdict {
    match o {
        Outcome::Holds(cert) => Verdict::holds(c, cert),
        Outcome::Fails(w, note) => Verdict::fails(c, w).note(note),
        Outcome::Inconclusive(note) => Verdict::undecided(c, note),
    }
}

pub fn check_gmfcq(inst: &GmpInstance) -> Result<Verdict> {
    let lam = lambda0(inst)?;
    Ok(match lam.nonzero_point() {
        None => Verdict::holds(Condition::Gmfcq, Certificate::TrivialMultipliers { directional: false }),
        Some(l) => Verdict::fails(Condition::Gmfcq, Witness::pair(l, None)).note("nonzero λ ∈ Λ⁰(x̄)"),
    })
}

pub fn check_foscms(inst: &GmpInstance) -> Result<Verdict> {
    Ok(match relevant_classes(inst)?.into_iter().next() {
        None => Verdict::holds(Condition::Foscms, Certificate::TrivialMultipliers { directional: true }),
        Some(c) => {
            let l = c.multipliers.nonzero_point().expect("nontrivial");
            Verdict::fails(Condition::Foscms, Witness::pair(l, c.pullback_witness.clone())).note("nonzero λ ∈ Λ⁰(x̄; u)")
        }
    })
}

pub fn check_soscms(inst: &GmpInstance) -> Result<Verdict> {
    Ok(outcome_verdict(Condition::Soscms, soscms(inst)?))
}

pub fn check_soscpn(inst: &GmpInstance) -> Result<Verdict> {
    Ok(outcome_verdict(Condition::Soscpn, soscpn(inst)?))
}

/// Runs the search on each ray and on both directions of each lineality
/// vector; `dirs` restricts the limiting direction.
fn search_rays(
    inst: &GmpInstance,
    rays: &[QVec],
    lineality: &[QVec],
    delta: &MultiIndex,
    dirs: &[Option<QVec>],
    cfg: &WitnessConfig,
) -> Result<Option<Witness>> {
    let mut lams: Vec<QVec> = rays.to_vec();
    for l in lineality {
        lams.push(l.clone());
        lams.push(neg(l));
    }
    for l in &lams {
        for u in dirs {
            if let Some(seq) = witness_search(inst, l, delta, u.as_deref(), cfg)? {
                return Ok(Some(Witness { lambda: Some(l.clone()), u: u.clone(), w: None, sequence: Some(seq) }));
            }
        }
    }
    Ok(None)
}

/// Non-directional witness search over `Λ⁰(x̄)`.
fn witness_over_lambda0(inst: &GmpInstance, delta: &MultiIndex, cfg: &CheckConfig) -> Result<Option<Witness>> {
    let rays = cone_rays(&lambda0(inst)?.cone);
    search_rays(inst, &rays.rays, &rays.lineality, delta, &[None], &cfg.witness)
}

/// Directional witness search: per class, the class multipliers and
/// directions from its pullback.
fn witness_over_classes(inst: &GmpInstance, delta: &MultiIndex, cfg: &CheckConfig) -> Result<Option<Witness>> {
    for c in relevant_classes(inst)? {
        let rays = cone_rays(&c.multipliers);
        let closure = c.pullback_closure(inst.n())?;
        let mut dirs: Vec<Option<QVec>> = vec![c.pullback_witness.clone()];
        if span_basis(&closure).len() <= 1 {
            for g in closure.v.rays.iter().cloned().chain(closure.v.lineality.iter().flat_map(|l| [l.clone(), neg(l)])) {
                if !dirs.contains(&Some(g.clone())) && c.pullback_contains(&g) {
                    dirs.push(Some(g));
                }
            }
        }
        if let Some(w) = search_rays(inst, &rays.rays, &rays.lineality, delta, &dirs, &cfg.witness)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn pn_condition(directional: bool) -> Condition {
    if directional {
        Condition::DirPseudoNormality
    } else {
        Condition::PseudoNormality
    }
}

/// Pseudo-normality through the ladder of sufficient conditions, then
/// witness search for a violation of the simplified form.
pub fn check_pseudo_normality(inst: &GmpInstance, directional: bool, cfg: &CheckConfig) -> Result<Verdict> {
    let cond = pn_condition(directional);
    let seed = derive_seed(cfg.seed, cond.label());
    inst.disjunctive()?;
    let mut notes = Vec::new();
    let trivial = if directional { relevant_classes(inst)?.is_empty() } else { lambda0(inst)?.is_trivial() };
    if trivial {
        return Ok(Verdict::holds(cond, Certificate::TrivialMultipliers { directional }));
    }
    if inst.map.is_affine() {
        return Ok(Verdict::holds(cond, Certificate::AffineMap));
    }
    let mut ladder: Vec<Box<dyn Fn() -> Result<Outcome>>> = Vec::new();
    let deg = inst.map.degree().unwrap_or(2);
    if directional {
        ladder.push(Box::new(|| soscms(inst)));
        for m in 3..=deg {
            ladder.push(Box::new(move || dir_order_condition(inst, m, seed)));
        }
    } else {
        ladder.push(Box::new(|| soscpn(inst)));
        ladder.push(Box::new(|| polynomial_order(inst, seed)));
        for m in 3..=deg {
            ladder.push(Box::new(move || order_condition(inst, m, seed)));
        }
        ladder.push(Box::new(|| separable_local_max(inst)));
    }
    for step in ladder {
        match step()? {
            Outcome::Holds(cert) => return Ok(Verdict::holds(cond, cert)),
            Outcome::Fails(_, m) | Outcome::Inconclusive(m) => notes.push(m),
        }
    }
    let delta = MultiIndex::pseudo(inst.d());
    let found = if directional {
        witness_over_classes(inst, &delta, cfg)?
    } else {
        witness_over_lambda0(inst, &delta, cfg)?
    };
    if let Some(w) = found {
        return Ok(Verdict::fails(cond, w));
    }
    let mut v = Verdict::undecided(cond, "no sufficient condition certified and no violating sequence found");
    v.notes.extend(notes);
    Ok(v)
}

/// Quasi-normality witness search restricted to multipliers in the regular
/// normal cone at `F(x̄)`. With `yᵏ = F(x̄)` and `λᵏ = λ` such a sequence
/// violates the definition itself, so no admissibility is needed.
pub fn quasi_witness_at_regular_normals(inst: &GmpInstance, cfg: &CheckConfig) -> Result<Option<Witness>> {
    let g = inst.disjunctive()?;
    let regular = regular_normal_cone(g, inst.fbar())?;
    let rays = cone_rays(&lambda0(inst)?.cone);
    let lams: Vec<QVec> = rays
        .rays
        .iter()
        .cloned()
        .chain(rays.lineality.iter().flat_map(|l| [l.clone(), neg(l)]))
        .filter(|l| regular.contains_point(l))
        .collect();
    search_rays(inst, &lams, &[], &MultiIndex::quasi(inst.d()), &[None], &cfg.witness)
}

fn pq_condition(delta: &MultiIndex, directional: bool) -> Condition {
    match (delta.is_quasi(), directional) {
        (true, false) => Condition::QuasiNormality,
        (true, true) => Condition::DirQuasiNormality,
        (false, false) => Condition::PqNormality,
        (false, true) => Condition::DirPqNormality,
    }
}

/// Gate: `δ` must be coarser than the product structure of Γ provides.
pub fn require_admissible(inst: &GmpInstance, delta: &MultiIndex) -> Result<()> {
    let g = inst.disjunctive()?;
    if delta.dim() != inst.d() {
        return Err(Error::Dimension(format!("multi-index {delta} does not split ℝ^{}", inst.d())));
    }
    if !is_admissible(g, delta) {
        return Err(Error::AssumptionNotGuaranteed(delta.to_string()));
    }
    Ok(())
}

/// Second-order sufficient condition for `δ`-normality as a verdict of its
/// own.
pub fn check_soscpqn(inst: &GmpInstance, delta: &MultiIndex, directional: bool) -> Result<Verdict> {
    inst.disjunctive()?;
    let c = if delta.is_quasi() && !directional { Condition::Soscqn } else { Condition::Soscpqn };
    let mut v = outcome_verdict(c, soscpqn(inst, delta, directional)?);
    if c == Condition::Soscpqn {
        v = v.with_delta(delta);
    }
    if directional {
        v = v.note("directional variant");
    }
    Ok(v)
}

/// `δ`-normality (quasi-normality for `δ = (1,…,1)`).
pub fn check_pq_normality(inst: &GmpInstance, delta: &MultiIndex, directional: bool, cfg: &CheckConfig) -> Result<Verdict> {
    require_admissible(inst, delta)?;
    let cond = pq_condition(delta, directional);
    let tag = |v: Verdict| if delta.is_quasi() { v } else { v.with_delta(delta) };
    if delta.is_pseudo() {
        return Ok(check_pseudo_normality(inst, directional, cfg)?.relabel(cond).with_delta(delta));
    }
    let trivial = if directional { relevant_classes(inst)?.is_empty() } else { lambda0(inst)?.is_trivial() };
    if trivial {
        return Ok(tag(Verdict::holds(cond, Certificate::TrivialMultipliers { directional })));
    }
    if inst.map.is_affine() {
        return Ok(tag(Verdict::holds(cond, Certificate::AffineMap)));
    }
    let mut notes = Vec::new();
    match soscpqn(inst, delta, directional)? {
        Outcome::Holds(cert) => {
            let from = if delta.is_quasi() && !directional { Condition::Soscqn } else { Condition::Soscpqn };
            return Ok(tag(Verdict::holds(cond, cert)).note(format!("via {from}")));
        }
        Outcome::Fails(_, m) | Outcome::Inconclusive(m) => notes.push(m),
    }
    let pn = check_pseudo_normality(inst, directional, cfg)?;
    if pn.status == super::Status::Holds {
        return Ok(tag(Verdict::holds(cond, Certificate::Implied { from: vec![pn.condition] })));
    }
    let found = if directional {
        witness_over_classes(inst, delta, cfg)?
    } else {
        witness_over_lambda0(inst, delta, cfg)?
    };
    if let Some(w) = found {
        return Ok(tag(Verdict::fails(cond, w)));
    }
    let mut v = tag(Verdict::undecided(cond, "no sufficient condition certified and no violating sequence found"));
    v.notes.extend(notes);
    Ok(v)
}

/// Per-ray definiteness of `∇²⟨λ,F⟩(x̄)` on user-supplied multipliers, for
/// sets without an exact normal cone.
pub fn check_hinted_soscpn(inst: &GmpInstance) -> Result<Verdict> {
    let rays = super::conditions::Rays { rays: inst.multiplier_hints.clone(), lineality: vec![] };
    let n = inst.n();
    let basis: Vec<QVec> = (0..n).map(|i| crate::kernel::rational::unit(n, i)).collect();
    Ok(outcome_verdict(Condition::HintedSoscpn, super::conditions::second_order_on_rays(inst, &rays, &basis, None)?)
        .note("multipliers supplied with the instance; no implication is drawn"))
}

/// Simplified pseudo-normality on user-supplied multipliers.
pub fn check_hinted_simplified_pn(inst: &GmpInstance, cfg: &CheckConfig) -> Result<Verdict> {
    let delta = MultiIndex::pseudo(inst.d());
    let v = match search_rays(inst, &inst.multiplier_hints, &[], &delta, &[None], &cfg.witness)? {
        Some(w) => Verdict::fails(Condition::HintedSimplifiedPn, w),
        None => Verdict::undecided(Condition::HintedSimplifiedPn, "no violating sequence found"),
    };
    Ok(v.note("multipliers supplied with the instance; no implication is drawn"))
}
