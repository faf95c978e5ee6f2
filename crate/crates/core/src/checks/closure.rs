//! All checks at once, completed along the implication graph.

use std::collections::BTreeMap;

use serde::Serialize;

use super::normality::{
    check_foscms, check_gmfcq, check_hinted_simplified_pn, check_hinted_soscpn, check_pq_normality,
    check_pseudo_normality, check_soscms, check_soscpn, check_soscpqn, quasi_witness_at_regular_normals,
    CheckConfig,
};
use super::verdict::{Certificate, Condition, Status, Verdict};
use crate::error::{Error, Result};
use crate::kernel::rational::vec_to_f64;
use crate::model::{is_admissible, GmpInstance, MultiIndex};
use crate::multipliers::direction_classes;
use crate::oracle::{mscq_probe, ProbeResult};

/// Arrows `A ⇒ B` between conditions. The arrow out of SOSCQN (and into it
/// from SOSCPN) needs the quasi multi-index to be admissible for Γ; the others
/// hold between the definitions themselves.
pub fn implications(quasi_admissible: bool) -> Vec<(Condition, Condition)> {
    use Condition::*;
    let mut a = vec![
        (Gmfcq, Foscms),
        (Gmfcq, Soscpn),
        (Gmfcq, PseudoNormality),
        (Foscms, Soscms),
        (Soscpn, Soscms),
        (Soscpn, PseudoNormality),
        (Soscms, DirPseudoNormality),
        (PseudoNormality, QuasiNormality),
        (PseudoNormality, DirPseudoNormality),
        (PseudoNormality, Mscq),
        (QuasiNormality, DirQuasiNormality),
        (QuasiNormality, Mscq),
        (DirPseudoNormality, DirQuasiNormality),
        (DirPseudoNormality, Mscq),
        (DirQuasiNormality, Mscq),
    ];
    if quasi_admissible {
        a.extend([(Soscpn, Soscqn), (Soscqn, QuasiNormality)]);
    }
    a
}

/// Propagates HOLDS forward and FAILS backward until nothing changes.
/// A HOLDS meeting an exact FAILS is an internal inconsistency.
pub fn close(verdicts: &mut [Verdict], arrows: &[(Condition, Condition)]) -> Result<()> {
    let index: BTreeMap<Condition, usize> = verdicts.iter().enumerate().map(|(i, v)| (v.condition, i)).collect();
    loop {
        let mut changed = false;
        for &(a, b) in arrows {
            let (Some(&ia), Some(&ib)) = (index.get(&a), index.get(&b)) else { continue };
            let (sa, sb) = (verdicts[ia].status, verdicts[ib].status);
            match (sa, sb) {
                (Status::Holds, Status::Fails) => {
                    return Err(Error::InternalConsistency(format!("{a} holds, {a} ⇒ {b}, but {b} fails")));
                }
                (Status::Holds, Status::Undecided) => {
                    let mut v = Verdict::holds(b, Certificate::Implied { from: vec![a] });
                    v.delta = verdicts[ib].delta.clone();
                    v.derived = Some(format!("{a} ⇒ {b}"));
                    verdicts[ib] = v;
                    changed = true;
                }
                (Status::Undecided, Status::Fails) => {
                    let mut v = Verdict::undecided(a, "");
                    v.status = Status::Fails;
                    v.notes = vec![format!("{b} fails")];
                    v.derived = Some(format!("{a} ⇒ {b}"));
                    v.delta = verdicts[ia].delta.clone();
                    verdicts[ia] = v;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Ok(());
        }
    }
}

/// Walks back from `target` through holding predecessors, e.g.
/// `SOSCQN ⇒ QN ⇒ MSCQ`.
pub fn chain_to(verdicts: &[Verdict], arrows: &[(Condition, Condition)], target: Condition) -> Option<String> {
    let status = |c: Condition| verdicts.iter().find(|v| v.condition == c).map(|v| v.status);
    if status(target) != Some(Status::Holds) {
        return None;
    }
    let mut path = vec![target];
    let mut cur = target;
    loop {
        let implied_from = verdicts.iter().find(|v| v.condition == cur).and_then(|v| match &v.certificate {
            Some(Certificate::Implied { from }) => from.first().copied(),
            _ => None,
        });
        let next = implied_from.or_else(|| {
            arrows
                .iter()
                .filter(|(a, b)| *b == cur && status(*a) == Some(Status::Holds) && !path.contains(a))
                .map(|(a, _)| *a)
                .next()
        });
        match next {
            Some(n) if !path.contains(&n) => {
                path.push(n);
                cur = n;
            }
            _ => break,
        }
    }
    let root = verdicts.iter().find(|v| v.condition == cur)?;
    let mut parts: Vec<String> = path.iter().rev().map(|c| c.label().to_string()).collect();
    if let Some(c) = &root.certificate {
        parts[0] = format!("{} [{}]", parts[0], c.summary());
    }
    Some(parts.join(" ⇒ "))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub verdicts: Vec<Verdict>,
    /// how MSCQ was reached, when it holds
    pub chain: Option<String>,
    pub probe: Option<ProbeResult>,
}

impl CheckSummary {
    pub fn get(&self, c: Condition) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.condition == c)
    }

    pub fn status(&self, c: Condition) -> Option<Status> {
        self.get(c).map(|v| v.status)
    }
}

/// Every applicable check, the implication closure and the MSCQ probe.
pub fn check_all(inst: &GmpInstance, cfg: &CheckConfig) -> Result<CheckSummary> {
    let mut verdicts = Vec::new();
    let mut seeds: Vec<Vec<f64>> = Vec::new();
    let mut arrows = Vec::new();
    match inst.disjunctive() {
        Err(Error::AnalyticGamma) => {
            let note = "Γ has no polyhedral description; exact checks do not apply";
            for c in [Condition::Gmfcq, Condition::Foscms, Condition::Soscms, Condition::PseudoNormality] {
                verdicts.push(Verdict::undecided(c, note));
            }
            if !inst.multiplier_hints.is_empty() {
                verdicts.push(check_hinted_soscpn(inst)?);
                verdicts.push(check_hinted_simplified_pn(inst, cfg)?);
            }
            verdicts.push(Verdict::undecided(Condition::Mscq, "no implication applies"));
        }
        Err(e) => return Err(e),
        Ok(g) => {
            verdicts.push(check_gmfcq(inst)?);
            verdicts.push(check_foscms(inst)?);
            verdicts.push(check_soscms(inst)?);
            verdicts.push(check_soscpn(inst)?);
            verdicts.push(check_pseudo_normality(inst, false, cfg)?);
            verdicts.push(check_pseudo_normality(inst, true, cfg)?);
            let quasi = MultiIndex::quasi(inst.d());
            let admissible = is_admissible(g, &quasi);
            if admissible {
                verdicts.push(check_soscpqn(inst, &quasi, false)?);
                verdicts.push(check_pq_normality(inst, &quasi, false, cfg)?);
                verdicts.push(check_pq_normality(inst, &quasi, true, cfg)?);
            } else {
                let note = Error::AssumptionNotGuaranteed(quasi.to_string()).to_string();
                verdicts.push(Verdict::undecided(Condition::Soscqn, note.clone()));
                verdicts.push(match quasi_witness_at_regular_normals(inst, cfg)? {
                    Some(w) => Verdict::fails(Condition::QuasiNormality, w)
                        .note("λ ∈ N̂_Γ(F(x̄)) with yᵏ = F(x̄): a violation without the structural assumption"),
                    None => Verdict::undecided(Condition::QuasiNormality, note.clone()),
                });
                verdicts.push(Verdict::undecided(Condition::DirQuasiNormality, note));
            }
            verdicts.push(Verdict::undecided(Condition::Mscq, "no implication applies"));
            arrows = implications(admissible);
            close(&mut verdicts, &arrows)?;
            seeds = direction_classes(inst)?
                .into_iter()
                .filter_map(|c| c.pullback_witness.map(|u| vec_to_f64(&u)))
                .collect();
        }
    }
    let probe = mscq_probe(inst, &cfg.probe, &seeds)?;
    let chain = chain_to(&verdicts, &arrows, Condition::Mscq);
    if let Some(v) = verdicts.iter_mut().find(|v| v.condition == Condition::Mscq) {
        if v.status != Status::Holds {
            v.notes = vec![format!("probe: {}", probe.verdict)];
        }
    }
    Ok(CheckSummary { verdicts, chain, probe: Some(probe) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_propagates_both_ways() {
        let mut vs = vec![
            Verdict::holds(Condition::Soscqn, Certificate::Vacuous { reason: "r".into() }),
            Verdict::undecided(Condition::QuasiNormality, "?"),
            Verdict::undecided(Condition::Mscq, "?"),
            Verdict::undecided(Condition::PseudoNormality, "?"),
            Verdict::fails(Condition::DirQuasiNormality, Default::default()),
        ];
        let arrows = vec![
            (Condition::Soscqn, Condition::QuasiNormality),
            (Condition::QuasiNormality, Condition::Mscq),
            (Condition::PseudoNormality, Condition::DirQuasiNormality),
        ];
        close(&mut vs, &arrows).unwrap();
        assert_eq!(vs[2].status, Status::Holds);
        assert_eq!(vs[3].status, Status::Fails);
        assert_eq!(chain_to(&vs, &arrows, Condition::Mscq).unwrap(), "SOSCQN [vacuous: r] ⇒ QN ⇒ MSCQ");
        let mut bad = vec![
            Verdict::holds(Condition::Gmfcq, Certificate::AffineMap),
            Verdict::fails(Condition::PseudoNormality, Default::default()),
        ];
        assert!(matches!(
            close(&mut bad, &[(Condition::Gmfcq, Condition::PseudoNormality)]),
            Err(Error::InternalConsistency(_))
        ));
    }
}
