//! Analysis reports: deterministic JSON and plain text.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::checks::{CheckSummary, Status, Verdict};
use crate::cones::{
    directional_limiting_normal_cone, limiting_normal_cone, regular_normal_cone, tangent_cone, ConeUnion, DisjunctiveSet,
};
use crate::error::{Error, Result};
use crate::kernel::cone::DD_DIMENSION_CAP;
use crate::kernel::rational::{fmt_rational, primitive, primitive_unsigned, QVec, Rational};
use crate::kernel::VCone;
use crate::model::map::EXPRESSION_ORDER_CAP;
use crate::model::{GmpInstance, MultiIndex};
use crate::multipliers::Stationarity;
use crate::oracle::ProbeResult;

pub const SCHEMA_VERSION: &str = "cqlab-report/1";
/// The JSON Schema of [`Report`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub name: String,
    pub n: usize,
    pub d: usize,
    pub gamma: String,
    pub point: Vec<String>,
    pub f_at_point: Vec<String>,
    pub map: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub admissible_multi_indices: Vec<MultiIndex>,
}

impl InstanceSummary {
    pub fn of(inst: &GmpInstance) -> Self {
        InstanceSummary {
            name: inst.name.clone(),
            n: inst.n(),
            d: inst.d(),
            gamma: inst.gamma_kind(),
            point: inst.point.iter().map(fmt_rational).collect(),
            f_at_point: inst.fbar().iter().map(fmt_rational).collect(),
            map: inst.map.sources(),
            admissible_multi_indices: inst
                .disjunctive()
                .map(crate::model::admissible_multi_indices)
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub double_description_dim: usize,
    pub expression_derivative_order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub seed: u64,
    pub caps: Caps,
    pub instance: InstanceSummary,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mscq_chain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<ProbeResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stationarity: Option<Stationarity>,
    /// wall-clock seconds; only filled on request so reports stay reproducible
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

impl Report {
    pub fn new(inst: &GmpInstance, seed: u64, summary: CheckSummary) -> Self {
        Report {
            schema: SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            seed,
            caps: Caps {
                double_description_dim: DD_DIMENSION_CAP,
                expression_derivative_order: EXPRESSION_ORDER_CAP,
            },
            instance: InstanceSummary::of(inst),
            verdicts: summary.verdicts,
            mscq_chain: summary.chain,
            probe: summary.probe,
            stationarity: None,
            seconds: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(s).map_err(|e| Error::Input(e.to_string()))?;
        if r.schema != SCHEMA_VERSION {
            return Err(Error::Input(format!("unsupported report schema {:?}", r.schema)));
        }
        Ok(r)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let i = &self.instance;
        let _ = writeln!(s, "instance {}: n = {}, d = {}, Γ {}", i.name, i.n, i.d, i.gamma);
        let _ = writeln!(s, "x̄ = ({}), F(x̄) = ({})", i.point.join(", "), i.f_at_point.join(", "));
        for v in &self.verdicts {
            let _ = writeln!(s, "{}", verdict_line(v));
        }
        if let Some(c) = &self.mscq_chain {
            let _ = writeln!(s, "MSCQ via {c}");
        }
        if let Some(p) = &self.probe {
            let slope = p.slope.map(|x| format!(", slope {:.3}", if x.abs() < 5e-4 { 0.0 } else { x })).unwrap_or_default();
            let _ = writeln!(s, "probe {}{slope}", p.verdict);
        }
        match &self.stationarity {
            Some(Stationarity::Stationary { multiplier, .. }) => {
                let m: Vec<String> = multiplier.iter().map(fmt_rational).collect();
                let _ = writeln!(s, "M-stationary with λ = ({})", m.join(", "));
            }
            Some(Stationarity::NotStationary) => {
                let _ = writeln!(s, "not M-stationary");
            }
            None => {}
        }
        if let Some(t) = self.seconds {
            let _ = writeln!(s, "time {t:.3} s");
        }
        s
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    format!("({})", v.iter().map(fmt_rational).collect::<Vec<_>>().join(", "))
}

/// `CONDITION STATUS [detail]`; the first two fields are what JSON carries as
/// `condition` and `status`.
pub fn verdict_line(v: &Verdict) -> String {
    let name = match &v.delta {
        Some(d) => format!("{}{}", v.condition, d),
        None => v.condition.to_string(),
    };
    let mut line = format!("{name:<22} {}", v.status);
    if let Some(c) = &v.certificate {
        let _ = write!(line, "  {}", c.summary());
    }
    if let Some(w) = &v.witness {
        if let Some(l) = &w.lambda {
            let _ = write!(line, "  λ = {}", fmt_vec(l));
        }
        if let Some(u) = &w.u {
            let _ = write!(line, "  u = {}", fmt_vec(u));
        }
        if w.sequence.is_some() {
            line.push_str("  with sequence");
        }
    }
    if let Some(d) = &v.derived {
        let _ = write!(line, "  [{d}]");
    }
    if v.status == Status::Undecided {
        if let Some(n) = v.notes.first() {
            let _ = write!(line, "  ({n})");
        }
    }
    line
}

/// A cone union as V-representations with primitive integer generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeListing {
    pub pieces: Vec<VCone>,
}

impl ConeListing {
    fn of(c: &ConeUnion) -> Self {
        let mut pieces: Vec<VCone> = c
            .vreps()
            .into_iter()
            .map(|v| VCone {
                dim: v.dim,
                rays: v.rays.iter().map(|r| primitive(r)).collect(),
                lineality: v.lineality.iter().map(|l| primitive_unsigned(l)).collect(),
            })
            .collect();
        pieces.sort();
        pieces.dedup();
        ConeListing { pieces }
    }

    fn render(&self) -> String {
        if self.pieces.is_empty() {
            return "∅".into();
        }
        let piece = |v: &VCone| {
            let rays: Vec<String> = v.rays.iter().map(|r| fmt_vec(r)).collect();
            let lin: Vec<String> = v.lineality.iter().map(|r| fmt_vec(r)).collect();
            match (rays.is_empty(), lin.is_empty()) {
                (true, true) => "{0}".to_string(),
                (false, true) => format!("rays {{{}}}", rays.join(", ")),
                (true, false) => format!("lines {{{}}}", lin.join(", ")),
                (false, false) => format!("rays {{{}}} + lines {{{}}}", rays.join(", "), lin.join(", ")),
            }
        };
        self.pieces.iter().map(piece).collect::<Vec<_>>().join(" ∪ ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConesReport {
    pub schema: &'static str,
    #[serde(serialize_with = "crate::kernel::rational::ser_qvec")]
    pub point: QVec,
    pub tangent: ConeListing,
    pub regular_normal: ConeListing,
    pub limiting_normal: ConeListing,
    #[serde(serialize_with = "crate::kernel::rational::ser_opt_qvec", skip_serializing_if = "Option::is_none")]
    pub direction: Option<QVec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub directional_normal: Option<ConeListing>,
}

impl ConesReport {
    /// `T_Γ(y)`, `N̂_Γ(y)`, `N_Γ(y)` and, given `dir`, `N_Γ(y; dir)`.
    pub fn new(gamma: &DisjunctiveSet, y: &[Rational], dir: Option<&[Rational]>) -> Result<Self> {
        for v in std::iter::once(y).chain(dir) {
            if v.len() != gamma.dim {
                return Err(Error::Dimension(format!("vector of length {}, Γ lives in ℝ^{}", v.len(), gamma.dim)));
            }
        }
        let regular = regular_normal_cone(gamma, y)?;
        Ok(ConesReport {
            schema: "cqlab-cones/1",
            point: y.to_vec(),
            tangent: ConeListing::of(&tangent_cone(gamma, y)?),
            regular_normal: ConeListing::of(&ConeUnion::new(gamma.dim, vec![regular])),
            limiting_normal: ConeListing::of(&limiting_normal_cone(gamma, y)?),
            direction: dir.map(<[Rational]>::to_vec),
            directional_normal: match dir {
                Some(d) => Some(ConeListing::of(&directional_limiting_normal_cone(gamma, y, d)?)),
                None => None,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("y = {}\n", fmt_vec(&self.point));
        let _ = writeln!(s, "T(y)    = {}", self.tangent.render());
        let _ = writeln!(s, "N̂(y)    = {}", self.regular_normal.render());
        let _ = writeln!(s, "N(y)    = {}", self.limiting_normal.render());
        if let (Some(d), Some(c)) = (&self.direction, &self.directional_normal) {
            let _ = writeln!(s, "N(y; d) = {}  for d = {}", c.render(), fmt_vec(d));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schema_parses() {
        let v: serde_json::Value = serde_json::from_str(SCHEMA).unwrap();
        assert_eq!(v["properties"]["schema"]["const"], SCHEMA_VERSION);
    }
}
