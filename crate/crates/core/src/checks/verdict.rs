//! Verdicts, certificates and witnesses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::rational::{ser_opt_qvec, ser_qmat, ser_rational, QMat, QVec, Rational};
use crate::model::MultiIndex;
use crate::oracle::WitnessSequence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Holds,
    Fails,
    Undecided,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::Undecided => "UNDECIDED",
        })
    }
}

/// Constraint qualifications and the sufficient conditions reported for them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    #[serde(rename = "GMFCQ")]
    Gmfcq,
    #[serde(rename = "FOSCMS")]
    Foscms,
    #[serde(rename = "SOSCMS")]
    Soscms,
    #[serde(rename = "SOSCPN")]
    Soscpn,
    #[serde(rename = "SOSCQN")]
    Soscqn,
    #[serde(rename = "SOSCPQN")]
    Soscpqn,
    #[serde(rename = "PN")]
    PseudoNormality,
    #[serde(rename = "QN")]
    QuasiNormality,
    #[serde(rename = "PQN")]
    PqNormality,
    #[serde(rename = "dirPN")]
    DirPseudoNormality,
    #[serde(rename = "dirQN")]
    DirQuasiNormality,
    #[serde(rename = "dirPQN")]
    DirPqNormality,
    #[serde(rename = "MSCQ")]
    Mscq,
    /// per-ray definiteness on user-supplied multipliers
    #[serde(rename = "SOSCPN[hinted]")]
    HintedSoscpn,
    /// simplified pseudo-normality tested on user-supplied multipliers
    #[serde(rename = "PN-simplified[hinted]")]
    HintedSimplifiedPn,
}

impl Condition {
    pub const ALL: [Condition; 15] = [
        Condition::Gmfcq,
        Condition::Foscms,
        Condition::Soscms,
        Condition::Soscpn,
        Condition::Soscqn,
        Condition::Soscpqn,
        Condition::PseudoNormality,
        Condition::QuasiNormality,
        Condition::PqNormality,
        Condition::DirPseudoNormality,
        Condition::DirQuasiNormality,
        Condition::DirPqNormality,
        Condition::Mscq,
        Condition::HintedSoscpn,
        Condition::HintedSimplifiedPn,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Condition::Gmfcq => "GMFCQ",
            Condition::Foscms => "FOSCMS",
            Condition::Soscms => "SOSCMS",
            Condition::Soscpn => "SOSCPN",
            Condition::Soscqn => "SOSCQN",
            Condition::Soscpqn => "SOSCPQN",
            Condition::PseudoNormality => "PN",
            Condition::QuasiNormality => "QN",
            Condition::PqNormality => "PQN",
            Condition::DirPseudoNormality => "dirPN",
            Condition::DirQuasiNormality => "dirQN",
            Condition::DirPqNormality => "dirPQN",
            Condition::Mscq => "MSCQ",
            Condition::HintedSoscpn => "SOSCPN[hinted]",
            Condition::HintedSimplifiedPn => "PN-simplified[hinted]",
        }
    }

    /// Whether the condition is parameterized by a multi-index.
    pub fn takes_delta(&self) -> bool {
        matches!(self, Condition::PqNormality | Condition::DirPqNormality | Condition::Soscpqn)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let alias = match key.as_str() {
            "pn" | "pseudo" | "pseudo-normality" => Some(Condition::PseudoNormality),
            "qn" | "quasi" | "quasi-normality" => Some(Condition::QuasiNormality),
            "pqn" => Some(Condition::PqNormality),
            _ => None,
        };
        alias
            .or_else(|| Condition::ALL.into_iter().find(|c| c.label().to_ascii_lowercase() == key))
            .ok_or_else(|| Error::Input(format!("unknown check {s:?}")))
    }
}

/// Evidence for a HOLDS verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// every (directional) multiplier cone involved is `{0}` or empty
    TrivialMultipliers { directional: bool },
    /// `F` is affine
    AffineMap,
    /// `uᵀ∇²⟨λ,F⟩(x̄)u < 0` on every ray, over the listed subspace bases
    NegativeDefinite {
        #[serde(serialize_with = "ser_qmat", deserialize_with = "crate::kernel::rational::de_qmat")]
        rays: QMat,
        directional: bool,
    },
    /// every homogeneous part of `⟨λ,F⟩` at `x̄` is nonpositive
    PolynomialOrder {
        degree: u32,
        #[serde(serialize_with = "ser_qmat", deserialize_with = "crate::kernel::rational::de_qmat")]
        rays: QMat,
        directional: bool,
    },
    /// parts below `order` nonpositive, part of degree `order` negative off the origin
    OrderCondition {
        order: u32,
        #[serde(serialize_with = "ser_qmat", deserialize_with = "crate::kernel::rational::de_qmat")]
        rays: QMat,
        directional: bool,
    },
    /// `⟨λ,F⟩` is a sum of univariate terms, each with a strict local maximum
    /// or constant
    SeparableLocalMax {
        #[serde(serialize_with = "ser_qmat", deserialize_with = "crate::kernel::rational::de_qmat")]
        rays: QMat,
    },
    /// the premise of the second-order condition only admits `u = 0`
    Vacuous { reason: String },
    /// the linear program over the one-dimensional premise has a negative optimum
    NegativeLpOptimum {
        #[serde(serialize_with = "ser_qmat", deserialize_with = "crate::kernel::rational::de_qmat")]
        rays: QMat,
        #[serde(serialize_with = "ser_rational", deserialize_with = "crate::kernel::rational::de_rational")]
        worst: Rational,
    },
    /// read off the implication graph
    Implied { from: Vec<Condition> },
}

impl Certificate {
    pub fn summary(&self) -> String {
        match self {
            Certificate::TrivialMultipliers { directional: false } => "no nonzero multiplier".into(),
            Certificate::TrivialMultipliers { directional: true } => "no nonzero directional multiplier".into(),
            Certificate::AffineMap => "affine map".into(),
            Certificate::NegativeDefinite { directional, .. } => {
                format!("{}negative definite on every multiplier ray", if *directional { "directionally " } else { "" })
            }
            Certificate::PolynomialOrder { degree, .. } => format!("polynomial order {degree} condition"),
            Certificate::OrderCondition { order, directional, .. } => {
                format!("{}order {order} condition", if *directional { "directional " } else { "" })
            }
            Certificate::SeparableLocalMax { .. } => "separable local maximum".into(),
            Certificate::Vacuous { reason } => format!("vacuous: {reason}"),
            Certificate::NegativeLpOptimum { worst, .. } => {
                format!("LP optimum {} < 0", crate::kernel::rational::fmt_rational(worst))
            }
            Certificate::Implied { from } => {
                let f: Vec<&str> = from.iter().map(Condition::label).collect();
                format!("implied by {}", f.join(", "))
            }
        }
    }
}

/// Evidence for a FAILS verdict.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_opt_qvec", deserialize_with = "crate::kernel::rational::de_opt_qvec", default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<QVec>,
    #[serde(serialize_with = "ser_opt_qvec", deserialize_with = "crate::kernel::rational::de_opt_qvec", default, skip_serializing_if = "Option::is_none")]
    pub u: Option<QVec>,
    /// auxiliary vector, e.g. the maximizer of the second-order LP
    #[serde(serialize_with = "ser_opt_qvec", deserialize_with = "crate::kernel::rational::de_opt_qvec", default, skip_serializing_if = "Option::is_none")]
    pub w: Option<QVec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<WitnessSequence>,
}

impl Witness {
    pub fn pair(lambda: QVec, u: Option<QVec>) -> Self {
        Witness { lambda: Some(lambda), u, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<MultiIndex>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// the arrow `A ⇒ B` this verdict was read off, if it was not computed
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived: Option<String>,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn holds(condition: Condition, cert: Certificate) -> Self {
        Verdict { condition, delta: None, status: Status::Holds, certificate: Some(cert), witness: None, derived: None, notes: vec![] }
    }

    pub fn fails(condition: Condition, witness: Witness) -> Self {
        Verdict { condition, delta: None, status: Status::Fails, certificate: None, witness: Some(witness), derived: None, notes: vec![] }
    }

    pub fn undecided(condition: Condition, note: impl Into<String>) -> Self {
        Verdict {
            condition,
            delta: None,
            status: Status::Undecided,
            certificate: None,
            witness: None,
            derived: None,
            notes: vec![note.into()],
        }
    }

    pub fn with_delta(mut self, delta: &MultiIndex) -> Self {
        self.delta = Some(delta.clone());
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn relabel(mut self, c: Condition) -> Self {
        self.condition = c;
        self
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!("{} {}", self.condition, self.status);
        if let Some(d) = &self.delta {
            s = format!("{}{} {}", self.condition, d, self.status);
        }
        if let Some(c) = &self.certificate {
            s.push_str(&format!(" ({})", c.summary()));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn condition_names_round_trip() {
        for c in Condition::ALL {
            assert_eq!(c.label().parse::<Condition>().unwrap(), c);
            assert_eq!(serde_json::to_value(c).unwrap(), serde_json::json!(c.label()));
        }
        assert_eq!("pn".parse::<Condition>().unwrap(), Condition::PseudoNormality);
        assert!("tcq".parse::<Condition>().is_err());
    }
}
