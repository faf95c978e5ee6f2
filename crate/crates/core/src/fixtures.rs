//! Named problem instances with recorded expectations.

use serde::Serialize;

use crate::checks::{check_all, first_certifying, CheckConfig, CheckSummary, Condition, Status};
use crate::error::{Error, Result};
use crate::model::GmpInstance;
use crate::oracle::ProbeVerdict;
use crate::problem::load_instance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeExpectation {
    Bounded,
    DivergenceSuspected,
}

impl ProbeExpectation {
    pub fn matches(&self, v: &ProbeVerdict) -> bool {
        matches!(
            (self, v),
            (ProbeExpectation::Bounded, ProbeVerdict::Bounded { .. })
                | (ProbeExpectation::DivergenceSuspected, ProbeVerdict::DivergenceSuspected)
        )
    }
}

/// What the first certifying condition of the ladder should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "label", rename_all = "snake_case")]
pub enum LadderExpectation {
    Certified(String),
    /// no condition certifies; the cell is reported from the probe alone
    ProbeOnly,
    /// the probe should suspect divergence
    ProbeDivergence,
}

impl LadderExpectation {
    pub fn matches(&self, label: &str) -> bool {
        match self {
            LadderExpectation::Certified(l) => l == label,
            LadderExpectation::ProbeOnly => label.starts_with("probe: "),
            LadderExpectation::ProbeDivergence => label == "probe: DIVERGENCE_SUSPECTED",
        }
    }

    pub fn display(&self) -> String {
        match self {
            LadderExpectation::Certified(l) => l.clone(),
            LadderExpectation::ProbeOnly => "probe-only".into(),
            LadderExpectation::ProbeDivergence => "probe: DIVERGENCE_SUSPECTED".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: String,
    pub description: String,
    #[serde(skip)]
    pub source: String,
    pub verdicts: Vec<(Condition, Status)>,
    pub probe: Option<ProbeExpectation>,
    pub ladder: Option<LadderExpectation>,
}

impl Fixture {
    pub fn instance(&self) -> Result<GmpInstance> {
        load_instance(&self.source, &self.name)
    }
}

/// The parameters `(a, b, c, d)` of the quartic family on
/// `ℝ × {y : y₂ ≤ −|y₁|}`.
pub type Cell = [i64; 4];

pub fn quartic_name(c: &Cell) -> String {
    let s: Vec<String> = c.iter().map(|v| v.to_string()).collect();
    format!("ex41_{}", s.join("_"))
}

/// Problem file of `F(x) = (x₁, x₂, a x₁² + b x₁⁴ + c x₂² + d x₂⁴)`.
pub fn quartic_source(c: &Cell) -> String {
    let [a, b, cc, d] = *c;
    let mut monos = vec![];
    for (coef, e) in [(a, [2, 0]), (b, [4, 0]), (cc, [0, 2]), (d, [0, 4])] {
        if coef != 0 {
            monos.push(format!("{{ coeff = {coef}, exponents = [{}, {}] }}", e[0], e[1]));
        }
    }
    format!(
        r#"[problem]
name = "{name}"
n = 2
d = 3

[map]
monomials = [
  [{{ coeff = 1, exponents = [1, 0] }}],
  [{{ coeff = 1, exponents = [0, 1] }}],
  [{third}],
]

[gamma]
blocks = [
  {{ dim = 1, pieces = [{{}}] }},
  {{ dim = 2, pieces = [{{ ineqs = [[1, 1, 0], [-1, 1, 0]] }}] }},
]

[point]
x = [0, 0]
"#,
        name = quartic_name(c),
        third = monos.join(", ")
    )
}

/// Table cells with the condition expected to certify them first.
pub fn quartic_cells() -> Vec<(Cell, LadderExpectation)> {
    use LadderExpectation::*;
    let c = |s: &str| Certified(s.to_string());
    vec![
        ([0, -1, 0, 0], c("Polyn. 4th-OSC")),
        ([0, -1, -1, 0], c("Polyn. 4th-OSC")),
        ([0, -1, 0, 1], c("Dir. 4th-OSC")),
        ([0, -1, -1, 1], c("Pseudo-normality")),
        ([0, -1, 0, -1], c("4th-OSC")),
        ([0, -1, -1, -1], c("4th-OSC")),
        ([0, 0, 0, 0], c("Robinson SC")),
        ([0, 0, -1, 0], c("Polyn. 2nd-OSC")),
        ([0, 0, 0, 1], ProbeOnly),
        ([0, 0, -1, 1], c("Pseudo-normality")),
        ([0, 0, 0, -1], c("Polyn. 4th-OSC")),
        ([0, 0, -1, -1], c("Polyn. 4th-OSC")),
        ([-1, 0, 0, 0], c("SOSCMS")),
        ([1, 0, 0, 0], ProbeDivergence),
    ]
}

fn fixture(
    name: &str,
    description: &str,
    source: &str,
    verdicts: &[(Condition, Status)],
    probe: Option<ProbeExpectation>,
) -> Fixture {
    Fixture {
        name: name.into(),
        description: description.into(),
        source: source.into(),
        verdicts: verdicts.to_vec(),
        probe,
        ladder: None,
    }
}

/// Every shipped fixture.
pub fn fixtures() -> Vec<Fixture> {
    use Condition::*;
    use ProbeExpectation::*;
    use Status::*;
    let mut out = vec![
        fixture(
            "ex31",
            "wedge, F = (x, -x^2): GMFCQ and quasi-normality fail, FOSCMS gives MSCQ",
            include_str!("../problems/example31.toml"),
            &[(Gmfcq, Fails), (QuasiNormality, Fails), (PseudoNormality, Fails), (Foscms, Holds), (Mscq, Holds)],
            Some(Bounded),
        ),
        fixture(
            "ex32",
            "epigraph of |.|^(3/2), F = (x, x^2): definiteness on the hinted ray, MSCQ fails",
            include_str!("../problems/example32.toml"),
            &[(HintedSoscpn, Holds), (Mscq, Undecided)],
            Some(DivergenceSuspected),
        ),
        fixture(
            "ex33",
            "nonpositive orthant, F = (-x, x + x^2): vacuous SOSCQN, pseudo-normality fails",
            include_str!("../problems/example33.toml"),
            &[(Soscqn, Holds), (QuasiNormality, Holds), (PseudoNormality, Fails), (Foscms, Holds), (Mscq, Holds)],
            Some(Bounded),
        ),
        fixture(
            "ex34",
            "half-plane, F = (x, sin x): quasi multi-index not admissible, MSCQ fails",
            include_str!("../problems/example34.toml"),
            &[
                (Gmfcq, Fails),
                (Foscms, Fails),
                (PseudoNormality, Fails),
                (DirPseudoNormality, Fails),
                (QuasiNormality, Undecided),
                (Mscq, Undecided),
            ],
            Some(DivergenceSuspected),
        ),
        fixture(
            "ex36",
            "subgraph of y^2, F = (x, x^4): simplified pseudo-normality fails on the hinted ray",
            include_str!("../problems/example36.toml"),
            &[(HintedSimplifiedPn, Fails), (Mscq, Undecided)],
            Some(Bounded),
        ),
        fixture(
            "mpcc_demo",
            "one complementarity pair at a biactive point",
            include_str!("../problems/mpcc_demo.toml"),
            &[(Gmfcq, Holds), (QuasiNormality, Holds), (Mscq, Holds)],
            Some(Bounded),
        ),
        fixture(
            "mpvc_demo",
            "vanishing constraint with a curved H",
            include_str!("../problems/mpvc_demo.toml"),
            &[(Gmfcq, Holds), (Mscq, Holds)],
            Some(Bounded),
        ),
        fixture(
            "mpsc_demo",
            "switching constraint x1^2 * x2 = 0: every condition fails, MSCQ fails",
            include_str!("../problems/mpsc_demo.toml"),
            &[(Gmfcq, Fails), (Foscms, Fails), (Soscms, Fails), (PseudoNormality, Fails), (QuasiNormality, Fails)],
            Some(DivergenceSuspected),
        ),
    ];
    for (cell, expect) in quartic_cells() {
        out.push(Fixture {
            name: quartic_name(&cell),
            description: format!("quartic family (a, b, c, d) = ({}, {}, {}, {})", cell[0], cell[1], cell[2], cell[3]),
            source: quartic_source(&cell),
            verdicts: vec![],
            probe: None,
            ladder: Some(expect),
        });
    }
    out
}

pub fn find_fixture(name: &str) -> Result<Fixture> {
    fixtures()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::Input(format!("unknown fixture {name:?}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub passed: bool,
    pub mismatches: Vec<String>,
    #[serde(skip)]
    pub summary: Option<CheckSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<String>,
}

/// Runs the checks a fixture has expectations for and compares.
pub fn run_fixture(f: &Fixture, cfg: &CheckConfig) -> Result<FixtureOutcome> {
    let inst = f.instance()?;
    let mut mismatches = Vec::new();
    let mut summary = None;
    if !f.verdicts.is_empty() || f.probe.is_some() {
        let s = check_all(&inst, cfg)?;
        for (c, want) in &f.verdicts {
            match s.status(*c) {
                Some(got) if got == *want => {}
                got => mismatches.push(format!(
                    "{c}: expected {want}, got {}",
                    got.map(|g| g.to_string()).unwrap_or_else(|| "nothing".into())
                )),
            }
        }
        if let (Some(want), Some(p)) = (f.probe, &s.probe) {
            if !want.matches(&p.verdict) {
                mismatches.push(format!("probe: expected {want:?}, got {}", p.verdict));
            }
        }
        summary = Some(s);
    }
    let mut ladder = None;
    if let Some(want) = &f.ladder {
        let got = first_certifying(&inst, cfg)?;
        if !want.matches(&got.label) {
            mismatches.push(format!("ladder: expected {}, got {}", want.display(), got.label));
        }
        ladder = Some(got.label);
    }
    Ok(FixtureOutcome { name: f.name.clone(), passed: mismatches.is_empty(), mismatches, summary, ladder })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        let all = fixtures();
        assert!(all.len() >= 9);
        for f in &all {
            f.instance().unwrap_or_else(|e| panic!("{}: {e}", f.name));
        }
        assert!(find_fixture("ex31").is_ok());
        assert!(find_fixture("nope").is_err());
    }
}
