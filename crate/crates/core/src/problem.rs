//! TOML problem files.
//!
//! ```toml
//! [problem]
//! name = "wedge"          # optional
//! n = 1
//! d = 2
//!
//! [map]
//! components = ["x1", "-x1^2"]
//! # or, per component, a monomial table:
//! # monomials = [[{ coeff = "1", exponents = [1] }], [{ coeff = -1, exponents = [2] }]]
//!
//! [gamma]
//! # one of: prototype (+ copies), pieces (+ dim), analytic, blocks
//! pieces = [{ ineqs = [[1, -1, 0], [-1, -1, 0]] }]
//!
//! [point]
//! x = ["0"]
//!
//! [objective]              # optional
//! expr = "x1"
//!
//! [options]                # optional
//! feasible_override = "point"
//! multiplier_hints = [[0, -1]]
//! ```
//!
//! A row `[a₁, …, a_d, β]` of a piece reads `⟨a, y⟩ ≤ β` (or `= β` under
//! `eqs`). Numbers are integers or strings `"p/q"` / finite decimals.
//! `blocks` is a list of tables of the same shape as `[gamma]` whose
//! product is Γ.

use serde::Deserialize;

use crate::cones::{product_set, DisjunctiveSet, HPoly, Row};
use crate::error::{Error, Result};
use crate::kernel::rational::{parse_rational, QVec, Rational};
use crate::model::{prototype_set, FeasibleOverride, Gamma, GmpInstance, Poly, PrototypeKind, SmoothMap};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Int(i) => Ok(Rational::from_integer((*i).into())),
            Number::Text(s) => parse_rational(s).map_err(Error::Input),
        }
    }
}

fn rationals(v: &[Number]) -> Result<QVec> {
    v.iter().map(Number::to_rational).collect()
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub problem: ProblemSection,
    pub map: MapSection,
    pub gamma: GammaSection,
    pub point: PointSection,
    pub objective: Option<ObjectiveSection>,
    pub options: Option<OptionsSection>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSection {
    pub name: Option<String>,
    pub n: usize,
    pub d: usize,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Number,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSection {
    pub components: Option<Vec<String>>,
    pub monomials: Option<Vec<Vec<Term>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    #[serde(default)]
    pub eqs: Vec<Vec<Number>>,
    #[serde(default)]
    pub ineqs: Vec<Vec<Number>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaSection {
    pub prototype: Option<String>,
    pub copies: Option<usize>,
    pub dim: Option<usize>,
    pub pieces: Option<Vec<PieceSpec>>,
    pub analytic: Option<String>,
    pub blocks: Option<Vec<GammaSection>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointSection {
    pub x: Vec<Number>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectiveSection {
    pub expr: String,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSection {
    pub feasible_override: Option<String>,
    #[serde(default)]
    pub multiplier_hints: Vec<Vec<Number>>,
}

fn row(dim: usize, r: &[Number]) -> Result<Row> {
    if r.len() != dim + 1 {
        return Err(Error::Input(format!("row has {} entries, expected {} (normal and right-hand side)", r.len(), dim + 1)));
    }
    let v = rationals(r)?;
    Ok(Row::new(v[..dim].to_vec(), v[dim].clone()))
}

fn disjunctive(g: &GammaSection, dim_hint: Option<usize>) -> Result<DisjunctiveSet> {
    let given = [g.prototype.is_some(), g.pieces.is_some(), g.blocks.is_some(), g.analytic.is_some()];
    if given.iter().filter(|b| **b).count() != 1 {
        return Err(Error::Input("gamma needs exactly one of prototype, pieces, blocks, analytic".into()));
    }
    if let Some(p) = &g.prototype {
        let kind: PrototypeKind = p.parse()?;
        let copies = g.copies.unwrap_or(1);
        if copies == 0 {
            return Err(Error::Input("copies must be at least 1".into()));
        }
        return Ok(prototype_set(kind, copies));
    }
    if let Some(pieces) = &g.pieces {
        let dim = g.dim.or(dim_hint).ok_or_else(|| Error::Input("pieces need `dim` inside blocks".into()))?;
        if pieces.is_empty() {
            return Err(Error::Input("gamma needs at least one piece".into()));
        }
        let hp = pieces
            .iter()
            .map(|p| {
                let eqs = p.eqs.iter().map(|r| row(dim, r)).collect::<Result<Vec<_>>>()?;
                let ineqs = p.ineqs.iter().map(|r| row(dim, r)).collect::<Result<Vec<_>>>()?;
                Ok(HPoly::new(dim, eqs, ineqs))
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(DisjunctiveSet::new(dim, hp));
    }
    if let Some(blocks) = &g.blocks {
        let mut sets = blocks.iter().map(|b| disjunctive(b, None));
        let first = sets.next().ok_or_else(|| Error::Input("blocks must not be empty".into()))??;
        return sets.try_fold(first, |acc, b| Ok(product_set(&acc, &b?)));
    }
    Err(Error::Input("an analytic set cannot be a product block".into()))
}

impl ProblemFile {
    pub fn parse(src: &str) -> Result<Self> {
        toml::from_str(src).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_instance(&self, fallback_name: &str) -> Result<GmpInstance> {
        let (n, d) = (self.problem.n, self.problem.d);
        let map = match (&self.map.components, &self.map.monomials) {
            (Some(c), None) => {
                let refs: Vec<&str> = c.iter().map(String::as_str).collect();
                SmoothMap::parse(n, &refs)?
            }
            (None, Some(tables)) => {
                let polys = tables
                    .iter()
                    .map(|t| {
                        t.iter()
                            .map(|term| {
                                if term.exponents.len() != n {
                                    return Err(Error::Dimension(format!("monomial with {} exponents, n = {n}", term.exponents.len())));
                                }
                                Ok((term.exponents.clone(), term.coeff.to_rational()?))
                            })
                            .collect::<Result<Vec<_>>>()
                            .map(|terms| Poly::from_terms(n, terms))
                    })
                    .collect::<Result<Vec<_>>>()?;
                SmoothMap::polynomial(n, polys)
            }
            _ => return Err(Error::Input("map needs exactly one of components, monomials".into())),
        };
        if map.d != d {
            return Err(Error::Dimension(format!("map has {} components, d = {d}", map.d)));
        }
        let gamma = match &self.gamma.analytic {
            Some(a) if self.gamma.prototype.is_none() && self.gamma.pieces.is_none() && self.gamma.blocks.is_none() => {
                Gamma::Analytic(a.parse()?)
            }
            _ => Gamma::Disjunctive(disjunctive(&self.gamma, Some(d))?),
        };
        let point = rationals(&self.point.x)?;
        let name = self.problem.name.clone().unwrap_or_else(|| fallback_name.to_string());
        let mut inst = GmpInstance::new(&name, map, gamma, point)?;
        if let Some(obj) = &self.objective {
            inst = inst.with_objective(SmoothMap::parse(n, &[obj.expr.as_str()])?)?;
        }
        if let Some(opts) = &self.options {
            if let Some(o) = &opts.feasible_override {
                inst = inst.with_override(o.parse::<FeasibleOverride>()?);
            }
            let hints = opts.multiplier_hints.iter().map(|h| rationals(h)).collect::<Result<Vec<_>>>()?;
            inst = inst.with_hints(hints)?;
        }
        Ok(inst)
    }
}

/// Parses a problem file into a checked instance.
pub fn load_instance(src: &str, fallback_name: &str) -> Result<GmpInstance> {
    ProblemFile::parse(src)?.to_instance(fallback_name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::qvec;

    #[test]
    fn wedge_and_blocks() {
        let inst = load_instance(
            r#"
            [problem]
            n = 1
            d = 2
            [map]
            components = ["x1", "-x1^2"]
            [gamma]
            pieces = [{ ineqs = [[1, -1, 0], [-1, -1, "0"]] }]
            [point]
            x = ["0"]
            "#,
            "w",
        )
        .unwrap();
        assert_eq!(inst.name, "w");
        let g = inst.disjunctive().unwrap();
        assert!(g.contains(&qvec(&[1, 1])) && !g.contains(&qvec(&[1, 0])));

        let prod = load_instance(
            r#"
            [problem]
            n = 2
            d = 3
            [map]
            monomials = [[{ coeff = 1, exponents = [1, 0] }], [{ coeff = 1, exponents = [0, 1] }], []]
            [gamma]
            blocks = [{ dim = 1, pieces = [{}] }, { dim = 2, pieces = [{ ineqs = [[1, 1, 0], [-1, 1, 0]] }] }]
            [point]
            x = [0, 0]
            "#,
            "p",
        )
        .unwrap();
        assert_eq!(prod.disjunctive().unwrap().block_dims(), vec![1, 2]);
        assert!(prod.map.is_affine());
    }

    #[test]
    fn input_errors() {
        let base = |gamma: &str, point: &str| {
            format!("[problem]\nn = 1\nd = 2\n[map]\ncomponents = [\"x1\", \"x1^2\"]\n[gamma]\n{gamma}\n[point]\nx = [{point}]\n")
        };
        assert!(matches!(load_instance(&base("prototype = \"CC\"", "\"1\""), "e"), Err(Error::InfeasiblePoint)));
        assert!(load_instance(&base("prototype = \"CC\"", "\"0\""), "e").is_ok());
        assert!(matches!(load_instance(&base("prototype = \"XX\"", "0"), "e"), Err(Error::Input(_))));
        assert!(matches!(load_instance(&base("prototype = \"CC\"\nanalytic = \"subgraph_square\"", "0"), "e"), Err(Error::Input(_))));
        assert!(matches!(load_instance(&base("pieces = [{ ineqs = [[1, 0]] }]", "0"), "e"), Err(Error::Input(_))));
        assert!(matches!(load_instance("[problem]\nn = 1", "e"), Err(Error::Input(_))));
        let a = load_instance(&base("analytic = \"subgraph_square\"", "\"1/2\""), "e").unwrap();
        assert!(a.disjunctive().is_err());
    }
}
