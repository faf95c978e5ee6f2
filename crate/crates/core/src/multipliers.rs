//! Multiplier cones `Λ⁰(x̄)`, `Λ⁰(x̄; u)`, direction classes and
//! M-stationarity.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{arrangement_cells, limiting_normal_cone, tangent_set, Cell, ConeUnion};
use crate::error::{Error, Result};
use crate::kernel::rational::{
    dot, mat_vec, null_space, primitive, ser_opt_qvec, ser_qvec, transpose, QMat, QVec, Rational,
};
use crate::kernel::{strict_lp_feasible, HCone, LinearProgram, LpOutcome, PolyCone, Relation};
use crate::model::{prototype_set, GmpInstance, PrototypeKind};

/// A multiplier cone together with the range direction it was computed for
/// (`None` for the non-directional cone).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierSet {
    pub cone: ConeUnion,
    #[serde(serialize_with = "ser_opt_qvec")]
    pub direction: Option<QVec>,
}

impl MultiplierSet {
    pub fn is_empty(&self) -> bool {
        self.cone.is_empty()
    }

    /// `{0}` or empty: no nonzero multiplier.
    pub fn is_trivial(&self) -> bool {
        self.cone.is_empty() || self.cone.is_trivial()
    }

    pub fn nonzero_point(&self) -> Option<QVec> {
        self.cone.nonzero_point()
    }
}

/// Rows of `∇F(x̄)ᵀλ = 0`.
fn kernel_rows(inst: &GmpInstance) -> QMat {
    transpose(inst.jacobian(), inst.n())
}

/// `ker ∇F(x̄)ᵀ ∩ N` piecewise.
pub fn restrict_to_kernel(inst: &GmpInstance, normals: &ConeUnion) -> Result<ConeUnion> {
    let ker = HCone::new(inst.d(), kernel_rows(inst), vec![]);
    let pieces = normals
        .pieces
        .iter()
        .map(|p| PolyCone::from_h(p.h.intersect(&ker)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeUnion::new(inst.d(), pieces))
}

/// `Λ⁰(x̄) = ker ∇F(x̄)ᵀ ∩ N_Γ(F(x̄))`
pub fn lambda0(inst: &GmpInstance) -> Result<MultiplierSet> {
    let gamma = inst.disjunctive()?;
    let n = limiting_normal_cone(gamma, inst.fbar())?;
    Ok(MultiplierSet {
        cone: restrict_to_kernel(inst, &n)?,
        direction: None,
    })
}

/// `Λ⁰(x̄; u) = ker ∇F(x̄)ᵀ ∩ N_Γ(F(x̄); ∇F(x̄)u)`
pub fn lambda0_directional(inst: &GmpInstance, u: &[Rational]) -> Result<MultiplierSet> {
    let gamma = inst.disjunctive()?;
    if u.len() != inst.n() {
        return Err(Error::Dimension(format!("direction has {} coordinates, n = {}", u.len(), inst.n())));
    }
    let dir = mat_vec(inst.jacobian(), u);
    let n = crate::cones::directional_limiting_normal_cone(gamma, inst.fbar(), &dir)?;
    Ok(MultiplierSet {
        cone: restrict_to_kernel(inst, &n)?,
        direction: Some(dir),
    })
}

/// A relatively open cone of range directions on which `N_Γ(F(x̄); ·)` is
/// constant, with its preimage under `∇F(x̄)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionClass {
    #[serde(serialize_with = "ser_qvec")]
    pub witness: QVec,
    #[serde(skip)]
    pub region: Cell,
    pub normal_value: ConeUnion,
    /// `ker ∇F(x̄)ᵀ ∩ normal_value`
    pub multipliers: ConeUnion,
    #[serde(skip)]
    pub pullback_eqs: QMat,
    #[serde(skip)]
    pub pullback_stricts: QMat,
    /// a nonzero `u` with `∇F(x̄)u` in the region, if one exists
    #[serde(serialize_with = "ser_opt_qvec")]
    pub pullback_witness: Option<QVec>,
}

impl DirectionClass {
    /// Closure of the pullback region.
    pub fn pullback_closure(&self, n: usize) -> Result<PolyCone> {
        PolyCone::from_h(HCone::new(n, self.pullback_eqs.clone(), self.pullback_stricts.clone()))
    }

    /// Whether `u` lies in the (open) pullback region.
    pub fn pullback_contains(&self, u: &[Rational]) -> bool {
        self.pullback_eqs.iter().all(|a| dot(a, u).is_zero())
            && self.pullback_stricts.iter().all(|a| dot(a, u).is_negative())
    }

    pub fn has_direction(&self) -> bool {
        self.pullback_witness.is_some()
    }
}

/// Finite partition of the tangent union into direction classes.
pub fn direction_classes(inst: &GmpInstance) -> Result<Vec<DirectionClass>> {
    let gamma = inst.disjunctive()?;
    let t = tangent_set(gamma, inst.fbar())?;
    let zero = vec![Rational::zero(); inst.d()];
    let jt = transpose(inst.jacobian(), inst.n());
    let pull = |a: &QVec| mat_vec(&jt, a);
    let mut out = Vec::new();
    for cell in arrangement_cells(&t, &zero)? {
        if !t.contains(&cell.witness) {
            continue;
        }
        let normal_value = limiting_normal_cone(&t, &cell.witness)?;
        let multipliers = restrict_to_kernel(inst, &normal_value)?;
        let eqs: QMat = cell.eqs.iter().map(pull).collect();
        let stricts: QMat = cell.stricts.iter().map(pull).collect();
        let pullback_witness = if stricts.is_empty() {
            null_space(&eqs, inst.n()).into_iter().next().map(|v| primitive(&v))
        } else {
            strict_lp_feasible(inst.n(), &eqs, &[], &stricts).witness().cloned()
        };
        out.push(DirectionClass {
            witness: cell.witness.clone(),
            region: cell,
            normal_value,
            multipliers,
            pullback_eqs: eqs,
            pullback_stricts: stricts,
            pullback_witness,
        });
    }
    Ok(out)
}

/// One complementarity pair of an M-stationary multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpccPair {
    pub index: usize,
    /// `"G>0=H"`, `"G=0<H"` or `"G=0=H"`
    pub activity: String,
    #[serde(serialize_with = "crate::kernel::rational::ser_rational", deserialize_with = "crate::kernel::rational::de_rational")]
    pub lambda_g: Rational,
    #[serde(serialize_with = "crate::kernel::rational::ser_rational", deserialize_with = "crate::kernel::rational::de_rational")]
    pub lambda_h: Rational,
    /// `λᴳ, λᴴ ≤ 0` or `λᴳλᴴ = 0` on biactive pairs; the inactive side vanishes otherwise
    pub pattern_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Stationarity {
    Stationary {
        #[serde(serialize_with = "ser_qvec", deserialize_with = "crate::kernel::rational::de_qvec")]
        multiplier: QVec,
        #[serde(skip_serializing_if = "Option::is_none")]
        mpcc: Option<Vec<MpccPair>>,
    },
    NotStationary,
}

/// Whether Γ is a product of complementarity sets.
pub fn is_cc_product(inst: &GmpInstance) -> bool {
    let Ok(g) = inst.disjunctive() else {
        return false;
    };
    let cc = prototype_set(PrototypeKind::Cc, 1);
    g.blocks.iter().all(|b| b.dim == 2 && b.pieces == cc.pieces) && g.blocks.len() * 2 == g.dim
}

/// `λ ∈ cone(piece)` with `∇F(x̄)ᵀλ = −∇f(x̄)`, if any.
fn solve_on_piece(jt: &QMat, rhs: &[Rational], piece: &PolyCone) -> Option<QVec> {
    let gens: Vec<&QVec> = piece.v.rays.iter().chain(&piece.v.lineality).collect();
    let d = piece.dim();
    let mut lp = LinearProgram::new(gens.len());
    for k in piece.v.rays.len()..gens.len() {
        lp.free[k] = true;
    }
    for (row, r) in jt.iter().zip(rhs) {
        let coeffs: QVec = gens.iter().map(|g| dot(row, g)).collect();
        lp.push(coeffs, Relation::Eq, r.clone());
    }
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => Some((0..d).map(|i| gens.iter().zip(&x).map(|(g, c)| &g[i] * c).sum()).collect()),
        _ => None,
    }
}

/// `0 ∈ ∇f(x̄) + ∇F(x̄)ᵀ N_Γ(F(x̄))`, decided piece by piece.
pub fn m_stationarity(inst: &GmpInstance) -> Result<Stationarity> {
    let f = inst.objective.as_ref().ok_or(Error::MissingObjective)?;
    let gamma = inst.disjunctive()?;
    let grad = f.jacobian(&inst.point)?.remove(0);
    let rhs: QVec = grad.iter().map(|g| -g).collect();
    let jt = kernel_rows(inst);
    let n = limiting_normal_cone(gamma, inst.fbar())?;
    for piece in &n.pieces {
        if let Some(lambda) = solve_on_piece(&jt, &rhs, piece) {
            let mpcc = is_cc_product(inst).then(|| mpcc_report(inst.fbar(), &lambda));
            return Ok(Stationarity::Stationary { multiplier: lambda, mpcc });
        }
    }
    Ok(Stationarity::NotStationary)
}

/// Sign pattern of a multiplier on a complementarity product at `(G, H)`.
pub fn mpcc_report(fbar: &[Rational], lambda: &[Rational]) -> Vec<MpccPair> {
    (0..fbar.len() / 2)
        .map(|i| {
            let (g, h) = (&fbar[2 * i], &fbar[2 * i + 1]);
            let (lg, lh) = (&lambda[2 * i], &lambda[2 * i + 1]);
            let (activity, ok) = if g.is_positive() {
                ("G>0=H", lg.is_zero())
            } else if h.is_positive() {
                ("G=0<H", lh.is_zero())
            } else {
                ("G=0=H", (!lg.is_positive() && !lh.is_positive()) || (lg * lh).is_zero())
            };
            MpccPair {
                index: i,
                activity: activity.to_string(),
                lambda_g: lg.clone(),
                lambda_h: lh.clone(),
                pattern_ok: ok,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::set::{row0, HPoly};
    use crate::cones::DisjunctiveSet;
    use crate::kernel::rational::{q, qvec};
    use crate::model::{Gamma, SmoothMap};

    fn ex31() -> GmpInstance {
        let wedge = DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1]), row0(&[-1, -1])])]);
        GmpInstance::new("ex31", SmoothMap::parse(1, &["x", "-x^2"]).unwrap(), Gamma::Disjunctive(wedge), qvec(&[0]))
            .unwrap()
    }

    #[test]
    fn wedge_multipliers() {
        let inst = ex31();
        let l = lambda0(&inst).unwrap();
        assert_eq!(l.cone.pieces.len(), 1);
        assert_eq!(l.cone.pieces[0].v.rays, vec![qvec(&[0, -1])]);
        assert!(lambda0_directional(&inst, &qvec(&[1])).unwrap().is_empty());
        assert_eq!(lambda0_directional(&inst, &qvec(&[0])).unwrap().cone, l.cone);
        let classes = direction_classes(&inst).unwrap();
        assert_eq!(classes.len(), 4);
        assert!(classes.iter().all(|c| !c.has_direction()));
    }

    #[test]
    fn stationarity_on_wedge() {
        let inst = ex31().with_objective(SmoothMap::parse(1, &["x"]).unwrap()).unwrap();
        match m_stationarity(&inst).unwrap() {
            Stationarity::Stationary { multiplier, mpcc } => {
                assert_eq!(multiplier[0], q(-1));
                assert!(multiplier[1] <= -multiplier[0].abs());
                assert!(mpcc.is_none());
            }
            other => panic!("{other:?}"),
        }
        let missing = ex31();
        assert_eq!(m_stationarity(&missing), Err(Error::MissingObjective));
    }

    #[test]
    fn stationarity_on_cc() {
        let g = prototype_set(PrototypeKind::Cc, 1);
        let f = SmoothMap::parse(2, &["x1", "x2"]).unwrap();
        let inst = GmpInstance::new("cc", f.clone(), Gamma::Disjunctive(g.clone()), qvec(&[0, 0]))
            .unwrap()
            .with_objective(SmoothMap::parse(2, &["x1"]).unwrap())
            .unwrap();
        match m_stationarity(&inst).unwrap() {
            Stationarity::Stationary { multiplier, mpcc } => {
                assert_eq!(multiplier, qvec(&[-1, 0]));
                assert!(mpcc.unwrap()[0].pattern_ok);
            }
            other => panic!("{other:?}"),
        }
        // image of ∇F is the x-axis; ∇f = (0, 1) has no representation
        let flat = SmoothMap::parse(2, &["x1", "0"]).unwrap();
        let inst = GmpInstance::new("cc", flat, Gamma::Disjunctive(g), qvec(&[1, 0]))
            .unwrap()
            .with_objective(SmoothMap::parse(2, &["x2"]).unwrap())
            .unwrap();
        assert_eq!(m_stationarity(&inst).unwrap(), Stationarity::NotStationary);
    }
}
