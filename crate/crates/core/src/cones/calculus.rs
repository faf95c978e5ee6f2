//! Tangent, regular normal, limiting normal and directional limiting normal
//! cones of finite unions of convex polyhedra.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::set::{DisjunctiveSet, HPoly};
use crate::error::{Error, Result};
use crate::kernel::rational::{dot, neg, primitive_unsigned, QVec, Rational};
use crate::kernel::{
    convex_in_union, irredundant, strict_lp_feasible, HCone, PolyCone, StrictFeasibility, VCone,
};

/// A finite union of convex polyhedral cones. An empty piece list is the
/// empty set, distinct from the trivial cone `{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeUnion {
    pub dim: usize,
    pub pieces: Vec<PolyCone>,
}

impl ConeUnion {
    pub fn new(dim: usize, pieces: Vec<PolyCone>) -> Self {
        ConeUnion {
            dim,
            pieces: irredundant(pieces),
        }
    }

    pub fn empty(dim: usize) -> Self {
        ConeUnion { dim, pieces: vec![] }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `{0}`
    pub fn is_trivial(&self) -> bool {
        !self.pieces.is_empty() && self.pieces.iter().all(PolyCone::is_trivial)
    }

    pub fn contains_point(&self, v: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains_point(v))
    }

    /// Set containment `self ⊆ other`.
    pub fn subset_of(&self, other: &ConeUnion) -> bool {
        self.pieces.iter().all(|p| convex_in_union(p, &other.pieces))
    }

    pub fn same_set(&self, other: &ConeUnion) -> bool {
        self.subset_of(other) && other.subset_of(self)
    }

    pub fn vreps(&self) -> Vec<&VCone> {
        self.pieces.iter().map(|p| &p.v).collect()
    }

    /// First nonzero generator over all pieces.
    pub fn nonzero_point(&self) -> Option<QVec> {
        self.pieces.iter().find_map(PolyCone::nonzero_point)
    }
}

impl Serialize for ConeUnion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pieces.iter().map(|p| &p.v))
    }
}

fn require_member(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<Vec<usize>> {
    if y.len() != gamma.dim {
        return Err(Error::Dimension(format!(
            "point has {} coordinates, set lives in dimension {}",
            y.len(),
            gamma.dim
        )));
    }
    let active = gamma.active_pieces(y);
    if active.is_empty() {
        return Err(Error::NotInSet);
    }
    Ok(active)
}

/// `T_Γ(y)`: union of the tangent cones of the pieces containing `y`.
pub fn tangent_cone(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<ConeUnion> {
    let active = require_member(gamma, y)?;
    let pieces = active
        .iter()
        .map(|&i| PolyCone::from_h(gamma.pieces[i].tangent(y)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeUnion::new(gamma.dim, pieces))
}

/// Polar of one piece's tangent cone: `cone(active normals) + span(eq normals)`.
fn piece_normal(piece: &HPoly, rows: &[usize]) -> Result<PolyCone> {
    PolyCone::from_v(VCone::new(
        piece.dim,
        rows.iter().map(|&j| piece.ineqs[j].normal.clone()).collect(),
        piece.eqs.iter().map(|r| r.normal.clone()).collect(),
    ))
}

/// `N̂_Γ(y)`: the polar of the tangent union, i.e. the intersection of the
/// pieces' normal cones.
pub fn regular_normal_cone(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<PolyCone> {
    let active = require_member(gamma, y)?;
    let mut h = HCone::full(gamma.dim);
    for &i in &active {
        let n = piece_normal(&gamma.pieces[i], &gamma.pieces[i].active(y))?;
        h = h.intersect(&n.h);
    }
    PolyCone::from_h(h)
}

/// Active pieces near `y` and, for each, the inequality rows still tight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacePattern {
    pub active_pieces: Vec<usize>,
    pub active_sets: Vec<Vec<usize>>,
}

/// Sign pattern `{−, 0, +}` of the distinct hyperplanes through `y` spanned by
/// the rows of the pieces containing `y`.
struct Arrangement {
    normals: Vec<QVec>,
}

impl Arrangement {
    fn of(gamma: &DisjunctiveSet, y: &[Rational], active: &[usize]) -> Self {
        let mut set = BTreeSet::new();
        for &i in active {
            let p = &gamma.pieces[i];
            for r in &p.eqs {
                set.insert(primitive_unsigned(&r.normal));
            }
            for j in p.active(y) {
                set.insert(primitive_unsigned(&p.ineqs[j].normal));
            }
        }
        Arrangement {
            normals: set.into_iter().collect(),
        }
    }

    /// Every nonempty cell with a relative-interior witness.
    fn cells(&self, dim: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        let mut eqs = Vec::new();
        let mut stricts = Vec::new();
        self.descend(dim, 0, &mut eqs, &mut stricts, &mut out);
        out
    }

    fn descend(
        &self,
        dim: usize,
        k: usize,
        eqs: &mut Vec<QVec>,
        stricts: &mut Vec<QVec>,
        out: &mut Vec<Cell>,
    ) {
        let feas = strict_lp_feasible(dim, eqs, &[], stricts);
        let StrictFeasibility::Feasible(w) = feas else {
            return;
        };
        if k == self.normals.len() {
            out.push(Cell {
                eqs: eqs.clone(),
                stricts: stricts.clone(),
                witness: w,
            });
            return;
        }
        let a = &self.normals[k];
        eqs.push(a.clone());
        self.descend(dim, k + 1, eqs, stricts, out);
        eqs.pop();
        for s in [a.clone(), neg(a)] {
            stricts.push(s);
            self.descend(dim, k + 1, eqs, stricts, out);
            stricts.pop();
        }
    }
}

/// Relatively open polyhedral cone `{v : eqs·v = 0, stricts·v < 0}` on which
/// the local face structure of Γ around `y` is constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub eqs: Vec<QVec>,
    pub stricts: Vec<QVec>,
    pub witness: QVec,
}

/// Cells of the hyperplane arrangement spanned by the rows of the pieces
/// containing `y`, in a fixed order.
pub fn arrangement_cells(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<Vec<Cell>> {
    let active = require_member(gamma, y)?;
    Ok(Arrangement::of(gamma, y, &active).cells(gamma.dim))
}

fn pattern_at(gamma: &DisjunctiveSet, y: &[Rational], active: &[usize], v: &[Rational]) -> FacePattern {
    let mut pieces = Vec::new();
    let mut sets = Vec::new();
    for &i in active {
        let p = &gamma.pieces[i];
        if !p.eqs.iter().all(|r| dot(&r.normal, v).is_zero()) {
            continue;
        }
        let act = p.active(y);
        if act.iter().any(|&j| dot(&p.ineqs[j].normal, v).is_positive()) {
            continue;
        }
        pieces.push(i);
        sets.push(act.into_iter().filter(|&j| dot(&p.ineqs[j].normal, v).is_zero()).collect());
    }
    FacePattern {
        active_pieces: pieces,
        active_sets: sets,
    }
}

/// All face patterns realized arbitrarily close to `y`, each with a direction
/// `v` such that `y + t·v` realizes it for small `t > 0` (`v = 0` for `y`).
pub fn enumerate_face_patterns(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<Vec<(FacePattern, QVec)>> {
    let active = require_member(gamma, y)?;
    let arr = Arrangement::of(gamma, y, &active);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for cell in arr.cells(gamma.dim) {
        let v = cell.witness;
        let pat = pattern_at(gamma, y, &active, &v);
        if pat.active_pieces.is_empty() {
            continue;
        }
        if seen.insert(pat.clone()) {
            out.push((pat, v));
        }
    }
    out.sort();
    Ok(out)
}

/// Regular normal cone at any point realizing the pattern.
pub fn pattern_normal_cone(gamma: &DisjunctiveSet, pat: &FacePattern) -> Result<PolyCone> {
    let mut h = HCone::full(gamma.dim);
    for (&i, rows) in pat.active_pieces.iter().zip(&pat.active_sets) {
        h = h.intersect(&piece_normal(&gamma.pieces[i], rows)?.h);
    }
    PolyCone::from_h(h)
}

/// `N_Γ(y)`: union of the regular normal cones over all nearby face patterns.
pub fn limiting_normal_cone(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<ConeUnion> {
    let pats = enumerate_face_patterns(gamma, y)?;
    let pieces = pats
        .iter()
        .map(|(p, _)| pattern_normal_cone(gamma, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeUnion::new(gamma.dim, pieces))
}

/// The tangent union at `y` as a disjunctive set of conic pieces.
pub fn tangent_set(gamma: &DisjunctiveSet, y: &[Rational]) -> Result<DisjunctiveSet> {
    let active = require_member(gamma, y)?;
    let cones: Vec<HCone> = active.iter().map(|&i| gamma.pieces[i].tangent(y)).collect();
    Ok(DisjunctiveSet::from_cones(gamma.dim, &cones))
}

/// `N_Γ(y; d)`, computed as the limiting normal cone of the tangent union at
/// `d`; empty when `d` is not tangent.
pub fn directional_limiting_normal_cone(
    gamma: &DisjunctiveSet,
    y: &[Rational],
    dir: &[Rational],
) -> Result<ConeUnion> {
    let t = tangent_set(gamma, y)?;
    if !t.contains(dir) {
        return Ok(ConeUnion::empty(gamma.dim));
    }
    limiting_normal_cone(&t, dir)
}

/// Componentwise product of two cone unions (all cross pairs).
pub fn cone_product(a: &ConeUnion, b: &ConeUnion) -> Result<ConeUnion> {
    let mut pieces = Vec::new();
    for p in &a.pieces {
        for q in &b.pieces {
            let pad = |v: &QVec, before: usize, after: usize| {
                let mut out = vec![Rational::zero(); before];
                out.extend(v.iter().cloned());
                out.extend(vec![Rational::zero(); after]);
                out
            };
            let mut rays: Vec<QVec> = p.v.rays.iter().map(|r| pad(r, 0, b.dim)).collect();
            rays.extend(q.v.rays.iter().map(|r| pad(r, a.dim, 0)));
            let mut lin: Vec<QVec> = p.v.lineality.iter().map(|r| pad(r, 0, b.dim)).collect();
            lin.extend(q.v.lineality.iter().map(|r| pad(r, a.dim, 0)));
            pieces.push(PolyCone::from_v(VCone::new(a.dim + b.dim, rays, lin))?);
        }
    }
    Ok(ConeUnion::new(a.dim + b.dim, pieces))
}

/// Union of two cone unions.
pub fn cone_union(a: &ConeUnion, b: &ConeUnion) -> ConeUnion {
    let mut pieces = a.pieces.clone();
    pieces.extend(b.pieces.iter().cloned());
    ConeUnion::new(a.dim, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::set::{row0, Interval};
    use crate::kernel::rational::{q, qvec};

    fn cc() -> DisjunctiveSet {
        DisjunctiveSet::from_boxes(&[
            vec![Interval::nonneg(), Interval::point(q(0))],
            vec![Interval::point(q(0)), Interval::nonneg()],
        ])
    }

    fn abs_cone() -> DisjunctiveSet {
        DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1]), row0(&[-1, -1])])])
    }

    fn v(rays: &[&[i64]], lin: &[&[i64]]) -> PolyCone {
        PolyCone::from_v(VCone::new(
            2,
            rays.iter().map(|r| qvec(r)).collect(),
            lin.iter().map(|r| qvec(r)).collect(),
        ))
        .unwrap()
    }

    #[test]
    fn cc_cones() {
        let g = cc();
        let t = tangent_cone(&g, &qvec(&[1, 0])).unwrap();
        assert!(t.same_set(&ConeUnion::new(2, vec![v(&[], &[&[1, 0]])])));
        let n = regular_normal_cone(&g, &qvec(&[0, 0])).unwrap();
        assert!(n.same_set(&v(&[&[-1, 0], &[0, -1]], &[])));
        let n = regular_normal_cone(&g, &qvec(&[1, 0])).unwrap();
        assert!(n.same_set(&v(&[], &[&[0, 1]])));
        let lim = limiting_normal_cone(&g, &qvec(&[0, 0])).unwrap();
        let expected = ConeUnion::new(
            2,
            vec![v(&[&[-1, 0], &[0, -1]], &[]), v(&[], &[&[0, 1]]), v(&[], &[&[1, 0]])],
        );
        assert!(lim.same_set(&expected));
        assert_eq!(lim.pieces.len(), 3);
        let lim = limiting_normal_cone(&g, &qvec(&[0, 1])).unwrap();
        assert!(lim.same_set(&ConeUnion::new(2, vec![v(&[], &[&[1, 0]])])));
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_face_patterns(&cc(), &qvec(&[0, 0])).unwrap().len(), 3);
        let half = DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, 0])])]);
        assert_eq!(enumerate_face_patterns(&half, &qvec(&[0, 5])).unwrap().len(), 2);
        assert_eq!(enumerate_face_patterns(&abs_cone(), &qvec(&[0, 0])).unwrap().len(), 4);
    }

    #[test]
    fn abs_cone_normals() {
        let g = abs_cone();
        let n = regular_normal_cone(&g, &qvec(&[0, 0])).unwrap();
        assert!(n.same_set(&v(&[&[1, -1], &[-1, -1]], &[])));
        let d = directional_limiting_normal_cone(&g, &qvec(&[0, 0]), &qvec(&[1, 0])).unwrap();
        assert!(d.is_empty());
        let d = directional_limiting_normal_cone(&g, &qvec(&[0, 0]), &qvec(&[1, 1])).unwrap();
        assert!(d.same_set(&ConeUnion::new(2, vec![v(&[&[1, -1]], &[])])));
        let d0 = directional_limiting_normal_cone(&g, &qvec(&[0, 0]), &qvec(&[0, 0])).unwrap();
        assert!(d0.same_set(&limiting_normal_cone(&g, &qvec(&[0, 0])).unwrap()));
    }

    #[test]
    fn not_in_set() {
        assert_eq!(tangent_cone(&cc(), &qvec(&[1, 1])), Err(Error::NotInSet));
    }
}
