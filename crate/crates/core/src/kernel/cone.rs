//! Polyhedral cones in H- and V-representation and the double description
//! conversion between them.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::lp::{strict_lp_feasible, StrictFeasibility};
use super::rational::{
    dot, is_zero_vec, neg, primitive, primitive_unsigned, rref, solve, sub, transpose, QMat, QVec,
    Rational,
};
use crate::error::{Error, Result};

/// Largest ambient dimension accepted by [`dd_convert`].
pub const DD_DIMENSION_CAP: usize = 12;

/// `{v : eqs·v = 0, ineqs·v ≤ 0}`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HCone {
    pub dim: usize,
    pub eqs: QMat,
    pub ineqs: QMat,
}

/// `cone(rays) + span(lineality)`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VCone {
    #[serde(skip)]
    pub dim: usize,
    #[serde(serialize_with = "crate::kernel::rational::ser_qmat")]
    pub rays: QMat,
    #[serde(serialize_with = "crate::kernel::rational::ser_qmat")]
    pub lineality: QMat,
}

impl HCone {
    pub fn new(dim: usize, eqs: QMat, ineqs: QMat) -> Self {
        let clean = |rows: QMat| rows.into_iter().filter(|r| !is_zero_vec(r)).collect();
        HCone {
            dim,
            eqs: clean(eqs),
            ineqs: clean(ineqs),
        }
    }

    pub fn full(dim: usize) -> Self {
        HCone::new(dim, vec![], vec![])
    }

    pub fn zero(dim: usize) -> Self {
        HCone::new(dim, (0..dim).map(|i| super::rational::unit(dim, i)).collect(), vec![])
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.eqs.iter().all(|a| dot(a, v).is_zero())
            && self.ineqs.iter().all(|a| !dot(a, v).is_positive())
    }

    pub fn intersect(&self, other: &HCone) -> HCone {
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.iter().cloned());
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.iter().cloned());
        HCone::new(self.dim, eqs, ineqs)
    }
}

impl VCone {
    pub fn new(dim: usize, rays: QMat, lineality: QMat) -> Self {
        VCone {
            dim,
            rays: rays.into_iter().filter(|r| !is_zero_vec(r)).collect(),
            lineality: lineality.into_iter().filter(|r| !is_zero_vec(r)).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    /// Generators with lines split into two opposite rays.
    pub fn generators(&self) -> QMat {
        let mut g = self.rays.clone();
        for l in &self.lineality {
            g.push(l.clone());
            g.push(neg(l));
        }
        g
    }

    pub fn span_dim(&self) -> usize {
        let mut all = self.rays.clone();
        all.extend(self.lineality.iter().cloned());
        super::rational::rank(&all, self.dim)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum RowKind {
    Eq,
    Le,
}

/// H- to V-representation by the double description method. Rays of the
/// result are extreme, primitive, orthogonal to the lineality space and
/// sorted, so equal cones give identical outputs.
pub fn dd_convert(c: &HCone) -> Result<VCone> {
    if c.dim > DD_DIMENSION_CAP {
        return Err(Error::DimensionCap {
            dim: c.dim,
            cap: DD_DIMENSION_CAP,
        });
    }
    let n = c.dim;
    let rows: Vec<(QVec, RowKind)> = c
        .eqs
        .iter()
        .map(|r| (r.clone(), RowKind::Eq))
        .chain(c.ineqs.iter().map(|r| (r.clone(), RowKind::Le)))
        .collect();
    let m = rows.len();
    let mut lineality: QMat = (0..n).map(|i| super::rational::unit(n, i)).collect();
    // each ray carries the set of processed rows it satisfies with equality
    let mut rays: Vec<(QVec, Vec<bool>)> = Vec::new();

    for (k, (a, kind)) in rows.iter().enumerate() {
        if let Some(li) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let l = lineality.remove(li);
            let al = dot(a, &l);
            for other in lineality.iter_mut() {
                let s = dot(a, other) / &al;
                if !s.is_zero() {
                    *other = sub(other, &super::rational::scale(&s, &l));
                }
            }
            for (r, z) in rays.iter_mut() {
                let s = dot(a, r) / &al;
                if !s.is_zero() {
                    *r = primitive(&sub(r, &super::rational::scale(&s, &l)));
                }
                z[k] = true;
            }
            if *kind == RowKind::Le {
                let dir = if al.is_positive() { neg(&l) } else { l };
                let mut z = vec![true; m];
                for zk in z.iter_mut().skip(k) {
                    *zk = false;
                }
                rays.push((primitive(&dir), z));
            }
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let negs: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<(QVec, Vec<bool>)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_zero() {
                let mut z = z.clone();
                z[k] = true;
                next.push((r.clone(), z));
            } else if vals[i].is_negative() && *kind == RowKind::Le {
                next.push((r.clone(), z.clone()));
            }
        }
        for &p in &pos {
            for &q in &negs {
                if !adjacent(&rays, p, q, k) {
                    continue;
                }
                let (rp, zp) = &rays[p];
                let (rq, zq) = &rays[q];
                let mut v: QVec = rq.iter().map(|x| x * &vals[p]).collect();
                for (vi, x) in v.iter_mut().zip(rp) {
                    *vi -= x * &vals[q];
                }
                let mut z: Vec<bool> = zp.iter().zip(zq).map(|(a, b)| *a && *b).collect();
                z[k] = true;
                next.push((primitive(&v), z));
            }
        }
        rays = next;
    }
    Ok(canonical(n, rays.into_iter().map(|(r, _)| r).collect(), lineality))
}

fn adjacent(rays: &[(QVec, Vec<bool>)], p: usize, q: usize, upto: usize) -> bool {
    let common: Vec<usize> = (0..upto)
        .filter(|&j| rays[p].1[j] && rays[q].1[j])
        .collect();
    !rays.iter().enumerate().any(|(i, (_, z))| {
        i != p && i != q && common.iter().all(|&j| z[j])
    })
}

/// Canonical V-representation: lineality in reduced echelon form scaled to
/// primitive integers, rays projected onto its orthogonal complement,
/// primitive, deduplicated and sorted.
fn canonical(n: usize, rays: QMat, lineality: QMat) -> VCone {
    let (basis, _) = rref(&lineality, n);
    let proj = |r: &QVec| -> QVec {
        if basis.is_empty() {
            return r.clone();
        }
        let gram: QMat = basis
            .iter()
            .map(|b| basis.iter().map(|c| dot(b, c)).collect())
            .collect();
        let rhs: QVec = basis.iter().map(|b| dot(b, r)).collect();
        let coef = solve(&gram, &rhs).expect("lineality basis is independent");
        let mut out = r.clone();
        for (c, b) in coef.iter().zip(&basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o -= c * x;
            }
        }
        out
    };
    let mut out: QMat = rays
        .iter()
        .map(|r| primitive(&proj(r)))
        .filter(|r| !is_zero_vec(r))
        .collect();
    out.sort();
    out.dedup();
    let mut lin: QMat = basis.iter().map(|b| primitive_unsigned(b)).collect();
    lin.sort();
    VCone {
        dim: n,
        rays: out,
        lineality: lin,
    }
}

/// V- to H-representation with irredundant rows (the facets), computed as the
/// double description of the polar.
pub fn vrep_to_hrep(v: &VCone) -> Result<HCone> {
    let polar = dd_convert(&HCone::new(v.dim, v.lineality.clone(), v.rays.clone()))?;
    Ok(HCone::new(v.dim, polar.lineality, polar.rays))
}

/// Irredundant V-representation of `cone(rays) + span(lineality)`.
pub fn canonical_vrep(v: &VCone) -> Result<VCone> {
    dd_convert(&vrep_to_hrep(v)?)
}

/// `{z : ⟨z, d⟩ ≤ 0 for all d ∈ c}` of an H-cone.
pub fn polar_h(c: &HCone) -> Result<VCone> {
    canonical_vrep(&VCone::new(c.dim, c.ineqs.clone(), c.eqs.clone()))
}

/// `{z : ⟨z, d⟩ ≤ 0 for all d ∈ c}` of a V-cone.
pub fn polar_v(c: &VCone) -> Result<VCone> {
    dd_convert(&HCone::new(c.dim, c.lineality.clone(), c.rays.clone()))
}

/// A convex polyhedral cone carried in both representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyCone {
    pub h: HCone,
    pub v: VCone,
}

impl PartialOrd for PolyCone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyCone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.v.lineality, &self.v.rays).cmp(&(&other.v.lineality, &other.v.rays))
    }
}

impl PolyCone {
    pub fn from_h(h: HCone) -> Result<Self> {
        let v = dd_convert(&h)?;
        let h = vrep_to_hrep(&v)?;
        Ok(PolyCone { h, v })
    }

    pub fn from_v(v: VCone) -> Result<Self> {
        let h = vrep_to_hrep(&v)?;
        let v = dd_convert(&h)?;
        Ok(PolyCone { h, v })
    }

    pub fn dim(&self) -> usize {
        self.v.dim
    }

    pub fn full(dim: usize) -> Self {
        PolyCone::from_h(HCone::full(dim)).expect("small dimension")
    }

    pub fn zero(dim: usize) -> Self {
        PolyCone {
            h: HCone::zero(dim),
            v: VCone::new(dim, vec![], vec![]),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.v.is_trivial()
    }

    pub fn contains_point(&self, v: &[Rational]) -> bool {
        self.h.contains(v)
    }

    /// `other ⊆ self`
    pub fn contains_cone(&self, other: &PolyCone) -> bool {
        other.v.generators().iter().all(|g| self.h.contains(g))
    }

    pub fn same_set(&self, other: &PolyCone) -> bool {
        self.v == other.v
    }

    pub fn intersect(&self, other: &PolyCone) -> Result<PolyCone> {
        PolyCone::from_h(self.h.intersect(&other.h))
    }

    pub fn polar(&self) -> Result<PolyCone> {
        PolyCone::from_v(polar_v(&self.v)?)
    }

    /// Image under `x ↦ m x`, `m` given by rows (`out_dim × dim`).
    pub fn image(&self, m: &[QVec], out_dim: usize) -> Result<PolyCone> {
        let map = |g: &QVec| super::rational::mat_vec(m, g);
        PolyCone::from_v(VCone::new(
            out_dim,
            self.v.rays.iter().map(map).collect(),
            self.v.lineality.iter().map(map).collect(),
        ))
    }

    /// Preimage `{x : m x ∈ self}`, `m` given by rows (`dim × in_dim`).
    pub fn preimage(&self, m: &[QVec], in_dim: usize) -> Result<PolyCone> {
        let mt = transpose(m, in_dim);
        let pull = |a: &QVec| super::rational::mat_vec(&mt, a);
        PolyCone::from_h(HCone::new(
            in_dim,
            self.h.eqs.iter().map(pull).collect(),
            self.h.ineqs.iter().map(pull).collect(),
        ))
    }

    /// Some nonzero point of the cone, if any.
    pub fn nonzero_point(&self) -> Option<QVec> {
        self.v
            .rays
            .first()
            .or_else(|| self.v.lineality.first())
            .cloned()
    }
}

/// `c = {0}`
pub fn cone_is_trivial(c: &HCone) -> Result<bool> {
    Ok(dd_convert(c)?.is_trivial())
}

/// Decides `p ⊆ q₁ ∪ … ∪ q_k` exactly. A point of `p` outside the union must
/// strictly violate one row of every `q_j`; each choice is a strict LP.
pub fn convex_in_union(p: &PolyCone, union: &[PolyCone]) -> bool {
    if union.iter().any(|q| q.contains_cone(p)) {
        return true;
    }
    let mut choices: Vec<Vec<QVec>> = Vec::with_capacity(union.len());
    for q in union {
        // rows r with r·v > 0 strictly violate q; stored as -r for "-r·v < 0"
        let mut c: Vec<QVec> = q.h.ineqs.iter().map(|r| neg(r)).collect();
        for e in &q.h.eqs {
            c.push(e.clone());
            c.push(neg(e));
        }
        if c.is_empty() {
            return true; // q is the whole space
        }
        choices.push(c);
    }
    let mut stricts: Vec<QVec> = Vec::new();
    !escape(p, &choices, 0, &mut stricts)
}

fn escape(p: &PolyCone, choices: &[Vec<QVec>], depth: usize, stricts: &mut Vec<QVec>) -> bool {
    let feasible = strict_lp_feasible(p.dim(), &p.h.eqs, &p.h.ineqs, stricts);
    if feasible == StrictFeasibility::Infeasible {
        return false;
    }
    if depth == choices.len() {
        return true;
    }
    for row in &choices[depth] {
        stricts.push(row.clone());
        let found = escape(p, choices, depth + 1, stricts);
        stricts.pop();
        if found {
            return true;
        }
    }
    false
}

/// Union-level set equality via mutual piecewise containment.
pub fn unions_equal(a: &[PolyCone], b: &[PolyCone]) -> bool {
    a.iter().all(|p| convex_in_union(p, b)) && b.iter().all(|p| convex_in_union(p, a))
}

/// Drops pieces contained in another piece, deduplicates and sorts.
pub fn irredundant(mut pieces: Vec<PolyCone>) -> Vec<PolyCone> {
    pieces.sort();
    pieces.dedup();
    let keep: Vec<bool> = (0..pieces.len())
        .map(|i| {
            !pieces
                .iter()
                .enumerate()
                .any(|(j, q)| j != i && q.contains_cone(&pieces[i]))
        })
        .collect();
    pieces
        .into_iter()
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::qvec;

    fn h(dim: usize, eqs: &[&[i64]], ineqs: &[&[i64]]) -> HCone {
        HCone::new(
            dim,
            eqs.iter().map(|r| qvec(r)).collect(),
            ineqs.iter().map(|r| qvec(r)).collect(),
        )
    }

    #[test]
    fn orthant_and_halfspace() {
        let v = dd_convert(&h(2, &[], &[&[-1, 0], &[0, -1]])).unwrap();
        assert_eq!(v.rays, vec![qvec(&[0, 1]), qvec(&[1, 0])]);
        assert!(v.lineality.is_empty());
        let v = dd_convert(&h(2, &[], &[&[1, 0]])).unwrap();
        assert_eq!(v.rays, vec![qvec(&[-1, 0])]);
        assert_eq!(v.lineality, vec![qvec(&[0, 1])]);
    }

    #[test]
    fn vrep_to_hrep_of_wedge() {
        let v = VCone::new(2, vec![qvec(&[1, 0]), qvec(&[1, 1])], vec![]);
        let hc = vrep_to_hrep(&v).unwrap();
        let mut rows = hc.ineqs.clone();
        rows.sort();
        assert_eq!(rows, vec![qvec(&[-1, 1]), qvec(&[0, -1])]);
    }

    #[test]
    fn polar_examples() {
        let p = polar_h(&h(2, &[], &[&[-1, 0], &[0, -1]])).unwrap();
        assert_eq!(p.rays, vec![qvec(&[-1, 0]), qvec(&[0, -1])]);
        // {v2 >= |v1|} polar is {z2 <= -|z1|}
        let p = polar_h(&h(2, &[], &[&[1, -1], &[-1, -1]])).unwrap();
        assert_eq!(p.rays, vec![qvec(&[-1, -1]), qvec(&[1, -1])]);
        assert!(polar_h(&HCone::full(3)).unwrap().is_trivial());
    }

    #[test]
    fn trivial_cones() {
        assert!(cone_is_trivial(&h(2, &[], &[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]])).unwrap());
        assert!(!cone_is_trivial(&h(2, &[&[1, 0]], &[&[0, 1]])).unwrap());
        assert!(!cone_is_trivial(&h(2, &[], &[&[1, 0]])).unwrap());
    }

    #[test]
    fn pyramid_has_four_extreme_rays() {
        // cone over a square: |v1| <= v3, |v2| <= v3
        let v = dd_convert(&h(3, &[], &[&[1, 0, -1], &[-1, 0, -1], &[0, 1, -1], &[0, -1, -1]])).unwrap();
        assert_eq!(v.rays.len(), 4);
        assert!(v.rays.iter().all(|r| r[2] == crate::kernel::rational::q(1)));
    }

    #[test]
    fn union_containment() {
        let quad = |a: i64, b: i64| PolyCone::from_h(h(2, &[], &[&[-a, 0], &[0, -b]])).unwrap();
        let upper = PolyCone::from_h(h(2, &[], &[&[0, -1]])).unwrap();
        assert!(convex_in_union(&upper, &[quad(1, 1), quad(-1, 1)]));
        assert!(!convex_in_union(&upper, &[quad(1, 1)]));
        assert!(convex_in_union(&PolyCone::full(2), &[quad(1, 1), quad(-1, 1), quad(1, -1), quad(-1, -1)]));
        assert!(!convex_in_union(&PolyCone::full(2), &[quad(1, 1), quad(-1, 1), quad(1, -1)]));
    }

    #[test]
    fn dimension_cap() {
        assert!(matches!(
            dd_convert(&HCone::full(13)),
            Err(Error::DimensionCap { dim: 13, cap: 12 })
        ));
    }
}
