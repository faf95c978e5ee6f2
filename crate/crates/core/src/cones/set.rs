//! Finite unions of convex polyhedra and their product structure.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::kernel::rational::{dot, fmt_rational, is_zero_vec, q, zeros, QVec, Rational};
use crate::kernel::HCone;

/// One row `⟨a, y⟩ (= | ≤) β`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Row {
    pub normal: QVec,
    pub rhs: Rational,
}

impl Row {
    pub fn new(normal: QVec, rhs: Rational) -> Self {
        Row { normal, rhs }
    }

    pub fn value(&self, y: &[Rational]) -> Rational {
        dot(&self.normal, y) - &self.rhs
    }

    fn padded(&self, before: usize, after: usize) -> Row {
        let mut n = zeros(before);
        n.extend(self.normal.iter().cloned());
        n.extend(zeros(after));
        Row::new(n, self.rhs.clone())
    }
}

/// `{y : eq rows hold with equality, ineq rows hold with ≤}`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HPoly {
    pub dim: usize,
    pub eqs: Vec<Row>,
    pub ineqs: Vec<Row>,
}

/// Closed interval with optional (infinite) endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_bound")]
    pub lo: Option<Rational>,
    #[serde(serialize_with = "ser_bound")]
    pub hi: Option<Rational>,
}

fn ser_bound<S: serde::Serializer>(b: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match b {
        Some(x) => s.serialize_str(&fmt_rational(x)),
        None => s.serialize_none(),
    }
}

impl Interval {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval::new(Some(x.clone()), Some(x))
    }

    pub fn line() -> Self {
        Interval::new(None, None)
    }

    pub fn nonneg() -> Self {
        Interval::new(Some(Rational::zero()), None)
    }

    pub fn nonpos() -> Self {
        Interval::new(None, Some(Rational::zero()))
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= x) && self.hi.as_ref().is_none_or(|h| x <= h)
    }

    pub fn clamp(&self, x: &Rational) -> Rational {
        match (&self.lo, &self.hi) {
            (Some(l), _) if x < l => l.clone(),
            (_, Some(h)) if x > h => h.clone(),
            _ => x.clone(),
        }
    }
}

impl HPoly {
    pub fn new(dim: usize, eqs: Vec<Row>, ineqs: Vec<Row>) -> Self {
        let eqs = eqs.into_iter().filter(|r| !is_zero_vec(&r.normal)).collect();
        let ineqs = ineqs.into_iter().filter(|r| !is_zero_vec(&r.normal)).collect();
        HPoly { dim, eqs, ineqs }
    }

    /// Product of intervals; infinite endpoints produce no row and a
    /// degenerate interval becomes an equality.
    pub fn from_box(intervals: &[Interval]) -> Self {
        let d = intervals.len();
        let mut eqs = Vec::new();
        let mut ineqs = Vec::new();
        for (i, iv) in intervals.iter().enumerate() {
            let e = crate::kernel::rational::unit(d, i);
            match (&iv.lo, &iv.hi) {
                (Some(l), Some(h)) if l == h => eqs.push(Row::new(e, l.clone())),
                (lo, hi) => {
                    if let Some(h) = hi {
                        ineqs.push(Row::new(e.clone(), h.clone()));
                    }
                    if let Some(l) = lo {
                        ineqs.push(Row::new(e.iter().map(|x| -x).collect(), -l.clone()));
                    }
                }
            }
        }
        HPoly::new(d, eqs, ineqs)
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.eqs.iter().all(|r| r.value(y).is_zero())
            && self.ineqs.iter().all(|r| !r.value(y).is_positive())
    }

    /// Indices of inequality rows tight at `y`.
    pub fn active(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.ineqs.len())
            .filter(|&j| self.ineqs[j].value(y).is_zero())
            .collect()
    }

    /// `{v : eq normals · v = 0, active normals · v ≤ 0}` at a member `y`.
    pub fn tangent(&self, y: &[Rational]) -> HCone {
        HCone::new(
            self.dim,
            self.eqs.iter().map(|r| r.normal.clone()).collect(),
            self.active(y).into_iter().map(|j| self.ineqs[j].normal.clone()).collect(),
        )
    }

    /// Interval data when every row involves exactly one coordinate.
    pub fn as_box(&self) -> Option<Vec<Interval>> {
        let mut iv = vec![Interval::line(); self.dim];
        let single = |n: &QVec| {
            let nz: Vec<usize> = (0..n.len()).filter(|&i| !n[i].is_zero()).collect();
            (nz.len() == 1).then(|| nz[0])
        };
        for r in &self.eqs {
            let i = single(&r.normal)?;
            let v = &r.rhs / &r.normal[i];
            tighten(&mut iv[i], Some(v.clone()), Some(v));
        }
        for r in &self.ineqs {
            let i = single(&r.normal)?;
            let v = &r.rhs / &r.normal[i];
            if r.normal[i].is_positive() {
                tighten(&mut iv[i], None, Some(v));
            } else {
                tighten(&mut iv[i], Some(v), None);
            }
        }
        Some(iv)
    }

    fn embed(&self, before: usize, after: usize) -> HPoly {
        HPoly::new(
            before + self.dim + after,
            self.eqs.iter().map(|r| r.padded(before, after)).collect(),
            self.ineqs.iter().map(|r| r.padded(before, after)).collect(),
        )
    }

    /// Cartesian product `self × other`.
    pub fn product(&self, other: &HPoly) -> HPoly {
        let a = self.embed(0, other.dim);
        let b = other.embed(self.dim, 0);
        HPoly::new(
            self.dim + other.dim,
            a.eqs.into_iter().chain(b.eqs).collect(),
            a.ineqs.into_iter().chain(b.ineqs).collect(),
        )
    }

    pub fn cone(c: &HCone) -> HPoly {
        HPoly::new(
            c.dim,
            c.eqs.iter().map(|n| Row::new(n.clone(), Rational::zero())).collect(),
            c.ineqs.iter().map(|n| Row::new(n.clone(), Rational::zero())).collect(),
        )
    }
}

fn tighten(iv: &mut Interval, lo: Option<Rational>, hi: Option<Rational>) {
    if let Some(l) = lo {
        if iv.lo.as_ref().is_none_or(|x| &l > x) {
            iv.lo = Some(l);
        }
    }
    if let Some(h) = hi {
        if iv.hi.as_ref().is_none_or(|x| &h < x) {
            iv.hi = Some(h);
        }
    }
}

/// A factor of a product decomposition of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub dim: usize,
    pub pieces: Vec<HPoly>,
    pub ortho: bool,
}

/// Γ = Γ¹ ∪ … ∪ Γᵖ with convex polyhedral pieces, plus the factor blocks it
/// was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctiveSet {
    pub dim: usize,
    pub pieces: Vec<HPoly>,
    /// true iff every piece is a product of intervals
    pub ortho: bool,
    pub intervals: Option<Vec<Vec<Interval>>>,
    pub blocks: Vec<Block>,
}

impl DisjunctiveSet {
    /// A single-block set. Panics on an empty piece list or mixed dimensions.
    pub fn new(dim: usize, pieces: Vec<HPoly>) -> Self {
        assert!(!pieces.is_empty(), "a disjunctive set needs at least one piece");
        assert!(pieces.iter().all(|p| p.dim == dim), "pieces must share the ambient dimension");
        let boxes: Option<Vec<Vec<Interval>>> = pieces.iter().map(HPoly::as_box).collect();
        let ortho = boxes.is_some();
        DisjunctiveSet {
            dim,
            blocks: vec![Block {
                dim,
                pieces: pieces.clone(),
                ortho,
            }],
            pieces,
            ortho,
            intervals: boxes,
        }
    }

    pub fn from_boxes(boxes: &[Vec<Interval>]) -> Self {
        let dim = boxes[0].len();
        DisjunctiveSet::new(dim, boxes.iter().map(|b| HPoly::from_box(b)).collect())
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(y))
    }

    /// Indices of pieces containing `y`.
    pub fn active_pieces(&self, y: &[Rational]) -> Vec<usize> {
        (0..self.pieces.len()).filter(|&i| self.pieces[i].contains(y)).collect()
    }

    /// Block dimensions of the product structure.
    pub fn block_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    /// The union of cones `{v : …}` as a set of conic pieces.
    pub fn from_cones(dim: usize, cones: &[HCone]) -> Self {
        DisjunctiveSet::new(dim, cones.iter().map(HPoly::cone).collect())
    }
}

/// Γ₁ × Γ₂, distributing the unions over the product.
pub fn product_set(a: &DisjunctiveSet, b: &DisjunctiveSet) -> DisjunctiveSet {
    let mut pieces = Vec::with_capacity(a.pieces.len() * b.pieces.len());
    for p in &a.pieces {
        for r in &b.pieces {
            pieces.push(p.product(r));
        }
    }
    let intervals = match (&a.intervals, &b.intervals) {
        (Some(x), Some(y)) => Some(
            x.iter()
                .flat_map(|p| {
                    y.iter().map(move |r| {
                        let mut v = p.clone();
                        v.extend(r.iter().cloned());
                        v
                    })
                })
                .collect(),
        ),
        _ => None,
    };
    let mut blocks = a.blocks.clone();
    blocks.extend(b.blocks.iter().cloned());
    DisjunctiveSet {
        dim: a.dim + b.dim,
        pieces,
        ortho: a.ortho && b.ortho,
        intervals,
        blocks,
    }
}

/// Row with an integer normal and zero right-hand side.
pub fn row0(normal: &[i64]) -> Row {
    Row::new(normal.iter().map(|&x| q(x)).collect(), Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_detection_and_product() {
        let cc = DisjunctiveSet::from_boxes(&[
            vec![Interval::nonneg(), Interval::point(q(0))],
            vec![Interval::point(q(0)), Interval::nonneg()],
        ]);
        assert!(cc.ortho);
        let cc2 = product_set(&cc, &cc);
        assert_eq!(cc2.pieces.len(), 4);
        assert!(cc2.ortho);
        assert_eq!(cc2.block_dims(), vec![2, 2]);
        assert!(cc2.contains(&[q(1), q(0), q(0), q(3)]));
        assert!(!cc2.contains(&[q(1), q(1), q(0), q(3)]));
        let iv = cc2.intervals.as_ref().unwrap();
        assert_eq!(iv.len(), 4);
        assert_eq!(iv[1][2], Interval::point(q(0)));
    }

    #[test]
    fn non_box_piece() {
        let p = HPoly::new(2, vec![], vec![row0(&[1, -1])]);
        assert!(p.as_box().is_none());
        assert!(!DisjunctiveSet::new(2, vec![p]).ortho);
    }
}
