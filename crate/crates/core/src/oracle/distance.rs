//! Distances to Γ.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cones::{DisjunctiveSet, HPoly, Interval};
use crate::kernel::rational::{dot, from_f64, rref, solve, sub, to_f64, QVec, Rational};
use crate::kernel::{LinearProgram, LpOutcome, Relation};
use crate::model::Gamma;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    L1,
    L2,
    Linf,
}

impl std::str::FromStr for Norm {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "l1" => Ok(Norm::L1),
            "l2" => Ok(Norm::L2),
            "linf" | "l∞" => Ok(Norm::Linf),
            _ => Err(crate::Error::Input(format!("unknown norm {s:?}"))),
        }
    }
}

/// Combines coordinate residuals: `Σ|v|`, `Σv²` (squared) or `max|v|`.
fn combine(v: impl Iterator<Item = Rational>, norm: Norm) -> Rational {
    v.fold(Rational::zero(), |acc, x| match norm {
        Norm::L1 => acc + x.abs(),
        Norm::L2 => acc + &x * &x,
        Norm::Linf => acc.max(x.abs()),
    })
}

fn box_distance(iv: &[Interval], y: &[Rational], norm: Norm) -> Rational {
    combine(iv.iter().zip(y).map(|(i, x)| x - i.clamp(x)), norm)
}

/// Squared Euclidean distance to a polyhedron: the projection lies in the
/// relative interior of some face, so it is the nearest feasible projection
/// onto the affine hulls of the candidate faces.
fn l2sq_polyhedron(p: &HPoly, y: &[Rational]) -> Rational {
    if p.contains(y) {
        return Rational::zero();
    }
    let m = p.ineqs.len();
    let mut best: Option<Rational> = None;
    for mask in 0u64..1 << m {
        if (mask.count_ones() as usize) > p.dim {
            continue;
        }
        let rows: Vec<QVec> = p
            .eqs
            .iter()
            .chain((0..m).filter(|j| mask >> j & 1 == 1).map(|j| &p.ineqs[j]))
            .map(|r| {
                let mut a = r.normal.clone();
                a.push(r.rhs.clone());
                a
            })
            .collect();
        let (red, piv) = rref(&rows, p.dim + 1);
        if piv.last() == Some(&p.dim) {
            continue;
        }
        let z = if red.is_empty() {
            y.to_vec()
        } else {
            let a: Vec<QVec> = red.iter().map(|r| r[..p.dim].to_vec()).collect();
            let resid: QVec = red.iter().map(|r| dot(&r[..p.dim], y) - &r[p.dim]).collect();
            let gram: Vec<QVec> = a.iter().map(|ai| a.iter().map(|aj| dot(ai, aj)).collect()).collect();
            let Some(mu) = solve(&gram, &resid) else { continue };
            let mut z = y.to_vec();
            for (ai, mi) in a.iter().zip(&mu) {
                for (zk, ak) in z.iter_mut().zip(ai) {
                    *zk -= ak * mi;
                }
            }
            z
        };
        if !p.contains(&z) {
            continue;
        }
        let d = sub(y, &z);
        let v = dot(&d, &d);
        if best.as_ref().is_none_or(|b| &v < b) {
            best = Some(v);
        }
    }
    best.expect("a nonempty polyhedron has a nearest point")
}

/// `min ‖y − z‖` over the polyhedron by linear programming (l1 / l∞).
fn lp_distance(p: &HPoly, y: &[Rational], norm: Norm) -> Rational {
    let d = p.dim;
    let slacks = if norm == Norm::L1 { d } else { 1 };
    let mut lp = LinearProgram::new(d + slacks);
    for i in 0..d {
        lp.free[i] = true;
    }
    let var = |i: usize, c: i64, slack: usize, s: i64| {
        let mut v = vec![Rational::zero(); d + slacks];
        v[i] = Rational::from_integer(c.into());
        v[d + slack] = Rational::from_integer(s.into());
        v
    };
    for i in 0..d {
        let s = if norm == Norm::L1 { i } else { 0 };
        lp.push(var(i, 1, s, -1), Relation::Le, y[i].clone());
        lp.push(var(i, -1, s, -1), Relation::Le, -y[i].clone());
    }
    let pad = |a: &QVec| {
        let mut v = a.clone();
        v.extend(std::iter::repeat_n(Rational::zero(), slacks));
        v
    };
    for r in &p.eqs {
        lp.push(pad(&r.normal), Relation::Eq, r.rhs.clone());
    }
    for r in &p.ineqs {
        lp.push(pad(&r.normal), Relation::Le, r.rhs.clone());
    }
    for k in 0..slacks {
        lp.objective[d + k] = -Rational::from_integer(1.into());
    }
    match lp.solve() {
        LpOutcome::Optimal { value, .. } => -value,
        other => panic!("distance LP must be solvable, got {other:?}"),
    }
}

/// Exact distance from `y` to Γ. For [`Norm::L2`] the **squared** distance
/// is returned so the value stays rational.
pub fn distance_to_gamma(gamma: &DisjunctiveSet, y: &[Rational], norm: Norm) -> Rational {
    gamma
        .pieces
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let boxed = gamma.intervals.as_ref().map(|iv| iv[k].clone()).or_else(|| p.as_box());
            match (boxed, norm) {
                (Some(iv), _) => box_distance(&iv, y, norm),
                (None, Norm::L2) => l2sq_polyhedron(p, y),
                (None, _) => lp_distance(p, y, norm),
            }
        })
        .min()
        .expect("Γ has at least one piece")
}

/// Euclidean distance to Γ at a float point; polyhedral Γ is handled exactly
/// on the binary value of `y`.
pub fn gamma_distance_f64(gamma: &Gamma, y: &[f64]) -> f64 {
    match gamma {
        Gamma::Disjunctive(g) => {
            let yq: Option<QVec> = y.iter().map(|&v| from_f64(v)).collect();
            match yq {
                Some(yq) => to_f64(&distance_to_gamma(g, &yq, Norm::L2)).sqrt(),
                None => f64::NAN,
            }
        }
        Gamma::Analytic(a) => a.distance(y),
    }
}

/// Distance over an ortho-disjunctive product: `inner` norm within each
/// factor block, `outer` norm across blocks.
pub fn ortho_distance(gamma: &DisjunctiveSet, y: &[Rational], inner: Norm, outer: Norm) -> Option<Rational> {
    let mut lo = 0;
    let mut per_block = Vec::new();
    for b in &gamma.blocks {
        let yb = &y[lo..lo + b.dim];
        let d = b
            .pieces
            .iter()
            .map(|p| p.as_box().map(|iv| box_distance(&iv, yb, inner)))
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .min()?;
        per_block.push(d);
        lo += b.dim;
    }
    if inner == Norm::L2 || outer == Norm::L2 {
        return None;
    }
    Some(combine(per_block.into_iter(), outer))
}

/// Whether `y` is in Γ, for property checks against the distance.
pub fn is_zero_distance(gamma: &DisjunctiveSet, y: &[Rational]) -> bool {
    !distance_to_gamma(gamma, y, Norm::L2).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::set::row0;
    use crate::kernel::rational::{q, qf, qvec};
    use crate::model::{prototype_set, PrototypeKind};

    #[test]
    fn cc_distances() {
        let cc = prototype_set(PrototypeKind::Cc, 1);
        assert_eq!(distance_to_gamma(&cc, &qvec(&[3, 4]), Norm::L2), q(9));
        assert_eq!(distance_to_gamma(&cc, &qvec(&[3, 4]), Norm::L1), q(3));
        assert_eq!(distance_to_gamma(&cc, &qvec(&[0, 4]), Norm::Linf), q(0));
        let t = qf(1, 3);
        assert_eq!(ortho_distance(&cc, &[t.clone(), t.clone()], Norm::Linf, Norm::L1), Some(t));
    }

    #[test]
    fn halfplane_distance() {
        // y2 ≥ y1
        let g = DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1])])]);
        assert_eq!(distance_to_gamma(&g, &qvec(&[1, 0]), Norm::L2), qf(1, 2));
        assert_eq!(distance_to_gamma(&g, &qvec(&[1, 0]), Norm::L1), q(1));
        assert_eq!(distance_to_gamma(&g, &qvec(&[1, 0]), Norm::Linf), qf(1, 2));
        assert!(is_zero_distance(&g, &qvec(&[0, 5])));
        let d = gamma_distance_f64(&Gamma::Disjunctive(g), &[1.0, 0.0]);
        assert!((d - 0.5f64.sqrt()).abs() < 1e-15);
    }
}
