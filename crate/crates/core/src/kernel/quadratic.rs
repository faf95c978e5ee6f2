//! Exact definiteness of a quadratic form restricted to a subspace.

use num_traits::{Signed, Zero};

use super::rational::{axpy, dot, mat_vec, primitive, rank, QMat, QVec, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    /// negative for every nonzero vector of the subspace
    NegativeDefinite,
    /// nonpositive, with a nonzero vector where the form vanishes
    NegativeSemidefinite,
    /// a subspace vector where the form is positive
    Indefinite(QVec),
}

pub fn quad_form(q: &[QVec], v: &[Rational]) -> Rational {
    dot(v, &mat_vec(q, v))
}

/// Classifies `vᵀQv` on `span(basis)` by symmetric pivoted elimination of
/// `BᵀQB`, keeping the subspace vectors that realize each pivot.
pub fn nsd_on_subspace(q: &[QVec], basis: &[QVec]) -> Result<Definiteness> {
    let n = q.len();
    if basis.is_empty() {
        return Ok(Definiteness::NegativeDefinite);
    }
    if rank(basis, n) != basis.len() {
        return Err(Error::BasisDependent);
    }
    let mut vecs: QMat = basis.to_vec();
    let mut a: QMat = vecs
        .iter()
        .map(|u| vecs.iter().map(|v| dot(u, &mat_vec(q, v))).collect())
        .collect();
    let mut alive: Vec<usize> = (0..vecs.len()).collect();
    loop {
        if alive.is_empty() {
            return Ok(Definiteness::NegativeDefinite);
        }
        if let Some(&i) = alive.iter().find(|&&i| a[i][i].is_positive()) {
            return Ok(Definiteness::Indefinite(primitive(&vecs[i])));
        }
        if let Some(pos) = alive.iter().position(|&i| a[i][i].is_negative()) {
            let p = alive.remove(pos);
            let app = a[p][p].clone();
            for &j in &alive {
                let f = &a[p][j] / &app;
                if f.is_zero() {
                    continue;
                }
                vecs[j] = axpy(&vecs[j], &-f.clone(), &vecs[p]);
                for &k in &alive {
                    let d = &f * &a[p][k];
                    a[j][k] -= d;
                }
            }
            continue;
        }
        for &i in &alive {
            for &j in &alive {
                if i != j && !a[i][j].is_zero() {
                    // a_ii = a_jj = 0: (v_i + s v_j) has value 2 s a_ij > 0
                    let s = a[i][j].clone();
                    return Ok(Definiteness::Indefinite(primitive(&axpy(&vecs[i], &s, &vecs[j]))));
                }
            }
        }
        return Ok(Definiteness::NegativeSemidefinite);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qvec};

    fn diag(d: &[i64]) -> QMat {
        (0..d.len())
            .map(|i| (0..d.len()).map(|j| if i == j { q(d[i]) } else { q(0) }).collect())
            .collect()
    }

    fn eye(n: usize) -> QMat {
        diag(&vec![1; n])
    }

    #[test]
    fn classifications() {
        assert_eq!(nsd_on_subspace(&diag(&[-2, -2]), &eye(2)).unwrap(), Definiteness::NegativeDefinite);
        assert_eq!(nsd_on_subspace(&diag(&[0, 0]), &eye(2)).unwrap(), Definiteness::NegativeSemidefinite);
        assert_eq!(
            nsd_on_subspace(&diag(&[1, -1]), &[qvec(&[1, 0])]).unwrap(),
            Definiteness::Indefinite(qvec(&[1, 0]))
        );
        assert_eq!(nsd_on_subspace(&diag(&[1, -1]), &[qvec(&[0, 1])]).unwrap(), Definiteness::NegativeDefinite);
        assert_eq!(nsd_on_subspace(&diag(&[3]), &[]).unwrap(), Definiteness::NegativeDefinite);
        assert!(matches!(
            nsd_on_subspace(&diag(&[1, 1]), &[qvec(&[1, 1]), qvec(&[2, 2])]),
            Err(Error::BasisDependent)
        ));
    }

    #[test]
    fn off_diagonal_witness() {
        // w1 w2 form
        let m = vec![vec![q(0), crate::kernel::rational::qf(1, 2)], vec![crate::kernel::rational::qf(1, 2), q(0)]];
        match nsd_on_subspace(&m, &eye(2)).unwrap() {
            Definiteness::Indefinite(w) => assert!(quad_form(&m, &w).is_positive()),
            other => panic!("{other:?}"),
        }
        // [[-1, 2], [2, -1]] is indefinite, witness after elimination
        let m = vec![qvec(&[-1, 2]), qvec(&[2, -1])];
        match nsd_on_subspace(&m, &eye(2)).unwrap() {
            Definiteness::Indefinite(w) => assert!(quad_form(&m, &w).is_positive()),
            other => panic!("{other:?}"),
        }
        let m = vec![qvec(&[-2, 1]), qvec(&[1, -2])];
        assert_eq!(nsd_on_subspace(&m, &eye(2)).unwrap(), Definiteness::NegativeDefinite);
        let m = vec![qvec(&[-1, 1]), qvec(&[1, -1])];
        assert_eq!(nsd_on_subspace(&m, &eye(2)).unwrap(), Definiteness::NegativeSemidefinite);
    }
}
