//! Sign decisions for homogeneous polynomial forms.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{nonpositive_on_line, UniPoly};
use super::quadratic::{nsd_on_subspace, Definiteness};
use super::rational::{q, qf, unit, QMat, QVec, Rational};

/// Exponent vector of a monomial.
pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousForm {
    pub nvars: usize,
    pub degree: u32,
    pub coeffs: BTreeMap<Exponent, Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignDecision {
    AlwaysNonpositive,
    AlwaysNegativeOffOrigin,
    Violated(QVec),
    Undecided,
}

impl SignDecision {
    pub fn is_nonpositive(&self) -> bool {
        matches!(self, SignDecision::AlwaysNonpositive | SignDecision::AlwaysNegativeOffOrigin)
    }
}

impl HomogeneousForm {
    pub fn new(nvars: usize, degree: u32, coeffs: BTreeMap<Exponent, Rational>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .filter(|(e, c)| {
                debug_assert_eq!(e.iter().sum::<u32>(), degree);
                !c.is_zero()
            })
            .collect();
        HomogeneousForm { nvars, degree, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, w: &[Rational]) -> Rational {
        self.coeffs.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (x, &k) in w.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc + t
        })
    }

    fn coeff(&self, e: &[u32]) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Symmetric matrix of a quadratic form.
    pub fn quadratic_matrix(&self) -> QMat {
        let n = self.nvars;
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (e, c) in &self.coeffs {
            let idx: Vec<usize> = (0..n).filter(|&i| e[i] > 0).collect();
            match idx.as_slice() {
                [i] => m[*i][*i] = c.clone(),
                [i, j] => {
                    m[*i][*j] = c / q(2);
                    m[*j][*i] = c / q(2);
                }
                _ => unreachable!("degree-2 monomial"),
            }
        }
        m
    }
}

/// Decides whether `p(w) ≤ 0` for all `w` (and, with `strict`, whether
/// `p(w) < 0` off the origin).
///
/// Odd degree and degree two are decided exactly, as is any even degree in
/// at most two variables. Beyond that a sum of even monomials with
/// nonpositive coefficients is recognized, and otherwise a seeded random
/// search looks for a positive value.
pub fn homogeneous_sign_decide(p: &HomogeneousForm, strict: bool, seed: u64) -> SignDecision {
    let n = p.nvars;
    if p.is_zero() {
        return SignDecision::AlwaysNonpositive;
    }
    if p.degree % 2 == 1 {
        return SignDecision::Violated(positive_point_odd(p));
    }
    if p.degree == 2 {
        let basis: QMat = (0..n).map(|i| unit(n, i)).collect();
        return match nsd_on_subspace(&p.quadratic_matrix(), &basis).expect("identity basis") {
            Definiteness::NegativeDefinite => SignDecision::AlwaysNegativeOffOrigin,
            Definiteness::NegativeSemidefinite => SignDecision::AlwaysNonpositive,
            Definiteness::Indefinite(w) => SignDecision::Violated(w),
        };
    }
    match n {
        1 => {
            let c = p.coeff(&[p.degree]);
            return if c.is_positive() {
                SignDecision::Violated(vec![Rational::one()])
            } else {
                SignDecision::AlwaysNegativeOffOrigin
            };
        }
        2 => return decide_binary(p),
        _ => {}
    }
    let all_even_nonpositive = p
        .coeffs
        .iter()
        .all(|(e, c)| !c.is_positive() && e.iter().all(|k| k % 2 == 0));
    if all_even_nonpositive {
        let pure_negative = (0..n).all(|i| {
            let mut e = vec![0; n];
            e[i] = p.degree;
            p.coeff(&e).is_negative()
        });
        return if pure_negative {
            SignDecision::AlwaysNegativeOffOrigin
        } else if strict {
            SignDecision::Undecided
        } else {
            SignDecision::AlwaysNonpositive
        };
    }
    match falsify(p, seed, 4096) {
        Some(w) => SignDecision::Violated(w),
        None => SignDecision::Undecided,
    }
}

/// For a nonzero odd form some point of `{0..q}ⁿ` gives a nonzero value; the
/// sign is flipped if needed.
fn positive_point_odd(p: &HomogeneousForm) -> QVec {
    let n = p.nvars;
    let qd = p.degree;
    let mut idx = vec![0u32; n];
    loop {
        let w: QVec = idx.iter().map(|&k| q(k as i64)).collect();
        let v = p.eval(&w);
        if v.is_positive() {
            return w;
        }
        if v.is_negative() {
            return w.iter().map(|x| -x).collect();
        }
        let mut i = 0;
        while i < n {
            idx[i] += 1;
            if idx[i] <= qd {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        assert!(i < n, "nonzero polynomial vanishes on the whole grid");
    }
}

/// Two variables, even degree: `p(w1, w2) = w2^q · g(w1/w2)` on the chart
/// `w2 ≠ 0` plus the single direction `w2 = 0`.
fn decide_binary(p: &HomogeneousForm) -> SignDecision {
    let qd = p.degree;
    let g = UniPoly::new(
        (0..=qd)
            .map(|k| p.coeff(&[k, qd - k]))
            .collect(),
    );
    let top = p.coeff(&[qd, 0]);
    if top.is_positive() {
        return SignDecision::Violated(vec![Rational::one(), Rational::zero()]);
    }
    let (nonpos, no_root, witness) = nonpositive_on_line(&g);
    if !nonpos {
        return SignDecision::Violated(vec![witness.expect("witness"), Rational::one()]);
    }
    if no_root && top.is_negative() {
        SignDecision::AlwaysNegativeOffOrigin
    } else {
        SignDecision::AlwaysNonpositive
    }
}

fn falsify(p: &HomogeneousForm, seed: u64, tries: usize) -> Option<QVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tries {
        let w: QVec = (0..p.nvars)
            .map(|_| qf(rng.gen_range(-16..=16), rng.gen_range(1..=4)))
            .collect();
        if p.eval(&w).is_positive() {
            return Some(w);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(n: usize, deg: u32, terms: &[(&[u32], i64)]) -> HomogeneousForm {
        HomogeneousForm::new(
            n,
            deg,
            terms.iter().map(|(e, c)| (e.to_vec(), q(*c))).collect(),
        )
    }

    #[test]
    fn documented_cases() {
        let p = form(2, 4, &[(&[4, 0], -1), (&[0, 4], -1)]);
        assert_eq!(homogeneous_sign_decide(&p, true, 0), SignDecision::AlwaysNegativeOffOrigin);
        let p = form(2, 2, &[(&[1, 1], 1)]);
        match homogeneous_sign_decide(&p, false, 0) {
            SignDecision::Violated(w) => assert!(p.eval(&w).is_positive()),
            other => panic!("{other:?}"),
        }
        let p = form(2, 4, &[(&[4, 0], -1), (&[2, 2], 0), (&[0, 4], -1)]);
        assert!(homogeneous_sign_decide(&p, false, 0).is_nonpositive());
    }

    #[test]
    fn odd_and_degenerate() {
        let p = form(3, 3, &[(&[1, 1, 1], -2)]);
        match homogeneous_sign_decide(&p, false, 0) {
            SignDecision::Violated(w) => assert!(p.eval(&w).is_positive()),
            other => panic!("{other:?}"),
        }
        let p = form(2, 4, &[(&[0, 4], -3)]);
        assert_eq!(homogeneous_sign_decide(&p, true, 0), SignDecision::AlwaysNonpositive);
        // -(w1^2 - w2^2)^2 vanishes on the diagonals
        let p = form(2, 4, &[(&[4, 0], -1), (&[2, 2], 2), (&[0, 4], -1)]);
        assert_eq!(homogeneous_sign_decide(&p, true, 0), SignDecision::AlwaysNonpositive);
        // w1^2 w2^2 - w1^4 - w2^4 is negative definite
        let p = form(2, 4, &[(&[4, 0], -1), (&[2, 2], 1), (&[0, 4], -1)]);
        assert_eq!(homogeneous_sign_decide(&p, true, 0), SignDecision::AlwaysNegativeOffOrigin);
    }

    #[test]
    fn three_variable_quartic() {
        let p = form(3, 4, &[(&[4, 0, 0], -1), (&[0, 4, 0], -1), (&[0, 0, 4], -2), (&[2, 2, 0], -1)]);
        assert_eq!(homogeneous_sign_decide(&p, true, 0), SignDecision::AlwaysNegativeOffOrigin);
        let p = form(3, 4, &[(&[4, 0, 0], -1), (&[1, 1, 2], 5)]);
        match homogeneous_sign_decide(&p, false, 7) {
            SignDecision::Violated(w) => assert!(p.eval(&w).is_positive()),
            other => panic!("{other:?}"),
        }
    }
}
