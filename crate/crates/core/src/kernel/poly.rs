//! Univariate rational polynomials with Sturm-sequence root counting.

use num_traits::{One, Signed, Zero};

use super::rational::{q, Rational};

/// Coefficients from the constant term upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q(k as i64))
                .collect(),
        )
    }

    /// Index and value of the lowest nonzero coefficient.
    pub fn lowest_term(&self) -> Option<(usize, Rational)> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k, c.clone()))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap_or(0);
        let mut r = self.0.clone();
        let mut quo = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        let lead = d.lead();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            quo[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPoly::new(quo), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let l = a.lead();
        UniPoly::new(a.0.iter().map(|c| c / &l).collect())
    }

    /// Square-free part `p / gcd(p, p')`.
    pub fn squarefree(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    pub fn sturm_sequence(&self) -> Vec<UniPoly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            seq.push(UniPoly::new(r.0.iter().map(|c| -c).collect()));
        }
        seq.pop();
        seq
    }

    /// Upper bound on the absolute value of every real root.
    pub fn root_bound(&self) -> Rational {
        let lead = self.lead().abs();
        let m = self
            .0
            .iter()
            .take(self.0.len().saturating_sub(1))
            .map(|c| c.abs() / &lead)
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        m + Rational::one()
    }
}

fn sign_changes(seq: &[UniPoly], t: &Rational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(t);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in `(a, b]` of a square-free polynomial.
pub fn count_roots(seq: &[UniPoly], a: &Rational, b: &Rational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Disjoint intervals `(l, r]`, increasing, each holding exactly one distinct
/// real root of `p`, with `p(l) ≠ 0` and `p(r) ≠ 0`.
pub fn isolate_real_roots(p: &UniPoly) -> Vec<(Rational, Rational)> {
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let sf = p.squarefree();
    let seq = sf.sturm_sequence();
    let bound = sf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((l, r)) = stack.pop() {
        let k = count_roots(&seq, &l, &r);
        if k == 0 {
            continue;
        }
        if k == 1 && !sf.eval(&r).is_zero() && !sf.eval(&l).is_zero() {
            out.push((l, r));
            continue;
        }
        let mut mid = (&l + &r) / q(2);
        let mut w = (&r - &l) / q(7);
        while sf.eval(&mid).is_zero() {
            // nudge off the root; finitely many roots, so this stops
            mid += &w;
            w /= q(2);
        }
        stack.push((l.clone(), mid.clone()));
        stack.push((mid, r));
    }
    out.sort();
    out
}

/// Sample points, one in each open interval between consecutive distinct real
/// roots and one beyond each end.
pub fn gap_samples(p: &UniPoly) -> Vec<Rational> {
    let iv = isolate_real_roots(p);
    if iv.is_empty() {
        return vec![Rational::zero()];
    }
    let mut s = vec![&iv[0].0 - Rational::one()];
    for w in iv.windows(2) {
        s.push(w[0].1.clone());
    }
    s.push(&iv[iv.len() - 1].1 + Rational::one());
    s
}

/// True when `p(t) ≤ 0` for every real `t`; the second flag reports whether
/// `p` has no real root (strictly negative everywhere).
pub fn nonpositive_on_line(p: &UniPoly) -> (bool, bool, Option<Rational>) {
    if p.is_zero() {
        return (true, false, None);
    }
    let roots = isolate_real_roots(p);
    for t in gap_samples(p) {
        if p.eval(&t).is_positive() {
            return (false, false, Some(t));
        }
    }
    (true, roots.is_empty(), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::qvec;

    #[test]
    fn isolates_simple_roots() {
        // (t-1)(t+2)(t-3)
        let p = UniPoly::new(qvec(&[6, -5, -2, 1]));
        let iv = isolate_real_roots(&p);
        assert_eq!(iv.len(), 3);
        for ((l, r), root) in iv.iter().zip([-2, 1, 3]) {
            assert!(*l < q(root) && q(root) <= *r);
        }
    }

    #[test]
    fn double_roots_and_signs() {
        // -(t-1)^2 <= 0 with a root
        let p = UniPoly::new(qvec(&[-1, 2, -1]));
        assert_eq!(nonpositive_on_line(&p), (true, false, None));
        // -t^4 - 1 < 0
        let p = UniPoly::new(qvec(&[-1, 0, 0, 0, -1]));
        assert_eq!(nonpositive_on_line(&p), (true, true, None));
        // t^2 - 1 positive outside
        let p = UniPoly::new(qvec(&[-1, 0, 1]));
        let (ok, _, w) = nonpositive_on_line(&p);
        assert!(!ok && p.eval(&w.unwrap()).is_positive());
    }
}
