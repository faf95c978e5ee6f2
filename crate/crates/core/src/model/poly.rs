//! Multivariate polynomials with rational coefficients.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::kernel::forms::{Exponent, HomogeneousForm};
use crate::kernel::rational::{q, QVec, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value when the polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Rational) -> Poly {
        Poly::from_terms(self.nvars, self.terms.iter().map(|(e, c)| (e.clone(), c * s)))
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(xi.clone(), k as usize);
                }
            }
            acc + t
        })
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = crate::kernel::rational::to_f64(c);
                for (xi, &k) in x.iter().zip(e) {
                    t *= xi.powi(k as i32);
                }
                t
            })
            .sum()
    }

    /// `p(x̄ + z)` as a polynomial in `z`.
    pub fn shift(&self, xbar: &[Rational]) -> Poly {
        let lin: Vec<Poly> = (0..self.nvars)
            .map(|i| Poly::var(self.nvars, i).add(&Poly::constant(self.nvars, xbar[i].clone())))
            .collect();
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(self.nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&lin[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn coeff(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms of total degree `k`.
    pub fn homogeneous_part(&self, k: u32) -> HomogeneousForm {
        HomogeneousForm::new(
            self.nvars,
            k,
            self.terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == k)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        )
    }

    /// `∂p/∂x_i`
    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(
            self.nvars,
            self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
                let mut e2 = e.clone();
                e2[i] -= 1;
                (e2, c * q(e[i] as i64))
            }),
        )
    }

    /// Univariate restriction `t ↦ p(x̄ + v t^{e})` for per-coordinate
    /// exponents, as coefficients in `t`.
    pub fn along_curve(&self, xbar: &[Rational], v: &[Rational], exps: &[u32]) -> QVec {
        let shifted = self.shift(xbar);
        let mut out: Vec<Rational> = Vec::new();
        for (e, c) in &shifted.terms {
            let mut coef = c.clone();
            let mut power = 0u32;
            for i in 0..self.nvars {
                if e[i] > 0 {
                    coef *= num_traits::pow(v[i].clone(), e[i] as usize);
                    power += e[i] * exps[i];
                }
            }
            let p = power as usize;
            if out.len() <= p {
                out.resize(p + 1, Rational::zero());
            }
            out[p] += coef;
        }
        out
    }
}

impl std::fmt::Display for Poly {
    /// Terms in descending degree, e.g. `3*x1^2 - x2 + 1/2`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use num_traits::Signed;
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exponent, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let (da, db) = (a.0.iter().sum::<u32>(), b.0.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{}", i + 1) } else { format!("x{}^{p}", i + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", crate::kernel::rational::fmt_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", crate::kernel::rational::fmt_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::qvec;

    #[test]
    fn shift_and_parts() {
        // x1^2 + x1 shifted to 1: (z+1)^2 + z + 1 = z^2 + 3z + 2
        let p = Poly::from_terms(1, [(vec![2], q(1)), (vec![1], q(1))]);
        let s = p.shift(&qvec(&[1]));
        assert_eq!(s.coeff(&[0]), q(2));
        assert_eq!(s.coeff(&[1]), q(3));
        assert_eq!(s.coeff(&[2]), q(1));
        assert_eq!(p.derivative(0).eval(&qvec(&[2])), q(5));
        assert_eq!(p.homogeneous_part(2).coeffs.len(), 1);
        assert_eq!(s.to_string(), "x1^2 + 3*x1 + 2");
        let m = Poly::from_terms(2, [(vec![1, 1], crate::kernel::rational::qf(-1, 2)), (vec![0, 0], q(1))]);
        assert_eq!(m.to_string(), "-1/2*x1*x2 + 1");
    }

    #[test]
    fn curve_restriction() {
        // x1 x2 along (t, t^2) -> t^3
        let p = Poly::from_terms(2, [(vec![1, 1], q(1))]);
        let c = p.along_curve(&qvec(&[0, 0]), &qvec(&[1, 1]), &[1, 2]);
        assert_eq!(c, qvec(&[0, 0, 0, 1]));
    }
}
