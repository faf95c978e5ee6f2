//! Constraint maps `F: ℝⁿ → ℝᵈ` with derivative oracles.

use num_traits::{One, Zero};

use super::expr::Expr;
use super::poly::Poly;
use super::taylor::Scalar;
use crate::error::{Error, Result};
use crate::kernel::rational::{q, QMat, QVec, Rational};

/// Highest derivative order available on the expression path.
pub const EXPRESSION_ORDER_CAP: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub enum MapBody {
    Polynomial(Vec<Poly>),
    Expression(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothMap {
    pub n: usize,
    pub d: usize,
    pub body: MapBody,
}

impl SmoothMap {
    pub fn polynomial(n: usize, components: Vec<Poly>) -> Self {
        assert!(components.iter().all(|p| p.nvars == n));
        SmoothMap {
            n,
            d: components.len(),
            body: MapBody::Polynomial(components),
        }
    }

    /// Parses one expression per component. When every component lowers to
    /// a polynomial the polynomial body is used.
    pub fn parse(n: usize, components: &[&str]) -> Result<Self> {
        let exprs = components.iter().map(|s| Expr::parse(s)).collect::<Result<Vec<_>>>()?;
        SmoothMap::from_exprs(n, exprs)
    }

    pub fn from_exprs(n: usize, exprs: Vec<Expr>) -> Result<Self> {
        if let Some(e) = exprs.iter().find(|e| e.arity() > n) {
            return Err(Error::Dimension(format!("`{e}` uses x{} but n = {n}", e.arity())));
        }
        let polys: Option<Vec<Poly>> = exprs.iter().map(|e| e.to_poly(n)).collect();
        Ok(match polys {
            Some(p) => SmoothMap::polynomial(n, p),
            None => SmoothMap {
                n,
                d: exprs.len(),
                body: MapBody::Expression(exprs),
            },
        })
    }

    pub fn polys(&self) -> Option<&[Poly]> {
        match &self.body {
            MapBody::Polynomial(p) => Some(p),
            MapBody::Expression(_) => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.polys().is_some()
    }

    /// Polynomial degree, `None` on the expression path.
    pub fn degree(&self) -> Option<u32> {
        self.polys().map(|p| p.iter().map(Poly::degree).max().unwrap_or(0))
    }

    pub fn is_affine(&self) -> bool {
        self.degree().is_some_and(|m| m <= 1)
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x != self.n {
            return Err(Error::Dimension(format!("point has {x} coordinates, map expects {}", self.n)));
        }
        Ok(())
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        match &self.body {
            MapBody::Polynomial(p) => p.iter().map(|c| c.eval_f64(x)).collect(),
            MapBody::Expression(e) => e.iter().map(|c| c.eval_f64(x)).collect(),
        }
    }

    /// Values with exactness tracking.
    pub fn eval_scalar(&self, x: &[Rational]) -> Vec<Scalar> {
        match &self.body {
            MapBody::Polynomial(p) => p.iter().map(|c| Scalar::Exact(c.eval(x))).collect(),
            MapBody::Expression(e) => {
                let xs = exact(x);
                let zero = vec![Scalar::zero(); self.n];
                e.iter().map(|c| c.eval_taylor(&xs, &zero).0[0].clone()).collect()
            }
        }
    }

    pub fn eval_exact(&self, x: &[Rational]) -> Result<QVec> {
        self.check_point(x.len())?;
        require_exact(self.eval_scalar(x), "F(x)")
    }

    /// `(c1, c2)` of `t ↦ F_i(x + t v)` per component.
    fn directional(&self, x: &[Rational], v: &[Rational]) -> Vec<(Scalar, Scalar)> {
        match &self.body {
            MapBody::Polynomial(p) => p
                .iter()
                .map(|c| {
                    let coeffs = c.along_curve(x, v, &vec![1; self.n]);
                    let at = |k: usize| Scalar::Exact(coeffs.get(k).cloned().unwrap_or_else(Rational::zero));
                    (at(1), at(2))
                })
                .collect(),
            MapBody::Expression(e) => {
                let (xs, vs) = (exact(x), exact(v));
                e.iter()
                    .map(|c| {
                        let t = c.eval_taylor(&xs, &vs);
                        (t.0[1].clone(), t.0[2].clone())
                    })
                    .collect()
            }
        }
    }

    /// `∇F(x)`, one row per component.
    pub fn jacobian_scalar(&self, x: &[Rational]) -> Vec<Vec<Scalar>> {
        let cols: Vec<Vec<(Scalar, Scalar)>> = (0..self.n)
            .map(|j| self.directional(x, &crate::kernel::rational::unit(self.n, j)))
            .collect();
        (0..self.d).map(|i| (0..self.n).map(|j| cols[j][i].0.clone()).collect()).collect()
    }

    pub fn jacobian(&self, x: &[Rational]) -> Result<QMat> {
        self.check_point(x.len())?;
        self.jacobian_scalar(x)
            .into_iter()
            .map(|row| require_exact(row, "∇F(x)"))
            .collect()
    }

    /// `∇²⟨λ, F⟩(x)` by polarization of second directional derivatives.
    pub fn hessian_scalar(&self, lambda: &[Rational], x: &[Rational]) -> Vec<Vec<Scalar>> {
        let n = self.n;
        let s = |v: &[Rational]| -> Scalar {
            self.directional(x, v)
                .iter()
                .zip(lambda)
                .fold(Scalar::zero(), |acc, ((_, c2), l)| acc.add(&c2.scale(l)))
                .scale(&q(2))
        };
        let unit = |i: usize| crate::kernel::rational::unit(n, i);
        let diag: Vec<Scalar> = (0..n).map(|i| s(&unit(i))).collect();
        let half = Rational::new(1.into(), 2.into());
        let mut h = vec![vec![Scalar::zero(); n]; n];
        for i in 0..n {
            h[i][i] = diag[i].clone();
            for j in i + 1..n {
                let mut e = unit(i);
                e[j] = Rational::one();
                let v = s(&e).sub(&diag[i]).sub(&diag[j]).scale(&half);
                h[i][j] = v.clone();
                h[j][i] = v;
            }
        }
        h
    }

    pub fn hessian_scalarized(&self, lambda: &[Rational], x: &[Rational]) -> Result<QMat> {
        self.check_point(x.len())?;
        if let Some(l) = self.lagrangian(lambda) {
            let n = self.n;
            return Ok((0..n)
                .map(|i| {
                    let di = l.derivative(i);
                    (0..n).map(|j| di.derivative(j).eval(x)).collect()
                })
                .collect());
        }
        self.hessian_scalar(lambda, x)
            .into_iter()
            .map(|row| require_exact(row, "∇²⟨λ,F⟩(x)"))
            .collect()
    }

    /// `Dᵅ⟨λ, F⟩(x)`.
    pub fn higher_partial(&self, lambda: &[Rational], alpha: &[u32], x: &[Rational]) -> Result<Rational> {
        self.check_point(x.len())?;
        let order: u32 = alpha.iter().sum();
        match self.lagrangian(lambda) {
            Some(mut l) => {
                for (i, &k) in alpha.iter().enumerate() {
                    for _ in 0..k {
                        l = l.derivative(i);
                    }
                }
                Ok(l.eval(x))
            }
            None if order as usize > EXPRESSION_ORDER_CAP => Err(Error::OrderCap {
                order: order as usize,
                cap: EXPRESSION_ORDER_CAP,
            }),
            None => {
                let nz: Vec<usize> = (0..self.n).filter(|&i| alpha[i] > 0).collect();
                match (order, nz.as_slice()) {
                    (0, _) => {
                        let f = self.eval_exact(x)?;
                        Ok(f.iter().zip(lambda).map(|(a, b)| a * b).sum())
                    }
                    (1, [i]) => {
                        let jac = self.jacobian(x)?;
                        Ok((0..self.d).map(|r| &jac[r][*i] * &lambda[r]).sum())
                    }
                    (_, [i]) => Ok(self.hessian_scalarized(lambda, x)?[*i][*i].clone()),
                    (_, [i, j]) => Ok(self.hessian_scalarized(lambda, x)?[*i][*j].clone()),
                    _ => unreachable!("order ≤ 2 touches at most two variables"),
                }
            }
        }
    }

    /// `⟨λ, F⟩` on the polynomial path.
    pub fn lagrangian(&self, lambda: &[Rational]) -> Option<Poly> {
        let polys = self.polys()?;
        Some(
            polys
                .iter()
                .zip(lambda)
                .fold(Poly::zero(self.n), |acc, (p, l)| acc.add(&p.scale(l))),
        )
    }

    /// Components `lo..hi` as a map of their own.
    pub fn components(&self, lo: usize, hi: usize) -> SmoothMap {
        let body = match &self.body {
            MapBody::Polynomial(p) => MapBody::Polynomial(p[lo..hi].to_vec()),
            MapBody::Expression(e) => MapBody::Expression(e[lo..hi].to_vec()),
        };
        SmoothMap { n: self.n, d: hi - lo, body }
    }

    /// Printable component sources.
    pub fn sources(&self) -> Vec<String> {
        match &self.body {
            MapBody::Polynomial(p) => p.iter().map(super::poly::Poly::to_string).collect(),
            MapBody::Expression(e) => e.iter().map(Expr::to_string).collect(),
        }
    }
}

fn exact(x: &[Rational]) -> Vec<Scalar> {
    x.iter().cloned().map(Scalar::Exact).collect()
}

fn require_exact(v: Vec<Scalar>, what: &str) -> Result<QVec> {
    v.into_iter()
        .map(|s| match s {
            Scalar::Exact(x) => Ok(x),
            Scalar::Approx { value, err } => Err(Error::Inexact(format!("{what} ≈ {value} ± {err:.1e}"))),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{qf, qvec};

    #[test]
    fn example_jacobians() {
        let f = SmoothMap::parse(1, &["x", "-x^2"]).unwrap();
        assert!(f.is_polynomial());
        assert_eq!(f.jacobian(&qvec(&[0])).unwrap(), vec![qvec(&[1]), qvec(&[0])]);
        let f = SmoothMap::parse(1, &["x1", "sin(x1)"]).unwrap();
        assert!(!f.is_polynomial());
        assert_eq!(f.jacobian(&qvec(&[0])).unwrap(), vec![qvec(&[1]), qvec(&[1])]);
        assert_eq!(f.hessian_scalarized(&qvec(&[1, -1]), &qvec(&[0])).unwrap(), vec![qvec(&[0])]);
        assert!(matches!(f.jacobian(&qvec(&[1])), Err(Error::Inexact(_))));
    }

    #[test]
    fn parametric_hessian_and_partials() {
        let f = SmoothMap::parse(2, &["x1", "x2", "3*x1^2 - x1^4 + 5*x2^2 + 7*x2^4"]).unwrap();
        let h = f.hessian_scalarized(&qvec(&[0, 0, 2]), &qvec(&[0, 0])).unwrap();
        assert_eq!(h, vec![qvec(&[12, 0]), qvec(&[0, 20])]);
        let d4 = f.higher_partial(&qvec(&[0, 0, 1]), &[4, 0], &qvec(&[0, 0])).unwrap();
        assert_eq!(d4, q(-24));
    }

    #[test]
    fn expression_order_cap_and_agreement() {
        let e = SmoothMap::parse(2, &["exp(x1) * x2", "cos(x1 * x2)"]).unwrap();
        assert_eq!(
            e.higher_partial(&qvec(&[1, 0]), &[2, 1], &qvec(&[0, 0])),
            Err(Error::OrderCap { order: 3, cap: 2 })
        );
        // mixed second derivative of exp(x1) x2 at 0 is 1
        assert_eq!(e.higher_partial(&qvec(&[1, 0]), &[1, 1], &qvec(&[0, 0])).unwrap(), q(1));
        let poly = SmoothMap::parse(2, &["x1^3 - x1*x2/2"]).unwrap();
        let expr = SmoothMap {
            n: 2,
            d: 1,
            body: MapBody::Expression(vec![Expr::parse("x1^3 - x1*x2/2").unwrap()]),
        };
        let x = vec![qf(1, 3), qf(-2, 5)];
        assert_eq!(poly.eval_exact(&x).unwrap(), expr.eval_exact(&x).unwrap());
        assert_eq!(poly.jacobian(&x).unwrap(), expr.jacobian(&x).unwrap());
        assert_eq!(
            poly.hessian_scalarized(&qvec(&[1]), &x).unwrap(),
            expr.hessian_scalarized(&qvec(&[1]), &x).unwrap()
        );
    }
}
