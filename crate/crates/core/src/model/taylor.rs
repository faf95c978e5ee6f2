//! Scalars that stay exact while the computation is rational, and
//! second-order truncated Taylor series over them.

use num_traits::{One, Signed, Zero};

use crate::kernel::rational::{to_f64, Rational};

const ULP: f64 = f64::EPSILON;

/// Exact rational, or a binary float with an absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(Rational),
    Approx { value: f64, err: f64 },
}

impl Scalar {
    pub fn exact(x: Rational) -> Self {
        Scalar::Exact(x)
    }

    pub fn zero() -> Self {
        Scalar::Exact(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(Rational::one())
    }

    pub fn value(&self) -> f64 {
        match self {
            Scalar::Exact(x) => to_f64(x),
            Scalar::Approx { value, .. } => *value,
        }
    }

    /// Absolute error bound of [`Scalar::value`].
    pub fn err(&self) -> f64 {
        match self {
            Scalar::Exact(x) => to_f64(x).abs() * ULP,
            Scalar::Approx { err, .. } => *err,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Scalar::Exact(x) => Some(x),
            Scalar::Approx { .. } => None,
        }
    }

    fn approx(value: f64, err: f64) -> Self {
        Scalar::Approx {
            value,
            err: err + value.abs() * ULP,
        }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => Scalar::approx(self.value() + o.value(), self.err() + o.err()),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Approx { value, err } => Scalar::Approx {
                value: -value,
                err: *err,
            },
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            (Scalar::Exact(a), _) | (_, Scalar::Exact(a)) if a.is_zero() => Scalar::zero(),
            _ => {
                let (a, ea, b, eb) = (self.value(), self.err(), o.value(), o.err());
                Scalar::approx(a * b, a.abs() * eb + b.abs() * ea + ea * eb)
            }
        }
    }

    pub fn scale(&self, s: &Rational) -> Scalar {
        self.mul(&Scalar::Exact(s.clone()))
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self, Scalar::Exact(x) if x.is_zero())
    }

    /// `f(self)` for `f ∈ {sin, cos, exp}` with the values of `f` and a bound
    /// on `|f'|` over the error interval.
    fn transcendental(&self, f: fn(f64) -> f64, dmax: impl Fn(f64, f64) -> f64, at_zero: i64) -> Scalar {
        if self.is_exact_zero() {
            return Scalar::Exact(Rational::from_integer(at_zero.into()));
        }
        let (v, e) = (self.value(), self.err());
        Scalar::approx(f(v), dmax(v, e) * e + 2.0 * ULP)
    }

    pub fn sin(&self) -> Scalar {
        self.transcendental(f64::sin, |_, _| 1.0, 0)
    }

    pub fn cos(&self) -> Scalar {
        self.transcendental(f64::cos, |_, _| 1.0, 1)
    }

    pub fn exp(&self) -> Scalar {
        self.transcendental(f64::exp, |v, e| (v + e).exp(), 1)
    }

    /// Sign when it is certain: `Some(1)`, `Some(-1)`, `Some(0)` (exact zero).
    pub fn certain_sign(&self) -> Option<i8> {
        match self {
            Scalar::Exact(x) => Some(if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            }),
            Scalar::Approx { value, err } => {
                if *value > *err {
                    Some(1)
                } else if *value < -*err {
                    Some(-1)
                } else {
                    None
                }
            }
        }
    }
}

/// `c0 + c1 t + c2 t²`, truncated.
#[derive(Clone, Debug, PartialEq)]
pub struct Taylor(pub [Scalar; 3]);

impl Taylor {
    pub fn constant(c: Scalar) -> Self {
        Taylor([c, Scalar::zero(), Scalar::zero()])
    }

    pub fn variable(x: Scalar, dx: Scalar) -> Self {
        Taylor([x, dx, Scalar::zero()])
    }

    pub fn add(&self, o: &Taylor) -> Taylor {
        Taylor([self.0[0].add(&o.0[0]), self.0[1].add(&o.0[1]), self.0[2].add(&o.0[2])])
    }

    pub fn neg(&self) -> Taylor {
        Taylor([self.0[0].neg(), self.0[1].neg(), self.0[2].neg()])
    }

    pub fn sub(&self, o: &Taylor) -> Taylor {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Taylor) -> Taylor {
        let [a0, a1, a2] = &self.0;
        let [b0, b1, b2] = &o.0;
        Taylor([
            a0.mul(b0),
            a0.mul(b1).add(&a1.mul(b0)),
            a0.mul(b2).add(&a1.mul(b1)).add(&a2.mul(b0)),
        ])
    }

    pub fn scale(&self, s: &Rational) -> Taylor {
        Taylor([self.0[0].scale(s), self.0[1].scale(s), self.0[2].scale(s)])
    }

    pub fn powi(&self, k: u32) -> Taylor {
        let mut out = Taylor::constant(Scalar::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn half_sq(a1: &Scalar) -> Scalar {
        a1.mul(a1).scale(&Rational::new(1.into(), 2.into()))
    }

    pub fn sin(&self) -> Taylor {
        let [a0, a1, a2] = &self.0;
        let (s, c) = (a0.sin(), a0.cos());
        Taylor([s.clone(), c.mul(a1), c.mul(a2).sub(&s.mul(&Self::half_sq(a1)))])
    }

    pub fn cos(&self) -> Taylor {
        let [a0, a1, a2] = &self.0;
        let (s, c) = (a0.sin(), a0.cos());
        Taylor([c.clone(), s.mul(a1).neg(), s.mul(a2).neg().sub(&c.mul(&Self::half_sq(a1)))])
    }

    pub fn exp(&self) -> Taylor {
        let [a0, a1, a2] = &self.0;
        let e = a0.exp();
        Taylor([e.clone(), e.mul(a1), e.mul(&a2.add(&Self::half_sq(a1)))])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::q;

    #[test]
    fn exact_at_zero() {
        let x = Taylor::variable(Scalar::zero(), Scalar::one());
        let s = x.sin();
        assert_eq!(s.0[0], Scalar::zero());
        assert_eq!(s.0[1], Scalar::one());
        assert_eq!(s.0[2], Scalar::zero());
        let c = x.cos();
        assert_eq!(c.0[2], Scalar::Exact(crate::kernel::rational::qf(-1, 2)));
        let e = x.exp();
        assert_eq!(e.0[2], Scalar::Exact(crate::kernel::rational::qf(1, 2)));
    }

    #[test]
    fn approx_tracks_error() {
        let x = Taylor::variable(Scalar::Exact(q(1)), Scalar::one());
        let s = x.sin();
        assert!((s.0[0].value() - 1f64.sin()).abs() <= s.0[0].err());
        assert!((s.0[1].value() - 1f64.cos()).abs() <= s.0[1].err());
        assert!(s.0[1].as_exact().is_none());
    }
}
