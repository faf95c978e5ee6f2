//! Rational scalars and dense rational vectors/matrices.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number in canonical form (gcd 1, positive denominator).
pub type Rational = BigRational;

/// Dense rational vector.
pub type QVec = Vec<Rational>;

/// Dense row-major rational matrix.
pub type QMat = Vec<QVec>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| q(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(s: &Rational, v: &[Rational]) -> QVec {
    v.iter().map(|x| s * x).collect()
}

pub fn neg(v: &[Rational]) -> QVec {
    v.iter().map(|x| -x).collect()
}

/// `a + s * b`
pub fn axpy(a: &[Rational], s: &Rational, b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn mat_vec(m: &[QVec], v: &[Rational]) -> QVec {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn transpose(m: &[QVec], cols: usize) -> QMat {
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Scales a nonzero vector to the primitive integer vector with the same
/// direction (coprime integer entries). The zero vector is returned unchanged.
pub fn primitive(v: &[Rational]) -> QVec {
    if is_zero_vec(v) {
        return v.to_vec();
    }
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}

/// Primitive form with the first nonzero entry made positive; identifies a
/// line (or hyperplane normal) up to nonzero scaling.
pub fn primitive_unsigned(v: &[Rational]) -> QVec {
    let p = primitive(v);
    match p.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => neg(&p),
        _ => p,
    }
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn vec_to_f64(v: &[Rational]) -> Vec<f64> {
    v.iter().map(to_f64).collect()
}

/// Exact conversion of a finite binary float to a rational.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| format!("bad numerator in {s:?}"))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| format!("bad decimal {s:?}"))?
        };
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(format!("bad decimal {s:?}"));
        }
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part = BigInt::from_str(frac).map_err(|_| format!("bad decimal {s:?}"))?;
        let magnitude = Rational::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| format!("bad rational {s:?}"))
}

/// `"p/q"` or `"p"` when the denominator is one.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub struct DisplayVec<'a>(pub &'a [Rational]);

impl fmt::Display for DisplayVec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(x))?;
        }
        write!(f, ")")
    }
}

pub fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(x))
}

pub fn ser_qvec<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_rational))
}

pub fn ser_qmat<S: serde::Serializer>(m: &[QVec], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()))
}

pub fn ser_opt_qvec<S: serde::Serializer>(v: &Option<QVec>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => ser_qvec(v, s),
        None => s.serialize_none(),
    }
}

fn de_str<'de, D: serde::Deserializer<'de>>(s: &str) -> Result<Rational, D::Error> {
    parse_rational(s).map_err(serde::de::Error::custom)
}

pub fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = <String as serde::Deserialize>::deserialize(d)?;
    de_str::<D>(&s)
}

pub fn de_qvec<'de, D: serde::Deserializer<'de>>(d: D) -> Result<QVec, D::Error> {
    let v = <Vec<String> as serde::Deserialize>::deserialize(d)?;
    v.iter().map(|s| de_str::<D>(s)).collect()
}

pub fn de_qmat<'de, D: serde::Deserializer<'de>>(d: D) -> Result<QMat, D::Error> {
    let m = <Vec<Vec<String>> as serde::Deserialize>::deserialize(d)?;
    m.iter().map(|r| r.iter().map(|s| de_str::<D>(s)).collect()).collect()
}

pub fn de_opt_qvec<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Option<QVec>, D::Error> {
    let v = <Option<Vec<String>> as serde::Deserialize>::deserialize(d)?;
    v.map(|v| v.iter().map(|s| de_str::<D>(s)).collect()).transpose()
}

/// Reduced row echelon form; returns the nonzero rows and pivot columns.
pub fn rref(rows: &[QVec], cols: usize) -> (QMat, Vec<usize>) {
    let mut m: QMat = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        m[r] = scale(&inv, &m[r]);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                m[i] = axpy(&m[i], &-f, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[QVec], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

/// Basis of `{v : rows · v = 0}`.
pub fn null_space(rows: &[QVec], cols: usize) -> QMat {
    let (m, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zeros(cols);
            v[f] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Solves the square system `a x = b`; `None` when singular.
pub fn solve(a: &[QVec], b: &[Rational]) -> Option<QVec> {
    let n = a.len();
    let aug: QMat = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().any(|&p| p == n) {
        return None;
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        let v = vec![qf(1, 2), qf(-3, 4), q(0)];
        assert_eq!(primitive(&v), qvec(&[2, -3, 0]));
        assert_eq!(primitive_unsigned(&neg(&v)), qvec(&[2, -3, 0]));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), qf(-1, 4));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(fmt_rational(&qf(-2, 4)), "-1/2");
    }

    #[test]
    fn null_space_of_plane() {
        let ns = null_space(&[qvec(&[1, 1, 0])], 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(dot(&qvec(&[1, 1, 0]), v).is_zero());
        }
    }

    #[test]
    fn solve_small() {
        let a = vec![qvec(&[2, 1]), qvec(&[1, 3])];
        let x = solve(&a, &qvec(&[3, 5])).unwrap();
        assert_eq!(x, vec![qf(4, 5), qf(7, 5)]);
        assert!(solve(&[qvec(&[1, 1]), qvec(&[2, 2])], &qvec(&[1, 2])).is_none());
    }
}
