//! Search for sequences `xᵏ → x̄` with `⟨λ̄_ν, F_ν(xᵏ) − F_ν(x̄)⟩ > 0` on every
//! block `ν` where `λ̄` is nonzero.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::kernel::poly::{count_roots, UniPoly};
use crate::kernel::rational::{dot, fmt_rational, is_zero_vec, q, ser_opt_qvec, ser_qvec, to_f64, vec_to_f64, QVec, Rational};
use crate::model::{GmpInstance, MultiIndex, Poly};

/// Block value at one sequence point.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Float(v) => *v,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => f.write_str(&fmt_rational(r)),
            Value::Float(v) => write!(f, "{v:e}"),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Exact values print as `p/q`, floats always carry an exponent.
impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s.contains(['e', 'i', 'N']) {
            s.parse().map(Value::Float).map_err(serde::de::Error::custom)
        } else {
            crate::kernel::rational::parse_rational(&s).map(Value::Exact).map_err(serde::de::Error::custom)
        }
    }
}

/// Curve `x(t) = x̄ + Σ t^{p} w` over its terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveTerm {
    pub power: u32,
    #[serde(serialize_with = "ser_qvec", deserialize_with = "crate::kernel::rational::de_qvec")]
    pub vector: QVec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessPoint {
    #[serde(serialize_with = "crate::kernel::rational::ser_rational", deserialize_with = "crate::kernel::rational::de_rational")]
    pub t: Rational,
    #[serde(serialize_with = "ser_qvec", deserialize_with = "crate::kernel::rational::de_qvec")]
    pub x: QVec,
    /// one value per block in the support of `λ̄`
    pub values: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSequence {
    #[serde(serialize_with = "ser_qvec", deserialize_with = "crate::kernel::rational::de_qvec")]
    pub lambda: QVec,
    pub delta: MultiIndex,
    /// blocks of `delta` on which `λ̄` is nonzero
    pub blocks: Vec<usize>,
    #[serde(serialize_with = "ser_opt_qvec", deserialize_with = "crate::kernel::rational::de_opt_qvec", default)]
    pub direction: Option<QVec>,
    pub curve: Vec<CurveTerm>,
    pub points: Vec<WitnessPoint>,
    /// values certified in exact arithmetic on the whole of `(0, t₀]`
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessConfig {
    /// maximal number of candidate curves tried
    pub budget: usize,
    /// number of printed sequence terms
    pub terms: usize,
    /// the float path requires every block value to exceed this
    pub margin: f64,
    /// finest step `t = 2⁻ʲ` tried
    pub max_level: u32,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        WitnessConfig { budget: 4096, terms: 3, margin: 1e-9, max_level: 24 }
    }
}

fn two_pow_neg(j: u32) -> Rational {
    Rational::new(One::one(), num_bigint::BigInt::one() << j as usize)
}

/// Primitive integer directions with entries in `{-2, …, 2}` for `n ≤ 3`,
/// otherwise `±eᵢ` and `±eᵢ ± eⱼ`, shortest first.
pub fn search_directions(n: usize) -> Vec<QVec> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    if n <= 3 {
        let mut idx = vec![-2i64; n];
        loop {
            let g = idx.iter().fold(0i64, |g, &a| num_integer::gcd(g, a));
            if g == 1 {
                out.push(idx.clone());
            }
            let mut j = 0;
            while j < n {
                idx[j] += 1;
                if idx[j] <= 2 {
                    break;
                }
                idx[j] = -2;
                j += 1;
            }
            if j == n {
                break;
            }
        }
    } else {
        for i in 0..n {
            for s in [1, -1] {
                let mut v = vec![0; n];
                v[i] = s;
                out.push(v);
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let mut v = vec![0; n];
                    v[i] = a;
                    v[j] = b;
                    out.push(v);
                }
            }
        }
    }
    let key = |v: &Vec<i64>| (v.iter().map(|a| a.abs()).sum::<i64>(), v.iter().map(|a| -a).collect::<Vec<_>>());
    out.sort_by_key(key);
    out.into_iter().map(|v| v.into_iter().map(q).collect()).collect()
}

/// Candidate curves, in search order. With a direction `u`, only curves
/// whose leading terms add up to a positive multiple of `u` are kept.
fn candidate_curves(n: usize, u: Option<&[Rational]>, budget: usize) -> Vec<Vec<CurveTerm>> {
    let dirs = search_directions(n);
    let mut out: Vec<Vec<CurveTerm>> = Vec::new();
    let push = |c: Vec<CurveTerm>, out: &mut Vec<Vec<CurveTerm>>| {
        if out.len() < budget && !out.contains(&c) {
            out.push(c);
        }
    };
    match u {
        Some(u) => {
            push(vec![CurveTerm { power: 1, vector: u.to_vec() }], &mut out);
            for p in [2, 3] {
                for w in &dirs {
                    push(vec![CurveTerm { power: 1, vector: u.to_vec() }, CurveTerm { power: p, vector: w.clone() }], &mut out);
                }
            }
            // per-coordinate powers: coordinates of u share the lowest power
            for e in exponent_tuples(n) {
                for w in &dirs {
                    let c = coordinate_curve(w, &e);
                    if leading_direction(&c).is_some_and(|l| positive_multiple(&l, u)) {
                        push(c, &mut out);
                    }
                }
            }
        }
        None => {
            for w in &dirs {
                push(vec![CurveTerm { power: 1, vector: w.clone() }], &mut out);
            }
            for e in exponent_tuples(n) {
                for w in &dirs {
                    push(coordinate_curve(w, &e), &mut out);
                }
            }
            for v in &dirs {
                for w in &dirs {
                    push(vec![CurveTerm { power: 1, vector: v.clone() }, CurveTerm { power: 2, vector: w.clone() }], &mut out);
                }
            }
        }
    }
    out
}

fn exponent_tuples(n: usize) -> Vec<Vec<u32>> {
    if n > 3 {
        return vec![];
    }
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<u32>| (1..=3).map(move |e| [p.clone(), vec![e]].concat()))
            .collect();
    }
    out.retain(|e| e.iter().any(|&x| x == 1));
    out
}

/// `xᵢ = x̄ᵢ + wᵢ t^{eᵢ}` as grouped curve terms.
fn coordinate_curve(w: &[Rational], e: &[u32]) -> Vec<CurveTerm> {
    let mut terms: Vec<CurveTerm> = Vec::new();
    for p in 1..=3 {
        let v: QVec = w.iter().zip(e).map(|(a, &k)| if k == p { a.clone() } else { Rational::zero() }).collect();
        if !is_zero_vec(&v) {
            terms.push(CurveTerm { power: p, vector: v });
        }
    }
    terms
}

fn leading_direction(c: &[CurveTerm]) -> Option<QVec> {
    c.iter().filter(|t| !is_zero_vec(&t.vector)).min_by_key(|t| t.power).map(|t| t.vector.clone())
}

fn positive_multiple(a: &[Rational], b: &[Rational]) -> bool {
    let ab = dot(a, b);
    ab.is_positive() && &ab * &ab == dot(a, a) * dot(b, b)
}

/// `p(x̄ + Σ t^{p} w)` as coefficients in `t`.
fn poly_along(p: &Poly, xbar: &[Rational], curve: &[CurveTerm]) -> UniPoly {
    let coords: Vec<Poly> = (0..p.nvars)
        .map(|i| {
            let mut c = Poly::constant(1, xbar[i].clone());
            for term in curve {
                if !term.vector[i].is_zero() {
                    c.add_term(vec![term.power], term.vector[i].clone());
                }
            }
            c
        })
        .collect();
    let mut acc = Poly::zero(1);
    for (e, c) in &p.terms {
        let mut m = Poly::constant(1, c.clone());
        for (i, &k) in e.iter().enumerate() {
            if k > 0 {
                m = m.mul(&coords[i].pow(k));
            }
        }
        acc = acc.add(&m);
    }
    let deg = acc.degree() as usize;
    UniPoly::new((0..=deg).map(|k| acc.coeff(&[k as u32])).collect())
}

fn curve_point(xbar: &[Rational], curve: &[CurveTerm], t: &Rational) -> QVec {
    let mut x = xbar.to_vec();
    for term in curve {
        let tp = num_traits::pow(t.clone(), term.power as usize);
        for (xi, wi) in x.iter_mut().zip(&term.vector) {
            *xi += wi * &tp;
        }
    }
    x
}

/// Block functions `g_ν(x) = Σ_{i∈ν} λ̄ᵢ Fᵢ(x)`.
fn block_lambdas(lambda: &[Rational], delta: &MultiIndex) -> (Vec<usize>, Vec<QVec>) {
    let blocks = delta.blocks();
    let support = delta.support(lambda);
    let lams = support
        .iter()
        .map(|&k| {
            let mut l = vec![Rational::zero(); lambda.len()];
            for i in blocks[k].clone() {
                l[i] = lambda[i].clone();
            }
            l
        })
        .collect();
    (support, lams)
}

/// Exact path: every `g_ν(x(t)) − g_ν(x̄)` is `t^k h(t)` with `h(0) > 0` and
/// no root of `h` in `(0, t₀]`.
fn try_exact(gs: &[Poly], xbar: &[Rational], curve: &[CurveTerm], cfg: &WitnessConfig) -> Option<Rational> {
    let mut hs = Vec::new();
    for g in gs {
        let mut c = poly_along(g, xbar, curve).0;
        if c.is_empty() {
            return None;
        }
        c[0] = Rational::zero();
        let h = UniPoly::new(c);
        let (k, lead) = h.lowest_term()?;
        if !lead.is_positive() {
            return None;
        }
        hs.push(UniPoly::new(h.0[k..].to_vec()));
    }
    let seqs: Vec<Vec<UniPoly>> = hs.iter().map(|h| h.squarefree().sturm_sequence()).collect();
    (1..=cfg.max_level).map(two_pow_neg).find(|t0| {
        hs.iter().zip(&seqs).all(|(h, s)| h.eval(t0).is_positive() && count_roots(s, &Rational::zero(), t0) == 0)
    })
}

/// Float path: the first run of `terms` consecutive levels with every block
/// value above the margin.
fn try_float(
    inst: &GmpInstance,
    lams: &[QVec],
    curve: &[CurveTerm],
    cfg: &WitnessConfig,
) -> Option<(u32, Vec<Vec<f64>>)> {
    let xbar = &inst.point;
    let fbar = vec_to_f64(inst.fbar());
    let lf: Vec<Vec<f64>> = lams.iter().map(|l| vec_to_f64(l)).collect();
    let vals = |j: u32| -> Vec<f64> {
        let x = curve_point(xbar, curve, &two_pow_neg(j));
        let fx = inst.map.eval_f64(&vec_to_f64(&x));
        lf.iter()
            .map(|l| l.iter().zip(fx.iter().zip(&fbar)).map(|(a, (b, c))| a * (b - c)).sum())
            .collect()
    };
    let mut run: Vec<Vec<f64>> = Vec::new();
    for j in 1..=cfg.max_level {
        let v = vals(j);
        if v.iter().all(|&a| a > cfg.margin) {
            run.push(v);
            if run.len() == cfg.terms {
                return Some((j + 1 - cfg.terms as u32, run));
            }
        } else {
            run.clear();
        }
    }
    None
}

/// Looks for a sequence violating the simplified normality condition for
/// `λ̄` and `δ`; with `u` the sequence must approach `x̄` along `u`.
pub fn witness_search(
    inst: &GmpInstance,
    lambda: &[Rational],
    delta: &MultiIndex,
    u: Option<&[Rational]>,
    cfg: &WitnessConfig,
) -> Result<Option<WitnessSequence>> {
    let (support, lams) = block_lambdas(lambda, delta);
    if support.is_empty() {
        return Ok(None);
    }
    let gs: Option<Vec<Poly>> = lams.iter().map(|l| inst.map.lagrangian(l)).collect();
    let xbar = &inst.point;
    for curve in candidate_curves(inst.n(), u, cfg.budget) {
        let build = |t0: Rational, values: Vec<Vec<Value>>, exact: bool| {
            let points = values
                .into_iter()
                .enumerate()
                .map(|(k, values)| {
                    let t = &t0 * two_pow_neg(k as u32);
                    WitnessPoint { x: curve_point(xbar, &curve, &t), t, values }
                })
                .collect();
            WitnessSequence {
                lambda: lambda.to_vec(),
                delta: delta.clone(),
                blocks: support.clone(),
                direction: u.map(<[Rational]>::to_vec),
                curve: curve.clone(),
                points,
                exact,
            }
        };
        match &gs {
            Some(gs) => {
                if let Some(t0) = try_exact(gs, xbar, &curve, cfg) {
                    let gbar: Vec<Rational> = gs.iter().map(|g| g.eval(xbar)).collect();
                    let values = (0..cfg.terms)
                        .map(|k| {
                            let x = curve_point(xbar, &curve, &(&t0 * two_pow_neg(k as u32)));
                            gs.iter().zip(&gbar).map(|(g, b)| Value::Exact(g.eval(&x) - b)).collect()
                        })
                        .collect();
                    return Ok(Some(build(t0, values, true)));
                }
            }
            None => {
                if let Some((j0, run)) = try_float(inst, &lams, &curve, cfg) {
                    let values = run.into_iter().map(|v| v.into_iter().map(Value::Float).collect()).collect();
                    return Ok(Some(build(two_pow_neg(j0), values, false)));
                }
            }
        }
    }
    Ok(None)
}

/// Re-evaluates every printed point: block values must be positive (above
/// the float margin on the float path) and the points must approach `x̄`.
pub fn verify_sequence(inst: &GmpInstance, seq: &WitnessSequence, margin: f64) -> bool {
    let (support, lams) = block_lambdas(&seq.lambda, &seq.delta);
    if support != seq.blocks || seq.points.is_empty() {
        return false;
    }
    let fbar = inst.fbar();
    let mut prev: Option<Rational> = None;
    for p in &seq.points {
        if p.x != curve_point(&inst.point, &seq.curve, &p.t) || !p.t.is_positive() {
            return false;
        }
        if prev.as_ref().is_some_and(|a| &p.t >= a) {
            return false;
        }
        prev = Some(p.t.clone());
        let ok = match inst.map.eval_exact(&p.x) {
            Ok(fx) if seq.exact => lams.iter().all(|l| {
                let v: Rational = l.iter().zip(fx.iter().zip(fbar)).map(|(a, (b, c))| a * (b - c)).sum();
                v.is_positive()
            }),
            _ => {
                let fx = inst.map.eval_f64(&vec_to_f64(&p.x));
                let fb = vec_to_f64(fbar);
                lams.iter().all(|l| {
                    let v: f64 = vec_to_f64(l).iter().zip(fx.iter().zip(&fb)).map(|(a, (b, c))| a * (b - c)).sum();
                    v > margin
                })
            }
        };
        if !ok {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{DisjunctiveSet, HPoly};
    use crate::cones::set::row0;
    use crate::kernel::rational::{qf, qvec};
    use crate::model::{Gamma, SmoothMap};

    fn halfplane_inst(f: &[&str]) -> GmpInstance {
        let g = DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1])])]);
        GmpInstance::new("w", SmoothMap::parse(1, f).unwrap(), Gamma::Disjunctive(g), qvec(&[0])).unwrap()
    }

    #[test]
    fn directions_cover_axes() {
        let d = search_directions(2);
        assert_eq!(d.len(), 16);
        assert_eq!(d[0], qvec(&[1, 0]));
        assert!(d.contains(&qvec(&[2, -1])));
        assert!(!d.contains(&qvec(&[2, 2])));
    }

    #[test]
    fn exact_witness_for_cubic_gap() {
        // λ̄ = (1, -1): g = x - x³ > 0 for small x > 0
        let inst = halfplane_inst(&["x", "x^3"]);
        let cfg = WitnessConfig::default();
        let w = witness_search(&inst, &qvec(&[1, -1]), &MultiIndex::pseudo(2), None, &cfg).unwrap().unwrap();
        assert!(w.exact);
        assert_eq!(w.points.len(), 3);
        assert_eq!(w.points[0].t, qf(1, 2));
        assert_eq!(w.points[0].values[0], Value::Exact(qf(3, 8)));
        assert!(verify_sequence(&inst, &w, cfg.margin));
    }

    #[test]
    fn float_witness_for_sine() {
        let inst = halfplane_inst(&["x", "sin(x)"]);
        let cfg = WitnessConfig::default();
        let w = witness_search(&inst, &qvec(&[1, -1]), &MultiIndex::pseudo(2), Some(&qvec(&[1])), &cfg)
            .unwrap()
            .unwrap();
        assert!(!w.exact);
        assert_eq!(w.points[0].x, vec![qf(1, 2)]);
        assert!(verify_sequence(&inst, &w, cfg.margin));
        // the opposite direction never works
        assert!(witness_search(&inst, &qvec(&[1, -1]), &MultiIndex::pseudo(2), Some(&qvec(&[-1])), &cfg)
            .unwrap()
            .is_none());
    }

    #[test]
    fn no_witness_for_local_max() {
        // g = -x²
        let inst = halfplane_inst(&["x^2", "0"]);
        let w = witness_search(&inst, &qvec(&[-1, 0]), &MultiIndex::pseudo(2), None, &WitnessConfig::default()).unwrap();
        assert!(w.is_none());
    }
}
