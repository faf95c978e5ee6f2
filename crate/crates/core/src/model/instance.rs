//! Problem instances `min f(x) s.t. F(x) ∈ Γ` at a reference point.

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;

use super::map::SmoothMap;
use crate::cones::DisjunctiveSet;
use crate::error::{Error, Result};
use crate::kernel::rational::{to_f64, QMat, QVec, Rational};

/// Closed sets known only through membership and distance oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnalyticSet {
    /// `{y ∈ ℝ² : y₂ ≥ |y₁|^{3/2}}`
    EpiAbsPow32,
    /// `{y ∈ ℝ² : y₂ ≤ y₁²}`
    SubgraphSquare,
}

impl AnalyticSet {
    pub fn dim(&self) -> usize {
        2
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnalyticSet::EpiAbsPow32 => "epi_abs_pow_3_2",
            AnalyticSet::SubgraphSquare => "subgraph_square",
        }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        match self {
            AnalyticSet::EpiAbsPow32 => {
                !y[1].is_negative() && &y[1] * &y[1] >= y[0].abs() * &y[0] * &y[0]
            }
            AnalyticSet::SubgraphSquare => y[1] <= &y[0] * &y[0],
        }
    }

    /// Euclidean distance.
    pub fn distance(&self, y: &[f64]) -> f64 {
        let (p1, p2) = (y[0], y[1]);
        match self {
            AnalyticSet::EpiAbsPow32 => {
                let h = |t: f64| {
                    let lift = (t.abs().powf(1.5) - p2).max(0.0);
                    (t - p1).powi(2) + lift * lift
                };
                let (mut lo, mut hi) = if p1 < 0.0 { (p1, 0.0) } else { (0.0, p1) };
                for _ in 0..200 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if h(m1) <= h(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                h(0.5 * (lo + hi)).sqrt()
            }
            AnalyticSet::SubgraphSquare => {
                if p2 <= p1 * p1 {
                    return 0.0;
                }
                // critical points of (t - p1)² + (t² - p2)²: 2t³ + (1 - 2p2)t - p1 = 0
                let g = |t: f64| 2.0 * t * t * t + (1.0 - 2.0 * p2) * t - p1;
                let bound = 1.0 + (1.0 - 2.0 * p2).abs().max(p1.abs());
                let steps = 4096;
                let mut best = f64::INFINITY;
                let dist = |t: f64| ((t - p1).powi(2) + (t * t - p2).powi(2)).sqrt();
                for k in 0..steps {
                    let a = -bound + 2.0 * bound * k as f64 / steps as f64;
                    let b = a + 2.0 * bound / steps as f64;
                    let (ga, gb) = (g(a), g(b));
                    if ga == 0.0 {
                        best = best.min(dist(a));
                    }
                    if ga * gb < 0.0 {
                        let (mut lo, mut hi) = (a, b);
                        for _ in 0..100 {
                            let m = 0.5 * (lo + hi);
                            if (g(lo) < 0.0) == (g(m) < 0.0) {
                                lo = m;
                            } else {
                                hi = m;
                            }
                        }
                        best = best.min(dist(0.5 * (lo + hi)));
                    }
                }
                best
            }
        }
    }
}

impl FromStr for AnalyticSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "epi_abs_pow_3_2" => Ok(AnalyticSet::EpiAbsPow32),
            "subgraph_square" => Ok(AnalyticSet::SubgraphSquare),
            _ => Err(Error::Input(format!("unknown analytic set {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gamma {
    Disjunctive(DisjunctiveSet),
    Analytic(AnalyticSet),
}

impl Gamma {
    pub fn dim(&self) -> usize {
        match self {
            Gamma::Disjunctive(g) => g.dim,
            Gamma::Analytic(a) => a.dim(),
        }
    }

    pub fn contains(&self, y: &[Rational]) -> bool {
        match self {
            Gamma::Disjunctive(g) => g.contains(y),
            Gamma::Analytic(a) => a.contains(y),
        }
    }
}

/// Closed-form description of the feasible set near the reference point,
/// used in place of the sampled pool for `d_X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FeasibleOverride {
    /// `X ∩ U = {x̄}`
    Point,
    /// `X ∩ U = x̄ + (ℝ₋ × {0}ⁿ⁻¹)`
    HalflineNonposX1,
    /// `X ∩ U = x̄ + (ℝ × {0}ⁿ⁻¹)`
    AxisX1,
    /// `X ∩ U = U`
    Full,
}

impl FeasibleOverride {
    pub fn name(&self) -> &'static str {
        match self {
            FeasibleOverride::Point => "point",
            FeasibleOverride::HalflineNonposX1 => "halfline_nonpos_x1",
            FeasibleOverride::AxisX1 => "axis_x1",
            FeasibleOverride::Full => "full",
        }
    }

    /// `d_X(x)` for `x` near `x̄`.
    pub fn distance(&self, x: &[f64], xbar: &[f64]) -> f64 {
        let z: Vec<f64> = x.iter().zip(xbar).map(|(a, b)| a - b).collect();
        let rest: f64 = z.iter().skip(1).map(|v| v * v).sum();
        match self {
            FeasibleOverride::Point => (z[0] * z[0] + rest).sqrt(),
            FeasibleOverride::HalflineNonposX1 => (z[0].max(0.0).powi(2) + rest).sqrt(),
            FeasibleOverride::AxisX1 => rest.sqrt(),
            FeasibleOverride::Full => 0.0,
        }
    }
}

impl fmt::Display for FeasibleOverride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FeasibleOverride {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            FeasibleOverride::Point,
            FeasibleOverride::HalflineNonposX1,
            FeasibleOverride::AxisX1,
            FeasibleOverride::Full,
        ]
        .into_iter()
        .find(|o| o.name() == s.trim())
        .ok_or_else(|| Error::Input(format!("unknown feasible-set override {s:?}")))
    }
}

/// `F`, `Γ`, `x̄` and optional objective, with `F(x̄) ∈ Γ` checked.
#[derive(Clone, Debug, PartialEq)]
pub struct GmpInstance {
    pub name: String,
    pub map: SmoothMap,
    pub gamma: Gamma,
    pub point: QVec,
    pub objective: Option<SmoothMap>,
    pub feasible_override: Option<FeasibleOverride>,
    /// multipliers supplied by the user for checks that cannot compute `Λ⁰`
    pub multiplier_hints: Vec<QVec>,
    fbar: QVec,
    jac: QMat,
}

impl GmpInstance {
    pub fn new(name: &str, map: SmoothMap, gamma: Gamma, point: QVec) -> Result<Self> {
        if point.len() != map.n {
            return Err(Error::Dimension(format!("x̄ has {} coordinates, F expects {}", point.len(), map.n)));
        }
        if gamma.dim() != map.d {
            return Err(Error::Dimension(format!("F has {} components, Γ lives in ℝ^{}", map.d, gamma.dim())));
        }
        let fbar = map.eval_exact(&point)?;
        if !gamma.contains(&fbar) {
            return Err(Error::InfeasiblePoint);
        }
        let jac = map.jacobian(&point)?;
        Ok(GmpInstance {
            name: name.to_string(),
            map,
            gamma,
            point,
            objective: None,
            feasible_override: None,
            multiplier_hints: Vec::new(),
            fbar,
            jac,
        })
    }

    pub fn with_objective(mut self, f: SmoothMap) -> Result<Self> {
        if f.n != self.map.n || f.d != 1 {
            return Err(Error::Dimension("objective must be a scalar function of x".into()));
        }
        self.objective = Some(f);
        Ok(self)
    }

    pub fn with_override(mut self, o: FeasibleOverride) -> Self {
        self.feasible_override = Some(o);
        self
    }

    pub fn with_hints(mut self, hints: Vec<QVec>) -> Result<Self> {
        if hints.iter().any(|h| h.len() != self.map.d) {
            return Err(Error::Dimension("multiplier hint length differs from d".into()));
        }
        self.multiplier_hints = hints;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.map.n
    }

    pub fn d(&self) -> usize {
        self.map.d
    }

    /// `F(x̄)`
    pub fn fbar(&self) -> &QVec {
        &self.fbar
    }

    /// `∇F(x̄)`, `d × n`.
    pub fn jacobian(&self) -> &QMat {
        &self.jac
    }

    pub fn point_f64(&self) -> Vec<f64> {
        self.point.iter().map(to_f64).collect()
    }

    pub fn disjunctive(&self) -> Result<&DisjunctiveSet> {
        match &self.gamma {
            Gamma::Disjunctive(g) => Ok(g),
            Gamma::Analytic(_) => Err(Error::AnalyticGamma),
        }
    }

    /// `x ∈ X`, exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> Result<bool> {
        Ok(self.gamma.contains(&self.map.eval_exact(x)?))
    }

    pub fn gamma_kind(&self) -> String {
        match &self.gamma {
            Gamma::Disjunctive(g) if g.ortho => format!("ortho-disjunctive ({} pieces)", g.pieces.len()),
            Gamma::Disjunctive(g) => format!("disjunctive ({} pieces)", g.pieces.len()),
            Gamma::Analytic(a) => format!("analytic ({})", a.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::set::{row0, HPoly};
    use crate::kernel::rational::{q, qvec};

    fn wedge() -> Gamma {
        // y2 ≥ |y1|
        Gamma::Disjunctive(DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1]), row0(&[-1, -1])])]))
    }

    #[test]
    fn feasibility_checked() {
        let f = SmoothMap::parse(1, &["x", "-x^2"]).unwrap();
        let inst = GmpInstance::new("ex", f.clone(), wedge(), qvec(&[0])).unwrap();
        assert_eq!(inst.jacobian(), &vec![qvec(&[1]), qvec(&[0])]);
        assert!(!inst.is_feasible(&qvec(&[1])).unwrap());
        assert_eq!(GmpInstance::new("ex", f, wedge(), qvec(&[1])).unwrap_err(), Error::InfeasiblePoint);
    }

    #[test]
    fn analytic_distances() {
        let e = AnalyticSet::EpiAbsPow32;
        assert!(e.contains(&[q(1), q(1)]));
        assert!(!e.contains(&[q(4), q(7)]));
        assert!(e.contains(&[q(4), q(8)]));
        // (x, x²) for small x sits |x|^{3/2} - x² below the boundary, up to first order
        let x = 1e-4f64;
        let d = e.distance(&[x, x * x]);
        assert!(d > 0.5 * x.powf(1.5) && d <= x.powf(1.5));
        let s = AnalyticSet::SubgraphSquare;
        assert_eq!(s.distance(&[1.0, 0.5]), 0.0);
        // from (0, 1) the nearest points are (±1/√2, 1/2)
        assert!((s.distance(&[0.0, 1.0]) - 0.75f64.sqrt()).abs() < 1e-9);
        assert_eq!(FeasibleOverride::HalflineNonposX1.distance(&[-0.3], &[0.0]), 0.0);
        assert_eq!("axis_x1".parse::<FeasibleOverride>().unwrap(), FeasibleOverride::AxisX1);
    }
}
