//! Estimates of `d_X(x)` near the reference point.

use crate::error::{Error, Result};
use crate::kernel::rational::{from_f64, q, to_f64, QVec, Rational};
use crate::model::GmpInstance;

use super::distance::gamma_distance_f64;

/// Feasible points collected on a grid of step `r / resolution` over the box
/// `x̄ ± 2r`.
#[derive(Clone, Debug)]
pub struct FeasiblePool {
    pub radius: f64,
    pub points: Vec<Vec<f64>>,
}

/// Points per axis; grids are coarsened so the pool stays below about 2·10⁴
/// candidates.
fn axis_points(n: usize, resolution: usize) -> usize {
    let full = 4 * resolution + 1;
    let cap = (20_000f64).powf(1.0 / n.max(1) as f64).floor() as usize;
    full.min(cap.max(3)) | 1
}

/// Exact membership when `F` evaluates exactly, otherwise `d_Γ(F(x)) ≤ tol`.
fn member(inst: &GmpInstance, x: &[Rational], tol: f64) -> bool {
    match inst.is_feasible(x) {
        Ok(b) => b,
        Err(_) => {
            let xf: Vec<f64> = x.iter().map(to_f64).collect();
            gamma_distance_f64(&inst.gamma, &inst.map.eval_f64(&xf)) <= tol
        }
    }
}

pub fn feasible_pool(inst: &GmpInstance, radius: &Rational, resolution: usize) -> Result<FeasiblePool> {
    let n = inst.n();
    let k = axis_points(n, resolution);
    let half = (k / 2) as i64;
    let step = radius * q(2) / q(half);
    let tol = to_f64(&step).powi(2);
    let mut points = vec![inst.point_f64()];
    let mut idx = vec![-half; n];
    loop {
        if idx.iter().any(|&i| i != 0) {
            let x: QVec = inst.point.iter().zip(&idx).map(|(c, &i)| c + &step * q(i)).collect();
            if member(inst, &x, tol) {
                points.push(x.iter().map(to_f64).collect());
            }
        }
        let mut j = 0;
        while j < n {
            idx[j] += 1;
            if idx[j] <= half {
                break;
            }
            idx[j] = -half;
            j += 1;
        }
        if j == n {
            break;
        }
    }
    Ok(FeasiblePool { radius: to_f64(radius), points })
}

/// `d_X(x)`: closed form when the instance carries an override, otherwise
/// the nearest pool point (an upper bound).
pub fn feasible_distance(inst: &GmpInstance, x: &[f64], pool: Option<&FeasiblePool>) -> Result<f64> {
    if let Some(o) = inst.feasible_override {
        return Ok(o.distance(x, &inst.point_f64()));
    }
    let pool = pool.ok_or(Error::EmptyPool)?;
    pool.points
        .iter()
        .map(|p| p.iter().zip(x).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt())
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyPool)
}

/// Exact `x ∈ X` test at a float point, falling back to `d_Γ(F(x)) = 0`.
pub fn is_feasible_f64(inst: &GmpInstance, x: &[f64]) -> bool {
    let xq: Option<QVec> = x.iter().map(|&v| from_f64(v)).collect();
    match xq.map(|xq| inst.is_feasible(&xq)) {
        Some(Ok(b)) => b,
        _ => gamma_distance_f64(&inst.gamma, &inst.map.eval_f64(x)) == 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::{DisjunctiveSet, HPoly};
    use crate::cones::set::row0;
    use crate::kernel::rational::{qf, qvec};
    use crate::model::{FeasibleOverride, Gamma, SmoothMap};

    #[test]
    fn pool_on_halfline() {
        // F(x) = (x, x²) into y2 ≥ y1: near 0, X = ℝ₋
        let g = DisjunctiveSet::new(2, vec![HPoly::new(2, vec![], vec![row0(&[1, -1])])]);
        let inst = GmpInstance::new("h", SmoothMap::parse(1, &["x", "x^2"]).unwrap(), Gamma::Disjunctive(g), qvec(&[0])).unwrap();
        let pool = feasible_pool(&inst, &qf(1, 4), 8).unwrap();
        assert!(pool.points.iter().all(|p| p[0] <= 0.0));
        assert_eq!(pool.points.len(), 17);
        let d = feasible_distance(&inst, &[0.1], Some(&pool)).unwrap();
        assert!((d - 0.1).abs() < 1e-12);
        let o = inst.clone().with_override(FeasibleOverride::HalflineNonposX1);
        assert_eq!(feasible_distance(&o, &[0.1], None).unwrap(), 0.1);
        assert_eq!(feasible_distance(&inst, &[0.1], None).unwrap_err(), Error::EmptyPool);
        assert!(is_feasible_f64(&inst, &[-0.5]));
    }
}
