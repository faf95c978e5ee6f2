//! Dense two-phase simplex over exact rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use super::rational::{dot, primitive, QVec, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: QVec,
    pub rel: Relation,
    pub rhs: Rational,
}

/// `maximize objective · x` subject to the constraints. Variables flagged in
/// `free` are unrestricted in sign, the rest are nonnegative.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub free: Vec<bool>,
    pub constraints: Vec<Constraint>,
    pub objective: QVec,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: QVec, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            free: vec![false; num_vars],
            constraints: Vec::new(),
            objective: vec![Rational::zero(); num_vars],
        }
    }

    pub fn all_free(num_vars: usize) -> Self {
        let mut lp = Self::new(num_vars);
        lp.free = vec![true; num_vars];
        lp
    }

    pub fn push(&mut self, coeffs: QVec, rel: Relation, rhs: Rational) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    rows: Vec<QVec>, // each row: columns..., rhs
    basis: Vec<usize>,
    ncols: usize,
    artificial_start: usize,
    // original var j -> (positive column, optional negative column)
    var_cols: Vec<(usize, Option<usize>)>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let mut var_cols = Vec::with_capacity(lp.num_vars);
        let mut ncols = 0;
        for j in 0..lp.num_vars {
            if lp.free[j] {
                var_cols.push((ncols, Some(ncols + 1)));
                ncols += 2;
            } else {
                var_cols.push((ncols, None));
                ncols += 1;
            }
        }
        // normalize rhs >= 0
        let normalized: Vec<(QVec, Relation, Rational)> = lp
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.rel, c.rhs.clone())
                }
            })
            .collect();
        let n_slack = normalized.iter().filter(|c| c.1 != Relation::Eq).count();
        let n_art = normalized.iter().filter(|c| c.1 != Relation::Le).count();
        let slack_start = ncols;
        let artificial_start = slack_start + n_slack;
        let total = artificial_start + n_art;
        let mut rows = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut s, mut a) = (slack_start, artificial_start);
        for (coeffs, rel, rhs) in normalized {
            let mut row = vec![Rational::zero(); total + 1];
            for (j, c) in coeffs.iter().enumerate() {
                let (p, m) = var_cols[j];
                row[p] = c.clone();
                if let Some(m) = m {
                    row[m] = -c.clone();
                }
            }
            match rel {
                Relation::Le => {
                    row[s] = Rational::one();
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = -Rational::one();
                    s += 1;
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rational::one();
                    basis.push(a);
                    a += 1;
                }
            }
            row[total] = rhs;
            rows.push(row);
        }
        Tableau {
            rows,
            basis,
            ncols: total,
            artificial_start,
            var_cols,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost · x` over columns `< limit`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[Rational], limit: usize) -> bool {
        loop {
            let entering = (0..limit).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                rc.is_positive()
            });
            let Some(j) = entering else { return true };
            let rhs = self.ncols;
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                Some((i, _)) => self.pivot(i, j),
                None => return false,
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let total = self.ncols;
        if self.artificial_start < total {
            let mut phase1 = vec![Rational::zero(); total];
            for c in phase1.iter_mut().skip(self.artificial_start) {
                *c = -Rational::one();
            }
            self.optimize(&phase1, total);
            let infeasible = self
                .rows
                .iter()
                .zip(&self.basis)
                .any(|(row, &b)| b >= self.artificial_start && !row[total].is_zero());
            if infeasible {
                return LpOutcome::Infeasible;
            }
            // drive zero-level artificials out of the basis
            let mut i = 0;
            while i < self.rows.len() {
                if self.basis[i] >= self.artificial_start {
                    match (0..self.artificial_start).find(|&j| !self.rows[i][j].is_zero()) {
                        Some(j) => {
                            self.pivot(i, j);
                            i += 1;
                        }
                        None => {
                            self.rows.remove(i);
                            self.basis.remove(i);
                        }
                    }
                } else {
                    i += 1;
                }
            }
        }
        let mut cost = vec![Rational::zero(); total];
        for (j, c) in lp.objective.iter().enumerate() {
            let (p, m) = self.var_cols[j];
            cost[p] = c.clone();
            if let Some(m) = m {
                cost[m] = -c.clone();
            }
        }
        if !self.optimize(&cost, self.artificial_start) {
            return LpOutcome::Unbounded;
        }
        let mut col_val = vec![Rational::zero(); total];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            col_val[b] = row[total].clone();
        }
        let x: QVec = self
            .var_cols
            .iter()
            .map(|&(p, m)| match m {
                Some(m) => &col_val[p] - &col_val[m],
                None => col_val[p].clone(),
            })
            .collect();
        let value = dot(&lp.objective, &x);
        LpOutcome::Optimal { x, value }
    }
}

/// Outcome of a homogeneous strict feasibility test.
#[derive(Clone, Debug, PartialEq)]
pub enum StrictFeasibility {
    Feasible(QVec),
    Infeasible,
}

impl StrictFeasibility {
    pub fn witness(&self) -> Option<&QVec> {
        match self {
            StrictFeasibility::Feasible(w) => Some(w),
            StrictFeasibility::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, StrictFeasibility::Feasible(_))
    }
}

/// Decides `∃ v : eqs·v = 0, ineqs·v ≤ 0, stricts·v < 0` exactly.
///
/// Maximizes a slack `t ≤ 1` with `stricts·v + t ≤ 0`; feasible iff the
/// optimum is positive. The witness is returned in primitive integer form.
pub fn strict_lp_feasible(dim: usize, eqs: &[QVec], ineqs: &[QVec], stricts: &[QVec]) -> StrictFeasibility {
    if stricts.is_empty() {
        return StrictFeasibility::Feasible(vec![Rational::zero(); dim]);
    }
    let mut lp = LinearProgram::all_free(dim + 1);
    let ext = |row: &QVec, t: i64| {
        let mut r = row.clone();
        r.push(Rational::from_integer(t.into()));
        r
    };
    for a in eqs {
        lp.push(ext(a, 0), Relation::Eq, Rational::zero());
    }
    for b in ineqs {
        lp.push(ext(b, 0), Relation::Le, Rational::zero());
    }
    for c in stricts {
        lp.push(ext(c, 1), Relation::Le, Rational::zero());
    }
    let mut bound = vec![Rational::zero(); dim + 1];
    bound[dim] = Rational::one();
    lp.push(bound.clone(), Relation::Le, Rational::one());
    lp.objective = bound;
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() => {
            StrictFeasibility::Feasible(primitive(&x[..dim]))
        }
        _ => StrictFeasibility::Infeasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qf, qvec};

    #[test]
    fn small_lp_optimum() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6, x,y >= 0 -> (8/5, 6/5), 14/5
        let mut lp = LinearProgram::new(2);
        lp.push(qvec(&[1, 2]), Relation::Le, q(4));
        lp.push(qvec(&[3, 1]), Relation::Le, q(6));
        lp.objective = qvec(&[1, 1]);
        match lp.solve() {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![qf(8, 5), qf(6, 5)]);
                assert_eq!(value, qf(14, 5));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.push(qvec(&[1]), Relation::Ge, q(2));
        lp.push(qvec(&[1]), Relation::Le, q(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::all_free(2);
        lp.push(qvec(&[1, -1]), Relation::Eq, q(0));
        lp.objective = qvec(&[1, 0]);
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn equality_with_free_vars() {
        let mut lp = LinearProgram::all_free(2);
        lp.push(qvec(&[1, 1]), Relation::Eq, q(-3));
        lp.push(qvec(&[1, 0]), Relation::Ge, q(-5));
        lp.objective = qvec(&[-1, 0]);
        match lp.solve() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x, qvec(&[-5, 2])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn strict_examples() {
        // v1 = 0, v2 < 0
        let r = strict_lp_feasible(2, &[qvec(&[1, 0])], &[], &[qvec(&[0, 1])]);
        assert_eq!(r, StrictFeasibility::Feasible(qvec(&[0, -1])));
        // v < 0 and -v < 0
        let r = strict_lp_feasible(1, &[], &[], &[qvec(&[1]), qvec(&[-1])]);
        assert_eq!(r, StrictFeasibility::Infeasible);
        // v2 - v1 = 0, v1 < 0, v2 < 0
        let r = strict_lp_feasible(2, &[qvec(&[-1, 1])], &[], &[qvec(&[1, 0]), qvec(&[0, 1])]);
        assert_eq!(r, StrictFeasibility::Feasible(qvec(&[-1, -1])));
    }
}
