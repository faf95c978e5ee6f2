//! Factorizations `ℝᵈ = ℝ^{d₁} × … × ℝ^{d_l}` of the range space.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cones::DisjunctiveSet;
use crate::error::{Error, Result};
use crate::kernel::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    pub parts: Vec<usize>,
}

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Input(format!("multi-index parts must be positive, got {parts:?}")));
        }
        Ok(MultiIndex { parts })
    }

    /// `δᴾ = (d)`
    pub fn pseudo(d: usize) -> Self {
        MultiIndex { parts: vec![d] }
    }

    /// `δQ = (1, …, 1)`
    pub fn quasi(d: usize) -> Self {
        MultiIndex { parts: vec![1; d] }
    }

    pub fn dim(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Interior cut positions.
    pub fn cuts(&self) -> BTreeSet<usize> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in &self.parts[..self.parts.len() - 1] {
            acc += p;
            out.insert(acc);
        }
        out
    }

    fn from_cuts(d: usize, cuts: &BTreeSet<usize>) -> Self {
        let mut parts = Vec::new();
        let mut prev = 0;
        for &c in cuts.iter().chain(std::iter::once(&d)) {
            parts.push(c - prev);
            prev = c;
        }
        MultiIndex { parts }
    }

    pub fn blocks(&self) -> Vec<Range<usize>> {
        let mut lo = 0;
        self.parts
            .iter()
            .map(|&p| {
                lo += p;
                lo - p..lo
            })
            .collect()
    }

    /// `self ⊂ coarse`: every block of `coarse` is a union of blocks of `self`.
    pub fn refines(&self, coarse: &MultiIndex) -> bool {
        self.dim() == coarse.dim() && coarse.cuts().is_subset(&self.cuts())
    }

    /// `I_δ(λ)`: indices of blocks on which `λ` is nonzero.
    pub fn support(&self, lambda: &[Rational]) -> Vec<usize> {
        self.blocks()
            .into_iter()
            .enumerate()
            .filter(|(_, r)| lambda[r.clone()].iter().any(|x| !x.is_zero()))
            .map(|(k, _)| k)
            .collect()
    }

    pub fn is_pseudo(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn is_quasi(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// `"1,1,2"` or `"(1,1,2)"`
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Input(format!("bad multi-index {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        MultiIndex::new(parts)
    }
}

/// `δ′ ⊂ δ`
pub fn refine(fine: &MultiIndex, coarse: &MultiIndex) -> bool {
    fine.refines(coarse)
}

/// Finest multi-index for which the blockwise vanishing property is
/// guaranteed by the product structure of Γ: scalar blocks for each
/// interval-product factor, one block per other factor.
pub fn finest_admissible(gamma: &DisjunctiveSet) -> MultiIndex {
    let mut parts = Vec::new();
    for b in &gamma.blocks {
        if b.ortho {
            parts.extend(std::iter::repeat_n(1, b.dim));
        } else {
            parts.push(b.dim);
        }
    }
    MultiIndex { parts }
}

/// Every coarsening of [`finest_admissible`], finest first.
pub fn admissible_multi_indices(gamma: &DisjunctiveSet) -> Vec<MultiIndex> {
    let finest = finest_admissible(gamma);
    let cuts: Vec<usize> = finest.cuts().into_iter().collect();
    let d = finest.dim();
    let mut out: Vec<MultiIndex> = (0u64..1 << cuts.len())
        .map(|mask| {
            let keep = cuts.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c).collect();
            MultiIndex::from_cuts(d, &keep)
        })
        .collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    out
}

pub fn is_admissible(gamma: &DisjunctiveSet, delta: &MultiIndex) -> bool {
    finest_admissible(gamma).refines(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qvec};

    #[test]
    fn refinement() {
        let d = MultiIndex::new(vec![1, 4, 2]).unwrap();
        let fine = MultiIndex::new(vec![1, 3, 1, 1, 1]).unwrap();
        assert!(refine(&fine, &d));
        assert!(!refine(&d, &fine));
        let mid = MultiIndex::new(vec![2, 1]).unwrap();
        assert!(refine(&MultiIndex::quasi(3), &mid));
        assert!(refine(&mid, &MultiIndex::pseudo(3)));
        assert!(!refine(&MultiIndex::new(vec![1, 2]).unwrap(), &mid));
    }

    #[test]
    fn support_and_parsing() {
        let d = MultiIndex::quasi(2);
        assert_eq!(d.support(&qvec(&[0, -1])), vec![1]);
        assert_eq!(MultiIndex::pseudo(2).support(&[q(0), q(0)]), Vec::<usize>::new());
        assert_eq!("1,1,2".parse::<MultiIndex>().unwrap().parts, vec![1, 1, 2]);
        assert_eq!(MultiIndex::new(vec![1, 1, 2]).unwrap().to_string(), "(1,1,2)");
        assert!("1,0".parse::<MultiIndex>().is_err());
    }
}
