//! Interval-product prototype sets of complementarity-type programs.

use std::fmt;
use std::str::FromStr;

use crate::cones::set::{product_set, DisjunctiveSet, Interval};
use crate::error::{Error, Result};
use crate::kernel::rational::q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrototypeKind {
    /// complementarity: `(ℝ₊×{0}) ∪ ({0}×ℝ₊)`
    Cc,
    /// vanishing: `(ℝ₋×ℝ₊) ∪ (ℝ₊×{0})`
    Vc,
    /// relaxed complementarity: `(ℝ×{0}) ∪ ({0}×[0,1])`
    Rcc,
    /// relaxed probabilistic: `(ℝ₋×[0,1]) ∪ (ℝ₊×{0})`
    Rpc,
    /// switching: `(ℝ×{0}) ∪ ({0}×ℝ)`
    Sc,
    /// `{0}ʳ × ℝ₋^{d−r}`
    Nlp { r: usize, d: usize },
}

impl fmt::Display for PrototypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrototypeKind::Cc => write!(f, "CC"),
            PrototypeKind::Vc => write!(f, "VC"),
            PrototypeKind::Rcc => write!(f, "rCC"),
            PrototypeKind::Rpc => write!(f, "rPC"),
            PrototypeKind::Sc => write!(f, "SC"),
            PrototypeKind::Nlp { r, d } => write!(f, "NLP({r},{d})"),
        }
    }
}

impl FromStr for PrototypeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t.to_ascii_uppercase().as_str() {
            "CC" => PrototypeKind::Cc,
            "VC" => PrototypeKind::Vc,
            "RCC" => PrototypeKind::Rcc,
            "RPC" => PrototypeKind::Rpc,
            "SC" => PrototypeKind::Sc,
            u if u.starts_with("NLP(") && u.ends_with(')') => {
                let nums: Vec<usize> = u[4..u.len() - 1]
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| Error::Input(format!("bad prototype {s:?}"))))
                    .collect::<Result<_>>()?;
                match nums[..] {
                    [r, d] if r <= d && d > 0 => PrototypeKind::Nlp { r, d },
                    _ => return Err(Error::Input(format!("bad prototype {s:?}"))),
                }
            }
            _ => return Err(Error::Input(format!("unknown prototype {s:?}"))),
        })
    }
}

fn unit_interval() -> Interval {
    Interval::new(Some(q(0)), Some(q(1)))
}

fn one_copy(kind: PrototypeKind) -> DisjunctiveSet {
    let zero = || Interval::point(q(0));
    let boxes = match kind {
        PrototypeKind::Cc => vec![vec![Interval::nonneg(), zero()], vec![zero(), Interval::nonneg()]],
        PrototypeKind::Vc => vec![vec![Interval::nonpos(), Interval::nonneg()], vec![Interval::nonneg(), zero()]],
        PrototypeKind::Rcc => vec![vec![Interval::line(), zero()], vec![zero(), unit_interval()]],
        PrototypeKind::Rpc => vec![vec![Interval::nonpos(), unit_interval()], vec![Interval::nonneg(), zero()]],
        PrototypeKind::Sc => vec![vec![Interval::line(), zero()], vec![zero(), Interval::line()]],
        PrototypeKind::Nlp { r, d } => vec![(0..d).map(|i| if i < r { zero() } else { Interval::nonpos() }).collect()],
    };
    DisjunctiveSet::from_boxes(&boxes)
}

/// `copies`-fold product of a prototype.
pub fn prototype_set(kind: PrototypeKind, copies: usize) -> DisjunctiveSet {
    assert!(copies >= 1, "at least one copy");
    let base = one_copy(kind);
    (1..copies).fold(base.clone(), |acc, _| product_set(&acc, &base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cones::limiting_normal_cone;
    use crate::kernel::rational::qvec;
    use crate::model::multi_index::{admissible_multi_indices, MultiIndex};

    #[test]
    fn pieces_match_displays() {
        let cc = prototype_set(PrototypeKind::Cc, 1);
        assert!(cc.ortho);
        assert_eq!(cc.intervals.as_ref().unwrap()[0], vec![Interval::nonneg(), Interval::point(q(0))]);
        let rcc = prototype_set(PrototypeKind::Rcc, 1);
        assert_eq!(rcc.intervals.as_ref().unwrap()[1][1], unit_interval());
        let sc = prototype_set(PrototypeKind::Sc, 3);
        assert_eq!(sc.pieces.len(), 8);
        assert_eq!(sc.dim, 6);
        assert!(sc.ortho);
        let nlp = prototype_set("NLP(1,3)".parse().unwrap(), 1);
        assert_eq!(nlp.pieces.len(), 1);
        assert!(nlp.contains(&qvec(&[0, -1, 0])));
        assert!(!nlp.contains(&qvec(&[1, -1, 0])));
    }

    #[test]
    fn cc_admissible_and_normals() {
        let cc = prototype_set(PrototypeKind::Cc, 1);
        assert_eq!(admissible_multi_indices(&cc), vec![MultiIndex::quasi(2), MultiIndex::pseudo(2)]);
        let n = limiting_normal_cone(&cc, &qvec(&[0, 0])).unwrap();
        assert_eq!(n.pieces.len(), 3);
    }
}
