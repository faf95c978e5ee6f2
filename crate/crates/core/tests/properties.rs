use proptest::prelude::*;

use cqlab_core::kernel::cone::{dd_convert, polar_h};
use cqlab_core::kernel::rational::{dot, fmt_rational, parse_rational, qf, qvec, QVec, Rational};
use cqlab_core::kernel::{HCone, PolyCone};

fn hcone(dim: usize, rows: &[Vec<i64>]) -> HCone {
    HCone::new(dim, vec![], rows.iter().map(|r| qvec(&r[..dim])).collect())
}

fn rows(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, dim), 0..=5)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn rationals_print_and_parse(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = qf(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
    }

    #[test]
    fn vrep_generates_the_hcone(dim in 1usize..=3, rs in rows(3), pts in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 20)) {
        let h = hcone(dim, &rs);
        let v = dd_convert(&h).unwrap();
        let p = PolyCone::from_v(v.clone()).unwrap();
        for g in v.rays.iter().chain(&v.lineality) {
            prop_assert!(h.contains(g));
        }
        for l in &v.lineality {
            let m: QVec = l.iter().map(|x| -x).collect();
            prop_assert!(h.contains(&m));
        }
        for pt in &pts {
            let x = qvec(&pt[..dim]);
            prop_assert_eq!(h.contains(&x), p.contains_point(&x));
        }
    }

    #[test]
    fn polar_is_an_involution(dim in 1usize..=3, rs in rows(3)) {
        let p = PolyCone::from_h(hcone(dim, &rs)).unwrap();
        let pp = p.polar().unwrap();
        prop_assert!(pp.polar().unwrap().same_set(&p));
        let v = polar_h(&p.h).unwrap();
        for a in v.rays.iter() {
            for g in p.v.rays.iter() {
                prop_assert!(dot(a, g) <= Rational::from_integer(0.into()));
            }
        }
    }
}
