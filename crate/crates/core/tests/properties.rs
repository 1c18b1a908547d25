use kdirac::exactla::{kernel_basis, rank, rank_by_elimination, ExactMatrix, Scalar};
use kdirac::partitions::dim_w;
use kdirac::polydiff::{DiffOp, Polynomial};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| Scalar::new(a, b, c, d))
}

/// Sparse-ish small matrices, so ranks are not always full.
fn matrix() -> impl Strategy<Value = ExactMatrix> {
    (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop_oneof![3 => Just(Scalar::zero()), 2 => scalar()], r * c)
            .prop_map(move |e| ExactMatrix::from_entries(r, c, e).unwrap())
    })
}

const NVARS: usize = 3;

fn exp(max: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..=max, NVARS)
}

fn operator() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((exp(1), exp(2), -3i64..=3), 1..4).prop_map(|terms| {
        terms.into_iter().fold(DiffOp::zero(NVARS, 1, 1), |acc, (c, d, v)| {
            acc.add(&DiffOp::term(c, d, ExactMatrix::from_i64(&[&[v]]))).unwrap()
        })
    })
}

fn polynomial() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((exp(3), scalar()), 1..5).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(NVARS, 1), |acc, (e, c)| acc.add(&Polynomial::scalar_monomial(e, c)).unwrap())
    })
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn cache_strings_round_trip(a in scalar()) {
        prop_assert_eq!(Scalar::parse_cache_string(&a.to_cache_string()).unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let r = rank(&m);
        let ker = kernel_basis(&m);
        prop_assert_eq!(r + ker.len(), m.cols());
        prop_assert_eq!(r, rank_by_elimination(&m));
        prop_assert_eq!(r, rank(&m.transpose()));
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn dim_w_ignores_trailing_zeros(mut parts in prop::collection::vec(0usize..4, 0..3), pad in 0usize..3) {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let k = parts.len() + pad + 1;
        let mut padded = parts.clone();
        padded.resize(parts.len() + pad, 0);
        prop_assert_eq!(dim_w(&parts, k).unwrap(), dim_w(&padded, k).unwrap());
    }

    #[test]
    fn compose_matches_sequential_application(a in operator(), b in operator(), f in polynomial()) {
        let composed = a.compose(&b).unwrap().apply(&f).unwrap();
        let sequential = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(composed, sequential);
    }
}
