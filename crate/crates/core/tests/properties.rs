//! Invariants as properties over random inputs.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twisted_deligne::abelian::{smith_normal_form, CohomologyPresentation, FgAbGroup, IntMatrix};
use twisted_deligne::cochain::{bockstein_of, coboundary_matrices, CoefficientRing};
use twisted_deligne::nerve::{are_cohomologous, validate_twist};
use twisted_deligne::verify::{check_mv, check_trivial_twist, oracle_suite, MvDecomposition};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-20i64..=20, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn smith_contract(a in matrix()) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(&(&(d.u() * d.s()) * d.v()), &a);
        prop_assert_eq!(&(d.u() * d.u_inverse()), &IntMatrix::identity(a.rows()));
        prop_assert_eq!(&(d.v() * d.v_inverse()), &IntMatrix::identity(a.cols()));
        let diag = d.nonzero_diagonal();
        prop_assert!(diag.iter().all(|x| x.is_positive()));
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j || i >= d.rank() {
                    prop_assert!(d.s().get(i, j).is_zero());
                }
            }
        }
    }

    #[test]
    fn group_normal_form(free in 0usize..3, orders in proptest::collection::vec(1u64..30, 0..5)) {
        let g = FgAbGroup::from_orders(free, orders.iter().map(|&o| BigInt::from(o)));
        prop_assert_eq!(g.free_rank(), free);
        let product: BigInt = orders.iter().map(|&o| BigInt::from(o)).product();
        prop_assert_eq!(g.torsion_order(), product);
        prop_assert!(g.invariant_factors().iter().all(|d| d > &BigInt::one()));
        for w in g.invariant_factors().windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn twisted_complexes(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng);
        let eta = common::random_twist(&mut rng, &k);
        prop_assert!(validate_twist(&k, &eta).unwrap());
        // δ² = 0, universal coefficients, Euler characteristic, rank = dim, gauge invariance
        let oracle = oracle_suite(&k, &eta, seed).unwrap();
        prop_assert!(oracle.passed(), "{:?}", oracle.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());

        let c = coboundary_matrices(&k, &eta, CoefficientRing::Integer).unwrap();
        for d in 0..k.degree_count() {
            // bockstein image is the torsion of the next group, and injective
            let b = bockstein_of(&c, d).unwrap();
            prop_assert!(b.image_is_torsion().unwrap());
            prop_assert!(b.hom().is_injective());
        }
    }

    #[test]
    fn generators_classify_to_unit_vectors(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng);
        let eta = common::random_twist(&mut rng, &k);
        let c = coboundary_matrices(&k, &eta, CoefficientRing::Integer).unwrap();
        let ds = c.differentials();
        for d in 0..k.degree_count() {
            let incoming = if d == 0 { IntMatrix::zeros(k.cell_count(0), 0) } else { ds[d - 1].clone() };
            let p = CohomologyPresentation::new(&ds[d], &incoming).unwrap();
            for (i, g) in p.generators().iter().enumerate() {
                let coords = p.classify(g).unwrap();
                for (j, x) in coords.iter().enumerate() {
                    prop_assert_eq!(x.is_one(), i == j);
                    prop_assert!(i == j || x.is_zero());
                }
            }
        }
    }

    #[test]
    fn mayer_vietoris_on_star_splits(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng);
        let eta = common::random_twist(&mut rng, &k);
        let v = (seed % k.cell_count(0) as u64) as usize;
        let m = MvDecomposition::star_split(&k, v).unwrap();
        for ring in [CoefficientRing::Integer, CoefficientRing::Rational, CoefficientRing::Prime(2)] {
            let r = check_mv(&m, &eta, ring).unwrap();
            prop_assert!(r.passed(), "{}: {:?}", ring, r.checks);
        }
    }

    #[test]
    fn trivial_twist_reduces(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng);
        prop_assert!(check_trivial_twist(&k, k.dimension() + 1).unwrap().passed());
    }

    #[test]
    fn gauge_moves_stay_in_class(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = common::random_complex(&mut rng);
        let eta = common::random_twist(&mut rng, &k);
        let moved = eta.gauge_transform(&k, &common::random_gauge(&mut rng, &k));
        prop_assert!(validate_twist(&k, &moved).unwrap());
        prop_assert!(are_cohomologous(&k, &eta, &moved));
    }
}
