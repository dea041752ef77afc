use proptest::prelude::*;

use clustcmp::clustering::contingency;
use clustcmp::combinatorics::{bell, stirling2, LogReal};
use clustcmp::mutual_info::{adjusted_mi, entropy_bound, mutual_information, nmi, MiModelSpec};
use clustcmp::rand_index::{adjusted_rand, expected_rand, rand_index, RandModelSpec};
use clustcmp::{Clustering, MiNormalizer, Model, ReferenceSide};

fn labels(n: std::ops::RangeInclusive<usize>, k: usize) -> impl Strategy<Value = Vec<usize>> {
    n.prop_flat_map(move |n| prop::collection::vec(0..k, n))
}

fn pair() -> impl Strategy<Value = (Clustering, Clustering)> {
    (2usize..60, 1usize..10, 1usize..10).prop_flat_map(|(n, ka, kb)| {
        (prop::collection::vec(0..ka, n), prop::collection::vec(0..kb, n)).prop_map(|(a, b)| {
            (
                Clustering::from_labels(&a).unwrap(),
                Clustering::from_labels(&b).unwrap(),
            )
        })
    })
}

fn four() -> impl Strategy<Value = Vec<Clustering>> {
    (2usize..40).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(0usize..6, n), 4)
            .prop_map(|ls| ls.iter().map(|l| Clustering::from_labels(l).unwrap()).collect())
    })
}

proptest! {
    #[test]
    fn rand_index_is_symmetric_and_bounded((a, b) in pair()) {
        let r = rand_index(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&r));
        prop_assert_eq!(r, rand_index(&b, &a).unwrap());
        prop_assert_eq!(rand_index(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn mi_is_symmetric_and_below_every_bound((a, b) in pair()) {
        let mi = mutual_information(&a, &b).unwrap();
        prop_assert_eq!(mi.to_bits(), mutual_information(&b, &a).unwrap().to_bits());
        prop_assert!(mi >= -1e-15);
        let mut prev = mi;
        for m in MiNormalizer::ALL {
            let bound = entropy_bound(m, &a, &b);
            prop_assert!(prev <= bound + 1e-12, "{m} {prev} {bound}");
            prev = bound;
        }
    }

    #[test]
    fn contingency_margins_are_cluster_sizes((a, b) in pair()) {
        let t = contingency(&a, &b).unwrap();
        prop_assert_eq!(t.row_sums().to_vec(), a.size_sequence());
        prop_assert_eq!(t.col_sums().to_vec(), b.size_sequence());
        prop_assert_eq!(t.cells().iter().map(|c| c.2).sum::<usize>(), a.n_elements());
        prop_assert_eq!(t.transpose().transpose(), t);
    }

    #[test]
    fn perm_one_sided_equals_two_sided((a, b) in pair()) {
        let two = expected_rand(&a, &b, &RandModelSpec::two_sided(Model::Perm)).unwrap();
        for side in [ReferenceSide::A, ReferenceSide::B] {
            let one = expected_rand(&a, &b, &RandModelSpec::one_sided(Model::Perm, side)).unwrap();
            prop_assert!((one - two).abs() <= 1e-12);
        }
    }

    #[test]
    fn all_model_ari_is_increasing_in_ri(cs in four()) {
        let (a, b, c, d) = (&cs[0], &cs[1], &cs[2], &cs[3]);
        let spec = RandModelSpec::two_sided(Model::All);
        let (r1, r2) = (rand_index(a, b).unwrap(), rand_index(c, d).unwrap());
        let (s1, s2) = (adjusted_rand(a, b, &spec).unwrap(), adjusted_rand(c, d, &spec).unwrap());
        prop_assert_eq!(r1 < r2, s1 < s2);
    }

    #[test]
    fn self_agreement_is_one_under_perm(l in labels(3..=40, 6)) {
        let a = Clustering::from_labels(&l).unwrap();
        prop_assume!(a.n_clusters() > 1 && a.n_clusters() < a.n_elements());
        prop_assert!((adjusted_rand(&a, &a, &RandModelSpec::two_sided(Model::Perm)).unwrap() - 1.0).abs() < 1e-12);
        let ami = adjusted_mi(&a, &a, &MiModelSpec::two_sided(Model::Perm, MiNormalizer::Max)).unwrap();
        prop_assert!((ami - 1.0).abs() < 1e-12);
        prop_assert!((nmi(&a, &a, MiNormalizer::Sqrt).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adjusted_mi_none_is_nmi((a, b) in pair()) {
        prop_assume!(a.n_clusters() > 1 && b.n_clusters() > 1);
        let spec = MiModelSpec::two_sided(Model::None, MiNormalizer::Sum);
        prop_assert_eq!(adjusted_mi(&a, &b, &spec).unwrap(), nmi(&a, &b, MiNormalizer::Sum).unwrap());
    }

    #[test]
    fn log_real_round_trip(x in 1e-300f64..1e300) {
        let y = LogReal::from_value(x).value();
        prop_assert!(((y - x) / x).abs() <= (x.ln().abs() + 2.0) * f64::EPSILON);
    }

    #[test]
    fn bell_is_sum_of_stirling(n in 1usize..300) {
        let total = (1..=n).map(|k| stirling2(n, k).unwrap()).fold(LogReal::ZERO, |acc, s| acc + s);
        prop_assert!((total.ln() - bell(n).unwrap().ln()).abs() <= 1e-10 * bell(n).unwrap().ln().max(1.0));
    }
}
