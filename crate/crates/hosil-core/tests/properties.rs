//! Property tests for the metric axioms and silhouette invariants.

mod common;

use common::naive_silhouette;
use hosil_core::baselines::{linkage_cluster, pam, pamsil, LinkageKind};
use hosil_core::distance::{pairwise_distances, DataMatrix, Metric};
use hosil_core::silhouette::{silhouette_report, Labeling};
use proptest::prelude::*;

fn arb_data(max_n: usize) -> impl Strategy<Value = DataMatrix> {
    (2usize..=max_n, 1usize..=4).prop_flat_map(|(n, p)| {
        proptest::collection::vec(-50.0f64..50.0, n * p)
            .prop_map(move |values| DataMatrix::new(n, p, values).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_axioms(data in arb_data(50), q in 0.5f64..4.0) {
        for metric in [Metric::Euclidean, Metric::Manhattan, Metric::Minkowski(q)] {
            let d = pairwise_distances(&data, metric).unwrap();
            let n = data.n();
            for i in 0..n {
                prop_assert_eq!(d.lookup(i, i), 0.0);
                for h in 0..n {
                    prop_assert!(d.lookup(i, h) >= 0.0);
                    prop_assert_eq!(d.lookup(i, h), d.lookup(h, i));
                }
            }
            // Triangle inequality over all triples (metric exponents >= 1).
            if !matches!(metric, Metric::Minkowski(q) if q < 1.0) {
                for i in 0..n {
                    for h in 0..n {
                        for l in 0..n {
                            prop_assert!(
                                d.lookup(i, h) <= d.lookup(i, l) + d.lookup(l, h) + 1e-9
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minkowski_special_cases(data in arb_data(20)) {
        let e = pairwise_distances(&data, Metric::Euclidean).unwrap();
        let m2 = pairwise_distances(&data, Metric::Minkowski(2.0)).unwrap();
        let m1 = pairwise_distances(&data, Metric::Minkowski(1.0)).unwrap();
        let man = pairwise_distances(&data, Metric::Manhattan).unwrap();
        for (a, b) in e.condensed().iter().zip(m2.condensed()) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
        for (a, b) in m1.condensed().iter().zip(man.condensed()) {
            prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn silhouettes_bounded_and_mean_consistent(
        data in arb_data(30),
        raw in proptest::collection::vec(0i64..6, 30),
    ) {
        let n = data.n();
        let labels = Labeling::from_raw(&raw[..n]).unwrap();
        if labels.k() >= 2 && labels.k() <= n - 1 {
            let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
            let rep = silhouette_report(&dist, &labels).unwrap();
            let mut sum = 0.0;
            for s in &rep.per_point {
                prop_assert!((-1.0..=1.0).contains(s));
                sum += s;
            }
            prop_assert!((rep.asw - sum / n as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn silhouette_relabel_invariant(
        data in arb_data(20),
        raw in proptest::collection::vec(0i64..4, 20),
        offset in 1i64..100,
    ) {
        let n = data.n();
        let labels = Labeling::from_raw(&raw[..n]).unwrap();
        if labels.k() >= 2 && labels.k() <= n - 1 {
            let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
            let rep = silhouette_report(&dist, &labels).unwrap();
            // Rename labels by reversing and offsetting.
            let renamed: Vec<i64> = labels
                .labels()
                .iter()
                .map(|&l| offset + (labels.k() - 1 - l) as i64)
                .collect();
            let renamed = Labeling::from_raw(&renamed).unwrap();
            let rep2 = silhouette_report(&dist, &renamed).unwrap();
            for (a, b) in rep.per_point.iter().zip(&rep2.per_point) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn silhouette_scale_free(
        data in arb_data(16),
        raw in proptest::collection::vec(0i64..3, 16),
        c in 0.01f64..100.0,
    ) {
        let n = data.n();
        let labels = Labeling::from_raw(&raw[..n]).unwrap();
        if labels.k() >= 2 && labels.k() <= n - 1 {
            let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
            let rep = silhouette_report(&dist, &labels).unwrap();
            let rep2 = silhouette_report(&dist.scaled(c).unwrap(), &labels).unwrap();
            for (a, b) in rep.per_point.iter().zip(&rep2.per_point) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn linkage_heights_monotone_for_reducible_kinds(data in arb_data(25)) {
        let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
        for kind in [
            LinkageKind::Single,
            LinkageKind::Complete,
            LinkageKind::Average,
            LinkageKind::WardD2,
        ] {
            let tree = linkage_cluster(&dist, kind).unwrap();
            for w in tree.steps.windows(2) {
                prop_assert!(w[1].height >= w[0].height - 1e-9, "{kind:?}");
            }
        }
    }

    #[test]
    fn pam_and_pamsil_terminate_sanely(data in arb_data(16), k in 2usize..5) {
        let n = data.n();
        if k <= n - 1 {
            let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
            let m = pam(&dist, k).unwrap();
            prop_assert_eq!(m.labeling.k(), k);
            // Cost is the sum of nearest-medoid distances; check directly.
            let mut want = 0.0;
            for i in 0..n {
                want += m
                    .medoids
                    .iter()
                    .map(|&md| dist.lookup(i, md))
                    .fold(f64::INFINITY, f64::min);
            }
            prop_assert!((m.cost - want).abs() < 1e-9);

            let ms = pamsil(&dist, k).unwrap();
            prop_assert_eq!(ms.labeling.k(), k);
            let (_, asw) = naive_silhouette(&dist, &ms.labeling);
            prop_assert!((-1.0..=1.0).contains(&asw));
        }
    }
}

#[test]
fn well_separated_groups_beat_any_split() {
    // Two tight groups: the 2-cluster grouping dominates every labeling
    // that splits a group.
    let data = DataMatrix::new(4, 1, vec![0.0, 1.0, 10.0, 11.0]).unwrap();
    let dist = pairwise_distances(&data, Metric::Euclidean).unwrap();
    let good = Labeling::from_raw(&[0, 0, 1, 1]).unwrap();
    let good_asw = silhouette_report(&dist, &good).unwrap().asw;
    for raw in [[0i64, 1, 2, 2], [0, 1, 1, 2], [0, 0, 1, 2], [0, 1, 0, 1], [0, 1, 1, 0]] {
        let l = Labeling::from_raw(&raw).unwrap();
        if l.k() >= 2 && l.k() <= 3 {
            let asw = silhouette_report(&dist, &l).unwrap().asw;
            assert!(asw < good_asw, "{raw:?}");
        }
    }
}
