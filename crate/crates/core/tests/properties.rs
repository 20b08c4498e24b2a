//! Property tests for invariants that hold for every input.

use hlvertex::partitions::{interlaces, partition_from_string, skew_p_one, skew_q_one, string_from_partition};
use hlvertex::rsk::{self, PartitionArray, SetSystem};
use hlvertex::six_vertex::{self, JaggedDomain, SixVertexParams};
use hlvertex::verify::tv_distance;
use hlvertex::{DiscreteDistribution, Partition, Sign, SignString};
use proptest::prelude::*;

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..7, 0..6).prop_map(Partition::from_unsorted)
}

proptest! {
    #[test]
    fn conjugate_is_involution(l in partition()) {
        prop_assert_eq!(l.conjugate().conjugate(), l.clone());
        prop_assert_eq!(l.conjugate().size(), l.size());
    }

    #[test]
    fn string_bijection_round_trips(l in partition()) {
        let (p, m) = (l.len().max(1), l.first().max(1) as usize);
        let s = string_from_partition(&l, p, m).unwrap();
        prop_assert_eq!(s.plus_count(), p);
        prop_assert_eq!(s.minus_count(), m);
        prop_assert_eq!(partition_from_string(&s, p, m).unwrap(), l);
    }

    #[test]
    fn skew_functions_vanish_off_interlacing(l in partition(), mu in partition(), x in 0.0f64..1.0, t in 0.01f64..0.99) {
        let pv = skew_p_one(&l, &mu, x, t);
        let qv = skew_q_one(&l, &mu, x, t);
        if interlaces(&l, &mu) {
            prop_assert!(pv >= 0.0 && qv >= 0.0);
        } else {
            prop_assert_eq!(pv, 0.0);
            prop_assert_eq!(qv, 0.0);
        }
    }

    #[test]
    fn tv_is_a_bounded_symmetric_distance(w1 in prop::collection::vec(0.01f64..1.0, 1..6), w2 in prop::collection::vec(0.01f64..1.0, 1..6)) {
        let p = DiscreteDistribution::from_weights(w1.iter().cloned().enumerate()).unwrap();
        let q = DiscreteDistribution::from_weights(w2.iter().cloned().enumerate()).unwrap();
        p.validate(1e-12).unwrap();
        let d = tv_distance(&p, &q);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&d));
        prop_assert!((d - tv_distance(&q, &p)).abs() < 1e-15);
        prop_assert!(tv_distance(&p, &p) < 1e-15);
    }

    #[test]
    fn rsk_signals_keep_interlacing_and_sets_agree(
        signals in prop::collection::vec((1usize..=5, prop::collection::vec(0.0f64..1.0, 5)), 1..60),
        t in 0.0f64..0.95,
    ) {
        let mut arr = PartitionArray::zeros(5);
        let mut sets = SetSystem::full(5);
        for (k, u) in &signals {
            let before = arr.clone();
            let changes = rsk::rsk_apply_signal(&mut arr, *k, t, u).unwrap();
            prop_assert!(arr.check_interlacing().is_ok());
            prop_assert_eq!(changes.len(), 5 - k + 1);
            for m in 1..*k {
                prop_assert_eq!(arr.level(m), before.level(m));
            }
            for m in *k..=5 {
                let grown: u32 = arr.level(m).iter().sum::<u32>() - before.level(m).iter().sum::<u32>();
                prop_assert_eq!(grown, 1);
            }
            rsk::sets_apply_signal(&mut sets, *k, t, u).unwrap();
            prop_assert_eq!(rsk::array_from_sets(&sets).unwrap(), arr.clone());
            prop_assert_eq!(rsk::sets_from_array(&arr).unwrap(), sets.clone());
        }
    }

    #[test]
    fn signal_distributions_are_normalized(
        signals in prop::collection::vec((1usize..=4, prop::collection::vec(0.0f64..1.0, 4)), 0..30),
        k in 1usize..=4,
        t in 0.05f64..0.95,
    ) {
        let mut arr = PartitionArray::zeros(4);
        for (level, u) in &signals {
            rsk::rsk_apply_signal(&mut arr, *level, t, u).unwrap();
        }
        let law = rsk::rsk_signal_distribution(&arr, k, t).unwrap();
        let total: f64 = law.iter().map(|x| x.1).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        let sets = rsk::sets_from_array(&arr).unwrap();
        let slaw = rsk::sets_signal_distribution(&sets, k, t).unwrap();
        prop_assert_eq!(slaw.len(), law.len());
        for (s, pr) in slaw {
            let a = rsk::array_from_sets(&s).unwrap();
            let q = law.iter().find(|x| x.0 == a).map(|x| x.1).unwrap_or(0.0);
            prop_assert!((q - pr).abs() < 1e-12);
        }
    }

    #[test]
    fn sampled_states_conserve_paths(seed in any::<u64>(), m in 1usize..5, n in 1usize..5, t in 0.05f64..0.95, ab in 0.05f64..0.9) {
        let params = SixVertexParams::matched(t, vec![ab.sqrt(); m], vec![ab.sqrt(); n]).unwrap();
        let strings = SignString::all_in_class(Sign::Plus, m, n);
        let s = strings[(seed % strings.len() as u64) as usize].clone();
        let domain = JaggedDomain::new(m, n, s).unwrap();
        let mut r = hlvertex::rng::stream(seed, 0);
        let st = six_vertex::sample_state(&params, &domain, &mut r).unwrap();
        prop_assert!(st.check_conservation().is_ok());
        for x in 1..=m {
            for y in 1..=domain.column_height(x) {
                let d = st.height(x, y).unwrap() as i64 - st.height(x + 1, y).unwrap() as i64;
                prop_assert!(d == 0 || d == 1);
            }
        }
    }

    #[test]
    fn yang_baxter_holds_everywhere(bits in 0u8..16, m in 0u32..5, n in 0u32..5, a in 0.0f64..1.0, b in 0.0f64..1.0, t in 0.05f64..0.95) {
        let r = hlvertex::tboson::verify_yang_baxter(bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1, m, n, a, b, t);
        prop_assert!(r < 1e-12);
    }
}
