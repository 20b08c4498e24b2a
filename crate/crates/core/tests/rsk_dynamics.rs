//! Frozen examples for the RSK, set and PushTASEP dynamics.

use hlvertex::rsk::{self, PartitionArray, PushTasepState, SetSystem};

#[test]
fn level_one_signal_on_zero_array() {
    let law = rsk::rsk_signal_distribution(&PartitionArray::zeros(4), 1, 0.3).unwrap();
    assert_eq!(law.len(), 1);
    assert_eq!(law[0].0.levels(), &[vec![1], vec![1, 0], vec![1, 0, 0], vec![1, 0, 0, 0]]);
    assert!((law[0].1 - 1.0).abs() < 1e-15);
}

#[test]
fn lower_levels_frozen_and_one_row_per_level() {
    let mut r = hlvertex::rng::stream(3, 0);
    let tr = rsk::run_rsk_with(&[1.0, 0.5, 0.8, 1.2, 0.9], 0.6, 5.0, &[], true, &mut r).unwrap();
    for ev in &tr.events {
        let levels: Vec<usize> = ev.changes.iter().map(|c| c.level).collect();
        assert_eq!(levels, (ev.level..=5).collect::<Vec<_>>());
    }
    let tr = rsk::run_rsk(&[1.0, 2.0], 0.5, 0.0, 1, &[0.0]).unwrap();
    assert_eq!(tr.final_state, PartitionArray::zeros(2));
    assert_eq!(tr.snapshots[0].array, PartitionArray::zeros(2));
}

#[test]
fn reproducible_runs() {
    let a = rsk::run_rsk(&[1.0, 0.7, 1.3], 0.4, 3.0, 77, &[1.0, 2.0]).unwrap();
    let b = rsk::run_rsk(&[1.0, 0.7, 1.3], 0.4, 3.0, 77, &[1.0, 2.0]).unwrap();
    assert_eq!(a, b);
}

#[test]
fn level_one_is_poisson() {
    let (c, tau, n) = (1.3, 1.5, 40_000);
    let mut r = hlvertex::rng::stream(12, 0);
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..n {
        let tr = rsk::run_rsk_with(&[c], 0.5, tau, &[tau], false, &mut r).unwrap();
        *counts.entry(tr.snapshots[0].array.level(1)[0]).or_insert(0u64) += 1;
    }
    let mut pmf = (-c * tau).exp();
    let mut w = Vec::new();
    for k in 0..60u32 {
        w.push((k, pmf));
        pmf *= c * tau / (k + 1) as f64;
    }
    let law = hlvertex::DiscreteDistribution::from_weights(w).unwrap();
    assert!(hlvertex::verify::chi_square_gof(&counts, &law).unwrap().p_value > 1e-4);
}

#[test]
fn initial_sets_map_to_zero_array() {
    assert_eq!(rsk::array_from_sets(&SetSystem::full(4)).unwrap(), PartitionArray::zeros(4));
    assert_eq!(rsk::sets_from_array(&PartitionArray::zeros(4)).unwrap(), SetSystem::full(4));
}

#[test]
fn level_k_loses_its_minimum() {
    let sets = SetSystem::from_missing(&[vec![0], vec![], vec![1, 2]]);
    for k in 1..=3 {
        let min = (0..).find(|&r| sets.contains(k, r)).unwrap();
        for (out, _) in rsk::sets_signal_distribution(&sets, k, 0.3).unwrap() {
            assert!(!out.contains(k, min));
            for m in 1..k {
                assert_eq!(out.missing(m), sets.missing(m));
            }
        }
    }
}

#[test]
fn pushtasep_jump_lengths_are_geometric() {
    let t = 0.35;
    let n = 8;
    let mut r = hlvertex::rng::stream(21, 0);
    let mut counts = std::collections::BTreeMap::new();
    let trials = 40_000;
    for _ in 0..trials {
        let mut s = PushTasepState {
            occupied: std::iter::once(true).chain(std::iter::repeat_n(false, n - 1)).collect(),
        };
        let u: Vec<f64> = (0..n).map(|_| rand::Rng::random(&mut r)).collect();
        let ev = s.ring(1, t, &u).unwrap();
        let d = ev.filled.map_or(n as u32, |f| f as u32 - 1);
        *counts.entry(d).or_insert(0u64) += 1;
    }
    let mut w: Vec<(u32, f64)> = (1..n as u32).map(|d| (d, (1.0 - t) * t.powi(d as i32 - 1))).collect();
    w.push((n as u32, t.powi(n as i32 - 1)));
    let law = hlvertex::DiscreteDistribution::from_weights(w).unwrap();
    assert!(hlvertex::verify::chi_square_gof(&counts, &law).unwrap().p_value > 1e-4);
}

#[test]
fn pushtasep_run_is_valid() {
    let tr = rsk::run_pushtasep(&[1.0, 0.5, 2.0, 0.7], 0.4, 10.0, 3).unwrap();
    for (_, ev) in &tr.events {
        if let (Some(v), Some(f)) = (ev.vacated, ev.filled) {
            assert!(f > v);
        }
    }
    assert_eq!(tr.final_state.occupied.len(), 4);
}
