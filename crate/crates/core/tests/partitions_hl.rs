//! Frozen examples for partitions, skew functions and the HL process.

use hlvertex::hl_process::{self, HLProcessSpec, HlLattice, PartitionSequence};
use hlvertex::partitions::{self, interlaces, partition_from_string, skew_p_one, skew_q_one, string_from_partition};
use hlvertex::{Partition, SignString, SkewDiagram};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn s(x: &str) -> SignString {
    x.parse().unwrap()
}

#[test]
fn conjugates() {
    assert_eq!(p(&[6, 3, 3, 1]).conjugate(), p(&[4, 3, 3, 1, 1, 1]));
    assert_eq!(partitions::conjugate(&p(&[1, 1, 1])), p(&[3]));
}

#[test]
fn strings_and_partitions() {
    assert_eq!(partition_from_string(&s("-+--++---+"), 4, 6).unwrap(), p(&[6, 3, 3, 1]));
    assert_eq!(partition_from_string(&s("++--"), 2, 2).unwrap(), p(&[]));
    assert_eq!(partition_from_string(&s("-+"), 1, 1).unwrap(), p(&[1]));
    assert_eq!(string_from_partition(&p(&[6, 3, 3, 1]), 4, 6).unwrap(), s("-+--++---+"));
    assert_eq!(string_from_partition(&p(&[1]), 1, 1).unwrap(), s("-+"));
    assert!(string_from_partition(&p(&[2]), 1, 1).is_err());
}

#[test]
fn skew_values() {
    let (a, b, t) = (0.37, 0.61, 0.29);
    assert!(interlaces(&p(&[2, 1]), &p(&[1, 1])));
    assert_eq!(skew_p_one(&p(&[1]), &p(&[]), a, t), a);
    assert!((skew_p_one(&p(&[2, 1]), &p(&[1, 1]), a, t) - a * (1.0 - t * t)).abs() < 1e-15);
    assert!((skew_q_one(&p(&[1]), &p(&[]), b, t) - b * (1.0 - t)).abs() < 1e-15);
    assert!((skew_q_one(&p(&[2]), &p(&[1]), b, t) - b * (1.0 - t)).abs() < 1e-15);
    assert_eq!(skew_p_one(&p(&[3, 2]), &p(&[1]), a, t), 0.0);
}

#[test]
fn single_pair_law() {
    let spec = HLProcessSpec::new(0.25, vec![0.5], vec![0.5], s("+-")).unwrap();
    assert!((hl_process::normalization_pi(&spec) - 1.25).abs() < 1e-15);
    let seq = PartitionSequence(vec![p(&[3])]);
    let w = hl_process::sequence_weight(&seq, &spec).unwrap();
    assert!((w - 0.5f64.powi(6) * 0.75).abs() < 1e-15);
    let law = HlLattice::new(&spec, 40).unwrap().level_marginal(1).unwrap();
    assert!((law.prob(&p(&[])) - 0.8).abs() < 1e-10);
    for r in 1..10u32 {
        let want = 0.2 * 0.75 * 0.25f64.powi(r as i32 - 1);
        assert!((law.prob(&p(&[r])) - want).abs() < 1e-10);
    }
    let sup = hl_process::exact_support_distribution(&spec, 40).unwrap();
    let one = SkewDiagram::new(p(&[1]), p(&[])).unwrap();
    let empty = SkewDiagram::new(p(&[]), p(&[])).unwrap();
    assert!((sup.prob(&empty) - 0.8).abs() < 1e-10);
    assert!((sup.prob(&one) - 0.2).abs() < 1e-10);
    let seq = PartitionSequence(vec![p(&[1])]);
    assert_eq!(hl_process::support_of_sequence(&seq, &s("+-")).unwrap(), one);
    assert_eq!(hl_process::support_string(&seq, &s("+-")).unwrap(), s("-+"));
    assert_eq!(hl_process::first_columns(&seq), vec![1]);
}

/// Two-variable P_λ from its symmetrization formula; λ has at most two rows.
fn p_two(l: &Partition, x1: f64, x2: f64, t: f64) -> f64 {
    let (l1, l2) = (l.part(0) as i32, l.part(1) as i32);
    if l1 == l2 {
        return (x1 * x2).powi(l1);
    }
    x1.powi(l1) * x2.powi(l2) * (x1 - t * x2) / (x1 - x2) + x2.powi(l1) * x1.powi(l2) * (x2 - t * x1) / (x2 - x1)
}

#[test]
fn two_by_one_marginal() {
    let (t, a, b) = (0.35, vec![0.4, 0.7], vec![0.6]);
    let spec = HLProcessSpec::new(t, a.clone(), b.clone(), s("++-")).unwrap();
    let cap = hl_process::choose_row_cap(&spec).unwrap();
    let law = HlLattice::new(&spec, cap).unwrap().level_marginal(2).unwrap();
    let mut weights = Vec::new();
    for r in 0..=cap {
        let lam = if r == 0 { p(&[]) } else { p(&[r]) };
        let q = if r == 0 { 1.0 } else { (1.0 - t) * b[0].powi(r as i32) };
        weights.push((lam.clone(), p_two(&lam, a[0], a[1], t) * q));
    }
    let z: f64 = weights.iter().map(|w| w.1).sum();
    for (lam, w) in weights {
        assert!((law.prob(&lam) - w / z).abs() < 1e-12, "{lam} {} {}", law.prob(&lam), w / z);
    }
    assert!(law.iter().all(|(l, _)| l.len() <= 1));
}

#[test]
fn worked_sequence() {
    let seq: Vec<Partition> = [&[1][..], &[3], &[3, 2], &[3, 3, 1], &[3, 1], &[3], &[3], &[2], &[2]]
        .iter()
        .map(|v| p(v))
        .collect();
    let seq = PartitionSequence(seq);
    let sgn = SignString::ascending(4, 6);
    let spec = HLProcessSpec::new(0.3, vec![0.2; 4], vec![0.3; 6], sgn.clone()).unwrap();
    assert!(hl_process::sequence_weight(&seq, &spec).unwrap() > 0.0);
    assert_eq!(
        hl_process::support_of_sequence(&seq, &sgn).unwrap(),
        SkewDiagram::new(p(&[6, 3, 3, 1]), p(&[])).unwrap()
    );
    assert_eq!(hl_process::support_string(&seq, &sgn).unwrap(), s("-+--++---+"));
    assert_eq!(hl_process::first_columns(&seq), vec![1, 1, 2, 3, 2, 1, 1, 1, 1]);
}

#[test]
fn support_against_sequence_law() {
    let spec = HLProcessSpec::new(0.3, vec![0.4, 0.5], vec![0.6, 0.3], s("+-+-")).unwrap();
    let cap = hl_process::choose_row_cap(&spec).unwrap();
    let seqs = hl_process::exact_sequence_distribution(&spec, cap).unwrap();
    let via = seqs.map(|q| hl_process::support_of_sequence(q, &spec.s).unwrap());
    let direct = hl_process::exact_support_distribution(&spec, cap).unwrap();
    assert!(hlvertex::verify::tv_distance(&via, &direct) < 1e-12);
}

#[test]
fn sampled_supports_fit_exact_law() {
    let spec = HLProcessSpec::ascending(0.4, vec![0.5, 0.3], vec![0.6, 0.4]).unwrap();
    let cap = hl_process::choose_row_cap(&spec).unwrap();
    let exact = hl_process::exact_support_distribution(&spec, cap).unwrap();
    let mut r = hlvertex::rng::stream(5, 0);
    let counts = hl_process::sample_support_counts(&spec, cap, 100_000, &mut r).unwrap();
    let chi = hlvertex::verify::chi_square_gof(&counts, &exact).unwrap();
    assert!(chi.p_value > 1e-4, "{chi:?}");
}

#[test]
fn spec_json_defaults_to_ascending() {
    let spec: HLProcessSpec = serde_json::from_str(r#"{"t":0.5,"a":[0.1,0.2],"b":[0.3]}"#).unwrap();
    assert_eq!(spec.s, s("++-"));
    assert!(serde_json::from_str::<HLProcessSpec>(r#"{"t":1.5,"a":[0.1],"b":[0.3]}"#).is_err());
}
