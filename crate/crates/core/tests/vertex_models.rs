//! Frozen examples for the six vertex model, t-bosons and moments.

use hlvertex::moments::{self, QuadratureOptions};
use hlvertex::six_vertex::{self, JaggedDomain, SixVertexParams, VertexProbabilities};
use hlvertex::tboson::{self, YbIndices};
use hlvertex::{Partition, SignString, SkewDiagram};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

#[test]
fn vertex_probabilities() {
    let v = VertexProbabilities::from_product(0.25, 0.5);
    assert!((v.pass_horizontal - 4.0 / 7.0).abs() < 1e-15);
    assert!((v.turn_up - 3.0 / 7.0).abs() < 1e-15);
    assert!((v.pass_horizontal + v.turn_up - 1.0).abs() < 1e-15);
    assert!((v.pass_vertical + v.turn_right - 1.0).abs() < 1e-15);
    let (t, a, b) = (0.3, 0.45, 0.7);
    let w = VertexProbabilities::from_native(t, t.sqrt() / a, 1.0 / (t * b));
    let u = VertexProbabilities::from_product(t, a * b);
    for (x, y) in [
        (w.pass_horizontal, u.pass_horizontal),
        (w.turn_up, u.turn_up),
        (w.pass_vertical, u.pass_vertical),
        (w.turn_right, u.turn_right),
    ] {
        assert!((x - y).abs() < 1e-14);
    }
}

#[test]
fn one_by_one() {
    let params = SixVertexParams::matched(0.25, vec![0.5], vec![0.5]).unwrap();
    let law = six_vertex::exact_outgoing_distribution(&params, &JaggedDomain::rectangle(1, 1).unwrap()).unwrap();
    assert!((law.prob(&SkewDiagram::new(p(&[]), p(&[])).unwrap()) - 0.8).abs() < 1e-15);
    assert!((law.prob(&SkewDiagram::new(p(&[1]), p(&[])).unwrap()) - 0.2).abs() < 1e-15);
    let h = six_vertex::joint_height_distribution(&params, 1, 1, &[(2, 1)]).unwrap();
    assert!((h.prob(&vec![0]) - 0.2).abs() < 1e-15);
    assert!((h.prob(&vec![1]) - 0.8).abs() < 1e-15);
    let half = SixVertexParams::matched(0.5, vec![0.5], vec![0.5]).unwrap();
    let h = six_vertex::joint_height_distribution(&half, 1, 1, &[(2, 1)]).unwrap();
    assert!((h.expectation(|v| 0.5f64.powi(v[0] as i32)) - 4.0 / 7.0).abs() < 1e-15);
}

#[test]
fn enumeration_matches_transfer_matrix() {
    let params = SixVertexParams::matched(0.35, vec![0.6, 0.4], vec![0.5, 0.7]).unwrap();
    let domain = JaggedDomain::new(2, 2, "+-+-".parse::<SignString>().unwrap()).unwrap();
    let tm = six_vertex::exact_outgoing_distribution(&params, &domain).unwrap();
    let states = six_vertex::enumerate_states(&params, &domain).unwrap();
    let naive = hlvertex::DiscreteDistribution::from_weights(
        states
            .iter()
            .map(|(st, w)| (six_vertex::outgoing_skew(st).unwrap(), *w)),
    )
    .unwrap();
    assert!(hlvertex::verify::tv_distance(&tm, &naive) < 1e-14);
}

#[test]
fn sampled_outgoing_fits_exact_law() {
    let params = SixVertexParams::matched(0.4, vec![0.6, 0.4], vec![0.5, 0.7]).unwrap();
    let domain = JaggedDomain::rectangle(2, 2).unwrap();
    let exact = six_vertex::exact_outgoing_distribution(&params, &domain).unwrap();
    let mut r = hlvertex::rng::stream(9, 0);
    let mut counts = std::collections::BTreeMap::new();
    for _ in 0..100_000 {
        let st = six_vertex::sample_state(&params, &domain, &mut r).unwrap();
        *counts.entry(six_vertex::outgoing_skew(&st).unwrap()).or_insert(0u64) += 1;
    }
    let chi = hlvertex::verify::chi_square_gof(&counts, &exact).unwrap();
    assert!(chi.p_value > 1e-4, "{chi:?}");
}

#[test]
fn boson_weights() {
    use tboson::{boson_weight, BosonVertexConfig, Normalization};
    let cfg = |left, bottom, right, top, normalization, spectral| BosonVertexConfig {
        left,
        bottom,
        right,
        top,
        normalization,
        spectral,
    };
    let t = 0.4;
    assert_eq!(boson_weight(&cfg(0, 3, 0, 3, Normalization::Black, 0.7), t), 1.0);
    assert!((boson_weight(&cfg(1, 2, 0, 3, Normalization::Black, 0.7), t) - (1.0 - t.powi(3))).abs() < 1e-15);
    assert!((boson_weight(&cfg(1, 2, 0, 3, Normalization::Red, 0.7), t) - 0.7 * (1.0 - t.powi(3))).abs() < 1e-15);
    assert_eq!(boson_weight(&cfg(1, 2, 1, 1, Normalization::Black, 0.7), t), 0.0);
}

#[test]
fn yang_baxter_detects_mutation() {
    let (a, b, t) = (0.35, 0.55, 0.4);
    let mut worst: f64 = 0.0;
    for bits in 0..16u8 {
        for m in 0..=3 {
            for n in 0..=3 {
                let idx = YbIndices {
                    i1: bits & 1,
                    i2: bits >> 1 & 1,
                    j1: bits >> 2 & 1,
                    j2: bits >> 3 & 1,
                    m,
                    n,
                };
                let (l, r) = tboson::yang_baxter_sides(idx, a, b, t, |x, left, bottom, top, right| {
                    let w = tboson::boson_weight(
                        &tboson::BosonVertexConfig {
                            left,
                            bottom,
                            right,
                            top,
                            normalization: tboson::Normalization::Black,
                            spectral: x,
                        },
                        t,
                    );
                    if left == 1 && right == 0 && bottom == 1 {
                        w + 1e-6
                    } else {
                        w
                    }
                });
                worst = worst.max((l - r).abs());
            }
        }
    }
    assert!(worst > 1e-8, "{worst}");
}

#[test]
fn contour_families() {
    let fam = moments::select_hl_contours(&[1], 0.5, &[0.1], &[0.1]).unwrap();
    assert!(fam.radii[0] > 0.1 && fam.radii[0] < 20.0);
    assert!(moments::select_hl_contours(&[1, 1, 1], 0.5, &[0.9], &[1.0]).is_err());
    let fam = moments::select_hl_contours(&[1, 1], 0.5, &[0.5], &[0.8]).unwrap();
    assert!(fam.radii[1] <= 0.5 * fam.radii[0]);
}

#[test]
fn four_sevenths_and_exact_moments() {
    let opts = QuadratureOptions::default();
    let half = SixVertexParams::matched(0.5, vec![0.5], vec![0.5]).unwrap();
    let mm = moments::moment_match_check(&[1], &half, &opts).unwrap();
    assert!((mm.lhs - 4.0 / 7.0).abs() < 1e-9 && (mm.rhs - 4.0 / 7.0).abs() < 1e-9);
    let params = SixVertexParams::matched(0.6, vec![0.3, 0.5], vec![0.4, 0.2]).unwrap();
    let c = hlvertex::verify::compare_moments(&[2, 1], &params, &opts).unwrap();
    assert!((c.hl_quadrature - c.hl_exact).abs() < 1e-8, "{c:?}");
    let params = SixVertexParams::matched(0.45, vec![0.7], vec![0.4, 0.6]).unwrap();
    let c = hlvertex::verify::compare_moments(&[1], &params, &opts).unwrap();
    assert!((c.sixv_quadrature - c.sixv_exact).abs() < 1e-8, "{c:?}");
}

#[test]
fn half_continuous_single_row() {
    // h(τ, 1) = 0 exactly when the row-1 clock has rung by τ
    let (b, tau) = (0.8, 1.1);
    let mut r = hlvertex::rng::stream(4, 0);
    let n = 50_000;
    let zeros = (0..n)
        .filter(|_| six_vertex::sample_half_continuous(0.3, &[b], &[tau], &mut r).unwrap().heights[0][0] == 0)
        .count();
    let want = 1.0 - (-b * tau).exp();
    let se = (want * (1.0 - want) / n as f64).sqrt();
    assert!((zeros as f64 / n as f64 - want).abs() < 5.0 * se);
}
