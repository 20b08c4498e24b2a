//! Exact and statistical comparisons between the two sides of every identity.
//!
//! Each `check_*` function returns a [`ComparisonReport`]. In exact and TV
//! mode the statistic is a distance and passes when it is below the
//! threshold; in chi-square mode the statistic is a p-value and passes when
//! it is above the threshold.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::time::Instant;

use rand::Rng as _;
use serde::Serialize;
use serde_json::json;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::dist::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::hl_process::{self, HLProcessSpec, HlLattice};
use crate::moments::{self, QuadratureOptions, Side};
use crate::partitions::{partitions_in_box, skew_p_one, skew_q_one, Partition, Sign, SignString};
use crate::rng::{self, Rng};
use crate::rsk::{self, EventClock, PartitionArray, PushTasepState, SetSystem};
use crate::six_vertex::{self, JaggedDomain, SixVertexParams};
use crate::tboson::{self, Exchange, SkewOperator};

/// How a report's statistic is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    ChiSquare,
    Tv,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub check: String,
    pub mode: Mode,
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub samples: Option<u64>,
    pub seeds: Vec<u64>,
    pub runtime_secs: f64,
    pub details: serde_json::Value,
}

impl ComparisonReport {
    fn new(check: &str, mode: Mode, statistic: f64, threshold: f64, started: Instant) -> Self {
        let pass = match mode {
            Mode::ChiSquare => statistic > threshold,
            Mode::Exact | Mode::Tv => statistic < threshold,
        };
        ComparisonReport {
            check: check.to_string(),
            mode,
            statistic,
            threshold,
            pass,
            samples: None,
            seeds: Vec::new(),
            runtime_secs: started.elapsed().as_secs_f64(),
            details: serde_json::Value::Null,
        }
    }

    fn with_samples(mut self, n: u64) -> Self {
        self.samples = Some(n);
        self
    }

    fn with_seeds(mut self, seeds: Vec<u64>) -> Self {
        self.seeds = seeds;
        self
    }

    fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }

    /// One summary line.
    pub fn summary_line(&self) -> String {
        let cmp = match self.mode {
            Mode::ChiSquare => ">",
            _ => "<",
        };
        format!(
            "{} {:<28} {:e} {cmp} {:e} ({:.2}s)",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.statistic,
            self.threshold,
            self.runtime_secs
        )
    }
}

/// `½ Σ |p - q|` over the union of supports.
pub fn tv_distance<K: Ord + Clone>(p: &DiscreteDistribution<K>, q: &DiscreteDistribution<K>) -> f64 {
    let mut diff: BTreeMap<&K, f64> = BTreeMap::new();
    for (k, v) in p.iter() {
        *diff.entry(k).or_insert(0.0) += v;
    }
    for (k, v) in q.iter() {
        *diff.entry(k).or_insert(0.0) -= v;
    }
    0.5 * diff.values().map(|d| d.abs()).sum::<f64>()
}

/// Chi-square statistic with its degrees of freedom and upper-tail p-value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Merges cells whose expected count is below 5 into one cell, and that cell
/// into the smallest retained one if it is still too small.
fn pool(cells: Vec<(Vec<f64>, Vec<f64>)>) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    let small = |c: &(Vec<f64>, Vec<f64>)| c.1.iter().any(|&e| e < 5.0);
    let (mut kept, low): (Vec<_>, Vec<_>) = cells.into_iter().partition(|c| !small(c));
    if !low.is_empty() {
        let width = low[0].0.len();
        let mut merged = (vec![0.0; width], vec![0.0; width]);
        for (o, e) in &low {
            for j in 0..width {
                merged.0[j] += o[j];
                merged.1[j] += e[j];
            }
        }
        if !small(&merged) {
            kept.push(merged);
        } else if let Some(target) = kept
            .iter_mut()
            .min_by(|x, y| x.1[0].partial_cmp(&y.1[0]).unwrap())
        {
            for j in 0..width {
                target.0[j] += merged.0[j];
                target.1[j] += merged.1[j];
            }
        }
    }
    if kept.len() < 2 {
        return Err(Error::ChiSquare(format!(
            "only {} cell(s) left after pooling",
            kept.len()
        )));
    }
    Ok(kept)
}

fn finish(cells: &[(Vec<f64>, Vec<f64>)], dof: usize) -> Result<ChiSquareResult> {
    let statistic: f64 = cells
        .iter()
        .map(|(o, e)| o.iter().zip(e).map(|(o, e)| (o - e) * (o - e) / e).sum::<f64>())
        .sum();
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::ChiSquare(e.to_string()))?;
    Ok(ChiSquareResult {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}

/// Goodness of fit of observed counts to an expected law.
pub fn chi_square_gof<K: Ord + Clone + Debug>(
    counts: &BTreeMap<K, u64>,
    expected: &DiscreteDistribution<K>,
) -> Result<ChiSquareResult> {
    let n: u64 = counts.values().sum();
    if n == 0 {
        return Err(Error::ChiSquare("no observations".into()));
    }
    for (k, &c) in counts {
        if c > 0 && expected.prob(k) == 0.0 {
            return Err(Error::ChiSquare(format!(
                "outcome {k:?} observed {c} times but has expected probability 0"
            )));
        }
    }
    let cells = expected
        .iter()
        .map(|(k, p)| {
            let o = counts.get(k).copied().unwrap_or(0) as f64;
            (vec![o], vec![p * n as f64])
        })
        .collect();
    let cells = pool(cells)?;
    finish(&cells, cells.len() - 1)
}

/// Two-sample homogeneity test.
pub fn chi_square_homogeneity<K: Ord + Clone>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> Result<ChiSquareResult> {
    let na: u64 = a.values().sum();
    let nb: u64 = b.values().sum();
    if na == 0 || nb == 0 {
        return Err(Error::ChiSquare("an empty sample".into()));
    }
    let total = (na + nb) as f64;
    let mut keys: Vec<&K> = a.keys().chain(b.keys()).collect();
    keys.sort();
    keys.dedup();
    let cells = keys
        .into_iter()
        .map(|k| {
            let ca = a.get(k).copied().unwrap_or(0) as f64;
            let cb = b.get(k).copied().unwrap_or(0) as f64;
            let row = ca + cb;
            (vec![ca, cb], vec![row * na as f64 / total, row * nb as f64 / total])
        })
        .collect();
    let cells = pool(cells)?;
    finish(&cells, cells.len() - 1)
}

/// Draws matched parameters in the ranges used by the sweeps:
/// `t ∈ (0.1, 0.9)` and `a_x, b_y ∈ (0.1, 0.8)`.
pub fn random_matched_params(m: usize, n: usize, rng: &mut Rng) -> SixVertexParams {
    let t = rng.random_range(0.1..0.9);
    let a = (0..m).map(|_| rng.random_range(0.1..0.8)).collect();
    let b = (0..n).map(|_| rng.random_range(0.1..0.8)).collect();
    SixVertexParams { t, a, b }
}

fn restricted(params: &SixVertexParams, m: usize, n: usize) -> Result<SixVertexParams> {
    if params.a.len() < m || params.b.len() < n {
        return Err(Error::LengthMismatch(format!(
            "need {m} a's and {n} b's, have {} and {}",
            params.a.len(),
            params.b.len()
        )));
    }
    SixVertexParams::matched(params.t, params.a[..m].to_vec(), params.b[..n].to_vec())
}

fn hl_lattice(params: &SixVertexParams, s: &SignString) -> Result<HlLattice> {
    let spec = HLProcessSpec::new(params.t, params.a.clone(), params.b.clone(), s.clone())?;
    let cap = hl_process::choose_row_cap(&spec)?;
    HlLattice::new(&spec, cap)
}

/// Exact support law of the HL process against the outgoing law of the six
/// vertex model on the jagged domain cut by `s`.
pub fn support_tv(m: usize, n: usize, s: &SignString, params: &SixVertexParams) -> Result<f64> {
    let p = restricted(params, m, n)?;
    let hl = hl_lattice(&p, s)?.support_distribution()?;
    let sv = six_vertex::exact_outgoing_distribution(&p, &JaggedDomain::new(m, n, s.clone())?)?;
    Ok(tv_distance(&hl, &sv))
}

/// First-column law of the HL process against the cut heights of the six
/// vertex model.
pub fn height_tv(m: usize, n: usize, s: &SignString, params: &SixVertexParams) -> Result<f64> {
    let p = restricted(params, m, n)?;
    let hl = hl_lattice(&p, s)?.first_column_distribution()?;
    let sv = six_vertex::exact_cut_height_distribution(&p, &JaggedDomain::new(m, n, s.clone())?)?;
    Ok(tv_distance(&hl, &sv))
}

pub fn check_support_match(m: usize, n: usize, s: &SignString, params: &SixVertexParams) -> Result<ComparisonReport> {
    let started = Instant::now();
    let tv = support_tv(m, n, s, params)?;
    Ok(ComparisonReport::new("support", Mode::Tv, tv, 1e-9, started)
        .with_details(json!({ "M": m, "N": n, "S": s, "params": params })))
}

pub fn check_height_match(m: usize, n: usize, s: &SignString, params: &SixVertexParams) -> Result<ComparisonReport> {
    let started = Instant::now();
    let tv = height_tv(m, n, s, params)?;
    Ok(ComparisonReport::new("height", Mode::Tv, tv, 1e-9, started)
        .with_details(json!({ "M": m, "N": n, "S": s, "params": params })))
}

/// Worst TV over every `S ∈ S^+_{M,N}` with `M, N <= max`, `draws`
/// parameter draws per string.
pub fn check_support_sweep(max: usize, draws: usize, seed: u64) -> Result<ComparisonReport> {
    sweep("support-sweep", max, draws, seed, support_tv)
}

/// Same sweep for the first-column / cut-height laws.
pub fn check_height_sweep(max: usize, draws: usize, seed: u64) -> Result<ComparisonReport> {
    sweep("height-sweep", max, draws, seed, height_tv)
}

fn sweep(
    name: &str,
    max: usize,
    draws: usize,
    seed: u64,
    f: fn(usize, usize, &SignString, &SixVertexParams) -> Result<f64>,
) -> Result<ComparisonReport> {
    let started = Instant::now();
    let mut r = rng::stream(seed, 1);
    let mut worst: f64 = 0.0;
    let mut worst_case = serde_json::Value::Null;
    let mut cases = 0u64;
    for m in 1..=max {
        for n in 1..=max {
            for s in SignString::all_in_class(Sign::Plus, m, n) {
                for _ in 0..draws {
                    let p = random_matched_params(m, n, &mut r);
                    let tv = f(m, n, &s, &p)?;
                    cases += 1;
                    if tv >= worst {
                        worst = tv;
                        worst_case = json!({ "M": m, "N": n, "S": s, "params": p });
                    }
                }
            }
        }
    }
    Ok(ComparisonReport::new(name, Mode::Tv, worst, 1e-9, started)
        .with_samples(cases)
        .with_seeds(vec![seed])
        .with_details(json!({ "cases": cases, "worst": worst_case })))
}

/// Both moment formulas against each other and against the exact laws.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentComparison {
    pub ms: Vec<usize>,
    pub params: SixVertexParams,
    pub hl_quadrature: f64,
    pub hl_exact: f64,
    pub sixv_quadrature: f64,
    pub sixv_exact: f64,
    /// `|t^(kN - Σm) hl - sixv|`.
    pub identity_gap: f64,
}

impl MomentComparison {
    /// Largest error relative to its tolerance (identity 1e-7, exact 1e-8).
    pub fn worst_ratio(&self) -> f64 {
        (self.identity_gap / 1e-7)
            .max((self.hl_quadrature - self.hl_exact).abs() / 1e-8)
            .max((self.sixv_quadrature - self.sixv_exact).abs() / 1e-8)
    }
}

/// Evaluates both contour integrals and the exact moments for
/// `m_1 >= … >= m_k`, with `N = params.b.len()`.
pub fn compare_moments(ms: &[usize], params: &SixVertexParams, opts: &QuadratureOptions) -> Result<MomentComparison> {
    let mm = moments::moment_match_check(ms, params, opts)?;
    let (m1, n) = (ms[0], params.b.len());
    let t = params.t;
    let spec = HLProcessSpec::ascending(t, params.a[..m1].to_vec(), params.b.clone())?;
    let cap = hl_process::choose_row_cap(&spec)?;
    let cols = hl_process::exact_first_column_distribution(&spec, cap)?;
    let hl_exact = cols.expectation(|c| ms.iter().map(|&m| t.powi(m as i32 - c[m - 1] as i32)).product());
    let points: Vec<(usize, usize)> = ms.iter().map(|&m| (m + 1, n)).collect();
    let heights = six_vertex::joint_height_distribution(&restricted(params, m1, n)?, m1, n, &points)?;
    let sixv_exact = heights.expectation(|h| h.iter().map(|&v| t.powi(v as i32)).product());
    Ok(MomentComparison {
        ms: ms.to_vec(),
        params: params.clone(),
        hl_quadrature: mm.hl.value,
        hl_exact,
        sixv_quadrature: mm.sixv.value,
        sixv_exact,
        identity_gap: mm.diff,
    })
}

pub fn check_moment_match(ms: &[usize], params: &SixVertexParams, opts: &QuadratureOptions) -> Result<ComparisonReport> {
    let started = Instant::now();
    let c = compare_moments(ms, params, opts)?;
    Ok(ComparisonReport::new("moments", Mode::Exact, c.worst_ratio(), 1.0, started).with_details(json!(c)))
}

/// Random feasible instance with `k <= 2`, `N <= 2`, `m_i <= 3`, kept a
/// factor 0.7 inside the feasibility bound `max a · max b < t^(k-1)`.
pub fn random_moment_instance(rng: &mut Rng) -> (Vec<usize>, SixVertexParams) {
    loop {
        let k = rng.random_range(1..=2usize);
        let n = rng.random_range(1..=2usize);
        let mut ms: Vec<usize> = (0..k).map(|_| rng.random_range(1..=3usize)).collect();
        ms.sort_unstable_by(|x, y| y.cmp(x));
        let p = random_matched_params(ms[0], n, rng);
        let amax = p.a.iter().cloned().fold(0.0, f64::max);
        let bmax = p.b.iter().cloned().fold(0.0, f64::max);
        if amax * bmax < 0.7 * p.t.powi(k as i32 - 1) {
            return (ms, p);
        }
    }
}

/// Worst tolerance ratio over `draws` random instances, plus the closed
/// form `4/7` at `t = a = b = 1/2`, `k = m = N = 1`.
pub fn check_moment_sweep(draws: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let opts = QuadratureOptions::default();
    let mut r = rng::stream(seed, 2);
    let mut worst: f64 = 0.0;
    let mut worst_case = serde_json::Value::Null;
    for _ in 0..draws {
        let (ms, p) = random_moment_instance(&mut r);
        let c = compare_moments(&ms, &p, &opts)?;
        if c.worst_ratio() >= worst {
            worst = c.worst_ratio();
            worst_case = json!(c);
        }
    }
    let half = SixVertexParams::matched(0.5, vec![0.5], vec![0.5])?;
    let point = moments::moment_match_check(&[1], &half, &opts)?;
    let closed = (point.hl.value - 4.0 / 7.0)
        .abs()
        .max((point.sixv.value - 4.0 / 7.0).abs());
    let stat = worst.max(closed / 1e-9);
    Ok(ComparisonReport::new("moment-sweep", Mode::Exact, stat, 1.0, started)
        .with_samples(draws as u64)
        .with_seeds(vec![seed])
        .with_details(json!({
            "worst_ratio": worst,
            "worst": worst_case,
            "four_sevenths_error": closed,
        })))
}

/// Largest change of the HL integral when every radius is multiplied by
/// one of five admissible factors.
pub fn contour_invariance_gap(ms: &[usize], t: f64, a: &[f64], b: &[f64], opts: &QuadratureOptions) -> Result<f64> {
    let fam = moments::select_contours(Side::Hl, ms, &SixVertexParams::matched(t, a.to_vec(), b.to_vec())?)?;
    let base = moments::hl_moment_with_radii(ms, t, a, b, &fam.radii, opts)?.value;
    let rmin = fam.radii.iter().cloned().fold(f64::INFINITY, f64::min);
    let rmax = fam.radii.iter().cloned().fold(0.0, f64::max);
    let lo = if fam.inner_bound > 0.0 {
        (fam.inner_bound / rmin).ln()
    } else {
        (0.05f64).ln()
    };
    let hi = (fam.outer_bound / rmax).ln();
    let mut gap: f64 = 0.0;
    for theta in [0.2, 0.35, 0.5, 0.65, 0.8] {
        let c = (lo + theta * (hi - lo)).exp();
        let radii: Vec<f64> = fam.radii.iter().map(|r| r * c).collect();
        let v = moments::hl_moment_with_radii(ms, t, a, b, &radii, opts)?.value;
        gap = gap.max((v - base).abs());
    }
    Ok(gap)
}

pub fn check_contour_invariance(draws: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let opts = QuadratureOptions::default();
    let mut r = rng::stream(seed, 3);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let (ms, p) = random_moment_instance(&mut r);
        worst = worst.max(contour_invariance_gap(&ms, p.t, &p.a, &p.b, &opts)?);
    }
    Ok(ComparisonReport::new("contour-invariance", Mode::Exact, worst, 1e-9, started)
        .with_samples(draws as u64)
        .with_seeds(vec![seed]))
}

/// Yang–Baxter residuals at random bits, `m, n <= 4`, `a, b ∈ (0, 1)`,
/// `t ∈ (0.05, 0.95)`.
pub fn check_yang_baxter(draws: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let mut r = rng::stream(seed, 4);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let bits: [u8; 4] = std::array::from_fn(|_| r.random_range(0..=1u8));
        let m = r.random_range(0..=4u32);
        let n = r.random_range(0..=4u32);
        let a = r.random_range(0.0..1.0);
        let b = r.random_range(0.0..1.0);
        let t = r.random_range(0.05..0.95);
        worst = worst.max(tboson::verify_yang_baxter(bits[0], bits[1], bits[2], bits[3], m, n, a, b, t));
    }
    Ok(ComparisonReport::new("yang-baxter", Mode::Exact, worst, 1e-12, started)
        .with_samples(draws as u64)
        .with_seeds(vec![seed]))
}

/// Row operator matrix elements against indicator × one-variable skew
/// functions over the 4×4 box.
pub fn check_skew_elements(draws: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let mut r = rng::stream(seed, 5);
    let all: Vec<Partition> = partitions_in_box(4, 4);
    let ind = |c: bool| if c { 1.0 } else { 0.0 };
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let x = r.random_range(0.0..1.0);
        let t = r.random_range(0.05..0.95);
        for lam in &all {
            for mu in &all {
                let (l, m) = (lam.len(), mu.len());
                let p = skew_p_one(lam, mu, x, t);
                let q = skew_q_one(lam, mu, x, t);
                let cases = [
                    (SkewOperator::A, lam, mu, ind(l == m) * p),
                    (SkewOperator::B, lam, mu, ind(l == m + 1) * p),
                    (SkewOperator::CBar, mu, lam, ind(l == m + 1) * q),
                    (SkewOperator::DBar, mu, lam, ind(l == m) * q),
                ];
                for (op, bra, ket, want) in cases {
                    let got = tboson::row_operator_element(op, x, bra, ket, 4, t)?;
                    worst = worst.max((got - want).abs());
                }
            }
        }
    }
    Ok(ComparisonReport::new("skew-elements", Mode::Exact, worst, 1e-13, started)
        .with_samples(draws as u64)
        .with_seeds(vec![seed]))
}

/// The four exchange relations for `L <= max_sites`, occupancy `<= cap`.
pub fn check_exchange(draws: usize, max_sites: usize, cap: u32, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let mut r = rng::stream(seed, 6);
    let mut worst: f64 = 0.0;
    for _ in 0..draws {
        let which = [Exchange::CA, Exchange::CB, Exchange::DA, Exchange::DB][r.random_range(0..4usize)];
        let sites = r.random_range(1..=max_sites);
        let a = r.random_range(0.0..1.0);
        let b = r.random_range(0.0..1.0);
        let t = r.random_range(0.05..0.95);
        worst = worst.max(tboson::verify_exchange_relation(which, sites, cap, a, b, t)?);
    }
    Ok(ComparisonReport::new("exchange", Mode::Exact, worst, 1e-11, started)
        .with_samples(draws as u64)
        .with_seeds(vec![seed]))
}

/// Exact transition law of the worked example against `(1-t)/(1-t²)`.
pub fn check_rsk_worked_example(t: f64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let lv = |v: Vec<Vec<u32>>| PartitionArray::from_levels(v);
    let start = lv(vec![vec![5], vec![6, 2], vec![9, 2, 2], vec![10, 6, 2, 1]])?;
    let near = lv(vec![vec![5], vec![6, 3], vec![9, 3, 2], vec![10, 7, 2, 1]])?;
    let far = lv(vec![vec![5], vec![6, 3], vec![9, 3, 2], vec![10, 6, 3, 1]])?;
    let law = rsk::rsk_signal_distribution(&start, 2, t)?;
    let r = (1.0 - t) / (1.0 - t * t);
    let prob = |s: &PartitionArray| law.iter().find(|(x, _)| x == s).map_or(0.0, |x| x.1);
    let total: f64 = law.iter().map(|x| x.1).sum();
    let err = (prob(&near) - r).abs().max((prob(&far) - (1.0 - r)).abs()).max((total - 1.0).abs());
    Ok(ComparisonReport::new("rsk-worked-example", Mode::Exact, err, 1e-14, started)
        .with_details(json!({ "t": t, "outcomes": law.len(), "R": r })))
}

/// Array, set and PushTASEP dynamics fed the same signals and uniforms for
/// `events` signals; counts the events after which they disagree.
pub fn check_coupling(rates: &[f64], t: f64, events: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let clock = EventClock::new(rates)?;
    let n = rates.len();
    let mut r = rng::stream(seed, 7);
    let mut arr = PartitionArray::zeros(n);
    let mut sets = SetSystem::full(n);
    let mut push = PushTasepState::packed(n);
    let mut mismatches = 0u64;
    let mut u = vec![0.0; n];
    for _ in 0..events {
        let (_, level) = clock.next_event(&mut r);
        u.iter_mut().for_each(|x| *x = r.random());
        rsk::rsk_apply_signal(&mut arr, level, t, &u)?;
        arr.check_interlacing()?;
        rsk::sets_apply_signal(&mut sets, level, t, &u)?;
        push.ring(level, t, &u)?;
        let same = rsk::array_from_sets(&sets)? == arr && PushTasepState::from_sets(&sets) == push;
        mismatches += (!same) as u64;
    }
    Ok(ComparisonReport::new("rsk-coupling", Mode::Exact, mismatches as f64, 0.5, started)
        .with_samples(events as u64)
        .with_seeds(vec![seed])
        .with_details(json!({ "levels": n, "final_array": arr })))
}

/// Counts of `(y - λ'_1(λ^(y)(τ)))` over the grid, from the array dynamics.
pub fn rsk_field_counts(
    rates: &[f64],
    t: f64,
    times: &[f64],
    ys: &[usize],
    samples: usize,
    rng: &mut Rng,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    let horizon = times.iter().cloned().fold(0.0, f64::max);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let tr = rsk::run_rsk_with(rates, t, horizon, times, false, rng)?;
        let key: Vec<u32> = tr
            .snapshots
            .iter()
            .flat_map(|s| ys.iter().map(move |&y| y as u32 - s.array.first_column(y)))
            .collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Counts of `h(τ, y)` over the grid, from the half-continuous model.
pub fn height_field_counts(
    rates: &[f64],
    t: f64,
    times: &[f64],
    ys: &[usize],
    samples: usize,
    rng: &mut Rng,
) -> Result<BTreeMap<Vec<u32>, u64>> {
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let s = six_vertex::sample_half_continuous(t, rates, times, rng)?;
        let key: Vec<u32> = s
            .heights
            .iter()
            .flat_map(|h| ys.iter().map(move |&y| h[y - 1]))
            .collect();
        *counts.entry(key).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Two-sample chi-square between the RSK first-column field and the
/// half-continuous height field, repeated under three seeds; the statistic
/// is the second largest p-value, so it exceeds the threshold exactly when a
/// majority of the runs pass.
pub fn check_rsk_field(
    rates: &[f64],
    t: f64,
    times: &[f64],
    ys: &[usize],
    samples: usize,
    seed: u64,
) -> Result<ComparisonReport> {
    let started = Instant::now();
    let n = rates.len();
    if let Some(&y) = ys.iter().find(|&&y| y == 0 || y > n) {
        return Err(Error::OutOfDomain(format!("row {y} outside 1..={n}")));
    }
    let seeds: Vec<u64> = (0..3).map(|j| rng::child_seed(seed, j)).collect();
    let mut runs = Vec::new();
    for &s in &seeds {
        let mut ra = rng::stream(s, 8);
        let mut rb = rng::stream(s, 9);
        let a = rsk_field_counts(rates, t, times, ys, samples, &mut ra)?;
        let b = height_field_counts(rates, t, times, ys, samples, &mut rb)?;
        runs.push(chi_square_homogeneity(&a, &b)?);
    }
    let mut ps: Vec<f64> = runs.iter().map(|c| c.p_value).collect();
    ps.sort_by(|x, y| y.partial_cmp(x).unwrap());
    Ok(ComparisonReport::new("rsk-field", Mode::ChiSquare, ps[1], 1e-3, started)
        .with_samples(samples as u64)
        .with_seeds(seeds)
        .with_details(json!({ "runs": runs, "times": times, "ys": ys, "rates": rates, "t": t })))
}

/// Exact law of `λ^(level)` in the ascending process with `a = c` and the
/// `K`-fold discretized Plancherel specialization.
pub fn plancherel_law(c: &[f64], t: f64, tau: f64, level: usize, k: usize) -> Result<DiscreteDistribution<Partition>> {
    let spec = HLProcessSpec::plancherel(t, c[..level].to_vec(), tau, k)?;
    let cap = hl_process::choose_row_cap(&spec)?;
    HlLattice::new(&spec, cap)?.level_marginal(level)
}

/// Richardson extrapolation `2 law(2K) - law(K)`, clipped at zero and
/// renormalized.
pub fn plancherel_reference(c: &[f64], t: f64, tau: f64, level: usize, k: usize) -> Result<DiscreteDistribution<Partition>> {
    let coarse = plancherel_law(c, t, tau, level, k)?;
    let fine = plancherel_law(c, t, tau, level, 2 * k)?;
    let mut w: BTreeMap<Partition, f64> = BTreeMap::new();
    for (p, v) in fine.iter() {
        *w.entry(p.clone()).or_insert(0.0) += 2.0 * v;
    }
    for (p, v) in coarse.iter() {
        *w.entry(p.clone()).or_insert(0.0) -= v;
    }
    DiscreteDistribution::from_weights(w.into_iter().map(|(p, v)| (p, v.max(0.0))))
}

/// Law of `λ^(level)(τ)` under the array dynamics against the discretized
/// Plancherel HL laws.
///
/// Passes when the empirical TV to the `K` law is below `0.02`, the exact
/// bias ratio `TV(law(2K), ref) / TV(law(K), ref)` is below `0.7` (with `ref`
/// extrapolated from `8K` and `16K`), and the chi-square p-value of the
/// sample against `ref` exceeds `1e-3`.
#[allow(clippy::too_many_arguments)]
pub fn check_plancherel_marginal(
    c: &[f64],
    t: f64,
    tau: f64,
    level: usize,
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<ComparisonReport> {
    let started = Instant::now();
    if k < 8 {
        return Err(Error::Constraint(format!("K = {k} is too small; use K >= 8")));
    }
    if level == 0 || level > c.len() {
        return Err(Error::OutOfDomain(format!("level {level} outside 1..={}", c.len())));
    }
    let rates = &c[..level];
    let mut r = rng::stream(seed, 10);
    let mut counts: BTreeMap<Partition, u64> = BTreeMap::new();
    for _ in 0..samples {
        let tr = rsk::run_rsk_with(rates, t, tau, &[tau], false, &mut r)?;
        *counts.entry(tr.snapshots[0].array.partition(level)).or_insert(0) += 1;
    }
    let empirical = DiscreteDistribution::from_counts(&counts)?;
    let law_k = plancherel_law(c, t, tau, level, k)?;
    let law_2k = plancherel_law(c, t, tau, level, 2 * k)?;
    let reference = plancherel_reference(c, t, tau, level, 8 * k)?;
    let tv_emp_k = tv_distance(&empirical, &law_k);
    let tv_emp_2k = tv_distance(&empirical, &law_2k);
    let bias_k = tv_distance(&law_k, &reference);
    let bias_2k = tv_distance(&law_2k, &reference);
    let ratio = bias_2k / bias_k;
    let chi = chi_square_gof(&counts, &reference)?;
    let mut rep = ComparisonReport::new("plancherel", Mode::Tv, tv_emp_k, 0.02, started)
        .with_samples(samples as u64)
        .with_seeds(vec![seed])
        .with_details(json!({
            "K": k,
            "tv_empirical_K": tv_emp_k,
            "tv_empirical_2K": tv_emp_2k,
            "tv_exact_K_vs_reference": bias_k,
            "tv_exact_2K_vs_reference": bias_2k,
            "bias_ratio": ratio,
            "chi_square_vs_reference": chi,
        }));
    rep.pass = rep.pass && ratio < 0.7 && chi.p_value > 1e-3;
    Ok(rep)
}

/// Structural invariants over Monte Carlo runs: path conservation and height
/// monotonicity of sampled six vertex states, interlacing after every RSK
/// event, monotone half-continuous heights, and normalization of exact laws.
/// The statistic counts violations.
pub fn check_invariants(samples: usize, seed: u64) -> Result<ComparisonReport> {
    let started = Instant::now();
    let mut r = rng::stream(seed, 11);
    let mut violations = 0u64;
    let mut worst_norm: f64 = 0.0;
    for j in 0..samples {
        let (m, n) = (1 + j % 4, 1 + (j / 4) % 4);
        let strings = SignString::all_in_class(Sign::Plus, m, n);
        let s = strings[r.random_range(0..strings.len())].clone();
        let p = random_matched_params(m, n, &mut r);
        let domain = JaggedDomain::new(m, n, s)?;
        let state = six_vertex::sample_state(&p, &domain, &mut r)?;
        violations += state.check_conservation().is_err() as u64;
        for x in 1..=m {
            for y in 1..=domain.column_height(x) {
                let h = state.height(x + 1, y)?;
                let left = state.height(x, y)?;
                let below = if y > 1 { state.height(x + 1, y - 1)? } else { 0 };
                violations += (h > left || h < below || h > below + 1) as u64;
            }
        }
    }
    let rates = [1.0, 0.8, 1.2, 0.6];
    for _ in 0..samples {
        let tr = rsk::run_rsk_with(&rates, 0.4, 2.0, &[2.0], true, &mut r)?;
        let mut arr = PartitionArray::zeros(rates.len());
        for ev in &tr.events {
            let mut levels = arr.levels().to_vec();
            for ch in &ev.changes {
                levels[ch.level - 1][ch.row - 1] = ch.value;
            }
            match PartitionArray::from_levels(levels) {
                Ok(a) => arr = a,
                Err(_) => {
                    violations += 1;
                    break;
                }
            }
        }
        violations += (arr != tr.final_state) as u64;
        let hc = six_vertex::sample_half_continuous(0.4, &rates, &[0.5, 1.0, 2.0], &mut r)?;
        for h in &hc.heights {
            let mut prev = 0;
            for &v in h {
                violations += (v < prev || v > prev + 1) as u64;
                prev = v;
            }
        }
    }
    for m in 1..=3 {
        for n in 1..=3 {
            for s in SignString::all_in_class(Sign::Plus, m, n) {
                let p = random_matched_params(m, n, &mut r);
                let domain = JaggedDomain::new(m, n, s.clone())?;
                let sv = six_vertex::exact_outgoing_distribution(&p, &domain)?;
                let lat = hl_lattice(&p, &s)?;
                let hl = lat.support_distribution()?;
                for total in [sv.total(), hl.total(), lat.first_column_distribution()?.total()] {
                    worst_norm = worst_norm.max((total - 1.0).abs());
                }
                worst_norm = worst_norm.max(lat.mass_deficit());
            }
        }
    }
    violations += (worst_norm >= 1e-10) as u64;
    Ok(ComparisonReport::new("invariants", Mode::Exact, violations as f64, 0.5, started)
        .with_samples(samples as u64)
        .with_seeds(vec![seed])
        .with_details(json!({ "worst_normalization_error": worst_norm })))
}

/// Scale of [`verify_all`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    /// Reduced sample sizes; finishes in seconds.
    Quick,
    /// Full desk-scale sizes.
    Desk,
}

impl std::str::FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Level::Quick),
            "desk" => Ok(Level::Desk),
            other => Err(Error::Constraint(format!("unknown level {other}; use quick or desk"))),
        }
    }
}

/// Every check at the given scale.
pub fn verify_all(level: Level, seed: u64) -> Result<Vec<ComparisonReport>> {
    let desk = level == Level::Desk;
    let pick = |quick: usize, full: usize| if desk { full } else { quick };
    let s = |j: u64| rng::child_seed(seed, j);
    let field_rates = [1.0, 0.6, 1.4];
    Ok(vec![
        check_yang_baxter(pick(100, 1000), s(1))?,
        check_skew_elements(pick(2, 10), s(2))?,
        check_exchange(pick(10, 100), 3, 3, s(3))?,
        check_support_sweep(pick(2, 3), pick(1, 5), s(4))?,
        check_height_sweep(pick(2, 3), pick(1, 5), s(5))?,
        check_moment_sweep(pick(5, 50), s(6))?,
        check_contour_invariance(pick(2, 10), s(7))?,
        check_coupling(&[1.0, 0.9, 1.1, 0.7, 1.3, 0.8], 0.45, pick(1000, 10_000), s(8))?,
        check_rsk_worked_example(0.35)?,
        check_rsk_field(&field_rates, 0.4, &[0.5, 1.0, 2.0], &[1, 2, 3], pick(5_000, 100_000), s(9))?,
        check_plancherel_marginal(&[1.0, 0.8], 0.3, 0.8, 2, 64, pick(20_000, 100_000), s(10))?,
        check_invariants(pick(50, 500), s(11))?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn tv_examples() {
        let a = DiscreteDistribution::from_weights(vec![(p(&[]), 0.8), (p(&[1]), 0.2)]).unwrap();
        let b = DiscreteDistribution::from_weights(vec![(p(&[]), 0.7), (p(&[1]), 0.3)]).unwrap();
        assert!((tv_distance(&a, &b) - 0.1).abs() < 1e-15);
        assert_eq!(tv_distance(&a, &a), 0.0);
        let c = DiscreteDistribution::point_mass(p(&[2]));
        assert!((tv_distance(&a, &c) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn chi_square_fixture() {
        let e = DiscreteDistribution::from_weights(vec![(0u8, 0.5), (1, 0.3), (2, 0.2)]).unwrap();
        let counts: BTreeMap<u8, u64> = [(0, 480), (1, 310), (2, 210)].into_iter().collect();
        let c = chi_square_gof(&counts, &e).unwrap();
        assert!((c.statistic - 1.633_333_333_3).abs() < 1e-9);
        assert_eq!(c.dof, 2);
        assert!((c.p_value - (-c.statistic / 2.0).exp()).abs() < 1e-12);
        let exact: BTreeMap<u8, u64> = [(0, 500), (1, 300), (2, 200)].into_iter().collect();
        assert_eq!(chi_square_gof(&exact, &e).unwrap().statistic, 0.0);
        let bad: BTreeMap<u8, u64> = [(0, 500), (3, 1)].into_iter().collect();
        assert!(chi_square_gof(&bad, &e).is_err());
    }

    #[test]
    fn small_matches() {
        let params = SixVertexParams::matched(0.25, vec![0.5, 0.3], vec![0.5, 0.6]).unwrap();
        for s in SignString::all_in_class(Sign::Plus, 2, 2) {
            assert!(check_support_match(2, 2, &s, &params).unwrap().pass);
            assert!(check_height_match(2, 2, &s, &params).unwrap().pass);
        }
    }

    #[test]
    fn moments_against_exact() {
        let params = SixVertexParams::matched(0.6, vec![0.3, 0.4, 0.2], vec![0.5, 0.35]).unwrap();
        let c = compare_moments(&[3, 1], &params, &QuadratureOptions::default()).unwrap();
        assert!(c.worst_ratio() < 1.0, "{c:?}");
    }

    #[test]
    fn plancherel_level_one_is_poisson() {
        // λ^(1)_1(τ) is Poisson(c τ); the K-discretized law converges to it
        let (c, tau) = (0.9, 1.3);
        let law = plancherel_law(&[c], 0.4, tau, 1, 256).unwrap();
        let mut pmf = (-c * tau).exp();
        let mut tv = 0.0;
        for r in 0..40u32 {
            let key = if r == 0 { p(&[]) } else { p(&[r]) };
            tv += (law.prob(&key) - pmf).abs();
            pmf *= c * tau / (r + 1) as f64;
        }
        assert!(tv / 2.0 < 0.01, "{tv}");
    }

    #[test]
    fn field_test_detects_wrong_t() {
        let rates = [1.0, 0.6, 1.4];
        let (times, ys) = ([0.5, 1.0, 2.0], [1, 2, 3]);
        let a = rsk_field_counts(&rates, 0.4, &times, &ys, 20_000, &mut rng::stream(1, 0)).unwrap();
        let b = height_field_counts(&rates, 0.4, &times, &ys, 20_000, &mut rng::stream(2, 0)).unwrap();
        let c = height_field_counts(&rates, 0.6, &times, &ys, 20_000, &mut rng::stream(3, 0)).unwrap();
        assert!(chi_square_homogeneity(&a, &b).unwrap().p_value > 1e-4);
        assert!(chi_square_homogeneity(&a, &c).unwrap().p_value < 1e-6);
    }

    #[test]
    fn quick_reports_serialize() {
        let rep = check_rsk_worked_example(0.3).unwrap();
        assert!(rep.pass);
        let js = serde_json::to_value(&rep).unwrap();
        assert_eq!(js["mode"], "exact");
        assert!(rep.summary_line().starts_with("PASS"));
    }
}
