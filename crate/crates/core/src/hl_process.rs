//! Hall–Littlewood processes indexed by a ± string.
//!
//! For `S` with `M` pluses and `N` minuses, starting with `+` and ending with
//! `-`, the process is a sequence `λ(1), …, λ(M+N-1)` (with `λ(0) = λ(M+N) = ∅`)
//! whose weight is a product of one-variable skew functions: step `i` uses
//! `P_{λ(i)/λ(i-1)}(a_{p(i)})` when `S(i) = +` and `Q_{λ(i-1)/λ(i)}(b_{N-m(i)+1})`
//! when `S(i) = -`.
//!
//! Exact computations run on the lattice of partitions with parts at most a
//! row cap `R`. The cap is certified by comparing the enumerated mass with
//! the closed-form normalization [`normalization_pi`]: the difference is
//! exactly the mass of sequences with some part larger than `R`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::dist::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::partitions::{
    interlacing_above, interlacing_below, partition_from_string, partitions_in_box, skew_p_parts,
    skew_q_parts, Partition, Sign, SignString, SkewDiagram,
};
use crate::rng::Rng;

/// Largest truncated mass accepted by the exact routines.
pub const TAIL_TOLERANCE: f64 = 1e-12;

/// Upper limit for automatic row cap selection.
pub const MAX_ROW_CAP: u32 = 400;

#[derive(Deserialize)]
struct RawSpec {
    t: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    #[serde(rename = "S", alias = "s")]
    s: Option<SignString>,
}

/// Parameters of a Hall–Littlewood process.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct HLProcessSpec {
    pub t: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    #[serde(rename = "S")]
    pub s: SignString,
}

impl TryFrom<RawSpec> for HLProcessSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let s = raw
            .s
            .unwrap_or_else(|| SignString::ascending(raw.a.len(), raw.b.len()));
        HLProcessSpec::new(raw.t, raw.a, raw.b, s)
    }
}

/// Checks `0 < t < 1`, `a_i, b_j >= 0` and `a_i b_j < 1`.
pub(crate) fn check_matched_params(t: f64, a: &[f64], b: &[f64]) -> Result<()> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Constraint(format!("0 < t < 1 fails for t = {t}")));
    }
    for (i, &x) in a.iter().enumerate() {
        if !(x >= 0.0) || !x.is_finite() {
            return Err(Error::Constraint(format!("a_{} = {x} must be >= 0", i + 1)));
        }
    }
    for (j, &y) in b.iter().enumerate() {
        if !(y >= 0.0) || !y.is_finite() {
            return Err(Error::Constraint(format!("b_{} = {y} must be >= 0", j + 1)));
        }
    }
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if !(x * y < 1.0) {
                return Err(Error::Constraint(format!(
                    "a_{} b_{} < 1 fails: {x} * {y} = {}",
                    i + 1,
                    j + 1,
                    x * y
                )));
            }
        }
    }
    Ok(())
}

impl HLProcessSpec {
    pub fn new(t: f64, a: Vec<f64>, b: Vec<f64>, s: SignString) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Constraint("M >= 1 and N >= 1 are required".into()));
        }
        check_matched_params(t, &a, &b)?;
        s.require_domain_class(a.len(), b.len())?;
        Ok(HLProcessSpec { t, a, b, s })
    }

    /// The ascending process `S = (+^M, -^N)`.
    pub fn ascending(t: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let s = SignString::ascending(a.len(), b.len());
        Self::new(t, a, b, s)
    }

    /// Ascending process whose `b` side is `k` equal variables
    /// `tau / ((1 - t) k)`, approximating the Plancherel specialization.
    pub fn plancherel(t: f64, a: Vec<f64>, tau: f64, k: usize) -> Result<Self> {
        if k == 0 || !(tau >= 0.0) {
            return Err(Error::Constraint("K >= 1 and tau >= 0 are required".into()));
        }
        let b = vec![tau / ((1.0 - t) * k as f64); k];
        Self::ascending(t, a, b)
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn steps(&self) -> usize {
        self.s.len()
    }

    /// Sign and variable used at step `i` (1-based).
    pub fn step_param(&self, i: usize) -> (Sign, f64) {
        match self.s.at(i) {
            Sign::Plus => (Sign::Plus, self.a[self.s.p(i) - 1]),
            Sign::Minus => (Sign::Minus, self.b[self.n() - self.s.m(i)]),
        }
    }

    /// Bound on the number of rows of `λ(i)`: `min(p(i), N - m(i))`.
    pub fn max_rows(&self, i: usize) -> usize {
        self.s.p(i).min(self.n() - self.s.m(i))
    }

    fn max_rows_all(&self) -> Vec<usize> {
        // one pass instead of repeated prefix counts
        let mut out = Vec::with_capacity(self.steps() + 1);
        let (mut p, mut m) = (0, 0);
        out.push(0);
        for &sg in self.s.signs() {
            match sg {
                Sign::Plus => p += 1,
                Sign::Minus => m += 1,
            }
            out.push(p.min(self.n() - m));
        }
        out
    }

    fn step_params_all(&self) -> Vec<(Sign, f64)> {
        let (mut p, mut m) = (0, 0);
        self.s
            .signs()
            .iter()
            .map(|&sg| match sg {
                Sign::Plus => {
                    p += 1;
                    (sg, self.a[p - 1])
                }
                Sign::Minus => {
                    m += 1;
                    (sg, self.b[self.n() - m])
                }
            })
            .collect()
    }

    /// Largest product `a_i b_j`.
    pub fn rho(&self) -> f64 {
        let amax = self.a.iter().cloned().fold(0.0, f64::max);
        let bmax = self.b.iter().cloned().fold(0.0, f64::max);
        amax * bmax
    }
}

/// A sequence `λ(1), …, λ(M+N-1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PartitionSequence(pub Vec<Partition>);

impl PartitionSequence {
    pub fn partitions(&self) -> &[Partition] {
        &self.0
    }

    /// `λ(i)` for `0 <= i <= len + 1`, with empty ends.
    fn at(&self, i: usize) -> &Partition {
        static EMPTY: Partition = Partition::empty();
        if i == 0 || i > self.0.len() {
            &EMPTY
        } else {
            &self.0[i - 1]
        }
    }
}

impl fmt::Display for PartitionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Unnormalized weight of a sequence.
pub fn sequence_weight(seq: &PartitionSequence, spec: &HLProcessSpec) -> Result<f64> {
    let n = spec.steps();
    if seq.0.len() + 1 != n {
        return Err(Error::LengthMismatch(format!(
            "sequence has {} partitions, S needs {}",
            seq.0.len(),
            n - 1
        )));
    }
    let mut w = 1.0;
    for (i, (sign, x)) in spec.step_params_all().into_iter().enumerate() {
        let prev = seq.at(i).parts();
        let cur = seq.at(i + 1).parts();
        w *= match sign {
            Sign::Plus => skew_p_parts(cur, prev, x, spec.t),
            Sign::Minus => skew_q_parts(prev, cur, x, spec.t),
        };
        if w == 0.0 {
            break;
        }
    }
    Ok(w)
}

/// Closed-form total mass: the product over pairs `i < j` with
/// `(S(i), S(j)) = (+, -)` of `(1 - t a b) / (1 - a b)`.
pub fn normalization_pi(spec: &HLProcessSpec) -> f64 {
    let params = spec.step_params_all();
    let mut pi = 1.0;
    for (i, &(si, a)) in params.iter().enumerate() {
        if si != Sign::Plus {
            continue;
        }
        for &(sj, b) in &params[i + 1..] {
            if sj == Sign::Minus {
                pi *= (1.0 - spec.t * a * b) / (1.0 - a * b);
            }
        }
    }
    pi
}

/// Required first-column change at a step with sign `s` and support letter `t`.
pub fn column_delta(s: Sign, t: Sign) -> i8 {
    match (s, t) {
        (Sign::Plus, Sign::Plus) | (Sign::Minus, Sign::Minus) => 0,
        (Sign::Plus, Sign::Minus) => 1,
        (Sign::Minus, Sign::Plus) => -1,
    }
}

fn letter_for_delta(s: Sign, delta: i64) -> Option<Sign> {
    match (s, delta) {
        (Sign::Plus, 0) | (Sign::Minus, -1) => Some(Sign::Plus),
        (Sign::Plus, 1) | (Sign::Minus, 0) => Some(Sign::Minus),
        _ => None,
    }
}

/// First column lengths `λ(i)'_1` for `i = 1..M+N-1`.
pub fn first_columns(seq: &PartitionSequence) -> Vec<u32> {
    seq.0.iter().map(|p| p.len() as u32).collect()
}

/// The support string `T` of a sequence.
pub fn support_string(seq: &PartitionSequence, s: &SignString) -> Result<SignString> {
    if seq.0.len() + 1 != s.len() {
        return Err(Error::LengthMismatch(format!(
            "sequence has {} partitions, S needs {}",
            seq.0.len(),
            s.len() - 1
        )));
    }
    let mut out = Vec::with_capacity(s.len());
    for i in 1..=s.len() {
        let delta = seq.at(i).len() as i64 - seq.at(i - 1).len() as i64;
        let letter = letter_for_delta(s.at(i), delta).ok_or_else(|| {
            Error::CorruptSequence(format!(
                "first column changes by {delta} at step {i} with S({i}) = {}",
                s.at(i).as_char()
            ))
        })?;
        out.push(letter);
    }
    Ok(SignString::new(out))
}

/// The support `ν(T)/μ(S)` of a sequence.
pub fn support_of_sequence(seq: &PartitionSequence, s: &SignString) -> Result<SkewDiagram> {
    let t = support_string(seq, s)?;
    let (m, n) = (s.plus_count(), s.minus_count());
    SkewDiagram::new(partition_from_string(&t, m, n)?, partition_from_string(s, m, n)?)
}

struct Level {
    states: Vec<Partition>,
    index: HashMap<Partition, u32>,
}

impl Level {
    fn new(rows: usize, cap: u32) -> Self {
        let states = partitions_in_box(rows, cap);
        let index = states
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        Level { states, index }
    }
}

/// Sparse transitions between consecutive levels, grouped by source state.
struct StepTable {
    offsets: Vec<u32>,
    to: Vec<u32>,
    weight: Vec<f64>,
    delta: Vec<i8>,
}

impl StepTable {
    fn build(from: &Level, to: &Level, sign: Sign, x: f64, t: f64, rows: usize, cap: u32) -> Self {
        let mut table = StepTable {
            offsets: Vec::with_capacity(from.states.len() + 1),
            to: Vec::new(),
            weight: Vec::new(),
            delta: Vec::new(),
        };
        table.offsets.push(0);
        for src in &from.states {
            let targets = match sign {
                Sign::Plus => interlacing_above(src, rows, cap),
                Sign::Minus => interlacing_below(src, rows),
            };
            for dst in targets {
                let w = match sign {
                    Sign::Plus => skew_p_parts(dst.parts(), src.parts(), x, t),
                    Sign::Minus => skew_q_parts(src.parts(), dst.parts(), x, t),
                };
                if w > 0.0 {
                    if let Some(&j) = to.index.get(&dst) {
                        table.to.push(j);
                        table.weight.push(w);
                        table.delta.push((dst.len() as i64 - src.len() as i64) as i8);
                    }
                }
            }
            table.offsets.push(table.to.len() as u32);
        }
        table
    }

    fn range(&self, src: usize) -> std::ops::Range<usize> {
        self.offsets[src] as usize..self.offsets[src + 1] as usize
    }

    /// `out[dst] += v[src] * w` over transitions, optionally filtered by delta.
    fn push_forward(&self, v: &[f64], out_len: usize, only: Option<i8>) -> Vec<f64> {
        let mut out = vec![0.0; out_len];
        for (src, &mass) in v.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for e in self.range(src) {
                if only.is_none_or(|d| d == self.delta[e]) {
                    out[self.to[e] as usize] += mass * self.weight[e];
                }
            }
        }
        out
    }

    fn pull_back(&self, g: &[f64], src_len: usize) -> Vec<f64> {
        (0..src_len)
            .map(|src| {
                self.range(src)
                    .map(|e| self.weight[e] * g[self.to[e] as usize])
                    .sum()
            })
            .collect()
    }
}

/// The truncated partition lattice of a process together with its transfer
/// tables.
pub struct HlLattice {
    spec: HLProcessSpec,
    row_cap: u32,
    levels: Vec<Arc<Level>>,
    steps: Vec<Arc<StepTable>>,
    forward_total: f64,
}

impl HlLattice {
    /// Builds the lattice and certifies that the truncated mass is below
    /// [`TAIL_TOLERANCE`].
    pub fn new(spec: &HLProcessSpec, row_cap: u32) -> Result<Self> {
        let lat = Self::new_unchecked(spec, row_cap)?;
        let deficit = lat.mass_deficit();
        if !(deficit < TAIL_TOLERANCE) {
            return Err(Error::Truncation(format!(
                "row cap {row_cap} loses mass {deficit:.3e} >= {TAIL_TOLERANCE:e}"
            )));
        }
        Ok(lat)
    }

    /// Builds the lattice without checking the truncation error.
    pub fn new_unchecked(spec: &HLProcessSpec, row_cap: u32) -> Result<Self> {
        if row_cap == 0 {
            return Err(Error::Truncation("row cap must be at least 1".into()));
        }
        let rows = spec.max_rows_all();
        let mut by_rows: HashMap<usize, Arc<Level>> = HashMap::new();
        let levels: Vec<Arc<Level>> = rows
            .iter()
            .map(|&r| {
                by_rows
                    .entry(r)
                    .or_insert_with(|| Arc::new(Level::new(r, row_cap)))
                    .clone()
            })
            .collect();
        let mut cache: HashMap<(Sign, u64, usize, usize), Arc<StepTable>> = HashMap::new();
        let mut steps = Vec::with_capacity(spec.steps());
        for (i, (sign, x)) in spec.step_params_all().into_iter().enumerate() {
            let key = (sign, x.to_bits(), rows[i], rows[i + 1]);
            let table = cache
                .entry(key)
                .or_insert_with(|| {
                    Arc::new(StepTable::build(
                        &levels[i],
                        &levels[i + 1],
                        sign,
                        x,
                        spec.t,
                        rows[i + 1],
                        row_cap,
                    ))
                })
                .clone();
            steps.push(table);
        }
        let mut lat = HlLattice {
            spec: spec.clone(),
            row_cap,
            levels,
            steps,
            forward_total: 0.0,
        };
        lat.forward_total = lat.forward(&vec![None; spec.steps()]).last().unwrap()[0];
        Ok(lat)
    }

    pub fn spec(&self) -> &HLProcessSpec {
        &self.spec
    }

    pub fn row_cap(&self) -> u32 {
        self.row_cap
    }

    /// Total weight of all sequences in the truncated lattice.
    pub fn total_mass(&self) -> f64 {
        self.forward_total
    }

    /// Relative mass lost to truncation, `1 - Z_R / Π^S`.
    pub fn mass_deficit(&self) -> f64 {
        1.0 - self.forward_total / normalization_pi(&self.spec)
    }

    /// Number of states at level `i`.
    pub fn level_size(&self, i: usize) -> usize {
        self.levels[i].states.len()
    }

    /// Forward masses with optional per-step column constraints.
    fn forward(&self, constraint: &[Option<i8>]) -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        out.push(vec![1.0]);
        for (i, step) in self.steps.iter().enumerate() {
            let next = step.push_forward(&out[i], self.levels[i + 1].states.len(), constraint[i]);
            out.push(next);
        }
        out
    }

    fn backward(&self) -> Vec<Vec<f64>> {
        let n = self.steps.len();
        let mut out = vec![Vec::new(); n + 1];
        out[n] = vec![1.0];
        for i in (0..n).rev() {
            out[i] = self.steps[i].pull_back(&out[i + 1], self.levels[i].states.len());
        }
        out
    }

    /// Exact law of the support `ν(T)/μ(S)`, one constrained DP per
    /// candidate `T`.
    pub fn support_distribution(&self) -> Result<DiscreteDistribution<SkewDiagram>> {
        let (m, n) = (self.spec.m(), self.spec.n());
        let mu = partition_from_string(&self.spec.s, m, n)?;
        let mut weights = Vec::new();
        for t in SignString::all_with_counts(m, n) {
            let nu = partition_from_string(&t, m, n)?;
            if !nu.contains(&mu) {
                continue;
            }
            let constraint: Vec<Option<i8>> = self
                .spec
                .s
                .signs()
                .iter()
                .zip(t.signs())
                .map(|(&s, &l)| Some(column_delta(s, l)))
                .collect();
            let mass = self.forward(&constraint).last().unwrap()[0];
            weights.push((SkewDiagram::new(nu, mu.clone())?, mass));
        }
        Ok(DiscreteDistribution::from_weights(weights)?.with_deficit(self.mass_deficit()))
    }

    /// Exact joint law of `(λ(1)'_1, …, λ(M+N-1)'_1)`, computed by branching on
    /// the first column change at every step.
    pub fn first_column_distribution(&self) -> Result<DiscreteDistribution<Vec<u32>>> {
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.steps.len());
        self.first_column_rec(0, vec![1.0], 0, &mut path, &mut out);
        Ok(DiscreteDistribution::from_weights(out)?.with_deficit(self.mass_deficit()))
    }

    fn first_column_rec(
        &self,
        i: usize,
        v: Vec<f64>,
        col: u32,
        path: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, f64)>,
    ) {
        if i == self.steps.len() {
            out.push((path[..path.len() - 1].to_vec(), v[0]));
            return;
        }
        let deltas: [i8; 2] = match self.spec.s.signs()[i] {
            Sign::Plus => [0, 1],
            Sign::Minus => [-1, 0],
        };
        for d in deltas {
            let next_col = col as i64 + d as i64;
            if next_col < 0 {
                continue;
            }
            let next = self.steps[i].push_forward(&v, self.levels[i + 1].states.len(), Some(d));
            if next.iter().all(|&x| x == 0.0) {
                continue;
            }
            path.push(next_col as u32);
            self.first_column_rec(i + 1, next, next_col as u32, path, out);
            path.pop();
        }
    }

    /// Exact law of `λ(i)` for `1 <= i <= M+N-1`.
    pub fn level_marginal(&self, i: usize) -> Result<DiscreteDistribution<Partition>> {
        if i == 0 || i >= self.steps.len() {
            return Err(Error::OutOfDomain(format!(
                "level {i} is not in 1..={}",
                self.steps.len() - 1
            )));
        }
        let f = self.forward(&vec![None; self.steps.len()]);
        let g = self.backward();
        let w = self.levels[i]
            .states
            .iter()
            .enumerate()
            .map(|(j, p)| (p.clone(), f[i][j] * g[i][j]));
        Ok(DiscreteDistribution::from_weights(w)?.with_deficit(self.mass_deficit()))
    }

    /// Exact law of the whole sequence (exponential in the number of steps).
    pub fn sequence_distribution(&self) -> Result<DiscreteDistribution<PartitionSequence>> {
        let g = self.backward();
        let mut out = Vec::new();
        let mut idx = Vec::with_capacity(self.steps.len());
        self.sequence_rec(0, 0, 1.0, &g, &mut idx, &mut out);
        Ok(DiscreteDistribution::from_weights(out)?.with_deficit(self.mass_deficit()))
    }

    fn sequence_rec(
        &self,
        i: usize,
        src: usize,
        w: f64,
        g: &[Vec<f64>],
        idx: &mut Vec<u32>,
        out: &mut Vec<(PartitionSequence, f64)>,
    ) {
        if i == self.steps.len() {
            let seq = idx[..idx.len() - 1]
                .iter()
                .enumerate()
                .map(|(l, &j)| self.levels[l + 1].states[j as usize].clone())
                .collect();
            out.push((PartitionSequence(seq), w));
            return;
        }
        let step = &self.steps[i];
        for e in step.range(src) {
            let dst = step.to[e];
            if g[i + 1][dst as usize] == 0.0 {
                continue;
            }
            idx.push(dst);
            self.sequence_rec(i + 1, dst as usize, w * step.weight[e], g, idx, out);
            idx.pop();
        }
    }

    /// A sampler reusing this lattice.
    pub fn sampler(&self) -> HlSampler<'_> {
        HlSampler {
            lattice: self,
            backward: self.backward(),
        }
    }
}

/// Exact forward sampler built on backward masses.
pub struct HlSampler<'a> {
    lattice: &'a HlLattice,
    backward: Vec<Vec<f64>>,
}

impl HlSampler<'_> {
    pub fn sample(&self, rng: &mut Rng) -> PartitionSequence {
        let lat = self.lattice;
        let n = lat.steps.len();
        let mut src = 0usize;
        let mut seq = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n {
            let step = &lat.steps[i];
            let g = &self.backward[i + 1];
            let total = self.backward[i][src];
            let u: f64 = rng.random::<f64>() * total;
            let mut acc = 0.0;
            let mut chosen = None;
            for e in step.range(src) {
                let w = step.weight[e] * g[step.to[e] as usize];
                if w == 0.0 {
                    continue;
                }
                acc += w;
                chosen = Some(step.to[e] as usize);
                if u < acc {
                    break;
                }
            }
            src = chosen.expect("positive backward mass has an outgoing transition");
            if i + 1 < n {
                seq.push(lat.levels[i + 1].states[src].clone());
            }
        }
        PartitionSequence(seq)
    }
}

/// Smallest row cap whose truncated mass is below [`TAIL_TOLERANCE`].
pub fn choose_row_cap(spec: &HLProcessSpec) -> Result<u32> {
    let ok = |r: u32| -> Result<bool> {
        Ok(HlLattice::new_unchecked(spec, r)?.mass_deficit() < TAIL_TOLERANCE)
    };
    let mut lo = 0u32;
    let mut hi = 2u32;
    while !ok(hi)? {
        lo = hi;
        hi += (hi / 4).max(1);
        if hi > MAX_ROW_CAP {
            return Err(Error::Truncation(format!(
                "no row cap up to {MAX_ROW_CAP} reaches tolerance {TAIL_TOLERANCE:e}"
            )));
        }
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if mid >= 1 && ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Exact law of the sequence.
pub fn exact_sequence_distribution(
    spec: &HLProcessSpec,
    row_cap: u32,
) -> Result<DiscreteDistribution<PartitionSequence>> {
    HlLattice::new(spec, row_cap)?.sequence_distribution()
}

/// Exact law of the support.
pub fn exact_support_distribution(
    spec: &HLProcessSpec,
    row_cap: u32,
) -> Result<DiscreteDistribution<SkewDiagram>> {
    HlLattice::new(spec, row_cap)?.support_distribution()
}

/// Exact joint law of the first column lengths.
pub fn exact_first_column_distribution(
    spec: &HLProcessSpec,
    row_cap: u32,
) -> Result<DiscreteDistribution<Vec<u32>>> {
    HlLattice::new(spec, row_cap)?.first_column_distribution()
}

/// One exact sample.
pub fn sample_sequence(spec: &HLProcessSpec, row_cap: u32, rng: &mut Rng) -> Result<PartitionSequence> {
    let lat = HlLattice::new(spec, row_cap)?;
    let seq = lat.sampler().sample(rng);
    Ok(seq)
}

/// Counts of sampled supports.
pub fn sample_support_counts(
    spec: &HLProcessSpec,
    row_cap: u32,
    samples: usize,
    rng: &mut Rng,
) -> Result<BTreeMap<SkewDiagram, u64>> {
    let lat = HlLattice::new(spec, row_cap)?;
    let sampler = lat.sampler();
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let seq = sampler.sample(rng);
        *counts.entry(support_of_sequence(&seq, &spec.s)?).or_insert(0) += 1;
    }
    Ok(counts)
}
