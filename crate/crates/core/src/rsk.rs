//! Continuous-time Hall–Littlewood RSK dynamics.
//!
//! Three coupled descriptions of the same Markov process:
//!
//! - [`PartitionArray`]: interlacing partitions `λ^(1) ⊂ … ⊂ λ^(n)`, with
//!   `λ^(m)` keeping exactly `m` rows;
//! - [`SetSystem`]: sets `V_1, …, V_n ⊆ Z_{>=0}`, where `r ∈ V_m` iff
//!   `λ^(m)` has exactly one more row of length `<= r` than `λ^(m-1)`;
//! - [`PushTasepState`]: the element-0 projection, where site `m` is
//!   occupied iff `0 ∈ V_m`.
//!
//! A signal at level `k` consumes one uniform per level: `u[m - 1]` decides
//! the random choice made at level `m`. Feeding the same uniforms to the
//! three representations gives pathwise identical trajectories.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng as _;
use rand_distr::Exp;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::rng::{self, Rng};

/// Interlacing array of partitions; `levels[m - 1]` has exactly `m` rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawArray")]
pub struct PartitionArray {
    levels: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
struct RawArray {
    levels: Vec<Vec<u32>>,
}

impl TryFrom<RawArray> for PartitionArray {
    type Error = Error;
    fn try_from(raw: RawArray) -> Result<Self> {
        PartitionArray::from_levels(raw.levels)
    }
}

/// One row change `λ^(level)_row := value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RowChange {
    pub level: usize,
    pub row: usize,
    pub value: u32,
}

impl PartitionArray {
    /// All-zero array with `n` levels.
    pub fn zeros(n: usize) -> Self {
        PartitionArray {
            levels: (1..=n).map(|m| vec![0; m]).collect(),
        }
    }

    /// Validates row counts and interlacing.
    pub fn from_levels(levels: Vec<Vec<u32>>) -> Result<Self> {
        for (idx, lev) in levels.iter().enumerate() {
            if lev.len() != idx + 1 {
                return Err(Error::InvalidPartition(format!(
                    "level {} has {} rows, expected {}",
                    idx + 1,
                    lev.len(),
                    idx + 1
                )));
            }
            if lev.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::InvalidPartition(format!("level {} is not nonincreasing: {lev:?}", idx + 1)));
            }
        }
        let arr = PartitionArray { levels };
        arr.check_interlacing()?;
        Ok(arr)
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<u32>] {
        &self.levels
    }

    /// Rows of `λ^(m)`, zeros included.
    pub fn level(&self, m: usize) -> &[u32] {
        &self.levels[m - 1]
    }

    pub fn partition(&self, m: usize) -> Partition {
        Partition::from_unsorted(self.levels[m - 1].clone())
    }

    /// `λ'_1` of `λ^(m)`.
    pub fn first_column(&self, m: usize) -> u32 {
        self.levels[m - 1].iter().filter(|&&v| v > 0).count() as u32
    }

    /// `λ^(m+1)_{i+1} <= λ^(m)_i <= λ^(m+1)_i` for all `m`, `i`.
    pub fn check_interlacing(&self) -> Result<()> {
        for m in 1..self.levels.len() {
            let (lo, hi) = (&self.levels[m - 1], &self.levels[m]);
            for i in 0..m {
                if !(hi[i + 1] <= lo[i] && lo[i] <= hi[i]) {
                    return Err(Error::Inconsistent(format!(
                        "levels {m} and {} do not interlace at row {}: {lo:?} vs {hi:?}",
                        m + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Row `i` of `λ^(m)` is blocked when `λ^(m)_i = λ^(m-1)_{i-1}`.
    pub fn is_blocked(&self, m: usize, i: usize) -> bool {
        i > 1 && self.levels[m - 1][i - 1] == self.levels[m - 2][i - 2]
    }

    /// Row index of the nearest neighbor of `λ^(m)_i` in `λ^(m+1)`: the
    /// shortest free row `j <= i`.
    pub fn nearest_neighbor(&self, m: usize, i: usize) -> usize {
        (1..=i).rev().find(|&j| !self.is_blocked(m + 1, j)).unwrap_or(1)
    }
}

impl std::fmt::Display for PartitionArray {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .levels
            .iter()
            .map(|l| format!("({})", l.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Applies a signal at level `k`. `decide(m, R)` returns `true` for the
/// probability-`R` branch at level `m`.
pub fn rsk_apply_signal_with(
    array: &mut PartitionArray,
    k: usize,
    t: f64,
    decide: &mut dyn FnMut(usize, f64) -> bool,
) -> Result<Vec<RowChange>> {
    let n = array.n_levels();
    if k == 0 || k > n {
        return Err(Error::OutOfDomain(format!("signal level {k} outside 1..={n}")));
    }
    let mut changes = Vec::with_capacity(n - k + 1);
    let mut row = (1..=k).rev().find(|&i| !array.is_blocked(k, i)).unwrap_or(1);
    let mut old = array.levels[k - 1][row - 1];
    array.levels[k - 1][row - 1] += 1;
    changes.push(RowChange {
        level: k,
        row,
        value: old + 1,
    });
    for m in k..n {
        let next = &array.levels[m];
        let target = if next[row - 1] == old {
            row
        } else {
            let cur = &array.levels[m - 1];
            let d = cur
                .iter()
                .enumerate()
                .filter(|&(r, &v)| r + 1 != row && v == old)
                .count();
            let cnt = next.iter().filter(|&&v| v == old).count();
            let r = if cnt == d + 1 {
                1.0 - t
            } else {
                (1.0 - t) / (1.0 - t.powi(d as i32 + 1))
            };
            if decide(m + 1, r) {
                array.nearest_neighbor(m, row)
            } else {
                row + 1
            }
        };
        old = array.levels[m][target - 1];
        array.levels[m][target - 1] += 1;
        row = target;
        changes.push(RowChange {
            level: m + 1,
            row,
            value: old + 1,
        });
    }
    debug_assert!(array.check_interlacing().is_ok(), "interlacing broken: {array}");
    Ok(changes)
}

/// Applies a signal at level `k` driven by uniforms, `u[m - 1]` for level `m`.
pub fn rsk_apply_signal(array: &mut PartitionArray, k: usize, t: f64, u: &[f64]) -> Result<Vec<RowChange>> {
    if u.len() < array.n_levels() {
        return Err(Error::LengthMismatch(format!(
            "{} uniforms for {} levels",
            u.len(),
            array.n_levels()
        )));
    }
    rsk_apply_signal_with(array, k, t, &mut |m, r| u[m - 1] < r)
}

/// Replays every decision sequence and collects the resulting states.
fn enumerate_decisions<S: Ord>(
    mut run: impl FnMut(&mut dyn FnMut(usize, f64) -> bool) -> Result<S>,
) -> Result<Vec<(S, f64)>> {
    let mut out: Vec<(S, f64)> = Vec::new();
    let mut stack: Vec<Vec<bool>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        let mut taken = Vec::new();
        let mut branches = Vec::new();
        let mut prob = 1.0;
        let state = run(&mut |_, r| {
            let idx = taken.len();
            let choice = if idx < prefix.len() {
                prefix[idx]
            } else {
                if r < 1.0 {
                    branches.push(idx);
                }
                true
            };
            prob *= if choice { r } else { 1.0 - r };
            taken.push(choice);
            choice
        })?;
        for &b in &branches {
            let mut p = taken[..b].to_vec();
            p.push(false);
            stack.push(p);
        }
        match out.iter_mut().find(|(s, _)| *s == state) {
            Some(entry) => entry.1 += prob,
            None => out.push((state, prob)),
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(out)
}

impl PartialOrd for PartitionArray {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PartitionArray {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.levels.cmp(&other.levels)
    }
}

/// Exact law of the array after one signal at level `k`.
pub fn rsk_signal_distribution(array: &PartitionArray, k: usize, t: f64) -> Result<Vec<(PartitionArray, f64)>> {
    enumerate_decisions(|decide| {
        let mut a = array.clone();
        rsk_apply_signal_with(&mut a, k, t, decide)?;
        Ok(a)
    })
}

/// Exponential race between the level clocks.
#[derive(Clone, Debug)]
pub struct EventClock {
    rates: Vec<f64>,
    wait: Exp<f64>,
    pick: WeightedIndex<f64>,
}

impl EventClock {
    pub fn new(rates: &[f64]) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::Constraint("at least one rate is required".into()));
        }
        if let Some(r) = rates.iter().find(|&&r| !(r > 0.0) || !r.is_finite()) {
            return Err(Error::Constraint(format!("rates must be > 0, got {r}")));
        }
        let total: f64 = rates.iter().sum();
        Ok(EventClock {
            rates: rates.to_vec(),
            wait: Exp::new(total).map_err(|e| Error::Constraint(e.to_string()))?,
            pick: WeightedIndex::new(rates).map_err(|e| Error::Constraint(e.to_string()))?,
        })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn total_rate(&self) -> f64 {
        self.rates.iter().sum()
    }

    /// Waiting time and 1-based level of the next signal.
    pub fn next_event(&self, rng: &mut Rng) -> (f64, usize) {
        let dt = self.wait.sample(rng);
        (dt, self.pick.sample(rng) + 1)
    }
}

/// One signal with the uniforms it consumes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Signal {
    pub time: f64,
    pub level: usize,
    pub uniforms: Vec<f64>,
}

/// Draws the signals up to `horizon`.
pub fn draw_signals(clock: &EventClock, horizon: f64, rng: &mut Rng) -> Vec<Signal> {
    let n = clock.rates().len();
    let mut out = Vec::new();
    let mut now = 0.0;
    loop {
        let (dt, level) = clock.next_event(rng);
        now += dt;
        if now > horizon {
            return out;
        }
        let uniforms = (0..n).map(|_| rng.random::<f64>()).collect();
        out.push(Signal { time: now, level, uniforms });
    }
}

/// A signal together with the rows it changed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RskEvent {
    pub time: f64,
    pub level: usize,
    pub changes: Vec<RowChange>,
}

/// Snapshot of the array at a requested time.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Snapshot {
    pub time: f64,
    pub array: PartitionArray,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RskTrajectory {
    pub events: Vec<RskEvent>,
    pub snapshots: Vec<Snapshot>,
    pub final_state: PartitionArray,
}

fn check_snapshot_times(times: &[f64], horizon: f64) -> Result<()> {
    if !(horizon >= 0.0) || !horizon.is_finite() {
        return Err(Error::Constraint(format!("horizon must be finite and >= 0, got {horizon}")));
    }
    if times.windows(2).any(|w| w[0] > w[1]) || times.iter().any(|&s| !(s >= 0.0 && s <= horizon)) {
        return Err(Error::Constraint(format!(
            "snapshot times must be sorted and within [0, {horizon}]"
        )));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Constraint(format!("0 <= t < 1 fails for t = {t}")));
    }
    Ok(())
}

/// Simulates the array dynamics on `rates.len()` levels up to `horizon`.
/// Events are recorded only when `record` is set.
pub fn run_rsk_with(
    rates: &[f64],
    t: f64,
    horizon: f64,
    snapshot_times: &[f64],
    record: bool,
    rng: &mut Rng,
) -> Result<RskTrajectory> {
    check_t(t)?;
    check_snapshot_times(snapshot_times, horizon)?;
    let clock = EventClock::new(rates)?;
    let n = rates.len();
    let mut array = PartitionArray::zeros(n);
    let mut events = Vec::new();
    let mut snapshots = Vec::with_capacity(snapshot_times.len());
    let mut q = 0;
    let mut now = 0.0;
    let mut u = vec![0.0; n];
    loop {
        let (dt, level) = clock.next_event(rng);
        now += dt;
        while q < snapshot_times.len() && snapshot_times[q] < now {
            snapshots.push(Snapshot {
                time: snapshot_times[q],
                array: array.clone(),
            });
            q += 1;
        }
        if now > horizon {
            break;
        }
        u.iter_mut().for_each(|x| *x = rng.random());
        let changes = rsk_apply_signal(&mut array, level, t, &u)?;
        if record {
            events.push(RskEvent {
                time: now,
                level,
                changes,
            });
        }
    }
    Ok(RskTrajectory {
        events,
        snapshots,
        final_state: array,
    })
}

/// Simulates the array dynamics from `seed` and records every event.
pub fn run_rsk(rates: &[f64], t: f64, horizon: f64, seed: u64, snapshot_times: &[f64]) -> Result<RskTrajectory> {
    let mut r = rng::stream(seed, 0);
    run_rsk_with(rates, t, horizon, snapshot_times, true, &mut r)
}

/// Sets `V_1..V_n`, stored on a window `[0, W)`; every `r >= W` belongs to
/// every set. The window is kept minimal, so equal systems compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SetSystem {
    members: Vec<Vec<bool>>,
}

/// Change of one set during a signal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SetChange {
    pub level: usize,
    pub added: Option<usize>,
    pub removed: usize,
}

impl SetSystem {
    /// `V_m = Z_{>=0}` for `m = 1..=n`.
    pub fn full(n: usize) -> Self {
        SetSystem {
            members: vec![Vec::new(); n],
        }
    }

    /// Builds the sets from explicit finite complements: `missing[m - 1]`
    /// lists the elements absent from `V_m`.
    pub fn from_missing(missing: &[Vec<usize>]) -> Self {
        let w = missing.iter().flatten().map(|&r| r + 1).max().unwrap_or(0);
        let mut s = SetSystem::full(missing.len());
        s.ensure_window(w);
        for (m, miss) in missing.iter().enumerate() {
            for &r in miss {
                s.members[m][r] = false;
            }
        }
        s.normalize();
        s
    }

    pub fn n_levels(&self) -> usize {
        self.members.len()
    }

    pub fn window(&self) -> usize {
        self.members.first().map_or(0, |v| v.len())
    }

    fn ensure_window(&mut self, w: usize) {
        if w > self.window() {
            for v in &mut self.members {
                v.resize(w, true);
            }
        }
    }

    pub fn contains(&self, m: usize, r: usize) -> bool {
        self.members[m - 1].get(r).copied().unwrap_or(true)
    }

    /// Elements of `V_m` below `bound`.
    pub fn elements_below(&self, m: usize, bound: usize) -> Vec<usize> {
        (0..bound).filter(|&r| self.contains(m, r)).collect()
    }

    /// Elements missing from `V_m`.
    pub fn missing(&self, m: usize) -> Vec<usize> {
        (0..self.window()).filter(|&r| !self.contains(m, r)).collect()
    }

    /// `h^(r)(m)`: how many of `V_1..V_m` contain `r`.
    pub fn h(&self, r: usize, m: usize) -> usize {
        (1..=m).filter(|&j| self.contains(j, r)).count()
    }

    /// Drops trailing window columns present in every set.
    fn normalize(&mut self) {
        while self.window() > 0 && self.members.iter().all(|v| *v.last().unwrap()) {
            for v in &mut self.members {
                v.pop();
            }
        }
    }

    fn first_at_least(&mut self, m: usize, from: usize) -> usize {
        let found = (from..self.window()).find(|&r| self.members[m - 1][r]);
        match found {
            Some(r) => r,
            None => {
                let r = self.window().max(from);
                self.ensure_window(r + 1);
                r
            }
        }
    }
}

/// Applies a signal at level `k` to the sets.
pub fn sets_apply_signal_with(
    sets: &mut SetSystem,
    k: usize,
    t: f64,
    decide: &mut dyn FnMut(usize, f64) -> bool,
) -> Result<Vec<SetChange>> {
    let n = sets.n_levels();
    if k == 0 || k > n {
        return Err(Error::OutOfDomain(format!("signal level {k} outside 1..={n}")));
    }
    let before = sets.clone();
    let mut i = sets.first_at_least(k, 0);
    sets.members[k - 1][i] = false;
    let mut changes = vec![SetChange {
        level: k,
        added: None,
        removed: i,
    }];
    for m in k + 1..=n {
        if sets.contains(m, i) {
            continue;
        }
        let r = if i == 0 || !sets.contains(m, i - 1) {
            1.0 - t
        } else {
            let d = before.h(i, m) as i64 - before.h(i - 1, m) as i64;
            if d < 0 {
                return Err(Error::Inconsistent(format!(
                    "h^({i}) - h^({}) = {d} < 0 at level {m}",
                    i - 1
                )));
            }
            (1.0 - t) / (1.0 - t.powi(d as i32 + 1))
        };
        if decide(m, r) {
            sets.members[m - 1][i] = true;
            let j = sets.first_at_least(m, i + 1);
            sets.members[m - 1][j] = false;
            changes.push(SetChange {
                level: m,
                added: Some(i),
                removed: j,
            });
            i = j;
        }
    }
    sets.normalize();
    Ok(changes)
}

/// Applies a signal at level `k` driven by uniforms, `u[m - 1]` for level `m`.
pub fn sets_apply_signal(sets: &mut SetSystem, k: usize, t: f64, u: &[f64]) -> Result<Vec<SetChange>> {
    if u.len() < sets.n_levels() {
        return Err(Error::LengthMismatch(format!(
            "{} uniforms for {} levels",
            u.len(),
            sets.n_levels()
        )));
    }
    sets_apply_signal_with(sets, k, t, &mut |m, r| u[m - 1] < r)
}

/// Exact law of the sets after one signal at level `k`, with the
/// probability of each outcome.
pub fn sets_signal_distribution(sets: &SetSystem, k: usize, t: f64) -> Result<Vec<(SetSystem, f64)>> {
    enumerate_decisions(|decide| {
        let mut s = sets.clone();
        sets_apply_signal_with(&mut s, k, t, decide)?;
        Ok(s)
    })
}

/// The array whose conjugates are `(m - h^(0)(m), m - h^(1)(m), …)`.
pub fn array_from_sets(sets: &SetSystem) -> Result<PartitionArray> {
    let n = sets.n_levels();
    let w = sets.window();
    let mut levels = Vec::with_capacity(n);
    for m in 1..=n {
        let tilde: Vec<u32> = (0..w).map(|r| (m - sets.h(r, m)) as u32).collect();
        if tilde.windows(2).any(|x| x[0] < x[1]) {
            return Err(Error::Inconsistent(format!(
                "counters at level {m} are not monotone: {tilde:?}"
            )));
        }
        let conj = Partition::from_unsorted(tilde).conjugate();
        let mut rows = conj.parts().to_vec();
        rows.resize(m, 0);
        levels.push(rows);
    }
    PartitionArray::from_levels(levels)
}

/// Inverse of [`array_from_sets`].
pub fn sets_from_array(array: &PartitionArray) -> Result<SetSystem> {
    let n = array.n_levels();
    let w = array.levels().iter().flatten().copied().max().unwrap_or(0) as usize + 1;
    let count_le = |m: usize, r: usize| -> usize {
        if m == 0 {
            0
        } else {
            array.level(m).iter().filter(|&&v| v as usize <= r).count()
        }
    };
    let mut sets = SetSystem::full(n);
    sets.ensure_window(w);
    for m in 1..=n {
        for r in 0..w {
            match count_le(m, r) as i64 - count_le(m - 1, r) as i64 {
                1 => {}
                0 => sets.members[m - 1][r] = false,
                d => {
                    return Err(Error::Inconsistent(format!(
                        "row counts at levels {} and {m} differ by {d} at {r}",
                        m - 1
                    )))
                }
            }
        }
    }
    sets.normalize();
    Ok(sets)
}

/// t-PushTASEP on sites `1..=n`; particles leaving the window are dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushTasepState {
    pub occupied: Vec<bool>,
}

/// Net effect of one clock ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PushEvent {
    pub site: usize,
    pub vacated: Option<usize>,
    pub filled: Option<usize>,
}

impl PushTasepState {
    pub fn packed(n: usize) -> Self {
        PushTasepState {
            occupied: vec![true; n],
        }
    }

    /// Site `m` is occupied iff `0 ∈ V_m`.
    pub fn from_sets(sets: &SetSystem) -> Self {
        PushTasepState {
            occupied: (1..=sets.n_levels()).map(|m| sets.contains(m, 0)).collect(),
        }
    }

    /// Clock at site `k` rings; `decide(l, 1 - t)` says whether the active
    /// particle stops at empty site `l`.
    pub fn ring_with(&mut self, k: usize, t: f64, decide: &mut dyn FnMut(usize, f64) -> bool) -> Result<PushEvent> {
        let n = self.occupied.len();
        if k == 0 || k > n {
            return Err(Error::OutOfDomain(format!("site {k} outside 1..={n}")));
        }
        let mut ev = PushEvent {
            site: k,
            vacated: None,
            filled: None,
        };
        if !self.occupied[k - 1] {
            return Ok(ev);
        }
        self.occupied[k - 1] = false;
        ev.vacated = Some(k);
        // pushing through occupied sites leaves them occupied
        for l in k + 1..=n {
            if self.occupied[l - 1] {
                continue;
            }
            if decide(l, 1.0 - t) {
                self.occupied[l - 1] = true;
                ev.filled = Some(l);
                break;
            }
        }
        Ok(ev)
    }

    pub fn ring(&mut self, k: usize, t: f64, u: &[f64]) -> Result<PushEvent> {
        if u.len() < self.occupied.len() {
            return Err(Error::LengthMismatch(format!(
                "{} uniforms for {} sites",
                u.len(),
                self.occupied.len()
            )));
        }
        self.ring_with(k, t, &mut |l, r| u[l - 1] < r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushTasepTrajectory {
    pub events: Vec<(f64, PushEvent)>,
    pub final_state: PushTasepState,
}

/// Simulates the t-PushTASEP from the packed configuration.
pub fn run_pushtasep(rates: &[f64], t: f64, horizon: f64, seed: u64) -> Result<PushTasepTrajectory> {
    check_t(t)?;
    check_snapshot_times(&[], horizon)?;
    let clock = EventClock::new(rates)?;
    let mut r = rng::stream(seed, 0);
    let mut state = PushTasepState::packed(rates.len());
    let mut events = Vec::new();
    for sig in draw_signals(&clock, horizon, &mut r) {
        let ev = state.ring(sig.level, t, &sig.uniforms)?;
        events.push((sig.time, ev));
    }
    Ok(PushTasepTrajectory {
        events,
        final_state: state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_array() -> PartitionArray {
        PartitionArray::from_levels(vec![vec![5], vec![6, 2], vec![9, 2, 2], vec![10, 6, 2, 1]]).unwrap()
    }

    #[test]
    fn blocked_and_nearest_neighbor() {
        let a = sample_array();
        assert!(!a.is_blocked(4, 1));
        assert!(!a.is_blocked(4, 2));
        assert!(a.is_blocked(4, 3));
        assert!(!a.is_blocked(4, 4));
        assert_eq!(a.nearest_neighbor(3, 3), 2);
    }

    #[test]
    fn worked_example_probabilities() {
        let t = 0.3;
        let d = rsk_signal_distribution(&sample_array(), 2, t).unwrap();
        assert_eq!(d.len(), 2);
        let r = (1.0 - t) / (1.0 - t * t);
        let a = PartitionArray::from_levels(vec![vec![5], vec![6, 3], vec![9, 3, 2], vec![10, 7, 2, 1]]).unwrap();
        let b = PartitionArray::from_levels(vec![vec![5], vec![6, 3], vec![9, 3, 2], vec![10, 6, 3, 1]]).unwrap();
        let pa = d.iter().find(|(s, _)| *s == a).unwrap().1;
        let pb = d.iter().find(|(s, _)| *s == b).unwrap().1;
        assert!((pa - r).abs() < 1e-15);
        assert!((pb - (1.0 - r)).abs() < 1e-15);
    }

    #[test]
    fn zero_array_level_one() {
        let mut a = PartitionArray::zeros(4);
        let ch = rsk_apply_signal(&mut a, 1, 0.5, &[0.9; 4]).unwrap();
        assert_eq!(ch.len(), 4);
        assert!(ch.iter().all(|c| c.row == 1 && c.value == 1));
    }

    #[test]
    fn traced_signal_sequence() {
        let t = 0.4;
        let mut state = SetSystem::full(3);
        let signals = [3, 1, 2, 2];
        let expected_probs = [1.0, 1.0 - t, 1.0, 1.0 - (1.0 - t) / (1.0 - t * t)];
        let targets = [
            SetSystem::from_missing(&[vec![], vec![], vec![0]]),
            SetSystem::from_missing(&[vec![0], vec![], vec![1]]),
            SetSystem::from_missing(&[vec![0], vec![0], vec![1]]),
            SetSystem::from_missing(&[vec![0], vec![0, 1], vec![1]]),
        ];
        for ((&k, &p), target) in signals.iter().zip(&expected_probs).zip(&targets) {
            let outs = sets_signal_distribution(&state, k, t).unwrap();
            let (next, prob) = outs
                .into_iter()
                .find(|(s, _)| s == target)
                .expect("displayed state reachable");
            assert!((prob - p).abs() < 1e-15, "signal {k}: {prob} vs {p}");
            state = next;
        }
        let arr = array_from_sets(&state).unwrap();
        assert_eq!(arr.levels(), &[vec![1], vec![2, 1], vec![2, 2, 0]]);
        let back = sets_from_array(&arr).unwrap();
        assert_eq!(array_from_sets(&back).unwrap(), arr);
    }

    #[test]
    fn coupled_dynamics_agree() {
        let rates = [1.0, 0.7, 1.3, 0.5, 1.1];
        let clock = EventClock::new(&rates).unwrap();
        let mut r = rng::stream(11, 0);
        let mut arr = PartitionArray::zeros(5);
        let mut sets = SetSystem::full(5);
        let mut push = PushTasepState::packed(5);
        for sig in draw_signals(&clock, 200.0, &mut r) {
            rsk_apply_signal(&mut arr, sig.level, 0.45, &sig.uniforms).unwrap();
            sets_apply_signal(&mut sets, sig.level, 0.45, &sig.uniforms).unwrap();
            push.ring(sig.level, 0.45, &sig.uniforms).unwrap();
            assert_eq!(array_from_sets(&sets).unwrap(), arr);
            assert_eq!(PushTasepState::from_sets(&sets), push);
        }
    }

    #[test]
    fn pushtasep_geometric_jump() {
        let mut s = PushTasepState {
            occupied: vec![true, false, false, false],
        };
        let ev = s.ring(1, 0.5, &[0.0, 0.9, 0.2, 0.9]).unwrap();
        assert_eq!(ev.filled, Some(3));
        let mut s = PushTasepState {
            occupied: vec![false, true],
        };
        assert_eq!(s.ring(1, 0.5, &[0.0, 0.0]).unwrap().vacated, None);
    }

    #[test]
    fn serde_round_trip() {
        let a = sample_array();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"{"levels":[[5],[6,2],[9,2,2],[10,6,2,1]]}"#);
        let back: PartitionArray = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<PartitionArray>(r#"{"levels":[[1],[0,0]]}"#).is_err());
    }
}
