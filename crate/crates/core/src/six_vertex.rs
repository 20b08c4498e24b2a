//! The stochastic six vertex model in the quadrant.
//!
//! Vertices sit at `(x, y)` with `x, y >= 1`. A path enters every row from the
//! left boundary and nothing enters from the bottom. At a vertex with one
//! incoming path the outgoing direction is random:
//!
//! | incoming | outgoing right            | outgoing up               |
//! |----------|---------------------------|---------------------------|
//! | left     | `(1 - ab) / (1 - tab)`    | `(1 - t) ab / (1 - tab)`  |
//! | bottom   | `(1 - t) / (1 - tab)`     | `t (1 - ab) / (1 - tab)`  |
//!
//! with `a = a_x` and `b = b_y`. Two incoming paths always cross.
//!
//! A jagged domain keeps the vertices above a down-right cut path encoded by
//! a string `S`: starting at `(0, N)`, `+` is a right step and `-` a down step.
//! The height function `h(x, y)` counts the paths that leave column `x - 1`
//! through rows `1..=y`, so `h(1, y) = y`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rand::Rng as _;
use serde::Serialize;

use crate::dist::DiscreteDistribution;
use crate::error::{Error, Result};
use crate::hl_process::check_matched_params;
use crate::partitions::{partition_from_string, Partition, Sign, SignString, SkewDiagram};
use crate::rng::Rng;

/// Largest `M + N` accepted by the exact enumerators.
pub const MAX_EXACT_PERIMETER: usize = 24;

/// Model parameters in the matched form `(t, a_x, b_y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SixVertexParams {
    pub t: f64,
    /// One value per column.
    pub a: Vec<f64>,
    /// One value per row.
    pub b: Vec<f64>,
}

/// The same parameters in the native form `(Q, ξ_x, u_y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NativeParams {
    pub q: f64,
    pub xi: Vec<f64>,
    pub u: Vec<f64>,
}

impl SixVertexParams {
    pub fn matched(t: f64, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        check_matched_params(t, &a, &b)?;
        Ok(SixVertexParams { t, a, b })
    }

    /// Converts from native parameters via `t = Q`, `a = √Q / ξ`, `b = 1 / (Q u)`.
    pub fn native(q: f64, xi: &[f64], u: &[f64]) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Constraint(format!("0 < Q < 1 fails for Q = {q}")));
        }
        for (x, &v) in xi.iter().enumerate() {
            if !(v > 0.0) {
                return Err(Error::Constraint(format!("xi_{} = {v} must be > 0", x + 1)));
            }
        }
        for (y, &v) in u.iter().enumerate() {
            if !(v > 0.0) {
                return Err(Error::Constraint(format!("u_{} = {v} must be > 0", y + 1)));
            }
        }
        for (x, &v) in xi.iter().enumerate() {
            for (y, &w) in u.iter().enumerate() {
                if !(v * w > 1.0 / q.sqrt()) {
                    return Err(Error::Constraint(format!(
                        "xi_{} u_{} > 1/sqrt(Q) fails: {} <= {}",
                        x + 1,
                        y + 1,
                        v * w,
                        1.0 / q.sqrt()
                    )));
                }
            }
        }
        let a = xi.iter().map(|&v| q.sqrt() / v).collect();
        let b = u.iter().map(|&v| 1.0 / (q * v)).collect();
        Self::matched(q, a, b)
    }

    pub fn to_native(&self) -> NativeParams {
        NativeParams {
            q: self.t,
            xi: self.a.iter().map(|&a| self.t.sqrt() / a).collect(),
            u: self.b.iter().map(|&b| 1.0 / (self.t * b)).collect(),
        }
    }

    fn check_size(&self, m: usize, n: usize) -> Result<()> {
        if self.a.len() < m || self.b.len() < n {
            return Err(Error::LengthMismatch(format!(
                "domain is {m}x{n} but parameters cover {}x{}",
                self.a.len(),
                self.b.len()
            )));
        }
        Ok(())
    }
}

/// Outcome probabilities at one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VertexProbabilities {
    /// Path from the left continues right.
    pub pass_horizontal: f64,
    /// Path from the left turns up.
    pub turn_up: f64,
    /// Path from below continues up.
    pub pass_vertical: f64,
    /// Path from below turns right.
    pub turn_right: f64,
}

impl VertexProbabilities {
    pub fn from_product(t: f64, ab: f64) -> Self {
        let d = 1.0 - t * ab;
        VertexProbabilities {
            pass_horizontal: (1.0 - ab) / d,
            turn_up: (1.0 - t) * ab / d,
            pass_vertical: t * (1.0 - ab) / d,
            turn_right: (1.0 - t) / d,
        }
    }

    /// The same probabilities written with native parameters.
    pub fn from_native(q: f64, xi: f64, u: f64) -> Self {
        let s = q.sqrt();
        let d = 1.0 - xi * u / s;
        VertexProbabilities {
            pass_horizontal: (1.0 / q - xi * u / s) / d,
            turn_up: (1.0 - 1.0 / q) / d,
            pass_vertical: (1.0 - s * xi * u) / d,
            turn_right: (q - 1.0) * (xi * u / s) / d,
        }
    }
}

/// Probabilities at vertex `(x, y)` (1-based).
pub fn vertex_probabilities(params: &SixVertexParams, x: usize, y: usize) -> Result<VertexProbabilities> {
    if x == 0 || y == 0 || x > params.a.len() || y > params.b.len() {
        return Err(Error::OutOfDomain(format!("vertex ({x}, {y})")));
    }
    Ok(VertexProbabilities::from_product(params.t, params.a[x - 1] * params.b[y - 1]))
}

/// Weight of a vertex with the given edge occupations, `x = ab`.
/// Zero when paths are not conserved.
pub fn stochastic_weight(t: f64, x: f64, left: bool, bottom: bool, right: bool, top: bool) -> f64 {
    if (left as u8 + bottom as u8) != (right as u8 + top as u8) {
        return 0.0;
    }
    let p = VertexProbabilities::from_product(t, x);
    match (left, bottom, right) {
        (false, false, _) | (true, true, _) => 1.0,
        (true, false, true) => p.pass_horizontal,
        (true, false, false) => p.turn_up,
        (false, true, false) => p.pass_vertical,
        (false, true, true) => p.turn_right,
    }
}

/// The six vertex types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VertexType {
    Empty,
    Cross,
    Horizontal,
    Vertical,
    /// Enters from the left, leaves upward.
    TurnUp,
    /// Enters from below, leaves to the right.
    TurnRight,
}

impl VertexType {
    /// `(left, bottom, right, top)` occupations.
    pub fn edges(self) -> (bool, bool, bool, bool) {
        match self {
            VertexType::Empty => (false, false, false, false),
            VertexType::Cross => (true, true, true, true),
            VertexType::Horizontal => (true, false, true, false),
            VertexType::Vertical => (false, true, false, true),
            VertexType::TurnUp => (true, false, false, true),
            VertexType::TurnRight => (false, true, true, false),
        }
    }

    fn from_inputs(left: bool, bottom: bool, goes_right: bool) -> Self {
        match (left, bottom) {
            (false, false) => VertexType::Empty,
            (true, true) => VertexType::Cross,
            (true, false) if goes_right => VertexType::Horizontal,
            (true, false) => VertexType::TurnUp,
            (false, true) if goes_right => VertexType::TurnRight,
            (false, true) => VertexType::Vertical,
        }
    }
}

/// A protruding edge of a finite domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OutEdge {
    /// The top edge of the highest vertex of a column.
    Top { x: usize, y: usize },
    /// The right edge of the last vertex of a row.
    Right { x: usize, y: usize },
}

/// The part of an `M x N` rectangle above a down-right cut path.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JaggedDomain {
    m: usize,
    n: usize,
    s: SignString,
    heights: Vec<usize>,
    cut: Vec<(usize, usize)>,
}

impl JaggedDomain {
    pub fn new(m: usize, n: usize, s: SignString) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Constraint("M >= 1 and N >= 1 are required".into()));
        }
        s.require_domain_class(m, n)?;
        let (mut x, mut y) = (0usize, n);
        let mut heights = Vec::with_capacity(m);
        let mut cut = vec![(0, n)];
        for &sg in s.signs() {
            match sg {
                Sign::Plus => {
                    x += 1;
                    heights.push(y);
                }
                Sign::Minus => y -= 1,
            }
            cut.push((x, y));
        }
        Ok(JaggedDomain { m, n, s, heights, cut })
    }

    pub fn rectangle(m: usize, n: usize) -> Result<Self> {
        Self::new(m, n, SignString::ascending(m, n))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &SignString {
        &self.s
    }

    /// Number of vertices in column `x` (zero outside `1..=M`).
    pub fn column_height(&self, x: usize) -> usize {
        if x == 0 || x > self.m {
            0
        } else {
            self.heights[x - 1]
        }
    }

    /// Number of vertices in row `y`.
    pub fn row_length(&self, y: usize) -> usize {
        self.heights.iter().filter(|&&h| h >= y).count()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= 1 && y >= 1 && y <= self.column_height(x)
    }

    /// Cut path vertex `(x_i, y_i)` for `0 <= i <= M + N`.
    pub fn cut_point(&self, i: usize) -> (usize, usize) {
        self.cut[i]
    }

    /// Excised region, read from the column heights.
    pub fn excised_partition(&self) -> Partition {
        Partition::from_unsorted(self.heights.iter().map(|&h| (self.n - h) as u32).collect())
    }

    /// The `M + N` protruding edges in order along the cut path.
    pub fn outgoing_edges(&self) -> Vec<OutEdge> {
        self.s
            .signs()
            .iter()
            .enumerate()
            .map(|(i, &sg)| match sg {
                Sign::Plus => {
                    let (x, y) = self.cut[i + 1];
                    OutEdge::Top { x, y }
                }
                Sign::Minus => {
                    let (x, y) = self.cut[i];
                    OutEdge::Right { x, y }
                }
            })
            .collect()
    }

    fn vertex_count(&self) -> usize {
        self.heights.iter().sum()
    }
}

/// A complete path configuration on a jagged domain.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeState {
    domain: JaggedDomain,
    /// `columns[x - 1][y - 1]`.
    columns: Vec<Vec<VertexType>>,
}

impl LatticeState {
    pub fn domain(&self) -> &JaggedDomain {
        &self.domain
    }

    pub fn vertex(&self, x: usize, y: usize) -> Result<VertexType> {
        if !self.domain.contains(x, y) {
            return Err(Error::OutOfDomain(format!("vertex ({x}, {y})")));
        }
        Ok(self.columns[x - 1][y - 1])
    }

    fn right_out(&self, x: usize, y: usize) -> bool {
        self.columns[x - 1][y - 1].edges().2
    }

    fn top_out(&self, x: usize, y: usize) -> bool {
        self.columns[x - 1][y - 1].edges().3
    }

    /// Checks path conservation against neighbours and the boundary
    /// conditions.
    pub fn check_conservation(&self) -> Result<()> {
        for x in 1..=self.domain.m {
            for y in 1..=self.domain.column_height(x) {
                let (l, b, _, _) = self.columns[x - 1][y - 1].edges();
                let want_l = x == 1 || self.right_out(x - 1, y);
                let want_b = y > 1 && self.top_out(x, y - 1);
                if l != want_l || b != want_b {
                    return Err(Error::Inconsistent(format!(
                        "path conservation fails at ({x}, {y})"
                    )));
                }
            }
        }
        let occupied = self.outgoing_occupations().iter().filter(|&&o| o).count();
        if occupied != self.domain.n {
            return Err(Error::Inconsistent(format!(
                "{occupied} outgoing edges occupied, expected {}",
                self.domain.n
            )));
        }
        Ok(())
    }

    fn outgoing_occupations(&self) -> Vec<bool> {
        self.domain
            .outgoing_edges()
            .into_iter()
            .map(|e| match e {
                OutEdge::Top { x, y } => self.top_out(x, y),
                OutEdge::Right { x, y } => self.right_out(x, y),
            })
            .collect()
    }

    /// The outgoing string `T` (`+` for an empty edge).
    pub fn outgoing_string(&self) -> SignString {
        SignString::new(
            self.outgoing_occupations()
                .into_iter()
                .map(|o| if o { Sign::Minus } else { Sign::Plus })
                .collect(),
        )
    }

    /// Height function; defined for `x = 1, y <= N` and for
    /// `x >= 2, y <= column_height(x - 1)`.
    pub fn height(&self, x: usize, y: usize) -> Result<u32> {
        if x == 1 && y <= self.domain.n {
            return Ok(y as u32);
        }
        if x < 2 || x > self.domain.m + 1 || y > self.domain.column_height(x - 1) {
            return Err(Error::OutOfDomain(format!("height at ({x}, {y})")));
        }
        Ok((1..=y).filter(|&r| self.right_out(x - 1, r)).count() as u32)
    }
}

impl fmt::Display for LatticeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in (1..=self.domain.n).rev() {
            for x in 1..=self.domain.row_length(y) {
                let c = match self.columns[x - 1][y - 1] {
                    VertexType::Empty => '.',
                    VertexType::Cross => '+',
                    VertexType::Horizontal => '-',
                    VertexType::Vertical => '|',
                    VertexType::TurnUp => 'J',
                    VertexType::TurnRight => 'r',
                };
                write!(f, "{c}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The partition `ν(T)` read from the outgoing edges.
pub fn outgoing_partition(state: &LatticeState) -> Result<(SignString, Partition)> {
    let t = state.outgoing_string();
    let (m, n) = (state.domain.m, state.domain.n);
    if t.minus_count() != n {
        return Err(Error::Inconsistent(format!(
            "{} outgoing edges occupied, expected {n}",
            t.minus_count()
        )));
    }
    let nu = partition_from_string(&t, m, n)?;
    Ok((t, nu))
}

/// The skew diagram `ν(T)/μ(S)` of a state.
pub fn outgoing_skew(state: &LatticeState) -> Result<SkewDiagram> {
    let (_, nu) = outgoing_partition(state)?;
    SkewDiagram::new(nu, state.domain.excised_partition())
}

/// Samples a state by resolving vertices in order of increasing `x + y`.
pub fn sample_state(params: &SixVertexParams, domain: &JaggedDomain, rng: &mut Rng) -> Result<LatticeState> {
    params.check_size(domain.m, domain.n)?;
    let mut columns: Vec<Vec<VertexType>> = (1..=domain.m)
        .map(|x| vec![VertexType::Empty; domain.column_height(x)])
        .collect();
    for d in 2..=domain.m + domain.n {
        for x in 1..=domain.m.min(d - 1) {
            let y = d - x;
            if !domain.contains(x, y) {
                continue;
            }
            let left = x == 1 || columns[x - 2][y - 1].edges().2;
            let bottom = y > 1 && columns[x - 1][y - 2].edges().3;
            let goes_right = match (left, bottom) {
                (true, false) => {
                    let p = VertexProbabilities::from_product(params.t, params.a[x - 1] * params.b[y - 1]);
                    rng.random::<f64>() < p.pass_horizontal
                }
                (false, true) => {
                    let p = VertexProbabilities::from_product(params.t, params.a[x - 1] * params.b[y - 1]);
                    rng.random::<f64>() < p.turn_right
                }
                _ => left,
            };
            columns[x - 1][y - 1] = VertexType::from_inputs(left, bottom, goes_right);
        }
    }
    Ok(LatticeState {
        domain: domain.clone(),
        columns,
    })
}

fn check_exact_size(domain: &JaggedDomain) -> Result<()> {
    if domain.m + domain.n > MAX_EXACT_PERIMETER {
        return Err(Error::DomainTooLarge(format!(
            "M + N = {} exceeds {MAX_EXACT_PERIMETER}",
            domain.m + domain.n
        )));
    }
    Ok(())
}

/// All outcomes of one column: `(right bits, top occupied, probability)`.
fn column_outcomes(params: &SixVertexParams, x: usize, height: usize, input: u32) -> Vec<(u32, bool, f64)> {
    let mut cur: Vec<(u32, bool, f64)> = vec![(0, false, 1.0)];
    for y in 1..=height {
        let left = input >> (y - 1) & 1 == 1;
        let p = VertexProbabilities::from_product(params.t, params.a[x - 1] * params.b[y - 1]);
        let mut next = Vec::with_capacity(cur.len() * 2);
        for (bits, up, w) in cur {
            let bit = 1u32 << (y - 1);
            match (left, up) {
                (false, false) => next.push((bits, false, w)),
                (true, true) => next.push((bits | bit, true, w)),
                (true, false) => {
                    next.push((bits | bit, false, w * p.pass_horizontal));
                    next.push((bits, true, w * p.turn_up));
                }
                (false, true) => {
                    next.push((bits | bit, false, w * p.turn_right));
                    next.push((bits, true, w * p.pass_vertical));
                }
            }
        }
        cur = next;
    }
    cur.retain(|&(_, _, w)| w > 0.0);
    cur
}

/// Left-to-right transfer matrix sweep. The cut state is the occupation of
/// the horizontal edges entering the next column plus a record built by
/// `update(x, record, top, right_bits)` after each column.
fn sweep<K: Clone + Ord>(
    params: &SixVertexParams,
    domain: &JaggedDomain,
    init: K,
    mut update: impl FnMut(usize, &K, bool, u32) -> K,
) -> Result<BTreeMap<K, f64>> {
    params.check_size(domain.m, domain.n)?;
    check_exact_size(domain)?;
    let full = if domain.n >= 32 { u32::MAX } else { (1u32 << domain.n) - 1 };
    let mut states: BTreeMap<(u32, K), f64> = BTreeMap::new();
    states.insert((full, init), 1.0);
    for x in 1..=domain.m {
        let h = domain.column_height(x);
        let next_h = domain.column_height(x + 1);
        let keep = if next_h >= 32 { u32::MAX } else { (1u32 << next_h) - 1 };
        let mut cache: HashMap<u32, Vec<(u32, bool, f64)>> = HashMap::new();
        let mut next: BTreeMap<(u32, K), f64> = BTreeMap::new();
        for ((input, rec), w) in states {
            let outs = cache
                .entry(input)
                .or_insert_with(|| column_outcomes(params, x, h, input));
            for &(bits, top, p) in outs.iter() {
                let r = update(x, &rec, top, bits);
                *next.entry((bits & keep, r)).or_insert(0.0) += w * p;
            }
        }
        states = next;
    }
    let mut out = BTreeMap::new();
    for ((_, rec), w) in states {
        *out.entry(rec).or_insert(0.0) += w;
    }
    Ok(out)
}

/// Exact law of the outgoing skew diagram `ν(T)/μ(S)`.
pub fn exact_outgoing_distribution(
    params: &SixVertexParams,
    domain: &JaggedDomain,
) -> Result<DiscreteDistribution<SkewDiagram>> {
    let law = exact_outgoing_strings(params, domain)?;
    let mu = domain.excised_partition();
    let (m, n) = (domain.m, domain.n);
    let mut weights = Vec::with_capacity(law.len());
    for (t, w) in law {
        let nu = partition_from_string(&t, m, n)?;
        weights.push((SkewDiagram::new(nu, mu.clone())?, w));
    }
    DiscreteDistribution::from_weights(weights)
}

/// Exact law of the outgoing string `T`.
pub fn exact_outgoing_strings(params: &SixVertexParams, domain: &JaggedDomain) -> Result<BTreeMap<SignString, f64>> {
    let law = sweep(params, domain, Vec::<Sign>::new(), |x, rec, top, bits| {
        let mut r = rec.clone();
        r.push(if top { Sign::Minus } else { Sign::Plus });
        let lo = domain.column_height(x + 1);
        for y in (lo + 1..=domain.column_height(x)).rev() {
            r.push(if bits >> (y - 1) & 1 == 1 { Sign::Minus } else { Sign::Plus });
        }
        r
    })?;
    Ok(law.into_iter().map(|(k, w)| (SignString::new(k), w)).collect())
}

/// Exact joint law of `(h(x_j, y_j))_j` on a jagged domain.
pub fn joint_height_distribution_on(
    params: &SixVertexParams,
    domain: &JaggedDomain,
    points: &[(usize, usize)],
) -> Result<DiscreteDistribution<Vec<u32>>> {
    for &(x, y) in points {
        let ok = (x == 1 && y <= domain.n) || (x >= 2 && x <= domain.m + 1 && y <= domain.column_height(x - 1));
        if !ok {
            return Err(Error::OutOfDomain(format!("height at ({x}, {y})")));
        }
    }
    let init: Vec<u32> = points
        .iter()
        .map(|&(x, y)| if x == 1 { y as u32 } else { 0 })
        .collect();
    let law = sweep(params, domain, init, |x, rec, _top, bits| {
        let mut r = rec.clone();
        for (j, &(px, py)) in points.iter().enumerate() {
            if px == x + 1 {
                let mask = if py >= 32 { u32::MAX } else { (1u32 << py) - 1 };
                r[j] = (bits & mask).count_ones();
            }
        }
        r
    })?;
    DiscreteDistribution::from_weights(law)
}

/// Exact joint law of `(h(x_j, y_j))_j` on the `M x N` rectangle.
pub fn joint_height_distribution(
    params: &SixVertexParams,
    m: usize,
    n: usize,
    points: &[(usize, usize)],
) -> Result<DiscreteDistribution<Vec<u32>>> {
    joint_height_distribution_on(params, &JaggedDomain::rectangle(m, n)?, points)
}

/// Exact joint law of `(y_i - h(x_i + 1, y_i))` for `i = 1..M+N-1` along the
/// cut path.
pub fn exact_cut_height_distribution(
    params: &SixVertexParams,
    domain: &JaggedDomain,
) -> Result<DiscreteDistribution<Vec<u32>>> {
    let cut: Vec<(usize, usize)> = (1..domain.m + domain.n).map(|i| domain.cut_point(i)).collect();
    let points: Vec<(usize, usize)> = cut.iter().map(|&(x, y)| (x + 1, y)).collect();
    let law = joint_height_distribution_on(params, domain, &points)?;
    Ok(law.map(|h| h.iter().zip(&cut).map(|(&v, &(_, y))| y as u32 - v).collect()))
}

/// Every state of the domain with its probability, by exhaustive branching.
pub fn enumerate_states(params: &SixVertexParams, domain: &JaggedDomain) -> Result<Vec<(LatticeState, f64)>> {
    params.check_size(domain.m, domain.n)?;
    if domain.vertex_count() > 30 {
        return Err(Error::DomainTooLarge(format!(
            "{} vertices is too many for naive enumeration",
            domain.vertex_count()
        )));
    }
    let order: Vec<(usize, usize)> = (2..=domain.m + domain.n)
        .flat_map(|d| (1..d).map(move |x| (x, d - x)))
        .filter(|&(x, y)| domain.contains(x, y))
        .collect();
    let blank: Vec<Vec<VertexType>> = (1..=domain.m)
        .map(|x| vec![VertexType::Empty; domain.column_height(x)])
        .collect();
    let mut out = Vec::new();
    enumerate_rec(params, domain, &order, 0, blank, 1.0, &mut out);
    Ok(out)
}

fn enumerate_rec(
    params: &SixVertexParams,
    domain: &JaggedDomain,
    order: &[(usize, usize)],
    k: usize,
    cols: Vec<Vec<VertexType>>,
    w: f64,
    out: &mut Vec<(LatticeState, f64)>,
) {
    if k == order.len() {
        out.push((
            LatticeState {
                domain: domain.clone(),
                columns: cols,
            },
            w,
        ));
        return;
    }
    let (x, y) = order[k];
    let left = x == 1 || cols[x - 2][y - 1].edges().2;
    let bottom = y > 1 && cols[x - 1][y - 2].edges().3;
    let ab = params.a[x - 1] * params.b[y - 1];
    for goes_right in [true, false] {
        let right = goes_right && (left || bottom);
        let top = (left as u8 + bottom as u8) > right as u8;
        let p = stochastic_weight(params.t, ab, left, bottom, right, top);
        if p == 0.0 || ((left == bottom) && !goes_right) {
            continue;
        }
        let mut next = cols.clone();
        next[x - 1][y - 1] = VertexType::from_inputs(left, bottom, goes_right);
        enumerate_rec(params, domain, order, k + 1, next, w * p, out);
    }
}

/// Heights of the half-continuous model at the query times.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalfContinuousSample {
    pub times: Vec<f64>,
    /// `heights[q][y - 1] = h(times[q], y)`.
    pub heights: Vec<Vec<u32>>,
    pub events: usize,
}

/// Event-driven simulation of the half-continuous model.
///
/// Rows are horizontal lines, time runs to the right. Every row starts
/// carrying a path; while row `y` carries a path, that path turns up at rate
/// `b_y`. A path moving up crosses occupied rows and, at each empty row, turns
/// right into it with probability `1 - t` or keeps going up with probability
/// `t`. `h(τ, y)` is the number of occupied rows among `1..=y`.
pub fn sample_half_continuous(
    t: f64,
    rates: &[f64],
    query_times: &[f64],
    rng: &mut Rng,
) -> Result<HalfContinuousSample> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Constraint(format!("0 < t < 1 fails for t = {t}")));
    }
    if let Some(r) = rates.iter().find(|&&r| !(r > 0.0) || !r.is_finite()) {
        return Err(Error::Constraint(format!("rates must be > 0, got {r}")));
    }
    if query_times.windows(2).any(|w| w[0] > w[1]) || query_times.iter().any(|&q| !(q >= 0.0)) {
        return Err(Error::Constraint("query times must be nonnegative and sorted".into()));
    }
    let n = rates.len();
    let mut occupied = vec![true; n];
    let mut total: f64 = rates.iter().sum();
    let mut now = 0.0;
    let mut events = 0;
    let mut heights = Vec::with_capacity(query_times.len());
    let snapshot = |occ: &[bool]| -> Vec<u32> {
        let mut acc = 0;
        occ.iter()
            .map(|&o| {
                acc += o as u32;
                acc
            })
            .collect()
    };
    let mut q = 0;
    while q < query_times.len() {
        let next = if total > 0.0 {
            now - (1.0 - rng.random::<f64>()).ln() / total
        } else {
            f64::INFINITY
        };
        while q < query_times.len() && query_times[q] < next {
            heights.push(snapshot(&occupied));
            q += 1;
        }
        if q == query_times.len() {
            break;
        }
        now = next;
        events += 1;
        let mut u = rng.random::<f64>() * total;
        let mut row = n - 1;
        for (y, &r) in rates.iter().enumerate() {
            if !occupied[y] {
                continue;
            }
            if u < r {
                row = y;
                break;
            }
            u -= r;
            row = y;
        }
        occupied[row] = false;
        total -= rates[row];
        for y in row + 1..n {
            if occupied[y] {
                continue;
            }
            if rng.random::<f64>() < 1.0 - t {
                occupied[y] = true;
                total += rates[y];
                break;
            }
        }
        // guard against drift in the running rate total
        if events % 4096 == 0 {
            total = rates.iter().zip(&occupied).filter(|(_, &o)| o).map(|(r, _)| r).sum();
        }
    }
    Ok(HalfContinuousSample {
        times: query_times.to_vec(),
        heights,
        events,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn probabilities_match_examples() {
        let p = VertexProbabilities::from_product(0.25, 0.5);
        assert!((p.pass_horizontal - 4.0 / 7.0).abs() < 1e-15);
        assert!((p.turn_up - 3.0 / 7.0).abs() < 1e-15);
        assert_eq!(p.pass_horizontal + p.turn_up, 1.0);
        assert!((p.pass_vertical + p.turn_right - 1.0).abs() < 1e-15);
        let params = SixVertexParams::matched(0.3, vec![0.4, 0.9], vec![0.7, 0.2]).unwrap();
        let nat = params.to_native();
        for x in 1..=2 {
            for y in 1..=2 {
                let a = vertex_probabilities(&params, x, y).unwrap();
                let b = VertexProbabilities::from_native(nat.q, nat.xi[x - 1], nat.u[y - 1]);
                for (u, v) in [
                    (a.pass_horizontal, b.pass_horizontal),
                    (a.turn_up, b.turn_up),
                    (a.pass_vertical, b.pass_vertical),
                    (a.turn_right, b.turn_right),
                ] {
                    assert!((u - v).abs() < 1e-14);
                }
            }
        }
        let back = SixVertexParams::native(nat.q, &nat.xi, &nat.u).unwrap();
        for (u, v) in back.a.iter().zip(&params.a).chain(back.b.iter().zip(&params.b)) {
            assert!((u - v).abs() < 1e-14);
        }
        assert!(SixVertexParams::matched(0.3, vec![2.0], vec![0.6]).is_err());
        assert!(vertex_probabilities(&params, 3, 1).is_err());
    }

    #[test]
    fn jagged_domain_example() {
        let s: SignString = "++-++--+-+-".parse().unwrap();
        let d = JaggedDomain::new(6, 5, s.clone()).unwrap();
        let h: Vec<usize> = (1..=6).map(|x| d.column_height(x)).collect();
        assert_eq!(h, vec![5, 5, 4, 4, 2, 1]);
        let mu = Partition::new(vec![4, 3, 1, 1]).unwrap();
        assert_eq!(d.excised_partition(), mu);
        assert_eq!(partition_from_string(&s, 6, 5).unwrap(), mu);
        let edges = d.outgoing_edges();
        assert_eq!(edges[0], OutEdge::Top { x: 1, y: 5 });
        assert_eq!(edges[2], OutEdge::Right { x: 2, y: 5 });
        assert_eq!(edges[10], OutEdge::Right { x: 6, y: 1 });
    }

    #[test]
    fn single_vertex() {
        let params = SixVertexParams::matched(0.25, vec![0.5], vec![0.5]).unwrap();
        let d = JaggedDomain::rectangle(1, 1).unwrap();
        let law = exact_outgoing_distribution(&params, &d).unwrap();
        assert!((law.prob(&SkewDiagram::default()) - 0.8).abs() < 1e-15);
        let one = SkewDiagram::new(Partition::new(vec![1]).unwrap(), Partition::empty()).unwrap();
        assert!((law.prob(&one) - 0.2).abs() < 1e-15);
        let h = joint_height_distribution(&params, 1, 1, &[(2, 1)]).unwrap();
        assert!((h.prob(&vec![0]) - 0.2).abs() < 1e-15);
        assert!((h.prob(&vec![1]) - 0.8).abs() < 1e-15);
        let h = joint_height_distribution(&params, 1, 1, &[(1, 1)]).unwrap();
        assert_eq!(h.prob(&vec![1]), 1.0);
    }

    #[test]
    fn straight_paths_when_ab_small() {
        let params = SixVertexParams::matched(0.5, vec![0.0; 2], vec![0.3; 3]).unwrap();
        let d = JaggedDomain::rectangle(2, 3).unwrap();
        let law = exact_outgoing_distribution(&params, &d).unwrap();
        assert_eq!(law.prob(&SkewDiagram::default()), 1.0);
        let st = sample_state(&params, &d, &mut rng::stream(1, 0)).unwrap();
        let (t, nu) = outgoing_partition(&st).unwrap();
        assert_eq!(t.to_string(), "++---");
        assert!(nu.is_empty());
    }

    #[test]
    fn transfer_matrix_matches_enumeration() {
        let params = SixVertexParams::matched(0.35, vec![0.5, 0.8, 0.3], vec![0.9, 0.4, 0.6]).unwrap();
        for s in SignString::all_in_class(Sign::Plus, 3, 3) {
            let d = JaggedDomain::new(3, 3, s).unwrap();
            let law = exact_outgoing_distribution(&params, &d).unwrap();
            let mut naive: BTreeMap<SkewDiagram, f64> = BTreeMap::new();
            for (st, w) in enumerate_states(&params, &d).unwrap() {
                st.check_conservation().unwrap();
                *naive.entry(outgoing_skew(&st).unwrap()).or_insert(0.0) += w;
            }
            let total: f64 = naive.values().sum();
            assert!((total - 1.0).abs() < 1e-12);
            for (k, w) in &naive {
                assert!((law.prob(k) - w).abs() < 1e-13);
            }
            assert_eq!(naive.len(), law.len());
        }
    }

    #[test]
    fn sampled_states_are_valid() {
        let params = SixVertexParams::matched(0.4, vec![0.6, 0.9, 0.5], vec![0.8, 0.7, 0.9]).unwrap();
        let d = JaggedDomain::new(3, 3, "+-++--".parse().unwrap()).unwrap();
        let mut g = rng::stream(5, 0);
        for _ in 0..500 {
            let st = sample_state(&params, &d, &mut g).unwrap();
            st.check_conservation().unwrap();
            for x in 1..=4 {
                let hmax = if x == 1 { 3 } else { d.column_height(x - 1) };
                for y in 1..=hmax {
                    let h = st.height(x, y).unwrap();
                    assert!(h as usize <= y);
                    if y > 1 {
                        let dy = h - st.height(x, y - 1).unwrap();
                        assert!(dy <= 1);
                    }
                    if x > 1 && y <= d.column_height(x - 1) {
                        let dx = st.height(x - 1, y).unwrap() - h;
                        assert!(dx <= 1);
                    }
                }
            }
            assert!(st.height(5, 1).is_err());
        }
    }

    #[test]
    fn half_continuous_single_row() {
        let mut g = rng::stream(11, 0);
        let n = 20000;
        let mut zero = 0;
        for _ in 0..n {
            let s = sample_half_continuous(0.5, &[0.7], &[0.0, 1.0], &mut g).unwrap();
            assert_eq!(s.heights[0], vec![1]);
            zero += (s.heights[1][0] == 0) as usize;
        }
        let p = 1.0 - (-0.7f64).exp();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!(((zero as f64 / n as f64) - p).abs() < 5.0 * se);
    }
}
