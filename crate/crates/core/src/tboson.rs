//! t-boson vertex weights and row operators.
//!
//! A vertex has a horizontal edge carrying 0 or 1 paths and a vertical edge
//! carrying any number of paths. Writing `i` for the left edge, `m` for the
//! bottom, `n` for the top and `j` for the right (with `i + m = n + j`):
//!
//! | `(i, j)` | black    | red            |
//! |----------|----------|----------------|
//! | `(0, 0)` | 1        | b              |
//! | `(0, 1)` | a        | 1              |
//! | `(1, 0)` | 1 - t^(m+1) | b (1 - t^(m+1)) |
//! | `(1, 1)` | a        | 1              |
//!
//! A row of `L` vertices has sites numbered `L` (left end) down to `1` (right
//! end). The bottom and top occupations `(n_1, …, n_L)` are the multiplicities
//! of a partition. The operators `A, B, C, D` fix the boundary bits
//! `(left, right)` to `(0,0), (0,1), (1,0), (1,1)`. Matrix elements
//! `⟨x| Op |y⟩` take `x` as the bottom row and `y` as the top row, and
//! products are ordinary matrix products `⟨x|PQ|y⟩ = Σ_z ⟨x|P|z⟩⟨z|Q|y⟩`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::six_vertex::stochastic_weight;

/// Weight normalization of a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Normalization {
    Black,
    Red,
}

/// One t-boson vertex.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BosonVertexConfig {
    pub left: u8,
    pub bottom: u32,
    pub right: u8,
    pub top: u32,
    pub normalization: Normalization,
    pub spectral: f64,
}

/// Vertex weight; zero when paths are not conserved.
pub fn boson_weight(c: &BosonVertexConfig, t: f64) -> f64 {
    if c.left > 1 || c.right > 1 || c.left as u64 + c.bottom as u64 != c.right as u64 + c.top as u64 {
        return 0.0;
    }
    let deposit = 1.0 - t.powi(c.bottom as i32 + 1);
    let x = c.spectral;
    match (c.normalization, c.left, c.right) {
        (Normalization::Black, 0, 0) => 1.0,
        (Normalization::Black, 0, 1) => x,
        (Normalization::Black, 1, 0) => deposit,
        (Normalization::Black, _, _) => x,
        (Normalization::Red, 0, 0) => x,
        (Normalization::Red, 0, 1) => 1.0,
        (Normalization::Red, 1, 0) => x * deposit,
        (Normalization::Red, _, _) => 1.0,
    }
}

fn black(x: f64, t: f64, left: u8, bottom: u32, top: u32, right: u8) -> f64 {
    boson_weight(
        &BosonVertexConfig {
            left,
            bottom,
            right,
            top,
            normalization: Normalization::Black,
            spectral: x,
        },
        t,
    )
}

/// Row operator kinds by boundary bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowOperator {
    A,
    B,
    C,
    D,
}

impl RowOperator {
    /// `(left, right)` boundary bits.
    pub fn boundary(self) -> (u8, u8) {
        match self {
            RowOperator::A => (0, 0),
            RowOperator::B => (0, 1),
            RowOperator::C => (1, 0),
            RowOperator::D => (1, 1),
        }
    }
}

/// Occupation vector `(n_1, …, n_L)` of a partition.
pub fn occupations(lambda: &Partition, sites: usize) -> Result<Vec<u32>> {
    if lambda.first() as usize > sites {
        return Err(Error::Constraint(format!(
            "L = {sites} is smaller than the largest part of {lambda}"
        )));
    }
    Ok((1..=sites as u32).map(|j| lambda.multiplicity(j) as u32).collect())
}

/// Partition with multiplicities `n`.
pub fn partition_of(n: &[u32]) -> Partition {
    let mut parts = Vec::new();
    for (j, &c) in n.iter().enumerate().rev() {
        parts.extend(std::iter::repeat_n(j as u32 + 1, c as usize));
    }
    Partition::from_unsorted(parts)
}

/// Factorized row weight with generic vertex weights `w(left, bottom, top, right)`.
fn row_weight_with(
    left: u8,
    right: u8,
    bottom: &[u32],
    top: &[u32],
    mut w: impl FnMut(u8, u32, u32, u8) -> f64,
) -> f64 {
    let mut h = left as i64;
    let mut out = 1.0;
    for s in (0..bottom.len()).rev() {
        let next = h + bottom[s] as i64 - top[s] as i64;
        if !(0..=1).contains(&next) {
            return 0.0;
        }
        out *= w(h as u8, bottom[s], top[s], next as u8);
        if out == 0.0 {
            return 0.0;
        }
        h = next;
    }
    if h == right as i64 {
        out
    } else {
        0.0
    }
}

/// `⟨bottom| Op |top⟩` for a row with the given normalization.
pub fn row_weight(
    op: RowOperator,
    normalization: Normalization,
    spectral: f64,
    bottom: &[u32],
    top: &[u32],
    t: f64,
) -> Result<f64> {
    if bottom.len() != top.len() {
        return Err(Error::LengthMismatch(format!(
            "bottom has {} sites, top has {}",
            bottom.len(),
            top.len()
        )));
    }
    let (left, right) = op.boundary();
    Ok(row_weight_with(left, right, bottom, top, |l, b, tp, r| {
        boson_weight(
            &BosonVertexConfig {
                left: l,
                bottom: b,
                right: r,
                top: tp,
                normalization,
                spectral,
            },
            t,
        )
    }))
}

/// Operators whose matrix elements are skew Hall–Littlewood functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SkewOperator {
    /// Black `A(a)`.
    A,
    /// Black `B(a)`.
    B,
    /// Red `C(b)`.
    CBar,
    /// Red `D(b)`.
    DBar,
}

/// `⟨bra| Op |ket⟩` with partitions identified through multiplicities.
pub fn row_operator_element(
    kind: SkewOperator,
    spectral: f64,
    bra: &Partition,
    ket: &Partition,
    sites: usize,
    t: f64,
) -> Result<f64> {
    let bottom = occupations(bra, sites)?;
    let top = occupations(ket, sites)?;
    let (op, norm) = match kind {
        SkewOperator::A => (RowOperator::A, Normalization::Black),
        SkewOperator::B => (RowOperator::B, Normalization::Black),
        SkewOperator::CBar => (RowOperator::C, Normalization::Red),
        SkewOperator::DBar => (RowOperator::D, Normalization::Red),
    };
    row_weight(op, norm, spectral, &bottom, &top, t)
}

/// Indices of one Yang–Baxter matrix element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct YbIndices {
    pub i1: u8,
    pub i2: u8,
    pub j1: u8,
    pub j2: u8,
    pub m: u32,
    pub n: u32,
}

/// Both sides of the RLL relation for a black weight function `w(spectral,
/// left, bottom, top, right)`. The R vertex uses the stochastic weights at
/// `ab` and the two boson vertices use spectral parameters `1/b` and `a`.
pub fn yang_baxter_sides(
    idx: YbIndices,
    a: f64,
    b: f64,
    t: f64,
    w: impl Fn(f64, u8, u32, u32, u8) -> f64,
) -> (f64, f64) {
    let r = |h_in: u8, v_in: u8, h_out: u8, v_out: u8| {
        stochastic_weight(t, a * b, h_in == 1, v_in == 1, h_out == 1, v_out == 1)
    };
    let YbIndices { i1, i2, j1, j2, m, n } = idx;
    let mut lhs = 0.0;
    let mut rhs = 0.0;
    for k1 in 0..=1u8 {
        for k2 in 0..=1u8 {
            // lower boson vertex fixes the intermediate occupation
            let p = m as i64 + k1 as i64 - j1 as i64;
            if p >= 0 {
                let p = p as u32;
                lhs += r(i1, i2, k1, k2) * w(1.0 / b, k1, m, p, j1) * w(a, k2, p, n, j2);
            }
            let p = m as i64 + i2 as i64 - k2 as i64;
            if p >= 0 {
                let p = p as u32;
                rhs += w(a, i2, m, p, k2) * w(1.0 / b, i1, p, n, k1) * r(k1, k2, j1, j2);
            }
        }
    }
    (lhs, rhs)
}

/// `|LHS - RHS|` of the Yang–Baxter relation with the t-boson weights.
#[allow(clippy::too_many_arguments)]
pub fn verify_yang_baxter(i1: u8, i2: u8, j1: u8, j2: u8, m: u32, n: u32, a: f64, b: f64, t: f64) -> f64 {
    let (l, r) = yang_baxter_sides(YbIndices { i1, i2, j1, j2, m, n }, a, b, t, |x, i, bot, top, j| {
        black(x, t, i, bot, top, j)
    });
    (l - r).abs()
}

/// The four finite-volume exchange relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Exchange {
    CA,
    CB,
    DA,
    DB,
}

impl std::str::FromStr for Exchange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CA" => Ok(Exchange::CA),
            "CB" => Ok(Exchange::CB),
            "DA" => Ok(Exchange::DA),
            "DB" => Ok(Exchange::DB),
            other => Err(Error::Constraint(format!("unknown exchange relation {other}"))),
        }
    }
}

type Term = (f64, RowOperator, bool, RowOperator, bool);

impl Exchange {
    /// Terms `(coefficient, P, P uses 1/b, Q, Q uses 1/b)` of both sides;
    /// each term stands for `coefficient * P Q`.
    fn sides(self, a: f64, b: f64, t: f64) -> (Vec<Term>, Vec<Term>) {
        use RowOperator::*;
        let ab = a * b;
        match self {
            Exchange::CA => (
                vec![(1.0 - ab, C, true, A, false), (ab * (1.0 - t), A, true, C, false)],
                vec![(1.0 - t * ab, A, false, C, true)],
            ),
            Exchange::CB => (
                vec![(1.0 - ab, C, true, B, false), (ab * (1.0 - t), A, true, D, false)],
                vec![(t * (1.0 - ab), B, false, C, true), (ab * (1.0 - t), A, false, D, true)],
            ),
            Exchange::DA => (
                vec![(1.0 - ab, D, true, A, false), (ab * (1.0 - t), B, true, C, false)],
                vec![(1.0 - ab, A, false, D, true), (1.0 - t, B, false, C, true)],
            ),
            Exchange::DB => (
                vec![(1.0 - ab, D, true, B, false), (ab * (1.0 - t), B, true, D, false)],
                vec![(1.0 - t * ab, B, false, D, true)],
            ),
        }
    }
}

fn basis(sites: usize, cap: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..sites {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=cap).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// All `z` with `|z_s - x_s| <= 1`; a row operator changes each site by at
/// most one, so these are the only intermediate states that contribute.
fn neighbours(x: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &v in x {
        out = out
            .into_iter()
            .flat_map(|z| {
                (v.saturating_sub(1)..=v + 1).map(move |k| {
                    let mut w = z.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Largest discrepancy between the two sides of an exchange relation over
/// all basis vectors with occupations at most `cap`.
pub fn verify_exchange_relation(which: Exchange, sites: usize, cap: u32, a: f64, b: f64, t: f64) -> Result<f64> {
    if sites == 0 {
        return Err(Error::Constraint("L >= 1 is required".into()));
    }
    let (lhs, rhs) = which.sides(a, b, t);
    let el = |op: RowOperator, inv: bool, x: &[u32], y: &[u32]| {
        let s = if inv { 1.0 / b } else { a };
        let (l, r) = op.boundary();
        row_weight_with(l, r, x, y, |i, bot, top, j| black(s, t, i, bot, top, j))
    };
    let side = |terms: &[Term], x: &[u32], y: &[u32], zs: &[Vec<u32>]| -> f64 {
        terms
            .iter()
            .map(|&(c, p, pi, q, qi)| {
                c * zs
                    .iter()
                    .map(|z| el(p, pi, x, z) * el(q, qi, z, y))
                    .sum::<f64>()
            })
            .sum()
    };
    let vecs = basis(sites, cap);
    let mut worst: f64 = 0.0;
    for x in &vecs {
        let zs = neighbours(x);
        for y in &vecs {
            let l = side(&lhs, x, y, &zs);
            let r = side(&rhs, x, y, &zs);
            worst = worst.max((l - r).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{partitions_in_box, skew_p_one, skew_q_one};

    fn cfg(left: u8, bottom: u32, right: u8, top: u32, n: Normalization, x: f64) -> BosonVertexConfig {
        BosonVertexConfig {
            left,
            bottom,
            right,
            top,
            normalization: n,
            spectral: x,
        }
    }

    #[test]
    fn weight_examples() {
        let t = 0.3;
        assert_eq!(boson_weight(&cfg(0, 4, 0, 4, Normalization::Black, 0.7), t), 1.0);
        let w = boson_weight(&cfg(1, 2, 0, 3, Normalization::Black, 0.7), t);
        assert!((w - (1.0 - t.powi(3))).abs() < 1e-15);
        let w = boson_weight(&cfg(1, 2, 0, 3, Normalization::Red, 0.7), t);
        assert!((w - 0.7 * (1.0 - t.powi(3))).abs() < 1e-15);
        assert_eq!(boson_weight(&cfg(1, 2, 0, 2, Normalization::Black, 0.7), t), 0.0);
        assert_eq!(boson_weight(&cfg(0, 1, 1, 0, Normalization::Black, 0.7), t), 0.7);
    }

    #[test]
    fn row_elements_are_skew_functions() {
        let t = 0.35;
        let (a, b) = (0.45, 0.8);
        let all = partitions_in_box(3, 3);
        for lam in &all {
            for mu in &all {
                let ind = |c: bool| if c { 1.0 } else { 0.0 };
                let (l1, m1) = (lam.len(), mu.len());
                let pa = skew_p_one(lam, mu, a, t);
                let qb = skew_q_one(lam, mu, b, t);
                let e = row_operator_element(SkewOperator::A, a, lam, mu, 3, t).unwrap();
                assert!((e - ind(l1 == m1) * pa).abs() < 1e-14);
                let e = row_operator_element(SkewOperator::B, a, lam, mu, 3, t).unwrap();
                assert!((e - ind(l1 == m1 + 1) * pa).abs() < 1e-14);
                let e = row_operator_element(SkewOperator::CBar, b, mu, lam, 3, t).unwrap();
                assert!((e - ind(l1 == m1 + 1) * qb).abs() < 1e-14);
                let e = row_operator_element(SkewOperator::DBar, b, mu, lam, 3, t).unwrap();
                assert!((e - ind(l1 == m1) * qb).abs() < 1e-14);
            }
        }
        let one = Partition::new(vec![1]).unwrap();
        let e = row_operator_element(SkewOperator::B, a, &one, &Partition::empty(), 1, t).unwrap();
        assert_eq!(e, a);
        let e = row_operator_element(SkewOperator::DBar, b, &Partition::empty(), &Partition::empty(), 2, t).unwrap();
        assert_eq!(e, 1.0);
        assert!(row_operator_element(SkewOperator::A, a, &Partition::new(vec![4]).unwrap(), &one, 3, t).is_err());
    }

    #[test]
    fn yang_baxter_holds() {
        assert!(verify_yang_baxter(0, 0, 0, 0, 2, 2, 0.3, 0.6, 0.4) < 1e-14);
        let mut worst: f64 = 0.0;
        for bits in 0..16u8 {
            for m in 0..=4 {
                for n in 0..=4 {
                    let r = verify_yang_baxter(bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1, m, n, 0.3, 0.7, 0.4);
                    worst = worst.max(r);
                }
            }
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn exchange_relations_hold() {
        for which in [Exchange::CA, Exchange::CB, Exchange::DA, Exchange::DB] {
            let r = verify_exchange_relation(which, 2, 2, 0.3, 0.6, 0.45).unwrap();
            assert!(r < 1e-12, "{which:?} {r}");
        }
        let r = verify_exchange_relation(Exchange::DB, 2, 2, 0.0, 0.6, 0.45).unwrap();
        assert!(r < 1e-14);
    }

    #[test]
    fn occupations_round_trip() {
        for lam in partitions_in_box(4, 4) {
            assert_eq!(partition_of(&occupations(&lam, 4).unwrap()), lam);
        }
    }
}
