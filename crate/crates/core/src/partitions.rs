//! Partitions, ± strings and one-variable skew Hall–Littlewood polynomials.
//!
//! A partition inside a `p x m` box is encoded by the boundary path of its
//! Young diagram: `+` is an up step and `-` is a right step, read from the
//! bottom-left corner of the box to its top-right corner. The diagram sits
//! above and to the left of the path.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition stored with trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from non-increasing parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not non-increasing"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    /// Sorts arbitrary parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition { parts }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last() != Some(&0));
        Partition { parts }
    }

    pub const fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Nonzero parts, largest first.
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Part `i` (0-based); zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Number of nonzero parts, i.e. the first column length.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.part(0)
    }

    /// Number of parts equal to `j` (for `j >= 1`).
    pub fn multiplicity(&self, j: u32) -> usize {
        if j == 0 {
            return 0;
        }
        self.parts.iter().filter(|&&p| p == j).count()
    }

    /// Map `j -> m_j` over the distinct nonzero parts.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for &p in &self.parts {
            *out.entry(p).or_insert(0) += 1;
        }
        out
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let mut out = Vec::with_capacity(cols);
        for j in 1..=cols as u32 {
            out.push(self.parts.iter().take_while(|&&p| p >= j).count() as u32);
        }
        Partition { parts: out }
    }

    /// True if `other` is contained in `self` box by box.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.parts.iter().zip(&self.parts).all(|(a, b)| a <= b)
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.len() <= rows && self.first() as usize <= cols
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Free-function form of [`Partition::conjugate`].
pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// All partitions with at most `rows` parts, each at most `cols`.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::from_parts_unchecked(cur.clone()));
        if cur.len() == rows {
            return;
        }
        for v in 1..=max {
            cur.push(v);
            rec(rows, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, cols, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// One step of a ± string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `+1` or `-1`.
    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A finite string over `{+, -}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignString {
    signs: Vec<Sign>,
}

impl SignString {
    pub fn new(signs: Vec<Sign>) -> Self {
        SignString { signs }
    }

    /// `plus` pluses followed by `minus` minuses.
    pub fn ascending(plus: usize, minus: usize) -> Self {
        let mut signs = vec![Sign::Plus; plus];
        signs.extend(std::iter::repeat_n(Sign::Minus, minus));
        SignString { signs }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Sign at 1-based position `i`.
    pub fn at(&self, i: usize) -> Sign {
        self.signs[i - 1]
    }

    pub fn plus_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn minus_count(&self) -> usize {
        self.len() - self.plus_count()
    }

    /// Pluses among the first `i` entries.
    pub fn p(&self, i: usize) -> usize {
        self.signs[..i].iter().filter(|&&s| s == Sign::Plus).count()
    }

    /// Minuses among the first `i` entries.
    pub fn m(&self, i: usize) -> usize {
        i - self.p(i)
    }

    fn check_counts(&self, plus: usize, minus: usize) -> Result<()> {
        let (fp, fm) = (self.plus_count(), self.minus_count());
        if fp != plus || fm != minus {
            return Err(Error::SignCount {
                plus,
                minus,
                found_plus: fp,
                found_minus: fm,
            });
        }
        Ok(())
    }

    /// Membership in the class with `plus` pluses, `minus` minuses, starting
    /// with `first` and ending with the opposite sign.
    pub fn in_class(&self, first: Sign, plus: usize, minus: usize) -> bool {
        let last = if first == Sign::Plus { Sign::Minus } else { Sign::Plus };
        self.check_counts(plus, minus).is_ok()
            && self.signs.first() == Some(&first)
            && self.signs.last() == Some(&last)
    }

    /// Errors unless the string starts with `+`, ends with `-` and has
    /// `plus` pluses and `minus` minuses.
    pub fn require_domain_class(&self, plus: usize, minus: usize) -> Result<()> {
        self.check_counts(plus, minus)?;
        if self.signs.first() != Some(&Sign::Plus) || self.signs.last() != Some(&Sign::Minus) {
            return Err(Error::InvalidSigns(format!(
                "{self} must start with + and end with -"
            )));
        }
        Ok(())
    }

    /// All strings with the given counts, in lexicographic order (`+` first).
    pub fn all_with_counts(plus: usize, minus: usize) -> Vec<SignString> {
        fn rec(p: usize, m: usize, cur: &mut Vec<Sign>, out: &mut Vec<SignString>) {
            if p == 0 && m == 0 {
                out.push(SignString::new(cur.clone()));
                return;
            }
            if p > 0 {
                cur.push(Sign::Plus);
                rec(p - 1, m, cur, out);
                cur.pop();
            }
            if m > 0 {
                cur.push(Sign::Minus);
                rec(p, m - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(plus, minus, &mut Vec::new(), &mut out);
        out
    }

    /// Strings that start with `first`, end with the opposite sign and have
    /// the given counts.
    pub fn all_in_class(first: Sign, plus: usize, minus: usize) -> Vec<SignString> {
        Self::all_with_counts(plus, minus)
            .into_iter()
            .filter(|s| s.in_class(first, plus, minus))
            .collect()
    }
}

impl FromStr for SignString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '\u{2212}' => Ok(Sign::Minus),
                other => Err(Error::InvalidSigns(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignString { signs })
    }
}

impl TryFrom<String> for SignString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignString> for String {
    fn from(s: SignString) -> Self {
        s.to_string()
    }
}

impl fmt::Display for SignString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// A skew diagram `outer / inner`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewDiagram {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewDiagram {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::InvalidPartition(format!(
                "{inner} is not contained in {outer}"
            )));
        }
        Ok(SkewDiagram { outer, inner })
    }
}

impl fmt::Display for SkewDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

/// The partition framed above-left of the lattice path `signs` in a
/// `p x m` box.
pub fn partition_from_string(signs: &SignString, p: usize, m: usize) -> Result<Partition> {
    signs.check_counts(p, m)?;
    // rows are produced bottom first: the k-th plus closes row p-k+1
    let mut minus_seen = 0u32;
    let mut rows = Vec::with_capacity(p);
    for &s in signs.signs() {
        match s {
            Sign::Minus => minus_seen += 1,
            Sign::Plus => rows.push(minus_seen),
        }
    }
    rows.reverse();
    Partition::new(rows)
}

/// Inverse of [`partition_from_string`].
pub fn string_from_partition(lambda: &Partition, p: usize, m: usize) -> Result<SignString> {
    if !lambda.fits_in_box(p, m) {
        return Err(Error::DoesNotFit {
            partition: lambda.to_string(),
            rows: p,
            cols: m,
        });
    }
    let mut signs = Vec::with_capacity(p + m);
    let mut prev = 0u32;
    for k in 1..=p {
        let row = lambda.part(p - k);
        signs.extend(std::iter::repeat_n(Sign::Minus, (row - prev) as usize));
        signs.push(Sign::Plus);
        prev = row;
    }
    signs.extend(std::iter::repeat_n(Sign::Minus, m - prev as usize));
    Ok(SignString::new(signs))
}

/// True iff `mu ≺ lambda`, i.e. `λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ …`.
pub fn interlaces(lambda: &Partition, mu: &Partition) -> bool {
    interlaces_parts(lambda.parts(), mu.parts())
}

pub(crate) fn interlaces_parts(lambda: &[u32], mu: &[u32]) -> bool {
    if mu.len() > lambda.len() || lambda.len() > mu.len() + 1 {
        return false;
    }
    let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
    (0..lambda.len()).all(|i| at(lambda, i) >= at(mu, i) && at(mu, i) >= at(lambda, i + 1))
}

/// Walks the distinct part values of two partitions together and yields
/// `(value, m_value(lambda), m_value(mu))`.
fn joint_multiplicities(lambda: &[u32], mu: &[u32], mut f: impl FnMut(usize, usize)) {
    let (mut i, mut j) = (0, 0);
    while i < lambda.len() || j < mu.len() {
        let v = match (lambda.get(i), mu.get(j)) {
            (Some(&a), Some(&b)) => a.max(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        let mut ml = 0;
        while i < lambda.len() && lambda[i] == v {
            ml += 1;
            i += 1;
        }
        let mut mm = 0;
        while j < mu.len() && mu[j] == v {
            mm += 1;
            j += 1;
        }
        f(ml, mm);
    }
}

pub(crate) fn skew_p_parts(lambda: &[u32], mu: &[u32], a: f64, t: f64) -> f64 {
    if !interlaces_parts(lambda, mu) {
        return 0.0;
    }
    let diff = lambda.iter().sum::<u32>() - mu.iter().sum::<u32>();
    let mut w = a.powi(diff as i32);
    joint_multiplicities(lambda, mu, |ml, mm| {
        if ml + 1 == mm {
            w *= 1.0 - t.powi(mm as i32);
        }
    });
    w
}

pub(crate) fn skew_q_parts(lambda: &[u32], mu: &[u32], b: f64, t: f64) -> f64 {
    if !interlaces_parts(lambda, mu) {
        return 0.0;
    }
    let diff = lambda.iter().sum::<u32>() - mu.iter().sum::<u32>();
    let mut w = b.powi(diff as i32);
    joint_multiplicities(lambda, mu, |ml, mm| {
        if ml == mm + 1 {
            w *= 1.0 - t.powi(ml as i32);
        }
    });
    w
}

/// One-variable skew Hall–Littlewood polynomial `P_{λ/μ}(a)`.
pub fn skew_p_one(lambda: &Partition, mu: &Partition, a: f64, t: f64) -> f64 {
    skew_p_parts(lambda.parts(), mu.parts(), a, t)
}

/// One-variable skew Hall–Littlewood polynomial `Q_{λ/μ}(b)`.
pub fn skew_q_one(lambda: &Partition, mu: &Partition, b: f64, t: f64) -> f64 {
    skew_q_parts(lambda.parts(), mu.parts(), b, t)
}

/// All `lambda` with `mu ≺ lambda`, at most `rows` parts and `lambda_1 <= cap`.
pub fn interlacing_above(mu: &Partition, rows: usize, cap: u32) -> Vec<Partition> {
    let n = (mu.len() + 1).min(rows);
    if mu.len() > rows || mu.first() > cap {
        return Vec::new();
    }
    // lambda_i ranges over [mu_i, mu_{i-1}] (with mu_0 = cap)
    let ranges: Vec<(u32, u32)> = (0..n)
        .map(|i| {
            let hi = if i == 0 { cap } else { mu.part(i - 1) };
            (mu.part(i), hi)
        })
        .collect();
    product_of_ranges(&ranges)
}

/// All `lambda` with `lambda ≺ kappa` and at most `rows` parts.
pub fn interlacing_below(kappa: &Partition, rows: usize) -> Vec<Partition> {
    if kappa.len() > rows + 1 {
        return Vec::new();
    }
    // lambda_i ranges over [kappa_{i+1}, kappa_i]
    let ranges: Vec<(u32, u32)> = (0..kappa.len().min(rows))
        .map(|i| (kappa.part(i + 1), kappa.part(i)))
        .collect();
    product_of_ranges(&ranges)
}

fn product_of_ranges(ranges: &[(u32, u32)]) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; ranges.len()];
    fn rec(i: usize, ranges: &[(u32, u32)], cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == ranges.len() {
            out.push(Partition::from_unsorted(cur.clone()));
            return;
        }
        for v in ranges[i].0..=ranges[i].1 {
            cur[i] = v;
            rec(i + 1, ranges, cur, out);
        }
    }
    rec(0, ranges, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[6, 3, 3, 1]).conjugate(), p(&[4, 3, 3, 1, 1, 1]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[1, 1, 1]).conjugate(), p(&[3]));
    }

    #[test]
    fn string_bijection_examples() {
        let s: SignString = "-+--++---+".parse().unwrap();
        assert_eq!(partition_from_string(&s, 4, 6).unwrap(), p(&[6, 3, 3, 1]));
        assert_eq!(string_from_partition(&p(&[6, 3, 3, 1]), 4, 6).unwrap(), s);
        let s: SignString = "++--".parse().unwrap();
        assert_eq!(partition_from_string(&s, 2, 2).unwrap(), Partition::empty());
        assert_eq!(string_from_partition(&Partition::empty(), 2, 2).unwrap(), s);
        let s: SignString = "-+".parse().unwrap();
        assert_eq!(partition_from_string(&s, 1, 1).unwrap(), p(&[1]));
        assert!(partition_from_string(&s, 2, 0).is_err());
        assert!(string_from_partition(&p(&[3]), 1, 2).is_err());
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlaces(&p(&[2, 1]), &p(&[1, 1])));
        assert!(!interlaces(&p(&[1]), &p(&[2])));
        assert!(interlaces(&p(&[7]), &Partition::empty()));
        assert!(!interlaces(&p(&[2, 2]), &Partition::empty()));
    }

    #[test]
    fn skew_examples() {
        let (a, b, t) = (0.3, 0.7, 0.4);
        assert_eq!(skew_p_one(&p(&[1]), &Partition::empty(), a, t), a);
        assert!((skew_p_one(&p(&[2, 1]), &p(&[1, 1]), a, t) - a * (1.0 - t * t)).abs() < 1e-15);
        assert_eq!(skew_p_one(&p(&[1]), &p(&[2]), a, t), 0.0);
        assert!((skew_q_one(&p(&[1]), &Partition::empty(), b, t) - b * (1.0 - t)).abs() < 1e-15);
        assert_eq!(skew_q_one(&p(&[3, 1]), &p(&[3, 1]), b, t), 1.0);
        assert!((skew_q_one(&p(&[2]), &p(&[1]), b, t) - b * (1.0 - t)).abs() < 1e-15);
        assert_eq!(skew_p_one(&Partition::empty(), &Partition::empty(), 0.0, t), 1.0);
    }

    #[test]
    fn neighbors_match_filter() {
        let all = partitions_in_box(3, 5);
        for mu in &all {
            let mut up: Vec<_> = all.iter().filter(|l| interlaces(l, mu)).cloned().collect();
            up.sort();
            let mut got = interlacing_above(mu, 3, 5);
            got.sort();
            assert_eq!(got, up, "above {mu}");
            let mut down: Vec<_> = all.iter().filter(|l| interlaces(mu, l)).cloned().collect();
            down.sort();
            let mut got = interlacing_below(mu, 3);
            got.sort();
            assert_eq!(got, down, "below {mu}");
        }
    }

    #[test]
    fn serde_forms() {
        let lam = p(&[6, 3, 3, 1]);
        assert_eq!(serde_json::to_string(&lam).unwrap(), "[6,3,3,1]");
        let back: Partition = serde_json::from_str("[6,3,3,1,0]").unwrap();
        assert_eq!(back, lam);
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
        let s: SignString = serde_json::from_str("\"-+--++---+\"").unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "\"-+--++---+\"");
    }
}
