//! Nested contour integral formulas for t-moments.
//!
//! On the Hall–Littlewood side, for `m_1 >= … >= m_k >= 1`,
//!
//! ```text
//! E Π t^(m_i - λ'_1(m_i)) = t^(k(k-1)/2) ∮…∮ Π_{i<j} (z_i - z_j)/(t z_i - z_j)
//!     Π_l Π_j (1 - z_l b_j)/(1 - t z_l b_j) Π_l Π_{i<=m_l} (t z_l - a_i)/(z_l - a_i)  Π dz_l/(2πi z_l)
//! ```
//!
//! over circles `|z_r| = r_r` enclosing `0` and the `a_i`, excluding the
//! points `1/(t b_j)`, with `r_s < t r_r` for `r < s`. The six vertex side is
//! the image under `w = 1/z` written in native parameters; its circles enclose
//! `0` and `1/u_j` and exclude `ξ_x/√Q`.
//!
//! Integrals are computed with the periodic trapezoid rule on each circle,
//! doubling the node count until two successive values agree.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::six_vertex::{NativeParams, SixVertexParams};

/// Which formula a contour family belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Hl,
    SixVertex,
}

/// Concentric circles used for one integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourFamily {
    pub side: Side,
    /// `radii[r]` is the radius of contour `r + 1`.
    pub radii: Vec<f64>,
    /// Every circle must lie strictly outside this radius.
    pub inner_bound: f64,
    /// Every circle must lie strictly inside this radius.
    pub outer_bound: f64,
    /// Safety factor `s` in the geometric spacing.
    pub spacing: f64,
}

/// Trapezoid rule settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureOptions {
    pub start_nodes: usize,
    pub max_nodes: usize,
    /// Stop when two successive values differ by less than `tol * max(1, |I|)`.
    pub tol: f64,
    /// Upper limit on `nodes^k` for one evaluation.
    pub max_evaluations: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        QuadratureOptions {
            start_nodes: 256,
            max_nodes: 4096,
            tol: 1e-9,
            max_evaluations: 1 << 27,
        }
    }
}

/// Result of a quadrature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentValue {
    pub value: f64,
    /// Imaginary part of the final estimate (should vanish).
    pub imag: f64,
    pub nodes: usize,
    /// Difference between the last two estimates.
    pub increment: f64,
    pub radii: Vec<f64>,
}

fn check_indices(ms: &[usize]) -> Result<()> {
    if ms.is_empty() {
        return Err(Error::Constraint("at least one m_i is required".into()));
    }
    if ms.windows(2).any(|w| w[0] < w[1]) || *ms.last().unwrap() == 0 {
        return Err(Error::Constraint(format!(
            "m_1 >= m_2 >= … >= m_k >= 1 fails for {ms:?}"
        )));
    }
    Ok(())
}

/// Increasing radii `ρ_1 < … < ρ_k` strictly between `lo` and `hi` with
/// `ρ_{j+1} = ρ_j / (q s)`.
fn nested_radii(lo: f64, hi: f64, q: f64, k: usize) -> Result<(Vec<f64>, f64)> {
    let spread = |s: f64| (1.0 / (q * s)).powi(k as i32 - 1);
    let mut s = 0.9;
    if k > 1 && !(lo * spread(s) < hi) {
        // smallest admissible s, then move halfway (geometrically) towards 1
        let s_min = (lo / hi).powf(-1.0 / (k as f64 - 1.0)) / q;
        if !(s_min < 1.0) {
            return Err(Error::InfeasibleContours(format!(
                "no spacing fits {k} circles between {lo} and {hi} with ratio 1/{q}"
            )));
        }
        s = s_min.sqrt();
    }
    let top = hi / spread(s);
    let bottom = if lo > 0.0 { lo } else { top * 1e-2 };
    if !(bottom < top) {
        return Err(Error::InfeasibleContours(format!(
            "no radius between {lo} and {hi}"
        )));
    }
    let rho1 = (bottom * top).sqrt();
    let radii = (0..k).map(|j| rho1 * (1.0 / (q * s)).powi(j as i32)).collect();
    Ok((radii, s))
}

fn outer_limit(bmax: f64, t: f64, lo: f64) -> f64 {
    if bmax > 0.0 {
        1.0 / (t * bmax)
    } else {
        // nothing to exclude
        (lo.max(1.0)) * 1e3
    }
}

/// Circles for the Hall–Littlewood formula.
pub fn select_hl_contours(ms: &[usize], t: f64, a: &[f64], b: &[f64]) -> Result<ContourFamily> {
    check_indices(ms)?;
    let k = ms.len();
    if a.len() < ms[0] {
        return Err(Error::LengthMismatch(format!(
            "need a_1..a_{} but only {} given",
            ms[0],
            a.len()
        )));
    }
    let a = &a[..ms[0]];
    let bound = t.powi(k as i32 - 1);
    for (x, &ax) in a.iter().enumerate() {
        for (y, &by) in b.iter().enumerate() {
            if !(ax * by < bound) {
                return Err(Error::InfeasibleContours(format!(
                    "a_{} b_{} < t^(k-1) fails: {} >= {bound}",
                    x + 1,
                    y + 1,
                    ax * by
                )));
            }
        }
    }
    let lo = a.iter().cloned().fold(0.0, f64::max);
    let hi = outer_limit(b.iter().cloned().fold(0.0, f64::max), t, lo);
    let (mut radii, s) = nested_radii(lo, hi, t, k)?;
    radii.reverse();
    Ok(ContourFamily {
        side: Side::Hl,
        radii,
        inner_bound: lo,
        outer_bound: hi,
        spacing: s,
    })
}

/// Circles for the six vertex formula, from native parameters.
pub fn select_sixv_contours(ms: &[usize], p: &NativeParams) -> Result<ContourFamily> {
    check_indices(ms)?;
    let k = ms.len();
    if p.xi.len() < ms[0] {
        return Err(Error::LengthMismatch(format!(
            "need xi_1..xi_{} but only {} given",
            ms[0],
            p.xi.len()
        )));
    }
    let xi = &p.xi[..ms[0]];
    let sq = p.q.sqrt();
    // a_x b_y < Q^(k-1) in native form
    let bound = p.q.powi(-(k as i32 - 1)) / sq;
    for (x, &v) in xi.iter().enumerate() {
        for (y, &w) in p.u.iter().enumerate() {
            if !(v * w > bound) {
                return Err(Error::InfeasibleContours(format!(
                    "xi_{} u_{} > Q^(1-k)/sqrt(Q) fails: {} <= {bound}",
                    x + 1,
                    y + 1,
                    v * w
                )));
            }
        }
    }
    let lo = p.u.iter().map(|&u| 1.0 / u).fold(0.0, f64::max);
    let hi_raw = xi.iter().map(|&v| v / sq).fold(f64::INFINITY, f64::min);
    let hi = if hi_raw.is_finite() { hi_raw } else { lo.max(1.0) * 1e3 };
    let (radii, s) = nested_radii(lo, hi, p.q, k)?;
    Ok(ContourFamily {
        side: Side::SixVertex,
        radii,
        inner_bound: lo,
        outer_bound: hi,
        spacing: s,
    })
}

/// Circles for either side, from matched parameters.
pub fn select_contours(side: Side, ms: &[usize], params: &SixVertexParams) -> Result<ContourFamily> {
    match side {
        Side::Hl => select_hl_contours(ms, params.t, &params.a, &params.b),
        Side::SixVertex => select_sixv_contours(ms, &params.to_native()),
    }
}

/// Checks that `radii` satisfy the contour conditions for `side`.
pub fn check_radii(side: Side, radii: &[f64], inner: f64, outer: f64, q: f64) -> Result<()> {
    for (r, &rad) in radii.iter().enumerate() {
        if !(rad > inner && rad < outer) {
            return Err(Error::InfeasibleContours(format!(
                "radius {} = {rad} not in ({inner}, {outer})",
                r + 1
            )));
        }
    }
    for r in 0..radii.len() {
        for s in r + 1..radii.len() {
            let ok = match side {
                Side::Hl => radii[s] < q * radii[r],
                Side::SixVertex => radii[r] < q * radii[s],
            };
            if !ok {
                return Err(Error::InfeasibleContours(format!(
                    "circles {} and {} are not separated by the factor {q}",
                    r + 1,
                    s + 1
                )));
            }
        }
    }
    Ok(())
}

/// Hall–Littlewood integrand at `z` without the `dz/(2πi z)` measure.
pub fn hl_integrand(z: &[Complex64], ms: &[usize], t: f64, a: &[f64], b: &[f64]) -> Complex64 {
    let k = z.len();
    let mut v = Complex64::new(t.powi((k * (k - 1) / 2) as i32), 0.0);
    for i in 0..k {
        for j in i + 1..k {
            v *= (z[i] - z[j]) / (t * z[i] - z[j]);
        }
    }
    for (l, &zl) in z.iter().enumerate() {
        v *= hl_single(zl, ms[l], t, a, b);
    }
    v
}

fn hl_single(z: Complex64, m: usize, t: f64, a: &[f64], b: &[f64]) -> Complex64 {
    let mut v = Complex64::new(1.0, 0.0);
    for &bj in b {
        v *= (1.0 - z * bj) / (1.0 - t * z * bj);
    }
    for &ai in &a[..m] {
        v *= (t * z - ai) / (z - ai);
    }
    v
}

/// Six vertex integrand at `w` without the `dw/(2πi w)` measure.
pub fn sixv_integrand(w: &[Complex64], ms: &[usize], p: &NativeParams) -> Complex64 {
    let k = w.len();
    let mut v = Complex64::new(p.q.powi((k * (k - 1) / 2) as i32), 0.0);
    for i in 0..k {
        for j in i + 1..k {
            v *= (w[i] - w[j]) / (w[i] - p.q * w[j]);
        }
    }
    for (l, &wl) in w.iter().enumerate() {
        v *= sixv_single(wl, ms[l], p);
    }
    v
}

fn sixv_single(w: Complex64, m: usize, p: &NativeParams) -> Complex64 {
    let sq = p.q.sqrt();
    let mut v = Complex64::new(1.0, 0.0);
    for &u in &p.u {
        v *= (1.0 - p.q * w * u) / (1.0 - w * u);
    }
    for &xi in &p.xi[..m] {
        v *= (xi - w / sq) / (xi - sq * w);
    }
    v
}

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= 16 {
        return v.iter().sum();
    }
    let (l, r) = v.split_at(v.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

/// Mean of `Π single_l(z_l) Π_{i<j} cross(z_i, z_j)` over the node grid.
fn grid_mean(
    nodes: &[Vec<Complex64>],
    single: &[Vec<Complex64>],
    cross: &dyn Fn(Complex64, Complex64) -> Complex64,
) -> Complex64 {
    fn rec(
        level: usize,
        nodes: &[Vec<Complex64>],
        single: &[Vec<Complex64>],
        cross: &dyn Fn(Complex64, Complex64) -> Complex64,
        chosen: &mut Vec<Complex64>,
    ) -> Complex64 {
        let n = nodes[level].len();
        let terms: Vec<Complex64> = (0..n)
            .map(|i| {
                let z = nodes[level][i];
                let mut v = single[level][i];
                for &c in chosen.iter() {
                    v *= cross(c, z);
                }
                if level + 1 == nodes.len() {
                    v
                } else {
                    chosen.push(z);
                    let inner = rec(level + 1, nodes, single, cross, chosen);
                    chosen.pop();
                    v * inner
                }
            })
            .collect();
        pairwise_sum(&terms) / n as f64
    }
    rec(0, nodes, single, cross, &mut Vec::with_capacity(nodes.len()))
}

fn circle(radius: f64, n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|j| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect()
}

fn adaptive(
    radii: &[f64],
    opts: &QuadratureOptions,
    eval: impl Fn(usize) -> Complex64,
) -> Result<MomentValue> {
    let k = radii.len();
    let fits = |n: usize| (n as f64).powi(k as i32) <= opts.max_evaluations as f64 && n <= opts.max_nodes;
    let mut n = opts.start_nodes.max(4);
    if !fits(n) {
        return Err(Error::Quadrature(format!("{n} nodes exceed the evaluation budget")));
    }
    let mut prev = eval(n);
    loop {
        let next_n = 2 * n;
        if !fits(next_n) {
            return Err(Error::Quadrature(format!(
                "node cap reached at {n} nodes per contour without agreement to {}",
                opts.tol
            )));
        }
        let cur = eval(next_n);
        let inc = (cur - prev).norm();
        if inc <= opts.tol * cur.norm().max(1.0) {
            return Ok(MomentValue {
                value: cur.re,
                imag: cur.im,
                nodes: next_n,
                increment: inc,
                radii: radii.to_vec(),
            });
        }
        prev = cur;
        n = next_n;
    }
}

/// Hall–Littlewood side on the given circles.
pub fn hl_moment_with_radii(
    ms: &[usize],
    t: f64,
    a: &[f64],
    b: &[f64],
    radii: &[f64],
    opts: &QuadratureOptions,
) -> Result<MomentValue> {
    let fam = select_hl_contours(ms, t, a, b)?;
    if radii.len() != ms.len() {
        return Err(Error::LengthMismatch(format!(
            "{} radii for {} contours",
            radii.len(),
            ms.len()
        )));
    }
    check_radii(Side::Hl, radii, fam.inner_bound, fam.outer_bound, t)?;
    let k = ms.len();
    let pref = t.powi((k * (k - 1) / 2) as i32);
    adaptive(radii, opts, |n| {
        let nodes: Vec<Vec<Complex64>> = radii.iter().map(|&r| circle(r, n)).collect();
        let single: Vec<Vec<Complex64>> = nodes
            .iter()
            .zip(ms)
            .map(|(zs, &m)| zs.iter().map(|&z| hl_single(z, m, t, a, b)).collect())
            .collect();
        pref * grid_mean(&nodes, &single, &|zi, zj| (zi - zj) / (t * zi - zj))
    })
}

/// `E Π t^(m_i - λ'_1(m_i))` for the ascending process with `a_1..a_{m_1}`
/// and `b_1..b_N`.
pub fn hl_moment(ms: &[usize], t: f64, a: &[f64], b: &[f64], opts: &QuadratureOptions) -> Result<MomentValue> {
    let fam = select_hl_contours(ms, t, a, b)?;
    hl_moment_with_radii(ms, t, a, b, &fam.radii, opts)
}

/// Six vertex side on the given circles.
pub fn sixv_moment_with_radii(
    ms: &[usize],
    p: &NativeParams,
    radii: &[f64],
    opts: &QuadratureOptions,
) -> Result<MomentValue> {
    let fam = select_sixv_contours(ms, p)?;
    if radii.len() != ms.len() {
        return Err(Error::LengthMismatch(format!(
            "{} radii for {} contours",
            radii.len(),
            ms.len()
        )));
    }
    check_radii(Side::SixVertex, radii, fam.inner_bound, fam.outer_bound, p.q)?;
    let k = ms.len();
    let pref = p.q.powi((k * (k - 1) / 2) as i32);
    let q = p.q;
    adaptive(radii, opts, |n| {
        let nodes: Vec<Vec<Complex64>> = radii.iter().map(|&r| circle(r, n)).collect();
        let single: Vec<Vec<Complex64>> = nodes
            .iter()
            .zip(ms)
            .map(|(ws, &m)| ws.iter().map(|&w| sixv_single(w, m, p)).collect())
            .collect();
        pref * grid_mean(&nodes, &single, &|wi, wj| (wi - wj) / (wi - q * wj))
    })
}

/// `E Π Q^h(m_i + 1, N)` for the six vertex model with native parameters.
pub fn sixv_moment(ms: &[usize], p: &NativeParams, opts: &QuadratureOptions) -> Result<MomentValue> {
    let fam = select_sixv_contours(ms, p)?;
    sixv_moment_with_radii(ms, p, &fam.radii, opts)
}

/// Both sides of the moment identity.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentMatch {
    /// Hall–Littlewood side rescaled by `t^(kN - Σ m_i)`.
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
    pub hl: MomentValue,
    pub sixv: MomentValue,
}

/// Compares `t^(kN - Σm) E Π t^(m_i - λ'_1(m_i))` with `E Π t^h(m_i + 1, N)`,
/// where `N` is the number of `b` parameters.
pub fn moment_match_check(ms: &[usize], params: &SixVertexParams, opts: &QuadratureOptions) -> Result<MomentMatch> {
    let hl = hl_moment(ms, params.t, &params.a, &params.b, opts)?;
    let sixv = sixv_moment(ms, &params.to_native(), opts)?;
    let k = ms.len() as i32;
    let n = params.b.len() as i32;
    let sum_m: i32 = ms.iter().map(|&m| m as i32).sum();
    let lhs = hl.value * params.t.powi(k * n - sum_m);
    let rhs = sixv.value;
    Ok(MomentMatch {
        lhs,
        rhs,
        diff: (lhs - rhs).abs(),
        hl,
        sixv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_sevenths() {
        let opts = QuadratureOptions::default();
        let v = hl_moment(&[1], 0.5, &[0.5], &[0.5], &opts).unwrap();
        assert!((v.value - 4.0 / 7.0).abs() < 1e-12, "{}", v.value);
        assert!(v.imag.abs() < 1e-12);
        let p = SixVertexParams::matched(0.5, vec![0.5], vec![0.5]).unwrap();
        let w = sixv_moment(&[1], &p.to_native(), &opts).unwrap();
        assert!((w.value - 4.0 / 7.0).abs() < 1e-12, "{}", w.value);
        let mm = moment_match_check(&[1], &p, &opts).unwrap();
        assert!(mm.diff < 1e-12);
    }

    #[test]
    fn contour_examples() {
        let fam = select_hl_contours(&[1], 0.5, &[0.1], &[0.1]).unwrap();
        assert!(fam.radii[0] > 0.1 && fam.radii[0] < 20.0);
        assert!(matches!(
            select_hl_contours(&[1, 1, 1], 0.5, &[0.9], &[1.0]),
            Err(Error::InfeasibleContours(_))
        ));
        let fam = select_hl_contours(&[2, 1], 0.5, &[0.3, 0.4], &[0.5]).unwrap();
        assert!(fam.radii[1] < 0.5 * fam.radii[0]);
        check_radii(Side::Hl, &fam.radii, fam.inner_bound, fam.outer_bound, 0.5).unwrap();
        assert!(select_hl_contours(&[1, 2], 0.5, &[0.3, 0.4], &[0.5]).is_err());
    }

    #[test]
    fn zero_a_gives_power_of_t() {
        let opts = QuadratureOptions::default();
        let v = hl_moment(&[2, 1], 0.4, &[0.0, 0.0], &[0.3, 0.2], &opts).unwrap();
        assert!((v.value - 0.4f64.powi(3)).abs() < 1e-10);
    }
}
