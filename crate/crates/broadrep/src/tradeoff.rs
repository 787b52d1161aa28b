//! The optimal storage / repair-bandwidth trade-off.
//!
//! Everything here is exact `BigRational` arithmetic: the threshold
//! function alpha_star(γ), its corner points, the min-cut capacity bound
//! it inverts, and the packet counts P* used by the code construction.
//! Floats appear only at presentation time (see `ratio`).
//!
//! Two independent routes exist to the threshold: a closed piecewise form
//! (when r divides k) and an exact inversion of the piecewise-linear cut
//! capacity C(α) (always). tests assert they agree; the flow-graph oracle
//! in `flowgraph` validates both from first principles.

use crate::error::{Error, Result};
use crate::ratio::format_decimal;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;

fn big(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Global system parameters: n storage nodes, any k reconstruct the file,
/// d helpers broadcast during repair, r nodes fail per round keeping a
/// fraction rho of their content, file size m.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub r: usize,
    pub rho: BigRational,
    pub m: BigRational,
}

impl SystemParams {
    pub fn new(
        n: usize,
        k: usize,
        d: usize,
        r: usize,
        rho: BigRational,
        m: BigRational,
    ) -> Result<Self> {
        if n == 0 || k == 0 || d == 0 || r == 0 {
            return Err(Error::InvalidParams("n, k, d, r must all be positive".into()));
        }
        if k > d {
            return Err(Error::InvalidParams(format!("need k <= d, got k={k} d={d}")));
        }
        if d + r > n {
            return Err(Error::InvalidParams(format!(
                "need d <= n - r so d helpers survive, got n={n} d={d} r={r}"
            )));
        }
        if rho.is_negative() || rho >= BigRational::one() {
            return Err(Error::InvalidParams(format!(
                "need 0 <= rho < 1, got {}",
                format_decimal(&rho)
            )));
        }
        if m <= BigRational::zero() {
            return Err(Error::InvalidParams("file size must be positive".into()));
        }
        Ok(Self { n, k, d, r, rho, m })
    }

    /// True when every reconstruction group is made of whole repair
    /// groups (the closed-form threshold applies directly).
    pub fn divides_evenly(&self) -> bool {
        self.k.is_multiple_of(self.r)
    }

    fn one_minus_rho(&self) -> BigRational {
        BigRational::one() - &self.rho
    }
}

/// One term of the cut-capacity sum: a group of `slope` newcomers helped
/// by `coeff` fresh transmissions, contributing
/// min{slope·ρ·α + coeff·β, slope·α}.
#[derive(Debug, Clone, Copy)]
struct CutTerm {
    slope: usize,
    coeff: usize,
    is_remainder: bool,
}

fn cut_terms(p: &SystemParams) -> Vec<CutTerm> {
    let groups = p.k / p.r;
    let mut terms: Vec<CutTerm> = (1..=groups)
        .map(|s| CutTerm { slope: p.r, coeff: p.d - (s - 1) * p.r, is_remainder: false })
        .collect();
    let rem = p.k - groups * p.r;
    if rem > 0 {
        terms.push(CutTerm { slope: rem, coeff: p.d - groups * p.r, is_remainder: true });
    }
    terms
}

/// The cut-capacity lower bound C(α, β): the worst failure pattern's cut,
/// summed over ⌈k/r⌉ newcomer groups. Exact in rationals.
pub fn min_cut_capacity(p: &SystemParams, alpha: &BigRational, beta: &BigRational) -> BigRational {
    let mut total = BigRational::zero();
    for t in cut_terms(p) {
        let slope = big(t.slope);
        let fresh = &slope * &p.rho * alpha + big(t.coeff) * beta;
        let stored = &slope * alpha;
        total += fresh.min(stored);
    }
    total
}

/// One evaluated term of the closed-form cut sum, with the active arm of
/// its min{slope·ρ·α + coeff·β, slope·α} named. Used to attribute an
/// oracle mismatch to the branch structure of the closed form.
#[derive(Debug, Clone)]
pub struct CutTermReport {
    /// Newcomers covered by this term.
    pub newcomers: usize,
    /// Fresh helper transmissions charged by the bandwidth arm.
    pub fresh: usize,
    /// True for the short group left over when r does not divide k.
    pub remainder: bool,
    /// True when the storage arm (slope·α) is the smaller one.
    pub storage_arm: bool,
    pub value: BigRational,
}

/// Evaluate each term of the cut sum separately. Summing the values
/// reproduces `min_cut_capacity` exactly.
pub fn cut_term_breakdown(
    p: &SystemParams,
    alpha: &BigRational,
    beta: &BigRational,
) -> Vec<CutTermReport> {
    cut_terms(p)
        .iter()
        .map(|t| {
            let slope = big(t.slope);
            let fresh = &slope * &p.rho * alpha + big(t.coeff) * beta;
            let stored = &slope * alpha;
            let storage_arm = stored <= fresh;
            CutTermReport {
                newcomers: t.slope,
                fresh: t.coeff,
                remainder: t.is_remainder,
                storage_arm,
                value: if storage_arm { stored } else { fresh },
            }
        })
        .collect()
}

/// Where term `t` stops being binding, per unit of γ: the term's min
/// switches sides at α = c·γ with c = coeff / (d · slope · (1−ρ)).
fn flip_coefficient(p: &SystemParams, t: &CutTerm) -> BigRational {
    big(t.coeff) / (big(p.d) * big(t.slope) * p.one_minus_rho())
}

/// Smallest repair bandwidth with any feasible storage: the γ at which
/// the fully saturated cut still meets the file size. Below it, deeper
/// failure histories pin the cut under M no matter how large α grows.
pub fn min_feasible_gamma(p: &SystemParams) -> BigRational {
    let terms = cut_terms(p);
    let c_max = terms
        .iter()
        .map(|t| flip_coefficient(p, t))
        .max()
        .expect("at least one cut term");
    let unit_beta = BigRational::one() / big(p.d);
    // C(c·γ, γ/d) = γ·C(c, 1/d), so the touch point solves in one division
    &p.m / min_cut_capacity(p, &c_max, &unit_beta)
}

/// Segment-boundary bandwidth f(i) of the closed-form threshold,
/// defined when r divides k for 0 ≤ i ≤ k/r − 1. Strictly decreasing;
/// f(0) starts the plateau and f(k/r−1) is the bandwidth-minimal corner.
pub fn f_boundary(p: &SystemParams, i: usize) -> Result<BigRational> {
    if !p.divides_evenly() {
        return Err(Error::InvalidParams(
            "f_boundary needs r | k; use the remainder-split path".into(),
        ));
    }
    if i >= p.k / p.r {
        return Err(Error::IndexOutOfRange(i));
    }
    let (k, d, r) = (big(p.k), big(p.d), big(p.r));
    let omr = p.one_minus_rho();
    let i_r = big(i);
    let numer = big(2) * &p.m * &d * &omr;
    let denom = (&big(2) * &k - &i_r * &r * &omr) * (&i_r + BigRational::one())
        + big(2) * &k / &r * (&d - &k);
    Ok(numer / denom)
}

/// Coefficient g(i) of the closed-form threshold segment
/// α* = (M − g(i)γ)/(k − ir(1−ρ)).
///
/// Implemented as i(2d−2k+r+ir)/(2d). A published variant carries an
/// extra factor of r; that variant contradicts the corner points and the
/// cut bound for r > 1 (it drives α* negative at the bandwidth-minimal
/// corner, e.g. k=8, d=10, r=2, i=3), so the re-derived coefficient is
/// used and the discrepancy is frozen in tests.
pub fn g_coefficient(p: &SystemParams, i: usize) -> Result<BigRational> {
    if p.divides_evenly() && i >= p.k / p.r {
        return Err(Error::IndexOutOfRange(i));
    }
    let (k, d, r) = (big(p.k), big(p.d), big(p.r));
    let i_r = big(i);
    Ok(&i_r * (big(2) * &d - big(2) * &k + &r + &i_r * &r) / (big(2) * &d))
}

fn alpha_star_closed(p: &SystemParams, gamma: &BigRational) -> Result<BigRational> {
    let segments = p.k / p.r;
    if *gamma >= f_boundary(p, 0)? {
        return Ok(&p.m / big(p.k));
    }
    for i in 1..segments {
        if *gamma >= f_boundary(p, i)? {
            let denom = big(p.k) - big(i) * big(p.r) * p.one_minus_rho();
            return Ok((&p.m - g_coefficient(p, i)? * gamma) / denom);
        }
    }
    // caller guarantees gamma >= f(k/r - 1)
    unreachable!("gamma below the feasible range slipped past the pre-check")
}

/// Threshold storage by exact inversion of C(α): walk the breakpoints of
/// the piecewise-linear concave cut capacity (for this fixed γ) and solve
/// the first segment that reaches M. Works for any r, divisible or not;
/// serves as the second, independent route for r | k.
pub fn alpha_star_inversion(p: &SystemParams, gamma: &BigRational) -> Result<BigRational> {
    if !gamma.is_positive() {
        return Err(Error::InvalidParams("gamma must be positive".into()));
    }
    let beta = gamma / big(p.d);
    let mut breakpoints: Vec<BigRational> = cut_terms(p)
        .iter()
        .map(|t| flip_coefficient(p, t) * gamma)
        .collect();
    breakpoints.sort();
    breakpoints.dedup();
    let mut a_prev = BigRational::zero();
    let mut c_prev = BigRational::zero();
    for b in breakpoints {
        let c_b = min_cut_capacity(p, &b, &beta);
        if c_b >= p.m {
            // the segment slope is positive here: c_prev < M <= c_b
            let slope = (&c_b - &c_prev) / (&b - &a_prev);
            return Ok(a_prev + (&p.m - &c_prev) / slope);
        }
        a_prev = b;
        c_prev = c_b;
    }
    Err(Error::InfeasibleBandwidth {
        gamma: format_decimal(gamma),
        min_gamma: format_decimal(&min_feasible_gamma(p)),
    })
}

/// The threshold function α*(γ): least per-node storage feasible at
/// repair bandwidth γ. Closed form when r | k, exact cut inversion
/// otherwise. Bandwidths below the feasible minimum are an error.
pub fn alpha_star(p: &SystemParams, gamma: &BigRational) -> Result<BigRational> {
    if !gamma.is_positive() {
        return Err(Error::InvalidParams("gamma must be positive".into()));
    }
    let min_gamma = min_feasible_gamma(p);
    if *gamma < min_gamma {
        return Err(Error::InfeasibleBandwidth {
            gamma: format_decimal(gamma),
            min_gamma: format_decimal(&min_gamma),
        });
    }
    if p.divides_evenly() {
        alpha_star_closed(p, gamma)
    } else {
        alpha_star_inversion(p, gamma)
    }
}

/// Where a curve sample sits: on a linear segment, on the storage plateau,
/// or at a named corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentTag {
    /// γ above the plateau start; α* = M/k.
    Plateau,
    /// Interior of the idx-th linear segment counted from the plateau.
    Interior(usize),
    /// The minimum-storage corner (plateau start).
    Msr,
    /// The minimum-bandwidth corner.
    Mbr,
    /// Interior corner where repair group idx+1 stops being binding.
    Boundary(usize),
    /// Corner contributed by the leftover k mod r nodes (r ∤ k only).
    RemainderBoundary,
}

impl fmt::Display for SegmentTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SegmentTag::Plateau => write!(f, "plateau"),
            SegmentTag::Interior(i) => write!(f, "i={i}"),
            SegmentTag::Msr => write!(f, "msr"),
            SegmentTag::Mbr => write!(f, "mbr"),
            SegmentTag::Boundary(i) => write!(f, "f({i})"),
            SegmentTag::RemainderBoundary => write!(f, "fprime"),
        }
    }
}

/// One point of the trade-off curve, exact.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffPoint {
    pub gamma: BigRational,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// γ normalized by failure count and erased fraction: γ/(r(1−ρ)).
    pub gamma_normalized: BigRational,
    pub segment: SegmentTag,
}

fn point(p: &SystemParams, gamma: BigRational, alpha: BigRational, segment: SegmentTag) -> TradeoffPoint {
    let beta = &gamma / big(p.d);
    let gamma_normalized = &gamma / (big(p.r) * p.one_minus_rho());
    TradeoffPoint { gamma, alpha, beta, gamma_normalized, segment }
}

/// All corner points of α*(γ), ascending in γ. Each corner is where one
/// cut term stops being binding; for r | k these are exactly the f(i).
/// Coincident corners (terms flipping at the same γ) are merged.
pub fn curve_corners(p: &SystemParams) -> Vec<TradeoffPoint> {
    let unit_beta = BigRational::one() / big(p.d);
    let mut flips: Vec<(BigRational, bool)> = cut_terms(p)
        .iter()
        .map(|t| (flip_coefficient(p, t), t.is_remainder))
        .collect();
    // ascending flip coefficient = descending corner γ = plateau first
    flips.sort_by(|a, b| a.0.cmp(&b.0));
    let mut corners: Vec<TradeoffPoint> = Vec::new();
    for (idx, (c, is_rem)) in flips.iter().enumerate() {
        let gamma = &p.m / min_cut_capacity(p, c, &unit_beta);
        let alpha = c * &gamma;
        if let Some(last) = corners.last() {
            if last.gamma == gamma {
                // coincident flip: one geometric corner; keep the group label
                continue;
            }
        }
        let kind = if *is_rem { SegmentTag::RemainderBoundary } else { SegmentTag::Boundary(idx) };
        corners.push(point(p, gamma, alpha, kind));
    }
    if let Some(first) = corners.first_mut() {
        first.segment = SegmentTag::Msr;
    }
    if let Some(last) = corners.last_mut() {
        last.segment = SegmentTag::Mbr;
    }
    corners.reverse();
    corners
}

/// The minimum-storage corner: α = M/k at the smallest γ sustaining it.
pub fn msr_point(p: &SystemParams) -> TradeoffPoint {
    if p.divides_evenly() {
        let gamma = &p.m * big(p.r) * big(p.d) * p.one_minus_rho()
            / (big(p.k) * big(p.d - p.k + p.r));
        let alpha = &p.m / big(p.k);
        return point(p, gamma, alpha, SegmentTag::Msr);
    }
    let mut c = curve_corners(p);
    c.pop().expect("at least one corner")
}

/// The minimum-bandwidth corner.
pub fn mbr_point(p: &SystemParams) -> TradeoffPoint {
    if p.divides_evenly() {
        let omr = p.one_minus_rho();
        let denom = big(p.k) * (big(2 * p.d) - big(p.k - p.r) * &omr);
        let alpha = big(2) * &p.m * big(p.d) / &denom;
        let gamma = big(2) * &p.m * big(p.r) * big(p.d) * &omr / denom;
        return point(p, gamma, alpha, SegmentTag::Mbr);
    }
    let mut c = curve_corners(p);
    c.truncate(1);
    c.pop().expect("at least one corner")
}

/// Sample the trade-off curve: `num_points` evenly spaced bandwidths from
/// the feasibility minimum up to 1.2 × the plateau start, merged with the
/// exact corner points, ascending in γ.
pub fn emit_curve(p: &SystemParams, num_points: usize) -> Result<Vec<TradeoffPoint>> {
    if num_points < 2 {
        return Err(Error::InvalidParams("need at least 2 curve points".into()));
    }
    let corners = curve_corners(p);
    let lo = corners.first().expect("nonempty").gamma.clone();
    let plateau_start = corners.last().expect("nonempty").gamma.clone();
    let hi = &plateau_start * big(6) / big(5);
    let step = (&hi - &lo) / big(num_points - 1);
    let mut gammas: Vec<BigRational> =
        (0..num_points).map(|j| &lo + big(j) * &step).collect();
    gammas.extend(corners.iter().map(|c| c.gamma.clone()));
    gammas.sort();
    gammas.dedup();
    let mut out = Vec::with_capacity(gammas.len());
    for gamma in gammas {
        if let Some(corner) = corners.iter().find(|c| c.gamma == gamma) {
            out.push(corner.clone());
            continue;
        }
        let alpha = alpha_star(p, &gamma)?;
        let above = corners.iter().filter(|c| c.gamma > gamma).count();
        let tag = if above == 0 { SegmentTag::Plateau } else { SegmentTag::Interior(above) };
        out.push(point(p, gamma, alpha, tag));
    }
    Ok(out)
}

/// Optimal packet count P*·ξ for the code construction: the file splits
/// into this many packets when each node stores S = (d−(j̄−1)r)ξ of them.
/// Full repair is the ρ=0, ξ=1 case.
pub fn pstar(
    k: usize,
    d: usize,
    r: usize,
    j_bar: usize,
    rho: &BigRational,
    xi: usize,
) -> Result<u64> {
    if r == 0 || k == 0 || j_bar == 0 || xi == 0 {
        return Err(Error::InvalidParams("k, r, j_bar, xi must be positive".into()));
    }
    if j_bar * r > k {
        return Err(Error::InvalidParams(format!(
            "need j_bar*r <= k, got j_bar={j_bar} r={r} k={k}"
        )));
    }
    if d < k {
        return Err(Error::InvalidParams(format!("need d >= k, got d={d} k={k}")));
    }
    if rho.is_negative() || *rho >= BigRational::one() {
        return Err(Error::InvalidParams("need 0 <= rho < 1".into()));
    }
    if rho.is_positive() && !(rho * big(xi)).is_integer() {
        return Err(Error::InvalidParams(
            "rho*xi must be an integer so per-slot packet counts are whole".into(),
        ));
    }
    let omr = BigRational::one() - rho;
    let (kr, rr) = (big(k), big(r));
    let window = big(d - (j_bar - 1) * r);
    let head = &kr / big(2) * (big(2) * &window - &omr * (&kr - &rr));
    let tail = &rr * &omr
        * (big(j_bar - 1) * &kr - big(j_bar) * big(j_bar - 1) / big(2) * &rr);
    let total = big(xi) * (head + tail);
    if !total.is_integer() || total.is_negative() {
        return Err(Error::InvalidParams(format!(
            "packet count {} is not a nonnegative integer; adjust rho or xi",
            total
        )));
    }
    let as_int = total.to_integer();
    u64::try_from(&as_int)
        .map_err(|_| Error::InvalidParams(format!("packet count {as_int} exceeds u64")))
}

/// Derived quantities for the r ∤ k threshold: p whole repair groups,
/// k0 = pr covered nodes, and the split-segment metadata (t*, k′, f′)
/// from the published closed form. The exact inversion does not need
/// these; they are kept for branch reporting and diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct RemainderSplit {
    pub p: usize,
    pub k0: usize,
    /// The t in [0, p−2] satisfying the defining double inequality
    /// (d−k0+tr)/r ≤ (d−k0)/(k−k0) ≤ (d−k0+(t+1)r)/r, when one exists.
    pub t_star: Option<usize>,
    /// The index actually used for branch metadata: t_star, or the
    /// nearest candidate when no t satisfies the condition (diagnostic).
    pub t_used: usize,
    /// k′ = kρ + (1−ρ)k0.
    pub k_prime: BigRational,
    /// The published split-corner bandwidth f′ (not independently
    /// re-derived; compare against `curve_corners`).
    pub f_prime: BigRational,
}

impl RemainderSplit {
    pub fn new(p: &SystemParams) -> Result<Self> {
        if p.divides_evenly() {
            return Err(Error::InvalidParams(
                "k divides evenly into repair groups; no remainder split".into(),
            ));
        }
        let groups = p.k / p.r;
        let k0 = groups * p.r;
        let target = big(p.d - k0) / big(p.k - k0);
        let mut t_star = None;
        let mut t_used = 0usize;
        let mut best_gap: Option<BigRational> = None;
        for t in 0..groups.saturating_sub(1) {
            let lower = big(p.d - k0 + t * p.r) / big(p.r);
            let upper = big(p.d - k0 + (t + 1) * p.r) / big(p.r);
            if lower <= target && target <= upper {
                t_star = Some(t);
                t_used = t;
                break;
            }
            let gap = if target < lower {
                &lower - &target
            } else {
                &target - &upper
            };
            if best_gap.as_ref().is_none_or(|b| gap < *b) {
                best_gap = Some(gap);
                t_used = t;
            }
        }
        let k_prime = big(p.k) * &p.rho + p.one_minus_rho() * big(k0);
        let t = big(t_used);
        let dk0 = big(p.d - k0);
        let kk0 = big(p.k - k0);
        // signed arithmetic: k − k0 − r is negative by construction
        let kk0r = BigRational::from_integer(
            BigInt::from(p.k as i64 - k0 as i64 - p.r as i64),
        );
        let denom = (big(2) * &dk0 * kk0r / &kk0 + (&t + BigRational::one()) * big(p.r)) * &t
            + big(2) * big(p.k) * &dk0 / (&kk0 * p.one_minus_rho());
        let f_prime = big(2) * &p.m * big(p.d) / denom;
        Ok(Self { p: groups, k0, t_star, t_used, k_prime, f_prime })
    }
}

/// One bandwidth where the published r ∤ k closed form and the exact
/// inversion disagree.
#[derive(Debug, Clone)]
pub struct SplitFormMismatch {
    pub gamma: BigRational,
    /// What the published branch form yields (None: γ falls in no valid
    /// published branch, e.g. when the printed boundaries invert).
    pub legacy: Option<BigRational>,
    pub exact: BigRational,
}

/// α* per the published r ∤ k piecewise form, taken literally: printed
/// segment boundaries and branch lines with the remainder-split metadata.
/// The published boundaries are known to misplace segments for some
/// parameters (they can even invert, leaving γ in no branch), which is
/// why the exact inversion is authoritative; this form exists so
/// divergence is reported rather than silently papered over.
pub fn alpha_star_legacy_split(
    p: &SystemParams,
    gamma: &BigRational,
) -> Result<Option<BigRational>> {
    let split = RemainderSplit::new(p)?;
    let t = split.t_used;
    let omr = p.one_minus_rho();
    let (k, d, r) = (big(p.k), big(p.d), big(p.r));
    let dk0 = big(p.d - split.k0);
    let g0 = |i: usize| -> BigRational {
        let ir = big(i);
        &ir * (big(2) * &d - big(2 * split.k0) + &r + &ir * &r) / (big(2) * &d)
    };
    // published boundary f(i); None encodes +∞ (i = -1) or an invalid
    // (nonpositive) denominator
    let f = |i: isize| -> Option<BigRational> {
        if i < 0 {
            return None;
        }
        let iu = i as usize;
        let ir = big(iu);
        let denom = if iu < t {
            (big(2) * &k - &r * (&ir + BigRational::one()) * &omr) * &ir
                + big(2) * &k / &r * &dk0
        } else {
            (big(2) * &split.k_prime - &r * (&ir + BigRational::one()) * &omr) * &ir
                + big(2) * &split.k_prime * &dk0 / &r
                + dk0.clone()
        };
        if denom.is_positive() {
            Some(big(2) * &p.m * &d * &omr / denom)
        } else {
            // not a usable boundary; the caller treats the branch as absent
            Some(BigRational::zero() - BigRational::one())
        }
    };
    let in_interval = |lo: &Option<BigRational>, hi: &Option<BigRational>| -> bool {
        let above_lo = match lo {
            Some(v) if !v.is_negative() => gamma >= v,
            _ => false,
        };
        let below_hi = match hi {
            None => true,
            Some(v) if !v.is_negative() => gamma <= v,
            Some(_) => false,
        };
        above_lo && below_hi
    };
    let extra = &dk0 / &d;
    // branches in published order, upper (large γ) side first
    for i in 0..t {
        if in_interval(&f(i as isize), &f(i as isize - 1)) {
            let denom = &k - big(i) * &r * &omr;
            return Ok(Some((&p.m - g0(i) * gamma) / denom));
        }
    }
    let fp = Some(split.f_prime.clone());
    if in_interval(&fp, &f(t as isize - 1)) {
        let denom = &k - big(t) * &r * &omr;
        return Ok(Some((&p.m - g0(t) * gamma) / denom));
    }
    if in_interval(&f(t as isize), &fp) {
        let denom = &split.k_prime - big(t) * &r * &omr;
        return Ok(Some((&p.m - (g0(t) + &extra) * gamma) / denom));
    }
    for i in t + 1..split.p {
        if in_interval(&f(i as isize), &f(i as isize - 1)) {
            let denom = &split.k_prime - big(i) * &r * &omr;
            return Ok(Some((&p.m - (g0(i) + &extra) * gamma) / denom));
        }
    }
    Ok(None)
}

/// Evaluate both r ∤ k routes on the given bandwidths and report every
/// disagreement. Bandwidths below the feasible minimum are skipped.
pub fn compare_legacy_split(
    p: &SystemParams,
    gammas: &[BigRational],
) -> Result<Vec<SplitFormMismatch>> {
    let min_gamma = min_feasible_gamma(p);
    let mut out = Vec::new();
    for gamma in gammas {
        if *gamma < min_gamma {
            continue;
        }
        let exact = alpha_star_inversion(p, gamma)?;
        let legacy = alpha_star_legacy_split(p, gamma)?;
        if legacy.as_ref() != Some(&exact) {
            out.push(SplitFormMismatch { gamma: gamma.clone(), legacy, exact });
        }
    }
    Ok(out)
}
