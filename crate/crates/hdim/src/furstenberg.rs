//! The tube-family construction: Farey slope sets `Q_n`, fiber point sets
//! `S(t)`, parallelogram coverings of `Λ_n`, the recursive level iteration,
//! covering-cost sequences and box-dimension ratios along hyper-fast
//! sequences.
//!
//! Desk mode materializes tube families explicitly; tower mode carries only
//! the counting data (tube counts, widths, cover sizes) as [`Tower`]
//! scalars, which is everything the dimension estimates consume.

use num::{BigRational, One};
use serde::Serialize;

use crate::dimfn::DimensionFunction;
use crate::exactnum::{farey_pairs, ratio, Rational, SignedLog, Surd, Tower};
use crate::geometry::{apply_affine, build_gn, AffineMap, GeometryError, Tube, TubeFamily};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FurstenbergError {
    #[error("argument outside the map's domain")]
    PhiDomain,
    #[error("fraction {0}/{1} is not in the admissible window for this level")]
    NotInGamma(u64, u64),
    #[error("n = {0} too small for this construction")]
    SmallN(u64),
    #[error("desk budget exceeded: {0} tubes (max {1}); use a tower sequence")]
    DeskBudget(u128, u128),
    #[error("desk mode starts from the unit strip (m0 = 1); got m0 = {0}")]
    DeskSeed(u64),
    #[error("operation requires power-law mode")]
    NeedsAlphaMode,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("tower arithmetic: {0}")]
    Tower(#[from] crate::exactnum::ExactNumError),
}

/// Denominator budget: `n^α` in power mode, `ln(n²)^(r/2)` in log-power
/// mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Mode {
    Alpha(f64),
    LogPow(f64),
}

impl Mode {
    /// `⌊f(n)⌋`, the denominator bound at level n.
    pub fn qmax(&self, n: u64) -> u64 {
        match *self {
            // the 1e-9 nudge protects exact powers like (m⁴)^(1/4) = m
            Mode::Alpha(a) => ((n as f64).powf(a) + 1e-9).floor() as u64,
            Mode::LogPow(r) => ((n as f64 * n as f64).ln().powf(r / 2.0) + 1e-9).floor() as u64,
        }
    }
}

/// Parameters of the recursive construction.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub mode: Mode,
    pub levels: usize,
    pub sequence: SequenceSpec,
    pub m0: u64,
    pub delta0: f64,
}

#[derive(Clone, Debug)]
pub enum SequenceSpec {
    /// Explicit small levels, materialized as tube families.
    Desk(Vec<u64>),
    /// Explicit tower levels.
    Towers(Vec<Tower>),
    /// The canonical admissible tower sequence `n_{j+1} = exp(exp(2·M_j))`,
    /// which satisfies `lnln(n_{j+1}) > M_j` with a factor-2 margin.
    Auto,
}

/// `φ(t) = (1 − t)/(t·√2)`, the slope-to-fraction change of variables,
/// restricted to the window mapping onto `[1/4, 3/4]`.
pub fn phi(t: &Surd) -> Result<Surd, FurstenbergError> {
    if t.signum() <= 0 {
        return Err(FurstenbergError::PhiDomain);
    }
    let one = Surd::from_int(1);
    let num = &one - t;
    let den = t * &Surd::sqrt2();
    let u = &num / &den;
    let quarter = Surd::from_rational(ratio(1, 4));
    let three_quarter = Surd::from_rational(ratio(3, 4));
    if u < quarter || u > three_quarter {
        return Err(FurstenbergError::PhiDomain);
    }
    Ok(u)
}

/// `φ⁻¹(u) = 1/(1 + √2·u)`, exact in surd arithmetic.
pub fn phi_inv(u: &Rational) -> Result<Surd, FurstenbergError> {
    if u < &ratio(1, 4) || u > &ratio(3, 4) {
        return Err(FurstenbergError::PhiDomain);
    }
    let den = Surd::new(BigRational::one(), u.clone());
    Ok(den.inverse())
}

/// The slope parameters `Q_n = φ⁻¹(Γ_n)` with their fractions.
#[derive(Clone, Debug)]
pub struct QSet {
    pub n: u64,
    /// `(p, q, t)` with `p/q ∈ Γ_n` and `t = φ⁻¹(p/q)`.
    pub members: Vec<(u64, u64, Surd)>,
}

pub fn build_qn(n: u64, mode: &Mode) -> Result<QSet, FurstenbergError> {
    if n < 2 {
        return Err(FurstenbergError::SmallN(n));
    }
    let qmax = mode.qmax(n);
    let mut members = Vec::new();
    if qmax >= 1 {
        for (p, q) in farey_pairs(&ratio(1, 4), &ratio(3, 4), qmax) {
            let t = phi_inv(&ratio(p as i64, q as i64))?;
            members.push((p, q, t));
        }
    }
    Ok(QSet { n, members })
}

/// The fiber points of one slope parameter: the distinct values
/// `(p·j + k·q)/(n·q)` over `0 ≤ j, k < n`, rescaled by `t·√2` to give the
/// actual intersection heights.
#[derive(Clone, Debug)]
pub struct StSet {
    pub n: u64,
    pub p: u64,
    pub q: u64,
    pub count: u64,
}

impl StSet {
    /// Exact distinct count in O(1).
    ///
    /// Splitting `j` by residue class mod `q`, each class contributes a
    /// contiguous integer run (runs overlap because `p ≤ n`), and distinct
    /// classes never collide mod `q`; summing run lengths gives
    /// `p·n + min(q, n)·(n − p)`.
    pub fn count_closed_form(n: u64, p: u64, q: u64) -> u64 {
        debug_assert!(p < q && p >= 1);
        debug_assert!(p <= n, "contiguity of per-class runs needs p ≤ n");
        let classes = q.min(n);
        p * n + classes * (n - p)
    }

    /// Exhaustive enumeration of the distinct integers `p·j + k·q`
    /// (independent oracle for the closed form; O(n²)).
    pub fn enumerate_values(n: u64, p: u64, q: u64) -> Vec<u64> {
        let mut seen = vec![false; ((p + q) * (n - 1) + 1) as usize];
        for j in 0..n {
            for k in 0..n {
                seen[(p * j + k * q) as usize] = true;
            }
        }
        (0..seen.len() as u64).filter(|&m| seen[m as usize]).collect()
    }

    /// The fiber values as exact rationals `m/(nq)`.
    pub fn points(&self) -> Vec<Rational> {
        Self::enumerate_values(self.n, self.p, self.q)
            .into_iter()
            .map(|m| ratio(m as i64, (self.n * self.q) as i64))
            .collect()
    }

    /// Rescales a fiber value to the intersection height `t·√2·(m/(nq))`.
    pub fn scale_to_height(&self, t: &Surd, value: &Rational) -> Surd {
        let factor = t * &Surd::sqrt2();
        &factor * &Surd::from_rational(value.clone())
    }
}

/// Fiber set of `p/q ∈ Γ_n`; errors when the fraction is outside the window.
pub fn compute_st(n: u64, p: u64, q: u64, mode: &Mode) -> Result<StSet, FurstenbergError> {
    let in_window = p >= 1
        && ratio(1, 4) <= ratio(p as i64, q as i64)
        && ratio(p as i64, q as i64) <= ratio(3, 4)
        && q <= mode.qmax(n)
        && num::integer::gcd(p, q) == 1;
    if !in_window {
        return Err(FurstenbergError::NotInGamma(p, q));
    }
    Ok(StSet { n, p, q, count: StSet::count_closed_form(n, p, q) })
}

/// Exact size of the union of all fiber sets over `Q_n`.
///
/// Heights from distinct reduced fractions never coincide: the ratio of the
/// two generators `(√2q − 2p)/(q² − 2p²)` has √2-part `qp' − pq' ≠ 0`, so
/// the union count is the plain sum of the per-fraction counts.
pub fn union_st_count(n: u64, mode: &Mode) -> Result<u64, FurstenbergError> {
    let qs = build_qn(n, mode)?;
    Ok(qs.members.iter().map(|&(p, q, _)| StSet::count_closed_form(n, p, q)).sum())
}

/// A covering record: `count` pieces of diameter ≤ `scale`.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub n: u64,
    pub count: u64,
    /// Claimed diameter bound `3·ln(n)/n²` (the constant is valid for
    /// n ≥ 75; `measured_diameter` carries the actual value).
    pub scale: f64,
    pub measured_diameter: f64,
    /// `count · h(scale)` for the supplied cost function.
    pub h_cost: Option<f64>,
}

/// Diameter constant of the covering pieces.
pub const COVER_DIAMETER_CONSTANT: f64 = 3.0;

/// Covers the near-`Q_n` portion of the tube family by one axis-aligned
/// parallelogram per fiber point: x-halfwidth `√2/n²` (the fraction-to-slope
/// distortion) and y-halfwidth `δ_n + 2/n²` (tube width plus maximal slope
/// drift across the x-window).
pub fn cover_lambda(
    n: u64,
    mode: &Mode,
    h: Option<&DimensionFunction>,
) -> Result<CoveringReport, FurstenbergError> {
    if n < 2 {
        return Err(FurstenbergError::SmallN(n));
    }
    let count = union_st_count(n, mode)?;
    let nf = n as f64;
    let delta_n = nf.ln() / (nf * nf);
    let x_half = std::f64::consts::SQRT_2 / (nf * nf);
    let y_half = delta_n + 2.0 / (nf * nf);
    let measured = 2.0 * (x_half * x_half + y_half * y_half).sqrt();
    let scale = COVER_DIAMETER_CONSTANT * delta_n;
    let h_cost = match h {
        Some(h) => {
            Some(h.hausdorff_cost(count, scale).map_err(|_| FurstenbergError::SmallN(n))?)
        }
        None => None,
    };
    Ok(CoveringReport { n, count, scale, measured_diameter: measured, h_cost })
}

/// Membership audit of the covering: sample points of the covered set and
/// check each lies in its fiber point's parallelogram. Deterministic in
/// `seed` and independent of evaluation order.
pub fn audit_lambda_cover(
    n: u64,
    mode: &Mode,
    samples: u64,
    seed: u64,
) -> Result<(u64, u64), FurstenbergError> {
    use rand::{Rng, SeedableRng};
    let qs = build_qn(n, mode)?;
    if qs.members.is_empty() {
        return Ok((0, 0));
    }
    let nf = n as f64;
    let delta_n = nf.ln() / (nf * nf);
    let x_half = std::f64::consts::SQRT_2 / (nf * nf);
    let y_half = delta_n + 2.0 / (nf * nf);
    let hits: u64 = crate::par::map_collect((0..samples).collect(), |i| {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e37_79b9));
        let (_, _, t) = &qs.members[rng.gen_range(0..qs.members.len())];
        let tf = t.to_f64();
        let j = rng.gen_range(0..n);
        let k = rng.gen_range(0..n);
        let x = (tf + rng.gen_range(-x_half..x_half)).clamp(0.0, 1.0);
        let slope = std::f64::consts::SQRT_2 * k as f64 / nf - j as f64 / nf;
        let y = slope * x + j as f64 / nf + rng.gen_range(-delta_n..delta_n);
        // the piece sits on the fiber point s = ℓ_jk(t)
        let s = slope * tf + j as f64 / nf;
        let inside = (x - tf).abs() <= x_half + 1e-12 && (y - s).abs() <= y_half + 1e-12;
        u64::from(inside)
    })
    .into_iter()
    .sum();
    Ok((hits, samples))
}

/// One level of the desk-mode iteration.
#[derive(Clone, Debug)]
pub struct DeskLevel {
    pub level: u32,
    pub tube_count: u64,
    pub delta: f64,
    pub family: TubeFamily,
    /// `lnln(n_{j+1}) > M_j` (power mode) or `ln(n_{j+1}) ≥ M_j`
    /// (log-power mode), when there is a next level.
    pub admissible_next: Option<bool>,
}

/// One level of the tower-mode iteration: counting data only.
#[derive(Clone, Debug)]
pub struct TowerLevel {
    pub level: u32,
    /// `ln(n_j)`.
    pub log_n: Tower,
    /// `M_j = M_0·n_1²···n_j²`.
    pub tube_count: Tower,
    /// `ln(1/δ_j) = Σ (2·ln n_i − lnln n_i)`.
    pub log_inv_delta: Tower,
    /// `ln` of the level's cover size: `M_{j-1}·n_j^(1+3α)·lnln(n_j)` in
    /// power mode, `M_{j-1}·n_j·ln(n_j)^(3r/2)` in log-power mode.
    pub log_cover_count: Tower,
    /// Step admissibility from the previous level.
    pub admissible: bool,
}

#[derive(Clone, Debug)]
pub enum Construction {
    Desk(Vec<DeskLevel>),
    Tower(Vec<TowerLevel>),
}

const DESK_TUBE_BUDGET: u128 = 2_000_000;

/// Runs the recursive construction (see [`SequenceSpec`] for the modes).
pub fn iterate_construction(
    params: &ConstructionParams,
) -> Result<Construction, FurstenbergError> {
    match &params.sequence {
        SequenceSpec::Desk(seq) => iterate_desk(params, seq).map(Construction::Desk),
        SequenceSpec::Towers(seq) => iterate_towers(params, seq).map(Construction::Tower),
        SequenceSpec::Auto => {
            let seq = auto_tower_sequence(params.m0, params.levels);
            iterate_towers(params, &seq).map(Construction::Tower)
        }
    }
}

/// The canonical admissible sequence `n_{j+1} = exp(exp(2·M_j))`.
pub fn auto_tower_sequence(m0: u64, levels: usize) -> Vec<Tower> {
    let mut out = Vec::with_capacity(levels);
    let mut m = Tower::from_f64(m0.max(1) as f64);
    for _ in 0..levels {
        let log_n = m.mul_f64(2.0).exp(); // ln n = e^{2M}
        let n = log_n.exp();
        out.push(n);
        // M ← M·n²  (log-space: ln M + 2 ln n)
        m = ln_of(&m).add(&log_n.mul_f64(2.0)).exp();
    }
    out
}

fn iterate_desk(
    params: &ConstructionParams,
    seq: &[u64],
) -> Result<Vec<DeskLevel>, FurstenbergError> {
    if params.m0 != 1 {
        return Err(FurstenbergError::DeskSeed(params.m0));
    }
    let strip = TubeFamily::new(vec![Tube {
        slope: 0.0,
        intercept: 0.0,
        half_width: params.delta0,
    }])?;
    let mut levels = vec![DeskLevel {
        level: 0,
        tube_count: 1,
        delta: params.delta0,
        family: strip,
        admissible_next: seq.first().map(|&n1| admissible_step(&params.mode, 1.0, n1)),
    }];
    let mut count: u128 = 1;
    for (idx, &n) in seq.iter().enumerate().take(params.levels) {
        if n < 2 {
            return Err(FurstenbergError::SmallN(n));
        }
        count *= (n as u128) * (n as u128);
        if count > DESK_TUBE_BUDGET {
            return Err(FurstenbergError::DeskBudget(count, DESK_TUBE_BUDGET));
        }
        let gn = build_gn(n)?;
        let parent = &levels[idx];
        let mut tubes = Vec::with_capacity(count as usize);
        for t in parent.family.tubes() {
            let map = AffineMap::onto_tube(t);
            let image = apply_affine(&map, &gn);
            tubes.extend_from_slice(image.tubes());
        }
        let family = TubeFamily::new(tubes)?;
        let delta = family.half_width();
        let admissible_next = seq
            .get(idx + 1)
            .map(|&n_next| admissible_step(&params.mode, count as f64, n_next));
        levels.push(DeskLevel {
            level: (idx + 1) as u32,
            tube_count: count as u64,
            delta,
            family,
            admissible_next,
        });
    }
    Ok(levels)
}

/// Power mode: `lnln(n_next) > m`. Log-power mode: `ln(n_next) ≥ m`.
fn admissible_step(mode: &Mode, m: f64, n_next: u64) -> bool {
    let nf = n_next as f64;
    match mode {
        Mode::Alpha(_) => nf.ln().ln() > m,
        Mode::LogPow(_) => nf.ln() >= m,
    }
}

fn iterate_towers(
    params: &ConstructionParams,
    seq: &[Tower],
) -> Result<Vec<TowerLevel>, FurstenbergError> {
    let mut out = Vec::with_capacity(seq.len());
    let mut m = Tower::from_f64(params.m0.max(1) as f64);
    let mut log_inv_delta = Tower::from_f64(if params.delta0 < 1.0 {
        (1.0 / params.delta0).ln()
    } else {
        0.0
    });
    for (idx, n) in seq.iter().enumerate().take(params.levels) {
        let log_n = n.ln()?;
        let loglog_n = log_n.ln()?;
        let admissible = match params.mode {
            Mode::Alpha(_) => loglog_n.cmp(&m) == std::cmp::Ordering::Greater,
            Mode::LogPow(_) => log_n.cmp(&m) != std::cmp::Ordering::Less,
        };
        let ln_m_prev = ln_of(&m);
        let log_cover = match params.mode {
            Mode::Alpha(a) => ln_m_prev
                .add(&log_n.mul_f64(1.0 + 3.0 * a))
                .add(&ln_of(&loglog_n)),
            Mode::LogPow(r) => {
                ln_m_prev.add(&log_n).add(&ln_of(&log_n).mul_f64(1.5 * r))
            }
        };
        // δ_j = δ_{j-1}·ln(n)/n²:  ln(1/δ_j) += 2·ln n − lnln n
        log_inv_delta = log_inv_delta.add(&log_n.mul_f64(2.0).sub_absorb(&loglog_n));
        // M_j = M_{j-1}·n²
        m = ln_m_prev.add(&log_n.mul_f64(2.0)).exp();
        out.push(TowerLevel {
            level: (idx + 1) as u32,
            log_n,
            tube_count: m,
            log_inv_delta,
            log_cover_count: log_cover,
            admissible,
        });
    }
    Ok(out)
}

/// `ln` that tolerates values in `(0, 1]` (where [`Tower::ln`] refuses).
fn ln_of(t: &Tower) -> Tower {
    match t.ln() {
        Ok(l) => l,
        Err(_) => Tower::from_f64(t.value().map(|v| v.ln()).unwrap_or(0.0)),
    }
}

/// Trend of a covering-cost sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CostTrend {
    DecaysToZero,
    Bounded,
    Diverges,
}

#[derive(Clone, Debug)]
pub struct HcostTerm {
    pub level: u32,
    /// `ln cost_j` as a signed log-space value.
    pub log_cost: SignedLog,
    /// Exact f64 evaluation when representable.
    pub f64_log_cost: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct HcostSequence {
    pub alpha: f64,
    pub theta: f64,
    pub terms: Vec<HcostTerm>,
    pub trend: CostTrend,
}

/// Covering cost `cost_j = n_j^(1+3α) · lnln(n_j) · h_θ(ln n_j / n_j²)`
/// along the construction's tower sequence, evaluated in log space.
///
/// With `a = (1+3α)/2`, `L = ln n` and `LL = ln L`, the identity
/// `ln cost = (a − θ)·LL + ln LL − θ·ln(2 − LL/L)` holds exactly (the
/// `(1+3α)·L` contributions of the count and of `h(δ)` cancel
/// algebraically), so the evaluation never subtracts same-scale towers.
pub fn hcost_sequence(
    params: &ConstructionParams,
    theta: f64,
) -> Result<HcostSequence, FurstenbergError> {
    let alpha = match params.mode {
        Mode::Alpha(a) => a,
        Mode::LogPow(_) => return Err(FurstenbergError::NeedsAlphaMode),
    };
    let a = (1.0 + 3.0 * alpha) / 2.0;
    let seq: Vec<Tower> = match &params.sequence {
        SequenceSpec::Towers(seq) => seq.clone(),
        SequenceSpec::Auto => auto_tower_sequence(params.m0, params.levels),
        SequenceSpec::Desk(seq) => {
            seq.iter().map(|&n| Tower::from_f64(n as f64)).collect()
        }
    };
    let mut terms = Vec::with_capacity(seq.len());
    for (idx, n) in seq.iter().enumerate().take(params.levels) {
        let big_l = n.ln()?;
        let big_ll = big_l.ln()?;
        let big_lll = ln_of(&big_ll);
        let rho = Tower::ratio(&big_ll, &big_l);
        let corr = theta * (2.0 - rho).ln();
        let coeff = a - theta;
        let (log_cost, f64_log) = match (big_ll.value(), big_lll.value()) {
            (Some(llv), Some(lllv)) => {
                let v = coeff * llv + lllv - corr;
                (SignedLog::from_f64(v), Some(v))
            }
            _ => {
                // deep levels: the (a−θ)·LL term dominates ln LL and the
                // bounded correction
                let log_cost = if coeff > 0.0 {
                    SignedLog::positive(big_ll.mul_f64(coeff))
                } else if coeff < 0.0 {
                    SignedLog::negative(big_ll.mul_f64(-coeff))
                } else {
                    SignedLog::positive(big_lll)
                };
                (log_cost, None)
            }
        };
        terms.push(HcostTerm { level: (idx + 1) as u32, log_cost, f64_log_cost: f64_log });
    }
    let trend = classify_trend(&terms);
    Ok(HcostSequence { alpha, theta, terms, trend })
}

fn classify_trend(terms: &[HcostTerm]) -> CostTrend {
    if terms.len() < 2 {
        return CostTrend::Bounded;
    }
    let tail = &terms[terms.len().saturating_sub(3)..];
    let all_neg = tail.iter().all(|t| t.log_cost.sign < 0);
    let all_pos = tail.iter().all(|t| t.log_cost.sign > 0);
    let increasing = tail.windows(2).all(|w| {
        w[1].log_cost.magnitude.cmp(&w[0].log_cost.magnitude) == std::cmp::Ordering::Greater
    });
    if all_neg && increasing {
        CostTrend::DecaysToZero
    } else if all_pos && increasing {
        CostTrend::Diverges
    } else {
        CostTrend::Bounded
    }
}

#[derive(Clone, Debug)]
pub struct RatioPoint {
    pub level: u32,
    /// `[lnln(n)·(1 + 3r/2) + ln(n)] / [2·ln(n) − lnln(n)]`.
    pub ratio: f64,
    /// `ln(ratio − ½)`, resolvable long after the f64 ratio pins to ½.
    pub deviation_log: SignedLog,
    pub log_n: Tower,
}

/// Box-dimension ratios along a tower sequence; they decrease to ½.
///
/// With `ρ = lnln(n)/ln(n)` the ratio is `(1 + cρ)/(2 − ρ)`, `c = 1+3r/2`,
/// and the deviation `ratio − ½ = ρ(2c+1)/(2(2−ρ))` is carried in log
/// space.
pub fn boxdim_ratio_sequence(
    r: f64,
    seq: &[Tower],
) -> Result<Vec<RatioPoint>, FurstenbergError> {
    let c = 1.0 + 1.5 * r;
    let mut out = Vec::with_capacity(seq.len());
    for (idx, n) in seq.iter().enumerate() {
        let big_l = n.ln()?;
        let big_ll = big_l.ln()?;
        let rho = Tower::ratio(&big_ll, &big_l);
        let ratio = (1.0 + c * rho) / (2.0 - rho);
        // ln(ratio − ½) = ln ρ + ln((2c+1)/(2(2−ρ)))
        let const_part = ((2.0 * c + 1.0) / (2.0 * (2.0 - rho))).ln();
        let deviation_log = match (big_ll.value(), big_l.value()) {
            (Some(llv), Some(lv)) => SignedLog::from_f64(llv.ln() - lv.ln() + const_part),
            _ => {
                // ln ρ = ln LL − ln L; the constant is absorbed
                let lnl = ln_of(&big_l);
                let lnll = ln_of(&big_ll);
                SignedLog::negative(lnl.sub_absorb(&lnll))
            }
        };
        out.push(RatioPoint { level: (idx + 1) as u32, ratio, deviation_log, log_n: big_l });
    }
    Ok(out)
}
