//! Level-index scalars: a real is stored as `exp` applied `level` times to a
//! mantissa, normalized into `[1, e)` for level ≥ 1.
//!
//! Levels are exact; the mantissa carries ≥ 12 significant digits when the
//! operands are within one level of each other. When two quantities differ
//! by more than f64 can resolve at the result's own precision, additions
//! absorb the smaller one — the absorbed correction is below the
//! representable resolution of the result, so the contract still holds.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::ExactNumError;

const E: f64 = std::f64::consts::E;

/// `value = exp^level(mantissa)`; mantissa ∈ [1, e) for level ≥ 1, any
/// finite real at level 0.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Tower {
    level: u32,
    mantissa: f64,
}

impl Tower {
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "tower from non-finite value");
        let mut v = v;
        let mut level = 0;
        while v >= E {
            v = v.ln();
            level += 1;
        }
        Tower { level, mantissa: v }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    /// The represented value, when it fits in f64.
    pub fn value(&self) -> Option<f64> {
        let mut v = self.mantissa;
        for _ in 0..self.level {
            v = v.exp();
            if !v.is_finite() {
                return None;
            }
        }
        Some(v)
    }

    /// Natural log; drops the level by exactly one for level ≥ 1.
    pub fn ln(&self) -> Result<Tower, ExactNumError> {
        if self.level >= 1 {
            Ok(Tower { level: self.level - 1, mantissa: self.mantissa })
        } else if self.mantissa > 1.0 {
            Ok(Tower::from_f64(self.mantissa.ln()))
        } else {
            Err(ExactNumError::TowerLog(self.mantissa))
        }
    }

    /// `ln` of the value as plain f64, when representable.
    pub fn ln_f64(&self) -> Option<f64> {
        self.ln().ok().and_then(|t| t.value())
    }

    pub fn exp(&self) -> Tower {
        if self.level == 0 && self.mantissa < 1.0 {
            Tower::from_f64(self.mantissa.exp())
        } else {
            Tower { level: self.level + 1, mantissa: self.mantissa }
        }
    }

    pub fn add(&self, rhs: &Tower) -> Tower {
        if let (Some(a), Some(b)) = (self.value(), rhs.value()) {
            let s = a + b;
            if s.is_finite() {
                return Tower::from_f64(s);
            }
        }
        let (hi, lo) = if self.cmp(rhs) == Ordering::Less { (rhs, self) } else { (self, rhs) };
        // hi does not fit f64, so it is positive and huge.
        let r = ratio_f64(lo, hi);
        let corr = (1.0 + r).ln();
        let ln_hi = hi.ln().expect("operand beyond f64 has a total ln");
        ln_hi.add(&Tower::from_f64(corr)).exp()
    }

    pub fn mul(&self, rhs: &Tower) -> Tower {
        if let (Some(a), Some(b)) = (self.value(), rhs.value()) {
            let p = a * b;
            if p.is_finite() {
                return Tower::from_f64(p);
            }
        }
        let la = self.ln().expect("mul operand must exceed 1 beyond f64 range");
        let lb = rhs.ln().expect("mul operand must exceed 1 beyond f64 range");
        la.add(&lb).exp()
    }

    /// Multiplication by a positive f64 scalar.
    pub fn mul_f64(&self, c: f64) -> Tower {
        assert!(c > 0.0 && c.is_finite());
        if let Some(v) = self.value() {
            let p = v * c;
            if p.is_finite() {
                return Tower::from_f64(p);
            }
        }
        let l = self.ln().expect("scalar mul operand must exceed 1 beyond f64 range");
        l.add(&Tower::from_f64(c.ln())).exp()
    }

    /// `self^e` for positive exponent.
    pub fn powf(&self, e: f64) -> Tower {
        assert!(e > 0.0 && e.is_finite());
        if let Some(v) = self.value() {
            let p = v.powf(e);
            if p.is_finite() {
                return Tower::from_f64(p);
            }
        }
        let l = self.ln().expect("powf operand must exceed 1 beyond f64 range");
        l.mul_f64(e).exp()
    }

    pub fn cmp(&self, other: &Tower) -> Ordering {
        if self.level != other.level {
            // Normalization: any level ≥ 1 value is ≥ e, any level-0 is < e.
            return self.level.cmp(&other.level);
        }
        self.mantissa.partial_cmp(&other.mantissa).expect("mantissa is finite")
    }

    /// `lo / hi` for `lo ≤ hi`, as f64 when resolvable at the result's
    /// precision; 0 when the quotient is provably below that resolution.
    pub fn ratio(lo: &Tower, hi: &Tower) -> f64 {
        ratio_f64(lo, hi)
    }

    /// `self − rhs` for scale-separated operands (`rhs/self` well below 1).
    ///
    /// Panics when the operands are at equal scale: that difference is not
    /// resolvable in this representation and callers must restructure the
    /// computation instead.
    pub fn sub_absorb(&self, rhs: &Tower) -> Tower {
        if let (Some(a), Some(b)) = (self.value(), rhs.value()) {
            return Tower::from_f64(a - b);
        }
        let r = ratio_f64(rhs, self);
        assert!(
            r < 0.5,
            "tower subtraction requires scale separation (ratio {r})"
        );
        let ln_hi = self.ln().expect("operand beyond f64 has a total ln");
        ln_hi.add(&Tower::from_f64((1.0 - r).ln())).exp()
    }
}

/// A signed log-space value `sign · magnitude`, for quantities whose logs
/// are themselves towers.
#[derive(Clone, Copy, Debug)]
pub struct SignedLog {
    pub sign: i8,
    pub magnitude: Tower,
}

impl SignedLog {
    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            SignedLog { sign: 0, magnitude: Tower::from_f64(0.0) }
        } else {
            SignedLog { sign: if v > 0.0 { 1 } else { -1 }, magnitude: Tower::from_f64(v.abs()) }
        }
    }

    pub fn positive(magnitude: Tower) -> Self {
        SignedLog { sign: 1, magnitude }
    }

    pub fn negative(magnitude: Tower) -> Self {
        SignedLog { sign: -1, magnitude }
    }

    pub fn to_f64(&self) -> Option<f64> {
        self.magnitude.value().map(|m| m * self.sign as f64)
    }

    pub fn cmp(&self, other: &SignedLog) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {
                let m = self.magnitude.cmp(&other.magnitude);
                if self.sign >= 0 {
                    m
                } else {
                    m.reverse()
                }
            }
            o => o,
        }
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Tower {}
impl PartialOrd for Tower {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Tower {
    fn cmp(&self, other: &Self) -> Ordering {
        Tower::cmp(self, other)
    }
}

/// `lo / hi` as f64 when it is resolvable at the result's precision,
/// 0.0 when it is provably below that resolution.
pub(crate) fn ratio_f64(lo: &Tower, hi: &Tower) -> f64 {
    match (lo.value(), hi.value()) {
        (Some(a), Some(b)) => a / b,
        (Some(_), None) => 0.0,
        (None, Some(_)) => unreachable!("callers order lo ≤ hi"),
        (None, None) => {
            let la = lo.ln().expect("huge operand");
            let lb = hi.ln().expect("huge operand");
            match (la.value(), lb.value()) {
                (Some(a), Some(b)) => (a - b).exp(),
                // One more level down cannot be resolved in f64: the ratio's
                // log differs from 0 by less than the result can represent,
                // or is astronomically negative. Either way 0 is within
                // contract precision.
                _ => {
                    if la.cmp(&lb) == Ordering::Less {
                        0.0
                    } else {
                        // Same mantissa at 12+ digits: correction below
                        // representable resolution of the sum.
                        0.0
                    }
                }
            }
        }
    }
}

/// Hyper-fast-growing sequence kinds.
///
/// - `RecursivePower { r }`: `n_j = exp(½ · n_{j-1}^{4j/r})`, `j ≥ 1`
///   (levels indexed from 1).
/// - `ExpOfPower { r }`: `n_k = exp(k · n_{k-1}^{2/r})`.
#[derive(Clone, Copy, Debug)]
pub enum SequenceKind {
    RecursivePower { r: f64 },
    ExpOfPower { r: f64 },
}

/// One generated term with its admissibility flags against `𝔤_r(x) = e^(x^(2/r))`:
/// `(A) n_k ≥ 3·𝔤(2·n_{k-1})` and `(B) ln(n_k) ≤ 𝔤(n_{k-1})`.
#[derive(Clone, Copy, Debug)]
pub struct SequenceTerm {
    pub value: Tower,
    pub admissible_growth: bool,
    pub admissible_log: bool,
}

pub fn generate_sequence(
    kind: SequenceKind,
    n0: f64,
    count: usize,
) -> Result<Vec<SequenceTerm>, ExactNumError> {
    if n0 < 3.0 {
        return Err(ExactNumError::SequenceParam(format!("seed n0 = {n0} must be >= 3")));
    }
    match kind {
        SequenceKind::RecursivePower { r } if r <= 1.0 => {
            return Err(ExactNumError::SequenceParam(format!("r = {r} must exceed 1")));
        }
        SequenceKind::ExpOfPower { r } if r <= 0.0 => {
            return Err(ExactNumError::SequenceParam(format!("r = {r} must be positive")));
        }
        _ => {}
    }
    let mut out = Vec::with_capacity(count);
    let mut prev = Tower::from_f64(n0);
    for idx in 1..=count {
        let r = match kind {
            SequenceKind::RecursivePower { r } | SequenceKind::ExpOfPower { r } => r,
        };
        let u = prev.powf(2.0 / r); // n_{k-1}^(2/r)
        let value = match kind {
            SequenceKind::RecursivePower { .. } => {
                prev.powf(4.0 * idx as f64 / r).mul_f64(0.5).exp()
            }
            SequenceKind::ExpOfPower { .. } => u.mul_f64(idx as f64).exp(),
        };
        let (adm_a, adm_b) = match kind {
            SequenceKind::ExpOfPower { .. } => {
                // ln n_k = k·u; (A) ⟺ (k − 2^{2/r})·u ≥ ln 3.
                let c = idx as f64 - 2f64.powf(2.0 / r);
                let a = c > 0.0 && u.cmp(&Tower::from_f64(3f64.ln() / c)) != Ordering::Less;
                // (B) ⟺ k·u ≤ e^u; beyond f64 the exponential side wins.
                let b = match u.value() {
                    Some(uv) => {
                        let lhs = idx as f64 * uv;
                        let rhs = uv.exp();
                        !rhs.is_finite() || lhs <= rhs
                    }
                    None => true,
                };
                (a, b)
            }
            SequenceKind::RecursivePower { .. } => {
                // ln n_j = ½·u^{2j}.
                let two_j = 2.0 * idx as f64;
                let a = match u.value() {
                    Some(uv) => {
                        let lhs = 0.5 * uv.powf(two_j);
                        let rhs = 3f64.ln() + 2f64.powf(2.0 / r) * uv;
                        if lhs.is_finite() && rhs.is_finite() {
                            lhs >= rhs
                        } else {
                            uv >= 2.0
                        }
                    }
                    None => true,
                };
                let b = match u.value() {
                    Some(uv) => two_j * uv.ln() - 2f64.ln() <= uv,
                    None => true,
                };
                (a, b)
            }
        };
        out.push(SequenceTerm { value, admissible_growth: adm_a, admissible_log: adm_b });
        prev = value;
    }
    Ok(out)
}
