//! The two-parameter dimension-function family `h(x) = x^a · ln(1/x)^(-b)`.
//!
//! The family houses the power functions (`b = 0`), the zero-dimensional
//! logarithmic functions (`a = 0, b > 0`) and every product of the two, and
//! is totally ordered: `g ≺ h` (g dimensionally smaller, i.e. `h/g → 0` at
//! `0⁺`) iff `(a_g, b_g) < (a_h, b_h)` lexicographically. That makes order,
//! gaps and inverses decidable, which arbitrary monotone functions would
//! not be.
//!
//! Natural logarithms throughout; every claim handled here is invariant
//! under a change of log base up to constants.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DimfnError {
    #[error("invalid parameters (a={a}, b={b}): need a > 0, or a = 0 with b > 0")]
    InvalidParams { a: f64, b: f64 },
    #[error("argument {x} outside the evaluation domain (0, {max}]")]
    Domain { x: f64, max: f64 },
    #[error("target {y} outside the range of the function")]
    OutOfRange { y: f64 },
    #[error("gap undefined: left argument is not strictly dimensionally smaller")]
    GapUndefined,
    #[error("cannot parse dimension function from {0:?}")]
    Parse(String),
}

/// Dimensional comparison result; the implemented family is totally ordered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderRelation {
    /// Left is dimensionally smaller (right/left → 0 at 0⁺).
    Less,
    Greater,
    Equivalent,
}

/// `h(x) = x^a · ln(1/x)^(-b)`, non-decreasing and right continuous on
/// `(0, domain_max]`, with `h(0) = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionFunction {
    a: f64,
    b: f64,
}

impl DimensionFunction {
    pub fn new(a: f64, b: f64) -> Result<Self, DimfnError> {
        let valid = a.is_finite() && b.is_finite() && (a > 0.0 || (a == 0.0 && b > 0.0));
        if !valid {
            return Err(DimfnError::InvalidParams { a, b });
        }
        Ok(DimensionFunction { a, b })
    }

    /// Pure power `x^a`.
    pub fn power(a: f64) -> Result<Self, DimfnError> {
        Self::new(a, 0.0)
    }

    /// Zero-dimensional `ln(1/x)^(-gamma)`.
    pub fn log_power(gamma: f64) -> Result<Self, DimfnError> {
        Self::new(0.0, gamma)
    }

    pub fn power_exponent(&self) -> f64 {
        self.a
    }

    pub fn log_exponent(&self) -> f64 {
        self.b
    }

    /// Upper end of the guaranteed-monotone evaluation domain.
    ///
    /// For `b = 0` the function is a pure power, monotone on all of `(0, 1]`.
    /// Otherwise the logarithmic factor turns around at `ln(1/x) = |b|/a`, so
    /// the domain is cut at `e^(-max(1, |b|/a))` (`e^(-1)` when `a = 0`).
    pub fn domain_max(&self) -> f64 {
        if self.b == 0.0 {
            1.0
        } else if self.a > 0.0 {
            (-(self.b.abs() / self.a).max(1.0)).exp()
        } else {
            (-1.0f64).exp()
        }
    }

    /// Lower end of `ln(1/x)` on the evaluation domain (the log-scale
    /// counterpart of [`Self::domain_max`]).
    pub fn domain_min_u(&self) -> f64 {
        if self.b == 0.0 {
            0.0
        } else if self.a > 0.0 {
            (self.b.abs() / self.a).max(1.0)
        } else {
            1.0
        }
    }

    pub fn eval(&self, x: f64) -> Result<f64, DimfnError> {
        let max = self.domain_max();
        if !(x > 0.0 && x <= max) {
            return Err(DimfnError::Domain { x, max });
        }
        let mut v = x.powf(self.a);
        if self.b != 0.0 {
            v *= (-x.ln()).powf(-self.b);
        }
        Ok(v)
    }

    /// `ln h(e^(-u))` for `u = ln(1/x)`; valid for any `u ≥` the domain cut,
    /// far past the range where `x` itself is representable.
    pub fn log_eval(&self, u: f64) -> f64 {
        debug_assert!(u >= self.domain_min_u());
        let mut v = -self.a * u;
        if self.b != 0.0 {
            v -= self.b * u.ln();
        }
        v
    }

    /// Dimensional order: `Less` means `self ≺ other`.
    pub fn compare(&self, other: &DimensionFunction) -> OrderRelation {
        match (self.a, self.b).partial_cmp(&(other.a, other.b)).expect("finite params") {
            Ordering::Less => OrderRelation::Less,
            Ordering::Greater => OrderRelation::Greater,
            Ordering::Equal => OrderRelation::Equivalent,
        }
    }

    /// The gap `Δ(g, h) = h/g` for `g = self ≺ h = other`, itself a family
    /// member `x^(a_h - a_g) · ln(1/x)^(-(b_h - b_g))` that tends to 0 at 0⁺.
    pub fn gap(&self, other: &DimensionFunction) -> Result<DimensionFunction, DimfnError> {
        if self.compare(other) != OrderRelation::Less {
            return Err(DimfnError::GapUndefined);
        }
        DimensionFunction::new(other.a - self.a, other.b - self.b)
            .map_err(|_| DimfnError::GapUndefined)
    }

    /// Solves `h(x) = y` by bisection; the result satisfies
    /// `|h(x) - y| / y ≤ 1e-12`.
    pub fn inverse(&self, y: f64) -> Result<f64, DimfnError> {
        if !(y > 0.0 && y.is_finite()) {
            return Err(DimfnError::OutOfRange { y });
        }
        let u = self.inverse_log(y.ln())?;
        let x = (-u).exp();
        if x == 0.0 {
            return Err(DimfnError::OutOfRange { y });
        }
        Ok(x)
    }

    /// Solves `ln h(e^(-u)) = ln_y` for `u`, in log space. This reaches
    /// solutions far below the representable range of `x` itself.
    pub fn inverse_log(&self, ln_y: f64) -> Result<f64, DimfnError> {
        let u_min = self.domain_min_u();
        // log_eval is non-increasing in u.
        if ln_y > self.log_eval(u_min) {
            return Err(DimfnError::OutOfRange { y: ln_y.exp() });
        }
        let mut lo = u_min;
        let mut hi = (2.0 * u_min).max(1.0);
        while self.log_eval(hi) > ln_y {
            lo = hi;
            hi *= 2.0;
            if hi > 1e300 {
                return Err(DimfnError::OutOfRange { y: ln_y.exp() });
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.log_eval(mid) > ln_y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi.max(1.0) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Covering cost `N · h(δ)` of `N` sets of diameter `δ`.
    pub fn hausdorff_cost(&self, count: u64, diameter: f64) -> Result<f64, DimfnError> {
        Ok(count as f64 * self.eval(diameter)?)
    }

    /// Upper end of the scale range on which the function is concave, or
    /// `None` when no neighbourhood of 0 is.
    ///
    /// Writing `x = e^(-u)`, the second derivative is ≤ 0 once
    /// `(1-a) - (b+1)/u + a/(au+b) ≥ 0`; for `a < 1, b ≥ 0` the cut
    /// `u ≥ (b+1)/(1-a)` is sufficient. `x^1 · ln(1/x)^(-b)` with `b > 0`
    /// is convex near 0, and members with `b < 0` are not certified here.
    pub fn concave_domain_max(&self) -> Option<f64> {
        if self.b < 0.0 {
            return None;
        }
        if self.a == 1.0 {
            return if self.b == 0.0 { Some(1.0) } else { None };
        }
        if self.a > 1.0 {
            return None;
        }
        let u_c = self.domain_min_u().max((self.b + 1.0) / (1.0 - self.a));
        Some(if u_c == 0.0 { 1.0 } else { (-u_c).exp() })
    }

    /// Whether the function is concave on some neighbourhood of 0.
    pub fn is_concave_member(&self) -> bool {
        self.concave_domain_max().is_some()
    }
}

impl fmt::Display for DimensionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a != 0.0, self.b != 0.0) {
            (true, true) => write!(f, "x^{}*log^{}", self.a, -self.b),
            (true, false) => write!(f, "x^{}", self.a),
            (false, _) => write!(f, "log^{}", -self.b),
        }
    }
}

impl FromStr for DimensionFunction {
    type Err = DimfnError;

    /// Accepts `"x^A"`, `"log^B"` and `"x^A*log^B"`; the log exponent is the
    /// literal power of `log(1/x)`, so `"log^-2"` is `ln(1/x)^(-2)`.
    fn from_str(s: &str) -> Result<Self, DimfnError> {
        let bad = || DimfnError::Parse(s.to_string());
        let mut a = 0.0f64;
        let mut log_pow: Option<f64> = None;
        let mut saw_x = false;
        for part in s.split('*') {
            let part = part.trim();
            if let Some(rest) = part.strip_prefix("x^") {
                if saw_x {
                    return Err(bad());
                }
                a = rest.parse().map_err(|_| bad())?;
                saw_x = true;
            } else if part == "x" {
                if saw_x {
                    return Err(bad());
                }
                a = 1.0;
                saw_x = true;
            } else if let Some(rest) = part.strip_prefix("log^") {
                if log_pow.is_some() {
                    return Err(bad());
                }
                log_pow = Some(rest.parse().map_err(|_| bad())?);
            } else {
                return Err(bad());
            }
        }
        if !saw_x && log_pow.is_none() {
            return Err(bad());
        }
        DimensionFunction::new(a, -log_pow.unwrap_or(0.0))
            .map_err(|_| bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn df(a: f64, b: f64) -> DimensionFunction {
        DimensionFunction::new(a, b).unwrap()
    }

    #[test]
    fn construction_guards() {
        assert!(DimensionFunction::new(0.0, 0.0).is_err());
        assert!(DimensionFunction::new(0.0, -1.0).is_err());
        assert!(DimensionFunction::new(-0.5, 1.0).is_err());
        assert!(DimensionFunction::new(0.0, 2.0).is_ok());
        assert!(DimensionFunction::new(0.5, -3.0).is_ok());
    }

    #[test]
    fn eval_examples() {
        // square root
        assert!((df(0.5, 0.0).eval(0.25).unwrap() - 0.5).abs() < 1e-15);
        // 1/ln(1/x) at e^-4
        let x = (-4.0f64).exp();
        assert!((df(0.0, 1.0).eval(x).unwrap() - 0.25).abs() < 1e-15);
        // x² ln(1/x)^(-2) at e^-1: ln(1/x) = 1
        let e1 = (-1.0f64).exp();
        assert!((df(2.0, 2.0).eval(e1).unwrap() - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn eval_domain_violations() {
        let h = df(0.0, 1.0);
        assert!(h.eval(0.0).is_err());
        assert!(h.eval(-0.1).is_err());
        assert!(h.eval(0.5).is_err()); // above e^-1
        let p = df(0.5, 0.0);
        assert!(p.eval(1.0).is_ok()); // pure powers run up to 1
        assert!(p.eval(1.0 + 1e-9).is_err());
    }

    #[test]
    fn compare_examples() {
        assert_eq!(df(0.5, 0.0).compare(&df(0.6, 0.0)), OrderRelation::Less);
        assert_eq!(df(2.0, 3.0).compare(&df(2.0, 3.0)), OrderRelation::Equivalent);
        // zero-dimensional functions precede every power
        assert_eq!(df(0.0, 1.0).compare(&df(0.3, 0.0)), OrderRelation::Less);
        assert_eq!(df(0.3, 0.0).compare(&df(0.0, 1.0)), OrderRelation::Greater);
    }

    #[test]
    fn gap_examples() {
        let d = df(2.0, 1.0).gap(&df(2.0, 3.0)).unwrap();
        assert_eq!((d.power_exponent(), d.log_exponent()), (0.0, 2.0));
        // Δ(h_θ, h_r) = log^(θ-r)(1/x) for θ < r
        let d = df(0.0, 0.5).gap(&df(0.0, 2.0)).unwrap();
        assert_eq!((d.power_exponent(), d.log_exponent()), (0.0, 1.5));
        assert!(df(1.0, 1.0).gap(&df(1.0, 1.0)).is_err());
        assert!(df(2.0, 0.0).gap(&df(1.0, 0.0)).is_err());
    }

    #[test]
    fn gap_tends_to_zero() {
        let g = df(0.0, 1.0);
        let h = df(0.0, 3.0);
        let delta = g.gap(&h).unwrap();
        let mut prev = f64::INFINITY;
        for i in 1..=40 {
            let u = 2f64.powi(i);
            let v = delta.log_eval(u);
            assert!(v < prev, "gap log-value must decrease");
            prev = v;
        }
        assert!(prev < -20.0);
    }

    #[test]
    fn inverse_examples() {
        let h = df(0.0, 1.0);
        let x = h.inverse(0.25).unwrap();
        assert!((x - (-4.0f64).exp()).abs() < 1e-14);
        let h = df(0.5, 0.0);
        assert!((h.inverse(0.5).unwrap() - 0.25).abs() < 1e-13);
        // x/ln(1/x) = 0.01, checked by forward evaluation
        let h = df(1.0, 1.0);
        let y = 0.01;
        let x = h.inverse(y).unwrap();
        let back = h.eval(x).unwrap();
        assert!((back - y).abs() / y <= 1e-12);
        assert!(h.inverse(1e9).is_err());
        assert!(h.inverse(-1.0).is_err());
    }

    #[test]
    fn hausdorff_cost_examples() {
        let h = df(0.2, 1.0);
        let d = h.domain_max() / 2.0;
        assert!((h.hausdorff_cost(1, d).unwrap() - h.eval(d).unwrap()).abs() < 1e-15);
        // middle-thirds self-similarity: 2^k · h(3^-k) = 1 for h = x^(ln2/ln3)
        let s = 2f64.ln() / 3f64.ln();
        let h = df(s, 0.0);
        for k in 1..=30u32 {
            let cost = h.hausdorff_cost(1u64 << k, 3f64.powi(-(k as i32))).unwrap();
            assert!((cost - 1.0).abs() < 1e-12, "k={k}: {cost}");
        }
        // 2^8 sets of diameter 2^-768 under 1/log cost 256/(768 ln 2) ≈ 0.4809
        let h = df(0.0, 1.0);
        let log_cost = (256f64).ln() + h.log_eval(768.0 * 2f64.ln());
        let expect = 256.0 / (768.0 * 2f64.ln());
        assert!((log_cost.exp() - expect).abs() < 1e-12);
        assert!((expect - 0.4809).abs() < 1e-4);
    }

    #[test]
    fn monotone_on_domain() {
        for h in [df(0.5, 0.0), df(0.0, 1.0), df(2.0, 2.0), df(1.0, -2.0), df(0.3, 4.0)] {
            let max = h.domain_max();
            let mut prev = 0.0;
            for i in 1..=1000 {
                let x = max * i as f64 / 1000.0;
                let v = h.eval(x).unwrap();
                assert!(v >= prev, "{h} not monotone at {x}");
                prev = v;
            }
        }
    }

    #[test]
    fn doubling_on_tail() {
        // h(2x) ≤ 2^a·2·h(x) on the deep tail of the domain (the artificial
        // domain cut inflates the ratio near the edge for large b).
        for h in [df(0.5, 0.0), df(0.0, 1.0), df(0.0, 2.0), df(2.0, 2.0), df(1.0, -2.0)] {
            let (a, b) = (h.power_exponent(), h.log_exponent());
            let bound = 2f64.powf(a) * 2.0;
            let u_min = if b == 0.0 {
                0.0
            } else if a > 0.0 {
                (b.abs() / a).max(1.0)
            } else {
                1.0
            };
            let u_start = u_min + (1.0f64).max(2.0 * b.abs()) + 2f64.ln();
            for i in 0..1000 {
                let u = u_start + i as f64 * 0.7;
                // x = e^-u, 2x ⇒ u - ln 2
                let ratio = (h.log_eval(u - 2f64.ln()) - h.log_eval(u)).exp();
                assert!(ratio <= bound + 1e-12, "{h} doubling ratio {ratio} at u={u}");
            }
        }
    }

    #[test]
    fn concave_min_inequality() {
        // min(s,t) ≤ (s/h(s))·h(t) for concave members, sampled pairs in the
        // concave range.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for h in [df(0.5, 0.0), df(1.0, 0.0), df(0.0, 1.0), df(0.0, 2.5), df(0.7, 1.2)] {
            let max = h.concave_domain_max().expect("concave member");
            for _ in 0..10_000 {
                let s = rng.gen_range(max * 1e-6..max);
                let t = rng.gen_range(max * 1e-6..max);
                let lhs = s.min(t);
                let rhs = s / h.eval(s).unwrap() * h.eval(t).unwrap();
                assert!(lhs <= rhs * (1.0 + 1e-12), "{h} at ({s}, {t})");
            }
        }
        // x · ln(1/x)^(-b) is convex near 0, and powers above 1 are convex.
        assert!(!df(1.0, 2.0).is_concave_member());
        assert!(!df(2.0, 0.0).is_concave_member());
    }

    #[test]
    fn order_coherence_along_dyadic_scales() {
        // g ≺ h implies h/g decreasing to 0 along x = e^(-2^i)
        let pairs = [
            (df(0.5, 0.0), df(0.6, 0.0)),
            (df(0.0, 1.0), df(0.3, 0.0)),
            (df(1.0, 2.0), df(1.0, 3.0)),
            (df(0.0, 0.5), df(0.0, 4.0)),
        ];
        for (g, h) in pairs {
            assert_eq!(g.compare(&h), OrderRelation::Less);
            let u_floor = g.domain_min_u().max(h.domain_min_u());
            let log_ratios: Vec<f64> = (1..=40)
                .filter(|i| 2f64.powi(*i) >= u_floor)
                .map(|i| {
                    let u = 2f64.powi(i);
                    h.log_eval(u) - g.log_eval(u)
                })
                .collect();
            // Monotone decreasing tail after the (possible) interior peak.
            let peak = log_ratios
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.partial_cmp(y.1).unwrap())
                .unwrap()
                .0;
            for w in log_ratios[peak..].windows(2) {
                assert!(w[1] < w[0], "tail must decrease for {g} ≺ {h}");
            }
            assert!(*log_ratios.last().unwrap() < -10.0, "tail ratio → 0 for {g} ≺ {h}");
        }
    }

    #[test]
    fn parse_shorthand() {
        let h: DimensionFunction = "x^0.5".parse().unwrap();
        assert_eq!((h.power_exponent(), h.log_exponent()), (0.5, 0.0));
        let h: DimensionFunction = "log^-2".parse().unwrap();
        assert_eq!((h.power_exponent(), h.log_exponent()), (0.0, 2.0));
        let h: DimensionFunction = "x^2*log^-3".parse().unwrap();
        assert_eq!((h.power_exponent(), h.log_exponent()), (2.0, 3.0));
        assert!("".parse::<DimensionFunction>().is_err());
        assert!("log^2".parse::<DimensionFunction>().is_err()); // a = 0 needs b > 0
        assert!("y^2".parse::<DimensionFunction>().is_err());
    }

    #[test]
    fn serde_shape() {
        let h = df(0.5, 2.0);
        let js = serde_json::to_string(&h).unwrap();
        assert_eq!(js, r#"{"a":0.5,"b":2.0}"#);
        let back: DimensionFunction = serde_json::from_str(&js).unwrap();
        assert_eq!(back, h);
    }
}
