//! Enumeration of all reduced fractions with bounded denominator in a
//! rational window.

use num::integer::Integer;
use num::{BigInt, Signed};

use super::Rational;

/// All distinct reduced fractions `p/q ∈ [lo, hi]` admitting a
/// representation with `q ≤ qmax`, as `(p, q)` pairs sorted ascending.
///
/// Double loop over denominators; duplicates collapse on reduction. The
/// count is at most `qmax²`.
pub fn farey_pairs(lo: &Rational, hi: &Rational, qmax: u64) -> Vec<(u64, u64)> {
    assert!(lo < hi, "window must be nonempty");
    let mut seen = std::collections::BTreeSet::new();
    for q in 1..=qmax {
        let qb = BigInt::from(q);
        // ceil(lo·q) ..= floor(hi·q)
        let p_lo = (lo.numer() * &qb).div_ceil(lo.denom());
        let p_hi = (hi.numer() * &qb).div_floor(hi.denom());
        let mut p = p_lo;
        while p <= p_hi {
            if !p.is_negative() {
                let pv: u64 = (&p).try_into().expect("p fits u64 for desk windows");
                let g = pv.gcd(&q);
                seen.insert(Frac(pv / g, q / g));
            }
            p += 1;
        }
    }
    seen.into_iter().map(|Frac(p, q)| (p, q)).collect()
}

/// [`farey_pairs`] lifted to exact rationals.
pub fn farey_enumerate(lo: &Rational, hi: &Rational, qmax: u64) -> Vec<Rational> {
    farey_pairs(lo, hi, qmax)
        .into_iter()
        .map(|(p, q)| Rational::new(p.into(), q.into()))
        .collect()
}

/// Reduced fraction ordered by value (exact cross-multiplication).
#[derive(PartialEq, Eq)]
struct Frac(u64, u64);

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let lhs = self.0 as u128 * other.1 as u128;
        let rhs = other.0 as u128 * self.1 as u128;
        lhs.cmp(&rhs).then_with(|| self.1.cmp(&other.1))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn quarter_window_small() {
        let got = farey_pairs(&ratio(1, 4), &ratio(3, 4), 4);
        assert_eq!(got, vec![(1, 4), (1, 3), (1, 2), (2, 3), (3, 4)]);
        assert!(farey_pairs(&ratio(1, 4), &ratio(3, 4), 1).is_empty());
    }

    #[test]
    fn count_upper_bound() {
        // Σ_{q ≤ Q} (q/2 + 1) ≤ Q²/2 + Q on the half-length window.
        for q in [10u64, 50, 100] {
            let count = farey_pairs(&ratio(1, 4), &ratio(3, 4), q).len() as u64;
            assert!(count <= q * q / 2 + q, "count {count} exceeds bound at qmax={q}");
        }
    }

    #[test]
    fn nested_in_qmax() {
        let lo = ratio(1, 4);
        let hi = ratio(3, 4);
        let mut prev = Vec::new();
        for q in 1..=20 {
            let cur = farey_pairs(&lo, &hi, q);
            let prev_set: std::collections::BTreeSet<_> = prev.iter().cloned().collect();
            assert!(prev_set.iter().all(|f| cur.contains(f)));
            prev = cur;
        }
    }

    #[test]
    fn endpoints_included() {
        let got = farey_enumerate(&ratio(1, 4), &ratio(3, 4), 4);
        assert_eq!(got.first().unwrap(), &ratio(1, 4));
        assert_eq!(got.last().unwrap(), &ratio(3, 4));
    }
}
