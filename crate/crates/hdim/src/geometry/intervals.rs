//! Finite disjoint unions of closed subintervals of `[0,1]` with exact
//! rational endpoints.

use num::{BigRational, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::exactnum::{format_rational, Rational, Surd};

use super::GeometryError;

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, GeometryError> {
        if lo > hi {
            return Err(GeometryError::BadInterval);
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval { lo: Rational::zero(), hi: Rational::from_integer(1.into()) }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_surd(&self, x: &Surd) -> bool {
        let lo = Surd::from_rational(self.lo.clone());
        let hi = Surd::from_rational(self.hi.clone());
        lo <= *x && *x <= hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }
}

/// Sorted list of pairwise disjoint closed intervals, with strictly positive
/// gaps between consecutive members.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    /// Builds from arbitrary order; rejects overlapping or touching intervals.
    pub fn new(mut intervals: Vec<Interval>) -> Result<Self, GeometryError> {
        intervals.sort();
        for (i, w) in intervals.windows(2).enumerate() {
            if w[0].hi >= w[1].lo {
                return Err(GeometryError::Overlap(i));
            }
        }
        Ok(IntervalSet { intervals })
    }

    pub fn unit() -> Self {
        IntervalSet { intervals: vec![Interval::unit()] }
    }

    pub fn empty() -> Self {
        IntervalSet { intervals: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn total_length(&self) -> Rational {
        self.intervals.iter().map(|i| i.length()).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|i| i.contains(x))
    }

    pub fn contains_surd(&self, x: &Surd) -> bool {
        self.intervals.iter().any(|i| i.contains_surd(x))
    }

    /// Exact minimum gap between consecutive intervals; `None` for fewer
    /// than two intervals.
    pub fn min_gap(&self) -> Option<Rational> {
        self.intervals
            .windows(2)
            .map(|w| w[1].lo() - w[0].hi())
            .min()
    }

    /// Exact minimum interval length.
    pub fn min_length(&self) -> Option<Rational> {
        self.intervals.iter().map(|i| i.length()).min()
    }

    /// The members fully contained in `parent` (binary search on the sorted
    /// order, then a linear scan of the overlap range).
    pub fn members_inside(&self, parent: &Interval) -> &[Interval] {
        let start = self.intervals.partition_point(|i| i.lo() < parent.lo());
        let mut end = start;
        while end < self.intervals.len() && self.intervals[end].hi() <= parent.hi() {
            end += 1;
        }
        &self.intervals[start..end]
    }
}

/// Serializes as an array of `["lo", "hi"]` rational strings.
impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.intervals.len()))?;
        for i in &self.intervals {
            seq.serialize_element(&[format_rational(i.lo()), format_rational(i.hi())])?;
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn iv(a: i64, b: i64, c: i64, d: i64) -> Interval {
        Interval::new(ratio(a, b), ratio(c, d)).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(Interval::new(ratio(1, 2), ratio(1, 3)).is_err());
        let set = IntervalSet::new(vec![iv(1, 2, 2, 3), iv(0, 1, 1, 4)]).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.intervals()[0].lo(), &ratio(0, 1));
        // touching intervals are rejected (gaps must be positive)
        assert!(IntervalSet::new(vec![iv(0, 1, 1, 2), iv(1, 2, 2, 3)]).is_err());
    }

    #[test]
    fn gaps_and_lengths() {
        let set = IntervalSet::new(vec![iv(0, 1, 1, 8), iv(1, 4, 3, 8), iv(1, 2, 1, 1)]).unwrap();
        assert_eq!(set.min_gap().unwrap(), ratio(1, 8));
        assert_eq!(set.total_length(), ratio(3, 4));
        assert_eq!(set.min_length().unwrap(), ratio(1, 8));
    }

    #[test]
    fn membership_and_inside() {
        let set = IntervalSet::new(vec![iv(0, 1, 1, 8), iv(1, 4, 3, 8), iv(1, 2, 1, 1)]).unwrap();
        assert!(set.contains(&ratio(5, 16)));
        assert!(!set.contains(&ratio(3, 16)));
        let inside = set.members_inside(&iv(1, 8, 1, 2));
        assert_eq!(inside, &[iv(1, 4, 3, 8)]);
        let x = Surd::new(ratio(1, 4), ratio(1, 100)); // 1/4 + √2/100 ≈ 0.2641
        assert!(set.contains_surd(&x));
    }

    #[test]
    fn serde_shape() {
        let set = IntervalSet::new(vec![iv(0, 1, 1, 8)]).unwrap();
        assert_eq!(serde_json::to_string(&set).unwrap(), r#"[["0","1/8"]]"#);
    }
}
