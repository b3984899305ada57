//! δ-tubes over `0 ≤ x ≤ 1`, tube families, affine composition and the
//! G-set slope check.

use serde::{Deserialize, Serialize};

use crate::par;

use super::GeometryError;

/// Closed δ-neighbourhood (in y) of the segment `y = m·x + b`, `x ∈ [0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tube {
    #[serde(rename = "m")]
    pub slope: f64,
    #[serde(rename = "b")]
    pub intercept: f64,
    #[serde(rename = "delta")]
    pub half_width: f64,
}

/// Finite set of tubes sharing one half-width.
#[derive(Clone, Debug, Serialize)]
pub struct TubeFamily {
    tubes: Vec<Tube>,
    half_width: f64,
    /// Lattice size when the family is a `G_n` (slopes `√2k/n − j/n`).
    pub n: Option<u64>,
    /// Iteration level for composed families.
    pub level: Option<u32>,
}

impl TubeFamily {
    pub fn new(tubes: Vec<Tube>) -> Result<Self, GeometryError> {
        let first = tubes.first().ok_or(GeometryError::EmptyFamily)?;
        let half_width = first.half_width;
        if half_width <= 0.0 {
            return Err(GeometryError::BadWidth);
        }
        if tubes.iter().any(|t| t.half_width != half_width) {
            return Err(GeometryError::MixedWidths);
        }
        Ok(TubeFamily { tubes, half_width, n: None, level: None })
    }

    pub fn tubes(&self) -> &[Tube] {
        &self.tubes
    }

    pub fn len(&self) -> usize {
        self.tubes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // nonempty by construction
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Σ of tube areas ignoring overlap: each tube has area `2δ·1`.
    pub fn total_area_bound(&self) -> f64 {
        self.tubes.len() as f64 * 2.0 * self.half_width
    }
}

/// `(x, y) ↦ (x, m·x + δ·y + b)`: maps `[0,1] × [-1,1]` onto the tube
/// `(m, b, δ)`, preserving x exactly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub slope: f64,
    pub vertical_scale: f64,
    pub offset: f64,
}

impl AffineMap {
    pub fn new(slope: f64, vertical_scale: f64, offset: f64) -> Result<Self, GeometryError> {
        if vertical_scale <= 0.0 {
            return Err(GeometryError::BadWidth);
        }
        Ok(AffineMap { slope, vertical_scale, offset })
    }

    pub fn identity() -> Self {
        AffineMap { slope: 0.0, vertical_scale: 1.0, offset: 0.0 }
    }

    /// The map whose image of `[0,1] × [-1,1]` is the given tube.
    pub fn onto_tube(tube: &Tube) -> Self {
        AffineMap { slope: tube.slope, vertical_scale: tube.half_width, offset: tube.intercept }
    }

    pub fn apply_tube(&self, t: &Tube) -> Tube {
        Tube {
            slope: self.slope + self.vertical_scale * t.slope,
            intercept: self.offset + self.vertical_scale * t.intercept,
            half_width: self.vertical_scale * t.half_width,
        }
    }
}

/// Image of a whole family; the common width scales by the map.
pub fn apply_affine(map: &AffineMap, family: &TubeFamily) -> TubeFamily {
    let tubes = family.tubes.iter().map(|t| map.apply_tube(t)).collect();
    TubeFamily {
        tubes,
        half_width: map.vertical_scale * family.half_width,
        n: family.n,
        level: family.level,
    }
}

/// The `n²` tubes of slope `√2·k/n − j/n`, intercept `j/n` and half-width
/// `ln(n)/n²` (j, k ∈ [0, n)).
pub fn build_gn(n: u64) -> Result<TubeFamily, GeometryError> {
    if n < 2 {
        return Err(GeometryError::DegenerateWidth(n));
    }
    let delta = (n as f64).ln() / (n as f64 * n as f64);
    let nf = n as f64;
    let mut tubes = Vec::with_capacity((n * n) as usize);
    for j in 0..n {
        let intercept = j as f64 / nf;
        for k in 0..n {
            let slope = std::f64::consts::SQRT_2 * k as f64 / nf - intercept;
            tubes.push(Tube { slope, intercept, half_width: delta });
        }
    }
    let mut fam = TubeFamily::new(tubes)?;
    fam.n = Some(n);
    fam.level = Some(0);
    Ok(fam)
}

/// Witness that the segment `y = m·x + c` fits inside tube `tube_index`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SlopeWitness {
    pub grid_slope: f64,
    pub tube_index: usize,
    pub intercept: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GsetReport {
    pub all_covered: bool,
    /// One entry per grid slope; `None` marks an uncovered slope.
    pub witnesses: Vec<Option<SlopeWitness>>,
}

/// Checks the G-set property of a family on a uniform slope grid over
/// `[0, 1]`.
///
/// A segment `y = m·x + c` lies in tube `(m', b', δ)` iff both endpoints
/// do: `|c − b'| ≤ δ` and `|(m − m') + (c − b')| ≤ δ`. Some `c` satisfies
/// both iff `|m − m'| ≤ 2δ`, with `c = b' − (m − m')/2` as a witness.
pub fn verify_gset(family: &TubeFamily, slope_grid_size: usize) -> GsetReport {
    if slope_grid_size == 0 {
        return GsetReport { all_covered: true, witnesses: Vec::new() };
    }
    let mut slopes: Vec<(f64, usize)> =
        family.tubes.iter().enumerate().map(|(i, t)| (t.slope, i)).collect();
    slopes.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite slopes"));
    let delta = family.half_width;
    let denom = (slope_grid_size - 1).max(1) as f64;

    let grid: Vec<usize> = (0..slope_grid_size).collect();
    let witnesses = par::map_collect(grid, |i| {
        let m = i as f64 / denom;
        let (idx, dist) = nearest_slope(&slopes, m);
        if dist <= 2.0 * delta {
            let t = &family.tubes[idx];
            Some(SlopeWitness {
                grid_slope: m,
                tube_index: idx,
                intercept: t.intercept - (m - t.slope) / 2.0,
            })
        } else {
            None
        }
    });
    GsetReport { all_covered: witnesses.iter().all(|w| w.is_some()), witnesses }
}

fn nearest_slope(sorted: &[(f64, usize)], m: f64) -> (usize, f64) {
    let pos = sorted.partition_point(|&(s, _)| s < m);
    let mut best = (sorted[0].1, f64::INFINITY);
    for cand in pos.saturating_sub(1)..=pos.min(sorted.len() - 1) {
        let (s, idx) = sorted[cand];
        let d = (m - s).abs();
        if d < best.1 {
            best = (idx, d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gn_counts_and_width() {
        let g2 = build_gn(2).unwrap();
        assert_eq!(g2.len(), 4);
        assert!((g2.half_width() - 2f64.ln() / 4.0).abs() < 1e-15);
        assert!(build_gn(1).is_err());
        let g3 = build_gn(3).unwrap();
        assert_eq!(g3.len(), 9);
        // Σ areas = n²·2δ = 2 ln n
        assert!((g3.total_area_bound() - 2.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn affine_composition() {
        let t = Tube { slope: 0.0, intercept: 0.0, half_width: 0.25 };
        let id = AffineMap::identity();
        assert_eq!(id.apply_tube(&t), t);
        let m = AffineMap::new(1.0, 0.5, 0.0).unwrap();
        let img = m.apply_tube(&t);
        assert_eq!((img.slope, img.intercept, img.half_width), (1.0, 0.0, 0.125));
        // image of G_2 under (m=1/4, δ=ln2/4, b=1/8): widths compose to (ln2/4)²
        let g2 = build_gn(2).unwrap();
        let a = AffineMap::new(0.25, 2f64.ln() / 4.0, 0.125).unwrap();
        let fam = apply_affine(&a, &g2);
        assert_eq!(fam.len(), 4);
        let d = 2f64.ln() / 4.0;
        assert!((fam.half_width() - d * d).abs() < 1e-15);
    }

    #[test]
    fn single_tube_covers_its_own_slope() {
        let fam = TubeFamily::new(vec![Tube { slope: 0.5, intercept: 0.1, half_width: 0.01 }])
            .unwrap();
        // grid point 0.5 exists on an odd-size grid
        let report = verify_gset(&fam, 3);
        let w = report.witnesses[1].unwrap();
        assert_eq!(w.tube_index, 0);
        assert!((w.intercept - 0.1).abs() < 1e-15);
        assert!(!report.all_covered); // slopes 0 and 1 are far away
    }

    #[test]
    fn empty_grid_is_vacuous() {
        let fam = TubeFamily::new(vec![Tube { slope: 0.0, intercept: 0.0, half_width: 1.0 }])
            .unwrap();
        let report = verify_gset(&fam, 0);
        assert!(report.all_covered);
        assert!(report.witnesses.is_empty());
        // the full strip [0,1]×[-1,1] is itself a G-set
        let report = verify_gset(&fam, 101);
        assert!(report.all_covered);
    }

    #[test]
    fn family_invariants() {
        assert_eq!(TubeFamily::new(vec![]).unwrap_err(), GeometryError::EmptyFamily);
        let mixed = vec![
            Tube { slope: 0.0, intercept: 0.0, half_width: 0.1 },
            Tube { slope: 0.0, intercept: 0.0, half_width: 0.2 },
        ];
        assert_eq!(TubeFamily::new(mixed).unwrap_err(), GeometryError::MixedWidths);
    }
}
