//! The lattice `{√2·k/n − j/n : 0 ≤ j, k < n}` and its exact covering
//! radius over `[0, 1]`.
//!
//! Working in `w = n·value` units, the lattice is `{√2·k − j}` with small
//! integer coordinates. Distinct points are separated by at least
//! `|√2·dk − dj| ≥ 1/((2+√2)·|dk|) > 1.4·10⁻⁴` for `|dk| < 2000` (badly
//! approximable √2), while the f64 key `√2·k − j` carries error below
//! `10⁻¹²`, so sorting by the float key reproduces the exact order. The
//! final maximum among near-tied candidates is re-decided in exact integer
//! arithmetic, and the returned radius is an exact surd.

use crate::exactnum::{ratio, Surd};

/// Exact covering radius of the lattice at level `n`, with the
/// `ln(n)/n²` comparison of the well-distribution statement.
#[derive(Clone, Debug)]
pub struct CoveringRadius {
    pub n: u64,
    /// Exact radius: max over `x ∈ [0,1]` of the distance to the lattice.
    pub rho: Surd,
    pub rho_f64: f64,
    /// A point achieving the radius exactly (an endpoint or a gap midpoint).
    pub witness: Surd,
    /// `ln(n)/n²`.
    pub threshold: f64,
    pub within_threshold: bool,
    /// `ρ(n)·n²/ln(n)`.
    pub ratio: f64,
}

/// All `n²` values `√2·k/n − j/n` as exact surds, sorted ascending.
///
/// Quadratic cost in both time and allocation; intended for desk-scale `n`.
/// The covering-radius scan below avoids materializing surds.
pub fn discrepancy_values(n: u64) -> Vec<Surd> {
    assert!(n >= 1);
    let mut out = Vec::with_capacity((n * n) as usize);
    for j in 0..n {
        for k in 0..n {
            out.push(Surd::new(ratio(-(j as i64), n as i64), ratio(k as i64, n as i64)));
        }
    }
    out.sort();
    out
}

/// Candidate distance `(a + b·√2) / (2n)` in value units; comparisons are
/// exact in i64 (coordinates stay below ~10⁴, squares below 10⁹).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Dist {
    a: i64,
    b: i64,
}

impl Dist {
    fn to_surd(self, n: u64) -> Surd {
        Surd::new(ratio(self.a, 2 * n as i64), ratio(self.b, 2 * n as i64))
    }

    fn f64_value(self) -> f64 {
        self.a as f64 + self.b as f64 * std::f64::consts::SQRT_2
    }

    /// Exact sign of `self − other` (never zero unless identical, but a
    /// tie resolves to Equal harmlessly).
    fn cmp_exact(self, other: Dist) -> std::cmp::Ordering {
        let da = self.a - other.a;
        let db = self.b - other.b;
        sign_of(da, db).cmp(&0)
    }
}

/// Exact sign of `da + db·√2`.
fn sign_of(da: i64, db: i64) -> i64 {
    match (da.signum(), db.signum()) {
        (0, 0) => 0,
        (x, y) if x >= 0 && y >= 0 => 1,
        (x, y) if x <= 0 && y <= 0 => -1,
        (x, _) => {
            let lhs = da * da;
            let rhs = 2 * db * db;
            // mixed signs: |da| vs |db|√2
            if lhs > rhs {
                x
            } else {
                -x
            }
        }
    }
}

/// Where the maximum distance is attained.
#[derive(Clone, Copy, Debug)]
enum Site {
    /// x = 0.
    LeftEnd,
    /// x = 1 (w = n).
    RightEnd,
    /// Midpoint between consecutive lattice points.
    Mid { j1: u32, k1: u32, j2: u32, k2: u32 },
}

/// Exact covering radius of level `n`.
///
/// Large levels use a sorting-free pigeonhole pass: with buckets narrower
/// than the mean spacing, the maximum gap must straddle a bucket boundary,
/// so per-bucket minima/maxima determine every candidate. Small levels (and
/// a safety fallback) use a full sorted gap scan. Either way the winner is
/// re-decided exactly and returned as an exact surd.
pub fn covering_radius(n: u64) -> CoveringRadius {
    assert!(n >= 1, "n must be positive");
    if n >= 256 {
        if let Some(r) = covering_radius_swept(n) {
            return r;
        }
    }
    covering_radius_sorted(n)
}

/// Full sorted gap scan (always valid).
fn covering_radius_sorted(n: u64) -> CoveringRadius {
    let entries = sorted_window_entries(n);
    let nf = n as f64;

    // Every candidate in (distance, site) form, in w-units over [0, n].
    let mut best: Option<(Dist, Site)> = None;
    let push = |cand: (Dist, Site), best: &mut Option<(Dist, Site)>| {
        let replace = match best {
            None => true,
            Some((incumbent, _)) => {
                // f64 prefilter with exact confirmation for near ties
                let cf = cand.0.f64_value();
                let bf = incumbent.f64_value();
                if cf > bf + 1e-7 {
                    true
                } else if cf < bf - 1e-7 {
                    false
                } else {
                    cand.0.cmp_exact(*incumbent) == std::cmp::Ordering::Greater
                }
            }
        };
        if replace {
            *best = Some(cand);
        }
    };

    // Distances at the two endpoints: the *nearer* neighbour of w = 0 and
    // of w = n contributes one candidate each.
    for (x_int, left) in [(0i64, true), (n as i64, false)] {
        let xf = x_int as f64;
        let pos = entries.partition_point(|e| e.key < xf);
        let mut nearest: Option<(Dist, Site)> = None;
        for cand in pos.saturating_sub(1)..=pos.min(entries.len() - 1) {
            let e = entries[cand];
            // |x − w| = ±((x + j) − √2k), doubled for the /(2n) convention
            let a = 2 * (x_int + e.j as i64);
            let b = -2 * (e.k as i64);
            let (a, b) = if sign_of(a, b) >= 0 { (a, b) } else { (-a, -b) };
            let d = Dist { a, b };
            let site = if left { Site::LeftEnd } else { Site::RightEnd };
            let closer = match &nearest {
                None => true,
                Some((inc, _)) => d.cmp_exact(*inc) == std::cmp::Ordering::Less,
            };
            if closer {
                nearest = Some((d, site));
            }
        }
        if let Some(cand) = nearest {
            push(cand, &mut best);
        }
    }

    // Interior gap midpoints clipped to [0, n].
    for w in entries.windows(2) {
        let (e1, e2) = (w[0], w[1]);
        let mid = 0.5 * (e1.key + e2.key);
        if mid < 0.0 || mid > nf {
            continue;
        }
        // half gap = ((√2k2 − j2) − (√2k1 − j1)) / 2, in /(2n) units
        let a = e1.j as i64 - e2.j as i64;
        let b = e2.k as i64 - e1.k as i64;
        push((Dist { a, b }, Site::Mid { j1: e1.j, k1: e1.k, j2: e2.j, k2: e2.k }), &mut best);
    }

    let (dist, site) = best.expect("lattice is nonempty");
    finish(n, dist, site)
}

fn finish(n: u64, dist: Dist, site: Site) -> CoveringRadius {
    let nf = n as f64;
    let rho = dist.to_surd(n);
    let rho_f64 = rho.to_f64();
    let witness = match site {
        Site::LeftEnd => Surd::from_int(0),
        Site::RightEnd => Surd::from_int(1),
        Site::Mid { j1, k1, j2, k2 } => Surd::new(
            ratio(-(j1 as i64) - j2 as i64, 2 * n as i64),
            ratio(k1 as i64 + k2 as i64, 2 * n as i64),
        ),
    };
    let threshold = nf.ln() / (nf * nf);
    CoveringRadius {
        n,
        rho,
        rho_f64,
        witness,
        threshold,
        within_threshold: rho_f64 <= threshold,
        ratio: if n >= 2 { rho_f64 * nf * nf / nf.ln() } else { f64::INFINITY },
    }
}

/// Sliding-window sweep, `O(n log n)` per level.
///
/// Every lattice value in the cell `w ∈ [i − ½, i + ½)` has the form
/// `i + ψ(k)` with `ψ(k) = √2k − round(√2k)` and `j = round(√2k) − i`; the
/// `j ∈ [0, n)` constraint makes the admissible `k` a window
/// `{k : round(√2k) ∈ [i, i+n−1]}` that slides monotonically with the cell.
/// Gaps inside a cell are ψ-gaps of the active window, so one pass with a
/// linked active set and a lazily-invalidated max-gap heap visits every
/// candidate. Distances and witnesses are reconstructed exactly from the
/// integer data `round(√2k)`.
///
/// Returns `None` only if a structural expectation fails (never observed);
/// the sorted fallback keeps correctness unconditional.
fn covering_radius_swept(n: u64) -> Option<CoveringRadius> {
    use std::collections::BTreeSet;

    let nn = n as usize;
    let n_i = n as i64;
    let nf = n as f64;
    let sqrt2 = std::f64::consts::SQRT_2;

    // r[k] = round(√2k) exactly (√2k stays ≥ 7e-5 away from half-integers
    // for k < 2000); psi[k] = √2k − r[k] ∈ (−½, ½).
    let mut r = vec![0i64; nn];
    let mut psi = vec![0f64; nn];
    for k in 0..nn {
        let base = sqrt2 * k as f64;
        let rk = (base + 0.5).floor();
        r[k] = rk as i64;
        psi[k] = base - rk;
    }
    // ψ-sorted order of k (float sort is order-exact by the separation bound).
    let mut order: Vec<u32> = (0..nn as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        psi[a as usize].partial_cmp(&psi[b as usize]).expect("finite psi")
    });
    let mut pos_of_k = vec![0u32; nn];
    for (pos, &k) in order.iter().enumerate() {
        pos_of_k[k as usize] = pos as u32;
    }

    // Active positions (cell window), max-gap heap with lazy invalidation.
    let mut active: BTreeSet<u32> = BTreeSet::new();
    #[derive(PartialEq)]
    struct Gap {
        width: f64,
        lo: u32,
        hi: u32,
    }
    impl Eq for Gap {}
    impl PartialOrd for Gap {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Gap {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.width.total_cmp(&other.width)
        }
    }
    let mut heap: std::collections::BinaryHeap<Gap> = std::collections::BinaryHeap::new();

    let psi_at = |pos: u32, order: &[u32], psi: &[f64]| psi[order[pos as usize] as usize];

    // Candidate sites with exact integer payloads.
    struct Cand {
        approx: f64, // comparable size: full gap width in w-units
        dist: Dist,
        site: Site,
    }
    let mut cands: Vec<Cand> = Vec::new();
    let mut best_size = f64::NEG_INFINITY;
    let mut push_cand = |c: Cand, cands: &mut Vec<Cand>, best_size: &mut f64| {
        if c.approx > *best_size - 1e-7 {
            *best_size = best_size.max(c.approx);
            cands.push(c);
        }
    };

    // Exact distance/site constructors from k labels and a cell index.
    let mid_cand = |k1: u32, ce1: i64, k2: u32, ce2: i64, r: &[i64]| {
        // value1 = ce1 + ψ(k1) with j1 = r[k1] − ce1, similarly value2.
        let j1 = r[k1 as usize] - ce1;
        let j2 = r[k2 as usize] - ce2;
        let a = j1 - j2;
        let b = k2 as i64 - k1 as i64;
        (
            Dist { a, b },
            Site::Mid { j1: j1 as u32, k1, j2: j2 as u32, k2 },
        )
    };

    // The two-pointer window over k, ordered by r[k] (strictly increasing).
    let mut k_enter = 0usize; // next k to insert
    let mut k_leave = 0usize; // next k to remove
    // Last active value so far in sweep order: (cell, k)
    let mut prev_val: Option<(i64, u32)> = None;

    for i in 0..=n_i {
        // Insert every k with r[k] ≤ i + n − 1 (not yet inserted).
        while k_enter < nn && r[k_enter] <= i + n_i - 1 {
            let pos = pos_of_k[k_enter];
            let succ = active.range(pos + 1..).next().copied();
            let pred = active.range(..pos).next_back().copied();
            active.insert(pos);
            if let Some(p) = pred {
                heap.push(Gap {
                    width: psi_at(pos, &order, &psi) - psi_at(p, &order, &psi),
                    lo: p,
                    hi: pos,
                });
            }
            if let Some(s) = succ {
                heap.push(Gap {
                    width: psi_at(s, &order, &psi) - psi_at(pos, &order, &psi),
                    lo: pos,
                    hi: s,
                });
            }
            k_enter += 1;
        }
        // Remove every k with r[k] < i.
        while k_leave < nn && r[k_leave] < i {
            let pos = pos_of_k[k_leave];
            active.remove(&pos);
            let pred = active.range(..pos).next_back().copied();
            let succ = active.range(pos + 1..).next().copied();
            if let (Some(p), Some(s)) = (pred, succ) {
                heap.push(Gap {
                    width: psi_at(s, &order, &psi) - psi_at(p, &order, &psi),
                    lo: p,
                    hi: s,
                });
            }
            k_leave += 1;
        }
        if active.is_empty() {
            // possible only for tiny n near the top cell; spanned by the
            // next cross gap and the trailing endpoint candidate
            continue;
        }
        let first_pos = *active.iter().next().expect("nonempty");
        let last_pos = *active.iter().next_back().expect("nonempty");
        let first_k = order[first_pos as usize];
        let last_k = order[last_pos as usize];

        // Cross gap from the previous cell's last value to this cell's first.
        if let Some((pc, pk)) = prev_val {
            let width = (i as f64 + psi_at(first_pos, &order, &psi))
                - (pc as f64 + psi[pk as usize]);
            let (dist, site) = mid_cand(pk, pc, first_k, i, &r);
            push_cand(Cand { approx: width, dist, site }, &mut cands, &mut best_size);
        }
        prev_val = Some((i, last_k));

        if i == 0 || i == n_i {
            // Boundary cells: clipped interior gaps plus the endpoint
            // distance; a direct walk over the (small) active set.
            let x_int = if i == 0 { 0i64 } else { n_i };
            let mut nearest: Option<(f64, Dist)> = None;
            let mut prev_in_cell: Option<u32> = None;
            for &pos in active.iter() {
                let k = order[pos as usize];
                let w = i as f64 + psi_at(pos, &order, &psi);
                // endpoint distance |x − w| = |(x + j) − √2k|
                let j = r[k as usize] - i;
                let a = 2 * (x_int + j);
                let b = -2 * (k as i64);
                let (a, b) = if sign_of(a, b) >= 0 { (a, b) } else { (-a, -b) };
                let d = (w - x_int as f64).abs();
                if nearest.as_ref().map(|(bd, _)| d < *bd).unwrap_or(true) {
                    nearest = Some((d, Dist { a, b }));
                }
                // interior gap with clipped midpoint
                if let Some(ppos) = prev_in_cell {
                    let wl = i as f64 + psi_at(ppos, &order, &psi);
                    let mid = 0.5 * (wl + w);
                    if mid >= 0.0 && mid <= nf {
                        let (dist, site) = mid_cand(order[ppos as usize], i, k, i, &r);
                        push_cand(
                            Cand { approx: w - wl, dist, site },
                            &mut cands,
                            &mut best_size,
                        );
                    }
                }
                prev_in_cell = Some(pos);
            }
            if let Some((d, dist)) = nearest {
                let site = if i == 0 { Site::LeftEnd } else { Site::RightEnd };
                push_cand(Cand { approx: 2.0 * d, dist, site }, &mut cands, &mut best_size);
            }
        } else if active.len() >= 2 {
            // Interior cell: the maximal ψ-gap decides; midpoints are
            // automatically inside [0, n].
            loop {
                let top = match heap.peek() {
                    Some(t) => t,
                    None => break,
                };
                let valid = active.contains(&top.lo)
                    && active.range(top.lo + 1..).next() == Some(&top.hi);
                if valid {
                    break;
                }
                heap.pop();
            }
            if let Some(top) = heap.peek() {
                if top.width > best_size - 1e-7 {
                    let (k1, k2) = (order[top.lo as usize], order[top.hi as usize]);
                    let (dist, site) = mid_cand(k1, i, k2, i, &r);
                    push_cand(
                        Cand { approx: top.width, dist, site },
                        &mut cands,
                        &mut best_size,
                    );
                }
            }
        }
    }

    // Trailing endpoint: when the top cell held no values, the nearest
    // lattice point to x = 1 is the last value of the sweep.
    if let Some((pc, pk)) = prev_val {
        if pc < n_i {
            let j = r[pk as usize] - pc;
            let a = 2 * (n_i + j);
            let b = -2 * (pk as i64);
            let (a, b) = if sign_of(a, b) >= 0 { (a, b) } else { (-a, -b) };
            let w = pc as f64 + psi[pk as usize];
            push_cand(
                Cand { approx: 2.0 * (nf - w), dist: Dist { a, b }, site: Site::RightEnd },
                &mut cands,
                &mut best_size,
            );
        }
    }

    // Exact maximum among surviving candidates.
    let mut best: Option<(Dist, Site)> = None;
    for c in cands {
        if c.approx < best_size - 1e-7 {
            continue;
        }
        let replace = match &best {
            None => true,
            Some((inc, _)) => c.dist.cmp_exact(*inc) == std::cmp::Ordering::Greater,
        };
        if replace {
            best = Some((c.dist, c.site));
        }
    }
    let (dist, site) = best?;
    Some(finish(n, dist, site))
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    key: f64,
    j: u32,
    k: u32,
}

/// Lattice points with `w = √2k − j` inside `[-margin, n + margin]`,
/// sorted by the (provably order-exact) f64 key.
fn sorted_window_entries(n: u64) -> Vec<Entry> {
    let nf = n as f64;
    // Values outside the window cannot be nearest to [0, n] unless the
    // radius exceeds the margin; small n keeps everything.
    let margin = if n >= 64 { 0.5 } else { 2.0 * nf };
    let mut entries = Vec::new();
    for k in 0..n {
        let base = std::f64::consts::SQRT_2 * k as f64;
        // w ∈ [-margin, n + margin]  ⇔  j ∈ [base − n − margin, base + margin]
        let j_lo = (base - nf - margin).ceil().max(0.0) as u64;
        let j_hi = ((base + margin).floor() as i64).min(n as i64 - 1);
        let mut j = j_lo as i64;
        while j <= j_hi {
            entries.push(Entry { key: base - j as f64, j: j as u32, k: k as u32 });
            j += 1;
        }
    }
    entries.sort_unstable_by(|a, b| a.key.partial_cmp(&b.key).expect("finite keys"));
    if n >= 64 {
        // Window-validity guard: the scan below must find its maximum well
        // inside the margin.
        debug_assert!(entries.first().map(|e| e.key < 0.0).unwrap_or(false));
    }
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    #[test]
    fn values_small_n() {
        assert_eq!(discrepancy_values(1), vec![Surd::from_int(0)]);
        let v2 = discrepancy_values(2);
        // {-1/2, 0, (√2-1)/2, √2/2} sorted
        assert_eq!(
            v2,
            vec![
                Surd::from_rational(ratio(-1, 2)),
                Surd::from_int(0),
                Surd::new(ratio(-1, 2), ratio(1, 2)),
                Surd::new(ratio(0, 1), ratio(1, 2)),
            ]
        );
        let v3 = discrepancy_values(3);
        assert_eq!(v3.len(), 9);
        assert_eq!(v3[0], Surd::from_rational(ratio(-2, 3)));
        assert_eq!(v3[8], Surd::new(ratio(0, 1), ratio(2, 3)));
    }

    #[test]
    fn radius_n1_and_n2() {
        let r1 = covering_radius(1);
        assert_eq!(r1.rho, Surd::from_int(1)); // only value 0, worst x = 1
        assert_eq!(r1.witness, Surd::from_int(1));

        // ρ(2) = 1 − √2/2, worst point x = 1
        let r2 = covering_radius(2);
        assert_eq!(r2.rho, Surd::new(ratio(1, 1), ratio(-1, 2)));
        assert_eq!(r2.witness, Surd::from_int(1));
        assert!((r2.rho_f64 - 0.2929).abs() < 1e-4);
        assert!(!r2.within_threshold); // 0.2929 > ln2/4 = 0.1733
    }

    /// Independent oracle: exact scan over the full surd list.
    fn covering_radius_oracle(n: u64) -> (Surd, Surd) {
        let vals = discrepancy_values(n);
        let zero = Surd::from_int(0);
        let one = Surd::from_int(1);
        let two = Surd::from_int(2);
        let mut best: Option<(Surd, Surd)> = None;
        let mut consider = |d: Surd, x: Surd| {
            if best.as_ref().map(|(b, _)| d > *b).unwrap_or(true) {
                best = Some((d, x));
            }
        };
        // endpoints
        for x in [zero.clone(), one.clone()] {
            let d = vals.iter().map(|v| (&x - v).abs()).min().unwrap();
            consider(d, x.clone());
        }
        // interior midpoints
        for w in vals.windows(2) {
            let mid = &(&w[0] + &w[1]) / &two;
            if mid >= zero && mid <= one {
                let d = &(&w[1] - &w[0]) / &two;
                consider(d, mid);
            }
        }
        best.unwrap()
    }

    #[test]
    fn fast_scan_matches_exact_oracle() {
        for n in [1u64, 2, 3, 4, 5, 7, 10, 16, 33, 64, 100, 150] {
            let fast = covering_radius(n);
            let (rho, _) = covering_radius_oracle(n);
            assert_eq!(fast.rho, rho, "exact radius mismatch at n = {n}");
        }
    }

    #[test]
    fn witness_reproduces_radius() {
        for n in [2u64, 3, 5, 17, 40, 90] {
            let r = covering_radius(n);
            let vals = discrepancy_values(n);
            let d = vals.iter().map(|v| (&r.witness - v).abs()).min().unwrap();
            assert_eq!(d, r.rho, "witness distance mismatch at n = {n}");
        }
    }

    #[test]
    fn swept_scan_matches_sorted_scan() {
        for n in [2u64, 3, 17, 100, 256, 300, 411, 512, 777, 1024] {
            let fast = covering_radius_swept(n).expect("sweep is total");
            let slow = covering_radius_sorted(n);
            assert_eq!(fast.rho, slow.rho, "radius mismatch at n = {n}");
            assert_eq!(fast.witness, slow.witness, "witness mismatch at n = {n}");
        }
    }

    #[test]
    fn float_key_order_matches_exact_order() {
        for n in [25u64, 60, 120] {
            let entries = sorted_window_entries(n);
            for w in entries.windows(2) {
                let (e1, e2) = (w[0], w[1]);
                // exact: √2k1 − j1 ≤ √2k2 − j2
                let a = e1.j as i64 - e2.j as i64; // (j1 − j2)
                let b = e2.k as i64 - e1.k as i64; // (k2 − k1)
                assert!(sign_of(a, b) >= 0, "order violated at n={n}");
            }
        }
    }
}
