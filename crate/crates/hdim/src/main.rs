fn main() {
    // temporary probe
    let t0 = std::time::Instant::now();
    let mut last_fail = 0u64;
    let mut max_ratio: (f64, u64) = (0.0, 0);
    for n in 1..=2000u64 {
        let r = hdim::geometry::covering_radius(n);
        if !r.within_threshold {
            last_fail = n;
        }
        if n >= 15 && r.ratio > max_ratio.0 {
            max_ratio = (r.ratio, n);
        }
    }
    println!("last failing n: {last_fail}");
    println!("max ratio rho*n^2/ln n on [15,2000]: {:?}", max_ratio);
    println!("elapsed: {:?}", t0.elapsed());
}
