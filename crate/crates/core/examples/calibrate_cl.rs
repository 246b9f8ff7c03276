//! Sweeps `c_L` on the rank-4 calibration instance (n = 14, m = 300,
//! ε = 0.3) and prints the pass rate of the multiplicative check over 100
//! seeds together with the expected sparsifier size.
//!
//! Usage: `cargo run --release --example calibrate_cl [trials] [c_L ...]`

use hypersparse::generators::random_hypergraph;
use hypersparse::spectral::{build_plan, sample_sparsifier};
use hypersparse::verify::hypergraph_multiplicative_check;
use hypersparse::Seed;

fn main() -> hypersparse::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map(|s| s.parse().expect("trials")).unwrap_or(1000);
    let mut grid: Vec<f64> = args.map(|s| s.parse().expect("c_L")).collect();
    if grid.is_empty() {
        grid = vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0, 512.0, 1024.0];
    }
    let eps = 0.3;
    let h = random_hypergraph(14, 300, 2..=4, Seed(7));
    println!("c_L\texpected_size\tpasses/100\tworst_ratio");
    for c_l in grid {
        let plan = build_plan(&h, eps, c_l)?;
        let mut passes = 0;
        let mut worst: f64 = 0.0;
        for s in 0..100u64 {
            let sampled = sample_sparsifier(&h, &plan, Seed(s))?;
            let r = hypergraph_multiplicative_check(&h, &sampled.hypergraph, eps, trials, Seed(s).child(1))?;
            worst = worst.max(r.measured["max_ratio"]);
            passes += r.pass as usize;
        }
        println!("{c_l}\t{:.1}\t{passes}\t{worst:.4}", plan.expected_size());
    }
    Ok(())
}
