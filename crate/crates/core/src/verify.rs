//! Independent certificates for every guarantee.
//!
//! Nothing here calls into the constructions: cuts are recomputed from raw
//! edge lists, connected sets are found by plain combination + BFS, and
//! resistances are recomputed by a regularized inverse rather than an
//! eigendecomposition.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde_json::json;

use crate::error::{Error, Result};
use crate::linalg::{eigen, symmetrize};
use crate::model::{components, hypergraph_quadratic, laplacian, Graph, Hypergraph, DENSE_LIMIT};
use crate::par;
use crate::report::{QualityReport, Witness};
use crate::rng::Seed;

/// Largest `n` for exhaustive cut enumeration.
pub const CUT_LIMIT: usize = 20;
/// Largest `n` for the exhaustive part of the multiplicative check.
pub const MULTIPLICATIVE_CUT_LIMIT: usize = 16;

fn set_of(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

fn masks(h: &Hypergraph) -> Vec<u64> {
    h.edges().iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << v)).collect()
}

fn weighted_cut(masks: &[u64], weights: &[f64], s: u64) -> f64 {
    masks
        .iter()
        .zip(weights)
        .filter(|(&m, _)| m & s != 0 && m & !s != 0)
        .map(|(_, w)| w)
        .sum()
}

fn weight_vec(h: &Hypergraph) -> Vec<f64> {
    (0..h.m()).map(|i| h.weight(i)).collect()
}

/// Reduction over all masks keeping the largest value, ties to the smaller mask.
fn worst_mask(n: usize, f: impl Fn(u64) -> f64 + Sync + Send) -> (f64, u64) {
    let total = 1usize << n;
    let chunk = 1usize << n.saturating_sub(6).min(14);
    let chunks = total.div_ceil(chunk);
    par::reduce_range(
        0..chunks,
        (f64::NEG_INFINITY, 0),
        |c| {
            let mut best = (f64::NEG_INFINITY, 0u64);
            for s in (c * chunk)..((c + 1) * chunk).min(total) {
                let v = f(s as u64);
                if v > best.0 {
                    best = (v, s as u64);
                }
            }
            best
        },
        |a, b| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        },
    )
}

/// Checks `|c·e_F(S) − e_E(S)| ≤ bound(S)` for all `2^n` sets `S`, given
/// as bitmasks. `f` is the sparsifier as its own hypergraph.
pub fn brute_force_cut_check(
    h: &Hypergraph,
    f: &Hypergraph,
    c: f64,
    bound: &(dyn Fn(u64) -> f64 + Sync),
) -> Result<QualityReport> {
    let n = h.n();
    if n > CUT_LIMIT {
        return Err(Error::SizeLimit { n, limit: CUT_LIMIT });
    }
    if f.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: f.n() });
    }
    let (hm, hw) = (masks(h), weight_vec(h));
    let (fm, fw) = (masks(f), weight_vec(f));
    let deviation = |s: u64| (c * weighted_cut(&fm, &fw, s) - weighted_cut(&hm, &hw, s)).abs();
    let (worst, mask) = worst_mask(n, |s| deviation(s) - bound(s));
    let (ratio, _) = worst_mask(n, |s| {
        let b = bound(s);
        if b > 0.0 {
            deviation(s) / b
        } else {
            0.0
        }
    });
    let mut report = QualityReport::new("cut_additive");
    report.scale = Some(c);
    report.observe(worst, || Witness::Set(set_of(mask, n)));
    report.measure("max_deviation_over_bound", ratio);
    report.measure("cuts_checked", (1u64 << n) as f64);
    Ok(report.finish(true))
}

/// Bound `ε·d·|S| + ε·vol(S)` with `d = r|E|/n`.
pub fn additive_cut_bound(h: &Hypergraph, eps: f64) -> impl Fn(u64) -> f64 + Sync {
    let mut deg = vec![0.0; h.n()];
    for (i, e) in h.edges().iter().enumerate() {
        for &v in e {
            deg[v] += h.weight(i);
        }
    }
    let d = h.rank() as f64 * (0..h.m()).map(|i| h.weight(i)).sum::<f64>() / h.n().max(1) as f64;
    move |s: u64| {
        let mut size = 0.0;
        let mut vol = 0.0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            size += 1.0;
            vol += deg[v];
            rest &= rest - 1;
        }
        eps * (d * size + vol)
    }
}

fn bfs_connected(adj: &[Vec<usize>], set: &[usize]) -> bool {
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if set.contains(&u) && !seen.contains(&u) {
                seen.push(u);
                stack.push(u);
            }
        }
    }
    seen.len() == set.len()
}

fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Re-enumerates every connected set `S` with `|S| ≤ s` of the associated
/// graph and checks `|2 e_F(S) − e_E(S)| ≤ unit·|S|` for a halving output
/// `selected ⊆ E`.
pub fn halving_certificate(h: &Hypergraph, selected: &[usize], unit: f64, s: usize) -> Result<QualityReport> {
    let n = h.n();
    let mut adj = vec![Vec::new(); n];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b && !adj[a].contains(&b) {
                    adj[a].push(b);
                }
            }
        }
    }
    let mut in_f = vec![false; h.m()];
    for &i in selected {
        if i >= h.m() {
            return Err(Error::UnknownEdge(i));
        }
        in_f[i] = true;
    }
    let mut report = QualityReport::new("halving_core_events");
    report.scale = Some(2.0);
    let mut checked = 0usize;
    let mut worst_ratio: f64 = 0.0;
    for size in 1..=s.min(n) {
        let mut comb: Vec<usize> = (0..size).collect();
        loop {
            if bfs_connected(&adj, &comb) {
                checked += 1;
                let (mut all, mut kept) = (0.0f64, 0.0f64);
                for (i, e) in h.edges().iter().enumerate() {
                    let inside = e.iter().filter(|v| comb.contains(v)).count();
                    if inside > 0 && inside < e.len() {
                        all += 1.0;
                        if in_f[i] {
                            kept += 1.0;
                        }
                    }
                }
                let dev = (2.0 * kept - all).abs();
                let bound = unit * size as f64;
                report.observe(dev - bound, || Witness::Set(comb.clone()));
                if bound > 0.0 {
                    worst_ratio = worst_ratio.max(dev / bound);
                }
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    report.measure("events_checked", checked as f64);
    report.measure("max_deviation_over_bound", worst_ratio);
    report.config = json!({ "threshold_unit": unit, "max_set_size": s });
    Ok(report.finish(true))
}

fn same_vertices(g: &Graph, f: &Graph) -> Result<()> {
    check_dense(g.n())?;
    if f.n() != g.n() {
        return Err(Error::LengthMismatch { expected: g.n(), got: f.n() });
    }
    Ok(())
}

fn check_dense(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        return Err(Error::SizeLimit { n, limit: DENSE_LIMIT });
    }
    Ok(())
}

/// Smallest eigenvalue and its eigenvector.
fn min_eigen(m: &DMatrix<f64>) -> (f64, Vec<f64>) {
    let mut m = m.clone();
    symmetrize(&mut m);
    let e = eigen(&m);
    if e.values.is_empty() {
        return (0.0, Vec::new());
    }
    (e.values[0], e.vectors.column(0).iter().copied().collect())
}

/// Certifies `−B ⪯ c·L_F − L_G ⪯ B` with `B = ε(D_G + d_avg I)` through
/// the normalized matrices `I ± B^{-1/2} M B^{-1/2}`. `f` is the
/// sparsifier as its own (multi)graph on the same vertices.
pub fn spectral_additive_check(g: &Graph, f: &Graph, c: f64, eps: f64) -> Result<QualityReport> {
    same_vertices(g, f)?;
    let lg = laplacian(g)?;
    let lf = laplacian(f)?;
    let m = lf.laplacian * c - &lg.laplacian;
    let d_avg = g.average_degree();
    let b = (&lg.degree + DVector::repeat(g.n(), d_avg)) * eps;
    if b.iter().any(|&x| !(x > 0.0)) {
        return Err(Error::SingularBound);
    }
    let inv_root = b.map(|x| 1.0 / x.sqrt());
    let normalized = DMatrix::from_fn(g.n(), g.n(), |i, j| inv_root[i] * m[(i, j)] * inv_root[j]);
    let id = DMatrix::<f64>::identity(g.n(), g.n());
    let (upper, upper_vec) = min_eigen(&(&id - &normalized));
    let (lower, lower_vec) = min_eigen(&(&id + &normalized));
    let mut report = QualityReport::new("spectral_additive");
    report.epsilon = Some(eps);
    report.scale = Some(c);
    report.eigenvalues.insert("upper_min".into(), upper);
    report.eigenvalues.insert("lower_min".into(), lower);
    report.observe(-upper, || Witness::Vector(upper_vec));
    report.observe(-lower, || Witness::Vector(lower_vec));
    let norm = crate::linalg::spectral_norm(&m);
    let d_max = g.max_degree();
    report.measure("difference_norm", norm);
    report.measure("norm_over_eps_dmax", norm / (eps * d_max));
    if eps < 1.0 {
        report.measure("norm_over_eps_log_dmax", norm / (eps * (1.0 / eps).ln() * d_max));
    }
    Ok(report.finish(true))
}

/// Certifies the deterministic bounds
/// `2cD_F − 2D_G − C ε d_max I ⪯ c L_F − L_G ⪯ C ε d_max I` and the signless
/// form `c SL_F − SL_G ⪯ C ε d_max I`, with `C = slack`.
pub fn det_certificate(g: &Graph, f: &Graph, c: f64, eps: f64, slack: f64) -> Result<QualityReport> {
    same_vertices(g, f)?;
    let n = g.n();
    let lg = laplacian(g)?;
    let lf = laplacian(f)?;
    let (lf, sf, df) = (lf.laplacian, lf.signless, lf.degree);
    let bound = slack * eps * g.max_degree();
    if !(bound > 0.0) {
        return Err(Error::SingularBound);
    }
    let id = DMatrix::<f64>::identity(n, n);
    let m = &lf * c - &lg.laplacian;
    let sm = &sf * c - &lg.signless;
    let shift = DMatrix::from_diagonal(&(&df * (2.0 * c) - &lg.degree * 2.0));
    let (upper, upper_vec) = min_eigen(&(&id - &m / bound));
    let (lower, lower_vec) = min_eigen(&((&m - &shift) / bound + &id));
    let (signless, signless_vec) = min_eigen(&(&id - &sm / bound));
    let top = |x: &DMatrix<f64>| crate::linalg::eigenvalues(x).last().copied().unwrap_or(0.0);
    let measured = top(&m).max(top(&sm)) / (eps * g.max_degree());

    let mut report = QualityReport::new("deterministic_additive");
    report.epsilon = Some(eps);
    report.scale = Some(c);
    report.eigenvalues.insert("upper_min".into(), upper);
    report.eigenvalues.insert("lower_min".into(), lower);
    report.eigenvalues.insert("signless_min".into(), signless);
    report.observe(-upper, || Witness::Vector(upper_vec));
    report.observe(-lower, || Witness::Vector(lower_vec));
    report.observe(-signless, || Witness::Vector(signless_vec));
    report.measure("slack_constant", measured);
    report.measure("slack_limit", slack);
    Ok(report.finish(true))
}

/// Max of `|Q_H̃(x) − Q_H(x)| / Q_H(x)` over all cut indicators (for
/// `n ≤ 16`) and `trials` random unit directions orthogonal to the
/// per-component constants; passes iff it is at most `ε`.
pub fn hypergraph_multiplicative_check(
    h: &Hypergraph,
    sparse: &Hypergraph,
    eps: f64,
    trials: usize,
    seed: Seed,
) -> Result<QualityReport> {
    let n = h.n();
    if sparse.n() != n {
        return Err(Error::LengthMismatch { expected: n, got: sparse.n() });
    }
    let mut report = QualityReport::new("hypergraph_multiplicative");
    report.epsilon = Some(eps);
    report.seeds.push(seed.0);
    let ratio = |q: f64, qs: f64| if q > 1e-12 { (qs - q).abs() / q } else { f64::NEG_INFINITY };
    let mut worst: f64 = 0.0;
    if n <= MULTIPLICATIVE_CUT_LIMIT {
        let (hm, hw) = (masks(h), weight_vec(h));
        let (sm, sw) = (masks(sparse), weight_vec(sparse));
        let (r, mask) = worst_mask(n, |s| ratio(weighted_cut(&hm, &hw, s), weighted_cut(&sm, &sw, s)));
        if r.is_finite() {
            worst = worst.max(r);
            report.observe(r - eps, || Witness::Set(set_of(mask, n)));
        }
        report.measure("cut_max_ratio", r.max(0.0));
        report.measure("cuts_checked", (1u64 << n) as f64);
    }
    let pairs = h.edges().iter().flat_map(|e| e.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>());
    let (comp, count) = components(n, pairs);
    let draws = par::map_range(0..trials, |t| {
        let mut rng = seed.child(t as u64).rng();
        let mut x: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let mut sums = vec![0.0; count];
        let mut sizes = vec![0.0; count];
        for v in 0..n {
            sums[comp[v]] += x[v];
            sizes[comp[v]] += 1.0;
        }
        for v in 0..n {
            x[v] -= sums[comp[v]] / sizes[comp[v]];
        }
        let norm = x.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm > 0.0 {
            x.iter_mut().for_each(|a| *a /= norm);
        }
        let q = hypergraph_quadratic(h, &x).expect("length checked");
        let qs = hypergraph_quadratic(sparse, &x).expect("length checked");
        (ratio(q, qs), x)
    });
    let mut dir_worst: f64 = 0.0;
    for (r, x) in draws {
        if r.is_finite() {
            dir_worst = dir_worst.max(r);
            report.observe(r - eps, || Witness::Vector(x));
        }
    }
    worst = worst.max(dir_worst);
    report.measure("direction_max_ratio", dir_worst);
    report.measure("directions_checked", trials as f64);
    report.measure("max_ratio", worst);
    if report.worst_violation == f64::NEG_INFINITY {
        report.worst_violation = -eps;
    }
    Ok(report.finish(true))
}

/// Effective resistance of every vertex pair within a component, from
/// `(L_C + J/|C|)^{-1}` on each component `C`.
pub fn reference_resistances(g: &Graph) -> Result<Vec<Vec<Option<f64>>>> {
    check_dense(g.n())?;
    let n = g.n();
    let lap = laplacian(g)?.laplacian;
    let (comp, count) = components(n, g.edges().iter().copied());
    let mut out = vec![vec![None; n]; n];
    for c in 0..count {
        let verts: Vec<usize> = (0..n).filter(|&v| comp[v] == c).collect();
        let k = verts.len();
        let block = DMatrix::from_fn(k, k, |i, j| lap[(verts[i], verts[j])] + 1.0 / k as f64);
        let inv = block.try_inverse().ok_or(Error::SingularBound)?;
        for i in 0..k {
            for j in 0..k {
                out[verts[i]][verts[j]] = Some((inv[(i, i)] + inv[(j, j)] - 2.0 * inv[(i, j)]).max(0.0));
            }
        }
    }
    Ok(out)
}

/// Checks a resistance oracle against the reference values, the
/// per-component identity `Σ w·r = |C| − 1`, and the triangle inequality on
/// `triples` random triples.
pub fn resistance_identities_check(
    g: &Graph,
    resistance: &dyn Fn(usize, usize) -> Result<f64>,
    triples: usize,
    seed: Seed,
) -> Result<QualityReport> {
    let n = g.n();
    let reference = reference_resistances(g)?;
    let (comp, count) = components(n, g.edges().iter().copied());
    let mut report = QualityReport::new("resistance_identities");
    report.seeds.push(seed.0);

    let mut sums = vec![0.0; count];
    let mut max_diff: f64 = 0.0;
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let r = resistance(a, b)?;
        let expect = reference[a][b].ok_or(Error::MissingPair(a, b))?;
        max_diff = max_diff.max((r - expect).abs() / expect.max(1.0));
        sums[comp[a]] += g.weight(i) * r;
    }
    let mut sizes = vec![0usize; count];
    for &c in &comp {
        sizes[c] += 1;
    }
    let mut sum_err: f64 = 0.0;
    for c in 0..count {
        let err = (sums[c] - (sizes[c] - 1) as f64).abs();
        if err > sum_err {
            sum_err = err;
        }
    }
    report.observe(max_diff - 1e-8, || Witness::Vector(vec![max_diff]));
    report.observe(sum_err - 1e-6, || Witness::Vector(vec![sum_err]));

    let mut rng = seed.rng();
    let mut metric_worst = f64::NEG_INFINITY;
    let mut metric_witness = Vec::new();
    if n > 0 {
        for _ in 0..triples {
            let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
            if comp[a] != comp[b] || comp[b] != comp[c] {
                continue;
            }
            let gap = resistance(a, b)? - resistance(a, c)? - resistance(c, b)?;
            if gap > metric_worst {
                metric_worst = gap;
                metric_witness = vec![a, b, c];
            }
        }
    }
    if metric_worst.is_finite() {
        report.observe(metric_worst - 1e-9, || Witness::Set(metric_witness));
    }
    report.measure("max_reference_difference", max_diff);
    report.measure("max_sum_identity_error", sum_err);
    report.measure("components", count as f64);
    Ok(report.finish(true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn triangle() -> Graph {
        Graph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                e.push((a, b));
            }
        }
        Graph::new(n, e).unwrap()
    }

    #[test]
    fn identical_sparsifier_has_no_violation() {
        let h = Hypergraph::new(5, vec![vec![0, 1, 2], vec![2, 3], vec![1, 3, 4]]).unwrap();
        let r = brute_force_cut_check(&h, &h, 1.0, &|_| 0.0).unwrap();
        assert!(r.pass);
        assert_eq!(r.worst_violation, 0.0);
    }

    #[test]
    fn empty_sparsifier_reports_max_cut() {
        let g = Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let h = Hypergraph::from_graph(&g);
        let f = Hypergraph::new(4, vec![]).unwrap();
        let r = brute_force_cut_check(&h, &f, 3.0, &|_| 0.0).unwrap();
        assert_eq!(r.worst_violation, 4.0);
        assert_eq!(r.witness, Some(Witness::Set(vec![0, 2])));
        assert!(!r.pass);
    }

    #[test]
    fn removing_a_bridge_edge_is_caught() {
        // Two triangles joined by a bridge; dropping the bridge changes the
        // bottleneck cut by exactly one.
        let edges = vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        let h = Hypergraph::from_graph(&Graph::new(6, edges.clone()).unwrap());
        let f = Hypergraph::from_graph(&Graph::new(6, edges[..6].to_vec()).unwrap());
        let r = brute_force_cut_check(&h, &f, 1.0, &|_| 0.5).unwrap();
        assert!(!r.pass);
        assert_relative_eq!(r.worst_violation, 0.5);
        assert!(brute_force_cut_check(&h, &f, 1.0, &|_| 1.0).unwrap().pass);
    }

    #[test]
    fn additive_bound_formula() {
        let h = Hypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]]).unwrap();
        let b = additive_cut_bound(&h, 0.5);
        // d = 3·2/4 = 1.5, vol({1,2}) = 4.
        assert_relative_eq!(b(0b0110), 0.5 * (1.5 * 2.0 + 4.0));
    }

    #[test]
    fn spectral_identity_certificate() {
        let g = complete(5);
        let all: Vec<usize> = (0..g.m()).collect();
        let r = spectral_additive_check(&g, &g.select(&all), 1.0, 0.5).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.eigenvalues["upper_min"], 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.eigenvalues["lower_min"], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn spectral_doubled_scale_fails() {
        let g = complete(6);
        let all: Vec<usize> = (0..g.m()).collect();
        let r = spectral_additive_check(&g, &g.select(&all), 2.0, 0.5).unwrap();
        assert!(!r.pass);
        assert!(matches!(r.witness, Some(Witness::Vector(_))));
    }

    #[test]
    fn regular_reduces_to_norm() {
        // K6 is 5-regular: the check is ‖M‖ ≤ 2εd.
        let g = complete(6);
        let sel: Vec<usize> = (0..g.m()).step_by(2).collect();
        for c in [1.5, 2.0, 2.5] {
            let r = spectral_additive_check(&g, &g.select(&sel), c, 0.5).unwrap();
            let norm = r.measured["difference_norm"];
            assert_eq!(r.pass, norm <= 2.0 * 0.5 * 5.0 + 1e-8, "c={c}");
        }
    }

    #[test]
    fn det_identity_has_strict_slack() {
        let g = complete(5);
        let all: Vec<usize> = (0..g.m()).collect();
        let r = det_certificate(&g, &g.select(&all), 1.0, 0.5, 1.0).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.eigenvalues["upper_min"], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn det_single_edge_copies_fail() {
        let g = complete(6);
        let sel = vec![0; 5];
        let r = det_certificate(&g, &g.select(&sel), 3.0, 0.5, 1.0).unwrap();
        assert!(!r.pass);
        assert!(r.eigenvalues["upper_min"] < 0.0);
    }

    #[test]
    fn det_forms_agree() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let n = rng.random_range(3..8);
            let mut e = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(0.6) {
                        e.push((a, b));
                    }
                }
            }
            if e.is_empty() {
                continue;
            }
            let g = Graph::new(n, e).unwrap();
            let t = rng.random_range(1..=g.m());
            let sel: Vec<usize> = (0..t).map(|_| rng.random_range(0..g.m())).collect();
            let c = rng.random_range(0.5..3.0);
            let r = det_certificate(&g, &g.select(&sel), c, 0.5, 1.0).unwrap();
            let lower_ok = r.eigenvalues["lower_min"] >= -1e-8;
            let signless_ok = r.eigenvalues["signless_min"] >= -1e-8;
            assert_eq!(lower_ok, signless_ok);
        }
    }

    #[test]
    fn multiplicative_identity_and_scaling() {
        let h = Hypergraph::new(6, vec![vec![0, 1, 2], vec![2, 3, 4, 5], vec![0, 5], vec![1, 4]]).unwrap();
        let r = hypergraph_multiplicative_check(&h, &h, 0.3, 200, Seed(1)).unwrap();
        assert!(r.pass);
        assert_eq!(r.measured["max_ratio"], 0.0);
        let scaled = h.reweighted(vec![1.15; 4]).unwrap();
        let r = hypergraph_multiplicative_check(&h, &scaled, 0.3, 200, Seed(1)).unwrap();
        assert_relative_eq!(r.measured["max_ratio"], 0.15, epsilon = 1e-12);
        assert!(r.pass);
        assert!(!hypergraph_multiplicative_check(&h, &scaled, 0.1, 200, Seed(1)).unwrap().pass);
    }

    #[test]
    fn resistance_identities() {
        let tree = Graph::new(4, vec![(0, 1), (1, 2), (1, 3)]).unwrap();
        let refr = reference_resistances(&tree).unwrap();
        assert_relative_eq!(refr[0][2].unwrap(), 2.0, epsilon = 1e-12);

        let two = Graph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let refr = reference_resistances(&two).unwrap();
        assert!(refr[0][3].is_none());
        let oracle = |a: usize, b: usize| refr[a][b].ok_or(Error::MissingPair(a, b));
        let r = resistance_identities_check(&two, &oracle, 1000, Seed(3)).unwrap();
        assert!(r.pass);
        assert_eq!(r.measured["components"], 2.0);

        let k3 = triangle();
        let refr = reference_resistances(&k3).unwrap();
        let sum: f64 = k3.edges().iter().map(|&(a, b)| refr[a][b].unwrap()).sum();
        assert_relative_eq!(sum, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn wrong_resistances_fail() {
        let g = triangle();
        let bad = |_: usize, _: usize| Ok(1.0);
        assert!(!resistance_identities_check(&g, &bad, 10, Seed(0)).unwrap().pass);
    }

    #[test]
    fn halving_certificate_catches_bad_selection() {
        let h = Hypergraph::new(4, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2]]).unwrap();
        let r = halving_certificate(&h, &[], 0.5, 2).unwrap();
        assert!(!r.pass);
        // Deviation at {0} is 3.
        assert_relative_eq!(r.worst_violation, 3.0 - 0.5);
        assert!(halving_certificate(&h, &[0, 1], 10.0, 2).unwrap().pass);
    }

    #[test]
    fn quadratic_form_matches_matrix() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let n = rng.random_range(2..9);
            let mut e = Vec::new();
            let mut w = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.random_bool(0.5) {
                        e.push((a, b));
                        w.push(rng.random_range(0.1..3.0));
                    }
                }
            }
            let g = Graph::with_weights(n, e, Some(w)).unwrap();
            let x = DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0));
            let lap = laplacian(&g).unwrap().laplacian;
            let via_matrix = (x.transpose() * &lap * &x)[(0, 0)];
            let edgewise = g.quadratic_form(x.as_slice()).unwrap();
            assert!((via_matrix - edgewise).abs() <= 1e-10 * edgewise.abs().max(1e-300));
        }
    }

    #[test]
    fn indicator_bridges() {
        let g = complete(5);
        let lap = laplacian(&g).unwrap().laplacian;
        for mask in 0u64..32 {
            let s = set_of(mask, 5);
            let cut = crate::model::cut_value(&g, &s).unwrap();
            let zo = DVector::from_fn(5, |v, _| if mask >> v & 1 == 1 { 1.0 } else { 0.0 });
            let pm = DVector::from_fn(5, |v, _| if mask >> v & 1 == 1 { 1.0 } else { -1.0 });
            assert_eq!((zo.transpose() * &lap * &zo)[(0, 0)], cut);
            assert_eq!((pm.transpose() * &lap * &pm)[(0, 0)], 4.0 * cut);
        }
    }
}
