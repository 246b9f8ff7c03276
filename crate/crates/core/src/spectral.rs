//! Multiplicative spectral sparsification of hypergraphs by importance
//! sampling with clique-expansion effective resistances.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eigen, spectral_apply};
use crate::model::{clique_expansion, components, Graph, Hypergraph, DENSE_LIMIT};
use crate::par;
use crate::rng::Seed;

/// Default sampling constant, calibrated by `examples/calibrate_cl.rs`.
pub const DEFAULT_C_L: f64 = 32.0;

/// Pseudoinverse blocks of a graph Laplacian, one per connected component.
#[derive(Debug, Clone)]
pub struct ResistanceTable {
    component: Vec<usize>,
    /// Position of each vertex inside its component block.
    local: Vec<usize>,
    pinv: Vec<DMatrix<f64>>,
}

impl ResistanceTable {
    pub fn n(&self) -> usize {
        self.component.len()
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component[a] == self.component[b]
    }

    /// `(1_a − 1_b)ᵀ L⁺ (1_a − 1_b)`.
    pub fn resistance(&self, a: usize, b: usize) -> Result<f64> {
        let n = self.n();
        for v in [a, b] {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
        }
        if !self.same_component(a, b) {
            return Err(Error::MissingPair(a, b));
        }
        let p = &self.pinv[self.component[a]];
        let (i, j) = (self.local[a], self.local[b]);
        Ok((p[(i, i)] + p[(j, j)] - 2.0 * p[(i, j)]).max(0.0))
    }
}

/// Effective resistances of a weighted graph, computed per component by
/// eigendecomposition, dropping eigenvalues below `1e-12 · λ_max`.
pub fn effective_resistances(g: &Graph) -> Result<ResistanceTable> {
    let n = g.n();
    if n > DENSE_LIMIT {
        return Err(Error::SizeLimit { n, limit: DENSE_LIMIT });
    }
    let (component, count) = components(n, g.edges().iter().copied());
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    let mut local = vec![0; n];
    for v in 0..n {
        local[v] = members[component[v]].len();
        members[component[v]].push(v);
    }
    let mut blocks: Vec<DMatrix<f64>> = members.iter().map(|m| DMatrix::zeros(m.len(), m.len())).collect();
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let w = g.weight(i);
        let blk = &mut blocks[component[a]];
        let (x, y) = (local[a], local[b]);
        blk[(x, x)] += w;
        blk[(y, y)] += w;
        blk[(x, y)] -= w;
        blk[(y, x)] -= w;
    }
    let pinv = par::map_slice(&blocks, |lap| {
        let e = eigen(lap);
        let top = e.values.iter().copied().fold(0.0, f64::max);
        let floor = 1e-12 * top;
        spectral_apply(&e, |l| if l > floor && l > 0.0 { 1.0 / l } else { 0.0 })
    });
    Ok(ResistanceTable { component, local, pinv })
}

/// Resistance of every edge of `g`, in edge order.
pub fn edge_resistances(g: &Graph, table: &ResistanceTable) -> Result<Vec<f64>> {
    g.edges().iter().map(|&(a, b)| table.resistance(a, b)).collect()
}

/// `r_e = w_e · max_{a,b ∈ e} R_ab`, the largest leverage of the clique
/// edges that `e` contributes to the associated graph.
pub fn hyperedge_resistances(h: &Hypergraph, table: &ResistanceTable) -> Result<Vec<f64>> {
    if table.n() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: table.n(),
        });
    }
    h.edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let mut best: f64 = 0.0;
            for (j, &a) in e.iter().enumerate() {
                for &b in &e[j + 1..] {
                    best = best.max(table.resistance(a, b)?);
                }
            }
            Ok(h.weight(i) * best)
        })
        .collect()
}

/// Hyperedges with sizes in `(2^{i-1}, 2^i]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bucket {
    pub index: u32,
    pub edges: Vec<usize>,
    pub eps: f64,
    /// Resistance level `L_i`.
    pub level: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplingPlan {
    pub buckets: Vec<Bucket>,
    /// Hyperedge resistances `r_e`.
    pub resistances: Vec<f64>,
    /// Inclusion probabilities, each 0 or a power of two not above 1.
    pub probabilities: Vec<f64>,
    pub c_l: f64,
}

impl SamplingPlan {
    /// `Σ p_e`.
    pub fn expected_size(&self) -> f64 {
        self.probabilities.iter().sum()
    }
}

/// Smallest power of two `≥ p`, or 1 when `p ≥ 1`.
pub fn round_up_pow2(p: f64) -> f64 {
    if p >= 1.0 {
        1.0
    } else if p <= 0.0 {
        0.0
    } else {
        2f64.powi(p.log2().ceil() as i32)
    }
}

/// Size class `⌈log₂ k⌉` of a hyperedge with `k ≥ 2` vertices.
pub fn size_class(k: usize) -> u32 {
    k.next_power_of_two().trailing_zeros()
}

/// Builds the plan from precomputed hyperedge resistances.
pub fn plan_from_resistances(h: &Hypergraph, resistances: Vec<f64>, eps: f64, c_l: f64) -> Result<SamplingPlan> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if !(c_l > 0.0 && c_l.is_finite()) {
        return Err(Error::Config(format!("c_L must be positive, got {c_l}")));
    }
    let log_r = (h.rank().max(2) as f64).log2();
    let ln_n = (h.n().max(2) as f64).ln();
    let mut buckets: Vec<Bucket> = Vec::new();
    for (i, e) in h.edges().iter().enumerate() {
        let class = size_class(e.len());
        match buckets.iter_mut().find(|b| b.index == class) {
            Some(b) => b.edges.push(i),
            None => {
                let eps_i = (eps * 2f64.powf((class as f64 - log_r) / 2.0)).min(1.0);
                let r_i = 2f64.powi(class as i32);
                buckets.push(Bucket {
                    index: class,
                    edges: vec![i],
                    eps: eps_i,
                    level: c_l * eps_i * eps_i / (r_i.powi(4) * ln_n),
                });
            }
        }
    }
    buckets.sort_by_key(|b| b.index);
    let mut probabilities = vec![0.0; h.m()];
    for b in &buckets {
        for &e in &b.edges {
            probabilities[e] = round_up_pow2((resistances[e] / b.level).min(1.0));
        }
    }
    Ok(SamplingPlan {
        buckets,
        resistances,
        probabilities,
        c_l,
    })
}

/// Computes resistances on the associated graph and builds the plan.
pub fn build_plan(h: &Hypergraph, eps: f64, c_l: f64) -> Result<SamplingPlan> {
    let assoc = clique_expansion(h);
    let table = effective_resistances(&assoc.graph)?;
    let r = hyperedge_resistances(h, &table)?;
    plan_from_resistances(h, r, eps, c_l)
}

/// A sampled hypergraph and the source index of each kept hyperedge.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    pub hypergraph: Hypergraph,
    pub kept: Vec<usize>,
}

/// Keeps hyperedge `e` with probability `p_e`, reweighted to `w_e / p_e`.
/// The coin of `e` depends only on `(seed, e)`.
pub fn sample_sparsifier(h: &Hypergraph, plan: &SamplingPlan, seed: Seed) -> Result<Sampled> {
    if plan.probabilities.len() != h.m() {
        return Err(Error::LengthMismatch {
            expected: h.m(),
            got: plan.probabilities.len(),
        });
    }
    let kept: Vec<usize> = (0..h.m())
        .filter(|&e| {
            let p = plan.probabilities[e];
            p >= 1.0 || (p > 0.0 && seed.uniform(e as u64) < p)
        })
        .collect();
    let edges = kept.iter().map(|&e| h.edges()[e].clone()).collect();
    let weights = kept.iter().map(|&e| h.weight(e) / plan.probabilities[e]).collect();
    Ok(Sampled {
        hypergraph: Hypergraph::with_weights(h.n(), edges, Some(weights))?,
        kept,
    })
}

/// Aggregated clique-Laplacian bounds on `Q_H(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    /// Every hyperedge satisfied its own bound.
    pub contained: bool,
}

/// For each `k`-edge, `2/(k(k−1)) xᵀL_e x ≤ Q_e(x) ≤ (2/k) xᵀL_e x`, where
/// `L_e` is the Laplacian of the clique on `e`.
pub fn sandwich_bounds(h: &Hypergraph, x: &[f64]) -> Result<Sandwich> {
    if x.len() != h.n() {
        return Err(Error::LengthMismatch {
            expected: h.n(),
            got: x.len(),
        });
    }
    let mut out = Sandwich {
        lower: 0.0,
        value: 0.0,
        upper: 0.0,
        contained: true,
    };
    for (i, e) in h.edges().iter().enumerate() {
        let w = h.weight(i);
        let k = e.len() as f64;
        let mut clique = 0.0;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for (j, &a) in e.iter().enumerate() {
            lo = lo.min(x[a]);
            hi = hi.max(x[a]);
            for &b in &e[j + 1..] {
                clique += (x[a] - x[b]).powi(2);
            }
        }
        let q = (hi - lo).powi(2);
        let (l, u) = (2.0 / (k * (k - 1.0)) * clique, 2.0 / k * clique);
        let tol = 1e-12 * u.max(1e-300);
        if l > q + tol || q > u + tol {
            out.contained = false;
        }
        out.lower += w * l;
        out.value += w * q;
        out.upper += w * u;
    }
    Ok(out)
}
