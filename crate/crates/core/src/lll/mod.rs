//! Additive sparsifiers by iterated random halving with constructive
//! Local Lemma resampling.
//!
//! One halving keeps every edge with probability 1/2 and then resamples
//! the coins of violated *core* events (small connected vertex sets) until
//! none is violated. Iterating `k` halvings and scaling by `2^k` yields an
//! additive cut sparsifier for hypergraphs, and with bilateral and degree
//! events an additive spectral sparsifier for graphs.

pub mod audit;
pub mod enumerate;
pub mod resample;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Graph, Hypergraph};
use crate::par;
use crate::reduction::{lift_edges, reduce_graph, reduce_hypergraph};
use crate::rng::Seed;
use crate::sparsifier::{Construction, SparsifierResult};

use enumerate::connected_sets;
use resample::{CoreEvent, EventKey, EventKind, Resampler};

/// Tunables for the halving constructions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LllConfig {
    /// Multiplier of `sqrt(d log(dr))` in the per-vertex deviation bound.
    pub deviation_constant: f64,
    /// Calibration constant of the halving count.
    pub c_iter: f64,
    /// Resampling cap is `cap_factor · |E| · ln n` rounds.
    pub cap_factor: f64,
    /// Fresh-seed retries after a capped run.
    pub retries: usize,
}

impl Default for LllConfig {
    fn default() -> Self {
        Self {
            deviation_constant: 10.0,
            c_iter: 200.0,
            cap_factor: 64.0,
            retries: 3,
        }
    }
}

/// Outcome of a single halving step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalvingResult {
    /// Indices of the kept edges, increasing.
    pub selected: Vec<usize>,
    pub resample_rounds: usize,
    pub core_event_count: usize,
    pub trivial_path: bool,
    /// Largest core set size `s`.
    pub max_set_size: usize,
    /// Per-unit deviation bound (`C sqrt(d log(dr))`).
    pub threshold_unit: f64,
}

fn ln_floor2(x: f64) -> f64 {
    x.max(2.0).ln()
}

/// Per-vertex deviation allowed by one hypergraph halving.
pub fn hypergraph_threshold_unit(d: f64, r: usize, constant: f64) -> f64 {
    constant * (d * ln_floor2(d * r as f64)).sqrt()
}

/// Per-unit deviation allowed by one bilateral graph halving.
pub fn graph_threshold_unit(d: f64, constant: f64) -> f64 {
    constant * (d * ln_floor2(d)).sqrt()
}

/// `⌈log_base(n)⌉`, at least 1.
pub fn core_set_size(n: usize, base: f64) -> usize {
    if n < 2 {
        return 1;
    }
    ((n as f64).ln() / ln_floor2(base)).ceil().max(1.0) as usize
}

fn resample_cap(m: usize, n: usize, factor: f64) -> usize {
    (factor * m as f64 * (n as f64).ln().max(1.0)).ceil() as usize
}

fn selected_from_state(state: &[bool]) -> Vec<usize> {
    state.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Adjacency of the clique expansion of `h`, without multiplicities.
fn associated_adjacency(h: &Hypergraph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); h.n()];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

fn incidence(n: usize, edges: impl Iterator<Item = (usize, Vec<usize>)>) -> Vec<Vec<u32>> {
    let mut inc = vec![Vec::new(); n];
    for (i, e) in edges {
        for v in e {
            inc[v].push(i as u32);
        }
    }
    inc
}

/// Cut events `A_S` for every connected set of size at most `s`, sorted by key.
pub fn hypergraph_core_events(h: &Hypergraph, s: usize, threshold_unit: f64) -> Vec<CoreEvent> {
    let adj = associated_adjacency(h);
    let inc = incidence(h.n(), h.edges().iter().cloned().enumerate());
    let sets = connected_sets(&adj, s, None);
    let events = par::map_slice(&sets, |set| {
        let mut vars: Vec<u32> = set
            .iter()
            .flat_map(|&v| inc[v].iter().copied())
            .filter(|&e| h.edges()[e as usize].iter().any(|u| set.binary_search(u).is_err()))
            .collect();
        vars.sort_unstable();
        vars.dedup();
        CoreEvent {
            key: EventKey {
                vertices: set.clone(),
                side: Vec::new(),
            },
            kind: EventKind::Cut,
            vars,
            threshold: threshold_unit * set.len() as f64,
        }
    });
    events.into_iter().filter(|e| !e.vars.is_empty()).collect()
}

/// Degree events `D_v` and bilateral events `A_{S,T}` for every connected
/// `S ∪ T` of size at most `s`, sorted by key.
pub fn bilateral_core_events(g: &Graph, s: usize, threshold_unit: f64) -> Vec<CoreEvent> {
    let adj = g.support_adjacency();
    let inc = incidence(g.n(), g.edges().iter().map(|&(a, b)| vec![a, b]).enumerate());
    let mut events: Vec<CoreEvent> = (0..g.n())
        .filter(|&v| !inc[v].is_empty())
        .map(|v| CoreEvent {
            key: EventKey {
                vertices: vec![v],
                side: Vec::new(),
            },
            kind: EventKind::Degree,
            vars: inc[v].clone(),
            threshold: threshold_unit,
        })
        .collect();
    let sets: Vec<Vec<usize>> = connected_sets(&adj, s, None)
        .into_iter()
        .filter(|u| u.len() >= 2)
        .collect();
    let per_set = par::map_slice(&sets, |set| {
        let inner: Vec<(u32, usize, usize)> = set
            .iter()
            .flat_map(|&v| inc[v].iter().copied())
            .filter_map(|e| {
                let (a, b) = g.edges()[e as usize];
                let (ia, ib) = (set.binary_search(&a).ok()?, set.binary_search(&b).ok()?);
                Some((e, ia, ib))
            })
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let k = set.len();
        let mut out = Vec::new();
        // Bit 0 (the smallest vertex) always lies in S.
        for mask in (1usize..(1 << k) - 1).filter(|m| m & 1 == 1) {
            let vars: Vec<u32> = inner
                .iter()
                .filter(|&&(_, ia, ib)| (mask >> ia & 1) != (mask >> ib & 1))
                .map(|&(e, _, _)| e)
                .collect();
            let s_size = mask.count_ones() as f64;
            let side = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| set[i]).collect();
            out.push(CoreEvent {
                key: EventKey {
                    vertices: set.clone(),
                    side,
                },
                kind: EventKind::Bilateral,
                vars,
                threshold: threshold_unit * (s_size * (k as f64 - s_size)).sqrt(),
            });
        }
        out
    });
    events.extend(per_set.into_iter().flatten().filter(|e| !e.vars.is_empty()));
    events.sort_by(|a, b| a.key.cmp(&b.key));
    events
}

/// One degree-halving step on an unweighted hypergraph.
pub fn halve_hypergraph(h: &Hypergraph, seed: Seed, cfg: &LllConfig) -> Result<HalvingResult> {
    if !h.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let d = h.max_degree();
    let r = h.rank();
    let unit = hypergraph_threshold_unit(d, r, cfg.deviation_constant);
    let s = core_set_size(h.n(), d * r as f64);
    let trivial = d <= unit;
    if h.m() == 0 || trivial {
        let state: Vec<bool> = (0..h.m()).map(|e| seed.coin(e as u64, 0)).collect();
        return Ok(HalvingResult {
            selected: selected_from_state(&state),
            resample_rounds: 0,
            core_event_count: 0,
            trivial_path: h.m() > 0,
            max_set_size: s,
            threshold_unit: unit,
        });
    }
    let events = hypergraph_core_events(h, s, unit);
    let mut resampler = Resampler::new(h.m(), &events, seed);
    let rounds = resampler.run(resample_cap(h.m(), h.n(), cfg.cap_factor))?;
    Ok(HalvingResult {
        selected: selected_from_state(&resampler.state),
        resample_rounds: rounds,
        core_event_count: events.len(),
        trivial_path: false,
        max_set_size: s,
        threshold_unit: unit,
    })
}

/// One halving step on an unweighted graph with bilateral and degree events.
/// Parallel edges are independent variables.
pub fn halve_graph_bilateral(g: &Graph, seed: Seed, cfg: &LllConfig) -> Result<HalvingResult> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let d = g.max_degree();
    let unit = graph_threshold_unit(d, cfg.deviation_constant);
    let s = core_set_size(g.n(), d);
    let trivial = d <= unit;
    if g.m() == 0 || trivial {
        let state: Vec<bool> = (0..g.m()).map(|e| seed.coin(e as u64, 0)).collect();
        return Ok(HalvingResult {
            selected: selected_from_state(&state),
            resample_rounds: 0,
            core_event_count: 0,
            trivial_path: g.m() > 0,
            max_set_size: s,
            threshold_unit: unit,
        });
    }
    let events = bilateral_core_events(g, s, unit);
    let mut resampler = Resampler::new(g.m(), &events, seed);
    let rounds = resampler.run(resample_cap(g.m(), g.n(), cfg.cap_factor))?;
    Ok(HalvingResult {
        selected: selected_from_state(&resampler.state),
        resample_rounds: rounds,
        core_event_count: events.len(),
        trivial_path: false,
        max_set_size: s,
        threshold_unit: unit,
    })
}

/// Largest `k` with `d_max / 2^k >= target`, capped at `⌊log₂ n⌋` and at the
/// point where the expected degree would drop below one.
pub fn halving_count(d_max: f64, target: f64, n: usize) -> usize {
    let cap = if n < 2 { 0 } else { n.ilog2() as usize };
    let floor = target.max(1.0);
    let mut k = 0;
    while k < cap && d_max / 2f64.powi(k as i32 + 1) >= floor {
        k += 1;
    }
    k
}

fn validate_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

/// Runs `halve` on the current edge subset `k` times with retries.
fn iterate_halvings<T>(
    base: &T,
    k: usize,
    seed: Seed,
    cfg: &LllConfig,
    select: impl Fn(&T, &[usize]) -> T,
    m: usize,
    halve: impl Fn(&T, Seed, &LllConfig) -> Result<HalvingResult>,
) -> Result<SparsifierResult> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut rounds = Vec::with_capacity(k);
    let mut trivial = Vec::with_capacity(k);
    let mut retries = 0;
    for i in 0..k {
        let sub = select(base, &current);
        let step_seed = seed.child(i as u64);
        let mut attempt = 0;
        let result = loop {
            match halve(&sub, step_seed.child(attempt as u64), cfg) {
                Ok(r) => break r,
                Err(Error::ResampleCapExceeded { rounds }) => {
                    if attempt >= cfg.retries {
                        return Err(Error::ResampleCapExceeded { rounds });
                    }
                    log::warn!("halving {i} hit the resample cap, retrying with a fresh seed");
                    attempt += 1;
                    retries += 1;
                }
                Err(e) => return Err(e),
            }
        };
        current = result.selected.iter().map(|&j| current[j]).collect();
        rounds.push(result.resample_rounds);
        trivial.push(result.trivial_path);
    }
    Ok(SparsifierResult {
        selected: current,
        scale: 2f64.powi(k as i32),
        meta: Construction::Halving {
            halvings: k,
            resample_rounds: rounds,
            trivial_paths: trivial,
            retries,
        },
    })
}

/// Iterated halving of an unweighted hypergraph: `|2^k e_F(S) - e_E(S)|`
/// is targeted to stay below `ε d_max |S|`.
pub fn sparsify_cut(h: &Hypergraph, eps: f64, seed: Seed, cfg: &LllConfig) -> Result<(SparsifierResult, usize)> {
    validate_eps(eps)?;
    if !h.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let r = h.rank().max(2) as f64;
    let target = cfg.c_iter * (r / eps).ln() / (eps * eps);
    let k = halving_count(h.max_degree(), target, h.n());
    let result = iterate_halvings(h, k, seed, cfg, Hypergraph::select, h.m(), halve_hypergraph)?;
    Ok((result, k))
}

/// Iterated bilateral halving of an unweighted graph; targets
/// `‖2^k L_F - L_G‖ = O(ε log(1/ε) d)`.
pub fn sparsify_spectral_graph(g: &Graph, eps: f64, seed: Seed, cfg: &LllConfig) -> Result<(SparsifierResult, usize)> {
    validate_eps(eps)?;
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let target = cfg.c_iter * (1.0 / eps).ln() / (eps * eps);
    let k = halving_count(g.max_degree(), target, g.n());
    let result = iterate_halvings(g, k, seed, cfg, Graph::select, g.m(), halve_graph_bilateral)?;
    Ok((result, k))
}

/// Reduce to bounded degree, sparsify, lift back: the additive cut
/// sparsifier for arbitrary unweighted hypergraphs.
pub fn cut_pipeline(h: &Hypergraph, eps: f64, seed: Seed, cfg: &LllConfig) -> Result<SparsifierResult> {
    let (reduced, mapping) = reduce_hypergraph(h)?;
    let (mut result, _) = sparsify_cut(&reduced, eps, seed, cfg)?;
    result.selected = lift_edges(&mapping, &result.selected)?;
    Ok(result)
}

/// Reduce to bounded degree, sparsify spectrally, lift back.
pub fn spectral_pipeline(g: &Graph, eps: f64, seed: Seed, cfg: &LllConfig) -> Result<SparsifierResult> {
    let (reduced, mapping) = reduce_graph(g)?;
    let (mut result, _) = sparsify_spectral_graph(&reduced, eps, seed, cfg)?;
    result.selected = lift_edges(&mapping, &result.selected)?;
    Ok(result)
}
