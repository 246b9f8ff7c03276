//! Deterministic additive spectral sparsifier from an online density-matrix
//! game with block-diagonal costs over the Laplacian and signless Laplacian.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{eigen, frobenius, spectral_apply, spectral_norm, symmetrize, SortedEigen};
use crate::model::{laplacian, Graph};
use crate::par;
use crate::sparsifier::{Construction, SparsifierResult};

/// Largest vertex count accepted by [`det_sparsify`].
pub const DET_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetConfig {
    /// `T = ⌈c_t · n / ε²⌉`.
    pub c_t: f64,
    /// `η = min(ε, 1/4) / (eta_constant · sqrt(d_max · m))`.
    pub eta_constant: f64,
}

impl Default for DetConfig {
    fn default() -> Self {
        Self {
            c_t: 16.0,
            eta_constant: 4.0,
        }
    }
}

/// The block pair `(Y, Z)` of one FTRL iterate and its quarter powers.
pub struct DensityState {
    pub y: DMatrix<f64>,
    pub z: DMatrix<f64>,
    pub y_quarter: DMatrix<f64>,
    pub z_quarter: DMatrix<f64>,
    pub nu: f64,
    /// Smallest eigenvalue over both blocks.
    pub min_eigenvalue: f64,
}

impl DensityState {
    pub fn trace(&self) -> f64 {
        self.y.trace() + self.z.trace()
    }
}

/// Per-step record of a game run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GameTranscript {
    pub steps: usize,
    pub eta: f64,
    /// Selected edge indices, in play order.
    pub selected: Vec<usize>,
    /// `Y•(mL_ab − L_G) + Z•(mSL_ab − SL_G)` per step.
    pub payoffs: Vec<f64>,
    /// `trace(Y) + trace(Z) − 1` per step.
    pub trace_errors: Vec<f64>,
    /// `‖X^{1/4} C X^{1/4}‖ / sqrt(d_max m)` per step.
    pub width_ratios: Vec<f64>,
    pub min_eigenvalues: Vec<f64>,
    /// `λ_max(Σ C_t) − Σ X_t • C_t`.
    pub regret: f64,
}

fn trace_at(nu: f64, values: &[f64]) -> f64 {
    values.iter().map(|&l| (nu - l).powi(-2)).sum()
}

/// FTRL iterate `X = (νI − η Σ C)^{-2}` for the block-diagonal history
/// `(acc_y, acc_z)`, with `ν` chosen by bisection so that `trace X = 1`.
pub fn ftrl_update(acc_y: &DMatrix<f64>, acc_z: &DMatrix<f64>, eta: f64) -> Result<DensityState> {
    let blocks = par::map_range(0..2, |i| {
        let acc = if i == 0 { acc_y } else { acc_z };
        let scaled = acc * eta;
        eigen(&scaled)
    });
    let values: Vec<f64> = blocks.iter().flat_map(|e| e.values.iter().copied()).collect();
    if values.is_empty() {
        return Err(Error::EmptyInstance);
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::BisectionFailure("non-finite eigenvalue in history".into()));
    }
    let lmax = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (mut lo, mut hi) = (lmax + 1.0, lmax + (values.len() as f64).sqrt());
    if trace_at(lo, &values) < 1.0 - 1e-12 || trace_at(hi, &values) > 1.0 + 1e-12 {
        return Err(Error::BisectionFailure(format!("trace does not bracket 1 on [{lo}, {hi}]")));
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if trace_at(mid, &values) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let nu = 0.5 * (lo + hi);
    let build = |e: &SortedEigen, p: f64| {
        let mut m = spectral_apply(e, |l| (nu - l).powf(p));
        symmetrize(&mut m);
        m
    };
    Ok(DensityState {
        y: build(&blocks[0], -2.0),
        z: build(&blocks[1], -2.0),
        y_quarter: build(&blocks[0], -0.5),
        z_quarter: build(&blocks[1], -0.5),
        nu,
        min_eigenvalue: values.iter().map(|&l| (nu - l).powi(-2)).fold(f64::INFINITY, f64::min),
    })
}

/// Edge minimizing `Y•(m L_ab) + Z•(m SL_ab)`; ties go to the lowest index.
pub fn select_edge(g: &Graph, y: &DMatrix<f64>, z: &DMatrix<f64>) -> Result<usize> {
    if g.m() == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut best = (f64::INFINITY, 0);
    for (i, &(a, b)) in g.edges().iter().enumerate() {
        let score = y[(a, a)] + y[(b, b)] - 2.0 * y[(a, b)] + z[(a, a)] + z[(b, b)] + 2.0 * z[(a, b)];
        if score < best.0 {
            best = (score, i);
        }
    }
    Ok(best.1)
}

/// Number of game steps for `n` vertices.
pub fn step_count(n: usize, eps: f64, cfg: &DetConfig) -> usize {
    (cfg.c_t * n as f64 / (eps * eps)).ceil() as usize
}

/// Runs the game and returns the multiset of selected edges with scale `m/T`,
/// or `F = E` with scale 1 when `T ≥ m`.
pub fn det_sparsify(g: &Graph, eps: f64, cfg: &DetConfig) -> Result<(SparsifierResult, GameTranscript)> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    if g.n() > DET_LIMIT {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: DET_LIMIT,
        });
    }
    let n = g.n();
    let m = g.m();
    let t_steps = step_count(n, eps, cfg);
    let d = g.max_degree();
    let eta = eps.min(0.25) / (cfg.eta_constant * (d * m as f64).sqrt());
    let mut transcript = GameTranscript {
        steps: 0,
        eta,
        selected: Vec::new(),
        payoffs: Vec::new(),
        trace_errors: Vec::new(),
        width_ratios: Vec::new(),
        min_eigenvalues: Vec::new(),
        regret: 0.0,
    };
    if t_steps >= m {
        let result = SparsifierResult {
            selected: (0..m).collect(),
            scale: 1.0,
            meta: Construction::Game {
                steps: 0,
                eta,
                max_width_ratio: 0.0,
                already_sparse: true,
            },
        };
        return Ok((result, transcript));
    }

    let bundle = laplacian(g)?;
    let mf = m as f64;
    let shift = DMatrix::<f64>::identity(n, n) * (2.0 * d);
    let base_y = &shift - &bundle.laplacian;
    let base_z = &shift - &bundle.signless;
    let mut acc_y = DMatrix::<f64>::zeros(n, n);
    let mut acc_z = DMatrix::<f64>::zeros(n, n);
    let mut gained = 0.0;
    let unit = (d * mf).sqrt();

    for step in 0..t_steps {
        let state = ftrl_update(&acc_y, &acc_z, eta)?;
        let e = select_edge(g, &state.y, &state.z)?;
        let (a, b) = g.edges()[e];

        let mut cost_y = base_y.clone();
        let mut cost_z = base_z.clone();
        for (cost, sign) in [(&mut cost_y, -1.0), (&mut cost_z, 1.0)] {
            cost[(a, a)] += mf;
            cost[(b, b)] += mf;
            cost[(a, b)] += sign * mf;
            cost[(b, a)] += sign * mf;
        }
        let payoff = frobenius(&state.y, &cost_y) + frobenius(&state.z, &cost_z) - 2.0 * d * state.trace();
        gained += frobenius(&state.y, &cost_y) + frobenius(&state.z, &cost_z);

        let widths = par::map_range(0..2, |i| {
            let (q, c) = if i == 0 {
                (&state.y_quarter, &cost_y)
            } else {
                (&state.z_quarter, &cost_z)
            };
            let mut w = q * c * q;
            symmetrize(&mut w);
            spectral_norm(&w)
        });
        let width = widths[0].max(widths[1]);
        if eta * width > 0.25 + 1e-12 {
            return Err(Error::WidthCondition {
                step,
                value: eta * width,
            });
        }

        transcript.selected.push(e);
        transcript.payoffs.push(payoff);
        transcript.trace_errors.push(state.trace() - 1.0);
        transcript.width_ratios.push(width / unit);
        transcript.min_eigenvalues.push(state.min_eigenvalue);
        acc_y += cost_y;
        acc_z += cost_z;
    }

    let lmax = par::map_range(0..2, |i| {
        let acc = if i == 0 { &acc_y } else { &acc_z };
        crate::linalg::eigenvalues(acc).last().copied().unwrap_or(0.0)
    });
    transcript.regret = lmax[0].max(lmax[1]) - gained;
    transcript.steps = t_steps;
    let max_width_ratio = transcript.width_ratios.iter().copied().fold(0.0, f64::max);
    let result = SparsifierResult {
        selected: transcript.selected.clone(),
        scale: mf / t_steps as f64,
        meta: Construction::Game {
            steps: t_steps,
            eta,
            max_width_ratio,
            already_sparse: false,
        },
    };
    Ok((result, transcript))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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
    fn empty_history_is_uniform() {
        let zero = DMatrix::zeros(5, 5);
        let s = ftrl_update(&zero, &zero, 0.3).unwrap();
        assert_relative_eq!(s.nu, 10f64.sqrt(), epsilon = 1e-9);
        for i in 0..5 {
            assert_relative_eq!(s.y[(i, i)], 0.1, epsilon = 1e-9);
            assert_relative_eq!(s.z[(i, i)], 0.1, epsilon = 1e-9);
        }
    }

    #[test]
    fn identity_history_stays_scalar() {
        let acc_y = DMatrix::identity(3, 3) * 2.0;
        let acc_z = DMatrix::from_row_slice(3, 3, &[1.0, 0.5, 0.0, 0.5, 2.0, 0.0, 0.0, 0.0, 1.0]);
        let s = ftrl_update(&acc_y, &acc_z, 0.7).unwrap();
        let c = s.y[(0, 0)];
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { c } else { 0.0 };
                assert_relative_eq!(s.y[(i, j)], expect, epsilon = 1e-12);
            }
        }
        assert_relative_eq!(s.trace(), 1.0, epsilon = 1e-10);
    }

    fn block(y: &DMatrix<f64>, z: &DMatrix<f64>) -> DMatrix<f64> {
        let n = y.nrows();
        let mut x = DMatrix::zeros(2 * n, 2 * n);
        x.view_mut((0, 0), (n, n)).copy_from(y);
        x.view_mut((n, n), (n, n)).copy_from(z);
        x
    }

    fn objective(eta: f64, c: &DMatrix<f64>, x: &DMatrix<f64>) -> f64 {
        let root = spectral_apply(&eigen(x), |l| l.max(0.0).sqrt());
        eta * frobenius(c, x) + 2.0 * root.trace()
    }

    /// Oracle: the iterate beats random density matrices and random
    /// perturbations of itself on the regularized objective.
    #[test]
    fn maximizes_regularized_objective() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let n = 4;
        let rand_sym = |rng: &mut ChaCha8Rng| {
            let a = DMatrix::from_fn(n, n, |_, _| rng.random::<f64>() - 0.5);
            &a + a.transpose()
        };
        let acc_y = rand_sym(&mut rng);
        let acc_z = rand_sym(&mut rng);
        let eta = 0.8;
        let s = ftrl_update(&acc_y, &acc_z, eta).unwrap();
        assert_relative_eq!(s.trace(), 1.0, epsilon = 1e-10);
        let c = block(&acc_y, &acc_z);
        let x = block(&s.y, &s.z);
        let best = objective(eta, &c, &x);
        for i in 0..100_000 {
            let g = DMatrix::from_fn(2 * n, 2 * n, |_, _| rng.random::<f64>() - 0.5);
            let mut w = &g * g.transpose();
            w /= w.trace();
            if i % 2 == 1 {
                let t = rng.random::<f64>() * 0.05;
                w = &x * (1.0 - t) + w * t;
            }
            assert!(objective(eta, &c, &w) <= best + 1e-9, "draw {i}");
        }
    }

    #[test]
    fn symmetric_state_picks_first_edge() {
        let g = complete(4);
        let y = DMatrix::identity(4, 4) / 8.0;
        assert_eq!(select_edge(&g, &y, &y).unwrap(), 0);
    }

    #[test]
    fn avoids_aligned_direction() {
        let g = Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        let u = nalgebra::DVector::from_vec(vec![1.0, -1.0, 0.0]) / 2f64.sqrt();
        let y = &u * u.transpose();
        let z = DMatrix::zeros(3, 3);
        assert_eq!(select_edge(&g, &y, &z).unwrap(), 1);
    }

    #[test]
    fn single_edge() {
        let g = Graph::new(2, vec![(0, 1)]).unwrap();
        let y = DMatrix::identity(2, 2) / 4.0;
        assert_eq!(select_edge(&g, &y, &y).unwrap(), 0);
    }

    #[test]
    fn already_sparse_returns_all_edges() {
        let (r, t) = det_sparsify(&complete(8), 0.5, &DetConfig::default()).unwrap();
        assert_eq!(r.selected, (0..28).collect::<Vec<_>>());
        assert_eq!(r.scale, 1.0);
        assert_eq!(t.steps, 0);
    }

    #[test]
    fn short_game_audits() {
        let cfg = DetConfig {
            c_t: 0.25,
            ..DetConfig::default()
        };
        let g = complete(8);
        let (r, t) = det_sparsify(&g, 0.5, &cfg).unwrap();
        assert_eq!(r.selected.len(), 8);
        assert_relative_eq!(r.scale, 28.0 / 8.0);
        // Weighted degree total is preserved: c·|F| = m.
        assert_relative_eq!(r.scale * r.selected.len() as f64, 28.0);
        for i in 0..t.steps {
            assert!(t.trace_errors[i].abs() < 1e-8);
            assert!(t.payoffs[i] <= 1e-8);
            assert!(t.width_ratios[i] <= 8.0);
            assert!(t.min_eigenvalues[i] >= -1e-8);
        }
        let (again, _) = det_sparsify(&g, 0.5, &cfg).unwrap();
        assert_eq!(r, again);
    }

    #[test]
    fn rejects_bad_input() {
        let g = complete(3);
        assert!(matches!(det_sparsify(&g, 0.0, &DetConfig::default()), Err(Error::InvalidEpsilon(_))));
        let w = Graph::with_weights(2, vec![(0, 1)], Some(vec![2.0])).unwrap();
        assert_eq!(det_sparsify(&w, 0.5, &DetConfig::default()), Err(Error::WeightedInput));
    }
}
