//! Numerical audits of the Local Lemma bookkeeping behind one halving step.
//!
//! All quantities are in natural-log space so that large degrees and set
//! sizes do not overflow.

use std::f64::consts::{E, LN_2};

/// Deviation `t` at which the two-sided Hoeffding bound
/// `2 exp(-t² / 2N)` for a sum of `N` fair ±1 variables equals `exp(ln_p)`.
pub fn chernoff_deviation(vars: f64, ln_p: f64) -> f64 {
    (2.0 * vars * (LN_2 - ln_p)).sqrt()
}

/// `ln` of the Hoeffding bound on `|2X - N| > t` for `X ~ Bin(N, 1/2)`.
pub fn ln_hoeffding_tail(vars: f64, t: f64) -> f64 {
    if vars <= 0.0 {
        return f64::NEG_INFINITY;
    }
    LN_2 - t * t / (2.0 * vars)
}

/// `Σ_{ℓ ≥ 1} count(ℓ) · ln(1 - base^{-3ℓ})` with
/// `count(ℓ) = roots · (e·branch)^{ℓ-1}`, summed until terms vanish.
fn ln_neighbor_product(roots: f64, branch: f64, base: f64, n: usize) -> f64 {
    let ln_base = base.ln();
    let ln_growth = (E * branch).ln();
    let mut total = 0.0;
    for l in 1..=n.max(1) {
        let lf = l as f64;
        let ln_x = -3.0 * lf * ln_base;
        let ln_count = roots.ln() + (lf - 1.0) * ln_growth;
        let term = ln_count.exp() * (-ln_x.exp()).ln_1p();
        total += term;
        if !term.is_finite() || (term.abs() < 1e-300 && l > 1) {
            break;
        }
    }
    total
}

/// Slack (log space) of the constructive LLL condition for a hypergraph cut
/// event with `|S| = k`: `ln(x ∏(1 - x') / 2) - ln Pr[A_S]`, where
/// `x = (dr)^{-3k}` and `Pr[A_S]` is bounded by Hoeffding at the event's
/// threshold `constant · sqrt(d ln(dr)) · k` over `d·k` variables.
/// Non-negative means the condition holds.
pub fn hypergraph_condition_slack(d: f64, r: f64, k: usize, n: usize, constant: f64) -> f64 {
    let dr = (d * r).max(2.0);
    let kf = k as f64;
    let ln_x = -3.0 * kf * dr.ln();
    let prod = ln_neighbor_product(dr * kf, dr, dr, n);
    let t = constant * (d * dr.ln()).sqrt() * kf;
    ln_x + prod - LN_2 - ln_hoeffding_tail(d * kf, t)
}

/// Same slack for a bilateral event `A_{S,T}` with `|S ∪ T| = k` and
/// `|S| = a`, including the `d·k` degree-event neighbors.
pub fn bilateral_condition_slack(d: f64, k: usize, a: usize, n: usize, constant: f64) -> f64 {
    let d = d.max(2.0);
    let kf = k as f64;
    let st = (a as f64 * (kf - a as f64)).sqrt();
    let ln_x = -3.0 * kf * d.ln();
    let prod = ln_neighbor_product(d * kf, d, d, n) + d * kf * (-d.powi(-3)).ln_1p();
    let vars = d * (a.min(k - a)) as f64;
    let t = constant * (d * d.ln()).sqrt() * st;
    ln_x + prod - LN_2 - ln_hoeffding_tail(vars, t)
}

/// Same slack for a degree event `D_v`.
pub fn degree_condition_slack(d: f64, n: usize, constant: f64) -> f64 {
    let d = d.max(2.0);
    let ln_x = -3.0 * d.ln();
    let prod = ln_neighbor_product(2.0 * d, d, d, n) + d * (-d.powi(-3)).ln_1p();
    let t = constant * (d * d.ln()).sqrt();
    ln_x + prod - LN_2 - ln_hoeffding_tail(d, t)
}

/// `ln Σ_{ℓ=s+1}^{n} base^{-6ℓ} · n · (growth)^ℓ`, the geometric bound on
/// the `x`-mass of events left outside the core.
fn ln_tail(n: usize, s: usize, base: f64, growth: f64) -> f64 {
    let nf = n as f64;
    let terms: Vec<f64> = (s + 1..=n)
        .map(|l| nf.ln() + l as f64 * (growth.ln() - 6.0 * base.ln()))
        .collect();
    log_sum_exp(&terms)
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// `ln` of the tail bound for hypergraph cut events with core size `s`.
pub fn ln_core_tail_mass(n: usize, s: usize, d: f64, r: f64) -> f64 {
    let dr = (d * r).max(2.0);
    ln_tail(n, s, dr, E * dr)
}

/// `ln` of the tail bound for bilateral events (`2^ℓ` splits per set).
pub fn ln_bilateral_tail_mass(n: usize, s: usize, d: f64) -> f64 {
    let d = d.max(2.0);
    ln_tail(n, s, d, 2.0 * E * d)
}
