//! Core bad events and Moser–Tardos resampling over edge-inclusion coins.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rng::Seed;

/// Sort key of an event: its sorted vertex set, then the sorted `S` side for
/// bilateral events (empty for set and degree events).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct EventKey {
    pub vertices: Vec<usize>,
    pub side: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// `|2 e_F(S) - e_E(S)|` too large.
    Cut,
    /// `|2 e_F(S,T) - e_E(S,T)|` too large.
    Bilateral,
    /// `|2 e_F(v) - e_E(v)|` too large.
    Degree,
}

/// A bad event: true when `|2·|vars ∩ F| - |vars|| > threshold`.
#[derive(Debug, Clone)]
pub struct CoreEvent {
    pub key: EventKey,
    pub kind: EventKind,
    pub vars: Vec<u32>,
    pub threshold: f64,
}

impl CoreEvent {
    #[inline]
    pub fn is_violated(&self, hits: usize) -> bool {
        (2.0 * hits as f64 - self.vars.len() as f64).abs() > self.threshold
    }
}

/// Moser–Tardos state: coin values and per-variable draw counters.
pub struct Resampler<'a> {
    events: &'a [CoreEvent],
    var_events: Vec<Vec<u32>>,
    hits: Vec<usize>,
    pub state: Vec<bool>,
    draws: Vec<u64>,
    seed: Seed,
}

impl<'a> Resampler<'a> {
    /// Draws the initial coins. `events` must be sorted by key.
    pub fn new(var_count: usize, events: &'a [CoreEvent], seed: Seed) -> Self {
        let state: Vec<bool> = (0..var_count).map(|v| seed.coin(v as u64, 0)).collect();
        let mut var_events = vec![Vec::new(); var_count];
        let mut hits = vec![0; events.len()];
        for (j, ev) in events.iter().enumerate() {
            for &v in &ev.vars {
                var_events[v as usize].push(j as u32);
                hits[j] += state[v as usize] as usize;
            }
        }
        Self {
            events,
            var_events,
            hits,
            state,
            draws: vec![0; var_count],
            seed,
        }
    }

    /// Resamples the smallest violated event until none is left.
    /// Returns the number of resampling rounds.
    pub fn run(&mut self, cap: usize) -> Result<usize> {
        let mut violated: BTreeSet<usize> = (0..self.events.len())
            .filter(|&j| self.events[j].is_violated(self.hits[j]))
            .collect();
        let mut rounds = 0;
        let mut touched = Vec::new();
        let mut touched_mark = vec![false; self.events.len()];
        while let Some(&j) = violated.first() {
            if rounds >= cap {
                return Err(Error::ResampleCapExceeded { rounds });
            }
            rounds += 1;
            for &v in &self.events[j].vars {
                let v = v as usize;
                self.draws[v] += 1;
                let coin = self.seed.coin(v as u64, self.draws[v]);
                if coin != self.state[v] {
                    self.state[v] = coin;
                    for &k in &self.var_events[v] {
                        let k = k as usize;
                        if coin {
                            self.hits[k] += 1;
                        } else {
                            self.hits[k] -= 1;
                        }
                        if !touched_mark[k] {
                            touched_mark[k] = true;
                            touched.push(k);
                        }
                    }
                }
            }
            for k in touched.drain(..) {
                touched_mark[k] = false;
                if self.events[k].is_violated(self.hits[k]) {
                    violated.insert(k);
                } else {
                    violated.remove(&k);
                }
            }
        }
        Ok(rounds)
    }

    pub fn violated_count(&self) -> usize {
        (0..self.events.len())
            .filter(|&j| self.events[j].is_violated(self.hits[j]))
            .count()
    }
}
