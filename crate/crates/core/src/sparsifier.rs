use serde::Serialize;

/// Output of a sparsifier construction.
///
/// `selected` indexes the input's edge list and may repeat indices when the
/// construction emits a multiset. The sparsifier is `scale · F`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparsifierResult {
    pub selected: Vec<usize>,
    pub scale: f64,
    pub meta: Construction,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    /// Iterated halving.
    Halving {
        halvings: usize,
        resample_rounds: Vec<usize>,
        trivial_paths: Vec<bool>,
        retries: usize,
    },
    /// Online density-matrix game.
    Game {
        steps: usize,
        eta: f64,
        max_width_ratio: f64,
        already_sparse: bool,
    },
}

impl SparsifierResult {
    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }
}
