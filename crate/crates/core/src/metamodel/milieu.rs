use crate::{Error, Result};

/// One milieu member of an entity, as seen by an update function.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Neighbor<S> {
    pub index: usize,
    pub weight: f64,
    pub state: S,
}

/// Weighted adjacency structure over `p` entities.
///
/// Row `i` lists the milieu of entity `i` in a fixed order chosen by whoever
/// built the matrix; update functions that are order-sensitive rely on it.
/// Storage is sparse: connections are explicit edges, so an edge whose
/// weight happens to be `0.0` is still a milieu member. Once built, only
/// weights can change.
#[derive(Clone, PartialEq, Debug)]
pub struct MilieuMatrix {
    dim: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl MilieuMatrix {
    /// Matrix over `dim` entities with no connections.
    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            offsets: vec![0; dim + 1],
            targets: Vec::new(),
            weights: Vec::new(),
        }
    }

    /// Builds from dense rows. Every nonzero entry becomes an edge; row order
    /// is ascending column index.
    pub fn from_dense(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut builder = MilieuBuilder::new(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NonSquareMilieu {
                    rows: dim,
                    row: i,
                    cols: row.len(),
                });
            }
            for (j, &w) in row.iter().enumerate() {
                if w != 0.0 {
                    builder.connect(i, j, w)?;
                }
            }
        }
        Ok(builder.build())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// `(neighbor index, weight)` pairs of row `i` in milieu order.
    pub fn row(&self, i: usize) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[i]..self.offsets[i + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    pub fn row_targets(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn row_weights(&self, i: usize) -> &[f64] {
        &self.weights[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn row_weights_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.weights[self.offsets[i]..self.offsets[i + 1]]
    }

    /// All weights in row-major edge order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weights_mut(&mut self) -> &mut [f64] {
        &mut self.weights
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.dim && self.row_targets(i).contains(&j)
    }

    /// Entry `(i, j)` of the dense view; `0.0` where there is no edge.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        if i >= self.dim {
            return 0.0;
        }
        self.row(i)
            .find(|&(t, _)| t == j)
            .map_or(0.0, |(_, w)| w)
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| {
                let mut row = vec![0.0; self.dim];
                for (j, w) in self.row(i) {
                    row[j] += w;
                }
                row
            })
            .collect()
    }

    /// True when both matrices have identical connections, ignoring weights.
    pub fn same_structure(&self, other: &Self) -> bool {
        self.dim == other.dim && self.offsets == other.offsets && self.targets == other.targets
    }
}

/// Row-by-row constructor for [`MilieuMatrix`]. Edges of a row keep the
/// order in which they were added.
#[derive(Debug)]
pub struct MilieuBuilder {
    dim: usize,
    rows: Vec<Vec<(usize, f64)>>,
}

impl MilieuBuilder {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    /// Adds `j` to the milieu of `i` with the given weight.
    pub fn connect(&mut self, i: usize, j: usize, weight: f64) -> Result<&mut Self> {
        for index in [i, j] {
            if index >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index,
                    len: self.dim,
                });
            }
        }
        self.rows[i].push((j, weight));
        Ok(self)
    }

    pub fn build(self) -> MilieuMatrix {
        let mut offsets = Vec::with_capacity(self.dim + 1);
        let mut targets = Vec::new();
        let mut weights = Vec::new();
        offsets.push(0);
        for row in self.rows {
            for (j, w) in row {
                targets.push(j);
                weights.push(w);
            }
            offsets.push(targets.len());
        }
        MilieuMatrix {
            dim: self.dim,
            offsets,
            targets,
            weights,
        }
    }
}
