use crate::metamodel::{MilieuBuilder, MilieuMatrix};
use crate::{Error, Result};

/// Input layer at depth 0 followed by `layers` computed layers, all of the
/// same width. Entity index is `depth * width + column`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LayeredTopology {
    width: usize,
    layers: usize,
}

impl LayeredTopology {
    /// `width` must be at least 3 so the three incoming columns are distinct.
    pub fn new(width: usize, layers: usize) -> Result<Self> {
        if width < 3 {
            return Err(Error::WidthTooSmall(width));
        }
        if layers == 0 {
            return Err(Error::OutOfRange {
                value: 0,
                min: 1,
                max: i64::MAX,
            });
        }
        Ok(Self { width, layers })
    }

    /// 31 columns, 15 computed layers.
    pub fn standard() -> Self {
        Self {
            width: 31,
            layers: 15,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of computed layers (weighted transitions).
    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn entity_count(&self) -> usize {
        (self.layers + 1) * self.width
    }

    pub fn index(&self, depth: usize, column: usize) -> usize {
        debug_assert!(depth <= self.layers && column < self.width);
        depth * self.width + column
    }

    pub fn locate(&self, index: usize) -> (usize, usize) {
        (index / self.width, index % self.width)
    }

    /// Previous-layer columns feeding `column`, ascending.
    pub fn incoming_columns(&self, column: usize) -> [usize; 3] {
        let w = self.width;
        let mut cols = [(column + w - 1) % w, column, (column + 1) % w];
        cols.sort_unstable();
        cols
    }

    /// Signed column offset in `{-1, 0, 1}` of `source` relative to `column`.
    pub fn offset_of(&self, column: usize, source: usize) -> i8 {
        let d = (source + self.width - column) % self.width;
        match d {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    /// Whether `(target, source)` is a permitted connection.
    pub fn permits(&self, target: usize, source: usize) -> bool {
        let (td, tc) = self.locate(target);
        let (sd, sc) = self.locate(source);
        td >= 1 && td <= self.layers && sd + 1 == td && self.incoming_columns(tc).contains(&sc)
    }

    /// Number of weights: three per computed neuron.
    pub fn weight_count(&self) -> usize {
        3 * self.layers * self.width
    }

    /// Connection structure with unit placeholder weights; input-layer rows
    /// are empty.
    pub fn milieu(&self) -> MilieuMatrix {
        let mut b = MilieuBuilder::new(self.entity_count());
        for depth in 1..=self.layers {
            for column in 0..self.width {
                let target = self.index(depth, column);
                for source in self.incoming_columns(column) {
                    b.connect(target, self.index(depth - 1, source), 1.0)
                        .expect("layer indices are in range");
                }
            }
        }
        b.build()
    }

    pub fn output_range(&self) -> std::ops::Range<usize> {
        let start = self.index(self.layers, 0);
        start..start + self.width
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_counts() {
        let t = LayeredTopology::standard();
        assert_eq!(t.entity_count(), 496);
        assert_eq!(t.weight_count(), 1395);
        assert_eq!(t.milieu().edge_count(), 1395);
    }

    #[test]
    fn index_round_trip() {
        let t = LayeredTopology::standard();
        for g in 0..t.entity_count() {
            let (d, c) = t.locate(g);
            assert_eq!(t.index(d, c), g);
        }
    }

    #[test]
    fn edge_columns_wrap() {
        let t = LayeredTopology::standard();
        assert_eq!(t.incoming_columns(0), [0, 1, 30]);
        assert_eq!(t.incoming_columns(30), [0, 29, 30]);
        assert_eq!(t.offset_of(0, 30), -1);
        assert_eq!(t.offset_of(30, 0), 1);
        let m = t.milieu();
        let row: Vec<usize> = m.row_targets(t.index(1, 0)).to_vec();
        assert_eq!(row, vec![0, 1, 30]);
    }

    #[test]
    fn degrees() {
        let t = LayeredTopology::new(5, 3).unwrap();
        let m = t.milieu();
        for g in 0..t.entity_count() {
            let expected = if g < 5 { 0 } else { 3 };
            assert_eq!(m.degree(g), expected);
            for &s in m.row_targets(g) {
                assert!(t.permits(g, s));
            }
        }
    }

    #[test]
    fn rejects_degenerate() {
        assert!(LayeredTopology::new(2, 1).is_err());
        assert!(LayeredTopology::new(31, 0).is_err());
    }
}
