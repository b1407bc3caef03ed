use std::fmt::Write;

use super::LayeredTopology;
use crate::{Error, Result};

/// Connection weights in milieu edge order: computed layers by depth, then
/// column, then ascending source column.
#[derive(Clone, PartialEq, Debug)]
pub struct WeightAssignment(Vec<f64>);

impl WeightAssignment {
    pub fn new(weights: Vec<f64>) -> Self {
        Self(weights)
    }

    /// Assigns every permitted connection from `f(depth, column, offset)`.
    pub fn from_fn(topology: &LayeredTopology, mut f: impl FnMut(usize, usize, i8) -> f64) -> Self {
        let mut out = Vec::with_capacity(topology.weight_count());
        for depth in 1..=topology.layers() {
            for column in 0..topology.width() {
                for source in topology.incoming_columns(column) {
                    out.push(f(depth, column, topology.offset_of(column, source)));
                }
            }
        }
        Self(out)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Flat text: one `depth column offset weight` line per connection.
    /// Weights print in shortest round-trip form.
    pub fn to_text(&self, topology: &LayeredTopology) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# width {} layers {}\n# depth column offset weight",
            topology.width(),
            topology.layers()
        );
        let mut it = self.0.iter();
        for depth in 1..=topology.layers() {
            for column in 0..topology.width() {
                for source in topology.incoming_columns(column) {
                    let w = it.next().copied().unwrap_or(f64::NAN);
                    let _ = writeln!(
                        out,
                        "{depth} {column} {} {w:?}",
                        topology.offset_of(column, source)
                    );
                }
            }
        }
        out
    }

    /// Parses the format written by [`to_text`](Self::to_text). Lines may
    /// come in any order but every connection must appear exactly once.
    pub fn from_text(topology: &LayeredTopology, text: &str) -> Result<Self> {
        let w = topology.width();
        let mut slots: Vec<Option<f64>> = vec![None; topology.weight_count()];
        for (n, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: &str| Error::MalformedWeights {
                line: n + 1,
                reason: reason.to_owned(),
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [depth, column, offset, weight] = fields[..] else {
                return Err(bad("expected 4 fields"));
            };
            let depth: usize = depth.parse().map_err(|_| bad("depth"))?;
            let column: usize = column.parse().map_err(|_| bad("column"))?;
            let offset: i8 = offset.parse().map_err(|_| bad("offset"))?;
            let weight: f64 = weight.parse().map_err(|_| bad("weight"))?;
            if depth == 0 || depth > topology.layers() || column >= w || !(-1..=1).contains(&offset) {
                return Err(bad("connection outside topology"));
            }
            let source = (column as i64 + offset as i64).rem_euclid(w as i64) as usize;
            let slot = topology
                .incoming_columns(column)
                .iter()
                .position(|&c| c == source)
                .expect("offset maps to an incoming column");
            let idx = ((depth - 1) * w + column) * 3 + slot;
            if slots[idx].replace(weight).is_some() {
                return Err(bad("duplicate connection"));
            }
        }
        let missing = slots.iter().filter(|s| s.is_none()).count();
        if missing > 0 {
            return Err(Error::IncompleteParameters(format!(
                "{missing} connections have no weight"
            )));
        }
        Ok(Self(slots.into_iter().map(|s| s.unwrap_or_default()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let t = LayeredTopology::new(4, 2).unwrap();
        let mut k = 0.0;
        let w = WeightAssignment::from_fn(&t, |_, _, _| {
            k += 0.1;
            k
        });
        let text = w.to_text(&t);
        assert_eq!(WeightAssignment::from_text(&t, &text).unwrap(), w);
    }

    #[test]
    fn incomplete_file() {
        let t = LayeredTopology::new(4, 1).unwrap();
        let err = WeightAssignment::from_text(&t, "1 0 0 0.5\n").unwrap_err();
        assert!(matches!(err, Error::IncompleteParameters(_)));
    }

    #[test]
    fn duplicate_and_bad_lines() {
        let t = LayeredTopology::new(4, 1).unwrap();
        assert!(matches!(
            WeightAssignment::from_text(&t, "1 0 0 0.5\n1 0 0 0.5\n"),
            Err(Error::MalformedWeights { line: 2, .. })
        ));
        assert!(matches!(
            WeightAssignment::from_text(&t, "2 0 0 0.5\n"),
            Err(Error::MalformedWeights { line: 1, .. })
        ));
        assert!(matches!(
            WeightAssignment::from_text(&t, "1 0 0\n"),
            Err(Error::MalformedWeights { line: 1, .. })
        ));
    }
}
