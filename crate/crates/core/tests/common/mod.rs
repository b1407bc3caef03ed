#![allow(dead_code)]

use allagmatic::ca::{build_ca, rule_from_number, CaConfig};
use allagmatic::{Bit, EntityTuple};

/// Standalone elementary CA on a ring, written directly against bit
/// vectors. Shares nothing with the library's stepping code.
pub fn reference_ca(initial: &[u8], rule: u8, steps: usize) -> Vec<Vec<u8>> {
    let n = initial.len();
    let mut rows = vec![initial.to_vec()];
    for _ in 0..steps {
        let cur = rows.last().unwrap();
        let next = (0..n)
            .map(|i| {
                let l = cur[(i + n - 1) % n];
                let c = cur[i];
                let r = cur[(i + 1) % n];
                (rule >> (4 * l + 2 * c + r)) & 1
            })
            .collect();
        rows.push(next);
    }
    rows
}

/// Trace produced through the metamodel, as raw bit vectors.
pub fn metamodel_ca(initial: &[u8], rule: u8, steps: usize) -> Vec<Vec<u8>> {
    let mut ca = build_ca(
        CaConfig::new(initial.len()).unwrap(),
        rule_from_number(rule as i64).unwrap(),
        EntityTuple::from_bits(initial).unwrap(),
    )
    .unwrap();
    ca.run(steps)
        .snapshots()
        .iter()
        .map(|s| s.iter().map(Bit::as_u8).collect())
        .collect()
}

pub fn data_file(name: &str) -> String {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
