use std::io::{self, Write};

use crate::{Bit, EntityTuple};

/// One `0`/`1` line per snapshot.
pub fn trace_text(snapshots: &[EntityTuple<Bit>]) -> String {
    let mut out = String::new();
    for s in snapshots {
        out.push_str(&s.to_string());
        out.push('\n');
    }
    out
}

/// Binary (P5) graymap: one row per snapshot, one column per entity, 0 as
/// white and 1 as black.
pub fn write_pgm(snapshots: &[EntityTuple<Bit>], mut w: impl Write) -> io::Result<()> {
    let width = snapshots.first().map_or(0, |s| s.len());
    write!(w, "P5\n{} {}\n255\n", width, snapshots.len())?;
    for s in snapshots {
        let row: Vec<u8> = s
            .iter()
            .map(|b| if b.is_one() { 0 } else { 255 })
            .collect();
        w.write_all(&row)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::parse_state_string;

    #[test]
    fn pgm_layout() {
        let rows = vec![parse_state_string("010").unwrap(), parse_state_string("110").unwrap()];
        let mut buf = Vec::new();
        write_pgm(&rows, &mut buf).unwrap();
        let header = b"P5\n3 2\n255\n";
        assert_eq!(&buf[..header.len()], header);
        assert_eq!(&buf[header.len()..], &[255, 0, 255, 0, 0, 255]);
        assert_eq!(trace_text(&rows), "010\n110\n");
    }
}
