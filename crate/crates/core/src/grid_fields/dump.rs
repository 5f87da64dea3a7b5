//! Plain-text field dumps: a header line `nx ny hx hy`, then one value per
//! line in row-major order. Values use the shortest representation that
//! parses back to the identical float.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::{Grid, ScalarField};
use crate::{Error, Real, Result};

pub fn write_field<T: Real, W: Write>(mut w: W, f: &ScalarField<T>) -> Result<()> {
    let g = f.grid();
    writeln!(w, "{} {} {} {}", g.nx(), g.ny(), g.hx::<T>(), g.hy::<T>())?;
    for v in f.values() {
        writeln!(w, "{v}")?;
    }
    Ok(())
}

pub fn read_field<T: Real, R: BufRead>(r: R) -> Result<ScalarField<T>> {
    let mut lines = r.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty field dump".into()))??;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(Error::Parse(format!(
            "header needs `nx ny hx hy`, got `{header}`"
        )));
    }
    let nx: usize = parts[0]
        .parse()
        .map_err(|_| Error::Parse(format!("bad nx `{}`", parts[0])))?;
    let ny: usize = parts[1]
        .parse()
        .map_err(|_| Error::Parse(format!("bad ny `{}`", parts[1])))?;
    let grid = Grid::new(nx, ny)?;
    for (s, h) in [(parts[2], grid.hx::<f64>()), (parts[3], grid.hy::<f64>())] {
        let v: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad spacing `{s}`")))?;
        if (v - h).abs() > 1e-6 * h {
            return Err(Error::Parse(format!(
                "spacing {v} inconsistent with node count (expected {h})"
            )));
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    for (n, line) in lines.enumerate() {
        let line = line?;
        let s = line.trim();
        if s.is_empty() {
            continue;
        }
        let v = s
            .parse::<T>()
            .map_err(|_| Error::Parse(format!("line {}: bad value `{s}`", n + 2)))?;
        values.push(v);
    }
    ScalarField::from_values(grid, values)
}

pub fn save_field<T: Real>(path: impl AsRef<Path>, f: &ScalarField<T>) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_field(&mut w, f)?;
    w.flush()?;
    Ok(())
}

pub fn load_field<T: Real>(path: impl AsRef<Path>) -> Result<ScalarField<T>> {
    read_field(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_fields::make_grid;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let g = make_grid(3).unwrap();
        let f = ScalarField::from_fn(g, |x: f64, y| x + 10.0 * y);
        let mut buf = Vec::new();
        write_field(&mut buf, &f).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("3 3 0.5 0.5"));
        assert_eq!(lines.next(), Some("0"));
        assert_eq!(lines.next(), Some("0.5"));
        assert_eq!(text.lines().count(), 10);
    }

    #[test]
    fn rejects_short_and_inconsistent_dumps() {
        assert!(read_field::<f64, _>("3 3 0.5 0.5\n1\n2\n".as_bytes()).is_err());
        assert!(read_field::<f64, _>("3 3 0.25 0.5\n".as_bytes()).is_err());
        assert!(read_field::<f64, _>("".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn dump_roundtrip_is_bit_exact(vals in prop::collection::vec(-1e300f64..1e300, 20)) {
            let g = Grid::new(5, 4).unwrap();
            let f = ScalarField::from_values(g, vals).unwrap();
            let mut buf = Vec::new();
            write_field(&mut buf, &f).unwrap();
            let back: ScalarField<f64> = read_field(buf.as_slice()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
