//! Plain-text sample files for the calibrate subcommand: a header line
//! `d1=<int> d2=<int>` followed by one sample per line, `y` then the d1
//! x-values then the d2 z-values, whitespace-separated.

use std::path::Path;

use crate::error::{Error, Result};
use crate::vicm::VicmSample;

pub fn read_vicm_data(path: &Path) -> Result<(usize, usize, Vec<VicmSample>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());

    let (_, header) = lines.next().ok_or_else(|| {
        Error::Config(format!("{}: empty data file", path.display()))
    })?;
    let (d1, d2) = parse_header(header)
        .ok_or_else(|| Error::Config(format!("{}: bad header '{header}'", path.display())))?;

    let width = 1 + d1 + d2;
    let mut samples = Vec::new();
    for (lineno, line) in lines {
        let values: std::result::Result<Vec<f64>, _> =
            line.split_whitespace().map(|t| t.parse::<f64>()).collect();
        let values = values.map_err(|e| Error::Data {
            position: lineno + 1,
            reason: format!("unparsable number: {e}"),
        })?;
        if values.len() != width {
            return Err(Error::Data {
                position: lineno + 1,
                reason: format!("expected {width} values, got {}", values.len()),
            });
        }
        samples.push(VicmSample::new(
            values[0],
            values[1..1 + d1].to_vec(),
            values[1 + d1..].to_vec(),
        ));
    }
    Ok((d1, d2, samples))
}

fn parse_header(line: &str) -> Option<(usize, usize)> {
    let mut d1 = None;
    let mut d2 = None;
    for token in line.split_whitespace() {
        let (key, value) = token.split_once('=')?;
        match key {
            "d1" => d1 = value.parse().ok(),
            "d2" => d2 = value.parse().ok(),
            _ => return None,
        }
    }
    match (d1, d2) {
        (Some(a), Some(b)) if a > 0 && b > 0 => Some((a, b)),
        _ => None,
    }
}

pub fn write_vicm_data(path: &Path, d1: usize, d2: usize, samples: &[VicmSample]) -> Result<()> {
    use std::fmt::Write as _;
    let mut out = String::new();
    let _ = writeln!(out, "d1={d1} d2={d2}");
    for s in samples {
        let mut fields = Vec::with_capacity(1 + d1 + d2);
        fields.push(format!("{:.16e}", s.y));
        fields.extend(s.x.iter().map(|v| format!("{v:.16e}")));
        fields.extend(s.z.iter().map(|v| format!("{v:.16e}")));
        let _ = writeln!(out, "{}", fields.join(" "));
    }
    std::fs::write(path, out)?;
    Ok(())
}
