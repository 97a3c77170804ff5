//! Labeling files: one `x y value` line per vertex with a nonzero label;
//! blank lines and `#` comments are skipped.

use std::fmt;

use polycell_core::constructions::Labeling;
use polycell_core::grid::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for LabelFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "label file line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for LabelFileError {}

pub fn parse_labeling(text: &str) -> Result<Labeling, LabelFileError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(LabelFileError {
                line: i + 1,
                message: format!("want `x y value`, got {line:?}"),
            });
        }
        let parse = |s: &str, what: &str| -> Result<i64, LabelFileError> {
            s.parse().map_err(|_| LabelFileError {
                line: i + 1,
                message: format!("bad {what} {s:?}"),
            })
        };
        let x = parse(fields[0], "column")?;
        let y = parse(fields[1], "row")?;
        let value = parse(fields[2], "value")?;
        if x < 1 || y < 1 {
            return Err(LabelFileError {
                line: i + 1,
                message: "coordinates must be positive".into(),
            });
        }
        entries.push((Vertex::new(x as u32, y as u32), value));
    }
    Ok(Labeling::from_entries(entries))
}

pub fn emit_labeling(alpha: &Labeling) -> String {
    let mut out = String::new();
    for (v, k) in alpha.iter() {
        out.push_str(&format!("{} {} {}\n", v.x, v.y, k));
    }
    out
}
