//! The grid file format: one character per cell, `#` for a cell and `.` for
//! empty, rows bottom-up (the last line is row 1) and column `i` at `x = i`.
//! Lines are right-padded with `.` to the longest line.

use std::fmt;

use polycell_core::grid::{Cell, CellCollection};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridFileError {
    Empty,
    /// Unexpected character with its 1-based line and column.
    BadCharacter { line: usize, column: usize, found: char },
    NoCells,
}

impl fmt::Display for GridFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridFileError::Empty => write!(f, "grid file has no lines"),
            GridFileError::BadCharacter { line, column, found } => write!(
                f,
                "unexpected character {found:?} at line {line}, column {column} (want '#' or '.')"
            ),
            GridFileError::NoCells => write!(f, "grid file contains no '#' cell"),
        }
    }
}

impl std::error::Error for GridFileError {}

fn parse_lines(text: &str, top_down: bool) -> Result<CellCollection, GridFileError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.trim().is_empty())
        .collect();
    if lines.is_empty() {
        return Err(GridFileError::Empty);
    }
    let mut cells = Vec::new();
    let height = lines.len();
    for (i, line) in lines.iter().enumerate() {
        let row = if top_down { i + 1 } else { height - i };
        for (j, ch) in line.chars().enumerate() {
            match ch {
                '#' => cells.push(Cell::at(j as u32 + 1, row as u32)),
                '.' | ' ' => {}
                found => {
                    return Err(GridFileError::BadCharacter {
                        line: i + 1,
                        column: j + 1,
                        found,
                    })
                }
            }
        }
    }
    if cells.is_empty() {
        return Err(GridFileError::NoCells);
    }
    Ok(CellCollection::new(cells).expect("nonempty"))
}

/// Bottom-up convention: the last line of the file is row `y = 1`.
pub fn parse_grid(text: &str) -> Result<CellCollection, GridFileError> {
    parse_lines(text, false)
}

/// Flipped convention for convenience: the first line is row `y = 1`.
pub fn parse_grid_top_down(text: &str) -> Result<CellCollection, GridFileError> {
    parse_lines(text, true)
}

/// Renders a normalized collection bottom-up; `parse_grid ∘ emit_grid` is
/// the identity on normalized collections.
pub fn emit_grid(p: &CellCollection) -> String {
    let hi = p.bounding_interval().hi;
    let (w, h) = (hi.x - 1, hi.y - 1);
    let mut out = String::new();
    for y in (1..=h).rev() {
        for x in 1..=w {
            out.push(if p.has_cell(Cell::at(x, y)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}
