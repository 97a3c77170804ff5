//! File formats, built-in fixtures, commands and reports around the
//! cell-collection algebra in `polycell-core`.

pub mod commands;
pub mod corpus;
pub mod gridfile;
pub mod labelfile;
pub mod report;
pub mod survey;

pub use gridfile::{emit_grid, parse_grid, parse_grid_top_down, GridFileError};
