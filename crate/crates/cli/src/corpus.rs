//! Built-in named shapes and deterministic generators of small collections
//! used by the survey command and the acceptance suite.

use polycell_core::grid::{Cell, CellCollection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

fn shape(cells: &[(u32, u32)]) -> CellCollection {
    CellCollection::new(cells.iter().map(|&(x, y)| Cell::at(x, y))).expect("nonempty fixture")
}

/// Names of the built-in fixtures, in canonical order.
pub const FIXTURE_NAMES: &[&str] = &[
    "cell1",
    "domino_h",
    "cross",
    "bridge",
    "windmill",
    "ring8",
    "fig17",
    "fig21",
    "fig22",
    "staircase4",
    "staircase5",
];

/// Looks up a built-in shape by name.
pub fn fixture(name: &str) -> Option<CellCollection> {
    let p = match name {
        "cell1" => shape(&[(1, 1)]),
        "domino_h" => shape(&[(1, 1), (2, 1)]),
        "cross" => shape(&[(2, 1), (1, 2), (2, 2), (3, 2), (2, 3)]),
        "bridge" => shape(&[(1, 1), (2, 1), (3, 1), (1, 2), (3, 2)]),
        "windmill" => shape(&[(2, 1), (1, 2), (3, 2), (2, 3)]),
        "ring8" => shape(&[
            (1, 1), (2, 1), (3, 1),
            (1, 2), (3, 2),
            (1, 3), (2, 3), (3, 3),
        ]),
        "fig17" => shape(&[(1, 1), (2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (3, 3)]),
        "fig21" => shape(&[
            (1, 1), (2, 1), (3, 1), (4, 1), (5, 1),
            (2, 2), (3, 2), (4, 2), (5, 2),
            (4, 3), (5, 3),
            (4, 4),
        ]),
        "fig22" => shape(&[
            (1, 1), (2, 1), (3, 1), (4, 1),
            (2, 2), (3, 2),
            (2, 3), (3, 3),
            (2, 4),
        ]),
        "staircase4" => shape(&[
            (1, 1), (2, 1), (3, 1), (4, 1),
            (1, 2), (2, 2), (3, 2),
            (1, 3), (2, 3),
            (2, 4),
        ]),
        "staircase5" => shape(&[
            (1, 1), (2, 1), (3, 1), (4, 1), (5, 1),
            (2, 2), (3, 2), (4, 2),
            (2, 3), (3, 3),
            (3, 4),
        ]),
        _ => return None,
    };
    Some(p)
}

/// All fixtures with their names.
pub fn all_fixtures() -> Vec<(&'static str, CellCollection)> {
    FIXTURE_NAMES
        .iter()
        .map(|&n| (n, fixture(n).expect("known name")))
        .collect()
}

/// Every nonempty normalized collection from subsets of a `w x h` cell box.
pub fn enumerate_box(w: u32, h: u32) -> Vec<CellCollection> {
    let cells: Vec<Cell> = (1..=w)
        .flat_map(|x| (1..=h).map(move |y| Cell::at(x, y)))
        .collect();
    assert!(cells.len() <= 20, "box too large to enumerate");
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 1u32..(1 << cells.len()) {
        let subset = cells
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &c)| c);
        let p = CellCollection::new(subset).expect("nonempty");
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// All stack polyominoes with at most `max_w` columns of height at most
/// `max_h` (unimodal height functions).
pub fn enumerate_stacks(max_w: u32, max_h: u32) -> Vec<CellCollection> {
    let mut out = Vec::new();
    for w in 1..=max_w as usize {
        let mut heights = vec![1u32; w];
        'outer: loop {
            let peak = heights
                .iter()
                .enumerate()
                .max_by_key(|&(i, h)| (*h, i))
                .unwrap()
                .0;
            let unimodal = heights[..peak].windows(2).all(|p| p[0] <= p[1])
                && heights[peak..].windows(2).all(|p| p[0] >= p[1]);
            if unimodal {
                let cells = heights.iter().enumerate().flat_map(|(i, &hh)| {
                    (1..=hh).map(move |y| Cell::at(i as u32 + 1, y))
                });
                out.push(CellCollection::new(cells).expect("nonempty"));
            }
            let mut i = 0;
            loop {
                if i == heights.len() {
                    break 'outer;
                }
                heights[i] += 1;
                if heights[i] > max_h {
                    heights[i] = 1;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
    out
}

/// Canonical representative of a collection under the eight symmetries of
/// the square (rotations, reflections, transposition), used by the survey
/// deduplication.
pub fn symmetry_canonical(p: &CellCollection) -> CellCollection {
    let hi = p.bounding_interval().hi;
    let (w, h) = (hi.x, hi.y);
    let transforms: [fn((u32, u32), (u32, u32)) -> (u32, u32); 8] = [
        |(x, y), _| (x, y),
        |(x, y), (w, _)| (w - x, y),
        |(x, y), (_, h)| (x, h - y),
        |(x, y), (w, h)| (w - x, h - y),
        |(x, y), _| (y, x),
        |(x, y), (w, _)| (y, w - x),
        |(x, y), (_, h)| (h - y, x),
        |(x, y), (w, h)| (h - y, w - x),
    ];
    transforms
        .iter()
        .map(|t| {
            CellCollection::new(p.cells().map(|c| {
                let (x, y) = t((c.lower_left.x, c.lower_left.y), (w, h));
                Cell::at(x, y)
            }))
            .expect("nonempty")
        })
        .min()
        .expect("eight transforms")
}

/// Deterministic sampler over a fixed family.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn pick<'a, T>(&mut self, family: &'a [T]) -> &'a T {
        &family[self.rng.gen_range(0..family.len())]
    }

    pub fn coefficient(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }
}
