//! Geometry and classification of finite collections of unit cells in the
//! positive quadrant of the integer lattice.
//!
//! All collections are normalized on construction so that the componentwise
//! minimum of the vertex set is `(1,1)`; every derived report uses those
//! normalized coordinates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Lattice point with positive coordinates; `x` is the column, `y` the row.
///
/// The derived `Ord` is row-major (`y` first, then `x`) and is used as the
/// canonical total order everywhere; the componentwise partial order of the
/// lattice is exposed separately through [`Vertex::le`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub x: u32,
    pub y: u32,
}

impl Vertex {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    /// Componentwise partial order of the lattice.
    pub fn le(self, other: Self) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Strict in both coordinates; `[a,b]` is proper iff `a.lt_strict(b)`.
    pub fn lt_strict(self, other: Self) -> bool {
        self.x < other.x && self.y < other.y
    }

    /// `|a| = x + y`, the grading used by the free-vertex recursion.
    pub fn weight(self) -> u32 {
        self.x + self.y
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Axis-aligned interval `[lo, hi]` of lattice points with `lo ≤ hi`
/// componentwise.  Proper when both coordinates strictly increase.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Vertex,
    pub hi: Vertex,
}

impl Interval {
    pub fn new(lo: Vertex, hi: Vertex) -> Result<Self, GridError> {
        if lo.le(hi) {
            Ok(Self { lo, hi })
        } else {
            Err(GridError::NotAnInterval)
        }
    }

    pub fn proper(&self) -> bool {
        self.lo.lt_strict(self.hi)
    }

    /// `size([a,b]) = (k+l) - (i+j)` for `a=(i,j)`, `b=(k,l)`.
    pub fn size(&self) -> u32 {
        self.hi.weight() - self.lo.weight()
    }

    /// Anti-diagonal corners `(hi.x, lo.y)` and `(lo.x, hi.y)` of a proper
    /// interval, lower one first.
    pub fn anti_diagonal(&self) -> (Vertex, Vertex) {
        (Vertex::new(self.hi.x, self.lo.y), Vertex::new(self.lo.x, self.hi.y))
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.lo.le(v) && v.le(self.hi)
    }

    /// All lattice points of the interval in canonical order.
    pub fn points(&self) -> Vec<Vertex> {
        let mut out = Vec::new();
        for y in self.lo.y..=self.hi.y {
            for x in self.lo.x..=self.hi.x {
                out.push(Vertex::new(x, y));
            }
        }
        out
    }

    /// Lower-left corners of the cells of the interval.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for y in self.lo.y..self.hi.y {
            for x in self.lo.x..self.hi.x {
                out.push(Cell::new(Vertex::new(x, y)));
            }
        }
        out
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.lo, self.hi)
    }
}

/// Size of the interval spanned by `a ≤ b`.
pub fn interval_size(a: Vertex, b: Vertex) -> Result<u32, GridError> {
    if !a.le(b) {
        return Err(GridError::NotAnInterval);
    }
    Ok(b.weight() - a.weight())
}

/// Unit cell identified by its lower-left corner.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub lower_left: Vertex,
}

impl Cell {
    pub const fn new(lower_left: Vertex) -> Self {
        Self { lower_left }
    }

    pub const fn at(x: u32, y: u32) -> Self {
        Self { lower_left: Vertex::new(x, y) }
    }

    /// The four corners: lower-left, lower-right, upper-left, upper-right.
    pub fn corners(&self) -> [Vertex; 4] {
        let Vertex { x, y } = self.lower_left;
        [
            Vertex::new(x, y),
            Vertex::new(x + 1, y),
            Vertex::new(x, y + 1),
            Vertex::new(x + 1, y + 1),
        ]
    }

    pub fn edges(&self) -> [Edge; 4] {
        let [a, b, c, d] = self.corners();
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, d), Edge::new(c, d)]
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{:?}", self.lower_left)
    }
}

/// Unordered lattice edge stored with the smaller endpoint first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Self(a, b)
        } else {
            Self(b, a)
        }
    }

    pub fn is_horizontal(&self) -> bool {
        self.0.y == self.1.y
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Horizontal,
    Vertical,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GridError {
    EmptyCollection,
    NotAnInterval,
    UnknownVertex,
    NotAStack,
}

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridError::EmptyCollection => write!(f, "collection of cells is empty"),
            GridError::NotAnInterval => write!(f, "endpoints are not componentwise ordered"),
            GridError::UnknownVertex => write!(f, "vertex does not belong to the collection"),
            GridError::NotAStack => write!(f, "collection is not a stack polyomino"),
        }
    }
}

impl core::error::Error for GridError {}

/// Classification flags of a collection, all derived from the cell set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub row_convex: bool,
    pub column_convex: bool,
    pub convex: bool,
    /// Edge-connected.
    pub polyomino: bool,
    /// Connected when cells touching in a single vertex also count.
    pub weakly_connected: bool,
    /// No holes: every complement cell escapes to the border.
    pub simple: bool,
    /// Row-convex bargraph: bottom-justified columns over one baseline.
    pub stack: bool,
    /// Edge-connected components in canonical order.
    pub components: Vec<CellCollection>,
}

/// Inside and outside corners of the boundary, together with a flag set when
/// the collection is not a stack (the counts are still returned).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerReport {
    pub inside: BTreeSet<Vertex>,
    pub outside: BTreeSet<Vertex>,
    pub not_a_stack: bool,
}

/// Graph on the edge-connected components: `{i,j}` is an edge iff the two
/// components share at least one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentGraph {
    pub components: Vec<CellCollection>,
    pub edges: Vec<(usize, usize)>,
    /// True when the graph has no cycles.
    pub is_tree: bool,
}

/// Normalized finite set of cells with the derived vertex and edge sets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellCollection {
    cells: BTreeSet<Cell>,
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
    bound: Interval,
}

impl fmt::Debug for CellCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellCollection").field("cells", &self.cells).finish()
    }
}

/// Normalizes and derives `V(P)`, `E(P)` and the bounding interval.
pub fn build_collection<I>(cells: I) -> Result<CellCollection, GridError>
where
    I: IntoIterator<Item = Cell>,
{
    CellCollection::new(cells)
}

impl CellCollection {
    pub fn new<I>(cells: I) -> Result<Self, GridError>
    where
        I: IntoIterator<Item = Cell>,
    {
        let raw: BTreeSet<Cell> = cells.into_iter().collect();
        if raw.is_empty() {
            return Err(GridError::EmptyCollection);
        }
        let min_x = raw.iter().map(|c| c.lower_left.x).min().unwrap();
        let min_y = raw.iter().map(|c| c.lower_left.y).min().unwrap();
        let cells: BTreeSet<Cell> = raw
            .into_iter()
            .map(|c| Cell::at(c.lower_left.x - min_x + 1, c.lower_left.y - min_y + 1))
            .collect();
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for cell in &cells {
            vertices.extend(cell.corners());
            edges.extend(cell.edges());
        }
        let hi_x = vertices.iter().map(|v| v.x).max().unwrap();
        let hi_y = vertices.iter().map(|v| v.y).max().unwrap();
        let bound = Interval { lo: Vertex::new(1, 1), hi: Vertex::new(hi_x, hi_y) };
        Ok(Self { cells, vertices, edges, bound })
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_cell(&self, cell: Cell) -> bool {
        self.cells.contains(&cell)
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Smallest interval containing `V(P)`; `lo` is always `(1,1)`.
    pub fn bounding_interval(&self) -> Interval {
        self.bound
    }

    /// Number of cells of `P` containing `v` as a corner (0 to 4).
    pub fn cell_multiplicity(&self, v: Vertex) -> u32 {
        let mut n = 0;
        for lower_left in neighbours_below_left(v) {
            if self.cells.contains(&Cell::new(lower_left)) {
                n += 1;
            }
        }
        n
    }

    /// Partition of `V(P)` into interior vertices (corners of four distinct
    /// cells) and boundary vertices.
    pub fn interior_boundary(&self) -> (BTreeSet<Vertex>, BTreeSet<Vertex>) {
        let mut interior = BTreeSet::new();
        let mut boundary = BTreeSet::new();
        for &v in &self.vertices {
            if self.cell_multiplicity(v) == 4 {
                interior.insert(v);
            } else {
                boundary.insert(v);
            }
        }
        (interior, boundary)
    }

    pub fn is_boundary_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v) && self.cell_multiplicity(v) < 4
    }

    /// All proper intervals whose cells all belong to `P`, in canonical order.
    pub fn inner_intervals(&self) -> Vec<Interval> {
        let hi = self.bound.hi;
        let mut out = Vec::new();
        for ly in 1..hi.y {
            for hy in (ly + 1)..=hi.y {
                for lx in 1..hi.x {
                    for hx in (lx + 1)..=hi.x {
                        let int = Interval {
                            lo: Vertex::new(lx, ly),
                            hi: Vertex::new(hx, hy),
                        };
                        if self.is_inner_interval(&int) {
                            out.push(int);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn is_inner_interval(&self, int: &Interval) -> bool {
        int.proper() && int.cells().iter().all(|c| self.cells.contains(c))
    }

    /// Maximal straight intervals supported on the edges of `E(P)`; every
    /// edge in the given direction lies in exactly one output interval.
    /// Size-1 intervals (single edges) are included.
    pub fn maximal_intervals(&self, dir: Direction) -> Vec<Interval> {
        let mut by_line: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for e in &self.edges {
            match dir {
                Direction::Horizontal if e.is_horizontal() => {
                    by_line.entry(e.0.y).or_default().insert(e.0.x);
                }
                Direction::Vertical if !e.is_horizontal() => {
                    by_line.entry(e.0.x).or_default().insert(e.0.y);
                }
                _ => {}
            }
        }
        let mut out = Vec::new();
        for (line, starts) in &by_line {
            let mut run_start: Option<u32> = None;
            let mut prev = 0;
            for &s in starts {
                match run_start {
                    Some(_) if s == prev + 1 => {}
                    Some(rs) => {
                        out.push(make_interval(dir, *line, rs, prev + 1));
                        run_start = Some(s);
                    }
                    None => run_start = Some(s),
                }
                prev = s;
            }
            if let Some(rs) = run_start {
                out.push(make_interval(dir, *line, rs, prev + 1));
            }
        }
        out.sort();
        out
    }

    /// The maximal interval in the given direction through `v`, if any edge
    /// at `v` runs that way.
    pub fn maximal_interval_through(&self, v: Vertex, dir: Direction) -> Option<Interval> {
        self.maximal_intervals(dir).into_iter().find(|i| i.contains(v))
    }

    /// Vertices that are not the lower-left corner of any cell of `P`.
    pub fn free_vertices(&self) -> BTreeSet<Vertex> {
        let lower_lefts: BTreeSet<Vertex> = self.cells.iter().map(|c| c.lower_left).collect();
        self.vertices.difference(&lower_lefts).copied().collect()
    }

    /// Boundary vertices lying in exactly three (inside) or exactly one
    /// (outside) cell.  Meaningful for stack polyominoes; for other
    /// collections the counts are still returned with a warning flag.
    pub fn corners(&self) -> CornerReport {
        let mut inside = BTreeSet::new();
        let mut outside = BTreeSet::new();
        for &v in &self.vertices {
            match self.cell_multiplicity(v) {
                1 => {
                    outside.insert(v);
                }
                3 => {
                    inside.insert(v);
                }
                _ => {}
            }
        }
        CornerReport { inside, outside, not_a_stack: !self.classify().stack }
    }

    /// Edge-connected components, canonically ordered by smallest cell.
    /// Component cells keep the coordinates of `self` (no re-normalization).
    fn component_cell_sets(&self) -> Vec<BTreeSet<Cell>> {
        let cells: Vec<Cell> = self.cells.iter().copied().collect();
        let index: BTreeMap<Cell, usize> =
            cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut comp = vec![usize::MAX; cells.len()];
        let mut next = 0;
        for start in 0..cells.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(i) = stack.pop() {
                let Vertex { x, y } = cells[i].lower_left;
                let mut neighbours = Vec::new();
                neighbours.push(Vertex::new(x + 1, y));
                neighbours.push(Vertex::new(x, y + 1));
                if x > 1 {
                    neighbours.push(Vertex::new(x - 1, y));
                }
                if y > 1 {
                    neighbours.push(Vertex::new(x, y - 1));
                }
                for n in neighbours {
                    if let Some(&j) = index.get(&Cell::new(n)) {
                        if comp[j] == usize::MAX {
                            comp[j] = next;
                            stack.push(j);
                        }
                    }
                }
            }
            next += 1;
        }
        let mut sets = vec![BTreeSet::new(); next];
        for (i, c) in cells.iter().enumerate() {
            sets[comp[i]].insert(*c);
        }
        sets
    }

    /// Graph over the edge-connected components; `is_tree` is the acyclicity
    /// check of that graph.
    pub fn component_graph(&self) -> ComponentGraph {
        let sets = self.component_cell_sets();
        let vsets: Vec<BTreeSet<Vertex>> = sets
            .iter()
            .map(|s| s.iter().flat_map(|c| c.corners()).collect())
            .collect();
        let mut edges = Vec::new();
        for i in 0..sets.len() {
            for j in (i + 1)..sets.len() {
                if vsets[i].intersection(&vsets[j]).next().is_some() {
                    edges.push((i, j));
                }
            }
        }
        // acyclic iff every connected piece of the graph has |E| = |V| - 1
        let n = sets.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut is_tree = true;
        for &(i, j) in &edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                is_tree = false;
                break;
            }
            parent[ri] = rj;
        }
        let components = sets
            .into_iter()
            .map(|s| CellCollection::new_unnormalized(s))
            .collect();
        ComponentGraph { components, edges, is_tree }
    }

    /// Builds a sub-collection without shifting coordinates, so component
    /// vertices stay comparable with the parent collection.
    fn new_unnormalized(cells: BTreeSet<Cell>) -> CellCollection {
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for cell in &cells {
            vertices.extend(cell.corners());
            edges.extend(cell.edges());
        }
        let lo_x = vertices.iter().map(|v| v.x).min().unwrap();
        let lo_y = vertices.iter().map(|v| v.y).min().unwrap();
        let hi_x = vertices.iter().map(|v| v.x).max().unwrap();
        let hi_y = vertices.iter().map(|v| v.y).max().unwrap();
        let bound = Interval {
            lo: Vertex::new(lo_x, lo_y),
            hi: Vertex::new(hi_x, hi_y),
        };
        CellCollection { cells, vertices, edges, bound }
    }

    pub fn classify(&self) -> ClassificationReport {
        let mut rows: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        let mut cols: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for c in &self.cells {
            rows.entry(c.lower_left.y).or_default().insert(c.lower_left.x);
            cols.entry(c.lower_left.x).or_default().insert(c.lower_left.y);
        }
        let contiguous = |s: &BTreeSet<u32>| {
            let lo = *s.iter().next().unwrap();
            let hi = *s.iter().last().unwrap();
            (hi - lo + 1) as usize == s.len()
        };
        let row_convex = rows.values().all(contiguous);
        let column_convex = cols.values().all(contiguous);
        let convex = row_convex && column_convex;

        let components = self.component_cell_sets();
        let polyomino = components.len() == 1;
        let weakly_connected = self.is_weakly_connected();
        let simple = self.is_simple();
        // bottom-justified columns (every column starts at row 1) plus row
        // convexity characterize the row-convex bargraphs
        let stack = row_convex
            && cols.values().all(|s| *s.iter().next().unwrap() == 1 && contiguous(s));

        ClassificationReport {
            row_convex,
            column_convex,
            convex,
            polyomino,
            weakly_connected,
            simple,
            stack,
            components: components
                .into_iter()
                .map(CellCollection::new_unnormalized)
                .collect(),
        }
    }

    fn is_weakly_connected(&self) -> bool {
        let cells: Vec<Cell> = self.cells.iter().copied().collect();
        let index: BTreeMap<Cell, usize> =
            cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut seen = vec![false; cells.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = stack.pop() {
            let Vertex { x, y } = cells[i].lower_left;
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    let (nx, ny) = (x as i64 + dx, y as i64 + dy);
                    if nx < 1 || ny < 1 || (dx == 0 && dy == 0) {
                        continue;
                    }
                    let n = Cell::at(nx as u32, ny as u32);
                    if let Some(&j) = index.get(&n) {
                        if !seen[j] {
                            seen[j] = true;
                            count += 1;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        count == cells.len()
    }

    /// Flood fill of complement cells over a bounding box enlarged by one on
    /// all sides; simple iff every complement cell reaches the border ring.
    fn is_simple(&self) -> bool {
        let hi = self.bound.hi;
        // cell grid coordinates 0..=hi.x, 0..=hi.y (enlarged by one cell ring)
        let w = (hi.x + 1) as usize;
        let h = (hi.y + 1) as usize;
        let idx = |x: usize, y: usize| y * w + x;
        let mut in_p = vec![false; w * h];
        for c in &self.cells {
            in_p[idx(c.lower_left.x as usize, c.lower_left.y as usize)] = true;
        }
        let mut reach = vec![false; w * h];
        let mut stack = Vec::new();
        for x in 0..w {
            for y in 0..h {
                if (x == 0 || y == 0 || x == w - 1 || y == h - 1) && !in_p[idx(x, y)] {
                    reach[idx(x, y)] = true;
                    stack.push((x, y));
                }
            }
        }
        while let Some((x, y)) = stack.pop() {
            let push = |nx: usize, ny: usize, reach: &mut Vec<bool>, stack: &mut Vec<(usize, usize)>| {
                let i = idx(nx, ny);
                if !in_p[i] && !reach[i] {
                    reach[i] = true;
                    stack.push((nx, ny));
                }
            };
            if x > 0 {
                push(x - 1, y, &mut reach, &mut stack);
            }
            if y > 0 {
                push(x, y - 1, &mut reach, &mut stack);
            }
            if x + 1 < w {
                push(x + 1, y, &mut reach, &mut stack);
            }
            if y + 1 < h {
                push(x, y + 1, &mut reach, &mut stack);
            }
        }
        (0..w * h).all(|i| in_p[i] || reach[i])
    }

    /// Vertical projection of `a` onto the bottom interval of a stack.
    pub fn pi(&self, a: Vertex) -> Result<Vertex, GridError> {
        if !self.classify().stack {
            return Err(GridError::NotAStack);
        }
        if !self.vertices.contains(&a) {
            return Err(GridError::UnknownVertex);
        }
        Ok(Vertex::new(a.x, 1))
    }

    /// Translates all cells by `(dx, dy)`; useful for invariance tests.
    pub fn translated(&self, dx: u32, dy: u32) -> CellCollection {
        CellCollection::new(
            self.cells
                .iter()
                .map(|c| Cell::at(c.lower_left.x + dx, c.lower_left.y + dy)),
        )
        .expect("translation preserves non-emptiness")
    }
}

fn make_interval(dir: Direction, line: u32, start: u32, end: u32) -> Interval {
    match dir {
        Direction::Horizontal => Interval {
            lo: Vertex::new(start, line),
            hi: Vertex::new(end, line),
        },
        Direction::Vertical => Interval {
            lo: Vertex::new(line, start),
            hi: Vertex::new(line, end),
        },
    }
}

/// Lower-left corners of the up-to-four cells having `v` as a corner.
fn neighbours_below_left(v: Vertex) -> Vec<Vertex> {
    let mut out = Vec::new();
    for dx in 0..2u32 {
        for dy in 0..2u32 {
            if v.x > dx && v.y > dy {
                out.push(Vertex::new(v.x - dx, v.y - dy));
            }
        }
    }
    out
}
