//! Builders for the three nested ideals of a collection of cells and the
//! admissible-labeling calculus.
//!
//! * `inner_minors` — the ideal generated by the inner 2-minors.
//! * `cycle_binomials` — the even-cycle binomials of the bipartite row/column
//!   graph; they generate the toric edge ideal and form its universal
//!   Gröbner basis.
//! * `compute_l` — the lattice ideal obtained by saturating the cell-minor
//!   (lattice basis) ideal by all variables; equals the kernel of the
//!   recursive Laurent-monomial map on free vertices.
//!
//! The three always satisfy `inner ⊆ lattice ⊆ cycle`; `chain_compare`
//! decides which inclusions are strict and exhibits witnesses.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    buchberger, interval_minor, reduce, try_saturate_all, BinomialOrZero, Cancelled,
    GeneratorSet, GroebnerBasis, Monomial, MonomialOrder,
};
use crate::cancel::{CancelToken, NEVER};
use crate::grid::{CellCollection, Direction, Interval, Vertex};
use crate::intmat;

/// Integer vector over the vertices; doubles as a labeling of `V(P)` and as
/// a lattice vector (absent entries are zero).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Labeling {
    entries: BTreeMap<Vertex, i64>,
}

pub use Labeling as LatticeVector;

impl Labeling {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries<I>(entries: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, i64)>,
    {
        let mut l = Self::zero();
        for (v, k) in entries {
            l.add(v, k);
        }
        l
    }

    pub fn get(&self, v: Vertex) -> i64 {
        self.entries.get(&v).copied().unwrap_or(0)
    }

    pub fn add(&mut self, v: Vertex, k: i64) {
        let e = self.entries.entry(v).or_insert(0);
        *e += k;
        if *e == 0 {
            self.entries.remove(&v);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.entries.iter().map(|(&v, &k)| (v, k))
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.entries.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn l1_norm(&self) -> i64 {
        self.entries.values().map(|k| k.abs()).sum()
    }

    pub fn add_scaled(&self, other: &Labeling, k: i64) -> Labeling {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            out.add(v, k * e);
        }
        out
    }

    /// Sum of the labels over the lattice points of an interval.
    pub fn interval_sum(&self, int: &Interval) -> i64 {
        int.points().iter().map(|&p| self.get(p)).sum()
    }

    /// Dense coordinates in the given vertex order.
    pub fn to_dense(&self, vertices: &[Vertex]) -> Vec<i64> {
        vertices.iter().map(|&v| self.get(v)).collect()
    }

    pub fn from_dense(vertices: &[Vertex], coords: &[i64]) -> Self {
        Self::from_entries(vertices.iter().copied().zip(coords.iter().copied()))
    }

    /// The binomial `∏_{α>0} x^α - ∏_{α<0} x^{-α}` attached to a labeling.
    pub fn to_binomial(&self) -> BinomialOrZero {
        let plus = Monomial::from_powers(
            self.iter().filter(|&(_, k)| k > 0).map(|(v, k)| {
                (crate::algebra::Var::Vertex(v), k as u32)
            }),
        );
        let minus = Monomial::from_powers(
            self.iter().filter(|&(_, k)| k < 0).map(|(v, k)| {
                (crate::algebra::Var::Vertex(v), (-k) as u32)
            }),
        );
        BinomialOrZero::difference(plus, minus)
    }
}

impl fmt::Debug for Labeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

/// Laurent monomial in the free-vertex variables; exponents may be negative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct LaurentMonomial {
    exponents: BTreeMap<Vertex, i64>,
}

impl LaurentMonomial {
    pub fn generator(v: Vertex) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(v, 1);
        Self { exponents }
    }

    pub fn exponent(&self, v: Vertex) -> i64 {
        self.exponents.get(&v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, i64)> + '_ {
        self.exponents.iter().map(|(&v, &k)| (v, k))
    }

    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.exponents.keys().copied()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, k) in other.iter() {
            let e = out.exponents.entry(v).or_insert(0);
            *e += k;
            if *e == 0 {
                out.exponents.remove(&v);
            }
        }
        out
    }

    pub fn inverse(&self) -> Self {
        Self {
            exponents: self.exponents.iter().map(|(&v, &k)| (v, -k)).collect(),
        }
    }

    /// Raises an ordinary monomial through a vertex→Laurent assignment.
    pub fn image_of(m: &Monomial, images: &BTreeMap<Vertex, LaurentMonomial>) -> Self {
        let mut out = Self::default();
        for (var, e) in m.vars() {
            let crate::algebra::Var::Vertex(v) = var else {
                panic!("auxiliary variable has no Laurent image")
            };
            let base = images.get(&v).expect("vertex outside the collection");
            for _ in 0..e {
                out = out.mul(base);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, k)) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "y{v}")?;
            if *k != 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConstructionsError {
    UnknownVertex,
    NotAdmissible,
}

impl fmt::Display for ConstructionsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionsError::UnknownVertex => {
                write!(f, "labeling supported outside the vertex set")
            }
            ConstructionsError::NotAdmissible => write!(f, "labeling is not admissible"),
        }
    }
}

impl core::error::Error for ConstructionsError {}

/// Generators of the inner-2-minor ideal, one per inner interval.
pub fn inner_minors(p: &CellCollection) -> GeneratorSet {
    p.inner_intervals().iter().map(interval_minor).collect()
}

/// Minors of the single cells only: the lattice basis ideal.
pub fn cell_minors(p: &CellCollection) -> GeneratorSet {
    p.cells()
        .map(|c| {
            let lo = c.lower_left;
            interval_minor(&Interval {
                lo,
                hi: Vertex::new(lo.x + 1, lo.y + 1),
            })
        })
        .collect()
}

/// Binomials of all simple even cycles of the bipartite graph with one
/// column vertex per `x` value, one row vertex per `y` value and an edge per
/// element of `V(P)`.  The output generates the toric edge ideal and is its
/// universal Gröbner basis; cycles are deduplicated by fixing the smallest
/// column as the start and orienting toward the smaller first row.
pub fn cycle_binomials(p: &CellCollection) -> GeneratorSet {
    try_cycle_binomials(p, &NEVER).expect("never cancelled")
}

pub fn try_cycle_binomials(
    p: &CellCollection,
    cancel: &CancelToken,
) -> Result<GeneratorSet, Cancelled> {
    let vertex_set: BTreeSet<Vertex> = p.vertices().collect();
    let mut rows_of_col: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for v in &vertex_set {
        rows_of_col.entry(v.x).or_default().push(v.y);
    }
    let cols: Vec<u32> = rows_of_col.keys().copied().collect();
    let mut out: Vec<BinomialOrZero> = Vec::new();

    // walk states: the alternating path c_1, r_1, c_2, ..., currently at a
    // column, remembering the first row so the closing edge can be checked
    struct Walk<'a> {
        vertex_set: &'a BTreeSet<Vertex>,
        rows_of_col: &'a BTreeMap<u32, Vec<u32>>,
        start_col: u32,
        used_cols: BTreeSet<u32>,
        used_rows: BTreeSet<u32>,
        path: Vec<(u32, u32)>, // (column, row picked at that column)
        out: Vec<BinomialOrZero>,
    }

    impl Walk<'_> {
        fn extend(&mut self, at_col: u32, cancel: &CancelToken) -> Result<(), Cancelled> {
            if cancel.is_cancelled() {
                return Err(Cancelled);
            }
            let rows = self.rows_of_col.get(&at_col).cloned().unwrap_or_default();
            for r in rows {
                if self.used_rows.contains(&r) {
                    continue;
                }
                // close the cycle back to the start column
                if !self.path.is_empty()
                    && self.vertex_set.contains(&Vertex::new(self.start_col, r))
                    && self.path[0].1 < r
                {
                    let mut cycle = self.path.clone();
                    cycle.push((at_col, r));
                    self.out.push(cycle_to_binomial(&cycle));
                }
                // or continue to a further column
                for (&c2, _) in self.rows_of_col.iter() {
                    if c2 <= self.start_col || self.used_cols.contains(&c2) {
                        continue;
                    }
                    if !self.vertex_set.contains(&Vertex::new(c2, r)) {
                        continue;
                    }
                    self.path.push((at_col, r));
                    self.used_cols.insert(c2);
                    self.used_rows.insert(r);
                    self.extend(c2, cancel)?;
                    self.used_rows.remove(&r);
                    self.used_cols.remove(&c2);
                    self.path.pop();
                }
            }
            Ok(())
        }
    }

    for &c1 in &cols {
        let mut walk = Walk {
            vertex_set: &vertex_set,
            rows_of_col: &rows_of_col,
            start_col: c1,
            used_cols: [c1].into_iter().collect(),
            used_rows: BTreeSet::new(),
            path: Vec::new(),
            out: Vec::new(),
        };
        walk.extend(c1, cancel)?;
        out.extend(walk.out);
    }
    Ok(GeneratorSet::new(out))
}

/// `∏ x_(c_k, r_k) - ∏ x_(c_{k+1}, r_k)` for the closed walk given as
/// (column, row-taken-there) pairs.
fn cycle_to_binomial(cycle: &[(u32, u32)]) -> BinomialOrZero {
    let k = cycle.len();
    let plus = Monomial::from_vertices(
        cycle.iter().map(|&(c, r)| Vertex::new(c, r)),
    );
    let minus = Monomial::from_vertices(
        (0..k).map(|i| Vertex::new(cycle[(i + 1) % k].0, cycle[i].1)),
    );
    BinomialOrZero::difference(plus, minus)
}

/// The recursive Laurent images `u_a` over the free vertices: `u_a = y_a`
/// for free `a`, and `u_a = u_b u_c u_d^{-1}` when `a` is the lower-left
/// corner of the cell with remaining corners `b`, `c`, `d`.
pub fn toric_monomials(p: &CellCollection) -> BTreeMap<Vertex, LaurentMonomial> {
    let free = p.free_vertices();
    let mut by_weight: Vec<Vertex> = p.vertices().collect();
    by_weight.sort_by(|a, b| b.weight().cmp(&a.weight()).then(a.cmp(b)));
    let mut images: BTreeMap<Vertex, LaurentMonomial> = BTreeMap::new();
    for a in by_weight {
        if free.contains(&a) {
            images.insert(a, LaurentMonomial::generator(a));
        } else {
            let b = Vertex::new(a.x + 1, a.y);
            let c = Vertex::new(a.x, a.y + 1);
            let d = Vertex::new(a.x + 1, a.y + 1);
            let u = images[&b].mul(&images[&c]).mul(&images[&d].inverse());
            images.insert(a, u);
        }
    }
    images
}

/// One lattice vector per cell: `+1` on the diagonal corners, `-1` on the
/// anti-diagonal corners.
pub fn lattice_basis(p: &CellCollection) -> Vec<LatticeVector> {
    p.cells()
        .map(|cell| {
            let [a, b, c, d] = cell.corners();
            // corners() yields lower-left, lower-right, upper-left, upper-right
            Labeling::from_entries([(a, 1), (d, 1), (b, -1), (c, -1)])
        })
        .collect()
}

/// Generators of the lattice ideal: the cell-minor ideal saturated by every
/// variable.  The output is a reduced Gröbner basis for the given order.
pub fn compute_l(p: &CellCollection, order: &MonomialOrder) -> GeneratorSet {
    try_compute_l(p, order, &NEVER).expect("never cancelled")
}

pub fn try_compute_l(
    p: &CellCollection,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GeneratorSet, Cancelled> {
    try_saturate_all(&cell_minors(p), p, order, cancel)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainCase {
    /// `I = L ⊊ J`
    Case1,
    /// `I ⊊ L ⊊ J`
    Case2,
    /// `L = J`
    Case3,
}

impl ChainCase {
    pub fn index(self) -> u8 {
        match self {
            ChainCase::Case1 => 1,
            ChainCase::Case2 => 2,
            ChainCase::Case3 => 3,
        }
    }
}

/// Outcome of comparing the chain `I ⊆ L ⊆ J` for one collection.
#[derive(Clone, Debug)]
pub struct ChainReport {
    pub i_eq_l: bool,
    pub l_eq_j: bool,
    pub case: ChainCase,
    /// First generator of `L` (canonical order) outside `I`, when `I ⊊ L`.
    pub witness_l_not_i: Option<BinomialOrZero>,
    /// First generator of `J` (canonical order) outside `L`, when `L ⊊ J`.
    pub witness_j_not_l: Option<BinomialOrZero>,
}

impl ChainReport {
    pub fn witnesses(&self) -> Vec<BinomialOrZero> {
        self.witness_l_not_i
            .iter()
            .chain(self.witness_j_not_l.iter())
            .cloned()
            .collect()
    }
}

/// Computes the three ideals and reports which inclusions are strict.
pub fn chain_compare(p: &CellCollection) -> ChainReport {
    try_chain_compare(p, &NEVER).expect("never cancelled")
}

pub fn try_chain_compare(
    p: &CellCollection,
    cancel: &CancelToken,
) -> Result<ChainReport, Cancelled> {
    let order = MonomialOrder::lex1(p);
    let inner = inner_minors(p);
    let lattice = try_compute_l(p, &order, cancel)?;
    let cycles = try_cycle_binomials(p, cancel)?;

    let gb_inner = buchberger(&inner, &order);
    // the saturation output is already a reduced basis for `order`
    let gb_lattice = GroebnerBasis::from_known_basis(&lattice, &order);
    // cycle binomials are a universal Gröbner basis of the edge ideal
    let gb_cycles = GroebnerBasis::from_known_basis(&cycles, &order);
    debug_assert!(gb_lattice.contains_all(&inner), "chain I ⊆ L violated");
    debug_assert!(gb_cycles.contains_all(&lattice), "chain L ⊆ J violated");

    let witness_l_not_i = lattice
        .elements()
        .iter()
        .find(|g| !gb_inner.contains(g))
        .cloned();
    let witness_j_not_l = cycles
        .elements()
        .iter()
        .find(|g| !gb_lattice.contains(g))
        .cloned();
    let i_eq_l = witness_l_not_i.is_none();
    let l_eq_j = witness_j_not_l.is_none();
    let case = match (i_eq_l, l_eq_j) {
        (_, true) => ChainCase::Case3,
        (true, false) => ChainCase::Case1,
        (false, false) => ChainCase::Case2,
    };
    Ok(ChainReport { i_eq_l, l_eq_j, case, witness_l_not_i, witness_j_not_l })
}

/// `I_P` is prime iff it equals the lattice ideal.
pub fn is_prime(p: &CellCollection) -> bool {
    let order = MonomialOrder::lex1(p);
    let inner = inner_minors(p);
    let lattice = compute_l(p, &order);
    let gb_inner = buchberger(&inner, &order);
    let gb_lattice = GroebnerBasis::from_known_basis(&lattice, &order);
    gb_inner.contains_all(&lattice) && gb_lattice.contains_all(&inner)
}

/// All maximal horizontal and vertical intervals of the collection.
pub fn maximal_intervals_both(p: &CellCollection) -> Vec<Interval> {
    let mut out = p.maximal_intervals(Direction::Horizontal);
    out.extend(p.maximal_intervals(Direction::Vertical));
    out
}

/// True iff every maximal horizontal and vertical interval has label sum 0.
pub fn admissible_check(
    p: &CellCollection,
    alpha: &Labeling,
) -> Result<bool, ConstructionsError> {
    for v in alpha.support() {
        if !p.has_vertex(v) {
            return Err(ConstructionsError::UnknownVertex);
        }
    }
    Ok(maximal_intervals_both(p)
        .iter()
        .all(|int| alpha.interval_sum(int) == 0))
}

/// Integer basis of the kernel of the maximal-interval constraint matrix:
/// the group of all admissible labelings.
pub fn labeling_kernel(p: &CellCollection) -> Vec<LatticeVector> {
    let vertices: Vec<Vertex> = p.vertices().collect();
    let intervals = maximal_intervals_both(p);
    let mat: intmat::Mat = intervals
        .iter()
        .map(|int| {
            vertices
                .iter()
                .map(|&v| if int.contains(v) { 1 } else { 0 })
                .collect()
        })
        .collect();
    intmat::kernel(&mat, vertices.len())
        .into_iter()
        .map(|coords| Labeling::from_dense(&vertices, &coords))
        .collect()
}

/// All labelings reachable from an admissible `alpha` by one single move:
/// for an inner interval with diagonal corners `a,b` and anti-diagonal
/// corners `c,d` and the `±1` pattern `β` (plus on `a,b`, minus on `c,d`),
/// the move subtracts `β` when `α(a)α(b) > 0` (sign of `α(a)`) and adds `β`
/// when `α(c)α(d) > 0` (sign of `α(c)`).
pub fn single_moves(
    p: &CellCollection,
    alpha: &Labeling,
) -> Result<Vec<Labeling>, ConstructionsError> {
    if !admissible_check(p, alpha)? {
        return Err(ConstructionsError::NotAdmissible);
    }
    let mut out: BTreeSet<Labeling> = BTreeSet::new();
    for int in p.inner_intervals() {
        let (a, b) = (int.lo, int.hi);
        let (c, d) = int.anti_diagonal();
        let beta = Labeling::from_entries([(a, 1), (b, 1), (c, -1), (d, -1)]);
        if alpha.get(a) * alpha.get(b) > 0 {
            let sign = alpha.get(a).signum();
            out.insert(alpha.add_scaled(&beta, -sign));
        }
        if alpha.get(c) * alpha.get(d) > 0 {
            let sign = alpha.get(c).signum();
            out.insert(alpha.add_scaled(&beta, sign));
        }
    }
    Ok(out.into_iter().collect())
}

/// Result of the move-reduction semi-decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// A move sequence reaching the zero labeling, start included.
    ReducedToZero { trace: Vec<Labeling> },
    /// The forward move graph was exhausted without reaching zero; the
    /// witness is the smallest labeling found (the start itself when no
    /// moves exist at all).
    Stuck { witness: Labeling },
    /// The state budget ran out before the search settled.
    BudgetExhausted,
}

/// Tries to reduce an admissible labeling to zero by single moves: first a
/// greedy descent on the 1-norm, then breadth-first search over the move
/// graph bounded by `budget` visited states.
pub fn reduce_labeling(
    p: &CellCollection,
    alpha: &Labeling,
    budget: usize,
) -> Result<Reduction, ConstructionsError> {
    if !admissible_check(p, alpha)? {
        return Err(ConstructionsError::NotAdmissible);
    }
    // greedy phase: strictly decrease the 1-norm while possible
    let mut trace = vec![alpha.clone()];
    let mut current = alpha.clone();
    loop {
        if current.is_zero() {
            return Ok(Reduction::ReducedToZero { trace });
        }
        let moves = single_moves(p, &current)?;
        let best = moves
            .into_iter()
            .filter(|m| m.l1_norm() < current.l1_norm())
            .min_by_key(|m| (m.l1_norm(), m.clone()));
        match best {
            Some(next) => {
                trace.push(next.clone());
                current = next;
            }
            None => break,
        }
    }
    // breadth-first fallback from the original labeling
    let mut parent: BTreeMap<Labeling, Labeling> = BTreeMap::new();
    let mut visited: BTreeSet<Labeling> = [alpha.clone()].into_iter().collect();
    let mut frontier: Vec<Labeling> = vec![alpha.clone()];
    while !frontier.is_empty() {
        let mut next_frontier = Vec::new();
        for state in frontier {
            for m in single_moves(p, &state)? {
                if visited.contains(&m) {
                    continue;
                }
                if visited.len() >= budget {
                    return Ok(Reduction::BudgetExhausted);
                }
                visited.insert(m.clone());
                parent.insert(m.clone(), state.clone());
                if m.is_zero() {
                    let mut path = vec![m.clone()];
                    let mut cur = m;
                    while let Some(prev) = parent.get(&cur) {
                        path.push(prev.clone());
                        cur = prev.clone();
                    }
                    path.reverse();
                    return Ok(Reduction::ReducedToZero { trace: path });
                }
                next_frontier.push(m);
            }
        }
        frontier = next_frontier;
    }
    let witness = visited
        .iter()
        .min_by_key(|l| (l.l1_norm(), (*l).clone()))
        .cloned()
        .unwrap_or_else(|| alpha.clone());
    Ok(Reduction::Stuck { witness })
}

/// Every inner-minor generator reduces to zero against the lattice ideal and
/// every lattice generator against the cycle ideal.
pub fn chain_containment_holds(p: &CellCollection) -> bool {
    let order = MonomialOrder::lex1(p);
    let inner = inner_minors(p);
    let lattice = compute_l(p, &order);
    let cycles = cycle_binomials(p);
    let gb_lattice = GroebnerBasis::from_known_basis(&lattice, &order);
    let gb_cycles = GroebnerBasis::from_known_basis(&cycles, &order);
    inner
        .elements()
        .iter()
        .all(|g| reduce(g, gb_lattice.elements(), &order).is_zero())
        && lattice
            .elements()
            .iter()
            .all(|g| reduce(g, gb_cycles.elements(), &order).is_zero())
}
