//! Stack-polyomino analysis: the distinguished maximal vertical interval,
//! quadratic Gröbner-basis criteria, the squarefree basis of `(I_P, x_c)`,
//! its minimal primes, and the class group with canonical class and
//! Gorenstein test.
//!
//! A stack polyomino is a row-convex bargraph.  Fixing a vertical interval
//! `[c,d]` of maximal size, the analysis attaches to it the elements
//! `e_1 < … < e_s` of `[c,d]` whose maximal horizontal interval contains an
//! inside corner, the interval sizes `m_j` and the gap sizes `n_j`; the
//! class group is free of rank `s+1` and the canonical class has
//! coordinates `μ_j = m_j - Σ_{i≥j} n_i`, so the ring is Gorenstein exactly
//! when all `μ_j` vanish.  The h-vector palindromicity oracle cross-checks
//! every verdict.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    buchberger, BinomialOrZero, GeneratorSet, GroebnerBasis, Monomial, MonomialOrder, OrderKind,
};
use crate::constructions::inner_minors;
use crate::grid::{CellCollection, Direction, Interval, Vertex};
use crate::hilbert::h_symmetry;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StackError {
    NotAStack,
    /// The canonical-class formula and the h-vector symmetry oracle
    /// disagree; surfaced instead of swallowed.
    OracleDisagreement,
}

impl fmt::Display for StackError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackError::NotAStack => write!(f, "collection is not a stack polyomino"),
            StackError::OracleDisagreement => {
                write!(f, "canonical-class formula contradicts the h-vector oracle")
            }
        }
    }
}

impl core::error::Error for StackError {}

/// Combinatorial skeleton of a stack polyomino for a fixed `[c,d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackFrame {
    /// Bottom interval `B_P` (the full bottom row).
    pub bottom: Interval,
    /// The chosen maximal-size vertical interval; `c` is its lower end.
    pub cd: Interval,
    /// `c = e_0 < e_1 < … < e_s < e_{s+1} = d`.
    pub e_list: Vec<Vertex>,
    /// `m_0 … m_s`; `m_0` is the bottom size, `m_j` the size of `[g_j,h_j]`
    /// (the convention `m_{s+1} = 0` is left implicit).
    pub m: Vec<i64>,
    /// Gap sizes `n_j = size [e_j, e_{j+1}]` for `j = 0 … s`.
    pub n: Vec<i64>,
    /// The intervals `[g_j, h_j]` behind the `m_j` (`g_0,h_0` = bottom).
    pub g_h: Vec<Interval>,
    /// Sizes of the maximal horizontal intervals through the `e_j`; the
    /// paper's wording admits this alternative reading of `m_j`, recorded
    /// for inspection.
    pub m_from_maximal: Vec<i64>,
}

impl StackFrame {
    pub fn s(&self) -> usize {
        self.e_list.len() - 2
    }

    pub fn c(&self) -> Vertex {
        self.cd.lo
    }
}

/// All maximal vertical intervals of maximal size, leftmost first.
pub fn cd_candidates(p: &CellCollection) -> Result<Vec<Interval>, StackError> {
    if !p.classify().stack {
        return Err(StackError::NotAStack);
    }
    let verticals = p.maximal_intervals(Direction::Vertical);
    let best = verticals.iter().map(Interval::size).max().expect("nonempty");
    Ok(verticals.into_iter().filter(|i| i.size() == best).collect())
}

/// Frame for the default choice of `[c,d]`: the rightmost maximal-size
/// vertical interval, which reproduces the reference figures.
pub fn stack_frame(p: &CellCollection) -> Result<StackFrame, StackError> {
    let cd = *cd_candidates(p)?.last().expect("at least one candidate");
    stack_frame_with_cd(p, cd)
}

pub fn stack_frame_with_cd(p: &CellCollection, cd: Interval) -> Result<StackFrame, StackError> {
    if !p.classify().stack {
        return Err(StackError::NotAStack);
    }
    let bottom = p
        .maximal_interval_through(Vertex::new(1, 1), Direction::Horizontal)
        .expect("stack has a bottom row");
    let inside: BTreeSet<Vertex> = p.corners().inside;

    let mut e_list = Vec::new();
    let mut g_h = Vec::new();
    let mut m = Vec::new();
    let mut m_from_maximal = Vec::new();
    e_list.push(cd.lo);
    g_h.push(bottom);
    m.push(bottom.size() as i64);
    m_from_maximal.push(bottom.size() as i64);
    for y in (cd.lo.y + 1)..cd.hi.y {
        let e = Vertex::new(cd.lo.x, y);
        let run = p
            .maximal_interval_through(e, Direction::Horizontal)
            .expect("every vertex lies on a horizontal edge");
        if !run.points().iter().any(|v| inside.contains(v)) {
            continue;
        }
        let gh = smallest_boundary_interval(p, &run, e);
        e_list.push(e);
        m.push(gh.size() as i64);
        m_from_maximal.push(run.size() as i64);
        g_h.push(gh);
    }
    e_list.push(cd.hi);
    let n = e_list
        .windows(2)
        .map(|w| (w[1].y - w[0].y) as i64)
        .collect();
    Ok(StackFrame { bottom, cd, e_list, m, n, g_h, m_from_maximal })
}

/// The smallest horizontal interval of the run through `e` with both
/// endpoints on the boundary.  When `e` is itself an inside corner the
/// interval extends away from the missing upper cell (in a stack the absent
/// cell at an inside corner is always one of the two above), keeping the
/// construction equivariant under mirroring.
fn smallest_boundary_interval(p: &CellCollection, run: &Interval, e: Vertex) -> Interval {
    let pts = run.points();
    let pos = pts.iter().position(|&v| v == e).expect("e on its run");
    let left = pts[..pos]
        .iter()
        .rev()
        .find(|&&v| p.is_boundary_vertex(v))
        .copied();
    let right = pts[pos + 1..]
        .iter()
        .find(|&&v| p.is_boundary_vertex(v))
        .copied();
    let inside_corner = p.cell_multiplicity(e) == 3;
    if inside_corner {
        let upper_right_present = p.has_cell(crate::grid::Cell::new(e));
        if upper_right_present {
            // upper-left cell missing: extend toward larger x
            if let Some(h) = right {
                return Interval { lo: e, hi: h };
            }
            let g = left.expect("maximal-run endpoints are boundary vertices");
            return Interval { lo: g, hi: e };
        }
        if let Some(g) = left {
            return Interval { lo: g, hi: e };
        }
        let h = right.expect("maximal-run endpoints are boundary vertices");
        return Interval { lo: e, hi: h };
    }
    if p.is_boundary_vertex(e) {
        match (left, right) {
            (Some(g), Some(h)) => {
                if e.x - g.x <= h.x - e.x {
                    Interval { lo: g, hi: e }
                } else {
                    Interval { lo: e, hi: h }
                }
            }
            (Some(g), None) => Interval { lo: g, hi: e },
            (None, Some(h)) => Interval { lo: e, hi: h },
            (None, None) => unreachable!("runs have at least two points"),
        }
    } else {
        Interval {
            lo: left.expect("interior vertex has boundary to its left"),
            hi: right.expect("interior vertex has boundary to its right"),
        }
    }
}

/// Configuration test for the quadratic Gröbner-basis property of the inner
/// 2-minors, for the first or second lexicographic order.  Equivalent to the
/// reduced basis being exactly the inner minors.
pub fn gb_criterion(p: &CellCollection, kind: &OrderKind) -> bool {
    let inner = p.inner_intervals();
    let is_inner = |int: Interval| p.is_inner_interval(&int);
    match kind {
        OrderKind::Lex1 => {
            // diagonal chains [a,b], [b,c]: one of the two completions over
            // the anti-diagonal corners of [a,b] must be inner
            for i1 in &inner {
                for i2 in &inner {
                    if i1.hi != i2.lo {
                        continue;
                    }
                    let e = Vertex::new(i1.hi.x, i1.lo.y);
                    let d = Vertex::new(i1.lo.x, i1.hi.y);
                    let ec = Interval { lo: e, hi: i2.hi };
                    let dc = Interval { lo: d, hi: i2.hi };
                    if !is_inner(ec) && !is_inner(dc) {
                        return false;
                    }
                }
            }
            true
        }
        OrderKind::Lex2 => {
            // anti-diagonal chains: upper-left interval touching the
            // lower-right one in a single shared corner
            for i1 in &inner {
                for i2 in &inner {
                    let shared = Vertex::new(i1.hi.x, i1.lo.y);
                    if shared != Vertex::new(i2.lo.x, i2.hi.y) {
                        continue;
                    }
                    let low = Interval {
                        lo: Vertex::new(i1.lo.x, i2.lo.y),
                        hi: Vertex::new(i2.hi.x, i1.lo.y),
                    };
                    let high = Interval {
                        lo: Vertex::new(i1.lo.x, i2.hi.y),
                        hi: Vertex::new(i2.hi.x, i1.hi.y),
                    };
                    if !is_inner(low) && !is_inner(high) {
                        return false;
                    }
                }
            }
            true
        }
        _ => panic!("criterion is defined for the two plain lexicographic orders"),
    }
}

/// The generating set `M ∪ {x_c}` of `(I_P, x_c)` described by the stack
/// theory: the variable `x_c`, the inner minors avoiding `x_c`, and the
/// quadratic monomials `x_e x_f` over `e` in the bottom interval and `f` in
/// `[c,d]` whose rectangle between the two is inner.
pub fn stack_prime_generators(p: &CellCollection, frame: &StackFrame) -> GeneratorSet {
    let c = frame.c();
    let c_var = crate::algebra::Var::Vertex(c);
    let mut out: Vec<BinomialOrZero> = Vec::new();
    out.push(BinomialOrZero::Monomial(Monomial::var(c)));
    for g in inner_minors(p).elements() {
        if !g.contains_var(c_var) {
            out.push(g.clone());
        }
    }
    for e in frame.bottom.points() {
        if e == c {
            continue;
        }
        for f in frame.cd.points() {
            if f == c {
                continue;
            }
            let rect = if e.x < c.x {
                Interval { lo: e, hi: f }
            } else {
                Interval { lo: Vertex::new(c.x, e.y), hi: Vertex::new(e.x, f.y) }
            };
            if p.is_inner_interval(&rect) {
                out.push(BinomialOrZero::Monomial(
                    Monomial::var(e).mul(&Monomial::var(f)),
                ));
            }
        }
    }
    GeneratorSet::new(out)
}

/// Reduced Gröbner basis of `(I_P, x_c)` under the stack order pivoting at
/// `c`; quadratic with squarefree lead terms for every stack.
pub fn stack_prime_gb(p: &CellCollection) -> Result<GroebnerBasis, StackError> {
    let frame = stack_frame(p)?;
    Ok(stack_prime_gb_with(p, &frame))
}

pub fn stack_prime_gb_with(p: &CellCollection, frame: &StackFrame) -> GroebnerBasis {
    let c = frame.c();
    let order = MonomialOrder::stack_lex(p, c);
    let gens = inner_minors(p).with_element(BinomialOrZero::Monomial(Monomial::var(c)));
    buchberger(&gens, &order)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PrimeKind {
    /// Vanishing on the bottom interval.
    P1,
    /// Vanishing on `[c,d]`.
    P2,
    /// Vanishing on the rectangle `[π(g_j), h_j]`.
    Q(usize),
}

/// One minimal prime of `(I_P, x_c)`: the variables it contains and the
/// residual inner minors (those supported away from the vanishing set).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeDescription {
    pub kind: PrimeKind,
    pub vanishing_vertices: BTreeSet<Vertex>,
    pub residual_generators: GeneratorSet,
}

impl PrimeDescription {
    fn new(kind: PrimeKind, vanishing: BTreeSet<Vertex>, p: &CellCollection) -> Self {
        let residual = inner_minors(p)
            .elements()
            .iter()
            .filter(|g| {
                !vanishing
                    .iter()
                    .any(|&v| g.contains_var(crate::algebra::Var::Vertex(v)))
            })
            .cloned()
            .collect();
        Self { kind, vanishing_vertices: vanishing, residual_generators: residual }
    }

    /// Generators of the prime: the vanishing variables plus the residual
    /// minors.
    pub fn generators(&self) -> GeneratorSet {
        let vars = self
            .vanishing_vertices
            .iter()
            .map(|&v| BinomialOrZero::Monomial(Monomial::var(v)));
        GeneratorSet::new(
            vars.chain(self.residual_generators.elements().iter().cloned()),
        )
    }
}

/// The `s+2` minimal primes of `(I_P, x_c)` for the default frame.
pub fn minimal_primes(p: &CellCollection) -> Result<Vec<PrimeDescription>, StackError> {
    let frame = stack_frame(p)?;
    Ok(minimal_primes_with(p, &frame))
}

pub fn minimal_primes_with(p: &CellCollection, frame: &StackFrame) -> Vec<PrimeDescription> {
    let mut out = Vec::new();
    out.push(PrimeDescription::new(
        PrimeKind::P1,
        frame.bottom.points().into_iter().collect(),
        p,
    ));
    out.push(PrimeDescription::new(
        PrimeKind::P2,
        frame.cd.points().into_iter().collect(),
        p,
    ));
    for j in 1..=frame.s() {
        let gh = frame.g_h[j];
        let rect = Interval {
            lo: Vertex::new(gh.lo.x, 1),
            hi: gh.hi,
        };
        out.push(PrimeDescription::new(
            PrimeKind::Q(j),
            rect.points().into_iter().collect(),
            p,
        ));
    }
    out
}

/// Class group data: free of rank `s+1` on `cl(q_1)…cl(q_s), cl(p_1)`, the
/// canonical class μ over the basis `q_0 = p_1, q_1 … q_s`, and the
/// Gorenstein verdict `μ = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupReport {
    pub rank: usize,
    pub basis: Vec<String>,
    pub relation: String,
    /// `μ_j = m_j - Σ_{i=j}^{s} n_i` for `j = 0 … s`.
    pub canonical: Vec<i64>,
    pub gorenstein: bool,
}

/// Formula-only class group for a chosen frame (no oracle cross-check).
pub fn class_group_with(frame: &StackFrame) -> ClassGroupReport {
    let s = frame.s();
    let canonical: Vec<i64> = (0..=s)
        .map(|j| frame.m[j] - frame.n[j..=s].iter().sum::<i64>())
        .collect();
    let gorenstein = canonical.iter().all(|&mu| mu == 0);
    let mut basis: Vec<String> = (1..=s).map(|i| format!("cl(q_{i})")).collect();
    basis.push(String::from("cl(p_1)"));
    let relation = {
        let mut terms: Vec<String> = (1..=s).map(|i| format!("cl(q_{i})")).collect();
        terms.push(String::from("cl(p_1)"));
        terms.push(String::from("cl(p_2)"));
        format!("{} = 0", terms.join(" + "))
    };
    ClassGroupReport { rank: s + 1, basis, relation, canonical, gorenstein }
}

/// Class group for the default frame, cross-checked against the h-vector
/// symmetry oracle; a disagreement is an error, not a silent report.
pub fn class_group(p: &CellCollection) -> Result<ClassGroupReport, StackError> {
    let frame = stack_frame(p)?;
    let report = class_group_with(&frame);
    let oracle = h_symmetry(p).expect("stacks are convex and weakly connected");
    if oracle != report.gorenstein {
        return Err(StackError::OracleDisagreement);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Cell;

    fn collection(cells: &[(u32, u32)]) -> CellCollection {
        CellCollection::new(cells.iter().map(|&(x, y)| Cell::at(x, y))).unwrap()
    }

    fn v(x: u32, y: u32) -> Vertex {
        Vertex::new(x, y)
    }

    fn staircase4() -> CellCollection {
        collection(&[
            (1, 1), (2, 1), (3, 1), (4, 1),
            (1, 2), (2, 2), (3, 2),
            (1, 3), (2, 3),
            (2, 4),
        ])
    }

    fn staircase5() -> CellCollection {
        collection(&[
            (1, 1), (2, 1), (3, 1), (4, 1), (5, 1),
            (2, 2), (3, 2), (4, 2),
            (2, 3), (3, 3),
            (3, 4),
        ])
    }

    fn fig22() -> CellCollection {
        collection(&[
            (1, 1), (2, 1), (3, 1), (4, 1),
            (2, 2), (3, 2),
            (2, 3), (3, 3),
            (2, 4),
        ])
    }

    fn windmill() -> CellCollection {
        collection(&[(2, 1), (1, 2), (3, 2), (2, 3)])
    }

    #[test]
    fn staircase4_frame() {
        let f = stack_frame(&staircase4()).unwrap();
        assert_eq!(f.s(), 3);
        assert_eq!(f.m, vec![4, 3, 2, 1]);
        assert_eq!(f.n, vec![1, 1, 1, 1]);
    }

    #[test]
    fn staircase5_frame() {
        let f = stack_frame(&staircase5()).unwrap();
        assert_eq!(f.s(), 3);
        assert_eq!(f.m, vec![5, 3, 2, 1]);
        assert_eq!(f.n, vec![1, 1, 1, 1]);
    }

    #[test]
    fn fig22_frame() {
        let f = stack_frame(&fig22()).unwrap();
        assert_eq!(f.s(), 2);
        assert_eq!(&f.e_list[1..=2], &[v(3, 2), v(3, 4)]);
    }

    #[test]
    fn frame_rejects_non_stacks() {
        assert_eq!(stack_frame(&windmill()), Err(StackError::NotAStack));
    }

    #[test]
    fn criterion_on_stacks_and_windmill() {
        for p in [staircase4(), staircase5(), fig22()] {
            assert!(gb_criterion(&p, &OrderKind::Lex1));
            assert!(gb_criterion(&p, &OrderKind::Lex2));
        }
        assert!(!gb_criterion(&windmill(), &OrderKind::Lex1));
        // single cell: vacuous
        assert!(gb_criterion(&collection(&[(1, 1)]), &OrderKind::Lex1));
    }

    #[test]
    fn criterion_matches_buchberger_on_fixtures() {
        for p in [staircase4(), fig22(), windmill()] {
            for kind in [OrderKind::Lex1, OrderKind::Lex2] {
                let order = match kind {
                    OrderKind::Lex1 => MonomialOrder::lex1(&p),
                    _ => MonomialOrder::lex2(&p),
                };
                let minors = inner_minors(&p);
                let gb = buchberger(&minors, &order);
                let equal = gb.elements() == minors.elements();
                assert_eq!(gb_criterion(&p, &kind), equal);
            }
        }
    }

    #[test]
    fn single_cell_prime_gb() {
        let p = collection(&[(1, 1)]);
        let frame = stack_frame(&p).unwrap();
        assert_eq!(frame.c(), v(2, 1));
        let gb = stack_prime_gb(&p).unwrap();
        let theorem = stack_prime_generators(&p, &frame);
        assert_eq!(gb.elements(), theorem.elements());
    }

    #[test]
    fn stack_prime_gb_matches_theorem_set() {
        for p in [staircase4(), staircase5(), fig22()] {
            let frame = stack_frame(&p).unwrap();
            let gb = stack_prime_gb(&p).unwrap();
            let theorem = stack_prime_generators(&p, &frame);
            assert_eq!(gb.elements(), theorem.elements(), "mismatch for {p:?}");
            for lt in gb.lead_terms() {
                assert!(lt.squarefree());
                assert!(lt.degree() <= 2);
            }
        }
    }

    #[test]
    fn fig22_minimal_primes() {
        let primes = minimal_primes(&fig22()).unwrap();
        assert_eq!(primes.len(), 4);
        let vanishing: Vec<BTreeSet<Vertex>> =
            primes.iter().map(|p| p.vanishing_vertices.clone()).collect();
        let bottom: BTreeSet<Vertex> =
            (1..=5).map(|x| v(x, 1)).collect();
        let cd: BTreeSet<Vertex> = (1..=5).map(|y| v(3, y)).collect();
        let q1: BTreeSet<Vertex> = Interval { lo: v(2, 1), hi: v(4, 2) }
            .points()
            .into_iter()
            .collect();
        let q2: BTreeSet<Vertex> = Interval { lo: v(2, 1), hi: v(3, 4) }
            .points()
            .into_iter()
            .collect();
        assert_eq!(vanishing, vec![bottom, cd, q1, q2]);
    }

    #[test]
    fn rectangle_stack_has_two_primes() {
        let p = collection(&[(1, 1), (2, 1), (1, 2), (2, 2)]);
        let primes = minimal_primes(&p).unwrap();
        assert_eq!(primes.len(), 2);
    }

    #[test]
    fn staircase4_has_five_primes() {
        assert_eq!(minimal_primes(&staircase4()).unwrap().len(), 5);
    }

    #[test]
    fn primes_contain_the_ideal() {
        let p = fig22();
        let frame = stack_frame(&p).unwrap();
        let order = MonomialOrder::lex1(&p);
        let target = inner_minors(&p)
            .with_element(BinomialOrZero::Monomial(Monomial::var(frame.c())));
        for prime in minimal_primes(&p).unwrap() {
            let gb = buchberger(&prime.generators(), &order);
            assert!(gb.contains_all(&target), "{:?} misses the ideal", prime.kind);
        }
    }

    #[test]
    fn primes_are_pairwise_incomparable() {
        let p = staircase4();
        let primes = minimal_primes(&p).unwrap();
        let order = MonomialOrder::lex1(&p);
        for a in &primes {
            for b in &primes {
                if a.kind == b.kind {
                    continue;
                }
                let gb = buchberger(&a.generators(), &order);
                assert!(
                    !gb.contains_all(&b.generators()),
                    "{:?} contains {:?}",
                    a.kind,
                    b.kind
                );
            }
        }
    }

    #[test]
    fn staircase_class_groups() {
        let g4 = class_group(&staircase4()).unwrap();
        assert_eq!(g4.rank, 4);
        assert_eq!(g4.canonical, vec![0, 0, 0, 0]);
        assert!(g4.gorenstein);

        let g5 = class_group(&staircase5()).unwrap();
        assert_eq!(g5.rank, 4);
        assert_eq!(g5.canonical, vec![1, 0, 0, 0]);
        assert!(!g5.gorenstein);
    }

    #[test]
    fn square_grids_are_gorenstein() {
        for k in 1..=3u32 {
            let cells: Vec<(u32, u32)> = (1..=k)
                .flat_map(|x| (1..=k).map(move |y| (x, y)))
                .collect();
            let g = class_group(&collection(&cells)).unwrap();
            assert_eq!(g.rank, 1);
            assert_eq!(g.canonical, vec![0]);
            assert!(g.gorenstein);
        }
    }

    #[test]
    fn gorenstein_invariant_under_cd_choice() {
        for p in [staircase4(), staircase5(), fig22()] {
            let reports: Vec<ClassGroupReport> = cd_candidates(&p)
                .unwrap()
                .into_iter()
                .map(|cd| class_group_with(&stack_frame_with_cd(&p, cd).unwrap()))
                .collect();
            let verdicts: BTreeSet<bool> =
                reports.iter().map(|r| r.gorenstein).collect();
            assert_eq!(verdicts.len(), 1);
            let ranks: BTreeSet<usize> = reports.iter().map(|r| r.rank).collect();
            assert_eq!(ranks.len(), 1);
        }
    }
}
