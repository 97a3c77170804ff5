//! Exact monomial and binomial arithmetic over the vertex variables,
//! lexicographic monomial orders, division, Buchberger's algorithm and
//! saturation by single variables.
//!
//! Everything here stays inside the binomial class: ideals are generated by
//! differences of monomials (coefficients +1 and -1 only) together with pure
//! monomials, and that class is closed under S-polynomials and reduction.
//! Global signs are dropped: `m - n` and `n - m` generate the same ideal and
//! only zero-tests and lead/trail splits are ever needed.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::cancel::{CancelToken, NEVER};
use crate::grid::{CellCollection, Vertex};

/// Variable of the ambient polynomial ring: one per vertex of the collection
/// plus the single auxiliary inverse variable used during saturation.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Vertex(Vertex),
    Aux,
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Vertex(v) => write!(f, "x{v}"),
            Var::Aux => write!(f, "t"),
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Total degrees are checked against this bound; exponents are 32-bit and
/// stay tiny in practice.
const MAX_DEGREE: u64 = 1 << 31;

/// Sparse exponent vector; zero exponents are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exponents: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Vertex) -> Self {
        Self::from_powers([(Var::Vertex(v), 1)])
    }

    pub fn aux() -> Self {
        Self::from_powers([(Var::Aux, 1)])
    }

    pub fn from_powers<I>(powers: I) -> Self
    where
        I: IntoIterator<Item = (Var, u32)>,
    {
        let mut exponents = BTreeMap::new();
        for (v, e) in powers {
            if e > 0 {
                *exponents.entry(v).or_insert(0) += e;
            }
        }
        let m = Self { exponents };
        m.check_degree();
        m
    }

    pub fn from_vertices<I>(vs: I) -> Self
    where
        I: IntoIterator<Item = Vertex>,
    {
        Self::from_powers(vs.into_iter().map(|v| (Var::Vertex(v), 1)))
    }

    fn check_degree(&self) {
        let d: u64 = self.exponents.values().map(|&e| e as u64).sum();
        assert!(d < MAX_DEGREE, "monomial degree overflow");
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.exponents.get(&v).copied().unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.exponents.iter().map(|(&v, &e)| (v, e))
    }

    pub fn squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.exponents.contains_key(&v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (&v, &e) in &other.exponents {
            *exponents.entry(v).or_insert(0) += e;
        }
        let m = Self { exponents };
        m.check_degree();
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exponents.iter().all(|(v, &e)| other.exponent(*v) >= e)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient_into(&self, other: &Self) -> Self {
        debug_assert!(self.divides(other));
        let mut exponents = BTreeMap::new();
        for (&v, &e) in &other.exponents {
            let q = e - self.exponent(v);
            if q > 0 {
                exponents.insert(v, q);
            }
        }
        Self { exponents }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (&v, &e) in &other.exponents {
            let cur = exponents.entry(v).or_insert(0);
            *cur = (*cur).max(e);
        }
        let m = Self { exponents };
        m.check_degree();
        m
    }

    pub fn gcd_is_one(&self, other: &Self) -> bool {
        self.exponents.keys().all(|v| !other.exponents.contains_key(v))
    }

    /// Canonical structural order: degree first, then exponent maps.
    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        // factors printed largest column first for a stable readable layout
        let mut vars: Vec<(Var, u32)> = self.vars().collect();
        vars.sort_by(|a, b| cmp_var_display(&b.0, &a.0));
        for (i, (v, e)) in vars.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match v {
                Var::Vertex(p) => write!(f, "x({},{})", p.x, p.y)?,
                Var::Aux => write!(f, "t")?,
            }
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn cmp_var_display(a: &Var, b: &Var) -> Ordering {
    match (a, b) {
        (Var::Aux, Var::Aux) => Ordering::Equal,
        (Var::Aux, _) => Ordering::Greater,
        (_, Var::Aux) => Ordering::Less,
        (Var::Vertex(p), Var::Vertex(q)) => (p.x, p.y).cmp(&(q.x, q.y)),
    }
}

/// Zero, a single monomial (sign dropped), or a difference of two distinct
/// monomials stored in canonical orientation (larger structural side first).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BinomialOrZero {
    Zero,
    Monomial(Monomial),
    Binomial(Monomial, Monomial),
}

impl BinomialOrZero {
    /// Builds `m - n` up to global sign, collapsing `m - m` to zero.
    pub fn difference(m: Monomial, n: Monomial) -> Self {
        match m.canonical_cmp(&n) {
            Ordering::Equal => BinomialOrZero::Zero,
            Ordering::Greater => BinomialOrZero::Binomial(m, n),
            Ordering::Less => BinomialOrZero::Binomial(n, m),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BinomialOrZero::Zero)
    }

    pub fn degree(&self) -> u32 {
        match self {
            BinomialOrZero::Zero => 0,
            BinomialOrZero::Monomial(m) => m.degree(),
            BinomialOrZero::Binomial(m, n) => m.degree().max(n.degree()),
        }
    }

    /// Both sides homogeneous of the same degree.
    pub fn homogeneous(&self) -> bool {
        match self {
            BinomialOrZero::Binomial(m, n) => m.degree() == n.degree(),
            _ => true,
        }
    }

    pub fn contains_var(&self, v: Var) -> bool {
        match self {
            BinomialOrZero::Zero => false,
            BinomialOrZero::Monomial(m) => m.contains_var(v),
            BinomialOrZero::Binomial(m, n) => m.contains_var(v) || n.contains_var(v),
        }
    }

    /// Lead and trail under `order`; `None` for zero, and no trail for a
    /// pure monomial.
    pub fn lead_trail<'a>(
        &'a self,
        order: &MonomialOrder,
    ) -> Option<(&'a Monomial, Option<&'a Monomial>)> {
        match self {
            BinomialOrZero::Zero => None,
            BinomialOrZero::Monomial(m) => Some((m, None)),
            BinomialOrZero::Binomial(m, n) => match order.compare(m, n) {
                Ordering::Less => Some((n, Some(m))),
                _ => Some((m, Some(n))),
            },
        }
    }
}

impl fmt::Debug for BinomialOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BinomialOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinomialOrZero::Zero => write!(f, "0"),
            BinomialOrZero::Monomial(m) => write!(f, "{m}"),
            BinomialOrZero::Binomial(m, n) => write!(f, "{m} - {n}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlgebraError {
    UnknownVariable,
    ParseError,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::UnknownVariable => write!(f, "variable outside the order's universe"),
            AlgebraError::ParseError => write!(f, "malformed binomial text"),
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Which lexicographic variable ranking an order uses.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrderKind {
    /// `x_(i,j) > x_(k,l)` iff `i>k`, or `i=k` and `j>l`.
    Lex1,
    /// `x_(i,j) > x_(k,l)` iff `i<k`, or `i=k` and `j>l`.
    Lex2,
    /// Row-first order pivoting around the column of `c`: higher rows are
    /// larger; within a row the columns `>= c.x` come first in increasing
    /// order, then the columns `< c.x` in decreasing order.
    StackLex { c: Vertex },
    /// Block order: the auxiliary variable dominates, ties broken by `inner`.
    Elim { inner: Box<OrderKind> },
}

/// Total, multiplicative well-order on monomials over a fixed universe of
/// vertex variables (plus the auxiliary variable for elimination orders).
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Higher rank = larger variable.
    ranks: BTreeMap<Var, u32>,
    /// Degree-first refinement of the same variable ranking; used as the
    /// saturation workhorse where plain lexicographic bases blow up.
    graded: bool,
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonomialOrder({:?}{})",
            self.kind,
            if self.graded { ", graded" } else { "" }
        )
    }
}

impl MonomialOrder {
    pub fn lex1(universe: &CellCollection) -> Self {
        Self::build(OrderKind::Lex1, universe.vertices().collect())
    }

    pub fn lex2(universe: &CellCollection) -> Self {
        Self::build(OrderKind::Lex2, universe.vertices().collect())
    }

    pub fn stack_lex(universe: &CellCollection, c: Vertex) -> Self {
        Self::build(OrderKind::StackLex { c }, universe.vertices().collect())
    }

    /// The degree-first refinement with the same variable ranking.
    pub fn graded(&self) -> Self {
        Self { kind: self.kind.clone(), ranks: self.ranks.clone(), graded: true }
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Extends `self` by the auxiliary variable as a dominating block, so
    /// the `t`-free part of a reduced basis generates the elimination ideal.
    pub fn eliminate_aux(&self) -> Self {
        let mut ranks = self.ranks.clone();
        let top = ranks.values().max().copied().unwrap_or(0) + 1;
        ranks.insert(Var::Aux, top);
        Self {
            kind: OrderKind::Elim { inner: Box::new(self.kind.clone()) },
            ranks,
            graded: self.graded,
        }
    }

    fn build(kind: OrderKind, universe: Vec<Vertex>) -> Self {
        let mut vars = universe;
        vars.sort_by(|a, b| Self::var_cmp(&kind, *a, *b));
        let ranks = vars
            .into_iter()
            .enumerate()
            .map(|(i, v)| (Var::Vertex(v), i as u32))
            .collect();
        Self { kind, ranks, graded: false }
    }

    /// Variable comparison from the order definitions; `Greater` means the
    /// first argument is the larger variable.
    fn var_cmp(kind: &OrderKind, a: Vertex, b: Vertex) -> Ordering {
        match kind {
            OrderKind::Lex1 => (a.x, a.y).cmp(&(b.x, b.y)),
            OrderKind::Lex2 => (b.x, a.y).cmp(&(a.x, b.y)),
            OrderKind::StackLex { c } => {
                let class = |v: Vertex| -> (u32, u32, i64) {
                    if v.x >= c.x {
                        // right block is larger, decreasing toward bigger x
                        (v.y, 1, -(v.x as i64))
                    } else {
                        // left block below it, decreasing toward smaller x
                        (v.y, 0, v.x as i64)
                    }
                };
                class(a).cmp(&class(b))
            }
            OrderKind::Elim { inner } => Self::var_cmp(inner, a, b),
        }
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    /// Variables of the universe from the largest to the smallest.
    pub fn descending_vars(&self) -> Vec<Var> {
        let mut vars: Vec<(u32, Var)> =
            self.ranks.iter().map(|(&v, &r)| (r, v)).collect();
        vars.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        vars.into_iter().map(|(_, v)| v).collect()
    }

    fn rank(&self, v: Var) -> Result<u32, AlgebraError> {
        self.ranks.get(&v).copied().ok_or(AlgebraError::UnknownVariable)
    }

    /// Comparison under the order; errors when a variable is outside the
    /// universe the order was built from.
    pub fn try_compare(&self, m1: &Monomial, m2: &Monomial) -> Result<Ordering, AlgebraError> {
        if self.graded {
            // auxiliary block first (keeps elimination valid), then degree
            match m1.exponent(Var::Aux).cmp(&m2.exponent(Var::Aux)) {
                Ordering::Equal => {}
                other => return Ok(other),
            }
            match m1.degree().cmp(&m2.degree()) {
                Ordering::Equal => {}
                other => return Ok(other),
            }
        }
        let mut entries: Vec<(u32, i64)> = Vec::new();
        for (v, e) in m1.vars() {
            entries.push((self.rank(v)?, e as i64));
        }
        for (v, e) in m2.vars() {
            entries.push((self.rank(v)?, -(e as i64)));
        }
        entries.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut i = 0;
        while i < entries.len() {
            let rank = entries[i].0;
            let mut diff = 0i64;
            while i < entries.len() && entries[i].0 == rank {
                diff += entries[i].1;
                i += 1;
            }
            match diff.cmp(&0) {
                Ordering::Equal => {}
                other => return Ok(other),
            }
        }
        Ok(Ordering::Equal)
    }

    /// Panicking variant for internal use where the universe is known good.
    pub fn compare(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        self.try_compare(m1, m2).expect("monomial outside the order's universe")
    }
}

/// Unattached generating set in canonical order, deduplicated; zeroes are
/// dropped.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GeneratorSet {
    elements: Vec<BinomialOrZero>,
}

impl GeneratorSet {
    pub fn new<I>(elements: I) -> Self
    where
        I: IntoIterator<Item = BinomialOrZero>,
    {
        let set: BTreeSet<BinomialOrZero> =
            elements.into_iter().filter(|e| !e.is_zero()).collect();
        Self { elements: set.into_iter().collect() }
    }

    pub fn elements(&self) -> &[BinomialOrZero] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn union(&self, other: &GeneratorSet) -> GeneratorSet {
        GeneratorSet::new(self.elements.iter().chain(other.elements.iter()).cloned())
    }

    pub fn with_element(&self, e: BinomialOrZero) -> GeneratorSet {
        GeneratorSet::new(self.elements.iter().cloned().chain([e]))
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.elements).finish()
    }
}

impl FromIterator<BinomialOrZero> for GeneratorSet {
    fn from_iter<I: IntoIterator<Item = BinomialOrZero>>(iter: I) -> Self {
        Self::new(iter)
    }
}

/// Internal working form: lead monomial plus optional trail, oriented under
/// the ambient order once so the hot loops never re-compare.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Oriented {
    lead: Monomial,
    trail: Option<Monomial>,
}

impl Oriented {
    fn of(e: &BinomialOrZero, order: &MonomialOrder) -> Option<Self> {
        let (lead, trail) = e.lead_trail(order)?;
        Some(Self { lead: lead.clone(), trail: trail.cloned() })
    }

    fn to_element(&self) -> BinomialOrZero {
        match &self.trail {
            None => BinomialOrZero::Monomial(self.lead.clone()),
            Some(t) => BinomialOrZero::difference(self.lead.clone(), t.clone()),
        }
    }
}

/// Normal form of `f` against `basis`: no term of the result is divisible by
/// any lead term of `basis`.  The result stays in the binomial class because
/// reducing a term by a binomial substitutes a single monomial and reducing
/// by a monomial deletes the term.
pub fn reduce(
    f: &BinomialOrZero,
    basis: &[BinomialOrZero],
    order: &MonomialOrder,
) -> BinomialOrZero {
    let oriented: Vec<Oriented> =
        basis.iter().filter_map(|g| Oriented::of(g, order)).collect();
    reduce_oriented(f, &oriented, order)
}

fn nf_monomial(start: &Monomial, basis: &[Oriented]) -> Option<Monomial> {
    let mut m = start.clone();
    'outer: loop {
        let deg = m.degree();
        for g in basis {
            if g.lead.degree() <= deg && g.lead.divides(&m) {
                match &g.trail {
                    None => return None,
                    Some(t) => {
                        m = g.lead.quotient_into(&m).mul(t);
                        continue 'outer;
                    }
                }
            }
        }
        return Some(m);
    }
}

fn reduce_oriented(
    f: &BinomialOrZero,
    basis: &[Oriented],
    _order: &MonomialOrder,
) -> BinomialOrZero {
    match f {
        BinomialOrZero::Zero => BinomialOrZero::Zero,
        BinomialOrZero::Monomial(m) => match nf_monomial(m, basis) {
            None => BinomialOrZero::Zero,
            Some(m) => BinomialOrZero::Monomial(m),
        },
        BinomialOrZero::Binomial(m, n) => match (nf_monomial(m, basis), nf_monomial(n, basis)) {
            (None, None) => BinomialOrZero::Zero,
            (Some(m), None) | (None, Some(m)) => BinomialOrZero::Monomial(m),
            (Some(m), Some(n)) => BinomialOrZero::difference(m, n),
        },
    }
}

/// S-polynomial of two binomial-class elements; again binomial-class.
pub fn s_pair(
    f: &BinomialOrZero,
    g: &BinomialOrZero,
    order: &MonomialOrder,
) -> BinomialOrZero {
    let (Some((lf, tf)), Some((lg, tg))) = (f.lead_trail(order), g.lead_trail(order)) else {
        return BinomialOrZero::Zero;
    };
    let lcm = lf.lcm(lg);
    let uf = lf.quotient_into(&lcm);
    let ug = lg.quotient_into(&lcm);
    match (tf, tg) {
        // (lcm - uf*tf) - (lcm - ug*tg) = ug*tg - uf*tf
        (Some(tf), Some(tg)) => BinomialOrZero::difference(uf.mul(tf), ug.mul(tg)),
        (Some(tf), None) => BinomialOrZero::Monomial(uf.mul(tf)),
        (None, Some(tg)) => BinomialOrZero::Monomial(ug.mul(tg)),
        (None, None) => BinomialOrZero::Zero,
    }
}

/// Reduced Gröbner basis under a fixed order, keeping the input generators
/// for provenance.
#[derive(Clone)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    elements: Vec<BinomialOrZero>,
    input: GeneratorSet,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.order)
            .field("elements", &self.elements)
            .finish()
    }
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[BinomialOrZero] {
        &self.elements
    }

    pub fn input(&self) -> &GeneratorSet {
        &self.input
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_generators(&self) -> GeneratorSet {
        GeneratorSet::new(self.elements.iter().cloned())
    }

    /// Lead monomials under the attached order.
    pub fn lead_terms(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|e| e.lead_trail(&self.order).map(|(l, _)| l.clone()))
            .collect()
    }

    pub fn normal_form(&self, f: &BinomialOrZero) -> BinomialOrZero {
        reduce(f, &self.elements, &self.order)
    }

    pub fn contains(&self, f: &BinomialOrZero) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_all(&self, gens: &GeneratorSet) -> bool {
        gens.elements().iter().all(|g| self.contains(g))
    }

    /// Wraps a set already known to be a Gröbner basis for `order` (for
    /// example a universal Gröbner basis) after minimalization and
    /// inter-reduction; no S-pair processing happens.
    pub fn from_known_basis(gens: &GeneratorSet, order: &MonomialOrder) -> Self {
        let oriented: Vec<Oriented> = gens
            .elements()
            .iter()
            .filter_map(|e| Oriented::of(e, order))
            .collect();
        let reduced = reduce_basis(oriented, order);
        let elements: BTreeSet<BinomialOrZero> =
            reduced.iter().map(Oriented::to_element).collect();
        Self {
            order: order.clone(),
            elements: elements.into_iter().collect(),
            input: gens.clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Cancelled;

impl fmt::Display for Cancelled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "computation cancelled")
    }
}

impl core::error::Error for Cancelled {}

/// Buchberger's algorithm with the normal pair-selection strategy (minimal
/// lcm degree, ties by generator indices) and the Gebauer-Möller pair
/// criteria; returns the unique reduced basis.
pub fn buchberger(gens: &GeneratorSet, order: &MonomialOrder) -> GroebnerBasis {
    try_buchberger(gens, order, &NEVER).expect("never cancelled")
}

pub fn try_buchberger(
    gens: &GeneratorSet,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GroebnerBasis, Cancelled> {
    let seed: Vec<Oriented> = gens
        .elements()
        .iter()
        .filter_map(|e| Oriented::of(e, order))
        .collect();
    let basis = saturate_pairs(seed, 0, order, cancel)?;
    let reduced = reduce_basis(basis, order);
    let elements: BTreeSet<BinomialOrZero> =
        reduced.iter().map(Oriented::to_element).collect();
    Ok(GroebnerBasis {
        order: order.clone(),
        elements: elements.into_iter().collect(),
        input: gens.clone(),
    })
}

/// One critical pair with its cached lcm.
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Completes `basis` under S-pair closure.  Elements before `known` are
/// assumed to form a Gröbner basis under `order` already (their mutual
/// S-pairs have standard representations and are never scheduled); the
/// remaining pairs go through the Gebauer-Möller update.
fn saturate_pairs(
    mut basis: Vec<Oriented>,
    known: usize,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<Vec<Oriented>, Cancelled> {
    let mut pairs: Vec<Pair> = Vec::new();
    for t in known..basis.len() {
        gm_update(&mut pairs, &basis, t);
    }
    let mut steps = 0u32;
    loop {
        // normal strategy: smallest lcm degree, then smallest indices
        let Some(best) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.lcm.degree(), p.i, p.j))
            .map(|(idx, _)| idx)
        else {
            break;
        };
        let Pair { i, j, .. } = pairs.swap_remove(best);
        steps = steps.wrapping_add(1);
        if steps % 32 == 0 && cancel.is_cancelled() {
            return Err(Cancelled);
        }
        let s = s_pair(&basis[i].to_element(), &basis[j].to_element(), order);
        let nf = reduce_oriented(&s, &basis, order);
        if nf.is_zero() {
            continue;
        }
        basis.push(Oriented::of(&nf, order).expect("nonzero"));
        gm_update(&mut pairs, &basis, basis.len() - 1);
    }
    Ok(basis)
}

/// Gebauer-Möller update: schedules the pairs of `basis[t]` against the
/// earlier elements, discarding those eliminated by the lcm and coprimality
/// criteria, and prunes older pairs whose lcm factors through the new lead.
fn gm_update(pairs: &mut Vec<Pair>, basis: &[Oriented], t: usize) {
    let lt = &basis[t].lead;
    let mut fresh: Vec<Pair> = (0..t)
        .map(|i| Pair { lcm: basis[i].lead.lcm(lt), i, j: t })
        .collect();
    // lcm criterion among the new pairs: drop (i,t) when some other (j,t)
    // has a strictly smaller lcm dividing it
    let keep: Vec<bool> = fresh
        .iter()
        .map(|p| {
            !fresh.iter().any(|q| {
                q.i != p.i && q.lcm != p.lcm && q.lcm.divides(&p.lcm)
            })
        })
        .collect();
    let mut filtered: Vec<Pair> = fresh
        .drain(..)
        .zip(keep)
        .filter_map(|(p, k)| k.then_some(p))
        .collect();
    // among equal lcms: a coprime pair kills the whole class, otherwise one
    // representative survives
    filtered.sort_by(|a, b| a.lcm.cmp(&b.lcm).then(a.i.cmp(&b.i)));
    let mut survivors: Vec<Pair> = Vec::new();
    let mut idx = 0;
    while idx < filtered.len() {
        let mut end = idx + 1;
        while end < filtered.len() && filtered[end].lcm == filtered[idx].lcm {
            end += 1;
        }
        let class = &filtered[idx..end];
        let coprime = class
            .iter()
            .any(|p| basis[p.i].lead.gcd_is_one(&basis[p.j].lead));
        if !coprime {
            survivors.push(Pair {
                lcm: class[0].lcm.clone(),
                i: class[0].i,
                j: class[0].j,
            });
        }
        idx = end;
    }
    // chain criterion on the old pairs
    pairs.retain(|p| {
        !(lt.divides(&p.lcm)
            && basis[p.i].lead.lcm(lt) != p.lcm
            && basis[p.j].lead.lcm(lt) != p.lcm)
    });
    pairs.extend(survivors);
}

/// Minimalize (drop elements whose lead is divisible by an earlier lead) and
/// tail-reduce, yielding the reduced basis.
fn reduce_basis(mut basis: Vec<Oriented>, order: &MonomialOrder) -> Vec<Oriented> {
    basis.sort_by(|a, b| order.compare(&a.lead, &b.lead));
    basis.dedup();
    let mut minimal: Vec<Oriented> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lead.divides(&g.lead)) {
            minimal.push(g);
        }
    }
    let mut out: Vec<Oriented> = Vec::new();
    for i in 0..minimal.len() {
        let others: Vec<Oriented> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = reduce_oriented(&minimal[i].to_element(), &others, order);
        match Oriented::of(&nf, order) {
            Some(o) => out.push(o),
            // a minimal element cannot reduce to zero against the others
            None => unreachable!("minimal basis element reduced to zero"),
        }
    }
    out
}

/// True iff `f` lies in the ideal generated by `gens`; the result does not
/// depend on the order used.
pub fn membership(f: &BinomialOrZero, gens: &GeneratorSet, order: &MonomialOrder) -> bool {
    buchberger(gens, order).contains(f)
}

/// Mutual containment of two ideals given by generating sets, decided by
/// reduction against the other side's reduced basis under one fixed order.
pub fn ideal_equal(a: &GeneratorSet, b: &GeneratorSet, order: &MonomialOrder) -> bool {
    let gb_a = buchberger(a, order);
    let gb_b = buchberger(b, order);
    gb_a.contains_all(b) && gb_b.contains_all(a)
}

/// Saturation `(gens) : v^∞` computed with the auxiliary inverse variable:
/// adjoin `t·v - 1`, take a Gröbner basis under the block order with `t`
/// largest and keep the elements free of `t`.
pub fn saturate(gens: &GeneratorSet, v: Vertex, order: &MonomialOrder) -> GeneratorSet {
    try_saturate(gens, v, order, &NEVER).expect("never cancelled")
}

pub fn try_saturate(
    gens: &GeneratorSet,
    v: Vertex,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GeneratorSet, Cancelled> {
    let gb = try_buchberger(gens, order, cancel)?;
    saturate_step(gb.elements(), v, order, cancel)
}

/// One saturation step for generators already forming a reduced basis under
/// `order`.  Their leads are unchanged by the block extension, so only the
/// pairs against the adjoined relation are scheduled.
fn saturate_step(
    known_gb: &[BinomialOrZero],
    v: Vertex,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GeneratorSet, Cancelled> {
    let elim = order.eliminate_aux();
    let mut basis: Vec<Oriented> = known_gb
        .iter()
        .filter_map(|e| Oriented::of(e, &elim))
        .collect();
    let known = basis.len();
    let relation =
        BinomialOrZero::difference(Monomial::aux().mul(&Monomial::var(v)), Monomial::one());
    basis.extend(Oriented::of(&relation, &elim));
    let done = saturate_pairs(basis, known, &elim, cancel)?;
    let reduced = reduce_basis(done, &elim);
    Ok(GeneratorSet::new(
        reduced
            .iter()
            .map(Oriented::to_element)
            .filter(|e| !e.contains_var(Var::Aux)),
    ))
}

/// Iterated saturation by every vertex variable in canonical order until a
/// full pass leaves the reduced basis unchanged.  The output generates
/// `(gens) : (∏ x_a)^∞` and is itself a Gröbner basis under `order`.
pub fn saturate_all(
    gens: &GeneratorSet,
    universe: &CellCollection,
    order: &MonomialOrder,
) -> GeneratorSet {
    try_saturate_all(gens, universe, order, &NEVER).expect("never cancelled")
}

pub fn try_saturate_all(
    gens: &GeneratorSet,
    universe: &CellCollection,
    order: &MonomialOrder,
    cancel: &CancelToken,
) -> Result<GeneratorSet, Cancelled> {
    let vars: Vec<Vertex> = universe.vertices().collect();
    // the per-step eliminations run over the degree-first refinement, where
    // the intermediate bases stay small; the result is re-based at the end
    let inner = order.graded();
    let mut current =
        GeneratorSet::new(try_buchberger(gens, &inner, cancel)?.elements().to_owned());
    loop {
        let before = current.clone();
        for &v in &vars {
            if cancel.is_cancelled() {
                return Err(Cancelled);
            }
            // a variable outside every generator is regular on the quotient
            if !current
                .elements()
                .iter()
                .any(|e| e.contains_var(Var::Vertex(v)))
            {
                continue;
            }
            current = saturate_step(current.elements(), v, &inner, cancel)?;
        }
        // elimination outputs are reduced bases under the restricted order,
        // so set equality decides the fixpoint
        if current == before {
            break;
        }
    }
    Ok(GeneratorSet::new(
        try_buchberger(&current, order, cancel)?.elements().to_owned(),
    ))
}

/// Canonical basis of the degree-2 graded piece of a homogeneous binomial
/// ideal: all degree-2 monomials are bucketed by normal form, each bucket
/// contributing the differences against its smallest member, plus any
/// monomials reducing to zero outright.
pub fn degree2_component(
    gens: &GeneratorSet,
    universe: &CellCollection,
    order: &MonomialOrder,
) -> Vec<BinomialOrZero> {
    let gb = buchberger(gens, order);
    let vars: Vec<Vertex> = universe.vertices().collect();
    let mut buckets: BTreeMap<Monomial, Vec<Monomial>> = BTreeMap::new();
    let mut out: BTreeSet<BinomialOrZero> = BTreeSet::new();
    for i in 0..vars.len() {
        for j in i..vars.len() {
            let m = Monomial::var(vars[i]).mul(&Monomial::var(vars[j]));
            match gb.normal_form(&BinomialOrZero::Monomial(m.clone())) {
                BinomialOrZero::Zero => {
                    out.insert(BinomialOrZero::Monomial(m));
                }
                BinomialOrZero::Monomial(n) => buckets.entry(n).or_default().push(m),
                BinomialOrZero::Binomial(..) => unreachable!("monomial NF stays monomial"),
            }
        }
    }
    for (_, mut ms) in buckets {
        ms.sort();
        let base = ms[0].clone();
        for m in ms.into_iter().skip(1) {
            out.insert(BinomialOrZero::difference(m, base.clone()));
        }
    }
    out.into_iter().collect()
}

/// The inner 2-minor `x_a x_b - x_c x_d` of a proper interval.
pub fn interval_minor(int: &crate::grid::Interval) -> BinomialOrZero {
    let (c, d) = int.anti_diagonal();
    BinomialOrZero::difference(
        Monomial::from_vertices([int.lo, int.hi]),
        Monomial::from_vertices([c, d]),
    )
}

/// Parses the textual binomial format `x(2,4)*x(4,3) - x(3,4)*x(1,3)`;
/// exponents above 1 are written `^k`, a bare monomial and `0` are accepted.
pub fn parse_binomial(text: &str) -> Result<BinomialOrZero, AlgebraError> {
    let text = text.trim();
    if text == "0" {
        return Ok(BinomialOrZero::Zero);
    }
    let parts: Vec<&str> = text.split(" - ").collect();
    match parts.len() {
        1 => Ok(BinomialOrZero::Monomial(parse_monomial(parts[0])?)),
        2 => Ok(BinomialOrZero::difference(
            parse_monomial(parts[0])?,
            parse_monomial(parts[1])?,
        )),
        _ => Err(AlgebraError::ParseError),
    }
}

pub fn parse_monomial(text: &str) -> Result<Monomial, AlgebraError> {
    let text = text.trim();
    if text == "1" {
        return Ok(Monomial::one());
    }
    let mut powers: Vec<(Var, u32)> = Vec::new();
    for factor in text.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| AlgebraError::ParseError)?),
            None => (factor, 1),
        };
        if base == "t" {
            powers.push((Var::Aux, exp));
            continue;
        }
        let inner = base
            .strip_prefix("x(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or(AlgebraError::ParseError)?;
        let (xs, ys) = inner.split_once(',').ok_or(AlgebraError::ParseError)?;
        let x = xs.trim().parse::<u32>().map_err(|_| AlgebraError::ParseError)?;
        let y = ys.trim().parse::<u32>().map_err(|_| AlgebraError::ParseError)?;
        powers.push((Var::Vertex(Vertex::new(x, y)), exp));
    }
    if powers.is_empty() {
        return Err(AlgebraError::ParseError);
    }
    Ok(Monomial::from_powers(powers))
}

pub fn parse_binomials(text: &str) -> Result<GeneratorSet, AlgebraError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_binomial)
        .collect::<Result<Vec<_>, _>>()
        .map(GeneratorSet::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Cell, Interval};

    fn collection(cells: &[(u32, u32)]) -> CellCollection {
        CellCollection::new(cells.iter().map(|&(x, y)| Cell::at(x, y))).unwrap()
    }

    fn v(x: u32, y: u32) -> Vertex {
        Vertex::new(x, y)
    }

    fn minor(lo: (u32, u32), hi: (u32, u32)) -> BinomialOrZero {
        interval_minor(&Interval { lo: v(lo.0, lo.1), hi: v(hi.0, hi.1) }).clone()
    }

    #[test]
    fn lex1_variable_comparison() {
        let p = collection(&[(1, 1), (2, 1), (1, 2), (2, 2)]);
        let o = MonomialOrder::lex1(&p);
        // x_(2,2) > x_(1,3) because 2 > 1 in the first coordinate
        assert_eq!(
            o.compare(&Monomial::var(v(2, 2)), &Monomial::var(v(1, 3))),
            Ordering::Greater
        );
        let m = Monomial::from_vertices([v(1, 1), v(2, 2)]);
        assert_eq!(o.compare(&m, &m), Ordering::Equal);
    }

    #[test]
    fn compare_unknown_variable_errors() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        assert_eq!(
            o.try_compare(&Monomial::var(v(9, 9)), &Monomial::one()),
            Err(AlgebraError::UnknownVariable)
        );
    }

    #[test]
    fn stack_lex_row_order_matches_pivot_rule() {
        // bargraph with heights 1,1,1,4,3 after normalization; the tallest
        // column is column 4 and the pivot sits at x=4
        let p = collection(&[
            (1, 1), (2, 1), (3, 1), (4, 1), (5, 1),
            (2, 2), (3, 2), (4, 2), (5, 2),
            (4, 3), (5, 3),
            (4, 4),
        ]);
        let o = MonomialOrder::stack_lex(&p, v(4, 1));
        let row: [Vertex; 6] = [v(4, 2), v(5, 2), v(6, 2), v(3, 2), v(2, 2), v(1, 2)];
        for w in row.windows(2) {
            assert_eq!(
                o.compare(&Monomial::var(w[0]), &Monomial::var(w[1])),
                Ordering::Greater,
                "{:?} should exceed {:?}",
                w[0],
                w[1]
            );
        }
    }

    #[test]
    fn reduce_by_self_gives_zero() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let f = minor((1, 1), (2, 2));
        assert!(reduce(&f, &[f.clone()], &o).is_zero());
    }

    #[test]
    fn reduce_by_empty_basis_is_identity() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let f = minor((1, 1), (2, 2));
        assert_eq!(reduce(&f, &[], &o), f);
    }

    #[test]
    fn reduce_is_idempotent() {
        let p = collection(&[(1, 1), (2, 1)]);
        let o = MonomialOrder::lex1(&p);
        let basis = [minor((1, 1), (2, 2)), minor((2, 1), (3, 2))];
        let f = minor((1, 1), (3, 2));
        let once = reduce(&f, &basis, &o);
        let twice = reduce(&once, &basis, &o);
        assert_eq!(once, twice);
    }

    #[test]
    fn s_pair_of_equal_elements_is_zero() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let f = minor((1, 1), (2, 2));
        assert!(s_pair(&f, &f, &o).is_zero());
    }

    #[test]
    fn s_pair_monomial_binomial() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let f = minor((1, 1), (2, 2));
        let (lead, _) = f.lead_trail(&o).unwrap();
        let m = BinomialOrZero::Monomial(lead.clone());
        let s = s_pair(&m, &f, &o);
        // S(lead, lead - trail) = trail
        match s {
            BinomialOrZero::Monomial(t) => {
                assert_eq!(&t, f.lead_trail(&o).unwrap().1.unwrap());
            }
            other => panic!("expected monomial, got {other}"),
        }
    }

    #[test]
    fn buchberger_single_minor_is_itself() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([minor((1, 1), (2, 2))]);
        let gb = buchberger(&gens, &o);
        assert_eq!(gb.elements(), gens.elements());
    }

    #[test]
    fn buchberger_all_s_pairs_reduce_to_zero() {
        // horizontal domino: three minors, classical 2x3 determinantal ideal
        let p = collection(&[(1, 1), (2, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([
            minor((1, 1), (2, 2)),
            minor((2, 1), (3, 2)),
            minor((1, 1), (3, 2)),
        ]);
        let gb = buchberger(&gens, &o);
        for f in gb.elements() {
            for g in gb.elements() {
                let s = s_pair(f, g, &o);
                assert!(gb.normal_form(&s).is_zero());
            }
        }
    }

    #[test]
    fn buchberger_independent_of_generator_permutation() {
        let p = collection(&[(1, 1), (2, 1)]);
        let o = MonomialOrder::lex1(&p);
        let a = minor((1, 1), (2, 2));
        let b = minor((2, 1), (3, 2));
        let c = minor((1, 1), (3, 2));
        let g1 = buchberger(&GeneratorSet::new([a.clone(), b.clone(), c.clone()]), &o);
        let g2 = buchberger(&GeneratorSet::new([c, b, a]), &o);
        assert_eq!(g1.elements(), g2.elements());
    }

    #[test]
    fn membership_of_generator() {
        let p = collection(&[(1, 1), (2, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([minor((1, 1), (2, 2)), minor((2, 1), (3, 2))]);
        assert!(membership(&minor((1, 1), (2, 2)), &gens, &o));
    }

    #[test]
    fn ideal_equal_reflexive() {
        let p = collection(&[(1, 1), (2, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([minor((1, 1), (2, 2)), minor((2, 1), (3, 2))]);
        assert!(ideal_equal(&gens, &gens, &o));
    }

    #[test]
    fn saturate_prime_ideal_is_identity() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([minor((1, 1), (2, 2))]);
        let sat = saturate(&gens, v(1, 1), &o);
        assert!(ideal_equal(&gens, &sat, &o));
    }

    #[test]
    fn saturate_all_idempotent() {
        let p = collection(&[(2, 1), (1, 2), (3, 2), (2, 3)]);
        let o = MonomialOrder::lex1(&p);
        let gens: GeneratorSet = p
            .cells()
            .map(|c| {
                let lo = c.lower_left;
                minor((lo.x, lo.y), (lo.x + 1, lo.y + 1))
            })
            .collect();
        let once = saturate_all(&gens, &p, &o);
        let twice = saturate_all(&once, &p, &o);
        assert_eq!(once, twice);
    }

    #[test]
    fn saturation_contains_the_input_ideal() {
        let p = collection(&[(2, 1), (1, 2), (3, 2), (2, 3)]);
        let o = MonomialOrder::lex1(&p);
        let gens: GeneratorSet = p
            .cells()
            .map(|c| {
                let lo = c.lower_left;
                minor((lo.x, lo.y), (lo.x + 1, lo.y + 1))
            })
            .collect();
        let sat = saturate_all(&gens, &p, &o);
        let gb = buchberger(&sat, &o);
        assert!(gb.contains_all(&gens));
    }

    #[test]
    fn cancellation_is_observable() {
        let p = collection(&[(2, 1), (1, 2), (3, 2), (2, 3)]);
        let o = MonomialOrder::lex1(&p);
        let gens: GeneratorSet = p
            .cells()
            .map(|c| {
                let lo = c.lower_left;
                minor((lo.x, lo.y), (lo.x + 1, lo.y + 1))
            })
            .collect();
        let token = CancelToken::new();
        token.cancel();
        assert_eq!(try_saturate_all(&gens, &p, &o, &token), Err(Cancelled));
    }

    #[test]
    fn degree2_component_of_single_cell() {
        let p = collection(&[(1, 1)]);
        let o = MonomialOrder::lex1(&p);
        let gens = GeneratorSet::new([minor((1, 1), (2, 2))]);
        let d2 = degree2_component(&gens, &p, &o);
        assert_eq!(d2, vec![minor((1, 1), (2, 2))]);
    }

    #[test]
    fn parse_round_trip() {
        let texts = [
            "x(2,4)*x(4,3) - x(3,4)*x(1,3)",
            "x(1,1)^2*x(3,1) - x(2,2)^3",
            "x(1,1)*x(2,2)",
            "0",
        ];
        for t in texts {
            let e = parse_binomial(t).unwrap();
            let printed = alloc::format!("{e}");
            assert_eq!(parse_binomial(&printed).unwrap(), e);
        }
        assert!(parse_binomial("x(1,1) -").is_err());
        assert!(parse_binomial("y(1,1)").is_err());
    }
}
