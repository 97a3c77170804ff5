//! Initial ideals, Hilbert series numerators, Krull dimension, h-vectors and
//! the palindromicity oracle for the Gorenstein property.
//!
//! The Hilbert series of `S/M` for a monomial ideal `M` in `n` variables is
//! written `N(t) / (1-t)^n`; dividing the numerator by its exact power of
//! `(1-t)` gives the h-vector over `(1-t)^dim`.  For the coordinate rings of
//! convex collections (Cohen-Macaulay domains) a palindromic h-vector is
//! equivalent to Gorenstein, which is the independent cross-check used by
//! the stack analysis.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{buchberger, GroebnerBasis, Monomial, MonomialOrder, Var};
use crate::constructions::inner_minors;
use crate::grid::CellCollection;

/// Monomial ideal given by its minimal generators (pairwise non-dividing).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new<I>(gens: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        gens.sort();
        gens.dedup();
        let minimal: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Self { generators: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn is_squarefree(&self) -> bool {
        self.generators.iter().all(Monomial::squarefree)
    }
}

/// Lead terms of a reduced Gröbner basis; minimal generators by reducedness.
pub fn initial_ideal(gb: &GroebnerBasis) -> MonomialIdeal {
    MonomialIdeal::new(gb.lead_terms())
}

/// Dense integer polynomial in one variable `t`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<i64>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = vec![0i64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Self { coeffs }.trim()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coeffs = vec![0i64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] -= c;
        }
        Self { coeffs }.trim()
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0i64; k];
        coeffs.extend(&self.coeffs);
        Self { coeffs }
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * t + c)
    }

    /// Exact division by `(1-t)`; `None` when `1` is not a root.
    pub fn div_one_minus_t(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.eval(1) != 0 {
            return None;
        }
        // synthetic division: N(t) = (1-t) Q(t) with deg Q = deg N - 1
        let n = self.coeffs.len();
        let mut q = vec![0i64; n - 1];
        // process from the top: coefficient of t^n in (1-t)Q is -q_{n-1}
        let mut carry = 0i64;
        for i in (0..n - 1).rev() {
            // coefficient of t^{i+1}: q_{i+1} ... relation c_{i+1} = q_{i+1} - q_i
            let c = self.coeffs[i + 1];
            let qi = carry - c;
            q[i] = qi;
            carry = qi;
        }
        debug_assert_eq!(self.coeffs[0], carry, "division remainder");
        Some(Self { coeffs: q }.trim())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c > 0 { "+" } else { "-" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// Numerator of the Hilbert series of `S/M` over `(1-t)^nvars`, by the pivot
/// recursion `N(M) = N(M + (x)) + t·N(M : x)` with the most frequent
/// variable as pivot.
pub fn hilbert_numerator(ideal: &MonomialIdeal, _nvars: usize) -> IntPoly {
    numerator_rec(ideal.generators())
}

fn numerator_rec(gens: &[Monomial]) -> IntPoly {
    if gens.is_empty() {
        return IntPoly::one();
    }
    if gens.iter().any(Monomial::is_one) {
        return IntPoly::zero();
    }
    // pairwise coprime generators split multiplicatively
    if pairwise_coprime(gens) {
        let mut acc = IntPoly::one();
        for g in gens {
            let factor = IntPoly::one().sub(&IntPoly::one().shift(g.degree() as usize));
            acc = poly_mul(&acc, &factor);
        }
        return acc;
    }
    let pivot = most_frequent_var(gens);
    // M + (x): generators without x, plus x itself
    let mut with_var: Vec<Monomial> = gens
        .iter()
        .filter(|g| g.exponent(pivot) == 0)
        .cloned()
        .collect();
    with_var.push(Monomial::from_powers([(pivot, 1)]));
    let with_var = MonomialIdeal::new(with_var);
    // M : x, quotient each generator by one power of the pivot
    let quotient = MonomialIdeal::new(gens.iter().map(|g| {
        let e = g.exponent(pivot);
        if e == 0 {
            g.clone()
        } else {
            Monomial::from_powers(
                g.vars().map(|(v, k)| if v == pivot { (v, k - 1) } else { (v, k) }),
            )
        }
    }));
    let a = numerator_rec(with_var.generators());
    let b = numerator_rec(quotient.generators());
    a.add(&b.shift(1))
}

fn pairwise_coprime(gens: &[Monomial]) -> bool {
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            if !gens[i].gcd_is_one(&gens[j]) {
                return false;
            }
        }
    }
    true
}

fn most_frequent_var(gens: &[Monomial]) -> Var {
    let mut counts: BTreeMap<Var, usize> = BTreeMap::new();
    for g in gens {
        for (v, _) in g.vars() {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .map(|(v, _)| v)
        .expect("nonempty generators")
}

fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    let mut coeffs = vec![0i64; a.coeffs().len() + b.coeffs().len() - 1];
    for (i, &x) in a.coeffs().iter().enumerate() {
        for (j, &y) in b.coeffs().iter().enumerate() {
            coeffs[i + j] += x * y;
        }
    }
    IntPoly { coeffs }.trim()
}

/// Graded data of a quotient ring derived from a Hilbert numerator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub numerator: IntPoly,
    pub dim: usize,
    pub codim: usize,
    pub h_vector: Vec<i64>,
    /// Palindromic h-vector.
    pub symmetric: bool,
    /// `h(1)`, the degree of the projective variety for CM inputs.
    pub multiplicity: i64,
}

/// Dimension and h-vector from the numerator of a Hilbert series over
/// `(1-t)^nvars`.
pub fn hilbert_data(numerator: IntPoly, nvars: usize) -> HilbertData {
    let mut h = numerator.clone();
    let mut codim = 0;
    while let Some(q) = h.div_one_minus_t() {
        h = q;
        codim += 1;
        if h.is_zero() {
            break;
        }
    }
    assert!(codim <= nvars, "numerator divisible by too many (1-t) factors");
    let dim = nvars - codim;
    let h_vector: Vec<i64> = h.coeffs().to_vec();
    let symmetric = {
        let n = h_vector.len();
        (0..n / 2).all(|i| h_vector[i] == h_vector[n - 1 - i])
    };
    let multiplicity = h.eval(1);
    HilbertData { numerator, dim, codim, h_vector, symmetric, multiplicity }
}

/// Checks asserted by `ring_profile` when the collection is convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingProfile {
    pub data: HilbertData,
    /// Initial ideal of the inner-minor ideal has squarefree generators.
    pub squarefree_initial: bool,
    /// Set when the collection is not convex, where the dimension formulas
    /// are not guaranteed.
    pub non_convex_warning: bool,
    /// `dim = |V(P)| - |P|` (convex collections).
    pub dim_matches_vertex_count: bool,
    /// `dim = size(bounding interval) + 1` (convex weakly connected).
    pub dim_matches_bounding_size: Option<bool>,
    /// `codim = |P|` (convex collections).
    pub codim_matches_cell_count: bool,
}

/// Hilbert data of `K[P] = S/I_P` from the initial ideal under the first
/// lexicographic order, with the dimension and height checks of the convex
/// theory evaluated alongside.
pub fn ring_profile(p: &CellCollection) -> RingProfile {
    let order = MonomialOrder::lex1(p);
    let gb = buchberger(&inner_minors(p), &order);
    let init = initial_ideal(&gb);
    let nvars = p.vertex_count();
    let numerator = hilbert_numerator(&init, nvars);
    let data = hilbert_data(numerator, nvars);
    let classify = p.classify();
    let dim_matches_vertex_count = data.dim == nvars - p.cell_count();
    let dim_matches_bounding_size = if classify.weakly_connected {
        Some(data.dim == p.bounding_interval().size() as usize + 1)
    } else {
        None
    };
    let codim_matches_cell_count = data.codim == p.cell_count();
    RingProfile {
        data,
        squarefree_initial: init.is_squarefree(),
        non_convex_warning: !classify.convex,
        dim_matches_vertex_count,
        dim_matches_bounding_size,
        codim_matches_cell_count,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HilbertError {
    /// The symmetry oracle needs a convex weakly connected collection, where
    /// the coordinate ring is a graded Cohen-Macaulay domain.
    OracleInapplicable,
}

impl fmt::Display for HilbertError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h-vector symmetry oracle needs a convex weakly connected collection")
    }
}

impl core::error::Error for HilbertError {}

/// Stanley's criterion: for a graded Cohen-Macaulay domain, Gorenstein is
/// equivalent to a palindromic h-vector.
pub fn h_symmetry(p: &CellCollection) -> Result<bool, HilbertError> {
    let classify = p.classify();
    if !(classify.convex && classify.weakly_connected) {
        return Err(HilbertError::OracleInapplicable);
    }
    Ok(ring_profile(p).data.symmetric)
}
