//! Independent brute-force verifiers for the symbolic results, usable at
//! desk scale: exhaustive finite-field point scans, degree-bounded kernel
//! enumeration for the two monomial maps, and integer-lattice membership
//! via Hermite normal form.
//!
//! Finite-field agreement is a necessary condition only and every report
//! says so; the scans are exact within their caps.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{BinomialOrZero, GeneratorSet, Monomial, Var};
use crate::constructions::{toric_monomials, LatticeVector, LaurentMonomial};
use crate::grid::{CellCollection, Vertex};
use crate::intmat;
use crate::stack::{minimal_primes, stack_frame, StackError};

/// Hard cap on the number of scanned assignments.
pub const POINT_CAP: u64 = 1 << 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    /// The assignment space or the monomial count exceeds the cap.
    TooLarge,
    NotAStack,
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooLarge => write!(f, "brute-force scan exceeds the size cap"),
            OracleError::NotAStack => write!(f, "collection is not a stack polyomino"),
        }
    }
}

impl core::error::Error for OracleError {}

impl From<StackError> for OracleError {
    fn from(_: StackError) -> Self {
        OracleError::NotAStack
    }
}

/// Set of points of `F_q^vars`, stored as a bitset over base-`q` encoded
/// assignments in the fixed vertex order.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    pub q: u8,
    vars: Vec<Vertex>,
    bits: Vec<u64>,
    count: u64,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointSet(q={}, vars={}, points={})", self.q, self.vars.len(), self.count)
    }
}

impl PointSet {
    pub fn vars(&self) -> &[Vertex] {
        &self.vars
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn contains_index(&self, idx: u64) -> bool {
        self.bits[(idx / 64) as usize] & (1 << (idx % 64)) != 0
    }

    /// Decodes one satisfying assignment per vertex, for inspection.
    pub fn decode(&self, mut idx: u64) -> BTreeMap<Vertex, u8> {
        let mut out = BTreeMap::new();
        for &v in &self.vars {
            out.insert(v, (idx % self.q as u64) as u8);
            idx /= self.q as u64;
        }
        out
    }

    /// Union of point sets over the same variable frame.
    pub fn union(&self, other: &PointSet) -> PointSet {
        assert_eq!(self.vars, other.vars);
        assert_eq!(self.q, other.q);
        let bits: Vec<u64> = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a | b)
            .collect();
        let count = bits.iter().map(|w| w.count_ones() as u64).sum();
        PointSet { q: self.q, vars: self.vars.clone(), bits, count }
    }

    pub fn is_subset_of(&self, other: &PointSet) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Exponent list per generator resolved to variable positions, for fast
/// evaluation during the scan.
struct CompiledGen {
    plus: Vec<(usize, u32)>,
    minus: Option<Vec<(usize, u32)>>,
}

fn compile(
    gens: &GeneratorSet,
    positions: &BTreeMap<Vertex, usize>,
) -> Vec<CompiledGen> {
    let compile_mono = |m: &Monomial| -> Vec<(usize, u32)> {
        m.vars()
            .map(|(v, e)| match v {
                Var::Vertex(p) => (positions[&p], e),
                Var::Aux => panic!("auxiliary variable in a scanned generator"),
            })
            .collect()
    };
    gens.elements()
        .iter()
        .filter_map(|g| match g {
            BinomialOrZero::Zero => None,
            BinomialOrZero::Monomial(m) => {
                Some(CompiledGen { plus: compile_mono(m), minus: None })
            }
            BinomialOrZero::Binomial(m, n) => Some(CompiledGen {
                plus: compile_mono(m),
                minus: Some(compile_mono(n)),
            }),
        })
        .collect()
}

fn eval(mono: &[(usize, u32)], point: &[u8], q: u8) -> u8 {
    let mut acc: u32 = 1;
    for &(pos, e) in mono {
        let v = point[pos] as u32;
        if v == 0 {
            return 0;
        }
        for _ in 0..e {
            acc = (acc * v) % q as u32;
        }
    }
    acc as u8
}

/// All points of `F_q^{V(P)}` annihilating every generator.  The scan is
/// exact; only the size cap restricts it.
pub fn variety_points(
    p: &CellCollection,
    gens: &GeneratorSet,
    q: u8,
) -> Result<PointSet, OracleError> {
    assert!(q == 2 || q == 3, "prime fields F_2 and F_3 only");
    let vars: Vec<Vertex> = p.vertices().collect();
    let total = (q as u64).checked_pow(vars.len() as u32).filter(|&t| t <= POINT_CAP);
    let Some(total) = total else {
        return Err(OracleError::TooLarge);
    };
    let positions: BTreeMap<Vertex, usize> =
        vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let compiled = compile(gens, &positions);
    let mut bits = vec![0u64; total.div_ceil(64) as usize];
    let mut count = 0u64;
    let mut point = vec![0u8; vars.len()];
    for idx in 0..total {
        // decode incrementally: add 1 in base q
        if idx > 0 {
            let mut i = 0;
            loop {
                point[i] += 1;
                if point[i] == q {
                    point[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
        let ok = compiled.iter().all(|g| {
            let lhs = eval(&g.plus, &point, q);
            match &g.minus {
                None => lhs == 0,
                Some(m) => lhs == eval(m, &point, q),
            }
        });
        if ok {
            bits[(idx / 64) as usize] |= 1 << (idx % 64);
            count += 1;
        }
    }
    Ok(PointSet { q, vars, bits, count })
}

/// Result of the finite-field cover check for the minimal primes of
/// `(I_P, x_c)`: a necessary condition, reported as pass/fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    pub passed: bool,
    pub ideal_points: u64,
    pub union_points: u64,
    pub prime_points: Vec<u64>,
}

/// Over `F_2`, the points of `V(I_P, x_c)` must equal the union of the
/// points of the listed minimal primes.
pub fn decomposition_cover(p: &CellCollection) -> Result<CoverReport, OracleError> {
    let primes = minimal_primes(p)?;
    decomposition_cover_of(p, &primes)
}

/// Same check against an explicit prime list (negative controls drop one).
pub fn decomposition_cover_of(
    p: &CellCollection,
    primes: &[crate::stack::PrimeDescription],
) -> Result<CoverReport, OracleError> {
    let frame = stack_frame(p)?;
    let target_gens = crate::constructions::inner_minors(p)
        .with_element(BinomialOrZero::Monomial(Monomial::var(frame.c())));
    let target = variety_points(p, &target_gens, 2)?;
    let mut union: Option<PointSet> = None;
    let mut prime_points = Vec::new();
    for prime in primes {
        let pts = variety_points(p, &prime.generators(), 2)?;
        prime_points.push(pts.len());
        union = Some(match union {
            None => pts,
            Some(u) => u.union(&pts),
        });
    }
    let union = union.expect("at least one prime");
    Ok(CoverReport {
        passed: union == target,
        ideal_points: target.len(),
        union_points: union.len(),
        prime_points,
    })
}

/// Which monomial map the kernel enumeration uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KernelMap {
    /// Bipartite edge map `x_(i,j) ↦ s_i t_j`; kernel is the cycle ideal.
    Phi,
    /// Recursive free-vertex Laurent map `x_a ↦ u_a`; kernel is the lattice
    /// ideal.
    Psi,
}

/// Cap on the number of enumerated monomials.
pub const MONOMIAL_CAP: usize = 2_000_000;

/// All binomials `m1 - m2` of degree at most `degree` whose two sides have
/// the same image under the chosen map, by exhaustive enumeration and
/// bucketing on the image vector.
pub fn kernel_binomials_bounded(
    p: &CellCollection,
    map: KernelMap,
    degree: u32,
) -> Result<Vec<BinomialOrZero>, OracleError> {
    assert!(degree <= 4, "degree-bounded enumeration is capped at 4");
    let vars: Vec<Vertex> = p.vertices().collect();
    // image of each variable as a sparse integer vector
    let images: BTreeMap<Vertex, LaurentMonomial> = match map {
        KernelMap::Psi => toric_monomials(p),
        KernelMap::Phi => vars
            .iter()
            .map(|&v| {
                // s_i t_j encoded on synthetic vertices (i,0) and (0,j)
                let mut m = LaurentMonomial::generator(Vertex::new(v.x, 0));
                m = m.mul(&LaurentMonomial::generator(Vertex::new(0, v.y)));
                (v, m)
            })
            .collect(),
    };
    let mut monomials: Vec<Monomial> = vec![Monomial::one()];
    // monomials of degree <= D with nondecreasing variable index
    let mut frontier: Vec<(Monomial, usize)> =
        vec![(Monomial::one(), 0)];
    for _ in 0..degree {
        let mut next = Vec::new();
        for (m, start) in &frontier {
            for (i, &v) in vars.iter().enumerate().skip(*start) {
                let bigger = m.mul(&Monomial::var(v));
                next.push((bigger.clone(), i));
                monomials.push(bigger);
                if monomials.len() > MONOMIAL_CAP {
                    return Err(OracleError::TooLarge);
                }
            }
        }
        frontier = next;
    }
    let mut buckets: BTreeMap<LaurentMonomial, Vec<Monomial>> = BTreeMap::new();
    for m in monomials {
        let img = LaurentMonomial::image_of(&m, &images);
        buckets.entry(img).or_default().push(m);
    }
    let mut out = Vec::new();
    for (_, ms) in buckets {
        for i in 0..ms.len() {
            for j in (i + 1)..ms.len() {
                out.push(BinomialOrZero::difference(ms[i].clone(), ms[j].clone()));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Integer-lattice membership by Hermite-normal-form reduction over the
/// union of the supports.
pub fn lattice_membership(v: &LatticeVector, basis: &[LatticeVector]) -> bool {
    let mut universe: Vec<Vertex> = v.support().collect();
    for b in basis {
        universe.extend(b.support());
    }
    universe.sort();
    universe.dedup();
    let mat: intmat::Mat = basis.iter().map(|b| b.to_dense(&universe)).collect();
    intmat::lattice_contains(&mat, &v.to_dense(&universe))
}

/// Hermite normal form of a family of vertex vectors over a fixed universe;
/// equal outputs mean equal lattices.
pub fn lattice_hnf(vectors: &[LatticeVector], universe: &[Vertex]) -> intmat::Mat {
    let mat: intmat::Mat = vectors.iter().map(|b| b.to_dense(universe)).collect();
    intmat::row_hnf(&mat)
}
