//! Implementations behind the CLI subcommands.  Each command builds a
//! serializable payload plus its text rendering; the caller wraps them in a
//! report and maps failures to exit codes.

use serde::Serialize;
use std::fmt::Write as _;

use polycell_core::algebra::{
    buchberger, degree2_component, BinomialOrZero, GroebnerBasis, Monomial, MonomialOrder,
};
use polycell_core::constructions::{
    admissible_check, chain_compare, compute_l, cycle_binomials, inner_minors, labeling_kernel,
    lattice_basis, maximal_intervals_both, reduce_labeling, ChainCase, Labeling, Reduction,
};
use polycell_core::grid::{CellCollection, Interval, Vertex};
use polycell_core::hilbert::ring_profile;
use polycell_core::oracle::{
    decomposition_cover, kernel_binomials_bounded, lattice_hnf, KernelMap, OracleError,
};
use polycell_core::stack::{class_group_with, minimal_primes, stack_frame, PrimeKind};

/// Failure modes mapped to exit codes by the binary.
#[derive(Debug)]
pub enum CmdError {
    /// Bad arguments or inputs: exit code 2.
    Usage(String),
    /// A brute-force cap was exceeded: exit code 3.
    CapExceeded(String),
}

impl std::fmt::Display for CmdError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CmdError::Usage(m) => write!(f, "{m}"),
            CmdError::CapExceeded(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CmdError {}

/// A rendered command result; `check_failed` drives exit code 1.
pub struct Outcome {
    pub payload: serde_json::Value,
    pub text: String,
    pub check_failed: bool,
}

fn outcome<P: Serialize>(payload: &P, text: String, check_failed: bool) -> Outcome {
    Outcome {
        payload: serde_json::to_value(payload).expect("serializable payload"),
        text,
        check_failed,
    }
}

fn xy(v: Vertex) -> [u32; 2] {
    [v.x, v.y]
}

fn interval_json(i: &Interval) -> [[u32; 2]; 2] {
    [xy(i.lo), xy(i.hi)]
}

// ---------------------------------------------------------------- classify

#[derive(Serialize)]
struct ClassifyPayload {
    cells: Vec<[u32; 2]>,
    cell_count: usize,
    vertex_count: usize,
    row_convex: bool,
    column_convex: bool,
    convex: bool,
    polyomino: bool,
    weakly_connected: bool,
    simple: bool,
    stack: bool,
    components: Vec<Vec<[u32; 2]>>,
    component_graph_edges: Vec<[usize; 2]>,
    component_graph_is_tree: bool,
    interior_vertices: Vec<[u32; 2]>,
    free_vertex_count: usize,
}

pub fn classify(p: &CellCollection) -> Outcome {
    let r = p.classify();
    let g = p.component_graph();
    let (interior, _) = p.interior_boundary();
    let payload = ClassifyPayload {
        cells: p.cells().map(|c| xy(c.lower_left)).collect(),
        cell_count: p.cell_count(),
        vertex_count: p.vertex_count(),
        row_convex: r.row_convex,
        column_convex: r.column_convex,
        convex: r.convex,
        polyomino: r.polyomino,
        weakly_connected: r.weakly_connected,
        simple: r.simple,
        stack: r.stack,
        components: r
            .components
            .iter()
            .map(|c| c.cells().map(|c| xy(c.lower_left)).collect())
            .collect(),
        component_graph_edges: g.edges.iter().map(|&(a, b)| [a, b]).collect(),
        component_graph_is_tree: g.is_tree,
        interior_vertices: interior.iter().map(|&v| xy(v)).collect(),
        free_vertex_count: p.free_vertices().len(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "cells: {}", payload.cell_count);
    let _ = writeln!(text, "vertices: {}", payload.vertex_count);
    for (name, value) in [
        ("row_convex", r.row_convex),
        ("column_convex", r.column_convex),
        ("convex", r.convex),
        ("polyomino", r.polyomino),
        ("weakly_connected", r.weakly_connected),
        ("simple", r.simple),
        ("stack", r.stack),
    ] {
        let _ = writeln!(text, "{name}: {value}");
    }
    let _ = writeln!(text, "components: {}", payload.components.len());
    let _ = writeln!(text, "component_graph_is_tree: {}", g.is_tree);
    let _ = writeln!(text, "interior_vertices: {}", payload.interior_vertices.len());
    let _ = writeln!(text, "free_vertices: {}", payload.free_vertex_count);
    outcome(&payload, text, false)
}

// ------------------------------------------------------------------ ideals

#[derive(Serialize)]
struct IdealsPayload {
    case: u8,
    case_description: String,
    i_eq_l: bool,
    l_eq_j: bool,
    witness_l_not_i: Option<String>,
    witness_j_not_l: Option<String>,
    inner_generators: usize,
    lattice_generators: usize,
    cycle_generators: usize,
}

pub fn ideals_compare(p: &CellCollection) -> Outcome {
    let r = chain_compare(p);
    let order = MonomialOrder::lex1(p);
    let payload = IdealsPayload {
        case: r.case.index(),
        case_description: match r.case {
            ChainCase::Case1 => "I = L ⊊ J".into(),
            ChainCase::Case2 => "I ⊊ L ⊊ J".into(),
            ChainCase::Case3 => "L = J".into(),
        },
        i_eq_l: r.i_eq_l,
        l_eq_j: r.l_eq_j,
        witness_l_not_i: r.witness_l_not_i.as_ref().map(|w| w.to_string()),
        witness_j_not_l: r.witness_j_not_l.as_ref().map(|w| w.to_string()),
        inner_generators: inner_minors(p).len(),
        lattice_generators: compute_l(p, &order).len(),
        cycle_generators: cycle_binomials(p).len(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "case: {} ({})", payload.case, payload.case_description);
    let _ = writeln!(text, "I_eq_L: {}", payload.i_eq_l);
    let _ = writeln!(text, "L_eq_J: {}", payload.l_eq_j);
    if let Some(w) = &payload.witness_l_not_i {
        let _ = writeln!(text, "witness_in_L_not_I: {w}");
    }
    if let Some(w) = &payload.witness_j_not_l {
        let _ = writeln!(text, "witness_in_J_not_L: {w}");
    }
    let _ = writeln!(
        text,
        "generators: inner={} lattice={} cycle={}",
        payload.inner_generators, payload.lattice_generators, payload.cycle_generators
    );
    outcome(&payload, text, false)
}

// ---------------------------------------------------------------- groebner

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderChoice {
    Lex1,
    Lex2,
    StackLex,
}

#[derive(Serialize)]
struct GroebnerPayload {
    order: String,
    ideal: String,
    generator_count: usize,
    basis: Vec<String>,
    lead_terms: Vec<String>,
    squarefree_initial: bool,
    max_degree: u32,
}

pub fn groebner(p: &CellCollection, choice: OrderChoice) -> Result<Outcome, CmdError> {
    let (order, gens, ideal_name, order_name) = match choice {
        OrderChoice::Lex1 => (
            MonomialOrder::lex1(p),
            inner_minors(p),
            "inner_minors".to_string(),
            "lex1".to_string(),
        ),
        OrderChoice::Lex2 => (
            MonomialOrder::lex2(p),
            inner_minors(p),
            "inner_minors".to_string(),
            "lex2".to_string(),
        ),
        OrderChoice::StackLex => {
            let frame = stack_frame(p).map_err(|_| {
                CmdError::Usage("the stacklex order needs a stack polyomino".into())
            })?;
            let c = frame.c();
            (
                MonomialOrder::stack_lex(p, c),
                inner_minors(p).with_element(BinomialOrZero::Monomial(Monomial::var(c))),
                format!("inner_minors_plus_x({},{})", c.x, c.y),
                "stacklex".to_string(),
            )
        }
    };
    let gb = buchberger(&gens, &order);
    let leads = gb.lead_terms();
    let payload = GroebnerPayload {
        order: order_name,
        ideal: ideal_name,
        generator_count: gens.len(),
        basis: gb.elements().iter().map(|e| e.to_string()).collect(),
        lead_terms: leads.iter().map(|m| m.to_string()).collect(),
        squarefree_initial: leads.iter().all(Monomial::squarefree),
        max_degree: gb.elements().iter().map(BinomialOrZero::degree).max().unwrap_or(0),
    };
    let mut text = String::new();
    let _ = writeln!(text, "order: {}", payload.order);
    let _ = writeln!(text, "ideal: {}", payload.ideal);
    let _ = writeln!(text, "basis_size: {}", payload.basis.len());
    let _ = writeln!(text, "squarefree_initial: {}", payload.squarefree_initial);
    let _ = writeln!(text, "max_degree: {}", payload.max_degree);
    for b in &payload.basis {
        let _ = writeln!(text, "  {b}");
    }
    Ok(outcome(&payload, text, false))
}

// ------------------------------------------------------------------- prime

#[derive(Serialize)]
struct PrimePayload {
    prime: bool,
    witness: Option<String>,
}

pub fn prime(p: &CellCollection) -> Outcome {
    let r = chain_compare(p);
    let payload = PrimePayload {
        prime: r.i_eq_l,
        witness: r.witness_l_not_i.as_ref().map(|w| w.to_string()),
    };
    let mut text = String::new();
    let _ = writeln!(text, "prime: {}", payload.prime);
    if let Some(w) = &payload.witness {
        let _ = writeln!(text, "witness_in_L_not_I: {w}");
    }
    outcome(&payload, text, false)
}

// ---------------------------------------------------------------- labeling

#[derive(Serialize)]
struct LabelingCheckPayload {
    admissible: bool,
    violations: Vec<LabelingViolation>,
}

#[derive(Serialize)]
struct LabelingViolation {
    interval: [[u32; 2]; 2],
    sum: i64,
}

pub fn labeling_check(p: &CellCollection, alpha: &Labeling) -> Result<Outcome, CmdError> {
    let admissible = admissible_check(p, alpha)
        .map_err(|e| CmdError::Usage(format!("labeling rejected: {e}")))?;
    let violations: Vec<LabelingViolation> = maximal_intervals_both(p)
        .iter()
        .filter_map(|int| {
            let sum = alpha.interval_sum(int);
            (sum != 0).then_some(LabelingViolation { interval: interval_json(int), sum })
        })
        .collect();
    let payload = LabelingCheckPayload { admissible, violations };
    let mut text = String::new();
    let _ = writeln!(text, "admissible: {admissible}");
    for v in &payload.violations {
        let _ = writeln!(
            text,
            "violation: [({},{}),({},{})] sums to {}",
            v.interval[0][0], v.interval[0][1], v.interval[1][0], v.interval[1][1], v.sum
        );
    }
    Ok(outcome(&payload, text, false))
}

#[derive(Serialize)]
struct LabelingReducePayload {
    outcome: String,
    steps: usize,
    trace: Vec<Vec<[i64; 3]>>,
    stuck_witness: Option<Vec<[i64; 3]>>,
}

fn labeling_json(alpha: &Labeling) -> Vec<[i64; 3]> {
    alpha
        .iter()
        .map(|(v, k)| [v.x as i64, v.y as i64, k])
        .collect()
}

pub fn labeling_reduce(
    p: &CellCollection,
    alpha: &Labeling,
    budget: usize,
) -> Result<Outcome, CmdError> {
    let reduction = reduce_labeling(p, alpha, budget)
        .map_err(|e| CmdError::Usage(format!("labeling rejected: {e}")))?;
    let (name, trace, witness) = match &reduction {
        Reduction::ReducedToZero { trace } => ("reduced_to_zero", trace.clone(), None),
        Reduction::Stuck { witness } => ("stuck", Vec::new(), Some(witness.clone())),
        Reduction::BudgetExhausted => ("budget_exhausted", Vec::new(), None),
    };
    let payload = LabelingReducePayload {
        outcome: name.to_string(),
        steps: trace.len().saturating_sub(1),
        trace: trace.iter().map(labeling_json).collect(),
        stuck_witness: witness.as_ref().map(labeling_json),
    };
    let mut text = String::new();
    let _ = writeln!(text, "outcome: {}", payload.outcome);
    let _ = writeln!(text, "steps: {}", payload.steps);
    for (i, state) in payload.trace.iter().enumerate() {
        let line: Vec<String> = state
            .iter()
            .map(|[x, y, v]| format!("{x} {y} {v}"))
            .collect();
        let rendered = if line.is_empty() { "0".to_string() } else { line.join(", ") };
        let _ = writeln!(text, "  step {i}: {rendered}");
    }
    if let Some(w) = &payload.stuck_witness {
        let line: Vec<String> = w.iter().map(|[x, y, v]| format!("{x} {y} {v}")).collect();
        let _ = writeln!(text, "stuck_at: {}", line.join(", "));
    }
    let failed = name != "reduced_to_zero";
    Ok(outcome(&payload, text, failed))
}

// ------------------------------------------------------------------- stack

#[derive(Serialize)]
struct StackPayload {
    frame: FrameJson,
    minimal_primes: Vec<PrimeJson>,
    class_group: ClassGroupJson,
    h_vector: Vec<i64>,
    h_symmetric: bool,
    oracle_agrees: bool,
}

#[derive(Serialize)]
struct FrameJson {
    bottom: [[u32; 2]; 2],
    cd: [[u32; 2]; 2],
    c: [u32; 2],
    s: usize,
    e_list: Vec<[u32; 2]>,
    m: Vec<i64>,
    n: Vec<i64>,
    m_from_maximal: Vec<i64>,
    g_h: Vec<[[u32; 2]; 2]>,
}

#[derive(Serialize)]
struct PrimeJson {
    kind: String,
    vanishing: Vec<[u32; 2]>,
    residual_generators: usize,
}

#[derive(Serialize)]
struct ClassGroupJson {
    rank: usize,
    basis: Vec<String>,
    relation: String,
    canonical: Vec<i64>,
    gorenstein: bool,
}

pub fn stack_analyze(p: &CellCollection) -> Result<Outcome, CmdError> {
    let frame = stack_frame(p)
        .map_err(|_| CmdError::Usage("input is not a stack polyomino".into()))?;
    let primes = minimal_primes(p).expect("frame exists");
    let group = class_group_with(&frame);
    let profile = ring_profile(p);
    let h_symmetric = profile.data.symmetric;
    let oracle_agrees = h_symmetric == group.gorenstein;
    let payload = StackPayload {
        frame: FrameJson {
            bottom: interval_json(&frame.bottom),
            cd: interval_json(&frame.cd),
            c: xy(frame.c()),
            s: frame.s(),
            e_list: frame.e_list.iter().map(|&v| xy(v)).collect(),
            m: frame.m.clone(),
            n: frame.n.clone(),
            m_from_maximal: frame.m_from_maximal.clone(),
            g_h: frame.g_h.iter().map(interval_json).collect(),
        },
        minimal_primes: primes
            .iter()
            .map(|d| PrimeJson {
                kind: match d.kind {
                    PrimeKind::P1 => "P1".to_string(),
                    PrimeKind::P2 => "P2".to_string(),
                    PrimeKind::Q(j) => format!("Q{j}"),
                },
                vanishing: d.vanishing_vertices.iter().map(|&v| xy(v)).collect(),
                residual_generators: d.residual_generators.len(),
            })
            .collect(),
        class_group: ClassGroupJson {
            rank: group.rank,
            basis: group.basis.clone(),
            relation: group.relation.clone(),
            canonical: group.canonical.clone(),
            gorenstein: group.gorenstein,
        },
        h_vector: profile.data.h_vector.clone(),
        h_symmetric,
        oracle_agrees,
    };
    let mut text = String::new();
    let f = &payload.frame;
    let _ = writeln!(text, "c: ({},{})", f.c[0], f.c[1]);
    let _ = writeln!(text, "s: {}", f.s);
    let _ = writeln!(
        text,
        "e_list: {}",
        f.e_list
            .iter()
            .map(|[x, y]| format!("({x},{y})"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(text, "m: {:?}", f.m);
    let _ = writeln!(text, "n: {:?}", f.n);
    let _ = writeln!(text, "m_from_maximal: {:?}", f.m_from_maximal);
    for pj in &payload.minimal_primes {
        let first = pj.vanishing.first().map(|[x, y]| format!("({x},{y})")).unwrap_or_default();
        let last = pj.vanishing.last().map(|[x, y]| format!("({x},{y})")).unwrap_or_default();
        let _ = writeln!(
            text,
            "prime {}: {} vanishing vertices {}..{}",
            pj.kind,
            pj.vanishing.len(),
            first,
            last
        );
    }
    let _ = writeln!(text, "class_group_rank: {}", payload.class_group.rank);
    let _ = writeln!(text, "canonical_class: {:?}", payload.class_group.canonical);
    let _ = writeln!(text, "gorenstein: {}", payload.class_group.gorenstein);
    let _ = writeln!(text, "h_vector: {:?}", payload.h_vector);
    let _ = writeln!(text, "h_symmetric: {h_symmetric}");
    let _ = writeln!(text, "oracle_agrees: {oracle_agrees}");
    Ok(outcome(&payload, text, !oracle_agrees))
}

// ------------------------------------------------------------------ oracle

#[derive(Serialize)]
struct OraclePayload {
    note: String,
    checks: Vec<CheckJson>,
    all_passed: bool,
}

#[derive(Serialize)]
struct CheckJson {
    name: String,
    passed: bool,
    detail: String,
}

pub fn oracle(p: &CellCollection, q: u8, degree: u32) -> Result<Outcome, CmdError> {
    if !(q == 2 || q == 3) {
        return Err(CmdError::Usage("only F_2 and F_3 scans are supported".into()));
    }
    if degree > 4 {
        return Err(CmdError::Usage("kernel enumeration is capped at degree 4".into()));
    }
    let mut checks: Vec<CheckJson> = Vec::new();
    let order = MonomialOrder::lex1(p);
    let classify = p.classify();

    // two-sided degree-bounded agreement of the psi kernel with the lattice
    // ideal, and of the phi kernel with the cycle ideal
    let lattice = compute_l(p, &order);
    let gb_lattice = GroebnerBasis::from_known_basis(&lattice, &order);
    let cycles = cycle_binomials(p);
    let gb_cycles = GroebnerBasis::from_known_basis(&cycles, &order);
    let cap_err = |e: OracleError| match e {
        OracleError::TooLarge => CmdError::CapExceeded("enumeration cap exceeded".into()),
        OracleError::NotAStack => CmdError::Usage("not a stack".into()),
    };
    for (map, gb, name) in [
        (KernelMap::Psi, &gb_lattice, "psi_kernel_vs_lattice_ideal"),
        (KernelMap::Phi, &gb_cycles, "phi_kernel_vs_cycle_ideal"),
    ] {
        let found = kernel_binomials_bounded(p, map, degree).map_err(cap_err)?;
        let forward = found.iter().all(|f| gb.contains(f));
        let backward = gb
            .elements()
            .iter()
            .filter(|g| g.degree() <= degree)
            .all(|g| found.binary_search(g).is_ok());
        checks.push(CheckJson {
            name: format!("{name}_deg{degree}"),
            passed: forward && backward,
            detail: format!(
                "{} enumerated binomials, forward={forward}, backward={backward}",
                found.len()
            ),
        });
    }

    // degree-2 graded pieces of the inner and lattice ideals coincide
    let d2_inner = degree2_component(&inner_minors(p), p, &order);
    let d2_lattice = degree2_component(&lattice, p, &order);
    checks.push(CheckJson {
        name: "degree2_inner_equals_lattice".into(),
        passed: d2_inner == d2_lattice,
        detail: format!("{} vs {} basis elements", d2_inner.len(), d2_lattice.len()),
    });

    if classify.simple {
        let universe: Vec<Vertex> = p.vertices().collect();
        let kernel = labeling_kernel(p);
        let basis = lattice_basis(p);
        let equal = lattice_hnf(&kernel, &universe) == lattice_hnf(&basis, &universe);
        checks.push(CheckJson {
            name: "labeling_kernel_equals_cell_lattice".into(),
            passed: equal,
            detail: format!(
                "kernel rank {} vs cell count {}",
                kernel.len(),
                basis.len()
            ),
        });
    }

    if classify.stack {
        match decomposition_cover(p) {
            Ok(report) => checks.push(CheckJson {
                name: "f2_decomposition_cover".into(),
                passed: report.passed,
                detail: format!(
                    "ideal points {}, union {}, per prime {:?}",
                    report.ideal_points, report.union_points, report.prime_points
                ),
            }),
            Err(OracleError::TooLarge) => {
                return Err(CmdError::CapExceeded(
                    "finite-field scan exceeds the point cap".into(),
                ))
            }
            Err(OracleError::NotAStack) => unreachable!("stack flag checked"),
        }
    }

    let all_passed = checks.iter().all(|c| c.passed);
    let payload = OraclePayload {
        note: "finite-field and degree-bounded checks are necessary conditions only".into(),
        checks,
        all_passed,
    };
    let mut text = String::new();
    let _ = writeln!(text, "note: {}", payload.note);
    for c in &payload.checks {
        let _ = writeln!(
            text,
            "{}: {} ({})",
            c.name,
            if c.passed { "pass" } else { "FAIL" },
            c.detail
        );
    }
    let _ = writeln!(text, "all_passed: {all_passed}");
    Ok(outcome(&payload, text, !all_passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::fixture;

    #[test]
    fn classify_cross_payload() {
        let out = classify(&fixture("cross").unwrap());
        assert!(out.text.contains("convex: true"));
        assert!(out.text.contains("stack: false"));
        assert!(!out.check_failed);
    }

    #[test]
    fn ideals_windmill_is_case_two() {
        let out = ideals_compare(&fixture("windmill").unwrap());
        assert!(out.text.contains("case: 2"));
    }

    #[test]
    fn groebner_staircase_is_squarefree() {
        let out = groebner(&fixture("staircase4").unwrap(), OrderChoice::Lex1).unwrap();
        assert!(out.text.contains("squarefree_initial: true"));
    }

    #[test]
    fn groebner_stacklex_needs_a_stack() {
        assert!(matches!(
            groebner(&fixture("windmill").unwrap(), OrderChoice::StackLex),
            Err(CmdError::Usage(_))
        ));
    }

    #[test]
    fn prime_verdicts() {
        assert!(prime(&fixture("bridge").unwrap()).text.contains("prime: true"));
        assert!(prime(&fixture("windmill").unwrap()).text.contains("prime: false"));
    }

    #[test]
    fn stack_analyze_staircase4() {
        let out = stack_analyze(&fixture("staircase4").unwrap()).unwrap();
        assert!(out.text.contains("gorenstein: true"));
        assert!(!out.check_failed);
    }

    #[test]
    fn stack_analyze_rejects_cross() {
        assert!(matches!(
            stack_analyze(&fixture("cross").unwrap()),
            Err(CmdError::Usage(_))
        ));
    }

    #[test]
    fn oracle_windmill_passes() {
        let out = oracle(&fixture("windmill").unwrap(), 2, 3).unwrap();
        assert!(!out.check_failed, "{}", out.text);
        assert!(out.text.contains("all_passed: true"));
    }
}
