//! Property-based checks of the algebra layer: order axioms, division,
//! Buchberger postconditions and saturation monotonicity.

use proptest::prelude::*;

use polycell_core::algebra::{
    buchberger, ideal_equal, interval_minor, reduce, s_pair, BinomialOrZero, GeneratorSet,
    Monomial, MonomialOrder,
};
use polycell_core::grid::{Cell, CellCollection, Interval, Vertex};

fn board() -> CellCollection {
    // full 3x3 block: a 4x4 vertex grid to draw variables from
    CellCollection::new(
        (1..=3).flat_map(|x| (1..=3).map(move |y| Cell::at(x, y))),
    )
    .unwrap()
}

fn arb_monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(((1u32..=4, 1u32..=4), 0u32..3), 0..5).prop_map(|powers| {
        Monomial::from_powers(
            powers
                .into_iter()
                .map(|((x, y), e)| (polycell_core::algebra::Var::Vertex(Vertex::new(x, y)), e)),
        )
    })
}

fn arb_order() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![
        Just(MonomialOrder::lex1(&board())),
        Just(MonomialOrder::lex2(&board())),
        (1u32..=4, 1u32..=4)
            .prop_map(|(x, y)| MonomialOrder::stack_lex(&board(), Vertex::new(x, y))),
    ]
}

proptest! {
    #[test]
    fn compare_is_antisymmetric(m1 in arb_monomial(), m2 in arb_monomial(), o in arb_order()) {
        let ab = o.compare(&m1, &m2);
        let ba = o.compare(&m2, &m1);
        prop_assert_eq!(ab, ba.reverse());
        prop_assert_eq!(ab == std::cmp::Ordering::Equal, m1 == m2);
    }

    #[test]
    fn compare_is_transitive(
        m1 in arb_monomial(),
        m2 in arb_monomial(),
        m3 in arb_monomial(),
        o in arb_order(),
    ) {
        use std::cmp::Ordering::Greater;
        if o.compare(&m1, &m2) == Greater && o.compare(&m2, &m3) == Greater {
            prop_assert_eq!(o.compare(&m1, &m3), Greater);
        }
    }

    #[test]
    fn compare_is_multiplicative(
        m1 in arb_monomial(),
        m2 in arb_monomial(),
        u in arb_monomial(),
        o in arb_order(),
    ) {
        let before = o.compare(&m1, &m2);
        let after = o.compare(&m1.mul(&u), &m2.mul(&u));
        prop_assert_eq!(before, after);
    }

    #[test]
    fn one_is_the_smallest_monomial(m in arb_monomial(), o in arb_order()) {
        if !m.is_one() {
            prop_assert_eq!(o.compare(&m, &Monomial::one()), std::cmp::Ordering::Greater);
        }
    }

    #[test]
    fn difference_is_canonical(m1 in arb_monomial(), m2 in arb_monomial()) {
        let d1 = BinomialOrZero::difference(m1.clone(), m2.clone());
        let d2 = BinomialOrZero::difference(m2.clone(), m1.clone());
        prop_assert_eq!(d1.clone(), d2);
        prop_assert_eq!(d1.is_zero(), m1 == m2);
    }
}

fn all_minors(p: &CellCollection) -> Vec<BinomialOrZero> {
    p.inner_intervals().iter().map(interval_minor).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduce_idempotent_against_any_basis(
        subset in prop::collection::vec(any::<bool>(), 20),
        pick in 0usize..20,
    ) {
        let p = board();
        let o = MonomialOrder::lex1(&p);
        let minors = all_minors(&p);
        let basis: Vec<BinomialOrZero> = minors
            .iter()
            .zip(subset.iter().cycle())
            .filter(|&(_, keep)| *keep)
            .map(|(m, _)| m.clone())
            .collect();
        let f = minors[pick % minors.len()].clone();
        let once = reduce(&f, &basis, &o);
        prop_assert_eq!(reduce(&once, &basis, &o), once);
    }

    #[test]
    fn groebner_basis_closes_s_pairs(subset in prop::collection::vec(any::<bool>(), 12)) {
        let p = board();
        let o = MonomialOrder::lex1(&p);
        let minors = all_minors(&p);
        let gens: GeneratorSet = minors
            .iter()
            .zip(subset.iter().cycle())
            .filter(|&(_, keep)| *keep)
            .map(|(m, _)| m.clone())
            .collect();
        let gb = buchberger(&gens, &o);
        for f in gb.elements() {
            for g in gb.elements() {
                let s = s_pair(f, g, &o);
                prop_assert!(gb.normal_form(&s).is_zero());
            }
        }
        // and the basis generates the same ideal as the input
        prop_assert!(gb.contains_all(&gens));
    }

    #[test]
    fn groebner_basis_ignores_generator_order(
        perm in Just(()),
        seed in 0u64..1000,
    ) {
        let _ = perm;
        let p = board();
        let o = MonomialOrder::lex1(&p);
        let mut minors = all_minors(&p);
        // cheap deterministic shuffle
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for i in (1..minors.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            minors.swap(i, (state % (i as u64 + 1)) as usize);
        }
        let shuffled: GeneratorSet = minors.iter().take(8).cloned().collect();
        let sorted: GeneratorSet = shuffled.elements().iter().cloned().collect();
        let gb_shuffled = buchberger(&shuffled, &o);
        let gb_sorted = buchberger(&sorted, &o);
        prop_assert_eq!(gb_shuffled.elements(), gb_sorted.elements());
    }
}

#[test]
fn ideal_equal_agrees_under_both_lex_orders() {
    let windmill = CellCollection::new(
        [(2, 1), (1, 2), (3, 2), (2, 3)].map(|(x, y)| Cell::at(x, y)),
    )
    .unwrap();
    let shapes = [board(), windmill];
    for p in &shapes {
        let minors: GeneratorSet = all_minors(p).into_iter().collect();
        let cells: GeneratorSet = p
            .cells()
            .map(|c| {
                interval_minor(&Interval {
                    lo: c.lower_left,
                    hi: Vertex::new(c.lower_left.x + 1, c.lower_left.y + 1),
                })
            })
            .collect();
        let lex1 = MonomialOrder::lex1(p);
        let lex2 = MonomialOrder::lex2(p);
        assert_eq!(
            ideal_equal(&minors, &cells, &lex1),
            ideal_equal(&minors, &cells, &lex2)
        );
    }
}
