use metdim::families::{
    analytic_distance_s_odd, analytic_distance_u, generate, table_deviations, witness_set, Class, Family,
    TableReading, TheoremKind,
};
use metdim::{exact_dimension, formula_dimension, SearchBudget, VariantKind};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn s_odd_oracle_matches_bfs(k in 1usize..=12, j in 1usize..=25, class in 0usize..4, second in any::<bool>()) {
        let n = 2 * k + 1;
        let j = (j - 1) % n + 1;
        let inst = generate(Family::S, n).unwrap();
        let class = [Class::A, Class::B, Class::C, Class::D][class];
        let anchor = inst.vertex(Class::A, if second { k as i64 + 1 } else { 1 });
        let bfs = inst.graph().distances().get(inst.vertex(class, j as i64), anchor);
        prop_assert_eq!(analytic_distance_s_odd(&inst, class, j, anchor).unwrap(), bfs);
    }

    #[test]
    fn u_oracle_matches_bfs(n in 3usize..=25, j in 1usize..=25, class in 0usize..5, second in any::<bool>()) {
        prop_assume!(n % 2 == 1 || n >= 10);
        let k = n / 2;
        let j = (j - 1) % n + 1;
        let inst = generate(Family::U, n).unwrap();
        let class = [Class::A, Class::B, Class::C, Class::D, Class::E][class];
        let anchor = match (n % 2, second) {
            (1, false) => inst.vertex(Class::A, 1),
            (1, true) => inst.vertex(Class::A, k as i64 + 1),
            (_, false) => inst.vertex(Class::C, 1),
            (_, true) => inst.vertex(Class::C, k as i64),
        };
        let bfs = inst.graph().distances().get(inst.vertex(class, j as i64), anchor);
        prop_assert_eq!(analytic_distance_u(&inst, class, j, anchor, TableReading::Corrected).unwrap(), bfs);
    }
}

#[test]
fn corrected_tables_have_no_deviations() {
    for n in 3..=25 {
        if n % 2 == 1 {
            let s = generate(Family::S, n).unwrap();
            assert!(table_deviations(&s, TableReading::Corrected).unwrap().is_empty());
        }
        if n % 2 == 1 || n >= 10 {
            let u = generate(Family::U, n).unwrap();
            assert!(table_deviations(&u, TableReading::Corrected).unwrap().is_empty());
        }
    }
}

#[test]
fn small_strong_dimensions_by_full_search() {
    let budget = SearchBudget::unlimited();
    for n in 3..=5 {
        let s = generate(Family::S, n).unwrap();
        let sol = exact_dimension(s.graph(), VariantKind::Strong, &budget).unwrap();
        assert_eq!(sol.value(), formula_dimension(Family::S, n, TheoremKind::Strong), "S_{n}");
    }
    let u3 = generate(Family::U, 3).unwrap();
    assert_eq!(exact_dimension(u3.graph(), VariantKind::Strong, &budget).unwrap().value(), 6);
    // The closed form gives 10 for U_4; the true value is 8.
    let u4 = generate(Family::U, 4).unwrap();
    let sol = exact_dimension(u4.graph(), VariantKind::Strong, &budget).unwrap();
    assert_eq!(sol.value(), 8);
    assert_eq!(formula_dimension(Family::U, 4, TheoremKind::Strong), 10);
}

#[test]
fn local_witness_seeds_are_optimal() {
    let budget = SearchBudget::unlimited();
    for n in 3..=12 {
        for family in [Family::S, Family::U] {
            let inst = generate(family, n).unwrap();
            let w = witness_set(family, n, TheoremKind::Local).unwrap();
            let sol = metdim::exact_dimension_with_seed(inst.graph(), VariantKind::Local, &w, &budget).unwrap();
            assert_eq!(sol.value(), formula_dimension(family, n, TheoremKind::Local), "{family}_{n}");
        }
    }
}
