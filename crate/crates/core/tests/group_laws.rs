use earring_core::groups::{FGAbelianGroup, GroupElement, GroupExpr};
use earring_core::SphereGroupTable;
use proptest::prelude::*;

fn group() -> impl Strategy<Value = FGAbelianGroup> {
    (0u32..3, prop::collection::vec(2u64..13, 0..3)).prop_map(|(r, t)| FGAbelianGroup::from_parts(r, &t))
}

fn element_of(g: FGAbelianGroup) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-20i64..20, g.arity()).prop_map(move |c| GroupElement::new(&g, &c).unwrap())
}

fn three_elements() -> impl Strategy<Value = (GroupElement, GroupElement, GroupElement)> {
    group().prop_flat_map(|g| (element_of(g.clone()), element_of(g.clone()), element_of(g)))
}

fn leaf() -> impl Strategy<Value = GroupExpr> {
    prop_oneof![
        Just(GroupExpr::Zero),
        group().prop_map(GroupExpr::finite),
        (2u32..10, 2u32..10).prop_map(|(n, q)| GroupExpr::sphere(n, q)),
    ]
}

fn expr() -> impl Strategy<Value = GroupExpr> {
    leaf().prop_recursive(3, 16, 4, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(GroupExpr::DirectSum),
            (inner.clone(), 0u64..4).prop_map(|(e, c)| GroupExpr::pow(e, c)),
            inner.clone().prop_map(GroupExpr::sum_n),
            inner.prop_map(GroupExpr::prod_n),
        ]
    })
}

proptest! {
    #[test]
    fn abelian_group_axioms((a, b, c) in three_elements()) {
        let zero = GroupElement::zero(a.ambient());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        prop_assert!(a.add(&a.negate()).unwrap().is_zero());
        prop_assert_eq!(a.scale(3), a.add(&a).unwrap().add(&a).unwrap());
    }

    #[test]
    fn invariant_factors_divide(r in 0u32..3, orders in prop::collection::vec(0u64..40, 0..5)) {
        let g = FGAbelianGroup::from_parts(r, &orders);
        let t = g.torsion();
        prop_assert!(t.iter().all(|&d| d >= 2));
        prop_assert!(t.windows(2).all(|w| w[1] % w[0] == 0));
        let order: u64 = orders.iter().filter(|&&d| d >= 2).product();
        prop_assert_eq!(t.iter().product::<u64>(), order);
        let back: FGAbelianGroup = g.to_table_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn normalize_is_idempotent(e in expr()) {
        let once = e.normalize();
        prop_assert_eq!(once.normalize(), once);
    }

    #[test]
    fn normalize_ignores_summand_order(parts in prop::collection::vec(expr(), 0..5)) {
        let forward = GroupExpr::DirectSum(parts.clone()).normalize();
        let mut reversed = parts;
        reversed.reverse();
        prop_assert_eq!(GroupExpr::DirectSum(reversed).normalize(), forward);
    }

    #[test]
    fn machine_format_round_trips(e in expr()) {
        let e = e.normalize();
        prop_assert_eq!(GroupExpr::parse_machine(&e.render_machine()).unwrap(), e);
    }

    #[test]
    fn resolving_removes_known_symbols(e in expr()) {
        let t = SphereGroupTable::seed();
        let resolved = e.resolve(&t);
        for (n, q) in resolved.unresolved() {
            prop_assert!(t.lookup(n, q).known().is_none());
        }
    }
}

#[test]
fn render_examples() {
    let z = GroupExpr::finite(FGAbelianGroup::integers());
    let z2 = GroupExpr::finite(FGAbelianGroup::cyclic(2));
    let e = GroupExpr::DirectSum(vec![GroupExpr::prod_n(z.clone()), GroupExpr::prod_n(z.clone())]).normalize();
    assert_eq!(e.render_text(), "Z^N (+) Z^N");
    assert_eq!(GroupExpr::prod_n(z2.clone()).render_text(), "(Z/2)^N");
    assert_eq!(GroupExpr::prod_n(GroupExpr::sum_n(z2)).render_text(), "PROD_N SUM_N Z/2");
    assert_eq!(GroupExpr::prod_n(GroupExpr::sphere(9, 2)).render_text(), "pi_9(S^2)^N");
    let g = FGAbelianGroup::from_parts(1, &[12]);
    assert_eq!(GroupExpr::prod_n(GroupExpr::finite(g)).render_text(), "(Z (+) Z/12)^N");
}
