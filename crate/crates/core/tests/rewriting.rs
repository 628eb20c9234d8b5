use earring_core::hall::GradingSequence;
use earring_core::tensor::tensor_oracle;
use earring_core::whitehead::{self, FormalSum, LieExpr, Monomial};
use proptest::prelude::*;

fn gen(i: u32, d: u32) -> Monomial {
    Monomial::generator(i, d).unwrap()
}

fn monomial(degrees: [u32; 3]) -> impl Strategy<Value = Monomial> {
    let leaf = (1u32..=3).prop_map(move |i| gen(i, degrees[i as usize - 1]));
    prop_oneof![
        leaf.clone(),
        (leaf.clone(), leaf.clone()).prop_map(|(x, y)| Monomial::bracket(x, y)),
        (leaf.clone(), leaf.clone(), leaf.clone(), any::<bool>()).prop_map(|(x, y, z, left)| {
            if left {
                Monomial::bracket(Monomial::bracket(x, y), z)
            } else {
                Monomial::bracket(x, Monomial::bracket(y, z))
            }
        }),
    ]
}

fn formal_sum() -> impl Strategy<Value = FormalSum> {
    prop::array::uniform3(2u32..=4).prop_flat_map(|d| {
        prop::collection::vec((monomial(d), -4i64..=4), 0..6).prop_map(|terms| terms.into_iter().collect())
    })
}

proptest! {
    #[test]
    fn normalization_is_sound_on_sums(s in formal_sum()) {
        let r = whitehead::hall_normalize(&s, 3).unwrap();
        prop_assert_eq!(tensor_oracle(&r.recombine()).unwrap(), tensor_oracle(&s).unwrap());
        let again = whitehead::hall_normalize(&r.hall, 3).unwrap();
        prop_assert_eq!(again.hall, r.hall);
        prop_assert!(again.residual.is_zero());
    }

    #[test]
    fn rewriting_preserves_degree(s in formal_sum()) {
        let r = whitehead::hall_normalize(&s, 3).unwrap();
        let input: std::collections::BTreeSet<(usize, u32)> = s.iter().map(|(m, _)| (m.weight(), m.degree())).collect();
        for (m, _) in r.hall.iter().chain(r.residual.iter()) {
            prop_assert!(input.contains(&(m.weight(), m.degree())));
        }
    }
}

#[test]
fn expansion_examples() {
    let g = GradingSequence::constant(1).unwrap();
    let show = |text: &str| whitehead::expand(&LieExpr::parse(text, &g).unwrap()).unwrap().to_string();
    assert_eq!(show("[a1, 2*a2 + a3]"), "2*[a1,a2] + [a1,a3]");
    assert_eq!(show("[a1, 0]"), "0");
    assert_eq!(show("[3*a1, -a2]"), "-3*[a1,a2]");
}

#[test]
fn normalization_examples() {
    let s = FormalSum::monomial(Monomial::bracket(gen(1, 2), Monomial::bracket(gen(2, 2), gen(3, 2))));
    let r = whitehead::hall_normalize(&s, 3).unwrap();
    assert_eq!(r.hall.to_string(), "-[a2,[a1,a3]] - [a3,[a1,a2]]");
    let square = FormalSum::monomial(Monomial::bracket(gen(1, 2), gen(1, 2)));
    let r = whitehead::hall_normalize(&square, 1).unwrap();
    assert!(r.hall.is_zero());
    assert_eq!(r.residual, square);
    let four = Monomial::bracket(
        Monomial::bracket(gen(1, 2), gen(2, 2)),
        Monomial::bracket(gen(1, 2), gen(3, 2)),
    );
    assert!(whitehead::hall_normalize(&FormalSum::monomial(four), 3).is_err());
}

#[test]
fn swap_signs() {
    let (s, _) = whitehead::graded_swap(&Monomial::bracket(gen(2, 2), gen(1, 2))).unwrap();
    assert_eq!(s, 1);
    let (s, _) = whitehead::graded_swap(&Monomial::bracket(gen(2, 3), gen(1, 3))).unwrap();
    assert_eq!(s, -1);
    let (s, _) = whitehead::graded_swap(&Monomial::bracket(gen(2, 2), gen(1, 3))).unwrap();
    assert_eq!(s, 1);
    assert!(whitehead::graded_swap(&gen(1, 2)).is_err());
}
