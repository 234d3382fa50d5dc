mod common;

use boson_order::algebra::{self, BosonWord, Letter, RewriteStrategy};
use boson_order::stirling;
use boson_order::StringType;
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = BosonWord> {
    prop::collection::vec(
        prop_oneof![Just(Letter::Creation), Just(Letter::Annihilation)],
        0..=max_len,
    )
    .prop_map(BosonWord::new)
}

fn canonical_type() -> impl Strategy<Value = StringType> {
    prop::collection::vec((1u32..=4, 1u32..=4), 1..=4).prop_filter_map("negative prefix", |pairs| {
        let (r, s): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        let t = StringType::new(r, s).ok()?;
        t.has_nonnegative_prefix().then_some(t)
    })
}

fn any_type() -> impl Strategy<Value = StringType> {
    prop::collection::vec((1u32..=3, 1u32..=3), 1..=4).prop_map(|pairs| {
        let (r, s): (Vec<u32>, Vec<u32>) = pairs.into_iter().unzip();
        StringType::new(r, s).unwrap()
    })
}

proptest! {
    #[test]
    fn rewrite_strategies_agree(w in word(10)) {
        prop_assert_eq!(
            algebra::normal_order_with(&w, RewriteStrategy::SingleLetter),
            algebra::normal_order_with(&w, RewriteStrategy::BlockCrossing)
        );
    }

    #[test]
    fn normal_ordering_is_multiplicative(u in word(6), v in word(6)) {
        let whole = algebra::normal_order(&u.concat(&v));
        let product = &algebra::normal_order(&u) * &algebra::normal_order(&v);
        prop_assert_eq!(whole, product);
    }

    #[test]
    fn excess_is_conserved(w in word(12)) {
        let nf = algebra::normal_order(&w);
        prop_assert_eq!(nf.excess(), w.excess());
        for (c, a, _) in nf.terms() {
            prop_assert_eq!(c as i64 - a as i64, w.excess());
        }
    }

    #[test]
    fn extracted_keys_lie_between_first_and_total_s(t in canonical_type()) {
        let (d, table) = algebra::extract_stirling(&algebra::normal_order(&algebra::word_from_type(&t))).unwrap();
        prop_assert_eq!(d, t.excess());
        for k in table.keys() {
            prop_assert!(*k >= t.first_s() && *k <= t.total_s());
        }
        prop_assert_eq!(table.contains_key(&t.total_s()), true);
    }

    #[test]
    fn operator_recursion_matches_recurrence(t in canonical_type()) {
        prop_assert_eq!(
            stirling::bell_polynomial_by_operators(&t).unwrap(),
            stirling::bell_polynomial(&t)
        );
    }

    #[test]
    fn recurrence_matches_monomial_action(t in canonical_type()) {
        let oracle = common::stirling_by_differences(&common::word_of(&t), t.total_s());
        prop_assert_eq!(stirling::stirling_recurrence(&t).values, oracle);
    }

    #[test]
    fn recurrence_matches_rewrite_for_any_prefix(t in any_type()) {
        // keyed by annihilation degree, which the recurrence also uses
        let nf = algebra::normal_order(&algebra::word_from_type(&t));
        let shift = (-t.excess()).max(0) as usize;
        let rewritten: std::collections::BTreeMap<_, _> =
            nf.coeffs().iter().map(|(k, v)| (k + shift, v.clone())).collect();
        prop_assert_eq!(stirling::stirling_recurrence(&t).values, rewritten);
    }
}
