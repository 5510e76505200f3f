//! Randomized structural laws.
//!
//! Unit tests pin exact values on hand-sized examples; the properties here
//! sweep randomly generated tables instead, checking text round trips at
//! extreme coefficients, sign-split round trips, the factorization of the
//! exponent map through the paired ring, equivariance of the map under
//! column relabeling, and constancy of canonical forms along orbits.

use proptest::prelude::*;

use equimark::maps::{phi_apply, pi_apply, psi_apply, MapSpec};
use equimark::symmetry::{act, act_binomial, canonical_form_binomial, Permutation};
use equimark::tables::{Binomial, ExponentTable, IndexTuple, RingTag};
use equimark::Int;

const Y2: RingTag = RingTag::Y { k: 2 };

/// An ordered pair of distinct columns in `1..=6`.
fn pair() -> impl Strategy<Value = IndexTuple> {
    (1u32..=6, 1u32..=5).prop_map(|(i, j)| {
        let j = if j >= i { j + 1 } else { j };
        IndexTuple::new(vec![i, j])
    })
}

/// A table over ordered pairs with coefficients in the given range;
/// repeated tuples accumulate, so cancellation to zero is possible.
fn y2_table(coeffs: std::ops::RangeInclusive<Int>) -> impl Strategy<Value = ExponentTable> {
    proptest::collection::vec((pair(), coeffs), 1..6)
        .prop_map(|entries| ExponentTable::from_entries(Y2, entries).unwrap())
}

/// A nonnegative table (a monomial exponent vector) over ordered pairs.
fn y2_monomial() -> impl Strategy<Value = ExponentTable> {
    y2_table(1..=4)
}

/// A permutation of `1..=8`, enough degree to admit every generated table.
fn sigma() -> impl Strategy<Value = Permutation> {
    Just((1u32..=8).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Serialized text parses back to the identical table, including
    /// coefficients far beyond 64 bits.
    #[test]
    fn table_text_round_trips(t in y2_table(-(1 << 62)..=(1 << 62))) {
        prop_assume!(!t.is_zero());
        let back = ExponentTable::parse(Y2, &t.to_text()).unwrap();
        prop_assert_eq!(back, t);
    }

    /// Splitting a vector into a move and flattening back is lossless.
    #[test]
    fn sign_split_round_trips(v in y2_table(-(1 << 62)..=(1 << 62))) {
        let b = Binomial::from_vector(&v);
        prop_assert_eq!(b.vector(), v);
    }

    /// Table arithmetic behaves like the free abelian group it models.
    #[test]
    fn table_arithmetic_laws(u in y2_table(-(1 << 40)..=(1 << 40)), v in y2_table(-(1 << 40)..=(1 << 40))) {
        prop_assert!(u.sub(&u).unwrap().is_zero());
        prop_assert_eq!(u.add(&u.neg()).unwrap(), ExponentTable::zero(Y2));
        prop_assert_eq!(u.scale(-1), u.neg());
        prop_assert_eq!(u.add(&v).unwrap(), v.add(&u).unwrap());
        prop_assert_eq!(u.add(&v).unwrap().sub(&v).unwrap(), u);
    }

    /// The exponent map factors through the paired ring: composing the
    /// splitting map with the counting map gives the direct image.
    #[test]
    fn exponent_map_factors_through_paired_ring(
        t in y2_monomial(),
        ab in prop::sample::select(vec![(2u64, 1u64), (3, 2), (5, 2), (7, 4)]),
    ) {
        let spec = MapSpec::width2(ab.0, ab.1).unwrap();
        let direct = pi_apply(&spec, &t).unwrap();
        let through = psi_apply(&spec, &phi_apply(2, &t).unwrap()).unwrap();
        prop_assert_eq!(direct, through);
    }

    /// Relabeling columns commutes with the exponent map.
    #[test]
    fn exponent_map_is_equivariant(t in y2_monomial(), s in sigma()) {
        let spec = MapSpec::width2(3, 1).unwrap();
        let image_then_act = act(&s, pi_apply(&spec, &t).unwrap().table()).unwrap();
        let act_then_image = pi_apply(&spec, &act(&s, &t).unwrap()).unwrap();
        prop_assert_eq!(act_then_image.table(), &image_then_act);
    }

    /// Acting is a group action: composition of permutations matches
    /// sequential relabeling.
    #[test]
    fn acting_respects_composition(t in y2_table(-8..=8_i128), s in sigma(), r in sigma()) {
        prop_assume!(!t.is_zero());
        let seq = act(&s, &act(&r, &t).unwrap()).unwrap();
        let composed = act(&s.compose(&r), &t).unwrap();
        prop_assert_eq!(seq, composed);
    }

    /// Every element of an orbit (either sign) canonicalizes identically.
    #[test]
    fn canonical_form_constant_on_random_orbits(v in y2_table(-6..=6_i128), s in sigma()) {
        let b = Binomial::from_vector(&v);
        prop_assume!(!b.is_zero());
        let canon = canonical_form_binomial(&b, 8).unwrap();
        let moved = act_binomial(&s, &b).unwrap();
        prop_assert_eq!(canonical_form_binomial(&moved, 8).unwrap(), canon.clone());
        prop_assert_eq!(canonical_form_binomial(&moved.swapped(), 8).unwrap(), canon);
    }
}
