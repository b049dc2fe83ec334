//! Property tests over the shape library and seeded random complexes.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

use steinerlab::io::{emit_complex, parse_complex};
use steinerlab::map::compose_all;
use steinerlab::ops::duality::{dual_co, dual_map, dual_op, swap_iso_op, Duality};
use steinerlab::ops::join::{join, join_closed_form, Orientation};
use steinerlab::ops::suspension::{susp_coop_iso, suspension};
use steinerlab::ops::tensor::{gray_tensor, gray_tensor_map, reassociate};
use steinerlab::random::{random_steiner_complex, rng};
use steinerlab::retraction::{phi_map, q2, s2, section_ell, section_xi, xi};
use steinerlab::shapes::{
    cube, disk, interval, oriental, subset_elems, subset_name, unit, word_letters, word_name, zero,
};
use steinerlab::steiner::pos_neg_parts;
use steinerlab::{
    compose, direct_sum, equal_presentation, identity_map, is_steiner, truncate_top, validate_complex, validate_map,
    BasedComplex, Chain, ComplexMap, GeneratorName,
};

fn small_library() -> Vec<Arc<BasedComplex>> {
    let mut v = vec![unit(), interval()];
    for n in 0..=3 {
        v.push(disk(n).unwrap());
        v.push(oriental(n).unwrap());
    }
    v.push(cube(2).unwrap());
    v
}

fn random_complex(seed: u64) -> Arc<BasedComplex> {
    random_steiner_complex(&mut rng(seed), 4, 200).unwrap()
}

/// A random ℕ-chain of degree `q` with coefficients below 4.
fn natural_chain(c: &BasedComplex, q: usize, coeffs: &[u8]) -> Chain {
    let names = c.generators(q);
    c.chain(q, names.iter().zip(coeffs.iter().cycle()).map(|(n, &k)| (n, BigInt::from(k % 4)))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_complexes_are_valid_and_steiner(seed in any::<u64>()) {
        let c = random_complex(seed);
        prop_assert!(validate_complex(&c).passed);
        let r = is_steiner(&c);
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn duals_are_commuting_involutions_preserving_steiner(seed in any::<u64>()) {
        let c = random_complex(seed);
        prop_assert_eq!(&*dual_op(&dual_op(&c)), &*c);
        prop_assert_eq!(&*dual_co(&dual_co(&c)), &*c);
        prop_assert_eq!(&*dual_op(&dual_co(&c)), &*dual_co(&dual_op(&c)));
        prop_assert!(is_steiner(&dual_op(&c)).passed);
        prop_assert!(is_steiner(&dual_co(&c)).passed);
        prop_assert_eq!(&*truncate_top(&dual_op(&c)).unwrap(), &*dual_op(&truncate_top(&c).unwrap()));
        prop_assert_eq!(&*truncate_top(&dual_co(&c)).unwrap(), &*dual_co(&truncate_top(&c).unwrap()));
    }

    #[test]
    fn emit_parse_round_trips(seed in any::<u64>()) {
        let c = random_complex(seed);
        let text = emit_complex(&c);
        let back = parse_complex(&text).unwrap();
        prop_assert_eq!(&*back, &*c);
        prop_assert_eq!(emit_complex(&back), text);
    }

    #[test]
    fn positive_and_negative_parts_recombine(seed in any::<u64>(), coeffs in prop::collection::vec(-3i64..=3, 1..12)) {
        let c = random_complex(seed);
        for q in 1..c.num_degrees() {
            let names = c.generators(q);
            let x = c.chain(q, names.iter().zip(coeffs.iter().cycle()).map(|(n, &k)| (n, BigInt::from(k)))).unwrap();
            let (plus, minus) = pos_neg_parts(&c, &x).unwrap();
            prop_assert_eq!(plus.sub(&minus), c.d(&x).unwrap());
            prop_assert!(plus.is_natural() && minus.is_natural());
        }
    }

    #[test]
    fn susp_coop_is_an_iso(seed in any::<u64>()) {
        let r = susp_coop_iso(&random_complex(seed)).unwrap().verify().unwrap();
        prop_assert!(r.passed, "{}", r);
    }

    #[test]
    fn tensor_is_associative(i in 0usize..10, j in 0usize..10, k in 0usize..10) {
        let lib = small_library();
        let (a, b, c) = (&lib[i], &lib[j], &lib[k]);
        let left = gray_tensor(&*gray_tensor(a, b).unwrap(), c).unwrap();
        let right = gray_tensor(a, &*gray_tensor(b, c).unwrap()).unwrap();
        prop_assert_eq!(left.rename(reassociate).unwrap(), (*right).clone());
    }

    #[test]
    fn operations_on_library_pairs(i in 0usize..10, j in 0usize..10) {
        let lib = small_library();
        let (a, b) = (&lib[i], &lib[j]);
        prop_assume!(a.total_generators() + b.total_generators() <= 200);
        let jn = join(a, b).unwrap();
        prop_assert_eq!(&*jn, &*join_closed_form(a, b, Orientation::Standard).unwrap());
        let t = gray_tensor(a, b).unwrap();
        prop_assert!(is_steiner(&t).passed);
        prop_assert!(is_steiner(&jn).passed);
        let sum = direct_sum(a, b).unwrap().graded_counts();
        for q in 0..a.num_degrees().max(b.num_degrees()) {
            prop_assert_eq!(sum.get(&q).copied().unwrap_or(0), a.rank(q) + b.rank(q));
        }
    }

}

proptest! {
    // 200 trials per shape.
    #![proptest_config(ProptestConfig::with_cases(800))]

    #[test]
    fn phi_commutes_with_d_and_augmentation(shape in 0usize..4, coeffs in prop::collection::vec(any::<u8>(), 1..16)) {
        let a = [unit(), interval(), oriental(2).unwrap(), cube(2).unwrap()][shape].clone();
        let phi = phi_map(&a).unwrap();
        let (src, tgt) = (phi.source().clone(), phi.target().clone());
        for q in 0..src.num_degrees() {
            let c = natural_chain(&src, q, &coeffs);
            let image = phi.apply(&c);
            prop_assert!(image.is_natural());
            if q == 0 {
                prop_assert_eq!(tgt.augment(&image), src.augment(&c));
            } else {
                prop_assert_eq!(tgt.d(&image).unwrap(), phi.apply(&src.d(&c).unwrap()));
            }
        }
    }
}

#[test]
fn units_for_tensor_and_join() {
    for a in small_library() {
        let l = gray_tensor(&unit(), &a).unwrap().rename(|n| n.as_pair().unwrap().1.clone()).unwrap();
        let r = gray_tensor(&a, &unit()).unwrap().rename(|n| n.as_pair().unwrap().0.clone()).unwrap();
        assert_eq!(l, *a);
        assert_eq!(r, *a);
        let jl = join(&zero(), &a).unwrap();
        let jr = join(&a, &zero()).unwrap();
        assert!(equal_presentation(&jl, &a) && equal_presentation(&jr, &a));
    }
}

/// Vertex set of a join name `L(x)`, `R(y)` or `J(x.y)` over parts with
/// vertex sets given by `left` and `right`, the right part shifted by `shift`.
fn join_vertices(
    n: &GeneratorName,
    shift: u64,
    left: &dyn Fn(&GeneratorName) -> Vec<u64>,
    right: &dyn Fn(&GeneratorName) -> Vec<u64>,
) -> Vec<u64> {
    let moved = |y: &GeneratorName| right(y).into_iter().map(|v| v + shift).collect::<Vec<_>>();
    if let Some(x) = n.untag("L") {
        left(x)
    } else if let Some(y) = n.untag("R") {
        moved(y)
    } else {
        let mut v = left(&n.children()[0]);
        v.extend(moved(&n.children()[1]));
        v
    }
}

#[test]
fn join_is_associative_on_simplices() {
    let plain = |s: &GeneratorName| subset_elems(s);
    for a in 0..=4usize {
        for b in 0..=4 - a {
            for c in 0..=4 - a - b {
                let (x, y, z) = (oriental(a).unwrap(), oriental(b).unwrap(), oriental(c).unwrap());
                let whole = oriental(a + b + c + 2).unwrap();
                let (sa, sb) = (a as u64 + 1, b as u64 + 1);
                let inner_left = move |w: &GeneratorName| join_vertices(w, sa, &plain, &plain);
                let left = join(&*join(&x, &y).unwrap(), &z).unwrap();
                let renamed = left.rename(|n| subset_name(&join_vertices(n, sa + sb, &inner_left, &plain))).unwrap();
                assert_eq!(renamed, *whole, "({a}, {b}) then {c}");
                let inner_right = move |w: &GeneratorName| join_vertices(w, sb, &plain, &plain);
                let right = join(&x, &*join(&y, &z).unwrap()).unwrap();
                let renamed = right.rename(|n| subset_name(&join_vertices(n, sa, &plain, &inner_right))).unwrap();
                assert_eq!(renamed, *whole, "{a} then ({b}, {c})");
            }
        }
    }
}

#[test]
fn cubes_are_tensor_powers() {
    let concat = |n: &GeneratorName| {
        let (u, v) = n.as_pair().unwrap();
        let mut l = word_letters(u);
        l.extend(word_letters(v));
        word_name(l)
    };
    for total in 0..=8usize {
        for m in 0..=total {
            let t = gray_tensor(&*cube(m).unwrap(), &*cube(total - m).unwrap()).unwrap();
            assert_eq!(t.rename(concat).unwrap(), *cube(total).unwrap(), "{m}+{}", total - m);
        }
    }
}

#[test]
fn suspension_shifts_counts() {
    for n in 0..=6 {
        let o = oriental(n).unwrap();
        let s = suspension(&o).unwrap();
        let mut expected = std::collections::BTreeMap::from([(0, 2)]);
        for (q, k) in o.graded_counts() {
            expected.insert(q + 1, k);
        }
        assert_eq!(s.graded_counts(), expected);
    }
}

#[test]
fn library_shapes_are_valid() {
    for n in 0..=6 {
        for c in [disk(n).unwrap(), cube(n).unwrap(), oriental(n).unwrap()] {
            assert!(validate_complex(&c).passed);
        }
        assert!(equal_presentation(&steinerlab::shapes::oriental_via_join(n).unwrap(), &oriental(n).unwrap()));
    }
    for n in 7..=8 {
        assert!(equal_presentation(&steinerlab::shapes::oriental_via_join(n).unwrap(), &oriental(n).unwrap()));
    }
}

#[test]
fn compose_is_associative_and_unital() {
    for n in 1..=3 {
        let sx = section_xi(n).unwrap();
        let se = section_ell(n).unwrap();
        for (f, g, h) in [
            (&sx.embed, &sx.retract, &sx.embed),
            (&sx.retract, &sx.embed, &sx.retract),
            (&se.embed, &se.retract, &se.embed),
        ] {
            let left = compose(&compose(f, g).unwrap(), h).unwrap();
            let right = compose(f, &compose(g, h).unwrap()).unwrap();
            assert_eq!(left, right);
            assert_eq!(compose(&identity_map(f.source()), f).unwrap(), *f);
            assert_eq!(compose(f, &identity_map(f.target())).unwrap(), *f);
        }
    }
}

#[test]
fn xi_is_the_identity_on_top_generators() {
    for n in 0..=6 {
        let x = xi(n).unwrap();
        assert!(validate_map(&x).passed);
        let top_src = x.source().name(n, 0).clone();
        let top_tgt = x.target().name(n, 0).clone();
        assert_eq!(x.image_named(&top_src), vec![(top_tgt, BigInt::one())]);
    }
}

/// `(f ⊗ g)^op ∘ swap = swap ∘ (g^op ⊗ f^op)` for a few maps.
#[test]
fn swap_is_natural() {
    let maps: Vec<ComplexMap> = vec![q2().unwrap(), s2().unwrap(), identity_map(&interval()), xi(1).unwrap()];
    for f in &maps {
        for g in &maps {
            let before = swap_iso_op(f.source(), g.source()).unwrap();
            let after = swap_iso_op(f.target(), g.target()).unwrap();
            let lower = gray_tensor_map(&dual_map(f, Duality::Op).unwrap(), &dual_map(g, Duality::Op).unwrap()).unwrap();
            let upper = dual_map(&gray_tensor_map(g, f).unwrap(), Duality::Op).unwrap();
            let a = compose_all(&[&lower, &after.forward]).unwrap();
            let b = compose_all(&[&before.forward, &upper]).unwrap();
            assert_eq!(a, b);
        }
    }
}
