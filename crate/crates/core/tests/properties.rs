use geographer_core::circle_bundle::{
    degeneracy_closed_form, degeneracy_oracle, lefschetz_pairing, validate_euler_class, EulerClassSpec, EulerTag,
    PairingRules,
};
use geographer_core::mapping_torus::{wang_cohomology, MappingTorus};
use geographer_core::surface::{
    bundle_monodromy, compose_word, intersection_form, twist_transvection, Generator, HomologyClass, TwistLetter, TwistWord,
};
use geographer_core::{construct, BundleManifoldSpec, IntMatrix, MonodromyMatrix};
use proptest::prelude::*;

/// Sparse primitive curves keep entries of long products small.
fn curve(genus: u32) -> impl Strategy<Value = HomologyClass> {
    let n = 2 * genus as usize;
    (0..n, 0..n, prop_oneof![Just(-1i64), Just(1)], -2i64..=2).prop_map(move |(i, j, s, t)| {
        let mut v = vec![0; n];
        v[i] = s;
        if j != i {
            v[j] = t;
        }
        HomologyClass::new(v)
    })
}

fn exponent() -> impl Strategy<Value = i64> {
    prop_oneof![-2i64..=-1, 1i64..=2]
}

fn word_in(genus: u32) -> impl Strategy<Value = TwistWord> {
    prop::collection::vec((curve(genus), exponent()), 0..8).prop_map(move |ls| {
        TwistWord::new(genus, ls.into_iter().map(|(c, e)| TwistLetter::new(c, e)).collect()).unwrap()
    })
}

fn word() -> impl Strategy<Value = TwistWord> {
    (1u32..=6).prop_flat_map(word_in)
}

fn dkg() -> impl Strategy<Value = (u32, u32, u32)> {
    (1u32..=8)
        .prop_flat_map(|g| (Just(g), 0..=g))
        .prop_flat_map(|(g, k)| (0..=k, Just(k), Just(g)))
}

fn dkge() -> impl Strategy<Value = (u32, u32, u32, EulerTag)> {
    dkg().prop_flat_map(|(d, k, g)| {
        let tags: Vec<EulerTag> = EulerTag::valid_for(d, k).collect();
        prop::sample::select(tags).prop_map(move |e| (d, k, g, e))
    })
}

/// Product of random elementary row operations.
fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..12).prop_map(move |ops| {
        let mut rows = IntMatrix::identity(n).rows_vec();
        for (i, j, f) in ops {
            if i != j {
                let src = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(src) {
                    *x += f * y;
                }
            }
        }
        IntMatrix::from_rows(&rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn words_are_symplectic_with_unit_determinant(w in word()) {
        let m = compose_word(&w).unwrap();
        let j = intersection_form(w.genus).unwrap();
        let mt_j_m = m.matrix().transpose().checked_mul(&j).unwrap().checked_mul(m.matrix()).unwrap();
        prop_assert_eq!(mt_j_m, j);
        prop_assert_eq!(m.matrix().det().unwrap(), 1);
    }
}

proptest! {
    #[test]
    fn transvection_inverse_law(g in 1u32..=6, n in exponent()) {
        let c = HomologyClass::generator(Generator::from_slot(0), g).unwrap();
        let t = twist_transvection(&c, n, g).unwrap();
        let t_inv = twist_transvection(&c, -n, g).unwrap();
        prop_assert_eq!(t.compose(&t_inv).unwrap(), MonodromyMatrix::identity(g).unwrap());
        prop_assert_eq!(t.inverse().unwrap(), t_inv);
    }

    #[test]
    fn inverse_word_inverts(w in word()) {
        let m = compose_word(&w).unwrap();
        let mi = compose_word(&w.inverse()).unwrap();
        prop_assert_eq!(m.compose(&mi).unwrap(), MonodromyMatrix::identity(w.genus).unwrap());
        prop_assert_eq!(m.inverse().unwrap(), mi);
    }

    #[test]
    fn word_concatenation_matches_composition((a, b) in (1u32..=4).prop_flat_map(|g| (word_in(g), word_in(g)))) {
        let ab = compose_word(&a.then(&b).unwrap()).unwrap();
        let ma = compose_word(&a).unwrap();
        let mb = compose_word(&b).unwrap();
        // `a.then(b)` is the map `b ∘ a`.
        prop_assert_eq!(ab, mb.compose(&ma).unwrap());
    }

    #[test]
    fn disjoint_handles_commute(g in 2u32..=6, n1 in exponent(), n2 in exponent(), s1 in 0usize..2, s2 in 0usize..2, h in 1u32..6) {
        let h2 = h.min(g - 1);
        let c1 = HomologyClass::generator(Generator::from_slot(s1), g).unwrap();
        let c2 = HomologyClass::generator(Generator::from_slot(2 * h2 as usize + s2), g).unwrap();
        let t1 = twist_transvection(&c1, n1, g).unwrap();
        let t2 = twist_transvection(&c2, n2, g).unwrap();
        prop_assert_eq!(t1.compose(&t2).unwrap(), t2.compose(&t1).unwrap());
    }

    #[test]
    fn wang_betti_numbers((d, k, g) in dkg()) {
        let w = wang_cohomology(&MappingTorus::for_bundle(d, k, g).unwrap()).unwrap();
        prop_assert_eq!(w.b1, (2 * k - d + 1) as usize);
        prop_assert_eq!(w.b1, w.b2);
        prop_assert_eq!(w.mu_image_basis.len() + 1, w.b2);
        prop_assert_eq!(w.h1_basis.len(), w.b1);
    }

    #[test]
    fn smith_form_invariant_under_symplectic_conjugation(((d, k, g), p) in (1u32..=4).prop_flat_map(|g| {
        let dk = (0..=g).prop_flat_map(|k| (0..=k, Just(k)));
        (dk.prop_map(move |(d, k)| (d, k, g)), word_in(g))
    })) {
        let m = compose_word(&bundle_monodromy(d, k, g).unwrap()).unwrap();
        let pm = compose_word(&p).unwrap();
        let conj = pm.inverse().unwrap().compose(&m).unwrap().compose(&pm).unwrap();
        let s1 = m.matrix().minus_identity().unwrap().smith_form().unwrap();
        let s2 = conj.matrix().minus_identity().unwrap().smith_form().unwrap();
        prop_assert_eq!(s1.elementary_divisors, s2.elementary_divisors);
    }

    #[test]
    fn degeneracy_oracle_invariant_under_basis_change(((d, k, g, e), u) in dkge().prop_flat_map(|(d, k, g, e)| {
        let n = (2 * k - d + 1) as usize + usize::from(e == EulerTag::Zero);
        (Just((d, k, g, e)), unimodular(n))
    })) {
        let w = wang_cohomology(&MappingTorus::for_bundle(d, k, g).unwrap()).unwrap();
        let eu = validate_euler_class(&w, &EulerClassSpec::tagged(e), d, k).unwrap();
        let q = lefschetz_pairing(&w, &eu, PairingRules::default()).unwrap().matrix;
        let b1 = q.nrows();
        let moved = u.transpose().checked_mul(&q).unwrap().checked_mul(&u).unwrap();
        prop_assert!(moved.is_skew_symmetric());
        prop_assert_eq!(u.det().unwrap().abs(), 1);
        prop_assert_eq!(degeneracy_oracle(&moved, b1).unwrap(), degeneracy_oracle(&q, b1).unwrap());
        prop_assert_eq!(degeneracy_oracle(&q, b1).unwrap() as u32, degeneracy_closed_form(d, k, e).unwrap());
    }

    #[test]
    fn bundle_certificates_are_consistent((d, k, g, e) in dkge()) {
        let c = construct(&BundleManifoldSpec::new(d, k, g, e).unwrap()).unwrap().certificate;
        prop_assert!(c.all_checks_passed());
        prop_assert_eq!(c.sigma, 0);
        prop_assert_eq!(c.chi, 0);
        prop_assert_eq!(2 * c.chi + 3 * c.sigma, 0);
        prop_assert_eq!((c.b1 - c.degeneracy) % 2, 0);
        prop_assert_eq!(c.b_plus, c.b_minus);
    }
}
