use proptest::prelude::*;

use tricat_core::butterflies::{
    build_roof_complex, butterfly_from_chain_map, compose_butterflies, induced_homology_maps, is_flippable,
    roof_setup_from_chain_map,
};
use tricat_core::complexes::{derived_hom, ChainMap2, Complex2, Complex3};
use tricat_core::fractions::{
    associator, compose_fractions, compose_roofs, fraction_class, fraction_class_in, fraction_from_chain_map,
    fractions_equivalent, horizontal_compose, identity_fraction, pentagon_holds, vertical_compose, weak_inverse,
    Diamond, Roof,
};
use tricat_core::random::Sampler;
use tricat_core::{FGAbelianGroup, GroupHom};

fn strict2(s: &mut Sampler, a: &Complex2, b: &Complex2) -> ChainMap2 {
    let f = s.chain_map(&a.as_complex3(), &b.as_complex3()).unwrap();
    ChainMap2::new(a, b, f.f1().clone(), f.f0().clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn identity_fractions_are_units(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(2), s.complex3(2));
        let f = s.fraction(&a, &b).unwrap();
        let dh = derived_hom(&a, &b).unwrap();
        let want = fraction_class_in(&dh, &f).unwrap();
        let left = compose_fractions(&identity_fraction(&b), &f).unwrap();
        let right = compose_fractions(&f, &identity_fraction(&a)).unwrap();
        prop_assert_eq!(fraction_class_in(&dh, &left).unwrap(), want.clone());
        prop_assert_eq!(fraction_class_in(&dh, &right).unwrap(), want);
    }

    #[test]
    fn strict_maps_keep_their_class(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(2), s.complex3(2));
        let f = s.chain_map(&a, &b).unwrap();
        let dh = derived_hom(&a, &b).unwrap();
        prop_assert_eq!(fraction_class(&fraction_from_chain_map(&f)).unwrap(), dh.class_of_chain_map(&f).unwrap());
    }

    #[test]
    fn roofs_compose_and_rebracket(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(1), s.complex3(1));
        let f1 = s.fraction(&a, &b).unwrap();
        let h1 = s.roof_to_copy(&f1).unwrap();
        let h2 = s.roof_to_copy(h1.to_fraction()).unwrap();
        let h3 = Roof::identity(h2.to_fraction());
        let h21 = compose_roofs(&h2, &h1).unwrap();
        prop_assert!(fractions_equivalent(h21.from_fraction(), h21.to_fraction()).unwrap());
        let assoc = associator(&h1, &h2, &h3).unwrap();
        prop_assert!(assoc.t().is_degreewise_isomorphism());
        let h4 = Roof::identity(h3.to_fraction());
        prop_assert!(pentagon_holds(&h1, &h2, &h3, &h4).unwrap());
    }

    #[test]
    fn diamonds_compose(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(1), s.complex3(1));
        let f = s.fraction(&a, &b).unwrap();
        let h = s.roof_to_copy(&f).unwrap();
        let d1 = s.diamond_on(&h).unwrap();
        let d2 = s.diamond_on(d1.to_roof()).unwrap();
        let v = vertical_compose(&d2, &d1).unwrap();
        prop_assert_eq!(v.from_roof(), &h);
        let back = vertical_compose(&d1.inverse().unwrap(), &d1).unwrap();
        prop_assert!(back.t().same_map(Diamond::identity(&h).t()).unwrap());
        let g = s.roof_to_copy(h.to_fraction()).unwrap();
        let e = s.diamond_on(&g).unwrap();
        let hz = horizontal_compose(&e, &d1).unwrap();
        prop_assert_eq!(hz.from_roof(), &compose_roofs(&g, &h).unwrap());
    }

    #[test]
    fn flipped_roofs_are_weak_inverses(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(1), s.complex3(1));
        let f = s.fraction(&a, &b).unwrap();
        let h = s.roof_to_copy(&f).unwrap();
        let (inv, cert) = weak_inverse(&h).unwrap();
        prop_assert_eq!(inv.from_fraction(), h.to_fraction());
        prop_assert!(cert.classes_equal);
    }

    #[test]
    fn strict_butterflies_induce_the_strict_maps(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex2(2), s.complex2(2));
        let f = strict2(&mut s, &a, &b);
        let bf = butterfly_from_chain_map(&f).unwrap();
        bf.check().unwrap();
        let (h1, h0) = induced_homology_maps(&bf).unwrap();
        let f3 = f.as_chain_map3().unwrap();
        prop_assert!(h1.same_map(&f3.induced(-1).unwrap()).unwrap());
        prop_assert!(h0.same_map(&f3.induced(0).unwrap()).unwrap());
        let id = butterfly_from_chain_map(&ChainMap2::identity(&a)).unwrap();
        prop_assert!(is_flippable(&id).unwrap());
        let comp = compose_butterflies(&bf, &id).unwrap();
        let (c1, c0) = induced_homology_maps(&comp).unwrap();
        prop_assert!(c1.same_map(&h1).unwrap() && c0.same_map(&h0).unwrap());
    }

    #[test]
    fn roof_complexes_recover_strict_maps(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (a, b) = (s.complex3(2), s.complex3(2));
        let f = s.chain_map(&a, &b).unwrap();
        let (bf, ea, eb) = roof_setup_from_chain_map(&f).unwrap();
        let rc = build_roof_complex(&a, &b, &bf, &ea, &eb).unwrap();
        prop_assert!(rc.q_is_quasi_iso);
        prop_assert!(rc.exact_sequence().unwrap().is_exact());
        let fr = tricat_core::fractions::Fraction::new(rc.q.clone(), rc.p.clone()).unwrap();
        prop_assert!(fractions_equivalent(&fr, &fraction_from_chain_map(&f)).unwrap());
    }
}

#[test]
fn mismatched_roof_inputs_are_rejected() {
    let mut s = Sampler::new(3);
    let a = s.complex3(2);
    let z = FGAbelianGroup::free(1);
    let cone = Complex3::new(GroupHom::zero(&FGAbelianGroup::zero(), &z), GroupHom::identity(&z)).unwrap();
    let b = a.direct_sum(&cone);
    let f = s.chain_map(&a, &b).unwrap();
    let (bf, ea, eb) = roof_setup_from_chain_map(&f).unwrap();
    assert!(build_roof_complex(&b, &a, &bf, &ea, &eb).is_err());
    let g = fraction_from_chain_map(&f);
    assert!(compose_fractions(&g, &g).is_err());
    assert!(fractions_equivalent(&g, &identity_fraction(&a)).is_err());
}
