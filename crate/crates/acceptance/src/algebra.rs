use num_bigint::BigInt;
use num_traits::ToPrimitive;
use tricat_core::butterflies::{
    build_roof_complex, butterfly_from_chain_map, butterfly_isomorphism, compose_butterflies, induced_homology_maps,
    roof_setup_from_chain_map, Butterfly,
};
use tricat_core::complexes::{
    cohomology, derived_hom, is_quasi_isomorphism, ses_to_les, ChainMap, ChainMap2, Complex2, Complex3,
};
use tricat_core::fractions::{
    compose_fractions, fraction_class, fraction_class_in, fraction_from_chain_map, fractions_equivalent,
    identity_fraction, Diamond, Fraction,
};
use tricat_core::group::{image_contained, kernel};
use tricat_core::random::Sampler;
use tricat_core::{FGAbelianGroup, GroupHom, Invariants};

use crate::oracle::cohomology_invariants;
use crate::{ensure, Context};

type Check = Result<String, String>;

pub fn cohomology_oracle() -> Check {
    let mut s = Sampler::new(0xC0);
    let mut nontrivial = 0;
    let mut largest = 0;
    for n in 0..200 {
        let c = s.finite_complex3(4, 64);
        for g in [c.g2(), c.g1(), c.g0()] {
            let order = crate::oracle::FiniteGroup::new(g).ok_or("sampled term is not finite")?.order();
            ensure!(order <= 64, "instance {n}: term of order {order}");
            largest = largest.max(order);
        }
        let want = cohomology_invariants(&c).ok_or_else(|| format!("instance {n}: oracle rejected the complex"))?;
        for (k, deg) in [-2, -1, 0].into_iter().enumerate() {
            let got = cohomology(&c, deg).ctx("cohomology")?.group.invariants();
            ensure!(got.free_rank == 0, "instance {n}: H^{deg} has free rank {}", got.free_rank);
            let torsion: Vec<i64> = got.torsion.iter().map(|d| d.to_i64().unwrap()).collect();
            ensure!(torsion == want[k], "instance {n}: H^{deg} is {torsion:?}, oracle says {:?}", want[k]);
            if !torsion.is_empty() {
                nontrivial += 1;
            }
        }
    }
    Ok(format!("200 complexes, {nontrivial} nonzero groups, terms up to order {largest}"))
}

/// `ker g = im f`.
fn exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool, String> {
    if !g.compose(f).ctx("compose")?.is_zero() {
        return Ok(false);
    }
    let (_, k) = kernel(g);
    image_contained(&k, f).ctx("image")
}

fn degreewise_short_exact(i: &ChainMap, p: &ChainMap) -> Result<bool, String> {
    for deg in [-2, -1, 0] {
        let (a, b) = (i.component(deg).ctx("component")?, p.component(deg).ctx("component")?);
        if !a.is_injective() || !b.is_surjective() || !exact_at(a, b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn les_exactness() -> Check {
    let mut s = Sampler::new(0x1E5);
    let mut connecting = 0;
    for n in 0..100 {
        let m = s.complex3(3);
        let (i, p) = s.short_exact(&m).ctx("short exact sequence")?;
        ensure!(degreewise_short_exact(&i, &p)?, "instance {n}: sequence is not short exact");
        let les = ses_to_les(&i, &p).ctx("long exact sequence")?;
        ensure!(les.nodes.len() == 9 && les.maps.len() == 8, "instance {n}: wrong shape");
        ensure!(les.is_exact(), "instance {n}: reported inexact");
        ensure!(les.maps[0].is_injective(), "instance {n}: not injective on the left");
        ensure!(les.maps[7].is_surjective(), "instance {n}: not surjective on the right");
        for k in 0..7 {
            ensure!(exact_at(&les.maps[k], &les.maps[k + 1])?, "instance {n}: inexact after map {k}");
        }
        connecting += les.connecting_maps().iter().filter(|d| !d.is_zero()).count();
    }
    Ok(format!("100 sequences, {connecting} nonzero connecting maps"))
}

fn cyclic_invariants(n: u64) -> Invariants {
    Invariants {
        torsion: if n > 1 { vec![BigInt::from(n)] } else { vec![] },
        free_rank: 0,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn ext_grid() -> Check {
    let at = |g: FGAbelianGroup, deg| Complex3::in_degree(g, deg).ctx("complex");
    let hom_group = |a: &Complex3, b: &Complex3| derived_hom(a, b).ctx("derived hom").map(|d| d.group().invariants());
    for m in 1..=6u64 {
        let a = at(FGAbelianGroup::cyclic(m as i64), 0)?;
        for n in 1..=6u64 {
            let zn = FGAbelianGroup::cyclic(n as i64);
            let want = cyclic_invariants(gcd(m, n));
            let hom = hom_group(&a, &at(zn.clone(), 0)?)?;
            ensure!(hom == want, "Hom(Z/{m}, Z/{n}) = {hom}");
            let ext = hom_group(&a, &at(zn, -1)?)?;
            ensure!(ext == want, "Ext(Z/{m}, Z/{n}) = {ext}");
        }
    }
    let z = at(FGAbelianGroup::free(1), 0)?;
    let mut targets: Vec<FGAbelianGroup> = (1..=6).map(FGAbelianGroup::cyclic).collect();
    targets.push(FGAbelianGroup::free(1));
    for t in targets {
        let ext = hom_group(&z, &at(t.clone(), -1)?)?;
        ensure!(ext == cyclic_invariants(1), "Ext(Z, {}) = {ext}", t.invariants());
    }
    Ok("36 Hom and 36 Ext groups, Ext(Z, -) vanishes on 7 targets".into())
}

pub fn fraction_functoriality() -> Check {
    use tricat_core::complexes::compose_classes;
    let mut s = Sampler::new(0xF4);
    let mut nonzero = 0;
    for n in 0..100 {
        // endpoints are often shared so that composites have room to be nonzero
        let b = s.complex3(2);
        let a = if s.chance(0.5) { b.clone() } else { s.complex3(2) };
        let c = if s.chance(0.5) { b.clone() } else { s.complex3(2) };
        let f = s.fraction(&a, &b).ctx("fraction")?;
        let g = s.fraction(&b, &c).ctx("fraction")?;
        let gf = compose_fractions(&g, &f).ctx("composite")?;
        let (ab, bc, ac) = (
            derived_hom(&a, &b).ctx("hom")?,
            derived_hom(&b, &c).ctx("hom")?,
            derived_hom(&a, &c).ctx("hom")?,
        );
        let cf = fraction_class_in(&ab, &f).ctx("class")?;
        let cg = fraction_class_in(&bc, &g).ctx("class")?;
        let want = compose_classes(&bc, &ab, &ac, &cg, &cf).ctx("class composite")?;
        let got = fraction_class_in(&ac, &gf).ctx("class")?;
        ensure!(got == want, "pair {n}: class of the composite differs from the composite class");
        if got != ac.zero_class() {
            nonzero += 1;
        }
        let aa = derived_hom(&a, &a).ctx("hom")?;
        let id = aa.class_of_chain_map(&ChainMap::identity(&a)).ctx("class")?;
        ensure!(fraction_class(&identity_fraction(&a)).ctx("class")? == id, "pair {n}: identity class");
    }
    Ok(format!("100 composable pairs, {nonzero} nonzero composites"))
}

/// A roof out of `f` and a diamond on it.
pub(crate) fn sample_diamond(s: &mut Sampler, f: &Fraction) -> Result<Diamond, String> {
    let roof = s.roof_to_copy(f).ctx("roof")?;
    s.diamond_on(&roof).ctx("diamond")
}

pub fn diamond_soundness() -> Check {
    let mut s = Sampler::new(0xD5);
    for n in 0..50 {
        let (a, b) = (s.complex3(2), s.complex3(2));
        let f = s.fraction(&a, &b).ctx("fraction")?;
        let d = sample_diamond(&mut s, &f)?;
        let dh = derived_hom(&a, &b).ctx("hom")?;
        let want = fraction_class_in(&dh, d.from_roof().from_fraction()).ctx("class")?;
        for (what, fr) in [
            ("target fraction", d.to_roof().to_fraction().clone()),
            ("first apex", d.from_roof().apex_fraction().ctx("apex")?),
            ("second apex", d.to_roof().apex_fraction().ctx("apex")?),
        ] {
            ensure!(fraction_class_in(&dh, &fr).ctx("class")? == want, "instance {n}: {what} has another class");
        }
        let f2 = d.to_roof().to_fraction();
        ensure!(fractions_equivalent(&f, f2).ctx("equivalence")?, "instance {n}: fractions not equivalent");
    }
    Ok("50 diamonds over 100 roofs".into())
}

pub(crate) fn strict_map2(s: &mut Sampler, a: &Complex2, b: &Complex2) -> Result<ChainMap2, String> {
    let f = s.chain_map(&a.as_complex3(), &b.as_complex3()).ctx("chain map")?;
    ChainMap2::new(a, b, f.f1().clone(), f.f0().clone()).ctx("chain map")
}

/// Checks that `theta` is an isomorphism of centers commuting with the wings.
fn is_center_isomorphism(theta: &GroupHom, b: &Butterfly, c: &Butterfly) -> Result<bool, String> {
    let same = |x: GroupHom, y: &GroupHom| x.same_map(y).ctx("compare");
    Ok(theta.is_isomorphism()
        && same(theta.compose(b.kappa()).ctx("compose")?, c.kappa())?
        && same(theta.compose(b.iota()).ctx("compose")?, c.iota())?
        && same(c.rho().compose(theta).ctx("compose")?, b.rho())?
        && same(c.jmath().compose(theta).ctx("compose")?, b.jmath())?)
}

pub fn butterfly_functoriality() -> Check {
    let mut s = Sampler::new(0xB6);
    let mut nonzero = 0;
    for n in 0..100 {
        let [a, b, c] = [(); 3].map(|_| s.complex2(2));
        let f = strict_map2(&mut s, &a, &b)?;
        let g = strict_map2(&mut s, &b, &c)?;
        let composite = compose_butterflies(
            &butterfly_from_chain_map(&g).ctx("butterfly")?,
            &butterfly_from_chain_map(&f).ctx("butterfly")?,
        )
        .ctx("composite")?;
        let direct = butterfly_from_chain_map(&g.compose(&f).ctx("compose")?).ctx("butterfly")?;
        let theta = butterfly_isomorphism(&composite, &direct)
            .ctx("isomorphism search")?
            .ok_or_else(|| format!("pair {n}: no center isomorphism"))?;
        ensure!(is_center_isomorphism(&theta, &composite, &direct)?, "pair {n}: center map does not commute");
        let (c1, c0) = induced_homology_maps(&composite).ctx("homology")?;
        let (d1, d0) = induced_homology_maps(&direct).ctx("homology")?;
        ensure!(c1.same_map(&d1).ctx("compare")?, "pair {n}: H^-1 maps differ");
        ensure!(c0.same_map(&d0).ctx("compare")?, "pair {n}: H^0 maps differ");
        if !d1.is_zero() || !d0.is_zero() {
            nonzero += 1;
        }
    }
    Ok(format!("100 composable pairs, {nonzero} with nonzero homology maps"))
}

pub fn roof_complex() -> Check {
    let mut s = Sampler::new(0x7C);
    for n in 0..50 {
        let (a, b) = (s.complex3(2), s.complex3(2));
        let f = s.chain_map(&a, &b).ctx("chain map")?;
        let (bf, ea, eb) = roof_setup_from_chain_map(&f).ctx("setup")?;
        let rc = build_roof_complex(&a, &b, &bf, &ea, &eb).ctx("roof complex")?;
        ensure!(degreewise_short_exact(&rc.inclusion, &rc.projection)?, "instance {n}: not short exact");
        ensure!(rc.exact_sequence().ctx("les")?.is_exact(), "instance {n}: cohomology sequence inexact");
        ensure!(is_quasi_isomorphism(&rc.q).ctx("quasi-iso")?, "instance {n}: q is not a quasi-isomorphism");
        ensure!(rc.q_is_quasi_iso, "instance {n}: quasi-isomorphism flag unset");
        let fr = Fraction::new(rc.q.clone(), rc.p.clone()).ctx("fraction")?;
        ensure!(
            fractions_equivalent(&fr, &fraction_from_chain_map(&f)).ctx("equivalence")?,
            "instance {n}: roof fraction differs from the strict map"
        );
    }
    Ok("50 roof complexes from strict maps".into())
}
