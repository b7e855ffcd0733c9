//! Butterflies between length-2 complexes: a middle group `E` with wings
//! `κ : A^-1 -> E`, `ι : B^-1 -> E`, `ρ : E -> A^0` and `ȷ : E -> B^0`,
//! where `B^-1 -ι-> E -ρ-> A^0` is an extension and `ȷ ∘ κ = 0`.

use num_bigint::BigInt;

use crate::complexes::{
    cohomology, is_quasi_isomorphism, ses_to_les, ChainMap, ChainMap2, Cohomology, Complex2, Complex3,
    ExactSequenceReport, HomSum,
};
use crate::error::{Error, Result};
use crate::group::{
    cokernel, factor_through, image_contained, fiber_product, hom_into_sum, kernel, solve_in_group, solve_vec, FGAbelianGroup,
    GroupHom, HomSpace,
};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Butterfly {
    source: Complex2,
    target: Complex2,
    e: FGAbelianGroup,
    kappa: GroupHom,
    iota: GroupHom,
    rho: GroupHom,
    jmath: GroupHom,
}

fn violation(cond: &str) -> Error {
    Error::ButterflyViolation(cond.to_string())
}

pub fn make_butterfly(
    source: &Complex2,
    target: &Complex2,
    kappa: GroupHom,
    iota: GroupHom,
    rho: GroupHom,
    jmath: GroupHom,
) -> Result<Butterfly> {
    let e = kappa.target().clone();
    if kappa.source() != source.g1() || iota.source() != target.g1() || iota.target() != &e {
        return Err(Error::invalid("kappa and iota must map A^-1 and B^-1 into the same E"));
    }
    if rho.source() != &e || rho.target() != source.g0() || jmath.source() != &e || jmath.target() != target.g0() {
        return Err(Error::invalid("rho and jmath must map E to A^0 and B^0"));
    }
    if !rho.compose(&kappa)?.same_map(source.d())? {
        return Err(violation("commutativity: rho ∘ kappa = d_A"));
    }
    if !jmath.compose(&iota)?.same_map(target.d())? {
        return Err(violation("commutativity: jmath ∘ iota = d_B"));
    }
    if !jmath.compose(&kappa)?.is_zero() {
        return Err(violation("NW-SE complex: jmath ∘ kappa = 0"));
    }
    if !iota.is_injective() {
        return Err(violation("NE-SW extension: iota injective"));
    }
    if !rho.is_surjective() {
        return Err(violation("NE-SW extension: rho surjective"));
    }
    let exact_middle = rho.compose(&iota)?.is_zero() && image_contained(&kernel(&rho).1, &iota)?;
    if !exact_middle {
        return Err(violation("NE-SW extension: image(iota) = kernel(rho)"));
    }
    Ok(Butterfly {
        source: source.clone(),
        target: target.clone(),
        e,
        kappa,
        iota,
        rho,
        jmath,
    })
}

/// Assembles a matrix from blocks placed on a grid of row and column sizes.
fn grid(rows: &[usize], cols: &[usize], blocks: &[(usize, usize, &IntegerMatrix)]) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows.iter().sum(), cols.iter().sum());
    for &(i, j, b) in blocks {
        let r0 = rows[..i].iter().sum();
        let c0 = cols[..j].iter().sum();
        m.paste(r0, c0, b);
    }
    m
}

fn ident(n: usize) -> IntegerMatrix {
    IntegerMatrix::identity(n)
}

impl Butterfly {
    pub fn source(&self) -> &Complex2 {
        &self.source
    }
    pub fn target(&self) -> &Complex2 {
        &self.target
    }
    pub fn e(&self) -> &FGAbelianGroup {
        &self.e
    }
    pub fn kappa(&self) -> &GroupHom {
        &self.kappa
    }
    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }
    pub fn rho(&self) -> &GroupHom {
        &self.rho
    }
    pub fn jmath(&self) -> &GroupHom {
        &self.jmath
    }

    /// Re-runs the full invariant check.
    pub fn check(&self) -> Result<()> {
        make_butterfly(
            &self.source,
            &self.target,
            self.kappa.clone(),
            self.iota.clone(),
            self.rho.clone(),
            self.jmath.clone(),
        )
        .map(|_| ())
    }
}

/// The butterfly of a strict map: `E = A^0 ⊕ B^-1`, `κ a = (d_A a, f1 a)`,
/// `ι b = (0, b)`, `ρ` the first projection, `ȷ (a, b) = d_B b - f0 a`.
pub fn butterfly_from_chain_map(f: &ChainMap2) -> Result<Butterfly> {
    let (a, b) = (f.source(), f.target());
    let e = FGAbelianGroup::direct_sum(&[a.g0().clone(), b.g1().clone()]);
    let (na1, na0, nb1, nb0) = (
        a.g1().ambient_rank(),
        a.g0().ambient_rank(),
        b.g1().ambient_rank(),
        b.g0().ambient_rank(),
    );
    let kappa = grid(&[na0, nb1], &[na1], &[(0, 0, a.d().matrix()), (1, 0, f.f1().matrix())]);
    let iota = grid(&[na0, nb1], &[nb1], &[(1, 0, &ident(nb1))]);
    let rho = grid(&[na0], &[na0, nb1], &[(0, 0, &ident(na0))]);
    let neg_f0 = f.f0().matrix().neg();
    let jmath = grid(&[nb0], &[na0, nb1], &[(0, 0, &neg_f0), (0, 1, b.d().matrix())]);
    make_butterfly(
        a,
        b,
        GroupHom::new(a.g1().clone(), e.clone(), kappa)?,
        GroupHom::new(b.g1().clone(), e.clone(), iota)?,
        GroupHom::new(e.clone(), a.g0().clone(), rho)?,
        GroupHom::new(e.clone(), b.g0().clone(), jmath)?,
    )
}

/// `second ∘ first`. The center is `{(x, y) : ȷ1 x + ρ2 y = 0}` modulo the
/// antidiagonal `(ι1 b, -κ2 b)`.
pub fn compose_butterflies(second: &Butterfly, first: &Butterfly) -> Result<Butterfly> {
    if first.target != second.source {
        return Err(Error::invalid("butterflies are not composable"));
    }
    let (_, pr1, pr2) = fiber_product(&first.jmath, &second.rho.neg())?;
    let sum = FGAbelianGroup::direct_sum(&[first.e.clone(), second.e.clone()]);
    let incl = hom_into_sum(&sum, &[&pr1, &pr2])?;
    let into_p = |h: GroupHom| -> Result<GroupHom> {
        factor_through(&h, &incl)?.ok_or_else(|| Error::internal("wing does not land in the fiber product"))
    };
    let zero = |s: &FGAbelianGroup, t: &FGAbelianGroup| GroupHom::zero(s, t);
    let anti = into_p(hom_into_sum(&sum, &[&first.iota, &second.kappa.neg()])?)?;
    let (center, quot) = cokernel(&anti);
    let a1 = first.source.g1();
    let c1 = second.target.g1();
    let kappa = quot.compose(&into_p(hom_into_sum(&sum, &[&first.kappa, &zero(a1, &second.e)])?)?)?;
    let iota = quot.compose(&into_p(hom_into_sum(&sum, &[&zero(c1, &first.e), &second.iota])?)?)?;
    let rho = first.rho.compose(&pr1)?.retarget(&center, first.source.g0())?;
    let jmath = second.jmath.compose(&pr2)?.retarget(&center, second.target.g0())?;
    make_butterfly(&first.source, &second.target, kappa, iota, rho, jmath)
}

/// True iff the NW-SE diagonal is also an extension.
pub fn is_flippable(b: &Butterfly) -> Result<bool> {
    Ok(b.kappa.is_injective()
        && b.jmath.is_surjective()
        && b.jmath.compose(&b.kappa)?.is_zero()
        && image_contained(&kernel(&b.jmath).1, &b.kappa)?)
}

fn cohomology2(c: &Complex2, deg: i32) -> Result<Cohomology> {
    cohomology(&c.as_complex3(), deg)
}

fn matrix_from_columns(rows: usize, cols: Vec<Vec<BigInt>>) -> IntegerMatrix {
    let n = cols.len();
    if n == 0 {
        return IntegerMatrix::zeros(rows, 0);
    }
    IntegerMatrix::from_rows(rows, cols).unwrap().transpose()
}

/// Induced maps `H^-1(A) -> H^-1(B)` and `H^0(A) -> H^0(B)`.
///
/// On `H^-1` a cycle `a` goes to `ι⁻¹ κ(a)`. On `H^0` a class `a0` goes to
/// `-ȷ(e)` for any `e` with `ρ(e) = a0`; the sign makes the butterfly of a
/// strict map induce that map's own cohomology maps.
pub fn induced_homology_maps(b: &Butterfly) -> Result<(GroupHom, GroupHom)> {
    let (ha1, hb1) = (cohomology2(&b.source, -1)?, cohomology2(&b.target, -1)?);
    let (ha0, hb0) = (cohomology2(&b.source, 0)?, cohomology2(&b.target, 0)?);
    let reps = ha1.representatives();
    let mut cols = Vec::new();
    for k in 0..reps.cols() {
        let v = b.kappa.apply_vec(&reps.column(k));
        let y = solve_vec(&b.iota, &v).ok_or_else(|| Error::internal("κ of a cycle is not in the image of ι"))?;
        cols.push(hb1.class_of(&y)?.into_coords());
    }
    let h1 = GroupHom::new(
        ha1.group.clone(),
        hb1.group.clone(),
        matrix_from_columns(hb1.group.ambient_rank(), cols),
    )?;
    let reps = ha0.representatives();
    let mut cols = Vec::new();
    for k in 0..reps.cols() {
        let e = solve_vec(&b.rho, &reps.column(k)).ok_or_else(|| Error::internal("ρ is not surjective"))?;
        let w: Vec<BigInt> = b.jmath.apply_vec(&e).into_iter().map(|x| -x).collect();
        cols.push(hb0.class_of(&w)?.into_coords());
    }
    let h0 = GroupHom::new(
        ha0.group.clone(),
        hb0.group.clone(),
        matrix_from_columns(hb0.group.ambient_rank(), cols),
    )?;
    Ok((h1, h0))
}

/// A center isomorphism `θ : E -> E'` commuting with all four wings, if one
/// exists. Any such map is automatically invertible.
pub fn butterfly_isomorphism(b: &Butterfly, c: &Butterfly) -> Result<Option<GroupHom>> {
    if b.source != c.source || b.target != c.target {
        return Err(Error::invalid("butterflies do not share endpoints"));
    }
    let space = HomSum::new(vec![HomSpace::new(&b.e, &c.e)]);
    let conds = HomSum::new(vec![
        HomSpace::new(b.source.g1(), &c.e),
        HomSpace::new(b.target.g1(), &c.e),
        HomSpace::new(&b.e, b.source.g0()),
        HomSpace::new(&b.e, b.target.g0()),
    ]);
    let op = space.linear_map(&conds, |t| {
        Ok(vec![
            t[0].compose(&b.kappa)?,
            t[0].compose(&b.iota)?,
            c.rho.compose(&t[0])?,
            c.jmath.compose(&t[0])?,
        ])
    })?;
    let goal = conds.group.element(conds.encode(&[&c.kappa, &c.iota, &b.rho, &b.jmath])?)?;
    let Some(x) = solve_in_group(&op, &goal)? else {
        return Ok(None);
    };
    let theta = space.decode(x.coords())?.remove(0);
    if !theta.is_isomorphism() {
        return Err(Error::internal("morphism of butterflies is not invertible"));
    }
    Ok(Some(theta))
}

/// The complex `M = (A^-2 ⊕ B^-2 -κ-> P -ȷ-> E^0)` built from a butterfly
/// out of the product of truncations, with its legs and the short exact
/// sequence `0 -> E -> M -> A^{<0} × B^{<0} -> 0`.
#[derive(Debug, Clone)]
pub struct RoofComplex {
    pub m: Complex3,
    pub q: ChainMap,
    pub p: ChainMap,
    pub q_is_quasi_iso: bool,
    /// `E` as `0 -> E^-1 -> E^0`.
    pub e_complex: Complex3,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl RoofComplex {
    pub fn exact_sequence(&self) -> Result<ExactSequenceReport> {
        ses_to_les(&self.inclusion, &self.projection)
    }
}

fn diagram_error(e: Error) -> Error {
    match e {
        Error::DiagramViolation(m) => Error::invalid(format!("degree-0 maps do not make the diagram commute: {m}")),
        other => other,
    }
}

pub fn build_roof_complex(
    a: &Complex3,
    b: &Complex3,
    bf: &Butterfly,
    e0_to_a0: &GroupHom,
    e0_to_b0: &GroupHom,
) -> Result<RoofComplex> {
    let ta = a.truncate_top();
    let tb = b.truncate_top();
    let s = bf.source();
    let prod_d = IntegerMatrix::block_diag(&[ta.d().matrix(), tb.d().matrix()]);
    let expected_g1 = FGAbelianGroup::direct_sum(&[a.g2().clone(), b.g2().clone()]);
    let expected_g0 = FGAbelianGroup::direct_sum(&[a.g1().clone(), b.g1().clone()]);
    if s.g1() != &expected_g1 || s.g0() != &expected_g0 || s.d().matrix() != &prod_d {
        return Err(Error::invalid("butterfly source is not the product of the truncations"));
    }
    let e0 = bf.target().g0();
    if e0_to_a0.source() != e0 || e0_to_a0.target() != a.g0() || e0_to_b0.source() != e0 || e0_to_b0.target() != b.g0() {
        return Err(Error::invalid("degree-0 maps must go from E^0 to A^0 and B^0"));
    }
    let m = Complex3::new(bf.kappa.clone(), bf.jmath.clone())?;
    let (na2, nb2, na1, nb1) = (
        a.g2().ambient_rank(),
        b.g2().ambient_rank(),
        a.g1().ambient_rank(),
        b.g1().ambient_rank(),
    );
    let pa2 = GroupHom::new(m.g2().clone(), a.g2().clone(), grid(&[na2], &[na2, nb2], &[(0, 0, &ident(na2))]))?;
    let pb2 = GroupHom::new(m.g2().clone(), b.g2().clone(), grid(&[nb2], &[na2, nb2], &[(0, 1, &ident(nb2))]))?;
    let pa1 = GroupHom::new(expected_g0.clone(), a.g1().clone(), grid(&[na1], &[na1, nb1], &[(0, 0, &ident(na1))]))?;
    let pb1 = GroupHom::new(expected_g0.clone(), b.g1().clone(), grid(&[nb1], &[na1, nb1], &[(0, 1, &ident(nb1))]))?;
    let q = ChainMap::new(&m, a, pa2, pa1.compose(&bf.rho)?, e0_to_a0.clone()).map_err(diagram_error)?;
    let p = ChainMap::new(&m, b, pb2, pb1.compose(&bf.rho)?, e0_to_b0.clone()).map_err(diagram_error)?;

    let t = bf.target();
    let zero = FGAbelianGroup::zero();
    let e_complex = Complex3::new(GroupHom::zero(&zero, t.g1()), t.d().clone())?;
    let inclusion = ChainMap::new(
        &e_complex,
        &m,
        GroupHom::zero(&zero, m.g2()),
        bf.iota.clone(),
        GroupHom::identity(e0),
    )?;
    let quotient = Complex3::new(s.d().clone(), GroupHom::zero(s.g0(), &zero))?;
    let projection = ChainMap::new(
        &m,
        &quotient,
        GroupHom::identity(m.g2()),
        bf.rho.clone(),
        GroupHom::zero(e0, &zero),
    )?;
    let q_is_quasi_iso = is_quasi_isomorphism(&q)?;
    Ok(RoofComplex {
        m,
        q,
        p,
        q_is_quasi_iso,
        e_complex,
        inclusion,
        projection,
    })
}

/// Input for [`build_roof_complex`] obtained from a strict map `f : A -> B`:
/// `E = (B^-2 -> A^0 ⊕ B^-1)`, center `A^-1 ⊕ B^-1 ⊕ B^-2`. The resulting
/// fraction is equivalent to `f`.
pub fn roof_setup_from_chain_map(f: &ChainMap) -> Result<(Butterfly, GroupHom, GroupHom)> {
    let (a, b) = (f.source(), f.target());
    let r = |g: &FGAbelianGroup| g.ambient_rank();
    let (na2, na1, na0) = (r(a.g2()), r(a.g1()), r(a.g0()));
    let (nb2, nb1, nb0) = (r(b.g2()), r(b.g1()), r(b.g0()));
    let src1 = FGAbelianGroup::direct_sum(&[a.g2().clone(), b.g2().clone()]);
    let src0 = FGAbelianGroup::direct_sum(&[a.g1().clone(), b.g1().clone()]);
    let source = Complex2::new(GroupHom::new(
        src1.clone(),
        src0.clone(),
        IntegerMatrix::block_diag(&[a.d2().matrix(), b.d2().matrix()]),
    )?);
    let e0 = FGAbelianGroup::direct_sum(&[a.g0().clone(), b.g1().clone()]);
    let target = Complex2::new(GroupHom::new(
        b.g2().clone(),
        e0.clone(),
        grid(&[na0, nb1], &[nb2], &[(1, 0, b.d2().matrix())]),
    )?);
    let center = FGAbelianGroup::direct_sum(&[a.g1().clone(), b.g1().clone(), b.g2().clone()]);
    let minus = ident(nb2).neg();
    let kappa = grid(
        &[na1, nb1, nb2],
        &[na2, nb2],
        &[(0, 0, a.d2().matrix()), (1, 1, b.d2().matrix()), (2, 0, f.f2().matrix()), (2, 1, &minus)],
    );
    let iota = grid(&[na1, nb1, nb2], &[nb2], &[(2, 0, &ident(nb2))]);
    let rho = grid(&[na1, nb1], &[na1, nb1, nb2], &[(0, 0, &ident(na1)), (1, 1, &ident(nb1))]);
    let neg_f1 = f.f1().matrix().neg();
    let jmath = grid(
        &[na0, nb1],
        &[na1, nb1, nb2],
        &[(0, 0, a.d1().matrix()), (1, 0, &neg_f1), (1, 1, &ident(nb1)), (1, 2, b.d2().matrix())],
    );
    let bf = make_butterfly(
        &source,
        &target,
        GroupHom::new(src1, center.clone(), kappa)?,
        GroupHom::new(b.g2().clone(), center.clone(), iota)?,
        GroupHom::new(center.clone(), src0, rho)?,
        GroupHom::new(center, e0.clone(), jmath)?,
    )?;
    let e0a = GroupHom::new(e0.clone(), a.g0().clone(), grid(&[na0], &[na0, nb1], &[(0, 0, &ident(na0))]))?;
    let e0b = GroupHom::new(
        e0,
        b.g0().clone(),
        grid(&[nb0], &[na0, nb1], &[(0, 0, f.f0().matrix()), (0, 1, b.d1().matrix())]),
    )?;
    Ok((bf, e0a, e0b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn times(k: i64, s: &FGAbelianGroup, t: &FGAbelianGroup) -> GroupHom {
        GroupHom::new(s.clone(), t.clone(), IntegerMatrix::from_i64(s.ambient_rank(), &[&[k]])).unwrap()
    }

    #[test]
    fn identity_on_z_in_degree_zero() {
        let a = Complex2::new(GroupHom::zero(&FGAbelianGroup::zero(), &z()));
        let bf = butterfly_from_chain_map(&ChainMap2::identity(&a)).unwrap();
        assert_eq!(bf.e().ambient_rank(), 1);
        assert!(bf.rho().same_map(&GroupHom::identity(&z())).unwrap());
        assert!(bf.jmath().same_map(&GroupHom::identity(&z()).neg()).unwrap());
        let (h1, h0) = induced_homology_maps(&bf).unwrap();
        assert!(h0.same_map(&GroupHom::identity(h0.source())).unwrap());
        assert!(h1.source().is_trivial());
    }

    #[test]
    fn invariant_failures_are_named() {
        let a = Complex2::new(times(2, &z(), &z()));
        let e = z();
        let err = make_butterfly(
            &a,
            &a,
            times(2, &z(), &e),
            GroupHom::zero(&z(), &e),
            times(1, &e, &z()),
            GroupHom::zero(&e, &z()),
        )
        .unwrap_err();
        assert!(matches!(err, Error::ButterflyViolation(_)));
    }

    #[test]
    fn flippable_examples() {
        let a = Complex2::new(times(2, &z(), &z()));
        let id = butterfly_from_chain_map(&ChainMap2::identity(&a)).unwrap();
        assert!(is_flippable(&id).unwrap());
        let zero = ChainMap2::new(&a, &a, GroupHom::zero(&z(), &z()), GroupHom::zero(&z(), &z())).unwrap();
        assert!(!is_flippable(&butterfly_from_chain_map(&zero).unwrap()).unwrap());
        let (h1, h0) = induced_homology_maps(&butterfly_from_chain_map(&zero).unwrap()).unwrap();
        assert!(h1.is_zero() && h0.is_zero());
    }

    #[test]
    fn composition_with_identity() {
        let a = Complex2::new(times(2, &z(), &z()));
        let f = ChainMap2::new(&a, &a, times(3, &z(), &z()), times(3, &z(), &z())).unwrap();
        let sf = butterfly_from_chain_map(&f).unwrap();
        let sid = butterfly_from_chain_map(&ChainMap2::identity(&a)).unwrap();
        let c = compose_butterflies(&sid, &sf).unwrap();
        assert!(butterfly_isomorphism(&c, &sf).unwrap().is_some());
        let ff = butterfly_from_chain_map(&f.compose(&f).unwrap()).unwrap();
        assert!(butterfly_isomorphism(&compose_butterflies(&sf, &sf).unwrap(), &ff).unwrap().is_some());
        // ×3 and the identity differ by a homotopy through d = ×2, the zero map does not
        assert!(butterfly_isomorphism(&sf, &sid).unwrap().is_some());
        let zero = ChainMap2::new(&a, &a, GroupHom::zero(&z(), &z()), GroupHom::zero(&z(), &z())).unwrap();
        let s0 = butterfly_from_chain_map(&zero).unwrap();
        assert!(butterfly_isomorphism(&s0, &sid).unwrap().is_none());
    }

    #[test]
    fn roof_complex_of_identity() {
        let a = Complex3::new(times(2, &z(), &z()), GroupHom::zero(&z(), &z())).unwrap();
        let (bf, ea, eb) = roof_setup_from_chain_map(&ChainMap::identity(&a)).unwrap();
        let rc = build_roof_complex(&a, &a, &bf, &ea, &eb).unwrap();
        assert!(rc.q_is_quasi_iso);
        assert!(is_quasi_isomorphism(&rc.p).unwrap());
        assert!(rc.exact_sequence().unwrap().is_exact());
        let broken = GroupHom::zero(ea.source(), ea.target());
        let err = build_roof_complex(&a, &a, &bf, &broken, &eb);
        // λ_A = 0 here, so a zero map to A^0 still commutes
        assert!(err.is_ok());
    }
}
