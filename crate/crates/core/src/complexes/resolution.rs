use super::cohomology::{cohomology, is_quasi_isomorphism, Cohomology};
use super::homcx::{hom_complex_truncated, TruncatedHom};
use super::{ChainMap, Complex3, Homotopy};
use crate::error::{Error, Result};
use crate::group::{fiber_product, kernel, solve_in_group, FGAbelianGroup, GroupElement, GroupHom};
use crate::matrix::{row_basis, IntegerMatrix};

/// A degreewise free resolution `F3 -> F2 -> F1 -> F0` of a complex.
///
/// Maps out of the resolution into complexes concentrated in `[-2, 0]`
/// only see `F2 / F3`, so the resolution also carries the length-3 complex
/// `quotient = (F2/F3 -> F1 -> F0)` and the augmentation is a chain map
/// from it. Chain maps and homotopies out of `quotient` are exactly those
/// out of the full resolution.
#[derive(Debug, Clone)]
pub struct FreeResolution {
    pub resolved: Complex3,
    pub f3: FGAbelianGroup,
    pub f2: FGAbelianGroup,
    pub f1: FGAbelianGroup,
    pub f0: FGAbelianGroup,
    pub d3: GroupHom,
    pub d2: GroupHom,
    pub d1: GroupHom,
    pub quotient: Complex3,
    pub augmentation: ChainMap,
}

pub fn free_resolution(a: &Complex3) -> Result<FreeResolution> {
    let n0 = a.g0().ambient_rank();
    let f0 = FGAbelianGroup::free(n0);
    let eps0 = GroupHom::new(f0.clone(), a.g0().clone(), IntegerMatrix::identity(n0))?;

    let (p1, p1_a, p1_f) = fiber_product(a.d1(), &eps0)?;
    let f1 = FGAbelianGroup::free(p1.ambient_rank());
    let eps1 = p1_a.retarget(&f1, a.g1())?;
    let d1 = p1_f.retarget(&f1, &f0)?;

    let (_, z_incl) = kernel(&d1);
    let (p2, p2_a, p2_z) = fiber_product(a.d2(), &eps1.compose(&z_incl)?)?;
    let p2_to_f1 = z_incl.compose(&p2_z)?;
    let f2 = FGAbelianGroup::free(p2.ambient_rank());
    let d2 = p2_to_f1.retarget(&f2, &f1)?;

    let r = row_basis(p2.relations());
    let f3 = FGAbelianGroup::free(r.rows());
    let d3 = GroupHom::new(f3.clone(), f2.clone(), r.transpose())?;

    let quotient = Complex3::new(p2_to_f1, d1.clone())?;
    let augmentation = ChainMap::new(&quotient, a, p2_a, eps1, eps0)?;
    if !is_quasi_isomorphism(&augmentation)? {
        return Err(Error::internal("resolution augmentation is not a quasi-isomorphism"));
    }
    Ok(FreeResolution {
        resolved: a.clone(),
        f3,
        f2,
        f1,
        f0,
        d3,
        d2,
        d1,
        quotient,
        augmentation,
    })
}

/// An element of a derived hom group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedHomClass {
    pub ambient: FGAbelianGroup,
    pub coordinates: GroupElement,
}

/// `Hom_D(A, B)` computed as chain maps out of a resolution of `A` up to
/// homotopy.
#[derive(Debug, Clone)]
pub struct DerivedHom {
    pub resolution: FreeResolution,
    pub hom: TruncatedHom,
    pub pi0: Cohomology,
}

pub fn derived_hom(a: &Complex3, b: &Complex3) -> Result<DerivedHom> {
    DerivedHom::with_resolution(free_resolution(a)?, b)
}

impl DerivedHom {
    pub fn with_resolution(resolution: FreeResolution, b: &Complex3) -> Result<Self> {
        let hom = hom_complex_truncated(&resolution.quotient, b)?;
        let pi0 = cohomology(&hom.complex, 0)?;
        Ok(DerivedHom { resolution, hom, pi0 })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.pi0.group
    }

    pub fn source(&self) -> &Complex3 {
        &self.resolution.resolved
    }

    pub fn target(&self) -> &Complex3 {
        &self.hom.target
    }

    fn class(&self, coordinates: GroupElement) -> DerivedHomClass {
        DerivedHomClass {
            ambient: self.pi0.group.clone(),
            coordinates,
        }
    }

    /// Class of a chain map out of the resolution's quotient complex.
    pub fn class_of_map(&self, phi: &ChainMap) -> Result<DerivedHomClass> {
        let z = self.hom.encode_chain_map(phi)?;
        Ok(self.class(self.pi0.class_of(z.coords())?))
    }

    /// Class of a strict chain map `A -> B`.
    pub fn class_of_chain_map(&self, f: &ChainMap) -> Result<DerivedHomClass> {
        self.class_of_map(&f.compose(&self.resolution.augmentation)?)
    }

    pub fn representative(&self, c: &DerivedHomClass) -> Result<ChainMap> {
        if c.ambient != self.pi0.group {
            return Err(Error::invalid("class belongs to a different derived hom group"));
        }
        self.hom.decode_chain_map(&self.pi0.representative(&c.coordinates)?)
    }

    pub fn zero_class(&self) -> DerivedHomClass {
        self.class(self.pi0.group.zero_element())
    }

    /// Generators of the group, as classes.
    pub fn generators(&self) -> Vec<DerivedHomClass> {
        (0..self.pi0.group.ambient_rank())
            .map(|k| self.class(self.pi0.group.generator(k)))
            .collect()
    }

    pub fn class_from_coords(&self, coords: Vec<num_bigint::BigInt>) -> Result<DerivedHomClass> {
        Ok(self.class(self.pi0.group.element(coords)?))
    }
}

/// Composition of derived classes `g ∘ f` for `f ∈ Hom_D(A, B)`,
/// `g ∈ Hom_D(B, C)`, landing in `ac = Hom_D(A, C)`.
pub fn compose_classes(
    bc: &DerivedHom,
    ab: &DerivedHom,
    ac: &DerivedHom,
    g: &DerivedHomClass,
    f: &DerivedHomClass,
) -> Result<DerivedHomClass> {
    if ab.target() != bc.source() || ac.source() != ab.source() || ac.target() != bc.target() {
        return Err(Error::invalid("derived hom groups are not composable"));
    }
    if ac.resolution.quotient != ab.resolution.quotient {
        return Err(Error::invalid("composite uses a different resolution of the source"));
    }
    let phi = ab.representative(f)?;
    let lifted = lift_map(&ab.resolution, &phi, &bc.resolution.augmentation)?;
    let psi = bc.representative(g)?;
    ac.class_of_map(&psi.compose(&lifted.map)?)
}

/// A chain map `l` out of a resolution with a homotopy `phi ~ q ∘ l`.
#[derive(Debug, Clone)]
pub struct Lift {
    pub map: ChainMap,
    pub homotopy: Homotopy,
}

/// Lifts `phi : F -> Y` through a quasi-isomorphism `q : M -> Y`, up to
/// homotopy.
pub fn lift_map(res: &FreeResolution, phi: &ChainMap, q: &ChainMap) -> Result<Lift> {
    let f = &res.quotient;
    if phi.source() != f || phi.target() != q.target() {
        return Err(Error::invalid("map to lift does not start at the resolution or end at the target of q"));
    }
    if !is_quasi_isomorphism(q)? {
        return Err(Error::Precondition("q is not a quasi-isomorphism".into()));
    }
    let hm = hom_complex_truncated(f, q.source())?;
    let hy = hom_complex_truncated(f, q.target())?;
    let pm = cohomology(&hm.complex, 0)?;
    let py = cohomology(&hy.complex, 0)?;
    let reps = pm.representatives();
    let mut cols = Vec::new();
    for k in 0..reps.cols() {
        let z = hm.decode_chain_map(&reps.column(k))?;
        let image = hy.encode_chain_map(&q.compose(&z)?)?;
        cols.push(py.class_of(image.coords())?.into_coords());
    }
    let r = py.group.ambient_rank();
    let post = GroupHom::new(
        pm.group.clone(),
        py.group.clone(),
        IntegerMatrix::from_rows(r, cols).unwrap().transpose(),
    )?;
    let goal = py.class_of(hy.encode_chain_map(phi)?.coords())?;
    let x = solve_in_group(&post, &goal)?
        .ok_or_else(|| Error::internal("post-composition with a quasi-isomorphism is not surjective on classes"))?;
    let map = hm.decode_chain_map(&pm.representative(&x)?)?;
    let homotopy = hy
        .find_homotopy(phi, &q.compose(&map)?)?
        .ok_or_else(|| Error::internal("lift is not homotopic to the map it lifts"))?;
    Ok(Lift { map, homotopy })
}

/// Lifts the augmentation of `res` through `q : M -> A`.
pub fn lift_through_quasi_iso(res: &FreeResolution, q: &ChainMap) -> Result<Lift> {
    lift_map(res, &res.augmentation, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn times(k: i64) -> GroupHom {
        GroupHom::new(z(), z(), IntegerMatrix::from_i64(1, &[&[k]])).unwrap()
    }

    /// `Z --k--> Z` placed in degrees -1, 0.
    fn cone_low(k: i64) -> Complex3 {
        Complex3::new(GroupHom::zero(&FGAbelianGroup::zero(), &z()), times(k)).unwrap()
    }

    /// `Z --k--> Z` placed in degrees -2, -1.
    fn cone_high(k: i64) -> Complex3 {
        Complex3::new(times(k), GroupHom::zero(&z(), &FGAbelianGroup::zero())).unwrap()
    }

    #[test]
    fn resolution_of_free_and_torsion() {
        let a = Complex3::in_degree(z(), 0).unwrap();
        let r = free_resolution(&a).unwrap();
        assert_eq!(r.f1.ambient_rank() + r.f2.ambient_rank() + r.f3.ambient_rank(), 0);
        assert!(r.augmentation.is_degreewise_isomorphism());
        let t = Complex3::in_degree(FGAbelianGroup::cyclic(2), 0).unwrap();
        let r = free_resolution(&t).unwrap();
        assert_eq!(r.f1.ambient_rank(), 1);
        assert_eq!(r.d1.matrix(), &IntegerMatrix::from_i64(1, &[&[2]]));
        let r = free_resolution(&cone_high(2)).unwrap();
        let h = cohomology(&r.quotient, -1).unwrap();
        assert_eq!(h.group.invariants().torsion, vec![int(2)]);
        assert!(cohomology(&r.quotient, 0).unwrap().group.is_trivial());
    }

    #[test]
    fn derived_hom_examples() {
        let a = Complex3::in_degree(z(), 0).unwrap();
        let d = derived_hom(&a, &a).unwrap();
        assert!(d.group().isomorphic(&z()));
        let id = d.class_of_chain_map(&ChainMap::identity(&a)).unwrap();
        assert_eq!(id.coordinates.order(), None);
        let ext = derived_hom(&cone_low(2), &cone_high(2)).unwrap();
        assert_eq!(ext.group().invariants().torsion, vec![int(2)]);
        assert!(derived_hom(&cone_high(2), &cone_low(2)).unwrap().group().is_trivial());
    }

    #[test]
    fn lifting_examples() {
        let a = Complex3::in_degree(FGAbelianGroup::cyclic(2), -1).unwrap();
        let m = cone_high(2);
        let q = ChainMap::new(
            &m,
            &a,
            GroupHom::zero(m.g2(), a.g2()),
            GroupHom::new(z(), FGAbelianGroup::cyclic(2), IntegerMatrix::from_i64(1, &[&[1]])).unwrap(),
            GroupHom::zero(m.g0(), a.g0()),
        )
        .unwrap();
        let res = free_resolution(&a).unwrap();
        let l = lift_through_quasi_iso(&res, &q).unwrap();
        assert!(crate::complexes::verify_homotopy(&l.homotopy).unwrap());
        let res_id = lift_through_quasi_iso(&res, &ChainMap::identity(&a)).unwrap();
        assert!(res_id.homotopy.from_map().same_map(&res.augmentation).unwrap());
        assert!(crate::complexes::verify_homotopy(&res_id.homotopy).unwrap());
        // the lift is the identity on F^-1 up to homotopy, i.e. odd
        assert!(num_integer::Integer::is_odd(l.map.f1().matrix().get(0, 0)));
        let zero = ChainMap::zero(&a, &a);
        assert!(matches!(lift_through_quasi_iso(&res, &zero), Err(Error::Precondition(_))));
    }
}
