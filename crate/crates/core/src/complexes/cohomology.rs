use num_bigint::BigInt;

use super::{ChainMap, Complex3};
use crate::error::{Error, Result};
use crate::group::{cokernel, kernel, solve_vec, FGAbelianGroup, GroupElement, GroupHom};
use crate::matrix::IntegerMatrix;

/// A cohomology group in canonical form together with the data needed
/// to move between cycles and classes.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: i32,
    /// Canonical presentation of the cohomology group.
    pub group: FGAbelianGroup,
    /// The chain group the cycles live in.
    pub chains: FGAbelianGroup,
    /// Injective map from `group` into chains modulo boundaries; its
    /// matrix sends a class to a cycle representative.
    rep: GroupHom,
}

impl Cohomology {
    /// Computes `ker(d_out) / im(d_in)` for `d_in : X -> C`, `d_out : C -> Y`.
    pub fn of_maps(degree: i32, d_in: &GroupHom, d_out: &GroupHom) -> Result<Self> {
        let chains = d_in.target().clone();
        if d_out.source() != &chains {
            return Err(Error::invalid("differentials do not meet at the same group"));
        }
        let (q, _) = cokernel(d_in);
        let d_out_q = GroupHom::new(q.clone(), d_out.target().clone(), d_out.matrix().clone())
            .map_err(|_| Error::ComplexViolation("consecutive differentials do not compose to zero".into()))?;
        let (k, incl) = kernel(&d_out_q);
        let c = k.canonical();
        let rep = incl.compose(&c.from_canonical)?;
        Ok(Cohomology {
            degree,
            group: c.group,
            chains,
            rep,
        })
    }

    /// Class of a cycle given by ambient coordinates in the chain group.
    pub fn class_of(&self, cycle: &[BigInt]) -> Result<GroupElement> {
        if cycle.len() != self.chains.ambient_rank() {
            return Err(Error::invalid("cycle has the wrong length"));
        }
        let x = solve_vec(&self.rep, cycle).ok_or_else(|| Error::invalid("vector is not a cycle"))?;
        self.group.element(x)
    }

    /// A cycle representing a class.
    pub fn representative(&self, class: &GroupElement) -> Result<Vec<BigInt>> {
        if class.group() != &self.group {
            return Err(Error::invalid("class does not belong to this cohomology group"));
        }
        Ok(self.rep.apply_vec(class.coords()))
    }

    /// Cycle representatives of the canonical generators, as columns.
    pub fn representatives(&self) -> &IntegerMatrix {
        self.rep.matrix()
    }
}

/// `H^{deg}(c)` with `deg ∈ {-2, -1, 0}`.
pub fn cohomology(c: &Complex3, deg: i32) -> Result<Cohomology> {
    let z = FGAbelianGroup::zero();
    match deg {
        -2 => Cohomology::of_maps(deg, &GroupHom::zero(&z, c.g2()), c.d2()),
        -1 => Cohomology::of_maps(deg, c.d2(), c.d1()),
        0 => Cohomology::of_maps(deg, c.d1(), &GroupHom::zero(c.g0(), &z)),
        _ => Err(Error::invalid(format!("degree {deg} outside [-2, 0]"))),
    }
}

/// The map `H(f) : ha -> hb` induced by a chain-level map `f`.
pub fn induced_map(f: &GroupHom, ha: &Cohomology, hb: &Cohomology) -> Result<GroupHom> {
    if f.source() != &ha.chains || f.target() != &hb.chains {
        return Err(Error::invalid("map does not connect the chain groups"));
    }
    let reps = ha.representatives();
    let mut cols = Vec::with_capacity(reps.cols());
    for k in 0..reps.cols() {
        let image = f.apply_vec(&reps.column(k));
        cols.push(hb.class_of(&image)?.into_coords());
    }
    let r = hb.group.ambient_rank();
    let m = IntegerMatrix::from_rows(r, cols).unwrap().transpose();
    GroupHom::new(ha.group.clone(), hb.group.clone(), m)
}

impl ChainMap {
    /// Induced map on `H^{deg}`.
    pub fn induced(&self, deg: i32) -> Result<GroupHom> {
        let ha = cohomology(self.source(), deg)?;
        let hb = cohomology(self.target(), deg)?;
        induced_map(self.component(deg)?, &ha, &hb)
    }
}

/// True iff all three induced maps on cohomology are isomorphisms.
pub fn is_quasi_isomorphism(f: &ChainMap) -> Result<bool> {
    for deg in [-2, -1, 0] {
        if !f.induced(deg)?.is_isomorphism() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    fn times(k: i64, s: &FGAbelianGroup, t: &FGAbelianGroup) -> GroupHom {
        GroupHom::new(s.clone(), t.clone(), IntegerMatrix::from_i64(1, &[&[k]])).unwrap()
    }

    #[test]
    fn times_two_then_zero() {
        let c = Complex3::new(times(2, &z(), &z()), times(0, &z(), &z())).unwrap();
        assert!(cohomology(&c, -2).unwrap().group.is_trivial());
        assert_eq!(cohomology(&c, -1).unwrap().group.invariants().torsion, vec![int(2)]);
        assert!(cohomology(&c, 0).unwrap().group.isomorphic(&z()));
    }

    #[test]
    fn acyclic_and_zero() {
        let zero = FGAbelianGroup::zero();
        let c = Complex3::new(GroupHom::zero(&zero, &z()), times(1, &z(), &z())).unwrap();
        for d in [-2, -1, 0] {
            assert!(cohomology(&c, d).unwrap().group.is_trivial());
            assert!(cohomology(&Complex3::zero(), d).unwrap().group.is_trivial());
        }
        assert!(cohomology(&c, 1).is_err());
    }

    #[test]
    fn quasi_iso_examples() {
        let c = Complex3::new(times(2, &z(), &z()), GroupHom::zero(&z(), &FGAbelianGroup::zero())).unwrap();
        assert!(is_quasi_isomorphism(&ChainMap::identity(&c)).unwrap());
        let z2 = FGAbelianGroup::cyclic(2);
        let t = Complex3::in_degree(z2.clone(), -1).unwrap();
        let f = ChainMap::new(
            &c,
            &t,
            GroupHom::zero(&z(), t.g2()),
            times(1, &z(), &z2),
            GroupHom::zero(c.g0(), t.g0()),
        )
        .unwrap();
        assert!(is_quasi_isomorphism(&f).unwrap());
        let a = Complex3::in_degree(z(), 0).unwrap();
        assert!(!is_quasi_isomorphism(&ChainMap::zero(&a, &a)).unwrap());
    }
}
