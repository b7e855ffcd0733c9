use super::{ChainMap, Complex3};
use crate::error::{Error, Result};
use crate::group::{factor_through, fiber_product, hom_into_sum, FGAbelianGroup, GroupHom};
use crate::matrix::IntegerMatrix;

/// Degreewise fiber product of two chain maps with a common target.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub complex: Complex3,
    pub pr1: ChainMap,
    pub pr2: ChainMap,
    /// Degreewise inclusions into `M1 ⊕ M2`, degrees -2, -1, 0.
    incl: [GroupHom; 3],
}

pub fn pullback_complexes(f: &ChainMap, g: &ChainMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::invalid("pullback needs a common target"));
    }
    let (m1, m2) = (f.source(), g.source());
    let mut parts = Vec::new();
    for deg in [-2, -1, 0] {
        let (p, pr1, pr2) = fiber_product(f.component(deg)?, g.component(deg)?)?;
        let sum = FGAbelianGroup::direct_sum(&[m1.group(deg)?.clone(), m2.group(deg)?.clone()]);
        let incl = hom_into_sum(&sum, &[&pr1, &pr2])?;
        parts.push((p, pr1, pr2, incl));
    }
    let sum_d = |d1: &GroupHom, d2: &GroupHom, s: &GroupHom, t: &GroupHom| -> Result<GroupHom> {
        GroupHom::new(
            s.target().clone(),
            t.target().clone(),
            IntegerMatrix::block_diag(&[d1.matrix(), d2.matrix()]),
        )
    };
    let d2_sum = sum_d(m1.d2(), m2.d2(), &parts[0].3, &parts[1].3)?;
    let d1_sum = sum_d(m1.d1(), m2.d1(), &parts[1].3, &parts[2].3)?;
    let lift = |h: GroupHom, incl: &GroupHom| -> Result<GroupHom> {
        factor_through(&h, incl)?.ok_or_else(|| Error::internal("differential does not preserve the fiber product"))
    };
    let d2 = lift(d2_sum.compose(&parts[0].3)?, &parts[1].3)?;
    let d1 = lift(d1_sum.compose(&parts[1].3)?, &parts[2].3)?;
    let complex = Complex3::new(d2, d1)?;
    let pr1 = ChainMap::new(&complex, m1, parts[0].1.clone(), parts[1].1.clone(), parts[2].1.clone())?;
    let pr2 = ChainMap::new(&complex, m2, parts[0].2.clone(), parts[1].2.clone(), parts[2].2.clone())?;
    if !f.compose(&pr1)?.same_map(&g.compose(&pr2)?)? {
        return Err(Error::internal("pullback square does not commute"));
    }
    let [i2, i1, i0]: [GroupHom; 3] = parts
        .into_iter()
        .map(|p| p.3)
        .collect::<Vec<_>>()
        .try_into()
        .unwrap();
    Ok(Pullback {
        complex,
        pr1,
        pr2,
        incl: [i2, i1, i0],
    })
}

impl Pullback {
    /// The unique map `T -> P` with `pr1 ∘ w = u` and `pr2 ∘ w = v`.
    pub fn factor(&self, u: &ChainMap, v: &ChainMap) -> Result<ChainMap> {
        if u.source() != v.source() || u.target() != self.pr1.target() || v.target() != self.pr2.target() {
            return Err(Error::invalid("cone does not match the pullback"));
        }
        let t = u.source();
        let mut comps = Vec::new();
        for (k, deg) in [-2, -1, 0].into_iter().enumerate() {
            let sum = self.incl[k].target().clone();
            let h = hom_into_sum(&sum, &[u.component(deg)?, v.component(deg)?])?;
            let w = factor_through(&h, &self.incl[k])?
                .ok_or_else(|| Error::DiagramViolation("cone does not commute over the base".into()))?;
            comps.push(w);
        }
        let [w2, w1, w0]: [GroupHom; 3] = comps.try_into().unwrap();
        ChainMap::new(t, &self.complex, w2, w1, w0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::is_quasi_isomorphism;
    use crate::matrix::int;

    #[test]
    fn identity_leg_gives_isomorphic_projection() {
        let z = FGAbelianGroup::free(1);
        let two = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_i64(1, &[&[2]])).unwrap();
        let a = Complex3::new(GroupHom::zero(&FGAbelianGroup::zero(), &z), two).unwrap();
        let id = ChainMap::identity(&a);
        let pb = pullback_complexes(&id, &id).unwrap();
        assert!(pb.pr1.is_degreewise_isomorphism());
        assert!(pb.pr1.same_map(&pb.pr2).unwrap());
        let diag = pb.factor(&id, &id).unwrap();
        assert!(pb.pr1.compose(&diag).unwrap().same_map(&id).unwrap());
        assert!(is_quasi_isomorphism(&pb.pr2).unwrap());
    }

    #[test]
    fn two_quotients_give_congruence_lattice() {
        let z = FGAbelianGroup::free(1);
        let z2 = FGAbelianGroup::cyclic(2);
        let zero = FGAbelianGroup::zero();
        let two = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_i64(1, &[&[2]])).unwrap();
        let m = Complex3::new(two, GroupHom::zero(&z, &zero)).unwrap();
        let b = Complex3::in_degree(z2.clone(), -1).unwrap();
        let q = ChainMap::new(
            &m,
            &b,
            GroupHom::zero(&z, &zero),
            GroupHom::new(z.clone(), z2.clone(), IntegerMatrix::from_i64(1, &[&[1]])).unwrap(),
            GroupHom::zero(&zero, &zero),
        )
        .unwrap();
        let pb = pullback_complexes(&q, &q).unwrap();
        let p1 = pb.complex.g1();
        assert_eq!(p1.invariants().free_rank, 2);
        assert!(p1.invariants().torsion.is_empty());
        // (1, 1) and (2, 0) lie in the fiber product, (1, 0) does not.
        let incl = &pb.incl[1];
        for (v, inside) in [([1, 1], true), ([2, 0], true), ([1, 0], false)] {
            let y = incl.target().element(vec![int(v[0]), int(v[1])]).unwrap();
            assert_eq!(crate::group::solve_in_group(incl, &y).unwrap().is_some(), inside);
        }
    }
}
