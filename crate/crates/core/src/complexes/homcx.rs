use super::{ChainMap, Complex3, Homotopy, SecondHomotopy};
use crate::error::{Error, Result};
use crate::group::{kernel, solve_vec, FGAbelianGroup, GroupElement, GroupHom, HomSpace};
use crate::matrix::IntegerMatrix;

/// A direct sum of hom spaces, used for the graded pieces of a hom complex.
#[derive(Debug, Clone)]
pub struct HomSum {
    pub spaces: Vec<HomSpace>,
    pub group: FGAbelianGroup,
    offsets: Vec<usize>,
}

impl HomSum {
    pub fn new(spaces: Vec<HomSpace>) -> Self {
        let groups: Vec<_> = spaces.iter().map(|s| s.group.clone()).collect();
        let group = FGAbelianGroup::direct_sum(&groups);
        let mut offsets = Vec::new();
        let mut o = 0;
        for g in &groups {
            offsets.push(o);
            o += g.ambient_rank();
        }
        HomSum { spaces, group, offsets }
    }

    pub fn encode(&self, maps: &[&GroupHom]) -> Result<Vec<num_bigint::BigInt>> {
        if maps.len() != self.spaces.len() {
            return Err(Error::invalid("wrong number of components"));
        }
        let mut out = Vec::new();
        for (s, f) in self.spaces.iter().zip(maps) {
            out.extend(s.encode(f)?.into_coords());
        }
        Ok(out)
    }

    pub fn decode(&self, x: &[num_bigint::BigInt]) -> Result<Vec<GroupHom>> {
        if x.len() != self.group.ambient_rank() {
            return Err(Error::invalid("wrong coordinate count"));
        }
        self.spaces
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let n = s.group.ambient_rank();
                s.decode_vec(&x[self.offsets[k]..self.offsets[k] + n])
            })
            .collect()
    }

    /// Group map induced by an additive operation on tuples of maps.
    pub fn linear_map<F>(&self, target: &HomSum, op: F) -> Result<GroupHom>
    where
        F: Fn(&[GroupHom]) -> Result<Vec<GroupHom>>,
    {
        let n = self.group.ambient_rank();
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            let e = self.group.generator(k).into_coords();
            let image = op(&self.decode(&e)?)?;
            let refs: Vec<&GroupHom> = image.iter().collect();
            cols.push(target.encode(&refs)?);
        }
        let r = target.group.ambient_rank();
        let m = IntegerMatrix::from_rows(r, cols).unwrap().transpose();
        GroupHom::new(self.group.clone(), target.group.clone(), m)
    }
}

/// The smooth truncation `Hom^-2 -> Hom^-1 -> Z^0` of the hom complex,
/// where `Z^0` is the group of chain maps.
#[derive(Debug, Clone)]
pub struct TruncatedHom {
    pub source: Complex3,
    pub target: Complex3,
    /// `Hom(A^0, B^-2)`.
    pub hom2: HomSum,
    /// `Hom(A^-1, B^-2) ⊕ Hom(A^0, B^-1)`.
    pub hom1: HomSum,
    /// `Hom(A^-2, B^-2) ⊕ Hom(A^-1, B^-1) ⊕ Hom(A^0, B^0)`.
    pub hom0: HomSum,
    /// Chain maps, with their inclusion into `hom0`.
    pub z0_incl: GroupHom,
    /// The complex `Hom^-2 -> Hom^-1 -> Z^0`.
    pub complex: Complex3,
}

pub fn hom_complex_truncated(a: &Complex3, b: &Complex3) -> Result<TruncatedHom> {
    let hs = HomSpace::new;
    let hom2 = HomSum::new(vec![hs(a.g0(), b.g2())]);
    let hom1 = HomSum::new(vec![hs(a.g1(), b.g2()), hs(a.g0(), b.g1())]);
    let hom0 = HomSum::new(vec![hs(a.g2(), b.g2()), hs(a.g1(), b.g1()), hs(a.g0(), b.g0())]);
    let obstruction = HomSum::new(vec![hs(a.g2(), b.g1()), hs(a.g1(), b.g0())]);

    let square = hom0.linear_map(&obstruction, |f| {
        Ok(vec![
            f[1].compose(a.d2())?.sub(&b.d2().compose(&f[0])?)?,
            f[2].compose(a.d1())?.sub(&b.d1().compose(&f[1])?)?,
        ])
    })?;
    let (_, z0_incl) = kernel(&square);

    let d2 = hom2.linear_map(&hom1, |v| {
        Ok(vec![v[0].compose(a.d1())?.neg(), b.d2().compose(&v[0])?])
    })?;
    let d1_full = hom1.linear_map(&hom0, |s| {
        Ok(vec![
            s[0].compose(a.d2())?,
            b.d2().compose(&s[0])?.add(&s[1].compose(a.d1())?)?,
            b.d1().compose(&s[1])?,
        ])
    })?;
    let d1 = crate::group::factor_through(&d1_full, &z0_incl)?
        .ok_or_else(|| Error::internal("boundary of a homotopy is not a chain map"))?;
    let complex = Complex3::new(d2, d1)?;
    Ok(TruncatedHom {
        source: a.clone(),
        target: b.clone(),
        hom2,
        hom1,
        hom0,
        z0_incl,
        complex,
    })
}

impl TruncatedHom {
    pub fn encode_chain_map(&self, f: &ChainMap) -> Result<GroupElement> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::invalid("chain map has the wrong endpoints"));
        }
        let v = self.hom0.encode(&[f.f2(), f.f1(), f.f0()])?;
        let x = solve_vec(&self.z0_incl, &v).ok_or_else(|| Error::internal("chain map not found among cycles"))?;
        self.complex.g0().element(x)
    }

    pub fn decode_chain_map(&self, x: &[num_bigint::BigInt]) -> Result<ChainMap> {
        let v = self.z0_incl.apply_vec(x);
        let [f2, f1, f0]: [GroupHom; 3] = self.hom0.decode(&v)?.try_into().unwrap();
        ChainMap::new(&self.source, &self.target, f2, f1, f0)
    }

    /// Coordinates of `(s1, s0)` in `Hom^-1`.
    pub fn encode_homotopy(&self, s1: &GroupHom, s0: &GroupHom) -> Result<GroupElement> {
        self.complex.g1().element(self.hom1.encode(&[s1, s0])?)
    }

    pub fn decode_homotopy(&self, from: &ChainMap, x: &[num_bigint::BigInt]) -> Result<Homotopy> {
        let [s1, s0]: [GroupHom; 2] = self.hom1.decode(x)?.try_into().unwrap();
        let to = self.decode_chain_map(&self.complex.d1().apply_vec(x))?;
        let to = from.add(&to)?;
        Homotopy::new(from, &to, s1, s0)
    }

    /// A homotopy from `f` to `g`, if one exists.
    pub fn find_homotopy(&self, f: &ChainMap, g: &ChainMap) -> Result<Option<Homotopy>> {
        let diff = self.encode_chain_map(&g.sub(f)?)?;
        match solve_vec(self.complex.d1(), diff.coords()) {
            None => Ok(None),
            Some(x) => {
                let [s1, s0]: [GroupHom; 2] = self.hom1.decode(&x)?.try_into().unwrap();
                Ok(Some(Homotopy::new(f, g, s1, s0)?))
            }
        }
    }

    /// A second homotopy from `s` to `t`, if one exists.
    pub fn find_second_homotopy(&self, s: &Homotopy, t: &Homotopy) -> Result<Option<SecondHomotopy>> {
        let diff = self.hom1.encode(&[&s.s1().sub(t.s1())?, &s.s0().sub(t.s0())?])?;
        // d(v) = (-v ∘ λ_A, δ_B ∘ v) is exactly s - t
        match solve_vec(self.complex.d2(), &diff) {
            None => Ok(None),
            Some(x) => {
                let [v]: [GroupHom; 1] = self.hom2.decode(&x)?.try_into().unwrap();
                Ok(Some(SecondHomotopy::new(s, t, v)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FGAbelianGroup {
        FGAbelianGroup::free(1)
    }

    #[test]
    fn degree_zero_copies_of_z() {
        let a = Complex3::in_degree(z(), 0).unwrap();
        let h = hom_complex_truncated(&a, &a).unwrap();
        assert!(h.complex.g2().is_trivial());
        assert!(h.complex.g1().is_trivial());
        assert!(h.complex.g0().isomorphic(&z()));
    }

    #[test]
    fn degree_zero_into_degree_minus_one() {
        // A = Z in degree 0, B = Z in degree -1: Hom^-1 contains Hom(A^0, B^-1).
        let a = Complex3::in_degree(z(), 0).unwrap();
        let b = Complex3::in_degree(z(), -1).unwrap();
        let h = hom_complex_truncated(&a, &b).unwrap();
        assert!(h.complex.g2().is_trivial());
        assert!(h.complex.g1().isomorphic(&z()));
        assert!(h.complex.g0().is_trivial());
        // the instance with the two complexes swapped has nothing at all
        let h = hom_complex_truncated(&b, &a).unwrap();
        assert!(h.complex.g1().is_trivial() && h.complex.g0().is_trivial() && h.complex.g2().is_trivial());
    }

    #[test]
    fn zero_complexes() {
        let h = hom_complex_truncated(&Complex3::zero(), &Complex3::zero()).unwrap();
        for g in [h.complex.g2(), h.complex.g1(), h.complex.g0()] {
            assert!(g.is_trivial());
        }
    }

    #[test]
    fn homotopy_search() {
        let c = Complex3::new(
            GroupHom::zero(&FGAbelianGroup::zero(), &z()),
            GroupHom::identity(&z()),
        )
        .unwrap();
        let h = hom_complex_truncated(&c, &c).unwrap();
        let id = ChainMap::identity(&c);
        let zero = ChainMap::zero(&c, &c);
        let s = h.find_homotopy(&zero, &id).unwrap().unwrap();
        assert!(crate::complexes::verify_homotopy(&s).unwrap());
        let a = Complex3::in_degree(z(), 0).unwrap();
        let ha = hom_complex_truncated(&a, &a).unwrap();
        assert!(ha.find_homotopy(&ChainMap::identity(&a), &ChainMap::zero(&a, &a)).unwrap().is_none());
    }
}
