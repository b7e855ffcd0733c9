//! Complexes concentrated in degrees `[-2, 0]` with their 1-, 2- and
//! 3-morphisms.
//!
//! Carriers are listed from degree -2 up to degree 0. Differentials raise
//! degree: `d2 : G2 -> G1` and `d1 : G1 -> G0`.

mod cohomology;
mod homcx;
mod les;
mod pullback;
mod resolution;

pub use cohomology::{cohomology, induced_map, is_quasi_isomorphism, Cohomology};
pub use homcx::{hom_complex_truncated, HomSum, TruncatedHom};
pub use les::{ses_to_les, ExactSequenceReport, LesNode};
pub use pullback::{pullback_complexes, Pullback};
pub use resolution::{
    compose_classes, derived_hom, free_resolution, lift_map, lift_through_quasi_iso, DerivedHom, DerivedHomClass, FreeResolution,
    Lift,
};

use crate::error::{Error, Result};
use crate::group::{direct_sum_maps, factor_through, FGAbelianGroup, GroupHom};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex3 {
    g2: FGAbelianGroup,
    g1: FGAbelianGroup,
    g0: FGAbelianGroup,
    d2: GroupHom,
    d1: GroupHom,
}

/// Validates and builds a complex, rejecting `d1 ∘ d2 ≠ 0`.
pub fn make_complex3(
    g2: FGAbelianGroup,
    g1: FGAbelianGroup,
    g0: FGAbelianGroup,
    d2: GroupHom,
    d1: GroupHom,
) -> Result<Complex3> {
    if d2.source() != &g2 || d2.target() != &g1 {
        return Err(Error::invalid("d2 does not go from G2 to G1"));
    }
    if d1.source() != &g1 || d1.target() != &g0 {
        return Err(Error::invalid("d1 does not go from G1 to G0"));
    }
    if !d1.compose(&d2)?.is_zero() {
        return Err(Error::ComplexViolation("d1 ∘ d2 is not zero".into()));
    }
    Ok(Complex3 { g2, g1, g0, d2, d1 })
}

impl Complex3 {
    pub fn new(d2: GroupHom, d1: GroupHom) -> Result<Self> {
        make_complex3(
            d2.source().clone(),
            d2.target().clone(),
            d1.target().clone(),
            d2,
            d1,
        )
    }

    pub fn zero() -> Self {
        Self::concentrated(FGAbelianGroup::zero(), FGAbelianGroup::zero(), FGAbelianGroup::zero())
    }

    /// Complex with zero differentials.
    pub fn concentrated(g2: FGAbelianGroup, g1: FGAbelianGroup, g0: FGAbelianGroup) -> Self {
        let d2 = GroupHom::zero(&g2, &g1);
        let d1 = GroupHom::zero(&g1, &g0);
        Complex3 { g2, g1, g0, d2, d1 }
    }

    /// The group `g` placed in degree `deg ∈ {-2, -1, 0}`.
    pub fn in_degree(g: FGAbelianGroup, deg: i32) -> Result<Self> {
        let z = FGAbelianGroup::zero;
        match deg {
            -2 => Ok(Self::concentrated(g, z(), z())),
            -1 => Ok(Self::concentrated(z(), g, z())),
            0 => Ok(Self::concentrated(z(), z(), g)),
            _ => Err(Error::invalid(format!("degree {deg} outside [-2, 0]"))),
        }
    }

    pub fn g2(&self) -> &FGAbelianGroup {
        &self.g2
    }
    pub fn g1(&self) -> &FGAbelianGroup {
        &self.g1
    }
    pub fn g0(&self) -> &FGAbelianGroup {
        &self.g0
    }
    pub fn d2(&self) -> &GroupHom {
        &self.d2
    }
    pub fn d1(&self) -> &GroupHom {
        &self.d1
    }

    /// Carrier in degree `deg`.
    pub fn group(&self, deg: i32) -> Result<&FGAbelianGroup> {
        match deg {
            -2 => Ok(&self.g2),
            -1 => Ok(&self.g1),
            0 => Ok(&self.g0),
            _ => Err(Error::invalid(format!("degree {deg} outside [-2, 0]"))),
        }
    }

    /// The truncation `G2 -> G1` as a length-2 complex.
    pub fn truncate_top(&self) -> Complex2 {
        Complex2 {
            g1: self.g2.clone(),
            g0: self.g1.clone(),
            d: self.d2.clone(),
        }
    }

    pub fn direct_sum(&self, other: &Complex3) -> Complex3 {
        let blk = |f: &GroupHom, g: &GroupHom, s: &FGAbelianGroup, t: &FGAbelianGroup| {
            GroupHom::new(
                s.clone(),
                t.clone(),
                crate::matrix::IntegerMatrix::block_diag(&[f.matrix(), g.matrix()]),
            )
            .expect("block sum of well-defined maps")
        };
        let g2 = FGAbelianGroup::direct_sum(&[self.g2.clone(), other.g2.clone()]);
        let g1 = FGAbelianGroup::direct_sum(&[self.g1.clone(), other.g1.clone()]);
        let g0 = FGAbelianGroup::direct_sum(&[self.g0.clone(), other.g0.clone()]);
        let d2 = blk(&self.d2, &other.d2, &g2, &g1);
        let d1 = blk(&self.d1, &other.d1, &g1, &g0);
        Complex3 { g2, g1, g0, d2, d1 }
    }

    /// Inclusions and projections of `self ⊕ other`.
    pub fn direct_sum_maps(&self, other: &Complex3) -> Result<(Complex3, [ChainMap; 2], [ChainMap; 2])> {
        let sum = self.direct_sum(other);
        let (_, i2, p2) = direct_sum_maps(&[self.g2.clone(), other.g2.clone()]);
        let (_, i1, p1) = direct_sum_maps(&[self.g1.clone(), other.g1.clone()]);
        let (_, i0, p0) = direct_sum_maps(&[self.g0.clone(), other.g0.clone()]);
        let parts = [self, other];
        let mut incl = Vec::new();
        let mut proj = Vec::new();
        for k in 0..2 {
            incl.push(ChainMap::new(parts[k], &sum, i2[k].clone(), i1[k].clone(), i0[k].clone())?);
            proj.push(ChainMap::new(&sum, parts[k], p2[k].clone(), p1[k].clone(), p0[k].clone())?);
        }
        let [a, b]: [ChainMap; 2] = incl.try_into().unwrap();
        let [c, d]: [ChainMap; 2] = proj.try_into().unwrap();
        Ok((sum, [a, b], [c, d]))
    }
}

/// A length-2 complex `G1 -> G0`, carriers in degrees -1 and 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex2 {
    g1: FGAbelianGroup,
    g0: FGAbelianGroup,
    d: GroupHom,
}

impl Complex2 {
    pub fn new(d: GroupHom) -> Self {
        Complex2 {
            g1: d.source().clone(),
            g0: d.target().clone(),
            d,
        }
    }
    pub fn g1(&self) -> &FGAbelianGroup {
        &self.g1
    }
    pub fn g0(&self) -> &FGAbelianGroup {
        &self.g0
    }
    pub fn d(&self) -> &GroupHom {
        &self.d
    }

    /// Placed in degrees -1, 0 of a length-3 complex.
    pub fn as_complex3(&self) -> Complex3 {
        let z = FGAbelianGroup::zero();
        Complex3 {
            d2: GroupHom::zero(&z, &self.g1),
            g2: z,
            g1: self.g1.clone(),
            g0: self.g0.clone(),
            d1: self.d.clone(),
        }
    }
}

/// A strict morphism of length-2 complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap2 {
    source: Complex2,
    target: Complex2,
    f1: GroupHom,
    f0: GroupHom,
}

impl ChainMap2 {
    pub fn new(source: &Complex2, target: &Complex2, f1: GroupHom, f0: GroupHom) -> Result<Self> {
        if f1.source() != source.g1() || f1.target() != target.g1() {
            return Err(Error::invalid("f1 has the wrong endpoints"));
        }
        if f0.source() != source.g0() || f0.target() != target.g0() {
            return Err(Error::invalid("f0 has the wrong endpoints"));
        }
        if !f0.compose(source.d())?.same_map(&target.d().compose(&f1)?)? {
            return Err(Error::DiagramViolation("f0 ∘ d_A ≠ d_B ∘ f1".into()));
        }
        Ok(ChainMap2 {
            source: source.clone(),
            target: target.clone(),
            f1,
            f0,
        })
    }

    pub fn identity(a: &Complex2) -> Self {
        ChainMap2 {
            source: a.clone(),
            target: a.clone(),
            f1: GroupHom::identity(a.g1()),
            f0: GroupHom::identity(a.g0()),
        }
    }

    pub fn source(&self) -> &Complex2 {
        &self.source
    }
    pub fn target(&self) -> &Complex2 {
        &self.target
    }
    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }
    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap2) -> Result<ChainMap2> {
        if f.target != self.source {
            return Err(Error::invalid("chain maps are not composable"));
        }
        ChainMap2::new(&f.source, &self.target, self.f1.compose(&f.f1)?, self.f0.compose(&f.f0)?)
    }

    pub fn as_chain_map3(&self) -> Result<ChainMap> {
        let a = self.source.as_complex3();
        let b = self.target.as_complex3();
        let f2 = GroupHom::zero(a.g2(), b.g2());
        ChainMap::new(&a, &b, f2, self.f1.clone(), self.f0.clone())
    }
}

/// A strict morphism of length-3 complexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex3,
    target: Complex3,
    f2: GroupHom,
    f1: GroupHom,
    f0: GroupHom,
}

impl ChainMap {
    /// Builds a chain map, checking endpoints and both commuting squares.
    pub fn new(source: &Complex3, target: &Complex3, f2: GroupHom, f1: GroupHom, f0: GroupHom) -> Result<Self> {
        let m = Self::candidate(source, target, f2, f1, f0)?;
        m.check_squares()?;
        Ok(m)
    }

    fn candidate(source: &Complex3, target: &Complex3, f2: GroupHom, f1: GroupHom, f0: GroupHom) -> Result<Self> {
        for (name, f, s, t) in [
            ("f2", &f2, source.g2(), target.g2()),
            ("f1", &f1, source.g1(), target.g1()),
            ("f0", &f0, source.g0(), target.g0()),
        ] {
            if f.source() != s || f.target() != t {
                return Err(Error::invalid(format!("{name} has the wrong endpoints")));
            }
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            f2,
            f1,
            f0,
        })
    }

    fn check_squares(&self) -> Result<()> {
        if !self.f1.compose(self.source.d2())?.same_map(&self.target.d2().compose(&self.f2)?)? {
            return Err(Error::DiagramViolation("f1 ∘ δ_A ≠ δ_B ∘ f2".into()));
        }
        if !self.f0.compose(self.source.d1())?.same_map(&self.target.d1().compose(&self.f1)?)? {
            return Err(Error::DiagramViolation("f0 ∘ λ_A ≠ λ_B ∘ f1".into()));
        }
        Ok(())
    }

    pub fn identity(a: &Complex3) -> Self {
        ChainMap {
            source: a.clone(),
            target: a.clone(),
            f2: GroupHom::identity(a.g2()),
            f1: GroupHom::identity(a.g1()),
            f0: GroupHom::identity(a.g0()),
        }
    }

    pub fn zero(a: &Complex3, b: &Complex3) -> Self {
        ChainMap {
            source: a.clone(),
            target: b.clone(),
            f2: GroupHom::zero(a.g2(), b.g2()),
            f1: GroupHom::zero(a.g1(), b.g1()),
            f0: GroupHom::zero(a.g0(), b.g0()),
        }
    }

    pub fn source(&self) -> &Complex3 {
        &self.source
    }
    pub fn target(&self) -> &Complex3 {
        &self.target
    }
    pub fn f2(&self) -> &GroupHom {
        &self.f2
    }
    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }
    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    /// Component in degree `deg`.
    pub fn component(&self, deg: i32) -> Result<&GroupHom> {
        match deg {
            -2 => Ok(&self.f2),
            -1 => Ok(&self.f1),
            0 => Ok(&self.f0),
            _ => Err(Error::invalid(format!("degree {deg} outside [-2, 0]"))),
        }
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &ChainMap) -> Result<ChainMap> {
        if f.target != self.source {
            return Err(Error::invalid("chain maps are not composable"));
        }
        Ok(ChainMap {
            source: f.source.clone(),
            target: self.target.clone(),
            f2: self.f2.compose(&f.f2)?,
            f1: self.f1.compose(&f.f1)?,
            f0: self.f0.compose(&f.f0)?,
        })
    }

    fn check_parallel(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::invalid("chain maps do not share endpoints"));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.check_parallel(other)?;
        Ok(ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            f2: self.f2.add(&other.f2)?,
            f1: self.f1.add(&other.f1)?,
            f0: self.f0.add(&other.f0)?,
        })
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            f2: self.f2.neg(),
            f1: self.f1.neg(),
            f0: self.f0.neg(),
        }
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.add(&other.neg())
    }

    /// Degreewise equality as maps.
    pub fn same_map(&self, other: &ChainMap) -> Result<bool> {
        self.check_parallel(other)?;
        Ok(self.f2.same_map(&other.f2)? && self.f1.same_map(&other.f1)? && self.f0.same_map(&other.f0)?)
    }

    pub fn is_degreewise_isomorphism(&self) -> bool {
        self.f2.is_isomorphism() && self.f1.is_isomorphism() && self.f0.is_isomorphism()
    }

    /// Degreewise inverse of an isomorphism of complexes.
    pub fn inverse(&self) -> Result<ChainMap> {
        if !self.is_degreewise_isomorphism() {
            return Err(Error::Precondition("chain map is not an isomorphism of complexes".into()));
        }
        let inv = |f: &GroupHom| -> Result<GroupHom> {
            factor_through(&GroupHom::identity(f.target()), f)?
                .ok_or_else(|| Error::internal("isomorphism has no inverse"))
        };
        ChainMap::new(&self.target, &self.source, inv(&self.f2)?, inv(&self.f1)?, inv(&self.f0)?)
    }

    /// Same components between other presentations of the endpoints.
    pub fn retarget(&self, source: &Complex3, target: &Complex3) -> Result<ChainMap> {
        ChainMap::new(
            source,
            target,
            self.f2.retarget(source.g2(), target.g2())?,
            self.f1.retarget(source.g1(), target.g1())?,
            self.f0.retarget(source.g0(), target.g0())?,
        )
    }
}

/// A homotopy `s = (s1, s0)` from `from` to `to`:
/// `to - from = (s1 ∘ δ_A, δ_B ∘ s1 + s0 ∘ λ_A, λ_B ∘ s0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homotopy {
    from: ChainMap,
    to: ChainMap,
    s1: GroupHom,
    s0: GroupHom,
}

impl Homotopy {
    /// Checks endpoints and map shapes only; see [`verify_homotopy`].
    pub fn candidate(from: &ChainMap, to: &ChainMap, s1: GroupHom, s0: GroupHom) -> Result<Self> {
        from.check_parallel(to)?;
        let (a, b) = (from.source(), from.target());
        if s1.source() != a.g1() || s1.target() != b.g2() {
            return Err(Error::invalid("s1 must go from A^-1 to B^-2"));
        }
        if s0.source() != a.g0() || s0.target() != b.g1() {
            return Err(Error::invalid("s0 must go from A^0 to B^-1"));
        }
        Ok(Homotopy {
            from: from.clone(),
            to: to.clone(),
            s1,
            s0,
        })
    }

    pub fn new(from: &ChainMap, to: &ChainMap, s1: GroupHom, s0: GroupHom) -> Result<Self> {
        let h = Self::candidate(from, to, s1, s0)?;
        if !h.holds()? {
            return Err(Error::DiagramViolation("homotopy relations do not hold".into()));
        }
        Ok(h)
    }

    /// The zero homotopy from `f` to itself.
    pub fn zero(f: &ChainMap) -> Self {
        let (a, b) = (f.source(), f.target());
        Homotopy {
            from: f.clone(),
            to: f.clone(),
            s1: GroupHom::zero(a.g1(), b.g2()),
            s0: GroupHom::zero(a.g0(), b.g1()),
        }
    }

    fn holds(&self) -> Result<bool> {
        let (a, b) = (self.from.source(), self.from.target());
        let diff = self.to.sub(&self.from)?;
        let h2 = self.s1.compose(a.d2())?;
        let h1 = b.d2().compose(&self.s1)?.add(&self.s0.compose(a.d1())?)?;
        let h0 = b.d1().compose(&self.s0)?;
        Ok(diff.f2.same_map(&h2)? && diff.f1.same_map(&h1)? && diff.f0.same_map(&h0)?)
    }

    pub fn from_map(&self) -> &ChainMap {
        &self.from
    }
    pub fn to_map(&self) -> &ChainMap {
        &self.to
    }
    pub fn s1(&self) -> &GroupHom {
        &self.s1
    }
    pub fn s0(&self) -> &GroupHom {
        &self.s0
    }

    /// Concatenation: `self` from f to g, `next` from g to h.
    pub fn then(&self, next: &Homotopy) -> Result<Homotopy> {
        if !self.to.same_map(&next.from)? {
            return Err(Error::invalid("homotopies are not composable"));
        }
        Homotopy::new(&self.from, &next.to, self.s1.add(&next.s1)?, self.s0.add(&next.s0)?)
    }

    pub fn reverse(&self) -> Homotopy {
        Homotopy {
            from: self.to.clone(),
            to: self.from.clone(),
            s1: self.s1.neg(),
            s0: self.s0.neg(),
        }
    }
}

/// Checks the three homotopy relations.
pub fn verify_homotopy(h: &Homotopy) -> Result<bool> {
    h.holds()
}

/// A homotopy between homotopies: `s0 - t0 = δ_B ∘ v` and `s1 - t1 = -v ∘ λ_A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondHomotopy {
    from: Homotopy,
    to: Homotopy,
    v: GroupHom,
}

impl SecondHomotopy {
    pub fn candidate(from: &Homotopy, to: &Homotopy, v: GroupHom) -> Result<Self> {
        if !from.from.same_map(&to.from)? || !from.to.same_map(&to.to)? {
            return Err(Error::invalid("homotopies do not share endpoints"));
        }
        let (a, b) = (from.from.source(), from.from.target());
        if v.source() != a.g0() || v.target() != b.g2() {
            return Err(Error::invalid("v must go from A^0 to B^-2"));
        }
        Ok(SecondHomotopy {
            from: from.clone(),
            to: to.clone(),
            v,
        })
    }

    pub fn new(from: &Homotopy, to: &Homotopy, v: GroupHom) -> Result<Self> {
        let w = Self::candidate(from, to, v)?;
        if !w.holds()? {
            return Err(Error::DiagramViolation("second homotopy relations do not hold".into()));
        }
        Ok(w)
    }

    fn holds(&self) -> Result<bool> {
        let (a, b) = (self.from.from.source(), self.from.from.target());
        let r0 = self.from.s0.sub(&self.to.s0)?.same_map(&b.d2().compose(&self.v)?)?;
        let r1 = self.from.s1.sub(&self.to.s1)?.same_map(&self.v.compose(a.d1())?.neg())?;
        Ok(r0 && r1)
    }

    pub fn from_homotopy(&self) -> &Homotopy {
        &self.from
    }
    pub fn to_homotopy(&self) -> &Homotopy {
        &self.to
    }
    pub fn v(&self) -> &GroupHom {
        &self.v
    }
}

pub fn verify_second_homotopy(w: &SecondHomotopy) -> Result<bool> {
    w.holds()
}
