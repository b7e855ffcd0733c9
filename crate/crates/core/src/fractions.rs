//! The bigroupoid of fractions between two complexes: fractions
//! `A <-q- M -p-> B` with `q` a quasi-isomorphism, roofs between them,
//! and diamonds between roofs.

use crate::complexes::{
    derived_hom, is_quasi_isomorphism, lift_through_quasi_iso, pullback_complexes, ChainMap, Complex3, DerivedHom,
    DerivedHomClass, Pullback,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    q: ChainMap,
    p: ChainMap,
}

impl Fraction {
    pub fn new(q: ChainMap, p: ChainMap) -> Result<Self> {
        if q.source() != p.source() {
            return Err(Error::invalid("legs of a fraction must share their apex"));
        }
        if !is_quasi_isomorphism(&q)? {
            return Err(Error::Precondition("left leg q is not a quasi-isomorphism".into()));
        }
        Ok(Fraction { q, p })
    }

    pub fn source(&self) -> &Complex3 {
        self.q.target()
    }
    pub fn target(&self) -> &Complex3 {
        self.p.target()
    }
    pub fn apex(&self) -> &Complex3 {
        self.q.source()
    }
    pub fn q(&self) -> &ChainMap {
        &self.q
    }
    pub fn p(&self) -> &ChainMap {
        &self.p
    }

    fn same_endpoints(&self, other: &Fraction) -> bool {
        self.source() == other.source() && self.target() == other.target()
    }
}

pub fn identity_fraction(a: &Complex3) -> Fraction {
    Fraction {
        q: ChainMap::identity(a),
        p: ChainMap::identity(a),
    }
}

pub fn fraction_from_chain_map(f: &ChainMap) -> Fraction {
    Fraction {
        q: ChainMap::identity(f.source()),
        p: f.clone(),
    }
}

/// `g ∘ f` with apex `M_f ×_B M_g`.
pub fn compose_fractions(g: &Fraction, f: &Fraction) -> Result<Fraction> {
    if f.target() != g.source() {
        return Err(Error::invalid("fractions are not composable"));
    }
    let pb = pullback_complexes(&f.p, &g.q)?;
    let q = f.q.compose(&pb.pr1)?;
    let p = g.p.compose(&pb.pr2)?;
    if !is_quasi_isomorphism(&q)? {
        return Err(Error::internal("left leg of the composite fraction is not a quasi-isomorphism"));
    }
    Ok(Fraction { q, p })
}

/// Derived hom group of the endpoints of `f`, for repeated class queries.
pub fn fraction_hom(f: &Fraction) -> Result<DerivedHom> {
    derived_hom(f.source(), f.target())
}

/// Class of `p ∘ l` where `l` lifts the resolution of the source through `q`.
pub fn fraction_class_in(dh: &DerivedHom, f: &Fraction) -> Result<DerivedHomClass> {
    if dh.source() != f.source() || dh.target() != f.target() {
        return Err(Error::invalid("derived hom group does not match the fraction"));
    }
    let lift = lift_through_quasi_iso(&dh.resolution, &f.q)?;
    dh.class_of_map(&f.p.compose(&lift.map)?)
}

pub fn fraction_class(f: &Fraction) -> Result<DerivedHomClass> {
    fraction_class_in(&fraction_hom(f)?, f)
}

pub fn fractions_equivalent(f1: &Fraction, f2: &Fraction) -> Result<bool> {
    if !f1.same_endpoints(f2) {
        return Err(Error::invalid("fractions do not share endpoints"));
    }
    let dh = fraction_hom(f1)?;
    Ok(fraction_class_in(&dh, f1)? == fraction_class_in(&dh, f2)?)
}

/// A roof `M1 <-s- K -r-> M2` between two fractions with the same
/// endpoints, all four triangles commuting on the nose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Roof {
    from: Fraction,
    to: Fraction,
    s: ChainMap,
    r: ChainMap,
}

impl Roof {
    pub fn new(from: &Fraction, to: &Fraction, s: ChainMap, r: ChainMap) -> Result<Self> {
        if !from.same_endpoints(to) {
            return Err(Error::invalid("roof fractions do not share endpoints"));
        }
        if s.source() != r.source() || s.target() != from.apex() || r.target() != to.apex() {
            return Err(Error::invalid("roof legs do not connect the apexes"));
        }
        for (name, m) in [("s", &s), ("r", &r)] {
            if !is_quasi_isomorphism(m)? {
                return Err(Error::Precondition(format!("roof leg {name} is not a quasi-isomorphism")));
            }
        }
        if !from.q.compose(&s)?.same_map(&to.q.compose(&r)?)? {
            return Err(Error::DiagramViolation("q1 ∘ s ≠ q2 ∘ r".into()));
        }
        if !from.p.compose(&s)?.same_map(&to.p.compose(&r)?)? {
            return Err(Error::DiagramViolation("p1 ∘ s ≠ p2 ∘ r".into()));
        }
        Ok(Roof {
            from: from.clone(),
            to: to.clone(),
            s,
            r,
        })
    }

    pub fn identity(f: &Fraction) -> Self {
        let id = ChainMap::identity(f.apex());
        Roof {
            from: f.clone(),
            to: f.clone(),
            s: id.clone(),
            r: id,
        }
    }

    pub fn from_fraction(&self) -> &Fraction {
        &self.from
    }
    pub fn to_fraction(&self) -> &Fraction {
        &self.to
    }
    pub fn apex(&self) -> &Complex3 {
        self.s.source()
    }
    pub fn s(&self) -> &ChainMap {
        &self.s
    }
    pub fn r(&self) -> &ChainMap {
        &self.r
    }

    /// The common leg `K -> A`.
    pub fn q_k(&self) -> Result<ChainMap> {
        self.from.q.compose(&self.s)
    }

    /// The common leg `K -> B`.
    pub fn p_k(&self) -> Result<ChainMap> {
        self.from.p.compose(&self.s)
    }

    /// The fraction `(q_K, K, p_K)` carried by the roof apex.
    pub fn apex_fraction(&self) -> Result<Fraction> {
        Fraction::new(self.q_k()?, self.p_k()?)
    }
}

fn compose_roofs_pb(h2: &Roof, h1: &Roof) -> Result<(Roof, Pullback)> {
    if h1.to != h2.from {
        return Err(Error::invalid("roofs are not composable"));
    }
    let pb = pullback_complexes(&h1.r, &h2.s)?;
    let s = h1.s.compose(&pb.pr1)?;
    let r = h2.r.compose(&pb.pr2)?;
    let roof = Roof::new(&h1.from, &h2.to, s, r).map_err(|e| match e {
        Error::Precondition(m) => Error::internal(format!("composite roof: {m}")),
        other => other,
    })?;
    Ok((roof, pb))
}

/// `h2 ∘ h1` with apex `K1 ×_{M2} K2`.
pub fn compose_roofs(h2: &Roof, h1: &Roof) -> Result<Roof> {
    Ok(compose_roofs_pb(h2, h1)?.0)
}

/// An isomorphism of roof apexes `t : K1 -> K2` with `s2 ∘ t = s1` and
/// `r2 ∘ t = r1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diamond {
    from: Roof,
    to: Roof,
    t: ChainMap,
}

impl Diamond {
    pub fn new(from: &Roof, to: &Roof, t: ChainMap) -> Result<Self> {
        if from.from != to.from || from.to != to.to {
            return Err(Error::invalid("diamond roofs do not share their fractions"));
        }
        if t.source() != from.apex() || t.target() != to.apex() {
            return Err(Error::invalid("diamond map does not connect the roof apexes"));
        }
        if !t.is_degreewise_isomorphism() {
            return Err(Error::DiagramViolation("diamond map is not an isomorphism of complexes".into()));
        }
        if !to.s.compose(&t)?.same_map(&from.s)? {
            return Err(Error::DiagramViolation("s2 ∘ t ≠ s1".into()));
        }
        if !to.r.compose(&t)?.same_map(&from.r)? {
            return Err(Error::DiagramViolation("r2 ∘ t ≠ r1".into()));
        }
        Ok(Diamond {
            from: from.clone(),
            to: to.clone(),
            t,
        })
    }

    pub fn identity(h: &Roof) -> Self {
        Diamond {
            from: h.clone(),
            to: h.clone(),
            t: ChainMap::identity(h.apex()),
        }
    }

    pub fn from_roof(&self) -> &Roof {
        &self.from
    }
    pub fn to_roof(&self) -> &Roof {
        &self.to
    }
    pub fn t(&self) -> &ChainMap {
        &self.t
    }

    pub fn inverse(&self) -> Result<Diamond> {
        Diamond::new(&self.to, &self.from, self.t.inverse()?)
    }
}

/// `d2 ∘ d1`.
pub fn vertical_compose(d2: &Diamond, d1: &Diamond) -> Result<Diamond> {
    if d1.to != d2.from {
        return Err(Error::invalid("diamonds are not vertically composable"));
    }
    Diamond::new(&d1.from, &d2.to, d2.t.compose(&d1.t)?)
}

/// The induced diamond between `compose_roofs(d2.from, d1.from)` and
/// `compose_roofs(d2.to, d1.to)`.
pub fn horizontal_compose(d2: &Diamond, d1: &Diamond) -> Result<Diamond> {
    let (src, pb_src) = compose_roofs_pb(&d2.from, &d1.from)?;
    let (tgt, pb_tgt) = compose_roofs_pb(&d2.to, &d1.to)?;
    let u = d1.t.compose(&pb_src.pr1)?;
    let v = d2.t.compose(&pb_src.pr2)?;
    let t = pb_tgt.factor(&u, &v)?;
    Diamond::new(&src, &tgt, t)
}

/// Diagrammatic-order composite: first `h1`, then `h2`.
fn then(h1: &Roof, h2: &Roof) -> Result<Roof> {
    compose_roofs(h2, h1)
}

/// The rebracketing diamond from `(h1 h2) h3` to `h1 (h2 h3)`, roofs
/// composed in diagrammatic order.
pub fn associator(h1: &Roof, h2: &Roof, h3: &Roof) -> Result<Diamond> {
    let (h12, pb12) = compose_roofs_pb(h2, h1)?;
    let (left, pb_left) = compose_roofs_pb(h3, &h12)?;
    let (h23, pb23) = compose_roofs_pb(h3, h2)?;
    let (right, pb_right) = compose_roofs_pb(&h23, h1)?;
    let to_k1 = pb12.pr1.compose(&pb_left.pr1)?;
    let to_k2 = pb12.pr2.compose(&pb_left.pr1)?;
    let to_k3 = pb_left.pr2.clone();
    let inner = pb23.factor(&to_k2, &to_k3)?;
    let t = pb_right.factor(&to_k1, &inner)?;
    Diamond::new(&left, &right, t)
}

/// Checks the pentagon for four composable roofs: both rebracketings of
/// `((h1 h2) h3) h4` into `h1 (h2 (h3 h4))` give the same isomorphism.
pub fn pentagon_holds(h1: &Roof, h2: &Roof, h3: &Roof, h4: &Roof) -> Result<bool> {
    let h12 = then(h1, h2)?;
    let h34 = then(h3, h4)?;
    let h23 = then(h2, h3)?;
    let top = vertical_compose(&associator(h1, h2, &h34)?, &associator(&h12, h3, h4)?)?;
    let whisker_right = horizontal_compose(&Diamond::identity(h4), &associator(h1, h2, h3)?)?;
    let middle = associator(h1, &h23, h4)?;
    let whisker_left = horizontal_compose(&associator(h2, h3, h4)?, &Diamond::identity(h1))?;
    let bottom = vertical_compose(&whisker_left, &vertical_compose(&middle, &whisker_right)?)?;
    if top.from != bottom.from || top.to != bottom.to {
        return Err(Error::internal("pentagon paths do not share endpoints"));
    }
    top.t.same_map(&bottom.t)
}

/// Evidence that a flipped roof is a weak inverse.
#[derive(Debug, Clone)]
pub struct WeakInverseCertificate {
    /// `h^-1 ∘ h`, a roof from `h.from` to itself.
    pub forward: Roof,
    /// `h ∘ h^-1`, a roof from `h.to` to itself.
    pub backward: Roof,
    /// Both composites carry the same class as the identity roofs.
    pub classes_equal: bool,
}

/// Flips `(s, K, r)` to `(r, K, s)`.
///
/// Both composites have equal legs to the two endpoints on the nose. Their
/// apexes are generally not isomorphic to the identity roof's apex, so
/// equivalence with the identity is certified by derived-hom classes.
pub fn weak_inverse(h: &Roof) -> Result<(Roof, WeakInverseCertificate)> {
    let inv = Roof {
        from: h.to.clone(),
        to: h.from.clone(),
        s: h.r.clone(),
        r: h.s.clone(),
    };
    let forward = compose_roofs(&inv, h)?;
    let backward = compose_roofs(h, &inv)?;
    let dh = fraction_hom(&h.from)?;
    let class_from = fraction_class_in(&dh, &h.from)?;
    let class_to = fraction_class_in(&dh, &h.to)?;
    let classes_equal = fraction_class_in(&dh, &forward.apex_fraction()?)? == class_from
        && fraction_class_in(&dh, &backward.apex_fraction()?)? == class_to;
    Ok((
        inv,
        WeakInverseCertificate {
            forward,
            backward,
            classes_equal,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FGAbelianGroup, GroupHom};
    use crate::matrix::IntegerMatrix;

    fn sample() -> Complex3 {
        let z = FGAbelianGroup::free(1);
        let two = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_i64(1, &[&[2]])).unwrap();
        Complex3::new(two, GroupHom::zero(&z, &FGAbelianGroup::zero())).unwrap()
    }

    #[test]
    fn identity_fraction_class() {
        let a = Complex3::in_degree(FGAbelianGroup::free(1), 0).unwrap();
        let id = identity_fraction(&a);
        let dh = fraction_hom(&id).unwrap();
        let c = fraction_class_in(&dh, &id).unwrap();
        assert_eq!(c, dh.class_of_chain_map(&ChainMap::identity(&a)).unwrap());
        let zero = fraction_from_chain_map(&ChainMap::zero(&a, &a));
        assert!(!fractions_equivalent(&id, &zero).unwrap());
        assert!(fractions_equivalent(&id, &id).unwrap());
    }

    #[test]
    fn composing_identities() {
        let a = sample();
        let id = identity_fraction(&a);
        let c = compose_fractions(&id, &id).unwrap();
        assert!(fractions_equivalent(&c, &id).unwrap());
        let roof = Roof::identity(&id);
        let rr = compose_roofs(&roof, &roof).unwrap();
        assert!(rr.s().is_degreewise_isomorphism());
        let d = Diamond::identity(&roof);
        let h = horizontal_compose(&d, &d).unwrap();
        assert!(h.t().same_map(&ChainMap::identity(h.from_roof().apex())).unwrap());
        assert_eq!(vertical_compose(&d, &d).unwrap(), d);
    }

    #[test]
    fn associator_and_pentagon_on_identities() {
        let a = sample();
        let roof = Roof::identity(&identity_fraction(&a));
        let alpha = associator(&roof, &roof, &roof).unwrap();
        assert!(alpha.t().is_degreewise_isomorphism());
        assert!(pentagon_holds(&roof, &roof, &roof, &roof).unwrap());
    }

    #[test]
    fn weak_inverse_of_identity() {
        let a = sample();
        let roof = Roof::identity(&identity_fraction(&a));
        let (inv, cert) = weak_inverse(&roof).unwrap();
        assert_eq!(inv, roof);
        assert!(cert.classes_equal);
        let (back, _) = weak_inverse(&inv).unwrap();
        assert_eq!(back, roof);
    }
}
