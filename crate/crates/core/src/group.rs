//! Finitely generated abelian groups as presentations `Z^n / rowspan(R)`,
//! their homomorphisms and elements.
//!
//! A homomorphism matrix has one column per source generator, so it acts
//! on column vectors of ambient coordinates and `g ∘ f` is the product
//! `G · F`. Relations, on the other hand, are stored as rows.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{left_kernel, row_basis, smith_normal_form, solve_left, solve_left_with, IntegerMatrix, Smith};

struct GroupInner {
    ambient_rank: usize,
    relations: IntegerMatrix,
    smith: OnceLock<Smith>,
}

/// `Z^n` modulo the row span of an integer relations matrix.
///
/// Cloning is cheap: the presentation is shared and its Smith form is
/// computed at most once. Equality compares presentations, not isomorphism
/// classes; use [`FGAbelianGroup::isomorphic`] for the latter.
#[derive(Clone)]
pub struct FGAbelianGroup(Arc<GroupInner>);

impl PartialEq for FGAbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ambient_rank == other.0.ambient_rank && self.0.relations == other.0.relations)
    }
}

impl Eq for FGAbelianGroup {}

impl fmt::Debug for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FGAbelianGroup")
            .field("ambient_rank", &self.0.ambient_rank)
            .field("relations", &self.0.relations)
            .finish()
    }
}

/// Nonunit invariant factors together with the free rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                "Z".to_string()
            } else {
                format!("Z^{}", self.free_rank)
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FGAbelianGroup {
    pub fn new(ambient_rank: usize, relations: IntegerMatrix) -> Result<Self> {
        if relations.cols() != ambient_rank {
            return Err(Error::invalid(format!(
                "relations have {} columns but the ambient rank is {}",
                relations.cols(),
                ambient_rank
            )));
        }
        Ok(Self::from_parts(ambient_rank, relations))
    }

    fn from_parts(ambient_rank: usize, relations: IntegerMatrix) -> Self {
        FGAbelianGroup(Arc::new(GroupInner {
            ambient_rank,
            relations,
            smith: OnceLock::new(),
        }))
    }

    pub fn free(n: usize) -> Self {
        Self::from_parts(n, IntegerMatrix::zeros(0, n))
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// `Z/m`; `m = 0` gives `Z`.
    pub fn cyclic(m: i64) -> Self {
        if m == 0 {
            return Self::free(1);
        }
        Self::from_parts(1, IntegerMatrix::from_i64(1, &[&[m]]))
    }

    /// Direct sum of cyclic groups `Z/m_1 + ... `, with 0 meaning `Z`.
    pub fn from_orders(orders: &[i64]) -> Self {
        let parts: Vec<_> = orders.iter().map(|&m| Self::cyclic(m)).collect();
        Self::direct_sum(&parts)
    }

    pub fn direct_sum(parts: &[FGAbelianGroup]) -> Self {
        let n = parts.iter().map(|g| g.ambient_rank()).sum();
        let blocks: Vec<&IntegerMatrix> = parts.iter().map(|g| g.relations()).collect();
        Self::from_parts(n, IntegerMatrix::block_diag(&blocks))
    }

    pub fn ambient_rank(&self) -> usize {
        self.0.ambient_rank
    }

    pub fn relations(&self) -> &IntegerMatrix {
        &self.0.relations
    }

    pub fn smith(&self) -> &Smith {
        self.0.smith.get_or_init(|| smith_normal_form(&self.0.relations))
    }

    /// Diagonal entry `i` of the Smith form; zero past the rank.
    fn smith_diag(&self, i: usize) -> BigInt {
        let s = self.smith();
        if i < s.rank {
            s.d.get(i, i).clone()
        } else {
            BigInt::zero()
        }
    }

    /// Ambient indices that survive canonicalization (diagonal entry not 1).
    fn canonical_indices(&self) -> Vec<usize> {
        (0..self.ambient_rank()).filter(|&i| !self.smith_diag(i).is_one()).collect()
    }

    pub fn invariants(&self) -> Invariants {
        let mut torsion = Vec::new();
        let mut free_rank = 0;
        for i in self.canonical_indices() {
            let d = self.smith_diag(i);
            if d.is_zero() {
                free_rank += 1;
            } else {
                torsion.push(d);
            }
        }
        Invariants { torsion, free_rank }
    }

    pub fn isomorphic(&self, other: &Self) -> bool {
        self.invariants() == other.invariants()
    }

    pub fn is_trivial(&self) -> bool {
        self.canonical_indices().is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariants().torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.invariants().free_rank == 0
    }

    /// Order of a finite group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        let inv = self.invariants();
        (inv.free_rank == 0).then(|| inv.torsion.iter().product())
    }

    /// True when the ambient vector lies in the relation span.
    pub fn is_relation(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank(), "vector length mismatch");
        solve_left_with(self.smith(), v).is_some()
    }

    /// Coordinates on the canonical cyclic decomposition, torsion parts
    /// reduced into `[0, d)`. Two vectors are congruent iff these agree.
    pub fn canonical_coords(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient_rank(), "vector length mismatch");
        let y = self.smith().v.left_apply(v);
        self.canonical_indices()
            .into_iter()
            .map(|i| {
                let d = self.smith_diag(i);
                if d.is_zero() {
                    y[i].clone()
                } else {
                    y[i].mod_floor(&d)
                }
            })
            .collect()
    }

    /// The canonical presentation `Z/d_1 + ... + Z^r` with mutually inverse
    /// isomorphisms to and from `self`.
    pub fn canonical(&self) -> Canonical {
        let idx = self.canonical_indices();
        let t = idx.len();
        let n = self.ambient_rank();
        let mut rels = Vec::new();
        for (k, &i) in idx.iter().enumerate() {
            let d = self.smith_diag(i);
            if !d.is_zero() {
                let mut row = vec![BigInt::zero(); t];
                row[k] = d;
                rels.push(row);
            }
        }
        let group = Self::from_parts(t, IntegerMatrix::from_rows(t, rels).unwrap());
        let s = self.smith();
        let mut to = IntegerMatrix::zeros(t, n);
        let mut from = IntegerMatrix::zeros(n, t);
        for (k, &i) in idx.iter().enumerate() {
            for j in 0..n {
                to.set(k, j, s.v.get(j, i).clone());
                from.set(j, k, s.v_inv.get(i, j).clone());
            }
        }
        Canonical {
            to_canonical: GroupHom::unchecked(self.clone(), group.clone(), to),
            from_canonical: GroupHom::unchecked(group.clone(), self.clone(), from),
            group,
        }
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        GroupElement::new(self.clone(), coords)
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ambient_rank()],
        }
    }

    /// The `i`-th ambient generator.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ambient_rank()];
        coords[i] = BigInt::one();
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    /// Every element of a finite group, one representative per class, in
    /// canonical-coordinate order. `None` if infinite or larger than `limit`.
    pub fn enumerate(&self, limit: usize) -> Option<Vec<GroupElement>> {
        let inv = self.invariants();
        if inv.free_rank > 0 {
            return None;
        }
        let order: BigInt = inv.torsion.iter().product();
        if order > BigInt::from(limit) {
            return None;
        }
        let c = self.canonical();
        let mut out = Vec::new();
        let mut digits = vec![BigInt::zero(); inv.torsion.len()];
        loop {
            out.push(c.from_canonical.apply_vec(&digits));
            let mut k = 0;
            loop {
                if k == digits.len() {
                    return Some(
                        out.into_iter()
                            .map(|coords| GroupElement {
                                group: self.clone(),
                                coords,
                            })
                            .collect(),
                    );
                }
                digits[k] += 1;
                if digits[k] == inv.torsion[k] {
                    digits[k] = BigInt::zero();
                    k += 1;
                } else {
                    break;
                }
            }
        }
    }
}

/// Canonical cyclic decomposition of a group with the comparison maps.
#[derive(Debug, Clone)]
pub struct Canonical {
    pub group: FGAbelianGroup,
    pub to_canonical: GroupHom,
    pub from_canonical: GroupHom,
}

/// A homomorphism between presented groups given on ambient generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FGAbelianGroup,
    target: FGAbelianGroup,
    matrix: IntegerMatrix,
}

/// True iff every source relation maps into the target's relation span.
pub fn hom_is_well_defined(
    source: &FGAbelianGroup,
    target: &FGAbelianGroup,
    matrix: &IntegerMatrix,
) -> Result<bool> {
    if matrix.rows() != target.ambient_rank() || matrix.cols() != source.ambient_rank() {
        return Err(Error::invalid(format!(
            "hom matrix is {}x{} but must be {}x{}",
            matrix.rows(),
            matrix.cols(),
            target.ambient_rank(),
            source.ambient_rank()
        )));
    }
    let rels = source.relations();
    Ok((0..rels.rows()).all(|l| target.is_relation(&matrix.apply(rels.row(l)))))
}

impl GroupHom {
    pub fn new(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntegerMatrix) -> Result<Self> {
        if !hom_is_well_defined(&source, &target, &matrix)? {
            return Err(Error::invalid("matrix does not send source relations to target relations"));
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    /// For maps that are well defined by construction.
    pub(crate) fn unchecked(source: FGAbelianGroup, target: FGAbelianGroup, matrix: IntegerMatrix) -> Self {
        debug_assert_eq!(hom_is_well_defined(&source, &target, &matrix), Ok(true));
        GroupHom {
            source,
            target,
            matrix,
        }
    }

    pub fn identity(g: &FGAbelianGroup) -> Self {
        Self::unchecked(g.clone(), g.clone(), IntegerMatrix::identity(g.ambient_rank()))
    }

    pub fn zero(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        Self::unchecked(
            source.clone(),
            target.clone(),
            IntegerMatrix::zeros(target.ambient_rank(), source.ambient_rank()),
        )
    }

    pub fn source(&self) -> &FGAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FGAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn apply_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply(x)
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group != self.source {
            return Err(Error::invalid("element does not belong to the source of the map"));
        }
        Ok(GroupElement {
            group: self.target.clone(),
            coords: self.matrix.apply(&x.coords),
        })
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &GroupHom) -> Result<GroupHom> {
        if f.target != self.source {
            return Err(Error::invalid("cannot compose: target of the first map is not the source of the second"));
        }
        Ok(Self::unchecked(f.source.clone(), self.target.clone(), self.matrix.mul(&f.matrix)))
    }

    fn check_parallel(&self, other: &GroupHom) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::invalid("maps do not share source and target"));
        }
        Ok(())
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom> {
        self.check_parallel(other)?;
        Ok(Self::unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix)))
    }

    pub fn sub(&self, other: &GroupHom) -> Result<GroupHom> {
        self.check_parallel(other)?;
        Ok(Self::unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix)))
    }

    pub fn neg(&self) -> GroupHom {
        Self::unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    /// Equality as maps: every generator has congruent images.
    pub fn same_map(&self, other: &GroupHom) -> Result<bool> {
        self.check_parallel(other)?;
        Ok(self.sub(other)?.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|i| self.target.is_relation(&self.matrix.column(i)))
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).0.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Same matrix viewed between other presentations, checked.
    pub fn retarget(&self, source: &FGAbelianGroup, target: &FGAbelianGroup) -> Result<GroupHom> {
        GroupHom::new(source.clone(), target.clone(), self.matrix.clone())
    }
}

/// `g ∘ f`.
pub fn compose_homs(g: &GroupHom, f: &GroupHom) -> Result<GroupHom> {
    g.compose(f)
}

/// An ambient coordinate vector read modulo the relations.
#[derive(Debug, Clone)]
pub struct GroupElement {
    group: FGAbelianGroup,
    coords: Vec<BigInt>,
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && {
            let diff: Vec<BigInt> = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
            self.group.is_relation(&diff)
        }
    }
}

impl Eq for GroupElement {}

impl GroupElement {
    pub fn new(group: FGAbelianGroup, coords: Vec<BigInt>) -> Result<Self> {
        if coords.len() != group.ambient_rank() {
            return Err(Error::invalid(format!(
                "element has {} coordinates but the group has ambient rank {}",
                coords.len(),
                group.ambient_rank()
            )));
        }
        Ok(GroupElement { group, coords })
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.group.is_relation(&self.coords)
    }

    pub fn canonical_coords(&self) -> Vec<BigInt> {
        self.group.canonical_coords(&self.coords)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::invalid("elements belong to different groups"));
        }
        Ok(GroupElement {
            group: self.group.clone(),
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> GroupElement {
        self.scale(&-BigInt::one())
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Order of the element, `None` if it has infinite order.
    pub fn order(&self) -> Option<BigInt> {
        let c = self.canonical_coords();
        let inv = self.group.invariants();
        let t = inv.torsion.len();
        if c[t..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut ord = BigInt::one();
        for (x, d) in c.iter().zip(&inv.torsion) {
            let o = d / x.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }
}

/// Injection of summand `k` and projection onto summand `k` of a direct sum.
pub fn direct_sum_maps(parts: &[FGAbelianGroup]) -> (FGAbelianGroup, Vec<GroupHom>, Vec<GroupHom>) {
    let sum = FGAbelianGroup::direct_sum(parts);
    let n = sum.ambient_rank();
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for g in parts {
        let r = g.ambient_rank();
        let mut inj = IntegerMatrix::zeros(n, r);
        let mut proj = IntegerMatrix::zeros(r, n);
        for i in 0..r {
            inj.set(offset + i, i, BigInt::one());
            proj.set(i, offset + i, BigInt::one());
        }
        injections.push(GroupHom::unchecked(g.clone(), sum.clone(), inj));
        projections.push(GroupHom::unchecked(sum.clone(), g.clone(), proj));
        offset += r;
    }
    (sum, injections, projections)
}

/// The map `x ↦ (f_1 x, f_2 x, ...)` into the direct sum of the targets.
pub fn hom_into_sum(sum: &FGAbelianGroup, maps: &[&GroupHom]) -> Result<GroupHom> {
    let src = maps
        .first()
        .map(|f| f.source().clone())
        .ok_or_else(|| Error::invalid("no maps given"))?;
    let mut m = IntegerMatrix::zeros(0, src.ambient_rank());
    for f in maps {
        if *f.source() != src {
            return Err(Error::invalid("maps into a sum must share their source"));
        }
        m = m.vstack(f.matrix());
    }
    GroupHom::new(src, sum.clone(), m)
}

/// The map `(x_1, x_2, ...) ↦ f_1 x_1 + f_2 x_2 + ...` out of the direct sum.
pub fn hom_from_sum(sum: &FGAbelianGroup, maps: &[&GroupHom]) -> Result<GroupHom> {
    let tgt = maps
        .first()
        .map(|f| f.target().clone())
        .ok_or_else(|| Error::invalid("no maps given"))?;
    let mut m = IntegerMatrix::zeros(tgt.ambient_rank(), 0);
    for f in maps {
        if *f.target() != tgt {
            return Err(Error::invalid("maps out of a sum must share their target"));
        }
        m = m.hstack(f.matrix());
    }
    GroupHom::new(sum.clone(), tgt, m)
}

/// Matrix whose rows span `{x : M x ∈ rowspan(R_H)}` in the source ambient
/// lattice, reduced to a basis.
fn preimage_of_relations_basis(f: &GroupHom) -> IntegerMatrix {
    let n = f.source().ambient_rank();
    let stacked = f.matrix().transpose().vstack(f.target().relations());
    let k = left_kernel(&stacked);
    row_basis(&k.submatrix(0..k.rows(), 0..n))
}

/// Presents the subgroup with lattice basis `basis` (rows) containing the
/// relation lattice of `g`, together with its inclusion.
fn present_sublattice(g: &FGAbelianGroup, basis: IntegerMatrix) -> Result<(FGAbelianGroup, GroupHom)> {
    let k = basis.rows();
    let smith = smith_normal_form(&basis);
    let rels = g.relations();
    let mut rows = Vec::with_capacity(rels.rows());
    for l in 0..rels.rows() {
        let c = solve_left_with(&smith, rels.row(l))
            .ok_or_else(|| Error::internal("relation lattice not contained in the sublattice"))?;
        rows.push(c);
    }
    let sub = FGAbelianGroup::from_parts(k, IntegerMatrix::from_rows(k, rows).unwrap());
    let incl = GroupHom::unchecked(sub.clone(), g.clone(), basis.transpose());
    Ok((sub, incl))
}

/// Subgroup of `h` generated by the rows of `generators` (ambient vectors).
pub fn subgroup(h: &FGAbelianGroup, generators: &IntegerMatrix) -> Result<(FGAbelianGroup, GroupHom)> {
    if generators.cols() != h.ambient_rank() {
        return Err(Error::invalid("generator length does not match ambient rank"));
    }
    let basis = row_basis(&generators.vstack(h.relations()));
    present_sublattice(h, basis)
}

pub fn kernel(f: &GroupHom) -> (FGAbelianGroup, GroupHom) {
    present_sublattice(f.source(), preimage_of_relations_basis(f)).expect("kernel lattice contains the relations")
}

pub fn image(f: &GroupHom) -> (FGAbelianGroup, GroupHom) {
    subgroup(f.target(), &f.matrix().transpose()).expect("dimensions agree by construction")
}

/// Target modulo the image; the projection has the identity matrix.
pub fn cokernel(f: &GroupHom) -> (FGAbelianGroup, GroupHom) {
    let t = f.target();
    let q = FGAbelianGroup::from_parts(t.ambient_rank(), t.relations().vstack(&f.matrix().transpose()));
    let proj = GroupHom::unchecked(t.clone(), q.clone(), IntegerMatrix::identity(t.ambient_rank()));
    (q, proj)
}

/// `{(x, y) : f(x) = g(y)}` with its two projections.
pub fn fiber_product(f: &GroupHom, g: &GroupHom) -> Result<(FGAbelianGroup, GroupHom, GroupHom)> {
    if f.target() != g.target() {
        return Err(Error::invalid("fiber product needs a common target"));
    }
    let (sum, _, proj) = direct_sum_maps(&[f.source().clone(), g.source().clone()]);
    let diff = GroupHom::new(sum, f.target().clone(), f.matrix().hstack(&g.matrix().neg()))?;
    let (k, incl) = kernel(&diff);
    let pr1 = proj[0].compose(&incl)?;
    let pr2 = proj[1].compose(&incl)?;
    Ok((k, pr1, pr2))
}

/// Some `x` with `f(x) ≡ y`, or `None` when `y` is not in the image.
pub fn solve_in_group(f: &GroupHom, y: &GroupElement) -> Result<Option<GroupElement>> {
    if y.group() != f.target() {
        return Err(Error::invalid("element does not lie in the target of the map"));
    }
    Ok(solve_vec(f, y.coords()).map(|coords| GroupElement {
        group: f.source().clone(),
        coords,
    }))
}

/// Preimage of an ambient vector modulo target relations.
pub(crate) fn solve_vec(f: &GroupHom, y: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = f.source().ambient_rank();
    let stacked = f.matrix().transpose().vstack(f.target().relations());
    solve_left(&stacked, y).map(|mut x| {
        x.truncate(n);
        x
    })
}

/// A map `k` with `incl ∘ k = h`, found by lifting every generator.
///
/// Decides existence when `incl` is injective. For other maps a `None`
/// only means the generatorwise lift was not well defined.
pub fn factor_through(h: &GroupHom, incl: &GroupHom) -> Result<Option<GroupHom>> {
    if h.target() != incl.target() {
        return Err(Error::invalid("maps to factor must share their target"));
    }
    let stacked = incl.matrix().transpose().vstack(incl.target().relations());
    let smith = smith_normal_form(&stacked);
    let n = incl.source().ambient_rank();
    let mut cols = Vec::new();
    for i in 0..h.source().ambient_rank() {
        match solve_left_with(&smith, &h.matrix().column(i)) {
            Some(mut x) => {
                x.truncate(n);
                cols.push(x);
            }
            None => return Ok(None),
        }
    }
    let m = IntegerMatrix::from_rows(n, cols).unwrap().transpose();
    let k = match GroupHom::new(h.source().clone(), incl.source().clone(), m) {
        Ok(k) => k,
        Err(_) => return Ok(None),
    };
    if !incl.compose(&k)?.same_map(h)? {
        return Err(Error::internal("factorization does not commute"));
    }
    Ok(Some(k))
}

/// `im h ⊆ im g` for maps with a common target. Unlike [`factor_through`]
/// this needs no well-defined lift, so `g` may have a kernel.
pub fn image_contained(h: &GroupHom, g: &GroupHom) -> Result<bool> {
    if h.target() != g.target() {
        return Err(Error::invalid("maps to compare must share their target"));
    }
    let stacked = g.matrix().transpose().vstack(g.target().relations());
    let smith = smith_normal_form(&stacked);
    Ok((0..h.source().ambient_rank()).all(|i| solve_left_with(&smith, &h.matrix().column(i)).is_some()))
}

/// `Hom(A, B)` presented as a subgroup of `B^n`, `n` the ambient rank of `A`.
///
/// Coordinate `i * m + j` of the ambient `B^n` is the `j`-th coordinate of
/// the image of generator `i`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub source: FGAbelianGroup,
    pub target: FGAbelianGroup,
    pub group: FGAbelianGroup,
    /// Inclusion of the hom group into `B^n`.
    pub inclusion: GroupHom,
}

/// Flattens a matrix into hom-space ambient coordinates.
fn flatten(m: &IntegerMatrix) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.cols() {
        for j in 0..m.rows() {
            v.push(m.get(j, i).clone());
        }
    }
    v
}

fn unflatten(v: &[BigInt], rows: usize, cols: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(rows, cols);
    for i in 0..cols {
        for j in 0..rows {
            m.set(j, i, v[i * rows + j].clone());
        }
    }
    m
}

impl HomSpace {
    pub fn new(source: &FGAbelianGroup, target: &FGAbelianGroup) -> Self {
        let n = source.ambient_rank();
        let m = target.ambient_rank();
        let ambient = FGAbelianGroup::direct_sum(&vec![target.clone(); n]);
        let rels = source.relations();
        let (group, inclusion) = if rels.rows() == 0 {
            (ambient.clone(), GroupHom::identity(&ambient))
        } else {
            let cod = FGAbelianGroup::direct_sum(&vec![target.clone(); rels.rows()]);
            let mut phi = IntegerMatrix::zeros(rels.rows() * m, n * m);
            for l in 0..rels.rows() {
                for i in 0..n {
                    for j in 0..m {
                        phi.set(l * m + j, i * m + j, rels.get(l, i).clone());
                    }
                }
            }
            kernel(&GroupHom::unchecked(ambient, cod, phi))
        };
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            group,
            inclusion,
        }
    }

    pub fn encode(&self, f: &GroupHom) -> Result<GroupElement> {
        if f.source() != &self.source || f.target() != &self.target {
            return Err(Error::invalid("map does not belong to this hom space"));
        }
        let coords = solve_vec(&self.inclusion, &flatten(f.matrix()))
            .ok_or_else(|| Error::internal("well-defined map not found in its hom space"))?;
        Ok(GroupElement {
            group: self.group.clone(),
            coords,
        })
    }

    pub fn decode(&self, x: &GroupElement) -> Result<GroupHom> {
        if x.group() != &self.group {
            return Err(Error::invalid("element does not belong to this hom space"));
        }
        self.decode_vec(x.coords())
    }

    pub fn decode_vec(&self, x: &[BigInt]) -> Result<GroupHom> {
        let v = self.inclusion.apply_vec(x);
        let m = unflatten(&v, self.target.ambient_rank(), self.source.ambient_rank());
        GroupHom::new(self.source.clone(), self.target.clone(), m)
    }

    /// Generators of the hom group decoded as maps.
    pub fn generators(&self) -> Result<Vec<GroupHom>> {
        (0..self.group.ambient_rank())
            .map(|k| self.decode(&self.group.generator(k)))
            .collect()
    }
}

/// The hom group of a linear operation between hom spaces, computed on
/// generators. `op` must be additive.
pub fn linear_map_between<F>(src: &HomSpace, tgt: &HomSpace, op: F) -> Result<GroupHom>
where
    F: Fn(&GroupHom) -> Result<GroupHom>,
{
    let mut cols = Vec::new();
    for g in src.generators()? {
        cols.push(tgt.encode(&op(&g)?)?.into_coords());
    }
    let r = tgt.group.ambient_rank();
    let m = if cols.is_empty() {
        IntegerMatrix::zeros(r, 0)
    } else {
        IntegerMatrix::from_rows(r, cols).unwrap().transpose()
    };
    GroupHom::new(src.group.clone(), tgt.group.clone(), m)
}

/// `Hom(F, B)` for a free group `F`.
pub fn hom_group(f: &FGAbelianGroup, b: &FGAbelianGroup) -> Result<FGAbelianGroup> {
    if !f.is_free() {
        return Err(Error::invalid("hom_group needs a free source"));
    }
    Ok(HomSpace::new(f, b).group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    fn hom(src: &FGAbelianGroup, tgt: &FGAbelianGroup, rows: &[&[i64]]) -> GroupHom {
        GroupHom::new(src.clone(), tgt.clone(), IntegerMatrix::from_i64(src.ambient_rank(), rows)).unwrap()
    }

    #[test]
    fn well_definedness_examples() {
        let z2 = FGAbelianGroup::cyclic(2);
        let z4 = FGAbelianGroup::cyclic(4);
        let z = FGAbelianGroup::free(1);
        let two = IntegerMatrix::from_i64(1, &[&[2]]);
        let one = IntegerMatrix::from_i64(1, &[&[1]]);
        assert_eq!(hom_is_well_defined(&z2, &z4, &two), Ok(true));
        assert_eq!(hom_is_well_defined(&z2, &z, &one), Ok(false));
        assert!(hom_is_well_defined(&z2, &z, &IntegerMatrix::zeros(2, 1)).is_err());
    }

    #[test]
    fn composition_examples() {
        let z = FGAbelianGroup::free(1);
        let z2 = FGAbelianGroup::cyclic(2);
        let f = hom(&z, &z, &[&[2]]);
        let g = hom(&z, &z, &[&[3]]);
        assert_eq!(g.compose(&f).unwrap().matrix(), &IntegerMatrix::from_i64(1, &[&[6]]));
        let q = hom(&z, &z2, &[&[1]]);
        assert!(q.compose(&f).unwrap().is_zero());
        assert!(f.compose(&q).is_err());
    }

    #[test]
    fn kernel_image_cokernel() {
        let z = FGAbelianGroup::free(1);
        let (c, _) = cokernel(&hom(&z, &z, &[&[2]]));
        assert_eq!(c.invariants().torsion, vec![int(2)]);
        let (k, incl) = kernel(&GroupHom::zero(&z, &z));
        assert!(k.isomorphic(&z));
        assert!(incl.is_isomorphism());
        let g = FGAbelianGroup::from_orders(&[2, 0]);
        let (im, _) = image(&GroupHom::identity(&g));
        assert!(im.isomorphic(&g));
    }

    #[test]
    fn congruence_fiber_product_is_free_of_rank_two() {
        let z = FGAbelianGroup::free(1);
        let z2 = FGAbelianGroup::cyclic(2);
        let q = hom(&z, &z2, &[&[1]]);
        let (p, pr1, pr2) = fiber_product(&q, &q).unwrap();
        assert_eq!(p.invariants(), Invariants { torsion: vec![], free_rank: 2 });
        assert!(q.compose(&pr1).unwrap().same_map(&q.compose(&pr2).unwrap()).unwrap());
    }

    #[test]
    fn solving_examples() {
        let z = FGAbelianGroup::free(1);
        let f = hom(&z, &z, &[&[2]]);
        let four = z.element(vec![int(4)]).unwrap();
        assert_eq!(solve_in_group(&f, &four).unwrap(), Some(z.element(vec![int(2)]).unwrap()));
        assert_eq!(solve_in_group(&f, &z.element(vec![int(3)]).unwrap()).unwrap(), None);
        let z2 = FGAbelianGroup::cyclic(2);
        let q = hom(&z, &z2, &[&[1]]);
        let x = solve_in_group(&q, &z2.generator(0)).unwrap().unwrap();
        assert!(x.coords()[0].is_odd());
    }

    #[test]
    fn hom_group_examples() {
        let z = FGAbelianGroup::free(1);
        let z6 = FGAbelianGroup::cyclic(6);
        assert!(hom_group(&z, &z6).unwrap().isomorphic(&z6));
        assert!(hom_group(&FGAbelianGroup::free(2), &z).unwrap().isomorphic(&FGAbelianGroup::free(2)));
        let b = FGAbelianGroup::from_orders(&[2, 0]);
        let h = HomSpace::new(&z, &b);
        assert!(h.group.isomorphic(&b));
        let f = hom(&z, &b, &[&[1], &[5]]);
        assert!(h.decode(&h.encode(&f).unwrap()).unwrap().same_map(&f).unwrap());
        assert!(hom_group(&FGAbelianGroup::cyclic(2), &z).is_err());
    }

    #[test]
    fn hom_space_with_relations() {
        // Hom(Z/4, Z/6) = Z/2
        let h = HomSpace::new(&FGAbelianGroup::cyclic(4), &FGAbelianGroup::cyclic(6));
        assert_eq!(h.group.invariants().torsion, vec![int(2)]);
    }

    #[test]
    fn canonical_round_trip() {
        let g = FGAbelianGroup::new(2, IntegerMatrix::from_i64(2, &[&[2, 0], &[0, 3]])).unwrap();
        let c = g.canonical();
        assert_eq!(c.group.invariants().torsion, vec![int(6)]);
        assert!(c.from_canonical.compose(&c.to_canonical).unwrap().same_map(&GroupHom::identity(&g)).unwrap());
        assert_eq!(g.enumerate(64).unwrap().len(), 6);
    }
}
