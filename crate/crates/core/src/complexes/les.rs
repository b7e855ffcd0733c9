use super::cohomology::{cohomology, induced_map, Cohomology};
use super::ChainMap;
use crate::error::{Error, Result};
use crate::group::{image_contained, kernel, solve_vec, FGAbelianGroup, GroupHom};
use crate::matrix::IntegerMatrix;

#[derive(Debug, Clone)]
pub struct LesNode {
    /// e.g. `H^-1(M)`.
    pub label: String,
    pub group: FGAbelianGroup,
    pub exact: bool,
}

/// The long exact cohomology sequence of `0 -> E -> M -> Q -> 0`.
///
/// Nodes run `H^-2(E), H^-2(M), H^-2(Q), H^-1(E), ..., H^0(Q)`; `maps[k]`
/// goes from node `k` to node `k + 1`. Exactness at the first node means
/// injectivity and at the last node surjectivity.
#[derive(Debug, Clone)]
pub struct ExactSequenceReport {
    pub nodes: Vec<LesNode>,
    pub maps: Vec<GroupHom>,
}

impl ExactSequenceReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }

    /// The connecting maps `H^-2(Q) -> H^-1(E)` and `H^-1(Q) -> H^0(E)`.
    pub fn connecting_maps(&self) -> [&GroupHom; 2] {
        [&self.maps[2], &self.maps[5]]
    }
}

/// Checks that a pair of group maps is short exact in the middle.
fn degreewise_short_exact(i: &GroupHom, p: &GroupHom) -> Result<bool> {
    if !i.is_injective() || !p.is_surjective() || !p.compose(i)?.is_zero() {
        return Ok(false);
    }
    let (_, kincl) = kernel(p);
    image_contained(&kincl, i)
}

/// `ker(g) = im(f)` for `f : X -> Y`, `g : Y -> Z`.
fn exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !g.compose(f)?.is_zero() {
        return Ok(false);
    }
    let (_, kincl) = kernel(g);
    image_contained(&kincl, f)
}

fn connecting(
    hq: &Cohomology,
    he: &Cohomology,
    proj: &GroupHom,
    d_m: &GroupHom,
    incl: &GroupHom,
) -> Result<GroupHom> {
    let reps = hq.representatives();
    let mut cols = Vec::new();
    for k in 0..reps.cols() {
        let lifted = solve_vec(proj, &reps.column(k)).ok_or_else(|| Error::internal("projection not surjective"))?;
        let image = d_m.apply_vec(&lifted);
        let back = solve_vec(incl, &image).ok_or_else(|| Error::internal("boundary does not come from E"))?;
        cols.push(he.class_of(&back)?.into_coords());
    }
    let r = he.group.ambient_rank();
    let m = IntegerMatrix::from_rows(r, cols).unwrap().transpose();
    GroupHom::new(hq.group.clone(), he.group.clone(), m)
}

pub fn ses_to_les(incl: &ChainMap, proj: &ChainMap) -> Result<ExactSequenceReport> {
    if incl.target() != proj.source() {
        return Err(Error::invalid("inclusion and projection do not meet in the middle"));
    }
    for deg in [-2, -1, 0] {
        if !degreewise_short_exact(incl.component(deg)?, proj.component(deg)?)? {
            return Err(Error::invalid(format!("sequence is not short exact in degree {deg}")));
        }
    }
    let (e, m, q) = (incl.source(), incl.target(), proj.target());
    let mut coh = Vec::new();
    for deg in [-2, -1, 0] {
        for c in [e, m, q] {
            coh.push(cohomology(c, deg)?);
        }
    }
    let mut maps = Vec::new();
    for (k, deg) in [-2, -1, 0].into_iter().enumerate() {
        let b = 3 * k;
        maps.push(induced_map(incl.component(deg)?, &coh[b], &coh[b + 1])?);
        maps.push(induced_map(proj.component(deg)?, &coh[b + 1], &coh[b + 2])?);
        if deg < 0 {
            let d_m = if deg == -2 { m.d2() } else { m.d1() };
            maps.push(connecting(
                &coh[b + 2],
                &coh[b + 3],
                proj.component(deg)?,
                d_m,
                incl.component(deg + 1)?,
            )?);
        }
    }
    let names = ["E", "M", "Q"];
    let mut nodes = Vec::new();
    for (k, h) in coh.iter().enumerate() {
        let exact = if k == 0 {
            maps[0].is_injective()
        } else if k == coh.len() - 1 {
            maps[k - 1].is_surjective()
        } else {
            exact_at(&maps[k - 1], &maps[k])?
        };
        nodes.push(LesNode {
            label: format!("H^{}({})", h.degree, names[k % 3]),
            group: h.group.clone(),
            exact,
        });
    }
    Ok(ExactSequenceReport { nodes, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Complex3;
    use crate::matrix::int;

    #[test]
    fn times_two_in_degree_zero() {
        let z = FGAbelianGroup::free(1);
        let z2 = FGAbelianGroup::cyclic(2);
        let a = Complex3::in_degree(z.clone(), 0).unwrap();
        let q = Complex3::in_degree(z2.clone(), 0).unwrap();
        let zero = |s: &Complex3, t: &Complex3| (GroupHom::zero(s.g2(), t.g2()), GroupHom::zero(s.g1(), t.g1()));
        let (i2, i1) = zero(&a, &a);
        let two = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_i64(1, &[&[2]])).unwrap();
        let incl = ChainMap::new(&a, &a, i2, i1, two).unwrap();
        let (p2, p1) = zero(&a, &q);
        let p0 = GroupHom::new(z.clone(), z2.clone(), IntegerMatrix::from_i64(1, &[&[1]])).unwrap();
        let proj = ChainMap::new(&a, &q, p2, p1, p0).unwrap();
        let r = ses_to_les(&incl, &proj).unwrap();
        assert_eq!(r.nodes.len(), 9);
        assert!(r.is_exact());
        assert!(r.nodes[3..6].iter().all(|n| n.group.is_trivial()));
        assert_eq!(r.nodes[8].group.invariants().torsion, vec![int(2)]);
        assert!(ses_to_les(&proj.clone(), &ChainMap::identity(&q)).is_err());
    }

    #[test]
    fn identity_and_zero_quotient() {
        let z = FGAbelianGroup::free(1);
        let two = GroupHom::new(z.clone(), z.clone(), IntegerMatrix::from_i64(1, &[&[2]])).unwrap();
        let a = Complex3::new(two, GroupHom::zero(&z, &FGAbelianGroup::zero())).unwrap();
        let r = ses_to_les(&ChainMap::identity(&a), &ChainMap::zero(&a, &Complex3::zero())).unwrap();
        assert!(r.is_exact());
        assert!(r.maps[3].is_isomorphism());
    }
}
