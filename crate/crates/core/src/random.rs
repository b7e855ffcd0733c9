//! Seeded generators of random test instances.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{hom_complex_truncated, ChainMap, Complex2, Complex3};
use crate::error::Result;
use crate::fractions::{Diamond, Fraction, Roof};
use crate::group::{cokernel, factor_through, hom_is_well_defined, subgroup, FGAbelianGroup, GroupHom};
use crate::matrix::{int, IntegerMatrix};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
        let mut m = IntegerMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, int(self.range(-bound, bound)));
            }
        }
        m
    }

    /// A finite group `Z^r / R` with `R` square, entries in `[-4, 4]` and
    /// `|det R| <= max_order`.
    pub fn finite_group(&mut self, max_rank: usize, max_order: u64) -> FGAbelianGroup {
        let r = self.range(0, max_rank as i64) as usize;
        loop {
            let m = self.matrix(r, r, 4);
            let d = m.determinant().abs();
            if !d.is_zero() && d <= BigInt::from(max_order) {
                return FGAbelianGroup::new(r, m).expect("square relation matrix");
            }
        }
    }

    /// A direct sum of cyclic groups; order `0` stands for `Z`.
    pub fn cyclic_sum(&mut self, max_rank: usize, orders: &[i64]) -> FGAbelianGroup {
        let r = self.range(0, max_rank as i64) as usize;
        let picks: Vec<i64> = (0..r).map(|_| orders[self.range(0, orders.len() as i64 - 1) as usize]).collect();
        FGAbelianGroup::from_orders(&picks)
    }

    /// A well-defined hom with entries in `[-bound, bound]`, found by
    /// rejection; the zero map if none turns up.
    pub fn hom(&mut self, source: &FGAbelianGroup, target: &FGAbelianGroup, bound: i64) -> GroupHom {
        for _ in 0..40 {
            let m = self.matrix(target.ambient_rank(), source.ambient_rank(), bound);
            if hom_is_well_defined(source, target, &m).expect("shapes agree") {
                return GroupHom::new(source.clone(), target.clone(), m).expect("checked");
            }
        }
        GroupHom::zero(source, target)
    }

    /// A complex with `d1 ∘ d2 = 0`, entries in `[-bound, bound]`.
    pub fn complex3_over(&mut self, groups: [FGAbelianGroup; 3], bound: i64) -> Complex3 {
        let [g2, g1, g0] = groups;
        for _ in 0..40 {
            let d2 = self.hom(&g2, &g1, bound);
            let d1 = self.hom(&g1, &g0, bound);
            if d1.compose(&d2).expect("composable").is_zero() {
                return Complex3::new(d2, d1).expect("checked");
            }
        }
        let d2 = self.hom(&g2, &g1, bound);
        Complex3::new(d2, GroupHom::zero(&g1, &g0)).expect("zero d1")
    }

    pub fn finite_complex3(&mut self, max_rank: usize, max_order: u64) -> Complex3 {
        let g = [(); 3].map(|_| self.finite_group(max_rank, max_order));
        self.complex3_over(g, 4)
    }

    /// A complex over cyclic sums, free summands allowed.
    pub fn complex3(&mut self, max_rank: usize) -> Complex3 {
        let g = [(); 3].map(|_| self.cyclic_sum(max_rank, &[0, 0, 2, 3, 4, 6]));
        self.complex3_over(g, 3)
    }

    pub fn complex2(&mut self, max_rank: usize) -> Complex2 {
        let g1 = self.cyclic_sum(max_rank, &[0, 0, 2, 3, 4]);
        let g0 = self.cyclic_sum(max_rank, &[0, 0, 2, 3, 4]);
        Complex2::new(self.hom(&g1, &g0, 3))
    }

    /// A sampled cycle of the truncated hom complex.
    pub fn chain_map(&mut self, a: &Complex3, b: &Complex3) -> Result<ChainMap> {
        let th = hom_complex_truncated(a, b)?;
        let n = th.complex.g0().ambient_rank();
        let x: Vec<BigInt> = (0..n).map(|_| int(self.range(-2, 2))).collect();
        th.decode_chain_map(&x)
    }

    /// `X = X` in degrees `(-2,-1)` or `(-1,0)`.
    pub fn acyclic(&mut self, max_rank: usize) -> Complex3 {
        let x = self.cyclic_sum(max_rank, &[0, 2, 3, 5]);
        let z = FGAbelianGroup::zero();
        let id = GroupHom::identity(&x);
        if self.chance(0.5) {
            Complex3::new(id, GroupHom::zero(&x, &z)).expect("zero composite")
        } else {
            Complex3::new(GroupHom::zero(&z, &x), id).expect("zero composite")
        }
    }

    /// A product of elementary unimodular matrices.
    pub fn unimodular(&mut self, n: usize) -> IntegerMatrix {
        let mut m = IntegerMatrix::identity(n);
        if n < 2 {
            if n == 1 && self.chance(0.5) {
                m.set(0, 0, int(-1));
            }
            return m;
        }
        for _ in 0..(2 * n) {
            let i = self.range(0, n as i64 - 1) as usize;
            let mut j = self.range(0, n as i64 - 2) as usize;
            if j >= i {
                j += 1;
            }
            let c = int(self.range(-2, 2));
            // row i += c * row j
            for k in 0..n {
                let v = m.get(i, k) + &c * m.get(j, k);
                m.set(i, k, v);
            }
        }
        m
    }

    /// A copy of `c` over transformed presentations, with the isomorphism.
    pub fn conjugate_complex(&mut self, c: &Complex3) -> Result<(Complex3, ChainMap)> {
        let mut groups = Vec::new();
        let mut mats = Vec::new();
        let mut invs = Vec::new();
        for g in [c.g2(), c.g1(), c.g0()] {
            let p = self.unimodular(g.ambient_rank());
            let inv = unimodular_inverse(&p);
            groups.push(FGAbelianGroup::new(g.ambient_rank(), g.relations().mul(&p.transpose()))?);
            mats.push(p);
            invs.push(inv);
        }
        let d2 = GroupHom::new(groups[0].clone(), groups[1].clone(), mats[1].mul(c.d2().matrix()).mul(&invs[0]))?;
        let d1 = GroupHom::new(groups[1].clone(), groups[2].clone(), mats[2].mul(c.d1().matrix()).mul(&invs[1]))?;
        let conj = Complex3::new(d2, d1)?;
        let t = ChainMap::new(
            c,
            &conj,
            GroupHom::new(c.g2().clone(), conj.g2().clone(), mats[0].clone())?,
            GroupHom::new(c.g1().clone(), conj.g1().clone(), mats[1].clone())?,
            GroupHom::new(c.g0().clone(), conj.g0().clone(), mats[2].clone())?,
        )?;
        Ok((conj, t))
    }

    /// A fraction `a <- M -> b` with `M ≅ a ⊕ C`, `C` acyclic, the left leg
    /// the projection and the right leg random on both summands.
    pub fn fraction(&mut self, a: &Complex3, b: &Complex3) -> Result<Fraction> {
        let c = self.acyclic(2);
        let (m, _, [pa, pc]) = a.direct_sum_maps(&c)?;
        let f = self.chain_map(a, b)?;
        let h = self.chain_map(&c, b)?;
        let p = f.compose(&pa)?.add(&h.compose(&pc)?)?;
        let (_, t) = self.conjugate_complex(&m)?;
        let back = t.inverse()?;
        Fraction::new(pa.compose(&back)?, p.compose(&back)?)
    }

    /// A roof from `f` to a copy of `f` whose apex `M ⊕ C` (with `C`
    /// acyclic) is presented differently.
    pub fn roof_to_copy(&mut self, f: &Fraction) -> Result<Roof> {
        let c = self.acyclic(2);
        let (k, _, [pm, _]) = f.apex().direct_sum_maps(&c)?;
        let (_, t) = self.conjugate_complex(&k)?;
        let tinv = t.inverse()?;
        let copy = Fraction::new(f.q().compose(&pm)?.compose(&tinv)?, f.p().compose(&pm)?.compose(&tinv)?)?;
        Roof::new(f, &copy, pm, t)
    }

    /// A diamond from `h` to the same roof over a re-presented apex.
    pub fn diamond_on(&mut self, h: &Roof) -> Result<Diamond> {
        let (_, u) = self.conjugate_complex(h.apex())?;
        let uinv = u.inverse()?;
        let other = Roof::new(h.from_fraction(), h.to_fraction(), h.s().compose(&uinv)?, h.r().compose(&uinv)?)?;
        Diamond::new(h, &other, u)
    }

    /// A degreewise short exact sequence `E -> M -> M/E` with `E` the
    /// subcomplex generated by random elements.
    pub fn short_exact(&mut self, m: &Complex3) -> Result<(ChainMap, ChainMap)> {
        let gens = |s: &mut Sampler, g: &FGAbelianGroup| {
            let k = s.range(0, 2) as usize;
            s.matrix(k, g.ambient_rank(), 2)
        };
        let s2 = gens(self, m.g2());
        let s1 = gens(self, m.g1()).vstack(&s2.mul(&m.d2().matrix().transpose()));
        let s0 = gens(self, m.g0()).vstack(&s1.mul(&m.d1().matrix().transpose()));
        let (_, i2) = subgroup(m.g2(), &s2)?;
        let (_, i1) = subgroup(m.g1(), &s1)?;
        let (_, i0) = subgroup(m.g0(), &s0)?;
        let lift = |d: &GroupHom, i_src: &GroupHom, i_tgt: &GroupHom| -> Result<GroupHom> {
            factor_through(&d.compose(i_src)?, i_tgt)?.ok_or_else(|| crate::Error::internal("subcomplex not closed"))
        };
        let ed2 = lift(m.d2(), &i2, &i1)?;
        let ed1 = lift(m.d1(), &i1, &i0)?;
        let e = Complex3::new(ed2, ed1)?;
        let incl = ChainMap::new(&e, m, i2.clone(), i1.clone(), i0.clone())?;
        let (q2, p2) = cokernel(&i2);
        let (q1, p1) = cokernel(&i1);
        let (q0, p0) = cokernel(&i0);
        let qd2 = GroupHom::new(q2, q1.clone(), m.d2().matrix().clone())?;
        let qd1 = GroupHom::new(q1, q0, m.d1().matrix().clone())?;
        let q = Complex3::new(qd2, qd1)?;
        let proj = ChainMap::new(m, &q, p2, p1, p0)?;
        Ok((incl, proj))
    }
}

/// Inverse of a unimodular matrix via the adjugate.
fn unimodular_inverse(m: &IntegerMatrix) -> IntegerMatrix {
    let n = m.rows();
    let det = m.determinant();
    let mut inv = IntegerMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = minor(m, j, i).determinant();
            let sign = if (i + j) % 2 == 0 { int(1) } else { int(-1) };
            inv.set(i, j, sign * minor * &det);
        }
    }
    debug_assert!(det.abs().to_i64() == Some(1));
    inv
}

fn minor(m: &IntegerMatrix, row: usize, col: usize) -> IntegerMatrix {
    let n = m.rows();
    let rows = (0..n)
        .filter(|&i| i != row)
        .map(|i| (0..n).filter(|&j| j != col).map(|j| m.get(i, j).clone()).collect())
        .collect();
    IntegerMatrix::from_rows(n - 1, rows).expect("square minor")
}
