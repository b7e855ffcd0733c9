//! Brute-force invariants of finite cohomology groups by listing elements.
//!
//! Nothing here goes through Smith normal form: a finite group `Z^r / R`
//! with `R` square and nonsingular is enumerated through the coset key
//! `v · adj(R) mod |det R|`, which vanishes exactly on the row span of `R`.

use std::collections::{HashSet, VecDeque};

use num_traits::ToPrimitive;
use tricat_core::complexes::Complex3;
use tricat_core::{FGAbelianGroup, IntegerMatrix};

fn to_rows(m: &IntegerMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().expect("small entry")).collect())
        .collect()
}

fn det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor(m, 0, j))
        })
        .sum()
}

fn minor(m: &[Vec<i64>], row: usize, col: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, x)| *x).collect())
        .collect()
}

/// A finite group with all its elements listed.
pub struct FiniteGroup {
    adj: Vec<Vec<i64>>,
    modulus: i64,
    rank: usize,
    pub elements: Vec<Vec<i64>>,
}

impl FiniteGroup {
    /// `None` unless the presentation is square and nonsingular.
    pub fn new(g: &FGAbelianGroup) -> Option<Self> {
        let r = g.ambient_rank();
        let rel = to_rows(g.relations());
        if rel.len() != r || rel.iter().any(|row| row.len() != r) {
            return None;
        }
        let d = det(&rel);
        if d == 0 {
            return None;
        }
        let adj: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                        sign * det(&minor(&rel, j, i))
                    })
                    .collect()
            })
            .collect();
        let mut g = FiniteGroup {
            adj,
            modulus: d.abs(),
            rank: r,
            elements: Vec::new(),
        };
        g.enumerate();
        Some(g)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn key(&self, v: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| {
                let s: i64 = (0..self.rank).map(|i| v[i] * self.adj[i][j]).sum();
                s.rem_euclid(self.modulus)
            })
            .collect()
    }

    fn enumerate(&mut self) {
        let zero = vec![0; self.rank];
        let mut seen = HashSet::from([self.key(&zero)]);
        let mut queue = VecDeque::from([zero]);
        while let Some(v) = queue.pop_front() {
            for k in 0..self.rank {
                let mut w = v.clone();
                w[k] += 1;
                if seen.insert(self.key(&w)) {
                    queue.push_back(w);
                }
            }
            self.elements.push(v);
        }
    }
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Invariant factors of `ker(d_out) / im(d_in)` at `g`, ascending and
/// without ones, from counts of elements killed by each prime power.
fn subquotient(
    g: &FiniteGroup,
    incoming: Option<(&FiniteGroup, &IntegerMatrix)>,
    outgoing: Option<(&FiniteGroup, &IntegerMatrix)>,
) -> Vec<i64> {
    let cycles: Vec<&Vec<i64>> = match outgoing {
        None => g.elements.iter().collect(),
        Some((n, d)) => {
            let d = to_rows(d);
            let zero = vec![0; n.rank];
            g.elements.iter().filter(|x| n.key(&apply(&d, x)) == n.key(&zero)).collect()
        }
    };
    let boundaries: HashSet<Vec<i64>> = match incoming {
        None => HashSet::from([g.key(&vec![0; g.rank])]),
        Some((p, d)) => {
            let d = to_rows(d);
            p.elements.iter().map(|y| g.key(&apply(&d, y))).collect()
        }
    };
    let order = (cycles.len() / boundaries.len()) as i64;
    let killed_by = |n: i64| {
        let c = cycles
            .iter()
            .filter(|z| {
                let nz: Vec<i64> = z.iter().map(|x| x * n).collect();
                boundaries.contains(&g.key(&nz))
            })
            .count();
        (c / boundaries.len()) as i64
    };
    let mut per_prime: Vec<(i64, Vec<u32>)> = Vec::new();
    for p in primes_dividing(order) {
        let mut exps = Vec::new();
        let mut prev = 0u32;
        let mut k = 1u32;
        loop {
            let e = ilog(killed_by(p.pow(k)), p);
            if e == prev {
                break;
            }
            // cyclic factors of order at least p^k
            let at_least = e - prev;
            exps.push(at_least);
            prev = e;
            k += 1;
        }
        // exps[k-1] is the count of factors with exponent >= k
        let n = exps[0] as usize;
        let mut factor_exps = vec![0u32; n];
        for (k, count) in exps.iter().enumerate() {
            for e in factor_exps.iter_mut().take(*count as usize) {
                *e = k as u32 + 1;
            }
        }
        per_prime.push((p, factor_exps));
    }
    let len = per_prime.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors: Vec<i64> = (0..len)
        .map(|i| per_prime.iter().map(|(p, e)| e.get(i).map_or(1, |x| p.pow(*x))).product())
        .collect();
    factors.sort();
    factors
}

fn ilog(mut n: i64, p: i64) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert_eq!(n % p, 0);
        n /= p;
        e += 1;
    }
    e
}

fn primes_dividing(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of `H^-2, H^-1, H^0`, or `None` if some term is not a
/// finite group presented by a square nonsingular matrix.
pub fn cohomology_invariants(c: &Complex3) -> Option<[Vec<i64>; 3]> {
    let g2 = FiniteGroup::new(c.g2())?;
    let g1 = FiniteGroup::new(c.g1())?;
    let g0 = FiniteGroup::new(c.g0())?;
    let (d2, d1) = (c.d2().matrix(), c.d1().matrix());
    Some([
        subquotient(&g2, None, Some((&g1, d2))),
        subquotient(&g1, Some((&g2, d2)), Some((&g0, d1))),
        subquotient(&g0, Some((&g1, d1)), None),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use tricat_core::complexes::Complex3;
    use tricat_core::GroupHom;

    #[test]
    fn lists_cyclic_products() {
        let g = FGAbelianGroup::from_orders(&[2, 4]);
        assert_eq!(FiniteGroup::new(&g).unwrap().order(), 8);
        let z = FGAbelianGroup::zero();
        assert_eq!(FiniteGroup::new(&z).unwrap().order(), 1);
    }

    #[test]
    fn invariants_of_known_groups() {
        for (orders, want) in [
            (vec![2, 2], vec![2, 2]),
            (vec![4, 6], vec![2, 12]),
            (vec![3, 5], vec![15]),
            (vec![1, 1], vec![]),
            (vec![8, 2, 4], vec![2, 4, 8]),
        ] {
            let g = FGAbelianGroup::from_orders(&orders);
            let c = Complex3::in_degree(g, 0).unwrap();
            assert_eq!(cohomology_invariants(&c).unwrap()[2], want);
        }
    }

    #[test]
    fn doubling_on_z4() {
        let z4 = FGAbelianGroup::from_orders(&[4]);
        let zero = FGAbelianGroup::zero();
        let two = GroupHom::new(z4.clone(), z4.clone(), IntegerMatrix::from_rows(1, vec![vec![2.into()]]).unwrap()).unwrap();
        let c = Complex3::new(GroupHom::zero(&zero, &z4), two).unwrap();
        let [h2, h1, h0] = cohomology_invariants(&c).unwrap();
        assert!(h2.is_empty());
        assert_eq!(h1, vec![2]);
        assert_eq!(h0, vec![2]);
    }
}
