//! Exhaustive search for `A(G)`.
//!
//! Every exponent vector with `e_j` a multiple of `N / ord_j` is tried,
//! with pruning as soon as both sides of a relation are assigned. The
//! relations are checked for every `k` in `0..N`, and the group structure is
//! read off the solution set directly rather than from a matrix reduction.
//!
//! The guard caps the number of search nodes visited. With pruning this is
//! far below `prod_j ord_j` for most groups, but it still grows with
//! `|A(G)|` itself, which is `2^31` for `(Z/2)^5`.

use std::collections::{BTreeMap, HashSet};

use num_integer::Integer;

use super::structure::factorize;
use super::{CyclotomicClassFunction, FixedPointGroup};
use crate::error::{Error, Result};
use crate::groups::GroupData;

/// Default cap on the number of search nodes.
pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Unpruned search-space size `prod_j ord_j`, saturating.
pub fn search_space(g: &GroupData) -> u128 {
    g.classes()
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.order as u128))
}

/// Every member of `A(g)` by exhaustive search, in search order. Fails once
/// more than `guard` partial assignments have been tried.
pub fn enumerate_members(g: &GroupData, guard: u128) -> Result<Vec<Vec<u64>>> {
    let n = g.exponent();
    let l = g.class_count();
    let table = g.power_table();

    // checks[m]: relations e_d = k e_j whose larger index is m.
    let mut checks: Vec<Vec<(usize, usize, u64)>> = vec![Vec::new(); l];
    let mut seen = HashSet::new();
    for j in 0..l {
        for k in 0..n {
            let d = table.get(j, k);
            if seen.insert((d, j, k % g.classes()[j].order)) {
                checks[d.max(j)].push((d, j, k));
            }
        }
    }

    struct Search<'a> {
        g: &'a GroupData,
        n: u64,
        checks: Vec<Vec<(usize, usize, u64)>>,
        e: Vec<u64>,
        out: Vec<Vec<u64>>,
        nodes: u128,
        guard: u128,
    }

    impl Search<'_> {
        fn dfs(&mut self, m: usize) -> Result<()> {
            if m == self.e.len() {
                self.out.push(self.e.clone());
                return Ok(());
            }
            let ord = self.g.classes()[m].order;
            let step = self.n / ord;
            for a in 0..ord {
                self.nodes += 1;
                if self.nodes > self.guard {
                    return Err(Error::GuardExceeded {
                        size: self.nodes,
                        guard: self.guard,
                    });
                }
                self.e[m] = a * step;
                let (e, n) = (&self.e, self.n as u128);
                let ok = self.checks[m]
                    .iter()
                    .all(|&(d, j, k)| e[d] as u128 == (k as u128 * e[j] as u128) % n);
                if ok {
                    self.dfs(m + 1)?;
                }
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        n,
        checks,
        e: vec![0; l],
        out: Vec::new(),
        nodes: 0,
        guard,
    };
    search.dfs(0)?;
    Ok(search.out)
}

fn add(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

fn scale(a: &[u64], k: u64, n: u64) -> Vec<u64> {
    a.iter().map(|&x| (x as u128 * k as u128 % n as u128) as u64).collect()
}

fn order_of(a: &[u64], n: u64) -> u64 {
    a.iter().fold(1u64, |acc, &x| acc.lcm(&(n / x.gcd(&n))))
}

/// Greedy basis of a finite abelian `p`-group given as a set of vectors.
///
/// At each step `y` is chosen with the largest order `p^c` modulo the span
/// `H` of earlier picks, then corrected by some `h` in `H` with
/// `p^c h = p^c y` so that `<y - h>` meets `H` trivially.
fn p_basis(members: &[Vec<u64>], p: u64, n: u64) -> Vec<(u64, Vec<u64>)> {
    let dim = members.first().map_or(0, Vec::len);
    let zero = vec![0u64; dim];
    let mut span: HashSet<Vec<u64>> = HashSet::from([zero.clone()]);
    let mut basis = Vec::new();
    while span.len() < members.len() {
        let mut best: Option<(u64, &Vec<u64>)> = None;
        for y in members {
            let mut q = 1u64;
            let mut z = y.clone();
            while !span.contains(&z) {
                z = scale(&z, p, n);
                q *= p;
            }
            if best.is_none_or(|(bq, _)| q > bq) {
                best = Some((q, y));
            }
        }
        let (q, y) = best.expect("members not yet spanned");
        let target = scale(y, q, n);
        let h = span
            .iter()
            .filter(|h| scale(h, q, n) == target)
            .min()
            .expect("a maximal-order element modulo the span lifts")
            .clone();
        let gen: Vec<u64> = y.iter().zip(&h).map(|(a, b)| (a + n - b) % n).collect();
        let mut grown = HashSet::with_capacity(span.len() * q as usize);
        for s in &span {
            let mut cur = s.clone();
            for _ in 0..q {
                grown.insert(cur.clone());
                cur = add(&cur, &gen, n);
            }
        }
        span = grown;
        basis.push((q, gen));
    }
    basis
}

/// `A(g)` by exhaustive search, with invariant factors read from the
/// `p`-primary parts of the solution set.
pub fn brute_force_fixed_points(g: &GroupData, guard: u128) -> Result<FixedPointGroup> {
    let members = enumerate_members(g, guard)?;
    let n = g.exponent();
    let l = g.class_count();

    let mut by_prime: BTreeMap<u64, Vec<(u64, Vec<u64>)>> = BTreeMap::new();
    let total = members.len() as u64;
    for (p, _) in factorize(total) {
        let primary: Vec<Vec<u64>> = members
            .iter()
            .filter(|m| {
                let o = order_of(m, n);
                factorize(o).iter().all(|&(q, _)| q == p)
            })
            .cloned()
            .collect();
        by_prime.insert(p, p_basis(&primary, p, n));
    }

    let count = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(count);
    let mut generators = Vec::with_capacity(count);
    for i in 0..count {
        let mut d = 1u64;
        let mut gen = vec![0u64; l];
        for comps in by_prime.values() {
            if let Some((q, v)) = comps.get(i) {
                d *= q;
                gen = add(&gen, v, n);
            }
        }
        factors.push(d);
        generators.push(CyclotomicClassFunction { modulus: n, exps: gen });
    }
    factors.reverse();
    generators.reverse();
    debug_assert_eq!(factors.iter().product::<u64>(), total);

    Ok(FixedPointGroup {
        group: g.model().clone(),
        invariant_factors: factors,
        generators,
        zero_solution: true,
    })
}
