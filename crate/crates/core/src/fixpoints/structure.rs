//! Turning a direct sum of cyclic pieces into invariant-factor form.

use std::collections::BTreeMap;

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

fn scale(v: &[u64], k: u64, modulus: u64) -> Vec<u64> {
    v.iter()
        .map(|&x| (x as u128 * k as u128 % modulus as u128) as u64)
        .collect()
}

fn add(a: &mut [u64], b: &[u64], modulus: u64) {
    for (x, y) in a.iter_mut().zip(b) {
        *x = (*x + y) % modulus;
    }
}

/// Split each piece `(order, generator)` of an internal direct sum into
/// prime-power components, grouped by prime. Within a prime, components are
/// sorted by decreasing order.
pub fn primary_components(pieces: &[(u64, Vec<u64>)], modulus: u64) -> BTreeMap<u64, Vec<(u64, Vec<u64>)>> {
    let mut by_prime: BTreeMap<u64, Vec<(u64, Vec<u64>)>> = BTreeMap::new();
    for (order, v) in pieces {
        for (p, e) in factorize(*order) {
            let q = p.pow(e);
            by_prime.entry(p).or_default().push((q, scale(v, order / q, modulus)));
        }
    }
    for comps in by_prime.values_mut() {
        comps.sort_by_key(|c| std::cmp::Reverse(c.0));
    }
    by_prime
}

/// Recombine prime-power components into invariant factors `d_1 | d_2 | ...`
/// (ascending) with one generator each. Components of coprime orders add up
/// to an element whose order is the product.
pub fn combine_primary(
    by_prime: &BTreeMap<u64, Vec<(u64, Vec<u64>)>>,
    dim: usize,
    modulus: u64,
) -> Vec<(u64, Vec<u64>)> {
    let count = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut order = 1u64;
        let mut gen = vec![0u64; dim];
        for comps in by_prime.values() {
            if let Some((q, v)) = comps.get(i) {
                order *= q;
                add(&mut gen, v, modulus);
            }
        }
        out.push((order, gen));
    }
    out.reverse();
    out
}

/// Invariant-factor form of `sum_i Z/order_i` with the given generators.
/// Trivial pieces are dropped.
pub fn invariant_form(pieces: &[(u64, Vec<u64>)], dim: usize, modulus: u64) -> Vec<(u64, Vec<u64>)> {
    let nontrivial: Vec<_> = pieces.iter().filter(|(o, _)| *o > 1).cloned().collect();
    combine_primary(&primary_components(&nontrivial, modulus), dim, modulus)
}
