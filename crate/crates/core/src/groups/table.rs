use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};

/// Above this order associativity is checked on a random sample of triples.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 1_000;
const ASSOCIATIVITY_SAMPLES: usize = 1_000_000;

/// A validated Cayley table over element indices `0..n`.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

impl CayleyTable {
    /// Build from labelled elements: `mul[i][j]` is the label of
    /// `elements[i] * elements[j]`.
    pub fn from_labels(elements: &[u64], mul: &[Vec<u64>], identity: u64) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty element list".into()));
        }
        let mut index = HashMap::with_capacity(n);
        for (i, &e) in elements.iter().enumerate() {
            if index.insert(e, i as u32).is_some() {
                return Err(Error::InvalidGroup(format!("duplicate element id {e}")));
            }
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("multiplication table must be {n}x{n}")));
        }
        let mut flat = Vec::with_capacity(n * n);
        for row in mul {
            for e in row {
                let i = index
                    .get(e)
                    .ok_or_else(|| Error::InvalidGroup(format!("unknown element id {e} in table")))?;
                flat.push(*i);
            }
        }
        let identity = *index
            .get(&identity)
            .ok_or_else(|| Error::InvalidGroup(format!("identity {identity} is not an element")))?
            as usize;
        Self::from_indices(n, flat, identity)
    }

    pub fn from_indices(n: usize, mul: Vec<u32>, identity: usize) -> Result<Self> {
        if mul.len() != n * n || identity >= n {
            return Err(Error::InvalidGroup("malformed table".into()));
        }
        for a in 0..n {
            if mul[identity * n + a] as usize != a || mul[a * n + identity] as usize != a {
                return Err(Error::InvalidGroup(format!("identity fails on element index {a}")));
            }
        }
        // Latin rows and columns give unique solvability of a*x = b and x*a = b.
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                let r = mul[a * n + b] as usize;
                let c = mul[b * n + a] as usize;
                if r >= n || c >= n || row[r] || col[c] {
                    return Err(Error::InvalidGroup(format!(
                        "row or column {a} is not a permutation of the elements"
                    )));
                }
                row[r] = true;
                col[c] = true;
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| mul[a * n + b] as usize == identity)
                .expect("latin row contains the identity") as u32;
        }
        let table = CayleyTable {
            n,
            mul,
            identity,
            inverse,
        };
        table.check_associative()?;
        Ok(table)
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.n;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidGroup(format!(
                    "not associative on element indices ({a}, {b}, {c})"
                )));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut result = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Conjugacy classes by exhaustive conjugation. The identity class is
    /// first, the rest ordered by their least element index. Returns the
    /// class of every element and the member list of every class.
    pub fn conjugacy_classes(&self) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.n;
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let order = std::iter::once(self.identity).chain((0..n).filter(|&a| a != self.identity));
        for a in order {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let c = self.mul(self.mul(g, a), self.inverse(g));
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    members.push(c);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        (class_of, classes)
    }
}
