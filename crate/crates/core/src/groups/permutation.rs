use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Bijection of `{0, .., n-1}`, stored as its image vector.
///
/// Products compose right to left: `(x * y)(i) = x(y(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::InvalidElement(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    /// Build from disjoint cycles given as 0-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                let a_us = a as usize;
                if a_us >= n || touched[a_us] {
                    return Err(Error::InvalidElement(format!("bad cycles {cycles:?}")));
                }
                touched[a_us] = true;
                images[a_us] = c[(k + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, k: u64) -> Permutation {
        let mut result = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        result
    }

    /// `tau * self * tau^-1`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        tau.compose(self).compose(&tau.inverse())
    }

    /// All cycles, fixed points included, each starting at its least point,
    /// ordered by the least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u32);
                i = self.images[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Cycles sorted longest first, ties broken by least point. This is the
    /// matching order used by [`canonical_conjugator`].
    pub fn canonical_cycles(&self) -> Vec<Vec<u32>> {
        let mut cycles = self.cycles();
        cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        cycles
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(|c| c.len() as u32).collect()).expect("cycle lengths are positive")
    }

    /// `+1` or `-1`; equals `(-1)^(n - #cycles)`.
    pub fn sign(&self) -> i32 {
        let parity = (self.degree() - self.cycles().len()) % 2;
        if parity == 0 {
            1
        } else {
            -1
        }
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().order()
    }

    /// Representative of a cycle type: cycles filled with ascending points,
    /// longest cycle first. `{3,1}` gives `(0 1 2)(3)`.
    pub fn canonical_representative(p: &Partition) -> Permutation {
        let n = p.n() as usize;
        let mut cycles = Vec::with_capacity(p.len());
        let mut next = 0u32;
        for &len in p.parts() {
            cycles.push((next..next + len).collect::<Vec<_>>());
            next += len;
        }
        Permutation::from_cycles(n, &cycles).expect("disjoint by construction")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, fixed points omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// The deterministic `tau` with `tau x tau^-1 = y`, or `None` when the two
/// permutations have different cycle types.
///
/// Cycles of both permutations are listed by [`Permutation::canonical_cycles`]
/// and matched in that order; each cycle is read from its least point, and
/// `tau` sends the `i`-th point of a cycle of `x` to the `i`-th point of the
/// matched cycle of `y`.
pub fn canonical_conjugator(x: &Permutation, y: &Permutation) -> Result<Option<Permutation>> {
    if x.degree() != y.degree() {
        return Err(Error::SizeMismatch(x.degree(), y.degree()));
    }
    let cx = x.canonical_cycles();
    let cy = y.canonical_cycles();
    if cx.len() != cy.len() || cx.iter().zip(&cy).any(|(a, b)| a.len() != b.len()) {
        return Ok(None);
    }
    let mut images = vec![0u32; x.degree()];
    for (a, b) in cx.iter().zip(&cy) {
        for (&i, &j) in a.iter().zip(b) {
            images[i as usize] = j;
        }
    }
    Ok(Some(Permutation { images }))
}

/// Sign of [`canonical_conjugator`], if `x` and `y` are conjugate in `S_n`.
pub fn conjugator_sign(x: &Permutation, y: &Permutation) -> Result<Option<i32>> {
    Ok(canonical_conjugator(x, y)?.map(|tau| tau.sign()))
}
