//! Integer partitions as cycle types.
//!
//! A [`Partition`] labels a conjugacy class of the symmetric group by the
//! lengths of the disjoint cycles of its members. This module holds the
//! arithmetic that only depends on the cycle type: power maps, orders,
//! square detection, and the restricted partition families whose sizes
//! give the fixed-point groups of `S_n` and `A_n`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiset of positive integers, stored non-increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "parts must be positive, got {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// The partition `{1^n}` (cycle type of the identity).
    pub fn ones(n: u32) -> Self {
        Partition {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Least common multiple of the parts.
    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1u64, |acc, &p| acc.lcm(&(p as u64)))
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn even_part_count(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 0).count()
    }

    /// True when members are even permutations.
    pub fn is_even(&self) -> bool {
        self.even_part_count().is_multiple_of(2)
    }

    /// All parts odd and pairwise distinct.
    pub fn has_distinct_odd_parts(&self) -> bool {
        self.parts.iter().all(|&p| p % 2 == 1) && self.parts.windows(2).all(|w| w[0] != w[1])
    }

    /// Cycle type of `x^r` for `x` of this cycle type.
    ///
    /// A cycle of length `l` raised to the `r`-th power falls apart into
    /// `gcd(r, l)` cycles of length `l / gcd(r, l)`; `r = 0` gives the identity.
    pub fn power(&self, r: u64) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len());
        for &l in &self.parts {
            let l64 = l as u64;
            let g = if r == 0 { l64 } else { r.gcd(&l64) };
            let len = (l64 / g) as u32;
            parts.extend(std::iter::repeat_n(len, g as usize));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Whether a permutation of this cycle type is a square in `S_n`.
    ///
    /// Odd cycles square to cycles of the same length and a `2k`-cycle
    /// squares to two `k`-cycles, so the squares are exactly the cycle types
    /// in which every even part has even multiplicity.
    pub fn is_square_sn(&self) -> bool {
        self.multiplicities()
            .iter()
            .all(|(&part, &mult)| part % 2 == 1 || mult % 2 == 0)
    }

    /// Order of the centralizer of a member in `S_n`: `prod_i i^{m_i} m_i!`.
    pub fn centralizer_order(&self) -> u128 {
        self.multiplicities()
            .iter()
            .map(|(&part, &mult)| (part as u128).pow(mult) * factorial(mult))
            .product()
    }

    /// Size of the `S_n` conjugacy class.
    pub fn class_size_sn(&self) -> u128 {
        factorial(self.n()) / self.centralizer_order()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Every partition of `n`, sorted lexicographically on the non-increasing
/// parts list. `{1^n}` comes first and `{n}` last.
pub fn all_partitions(n: u32) -> Vec<Partition> {
    fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Partitions of `n` whose order is a positive power of two: every part is
/// a power of two and at least one part exceeds 1.
pub fn enum_p2star(n: u32) -> Vec<Partition> {
    all_partitions(n)
        .into_iter()
        .filter(|p| p.parts.iter().all(|x| x.is_power_of_two()) && p.parts[0] > 1)
        .collect()
}

/// Members of [`enum_p2star`] in which some part greater than 1 occurs an
/// odd number of times.
///
/// Multiplicity of the part 1 is ignored: `{2,2,1}` has a single 1 yet is
/// the square of `{4,1}`, so counting it would break the characterisation of
/// non-squares.
pub fn enum_p2star_odd(n: u32) -> Vec<Partition> {
    enum_p2star(n)
        .into_iter()
        .filter(|p| {
            p.multiplicities()
                .iter()
                .any(|(&part, &mult)| part > 1 && mult % 2 == 1)
        })
        .collect()
}

/// Members of [`enum_p2star_odd`] with an even number of even parts, i.e.
/// those that are classes of `A_n`.
pub fn enum_p2star_odd_bar(n: u32) -> Vec<Partition> {
    enum_p2star_odd(n).into_iter().filter(Partition::is_even).collect()
}

/// Effect of a power map on a split pair `{C_-, C_+}` of `A_n` classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerAction {
    Identity,
    Exchange,
}

impl PowerAction {
    pub fn from_sign(sign: i32) -> Self {
        if sign > 0 {
            PowerAction::Identity
        } else {
            PowerAction::Exchange
        }
    }

    pub fn compose(self, other: PowerAction) -> PowerAction {
        if self == other {
            PowerAction::Identity
        } else {
            PowerAction::Exchange
        }
    }
}

/// Action of the square map on a split class, read off from its cycle type.
///
/// Parts are written `2 m_i + 1`; with `m = sum m_i (m_i + 1) / 2` the square
/// map fixes both halves when `m` is even and swaps them when `m` is odd.
pub fn split_square_sign(p: &Partition) -> Result<PowerAction> {
    crate::groups::an_split_test(p).and_then(|split| if split { Ok(()) } else { Err(Error::NotSplit(p.clone())) })?;
    let m: u64 = p
        .parts
        .iter()
        .map(|&part| {
            let mi = (part as u64 - 1) / 2;
            mi * (mi + 1) / 2
        })
        .sum();
    Ok(if m.is_multiple_of(2) {
        PowerAction::Identity
    } else {
        PowerAction::Exchange
    })
}

/// Representation of `n` as a sum of distinct powers of three.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreeAdic {
    /// Exponents `k_1 < ... < k_s` with `n = sum 3^{k_i}`.
    pub exponents: Vec<u32>,
}

impl ThreeAdic {
    pub fn exponent_sum(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn exponent_sum_is_odd(&self) -> bool {
        self.exponent_sum() % 2 == 1
    }

    /// The partition `{3^{k_s}, ..., 3^{k_1}}` of `n`.
    pub fn partition(&self) -> Partition {
        let parts = self.exponents.iter().map(|&k| 3u32.pow(k)).collect();
        Partition::new(parts).expect("powers of three are positive")
    }
}

/// `None` when some base-3 digit of `n` is 2.
pub fn three_adic_decomposition(n: u32) -> Option<ThreeAdic> {
    let mut exponents = Vec::new();
    let mut rest = n;
    let mut k = 0;
    while rest > 0 {
        match rest % 3 {
            0 => {}
            1 => exponents.push(k),
            _ => return None,
        }
        rest /= 3;
        k += 1;
    }
    Some(ThreeAdic { exponents })
}
