//! Finite-group models and their class-level data.
//!
//! Symmetric and alternating groups are handled through cycle types and never
//! enumerated for class-level work, so they stay cheap up to `n` around 20.
//! Abelian groups and explicit Cayley tables are enumerated element by
//! element, subject to an order bound.

pub mod alternating;
pub mod permutation;
pub mod table;

use std::collections::HashMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

pub use alternating::{an_power_action, an_split_test, split_side, SplitTag};
pub use permutation::{canonical_conjugator, conjugator_sign, Permutation};
pub use table::CayleyTable;

use crate::error::{Error, Result};
use crate::partitions::{all_partitions, factorial, Partition};

/// Default bound on the order of groups that are enumerated element-wise.
pub const DEFAULT_BOUND: u128 = 10_000;

/// Largest `n` accepted for symmetric and alternating models.
pub const MAX_DEGREE: u32 = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FiniteGroupModel {
    Symmetric {
        n: u32,
    },
    Alternating {
        n: u32,
    },
    /// Product of cyclic groups `Z/f_1 x ... x Z/f_k`.
    Abelian {
        factors: Vec<u64>,
    },
    /// `mul[i][j]` is the id of `elements[i] * elements[j]`.
    Table {
        elements: Vec<u64>,
        mul: Vec<Vec<u64>>,
        identity: u64,
    },
}

impl FiniteGroupModel {
    pub fn cyclic(m: u64) -> Self {
        FiniteGroupModel::Abelian { factors: vec![m] }
    }

    /// Dihedral group of order `2m` as a Cayley table; element `i + m*j` is
    /// `r^i s^j`.
    pub fn dihedral(m: u64) -> Self {
        let order = 2 * m;
        let mut mul = Vec::with_capacity(order as usize);
        for x in 0..order {
            let (a, b) = (x % m, x / m);
            let mut row = Vec::with_capacity(order as usize);
            for y in 0..order {
                let (c, d) = (y % m, y / m);
                let rot = if b == 0 { (a + c) % m } else { (a + m - c) % m };
                row.push(rot + m * ((b + d) % 2));
            }
            mul.push(row);
        }
        FiniteGroupModel::Table {
            elements: (0..order).collect(),
            mul,
            identity: 0,
        }
    }

    /// Quaternion group `Q_8` as a Cayley table.
    pub fn quaternion() -> Self {
        // Elements: 0=1, 1=-1, 2=i, 3=-i, 4=j, 5=-j, 6=k, 7=-k.
        let unit = |x: u64| -> (u64, bool) { (x / 2, x % 2 == 1) };
        // Multiplication of basis units 1,i,j,k as (unit, negated).
        let basis = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let mul = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (ux, nx) = unit(x);
                        let (uy, ny) = unit(y);
                        let (u, n) = basis[ux as usize][uy as usize];
                        2 * u + u64::from(n ^ nx ^ ny)
                    })
                    .collect()
            })
            .collect();
        FiniteGroupModel::Table {
            elements: (0..8).collect(),
            mul,
            identity: 0,
        }
    }

    pub fn order(&self) -> u128 {
        match self {
            FiniteGroupModel::Symmetric { n } => factorial(*n),
            FiniteGroupModel::Alternating { n } => (factorial(*n) / 2).max(1),
            FiniteGroupModel::Abelian { factors } => factors.iter().map(|&f| f as u128).product(),
            FiniteGroupModel::Table { elements, .. } => elements.len() as u128,
        }
    }

    fn validate(&self, bound: u128) -> Result<()> {
        match self {
            FiniteGroupModel::Symmetric { n } | FiniteGroupModel::Alternating { n } => {
                if *n == 0 || *n > MAX_DEGREE {
                    return Err(Error::InvalidGroup(format!(
                        "degree must be in 1..={MAX_DEGREE}, got {n}"
                    )));
                }
            }
            FiniteGroupModel::Abelian { factors } => {
                if let Some(f) = factors.iter().find(|&&f| f < 2) {
                    return Err(Error::InvalidGroup(format!("abelian factor {f} is below 2")));
                }
                let order = factors
                    .iter()
                    .try_fold(1u128, |acc, &f| acc.checked_mul(f as u128))
                    .ok_or_else(|| Error::InvalidGroup("abelian order overflows".into()))?;
                if order > bound {
                    return Err(Error::BoundExceeded { order, bound });
                }
            }
            FiniteGroupModel::Table { elements, .. } => {
                let order = elements.len() as u128;
                if order > bound {
                    return Err(Error::BoundExceeded { order, bound });
                }
            }
        }
        Ok(())
    }
}

/// What identifies a conjugacy class within its model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassDescriptor {
    Partition(Partition),
    Alternating {
        partition: Partition,
        split: SplitTag,
    },
    /// Coordinates of the single member of an abelian-group class.
    Tuple(Vec<u64>),
    /// Id of the least member (the identity for the identity class).
    Element(u64),
}

impl std::fmt::Display for ClassDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClassDescriptor::Partition(p) => write!(f, "{p}"),
            ClassDescriptor::Alternating { partition, split } => match split {
                SplitTag::Plus => write!(f, "{partition}+"),
                SplitTag::Minus => write!(f, "{partition}-"),
                SplitTag::Nonsplit => write!(f, "{partition}"),
            },
            ClassDescriptor::Tuple(t) => write!(f, "{t:?}"),
            ClassDescriptor::Element(e) => write!(f, "[{e}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub id: usize,
    pub descriptor: ClassDescriptor,
    pub size: u128,
    /// Common order of the members.
    pub order: u64,
}

/// `get(j, r)` is the class of `x^r` for `x` in class `j`.
///
/// Row `j` is stored for `r` in `0..ord_j` only, since the power class is
/// periodic in `r` with period `ord_j`; the nominal period of the table is
/// the group exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPowerTable {
    period: u64,
    rows: Vec<Vec<usize>>,
}

impl ClassPowerTable {
    pub fn class_count(&self) -> usize {
        self.rows.len()
    }

    /// The group exponent `L`.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn get(&self, class: usize, r: u64) -> usize {
        let row = &self.rows[class];
        row[(r % row.len() as u64) as usize]
    }

    /// Power class for a possibly negative exponent.
    pub fn get_signed(&self, class: usize, r: i64) -> usize {
        let row = &self.rows[class];
        row[r.rem_euclid(row.len() as i64) as usize]
    }

    /// `d[j][0..ord_j]`.
    pub fn row(&self, class: usize) -> &[usize] {
        &self.rows[class]
    }
}

/// A group element in the representation native to its model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Perm(Permutation),
    Tuple(Vec<u64>),
    Id(u64),
}

#[derive(Clone, Debug)]
enum ModelIndex {
    Symmetric(HashMap<Partition, usize>),
    Alternating(HashMap<(Partition, SplitTag), usize>),
    Abelian,
    Table {
        table: CayleyTable,
        label_index: HashMap<u64, usize>,
        class_of: Vec<usize>,
    },
}

/// A group model together with its classes and class power table.
#[derive(Clone, Debug)]
pub struct GroupData {
    model: FiniteGroupModel,
    classes: Vec<ConjClass>,
    power: ClassPowerTable,
    index: ModelIndex,
}

impl GroupData {
    pub fn new(model: FiniteGroupModel) -> Result<Self> {
        Self::with_bound(model, DEFAULT_BOUND)
    }

    pub fn with_bound(model: FiniteGroupModel, bound: u128) -> Result<Self> {
        model.validate(bound)?;
        let (classes, index) = build_classes(&model)?;
        let power = build_power_table(&model, &classes, &index);
        Ok(GroupData {
            model,
            classes,
            power,
            index,
        })
    }

    pub fn model(&self) -> &FiniteGroupModel {
        &self.model
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn power_table(&self) -> &ClassPowerTable {
        &self.power
    }

    pub fn order(&self) -> u128 {
        self.model.order()
    }

    /// Least common multiple of the class orders.
    pub fn exponent(&self) -> u64 {
        self.power.period
    }

    /// The identity class always has id 0.
    pub fn identity_class(&self) -> usize {
        0
    }

    pub fn class_orders(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.order).collect()
    }

    pub fn class_of(&self, x: &Element) -> Result<usize> {
        match (&self.index, x) {
            (ModelIndex::Symmetric(idx), Element::Perm(p)) => {
                self.check_degree(p)?;
                Ok(idx[&p.cycle_type()])
            }
            (ModelIndex::Alternating(idx), Element::Perm(p)) => {
                self.check_degree(p)?;
                if p.sign() < 0 {
                    return Err(Error::InvalidElement(format!("{p} is odd")));
                }
                Ok(idx[&(p.cycle_type(), split_side(p))])
            }
            (ModelIndex::Abelian, Element::Tuple(t)) => self.abelian_index(t),
            (
                ModelIndex::Table {
                    label_index, class_of, ..
                },
                Element::Id(id),
            ) => label_index
                .get(id)
                .map(|&i| class_of[i])
                .ok_or_else(|| Error::InvalidElement(format!("unknown id {id}"))),
            _ => Err(Error::InvalidElement(format!("{x:?} does not match the model"))),
        }
    }

    pub fn element_order(&self, x: &Element) -> Result<u64> {
        let class = self.class_of(x)?;
        Ok(self.classes[class].order)
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        let n = match self.model {
            FiniteGroupModel::Symmetric { n } | FiniteGroupModel::Alternating { n } => n as usize,
            _ => unreachable!(),
        };
        if p.degree() != n {
            return Err(Error::SizeMismatch(p.degree(), n));
        }
        Ok(())
    }

    fn abelian_index(&self, t: &[u64]) -> Result<usize> {
        let FiniteGroupModel::Abelian { factors } = &self.model else {
            unreachable!()
        };
        if t.len() != factors.len() || t.iter().zip(factors).any(|(x, f)| x >= f) {
            return Err(Error::InvalidElement(format!("{t:?} is not in Z/{factors:?}")));
        }
        Ok(t.iter()
            .zip(factors)
            .fold(0usize, |acc, (&x, &f)| acc * f as usize + x as usize))
    }

    /// Enumerate every element and the full multiplication table.
    pub fn materialize(&self, bound: u128) -> Result<MaterializedGroup> {
        let order = self.order();
        if order > bound {
            return Err(Error::BoundExceeded { order, bound });
        }
        let elements: Vec<Element> = match &self.model {
            FiniteGroupModel::Symmetric { n } => all_permutations(*n as usize).into_iter().map(Element::Perm).collect(),
            FiniteGroupModel::Alternating { n } => all_permutations(*n as usize)
                .into_iter()
                .filter(|p| p.sign() > 0)
                .map(Element::Perm)
                .collect(),
            FiniteGroupModel::Abelian { factors } => {
                let mut out = Vec::with_capacity(order as usize);
                for i in 0..order as u64 {
                    out.push(Element::Tuple(abelian_tuple(factors, i)));
                }
                out
            }
            FiniteGroupModel::Table { elements, .. } => elements.iter().map(|&e| Element::Id(e)).collect(),
        };
        let n = elements.len();
        let index: HashMap<Element, usize> = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let element_class = elements.iter().map(|e| self.class_of(e)).collect::<Result<Vec<_>>>()?;
        let table = match (&self.model, &self.index) {
            (_, ModelIndex::Table { table, .. }) => table.clone(),
            (model, _) => {
                let mut mul = Vec::with_capacity(n * n);
                for a in &elements {
                    for b in &elements {
                        let c = multiply(model, a, b);
                        mul.push(index[&c] as u32);
                    }
                }
                let identity = index[&identity_element(model)];
                CayleyTable::from_indices(n, mul, identity)?
            }
        };
        Ok(MaterializedGroup {
            elements,
            index,
            table,
            element_class,
        })
    }
}

fn abelian_tuple(factors: &[u64], mut i: u64) -> Vec<u64> {
    let mut t = vec![0; factors.len()];
    for (k, &f) in factors.iter().enumerate().rev() {
        t[k] = i % f;
        i /= f;
    }
    t
}

fn identity_element(model: &FiniteGroupModel) -> Element {
    match model {
        FiniteGroupModel::Symmetric { n } | FiniteGroupModel::Alternating { n } => {
            Element::Perm(Permutation::identity(*n as usize))
        }
        FiniteGroupModel::Abelian { factors } => Element::Tuple(vec![0; factors.len()]),
        FiniteGroupModel::Table { identity, .. } => Element::Id(*identity),
    }
}

fn multiply(model: &FiniteGroupModel, a: &Element, b: &Element) -> Element {
    match (model, a, b) {
        (_, Element::Perm(x), Element::Perm(y)) => Element::Perm(x.compose(y)),
        (FiniteGroupModel::Abelian { factors }, Element::Tuple(x), Element::Tuple(y)) => {
            Element::Tuple(x.iter().zip(y).zip(factors).map(|((p, q), f)| (p + q) % f).collect())
        }
        _ => unreachable!("tables multiply through their index"),
    }
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(cur: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Permutation>) {
        if cur.len() == used.len() {
            out.push(Permutation::new(cur.clone()).expect("bijective"));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i as u32);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

fn build_classes(model: &FiniteGroupModel) -> Result<(Vec<ConjClass>, ModelIndex)> {
    let mut classes = Vec::new();
    let index = match model {
        FiniteGroupModel::Symmetric { n } => {
            let mut idx = HashMap::new();
            for p in all_partitions(*n) {
                let id = classes.len();
                idx.insert(p.clone(), id);
                classes.push(ConjClass {
                    id,
                    size: p.class_size_sn(),
                    order: p.order(),
                    descriptor: ClassDescriptor::Partition(p),
                });
            }
            ModelIndex::Symmetric(idx)
        }
        FiniteGroupModel::Alternating { n } => {
            let mut idx = HashMap::new();
            for p in all_partitions(*n).into_iter().filter(Partition::is_even) {
                let size = p.class_size_sn();
                let tags: &[SplitTag] = if alternating::splits_in_an(&p) {
                    &[SplitTag::Plus, SplitTag::Minus]
                } else {
                    &[SplitTag::Nonsplit]
                };
                for &split in tags {
                    let id = classes.len();
                    idx.insert((p.clone(), split), id);
                    classes.push(ConjClass {
                        id,
                        size: if split == SplitTag::Nonsplit { size } else { size / 2 },
                        order: p.order(),
                        descriptor: ClassDescriptor::Alternating {
                            partition: p.clone(),
                            split,
                        },
                    });
                }
            }
            ModelIndex::Alternating(idx)
        }
        FiniteGroupModel::Abelian { factors } => {
            let order: u64 = factors.iter().product();
            for i in 0..order {
                let t = abelian_tuple(factors, i);
                let ord = t
                    .iter()
                    .zip(factors)
                    .fold(1u64, |acc, (&x, &f)| acc.lcm(&(f / x.gcd(&f))));
                classes.push(ConjClass {
                    id: i as usize,
                    size: 1,
                    order: ord,
                    descriptor: ClassDescriptor::Tuple(t),
                });
            }
            ModelIndex::Abelian
        }
        FiniteGroupModel::Table {
            elements,
            mul,
            identity,
        } => {
            let table = CayleyTable::from_labels(elements, mul, *identity)?;
            let (class_of, members) = table.conjugacy_classes();
            for (id, m) in members.iter().enumerate() {
                classes.push(ConjClass {
                    id,
                    size: m.len() as u128,
                    order: table.element_order(m[0]),
                    descriptor: ClassDescriptor::Element(elements[m[0]]),
                });
            }
            let label_index = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
            ModelIndex::Table {
                table,
                label_index,
                class_of,
            }
        }
    };
    Ok((classes, index))
}

fn build_power_table(model: &FiniteGroupModel, classes: &[ConjClass], index: &ModelIndex) -> ClassPowerTable {
    let period = classes.iter().fold(1u64, |acc, c| acc.lcm(&c.order));
    let rows = classes
        .iter()
        .map(|c| {
            (0..c.order)
                .map(|r| match (index, &c.descriptor) {
                    (ModelIndex::Symmetric(idx), ClassDescriptor::Partition(p)) => idx[&p.power(r)],
                    (ModelIndex::Alternating(idx), ClassDescriptor::Alternating { partition, split }) => {
                        let q = partition.power(r);
                        let tag = if *split == SplitTag::Nonsplit || !alternating::splits_in_an(&q) {
                            SplitTag::Nonsplit
                        } else {
                            let action = an_power_action(partition, r as i64)
                                .expect("a split power of a split class comes from a coprime exponent");
                            split.apply(action)
                        };
                        idx[&(q, tag)]
                    }
                    (ModelIndex::Abelian, ClassDescriptor::Tuple(t)) => {
                        let FiniteGroupModel::Abelian { factors } = model else {
                            unreachable!()
                        };
                        t.iter()
                            .zip(factors)
                            .fold(0usize, |acc, (&x, &f)| acc * f as usize + ((x * r) % f) as usize)
                    }
                    (
                        ModelIndex::Table {
                            table,
                            label_index,
                            class_of,
                        },
                        ClassDescriptor::Element(e),
                    ) => class_of[table.pow(label_index[e], r)],
                    _ => unreachable!("descriptor matches model"),
                })
                .collect()
        })
        .collect();
    ClassPowerTable { period, rows }
}

/// Conjugacy classes of a model, using [`DEFAULT_BOUND`] for enumerated groups.
pub fn conjugacy_classes(g: &FiniteGroupModel) -> Result<Vec<ConjClass>> {
    Ok(GroupData::new(g.clone())?.classes)
}

/// Class power table for classes produced by [`conjugacy_classes`].
pub fn class_power_table(g: &FiniteGroupModel, classes: &[ConjClass]) -> Result<ClassPowerTable> {
    g.validate(DEFAULT_BOUND)?;
    let (own, index) = build_classes(g)?;
    if own != classes {
        return Err(Error::InvalidGroup("class list does not belong to this model".into()));
    }
    Ok(build_power_table(g, classes, &index))
}

pub fn element_order(g: &GroupData, x: &Element) -> Result<u64> {
    g.element_order(x)
}

/// `(psi^k f)(c_j) = f(c_j^k)`.
pub fn adams_pullback<T: Clone>(g: &GroupData, f: &[T], k: u64) -> Vec<T> {
    assert_eq!(f.len(), g.class_count(), "class function has wrong dimension");
    (0..g.class_count()).map(|j| f[g.power.get(j, k)].clone()).collect()
}

/// Every element of a group with its multiplication table and classes.
#[derive(Clone, Debug)]
pub struct MaterializedGroup {
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    table: CayleyTable,
    element_class: Vec<usize>,
}

impl MaterializedGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn index_of(&self, x: &Element) -> Result<usize> {
        self.index
            .get(x)
            .copied()
            .ok_or_else(|| Error::InvalidElement(format!("{x:?}")))
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn class_of_index(&self, i: usize) -> usize {
        self.element_class[i]
    }

    pub fn identity(&self) -> usize {
        self.table.identity()
    }
}

/// `G x H` as a Cayley table; element `(g, h)` has id `g * |H| + h`
/// in terms of the factors' materialized indices.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub model: FiniteGroupModel,
    pub left: MaterializedGroup,
    pub right: MaterializedGroup,
}

impl DirectProduct {
    pub fn new(g: &GroupData, h: &GroupData, bound: u128) -> Result<Self> {
        let order = g.order() * h.order();
        if order > bound {
            return Err(Error::BoundExceeded { order, bound });
        }
        let left = g.materialize(bound)?;
        let right = h.materialize(bound)?;
        let (m, k) = (left.order(), right.order());
        let mut mul = Vec::with_capacity(m * k);
        for a in 0..m * k {
            let mut row = Vec::with_capacity(m * k);
            for b in 0..m * k {
                let x = left.table.mul(a / k, b / k);
                let y = right.table.mul(a % k, b % k);
                row.push((x * k + y) as u64);
            }
            mul.push(row);
        }
        let identity = (left.identity() * k + right.identity()) as u64;
        Ok(DirectProduct {
            model: FiniteGroupModel::Table {
                elements: (0..(m * k) as u64).collect(),
                mul,
                identity,
            },
            left,
            right,
        })
    }

    pub fn pair_id(&self, g: usize, h: usize) -> u64 {
        (g * self.right.order() + h) as u64
    }
}
