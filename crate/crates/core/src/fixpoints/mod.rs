//! The group `A(G)` of nonzero class functions with `f(x^k) = f(x)^k`.
//!
//! Such a function takes roots of unity as values, so it is stored by
//! exponents modulo the group exponent `N`: `f(c_j) = exp(2 pi i e_j / N)`.
//! Membership is then a linear congruence system over `Z/N`, which
//! [`solve_fixed_points`] reduces to diagonal form. [`oracle`] holds an
//! exhaustive search used to cross-check it.

pub mod oracle;
pub mod smith;
pub mod structure;

use std::collections::BTreeSet;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::analytic::series::psi_fixed_point_residual;
use crate::error::{Error, Result};
use crate::groups::{DirectProduct, Element, FiniteGroupModel, GroupData, MaterializedGroup};

pub use oracle::{brute_force_fixed_points, DEFAULT_GUARD};

/// Class function with root-of-unity values, `f(c_j) = exp(2 pi i exps[j] / modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicClassFunction {
    pub modulus: u64,
    #[serde(with = "exps_map")]
    pub exps: Vec<u64>,
}

/// `exps` is written as `{"0": e_0, "1": e_1, ...}`.
mod exps_map {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(exps: &[u64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(exps.iter().enumerate())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        let map = BTreeMap::<usize, u64>::deserialize(d)?;
        if map.keys().copied().ne(0..map.len()) {
            return Err(D::Error::custom("class ids must be 0..l without gaps"));
        }
        Ok(map.into_values().collect())
    }
}

impl CyclotomicClassFunction {
    pub fn new(modulus: u64, exps: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::ClassFunctionMismatch("modulus must be positive".into()));
        }
        let exps = exps.into_iter().map(|e| e % modulus).collect();
        Ok(CyclotomicClassFunction { modulus, exps })
    }

    /// The constant function 1 on `g`.
    pub fn one(g: &GroupData) -> Self {
        CyclotomicClassFunction {
            modulus: g.exponent(),
            exps: vec![0; g.class_count()],
        }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn value(&self, class: usize) -> Complex64 {
        let angle = 2.0 * std::f64::consts::PI * self.exps[class] as f64 / self.modulus as f64;
        Complex64::from_polar(1.0, angle)
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.len()).map(|j| self.value(j)).collect()
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus || self.len() != other.len() {
            return Err(Error::ClassFunctionMismatch(format!(
                "modulus/length {}/{} vs {}/{}",
                self.modulus,
                self.len(),
                other.modulus,
                other.len()
            )));
        }
        Ok(())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Ok(CyclotomicClassFunction {
            modulus: self.modulus,
            exps,
        })
    }

    /// Pointwise inverse (complex conjugate).
    pub fn inverse(&self) -> Self {
        let n = self.modulus;
        CyclotomicClassFunction {
            modulus: n,
            exps: self.exps.iter().map(|&e| (n - e) % n).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let n = self.modulus;
        CyclotomicClassFunction {
            modulus: n,
            exps: self
                .exps
                .iter()
                .map(|&e| (e as u128 * k as u128 % n as u128) as u64)
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Order under pointwise multiplication.
    pub fn order(&self) -> u64 {
        self.exps
            .iter()
            .fold(1u64, |acc, &e| acc.lcm(&(self.modulus / e.gcd(&self.modulus))))
    }

    /// Same values written over another modulus. Fails when some value is
    /// not an `m`-th root of unity.
    pub fn with_modulus(&self, m: u64) -> Result<Self> {
        let exps = self
            .exps
            .iter()
            .map(|&e| {
                let scaled = e as u128 * m as u128;
                if !scaled.is_multiple_of(self.modulus as u128) {
                    Err(Error::ClassFunctionMismatch(format!(
                        "exp({e}/{}) is not a {m}-th root of unity",
                        self.modulus
                    )))
                } else {
                    Ok((scaled / self.modulus as u128) as u64)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CyclotomicClassFunction { modulus: m, exps })
    }

    /// Whether this is an element of `A(g)`: `f(1) = 1`, `f(c_j)` is an
    /// `ord_j`-th root of unity and `f(c_j^k) = f(c_j)^k`.
    ///
    /// `k` only runs over `0..ord_j`: both sides are periodic in `k` with
    /// that period once the second condition holds.
    pub fn is_member(&self, g: &GroupData) -> bool {
        if self.modulus != g.exponent() || self.len() != g.class_count() {
            return false;
        }
        let n = self.modulus as u128;
        let table = g.power_table();
        if self.exps[g.identity_class()] != 0 {
            return false;
        }
        g.classes().iter().enumerate().all(|(j, c)| {
            let e = self.exps[j] as u128;
            (e * c.order as u128).is_multiple_of(n)
                && (0..c.order).all(|k| self.exps[table.get(j, k)] as u128 == k as u128 * e % n)
        })
    }
}

/// `A(G)` with invariant factors `d_1 | d_2 | ...` and one generator of
/// order `d_i` each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointGroup {
    pub group: FiniteGroupModel,
    pub invariant_factors: Vec<u64>,
    pub generators: Vec<CyclotomicClassFunction>,
    /// The zero function also satisfies `f(x^k) = f(x)^k` for `k >= 1`; it
    /// is kept out of the group.
    pub zero_solution: bool,
}

impl FixedPointGroup {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Every member, as `prod g_i^{a_i}` with the last coordinate varying
    /// fastest.
    pub fn elements(&self, g: &GroupData) -> Vec<CyclotomicClassFunction> {
        let mut out = vec![CyclotomicClassFunction::one(g)];
        for (gen, &d) in self.generators.iter().zip(&self.invariant_factors) {
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..d {
                    next.push(cur.clone());
                    cur = cur.mul(gen).expect("same shape");
                }
            }
            out = next;
        }
        out
    }
}

/// Constraint rows of the congruence system, deduplicated, over `Z/N`.
fn constraint_rows(g: &GroupData) -> Vec<Vec<u64>> {
    let n = g.exponent();
    let l = g.class_count();
    let table = g.power_table();
    let mut rows = BTreeSet::new();
    for (j, c) in g.classes().iter().enumerate() {
        let mut row = vec![0u64; l];
        row[j] = c.order % n;
        rows.insert(row);
        for k in 0..c.order {
            let d = table.get(j, k);
            let mut row = vec![0u64; l];
            row[d] = (row[d] + 1) % n;
            row[j] = (row[j] + n - k % n) % n;
            rows.insert(row);
        }
    }
    rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// Solve the congruence system for `A(g)`.
pub fn solve_fixed_points(g: &GroupData) -> FixedPointGroup {
    let n = g.exponent();
    let l = g.class_count();
    let rows = constraint_rows(g);
    let diag = smith::diagonalize_mod(&rows, l, n);
    let pieces: Vec<(u64, Vec<u64>)> = (0..l)
        .map(|c| {
            let d = diag.diagonal.get(c).copied().unwrap_or(0);
            let size = d.gcd(&n);
            let step = n / size;
            let gen = diag.q[c]
                .iter()
                .map(|&x| (x as u128 * step as u128 % n as u128) as u64)
                .collect();
            (size, gen)
        })
        .collect();
    let form = structure::invariant_form(&pieces, l, n);
    FixedPointGroup {
        group: g.model().clone(),
        invariant_factors: form.iter().map(|(d, _)| *d).collect(),
        generators: form
            .into_iter()
            .map(|(_, exps)| CyclotomicClassFunction { modulus: n, exps })
            .collect(),
        zero_solution: true,
    }
}

/// [`solve_fixed_points`] for a bare model, with the default order bound.
pub fn solve_model(model: &FiniteGroupModel) -> Result<FixedPointGroup> {
    Ok(solve_fixed_points(&GroupData::new(model.clone())?))
}

/// Two-sided check that `f` is a fixed point of `Psi_t`: the congruences
/// hold and the power series of `Psi_t(f)` equals the constant `f` through
/// degree `order` within `tol`.
pub fn is_fixed_point(g: &GroupData, f: &CyclotomicClassFunction, order: usize, tol: f64) -> bool {
    f.is_member(g) && is_series_fixed_point(g, &f.values(), order, tol)
}

/// Series half of [`is_fixed_point`], for arbitrary complex values.
pub fn is_series_fixed_point(g: &GroupData, f: &[Complex64], order: usize, tol: f64) -> bool {
    f.len() == g.class_count() && psi_fixed_point_residual(g, f, order) <= tol
}

/// A map between materialized groups, checked to be a homomorphism.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: GroupData,
    target: GroupData,
    source_elements: MaterializedGroup,
    /// Target class of the image of each source element.
    image_class: Vec<usize>,
}

impl GroupHom {
    pub fn from_fn<F>(source: &GroupData, target: &GroupData, bound: u128, map: F) -> Result<Self>
    where
        F: Fn(&Element) -> Element,
    {
        let src = source.materialize(bound)?;
        let tgt = target.materialize(bound)?;
        let images = src
            .elements()
            .iter()
            .map(|x| tgt.index_of(&map(x)))
            .collect::<Result<Vec<usize>>>()?;
        let (st, tt) = (src.table(), tgt.table());
        for a in 0..src.order() {
            for b in 0..src.order() {
                if images[st.mul(a, b)] != tt.mul(images[a], images[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "F({:?} * {:?}) differs from F({:?}) * F({:?})",
                        src.element(a),
                        src.element(b),
                        src.element(a),
                        src.element(b)
                    )));
                }
            }
        }
        let image_class = images.iter().map(|&i| tgt.class_of_index(i)).collect();
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            source_elements: src,
            image_class,
        })
    }

    pub fn identity(g: &GroupData, bound: u128) -> Result<Self> {
        Self::from_fn(g, g, bound, Element::clone)
    }

    pub fn source(&self) -> &GroupData {
        &self.source
    }

    pub fn target(&self) -> &GroupData {
        &self.target
    }

    /// Target class of `F(c_j)` for each source class `j`.
    pub fn class_map(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.source.class_count()];
        for (i, &tc) in self.image_class.iter().enumerate() {
            let sc = self.source_elements.class_of_index(i);
            if out[sc] == usize::MAX {
                out[sc] = tc;
            }
        }
        out
    }
}

/// `(A(F) a')(x) = a'(F(x))`.
pub fn pullback(hom: &GroupHom, a: &CyclotomicClassFunction) -> Result<CyclotomicClassFunction> {
    let target = hom.target();
    if a.modulus != target.exponent() || a.len() != target.class_count() {
        return Err(Error::ClassFunctionMismatch(format!(
            "expected modulus {} over {} classes",
            target.exponent(),
            target.class_count()
        )));
    }
    let n = hom.source().exponent();
    let exps = hom.class_map().into_iter().map(|tc| a.exps[tc]).collect::<Vec<_>>();
    // Values at images of source elements have orders dividing N, so the
    // rescaling is exact for members of A(G').
    CyclotomicClassFunction {
        modulus: a.modulus,
        exps,
    }
    .with_modulus(n)
}

/// `G x H` for groups of coprime order, with the data needed to split
/// members of `A(G x H)`.
#[derive(Clone, Debug)]
pub struct CoprimeProduct {
    pub left: GroupData,
    pub right: GroupData,
    pub product: DirectProduct,
    pub data: GroupData,
}

impl CoprimeProduct {
    pub fn new(left: &GroupData, right: &GroupData, bound: u128) -> Result<Self> {
        let (a, b) = (left.order(), right.order());
        if a.gcd(&b) != 1 {
            return Err(Error::NotCoprimeOrders(a, b));
        }
        let product = DirectProduct::new(left, right, bound)?;
        let data = GroupData::with_bound(product.model.clone(), bound)?;
        Ok(CoprimeProduct {
            left: left.clone(),
            right: right.clone(),
            product,
            data,
        })
    }

    /// Product class of `(x, 1)` for each class of the left factor.
    fn left_embedding(&self) -> Vec<usize> {
        let id = self.product.right.identity();
        embed(
            &self.product.left,
            self.left.class_count(),
            |i| self.product.pair_id(i, id),
            &self.data,
        )
    }

    fn right_embedding(&self) -> Vec<usize> {
        let id = self.product.left.identity();
        embed(
            &self.product.right,
            self.right.class_count(),
            |i| self.product.pair_id(id, i),
            &self.data,
        )
    }

    /// Product class containing `(x, y)` for materialized indices `x`, `y`.
    pub fn pair_class(&self, x: usize, y: usize) -> usize {
        self.data
            .class_of(&Element::Id(self.product.pair_id(x, y)))
            .expect("pair ids index the product table")
    }
}

fn embed(m: &MaterializedGroup, classes: usize, id: impl Fn(usize) -> u64, data: &GroupData) -> Vec<usize> {
    let mut out = vec![usize::MAX; classes];
    for i in 0..m.order() {
        let c = m.class_of_index(i);
        if out[c] == usize::MAX {
            out[c] = data
                .class_of(&Element::Id(id(i)))
                .expect("pair ids index the product table");
        }
    }
    out
}

/// Split `a` in `A(G x H)` as `a(g, h) = a_1(g) a_2(h)` with
/// `a_1(g) = a(g, 1)` and `a_2(h) = a(1, h)`.
pub fn product_split(
    p: &CoprimeProduct,
    a: &CyclotomicClassFunction,
) -> Result<(CyclotomicClassFunction, CyclotomicClassFunction)> {
    if a.modulus != p.data.exponent() || a.len() != p.data.class_count() {
        return Err(Error::ClassFunctionMismatch(
            "not a class function on the product".into(),
        ));
    }
    let pick = |emb: Vec<usize>, g: &GroupData| {
        CyclotomicClassFunction {
            modulus: a.modulus,
            exps: emb.into_iter().map(|c| a.exps[c]).collect(),
        }
        .with_modulus(g.exponent())
    };
    Ok((pick(p.left_embedding(), &p.left)?, pick(p.right_embedding(), &p.right)?))
}

/// Solver and oracle results side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheck {
    pub solver: Vec<u64>,
    pub oracle: Option<Vec<u64>>,
}

impl CrossCheck {
    pub fn consistent(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| *o == self.solver)
    }
}

/// Run the solver and, when the search space fits under `guard`, the oracle.
pub fn cross_check(g: &GroupData, guard: u128) -> CrossCheck {
    CrossCheck {
        solver: solve_fixed_points(g).invariant_factors,
        oracle: brute_force_fixed_points(g, guard).ok().map(|r| r.invariant_factors),
    }
}
