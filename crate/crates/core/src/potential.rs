//! Third derivatives of the quantum potential, the big quantum product and
//! the associativity identities it must satisfy.
//!
//! The potential is split as `Psi + Psi' + Gamma`: the cubic classical part,
//! the single four-point degree zero term `lambda y3^3 y4 / 6`, and the
//! generating function of the core invariants
//! `Gamma = sum_{d >= 1} Q^d I_d(n2, n3, n4) y2^n2/n2! y3^n3/n3! y4^n4/n4!`.
//! Only `y2, y3, y4` and `Q = q exp(y1)` appear in the series ring; a `y0`
//! derivative annihilates every non-classical term.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use crate::dimension::admissible_n2;
use crate::engine::invariant;
use crate::error::{EngineError, Result};
use crate::general::{lambda, three_point};
use crate::key::{GeometryConfig, InvariantKey};
use crate::memo::MemoStore;
use crate::rational::{factorial, frac, int, Rational};
use crate::series::{Monomial, Series, TruncationOrder};

/// One of the basis classes `T0..T4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisIndex(u8);

impl BasisIndex {
    pub const ALL: [BasisIndex; 5] = [
        BasisIndex(0),
        BasisIndex(1),
        BasisIndex(2),
        BasisIndex(3),
        BasisIndex(4),
    ];

    pub fn new(value: u8) -> Result<Self> {
        if value > 4 {
            return Err(EngineError::InvalidInput(format!(
                "basis index {value} out of range 0..=4"
            )));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.0)
    }
}

/// Inverse of the intersection pairing on the inertia stack, in the basis
/// `T0..T4`. The 2's come from integrating over the gerbe above `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    g: [[i64; 5]; 5],
}

impl Default for PairingMatrix {
    fn default() -> Self {
        Self::new()
    }
}

impl PairingMatrix {
    pub fn new() -> Self {
        let mut g = [[0; 5]; 5];
        g[0][2] = 1;
        g[2][0] = 1;
        g[1][1] = 1;
        g[3][4] = 2;
        g[4][3] = 2;
        Self { g }
    }

    pub fn entry(&self, e: usize, f: usize) -> Rational {
        int(self.g[e][f])
    }

    pub fn is_symmetric(&self) -> bool {
        (0..5).all(|i| (0..5).all(|j| self.g[i][j] == self.g[j][i]))
    }

    /// Exact determinant by cofactor expansion.
    pub fn determinant(&self) -> i64 {
        fn det(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|c| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|row| {
                            row.iter()
                                .enumerate()
                                .filter(|(j, _)| *j != c)
                                .map(|(_, v)| *v)
                                .collect()
                        })
                        .collect();
                    let sign = if c % 2 == 0 { 1 } else { -1 };
                    sign * m[0][c] * det(&minor)
                })
                .sum()
        }
        let rows: Vec<Vec<i64>> = self.g.iter().map(|r| r.to_vec()).collect();
        det(&rows)
    }
}

/// An element of the free module on `T0..T4` over the series ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumElement {
    components: [Series; 5],
}

impl QuantumElement {
    pub fn zero(order: TruncationOrder) -> Self {
        Self {
            components: std::array::from_fn(|_| Series::zero(order)),
        }
    }

    pub fn basis(i: BasisIndex, order: TruncationOrder) -> Self {
        let mut out = Self::zero(order);
        out.components[i.value()] = Series::constant(order, Rational::one());
        out
    }

    pub fn from_components(components: [Series; 5]) -> Result<Self> {
        let order = components[0].order();
        if let Some(bad) = components.iter().find(|c| c.order() != order) {
            return Err(EngineError::TruncationMismatch(
                order.to_string(),
                bad.order().to_string(),
            ));
        }
        Ok(Self { components })
    }

    pub fn order(&self) -> TruncationOrder {
        self.components[0].order()
    }

    pub fn component(&self, i: BasisIndex) -> &Series {
        &self.components[i.value()]
    }

    pub fn components(&self) -> &[Series; 5] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Series::is_zero)
    }

    pub fn sub(&self, other: &QuantumElement) -> QuantumElement {
        Self {
            components: std::array::from_fn(|i| &self.components[i] - &other.components[i]),
        }
    }

    fn add_scaled(&mut self, factor: &Series, element: &QuantumElement) {
        for (mine, theirs) in self.components.iter_mut().zip(&element.components) {
            if !theirs.is_zero() {
                *mine = &*mine + &(factor * theirs);
            }
        }
    }

    /// First nonzero coefficient, scanning components in order.
    pub fn first_nonzero(&self) -> Option<(BasisIndex, Monomial, Rational)> {
        self.components.iter().enumerate().find_map(|(i, s)| {
            s.terms()
                .next()
                .map(|(m, c)| (BasisIndex(i as u8), *m, c.clone()))
        })
    }
}

/// Counts of each index among a triple of basis indices.
fn index_counts(indices: [BasisIndex; 3]) -> [u32; 5] {
    let mut counts = [0; 5];
    for i in indices {
        counts[i.value()] += 1;
    }
    counts
}

/// `Psi_ijk + Psi'_ijk`: the degree zero three-point constant plus the
/// derivative of `lambda y3^3 y4 / 6`.
pub fn classical_third_derivative(
    cfg: GeometryConfig,
    i: BasisIndex,
    j: BasisIndex,
    k: BasisIndex,
    order: TruncationOrder,
) -> Series {
    let mut out = Series::constant(order, three_point(cfg, [i.value(), j.value(), k.value()]));
    let counts = index_counts([i, j, k]);
    if counts[0] + counts[1] + counts[2] == 0 && counts[3] <= 3 && counts[4] <= 1 {
        // d^a/dy3^a d^b/dy4^b of y3^3 y4 is 3!/(3-a)! y3^(3-a) y4^(1-b)
        let falling = (3 - counts[3] + 1..=3).product::<u32>() as i64;
        let c = lambda() * frac(falling, 6);
        out.add_term(Monomial::new(0, 0, 3 - counts[3], 1 - counts[4]), c);
    }
    out
}

/// `Gamma_ijk` truncated at `order`. The coefficient of `Q^d y^m` is
/// `d^(#1's) I_d(m + a) / (m2! m3! m4!)` where `a` counts the indices 2, 3, 4.
pub fn gamma_third_derivative(
    store: &MemoStore,
    cfg: GeometryConfig,
    i: BasisIndex,
    j: BasisIndex,
    k: BasisIndex,
    order: TruncationOrder,
) -> Result<Series> {
    let counts = index_counts([i, j, k]);
    let mut out = Series::zero(order);
    if counts[0] > 0 {
        return Ok(out);
    }
    let shift = [counts[2], counts[3], counts[4]];
    for d in 1..=order.q_max {
        let divisor = Rational::from_integer(BigInt::from(d).pow(counts[1]));
        for m3 in 0..=order.y_max {
            for m4 in 0..=order.y_max - m3 {
                let (n3, n4) = (m3 + shift[1], m4 + shift[2]);
                let Some(n2) = admissible_n2(cfg, d, n3, n4) else {
                    continue;
                };
                if n2 < shift[0] || n2 - shift[0] + m3 + m4 > order.y_max {
                    continue;
                }
                let m2 = n2 - shift[0];
                let value = invariant(store, cfg, InvariantKey::new(d, n2, n3, n4)?)?;
                if value.is_zero() {
                    continue;
                }
                let norm = factorial(m2 as u64) * factorial(m3 as u64) * factorial(m4 as u64);
                out.add_term(
                    Monomial::new(d, m2, m3, m4),
                    value * &divisor / Rational::from_integer(norm),
                );
            }
        }
    }
    Ok(out)
}

/// Full third derivative `Phi_ijk` (up to terms irrelevant to the product).
pub fn third_derivative(
    store: &MemoStore,
    cfg: GeometryConfig,
    i: BasisIndex,
    j: BasisIndex,
    k: BasisIndex,
    order: TruncationOrder,
) -> Result<Series> {
    Ok(&classical_third_derivative(cfg, i, j, k, order) + &gamma_third_derivative(store, cfg, i, j, k, order)?)
}

/// `T_i .s T_j = sum Psi_ije g^ef T_f`.
pub fn stringy_product(cfg: GeometryConfig, i: BasisIndex, j: BasisIndex, order: TruncationOrder) -> QuantumElement {
    let g = PairingMatrix::new();
    let mut out = QuantumElement::zero(order);
    for e in BasisIndex::ALL {
        let psi = three_point(cfg, [i.value(), j.value(), e.value()]);
        if psi.is_zero() {
            continue;
        }
        for f in BasisIndex::ALL {
            let c = &psi * g.entry(e.value(), f.value());
            out.components[f.value()].add_term(Monomial::ONE, c);
        }
    }
    out
}

/// The products `T_i * T_j` of all basis pairs at one truncation order.
#[derive(Debug, Clone)]
pub struct ProductTable {
    order: TruncationOrder,
    products: Vec<QuantumElement>,
}

impl ProductTable {
    pub fn new(store: &MemoStore, cfg: GeometryConfig, order: TruncationOrder) -> Result<Self> {
        let g = PairingMatrix::new();
        let mut derivatives: HashMap<[BasisIndex; 3], Series> = HashMap::new();
        let mut products = Vec::with_capacity(25);
        for i in BasisIndex::ALL {
            for j in BasisIndex::ALL {
                let mut element = QuantumElement::zero(order);
                for e in BasisIndex::ALL {
                    let mut sorted = [i, j, e];
                    sorted.sort_unstable();
                    if let std::collections::hash_map::Entry::Vacant(e) = derivatives.entry(sorted) {
                        let [a, b, c] = sorted;
                        e.insert(third_derivative(store, cfg, a, b, c, order)?);
                    }
                    let phi = &derivatives[&sorted];
                    if phi.is_zero() {
                        continue;
                    }
                    for f in BasisIndex::ALL {
                        let gef = g.entry(e.value(), f.value());
                        if !gef.is_zero() {
                            element.components[f.value()] = &element.components[f.value()] + &phi.scale(&gef);
                        }
                    }
                }
                products.push(element);
            }
        }
        Ok(Self { order, products })
    }

    pub fn order(&self) -> TruncationOrder {
        self.order
    }

    /// `T_i * T_j`.
    pub fn basis_product(&self, i: BasisIndex, j: BasisIndex) -> &QuantumElement {
        &self.products[5 * i.value() + j.value()]
    }

    /// Bilinear extension to arbitrary elements.
    pub fn product(&self, a: &QuantumElement, b: &QuantumElement) -> Result<QuantumElement> {
        for x in [a, b] {
            if x.order() != self.order {
                return Err(EngineError::TruncationMismatch(
                    self.order.to_string(),
                    x.order().to_string(),
                ));
            }
        }
        let mut out = QuantumElement::zero(self.order);
        for i in BasisIndex::ALL {
            let ai = a.component(i);
            if ai.is_zero() {
                continue;
            }
            for j in BasisIndex::ALL {
                let bj = b.component(j);
                if bj.is_zero() {
                    continue;
                }
                out.add_scaled(&(ai * bj), self.basis_product(i, j));
            }
        }
        Ok(out)
    }

    /// `(T_i * T_j) * T_k - T_i * (T_j * T_k)`.
    pub fn associativity_residual(&self, i: BasisIndex, j: BasisIndex, k: BasisIndex) -> QuantumElement {
        let tk = QuantumElement::basis(k, self.order);
        let ti = QuantumElement::basis(i, self.order);
        let left = self
            .product(self.basis_product(i, j), &tk)
            .expect("orders match by construction");
        let right = self
            .product(&ti, self.basis_product(j, k))
            .expect("orders match by construction");
        left.sub(&right)
    }
}

pub fn quantum_product(
    store: &MemoStore,
    cfg: GeometryConfig,
    a: &QuantumElement,
    b: &QuantumElement,
    order: TruncationOrder,
) -> Result<QuantumElement> {
    ProductTable::new(store, cfg, order)?.product(a, b)
}

pub fn associativity_residual(
    store: &MemoStore,
    cfg: GeometryConfig,
    i: BasisIndex,
    j: BasisIndex,
    k: BasisIndex,
    order: TruncationOrder,
) -> Result<QuantumElement> {
    Ok(ProductTable::new(store, cfg, order)?.associativity_residual(i, j, k))
}

/// Residuals of all 125 basis triples, in lexicographic `(i, j, k)` order.
pub fn associativity_sweep(
    store: &MemoStore,
    cfg: GeometryConfig,
    order: TruncationOrder,
) -> Result<Vec<([BasisIndex; 3], QuantumElement)>> {
    let table = ProductTable::new(store, cfg, order)?;
    let triples: Vec<[BasisIndex; 3]> = BasisIndex::ALL
        .into_iter()
        .flat_map(|i| BasisIndex::ALL.into_iter().flat_map(move |j| BasisIndex::ALL.map(|k| [i, j, k])))
        .collect();
    Ok(triples
        .into_par_iter()
        .map(|t| (t, table.associativity_residual(t[0], t[1], t[2])))
        .collect())
}

/// The four coefficient identities extracted from associativity, each the
/// comparison of one basis coefficient of one triple product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `T0` coefficient of `(T1*T1)*T2`.
    One,
    /// `T3` coefficient of `(T3*T3)*T4`.
    Two,
    /// `T3` coefficient of `(T3*T1)*T4`.
    Three,
    /// `T1` coefficient of `(T3*T3)*T1`.
    Four,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::One, Relation::Two, Relation::Three, Relation::Four];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|r| r.number() == n)
    }
}

struct GammaCache<'a> {
    store: &'a MemoStore,
    cfg: GeometryConfig,
    order: TruncationOrder,
    cache: HashMap<[u8; 3], Series>,
}

impl GammaCache<'_> {
    fn get(&mut self, idx: [u8; 3]) -> Result<Series> {
        let mut key = idx;
        key.sort_unstable();
        if let Some(s) = self.cache.get(&key) {
            return Ok(s.clone());
        }
        let [a, b, c] = key.map(BasisIndex);
        let s = gamma_third_derivative(self.store, self.cfg, a, b, c, self.order)?;
        self.cache.insert(key, s.clone());
        Ok(s)
    }
}

/// `LHS - RHS` of one relation as a truncated series; identically zero when
/// the invariants are right.
pub fn relation_series(
    store: &MemoStore,
    cfg: GeometryConfig,
    which: Relation,
    order: TruncationOrder,
) -> Result<Series> {
    let mut gc = GammaCache {
        store,
        cfg,
        order,
        cache: HashMap::new(),
    };
    let mut g = |i: u8, j: u8, k: u8| gc.get([i, j, k]);
    let delta = int(cfg.delta() as i64);
    let lam = lambda();
    let c = |n: i64| int(n);

    let residual = match which {
        Relation::One => {
            let lhs = g(2, 2, 2)?;
            let rhs = &(&g(1, 1, 2)? * &g(1, 1, 2)?) - &(&g(1, 1, 1)? * &g(1, 2, 2)?);
            let cross = &(&(&g(1, 2, 3)? * &g(1, 2, 4)?).scale(&c(2)) - &(&g(1, 1, 3)? * &g(2, 2, 4)?))
                - &(&g(1, 1, 4)? * &g(2, 2, 3)?);
            &lhs - &(&rhs + &cross.scale(&c(2)))
        }
        Relation::Two => {
            let lam_part = &g(4, 4, 4)?.times_y(4) - &g(3, 4, 4)?.times_y(3);
            let lhs = &(&g(1, 4, 4)?.scale(&delta) + &lam_part.scale(&(&lam * c(4))))
                - &g(2, 3, 4)?.scale(&c(2));
            let a = &(&g(1, 3, 4)? * &g(1, 3, 4)?) - &(&g(1, 3, 3)? * &g(1, 4, 4)?);
            let b = &(&g(3, 3, 4)? * &g(3, 4, 4)?) - &(&g(3, 3, 3)? * &g(4, 4, 4)?);
            &lhs - &(&a.scale(&c(2)) + &b.scale(&c(4)))
        }
        Relation::Three => {
            let lhs = &(&g(4, 4, 4)?.scale(&(&delta * c(2))) - &g(1, 2, 4)?)
                - &g(1, 4, 4)?.times_y(3).scale(&(&lam * c(4)));
            let a = &(&g(1, 1, 4)? * &g(1, 3, 4)?) - &(&g(1, 1, 3)? * &g(1, 4, 4)?);
            let b = &(&g(1, 4, 4)? * &g(3, 3, 4)?) - &(&g(1, 3, 3)? * &g(4, 4, 4)?);
            &lhs - &(&a.scale(&c(2)) + &b.scale(&c(4)))
        }
        Relation::Four => {
            let classical = &g(1, 1, 1)?.scale(&frac(1, 2)) - &g(1, 3, 4)?.scale(&c(2));
            let lam_part = &g(1, 1, 3)?.times_y(3) + &g(1, 1, 4)?.times_y(4);
            let lhs = &(&g(2, 3, 3)? + &classical.scale(&delta)) + &lam_part.scale(&(&lam * c(2)));
            let quad = &(&g(1, 1, 3)? * &g(1, 1, 3)?) - &(&g(1, 1, 1)? * &g(1, 3, 3)?);
            let cross = &(&(&g(1, 3, 3)? * &g(1, 3, 4)?).scale(&c(2)) - &(&g(1, 1, 3)? * &g(3, 3, 4)?))
                - &(&g(1, 1, 4)? * &g(3, 3, 3)?);
            &lhs - &(&quad + &cross.scale(&c(2)))
        }
    };
    Ok(residual)
}

/// Coefficient of `Q^d y2^m2/m2! y3^m3/m3! y4^m4/m4!` in the residual of
/// `which`; the divided-power normalization matches the potential.
pub fn relation_residual(
    store: &MemoStore,
    cfg: GeometryConfig,
    which: Relation,
    coeff: Monomial,
) -> Result<Rational> {
    if coeff.q == 0 {
        return Err(EngineError::InvalidInput(
            "relation coefficients are taken in degree d >= 1".into(),
        ));
    }
    let order = TruncationOrder::new(coeff.q, coeff.y_degree());
    let series = relation_series(store, cfg, which, order)?;
    let norm: BigInt = coeff.y.iter().map(|&e| factorial(e as u64)).product();
    Ok(series.coefficient(&coeff) * Rational::from_integer(norm))
}

/// Solve `delta (1/2 + 2 lambda) I_1(2,delta,0) = 2 delta I_1(2,delta+1,1) - I_1(3,delta+2,0)`
/// for `lambda`; `None` when `I_1(2,delta,0)` vanishes and the equation is degenerate.
pub fn derive_lambda(store: &MemoStore, cfg: GeometryConfig) -> Result<Option<Rational>> {
    let delta = cfg.delta();
    let i = |n2, n3, n4| invariant(store, cfg, InvariantKey::new(1, n2, n3, n4)?);
    let base = i(2, delta, 0)?;
    if base.is_zero() {
        return Ok(None);
    }
    let dr = int(delta as i64);
    let rhs = &dr * int(2) * i(2, delta + 1, 1)? - i(3, delta + 2, 0)?;
    let half_plus = rhs / (&dr * base);
    Ok(Some((half_plus - frac(1, 2)) / int(2)))
}
