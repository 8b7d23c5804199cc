//! Truncated power series in `Q, y2, y3, y4` with exact coefficients.
//!
//! `Q` stands for `q * exp(y1)`, so a derivative in `y1` multiplies the `Q^d`
//! coefficient by `d`. Coefficients are stored against ordinary monomials
//! `Q^d y2^m2 y3^m3 y4^m4`; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncationOrder {
    /// Largest power of `Q` kept.
    pub q_max: u32,
    /// Largest total degree in `y2, y3, y4` kept.
    pub y_max: u32,
}

impl TruncationOrder {
    pub fn new(q_max: u32, y_max: u32) -> Self {
        Self { q_max, y_max }
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        m.q <= self.q_max && m.y_degree() <= self.y_max
    }
}

impl fmt::Display for TruncationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q_max={}, y_max={})", self.q_max, self.y_max)
    }
}

/// Exponents of `Q, y2, y3, y4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub q: u32,
    pub y: [u32; 3],
}

impl Monomial {
    pub const ONE: Monomial = Monomial { q: 0, y: [0, 0, 0] };

    pub fn new(q: u32, m2: u32, m3: u32, m4: u32) -> Self {
        Self { q, y: [m2, m3, m4] }
    }

    pub fn y_degree(&self) -> u32 {
        self.y.iter().sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            q: self.q + other.q,
            y: [self.y[0] + other.y[0], self.y[1] + other.y[1], self.y[2] + other.y[2]],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    order: TruncationOrder,
    terms: BTreeMap<Monomial, Rational>,
}

impl Series {
    pub fn zero(order: TruncationOrder) -> Self {
        Self {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(order: TruncationOrder, c: Rational) -> Self {
        Self::monomial(order, Monomial::ONE, c)
    }

    pub fn monomial(order: TruncationOrder, m: Monomial, c: Rational) -> Self {
        let mut s = Self::zero(order);
        s.add_term(m, c);
        s
    }

    pub fn order(&self) -> TruncationOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Add `c * m`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.order.contains(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Restrict to a smaller truncation order.
    pub fn truncate(&self, order: TruncationOrder) -> Series {
        assert!(
            order.q_max <= self.order.q_max && order.y_max <= self.order.y_max,
            "cannot truncate {} to the larger order {}",
            self.order,
            order
        );
        Series {
            order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| order.contains(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        if c.is_zero() {
            return Series::zero(self.order);
        }
        Series {
            order: self.order,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Multiply by the monomial `m`, dropping whatever leaves the truncation.
    pub fn shift(&self, m: Monomial) -> Series {
        let mut out = Series::zero(self.order);
        for (k, v) in &self.terms {
            out.add_term(k.times(&m), v.clone());
        }
        out
    }

    /// Multiply by `y_l` for `l` in `{2, 3, 4}`.
    pub fn times_y(&self, l: usize) -> Series {
        assert!((2..=4).contains(&l), "no variable y{l} in the series ring");
        let mut m = Monomial::ONE;
        m.y[l - 2] = 1;
        self.shift(m)
    }

    fn check_order(&self, other: &Series) {
        assert_eq!(
            self.order, other.order,
            "series truncated at different orders"
        );
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        self.check_order(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        self.check_order(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        self.check_order(rhs);
        let order = self.order;
        let mut out = Series::zero(order);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                // terms are sorted by Q-degree first
                if ma.q + mb.q > order.q_max {
                    break;
                }
                if ma.y_degree() + mb.y_degree() > order.y_max {
                    continue;
                }
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr for Series {
            type Output = Series;
            fn $f(self, rhs: Series) -> Series {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (name, e) in [("Q", m.q), ("y2", m.y[0]), ("y3", m.y[1]), ("y4", m.y[2])] {
                match e {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}
