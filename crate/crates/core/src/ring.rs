//! Finite commutative rings with identity.
//!
//! Two kinds are supported: residue rings `Z/nZ` and polynomial quotient
//! rings `(Z/nZ)[X]/(f)` with `f` monic. Elements are identified with their
//! canonical index `sum c_i * n^i` (constant coefficient least significant),
//! which is also the total order used everywhere else in the crate.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rings up to this order get precomputed operation tables.
pub const TABLE_LIMIT: u32 = 256;

/// Largest ring order accepted by [`Ring::new`].
pub const MAX_ORDER: u64 = 1 << 24;

/// Serializable description of a ring, e.g. `{"kind":"zmod","n":9}` or
/// `{"kind":"quotient","n":3,"poly":[1,0,1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RingDescriptor {
    Zmod { n: u64 },
    Quotient { n: u64, poly: Vec<i64> },
}

impl RingDescriptor {
    pub fn zmod(n: u64) -> Self {
        RingDescriptor::Zmod { n }
    }

    pub fn quotient(n: u64, poly: Vec<i64>) -> Self {
        RingDescriptor::Quotient { n, poly }
    }

    /// `F_4 = F_2[X]/(X^2+X+1)`.
    pub fn gf4() -> Self {
        Self::quotient(2, vec![1, 1, 1])
    }

    /// `F_9 = F_3[X]/(X^2+1)`.
    pub fn gf9() -> Self {
        Self::quotient(3, vec![1, 0, 1])
    }

    /// Short human-readable name used in reports.
    pub fn name(&self) -> String {
        match self {
            RingDescriptor::Zmod { n } => format!("Z/{n}Z"),
            RingDescriptor::Quotient { n, poly } => {
                let mut terms = Vec::new();
                for (i, &c) in poly.iter().enumerate().rev() {
                    let c = c.rem_euclid(*n as i64);
                    if c == 0 {
                        continue;
                    }
                    let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                    terms.push(match i {
                        0 => coeff,
                        1 => format!("{coeff}X"),
                        _ => format!("{coeff}X^{i}"),
                    });
                }
                format!("(Z/{n}Z)[X]/({})", terms.join("+"))
            }
        }
    }
}

/// A ring element, stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const fn from_index(index: u32) -> Self {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

struct RingInner {
    descriptor: RingDescriptor,
    n: u64,
    degree: usize,
    /// Reduced monic modulus, length `degree + 1`; `[0, 1]` for zmod.
    modulus: Vec<u64>,
    order: u32,
    tables: Option<Tables>,
    inverses: OnceLock<Vec<Option<Elem>>>,
    domain: OnceLock<bool>,
}

/// Handle to an immutable finite ring. Cloning is cheap.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Ring").field(&self.0.descriptor).finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn new(descriptor: RingDescriptor) -> Result<Ring> {
        let (n, modulus) = match &descriptor {
            RingDescriptor::Zmod { n } => {
                if *n < 2 {
                    return Err(Error::InvalidModulus(*n));
                }
                (*n, vec![0, 1])
            }
            RingDescriptor::Quotient { n, poly } => {
                if *n < 2 {
                    return Err(Error::InvalidModulus(*n));
                }
                if poly.len() < 2 {
                    return Err(Error::EmptyPoly);
                }
                let reduced: Vec<u64> = poly
                    .iter()
                    .map(|&c| c.rem_euclid(*n as i64) as u64)
                    .collect();
                if *reduced.last().unwrap() != 1 {
                    return Err(Error::NonMonic(*n));
                }
                (*n, reduced)
            }
        };
        let degree = modulus.len() - 1;
        let order = (n as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        if order > MAX_ORDER as u128 {
            return Err(Error::RingTooLarge(order));
        }
        let mut inner = RingInner {
            descriptor,
            n,
            degree,
            modulus,
            order: order as u32,
            tables: None,
            inverses: OnceLock::new(),
            domain: OnceLock::new(),
        };
        if inner.order <= TABLE_LIMIT {
            let size = inner.order as usize;
            let mut add = vec![0; size * size];
            let mut mul = vec![0; size * size];
            let neg = (0..inner.order).map(|a| inner.neg_direct(a)).collect();
            for a in 0..inner.order {
                for b in 0..inner.order {
                    let at = a as usize * size + b as usize;
                    add[at] = inner.add_direct(a, b);
                    mul[at] = inner.mul_direct(a, b);
                }
            }
            inner.tables = Some(Tables { add, mul, neg });
        }
        Ok(Ring(Arc::new(inner)))
    }

    pub fn descriptor(&self) -> &RingDescriptor {
        &self.0.descriptor
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// The base modulus `n`.
    pub fn modulus(&self) -> u64 {
        self.0.n
    }

    /// Number of coefficients per element (1 for zmod).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.0.order).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.add[self.slot(a, b)]),
            None => Elem(self.0.add_direct(a.0, b.0)),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.neg[a.0 as usize]),
            None => Elem(self.0.neg_direct(a.0)),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.0.tables {
            Some(t) => Elem(t.mul[self.slot(a, b)]),
            None => Elem(self.0.mul_direct(a.0, b.0)),
        }
    }

    fn slot(&self, a: Elem, b: Elem) -> usize {
        a.0 as usize * self.0.order as usize + b.0 as usize
    }

    /// `m * 1_R`, reduced into the constant coefficient.
    pub fn from_int(&self, m: i64) -> Elem {
        Elem(m.rem_euclid(self.0.n as i64) as u32)
    }

    /// Element `sum c_i X^i`, reduced modulo `n` and `f`. Accepts any length.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Elem {
        if self.0.degree == 1 {
            // Z/nZ[X]/(X): only the constant term survives.
            return coeffs.first().map_or(self.zero(), |&c| self.from_int(c));
        }
        let x = Elem(self.0.n as u32);
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(self.mul(acc, x), self.from_int(c)))
    }

    /// Coefficients of `a`, constant term first.
    pub fn coeffs(&self, a: Elem) -> Vec<u64> {
        self.0.decode(a.0)
    }

    pub fn is_zero(&self, a: Elem) -> bool {
        a.0 == 0
    }

    /// Smallest `m >= 1` with `m * 1_R = 0`.
    pub fn characteristic(&self) -> u64 {
        let mut acc = self.one();
        let mut m = 1;
        while !self.is_zero(acc) {
            acc = self.add(acc, self.one());
            m += 1;
        }
        m
    }

    /// True iff no two nonzero elements multiply to zero.
    pub fn is_integral_domain(&self) -> bool {
        *self.0.domain.get_or_init(|| {
            self.elements().skip(1).all(|a| {
                self.elements()
                    .skip(1)
                    .all(|b| !self.is_zero(self.mul(a, b)))
            })
        })
    }

    fn inverse_table(&self) -> &[Option<Elem>] {
        self.0.inverses.get_or_init(|| {
            if let RingDescriptor::Zmod { n } = self.0.descriptor {
                return self
                    .elements()
                    .map(|a| {
                        let g = (a.0 as i64).extended_gcd(&(n as i64));
                        (g.gcd == 1).then(|| self.from_int(g.x))
                    })
                    .collect();
            }
            let mut table = vec![None; self.0.order as usize];
            for a in self.elements() {
                if table[a.0 as usize].is_some() {
                    continue;
                }
                if let Some(b) = self.elements().find(|&b| self.mul(a, b) == self.one()) {
                    table[a.0 as usize] = Some(b);
                    table[b.0 as usize] = Some(a);
                }
            }
            table
        })
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse_table()[a.0 as usize]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// All units paired with their inverses, in canonical order.
    pub fn units(&self) -> Vec<(Elem, Elem)> {
        self.inverse_table()
            .iter()
            .enumerate()
            .filter_map(|(i, inv)| inv.map(|b| (Elem(i as u32), b)))
            .collect()
    }

    /// Printable form: an integer for zmod, a polynomial in `x` otherwise.
    pub fn format(&self, a: Elem) -> String {
        let coeffs = self.coeffs(a);
        if self.0.degree == 1 {
            return coeffs[0].to_string();
        }
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }
}

impl RingInner {
    fn decode(&self, mut index: u32) -> Vec<u64> {
        let n = self.n as u32;
        (0..self.degree)
            .map(|_| {
                let c = index % n;
                index /= n;
                c as u64
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.n + c) as u32
    }

    fn add_direct(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = x.iter().zip(&y).map(|(p, q)| (p + q) % self.n).collect();
        self.encode(&sum)
    }

    fn neg_direct(&self, a: u32) -> u32 {
        let negated: Vec<u64> = self
            .decode(a)
            .iter()
            .map(|&c| (self.n - c) % self.n)
            .collect();
        self.encode(&negated)
    }

    fn mul_direct(&self, a: u32, b: u32) -> u32 {
        let n = self.n as u128;
        let (x, y) = (self.decode(a), self.decode(b));
        let d = self.degree;
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &p) in x.iter().enumerate() {
            for (j, &q) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + p as u128 * q as u128) % n;
            }
        }
        // Reduce X^i for i >= d using X^d = -(f_0 + ... + f_{d-1} X^{d-1}).
        for i in (d..prod.len()).rev() {
            let top = prod[i];
            if top == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..d {
                let sub = top * self.modulus[j] as u128 % n;
                prod[i - d + j] = (prod[i - d + j] + n - sub) % n;
            }
        }
        let reduced: Vec<u64> = prod[..d].iter().map(|&c| c as u64).collect();
        self.encode(&reduced)
    }
}
