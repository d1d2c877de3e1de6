//! A non-linear good involution of the symplectic quandle on `Z[i]^2` with
//! the form `<(a,b),(c,d)> = 3(ad - bc)`.
//!
//! Every nonzero `x` factors as `3^v u` with `u ∉ 3M`. The class `ū` of `u`
//! in `M/3M ≅ F_9^2` lies in an orbit `{s, -s, is, -is}` of the unit group
//! `{±1, ±i}`; a sign `σ(ū) ∈ {i, -i}` is read off the position of `ū` in its
//! orbit and `ρ(x) = σ(ū) x`. Since `x*y ≡ x` modulo `3^{v+1}M`, both `v` and
//! `ū` are invariant under right translation, which is what makes `ρ` good.
//!
//! Arithmetic is exact on `BigInt` coefficients.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// A Gaussian integer `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &GaussInt) -> GaussInt {
        GaussInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }

    pub fn mul(&self, o: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, k: &BigInt) -> GaussInt {
        GaussInt { re: k * &self.re, im: k * &self.im }
    }

    /// Units of `Z[i]` are exactly the elements of norm 1.
    pub fn is_unit(&self) -> bool {
        (&self.re * &self.re + &self.im * &self.im).is_one()
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

/// The four units `1, i, -1, -i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum GaussUnit {
    One,
    I,
    NegOne,
    NegI,
}

impl GaussUnit {
    /// Exponent `e` with `self = i^e`.
    fn exponent(self) -> u8 {
        match self {
            GaussUnit::One => 0,
            GaussUnit::I => 1,
            GaussUnit::NegOne => 2,
            GaussUnit::NegI => 3,
        }
    }

    fn from_exponent(e: u8) -> Self {
        match e % 4 {
            0 => GaussUnit::One,
            1 => GaussUnit::I,
            2 => GaussUnit::NegOne,
            _ => GaussUnit::NegI,
        }
    }

    pub fn inverse(self) -> GaussUnit {
        Self::from_exponent(4 - self.exponent())
    }

    pub fn to_gauss(self) -> GaussInt {
        match self {
            GaussUnit::One => GaussInt::new(1, 0),
            GaussUnit::I => GaussInt::new(0, 1),
            GaussUnit::NegOne => GaussInt::new(-1, 0),
            GaussUnit::NegI => GaussInt::new(0, -1),
        }
    }

    /// `u · z` without a general multiplication.
    pub fn apply(self, z: &GaussInt) -> GaussInt {
        match self {
            GaussUnit::One => z.clone(),
            GaussUnit::I => GaussInt { re: -&z.im, im: z.re.clone() },
            GaussUnit::NegOne => z.neg(),
            GaussUnit::NegI => GaussInt { re: z.im.clone(), im: -&z.re },
        }
    }
}

impl std::ops::Mul for GaussUnit {
    type Output = GaussUnit;

    // i^a · i^b = i^(a+b)
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, o: GaussUnit) -> GaussUnit {
        Self::from_exponent(self.exponent() + o.exponent())
    }
}

/// An element of `Z[i]^2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussVector(pub [GaussInt; 2]);

impl GaussVector {
    pub fn new(a: GaussInt, b: GaussInt) -> Self {
        GaussVector([a, b])
    }

    /// Vector from four integers `(re0, im0, re1, im1)`.
    pub fn from_parts(re0: i64, im0: i64, re1: i64, im1: i64) -> Self {
        GaussVector([GaussInt::new(re0, im0), GaussInt::new(re1, im1)])
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(GaussInt::is_zero)
    }

    fn parts(&self) -> [&BigInt; 4] {
        [&self.0[0].re, &self.0[0].im, &self.0[1].re, &self.0[1].im]
    }

    pub fn add(&self, o: &GaussVector) -> GaussVector {
        GaussVector([self.0[0].add(&o.0[0]), self.0[1].add(&o.0[1])])
    }

    pub fn sub(&self, o: &GaussVector) -> GaussVector {
        GaussVector([self.0[0].sub(&o.0[0]), self.0[1].sub(&o.0[1])])
    }

    pub fn scale(&self, c: &GaussInt) -> GaussVector {
        GaussVector([c.mul(&self.0[0]), c.mul(&self.0[1])])
    }

    pub fn scale_unit(&self, u: GaussUnit) -> GaussVector {
        GaussVector([u.apply(&self.0[0]), u.apply(&self.0[1])])
    }
}

impl fmt::Display for GaussVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0[0], self.0[1])
    }
}

/// `<(a,b),(c,d)> = 3(ad - bc)`.
pub fn gauss_form(x: &GaussVector, y: &GaussVector) -> GaussInt {
    let [a, b] = &x.0;
    let [c, d] = &y.0;
    a.mul(d).sub(&b.mul(c)).scale(&BigInt::from(3))
}

/// Determinant of the Gram matrix `[[0,3],[-3,0]]`: nonzero, not a unit.
pub fn gauss_form_determinant() -> GaussInt {
    GaussInt::new(9, 0)
}

/// `x * y = x + <x,y> y`.
pub fn gauss_op(x: &GaussVector, y: &GaussVector) -> GaussVector {
    x.add(&y.scale(&gauss_form(x, y)))
}

/// `x *^{-1} y = x - <x,y> y`.
pub fn gauss_inv_op(x: &GaussVector, y: &GaussVector) -> GaussVector {
    x.sub(&y.scale(&gauss_form(x, y)))
}

/// Largest `n` with `x ∈ 3^n M`.
pub fn v3(x: &GaussVector) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::ZeroVector);
    }
    let three = BigInt::from(3);
    let mut parts: Vec<BigInt> = x.parts().into_iter().cloned().collect();
    let mut n = 0;
    while parts.iter().all(|p| p.is_multiple_of(&three)) {
        for p in &mut parts {
            *p /= &three;
        }
        n += 1;
    }
    Ok(n)
}

/// An element of `M/3M ≅ F_9^2`, as residues `(re0, im0, re1, im1)` mod 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ResidueVector(pub [u8; 4]);

impl ResidueVector {
    pub fn is_zero(self) -> bool {
        self.0 == [0; 4]
    }

    /// Index in `0..81` agreeing with the tuple order.
    pub fn encode(self) -> usize {
        self.0.iter().fold(0, |acc, &r| acc * 3 + r as usize)
    }

    pub fn decode(mut index: usize) -> Self {
        let mut r = [0u8; 4];
        for slot in r.iter_mut().rev() {
            *slot = (index % 3) as u8;
            index /= 3;
        }
        ResidueVector(r)
    }

    /// All 80 nonzero residue vectors in tuple order.
    pub fn nonzero() -> impl Iterator<Item = ResidueVector> {
        (1..81).map(Self::decode)
    }

    /// Multiplication by a unit; `i (a + b i) = -b + a i` in each coordinate.
    pub fn scale_unit(self, u: GaussUnit) -> Self {
        let [a, b, c, d] = self.0;
        let neg = |r: u8| (3 - r) % 3;
        ResidueVector(match u {
            GaussUnit::One => [a, b, c, d],
            GaussUnit::I => [neg(b), a, neg(d), c],
            GaussUnit::NegOne => [neg(a), neg(b), neg(c), neg(d)],
            GaussUnit::NegI => [b, neg(a), d, neg(c)],
        })
    }

    /// The orbit `[v, -v, iv, -iv]`.
    pub fn orbit(self) -> [ResidueVector; 4] {
        [GaussUnit::One, GaussUnit::NegOne, GaussUnit::I, GaussUnit::NegI].map(|u| self.scale_unit(u))
    }
}

impl fmt::Display for ResidueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}+{b}i,{c}+{d}i)")
    }
}

/// Class of `x / 3^{v3(x)}` in `M/3M`.
pub fn residue_bar(x: &GaussVector) -> Result<ResidueVector> {
    let v = v3(x)?;
    let scale = BigInt::from(3).pow(v);
    let three = BigInt::from(3);
    let mut out = [0u8; 4];
    for (slot, p) in out.iter_mut().zip(x.parts()) {
        let r = (p / &scale).mod_floor(&three);
        *slot = u8::try_from(r).expect("residue mod 3");
    }
    Ok(ResidueVector(out))
}

/// Where `v` sits in its orbit relative to the representative `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitPosition {
    /// `v = s`
    S,
    /// `v = -s`
    NegS,
    /// `v = i s`
    IS,
    /// `v = -i s`
    NegIS,
}

impl OrbitPosition {
    fn unit(self) -> GaussUnit {
        match self {
            OrbitPosition::S => GaussUnit::One,
            OrbitPosition::NegS => GaussUnit::NegOne,
            OrbitPosition::IS => GaussUnit::I,
            OrbitPosition::NegIS => GaussUnit::NegI,
        }
    }
}

fn orbit_table() -> &'static [Option<(ResidueVector, OrbitPosition)>; 81] {
    static TABLE: OnceLock<[Option<(ResidueVector, OrbitPosition)>; 81]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = [None; 81];
        for v in ResidueVector::nonzero() {
            let rep = *v.orbit().iter().min().unwrap();
            let position = [OrbitPosition::S, OrbitPosition::NegS, OrbitPosition::IS, OrbitPosition::NegIS]
                .into_iter()
                .find(|p| rep.scale_unit(p.unit()) == v)
                .unwrap();
            table[v.encode()] = Some((rep, position));
        }
        table
    })
}

/// The minimal orbit member and the position of `v` relative to it.
pub fn orbit_rep(v: ResidueVector) -> Result<(ResidueVector, OrbitPosition)> {
    orbit_table()[v.encode()].ok_or(Error::ZeroVector)
}

/// The 20 orbit representatives, sorted.
pub fn orbit_representatives() -> Vec<ResidueVector> {
    let mut reps: Vec<ResidueVector> = orbit_table().iter().flatten().map(|&(r, _)| r).collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Sign assignment over the four orbit positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignTable {
    pub s: GaussUnit,
    pub neg_s: GaussUnit,
    pub i_s: GaussUnit,
    pub neg_i_s: GaussUnit,
}

impl SignTable {
    /// `σ(±s) = i`, `σ(±is) = -i`: the assignment for which `v ↦ σ(v)v` is
    /// an involution on every orbit. Used by [`sigma`] and [`rho`].
    pub const EVEN: SignTable = SignTable {
        s: GaussUnit::I,
        neg_s: GaussUnit::I,
        i_s: GaussUnit::NegI,
        neg_i_s: GaussUnit::NegI,
    };

    /// `σ(s) = i`, `σ(-s) = -i`, `σ(is) = -i`, `σ(-is) = i`. Odd under
    /// `v ↦ -v`; fails `σ(σ(v)v) = σ(v)^{-1}` on the `-s` and `-is` classes.
    pub const ODD: SignTable = SignTable {
        s: GaussUnit::I,
        neg_s: GaussUnit::NegI,
        i_s: GaussUnit::NegI,
        neg_i_s: GaussUnit::I,
    };

    pub fn at(&self, p: OrbitPosition) -> GaussUnit {
        match p {
            OrbitPosition::S => self.s,
            OrbitPosition::NegS => self.neg_s,
            OrbitPosition::IS => self.i_s,
            OrbitPosition::NegIS => self.neg_i_s,
        }
    }

    pub fn sigma(&self, v: ResidueVector) -> Result<GaussUnit> {
        let (_, position) = orbit_rep(v)?;
        Ok(self.at(position))
    }

    pub fn rho(&self, x: &GaussVector) -> GaussVector {
        if x.is_zero() {
            return GaussVector::zero();
        }
        let bar = residue_bar(x).expect("nonzero vector");
        x.scale_unit(self.sigma(bar).expect("nonzero residue"))
    }
}

pub fn sigma(v: ResidueVector) -> Result<GaussUnit> {
    SignTable::EVEN.sigma(v)
}

/// `ρ(x) = σ(x̄) x`, `ρ(0) = 0`.
pub fn rho(x: &GaussVector) -> GaussVector {
    SignTable::EVEN.rho(x)
}

/// Sampling parameters for the randomized property suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleConfig {
    pub samples: u64,
    pub coeff_bound: i64,
    pub seed: u64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 10_000, coeff_bound: 50, seed: 0 }
    }
}

pub fn sample_vector(rng: &mut impl Rng, bound: i64) -> GaussVector {
    let mut c = || rng.gen_range(-bound..=bound);
    GaussVector::from_parts(c(), c(), c(), c())
}

/// Failure counts per property, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyTally {
    pub name: &'static str,
    pub checked: u64,
    pub failures: u64,
    /// First failing sample, formatted.
    pub first_failure: Option<String>,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        PropertyTally { name, checked: 0, failures: 0, first_failure: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness());
            }
        }
    }
}

/// Sampled properties of `ρ` on random pairs `(x, y)`.
pub fn sampled_properties(table: &SignTable, cfg: SampleConfig) -> Vec<PropertyTally> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut op_inverse = PropertyTally::new("inv_op(op(x,y),y) = x");
    let mut involution = PropertyTally::new("rho(rho(x)) = x");
    let mut cond1 = PropertyTally::new("rho(x*y) = rho(x)*y");
    let mut cond2 = PropertyTally::new("x*rho(y) = x*^-1 y");
    let mut v_stable = PropertyTally::new("v3(x*y) = v3(x)");
    let mut bar_stable = PropertyTally::new("bar(x*y) = bar(x)");
    let mut v_rho = PropertyTally::new("v3(rho(x)) = v3(x)");
    for _ in 0..cfg.samples {
        let x = sample_vector(&mut rng, cfg.coeff_bound);
        let y = sample_vector(&mut rng, cfg.coeff_bound);
        let pair = || format!("x={x}, y={y}");
        let xy = gauss_op(&x, &y);
        op_inverse.record(gauss_inv_op(&xy, &y) == x, pair);
        let rx = table.rho(&x);
        involution.record(table.rho(&rx) == x, pair);
        cond1.record(table.rho(&xy) == gauss_op(&rx, &y), pair);
        cond2.record(gauss_op(&x, &table.rho(&y)) == gauss_inv_op(&x, &y), pair);
        if !x.is_zero() {
            v_stable.record(v3(&xy).ok() == v3(&x).ok(), pair);
            bar_stable.record(residue_bar(&xy).ok() == residue_bar(&x).ok(), pair);
            v_rho.record(v3(&rx).ok() == v3(&x).ok(), pair);
        }
    }
    vec![op_inverse, involution, cond1, cond2, v_stable, bar_stable, v_rho]
}

/// Exhaustive residue-level checks of a sign table over all 80 nonzero
/// residue vectors.
pub fn residue_properties(table: &SignTable) -> Vec<PropertyTally> {
    let mut square = PropertyTally::new("sigma(v)^2 = -1");
    let mut twisted = PropertyTally::new("sigma(sigma(v)v) = sigma(v)^-1");
    let mut orbit = PropertyTally::new("|orbit(v)| = 4");
    for v in ResidueVector::nonzero() {
        let s = table.sigma(v).expect("nonzero");
        square.record(s * s == GaussUnit::NegOne, || v.to_string());
        let moved = v.scale_unit(s);
        twisted.record(table.sigma(moved).ok() == Some(s.inverse()), || v.to_string());
        let mut members = v.orbit().to_vec();
        members.sort();
        members.dedup();
        orbit.record(members.len() == 4, || v.to_string());
    }
    vec![square, twisted, orbit]
}
