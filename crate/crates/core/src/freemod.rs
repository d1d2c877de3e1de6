//! Free modules `R^k` and alternating bilinear forms on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// The free module `R^k`. Vectors are indexed by `sum index(c_i) * |R|^i`,
/// coordinate 0 least significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: Ring,
    rank: usize,
    size: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleVector {
    coords: Vec<Elem>,
}

impl ModuleVector {
    pub fn new(coords: Vec<Elem>) -> Self {
        ModuleVector { coords }
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

impl FreeModule {
    pub fn new(ring: Ring, rank: usize) -> Self {
        let size = (ring.order() as u128).saturating_pow(rank as u32);
        FreeModule { ring, rank, size }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `|R|^k`, saturating.
    pub fn size(&self) -> u128 {
        self.size
    }

    pub fn encode(&self, v: &ModuleVector) -> u64 {
        let order = self.ring.order() as u64;
        v.coords
            .iter()
            .rev()
            .fold(0u64, |acc, c| acc * order + c.index() as u64)
    }

    pub fn decode(&self, mut index: u64) -> ModuleVector {
        let order = self.ring.order() as u64;
        let coords = (0..self.rank)
            .map(|_| {
                let c = index % order;
                index /= order;
                Elem::from_index(c as u32)
            })
            .collect();
        ModuleVector { coords }
    }

    /// Every vector in canonical index order. Only sensible at desk scale.
    pub fn vectors(&self) -> impl Iterator<Item = ModuleVector> + '_ {
        let size = u64::try_from(self.size).unwrap_or(u64::MAX);
        (0..size).map(|i| self.decode(i))
    }

    pub fn zero(&self) -> ModuleVector {
        ModuleVector::new(vec![self.ring.zero(); self.rank])
    }

    /// The `i`-th standard basis vector.
    pub fn basis(&self, i: usize) -> ModuleVector {
        let mut v = self.zero();
        v.coords[i] = self.ring.one();
        v
    }

    pub fn add(&self, x: &ModuleVector, y: &ModuleVector) -> ModuleVector {
        let r = &self.ring;
        ModuleVector::new(x.coords.iter().zip(&y.coords).map(|(&a, &b)| r.add(a, b)).collect())
    }

    pub fn sub(&self, x: &ModuleVector, y: &ModuleVector) -> ModuleVector {
        let r = &self.ring;
        ModuleVector::new(x.coords.iter().zip(&y.coords).map(|(&a, &b)| r.sub(a, b)).collect())
    }

    pub fn scale(&self, s: Elem, x: &ModuleVector) -> ModuleVector {
        ModuleVector::new(x.coords.iter().map(|&a| self.ring.mul(s, a)).collect())
    }

    /// Label such as `(1,3)`.
    pub fn format(&self, v: &ModuleVector) -> String {
        let parts: Vec<String> = v.coords.iter().map(|&c| self.ring.format(c)).collect();
        format!("({})", parts.join(","))
    }

    fn check_dim(&self, v: &ModuleVector) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }
}

/// A Gram-matrix entry in config: an integer coerced via `m * 1_R`, or a
/// coefficient array for quotient rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EntrySpec {
    Int(i64),
    Coeffs(Vec<i64>),
}

impl EntrySpec {
    pub fn to_elem(&self, ring: &Ring) -> Elem {
        match self {
            EntrySpec::Int(m) => ring.from_int(*m),
            EntrySpec::Coeffs(c) => ring.from_coeffs(c),
        }
    }
}

/// Form as written in config: `{"gram":[[..]]}`, `{"form":"standard"}` or
/// `{"form":"scaled","c":3}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<EntrySpec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<EntrySpec>,
}

/// An alternating form `<x,y> = x^T G y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramForm {
    module: FreeModule,
    gram: Vec<Elem>,
}

impl GramForm {
    /// Validates both alternating conditions and rejects on failure.
    pub fn from_matrix(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<GramForm> {
        let k = rows.len();
        for row in &rows {
            if row.len() != k {
                return Err(Error::DimensionMismatch { expected: k, got: row.len() });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if !ring.is_zero(row[i]) {
                return Err(Error::NonzeroDiagonal(i));
            }
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, other) in rows.iter().enumerate().skip(i + 1) {
                if other[i] != ring.neg(row[j]) {
                    return Err(Error::NotSkewSymmetric(i, j));
                }
            }
        }
        Ok(GramForm {
            module: FreeModule::new(ring.clone(), k),
            gram: rows.into_iter().flatten().collect(),
        })
    }

    /// `c` times the block-diagonal `[[0,1],[-1,0]]` form.
    pub fn scaled(ring: &Ring, rank: usize, c: Elem) -> Result<GramForm> {
        if !rank.is_multiple_of(2) {
            return Err(Error::OddRankStandard(rank));
        }
        let mut rows = vec![vec![ring.zero(); rank]; rank];
        for b in (0..rank).step_by(2) {
            rows[b][b + 1] = c;
            rows[b + 1][b] = ring.neg(c);
        }
        Self::from_matrix(ring, rows)
    }

    pub fn standard(ring: &Ring, rank: usize) -> Result<GramForm> {
        Self::scaled(ring, rank, ring.one())
    }

    pub fn zero(ring: &Ring, rank: usize) -> GramForm {
        GramForm {
            module: FreeModule::new(ring.clone(), rank),
            gram: vec![ring.zero(); rank * rank],
        }
    }

    pub fn from_spec(ring: &Ring, rank: usize, spec: &FormSpec) -> Result<GramForm> {
        match (&spec.gram, spec.form.as_deref()) {
            (Some(_), Some(_)) => Err(Error::InvalidForm("give either \"gram\" or \"form\", not both".into())),
            (Some(gram), None) => {
                if spec.c.is_some() {
                    return Err(Error::InvalidForm("\"c\" is only valid with \"form\":\"scaled\"".into()));
                }
                if gram.len() != rank {
                    return Err(Error::DimensionMismatch { expected: rank, got: gram.len() });
                }
                let rows = gram
                    .iter()
                    .map(|row| row.iter().map(|e| e.to_elem(ring)).collect())
                    .collect();
                Self::from_matrix(ring, rows)
            }
            (None, Some("standard")) => {
                if spec.c.is_some() {
                    return Err(Error::InvalidForm("\"c\" is only valid with \"form\":\"scaled\"".into()));
                }
                Self::standard(ring, rank)
            }
            (None, Some("scaled")) => {
                let c = spec
                    .c
                    .as_ref()
                    .ok_or_else(|| Error::InvalidForm("\"scaled\" form needs \"c\"".into()))?;
                Self::scaled(ring, rank, c.to_elem(ring))
            }
            (None, Some(other)) => Err(Error::InvalidForm(format!("unknown form \"{other}\""))),
            (None, None) => Err(Error::InvalidForm("missing \"gram\" or \"form\"".into())),
        }
    }

    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn ring(&self) -> &Ring {
        self.module.ring()
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.gram[i * self.rank() + j]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.gram.chunks(self.rank().max(1)).map(<[Elem]>::to_vec).collect()
    }

    /// The form with every entry negated.
    pub fn negated(&self) -> GramForm {
        let r = self.ring();
        GramForm {
            module: self.module.clone(),
            gram: self.gram.iter().map(|&e| r.neg(e)).collect(),
        }
    }

    pub fn eval(&self, x: &ModuleVector, y: &ModuleVector) -> Result<Elem> {
        self.module.check_dim(x)?;
        self.module.check_dim(y)?;
        Ok(self.eval_coords(x.coords(), y.coords()))
    }

    /// Unchecked evaluation on coordinate slices of length `k`.
    pub fn eval_coords(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let r = self.ring();
        let k = self.rank();
        let mut acc = r.zero();
        for (i, &xi) in x.iter().enumerate() {
            if r.is_zero(xi) {
                continue;
            }
            let mut row = r.zero();
            for (j, &yj) in y.iter().enumerate() {
                row = r.add(row, r.mul(self.gram[i * k + j], yj));
            }
            acc = r.add(acc, r.mul(xi, row));
        }
        acc
    }

    /// Determinant of the Gram matrix by cofactor expansion.
    pub fn determinant(&self) -> Elem {
        let cols: Vec<usize> = (0..self.rank()).collect();
        self.minor(0, &cols)
    }

    fn minor(&self, row: usize, cols: &[usize]) -> Elem {
        let r = self.ring();
        if cols.is_empty() {
            return r.one();
        }
        let mut acc = r.zero();
        for (pos, &c) in cols.iter().enumerate() {
            let entry = self.entry(row, c);
            if r.is_zero(entry) {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
            let term = r.mul(entry, self.minor(row + 1, &rest));
            acc = if pos % 2 == 0 { r.add(acc, term) } else { r.sub(acc, term) };
        }
        acc
    }

    /// The radical `{x : <x,y> = 0 for all y}`, in canonical order.
    pub fn radical(&self) -> Vec<ModuleVector> {
        let basis: Vec<ModuleVector> = (0..self.rank()).map(|j| self.module.basis(j)).collect();
        self.module
            .vectors()
            .filter(|x| basis.iter().all(|e| self.ring().is_zero(self.eval_coords(x.coords(), e.coords()))))
            .collect()
    }

    /// True iff the radical is zero. A unit determinant short-circuits the scan.
    pub fn is_nondegenerate(&self) -> bool {
        if self.is_unimodular() {
            return true;
        }
        let basis: Vec<ModuleVector> = (0..self.rank()).map(|j| self.module.basis(j)).collect();
        self.module.vectors().skip(1).all(|x| {
            basis
                .iter()
                .any(|e| !self.ring().is_zero(self.eval_coords(x.coords(), e.coords())))
        })
    }

    pub fn is_unimodular(&self) -> bool {
        self.ring().is_unit(self.determinant())
    }

    /// First pair `(e,f)` with `<e,f> = 1`, scanning `(x,y)` in canonical
    /// order and rescaling the first unit value found.
    pub fn find_hyperbolic_pair(&self) -> Option<(ModuleVector, ModuleVector)> {
        let r = self.ring();
        for x in self.module.vectors() {
            for y in self.module.vectors() {
                let value = self.eval_coords(x.coords(), y.coords());
                if let Some(inv) = r.inverse(value) {
                    return Some((self.module.scale(inv, &x), y));
                }
            }
        }
        None
    }

    /// Every value `<x,y>` over `M x M`, sorted.
    pub fn value_set(&self) -> Vec<Elem> {
        let mut seen = vec![false; self.ring().order() as usize];
        for x in self.module.vectors() {
            for y in self.module.vectors() {
                seen[self.eval_coords(x.coords(), y.coords()).index() as usize] = true;
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| Elem::from_index(i as u32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingDescriptor;

    fn z(n: u64) -> Ring {
        Ring::new(RingDescriptor::zmod(n)).unwrap()
    }

    fn vec2(r: &Ring, a: i64, b: i64) -> ModuleVector {
        ModuleVector::new(vec![r.from_int(a), r.from_int(b)])
    }

    fn z9_example() -> GramForm {
        let r = z(9);
        GramForm::from_matrix(&r, vec![vec![r.from_int(0), r.from_int(3)], vec![r.from_int(6), r.from_int(0)]]).unwrap()
    }

    #[test]
    fn z9_example_values() {
        let g = z9_example();
        let r = g.ring().clone();
        assert_eq!(g.eval(&vec2(&r, 1, 0), &vec2(&r, 0, 1)).unwrap(), r.from_int(3));
        // 3(ad - bc) for a few hand-picked vectors.
        assert_eq!(g.eval(&vec2(&r, 2, 5), &vec2(&r, 4, 7)).unwrap(), r.from_int(3 * (14 - 20)));
    }

    #[test]
    fn dimension_mismatch() {
        let g = z9_example();
        let r = g.ring().clone();
        let short = ModuleVector::new(vec![r.one()]);
        assert_eq!(
            g.eval(&short, &vec2(&r, 0, 1)),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn standard_form_on_f3() {
        let r = z(3);
        let g = GramForm::standard(&r, 2).unwrap();
        assert_eq!(g.eval(&vec2(&r, 1, 0), &vec2(&r, 0, 1)).unwrap(), r.one());
        assert!(g.is_nondegenerate());
        assert!(g.is_unimodular());
        assert_eq!(g.find_hyperbolic_pair(), Some((vec2(&r, 1, 0), vec2(&r, 0, 1))));
    }

    #[test]
    fn zero_form_is_degenerate() {
        let r = z(2);
        let g = GramForm::zero(&r, 2);
        assert!(!g.is_nondegenerate());
        assert_eq!(g.radical().len(), 4);
        assert_eq!(g.find_hyperbolic_pair(), None);
    }

    #[test]
    fn z9_example_has_nontrivial_radical_and_no_hyperbolic_pair() {
        let g = z9_example();
        let r = g.ring().clone();
        // <(3,0),(c,d)> = 9d = 0, so the form is degenerate.
        assert!(!g.is_nondegenerate());
        let radical: Vec<u64> = g.radical().iter().map(|v| g.module().encode(v)).collect();
        assert_eq!(radical.len(), 9);
        assert!(radical.contains(&g.module().encode(&vec2(&r, 3, 0))));
        assert_eq!(g.determinant(), r.zero());
        assert!(!g.is_unimodular());
        assert_eq!(g.find_hyperbolic_pair(), None);
        let values: Vec<u32> = g.value_set().iter().map(|e| e.index()).collect();
        assert_eq!(values, vec![0, 3, 6]);
    }

    #[test]
    fn hyperbolic_pair_rescales_by_inverse() {
        let r = z(5);
        let g = GramForm::scaled(&r, 2, r.from_int(2)).unwrap();
        let (e, f) = g.find_hyperbolic_pair().unwrap();
        assert_eq!((e.clone(), f.clone()), (vec2(&r, 3, 0), vec2(&r, 0, 1)));
        assert_eq!(g.eval(&e, &f).unwrap(), r.one());
    }

    #[test]
    fn alternating_validation() {
        let r = z(5);
        let e = |m| r.from_int(m);
        assert_eq!(
            GramForm::from_matrix(&r, vec![vec![e(1), e(1)], vec![e(4), e(0)]]),
            Err(Error::NonzeroDiagonal(0))
        );
        assert_eq!(
            GramForm::from_matrix(&r, vec![vec![e(0), e(1)], vec![e(1), e(0)]]),
            Err(Error::NotSkewSymmetric(0, 1))
        );
        // Over F_2 the symmetric form [[0,1],[1,0]] is alternating.
        let f2 = z(2);
        assert!(GramForm::from_matrix(&f2, vec![vec![f2.zero(), f2.one()], vec![f2.one(), f2.zero()]]).is_ok());
        // Symmetric with nonzero diagonal is skew in char 2 but still rejected.
        assert_eq!(
            GramForm::from_matrix(&f2, vec![vec![f2.one(), f2.one()], vec![f2.one(), f2.zero()]]),
            Err(Error::NonzeroDiagonal(0))
        );
        assert_eq!(GramForm::standard(&r, 3), Err(Error::OddRankStandard(3)));
    }

    #[test]
    fn determinant_by_cofactors() {
        let r = z(7);
        let g = GramForm::standard(&r, 4).unwrap();
        assert_eq!(g.determinant(), r.one());
        let g = GramForm::scaled(&r, 4, r.from_int(3)).unwrap();
        assert_eq!(g.determinant(), r.from_int(81));
    }

    #[test]
    fn quotient_ring_gram_entries() {
        let f9 = Ring::new(RingDescriptor::gf9()).unwrap();
        let spec: FormSpec = serde_json::from_str(r#"{"gram":[[0,[0,1]],[[0,2],0]]}"#).unwrap();
        let g = GramForm::from_spec(&f9, 2, &spec).unwrap();
        assert_eq!(g.entry(0, 1), f9.from_coeffs(&[0, 1]));
        assert!(g.is_unimodular());
    }

    #[test]
    fn form_spec_variants() {
        let r = z(9);
        let parse = |s: &str| -> FormSpec { serde_json::from_str(s).unwrap() };
        let g = GramForm::from_spec(&r, 2, &parse(r#"{"form":"scaled","c":3}"#)).unwrap();
        assert_eq!(g, z9_example());
        assert!(GramForm::from_spec(&r, 2, &parse(r#"{"form":"standard"}"#)).is_ok());
        assert!(matches!(
            GramForm::from_spec(&r, 2, &parse(r#"{"form":"bogus"}"#)),
            Err(Error::InvalidForm(_))
        ));
        assert!(matches!(GramForm::from_spec(&r, 2, &parse("{}")), Err(Error::InvalidForm(_))));
        assert_eq!(
            GramForm::from_spec(&r, 3, &parse(r#"{"form":"standard"}"#)),
            Err(Error::OddRankStandard(3))
        );
    }
}
