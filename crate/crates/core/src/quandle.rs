//! Finite quandles as Cayley tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{AxiomError, Error, Result};

/// A bijection of `0..N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
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
                return Err(Error::NotAPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| self.apply(p) == i as u32)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// Cycle notation with fixed points omitted, e.g. `((1,0) (2,0))`;
    /// the identity is `()`. Falls back to indices when `labels` is `None`.
    pub fn cycle_notation(&self, labels: Option<&[String]>) -> String {
        let name = |i: u32| match labels {
            Some(l) => l[i as usize].clone(),
            None => i.to_string(),
        };
        let mut seen = vec![false; self.len()];
        let mut out = String::new();
        for start in 0..self.len() as u32 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur as usize] {
                seen[cur as usize] = true;
                cycle.push(name(cur));
                cur = self.apply(cur);
            }
            let _ = write!(out, "({})", cycle.join(" "));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

/// Ad-hoc quandle as written in config: `{"size":N,"op":[[..],..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleSpec {
    pub size: usize,
    pub op: Vec<Vec<u32>>,
}

/// A finite quandle on `0..N` with its operation and inverse operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    size: usize,
    op: Vec<u32>,
    inv_op: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteQuandle {
    /// Checks the three axioms exhaustively and builds the inverse table.
    /// Failures report the lexicographically first witness.
    pub fn check(table: &[Vec<u32>]) -> std::result::Result<FiniteQuandle, AxiomError> {
        let size = table.len();
        let mut op = Vec::with_capacity(size * size);
        for (x, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(AxiomError::MalformedTable { size, x, y: row.len().min(size) });
            }
            for (y, &v) in row.iter().enumerate() {
                if v as usize >= size {
                    return Err(AxiomError::MalformedTable { size, x, y });
                }
                op.push(v);
            }
        }
        Self::check_flat(size, op)
    }

    pub fn from_spec(spec: &QuandleSpec) -> std::result::Result<FiniteQuandle, AxiomError> {
        if spec.op.len() != spec.size {
            return Err(AxiomError::MalformedTable { size: spec.size, x: spec.op.len().min(spec.size), y: 0 });
        }
        Self::check(&spec.op)
    }

    fn check_flat(size: usize, op: Vec<u32>) -> std::result::Result<FiniteQuandle, AxiomError> {
        for x in 0..size {
            if op[x * size + x] as usize != x {
                return Err(AxiomError::NotIdempotent(x as u32));
            }
        }
        let inv_op = invert_columns(size, &op)?;
        let q = FiniteQuandle { size, op, inv_op, labels: None };
        if let Some((x, y, z)) = q.first_distributivity_failure() {
            return Err(AxiomError::NotSelfDistributive(x, y, z));
        }
        Ok(q)
    }

    /// Builds a quandle from tables already known to satisfy the axioms.
    pub(crate) fn from_trusted_tables(size: usize, op: Vec<u32>, inv_op: Vec<u32>) -> FiniteQuandle {
        FiniteQuandle { size, op, inv_op, labels: None }
    }

    pub(crate) fn first_distributivity_failure(&self) -> Option<(u32, u32, u32)> {
        let n = self.size as u32;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// `x ↦ x` table on `n` elements.
    pub fn trivial(n: usize) -> FiniteQuandle {
        let op: Vec<u32> = (0..n).flat_map(|x| std::iter::repeat_n(x as u32, n)).collect();
        FiniteQuandle { size: n, inv_op: op.clone(), op, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size);
        self.labels = Some(labels);
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: u32) -> String {
        match &self.labels {
            Some(l) => l[x as usize].clone(),
            None => x.to_string(),
        }
    }

    /// `x * y`.
    #[inline]
    pub fn op(&self, x: u32, y: u32) -> u32 {
        self.op[x as usize * self.size + y as usize]
    }

    /// `x *^{-1} y`.
    #[inline]
    pub fn inv_op(&self, x: u32, y: u32) -> u32 {
        self.inv_op[x as usize * self.size + y as usize]
    }

    pub fn op_table(&self) -> Vec<Vec<u32>> {
        self.op.chunks(self.size.max(1)).map(<[u32]>::to_vec).collect()
    }

    pub fn inv_op_table(&self) -> Vec<Vec<u32>> {
        self.inv_op.chunks(self.size.max(1)).map(<[u32]>::to_vec).collect()
    }

    /// The quandle `(X, *^{-1})`.
    pub fn dual(&self) -> FiniteQuandle {
        FiniteQuandle {
            size: self.size,
            op: self.inv_op.clone(),
            inv_op: self.op.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn is_kei(&self) -> bool {
        self.op == self.inv_op
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size as u32).all(|x| (0..self.size as u32).all(|y| self.op(x, y) == x))
    }

    /// The right translation `s_y : x ↦ x*y`.
    pub fn right_translation(&self, y: u32) -> Permutation {
        Permutation::from_images_unchecked((0..self.size as u32).map(|x| self.op(x, y)).collect())
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        self.preserves(p, |x, y| self.op(x, y))
    }

    /// `p(x*y) = p(x) *^{-1} p(y)` for all pairs.
    pub fn is_antiautomorphism(&self, p: &Permutation) -> bool {
        self.preserves(p, |x, y| self.inv_op(x, y))
    }

    fn preserves(&self, p: &Permutation, target: impl Fn(u32, u32) -> u32) -> bool {
        if p.len() != self.size {
            return false;
        }
        let n = self.size as u32;
        (0..n).all(|x| (0..n).all(|y| p.apply(self.op(x, y)) == target(p.apply(x), p.apply(y))))
    }

    /// First pair with `x*y != x*^{-1}y`.
    pub fn non_kei_witness(&self) -> Option<(u32, u32)> {
        let n = self.size as u32;
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.op(x, y) != self.inv_op(x, y))
    }
}

fn invert_columns(size: usize, op: &[u32]) -> std::result::Result<Vec<u32>, AxiomError> {
    let mut inv = vec![u32::MAX; size * size];
    for y in 0..size {
        for x in 0..size {
            let v = op[x * size + y] as usize;
            if inv[v * size + y] != u32::MAX {
                return Err(AxiomError::NotRightInvertible(y as u32));
            }
            inv[v * size + y] = x as u32;
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Dihedral quandle `x*y = 2y - x mod n`.
    fn dihedral(n: u32) -> FiniteQuandle {
        let table: Vec<Vec<u32>> = (0..n)
            .map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect())
            .collect();
        FiniteQuandle::check(&table).unwrap()
    }

    /// Alexander quandle `x*y = t x + (1-t) y` over `Z/n`.
    fn alexander(n: u32, t: u32) -> FiniteQuandle {
        let table: Vec<Vec<u32>> = (0..n)
            .map(|x| (0..n).map(|y| (t * x + (n + 1 - t) * y) % n).collect())
            .collect();
        FiniteQuandle::check(&table).unwrap()
    }

    #[test]
    fn trivial_table_is_a_quandle_and_a_kei() {
        let table: Vec<Vec<u32>> = (0..3).map(|x| vec![x; 3]).collect();
        let q = FiniteQuandle::check(&table).unwrap();
        assert_eq!(q, FiniteQuandle::trivial(3));
        assert!(q.is_kei());
        assert_eq!(q.dual(), q);
    }

    #[test]
    fn axiom_violations_carry_witnesses() {
        let mut table: Vec<Vec<u32>> = (0..3).map(|x| vec![x; 3]).collect();
        table[0][0] = 1;
        assert_eq!(FiniteQuandle::check(&table), Err(AxiomError::NotIdempotent(0)));

        // Column 1 collapses 0 and 2 onto 0.
        let table = vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 0, 2]];
        assert_eq!(FiniteQuandle::check(&table), Err(AxiomError::NotRightInvertible(1)));

        // Idempotent, right-invertible, not self-distributive.
        let table = vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0], vec![2, 3, 2, 2], vec![3, 2, 3, 3]];
        assert!(matches!(FiniteQuandle::check(&table), Err(AxiomError::NotSelfDistributive(..))));

        let table = vec![vec![0, 5], vec![1, 1]];
        assert!(matches!(FiniteQuandle::check(&table), Err(AxiomError::MalformedTable { .. })));
    }

    #[test]
    fn dihedral_quandles() {
        let r3 = dihedral(3);
        assert!(r3.is_kei());
        assert!(!r3.is_trivial());
        let id = Permutation::identity(3);
        assert!(r3.is_antiautomorphism(&id));
        assert!(r3.is_automorphism(&id));
    }

    #[test]
    fn alexander_quandle_is_not_a_kei() {
        let q = alexander(5, 2);
        assert!(!q.is_kei());
        assert!(q.non_kei_witness().is_some());
        assert!(!q.is_antiautomorphism(&Permutation::identity(5)));
        let dd = q.dual().dual();
        assert_eq!(dd, q);
        // The dual also passes the axiom check.
        assert!(FiniteQuandle::check(&q.dual().op_table()).is_ok());
    }

    #[test]
    fn every_permutation_of_a_trivial_quandle_is_both() {
        let q = FiniteQuandle::trivial(3);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(q.is_automorphism(&p) && q.is_antiautomorphism(&p));
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        let p = Permutation::new(vec![1, 0, 2, 4, 3]).unwrap();
        assert!(p.is_involution());
        assert_eq!(p.cycle_notation(None), "(0 1)(3 4)");
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        assert!(!c.is_involution());
        assert_eq!(c.inverse().images(), &[2, 0, 1]);
        assert_eq!(Permutation::identity(4).cycle_notation(None), "()");
        let labels: Vec<String> = ["(0,0)", "(1,0)", "(2,0)"].iter().map(|s| s.to_string()).collect();
        let swap = Permutation::new(vec![0, 2, 1]).unwrap();
        assert_eq!(swap.cycle_notation(Some(&labels)), "((1,0) (2,0))");
    }
}
