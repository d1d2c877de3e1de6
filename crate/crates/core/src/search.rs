//! Good involutions: predicates, candidate sets, the propagating enumerator
//! and the brute-force linear classifier.
//!
//! A good involution `ρ` of `(X,*)` satisfies
//!
//! 1. `ρ(x*y) = ρ(x)*y` for all `x, y`;
//! 2. `x*ρ(y) = x*^{-1}y` for all `x, y`, i.e. `s_{ρ(y)} = s_y^{-1}`;
//!
//! and `ρ∘ρ = id`. The enumerator branches on the least unassigned element,
//! tries candidates from the column comparison above in ascending order, and
//! closes every assignment `ρ(x) = z` under symmetry (`ρ(z) = x`) and
//! condition 1 (`ρ(x*y) = z*y`). Because every branch point fixes the least
//! free index, depth-first order is lexicographic order on image arrays, so
//! the frontier split used for parallel work can be merged by concatenation.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quandle::{FiniteQuandle, Permutation};
use crate::ring::{Elem, Ring};
use crate::symplectic::SymplecticQuandle;

const UNASSIGNED: u32 = u32::MAX;

pub const DEFAULT_LINEAR_CAP: u128 = 10_000_000;

/// `true` iff `p` is an involution satisfying both conditions on every pair.
pub fn is_good_involution(q: &FiniteQuandle, p: &Permutation) -> bool {
    if p.len() != q.size() || !p.is_involution() {
        return false;
    }
    let n = q.size() as u32;
    (0..n).all(|x| {
        (0..n).all(|y| p.apply(q.op(x, y)) == q.op(p.apply(x), y) && q.op(x, p.apply(y)) == q.inv_op(x, y))
    })
}

/// `C(y) = { z : column z of * equals column y of *^{-1} }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSets {
    op_class: Vec<u32>,
    inv_class: Vec<u32>,
    sets: Vec<Vec<u32>>,
}

impl CandidateSets {
    pub fn get(&self, y: u32) -> &[u32] {
        &self.sets[y as usize]
    }

    #[inline]
    pub fn contains(&self, y: u32, z: u32) -> bool {
        self.op_class[z as usize] == self.inv_class[y as usize]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

pub fn candidate_sets(q: &FiniteQuandle) -> CandidateSets {
    let n = q.size() as u32;
    let column = |y: u32, f: &dyn Fn(u32, u32) -> u32| -> Vec<u32> { (0..n).map(|x| f(x, y)).collect() };
    let mut classes: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut members: Vec<Vec<u32>> = Vec::new();
    let op_class: Vec<u32> = (0..n)
        .map(|z| {
            let col = column(z, &|x, y| q.op(x, y));
            let next = classes.len() as u32;
            let class = *classes.entry(col).or_insert(next);
            if class == next {
                members.push(Vec::new());
            }
            members[class as usize].push(z);
            class
        })
        .collect();
    let mut sets = Vec::with_capacity(n as usize);
    let inv_class: Vec<u32> = (0..n)
        .map(|y| {
            let col = column(y, &|x, y| q.inv_op(x, y));
            match classes.get(&col) {
                Some(&c) => {
                    sets.push(members[c as usize].clone());
                    c
                }
                None => {
                    sets.push(Vec::new());
                    UNASSIGNED
                }
            }
        })
        .collect();
    CandidateSets { op_class, inv_class, sets }
}

/// Result of [`enumerate_good_involutions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Sorted lexicographically by image array.
    pub involutions: Vec<Permutation>,
    /// False when `limit` cut the enumeration short.
    pub complete: bool,
}

#[derive(Clone)]
struct Search<'a> {
    q: &'a FiniteQuandle,
    cand: &'a CandidateSets,
    images: Vec<u32>,
    trail: Vec<u32>,
    work: Vec<(u32, u32)>,
}

impl<'a> Search<'a> {
    fn new(q: &'a FiniteQuandle, cand: &'a CandidateSets) -> Self {
        Search { q, cand, images: vec![UNASSIGNED; q.size()], trail: Vec::new(), work: Vec::new() }
    }

    fn first_unassigned(&self) -> Option<u32> {
        self.images.iter().position(|&i| i == UNASSIGNED).map(|i| i as u32)
    }

    /// Sets `ρ(x) = z` and closes under symmetry and condition 1.
    /// Returns false on contradiction, leaving partial work on the trail.
    fn assign(&mut self, x: u32, z: u32) -> bool {
        let n = self.q.size() as u32;
        self.work.clear();
        self.work.push((x, z));
        while let Some((a, b)) = self.work.pop() {
            let current = self.images[a as usize];
            if current == b {
                continue;
            }
            if current != UNASSIGNED || !self.cand.contains(a, b) {
                return false;
            }
            self.images[a as usize] = b;
            self.trail.push(a);
            self.work.push((b, a));
            for y in 0..n {
                self.work.push((self.q.op(a, y), self.q.op(b, y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for a in self.trail.drain(mark..) {
            self.images[a as usize] = UNASSIGNED;
        }
    }

    fn dfs(&mut self, out: &mut Vec<Vec<u32>>, cap: usize) {
        if out.len() >= cap {
            return;
        }
        let Some(x) = self.first_unassigned() else {
            out.push(self.images.clone());
            return;
        };
        for &z in self.cand.get(x) {
            let mark = self.trail.len();
            if self.assign(x, z) {
                self.dfs(out, cap);
            }
            self.undo(mark);
            if out.len() >= cap {
                return;
            }
        }
    }

    /// Children of this node in candidate order; complete nodes have none.
    fn children(&self) -> Vec<Search<'a>> {
        let Some(x) = self.first_unassigned() else {
            return Vec::new();
        };
        self.cand
            .get(x)
            .iter()
            .filter_map(|&z| {
                let mut child = self.clone();
                child.trail.clear();
                child.assign(x, z).then_some(child)
            })
            .collect()
    }
}

/// Every good involution of `q` (or the first `limit` in lexicographic
/// order). Work is split across the current rayon pool; output does not
/// depend on the pool size.
pub fn enumerate_good_involutions(q: &FiniteQuandle, limit: Option<usize>) -> Enumeration {
    let cand = candidate_sets(q);
    let cap = limit.map_or(usize::MAX, |l| l.saturating_add(1));
    if cap == 0 || q.size() == 0 {
        let involutions = if q.size() == 0 && cap > 0 { vec![Permutation::identity(0)] } else { Vec::new() };
        return finish(involutions, limit);
    }

    let target = rayon::current_num_threads() * 4;
    let mut frontier = vec![Search::new(q, &cand)];
    while frontier.len() < target {
        if frontier.iter().all(|s| s.first_unassigned().is_none()) {
            break;
        }
        frontier = frontier
            .into_iter()
            .flat_map(|s| if s.first_unassigned().is_none() { vec![s] } else { s.children() })
            .collect();
    }

    let found: Vec<Vec<Vec<u32>>> = frontier
        .into_par_iter()
        .map(|mut s| {
            let mut out = Vec::new();
            s.dfs(&mut out, cap);
            out
        })
        .collect();
    let involutions = found
        .into_iter()
        .flatten()
        .take(cap)
        .map(Permutation::from_images_unchecked)
        .collect();
    finish(involutions, limit)
}

fn finish(mut involutions: Vec<Permutation>, limit: Option<usize>) -> Enumeration {
    let complete = limit.is_none_or(|l| involutions.len() <= l);
    if let Some(l) = limit {
        involutions.truncate(l);
    }
    Enumeration { involutions, complete }
}

/// A `k x k` matrix over a ring acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMap {
    ring: Ring,
    rank: usize,
    entries: Vec<Elem>,
}

impl LinearMap {
    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let rank = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch { expected: rank, got: bad.len() });
        }
        Ok(LinearMap { ring: ring.clone(), rank, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(ring, rows.iter().map(|r| r.iter().map(|&m| ring.from_int(m)).collect()).collect())
    }

    pub fn identity(ring: &Ring, rank: usize) -> Self {
        Self::scalar(ring, rank, ring.one())
    }

    pub fn scalar(ring: &Ring, rank: usize, c: Elem) -> Self {
        let mut entries = vec![ring.zero(); rank * rank];
        for i in 0..rank {
            entries[i * rank + i] = c;
        }
        LinearMap { ring: ring.clone(), rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.entries.chunks(self.rank.max(1)).map(<[Elem]>::to_vec).collect()
    }

    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        let r = &self.ring;
        (0..self.rank)
            .map(|i| x.iter().enumerate().fold(r.zero(), |acc, (j, &xj)| r.add(acc, r.mul(self.entry(i, j), xj))))
            .collect()
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        let r = &self.ring;
        let k = self.rank;
        let mut entries = vec![r.zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                entries[i * k + j] = (0..k).fold(r.zero(), |acc, l| r.add(acc, r.mul(self.entry(i, l), other.entry(l, j))));
            }
        }
        LinearMap { ring: r.clone(), rank: k, entries }
    }

    /// `A^2 = I`.
    pub fn is_involution(&self) -> bool {
        self.compose(self) == LinearMap::identity(&self.ring, self.rank)
    }

    /// Entries formatted with the ring's printer, row by row.
    pub fn format_rows(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|row| row.iter().map(|&e| self.ring.format(e)).collect()).collect()
    }
}

/// Exhaustively evaluated properties of a linear map on a symplectic quandle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LinearFlags {
    pub involution: bool,
    pub condition1: bool,
    pub condition2: bool,
    pub symplectic: bool,
    pub anti_symplectic: bool,
    pub good: bool,
}

/// Images of every module element under `a`, as element indices.
pub fn linear_images(sq: &SymplecticQuandle, a: &LinearMap) -> Result<Vec<u32>> {
    if a.rank() != sq.form().rank() {
        return Err(Error::DimensionMismatch { expected: sq.form().rank(), got: a.rank() });
    }
    Ok((0..sq.size() as u32)
        .map(|x| sq.index_of(&crate::freemod::ModuleVector::new(a.apply(sq.coords(x)))))
        .collect())
}

pub fn classify_linear_involution(sq: &SymplecticQuandle, a: &LinearMap) -> Result<LinearFlags> {
    let images = linear_images(sq, a)?;
    Ok(flags_from_images(sq, a.is_involution(), &images))
}

fn flags_from_images(sq: &SymplecticQuandle, involution: bool, images: &[u32]) -> LinearFlags {
    let q = sq.quandle();
    let ring = sq.form().ring();
    let n = q.size() as u32;
    let img = |x: u32| images[x as usize];
    let all_pairs = |pred: &dyn Fn(u32, u32) -> bool| (0..n).all(|x| (0..n).all(|y| pred(x, y)));
    let condition1 = all_pairs(&|x, y| img(q.op(x, y)) == q.op(img(x), y));
    let condition2 = all_pairs(&|x, y| q.op(x, img(y)) == q.inv_op(x, y));
    let symplectic = all_pairs(&|x, y| sq.pairing(img(x), img(y)) == sq.pairing(x, y));
    let anti_symplectic = all_pairs(&|x, y| sq.pairing(img(x), img(y)) == ring.neg(sq.pairing(x, y)));
    LinearFlags {
        involution,
        condition1,
        condition2,
        symplectic,
        anti_symplectic,
        good: involution && condition1 && condition2,
    }
}

/// Every `k x k` matrix `A` over the ring, in index order (entry `(0,0)`
/// least significant), passed through `keep` on the current rayon pool.
pub fn scan_matrices<F>(ring: &Ring, rank: usize, cap: u128, keep: F) -> Result<Vec<LinearMap>>
where
    F: Fn(&LinearMap) -> bool + Sync,
{
    let order = ring.order() as u128;
    let size = order.checked_pow((rank * rank) as u32).unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::SearchCapExceeded { size, cap });
    }
    let found = (0..size as u64)
        .into_par_iter()
        .filter_map(|mut idx| {
            let entries = (0..rank * rank)
                .map(|_| {
                    let e = Elem::from_index((idx % order as u64) as u32);
                    idx /= order as u64;
                    e
                })
                .collect();
            let a = LinearMap { ring: ring.clone(), rank, entries };
            keep(&a).then_some(a)
        })
        .collect();
    Ok(found)
}

/// All linear good involutions, by brute force over every matrix.
pub fn enumerate_linear_good_involutions(sq: &SymplecticQuandle, cap: u128) -> Result<Vec<LinearMap>> {
    scan_matrices(sq.form().ring(), sq.form().rank(), cap, |a| {
        a.is_involution()
            && linear_images(sq, a).is_ok_and(|images| flags_from_images(sq, true, &images).good)
    })
}

/// All linear involutions (`A^2 = I`) with their flags.
pub fn linear_involutions_with_flags(sq: &SymplecticQuandle, cap: u128) -> Result<Vec<(LinearMap, LinearFlags)>> {
    let maps = scan_matrices(sq.form().ring(), sq.form().rank(), cap, LinearMap::is_involution)?;
    maps.into_iter()
        .map(|a| {
            let images = linear_images(sq, &a)?;
            let flags = flags_from_images(sq, true, &images);
            Ok((a, flags))
        })
        .collect()
}
