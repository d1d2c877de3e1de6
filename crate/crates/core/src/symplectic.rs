//! The symplectic quandle `x*y = x + <x,y>y` on a free module.

use rayon::prelude::*;

use crate::error::{AxiomError, Error, Result};
use crate::freemod::{GramForm, ModuleVector};
use crate::quandle::{FiniteQuandle, Permutation};
use crate::ring::Elem;

pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// The full self-distributivity scan is O(N^3); above this size the builder
/// only checks idempotence and the inverse identity.
const FULL_AXIOM_CHECK_LIMIT: usize = 512;

/// A symplectic quandle together with the form it was built from.
#[derive(Debug, Clone)]
pub struct SymplecticQuandle {
    form: GramForm,
    quandle: FiniteQuandle,
    coords: Vec<Vec<Elem>>,
}

/// `s_y` with the outcome of its exhaustive linearity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RightTranslation {
    pub permutation: Permutation,
    /// `s_y(x + x') = s_y(x) + s_y(x')` for all pairs.
    pub additive: bool,
    /// `s_y(r x) = r s_y(x)` for all scalars and vectors.
    pub homogeneous: bool,
}

impl SymplecticQuandle {
    pub fn build(form: &GramForm) -> Result<Self> {
        Self::build_with_cap(form, DEFAULT_SIZE_CAP)
    }

    pub fn build_with_cap(form: &GramForm, cap: usize) -> Result<Self> {
        let module = form.module();
        let size = module.size();
        if size > cap as u128 {
            return Err(Error::SizeCapExceeded { size, cap });
        }
        let n = size as usize;
        let ring = form.ring();
        let coords: Vec<Vec<Elem>> = module.vectors().map(|v| v.coords().to_vec()).collect();

        let mut op = vec![0u32; n * n];
        let mut inv_op = vec![0u32; n * n];
        op.par_chunks_mut(n.max(1))
            .zip(inv_op.par_chunks_mut(n.max(1)))
            .enumerate()
            .for_each(|(x, (op_row, inv_row))| {
                let xc = &coords[x];
                for (y, yc) in coords.iter().enumerate() {
                    let c = form.eval_coords(xc, yc);
                    let neg_c = ring.neg(c);
                    let plus: Vec<Elem> = xc.iter().zip(yc).map(|(&a, &b)| ring.add(a, ring.mul(c, b))).collect();
                    let minus: Vec<Elem> = xc.iter().zip(yc).map(|(&a, &b)| ring.add(a, ring.mul(neg_c, b))).collect();
                    op_row[y] = module.encode(&ModuleVector::new(plus)) as u32;
                    inv_row[y] = module.encode(&ModuleVector::new(minus)) as u32;
                }
            });

        for x in 0..n {
            if op[x * n + x] as usize != x {
                return Err(AxiomError::NotIdempotent(x as u32).into());
            }
        }
        for y in 0..n {
            if (0..n).any(|x| inv_op[op[x * n + y] as usize * n + y] as usize != x) {
                return Err(AxiomError::NotRightInvertible(y as u32).into());
            }
        }
        let labels = coords
            .iter()
            .map(|c| module.format(&ModuleVector::new(c.clone())))
            .collect();
        let quandle = FiniteQuandle::from_trusted_tables(n, op, inv_op).with_labels(labels);
        if n <= FULL_AXIOM_CHECK_LIMIT {
            if let Some((x, y, z)) = quandle.first_distributivity_failure() {
                return Err(AxiomError::NotSelfDistributive(x, y, z).into());
            }
        }
        Ok(SymplecticQuandle { form: form.clone(), quandle, coords })
    }

    pub fn form(&self) -> &GramForm {
        &self.form
    }

    pub fn quandle(&self) -> &FiniteQuandle {
        &self.quandle
    }

    pub fn size(&self) -> usize {
        self.quandle.size()
    }

    /// Coordinates of element `x`.
    pub fn coords(&self, x: u32) -> &[Elem] {
        &self.coords[x as usize]
    }

    pub fn index_of(&self, v: &ModuleVector) -> u32 {
        self.form.module().encode(v) as u32
    }

    pub fn vector(&self, x: u32) -> ModuleVector {
        ModuleVector::new(self.coords[x as usize].clone())
    }

    pub(crate) fn add_indices(&self, x: u32, y: u32) -> u32 {
        let r = self.form.ring();
        let sum = self.coords(x).iter().zip(self.coords(y)).map(|(&a, &b)| r.add(a, b)).collect();
        self.index_of(&ModuleVector::new(sum))
    }

    pub(crate) fn scale_index(&self, s: Elem, x: u32) -> u32 {
        let r = self.form.ring();
        let scaled = self.coords(x).iter().map(|&a| r.mul(s, a)).collect();
        self.index_of(&ModuleVector::new(scaled))
    }

    /// `<x,y>` on element indices.
    pub fn pairing(&self, x: u32, y: u32) -> Elem {
        self.form.eval_coords(self.coords(x), self.coords(y))
    }

    /// `s_y` and its exhaustive linearity checks.
    pub fn right_translation(&self, y: u32) -> RightTranslation {
        let permutation = self.quandle.right_translation(y);
        let n = self.size() as u32;
        let s = |x: u32| permutation.apply(x);
        let additive = (0..n).all(|x| {
            (0..n).all(|x2| s(self.add_indices(x, x2)) == self.add_indices(s(x), s(x2)))
        });
        let homogeneous = self.form.ring().elements().all(|r| {
            (0..n).all(|x| s(self.scale_index(r, x)) == self.scale_index(r, s(x)))
        });
        RightTranslation { permutation, additive, homogeneous }
    }
}

/// First pair with `<x,y>y != 0`, i.e. a witness that the quandle is not trivial.
pub fn nontriviality_witness(form: &GramForm) -> Option<(ModuleVector, ModuleVector)> {
    let module = form.module();
    let zero = module.zero();
    for x in module.vectors() {
        for y in module.vectors() {
            let c = form.eval_coords(x.coords(), y.coords());
            if module.scale(c, &y) != zero {
                return Some((x, y));
            }
        }
    }
    None
}

/// True iff `<x,y>y = 0` for all `x, y`.
pub fn is_trivial_symplectic(form: &GramForm) -> bool {
    nontriviality_witness(form).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Ring, RingDescriptor};

    fn z(n: u64) -> Ring {
        Ring::new(RingDescriptor::zmod(n)).unwrap()
    }

    fn v(r: &Ring, coords: &[i64]) -> ModuleVector {
        ModuleVector::new(coords.iter().map(|&c| r.from_int(c)).collect())
    }

    #[test]
    fn z9_example_product() {
        let r = z(9);
        let form = GramForm::scaled(&r, 2, r.from_int(3)).unwrap();
        let sq = SymplecticQuandle::build(&form).unwrap();
        let (e1, e2) = (sq.index_of(&v(&r, &[1, 0])), sq.index_of(&v(&r, &[0, 1])));
        let prod = sq.quandle().op(e1, e2);
        assert_eq!(sq.vector(prod), v(&r, &[1, 3]));
        assert_eq!(sq.quandle().label(prod), "(1,3)");
    }

    #[test]
    fn zero_and_self_products() {
        let r = z(5);
        let sq = SymplecticQuandle::build(&GramForm::standard(&r, 2).unwrap()).unwrap();
        let q = sq.quandle();
        for x in 0..q.size() as u32 {
            assert_eq!(q.op(x, 0), x);
            assert_eq!(q.op(x, x), x);
        }
    }

    #[test]
    fn zero_form_gives_trivial_quandle() {
        let r = z(5);
        let form = GramForm::zero(&r, 2);
        assert!(is_trivial_symplectic(&form));
        let sq = SymplecticQuandle::build(&form).unwrap();
        assert_eq!(sq.quandle().op_table(), FiniteQuandle::trivial(25).op_table());
    }

    #[test]
    fn nontrivial_witnesses() {
        let f2 = z(2);
        let form = GramForm::standard(&f2, 2).unwrap();
        assert!(!is_trivial_symplectic(&form));
        let sq = SymplecticQuandle::build(&form).unwrap();
        let p = sq.quandle().op(sq.index_of(&v(&f2, &[1, 0])), sq.index_of(&v(&f2, &[0, 1])));
        assert_eq!(sq.vector(p), v(&f2, &[1, 1]));

        let r = z(9);
        assert!(!is_trivial_symplectic(&GramForm::scaled(&r, 2, r.from_int(3)).unwrap()));
    }

    #[test]
    fn right_translation_on_f2_squared() {
        let f2 = z(2);
        let sq = SymplecticQuandle::build(&GramForm::standard(&f2, 2).unwrap()).unwrap();
        let idx = |a, b| sq.index_of(&v(&f2, &[a, b]));
        let s0 = sq.right_translation(0);
        assert!(s0.permutation.is_identity());
        let s = sq.right_translation(idx(0, 1));
        assert_eq!(s.permutation.apply(idx(1, 0)), idx(1, 1));
        assert_eq!(s.permutation.apply(idx(1, 1)), idx(1, 0));
        assert_eq!(s.permutation.apply(idx(0, 0)), idx(0, 0));
        assert_eq!(s.permutation.apply(idx(0, 1)), idx(0, 1));
        assert!(s.additive && s.homogeneous);
    }

    #[test]
    fn size_cap() {
        let r = z(11);
        let form = GramForm::standard(&r, 4).unwrap();
        assert!(matches!(
            SymplecticQuandle::build(&form),
            Err(Error::SizeCapExceeded { size: 14641, cap: 10_000 })
        ));
    }

    #[test]
    fn dual_equals_negated_form() {
        let r = z(5);
        let form = GramForm::standard(&r, 2).unwrap();
        let sq = SymplecticQuandle::build(&form).unwrap();
        let neg = SymplecticQuandle::build(&form.negated()).unwrap();
        assert_eq!(sq.quandle().dual().op_table(), neg.quandle().op_table());
    }
}
