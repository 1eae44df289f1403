//! Quotient spaces `ambient / span(relations)` with the pivot-free section.

use super::rref::{Echelon, Rref};
use super::sparse::{Accumulator, LinMap, SparseVec};

#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient_dim: usize,
    relation_count: usize,
    rref: Rref,
    /// Quotient coordinate k is represented by ambient basis vector `free[k]`.
    free: Vec<usize>,
    proj_cols: Vec<SparseVec>,
}

impl QuotientSpace {
    pub fn new(ambient_dim: usize, relations: &[SparseVec]) -> QuotientSpace {
        let mut e = Echelon::new(ambient_dim);
        for r in relations {
            e.insert(r);
        }
        let q = QuotientSpace::from_echelon(e, relations.len());
        debug_assert!(relations.iter().all(|r| q.project(r).is_zero()));
        q
    }

    /// Build from relations streamed into an echelon by the caller.
    pub fn from_echelon(e: Echelon, relation_count: usize) -> QuotientSpace {
        let ambient_dim = e.ncols();
        let rref = e.finish();
        let free = rref.free_columns();
        let mut index = vec![usize::MAX; ambient_dim];
        for (k, &f) in free.iter().enumerate() {
            index[f] = k;
        }
        let mut proj_cols = vec![SparseVec::new(); ambient_dim];
        for &f in &free {
            proj_cols[f] = SparseVec::unit(index[f]);
        }
        for (row, &p) in rref.rows().iter().zip(rref.pivots()) {
            proj_cols[p] = SparseVec::from_pairs(row.iter().skip(1).map(|(c, a)| (index[c], -a)));
        }
        QuotientSpace { ambient_dim, relation_count, rref, free, proj_cols }
    }

    pub fn trivial(ambient_dim: usize) -> QuotientSpace {
        QuotientSpace::new(ambient_dim, &[])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn relation_count(&self) -> usize {
        self.relation_count
    }

    /// Reduced relation basis (RREF rows).
    pub fn relation_basis(&self) -> &[SparseVec] {
        self.rref.rows()
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free
    }

    /// Projection of an ambient basis vector.
    pub fn project_basis(&self, i: usize) -> &SparseVec {
        &self.proj_cols[i]
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_scaled(c, &self.proj_cols[i]);
        }
        acc.finish()
    }

    pub fn section_basis(&self, k: usize) -> usize {
        self.free[k]
    }

    pub fn lift(&self, q: &SparseVec) -> SparseVec {
        SparseVec::from_pairs(q.iter().map(|(k, c)| (self.free[k], c.clone())))
    }

    pub fn proj_matrix(&self) -> LinMap {
        LinMap::from_cols(self.dim(), self.proj_cols.clone())
    }

    pub fn sect_matrix(&self) -> LinMap {
        LinMap::from_fn(self.dim(), self.ambient_dim, |k| SparseVec::unit(self.free[k]))
    }

    /// True when `v` lies in the span of the relations.
    pub fn is_relation(&self, v: &SparseVec) -> bool {
        self.project(v).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Scalar;

    #[test]
    fn no_relations_is_identity() {
        let q = QuotientSpace::trivial(3);
        assert_eq!(q.dim(), 3);
        assert!(q.proj_matrix().is_identity());
        assert!(q.sect_matrix().is_identity());
    }

    #[test]
    fn one_relation_drops_a_dimension() {
        let r = SparseVec::from_pairs([(0, Scalar::int(1)), (1, Scalar::int(-1))]);
        let q = QuotientSpace::new(2, std::slice::from_ref(&r));
        assert_eq!(q.dim(), 1);
        assert!(q.project(&r).is_zero());
        assert!(q.proj_matrix().compose(&q.sect_matrix()).is_identity());
        assert_eq!(q.project(&SparseVec::unit(0)), q.project(&SparseVec::unit(1)));
    }
}
