//! Sparse row reduction: incremental semi-echelon insertion followed by
//! back-substitution to reduced row echelon form.

use std::collections::BTreeMap;

use super::scalar::Scalar;
use super::sparse::{Accumulator, LinMap, SparseVec};

/// Rows whose pivot is their smallest column, normalized to leading 1.
/// Rows may still contain entries in later pivot columns until
/// [`Echelon::finish`] back-substitutes.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

fn reduce_with(
    rows: &[SparseVec],
    pivot_row: &[Option<usize>],
    v: &SparseVec,
    limit: usize,
) -> SparseVec {
    if v.iter().all(|(i, _)| i >= limit || pivot_row[i].is_none()) {
        return v.clone();
    }
    let mut work: BTreeMap<usize, Scalar> = v.iter().map(|(i, c)| (i, c.clone())).collect();
    let mut cursor = 0;
    while let Some((&c, _)) = work.range(cursor..).next() {
        if c >= limit {
            break;
        }
        cursor = c + 1;
        let Some(r) = pivot_row[c] else { continue };
        let coef = work.remove(&c).unwrap();
        for (j, a) in rows[r].iter().skip(1) {
            let delta = a * &coef;
            match work.get_mut(&j) {
                Some(x) => {
                    *x -= &delta;
                    if x.is_zero() {
                        work.remove(&j);
                    }
                }
                None => {
                    work.insert(j, -delta);
                }
            }
        }
    }
    SparseVec::from_sorted(work.into_iter().collect())
}

impl Echelon {
    pub fn new(ncols: usize) -> Echelon {
        Echelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        reduce_with(&self.rows, &self.pivot_row, v, self.ncols)
    }

    /// Insert a row; returns true when it was independent of the rows so far.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.ncols));
        let r = self.reduce(v);
        let Some(p) = r.first_index() else { return false };
        let lead = r.get(p).inv().expect("nonzero leading entry");
        self.pivot_row[p] = Some(self.rows.len());
        self.rows.push(r.scale(&lead));
        true
    }

    /// Back-substitute to reduced row echelon form, rows ordered by pivot.
    pub fn finish(self) -> Rref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].first_index().unwrap());
        let mut rows: Vec<SparseVec> = order.iter().map(|&r| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = rows.iter().map(|r| r.first_index().unwrap()).collect();
        let mut pivot_row = vec![None; self.ncols];
        for (k, &p) in pivots.iter().enumerate() {
            pivot_row[p] = Some(k);
        }
        // Rows with larger pivots are already reduced when we reach row k, and
        // they contain no pivot columns except their own.
        for k in (0..rows.len()).rev() {
            let row = &rows[k];
            if row.iter().skip(1).all(|(c, _)| pivot_row[c].is_none()) {
                continue;
            }
            let mut acc = Accumulator::new();
            acc.add_vec(row);
            for (c, a) in row.iter().skip(1) {
                if let Some(r) = pivot_row[c] {
                    acc.add_scaled(&-a, &rows[r]);
                }
            }
            rows[k] = acc.finish();
        }
        Rref { ncols: self.ncols, rows, pivots, pivot_row }
    }
}

/// Reduced row echelon form of a set of rows.
#[derive(Clone, Debug)]
pub struct Rref {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl Rref {
    pub fn from_rows<'a, I: IntoIterator<Item = &'a SparseVec>>(ncols: usize, rows: I) -> Rref {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e.finish()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn pivot_row(&self, col: usize) -> Option<usize> {
        self.pivot_row[col]
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_none()).collect()
    }

    /// Normal form of `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        reduce_with(&self.rows, &self.pivot_row, v, self.ncols)
    }

    /// Reduce only pivot columns below `limit`.
    pub fn reduce_below(&self, v: &SparseVec, limit: usize) -> SparseVec {
        reduce_with(&self.rows, &self.pivot_row, v, limit)
    }

    /// Coordinates of `v` in the row basis, or `None` outside the row space.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        let coords: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(c, a)| self.pivot_row[c].map(|r| (r, a.clone())))
            .collect();
        let coords = SparseVec::from_pairs(coords);
        let mut acc = Accumulator::new();
        acc.add_vec(v);
        for (r, a) in coords.iter() {
            acc.add_scaled(&-a, &self.rows[r]);
        }
        acc.finish().is_zero().then_some(coords)
    }

    /// Null space of the rows viewed as equations, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut by_col: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (k, row) in self.rows.iter().enumerate() {
            for (c, a) in row.iter().skip(1) {
                by_col[c].push((self.pivots[k], -a));
            }
        }
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut entries = std::mem::take(&mut by_col[f]);
                entries.push((f, Scalar::one()));
                SparseVec::from_pairs(entries)
            })
            .collect()
    }
}

pub fn rank(m: &LinMap) -> usize {
    Rref::from_rows(m.cod, &m.cols).rank()
}

/// Basis of ker(m), in the canonical RREF form.
pub fn kernel(m: &LinMap) -> Vec<SparseVec> {
    Rref::from_rows(m.dom, &m.rows()).kernel()
}

/// Some solution of `m x = b`, free variables set to zero.
pub fn solve(m: &LinMap, b: &SparseVec) -> Option<SparseVec> {
    let n = m.dom;
    let rhs: Vec<(usize, Scalar)> = b.iter().map(|(i, c)| (i, c.clone())).collect();
    let mut rows = m.rows();
    for (i, c) in rhs {
        rows[i] = rows[i].add(&SparseVec::single(n, c));
    }
    let rref = Rref::from_rows(n + 1, &rows);
    if rref.is_pivot(n) {
        return None;
    }
    let x = rref
        .rows()
        .iter()
        .zip(rref.pivots())
        .map(|(row, &p)| (p, row.get(n)))
        .filter(|(_, c)| !c.is_zero());
    Some(SparseVec::from_pairs(x))
}

/// Two-sided inverse of a square map.
pub fn inverse(m: &LinMap) -> Option<LinMap> {
    if m.dom != m.cod {
        return None;
    }
    let n = m.dom;
    let rows: Vec<SparseVec> = m
        .rows()
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.add(&SparseVec::unit(n + i)))
        .collect();
    let rref = Rref::from_rows(2 * n, &rows);
    if rref.pivots().iter().filter(|&&p| p < n).count() < n {
        return None;
    }
    let inv_rows: Vec<SparseVec> = rref.rows()[..n]
        .iter()
        .map(|r| SparseVec::from_pairs(r.iter().filter(|(c, _)| *c >= n).map(|(c, a)| (c - n, a.clone()))))
        .collect();
    Some(LinMap { dom: n, cod: n, cols: inv_rows }.transpose())
}

/// Coordinates with respect to a fixed list of vectors, which must be
/// linearly independent for [`Embedding::preimage`] to be unique.
#[derive(Clone, Debug)]
pub struct Embedding {
    dom: usize,
    cod: usize,
    rref: Rref,
}

impl Embedding {
    pub fn new(map: &LinMap) -> Embedding {
        let (dom, cod) = (map.dom, map.cod);
        let tracked: Vec<SparseVec> = map
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| c.add(&SparseVec::unit(cod + j)))
            .collect();
        Embedding { dom, cod, rref: Rref::from_rows(cod + dom, &tracked) }
    }

    pub fn is_injective(&self) -> bool {
        self.rref.pivots().iter().all(|&p| p < self.cod)
    }

    pub fn image_rank(&self) -> usize {
        self.rref.pivots().iter().filter(|&&p| p < self.cod).count()
    }

    /// `x` with `map x = v`, or `None` when `v` is outside the image.
    pub fn preimage(&self, v: &SparseVec) -> Option<SparseVec> {
        let r = self.rref.reduce_below(v, self.cod);
        if r.iter().any(|(c, _)| c < self.cod) {
            return None;
        }
        Some(SparseVec::from_pairs(r.iter().map(|(c, a)| (c - self.cod, -a))))
    }

    pub fn dom(&self) -> usize {
        self.dom
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> LinMap {
        LinMap::from_rows(&rows.iter().map(|r| r.iter().map(|&c| Scalar::int(c)).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&m(&[&[1, 0], &[0, 1]])).is_empty());
        assert_eq!(kernel(&m(&[&[0, 0], &[0, 0]])).len(), 2);
        let k = kernel(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], SparseVec::from_pairs([(0, Scalar::int(-1)), (1, Scalar::int(1))]));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let inv = inverse(&a).unwrap();
        assert!(a.compose(&inv).is_identity());
        assert!(inv.compose(&a).is_identity());
        let b = SparseVec::from_pairs([(0, Scalar::int(1)), (2, Scalar::int(5))]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.apply(&x), b);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &SparseVec::unit(0)).is_none());
    }

    #[test]
    fn rref_rows_are_fully_reduced() {
        let rows = [
            SparseVec::from_pairs([(2, Scalar::int(1)), (3, Scalar::int(1))]),
            SparseVec::from_pairs([(0, Scalar::int(1)), (2, Scalar::int(1))]),
            SparseVec::from_pairs([(1, Scalar::int(1)), (3, Scalar::int(2))]),
        ];
        let r = Rref::from_rows(4, &rows);
        for row in r.rows() {
            for (c, _) in row.iter().skip(1) {
                assert!(!r.is_pivot(c));
            }
        }
        assert_eq!(r.free_columns(), vec![3]);
    }

    #[test]
    fn embedding_preimage() {
        let a = m(&[&[1, 0], &[1, 1], &[0, 2]]);
        let e = Embedding::new(&a);
        assert!(e.is_injective());
        let x = SparseVec::from_pairs([(0, Scalar::int(3)), (1, Scalar::frac(-1, 2))]);
        assert_eq!(e.preimage(&a.apply(&x)), Some(x));
        assert_eq!(e.preimage(&SparseVec::unit(0)), None);
    }
}
