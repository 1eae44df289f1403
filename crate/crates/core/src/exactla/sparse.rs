//! Sparse vectors, column-sparse linear maps and coefficient tensors.

use std::collections::BTreeMap;
use std::fmt;

use super::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> SparseVec {
        SparseVec { entries: vec![(i, Scalar::one())] }
    }

    pub fn single(i: usize, c: Scalar) -> SparseVec {
        if c.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, c)] }
        }
    }

    /// Build from unsorted pairs, summing repeated indices.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    /// Build from already sorted, zero-free, duplicate-free entries.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> SparseVec {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, c)| !c.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> SparseVec {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Scalar {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn first_index(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec { entries: self.entries.iter().map(|(i, a)| (*i, a * c)).collect() }
    }

    /// `self + c·other`, merging sorted entry lists.
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * c));
                        b.next();
                    } else {
                        let s = x + &(y * c);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::one(), other)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(&Scalar::int(-1), other)
    }

    pub fn neg(&self) -> SparseVec {
        self.scale(&Scalar::int(-1))
    }

    pub fn dot(&self, other: &SparseVec) -> Scalar {
        let mut s = Scalar::zero();
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        while let (Some((i, x)), Some((j, y))) = (a.peek(), b.peek()) {
            if i < j {
                a.next();
            } else if j < i {
                b.next();
            } else {
                s += &(x * y);
                a.next();
                b.next();
            }
        }
        s
    }

    /// Reindex entries through `f`, summing collisions.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }

    /// Kronecker product with flattened index `i * dim_other + j`.
    pub fn kron(&self, other: &SparseVec, dim_other: usize) -> SparseVec {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                entries.push((i * dim_other + j, a * b));
            }
        }
        SparseVec { entries }
    }
}

impl fmt::Display for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, c)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {c}")?;
        }
        write!(f, "]")
    }
}

/// Accumulates scattered contributions into a sparse vector.
#[derive(Default)]
pub struct Accumulator {
    map: BTreeMap<usize, Scalar>,
}

impl Accumulator {
    pub fn new() -> Accumulator {
        Accumulator { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => *v += c,
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (i, a) in v.iter() {
            self.add(i, &(a * c));
        }
    }

    pub fn add_vec(&mut self, v: &SparseVec) {
        for (i, a) in v.iter() {
            self.add(i, a);
        }
    }

    pub fn finish(self) -> SparseVec {
        SparseVec { entries: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

/// Linear map stored by columns: `cols[j]` is the image of basis vector j.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinMap {
    pub dom: usize,
    pub cod: usize,
    pub cols: Vec<SparseVec>,
}

impl LinMap {
    pub fn zero(dom: usize, cod: usize) -> LinMap {
        LinMap { dom, cod, cols: vec![SparseVec::new(); dom] }
    }

    pub fn identity(n: usize) -> LinMap {
        LinMap { dom: n, cod: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_cols(cod: usize, cols: Vec<SparseVec>) -> LinMap {
        debug_assert!(cols.iter().all(|c| c.max_index().is_none_or(|m| m < cod)));
        LinMap { dom: cols.len(), cod, cols }
    }

    pub fn from_fn(dom: usize, cod: usize, f: impl Fn(usize) -> SparseVec) -> LinMap {
        LinMap::from_cols(cod, (0..dom).map(f).collect())
    }

    /// Build from dense rows (`rows[i][j]` is entry (i, j)).
    pub fn from_rows(rows: &[Vec<Scalar>]) -> LinMap {
        let cod = rows.len();
        let dom = rows.first().map_or(0, |r| r.len());
        let mut cols: Vec<Accumulator> = Vec::new();
        cols.resize_with(dom, Accumulator::new);
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                cols[j].add(i, c);
            }
        }
        LinMap { dom, cod, cols: cols.into_iter().map(Accumulator::finish).collect() }
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_scaled(c, &self.cols[j]);
        }
        acc.finish()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinMap) -> LinMap {
        assert_eq!(other.cod, self.dom, "composition dimension mismatch");
        LinMap { dom: other.dom, cod: self.cod, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        LinMap {
            dom: self.dom,
            cod: self.cod,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &LinMap) -> LinMap {
        assert_eq!((self.dom, self.cod), (other.dom, other.cod));
        LinMap {
            dom: self.dom,
            cod: self.cod,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinMap {
        LinMap { dom: self.dom, cod: self.cod, cols: self.cols.iter().map(|v| v.scale(c)).collect() }
    }

    /// Rows as sparse vectors over the domain.
    pub fn rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cod];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, c) in col.iter() {
                rows[i].push((j, c.clone()));
            }
        }
        rows.into_iter().map(SparseVec::from_sorted).collect()
    }

    pub fn transpose(&self) -> LinMap {
        LinMap { dom: self.cod, cod: self.dom, cols: self.rows() }
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.cols.iter().enumerate().all(|(j, c)| *c == SparseVec::unit(j))
    }

    /// Kronecker product: (A ⊗ B)(e_i ⊗ e_j) = A e_i ⊗ B e_j.
    pub fn kron(&self, other: &LinMap) -> LinMap {
        let mut cols = Vec::with_capacity(self.dom * other.dom);
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.kron(b, other.cod));
            }
        }
        LinMap { dom: self.dom * other.dom, cod: self.cod * other.cod, cols }
    }

    /// First column where the maps differ.
    pub fn first_difference(&self, other: &LinMap) -> Option<usize> {
        if self.dom != other.dom || self.cod != other.cod {
            return Some(0);
        }
        (0..self.dom).find(|&j| self.cols[j] != other.cols[j])
    }
}

/// Flattened multi-index helpers, first slot most significant.
pub fn flatten(dims: &[usize], idx: &[usize]) -> usize {
    debug_assert_eq!(dims.len(), idx.len());
    idx.iter().zip(dims).fold(0, |acc, (i, d)| {
        debug_assert!(i < d);
        acc * d + i
    })
}

pub fn unflatten(dims: &[usize], mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        out[k] = flat % dims[k];
        flat /= dims[k];
    }
    out
}

/// Multilinear map with `dims.len()` input slots and `out_dim` outputs.
/// Functionals (k-valued maps) have `out_dim == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffTensor {
    pub dims: Vec<usize>,
    pub out_dim: usize,
    pub map: LinMap,
}

impl CoeffTensor {
    pub fn new(dims: Vec<usize>, out_dim: usize) -> CoeffTensor {
        let n = dims.iter().product();
        CoeffTensor { dims, out_dim, map: LinMap::zero(n, out_dim) }
    }

    pub fn from_map(dims: Vec<usize>, map: LinMap) -> CoeffTensor {
        assert_eq!(dims.iter().product::<usize>(), map.dom, "tensor domain mismatch");
        CoeffTensor { dims, out_dim: map.cod, map }
    }

    pub fn from_fn(dims: Vec<usize>, out_dim: usize, f: impl Fn(&[usize]) -> SparseVec) -> CoeffTensor {
        let n: usize = dims.iter().product();
        let map = LinMap::from_fn(n, out_dim, |flat| f(&unflatten(&dims, flat)));
        CoeffTensor { dims, out_dim, map }
    }

    /// Functional from scalar values on multi-indices.
    pub fn functional(dims: Vec<usize>, f: impl Fn(&[usize]) -> Scalar) -> CoeffTensor {
        CoeffTensor::from_fn(dims, 1, |idx| SparseVec::single(0, f(idx)))
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    pub fn set(&mut self, idx: &[usize], value: SparseVec) {
        let flat = flatten(&self.dims, idx);
        self.map.cols[flat] = value;
    }

    pub fn at(&self, idx: &[usize]) -> &SparseVec {
        &self.map.cols[flatten(&self.dims, idx)]
    }

    /// Value of a functional on basis inputs.
    pub fn scalar_at(&self, idx: &[usize]) -> Scalar {
        self.at(idx).get(0)
    }

    /// Evaluate on vectors, one per slot.
    pub fn eval(&self, args: &[&SparseVec]) -> SparseVec {
        assert_eq!(args.len(), self.dims.len());
        let mut acc = Accumulator::new();
        let mut idx = vec![0usize; args.len()];
        self.eval_rec(args, 0, &Scalar::one(), &mut idx, &mut acc);
        acc.finish()
    }

    fn eval_rec(&self, args: &[&SparseVec], k: usize, coef: &Scalar, idx: &mut Vec<usize>, acc: &mut Accumulator) {
        if k == args.len() {
            acc.add_scaled(coef, self.at(idx));
            return;
        }
        for (i, c) in args[k].iter() {
            idx[k] = i;
            self.eval_rec(args, k + 1, &(coef * c), idx, acc);
        }
    }

    pub fn eval_scalar(&self, args: &[&SparseVec]) -> Scalar {
        self.eval(args).get(0)
    }

    /// Number of stored nonzero coefficients.
    pub fn nnz(&self) -> usize {
        self.map.cols.iter().map(SparseVec::nnz).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, c)| (i, Scalar::int(c))))
    }

    #[test]
    fn add_scaled_cancels() {
        let a = v(&[(0, 1), (3, 2)]);
        let b = v(&[(3, 1), (5, 1)]);
        let c = a.add_scaled(&Scalar::int(-2), &b);
        assert_eq!(c, v(&[(0, 1), (5, -2)]));
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn from_pairs_merges_and_drops_zeros() {
        let a = v(&[(2, 1), (0, 3), (2, -1)]);
        assert_eq!(a.entries(), &[(0, Scalar::int(3))]);
    }

    #[test]
    fn compose_and_kron() {
        let a = LinMap::from_rows(&[vec![Scalar::int(1), Scalar::int(2)], vec![Scalar::int(0), Scalar::int(1)]]);
        let id = LinMap::identity(2);
        assert_eq!(a.compose(&id), a);
        let k = a.kron(&id);
        assert_eq!(k.dom, 4);
        assert_eq!(k.entry(1, 3), Scalar::int(2));
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn flatten_round_trip() {
        let dims = [3, 4, 2];
        for f in 0..24 {
            assert_eq!(flatten(&dims, &unflatten(&dims, f)), f);
        }
    }

    #[test]
    fn tensor_eval_is_multilinear() {
        let t = CoeffTensor::from_fn(vec![2, 2], 1, |i| SparseVec::single(0, Scalar::int((i[0] * 2 + i[1] + 1) as i64)));
        let x = v(&[(0, 1), (1, 1)]);
        let y = v(&[(1, 2)]);
        // 2·(t[0][1] + t[1][1]) = 2·(2 + 4)
        assert_eq!(t.eval_scalar(&[&x, &y]), Scalar::int(12));
    }
}
