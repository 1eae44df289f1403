//! Convolution products of linear maps from a coalgebra to an algebra.

use super::rref::solve;
use super::sparse::{Accumulator, CoeffTensor, LinMap, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("map is not convolution invertible")]
pub struct NotInvertible;

/// Raw coalgebra and algebra structure tensors entering a convolution.
#[derive(Clone, Copy)]
pub struct ConvolutionSetting<'a> {
    /// C → C⊗C
    pub comul: &'a CoeffTensor,
    /// functional on C
    pub counit: &'a SparseVec,
    /// A⊗A → A
    pub mul: &'a CoeffTensor,
    pub unit: &'a SparseVec,
}

impl ConvolutionSetting<'_> {
    fn dims(&self) -> (usize, usize) {
        (self.comul.dims[0], self.mul.out_dim)
    }

    /// c ↦ ε(c)·1
    pub fn unit_map(&self) -> LinMap {
        let (dc, da) = self.dims();
        LinMap::from_fn(dc, da, |c| self.unit.scale(&self.counit.get(c)))
    }

    /// (f⋆g)(c) = f(c₁)g(c₂)
    pub fn convolve(&self, f: &LinMap, g: &LinMap) -> LinMap {
        let (dc, da) = self.dims();
        LinMap::from_fn(dc, da, |c| {
            let mut acc = Accumulator::new();
            for (flat, coef) in self.comul.map.col(c).iter() {
                let (c1, c2) = (flat / dc, flat % dc);
                let prod = self.mul.eval(&[f.col(c1), g.col(c2)]);
                acc.add_scaled(coef, &prod);
            }
            acc.finish()
        })
    }

    /// Solve f⋆g = η∘ε for g, then confirm g⋆f = η∘ε.
    pub fn inverse(&self, f: &LinMap) -> Result<LinMap, NotInvertible> {
        let (dc, da) = self.dims();
        let n = dc * da;
        // variable (c2, y) ↦ c2·da + y ; equation (c, a) ↦ c·da + a
        let mut cols: Vec<Accumulator> = (0..n).map(|_| Accumulator::new()).collect();
        for c in 0..dc {
            for (flat, coef) in self.comul.map.col(c).iter() {
                let (c1, c2) = (flat / dc, flat % dc);
                for (x, fx) in f.col(c1).iter() {
                    let w = coef * fx;
                    for y in 0..da {
                        let prod = self.mul.at(&[x, y]);
                        for (a, m) in prod.iter() {
                            cols[c2 * da + y].add(c * da + a, &(&w * m));
                        }
                    }
                }
            }
        }
        let system = LinMap::from_cols(n, cols.into_iter().map(Accumulator::finish).collect());
        let rhs = SparseVec::from_pairs(
            self.counit
                .iter()
                .flat_map(|(c, e)| self.unit.iter().map(move |(a, u)| (c * da + a, e * u))),
        );
        let x = solve(&system, &rhs).ok_or(NotInvertible)?;
        let mut gcols: Vec<Accumulator> = (0..dc).map(|_| Accumulator::new()).collect();
        for (v, val) in x.iter() {
            gcols[v / da].add(v % da, val);
        }
        let g = LinMap::from_cols(da, gcols.into_iter().map(Accumulator::finish).collect());
        let unit = self.unit_map();
        if self.convolve(f, &g) != unit || self.convolve(&g, f) != unit {
            return Err(NotInvertible);
        }
        Ok(g)
    }
}

/// Convolution inverse of `f: C → A`.
pub fn convolution_inverse(f: &LinMap, setting: ConvolutionSetting<'_>) -> Result<LinMap, NotInvertible> {
    setting.inverse(f)
}
