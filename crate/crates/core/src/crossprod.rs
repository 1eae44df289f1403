//! Cocycle cross products B#_σH, cleaving maps and the cleft canonical map.

use crate::cocycle::{validate_cocycle, CocyclePair, GaugeMap};
use crate::comod::{balanced_tensor, canonical_map, coinvariants, ComoduleAlgebra, Measuring};
use crate::error::{Error, Result};
use crate::exactla::{inverse, Accumulator, CoeffTensor, Embedding, LinMap, QuotientSpace, SparseVec};
use crate::hopf::{FinAlgebra, HopfAlgebra, HopfCotwist};
use crate::report::Report;

/// B#_σH on the basis b⊗h, index `b * dim H + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossProduct {
    pub pair: CocyclePair,
    pub p: ComoduleAlgebra,
    pub j: LinMap,
    pub j_inv: LinMap,
}

/// b⊗h as a vector of B⊗H for vectors b, h.
pub fn hash(b: &SparseVec, h: &SparseVec, dim_h: usize) -> SparseVec {
    b.kron(h, dim_h)
}

/// The product (b#h)(c#g) = b(h₁⊳c)σ(h₂,g₁)#h₃g₂, without validating the pair.
pub fn cross_product_algebra(pair: &CocyclePair) -> FinAlgebra {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let d = db * dh;
    let mul = CoeffTensor::from_fn(vec![d, d], d, |t| {
        let (b1, h1) = (t[0] / dh, t[0] % dh);
        let (c1, g1) = (t[1] / dh, t[1] % dh);
        let mut acc = Accumulator::new();
        let lead = SparseVec::unit(b1);
        for (hl, x) in h.legs(h1, 3).iter() {
            let acted = b.mul(&lead, pair.act.at(hl[0], c1));
            if acted.is_zero() {
                continue;
            }
            for (gl, y) in h.legs(g1, 2).iter() {
                let coeff = b.mul(&acted, pair.sigma_at(hl[1], gl[0]));
                if coeff.is_zero() {
                    continue;
                }
                acc.add_scaled(&(x * y), &hash(&coeff, h.mul_basis(hl[2], gl[1]), dh));
            }
        }
        acc.finish()
    });
    let labels = b
        .labels
        .iter()
        .flat_map(|bl| h.algebra.labels.iter().map(move |hl| format!("{bl}#{hl}")))
        .collect();
    FinAlgebra { labels, mul, unit: hash(&b.unit, h.one(), dh) }
}

/// id⊗Δ on B⊗H.
pub fn cross_product_coaction(h: &HopfAlgebra, db: usize) -> CoeffTensor {
    let dh = h.dim();
    CoeffTensor::from_fn(vec![db * dh], db * dh * dh, |t| {
        let (b, x) = (t[0] / dh, t[0] % dh);
        h.coalgebra.comul_basis(x).map_indices(|f| b * dh * dh + f)
    })
}

pub fn build_cross_product(pair: &CocyclePair) -> Result<CrossProduct> {
    let r = validate_cocycle(pair);
    if !r.passed() {
        let failed: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        return Err(Error::InvalidPair(failed.join(", ")));
    }
    Ok(build_cross_product_unchecked(pair))
}

/// Assemble without validating; used for negative controls.
pub fn build_cross_product_unchecked(pair: &CocyclePair) -> CrossProduct {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let algebra = cross_product_algebra(pair);
    let p = ComoduleAlgebra::new(algebra, h.clone(), cross_product_coaction(h, db));
    let j = LinMap::from_fn(dh, db * dh, |x| hash(&b.unit, &SparseVec::unit(x), dh));
    // j⁻¹(h) = σ⁻¹(S(h₂),h₃)#S(h₁)
    let j_inv = LinMap::from_fn(dh, db * dh, |x| {
        let mut acc = Accumulator::new();
        for (l, c) in h.legs(x, 3).iter() {
            let s = pair.sigma_inv_of(h.s_basis(l[1]), &SparseVec::unit(l[2]));
            acc.add_scaled(c, &hash(&s, h.s_basis(l[0]), dh));
        }
        acc.finish()
    });
    CrossProduct { pair: pair.clone(), p, j, j_inv }
}

impl CrossProduct {
    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn h(&self) -> &HopfAlgebra {
        self.pair.h()
    }

    pub fn b(&self) -> &FinAlgebra {
        self.pair.b()
    }

    /// b ↦ b#1
    pub fn b_inclusion(&self) -> LinMap {
        let dh = self.h().dim();
        LinMap::from_fn(self.b().dim(), self.dim(), |k| hash(&SparseVec::unit(k), self.h().one(), dh))
    }

    pub fn elem(&self, b: &SparseVec, h: &SparseVec) -> SparseVec {
        hash(b, h, self.h().dim())
    }

    pub fn validate(&self) -> Report {
        let mut r = Report::new("cross product");
        r.absorb("", self.p.validate());
        let h = self.h();
        let setting = h.convolution_into(&self.p.p);
        let unit = setting.unit_map();
        r.check_bool(
            "cleaving.invertible",
            "j⋆j⁻¹ = j⁻¹⋆j = η∘ε",
            setting.convolve(&self.j, &self.j_inv) == unit && setting.convolve(&self.j_inv, &self.j) == unit,
        );
        r.check_bool("cleaving.equivariant", "Δ_R∘j = (j⊗id)∘Δ", is_equivariant(&self.p, &self.j));
        match coinvariants(&self.p) {
            Ok(co) => {
                let emb = Embedding::new(&co.inclusion);
                let incl = self.b_inclusion();
                let same = co.algebra.dim() == self.b().dim()
                    && (0..self.b().dim()).all(|k| emb.preimage(incl.col(k)).is_some());
                r.check_bool("cross-product.coinvariants", "coinvariants = B⊗1", same);
            }
            Err(_) => r.check_bool("cross-product.coinvariants", "coinvariants = B⊗1", false),
        }
        r
    }
}

pub fn is_equivariant(p: &ComoduleAlgebra, j: &LinMap) -> bool {
    let dh = p.h.dim();
    (0..dh).all(|x| {
        let lhs = p.coact(j.col(x));
        let mut rhs = Accumulator::new();
        for (f, c) in p.h.coalgebra.comul_basis(x).iter() {
            let (a, b) = (f / dh, f % dh);
            rhs.add_scaled(c, &j.col(a).kron(&SparseVec::unit(b), dh));
        }
        lhs == rhs.finish()
    })
}

/// P⊗_B P with can and can⁻¹ on its quotient coordinates.
#[derive(Clone, Debug)]
pub struct CleftCanonical {
    pub tensor: QuotientSpace,
    pub can: LinMap,
    pub can_inv: LinMap,
}

/// can⁻¹(p⊗h) = p(σ⁻¹(S(h₂),h₃)#S(h₁)) ⊗_B 1#h₄, verified two-sided.
pub fn canonical_inverse_cleft(x: &CrossProduct) -> Result<CleftCanonical> {
    let h = x.h();
    let (dp, dh) = (x.dim(), h.dim());
    let tensor = balanced_tensor(&x.p.p, &x.b_inclusion());
    let can = canonical_map(&x.p, &tensor).ok_or_else(|| Error::InternalDisagreement("can does not descend to P⊗_B P".into()))?;
    let one_b = &x.b().unit;
    let can_inv = LinMap::from_fn(dp * dh, tensor.dim(), |i| {
        let (p, y) = (i / dh, i % dh);
        let mut acc = Accumulator::new();
        for (l, c) in h.legs(y, 4).iter() {
            let s = x.pair.sigma_inv_of(h.s_basis(l[1]), &SparseVec::unit(l[2]));
            let left = x.p.p.mul(&SparseVec::unit(p), &x.elem(&s, h.s_basis(l[0])));
            let right = x.elem(one_b, &SparseVec::unit(l[3]));
            acc.add_scaled(c, &left.kron(&right, dp));
        }
        tensor.project(&acc.finish())
    });
    if !can.compose(&can_inv).is_identity() || !can_inv.compose(&can).is_identity() {
        return Err(Error::NotGalois(crate::error::GaloisFailure::RankDeficient {
            rank: crate::exactla::rank(&can),
            target_dim: dp * dh,
        }));
    }
    Ok(CleftCanonical { tensor, can, can_inv })
}

/// τ(h) = σ⁻¹(S(h₂),h₃)#S(h₁) ⊗_B 1#h₄ as quotient coordinates.
pub fn translation_map_cleft(x: &CrossProduct, tensor: &QuotientSpace) -> LinMap {
    let h = x.h();
    let dp = x.dim();
    let one_b = &x.b().unit;
    LinMap::from_fn(h.dim(), tensor.dim(), |y| {
        let mut acc = Accumulator::new();
        for (l, c) in h.legs(y, 4).iter() {
            let s = x.pair.sigma_inv_of(h.s_basis(l[1]), &SparseVec::unit(l[2]));
            let left = x.elem(&s, h.s_basis(l[0]));
            acc.add_scaled(c, &left.kron(&x.elem(one_b, &SparseVec::unit(l[3])), dp));
        }
        tensor.project(&acc.finish())
    })
}

/// Recover (⊳, σ) from a cleaving map: h⊳b = j(h₁)bj⁻¹(h₂) and
/// σ(h,g) = j(h₁)j(g₁)j⁻¹(h₂g₂), expressed in the coinvariant basis.
pub fn extract_cocycle(p: &ComoduleAlgebra, j: &LinMap) -> Result<CocyclePair> {
    let h = &p.h;
    let dh = h.dim();
    if j.apply(h.one()) != p.p.unit {
        return Err(Error::NotEquivariant("j is not unital".into()));
    }
    if !is_equivariant(p, j) {
        return Err(Error::NotEquivariant("Δ_R∘j ≠ (j⊗id)∘Δ".into()));
    }
    let j_inv = h.convolution_into(&p.p).inverse(j).map_err(|_| Error::NotInvertible("cleaving map".into()))?;
    let co = coinvariants(p)?;
    let emb = Embedding::new(&co.inclusion);
    let db = co.algebra.dim();
    let mut act_cols = Vec::with_capacity(dh * db);
    for x in 0..dh {
        for k in 0..db {
            let mut acc = Accumulator::new();
            for (l, c) in h.legs(x, 2).iter() {
                acc.add_scaled(c, &p.p.product(&[j.col(l[0]), co.inclusion.col(k), j_inv.col(l[1])]));
            }
            let v = acc.finish();
            act_cols.push(emb.preimage(&v).ok_or_else(|| Error::NotCoinvariantValued(format!("h⊳b at ({x}, {k})")))?);
        }
    }
    let mut sigma_cols = Vec::with_capacity(dh * dh);
    for x in 0..dh {
        for y in 0..dh {
            let mut acc = Accumulator::new();
            for (hl, c) in h.legs(x, 2).iter() {
                for (gl, d) in h.legs(y, 2).iter() {
                    let last = j_inv.apply(h.mul_basis(hl[1], gl[1]));
                    acc.add_scaled(&(c * d), &p.p.product(&[j.col(hl[0]), j.col(gl[0]), &last]));
                }
            }
            let v = acc.finish();
            sigma_cols.push(emb.preimage(&v).ok_or_else(|| Error::NotCoinvariantValued(format!("σ at ({x}, {y})")))?);
        }
    }
    let act = CoeffTensor::from_map(vec![dh, db], LinMap::from_cols(db, act_cols));
    let sigma = CoeffTensor::from_map(vec![dh, dh], LinMap::from_cols(db, sigma_cols));
    CocyclePair::new(Measuring::new(h, &co.algebra, act), sigma)
}

/// u⁻¹⋆j, the cleaving map of the gauged pair.
pub fn gauge_cleaving(x: &CrossProduct, u: &GaugeMap) -> LinMap {
    let incl = x.b_inclusion();
    let setting = x.h().convolution_into(&x.p.p);
    setting.convolve(&incl.compose(&u.u_inv), &x.j)
}

fn in_center(x: &CrossProduct, v: &SparseVec) -> bool {
    let incl = x.b_inclusion();
    match Embedding::new(&incl).preimage(v) {
        Some(b) => x.b().is_central(&b),
        None => false,
    }
}

/// j⁻¹(g₁)j⁻¹(h₁)j(h₂g₂) ∈ Z(B) for all basis pairs.
pub fn cleft_associative_criterion(x: &CrossProduct) -> bool {
    let h = x.h();
    crate::report::first_failure(&[h.dim(), h.dim()], |t| {
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(t[0], 2).iter() {
            for (gl, d) in h.legs(t[1], 2).iter() {
                let last = x.j.apply(h.mul_basis(hl[1], gl[1]));
                acc.add_scaled(&(c * d), &x.p.p.product(&[x.j_inv.col(gl[0]), x.j_inv.col(hl[0]), &last]));
            }
        }
        in_center(x, &acc.finish())
    })
    .is_none()
}

/// j⁻¹(g₁)u(g₂)j⁻¹(h₁)u(h₂)u⁻¹(h₃g₃)j(h₄g₄) ∈ Z(B) for all basis pairs.
pub fn cleft_gauge_criterion(x: &CrossProduct, u: &GaugeMap) -> bool {
    let h = x.h();
    let incl = x.b_inclusion();
    let uu = incl.compose(&u.u);
    let ui = incl.compose(&u.u_inv);
    crate::report::first_failure(&[h.dim(), h.dim()], |t| {
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(t[0], 4).iter() {
            for (gl, d) in h.legs(t[1], 4).iter() {
                let a = ui.apply(h.mul_basis(hl[2], gl[2]));
                let b = x.j.apply(h.mul_basis(hl[3], gl[3]));
                let v = x.p.p.product(&[x.j_inv.col(gl[0]), uu.col(gl[1]), x.j_inv.col(hl[0]), uu.col(hl[1]), &a, &b]);
                acc.add_scaled(&(c * d), &v);
            }
        }
        in_center(x, &acc.finish())
    })
    .is_none()
}

/// j⁻¹(h₁g₁)χ(h₂,g₂)j(h₃g₃) ∈ Z(B) for all basis pairs.
pub fn cleft_cotwist_criterion(x: &CrossProduct, chi: &HopfCotwist) -> bool {
    let h = x.h();
    crate::report::first_failure(&[h.dim(), h.dim()], |t| {
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(t[0], 3).iter() {
            for (gl, d) in h.legs(t[1], 3).iter() {
                let w = chi.chi.scalar_at(&[hl[1], gl[1]]);
                if w.is_zero() {
                    continue;
                }
                let a = x.j_inv.apply(h.mul_basis(hl[0], gl[0]));
                let b = x.j.apply(h.mul_basis(hl[2], gl[2]));
                acc.add_scaled(&(c * d * w), &x.p.p.mul(&a, &b));
            }
        }
        in_center(x, &acc.finish())
    })
    .is_none()
}

/// Rank-based invertibility of a square map, used by callers checking can.
pub fn is_bijective(m: &LinMap) -> bool {
    m.dom == m.cod && inverse(m).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, sweedler_cotwist, sweedler_h4};
    use crate::exactla::Scalar;

    fn h4_galois() -> CocyclePair {
        let h = sweedler_h4();
        CocyclePair::scalar(&h, sweedler_cotwist(&h, Scalar::int(3)).chi).unwrap()
    }

    #[test]
    fn cross_product_is_associative_comodule_algebra() {
        let x = build_cross_product(&h4_galois()).unwrap();
        let r = x.validate();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn stored_cleaving_inverse_matches_convolution() {
        let x = build_cross_product(&h4_galois()).unwrap();
        let computed = x.h().convolution_into(&x.p.p).inverse(&x.j).unwrap();
        assert_eq!(computed, x.j_inv);
    }

    #[test]
    fn canonical_inverse_two_sided() {
        let x = build_cross_product(&h4_galois()).unwrap();
        let c = canonical_inverse_cleft(&x).unwrap();
        assert_eq!(c.tensor.dim(), x.dim() * x.h().dim());
    }

    #[test]
    fn extraction_round_trip() {
        let pair = h4_galois();
        let x = build_cross_product(&pair).unwrap();
        assert_eq!(extract_cocycle(&x.p, &x.j).unwrap(), pair);
    }

    #[test]
    fn regular_coaction_gives_trivial_pair() {
        let h = sweedler_h4();
        let p = ComoduleAlgebra::regular(&h);
        let pair = extract_cocycle(&p, &LinMap::identity(4)).unwrap();
        assert_eq!(pair.b().dim(), 1);
        assert_eq!(pair, CocyclePair::untwisted(Measuring::trivial(&h, &FinAlgebra::ground())));
    }

    #[test]
    fn corrupted_sigma_breaks_associativity() {
        let h = cyclic_group(2);
        let mut pair = CocyclePair::scalar(&h, crate::catalog::hopf_algebras::cyclic_bicharacter(&h, &Scalar::int(-1))).unwrap();
        pair.sigma.set(&[0, 1], SparseVec::single(0, Scalar::int(2)));
        assert!(!validate_cocycle(&pair).passed());
        let x = build_cross_product_unchecked(&pair);
        assert!(!x.p.p.validate().passed());
    }
}
