//! Right comodule algebras, coinvariants, measurings and one-sided cotwists.

use crate::error::{Error, Result};
use crate::exactla::{kernel, Accumulator, CoeffTensor, Embedding, LinMap, QuotientSpace, Scalar, SparseVec};
use crate::hopf::{cotwist_hopf, FinAlgebra, HopfAlgebra, HopfCotwist};
use crate::report::Report;

/// P with Δ_R: P → P⊗H, output index `p * dim H + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleAlgebra {
    pub p: FinAlgebra,
    pub h: HopfAlgebra,
    pub coaction: CoeffTensor,
}

impl ComoduleAlgebra {
    pub fn new(p: FinAlgebra, h: HopfAlgebra, coaction: CoeffTensor) -> ComoduleAlgebra {
        ComoduleAlgebra { p, h, coaction }
    }

    /// H coacting on itself by Δ.
    pub fn regular(h: &HopfAlgebra) -> ComoduleAlgebra {
        ComoduleAlgebra { p: h.algebra.clone(), h: h.clone(), coaction: h.coalgebra.comul.clone() }
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn coact_basis(&self, p: usize) -> &SparseVec {
        self.coaction.map.col(p)
    }

    pub fn coact(&self, v: &SparseVec) -> SparseVec {
        self.coaction.map.apply(v)
    }

    /// Coaction legs (p₀, p₁, coefficient) of a basis element.
    pub fn coact_legs(&self, p: usize) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        let dh = self.h.dim();
        self.coact_basis(p).iter().map(move |(f, c)| (f / dh, f % dh, c))
    }

    pub fn validate(&self) -> Report {
        let (dp, dh) = (self.dim(), self.h.dim());
        let mut r = Report::new("comodule algebra");
        r.absorb("", self.p.validate());
        r.check("comodule.coassociativity", "(Δ_R⊗id)Δ_R = (id⊗Δ)Δ_R", &[dp], |t| {
            let mut left = Accumulator::new();
            let mut right = Accumulator::new();
            for (p0, p1, c) in self.coact_legs(t[0]) {
                for (q0, q1, c2) in self.coact_legs(p0) {
                    left.add((q0 * dh + q1) * dh + p1, &(c * c2));
                }
                for (f, c2) in self.h.coalgebra.comul_basis(p1).iter() {
                    right.add(p0 * dh * dh + f, &(c * c2));
                }
            }
            left.finish() == right.finish()
        });
        r.check("comodule.counit", "(id⊗ε)Δ_R = id", &[dp], |t| {
            let mut acc = Accumulator::new();
            for (p0, p1, c) in self.coact_legs(t[0]) {
                acc.add(p0, &(c * &self.h.counit_basis(p1)));
            }
            acc.finish() == SparseVec::unit(t[0])
        });
        let target = self.p.tensor(&self.h.algebra);
        r.check("comodule.multiplicative", "Δ_R(pq) = Δ_R(p)Δ_R(q)", &[dp, dp], |t| {
            self.coact(self.p.mul_basis(t[0], t[1])) == target.mul(self.coact_basis(t[0]), self.coact_basis(t[1]))
        });
        r.check_bool("comodule.unit", "Δ_R(1) = 1⊗1", self.coact(&self.p.unit) == target.unit);
        r
    }
}

/// B = P^{co H} with its inclusion into P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub algebra: FinAlgebra,
    pub inclusion: LinMap,
}

pub fn coinvariants(p: &ComoduleAlgebra) -> Result<Coinvariants> {
    let (dp, dh) = (p.dim(), p.h.dim());
    let one_h = p.h.one().clone();
    let defect = LinMap::from_fn(dp, dp * dh, |i| p.coact_basis(i).sub(&SparseVec::unit(i).kron(&one_h, dh)));
    let basis = kernel(&defect);
    let inclusion = LinMap::from_cols(dp, basis);
    coinvariant_algebra(&p.p, inclusion)
}

/// Structure constants of a subalgebra spanned by the columns of `inclusion`.
pub fn coinvariant_algebra(p: &FinAlgebra, inclusion: LinMap) -> Result<Coinvariants> {
    let emb = Embedding::new(&inclusion);
    let d = inclusion.dom;
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let prod = p.mul(inclusion.col(i), inclusion.col(j));
            table.push(emb.preimage(&prod).ok_or(Error::NotSubalgebra)?);
        }
    }
    let unit = emb.preimage(&p.unit).ok_or(Error::NotSubalgebra)?;
    let algebra = FinAlgebra::from_table(d, unit, |i, j| table[i * d + j].clone());
    Ok(Coinvariants { algebra, inclusion })
}

/// ⊳: H⊗B → B with h⊳(ab) = (h₁⊳a)(h₂⊳b) and h⊳1 = ε(h)1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measuring {
    pub h: HopfAlgebra,
    pub b: FinAlgebra,
    /// (h, b) ↦ h⊳b
    pub act: CoeffTensor,
}

impl Measuring {
    pub fn new(h: &HopfAlgebra, b: &FinAlgebra, act: CoeffTensor) -> Measuring {
        Measuring { h: h.clone(), b: b.clone(), act }
    }

    /// h⊳b = ε(h)b
    pub fn trivial(h: &HopfAlgebra, b: &FinAlgebra) -> Measuring {
        let act = CoeffTensor::from_fn(vec![h.dim(), b.dim()], b.dim(), |t| {
            SparseVec::single(t[1], h.counit_basis(t[0]))
        });
        Measuring::new(h, b, act)
    }

    pub fn at(&self, h: usize, b: usize) -> &SparseVec {
        self.act.at(&[h, b])
    }

    pub fn apply(&self, h: &SparseVec, b: &SparseVec) -> SparseVec {
        self.act.eval(&[h, b])
    }

    /// h⊳v for a basis element h.
    pub fn apply_basis(&self, h: usize, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new();
        for (b, c) in v.iter() {
            acc.add_scaled(c, self.at(h, b));
        }
        acc.finish()
    }

    pub fn validate(&self) -> Report {
        let (dh, db) = (self.h.dim(), self.b.dim());
        let mut r = Report::new("measuring");
        r.check("measuring.product", "h⊳(ab) = (h₁⊳a)(h₂⊳b)", &[dh, db, db], |t| {
            let lhs = self.apply_basis(t[0], self.b.mul_basis(t[1], t[2]));
            let mut rhs = Accumulator::new();
            for (k, c) in self.h.legs(t[0], 2).iter() {
                rhs.add_scaled(c, &self.b.mul(self.at(k[0], t[1]), self.at(k[1], t[2])));
            }
            lhs == rhs.finish()
        });
        r.check("measuring.unit", "h⊳1 = ε(h)1", &[dh], |t| {
            self.apply_basis(t[0], &self.b.unit) == self.b.unit.scale(&self.h.counit_basis(t[0]))
        });
        r
    }

    /// h⊳(g⊳b) = (hg)⊳b and 1⊳b = b.
    pub fn module_algebra_report(&self) -> Report {
        let (dh, db) = (self.h.dim(), self.b.dim());
        let mut r = Report::new("module algebra");
        r.check("action.unit", "1⊳b = b", &[db], |t| {
            self.apply(self.h.one(), &SparseVec::unit(t[0])) == SparseVec::unit(t[0])
        });
        r.check("action.composition", "h⊳(g⊳b) = (hg)⊳b", &[dh, dh, db], |t| {
            self.apply_basis(t[0], self.at(t[1], t[2])) == self.apply(self.h.mul_basis(t[0], t[1]), &SparseVec::unit(t[2]))
        });
        r
    }

    pub fn is_module_algebra(&self) -> bool {
        self.module_algebra_report().passed()
    }
}

/// P_χ with p·q = p₀q₀χ⁻¹(p₁,q₁), a comodule algebra over H^χ.
pub fn cotwist_comodule_algebra(p: &ComoduleAlgebra, chi: &HopfCotwist) -> Result<ComoduleAlgebra> {
    let h_chi = cotwist_hopf(&p.h, chi)?;
    let dp = p.dim();
    let mul = CoeffTensor::from_fn(vec![dp, dp], dp, |t| {
        let mut acc = Accumulator::new();
        for (a0, a1, c) in p.coact_legs(t[0]) {
            for (b0, b1, c2) in p.coact_legs(t[1]) {
                let w = chi.chi_inv.scalar_at(&[a1, b1]);
                if !w.is_zero() {
                    acc.add_scaled(&(c * c2 * w), p.p.mul_basis(a0, b0));
                }
            }
        }
        acc.finish()
    });
    let algebra = FinAlgebra { labels: p.p.labels.clone(), mul, unit: p.p.unit.clone() };
    Ok(ComoduleAlgebra { p: algebra, h: h_chi, coaction: p.coaction.clone() })
}

/// P⊗_B P as a quotient of P⊗P by pb⊗q − p⊗bq, index `p * dim P + q`.
pub fn balanced_tensor(p: &FinAlgebra, b_in_p: &LinMap) -> QuotientSpace {
    let d = p.dim();
    let mut rels = Vec::with_capacity(d * d * b_in_p.dom);
    for k in 0..b_in_p.dom {
        let b = b_in_p.col(k);
        let right: Vec<SparseVec> = (0..d).map(|i| p.mul(&SparseVec::unit(i), b)).collect();
        let left: Vec<SparseVec> = (0..d).map(|i| p.mul(b, &SparseVec::unit(i))).collect();
        for x in 0..d {
            for y in 0..d {
                let rel = right[x].kron(&SparseVec::unit(y), d).sub(&SparseVec::unit(x).kron(&left[y], d));
                if !rel.is_zero() {
                    rels.push(rel);
                }
            }
        }
    }
    QuotientSpace::new(d * d, &rels)
}

/// p⊗q ↦ pq₀⊗q₁ on the unquotiented P⊗P, output index `p * dim H + h`.
pub fn canonical_map_ambient(p: &ComoduleAlgebra) -> LinMap {
    let (dp, dh) = (p.dim(), p.h.dim());
    LinMap::from_fn(dp * dp, dp * dh, |i| {
        let (a, b) = (i / dp, i % dp);
        let mut acc = Accumulator::new();
        for (q0, q1, c) in p.coact_legs(b) {
            for (k, v) in p.p.mul_basis(a, q0).iter() {
                acc.add(k * dh + q1, &(c * v));
            }
        }
        acc.finish()
    })
}

/// The canonical map on quotient coordinates of P⊗_B P, or `None` when it
/// does not descend to the quotient.
pub fn canonical_map(p: &ComoduleAlgebra, tensor: &QuotientSpace) -> Option<LinMap> {
    let ambient = canonical_map_ambient(p);
    if tensor.relation_basis().iter().any(|r| !ambient.apply(r).is_zero()) {
        return None;
    }
    Some(ambient.compose(&tensor.sect_matrix()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, sweedler_cotwist, sweedler_h4};

    #[test]
    fn regular_coaction_has_scalar_coinvariants() {
        let h = sweedler_h4();
        let p = ComoduleAlgebra::regular(&h);
        assert!(p.validate().passed());
        let b = coinvariants(&p).unwrap();
        assert_eq!(b.algebra.dim(), 1);
        assert_eq!(b.inclusion.col(0), h.one());
    }

    #[test]
    fn coaction_on_second_factor() {
        let h = cyclic_group(2);
        let p = h.algebra.tensor(&h.algebra);
        let coaction = CoeffTensor::from_fn(vec![4], 8, |t| {
            SparseVec::unit(t[0] * 2 + t[0] % 2)
        });
        let p = ComoduleAlgebra::new(p, h, coaction);
        assert!(p.validate().passed());
        assert_eq!(coinvariants(&p).unwrap().algebra.dim(), 2);
    }

    #[test]
    fn trivial_action_is_module_algebra() {
        let h = sweedler_h4();
        let m = Measuring::trivial(&h, &h.algebra);
        assert!(m.validate().passed());
        assert!(m.is_module_algebra());
    }

    #[test]
    fn one_sided_cotwist_matches_expansion() {
        let h = sweedler_h4();
        let chi = sweedler_cotwist(&h, Scalar::int(2));
        let p = ComoduleAlgebra::regular(&h);
        let twisted = cotwist_comodule_algebra(&p, &chi).unwrap();
        assert!(twisted.validate().passed());
        // x·x = x₀x₀'χ⁻¹(x₁,x₁'), legs x⊗1 + g⊗x: only g·g χ⁻¹(x,x) survives
        let x = SparseVec::unit(2);
        let expected = h.algebra.mul_basis(1, 1).scale(&chi.chi_inv.scalar_at(&[2, 2]));
        assert_eq!(twisted.p.mul(&x, &x), expected);
        assert!(!expected.is_zero());
        let trivial = cotwist_comodule_algebra(&p, &HopfCotwist::trivial(&h)).unwrap();
        assert_eq!(trivial.p, p.p);
    }
}
