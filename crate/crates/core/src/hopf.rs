//! Finite-dimensional algebras, coalgebras and Hopf algebras given by
//! structure constants, with cotwists and coquasitriangular structures.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exactla::{
    convolution_inverse, inverse, kernel, Accumulator, CoeffTensor, ConvolutionSetting, LinMap, Scalar, SparseVec,
};
use crate::report::Report;

/// Sweedler legs of a basis element: (leg indices, coefficient).
pub type Legs = Vec<(Vec<usize>, Scalar)>;

const MAX_CACHED_LEGS: usize = 8;

/// Equality compares structure constants only; labels are cosmetic.
#[derive(Clone, Debug)]
pub struct FinAlgebra {
    pub labels: Vec<String>,
    /// (a, b) ↦ ab
    pub mul: CoeffTensor,
    pub unit: SparseVec,
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.unit == other.unit
    }
}

impl Eq for FinAlgebra {}

pub fn default_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

impl FinAlgebra {
    pub fn new(labels: Vec<String>, mul: CoeffTensor, unit: SparseVec) -> FinAlgebra {
        assert_eq!(mul.dims.len(), 2);
        assert_eq!(mul.dims[0], labels.len());
        FinAlgebra { labels, mul, unit }
    }

    pub fn from_table(dim: usize, unit: SparseVec, f: impl Fn(usize, usize) -> SparseVec) -> FinAlgebra {
        let mul = CoeffTensor::from_fn(vec![dim, dim], dim, |i| f(i[0], i[1]));
        FinAlgebra { labels: default_labels(dim), mul, unit }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground() -> FinAlgebra {
        FinAlgebra::from_table(1, SparseVec::unit(0), |_, _| SparseVec::unit(0))
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn one(&self) -> &SparseVec {
        &self.unit
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        self.mul.at(&[i, j])
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.mul.eval(&[a, b])
    }

    pub fn mul3(&self, a: &SparseVec, b: &SparseVec, c: &SparseVec) -> SparseVec {
        self.mul(&self.mul(a, b), c)
    }

    /// Product of a list of elements, left to right.
    pub fn product(&self, xs: &[&SparseVec]) -> SparseVec {
        xs.iter().fold(self.unit.clone(), |acc, x| self.mul(&acc, x))
    }

    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut r = Report::new("algebra");
        r.check("algebra.associativity", "m(m(a,b),c) = m(a,m(b,c))", &[d, d, d], |t| {
            let ab = self.mul_basis(t[0], t[1]);
            let bc = self.mul_basis(t[1], t[2]);
            self.mul(ab, &SparseVec::unit(t[2])) == self.mul(&SparseVec::unit(t[0]), bc)
        });
        r.check("algebra.unit", "1a = a = a1", &[d], |t| {
            let a = SparseVec::unit(t[0]);
            self.mul(&self.unit, &a) == a && self.mul(&a, &self.unit) == a
        });
        r
    }

    pub fn opposite(&self) -> FinAlgebra {
        let d = self.dim();
        let mul = CoeffTensor::from_fn(vec![d, d], d, |i| self.mul_basis(i[1], i[0]).clone());
        FinAlgebra { labels: self.labels.clone(), mul, unit: self.unit.clone() }
    }

    /// Tensor product algebra, basis index `i * other.dim() + j`.
    pub fn tensor(&self, other: &FinAlgebra) -> FinAlgebra {
        let (d1, d2) = (self.dim(), other.dim());
        let mul = CoeffTensor::from_fn(vec![d1 * d2, d1 * d2], d1 * d2, |i| {
            let (a, b) = (i[0] / d2, i[0] % d2);
            let (c, e) = (i[1] / d2, i[1] % d2);
            self.mul_basis(a, c).kron(other.mul_basis(b, e), d2)
        });
        let labels = self
            .labels
            .iter()
            .flat_map(|a| other.labels.iter().map(move |b| format!("{a}⊗{b}")))
            .collect();
        FinAlgebra { labels, mul, unit: self.unit.kron(&other.unit, d2) }
    }

    pub fn left_mul_matrix(&self, a: &SparseVec) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |j| self.mul(a, &SparseVec::unit(j)))
    }

    pub fn right_mul_matrix(&self, a: &SparseVec) -> LinMap {
        LinMap::from_fn(self.dim(), self.dim(), |j| self.mul(&SparseVec::unit(j), a))
    }

    pub fn is_central(&self, a: &SparseVec) -> bool {
        (0..self.dim()).all(|j| {
            let e = SparseVec::unit(j);
            self.mul(a, &e) == self.mul(&e, a)
        })
    }

    /// Basis of Z(B), the kernel of a ↦ (ae_j − e_j a)_j.
    pub fn center(&self) -> Vec<SparseVec> {
        let d = self.dim();
        let commutators = LinMap::from_fn(d, d * d, |i| {
            let mut acc = Accumulator::new();
            for j in 0..d {
                let c = self.mul_basis(i, j).sub(self.mul_basis(j, i));
                for (k, v) in c.iter() {
                    acc.add(j * d + k, v);
                }
            }
            acc.finish()
        });
        kernel(&commutators)
    }

    /// Two-sided inverse of an element, if any.
    pub fn invert(&self, a: &SparseVec) -> Option<SparseVec> {
        let left = inverse(&self.left_mul_matrix(a))?;
        let b = left.apply(&self.unit);
        (self.mul(&b, a) == self.unit).then_some(b)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul_basis(i, j) == self.mul_basis(j, i)))
    }

    /// First basis pair where `f: self → target` fails to be multiplicative,
    /// with `Some(vec![])` for a unit failure.
    pub fn algebra_map_failure(&self, f: &LinMap, target: &FinAlgebra) -> Option<Vec<usize>> {
        if f.apply(&self.unit) != target.unit {
            return Some(Vec::new());
        }
        let d = self.dim();
        crate::report::first_failure(&[d, d], |t| {
            f.apply(self.mul_basis(t[0], t[1])) == target.mul(f.col(t[0]), f.col(t[1]))
        })
    }
}

#[derive(Default)]
struct LegCache(Vec<OnceLock<Legs>>);

impl Clone for LegCache {
    fn clone(&self) -> Self {
        LegCache(self.0.clone())
    }
}

impl PartialEq for LegCache {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for LegCache {}

impl std::fmt::Debug for LegCache {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("LegCache")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinCoalgebra {
    /// h ↦ Σ h₁ ⊗ h₂, output index `i * dim + j`
    pub comul: CoeffTensor,
    pub counit: SparseVec,
    legs: LegCache,
}

impl FinCoalgebra {
    pub fn new(comul: CoeffTensor, counit: SparseVec) -> FinCoalgebra {
        let d = comul.dims[0];
        assert_eq!(comul.out_dim, d * d);
        let legs = LegCache((0..d * MAX_CACHED_LEGS).map(|_| OnceLock::new()).collect());
        FinCoalgebra { comul, counit, legs }
    }

    pub fn from_fn(dim: usize, counit: SparseVec, f: impl Fn(usize) -> Vec<(usize, usize, Scalar)>) -> FinCoalgebra {
        let comul = CoeffTensor::from_fn(vec![dim], dim * dim, |i| {
            SparseVec::from_pairs(f(i[0]).into_iter().map(|(a, b, c)| (a * dim + b, c)))
        });
        FinCoalgebra::new(comul, counit)
    }

    pub fn dim(&self) -> usize {
        self.comul.dims[0]
    }

    pub fn comul_basis(&self, h: usize) -> &SparseVec {
        self.comul.map.col(h)
    }

    pub fn comul(&self, v: &SparseVec) -> SparseVec {
        self.comul.map.apply(v)
    }

    pub fn counit_basis(&self, h: usize) -> Scalar {
        self.counit.get(h)
    }

    pub fn counit(&self, v: &SparseVec) -> Scalar {
        self.counit.dot(v)
    }

    fn compute_legs(&self, h: usize, n: usize) -> Legs {
        let d = self.dim();
        let mut cur: Legs = vec![(vec![h], Scalar::one())];
        for _ in 1..n {
            let mut next: Vec<(Vec<usize>, Scalar)> = Vec::new();
            for (idx, c) in &cur {
                let last = *idx.last().unwrap();
                for (flat, a) in self.comul_basis(last).iter() {
                    let mut k = idx[..idx.len() - 1].to_vec();
                    k.push(flat / d);
                    k.push(flat % d);
                    next.push((k, c * a));
                }
            }
            next.sort_by(|a, b| a.0.cmp(&b.0));
            let mut merged: Legs = Vec::new();
            for (k, c) in next {
                match merged.last_mut() {
                    Some((pk, pc)) if *pk == k => *pc += &c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            cur = merged;
        }
        cur
    }

    /// Iterated coproduct Δ^{(n-1)}(e_h) as a list of n-tuples of legs.
    pub fn legs(&self, h: usize, n: usize) -> std::borrow::Cow<'_, Legs> {
        assert!(n >= 1);
        if n <= MAX_CACHED_LEGS {
            let slot = &self.legs.0[(n - 1) * self.dim() + h];
            std::borrow::Cow::Borrowed(slot.get_or_init(|| self.compute_legs(h, n)))
        } else {
            std::borrow::Cow::Owned(self.compute_legs(h, n))
        }
    }

    /// Iterated coproduct of a vector, legs paired with coefficients.
    pub fn legs_of(&self, v: &SparseVec, n: usize) -> Legs {
        let mut out = Vec::new();
        for (h, c) in v.iter() {
            for (k, a) in self.legs(h, n).iter() {
                out.push((k.clone(), c * a));
            }
        }
        out
    }

    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut r = Report::new("coalgebra");
        r.check("coalgebra.coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", &[d], |t| {
            let mut left = Accumulator::new();
            let mut right = Accumulator::new();
            for (flat, c) in self.comul_basis(t[0]).iter() {
                let (a, b) = (flat / d, flat % d);
                for (f2, c2) in self.comul_basis(a).iter() {
                    left.add(f2 * d + b, &(c * c2));
                }
                for (f2, c2) in self.comul_basis(b).iter() {
                    right.add(a * d * d + f2, &(c * c2));
                }
            }
            left.finish() == right.finish()
        });
        r.check("coalgebra.counit", "(ε⊗id)Δ = id = (id⊗ε)Δ", &[d], |t| {
            let mut left = Accumulator::new();
            let mut right = Accumulator::new();
            for (flat, c) in self.comul_basis(t[0]).iter() {
                let (a, b) = (flat / d, flat % d);
                left.add(b, &(c * &self.counit_basis(a)));
                right.add(a, &(c * &self.counit_basis(b)));
            }
            let h = SparseVec::unit(t[0]);
            left.finish() == h && right.finish() == h
        });
        r
    }

    /// Tensor product coalgebra on index `i * other.dim() + j`.
    pub fn tensor(&self, other: &FinCoalgebra) -> FinCoalgebra {
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 * d2;
        let comul = CoeffTensor::from_fn(vec![d], d * d, |i| {
            let (h, g) = (i[0] / d2, i[0] % d2);
            let mut acc = Accumulator::new();
            for (fa, a) in self.comul_basis(h).iter() {
                let (h1, h2) = (fa / d1, fa % d1);
                for (fb, b) in other.comul_basis(g).iter() {
                    let (g1, g2) = (fb / d2, fb % d2);
                    acc.add((h1 * d2 + g1) * d + (h2 * d2 + g2), &(a * b));
                }
            }
            acc.finish()
        });
        FinCoalgebra::new(comul, self.counit.kron(&other.counit, d2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    pub algebra: FinAlgebra,
    pub coalgebra: FinCoalgebra,
    pub antipode: LinMap,
    pub antipode_inv: Option<LinMap>,
}

impl HopfAlgebra {
    /// Assemble from stored antipode; its inverse is computed when it exists.
    pub fn new(algebra: FinAlgebra, coalgebra: FinCoalgebra, antipode: LinMap) -> HopfAlgebra {
        let antipode_inv = inverse(&antipode);
        HopfAlgebra { algebra, coalgebra, antipode, antipode_inv }
    }

    /// Assemble with the antipode computed as the convolution inverse of id.
    pub fn with_computed_antipode(algebra: FinAlgebra, coalgebra: FinCoalgebra) -> Result<HopfAlgebra> {
        let s = antipode_by_convolution(&algebra, &coalgebra)?;
        Ok(HopfAlgebra::new(algebra, coalgebra, s))
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn one(&self) -> &SparseVec {
        &self.algebra.unit
    }

    pub fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.algebra.mul(a, b)
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &SparseVec {
        self.algebra.mul_basis(a, b)
    }

    pub fn legs(&self, h: usize, n: usize) -> std::borrow::Cow<'_, Legs> {
        self.coalgebra.legs(h, n)
    }

    pub fn legs_of(&self, v: &SparseVec, n: usize) -> Legs {
        self.coalgebra.legs_of(v, n)
    }

    pub fn counit(&self, v: &SparseVec) -> Scalar {
        self.coalgebra.counit(v)
    }

    pub fn counit_basis(&self, h: usize) -> Scalar {
        self.coalgebra.counit_basis(h)
    }

    pub fn s(&self, v: &SparseVec) -> SparseVec {
        self.antipode.apply(v)
    }

    pub fn s_basis(&self, h: usize) -> &SparseVec {
        self.antipode.col(h)
    }

    pub fn s_inv_basis(&self, h: usize) -> &SparseVec {
        self.antipode_inv.as_ref().expect("antipode is not invertible").col(h)
    }

    /// Index of the unit when it is a basis vector.
    pub fn unit_index(&self) -> Option<usize> {
        let u = &self.algebra.unit;
        (u.nnz() == 1 && u.entries()[0].1.is_one()).then(|| u.entries()[0].0)
    }

    /// Setting for convolution of maps H → A.
    pub fn convolution_into<'a>(&'a self, target: &'a FinAlgebra) -> ConvolutionSetting<'a> {
        ConvolutionSetting {
            comul: &self.coalgebra.comul,
            counit: &self.coalgebra.counit,
            mul: &target.mul,
            unit: &target.unit,
        }
    }

    /// H⊗H as a coalgebra, the source of cocycles and cotwists.
    pub fn square_coalgebra(&self) -> FinCoalgebra {
        self.coalgebra.tensor(&self.coalgebra)
    }

    pub fn validate(&self) -> Report {
        let d = self.dim();
        let mut r = Report::new("hopf algebra");
        if self.coalgebra.dim() != d || self.antipode.dom != d || self.antipode.cod != d {
            r.check_bool("hopf.dimensions", "algebra, coalgebra and antipode share one dimension", false);
            return r;
        }
        r.absorb("", self.algebra.validate());
        r.absorb("", self.coalgebra.validate());
        let square = self.algebra.tensor(&self.algebra);
        r.check("bialgebra.comul-multiplicative", "Δ(ab) = Δ(a)Δ(b)", &[d, d], |t| {
            let ab = self.mul_basis(t[0], t[1]);
            self.coalgebra.comul(ab) == square.mul(self.coalgebra.comul_basis(t[0]), self.coalgebra.comul_basis(t[1]))
        });
        r.check_bool(
            "bialgebra.comul-unit",
            "Δ(1) = 1⊗1",
            self.coalgebra.comul(self.one()) == self.one().kron(self.one(), d),
        );
        r.check("bialgebra.counit-multiplicative", "ε(ab) = ε(a)ε(b)", &[d, d], |t| {
            self.counit(self.mul_basis(t[0], t[1])) == self.counit_basis(t[0]) * self.counit_basis(t[1])
        });
        r.check_bool("bialgebra.counit-unit", "ε(1) = 1", self.counit(self.one()).is_one());
        r.check("hopf.antipode", "S(h₁)h₂ = ε(h)1 = h₁S(h₂)", &[d], |t| {
            let mut left = Accumulator::new();
            let mut right = Accumulator::new();
            for (k, c) in self.legs(t[0], 2).iter() {
                left.add_scaled(c, &self.mul(self.s_basis(k[0]), &SparseVec::unit(k[1])));
                right.add_scaled(c, &self.mul(&SparseVec::unit(k[0]), self.s_basis(k[1])));
            }
            let target = self.one().scale(&self.counit_basis(t[0]));
            left.finish() == target && right.finish() == target
        });
        match &self.antipode_inv {
            Some(si) => r.check_bool(
                "hopf.antipode-inverse",
                "S∘S⁻¹ = S⁻¹∘S = id",
                self.antipode.compose(si).is_identity() && si.compose(&self.antipode).is_identity(),
            ),
            None => r.not_applicable("hopf.antipode-inverse", "S∘S⁻¹ = S⁻¹∘S = id", "antipode not invertible"),
        }
        let conv = antipode_by_convolution(&self.algebra, &self.coalgebra);
        r.check_bool(
            "hopf.antipode-convolution",
            "S is the convolution inverse of id",
            conv.as_ref().is_ok_and(|s| *s == self.antipode),
        );
        r
    }
}

fn antipode_by_convolution(algebra: &FinAlgebra, coalgebra: &FinCoalgebra) -> Result<LinMap> {
    let setting = ConvolutionSetting {
        comul: &coalgebra.comul,
        counit: &coalgebra.counit,
        mul: &algebra.mul,
        unit: &algebra.unit,
    };
    convolution_inverse(&LinMap::identity(algebra.dim()), setting).map_err(|_| Error::NotInvertible("identity map".into()))
}

/// Convolution inverse of a functional on H⊗H.
pub(crate) fn bilinear_inverse(h: &HopfAlgebra, f: &CoeffTensor, target: &FinAlgebra, what: &str) -> Result<CoeffTensor> {
    let sq = h.square_coalgebra();
    let setting = ConvolutionSetting { comul: &sq.comul, counit: &sq.counit, mul: &target.mul, unit: &target.unit };
    let inv = convolution_inverse(&f.map, setting).map_err(|_| Error::NotInvertible(what.into()))?;
    Ok(CoeffTensor::from_map(f.dims.clone(), inv))
}

/// χ: H⊗H → k with χ(g₁,f₁)χ(h,g₂f₂) = χ(h₁,g₁)χ(h₂g₂,f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCotwist {
    pub host: HopfAlgebra,
    pub chi: CoeffTensor,
    pub chi_inv: CoeffTensor,
}

/// Shared check for the cocycle identity of a k-valued bilinear form.
fn bilinear_cocycle_ok(h: &HopfAlgebra, f: &CoeffTensor, t: &[usize]) -> bool {
    let (a, b, c) = (t[0], t[1], t[2]);
    let mut lhs = Scalar::zero();
    for (gb, x) in h.legs(b, 2).iter() {
        for (fc, y) in h.legs(c, 2).iter() {
            let v = f.scalar_at(&[gb[0], fc[0]]);
            if v.is_zero() {
                continue;
            }
            let w = f.eval_scalar(&[&SparseVec::unit(a), h.mul_basis(gb[1], fc[1])]);
            lhs += &(x * y * v * w);
        }
    }
    let mut rhs = Scalar::zero();
    for (ha, x) in h.legs(a, 2).iter() {
        for (gb, y) in h.legs(b, 2).iter() {
            let v = f.scalar_at(&[ha[0], gb[0]]);
            if v.is_zero() {
                continue;
            }
            let w = f.eval_scalar(&[h.mul_basis(ha[1], gb[1]), &SparseVec::unit(c)]);
            rhs += &(x * y * v * w);
        }
    }
    lhs == rhs
}

impl HopfCotwist {
    pub fn new(host: &HopfAlgebra, chi: CoeffTensor) -> Result<HopfCotwist> {
        let chi_inv = bilinear_inverse(host, &chi, &FinAlgebra::ground(), "cotwist")
            .map_err(|_| Error::InvalidCotwist("not convolution invertible".into()))?;
        Ok(HopfCotwist { host: host.clone(), chi, chi_inv })
    }

    /// ε⊗ε, the trivial cotwist.
    pub fn trivial(host: &HopfAlgebra) -> HopfCotwist {
        let d = host.dim();
        let chi = CoeffTensor::functional(vec![d, d], |t| host.counit_basis(t[0]) * host.counit_basis(t[1]));
        HopfCotwist { host: host.clone(), chi: chi.clone(), chi_inv: chi }
    }

    pub fn value(&self, a: &SparseVec, b: &SparseVec) -> Scalar {
        self.chi.eval_scalar(&[a, b])
    }

    pub fn validate(&self) -> Report {
        let h = &self.host;
        let d = h.dim();
        let mut r = Report::new("cotwist");
        r.check("cotwist.normalized", "χ(1,h) = χ(h,1) = ε(h)", &[d], |t| {
            let e = SparseVec::unit(t[0]);
            let eps = h.counit_basis(t[0]);
            self.value(h.one(), &e) == eps && self.value(&e, h.one()) == eps
        });
        r.check("cotwist.cocycle", "χ(g₁,f₁)χ(h,g₂f₂) = χ(h₁,g₁)χ(h₂g₂,f)", &[d, d, d], |t| {
            bilinear_cocycle_ok(h, &self.chi, t)
        });
        let sq = h.square_coalgebra();
        let k = FinAlgebra::ground();
        let setting = ConvolutionSetting { comul: &sq.comul, counit: &sq.counit, mul: &k.mul, unit: &k.unit };
        let unit = setting.unit_map();
        r.check_bool(
            "cotwist.inverse",
            "χ⋆χ⁻¹ = χ⁻¹⋆χ = ε⊗ε",
            setting.convolve(&self.chi.map, &self.chi_inv.map) == unit
                && setting.convolve(&self.chi_inv.map, &self.chi.map) == unit,
        );
        r
    }

    /// χ⁻¹ viewed as a cotwist on H^χ.
    pub fn inverse_on_twisted(&self) -> Result<HopfCotwist> {
        let twisted = cotwist_hopf(&self.host, self)?;
        Ok(HopfCotwist { host: twisted, chi: self.chi_inv.clone(), chi_inv: self.chi.clone() })
    }
}

/// H^χ with product h•g = χ(h₁,g₁)h₂g₂χ⁻¹(h₃,g₃); the antipode is recomputed.
pub fn cotwist_hopf(h: &HopfAlgebra, chi: &HopfCotwist) -> Result<HopfAlgebra> {
    if !chi.validate().passed() {
        return Err(Error::InvalidCotwist("cotwist axioms fail".into()));
    }
    let d = h.dim();
    let mul = CoeffTensor::from_fn(vec![d, d], d, |t| {
        let mut acc = Accumulator::new();
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let a = chi.chi.scalar_at(&[hl[0], gl[0]]);
                if a.is_zero() {
                    continue;
                }
                let b = chi.chi_inv.scalar_at(&[hl[2], gl[2]]);
                if b.is_zero() {
                    continue;
                }
                acc.add_scaled(&(x * y * a * b), h.mul_basis(hl[1], gl[1]));
            }
        }
        acc.finish()
    });
    let algebra = FinAlgebra { labels: h.algebra.labels.clone(), mul, unit: h.algebra.unit.clone() };
    HopfAlgebra::with_computed_antipode(algebra, h.coalgebra.clone())
}

/// 𝓡: H⊗H → k making H coquasitriangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoquasiStructure {
    pub host: HopfAlgebra,
    pub r: CoeffTensor,
    pub r_inv: CoeffTensor,
}

impl CoquasiStructure {
    pub fn new(host: &HopfAlgebra, r: CoeffTensor) -> Result<CoquasiStructure> {
        let r_inv = bilinear_inverse(host, &r, &FinAlgebra::ground(), "coquasitriangular form")?;
        Ok(CoquasiStructure { host: host.clone(), r, r_inv })
    }

    pub fn value(&self, a: &SparseVec, b: &SparseVec) -> Scalar {
        self.r.eval_scalar(&[a, b])
    }

    pub fn inv_value(&self, a: &SparseVec, b: &SparseVec) -> Scalar {
        self.r_inv.eval_scalar(&[a, b])
    }

    pub fn validate(&self) -> Report {
        let h = &self.host;
        let d = h.dim();
        let mut r = Report::new("coquasitriangular structure");
        r.check("coquasi.quasi-commutative", "g₁h₁𝓡(h₂⊗g₂) = 𝓡(h₁⊗g₁)h₂g₂", &[d, d], |t| {
            let mut lhs = Accumulator::new();
            let mut rhs = Accumulator::new();
            for (hl, x) in h.legs(t[0], 2).iter() {
                for (gl, y) in h.legs(t[1], 2).iter() {
                    let a = self.r.scalar_at(&[hl[1], gl[1]]);
                    lhs.add_scaled(&(x * y * a), h.mul_basis(gl[0], hl[0]));
                    let b = self.r.scalar_at(&[hl[0], gl[0]]);
                    rhs.add_scaled(&(x * y * b), h.mul_basis(hl[1], gl[1]));
                }
            }
            lhs.finish() == rhs.finish()
        });
        r.check("coquasi.second-slot", "𝓡(h⊗gf) = 𝓡(h₁⊗g)𝓡(h₂⊗f)", &[d, d, d], |t| {
            let lhs = self.value(&SparseVec::unit(t[0]), h.mul_basis(t[1], t[2]));
            let mut rhs = Scalar::zero();
            for (hl, x) in h.legs(t[0], 2).iter() {
                rhs += &(x * self.r.scalar_at(&[hl[0], t[1]]) * self.r.scalar_at(&[hl[1], t[2]]));
            }
            lhs == rhs
        });
        r.check("coquasi.first-slot", "𝓡(hg⊗f) = 𝓡(h⊗f₁)𝓡(g⊗f₂)", &[d, d, d], |t| {
            let lhs = self.value(h.mul_basis(t[0], t[1]), &SparseVec::unit(t[2]));
            let mut rhs = Scalar::zero();
            for (fl, x) in h.legs(t[2], 2).iter() {
                rhs += &(x * self.r.scalar_at(&[t[0], fl[0]]) * self.r.scalar_at(&[t[1], fl[1]]));
            }
            lhs == rhs
        });
        let sq = h.square_coalgebra();
        let k = FinAlgebra::ground();
        let setting = ConvolutionSetting { comul: &sq.comul, counit: &sq.counit, mul: &k.mul, unit: &k.unit };
        let unit = setting.unit_map();
        r.check_bool(
            "coquasi.inverse",
            "𝓡⋆𝓡⁻¹ = 𝓡⁻¹⋆𝓡 = ε⊗ε",
            setting.convolve(&self.r.map, &self.r_inv.map) == unit && setting.convolve(&self.r_inv.map, &self.r.map) == unit,
        );
        r
    }
}

/// Drinfeld maps: u⁻¹(h) = 𝓡(S²(h₂)⊗h₁) and v(h) = 𝓡(h₁⊗S(h₂)), as
/// functionals (one value per basis element).
pub fn drinfeld_uv(c: &CoquasiStructure) -> (SparseVec, SparseVec) {
    let h = &c.host;
    let d = h.dim();
    let s2 = h.antipode.compose(&h.antipode);
    let mut u_inv = Vec::with_capacity(d);
    let mut v = Vec::with_capacity(d);
    for x in 0..d {
        let mut a = Scalar::zero();
        let mut b = Scalar::zero();
        for (l, coef) in h.legs(x, 2).iter() {
            a += &(coef * c.value(s2.col(l[1]), &SparseVec::unit(l[0])));
            b += &(coef * c.value(&SparseVec::unit(l[0]), h.s_basis(l[1])));
        }
        u_inv.push(a);
        v.push(b);
    }
    (SparseVec::from_dense(&u_inv), SparseVec::from_dense(&v))
}
