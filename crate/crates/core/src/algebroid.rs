//! Left bialgebroids and left Hopf algebroids over a base algebra B, realized
//! on explicit quotients of L⊗L and L⊗L⊗L.
//!
//! Every map out of a balanced tensor product is first written on the
//! ambient tensor space, checked to kill the relations, and only then
//! composed with the section. Lift-dependent computations are never trusted.

use crate::cocycle::{is_associative_type, validate_cocycle, CocyclePair};
use crate::error::{Error, Result};
use crate::exactla::{inverse, Accumulator, Echelon, LinMap, QuotientSpace, SparseVec};
use crate::hopf::{FinAlgebra, HopfAlgebra};
use crate::report::Report;

/// t(b)X⊗Y − X⊗s(b)Y.
pub fn tensor_b_space(l: &FinAlgebra, s: &LinMap, t: &LinMap) -> QuotientSpace {
    let n = l.dim();
    let mut e = Echelon::new(n * n);
    let mut count = 0;
    for k in 0..s.dom {
        for x in 0..n {
            let tx = l.mul(t.col(k), &SparseVec::unit(x));
            for y in 0..n {
                let sy = l.mul(s.col(k), &SparseVec::unit(y));
                let r = tx.kron(&SparseVec::unit(y), n).sub(&SparseVec::unit(x).kron(&sy, n));
                e.insert(&r);
                count += 1;
            }
        }
    }
    QuotientSpace::from_echelon(e, count)
}

/// Xt(b)⊗Y − X⊗t(b)Y.
pub fn tensor_bop_space(l: &FinAlgebra, t: &LinMap) -> QuotientSpace {
    let n = l.dim();
    let mut e = Echelon::new(n * n);
    let mut count = 0;
    for k in 0..t.dom {
        for x in 0..n {
            let xt = l.mul(&SparseVec::unit(x), t.col(k));
            for y in 0..n {
                let ty = l.mul(t.col(k), &SparseVec::unit(y));
                let r = xt.kron(&SparseVec::unit(y), n).sub(&SparseVec::unit(x).kron(&ty, n));
                e.insert(&r);
                count += 1;
            }
        }
    }
    QuotientSpace::from_echelon(e, count)
}

/// True when `map` (on the ambient space of `q`) vanishes on every relation.
pub fn annihilates(map: &LinMap, q: &QuotientSpace) -> bool {
    q.relation_basis().iter().all(|r| map.apply(r).is_zero())
}

/// Quotient of L⊗L⊗L by two families of balancing relations, built in two
/// stages: a pair quotient on adjacent slots, then the remaining relations
/// pushed into (pair quotient)⊗L or L⊗(pair quotient).
#[derive(Clone, Debug)]
pub struct TripleQuotient {
    n: usize,
    inner: QuotientSpace,
    outer: QuotientSpace,
    inner_left: bool,
}

impl TripleQuotient {
    pub fn dim(&self) -> usize {
        self.outer.dim()
    }

    /// Class of e_x⊗e_y⊗e_z.
    pub fn project_basis(&self, x: usize, y: usize, z: usize) -> SparseVec {
        let n = self.n;
        let mut acc = Accumulator::new();
        if self.inner_left {
            for (q, c) in self.inner.project_basis(x * n + y).iter() {
                acc.add_scaled(c, self.outer.project_basis(q * n + z));
            }
        } else {
            let m = self.inner.dim();
            for (q, c) in self.inner.project_basis(y * n + z).iter() {
                acc.add_scaled(c, self.outer.project_basis(x * m + q));
            }
        }
        acc.finish()
    }

    /// Class of an element of L⊗L⊗L, index (x·n + y)·n + z.
    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let n = self.n;
        let mut acc = Accumulator::new();
        for (i, c) in v.iter() {
            acc.add_scaled(c, &self.project_basis(i / (n * n), (i / n) % n, i % n));
        }
        acc.finish()
    }
}

/// L⊗_B L⊗_B L.
fn triple_b_b(bd: &Bialgebroid) -> TripleQuotient {
    let (n, l) = (bd.dim(), &bd.l);
    let inner = bd.tensor_b.clone();
    let m = inner.dim();
    let mut e = Echelon::new(m * n);
    let mut count = 0;
    // [X⊗t(b)Y]⊗Z − [X⊗Y]⊗s(b)Z; [X⊗Y] ↦ [X⊗t(b)Y] is well defined once s and t commute
    for q in 0..m {
        let (x, y) = (inner.section_basis(q) / n, inner.section_basis(q) % n);
        for k in 0..bd.base_dim() {
            let left = inner.project(&SparseVec::unit(x).kron(&l.mul(bd.t.col(k), &SparseVec::unit(y)), n));
            for z in 0..n {
                let sz = l.mul(bd.s.col(k), &SparseVec::unit(z));
                let r = left.kron(&SparseVec::unit(z), n).sub(&SparseVec::unit(q).kron(&sz, n));
                e.insert(&r);
                count += 1;
            }
        }
    }
    TripleQuotient { n, inner, outer: QuotientSpace::from_echelon(e, count), inner_left: true }
}

/// (L⊗_B L)⊗_{B^op} L, where B^op acts on L⊗_B L by right t-multiplication.
fn triple_b_bop(bd: &Bialgebroid) -> TripleQuotient {
    let (n, l) = (bd.dim(), &bd.l);
    let inner = bd.tensor_b.clone();
    let m = inner.dim();
    let mut e = Echelon::new(m * n);
    let mut count = 0;
    for q in 0..m {
        let (x, y) = (inner.section_basis(q) / n, inner.section_basis(q) % n);
        for k in 0..bd.base_dim() {
            let left = inner.project(&SparseVec::unit(x).kron(&l.mul(&SparseVec::unit(y), bd.t.col(k)), n));
            for z in 0..n {
                let tz = l.mul(bd.t.col(k), &SparseVec::unit(z));
                let r = left.kron(&SparseVec::unit(z), n).sub(&SparseVec::unit(q).kron(&tz, n));
                e.insert(&r);
                count += 1;
            }
        }
    }
    TripleQuotient { n, inner, outer: QuotientSpace::from_echelon(e, count), inner_left: true }
}

/// L⊗_{B^op}(L⊗_B L), where B^op acts on L⊗_B L by left t-multiplication of
/// the second leg.
fn triple_bop_b(bd: &Bialgebroid) -> TripleQuotient {
    let (n, l) = (bd.dim(), &bd.l);
    let inner = bd.tensor_b.clone();
    let m = inner.dim();
    let mut e = Echelon::new(n * m);
    let mut count = 0;
    for k in 0..bd.base_dim() {
        let shifted: Vec<SparseVec> = (0..m)
            .map(|q| {
                let (y, z) = (inner.section_basis(q) / n, inner.section_basis(q) % n);
                inner.project(&SparseVec::unit(y).kron(&l.mul(bd.t.col(k), &SparseVec::unit(z)), n))
            })
            .collect();
        for x in 0..n {
            let xt = l.mul(&SparseVec::unit(x), bd.t.col(k));
            for (q, sh) in shifted.iter().enumerate() {
                let r = xt.kron(&SparseVec::unit(q), m).sub(&SparseVec::unit(x).kron(sh, m));
                e.insert(&r);
                count += 1;
            }
        }
    }
    TripleQuotient { n, inner, outer: QuotientSpace::from_echelon(e, count), inner_left: false }
}

/// Left bialgebroid (L, B, s, t, Δ, ε) with Δ valued in quotient coordinates
/// of L⊗_B L. The bimodule structure is b.X.c = s(b)t(c)X.
#[derive(Clone, Debug)]
pub struct Bialgebroid {
    pub l: FinAlgebra,
    pub b: FinAlgebra,
    pub s: LinMap,
    pub t: LinMap,
    pub tensor_b: QuotientSpace,
    pub comul: LinMap,
    pub counit: LinMap,
}

impl Bialgebroid {
    /// `comul` is a map L → L⊗L (ambient); it is projected here.
    pub fn from_ambient(l: FinAlgebra, b: FinAlgebra, s: LinMap, t: LinMap, comul: &LinMap, counit: LinMap) -> Bialgebroid {
        let tensor_b = tensor_b_space(&l, &s, &t);
        let comul = LinMap::from_fn(l.dim(), tensor_b.dim(), |x| tensor_b.project(comul.col(x)));
        Bialgebroid { l, b, s, t, tensor_b, comul, counit }
    }

    /// A bialgebra over B = k.
    pub fn from_hopf(h: &HopfAlgebra) -> Bialgebroid {
        let n = h.dim();
        let unit = LinMap::from_cols(n, vec![h.one().clone()]);
        let comul = LinMap::from_fn(n, n * n, |x| h.coalgebra.comul_basis(x).clone());
        let counit = LinMap::from_fn(n, 1, |x| SparseVec::single(0, h.counit_basis(x)));
        Bialgebroid::from_ambient(h.algebra.clone(), FinAlgebra::ground(), unit.clone(), unit, &comul, counit)
    }

    pub fn dim(&self) -> usize {
        self.l.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.b.dim()
    }

    fn mul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.l.mul(a, b)
    }

    fn pure(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        a.kron(b, self.dim())
    }

    /// Δ(X) lifted to L⊗L through the section.
    pub fn comul_lift(&self, v: &SparseVec) -> SparseVec {
        self.tensor_b.lift(&self.comul.apply(v))
    }

    pub fn counit_of(&self, v: &SparseVec) -> SparseVec {
        self.counit.apply(v)
    }

    /// Class of a⊗b in L⊗_B L.
    pub fn class_b(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.tensor_b.project(&self.pure(a, b))
    }

    /// Ambient map L⊗L → `cod` from its values on basis pairs.
    fn pair_map(&self, cod: usize, f: impl Fn(usize, usize) -> SparseVec) -> LinMap {
        let n = self.dim();
        LinMap::from_fn(n * n, cod, |i| f(i / n, i % n))
    }
}

fn algebra_map_report(r: &mut Report, bd: &Bialgebroid) {
    let (l, b, db) = (&bd.l, &bd.b, bd.base_dim());
    r.check_bool("source.unit", "s(1) = 1", bd.s.apply(&b.unit) == *l.one());
    r.check("source.multiplicative", "s(bc) = s(b)s(c)", &[db, db], |t| {
        bd.s.apply(b.mul_basis(t[0], t[1])) == l.mul(bd.s.col(t[0]), bd.s.col(t[1]))
    });
    r.check_bool("target.unit", "t(1) = 1", bd.t.apply(&b.unit) == *l.one());
    r.check("target.anti-multiplicative", "t(bc) = t(c)t(b)", &[db, db], |t| {
        bd.t.apply(b.mul_basis(t[0], t[1])) == l.mul(bd.t.col(t[1]), bd.t.col(t[0]))
    });
    r.check("source-target.commute", "s(b)t(c) = t(c)s(b)", &[db, db], |t| {
        l.mul(bd.s.col(t[0]), bd.t.col(t[1])) == l.mul(bd.t.col(t[1]), bd.s.col(t[0]))
    });
}

/// Every clause of the left bialgebroid definition.
pub fn check_bialgebroid(bd: &Bialgebroid) -> Report {
    let mut r = Report::new("left bialgebroid");
    let (n, db) = (bd.dim(), bd.base_dim());
    let (l, b) = (&bd.l, &bd.b);
    r.absorb("total", l.validate());
    r.absorb("base", b.validate());
    if bd.s.cod != n || bd.t.cod != n || bd.s.dom != db || bd.t.dom != db {
        r.check_bool("shape", "s, t: B → L", false);
        return r;
    }
    algebra_map_report(&mut r, bd);
    let m = bd.tensor_b.dim();
    let q = &bd.tensor_b;
    let deltas: Vec<SparseVec> = (0..n).map(|x| bd.comul_lift(&SparseVec::unit(x))).collect();

    // bimodule maps
    r.check("comul.source-linear", "Δ(s(b)X) = s(b)X₁⊗X₂", &[db, n], |t| {
        let x = SparseVec::unit(t[1]);
        let lhs = bd.comul.apply(&bd.mul(bd.s.col(t[0]), &x));
        let rhs = left_mul_first(bd, bd.s.col(t[0]), &deltas[t[1]]);
        lhs == q.project(&rhs)
    });
    r.check("comul.target-linear", "Δ(t(b)X) = X₁⊗t(b)X₂", &[db, n], |t| {
        let x = SparseVec::unit(t[1]);
        let lhs = bd.comul.apply(&bd.mul(bd.t.col(t[0]), &x));
        let rhs = left_mul_second(bd, bd.t.col(t[0]), &deltas[t[1]]);
        lhs == q.project(&rhs)
    });
    r.check("counit.source-linear", "ε(s(b)X) = bε(X)", &[db, n], |t| {
        bd.counit_of(&bd.mul(bd.s.col(t[0]), &SparseVec::unit(t[1])))
            == b.mul(&SparseVec::unit(t[0]), bd.counit.col(t[1]))
    });
    r.check("counit.target-linear", "ε(t(b)X) = ε(X)b", &[db, n], |t| {
        bd.counit_of(&bd.mul(bd.t.col(t[0]), &SparseVec::unit(t[1])))
            == b.mul(bd.counit.col(t[1]), &SparseVec::unit(t[0]))
    });

    // coassociativity in L⊗_B L⊗_B L
    let triple = triple_b_b(bd);
    let left_leg = bd.pair_map(triple.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in deltas[u].iter() {
            acc.add_scaled(c, &triple.project_basis(i / n, i % n, v));
        }
        acc.finish()
    });
    let right_leg = bd.pair_map(triple.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in deltas[v].iter() {
            acc.add_scaled(c, &triple.project_basis(u, i / n, i % n));
        }
        acc.finish()
    });
    let guard = annihilates(&left_leg, q) && annihilates(&right_leg, q);
    r.check_bool("coring.coassociativity-well-defined", "Δ⊗id and id⊗Δ descend to L⊗_B L", guard);
    r.check("coring.coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ", &[n], |t| {
        guard && left_leg.apply(&deltas[t[0]]) == right_leg.apply(&deltas[t[0]])
    });

    // counit
    let eps_left = bd.pair_map(n, |u, v| bd.mul(&bd.s.apply(bd.counit.col(u)), &SparseVec::unit(v)));
    let eps_right = bd.pair_map(n, |u, v| bd.mul(&bd.t.apply(bd.counit.col(v)), &SparseVec::unit(u)));
    let guard = annihilates(&eps_left, q) && annihilates(&eps_right, q);
    r.check_bool("coring.counit-well-defined", "ε⊗id and id⊗ε descend to L⊗_B L", guard);
    r.check("coring.counit", "s(ε(X₁))X₂ = X = t(ε(X₂))X₁", &[n], |t| {
        let x = SparseVec::unit(t[0]);
        guard && eps_left.apply(&deltas[t[0]]) == x && eps_right.apply(&deltas[t[0]]) == x
    });

    // Takeuchi membership: (·t(b) ⊗ id − id ⊗ ·s(b)) kills Δ(X) in L⊗_B L
    let takeuchi: Vec<LinMap> = (0..db)
        .map(|k| {
            bd.pair_map(m, |u, v| {
                let a = bd.pure(&bd.mul(&SparseVec::unit(u), bd.t.col(k)), &SparseVec::unit(v));
                let c = bd.pure(&SparseVec::unit(u), &bd.mul(&SparseVec::unit(v), bd.s.col(k)));
                q.project(&a.sub(&c))
            })
        })
        .collect();
    let guard = takeuchi.iter().all(|f| annihilates(f, q));
    r.check_bool("takeuchi.well-defined", "X₁t(b)⊗X₂ − X₁⊗X₂s(b) descends to L⊗_B L", guard);
    r.check("takeuchi.membership", "X₁t(b)⊗X₂ = X₁⊗X₂s(b)", &[n, db], |t| {
        guard && takeuchi[t[1]].apply(&deltas[t[0]]).is_zero()
    });

    // multiplicativity via factorwise products of lifts
    let products: Vec<LinMap> = (0..n)
        .map(|x| {
            bd.pair_map(m, |u, v| {
                let mut acc = Accumulator::new();
                for (i, c) in deltas[x].iter() {
                    let a = l.mul_basis(i / n, u);
                    let bb = l.mul_basis(i % n, v);
                    if !a.is_zero() && !bb.is_zero() {
                        acc.add_scaled(c, &bd.pure(a, bb));
                    }
                }
                q.project(&acc.finish())
            })
        })
        .collect();
    let guard = products.iter().all(|f| annihilates(f, q));
    r.check_bool("comul.product-well-defined", "Δ(X)·(Y⊗Z) descends to L⊗_B L", guard);
    r.check("comul.multiplicative", "Δ(XY) = Δ(X)Δ(Y)", &[n, n], |t| {
        guard && bd.comul.apply(l.mul_basis(t[0], t[1])) == products[t[0]].apply(&deltas[t[1]])
    });
    r.check_bool("comul.unit", "Δ(1) = 1⊗1", bd.comul.apply(l.one()) == bd.class_b(l.one(), l.one()));

    // left character
    r.check_bool("counit.unit", "ε(1) = 1", bd.counit_of(l.one()) == b.unit);
    r.check("counit.character-source", "ε(Xs(ε(Y))) = ε(XY)", &[n, n], |t| {
        let xy = bd.counit_of(l.mul_basis(t[0], t[1]));
        xy == bd.counit_of(&bd.mul(&SparseVec::unit(t[0]), &bd.s.apply(bd.counit.col(t[1]))))
    });
    r.check("counit.character-target", "ε(Xt(ε(Y))) = ε(XY)", &[n, n], |t| {
        let xy = bd.counit_of(l.mul_basis(t[0], t[1]));
        xy == bd.counit_of(&bd.mul(&SparseVec::unit(t[0]), &bd.t.apply(bd.counit.col(t[1]))))
    });
    r
}

/// a·(first leg) on an ambient element of L⊗L.
fn left_mul_first(bd: &Bialgebroid, a: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = bd.dim();
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &bd.pure(&bd.mul(a, &SparseVec::unit(i / n)), &SparseVec::unit(i % n)));
    }
    acc.finish()
}

/// a·(second leg) on an ambient element of L⊗L.
fn left_mul_second(bd: &Bialgebroid, a: &SparseVec, v: &SparseVec) -> SparseVec {
    let n = bd.dim();
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &bd.pure(&SparseVec::unit(i / n), &bd.mul(a, &SparseVec::unit(i % n))));
    }
    acc.finish()
}

/// (first leg)·a and (second leg)·b on an ambient element of L⊗L.
fn right_mul_both(bd: &Bialgebroid, v: &SparseVec, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let n = bd.dim();
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        let x = bd.mul(&SparseVec::unit(i / n), a);
        let y = bd.mul(&SparseVec::unit(i % n), b);
        acc.add_scaled(c, &bd.pure(&x, &y));
    }
    acc.finish()
}

/// λ(X⊗Y) = X₁⊗_B X₂Y on the ambient L⊗L.
pub fn lambda_ambient(bd: &Bialgebroid) -> LinMap {
    let n = bd.dim();
    let deltas: Vec<SparseVec> = (0..n).map(|x| bd.comul_lift(&SparseVec::unit(x))).collect();
    bd.pair_map(bd.tensor_b.dim(), |x, y| {
        bd.tensor_b.project(&right_mul_both(bd, &deltas[x], bd.l.one(), &SparseVec::unit(y)))
    })
}

/// λ: L⊗_{B^op}L → L⊗_B L in quotient coordinates.
pub fn lambda_matrix(bd: &Bialgebroid, tensor_bop: &QuotientSpace) -> Result<LinMap> {
    let amb = lambda_ambient(bd);
    if !annihilates(&amb, tensor_bop) {
        return Err(Error::LambdaNotWellDefined);
    }
    Ok(amb.compose(&tensor_bop.sect_matrix()))
}

/// λ⁻¹ by exact inversion.
pub fn lambda_inverse(bd: &Bialgebroid, tensor_bop: &QuotientSpace) -> Result<LinMap> {
    let lam = lambda_matrix(bd, tensor_bop)?;
    if lam.dom != lam.cod {
        return Err(Error::LambdaNotInvertible);
    }
    inverse(&lam).ok_or(Error::LambdaNotInvertible)
}

/// Left bialgebroid with λ⁻¹ and optionally an antipode (S, S⁻¹).
#[derive(Clone, Debug)]
pub struct LeftHopfAlgebroid {
    pub base: Bialgebroid,
    pub tensor_bop: QuotientSpace,
    pub lambda_inv: LinMap,
    pub antipode: Option<(LinMap, LinMap)>,
}

impl LeftHopfAlgebroid {
    /// λ⁻¹ is given on the ambient L⊗L and restricted through the section of ⊗_B.
    pub fn from_ambient_inverse(base: Bialgebroid, lambda_inv: &LinMap) -> LeftHopfAlgebroid {
        let tensor_bop = tensor_bop_space(&base.l, &base.t);
        let lambda_inv = LinMap::from_fn(base.tensor_b.dim(), tensor_bop.dim(), |k| {
            tensor_bop.project(lambda_inv.col(base.tensor_b.section_basis(k)))
        });
        LeftHopfAlgebroid { base, tensor_bop, lambda_inv, antipode: None }
    }

    /// λ⁻¹ computed by inversion.
    pub fn derive(base: Bialgebroid) -> Result<LeftHopfAlgebroid> {
        let tensor_bop = tensor_bop_space(&base.l, &base.t);
        let lambda_inv = lambda_inverse(&base, &tensor_bop)?;
        Ok(LeftHopfAlgebroid { base, tensor_bop, lambda_inv, antipode: None })
    }

    /// Hopf algebra over B = k with λ⁻¹(h⊗g) = h₁⊗S(h₂)g and antipode (S, S⁻¹).
    pub fn from_hopf(h: &HopfAlgebra) -> LeftHopfAlgebroid {
        let n = h.dim();
        let base = Bialgebroid::from_hopf(h);
        let amb = LinMap::from_fn(n * n, n * n, |i| {
            let (x, y) = (i / n, i % n);
            let mut acc = Accumulator::new();
            for (l, c) in h.legs(x, 2).iter() {
                acc.add_scaled(c, &SparseVec::unit(l[0]).kron(&h.mul(h.s_basis(l[1]), &SparseVec::unit(y)), n));
            }
            acc.finish()
        });
        let mut out = LeftHopfAlgebroid::from_ambient_inverse(base, &amb);
        if let Some(s_inv) = &h.antipode_inv {
            out.antipode = Some((h.antipode.clone(), s_inv.clone()));
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn with_antipode(mut self, s: LinMap, s_inv: LinMap) -> LeftHopfAlgebroid {
        self.antipode = Some((s, s_inv));
        self
    }

    /// Class of a⊗b in L⊗_{B^op} L.
    pub fn class_bop(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.tensor_bop.project(&a.kron(b, self.dim()))
    }

    /// X₊⊗X₋ = λ⁻¹(X⊗_B 1) in L⊗_{B^op}L coordinates.
    pub fn plus_minus(&self, x: &SparseVec) -> SparseVec {
        let l = &self.base.l;
        self.lambda_inv.apply(&self.base.class_b(x, l.one()))
    }
}

/// λ well defined on L⊗_{B^op}L and the stored λ⁻¹ a two-sided inverse.
pub fn check_left_hopf(h: &LeftHopfAlgebroid) -> Result<Report> {
    let bd = &h.base;
    let lam = lambda_matrix(bd, &h.tensor_bop)?;
    let mut r = Report::new("left Hopf algebroid");
    r.check_bool("lambda.well-defined", "λ(Xt(b)⊗Y) = λ(X⊗t(b)Y)", true);
    let (mb, mbop) = (bd.tensor_b.dim(), h.tensor_bop.dim());
    if mb != mbop || crate::exactla::rank(&lam) < mb {
        return Err(Error::LambdaNotInvertible);
    }
    let shape_ok = h.lambda_inv.dom == mb && h.lambda_inv.cod == mbop;
    r.check_bool("lambda.inverse-shape", "λ⁻¹: L⊗_B L → L⊗_{B^op} L", shape_ok);
    r.check("lambda.right-inverse", "λ∘λ⁻¹ = id", &[mb], |t| {
        shape_ok && lam.apply(h.lambda_inv.col(t[0])) == SparseVec::unit(t[0])
    });
    r.check("lambda.left-inverse", "λ⁻¹∘λ = id", &[mbop], |t| {
        shape_ok && h.lambda_inv.apply(lam.col(t[0])) == SparseVec::unit(t[0])
    });
    Ok(r)
}

/// The three antipode conditions, S∘S⁻¹ = id, and the induced λ⁻¹ formula
/// λ⁻¹(X⊗_B Y) = S⁻¹(S(X)₂)⊗_{B^op}S(X)₁Y against the stored λ⁻¹.
pub fn check_antipode(h: &LeftHopfAlgebroid, s: &LinMap, s_inv: &LinMap) -> Report {
    let bd = &h.base;
    let (n, db) = (bd.dim(), bd.base_dim());
    let l = &bd.l;
    let mut r = Report::new("left antipode");
    r.check_bool(
        "antipode.invertible",
        "S∘S⁻¹ = S⁻¹∘S = id",
        s.compose(s_inv).is_identity() && s_inv.compose(s).is_identity(),
    );
    r.check("antipode.target-to-source", "S(t(b)X) = S(X)s(b)", &[db, n], |t| {
        s.apply(&bd.mul(bd.t.col(t[0]), &SparseVec::unit(t[1]))) == bd.mul(s.col(t[1]), bd.s.col(t[0]))
    });
    r.check("antipode.inverse-source-to-target", "S⁻¹(s(b)X) = S⁻¹(X)t(b)", &[db, n], |t| {
        s_inv.apply(&bd.mul(bd.s.col(t[0]), &SparseVec::unit(t[1]))) == bd.mul(s_inv.col(t[1]), bd.t.col(t[0]))
    });
    let q = &bd.tensor_b;
    let deltas: Vec<SparseVec> = (0..n).map(|x| bd.comul_lift(&SparseVec::unit(x))).collect();

    // u⊗v ↦ S⁻¹(v)₁ ⊗ S⁻¹(v)₂u
    let cond2 = bd.pair_map(q.dim(), |u, v| {
        let d = bd.comul_lift(s_inv.col(v));
        q.project(&right_mul_both(bd, &d, l.one(), &SparseVec::unit(u)))
    });
    let guard2 = annihilates(&cond2, q);
    r.check_bool("antipode.inverse-coproduct-well-defined", "X₁⊗X₂ ↦ S⁻¹(X₂)₁⊗S⁻¹(X₂)₂X₁ descends", guard2);
    r.check("antipode.inverse-coproduct", "S⁻¹(X₂)₁⊗_B S⁻¹(X₂)₂X₁ = S⁻¹(X)⊗_B 1", &[n], |t| {
        guard2 && cond2.apply(&deltas[t[0]]) == bd.class_b(s_inv.col(t[0]), l.one())
    });

    // u⊗v ↦ S(u)₁v ⊗ S(u)₂
    let cond3 = bd.pair_map(q.dim(), |u, v| {
        let d = bd.comul_lift(s.col(u));
        q.project(&right_mul_both(bd, &d, &SparseVec::unit(v), l.one()))
    });
    let guard3 = annihilates(&cond3, q);
    r.check_bool("antipode.coproduct-well-defined", "X₁⊗X₂ ↦ S(X₁)₁X₂⊗S(X₁)₂ descends", guard3);
    r.check("antipode.coproduct", "S(X₁)₁X₂⊗_B S(X₁)₂ = 1⊗_B S(X)", &[n], |t| {
        guard3 && cond3.apply(&deltas[t[0]]) == bd.class_b(l.one(), s.col(t[0]))
    });

    // X⊗Y ↦ S⁻¹(S(X)₂) ⊗ S(X)₁Y
    let formula = bd.pair_map(h.tensor_bop.dim(), |x, y| {
        let d = bd.comul_lift(s.col(x));
        let mut acc = Accumulator::new();
        for (i, c) in d.iter() {
            let a = bd.mul(&SparseVec::unit(i / n), &SparseVec::unit(y));
            acc.add_scaled(c, &s_inv.col(i % n).kron(&a, n));
        }
        h.tensor_bop.project(&acc.finish())
    });
    let guard = annihilates(&formula, q);
    r.check_bool("antipode.lambda-formula-well-defined", "S⁻¹(S(X)₂)⊗S(X)₁Y descends to L⊗_B L", guard);
    r.check_bool(
        "antipode.lambda-formula",
        "S⁻¹(S(X)₂)⊗_{B^op}S(X)₁Y equals the stored λ⁻¹",
        guard && formula.compose(&q.sect_matrix()) == h.lambda_inv,
    );
    r
}

/// Identities of X₊⊗X₋ = λ⁻¹(X⊗_B 1), checked on every basis element.
pub fn plus_minus_suite(h: &LeftHopfAlgebroid) -> Result<Report> {
    let bd = &h.base;
    let (n, db) = (bd.dim(), bd.base_dim());
    let l = &bd.l;
    let (qb, qo) = (&bd.tensor_b, &h.tensor_bop);
    let lam = lambda_matrix(bd, qo)?;
    if h.lambda_inv.cod != lam.dom || !lam.compose(&h.lambda_inv).is_identity() {
        return Err(Error::PreconditionViolated("stored λ⁻¹ is not a right inverse of λ".into()));
    }
    let mut r = Report::new("X₊⊗X₋ identities");
    let unit = |k: usize| SparseVec::unit(k);
    let pm_q: Vec<SparseVec> = (0..n).map(|x| h.plus_minus(&unit(x))).collect();
    let pm: Vec<SparseVec> = pm_q.iter().map(|v| qo.lift(v)).collect();
    let pm_of = |v: &SparseVec| {
        let mut acc = Accumulator::new();
        for (k, c) in v.iter() {
            acc.add_scaled(c, &pm_q[k]);
        }
        acc.finish()
    };
    let deltas: Vec<SparseVec> = (0..n).map(|x| bd.comul_lift(&unit(x))).collect();

    let lam_amb = lambda_ambient(bd);
    r.check("pm.lambda", "X₊₁⊗_B X₊₂X₋ = X⊗_B 1", &[n], |t| {
        lam_amb.apply(&pm[t[0]]) == bd.class_b(&unit(t[0]), l.one())
    });

    // u⊗v ↦ u₊⊗u₋v
    let g = bd.pair_map(qo.dim(), |u, v| qo.project(&right_mul_both(bd, &pm[u], l.one(), &unit(v))));
    let guard = annihilates(&g, qb);
    r.check_bool("pm.lambda-inverse-well-defined", "X⊗Y ↦ X₊⊗X₋Y descends to L⊗_B L", guard);
    r.check("pm.lambda-inverse", "X₁₊⊗_{B^op}X₁₋X₂ = X⊗_{B^op}1", &[n], |t| {
        guard && g.apply(&deltas[t[0]]) == h.class_bop(&unit(t[0]), l.one())
    });

    // (XY)₊⊗(XY)₋ = X₊Y₊⊗Y₋X₋; lift independent because t(b)Y₊⊗Y₋ = Y₊⊗Y₋t(b)
    r.check("pm.multiplicative", "(XY)₊⊗(XY)₋ = X₊Y₊⊗Y₋X₋", &[n, n], |t| {
        let mut acc = Accumulator::new();
        for (i, c) in pm[t[0]].iter() {
            for (j, d) in pm[t[1]].iter() {
                let a = l.mul_basis(i / n, j / n);
                let b = l.mul_basis(j % n, i % n);
                if !a.is_zero() && !b.is_zero() {
                    acc.add_scaled(&(c * d), &a.kron(b, n));
                }
            }
        }
        qo.project(&acc.finish()) == pm_of(l.mul_basis(t[0], t[1]))
    });
    r.check_bool("pm.unit", "1₊⊗1₋ = 1⊗1", pm_of(l.one()) == h.class_bop(l.one(), l.one()));

    // X₊₁⊗_B X₊₂⊗_{B^op}X₋ = X₁⊗_B X₂₊⊗_{B^op}X₂₋
    let ta = triple_b_bop(bd);
    let lhs = bd.pair_map(ta.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in deltas[u].iter() {
            acc.add_scaled(c, &ta.project_basis(i / n, i % n, v));
        }
        acc.finish()
    });
    let rhs = bd.pair_map(ta.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in pm[v].iter() {
            acc.add_scaled(c, &ta.project_basis(u, i / n, i % n));
        }
        acc.finish()
    });
    let guard = annihilates(&lhs, qo) && annihilates(&rhs, qb);
    r.check_bool("pm.coproduct-plus-well-defined", "both sides descend", guard);
    r.check("pm.coproduct-plus", "X₊₁⊗_B X₊₂⊗_{B^op}X₋ = X₁⊗_B X₂₊⊗_{B^op}X₂₋", &[n], |t| {
        guard && lhs.apply(&pm[t[0]]) == rhs.apply(&deltas[t[0]])
    });

    // X₊⊗_{B^op}X₋₁⊗_B X₋₂ = X₊₊⊗_{B^op}X₋⊗_B X₊₋
    let tb = triple_bop_b(bd);
    let lhs = bd.pair_map(tb.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in deltas[v].iter() {
            acc.add_scaled(c, &tb.project_basis(u, i / n, i % n));
        }
        acc.finish()
    });
    let rhs = bd.pair_map(tb.dim(), |u, v| {
        let mut acc = Accumulator::new();
        for (i, c) in pm[u].iter() {
            acc.add_scaled(c, &tb.project_basis(i / n, v, i % n));
        }
        acc.finish()
    });
    let guard = annihilates(&lhs, qo) && annihilates(&rhs, qo);
    r.check_bool("pm.coproduct-minus-well-defined", "both sides descend", guard);
    r.check("pm.coproduct-minus", "X₊⊗_{B^op}X₋₁⊗_B X₋₂ = X₊₊⊗_{B^op}X₋⊗_B X₊₋", &[n], |t| {
        guard && lhs.apply(&pm[t[0]]) == rhs.apply(&pm[t[0]])
    });

    let f = bd.pair_map(n, |u, v| bd.mul(&unit(u), &bd.t.apply(bd.counit.col(v))));
    let guard = annihilates(&f, qo);
    r.check_bool("pm.counit-well-defined", "X⊗Y ↦ Xt(ε(Y)) descends", guard);
    r.check("pm.counit", "X₊t(ε(X₋)) = X", &[n], |t| guard && f.apply(&pm[t[0]]) == unit(t[0]));

    let f = bd.pair_map(n, |u, v| l.mul_basis(u, v).clone());
    let guard = annihilates(&f, qo);
    r.check_bool("pm.product-well-defined", "X⊗Y ↦ XY descends", guard);
    r.check("pm.product", "X₊X₋ = s(ε(X))", &[n], |t| {
        guard && f.apply(&pm[t[0]]) == bd.s.apply(bd.counit.col(t[0]))
    });

    // interaction with s and t: (which mover, X multiplied on the right, leg-wise action)
    let cases: [(&str, &str, bool, bool); 4] = [
        ("pm.right-source", "(Xs(b))₊⊗(Xs(b))₋ = X₊s(b)⊗X₋", false, true),
        ("pm.left-source", "(s(b)X)₊⊗(s(b)X)₋ = s(b)X₊⊗X₋", false, false),
        ("pm.left-target", "(t(b)X)₊⊗(t(b)X)₋ = X₊⊗X₋s(b)", true, false),
        ("pm.right-target", "(Xt(b))₊⊗(Xt(b))₋ = X₊⊗s(b)X₋", true, true),
    ];
    for (id, anchor, uses_t, right) in cases {
        let maps: Vec<LinMap> = (0..db)
            .map(|k| {
                let sb = bd.s.col(k);
                bd.pair_map(qo.dim(), |u, v| {
                    let (x, y) = match (uses_t, right) {
                        (false, true) => (bd.mul(&unit(u), sb), unit(v)),
                        (false, false) => (bd.mul(sb, &unit(u)), unit(v)),
                        (true, false) => (unit(u), bd.mul(&unit(v), sb)),
                        (true, true) => (unit(u), bd.mul(sb, &unit(v))),
                    };
                    qo.project(&x.kron(&y, n))
                })
            })
            .collect();
        let guard = maps.iter().all(|f| annihilates(f, qo));
        r.check_bool(&format!("{id}-well-defined"), "right-hand side descends", guard);
        r.check(id, anchor, &[db, n], |t| {
            let mover = if uses_t { bd.t.col(t[0]) } else { bd.s.col(t[0]) };
            let x = if right { bd.mul(&unit(t[1]), mover) } else { bd.mul(mover, &unit(t[1])) };
            guard && pm_of(&x) == maps[t[0]].apply(&pm[t[1]])
        });
    }
    Ok(r)
}

/// f⊗f on balanced tensor products, from the ambient f⊗f followed by the
/// target projection; None when it does not descend.
pub fn descended_square(f: &LinMap, from: &QuotientSpace, to: &QuotientSpace) -> Option<LinMap> {
    let n = f.dom;
    let amb = LinMap::from_fn(n * n, to.dim(), |i| to.project(&f.col(i / n).kron(f.col(i % n), f.cod)));
    annihilates(&amb, from).then(|| amb.compose(&from.sect_matrix()))
}

/// f: src → dst as an isomorphism of left Hopf algebroids: every structure
/// tensor of the source, transported through f, equals the target's.
pub fn check_isomorphism(title: &str, src_h: &LeftHopfAlgebroid, dst_h: &LeftHopfAlgebroid, f: &LinMap, f_inv: &LinMap) -> Report {
    let (src, dst) = (&src_h.base, &dst_h.base);
    let n = src.dim();
    let mut r = Report::new(title);
    let square = f.dom == n && f.cod == dst.dim() && f_inv.dom == dst.dim() && f_inv.cod == n;
    r.check_bool(
        "iso.two-sided",
        "f∘f⁻¹ = f⁻¹∘f = id",
        square && f.compose(f_inv).is_identity() && f_inv.compose(f).is_identity(),
    );
    if !square {
        return r;
    }
    r.check("transport.product", "f(f⁻¹(X)f⁻¹(Y)) = XY", &[n, n], |t| {
        let x = src.l.mul(f_inv.col(t[0]), f_inv.col(t[1]));
        f.apply(&x) == *dst.l.mul_basis(t[0], t[1])
    });
    r.check_bool("transport.unit", "f(1) = 1", f.apply(src.l.one()) == *dst.l.one());
    r.check_bool("transport.source", "f∘s = s", f.compose(&src.s) == dst.s);
    r.check_bool("transport.target", "f∘t = t", f.compose(&src.t) == dst.t);
    r.check_bool("transport.counit", "ε∘f⁻¹ = ε", src.counit.compose(f_inv) == dst.counit);
    let sq_b = descended_square(f, &src.tensor_b, &dst.tensor_b);
    r.check_bool("transport.coproduct-well-defined", "f⊗f descends to ⊗_B", sq_b.is_some());
    r.check_bool(
        "transport.coproduct",
        "(f⊗f)∘Δ∘f⁻¹ = Δ",
        sq_b.as_ref().is_some_and(|m| m.compose(&src.comul).compose(f_inv) == dst.comul),
    );
    let sq_o = descended_square(f, &src_h.tensor_bop, &dst_h.tensor_bop);
    r.check_bool("transport.tensor-bop-well-defined", "f⊗f descends to ⊗_{B^op}", sq_o.is_some());
    r.check_bool(
        "transport.lambda-inverse",
        "(f⊗f)∘λ⁻¹ = λ⁻¹∘(f⊗f)",
        match (&sq_b, &sq_o) {
            (Some(b), Some(o)) => o.compose(&src_h.lambda_inv) == dst_h.lambda_inv.compose(b),
            _ => false,
        },
    );
    r
}

fn elem3(b: &SparseVec, bp: &SparseVec, h: &SparseVec, db: usize, dh: usize) -> SparseVec {
    b.kron(bp, db).kron(h, dh)
}

/// Product of B^e#_σH on basis elements:
/// (b⊗b'#h)(c⊗c'#g) = b(h₁⊳c)σ(h₂,g₁) ⊗ c'(S(g₄)⊳b')σ(S(g₃),S(h₄)) # h₃g₂.
fn cocycle_algebroid_algebra(pair: &CocyclePair) -> FinAlgebra {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let n = db * db * dh;
    let split = |i: usize| (i / (db * dh), (i / dh) % db, i % dh);
    let table = |i: usize, j: usize| {
        let (b1, b1p, x) = split(i);
        let (c1, c1p, y) = split(j);
        let mut acc = Accumulator::new();
        for (hl, p) in h.legs(x, 4).iter() {
            let front = b.mul(&SparseVec::unit(b1), pair.act.at(hl[0], c1));
            if front.is_zero() {
                continue;
            }
            for (gl, q) in h.legs(y, 4).iter() {
                let left = b.mul(&front, pair.sigma_at(hl[1], gl[0]));
                if left.is_zero() {
                    continue;
                }
                let acted = pair.act_on(h.s_basis(gl[3]), &SparseVec::unit(b1p));
                let sig = pair.sigma_of(h.s_basis(gl[2]), h.s_basis(hl[3]));
                let right = b.product(&[&SparseVec::unit(c1p), &acted, &sig]);
                if right.is_zero() {
                    continue;
                }
                acc.add_scaled(&(p * q), &elem3(&left, &right, h.mul_basis(hl[2], gl[1]), db, dh));
            }
        }
        acc.finish()
    };
    let mut alg = FinAlgebra::from_table(n, elem3(&b.unit, &b.unit, h.one(), db, dh), table);
    alg.labels = (0..n)
        .map(|i| {
            let (x, y, z) = split(i);
            format!("{}⊗{}#{}", b.labels[x], b.labels[y], h.algebra.labels[z])
        })
        .collect();
    alg
}

/// B^e#_σH as a left Hopf algebroid, λ⁻¹ from its closed form.
pub fn build_cocycle_algebroid(pair: &CocyclePair) -> Result<LeftHopfAlgebroid> {
    let r = validate_cocycle(pair);
    if !r.passed() {
        let failed: Vec<_> = r.failures().map(|c| c.id.clone()).collect();
        return Err(Error::InvalidPair(failed.join(", ")));
    }
    Ok(build_cocycle_algebroid_unchecked(pair))
}

pub fn build_cocycle_algebroid_unchecked(pair: &CocyclePair) -> LeftHopfAlgebroid {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let n = db * db * dh;
    let l = cocycle_algebroid_algebra(pair);
    let one_b = &b.unit;
    let s = LinMap::from_fn(db, n, |k| elem3(&SparseVec::unit(k), one_b, h.one(), db, dh));
    let t = LinMap::from_fn(db, n, |k| elem3(one_b, &SparseVec::unit(k), h.one(), db, dh));
    let split = |i: usize| (i / (db * dh), (i / dh) % db, i % dh);
    // Δ(b⊗b'#h) = (b⊗σ⁻¹(S(h₂),h₃)#h₁) ⊗ (1⊗b'#h₄)
    let comul = LinMap::from_fn(n, n * n, |i| {
        let (x, xp, y) = split(i);
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(y, 4).iter() {
            let sig = pair.sigma_inv_of(h.s_basis(hl[1]), &SparseVec::unit(hl[2]));
            let first = elem3(&SparseVec::unit(x), &sig, &SparseVec::unit(hl[0]), db, dh);
            let second = elem3(one_b, &SparseVec::unit(xp), &SparseVec::unit(hl[3]), db, dh);
            acc.add_scaled(c, &first.kron(&second, n));
        }
        acc.finish()
    });
    // ε(b⊗b'#h) = b(h₁⊳b')σ(h₂,S(h₃))
    let counit = LinMap::from_fn(n, db, |i| {
        let (x, xp, y) = split(i);
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(y, 3).iter() {
            let v = b.product(&[
                &SparseVec::unit(x),
                pair.act.at(hl[0], xp),
                &pair.sigma_of(&SparseVec::unit(hl[1]), h.s_basis(hl[2])),
            ]);
            acc.add_scaled(c, &v);
        }
        acc.finish()
    });
    let lambda_inv = cocycle_lambda_inverse_ambient(pair, &l);
    let base = Bialgebroid::from_ambient(l, b.clone(), s, t, &comul, counit);
    LeftHopfAlgebroid::from_ambient_inverse(base, &lambda_inv)
}

/// λ⁻¹((b⊗b'#h)⊗Y) = (b⊗1#h₁) ⊗ (b'⊗σ⁻¹(S²(h₃),S(h₂))#S(h₄))Y on L⊗L.
pub fn cocycle_lambda_inverse_ambient(pair: &CocyclePair, l: &FinAlgebra) -> LinMap {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let n = l.dim();
    let split = |i: usize| (i / (db * dh), (i / dh) % db, i % dh);
    LinMap::from_fn(n * n, n * n, |i| {
        let (x, y) = (i / n, i % n);
        let (bx, bxp, hx) = split(x);
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(hx, 4).iter() {
            let first = elem3(&SparseVec::unit(bx), &b.unit, &SparseVec::unit(hl[0]), db, dh);
            let s2 = h.s(h.s_basis(hl[2]));
            let sig = pair.sigma_inv_of(&s2, h.s_basis(hl[1]));
            let mid = elem3(&SparseVec::unit(bxp), &sig, h.s_basis(hl[3]), db, dh);
            let second = l.mul(&mid, &SparseVec::unit(y));
            acc.add_scaled(c, &first.kron(&second, n));
        }
        acc.finish()
    })
}

/// The antipode of B^e#_σH for associative-type pairs:
/// S(b⊗b'#h) = b'⊗σ⁻¹(S²(h₂),S(h₁))(S²(h₃)⊳b)#S(h₄),
/// S⁻¹(b⊗b'#h) = (h₂⊳b')σ(h₃,S(h₄))⊗b#S⁻¹(h₁).
pub fn cocycle_algebroid_antipode(pair: &CocyclePair) -> Result<(LinMap, LinMap)> {
    if !is_associative_type(pair)? {
        return Err(Error::NotAssociativeType);
    }
    cocycle_algebroid_antipode_unchecked(pair)
}

/// The same formulas without the associative-type precondition.
pub fn cocycle_algebroid_antipode_unchecked(pair: &CocyclePair) -> Result<(LinMap, LinMap)> {
    let (h, b) = (pair.h(), pair.b());
    if h.antipode_inv.is_none() {
        return Err(Error::PreconditionViolated("antipode of H is not invertible".into()));
    }
    let (dh, db) = (h.dim(), b.dim());
    let n = db * db * dh;
    let split = |i: usize| (i / (db * dh), (i / dh) % db, i % dh);
    let s = LinMap::from_fn(n, n, |i| {
        let (x, xp, y) = split(i);
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(y, 4).iter() {
            let sig = pair.sigma_inv_of(&h.s(h.s_basis(hl[1])), h.s_basis(hl[0]));
            let acted = pair.act_on(&h.s(h.s_basis(hl[2])), &SparseVec::unit(x));
            let mid = b.mul(&sig, &acted);
            acc.add_scaled(c, &elem3(&SparseVec::unit(xp), &mid, h.s_basis(hl[3]), db, dh));
        }
        acc.finish()
    });
    let s_inv = LinMap::from_fn(n, n, |i| {
        let (x, xp, y) = split(i);
        let mut acc = Accumulator::new();
        for (hl, c) in h.legs(y, 4).iter() {
            let first = b.mul(pair.act.at(hl[1], xp), &pair.sigma_of(&SparseVec::unit(hl[2]), h.s_basis(hl[3])));
            acc.add_scaled(c, &elem3(&first, &SparseVec::unit(x), h.s_inv_basis(hl[0]), db, dh));
        }
        acc.finish()
    });
    Ok((s, s_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, sweedler_cotwist, sweedler_h4, symmetric_group3};
    use crate::cocycle::{gauge_transform, GaugeMap};
    use crate::comod::Measuring;
    use crate::exactla::{CoeffTensor, Scalar};

    fn h4_galois() -> CocyclePair {
        let h = sweedler_h4();
        let chi = sweedler_cotwist(&h, Scalar::frac(1, 2));
        CocyclePair::scalar(&h, chi.chi).unwrap()
    }

    /// kZ₂ acting on B = kZ₂ = k[y]/(y²−1), by y ↦ −y when `swap`, with σ(g,g) = c.
    fn z2_pair(swap: bool, c: SparseVec) -> CocyclePair {
        let h = cyclic_group(2);
        let b = cyclic_group(2).algebra;
        let act = CoeffTensor::from_fn(vec![2, 2], 2, |t| {
            let sign = if swap && t[0] == 1 && t[1] == 1 { Scalar::int(-1) } else { Scalar::one() };
            SparseVec::single(t[1], sign)
        });
        let act = Measuring::new(&h, &b, act);
        let sigma = CoeffTensor::from_fn(vec![2, 2], 2, |t| {
            if t[0] == 1 && t[1] == 1 {
                c.clone()
            } else {
                SparseVec::unit(0)
            }
        });
        CocyclePair::new(act, sigma).unwrap()
    }

    fn swap_pair() -> CocyclePair {
        z2_pair(true, SparseVec::single(0, Scalar::int(3)))
    }

    fn base_valued_pair() -> CocyclePair {
        z2_pair(false, SparseVec::from_pairs([(0, Scalar::int(2)), (1, Scalar::one())]))
    }

    #[test]
    fn hopf_algebra_as_algebroid() {
        for h in [cyclic_group(3), sweedler_h4()] {
            let a = LeftHopfAlgebroid::from_hopf(&h);
            assert!(check_bialgebroid(&a.base).passed());
            assert!(check_left_hopf(&a).unwrap().passed());
            let (s, si) = a.antipode.clone().unwrap();
            assert!(check_antipode(&a, &s, &si).passed());
            assert!(plus_minus_suite(&a).unwrap().passed());
        }
    }

    #[test]
    fn zero_counit_fails_left_character() {
        let mut bd = Bialgebroid::from_hopf(&sweedler_h4());
        bd.counit = LinMap::zero(4, 1);
        let r = check_bialgebroid(&bd);
        assert_eq!(r.status("counit.unit"), Some(crate::report::Status::Fail));
    }

    #[test]
    fn cocycle_algebroid_over_ground_field() {
        let pair = h4_galois();
        let a = build_cocycle_algebroid(&pair).unwrap();
        let r = check_bialgebroid(&a.base);
        assert!(r.passed(), "{r}");
        assert!(check_left_hopf(&a).unwrap().passed());
        let (s, si) = cocycle_algebroid_antipode(&pair).unwrap();
        let r = check_antipode(&a, &s, &si);
        assert!(r.passed(), "{r}");
        assert!(plus_minus_suite(&a).unwrap().passed());
    }

    #[test]
    fn counit_closed_form() {
        let pair = swap_pair();
        let a = build_cocycle_algebroid(&pair).unwrap();
        // ε(1⊗y#g) = (g⊳y)σ(g,g) = −3y
        let i = 2 + 1; // (b, b', h) = (1, y, g)
        let expect = SparseVec::single(1, Scalar::int(-3));
        assert_eq!(*a.base.counit.col(i), expect);
    }

    #[test]
    fn cocycle_algebroid_with_base() {
        for pair in [swap_pair(), base_valued_pair()] {
        let a = build_cocycle_algebroid(&pair).unwrap();
        let r = check_bialgebroid(&a.base);
        assert!(r.passed(), "{r}");
        let r = check_left_hopf(&a).unwrap();
        assert!(r.passed(), "{r}");
        let (s, si) = cocycle_algebroid_antipode(&pair).unwrap();
        let r = check_antipode(&a, &s, &si);
        assert!(r.passed(), "{r}");
        let r = plus_minus_suite(&a).unwrap();
        assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn coboundary_over_s3() {
        let h = symmetric_group3();
        let k = FinAlgebra::ground();
        let vals = [1, 2, 3, 5, 7, 11];
        let u = LinMap::from_fn(6, 1, |i| SparseVec::single(0, Scalar::int(vals[i])));
        let u = GaugeMap::new(&h, &k, u).unwrap();
        let pair = gauge_transform(&CocyclePair::untwisted(Measuring::trivial(&h, &k)), &u).unwrap();
        let a = build_cocycle_algebroid(&pair).unwrap();
        assert!(check_bialgebroid(&a.base).passed());
        assert!(check_left_hopf(&a).unwrap().passed());
        let (s, si) = cocycle_algebroid_antipode(&pair).unwrap();
        assert!(check_antipode(&a, &s, &si).passed());
    }

    #[test]
    fn rank_deficient_lambda() {
        let mut bd = Bialgebroid::from_hopf(&cyclic_group(2));
        // Δ = e₀⊗ε: X ↦ ε(X) 1⊗1 collapses λ
        bd.comul = LinMap::from_fn(2, 4, |_| SparseVec::unit(0));
        let a = LeftHopfAlgebroid { tensor_bop: tensor_bop_space(&bd.l, &bd.t), lambda_inv: LinMap::zero(4, 4), base: bd, antipode: None };
        assert_eq!(check_left_hopf(&a).unwrap_err(), Error::LambdaNotInvertible);
    }

    #[test]
    fn corrupted_antipode_fails_with_witness() {
        let pair = swap_pair();
        let a = build_cocycle_algebroid(&pair).unwrap();
        let (s, si) = cocycle_algebroid_antipode(&pair).unwrap();
        let mut bad = s.clone();
        bad.cols[3] = bad.cols[3].add(&SparseVec::unit(0));
        let r = check_antipode(&a, &bad, &si);
        assert!(!r.passed());
        let c = r.get("antipode.target-to-source").unwrap();
        assert_eq!(c.status, crate::report::Status::Fail);
        assert!(c.witness.as_ref().is_some_and(|w| w.len() == 2));
    }

    #[test]
    fn corrupted_lambda_inverse_fails() {
        let mut a = build_cocycle_algebroid(&swap_pair()).unwrap();
        a.lambda_inv = a.lambda_inv.scale(&Scalar::int(-1));
        let r = check_left_hopf(&a).unwrap();
        assert_eq!(r.status("lambda.right-inverse"), Some(crate::report::Status::Fail));
        assert!(plus_minus_suite(&a).is_err());
    }

    #[test]
    fn non_associative_pair_has_no_antipode() {
        let pair = crate::catalog::pairs::m2_non_associative();
        assert_eq!(cocycle_algebroid_antipode(&pair).unwrap_err(), Error::NotAssociativeType);
        let a = build_cocycle_algebroid(&pair).unwrap();
        assert!(check_left_hopf(&a).unwrap().passed());
    }
}
