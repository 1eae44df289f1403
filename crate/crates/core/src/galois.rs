//! Hopf–Galois extensions: the canonical map and its inverse, the translation
//! map, cotwisting, and the Ehresmann–Schauenburg left Hopf algebroid 𝓛(P,H)
//! realized on an explicit subspace of P⊗P.

use crate::algebroid::{
    annihilates, build_cocycle_algebroid, check_antipode, check_bialgebroid, check_isomorphism, check_left_hopf,
    tensor_b_space, tensor_bop_space, Bialgebroid, LeftHopfAlgebroid,
};
use crate::cocycle::CocyclePair;
use crate::comod::{balanced_tensor, canonical_map, coinvariant_algebra, coinvariants, cotwist_comodule_algebra, ComoduleAlgebra, Coinvariants};
use crate::crossprod::build_cross_product;
use crate::error::{Error, GaloisFailure, Result};
use crate::exactla::{inverse, kernel, rank, Accumulator, Embedding, LinMap, QuotientSpace, SparseVec};
use crate::hopf::{drinfeld_uv, CoquasiStructure, FinAlgebra, HopfCotwist};
use crate::report::Report;

/// A comodule algebra whose canonical map P⊗_B P → P⊗H is bijective.
/// P⊗H is indexed `p * dim H + h`; τ maps H into quotient coordinates.
#[derive(Clone, Debug)]
pub struct GaloisExtension {
    pub p: ComoduleAlgebra,
    pub b: Coinvariants,
    pub tensor: QuotientSpace,
    pub can: LinMap,
    pub can_inv: LinMap,
    pub tau: LinMap,
}

impl GaloisExtension {
    pub fn dim_p(&self) -> usize {
        self.p.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.p.h.dim()
    }

    /// τ(h) lifted to P⊗P.
    pub fn tau_lift(&self, h: usize) -> SparseVec {
        self.tensor.lift(self.tau.col(h))
    }
}

pub fn check_hopf_galois(p: &ComoduleAlgebra) -> Result<GaloisExtension> {
    require_valid(p)?;
    let b = coinvariants(p)?;
    assemble(p, b)
}

/// As `check_hopf_galois`, with a chosen basis of the coinvariants. The
/// columns of `inclusion` must be coinvariant and span all of P^{co H}.
pub fn check_hopf_galois_with_base(p: &ComoduleAlgebra, inclusion: LinMap) -> Result<GaloisExtension> {
    require_valid(p)?;
    let computed = coinvariants(p)?;
    let dh = p.h.dim();
    let coinvariant = (0..inclusion.dom).all(|k| {
        let v = inclusion.col(k);
        p.coact(v) == v.kron(p.h.one(), dh)
    });
    if !coinvariant || rank(&inclusion) != computed.algebra.dim() || inclusion.dom != computed.algebra.dim() {
        return Err(Error::PreconditionViolated("chosen base is not a basis of the coinvariants".into()));
    }
    let b = coinvariant_algebra(&p.p, inclusion)?;
    assemble(p, b)
}

fn require_valid(p: &ComoduleAlgebra) -> Result<()> {
    let r = p.validate();
    if r.passed() {
        Ok(())
    } else {
        Err(Error::AxiomFailed(r.failure_ids()))
    }
}

fn assemble(p: &ComoduleAlgebra, b: Coinvariants) -> Result<GaloisExtension> {
    let (dp, dh) = (p.dim(), p.h.dim());
    let tensor = balanced_tensor(&p.p, &b.inclusion);
    let can = canonical_map(p, &tensor).ok_or_else(|| Error::InternalDisagreement("can does not descend to P⊗_B P".into()))?;
    let target_dim = dp * dh;
    if tensor.dim() != target_dim {
        return Err(Error::NotGalois(GaloisFailure::ShapeMismatch { balanced_dim: tensor.dim(), target_dim }));
    }
    let can_inv = inverse(&can).ok_or_else(|| Error::NotGalois(GaloisFailure::RankDeficient { rank: rank(&can), target_dim }))?;
    let tau = LinMap::from_fn(dh, tensor.dim(), |h| can_inv.apply(&p.p.unit.kron(&SparseVec::unit(h), dh)));
    let ext = GaloisExtension { p: p.clone(), b, tensor, can, can_inv, tau };
    let r = translation_identities(&ext);
    if !r.passed() {
        return Err(Error::InternalDisagreement(format!("translation map: {}", r.failure_ids())));
    }
    Ok(ext)
}

/// Class of Σ (a·x)⊗y for v = Σ x⊗y.
fn left_mul_first(ext: &GaloisExtension, a: &SparseVec, v: &SparseVec) -> SparseVec {
    let dp = ext.dim_p();
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &ext.p.p.mul(a, &SparseVec::unit(i / dp)).kron(&SparseVec::unit(i % dp), dp));
    }
    ext.tensor.project(&acc.finish())
}

/// Σ x⊗(y·a) for v = Σ x⊗y, on P⊗P.
fn right_mul_second(p: &FinAlgebra, v: &SparseVec, a: &SparseVec) -> SparseVec {
    let dp = p.dim();
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &SparseVec::unit(i / dp).kron(&p.mul(&SparseVec::unit(i % dp), a), dp));
    }
    acc.finish()
}

/// The four identities of the translation map, on every basis element.
pub fn translation_identities(ext: &GaloisExtension) -> Report {
    let (dp, dh, dq) = (ext.dim_p(), ext.dim_h(), ext.tensor.dim());
    let h = &ext.p.h;
    let mut r = Report::new("translation map");
    let lifts: Vec<SparseVec> = (0..dh).map(|x| ext.tau_lift(x)).collect();

    // p⊗q ↦ [p⊗q₀]⊗q₁ and p⊗q ↦ [p₀⊗q]⊗p₁ into (P⊗_B P)⊗H
    let right = LinMap::from_fn(dp * dp, dq * dh, |i| {
        let mut acc = Accumulator::new();
        for (q0, q1, c) in ext.p.coact_legs(i % dp) {
            acc.add_scaled(c, &ext.tensor.project_basis((i / dp) * dp + q0).kron(&SparseVec::unit(q1), dh));
        }
        acc.finish()
    });
    let left = LinMap::from_fn(dp * dp, dq * dh, |i| {
        let mut acc = Accumulator::new();
        for (p0, p1, c) in ext.p.coact_legs(i / dp) {
            acc.add_scaled(c, &ext.tensor.project_basis(p0 * dp + i % dp).kron(&SparseVec::unit(p1), dh));
        }
        acc.finish()
    });
    let right_ok = annihilates(&right, &ext.tensor);
    let left_ok = annihilates(&left, &ext.tensor);
    r.check_bool("coaction-right.well-defined", "p⊗_B q ↦ p⊗_B q₀⊗q₁ descends", right_ok);
    r.check_bool("coaction-left.well-defined", "p⊗_B q ↦ p₀⊗_B q⊗p₁ descends", left_ok);

    r.check("tau.coaction-right", "τ¹(h)⊗_Bτ²(h)₀⊗τ²(h)₁ = τ¹(h₁)⊗_Bτ²(h₁)⊗h₂", &[dh], |t| {
        let mut rhs = Accumulator::new();
        for (l, c) in h.legs(t[0], 2).iter() {
            rhs.add_scaled(c, &ext.tau.col(l[0]).kron(&SparseVec::unit(l[1]), dh));
        }
        right_ok && right.apply(&lifts[t[0]]) == rhs.finish()
    });
    r.check("tau.coaction-left", "τ¹(h₂)⊗_Bτ²(h₂)⊗S(h₁) = τ¹(h)₀⊗_Bτ²(h)⊗τ¹(h)₁", &[dh], |t| {
        let mut lhs = Accumulator::new();
        for (l, c) in h.legs(t[0], 2).iter() {
            lhs.add_scaled(c, &ext.tau.col(l[1]).kron(h.s_basis(l[0]), dh));
        }
        left_ok && lhs.finish() == left.apply(&lifts[t[0]])
    });
    r.check("tau.canonical", "τ¹(h)τ²(h)₀⊗τ²(h)₁ = 1⊗h", &[dh], |t| {
        ext.can.apply(ext.tau.col(t[0])) == ext.p.p.unit.kron(&SparseVec::unit(t[0]), dh)
    });
    r.check("tau.absorb", "p₀τ¹(p₁)⊗_Bτ²(p₁) = 1⊗_B p", &[dp], |t| {
        let mut acc = Accumulator::new();
        for (p0, p1, c) in ext.p.coact_legs(t[0]) {
            acc.add_scaled(c, &left_mul_first(ext, &SparseVec::unit(p0), &lifts[p1]));
        }
        acc.finish() == ext.tensor.project(&ext.p.p.unit.kron(&SparseVec::unit(t[0]), dp))
    });
    r.check_bool("can.two-sided", "can∘can⁻¹ = id, can⁻¹∘can = id", {
        ext.can.compose(&ext.can_inv).is_identity() && ext.can_inv.compose(&ext.can).is_identity()
    });
    r.not_applicable("faithful-flatness", "P faithfully flat over B", "assumed, not checked");
    r
}

/// P_χ over H^χ, re-checked from scratch; its translation map must equal
/// τ_χ(h) = τ¹(h₃)⊗_B τ²(h₃)χ(h₁,S(h₂)).
pub fn cotwist_galois(ext: &GaloisExtension, chi: &HopfCotwist) -> Result<GaloisExtension> {
    let pc = cotwist_comodule_algebra(&ext.p, chi)?;
    let out = check_hopf_galois_with_base(&pc, ext.b.inclusion.clone())?;
    let h = &ext.p.h;
    let expected = LinMap::from_fn(h.dim(), out.tensor.dim(), |x| {
        let mut acc = Accumulator::new();
        for (l, c) in h.legs(x, 3).iter() {
            let w = chi.chi.eval_scalar(&[&SparseVec::unit(l[0]), h.s_basis(l[1])]);
            if !w.is_zero() {
                acc.add_scaled(&(c * w), &ext.tau_lift(l[2]));
            }
        }
        out.tensor.project(&acc.finish())
    });
    if expected != out.tau {
        return Err(Error::InternalDisagreement("cotwisted translation map differs from τ_χ".into()));
    }
    Ok(out)
}

/// 𝓛(P,H): the carrier (a basis of a subspace of P⊗P, index `p * dim P + q`)
/// with its left Hopf algebroid structure in carrier coordinates.
#[derive(Clone, Debug)]
pub struct ESAlgebroid {
    pub ext: GaloisExtension,
    pub carrier: LinMap,
    pub structure: LeftHopfAlgebroid,
}

impl ESAlgebroid {
    pub fn dim(&self) -> usize {
        self.carrier.dom
    }

    /// Carrier coordinates of an element of P⊗P, if it lies in the carrier.
    pub fn coords(&self, v: &SparseVec) -> Option<SparseVec> {
        Embedding::new(&self.carrier).preimage(v)
    }
}

/// {Σp⊗q : p₀⊗q₀⊗p₁q₁ = p⊗q⊗1}.
pub fn carrier_from_coaction(ext: &GaloisExtension) -> LinMap {
    let (dp, dh) = (ext.dim_p(), ext.dim_h());
    let h = &ext.p.h;
    let defect = LinMap::from_fn(dp * dp, dp * dp * dh, |i| {
        let (p, q) = (i / dp, i % dp);
        let mut acc = Accumulator::new();
        for (p0, p1, c) in ext.p.coact_legs(p) {
            for (q0, q1, c2) in ext.p.coact_legs(q) {
                acc.add_scaled(&(c * c2), &SparseVec::unit(p0 * dp + q0).kron(h.mul_basis(p1, q1), dh));
            }
        }
        acc.finish().sub(&SparseVec::unit(i).kron(h.one(), dh))
    });
    LinMap::from_cols(dp * dp, kernel(&defect))
}

/// {Σp⊗q : p₀⊗τ(p₁)q = p⊗q⊗_B 1} in P⊗(P⊗_B P).
pub fn carrier_from_translation(ext: &GaloisExtension) -> LinMap {
    let (dp, dq) = (ext.dim_p(), ext.tensor.dim());
    let unit = &ext.p.p.unit;
    let lifts: Vec<SparseVec> = (0..ext.dim_h()).map(|x| ext.tau_lift(x)).collect();
    let defect = LinMap::from_fn(dp * dp, dp * dq, |i| {
        let (p, q) = (i / dp, i % dp);
        let qv = SparseVec::unit(q);
        let mut acc = Accumulator::new();
        for (p0, p1, c) in ext.p.coact_legs(p) {
            let tq = ext.tensor.project(&right_mul_second(&ext.p.p, &lifts[p1], &qv));
            acc.add_scaled(c, &SparseVec::unit(p0).kron(&tq, dq));
        }
        let rhs = SparseVec::unit(p).kron(&ext.tensor.project(&qv.kron(unit, dp)), dq);
        acc.finish().sub(&rhs)
    });
    LinMap::from_cols(dp * dp, kernel(&defect))
}

/// (p⊗q)(r⊗u) = pr⊗uq on P⊗P.
fn es_mul(p: &FinAlgebra, x: &SparseVec, y: &SparseVec) -> SparseVec {
    let dp = p.dim();
    let mut acc = Accumulator::new();
    for (i, c) in x.iter() {
        for (j, c2) in y.iter() {
            let left = p.mul_basis(i / dp, j / dp);
            let right = p.mul_basis(j % dp, i % dp);
            acc.add_scaled(&(c * c2), &left.kron(right, dp));
        }
    }
    acc.finish()
}

fn preimages(emb: &Embedding, vs: impl Iterator<Item = SparseVec>, what: &str) -> Result<Vec<SparseVec>> {
    vs.map(|v| emb.preimage(&v).ok_or_else(|| Error::InternalDisagreement(format!("{what} leaves its target"))))
        .collect()
}

/// An injective image of a balanced square L⊗_? L: the ambient map must kill
/// the relations and be injective on the quotient.
fn faithful_image(amb: &LinMap, q: &QuotientSpace, what: &str) -> Result<Embedding> {
    if !annihilates(amb, q) {
        return Err(Error::InternalDisagreement(format!("{what}: image map does not descend")));
    }
    let emb = Embedding::new(&amb.compose(&q.sect_matrix()));
    if !emb.is_injective() {
        return Err(Error::InternalDisagreement(format!("{what}: image map is not injective")));
    }
    Ok(emb)
}

/// Assemble 𝓛(P,H); the carrier comes from the coaction form, Δ from τ, and
/// λ⁻¹(X⊗_B Y) = p⊗τ²(q₁)⊗_{B^op}(q₀⊗τ¹(q₁))Y for X = p⊗q.
pub fn build_es_algebroid(ext: &GaloisExtension) -> Result<ESAlgebroid> {
    let es = assemble_es(ext)?;
    let r = check_es_algebroid(&es)?;
    if !r.passed() {
        return Err(Error::InternalDisagreement(format!("Ehresmann–Schauenburg algebroid: {}", r.failure_ids())));
    }
    Ok(es)
}

fn assemble_es(ext: &GaloisExtension) -> Result<ESAlgebroid> {
    let (dp, dq) = (ext.dim_p(), ext.tensor.dim());
    let pa = &ext.p.p;
    let carrier = carrier_from_coaction(ext);
    let n = carrier.dom;
    let emb = Embedding::new(&carrier);
    let x = |i: usize| carrier.col(i);

    let table = preimages(&emb, (0..n * n).map(|k| es_mul(pa, x(k / n), x(k % n))), "carrier product")?;
    let unit = emb.preimage(&pa.unit.kron(&pa.unit, dp)).ok_or_else(|| Error::InternalDisagreement("1⊗1 outside the carrier".into()))?;
    let l = FinAlgebra::from_table(n, unit, |i, j| table[i * n + j].clone());
    let incl = &ext.b.inclusion;
    let db = incl.dom;
    let s = LinMap::from_cols(n, preimages(&emb, (0..db).map(|k| incl.col(k).kron(&pa.unit, dp)), "s")?);
    let t = LinMap::from_cols(n, preimages(&emb, (0..db).map(|k| pa.unit.kron(incl.col(k), dp)), "t")?);
    let b_emb = Embedding::new(incl);
    let counit = LinMap::from_cols(
        db,
        preimages(
            &b_emb,
            (0..n).map(|i| {
                let mut acc = Accumulator::new();
                for (k, c) in x(i).iter() {
                    acc.add_scaled(c, pa.mul_basis(k / dp, k % dp));
                }
                acc.finish()
            }),
            "counit",
        )?,
    );

    // L⊗_B L ↪ P⊗(P⊗_B P)⊗P by (p⊗q)⊗(r⊗u) ↦ p⊗[q⊗r]⊗u
    let tb = tensor_b_space(&l, &s, &t);
    let idx = |p: usize, k: usize, u: usize| (p * dq + k) * dp + u;
    let j_amb = LinMap::from_fn(n * n, dp * dq * dp, |i| {
        let mut acc = Accumulator::new();
        for (a, c) in x(i / n).iter() {
            for (b, c2) in x(i % n).iter() {
                for (k, c3) in ext.tensor.project_basis((a % dp) * dp + b / dp).iter() {
                    acc.add(idx(a / dp, k, b % dp), &(c * c2 * c3));
                }
            }
        }
        acc.finish()
    });
    let j = faithful_image(&j_amb, &tb, "L⊗_B L")?;
    let comul_q = preimages(
        &j,
        (0..n).map(|i| {
            let mut acc = Accumulator::new();
            for (a, c) in x(i).iter() {
                for (p0, p1, c2) in ext.p.coact_legs(a / dp) {
                    for (k, c3) in ext.tau.col(p1).iter() {
                        acc.add(idx(p0, k, a % dp), &(c * c2 * c3));
                    }
                }
            }
            acc.finish()
        }),
        "Δ",
    )?;
    let comul_amb = LinMap::from_fn(n, n * n, |i| tb.lift(&comul_q[i]));
    let base = Bialgebroid::from_ambient(l, ext.b.algebra.clone(), s, t, &comul_amb, counit);

    // L⊗_{B^op} L ↪ P⊗P⊗(P⊗_B P) by (p⊗q)⊗(r⊗u) ↦ p⊗r⊗[u⊗q]
    let tbop = tensor_bop_space(&base.l, &base.t);
    let kdx = |p: usize, r: usize, k: usize| (p * dp + r) * dq + k;
    let k_amb = LinMap::from_fn(n * n, dp * dp * dq, |i| {
        let mut acc = Accumulator::new();
        for (a, c) in x(i / n).iter() {
            for (b, c2) in x(i % n).iter() {
                for (k, c3) in ext.tensor.project_basis((b % dp) * dp + a % dp).iter() {
                    acc.add(kdx(a / dp, b / dp, k), &(c * c2 * c3));
                }
            }
        }
        acc.finish()
    });
    let kemb = faithful_image(&k_amb, &tbop, "L⊗_{B^op} L")?;
    let tau_lifts: Vec<SparseVec> = (0..ext.dim_h()).map(|h| ext.tau_lift(h)).collect();
    // (p⊗q)⊗(r⊗u) ↦ p ⊗ q₀r ⊗ [uτ¹(q₁)⊗τ²(q₁)]
    let formula = LinMap::from_fn(n * n, dp * dp * dq, |i| {
        let mut acc = Accumulator::new();
        for (a, c) in x(i / n).iter() {
            let (p, q) = (a / dp, a % dp);
            for (q0, q1, c2) in ext.p.coact_legs(q) {
                for (b, c3) in x(i % n).iter() {
                    let (r, u) = (b / dp, b % dp);
                    let mid = pa.mul_basis(q0, r);
                    let mut lead = Accumulator::new();
                    for (e, c4) in tau_lifts[q1].iter() {
                        lead.add_scaled(c4, &pa.mul_basis(u, e / dp).kron(&SparseVec::unit(e % dp), dp));
                    }
                    let last = ext.tensor.project(&lead.finish());
                    let w = c * c2 * c3;
                    for (m, c5) in mid.iter() {
                        for (k, c6) in last.iter() {
                            acc.add(kdx(p, m, k), &(&w * c5 * c6));
                        }
                    }
                }
            }
        }
        acc.finish()
    });
    if !annihilates(&formula, &base.tensor_b) {
        return Err(Error::InternalDisagreement("λ⁻¹ formula does not descend to L⊗_B L".into()));
    }
    let lambda_inv = LinMap::from_cols(
        tbop.dim(),
        preimages(&kemb, (0..base.tensor_b.dim()).map(|k| formula.apply(&base.tensor_b.lift(&SparseVec::unit(k)))), "λ⁻¹")?,
    );
    let structure = LeftHopfAlgebroid { base, tensor_bop: tbop, lambda_inv, antipode: None };
    Ok(ESAlgebroid { ext: ext.clone(), carrier, structure })
}

/// Carrier cross-check, bialgebroid axioms and λ∘λ⁻¹ = id both ways.
pub fn check_es_algebroid(es: &ESAlgebroid) -> Result<Report> {
    let mut r = Report::new("Ehresmann–Schauenburg algebroid");
    let other = carrier_from_translation(&es.ext);
    let same = other.dom == es.carrier.dom && {
        let e = Embedding::new(&es.carrier);
        (0..other.dom).all(|k| e.preimage(other.col(k)).is_some())
    };
    r.check_bool("carrier.two-forms", "coaction form and translation form of the carrier agree", same);
    r.check_bool("carrier.dimension", "dim 𝓛 recorded", true);
    r.note_last(format!("dim 𝓛 = {}, dim B = {}, dim H = {}", es.dim(), es.ext.b.algebra.dim(), es.ext.dim_h()));
    r.absorb("bialgebroid", check_bialgebroid(&es.structure.base));
    r.absorb("left-hopf", check_left_hopf(&es.structure)?);
    Ok(r)
}

/// Θ: B^e#_σH → 𝓛(B#_σH, H), Θ(b⊗b'#h) = b#h₁⊗b'#S(h₂), in carrier coordinates.
#[derive(Clone, Debug)]
pub struct ThetaIsomorphism {
    pub pair: CocyclePair,
    pub source: LeftHopfAlgebroid,
    pub es: ESAlgebroid,
    pub theta: LinMap,
    pub theta_inv: LinMap,
}

pub fn theta_isomorphism(pair: &CocyclePair) -> Result<ThetaIsomorphism> {
    let x = build_cross_product(pair)?;
    let source = build_cocycle_algebroid(pair)?;
    let ext = check_hopf_galois_with_base(&x.p, x.b_inclusion())?;
    let es = build_es_algebroid(&ext)?;
    let h = pair.h();
    let (dh, db, dp) = (h.dim(), pair.b().dim(), x.dim());
    let n = db * db * dh;
    let emb = Embedding::new(&es.carrier);
    let cols = preimages(
        &emb,
        (0..n).map(|i| {
            let (b, bp, y) = (i / (db * dh), (i / dh) % db, i % dh);
            let mut acc = Accumulator::new();
            for (l, c) in h.legs(y, 2).iter() {
                let left = x.elem(&SparseVec::unit(b), &SparseVec::unit(l[0]));
                let right = x.elem(&SparseVec::unit(bp), h.s_basis(l[1]));
                acc.add_scaled(c, &left.kron(&right, dp));
            }
            acc.finish()
        }),
        "Θ",
    )?;
    let theta = LinMap::from_cols(es.dim(), cols);
    let theta_inv = inverse(&theta).ok_or_else(|| Error::InternalDisagreement("Θ is not bijective".into()))?;
    Ok(ThetaIsomorphism { pair: pair.clone(), source, es, theta, theta_inv })
}

/// Θ as an isomorphism of left Hopf algebroids, plus ε∘Θ = ε directly.
pub fn check_theta(th: &ThetaIsomorphism) -> Report {
    let mut r = check_isomorphism("Θ: B^e#_σH → 𝓛(B#_σH,H)", &th.source, &th.es.structure, &th.theta, &th.theta_inv);
    r.check_bool(
        "theta.counit",
        "ε(Θ(X)) = ε(X)",
        th.es.structure.base.counit.compose(&th.theta) == th.source.base.counit,
    );
    r
}

/// S = Ψ⁻¹ and S⁻¹ = Ψ restricted to the carrier, where
/// Ψ(p⊗q) = q₀⊗p₀𝓡(p₁⊗q₁) and Ψ⁻¹(p⊗q) = q₀⊗p₀𝓡⁻¹(q₁⊗p₁).
pub fn coquasi_antipode(es: &ESAlgebroid, c: &CoquasiStructure) -> Result<(LinMap, LinMap)> {
    let p = &es.ext.p;
    if c.host != p.h {
        return Err(Error::PreconditionViolated("coquasitriangular structure lives on a different Hopf algebra".into()));
    }
    let r = c.validate();
    if !r.passed() {
        return Err(Error::PreconditionViolated(format!("coquasitriangular structure: {}", r.failure_ids())));
    }
    coquasi_antipode_unchecked(es, c)
}

/// Without validating 𝓡; a bad 𝓡 typically surfaces as CarrierNotPreserved.
pub fn coquasi_antipode_unchecked(es: &ESAlgebroid, c: &CoquasiStructure) -> Result<(LinMap, LinMap)> {
    let p = &es.ext.p;
    let dp = p.dim();
    let braid = |v: &SparseVec, inverse: bool| {
        let mut acc = Accumulator::new();
        for (i, w) in v.iter() {
            for (p0, p1, c1) in p.coact_legs(i / dp) {
                for (q0, q1, c2) in p.coact_legs(i % dp) {
                    let rv = if inverse { c.r_inv.scalar_at(&[q1, p1]) } else { c.r.scalar_at(&[p1, q1]) };
                    if !rv.is_zero() {
                        acc.add(q0 * dp + p0, &(w * c1 * c2 * rv));
                    }
                }
            }
        }
        acc.finish()
    };
    let emb = Embedding::new(&es.carrier);
    let restrict = |inverse: bool| -> Result<LinMap> {
        let cols: Option<Vec<SparseVec>> = (0..es.dim()).map(|i| emb.preimage(&braid(es.carrier.col(i), inverse))).collect();
        cols.map(|c| LinMap::from_cols(es.dim(), c)).ok_or(Error::CarrierNotPreserved)
    };
    Ok((restrict(true)?, restrict(false)?))
}

/// Antipode axioms for the braided antipode.
pub fn check_coquasi_antipode(es: &ESAlgebroid, c: &CoquasiStructure) -> Result<Report> {
    let (s, s_inv) = coquasi_antipode(es, c)?;
    let mut r = Report::new("braided antipode");
    r.absorb("antipode", check_antipode(&es.structure, &s, &s_inv));
    Ok(r)
}

/// Cleft closed form on B^e#_σH: S(b⊗b'#h) = u⁻¹(h₁)b'⊗b#S(h₂) and
/// S⁻¹(b⊗b'#h) = v(h₂)b'⊗b#S⁻¹(h₁).
pub fn cleft_coquasi_antipode(pair: &CocyclePair, c: &CoquasiStructure) -> Result<(LinMap, LinMap)> {
    let h = pair.h();
    if c.host != *h {
        return Err(Error::PreconditionViolated("coquasitriangular structure lives on a different Hopf algebra".into()));
    }
    if h.antipode_inv.is_none() {
        return Err(Error::PreconditionViolated("antipode of H is not invertible".into()));
    }
    let (u_inv, v) = drinfeld_uv(c);
    let (dh, db) = (h.dim(), pair.b().dim());
    let n = db * db * dh;
    let split = |i: usize| (i / (db * dh), (i / dh) % db, i % dh);
    let swapped = |b: usize, bp: usize, g: &SparseVec| SparseVec::unit(bp * db + b).kron(g, dh);
    let s = LinMap::from_fn(n, n, |i| {
        let (b, bp, y) = split(i);
        let mut acc = Accumulator::new();
        for (l, w) in h.legs(y, 2).iter() {
            acc.add_scaled(&(w * u_inv.get(l[0])), &swapped(b, bp, h.s_basis(l[1])));
        }
        acc.finish()
    });
    let s_inv = LinMap::from_fn(n, n, |i| {
        let (b, bp, y) = split(i);
        let mut acc = Accumulator::new();
        for (l, w) in h.legs(y, 2).iter() {
            acc.add_scaled(&(w * v.get(l[1])), &swapped(b, bp, h.s_inv_basis(l[0])));
        }
        acc.finish()
    });
    Ok((s, s_inv))
}

/// Θ⁻¹∘Ψ⁻¹∘Θ against the closed form, and the antipode axioms on B^e#_σH.
pub fn check_cleft_coquasi_antipode(th: &ThetaIsomorphism, c: &CoquasiStructure) -> Result<Report> {
    let (s, s_inv) = coquasi_antipode(&th.es, c)?;
    let (cs, cs_inv) = cleft_coquasi_antipode(&th.pair, c)?;
    let mut r = Report::new("cleft braided antipode");
    r.check_bool(
        "closed-form.antipode",
        "Θ⁻¹∘S∘Θ(b⊗b'#h) = u⁻¹(h₁)b'⊗b#S(h₂)",
        th.theta_inv.compose(&s).compose(&th.theta) == cs,
    );
    r.check_bool(
        "closed-form.antipode-inverse",
        "Θ⁻¹∘S⁻¹∘Θ(b⊗b'#h) = v(h₂)b'⊗b#S⁻¹(h₁)",
        th.theta_inv.compose(&s_inv).compose(&th.theta) == cs_inv,
    );
    r.absorb("antipode", check_antipode(&th.source, &cs, &cs_inv));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::cocycle_algebroid_antipode;
    use crate::catalog::hopf_algebras::{cyclic_bicharacter, cyclic_group, sweedler_coquasi, sweedler_cotwist, sweedler_h4};
    use crate::catalog::pairs::{coquasi_kz2, dual_numbers, galois_h4, galois_kz2, h4_dual_numbers, inner_m2_kz2};
    use crate::cocycle::cotwist_cocycle;
    use crate::crossprod::{canonical_inverse_cleft, translation_map_cleft};
    use crate::exactla::{CoeffTensor, Scalar};
    use proptest::prelude::*;

    #[test]
    fn regular_coaction_is_galois() {
        let h = sweedler_h4();
        let ext = check_hopf_galois(&ComoduleAlgebra::regular(&h)).unwrap();
        assert_eq!(ext.b.algebra.dim(), 1);
        // τ(h) = S(h₁)⊗h₂
        for x in 0..4 {
            let mut acc = Accumulator::new();
            for (l, c) in h.legs(x, 2).iter() {
                acc.add_scaled(c, &h.s_basis(l[0]).kron(&SparseVec::unit(l[1]), 4));
            }
            assert_eq!(*ext.tau.col(x), ext.tensor.project(&acc.finish()));
        }
    }

    #[test]
    fn cleft_inverse_matches_closed_form() {
        for pair in [galois_h4(Scalar::frac(1, 2)), h4_dual_numbers(), inner_m2_kz2()] {
            let x = build_cross_product(&pair).unwrap();
            let ext = check_hopf_galois_with_base(&x.p, x.b_inclusion()).unwrap();
            let cleft = canonical_inverse_cleft(&x).unwrap();
            assert_eq!(ext.can_inv, cleft.can_inv);
            assert_eq!(ext.tau, translation_map_cleft(&x, &ext.tensor));
        }
    }

    #[test]
    fn trivial_coaction_is_not_galois() {
        let h = cyclic_group(2);
        let p = ComoduleAlgebra::new(h.algebra.clone(), h.clone(), CoeffTensor::from_fn(vec![2], 4, |t| SparseVec::unit(t[0] * 2)));
        match check_hopf_galois(&p) {
            Err(Error::NotGalois(GaloisFailure::ShapeMismatch { balanced_dim: 2, target_dim: 4 })) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn odd_dual_numbers_are_rank_deficient() {
        // y ↦ y⊗g: coinvariants k, square shape, but can(y⊗y) = y²⊗g = 0
        let h = cyclic_group(2);
        let p = ComoduleAlgebra::new(dual_numbers(), h, CoeffTensor::from_fn(vec![2], 4, |t| SparseVec::unit(t[0] * 3)));
        assert!(p.validate().passed());
        match check_hopf_galois(&p) {
            Err(Error::NotGalois(GaloisFailure::RankDeficient { rank: 3, target_dim: 4 })) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_cotwist_changes_nothing() {
        let h = sweedler_h4();
        let ext = check_hopf_galois(&ComoduleAlgebra::regular(&h)).unwrap();
        let chi = sweedler_cotwist(&h, Scalar::zero());
        let out = cotwist_galois(&ext, &chi).unwrap();
        assert_eq!(out.p.p.mul, ext.p.p.mul);
        assert_eq!(out.tau, ext.tau);
    }

    #[test]
    fn cleft_cotwist_agrees_with_cocycle_route() {
        let h = sweedler_h4();
        let chi = sweedler_cotwist(&h, Scalar::frac(2, 5));
        for pair in [galois_h4(Scalar::frac(1, 2)), h4_dual_numbers()] {
            let x = build_cross_product(&pair).unwrap();
            let ext = check_hopf_galois_with_base(&x.p, x.b_inclusion()).unwrap();
            let twisted = cotwist_galois(&ext, &chi).unwrap();
            let via_pair = build_cross_product(&cotwist_cocycle(&pair, &chi).unwrap()).unwrap();
            assert_eq!(twisted.p, via_pair.p);
        }
    }

    #[test]
    fn regular_es_algebroid_is_h() {
        let h = sweedler_h4();
        let ext = check_hopf_galois(&ComoduleAlgebra::regular(&h)).unwrap();
        let es = build_es_algebroid(&ext).unwrap();
        assert_eq!(es.dim(), 4);
        let r = check_es_algebroid(&es).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn theta_on_cleft_pairs() {
        for pair in [galois_h4(Scalar::frac(1, 3)), h4_dual_numbers(), inner_m2_kz2()] {
            let th = theta_isomorphism(&pair).unwrap();
            let (db, dh) = (pair.b().dim(), pair.h().dim());
            assert_eq!(th.es.dim(), db * db * dh);
            let r = check_theta(&th);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn theta_for_trivial_pair_over_k() {
        // Θ(h) = h₁⊗S(h₂) for B = k, σ = ε⊗ε
        let h = sweedler_h4();
        let pair = CocyclePair::untwisted(crate::comod::Measuring::trivial(&h, &FinAlgebra::ground()));
        let th = theta_isomorphism(&pair).unwrap();
        for x in 0..4 {
            let mut acc = Accumulator::new();
            for (l, c) in h.legs(x, 2).iter() {
                acc.add_scaled(c, &SparseVec::unit(l[0]).kron(h.s_basis(l[1]), 4));
            }
            assert_eq!(th.es.carrier.apply(th.theta.col(x)), acc.finish());
        }
    }

    #[test]
    fn sign_braiding_antipode() {
        let th = theta_isomorphism(&coquasi_kz2()).unwrap();
        let h = cyclic_group(2);
        let c = CoquasiStructure::new(&h, cyclic_bicharacter(&h, &Scalar::int(-1))).unwrap();
        let (_, v) = drinfeld_uv(&c);
        assert_eq!(v.get(1), Scalar::int(-1));
        let r = check_cleft_coquasi_antipode(&th, &c).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_coquasi_antipode(&th.es, &c).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn trivial_braiding_is_flip() {
        let h = cyclic_group(2);
        let c = CoquasiStructure::new(&h, cyclic_bicharacter(&h, &Scalar::one())).unwrap();
        let ext = check_hopf_galois(&ComoduleAlgebra::regular(&h)).unwrap();
        let es = build_es_algebroid(&ext).unwrap();
        let (s, _) = coquasi_antipode(&es, &c).unwrap();
        for i in 0..es.dim() {
            let flipped = es.carrier.col(i).map_indices(|k| (k % 2) * 2 + k / 2);
            assert_eq!(es.carrier.apply(s.col(i)), flipped);
        }
    }

    #[test]
    fn antipodes_agree_only_over_the_ground_field() {
        let h = cyclic_group(2);
        let c = CoquasiStructure::new(&h, cyclic_bicharacter(&h, &Scalar::int(-1))).unwrap();
        let over_k = coquasi_kz2();
        let (cs, _) = cleft_coquasi_antipode(&over_k, &c).unwrap();
        assert_eq!(cocycle_algebroid_antipode(&over_k).unwrap().0, cs);
        let over_m2 = inner_m2_kz2();
        let (cs, _) = cleft_coquasi_antipode(&over_m2, &c).unwrap();
        let th = theta_isomorphism(&over_m2).unwrap();
        assert!(check_cleft_coquasi_antipode(&th, &c).unwrap().passed());
        assert_ne!(cocycle_algebroid_antipode(&over_m2).unwrap().0, cs);
    }

    #[test]
    fn h4_braided_antipode() {
        let h = sweedler_h4();
        let c = sweedler_coquasi(&h, Scalar::frac(1, 2));
        let th = theta_isomorphism(&galois_h4(Scalar::frac(1, 3))).unwrap();
        let r = check_cleft_coquasi_antipode(&th, &c).unwrap();
        assert!(r.passed(), "{r}");
        let r = check_coquasi_antipode(&th.es, &c).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn broken_braiding_leaves_the_carrier() {
        let h = sweedler_h4();
        let good = sweedler_coquasi(&h, Scalar::frac(1, 2));
        let mut r = good.r.clone();
        r.set(&[0, 2], SparseVec::single(0, Scalar::int(1)));
        let bad = CoquasiStructure { host: h.clone(), r_inv: good.r_inv.clone(), r };
        let th = theta_isomorphism(&galois_h4(Scalar::frac(1, 3))).unwrap();
        assert!(matches!(coquasi_antipode(&th.es, &bad), Err(Error::PreconditionViolated(_))));
        assert_eq!(coquasi_antipode_unchecked(&th.es, &bad).unwrap_err(), Error::CarrierNotPreserved);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(6))]

        #[test]
        fn kz2_galois_objects(a in prop::sample::select(vec![-3i64, -2, -1, 2, 3, 5])) {
            let th = theta_isomorphism(&galois_kz2(Scalar::int(a))).unwrap();
            prop_assert!(check_theta(&th).passed());
            let r = check_es_algebroid(&th.es).unwrap();
            prop_assert!(r.passed());
        }

        #[test]
        fn h4_braided_family(l in prop::sample::select(vec![(0i64, 1i64), (1, 1), (-1, 2), (3, 7)])) {
            let h = sweedler_h4();
            let c = sweedler_coquasi(&h, Scalar::frac(l.0, l.1));
            let th = theta_isomorphism(&galois_h4(Scalar::frac(1, 2))).unwrap();
            prop_assert!(check_cleft_coquasi_antipode(&th, &c).unwrap().passed());
        }
    }
}
