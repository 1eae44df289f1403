//! Cocycle pairs (⊳, σ) for cross products: validation, gauge moves, cotwists.

use crate::comod::Measuring;
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, CoeffTensor, ConvolutionSetting, LinMap, SparseVec};
use crate::hopf::{bilinear_inverse, cotwist_hopf, FinAlgebra, HopfAlgebra, HopfCotwist};
use crate::report::Report;

/// Measuring ⊳ together with σ, σ⁻¹: H⊗H → B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocyclePair {
    pub act: Measuring,
    pub sigma: CoeffTensor,
    pub sigma_inv: CoeffTensor,
}

impl CocyclePair {
    /// σ⁻¹ is computed by convolution inversion.
    pub fn new(act: Measuring, sigma: CoeffTensor) -> Result<CocyclePair> {
        let sigma_inv = bilinear_inverse(&act.h, &sigma, &act.b, "cocycle")?;
        Ok(CocyclePair { act, sigma, sigma_inv })
    }

    pub fn with_inverse(act: Measuring, sigma: CoeffTensor, sigma_inv: CoeffTensor) -> CocyclePair {
        CocyclePair { act, sigma, sigma_inv }
    }

    /// Given action with σ = η∘(ε⊗ε).
    pub fn untwisted(act: Measuring) -> CocyclePair {
        let sigma = unit_bilinear(&act.h, &act.b);
        CocyclePair { act, sigma: sigma.clone(), sigma_inv: sigma }
    }

    /// B = k with σ a k-valued form.
    pub fn scalar(h: &HopfAlgebra, sigma: CoeffTensor) -> Result<CocyclePair> {
        CocyclePair::new(Measuring::trivial(h, &FinAlgebra::ground()), sigma)
    }

    pub fn h(&self) -> &HopfAlgebra {
        &self.act.h
    }

    pub fn b(&self) -> &FinAlgebra {
        &self.act.b
    }

    pub fn sigma_at(&self, h: usize, g: usize) -> &SparseVec {
        self.sigma.at(&[h, g])
    }

    pub fn sigma_inv_at(&self, h: usize, g: usize) -> &SparseVec {
        self.sigma_inv.at(&[h, g])
    }

    pub fn sigma_of(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.sigma.eval(&[a, b])
    }

    pub fn sigma_inv_of(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.sigma_inv.eval(&[a, b])
    }

    /// h⊳b for vectors.
    pub fn act_on(&self, h: &SparseVec, b: &SparseVec) -> SparseVec {
        self.act.apply(h, b)
    }

    pub fn bmul(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        self.b().mul(a, b)
    }

    fn bprod(&self, xs: &[&SparseVec]) -> SparseVec {
        self.b().product(xs)
    }

    fn eps_one(&self, h: usize) -> SparseVec {
        self.b().unit.scale(&self.h().counit_basis(h))
    }

    fn hmul(&self, a: usize, b: usize) -> &SparseVec {
        self.h().mul_basis(a, b)
    }
}

/// η∘(ε⊗ε): H⊗H → B.
pub fn unit_bilinear(h: &HopfAlgebra, b: &FinAlgebra) -> CoeffTensor {
    let d = h.dim();
    CoeffTensor::from_fn(vec![d, d], b.dim(), |t| b.unit.scale(&(h.counit_basis(t[0]) * h.counit_basis(t[1]))))
}

fn convolution_checks(pair: &CocyclePair, r: &mut Report) {
    let sq = pair.h().square_coalgebra();
    let b = pair.b();
    let setting = ConvolutionSetting { comul: &sq.comul, counit: &sq.counit, mul: &b.mul, unit: &b.unit };
    let unit = setting.unit_map();
    r.check_bool(
        "cocycle.invertible",
        "σ⋆σ⁻¹ = σ⁻¹⋆σ = η∘(ε⊗ε)",
        setting.convolve(&pair.sigma.map, &pair.sigma_inv.map) == unit
            && setting.convolve(&pair.sigma_inv.map, &pair.sigma.map) == unit,
    );
    let recomputed = setting.inverse(&pair.sigma.map).ok();
    r.check_bool(
        "cocycle.stored-inverse",
        "stored σ⁻¹ equals the recomputed convolution inverse",
        recomputed.as_ref() == Some(&pair.sigma_inv.map),
    );
}

/// Conditions on (⊳, σ) making B#_σH associative and unital.
pub fn validate_cocycle(pair: &CocyclePair) -> Report {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let mut r = Report::new("cocycle pair");
    r.absorb("", pair.act.validate());
    convolution_checks(pair, &mut r);
    r.check("cocycle.unit-action", "1⊳b = b", &[db], |t| {
        pair.act_on(h.one(), &SparseVec::unit(t[0])) == SparseVec::unit(t[0])
    });
    r.check("cocycle.twisted-action", "h⊳(g⊳b) = σ(h₁,g₁)((h₂g₂)⊳b)σ⁻¹(h₃,g₃)", &[dh, dh, db], |t| {
        let lhs = pair.act.apply_basis(t[0], pair.act.at(t[1], t[2]));
        let mut rhs = Accumulator::new();
        let e = SparseVec::unit(t[2]);
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let mid = pair.act_on(pair.hmul(hl[1], gl[1]), &e);
                let v = pair.bprod(&[pair.sigma_at(hl[0], gl[0]), &mid, pair.sigma_inv_at(hl[2], gl[2])]);
                rhs.add_scaled(&(x * y), &v);
            }
        }
        lhs == rhs.finish()
    });
    r.check("cocycle.normalized", "σ(h,1) = σ(1,h) = ε(h)1", &[dh], |t| {
        let e = SparseVec::unit(t[0]);
        let target = pair.eps_one(t[0]);
        pair.sigma_of(&e, h.one()) == target && pair.sigma_of(h.one(), &e) == target
    });
    r.check("cocycle.cocycle", "(h₁⊳σ(g₁,f₁))σ(h₂,g₂f₂) = σ(h₁,g₁)σ(h₂g₂,f)", &[dh, dh, dh], |t| {
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        let f = SparseVec::unit(t[2]);
        for (hl, x) in h.legs(t[0], 2).iter() {
            for (gl, y) in h.legs(t[1], 2).iter() {
                let xy = x * y;
                for (fl, z) in h.legs(t[2], 2).iter() {
                    let a = pair.act.apply_basis(hl[0], pair.sigma_at(gl[0], fl[0]));
                    let c = pair.sigma_of(&SparseVec::unit(hl[1]), pair.hmul(gl[1], fl[1]));
                    lhs.add_scaled(&(&xy * z), &pair.bmul(&a, &c));
                }
                let c = pair.sigma_of(pair.hmul(hl[1], gl[1]), &f);
                rhs.add_scaled(&xy, &pair.bmul(pair.sigma_at(hl[0], gl[0]), &c));
            }
        }
        lhs.finish() == rhs.finish()
    });
    r
}

/// Identity relating σ⁻¹(S(h)S(g), ·); `printed_leg_order` swaps the
/// second argument to h₂g₂, which does not hold for noncommutative H.
pub fn antipode_product_identity(pair: &CocyclePair, h: usize, g: usize, printed_leg_order: bool) -> bool {
    let hopf = pair.h();
    let mut lhs = Accumulator::new();
    for (hl, x) in hopf.legs(h, 2).iter() {
        for (gl, y) in hopf.legs(g, 2).iter() {
            let first = hopf.mul(hopf.s_basis(hl[0]), hopf.s_basis(gl[0]));
            let second = if printed_leg_order { hopf.mul_basis(hl[1], gl[1]) } else { hopf.mul_basis(gl[1], hl[1]) };
            lhs.add_scaled(&(x * y), &pair.sigma_inv_of(&first, second));
        }
    }
    let mut rhs = Accumulator::new();
    for (hl, x) in hopf.legs(h, 5).iter() {
        for (gl, y) in hopf.legs(g, 3).iter() {
            let a = pair.sigma_inv_of(hopf.s_basis(hl[2]), &SparseVec::unit(hl[3]));
            let inner = pair.sigma_inv_of(hopf.s_basis(gl[1]), hopf.mul_basis(gl[2], hl[4]));
            let b = pair.act_on(hopf.s_basis(hl[1]), &inner);
            let c = pair.sigma_of(hopf.s_basis(hl[0]), hopf.s_basis(gl[0]));
            rhs.add_scaled(&(x * y), &pair.bprod(&[&a, &b, &c]));
        }
    }
    lhs.finish() == rhs.finish()
}

/// Consequences of the cocycle conditions involving σ⁻¹ and the antipode.
pub fn sigma_identities(pair: &CocyclePair) -> Report {
    let (h, _b) = (pair.h(), pair.b());
    let dh = h.dim();
    let mut r = Report::new("sigma identities");
    r.check("sigma.inverse-cocycle", "σ⁻¹(h₁,g₁f₁)(h₂⊳σ⁻¹(g₂,f₂)) = σ⁻¹(h₁g₁,f)σ⁻¹(h₂,g₂)", &[dh, dh, dh], |t| {
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        let f = SparseVec::unit(t[2]);
        for (hl, x) in h.legs(t[0], 2).iter() {
            for (gl, y) in h.legs(t[1], 2).iter() {
                let xy = x * y;
                for (fl, z) in h.legs(t[2], 2).iter() {
                    let a = pair.sigma_inv_of(&SparseVec::unit(hl[0]), pair.hmul(gl[0], fl[0]));
                    let c = pair.act.apply_basis(hl[1], pair.sigma_inv_at(gl[1], fl[1]));
                    lhs.add_scaled(&(&xy * z), &pair.bmul(&a, &c));
                }
                let a = pair.sigma_inv_of(pair.hmul(hl[0], gl[0]), &f);
                rhs.add_scaled(&xy, &pair.bmul(&a, pair.sigma_inv_at(hl[1], gl[1])));
            }
        }
        lhs.finish() == rhs.finish()
    });
    r.check("sigma.act-on-sigma", "h⊳σ(g,f) = σ(h₁,g₁)σ(h₂g₂,f₁)σ⁻¹(h₃,g₃f₂)", &[dh, dh, dh], |t| {
        let lhs = pair.act.apply_basis(t[0], pair.sigma_at(t[1], t[2]));
        let mut rhs = Accumulator::new();
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let xy = x * y;
                for (fl, z) in h.legs(t[2], 2).iter() {
                    let b = pair.sigma_of(pair.hmul(hl[1], gl[1]), &SparseVec::unit(fl[0]));
                    let c = pair.sigma_inv_of(&SparseVec::unit(hl[2]), pair.hmul(gl[2], fl[1]));
                    rhs.add_scaled(&(&xy * z), &pair.bprod(&[pair.sigma_at(hl[0], gl[0]), &b, &c]));
                }
            }
        }
        lhs == rhs.finish()
    });
    r.check("sigma.act-on-inverse", "h⊳σ⁻¹(g,f) = σ(h₁,g₁f₁)σ⁻¹(h₂g₂,f₂)σ⁻¹(h₃,g₃)", &[dh, dh, dh], |t| {
        let lhs = pair.act.apply_basis(t[0], pair.sigma_inv_at(t[1], t[2]));
        let mut rhs = Accumulator::new();
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let xy = x * y;
                for (fl, z) in h.legs(t[2], 2).iter() {
                    let a = pair.sigma_of(&SparseVec::unit(hl[0]), pair.hmul(gl[0], fl[0]));
                    let b = pair.sigma_inv_of(pair.hmul(hl[1], gl[1]), &SparseVec::unit(fl[1]));
                    rhs.add_scaled(&(&xy * z), &pair.bprod(&[&a, &b, pair.sigma_inv_at(hl[2], gl[2])]));
                }
            }
        }
        lhs == rhs.finish()
    });
    r.check("sigma.antipode-left", "(h₁⊳σ⁻¹(S(h₄),h₅))σ(h₂,S(h₃)) = ε(h)1", &[dh], |t| {
        let mut acc = Accumulator::new();
        for (l, x) in h.legs(t[0], 5).iter() {
            let inner = pair.sigma_inv_of(h.s_basis(l[3]), &SparseVec::unit(l[4]));
            let a = pair.act.apply_basis(l[0], &inner);
            let b = pair.sigma_of(&SparseVec::unit(l[1]), h.s_basis(l[2]));
            acc.add_scaled(x, &pair.bmul(&a, &b));
        }
        acc.finish() == pair.eps_one(t[0])
    });
    r.check(
        "sigma.antipode-product",
        "σ⁻¹(S(h₁)S(g₁),g₂h₂) = σ⁻¹(S(h₃),h₄)(S(h₂)⊳σ⁻¹(S(g₂),g₃h₅))σ(S(h₁),S(g₁))",
        &[dh, dh],
        |t| antipode_product_identity(pair, t[0], t[1], false),
    );
    r.check("sigma.antipode-right", "σ⁻¹(S(h₂),h₃)(S(h₁)⊳σ(h₄,S(h₅))) = ε(h)1", &[dh], |t| {
        let mut acc = Accumulator::new();
        for (l, x) in h.legs(t[0], 5).iter() {
            let a = pair.sigma_inv_of(h.s_basis(l[1]), &SparseVec::unit(l[2]));
            let inner = pair.sigma_of(&SparseVec::unit(l[3]), h.s_basis(l[4]));
            let b = pair.act_on(h.s_basis(l[0]), &inner);
            acc.add_scaled(x, &pair.bmul(&a, &b));
        }
        acc.finish() == pair.eps_one(t[0])
    });
    r
}

/// σ(h₁,g₁)((h₂g₂)⊳b) = ((h₁g₁)⊳b)σ(h₂,g₂) on all basis triples.
pub fn associative_type_identity(pair: &CocyclePair) -> Report {
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let mut r = Report::new("associative type");
    r.check("assoc.sigma-commutes", "σ(h₁,g₁)((h₂g₂)⊳b) = ((h₁g₁)⊳b)σ(h₂,g₂)", &[dh, dh, db], |t| {
        let e = SparseVec::unit(t[2]);
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        for (hl, x) in h.legs(t[0], 2).iter() {
            for (gl, y) in h.legs(t[1], 2).iter() {
                let xy = x * y;
                let a = pair.act_on(pair.hmul(hl[1], gl[1]), &e);
                lhs.add_scaled(&xy, &pair.bmul(pair.sigma_at(hl[0], gl[0]), &a));
                let c = pair.act_on(pair.hmul(hl[0], gl[0]), &e);
                rhs.add_scaled(&xy, &pair.bmul(&c, pair.sigma_at(hl[1], gl[1])));
            }
        }
        lhs.finish() == rhs.finish()
    });
    r
}

/// Associative type, decided both through σ and through ⊳ being an action.
pub fn is_associative_type(pair: &CocyclePair) -> Result<bool> {
    let via_sigma = associative_type_identity(pair).passed();
    let via_action = pair.act.is_module_algebra();
    if via_sigma != via_action {
        return Err(Error::InternalDisagreement(format!(
            "associative type via σ: {via_sigma}, via action: {via_action}"
        )));
    }
    Ok(via_sigma)
}

fn require_associative(pair: &CocyclePair) -> Result<()> {
    if is_associative_type(pair)? {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("pair is not of associative type".into()))
    }
}

/// (S(h₃)⊳b)σ⁻¹(S(h₁),h₂) = σ⁻¹(S(h₂),h₃)(S(h₁)⊳b) for associative type.
pub fn check_inverse_commutation(pair: &CocyclePair) -> Result<bool> {
    require_associative(pair)?;
    let (h, b) = (pair.h(), pair.b());
    let mut r = Report::new("inverse commutation");
    r.check("assoc.inverse-commutes", "(S(h₃)⊳b)σ⁻¹(S(h₁),h₂) = σ⁻¹(S(h₂),h₃)(S(h₁)⊳b)", &[h.dim(), b.dim()], |t| {
        let e = SparseVec::unit(t[1]);
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        for (l, x) in h.legs(t[0], 3).iter() {
            let a = pair.act_on(h.s_basis(l[2]), &e);
            let c = pair.sigma_inv_of(h.s_basis(l[0]), &SparseVec::unit(l[1]));
            lhs.add_scaled(x, &pair.bmul(&a, &c));
            let a = pair.sigma_inv_of(h.s_basis(l[1]), &SparseVec::unit(l[2]));
            let c = pair.act_on(h.s_basis(l[0]), &e);
            rhs.add_scaled(x, &pair.bmul(&a, &c));
        }
        lhs.finish() == rhs.finish()
    });
    Ok(r.passed())
}

/// Convolution-invertible unital u: H → B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeMap {
    pub u: LinMap,
    pub u_inv: LinMap,
    pub unital: bool,
}

impl GaugeMap {
    pub fn new(h: &HopfAlgebra, b: &FinAlgebra, u: LinMap) -> Result<GaugeMap> {
        if u.dom != h.dim() || u.cod != b.dim() {
            return Err(Error::InvalidGauge("u has the wrong shape".into()));
        }
        let unital = u.apply(h.one()) == b.unit;
        if !unital {
            return Err(Error::InvalidGauge("u(1) ≠ 1".into()));
        }
        let u_inv = h
            .convolution_into(b)
            .inverse(&u)
            .map_err(|_| Error::InvalidGauge("u is not convolution invertible".into()))?;
        Ok(GaugeMap { u, u_inv, unital })
    }

    /// η∘ε
    pub fn identity(h: &HopfAlgebra, b: &FinAlgebra) -> GaugeMap {
        let u = h.convolution_into(b).unit_map();
        GaugeMap { u: u.clone(), u_inv: u, unital: true }
    }

    /// u⋆v
    pub fn then(&self, other: &GaugeMap, h: &HopfAlgebra, b: &FinAlgebra) -> Result<GaugeMap> {
        GaugeMap::new(h, b, h.convolution_into(b).convolve(&self.u, &other.u))
    }

    pub fn validate(&self, h: &HopfAlgebra, b: &FinAlgebra) -> Report {
        let setting = h.convolution_into(b);
        let unit = setting.unit_map();
        let mut r = Report::new("gauge map");
        r.check_bool("gauge.unital", "u(1) = 1", self.u.apply(h.one()) == b.unit);
        r.check_bool(
            "gauge.invertible",
            "u⋆u⁻¹ = u⁻¹⋆u = η∘ε",
            setting.convolve(&self.u, &self.u_inv) == unit && setting.convolve(&self.u_inv, &self.u) == unit,
        );
        r
    }
}

/// (⊳ᵘ, σᵘ) with h⊳ᵘb = u⁻¹(h₁)(h₂⊳b)u(h₃) and
/// σᵘ(h,g) = u⁻¹(h₁)(h₂⊳u⁻¹(g₁))σ(h₃,g₂)u(h₄g₃).
pub fn gauge_transform(pair: &CocyclePair, u: &GaugeMap) -> Result<CocyclePair> {
    let (h, b) = (pair.h(), pair.b());
    if !u.validate(h, b).passed() {
        return Err(Error::InvalidGauge("gauge map axioms fail".into()));
    }
    let (dh, db) = (h.dim(), b.dim());
    let act = CoeffTensor::from_fn(vec![dh, db], db, |t| {
        let e = SparseVec::unit(t[1]);
        let mut acc = Accumulator::new();
        for (l, x) in h.legs(t[0], 3).iter() {
            let mid = pair.act.apply_basis(l[1], &e);
            acc.add_scaled(x, &b.product(&[u.u_inv.col(l[0]), &mid, u.u.col(l[2])]));
        }
        acc.finish()
    });
    let sigma = CoeffTensor::from_fn(vec![dh, dh], db, |t| {
        let mut acc = Accumulator::new();
        for (hl, x) in h.legs(t[0], 4).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let a = pair.act.apply_basis(hl[1], u.u_inv.col(gl[0]));
                let last = u.u.apply(h.mul_basis(hl[3], gl[2]));
                acc.add_scaled(&(x * y), &b.product(&[u.u_inv.col(hl[0]), &a, pair.sigma_at(hl[2], gl[1]), &last]));
            }
        }
        acc.finish()
    });
    CocyclePair::new(Measuring::new(h, b, act), sigma).map_err(|_| Error::InvalidGauge("σᵘ not invertible".into()))
}

/// The gauge condition preserving associative type, checked directly
/// and cross-checked against associative type of the gauged pair.
pub fn gauge_preserves_assoc(pair: &CocyclePair, u: &GaugeMap) -> Result<bool> {
    require_associative(pair)?;
    let (h, b) = (pair.h(), pair.b());
    let (dh, db) = (h.dim(), b.dim());
    let inner_act = |g: usize, e: &SparseVec| {
        let mut acc = Accumulator::new();
        for (l, x) in h.legs(g, 3).iter() {
            let mid = pair.act.apply_basis(l[1], e);
            acc.add_scaled(x, &b.product(&[u.u_inv.col(l[0]), &mid, u.u.col(l[2])]));
        }
        acc.finish()
    };
    let ok = crate::report::first_failure(&[dh, dh, db], |t| {
        let e = SparseVec::unit(t[2]);
        let inner = inner_act(t[1], &e);
        let lhs = inner_act(t[0], &inner);
        let mut rhs = Accumulator::new();
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let a = u.u_inv.apply(h.mul_basis(hl[0], gl[0]));
                let mid = pair.act_on(h.mul_basis(hl[1], gl[1]), &e);
                let c = u.u.apply(h.mul_basis(hl[2], gl[2]));
                rhs.add_scaled(&(x * y), &b.product(&[&a, &mid, &c]));
            }
        }
        lhs == rhs.finish()
    })
    .is_none();
    let gauged = gauge_transform(pair, u)?;
    let assoc_after = is_associative_type(&gauged)?;
    if ok != assoc_after {
        return Err(Error::InternalDisagreement(format!(
            "gauge condition: {ok}, associative type after gauge: {assoc_after}"
        )));
    }
    Ok(ok)
}

/// u(h₁)(h₂⊳b) = (h₁⊳b)u(h₂): gauge moves that leave ⊳ unchanged.
pub fn strong_gauge_condition(pair: &CocyclePair, u: &GaugeMap) -> bool {
    let (h, b) = (pair.h(), pair.b());
    crate::report::first_failure(&[h.dim(), b.dim()], |t| {
        let mut lhs = Accumulator::new();
        let mut rhs = Accumulator::new();
        for (l, x) in h.legs(t[0], 2).iter() {
            lhs.add_scaled(x, &b.mul(u.u.col(l[0]), pair.act.at(l[1], t[1])));
            rhs.add_scaled(x, &b.mul(pair.act.at(l[0], t[1]), u.u.col(l[1])));
        }
        lhs.finish() == rhs.finish()
    })
    .is_none()
}

/// (⊳, σ⋆χ⁻¹) over H^χ.
pub fn cotwist_cocycle(pair: &CocyclePair, chi: &HopfCotwist) -> Result<CocyclePair> {
    let h = pair.h();
    if chi.host != *h {
        return Err(Error::InvalidCotwist("cotwist lives on a different Hopf algebra".into()));
    }
    let h_chi = cotwist_hopf(h, chi)?;
    let (dh, db) = (h.dim(), pair.b().dim());
    let sigma = CoeffTensor::from_fn(vec![dh, dh], db, |t| {
        let mut acc = Accumulator::new();
        for (hl, x) in h.legs(t[0], 2).iter() {
            for (gl, y) in h.legs(t[1], 2).iter() {
                let w = chi.chi_inv.scalar_at(&[hl[1], gl[1]]);
                if !w.is_zero() {
                    acc.add_scaled(&(x * y * w), pair.sigma_at(hl[0], gl[0]));
                }
            }
        }
        acc.finish()
    });
    let act = Measuring::new(&h_chi, pair.b(), pair.act.act.clone());
    CocyclePair::new(act, sigma).map_err(|_| Error::InvalidCotwist("σ⋆χ⁻¹ not invertible".into()))
}

/// χ(h₁,g₁)((h₂g₂)⊳b)χ⁻¹(h₃,g₃) = (hg)⊳b on all basis triples.
pub fn cotwist_preserves_assoc(pair: &CocyclePair, chi: &HopfCotwist) -> Result<bool> {
    require_associative(pair)?;
    let (h, b) = (pair.h(), pair.b());
    Ok(crate::report::first_failure(&[h.dim(), h.dim(), b.dim()], |t| {
        let e = SparseVec::unit(t[2]);
        let mut lhs = Accumulator::new();
        for (hl, x) in h.legs(t[0], 3).iter() {
            for (gl, y) in h.legs(t[1], 3).iter() {
                let w = chi.chi.scalar_at(&[hl[0], gl[0]]) * chi.chi_inv.scalar_at(&[hl[2], gl[2]]);
                if !w.is_zero() {
                    lhs.add_scaled(&(x * y * w), &pair.act_on(h.mul_basis(hl[1], gl[1]), &e));
                }
            }
        }
        lhs.finish() == pair.act_on(h.mul_basis(t[0], t[1]), &e)
    })
    .is_none())
}

/// Inner measuring h⊳b = u(h₁)bu⁻¹(h₂) with the centrality report
/// u⁻¹(g₁)u⁻¹(h₁)u(h₂g₂) ∈ Z(B).
pub fn inner_action_cocycle(b: &FinAlgebra, h: &HopfAlgebra, u: &GaugeMap) -> (Measuring, Report) {
    let (dh, db) = (h.dim(), b.dim());
    let act = CoeffTensor::from_fn(vec![dh, db], db, |t| {
        let e = SparseVec::unit(t[1]);
        let mut acc = Accumulator::new();
        for (l, x) in h.legs(t[0], 2).iter() {
            acc.add_scaled(x, &b.product(&[u.u.col(l[0]), &e, u.u_inv.col(l[1])]));
        }
        acc.finish()
    });
    let mut r = Report::new("inner action");
    r.check("inner.central", "u⁻¹(g₁)u⁻¹(h₁)u(h₂g₂) ∈ Z(B)", &[dh, dh], |t| {
        b.is_central(&inner_defect(b, h, u, t[0], t[1]))
    });
    (Measuring::new(h, b, act), r)
}

/// u⁻¹(g₁)u⁻¹(h₁)u(h₂g₂), the cocycle of the gauged inner action.
pub fn inner_defect(b: &FinAlgebra, h: &HopfAlgebra, u: &GaugeMap, x: usize, y: usize) -> SparseVec {
    let mut acc = Accumulator::new();
    for (hl, c) in h.legs(x, 2).iter() {
        for (gl, d) in h.legs(y, 2).iter() {
            let last = u.u.apply(h.mul_basis(hl[1], gl[1]));
            acc.add_scaled(&(c * d), &b.product(&[u.u_inv.col(gl[0]), u.u_inv.col(hl[0]), &last]));
        }
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, symmetric_group3, sweedler_cotwist, sweedler_h4};
    use crate::exactla::Scalar;

    fn coboundary_s3() -> CocyclePair {
        // σ = ∂u for a generic unital u: S₃ → k
        let h = symmetric_group3();
        let k = FinAlgebra::ground();
        let vals = [1, 2, 3, 5, 7, 11];
        let u = LinMap::from_fn(6, 1, |i| SparseVec::single(0, Scalar::int(vals[i])));
        let u = GaugeMap::new(&h, &k, u).unwrap();
        gauge_transform(&CocyclePair::untwisted(Measuring::trivial(&h, &k)), &u).unwrap()
    }

    #[test]
    fn untwisted_pairs_validate() {
        let h = sweedler_h4();
        let pair = CocyclePair::untwisted(Measuring::trivial(&h, &h.algebra));
        assert!(validate_cocycle(&pair).passed());
        assert!(sigma_identities(&pair).passed());
    }

    #[test]
    fn scalar_cotwist_is_a_cocycle() {
        let h = sweedler_h4();
        let chi = sweedler_cotwist(&h, Scalar::frac(1, 3));
        let pair = CocyclePair::scalar(&h, chi.chi.clone()).unwrap();
        let r = validate_cocycle(&pair);
        assert!(r.passed(), "{r}");
        let r = sigma_identities(&pair);
        assert!(r.passed(), "{r}");
        assert!(is_associative_type(&pair).unwrap());
    }

    #[test]
    fn leg_order_matters_for_noncommutative_h() {
        let pair = coboundary_s3();
        assert!(validate_cocycle(&pair).passed());
        assert!(sigma_identities(&pair).passed());
        let printed_fails = (0..6).any(|h| (0..6).any(|g| !antipode_product_identity(&pair, h, g, true)));
        assert!(printed_fails);
    }

    #[test]
    fn identity_gauge_is_trivial() {
        let pair = coboundary_s3();
        let id = GaugeMap::identity(pair.h(), pair.b());
        assert_eq!(gauge_transform(&pair, &id).unwrap(), pair);
    }

    #[test]
    fn cotwist_of_scalar_pair() {
        let h = sweedler_h4();
        let chi = sweedler_cotwist(&h, Scalar::int(5));
        let trivial = CocyclePair::untwisted(Measuring::trivial(&h, &FinAlgebra::ground()));
        let twisted = cotwist_cocycle(&trivial, &chi).unwrap();
        assert_eq!(twisted.sigma, chi.chi_inv);
        assert!(validate_cocycle(&twisted).passed());
    }

    #[test]
    fn trivial_action_preserved_by_cotwists() {
        let h = cyclic_group(2);
        let pair = CocyclePair::untwisted(Measuring::trivial(&h, &h.algebra));
        let chi = HopfCotwist::trivial(&h);
        assert!(cotwist_preserves_assoc(&pair, &chi).unwrap());
    }
}
