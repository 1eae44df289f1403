//! Cocycle pairs shipped with the catalog.

use super::hopf_algebras::{cyclic_bicharacter, cyclic_group, sweedler_cotwist, sweedler_h4, symmetric_group3};
use crate::cocycle::{gauge_transform, inner_action_cocycle, CocyclePair, GaugeMap};
use crate::comod::Measuring;
use crate::exactla::{CoeffTensor, LinMap, Scalar, SparseVec};
use crate::hopf::{FinAlgebra, HopfAlgebra};

/// M_n(k) on matrix units, e_ij at index n·i + j.
pub fn matrix_algebra(n: usize) -> FinAlgebra {
    let mut alg = FinAlgebra::from_table(n * n, SparseVec::from_pairs((0..n).map(|i| (i * n + i, Scalar::one()))), |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        if j == k {
            SparseVec::unit(i * n + l)
        } else {
            SparseVec::new()
        }
    });
    alg.labels = (0..n * n).map(|a| format!("e{}{}", a / n + 1, a % n + 1)).collect();
    alg
}

/// k[y]/(y²) on 1, y.
pub fn dual_numbers() -> FinAlgebra {
    let mut alg = FinAlgebra::from_table(2, SparseVec::unit(0), |a, b| {
        if a + b < 2 {
            SparseVec::unit(a + b)
        } else {
            SparseVec::new()
        }
    });
    alg.labels = vec!["1".into(), "y".into()];
    alg
}

/// 2×2 matrix given row-major as a vector of M₂.
pub fn m2(entries: [i64; 4]) -> SparseVec {
    SparseVec::from_pairs(entries.iter().enumerate().map(|(k, &v)| (k, Scalar::int(v))))
}

/// u: kℤ₂ → B with u(1) = 1, u(g) = `ug`.
pub fn z2_gauge(b: &FinAlgebra, ug: SparseVec) -> GaugeMap {
    let h = cyclic_group(2);
    let u = LinMap::from_cols(b.dim(), vec![b.unit.clone(), ug]);
    GaugeMap::new(&h, b, u).expect("gauge value is invertible")
}

/// B = k over H₄ with σ = χ_λ.
pub fn galois_h4(lambda: Scalar) -> CocyclePair {
    let h = sweedler_h4();
    let chi = sweedler_cotwist(&h, lambda);
    CocyclePair::scalar(&h, chi.chi).expect("cotwist is invertible")
}

/// B = k over kℤ₂ with σ(g,g) = a.
pub fn galois_kz2(a: Scalar) -> CocyclePair {
    let h = cyclic_group(2);
    let sigma = CoeffTensor::functional(vec![2, 2], |t| if t == [1, 1] { a.clone() } else { Scalar::one() });
    CocyclePair::scalar(&h, sigma).expect("nonzero value is invertible")
}

/// B = k over kℤ₂ with σ the sign bicharacter 𝓡(g,g) = −1.
pub fn coquasi_kz2() -> CocyclePair {
    let h = cyclic_group(2);
    let sigma = cyclic_bicharacter(&h, &Scalar::int(-1));
    CocyclePair::scalar(&h, sigma).expect("bicharacter is invertible")
}

/// u(g) for the inner examples over M₂; u(g)² = 2·1 is central.
pub fn inner_unit() -> SparseVec {
    m2([0, 1, 2, 0])
}

/// M₂ with g acting by conjugation b ↦ u b u⁻¹, trivial σ.
pub fn inner_m2_kz2() -> CocyclePair {
    let b = matrix_algebra(2);
    let h = cyclic_group(2);
    let (act, _) = inner_action_cocycle(&b, &h, &z2_gauge(&b, inner_unit()));
    CocyclePair::untwisted(act)
}

/// The gauge transform of `inner_m2_kz2` by u: trivial action, σᵘ(g,g) = u(g)⁻².
pub fn inner_m2_kz2_gauged() -> CocyclePair {
    let b = matrix_algebra(2);
    gauge_transform(&inner_m2_kz2(), &z2_gauge(&b, inner_unit())).expect("gauge applies")
}

/// Gauge of the trivial pair by v(g) = [[1,1],[0,1]]; v² is not central, so
/// the measuring is not an action.
pub fn m2_non_associative() -> CocyclePair {
    let b = matrix_algebra(2);
    let h = cyclic_group(2);
    let trivial = CocyclePair::untwisted(Measuring::trivial(&h, &b));
    gauge_transform(&trivial, &z2_gauge(&b, m2([1, 1, 0, 1]))).expect("gauge applies")
}

/// H₄ acting on k[y]/(y²) by g⊳y = −y, x⊳y = 1, x⊳1 = 0.
pub fn h4_dual_numbers() -> CocyclePair {
    let h = sweedler_h4();
    let b = dual_numbers();
    let act = CoeffTensor::from_fn(vec![4, 2], 2, |t| match (t[0], t[1]) {
        (0, k) => SparseVec::unit(k),
        (1, 0) => SparseVec::unit(0),
        (1, 1) => SparseVec::single(1, Scalar::int(-1)),
        (2, 1) | (3, 1) => SparseVec::unit(0),
        _ => SparseVec::new(),
    });
    CocyclePair::untwisted(Measuring::new(&h, &b, act))
}

/// The coboundary ∂u of u: S₃ → k with u = (1, 2, 3, 5, 7, 11) on e, (12), (13), (23), (123), (132).
pub fn coboundary_s3() -> CocyclePair {
    let h = symmetric_group3();
    let k = FinAlgebra::ground();
    let vals = [1, 2, 3, 5, 7, 11];
    let u = LinMap::from_fn(6, 1, |i| SparseVec::single(0, Scalar::int(vals[i])));
    let u = GaugeMap::new(&h, &k, u).expect("values are nonzero");
    gauge_transform(&CocyclePair::untwisted(Measuring::trivial(&h, &k)), &u).expect("gauge applies")
}

/// Smash product of a Hopf algebra with itself under the left adjoint action.
pub fn adjoint_smash(h: &HopfAlgebra) -> CocyclePair {
    let d = h.dim();
    let act = CoeffTensor::from_fn(vec![d, d], d, |t| {
        let mut acc = crate::exactla::Accumulator::new();
        for (l, c) in h.legs(t[0], 2).iter() {
            let v = h.algebra.product(&[&SparseVec::unit(l[0]), &SparseVec::unit(t[1]), h.s_basis(l[1])]);
            acc.add_scaled(c, &v);
        }
        acc.finish()
    });
    CocyclePair::untwisted(Measuring::new(h, &h.algebra, act))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::{is_associative_type, validate_cocycle};

    #[test]
    fn pairs_validate() {
        let pairs = [
            galois_h4(Scalar::frac(1, 2)),
            galois_kz2(Scalar::int(3)),
            coquasi_kz2(),
            inner_m2_kz2(),
            inner_m2_kz2_gauged(),
            m2_non_associative(),
            h4_dual_numbers(),
            coboundary_s3(),
        ];
        for p in &pairs {
            let r = validate_cocycle(p);
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn associative_type_flags() {
        assert!(is_associative_type(&inner_m2_kz2()).unwrap());
        assert!(is_associative_type(&inner_m2_kz2_gauged()).unwrap());
        assert!(is_associative_type(&h4_dual_numbers()).unwrap());
        assert!(!is_associative_type(&m2_non_associative()).unwrap());
    }

    #[test]
    fn gauged_inner_pair_has_trivial_action() {
        let p = inner_m2_kz2_gauged();
        assert!(p.act == Measuring::trivial(p.h(), p.b()));
        // σᵘ(g,g) = u(g)⁻² = ½·1
        assert_eq!(*p.sigma_at(1, 1), SparseVec::from_pairs([(0, Scalar::frac(1, 2)), (3, Scalar::frac(1, 2))]));
    }
}
