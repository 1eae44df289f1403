//! Quantum Weyl cross products B#_σkℤ₂ with w⊳b = T(b) and σ(w,w) = x⁻¹.

use super::hopf_algebras::cyclic_group;
use crate::cocycle::{is_associative_type, CocyclePair};
use crate::comod::Measuring;
use crate::crossprod::{build_cross_product, CrossProduct};
use crate::error::{Error, Result};
use crate::exactla::{Accumulator, CoeffTensor, LinMap, Scalar, SparseVec};
use crate::hopf::{FinAlgebra, HopfAlgebra};
use crate::report::Report;

/// (B, ψ, T, x) with ψ ∈ B⊗B a Drinfeld twist (index `i * dim B + j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylData {
    pub b: HopfAlgebra,
    pub psi: SparseVec,
    pub t: LinMap,
    pub x: SparseVec,
}

fn apply_both(t: &LinMap, v: &SparseVec, n: usize) -> SparseVec {
    let mut acc = Accumulator::new();
    for (i, c) in v.iter() {
        acc.add_scaled(c, &t.col(i / n).kron(t.col(i % n), n));
    }
    acc.finish()
}

/// ψ on B⊗B⊗B after (Δ⊗id) or (id⊗Δ).
fn comul_leg(b: &HopfAlgebra, psi: &SparseVec, left: bool) -> SparseVec {
    let n = b.dim();
    let mut acc = Accumulator::new();
    for (i, c) in psi.iter() {
        let (p, q) = (i / n, i % n);
        let v = if left {
            b.coalgebra.comul_basis(p).kron(&SparseVec::unit(q), n)
        } else {
            SparseVec::unit(p).kron(b.coalgebra.comul_basis(q), n * n)
        };
        acc.add_scaled(c, &v);
    }
    acc.finish()
}

/// The twist axioms on ψ, T: B → ^ψB a Hopf algebra map, and the four
/// conditions on x.
pub fn check_weyl_axioms(d: &WeylData) -> Report {
    let b = &d.b;
    let n = b.dim();
    let bb = b.algebra.tensor(&b.algebra);
    let bbb = bb.tensor(&b.algebra);
    let mut r = Report::new("quantum Weyl data");
    let psi_inv = bb.invert(&d.psi);
    r.check_bool("psi.invertible", "ψ invertible in B⊗B", psi_inv.is_some());
    let one = b.one();
    let lhs = bbb.mul(&d.psi.kron(one, n), &comul_leg(b, &d.psi, true));
    let rhs = bbb.mul(&one.kron(&d.psi, n * n), &comul_leg(b, &d.psi, false));
    r.check_bool("psi.twist", "(ψ⊗1)(Δ⊗id)ψ = (1⊗ψ)(id⊗Δ)ψ", lhs == rhs);
    let eps_left: SparseVec = {
        let mut acc = Accumulator::new();
        for (i, c) in d.psi.iter() {
            acc.add(i % n, &(c * b.counit_basis(i / n)));
        }
        acc.finish()
    };
    let eps_right: SparseVec = {
        let mut acc = Accumulator::new();
        for (i, c) in d.psi.iter() {
            acc.add(i / n, &(c * b.counit_basis(i % n)));
        }
        acc.finish()
    };
    r.check_bool("psi.counital", "(ε⊗id)ψ = (id⊗ε)ψ = 1", eps_left == *one && eps_right == *one);

    let t = &d.t;
    r.check_bool("T.algebra-map", "T(ab) = T(a)T(b), T(1) = 1", b.algebra.algebra_map_failure(t, &b.algebra).is_none());
    let psi_inv = psi_inv.unwrap_or_default();
    r.check("T.coalgebra-map", "(T⊗T)Δ(a) = ψΔ(T(a))ψ⁻¹", &[n], |k| {
        let lhs = apply_both(t, b.coalgebra.comul_basis(k[0]), n);
        let mid = b.coalgebra.comul(t.col(k[0]));
        lhs == bb.product(&[&d.psi, &mid, &psi_inv])
    });
    r.check("T.counit", "ε(T(a)) = ε(a)", &[n], |k| b.counit(t.col(k[0])) == b.counit_basis(k[0]));

    let x_inv = b.algebra.invert(&d.x);
    r.check_bool("x.invertible", "x invertible", x_inv.is_some());
    let x_inv = x_inv.unwrap_or_default();
    let t2 = t.compose(t);
    r.check("x.conjugation", "x⁻¹ax = T²(a)", &[n], |k| {
        b.algebra.product(&[&x_inv, &SparseVec::unit(k[0]), &d.x]) == *t2.col(k[0])
    });
    r.check_bool("x.fixed", "T(x) = x", t.apply(&d.x) == d.x);
    let rhs = bb.product(&[&d.x.kron(&d.x, n), &apply_both(t, &d.psi, n), &d.psi]);
    r.check_bool("x.coproduct", "Δx = (x⊗x)((T⊗T)ψ)ψ", b.coalgebra.comul(&d.x) == rhs);
    r.check_bool("x.counit", "ε(x) = 1", b.counit(&d.x).is_one());
    r
}

/// The pair over kℤ₂ = {1, w}: w⊳b = T(b), σ(w,w) = x⁻¹, σ = ε⊗ε elsewhere,
/// and its cross product. Refused with the failing axiom ids otherwise.
pub fn quantum_weyl_extension(d: &WeylData) -> Result<(CocyclePair, CrossProduct, Report)> {
    let mut r = check_weyl_axioms(d);
    if !r.passed() {
        return Err(Error::AxiomFailed(r.failure_ids()));
    }
    let h = cyclic_group(2);
    let b = &d.b.algebra;
    let n = b.dim();
    let x_inv = b.invert(&d.x).expect("checked invertible");
    let act = CoeffTensor::from_fn(vec![2, n], n, |k| if k[0] == 0 { SparseVec::unit(k[1]) } else { d.t.col(k[1]).clone() });
    let sigma = CoeffTensor::from_fn(vec![2, 2], n, |k| if k == [1, 1] { x_inv.clone() } else { b.unit.clone() });
    let pair = CocyclePair::new(Measuring::new(&h, b, act), sigma)?;
    let x = build_cross_product(&pair)?;
    let assoc = is_associative_type(&pair)?;
    r.check_bool("associative-type", "w⊳(w⊳b) = b for the pair", assoc);
    if !assoc {
        r.note_last("pair is valid but not of associative type");
    }
    Ok((pair, x, r))
}

/// Algebra automorphisms of B that permute the basis.
fn basis_permutation_automorphisms(b: &FinAlgebra) -> Vec<LinMap> {
    let n = b.dim();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let t = LinMap::from_fn(n, n, |i| SparseVec::unit(p[i]));
        if b.algebra_map_failure(&t, b).is_none() {
            out.push(t);
        }
    });
    out
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Exhaustive search over basis-permuting automorphisms T and x with
/// coefficients in `grid`, keeping every (T, x) passing all axioms.
pub fn search_weyl_data(b: &HopfAlgebra, psi: &SparseVec, grid: &[Scalar]) -> Vec<WeylData> {
    let n = b.dim();
    let mut found = Vec::new();
    for t in basis_permutation_automorphisms(&b.algebra) {
        let mut coeffs = vec![0usize; n];
        loop {
            let x = SparseVec::from_pairs(coeffs.iter().enumerate().map(|(i, &g)| (i, grid[g].clone())));
            // cheap filters before the full report
            if b.counit(&x).is_one() && t.apply(&x) == x {
                let d = WeylData { b: b.clone(), psi: psi.clone(), t: t.clone(), x };
                if check_weyl_axioms(&d).passed() {
                    found.push(d);
                }
            }
            let mut k = 0;
            while k < n {
                coeffs[k] += 1;
                if coeffs[k] < grid.len() {
                    break;
                }
                coeffs[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    found
}

/// 𝓡 = ¼ Σ i^{-ab} g^a⊗g^b on kℤ₄ over ℚ(i).
pub fn kz4_r_matrix() -> SparseVec {
    let quarter = Scalar::frac(1, 4);
    SparseVec::from_pairs((0..16).map(|k| {
        let (a, b) = ((k / 4) as i64, (k % 4) as i64);
        (k, &quarter * &Scalar::root_of_unity(4, -a * b))
    }))
}

/// The search grid: 0, ±1, ±i, (1±i)/2, (−1±i)/2.
pub fn gaussian_grid() -> Vec<Scalar> {
    let i = Scalar::root_of_unity(4, 1);
    let half = Scalar::frac(1, 2);
    vec![
        Scalar::zero(),
        Scalar::one(),
        Scalar::int(-1),
        i.clone(),
        -&i,
        &half * &(&Scalar::one() + &i),
        &half * &(&Scalar::one() - &i),
        &half * &(&Scalar::int(-1) + &i),
        &half * &(&Scalar::int(-1) - &i),
    ]
}

/// B = kℤ₄, ψ = 𝓡, T = inversion, x = ((1+i) + (1−i)g²)/2: the first
/// nontrivial solution of `search_weyl_data` with T ≠ id.
pub fn kz4_weyl_data() -> WeylData {
    let b = cyclic_group(4);
    let t = LinMap::from_fn(4, 4, |k| SparseVec::unit((4 - k) % 4));
    let i = Scalar::root_of_unity(4, 1);
    let half = Scalar::frac(1, 2);
    let x = SparseVec::from_pairs([(0, &half * &(&Scalar::one() + &i)), (2, &half * &(&Scalar::one() - &i))]);
    WeylData { b, psi: kz4_r_matrix(), t, x }
}

/// The catalog quantum Weyl pair over B = kℤ₄.
pub fn weyl_pair() -> CocyclePair {
    quantum_weyl_extension(&kz4_weyl_data()).expect("shipped Weyl data satisfies the axioms").0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::validate_cocycle;

    #[test]
    fn trivial_data_gives_trivial_extension() {
        let b = cyclic_group(2);
        let d = WeylData { b: b.clone(), psi: b.one().kron(b.one(), 2), t: LinMap::identity(2), x: b.one().clone() };
        let (pair, _, r) = quantum_weyl_extension(&d).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(*pair.sigma_at(1, 1), *b.one());
        assert!(pair.act == Measuring::trivial(pair.h(), pair.b()));
    }

    #[test]
    fn shipped_data_is_found_by_search() {
        let b = cyclic_group(4);
        let found = search_weyl_data(&b, &kz4_r_matrix(), &gaussian_grid());
        assert!(!found.is_empty());
        assert!(found.iter().all(|d| d.x != *b.one()));
        let shipped = kz4_weyl_data();
        assert!(found.contains(&shipped));
    }

    #[test]
    fn weyl_pair_validates_and_squares_w() {
        let d = kz4_weyl_data();
        let (pair, x, r) = quantum_weyl_extension(&d).unwrap();
        assert!(r.passed(), "{r}");
        assert!(validate_cocycle(&pair).passed());
        assert_ne!(*pair.sigma_at(1, 1), *d.b.one());
        // (1#w)² = σ(w,w)#1 = x⁻¹, the ribbon element here
        let w = x.elem(pair.b().one(), &SparseVec::unit(1));
        let x_inv = d.b.algebra.invert(&d.x).unwrap();
        assert_eq!(x.p.p.mul(&w, &w), x.elem(&x_inv, &SparseVec::unit(0)));
    }

    #[test]
    fn broken_x_names_the_axiom() {
        let mut d = kz4_weyl_data();
        d.x = d.b.one().clone();
        match quantum_weyl_extension(&d) {
            Err(Error::AxiomFailed(which)) => assert_eq!(which, "x.coproduct"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
