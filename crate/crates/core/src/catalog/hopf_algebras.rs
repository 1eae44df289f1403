//! Hopf algebras, cotwists and coquasitriangular forms shipped with the catalog.

use crate::exactla::{CoeffTensor, LinMap, Scalar, SparseVec};
use crate::hopf::{CoquasiStructure, FinAlgebra, FinCoalgebra, HopfAlgebra, HopfCotwist};

/// kG from a multiplication table on element indices; element 0 is the identity.
pub fn group_algebra(labels: Vec<String>, table: &[Vec<usize>]) -> HopfAlgebra {
    let n = labels.len();
    let mut alg = FinAlgebra::from_table(n, SparseVec::unit(0), |i, j| SparseVec::unit(table[i][j]));
    alg.labels = labels;
    let counit = SparseVec::from_dense(&vec![Scalar::one(); n]);
    let coalg = FinCoalgebra::from_fn(n, counit, |i| vec![(i, i, Scalar::one())]);
    let inv = |i: usize| (0..n).find(|&j| table[i][j] == 0).expect("group element without inverse");
    let s = LinMap::from_fn(n, n, |i| SparseVec::unit(inv(i)));
    HopfAlgebra::new(alg, coalg, s)
}

/// kℤₙ with basis 1, g, …, g^{n-1}.
pub fn cyclic_group(n: usize) -> HopfAlgebra {
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    group_algebra(labels, &table)
}

/// kS₃ on e, (12), (13), (23), (123), (132).
pub fn symmetric_group3() -> HopfAlgebra {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let labels = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
    let table: Vec<Vec<usize>> = (0..6)
        .map(|i| {
            (0..6)
                .map(|j| {
                    let comp = [perms[i][perms[j][0]], perms[i][perms[j][1]], perms[i][perms[j][2]]];
                    perms.iter().position(|p| *p == comp).unwrap()
                })
                .collect()
        })
        .collect();
    group_algebra(labels, &table)
}

/// Sweedler's four-dimensional Hopf algebra on 1, g, x, gx.
pub fn sweedler_h4() -> HopfAlgebra {
    // basis index = 2·[x present] + [g present], monomials written g^a x^b
    let mut alg = FinAlgebra::from_table(4, SparseVec::unit(0), |i, j| {
        let (g1, x1) = (i & 1, i >> 1);
        let (g2, x2) = (j & 1, j >> 1);
        if x1 == 1 && x2 == 1 {
            return SparseVec::new();
        }
        // x g = −g x
        let sign = if x1 == 1 && g2 == 1 { -1 } else { 1 };
        SparseVec::single(((x1 | x2) << 1) | (g1 ^ g2), Scalar::int(sign))
    });
    alg.labels = ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect();
    let one = Scalar::one();
    let counit = SparseVec::from_dense(&[one.clone(), one, Scalar::zero(), Scalar::zero()]);
    let coalg = FinCoalgebra::from_fn(4, counit, |i| match i {
        0 => vec![(0, 0, Scalar::one())],
        1 => vec![(1, 1, Scalar::one())],
        2 => vec![(2, 0, Scalar::one()), (1, 2, Scalar::one())],
        _ => vec![(3, 1, Scalar::one()), (0, 3, Scalar::one())],
    });
    let s = LinMap::from_cols(
        4,
        vec![SparseVec::unit(0), SparseVec::unit(1), SparseVec::single(3, Scalar::int(-1)), SparseVec::unit(2)],
    );
    HopfAlgebra::new(alg, coalg, s)
}

fn h4_form(h: &HopfAlgebra, g_g: Scalar, x_block: [Scalar; 4]) -> CoeffTensor {
    CoeffTensor::functional(vec![4, 4], |t| match (t[0], t[1]) {
        (0, j) => h.counit_basis(j),
        (i, 0) => h.counit_basis(i),
        (1, 1) => g_g.clone(),
        (2, 2) => x_block[0].clone(),
        (2, 3) => x_block[1].clone(),
        (3, 2) => x_block[2].clone(),
        (3, 3) => x_block[3].clone(),
        _ => Scalar::zero(),
    })
}

/// χ_λ: χ(g,g) = 1, χ(x,x) = λ, χ(x,gx) = −λ, χ(gx,x) = λ, χ(gx,gx) = −λ.
pub fn sweedler_cotwist(h: &HopfAlgebra, lambda: Scalar) -> HopfCotwist {
    let l = lambda;
    let chi = h4_form(h, Scalar::one(), [l.clone(), -&l, l.clone(), -&l]);
    HopfCotwist::new(h, chi).expect("cotwist family is invertible")
}

/// R_λ: R(g,g) = −1, R(x,x) = λ, R(x,gx) = R(gx,x) = R(gx,gx) = −λ.
pub fn sweedler_coquasi(h: &HopfAlgebra, lambda: Scalar) -> CoquasiStructure {
    let l = lambda;
    let r = h4_form(h, Scalar::int(-1), [l.clone(), -&l, -&l, -&l]);
    CoquasiStructure::new(h, r).expect("coquasitriangular family is invertible")
}

/// Bicharacter on kℤₙ with 𝓡(g^a, g^b) = q^{ab}.
pub fn cyclic_bicharacter(h: &HopfAlgebra, q: &Scalar) -> CoeffTensor {
    let n = h.dim();
    let mut powers = vec![Scalar::one()];
    for k in 1..n * n {
        powers.push(&powers[k - 1] * q);
    }
    CoeffTensor::functional(vec![n, n], |t| powers[t[0] * t[1]].clone())
}
