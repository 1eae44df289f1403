//! Exact linear algebra over ℚ and ℚ(ζₙ).

mod convolution;
mod quotient;
mod rref;
mod scalar;
mod sparse;

pub use convolution::{convolution_inverse, ConvolutionSetting, NotInvertible};
pub use quotient::QuotientSpace;
pub use rref::{inverse, kernel, rank, solve, Echelon, Embedding, Rref};
pub use scalar::{cyclotomic_polynomial, Field, Scalar, ScalarParseError, MAX_CYCLOTOMIC_ORDER};
pub use sparse::{flatten, unflatten, Accumulator, CoeffTensor, LinMap, SparseVec};

#[cfg(test)]
mod oracle_tests {
    //! Dense textbook elimination on fractions as an independent oracle.

    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn dense_rank(rows: &[Vec<BigRational>]) -> usize {
        let mut m = rows.to_vec();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for col in 0..ncols {
            let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else { continue };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for c in 0..ncols {
                        let d = &f * &m[rank][c];
                        m[r][c] -= d;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn to_map(rows: &[Vec<i64>]) -> LinMap {
        LinMap::from_rows(&rows.iter().map(|r| r.iter().map(|&c| Scalar::int(c)).collect()).collect::<Vec<_>>())
    }

    fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&c| BigRational::from_integer(c.into())).collect()).collect()
    }

    fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        // small entries with many zeros so that rank deficiency is common
        prop::collection::vec(prop::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], 5), 5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn rank_matches_oracle(rows in matrix()) {
            let m = to_map(&rows);
            prop_assert_eq!(rank(&m), dense_rank(&to_q(&rows)));
        }

        #[test]
        fn kernel_matches_oracle(rows in matrix()) {
            let m = to_map(&rows);
            let k = kernel(&m);
            prop_assert_eq!(k.len(), 5 - dense_rank(&to_q(&rows)));
            for v in &k {
                prop_assert!(m.apply(v).is_zero());
            }
            let kmat = LinMap::from_cols(5, k.clone());
            prop_assert_eq!(rank(&kmat), k.len());
        }

        #[test]
        fn solve_matches_oracle(rows in matrix(), rhs in prop::collection::vec(-3i64..=3, 5)) {
            let m = to_map(&rows);
            let b = SparseVec::from_dense(&rhs.iter().map(|&c| Scalar::int(c)).collect::<Vec<_>>());
            let mut aug = rows.clone();
            for (r, c) in aug.iter_mut().zip(&rhs) {
                r.push(*c);
            }
            let consistent = dense_rank(&to_q(&aug)) == dense_rank(&to_q(&rows));
            match solve(&m, &b) {
                Some(x) => {
                    prop_assert!(consistent);
                    prop_assert_eq!(m.apply(&x), b);
                }
                None => prop_assert!(!consistent),
            }
        }

        #[test]
        fn inverse_matches_oracle(rows in matrix()) {
            let m = to_map(&rows);
            match inverse(&m) {
                Some(inv) => {
                    prop_assert!(m.compose(&inv).is_identity());
                    prop_assert!(inv.compose(&m).is_identity());
                }
                None => prop_assert!(dense_rank(&to_q(&rows)) < 5),
            }
        }

        #[test]
        fn quotient_invariants(rows in matrix()) {
            let rels: Vec<SparseVec> = to_map(&rows).cols;
            let q = QuotientSpace::new(5, &rels);
            prop_assert_eq!(q.dim(), 5 - dense_rank(&to_q(&rows)).min(5));
            prop_assert!(q.proj_matrix().compose(&q.sect_matrix()).is_identity());
            for r in &rels {
                prop_assert!(q.project(r).is_zero());
            }
            for i in 0..5 {
                let v = SparseVec::unit(i);
                let back = q.lift(&q.project(&v));
                prop_assert!(q.is_relation(&v.sub(&back)));
            }
        }
    }
}
