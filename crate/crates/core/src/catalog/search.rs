//! Brute-force searches producing catalog fixtures.

use std::collections::BTreeMap;

use crate::cocycle::{validate_cocycle, CocyclePair};
use crate::error::{Error, Result};
use crate::exactla::{CoeffTensor, Rref, Scalar, SparseVec};
use crate::hopf::HopfAlgebra;

/// Monomials of degree ≤ 2 in the unknowns, as sorted variable lists.
type Poly = BTreeMap<Vec<usize>, Scalar>;

/// c + Σ aᵥ·v
#[derive(Clone)]
struct Affine {
    constant: Scalar,
    linear: BTreeMap<usize, Scalar>,
}

impl Affine {
    fn zero() -> Affine {
        Affine { constant: Scalar::zero(), linear: BTreeMap::new() }
    }

    fn add_scaled(&mut self, c: &Scalar, other: &Affine) {
        self.constant += &(c * &other.constant);
        for (v, a) in &other.linear {
            *self.linear.entry(*v).or_insert_with(Scalar::zero) += &(c * a);
        }
    }

    fn times(&self, other: &Affine) -> Poly {
        let mut p = Poly::new();
        let mut put = |m: Vec<usize>, c: Scalar| {
            if !c.is_zero() {
                *p.entry(m).or_insert_with(Scalar::zero) += &c;
            }
        };
        put(vec![], &self.constant * &other.constant);
        for (v, a) in &self.linear {
            put(vec![*v], a * &other.constant);
        }
        for (v, a) in &other.linear {
            put(vec![*v], a * &self.constant);
        }
        for (v, a) in &self.linear {
            for (w, b) in &other.linear {
                let mut m = vec![*v, *w];
                m.sort_unstable();
                put(m, a * b);
            }
        }
        p
    }
}

fn poly_add(p: &mut Poly, q: &Poly, sign: &Scalar) {
    for (m, c) in q {
        *p.entry(m.clone()).or_insert_with(Scalar::zero) += &(sign * c);
    }
    p.retain(|_, c| !c.is_zero());
}

fn substitute(p: &Poly, values: &[Option<Scalar>]) -> Poly {
    let mut out = Poly::new();
    for (m, c) in p {
        let mut coef = c.clone();
        let mut rest = Vec::new();
        for v in m {
            match &values[*v] {
                Some(x) => coef = &coef * x,
                None => rest.push(*v),
            }
        }
        if !coef.is_zero() {
            *out.entry(rest).or_insert_with(Scalar::zero) += &coef;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Normalized σ with σ(1,h) = σ(h,1) = ε(h); unknowns are σ(i,j) for
/// non-unit basis i, j. Returns the unknown table and the cocycle equations
/// σ(g₁,f₁)σ(h,g₂f₂) = σ(h₁,g₁)σ(h₂g₂,f) for trivial action on B = k.
fn cocycle_system(h: &HopfAlgebra, unit: usize) -> (Vec<(usize, usize)>, Vec<Poly>) {
    let d = h.dim();
    let others: Vec<usize> = (0..d).filter(|&i| i != unit).collect();
    let mut var = vec![vec![None; d]; d];
    let mut vars = Vec::new();
    for &i in &others {
        for &j in &others {
            var[i][j] = Some(vars.len());
            vars.push((i, j));
        }
    }
    let entry = |i: usize, j: usize| -> Affine {
        match var[i][j] {
            Some(v) => Affine { constant: Scalar::zero(), linear: BTreeMap::from([(v, Scalar::one())]) },
            None => Affine { constant: h.counit_basis(i) * h.counit_basis(j), linear: BTreeMap::new() },
        }
    };
    let sigma = |a: &SparseVec, b: &SparseVec| -> Affine {
        let mut out = Affine::zero();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&(x * y), &entry(i, j));
            }
        }
        out
    };
    let mut eqs = Vec::new();
    let minus = Scalar::int(-1);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let mut p = Poly::new();
                for (gl, c) in h.legs(y, 2).iter() {
                    for (fl, c2) in h.legs(z, 2).iter() {
                        let prod = sigma(&SparseVec::unit(gl[0]), &SparseVec::unit(fl[0]))
                            .times(&sigma(&SparseVec::unit(x), h.mul_basis(gl[1], fl[1])));
                        poly_add(&mut p, &prod, &(c * c2));
                    }
                }
                for (hl, c) in h.legs(x, 2).iter() {
                    for (gl, c2) in h.legs(y, 2).iter() {
                        let prod = sigma(&SparseVec::unit(hl[0]), &SparseVec::unit(gl[0]))
                            .times(&sigma(h.mul_basis(hl[1], gl[1]), &SparseVec::unit(z)));
                        poly_add(&mut p, &prod, &(&minus * &(c * c2)));
                    }
                }
                if !p.is_empty() {
                    eqs.push(p);
                }
            }
        }
    }
    (vars, eqs)
}

/// Fix every unknown the linear part of the reduced system determines;
/// false on inconsistency.
fn propagate(eqs: &[Poly], values: &mut [Option<Scalar>]) -> bool {
    let nv = values.len();
    loop {
        let reduced: Vec<Poly> = eqs.iter().map(|p| substitute(p, values)).collect();
        if reduced.iter().any(|p| p.len() == 1 && p.contains_key(&Vec::new())) {
            return false;
        }
        let rows: Vec<SparseVec> = reduced
            .iter()
            .filter(|p| p.keys().all(|m| m.len() <= 1))
            .map(|p| SparseVec::from_pairs(p.iter().map(|(m, c)| (m.first().copied().unwrap_or(nv), c.clone()))))
            .collect();
        let rref = Rref::from_rows(nv + 1, rows.iter());
        let mut progress = false;
        for row in rref.rows() {
            let support: Vec<usize> = row.iter().map(|(i, _)| i).collect();
            match support.as_slice() {
                [c] if *c == nv => return false,
                [v] => {
                    values[*v] = Some(Scalar::zero());
                    progress = true;
                }
                [v, c] if *c == nv => {
                    values[*v] = Some(-&row.get(nv));
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            return true;
        }
    }
}

fn branch(
    eqs: &[Poly],
    mut values: Vec<Option<Scalar>>,
    params_left: usize,
    grid: &[Scalar],
    out: &mut Vec<Vec<Scalar>>,
) {
    if !propagate(eqs, &mut values) {
        return;
    }
    match values.iter().position(|v| v.is_none()) {
        None => {
            if eqs.iter().all(|p| substitute(p, &values).is_empty()) {
                out.push(values.into_iter().map(|v| v.unwrap()).collect());
            }
        }
        Some(k) if params_left > 0 => {
            for g in grid {
                let mut next = values.clone();
                next[k] = Some(g.clone());
                branch(eqs, next, params_left - 1, grid, out);
            }
        }
        Some(_) => {}
    }
}

/// The default ansatz grid: 0, ±1, ±2, ±1/2.
pub fn default_grid() -> Vec<Scalar> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)].iter().map(|&(n, d)| Scalar::frac(n, d)).collect()
}

pub fn search_galois_object_cocycles(h: &HopfAlgebra, max_params: usize) -> Result<Vec<CocyclePair>> {
    search_galois_object_cocycles_with_grid(h, max_params, &default_grid())
}

/// Normalized Drinfeld 2-cocycles σ: H⊗H → k found by parameter
/// elimination: each branch point fixes one unknown from `grid`, then every
/// unknown the linear equations force is solved exactly. Every result passes
/// `validate_cocycle`; order is the depth-first order of the grid.
pub fn search_galois_object_cocycles_with_grid(h: &HopfAlgebra, max_params: usize, grid: &[Scalar]) -> Result<Vec<CocyclePair>> {
    let d = h.dim();
    if d > 8 {
        return Err(Error::PreconditionViolated(format!("dim H = {d} exceeds the search cap of 8")));
    }
    let unit = h.unit_index().ok_or_else(|| Error::PreconditionViolated("unit of H is not a basis element".into()))?;
    let (vars, eqs) = cocycle_system(h, unit);
    let mut solutions = Vec::new();
    branch(&eqs, vec![None; vars.len()], max_params, grid, &mut solutions);
    let mut out = Vec::new();
    for sol in solutions {
        let sigma = CoeffTensor::functional(vec![d, d], |t| match vars.iter().position(|&v| v == (t[0], t[1])) {
            Some(k) => sol[k].clone(),
            None => h.counit_basis(t[0]) * h.counit_basis(t[1]),
        });
        if let Ok(pair) = CocyclePair::scalar(h, sigma) {
            if validate_cocycle(&pair).passed() {
                out.push(pair);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::hopf_algebras::{cyclic_group, sweedler_cotwist, sweedler_h4};
    use crate::catalog::pairs::galois_kz2;

    #[test]
    fn kz2_family_is_the_nonzero_grid() {
        let found = search_galois_object_cocycles(&cyclic_group(2), 1).unwrap();
        let expected: Vec<CocyclePair> = default_grid().into_iter().filter(|a| !a.is_zero()).map(galois_kz2).collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn h4_family_is_recovered() {
        let h = sweedler_h4();
        // three coboundary directions plus λ
        let grid: Vec<Scalar> = [(0, 1), (1, 1), (-1, 1), (1, 2)].iter().map(|&(n, d)| Scalar::frac(n, d)).collect();
        assert!(search_galois_object_cocycles_with_grid(&h, 3, &grid).unwrap().is_empty());
        let found = search_galois_object_cocycles_with_grid(&h, 4, &grid).unwrap();
        let trivial = CocyclePair::scalar(&h, sweedler_cotwist(&h, Scalar::zero()).chi).unwrap();
        assert!(found.contains(&trivial));
        for l in grid {
            let pair = CocyclePair::scalar(&h, sweedler_cotwist(&h, l).chi).unwrap();
            assert!(found.contains(&pair));
        }
    }

    #[test]
    fn search_is_reproducible() {
        let h = cyclic_group(3);
        let a = search_galois_object_cocycles(&h, 2).unwrap();
        let b = search_galois_object_cocycles(&h, 2).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
    }
}
