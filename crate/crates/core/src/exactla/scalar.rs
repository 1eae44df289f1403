//! Exact scalars over the rationals and cyclotomic fields.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest cyclotomic order with a precomputed minimal polynomial.
pub const MAX_CYCLOTOMIC_ORDER: u32 = 64;

/// Ground field of a document or computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// ℚ(ζₙ) with ζₙ a primitive n-th root of unity.
    Cyclotomic(u32),
}

impl Field {
    pub fn parse(text: &str) -> Option<Field> {
        let text = text.trim();
        if text == "rational" {
            return Some(Field::Rational);
        }
        let n: u32 = text.strip_prefix("cyclotomic:")?.trim().parse().ok()?;
        if n == 0 || n > MAX_CYCLOTOMIC_ORDER {
            return None;
        }
        Some(Field::Cyclotomic(n))
    }

    /// The order used for arithmetic, or `None` when the field is ℚ.
    fn order(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Cyclotomic(n) if totient(n) <= 1 => None,
            Field::Cyclotomic(n) => Some(n),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Cyclotomic(n) => write!(f, "cyclotomic:{n}"),
        }
    }
}

/// An exact field element. Cyclotomic values whose reduced polynomial is
/// constant are always stored as `Rat`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Cyc { order: u32, coeffs: Vec<BigRational> },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty scalar")]
    Empty,
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("`z` is not available over the rationals")]
    NoRootOfUnity,
    #[error("unexpected `{0}`")]
    Unexpected(String),
}

fn totient(n: u32) -> usize {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count()
}

fn cyclotomic_table() -> &'static Vec<Vec<i64>> {
    static TABLE: OnceLock<Vec<Vec<i64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: Vec<Vec<i64>> = vec![Vec::new(); MAX_CYCLOTOMIC_ORDER as usize + 1];
        for n in 1..=MAX_CYCLOTOMIC_ORDER as usize {
            // x^n - 1 divided by every Φ_d with d | n, d < n.
            let mut num = vec![0i64; n + 1];
            num[0] = -1;
            num[n] = 1;
            for d in 1..n {
                if n % d == 0 {
                    num = int_poly_div_exact(&num, &table[d]);
                }
            }
            table[n] = num;
        }
        table
    })
}

fn int_poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> &'static [i64] {
    assert!(
        (1..=MAX_CYCLOTOMIC_ORDER).contains(&n),
        "cyclotomic order {n} out of range"
    );
    &cyclotomic_table()[n as usize]
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn reduce_mod(order: u32, mut p: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(order);
    let deg = phi.len() - 1;
    trim(&mut p);
    while p.len() > deg {
        let top = p.len() - 1;
        let c = p[top].clone();
        for (i, &a) in phi.iter().enumerate() {
            if a != 0 {
                p[top - deg + i] -= &c * q(a);
            }
        }
        trim(&mut p);
    }
    p
}

// --- small polynomial helpers over ℚ (used by the inverse) ---

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rat(BigRational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::Rat(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar::Rat(r)
    }

    /// ζₙ^k in ℚ(ζₙ).
    pub fn root_of_unity(order: u32, k: i64) -> Scalar {
        let field = Field::Cyclotomic(order);
        let Some(n) = field.order() else {
            // ℚ(ζ₁) = ℚ(ζ₂) = ℚ
            let sign = if order == 2 && k.rem_euclid(2) == 1 { -1 } else { 1 };
            return Scalar::int(sign);
        };
        let k = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        Scalar::from_poly(n, coeffs)
    }

    fn from_poly(order: u32, coeffs: Vec<BigRational>) -> Scalar {
        let mut coeffs = reduce_mod(order, coeffs);
        match coeffs.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rat(coeffs.pop().unwrap()),
            _ => Scalar::Cyc { order, coeffs },
        }
    }

    fn as_poly(&self) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) if r.is_zero() => Vec::new(),
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Cyc { coeffs, .. } => coeffs.clone(),
        }
    }

    fn common_order(&self, other: &Scalar) -> Option<u32> {
        match (self, other) {
            (Scalar::Cyc { order: a, .. }, Scalar::Cyc { order: b, .. }) => {
                assert_eq!(a, b, "mixing cyclotomic orders {a} and {b}");
                Some(*a)
            }
            (Scalar::Cyc { order, .. }, _) | (_, Scalar::Cyc { order, .. }) => Some(*order),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Cyc { .. } => None,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) if r.is_zero() => None,
            Scalar::Rat(r) => Some(Scalar::Rat(r.recip())),
            Scalar::Cyc { order, coeffs } => {
                // extended Euclid: a·s + Φ·t = g, g a nonzero constant
                let phi: Vec<BigRational> =
                    cyclotomic_polynomial(*order).iter().map(|&c| q(c)).collect();
                let (mut r0, mut r1) = (phi, coeffs.clone());
                let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
                while r1.len() > 1 {
                    let (quo, rem) = poly_divrem(&r0, &r1);
                    let s2 = poly_sub(&s0, &poly_mul(&quo, &s1));
                    r0 = std::mem::replace(&mut r1, rem);
                    s0 = std::mem::replace(&mut s1, s2);
                }
                let g = r1.first()?.clone();
                let inv_g = g.recip();
                let s: Vec<BigRational> = s1.into_iter().map(|c| c * &inv_g).collect();
                Some(Scalar::from_poly(*order, s))
            }
        }
    }

    /// Parse the text syntax: `p/q`, `n`, or a polynomial in `z` such as
    /// `1/2*z^3 - z + 2`.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, ScalarParseError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let order = field.order();
        let mut poly: Vec<BigRational> = Vec::new();
        let bytes = compact.as_bytes();
        let mut pos = 0;
        let mut first = true;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if !first {
                return Err(ScalarParseError::Unexpected(compact[pos..].to_string()));
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                pos += 1;
            }
            // a `-` directly after `^` is not a term separator
            while pos < bytes.len() && bytes[pos - 1] == b'^' {
                pos += 1;
                while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
                    pos += 1;
                }
            }
            let term = &compact[start..pos];
            let (coef, power) = parse_term(term, order)?;
            let (coef, power) = (coef * q(sign), power);
            if poly.len() <= power {
                poly.resize(power + 1, BigRational::zero());
            }
            poly[power] += coef;
        }
        Ok(match order {
            None => Scalar::Rat(poly.into_iter().next().unwrap_or_else(BigRational::zero)),
            Some(n) => Scalar::from_poly(n, poly),
        })
    }
}

fn parse_number(text: &str) -> Result<BigRational, ScalarParseError> {
    let bad = || ScalarParseError::BadNumber(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ScalarParseError::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

fn parse_term(term: &str, order: Option<u32>) -> Result<(BigRational, usize), ScalarParseError> {
    if term.is_empty() {
        return Err(ScalarParseError::Unexpected("dangling sign".into()));
    }
    let Some(zpos) = term.find('z') else {
        return Ok((parse_number(term)?, 0));
    };
    let Some(n) = order else {
        return Err(ScalarParseError::NoRootOfUnity);
    };
    let coef = match &term[..zpos] {
        "" => BigRational::one(),
        c => parse_number(c.strip_suffix('*').ok_or_else(|| {
            ScalarParseError::Unexpected(term.to_string())
        })?)?,
    };
    let power = match &term[zpos + 1..] {
        "" => 1i64,
        p => {
            let e = p
                .strip_prefix('^')
                .ok_or_else(|| ScalarParseError::Unexpected(term.to_string()))?;
            e.parse::<i64>().map_err(|_| ScalarParseError::BadNumber(e.to_string()))?
        }
    };
    Ok((coef, power.rem_euclid(n as i64) as usize))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc { coeffs, .. } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    let neg = c.is_negative();
                    let a = c.abs();
                    match (first, neg) {
                        (true, true) => write!(f, "-")?,
                        (true, false) => {}
                        (false, true) => write!(f, " - ")?,
                        (false, false) => write!(f, " + ")?,
                    }
                    first = false;
                    let zpart = match k {
                        0 => String::new(),
                        1 => "z".to_string(),
                        k => format!("z^{k}"),
                    };
                    if k == 0 {
                        write!(f, "{a}")?;
                    } else if a.is_one() {
                        write!(f, "{zpart}")?;
                    } else {
                        write!(f, "{a}*{zpart}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => {
                let order = self.common_order(rhs).unwrap();
                let (a, b) = (self.as_poly(), rhs.as_poly());
                let mut out = vec![BigRational::zero(); a.len().max(b.len())];
                for (i, c) in a.into_iter().enumerate() {
                    out[i] += c;
                }
                for (i, c) in b.into_iter().enumerate() {
                    out[i] += c;
                }
                Scalar::from_poly(order, out)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Cyc { order, coeffs } => Scalar::Cyc {
                order: *order,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => self + &(-rhs),
        }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Rat(a), Scalar::Cyc { order, coeffs })
            | (Scalar::Cyc { order, coeffs }, Scalar::Rat(a)) => {
                if a.is_zero() {
                    return Scalar::zero();
                }
                Scalar::Cyc { order: *order, coeffs: coeffs.iter().map(|c| c * a).collect() }
            }
            _ => {
                let order = self.common_order(rhs).unwrap();
                Scalar::from_poly(order, poly_mul(&self.as_poly(), &rhs.as_poly()))
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a += b;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rat(a), Scalar::Rat(b)) = (&mut *self, rhs) {
            *a -= b;
        } else {
            *self = &*self - rhs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials_small() {
        assert_eq!(cyclotomic_polynomial(1), &[-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), &[1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), &[1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), &[1, 0, -1, 0, 1]);
        for n in 1..=MAX_CYCLOTOMIC_ORDER {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn roots_of_unity_close_up() {
        for n in [3u32, 4, 5, 8, 12] {
            let z = Scalar::root_of_unity(n, 1);
            let mut p = Scalar::one();
            for _ in 0..n {
                p = &p * &z;
            }
            assert!(p.is_one(), "ζ_{n}^{n} = {p}");
        }
        let i = Scalar::root_of_unity(4, 1);
        assert_eq!(&i * &i, Scalar::int(-1));
    }

    #[test]
    fn inverse_in_cyclotomic_field() {
        let f = Field::Cyclotomic(5);
        let a = Scalar::parse("1/2*z^3 - z + 2", f).unwrap();
        let b = a.inv().unwrap();
        assert!((&a * &b).is_one());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let f = Field::Cyclotomic(8);
        for text in ["1/2*z^3 - z + 2", "-z", "3", "-7/3", "z^2 + 1"] {
            let a = Scalar::parse(text, f).unwrap();
            assert_eq!(a.to_string(), text);
            assert_eq!(Scalar::parse(&a.to_string(), f).unwrap(), a);
        }
        assert_eq!(Scalar::parse("z^4", f).unwrap(), Scalar::int(-1));
        assert_eq!(Scalar::parse("z^-1", Field::Cyclotomic(4)).unwrap(), Scalar::parse("-z", Field::Cyclotomic(4)).unwrap());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Scalar::parse("1/0", Field::Rational), Err(ScalarParseError::ZeroDenominator));
        assert_eq!(Scalar::parse("z", Field::Rational), Err(ScalarParseError::NoRootOfUnity));
        assert!(Scalar::parse("", Field::Rational).is_err());
        assert!(Scalar::parse("1+", Field::Rational).is_err());
        assert!(Scalar::parse("abc", Field::Rational).is_err());
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = Scalar::frac(2, -4);
        assert_eq!(a.to_string(), "-1/2");
        assert!((&a + &Scalar::frac(1, 2)).is_zero());
    }
}
