//! Exact scalars: rationals, cyclotomic field elements, and a float-complex
//! fallback, together with characters of the torus.
//!
//! A cyclotomic scalar of conductor `m` is an element of `Q[t]/Phi_m(t)` in
//! the power basis `1, t, ..., t^(phi(m)-1)`. The exact path is authoritative;
//! the float path exists as a numeric cross-check only.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::complex::Complex64;
use num::integer::lcm;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::upoly;

/// Euler's totient, by trial-division factorization.
pub fn euler_phi(mut m: u64) -> u64 {
    assert!(m >= 1);
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut pk = 1u64;
            while m.is_multiple_of(p) {
                m /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if m > 1 {
        phi *= m - 1;
    }
    phi
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The d-th cyclotomic polynomial Phi_d as a dense integer coefficient
/// vector (index = degree). Monic of degree phi(d).
///
/// Computed as (x^d - 1) / prod of Phi_e over proper divisors e of d,
/// memoized process-wide.
pub fn cyclotomic_polynomial(d: u64) -> Result<Vec<BigInt>> {
    if d == 0 {
        return Err(Error::invalid("cyclotomic polynomial index must be >= 1"));
    }
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&d) {
        return Ok(hit.clone());
    }
    let phi = if d == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^d - 1
        let mut num = vec![BigInt::zero(); d as usize + 1];
        num[0] = BigInt::from(-1);
        num[d as usize] = BigInt::one();
        for e in 1..d {
            if d.is_multiple_of(e) {
                let div = cyclotomic_polynomial(e)?;
                let (q, r) = upoly::zdivmod_monic(&num, &div);
                debug_assert!(r.is_empty());
                num = q;
            }
        }
        num
    };
    debug_assert_eq!(upoly::zdeg(&phi) as u64, euler_phi(d));
    cyclotomic_cache().lock().unwrap().insert(d, phi.clone());
    Ok(phi)
}

/// Descriptor of the coefficient field a batch of scalars lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Rational,
    /// Q(zeta_m) with m >= 2.
    Cyclotomic(u64),
    Float,
}

impl Field {
    pub fn cyclotomic(m: u64) -> Field {
        if m <= 1 {
            Field::Rational
        } else {
            Field::Cyclotomic(m)
        }
    }

    /// Conductor of the exact field (1 for the rationals).
    pub fn conductor(&self) -> Option<u64> {
        match self {
            Field::Rational => Some(1),
            Field::Cyclotomic(m) => Some(*m),
            Field::Float => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
            Field::Float => write!(f, "C (float)"),
        }
    }
}

/// An exact element of Q or Q(zeta_m), or a float-complex fallback value.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic { conductor: u64, coeffs: Vec<BigRational> },
    Complex(Complex64),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(v: i64) -> Scalar {
        Scalar::Rational(BigRational::from(BigInt::from(v)))
    }

    pub fn from_rational(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigint(v: BigInt) -> Scalar {
        Scalar::Rational(BigRational::from(v))
    }

    /// The canonical primitive m-th root of unity zeta_m, as an element of
    /// the conductor-m field.
    pub fn root_of_unity(m: u64) -> Result<Scalar> {
        if m == 0 {
            return Err(Error::invalid("root of unity order must be >= 1"));
        }
        // the residue of t in Q[t]/Phi_m
        let t = vec![BigRational::zero(), BigRational::one()];
        Ok(Scalar::cyclotomic_reduced(m, t))
    }

    /// Builds a conductor-m element from an arbitrary polynomial in zeta_m,
    /// reducing mod Phi_m, padding to exactly phi(m) entries, and demoting
    /// conductor 1 to a plain rational.
    pub(crate) fn cyclotomic_reduced(conductor: u64, poly: Vec<BigRational>) -> Scalar {
        assert!(conductor >= 1);
        let phi = cyclotomic_polynomial(conductor).expect("conductor >= 1");
        let phi_q = upoly::zto_q(&phi);
        let (_, mut rem) = upoly::qdivmod(&poly, &phi_q);
        if conductor == 1 {
            return Scalar::Rational(rem.pop().unwrap_or_else(BigRational::zero));
        }
        rem.resize(euler_phi(conductor) as usize, BigRational::zero());
        Scalar::Cyclotomic { conductor, coeffs: rem }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            Scalar::Complex(z) => z.norm_sqr() == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    pub fn is_float(&self) -> bool {
        matches!(self, Scalar::Complex(_))
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Cyclotomic { conductor, .. } => Field::cyclotomic(*conductor),
            Scalar::Complex(_) => Field::Float,
        }
    }

    /// Numeric value under zeta_m -> exp(2 pi i / m).
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Rational(r) => Complex64::new(ratio_to_f64(r), 0.0),
            Scalar::Cyclotomic { conductor, coeffs } => {
                let zeta = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / *conductor as f64);
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coeffs.iter().rev() {
                    acc = acc * zeta + Complex64::new(ratio_to_f64(c), 0.0);
                }
                acc
            }
            Scalar::Complex(z) => *z,
        }
    }

    /// Re-embeds an exact scalar into the conductor-m field along
    /// t -> t^(m / own_conductor). Requires own conductor | m.
    pub fn embed(&self, conductor: u64) -> Result<Scalar> {
        match self {
            Scalar::Complex(_) => Err(Error::UnsupportedRepresentation(
                "cannot embed a float scalar into a cyclotomic field".into(),
            )),
            Scalar::Rational(r) => {
                if conductor == 1 {
                    return Ok(self.clone());
                }
                let mut coeffs = vec![BigRational::zero(); euler_phi(conductor) as usize];
                coeffs[0] = r.clone();
                Ok(Scalar::Cyclotomic { conductor, coeffs })
            }
            Scalar::Cyclotomic { conductor: m, coeffs } => {
                if !conductor.is_multiple_of(*m) {
                    return Err(Error::invalid(format!(
                        "cannot embed conductor {m} into non-multiple conductor {conductor}"
                    )));
                }
                let stride = (conductor / m) as usize;
                let mut poly = vec![BigRational::zero(); (coeffs.len() - 1) * stride + 1];
                for (i, c) in coeffs.iter().enumerate() {
                    poly[i * stride] = c.clone();
                }
                Ok(Scalar::cyclotomic_reduced(conductor, poly))
            }
        }
    }

    fn add_impl(&self, rhs: &Scalar) -> Scalar {
        match unify_pair(self, rhs) {
            Unified::Float(a, b) => Scalar::Complex(a + b),
            Unified::Rational(a, b) => Scalar::Rational(a + b),
            Unified::Cyclotomic(m, a, b) => Scalar::cyclotomic_reduced(m, upoly::qadd(&a, &b)),
        }
    }

    fn mul_impl(&self, rhs: &Scalar) -> Scalar {
        match unify_pair(self, rhs) {
            Unified::Float(a, b) => Scalar::Complex(a * b),
            Unified::Rational(a, b) => Scalar::Rational(a * b),
            Unified::Cyclotomic(m, a, b) => Scalar::cyclotomic_reduced(m, upoly::qmul(&a, &b)),
        }
    }

    /// Multiplicative inverse; division by zero is an arithmetic error.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Complex(z) => Ok(Scalar::Complex(z.inv())),
            Scalar::Cyclotomic { conductor, coeffs } => {
                let phi = upoly::zto_q(&cyclotomic_polynomial(*conductor)?);
                let (g, u, _) = upoly::qxgcd(coeffs, &phi);
                // Phi_m is irreducible over Q, so a nonzero residue is a unit.
                debug_assert_eq!(g, vec![BigRational::one()]);
                Ok(Scalar::cyclotomic_reduced(*conductor, u))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul_impl(&rhs.inverse()?))
    }

    /// Integer power with negative exponents allowed for invertible scalars.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        if exp < 0 {
            return self.inverse()?.pow(-exp);
        }
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        Ok(acc)
    }

    /// Formats the rational value as "p" or "p/q"; errors on non-rational.
    pub fn rational_string(&self) -> Result<String> {
        match self {
            Scalar::Rational(r) => Ok(ratio_string(r)),
            _ => Err(Error::UnsupportedRepresentation("not a rational scalar".into())),
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::json(format!("bad rational numerator {num:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::json(format!("bad rational denominator {den:?}")))?;
    if d.is_zero() {
        return Err(Error::json("zero denominator in rational"));
    }
    Ok(BigRational::new(n, d))
}

enum Unified {
    Rational(BigRational, BigRational),
    Cyclotomic(u64, Vec<BigRational>, Vec<BigRational>),
    Float(Complex64, Complex64),
}

fn unify_pair(a: &Scalar, b: &Scalar) -> Unified {
    if a.is_float() || b.is_float() {
        return Unified::Float(a.to_complex(), b.to_complex());
    }
    let m = lcm(
        a.field().conductor().unwrap(),
        b.field().conductor().unwrap(),
    );
    if m == 1 {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Unified::Rational(x.clone(), y.clone()),
            _ => unreachable!("conductor 1 scalars are rational"),
        }
    } else {
        let ea = a.embed(m).expect("conductor divides lcm");
        let eb = b.embed(m).expect("conductor divides lcm");
        match (ea, eb) {
            (
                Scalar::Cyclotomic { coeffs: ca, .. },
                Scalar::Cyclotomic { coeffs: cb, .. },
            ) => Unified::Cyclotomic(m, ca, cb),
            _ => unreachable!("embedding into conductor >= 2 is cyclotomic"),
        }
    }
}

/// Re-embeds a batch of exact scalars into their smallest common field
/// (conductor = lcm of member conductors). Floats are rejected; the float
/// path bypasses unification entirely.
pub fn unify(scalars: &[Scalar]) -> Result<(Field, Vec<Scalar>)> {
    let mut m = 1u64;
    for s in scalars {
        match s.field().conductor() {
            Some(c) => m = lcm(m, c),
            None => {
                return Err(Error::UnsupportedRepresentation(
                    "unify is defined on exact scalars only".into(),
                ))
            }
        }
    }
    let embedded = scalars
        .iter()
        .map(|s| s.embed(m))
        .collect::<Result<Vec<_>>>()?;
    Ok((Field::cyclotomic(m), embedded))
}

/// Coerces a scalar into the given field: float fields take the numeric
/// value, exact fields re-embed (the scalar's conductor must divide the
/// target's).
pub fn coerce_to_field(s: &Scalar, field: Field) -> Result<Scalar> {
    match field {
        Field::Float => Ok(Scalar::Complex(s.to_complex())),
        Field::Rational => {
            if s.is_float() {
                Err(Error::UnsupportedRepresentation(
                    "cannot coerce a float scalar into an exact field".into(),
                ))
            } else {
                s.embed(1)
            }
        }
        Field::Cyclotomic(m) => {
            if s.is_float() {
                Err(Error::UnsupportedRepresentation(
                    "cannot coerce a float scalar into an exact field".into(),
                ))
            } else {
                s.embed(m)
            }
        }
    }
}

/// Least N with s^N = 1 if s is a root of unity, else None. In the
/// conductor-m field every root of unity has order dividing lcm(2, m), so
/// only divisors of that bound are tested.
pub fn root_of_unity_order(s: &Scalar) -> Result<Option<u64>> {
    if s.is_float() {
        return Err(Error::UnsupportedRepresentation(
            "root-of-unity detection needs an exact scalar".into(),
        ));
    }
    if s.is_zero() {
        return Err(Error::invalid("zero is not a unit"));
    }
    let bound = lcm(2, s.field().conductor().unwrap());
    let mut divisors: Vec<u64> = (1..=bound).filter(|d| bound.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    for d in divisors {
        if s.pow(d as i64)?.is_one() {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Complex(a), Scalar::Complex(b)) => a == b,
            (Scalar::Complex(_), _) | (_, Scalar::Complex(_)) => false,
            _ => match unify_pair(self, other) {
                Unified::Rational(a, b) => a == b,
                Unified::Cyclotomic(_, a, b) => a == b,
                Unified::Float(..) => unreachable!(),
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", ratio_string(r)),
            Scalar::Cyclotomic { conductor, coeffs } => {
                write!(f, "zeta{}[", conductor)?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", ratio_string(c))?;
                }
                write!(f, "]")
            }
            Scalar::Complex(z) => write!(f, "({}+{}i)", z.re, z.im),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$impl_fn(rhs)
            }
        }
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$impl_fn(&rhs)
            }
        }
    };
}

impl Scalar {
    fn sub_impl(&self, rhs: &Scalar) -> Scalar {
        self.add_impl(&rhs.neg_impl())
    }

    fn neg_impl(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r.clone()),
            Scalar::Cyclotomic { conductor, coeffs } => Scalar::Cyclotomic {
                conductor: *conductor,
                coeffs: coeffs.iter().map(|c| -c.clone()).collect(),
            },
            Scalar::Complex(z) => Scalar::Complex(-z),
        }
    }
}

scalar_binop!(Add, add, add_impl);
scalar_binop!(Sub, sub, sub_impl);
scalar_binop!(Mul, mul, mul_impl);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_impl()
    }
}

/// A point of the character torus (C*)^n: n invertible scalars, unified
/// into one common field at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    coords: Vec<Scalar>,
}

impl Character {
    pub fn new(coords: Vec<Scalar>) -> Result<Character> {
        if coords.is_empty() {
            return Err(Error::invalid("a character needs at least one coordinate"));
        }
        if coords.iter().any(|c| c.is_zero()) {
            return Err(Error::invalid("character coordinates must be nonzero"));
        }
        if coords.iter().any(|c| c.is_float()) {
            if coords.iter().all(|c| c.is_float()) {
                return Ok(Character { coords });
            }
            return Err(Error::invalid(
                "character coordinates must be all exact or all float",
            ));
        }
        let (_, coords) = unify(&coords)?;
        Ok(Character { coords })
    }

    /// The trivial character: every coordinate 1.
    pub fn trivial(n: usize) -> Character {
        Character {
            coords: vec![Scalar::one(); n],
        }
    }

    pub fn from_ints(coords: &[i64]) -> Result<Character> {
        Character::new(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn coord(&self, j: usize) -> &Scalar {
        &self.coords[j]
    }

    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(|c| c.is_one())
    }

    pub fn is_float(&self) -> bool {
        self.coords.iter().any(|c| c.is_float())
    }

    /// The common field all coordinates live in.
    pub fn field(&self) -> Field {
        self.coords
            .iter()
            .map(Scalar::field)
            .fold(Field::Rational, |acc, f| match (acc, f) {
                (Field::Float, _) | (_, Field::Float) => Field::Float,
                (Field::Rational, g) => g,
                (g, Field::Rational) => g,
                (Field::Cyclotomic(a), Field::Cyclotomic(b)) => Field::Cyclotomic(lcm(a, b)),
            })
    }

    /// Numeric copy of the character for the float cross-check path.
    pub fn to_float(&self) -> Character {
        Character {
            coords: self
                .coords
                .iter()
                .map(|c| Scalar::Complex(c.to_complex()))
                .collect(),
        }
    }

    /// JSON form {"conductor": m, "coords": [[rational strings], ...]}.
    /// Exact characters only.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let conductor = match self.field() {
            Field::Float => {
                return Err(Error::UnsupportedRepresentation(
                    "float characters have no JSON form".into(),
                ))
            }
            f => f.conductor().unwrap(),
        };
        let width = euler_phi(conductor) as usize;
        let mut coords = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            let vec = match c {
                Scalar::Rational(r) => {
                    let mut v = vec![BigRational::zero(); width];
                    v[0] = r.clone();
                    v
                }
                Scalar::Cyclotomic { coeffs, .. } => coeffs.clone(),
                Scalar::Complex(_) => unreachable!(),
            };
            coords.push(serde_json::Value::Array(
                vec.iter()
                    .map(|r| serde_json::Value::String(ratio_string(r)))
                    .collect(),
            ));
        }
        Ok(serde_json::json!({
            "conductor": conductor,
            "coords": coords,
        }))
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Character> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::json("character must be a JSON object"))?;
        let conductor = obj
            .get("conductor")
            .and_then(|c| c.as_u64())
            .ok_or_else(|| Error::json("character needs a positive integer conductor"))?;
        if conductor == 0 {
            return Err(Error::json("character conductor must be >= 1"));
        }
        let width = euler_phi(conductor) as usize;
        let coords_json = obj
            .get("coords")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::json("character needs a coords array"))?;
        let mut coords = Vec::with_capacity(coords_json.len());
        for cj in coords_json {
            let arr = cj
                .as_array()
                .ok_or_else(|| Error::json("each coordinate must be an array of rationals"))?;
            if arr.len() != width {
                return Err(Error::json(format!(
                    "coordinate vector has {} entries, expected phi({}) = {}",
                    arr.len(),
                    conductor,
                    width
                )));
            }
            let mut vec = Vec::with_capacity(width);
            for e in arr {
                let s = e
                    .as_str()
                    .ok_or_else(|| Error::json("rational entries must be strings"))?;
                vec.push(parse_ratio(s)?);
            }
            coords.push(Scalar::cyclotomic_reduced(conductor, vec));
        }
        Character::new(coords)
    }

    /// Stable key used to sort report records.
    pub fn sort_key(&self) -> String {
        match self.to_json() {
            Ok(v) => v.to_string(),
            Err(_) => format!("{self}"),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zeta(m: u64) -> Scalar {
        Scalar::root_of_unity(m).unwrap()
    }

    fn zints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials_small_indices() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), zints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2).unwrap(), zints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(3).unwrap(), zints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), zints(&[1, 0, 1]));
        // t^2 - t + 1, cross-checked by expanding Phi1*Phi2*Phi3*Phi6 = t^6 - 1
        let phi6 = cyclotomic_polynomial(6).unwrap();
        assert_eq!(phi6, zints(&[1, -1, 1]));
        let mut prod = cyclotomic_polynomial(1).unwrap();
        for d in [2u64, 3, 6] {
            prod = upoly::zmul(&prod, &cyclotomic_polynomial(d).unwrap());
        }
        let mut x6m1 = vec![BigInt::zero(); 7];
        x6m1[0] = BigInt::from(-1);
        x6m1[6] = BigInt::one();
        assert_eq!(prod, x6m1);
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn rational_addition() {
        let a = Scalar::from_rational(1, 2);
        let b = Scalar::from_rational(1, 3);
        assert_eq!(&a + &b, Scalar::from_rational(5, 6));
    }

    #[test]
    fn zeta4_squares_to_minus_one_in_its_own_field() {
        let i = zeta(4);
        let sq = &i * &i;
        match &sq {
            Scalar::Cyclotomic { conductor, coeffs } => {
                assert_eq!(*conductor, 4);
                assert_eq!(coeffs.len(), 2);
            }
            other => panic!("expected a conductor-4 element, got {other:?}"),
        }
        assert_eq!(sq, Scalar::from_int(-1));
    }

    #[test]
    fn mixed_conductor_product_lands_in_lcm_field() {
        // zeta3 * zeta4 = zeta12^7 = -zeta12 (reduction mod Phi_12 done by hand)
        let p = &zeta(3) * &zeta(4);
        assert_eq!(p.field(), Field::Cyclotomic(12));
        assert_eq!(p, -zeta(12));
    }

    #[test]
    fn unify_examples() {
        let (f, _) = unify(&[Scalar::from_int(2), Scalar::from_rational(1, 3)]).unwrap();
        assert_eq!(f, Field::Rational);
        let (f, _) = unify(&[zeta(4), zeta(6)]).unwrap();
        assert_eq!(f, Field::Cyclotomic(12));
        let (f, vs) = unify(&[zeta(2), Scalar::from_int(5)]).unwrap();
        assert_eq!(f, Field::Cyclotomic(2));
        assert_eq!(vs[1], Scalar::from_int(5));
        assert!(unify(&[Scalar::Complex(Complex64::new(1.0, 0.0))]).is_err());
    }

    #[test]
    fn embedding_preserves_numeric_value() {
        let samples = [
            zeta(3),
            zeta(4),
            &(&zeta(6) + &Scalar::from_rational(2, 7)) * &zeta(4),
            Scalar::from_rational(-3, 5),
        ];
        let (_, unified) = unify(&samples).unwrap();
        for (orig, emb) in samples.iter().zip(&unified) {
            let d = orig.to_complex() - emb.to_complex();
            assert!(d.norm() < 1e-9, "embedding moved the value by {}", d.norm());
        }
    }

    #[test]
    fn division_and_inverse() {
        let a = zeta(4);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        let q = Scalar::from_int(3)
            .checked_div(&Scalar::from_int(6))
            .unwrap();
        assert_eq!(q, Scalar::from_rational(1, 2));
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn float_contaminates() {
        let f = Scalar::Complex(Complex64::new(0.5, 0.0));
        let r = &f + &Scalar::from_rational(1, 2);
        assert!(r.is_float());
        assert!((r.to_complex() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn root_of_unity_orders() {
        assert_eq!(root_of_unity_order(&Scalar::from_int(-1)).unwrap(), Some(2));
        assert_eq!(root_of_unity_order(&Scalar::from_int(2)).unwrap(), None);
        assert_eq!(root_of_unity_order(&zeta(6)).unwrap(), Some(6));
        assert_eq!(root_of_unity_order(&zeta(12)).unwrap(), Some(12));
        assert_eq!(root_of_unity_order(&(-zeta(3))).unwrap(), Some(6));
        assert!(root_of_unity_order(&Scalar::Complex(Complex64::new(1.0, 0.0))).is_err());
    }

    #[test]
    fn order_means_exact_power_identity() {
        for s in [zeta(6), zeta(8), -zeta(5), Scalar::from_int(-1)] {
            let n = root_of_unity_order(&s).unwrap().unwrap();
            assert!(s.pow(n as i64).unwrap().is_one());
            for d in 1..n {
                if n.is_multiple_of(d) {
                    assert!(!s.pow(d as i64).unwrap().is_one());
                }
            }
        }
    }

    #[test]
    fn field_axioms_spot_checks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool = |rng: &mut ChaCha8Rng| -> Scalar {
            match rng.gen_range(0..4) {
                0 => Scalar::from_int(rng.gen_range(-5..=5)),
                1 => Scalar::from_rational(rng.gen_range(-5..=5), rng.gen_range(1..=5)),
                2 => &zeta(4) + &Scalar::from_int(rng.gen_range(-2..=2)),
                _ => &zeta(6) * &Scalar::from_rational(rng.gen_range(-3..=3).max(1), 2),
            }
        };
        for _ in 0..60 {
            let (a, b, c) = (pool(&mut rng), pool(&mut rng), pool(&mut rng));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn character_construction_and_json() {
        let chi = Character::new(vec![Scalar::from_int(2), zeta(4)]).unwrap();
        assert_eq!(chi.field(), Field::Cyclotomic(4));
        assert!(!chi.is_trivial());
        let j = chi.to_json().unwrap();
        let back = Character::from_json(&j).unwrap();
        assert_eq!(back, chi);
        assert_eq!(j["conductor"], 4);

        let triv = Character::trivial(3);
        assert!(triv.is_trivial());
        let j = triv.to_json().unwrap();
        assert_eq!(j["conductor"], 1);
        assert_eq!(Character::from_json(&j).unwrap(), triv);

        assert!(Character::new(vec![Scalar::zero()]).is_err());
        assert!(Character::new(vec![]).is_err());
    }

    #[test]
    fn character_json_rejects_bad_shapes() {
        let bad = serde_json::json!({"conductor": 4, "coords": [["1"]]});
        assert!(Character::from_json(&bad).is_err());
        let bad = serde_json::json!({"conductor": 0, "coords": []});
        assert!(Character::from_json(&bad).is_err());
    }
}
