//! Integer Laurent polynomials Z[x_1^(+-1), ..., x_n^(+-1)]: the group ring
//! of Z^n and the coordinate ring of the character torus.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Character, Scalar};
use crate::upoly;

/// f = sum over a finite support in Z^n of integer coefficients times
/// monomials x^J. Zero coefficients are never stored; terms iterate in
/// lexicographic exponent order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: i64) -> LaurentPoly {
        LaurentPoly::from_terms(n, vec![(vec![0; n], BigInt::from(c))]).unwrap()
    }

    pub fn one(n: usize) -> LaurentPoly {
        LaurentPoly::constant(n, 1)
    }

    /// The coordinate monomial x_j (1-based index).
    pub fn var(n: usize, j: usize) -> LaurentPoly {
        assert!((1..=n).contains(&j), "variable index out of range");
        let mut e = vec![0i64; n];
        e[j - 1] = 1;
        LaurentPoly::from_terms(n, vec![(e, BigInt::one())]).unwrap()
    }

    pub fn monomial(n: usize, exps: Vec<i64>, coeff: i64) -> Result<LaurentPoly> {
        LaurentPoly::from_terms(n, vec![(exps, BigInt::from(coeff))])
    }

    pub fn from_terms(n: usize, raw: Vec<(Vec<i64>, BigInt)>) -> Result<LaurentPoly> {
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (e, c) in raw {
            if e.len() != n {
                return Err(Error::invalid(format!(
                    "exponent vector of length {} in a {}-variable polynomial",
                    e.len(),
                    n
                )));
            }
            let entry = terms.entry(e).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Support and coefficients in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }

    fn check_same_n(&self, other: &LaurentPoly) -> Result<()> {
        if self.n != other.n {
            return Err(Error::invalid(format!(
                "variable count mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_n(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { n: self.n, terms })
    }

    pub fn sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_same_n(other)?;
        let mut terms: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { n: self.n, terms })
    }

    /// Multiplies by the unit monomial x^J.
    pub fn shift(&self, exps: &[i64]) -> Result<LaurentPoly> {
        if exps.len() != self.n {
            return Err(Error::invalid("shift exponent vector has wrong length"));
        }
        Ok(LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(x, y)| x + y).collect(), c.clone()))
                .collect(),
        })
    }

    /// Evaluates at a character: sum of coeff * prod rho_j^(J_j), exact in
    /// the character's field (float if the character is float).
    pub fn eval(&self, chi: &Character) -> Result<Scalar> {
        if chi.n() != self.n {
            return Err(Error::invalid(format!(
                "evaluating a {}-variable polynomial at a {}-coordinate character",
                self.n,
                chi.n()
            )));
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = Scalar::from_bigint(c.clone());
            for (j, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    term = &term * &chi.coord(j).pow(exp)?;
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Dense univariate integer coefficients after stripping the monomial
    /// unit x^(min exponent). Second component is that minimum exponent.
    pub fn univariate_coeffs(&self) -> Result<(Vec<BigInt>, i64)> {
        if self.n != 1 {
            return Err(Error::invalid("univariate view needs n = 1"));
        }
        if self.is_zero() {
            return Ok((Vec::new(), 0));
        }
        let min = *self.terms.keys().next().unwrap().first().unwrap();
        let max = *self.terms.keys().next_back().unwrap().first().unwrap();
        let mut coeffs = vec![BigInt::zero(); (max - min) as usize + 1];
        for (e, c) in &self.terms {
            coeffs[(e[0] - min) as usize] = c.clone();
        }
        Ok((coeffs, min))
    }

    pub fn from_univariate_coeffs(coeffs: &[BigInt]) -> LaurentPoly {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i as i64], c.clone()))
            .collect();
        LaurentPoly::from_terms(1, terms).unwrap()
    }

    /// JSON form {"n": n, "terms": [{"e": [...], "c": coeff}, ...]}.
    /// Coefficients are emitted as JSON numbers when they fit in i64 and as
    /// decimal strings otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = match c.to_string().parse::<i64>() {
                    Ok(small) => serde_json::json!(small),
                    Err(_) => serde_json::json!(c.to_string()),
                };
                serde_json::json!({"e": e, "c": coeff})
            })
            .collect();
        serde_json::json!({"n": self.n, "terms": terms})
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LaurentPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::json("Laurent polynomial must be a JSON object"))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::json("Laurent polynomial needs a variable count n"))?
            as usize;
        let terms_json = obj
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::json("Laurent polynomial needs a terms array"))?;
        let mut raw = Vec::with_capacity(terms_json.len());
        for t in terms_json {
            let e = t
                .get("e")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::json("term needs an exponent array e"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::json("exponents must be integers")))
                .collect::<Result<Vec<i64>>>()?;
            let c = match t.get("c") {
                Some(serde_json::Value::Number(num)) => num
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| Error::json("coefficient number out of integer range"))?,
                Some(serde_json::Value::String(s)) => s
                    .parse::<BigInt>()
                    .map_err(|_| Error::json(format!("bad integer coefficient {s:?}")))?,
                _ => return Err(Error::json("term needs an integer coefficient c")),
            };
            raw.push((e, c));
        }
        LaurentPoly::from_terms(n, raw)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            }
            let abs = c.abs();
            let unit_exp = e.iter().all(|&x| x == 0);
            if !abs.is_one() || unit_exp {
                write!(f, "{abs}")?;
            }
            for (j, &exp) in e.iter().enumerate() {
                match exp {
                    0 => {}
                    1 => write!(f, "x{}", j + 1)?,
                    _ => write!(f, "x{}^{}", j + 1, exp)?,
                }
            }
        }
        Ok(())
    }
}

/// Gcd of univariate Laurent polynomials up to units: strips monomial
/// units, runs the Euclidean algorithm over Q, and returns the primitive
/// integer polynomial with positive leading coefficient. Its root set in
/// C* is the common root set of the inputs.
pub fn univariate_gcd(polys: &[LaurentPoly]) -> Result<LaurentPoly> {
    let mut acc: Vec<BigInt> = Vec::new();
    let mut saw_any = false;
    for f in polys {
        if f.n() != 1 {
            return Err(Error::invalid("univariate gcd needs n = 1 inputs"));
        }
        if f.is_zero() {
            continue;
        }
        saw_any = true;
        let (coeffs, _) = f.univariate_coeffs()?;
        if acc.is_empty() {
            acc = upoly::zprimitive(&coeffs);
        } else {
            let g = upoly::qgcd(&upoly::zto_q(&acc), &upoly::zto_q(&coeffs));
            acc = upoly::qto_z_primitive(&g);
        }
    }
    if !saw_any {
        return Err(Error::DegenerateInput(
            "all gcd inputs are zero; the common zero set is the whole torus".into(),
        ));
    }
    Ok(LaurentPoly::from_univariate_coeffs(&acc))
}
