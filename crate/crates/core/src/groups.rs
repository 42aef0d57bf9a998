//! Free-group word algebra and twisted first cohomology of finitely
//! presented groups, computed from the cocycle rule
//! tau(ab) = rho(a) tau(b) + tau(a) as a linear system over the character's
//! field. Together with the polynomial-indexed relators built here this
//! realizes the degree-one analogue of the space construction.

use num::ToPrimitive;

use crate::chain::{matrix_rank, Mat};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{coerce_to_field, Character, Scalar};

/// A freely reduced word in a free group: signed generator indices, e.g.
/// [1, 2, -1, -2] is g1 g2 g1^-1 g2^-1. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    letters: Vec<i64>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    /// Generator g_j (1-based); negative j gives its inverse.
    pub fn generator(j: i64) -> Result<Word> {
        if j == 0 {
            return Err(Error::invalid("generator index 0 is not allowed"));
        }
        Ok(Word { letters: vec![j] })
    }

    pub fn new(letters: Vec<i64>) -> Result<Word> {
        if letters.contains(&0) {
            return Err(Error::invalid("word letters must be nonzero signed indices"));
        }
        Ok(Word {
            letters: reduce(letters),
        })
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word {
            letters: reduce(letters),
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Conjugation by v: v w v^-1.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.mul(self).mul(&by.inverse())
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Exponent sum of each generator 1..=n, i.e. the image in Z^n.
    pub fn exponent_sums(&self, n: usize) -> Result<Vec<i64>> {
        let mut sums = vec![0i64; n];
        for &l in &self.letters {
            let j = l.unsigned_abs() as usize;
            if j == 0 || j > n {
                return Err(Error::invalid(format!(
                    "letter {l} outside the generator range 1..={n}"
                )));
            }
            sums[j - 1] += l.signum();
        }
        Ok(sums)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.letters)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Word> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::json("word must be an array of signed integers"))?;
        let letters = arr
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| Error::json("word letters must be integers")))
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

fn reduce(letters: Vec<i64>) -> Vec<i64> {
    let mut stack: Vec<i64> = Vec::with_capacity(letters.len());
    for l in letters {
        if stack.last().is_some_and(|&top| top == -l) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack
}

/// The commutator g_a g_b g_a^-1 g_b^-1 of two distinct generators.
/// Swapping a and b yields the inverse word.
pub fn generator_commutator(a: usize, b: usize) -> Result<Word> {
    if a == 0 || b == 0 {
        return Err(Error::invalid("generator indices are 1-based"));
    }
    if a == b {
        return Err(Error::invalid("commutator needs two distinct generators"));
    }
    let (a, b) = (a as i64, b as i64);
    Word::new(vec![a, b, -a, -b])
}

fn monomial_word(exps: &[i64]) -> Word {
    let mut letters = Vec::new();
    for (j, &e) in exps.iter().enumerate() {
        let sign = e.signum();
        for _ in 0..e.unsigned_abs() {
            letters.push(sign * (j as i64 + 1));
        }
    }
    Word::new(letters).expect("letters are nonzero")
}

/// The relator word realizing f times the (a, b) commutator class: the
/// product over the support of f, leading exponent first, of the conjugated
/// commutator (w_J gamma w_J^-1) raised to the coefficient. Any factor
/// order gives the same cocycle functional; one is fixed so serialized
/// output is deterministic.
pub fn relator_from_poly(f: &LaurentPoly, a: usize, b: usize) -> Result<Word> {
    let gamma = generator_commutator(a, b)?;
    if let Some(bad) = [a, b].iter().find(|&&j| j > f.n()) {
        return Err(Error::invalid(format!(
            "generator index {bad} outside the {}-generator group",
            f.n()
        )));
    }
    let mut out = Word::identity();
    for (exps, coeff) in f.terms().collect::<Vec<_>>().into_iter().rev() {
        let c = coeff.to_i64().ok_or_else(|| {
            Error::invalid("coefficient too large to unroll into a relator word")
        })?;
        let conjugated = gamma.conjugate(&monomial_word(exps));
        out = out.mul(&conjugated.pow(c));
    }
    Ok(out)
}

/// A finite presentation with generators g_1..g_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(n: usize, relators: Vec<Word>) -> Result<Presentation> {
        if n == 0 {
            return Err(Error::invalid("presentation needs at least one generator"));
        }
        for w in &relators {
            w.exponent_sums(n)?; // validates letter range
        }
        Ok(Presentation { n, relators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// JSON form {"n":..., "relators":[[signed letters], ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "relators": self.relators.iter().map(Word::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Presentation> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::json("presentation must be a JSON object"))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::json("presentation needs a generator count n"))?
            as usize;
        let relators = obj
            .get("relators")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::json("presentation needs a relators array"))?
            .iter()
            .map(Word::from_json)
            .collect::<Result<Vec<_>>>()?;
        Presentation::new(n, relators)
    }
}

/// The group with one relator per polynomial and unordered generator pair:
/// relator_from_poly(f_i, a, b) for 1 <= a < b <= n. Pairs with a > b are
/// redundant since swapping inverts the commutator.
pub fn build_group(n: usize, polys: &[LaurentPoly]) -> Result<Presentation> {
    if polys.iter().any(|f| f.n() != n) {
        return Err(Error::invalid("polynomial variable count must equal n"));
    }
    let mut relators = Vec::new();
    for f in polys {
        for a in 1..=n {
            for b in a + 1..=n {
                relators.push(relator_from_poly(f, a, b)?);
            }
        }
    }
    Presentation::new(n, relators)
}

/// Extends a generator assignment tau along the word by the cocycle rule
/// tau(ab) = rho(a) tau(b) + tau(a), with tau(g^-1) = -rho(g)^-1 tau(g).
pub fn cocycle_extend(word: &Word, tau: &[Scalar], chi: &Character) -> Result<Scalar> {
    if tau.len() != chi.n() {
        return Err(Error::invalid("assignment length must match character rank"));
    }
    let mut acc = Scalar::zero();
    let mut prefix = Scalar::one();
    for &l in word.letters() {
        let j = l.unsigned_abs() as usize;
        if j == 0 || j > chi.n() {
            return Err(Error::invalid(format!(
                "letter {l} outside the generator range 1..={}",
                chi.n()
            )));
        }
        let rho = chi.coord(j - 1);
        if l > 0 {
            acc = &acc + &(&prefix * &tau[j - 1]);
            prefix = &prefix * rho;
        } else {
            let rho_inv = rho.inverse()?;
            acc = &acc - &(&(&prefix * &rho_inv) * &tau[j - 1]);
            prefix = &prefix * &rho_inv;
        }
    }
    Ok(acc)
}

/// Coefficient row of the linear functional tau -> cocycle_extend(word):
/// entry j is the coefficient of tau_j.
pub fn cocycle_row(word: &Word, chi: &Character) -> Result<Vec<Scalar>> {
    let n = chi.n();
    let mut row = vec![Scalar::zero(); n];
    let mut prefix = Scalar::one();
    for &l in word.letters() {
        let j = l.unsigned_abs() as usize;
        if j == 0 || j > n {
            return Err(Error::invalid(format!(
                "letter {l} outside the generator range 1..={n}"
            )));
        }
        let rho = chi.coord(j - 1);
        if l > 0 {
            row[j - 1] = &row[j - 1] + &prefix;
            prefix = &prefix * rho;
        } else {
            let rho_inv = rho.inverse()?;
            row[j - 1] = &row[j - 1] - &(&prefix * &rho_inv);
            prefix = &prefix * &rho_inv;
        }
    }
    Ok(row)
}

/// The value rho(word): the character applied to the word's abelianization.
pub fn character_value(word: &Word, chi: &Character) -> Result<Scalar> {
    let sums = word.exponent_sums(chi.n())?;
    let mut acc = Scalar::one();
    for (j, &s) in sums.iter().enumerate() {
        if s != 0 {
            acc = &acc * &chi.coord(j).pow(s)?;
        }
    }
    Ok(acc)
}

/// Cocycle and coboundary dimensions at one character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CocycleReport {
    pub dim_z1: usize,
    pub dim_b1: usize,
    pub dim_h1: usize,
}

/// Dimensions of Z^1, B^1 and H^1 of the presented group at the character.
///
/// The cocycle constraints are one row per relator; dim Z^1 = n - rank.
/// B^1 is spanned by the single coboundary tau(a) = rho(a) c - c, which is
/// zero exactly at the trivial character, so dim B^1 is 0 or 1 by formula.
/// Every relator must satisfy rho(relator) = 1 (automatic for relators in
/// the commutator subgroup); otherwise the character does not descend to
/// the presented group and an error is returned.
pub fn h1_dims(pres: &Presentation, chi: &Character) -> Result<CocycleReport> {
    if chi.n() != pres.n() {
        return Err(Error::invalid("character rank must match generator count"));
    }
    for (idx, rel) in pres.relators().iter().enumerate() {
        let sums = rel.exponent_sums(pres.n())?;
        if sums.iter().all(|&s| s == 0) {
            continue; // lands in the commutator subgroup, rho(rel) = 1 identically
        }
        let v = character_value(rel, chi)?;
        let ok = if v.is_float() {
            (v.to_complex() - num::complex::Complex64::new(1.0, 0.0)).norm() <= 1e-9
        } else {
            v.is_one()
        };
        if !ok {
            return Err(Error::InconsistentCharacter { relator: idx });
        }
    }
    let field = chi.field();
    let rows = pres
        .relators()
        .iter()
        .map(|rel| {
            cocycle_row(rel, chi)?
                .iter()
                .map(|s| coerce_to_field(s, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mat = Mat::from_rows(rows, pres.n())?;
    let rank = if mat.rows() == 0 { 0 } else { matrix_rank(&mat)? };
    let dim_z1 = pres.n() - rank;
    let dim_b1 = if chi.is_trivial() { 0 } else { 1 };
    let dim_h1 = dim_z1
        .checked_sub(dim_b1)
        .ok_or_else(|| Error::Arithmetic("coboundary escaped the cocycle space".into()))?;
    Ok(CocycleReport {
        dim_z1,
        dim_b1,
        dim_h1,
    })
}
