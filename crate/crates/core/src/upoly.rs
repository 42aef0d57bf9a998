//! Dense univariate polynomial helpers over BigInt / BigRational.
//!
//! Internal plumbing for cyclotomic reduction, field inversion and the
//! univariate gcd. Polynomials are coefficient vectors, index = degree,
//! normalized so the last entry is nonzero (empty vector = zero).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub(crate) fn ztrim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub(crate) fn qtrim(mut c: Vec<BigRational>) -> Vec<BigRational> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

pub(crate) fn zdeg(c: &[BigInt]) -> usize {
    c.len().saturating_sub(1)
}

pub(crate) fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    ztrim(out)
}

/// Division with remainder by a monic divisor, exact over the integers.
pub(crate) fn zdivmod_monic(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    assert!(!b.is_empty() && b.last().unwrap().is_one(), "divisor must be monic");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), ztrim(rem));
    }
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - db] = c.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            rem[i - db + j] -= t;
        }
    }
    (ztrim(quot), ztrim(rem))
}

/// Exact trial division: returns the quotient iff `b` divides `a` over Z.
/// Divisor need not be monic.
pub(crate) fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!b.is_empty(), "division by zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b.last().unwrap();
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        let (q, r) = c.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        quot[i - db] = q.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &q * bj;
            rem[i - db + j] -= t;
        }
    }
    if ztrim(rem).is_empty() {
        Some(ztrim(quot))
    } else {
        None
    }
}

/// Content (gcd of coefficients), positive; zero polynomial has content 0.
pub(crate) fn zcontent(c: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for x in c {
        g = g.gcd(x);
    }
    g
}

pub(crate) fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    qtrim(out)
}

pub(crate) fn qadd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    qtrim(out)
}

pub(crate) fn qscale(a: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    if s.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * s).collect()
}

/// Division with remainder over Q; divisor arbitrary nonzero.
pub(crate) fn qdivmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return (Vec::new(), qtrim(rem));
    }
    let lead = b.last().unwrap();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / lead;
        quot[i - db] = q.clone();
        for (j, bj) in b.iter().enumerate() {
            let t = &q * bj;
            rem[i - db + j] -= t;
        }
    }
    (qtrim(quot), qtrim(rem))
}

/// Monic gcd over Q by the Euclidean algorithm.
pub(crate) fn qgcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = qtrim(a.to_vec());
    let mut y = qtrim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = qdivmod(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        x = qscale(&x, &lead.recip());
    }
    x
}

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
pub(crate) fn qxgcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = qtrim(a.to_vec());
    let mut r1 = qtrim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = Vec::new();
    let mut t0: Vec<BigRational> = Vec::new();
    let mut t1 = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = qdivmod(&r0, &r1);
        let s = qadd(&s0, &qscale(&qmul(&q, &s1), &-BigRational::one()));
        let t = qadd(&t0, &qscale(&qmul(&q, &t1), &-BigRational::one()));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        r0 = qscale(&r0, &inv);
        s0 = qscale(&s0, &inv);
        t0 = qscale(&t0, &inv);
    }
    (r0, s0, t0)
}

/// Primitive part with positive leading coefficient.
pub(crate) fn zprimitive(c: &[BigInt]) -> Vec<BigInt> {
    let c = ztrim(c.to_vec());
    if c.is_empty() {
        return c;
    }
    let mut g = zcontent(&c);
    if c.last().unwrap().is_negative() {
        g = -g;
    }
    c.iter().map(|x| x / &g).collect()
}

pub(crate) fn zto_q(c: &[BigInt]) -> Vec<BigRational> {
    c.iter().map(|x| BigRational::from(x.clone())).collect()
}

/// Clears denominators and strips content: the primitive integer polynomial
/// with positive leading coefficient proportional to the input.
pub(crate) fn qto_z_primitive(c: &[BigRational]) -> Vec<BigInt> {
    let c = qtrim(c.to_vec());
    if c.is_empty() {
        return Vec::new();
    }
    let mut lcm = BigInt::one();
    for x in &c {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    zprimitive(&ints)
}
