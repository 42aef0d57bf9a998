//! Decides, where tractable, whether the defining locus is a finite union
//! of torsion translates of subtori. For a univariate system this reduces
//! to a complete cyclotomic factorization certificate: the subvarieties of
//! C* of that shape are exactly the empty set, C* itself, and finite sets
//! of roots of unity. Positive-dimensional multivariate loci are refused
//! rather than guessed.

use num::bigint::BigInt;
use num::Signed;

use crate::error::{Error, Result};
use crate::laurent::{univariate_gcd, LaurentPoly};
use crate::scalar::{cyclotomic_polynomial, euler_phi, root_of_unity_order, Character};
use crate::upoly;

/// Complete factorization of a univariate integer Laurent polynomial into a
/// monomial unit, a signed content, cyclotomic factors, and a residual with
/// no root of unity among its roots:
/// input = x^unit_exp * content * prod Phi_d^mult * residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicCertificate {
    unit_exp: i64,
    content: BigInt,
    factors: Vec<(u64, u32)>,
    residual: Vec<BigInt>,
}

impl CyclotomicCertificate {
    pub fn unit_exp(&self) -> i64 {
        self.unit_exp
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Dense coefficients of the residual, primitive with positive leading
    /// coefficient.
    pub fn residual(&self) -> &[BigInt] {
        &self.residual
    }

    /// True iff the locus of the certified polynomial in C* consists of
    /// roots of unity only (possibly none).
    pub fn is_torsion(&self) -> bool {
        self.residual.len() <= 1
    }

    /// Re-expands the certificate; equality with the certified input is the
    /// soundness check.
    pub fn expand(&self) -> Result<LaurentPoly> {
        let mut coeffs = vec![self.content.clone()];
        for &(d, mult) in &self.factors {
            let phi = cyclotomic_polynomial(d)?;
            for _ in 0..mult {
                coeffs = upoly::zmul(&coeffs, &phi);
            }
        }
        coeffs = upoly::zmul(&coeffs, &self.residual);
        LaurentPoly::from_univariate_coeffs(&coeffs).shift(&[self.unit_exp])
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unit_exp": self.unit_exp,
            "content": self.content.to_string(),
            "factors": self.factors.iter().map(|&(d, m)| serde_json::json!([d, m])).collect::<Vec<_>>(),
            "residual": self.residual.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "is_torsion": self.is_torsion(),
        })
    }
}

/// Factors a nonzero univariate Laurent polynomial as monomial unit times
/// content times cyclotomic polynomials times a cyclotomic-free residual.
/// Trial divisors are all Phi_d with phi(d) <= deg; since phi(d) >=
/// sqrt(d/2), testing d up to 2 deg^2 is exhaustive.
pub fn cyclotomic_certificate(f: &LaurentPoly) -> Result<CyclotomicCertificate> {
    if f.n() != 1 {
        return Err(Error::invalid("cyclotomic certificates need univariate input"));
    }
    if f.is_zero() {
        return Err(Error::DegenerateInput(
            "the zero polynomial vanishes on the whole torus".into(),
        ));
    }
    let (coeffs, unit_exp) = f.univariate_coeffs()?;
    let mut content = upoly::zcontent(&coeffs);
    if coeffs.last().unwrap().is_negative() {
        content = -content;
    }
    let mut residual: Vec<BigInt> = coeffs.iter().map(|c| c / &content).collect();
    let deg = upoly::zdeg(&residual) as u64;
    let bound = 2 * deg * deg;
    let mut factors = Vec::new();
    for d in 1..=bound {
        if euler_phi(d) > upoly::zdeg(&residual) as u64 {
            continue;
        }
        let phi = cyclotomic_polynomial(d)?;
        let mut mult = 0u32;
        while let Some(q) = upoly::zdiv_exact(&residual, &phi) {
            residual = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((d, mult));
        }
        if upoly::zdeg(&residual) == 0 {
            break;
        }
    }
    Ok(CyclotomicCertificate {
        unit_exp,
        content,
        factors,
        residual,
    })
}

/// Per-coordinate root-of-unity orders if every coordinate is one, else
/// None. Torsion points of the character torus are exactly these.
pub fn torsion_orders(chi: &Character) -> Result<Option<Vec<u64>>> {
    let mut orders = Vec::with_capacity(chi.n());
    for c in chi.coords() {
        match root_of_unity_order(c)? {
            Some(n) => orders.push(n),
            None => return Ok(None),
        }
    }
    Ok(Some(orders))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstructionVerdict {
    /// The locus is a finite union of torsion translates of subtori.
    NotObstructed,
    /// It provably is not; the quasi-projectivity obstruction applies.
    Obstructed,
    /// Outside the decidable range (positive-dimensional multivariate loci).
    Undecided,
    /// Decided only under the caller's claim that a supplied finite point
    /// list exhausts the locus.
    ConditionallyNotObstructed,
}

impl ObstructionVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            ObstructionVerdict::NotObstructed => "not_obstructed",
            ObstructionVerdict::Obstructed => "obstructed",
            ObstructionVerdict::Undecided => "undecided",
            ObstructionVerdict::ConditionallyNotObstructed => "conditionally_not_obstructed",
        }
    }
}

/// Verdict plus the evidence it rests on.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    pub certificate: Option<CyclotomicCertificate>,
    pub evidence: String,
}

impl ObstructionReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "verdict": self.verdict.as_str(),
            "certificate": self.certificate.as_ref().map(CyclotomicCertificate::to_json),
            "evidence": self.evidence,
        })
    }
}

/// Decision rule: for n = 1 the locus is empty, all of C*, or a finite set,
/// and the cyclotomic certificate of the gcd decides torsion exactly. For
/// n >= 2 only the trivially empty (a unit among the polynomials) and full
/// (no nonzero polynomial) cases are decided; otherwise the verdict is
/// undecided, unless the caller supplies a point list claimed to exhaust
/// the locus, in which case all-torsion yields a conditional verdict.
pub fn obstruction_verdict(
    n: usize,
    polys: &[LaurentPoly],
    claimed_points: Option<&[Character]>,
) -> Result<ObstructionReport> {
    if polys.iter().any(|f| f.n() != n) {
        return Err(Error::invalid("polynomial variable count must equal n"));
    }
    if polys.iter().all(LaurentPoly::is_zero) {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::NotObstructed,
            certificate: None,
            evidence: "no nonzero defining polynomial: the locus is the whole torus, itself a subtorus".into(),
        });
    }
    if n == 1 {
        let g = univariate_gcd(polys)?;
        let cert = cyclotomic_certificate(&g)?;
        let verdict = if cert.is_torsion() {
            ObstructionVerdict::NotObstructed
        } else {
            ObstructionVerdict::Obstructed
        };
        let evidence = if cert.is_torsion() {
            format!(
                "gcd {} splits into cyclotomic factors; the locus is a finite set of torsion points",
                g
            )
        } else {
            format!(
                "gcd {} has the cyclotomic-free residual of degree {}; some root is not a root of unity",
                g,
                cert.residual().len() - 1
            )
        };
        return Ok(ObstructionReport {
            verdict,
            certificate: Some(cert),
            evidence,
        });
    }
    if let Some(unit) = polys.iter().find(|f| !f.is_zero() && f.term_count() == 1) {
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::NotObstructed,
            certificate: None,
            evidence: format!("{unit} is a unit on the torus, so the locus is empty"),
        });
    }
    if let Some(points) = claimed_points {
        let mut orders = Vec::new();
        for chi in points {
            if chi.n() != n {
                return Err(Error::invalid("claimed point with wrong coordinate count"));
            }
            match torsion_orders(chi)? {
                Some(o) => orders.push(o),
                None => {
                    return Ok(ObstructionReport {
                        verdict: ObstructionVerdict::Undecided,
                        certificate: None,
                        evidence: format!(
                            "claimed point {chi} is not torsion; the claim cannot certify a torsion union"
                        ),
                    })
                }
            }
        }
        return Ok(ObstructionReport {
            verdict: ObstructionVerdict::ConditionallyNotObstructed,
            certificate: None,
            evidence: format!(
                "under the claim that {} supplied points exhaust the locus: all are torsion (orders {:?})",
                points.len(),
                orders
            ),
        });
    }
    Ok(ObstructionReport {
        verdict: ObstructionVerdict::Undecided,
        certificate: None,
        evidence: "positive-dimensional multivariate locus: outside the decidable range".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use num::One;

    fn lp1(pairs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            1,
            pairs.iter().map(|&(e, c)| (vec![e], BigInt::from(c))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn certificate_for_x_cubed_minus_one() {
        let cert = cyclotomic_certificate(&lp1(&[(3, 1), (0, -1)])).unwrap();
        assert_eq!(cert.unit_exp(), 0);
        assert_eq!(*cert.content(), BigInt::one());
        assert_eq!(cert.factors(), &[(1, 1), (3, 1)]);
        assert!(cert.is_torsion());
        assert_eq!(cert.expand().unwrap(), lp1(&[(3, 1), (0, -1)]));
    }

    #[test]
    fn certificate_for_x_minus_two() {
        let cert = cyclotomic_certificate(&lp1(&[(1, 1), (0, -2)])).unwrap();
        assert!(cert.factors().is_empty());
        assert!(!cert.is_torsion());
        assert_eq!(cert.expand().unwrap(), lp1(&[(1, 1), (0, -2)]));
    }

    #[test]
    fn certificate_for_a_scaled_monomial() {
        let cert = cyclotomic_certificate(&lp1(&[(5, 2)])).unwrap();
        assert_eq!(cert.unit_exp(), 5);
        assert_eq!(*cert.content(), BigInt::from(2));
        assert!(cert.factors().is_empty());
        assert!(cert.is_torsion());
        assert_eq!(cert.expand().unwrap(), lp1(&[(5, 2)]));
    }

    #[test]
    fn certificate_handles_signs_multiplicities_and_units() {
        // -3 x^-2 (x - 1)^2 (x^2 + 1) (x - 2)
        let f = lp1(&[(1, 1), (0, -1)]);
        let square = f.mul(&f).unwrap();
        let rest = lp1(&[(2, 1), (0, 1)]).mul(&lp1(&[(1, 1), (0, -2)])).unwrap();
        let input = square
            .mul(&rest)
            .unwrap()
            .mul(&lp1(&[(-2, -3)]))
            .unwrap();
        let cert = cyclotomic_certificate(&input).unwrap();
        assert_eq!(cert.unit_exp(), -2);
        assert_eq!(*cert.content(), BigInt::from(-3));
        assert_eq!(cert.factors(), &[(1, 2), (4, 1)]);
        assert!(!cert.is_torsion());
        assert_eq!(cert.expand().unwrap(), input);
    }

    #[test]
    fn zero_input_is_degenerate() {
        assert!(matches!(
            cyclotomic_certificate(&LaurentPoly::zero(1)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn torsion_order_vectors() {
        let chi = Character::trivial(3);
        assert_eq!(torsion_orders(&chi).unwrap(), Some(vec![1, 1, 1]));
        let chi = Character::new(vec![
            Scalar::from_int(-1),
            Scalar::root_of_unity(3).unwrap(),
        ])
        .unwrap();
        assert_eq!(torsion_orders(&chi).unwrap(), Some(vec![2, 3]));
        let chi = Character::new(vec![Scalar::from_int(2), Scalar::from_int(-1)]).unwrap();
        assert_eq!(torsion_orders(&chi).unwrap(), None);
    }

    #[test]
    fn verdict_examples() {
        let rep = obstruction_verdict(1, &[lp1(&[(1, 1), (0, -2)])], None).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::Obstructed);
        assert!(rep.certificate.is_some());

        let rep = obstruction_verdict(1, &[lp1(&[(2, 1), (1, 1), (0, 1)])], None).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::NotObstructed);

        let f2 = LaurentPoly::from_terms(
            2,
            vec![(vec![1, 0], BigInt::one()), (vec![0, 0], BigInt::from(-2))],
        )
        .unwrap();
        let rep = obstruction_verdict(2, std::slice::from_ref(&f2), None).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::Undecided);

        // empty and unit systems
        let rep = obstruction_verdict(2, &[], None).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::NotObstructed);
        let unit = LaurentPoly::from_terms(2, vec![(vec![1, -1], BigInt::from(3))]).unwrap();
        let rep = obstruction_verdict(2, &[unit], None).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::NotObstructed);

        // conditional path
        let torsion_point = Character::new(vec![
            Scalar::from_int(-1),
            Scalar::root_of_unity(4).unwrap(),
        ])
        .unwrap();
        let rep = obstruction_verdict(2, std::slice::from_ref(&f2), Some(&[torsion_point])).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::ConditionallyNotObstructed);
        let free_point = Character::from_ints(&[2, 1]).unwrap();
        let rep = obstruction_verdict(2, &[f2], Some(&[free_point])).unwrap();
        assert_eq!(rep.verdict, ObstructionVerdict::Undecided);
    }

    #[test]
    fn torsion_claim_is_exact() {
        let chi = Character::new(vec![
            Scalar::root_of_unity(6).unwrap(),
            Scalar::from_int(-1),
        ])
        .unwrap();
        let orders = torsion_orders(&chi).unwrap().unwrap();
        let l = orders.iter().fold(1u64, |acc, &o| num::integer::lcm(acc, o));
        let mut power = Vec::new();
        for c in chi.coords() {
            power.push(c.pow(l as i64).unwrap());
        }
        assert!(power.iter().all(Scalar::is_one));
    }
}
