//! End-to-end library flows: JSON in, verified report out, with the
//! normalization conventions pinned.

use num::bigint::BigInt;

use charvar::construction::{build_space, SpaceSpec};
use charvar::groups::build_group;
use charvar::laurent::LaurentPoly;
use charvar::loci::{auto_characters, jump_dim, jump_member, verify_group, verify_space, JumpTarget};
use charvar::scalar::{Character, Scalar};

fn lp(n: usize, terms: &[(&[i64], i64)]) -> LaurentPoly {
    LaurentPoly::from_terms(
        n,
        terms
            .iter()
            .map(|&(e, c)| (e.to_vec(), BigInt::from(c)))
            .collect(),
    )
    .unwrap()
}

/// The evaluation convention is x_j -> rho_j with no inversion: for f = x - 2
/// the degree-2 locus contains 2 and not 1/2. This pins the deck-action
/// normalization for everything downstream.
#[test]
fn locus_sits_at_the_root_not_its_inverse() {
    let spec = SpaceSpec::new(1, 2, vec![lp(1, &[(&[1], 1), (&[0], -2)])]).unwrap();
    let t = JumpTarget::Space(spec);
    let at = |num: i64, den: i64| Character::new(vec![Scalar::from_rational(num, den)]).unwrap();
    assert!(jump_member(&t, &at(2, 1), 2, 1).unwrap());
    assert!(!jump_member(&t, &at(1, 2), 2, 1).unwrap());
}

#[test]
fn json_pipeline_round_trip_feeds_verification() {
    let spec = SpaceSpec::new(2, 2, vec![lp(2, &[(&[1, 0], 1), (&[0, 0], -1)])]).unwrap();
    let spec_json = spec.to_json().to_string();
    let parsed = SpaceSpec::from_json(&serde_json::from_str(&spec_json).unwrap()).unwrap();
    assert_eq!(parsed, spec);

    let complex = build_space(&parsed).unwrap();
    let complex_json = complex.to_json().to_string();
    let reparsed =
        charvar::chain::EquivariantComplex::from_json(&serde_json::from_str(&complex_json).unwrap())
            .unwrap();
    assert_eq!(reparsed, complex);
    assert!(reparsed.validate().is_ok());

    let battery = auto_characters(parsed.n(), parsed.polys()).unwrap();
    let report = verify_space(&parsed, &battery).unwrap();
    assert!(report.pass());
    let json = report.to_json().unwrap();
    let round: serde_json::Value =
        serde_json::from_str(&json.to_string()).unwrap();
    assert_eq!(round["verdict"], "pass");
    assert_eq!(
        round["summary"]["total"].as_u64().unwrap() as usize,
        battery.len()
    );
}

#[test]
fn cyclotomic_characters_flow_through_the_whole_stack() {
    // x^2 + x + 1 vanishes exactly at the primitive cube roots of unity
    let spec = SpaceSpec::new(1, 2, vec![lp(1, &[(&[2], 1), (&[1], 1), (&[0], 1)])]).unwrap();
    let t = JumpTarget::Space(spec.clone());
    let zeta3 = Character::new(vec![Scalar::root_of_unity(3).unwrap()]).unwrap();
    let zeta6 = Character::new(vec![Scalar::root_of_unity(6).unwrap()]).unwrap();
    assert_eq!(jump_dim(&t, &zeta3, 2).unwrap(), 1);
    assert_eq!(jump_dim(&t, &zeta6, 2).unwrap(), 0);

    let battery = auto_characters(1, spec.polys()).unwrap();
    assert!(battery.iter().any(|c| c == &zeta3));
    let report = verify_space(&spec, &battery).unwrap();
    assert!(report.pass());

    // the serialized report contains the cyclotomic witness
    let json = report.to_json().unwrap().to_string();
    assert!(json.contains("\"conductor\":3"));
}

#[test]
fn group_route_handles_cyclotomic_loci_too() {
    // x1^3 - 1 vanishes on all cube roots; the group sees the same locus
    let polys = vec![lp(2, &[(&[3, 0], 1), (&[0, 0], -1)])];
    let battery = auto_characters(2, &polys).unwrap();
    let report = verify_group(2, &polys, &battery).unwrap();
    assert!(report.pass(), "{}", report.to_json().unwrap());

    let pres = build_group(2, &polys).unwrap();
    let tg = JumpTarget::Group(pres);
    let on = Character::new(vec![Scalar::root_of_unity(3).unwrap(), Scalar::from_int(7)]).unwrap();
    let off = Character::new(vec![Scalar::root_of_unity(4).unwrap(), Scalar::from_int(7)]).unwrap();
    assert!(jump_member(&tg, &on, 1, 1).unwrap());
    assert!(!jump_member(&tg, &off, 1, 1).unwrap());
}
