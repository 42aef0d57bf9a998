//! Builders for the spaces whose degree-k jump locus is a prescribed
//! subvariety of the torus: the equivariant Koszul complex of the n-torus
//! cover, a wedged k-sphere, and one (k+1)-cell per defining Laurent
//! polynomial. Also exposes the one-generator presentation matrix of the
//! resulting degree-k Alexander module.

use num::bigint::BigInt;
use num::One;

use crate::chain::{BettiVector, EquivariantComplex, Mat};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::Character;

/// Largest torus rank the Koszul builder accepts. Generator counts grow as
/// C(n, i); desk-scale queries stay well below this.
pub const MAX_TORUS_RANK: usize = 10;

/// Input datum: torus rank n, sphere degree k >= 2, and the defining
/// polynomials of the target subvariety. Degree k = 1 is the group-theoretic
/// route and is not accepted here.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceSpec {
    n: usize,
    k: usize,
    polys: Vec<LaurentPoly>,
}

impl SpaceSpec {
    pub fn new(n: usize, k: usize, polys: Vec<LaurentPoly>) -> Result<SpaceSpec> {
        if n == 0 {
            return Err(Error::invalid("torus rank n must be >= 1"));
        }
        if n > MAX_TORUS_RANK {
            return Err(Error::invalid(format!(
                "torus rank {n} exceeds the implementation bound {MAX_TORUS_RANK}"
            )));
        }
        if k < 2 {
            return Err(Error::invalid(
                "sphere degree k must be >= 2 (k = 1 is handled by the groups module)",
            ));
        }
        if let Some(bad) = polys.iter().find(|f| f.n() != n) {
            return Err(Error::invalid(format!(
                "polynomial {bad} has {} variables, expected {n}",
                bad.n()
            )));
        }
        Ok(SpaceSpec { n, k, polys })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn polys(&self) -> &[LaurentPoly] {
        &self.polys
    }

    /// True iff every defining polynomial vanishes at the character, i.e.
    /// the character lies on the target subvariety.
    pub fn on_locus(&self, chi: &Character) -> Result<bool> {
        for f in &self.polys {
            if !f.eval(chi)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// JSON form {"n":..., "k":..., "polys":[...]}.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "k": self.k,
            "polys": self.polys.iter().map(LaurentPoly::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<SpaceSpec> {
        let (n, k, polys) = parse_spec_json(v)?;
        let k = k.ok_or_else(|| Error::json("space spec needs a positive integer k"))?;
        SpaceSpec::new(n, k, polys)
    }
}

/// Shared parser for {"n", "k"?, "polys"} objects; the groups route ignores k.
pub fn parse_spec_json(
    v: &serde_json::Value,
) -> Result<(usize, Option<usize>, Vec<LaurentPoly>)> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::json("spec must be a JSON object"))?;
    let n = obj
        .get("n")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::json("spec needs a positive integer n"))? as usize;
    let k = match obj.get("k") {
        None => None,
        Some(x) => Some(
            x.as_u64()
                .ok_or_else(|| Error::json("spec k must be a non-negative integer"))?
                as usize,
        ),
    };
    let polys = obj
        .get("polys")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::json("spec needs a polys array"))?
        .iter()
        .map(LaurentPoly::from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok((n, k, polys))
}

/// All size-i subsets of {1..n} in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for j in start..=n {
            cur.push(j);
            rec(j + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut acc = 1usize;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The equivariant chain complex of the universal cover of the n-torus:
/// degrees 0..=n, generators indexed by sorted subsets S of {1..n}, and
/// d(e_S) = sum over j in S of (-1)^pos(j, S) (x_j - 1) e_{S minus j},
/// where pos is the 0-based index of j in S.
pub fn koszul_complex(n: usize) -> Result<EquivariantComplex> {
    if n == 0 {
        return Err(Error::invalid("torus rank n must be >= 1"));
    }
    if n > MAX_TORUS_RANK {
        return Err(Error::invalid(format!(
            "torus rank {n} exceeds the implementation bound {MAX_TORUS_RANK}"
        )));
    }
    let gens: Vec<Vec<Vec<usize>>> = (0..=n).map(|i| subsets(n, i)).collect();
    let counts: Vec<usize> = gens.iter().map(Vec::len).collect();
    let var_minus_one = |j: usize| {
        let mut e = vec![0i64; n];
        e[j - 1] = 1;
        LaurentPoly::from_terms(n, vec![(e, BigInt::one()), (vec![0; n], BigInt::from(-1))])
            .unwrap()
    };
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        let rows = &gens[i - 1];
        let cols = &gens[i];
        let mut d = Mat::filled(rows.len(), cols.len(), LaurentPoly::zero(n));
        for (c, subset) in cols.iter().enumerate() {
            for (pos, &j) in subset.iter().enumerate() {
                let mut face = subset.clone();
                face.remove(pos);
                let r = rows.binary_search(&face).expect("face is a generator");
                let mut entry = var_minus_one(j);
                if pos % 2 == 1 {
                    entry = entry.neg();
                }
                d.set(r, c, entry);
            }
        }
        diffs.push(d);
    }
    EquivariantComplex::new(n, counts, diffs)
}

/// Builds the chain complex of the space: the Koszul complex of the torus,
/// one extra degree-k generator with zero boundary (the wedged sphere), and
/// one degree-(k+1) generator per polynomial f whose boundary is f times
/// the sphere generator. The sphere row is the last row in degree k.
pub fn build_space(spec: &SpaceSpec) -> Result<EquivariantComplex> {
    let n = spec.n;
    let k = spec.k;
    let r = spec.polys.len();
    let kos = koszul_complex(n)?;
    let top = if r > 0 { n.max(k + 1) } else { n.max(k) };

    let kc = |i: usize| -> usize { binomial(n, i) };
    let extra = |i: usize| -> usize {
        if i == k {
            1
        } else if i == k + 1 {
            r
        } else {
            0
        }
    };
    let counts: Vec<usize> = (0..=top).map(|i| kc(i) + extra(i)).collect();

    let mut diffs = Vec::with_capacity(top);
    for i in 1..=top {
        let rows = counts[i - 1];
        let cols = counts[i];
        let mut d = Mat::filled(rows, cols, LaurentPoly::zero(n));
        // Koszul block
        if i <= n {
            let kd = kos.diff(i);
            for rr in 0..kd.rows() {
                for cc in 0..kd.cols() {
                    d.set(rr, cc, kd.at(rr, cc).clone());
                }
            }
        }
        // sphere column (degree k) stays zero; cell columns hit the sphere row
        if i == k + 1 && r > 0 {
            let sphere_row = kc(k);
            for (idx, f) in spec.polys.iter().enumerate() {
                d.set(sphere_row, kc(i) + idx, f.clone());
            }
        }
        diffs.push(d);
    }
    EquivariantComplex::new(n, counts, diffs)
}

/// The 1 x r presentation matrix [f_1 ... f_r] of the degree-k Alexander
/// module of the built space: one generator (the sphere class), one relation
/// per attached cell. An empty list presents a free module of rank one.
pub fn alexander_presentation(spec: &SpaceSpec) -> Result<Mat<LaurentPoly>> {
    Mat::from_rows(vec![spec.polys.to_vec()], spec.polys.len())
}

/// Homology dimensions of the built space at the trivial character, i.e.
/// the ordinary Betti numbers with constant complex coefficients.
pub fn trivial_cohomology(spec: &SpaceSpec) -> Result<BettiVector> {
    build_space(spec)?
        .specialize(&Character::trivial(spec.n))?
        .homology_dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    fn x_minus(c: i64) -> LaurentPoly {
        lp(1, &[(&[1], 1), (&[0], -c)])
    }

    #[test]
    fn koszul_rank_one() {
        let k = koszul_complex(1).unwrap();
        assert_eq!(k.counts(), &[1, 1]);
        assert_eq!(*k.diff(1).at(0, 0), lp(1, &[(&[1], 1), (&[0], -1)]));
    }

    #[test]
    fn koszul_rank_two_signs() {
        let k = koszul_complex(2).unwrap();
        assert_eq!(k.counts(), &[1, 2, 1]);
        let x1m1 = lp(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let x2m1 = lp(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(*k.diff(1).at(0, 0), x1m1);
        assert_eq!(*k.diff(1).at(0, 1), x2m1);
        assert_eq!(*k.diff(2).at(0, 0), x2m1.neg());
        assert_eq!(*k.diff(2).at(1, 0), x1m1);
        assert!(k.validate().is_ok());
    }

    #[test]
    fn koszul_satisfies_chain_rule_up_to_the_desk_bound() {
        for n in 1..=6 {
            let k = koszul_complex(n).unwrap();
            assert!(k.validate().is_ok(), "koszul({n}) must satisfy d.d = 0");
            let expect: Vec<usize> = (0..=n).map(|i| binomial(n, i)).collect();
            assert_eq!(k.counts(), &expect[..]);
        }
        assert!(koszul_complex(0).is_err());
        assert!(koszul_complex(MAX_TORUS_RANK + 1).is_err());
    }

    #[test]
    fn koszul_homology_concentrates_at_the_trivial_character() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=3 {
            let k = koszul_complex(n).unwrap();
            let pool = [2i64, 3, 5, -2, -3];
            for _ in 0..10 {
                let coords: Vec<i64> =
                    (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
                let chi = Character::from_ints(&coords).unwrap();
                let betti = k.specialize(&chi).unwrap().homology_dims().unwrap();
                assert!(betti.0.iter().all(|&h| h == 0), "nonzero betti at {chi}");
            }
            let betti = k
                .specialize(&Character::trivial(n))
                .unwrap()
                .homology_dims()
                .unwrap();
            let expect: Vec<usize> = (0..=n).map(|i| binomial(n, i)).collect();
            assert_eq!(betti.0, expect);
        }
    }

    #[test]
    fn build_space_univariate_example() {
        let spec = SpaceSpec::new(1, 2, vec![x_minus(2)]).unwrap();
        let c = build_space(&spec).unwrap();
        assert_eq!(c.counts(), &[1, 1, 1, 1]);
        assert_eq!(*c.diff(1).at(0, 0), x_minus(1));
        assert!(c.diff(2).at(0, 0).is_zero());
        assert_eq!(*c.diff(3).at(0, 0), x_minus(2));
        assert!(c.validate().is_ok());
    }

    #[test]
    fn build_space_two_variable_example() {
        let f = lp(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let spec = SpaceSpec::new(2, 2, vec![f.clone()]).unwrap();
        let c = build_space(&spec).unwrap();
        assert_eq!(c.counts(), &[1, 2, 2, 1]);
        // d2: Koszul column then the zero sphere column
        let x2m1 = lp(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        assert_eq!(*c.diff(2).at(0, 0), x2m1.neg());
        assert_eq!(*c.diff(2).at(1, 0), f);
        assert!(c.diff(2).at(0, 1).is_zero());
        assert!(c.diff(2).at(1, 1).is_zero());
        // d3: the cell hits only the sphere row
        assert!(c.diff(3).at(0, 0).is_zero());
        assert_eq!(*c.diff(3).at(1, 0), f);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn build_space_sphere_only() {
        let spec = SpaceSpec::new(1, 3, vec![]).unwrap();
        let c = build_space(&spec).unwrap();
        assert_eq!(c.counts(), &[1, 1, 0, 1]);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn space_spec_validation() {
        assert!(SpaceSpec::new(0, 2, vec![]).is_err());
        assert!(SpaceSpec::new(1, 1, vec![]).is_err());
        assert!(SpaceSpec::new(1, 2, vec![LaurentPoly::one(2)]).is_err());
    }

    #[test]
    fn betti_examples_for_the_univariate_space() {
        let spec = SpaceSpec::new(1, 2, vec![x_minus(2)]).unwrap();
        let c = build_space(&spec).unwrap();
        let betti = |coords: &[i64]| {
            c.specialize(&Character::from_ints(coords).unwrap())
                .unwrap()
                .homology_dims()
                .unwrap()
                .0
        };
        assert_eq!(betti(&[2]), vec![0, 0, 1, 1]);
        assert_eq!(betti(&[3]), vec![0, 0, 0, 0]);
        assert_eq!(betti(&[1]), vec![1, 1, 0, 0]);
    }

    #[test]
    fn alexander_presentation_examples() {
        let spec = SpaceSpec::new(1, 2, vec![x_minus(2)]).unwrap();
        let m = alexander_presentation(&spec).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(*m.at(0, 0), x_minus(2));

        let free = SpaceSpec::new(2, 2, vec![]).unwrap();
        let m = alexander_presentation(&free).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 0));

        let two = SpaceSpec::new(
            2,
            2,
            vec![
                lp(2, &[(&[1, 0], 1), (&[0, 0], -1)]),
                lp(2, &[(&[0, 1], 1), (&[0, 0], -1)]),
            ],
        )
        .unwrap();
        let m = alexander_presentation(&two).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 2));
    }

    #[test]
    fn trivial_cohomology_examples() {
        let h = trivial_cohomology(&SpaceSpec::new(1, 2, vec![x_minus(2)]).unwrap()).unwrap();
        assert_eq!(h.dim(2), 0);
        let h = trivial_cohomology(
            &SpaceSpec::new(2, 2, vec![lp(2, &[(&[1, 0], 1), (&[0, 0], -2)])]).unwrap(),
        )
        .unwrap();
        assert_eq!(h.dim(2), 1);
        let h = trivial_cohomology(
            &SpaceSpec::new(2, 2, vec![lp(2, &[(&[1, 0], 1), (&[0, 0], -1)])]).unwrap(),
        )
        .unwrap();
        assert_eq!(h.dim(2), 2);
    }

    #[test]
    fn sphere_class_survives_exactly_on_the_locus() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = lp(2, &[(&[1, 1], 1), (&[0, 0], -2)]); // x1 x2 - 2
        let spec = SpaceSpec::new(2, 3, vec![f]).unwrap();
        let c = build_space(&spec).unwrap();
        assert!(c.validate().is_ok());
        let mut on_seen = false;
        let mut candidates: Vec<Vec<Scalar>> = vec![
            vec![Scalar::from_int(2), Scalar::from_int(1)],
            vec![Scalar::from_int(1), Scalar::from_int(2)],
            vec![Scalar::from_int(4), Scalar::from_rational(1, 2)],
            vec![Scalar::from_int(-2), Scalar::from_int(-1)],
        ];
        for _ in 0..8 {
            let pool = [2i64, 3, 5, -2];
            candidates.push(
                (0..2)
                    .map(|_| Scalar::from_int(pool[rng.gen_range(0..pool.len())]))
                    .collect(),
            );
        }
        for coords in candidates {
            let chi = Character::new(coords).unwrap();
            if chi.is_trivial() {
                continue;
            }
            let on = spec.on_locus(&chi).unwrap();
            on_seen |= on;
            let h = c.specialize(&chi).unwrap().homology_dims().unwrap();
            assert_eq!(h.dim(3) == 1, on, "sphere class at {chi}");
            for i in 1..3 {
                assert_eq!(h.dim(i), 0, "intermediate degree {i} at {chi}");
            }
        }
        assert!(on_seen, "test battery must include on-locus points");
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = SpaceSpec::new(2, 3, vec![lp(2, &[(&[1, 1], 1), (&[0, 0], -2)])]).unwrap();
        let j = spec.to_json();
        assert_eq!(SpaceSpec::from_json(&j).unwrap(), spec);
        assert!(SpaceSpec::from_json(&serde_json::json!({"n": 1, "k": 0, "polys": []})).is_err());
    }
}
