//! Free finitely generated chain complexes over the Laurent ring, their
//! specialization at a character, and exact homology dimensions via rank
//! counts. This is the engine behind every jump-locus membership test.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::{Integer, One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::scalar::{Character, Field, Scalar};

/// Relative pivot threshold for the float rank heuristic. Never used on the
/// exact path and never in acceptance-grade queries.
pub const FLOAT_PIVOT_TOLERANCE: f64 = 1e-9;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Mat<T>> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::invalid("ragged matrix rows"));
            }
        }
        let nrows = rows.len();
        Ok(Mat {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Mat<T> {
        Mat {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Mat<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.at(r, c).clone());
            }
        }
        Mat {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Mat<U>> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }
}

/// Product of Laurent matrices; shapes must compose and variable counts agree.
pub fn laurent_mat_mul(
    a: &Mat<LaurentPoly>,
    b: &Mat<LaurentPoly>,
    n: usize,
) -> Result<Mat<LaurentPoly>> {
    if a.cols() != b.rows() {
        return Err(Error::invalid("matrix shapes do not compose"));
    }
    let mut out = Mat::filled(a.rows(), b.cols(), LaurentPoly::zero(n));
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = LaurentPoly::zero(n);
            for k in 0..a.cols() {
                acc = acc.add(&a.at(i, k).mul(b.at(k, j))?)?;
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// Product of scalar matrices.
pub fn scalar_mat_mul(a: &Mat<Scalar>, b: &Mat<Scalar>) -> Result<Mat<Scalar>> {
    if a.cols() != b.rows() {
        return Err(Error::invalid("matrix shapes do not compose"));
    }
    let mut out = Mat::filled(a.rows(), b.cols(), Scalar::zero());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = Scalar::zero();
            for k in 0..a.cols() {
                acc = &acc + &(a.at(i, k) * b.at(k, j));
            }
            out.set(i, j, acc);
        }
    }
    Ok(out)
}

/// A finitely generated free chain complex over Z[x_1^(+-1), ..., x_n^(+-1)]
/// with degrees 0..=D. Differential d_i (1 <= i <= D) has shape
/// counts[i-1] x counts[i]; a column is the image of a degree-i generator.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivariantComplex {
    n: usize,
    counts: Vec<usize>,
    diffs: Vec<Mat<LaurentPoly>>,
}

impl EquivariantComplex {
    pub fn new(
        n: usize,
        counts: Vec<usize>,
        diffs: Vec<Mat<LaurentPoly>>,
    ) -> Result<EquivariantComplex> {
        if counts.is_empty() {
            return Err(Error::invalid("complex needs at least degree 0"));
        }
        if diffs.len() + 1 != counts.len() {
            return Err(Error::invalid(format!(
                "expected {} differentials for {} degrees, got {}",
                counts.len() - 1,
                counts.len(),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != counts[i] || d.cols() != counts[i + 1] {
                return Err(Error::invalid(format!(
                    "differential d_{} has shape {}x{}, expected {}x{}",
                    i + 1,
                    d.rows(),
                    d.cols(),
                    counts[i],
                    counts[i + 1]
                )));
            }
            if d.entries().any(|p| p.n() != n) {
                return Err(Error::invalid("differential entry with wrong variable count"));
            }
        }
        Ok(EquivariantComplex { n, counts, diffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Top degree D.
    pub fn top_degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// d_i for 1 <= i <= D.
    pub fn diff(&self, i: usize) -> &Mat<LaurentPoly> {
        &self.diffs[i - 1]
    }

    /// Checks d_i . d_{i+1} = 0 for every composable pair. On failure the
    /// error carries the first offending entry, 1-based.
    pub fn validate(&self) -> Result<()> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let prod = laurent_mat_mul(&self.diffs[i], &self.diffs[i + 1], self.n)?;
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !prod.at(r, c).is_zero() {
                        return Err(Error::ChainRule {
                            degree: i + 1,
                            row: r + 1,
                            col: c + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies the character entrywise, landing every entry in the
    /// character's field (float matrices for float characters).
    pub fn specialize(&self, chi: &Character) -> Result<SpecializedComplex> {
        if chi.n() != self.n {
            return Err(Error::invalid(format!(
                "specializing an n={} complex at an n={} character",
                self.n,
                chi.n()
            )));
        }
        let field = chi.field();
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.try_map(|p| crate::scalar::coerce_to_field(&p.eval(chi)?, field)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpecializedComplex {
            field,
            counts: self.counts.clone(),
            diffs,
        })
    }

    /// JSON form {"n":..., "counts":[...], "diffs":[rows-of-polys ...]}.
    pub fn to_json(&self) -> serde_json::Value {
        let diffs: Vec<serde_json::Value> = self
            .diffs
            .iter()
            .map(|d| {
                let rows: Vec<serde_json::Value> = (0..d.rows())
                    .map(|r| {
                        serde_json::Value::Array(
                            (0..d.cols()).map(|c| d.at(r, c).to_json()).collect(),
                        )
                    })
                    .collect();
                serde_json::Value::Array(rows)
            })
            .collect();
        serde_json::json!({
            "n": self.n,
            "counts": self.counts,
            "diffs": diffs,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<EquivariantComplex> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::json("complex must be a JSON object"))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::json("complex needs a variable count n"))? as usize;
        let counts: Vec<usize> = obj
            .get("counts")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::json("complex needs a counts array"))?
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| Error::json("counts must be non-negative integers"))
            })
            .collect::<Result<_>>()?;
        let diffs_json = obj
            .get("diffs")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::json("complex needs a diffs array"))?;
        if counts.is_empty() || diffs_json.len() + 1 != counts.len() {
            return Err(Error::json("diffs length must be one less than counts length"));
        }
        let mut diffs = Vec::with_capacity(diffs_json.len());
        for (i, dj) in diffs_json.iter().enumerate() {
            let rows_json = dj
                .as_array()
                .ok_or_else(|| Error::json("differential must be an array of rows"))?;
            let (want_r, want_c) = (counts[i], counts[i + 1]);
            if rows_json.len() != want_r {
                return Err(Error::json(format!(
                    "differential {} has {} rows, expected {}",
                    i + 1,
                    rows_json.len(),
                    want_r
                )));
            }
            let mut rows = Vec::with_capacity(want_r);
            for rj in rows_json {
                let entries = rj
                    .as_array()
                    .ok_or_else(|| Error::json("matrix row must be an array"))?;
                if entries.len() != want_c {
                    return Err(Error::json(format!(
                        "differential {} has a row of width {}, expected {}",
                        i + 1,
                        entries.len(),
                        want_c
                    )));
                }
                rows.push(
                    entries
                        .iter()
                        .map(LaurentPoly::from_json)
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            diffs.push(Mat::from_rows(rows, want_c)?);
        }
        EquivariantComplex::new(n, counts, diffs)
    }
}

/// A chain complex of scalar matrices over one field.
#[derive(Debug, Clone)]
pub struct SpecializedComplex {
    field: Field,
    counts: Vec<usize>,
    diffs: Vec<Mat<Scalar>>,
}

impl SpecializedComplex {
    pub fn new(
        field: Field,
        counts: Vec<usize>,
        diffs: Vec<Mat<Scalar>>,
    ) -> Result<SpecializedComplex> {
        if counts.is_empty() || diffs.len() + 1 != counts.len() {
            return Err(Error::invalid("inconsistent specialized complex shape"));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != counts[i] || d.cols() != counts[i + 1] {
                return Err(Error::invalid("specialized differential shape mismatch"));
            }
        }
        Ok(SpecializedComplex { field, counts, diffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn top_degree(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn diff(&self, i: usize) -> &Mat<Scalar> {
        &self.diffs[i - 1]
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let prod = scalar_mat_mul(&self.diffs[i], &self.diffs[i + 1])?;
            for r in 0..prod.rows() {
                for c in 0..prod.cols() {
                    if !prod.at(r, c).is_zero() {
                        return Err(Error::ChainRule {
                            degree: i + 1,
                            row: r + 1,
                            col: c + 1,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// h_i = c_i - rank(d_i) - rank(d_{i+1}), with d_0 and d_{D+1} zero.
    pub fn homology_dims(&self) -> Result<BettiVector> {
        let ranks: Vec<usize> = self.diffs.iter().map(matrix_rank).collect::<Result<_>>()?;
        let mut dims = Vec::with_capacity(self.counts.len());
        for (i, &c) in self.counts.iter().enumerate() {
            let r_in = if i == 0 { 0 } else { ranks[i - 1] };
            let r_out = if i < ranks.len() { ranks[i] } else { 0 };
            let h = c
                .checked_sub(r_in)
                .and_then(|t| t.checked_sub(r_out))
                .ok_or_else(|| Error::Arithmetic("rank exceeds generator count".into()))?;
            dims.push(h);
        }
        Ok(BettiVector(dims))
    }

    /// Complex with every differential transposed and degrees reversed;
    /// computes the same dimensions since rank is transpose-invariant.
    pub fn reversed(&self) -> SpecializedComplex {
        SpecializedComplex {
            field: self.field,
            counts: self.counts.iter().rev().copied().collect(),
            diffs: self.diffs.iter().rev().map(Mat::transpose).collect(),
        }
    }
}

/// Per-degree homology dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// Dimension in the given degree; degrees outside the range are 0.
    pub fn dim(&self, degree: usize) -> usize {
        self.0.get(degree).copied().unwrap_or(0)
    }

    pub fn euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &h)| if i % 2 == 0 { h as i64 } else { -(h as i64) })
            .sum()
    }
}

/// Exact (or thresholded-float) rank of a scalar matrix. Entries must be
/// all exact or all float; mixing the two is an error.
pub fn matrix_rank(m: &Mat<Scalar>) -> Result<usize> {
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    let floats = m.entries().filter(|s| s.is_float()).count();
    if floats > 0 && floats < m.rows() * m.cols() {
        return Err(Error::invalid("matrix mixes exact and float entries"));
    }
    if floats > 0 {
        return Ok(float_rank(m));
    }
    if m.entries().all(|s| matches!(s, Scalar::Rational(_))) {
        rational_rank(m)
    } else {
        Ok(field_gauss_rank(m))
    }
}

/// Fraction-free Bareiss elimination with full pivoting, after clearing
/// denominators row by row. Keeps intermediate integer growth polynomial.
fn rational_rank(m: &Mat<Scalar>) -> Result<usize> {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut lcm_den = BigInt::one();
        for c in 0..cols {
            match m.at(r, c) {
                Scalar::Rational(q) => lcm_den = lcm_den.lcm(q.denom()),
                _ => unreachable!("rational_rank called on non-rational matrix"),
            }
        }
        let mut row = Vec::with_capacity(cols);
        for c in 0..cols {
            match m.at(r, c) {
                Scalar::Rational(q) => row.push(q.numer() * (&lcm_den / q.denom())),
                _ => unreachable!(),
            }
        }
        a.push(row);
    }

    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for k in 0..rows.min(cols) {
        // full pivoting: any nonzero entry of the trailing block
        let pivot = (k..rows)
            .flat_map(|i| (k..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        a.swap(k, pi);
        if pj != k {
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
        }
        for i in k + 1..rows {
            for j in k + 1..cols {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
        rank += 1;
    }
    Ok(rank)
}

/// Plain Gaussian elimination over the scalar field (cyclotomic path).
fn field_gauss_rank(m: &Mat<Scalar>) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.at(r, c).clone()).collect())
        .collect();
    let mut rank = 0usize;
    for c in 0..cols {
        let pivot = (rank..rows).find(|&i| !a[i][c].is_zero());
        let pi = match pivot {
            Some(i) => i,
            None => continue,
        };
        a.swap(rank, pi);
        let inv = a[rank][c].inverse().expect("pivot is nonzero");
        let (pivot_rows, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &pivot_rows[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] * &inv;
            for (entry, pivot_entry) in row.iter_mut().zip(pivot_row).skip(c) {
                let delta = &factor * pivot_entry;
                *entry = &*entry - &delta;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Heuristic float rank: pivots count when their magnitude exceeds
/// FLOAT_PIVOT_TOLERANCE times the largest initial magnitude.
fn float_rank(m: &Mat<Scalar>) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Complex64>> = (0..rows)
        .map(|r| (0..cols).map(|c| m.at(r, c).to_complex()).collect())
        .collect();
    let max_mag = a.iter().flatten().map(|z| z.norm()).fold(0.0f64, f64::max);
    if max_mag == 0.0 {
        return 0;
    }
    let threshold = FLOAT_PIVOT_TOLERANCE * max_mag;
    let mut rank = 0usize;
    for c in 0..cols {
        let pivot = (rank..rows)
            .map(|i| (i, a[i][c].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1));
        let (pi, mag) = match pivot {
            Some(p) => p,
            None => break,
        };
        if mag <= threshold {
            continue;
        }
        a.swap(rank, pi);
        let inv = a[rank][c].inv();
        let (pivot_rows, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &pivot_rows[rank];
        for row in rest.iter_mut() {
            let factor = row[c] * inv;
            for (entry, pivot_entry) in row.iter_mut().zip(pivot_row).skip(c) {
                *entry -= factor * pivot_entry;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::unify;
    use num::bigint::BigInt;
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

    /// The n=2 Koszul complex, built by hand for these tests.
    fn koszul2() -> EquivariantComplex {
        let x1m1 = lp(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let x2m1 = lp(2, &[(&[0, 1], 1), (&[0, 0], -1)]);
        let d1 = Mat::from_rows(vec![vec![x1m1.clone(), x2m1.clone()]], 2).unwrap();
        let d2 = Mat::from_rows(vec![vec![x2m1.neg()], vec![x1m1]], 1).unwrap();
        EquivariantComplex::new(2, vec![1, 2, 1], vec![d1, d2]).unwrap()
    }

    fn scalar_mat(vals: &[&[i64]]) -> Mat<Scalar> {
        let cols = vals.first().map_or(0, |r| r.len());
        Mat::from_rows(
            vals.iter()
                .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_koszul_and_rejects_stacked_differential() {
        assert!(koszul2().validate().is_ok());

        let d = Mat::from_rows(vec![vec![x_minus(1)]], 1).unwrap();
        let bad = EquivariantComplex::new(1, vec![1, 1, 1], vec![d.clone(), d]).unwrap();
        assert_eq!(
            bad.validate(),
            Err(Error::ChainRule { degree: 1, row: 1, col: 1 })
        );

        // a single differential has no composable pair
        let single = EquivariantComplex::new(
            1,
            vec![1, 1],
            vec![Mat::from_rows(vec![vec![x_minus(1)]], 1).unwrap()],
        )
        .unwrap();
        assert!(single.validate().is_ok());
    }

    #[test]
    fn shape_mismatch_is_invalid_argument() {
        let d = Mat::from_rows(vec![vec![x_minus(1)]], 1).unwrap();
        assert!(matches!(
            EquivariantComplex::new(1, vec![1, 2], vec![d]),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn rank_basics() {
        assert_eq!(
            matrix_rank(&scalar_mat(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]])).unwrap(),
            0
        );
        assert_eq!(
            matrix_rank(&scalar_mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap(),
            3
        );
        assert_eq!(matrix_rank(&scalar_mat(&[&[1, 2], &[2, 4]])).unwrap(), 1);
        // empty shapes
        assert_eq!(matrix_rank(&Mat::<Scalar>::filled(0, 3, Scalar::zero())).unwrap(), 0);
        assert_eq!(matrix_rank(&Mat::<Scalar>::filled(2, 0, Scalar::zero())).unwrap(), 0);
    }

    #[test]
    fn rank_agrees_across_paths() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..30 {
            let rows = rng.gen_range(1..=5);
            let cols = rng.gen_range(1..=5);
            let m = Mat::from_rows(
                (0..rows)
                    .map(|_| {
                        (0..cols)
                            .map(|_| {
                                Scalar::from_rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
                            })
                            .collect()
                    })
                    .collect(),
                cols,
            )
            .unwrap();
            let exact = matrix_rank(&m).unwrap();
            // same matrix pushed through the cyclotomic field path
            let cyc = m.map(|s| s.embed(4).unwrap());
            assert_eq!(field_gauss_rank(&cyc), exact);
            let fl = m.map(|s| Scalar::Complex(s.to_complex()));
            assert_eq!(matrix_rank(&fl).unwrap(), exact);
        }
    }

    #[test]
    fn mixed_entries_rejected() {
        let m = Mat::from_rows(
            vec![vec![Scalar::from_int(1), Scalar::Complex(Complex64::new(1.0, 0.0))]],
            2,
        )
        .unwrap();
        assert!(matches!(matrix_rank(&m), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cyclotomic_rank() {
        let i = Scalar::root_of_unity(4).unwrap();
        // rows proportional over Q(zeta_4): (1, i) and (i, -1) = i*(1, i)
        let m = Mat::from_rows(
            vec![vec![Scalar::one(), i.clone()], vec![i.clone(), &i * &i]],
            2,
        )
        .unwrap();
        assert_eq!(matrix_rank(&m).unwrap(), 1);
    }

    #[test]
    fn specialization_examples() {
        // Koszul(1) at rho = (2): d1 = (1); at the trivial character: d1 = (0)
        let k1 = EquivariantComplex::new(
            1,
            vec![1, 1],
            vec![Mat::from_rows(vec![vec![x_minus(1)]], 1).unwrap()],
        )
        .unwrap();
        let s = k1.specialize(&Character::from_ints(&[2]).unwrap()).unwrap();
        assert_eq!(*s.diff(1).at(0, 0), Scalar::one());
        let s = k1.specialize(&Character::trivial(1)).unwrap();
        assert!(s.diff(1).at(0, 0).is_zero());
    }

    #[test]
    fn koszul2_homology_vanishes_off_trivial_and_not_at_it() {
        let k = koszul2();
        let betti = k
            .specialize(&Character::from_ints(&[2, 3]).unwrap())
            .unwrap()
            .homology_dims()
            .unwrap();
        assert_eq!(betti, BettiVector(vec![0, 0, 0]));
        let betti = k
            .specialize(&Character::trivial(2))
            .unwrap()
            .homology_dims()
            .unwrap();
        assert_eq!(betti, BettiVector(vec![1, 2, 1]));
    }

    #[test]
    fn euler_characteristic_is_conserved() {
        let k = koszul2();
        let expected: i64 = 1 - 2 + 1;
        for coords in [[2i64, 3], [1, 5], [-1, 7], [1, 1]] {
            let s = k.specialize(&Character::from_ints(&coords).unwrap()).unwrap();
            assert_eq!(s.homology_dims().unwrap().euler(), expected);
        }
    }

    #[test]
    fn transpose_reversal_preserves_dims() {
        let k = koszul2();
        for coords in [[2i64, 3], [1, 1], [1, 4]] {
            let s = k.specialize(&Character::from_ints(&coords).unwrap()).unwrap();
            let dims = s.homology_dims().unwrap().0;
            let mut rev = s.reversed().homology_dims().unwrap().0;
            rev.reverse();
            assert_eq!(dims, rev);
        }
    }

    #[test]
    fn exact_and_float_betti_agree_on_rational_characters() {
        let k = koszul2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pool = [2i64, 3, 5, -2, -3, 1];
            let coords: Vec<i64> = (0..2).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
            let chi = Character::from_ints(&coords).unwrap();
            let exact = k.specialize(&chi).unwrap().homology_dims().unwrap();
            let float = k.specialize(&chi.to_float()).unwrap().homology_dims().unwrap();
            assert_eq!(exact, float);
        }
    }

    #[test]
    fn specialize_commutes_with_matrix_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..15 {
            let n = 2;
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let raw: Vec<(Vec<i64>, BigInt)> = (0..rng.gen_range(0..3))
                    .map(|_| {
                        (
                            (0..n).map(|_| rng.gen_range(-2..=2)).collect(),
                            BigInt::from(rng.gen_range(-3..=3)),
                        )
                    })
                    .collect();
                LaurentPoly::from_terms(n, raw).unwrap()
            };
            let a = Mat::from_rows(
                (0..2)
                    .map(|_| (0..3).map(|_| rand_poly(&mut rng)).collect())
                    .collect(),
                3,
            )
            .unwrap();
            let b = Mat::from_rows(
                (0..3)
                    .map(|_| (0..2).map(|_| rand_poly(&mut rng)).collect())
                    .collect(),
                2,
            )
            .unwrap();
            let chi = Character::from_ints(&[2, -3]).unwrap();
            let ab = laurent_mat_mul(&a, &b, n).unwrap();
            let lhs = ab.try_map(|p| p.eval(&chi)).unwrap();
            let sa = a.try_map(|p| p.eval(&chi)).unwrap();
            let sb = b.try_map(|p| p.eval(&chi)).unwrap();
            let rhs = scalar_mat_mul(&sa, &sb).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn complex_json_round_trip() {
        let k = koszul2();
        let j = k.to_json();
        let back = EquivariantComplex::from_json(&j).unwrap();
        assert_eq!(back, k);
        assert!(back.validate().is_ok());
        // malformed shapes rejected
        let bad = serde_json::json!({"n": 2, "counts": [1, 2, 1], "diffs": []});
        assert!(EquivariantComplex::from_json(&bad).is_err());
    }

    #[test]
    fn specialized_field_tracks_character() {
        let k = koszul2();
        let chi = Character::new(vec![
            Scalar::root_of_unity(3).unwrap(),
            Scalar::from_int(2),
        ])
        .unwrap();
        let s = k.specialize(&chi).unwrap();
        assert_eq!(s.field(), Field::Cyclotomic(3));
        // every entry embeds into that common field
        for i in 1..=2 {
            for e in s.diff(i).entries() {
                let (f, _) = unify(std::slice::from_ref(e)).unwrap();
                assert!(matches!(f, Field::Rational | Field::Cyclotomic(3)));
            }
        }
        assert_eq!(s.homology_dims().unwrap(), BettiVector(vec![0, 0, 0]));
    }
}
