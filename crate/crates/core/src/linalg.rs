//! Exact integer and rational linear algebra.
//!
//! Everything here runs on arbitrary-precision integers: Smith normal form
//! entries grow quickly even for small inputs, and every downstream result
//! (quotient groups, kernels, cohomology orders) must be exact.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, got: entries.len() });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from machine-integer rows. All rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            entries.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        Ok(Self { rows: rows.len(), cols, entries })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns<R: AsRef<[i64]>>(columns: &[R], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: c.len() });
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, got: other.rows * other.cols });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, got: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    pub fn rank(&self) -> usize {
        smith_normal_form(self).rank()
    }

    /// Entries as machine integers, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn from_row_vecs(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        Self { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Rational vector with one shared positive denominator, fully reduced.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatVector {
    numerators: Vec<BigInt>,
    denominator: BigInt,
}

impl RatVector {
    /// Panics if `denominator` is zero.
    pub fn new(numerators: Vec<BigInt>, denominator: BigInt) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let mut v = Self { numerators, denominator };
        v.normalize();
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&x| BigInt::from(x)).collect(), BigInt::one())
    }

    /// `values / denominator`.
    pub fn from_scaled(values: &[i64], denominator: i64) -> Self {
        Self::new(values.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(denominator))
    }

    pub fn from_rationals(values: &[BigRational]) -> Self {
        let den = values.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let nums = values.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Self::new(nums, den)
    }

    pub fn zero(dim: usize) -> Self {
        Self { numerators: vec![BigInt::zero(); dim], denominator: BigInt::one() }
    }

    fn normalize(&mut self) {
        if self.denominator.is_negative() {
            self.denominator = -&self.denominator;
            for x in &mut self.numerators {
                *x = -&*x;
            }
        }
        let g = self.numerators.iter().fold(self.denominator.clone(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            for x in &mut self.numerators {
                *x /= &g;
            }
            self.denominator /= &g;
        }
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.numerators
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn get(&self, i: usize) -> BigRational {
        BigRational::new(self.numerators[i].clone(), self.denominator.clone())
    }

    pub fn components(&self) -> Vec<BigRational> {
        (0..self.dim()).map(|i| self.get(i)).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.numerators.iter().all(Zero::is_zero)
    }

    /// Standard inner product.
    pub fn dot(&self, other: &Self) -> BigRational {
        let num: BigInt = self.numerators.iter().zip(&other.numerators).map(|(a, b)| a * b).sum();
        BigRational::new(num, &self.denominator * &other.denominator)
    }

    pub fn add(&self, other: &Self) -> Self {
        let den = self.denominator.lcm(&other.denominator);
        let (fa, fb) = (&den / &self.denominator, &den / &other.denominator);
        let nums = self.numerators.iter().zip(&other.numerators).map(|(a, b)| a * &fa + b * &fb).collect();
        Self::new(nums, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigRational::from_integer(-BigInt::one())))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let nums = self.numerators.iter().map(|a| a * q.numer()).collect();
        Self::new(nums, &self.denominator * q.denom())
    }

    /// The numerators rescaled to the given common denominator, if it is a multiple
    /// of the reduced one.
    pub fn scaled_to(&self, denominator: i64) -> Option<Vec<i64>> {
        let d = BigInt::from(denominator);
        if !d.is_multiple_of(&self.denominator) {
            return None;
        }
        let f = &d / &self.denominator;
        self.numerators.iter().map(|x| (x * &f).to_i64()).collect()
    }

    pub fn denominator_i64(&self) -> i64 {
        self.denominator.to_i64().expect("denominator fits in i64")
    }
}

impl PartialOrd for RatVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RatVector {
    /// Lexicographic by rational value.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.numerators.iter().zip(&other.numerators) {
            let ord = (a * &other.denominator).cmp(&(b * &self.denominator));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.denominator.is_one() {
            write!(f, "1/{} ", self.denominator)?;
        }
        write!(f, "(")?;
        for (i, x) in self.numerators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Smith normal form `U·A·V = D` with `d₁ | d₂ | …` on the diagonal.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// row[dst] -= q * row[src]
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row) {
        *x -= q * s;
    }
}

/// col[dst] -= q * col[src]
fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.to_rows();
    let mut u = IntMatrix::identity(m).to_rows();
    let mut v = IntMatrix::identity(n).to_rows();

    for t in 0..m.min(n) {
        loop {
            // Minimal-absolute-value pivot limits entry growth.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j].is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish_smith(d, u, v, m, n);
            };
            d.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut d, t, pj);
            swap_cols(&mut v, t, pj);

            let p = d[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&p);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..n {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&p);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[i][j].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
    }
    finish_smith(d, u, v, m, n)
}

fn finish_smith(
    mut d: Vec<Vec<BigInt>>,
    mut u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
) -> SmithForm {
    for i in 0..m.min(n) {
        if d[i][i].is_negative() {
            for x in d[i].iter_mut() {
                *x = -&*x;
            }
            for x in u[i].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm {
        d: IntMatrix::from_row_vecs(d, n),
        u: IntMatrix::from_row_vecs(u, m),
        v: IntMatrix::from_row_vecs(v, n),
    }
}

/// Row-style Hermite normal form: echelon rows with positive pivots, entries above
/// each pivot reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_normal_form(a: &IntMatrix) -> IntMatrix {
    let cols = a.cols();
    let mut rows = a.to_rows();
    let mut r = 0;
    for c in 0..cols {
        loop {
            let Some(p) = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&i, &j| rows[i][c].abs().cmp(&rows[j][c].abs()))
            else {
                break;
            };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                row_axpy(&mut rows, i, r, &q);
                done &= rows[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        if r >= rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            row_axpy(&mut rows, i, r, &q);
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    IntMatrix::from_row_vecs(rows, cols)
}

/// A Z-basis of `{v : A·v = 0}`, in Hermite normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let n = a.cols();
    if r == n {
        return Vec::new();
    }
    let basis: Vec<Vec<BigInt>> = (r..n).map(|j| snf.v.column(j)).collect();
    let hnf = hermite_normal_form(&IntMatrix::from_row_vecs(basis, n));
    hnf.to_rows()
}

/// Nontrivial invariant factors of `Zᵐ / (column span of A)` for an `m × n` matrix.
pub fn cokernel_invariant_factors(a: &IntMatrix) -> Result<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    if rank < a.rows() {
        return Err(Error::InfiniteQuotient { rank, dim: a.rows() });
    }
    Ok(snf.invariant_factors().into_iter().filter(|x| !x.is_one()).collect())
}

/// Inverse over the rationals, or `None` when singular.
pub fn rational_inverse(a: &IntMatrix) -> Option<Vec<Vec<BigRational>>> {
    let n = a.rows();
    if n != a.cols() {
        return None;
    }
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> =
                a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].recip();
        for x in m[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let pivot_row = m[c].clone();
                for (x, p) in m[i].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Converts a slice of machine integers to big integers.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Converts back to machine integers; panics on overflow (only used where
/// entries are bounded by construction).
pub fn small_vec(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect()
}
