//! Exact rational linear algebra.
//!
//! Everything here works over arbitrary-precision rationals, with a
//! fraction-free integer path (Bareiss elimination) for the rank and
//! determinant scans that run in tight loops.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Parses `"p/q"` or an integer. Rejects a zero denominator.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(Rational::new(num, den))
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Formats as an integer when the denominator is one, `p/q` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Dense rectangular matrix of rationals, at least 1x1.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().copied().map(rat).collect())
                .collect(),
        )
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        f.debug_struct("RationalMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &rows)
            .finish()
    }
}

/// Reduced row-echelon form of `m` and its pivot columns.
pub fn row_reduce(m: &RationalMatrix) -> (RationalMatrix, Vec<usize>) {
    let (rows, pivots) = rref_rows(m.to_rows(), m.cols);
    let reduced = RationalMatrix {
        rows: m.rows,
        cols: m.cols,
        entries: rows.into_iter().flatten().collect(),
    };
    (reduced, pivots)
}

pub fn rank(m: &RationalMatrix) -> usize {
    row_reduce(m).1.len()
}

/// Basis of the null space of `m`, one vector per free column, each scaled
/// so that its first nonzero entry is +1.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    kernel_of_rows(&m.to_rows(), m.cols)
}

/// True iff `v` is a rational combination of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool> {
    if let Some(bad) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: bad.len(),
        });
    }
    if is_zero_vector(v) {
        return Ok(true);
    }
    let base_rank = rank_of_rows(basis.to_vec(), v.len());
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    Ok(rank_of_rows(extended, v.len()) == base_rank)
}

/// Row reduction over a possibly empty list of rows of width `cols`.
pub(crate) fn rref_rows(
    mut rows: Vec<Vec<Rational>>,
    cols: usize,
) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut lead = 0;
    for col in 0..cols {
        if lead == rows.len() {
            break;
        }
        let Some(found) = (lead..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(lead, found);
        let inv = rows[lead][col].recip();
        for x in rows[lead].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[lead].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == lead || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        lead += 1;
    }
    (rows, pivots)
}

pub(crate) fn rank_of_rows(rows: Vec<Vec<Rational>>, cols: usize) -> usize {
    rref_rows(rows, cols).1.len()
}

pub(crate) fn kernel_of_rows(rows: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = rref_rows(rows.to_vec(), cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -reduced[i][free].clone();
            }
            normalize_leading(&mut v);
            v
        })
        .collect()
}

/// Scales `v` so its first nonzero entry is +1. No-op on the zero vector.
pub(crate) fn normalize_leading(v: &mut [Rational]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x /= &lead;
            }
        }
    }
}

/// Scales a rational row to a primitive integer row. `None` if an entry
/// does not fit in `i128`.
pub(crate) fn integer_row(row: &[Rational]) -> Option<Vec<i128>> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| {
        num_integer::Integer::lcm(&acc, x.denom())
    });
    row.iter()
        .map(|x| (x.numer() * (&lcm / x.denom())).to_i128())
        .collect()
}

/// Rank by fraction-free elimination. Every intermediate value is a minor of
/// the input, so unimodular inputs never grow. `None` on overflow.
pub(crate) fn bareiss_rank(mut m: Vec<Vec<i128>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, found);
        let pivot = m[rank][col];
        for i in rank + 1..rows {
            let (upper, lower) = m.split_at_mut(i);
            let (pivot_row, row) = (&upper[rank], &mut lower[0]);
            let factor = row[col];
            for (x, &p) in row[col + 1..cols].iter_mut().zip(&pivot_row[col + 1..cols]) {
                let a = x.checked_mul(pivot)?;
                let b = factor.checked_mul(p)?;
                *x = a.checked_sub(b)? / prev;
            }
            row[col] = 0;
        }
        prev = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Determinant of a square integer matrix by Bareiss elimination. `None`
/// on overflow.
pub(crate) fn bareiss_det(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    let mut sign: i128 = 1;
    let mut prev: i128 = 1;
    for k in 0..n {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| m[i][k] != 0) else {
                return Some(0);
            };
            m.swap(k, swap);
            sign = -sign;
        }
        let pivot = m[k][k];
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(pivot)?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
            m[i][k] = 0;
        }
        prev = pivot;
    }
    Some(if n == 0 { 1 } else { sign * m[n - 1][n - 1] })
}

/// Exact determinant over the rationals.
pub(crate) fn rational_det(rows: Vec<Vec<Rational>>) -> Rational {
    let n = rows.len();
    let mut m = rows;
    let mut det = Rational::one();
    for k in 0..n {
        let Some(found) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if found != k {
            m.swap(k, found);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            let factor = &m[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            let (upper, lower) = m.split_at_mut(i);
            for (x, p) in lower[0][k..n].iter_mut().zip(&upper[k][k..n]) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// Rank of the columns `cols` of `rows`, trying the integer path first.
pub(crate) fn column_rank(
    rows: &[Vec<Rational>],
    int_rows: Option<&[Vec<i128>]>,
    cols: &[usize],
) -> usize {
    if rows.is_empty() || cols.is_empty() {
        return 0;
    }
    if let Some(int_rows) = int_rows {
        let sub: Vec<Vec<i128>> = int_rows
            .iter()
            .map(|row| cols.iter().map(|&c| row[c]).collect())
            .collect();
        if let Some(r) = bareiss_rank(sub) {
            return r;
        }
    }
    let sub: Vec<Vec<Rational>> = rows
        .iter()
        .map(|row| cols.iter().map(|&c| row[c].clone()).collect())
        .collect();
    rank_of_rows(sub, cols.len())
}
