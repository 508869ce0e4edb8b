use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::TuMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, rat};

pub const DEFAULT_TU_SIZE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TuVerdict {
    Unimodular,
    Violation(TuViolation),
}

impl TuVerdict {
    pub fn is_unimodular(&self) -> bool {
        matches!(self, TuVerdict::Unimodular)
    }
}

/// A square submatrix whose determinant is outside {-1, 0, +1}. Indices are
/// 0-based; `Display` prints them 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuViolation {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub det: BigInt,
}

impl fmt::Display for TuViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[usize]| xs.iter().map(|x| (x + 1).to_string()).join(",");
        write!(
            f,
            "submatrix rows {{{}}} cols {{{}}}, det {}",
            list(&self.rows),
            list(&self.cols),
            self.det
        )
    }
}

impl TuMatrix {
    /// Exhaustive determinant scan over every square submatrix, smallest
    /// first. Refuses matrices with `min(rows, cols) > size_limit`; pass a
    /// larger limit to override.
    pub fn verify_tu(&self, size_limit: usize) -> Result<TuVerdict> {
        let max_size = self.rows().min(self.cols());
        if max_size > size_limit {
            return Err(Error::SizeLimit {
                what: "matrix",
                size: max_size,
                limit: size_limit,
            });
        }
        // 1x1 minors are the entries, already checked.
        for k in 2..=max_size {
            for rows in (0..self.rows()).combinations(k) {
                for cols in (0..self.cols()).combinations(k) {
                    let det = self.minor(&rows, &cols);
                    if det.abs() > BigInt::one() {
                        return Ok(TuVerdict::Violation(TuViolation {
                            rows: rows.clone(),
                            cols,
                            det,
                        }));
                    }
                }
            }
        }
        Ok(TuVerdict::Unimodular)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let sub: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| i128::from(self.get(i, j))).collect())
            .collect();
        match linalg::bareiss_det(sub.clone()) {
            Some(d) => BigInt::from(d),
            None => {
                let sub = sub
                    .iter()
                    .map(|row| row.iter().map(|&x| rat(x as i64)).collect())
                    .collect();
                linalg::rational_det(sub).to_integer()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn incidence_matrices_are_unimodular() {
        assert!(triangle().verify_tu(8).unwrap().is_unimodular());
        assert!(diamond().verify_tu(8).unwrap().is_unimodular());
    }

    #[test]
    fn determinant_two_is_reported() {
        let m = TuMatrix::new(&[vec![1, 1], vec![-1, 1]]).unwrap();
        let TuVerdict::Violation(v) = m.verify_tu(8).unwrap() else {
            panic!("expected a violation");
        };
        assert_eq!(v.to_string(), "submatrix rows {1,2} cols {1,2}, det 2");
    }

    #[test]
    fn single_entry() {
        let m = TuMatrix::new(&[vec![1]]).unwrap();
        assert!(m.verify_tu(8).unwrap().is_unimodular());
    }

    #[test]
    fn size_guard() {
        let m = TuMatrix::new(&vec![vec![0; 4]; 3]).unwrap();
        assert!(matches!(
            m.verify_tu(2),
            Err(Error::SizeLimit {
                size: 3,
                limit: 2,
                ..
            })
        ));
        assert!(m.verify_tu(3).unwrap().is_unimodular());
    }
}
