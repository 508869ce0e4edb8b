//! Regular spaces: kernels and row spaces of totally unimodular matrices.

mod circuits;
mod conformal;
mod signed;
mod tu;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rational, RationalMatrix};

pub use circuits::DEFAULT_CIRCUIT_LIMIT;
pub use conformal::Decomposition;
pub use signed::{Sign, SignedVector};
pub use tu::{TuVerdict, TuViolation, DEFAULT_TU_SIZE_LIMIT};

/// Integer matrix with entries in {-1, 0, +1}, declared totally unimodular.
///
/// Only the entry range is checked on construction; [`TuMatrix::verify_tu`]
/// runs the full (exponential) determinant scan on request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl TuMatrix {
    pub fn new(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !(-1..=1).contains(&x) {
                    return Err(Error::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: x,
                    });
                }
                entries.push(x as i8);
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| i64::from(x)).collect())
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix::from_i64_rows(&self.to_i64_rows()).expect("nonempty by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceMode {
    /// The space is `ker M`.
    Kernel,
    /// The space is the row space of `M`.
    Rowspace,
}

impl SpaceMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceMode::Kernel => "kernel",
            SpaceMode::Rowspace => "rowspace",
        }
    }
}

impl fmt::Display for SpaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SpaceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kernel" => Ok(SpaceMode::Kernel),
            "rowspace" => Ok(SpaceMode::Rowspace),
            _ => Err(Error::parse(
                0,
                format!("unknown mode {s:?} (expected kernel or rowspace)"),
            )),
        }
    }
}

/// A regular subspace of rational n-space with an exact basis.
///
/// Internally the space is also kept as the kernel of a constraint matrix
/// (`V = ker C`), which is what membership and support-restricted
/// subspace queries run against. The circuit list is computed lazily, once.
pub struct RegularSpace {
    mode: SpaceMode,
    generator: TuMatrix,
    basis: Vec<Vec<Rational>>,
    constraints: Vec<Vec<Rational>>,
    int_constraints: Option<Vec<Vec<i128>>>,
    circuits: OnceLock<Vec<SignedVector>>,
}

impl RegularSpace {
    /// Builds the kernel or row space of `generator`.
    pub fn build(generator: TuMatrix, mode: SpaceMode) -> Self {
        let n = generator.cols();
        let (reduced, pivots) = linalg::rref_rows(generator.to_rational().to_rows(), n);
        let independent_rows: Vec<Vec<Rational>> = reduced.into_iter().take(pivots.len()).collect();
        let (basis, constraints) = match mode {
            SpaceMode::Kernel => {
                let basis = linalg::kernel_of_rows(&independent_rows, n);
                (basis, independent_rows)
            }
            SpaceMode::Rowspace => {
                let orthogonal = linalg::kernel_of_rows(&independent_rows, n);
                (independent_rows, orthogonal)
            }
        };
        let int_constraints = constraints
            .iter()
            .map(|row| linalg::integer_row(row))
            .collect::<Option<Vec<_>>>();
        Self {
            mode,
            generator,
            basis,
            constraints,
            int_constraints,
            circuits: OnceLock::new(),
        }
    }

    pub fn ground_size(&self) -> usize {
        self.generator.cols()
    }

    pub fn mode(&self) -> SpaceMode {
        self.mode
    }

    pub fn generator(&self) -> &TuMatrix {
        &self.generator
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Rows of a matrix whose kernel is this space.
    pub fn constraints(&self) -> &[Vec<Rational>] {
        &self.constraints
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        self.check_dimension(v.len())?;
        Ok(self
            .constraints
            .iter()
            .all(|row| linalg::dot(row, v).is_zero()))
    }

    pub fn contains_signed(&self, v: &SignedVector) -> bool {
        v.ground_size() == self.ground_size()
            && self.constraints.iter().all(|row| {
                v.entries()
                    .iter()
                    .fold(Rational::zero(), |acc, &(j, s)| {
                        acc + &row[j] * rat(i64::from(s.value()))
                    })
                    .is_zero()
            })
    }

    /// Dimension of `{x in V : x_j = 0 for all j outside support}`.
    pub fn restricted_dimension(&self, support: &[usize]) -> usize {
        support.len() - self.support_rank(support)
    }

    pub(crate) fn support_rank(&self, support: &[usize]) -> usize {
        linalg::column_rank(&self.constraints, self.int_constraints.as_deref(), support)
    }

    pub(crate) fn check_dimension(&self, len: usize) -> Result<()> {
        if len != self.ground_size() {
            return Err(Error::DimensionMismatch {
                expected: self.ground_size(),
                found: len,
            });
        }
        Ok(())
    }

    pub(crate) fn check_member(&self, v: &[Rational]) -> Result<()> {
        if !self.contains(v)? {
            return Err(Error::NotInSpace);
        }
        Ok(())
    }
}

impl fmt::Debug for RegularSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RegularSpace")
            .field("mode", &self.mode)
            .field("ground_size", &self.ground_size())
            .field("dimension", &self.dimension())
            .finish()
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Arcs (s,a), (a,t), (t,s) over vertices s, a, t.
    pub fn triangle() -> TuMatrix {
        TuMatrix::new(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]).unwrap()
    }

    /// Arcs sa, sb, ab, at, bt, r=(t,s) over vertices s, a, b, t.
    pub fn diamond() -> TuMatrix {
        TuMatrix::new(&[
            vec![-1, -1, 0, 0, 0, 1],
            vec![1, 0, -1, -1, 0, 0],
            vec![0, 1, 1, 0, -1, 0],
            vec![0, 0, 0, 1, 1, -1],
        ])
        .unwrap()
    }

    pub fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().copied().map(rat).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn rejects_out_of_range_entries() {
        assert_eq!(
            TuMatrix::new(&[vec![1, 2]]),
            Err(Error::EntryOutOfRange {
                row: 0,
                col: 1,
                value: 2
            })
        );
    }

    #[test]
    fn single_row_spaces() {
        let m = TuMatrix::new(&[vec![1, -1]]).unwrap();
        let kernel = RegularSpace::build(m.clone(), SpaceMode::Kernel);
        assert_eq!(kernel.basis(), &[ints(&[1, 1])]);
        let rows = RegularSpace::build(m, SpaceMode::Rowspace);
        assert_eq!(rows.basis(), &[ints(&[1, -1])]);
    }

    #[test]
    fn triangle_kernel() {
        let space = RegularSpace::build(triangle(), SpaceMode::Kernel);
        assert_eq!(space.basis(), &[ints(&[1, 1, 1])]);
        assert!(space.contains(&ints(&[2, 2, 2])).unwrap());
        assert!(!space.contains(&ints(&[1, 0, 0])).unwrap());
        assert!(space.contains(&ints(&[1])).is_err());
    }

    #[test]
    fn dimensions_follow_rank() {
        // rank of a connected 4-vertex incidence matrix is 3
        let k = RegularSpace::build(diamond(), SpaceMode::Kernel);
        let r = RegularSpace::build(diamond(), SpaceMode::Rowspace);
        assert_eq!(k.dimension(), 3);
        assert_eq!(r.dimension(), 3);
        for b in r.basis() {
            assert!(r.contains(b).unwrap());
        }
        for b in k.basis() {
            assert!(k.contains(b).unwrap());
        }
    }
}
