use itertools::Itertools;
use num_traits::{Signed, Zero};

use super::signed::signs_of;
use super::{RegularSpace, SignedVector};
use crate::error::{Error, Result};
use crate::linalg::{self, format_rational, Rational};

/// Largest ground set the exhaustive circuit scan accepts by default.
pub const DEFAULT_CIRCUIT_LIMIT: usize = 20;

impl RegularSpace {
    /// Every primitive vector of the space up to negation, canonically
    /// oriented (first nonzero component +1) and sorted by
    /// [`SignedVector`]'s order. Computed once and cached.
    pub fn circuits(&self) -> Result<&[SignedVector]> {
        self.enumerate_circuits(DEFAULT_CIRCUIT_LIMIT)
    }

    pub fn enumerate_circuits(&self, limit: usize) -> Result<&[SignedVector]> {
        if let Some(cached) = self.circuits.get() {
            return Ok(cached);
        }
        let n = self.ground_size();
        if n > limit || n > 64 {
            return Err(Error::SizeLimit {
                what: "ground set",
                size: n,
                limit: limit.min(64),
            });
        }
        let found = self.scan_circuits()?;
        let _ = self.circuits.set(found);
        Ok(self.circuits.get().expect("just set"))
    }

    /// Supports are scanned by increasing cardinality. A support that
    /// contains no smaller circuit has only independent proper subsets, so
    /// it is a circuit exactly when its constraint columns are dependent.
    fn scan_circuits(&self) -> Result<Vec<SignedVector>> {
        let n = self.ground_size();
        let max_size = (self.constraints.len() + 1).min(n);
        let mut masks: Vec<u64> = Vec::new();
        let mut found = Vec::new();
        for k in 1..=max_size {
            for support in (0..n).combinations(k) {
                let mask = support.iter().fold(0u64, |m, &j| m | (1 << j));
                if masks.iter().any(|&c| c & !mask == 0) {
                    continue;
                }
                if self.support_rank(&support) == k {
                    continue;
                }
                found.push(self.circuit_on(&support)?);
                masks.push(mask);
            }
        }
        Ok(found)
    }

    /// The unique (up to scale) member supported on a minimal dependent
    /// support, normalized and checked for regularity.
    fn circuit_on(&self, support: &[usize]) -> Result<SignedVector> {
        let sub: Vec<Vec<Rational>> = self
            .constraints
            .iter()
            .map(|row| support.iter().map(|&j| row[j].clone()).collect())
            .collect();
        let kernel = linalg::kernel_of_rows(&sub, support.len());
        if kernel.len() != 1 || kernel[0].iter().any(Zero::is_zero) {
            return Err(Error::Invariant(format!(
                "support {:?} is not minimally dependent",
                one_based(support)
            )));
        }
        let mut full = vec![Rational::zero(); self.ground_size()];
        for (&j, x) in support.iter().zip(&kernel[0]) {
            full[j] = x.clone();
        }
        primitive_from_elementary(&full)
    }

    /// True iff no nonzero member of the space has support strictly inside
    /// the support of `v`.
    pub fn is_elementary(&self, v: &[Rational]) -> Result<bool> {
        self.check_member(v)?;
        if linalg::is_zero_vector(v) {
            return Err(Error::ZeroVector);
        }
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        Ok(self.restricted_dimension(&support) == 1)
    }
}

/// Rescales an elementary vector so its components are in {-1, 0, +1},
/// keeping its signs. Fails loudly when the magnitudes differ, which can only
/// happen in a non-regular space.
pub(crate) fn primitive_from_elementary(x: &[Rational]) -> Result<SignedVector> {
    let lead = x
        .iter()
        .find(|v| !v.is_zero())
        .ok_or(Error::ZeroVector)?
        .abs();
    if x.iter().any(|v| !v.is_zero() && v.abs() != lead) {
        let support: Vec<usize> = (0..x.len()).filter(|&j| !x[j].is_zero()).collect();
        return Err(Error::NonRegular {
            support: one_based(&support),
            entries: support
                .iter()
                .map(|&j| format_rational(&(&x[j] / &lead)))
                .collect(),
        });
    }
    SignedVector::new(x.len(), signs_of(x))
}

pub(crate) fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|j| j + 1).collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{SpaceMode, TuMatrix};
    use super::*;

    #[test]
    fn triangle_has_one_circuit() {
        let space = RegularSpace::build(triangle(), SpaceMode::Kernel);
        let circuits = space.circuits().unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].to_string(), "+1 +2 +3");
    }

    #[test]
    fn single_row_rowspace() {
        let space =
            RegularSpace::build(TuMatrix::new(&[vec![1, -1]]).unwrap(), SpaceMode::Rowspace);
        let circuits = space.circuits().unwrap();
        assert_eq!(circuits.len(), 1);
        assert_eq!(circuits[0].to_dense(), vec![1, -1]);
    }

    #[test]
    fn diamond_circuits_are_its_cycles() {
        // underlying undirected diamond with chord r=(t,s): cycles
        // {sa,ab,sb} {ab,at,bt} {sa,at,r} {sb,bt,r} {sa,ab,bt,r}
        // {sb,ab,at,r} {sa,sb,at,bt}
        let space = RegularSpace::build(diamond(), SpaceMode::Kernel);
        let circuits = space.circuits().unwrap();
        assert_eq!(circuits.len(), 7);
        for c in circuits {
            assert!(space.contains_signed(c));
            assert!(space.is_elementary(&c.to_rationals()).unwrap());
        }
    }

    #[test]
    fn guard_refuses_large_ground_sets() {
        let space = RegularSpace::build(triangle(), SpaceMode::Kernel);
        assert!(matches!(
            space.enumerate_circuits(2),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn elementary_checks() {
        let tri = RegularSpace::build(triangle(), SpaceMode::Kernel);
        assert!(tri.is_elementary(&ints(&[1, 1, 1])).unwrap());
        assert!(tri.is_elementary(&ints(&[-2, -2, -2])).unwrap());
        assert_eq!(tri.is_elementary(&ints(&[0, 0, 0])), Err(Error::ZeroVector));
        assert_eq!(tri.is_elementary(&ints(&[1, 0, 0])), Err(Error::NotInSpace));

        // two vertices joined by arcs e1=(u,v), e2=(v,u), plus a second
        // disjoint pair e3=(x,y), e4=(y,x): two disjoint 2-cycles
        let two_cycles = TuMatrix::new(&[
            vec![-1, 1, 0, 0],
            vec![1, -1, 0, 0],
            vec![0, 0, -1, 1],
            vec![0, 0, 1, -1],
        ])
        .unwrap();
        let space = RegularSpace::build(two_cycles, SpaceMode::Kernel);
        assert!(space.is_elementary(&ints(&[1, 1, 0, 0])).unwrap());
        assert!(!space.is_elementary(&ints(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn non_regular_space_is_rejected() {
        // columns 1,2 have determinant -2; the row space contains the
        // elementary vector (1,1,0) + (1,-1,1) = (2,0,1)
        let m = TuMatrix::new(&[vec![1, 1, 0], vec![1, -1, 1]]).unwrap();
        let space = RegularSpace::build(m, SpaceMode::Rowspace);
        assert!(matches!(space.circuits(), Err(Error::NonRegular { .. })));
    }
}
