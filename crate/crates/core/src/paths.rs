//! r-paths and the uncrossing construction on pairs of paths.
//!
//! For two r-paths `P` and `Q`, the integral vector `P + Q` has value 2 at
//! `r`, so any conformal decomposition of it into primitive vectors has
//! exactly two summands through `r`. Those two summands form the pair
//! returned by [`conformal_pair`]. Which of the two is the "meet" and which
//! the "join" carries no meaning; the pair is unordered and presented with
//! the lexicographically smaller support first.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::space::{Decomposition, RegularSpace, Sign, SignedVector};

/// A primitive vector with component +1 at the distinguished element `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RPath {
    underlying: SignedVector,
    r: usize,
}

impl RPath {
    /// Checks membership, primitivity and the +1 at `r`.
    pub fn new(space: &RegularSpace, underlying: SignedVector, r: usize) -> Result<Self> {
        if r >= space.ground_size() {
            return Err(Error::IndexOutOfRange {
                index: r,
                size: space.ground_size(),
            });
        }
        if underlying.get(r) != 1 {
            return Err(Error::NotAPath(format!("component at {} is not +1", r + 1)));
        }
        if !space.contains_signed(&underlying) {
            return Err(Error::NotAPath(format!("{underlying} is not in the space")));
        }
        if !space.is_elementary(&underlying.to_rationals())? {
            return Err(Error::NotAPath(format!("{underlying} is not elementary")));
        }
        Ok(Self { underlying, r })
    }

    /// For vectors already known to be circuits of the space.
    pub(crate) fn from_circuit(underlying: SignedVector, r: usize) -> Self {
        debug_assert_eq!(underlying.get(r), 1);
        Self { underlying, r }
    }

    pub fn vector(&self) -> &SignedVector {
        &self.underlying
    }

    pub fn into_vector(self) -> SignedVector {
        self.underlying
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn ground_size(&self) -> usize {
        self.underlying.ground_size()
    }

    pub fn get(&self, j: usize) -> i8 {
        self.underlying.get(j)
    }

    /// The 1-norm, i.e. the support size.
    pub fn len(&self) -> usize {
        self.underlying.support_size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for RPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.underlying.fmt(f)
    }
}

/// The two r-paths extracted from `P + Q`, smaller support first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPair {
    pub first: RPath,
    pub second: RPath,
}

impl PathPair {
    fn new(a: RPath, b: RPath) -> Self {
        if presentation_order(a.vector(), b.vector()) == Ordering::Greater {
            Self {
                first: b,
                second: a,
            }
        } else {
            Self {
                first: a,
                second: b,
            }
        }
    }
}

fn presentation_order(a: &SignedVector, b: &SignedVector) -> Ordering {
    a.support().cmp(b.support()).then_with(|| {
        let minus = |v: &SignedVector| {
            v.entries()
                .iter()
                .map(|&(_, s)| s == Sign::Minus)
                .collect::<Vec<_>>()
        };
        minus(a).cmp(&minus(b))
    })
}

/// 1-norm of a rational vector.
pub fn length(x: &[Rational]) -> Rational {
    x.iter().fold(Rational::zero(), |acc, v| acc + v.abs())
}

fn check_compatible(p: &RPath, q: &RPath) -> Result<()> {
    if p.r != q.r || p.ground_size() != q.ground_size() {
        return Err(Error::MismatchedPaths);
    }
    Ok(())
}

/// False iff `P_j * Q_j = -1` somewhere.
pub fn are_conformal(p: &RPath, q: &RPath) -> Result<bool> {
    check_compatible(p, q)?;
    Ok(p.underlying
        .entries()
        .iter()
        .all(|&(j, s)| i32::from(s.value()) * i32::from(q.get(j)) != -1))
}

pub(crate) fn sum_vector(p: &SignedVector, q: &SignedVector) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); p.ground_size()];
    for v in [p, q] {
        for &(j, s) in v.entries() {
            total[j] += rat(i64::from(s.value()));
        }
    }
    total
}

/// The full conformal decomposition of `P + Q`, including summands that
/// vanish at `r`.
pub fn pair_decomposition(space: &RegularSpace, p: &RPath, q: &RPath) -> Result<Decomposition> {
    check_compatible(p, q)?;
    space.conformal_decomposition(&sum_vector(&p.underlying, &q.underlying))
}

/// The two summands of a conformal decomposition of `P + Q` that take the
/// value +1 at `r`.
pub fn conformal_pair(space: &RegularSpace, p: &RPath, q: &RPath) -> Result<PathPair> {
    let decomposition = pair_decomposition(space, p, q)?;
    let through_r: Vec<&SignedVector> = decomposition
        .expanded()
        .filter(|v| v.get(p.r) != 0)
        .collect();
    if through_r.len() != 2 || through_r.iter().any(|v| v.get(p.r) != 1) {
        return Err(Error::Invariant(format!(
            "decomposition of {p} + {q} has {} summands through r",
            through_r.len()
        )));
    }
    Ok(PathPair::new(
        RPath::from_circuit(through_r[0].clone(), p.r),
        RPath::from_circuit(through_r[1].clone(), p.r),
    ))
}

/// Indices (0-based) at which each of the four pair properties fails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairPropertyReport {
    /// nonzero entries of the first member agree with P or Q
    pub a: Vec<usize>,
    /// nonzero entries of the second member agree with P or Q
    pub b: Vec<usize>,
    /// where P and Q disagree in sign, both members vanish
    pub c: Vec<usize>,
    /// where both members are nonzero, all four values coincide
    pub d: Vec<usize>,
    /// indices at which (c) applied, i.e. P_j Q_j = -1
    pub crossing: Vec<usize>,
    /// indices at which (d) applied
    pub shared: Vec<usize>,
}

impl PairPropertyReport {
    pub fn all_pass(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.c.is_empty() && self.d.is_empty()
    }
}

/// Property (b) is checked against the second member itself.
pub fn check_pair_properties(p: &RPath, q: &RPath, pair: &PathPair) -> PairPropertyReport {
    let mut report = PairPropertyReport::default();
    for j in 0..p.ground_size() {
        let (pj, qj) = (p.get(j), q.get(j));
        let (mj, nj) = (pair.first.get(j), pair.second.get(j));
        if mj != 0 && mj != pj && mj != qj {
            report.a.push(j);
        }
        if nj != 0 && nj != pj && nj != qj {
            report.b.push(j);
        }
        if i32::from(pj) * i32::from(qj) == -1 {
            report.crossing.push(j);
            if mj != 0 || nj != 0 {
                report.c.push(j);
            }
        }
        if mj != 0 && nj != 0 {
            report.shared.push(j);
            if !(mj == nj && nj == pj && pj == qj) {
                report.d.push(j);
            }
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthInequality {
    /// combined length of the extracted pair
    pub lhs: usize,
    /// `|P| + |Q|`
    pub rhs: usize,
    pub strict: bool,
}

pub fn length_inequality(space: &RegularSpace, p: &RPath, q: &RPath) -> Result<LengthInequality> {
    let pair = conformal_pair(space, p, q)?;
    let lhs = pair.first.len() + pair.second.len();
    let rhs = p.len() + q.len();
    Ok(LengthInequality {
        lhs,
        rhs,
        strict: lhs < rhs,
    })
}

/// All r-paths of the space: circuits through `r` oriented with +1 there.
pub fn paths_through(space: &RegularSpace, r: usize) -> Result<Vec<RPath>> {
    let mut out: Vec<RPath> = space
        .circuits()?
        .iter()
        .filter_map(|c| match c.get(r) {
            1 => Some(c.clone()),
            -1 => Some(c.negated()),
            _ => None,
        })
        .map(|v| RPath::from_circuit(v, r))
        .collect();
    out.sort_by(|a, b| a.vector().cmp(b.vector()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{SpaceMode, TuMatrix};

    // arcs sa, sb, ab, at, bt, r=(t,s)
    fn diamond() -> RegularSpace {
        let m = TuMatrix::new(&[
            vec![-1, -1, 0, 0, 0, 1],
            vec![1, 0, -1, -1, 0, 0],
            vec![0, 1, 1, 0, -1, 0],
            vec![0, 0, 0, 1, 1, -1],
        ])
        .unwrap();
        RegularSpace::build(m, SpaceMode::Kernel)
    }

    fn path(space: &RegularSpace, values: &[i64]) -> RPath {
        RPath::new(space, SignedVector::from_values(values).unwrap(), 5).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(length(&[rat(0), rat(0)]), rat(0));
        assert_eq!(length(&[rat(1), rat(1), rat(1)]), rat(3));
        assert_eq!(length(&[rat(-2), rat(1)]), rat(3));
        let space = diamond();
        assert_eq!(path(&space, &[1, 0, 1, 0, 1, 1]).len(), 4);
    }

    #[test]
    fn path_construction_is_checked() {
        let space = diamond();
        let not_member = SignedVector::from_values(&[1, 0, 0, 0, 0, 1]).unwrap();
        assert!(matches!(
            RPath::new(&space, not_member, 5),
            Err(Error::NotAPath(_))
        ));
        let wrong_sign = SignedVector::from_values(&[-1, 0, 0, -1, 0, -1]).unwrap();
        assert!(matches!(
            RPath::new(&space, wrong_sign, 5),
            Err(Error::NotAPath(_))
        ));
        let two_routes = SignedVector::from_values(&[1, 1, 0, 1, 1, 1]).unwrap();
        assert!(matches!(
            RPath::new(&space, two_routes, 5),
            Err(Error::NotAPath(_))
        ));
    }

    #[test]
    fn conformity() {
        let space = diamond();
        let p = path(&space, &[1, 0, 1, 0, 1, 1]);
        let q = path(&space, &[0, 1, -1, 1, 0, 1]);
        let upper = path(&space, &[1, 0, 0, 1, 0, 1]);
        let lower = path(&space, &[0, 1, 0, 0, 1, 1]);
        assert!(are_conformal(&p, &p).unwrap());
        assert!(!are_conformal(&p, &q).unwrap());
        assert!(are_conformal(&upper, &lower).unwrap());
    }

    #[test]
    fn pairs_and_inequalities() {
        let space = diamond();
        let p = path(&space, &[1, 0, 1, 0, 1, 1]);
        let q = path(&space, &[0, 1, -1, 1, 0, 1]);
        let upper = path(&space, &[1, 0, 0, 1, 0, 1]);
        let lower = path(&space, &[0, 1, 0, 0, 1, 1]);

        let crossed = conformal_pair(&space, &p, &q).unwrap();
        assert_eq!(
            crossed,
            PathPair {
                first: upper.clone(),
                second: lower.clone()
            }
        );
        let report = check_pair_properties(&p, &q, &crossed);
        assert!(report.all_pass());
        assert_eq!(report.crossing, vec![2]);
        assert_eq!(
            length_inequality(&space, &p, &q).unwrap(),
            LengthInequality {
                lhs: 6,
                rhs: 8,
                strict: true
            }
        );

        let disjoint = conformal_pair(&space, &lower, &upper).unwrap();
        assert_eq!(
            disjoint,
            PathPair {
                first: upper.clone(),
                second: lower.clone()
            }
        );
        assert!(!length_inequality(&space, &upper, &lower).unwrap().strict);

        let same = conformal_pair(&space, &p, &p).unwrap();
        assert_eq!(
            same,
            PathPair {
                first: p.clone(),
                second: p.clone()
            }
        );
        let report = check_pair_properties(&p, &p, &same);
        assert!(report.all_pass());
        assert_eq!(report.shared, vec![0, 2, 4, 5]);
        assert_eq!(
            length_inequality(&space, &p, &p).unwrap(),
            LengthInequality {
                lhs: 8,
                rhs: 8,
                strict: false
            }
        );
    }

    #[test]
    fn mismatched_paths() {
        let space = diamond();
        let p = path(&space, &[1, 0, 1, 0, 1, 1]);
        let q = RPath::new(&space, p.vector().clone(), 0).unwrap();
        assert_eq!(are_conformal(&p, &q), Err(Error::MismatchedPaths));
    }

    #[test]
    fn diamond_path_list() {
        let space = diamond();
        let all = paths_through(&space, 5).unwrap();
        let lens: Vec<usize> = all.iter().map(RPath::len).collect();
        assert_eq!(lens, vec![3, 3, 4, 4]);
        assert!(all.iter().all(|p| p.get(5) == 1));
    }
}
