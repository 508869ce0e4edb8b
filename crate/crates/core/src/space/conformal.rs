use num_traits::{Signed, ToPrimitive, Zero};

use super::circuits::primitive_from_elementary;
use super::{RegularSpace, SignedVector};
use crate::error::{Error, Result};
use crate::linalg::{self, rat, Rational};

/// Primitive summands with multiplicities, in extraction order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Decomposition {
    pub terms: Vec<(SignedVector, u64)>,
}

impl Decomposition {
    /// Number of summands counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.terms.iter().map(|(_, k)| k).sum()
    }

    pub fn sum(&self, ground_size: usize) -> Vec<Rational> {
        let mut total = vec![Rational::zero(); ground_size];
        for (p, k) in &self.terms {
            for &(j, s) in p.entries() {
                total[j] += rat(i64::from(s.value()) * *k as i64);
            }
        }
        total
    }

    /// Each summand repeated according to its multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &SignedVector> {
        self.terms
            .iter()
            .flat_map(|(p, k)| std::iter::repeat_n(p, *k as usize))
    }
}

impl RegularSpace {
    /// A primitive vector whose support lies inside `x`'s and whose signs
    /// agree with `x` there.
    pub fn find_conforming_elementary(&self, x: &[Rational]) -> Result<SignedVector> {
        self.check_member(x)?;
        if linalg::is_zero_vector(x) {
            return Err(Error::ZeroVector);
        }
        self.conforming_elementary_unchecked(x)
    }

    /// Shrinks the support until the support-restricted subspace is one
    /// dimensional. Each step moves along a second direction `z` by the
    /// smallest positive ratio `y_j / z_j`, which zeroes at least one
    /// component without flipping any sign.
    fn conforming_elementary_unchecked(&self, x: &[Rational]) -> Result<SignedVector> {
        let n = self.ground_size();
        let mut y = x.to_vec();
        loop {
            let support: Vec<usize> = (0..n).filter(|&j| !y[j].is_zero()).collect();
            let restricted: Vec<Vec<Rational>> = self
                .constraints
                .iter()
                .map(|row| support.iter().map(|&j| row[j].clone()).collect())
                .collect();
            let local = linalg::kernel_of_rows(&restricted, support.len());
            if local.len() <= 1 {
                return primitive_from_elementary(&y);
            }
            let y_local: Vec<Rational> = support.iter().map(|&j| y[j].clone()).collect();
            let z = local
                .into_iter()
                .find(|z| !parallel(z, &y_local))
                .expect("two independent directions cannot both be parallel to y");
            let mut best: Option<Rational> = None;
            for (yj, zj) in y_local.iter().zip(&z) {
                if zj.is_zero() {
                    continue;
                }
                let ratio = (yj / zj).abs();
                if best.as_ref().is_none_or(|b| ratio < *b) {
                    best = Some(ratio);
                }
            }
            let step = best.expect("z is nonzero");
            // orient z so that the minimizing component shrinks
            let flip = support.iter().zip(&z).any(|(&j, zj)| {
                !zj.is_zero() && (&y[j] / zj).abs() == step && (&y[j] / zj).is_negative()
            });
            for (&j, zj) in support.iter().zip(&z) {
                let delta = &step * zj;
                if flip {
                    y[j] += delta;
                } else {
                    y[j] -= delta;
                }
            }
        }
    }

    /// Writes the integral member `x` as a sum of primitive vectors that all
    /// conform to `x`. Each round extracts a conforming primitive `p` and
    /// subtracts it `min |x_j|` times over its support.
    pub fn conformal_decomposition(&self, x: &[Rational]) -> Result<Decomposition> {
        self.check_member(x)?;
        if x.iter().any(|v| !v.is_integer()) {
            return Err(Error::NotIntegral);
        }
        let mut residual = x.to_vec();
        let mut out = Decomposition::default();
        while !linalg::is_zero_vector(&residual) {
            let p = self.conforming_elementary_unchecked(&residual)?;
            let step = p
                .support()
                .map(|j| residual[j].abs())
                .min()
                .expect("support is nonempty");
            let times = step
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::Invariant("multiplicity exceeds u64".into()))?;
            for &(j, s) in p.entries() {
                residual[j] -= &step * rat(i64::from(s.value()));
            }
            out.terms.push((p, times));
        }
        Ok(out)
    }
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    let Some(k) = a.iter().position(|x| !x.is_zero()) else {
        return true;
    };
    if b[k].is_zero() {
        return false;
    }
    let scale = &b[k] / &a[k];
    a.iter().zip(b).all(|(x, y)| x * &scale == *y)
}
