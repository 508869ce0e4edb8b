use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn of(value: &Rational) -> Option<Sign> {
        if value.is_positive() {
            Some(Sign::Plus)
        } else if value.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }
}

/// A nonzero {-1, 0, +1} vector over the ground set, stored sparsely.
///
/// The `Ord` impl is the project-wide tie-breaking order: smaller support
/// first, then lexicographically smaller support, then the sign pattern with
/// `+1` preferred at the first differing index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedVector {
    ground_size: usize,
    entries: Vec<(usize, Sign)>,
}

impl SignedVector {
    /// Entries may arrive in any order; duplicate indices are rejected.
    pub fn new(ground_size: usize, mut entries: Vec<(usize, Sign)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::ZeroVector);
        }
        entries.sort_by_key(|&(j, _)| j);
        for pair in entries.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::Parse {
                    line: 0,
                    message: format!("duplicate index {}", pair[0].0 + 1),
                });
            }
        }
        if let Some(&(j, _)) = entries.last() {
            if j >= ground_size {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    size: ground_size,
                });
            }
        }
        Ok(Self {
            ground_size,
            entries,
        })
    }

    /// From a dense vector whose entries must all lie in {-1, 0, +1}.
    pub fn from_values(values: &[i64]) -> Result<Self> {
        let mut entries = Vec::new();
        for (j, &x) in values.iter().enumerate() {
            match x {
                0 => {}
                1 => entries.push((j, Sign::Plus)),
                -1 => entries.push((j, Sign::Minus)),
                other => {
                    return Err(Error::EntryOutOfRange {
                        row: 0,
                        col: j,
                        value: other,
                    })
                }
            }
        }
        Self::new(values.len(), entries)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn entries(&self) -> &[(usize, Sign)] {
        &self.entries
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(j, _)| j)
    }

    /// Number of nonzero components, which is also the 1-norm.
    pub fn support_size(&self) -> usize {
        self.entries.len()
    }

    pub fn support_mask(&self) -> u64 {
        self.support().fold(0, |m, j| m | (1 << j))
    }

    pub fn get(&self, j: usize) -> i8 {
        self.entries
            .binary_search_by_key(&j, |&(i, _)| i)
            .map_or(0, |k| self.entries[k].1.value())
    }

    pub fn negated(&self) -> Self {
        Self {
            ground_size: self.ground_size,
            entries: self.entries.iter().map(|&(j, s)| (j, s.negate())).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<i64> {
        let mut v = vec![0; self.ground_size];
        for &(j, s) in &self.entries {
            v[j] = i64::from(s.value());
        }
        v
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.to_dense().into_iter().map(rat).collect()
    }

    /// True iff `x_j * self_j > 0` on the whole support of `self`.
    pub fn conforms_to(&self, x: &[Rational]) -> bool {
        self.entries
            .iter()
            .all(|&(j, s)| Sign::of(&x[j]) == Some(s))
    }

    /// Parses the 1-based signed support format, e.g. `"+1 -3 +4"`.
    pub fn parse_support(ground_size: usize, text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for token in text.split_whitespace() {
            let (sign, rest) = match token.as_bytes().first() {
                Some(b'+') => (Sign::Plus, &token[1..]),
                Some(b'-') => (Sign::Minus, &token[1..]),
                _ => {
                    return Err(Error::parse(
                        0,
                        format!("signed index expected, found {token:?}"),
                    ));
                }
            };
            let index: usize = rest
                .parse()
                .map_err(|_| Error::parse(0, format!("bad index in {token:?}")))?;
            if index == 0 {
                return Err(Error::parse(0, "indices are 1-based"));
            }
            entries.push((index - 1, sign));
        }
        Self::new(ground_size, entries)
    }
}

impl fmt::Display for SignedVector {
    /// 1-based signed support, e.g. `+1 -3 +4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(j, s)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            let sign = if s == Sign::Plus { '+' } else { '-' };
            write!(f, "{sign}{}", j + 1)?;
        }
        Ok(())
    }
}

impl Ord for SignedVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .len()
            .cmp(&other.entries.len())
            .then_with(|| self.support().cmp(other.support()))
            .then_with(|| {
                // Plus before Minus.
                let key = |s: &Sign| *s == Sign::Minus;
                self.entries
                    .iter()
                    .map(|(_, s)| key(s))
                    .cmp(other.entries.iter().map(|(_, s)| key(s)))
            })
            .then_with(|| self.ground_size.cmp(&other.ground_size))
    }
}

impl PartialOrd for SignedVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "+1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            _ => Err(Error::parse(0, format!("bad sign {s:?}"))),
        }
    }
}

/// Signs of the nonzero components of a rational vector.
pub(crate) fn signs_of(x: &[Rational]) -> Vec<(usize, Sign)> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, Sign::of(v).expect("nonzero")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let v = SignedVector::from_values(&[1, 0, -1, 1]).unwrap();
        assert_eq!(v.to_string(), "+1 -3 +4");
        assert_eq!(SignedVector::parse_support(4, "+1 -3 +4").unwrap(), v);
        assert!(SignedVector::parse_support(4, "+5").is_err());
        assert!(SignedVector::parse_support(4, "3").is_err());
        assert!(SignedVector::parse_support(4, "").is_err());
    }

    #[test]
    fn tie_break_order() {
        let a = SignedVector::from_values(&[1, 1, 0]).unwrap();
        let b = SignedVector::from_values(&[1, -1, 0]).unwrap();
        let c = SignedVector::from_values(&[1, 0, 1]).unwrap();
        let d = SignedVector::from_values(&[1, 1, 1]).unwrap();
        let mut all = vec![d.clone(), c.clone(), b.clone(), a.clone()];
        all.sort();
        assert_eq!(all, vec![a, b, c, d]);
    }

    #[test]
    fn lookups() {
        let v = SignedVector::from_values(&[0, -1, 1]).unwrap();
        assert_eq!(v.get(0), 0);
        assert_eq!(v.get(1), -1);
        assert_eq!(v.support_mask(), 0b110);
        assert_eq!(v.negated().to_dense(), vec![0, 1, -1]);
        assert!(v.conforms_to(&[rat(5), rat(-2), rat(1)]));
        assert!(!v.conforms_to(&[rat(0), rat(0), rat(1)]));
    }
}
