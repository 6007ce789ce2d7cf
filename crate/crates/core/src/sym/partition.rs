use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::sym::factorial;
use crate::{Error, Result};

/// An integer partition `μ ⊢ n`, parts in weakly decreasing order.
///
/// The derived `Ord` is lexicographic on the parts, so the reverse of it is
/// the reverse-lexicographic order used for every table in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    /// Validates a weakly decreasing list of positive parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(IntPartition { parts })
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition { parts }
    }

    pub fn empty() -> Self {
        IntPartition { parts: Vec::new() }
    }

    /// `(1, 1, …, 1)`.
    pub fn ones(n: usize) -> Self {
        IntPartition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `|μ|`.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `#μ`, the number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `i ↦ m_i`, the number of parts equal to `i`.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_μ = ∏ m_i! i^{m_i}`, the order of the centraliser of a permutation of type μ.
    pub fn z(&self) -> BigUint {
        self.multiplicities()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, (i, m)| {
                acc * factorial(m) * BigUint::from(i).pow(m as u32)
            })
    }

    /// Size of the conjugacy class of type μ in `S_n`, `n!/z_μ`.
    pub fn class_size(&self) -> BigUint {
        factorial(self.n()) / self.z()
    }

    /// Multiset union of the parts.
    pub fn union(&self, other: &IntPartition) -> IntPartition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        IntPartition::from_unsorted(parts)
    }
}

impl fmt::Display for IntPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"3,1,1"`, `"(3,1,1)"` or `"3 1 1"`; parts may come in any order.
impl FromStr for IntPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        if trimmed.is_empty() {
            return Ok(IntPartition::empty());
        }
        let parts = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{s:?} has a zero part")));
        }
        Ok(IntPartition::from_unsorted(parts))
    }
}

impl TryFrom<Vec<usize>> for IntPartition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        IntPartition::new(parts)
    }
}

impl From<IntPartition> for Vec<usize> {
    fn from(p: IntPartition) -> Self {
        p.parts
    }
}

/// Partitions of `n`, largest first part first (reverse lexicographic).
pub fn partitions_of(n: usize) -> Partitions {
    Partitions {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = IntPartition;

    fn next(&mut self) -> Option<IntPartition> {
        let current = self.next.take()?;
        // Successor in reverse-lex order: strip trailing ones, decrement the
        // last part > 1 and refill greedily with parts no larger than it.
        let mut parts = current.clone();
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        if let Some(last) = parts.pop() {
            let k = last - 1;
            parts.push(k);
            let mut rem = ones + 1;
            while rem > 0 {
                let p = rem.min(k);
                parts.push(p);
                rem -= p;
            }
            self.next = Some(parts);
        }
        Some(IntPartition { parts: current })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> IntPartition {
        IntPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        let p3: Vec<_> = partitions_of(3).collect();
        assert_eq!(p3, vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(0).collect::<Vec<_>>(), vec![IntPartition::empty()]);
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
        let p6: Vec<_> = partitions_of(6).collect();
        let mut sorted = p6.clone();
        sorted.sort_by(|a, b| b.cmp(a));
        assert_eq!(p6, sorted);
    }

    #[test]
    fn z_and_class_sizes() {
        assert_eq!(p(&[1, 1, 1]).z(), BigUint::from(6u32));
        assert_eq!(p(&[2]).z(), BigUint::from(2u32));
        assert_eq!(p(&[2, 2, 1]).z(), BigUint::from(8u32));
        assert_eq!(p(&[3, 1]).class_size(), BigUint::from(8u32));
        for n in 0..=8 {
            let total: BigUint = partitions_of(n).map(|mu| mu.class_size()).sum();
            assert_eq!(total, factorial(n), "n = {n}");
        }
    }

    #[test]
    fn parse_and_validate() {
        assert_eq!("1,1,1".parse::<IntPartition>().unwrap(), p(&[1, 1, 1]));
        assert_eq!("(1,3)".parse::<IntPartition>().unwrap(), p(&[3, 1]));
        assert!("2,0".parse::<IntPartition>().is_err());
        assert!("2,x".parse::<IntPartition>().is_err());
        assert!(IntPartition::new(vec![1, 2]).is_err());
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(p(&[2, 1]).union(&p(&[2])), p(&[2, 2, 1]));
    }

    #[test]
    fn serde_uses_plain_lists() {
        let json = serde_json::to_string(&p(&[2, 1])).unwrap();
        assert_eq!(json, "[2,1]");
        assert_eq!(serde_json::from_str::<IntPartition>(&json).unwrap(), p(&[2, 1]));
        assert!(serde_json::from_str::<IntPartition>("[1,2]").is_err());
    }
}
