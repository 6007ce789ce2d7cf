use std::fmt;

use crate::{Error, Result};

/// A partition of `[n]` into nonempty blocks.
///
/// Canonical form: each block sorted, blocks ordered by their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            for &x in block {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::InvalidSetPartition(format!(
                        "{blocks:?} is not a partition of 1..={n}"
                    )));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|&s| !s) {
            return Err(Error::InvalidSetPartition(format!(
                "{blocks:?} does not cover 1..={n}"
            )));
        }
        Ok(Self::canonical(n, blocks))
    }

    pub(crate) fn from_sorted_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        Self::canonical(n, blocks)
    }

    fn canonical(n: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        SetPartition { n, blocks }
    }

    /// Builds the partition whose block labels are given by a restricted
    /// growth string (0-based labels).
    pub fn from_rgs(labels: &[usize]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        SetPartition {
            n: labels.len(),
            blocks,
        }
    }

    /// `0_n`, all singletons.
    pub fn finest(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(|k| vec![k]).collect(),
        }
    }

    /// `1_n = {[n]}` (empty for `n = 0`).
    pub fn coarsest(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        SetPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Block label of every point (0-based labels, in canonical block order).
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x - 1] = i;
            }
        }
        labels
    }

    /// Refinement order: `self ≤ other` when every block of `self` lies in a
    /// block of `other`.
    pub fn refines(&self, other: &SetPartition) -> bool {
        if self.n != other.n {
            return false;
        }
        let labels = other.labels();
        self.blocks
            .iter()
            .all(|b| b.iter().all(|&x| labels[x - 1] == labels[b[0] - 1]))
    }

    /// Every partition `π ≥ self`, each exactly once.
    ///
    /// Enumerates set partitions of the blocks of `self` and merges.
    pub fn coarsenings(&self) -> impl Iterator<Item = SetPartition> + '_ {
        set_partitions(self.blocks.len()).map(move |outer| {
            let merged = outer
                .blocks()
                .iter()
                .map(|group| {
                    group
                        .iter()
                        .flat_map(|&i| self.blocks[i - 1].iter().copied())
                        .collect()
                })
                .collect();
            SetPartition::canonical(self.n, merged)
        })
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let xs: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

/// All set partitions of `[n]`, via restricted growth strings.
pub fn set_partitions(n: usize) -> impl Iterator<Item = SetPartition> {
    let mut rgs: Option<Vec<usize>> = Some(vec![0; n]);
    std::iter::from_fn(move || {
        let current = rgs.take()?;
        let out = SetPartition::from_rgs(&current);
        rgs = next_rgs(current);
        Some(out)
    })
}

fn next_rgs(mut a: Vec<usize>) -> Option<Vec<usize>> {
    let n = a.len();
    // prefix maxima: a[i] may grow up to 1 + max(a[..i])
    let mut prefix_max = vec![0; n];
    for i in 1..n {
        prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
    }
    for i in (1..n).rev() {
        if a[i] <= prefix_max[i] {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return Some(a);
        }
    }
    None
}
