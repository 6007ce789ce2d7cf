//! Permutations, integer partitions and set partitions of `[n]`.

mod partition;
mod permutation;
mod set_partition;

pub use partition::{partitions_of, IntPartition, Partitions};
pub use permutation::{Permutation, Transposition};
pub use set_partition::{set_partitions, SetPartition};

pub(crate) use permutation::lex_rank;

use num_bigint::BigUint;
use num_traits::One;

/// Orbits of the group generated by `gens` acting on `[n]`.
///
/// Computed by union-find over the generators' cycles; the group itself is
/// never expanded. With no generators the result is the finest partition.
pub fn orbit_partition(n: usize, gens: &[Permutation]) -> crate::Result<SetPartition> {
    let mut uf = UnionFind::new(n);
    for g in gens {
        if g.n() != n {
            return Err(crate::Error::SizeMismatch {
                left: n,
                right: g.n(),
            });
        }
        for k in 0..n {
            uf.union(k, g.as_slice()[k] as usize);
        }
    }
    Ok(uf.into_set_partition())
}

/// Union-find with an undo log, used where a search needs to backtrack.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
    history: Vec<Option<(usize, usize)>>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
            history: Vec::new(),
        }
    }

    // No path compression so that `rollback` stays exact.
    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; always pushes one history entry.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            self.history.push(None);
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.components -= 1;
        self.history.push(Some((ra, rb)));
        true
    }

    /// Undoes the most recent `union`.
    pub fn rollback(&mut self) {
        if let Some(Some((ra, rb))) = self.history.pop() {
            self.parent[rb] = rb;
            self.size[ra] -= self.size[rb];
            self.components += 1;
        }
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn into_set_partition(self) -> SetPartition {
        let n = self.parent.len();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut index = vec![usize::MAX; n];
        for k in 0..n {
            let r = self.find(k);
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(k + 1);
        }
        SetPartition::from_sorted_blocks(n, blocks)
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Bell numbers by the Bell triangle.
pub fn bell(n: usize) -> BigUint {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_partition_examples() {
        let t12 = Permutation::transposition(3, 1, 2).unwrap();
        let t23 = Permutation::transposition(3, 2, 3).unwrap();
        assert_eq!(
            orbit_partition(3, std::slice::from_ref(&t12)).unwrap(),
            SetPartition::from_blocks(3, vec![vec![1, 2], vec![3]]).unwrap()
        );
        assert_eq!(
            orbit_partition(3, &[t12, t23]).unwrap(),
            SetPartition::coarsest(3)
        );
        assert_eq!(orbit_partition(2, &[]).unwrap(), SetPartition::finest(2));
    }

    #[test]
    fn orbit_partition_rejects_mixed_sizes() {
        let t = Permutation::transposition(3, 1, 2).unwrap();
        assert!(orbit_partition(4, &[t]).is_err());
    }

    #[test]
    fn orbits_of_single_permutation_are_its_cycles() {
        for sigma in Permutation::all(5) {
            let orbits = orbit_partition(5, std::slice::from_ref(&sigma)).unwrap();
            let mut cycles = sigma.cycles();
            cycles.iter_mut().for_each(|c| c.sort_unstable());
            cycles.sort();
            assert_eq!(orbits.blocks(), cycles.as_slice());
        }
    }

    #[test]
    fn union_find_rollback_restores_state() {
        let mut uf = UnionFind::new(4);
        uf.union(0, 1);
        uf.union(2, 3);
        uf.union(1, 1);
        assert_eq!(uf.components(), 2);
        uf.rollback();
        uf.rollback();
        assert_eq!(uf.components(), 3);
        assert_ne!(uf.find(2), uf.find(3));
        assert_eq!(uf.find(0), uf.find(1));
    }

    #[test]
    fn small_combinatorial_numbers() {
        let bells: Vec<u32> = (0..7).map(|n| bell(n).try_into().unwrap()).collect();
        assert_eq!(bells, vec![1, 1, 2, 5, 15, 52, 203]);
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(2, 3), BigUint::from(0u32));
        assert_eq!(factorial(6), BigUint::from(720u32));
    }
}
