use std::collections::HashMap;

use rayon::prelude::*;

use super::Kind;
use crate::sym::{Permutation, Transposition, UnionFind};

/// Depth-first search over (strictly) monotone transposition tuples starting
/// at `alpha`, reporting tuples of length `r` that end with `target` cycles
/// and generate a transitive group together with `alpha`.
#[derive(Clone)]
pub(crate) struct Search {
    n: usize,
    kind: Kind,
    r: usize,
    target: usize,
    images: Vec<u8>,
    cycles: usize,
    uf: UnionFind,
    path: Vec<Transposition>,
}

impl Search {
    pub(crate) fn new(alpha: &Permutation, r: usize, target: usize, kind: Kind) -> Self {
        let n = alpha.n();
        let mut uf = UnionFind::new(n);
        for (k, &x) in alpha.as_slice().iter().enumerate() {
            uf.union(k, x as usize);
        }
        Search {
            n,
            kind,
            r,
            target,
            images: alpha.as_slice().to_vec(),
            cycles: alpha.num_cycles(),
            uf,
            path: Vec::with_capacity(r),
        }
    }

    fn first_b(&self) -> usize {
        2
    }

    fn next_b_min(&self, last_b: usize) -> usize {
        match self.kind {
            Kind::Monotone => last_b,
            Kind::Strict => last_b + 1,
        }
    }

    fn feasible(&self, last_b: Option<usize>) -> bool {
        let rem = self.r - self.path.len();
        let gap = self.target.abs_diff(self.cycles);
        if gap > rem || !(rem - gap).is_multiple_of(2) {
            return false;
        }
        if self.uf.components() - 1 > rem {
            return false;
        }
        // strictly increasing b's can only use the values above the last one
        self.kind == Kind::Monotone || rem <= self.n - last_b.unwrap_or(1)
    }

    fn same_cycle(&self, a: usize, b: usize) -> bool {
        let mut k = self.images[a] as usize;
        while k != a {
            if k == b {
                return true;
            }
            k = self.images[k] as usize;
        }
        false
    }

    fn push(&mut self, t: Transposition) {
        let (a, b) = (t.a - 1, t.b - 1);
        if self.same_cycle(a, b) {
            self.cycles += 1;
        } else {
            self.cycles -= 1;
        }
        self.images.swap(a, b);
        self.uf.union(a, b);
        self.path.push(t);
    }

    fn pop(&mut self) {
        let t = self.path.pop().expect("nonempty path");
        let (a, b) = (t.a - 1, t.b - 1);
        self.images.swap(a, b);
        // after undoing the swap, a and b share a cycle iff the step split
        if self.same_cycle(a, b) {
            self.cycles -= 1;
        } else {
            self.cycles += 1;
        }
        self.uf.rollback();
    }

    /// Search states after each admissible first step.
    pub(crate) fn branches(&self) -> Vec<Search> {
        let mut out = Vec::new();
        if self.r == 0 {
            return out;
        }
        for b in self.first_b()..=self.n {
            for a in 1..b {
                let mut s = self.clone();
                s.push(Transposition { a, b });
                if s.feasible(Some(b)) {
                    out.push(s);
                }
            }
        }
        out
    }

    fn last_b(&self) -> Option<usize> {
        self.path.last().map(|t| t.b)
    }

    pub(crate) fn run<F: FnMut(&[u8], &[Transposition])>(&mut self, leaf: &mut F) {
        if !self.feasible(self.last_b()) {
            return;
        }
        if self.path.len() == self.r {
            if self.cycles == self.target && self.uf.components() == 1 {
                leaf(&self.images, &self.path);
            }
            return;
        }
        let b_min = match self.last_b() {
            None => self.first_b(),
            Some(b) => self.next_b_min(b),
        };
        for b in b_min..=self.n {
            for a in 1..b {
                self.push(Transposition { a, b });
                self.run(leaf);
                self.pop();
            }
        }
    }
}

/// Number of admissible tuples, parallel over the first transposition.
pub(crate) fn count(alpha: &Permutation, r: usize, target: usize, kind: Kind) -> u64 {
    let root = Search::new(alpha, r, target, kind);
    if r == 0 {
        let mut total = 0;
        root.clone().run(&mut |_, _| total += 1);
        return total;
    }
    root.branches()
        .into_par_iter()
        .map(|mut s| {
            let mut local = 0u64;
            s.run(&mut |_, _| local += 1);
            local
        })
        .sum()
}

/// Admissible tuples grouped by the cycle type of the endpoint.
pub(crate) fn count_by_type(
    alpha: &Permutation,
    r: usize,
    target: usize,
    kind: Kind,
) -> HashMap<Vec<usize>, u64> {
    let tally = |mut s: Search| {
        let mut local: HashMap<Vec<usize>, u64> = HashMap::new();
        s.run(&mut |images, _| {
            *local.entry(cycle_lengths(images)).or_insert(0) += 1;
        });
        local
    };
    let root = Search::new(alpha, r, target, kind);
    if r == 0 {
        return tally(root);
    }
    root.branches()
        .into_par_iter()
        .map(tally)
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        })
}

/// Cycle lengths of a 0-based image list, in decreasing order.
pub(crate) fn cycle_lengths(images: &[u8]) -> Vec<usize> {
    let mut seen = [false; 256];
    let mut out = Vec::new();
    for start in 0..images.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            len += 1;
            k = images[k] as usize;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}
