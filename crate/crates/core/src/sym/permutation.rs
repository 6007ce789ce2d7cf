use std::fmt;

use crate::sym::IntPartition;
use crate::{Error, Result};

/// An element of `S_n`.
///
/// Points are labelled `1..=n` in the public API. Internally the images are
/// stored 0-based, `images[k] = σ(k+1) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "n too large for Permutation");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list `[σ(1), …, σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("n = {n} too large")));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[x - 1] = true;
            out.push((x - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation of `[n]` from disjoint cycles (1-based).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || used[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycles {cycles:?} are not disjoint cycles on 1..={n}"
                    )));
                }
                used[x] = true;
                images[x - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Ok(Transposition::new(a, b)?.to_permutation(n))
    }

    /// The canonical permutation of cycle type `mu`: consecutive cycles
    /// `(1 … μ₁)(μ₁+1 … μ₁+μ₂)…`.
    pub fn canonical_of_type(mu: &IntPartition) -> Self {
        let n = mu.n();
        let mut images = Vec::with_capacity(n);
        let mut start = 0u8;
        for &p in mu.parts() {
            for i in 0..p as u8 {
                images.push(start + (i + 1) % p as u8);
            }
            start += p as u8;
        }
        Permutation { images }
    }

    /// The full cycle `(1 2 … n)`.
    pub fn full_cycle(n: usize) -> Self {
        if n == 0 {
            return Permutation::identity(0);
        }
        Permutation::canonical_of_type(&IntPartition::new(vec![n]).expect("valid"))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)` for `k` in `1..=n`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] as usize + 1
    }

    /// 1-based image list.
    pub fn to_images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// 0-based image slice.
    pub fn as_slice(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: other
                .images
                .iter()
                .map(|&k| self.images[k as usize])
                .collect(),
        })
    }

    /// `self ∘ (a b)`, computed in place by swapping two images.
    pub fn mul_transposition(&mut self, t: Transposition) {
        self.images.swap(t.a - 1, t.b - 1);
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Disjoint cycles (1-based), each starting at its smallest element, in
    /// increasing order of that element. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                cycle.push(k + 1);
                k = self.images[k] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// `#σ`, the number of cycles including fixed points.
    pub fn num_cycles(&self) -> usize {
        cycle_count(&self.images)
    }

    /// Cayley length `|σ| = n - #σ`.
    pub fn length(&self) -> usize {
        self.n() - self.num_cycles()
    }

    pub fn cycle_type(&self) -> IntPartition {
        IntPartition::from_unsorted(self.cycles().iter().map(Vec::len).collect())
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut current: Option<Vec<u8>> = Some((0..n as u8).collect());
        std::iter::from_fn(move || {
            let out = current.take()?;
            let mut next = out.clone();
            if next_permutation(&mut next) {
                current = Some(next);
            }
            Some(Permutation { images: out })
        })
    }

    /// Lexicographic rank in `S_n`, matching the order of [`Permutation::all`].
    pub fn rank(&self) -> usize {
        lex_rank(&self.images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points, `id` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

pub(crate) fn cycle_count(images: &[u8]) -> usize {
    let n = images.len();
    let mut seen = [false; 256];
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = images[k] as usize;
        }
    }
    count
}

pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

pub(crate) fn lex_rank(images: &[u8]) -> usize {
    let n = images.len();
    let mut rank = 0usize;
    let mut used: u64 = 0;
    for (i, &x) in images.iter().enumerate() {
        let smaller_unused = (0..x).filter(|&y| used & (1 << y) == 0).count();
        rank = rank * (n - i) + smaller_unused;
        used |= 1 << x;
    }
    rank
}

/// A transposition `(a b)` with `1 ≤ a < b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition {
    pub a: usize,
    pub b: usize,
}

impl Transposition {
    /// Normalises the pair so that `a < b`.
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b || a == 0 || b == 0 {
            return Err(Error::InvalidPermutation(format!(
                "({a} {b}) is not a transposition"
            )));
        }
        Ok(Transposition {
            a: a.min(b),
            b: a.max(b),
        })
    }

    pub fn to_permutation(self, n: usize) -> Permutation {
        let mut p = Permutation::identity(n);
        p.mul_transposition(self);
        p
    }

    /// All transpositions of `S_n`, ordered by `b` then `a`.
    pub fn all(n: usize) -> Vec<Transposition> {
        (2..=n)
            .flat_map(|b| (1..b).map(move |a| Transposition { a, b }))
            .collect()
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn compose_examples() {
        let s = perm(4, &[&[1, 3, 2]]);
        assert_eq!(Permutation::identity(4).compose(&s).unwrap(), s);
        let t = perm(3, &[&[1, 2]]);
        assert!(t.compose(&t).unwrap().is_identity());
        // (1 2)∘(2 3): 1→1→2, 2→3→3, 3→2→1
        let p = perm(3, &[&[1, 2]]).compose(&perm(3, &[&[2, 3]])).unwrap();
        assert_eq!(p.to_images(), vec![2, 3, 1]);
        assert_eq!(p.cycle_type(), IntPartition::new(vec![3]).unwrap());
    }

    #[test]
    fn compose_size_mismatch() {
        let err = Permutation::identity(2).compose(&Permutation::identity(3));
        assert_eq!(err, Err(Error::SizeMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(
            Permutation::identity(3).cycle_type(),
            IntPartition::new(vec![1, 1, 1]).unwrap()
        );
        assert_eq!(
            perm(3, &[&[1, 2, 3]]).cycle_type(),
            IntPartition::new(vec![3]).unwrap()
        );
        assert_eq!(
            perm(4, &[&[1, 2], &[3, 4]]).cycle_type(),
            IntPartition::new(vec![2, 2]).unwrap()
        );
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_err());
        assert!(Transposition::new(2, 2).is_err());
    }

    #[test]
    fn canonical_representatives() {
        let mu = IntPartition::new(vec![3, 2, 1]).unwrap();
        let alpha = Permutation::canonical_of_type(&mu);
        assert_eq!(alpha.cycles(), vec![vec![1, 2, 3], vec![4, 5], vec![6]]);
        assert_eq!(Permutation::full_cycle(4).to_string(), "(1 2 3 4)");
    }

    #[test]
    fn lex_rank_matches_enumeration() {
        for (i, p) in Permutation::all(5).enumerate() {
            assert_eq!(p.rank(), i);
        }
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(4).count(), 24);
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(&v).unwrap())
    }

    proptest! {
        #[test]
        fn cycles_plus_length_is_n(p in (1usize..9).prop_flat_map(arb_perm)) {
            let ct = p.cycle_type();
            prop_assert_eq!(ct.n(), p.n());
            prop_assert_eq!(ct.len(), p.num_cycles());
            prop_assert_eq!(p.num_cycles() + p.length(), p.n());
        }

        #[test]
        fn transposition_changes_cycle_count_by_one(
            p in (2usize..9).prop_flat_map(arb_perm),
            seed in any::<(usize, usize)>(),
        ) {
            let n = p.n();
            let a = seed.0 % n + 1;
            let b = (a + seed.1 % (n - 1)) % n + 1;
            let t = Transposition::new(a, b).unwrap();
            let mut q = p.clone();
            q.mul_transposition(t);
            prop_assert_eq!(q.clone(), p.compose(&t.to_permutation(n)).unwrap());
            let diff = q.num_cycles() as i64 - p.num_cycles() as i64;
            prop_assert_eq!(diff.abs(), 1);
        }

        #[test]
        fn inverse_composes_to_identity(p in (1usize..9).prop_flat_map(arb_perm)) {
            prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }
}
