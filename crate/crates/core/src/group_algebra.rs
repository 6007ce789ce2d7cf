//! Dense vectors over the group algebra `ℚ[z][S_n]` and the cached
//! multiplication tables they need.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::algebra::{Poly, RatFunc, Var};
use crate::sym::{partitions_of, IntPartition, Permutation, Transposition};
use crate::weingarten::CentralElement;
use crate::{Error, Limits, Result};

/// `S_n` with its elements in lexicographic order and precomputed tables:
/// the conjugacy class of every element and right multiplication by every
/// transposition.
#[derive(Debug)]
pub struct SymmetricGroup {
    n: usize,
    perms: Vec<Permutation>,
    classes: Vec<IntPartition>,
    class_of: Vec<u16>,
    transpositions: Vec<Transposition>,
    // right_mul[t][i] = rank(perms[i] ∘ transpositions[t])
    right_mul: Vec<Vec<u32>>,
}

static GROUPS: OnceLock<RwLock<HashMap<usize, Arc<SymmetricGroup>>>> = OnceLock::new();

impl SymmetricGroup {
    /// The cached tables for `S_n`, built on first use.
    pub fn get(n: usize, limits: &Limits) -> Result<Arc<SymmetricGroup>> {
        limits.check_group_algebra(n)?;
        let cache = GROUPS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(g) = cache.read().unwrap().get(&n) {
            return Ok(g.clone());
        }
        let built = Arc::new(SymmetricGroup::build(n));
        let mut w = cache.write().unwrap();
        Ok(w.entry(n).or_insert(built).clone())
    }

    fn build(n: usize) -> SymmetricGroup {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let classes: Vec<IntPartition> = partitions_of(n).collect();
        let index: HashMap<&IntPartition, u16> = classes
            .iter()
            .enumerate()
            .map(|(i, p)| (p, i as u16))
            .collect();
        let class_of = perms
            .par_iter()
            .map(|p| index[&p.cycle_type()])
            .collect();
        let transpositions = Transposition::all(n);
        let right_mul = transpositions
            .iter()
            .map(|&t| {
                perms
                    .par_iter()
                    .map(|p| {
                        let mut q = p.clone();
                        q.mul_transposition(t);
                        q.rank() as u32
                    })
                    .collect()
            })
            .collect();
        SymmetricGroup {
            n,
            perms,
            classes,
            class_of,
            transpositions,
            right_mul,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, rank: usize) -> &Permutation {
        &self.perms[rank]
    }

    /// Conjugacy classes in reverse-lexicographic order of cycle type.
    pub fn classes(&self) -> &[IntPartition] {
        &self.classes
    }

    pub fn class_index(&self, rank: usize) -> usize {
        self.class_of[rank] as usize
    }

    pub fn transpositions(&self) -> &[Transposition] {
        &self.transpositions
    }

    /// Table index of `(a b)`, consistent with [`Transposition::all`].
    pub fn transposition_index(t: Transposition) -> usize {
        (t.b - 1) * (t.b - 2) / 2 + (t.a - 1)
    }

    /// Rank of `perm(rank) ∘ (a b)`.
    pub fn right_mul(&self, rank: usize, t: Transposition) -> usize {
        self.right_mul[Self::transposition_index(t)][rank] as usize
    }

    pub(crate) fn right_mul_table(&self, t: Transposition) -> &[u32] {
        &self.right_mul[Self::transposition_index(t)]
    }
}

/// An element `Σ_σ f_σ(z) σ` of `ℚ[z][S_n]`, stored densely by rank.
#[derive(Debug, Clone)]
pub struct GroupAlgebraVector {
    group: Arc<SymmetricGroup>,
    coeffs: Vec<Poly>,
}

impl GroupAlgebraVector {
    pub fn zero(group: Arc<SymmetricGroup>) -> Self {
        let coeffs = vec![Poly::zero(); group.order()];
        GroupAlgebraVector { group, coeffs }
    }
}

impl PartialEq for GroupAlgebraVector {
    fn eq(&self, other: &Self) -> bool {
        self.group.n() == other.group.n() && self.coeffs == other.coeffs
    }
}

impl Eq for GroupAlgebraVector {}

impl GroupAlgebraVector {
    /// `c · σ`.
    pub fn basis(group: Arc<SymmetricGroup>, sigma: &Permutation, c: Poly) -> Result<Self> {
        if sigma.n() != group.n() {
            return Err(Error::SizeMismatch {
                left: group.n(),
                right: sigma.n(),
            });
        }
        let mut v = GroupAlgebraVector::zero(group);
        v.coeffs[sigma.rank()] = c;
        Ok(v)
    }

    pub fn identity(group: Arc<SymmetricGroup>) -> Self {
        let id = Permutation::identity(group.n());
        GroupAlgebraVector::basis(group, &id, Poly::one()).unwrap()
    }

    /// The Jucys–Murphy element `J_k = (1 k) + … + (k-1 k)`; `J_1 = 0`.
    pub fn jucys_murphy(group: Arc<SymmetricGroup>, k: usize) -> Result<Self> {
        let n = group.n();
        if k == 0 || k > n {
            return Err(Error::InvalidQuery(format!("J_{k} is undefined in S_{n}")));
        }
        let mut v = GroupAlgebraVector::zero(group);
        for a in 1..k {
            let t = Transposition::new(a, k)?.to_permutation(n);
            v.coeffs[t.rank()] = Poly::one();
        }
        Ok(v)
    }

    pub fn group(&self) -> &Arc<SymmetricGroup> {
        &self.group
    }

    pub fn coeff(&self, sigma: &Permutation) -> &Poly {
        &self.coeffs[sigma.rank()]
    }

    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &GroupAlgebraVector) -> GroupAlgebraVector {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GroupAlgebraVector {
            group: self.group.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, c: &Poly) -> GroupAlgebraVector {
        GroupAlgebraVector {
            group: self.group.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self · (a b)`.
    pub fn mul_transposition(&self, t: Transposition) -> GroupAlgebraVector {
        let table = self.group.right_mul_table(t);
        let mut coeffs = vec![Poly::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[table[i] as usize] = c.clone();
            }
        }
        GroupAlgebraVector {
            group: self.group.clone(),
            coeffs,
        }
    }

    /// `self · J_k`.
    pub fn mul_jucys_murphy(&self, k: usize) -> GroupAlgebraVector {
        let mut out = GroupAlgebraVector::zero(self.group.clone());
        for a in 1..k {
            let t = Transposition { a, b: k };
            let table = self.group.right_mul_table(t);
            for (i, c) in self.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let j = table[i] as usize;
                    out.coeffs[j] = &out.coeffs[j] + c;
                }
            }
        }
        out
    }

    /// The product in the group algebra, `Σ f_σ g_τ (σ∘τ)`.
    pub fn mul(&self, other: &GroupAlgebraVector) -> GroupAlgebraVector {
        let mut out = GroupAlgebraVector::zero(self.group.clone());
        for (i, f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let sigma = self.group.perm(i);
            for (j, g) in other.coeffs.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let k = sigma.compose(self.group.perm(j)).unwrap().rank();
                out.coeffs[k] = &out.coeffs[k] + &(f * g);
            }
        }
        out
    }

    /// Whether the coefficients are constant on conjugacy classes.
    pub fn is_central(&self) -> bool {
        let mut seen: Vec<Option<&Poly>> = vec![None; self.group.classes().len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.group.class_index(i);
            match seen[k] {
                None => seen[k] = Some(c),
                Some(prev) if prev != c => return false,
                _ => {}
            }
        }
        true
    }

    /// The class function with values in `ℚ(var)`; fails if not central.
    pub fn to_central(&self, var: Var) -> Result<CentralElement> {
        if !self.is_central() {
            return Err(Error::NotCentral(format!("element of Q[S_{}]", self.group.n())));
        }
        let mut values = Vec::with_capacity(self.group.classes().len());
        for (k, lambda) in self.group.classes().iter().enumerate() {
            let rep = Permutation::canonical_of_type(lambda);
            debug_assert_eq!(self.group.class_index(rep.rank()), k);
            values.push(RatFunc::from_poly(var, self.coeff(&rep).clone()));
        }
        CentralElement::from_values(self.group.n(), values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(n: usize) -> Arc<SymmetricGroup> {
        SymmetricGroup::get(n, &Limits::default()).unwrap()
    }

    #[test]
    fn tables_are_consistent() {
        let g = group(4);
        assert_eq!(g.order(), 24);
        assert_eq!(g.classes().len(), 5);
        for (i, t) in g.transpositions().iter().enumerate() {
            assert_eq!(SymmetricGroup::transposition_index(*t), i);
        }
        for i in 0..g.order() {
            assert_eq!(g.perm(i).rank(), i);
            for &t in g.transpositions() {
                let mut q = g.perm(i).clone();
                q.mul_transposition(t);
                assert_eq!(g.right_mul(i, t), q.rank());
                assert_eq!(g.right_mul(g.right_mul(i, t), t), i);
            }
        }
    }

    #[test]
    fn cache_returns_the_same_tables() {
        let a = group(3);
        let b = group(3);
        assert!(Arc::ptr_eq(&a, &b));
        assert!(SymmetricGroup::get(12, &Limits::default()).is_err());
    }

    #[test]
    fn jucys_murphy_elements_commute() {
        for n in 1..=5 {
            let g = group(n);
            let js: Vec<_> = (1..=n)
                .map(|k| GroupAlgebraVector::jucys_murphy(g.clone(), k).unwrap())
                .collect();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(js[i].mul(&js[j]), js[j].mul(&js[i]), "n={n} J{} J{}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn jm_right_multiplication_matches_generic_product() {
        let g = group(4);
        let sigma = Permutation::from_cycles(4, &[vec![1, 3], vec![2, 4]]).unwrap();
        let v = GroupAlgebraVector::basis(g.clone(), &sigma, Poly::from_ints(&[1, 2])).unwrap();
        for k in 1..=4 {
            let j = GroupAlgebraVector::jucys_murphy(g.clone(), k).unwrap();
            assert_eq!(v.mul_jucys_murphy(k), v.mul(&j));
        }
    }

    #[test]
    fn centrality() {
        let g = group(3);
        let sum_of_js = (1..=3)
            .map(|k| GroupAlgebraVector::jucys_murphy(g.clone(), k).unwrap())
            .fold(GroupAlgebraVector::zero(g.clone()), |a, b| a.add(&b));
        assert!(sum_of_js.is_central());
        let j2 = GroupAlgebraVector::jucys_murphy(g, 2).unwrap();
        assert!(!j2.is_central());
        assert!(matches!(j2.to_central(Var::Z), Err(Error::NotCentral(_))));
    }
}
