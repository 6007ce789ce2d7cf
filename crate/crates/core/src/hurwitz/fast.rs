use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::Kind;
use crate::group_algebra::SymmetricGroup;
use crate::sym::{set_partitions, IntPartition, Permutation, Transposition};
use crate::{Error, Limits, Result};

/// Tuple counts indexed by length `r` and the cycle type of the endpoint.
pub(crate) type Profile = Vec<BTreeMap<IntPartition, u128>>;

/// Counts of all (not necessarily transitive) tuples of length `≤ rmax`
/// starting at `alpha`, by length and endpoint type.
///
/// Expands `δ_α · ∏_{k=2}^m F_k` layer by layer in the degree, with
/// `F_k = Σ_j x^j J_k^j` (monotone) or `1 + x J_k` (strict).
pub(crate) fn block_profile(alpha: &[u8], rmax: usize, kind: Kind, limits: &Limits) -> Result<Profile> {
    let m = alpha.len();
    let group = SymmetricGroup::get(m, limits)?;
    let size = group.order();
    let mut layers = vec![vec![0u128; size]; rmax + 1];
    layers[0][crate::sym::lex_rank(alpha)] = 1;
    let mut overflow = false;
    let mut scratch = vec![0u128; size];
    for k in 2..=m {
        match kind {
            Kind::Monotone => {
                for d in 1..=rmax {
                    scratch.iter_mut().for_each(|x| *x = 0);
                    mul_jm_into(&group, k, &layers[d - 1], &mut scratch, &mut overflow);
                    add_into(&mut layers[d], &scratch, &mut overflow);
                }
            }
            Kind::Strict => {
                for d in (1..=rmax).rev() {
                    scratch.iter_mut().for_each(|x| *x = 0);
                    mul_jm_into(&group, k, &layers[d - 1], &mut scratch, &mut overflow);
                    add_into(&mut layers[d], &scratch, &mut overflow);
                }
            }
        }
    }
    if overflow {
        return Err(Error::Overflow("group-algebra path counts"));
    }
    let classes = group.classes();
    Ok(layers
        .iter()
        .map(|layer| {
            let mut by_class = vec![0u128; classes.len()];
            for (i, &c) in layer.iter().enumerate() {
                if c != 0 {
                    by_class[group.class_index(i)] += c;
                }
            }
            by_class
                .into_iter()
                .enumerate()
                .filter(|(_, c)| *c != 0)
                .map(|(k, c)| (classes[k].clone(), c))
                .collect()
        })
        .collect())
}

fn mul_jm_into(group: &SymmetricGroup, k: usize, src: &[u128], dst: &mut [u128], overflow: &mut bool) {
    for a in 1..k {
        let table = group.right_mul_table(Transposition { a, b: k });
        for (i, &c) in src.iter().enumerate() {
            if c != 0 {
                let j = table[i] as usize;
                let (v, o) = dst[j].overflowing_add(c);
                dst[j] = v;
                *overflow |= o;
            }
        }
    }
}

fn add_into(dst: &mut [u128], src: &[u128], overflow: &mut bool) {
    for (d, &s) in dst.iter_mut().zip(src) {
        let (v, o) = d.overflowing_add(s);
        *d = v;
        *overflow |= o;
    }
}

/// Restriction of `alpha` to a union of its cycles, relabelled onto
/// `1..=|block|` preserving order (which preserves monotonicity).
fn restrict(alpha: &Permutation, block: &[usize]) -> Vec<u8> {
    let mut index = vec![u8::MAX; alpha.n()];
    for (i, &x) in block.iter().enumerate() {
        index[x - 1] = i as u8;
    }
    block
        .iter()
        .map(|&x| index[alpha.as_slice()[x - 1] as usize])
        .collect()
}

/// Transitive tuple counts by `(r, ν)` for `r ≤ rmax`.
///
/// Tuples whose transpositions stay inside the blocks of a coarsening `π` of
/// the cycles of `alpha` factor uniquely into per-block tuples, so the count
/// for `π` is a product of block profiles. Möbius inversion over the
/// coarsenings, `μ(π, 1) = (-1)^{|π|-1}(|π|-1)!`, isolates the transitive
/// ones.
pub(crate) fn transitive_profile(
    alpha: &Permutation,
    rmax: usize,
    kind: Kind,
    limits: &Limits,
) -> Result<BTreeMap<(usize, IntPartition), BigUint>> {
    limits.check_group_algebra(alpha.n())?;
    let cycles = alpha.cycles();
    let ell = cycles.len();
    let mut memo: HashMap<Vec<u8>, Profile> = HashMap::new();
    let mut total: BTreeMap<(usize, IntPartition), BigInt> = BTreeMap::new();
    for pi in set_partitions(ell) {
        let k = pi.num_blocks();
        let mut sign_weight = BigInt::from(crate::sym::factorial(k - 1));
        if (k - 1) % 2 == 1 {
            sign_weight = -sign_weight;
        }
        // product of the block profiles, truncated at rmax
        let mut acc: BTreeMap<(usize, IntPartition), BigUint> = BTreeMap::new();
        acc.insert((0, IntPartition::empty()), BigUint::from(1u32));
        for group in pi.blocks() {
            let mut points: Vec<usize> = group.iter().flat_map(|&c| cycles[c - 1].iter().copied()).collect();
            points.sort_unstable();
            let key = restrict(alpha, &points);
            if !memo.contains_key(&key) {
                let prof = block_profile(&key, rmax, kind, limits)?;
                memo.insert(key.clone(), prof);
            }
            let prof = &memo[&key];
            let mut next: BTreeMap<(usize, IntPartition), BigUint> = BTreeMap::new();
            for ((r0, nu0), c0) in &acc {
                for (r1, layer) in prof.iter().enumerate().take(rmax - r0 + 1) {
                    for (nu1, &c1) in layer {
                        *next
                            .entry((r0 + r1, nu0.union(nu1)))
                            .or_insert_with(BigUint::zero) += c0 * BigUint::from(c1);
                    }
                }
            }
            acc = next;
        }
        for (key, c) in acc {
            *total.entry(key).or_insert_with(BigInt::zero) += &sign_weight * BigInt::from(c);
        }
    }
    let mut out = BTreeMap::new();
    for (key, c) in total {
        if c.is_negative() {
            return Err(Error::NotANaturalNumber(format!(
                "transitive count {c} at r = {}, type {}",
                key.0, key.1
            )));
        }
        if !c.is_zero() {
            out.insert(key, c.to_biguint().expect("nonnegative"));
        }
    }
    Ok(out)
}
