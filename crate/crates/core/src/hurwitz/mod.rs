//! Monotone and strictly monotone double Hurwitz numbers, transposition-path
//! counts with prescribed defect, and constellation counts.
//!
//! Products `α τ₁ … τ_r` are successive right multiplications: with
//! `(p∘q)(k) = p(q(k))`, multiplying by `(a b)` on the right swaps the
//! images of `a` and `b`.
//!
//! Two independent routes compute the same counts: a depth-first search
//! over transposition tuples, and a group-algebra expansion over Jucys–Murphy
//! elements followed by set-partition Möbius inversion to keep only
//! transitive tuples.

mod dfs;
mod fast;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::sym::{orbit_partition, partitions_of, IntPartition, Permutation, Transposition};
use crate::{Error, Limits, Result};

pub(crate) use dfs::cycle_lengths;
pub(crate) use fast::block_profile;

/// Monotonicity condition on the larger elements `b_i` of the transpositions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `b₁ ≤ b₂ ≤ … ≤ b_r`.
    Monotone,
    /// `b₁ < b₂ < … < b_r`.
    Strict,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Monotone => "monotone",
            Kind::Strict => "strict",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "monotone" | "m" => Ok(Kind::Monotone),
            "strict" | "s" | "strictly-monotone" => Ok(Kind::Strict),
            other => Err(Error::InvalidQuery(format!("unknown kind {other:?}"))),
        }
    }
}

/// Which enumeration to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// The group-algebra route when the guard allows it, else depth-first.
    #[default]
    Auto,
    Dfs,
    Fast,
}

/// Transposition tuples `(τ₁, …, τ_r)` from `alpha` with defect `d`.
///
/// The defect is measured by the genus of the covering:
/// `#α + #(ατ₁…τ_r) - r = 2 - 2d`. For a one-cycle `alpha` this is the same
/// as `#(ατ₁…τ_r) = #α + r - 2d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathQuery {
    pub alpha: Permutation,
    pub r: usize,
    pub d: usize,
    pub kind: Kind,
}

impl PathQuery {
    pub fn new(alpha: Permutation, r: usize, d: usize, kind: Kind) -> Self {
        PathQuery { alpha, r, d, kind }
    }

    /// The required `#(ατ₁…τ_r)`, or `None` if no permutation has it.
    pub fn target_cycles(&self) -> Option<usize> {
        let t = self.r as i64 + 2 - 2 * self.d as i64 - self.alpha.num_cycles() as i64;
        (1..=self.alpha.n() as i64).contains(&t).then_some(t as usize)
    }
}

/// Number of tuples satisfying the query: endpoint cycle count fixed by the
/// defect, `⟨α, τ₁, …, τ_r⟩` transitive, and the monotonicity condition.
/// Depth-first search.
pub fn count_paths(q: &PathQuery, limits: &Limits) -> Result<BigUint> {
    limits.check_dfs(q.alpha.n())?;
    let Some(target) = q.target_cycles() else {
        return Ok(BigUint::zero());
    };
    Ok(BigUint::from(dfs::count(&q.alpha, q.r, target, q.kind)))
}

/// Calls `visit` on every tuple counted by [`count_paths`], in lexicographic
/// order of `(b₁, a₁, b₂, a₂, …)`.
pub fn for_each_path<F: FnMut(&[Transposition])>(q: &PathQuery, limits: &Limits, mut visit: F) -> Result<()> {
    limits.check_dfs(q.alpha.n())?;
    let Some(target) = q.target_cycles() else {
        return Ok(());
    };
    let mut search = dfs::Search::new(&q.alpha, q.r, target, q.kind);
    search.run(&mut |_, path| visit(path));
    Ok(())
}

/// Same count as [`count_paths`] through the group-algebra route.
pub fn count_paths_fast(q: &PathQuery, limits: &Limits) -> Result<BigUint> {
    let Some(target) = q.target_cycles() else {
        return Ok(BigUint::zero());
    };
    let profile = fast::transitive_profile(&q.alpha, q.r, q.kind, limits)?;
    Ok(profile
        .range((q.r, IntPartition::empty())..)
        .take_while(|((r, _), _)| *r == q.r)
        .filter(|((_, nu), _)| nu.len() == target)
        .map(|(_, c)| c)
        .sum())
}

/// Transitive tuple counts from `alpha` by length `r ≤ rmax` and endpoint
/// cycle type, through the group-algebra route.
pub fn path_profile(
    alpha: &Permutation,
    rmax: usize,
    kind: Kind,
    limits: &Limits,
) -> Result<BTreeMap<(usize, IntPartition), BigUint>> {
    fast::transitive_profile(alpha, rmax, kind, limits)
}

/// `H_g(μ, ν)` (or the whole row over `ν ⊢ n` when `nu` is absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzQuery {
    pub mu: IntPartition,
    pub nu: Option<IntPartition>,
    pub genus: usize,
    pub kind: Kind,
}

impl HurwitzQuery {
    pub fn new(mu: IntPartition, nu: Option<IntPartition>, genus: usize, kind: Kind) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::InvalidQuery("mu must be a partition of n >= 1".into()));
        }
        if let Some(nu) = &nu {
            if nu.n() != mu.n() {
                return Err(Error::SizeMismatch {
                    left: mu.n(),
                    right: nu.n(),
                });
            }
        }
        Ok(HurwitzQuery { mu, nu, genus, kind })
    }

    /// `r = #μ + #ν + 2g - 2`.
    pub fn r_for(&self, nu: &IntPartition) -> usize {
        self.mu.len() + nu.len() + 2 * self.genus - 2
    }

    /// The partitions `ν` covered by the query, reverse-lexicographic.
    pub fn targets(&self) -> Vec<IntPartition> {
        match &self.nu {
            Some(nu) => vec![nu.clone()],
            None => partitions_of(self.mu.n()).collect(),
        }
    }
}

/// One entry of a Hurwitz table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzRow {
    pub nu: IntPartition,
    pub r: usize,
    /// Tuples for the fixed representative `α = (1…μ₁)(μ₁+1…)…`.
    #[serde(with = "crate::serde_biguint")]
    pub per_representative: BigUint,
    /// Summed over all `α` of type `μ`: the Hurwitz number `H_g(μ, ν)`.
    #[serde(with = "crate::serde_biguint")]
    pub summed: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzTable {
    pub mu: IntPartition,
    pub genus: usize,
    pub kind: Kind,
    pub rows: Vec<HurwitzRow>,
}

impl HurwitzTable {
    pub fn total(&self) -> BigUint {
        self.rows.iter().map(|r| &r.summed).sum()
    }

    pub fn get(&self, nu: &IntPartition) -> Option<&HurwitzRow> {
        self.rows.iter().find(|r| &r.nu == nu)
    }
}

/// Builds the table of `H_g(μ, ν)` over the requested `ν`.
pub fn hurwitz_table(q: &HurwitzQuery, route: Route, limits: &Limits) -> Result<HurwitzTable> {
    let n = q.mu.n();
    let alpha = Permutation::canonical_of_type(&q.mu);
    let class_size = q.mu.class_size();
    let targets = q.targets();
    let use_fast = match route {
        Route::Fast => true,
        Route::Dfs => false,
        Route::Auto => limits.check_group_algebra(n).is_ok(),
    };
    let per_rep: Vec<BigUint> = if use_fast {
        let rmax = targets.iter().map(|nu| q.r_for(nu)).max().unwrap_or(0);
        let profile = fast::transitive_profile(&alpha, rmax, q.kind, limits)?;
        targets
            .iter()
            .map(|nu| profile.get(&(q.r_for(nu), nu.clone())).cloned().unwrap_or_default())
            .collect()
    } else {
        limits.check_dfs(n)?;
        let mut by_len: BTreeMap<usize, std::collections::HashMap<Vec<usize>, u64>> = BTreeMap::new();
        for nu in &targets {
            by_len.entry(nu.len()).or_insert_with(|| {
                dfs::count_by_type(&alpha, q.r_for(nu), nu.len(), q.kind)
            });
        }
        targets
            .iter()
            .map(|nu| BigUint::from(by_len[&nu.len()].get(nu.parts()).copied().unwrap_or(0)))
            .collect()
    };
    let rows = targets
        .into_iter()
        .zip(per_rep)
        .map(|(nu, c)| HurwitzRow {
            r: q.r_for(&nu),
            summed: &c * &class_size,
            per_representative: c,
            nu,
        })
        .collect();
    Ok(HurwitzTable {
        mu: q.mu.clone(),
        genus: q.genus,
        kind: q.kind,
        rows,
    })
}

/// `H↑_g(μ, ν)` or `H⇑_g(μ, ν)`, summed over all `α` of type `μ`; with `ν`
/// absent, the sum over all `ν ⊢ n`.
pub fn count_double_hurwitz(q: &HurwitzQuery, route: Route, limits: &Limits) -> Result<BigUint> {
    Ok(hurwitz_table(q, route, limits)?.total())
}

/// `𝒞_g(μ, ν)`: pairs `(α, β)` with `[α] = μ`, `[α∘β] = ν`,
/// `#μ + #β + #ν - n = 2 - 2g` and `⟨α, β⟩` transitive. Brute force over
/// the class of `μ` times `S_n`.
pub fn count_constellations(mu: &IntPartition, nu: &IntPartition, g: usize, limits: &Limits) -> Result<BigUint> {
    let n = mu.n();
    if nu.n() != n {
        return Err(Error::SizeMismatch { left: n, right: nu.n() });
    }
    limits.check_oracle(n)?;
    let want_beta = 2 + n as i64 - 2 * g as i64 - mu.len() as i64 - nu.len() as i64;
    if want_beta < 1 || want_beta > n as i64 {
        return Ok(BigUint::zero());
    }
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let mut count = 0u64;
    for alpha in all.iter().filter(|a| &a.cycle_type() == mu) {
        for beta in all.iter().filter(|b| b.num_cycles() as i64 == want_beta) {
            let prod = alpha.compose(beta)?;
            if &prod.cycle_type() == nu
                && orbit_partition(n, &[alpha.clone(), beta.clone()])?.num_blocks() == 1
            {
                count += 1;
            }
        }
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> IntPartition {
        IntPartition::new(v.to_vec()).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    fn h(mu: &[usize], nu: &[usize], g: usize, kind: Kind, route: Route) -> u64 {
        let q = HurwitzQuery::new(p(mu), Some(p(nu)), g, kind).unwrap();
        count_double_hurwitz(&q, route, &lim()).unwrap().try_into().unwrap()
    }

    #[test]
    fn worked_example_table() {
        for route in [Route::Dfs, Route::Fast] {
            let mono: Vec<u64> = [[3].as_slice(), &[2, 1], &[1, 1, 1]]
                .iter()
                .map(|nu| h(&[1, 1, 1], nu, 0, Kind::Monotone, route))
                .collect();
            assert_eq!(mono, vec![4, 12, 8], "{route:?}");
            let strict: Vec<u64> = [[3].as_slice(), &[2, 1], &[1, 1, 1]]
                .iter()
                .map(|nu| h(&[1, 1, 1], nu, 0, Kind::Strict, route))
                .collect();
            assert_eq!(strict, vec![2, 0, 0], "{route:?}");
        }
    }

    #[test]
    fn small_cases() {
        for g in 0..=5 {
            let want = u64::from(g == 0);
            assert_eq!(h(&[1], &[1], g, Kind::Monotone, Route::Fast), want);
            assert_eq!(h(&[1], &[1], g, Kind::Strict, Route::Fast), want);
            assert_eq!(h(&[2], &[2], g, Kind::Monotone, Route::Fast), 1);
            assert_eq!(h(&[2], &[1, 1], g, Kind::Monotone, Route::Fast), 1);
            assert_eq!(h(&[2], &[2], g, Kind::Monotone, Route::Dfs), 1);
        }
    }

    #[test]
    fn path_examples() {
        let t12 = Permutation::from_cycles(2, &[vec![1, 2]]).unwrap();
        let q = PathQuery::new(t12, 2, 1, Kind::Monotone);
        assert_eq!(count_paths(&q, &lim()).unwrap(), BigUint::from(1u32));
        assert_eq!(count_paths_fast(&q, &lim()).unwrap(), BigUint::from(1u32));
        let mut seen = Vec::new();
        for_each_path(&q, &lim(), |path| seen.push(path.to_vec())).unwrap();
        let t = Transposition::new(1, 2).unwrap();
        assert_eq!(seen, vec![vec![t, t]]);

        let q = PathQuery::new(Permutation::identity(1), 0, 0, Kind::Monotone);
        assert_eq!(count_paths(&q, &lim()).unwrap(), BigUint::from(1u32));

        let c3 = Permutation::full_cycle(3);
        for r in 3..=6 {
            for d in 0..=3 {
                let q = PathQuery::new(c3.clone(), r, d, Kind::Strict);
                assert!(count_paths(&q, &lim()).unwrap().is_zero());
                assert!(count_paths_fast(&q, &lim()).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn routes_agree_on_all_of_s4() {
        for alpha in Permutation::all(4) {
            for kind in [Kind::Monotone, Kind::Strict] {
                let profile = path_profile(&alpha, 6, kind, &lim()).unwrap();
                for r in 0..=6 {
                    for d in 0..=2 {
                        let q = PathQuery::new(alpha.clone(), r, d, kind);
                        let slow = count_paths(&q, &lim()).unwrap();
                        let target = q.target_cycles();
                        let from_profile: BigUint = profile
                            .iter()
                            .filter(|((rr, nu), _)| *rr == r && Some(nu.len()) == target)
                            .map(|(_, c)| c)
                            .sum();
                        assert_eq!(slow, from_profile, "alpha={alpha} r={r} d={d} {kind}");
                        assert_eq!(slow, count_paths_fast(&q, &lim()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn constellations_small() {
        assert_eq!(count_constellations(&p(&[1]), &p(&[1]), 0, &lim()).unwrap(), BigUint::from(1u32));
        assert_eq!(
            count_constellations(&p(&[1, 1, 1]), &p(&[3]), 0, &lim()).unwrap(),
            BigUint::from(2u32)
        );
        assert!(count_constellations(&p(&[2]), &p(&[1]), 0, &lim()).is_err());
    }

    #[test]
    fn query_validation() {
        assert!(HurwitzQuery::new(p(&[2, 1]), Some(p(&[2])), 0, Kind::Monotone).is_err());
        assert!(HurwitzQuery::new(IntPartition::empty(), None, 0, Kind::Monotone).is_err());
        assert_eq!("strict".parse::<Kind>().unwrap(), Kind::Strict);
        assert!("sideways".parse::<Kind>().is_err());
    }

    #[test]
    fn guards_refuse_large_instances() {
        let tight = Limits { max_n_dfs: 3, max_n_groupalgebra: 3, ..Limits::default() };
        let q = PathQuery::new(Permutation::full_cycle(4), 3, 0, Kind::Monotone);
        assert!(matches!(count_paths(&q, &tight), Err(Error::LimitExceeded { .. })));
        assert!(matches!(count_paths_fast(&q, &tight), Err(Error::LimitExceeded { .. })));
    }
}
