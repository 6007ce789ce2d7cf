//! Executable checks of the identities relating monotone and strictly
//! monotone path counts, LUE moments and Schröder-type numbers, plus the
//! invariant suites behind `hwz verify`.
//!
//! Every check returns an [`IdentityReport`]; a failing report carries the
//! inputs at which the two sides differ.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{complete_symmetric, BigRat, LaurentN, Poly, RatFunc, Var};
use crate::cumulants::{
    scaled_cumulant_hurwitz, scaled_cumulant_oracle, time_delay_coefficients, trace_moment_oracle, Ensemble,
    TraceMonomial,
};
use crate::hurwitz::{for_each_path, path_profile, HurwitzQuery, Kind, PathQuery, Route};
use crate::sym::{binomial, partitions_of, IntPartition, Permutation, Transposition};
use crate::weingarten::{convolve, omega, omega_via_jm, wg, wg_expanded, wg_series, CentralElement};
use crate::{Error, Limits, Result};

/// A tuple of transpositions `(a₁ b₁) … (a_r b_r)` in `S_n` with `aᵢ < bᵢ`
/// and the `bᵢ` weakly (monotone) or strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotonePath {
    n: usize,
    steps: Vec<Transposition>,
    kind: Kind,
}

impl MonotonePath {
    pub fn new(n: usize, steps: Vec<Transposition>, kind: Kind) -> Result<Self> {
        for t in &steps {
            if t.a == 0 || t.a >= t.b || t.b > n {
                return Err(Error::InvalidPath(format!("{t} is not a transposition of S_{n}")));
            }
        }
        for w in steps.windows(2) {
            let ok = match kind {
                Kind::Monotone => w[0].b <= w[1].b,
                Kind::Strict => w[0].b < w[1].b,
            };
            if !ok {
                return Err(Error::InvalidPath(format!("{} then {} is not {kind}", w[0], w[1])));
            }
        }
        Ok(MonotonePath { n, steps, kind })
    }

    pub fn empty(n: usize, kind: Kind) -> Self {
        MonotonePath {
            n,
            steps: Vec::new(),
            kind,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Transposition] {
        &self.steps
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `α τ₁ ⋯ τ_r`.
    pub fn endpoint(&self, alpha: &Permutation) -> Result<Permutation> {
        if alpha.n() != self.n {
            return Err(Error::SizeMismatch {
                left: alpha.n(),
                right: self.n,
            });
        }
        let mut p = alpha.clone();
        for &t in &self.steps {
            p.mul_transposition(t);
        }
        Ok(p)
    }

    /// Whether `(1…n) τ₁ ⋯ τ_r` has `r + 1` cycles, i.e. the path has no
    /// defect from the full cycle.
    pub fn is_minimal(&self) -> bool {
        self.endpoint(&Permutation::full_cycle(self.n))
            .map(|p| p.num_cycles() == self.len() + 1)
            .unwrap_or(false)
    }
}

impl fmt::Display for MonotonePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("()");
        }
        for t in &self.steps {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityStatus {
    Pass,
    Fail,
    /// The identity in its usual form does not hold, and a corrected form was checked
    /// separately. Not a failure of the implementation.
    Discrepancy,
}

/// Outcome of one identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    pub params: String,
    pub status: IdentityStatus,
    /// Number of individual equalities tested.
    pub checked: usize,
    pub witnesses: Vec<String>,
}

impl IdentityReport {
    fn from_witnesses(name: &str, params: String, checked: usize, witnesses: Vec<String>) -> Self {
        let status = if witnesses.is_empty() {
            IdentityStatus::Pass
        } else {
            IdentityStatus::Fail
        };
        IdentityReport {
            name: name.to_string(),
            params,
            status,
            checked,
            witnesses,
        }
    }

    fn error(name: &str, params: String, e: Error) -> Self {
        IdentityReport {
            name: name.to_string(),
            params,
            status: IdentityStatus::Fail,
            checked: 0,
            witnesses: vec![format!("error: {e}")],
        }
    }

    pub fn passed(&self) -> bool {
        self.status != IdentityStatus::Fail
    }
}

impl fmt::Display for IdentityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            IdentityStatus::Pass => "PASS",
            IdentityStatus::Fail => "FAIL",
            IdentityStatus::Discrepancy => "DISCREPANCY",
        };
        write!(f, "{tag} {} [{}] ({} checks)", self.name, self.params, self.checked)?;
        for w in &self.witnesses {
            write!(f, "\n    {w}")?;
        }
        Ok(())
    }
}

/// Path counts from `alpha` with defect `d`, indexed by `r = 0..=rmax`.
fn counts_by_length(alpha: &Permutation, rmax: usize, d: usize, kind: Kind, limits: &Limits) -> Result<Vec<BigUint>> {
    let profile = path_profile(alpha, rmax, kind, limits)?;
    let mut out = vec![BigUint::zero(); rmax + 1];
    for ((r, nu), c) in profile {
        let q = PathQuery::new(alpha.clone(), r, d, kind);
        if q.target_cycles() == Some(nu.len()) {
            out[r] += c;
        }
    }
    Ok(out)
}

/// `#ℱ_{n,r,0}((1…n))` for `r = 0..=n`.
fn full_cycle_counts(n: usize, kind: Kind, limits: &Limits) -> Result<Vec<BigUint>> {
    counts_by_length(&Permutation::full_cycle(n), n, 0, kind, limits)
}

fn big(v: &BigUint) -> BigRat {
    BigRat::from_integer(BigInt::from(v.clone()))
}

/// `Φ_n`: the steps of `w ∈ ℱ↑_{n+1,r}` at the record times of
/// `(b₁, …, b_r)`, stopping before the first `bᵢ = n+1`.
pub fn phi_map(w: &MonotonePath) -> Result<MonotonePath> {
    if w.kind != Kind::Monotone || w.n == 0 {
        return Err(Error::InvalidPath(format!("{w} is not a monotone path")));
    }
    if !w.is_minimal() {
        return Err(Error::InvalidPath(format!(
            "{w} is not a minimal factorization from (1…{})",
            w.n
        )));
    }
    let n = w.n - 1;
    let mut out = Vec::new();
    let mut last_b = 0;
    for &t in &w.steps {
        if t.b > n {
            break;
        }
        if t.b > last_b {
            out.push(t);
            last_b = t.b;
        }
    }
    MonotonePath::new(n, out, Kind::Strict)
}

/// All of `ℱ_{n,r,0}((1…n))` for one length.
pub fn minimal_paths(n: usize, r: usize, kind: Kind, limits: &Limits) -> Result<Vec<MonotonePath>> {
    let q = PathQuery::new(Permutation::full_cycle(n), r, 0, kind);
    let mut out = Vec::new();
    for_each_path(&q, limits, |steps| {
        out.push(MonotonePath {
            n,
            steps: steps.to_vec(),
            kind,
        })
    })?;
    Ok(out)
}

/// `#(Φ_n⁻¹(w) ∩ ℱ↑_{n+1,r})` by enumerating `ℱ↑_{n+1,r}`.
pub fn preimage_count(w: &MonotonePath, r: usize, limits: &Limits) -> Result<u64> {
    if w.kind != Kind::Strict || !w.is_minimal() {
        return Err(Error::InvalidPath(format!("{w} is not in the strict minimal family")));
    }
    let mut count = 0;
    for v in minimal_paths(w.n + 1, r, Kind::Monotone, limits)? {
        if &phi_map(&v)? == w {
            count += 1;
        }
    }
    Ok(count)
}

/// `S(n, d) = Σ_r #ℱ↑_{n,r,d}((1…n))` for `n ≤ nmax`, `d ≤ dmax`, indexed
/// `[n][d]`.
pub fn schroeder_table(nmax: usize, dmax: usize, limits: &Limits) -> Result<Vec<Vec<BigUint>>> {
    let mut table = vec![vec![BigUint::zero(); dmax + 1]; nmax + 1];
    table[0][0] = BigUint::one();
    for (n, row) in table.iter_mut().enumerate().skip(1) {
        // #β ≥ 1 bounds r - 2d ≤ n - 1
        let rmax = n - 1 + 2 * dmax;
        let alpha = Permutation::full_cycle(n);
        for ((r, nu), c) in path_profile(&alpha, rmax, Kind::Monotone, limits)? {
            let twice_d = r + 1 - nu.len();
            if twice_d % 2 == 0 && twice_d / 2 <= dmax {
                row[twice_d / 2] += c;
            }
        }
    }
    Ok(table)
}

pub fn schroeder_s(n: usize, d: usize, limits: &Limits) -> Result<BigUint> {
    Ok(schroeder_table(n, d, limits)?[n][d].clone())
}

/// `₂F₁(1-n, n; 2; -1)` as a terminating sum of Pochhammer ratios.
pub fn schroeder_hypergeometric(n: usize) -> BigRat {
    let a = 1 - n as i64;
    let b = n as i64;
    let mut term = BigRat::one();
    let mut sum = BigRat::zero();
    for k in 0.. {
        if term.is_zero() {
            break;
        }
        sum += &term;
        // ratio of consecutive terms: (a+k)(b+k)/((2+k)(k+1)) · (-1)
        let k = k as i64;
        term *= BigRat::new(BigInt::from(-(a + k) * (b + k)), BigInt::from((2 + k) * (k + 1)));
    }
    sum
}

/// The three-term recursion
/// `(n+1)S(n+1,d+1) - 3(2n-1)S(n,d+1) + (n-2)S(n-1,d+1) = n²(n+1)S(n+1,d)`
/// for `1 ≤ n ≤ nmax-1`, `0 ≤ d ≤ dmax-1`.
pub fn check_recursion(nmax: usize, dmax: usize, limits: &Limits) -> IdentityReport {
    let name = "schroeder-recursion";
    let params = format!("nmax={nmax}, dmax={dmax}");
    let s = match schroeder_table(nmax, dmax, limits) {
        Ok(s) => s,
        Err(e) => return IdentityReport::error(name, params, e),
    };
    let z = |v: &BigUint| BigInt::from(v.clone());
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..nmax {
        for d in 0..dmax {
            let ni = n as i64;
            let lhs = BigInt::from(ni + 1) * z(&s[n + 1][d + 1]) - BigInt::from(3 * (2 * ni - 1)) * z(&s[n][d + 1])
                + BigInt::from(ni - 2) * z(&s[n - 1][d + 1]);
            let rhs = BigInt::from(ni * ni * (ni + 1)) * z(&s[n + 1][d]);
            checked += 1;
            if lhs != rhs {
                witnesses.push(format!("n={n}, d={d}: {lhs} != {rhs}"));
            }
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// `S(n, 0)` against the large Schröder numbers and the hypergeometric
/// closed form.
pub fn check_schroeder(nmax: usize, limits: &Limits) -> IdentityReport {
    let name = "schroeder-genus-zero";
    let params = format!("nmax={nmax}");
    const LARGE_SCHROEDER: [u64; 9] = [1, 1, 2, 6, 22, 90, 394, 1806, 8558];
    let s = match schroeder_table(nmax, 1, limits) {
        Ok(s) => s,
        Err(e) => return IdentityReport::error(name, params, e),
    };
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for (n, row) in s.iter().enumerate() {
        if n == 0 {
            continue;
        }
        let closed = schroeder_hypergeometric(n);
        checked += 1;
        if big(&row[0]) != closed {
            witnesses.push(format!("n={n}: enumeration {} vs 2F1 {closed}", row[0]));
        }
        if let Some(&known) = LARGE_SCHROEDER.get(n) {
            checked += 1;
            if row[0] != BigUint::from(known) {
                witnesses.push(format!("n={n}: enumeration {} vs {known}", row[0]));
            }
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// `Σ_{r=0}^n (c-1)^{n-r} #ℱ↑_{n+1,r} = Σ_{l=0}^{n-1} c^{n-l} #ℱ⇑_{n,l}` as
/// polynomials in `c`, for `1 ≤ n ≤ nmax`.
pub fn check_duality(nmax: usize, limits: &Limits) -> IdentityReport {
    let name = "duality";
    let params = format!("nmax={nmax}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..=nmax {
        let run = || -> Result<(Poly, Poly)> {
            let up = full_cycle_counts(n + 1, Kind::Monotone, limits)?;
            let strict = full_cycle_counts(n, Kind::Strict, limits)?;
            let c_minus_1 = Poly::from_ints(&[-1, 1]);
            let mut lhs = Poly::zero();
            for (r, count) in up.iter().enumerate().take(n + 1) {
                lhs = &lhs + &c_minus_1.pow((n - r) as u32).scale(&big(count));
            }
            let mut rhs = Poly::zero();
            for (l, count) in strict.iter().enumerate().take(n) {
                rhs = &rhs + &Poly::monomial(big(count), n - l);
            }
            Ok((lhs, rhs))
        };
        checked += 1;
        match run() {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => witnesses.push(format!(
                "n={n}: {} != {}",
                lhs.display_with('c'),
                rhs.display_with('c')
            )),
            Err(e) => witnesses.push(format!("n={n}: error: {e}")),
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// `E tr (NW)^{-(n+1)} = ∏_{j=-n}^{n} (α+j)⁻¹ · E tr (NW)^n` exactly, with
/// `α = M - N`, for `0 ≤ n ≤ nmax`.
pub fn check_reciprocity(nmax: usize, limits: &Limits) -> IdentityReport {
    let name = "reciprocity";
    let params = format!("nmax={nmax}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 0..=nmax {
        checked += 1;
        match reciprocity_sides(n, limits) {
            Ok((lhs, rhs)) if lhs == rhs => {}
            Ok((lhs, rhs)) => witnesses.push(format!("n={n}: {lhs} != {rhs}")),
            Err(e) => witnesses.push(format!("n={n}: error: {e}")),
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// Both sides of the reciprocity law as Laurent polynomials in `N` over
/// `ℚ(x)`, `x = M - N`.
pub fn reciprocity_sides(n: usize, limits: &Limits) -> Result<(LaurentN, LaurentN)> {
    let inv = trace_moment_oracle(&TraceMonomial::new(IntPartition::new(vec![n + 1])?, Ensemble::Inverse)?, limits)?;
    let lhs = inv.shift_n(-(n as i64 + 2));
    let pos = if n == 0 {
        LaurentN::n_pow(Var::Y, 1)
    } else {
        trace_moment_oracle(&TraceMonomial::new(IntPartition::new(vec![n])?, Ensemble::Wishart)?, limits)?
    };
    let pos = pos.shift_inner_by_n(Var::X)?.shift_n(n as i64 - 1);
    let mut factor = RatFunc::one(Var::X);
    for j in -(n as i64)..=n as i64 {
        factor = &factor * &RatFunc::shifted_power(Var::X, &BigRat::from_integer((-j).into()), -1);
    }
    Ok((lhs, pos.mul_inner(&factor)))
}

/// `w(n; g) = Σ_{ℓ₁+…+ℓ_n = g} ∏ k^{2ℓ_k} = h_g(1², 2², …, n²)`.
pub fn w_weight(n: usize, g: usize) -> BigRat {
    let squares: Vec<BigRat> = (1..=n as i64).map(|k| BigRat::from_integer((k * k).into())).collect();
    complete_symmetric(&squares, g)
}

/// `H_g(n; x) = Σ_{ν⊢n} x^{-#ν} H_g((n), ν)` with `x ↦ x + shift`.
fn hurwitz_generating(n: usize, g: usize, kind: Kind, shift: i64, limits: &Limits) -> Result<RatFunc> {
    let q = HurwitzQuery::new(IntPartition::new(vec![n])?, None, g, kind)?;
    let table = crate::hurwitz::hurwitz_table(&q, Route::Auto, limits)?;
    let mut acc = RatFunc::zero(Var::X);
    let a = BigRat::from_integer((-shift).into());
    for row in &table.rows {
        if row.summed.is_zero() {
            continue;
        }
        let term = RatFunc::shifted_power(Var::X, &a, -(row.nu.len() as i64)).scale(&big(&row.summed));
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `((x-1)/x)^{n+1} H↑_g(n+1; x-1) = n Σ_{h≤g} ((x-1)/x)^{2h} w(n; g-h) H⇑_h(n; x)`
/// for `1 ≤ n ≤ nmax`, `g ≤ gmax`.
pub fn check_functional_relation(nmax: usize, gmax: usize, limits: &Limits) -> IdentityReport {
    let name = "functional-relation";
    let params = format!("nmax={nmax}, gmax={gmax}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..=nmax {
        for g in 0..=gmax {
            checked += 1;
            match functional_relation_sides(n, g, limits) {
                Ok((lhs, rhs)) if lhs == rhs => {}
                Ok((lhs, rhs)) => witnesses.push(format!("n={n}, g={g}: {lhs} != {rhs}")),
                Err(e) => witnesses.push(format!("n={n}, g={g}: error: {e}")),
            }
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

pub fn functional_relation_sides(n: usize, g: usize, limits: &Limits) -> Result<(RatFunc, RatFunc)> {
    let ratio = RatFunc::new(Var::X, Poly::from_ints(&[-1, 1]), Poly::x())?;
    let lhs = &ratio.pow(n as i64 + 1)? * &hurwitz_generating(n + 1, g, Kind::Monotone, -1, limits)?;
    let mut rhs = RatFunc::zero(Var::X);
    for h in 0..=g {
        let term = (&ratio.pow(2 * h as i64)? * &hurwitz_generating(n, h, Kind::Strict, 0, limits)?)
            .scale(&w_weight(n, g - h));
        rhs = &rhs + &term;
    }
    Ok((lhs, rhs.scale(&BigRat::from_integer(n.into()))))
}

/// The two generating functions of the covariance duality for one `α`:
/// `Σ_r z^r #ℱ↑_{n,r,0}(α)`, the right side in its usual form
/// `Σ_r (z+1)^{n-r} #ℱ⇑_{n,r,0}(α)`, and `Σ_r z^r (z+1)^{n-r} #ℱ⇑_{n,r,0}(α)`.
pub fn covariance_sides(alpha: &Permutation, limits: &Limits) -> Result<(Poly, Poly, Poly)> {
    let n = alpha.n();
    // #β ≤ n bounds r ≤ n + 2·0 - 2 + #α
    let rmax = n;
    let up = counts_by_length(alpha, rmax, 0, Kind::Monotone, limits)?;
    let strict = counts_by_length(alpha, rmax, 0, Kind::Strict, limits)?;
    let z_plus_1 = Poly::from_ints(&[1, 1]);
    let mut lhs = Poly::zero();
    let mut printed = Poly::zero();
    let mut variant = Poly::zero();
    for r in 0..=rmax {
        lhs = &lhs + &Poly::monomial(big(&up[r]), r);
        if !strict[r].is_zero() {
            let p = z_plus_1.pow((n - r) as u32).scale(&big(&strict[r]));
            variant = &variant + &p.shift_up(r);
            printed = &printed + &p;
        }
    }
    Ok((lhs, printed, variant))
}

/// The covariance duality for every `α ∈ S_n` with two cycles, `2 ≤ n ≤ nmax`.
///
/// Returns two reports: the identity in its usual form, marked as a
/// discrepancy with witnesses when it fails, and the form with `z^r` kept
/// on the strict side, which must hold.
pub fn check_covariance_duality(nmax: usize, limits: &Limits) -> Vec<IdentityReport> {
    let params = format!("nmax={nmax}");
    let mut printed_w = Vec::new();
    let mut variant_w = Vec::new();
    let mut checked = 0;
    for n in 2..=nmax {
        for alpha in Permutation::all(n).filter(|a| a.num_cycles() == 2) {
            checked += 1;
            match covariance_sides(&alpha, limits) {
                Ok((lhs, printed, variant)) => {
                    if lhs != printed {
                        printed_w.push(format!(
                            "alpha={alpha}: {} != {}",
                            lhs.display_with('z'),
                            printed.display_with('z')
                        ));
                    }
                    if lhs != variant {
                        variant_w.push(format!(
                            "alpha={alpha}: {} != {}",
                            lhs.display_with('z'),
                            variant.display_with('z')
                        ));
                    }
                }
                Err(e) => variant_w.push(format!("alpha={alpha}: error: {e}")),
            }
        }
    }
    let mut printed = IdentityReport::from_witnesses("covariance-duality", params.clone(), checked, printed_w);
    if printed.status == IdentityStatus::Fail {
        printed.status = IdentityStatus::Discrepancy;
    }
    let variant = IdentityReport::from_witnesses("covariance-duality-corrected", params, checked, variant_w);
    vec![printed, variant]
}

/// `Φ_n` lands in `ℱ⇑_n`, and every `w ∈ ℱ⇑_{n,l}` has exactly `C(n-l, r-l)`
/// preimages in `ℱ↑_{n+1,r}`, for `1 ≤ n ≤ nmax`, `r ≤ n`.
pub fn check_preimages(nmax: usize, limits: &Limits) -> IdentityReport {
    let name = "phi-preimages";
    let params = format!("nmax={nmax}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..=nmax {
        let strict: Vec<MonotonePath> = match (0..n)
            .map(|l| minimal_paths(n, l, Kind::Strict, limits))
            .collect::<Result<Vec<_>>>()
        {
            Ok(v) => v.concat(),
            Err(e) => return IdentityReport::error(name, params, e),
        };
        for r in 0..=n {
            let ups = match minimal_paths(n + 1, r, Kind::Monotone, limits) {
                Ok(v) => v,
                Err(e) => return IdentityReport::error(name, params, e),
            };
            let mut fibres: HashMap<MonotonePath, u64> = HashMap::new();
            for v in &ups {
                match phi_map(v) {
                    Ok(w) => {
                        checked += 1;
                        if !w.is_minimal() {
                            witnesses.push(format!("Phi_{n}({v}) = {w} is not minimal"));
                        }
                        *fibres.entry(w).or_insert(0) += 1;
                    }
                    Err(e) => witnesses.push(format!("Phi_{n}({v}): {e}")),
                }
            }
            for w in &strict {
                let l = w.len();
                let want = if r >= l { binomial(n - l, r - l) } else { BigUint::zero() };
                let got = BigUint::from(fibres.get(w).copied().unwrap_or(0));
                checked += 1;
                if got != want {
                    witnesses.push(format!("n={n}, r={r}, w={w}: {got} preimages, expected {want}"));
                }
            }
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// `Σ_l C(n-l, r-l) #ℱ⇑_{n,l} = #ℱ↑_{n+1,r}` for `1 ≤ n ≤ nmax`, `r ≤ n`.
pub fn check_binomial_sum(nmax: usize, limits: &Limits) -> IdentityReport {
    let name = "binomial-sum";
    let params = format!("nmax={nmax}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..=nmax {
        let (up, strict) = match (
            full_cycle_counts(n + 1, Kind::Monotone, limits),
            full_cycle_counts(n, Kind::Strict, limits),
        ) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return IdentityReport::error(name, params, e),
        };
        for r in 0..=n {
            let sum: BigUint = (0..=r.min(n - 1)).map(|l| binomial(n - l, r - l) * &strict[l]).sum();
            checked += 1;
            if sum != up[r] {
                witnesses.push(format!("n={n}, r={r}: {sum} != {}", up[r]));
            }
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

/// `Wg * Ω = Ω * Wg = δ_id`, the Jucys–Murphy form of `Ω`, and the
/// monotone expansion of `Wg` against its exact expansion to `order`.
pub fn check_weingarten(nmax: usize, order: usize, limits: &Limits) -> IdentityReport {
    let name = "weingarten";
    let params = format!("nmax={nmax}, order={order}");
    let mut witnesses = Vec::new();
    let mut checked = 0;
    for n in 1..=nmax {
        let run = || -> Result<Vec<String>> {
            let mut bad = Vec::new();
            let w = wg(n, limits)?;
            let om = omega(n);
            let id = CentralElement::delta_id(n, Var::Z);
            if convolve(&w, &om, limits)? != id {
                bad.push(format!("n={n}: Wg*Omega != delta"));
            }
            if convolve(&om, &w, limits)? != id {
                bad.push(format!("n={n}: Omega*Wg != delta"));
            }
            if omega_via_jm(n, limits)? != om {
                bad.push(format!("n={n}: Jucys-Murphy product != Omega"));
            }
            if wg_series(n, order, limits)? != wg_expanded(n, order, limits)? {
                bad.push(format!("n={n}: monotone series != expansion of Wg"));
            }
            Ok(bad)
        };
        checked += 4;
        match run() {
            Ok(bad) => witnesses.extend(bad),
            Err(e) => witnesses.push(format!("n={n}: error: {e}")),
        }
    }
    IdentityReport::from_witnesses(name, params, checked, witnesses)
}

fn monomials(nmax: usize) -> Vec<TraceMonomial> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for mu in partitions_of(n) {
            for e in [Ensemble::Wishart, Ensemble::Inverse] {
                out.push(TraceMonomial { powers: mu.clone(), ensemble: e });
            }
        }
    }
    out
}

/// Hurwitz route against the moment route for every `μ ⊢ n ≤ nmax`:
/// exact terminating agreement for `W`, agreement to `N^{-2·gmax}` for `W⁻¹`.
pub fn check_oracle_equivalence(nmax: usize, gmax: usize, limits: &Limits) -> IdentityReport {
    let name = "oracle-equivalence";
    let params = format!("nmax={nmax}, gmax={gmax}");
    let results: Vec<Option<String>> = monomials(nmax)
        .par_iter()
        .map(|m| {
            let a = scaled_cumulant_hurwitz(m, gmax, limits);
            let b = scaled_cumulant_oracle(m, gmax, limits);
            match (a, b) {
                (Ok(a), Ok(b)) => {
                    let exact_ok = m.ensemble == Ensemble::Inverse || (a.exact && b.exact);
                    if a == b && exact_ok {
                        None
                    } else {
                        Some(format!("{m}: hurwitz [{}] vs oracle [{}]", show(&a.coeffs), show(&b.coeffs)))
                    }
                }
                (Err(e), _) | (_, Err(e)) => Some(format!("{m}: error: {e}")),
            }
        })
        .collect();
    let checked = results.len();
    IdentityReport::from_witnesses(name, params, checked, results.into_iter().flatten().collect())
}

fn show(coeffs: &[RatFunc]) -> String {
    coeffs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// Odd powers of `N⁻¹` vanish in every moment-route scaled cumulant.
pub fn check_parity(nmax: usize, gmax: usize, limits: &Limits) -> IdentityReport {
    let name = "parity";
    let params = format!("nmax={nmax}, gmax={gmax}");
    let results: Vec<Option<String>> = monomials(nmax)
        .par_iter()
        .map(|m| scaled_cumulant_oracle(m, gmax, limits).err().map(|e| format!("{m}: {e}")))
        .collect();
    let checked = results.len();
    IdentityReport::from_witnesses(name, params, checked, results.into_iter().flatten().collect())
}

/// Every time-delay coefficient `c_{2g}(μ)`, `μ ⊢ n ≤ nmax`, `g ≤ gmax`, is
/// a nonnegative integer.
pub fn check_integrality(nmax: usize, gmax: usize, limits: &Limits) -> IdentityReport {
    let name = "integrality";
    let params = format!("nmax={nmax}, gmax={gmax}");
    let mus: Vec<IntPartition> = (1..=nmax).flat_map(partitions_of).collect();
    let results: Vec<Option<String>> = mus
        .par_iter()
        .map(|mu| time_delay_coefficients(mu, gmax, limits).err().map(|e| format!("{mu}: {e}")))
        .collect();
    let checked = mus.len() * (gmax + 1);
    IdentityReport::from_witnesses(name, params, checked, results.into_iter().flatten().collect())
}

/// A named group of checks for `hwz verify`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Duality,
    Reciprocity,
    Funcrel,
    Recursion,
    Schroeder,
    Preimage,
    Covariance,
    Weingarten,
    Oracle,
    Parity,
    Integrality,
}

impl Suite {
    pub const EACH: [Suite; 11] = [
        Suite::Duality,
        Suite::Reciprocity,
        Suite::Funcrel,
        Suite::Recursion,
        Suite::Schroeder,
        Suite::Preimage,
        Suite::Covariance,
        Suite::Weingarten,
        Suite::Oracle,
        Suite::Parity,
        Suite::Integrality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Duality => "duality",
            Suite::Reciprocity => "reciprocity",
            Suite::Funcrel => "funcrel",
            Suite::Recursion => "recursion",
            Suite::Schroeder => "schroeder",
            Suite::Preimage => "preimage",
            Suite::Covariance => "covariance",
            Suite::Weingarten => "weingarten",
            Suite::Oracle => "oracle",
            Suite::Parity => "parity",
            Suite::Integrality => "integrality",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidQuery(format!("unknown suite {s:?}")))
    }
}

/// Ranges for a verification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub nmax: usize,
    pub gmax: usize,
    pub dmax: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            nmax: 4,
            gmax: 2,
            dmax: 2,
        }
    }
}

fn run_one(suite: Suite, cfg: SuiteConfig, limits: &Limits) -> Vec<IdentityReport> {
    let SuiteConfig { nmax, gmax, dmax } = cfg;
    match suite {
        Suite::All => run_suite(suite, cfg, limits),
        Suite::Duality => vec![check_duality(nmax, limits)],
        Suite::Reciprocity => vec![check_reciprocity(nmax, limits)],
        Suite::Funcrel => vec![check_functional_relation(nmax, gmax, limits)],
        Suite::Recursion => vec![check_recursion(nmax, dmax, limits)],
        Suite::Schroeder => vec![check_schroeder(nmax, limits)],
        Suite::Preimage => vec![check_preimages(nmax, limits), check_binomial_sum(nmax, limits)],
        Suite::Covariance => check_covariance_duality(nmax, limits),
        Suite::Weingarten => vec![check_weingarten(nmax, 2 * gmax, limits)],
        Suite::Oracle => vec![check_oracle_equivalence(nmax, gmax, limits)],
        Suite::Parity => vec![check_parity(nmax, gmax, limits)],
        Suite::Integrality => vec![check_integrality(nmax, gmax, limits)],
    }
}

/// Runs one suite, or every suite for [`Suite::All`], in parallel; reports
/// come back sorted by name and parameters.
pub fn run_suite(suite: Suite, cfg: SuiteConfig, limits: &Limits) -> Vec<IdentityReport> {
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut reports: Vec<IdentityReport> = suites
        .par_iter()
        .flat_map_iter(|&s| run_one(s, cfg, limits))
        .collect();
    reports.sort_by(|a, b| (&a.name, &a.params).cmp(&(&b.name, &b.params)));
    reports
}

/// `#ℱ_{n,r,0}((1…n))` for `r ≤ n`, grouped for display.
pub fn minimal_counts(n: usize, kind: Kind, limits: &Limits) -> Result<BTreeMap<usize, BigUint>> {
    Ok(full_cycle_counts(n, kind, limits)?
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect())
}
