//! Trace cumulants of LUE matrices `W = XX†/N` and of their inverses.
//!
//! Two routes produce the scaled cumulant
//! `𝒞_X(μ) = (|μ|!/z_μ) N^{2(#μ-1)} C_{#μ}(tr X^{μ₁}, …, tr X^{μ_ℓ})`
//! as a series `Σ_g N^{-2g} f_g(c)`:
//!
//! * from Hurwitz numbers, `f_g = Σ_ν H↑_g(μ,ν) (c-1)^{-(n+r)}` for `X = W⁻¹`
//!   and `f_g = Σ_ν H⇑_g(μ,ν) c^{n-r}` for `X = W`, with `r = #μ+#ν+2g-2`;
//! * from exact moments, a sum over `S_n` of `Ω` or Weingarten weights,
//!   followed by Möbius inversion over set partitions.
//!
//! `tr = Tr/N` is the normalized trace.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{BigRat, CumulantSeries, LaurentN, Poly, RatFunc, Var};
use crate::hurwitz::{path_profile, Kind};
use crate::sym::{factorial, set_partitions, IntPartition, Permutation, SetPartition};
use crate::weingarten::wg;
use crate::{Error, Limits, Result};

/// Which matrix the traces are taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// `W` itself.
    Wishart,
    /// `W⁻¹`.
    Inverse,
}

impl Ensemble {
    /// The variable that scales linearly with `N` in exact moments:
    /// `y = cN = M` for `W`, `x = (c-1)N = M - N` for `W⁻¹`.
    pub fn inner_var(self) -> Var {
        match self {
            Ensemble::Wishart => Var::Y,
            Ensemble::Inverse => Var::X,
        }
    }

    /// `inner / N` as a function of `c`.
    pub fn scale(self) -> RatFunc {
        match self {
            Ensemble::Wishart => RatFunc::var_fn(Var::C),
            Ensemble::Inverse => RatFunc::from_poly(Var::C, Poly::from_ints(&[-1, 1])),
        }
    }

    /// The factorization family behind the Hurwitz route.
    pub fn kind(self) -> Kind {
        match self {
            Ensemble::Wishart => Kind::Strict,
            Ensemble::Inverse => Kind::Monotone,
        }
    }
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ensemble::Wishart => "wishart",
            Ensemble::Inverse => "inverse",
        })
    }
}

impl FromStr for Ensemble {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wishart" | "w" => Ok(Ensemble::Wishart),
            "inverse" | "inv" | "winv" => Ok(Ensemble::Inverse),
            other => Err(Error::InvalidQuery(format!("unknown matrix {other:?}"))),
        }
    }
}

/// `∏ tr X^{μᵢ}` with `X = W` or `W⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceMonomial {
    pub powers: IntPartition,
    pub ensemble: Ensemble,
}

impl TraceMonomial {
    pub fn new(powers: IntPartition, ensemble: Ensemble) -> Result<Self> {
        if powers.is_empty() {
            return Err(Error::InvalidQuery("empty trace monomial".into()));
        }
        Ok(TraceMonomial { powers, ensemble })
    }

    /// Builds from signed powers, `+k` for `tr W^k` and `-k` for `tr W^{-k}`.
    pub fn from_signed(powers: &[i64]) -> Result<Self> {
        if powers.contains(&0) {
            return Err(Error::InvalidQuery("trace powers must be nonzero".into()));
        }
        let pos = powers.iter().all(|&k| k > 0);
        let neg = powers.iter().all(|&k| k < 0);
        if !pos && !neg {
            return Err(Error::MixedSigns);
        }
        let ensemble = if pos { Ensemble::Wishart } else { Ensemble::Inverse };
        let parts = powers.iter().map(|k| k.unsigned_abs() as usize).collect();
        TraceMonomial::new(IntPartition::from_unsorted(parts), ensemble)
    }
}

impl fmt::Display for TraceMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.ensemble {
            Ensemble::Wishart => "",
            Ensemble::Inverse => "-",
        };
        let factors: Vec<String> = self
            .powers
            .parts()
            .iter()
            .map(|k| format!("tr W^{sign}{k}"))
            .collect();
        f.write_str(&factors.join(" "))
    }
}

/// A parameter that is either kept symbolic or fixed to a value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    Symbolic,
    Value(#[serde(with = "crate::serde_bigrat")] BigRat),
}

impl Param {
    pub fn value(&self) -> Option<&BigRat> {
        match self {
            Param::Symbolic => None,
            Param::Value(v) => Some(v),
        }
    }
}

/// `c = M/N` and `N`, each symbolic or numeric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WishartParams {
    pub c: Param,
    pub n: Param,
}

impl WishartParams {
    pub fn symbolic() -> Self {
        WishartParams {
            c: Param::Symbolic,
            n: Param::Symbolic,
        }
    }

    pub fn at(c: BigRat, n: BigRat) -> Self {
        WishartParams {
            c: Param::Value(c),
            n: Param::Value(n),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.c == Param::Symbolic || self.n == Param::Symbolic
    }

    /// `M = cN`.
    pub fn m(&self) -> Option<BigRat> {
        Some(self.c.value()? * self.n.value()?)
    }

    /// The Laguerre shape `M - N`.
    pub fn shape(&self) -> Option<BigRat> {
        Some(self.m()? - self.n.value()?)
    }

    /// Whether the moments in `m` exist at these parameters: `c > 1 + n/N`
    /// for inverse powers of total degree `n`, `c > 1 - 1/N` otherwise.
    /// `None` while anything is symbolic.
    pub fn is_valid_for(&self, m: &TraceMonomial) -> Option<bool> {
        let c = self.c.value()?;
        let n = self.n.value()?;
        let deg = BigRat::from_integer(BigInt::from(m.powers.n()));
        Some(match m.ensemble {
            Ensemble::Inverse => c > &(BigRat::one() + deg / n),
            Ensemble::Wishart => c > &(BigRat::one() - n.recip()),
        })
    }

    /// The domain on which results for `m` hold, in words.
    pub fn validity_note(m: &TraceMonomial) -> String {
        match m.ensemble {
            Ensemble::Inverse => format!("valid for N > {}/(c-1)", m.powers.n()),
            Ensemble::Wishart => "valid for c > 1 - 1/N".to_string(),
        }
    }
}

/// `(|μ|!/z_μ) N^{2(#μ-1)} C_{#μ}(tr X^{μ₁}, …)` from Hurwitz numbers, to
/// order `N^{-2·gmax}`.
///
/// For `X = W` the strict counts vanish once `r ≥ n`, and the series is
/// marked exact when nothing beyond `gmax` survives.
pub fn scaled_cumulant_hurwitz(m: &TraceMonomial, gmax: usize, limits: &Limits) -> Result<CumulantSeries> {
    let mu = &m.powers;
    let n = mu.n();
    let ell = mu.len();
    let gcap = match m.ensemble {
        Ensemble::Wishart => gmax.max((n - ell) / 2),
        Ensemble::Inverse => gmax,
    };
    let mut rmax = ell + n + 2 * gcap - 2;
    if m.ensemble == Ensemble::Wishart {
        rmax = rmax.min(n.saturating_sub(1));
    }
    let alpha = Permutation::canonical_of_type(mu);
    let profile = path_profile(&alpha, rmax, m.ensemble.kind(), limits)?;
    let class_size = BigRat::from_integer(BigInt::from(mu.class_size()));
    let scale = m.ensemble.scale();
    let mut coeffs = vec![RatFunc::zero(Var::C); gcap + 1];
    for ((r, nu), count) in &profile {
        let twice_g = (*r + 2) as i64 - (ell + nu.len()) as i64;
        debug_assert!(twice_g >= 0 && twice_g % 2 == 0, "Riemann–Hurwitz parity");
        let g = (twice_g / 2) as usize;
        if g > gcap {
            continue;
        }
        let exponent = match m.ensemble {
            Ensemble::Inverse => -((n + r) as i64),
            Ensemble::Wishart => n as i64 - *r as i64,
        };
        let h = &class_size * BigRat::from_integer(BigInt::from(count.clone()));
        coeffs[g] = &coeffs[g] + &scale.pow(exponent)?.scale(&h);
    }
    Ok(finish_series(coeffs, gmax, m.ensemble))
}

fn finish_series(coeffs: Vec<RatFunc>, gmax: usize, ensemble: Ensemble) -> CumulantSeries {
    let exact = ensemble == Ensemble::Wishart && coeffs.iter().skip(gmax + 1).all(RatFunc::is_zero);
    CumulantSeries::new(coeffs, gmax, exact)
}

/// `E ∏ Tr X^{μᵢ}` exactly, as a Laurent polynomial in `N` over `ℚ(y)` with
/// `y = cN` (for `W`) or over `ℚ(x)` with `x = (c-1)N` (for `W⁻¹`).
///
/// With `α` of type `μ`,
/// `E ∏ Tr W^{μᵢ} = N^{-n} Σ_σ (cN)^{#σ} N^{#(σ⁻¹α)}` and
/// `E ∏ Tr W^{-μᵢ} = (-N)^n Σ_σ Wg_{n,(1-c)N}(σ) N^{#(σ⁻¹α)}`.
pub fn trace_moment_oracle(m: &TraceMonomial, limits: &Limits) -> Result<LaurentN> {
    let n = m.powers.n();
    limits.check_oracle(n)?;
    let alpha = Permutation::canonical_of_type(&m.powers);
    let mut histogram: HashMap<(IntPartition, usize), u64> = HashMap::new();
    for sigma in Permutation::all(n) {
        let j = sigma.inverse().compose(&alpha)?.num_cycles();
        *histogram.entry((sigma.cycle_type(), j)).or_insert(0) += 1;
    }
    let inner = m.ensemble.inner_var();
    let mut out = LaurentN::zero(inner);
    match m.ensemble {
        Ensemble::Wishart => {
            for ((lambda, j), count) in histogram {
                let f = RatFunc::from_poly(inner, Poly::monomial(BigRat::from_integer(count.into()), lambda.len()));
                out.add_term(j as i64 - n as i64, &f);
            }
        }
        Ensemble::Inverse => {
            let w = wg(n, limits)?;
            let sign = if n.is_multiple_of(2) { 1 } else { -1 };
            for ((lambda, j), count) in histogram {
                let value = w.get(&lambda).expect("class of S_n");
                let f = value
                    .negate_var()
                    .with_var(inner)
                    .scale(&BigRat::from_integer((sign * count as i64).into()));
                out.add_term((n + j) as i64, &f);
            }
        }
    }
    Ok(out)
}

/// Values that cumulants can be formed from.
pub trait CumulantValue: Clone {
    fn one_like(&self) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn times_int(&self, k: &BigInt) -> Self;
}

impl CumulantValue for BigRat {
    fn one_like(&self) -> Self {
        BigRat::one()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn times_int(&self, k: &BigInt) -> Self {
        self * BigRat::from_integer(k.clone())
    }
}

impl CumulantValue for LaurentN {
    fn one_like(&self) -> Self {
        LaurentN::one(self.inner())
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn times_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRat::from_integer(k.clone()))
    }
}

/// The relative cumulant `C_{π,1} = Σ_{σ ≥ π} μ(σ, 1) ∏_{B∈σ} E ∏_{i∈B} Yᵢ`,
/// i.e. the joint cumulant of the block products `∏_{i∈πⱼ} Yᵢ`.
///
/// `moment` receives the sorted 1-based indices of a block; results are
/// memoized per block.
pub fn relative_cumulant<T, F>(pi: &SetPartition, mut moment: F, limits: &Limits) -> Result<T>
where
    T: CumulantValue,
    F: FnMut(&[usize]) -> Result<T>,
{
    limits.check_bell(pi.num_blocks())?;
    let mut memo: HashMap<Vec<usize>, T> = HashMap::new();
    let mut total: Option<T> = None;
    for sigma in pi.coarsenings() {
        let k = sigma.num_blocks();
        let mut weight = BigInt::from(factorial(k - 1));
        if k % 2 == 0 {
            weight = -weight;
        }
        let mut term: Option<T> = None;
        for block in sigma.blocks() {
            let mut key = block.clone();
            key.sort_unstable();
            if !memo.contains_key(&key) {
                let v = moment(&key)?;
                memo.insert(key.clone(), v);
            }
            let v = &memo[&key];
            term = Some(match term {
                None => v.clone(),
                Some(t) => t.times(v),
            });
        }
        let term = term.expect("nonempty partition").times_int(&weight);
        total = Some(match total {
            None => term,
            Some(t) => t.plus(&term),
        });
    }
    Ok(total.expect("at least one coarsening"))
}

/// The joint cumulant `C_ℓ(Y₁, …, Y_ℓ)` by Möbius inversion over the set
/// partitions of `[ℓ]`.
pub fn cumulant_from_moments<T, F>(ell: usize, moment: F, limits: &Limits) -> Result<T>
where
    T: CumulantValue,
    F: FnMut(&[usize]) -> Result<T>,
{
    if ell == 0 {
        return Err(Error::InvalidQuery("cumulant of no variables".into()));
    }
    relative_cumulant(&SetPartition::finest(ell), moment, limits)
}

/// `C_ℓ(Tr X^{μ₁}, …, Tr X^{μ_ℓ})` exactly, from oracle moments.
pub fn trace_cumulant_oracle(m: &TraceMonomial, limits: &Limits) -> Result<LaurentN> {
    limits.check_oracle(m.powers.n())?;
    let parts = m.powers.parts().to_vec();
    let mut by_type: HashMap<IntPartition, LaurentN> = HashMap::new();
    cumulant_from_moments(
        parts.len(),
        |block| {
            let sub = IntPartition::from_unsorted(block.iter().map(|&i| parts[i - 1]).collect());
            if let Some(v) = by_type.get(&sub) {
                return Ok(v.clone());
            }
            let v = trace_moment_oracle(&TraceMonomial::new(sub.clone(), m.ensemble)?, limits)?;
            by_type.insert(sub, v.clone());
            Ok(v)
        },
        limits,
    )
}

/// `𝒞_X(μ)` from exact moments, expanded at `N → ∞` to order `N^{-2·gmax}`.
///
/// Fails with [`Error::ParityViolation`] if an odd power of `N⁻¹` appears
/// and with [`Error::UnexpectedGrowth`] if a positive power of `N` survives.
pub fn scaled_cumulant_oracle(m: &TraceMonomial, gmax: usize, limits: &Limits) -> Result<CumulantSeries> {
    let scaled = scaled_cumulant_exact(m, limits)?;
    let n = m.powers.n();
    let gcap = match m.ensemble {
        Ensemble::Wishart => gmax.max(n),
        Ensemble::Inverse => gmax,
    };
    let coeffs = scaled.expand_in_inverse_n_squared(&m.ensemble.scale(), gcap)?;
    Ok(finish_series(coeffs, gmax, m.ensemble))
}

/// `𝒞_X(μ)` from exact moments, before expansion in `N`.
pub fn scaled_cumulant_exact(m: &TraceMonomial, limits: &Limits) -> Result<LaurentN> {
    let mu = &m.powers;
    let ell = mu.len() as i64;
    let prefactor = BigRat::new(BigInt::from(factorial(mu.n())), BigInt::from(mu.z()));
    Ok(trace_cumulant_oracle(m, limits)?
        .shift_n(ell - 2)
        .scale(&prefactor))
}

/// `C_ℓ(tr X^{μ₁}, …, tr X^{μ_ℓ})` at concrete `N` and `c`, exactly.
pub fn exact_cumulant_value(m: &TraceMonomial, n: u64, c: &BigRat, limits: &Limits) -> Result<BigRat> {
    let nn = BigRat::from_integer(BigInt::from(n));
    let inner = m.ensemble.scale().eval(c)? * &nn;
    trace_cumulant_oracle(m, limits)?
        .shift_n(-(m.powers.len() as i64))
        .eval(&nn, &inner)
}

/// The time-delay coefficients
/// `c_{2g}(μ) = 2^{ℓ-1} (z_μ/|μ|!) Σ_ν H↑_g(μ, ν)` for `g = 0..=gmax`.
///
/// Each must be a nonnegative integer; anything else is an error.
pub fn time_delay_coefficients(mu: &IntPartition, gmax: usize, limits: &Limits) -> Result<Vec<BigRat>> {
    let m = TraceMonomial::new(mu.clone(), Ensemble::Inverse)?;
    let series = scaled_cumulant_hurwitz(&m, gmax, limits)?;
    let at_two = series.eval(&BigRat::from_integer(2.into()))?;
    let pre = BigRat::new(
        BigInt::from(2u32).pow(mu.len() as u32 - 1) * BigInt::from(mu.z()),
        BigInt::from(factorial(mu.n())),
    );
    at_two
        .into_iter()
        .map(|v| {
            let c = v * &pre;
            if c.is_integer() && !c.is_negative() {
                Ok(c)
            } else {
                Err(Error::NotANaturalNumber(format!("c_2g({mu}) = {c}")))
            }
        })
        .collect()
}

/// Every set partition of `[ℓ]` paired with its relative cumulant, for
/// small checks of the moment–cumulant relations.
pub fn relative_cumulants(m: &TraceMonomial, limits: &Limits) -> Result<Vec<(SetPartition, LaurentN)>> {
    let ell = m.powers.len();
    limits.check_bell(ell)?;
    let parts = m.powers.parts().to_vec();
    set_partitions(ell)
        .map(|pi| {
            let v = relative_cumulant(
                &pi,
                |block| {
                    let sub = IntPartition::from_unsorted(block.iter().map(|&i| parts[i - 1]).collect());
                    trace_moment_oracle(&TraceMonomial::new(sub, m.ensemble)?, limits)
                },
                limits,
            )?;
            Ok((pi, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use num_traits::Zero;

    fn lim() -> Limits {
        Limits::default()
    }

    fn part(p: &[usize]) -> IntPartition {
        IntPartition::new(p.to_vec()).unwrap()
    }

    fn mono(p: &[usize], e: Ensemble) -> TraceMonomial {
        TraceMonomial::new(part(p), e).unwrap()
    }

    fn c_minus_1_pow(k: i64) -> RatFunc {
        Ensemble::Inverse.scale().pow(k).unwrap()
    }

    #[test]
    fn first_moments() {
        let w = trace_moment_oracle(&mono(&[1], Ensemble::Wishart), &lim()).unwrap();
        // E Tr W = cN = y
        assert_eq!(w, LaurentN::monomial(RatFunc::var_fn(Var::Y), 0));
        let inv = trace_moment_oracle(&mono(&[1], Ensemble::Inverse), &lim()).unwrap();
        // E Tr W⁻¹ = N²/x = N/(c-1)
        assert_eq!(inv, LaurentN::monomial(RatFunc::var_fn(Var::X).inverse().unwrap(), 2));
    }

    #[test]
    fn second_moment_of_trace_by_hand() {
        // E (Tr W)² = N^{-2} Σ_{σ∈S₂} y^{#σ} N^{#σ⁻¹} = y² + y N^{-2}·... evaluate at N=3, c=2
        let m = trace_moment_oracle(&mono(&[1, 1], Ensemble::Wishart), &lim()).unwrap();
        let v = m.eval(&rat(3), &rat(6)).unwrap();
        // N^{-2}(y² N² + y N) with y = 6, N = 3
        assert_eq!(v, rat(36) + ratio(6, 3));
        let cum = trace_cumulant_oracle(&mono(&[1, 1], Ensemble::Wishart), &lim()).unwrap();
        assert_eq!(cum.eval(&rat(3), &rat(6)).unwrap(), rat(2));
    }

    #[test]
    fn mixed_signs_are_rejected() {
        assert_eq!(TraceMonomial::from_signed(&[1, -1]).unwrap_err(), Error::MixedSigns);
        let m = TraceMonomial::from_signed(&[-1, -2]).unwrap();
        assert_eq!(m.ensemble, Ensemble::Inverse);
        assert_eq!(m.powers, part(&[2, 1]));
    }

    #[test]
    fn hurwitz_route_examples() {
        let s = scaled_cumulant_hurwitz(&mono(&[1], Ensemble::Inverse), 3, &lim()).unwrap();
        assert_eq!(s.coeffs[0], c_minus_1_pow(-1));
        assert!(s.coeffs[1..].iter().all(RatFunc::is_zero));

        let s = scaled_cumulant_hurwitz(&mono(&[1], Ensemble::Wishart), 3, &lim()).unwrap();
        assert_eq!(s.coeffs[0], RatFunc::var_fn(Var::C));
        assert!(s.exact);

        let s = scaled_cumulant_hurwitz(&mono(&[2], Ensemble::Inverse), 4, &lim()).unwrap();
        assert_eq!(s.eval(&rat(2)).unwrap(), vec![rat(2); 5]);

        let s = scaled_cumulant_hurwitz(&mono(&[1, 1, 1], Ensemble::Inverse), 0, &lim()).unwrap();
        let want = &(&c_minus_1_pow(-5).scale(&rat(4)) + &c_minus_1_pow(-6).scale(&rat(12)))
            + &c_minus_1_pow(-7).scale(&rat(8));
        assert_eq!(s.coeffs[0], want);
    }

    #[test]
    fn oracle_route_examples() {
        let s = scaled_cumulant_oracle(&mono(&[1], Ensemble::Wishart), 2, &lim()).unwrap();
        assert_eq!(s.coeffs[0], RatFunc::var_fn(Var::C));
        assert!(s.exact);
        let s = scaled_cumulant_oracle(&mono(&[2], Ensemble::Inverse), 5, &lim()).unwrap();
        assert_eq!(s.eval(&rat(2)).unwrap(), vec![rat(2); 6]);
    }

    #[test]
    fn routes_agree_on_small_partitions() {
        for n in 1..=4 {
            for mu in crate::sym::partitions_of(n) {
                for e in [Ensemble::Wishart, Ensemble::Inverse] {
                    let m = TraceMonomial::new(mu.clone(), e).unwrap();
                    let a = scaled_cumulant_hurwitz(&m, 2, &lim()).unwrap();
                    let b = scaled_cumulant_oracle(&m, 2, &lim()).unwrap();
                    assert_eq!(a, b, "{m}");
                }
            }
        }
    }

    #[test]
    fn exact_second_moment_of_inverse_at_c_two() {
        // 2N²/(N²-1) at N = 8
        let v = exact_cumulant_value(&mono(&[2], Ensemble::Inverse), 8, &rat(2), &lim()).unwrap();
        assert_eq!(v, ratio(128, 63));
        let v = exact_cumulant_value(&mono(&[1], Ensemble::Inverse), 8, &rat(2), &lim()).unwrap();
        assert_eq!(v, rat(1));
    }

    #[test]
    fn variance_of_trace() {
        // C₂(tr W, tr W) = c/N² for the LUE
        let v = exact_cumulant_value(&mono(&[1, 1], Ensemble::Wishart), 8, &rat(2), &lim()).unwrap();
        assert_eq!(v, ratio(2, 64));
    }

    #[test]
    fn time_delay_examples() {
        let c = time_delay_coefficients(&part(&[2]), 3, &lim()).unwrap();
        assert_eq!(c, vec![rat(2); 4]);
        let c = time_delay_coefficients(&part(&[1]), 2, &lim()).unwrap();
        assert_eq!(c, vec![rat(1), rat(0), rat(0)]);
        let c = time_delay_coefficients(&part(&[1, 1, 1]), 0, &lim()).unwrap();
        // 2² · (4 + 12 + 8)
        assert_eq!(c, vec![rat(96)]);
    }

    #[test]
    fn numeric_cumulants() {
        // Y₁ = Y₂ = Y₃ with all moments of a Bernoulli(1/2) variable equal to 1/2
        let half = ratio(1, 2);
        let k2: BigRat = cumulant_from_moments(2, |_| Ok(half.clone()), &lim()).unwrap();
        assert_eq!(k2, ratio(1, 4));
        let k3: BigRat = cumulant_from_moments(3, |_| Ok(half.clone()), &lim()).unwrap();
        assert_eq!(k3, rat(0));
        let k1: BigRat = cumulant_from_moments(1, |_| Ok(rat(7)), &lim()).unwrap();
        assert_eq!(k1, rat(7));
    }

    #[test]
    fn relative_cumulants_by_leonov_shiryaev() {
        // moments of a product set of indices: E ∏_{i∈B} Yᵢ = 2^{|B|} + |B|
        let moment = |b: &[usize]| Ok::<_, Error>(rat((1 << b.len()) + b.len() as i64));
        let kappa = |b: &[usize]| -> BigRat {
            cumulant_from_moments(b.len(), |sub| moment(sub), &lim()).unwrap()
        };
        let ell = 4;
        for pi in set_partitions(ell) {
            let lhs: BigRat = relative_cumulant(&pi, moment, &lim()).unwrap();
            // Σ over σ with σ ∨ π = 1 of ∏ κ(B)
            let mut rhs = BigRat::zero();
            for sigma in set_partitions(ell) {
                if join_is_top(&sigma, &pi) {
                    rhs += sigma.blocks().iter().map(|b| kappa(b)).fold(BigRat::one(), |a, k| a * k);
                }
            }
            assert_eq!(lhs, rhs, "{pi}");
        }
    }

    fn join_is_top(a: &SetPartition, b: &SetPartition) -> bool {
        let mut uf = crate::sym::UnionFind::new(a.n());
        for block in a.blocks().iter().chain(b.blocks()) {
            for w in block.windows(2) {
                uf.union(w[0] - 1, w[1] - 1);
            }
        }
        uf.components() == 1
    }

    #[test]
    fn validity_domain() {
        let p = WishartParams::at(rat(2), rat(8));
        assert_eq!(p.m(), Some(rat(16)));
        assert_eq!(p.shape(), Some(rat(8)));
        assert_eq!(p.is_valid_for(&mono(&[2], Ensemble::Inverse)), Some(true));
        let tight = WishartParams::at(ratio(5, 4), rat(4));
        assert_eq!(tight.is_valid_for(&mono(&[1, 1], Ensemble::Inverse)), Some(false));
        assert_eq!(WishartParams::symbolic().is_valid_for(&mono(&[1], Ensemble::Wishart)), None);
    }
}
