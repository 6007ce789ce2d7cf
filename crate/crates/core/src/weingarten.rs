//! Class functions on `S_n` with rational-function values: `Ω_{n,z}(σ) = z^{#σ}`,
//! its convolution inverse, the Weingarten function `Wg_{n,z}`, and the
//! Jucys–Murphy expansions of both.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    series_expand_at_infinity, BigRat, LaurentSeriesZ, Poly, RatFunc, Var,
};
use crate::group_algebra::{GroupAlgebraVector, SymmetricGroup};
use crate::hurwitz::{block_profile, Kind};
use crate::sym::{partitions_of, IntPartition, Permutation};
use crate::{Error, Limits, Result};

/// A class function `σ ↦ values[cycle_type(σ)]` on `S_n`, values in `ℚ(var)`.
///
/// Values are stored in the reverse-lexicographic order of [`partitions_of`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CentralRecord", into = "CentralRecord")]
pub struct CentralElement {
    n: usize,
    classes: Vec<IntPartition>,
    values: Vec<RatFunc>,
}

impl CentralElement {
    pub fn from_values(n: usize, values: Vec<RatFunc>) -> Result<Self> {
        let classes: Vec<IntPartition> = partitions_of(n).collect();
        if values.len() != classes.len() {
            return Err(Error::SizeMismatch {
                left: classes.len(),
                right: values.len(),
            });
        }
        Ok(CentralElement { n, classes, values })
    }

    pub fn from_fn(n: usize, f: impl Fn(&IntPartition) -> RatFunc) -> Self {
        let classes: Vec<IntPartition> = partitions_of(n).collect();
        let values = classes.iter().map(f).collect();
        CentralElement { n, classes, values }
    }

    /// The indicator of the identity.
    pub fn delta_id(n: usize, var: Var) -> Self {
        let id = IntPartition::ones(n);
        CentralElement::from_fn(n, |l| {
            if *l == id {
                RatFunc::one(var)
            } else {
                RatFunc::zero(var)
            }
        })
    }

    /// The indicator of the class of type `lambda`.
    pub fn class_indicator(lambda: &IntPartition, var: Var) -> Self {
        CentralElement::from_fn(lambda.n(), |l| {
            if l == lambda {
                RatFunc::one(var)
            } else {
                RatFunc::zero(var)
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[IntPartition] {
        &self.classes
    }

    pub fn values(&self) -> &[RatFunc] {
        &self.values
    }

    pub fn get(&self, lambda: &IntPartition) -> Option<&RatFunc> {
        self.classes
            .iter()
            .position(|l| l == lambda)
            .map(|i| &self.values[i])
    }

    /// Value at a permutation.
    pub fn at(&self, sigma: &Permutation) -> Result<&RatFunc> {
        if sigma.n() != self.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: sigma.n(),
            });
        }
        Ok(self.get(&sigma.cycle_type()).expect("every class present"))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IntPartition, &RatFunc)> {
        self.classes.iter().zip(&self.values)
    }

    /// Applies `f` to every value.
    pub fn map(&self, f: impl Fn(&RatFunc) -> RatFunc) -> Self {
        CentralElement {
            n: self.n,
            classes: self.classes.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CentralRecord {
    n: usize,
    values: Vec<ClassValue>,
}

#[derive(Serialize, Deserialize)]
struct ClassValue {
    class: IntPartition,
    value: RatFunc,
}

impl From<CentralElement> for CentralRecord {
    fn from(c: CentralElement) -> Self {
        CentralRecord {
            n: c.n,
            values: c
                .classes
                .into_iter()
                .zip(c.values)
                .map(|(class, value)| ClassValue { class, value })
                .collect(),
        }
    }
}

impl TryFrom<CentralRecord> for CentralElement {
    type Error = Error;
    fn try_from(r: CentralRecord) -> Result<Self> {
        let expected: Vec<IntPartition> = partitions_of(r.n).collect();
        let got: Vec<IntPartition> = r.values.iter().map(|v| v.class.clone()).collect();
        if got != expected {
            return Err(Error::InvalidPartition(format!(
                "class list does not enumerate the partitions of {}",
                r.n
            )));
        }
        CentralElement::from_values(r.n, r.values.into_iter().map(|v| v.value).collect())
    }
}

/// Structure constants of the centre of `ℚ[S_n]` in the class-indicator
/// basis: `coeff(λ, κ, ρ)` is the number of pairs `(τ, υ)` of types `λ`, `κ`
/// with `τ∘υ = σ` for a fixed `σ` of type `ρ`.
#[derive(Debug)]
pub struct ClassAlgebra {
    n: usize,
    classes: Vec<IntPartition>,
    constants: Vec<u64>,
}

static CLASS_ALGEBRAS: OnceLock<RwLock<HashMap<usize, Arc<ClassAlgebra>>>> = OnceLock::new();

impl ClassAlgebra {
    /// Cached per `n`; built by brute force over `S_n` on first use.
    pub fn get(n: usize, limits: &Limits) -> Result<Arc<ClassAlgebra>> {
        limits.check_group_algebra(n)?;
        let cache = CLASS_ALGEBRAS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(a) = cache.read().unwrap().get(&n) {
            return Ok(a.clone());
        }
        let built = Arc::new(ClassAlgebra::build(n));
        let mut w = cache.write().unwrap();
        Ok(w.entry(n).or_insert(built).clone())
    }

    fn build(n: usize) -> ClassAlgebra {
        let classes: Vec<IntPartition> = partitions_of(n).collect();
        let p = classes.len();
        let index: HashMap<Vec<usize>, usize> = classes
            .iter()
            .enumerate()
            .map(|(i, c)| (c.parts().to_vec(), i))
            .collect();
        let sizes: Vec<BigInt> = classes.iter().map(|c| BigInt::from(c.class_size())).collect();
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let class_of: Vec<usize> = perms
            .par_iter()
            .map(|h| index[&crate::hurwitz::cycle_lengths(h.as_slice())])
            .collect();
        // hist[λ][κ][ρ] = #{h of type κ : g_λ ∘ h has type ρ}
        let hist: Vec<Vec<u64>> = classes
            .par_iter()
            .map(|lambda| {
                let g = Permutation::canonical_of_type(lambda);
                let mut h = vec![0u64; p * p];
                for (x, &kappa) in perms.iter().zip(&class_of) {
                    let prod = g.compose(x).expect("same n");
                    let rho = index[&crate::hurwitz::cycle_lengths(prod.as_slice())];
                    h[kappa * p + rho] += 1;
                }
                h
            })
            .collect();
        let mut constants = vec![0u64; p * p * p];
        for l in 0..p {
            for k in 0..p {
                for r in 0..p {
                    let num = &sizes[l] * BigInt::from(hist[l][k * p + r]);
                    debug_assert!((&num % &sizes[r]).is_zero());
                    let v: BigInt = num / &sizes[r];
                    constants[(l * p + k) * p + r] = u64::try_from(v).expect("fits in u64");
                }
            }
        }
        ClassAlgebra {
            n,
            classes,
            constants,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[IntPartition] {
        &self.classes
    }

    pub fn coeff(&self, lambda: usize, kappa: usize, rho: usize) -> u64 {
        let p = self.classes.len();
        self.constants[(lambda * p + kappa) * p + rho]
    }
}

/// `(f * g)(σ) = Σ_τ f(τ) g(τ⁻¹σ)`, through the class-algebra constants.
pub fn convolve(f: &CentralElement, g: &CentralElement, limits: &Limits) -> Result<CentralElement> {
    if f.n != g.n {
        return Err(Error::SizeMismatch {
            left: f.n,
            right: g.n,
        });
    }
    let var = f.values[0].var();
    if g.values[0].var() != var {
        return Err(Error::VariableMismatch(var.symbol(), g.values[0].var().symbol()));
    }
    let alg = ClassAlgebra::get(f.n, limits)?;
    let p = f.classes.len();
    let values = (0..p)
        .map(|rho| {
            let mut acc = RatFunc::zero(var);
            for l in 0..p {
                if f.values[l].is_zero() {
                    continue;
                }
                for k in 0..p {
                    let c = alg.coeff(l, k, rho);
                    if c != 0 && !g.values[k].is_zero() {
                        let term = (&f.values[l] * &g.values[k]).scale(&BigRat::from_integer(c.into()));
                        acc = &acc + &term;
                    }
                }
            }
            acc
        })
        .collect();
    Ok(CentralElement {
        n: f.n,
        classes: f.classes.clone(),
        values,
    })
}

/// `Ω_{n,z}(σ) = z^{#σ}`.
pub fn omega(n: usize) -> CentralElement {
    CentralElement::from_fn(n, |l| {
        RatFunc::from_poly(Var::Z, Poly::monomial(BigRat::one(), l.len()))
    })
}

/// `Ω_{n,z} = (z + J_1)(z + J_2)⋯(z + J_n)` expanded in the group algebra and
/// collected by class.
pub fn omega_via_jm(n: usize, limits: &Limits) -> Result<CentralElement> {
    let group = SymmetricGroup::get(n, limits)?;
    let z = Poly::x();
    let mut v = GroupAlgebraVector::identity(group);
    for k in 1..=n {
        v = v.scale(&z).add(&v.mul_jucys_murphy(k));
    }
    v.to_central(Var::Z)
}

static WG: OnceLock<RwLock<HashMap<usize, CentralElement>>> = OnceLock::new();

/// `Wg_{n,z}`, the convolution inverse of `Ω_{n,z}`, solved exactly over the
/// class algebra. Cached per `n`.
pub fn wg(n: usize, limits: &Limits) -> Result<CentralElement> {
    limits.check_group_algebra(n)?;
    let cache = WG.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(w) = cache.read().unwrap().get(&n) {
        return Ok(w.clone());
    }
    let w = solve_wg(n, limits)?;
    cache.write().unwrap().insert(n, w.clone());
    Ok(w)
}

fn solve_wg(n: usize, limits: &Limits) -> Result<CentralElement> {
    let alg = ClassAlgebra::get(n, limits)?;
    let p = alg.classes().len();
    let lens: Vec<usize> = alg.classes().iter().map(IntPartition::len).collect();
    // (Ω * w)(ρ) = Σ_κ M[ρ][κ] w_κ with M[ρ][κ] = Σ_λ z^{#λ} coeff(λ, κ, ρ)
    let mut m: Vec<Vec<Poly>> = (0..p)
        .map(|rho| {
            (0..p)
                .map(|kappa| {
                    let mut coeffs = vec![BigRat::zero(); n + 1];
                    for (l, &len) in lens.iter().enumerate() {
                        let c = alg.coeff(l, kappa, rho);
                        if c != 0 {
                            coeffs[len] += BigRat::from_integer(c.into());
                        }
                    }
                    Poly::from_coeffs(coeffs)
                })
                .collect()
        })
        .collect();
    let id = alg
        .classes()
        .iter()
        .position(|c| c.len() == n)
        .expect("identity class");
    let mut rhs: Vec<Poly> = (0..p)
        .map(|i| if i == id { Poly::one() } else { Poly::zero() })
        .collect();
    let values = bareiss_solve(&mut m, &mut rhs)?;
    CentralElement::from_values(n, values)
}

/// Fraction-free elimination to upper-triangular form, then back
/// substitution over `ℚ(z)`.
fn bareiss_solve(a: &mut [Vec<Poly>], b: &mut [Poly]) -> Result<Vec<RatFunc>> {
    let p = a.len();
    let mut prev = Poly::one();
    for k in 0..p {
        let pivot = (k..p).find(|&i| !a[i][k].is_zero()).ok_or(Error::Singular)?;
        a.swap(k, pivot);
        b.swap(k, pivot);
        for i in k + 1..p {
            for j in k + 1..p {
                let v = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev)?;
            }
            let v = &(&a[k][k] * &b[i]) - &(&a[i][k] * &b[k]);
            b[i] = v.exact_div(&prev)?;
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![RatFunc::zero(Var::Z); p];
    for i in (0..p).rev() {
        let mut acc = RatFunc::from_poly(Var::Z, b[i].clone());
        for j in i + 1..p {
            let t = &RatFunc::from_poly(Var::Z, a[i][j].clone()) * &x[j];
            acc = &acc - &t;
        }
        x[i] = acc.checked_div(&RatFunc::from_poly(Var::Z, a[i][i].clone()))?;
    }
    Ok(x)
}

/// The monotone expansion
/// `Wg_{n,z}(σ) = Σ_r (-1)^r z^{-n-r} #{monotone (τ₁,…,τ_r) : τ₁⋯τ_r = σ}`,
/// truncated after `r = order`, one series per class.
pub fn wg_series(n: usize, order: usize, limits: &Limits) -> Result<Vec<(IntPartition, LaurentSeriesZ)>> {
    let id: Vec<u8> = (0..n as u8).collect();
    let profile = block_profile(&id, order, Kind::Monotone, limits)?;
    let trunc = (n + order) as i64;
    Ok(partitions_of(n)
        .map(|lambda| {
            let size = BigRat::from_integer(BigInt::from(lambda.class_size()));
            let mut s = LaurentSeriesZ::zero(Var::Z, trunc);
            for (r, layer) in profile.iter().enumerate() {
                if let Some(&c) = layer.get(&lambda) {
                    let mut v = BigRat::from_integer(BigInt::from(c)) / &size;
                    if r % 2 == 1 {
                        v = -v;
                    }
                    s.add_term(-((n + r) as i64), v);
                }
            }
            (lambda, s)
        })
        .collect())
}

/// The exact expansion of `wg(n)` at `z → ∞` to the same precision as
/// [`wg_series`].
pub fn wg_expanded(n: usize, order: usize, limits: &Limits) -> Result<Vec<(IntPartition, LaurentSeriesZ)>> {
    let w = wg(n, limits)?;
    Ok(w.iter()
        .map(|(l, f)| (l.clone(), series_expand_at_infinity(f, (n + order) as i64)))
        .collect())
}

/// Integer poles of every value together with whatever part of each
/// denominator has no integer root in `[1-n, n-1]`.
pub fn pole_report(w: &CentralElement) -> Vec<(IntPartition, Vec<i64>, Poly)> {
    let n = w.n() as i64;
    w.iter()
        .map(|(l, f)| {
            let (roots, rest) = f.denom().split_integer_roots(1 - n..=n - 1);
            (l.clone(), roots, rest)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn lim() -> Limits {
        Limits::default()
    }

    fn p(v: &[usize]) -> IntPartition {
        IntPartition::new(v.to_vec()).unwrap()
    }

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(Var::Z, Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    #[test]
    fn omega_values() {
        let o = omega(2);
        assert_eq!(o.get(&p(&[1, 1])).unwrap(), &rf(&[0, 0, 1], &[1]));
        assert_eq!(o.get(&p(&[2])).unwrap(), &rf(&[0, 1], &[1]));
        assert_eq!(omega(1).values(), &[rf(&[0, 1], &[1])]);
        assert_eq!(omega(3).get(&p(&[3])).unwrap(), &rf(&[0, 1], &[1]));
    }

    #[test]
    fn small_weingarten_functions() {
        assert_eq!(wg(1, &lim()).unwrap().values(), &[rf(&[1], &[0, 1])]);
        let w2 = wg(2, &lim()).unwrap();
        assert_eq!(w2.get(&p(&[1, 1])).unwrap(), &rf(&[1], &[-1, 0, 1]));
        assert_eq!(w2.get(&p(&[2])).unwrap(), &rf(&[-1], &[0, -1, 0, 1]));
    }

    #[test]
    fn convolution_identities() {
        let t = CentralElement::class_indicator(&p(&[2]), Var::Z);
        let tt = convolve(&t, &t, &lim()).unwrap();
        assert_eq!(tt.get(&p(&[1, 1])).unwrap(), &RatFunc::one(Var::Z));
        for n in 1..=4 {
            let o = omega(n);
            let d = CentralElement::delta_id(n, Var::Z);
            assert_eq!(convolve(&o, &d, &lim()).unwrap(), o);
            let w = wg(n, &lim()).unwrap();
            assert_eq!(convolve(&w, &o, &lim()).unwrap(), d);
            assert_eq!(convolve(&o, &w, &lim()).unwrap(), d);
        }
        assert!(convolve(&omega(2), &omega(3), &lim()).is_err());
    }

    #[test]
    fn jm_factorisation_small() {
        for n in 1..=4 {
            assert_eq!(omega_via_jm(n, &lim()).unwrap(), omega(n), "n = {n}");
        }
    }

    #[test]
    fn series_agree_small() {
        for n in 1..=3 {
            assert_eq!(wg_series(n, 4, &lim()).unwrap(), wg_expanded(n, 4, &lim()).unwrap());
        }
        let s = &wg_series(2, 4, &lim()).unwrap()[1].1; // class (1,1)
        assert_eq!(s.coeff(-2), rat(1));
        assert_eq!(s.coeff(-4), rat(1));
        assert_eq!(s.coeff(-3), rat(0));
    }

    #[test]
    fn poles_are_small_integers() {
        for n in 1..=4 {
            for (l, roots, rest) in pole_report(&wg(n, &lim()).unwrap()) {
                assert_eq!(rest.degree(), Some(0), "n = {n}, class {l}");
                assert!(!roots.is_empty());
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let w = wg(3, &lim()).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: CentralElement = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
