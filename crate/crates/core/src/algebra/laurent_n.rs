use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use super::{series_expand_at_infinity, BigRat, Poly, RatFunc, Var};
use crate::sym::binomial;
use crate::{Error, Result};

/// A Laurent polynomial in `N` whose coefficients are rational functions of
/// a scaled inner variable (`x = (c-1)N` or `y = cN`):
/// `Σ_k N^k · R_k(inner)`.
///
/// Zero coefficients are never stored, so structural equality is equality
/// in `ℚ(inner)[N, N⁻¹]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentN {
    inner: Var,
    terms: BTreeMap<i64, RatFunc>,
}

impl LaurentN {
    pub fn zero(inner: Var) -> Self {
        LaurentN {
            inner,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(inner: Var) -> Self {
        LaurentN::monomial(RatFunc::one(inner), 0)
    }

    /// `f(inner) · N^k`.
    pub fn monomial(f: RatFunc, k: i64) -> Self {
        let inner = f.var();
        let mut out = LaurentN::zero(inner);
        out.add_term(k, &f);
        out
    }

    /// `N^k`.
    pub fn n_pow(inner: Var, k: i64) -> Self {
        LaurentN::monomial(RatFunc::one(inner), k)
    }

    pub fn inner(&self) -> Var {
        self.inner
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc)> {
        self.terms.iter().map(|(&k, f)| (k, f))
    }

    pub fn coeff(&self, k: i64) -> RatFunc {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.inner))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: i64, f: &RatFunc) {
        assert_eq!(f.var(), self.inner, "LaurentN inner variable mismatch");
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(slot) => {
                *slot = &*slot + f;
                if slot.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, f.clone());
            }
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        let mut out = LaurentN::zero(self.inner);
        for (k, f) in self.terms() {
            out.add_term(k, &f.scale(c));
        }
        out
    }

    /// Multiplies by `f(inner)`.
    pub fn mul_inner(&self, f: &RatFunc) -> Self {
        let mut out = LaurentN::zero(self.inner);
        for (k, g) in self.terms() {
            out.add_term(k, &(g * f));
        }
        out
    }

    /// Multiplies by `N^k`.
    pub fn shift_n(&self, k: i64) -> Self {
        LaurentN {
            inner: self.inner,
            terms: self.terms.iter().map(|(&e, f)| (e + k, f.clone())).collect(),
        }
    }

    pub fn eval(&self, n: &BigRat, inner: &BigRat) -> Result<BigRat> {
        if n.is_zero() && self.terms.keys().any(|&k| k < 0) {
            return Err(Error::Pole);
        }
        let mut acc = BigRat::zero();
        for (k, f) in self.terms() {
            acc += f.eval(inner)? * num_traits::pow::Pow::pow(n, k as i32);
        }
        Ok(acc)
    }

    /// Rewrites a polynomial-coefficient element of `ℚ[y][N, N⁻¹]` in terms
    /// of `x = y - N`, i.e. substitutes `y = x + N`.
    pub fn shift_inner_by_n(&self, target: Var) -> Result<Self> {
        let mut out = LaurentN::zero(target);
        for (k, f) in self.terms() {
            if !f.is_polynomial() {
                return Err(Error::InvalidQuery(
                    "substitution needs polynomial coefficients".into(),
                ));
            }
            for (j, a) in f.numer().coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for i in 0..=j {
                    let c = a * BigRat::from_integer(BigInt::from(binomial(j, i)));
                    out.add_term(
                        k + (j - i) as i64,
                        &RatFunc::from_poly(target, Poly::monomial(c, i)),
                    );
                }
            }
        }
        Ok(out)
    }

    /// Expands at `N → ∞` with `inner = s·N` held in the scale `s` (a rational
    /// function of `c`), returning `f_0, …, f_gmax` in `Σ_g N^{-2g} f_g(c)`.
    ///
    /// Fails if a positive power of `N` survives or an odd power of `N⁻¹` down
    /// to `N^{-2·gmax}` is nonzero.
    pub fn expand_in_inverse_n_squared(&self, s: &RatFunc, gmax: usize) -> Result<Vec<RatFunc>> {
        let floor = -2 * gmax as i64;
        let cvar = s.var();
        let mut by_power: BTreeMap<i64, RatFunc> = BTreeMap::new();
        for (k, f) in self.terms() {
            let order = -floor + k;
            let series = series_expand_at_infinity(f, order);
            for (e, a) in series.terms() {
                let p = k + e;
                debug_assert!(p >= floor);
                let contrib = s.pow(e)?.scale(a);
                let slot = by_power.entry(p).or_insert_with(|| RatFunc::zero(cvar));
                *slot = &*slot + &contrib;
            }
        }
        for (&p, f) in &by_power {
            if f.is_zero() {
                continue;
            }
            if p > 0 {
                return Err(Error::UnexpectedGrowth { power: p });
            }
            if p % 2 != 0 {
                return Err(Error::ParityViolation {
                    power: p,
                    coeff: f.to_string(),
                });
            }
        }
        Ok((0..=gmax as i64)
            .map(|g| by_power.remove(&(-2 * g)).unwrap_or_else(|| RatFunc::zero(cvar)))
            .collect())
    }
}

impl Add<&LaurentN> for &LaurentN {
    type Output = LaurentN;
    fn add(self, rhs: &LaurentN) -> LaurentN {
        let mut out = self.clone();
        for (k, f) in rhs.terms() {
            out.add_term(k, f);
        }
        out
    }
}

impl Neg for &LaurentN {
    type Output = LaurentN;
    fn neg(self) -> LaurentN {
        LaurentN {
            inner: self.inner,
            terms: self.terms.iter().map(|(&k, f)| (k, -f)).collect(),
        }
    }
}

impl Sub<&LaurentN> for &LaurentN {
    type Output = LaurentN;
    fn sub(self, rhs: &LaurentN) -> LaurentN {
        self + &(-rhs)
    }
}

impl Mul<&LaurentN> for &LaurentN {
    type Output = LaurentN;
    fn mul(self, rhs: &LaurentN) -> LaurentN {
        assert_eq!(self.inner, rhs.inner, "LaurentN inner variable mismatch");
        let mut out = LaurentN::zero(self.inner);
        for (i, f) in self.terms() {
            for (j, g) in rhs.terms() {
                out.add_term(i + j, &(f * g));
            }
        }
        out
    }
}

impl fmt::Display for LaurentN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, r)| format!("({r})*N^{k}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Mul for LaurentN {
    type Output = LaurentN;
    fn mul(self, rhs: LaurentN) -> LaurentN {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};

    fn c_minus_1() -> RatFunc {
        RatFunc::from_poly(Var::C, Poly::from_ints(&[-1, 1]))
    }

    #[test]
    fn expansion_with_scaled_inner_variable() {
        // N^2/(x^2 - 1) with x = sN is s^{-2}(1 + s^{-2}N^{-2} + s^{-4}N^{-4} + ...)
        let f = RatFunc::new(Var::X, Poly::one(), Poly::from_ints(&[-1, 0, 1])).unwrap();
        let l = LaurentN::monomial(f, 2);
        let coeffs = l.expand_in_inverse_n_squared(&c_minus_1(), 2).unwrap();
        for (g, f) in coeffs.iter().enumerate() {
            assert_eq!(*f, c_minus_1().pow(-2 - 2 * g as i64).unwrap());
        }
    }

    #[test]
    fn growth_and_parity_are_rejected() {
        let x = RatFunc::var_fn(Var::X);
        assert!(matches!(
            LaurentN::monomial(x.clone(), 0).expand_in_inverse_n_squared(&c_minus_1(), 1),
            Err(Error::UnexpectedGrowth { power: 1 })
        ));
        let inv = x.inverse().unwrap();
        assert!(matches!(
            LaurentN::monomial(inv, 0).expand_in_inverse_n_squared(&c_minus_1(), 1),
            Err(Error::ParityViolation { power: -1, .. })
        ));
    }

    #[test]
    fn ring_operations_and_eval() {
        let x = RatFunc::var_fn(Var::X);
        let a = &LaurentN::monomial(x.clone(), 1) + &LaurentN::n_pow(Var::X, -1);
        let sq = &a * &a;
        // (xN + 1/N)^2 = x^2 N^2 + 2x + N^-2
        assert_eq!(sq.coeff(2), x.pow(2).unwrap());
        assert_eq!(sq.coeff(0), x.scale(&rat(2)));
        assert_eq!(sq.coeff(-2), RatFunc::one(Var::X));
        assert_eq!(sq.eval(&rat(2), &rat(3)).unwrap(), ratio(169, 4));
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn inner_substitution() {
        // y^2 N^-1 with y = x + N → x^2 N^-1 + 2x + N
        let y2 = RatFunc::from_poly(Var::Y, Poly::from_ints(&[0, 0, 1]));
        let l = LaurentN::monomial(y2, -1).shift_inner_by_n(Var::X).unwrap();
        assert_eq!(l.coeff(-1), RatFunc::from_poly(Var::X, Poly::from_ints(&[0, 0, 1])));
        assert_eq!(l.coeff(0), RatFunc::from_poly(Var::X, Poly::from_ints(&[0, 2])));
        assert_eq!(l.coeff(1), RatFunc::one(Var::X));
    }
}
