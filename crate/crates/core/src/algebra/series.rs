use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{BigRat, RatFunc, Var};

/// A Laurent expansion at infinity, `Σ_e a_e v^e`, known exactly for all
/// exponents `e ≥ -order`; everything below is unknown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentSeriesZ {
    var: Var,
    order: i64,
    terms: BTreeMap<i64, BigRat>,
}

impl LaurentSeriesZ {
    /// The zero series known down to `v^{-order}`.
    pub fn zero(var: Var, order: i64) -> Self {
        LaurentSeriesZ {
            var,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Terms with exponent `< -order` are not represented.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> BigRat {
        self.terms.get(&e).cloned().unwrap_or_else(BigRat::zero)
    }

    /// Nonzero terms, lowest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRat)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    /// Adds `c·v^e`; terms below the truncation are dropped.
    pub fn add_term(&mut self, e: i64, c: BigRat) {
        if e < -self.order || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Sum, truncated to the coarser of the two orders.
    pub fn add(&self, other: &LaurentSeriesZ) -> LaurentSeriesZ {
        assert_eq!(self.var, other.var, "series variable mismatch");
        let mut out = LaurentSeriesZ::zero(self.var, self.order.min(other.order));
        for (e, c) in self.terms().chain(other.terms()) {
            out.add_term(e, c.clone());
        }
        out
    }

    /// Same series with a lower precision.
    pub fn truncate(&self, order: i64) -> LaurentSeriesZ {
        let mut out = LaurentSeriesZ::zero(self.var, order.min(self.order));
        for (e, c) in self.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl fmt::Display for LaurentSeriesZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}*{v}^{e}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({v}^{})", -self.order - 1)
    }
}

/// Expands `f` at `v → ∞`, keeping exponents down to `v^{-order}`.
///
/// With `w = 1/v`, `f = v^{p-q} · Ñ(w)/D̃(w)` where `Ñ`, `D̃` are the reversed
/// numerator and denominator; the quotient is a power series in `w` because
/// `D̃(0)` is the leading coefficient of the denominator.
pub fn series_expand_at_infinity(f: &RatFunc, order: i64) -> LaurentSeriesZ {
    let mut out = LaurentSeriesZ::zero(f.var(), order);
    let (Some(p), Some(q)) = (f.numer().degree(), f.denom().degree()) else {
        return out;
    };
    let top = p as i64 - q as i64;
    if top < -order {
        return out;
    }
    let len = (top + order + 1) as usize;
    let num: Vec<BigRat> = (0..len)
        .map(|k| if k <= p { f.numer().coeff(p - k) } else { BigRat::zero() })
        .collect();
    let den: Vec<BigRat> = (0..=q).map(|k| f.denom().coeff(q - k)).collect();
    let lead_inv = den[0].recip();
    let mut quot: Vec<BigRat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num[k].clone();
        for j in 1..=q.min(k) {
            acc -= &den[j] * &quot[k - j];
        }
        quot.push(acc * &lead_inv);
    }
    for (k, c) in quot.into_iter().enumerate() {
        out.add_term(top - k as i64, c);
    }
    out
}
