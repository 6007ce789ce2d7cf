//! Exact arithmetic: big rationals, univariate polynomials and rational
//! functions, truncated Laurent series at infinity, Laurent polynomials in
//! `N` over a rational-function field, and truncated cumulant series in `N⁻²`.

mod cumulant_series;
mod laurent_n;
mod poly;
mod ratfunc;
mod series;
mod symmetric;

pub use cumulant_series::CumulantSeries;
pub use laurent_n::LaurentN;
pub use poly::Poly;
pub use ratfunc::{RatFunc, Var};
pub use series::{series_expand_at_infinity, LaurentSeriesZ};
pub use symmetric::{complete_symmetric, elementary_symmetric};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

pub type BigRat = BigRational;

pub fn rat(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3/4"` or a terminating decimal such as `"2.5"`.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || Error::InvalidQuery(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(Error::InvalidQuery(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.trim_start().starts_with('-');
        let int_val: BigInt = if int.is_empty() || int == "-" {
            BigInt::from(0)
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_val: BigInt = if frac.is_empty() {
            BigInt::from(0)
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let magnitude = BigRat::from_integer(num_traits::Signed::abs(&int_val))
            + BigRat::new(frac_val, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>()
        .map(BigRat::from_integer)
        .map_err(|_| bad())
}
