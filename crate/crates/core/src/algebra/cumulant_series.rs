use serde::{Deserialize, Serialize};

use super::{BigRat, RatFunc, Var};
use crate::Result;

/// `Σ_{g=0}^{gmax} N^{-2g} f_g(c)`.
///
/// `exact` marks a series known to terminate, so every omitted coefficient
/// is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CumulantSeries {
    pub gmax: usize,
    pub coeffs: Vec<RatFunc>,
    pub exact: bool,
}

impl CumulantSeries {
    /// Pads with zeros or truncates to `gmax + 1` coefficients.
    pub fn new(mut coeffs: Vec<RatFunc>, gmax: usize, exact: bool) -> Self {
        coeffs.resize(gmax + 1, RatFunc::zero(Var::C));
        CumulantSeries { gmax, coeffs, exact }
    }

    pub fn coeff(&self, g: usize) -> Option<&RatFunc> {
        self.coeffs.get(g)
    }

    /// Index of the last nonzero coefficient.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|f| !f.is_zero())
    }

    /// The series at a numerical `c`.
    pub fn eval(&self, c: &BigRat) -> Result<Vec<BigRat>> {
        self.coeffs.iter().map(|f| f.eval(c)).collect()
    }

    /// Coefficients of `N^0, N^-1, …, N^{-2·gmax}` with the odd ones zero.
    pub fn in_inverse_n(&self) -> Vec<RatFunc> {
        let mut out = Vec::with_capacity(2 * self.gmax + 1);
        for (g, f) in self.coeffs.iter().enumerate() {
            if g > 0 {
                out.push(RatFunc::zero(f.var()));
            }
            out.push(f.clone());
        }
        out
    }

    /// Whether both agree on every coefficient they share.
    pub fn agrees_with(&self, other: &CumulantSeries) -> bool {
        let common = self.gmax.min(other.gmax);
        let shared = self.coeffs[..=common] == other.coeffs[..=common];
        // a terminating series also pins everything beyond its last term
        let tail = |a: &CumulantSeries, b: &CumulantSeries| {
            !a.exact || b.coeffs.iter().skip(a.gmax + 1).all(RatFunc::is_zero)
        };
        shared && tail(self, other) && tail(other, self)
    }
}
