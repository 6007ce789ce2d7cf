use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{parse_rat, BigRat, Poly};
use crate::{Error, Result};

/// Name of the indeterminate a [`RatFunc`] is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    /// Weingarten parameter.
    #[serde(rename = "z")]
    Z,
    /// Aspect ratio `c = M/N`.
    #[serde(rename = "c")]
    C,
    /// Scaled shape `x = (c-1)N` (or the formal variable of a generating function).
    #[serde(rename = "x")]
    X,
    /// Scaled size `y = cN`.
    #[serde(rename = "y")]
    Y,
    /// Matrix size.
    #[serde(rename = "N")]
    N,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::Z => 'z',
            Var::C => 'c',
            Var::X => 'x',
            Var::Y => 'y',
            Var::N => 'N',
        }
    }
}

/// A rational function in one variable, kept in canonical form: numerator and
/// denominator coprime, denominator monic (so zero is `0/1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatFuncRecord", into = "RatFuncRecord")]
pub struct RatFunc {
    var: Var,
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(var: Var, num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(var, num, den))
    }

    fn canonical(var: Var, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero(var);
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lead_inv = den.lead().expect("nonzero denominator").recip();
        if lead_inv.is_one() {
            RatFunc { var, num, den }
        } else {
            RatFunc {
                var,
                num: num.scale(&lead_inv),
                den: den.scale(&lead_inv),
            }
        }
    }

    pub fn zero(var: Var) -> Self {
        RatFunc {
            var,
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one(var: Var) -> Self {
        RatFunc::constant(var, BigRat::one())
    }

    pub fn constant(var: Var, c: BigRat) -> Self {
        RatFunc {
            var,
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_poly(var: Var, p: Poly) -> Self {
        RatFunc {
            var,
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable itself.
    pub fn var_fn(var: Var) -> Self {
        RatFunc::from_poly(var, Poly::x())
    }

    /// `(var - a)^k` for any integer `k`.
    pub fn shifted_power(var: Var, a: &BigRat, k: i64) -> Self {
        let base = Poly::linear_root(a.clone()).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            RatFunc::from_poly(var, base)
        } else {
            RatFunc {
                var,
                num: Poly::one(),
                den: base,
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this is a constant function.
    pub fn as_constant(&self) -> Option<BigRat> {
        if self.den.is_one() && self.num.degree().unwrap_or(0) == 0 {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Renames the variable without changing the function.
    pub fn with_var(&self, var: Var) -> Self {
        RatFunc {
            var,
            ..self.clone()
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.var, self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self> {
        self.check_var(rhs)?;
        Ok(self * &rhs.inverse()?)
    }

    pub fn try_add(&self, rhs: &RatFunc) -> Result<Self> {
        self.check_var(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &RatFunc) -> Result<Self> {
        self.check_var(rhs)?;
        Ok(self * rhs)
    }

    fn check_var(&self, rhs: &RatFunc) -> Result<()> {
        if self.var != rhs.var {
            Err(Error::VariableMismatch(self.var.symbol(), rhs.var.symbol()))
        } else {
            Ok(())
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return RatFunc::zero(self.var);
        }
        RatFunc {
            var: self.var,
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RatFunc {
            var: self.var,
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn eval(&self, at: &BigRat) -> Result<BigRat> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.eval(at) / d)
    }

    /// `f(-v)`.
    pub fn negate_var(&self) -> Self {
        Self::canonical(self.var, self.num.negate_var(), self.den.negate_var())
    }

    /// `f(v + a)`.
    pub fn shift_var(&self, a: &BigRat) -> Self {
        Self::canonical(self.var, self.num.shift(a), self.den.shift(a))
    }

    /// Degree at infinity, `deg num - deg den` (`None` for zero).
    pub fn degree_at_infinity(&self) -> Option<i64> {
        let dn = self.num.degree()? as i64;
        Some(dn - self.den.degree().unwrap() as i64)
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        assert_eq!(self.var, rhs.var, "RatFunc variable mismatch");
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::canonical(self.var, &self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::canonical(self.var, num, &self.den * &rhs.den)
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            var: self.var,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        assert_eq!(self.var, rhs.var, "RatFunc variable mismatch");
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.var);
        }
        // cross-cancel first to keep the gcd work small
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatFunc::canonical(self.var, &n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.var.symbol();
        let num = self.num.display_with(v);
        if self.den.is_one() {
            return write!(f, "{num}");
        }
        let wrap = |s: String, p: &Poly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(
            f,
            "{}/{}",
            wrap(num, &self.num),
            wrap(self.den.display_with(v), &self.den)
        )
    }
}

/// Wire form: coefficient strings from low to high degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncRecord {
    pub variable: Var,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl From<RatFunc> for RatFuncRecord {
    fn from(f: RatFunc) -> Self {
        let strs = |p: &Poly| p.coeffs().iter().map(ToString::to_string).collect();
        RatFuncRecord {
            variable: f.var,
            numerator: strs(&f.num),
            denominator: strs(&f.den),
        }
    }
}

impl TryFrom<RatFuncRecord> for RatFunc {
    type Error = Error;
    fn try_from(r: RatFuncRecord) -> Result<Self> {
        let parse = |v: &[String]| -> Result<Poly> {
            Ok(Poly::from_coeffs(
                v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>()?,
            ))
        };
        RatFunc::new(r.variable, parse(&r.numerator)?, parse(&r.denominator)?)
    }
}
