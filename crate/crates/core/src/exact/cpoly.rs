use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::MultiPoly;
use super::rational::Rational;
use super::var::Var;
use crate::error::Result;

/// Complex-valued polynomial `re + i*im` with real polynomial parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CPoly {
    pub re: MultiPoly,
    pub im: MultiPoly,
}

impl CPoly {
    pub fn new(re: MultiPoly, im: MultiPoly) -> Self {
        assert_eq!(re.reduced_s(), im.reduced_s(), "CPoly parts disagree on s-reduction");
        CPoly { re, im }
    }

    pub fn real(re: MultiPoly) -> Self {
        let im = if re.reduced_s() { MultiPoly::zero().reduce_s() } else { MultiPoly::zero() };
        CPoly { re, im }
    }

    pub fn imag(im: MultiPoly) -> Self {
        let re = if im.reduced_s() { MultiPoly::zero().reduce_s() } else { MultiPoly::zero() };
        CPoly { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(MultiPoly::one())
    }

    pub fn i() -> Self {
        Self::imag(MultiPoly::one())
    }

    /// `w = x + i*y`.
    pub fn w() -> Self {
        CPoly::new(MultiPoly::var(Var::X), MultiPoly::var(Var::Y))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        CPoly { re: self.re.clone(), im: -&self.im }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CPoly { re: self.re.scale(r), im: self.im.scale(r) }
    }

    /// Multiplication by a real polynomial.
    pub fn mul_real(&self, p: &MultiPoly) -> Self {
        CPoly { re: &self.re * p, im: &self.im * p }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = CPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Applies `f` to both parts.
    pub fn try_map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly>) -> Result<Self> {
        Ok(CPoly { re: f(&self.re)?, im: f(&self.im)? })
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        CPoly { re: f(&self.re), im: f(&self.im) }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if !self.im.is_zero() {
            return None;
        }
        self.re.as_constant()
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        Ok(CPoly { re: self.re.try_add(&o.re)?, im: self.im.try_add(&o.im)? })
    }

    /// In-place `self += o`.
    pub fn try_add_assign(&mut self, o: &Self) -> Result<()> {
        self.re.try_add_assign(&o.re)?;
        self.im.try_add_assign(&o.im)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        Ok(CPoly { re: self.re.try_sub(&o.re)?, im: self.im.try_sub(&o.im)? })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let re = self.re.try_mul(&o.re)?.try_sub(&self.im.try_mul(&o.im)?)?;
        let im = self.re.try_mul(&o.im)?.try_add(&self.im.try_mul(&o.re)?)?;
        Ok(CPoly { re, im })
    }

    /// `(re) + i*(im)` with each part in canonical form.
    pub fn canonical_string(&self) -> String {
        format!("({}) + i*({})", self.re, self.im)
    }
}

impl From<MultiPoly> for CPoly {
    fn from(p: MultiPoly) -> Self {
        CPoly::real(p)
    }
}

impl fmt::Display for CPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&CPoly> for &CPoly {
            type Output = CPoly;
            fn $method(self, rhs: &CPoly) -> CPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CPoly> for CPoly {
            type Output = CPoly;
            fn $method(self, rhs: CPoly) -> CPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CPoly> for CPoly {
            type Output = CPoly;
            fn $method(self, rhs: &CPoly) -> CPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<CPoly> for &CPoly {
            type Output = CPoly;
            fn $method(self, rhs: CPoly) -> CPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        CPoly { re: -&self.re, im: -&self.im }
    }
}

impl Neg for CPoly {
    type Output = CPoly;
    fn neg(self) -> CPoly {
        -&self
    }
}

impl std::iter::Sum for CPoly {
    fn sum<I: Iterator<Item = CPoly>>(iter: I) -> Self {
        iter.fold(CPoly::zero(), |a, b| a + b)
    }
}
