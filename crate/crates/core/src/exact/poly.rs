use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{binomial, fmt_rational, is_negative, Rational};
use super::var::{Var, NVARS};
use crate::error::{Error, Result};

/// Exponent vector over the fixed alphabet.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `x`, then `y`, and so on. Canonical output lists the largest monomial first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn of(v: Var, e: u16) -> Self {
        let mut m = Self::one();
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        out
    }

    fn with(&self, v: Var, e: u16) -> Self {
        let mut out = *self;
        out.0[v.index()] = e;
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::all() {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients over the alphabet of [`Var`].
///
/// No stored coefficient is zero. When `reduced_s` is set, every exponent of
/// `s` is at most one: the polynomial lives in the quotient ring by
/// `s^2 - (1 - x^2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
    reduced_s: bool,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::of(v, 1))
    }

    /// `coef * prod v^e`.
    pub fn monomial(coef: Rational, powers: &[(Var, u16)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in powers {
            m.0[v.index()] += e;
        }
        Self::term(coef, m)
    }

    pub fn term(coef: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(m, coef);
        }
        MultiPoly { terms, reduced_s: false }
    }

    /// Builds from raw terms; repeated monomials are summed and zeros dropped.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>, reduced_s: bool) -> Self {
        let mut out = MultiPoly { terms: BTreeMap::new(), reduced_s: false };
        for (m, c) in terms {
            out.add_term(m, c);
        }
        if reduced_s {
            out.reduce_s()
        } else {
            out
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reduced_s(&self) -> bool {
        self.reduced_s
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(c)` when the polynomial is the constant `c` (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    /// Symbols that occur, in alphabet order.
    pub fn vars(&self) -> Vec<Var> {
        Var::all().filter(|&v| self.contains(v)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_flags(&self, other: &Self, what: &str) -> Result<()> {
        if self.reduced_s != other.reduced_s {
            return Err(Error::usage(format!(
                "{what}: operands disagree on s-reduction (one is in the quotient ring, one is not)"
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_flags(other, "add")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    /// In-place `self += other`.
    pub fn try_add_assign(&mut self, other: &Self) -> Result<()> {
        self.check_flags(other, "add")?;
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
        Ok(())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_flags(other, "sub")?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_flags(other, "mul")?;
        let mut out = MultiPoly { terms: BTreeMap::new(), reduced_s: false };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(if self.reduced_s { out.reduce_s() } else { out })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return MultiPoly { terms: BTreeMap::new(), reduced_s: self.reduced_s };
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, c * r)).collect(),
            reduced_s: self.reduced_s,
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&Rational::from_integer(n.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = MultiPoly::one().with_flag(self.reduced_s);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn with_flag(mut self, reduced_s: bool) -> Self {
        if reduced_s {
            self = self.reduce_s();
        }
        self.reduced_s = reduced_s;
        self
    }

    /// Image in the quotient ring: every `s^2` is rewritten to `1 - x^2`.
    pub fn reduce_s(&self) -> Self {
        let mut out = MultiPoly { terms: BTreeMap::new(), reduced_s: true };
        for (m, c) in &self.terms {
            let es = m.exp(Var::S);
            if es <= 1 {
                out.add_term(*m, c.clone());
                continue;
            }
            let k = (es / 2) as usize;
            let base = m.with(Var::S, es % 2);
            // (1 - x^2)^k = sum_i binom(k, i) (-1)^i x^(2i)
            for i in 0..=k {
                let mut coef = c * Rational::from_integer(binomial(k, i));
                if i % 2 == 1 {
                    coef = -coef;
                }
                let ex = base.exp(Var::X) + 2 * i as u16;
                out.add_term(base.with(Var::X, ex), coef);
            }
        }
        out
    }

    /// Formal partial derivative.
    ///
    /// Refused on s-reduced polynomials for `x` and `s`: the rewrite
    /// `s^2 -> 1 - x^2` does not commute with those derivatives.
    pub fn partial(&self, v: Var) -> Result<Self> {
        if self.reduced_s && (v == Var::X || v == Var::S) {
            return Err(Error::usage(format!(
                "cannot differentiate an s-reduced polynomial with respect to {v}"
            )));
        }
        let mut out = MultiPoly { terms: BTreeMap::new(), reduced_s: self.reduced_s };
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            out.add_term(m.with(v, e - 1), c * Rational::from_integer(BigInt::from(e)));
        }
        Ok(out)
    }

    /// Replaces every occurrence of `v` by `q`.
    pub fn substitute(&self, v: Var, q: &MultiPoly) -> Result<Self> {
        self.check_flags(q, "substitute")?;
        if !self.contains(v) {
            return Ok(self.clone());
        }
        let mut powers: Vec<MultiPoly> = vec![MultiPoly::one().with_flag(self.reduced_s)];
        let mut out = MultiPoly { terms: BTreeMap::new(), reduced_s: false };
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * q;
                powers.push(next);
            }
            let rest = m.with(v, 0);
            for (mq, cq) in &powers[e].terms {
                out.add_term(rest.mul(mq), c * cq);
            }
        }
        Ok(if self.reduced_s { out.reduce_s() } else { out })
    }

    /// Substitutes a rational value for `v`.
    pub fn subs_value(&self, v: Var, value: &Rational) -> Self {
        let q = MultiPoly::constant(value.clone()).with_flag(self.reduced_s);
        self.substitute(v, &q).expect("flags agree by construction")
    }

    /// `p(..., -v, ...)`.
    pub fn negate_var(&self, v: Var) -> Self {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.exp(v) % 2 == 1 { -c.clone() } else { c.clone() }))
                .collect(),
            reduced_s: self.reduced_s,
        }
    }

    /// Exact value under a full assignment of the occurring symbols.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for v in Var::all() {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                let x = assignment
                    .get(&v)
                    .ok_or_else(|| Error::usage(format!("no value assigned to {v}")))?;
                val *= num_traits::pow(x.clone(), e as usize);
            }
            total += val;
        }
        Ok(total)
    }

    /// If every term carries exactly `s^1`, returns the cofactor `q` with `self = s * q`.
    pub fn strip_s(&self) -> Option<Self> {
        if self.terms.keys().any(|m| m.exp(Var::S) != 1) {
            return None;
        }
        Some(MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.with(Var::S, 0), c.clone())).collect(),
            reduced_s: self.reduced_s,
        })
    }

    /// Deterministic graded-lex rendering, e.g. `x^2 - y^2 + 2*u2`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = is_negative(c);
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&fmt_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&fmt_rational(&abs));
                out.push('*');
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

/// The ring operations addressable through [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Exact ring operation; errors when the operands disagree on s-reduction.
pub fn poly_arith(op: PolyOp, p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => p.try_add(q),
        PolyOp::Sub => p.try_sub(q),
        PolyOp::Mul => p.try_mul(q),
    }
}

// Operator forms panic on a reduction-flag mismatch; use `poly_arith` or the
// `try_*` methods where the operands are not known to agree.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
            reduced_s: self.reduced_s,
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(None, |acc: Option<MultiPoly>, p| Some(match acc {
            None => p,
            Some(a) => a + p,
        }))
        .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x() -> MultiPoly {
        MultiPoly::var(Var::X)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(Var::Y)
    }
    fn s() -> MultiPoly {
        MultiPoly::var(Var::S)
    }

    #[test]
    fn additive_inverse() {
        assert!((x() + -x()).is_zero());
        assert_eq!(poly_arith(PolyOp::Add, &x(), &-x()).unwrap(), MultiPoly::zero());
    }

    #[test]
    fn difference_of_squares() {
        let p = (x() + y()) * (x() - y());
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn s_times_s_reduces() {
        let sr = s().reduce_s();
        let p = poly_arith(PolyOp::Mul, &sr, &sr).unwrap();
        assert_eq!(p, (MultiPoly::one() - x() * x()).reduce_s());
        assert_eq!(p.to_string(), "-x^2 + 1");
    }

    #[test]
    fn flag_mismatch_is_usage_error() {
        let err = poly_arith(PolyOp::Add, &x(), &x().reduce_s()).unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn partials() {
        let p = x() * x() * y();
        assert_eq!(p.partial(Var::X).unwrap().to_string(), "2*x*y");
        assert!(MultiPoly::from_int(7).partial(Var::X).unwrap().is_zero());
        // C_2 = x^2 - y^2, d/dy = -2y = -2 S_1
        let c2 = x() * x() - y() * y();
        assert_eq!(c2.partial(Var::Y).unwrap(), y().scale(&rat(-2)));
        assert!(c2.reduce_s().partial(Var::X).is_err());
        assert!(c2.reduce_s().partial(Var::S).is_err());
        assert!(c2.reduce_s().partial(Var::Y).is_ok());
    }

    #[test]
    fn substitution() {
        let c2 = x() * x() - y() * y();
        let t2 = c2.substitute(Var::Y, &s()).unwrap().reduce_s();
        assert_eq!(t2, ((x() * x()).scale(&rat(2)) - MultiPoly::one()).reduce_s());
        assert_eq!(t2.to_string(), "2*x^2 - 1");
        assert_eq!(c2.substitute(Var::X, &x()).unwrap(), c2);
        assert!((y() * y()).substitute(Var::Y, &MultiPoly::zero()).unwrap().is_zero());
    }

    #[test]
    fn evaluation() {
        let p = x() + MultiPoly::var(Var::u(1));
        let mut asg = BTreeMap::new();
        asg.insert(Var::X, Rational::new(1.into(), 2.into()));
        asg.insert(Var::u(1), Rational::new(1.into(), 3.into()));
        assert_eq!(p.eval(&asg).unwrap(), Rational::new(5.into(), 6.into()));
        assert_eq!(MultiPoly::zero().eval(&BTreeMap::new()).unwrap(), rat(0));
        asg.remove(&Var::X);
        assert!(matches!(p.eval(&asg), Err(Error::Usage(_))));
    }

    #[test]
    fn canonical_strings() {
        let p = x() * x() + MultiPoly::var(Var::u(2)).scale(&rat(2)) - y() * y();
        assert_eq!(p.to_string(), "x^2 - y^2 + 2*u2");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(x().scale(&Rational::new(1.into(), 2.into())).to_string(), "1/2*x");
        assert_eq!((-x() - MultiPoly::one()).to_string(), "-x - 1");
    }

    #[test]
    fn strip_s_cofactor() {
        let p = (s() * x()).reduce_s();
        assert_eq!(p.strip_s().unwrap(), x().reduce_s());
        assert!((s() * s()).strip_s().is_none());
    }
}
