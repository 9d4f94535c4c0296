//! Truncated formal power series in `t` with polynomial coefficients.
//!
//! A [`TruncSeries`] stores ordinary coefficients `c_0..c_N` of `t^n`. The
//! [`Convention`] tag only changes how coefficients are read out:
//! [`TruncSeries::egf_coeff`] returns `n! c_n` for EGF series and `c_n` for
//! OGF series.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, CPoly, CPolyJson, MultiPoly, PolyJson, Rational};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `sum a_n t^n / n!`
    Egf,
    /// `sum a_n t^n`
    Ogf,
}

/// Ring operations a series coefficient must support.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Result<Self>;
    fn add_assign(&mut self, other: &Self) -> Result<()>;
    fn sub(&self, other: &Self) -> Result<Self>;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn scale(&self, r: &Rational) -> Self;
    fn from_rational(r: Rational) -> Self;
    /// `Some(c)` when the value is the rational constant `c`.
    fn as_constant(&self) -> Option<Rational>;
}

impl Coefficient for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.try_add_assign(other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        self.try_sub(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
    fn as_constant(&self) -> Option<Rational> {
        MultiPoly::as_constant(self)
    }
}

impl Coefficient for CPoly {
    fn zero() -> Self {
        CPoly::zero()
    }
    fn one() -> Self {
        CPoly::one()
    }
    fn is_zero(&self) -> bool {
        CPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }
    fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.try_add_assign(other)
    }
    fn sub(&self, other: &Self) -> Result<Self> {
        self.try_sub(other)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)
    }
    fn scale(&self, r: &Rational) -> Self {
        CPoly::scale(self, r)
    }
    fn from_rational(r: Rational) -> Self {
        CPoly::real(MultiPoly::constant(r))
    }
    fn as_constant(&self) -> Option<Rational> {
        CPoly::as_constant(self)
    }
}

/// Power series truncated after `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C = MultiPoly> {
    order: usize,
    coeffs: Vec<C>,
    convention: Convention,
}

impl<C: Coefficient> TruncSeries<C> {
    /// From ordinary coefficients of `t^0, t^1, ...`; padded with zeros or truncated to `order`.
    pub fn from_ordinary(mut coeffs: Vec<C>, order: usize, convention: Convention) -> Self {
        coeffs.resize(order + 1, C::zero());
        TruncSeries { order, coeffs, convention }
    }

    /// From readout coefficients: `a_n` of `sum a_n t^n/n!` (EGF) or `sum a_n t^n` (OGF).
    pub fn from_readout(values: Vec<C>, order: usize, convention: Convention) -> Self {
        let coeffs = values
            .into_iter()
            .enumerate()
            .map(|(n, a)| match convention {
                Convention::Egf => a.scale(&Rational::from_integer(factorial(n)).recip()),
                Convention::Ogf => a,
            })
            .collect();
        Self::from_ordinary(coeffs, order, convention)
    }

    pub fn zero(order: usize, convention: Convention) -> Self {
        Self::from_ordinary(Vec::new(), order, convention)
    }

    pub fn constant(c: C, order: usize, convention: Convention) -> Self {
        Self::from_ordinary(vec![c], order, convention)
    }

    pub fn one(order: usize, convention: Convention) -> Self {
        Self::constant(C::one(), order, convention)
    }

    /// `c * t^k`.
    pub fn monomial(c: C, k: usize, order: usize, convention: Convention) -> Self {
        let mut coeffs = vec![C::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        TruncSeries { order, coeffs, convention }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    /// Ordinary coefficient of `t^n`.
    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Same coefficients under another convention tag.
    pub fn retag(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// Coefficient readout honoring the convention: `n! c_n` for EGF, `c_n` for OGF.
    pub fn egf_coeff(&self, n: usize) -> Result<C> {
        if n > self.order {
            return Err(Error::range(format!(
                "coefficient {n} requested from a series truncated at order {}",
                self.order
            )));
        }
        Ok(match self.convention {
            Convention::Egf => self.coeffs[n].scale(&Rational::from_integer(factorial(n))),
            Convention::Ogf => self.coeffs[n].clone(),
        })
    }

    /// All readout coefficients `a_0..a_N`.
    pub fn readout(&self) -> Vec<C> {
        (0..=self.order).map(|n| self.egf_coeff(n).expect("in range")).collect()
    }

    fn check_compatible(&self, other: &Self, what: &str) -> Result<()> {
        if self.order != other.order {
            return Err(Error::usage(format!(
                "{what}: series orders differ ({} vs {})",
                self.order, other.order
            )));
        }
        if self.convention != other.convention {
            return Err(Error::usage(format!("{what}: EGF/OGF conventions differ")));
        }
        Ok(())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "add")?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(TruncSeries { order: self.order, coeffs, convention: self.convention })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "sub")?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(TruncSeries { order: self.order, coeffs, convention: self.convention })
    }

    /// Cauchy product truncated at the common order.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other, "mul")?;
        let n = self.order;
        let mut coeffs = vec![C::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j].add_assign(&a.mul(b)?)?;
            }
        }
        Ok(TruncSeries { order: n, coeffs, convention: self.convention })
    }

    /// Coefficient-wise product with a fixed coefficient.
    pub fn scale(&self, c: &C) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect::<Result<_>>()?;
        Ok(TruncSeries { order: self.order, coeffs, convention: self.convention })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.scale(r)).collect(),
            convention: self.convention,
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn invert(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| Error::singular("series constant term is not a nonzero rational"))?;
        let inv0 = c0.recip();
        let mut g: Vec<C> = Vec::with_capacity(self.order + 1);
        g.push(C::from_rational(inv0.clone()));
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                let fk = &self.coeffs[k];
                if fk.is_zero() {
                    continue;
                }
                acc.add_assign(&fk.mul(&g[n - k])?)?;
            }
            g.push(acc.scale(&-inv0.clone()));
        }
        Ok(TruncSeries { order: self.order, coeffs: g, convention: self.convention })
    }

    fn require_zero_constant(&self, what: &str) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::domain(format!("{what} needs a series with zero constant term")));
        }
        Ok(())
    }

    /// `exp(f)` for `f(0) = 0`, via `n g_n = sum_k k f_k g_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        let mut g: Vec<C> = Vec::with_capacity(self.order + 1);
        g.push(C::one());
        for n in 1..=self.order {
            let mut acc = C::zero();
            for k in 1..=n {
                let fk = &self.coeffs[k];
                if fk.is_zero() {
                    continue;
                }
                acc.add_assign(&fk.mul(&g[n - k])?.scale(&Rational::from_integer(BigInt::from(k))))?;
            }
            g.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(n))));
        }
        Ok(TruncSeries { order: self.order, coeffs: g, convention: self.convention })
    }

    /// `(cos f, sin f)` for `f(0) = 0`, from `cos' = -f' sin` and `sin' = f' cos`.
    pub fn trig(&self) -> Result<(Self, Self)> {
        self.require_zero_constant("cos/sin")?;
        let mut c: Vec<C> = Vec::with_capacity(self.order + 1);
        let mut s: Vec<C> = Vec::with_capacity(self.order + 1);
        c.push(C::one());
        s.push(C::zero());
        for n in 1..=self.order {
            let mut ac = C::zero();
            let mut as_ = C::zero();
            for k in 1..=n {
                let fk = &self.coeffs[k];
                if fk.is_zero() {
                    continue;
                }
                let kf = fk.scale(&Rational::from_integer(BigInt::from(k)));
                ac = ac.sub(&kf.mul(&s[n - k])?)?;
                as_.add_assign(&kf.mul(&c[n - k])?)?;
            }
            let inv = Rational::new(BigInt::one(), BigInt::from(n));
            c.push(ac.scale(&inv));
            s.push(as_.scale(&inv));
        }
        let mk = |coeffs| TruncSeries { order: self.order, coeffs, convention: self.convention };
        Ok((mk(c), mk(s)))
    }

    /// Integer power; negative exponents go through [`TruncSeries::invert`].
    pub fn pow_int(&self, z: i64) -> Result<Self> {
        let base = if z < 0 { self.invert()? } else { self.clone() };
        let mut e = z.unsigned_abs();
        let mut acc = Self::one(self.order, self.convention);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> TruncSeries<D> {
        TruncSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
            convention: self.convention,
        }
    }
}

impl TruncSeries<MultiPoly> {
    /// Embeds a real series into the complex coefficient ring.
    pub fn complexify(&self) -> TruncSeries<CPoly> {
        self.map_coeffs(|p| CPoly::real(p.clone()))
    }
}

impl TruncSeries<CPoly> {
    pub fn re(&self) -> TruncSeries<MultiPoly> {
        self.map_coeffs(|p| p.re.clone())
    }

    pub fn im(&self) -> TruncSeries<MultiPoly> {
        self.map_coeffs(|p| p.im.clone())
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(CPoly::conj)
    }
}

/// Interchange form:
/// `{"order":N, "convention":"egf"|"ogf", "coeffs":[...]}` where `coeffs`
/// holds the readout values (`a_n` of `sum a_n t^n/n!` for EGF).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson<P> {
    pub order: usize,
    pub convention: Convention,
    pub coeffs: Vec<P>,
}

impl From<&TruncSeries<MultiPoly>> for SeriesJson<PolyJson> {
    fn from(s: &TruncSeries<MultiPoly>) -> Self {
        SeriesJson {
            order: s.order,
            convention: s.convention,
            coeffs: s.readout().iter().map(PolyJson::from).collect(),
        }
    }
}

impl From<&TruncSeries<CPoly>> for SeriesJson<CPolyJson> {
    fn from(s: &TruncSeries<CPoly>) -> Self {
        SeriesJson {
            order: s.order,
            convention: s.convention,
            coeffs: s.readout().iter().map(CPolyJson::from).collect(),
        }
    }
}

impl TryFrom<&SeriesJson<PolyJson>> for TruncSeries<MultiPoly> {
    type Error = Error;

    fn try_from(j: &SeriesJson<PolyJson>) -> Result<Self> {
        if j.coeffs.len() != j.order + 1 {
            return Err(Error::usage("series JSON must carry order+1 coefficients"));
        }
        let values = j.coeffs.iter().map(MultiPoly::try_from).collect::<Result<_>>()?;
        Ok(TruncSeries::from_readout(values, j.order, j.convention))
    }
}

impl TryFrom<&SeriesJson<CPolyJson>> for TruncSeries<CPoly> {
    type Error = Error;

    fn try_from(j: &SeriesJson<CPolyJson>) -> Result<Self> {
        if j.coeffs.len() != j.order + 1 {
            return Err(Error::usage("series JSON must carry order+1 coefficients"));
        }
        let values = j.coeffs.iter().map(CPoly::try_from).collect::<Result<_>>()?;
        Ok(TruncSeries::from_readout(values, j.order, j.convention))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Var};

    fn t_poly(cs: &[i64], order: usize, conv: Convention) -> TruncSeries {
        TruncSeries::from_ordinary(cs.iter().map(|&c| MultiPoly::from_int(c)).collect(), order, conv)
    }

    fn lin(p: MultiPoly, order: usize) -> TruncSeries {
        TruncSeries::monomial(p, 1, order, Convention::Egf)
    }

    #[test]
    fn one_plus_t_times_one_minus_t() {
        let a = t_poly(&[1, 1], 2, Convention::Ogf);
        let b = t_poly(&[1, -1], 2, Convention::Ogf);
        assert_eq!(a.mul(&b).unwrap(), t_poly(&[1, 0, -1], 2, Convention::Ogf));
    }

    #[test]
    fn scale_by_zero() {
        let a = t_poly(&[3, 1, 4], 2, Convention::Egf);
        assert_eq!(a.scale(&MultiPoly::zero()).unwrap(), TruncSeries::zero(2, Convention::Egf));
    }

    #[test]
    fn mismatched_operands() {
        let a = t_poly(&[1], 2, Convention::Egf);
        assert!(matches!(a.add(&t_poly(&[1], 3, Convention::Egf)), Err(Error::Usage(_))));
        assert!(matches!(a.mul(&t_poly(&[1], 2, Convention::Ogf)), Err(Error::Usage(_))));
    }

    #[test]
    fn exp_additivity_against_direct_formula() {
        let n = 8;
        let x = MultiPoly::var(Var::X);
        let u = MultiPoly::var(Var::u(1));
        let lhs = lin(x.clone(), n).exp().unwrap().mul(&lin(u.clone(), n).exp().unwrap()).unwrap();
        // oracle: EGF coefficient of exp((x+u1)t) is (x+u1)^k, expanded binomially
        for k in 0..=n {
            let direct: MultiPoly = (0..=k)
                .map(|i| {
                    (x.pow(i as u32) * u.pow((k - i) as u32))
                        .scale_int(&crate::exact::binomial(k, i))
                })
                .sum();
            assert_eq!(lhs.egf_coeff(k).unwrap(), direct);
        }
    }

    #[test]
    fn geometric_series() {
        let f = t_poly(&[1, -1], 3, Convention::Ogf);
        assert_eq!(f.invert().unwrap(), t_poly(&[1, 1, 1, 1], 3, Convention::Ogf));
    }

    #[test]
    fn invert_requires_unit() {
        let f = t_poly(&[0, 1], 3, Convention::Ogf);
        assert!(matches!(f.invert(), Err(Error::Singularity(_))));
        let g = TruncSeries::constant(MultiPoly::var(Var::X), 3, Convention::Ogf);
        assert!(matches!(g.invert(), Err(Error::Singularity(_))));
    }

    /// Bernoulli numbers from sum_{k<=n} binom(n+1,k) B_k = 0.
    fn bernoulli_oracle(n: usize) -> Vec<Rational> {
        let mut b = vec![rat(1)];
        for m in 1..=n {
            let s: Rational = (0..m)
                .map(|k| Rational::from_integer(crate::exact::binomial(m + 1, k)) * &b[k])
                .sum();
            b.push(-s / rat(m as i64 + 1));
        }
        b
    }

    #[test]
    fn bernoulli_numbers_by_inversion() {
        let n = 10;
        // (e^t - 1)/t = sum t^k/(k+1)!
        let f = TruncSeries::from_ordinary(
            (0..=n)
                .map(|k| MultiPoly::constant(Rational::from_integer(factorial(k + 1)).recip()))
                .collect(),
            n,
            Convention::Egf,
        );
        let b = f.invert().unwrap();
        let oracle = bernoulli_oracle(n);
        for k in 0..=n {
            assert_eq!(b.egf_coeff(k).unwrap().as_constant().unwrap(), oracle[k]);
        }
        assert_eq!(b.egf_coeff(2).unwrap(), MultiPoly::constant(Rational::new(1.into(), 6.into())));
        // t/(e^t-1) to the power -1 has coefficients 1/(n+1)
        let back = b.pow_int(-1).unwrap();
        for k in 0..=n {
            assert_eq!(back.egf_coeff(k).unwrap(), MultiPoly::constant(Rational::new(1.into(), (k as i64 + 1).into())));
        }
    }

    #[test]
    fn exp_cases() {
        assert_eq!(TruncSeries::<MultiPoly>::zero(5, Convention::Egf).exp().unwrap(), TruncSeries::one(5, Convention::Egf));
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let f = TruncSeries::from_ordinary(vec![MultiPoly::zero(), x.clone(), y.clone()], 4, Convention::Egf);
        let g = f.exp().unwrap();
        assert_eq!(g.egf_coeff(2).unwrap().to_string(), "x^2 + 2*y");
        let u = MultiPoly::var(Var::u(1));
        let e = lin(u.clone(), 6).exp().unwrap();
        for k in 0..=6 {
            assert_eq!(e.egf_coeff(k).unwrap(), u.pow(k as u32));
        }
        assert!(matches!(t_poly(&[1, 1], 3, Convention::Egf).exp(), Err(Error::Domain(_))));
        assert!(matches!(t_poly(&[1], 3, Convention::Egf).trig(), Err(Error::Domain(_))));
    }

    #[test]
    fn cos_sin_of_yt() {
        let y = MultiPoly::var(Var::Y);
        let (c, s) = lin(y.clone(), 10).trig().unwrap();
        assert_eq!(c.egf_coeff(2).unwrap(), -y.pow(2));
        assert!(s.egf_coeff(0).unwrap().is_zero());
        for k in 0..=10 {
            let expected = match k % 4 {
                0 => y.pow(k as u32),
                2 => -y.pow(k as u32),
                _ => MultiPoly::zero(),
            };
            assert_eq!(c.egf_coeff(k).unwrap(), expected);
        }
        let pyth = c.mul(&c).unwrap().add(&s.mul(&s).unwrap()).unwrap();
        assert_eq!(pyth, TruncSeries::one(10, Convention::Egf));
    }

    #[test]
    fn pow_cases() {
        let f = t_poly(&[2, 1, 3], 4, Convention::Egf);
        assert_eq!(f.pow_int(0).unwrap(), TruncSeries::one(4, Convention::Egf));
        assert_eq!(f.pow_int(2).unwrap(), f.mul(&f).unwrap());
        assert!(matches!(t_poly(&[0, 1], 4, Convention::Egf).pow_int(-2), Err(Error::Singularity(_))));
    }

    #[test]
    fn ogf_readout_is_unscaled() {
        let x = MultiPoly::var(Var::X);
        // 1/(1 - 2xt + t^2)
        let d = TruncSeries::from_ordinary(vec![MultiPoly::one(), x.scale(&rat(-2)), MultiPoly::one()], 4, Convention::Ogf);
        let u = d.invert().unwrap();
        assert_eq!(u.egf_coeff(2).unwrap().to_string(), "4*x^2 - 1");
        assert!(matches!(u.egf_coeff(5), Err(Error::Range(_))));
    }

    #[test]
    fn json_roundtrip() {
        let x = MultiPoly::var(Var::X);
        let s = lin(x, 4).exp().unwrap();
        let j = SeriesJson::from(&s);
        let text = serde_json::to_string(&j).unwrap();
        let back: SeriesJson<PolyJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(TruncSeries::try_from(&back).unwrap(), s);
    }
}
