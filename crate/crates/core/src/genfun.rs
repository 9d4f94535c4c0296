//! Generating-function constructors for every polynomial family, plus the
//! truncated hypergeometric series. Coefficients extracted from these
//! series are the reference against which `closedform` is tested.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{factorial, rat, CPoly, MultiPoly, Rational, Value, Var, MAX_TUPLE};
use crate::series::{Coefficient, Convention, TruncSeries};

/// The function `f(t, a)` inside `(b + f(t, a))^z`.
#[derive(Clone, Debug, PartialEq)]
pub enum FKind {
    /// `f(t, a) = t / (a e^t - 1)`
    BernoulliKernel,
    /// `f(t, a) = 2 / (a e^t + 1)`
    EulerKernel,
    /// An explicit series with rational coefficients; `a` is ignored.
    UserSeries(TruncSeries<MultiPoly>),
}

/// `(b + f(t, a))^z` bundled with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    pub kind: FKind,
    pub a: Rational,
    pub b: Rational,
}

impl Kernel {
    pub fn new(kind: FKind, a: Rational, b: Rational) -> Self {
        Kernel { kind, a, b }
    }

    /// `t/(a e^t - 1)` with `b = 0`.
    pub fn bernoulli(a: Rational) -> Self {
        Kernel::new(FKind::BernoulliKernel, a, Rational::zero())
    }

    /// `2/(a e^t + 1)` with `b = 0`.
    pub fn euler(a: Rational) -> Self {
        Kernel::new(FKind::EulerKernel, a, Rational::zero())
    }

    /// `(b + f(t, a))^z` as an EGF-tagged series.
    pub fn power_series(&self, z: i64, order: usize) -> Result<TruncSeries> {
        let f = kernel_f(&self.kind, &self.a, order)?;
        let shifted = f.add(&TruncSeries::constant(MultiPoly::constant(self.b.clone()), order, Convention::Egf))?;
        if z < 0 {
            let c0 = shifted.coeff(0).as_constant().unwrap_or_else(Rational::zero);
            if c0.is_zero() {
                return Err(Error::singular(format!(
                    "negative power {z} of b + f(t,a) with b + f(0,a) = 0 (a = {}, b = {})",
                    self.a, self.b
                )));
            }
        }
        shifted.pow_int(z)
    }

    /// The numbers `y6^(z)(n; a, b)`, `n = 0..=order`.
    pub fn numbers(&self, z: i64, order: usize) -> Result<Vec<Rational>> {
        Ok(self
            .power_series(z, order)?
            .readout()
            .into_iter()
            .map(|p| p.as_constant().expect("kernel series has rational coefficients"))
            .collect())
    }
}

fn egf(coeffs: Vec<MultiPoly>, order: usize) -> TruncSeries {
    TruncSeries::from_ordinary(coeffs, order, Convention::Egf)
}

/// `sum_{k>=0} c t^k / k!` ordinary coefficients, scaled by `c`.
fn exp_t_coeffs(c: &Rational, order: usize) -> Vec<MultiPoly> {
    (0..=order)
        .map(|k| MultiPoly::constant(c / Rational::from_integer(factorial(k))))
        .collect()
}

/// The kernel `f(t, a)` truncated at `order`.
pub fn kernel_f(kind: &FKind, a: &Rational, order: usize) -> Result<TruncSeries> {
    match kind {
        FKind::BernoulliKernel => {
            if a.is_one() {
                // removable singularity: t/(e^t - 1) = 1 / ((e^t - 1)/t)
                let q = (0..=order)
                    .map(|k| MultiPoly::constant(Rational::from_integer(factorial(k + 1)).recip()))
                    .collect();
                egf(q, order).invert()
            } else {
                // a e^t - 1 has constant term a - 1 != 0
                let mut d = exp_t_coeffs(a, order);
                d[0] = MultiPoly::constant(a - Rational::one());
                let inv = egf(d, order).invert()?;
                Ok(inv.mul(&TruncSeries::monomial(MultiPoly::one(), 1, order, Convention::Egf))?)
            }
        }
        FKind::EulerKernel => {
            if *a == -Rational::one() {
                return Err(Error::singular("Euler kernel 2/(a e^t + 1) is singular at a = -1"));
            }
            let mut d = exp_t_coeffs(a, order);
            d[0] = MultiPoly::constant(a + Rational::one());
            Ok(egf(d, order).invert()?.scale_rational(&rat(2)))
        }
        FKind::UserSeries(s) => {
            if s.order() < order {
                return Err(Error::range(format!(
                    "user kernel series has order {} < requested {order}",
                    s.order()
                )));
            }
            if s.coeffs().iter().any(|c| c.as_constant().is_none()) {
                return Err(Error::usage("user kernel series must have rational coefficients"));
            }
            Ok(TruncSeries::from_ordinary(s.coeffs()[..=order].to_vec(), order, Convention::Egf))
        }
    }
}

/// Identifies a generating function and its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyId {
    /// `(t/(lambda e^t - 1))^k e^(xt)`
    ApostolBernoulli { k: i64, lambda: Rational },
    /// `(2/(lambda e^t + 1))^k e^(xt)`
    ApostolEuler { k: i64, lambda: Rational },
    /// `e^(xt) cos(yt)`
    CosC,
    /// `e^(xt) sin(yt)`
    SinS,
    /// `(1 - xt)/(1 - 2xt + t^2)`, ordinary
    ChebyshevT,
    /// `1/(1 - 2xt + t^2)`, ordinary
    ChebyshevU,
    /// `(2 - xt)/(1 - xt + alpha t^2)`, ordinary
    DicksonD { alpha: Rational },
    /// `1/(1 - xt + alpha t^2)`, ordinary
    DicksonE { alpha: Rational },
    /// `exp(xt + y t^j)`
    GouldHopper { j: usize },
    /// `exp(sum_{j<=r} u_j t^j)`
    HermiteGen { r: usize },
    /// `exp(wt + sum u_j t^j)`, complex
    GKernel { r: usize },
    /// `exp(xt + sum u_j t^j) cos(yt)`
    K1Kernel { r: usize },
    /// `exp(xt + sum u_j t^j) sin(yt)`
    K2Kernel { r: usize },
    /// `(b + f)^z G(t, w)`, complex
    M1 { z: i64, kernel: Kernel, r: usize },
    /// `(b + f)^z (G(t, w) + G(t, conj w))`, complex
    M2 { z: i64, kernel: Kernel, r: usize },
    /// `(b + f)^z (G(t, w) - G(t, conj w))`, complex
    M3 { z: i64, kernel: Kernel, r: usize },
    /// `exp(sum u_j t^j) cos(yt)`
    M4 { r: usize },
    /// `exp(sum u_j t^j) sin(yt)`
    M5 { r: usize },
    /// `2 (b + f)^z e^(xt) M4`
    Bform { z: i64, kernel: Kernel, r: usize },
    /// `2 (b + f)^z e^(xt) M5`
    B1form { z: i64, kernel: Kernel, r: usize },
    /// `(t/(a e^t - 1))^z e^(xt) cos(yt)`
    BC { z: i64, a: Rational },
    /// `(t/(a e^t - 1))^z e^(xt) sin(yt)`
    BS { z: i64, a: Rational },
    /// `(2/(a e^t + 1))^z e^(xt) cos(yt)`
    EC { z: i64, a: Rational },
    /// `(2/(a e^t + 1))^z e^(xt) sin(yt)`
    ES { z: i64, a: Rational },
    /// `exp(wt)`, complex
    Nw,
    /// `(b + f)^z`
    R1 { z: i64, kernel: Kernel },
}

impl FamilyId {
    pub fn convention(&self) -> Convention {
        match self {
            FamilyId::ChebyshevT
            | FamilyId::ChebyshevU
            | FamilyId::DicksonD { .. }
            | FamilyId::DicksonE { .. } => Convention::Ogf,
            _ => Convention::Egf,
        }
    }

    pub fn is_complex(&self) -> bool {
        matches!(
            self,
            FamilyId::GKernel { .. }
                | FamilyId::M1 { .. }
                | FamilyId::M2 { .. }
                | FamilyId::M3 { .. }
                | FamilyId::Nw
        )
    }

    fn tuple_len(&self) -> Option<usize> {
        match self {
            FamilyId::HermiteGen { r }
            | FamilyId::GKernel { r }
            | FamilyId::K1Kernel { r }
            | FamilyId::K2Kernel { r }
            | FamilyId::M1 { r, .. }
            | FamilyId::M2 { r, .. }
            | FamilyId::M3 { r, .. }
            | FamilyId::M4 { r }
            | FamilyId::M5 { r }
            | FamilyId::Bform { r, .. }
            | FamilyId::B1form { r, .. } => Some(*r),
            _ => None,
        }
    }

    /// Checks parameter ranges that do not depend on the truncation order.
    pub fn validate(&self) -> Result<()> {
        if let Some(r) = self.tuple_len() {
            if !(1..=MAX_TUPLE).contains(&r) {
                return Err(Error::Arity(format!("tuple length r = {r} outside 1..={MAX_TUPLE}")));
            }
        }
        if let FamilyId::GouldHopper { j } = self {
            if *j < 2 {
                return Err(Error::Arity(format!("Gould-Hopper index j = {j} must be at least 2")));
            }
        }
        Ok(())
    }
}

/// A built generating function, real or complex valued.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilySeries {
    Real(TruncSeries<MultiPoly>),
    Complex(TruncSeries<CPoly>),
}

impl FamilySeries {
    pub fn order(&self) -> usize {
        match self {
            FamilySeries::Real(s) => s.order(),
            FamilySeries::Complex(s) => s.order(),
        }
    }

    pub fn convention(&self) -> Convention {
        match self {
            FamilySeries::Real(s) => s.convention(),
            FamilySeries::Complex(s) => s.convention(),
        }
    }

    pub fn egf_coeff(&self, n: usize) -> Result<Value> {
        Ok(match self {
            FamilySeries::Real(s) => Value::Real(s.egf_coeff(n)?),
            FamilySeries::Complex(s) => Value::Complex(s.egf_coeff(n)?),
        })
    }

    pub fn into_real(self) -> Result<TruncSeries<MultiPoly>> {
        match self {
            FamilySeries::Real(s) => Ok(s),
            FamilySeries::Complex(_) => Err(Error::usage("family is complex valued")),
        }
    }

    pub fn into_complex(self) -> TruncSeries<CPoly> {
        match self {
            FamilySeries::Real(s) => s.complexify(),
            FamilySeries::Complex(s) => s,
        }
    }
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

fn y() -> MultiPoly {
    MultiPoly::var(Var::Y)
}

/// `exp(sum_k args[k] t^k)` with `args[0]` ignored (taken as zero).
fn exp_poly_arg<C: Coefficient>(args: Vec<C>, order: usize) -> Result<TruncSeries<C>> {
    let mut a = args;
    if !a.is_empty() {
        a[0] = C::zero();
    }
    a.truncate(order + 1);
    TruncSeries::from_ordinary(a, order, Convention::Egf).exp()
}

/// Argument `x t + sum_{j<=r} u_j t^j` (or without `x t` when `with_x` is false).
fn real_arg(r: usize, with_x: bool) -> Vec<MultiPoly> {
    let mut a = vec![MultiPoly::zero(); r + 1];
    for j in 1..=r {
        a[j] = MultiPoly::var(Var::u(j));
    }
    if with_x {
        a[1] = &a[1] + x();
    }
    a
}

/// `exp(w t + sum u_j t^j)`, or the conjugate argument when `conjugate` is set.
fn g_kernel(r: usize, conjugate: bool, order: usize) -> Result<TruncSeries<CPoly>> {
    let mut a: Vec<CPoly> = real_arg(r, true).into_iter().map(CPoly::real).collect();
    let iy = if conjugate { -y() } else { y() };
    a[1] = CPoly::new(a[1].re.clone(), iy);
    exp_poly_arg(a, order)
}

fn lin(p: MultiPoly, order: usize) -> TruncSeries {
    TruncSeries::monomial(p, 1, order, Convention::Egf)
}

fn exp_xt(order: usize) -> Result<TruncSeries> {
    lin(x(), order).exp()
}

fn cos_sin_yt(order: usize) -> Result<(TruncSeries, TruncSeries)> {
    lin(y(), order).trig()
}

/// Builds the named generating function truncated at `order`.
pub fn build(family: &FamilyId, order: usize) -> Result<FamilySeries> {
    family.validate()?;
    use FamilyId::*;
    let real = |s: TruncSeries| Ok(FamilySeries::Real(s));
    match family {
        ApostolBernoulli { k, lambda } => {
            let kern = Kernel::bernoulli(lambda.clone()).power_series(*k, order)?;
            real(kern.mul(&exp_xt(order)?)?)
        }
        ApostolEuler { k, lambda } => {
            let kern = Kernel::euler(lambda.clone()).power_series(*k, order)?;
            real(kern.mul(&exp_xt(order)?)?)
        }
        CosC => real(exp_xt(order)?.mul(&cos_sin_yt(order)?.0)?),
        SinS => real(exp_xt(order)?.mul(&cos_sin_yt(order)?.1)?),
        ChebyshevT => {
            let den = TruncSeries::from_ordinary(vec![MultiPoly::one(), x().scale(&rat(-2)), MultiPoly::one()], order, Convention::Ogf);
            let num = TruncSeries::from_ordinary(vec![MultiPoly::one(), -x()], order, Convention::Ogf);
            real(num.mul(&den.invert()?)?)
        }
        ChebyshevU => {
            let den = TruncSeries::from_ordinary(vec![MultiPoly::one(), x().scale(&rat(-2)), MultiPoly::one()], order, Convention::Ogf);
            real(den.invert()?)
        }
        DicksonD { alpha } => {
            let num = TruncSeries::from_ordinary(vec![MultiPoly::from_int(2), -x()], order, Convention::Ogf);
            real(num.mul(&dickson_denominator_inverse(alpha, order)?)?)
        }
        DicksonE { alpha } => real(dickson_denominator_inverse(alpha, order)?),
        GouldHopper { j } => {
            let mut a = vec![MultiPoly::zero(); j + 1];
            a[1] = x();
            a[*j] = y();
            real(exp_poly_arg(a, order)?)
        }
        HermiteGen { r } => real(exp_poly_arg(real_arg(*r, false), order)?),
        GKernel { r } => Ok(FamilySeries::Complex(g_kernel(*r, false, order)?)),
        K1Kernel { r } => real(exp_poly_arg(real_arg(*r, true), order)?.mul(&cos_sin_yt(order)?.0)?),
        K2Kernel { r } => real(exp_poly_arg(real_arg(*r, true), order)?.mul(&cos_sin_yt(order)?.1)?),
        M1 { z, kernel, r } => {
            let k = kernel.power_series(*z, order)?.complexify();
            Ok(FamilySeries::Complex(k.mul(&g_kernel(*r, false, order)?)?))
        }
        M2 { z, kernel, r } => {
            let k = kernel.power_series(*z, order)?.complexify();
            let g = g_kernel(*r, false, order)?.add(&g_kernel(*r, true, order)?)?;
            Ok(FamilySeries::Complex(k.mul(&g)?))
        }
        M3 { z, kernel, r } => {
            let k = kernel.power_series(*z, order)?.complexify();
            let g = g_kernel(*r, false, order)?.sub(&g_kernel(*r, true, order)?)?;
            Ok(FamilySeries::Complex(k.mul(&g)?))
        }
        M4 { r } => real(exp_poly_arg(real_arg(*r, false), order)?.mul(&cos_sin_yt(order)?.0)?),
        M5 { r } => real(exp_poly_arg(real_arg(*r, false), order)?.mul(&cos_sin_yt(order)?.1)?),
        Bform { z, kernel, r } => {
            let m4 = build(&M4 { r: *r }, order)?.into_real()?;
            let k = kernel.power_series(*z, order)?;
            real(k.mul(&exp_xt(order)?)?.mul(&m4)?.scale_rational(&rat(2)))
        }
        B1form { z, kernel, r } => {
            let m5 = build(&M5 { r: *r }, order)?.into_real()?;
            let k = kernel.power_series(*z, order)?;
            real(k.mul(&exp_xt(order)?)?.mul(&m5)?.scale_rational(&rat(2)))
        }
        BC { z, a } | BS { z, a } | EC { z, a } | ES { z, a } => {
            let kernel = match family {
                BC { .. } | BS { .. } => Kernel::bernoulli(a.clone()),
                _ => Kernel::euler(a.clone()),
            };
            let (c, s) = cos_sin_yt(order)?;
            let trig = if matches!(family, BC { .. } | EC { .. }) { c } else { s };
            real(kernel.power_series(*z, order)?.mul(&exp_xt(order)?)?.mul(&trig)?)
        }
        Nw => {
            let w = CPoly::w();
            Ok(FamilySeries::Complex(exp_poly_arg(vec![CPoly::zero(), w], order)?))
        }
        R1 { z, kernel } => real(kernel.power_series(*z, order)?),
    }
}

fn dickson_denominator_inverse(alpha: &Rational, order: usize) -> Result<TruncSeries> {
    TruncSeries::from_ordinary(
        vec![MultiPoly::one(), -x(), MultiPoly::constant(alpha.clone())],
        order,
        Convention::Ogf,
    )
    .invert()
}

/// The variant first-kind Dickson generating function
/// `(1 - 2xt)/(1 - xt + alpha t^2)`. Kept only to pin its disagreement with
/// `D_n(x, 1) = 2 T_n(x/2)`.
pub fn dickson_d_printed(alpha: &Rational, order: usize) -> Result<TruncSeries> {
    let num = TruncSeries::from_ordinary(vec![MultiPoly::one(), x().scale(&rat(-2))], order, Convention::Ogf);
    num.mul(&dickson_denominator_inverse(alpha, order)?)
}

/// Pochhammer symbol `(q)_m`.
fn rising(q: &Rational, m: usize) -> Rational {
    (0..m).fold(Rational::one(), |acc, i| acc * (q + rat(i as i64)))
}

/// Truncated `pFq[uppers; lowers; arg_scale * t^arg_power]`, EGF-tagged.
pub fn pfq<C: Coefficient>(
    uppers: &[Rational],
    lowers: &[Rational],
    arg_scale: &C,
    arg_power: usize,
    order: usize,
) -> Result<TruncSeries<C>> {
    if let Some(b) = lowers.iter().find(|b| b.is_integer() && *b <= &Rational::zero()) {
        return Err(Error::domain(format!("lower parameter {b} is a non-positive integer")));
    }
    if uppers.len() > lowers.len() + 1 {
        return Err(Error::domain(format!(
            "pFq with p = {} > q + 1 = {}",
            uppers.len(),
            lowers.len() + 1
        )));
    }
    if arg_power == 0 {
        return Err(Error::domain("argument must carry a positive power of t"));
    }
    let mut coeffs = vec![C::zero(); order + 1];
    let mut arg_pow = C::one();
    let mut m = 0;
    while m * arg_power <= order {
        let num: Rational = uppers.iter().map(|a| rising(a, m)).product();
        let den: Rational = lowers.iter().map(|b| rising(b, m)).product();
        let c = num / den / Rational::from_integer(factorial(m));
        coeffs[m * arg_power] = arg_pow.scale(&c);
        arg_pow = arg_pow.mul(arg_scale)?;
        m += 1;
    }
    Ok(TruncSeries::from_ordinary(coeffs, order, Convention::Egf))
}
