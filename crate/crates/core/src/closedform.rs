//! Explicit summation and recursion formulas for each polynomial family.
//!
//! Nothing here multiplies generating functions: the only series-derived
//! inputs are the scalar kernel numbers `y6^(z)(n; a, b)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, rat, CPoly, MultiPoly, Rational, Value, ValueJson, Var, MAX_TUPLE};
use crate::genfun::Kernel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CsKind {
    C,
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChebyshevKind {
    T,
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DicksonKind {
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KPart {
    K1,
    K2,
    K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApostolKind {
    B,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParametricKind {
    BC,
    BS,
    EC,
    ES,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HKind {
    H,
    H1,
    H2,
}

/// Selects the cosine (`1`) or sine (`2`) member of the paired Appell sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrakKind {
    One,
    Two,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PKind {
    P1,
    P2,
    P3,
    P4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NumberKind {
    Bernoulli,
    Euler,
    Stirling2,
}

/// One evaluated family member, as listed by `polygen table`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyFamilyValue {
    pub family: String,
    pub n: usize,
    pub params: BTreeMap<String, String>,
    #[serde(serialize_with = "value_as_json")]
    pub value: Value,
}

fn value_as_json<S: serde::Serializer>(v: &Value, s: S) -> std::result::Result<S::Ok, S::Error> {
    ValueJson::from(v).serialize(s)
}

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn x() -> MultiPoly {
    MultiPoly::var(Var::X)
}

fn y() -> MultiPoly {
    MultiPoly::var(Var::Y)
}

fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

fn check_r(r: usize) -> Result<()> {
    if (1..=MAX_TUPLE).contains(&r) {
        Ok(())
    } else {
        Err(Error::range(format!("tuple length r = {r} outside 1..={MAX_TUPLE}")))
    }
}

/// `C_n(x, y)` or `S_n(x, y)`, the real and imaginary parts of `(x + iy)^n`.
pub fn cs_poly(kind: CsKind, n: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    let odd = matches!(kind, CsKind::S) as usize;
    let mut k = 0;
    while 2 * k + odd <= n {
        let e = 2 * k + odd;
        let c = sign(k) * int(binomial(n, e));
        out = out + MultiPoly::monomial(c, &[(Var::X, (n - e) as u16), (Var::Y, e as u16)]);
        k += 1;
    }
    out
}

/// `sum_k binom(n, 2k + odd) (x^2 - 1)^k x^(n - 2k - odd)`.
fn chebyshev_sum(n: usize, odd: usize) -> MultiPoly {
    let x2m1 = x().pow(2) - MultiPoly::one();
    let mut out = MultiPoly::zero();
    let mut k = 0;
    while 2 * k + odd <= n {
        let term = x2m1.pow(k as u32) * x().pow((n - 2 * k - odd) as u32);
        out = out + term.scale(&int(binomial(n, 2 * k + odd)));
        k += 1;
    }
    out
}

/// `T_n(x)` for kind `T`; for kind `U` the polynomial `U_(n-1)(x)`.
pub fn chebyshev(kind: ChebyshevKind, n: usize) -> Result<MultiPoly> {
    match kind {
        ChebyshevKind::T => Ok(chebyshev_sum(n, 0)),
        ChebyshevKind::U if n == 0 => Err(Error::range("U_(n-1) needs n >= 1")),
        ChebyshevKind::U => Ok(chebyshev_sum(n, 1)),
    }
}

/// `U_m(x)` for `m >= -1`, with `U_(-1) = 0`.
pub fn chebyshev_u(m: i64) -> MultiPoly {
    if m < 0 {
        MultiPoly::zero()
    } else {
        chebyshev_sum(m as usize + 1, 1)
    }
}

/// Dickson polynomials by `P_n = x P_(n-1) - alpha P_(n-2)`.
pub fn dickson(kind: DicksonKind, n: usize, alpha: &Rational) -> MultiPoly {
    let p0 = match kind {
        DicksonKind::D => MultiPoly::from_int(2),
        DicksonKind::E => MultiPoly::one(),
    };
    if n == 0 {
        return p0;
    }
    let (mut prev, mut cur) = (p0, x());
    for _ in 1..n {
        let next = x() * &cur - prev.scale(alpha);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `H_n^(j)(x, y) = n! sum_(s <= n/j) x^(n-js) y^s / ((n-js)! s!)`.
pub fn gould_hopper(n: usize, j: usize) -> Result<MultiPoly> {
    if j < 2 {
        return Err(Error::range(format!("Gould-Hopper index j = {j} must be at least 2")));
    }
    let nf = int(factorial(n));
    let mut out = MultiPoly::zero();
    for s in 0..=n / j {
        let c = &nf / int(factorial(n - j * s) * factorial(s));
        out = out + MultiPoly::monomial(c, &[(Var::X, (n - j * s) as u16), (Var::Y, s as u16)]);
    }
    Ok(out)
}

/// The Gould-Hopper sum as it appears in print: no `n!` prefactor and the
/// summation bound `n/2` regardless of `j`. Disagrees with the generating
/// function; kept for the discrepancy check.
pub fn gould_hopper_printed(n: usize, j: usize) -> Result<MultiPoly> {
    if j < 2 {
        return Err(Error::range(format!("Gould-Hopper index j = {j} must be at least 2")));
    }
    let mut out = MultiPoly::zero();
    for s in 0..=n / 2 {
        if j * s > n {
            break;
        }
        let c = int(factorial(n - j * s) * factorial(s)).recip();
        out = out + MultiPoly::monomial(c, &[(Var::X, (n - j * s) as u16), (Var::Y, s as u16)]);
    }
    Ok(out)
}

/// `H_0 .. H_nmax` of `exp(sum_j v_j t^j)` for the tuple `v = (v_1, .., v_r)`,
/// by peeling off one tuple entry at a time.
pub fn hermite_table(n_max: usize, tuple: &[MultiPoly]) -> Vec<MultiPoly> {
    let Some((first, rest)) = tuple.split_first() else {
        let mut t = vec![MultiPoly::zero(); n_max + 1];
        t[0] = MultiPoly::one();
        return t;
    };
    let mut table: Vec<MultiPoly> = (0..=n_max).map(|m| first.pow(m as u32)).collect();
    for (idx, v) in rest.iter().enumerate() {
        let level = idx + 2;
        let powers: Vec<MultiPoly> = (0..=n_max / level).map(|j| v.pow(j as u32)).collect();
        table = (0..=n_max)
            .map(|m| {
                let mf = int(factorial(m));
                (0..=m / level)
                    .map(|j| {
                        let c = &mf / int(factorial(j) * factorial(m - level * j));
                        (&powers[j] * &table[m - level * j]).scale(&c)
                    })
                    .sum()
            })
            .collect();
    }
    table
}

/// `H_n` for an arbitrary tuple of polynomials.
pub fn hermite_gen_with(n: usize, tuple: &[MultiPoly]) -> MultiPoly {
    hermite_table(n, tuple).pop().expect("table is non-empty")
}

/// `(u1, .., ur)`.
pub fn u_tuple(r: usize) -> Vec<MultiPoly> {
    (1..=r).map(|j| MultiPoly::var(Var::u(j))).collect()
}

/// `(x + u1, u2, .., ur)`.
pub fn shifted_tuple(r: usize) -> Vec<MultiPoly> {
    let mut t = u_tuple(r);
    t[0] = &t[0] + x();
    t
}

/// `H_n(u1, .., ur)`, the coefficients of `exp(sum_j u_j t^j)`.
pub fn hermite_gen(n: usize, r: usize) -> Result<MultiPoly> {
    check_r(r)?;
    Ok(hermite_gen_with(n, &u_tuple(r)))
}

/// `sum_j (-1)^j binom(n, 2j + odd) y^(2j + odd) H_(n - 2j - odd)` over a precomputed table.
fn alternating_y_sum(n: usize, odd: usize, table: &[MultiPoly]) -> MultiPoly {
    let mut out = MultiPoly::zero();
    let mut j = 0;
    while 2 * j + odd <= n {
        let e = 2 * j + odd;
        let c = sign(j) * int(binomial(n, e));
        out = out + (y().pow(e as u32) * &table[n - e]).scale(&c);
        j += 1;
    }
    out
}

/// The cosine part `k1`, sine part `k2`, or the complex `K = k1 + i k2` of
/// `exp((x + iy) t + sum u_j t^j)`, expanded through the shifted tuple.
pub fn kpoly(part: KPart, n: usize, r: usize) -> Result<Value> {
    check_r(r)?;
    let table = hermite_table(n, &shifted_tuple(r));
    let k1 = || alternating_y_sum(n, 0, &table);
    let k2 = || alternating_y_sum(n, 1, &table);
    Ok(match part {
        KPart::K1 => Value::Real(k1()),
        KPart::K2 => Value::Real(k2()),
        KPart::K => Value::Complex(CPoly::new(k1(), k2())),
    })
}

/// `K(n; w, u, r)` as a complex polynomial.
pub fn kpoly_complex(n: usize, r: usize) -> Result<CPoly> {
    Ok(kpoly(KPart::K, n, r)?.into_complex())
}

/// `(x + iy)^n`, or `(x - iy)^n` when `conjugate` is set.
pub fn npoly(n: usize, conjugate: bool) -> CPoly {
    let s = cs_poly(CsKind::S, n);
    CPoly::new(cs_poly(CsKind::C, n), if conjugate { -s } else { s })
}

/// `sum_k binom(n, k) beta_k x^(n-k)`.
fn appell(numbers: &[Rational], n: usize) -> MultiPoly {
    (0..=n)
        .map(|k| MultiPoly::monomial(int(binomial(n, k)) * &numbers[k], &[(Var::X, (n - k) as u16)]))
        .sum()
}

/// Apostol-Bernoulli `B_n^(k)(x; lambda)` or Apostol-Euler `E_n^(k)(x; lambda)`.
pub fn apostol(kind: ApostolKind, n: usize, k: i64, lambda: &Rational) -> Result<MultiPoly> {
    let kernel = match kind {
        ApostolKind::B => Kernel::bernoulli(lambda.clone()),
        ApostolKind::E => Kernel::euler(lambda.clone()),
    };
    Ok(appell(&kernel.numbers(k, n)?, n))
}

/// `y6^(z)(n; x; a, b)`, the Appell polynomial of the kernel numbers.
pub fn kernel_poly(kernel: &Kernel, z: i64, n: usize) -> Result<MultiPoly> {
    Ok(appell(&kernel.numbers(z, n)?, n))
}

/// The parametric Apostol families, e.g. the coefficients of
/// `(t/(a e^t - 1))^z e^(xt) cos(yt)` for `BC`.
pub fn parametric_apostol(kind: ParametricKind, n: usize, z: i64, a: &Rational) -> Result<MultiPoly> {
    use ParametricKind::*;
    let kernel = match kind {
        BC | BS => Kernel::bernoulli(a.clone()),
        EC | ES => Kernel::euler(a.clone()),
    };
    let cs = match kind {
        BC | EC => CsKind::C,
        BS | ES => CsKind::S,
    };
    let numbers = kernel.numbers(z, n)?;
    Ok((0..=n)
        .map(|k| cs_poly(cs, n - k).scale(&(int(binomial(n, k)) * &numbers[k])))
        .sum())
}

/// `C_n(u, y; r)` or `S_n(u, y; r)`: coefficients of `exp(sum u_j t^j) cos(yt)` (or `sin`).
pub fn cs_r(kind: CsKind, n: usize, r: usize) -> Result<MultiPoly> {
    check_r(r)?;
    let table = hermite_table(n, &u_tuple(r));
    let odd = matches!(kind, CsKind::S) as usize;
    Ok(alternating_y_sum(n, odd, &table))
}

/// Convolutions of the kernel numbers with `K(j; w)` and `K(j; conj w)`.
pub fn hpoly(kind: HKind, n: usize, z: i64, r: usize, kernel: &Kernel) -> Result<CPoly> {
    Ok(hpoly_upto(kind, n, z, r, kernel)?.pop().expect("non-empty"))
}

/// [`hpoly`] for every index `0..=n_max`, sharing one table of `K(j; w)`.
pub fn hpoly_upto(kind: HKind, n_max: usize, z: i64, r: usize, kernel: &Kernel) -> Result<Vec<CPoly>> {
    check_r(r)?;
    let numbers = kernel.numbers(z, n_max)?;
    let table = hermite_table(n_max, &shifted_tuple(r));
    let factors: Vec<CPoly> = (0..=n_max)
        .map(|j| {
            let k = CPoly::new(alternating_y_sum(j, 0, &table), alternating_y_sum(j, 1, &table));
            let kbar = k.map(|p| p.negate_var(Var::Y));
            match kind {
                HKind::H => k,
                HKind::H1 => k + kbar,
                HKind::H2 => k - kbar,
            }
        })
        .collect();
    Ok((0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|j| factors[j].scale(&(int(binomial(n, j)) * &numbers[n - j])))
                .sum()
        })
        .collect())
}

/// `2 sum_j binom(n, j) y6(n-j; x, z; a, b) C_j(u, y; r)`, or with `S_j` for kind `Two`.
pub fn frak_h(kind: FrakKind, n: usize, z: i64, r: usize, kernel: &Kernel) -> Result<MultiPoly> {
    Ok(frak_h_upto(kind, n, z, r, kernel)?.pop().expect("non-empty"))
}

/// [`frak_h`] for every index `0..=n_max`.
pub fn frak_h_upto(kind: FrakKind, n_max: usize, z: i64, r: usize, kernel: &Kernel) -> Result<Vec<MultiPoly>> {
    check_r(r)?;
    let numbers = kernel.numbers(z, n_max)?;
    let table = hermite_table(n_max, &u_tuple(r));
    let odd = matches!(kind, FrakKind::Two) as usize;
    let cs: Vec<MultiPoly> = (0..=n_max).map(|j| alternating_y_sum(j, odd, &table)).collect();
    let appells: Vec<MultiPoly> = (0..=n_max).map(|m| appell(&numbers, m)).collect();
    Ok((0..=n_max)
        .map(|n| {
            let sum: MultiPoly = (0..=n)
                .map(|j| (&appells[n - j] * &cs[j]).scale(&int(binomial(n, j))))
                .sum();
            sum.scale(&rat(2))
        })
        .collect())
}

/// `P1 = sum_j binom(n, j) H_j(u, r) C_(n-j)(x, y)`, `P2` likewise with `S`;
/// `P3` is `P1` at `y = s` in the reduced ring and `s P4 = P2` at `y = s`.
pub fn ppoly(kind: PKind, n: usize, r: usize) -> Result<MultiPoly> {
    check_r(r)?;
    let table = hermite_table(n, &u_tuple(r));
    let sum = |cs: CsKind| -> MultiPoly {
        (0..=n)
            .map(|j| (&table[j] * cs_poly(cs, n - j)).scale(&int(binomial(n, j))))
            .sum()
    };
    let at_s = |p: MultiPoly| -> MultiPoly {
        p.substitute(Var::Y, &MultiPoly::var(Var::S))
            .expect("unreduced operands")
            .reduce_s()
    };
    match kind {
        PKind::P1 => Ok(sum(CsKind::C)),
        PKind::P2 => Ok(sum(CsKind::S)),
        PKind::P3 => Ok(at_s(sum(CsKind::C))),
        PKind::P4 => {
            if n == 0 {
                return Err(Error::range("P4 needs n >= 1"));
            }
            at_s(sum(CsKind::S))
                .strip_s()
                .ok_or_else(|| Error::Internal(format!("P2({n}) at y = s has no factor s")))
        }
    }
}

/// Stirling numbers of the second kind `S2(n, k)`.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < m { &row[j] * BigInt::from(j) } else { BigInt::zero() };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// Bernoulli numbers `B_n` (with `B_1 = -1/2`), Euler numbers `E_n(0)` of
/// `2/(e^t + 1)`, or `S2(n, k)`. `k` is ignored except for Stirling numbers.
pub fn number_seq(kind: NumberKind, n: usize, k: usize) -> Result<Rational> {
    match kind {
        NumberKind::Bernoulli => Ok(Kernel::bernoulli(rat(1)).numbers(1, n)?.swap_remove(n)),
        NumberKind::Euler => Ok(Kernel::euler(rat(1)).numbers(1, n)?.swap_remove(n)),
        NumberKind::Stirling2 => {
            if k > n {
                return Err(Error::range(format!("S2(n, k) needs 0 <= k <= n, got n = {n}, k = {k}")));
            }
            Ok(int(stirling2(n, k)))
        }
    }
}
