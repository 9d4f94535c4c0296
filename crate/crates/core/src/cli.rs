//! Command-line front end: `table`, `series`, `check` and `expand`.
//!
//! Families are addressed by name plus parameter flags, for example
//! `--family apostol-bernoulli --k 2 --lambda 3/2`. Exit codes: 0 success,
//! 1 failed check or internal inconsistency, 2 usage/domain/range error,
//! 3 mathematical singularity.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::closedform::{
    apostol, chebyshev_u, cs_poly, cs_r, dickson, frak_h_upto, gould_hopper, hermite_gen, hpoly_upto, kpoly, npoly,
    number_seq, parametric_apostol, ppoly, ApostolKind, CsKind, DicksonKind, FrakKind, HKind, KPart, NumberKind,
    ParametricKind, PKind, PolyFamilyValue,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, rat, CPolyJson, MultiPoly, PolyJson, Rational, Value, ValueJson};
use crate::genfun::{build, FKind, FamilyId, FamilySeries, Kernel};
use crate::identities::{run_check, run_suite, Bounds, CheckId, CheckReport, Suite};
use crate::series::SeriesJson;

pub const DEFAULT_ORDER: usize = 16;
pub const ORDER_ENV: &str = "POLYGEN_ORDER";

#[derive(Parser, Debug)]
#[command(name = "polygen", version, about = "Exact polynomial families and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List family members for a range of n.
    Table {
        #[command(flatten)]
        family: FamilyArgs,
        /// Index range `a..b` (inclusive) or a single index.
        #[arg(long, value_parser = parse_n_range)]
        n: RangeInclusive<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Expand a generating function to a truncation order.
    Series {
        #[command(flatten)]
        family: FamilyArgs,
        /// Truncation order; defaults to $POLYGEN_ORDER or 16.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity checks.
    Check {
        #[arg(long, conflicts_with = "id", value_parser = parse_suite)]
        suite: Option<Suite>,
        #[arg(long, value_parser = parse_check_id)]
        id: Option<CheckId>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        r_max: Option<usize>,
        #[arg(long)]
        z_max: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print one family member in canonical form.
    Expand {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Bernoulli,
    Euler,
}

/// Family selector and every parameter flag a family may take.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<i64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub lambda: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub alpha: Option<Rational>,
    #[arg(long)]
    pub j: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<i64>,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelKind>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub a: Option<Rational>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
    pub b: Option<Rational>,
}

fn parse_rat(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_check_id(s: &str) -> std::result::Result<CheckId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single index.
pub fn parse_n_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid index `{t}` in range `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(s)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}

/// Every CLI-addressable family with its resolved parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    CosC,
    SinS,
    ChebyshevT,
    ChebyshevU,
    DicksonD { alpha: Rational },
    DicksonE { alpha: Rational },
    GouldHopper { j: usize },
    HermiteGen { r: usize },
    K1 { r: usize },
    K2 { r: usize },
    K { r: usize },
    Nw,
    NwConj,
    ApostolBernoulli { k: i64, lambda: Rational },
    ApostolEuler { k: i64, lambda: Rational },
    Parametric { kind: ParametricKind, z: i64, a: Rational },
    CsR { kind: CsKind, r: usize },
    H { kind: HKind, z: i64, kernel: Kernel, r: usize },
    Frak { kind: FrakKind, z: i64, kernel: Kernel, r: usize },
    R1 { z: i64, kernel: Kernel },
    P { kind: PKind, r: usize },
    Number { kind: NumberKind, k: usize },
}

const FAMILY_NAMES: &[(&str, &[&str])] = &[
    ("cos-c", &["c"]),
    ("sin-s", &["s"]),
    ("chebyshev-t", &["t"]),
    ("chebyshev-u", &["u"]),
    ("dickson-d", &[]),
    ("dickson-e", &[]),
    ("gould-hopper", &[]),
    ("hermite-gen", &[]),
    ("k1-kernel", &["k1"]),
    ("k2-kernel", &["k2"]),
    ("g-kernel", &["k"]),
    ("nw", &["np", "n"]),
    ("nw-conj", &["np-conj"]),
    ("apostol-bernoulli", &[]),
    ("apostol-euler", &[]),
    ("bc", &[]),
    ("bs", &[]),
    ("ec", &[]),
    ("es", &[]),
    ("m4", &["cs-r-c"]),
    ("m5", &["cs-r-s"]),
    ("m1", &["h"]),
    ("m2", &["h1"]),
    ("m3", &["h2"]),
    ("bform", &["b-form", "frak-h1"]),
    ("b1form", &["b1-form", "frak-h2"]),
    ("r1", &[]),
    ("p1", &[]),
    ("p2", &[]),
    ("p3", &[]),
    ("p4", &[]),
    ("bernoulli", &[]),
    ("euler", &[]),
    ("stirling2", &[]),
];

/// Canonical family names accepted by `--family` (aliases omitted).
pub fn family_names() -> impl Iterator<Item = &'static str> {
    FAMILY_NAMES.iter().map(|(n, _)| *n)
}

fn canonical_name(name: &str) -> Option<&'static str> {
    let lower = name.to_ascii_lowercase().replace('_', "-");
    FAMILY_NAMES
        .iter()
        .find(|(n, aliases)| *n == lower || aliases.contains(&lower.as_str()))
        .map(|(n, _)| *n)
}

impl FamilyArgs {
    pub fn named(family: &str) -> Self {
        FamilyArgs { family: family.to_string(), ..Default::default() }
    }

    fn given(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags: [(&str, bool); 9] = [
            ("k", self.k.is_some()),
            ("lambda", self.lambda.is_some()),
            ("alpha", self.alpha.is_some()),
            ("j", self.j.is_some()),
            ("r", self.r.is_some()),
            ("z", self.z.is_some()),
            ("kernel", self.kernel.is_some()),
            ("a", self.a.is_some()),
            ("b", self.b.is_some()),
        ];
        for (name, set) in flags {
            if set {
                out.push(name);
            }
        }
        out
    }

    fn kernel(&self) -> Kernel {
        let kind = match self.kernel.unwrap_or(KernelKind::Bernoulli) {
            KernelKind::Bernoulli => FKind::BernoulliKernel,
            KernelKind::Euler => FKind::EulerKernel,
        };
        Kernel::new(kind, self.a.clone().unwrap_or_else(|| rat(1)), self.b.clone().unwrap_or_else(|| rat(0)))
    }

    /// Resolves the family name and checks that only applicable flags were
    /// supplied. Missing parameters take their defaults: `k = 1`,
    /// `lambda = alpha = a = 1`, `b = 0`, `j = 2`, `r = 1`, `z = 1`,
    /// Bernoulli kernel.
    pub fn resolve(&self) -> Result<Family> {
        let name = canonical_name(&self.family).ok_or_else(|| {
            Error::Usage(format!(
                "unknown family `{}`; known families: {}",
                self.family,
                family_names().collect::<Vec<_>>().join(", ")
            ))
        })?;
        let allowed: &[&str] = match name {
            "dickson-d" | "dickson-e" => &["alpha"],
            "gould-hopper" => &["j"],
            "hermite-gen" | "k1-kernel" | "k2-kernel" | "g-kernel" | "m4" | "m5" | "p1" | "p2" | "p3" | "p4" => &["r"],
            "apostol-bernoulli" | "apostol-euler" => &["k", "lambda"],
            "bc" | "bs" | "ec" | "es" => &["z", "a"],
            "m1" | "m2" | "m3" | "bform" | "b1form" => &["z", "kernel", "a", "b", "r"],
            "r1" => &["z", "kernel", "a", "b"],
            "bernoulli" | "euler" | "stirling2" => &["k"],
            _ => &[],
        };
        if let Some(bad) = self.given().into_iter().find(|g| !allowed.contains(g)) {
            return Err(Error::Arity(format!(
                "family `{name}` does not take --{bad} (accepted: {})",
                if allowed.is_empty() { "none".to_string() } else { allowed.iter().map(|a| format!("--{a}")).collect::<Vec<_>>().join(" ") }
            )));
        }
        let one = || rat(1);
        let r = self.r.unwrap_or(1);
        let z = self.z.unwrap_or(1);
        let a = self.a.clone().unwrap_or_else(one);
        let fam = match name {
            "cos-c" => Family::CosC,
            "sin-s" => Family::SinS,
            "chebyshev-t" => Family::ChebyshevT,
            "chebyshev-u" => Family::ChebyshevU,
            "dickson-d" => Family::DicksonD { alpha: self.alpha.clone().unwrap_or_else(one) },
            "dickson-e" => Family::DicksonE { alpha: self.alpha.clone().unwrap_or_else(one) },
            "gould-hopper" => Family::GouldHopper { j: self.j.unwrap_or(2) },
            "hermite-gen" => Family::HermiteGen { r },
            "k1-kernel" => Family::K1 { r },
            "k2-kernel" => Family::K2 { r },
            "g-kernel" => Family::K { r },
            "nw" => Family::Nw,
            "nw-conj" => Family::NwConj,
            "apostol-bernoulli" => Family::ApostolBernoulli {
                k: self.k.unwrap_or(1),
                lambda: self.lambda.clone().unwrap_or_else(one),
            },
            "apostol-euler" => Family::ApostolEuler {
                k: self.k.unwrap_or(1),
                lambda: self.lambda.clone().unwrap_or_else(one),
            },
            "bc" => Family::Parametric { kind: ParametricKind::BC, z, a },
            "bs" => Family::Parametric { kind: ParametricKind::BS, z, a },
            "ec" => Family::Parametric { kind: ParametricKind::EC, z, a },
            "es" => Family::Parametric { kind: ParametricKind::ES, z, a },
            "m4" => Family::CsR { kind: CsKind::C, r },
            "m5" => Family::CsR { kind: CsKind::S, r },
            "m1" => Family::H { kind: HKind::H, z, kernel: self.kernel(), r },
            "m2" => Family::H { kind: HKind::H1, z, kernel: self.kernel(), r },
            "m3" => Family::H { kind: HKind::H2, z, kernel: self.kernel(), r },
            "bform" => Family::Frak { kind: FrakKind::One, z, kernel: self.kernel(), r },
            "b1form" => Family::Frak { kind: FrakKind::Two, z, kernel: self.kernel(), r },
            "r1" => Family::R1 { z, kernel: self.kernel() },
            "p1" => Family::P { kind: PKind::P1, r },
            "p2" => Family::P { kind: PKind::P2, r },
            "p3" => Family::P { kind: PKind::P3, r },
            "p4" => Family::P { kind: PKind::P4, r },
            "bernoulli" | "euler" | "stirling2" => {
                let kind = match name {
                    "bernoulli" => NumberKind::Bernoulli,
                    "euler" => NumberKind::Euler,
                    _ => NumberKind::Stirling2,
                };
                let k = self.k.unwrap_or(if kind == NumberKind::Stirling2 { 1 } else { 0 });
                let k = usize::try_from(k).map_err(|_| Error::Domain(format!("--k must be non-negative, got {k}")))?;
                Family::Number { kind, k }
            }
            _ => return Err(Error::Internal(format!("family `{name}` has no resolver"))),
        };
        fam.validate()?;
        Ok(fam)
    }
}

impl Family {
    /// Canonical CLI name.
    pub fn name(&self) -> &'static str {
        match self {
            Family::CosC => "cos-c",
            Family::SinS => "sin-s",
            Family::ChebyshevT => "chebyshev-t",
            Family::ChebyshevU => "chebyshev-u",
            Family::DicksonD { .. } => "dickson-d",
            Family::DicksonE { .. } => "dickson-e",
            Family::GouldHopper { .. } => "gould-hopper",
            Family::HermiteGen { .. } => "hermite-gen",
            Family::K1 { .. } => "k1-kernel",
            Family::K2 { .. } => "k2-kernel",
            Family::K { .. } => "g-kernel",
            Family::Nw => "nw",
            Family::NwConj => "nw-conj",
            Family::ApostolBernoulli { .. } => "apostol-bernoulli",
            Family::ApostolEuler { .. } => "apostol-euler",
            Family::Parametric { kind, .. } => match kind {
                ParametricKind::BC => "bc",
                ParametricKind::BS => "bs",
                ParametricKind::EC => "ec",
                ParametricKind::ES => "es",
            },
            Family::CsR { kind: CsKind::C, .. } => "m4",
            Family::CsR { kind: CsKind::S, .. } => "m5",
            Family::H { kind, .. } => match kind {
                HKind::H => "m1",
                HKind::H1 => "m2",
                HKind::H2 => "m3",
            },
            Family::Frak { kind: FrakKind::One, .. } => "bform",
            Family::Frak { kind: FrakKind::Two, .. } => "b1form",
            Family::R1 { .. } => "r1",
            Family::P { kind, .. } => match kind {
                PKind::P1 => "p1",
                PKind::P2 => "p2",
                PKind::P3 => "p3",
                PKind::P4 => "p4",
            },
            Family::Number { kind, .. } => match kind {
                NumberKind::Bernoulli => "bernoulli",
                NumberKind::Euler => "euler",
                NumberKind::Stirling2 => "stirling2",
            },
        }
    }

    /// Parameter assignments in display form, keyed by flag name.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        let kernel_params = |put: &mut dyn FnMut(&str, String), kernel: &Kernel| {
            let kind = match kernel.kind {
                FKind::EulerKernel => "euler",
                _ => "bernoulli",
            };
            put("kernel", kind.to_string());
            put("a", kernel.a.to_string());
            put("b", kernel.b.to_string());
        };
        match self {
            Family::DicksonD { alpha } | Family::DicksonE { alpha } => put("alpha", alpha.to_string()),
            Family::GouldHopper { j } => put("j", j.to_string()),
            Family::HermiteGen { r }
            | Family::K1 { r }
            | Family::K2 { r }
            | Family::K { r }
            | Family::CsR { r, .. }
            | Family::P { r, .. } => put("r", r.to_string()),
            Family::ApostolBernoulli { k, lambda } | Family::ApostolEuler { k, lambda } => {
                put("k", k.to_string());
                put("lambda", lambda.to_string());
            }
            Family::Parametric { z, a, .. } => {
                put("z", z.to_string());
                put("a", a.to_string());
            }
            Family::H { z, kernel, r, .. } | Family::Frak { z, kernel, r, .. } => {
                put("z", z.to_string());
                put("r", r.to_string());
                kernel_params(&mut put, kernel);
            }
            Family::R1 { z, kernel } => {
                put("z", z.to_string());
                kernel_params(&mut put, kernel);
            }
            Family::Number { k, .. } => put("k", k.to_string()),
            Family::CosC | Family::SinS | Family::ChebyshevT | Family::ChebyshevU | Family::Nw | Family::NwConj => {}
        }
        m
    }

    fn validate(&self) -> Result<()> {
        match self {
            Family::GouldHopper { j } if *j < 2 => {
                Err(Error::Arity(format!("Gould-Hopper index j = {j} must be at least 2")))
            }
            _ => match self.family_id() {
                Some(id) => id.validate(),
                None => match self {
                    Family::P { r, .. } => ppoly(PKind::P1, 0, *r).map(|_| ()),
                    _ => Ok(()),
                },
            },
        }
    }

    /// The generating function behind this family, when it has one.
    pub fn family_id(&self) -> Option<FamilyId> {
        Some(match self.clone() {
            Family::CosC => FamilyId::CosC,
            Family::SinS => FamilyId::SinS,
            Family::ChebyshevT => FamilyId::ChebyshevT,
            Family::ChebyshevU => FamilyId::ChebyshevU,
            Family::DicksonD { alpha } => FamilyId::DicksonD { alpha },
            Family::DicksonE { alpha } => FamilyId::DicksonE { alpha },
            Family::GouldHopper { j } => FamilyId::GouldHopper { j },
            Family::HermiteGen { r } => FamilyId::HermiteGen { r },
            Family::K1 { r } => FamilyId::K1Kernel { r },
            Family::K2 { r } => FamilyId::K2Kernel { r },
            Family::K { r } => FamilyId::GKernel { r },
            Family::Nw | Family::NwConj => FamilyId::Nw,
            Family::ApostolBernoulli { k, lambda } => FamilyId::ApostolBernoulli { k, lambda },
            Family::ApostolEuler { k, lambda } => FamilyId::ApostolEuler { k, lambda },
            Family::Parametric { kind, z, a } => match kind {
                ParametricKind::BC => FamilyId::BC { z, a },
                ParametricKind::BS => FamilyId::BS { z, a },
                ParametricKind::EC => FamilyId::EC { z, a },
                ParametricKind::ES => FamilyId::ES { z, a },
            },
            Family::CsR { kind: CsKind::C, r } => FamilyId::M4 { r },
            Family::CsR { kind: CsKind::S, r } => FamilyId::M5 { r },
            Family::H { kind, z, kernel, r } => match kind {
                HKind::H => FamilyId::M1 { z, kernel, r },
                HKind::H1 => FamilyId::M2 { z, kernel, r },
                HKind::H2 => FamilyId::M3 { z, kernel, r },
            },
            Family::Frak { kind: FrakKind::One, z, kernel, r } => FamilyId::Bform { z, kernel, r },
            Family::Frak { kind: FrakKind::Two, z, kernel, r } => FamilyId::B1form { z, kernel, r },
            Family::R1 { z, kernel } => FamilyId::R1 { z, kernel },
            Family::P { .. } | Family::Number { .. } => return None,
        })
    }

    /// Members `n` in `range`, from the explicit formulas.
    pub fn values(&self, range: RangeInclusive<usize>) -> Result<Vec<Value>> {
        let lo = *range.start();
        let hi = *range.end();
        // Families evaluated through shared tables are computed once up to `hi`.
        let table: Option<Vec<Value>> = match self {
            Family::H { kind, z, kernel, r } => {
                Some(hpoly_upto(*kind, hi, *z, *r, kernel)?.into_iter().map(Value::from).collect())
            }
            Family::Frak { kind, z, kernel, r } => {
                Some(frak_h_upto(*kind, hi, *z, *r, kernel)?.into_iter().map(Value::from).collect())
            }
            Family::R1 { z, kernel } => Some(
                kernel
                    .numbers(*z, hi)?
                    .into_iter()
                    .map(|c| Value::from(MultiPoly::constant(c)))
                    .collect(),
            ),
            _ => None,
        };
        if let Some(t) = table {
            return Ok(t.into_iter().skip(lo).collect());
        }
        range.map(|n| self.value(n)).collect()
    }

    /// Member `n`, from the explicit formula.
    pub fn value(&self, n: usize) -> Result<Value> {
        Ok(match self {
            Family::CosC => cs_poly(CsKind::C, n).into(),
            Family::SinS => cs_poly(CsKind::S, n).into(),
            Family::ChebyshevT => crate::closedform::chebyshev(crate::closedform::ChebyshevKind::T, n)?.into(),
            Family::ChebyshevU => chebyshev_u(n as i64).into(),
            Family::DicksonD { alpha } => dickson(DicksonKind::D, n, alpha).into(),
            Family::DicksonE { alpha } => dickson(DicksonKind::E, n, alpha).into(),
            Family::GouldHopper { j } => gould_hopper(n, *j)?.into(),
            Family::HermiteGen { r } => hermite_gen(n, *r)?.into(),
            Family::K1 { r } => kpoly(KPart::K1, n, *r)?,
            Family::K2 { r } => kpoly(KPart::K2, n, *r)?,
            Family::K { r } => kpoly(KPart::K, n, *r)?,
            Family::Nw => npoly(n, false).into(),
            Family::NwConj => npoly(n, true).into(),
            Family::ApostolBernoulli { k, lambda } => apostol(ApostolKind::B, n, *k, lambda)?.into(),
            Family::ApostolEuler { k, lambda } => apostol(ApostolKind::E, n, *k, lambda)?.into(),
            Family::Parametric { kind, z, a } => parametric_apostol(*kind, n, *z, a)?.into(),
            Family::CsR { kind, r } => cs_r(*kind, n, *r)?.into(),
            Family::P { kind, r } => ppoly(*kind, n, *r)?.into(),
            Family::Number { kind, k } => MultiPoly::constant(number_seq(*kind, n, *k)?).into(),
            Family::H { .. } | Family::Frak { .. } | Family::R1 { .. } => {
                return self.values(n..=n)?.pop().ok_or_else(|| Error::Internal("empty table".into()));
            }
        })
    }

    /// The generating function truncated at `order`.
    pub fn series(&self, order: usize) -> Result<FamilySeries> {
        let id = self.family_id().ok_or_else(|| {
            Error::Usage(format!("family `{}` is defined by an explicit formula only; use `table`", self.name()))
        })?;
        let s = build(&id, order)?;
        Ok(match (self, s) {
            (Family::NwConj, FamilySeries::Complex(c)) => FamilySeries::Complex(c.map_coeffs(|p| p.conj())),
            (_, s) => s,
        })
    }

    pub fn member(&self, n: usize, value: Value) -> PolyFamilyValue {
        PolyFamilyValue { family: self.name().to_string(), n, params: self.params(), value }
    }
}

/// Series output: the interchange JSON for real or complex coefficients.
#[derive(Serialize)]
#[serde(untagged)]
pub enum SeriesOut {
    Real(SeriesJson<PolyJson>),
    Complex(SeriesJson<CPolyJson>),
}

impl From<&FamilySeries> for SeriesOut {
    fn from(s: &FamilySeries) -> Self {
        match s {
            FamilySeries::Real(r) => SeriesOut::Real(r.into()),
            FamilySeries::Complex(c) => SeriesOut::Complex(c.into()),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Internal(format!("JSON encoding failed: {e}")))
}

fn render_members(rows: &[PolyFamilyValue], format: Format) -> Result<String> {
    let keys: Vec<String> = rows.first().map(|r| r.params.keys().cloned().collect()).unwrap_or_default();
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&json(&rows)?);
            out.push('\n');
        }
        Format::Text | Format::Csv => {
            let sep = if format == Format::Csv { "," } else { "\t" };
            let field = |s: &str| if format == Format::Csv { csv_field(s) } else { s.to_string() };
            let mut header = vec!["n".to_string()];
            header.extend(keys.iter().cloned());
            header.push("value".to_string());
            out.push_str(&header.join(sep));
            out.push('\n');
            for row in rows {
                let mut cells = vec![row.n.to_string()];
                cells.extend(keys.iter().map(|k| field(&row.params[k])));
                cells.push(field(&row.value.canonical_string()));
                out.push_str(&cells.join(sep));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

fn render_series(s: &FamilySeries, format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            out.push_str(&json(&SeriesOut::from(s))?);
            out.push('\n');
        }
        Format::Text | Format::Csv => {
            let conv = match s.convention() {
                crate::series::Convention::Egf => "egf",
                crate::series::Convention::Ogf => "ogf",
            };
            let sep = if format == Format::Csv { "," } else { "\t" };
            if format == Format::Text {
                out.push_str(&format!("# order {}, convention {conv}\n", s.order()));
            }
            out.push_str(&format!("n{sep}coeff\n"));
            for n in 0..=s.order() {
                let c = s.egf_coeff(n)?.canonical_string();
                let c = if format == Format::Csv { csv_field(&c) } else { c };
                out.push_str(&format!("{n}{sep}{c}\n"));
            }
        }
    }
    Ok(out)
}

fn render_reports(reports: &[CheckReport], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in reports {
                out.push_str(&json(r)?);
                out.push('\n');
            }
        }
        Format::Csv => {
            out.push_str("id,passed,n_max,r_max,z_max,inputs,lhs,rhs\n");
            for r in reports {
                let (inputs, lhs, rhs) = match &r.counterexample {
                    Some(c) => (
                        c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "),
                        c.lhs.clone(),
                        c.rhs.clone(),
                    ),
                    None => Default::default(),
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.id.name(),
                    r.passed,
                    r.bounds.n_max,
                    r.bounds.r_max,
                    r.bounds.z_max,
                    csv_field(&inputs),
                    csv_field(&lhs),
                    csv_field(&rhs)
                ));
            }
        }
        Format::Text => {
            for r in reports {
                out.push_str(&format!(
                    "{} {} (n<={}, r<={}, z<={})\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.id.name(),
                    r.bounds.n_max,
                    r.bounds.r_max,
                    r.bounds.z_max
                ));
                if let Some(c) = &r.counterexample {
                    let inputs = c.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ");
                    out.push_str(&format!("  at {inputs}\n  lhs: {}\n  rhs: {}\n", c.lhs, c.rhs));
                }
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            out.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
        }
    }
    Ok(out)
}

/// Parses member JSON emitted by `table --format json`.
pub fn parse_members(s: &str) -> Result<Vec<PolyFamilyValue>> {
    #[derive(serde::Deserialize)]
    struct Row {
        family: String,
        n: usize,
        params: BTreeMap<String, String>,
        value: ValueJson,
    }
    let rows: Vec<Row> = serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad table JSON: {e}")))?;
    rows.into_iter()
        .map(|r| Ok(PolyFamilyValue { family: r.family, n: r.n, params: r.params, value: Value::try_from(&r.value)? }))
        .collect()
}

fn default_order() -> Result<usize> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{ORDER_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

/// Outcome of one command: rendered standard output and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Singularity(_) => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

/// Executes a parsed command.
pub fn execute(cmd: &Command) -> Result<Outcome> {
    let ok = |stdout| Ok(Outcome { stdout, code: 0 });
    match cmd {
        Command::Table { family, n, format } => {
            let fam = family.resolve()?;
            let values = fam.values(n.clone())?;
            let rows: Vec<_> = n.clone().zip(values).map(|(i, v)| fam.member(i, v)).collect();
            ok(render_members(&rows, *format)?)
        }
        Command::Expand { family, n, format } => {
            let fam = family.resolve()?;
            let v = fam.value(*n)?;
            match format {
                Format::Text => ok(format!("{}\n", v.canonical_string())),
                Format::Json => ok(format!("{}\n", json(&ValueJson::from(&v))?)),
                Format::Csv => ok(render_members(&[fam.member(*n, v)], Format::Csv)?),
            }
        }
        Command::Series { family, order, format } => {
            let fam = family.resolve()?;
            let order = match order {
                Some(o) => *o,
                None => default_order()?,
            };
            ok(render_series(&fam.series(order)?, *format)?)
        }
        Command::Check { suite, id, n_max, r_max, z_max, format } => {
            let bounds = Bounds { n_max: *n_max, r_max: *r_max, z_max: *z_max };
            let reports = match (suite, id) {
                (_, Some(id)) => vec![run_check(*id, &bounds)?],
                (Some(s), None) => run_suite(*s, &bounds)?,
                (None, None) => run_suite(Suite::All, &bounds)?,
            };
            let all = reports.iter().all(|r| r.passed);
            Ok(Outcome { stdout: render_reports(&reports, *format)?, code: if all { 0 } else { 1 } })
        }
    }
}

/// Full entry point: parses `args`, writes results to `out` and diagnostics
/// to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            if out.write_all(o.stdout.as_bytes()).is_err() {
                return 1;
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(err, "polygen: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["polygen"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn n_range_forms() {
        assert_eq!(parse_n_range("0..3").unwrap(), 0..=3);
        assert_eq!(parse_n_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_n_range("5").unwrap(), 5..=5);
        assert!(parse_n_range("3..1").is_err());
        assert!(parse_n_range("a..1").is_err());
    }

    #[test]
    fn aliases_resolve_to_canonical_names() {
        for (alias, name) in [("np", "nw"), ("k1", "k1-kernel"), ("c", "cos-c"), ("frak-h2", "b1form"), ("h1", "m2")] {
            assert_eq!(FamilyArgs::named(alias).resolve().unwrap().name(), name);
        }
        for name in family_names() {
            assert_eq!(FamilyArgs::named(name).resolve().unwrap().name(), name);
        }
    }

    #[test]
    fn expand_examples() {
        assert_eq!(run_str(&["expand", "--family", "gould-hopper", "--j", "2", "--n", "2"]).1, "x^2 + 2*y\n");
        assert_eq!(run_str(&["expand", "--family", "hermite-gen", "--r", "1", "--n", "5"]).1, "u1^5\n");
        assert_eq!(run_str(&["expand", "--family", "np", "--n", "2"]).1, "(x^2 - y^2) + i*(2*x*y)\n");
    }

    #[test]
    fn table_chebyshev_t() {
        let (code, out, _) = run_str(&["table", "--family", "chebyshev-t", "--n", "0..2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n\tvalue\n0\t1\n1\tx\n2\t2*x^2 - 1\n");
    }

    #[test]
    fn table_k2_trivial_row() {
        let (_, out, _) = run_str(&["table", "--family", "k2", "--r", "3", "--n", "0..0"]);
        assert_eq!(out, "n\tr\tvalue\n0\t3\t0\n");
    }

    #[test]
    fn series_examples() {
        let (code, out, _) = run_str(&["series", "--family", "dickson-d", "--alpha", "1", "--order", "2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("n\tcoeff\n0\t2\n1\tx\n2\tx^2 - 2\n"), "{out}");
        let (_, out, _) = run_str(&["series", "--family", "cos-c", "--order", "0", "--format", "csv"]);
        assert_eq!(out, "n,coeff\n0,1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["table", "--family", "nope", "--n", "0"]).0, 2);
        assert_eq!(run_str(&["table", "--family", "cos-c", "--n", "0", "--r", "2"]).0, 2);
        assert_eq!(run_str(&["table", "--family", "hermite-gen", "--r", "9", "--n", "0"]).0, 2);
        assert_eq!(run_str(&["series", "--family", "apostol-euler", "--lambda", "-1", "--order", "2"]).0, 3);
        assert_eq!(run_str(&["series", "--family", "p1", "--order", "2"]).0, 2);
        assert_eq!(run_str(&["check", "--id", "no-such-check"]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
    }

    #[test]
    fn negative_rationals_parse() {
        let (code, out, err) =
            run_str(&["expand", "--family", "apostol-bernoulli", "--k", "2", "--lambda", "-1/2", "--n", "3"]);
        assert_eq!(code, 0, "{err}");
        assert!(!out.is_empty());
    }

    #[test]
    fn check_degenerate_bounds_passes() {
        let (code, out, _) = run_str(&["check", "--id", "tileu", "--n-max", "0"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS tileu"));
    }

    #[test]
    fn table_json_round_trips() {
        let (_, out, _) = run_str(&["table", "--family", "nw", "--n", "0..4", "--format", "json"]);
        let rows = parse_members(&out).unwrap();
        for row in rows {
            assert_eq!(row.family, "nw");
            assert_eq!(row.value, npoly(row.n, false).into());
        }
    }
}
