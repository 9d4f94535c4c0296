use serde::{Deserialize, Serialize};

use super::cpoly::CPoly;
use super::poly::{Monomial, MultiPoly};
use super::rational::{fmt_rational, parse_rational};
use super::var::Var;
use crate::error::{Error, Result};

/// Interchange form of a [`MultiPoly`]:
/// `{"vars":["x","y"], "terms":[{"exp":[2,0], "coef":"1"}, ...]}`.
///
/// `vars` lists the occurring symbols in alphabet order and `terms` follow
/// canonical order. `reduced_s` is emitted only for quotient-ring values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reduced_s: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u16>,
    pub coef: String,
}

/// `{"re": <poly>, "im": <poly>}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CPolyJson {
    pub re: PolyJson,
    pub im: PolyJson,
}

impl From<&MultiPoly> for PolyJson {
    fn from(p: &MultiPoly) -> Self {
        let vars = p.vars();
        let terms = p
            .terms()
            .map(|(m, c)| TermJson {
                exp: vars.iter().map(|&v| m.exp(v)).collect(),
                coef: fmt_rational(c),
            })
            .collect();
        PolyJson {
            vars: vars.iter().map(|v| v.name().to_string()).collect(),
            terms,
            reduced_s: p.reduced_s(),
        }
    }
}

impl TryFrom<&PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: &PolyJson) -> Result<Self> {
        let vars: Vec<Var> = j.vars.iter().map(|s| s.parse()).collect::<Result<_>>()?;
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.exp.len() != vars.len() {
                return Err(Error::usage(format!(
                    "term exponent vector has {} entries for {} vars",
                    t.exp.len(),
                    vars.len()
                )));
            }
            let mut m = Monomial::one();
            for (&v, &e) in vars.iter().zip(&t.exp) {
                m.0[v.index()] += e;
            }
            terms.push((m, parse_rational(&t.coef)?));
        }
        Ok(MultiPoly::from_terms(terms, j.reduced_s))
    }
}

impl From<&CPoly> for CPolyJson {
    fn from(p: &CPoly) -> Self {
        CPolyJson { re: (&p.re).into(), im: (&p.im).into() }
    }
}

impl TryFrom<&CPolyJson> for CPoly {
    type Error = Error;

    fn try_from(j: &CPolyJson) -> Result<Self> {
        let re = MultiPoly::try_from(&j.re)?;
        let im = MultiPoly::try_from(&j.im)?;
        if re.reduced_s() != im.reduced_s() {
            return Err(Error::usage("complex parts disagree on s-reduction"));
        }
        Ok(CPoly::new(re, im))
    }
}

impl MultiPoly {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&PolyJson::from(self)).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PolyJson =
            serde_json::from_str(s).map_err(|e| Error::usage(format!("bad polynomial JSON: {e}")))?;
        MultiPoly::try_from(&j)
    }
}
