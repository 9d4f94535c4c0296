#![allow(dead_code)]

use std::process::Command;

use polygen::cli::{Family, FamilyArgs, KernelKind};
use polygen::{CPoly, Error, MultiPoly, Rational, Var};

/// Parses a hand-written polynomial such as `(x+u1)^2 + 2*u2 - y^2 + i*(2*y)`.
///
/// Juxtaposition multiplies, so `2y(x+u1)` is accepted as written in print.
pub fn parse(src: &str) -> CPoly {
    let toks = tokenize(src);
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr();
    assert_eq!(p.pos, p.toks.len(), "trailing input in `{src}`");
    v
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Vec<Tok> {
    let cs: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[start..i].iter().collect::<String>().parse().unwrap()));
        } else if c.is_ascii_alphabetic() {
            // Single letters, except `u` which takes its index digit.
            if c == 'u' {
                out.push(Tok::Ident(format!("u{}", cs[i + 1])));
                i += 2;
            } else {
                out.push(Tok::Ident(c.to_string()));
                i += 1;
            }
        } else {
            out.push(Tok::Op(c));
            i += 1;
        }
    }
    out
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> CPoly {
        let mut acc = if self.eat('-') { neg(&self.term()) } else { self.term() };
        loop {
            if self.eat('+') {
                acc = acc.try_add(&self.term()).unwrap();
            } else if self.eat('-') {
                acc = acc.try_sub(&self.term()).unwrap();
            } else {
                return acc;
            }
        }
    }

    fn term(&mut self) -> CPoly {
        let mut acc = self.power();
        loop {
            let explicit = self.eat('*');
            match self.peek() {
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = acc.try_mul(&self.power()).unwrap();
                }
                _ => {
                    assert!(!explicit, "dangling `*`");
                    return acc;
                }
            }
        }
    }

    fn power(&mut self) -> CPoly {
        let base = self.atom();
        if self.eat('^') {
            match self.toks[self.pos].clone() {
                Tok::Num(e) => {
                    self.pos += 1;
                    base.pow(e as u32)
                }
                t => panic!("exponent must be an integer, got {t:?}"),
            }
        } else {
            base
        }
    }

    fn atom(&mut self) -> CPoly {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        match t {
            Tok::Num(n) => CPoly::real(MultiPoly::from_int(n)),
            Tok::Ident(s) if s == "i" => CPoly::i(),
            Tok::Ident(s) => CPoly::real(MultiPoly::var(s.parse::<Var>().unwrap())),
            Tok::Op('(') => {
                let v = self.expr();
                assert!(self.eat(')'), "unbalanced parentheses");
                v
            }
            t => panic!("unexpected token {t:?}"),
        }
    }
}

fn neg(p: &CPoly) -> CPoly {
    p.scale(&Rational::from_integer((-1).into()))
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn fam(name: &str, set: impl FnOnce(&mut FamilyArgs)) -> Family {
    let mut a = FamilyArgs::named(name);
    set(&mut a);
    a.resolve().unwrap()
}

/// Every (explicit formula, generating function) pair exercised by the
/// oracle-equivalence tests, for tuple lengths up to `r_max`.
pub fn oracle_families(r_max: usize) -> Vec<Family> {
    let mut out = vec![fam("cos-c", |_| ()), fam("sin-s", |_| ()), fam("chebyshev-t", |_| ()), fam("chebyshev-u", |_| ())];
    out.extend([fam("nw", |_| ()), fam("nw-conj", |_| ())]);
    for alpha in [q(1, 1), q(2, 1), q(-1, 2)] {
        out.push(fam("dickson-d", |a| a.alpha = Some(alpha.clone())));
        out.push(fam("dickson-e", |a| a.alpha = Some(alpha.clone())));
    }
    for j in 2..=4 {
        out.push(fam("gould-hopper", |a| a.j = Some(j)));
    }
    for r in 1..=r_max {
        for name in ["hermite-gen", "k1", "k2", "k", "m4", "m5"] {
            out.push(fam(name, |a| a.r = Some(r)));
        }
    }
    for name in ["apostol-bernoulli", "apostol-euler"] {
        for k in [-1, 1, 2] {
            for lambda in [q(1, 1), q(2, 1), q(1, 2)] {
                out.push(fam(name, |a| {
                    a.k = Some(k);
                    a.lambda = Some(lambda.clone());
                }));
            }
        }
    }
    for name in ["bc", "bs", "ec", "es"] {
        for z in 1..=2 {
            for av in [q(1, 1), q(2, 1), q(1, 2)] {
                out.push(fam(name, |a| {
                    a.z = Some(z);
                    a.a = Some(av.clone());
                }));
            }
        }
    }
    let kernels = [(KernelKind::Bernoulli, q(1, 1), q(0, 1)), (KernelKind::Euler, q(1, 2), q(1, 1)), (KernelKind::Bernoulli, q(2, 1), q(1, 1))];
    for name in ["m1", "m2", "m3", "bform", "b1form"] {
        for r in 1..=r_max {
            for (z, (kind, av, bv)) in [1, 2, 1].into_iter().zip(kernels.iter().cloned()) {
                out.push(fam(name, |a| {
                    a.r = Some(r);
                    a.z = Some(z);
                    a.kernel = Some(kind);
                    a.a = Some(av);
                    a.b = Some(bv);
                }));
            }
        }
    }
    for (kind, av, bv) in kernels {
        for z in [-1, 2] {
            out.push(fam("r1", |a| {
                a.z = Some(z);
                a.kernel = Some(kind);
                a.a = Some(av.clone());
                a.b = Some(bv.clone());
            }));
        }
    }
    out
}

/// Compares the explicit formula with the series readout for `n <= n_max`.
/// Both sides reporting a singularity counts as agreement.
pub fn oracle_mismatch(f: &Family, n_max: usize) -> Option<String> {
    let label = format!("{} {:?}", f.name(), f.params());
    let closed = f.values(0..=n_max);
    let series = f.series(n_max);
    match (closed, series) {
        (Ok(values), Ok(s)) => {
            for (n, v) in values.into_iter().enumerate() {
                let c = s.egf_coeff(n).unwrap();
                if c != v {
                    return Some(format!("{label} at n = {n}: formula {v} vs series {c}"));
                }
            }
            None
        }
        (Err(Error::Singularity(_)), Err(Error::Singularity(_))) => None,
        (a, b) => Some(format!("{label}: formula {:?} vs series {:?}", a.err(), b.err())),
    }
}

pub fn polygen(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polygen")).args(args).output().expect("spawn polygen");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}
