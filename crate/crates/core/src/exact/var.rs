use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Largest supported tuple length `r` for `(u1, ..., ur)`.
pub const MAX_TUPLE: usize = 8;

/// Size of the fixed alphabet.
pub const NVARS: usize = 7 + MAX_TUPLE;

const NAMES: [&str; NVARS] = [
    "x", "y", "s", "a", "b", "lambda", "alpha", "u1", "u2", "u3", "u4", "u5", "u6", "u7", "u8",
];

/// A symbol of the closed alphabet `x < y < s < a < b < lambda < alpha < u1 < ... < u8`.
///
/// The derived ordering is the alphabet ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u8);

impl Var {
    pub const X: Var = Var(0);
    pub const Y: Var = Var(1);
    pub const S: Var = Var(2);
    pub const A: Var = Var(3);
    pub const B: Var = Var(4);
    pub const LAMBDA: Var = Var(5);
    pub const ALPHA: Var = Var(6);

    /// The tuple symbol `u_j`, `1 <= j <= 8`.
    pub fn u(j: usize) -> Var {
        assert!((1..=MAX_TUPLE).contains(&j), "tuple index u{j} outside u1..u{MAX_TUPLE}");
        Var((6 + j) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        (i < NVARS).then_some(Var(i as u8))
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..NVARS).map(|i| Var(i as u8))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NAMES
            .iter()
            .position(|n| *n == s)
            .map(|i| Var(i as u8))
            .ok_or_else(|| Error::usage(format!("unknown symbol `{s}`")))
    }
}
