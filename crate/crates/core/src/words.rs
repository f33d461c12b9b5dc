//! Freely reduced words over the generators `a`, `b`, `t` with big-integer
//! exponents, plus the text format used on the command line:
//! whitespace-separated tokens `a`, `b` or `t`, each optionally followed by
//! `^<signed integer>`. The identity prints as `1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    A,
    B,
    T,
}

impl Gen {
    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::T => 't',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub gen: Gen,
    pub exp: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown generator in token {0:?}")]
    UnknownGenerator(String),
    #[error("malformed exponent in token {0:?}")]
    BadExponent(String),
    #[error("zero exponent in token {0:?}")]
    ZeroExponent(String),
}

/// A freely reduced word: adjacent syllables never share a generator and no
/// exponent is zero. The empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenWord {
    syllables: Vec<Syllable>,
}

impl GenWord {
    pub fn identity() -> Self {
        GenWord::default()
    }

    pub fn power(gen: Gen, exp: impl Into<BigInt>) -> Self {
        let mut w = GenWord::identity();
        w.push(gen, exp.into());
        w
    }

    pub fn a(exp: impl Into<BigInt>) -> Self {
        GenWord::power(Gen::A, exp)
    }

    pub fn b(exp: impl Into<BigInt>) -> Self {
        GenWord::power(Gen::B, exp)
    }

    pub fn t(exp: impl Into<BigInt>) -> Self {
        GenWord::power(Gen::T, exp)
    }

    /// Builds a word from arbitrary syllables, reducing freely.
    pub fn from_syllables<I>(syllables: I) -> Self
    where
        I: IntoIterator<Item = (Gen, BigInt)>,
    {
        let mut w = GenWord::identity();
        for (gen, exp) in syllables {
            w.push(gen, exp);
        }
        w
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends `gen^exp` on the right, merging or cancelling with the last syllable.
    pub fn push(&mut self, gen: Gen, exp: BigInt) {
        if exp.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.gen == gen => {
                last.exp += exp;
                if last.exp.is_zero() {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push(Syllable { gen, exp }),
        }
    }

    pub fn multiply(&self, other: &GenWord) -> GenWord {
        let mut out = self.clone();
        for s in &other.syllables {
            out.push(s.gen, s.exp.clone());
        }
        out
    }

    pub fn invert(&self) -> GenWord {
        GenWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    gen: s.gen,
                    exp: -&s.exp,
                })
                .collect(),
        }
    }

    /// `self^n` for any integer `n` (negative powers invert).
    pub fn pow(&self, n: &BigInt) -> GenWord {
        let base = if n.sign() == num_bigint::Sign::Minus {
            self.invert()
        } else {
            self.clone()
        };
        // Square-and-multiply; free reduction keeps powers of a single syllable short.
        let mut out = GenWord::identity();
        let mut square = base;
        let bits = n.magnitude().bits();
        for i in 0..bits {
            if n.magnitude().bit(i) {
                out = out.multiply(&square);
            }
            if i + 1 < bits {
                square = square.multiply(&square);
            }
        }
        out
    }

    /// `conjugator^-1 * self * conjugator`.
    pub fn conjugate_by(&self, conjugator: &GenWord) -> GenWord {
        conjugator.invert().multiply(self).multiply(conjugator)
    }

    pub fn exponent_sum(&self, gen: Gen) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| &s.exp)
            .sum()
    }

    /// Total absolute exponent of `gen`, e.g. the t-length for `Gen::T`.
    pub fn letter_count(&self, gen: Gen) -> BigInt {
        self.syllables
            .iter()
            .filter(|s| s.gen == gen)
            .map(|s| BigInt::from(s.exp.magnitude().clone()))
            .sum()
    }

    pub fn contains(&self, gen: Gen) -> bool {
        self.syllables.iter().any(|s| s.gen == gen)
    }

    /// Replaces every syllable `g^e` with `image(g)^e`.
    pub fn substitute<F>(&self, mut image: F) -> GenWord
    where
        F: FnMut(Gen) -> GenWord,
    {
        let mut out = GenWord::identity();
        for s in &self.syllables {
            out = out.multiply(&image(s.gen).pow(&s.exp));
        }
        out
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if s.exp.is_one() {
                write!(f, "{}", s.gen.letter())?;
            } else {
                write!(f, "{}^{}", s.gen.letter(), s.exp)?;
            }
        }
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<GenWord, ParseError> {
    let mut w = GenWord::identity();
    for token in text.split_whitespace() {
        // split_whitespace yields subslices of `text`, so pointer arithmetic gives the offset.
        let position = token.as_ptr() as usize - text.as_ptr() as usize;
        let err = |kind| ParseError { position, kind };
        if token == "1" {
            continue;
        }
        let (head, exp) = match token.split_once('^') {
            Some((h, e)) => (h, Some(e)),
            None => (token, None),
        };
        let gen = match head {
            "a" => Gen::A,
            "b" => Gen::B,
            "t" => Gen::T,
            _ => return Err(err(ParseErrorKind::UnknownGenerator(token.to_string()))),
        };
        let exp = match exp {
            None => BigInt::one(),
            Some(e) => {
                let digits = e.strip_prefix(['+', '-']).unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(err(ParseErrorKind::BadExponent(token.to_string())));
                }
                let v: BigInt = e
                    .parse()
                    .map_err(|_| err(ParseErrorKind::BadExponent(token.to_string())))?;
                if v.is_zero() {
                    return Err(err(ParseErrorKind::ZeroExponent(token.to_string())));
                }
                v
            }
        };
        w.push(gen, exp);
    }
    Ok(w)
}

impl FromStr for GenWord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for GenWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GenWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}
