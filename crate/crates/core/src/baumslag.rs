//! The Baumslag–Solitar group `H(l,m) = <a, b | b^-1 a^l b = a^m>`.
//!
//! Elements are brought to a unique form `a^h b^e1 a^x1 ... b^en a^xn` by
//! pushing `a`-powers leftwards through `b`-letters, right to left:
//!
//! * `b^-1 a^x -> a^(m q) b^-1 a^r` where `x = l q + r`, `0 <= r < |l|`
//! * `b a^x    -> a^(l q) b a^r`    where `x = m q + r`, `0 <= r < m`
//!
//! together with cancellation of `b^-1 a^0 b` and `b a^0 b^-1`. Runs of
//! equal-sign `b`-letters separated by `a^0` are stored as one syllable, so
//! every stored residue except possibly the last is nonzero.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{self, ReducedRatio};
use crate::words::{Gen, GenWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BsError {
    #[error("H({l},{m}) requires |l| > m > 0")]
    InvalidPresentation { l: BigInt, m: BigInt },
    #[error("word contains the stable letter t; expected a word in a and b only")]
    StableLetter,
    #[error("exponent must be nonzero")]
    ZeroExponent,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BsPresentation {
    l: BigInt,
    m: BigInt,
}

impl BsPresentation {
    pub fn new(l: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<Self, BsError> {
        let (l, m) = (l.into(), m.into());
        if !(m.is_positive() && l.magnitude() > m.magnitude()) {
            return Err(BsError::InvalidPresentation { l, m });
        }
        Ok(BsPresentation { l, m })
    }

    pub fn l(&self) -> &BigInt {
        &self.l
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// `b^-1 a^l b a^-m`.
    pub fn relator(&self) -> GenWord {
        GenWord::from_syllables([
            (Gen::B, BigInt::from(-1)),
            (Gen::A, self.l.clone()),
            (Gen::B, BigInt::one()),
            (Gen::A, -&self.m),
        ])
    }

    /// `l/m` in lowest terms.
    pub fn ratio(&self) -> ReducedRatio {
        ReducedRatio::new(self.l.clone(), self.m.clone()).expect("m > 0")
    }

    /// Splits `x = l q + r` with `0 <= r < |l|` and returns `(q, r)`.
    fn split_by_l(&self, x: &BigInt) -> (BigInt, BigInt) {
        let (q, r) = x.div_mod_floor(&arith::abs(&self.l));
        if self.l.is_negative() {
            (-q, r)
        } else {
            (q, r)
        }
    }
}

impl fmt::Display for BsPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{})", self.l, self.m)
    }
}

/// `b^exp a^residue`, with the residue reduced for the sign of `exp`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TailSyllable {
    pub exp: BigInt,
    pub residue: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BsNormalForm {
    head: BigInt,
    tail: VecDeque<TailSyllable>,
}

impl BsNormalForm {
    pub fn identity() -> Self {
        BsNormalForm::default()
    }

    pub fn head(&self) -> &BigInt {
        &self.head
    }

    pub fn tail(&self) -> impl Iterator<Item = &TailSyllable> {
        self.tail.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.head.is_zero() && self.tail.is_empty()
    }

    pub fn b_length(&self) -> BigInt {
        self.tail
            .iter()
            .map(|s| BigInt::from(s.exp.magnitude().clone()))
            .sum()
    }

    /// The tail expanded into single `b`-letters `(sign, residue)`. Only
    /// sensible for forms of modest b-length.
    pub fn letters(&self) -> Vec<(i8, BigInt)> {
        let mut out = Vec::new();
        for s in &self.tail {
            let sign: i8 = if s.exp.is_positive() { 1 } else { -1 };
            let mut k = s.exp.magnitude().clone();
            while k > One::one() {
                out.push((sign, BigInt::zero()));
                k -= 1u32;
            }
            out.push((sign, s.residue.clone()));
        }
        out
    }

    pub fn as_a_power(&self) -> Option<BigInt> {
        self.tail.is_empty().then(|| self.head.clone())
    }

    pub fn as_b_power(&self) -> Option<BigInt> {
        if !self.head.is_zero() {
            return None;
        }
        match self.tail.len() {
            0 => Some(BigInt::zero()),
            1 if self.tail[0].residue.is_zero() => Some(self.tail[0].exp.clone()),
            _ => None,
        }
    }

    pub fn to_word(&self) -> GenWord {
        let mut w = GenWord::a(self.head.clone());
        for s in &self.tail {
            w.push(Gen::B, s.exp.clone());
            w.push(Gen::A, s.residue.clone());
        }
        w
    }

    /// Left-multiplies by `a^x`.
    pub fn prepend_a(&mut self, x: &BigInt) {
        self.head += x;
    }

    /// Left-multiplies by `b^n`.
    pub fn prepend_b(&mut self, pres: &BsPresentation, n: &BigInt) {
        let mut n = n.clone();
        while !n.is_zero() {
            let positive = n.is_positive();
            if self.head.is_zero() {
                // Nothing to push through: the whole power meets the front syllable.
                match self.tail.front_mut() {
                    Some(front) if front.exp.is_positive() == positive => {
                        front.exp += &n;
                        n.set_zero();
                    }
                    Some(front) => {
                        let c = n.magnitude().min(front.exp.magnitude()).clone();
                        let c = BigInt::from_biguint(
                            if positive { Sign::Plus } else { Sign::Minus },
                            c,
                        );
                        n -= &c;
                        front.exp += &c;
                        if front.exp.is_zero() {
                            let front = self.tail.pop_front().expect("front exists");
                            self.head = front.residue;
                        }
                    }
                    None => {
                        self.tail.push_front(TailSyllable {
                            exp: std::mem::take(&mut n),
                            residue: BigInt::zero(),
                        });
                    }
                }
                continue;
            }

            let (new_head, r) = if positive {
                let (q, r) = self.head.div_mod_floor(&pres.m);
                (&pres.l * q, r)
            } else {
                let (q, r) = pres.split_by_l(&self.head);
                (&pres.m * q, r)
            };
            let letter = if positive {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            self.head = new_head;
            if r.is_zero() {
                self.join_front(letter.clone());
            } else {
                self.tail.push_front(TailSyllable {
                    exp: letter.clone(),
                    residue: r,
                });
            }
            n -= letter;
        }
    }

    // A single b-letter directly followed (through a^0) by the front syllable.
    fn join_front(&mut self, letter: BigInt) {
        match self.tail.front_mut() {
            Some(front) => {
                front.exp += letter;
                if front.exp.is_zero() {
                    let front = self.tail.pop_front().expect("front exists");
                    self.head += front.residue;
                }
            }
            None => self.tail.push_front(TailSyllable {
                exp: letter,
                residue: BigInt::zero(),
            }),
        }
    }

    /// Left-multiplies by an `a`/`b` word.
    pub fn prepend_word(&mut self, pres: &BsPresentation, w: &GenWord) -> Result<(), BsError> {
        if w.contains(Gen::T) {
            return Err(BsError::StableLetter);
        }
        for s in w.syllables().iter().rev() {
            match s.gen {
                Gen::A => self.prepend_a(&s.exp),
                Gen::B => self.prepend_b(pres, &s.exp),
                Gen::T => unreachable!(),
            }
        }
        Ok(())
    }
}

impl fmt::Display for BsNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

pub fn bs_normal_form(pres: &BsPresentation, w: &GenWord) -> Result<BsNormalForm, BsError> {
    let mut nf = BsNormalForm::identity();
    nf.prepend_word(pres, w)?;
    Ok(nf)
}

pub fn bs_equal(pres: &BsPresentation, w1: &GenWord, w2: &GenWord) -> Result<bool, BsError> {
    Ok(bs_normal_form(pres, &w1.multiply(&w2.invert()))?.is_identity())
}

/// `Some(j)` iff `w = a^j` in `H(l,m)`.
pub fn power_of_a(pres: &BsPresentation, w: &GenWord) -> Result<Option<BigInt>, BsError> {
    Ok(bs_normal_form(pres, w)?.as_a_power())
}

/// `Some(p)` iff `w = b^p` in `H(l,m)`.
pub fn power_of_b(pres: &BsPresentation, w: &GenWord) -> Result<Option<BigInt>, BsError> {
    Ok(bs_normal_form(pres, w)?.as_b_power())
}

/// The exponent `s` with `b^-p a^r b^p = a^s` in `H(l,m)`, if one exists.
///
/// With `d = gcd(l,m)`, `l = l1 d`, `m = m1 d`: for `p > 0` this needs
/// `r = l1^p d x` and gives `s = m1^p d x`; for `p < 0` the roles of `l1`
/// and `m1` swap; `p = 0` gives `s = r`.
pub fn transport_exponent(
    pres: &BsPresentation,
    p: i64,
    r: &BigInt,
) -> Result<Option<BigInt>, BsError> {
    if r.is_zero() {
        return Err(BsError::ZeroExponent);
    }
    if p == 0 {
        return Ok(Some(r.clone()));
    }
    let d = pres.l.gcd(&pres.m);
    let l1 = &pres.l / &d;
    let m1 = &pres.m / &d;
    let k = p.unsigned_abs() as usize;
    let (from, to) = if p > 0 {
        (num_traits::pow(l1, k), num_traits::pow(m1, k))
    } else {
        (num_traits::pow(m1, k), num_traits::pow(l1, k))
    };
    let unit = &from * &d;
    if !(r % &unit).is_zero() {
        return Ok(None);
    }
    let x = r / unit;
    Ok(Some(to * d * x))
}
