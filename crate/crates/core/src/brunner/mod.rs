//! The groups `G(l,m;k)` as HNN extensions of `H(l,m)` with stable letter
//! `t`, associated subgroups `<a^k>` and `<b>`, and `t^-1 a^k t = b`.
//!
//! Words may use all three generators; `b` lives in the base group directly.

mod maps;
mod quotient;

pub use maps::{normalize_k_sign, verify_homomorphism, GroupMap, KSignNormalization, Verification};
pub use quotient::{
    finite_quotient_scan, finite_quotient_scan_exhaustive, generated_group_is_cyclic, Perm,
    QuotientReport,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::baumslag::{BsError, BsNormalForm, BsPresentation};
use crate::json::bigint;
use crate::words::{Gen, GenWord};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("G({l},{m};{k}) requires |l| > m > 0 and k != 0")]
    InvalidPresentation { l: BigInt, m: BigInt, k: BigInt },
    #[error("G({l},{m};{k}) has k < 0; normalize it to k > 0 first")]
    NegativeK { l: BigInt, m: BigInt, k: BigInt },
    #[error("k = {0} is already positive; nothing to normalize")]
    AlreadyCanonical(BigInt),
    #[error("quotient scan degree {0} outside 1..=8")]
    DegreeOutOfRange(usize),
    #[error("maps do not compose: target {} differs from source {}", .0.0, .0.1)]
    CompositionMismatch(Box<(GPresentation, GPresentation)>),
    #[error(transparent)]
    Base(#[from] BsError),
}

/// Parameters `(l, m, k)` of `G(l,m;k)`. Constructed through [`GPresentation::new`]
/// the triple satisfies `|l| > m > 0` and `k > 0`; [`GPresentation::new_signed`]
/// also admits `k < 0` for presentations awaiting sign normalization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct GPresentation {
    base: BsPresentation,
    k: BigInt,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    #[serde(with = "bigint")]
    l: BigInt,
    #[serde(with = "bigint")]
    m: BigInt,
    #[serde(with = "bigint")]
    k: BigInt,
}

impl TryFrom<RawTriple> for GPresentation {
    type Error = GroupError;

    fn try_from(raw: RawTriple) -> Result<Self, Self::Error> {
        GPresentation::new_signed(raw.l, raw.m, raw.k)
    }
}

impl From<GPresentation> for RawTriple {
    fn from(p: GPresentation) -> Self {
        RawTriple {
            l: p.base.l().clone(),
            m: p.base.m().clone(),
            k: p.k,
        }
    }
}

impl GPresentation {
    pub fn new(
        l: impl Into<BigInt>,
        m: impl Into<BigInt>,
        k: impl Into<BigInt>,
    ) -> Result<Self, GroupError> {
        let p = GPresentation::new_signed(l, m, k)?;
        if p.k.is_negative() {
            return Err(GroupError::NegativeK {
                l: p.l().clone(),
                m: p.m().clone(),
                k: p.k,
            });
        }
        Ok(p)
    }

    pub fn new_signed(
        l: impl Into<BigInt>,
        m: impl Into<BigInt>,
        k: impl Into<BigInt>,
    ) -> Result<Self, GroupError> {
        let (l, m, k) = (l.into(), m.into(), k.into());
        let invalid = || GroupError::InvalidPresentation {
            l: l.clone(),
            m: m.clone(),
            k: k.clone(),
        };
        if k.is_zero() {
            return Err(invalid());
        }
        let base = BsPresentation::new(l.clone(), m.clone()).map_err(|_| invalid())?;
        Ok(GPresentation { base, k })
    }

    pub fn l(&self) -> &BigInt {
        self.base.l()
    }

    pub fn m(&self) -> &BigInt {
        self.base.m()
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn base(&self) -> &BsPresentation {
        &self.base
    }

    pub fn is_canonical(&self) -> bool {
        self.k.is_positive()
    }

    /// `t^-1 a^-k t a^l t^-1 a^k t a^-m`.
    pub fn relator(&self) -> GenWord {
        let one = BigInt::one();
        GenWord::from_syllables([
            (Gen::T, -&one),
            (Gen::A, -&self.k),
            (Gen::T, one.clone()),
            (Gen::A, self.l().clone()),
            (Gen::T, -&one),
            (Gen::A, self.k.clone()),
            (Gen::T, one),
            (Gen::A, -self.m()),
        ])
    }

    /// `b` written in `a` and `t`: `t^-1 a^k t`.
    pub fn b_in_a_t(&self) -> GenWord {
        GenWord::from_syllables([
            (Gen::T, -BigInt::one()),
            (Gen::A, self.k.clone()),
            (Gen::T, BigInt::one()),
        ])
    }
}

impl fmt::Display for GPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{};{})", self.l(), self.m(), self.k)
    }
}

/// A t-reduced word `h0 t^e1 h1 ... t^en hn` with each `h_i` in `H(l,m)`
/// normal form and no pinch `t^-1 a^(kj) t` or `t b^j t^-1` left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TReducedWord {
    // Stored right to left: `segments.last()` is h0, `letters.last()` is e1.
    segments: Vec<BsNormalForm>,
    letters: Vec<i8>,
}

impl TReducedWord {
    fn new() -> Self {
        TReducedWord {
            segments: vec![BsNormalForm::identity()],
            letters: Vec::new(),
        }
    }

    pub fn t_length(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty() && self.segments[0].is_identity()
    }

    /// Base-group segments from left to right.
    pub fn segments(&self) -> impl Iterator<Item = &BsNormalForm> {
        self.segments.iter().rev()
    }

    pub fn to_word(&self) -> GenWord {
        let mut w = GenWord::identity();
        let n = self.letters.len();
        for i in (0..=n).rev() {
            w = w.multiply(&self.segments[i].to_word());
            if i > 0 {
                w.push(Gen::T, BigInt::from(self.letters[i - 1]));
            }
        }
        w
    }

    fn front(&mut self) -> &mut BsNormalForm {
        self.segments.last_mut().expect("at least one segment")
    }

    fn prepend_t(&mut self, pres: &GPresentation, sign: i8) {
        if self.letters.last() == Some(&-sign) {
            let h = self.segments.last().expect("segment");
            // t^-1 h t with h in <a^k>, or t h t^-1 with h in <b>.
            let replacement = if sign < 0 {
                h.as_a_power()
                    .filter(|j| j.is_multiple_of(&pres.k))
                    .map(|j| GenWord::b(j / &pres.k))
            } else {
                h.as_b_power().map(|j| GenWord::a(j * &pres.k))
            };
            if let Some(rep) = replacement {
                self.segments.pop();
                self.letters.pop();
                self.front()
                    .prepend_word(&pres.base, &rep)
                    .expect("replacement has no t");
                return;
            }
        }
        self.letters.push(sign);
        self.segments.push(BsNormalForm::identity());
    }
}

impl fmt::Display for TReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_word().fmt(f)
    }
}

/// Britton reduction of `w` in `G(l,m;k)`, scanning right to left.
pub fn g_reduce_form(pres: &GPresentation, w: &GenWord) -> TReducedWord {
    let mut out = TReducedWord::new();
    for s in w.syllables().iter().rev() {
        match s.gen {
            Gen::A => out.front().prepend_a(&s.exp),
            Gen::B => out.front().prepend_b(&pres.base, &s.exp),
            Gen::T => {
                let sign: i8 = if s.exp.is_positive() { 1 } else { -1 };
                let mut count = s.exp.magnitude().clone();
                while !count.is_zero() {
                    out.prepend_t(pres, sign);
                    count -= 1u32;
                }
            }
        }
    }
    out
}

/// A word equal to `w` in `G(l,m;k)` with minimal t-length.
pub fn g_reduce(pres: &GPresentation, w: &GenWord) -> GenWord {
    g_reduce_form(pres, w).to_word()
}

pub fn g_is_identity(pres: &GPresentation, w: &GenWord) -> bool {
    g_reduce_form(pres, w).is_identity()
}

pub fn g_equal(pres: &GPresentation, w1: &GenWord, w2: &GenWord) -> bool {
    g_is_identity(pres, &w1.multiply(&w2.invert()))
}

/// The torsion part of the abelianization `Z + Z/(l-m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariant {
    #[serde(with = "bigint")]
    pub torsion: BigInt,
}

pub fn abelianization(pres: &GPresentation) -> AbelianInvariant {
    AbelianInvariant {
        torsion: (pres.l() - pres.m()).abs(),
    }
}

/// Image of `w` in `Z/(l-m) + Z`: the `a`-class (with `b = a^k` there)
/// reduced into `0..|l-m|`, and the `t` exponent sum.
pub fn ab_image(pres: &GPresentation, w: &GenWord) -> (BigInt, BigInt) {
    let torsion = abelianization(pres).torsion;
    let a_class = w.exponent_sum(Gen::A) + &pres.k * w.exponent_sum(Gen::B);
    let residue = if torsion.is_zero() {
        a_class
    } else {
        a_class.mod_floor(&torsion)
    };
    (residue, w.exponent_sum(Gen::T))
}
