//! Explicit homomorphisms between `G(l,m;k1)` and `G(l,m;k2)`.
//!
//! All maps have the shape `a -> a^r`, `t -> b^p t`. Such a map is a
//! homomorphism exactly when `b^-p a^(r k1) b^p = a^k2` holds in the target,
//! and it is onto when `a^r` and `b` generate `H(l,m)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{self, is_n_number_ratio, power_ratio_exponent, NNumberBase, ReducedRatio};
use crate::brunner::{GPresentation, GroupError, GroupMap};
use crate::classify::{classify_pair, ClassifyError, Condition, VerdictTag};
use crate::json::bigint;
use crate::words::GenWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `G(l,m;k1) -> G(l,m;k2)`
    Forward,
    /// `G(l,m;k2) -> G(l,m;k1)`
    Backward,
}

/// `a -> a^r`, `t -> b^p t` with `r k_source = base^p k_target`, where the
/// base is `l` (when `m = 1`) or `s = l/m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpiRecipe {
    #[serde(with = "bigint")]
    pub l: BigInt,
    #[serde(with = "bigint")]
    pub m: BigInt,
    #[serde(with = "bigint")]
    pub k1: BigInt,
    #[serde(with = "bigint")]
    pub k2: BigInt,
    #[serde(with = "bigint")]
    pub r: BigInt,
    pub p: u32,
    pub direction: Direction,
}

impl EpiRecipe {
    pub fn source(&self) -> Result<GPresentation, GroupError> {
        let k = match self.direction {
            Direction::Forward => &self.k1,
            Direction::Backward => &self.k2,
        };
        GPresentation::new(self.l.clone(), self.m.clone(), k.clone())
    }

    pub fn target(&self) -> Result<GPresentation, GroupError> {
        let k = match self.direction {
            Direction::Forward => &self.k2,
            Direction::Backward => &self.k1,
        };
        GPresentation::new(self.l.clone(), self.m.clone(), k.clone())
    }

    /// The base whose powers appear in the recipe: `l/m` (exact here).
    pub fn base(&self) -> BigInt {
        &self.l / &self.m
    }

    /// `r * k_source == base^p * k_target`.
    pub fn balanced(&self) -> bool {
        let (Ok(src), Ok(tgt)) = (self.source(), self.target()) else {
            return false;
        };
        &self.r * src.k() == num_traits::pow(self.base(), self.p as usize) * tgt.k()
    }

    pub fn to_map(&self) -> Result<GroupMap, GroupError> {
        Ok(GroupMap::new(
            self.source()?,
            self.target()?,
            GenWord::a(self.r.clone()),
            GenWord::b(self.p).multiply(&GenWord::t(1)),
        ))
    }
}

impl fmt::Display for EpiRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (src, tgt) = match self.direction {
            Direction::Forward => (&self.k1, &self.k2),
            Direction::Backward => (&self.k2, &self.k1),
        };
        write!(
            f,
            "G({l},{m};{src}) -> G({l},{m};{tgt}): a -> a^{r}, t -> b^{p} t",
            l = self.l,
            m = self.m,
            r = self.r,
            p = self.p
        )
    }
}

fn precondition(msg: impl Into<String>) -> SynthError {
    SynthError::Precondition(msg.into())
}

fn pair(
    l: &BigInt,
    m: &BigInt,
    k1: &BigInt,
    k2: &BigInt,
) -> Result<(GPresentation, GPresentation), SynthError> {
    Ok((
        GPresentation::new(l.clone(), m.clone(), k1.clone())?,
        GPresentation::new(l.clone(), m.clone(), k2.clone())?,
    ))
}

/// Mutually inverse isomorphisms `a1 -> a2^eps, t1 -> b2^p t2` and
/// `a2 -> a1^eps, t2 -> b1^-p t1` for `k1/k2 = eps (l/m)^p`.
pub fn synth_iso_2_2(
    l: &BigInt,
    m: &BigInt,
    k1: &BigInt,
    k2: &BigInt,
) -> Result<(GroupMap, GroupMap), SynthError> {
    let (g1, g2) = pair(l, m, k1, k2)?;
    if !m.gt(&BigInt::one()) {
        return Err(precondition(format!("m = {m} must exceed 1")));
    }
    let d = l.gcd(m);
    if !(k1.is_multiple_of(&d) && k2.is_multiple_of(&d)) {
        return Err(precondition(format!(
            "gcd(l,m) = {d} must divide k1 = {k1} and k2 = {k2}"
        )));
    }
    let q = ReducedRatio::new(k1.clone(), k2.clone()).expect("k2 > 0");
    let beta = ReducedRatio::new(l.clone(), m.clone()).expect("m > 0");
    let (eps, p) = power_ratio_exponent(&q, &beta)
        .expect("|l/m| > 1")
        .ok_or_else(|| precondition(format!("k1/k2 = {q} is not +-({beta})^p with p != 0")))?;
    let forward = GroupMap::new(
        g1.clone(),
        g2.clone(),
        GenWord::a(eps),
        GenWord::b(p).multiply(&GenWord::t(1)),
    );
    let inverse = GroupMap::new(
        g2,
        g1,
        GenWord::a(eps),
        GenWord::b(-p).multiply(&GenWord::t(1)),
    );
    Ok((forward, inverse))
}

// Shared construction: k1/k2 = y/x reduced, smallest p > 0 with y | base^p,
// z = base^p / y, r = x z.
fn epi_recipe(
    l: &BigInt,
    m: &BigInt,
    k1: &BigInt,
    k2: &BigInt,
    base: &BigInt,
    direction: Direction,
) -> Result<EpiRecipe, SynthError> {
    let (src, tgt) = match direction {
        Direction::Forward => (k1, k2),
        Direction::Backward => (k2, k1),
    };
    let q = ReducedRatio::new(src.clone(), tgt.clone()).expect("k > 0");
    let nb = NNumberBase::new(base.clone()).expect("base nonzero");
    if !is_n_number_ratio(&q, &nb).expect("q nonzero") {
        return Err(precondition(format!("k ratio {q} is not a {base}-number")));
    }
    let (y, x) = (q.num(), q.den());
    let (p, z) = arith::smallest_dividing_power(base, y).expect("y is a base-number");
    Ok(EpiRecipe {
        l: l.clone(),
        m: m.clone(),
        k1: k1.clone(),
        k2: k2.clone(),
        r: x * z,
        p,
        direction,
    })
}

/// Epimorphism for `m = 1` and `k1/k2` an `l`-number.
pub fn synth_epi_m1(
    l: &BigInt,
    k1: &BigInt,
    k2: &BigInt,
    direction: Direction,
) -> Result<EpiRecipe, SynthError> {
    let m = BigInt::one();
    pair(l, &m, k1, k2)?;
    epi_recipe(l, &m, k1, k2, l, direction)
}

/// Epimorphism for `l = m s` with `gcd(m, s) = 1`, `m | k1, k2`, and
/// `k1/k2` an `s`-number.
pub fn synth_epi_item3(
    l: &BigInt,
    m: &BigInt,
    k1: &BigInt,
    k2: &BigInt,
    direction: Direction,
) -> Result<EpiRecipe, SynthError> {
    pair(l, m, k1, k2)?;
    if !l.is_multiple_of(m) {
        return Err(precondition(format!("m = {m} must divide l = {l}")));
    }
    let s = l / m;
    if !s.gcd(m).is_one() {
        return Err(precondition(format!("s = {s} must be coprime to m = {m}")));
    }
    if !(k1.is_multiple_of(m) && k2.is_multiple_of(m)) {
        return Err(precondition(format!(
            "m = {m} must divide k1 = {k1} and k2 = {k2}"
        )));
    }
    epi_recipe(l, m, k1, k2, &s, direction)
}

/// Iterates `g <- gcd(g, lcm(g, |l|) m / |l|)` from `g = |r|` and returns the
/// trace. Every `a^(g n)` lies in the subgroup of `H(l,m)` generated by
/// `a^r` and `b`; a final value of 1 means that subgroup is all of `H(l,m)`.
pub fn generated_exponent_trace(
    l: &BigInt,
    m: &BigInt,
    r: &BigInt,
) -> Result<Vec<BigInt>, SynthError> {
    crate::baumslag::BsPresentation::new(l.clone(), m.clone())
        .map_err(|e| precondition(e.to_string()))?;
    if r.is_zero() {
        return Err(precondition("r must be nonzero"));
    }
    let abs_l = l.abs();
    let mut g = r.abs();
    let mut trace = vec![g.clone()];
    loop {
        let pushed = g.lcm(&abs_l) * m / &abs_l;
        let next = g.gcd(&pushed);
        if next == g {
            return Ok(trace);
        }
        g = next;
        trace.push(g.clone());
    }
}

pub fn generated_exponent_fixpoint(
    l: &BigInt,
    m: &BigInt,
    r: &BigInt,
) -> Result<BigInt, SynthError> {
    Ok(generated_exponent_trace(l, m, r)?
        .pop()
        .expect("trace starts with |r|"))
}

/// What [`synthesize`] produced for a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Synthesis {
    /// `k1 = k2`.
    Identity(GroupMap),
    /// Mutually inverse isomorphisms.
    Isomorphisms {
        forward: GroupMap,
        inverse: GroupMap,
    },
    /// Epimorphisms both ways. For `m = 1` the groups are isomorphic as well
    /// (both are Hopfian), but no explicit isomorphism is constructed.
    Epimorphisms {
        forward: EpiRecipe,
        backward: EpiRecipe,
    },
    /// Neither isomorphic nor mutually epimorphic.
    Nothing,
}

/// Builds the maps witnessing the verdict of [`classify_pair`].
pub fn synthesize(p1: &GPresentation, p2: &GPresentation) -> Result<Synthesis, SynthError> {
    let verdict = classify_pair(p1, p2)?;
    let (l, m, k1, k2) = (p1.l(), p1.m(), p1.k(), p2.k());
    Ok(match (verdict.tag, verdict.condition) {
        (VerdictTag::Isomorphic, Some(Condition::EqualK)) => {
            Synthesis::Identity(GroupMap::identity(p1))
        }
        (VerdictTag::Isomorphic, Some(Condition::PowerRatio)) => {
            let (forward, inverse) = synth_iso_2_2(l, m, k1, k2)?;
            Synthesis::Isomorphisms { forward, inverse }
        }
        (VerdictTag::Isomorphic, Some(Condition::LNumberRatio)) => Synthesis::Epimorphisms {
            forward: synth_epi_m1(l, k1, k2, Direction::Forward)?,
            backward: synth_epi_m1(l, k1, k2, Direction::Backward)?,
        },
        (VerdictTag::MutualEpiNotIso, _) => Synthesis::Epimorphisms {
            forward: synth_epi_item3(l, m, k1, k2, Direction::Forward)?,
            backward: synth_epi_item3(l, m, k1, k2, Direction::Backward)?,
        },
        _ => Synthesis::Nothing,
    })
}
