//! Isomorphism and mutual-epimorphism decisions for pairs `G(l,m;k1)`,
//! `G(l,m;k2)` with `|l| > m`, and the residual / Hopf property predicates.

mod census;

pub use census::{
    census, sort_rows as census_sort, Census, CensusOrder, CensusRow, MAX_CENSUS_K, MAX_CENSUS_L,
};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::{self, is_n_number_ratio, power_ratio_exponent, NNumberBase, ReducedRatio};
use crate::brunner::GPresentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{0} is not canonical (k must be positive)")]
    NonCanonical(GPresentation),
    #[error("parameters ({l},{m},{k}) need |l| >= m > 0 and k > 0")]
    InvalidParameters { l: BigInt, m: BigInt, k: BigInt },
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("census bounds l_max={l_max}, k_max={k_max} outside 1..={max_l} / 1..={max_k}")]
    CensusBounds {
        l_max: u32,
        k_max: u32,
        max_l: u32,
        max_k: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum VerdictTag {
    Isomorphic,
    MutualEpiNotIso,
    Distinct,
    Open,
}

/// Which isomorphism criterion fired: equal `k`; `k1/k2 = ±(l/m)^p` with
/// `m > 1`; or `m = 1` with `k1/k2` an `l`-number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Condition {
    #[serde(rename = "C2_1")]
    EqualK,
    #[serde(rename = "C2_2")]
    PowerRatio,
    #[serde(rename = "C2_3")]
    LNumberRatio,
}

impl Condition {
    pub fn code(self) -> &'static str {
        match self {
            Condition::EqualK => "C2_1",
            Condition::PowerRatio => "C2_2",
            Condition::LNumberRatio => "C2_3",
        }
    }
}

impl fmt::Display for VerdictTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub condition: Option<Condition>,
    pub reason: String,
}

impl Verdict {
    fn isomorphic(condition: Condition, reason: String) -> Self {
        Verdict {
            tag: VerdictTag::Isomorphic,
            condition: Some(condition),
            reason,
        }
    }

    fn other(tag: VerdictTag, reason: String) -> Self {
        Verdict {
            tag,
            condition: None,
            reason,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.condition {
            Some(c) => write!(f, "{} {}", self.tag, c.code()),
            None => write!(f, "{}", self.tag),
        }
    }
}

fn ratio(k1: &BigInt, k2: &BigInt) -> ReducedRatio {
    ReducedRatio::new(k1.clone(), k2.clone()).expect("k2 > 0")
}

fn n_base(n: &BigInt) -> NNumberBase {
    NNumberBase::new(n.clone()).expect("nonzero base")
}

/// Decides the pair. Both presentations must have `k > 0`.
pub fn classify_pair(p1: &GPresentation, p2: &GPresentation) -> Result<Verdict, ClassifyError> {
    for p in [p1, p2] {
        if !p.is_canonical() {
            return Err(ClassifyError::NonCanonical(p.clone()));
        }
    }
    let (l, m) = (p1.l(), p1.m());
    if (l, m) != (p2.l(), p2.m()) {
        return Ok(Verdict::other(
            VerdictTag::Distinct,
            format!(
                "(l,m) = ({l},{m}) vs ({},{}): mutual images force equal l and m",
                p2.l(),
                p2.m()
            ),
        ));
    }
    let (k1, k2) = (p1.k(), p2.k());
    if k1 == k2 {
        return Ok(Verdict::isomorphic(
            Condition::EqualK,
            format!("k1 = k2 = {k1}"),
        ));
    }
    let q = ratio(k1, k2);
    let beta = ReducedRatio::new(l.clone(), m.clone()).expect("m > 0");
    let d = l.gcd(m);
    let d_divides = k1.is_multiple_of(&d) && k2.is_multiple_of(&d);

    if m.is_one() {
        let is_l_number = is_n_number_ratio(&q, &n_base(l)).expect("q nonzero");
        return Ok(if is_l_number {
            Verdict::isomorphic(
                Condition::LNumberRatio,
                format!("m = 1 and k1/k2 = {q} is an n-number for n = {l}"),
            )
        } else {
            Verdict::other(
                VerdictTag::Distinct,
                format!("m = 1 and k1/k2 = {q} is not an n-number for n = {l}"),
            )
        });
    }

    // m > 1 from here on.
    let power = power_ratio_exponent(&q, &beta).expect("|l/m| > 1");
    if d_divides {
        if let Some((eps, p)) = power {
            let sign = if eps > 0 { "+" } else { "-" };
            return Ok(Verdict::isomorphic(
                Condition::PowerRatio,
                format!(
                    "d = gcd(l,m) = {d} divides k1 and k2 and k1/k2 = {q} = {sign}({beta})^{p}"
                ),
            ));
        }
    }

    let fail = |why: String| Ok(Verdict::other(VerdictTag::Distinct, why));
    if !l.is_multiple_of(m) {
        return fail(format!(
            "m = {m} does not divide l = {l}; no power relation applies"
        ));
    }
    if !(k1.is_multiple_of(m) && k2.is_multiple_of(m)) {
        return fail(format!(
            "m = {m} does not divide both k1 = {k1} and k2 = {k2}"
        ));
    }
    let s = l / m;
    if !s.gcd(m).is_one() {
        return fail(format!("s = l/m = {s} is not coprime to m = {m}"));
    }
    if !is_n_number_ratio(&q, &n_base(&s)).expect("q nonzero") {
        return fail(format!("k1/k2 = {q} is not an n-number for n = {s}"));
    }
    // d = m divides k1 and k2 here, so a power relation would have fired above.
    debug_assert!(power.is_none());
    Ok(Verdict::other(
        VerdictTag::MutualEpiNotIso,
        format!(
            "m = {m} divides l, k1, k2; s = {s} is coprime to m; k1/k2 = {q} is an n-number for n = {s} but not a power of {s} or {}", -&s
        ),
    ))
}

/// Parameters `(l, m, k)` with `|l| >= m > 0` and `k > 0`, admitting the
/// `|l| = m` boundary that [`GPresentation`] excludes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParamTriple {
    pub l: BigInt,
    pub m: BigInt,
    pub k: BigInt,
}

impl ParamTriple {
    pub fn new(
        l: impl Into<BigInt>,
        m: impl Into<BigInt>,
        k: impl Into<BigInt>,
    ) -> Result<Self, ClassifyError> {
        let (l, m, k) = (l.into(), m.into(), k.into());
        if !(m.is_positive() && l.magnitude() >= m.magnitude() && k.is_positive()) {
            return Err(ClassifyError::InvalidParameters { l, m, k });
        }
        Ok(ParamTriple { l, m, k })
    }

    pub fn is_boundary(&self) -> bool {
        self.l.magnitude() == self.m.magnitude()
    }

    pub fn torsion(&self) -> BigInt {
        (&self.l - &self.m).abs()
    }

    pub fn presentation(&self) -> Option<GPresentation> {
        GPresentation::new(self.l.clone(), self.m.clone(), self.k.clone()).ok()
    }
}

impl fmt::Display for ParamTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{};{})", self.l, self.m, self.k)
    }
}

/// Advisory classification that also accepts `|l| = m`. Pairs where both
/// sides have `|l| > m` go to [`classify_pair`]; otherwise only the
/// conclusions that are known are drawn and the rest is `Open`.
pub fn classify_boundary(t1: &ParamTriple, t2: &ParamTriple) -> Verdict {
    if let (Some(p1), Some(p2)) = (t1.presentation(), t2.presentation()) {
        return classify_pair(&p1, &p2).expect("canonical presentations");
    }
    if t1 == t2 {
        return Verdict::isomorphic(Condition::EqualK, format!("identical parameters {t1}"));
    }
    if t1.is_boundary() != t2.is_boundary() {
        return Verdict::other(
            VerdictTag::Distinct,
            "one group has |l| = m (residually finite, Hopfian), the other |l| > m; neither is an image of the other".into(),
        );
    }
    if t1.torsion() != t2.torsion() {
        return Verdict::other(
            VerdictTag::Distinct,
            format!(
                "abelianization torsion |l-m| differs: {} vs {}",
                t1.torsion(),
                t2.torsion()
            ),
        );
    }
    let reason = if (&t1.l, &t1.m) == (&t2.l, &t2.m) {
        "|l| = m with equal (l,m) and k1 != k2: isomorphism is an open problem"
    } else {
        "|l| = m on both sides: isomorphism is an open problem"
    };
    Verdict::other(VerdictTag::Open, reason.into())
}

/// Residual finiteness holds iff `|l| = m`.
pub fn is_residually_finite(t: &ParamTriple) -> bool {
    t.is_boundary()
}

/// Non-Hopfian iff `|l| > m > 1`, `m | l`, `m | k` and `gcd(m, l/m) = 1`.
pub fn is_non_hopfian(pres: &GPresentation) -> bool {
    let (l, m, k) = (pres.l(), pres.m(), pres.k());
    m > &BigInt::one() && l.is_multiple_of(m) && k.is_multiple_of(m) && (l / m).gcd(m).is_one()
}

/// `n = p^e` for some `e >= 0`?
fn p_power_exponent(n: &BigInt, p: &BigInt) -> Option<u32> {
    let mut n = arith::abs(n);
    let mut e = 0;
    while !n.is_one() {
        if n.is_zero() || !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

/// Residually a finite p-group iff `|l| = m = p^r`, `k = p^s`, and when
/// `l = -m` also `p = 2` and `s <= r`.
pub fn is_residually_p(t: &ParamTriple, p: &BigInt) -> Result<bool, ClassifyError> {
    if !p.is_positive() || !arith::is_prime(p.magnitude()) {
        return Err(ClassifyError::NotPrime(p.clone()));
    }
    if !t.is_boundary() {
        return Ok(false);
    }
    let (Some(r), Some(s)) = (p_power_exponent(&t.m, p), p_power_exponent(&t.k, p)) else {
        return Ok(false);
    };
    if t.l.is_negative() {
        return Ok(*p == BigInt::from(2) && s <= r);
    }
    Ok(true)
}
