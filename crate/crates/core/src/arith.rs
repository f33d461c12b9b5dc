//! Exact integer and rational helpers behind the arithmetic side of the
//! classification: prime support ("n-numbers"), reduced ratios, and
//! detection of exact rational powers.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("n-number base must be nonzero")]
    ZeroBase,
    #[error("zero has no prime support; n-number test undefined")]
    ZeroArgument,
    #[error("ratio denominator must be nonzero")]
    ZeroDenominator,
    #[error("power base {0} must satisfy |beta| > 1")]
    BaseTooSmall(ReducedRatio),
}

/// Prime factorization of `n >= 1` by trial division, as `(prime, multiplicity)`
/// pairs in increasing prime order. `factorize(1)` is empty.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut rest = n.clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut push = |p: BigUint, rest: &mut BigUint| {
        let mut mult = 0u32;
        while (&*rest % &p).is_zero() {
            *rest /= &p;
            mult += 1;
        }
        if mult > 0 {
            out.push((p, mult));
        }
    };
    push(BigUint::from(2u32), &mut rest);
    let mut p = BigUint::from(3u32);
    while &p * &p <= rest {
        push(p.clone(), &mut rest);
        p += 2u32;
    }
    if rest > BigUint::one() {
        out.push((rest, 1));
    }
    out
}

/// Trial-division primality test for desk-scale inputs.
pub fn is_prime(n: &BigUint) -> bool {
    let f = factorize(n);
    f.len() == 1 && f[0].1 == 1
}

/// The integer whose prime support defines "n-numbers". Only |n| matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NNumberBase {
    n: BigInt,
}

impl NNumberBase {
    pub fn new(n: BigInt) -> Result<Self, ArithError> {
        if n.is_zero() {
            return Err(ArithError::ZeroBase);
        }
        Ok(NNumberBase { n })
    }

    pub fn value(&self) -> &BigInt {
        &self.n
    }
}

/// True iff every prime dividing `|m|` also divides `|base|`.
pub fn is_n_number_int(m: &BigInt, base: &NNumberBase) -> Result<bool, ArithError> {
    if m.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let n = base.n.magnitude();
    let mut rest = m.magnitude().clone();
    // Strip the common prime support until nothing more is shared.
    loop {
        let g = rest.gcd(n);
        if g.is_one() {
            break;
        }
        while (&rest % &g).is_zero() {
            rest /= &g;
        }
    }
    Ok(rest.is_one())
}

/// A rational number in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedRatio {
    num: BigInt,
    den: BigInt,
}

impl ReducedRatio {
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        Ok(ReducedRatio { num, den })
    }

    pub fn from_integer(n: BigInt) -> Self {
        ReducedRatio {
            num: n,
            den: BigInt::one(),
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn abs_gt_one(&self) -> bool {
        self.num.magnitude() > self.den.magnitude()
    }

    pub fn neg(&self) -> Self {
        ReducedRatio {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Exact integer power; negative exponents invert (the ratio must be nonzero then).
    pub fn pow(&self, e: i64) -> Self {
        let k = e.unsigned_abs() as u32;
        let num = num_traits::pow(self.num.clone(), k as usize);
        let den = num_traits::pow(self.den.clone(), k as usize);
        if e >= 0 {
            ReducedRatio { num, den }
        } else {
            ReducedRatio::new(den, num).expect("inverting a zero ratio")
        }
    }
}

impl fmt::Display for ReducedRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// True iff both numerator and denominator of `q` are n-numbers for `base`.
pub fn is_n_number_ratio(q: &ReducedRatio, base: &NNumberBase) -> Result<bool, ArithError> {
    Ok(is_n_number_int(&q.num, base)? && is_n_number_int(&q.den, base)?)
}

/// Finds `(eps, p)` with `q = eps * beta^p`, `eps = ±1` and `p != 0`.
///
/// Since `beta = u/v` is in lowest terms with `|u| > v`, any exact power
/// `beta^p` has `|u|^|p| >= 2^|p|` in its numerator or denominator, so
/// scanning `|p|` up to the bit length of `q` is exhaustive.
pub fn power_ratio_exponent(
    q: &ReducedRatio,
    beta: &ReducedRatio,
) -> Result<Option<(i8, i64)>, ArithError> {
    if !beta.abs_gt_one() {
        return Err(ArithError::BaseTooSmall(beta.clone()));
    }
    if q.num.is_zero() {
        return Err(ArithError::ZeroArgument);
    }
    let bound = q.num.bits().max(q.den.bits()) as i64;
    let neg_q = q.neg();
    for p in 1..=bound {
        for p in [p, -p] {
            let power = beta.pow(p);
            if power == *q {
                return Ok(Some((1, p)));
            }
            if power == neg_q {
                return Ok(Some((-1, p)));
            }
        }
    }
    Ok(None)
}

/// Smallest `p > 0` with `divisor | base^p`, together with the cofactor
/// `base^p / divisor`. `None` when `divisor` is not a `base`-number.
pub fn smallest_dividing_power(base: &BigInt, divisor: &BigInt) -> Option<(u32, BigInt)> {
    let b = NNumberBase::new(base.clone()).ok()?;
    if !is_n_number_int(divisor, &b).ok()? {
        return None;
    }
    let mut power = base.clone();
    let mut p = 1u32;
    loop {
        if (&power % divisor).is_zero() {
            return Some((p, &power / divisor));
        }
        power *= base;
        p += 1;
    }
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `|n|` as a signed big integer.
pub fn abs(n: &BigInt) -> BigInt {
    BigInt::from_biguint(Sign::Plus, n.magnitude().clone())
}
