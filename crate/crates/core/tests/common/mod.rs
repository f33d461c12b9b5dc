//! Oracles shared by the integration tests. Nothing here calls the reduction
//! code; every check is computed from the raw letters of a word.
#![allow(dead_code)]

use bsgroup::words::{Gen, GenWord};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Up to `max_syllables` syllables over `gens`, exponents in `[-max_exp, max_exp] \ {0}`.
pub fn random_word<R: Rng>(
    rng: &mut R,
    gens: &[Gen],
    max_syllables: usize,
    max_exp: i64,
) -> GenWord {
    let n = rng.gen_range(0..=max_syllables);
    GenWord::from_syllables((0..n).map(|_| {
        let gen = gens[rng.gen_range(0..gens.len())];
        let mut e = rng.gen_range(1..=max_exp);
        if rng.gen_bool(0.5) {
            e = -e;
        }
        (gen, big(e))
    }))
}

/// `x -> alpha x + beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub alpha: BigRational,
    pub beta: BigRational,
}

impl Affine {
    pub fn identity() -> Self {
        Affine {
            alpha: BigRational::one(),
            beta: BigRational::zero(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Affine) -> Affine {
        Affine {
            alpha: &self.alpha * &other.alpha,
            beta: &self.alpha * &other.beta + &self.beta,
        }
    }
}

/// Image of an `{a, b}` word under `a -> x + 1`, `b -> (l/m) x`, reading the
/// word as a composition of maps (leftmost letter outermost).
pub fn affine_image(l: i64, m: i64, w: &GenWord) -> Affine {
    let s = BigRational::new(big(l), big(m));
    let mut acc = Affine::identity();
    for syl in w.syllables() {
        let f = match syl.gen {
            Gen::A => Affine {
                alpha: BigRational::one(),
                beta: BigRational::from_integer(syl.exp.clone()),
            },
            Gen::B => {
                let e = syl.exp.to_i32().expect("b exponent fits");
                Affine {
                    alpha: s.pow(e),
                    beta: BigRational::zero(),
                }
            }
            Gen::T => panic!("affine oracle is for base words only"),
        };
        acc = acc.compose(&f);
    }
    acc
}

/// Permutation of `0..n` as an image table, composed left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P(pub Vec<usize>);

impl P {
    pub fn identity(n: usize) -> P {
        P((0..n).collect())
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &P) -> P {
        P(self.0.iter().map(|&i| other.0[i]).collect())
    }

    pub fn inverse(&self) -> P {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        P(inv)
    }

    pub fn pow(&self, e: &BigInt) -> P {
        let n = self.0.len();
        let fact: u64 = (1..=n as u64).product();
        let e = e.mod_floor(&BigInt::from(fact)).to_u64().unwrap();
        let mut out = P::identity(n);
        for _ in 0..e {
            out = out.then(self);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }
}

pub fn all_perms(n: usize) -> Vec<P> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<P>) {
        if prefix.len() == used.len() {
            out.push(P(prefix.clone()));
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Image of an `{a, b, t}` word of `G(l,m;k)` with `b` read as `t^-1 a^k t`.
pub fn perm_image(k: i64, a: &P, t: &P, w: &GenWord) -> P {
    let b = t.inverse().then(&a.pow(&big(k))).then(t);
    let mut acc = P::identity(a.0.len());
    for syl in w.syllables() {
        let g = match syl.gen {
            Gen::A => a,
            Gen::B => &b,
            Gen::T => t,
        };
        acc = acc.then(&g.pow(&syl.exp));
    }
    acc
}

/// `t^-1 a^-k t a^l t^-1 a^k t a^-m`, spelled out letter by letter.
pub fn relator_text(l: i64, m: i64, k: i64) -> String {
    format!("t^-1 a^{} t a^{l} t^-1 a^{k} t a^{}", -k, -m)
}

/// Every pair `(a, t)` in `S_n` satisfying the relator of `G(l,m;k)`.
pub fn homs_into_sym(l: i64, m: i64, k: i64, n: usize) -> Vec<(P, P)> {
    let rel: GenWord = relator_text(l, m, k).parse().unwrap();
    let perms = all_perms(n);
    let mut out = Vec::new();
    for a in &perms {
        for t in &perms {
            if perm_image(k, a, t, &rel).is_identity() {
                out.push((a.clone(), t.clone()));
            }
        }
    }
    out
}

/// Whether `a`, `t` generate a nonabelian group.
pub fn nonabelian(a: &P, t: &P) -> bool {
    a.then(t) != t.then(a)
}
