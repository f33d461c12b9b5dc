//! Homomorphisms of `G(l,m;k)` onto subgroups of small symmetric groups.
//!
//! A homomorphism is a pair `(alpha, tau)` of permutations (images of `a`
//! and `t`) killing the relator. The scan counts all of them and checks
//! whether every image `<alpha, tau>` is cyclic.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{GPresentation, GroupError};

pub const MAX_DEGREE: usize = 8;

/// A permutation of `0..n`, acting on the right: `(p * q)(i) = q(p(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i as u8);
                i = self.0[i] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    pub fn pow(&self, e: &BigInt) -> Perm {
        let mut out = vec![0u8; self.0.len()];
        for cycle in self.cycles() {
            let len = BigInt::from(cycle.len());
            let shift: usize = e
                .mod_floor(&len)
                .try_into()
                .expect("shift below cycle length");
            for (pos, &x) in cycle.iter().enumerate() {
                out[x as usize] = cycle[(pos + shift) % cycle.len()];
            }
        }
        Perm(out)
    }

    fn pow_small(&self, e: u64) -> Perm {
        self.pow(&BigInt::from(e))
    }
}

impl fmt::Display for Perm {
    /// Cycle notation on points `1..=n`, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut out = vec![Perm(cur.clone())];
    // next_permutation
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm(cur.clone()));
    }
    out
}

/// Is the subgroup generated by two permutations cyclic?
pub fn generated_group_is_cyclic(x: &Perm, y: &Perm) -> bool {
    if x.then(y) != y.then(x) {
        return false;
    }
    // Abelian: the group is { x^i y^j }; cyclic iff some element has full order.
    let (ox, oy) = (x.order(), y.order());
    let mut elems = HashSet::new();
    for i in 0..ox {
        let xi = x.pow_small(i);
        for j in 0..oy {
            elems.insert(xi.then(&y.pow_small(j)));
        }
    }
    let size = elems.len() as u64;
    elems.iter().any(|e| e.order() == size)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub degree: usize,
    pub total_homs: u64,
    pub noncyclic_homs: u64,
    pub all_cyclic: bool,
    /// `(alpha, tau)` images of `a` and `t` with non-cyclic image, in cycle notation.
    pub witness: Option<(String, String)>,
    #[serde(skip)]
    pub witness_perms: Option<(Perm, Perm)>,
}

struct Relator {
    neg_k: BigInt,
    l: BigInt,
    k: BigInt,
    neg_m: BigInt,
}

impl Relator {
    fn new(pres: &GPresentation) -> Self {
        Relator {
            neg_k: -pres.k(),
            l: pres.l().clone(),
            k: pres.k().clone(),
            neg_m: -pres.m(),
        }
    }

    /// Precomputed powers of `alpha` needed for the relator.
    fn powers(&self, alpha: &Perm) -> [Perm; 4] {
        [
            alpha.pow(&self.neg_k),
            alpha.pow(&self.l),
            alpha.pow(&self.k),
            alpha.pow(&self.neg_m),
        ]
    }
}

// t^-1 a^-k t a^l t^-1 a^k t a^-m
fn kills_relator(powers: &[Perm; 4], tau: &Perm, tau_inv: &Perm) -> bool {
    tau_inv
        .then(&powers[0])
        .then(tau)
        .then(&powers[1])
        .then(tau_inv)
        .then(&powers[2])
        .then(tau)
        .then(&powers[3])
        .is_identity()
}

#[derive(Default)]
struct Tally {
    total: u64,
    noncyclic: u64,
    witness: Option<(Perm, Perm)>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.noncyclic += other.noncyclic;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }
}

fn scan_tau(alpha_powers: &[(Perm, [Perm; 4])], tau: &Perm, weight: u64) -> Tally {
    let tau_inv = tau.inverse();
    let mut tally = Tally::default();
    for (alpha, powers) in alpha_powers {
        if kills_relator(powers, tau, &tau_inv) {
            tally.total += weight;
            if !generated_group_is_cyclic(alpha, tau) {
                tally.noncyclic += weight;
                if tally.witness.is_none() {
                    tally.witness = Some((alpha.clone(), tau.clone()));
                }
            }
        }
    }
    tally
}

fn check_degree(degree: usize) -> Result<(), GroupError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(GroupError::DegreeOutOfRange(degree));
    }
    Ok(())
}

fn report(degree: usize, tally: Tally) -> QuotientReport {
    QuotientReport {
        degree,
        total_homs: tally.total,
        noncyclic_homs: tally.noncyclic,
        all_cyclic: tally.noncyclic == 0,
        witness: tally
            .witness
            .as_ref()
            .map(|(a, t)| (a.to_string(), t.to_string())),
        witness_perms: tally.witness,
    }
}

fn run(pres: &GPresentation, degree: usize, taus: Vec<(Perm, u64)>) -> QuotientReport {
    let relator = Relator::new(pres);
    let alpha_powers: Vec<_> = all_perms(degree)
        .into_iter()
        .map(|a| {
            let p = relator.powers(&a);
            (a, p)
        })
        .collect();
    // Ordered collect keeps the witness deterministic.
    let tallies: Vec<Tally> = taus
        .par_iter()
        .map(|(tau, weight)| scan_tau(&alpha_powers, tau, *weight))
        .collect();
    let tally = tallies.into_iter().fold(Tally::default(), Tally::merge);
    report(degree, tally)
}

/// Scans `Hom(G, S_degree)`, taking one `tau` per conjugacy class and
/// weighting by class size (the relator condition and cyclicity are both
/// invariant under simultaneous conjugation).
pub fn finite_quotient_scan(
    pres: &GPresentation,
    degree: usize,
) -> Result<QuotientReport, GroupError> {
    check_degree(degree)?;
    let taus = class_representatives(degree);
    Ok(run(pres, degree, taus))
}

/// The same scan over every one of the `(degree!)^2` pairs.
pub fn finite_quotient_scan_exhaustive(
    pres: &GPresentation,
    degree: usize,
) -> Result<QuotientReport, GroupError> {
    check_degree(degree)?;
    let taus = all_perms(degree).into_iter().map(|t| (t, 1)).collect();
    Ok(run(pres, degree, taus))
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// One permutation per cycle type, with the size of its conjugacy class.
fn class_representatives(n: usize) -> Vec<(Perm, u64)> {
    partitions(n, n)
        .into_iter()
        .map(|parts| {
            let mut images = vec![0u8; n];
            let mut start = 0;
            for &len in &parts {
                for i in 0..len {
                    images[start + i] = (start + (i + 1) % len) as u8;
                }
                start += len;
            }
            // centralizer order: prod over lengths j of j^(c_j) * c_j!
            let mut centralizer = 1u64;
            for len in 1..=n {
                let c = parts.iter().filter(|&&p| p == len).count();
                centralizer *= (len as u64).pow(c as u32) * factorial(c);
            }
            (Perm(images), factorial(n) / centralizer)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(l: i64, m: i64, k: i64) -> GPresentation {
        GPresentation::new(l, m, k).unwrap()
    }

    #[test]
    fn perm_basics() {
        let p = Perm::from_images(vec![1, 2, 0, 4, 3]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(p.pow(&BigInt::from(6)).is_identity());
        assert_eq!(p.pow(&BigInt::from(-1)), p.inverse());
        assert_eq!(p.pow(&BigInt::from(7)), p);
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn enumeration_sizes() {
        for n in 1..=6 {
            let all = all_perms(n);
            assert_eq!(all.len() as u64, factorial(n));
            assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
            let classes = class_representatives(n);
            assert_eq!(classes.iter().map(|c| c.1).sum::<u64>(), factorial(n));
        }
        assert_eq!(class_representatives(8).len(), 22);
    }

    #[test]
    fn cyclicity() {
        let c3 = Perm::from_images(vec![1, 2, 0, 3, 4, 5]);
        let d3 = Perm::from_images(vec![0, 1, 2, 4, 5, 3]);
        let swap = Perm::from_images(vec![1, 0, 2, 3, 4, 5]);
        assert!(!generated_group_is_cyclic(&c3, &d3)); // C3 x C3
        assert!(!generated_group_is_cyclic(&c3, &swap)); // S3
        let c2 = Perm::from_images(vec![0, 1, 2, 4, 3, 5]);
        assert!(generated_group_is_cyclic(&c3, &c2)); // C6
        assert!(generated_group_is_cyclic(&c3, &c3.inverse()));
    }

    #[test]
    fn degree_bounds() {
        assert!(finite_quotient_scan(&g(2, 1, 1), 0).is_err());
        assert!(finite_quotient_scan(&g(2, 1, 1), 9).is_err());
        let r = finite_quotient_scan(&g(18, 2, 2), 1).unwrap();
        assert_eq!(r.total_homs, 1);
        assert!(r.all_cyclic);
    }

    #[test]
    fn baumslag_group_degree_four() {
        let r = finite_quotient_scan_exhaustive(&g(2, 1, 1), 4).unwrap();
        assert!(r.all_cyclic);
        assert!(r.witness.is_none());
    }

    #[test]
    fn pruned_scan_agrees_with_exhaustive() {
        for p in [g(2, 1, 1), g(12, 3, 3), g(-4, 3, 2), g(6, 2, 2)] {
            for d in 1..=4 {
                let a = finite_quotient_scan(&p, d).unwrap();
                let b = finite_quotient_scan_exhaustive(&p, d).unwrap();
                assert_eq!(a.total_homs, b.total_homs, "{p} d={d}");
                assert_eq!(a.noncyclic_homs, b.noncyclic_homs, "{p} d={d}");
                assert_eq!(a.all_cyclic, b.all_cyclic);
            }
        }
    }
}
