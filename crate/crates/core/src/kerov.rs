//! Kerov polynomials as generating functions of triples `(σ1, σ2, q)`.
//!
//! The coefficient of `Π_b R_{q(b)}` in `K_k` counts factorizations
//! `σ1 ∘ σ2 = (1, 2, …, k)` together with a coloring `q` of the cycles of
//! `σ2` by integers `≥ 2` such that `Σ q = |C(σ1)| + |C(σ2)|` and the
//! marriage condition holds. Generalized polynomials `K_{k1,…,kl}` use the
//! target `(1…k1)(k1+1…k1+k2)⋯` and keep only transitive pairs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinat::compositions;
use crate::error::{Error, Result};
use crate::marriage::{condition_e_with_sizes, prune_disconnecting_edge, IntersectionGraph};
use crate::perm::{long_cycle, multi_cycle, par_fold_factorizations, Permutation};
use crate::poly::{CumulantPolynomial, Monomial};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Factorizations enumerated.
    pub visited: u64,
    /// Factorizations discarded by the disconnecting-edge rule.
    pub pruned: u64,
    /// Triples `(σ1, σ2, q)` counted.
    pub triples: u64,
}

impl EnumerationStats {
    fn merge(self, other: EnumerationStats) -> EnumerationStats {
        EnumerationStats {
            visited: self.visited + other.visited,
            pruned: self.pruned + other.pruned,
            triples: self.triples + other.triples,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KerovResult {
    pub spec: Vec<usize>,
    pub polynomial: CumulantPolynomial,
    pub stats: EnumerationStats,
}

/// Thread budget and shard granularity for the enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// `None` runs on the global rayon pool.
    pub threads: Option<usize>,
    /// Number of leading images of `σ2` fixed per shard.
    pub shard_depth: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            threads: None,
            shard_depth: 2,
        }
    }
}

impl EnumerationOptions {
    pub fn with_threads(threads: usize) -> Self {
        EnumerationOptions {
            threads: Some(threads),
            ..Self::default()
        }
    }

    /// Runs `f` on a pool of the requested size.
    pub(crate) fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.threads {
            None => f(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .expect("failed to build thread pool")
                .install(f),
        }
    }
}

#[derive(Default)]
struct Accumulator {
    counts: HashMap<Vec<u32>, u64>,
    stats: EnumerationStats,
}

impl Accumulator {
    fn merge(mut self, other: Accumulator) -> Accumulator {
        if self.counts.len() < other.counts.len() {
            return other.merge(self);
        }
        for (k, v) in other.counts {
            *self.counts.entry(k).or_default() += v;
        }
        self.stats = self.stats.merge(other.stats);
        self
    }
}

/// Intersection graph built from reusable label buffers.
fn graph_of(s1: &Permutation, s2: &Permutation, l1: &mut [usize], l2: &mut [usize]) -> IntersectionGraph {
    let whites = s1.cycle_labels_into(l1);
    let blacks = s2.cycle_labels_into(l2);
    let mut adjacency = vec![0u64; blacks];
    for (&w, &b) in l1.iter().zip(l2.iter()) {
        adjacency[b] |= 1 << w;
    }
    IntersectionGraph::from_adjacency(whites, adjacency)
}

fn count_triples(
    target: &Permutation,
    transitive_only: bool,
    options: &EnumerationOptions,
) -> (CumulantPolynomial, EnumerationStats) {
    let n = target.degree();
    let acc = options.install(|| {
        par_fold_factorizations(
            target,
            options.shard_depth,
            Accumulator::default,
            |acc, s1, s2| {
                acc.stats.visited += 1;
                let mut l1 = vec![0usize; n];
                let mut l2 = vec![0usize; n];
                let g = graph_of(s1, s2, &mut l1, &mut l2);
                let (w, b) = (g.whites(), g.blacks());
                // colors are ≥ 2 and sum to w + b
                if w < b {
                    return;
                }
                if transitive_only && !g.is_connected() {
                    return;
                }
                if prune_disconnecting_edge(&g) {
                    acc.stats.pruned += 1;
                    return;
                }
                let sizes = g.neighborhood_sizes();
                for q in compositions((w + b) as u32, b, 2) {
                    if condition_e_with_sizes(&sizes, &q) {
                        let mut key = q;
                        key.sort_unstable_by(|x, y| y.cmp(x));
                        *acc.counts.entry(key).or_default() += 1;
                        acc.stats.triples += 1;
                    }
                }
            },
            Accumulator::merge,
        )
    });
    let polynomial = CumulantPolynomial::from_terms(
        acc.counts
            .into_iter()
            .map(|(k, v)| (Monomial::from_indices(&k), BigRational::from_integer(BigInt::from(v)))),
    );
    (polynomial, acc.stats)
}

/// `K_k`, the Kerov polynomial of the `k`-cycle.
pub fn kerov_polynomial(k: usize) -> Result<KerovResult> {
    kerov_polynomial_with(k, &EnumerationOptions::default())
}

pub fn kerov_polynomial_with(k: usize, options: &EnumerationOptions) -> Result<KerovResult> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let (polynomial, stats) = count_triples(&long_cycle(k), false, options);
    Ok(KerovResult {
        spec: vec![k],
        polynomial,
        stats,
    })
}

/// `K_{k1,…,kl}`, equal to `(−1)^{l−1} κ^{id}(Σ_{k1}, …, Σ_{kl})` as a
/// polynomial in free cumulants.
pub fn generalized_kerov(parts: &[usize]) -> Result<KerovResult> {
    generalized_kerov_with(parts, &EnumerationOptions::default())
}

pub fn generalized_kerov_with(parts: &[usize], options: &EnumerationOptions) -> Result<KerovResult> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidArgument(
            "cycle lengths must be a nonempty list of positive integers".into(),
        ));
    }
    let (polynomial, stats) = count_triples(&multi_cycle(parts), true, options);
    Ok(KerovResult {
        spec: parts.to_vec(),
        polynomial,
        stats,
    })
}

/// Number of factorizations of the `k`-cycle with `σ2` a single cycle and
/// `σ1` having `l − 1` cycles; the coefficient of `R_l` in `K_k`.
pub fn linear_coefficient(k: usize, l: usize) -> u64 {
    if k == 0 || l < 2 {
        return 0;
    }
    let mut count = 0;
    crate::perm::enumerate_factorizations(&long_cycle(k), |s1, s2| {
        if s2.cycle_count() == 1 && s1.cycle_count() == l - 1 {
            count += 1;
        }
    });
    count
}

/// Number of triples `(σ1, σ2, q)` with `σ2` two cycles, `σ1` having
/// `l1 + l2 − 2` cycles, `q` a surjection of the two cycles onto `{l1, l2}`
/// and every cycle `c` of `σ2` meeting at least `q(c)` cycles of `σ1`.
///
/// This is the coefficient of the monomial `R_{l1} R_{l2}` in `K_k`.
pub fn quadratic_coefficient(k: usize, l1: usize, l2: usize) -> u64 {
    quadratic_count(k, l1, l2, false)
}

/// Same triples with `q` replaced by a bijective labelling of the two cycles
/// by `{1, 2}`; equals `∂²K_k/∂R_{l1}∂R_{l2}` at zero, i.e. twice the
/// monomial coefficient when `l1 = l2`.
pub fn quadratic_labelled_count(k: usize, l1: usize, l2: usize) -> u64 {
    quadratic_count(k, l1, l2, true)
}

fn quadratic_count(k: usize, l1: usize, l2: usize, labelled: bool) -> u64 {
    if k == 0 || l1 < 2 || l2 < 2 {
        return 0;
    }
    let assignments: Vec<[usize; 2]> = if l1 == l2 && !labelled {
        vec![[l1, l1]]
    } else {
        vec![[l1, l2], [l2, l1]]
    };
    let mut count = 0;
    crate::perm::enumerate_factorizations(&long_cycle(k), |s1, s2| {
        if s2.cycle_count() != 2 || s1.cycle_count() != l1 + l2 - 2 {
            return;
        }
        let g = crate::marriage::build_graph(s1, s2);
        let degrees: Vec<usize> = g.adjacency().iter().map(|m| m.count_ones() as usize).collect();
        for a in &assignments {
            if degrees[0] >= a[0] && degrees[1] >= a[1] {
                count += 1;
            }
        }
    });
    count
}

fn is_odd_prime(p: u32) -> bool {
    p >= 3
        && p % 2 == 1
        && (3..)
            .step_by(2)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// `((K_p − R_{p+1} + 2R_2)/p, (K_{p−1} − R_p)/p)` for an odd prime `p`,
/// failing if either quotient has a non-integral or negative coefficient.
pub fn prime_divisibility_report(p: u32) -> Result<(CumulantPolynomial, CumulantPolynomial)> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let kp = kerov_polynomial(p as usize)?.polynomial;
    let kp1 = kerov_polynomial(p as usize - 1)?.polynomial;
    let inv = BigRational::new(BigInt::one(), BigInt::from(p));
    let mut first = kp;
    first.add_term(Monomial::var(p + 1), -BigRational::one());
    first.add_term(Monomial::var(2), BigRational::from_integer(2.into()));
    let first = first.scale(&inv);
    let mut second = kp1;
    second.add_term(Monomial::var(p), -BigRational::one());
    let second = second.scale(&inv);
    for (name, poly) in [("(K_p - R_{p+1} + 2R_2)/p", &first), ("(K_{p-1} - R_p)/p", &second)] {
        if !poly.is_integral() {
            return Err(Error::Divisibility(format!(
                "{name} has a non-integral coefficient for p = {p}: {}",
                poly.to_text("R")
            )));
        }
        if !poly.all_nonnegative() {
            return Err(Error::Divisibility(format!(
                "{name} has a negative coefficient for p = {p}: {}",
                poly.to_text("R")
            )));
        }
    }
    Ok((first, second))
}

/// Whether every coefficient is a positive integer and every variable index
/// is at least 2.
pub fn is_kerov_shaped(poly: &CumulantPolynomial) -> bool {
    poly.terms()
        .all(|(m, c)| c.is_integer() && *c > BigRational::zero() && m.pairs().iter().all(|&(i, _)| i >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(k: usize) -> String {
        kerov_polynomial(k).unwrap().polynomial.to_text("R")
    }

    #[test]
    fn small_kerov_polynomials() {
        assert_eq!(text(1), "R2");
        assert_eq!(text(2), "R3");
        assert_eq!(text(3), "R4 + R2");
        assert_eq!(text(4), "R5 + 5 R3");
    }

    #[test]
    fn generalized_trivial_cases() {
        assert_eq!(generalized_kerov(&[1, 1]).unwrap().polynomial.to_text("R"), "R2");
        assert_eq!(
            generalized_kerov(&[4]).unwrap().polynomial,
            kerov_polynomial(4).unwrap().polynomial
        );
    }

    #[test]
    fn thread_count_does_not_change_output() {
        let a = kerov_polynomial_with(6, &EnumerationOptions::with_threads(1)).unwrap();
        let b = kerov_polynomial_with(
            6,
            &EnumerationOptions {
                threads: Some(3),
                shard_depth: 3,
            },
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn linear_and_quadratic() {
        assert_eq!(linear_coefficient(5, 2), 8);
        assert_eq!(linear_coefficient(4, 5), 1);
        assert_eq!(quadratic_coefficient(5, 2, 2), 5);
        assert_eq!(quadratic_labelled_count(5, 2, 2), 10);
        assert_eq!(quadratic_coefficient(3, 2, 2), 0);
    }

    #[test]
    fn divisibility_p3() {
        let (a, b) = prime_divisibility_report(3).unwrap();
        assert_eq!(a, CumulantPolynomial::var(2));
        assert!(b.is_zero());
        assert_eq!(prime_divisibility_report(9), Err(Error::NotOddPrime(9)));
        assert_eq!(prime_divisibility_report(2), Err(Error::NotOddPrime(2)));
    }
}
