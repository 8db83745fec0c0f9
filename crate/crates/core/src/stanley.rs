//! Stanley polynomials: polynomial functions on diagrams evaluated on the
//! multirectangular family `p × q`, viewed as polynomials in `p_i`, `q_i`.
//!
//! The character `Σ_π` is obtained from the Stanley character formula
//!
//! `Σ_π(p × q) = Σ_{σ1∘σ2=π} Σ_{φ2: C(σ2)→[m]} sign(σ1) Π_{C(σ1)} q_{φ1} Π_{C(σ2)} p_{φ2}`
//!
//! with `φ1(c)` the largest `φ2` label among the cycles of `σ2` meeting `c`.
//! Restricting to transitive pairs gives `κ^{id}(Σ_{k1}, …, Σ_{kl})`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinat::{factorial, falling_factorial, for_each_set_partition, integer_partitions};
use crate::diagram::MultiRectangular;
use crate::error::{Error, Result};
use crate::kerov::EnumerationOptions;
use crate::perm::{multi_cycle, par_fold_factorizations, Permutation};
use crate::poly::{parse_ratio, CumulantPolynomial, Monomial};

/// Exponent vectors `(p_1..p_m, q_1..q_m)` of a monomial.
pub type StanleyKey = (Vec<u32>, Vec<u32>);

#[derive(Clone, PartialEq, Eq)]
pub struct StanleyPolynomial {
    m: usize,
    terms: BTreeMap<StanleyKey, BigRational>,
}

impl std::fmt::Debug for StanleyPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "StanleyPolynomial(m = {}, {})", self.m, self.to_text())
    }
}

impl StanleyPolynomial {
    pub fn zero(m: usize) -> Self {
        StanleyPolynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        let mut out = Self::zero(m);
        out.add_term((vec![0; m], vec![0; m]), c);
        out
    }

    /// `p_i` (1-based `i`).
    pub fn p(m: usize, i: usize) -> Self {
        let mut key = (vec![0; m], vec![0; m]);
        key.0[i - 1] = 1;
        let mut out = Self::zero(m);
        out.add_term(key, BigRational::one());
        out
    }

    /// `q_i` (1-based `i`).
    pub fn q(m: usize, i: usize) -> Self {
        let mut key = (vec![0; m], vec![0; m]);
        key.1[i - 1] = 1;
        let mut out = Self::zero(m);
        out.add_term(key, BigRational::one());
        out
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StanleyKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, key: StanleyKey, c: BigRational) {
        assert!(
            key.0.len() == self.m && key.1.len() == self.m,
            "exponent vectors must have length m"
        );
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The coefficient of `Π p_i^{a_i} q_i^{b_i}`; shorter exponent vectors
    /// are padded with zeros.
    pub fn coefficient(&self, p_exps: &[u32], q_exps: &[u32]) -> BigRational {
        if p_exps.len() > self.m || q_exps.len() > self.m {
            let extra = |v: &[u32]| v.iter().skip(self.m).any(|&e| e != 0);
            if extra(p_exps) || extra(q_exps) {
                return BigRational::zero();
            }
        }
        let pad = |v: &[u32]| {
            let mut out = v.iter().copied().take(self.m).collect::<Vec<_>>();
            out.resize(self.m, 0);
            out
        };
        self.terms
            .get(&(pad(p_exps), pad(q_exps)))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        StanleyPolynomial {
            m: self.m,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "rectangle counts differ");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.m, other.m, "rectangle counts differ");
        let mut out = Self::zero(self.m);
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let p = ka.0.iter().zip(&kb.0).map(|(x, y)| x + y).collect();
                let q = ka.1.iter().zip(&kb.1).map(|(x, y)| x + y).collect();
                out.add_term((p, q), va * vb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(self.m, BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn evaluate(&self, p: &[BigRational], q: &[BigRational]) -> BigRational {
        assert!(p.len() == self.m && q.len() == self.m, "need m values for p and q");
        let mut total = BigRational::zero();
        for ((pe, qe), c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in p.iter().zip(pe) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            for (x, &e) in q.iter().zip(qe) {
                t *= num_traits::pow(x.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    /// Value on a diagram with at most `m` bands; missing bands are empty.
    pub fn evaluate_on(&self, d: &MultiRectangular) -> Result<BigRational> {
        if d.bands() > self.m {
            return Err(Error::InvalidArgument(format!(
                "diagram has {} bands but the polynomial has {} rectangle variables",
                d.bands(),
                self.m
            )));
        }
        let mut p = d.p().to_vec();
        let mut q = d.q().to_vec();
        p.resize(self.m, BigRational::zero());
        q.resize(self.m, BigRational::zero());
        Ok(self.evaluate(&p, &q))
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut sorted: Vec<_> = self.terms.iter().collect();
        // total degree, then q exponents, descending
        sorted.sort_by_key(|((pe, qe), _)| {
            let deg: u32 = pe.iter().chain(qe.iter()).sum();
            std::cmp::Reverse((deg, (*qe).clone(), (*pe).clone()))
        });
        let mut parts = Vec::new();
        for ((pe, qe), c) in sorted {
            let mut factors = Vec::new();
            for (name, exps) in [("p", pe), ("q", qe)] {
                for (i, &e) in exps.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => factors.push(format!("{name}{}", i + 1)),
                        _ => factors.push(format!("{name}{}^{e}", i + 1)),
                    }
                }
            }
            let mono = factors.join(" ");
            let (neg, abs) = if *c < BigRational::zero() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let body = if mono.is_empty() {
                abs.to_string()
            } else if abs.is_one() {
                mono
            } else {
                format!("{abs} {mono}")
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body);
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body);
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body);
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> StanleyJson {
        StanleyJson {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|((p, q), c)| StanleyTermJson {
                    p: p.clone(),
                    q: q.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &StanleyJson) -> Result<Self> {
        let mut out = Self::zero(json.m);
        for t in &json.terms {
            if t.p.len() != json.m || t.q.len() != json.m {
                return Err(Error::Parse("exponent vector length differs from m".into()));
            }
            out.add_term((t.p.clone(), t.q.clone()), parse_ratio(&t.num, &t.den)?);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyJson {
    pub m: usize,
    pub terms: Vec<StanleyTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StanleyTermJson {
    pub p: Vec<u32>,
    pub q: Vec<u32>,
    pub num: String,
    pub den: String,
}

/// Source of the coefficients `[p_1 q_1^{e_1} ⋯ p_l q_l^{e_l}]`.
pub trait MultilinearCoefficients {
    fn multilinear(&self, q_exps: &[u32]) -> BigRational;
}

impl MultilinearCoefficients for StanleyPolynomial {
    fn multilinear(&self, q_exps: &[u32]) -> BigRational {
        let p = vec![1; q_exps.len()];
        self.coefficient(&p, q_exps)
    }
}

/// Only the coefficients of monomials `p_1 ⋯ p_l q_1^{e_1} ⋯ q_l^{e_l}` for
/// `l ≤ max_blocks`. These come from pairs with exactly `l` cycles in `σ2`
/// and bijective `φ2`, so they are much cheaper than the full polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultilinearTable {
    max_blocks: usize,
    coeffs: HashMap<Vec<u32>, i64>,
}

impl MultilinearTable {
    pub fn max_blocks(&self) -> usize {
        self.max_blocks
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl MultilinearCoefficients for MultilinearTable {
    fn multilinear(&self, q_exps: &[u32]) -> BigRational {
        assert!(
            q_exps.len() <= self.max_blocks,
            "table holds at most {} blocks, asked for {}",
            self.max_blocks,
            q_exps.len()
        );
        BigRational::from_integer(BigInt::from(self.coeffs.get(q_exps).copied().unwrap_or(0)))
    }
}

struct PairData {
    sign: i64,
    whites: usize,
    blacks: usize,
    /// white → mask of adjacent blacks
    white_adj: Vec<u64>,
}

fn pair_data(s1: &Permutation, s2: &Permutation, l1: &mut [usize], l2: &mut [usize]) -> PairData {
    let n = s1.degree();
    let whites = s1.cycle_labels_into(l1);
    let blacks = s2.cycle_labels_into(l2);
    let mut white_adj = vec![0u64; whites];
    for x in 0..n {
        white_adj[l1[x]] |= 1 << l2[x];
    }
    PairData {
        sign: if (n - whites).is_multiple_of(2) { 1 } else { -1 },
        whites,
        blacks,
        white_adj,
    }
}

fn is_transitive_pair(d: &PairData) -> bool {
    if d.whites == 0 {
        return true;
    }
    let full = if d.blacks == 64 {
        u64::MAX
    } else {
        (1u64 << d.blacks) - 1
    };
    let mut reached = d.white_adj[0];
    loop {
        let grown = d
            .white_adj
            .iter()
            .filter(|&&m| m & reached != 0)
            .fold(reached, |acc, &m| acc | m);
        if grown == reached {
            break;
        }
        reached = grown;
    }
    reached == full
}

fn target_of(parts: &[usize]) -> Result<Permutation> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(Error::InvalidArgument(
            "cycle lengths must be a nonempty list of positive integers".into(),
        ));
    }
    Ok(multi_cycle(parts))
}

/// Stanley polynomial of `Σ_{parts}` (or of `κ^{id}(Σ_{k1}, …)` when
/// `transitive_only`) in `m` rectangles.
pub fn stanley_character(parts: &[usize], m: usize, transitive_only: bool) -> Result<StanleyPolynomial> {
    stanley_character_with(parts, m, transitive_only, &EnumerationOptions::default())
}

pub fn stanley_character_with(
    parts: &[usize],
    m: usize,
    transitive_only: bool,
    options: &EnumerationOptions,
) -> Result<StanleyPolynomial> {
    if m == 0 {
        return Err(Error::InvalidArgument("at least one rectangle is required".into()));
    }
    let target = target_of(parts)?;
    let n = target.degree();
    let counts: HashMap<StanleyKey, i64> = options.install(|| {
        par_fold_factorizations(
            &target,
            options.shard_depth,
            HashMap::new,
            |acc: &mut HashMap<StanleyKey, i64>, s1, s2| {
                let mut l1 = vec![0; n];
                let mut l2 = vec![0; n];
                let d = pair_data(s1, s2, &mut l1, &mut l2);
                if transitive_only && !is_transitive_pair(&d) {
                    return;
                }
                let mut phi2 = vec![0usize; d.blacks];
                loop {
                    let mut p = vec![0u32; m];
                    let mut q = vec![0u32; m];
                    for &c in &phi2 {
                        p[c] += 1;
                    }
                    for &adj in &d.white_adj {
                        let mut best = 0;
                        let mut rest = adj;
                        while rest != 0 {
                            let b = rest.trailing_zeros() as usize;
                            best = best.max(phi2[b]);
                            rest &= rest - 1;
                        }
                        q[best] += 1;
                    }
                    *acc.entry((p, q)).or_default() += d.sign;
                    // next φ2 in base m
                    let mut i = 0;
                    while i < d.blacks {
                        phi2[i] += 1;
                        if phi2[i] < m {
                            break;
                        }
                        phi2[i] = 0;
                        i += 1;
                    }
                    if i == d.blacks {
                        break;
                    }
                }
            },
            merge_counts,
        )
    });
    let mut out = StanleyPolynomial::zero(m);
    for (k, v) in counts {
        out.add_term(k, BigRational::from_integer(BigInt::from(v)));
    }
    Ok(out)
}

fn merge_counts<K: std::hash::Hash + Eq>(mut a: HashMap<K, i64>, b: HashMap<K, i64>) -> HashMap<K, i64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        visit(&perm);
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

/// Multilinear coefficients of the Stanley polynomial of `Σ_{parts}` (or the
/// transitive cumulant version) for up to `max_blocks` rectangles.
pub fn stanley_multilinear(parts: &[usize], max_blocks: usize, transitive_only: bool) -> Result<MultilinearTable> {
    stanley_multilinear_with(parts, max_blocks, transitive_only, &EnumerationOptions::default())
}

pub fn stanley_multilinear_with(
    parts: &[usize],
    max_blocks: usize,
    transitive_only: bool,
    options: &EnumerationOptions,
) -> Result<MultilinearTable> {
    let target = target_of(parts)?;
    let n = target.degree();
    let coeffs = options.install(|| {
        par_fold_factorizations(
            &target,
            options.shard_depth,
            HashMap::new,
            |acc: &mut HashMap<Vec<u32>, i64>, s1, s2| {
                if s2.cycle_count() > max_blocks {
                    return;
                }
                let mut l1 = vec![0; n];
                let mut l2 = vec![0; n];
                let d = pair_data(s1, s2, &mut l1, &mut l2);
                if transitive_only && !is_transitive_pair(&d) {
                    return;
                }
                for_each_permutation(d.blacks, |phi2| {
                    let mut q = vec![0u32; d.blacks];
                    for &adj in &d.white_adj {
                        let mut best = 0;
                        let mut rest = adj;
                        while rest != 0 {
                            let b = rest.trailing_zeros() as usize;
                            best = best.max(phi2[b]);
                            rest &= rest - 1;
                        }
                        q[best] += 1;
                    }
                    *acc.entry(q).or_default() += d.sign;
                });
            },
            merge_counts,
        )
    });
    let coeffs = coeffs.into_iter().filter(|(_, v)| *v != 0).collect();
    Ok(MultilinearTable { max_blocks, coeffs })
}

type CacheKey = (Vec<usize>, usize, bool);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<StanleyPolynomial>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<StanleyPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Memoized [`stanley_character`].
pub fn stanley_character_cached(parts: &[usize], m: usize, transitive_only: bool) -> Result<Arc<StanleyPolynomial>> {
    let key = (parts.to_vec(), m, transitive_only);
    if let Some(v) = cache().read().expect("stanley cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let value = Arc::new(stanley_character(parts, m, transitive_only)?);
    let mut guard = cache().write().expect("stanley cache poisoned");
    Ok(guard.entry(key).or_insert(value).clone())
}

/// `N_{(a_1,b_1),…,(a_l,b_l)} = Π_r (−1)^{b_r−1} (a_r−1)_{b_r−1} · [p_1 q_1^{a_1−1} ⋯ p_l q_l^{a_l−1}]`.
pub fn nn_quantity(coeffs: &impl MultilinearCoefficients, pairs: &[(u32, u32)]) -> Result<BigRational> {
    if pairs.iter().any(|&(a, b)| a < 2 || b < 1) {
        return Err(Error::InvalidArgument("pairs need a ≥ 2 and b ≥ 1".into()));
    }
    let mut weight = BigInt::one();
    for &(a, b) in pairs {
        weight *= falling_factorial(a as i64 - 1, b - 1);
        if (b - 1) % 2 == 1 {
            weight = -weight;
        }
    }
    let exps: Vec<u32> = pairs.iter().map(|&(a, _)| a - 1).collect();
    Ok(coeffs.multilinear(&exps) * BigRational::from_integer(weight))
}

/// `∂^r F/∂R_{n_1}⋯∂R_{n_r}` at zero as
/// `Σ_{Π ∈ P(r)} (−1)^{r−|Π|} N_{((Σ_{i∈b} n_i, |b|))_{b∈Π}}`.
pub fn r_derivative(coeffs: &impl MultilinearCoefficients, ns: &[u32]) -> Result<BigRational> {
    let r = ns.len();
    let mut total = BigRational::zero();
    let mut err = None;
    for_each_set_partition(r, |blocks| {
        if err.is_some() {
            return;
        }
        let pairs: Vec<(u32, u32)> = blocks
            .iter()
            .map(|b| (b.iter().map(|&i| ns[i]).sum(), b.len() as u32))
            .collect();
        match nn_quantity(coeffs, &pairs) {
            Ok(v) => {
                if (r - blocks.len()).is_multiple_of(2) {
                    total += v;
                } else {
                    total -= v;
                }
            }
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}

/// `K_k` assembled from its derivatives at zero, each obtained from
/// coefficients of the Stanley polynomial of `Σ_k`.
pub fn kerov_via_derivatives(k: usize) -> Result<CumulantPolynomial> {
    kerov_via_derivatives_with(k, &EnumerationOptions::default())
}

pub fn kerov_via_derivatives_with(k: usize, options: &EnumerationOptions) -> Result<CumulantPolynomial> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let top = k as u32 + 1;
    let max_blocks = (top / 2) as usize;
    let table = stanley_multilinear_with(&[k], max_blocks, false, options)?;
    let mut out = CumulantPolynomial::zero();
    for s in 2..=top {
        for ns in integer_partitions(s, 2, s) {
            let d = r_derivative(&table, &ns)?;
            if d.is_zero() {
                continue;
            }
            let m = Monomial::from_indices(&ns);
            let c = d / BigRational::from_integer(m.multiplicity_factorial());
            out.add_term(m, c);
        }
    }
    Ok(out)
}

/// Both sides of
/// `∂²Σ_k/∂R_{l1}∂R_{l2} = [p1 p2 q1^{l1−1} q2^{l2−1}] Σ_k − [p1 p2 q2^{l1+l2−2}] Σ_k`:
/// the derivative read off the Kerov polynomial and the Stanley side.
///
/// The second coefficient has total `q`-degree `l1 + l2 − 2`, the number of
/// cycles of `σ1` in the contributing factorizations.
pub fn quadratic_identity_sides(k: usize, l1: u32, l2: u32) -> Result<(BigRational, BigRational)> {
    if l1 < 2 || l2 < 2 {
        return Err(Error::InvalidArgument("indices must be at least 2".into()));
    }
    let kk = crate::kerov::kerov_polynomial(k)?.polynomial;
    let derivative = kk.derivative_at_zero(&[l1, l2]);
    let table = stanley_multilinear(&[k], 2, false)?;
    let stanley = table.multilinear(&[l1 - 1, l2 - 1]) - table.multilinear(&[0, l1 + l2 - 2]);
    Ok((derivative, stanley))
}

pub fn quadratic_identity_check(k: usize, l1: u32, l2: u32) -> Result<bool> {
    let (a, b) = quadratic_identity_sides(k, l1, l2)?;
    Ok(a == b)
}

/// Stanley polynomial of `S_n` in `m` rectangles, from the band formula
/// `S_n = (1/n) Σ_i [(q_i − P_{i−1})^n − (q_i − P_i)^n + (−P_i)^n − (−P_{i−1})^n]`.
pub fn s_functional_stanley(n: u32, m: usize) -> StanleyPolynomial {
    let mut total = StanleyPolynomial::zero(m);
    if n < 2 {
        return total;
    }
    let minus_one = StanleyPolynomial::constant(m, -BigRational::one());
    let mut prev = StanleyPolynomial::zero(m);
    for i in 1..=m {
        let next = prev.add(&StanleyPolynomial::p(m, i));
        let qi = StanleyPolynomial::q(m, i);
        let term = qi
            .sub(&prev)
            .pow(n)
            .sub(&qi.sub(&next).pow(n))
            .add(&next.mul(&minus_one).pow(n))
            .sub(&prev.mul(&minus_one).pow(n));
        total = total.add(&term);
        prev = next;
    }
    total.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}

/// Stanley polynomial of a polynomial in `S_2, S_3, …` (variable `i` ↦ `S_i`).
pub fn stanley_of_s_polynomial(f: &CumulantPolynomial, m: usize) -> StanleyPolynomial {
    let mut memo: HashMap<u32, StanleyPolynomial> = HashMap::new();
    let mut out = StanleyPolynomial::zero(m);
    for (mono, c) in f.terms() {
        let mut t = StanleyPolynomial::constant(m, c.clone());
        for &(i, e) in mono.pairs() {
            let s = memo.entry(i).or_insert_with(|| s_functional_stanley(i, m)).clone();
            t = t.mul(&s.pow(e));
        }
        out = out.add(&t);
    }
    out
}

/// Mixed derivative `∂^l/∂S_{k_1}⋯∂S_{k_l}` at zero of `K_k` rewritten in
/// the `S` variables.
pub fn kerov_s_derivative(kerov: &CumulantPolynomial, ks: &[u32]) -> BigRational {
    let order = kerov
        .terms()
        .flat_map(|(m, _)| m.pairs().iter().map(|&(i, _)| i))
        .chain(ks.iter().copied())
        .max()
        .unwrap_or(2) as usize;
    let r_in_s = crate::series::r_polynomials_in_s(order);
    kerov
        .substitute(|i| r_in_s[(i - 1) as usize].clone())
        .derivative_at_zero(ks)
}

/// `Π_i s_i!` where `s_i` counts repeated entries.
pub fn multiplicity_factorial(ns: &[u32]) -> BigInt {
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for &n in ns {
        *counts.entry(n).or_default() += 1;
    }
    counts.values().map(|&c| factorial(c)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn small_characters() {
        assert_eq!(stanley_character(&[1], 1, false).unwrap().to_text(), "p1 q1");
        assert_eq!(
            stanley_character(&[2], 1, false).unwrap().to_text(),
            "p1 q1^2 - p1^2 q1"
        );
        let s2 = stanley_character(&[2], 1, false).unwrap();
        assert_eq!(s2.evaluate(&[int(1)], &[int(2)]), int(2));
    }

    #[test]
    fn hook_evaluation() {
        let hook = crate::diagram::Partition::new(vec![2, 1])
            .unwrap()
            .to_multirectangular();
        let s2 = stanley_character(&[2], 2, false).unwrap();
        assert!(s2.evaluate_on(&hook).unwrap().is_zero());
        let s3 = stanley_character(&[3], 2, false).unwrap();
        assert_eq!(s3.evaluate_on(&hook).unwrap(), int(-3));
    }

    #[test]
    fn multilinear_matches_full_polynomial() {
        let full = stanley_character(&[4], 2, false).unwrap();
        let table = stanley_multilinear(&[4], 2, false).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(full.multilinear(&[a, b]), table.multilinear(&[a, b]));
            }
            assert_eq!(full.multilinear(&[a]), table.multilinear(&[a]));
        }
    }

    #[test]
    fn s_functional_top_coefficient() {
        for n in 2..6 {
            let s = s_functional_stanley(n, 2);
            assert_eq!(s.coefficient(&[1, 0], &[n - 1, 0]), int(1));
            assert_eq!(s.coefficient(&[0, 1], &[0, n - 1]), int(1));
        }
        let s2 = s_functional_stanley(2, 1);
        assert_eq!(s2.to_text(), "p1 q1");
    }

    #[test]
    fn nn_examples() {
        let table = stanley_multilinear(&[4], 2, false).unwrap();
        assert_eq!(nn_quantity(&table, &[(5, 1)]).unwrap(), table.multilinear(&[4]));
        assert_eq!(
            nn_quantity(&table, &[(3, 2)]).unwrap(),
            -int(2) * table.multilinear(&[2])
        );
        assert_eq!(
            nn_quantity(&table, &[(2, 1), (3, 2)]).unwrap(),
            nn_quantity(&table, &[(3, 2), (2, 1)]).unwrap()
        );
    }

    #[test]
    fn derivative_route_small() {
        assert_eq!(kerov_via_derivatives(3).unwrap().to_text("R"), "R4 + R2");
        assert_eq!(kerov_via_derivatives(4).unwrap().to_text("R"), "R5 + 5 R3");
    }

    #[test]
    fn json_roundtrip() {
        let s = stanley_character(&[3], 2, false).unwrap();
        assert_eq!(StanleyPolynomial::from_json(&s.to_json()).unwrap(), s);
    }
}
