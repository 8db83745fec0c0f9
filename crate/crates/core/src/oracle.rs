//! Ground-truth characters of symmetric groups via the Murnaghan–Nakayama
//! rule, used to check the polynomial formulas on concrete diagrams.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinat::{factorial, falling_factorial, for_each_set_partition};
use crate::diagram::Partition;
use crate::error::{Error, Result};

type MemoKey = (Vec<u32>, Vec<u32>);

fn memo() -> &'static RwLock<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Beta-numbers `λ_i + (L − i)` of a partition with `L` rows (strictly
/// decreasing).
fn beta_numbers(rows: &[u32]) -> Vec<u32> {
    let l = rows.len() as u32;
    rows.iter().enumerate().map(|(i, &r)| r + l - 1 - i as u32).collect()
}

fn from_beta(beta: &[u32]) -> Vec<u32> {
    let mut beta = beta.to_vec();
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let l = beta.len() as u32;
    let mut rows: Vec<u32> = beta.iter().enumerate().map(|(i, &b)| b - (l - 1 - i as u32)).collect();
    while rows.last() == Some(&0) {
        rows.pop();
    }
    rows
}

/// `χ^λ(μ)` for `|μ| = |λ|`. `mu` lists cycle lengths in any order.
pub fn mn_character(lambda: &Partition, mu: &[u32]) -> Result<BigInt> {
    let total: u32 = mu.iter().sum();
    if total != lambda.size() || mu.contains(&0) {
        return Err(Error::InvalidPartition(format!(
            "cycle type {mu:?} is not a partition of |λ| = {}",
            lambda.size()
        )));
    }
    let mut mu = mu.to_vec();
    mu.sort_unstable_by(|a, b| b.cmp(a));
    Ok(character_rec(lambda.rows(), &mu))
}

fn character_rec(rows: &[u32], mu: &[u32]) -> BigInt {
    if mu.is_empty() {
        return if rows.is_empty() { BigInt::one() } else { BigInt::zero() };
    }
    let key = (rows.to_vec(), mu.to_vec());
    if let Some(v) = memo().read().expect("character memo poisoned").get(&key) {
        return v.clone();
    }
    // remove a rim hook of length mu[0]
    let r = mu[0];
    let rest = &mu[1..];
    let beta = beta_numbers(rows);
    let mut value = BigInt::zero();
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        let sub = character_rec(&from_beta(&next), rest);
        if between % 2 == 0 {
            value += sub;
        } else {
            value -= sub;
        }
    }
    memo()
        .write()
        .expect("character memo poisoned")
        .insert(key, value.clone());
    value
}

/// `χ^λ(1^n)`, the dimension of the irreducible representation.
pub fn dimension(lambda: &Partition) -> BigInt {
    let ones = vec![1u32; lambda.size() as usize];
    mn_character(lambda, &ones).expect("identity class fits")
}

/// `Σ^λ_{k1,…,kl} = (n)_k χ^λ(k1,…,kl,1^{n−k}) / χ^λ(1^n)` when
/// `k = Σ k_i ≤ n = |λ|`, and zero otherwise.
pub fn normalized_character(lambda: &Partition, parts: &[u32]) -> Result<BigRational> {
    if parts.contains(&0) {
        return Err(Error::InvalidArgument("cycle lengths must be positive".into()));
    }
    let n = lambda.size();
    let k: u32 = parts.iter().sum();
    if k > n {
        return Ok(BigRational::zero());
    }
    let mut mu = parts.to_vec();
    mu.extend(std::iter::repeat_n(1, (n - k) as usize));
    let chi = mn_character(lambda, &mu)?;
    let dim = dimension(lambda);
    Ok(BigRational::new(falling_factorial(n as i64, k) * chi, dim))
}

/// `κ^{id}(Σ_{k1}, …, Σ_{kl})` by Möbius inversion over set partitions of the
/// arguments: `Σ_Π (−1)^{|Π|−1} (|Π|−1)! Π_{b∈Π} Σ_{(k_i)_{i∈b}}`.
pub fn cycle_cumulant(lambda: &Partition, ks: &[u32]) -> Result<BigRational> {
    let mut cache: HashMap<Vec<u32>, BigRational> = HashMap::new();
    let mut total = BigRational::zero();
    let mut err = None;
    for_each_set_partition(ks.len(), |blocks| {
        if err.is_some() {
            return;
        }
        let nb = blocks.len() as u32;
        let mut term = BigRational::from_integer(factorial(nb - 1));
        if nb.is_multiple_of(2) {
            term = -term;
        }
        for b in blocks {
            let mut sub: Vec<u32> = b.iter().map(|&i| ks[i]).collect();
            sub.sort_unstable_by(|a, b| b.cmp(a));
            let v = match cache.get(&sub) {
                Some(v) => v.clone(),
                None => match normalized_character(lambda, &sub) {
                    Ok(v) => {
                        cache.insert(sub, v.clone());
                        v
                    }
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                },
            };
            term *= v;
        }
        total += term;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
