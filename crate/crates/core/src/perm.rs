//! Permutations of `{1..n}`, cycle decompositions and enumeration of
//! factorizations `σ1 ∘ σ2 = target`.
//!
//! Composition convention, fixed throughout the crate: `(a ∘ b)(x) = a(b(x))`.
//! Public constructors and accessors use 1-based points; the images are
//! stored 0-based.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

/// Cycles of a permutation, fixed points included as 1-cycles.
///
/// Each cycle starts at its minimal element and cycles are sorted by that
/// minimal element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycle lengths, weakly decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { map: (0..n).collect() }
    }

    /// Builds a permutation from its 1-based image sequence.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection of 1..={n}"
                )));
            }
            seen[img - 1] = true;
            map.push(img - 1);
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of degree `n` from disjoint 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || used[x - 1] {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle {cycle:?} is not disjoint within 1..={n}"
                    )));
                }
                used[x - 1] = true;
                let next = cycle[(i + 1) % cycle.len()];
                map[x - 1] = next - 1;
            }
        }
        Ok(Permutation { map })
    }

    #[cfg(test)]
    pub(crate) fn from_map_unchecked(map: Vec<usize>) -> Self {
        Permutation { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    /// Image of the 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.map[x - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    /// Labels every 0-based point with the index of its cycle; cycles are
    /// numbered in order of their minimal element. Returns the number of
    /// cycles.
    pub fn cycle_labels_into(&self, labels: &mut [usize]) -> usize {
        const UNSET: usize = usize::MAX;
        labels.iter_mut().for_each(|l| *l = UNSET);
        let mut count = 0;
        for start in 0..self.map.len() {
            if labels[start] != UNSET {
                continue;
            }
            let mut x = start;
            while labels[x] == UNSET {
                labels[x] = count;
                x = self.map[x];
            }
            count += 1;
        }
        count
    }

    pub fn cycle_count(&self) -> usize {
        let mut labels = vec![0; self.map.len()];
        self.cycle_labels_into(&mut labels)
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.map[x];
            }
            cycles.push(cycle);
        }
        CycleDecomposition { cycles }
    }

    /// `+1` or `-1`, computed from the cycle count: `(-1)^(n - |C(σ)|)`.
    pub fn sign(&self) -> i32 {
        if (self.map.len() - self.cycle_count()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// Cycle notation with fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        let mut any = false;
        for c in cycles.cycles.iter().filter(|c| c.len() > 1) {
            any = true;
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch {
            left: a.degree(),
            right: b.degree(),
        });
    }
    Ok(Permutation {
        map: b.map.iter().map(|&x| a.map[x]).collect(),
    })
}

/// The cycle `1 → 2 → … → k → 1`.
pub fn long_cycle(k: usize) -> Permutation {
    assert!(k >= 1, "long_cycle requires k >= 1");
    Permutation {
        map: (0..k).map(|i| (i + 1) % k).collect(),
    }
}

/// Disjoint consecutive cycles `(1..k1)(k1+1..k1+k2)…`.
pub fn multi_cycle(parts: &[usize]) -> Permutation {
    assert!(!parts.is_empty(), "multi_cycle requires at least one part");
    let mut map = Vec::with_capacity(parts.iter().sum());
    let mut offset = 0;
    for &len in parts {
        assert!(len >= 1, "cycle lengths must be positive");
        map.extend((0..len).map(|i| offset + (i + 1) % len));
        offset += len;
    }
    Permutation { map }
}

/// Whether the group generated by `gens` acts transitively on `{1..n}`.
pub fn is_transitive(gens: &[Permutation], n: usize) -> Result<bool> {
    if let Some(g) = gens.iter().find(|g| g.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: g.degree(),
            right: n,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut dsu = UnionFind::new(n);
    for g in gens {
        for (i, &x) in g.map.iter().enumerate() {
            dsu.union(i, x);
        }
    }
    Ok(dsu.components() == 1)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    count: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
            self.count -= 1;
        }
    }

    pub(crate) fn components(&self) -> usize {
        self.count
    }
}

/// A block of the deterministic partition of `𝔖(n)`: all permutations whose
/// image sequence starts with `prefix` (0-based images).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shard {
    pub prefix: Vec<usize>,
}

/// Shards of `𝔖(n)` keyed by the images of the first `depth` points, in
/// lexicographic order. `depth` is clamped to `n`.
pub fn shards(n: usize, depth: usize) -> Vec<Shard> {
    let depth = depth.min(n);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(depth);
    let mut used = vec![false; n];
    fn rec(n: usize, depth: usize, prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Shard>) {
        if prefix.len() == depth {
            out.push(Shard { prefix: prefix.clone() });
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(n, depth, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    rec(n, depth, &mut prefix, &mut used, &mut out);
    out
}

/// Rearranges `v[from..]` into the next lexicographic permutation. Returns
/// false (leaving the slice sorted ascending) once the last one is passed.
fn next_permutation(v: &mut [usize], from: usize) -> bool {
    let tail = &mut v[from..];
    if tail.len() < 2 {
        return false;
    }
    let mut i = tail.len() - 1;
    while i > 0 && tail[i - 1] >= tail[i] {
        i -= 1;
    }
    if i == 0 {
        tail.reverse();
        return false;
    }
    let mut j = tail.len() - 1;
    while tail[j] <= tail[i - 1] {
        j -= 1;
    }
    tail.swap(i - 1, j);
    tail[i..].reverse();
    true
}

/// Visits every pair `(σ1, σ2)` with `σ1 ∘ σ2 = target` and `σ2` in the
/// shard, `σ2` in lexicographic order of its image sequence.
pub fn enumerate_factorizations_in_shard(
    target: &Permutation,
    shard: &Shard,
    mut visit: impl FnMut(&Permutation, &Permutation),
) {
    let n = target.degree();
    let mut used = vec![false; n];
    for &p in &shard.prefix {
        assert!(p < n && !used[p], "shard prefix is not injective");
        used[p] = true;
    }
    let mut s2 = shard.prefix.clone();
    s2.extend((0..n).filter(|&v| !used[v]));
    let mut sigma2 = Permutation { map: s2 };
    let mut sigma1 = Permutation { map: vec![0; n] };
    let from = shard.prefix.len();
    loop {
        // σ1(σ2(x)) = target(x)
        for x in 0..n {
            sigma1.map[sigma2.map[x]] = target.map[x];
        }
        visit(&sigma1, &sigma2);
        if !next_permutation(&mut sigma2.map, from) {
            break;
        }
    }
}

/// Visits every factorization `σ1 ∘ σ2 = target`; `σ2` ranges over all of
/// `𝔖(n)` in lexicographic order and `σ1 = target ∘ σ2⁻¹`.
pub fn enumerate_factorizations(target: &Permutation, visit: impl FnMut(&Permutation, &Permutation)) {
    enumerate_factorizations_in_shard(target, &Shard { prefix: Vec::new() }, visit);
}

/// Sharded parallel fold over all factorizations of `target`.
///
/// Every shard starts from `init()`, folds its pairs with `visit`, and the
/// shard accumulators are merged with `combine`, which must be associative
/// and commutative for the result to be independent of scheduling. Runs on
/// the current rayon pool.
pub fn par_fold_factorizations<A, I, V, C>(target: &Permutation, shard_depth: usize, init: I, visit: V, combine: C) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &Permutation, &Permutation) + Sync,
    C: Fn(A, A) -> A + Sync,
{
    shards(target.degree(), shard_depth)
        .into_par_iter()
        .map(|shard| {
            let mut acc = init();
            enumerate_factorizations_in_shard(target, &shard, |s1, s2| visit(&mut acc, s1, s2));
            acc
        })
        .reduce(&init, &combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images).unwrap()
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        let c = long_cycle(3);
        assert_eq!(compose(&id, &c).unwrap(), c);
        let c_inv = Permutation::from_cycles(3, &[&[1, 3, 2]]).unwrap();
        assert!(compose(&c, &c_inv).unwrap().is_identity());
        assert_eq!(compose(&c, &c).unwrap(), c_inv);
        assert_eq!(
            compose(&c, &Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn cycles_examples() {
        assert_eq!(
            Permutation::identity(3).cycles().cycles,
            vec![vec![1], vec![2], vec![3]]
        );
        assert_eq!(long_cycle(5).cycles().cycles, vec![vec![1, 2, 3, 4, 5]]);
        assert_eq!(p(&[2, 1, 4, 3]).cycles().cycles, vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(p(&[3, 1, 2, 4]).cycles().cycles, vec![vec![1, 3, 2], vec![4]]);
    }

    #[test]
    fn long_and_multi_cycles() {
        assert!(long_cycle(1).is_identity());
        assert_eq!(long_cycle(2).images(), vec![2, 1]);
        assert_eq!(long_cycle(4).images(), vec![2, 3, 4, 1]);
        assert_eq!(multi_cycle(&[3]), long_cycle(3));
        assert!(multi_cycle(&[1, 1]).is_identity());
        assert_eq!(multi_cycle(&[2, 2]).images(), vec![2, 1, 4, 3]);
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&[long_cycle(5)], 5).unwrap());
        assert!(!is_transitive(&[Permutation::identity(2)], 2).unwrap());
        assert!(!is_transitive(&[p(&[2, 1, 4, 3])], 4).unwrap());
        assert!(is_transitive(&[p(&[2, 1, 4, 3]), p(&[1, 3, 2, 4])], 4).unwrap());
        assert!(is_transitive(&[long_cycle(3)], 4).is_err());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_cycles(3, &[&[1, 2], &[2, 3]]).is_err());
    }

    #[test]
    fn factorization_counts() {
        let mut count = 0;
        enumerate_factorizations(&long_cycle(1), |_, _| count += 1);
        assert_eq!(count, 1);
        let mut count = 0;
        enumerate_factorizations(&long_cycle(3), |_, _| count += 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn five_cycle_linear_structure() {
        // Brute force over 𝔖(5) without the enumerator: σ2 a 5-cycle and σ1
        // with four cycles.
        let c = long_cycle(5);
        let mut brute = 0;
        let mut all: Vec<usize> = (0..5).collect();
        loop {
            let s2 = Permutation::from_map_unchecked(all.clone());
            let s1 = compose(&c, &s2.inverse()).unwrap();
            if s2.cycle_count() == 1 && s1.cycle_count() == 4 {
                brute += 1;
            }
            if !next_permutation(&mut all, 0) {
                break;
            }
        }
        let mut total = 0;
        let mut hits = 0;
        enumerate_factorizations(&c, |s1, s2| {
            total += 1;
            if s2.cycle_count() == 1 && s1.cycle_count() == 4 {
                hits += 1;
            }
        });
        assert_eq!(total, 120);
        // σ1 = c∘σ2⁻¹ is even, while four cycles in degree 5 means a transposition
        assert_eq!(brute, 0);
        assert_eq!(hits, brute);

        // planar pairs are counted by Narayana numbers
        let mut by_cycles = [0usize; 6];
        enumerate_factorizations(&c, |s1, s2| {
            if s1.cycle_count() + s2.cycle_count() == 6 {
                by_cycles[s2.cycle_count()] += 1;
            }
        });
        assert_eq!(by_cycles, [0, 1, 10, 20, 10, 1]);
    }

    #[test]
    fn lexicographic_order() {
        let mut seen = Vec::new();
        enumerate_factorizations(&long_cycle(4), |_, s2| seen.push(s2.images()));
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn shards_partition_the_group() {
        for depth in 0..=4 {
            let mut seen = Vec::new();
            for shard in shards(4, depth) {
                enumerate_factorizations_in_shard(&long_cycle(4), &shard, |_, s2| seen.push(s2.images()));
            }
            let mut unique = seen.clone();
            unique.sort();
            unique.dedup();
            assert_eq!(seen.len(), 24, "depth {depth}");
            assert_eq!(unique.len(), 24, "depth {depth}");
        }
    }
}
