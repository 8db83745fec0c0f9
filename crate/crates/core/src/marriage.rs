//! Bipartite intersection graphs of factorizations and the marriage
//! condition on colorings of their black vertices, together with the
//! Euler-characteristic lemmas behind it.
//!
//! White vertices are the cycles of `σ1`, black vertices the cycles of `σ2`.
//! A coloring `q` assigns an integer `q(b) ≥ 2` to each black vertex.
//! Adjacency is stored as one bitmask of whites per black.

use crate::perm::Permutation;

/// Bipartite graph on the cycles of `σ1` (white) and `σ2` (black), with an
/// edge between two cycles that share a point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    whites: usize,
    adjacency: Vec<u64>,
    white_supports: Vec<Vec<usize>>,
    black_supports: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    /// Graph given directly by black → white-set adjacency masks.
    pub fn from_adjacency(whites: usize, adjacency: Vec<u64>) -> Self {
        assert!(whites <= 64, "at most 64 white vertices are supported");
        assert!(
            adjacency.iter().all(|&m| whites == 64 || m >> whites == 0),
            "adjacency refers to a missing white vertex"
        );
        IntersectionGraph {
            whites,
            adjacency,
            white_supports: Vec::new(),
            black_supports: Vec::new(),
        }
    }

    pub fn whites(&self) -> usize {
        self.whites
    }

    pub fn blacks(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adjacency
    }

    /// Supports (1-based points) of the white cycles, in the order of
    /// `σ1.cycles()`. Empty for graphs built from adjacency masks.
    pub fn white_supports(&self) -> &[Vec<usize>] {
        &self.white_supports
    }

    pub fn black_supports(&self) -> &[Vec<usize>] {
        &self.black_supports
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// `N(A)`: the whites adjacent to some black in the mask `a`.
    pub fn neighborhood(&self, a: u64) -> u64 {
        let mut out = 0;
        let mut rest = a;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            out |= self.adjacency[b];
            rest &= rest - 1;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let nb = self.blacks();
        if nb == 0 {
            return self.whites <= 1;
        }
        let all_whites = full_mask(self.whites);
        let mut blacks = 1u64;
        let mut whites = self.adjacency[0];
        loop {
            let grown = (0..nb)
                .filter(|&b| self.adjacency[b] & whites != 0)
                .fold(blacks, |acc, b| acc | 1 << b);
            if grown == blacks {
                break;
            }
            blacks = grown;
            whites = self.neighborhood(blacks);
        }
        blacks == full_mask(nb) && whites == all_whites
    }

    /// `|N(A)|` for every subset mask `A` of blacks.
    pub fn neighborhood_sizes(&self) -> Vec<u32> {
        let nb = self.blacks();
        assert!(nb < 32, "too many black vertices for subset tables");
        let mut nbhd = vec![0u64; 1 << nb];
        for a in 1usize..1 << nb {
            let low = a.trailing_zeros() as usize;
            nbhd[a] = nbhd[a & (a - 1)] | self.adjacency[low];
        }
        nbhd.into_iter().map(u64::count_ones).collect()
    }
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Builds the intersection graph of the cycles of `σ1` and `σ2`.
pub fn build_graph(sigma1: &Permutation, sigma2: &Permutation) -> IntersectionGraph {
    assert_eq!(sigma1.degree(), sigma2.degree(), "degree mismatch");
    let n = sigma1.degree();
    let mut l1 = vec![0usize; n];
    let mut l2 = vec![0usize; n];
    let whites = sigma1.cycle_labels_into(&mut l1);
    let blacks = sigma2.cycle_labels_into(&mut l2);
    let mut adjacency = vec![0u64; blacks];
    for x in 0..n {
        adjacency[l2[x]] |= 1 << l1[x];
    }
    let mut white_supports = vec![Vec::new(); whites];
    let mut black_supports = vec![Vec::new(); blacks];
    for x in 0..n {
        white_supports[l1[x]].push(x + 1);
        black_supports[l2[x]].push(x + 1);
    }
    IntersectionGraph {
        whites,
        adjacency,
        white_supports,
        black_supports,
    }
}

/// Condition (e): every nontrivial set `A` of blacks has more than
/// `Σ_{b∈A} (q(b) − 1)` white neighbours. Checked over all subsets.
pub fn condition_e(g: &IntersectionGraph, q: &[u32]) -> bool {
    assert_eq!(q.len(), g.blacks(), "one color per black vertex");
    let sizes = g.neighborhood_sizes();
    condition_e_with_sizes(&sizes, q)
}

/// [`condition_e`] with precomputed `|N(A)|` table.
pub fn condition_e_with_sizes(sizes: &[u32], q: &[u32]) -> bool {
    let nb = q.len();
    let full = (1usize << nb) - 1;
    let mut demand = vec![0u32; 1 << nb];
    for a in 1..full {
        let low = a.trailing_zeros() as usize;
        demand[a] = demand[a & (a - 1)] + q[low] - 1;
        if sizes[a] <= demand[a] {
            return false;
        }
    }
    true
}

/// A marriage arrangement: every white marries exactly one adjacent black,
/// and black `b` receives exactly `quota[b]` husbands. `banned[w]` is a mask of
/// blacks that white `w` may not marry.
fn arrangement(g: &IntersectionGraph, quota: &[u32], banned: &[u64]) -> Option<Vec<usize>> {
    let total: u32 = quota.iter().sum();
    if total as usize != g.whites {
        return None;
    }
    let nb = g.blacks();
    let mut allowed = vec![0u64; g.whites];
    for (b, &mask) in g.adjacency.iter().enumerate() {
        let mut rest = mask;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            if banned[w] >> b & 1 == 0 {
                allowed[w] |= 1 << b;
            }
            rest &= rest - 1;
        }
    }
    let mut wife: Vec<Option<usize>> = vec![None; g.whites];
    let mut husbands: Vec<Vec<usize>> = vec![Vec::new(); nb];

    fn augment(
        w: usize,
        allowed: &[u64],
        quota: &[u32],
        wife: &mut [Option<usize>],
        husbands: &mut [Vec<usize>],
        seen: &mut u64,
    ) -> bool {
        let mut rest = allowed[w];
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if *seen >> b & 1 == 1 {
                continue;
            }
            *seen |= 1 << b;
            if (husbands[b].len() as u32) < quota[b] {
                husbands[b].push(w);
                wife[w] = Some(b);
                return true;
            }
            for idx in 0..husbands[b].len() {
                let other = husbands[b][idx];
                if augment(other, allowed, quota, wife, husbands, seen) {
                    // `other` moved elsewhere; take its slot
                    let pos = husbands[b].iter().position(|&h| h == other).expect("husband present");
                    husbands[b][pos] = w;
                    wife[w] = Some(b);
                    return true;
                }
            }
        }
        false
    }

    for w in 0..g.whites {
        let mut seen = 0u64;
        if !augment(w, &allowed, quota, &mut wife, &mut husbands, &mut seen) {
            return None;
        }
    }
    Some(wife.into_iter().map(|b| b.expect("every white married")).collect())
}

/// Condition (e²): an arrangement giving black `b` exactly `q(b) − 1`
/// husbands exists, and for every nontrivial `A` there are two arrangements
/// whose sets of husbands of `A` differ.
pub fn condition_e2(g: &IntersectionGraph, q: &[u32]) -> bool {
    assert_eq!(q.len(), g.blacks(), "one color per black vertex");
    let quota: Vec<u32> = q.iter().map(|&x| x - 1).collect();
    let none = vec![0u64; g.whites];
    let Some(m1) = arrangement(g, &quota, &none) else {
        return false;
    };
    let nb = g.blacks();
    let full = (1u64 << nb) - 1;
    for a in 1..full {
        // every arrangement gives A the same number of husbands, so a second
        // husband set exists iff some current husband can be kept out of A
        let husbands: Vec<usize> = (0..g.whites).filter(|&w| a >> m1[w] & 1 == 1).collect();
        let found = husbands.iter().any(|&h| {
            let mut banned = none.clone();
            banned[h] = a;
            arrangement(g, &quota, &banned).is_some()
        });
        if !found {
            return false;
        }
    }
    true
}

/// Whether the transportation system `Σ_b x_{wb} = 1` (per white),
/// `Σ_w x_{wb} = q(b) − 1` (per black) over the edges has a strictly positive
/// real solution. Equivalent to: a 0/1 solution exists and every edge lies
/// in some 0/1 solution.
pub fn q_admissible(g: &IntersectionGraph, q: &[u32]) -> bool {
    assert_eq!(q.len(), g.blacks(), "one color per black vertex");
    let quota: Vec<u32> = q.iter().map(|&x| x - 1).collect();
    let none = vec![0u64; g.whites];
    if arrangement(g, &quota, &none).is_none() {
        return false;
    }
    let nb = g.blacks();
    for (b, &mask) in g.adjacency.iter().enumerate() {
        let mut rest = mask;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // force w to marry b
            let mut banned = none.clone();
            banned[w] = full_mask(nb) & !(1 << b);
            if arrangement(g, &quota, &banned).is_none() {
                return false;
            }
        }
    }
    true
}

/// True iff some edge is a bridge whose removal leaves a black vertex on both
/// sides. Such pairs never satisfy condition (e).
pub fn prune_disconnecting_edge(g: &IntersectionGraph) -> bool {
    let nb = g.blacks();
    for b in 0..nb {
        let mut rest = g.adjacency[b];
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // the white side must contain a black other than b
            if (0..nb).all(|o| o == b || g.adjacency[o] >> w & 1 == 0) {
                continue;
            }
            if !reachable_without_edge(g, b, w) {
                return true;
            }
        }
    }
    false
}

/// Whether white `w` is reachable from black `b` once the edge `b–w` is
/// removed.
fn reachable_without_edge(g: &IntersectionGraph, b: usize, w: usize) -> bool {
    let adj = |x: usize| {
        if x == b {
            g.adjacency[x] & !(1 << w)
        } else {
            g.adjacency[x]
        }
    };
    let mut blacks = 1u64 << b;
    let mut whites = adj(b);
    loop {
        if whites >> w & 1 == 1 {
            return true;
        }
        let grown = (0..g.blacks())
            .filter(|&o| blacks >> o & 1 == 0 && adj(o) & whites != 0)
            .fold(blacks, |acc, o| acc | 1 << o);
        if grown == blacks {
            return false;
        }
        blacks = grown;
        whites = (0..g.blacks())
            .filter(|&o| blacks >> o & 1 == 1)
            .fold(0, |acc, o| acc | adj(o));
    }
}

/// `χ(ℐ) = Σ_{nonempty chains C_1 ⊊ … ⊊ C_l in ℐ} (−1)^{l−1}`, where sets
/// are bitmasks. Duplicates in `family` are ignored.
pub fn euler_characteristic(family: &[u32]) -> i64 {
    let mut sets = family.to_vec();
    sets.sort_unstable_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    // top[i] = Σ over chains with maximum sets[i] of (−1)^{l−1}
    let mut top = vec![0i64; sets.len()];
    for i in 0..sets.len() {
        let mut v = 1;
        for j in 0..i {
            if sets[j] & sets[i] == sets[j] && sets[j] != sets[i] {
                v -= top[j];
            }
        }
        top[i] = v;
    }
    top.iter().sum()
}

/// `Σ_{l≥0} Σ_{chains of length l} (−1)^l`, the empty chain included;
/// equal to `1 − χ(ℐ)`.
pub fn alternating_chain_sum(family: &[u32]) -> i64 {
    1 - euler_characteristic(family)
}

/// `Σ_k (−1)^k · #{partitions of an n-set into k blocks} · k!`.
pub fn stirling_alternating_sum(n: u32) -> i128 {
    // row[k] = number of partitions of an m-set into k blocks
    let mut row = vec![1i128];
    for m in 1..=n as usize {
        let mut next = vec![0i128; m + 1];
        for k in 1..=m {
            let stay = if k < row.len() { k as i128 * row[k] } else { 0 };
            next[k] = stay + row[k - 1];
        }
        row = next;
    }
    let mut fact = 1i128;
    let mut total = 0i128;
    for (k, &s) in row.iter().enumerate() {
        if k > 0 {
            fact *= k as i128;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        total += sign * s * fact;
    }
    total
}

/// Nontrivial sets `A` of blacks with `|N(A)| ≤ Σ_{b∈A} (q(b) − 1)`, the
/// family whose chains detect violations of condition (e).
pub fn bad_family_for_coloring(g: &IntersectionGraph, q: &[u32]) -> Vec<u32> {
    let sizes = g.neighborhood_sizes();
    let nb = g.blacks();
    let full = (1u32 << nb) - 1;
    (1..full)
        .filter(|&a| {
            let demand: u32 = (0..nb).filter(|&b| a >> b & 1 == 1).map(|b| q[b] - 1).sum();
            sizes[a as usize] <= demand
        })
        .collect()
}

/// Nontrivial `A ⊂ {1..r}` with `Σ_A k_i ≤ Σ_A n_i`.
pub fn bad_family_for_numbers(k: &[i64], n: &[i64]) -> Vec<u32> {
    assert_eq!(k.len(), n.len());
    let r = k.len();
    let full = (1u32 << r) - 1;
    (1..full)
        .filter(|&a| {
            let (sk, sn) = (0..r)
                .filter(|&i| a >> i & 1 == 1)
                .fold((0, 0), |(x, y), i| (x + k[i], y + n[i]));
            sk <= sn
        })
        .collect()
}

/// Nontrivial `A ⊂ {1..r}` with
/// `Σ_{b∈Π, b∩A≠∅} (φ(b) − |b \ A|) ≤ Σ_{i∈A} n_i`.
pub fn bad_family_for_partition(blocks: &[Vec<usize>], phi: &[i64], n: &[i64]) -> Vec<u32> {
    assert_eq!(blocks.len(), phi.len());
    let r = n.len();
    let full = (1u32 << r) - 1;
    let block_masks: Vec<u32> = blocks.iter().map(|b| b.iter().fold(0, |m, &i| m | 1 << i)).collect();
    (1..full)
        .filter(|&a| {
            let lhs: i64 = block_masks
                .iter()
                .zip(phi)
                .filter(|(&bm, _)| bm & a != 0)
                .map(|(&bm, &f)| f - (bm & !a).count_ones() as i64)
                .sum();
            let rhs: i64 = (0..r).filter(|&i| a >> i & 1 == 1).map(|i| n[i]).sum();
            lhs <= rhs
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{long_cycle, Permutation};

    #[test]
    fn stars() {
        let g = build_graph(&Permutation::identity(4), &long_cycle(4));
        assert_eq!((g.whites(), g.blacks()), (4, 1));
        assert_eq!(g.adjacency(), &[0b1111]);
        let g = build_graph(&long_cycle(4), &Permutation::identity(4));
        assert_eq!((g.whites(), g.blacks()), (1, 4));
        assert!(g.adjacency().iter().all(|&m| m == 1));
        let s1 = Permutation::from_cycles(3, &[&[1, 3, 2]]).unwrap();
        let g = build_graph(&s1, &long_cycle(3));
        assert_eq!((g.whites(), g.blacks(), g.edge_count()), (1, 1, 1));
        assert_eq!(g.black_supports(), &[vec![1, 2, 3]]);
    }

    #[test]
    fn condition_examples() {
        let star = IntersectionGraph::from_adjacency(3, vec![0b111]);
        assert!(condition_e(&star, &[4]));
        let square = IntersectionGraph::from_adjacency(2, vec![0b11, 0b11]);
        assert!(condition_e(&square, &[2, 2]));
        assert!(condition_e2(&square, &[2, 2]));
        assert!(q_admissible(&square, &[2, 2]));
        let split = IntersectionGraph::from_adjacency(2, vec![0b01, 0b10]);
        assert!(!condition_e(&split, &[2, 2]));
        assert!(!condition_e2(&split, &[2, 2]));
        // degree count mismatch
        assert!(!condition_e2(&square, &[2, 3]));
    }

    #[test]
    fn admissibility_of_disconnected_union() {
        let g = IntersectionGraph::from_adjacency(2, vec![0b01, 0b10]);
        assert!(q_admissible(&g, &[2, 2]));
        let one = IntersectionGraph::from_adjacency(1, vec![1]);
        assert!(q_admissible(&one, &[2]));
    }

    #[test]
    fn pruning_examples() {
        let path = IntersectionGraph::from_adjacency(1, vec![1, 1]);
        assert!(prune_disconnecting_edge(&path));
        let star = IntersectionGraph::from_adjacency(3, vec![0b111]);
        assert!(!prune_disconnecting_edge(&star));
        let square = IntersectionGraph::from_adjacency(2, vec![0b11, 0b11]);
        assert!(!prune_disconnecting_edge(&square));
        // black0 – w0 – black1 – w1 – black2 with an extra leaf w2 on black0
        let chain = IntersectionGraph::from_adjacency(3, vec![0b101, 0b011, 0b010]);
        assert!(prune_disconnecting_edge(&chain));
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_characteristic(&[0b1]), 1);
        assert_eq!(euler_characteristic(&[0b1, 0b11]), 1);
        assert_eq!(euler_characteristic(&[]), 0);
        // two incomparable sets violate the closure property
        assert_eq!(euler_characteristic(&[0b01, 0b10]), 2);
        assert_eq!(alternating_chain_sum(&[]), 1);
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_alternating_sum(1), -1);
        assert_eq!(stirling_alternating_sum(2), 1);
        assert_eq!(stirling_alternating_sum(3), -1);
    }

    #[test]
    fn connectivity() {
        assert!(IntersectionGraph::from_adjacency(2, vec![0b11, 0b10]).is_connected());
        assert!(!IntersectionGraph::from_adjacency(2, vec![0b01, 0b10]).is_connected());
    }
}
