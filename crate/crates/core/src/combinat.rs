//! Small enumeration helpers shared across modules: set partitions,
//! integer partitions, compositions and falling factorials.

use num_bigint::BigInt;
use num_traits::One;

/// Falling factorial `a (a-1) ... (a-b+1)` with `b` factors.
pub fn falling_factorial(a: i64, b: u32) -> BigInt {
    (0..b as i64).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Calls `visit` with every set partition of `{0..n}`, each block sorted
/// ascending and blocks ordered by their minimal element.
///
/// Partitions are generated from restricted growth strings, so the order is
/// deterministic. For `n == 0` the empty partition is visited once.
pub fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[Vec<usize>])) {
    let mut labels = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn rec(
        pos: usize,
        n: usize,
        max_label: usize,
        labels: &mut Vec<usize>,
        blocks: &mut Vec<Vec<usize>>,
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if pos == n {
            blocks.clear();
            let count = if n == 0 { 0 } else { max_label };
            blocks.resize(count, Vec::new());
            for (i, &l) in labels.iter().enumerate() {
                blocks[l].push(i);
            }
            visit(blocks);
            return;
        }
        let limit = if pos == 0 { 1 } else { max_label + 1 };
        for label in 0..limit {
            labels[pos] = label;
            let next_max = max_label.max(label + 1);
            rec(pos + 1, n, next_max, labels, blocks, visit);
        }
    }
    rec(0, n, 0, &mut labels, &mut blocks, &mut visit);
}

pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_set_partition(n, |p| out.push(p.to_vec()));
    out
}

/// Integer partitions of `n` with every part in `[min_part, max_part]`,
/// parts weakly decreasing.
pub fn integer_partitions(n: u32, min_part: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, min_part: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let top = rest.min(max_part);
        for part in (min_part.max(1)..=top).rev() {
            cur.push(part);
            rec(rest - part, min_part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, min_part, max_part, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `n` (weakly decreasing, positive parts).
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    integer_partitions(n, 1, n.max(1))
}

/// Compositions of `total` into exactly `parts` summands, each at least
/// `min_part`, in lexicographic order.
pub fn compositions(total: u32, parts: usize, min_part: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, slots: usize, min_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let reserve = min_part * (slots as u32 - 1);
        if rest < reserve + min_part {
            return;
        }
        for v in min_part..=rest - reserve {
            cur.push(v);
            rec(rest - v, slots - 1, min_part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, min_part, &mut Vec::new(), &mut out);
    out
}
