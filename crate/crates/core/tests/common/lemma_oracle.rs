//! Brute-force reference for multiset-system enumeration.

use std::collections::BTreeSet;

use num_integer::Integer;

pub type Pairs = Vec<(Vec<usize>, Vec<usize>)>;

/// Partitions by filtering all compositions, sorted and deduplicated.
pub fn slow_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts.sort_unstable();
        out.insert(parts);
    }
    out.into_iter().collect()
}

/// The hypotheses written out sum by sum.
pub fn slow_hypotheses(m: usize, n: usize, pairs: &Pairs) -> bool {
    let h1 = pairs.iter().all(|(a, b)| a.iter().sum::<usize>() == n && b.iter().sum::<usize>() == m);
    let ramified = pairs.iter().all(|(a, b)| a.iter().chain(b).any(|&x| x > 1));
    let sum = |f: &dyn Fn(&[usize], &[usize]) -> i64| pairs.iter().map(|(a, b)| f(a, b)).sum::<i64>();
    let cross = |a: &[usize], b: &[usize], pick: fn(usize, usize) -> usize| -> i64 {
        let mut t = 0;
        for &x in a {
            for &y in b {
                t += pick(x, y) as i64 - x.gcd(&y) as i64;
            }
        }
        t
    };
    let (mi, ni) = (m as i64, n as i64);
    h1 && ramified
        && sum(&|a, _| ni - a.len() as i64) == ni - 1
        && sum(&|a, b| cross(a, b, |x, _| x)) == ni - 1
        && sum(&|_, b| mi - b.len() as i64) == mi - 1
        && sum(&|a, b| cross(a, b, |_, y| y)) == mi - 1
}

/// Every ordered `k`-tuple of pairs for `k <= k_max`, filtered and reduced
/// to sorted pair lists.
pub fn unpruned(m: usize, n: usize, k_max: usize) -> BTreeSet<Pairs> {
    let mut all: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for a in slow_partitions(n) {
        for b in slow_partitions(m) {
            all.push((a.clone(), b));
        }
    }
    let mut out = BTreeSet::new();
    let mut tuples: Vec<Pairs> = vec![Vec::new()];
    for _ in 0..k_max {
        let mut next = Vec::new();
        for t in &tuples {
            for pair in &all {
                let mut u = t.clone();
                u.push(pair.clone());
                if slow_hypotheses(m, n, &u) {
                    let mut s = u.clone();
                    s.sort();
                    out.insert(s);
                }
                next.push(u);
            }
        }
        tuples = next;
    }
    out
}
