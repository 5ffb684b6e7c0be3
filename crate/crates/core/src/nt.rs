//! Arithmetic functions and divisor-lattice antichains.

use crate::graphs::SimpleGraph;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NtError {
    #[error("0 has no prime factorization")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{n} has {count} divisors, above the cap {cap}")]
    DivisorCapExceeded { n: u64, count: usize, cap: usize },
    #[error("graph has {n} vertices, above the exact-search guard {guard}")]
    GuardExceeded { n: usize, guard: usize },
}

/// Prime factorization with ascending primes and positive exponents;
/// 1 factors as the empty product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub n: u64,
    pub pairs: Vec<(u64, u32)>,
}

/// Trial division over 2, 3, then a 6k +/- 1 wheel.
pub fn factorize(n: u64) -> Result<Factorization, NtError> {
    if n == 0 {
        return Err(NtError::Zero);
    }
    let mut pairs = Vec::new();
    let mut m = n;
    for p in [2u64, 3] {
        let mut a = 0;
        while m % p == 0 {
            m /= p;
            a += 1;
        }
        if a > 0 {
            pairs.push((p, a));
        }
    }
    let mut p = 5u64;
    let mut step = 2u64;
    while p * p <= m {
        let mut a = 0;
        while m % p == 0 {
            m /= p;
            a += 1;
        }
        if a > 0 {
            pairs.push((p, a));
        }
        p += step;
        step = 6 - step;
    }
    if m > 1 {
        pairs.push((m, 1));
    }
    Ok(Factorization { n, pairs })
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && factorize(n).unwrap().pairs == vec![(n, 1)]
}

/// Number of divisors: product of (a_i + 1).
pub fn tau(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n)
        .unwrap()
        .pairs
        .iter()
        .map(|&(_, a)| a as u64 + 1)
        .product()
}

/// Euler totient: product of p_i^(a_i - 1) (p_i - 1).
pub fn phi(n: u64) -> u64 {
    assert!(n >= 1);
    factorize(n)
        .unwrap()
        .pairs
        .iter()
        .map(|&(p, a)| p.pow(a - 1) * (p - 1))
        .product()
}

pub fn tau_less_than_phi(n: u64) -> bool {
    tau(n) < phi(n)
}

/// All n in 1..=max where tau(n) < phi(n) fails.
pub fn tau_phi_failures(max: u64) -> Vec<u64> {
    (1..=max).filter(|&n| !tau_less_than_phi(n)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

/// Evidence for the gap between p^(a-1)(p-1) and the linear bounds a+1
/// and 2(a+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaGap {
    pub p: u64,
    pub a: u32,
    /// p^(a-1) (p-1), saturating at u128::MAX
    pub lhs: u128,
    pub bound_one: u64,
    pub bound_two: u64,
    /// Comparison of lhs with a+1.
    pub part_one: Comparison,
    /// (p, a) in {(2,1), (2,2)}: the part-one bound is not claimed there.
    pub part_one_excluded: bool,
    /// Comparison of lhs with 2(a+1); only stated for odd p with
    /// (p, a) != (3, 1).
    pub part_two: Option<Comparison>,
}

pub fn lemma_gap(p: u64, a: u32) -> Result<LemmaGap, NtError> {
    if !is_prime(p) {
        return Err(NtError::NotPrime(p));
    }
    assert!(a >= 1);
    let lhs = (p as u128)
        .checked_pow(a - 1)
        .and_then(|v| v.checked_mul(p as u128 - 1))
        .unwrap_or(u128::MAX);
    let bound_one = a as u64 + 1;
    let bound_two = 2 * (a as u64 + 1);
    let cmp = |b: u64| match lhs.cmp(&(b as u128)) {
        std::cmp::Ordering::Less => Comparison::Less,
        std::cmp::Ordering::Equal => Comparison::Equal,
        std::cmp::Ordering::Greater => Comparison::Greater,
    };
    let part_two = (p != 2 && (p, a) != (3, 1)).then(|| cmp(bound_two));
    Ok(LemmaGap {
        p,
        a,
        lhs,
        bound_one,
        bound_two,
        part_one: cmp(bound_one),
        part_one_excluded: matches!((p, a), (2, 1) | (2, 2)),
        part_two,
    })
}

/// Divisors of n in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut out = vec![1u64];
    for &(p, a) in &factorize(n).unwrap().pairs {
        let prev = out.clone();
        let mut pk = 1u64;
        for _ in 0..a {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Number of primes in n counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    factorize(n).unwrap().pairs.iter().map(|&(_, a)| a).sum()
}

const DIVISOR_CAP: usize = 64;

/// Exact maximum antichain in the divisor lattice of n, found by maximum
/// independent set search over the divisibility comparability graph.
/// Among maximum antichains the witness is the lexicographically smallest
/// divisor set.
pub fn max_divisor_antichain(n: u64) -> Result<(usize, Vec<u64>), NtError> {
    let divs = divisors(n);
    let d = divs.len();
    if d > DIVISOR_CAP {
        return Err(NtError::DivisorCapExceeded {
            n,
            count: d,
            cap: DIVISOR_CAP,
        });
    }
    let mut adj = vec![0u64; d];
    for i in 0..d {
        for j in i + 1..d {
            if divs[j] % divs[i] == 0 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let universe: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let witness_mask = lex_min_max_independent_set(&adj, universe);
    let witness: Vec<u64> = (0..d)
        .filter(|&i| witness_mask >> i & 1 == 1)
        .map(|i| divs[i])
        .collect();
    Ok((witness_mask.count_ones() as usize, witness))
}

/// Size of the middle Omega-layer of the divisor lattice: divisors d of n
/// with Omega(d) = floor(Omega(n) / 2).
pub fn dtk_antichain_size(n: u64) -> u64 {
    assert!(n >= 1);
    let m = big_omega(n);
    let target = m / 2;
    // coefficient of x^target in prod_i (1 + x + .. + x^{a_i})
    let mut coeff = vec![0u64; target as usize + 1];
    coeff[0] = 1;
    for &(_, a) in &factorize(n).unwrap().pairs {
        let mut next = vec![0u64; target as usize + 1];
        for (k, &c) in coeff.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for e in 0..=a as usize {
                if k + e <= target as usize {
                    next[k + e] += c;
                }
            }
        }
        coeff = next;
    }
    coeff[target as usize]
}

const INDEPENDENCE_GUARD: usize = 64;

/// Exact maximum independent set size for small graphs.
pub fn independence_number_small(graph: &SimpleGraph) -> Result<usize, NtError> {
    independence_number_with_guard(graph, INDEPENDENCE_GUARD)
}

pub fn independence_number_with_guard(
    graph: &SimpleGraph,
    guard: usize,
) -> Result<usize, NtError> {
    let n = graph.n();
    if n > guard || n > 64 {
        return Err(NtError::GuardExceeded {
            n,
            guard: guard.min(64),
        });
    }
    let mut adj = vec![0u64; n];
    for (v, row) in adj.iter_mut().enumerate() {
        for u in graph.neighbors(v).iter() {
            *row |= 1 << u;
        }
    }
    let universe: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut memo = std::collections::HashMap::new();
    Ok(mis_size(&adj, universe, &mut memo) as usize)
}

/// Branch and bound with memoization; branches on the highest-degree
/// available vertex.
fn mis_size(adj: &[u64], avail: u64, memo: &mut std::collections::HashMap<u64, u32>) -> u32 {
    if avail == 0 {
        return 0;
    }
    if let Some(&v) = memo.get(&avail) {
        return v;
    }
    let mut pick = 0usize;
    let mut best_deg = 0u32;
    let mut found = false;
    let mut rest = avail;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & avail).count_ones();
        if !found || deg > best_deg {
            pick = v;
            best_deg = deg;
            found = true;
        }
    }
    let result = if best_deg == 0 {
        // remaining vertices are pairwise non-adjacent
        avail.count_ones()
    } else {
        let include = 1 + mis_size(adj, avail & !adj[pick] & !(1u64 << pick), memo);
        let exclude = mis_size(adj, avail & !(1u64 << pick), memo);
        include.max(exclude)
    };
    memo.insert(avail, result);
    result
}

/// Lexicographically smallest maximum independent set (as the sorted list
/// of its vertices).
fn lex_min_max_independent_set(adj: &[u64], universe: u64) -> u64 {
    let mut memo = std::collections::HashMap::new();
    let best = mis_size(adj, universe, &mut memo);
    let mut chosen = 0u64;
    let mut avail = universe;
    let mut need = best;
    while need > 0 {
        let mut rest = avail;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // later picks must be above v to keep the sorted list minimal
            let above = if v >= 63 { 0 } else { !((1u64 << (v + 1)) - 1) };
            let next_avail = avail & !adj[v] & !(1u64 << v) & above;
            if 1 + mis_size(adj, next_avail, &mut memo) == need {
                chosen |= 1 << v;
                avail = next_avail;
                need -= 1;
                break;
            }
        }
    }
    chosen
}
