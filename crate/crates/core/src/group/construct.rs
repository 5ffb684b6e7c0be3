//! Group constructors. Each documents its canonical element indexing so
//! outputs are reproducible bit for bit.

use super::{GroupError, GroupTable, DEFAULT_ORDER_CAP};
use std::collections::HashMap;

/// Cyclic group C_n. Index i is z^i; mul[i][j] = (i + j) mod n.
pub fn make_cyclic(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter("cyclic order must be >= 1".into()));
    }
    check_cap(n)?;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect())
        .collect();
    let labels = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        })
        .collect();
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

/// Dihedral group D_n of order 2n (n >= 3), presentation
/// r^n = s^2 = 1, s r s = r^-1. Indices 0..n are r^i, indices n..2n are
/// r^i s (reflection part at i + n).
pub fn make_dihedral(n: usize) -> Result<GroupTable, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidParameter(format!(
            "dihedral parameter must be >= 3, got {n}"
        )));
    }
    check_cap(2 * n)?;
    let idx = |i: usize, f: usize| (i + n * f) as u32;
    let mut rows = vec![vec![0u32; 2 * n]; 2 * n];
    for i in 0..n {
        for f in 0..2 {
            for j in 0..n {
                for g in 0..2 {
                    // (r^i s^f)(r^j s^g): rotations add, a leading reflection
                    // conjugates the incoming rotation.
                    let v = if f == 0 {
                        idx((i + j) % n, g)
                    } else {
                        idx((i + n - j) % n, 1 - g)
                    };
                    rows[idx(i, f) as usize][idx(j, g) as usize] = v;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(2 * n);
    for i in 0..n {
        labels.push(match i {
            0 => "1".to_string(),
            1 => "r".to_string(),
            _ => format!("r^{i}"),
        });
    }
    for i in 0..n {
        labels.push(match i {
            0 => "s".to_string(),
            1 => "r s".to_string(),
            _ => format!("r^{i} s"),
        });
    }
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

/// Dicyclic group of order 4m (m >= 2), presentation
/// a^{2m} = 1, b^2 = a^m, b^-1 a b = a^-1. Indices 0..2m are a^i,
/// indices 2m..4m are a^i b. Generalized quaternion when m is a power
/// of two; the unique involution is a^m in every case.
pub fn make_dicyclic(m: usize) -> Result<GroupTable, GroupError> {
    if m < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "dicyclic parameter must be >= 2, got {m}"
        )));
    }
    let two_m = 2 * m;
    check_cap(2 * two_m)?;
    let idx = |i: usize, f: usize| (i + two_m * f) as u32;
    let mut rows = vec![vec![0u32; 4 * m]; 4 * m];
    for i in 0..two_m {
        for f in 0..2 {
            for j in 0..two_m {
                for g in 0..2 {
                    let v = if f == 0 {
                        idx((i + j) % two_m, g)
                    } else if g == 0 {
                        idx((i + two_m - j) % two_m, 1)
                    } else {
                        // (a^i b)(a^j b) = a^{i-j} b^2 = a^{i-j+m}
                        idx((i + two_m - j + m) % two_m, 0)
                    };
                    rows[idx(i, f) as usize][idx(j, g) as usize] = v;
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(4 * m);
    for i in 0..two_m {
        labels.push(match i {
            0 => "1".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{i}"),
        });
    }
    for i in 0..two_m {
        labels.push(match i {
            0 => "b".to_string(),
            1 => "a b".to_string(),
            _ => format!("a^{i} b"),
        });
    }
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

/// (C_2)^k under bitwise XOR; index i multiplies as i XOR j. Labels are
/// k-bit binary strings.
pub fn make_elementary_abelian_2(k: usize) -> Result<GroupTable, GroupError> {
    if k == 0 {
        return Err(GroupError::InvalidParameter(
            "elementary abelian rank must be >= 1".into(),
        ));
    }
    if k >= usize::BITS as usize || (1usize << k) > DEFAULT_ORDER_CAP {
        return Err(GroupError::OrderExceedsCap {
            order: 1usize.checked_shl(k as u32).unwrap_or(usize::MAX),
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let n = 1usize << k;
    let rows = (0..n)
        .map(|i| (0..n).map(|j| (i ^ j) as u32).collect())
        .collect();
    let labels = (0..n).map(|i| format!("{i:0k$b}")).collect();
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

/// Symmetric group S_n (1 <= n <= 8) on points 0..n-1. Elements are the
/// permutations in lexicographic one-line order (so the identity is
/// index 0), and mul[p][q] is p . q with q applied first.
pub fn make_symmetric(n: usize) -> Result<GroupTable, GroupError> {
    if n == 0 || n > 8 {
        return Err(GroupError::InvalidParameter(format!(
            "symmetric parameter must be in 1..=8, got {n}"
        )));
    }
    let order: usize = (1..=n).product();
    check_cap(order)?;
    let perms: Vec<Vec<usize>> = lex_permutations(n);
    let mut rows = vec![vec![0u32; order]; order];
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            let composed: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
            rows[i][j] = perm_rank(&composed) as u32;
        }
    }
    let labels = perms
        .iter()
        .map(|p| Permutation { map: p.clone() }.cycles_string())
        .collect();
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

/// Componentwise product; the pair (x, y) gets index x * |B| + y, so the
/// identity stays at 0. Labels combine when both factors carry them.
pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na.checked_mul(nb).ok_or(GroupError::OrderExceedsCap {
        order: usize::MAX,
        cap: DEFAULT_ORDER_CAP,
    })?;
    check_cap(n)?;
    let mut rows = vec![vec![0u32; n]; n];
    for ia in 0..na {
        for ib in 0..nb {
            let i = ia * nb + ib;
            for ja in 0..na {
                for jb in 0..nb {
                    rows[i][ja * nb + jb] = (a.mul(ia, ja) * nb + b.mul(ib, jb)) as u32;
                }
            }
        }
    }
    let labels = match (a.labels(), b.labels()) {
        (Some(la), Some(lb)) => Some(
            (0..n)
                .map(|i| format!("({},{})", la[i / nb], lb[i % nb]))
                .collect(),
        ),
        _ => None,
    };
    GroupTable::from_rows(rows, labels, DEFAULT_ORDER_CAP, false)
}

/// Breadth-first closure of a set of permutation generators. Elements are
/// indexed by discovery order (identity first, generators applied in the
/// given order, right multiplication). The empty generating set yields
/// the trivial group.
pub fn from_permutation_generators(gens: &[Permutation]) -> Result<GroupTable, GroupError> {
    let degree = gens.first().map_or(0, |g| g.degree());
    if gens.iter().any(|g| g.degree() != degree) {
        return Err(GroupError::InvalidParameter(
            "generators act on point sets of different sizes".into(),
        ));
    }
    let identity = Permutation::identity(degree);
    let mut elems: Vec<Permutation> = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(identity, 0);
    let mut head = 0;
    while head < elems.len() {
        let current = elems[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if !index.contains_key(&next) {
                if elems.len() + 1 > DEFAULT_ORDER_CAP {
                    return Err(GroupError::OrderExceedsCap {
                        order: elems.len() + 1,
                        cap: DEFAULT_ORDER_CAP,
                    });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
    }
    let n = elems.len();
    let mut rows = vec![vec![0u32; n]; n];
    for (i, p) in elems.iter().enumerate() {
        for (j, q) in elems.iter().enumerate() {
            rows[i][j] = index[&p.compose(q)] as u32;
        }
    }
    let labels = elems.iter().map(|p| p.cycles_string()).collect();
    GroupTable::from_rows(rows, Some(labels), DEFAULT_ORDER_CAP, false)
}

fn check_cap(order: usize) -> Result<(), GroupError> {
    if order > DEFAULT_ORDER_CAP {
        Err(GroupError::OrderExceedsCap {
            order,
            cap: DEFAULT_ORDER_CAP,
        })
    } else {
        Ok(())
    }
}

/// A permutation of the points 0..degree in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, GroupError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || seen[x] {
                return Err(GroupError::InvalidParameter(
                    "not a permutation of 0..n".into(),
                ));
            }
            seen[x] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation {
            map: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// self . other, with other applied first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: (0..self.map.len()).map(|x| self.map[other.map[x]]).collect(),
        }
    }

    /// Disjoint-cycle notation over the internal 0-based points; "()" for
    /// the identity.
    pub fn cycles_string(&self) -> String {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.map[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Parses generators written in cycle notation, e.g. `"(1 2)(3 4)"`.
/// Points may be arbitrary non-negative integers; the union of all points
/// mentioned across the specs becomes the (sorted) point set.
pub fn permutations_from_cycles(specs: &[String]) -> Result<Vec<Permutation>, GroupError> {
    let parsed: Vec<Vec<Vec<u64>>> = specs
        .iter()
        .map(|s| parse_cycle_spec(s))
        .collect::<Result<_, _>>()?;
    let mut points: Vec<u64> = parsed
        .iter()
        .flatten()
        .flatten()
        .copied()
        .collect();
    points.sort_unstable();
    points.dedup();
    let index: HashMap<u64, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let degree = points.len();
    let mut perms = Vec::with_capacity(parsed.len());
    for (spec, cycles) in specs.iter().zip(&parsed) {
        let mut map: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                let from = index[&pt];
                if used[from] {
                    return Err(GroupError::InvalidParameter(format!(
                        "point {pt} repeated in \"{spec}\""
                    )));
                }
                used[from] = true;
                let to = index[&cycle[(k + 1) % cycle.len()]];
                map[from] = to;
            }
        }
        perms.push(Permutation::new(map)?);
    }
    Ok(perms)
}

fn parse_cycle_spec(spec: &str) -> Result<Vec<Vec<u64>>, GroupError> {
    let bad = |msg: &str| GroupError::InvalidParameter(format!("cannot parse \"{spec}\": {msg}"));
    let mut cycles = Vec::new();
    let mut current: Option<Vec<u64>> = None;
    let mut digits = String::new();
    for ch in spec.chars() {
        match ch {
            '(' => {
                if current.is_some() {
                    return Err(bad("nested '('"));
                }
                current = Some(Vec::new());
            }
            ')' => {
                let mut cycle = current.take().ok_or_else(|| bad("unmatched ')'"))?;
                if !digits.is_empty() {
                    cycle.push(digits.parse().map_err(|_| bad("bad number"))?);
                    digits.clear();
                }
                if !cycle.is_empty() {
                    cycles.push(cycle);
                }
            }
            '0'..='9' => {
                if current.is_none() {
                    return Err(bad("number outside a cycle"));
                }
                digits.push(ch);
            }
            ' ' | ',' | '\t' => {
                if !digits.is_empty() {
                    current
                        .as_mut()
                        .ok_or_else(|| bad("number outside a cycle"))?
                        .push(digits.parse().map_err(|_| bad("bad number"))?);
                    digits.clear();
                }
            }
            _ => return Err(bad(&format!("unexpected character '{ch}'"))),
        }
    }
    if current.is_some() {
        return Err(bad("unclosed '('"));
    }
    Ok(cycles)
}

fn lex_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn perm_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut fact = 1usize;
    let mut rank = 0usize;
    for (i, &pi) in p.iter().enumerate().rev() {
        let smaller_after = p[i + 1..].iter().filter(|&&q| q < pi).count();
        rank += smaller_after * fact;
        fact *= n - i;
    }
    rank
}
