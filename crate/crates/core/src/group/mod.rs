//! Finite groups as dense Cayley tables, with the element and subgroup
//! queries the rest of the crate is built on.

mod construct;
mod file;

pub use construct::{
    direct_product, from_permutation_generators, make_cyclic, make_dicyclic, make_dihedral,
    make_elementary_abelian_2, make_symmetric, permutations_from_cycles, Permutation,
};
pub use file::{from_cayley_table, from_cayley_table_with_cap, GroupFile};

use crate::bitset::BitSet;
use crate::nt;
use thiserror::Error;

/// Largest group order the constructors and the table loader accept.
pub const DEFAULT_ORDER_CAP: usize = 5000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("group order {order} exceeds the cap {cap}")]
    OrderExceedsCap { order: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed group file: {0}")]
    Parse(String),
    #[error("table entry at row {row}, column {col} is {value}, outside 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("row {0} of the multiplication table is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} of the multiplication table is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("table has no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails at the triple ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
}

/// A finite group on elements `0..order`, with multiplication table and
/// cached inverses, element orders, and cyclic-subgroup membership masks.
///
/// Element identity is the positional index; labels are display-only.
/// Tables are immutable once constructed.
pub struct GroupTable {
    n: usize,
    mul: Vec<u32>, // row-major n*n
    inv: Vec<u32>,
    identity: usize,
    labels: Option<Vec<String>>,
    cyc_masks: Vec<BitSet>,
    elt_order: Vec<u32>,
}

impl GroupTable {
    /// Builds a table from explicit rows. Constructors pass `validate =
    /// false` (their output is correct by construction); loaded documents
    /// must pass `validate = true`, which runs the full O(n^3) axiom check.
    pub(crate) fn from_rows(
        rows: Vec<Vec<u32>>,
        labels: Option<Vec<String>>,
        cap: usize,
        validate: bool,
    ) -> Result<GroupTable, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Parse("empty multiplication table".into()));
        }
        if n > cap {
            return Err(GroupError::OrderExceedsCap { order: n, cap });
        }
        let mut mul = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Parse(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    n
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row: r,
                        col: c,
                        value: v as usize,
                        order: n,
                    });
                }
                mul.push(v);
            }
        }
        if let Some(ref ls) = labels {
            if ls.len() != n {
                return Err(GroupError::Parse(format!(
                    "{} labels for a table of order {}",
                    ls.len(),
                    n
                )));
            }
        }

        if validate {
            validate_latin(n, &mul)?;
        }
        let identity = find_identity(n, &mul).ok_or(GroupError::NoIdentity)?;
        let inv = derive_inverses(n, &mul, identity)?;
        if validate {
            validate_associativity(n, &mul)?;
        }

        let (elt_order, cyc_masks) = derive_orders(n, &mul, identity);
        Ok(GroupTable {
            n,
            mul,
            inv,
            identity,
            labels,
            cyc_masks,
            elt_order,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn elt_order(&self, a: usize) -> usize {
        self.elt_order[a] as usize
    }

    /// Membership mask of the cyclic subgroup generated by `a`.
    #[inline]
    pub fn cyclic_subgroup(&self, a: usize) -> &BitSet {
        &self.cyc_masks[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> Option<&str> {
        self.labels.as_ref().map(|ls| ls[a].as_str())
    }

    /// Full multiplication table as rows, for serialization.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|r| self.mul[r * self.n..(r + 1) * self.n].to_vec())
            .collect()
    }

    /// I(G): elements of order exactly 2.
    pub fn involutions(&self) -> BitSet {
        BitSet::from_indices(self.n, (0..self.n).filter(|&g| self.elt_order(g) == 2))
    }

    /// O(G): elements of odd order.
    pub fn odd_order_elements(&self) -> BitSet {
        BitSet::from_indices(self.n, (0..self.n).filter(|&g| self.elt_order(g) % 2 == 1))
    }

    /// T = {g : g^2 = 1}, the identity together with the involutions.
    pub fn square_roots_of_identity(&self) -> BitSet {
        BitSet::from_indices(self.n, (0..self.n).filter(|&g| self.elt_order(g) <= 2))
    }

    /// Elements commuting with every element of `s`. The empty set
    /// centralizes to the whole group.
    pub fn centralizer_of_set(&self, s: &BitSet) -> BitSet {
        BitSet::from_indices(
            self.n,
            (0..self.n).filter(|&x| s.iter().all(|t| self.mul(x, t) == self.mul(t, x))),
        )
    }

    /// Smallest subgroup containing `seed`; the empty seed closes to the
    /// trivial subgroup.
    pub fn subgroup_closure(&self, seed: &BitSet) -> BitSet {
        let gens: Vec<usize> = seed.iter().collect();
        let mut set = BitSet::new(self.n);
        set.insert(self.identity);
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    queue.push(y);
                }
            }
        }
        set
    }

    /// Lower central series test: nilpotent iff iterated [gamma, G]
    /// commutator closures reach the trivial subgroup.
    pub fn is_nilpotent(&self) -> bool {
        let mut gamma = BitSet::full(self.n);
        loop {
            let mut comms = BitSet::new(self.n);
            for x in gamma.iter() {
                for y in 0..self.n {
                    let c = self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y));
                    comms.insert(c);
                }
            }
            let next = self.subgroup_closure(&comms);
            if next.count() == 1 {
                return true;
            }
            if next == gamma {
                return false;
            }
            gamma = next;
        }
    }

    /// True iff every element order is 1 or a prime power.
    pub fn is_eppo(&self) -> bool {
        (0..self.n).all(|g| nt::factorize(self.elt_order(g) as u64).unwrap().pairs.len() <= 1)
    }

    /// Prime graph: vertices are the primes dividing |G|, with an edge
    /// {p, q} whenever some element order is divisible by pq.
    pub fn gk_graph(&self) -> GkGraph {
        let primes: Vec<u64> = nt::factorize(self.n as u64)
            .unwrap()
            .pairs
            .iter()
            .map(|&(p, _)| p)
            .collect();
        let mut edges = std::collections::BTreeSet::new();
        for g in 0..self.n {
            let ps: Vec<u64> = nt::factorize(self.elt_order(g) as u64)
                .unwrap()
                .pairs
                .iter()
                .map(|&(p, _)| p)
                .collect();
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    edges.insert((ps[i], ps[j]));
                }
            }
        }
        GkGraph {
            primes,
            edges: edges.into_iter().collect(),
        }
    }

    /// Sorted multiset of element orders. Useful as a cheap isomorphism
    /// discriminator at small orders.
    pub fn order_spectrum(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|g| self.elt_order(g)).collect();
        v.sort_unstable();
        v
    }

    /// True iff g^2 = 1 for every g (includes the trivial group).
    pub fn is_elementary_abelian_2(&self) -> bool {
        (0..self.n).all(|g| self.elt_order(g) <= 2)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

/// Gruenberg–Kegel (prime) graph of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkGraph {
    /// Prime divisors of |G|, ascending.
    pub primes: Vec<u64>,
    /// Unordered prime pairs {p, q} (stored p < q) with an element of
    /// order divisible by pq.
    pub edges: Vec<(u64, u64)>,
}

impl GkGraph {
    pub fn is_null(&self) -> bool {
        self.edges.is_empty()
    }
}

fn validate_latin(n: usize, mul: &[u32]) -> Result<(), GroupError> {
    let mut seen = vec![false; n];
    for r in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for c in 0..n {
            let v = mul[r * n + c] as usize;
            if seen[v] {
                return Err(GroupError::RowNotPermutation(r));
            }
            seen[v] = true;
        }
    }
    for c in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        for r in 0..n {
            let v = mul[r * n + c] as usize;
            if seen[v] {
                return Err(GroupError::ColumnNotPermutation(c));
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn find_identity(n: usize, mul: &[u32]) -> Option<usize> {
    (0..n).find(|&e| {
        (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x)
    })
}

fn derive_inverses(n: usize, mul: &[u32], identity: usize) -> Result<Vec<u32>, GroupError> {
    let mut inv = vec![0u32; n];
    for g in 0..n {
        let h = (0..n)
            .find(|&h| mul[g * n + h] as usize == identity)
            .ok_or(GroupError::NoInverse(g))?;
        if mul[h * n + g] as usize != identity {
            return Err(GroupError::NoInverse(g));
        }
        inv[g] = h as u32;
    }
    Ok(inv)
}

fn validate_associativity(n: usize, mul: &[u32]) -> Result<(), GroupError> {
    let at = |a: usize, b: usize| mul[a * n + b] as usize;
    for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

fn derive_orders(n: usize, mul: &[u32], identity: usize) -> (Vec<u32>, Vec<BitSet>) {
    let mut orders = vec![0u32; n];
    let mut masks = Vec::with_capacity(n);
    for g in 0..n {
        let mut mask = BitSet::new(n);
        mask.insert(identity);
        let mut x = g;
        let mut k = 1u32;
        while x != identity {
            mask.insert(x);
            x = mul[x * n + g] as usize;
            k += 1;
        }
        orders[g] = k;
        masks.push(mask);
    }
    (orders, masks)
}
