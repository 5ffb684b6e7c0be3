//! Constructive matching transformations on group-derived graphs: inverse
//! pairing, normalization of the unmatched set into T, the involution
//! augmentation, and the enhanced-to-power rematching loop.

use super::{Matching, MatchingError};
use crate::bitset::BitSet;
use crate::graphs::{is_enhanced_adjacent, is_power_adjacent, power_graph, SimpleGraph};
use crate::group::GroupTable;
use crate::nt;
use std::cmp::Reverse;

/// Matches every element of order > 2 with its inverse; the identity and
/// the involutions stay unmatched. For odd |G| this is already maximum,
/// with size (|G| - 1) / 2.
pub fn inverse_pair_matching(g: &GroupTable) -> Matching {
    let mut m = Matching::empty(g.order());
    for x in 0..g.order() {
        if g.elt_order(x) > 2 && x < g.inv(x) {
            m.add_pair(x, g.inv(x));
        }
    }
    m
}

/// Rewires a matching so that every unmatched vertex lies in
/// T = {g : g^2 = 1}, never shrinking it, then matches the identity to an
/// unmatched involution when both are free. Requires a graph with the
/// inverse-edge property (power, enhanced and commuting graphs all have
/// it).
pub fn normalize_matching(
    g: &GroupTable,
    graph: &SimpleGraph,
    m: &Matching,
) -> Result<Matching, MatchingError> {
    m.validate_on(graph)?;
    if m.n() != g.order() {
        return Err(MatchingError::InvalidMatching(format!(
            "matching over {} vertices for a group of order {}",
            m.n(),
            g.order()
        )));
    }
    let n = g.order();
    for x in 0..n {
        if g.elt_order(x) > 2 && !graph.has_edge(x, g.inv(x)) {
            return Err(MatchingError::InvalidMatching(format!(
                "graph lacks the inverse edge ({x}, {})",
                g.inv(x)
            )));
        }
    }

    let t_mask = g.square_roots_of_identity();
    let mut out = m.clone();
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > n * n + 2 {
            return Err(MatchingError::InvariantViolation(
                "normalization did not terminate".into(),
            ));
        }
        let Some(g0) = (0..n).find(|&v| out.mate(v).is_none() && !t_mask.contains(v)) else {
            break;
        };
        if out.mate(g.inv(g0)).is_none() {
            add_checked(&mut out, graph, g0, g.inv(g0))?;
            continue;
        }
        // chase g_{i+1} = mate(inv(g_i)) until the mate chain breaks or
        // lands in T
        let mut chain = vec![g0];
        let ends_in_t = loop {
            let gi = *chain.last().unwrap();
            let next = out
                .mate(g.inv(gi))
                .expect("chain extends only past matched inverses");
            chain.push(next);
            if t_mask.contains(next) {
                break true;
            }
            if out.mate(g.inv(next)).is_none() {
                break false;
            }
        };
        let last = chain.len() - 1;
        for i in 0..last {
            let a = g.inv(chain[i]);
            expect_pair(&out, a, chain[i + 1])?;
            out.remove_pair(a);
        }
        // ends in T: same size, the unmatched vertex moves into T;
        // otherwise the extra inverse pair grows the matching by one.
        let rewire_upto = if ends_in_t { last } else { last + 1 };
        for &x in &chain[..rewire_upto] {
            add_checked(&mut out, graph, x, g.inv(x))?;
        }
    }

    let e = g.identity();
    if out.mate(e).is_none() {
        let free_involution = (0..n)
            .find(|&t| g.elt_order(t) == 2 && out.mate(t).is_none() && graph.has_edge(e, t));
        if let Some(t) = free_involution {
            out.add_pair(e, t);
        }
    }
    Ok(out)
}

/// Constructive matching on P(G) for even-order groups: inverse pairs,
/// the identity matched to the first involution, then leftover involution
/// pairs (u, v) consume inverse pairs {x, x^-1} of odd-order elements
/// centralizing all involutions, rewiring
/// {x,x^-1}, {ux,ux^-1}, {vx,vx^-1} into {u,ux}, {v,vx^-1}, {ux^-1,x^-1},
/// {vx,x}. Leaves exactly max(0, |I| - |O(C_G(S))|) vertices unmatched.
pub fn augment_involutions(g: &GroupTable) -> Result<Matching, MatchingError> {
    let n = g.order();
    if n % 2 != 0 {
        return Err(MatchingError::RequiresEvenOrder);
    }
    let inv_set = g.involutions();
    let n_inv = inv_set.count();
    if n_inv == 0 {
        return Err(MatchingError::InvariantViolation(
            "even-order group without involutions".into(),
        ));
    }
    let cent = g.centralizer_of_set(&inv_set);
    let mut ocgs = g.odd_order_elements();
    ocgs.intersect_with(&cent);
    let m_count = ocgs.count();
    // both counts are odd for even-order groups; the pairing below relies
    // on it
    if n_inv % 2 == 0 || m_count % 2 == 0 {
        return Err(MatchingError::InvariantViolation(format!(
            "parity violation: |I| = {n_inv}, |O(C_G(S))| = {m_count}"
        )));
    }

    let power = power_graph(g);
    let mut out = inverse_pair_matching(g);
    let involutions: Vec<usize> = inv_set.iter().collect();
    add_checked(&mut out, &power, g.identity(), involutions[0])?;

    let leftovers = &involutions[1..];
    let pairs: Vec<(usize, usize)> = ocgs
        .iter()
        .filter(|&x| x != g.identity() && x < g.inv(x))
        .map(|x| (x, g.inv(x)))
        .collect();
    let steps = (leftovers.len() / 2).min(pairs.len());
    for k in 0..steps {
        let (u, v) = (leftovers[2 * k], leftovers[2 * k + 1]);
        let (x, xi) = pairs[k];
        let (ux, uxi) = (g.mul(u, x), g.mul(u, xi));
        let (vx, vxi) = (g.mul(v, x), g.mul(v, xi));
        let eight = [u, v, x, xi, ux, uxi, vx, vxi];
        for (a, &p) in eight.iter().enumerate() {
            for &q in &eight[a + 1..] {
                if p == q {
                    return Err(MatchingError::InvariantViolation(format!(
                        "translate collision at involution pair ({u}, {v}) with ({x}, {xi})"
                    )));
                }
            }
        }
        expect_pair(&out, x, xi)?;
        expect_pair(&out, ux, uxi)?;
        expect_pair(&out, vx, vxi)?;
        out.remove_pair(x);
        out.remove_pair(ux);
        out.remove_pair(vx);
        add_checked(&mut out, &power, u, ux)?;
        add_checked(&mut out, &power, v, vxi)?;
        add_checked(&mut out, &power, uxi, xi)?;
        add_checked(&mut out, &power, vx, x)?;
    }
    debug_assert_eq!(out.deficiency(), n_inv.saturating_sub(m_count));
    Ok(out)
}

/// Converts a matching on the enhanced power graph into one of equal size
/// on the power graph. Each pass removes the non-power matched edge whose
/// endpoint orders have the largest lcm (ties: smallest index pair) and
/// rewires it through the generators of the cyclic group the edge spans.
pub fn rematch_enhanced_to_power(
    g: &GroupTable,
    m: &Matching,
) -> Result<Matching, MatchingError> {
    let n = g.order();
    if m.n() != n {
        return Err(MatchingError::InvalidMatching(format!(
            "matching over {} vertices for a group of order {}",
            m.n(),
            n
        )));
    }
    for (u, v) in m.pairs() {
        if !is_enhanced_adjacent(g, u, v) {
            return Err(MatchingError::InvalidMatching(format!(
                "pair ({u}, {v}) is not an enhanced power graph edge"
            )));
        }
    }

    let lcm_of = |u: usize, v: usize| nt::lcm(g.elt_order(u) as u64, g.elt_order(v) as u64);
    let mut out = m.clone();
    let initial_bad = out
        .pairs()
        .iter()
        .filter(|&&(u, v)| !is_power_adjacent(g, u, v))
        .count();
    for _ in 0..=initial_bad {
        let bad: Vec<(usize, usize)> = out
            .pairs()
            .into_iter()
            .filter(|&(u, v)| !is_power_adjacent(g, u, v))
            .collect();
        let Some(&(lo, hi)) = bad
            .iter()
            .min_by_key(|&&(u, v)| (Reverse(lcm_of(u, v)), (u, v)))
        else {
            return Ok(out);
        };
        let l = lcm_of(lo, hi) as usize;
        let closure = g.subgroup_closure(&BitSet::from_indices(n, [lo, hi]));
        if closure.count() != l {
            return Err(MatchingError::InvariantViolation(format!(
                "<{lo}, {hi}> has order {} but lcm of element orders is {l}",
                closure.count()
            )));
        }
        let gens: Vec<usize> = closure.iter().filter(|&z| g.elt_order(z) == l).collect();
        if gens.is_empty() || gens.contains(&lo) || gens.contains(&hi) {
            return Err(MatchingError::InvariantViolation(format!(
                "pair ({lo}, {hi}) should span a cyclic group generated outside it"
            )));
        }

        // a free generator takes over the higher-index endpoint
        if let Some(&x) = gens.iter().find(|&&x| out.mate(x).is_none()) {
            out.remove_pair(hi);
            add_power_checked(&mut out, g, hi, x)?;
            continue;
        }
        let mates: Vec<usize> = gens.iter().map(|&x| out.mate(x).unwrap()).collect();

        // case (a): some generator is a power of its mate
        if let Some(i) =
            (0..gens.len()).find(|&i| g.cyclic_subgroup(mates[i]).contains(gens[i]))
        {
            out.remove_pair(hi);
            out.remove_pair(gens[i]);
            add_power_checked(&mut out, g, hi, gens[i])?;
            add_power_checked(&mut out, g, lo, mates[i])?;
            continue;
        }
        // case (c) would contradict the maximal-lcm choice
        if let Some(i) =
            (0..gens.len()).find(|&i| !g.cyclic_subgroup(gens[i]).contains(mates[i]))
        {
            return Err(MatchingError::InvariantViolation(format!(
                "pair ({}, {}) has lcm above the chosen edge",
                gens[i], mates[i]
            )));
        }
        // all case (b): the mates sit inside the cyclic group, so some two
        // of them are adjacent in the power graph
        let mut found = None;
        'search: for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                if is_power_adjacent(g, mates[i], mates[j]) {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((i, j)) = found else {
            return Err(MatchingError::InvariantViolation(format!(
                "no power edge among the generator mates of a cyclic group of order {l}"
            )));
        };
        out.remove_pair(hi);
        out.remove_pair(gens[i]);
        out.remove_pair(gens[j]);
        add_power_checked(&mut out, g, hi, gens[i])?;
        add_power_checked(&mut out, g, lo, gens[j])?;
        add_power_checked(&mut out, g, mates[i], mates[j])?;
    }
    Err(MatchingError::InvariantViolation(
        "rematching did not terminate".into(),
    ))
}

fn expect_pair(m: &Matching, a: usize, b: usize) -> Result<(), MatchingError> {
    if m.mate(a) == Some(b) {
        Ok(())
    } else {
        Err(MatchingError::InvariantViolation(format!(
            "expected ({a}, {b}) to be a matched pair"
        )))
    }
}

fn add_checked(
    m: &mut Matching,
    graph: &SimpleGraph,
    a: usize,
    b: usize,
) -> Result<(), MatchingError> {
    if a == b || m.mate(a).is_some() || m.mate(b).is_some() || !graph.has_edge(a, b) {
        return Err(MatchingError::InvariantViolation(format!(
            "cannot add pair ({a}, {b})"
        )));
    }
    m.add_pair(a, b);
    Ok(())
}

fn add_power_checked(
    m: &mut Matching,
    g: &GroupTable,
    a: usize,
    b: usize,
) -> Result<(), MatchingError> {
    if a == b || m.mate(a).is_some() || m.mate(b).is_some() || !is_power_adjacent(g, a, b) {
        return Err(MatchingError::InvariantViolation(format!(
            "cannot add power pair ({a}, {b})"
        )));
    }
    m.add_pair(a, b);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enhanced_power_graph;
    use crate::group::{
        direct_product, make_cyclic, make_dicyclic, make_elementary_abelian_2, make_symmetric,
    };
    use crate::matching::{max_matching, verify_matching};

    #[test]
    fn inverse_pairs() {
        let c7 = make_cyclic(7).unwrap();
        let m = inverse_pair_matching(&c7);
        assert_eq!(m.size(), 3);
        assert_eq!(m.unmatched(), vec![0]);

        let klein = make_elementary_abelian_2(2).unwrap();
        assert_eq!(inverse_pair_matching(&klein).size(), 0);

        let s4 = make_symmetric(4).unwrap();
        assert_eq!(inverse_pair_matching(&s4).size(), 7);
    }

    #[test]
    fn normalize_walks_the_chain_on_c4() {
        let c4 = make_cyclic(4).unwrap();
        let p = power_graph(&c4);
        let mut m = Matching::empty(4);
        m.add_pair(0, 1); // identity with z
        let out = normalize_matching(&c4, &p, &m).unwrap();
        assert_eq!(out.pairs(), vec![(0, 2), (1, 3)]);
        assert!(out.is_perfect());
    }

    #[test]
    fn normalize_fixed_point_and_tiny_case() {
        let klein = make_elementary_abelian_2(2).unwrap();
        let p = power_graph(&klein);
        let mut m = Matching::empty(4);
        m.add_pair(0, 1);
        // unmatched = {2, 3} already inside T \ {1}
        let out = normalize_matching(&klein, &p, &m).unwrap();
        assert_eq!(out, m);

        let c3 = make_cyclic(3).unwrap();
        let p = power_graph(&c3);
        let out = normalize_matching(&c3, &p, &Matching::empty(3)).unwrap();
        assert_eq!(out.pairs(), vec![(1, 2)]);
        assert_eq!(out.unmatched(), vec![0]);
    }

    #[test]
    fn normalize_rejects_foreign_matchings() {
        let c4 = make_cyclic(4).unwrap();
        let p = power_graph(&c4);
        let m = Matching::empty(6);
        assert!(normalize_matching(&c4, &p, &m).is_err());
    }

    #[test]
    fn augment_reaches_the_mp2_bound() {
        let q8xc3 =
            direct_product(&make_dicyclic(2).unwrap(), &make_cyclic(3).unwrap()).unwrap();
        let m = augment_involutions(&q8xc3).unwrap();
        assert_eq!(m.size(), 12);
        assert!(m.is_perfect());
        assert!(verify_matching(&power_graph(&q8xc3), &m));

        let c2x4 = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap()).unwrap();
        let m = augment_involutions(&c2x4).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.deficiency(), 2);
        assert!(verify_matching(&power_graph(&c2x4), &m));

        let s3x5 = direct_product(&make_symmetric(3).unwrap(), &make_cyclic(5).unwrap()).unwrap();
        let m = augment_involutions(&s3x5).unwrap();
        assert_eq!(m.size(), 15);
        assert!(m.is_perfect());
        assert!(verify_matching(&power_graph(&s3x5), &m));

        assert!(matches!(
            augment_involutions(&make_cyclic(7).unwrap()),
            Err(MatchingError::RequiresEvenOrder)
        ));
    }

    #[test]
    fn rematch_on_c6_follows_the_worked_case() {
        let c6 = make_cyclic(6).unwrap();
        let mut m = Matching::empty(6);
        m.add_pair(3, 2); // z^3 with z^2: enhanced edge, not a power edge
        m.add_pair(1, 5);
        m.add_pair(0, 4);
        let out = rematch_enhanced_to_power(&c6, &m).unwrap();
        assert_eq!(out.pairs(), vec![(0, 4), (1, 3), (2, 5)]);
        assert_eq!(out.size(), 3);
        assert!(verify_matching(&power_graph(&c6), &out));
    }

    #[test]
    fn rematch_is_identity_on_power_matchings() {
        let c6 = make_cyclic(6).unwrap();
        let p = power_graph(&c6);
        let m = max_matching(&p);
        let out = rematch_enhanced_to_power(&c6, &m).unwrap();
        assert_eq!(out, m);

        let s4 = make_symmetric(4).unwrap();
        let e = enhanced_power_graph(&s4);
        let m = max_matching(&e);
        let out = rematch_enhanced_to_power(&s4, &m).unwrap();
        assert_eq!(out.size(), 8);
        assert_eq!(out, m); // enhanced = power on S_4
    }

    #[test]
    fn rematch_rejects_non_enhanced_pairs() {
        let klein = make_elementary_abelian_2(2).unwrap();
        let mut m = Matching::empty(4);
        m.add_pair(1, 2); // two involutions never span a cyclic group
        assert!(matches!(
            rematch_enhanced_to_power(&klein, &m),
            Err(MatchingError::InvalidMatching(_))
        ));
    }

    #[test]
    fn rematch_preserves_size_on_maximum_enhanced_matchings() {
        let groups = [
            make_cyclic(12).unwrap(),
            make_cyclic(30).unwrap(),
            direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap()).unwrap(),
            direct_product(&make_cyclic(3).unwrap(), &make_cyclic(9).unwrap()).unwrap(),
            make_dicyclic(3).unwrap(),
        ];
        for g in &groups {
            let e = enhanced_power_graph(g);
            let m = max_matching(&e);
            let out = rematch_enhanced_to_power(g, &m).unwrap();
            assert_eq!(out.size(), m.size());
            assert!(verify_matching(&power_graph(g), &out));
        }
    }
}
