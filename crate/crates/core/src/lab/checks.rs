//! Per-check implementations. Graphs and maximum matchings are computed
//! lazily once per catalog entry and shared by the checks that need them.

use super::{CatalogEntry, CheckId, CheckResult, Tag, Verdict};
use crate::bitset::BitSet;
use crate::graphs::{
    c_t_class, commuting_graph, connected_components, enhanced_power_graph, power_graph,
    SimpleGraph,
};
use crate::group::{
    direct_product, make_cyclic, make_dihedral, GroupTable, DEFAULT_ORDER_CAP,
};
use crate::matching::{
    augment_involutions, max_matching, rematch_enhanced_to_power, verify_matching, Matching,
};
use crate::nt;
use std::cell::OnceCell;

/// Runs one check against one catalog entry.
pub fn run_check(check: CheckId, entry: &CatalogEntry) -> CheckResult {
    let analysis = Analysis::new(entry);
    analysis.run(check)
}

pub(crate) fn run_checks_for_entry(entry: &CatalogEntry, checks: &[CheckId]) -> Vec<CheckResult> {
    let analysis = Analysis::new(entry);
    checks.iter().map(|&c| analysis.run(c)).collect()
}

struct Analysis<'a> {
    entry: &'a CatalogEntry,
    inv_count: usize,
    odd_count: usize,
    t_count: usize,
    /// |O(C_G(S))|: odd-order elements commuting with every involution.
    ocgs_count: usize,
    power: OnceCell<SimpleGraph>,
    enhanced: OnceCell<SimpleGraph>,
    power_max: OnceCell<Matching>,
    enhanced_max: OnceCell<Matching>,
}

impl<'a> Analysis<'a> {
    fn new(entry: &'a CatalogEntry) -> Analysis<'a> {
        let g = &entry.group;
        let involutions = g.involutions();
        let odd = g.odd_order_elements();
        let mut ocgs = odd.clone();
        ocgs.intersect_with(&g.centralizer_of_set(&involutions));
        Analysis {
            entry,
            inv_count: involutions.count(),
            odd_count: odd.count(),
            t_count: g.square_roots_of_identity().count(),
            ocgs_count: ocgs.count(),
            power: OnceCell::new(),
            enhanced: OnceCell::new(),
            power_max: OnceCell::new(),
            enhanced_max: OnceCell::new(),
        }
    }

    fn g(&self) -> &GroupTable {
        &self.entry.group
    }

    fn n(&self) -> usize {
        self.g().order()
    }

    fn power(&self) -> &SimpleGraph {
        self.power.get_or_init(|| power_graph(self.g()))
    }

    fn enhanced(&self) -> &SimpleGraph {
        self.enhanced.get_or_init(|| enhanced_power_graph(self.g()))
    }

    fn power_max(&self) -> &Matching {
        self.power_max.get_or_init(|| max_matching(self.power()))
    }

    fn enhanced_max(&self) -> &Matching {
        self.enhanced_max.get_or_init(|| max_matching(self.enhanced()))
    }

    fn mu(&self) -> usize {
        self.power_max().size()
    }

    fn deficiency(&self) -> usize {
        self.power_max().deficiency()
    }

    fn run(&self, check: CheckId) -> CheckResult {
        match check {
            CheckId::OddOrder => self.odd_order(),
            CheckId::LowerT => self.lower_t(),
            CheckId::UniqueInv => self.unique_inv(),
            CheckId::Mp1 => self.mp1(),
            CheckId::CtComponents => self.ct_components(),
            CheckId::Mp2 => self.mp2(),
            CheckId::Nilp => self.nilp(),
            CheckId::Bound8m4 => self.bound_8m4(),
            CheckId::SmallMu => self.small_mu(),
            CheckId::ThreeInv => self.three_inv(),
            CheckId::ComF => self.com_f(),
            CheckId::PowF => self.pow_f(),
            CheckId::EmbedCp => self.embed_cp(),
            CheckId::OddXC2 => self.odd_x_c2(),
            CheckId::TwoGroup => self.two_group(),
            CheckId::EnhEq => self.enh_eq(),
            CheckId::EppoEq => self.eppo_eq(),
        }
    }

    fn done(
        &self,
        check: CheckId,
        expected: String,
        observed: String,
        ok: bool,
        detail: String,
    ) -> CheckResult {
        CheckResult {
            check_id: check,
            group: self.entry.name.clone(),
            expected,
            observed,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            detail,
        }
    }

    fn not_applicable(&self, check: CheckId, expected: &str, reason: &str) -> CheckResult {
        CheckResult {
            check_id: check,
            group: self.entry.name.clone(),
            expected: expected.to_string(),
            observed: "-".to_string(),
            verdict: Verdict::NotApplicable,
            detail: format!("not applicable: {reason}"),
        }
    }

    fn odd_order(&self) -> CheckResult {
        let c = CheckId::OddOrder;
        let expected_desc = "mu(P) = (|G|-1)/2";
        if self.n() % 2 == 0 {
            return self.not_applicable(c, expected_desc, "requires odd order");
        }
        let k = (self.n() - 1) / 2;
        self.done(
            c,
            format!("mu(P) = {k}"),
            format!("mu(P) = {}", self.mu()),
            self.mu() == k,
            String::new(),
        )
    }

    fn lower_t(&self) -> CheckResult {
        let c = CheckId::LowerT;
        let expected_desc = "mu(P) >= 1 + (|G|-|T|)/2";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let bound = 1 + (self.n() - self.t_count) / 2;
        self.done(
            c,
            format!("mu(P) >= {bound}"),
            format!("mu(P) = {}", self.mu()),
            self.mu() >= bound,
            format!("|T| = {}", self.t_count),
        )
    }

    fn unique_inv(&self) -> CheckResult {
        let c = CheckId::UniqueInv;
        let expected_desc = "P has a perfect matching";
        if self.inv_count != 1 {
            return self.not_applicable(c, expected_desc, "requires a unique involution");
        }
        self.done(
            c,
            expected_desc.to_string(),
            format!("deficiency = {}", self.deficiency()),
            self.deficiency() == 0,
            String::new(),
        )
    }

    fn mp1(&self) -> CheckResult {
        let c = CheckId::Mp1;
        let expected_desc = "deficiency >= |I| - |O|";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let bound = self.inv_count as isize - self.odd_count as isize;
        self.done(
            c,
            format!("deficiency >= {bound}"),
            format!("deficiency = {}", self.deficiency()),
            self.deficiency() as isize >= bound,
            format!("|I| = {}, |O| = {}", self.inv_count, self.odd_count),
        )
    }

    fn ct_components(&self) -> CheckResult {
        let c = CheckId::CtComponents;
        let expected_desc = "components of P on even-order elements are the C_t classes, all odd";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let g = self.g();
        let even_mask = g.odd_order_elements().complement();
        let comps = connected_components(self.power(), &even_mask);
        let mut observed: Vec<BitSet> = comps.components.clone();
        observed.sort_by_key(|m| m.first());
        let mut classes: Vec<BitSet> = g
            .involutions()
            .iter()
            .map(|t| c_t_class(g, t).expect("involution"))
            .collect();
        classes.sort_by_key(|m| m.first());
        let sizes: Vec<usize> = observed.iter().map(|m| m.count()).collect();
        let all_odd = sizes.iter().all(|s| s % 2 == 1);
        self.done(
            c,
            expected_desc.to_string(),
            format!("{} components, sizes {:?}", observed.len(), sizes),
            observed == classes && all_odd,
            format!("|I| = {}", self.inv_count),
        )
    }

    fn mp2(&self) -> CheckResult {
        let c = CheckId::Mp2;
        let expected_desc = "deficiency <= max(0, |I| - |O(C_G(S))|), reached constructively";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let bound = self.inv_count.saturating_sub(self.ocgs_count);
        match augment_involutions(self.g()) {
            Ok(constructed) => {
                let valid = verify_matching(self.power(), &constructed);
                let d2 = constructed.deficiency();
                self.done(
                    c,
                    format!("deficiency <= {bound}, constructive matching leaves {bound}"),
                    format!(
                        "deficiency = {}, constructive = {d2}, valid = {valid}",
                        self.deficiency()
                    ),
                    self.deficiency() <= bound && d2 == bound && valid,
                    format!("|I| = {}, |O(C_G(S))| = {}", self.inv_count, self.ocgs_count),
                )
            }
            Err(e) => self.done(
                c,
                format!("deficiency <= {bound}, reached constructively"),
                format!("construction failed: {e}"),
                false,
                String::new(),
            ),
        }
    }

    fn nilp(&self) -> CheckResult {
        let c = CheckId::Nilp;
        let expected_desc = "deficiency = max(0, |I| - |O|) for nilpotent groups";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        if !self.entry.has(Tag::Nilpotent) {
            return self.not_applicable(c, expected_desc, "requires a nilpotent group");
        }
        let k = self.inv_count.saturating_sub(self.odd_count);
        self.done(
            c,
            format!("deficiency = {k}"),
            format!("deficiency = {}", self.deficiency()),
            self.deficiency() == k,
            format!("|I| = {}, |O| = {}", self.inv_count, self.odd_count),
        )
    }

    fn bound_8m4(&self) -> CheckResult {
        let c = CheckId::Bound8m4;
        let expected_desc = "|G| < 8 mu(P) + 4";
        if self.entry.has(Tag::ElementaryAbelian2) {
            return self.not_applicable(c, expected_desc, "elementary abelian 2-groups are exempt");
        }
        let bound = 8 * self.mu() + 4;
        self.done(
            c,
            format!("|G| < {bound}"),
            format!("|G| = {}, mu(P) = {}", self.n(), self.mu()),
            self.n() < bound,
            String::new(),
        )
    }

    fn small_mu(&self) -> CheckResult {
        let c = CheckId::SmallMu;
        let expected_desc =
            "mu = 1 only for elementary abelian 2-groups or C3; mu = 2 only for C4, C5, D3, D4";
        let mu = self.mu();
        let spectrum = self.g().order_spectrum();
        let (ok, note) = match mu {
            1 => {
                if self.entry.has(Tag::ElementaryAbelian2) {
                    (true, "elementary abelian 2-group".to_string())
                } else if spectrum == make_cyclic(3).unwrap().order_spectrum() {
                    (true, "order spectrum of C3".to_string())
                } else {
                    (false, "unexpected group with mu = 1".to_string())
                }
            }
            2 => {
                let references = [
                    ("C4", make_cyclic(4).unwrap()),
                    ("C5", make_cyclic(5).unwrap()),
                    ("D3", make_dihedral(3).unwrap()),
                    ("D4", make_dihedral(4).unwrap()),
                ];
                match references
                    .iter()
                    .find(|(_, r)| r.order_spectrum() == spectrum)
                {
                    Some((name, _)) => (true, format!("order spectrum of {name}")),
                    None => (false, "unexpected group with mu = 2".to_string()),
                }
            }
            _ => (true, String::new()),
        };
        self.done(
            c,
            expected_desc.to_string(),
            format!("mu(P) = {mu}"),
            ok,
            note,
        )
    }

    fn three_inv(&self) -> CheckResult {
        let c = CheckId::ThreeInv;
        let expected_desc = "|G| = 6 or P has a perfect matching";
        if self.inv_count != 3 {
            return self.not_applicable(c, expected_desc, "requires exactly three involutions");
        }
        let g = self.g();
        let invs: Vec<usize> = g.involutions().iter().collect();
        let noncommuting_pair = invs.iter().any(|&s| {
            invs.iter()
                .any(|&t| s != t && g.mul(s, t) != g.mul(t, s))
        });
        if !noncommuting_pair {
            return self.not_applicable(c, expected_desc, "all involution pairs commute");
        }
        self.done(
            c,
            expected_desc.to_string(),
            format!("|G| = {}, deficiency = {}", self.n(), self.deficiency()),
            self.n() == 6 || self.deficiency() == 0,
            String::new(),
        )
    }

    fn com_f(&self) -> CheckResult {
        let c = CheckId::ComF;
        let expected_desc = "Com(G) has a perfect matching when |G| >= 2n*n! for n = |I|";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let i = self.inv_count as u128;
        let threshold = 2 * i * factorial(self.inv_count);
        if (self.n() as u128) < threshold {
            return self.not_applicable(
                c,
                expected_desc,
                &format!("|G| = {} below 2n*n! = {threshold}", self.n()),
            );
        }
        let com = commuting_graph(self.g());
        let d = max_matching(&com).deficiency();
        self.done(
            c,
            "Com(G) has a perfect matching".to_string(),
            format!("deficiency = {d}"),
            d == 0,
            format!("|I| = {}, threshold = {threshold}", self.inv_count),
        )
    }

    fn pow_f(&self) -> CheckResult {
        let c = CheckId::PowF;
        let expected_desc =
            "P(G) has a perfect matching when no involution is central among involutions and |G| >= n*n!";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let g = self.g();
        let invs: Vec<usize> = g.involutions().iter().collect();
        let every_inv_has_noncommuting = invs.iter().all(|&u| {
            invs.iter()
                .any(|&v| v != u && g.mul(u, v) != g.mul(v, u))
        });
        if !every_inv_has_noncommuting {
            return self.not_applicable(
                c,
                expected_desc,
                "some involution commutes with all involutions",
            );
        }
        let threshold = self.inv_count as u128 * factorial(self.inv_count);
        if (self.n() as u128) < threshold {
            return self.not_applicable(
                c,
                expected_desc,
                &format!("|G| = {} below n*n! = {threshold}", self.n()),
            );
        }
        self.done(
            c,
            "P(G) has a perfect matching".to_string(),
            format!("deficiency = {}", self.deficiency()),
            self.deficiency() == 0,
            format!("|I| = {}, threshold = {threshold}", self.inv_count),
        )
    }

    fn embed_cp(&self) -> CheckResult {
        let c = CheckId::EmbedCp;
        let expected_desc = "P(G x C_p) perfect for an odd prime p > s (s = deficiency)";
        if self.n() % 2 == 1 {
            return self.not_applicable(c, expected_desc, "requires even order");
        }
        let s = self.deficiency();
        // smallest odd prime above s whose product order fits the cap
        let mut q = s + 1;
        let p = loop {
            if self.n() * q > DEFAULT_ORDER_CAP {
                break None;
            }
            if q % 2 == 1 && nt::is_prime(q as u64) {
                break Some(q);
            }
            q += 1;
        };
        let Some(p) = p else {
            return self.not_applicable(
                c,
                expected_desc,
                &format!("no odd prime p > {s} keeps |G|*p within the cap"),
            );
        };
        let product = direct_product(self.g(), &make_cyclic(p).unwrap()).expect("within cap");
        let d = max_matching(&power_graph(&product)).deficiency();
        self.done(
            c,
            format!("P(G x C_{p}) perfect"),
            format!("deficiency = {d}"),
            d == 0,
            format!("s = {s}, product order = {}", product.order()),
        )
    }

    fn odd_x_c2(&self) -> CheckResult {
        let c = CheckId::OddXC2;
        let expected_desc = "P(G x C_2) perfect for odd-order G";
        if self.n() % 2 == 0 {
            return self.not_applicable(c, expected_desc, "requires odd order");
        }
        let product = direct_product(self.g(), &make_cyclic(2).unwrap()).expect("within cap");
        let d = max_matching(&power_graph(&product)).deficiency();
        self.done(
            c,
            "P(G x C_2) perfect".to_string(),
            format!("deficiency = {d}"),
            d == 0,
            format!("product order = {}", product.order()),
        )
    }

    fn two_group(&self) -> CheckResult {
        let c = CheckId::TwoGroup;
        let expected_desc = "P perfect iff |I| = 1, for 2-groups";
        if !self.entry.has(Tag::TwoGroup) {
            return self.not_applicable(c, expected_desc, "requires a 2-group");
        }
        let perfect = self.deficiency() == 0;
        let unique = self.inv_count == 1;
        self.done(
            c,
            expected_desc.to_string(),
            format!("deficiency = {}, |I| = {}", self.deficiency(), self.inv_count),
            perfect == unique,
            String::new(),
        )
    }

    fn enh_eq(&self) -> CheckResult {
        let c = CheckId::EnhEq;
        let mu_p = self.mu();
        let mu_e = self.enhanced_max().size();
        match rematch_enhanced_to_power(self.g(), self.enhanced_max()) {
            Ok(rematched) => {
                let valid = verify_matching(self.power(), &rematched);
                self.done(
                    c,
                    "mu(P) = mu(P_e), rematching preserves size onto power edges".to_string(),
                    format!(
                        "mu(P) = {mu_p}, mu(P_e) = {mu_e}, rematched size = {}, valid = {valid}",
                        rematched.size()
                    ),
                    mu_p == mu_e && rematched.size() == mu_e && valid,
                    String::new(),
                )
            }
            Err(e) => self.done(
                c,
                "mu(P) = mu(P_e), rematching preserves size onto power edges".to_string(),
                format!("rematching failed: {e}"),
                false,
                String::new(),
            ),
        }
    }

    fn eppo_eq(&self) -> CheckResult {
        let c = CheckId::EppoEq;
        let eq_edges = self.power().same_edges(self.enhanced());
        let eppo = self.g().is_eppo();
        let gk_null = self.g().gk_graph().is_null();
        self.done(
            c,
            "P = P_e iff EPPO iff null Gruenberg-Kegel graph".to_string(),
            format!("P=P_e: {eq_edges}, EPPO: {eppo}, GK null: {gk_null}"),
            eq_edges == eppo && eppo == gk_null,
            String::new(),
        )
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_symmetric;
    use crate::lab::{default_catalog, CatalogEntry};

    fn entry(name: &str, g: GroupTable) -> CatalogEntry {
        CatalogEntry::new(name, g, &[])
    }

    #[test]
    fn nilp_on_c2_x_c4() {
        let g = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(4).unwrap()).unwrap();
        let r = run_check(CheckId::Nilp, &entry("C2xC4", g));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.expected.contains('2'), "{}", r.expected);
        assert!(r.observed.contains('2'), "{}", r.observed);
    }

    #[test]
    fn small_mu_on_d4() {
        let r = run_check(CheckId::SmallMu, &entry("D4", make_dihedral(4).unwrap()));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.observed.contains("mu(P) = 2"));
    }

    #[test]
    fn enh_eq_on_c6() {
        let r = run_check(CheckId::EnhEq, &entry("C6", make_cyclic(6).unwrap()));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.observed.contains("mu(P) = 3"));
        assert!(r.observed.contains("mu(P_e) = 3"));
    }

    #[test]
    fn odd_order_not_applicable_on_even_groups() {
        let r = run_check(CheckId::OddOrder, &entry("S4", make_symmetric(4).unwrap()));
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.detail.contains("not applicable"));
    }

    #[test]
    fn three_inv_applicability() {
        let r = run_check(CheckId::ThreeInv, &entry("S3", make_symmetric(3).unwrap()));
        assert_eq!(r.verdict, Verdict::Pass);

        // Klein x C3 has three involutions but they all commute
        let klein = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(2).unwrap()).unwrap();
        let g = direct_product(&klein, &make_cyclic(3).unwrap()).unwrap();
        let r = run_check(CheckId::ThreeInv, &entry("C2xC2xC3", g));
        assert_eq!(r.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn embed_cp_picks_the_smallest_fitting_prime() {
        let klein = direct_product(&make_cyclic(2).unwrap(), &make_cyclic(2).unwrap()).unwrap();
        let r = run_check(CheckId::EmbedCp, &entry("C2^2", klein));
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.expected.contains("C_3"), "{}", r.expected);
    }

    #[test]
    fn every_check_id_runs_on_the_small_catalog() {
        for e in default_catalog(12) {
            for c in CheckId::ALL {
                let r = run_check(c, &e);
                assert_ne!(r.verdict, Verdict::Fail, "{} on {}: {:?}", c, e.name, r);
            }
        }
    }
}
