//! A reproducible group catalog and the check suite that runs every
//! structural statement about matchings in group graphs as an executable
//! test with a persisted report.

mod checks;

pub use checks::run_check;

use crate::group::{
    direct_product, from_permutation_generators, make_cyclic, make_dicyclic, make_dihedral,
    make_elementary_abelian_2, make_symmetric, permutations_from_cycles, GroupTable,
};
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

pub const SUITE_VERSION: &str = "1";

/// Structural flags attached to catalog entries. The computable ones
/// (cyclic, elementary-abelian-2, nilpotent, odd-order, two-group) are
/// derived from the table; dihedral, dicyclic and product record the
/// constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    Cyclic,
    Dihedral,
    Dicyclic,
    ElementaryAbelian2,
    Nilpotent,
    OddOrder,
    TwoGroup,
    Product,
}

pub struct CatalogEntry {
    pub name: String,
    pub group: GroupTable,
    pub tags: BTreeSet<Tag>,
}

impl CatalogEntry {
    pub fn new(name: &str, group: GroupTable, kind_tags: &[Tag]) -> CatalogEntry {
        let mut tags: BTreeSet<Tag> = kind_tags.iter().copied().collect();
        let n = group.order();
        if (0..n).any(|x| group.elt_order(x) == n) {
            tags.insert(Tag::Cyclic);
        }
        if group.is_elementary_abelian_2() {
            tags.insert(Tag::ElementaryAbelian2);
        }
        if group.is_nilpotent() {
            tags.insert(Tag::Nilpotent);
        }
        if n % 2 == 1 {
            tags.insert(Tag::OddOrder);
        }
        if n >= 2 && n.is_power_of_two() {
            tags.insert(Tag::TwoGroup);
        }
        CatalogEntry {
            name: name.to_string(),
            group,
            tags,
        }
    }

    pub fn has(&self, tag: Tag) -> bool {
        self.tags.contains(&tag)
    }
}

/// The deterministic default catalog, filtered to groups of order <= cap.
/// Construction order: cyclic, dihedral, dicyclic, elementary abelian,
/// direct products, permutation groups, and the S_3 x C_p products.
pub fn default_catalog(cap: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = Vec::new();
    let mut push = |entry: CatalogEntry| {
        if entry.group.order() <= cap {
            out.push(entry);
        }
    };

    for n in 1..=32 {
        push(CatalogEntry::new(
            &format!("C{n}"),
            make_cyclic(n).unwrap(),
            &[Tag::Cyclic],
        ));
    }
    for n in 3..=12 {
        push(CatalogEntry::new(
            &format!("D{n}"),
            make_dihedral(n).unwrap(),
            &[Tag::Dihedral],
        ));
    }
    for m in 2..=6 {
        let name = match m {
            2 => "Q8".to_string(),
            4 => "Q16".to_string(),
            _ => format!("Dic{m}"),
        };
        push(CatalogEntry::new(
            &name,
            make_dicyclic(m).unwrap(),
            &[Tag::Dicyclic],
        ));
    }
    for k in 1..=5 {
        push(CatalogEntry::new(
            &format!("C2^{k}"),
            make_elementary_abelian_2(k).unwrap(),
            &[],
        ));
    }

    let c = |n: usize| make_cyclic(n).unwrap();
    let products: Vec<(&str, GroupTable)> = vec![
        ("C2xC4", direct_product(&c(2), &c(4)).unwrap()),
        ("C2xC8", direct_product(&c(2), &c(8)).unwrap()),
        ("C4xC4", direct_product(&c(4), &c(4)).unwrap()),
        (
            "C2xC2xC3",
            direct_product(&direct_product(&c(2), &c(2)).unwrap(), &c(3)).unwrap(),
        ),
        (
            "Q8xC3",
            direct_product(&make_dicyclic(2).unwrap(), &c(3)).unwrap(),
        ),
        ("C9xC2", direct_product(&c(9), &c(2)).unwrap()),
        ("C3xC9", direct_product(&c(3), &c(9)).unwrap()),
    ];
    for (name, g) in products {
        push(CatalogEntry::new(name, g, &[Tag::Product]));
    }

    push(CatalogEntry::new("S3", make_symmetric(3).unwrap(), &[]));
    push(CatalogEntry::new("S4", make_symmetric(4).unwrap(), &[]));
    let a4_gens =
        permutations_from_cycles(&["(0 1 2)".to_string(), "(0 1)(2 3)".to_string()]).unwrap();
    push(CatalogEntry::new(
        "A4",
        from_permutation_generators(&a4_gens).unwrap(),
        &[],
    ));
    push(CatalogEntry::new(
        "S3xC5",
        direct_product(&make_symmetric(3).unwrap(), &c(5)).unwrap(),
        &[Tag::Product],
    ));
    push(CatalogEntry::new(
        "S3xC7",
        direct_product(&make_symmetric(3).unwrap(), &c(7)).unwrap(),
        &[Tag::Product],
    ));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    OddOrder,
    LowerT,
    UniqueInv,
    Mp1,
    CtComponents,
    Mp2,
    Nilp,
    Bound8m4,
    SmallMu,
    ThreeInv,
    ComF,
    PowF,
    EmbedCp,
    OddXC2,
    TwoGroup,
    EnhEq,
    EppoEq,
}

impl CheckId {
    pub const ALL: [CheckId; 17] = [
        CheckId::OddOrder,
        CheckId::LowerT,
        CheckId::UniqueInv,
        CheckId::Mp1,
        CheckId::CtComponents,
        CheckId::Mp2,
        CheckId::Nilp,
        CheckId::Bound8m4,
        CheckId::SmallMu,
        CheckId::ThreeInv,
        CheckId::ComF,
        CheckId::PowF,
        CheckId::EmbedCp,
        CheckId::OddXC2,
        CheckId::TwoGroup,
        CheckId::EnhEq,
        CheckId::EppoEq,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CheckId::OddOrder => "ODD_ORDER",
            CheckId::LowerT => "LOWER_T",
            CheckId::UniqueInv => "UNIQUE_INV",
            CheckId::Mp1 => "MP1",
            CheckId::CtComponents => "CT_COMPONENTS",
            CheckId::Mp2 => "MP2",
            CheckId::Nilp => "NILP",
            CheckId::Bound8m4 => "BOUND_8M4",
            CheckId::SmallMu => "SMALL_MU",
            CheckId::ThreeInv => "THREE_INV",
            CheckId::ComF => "COM_F",
            CheckId::PowF => "POW_F",
            CheckId::EmbedCp => "EMBED_CP",
            CheckId::OddXC2 => "ODD_X_C2",
            CheckId::TwoGroup => "TWO_GROUP",
            CheckId::EnhEq => "ENH_EQ",
            CheckId::EppoEq => "EPPO_EQ",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<CheckId, String> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|c| c.id() == s)
            .ok_or_else(|| format!("unknown check id {s:?}"))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<CheckId, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// One theorem check's outcome on one group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: CheckId,
    pub group: String,
    pub expected: String,
    pub observed: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
}

#[derive(Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_version: String,
    pub catalog_cap: usize,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// Runs the selected checks over the catalog. Results come back ordered
/// by catalog position, then by check order; `jobs > 1` splits entries
/// across threads without changing the output.
pub fn run_suite(
    catalog: &[CatalogEntry],
    check_ids: &[CheckId],
    catalog_cap: usize,
    jobs: usize,
) -> SuiteReport {
    let mut results: Vec<CheckResult> = if jobs <= 1 || catalog.len() <= 1 {
        catalog
            .iter()
            .flat_map(|entry| checks::run_checks_for_entry(entry, check_ids))
            .collect()
    } else {
        let workers = jobs.min(catalog.len());
        let mut buckets: Vec<Vec<(usize, &CatalogEntry)>> = vec![Vec::new(); workers];
        for (i, entry) in catalog.iter().enumerate() {
            buckets[i % workers].push((i, entry));
        }
        let mut indexed: Vec<(usize, Vec<CheckResult>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = buckets
                .into_iter()
                .map(|bucket| {
                    scope.spawn(move || {
                        bucket
                            .into_iter()
                            .map(|(i, entry)| (i, checks::run_checks_for_entry(entry, check_ids)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("suite worker"))
                .collect()
        });
        indexed.sort_by_key(|(i, _)| *i);
        indexed.into_iter().flat_map(|(_, rs)| rs).collect()
    };

    // group-major order is already guaranteed; keep check order within a
    // group aligned with the requested list
    let mut summary = Summary::default();
    for r in &results {
        match r.verdict {
            Verdict::Pass => summary.pass += 1,
            Verdict::Fail => summary.fail += 1,
            Verdict::NotApplicable => summary.not_applicable += 1,
        }
    }
    results.shrink_to_fit();
    SuiteReport {
        suite_version: SUITE_VERSION.to_string(),
        catalog_cap,
        results,
        summary,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_filters_by_cap() {
        let names: Vec<String> = default_catalog(8).iter().map(|e| e.name.clone()).collect();
        for expected in [
            "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2^1", "C2^2", "C2^3", "Q8", "D3",
            "D4", "S3", "C2xC4",
        ] {
            assert!(names.contains(&expected.to_string()), "missing {expected}");
        }
        assert!(!names.contains(&"S4".to_string()));

        let tiny = default_catalog(1);
        assert_eq!(tiny.len(), 1);
        assert_eq!(tiny[0].name, "C1");

        let names: Vec<String> = default_catalog(120).iter().map(|e| e.name.clone()).collect();
        assert!(names.contains(&"S3xC7".to_string()));
        assert!(names.contains(&"S4".to_string()));
        assert!(names.contains(&"C3xC9".to_string()));
    }

    #[test]
    fn tags_match_computed_predicates() {
        for entry in default_catalog(64) {
            assert_eq!(entry.has(Tag::Nilpotent), entry.group.is_nilpotent());
            assert_eq!(entry.has(Tag::OddOrder), entry.group.order() % 2 == 1);
            assert_eq!(
                entry.has(Tag::ElementaryAbelian2),
                entry.group.is_elementary_abelian_2()
            );
            let n = entry.group.order();
            assert_eq!(entry.has(Tag::TwoGroup), n >= 2 && n.is_power_of_two());
        }
    }

    #[test]
    fn check_id_round_trip() {
        for c in CheckId::ALL {
            assert_eq!(c.id().parse::<CheckId>().unwrap(), c);
        }
        assert!("NOT_A_CHECK".parse::<CheckId>().is_err());
    }

    #[test]
    fn empty_catalog_gives_empty_report() {
        let report = run_suite(&[], &CheckId::ALL, 64, 1);
        assert!(report.results.is_empty());
        assert_eq!(report.summary, Summary::default());
    }

    #[test]
    fn single_check_single_group() {
        let catalog = vec![CatalogEntry::new(
            "C9",
            make_cyclic(9).unwrap(),
            &[Tag::Cyclic],
        )];
        let report = run_suite(&catalog, &[CheckId::OddOrder], 9, 1);
        assert_eq!(report.results.len(), 1);
        let r = &report.results[0];
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.observed.contains('4'), "observed: {}", r.observed);
    }

    #[test]
    fn report_is_deterministic_and_parallel_invariant() {
        let catalog = default_catalog(16);
        let a = run_suite(&catalog, &CheckId::ALL, 16, 1).to_json();
        let b = run_suite(&catalog, &CheckId::ALL, 16, 1).to_json();
        assert_eq!(a, b);
        let c = run_suite(&catalog, &CheckId::ALL, 16, 3).to_json();
        assert_eq!(a, c);
    }

    #[test]
    fn suite_passes_on_a_small_catalog() {
        let catalog = default_catalog(24);
        let report = run_suite(&catalog, &CheckId::ALL, 24, 1);
        let failures: Vec<_> = report
            .results
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .collect();
        assert!(failures.is_empty(), "failures: {failures:?}");
    }

    #[test]
    fn involution_density_stays_below_three_quarters_off_the_elementary_abelians() {
        for entry in default_catalog(64) {
            if !entry.has(Tag::ElementaryAbelian2) {
                let n = entry.group.order();
                let i = entry.group.involutions().count();
                assert!(4 * i < 3 * n, "{}: |I| = {i}, |G| = {n}", entry.name);
            }
        }
    }
}
