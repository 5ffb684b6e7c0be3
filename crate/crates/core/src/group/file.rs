//! The group interchange document: order, row-major multiplication table,
//! optional labels. Loading always runs the full validation.

use super::{GroupError, GroupTable, DEFAULT_ORDER_CAP};
use serde::{Deserialize, Serialize};

/// Serialized form of a group. Fields are emitted in declaration order;
/// readers accept any order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub order: usize,
    pub mul: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<GroupFile, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("group file serialization");
        s.push('\n');
        s
    }
}

impl From<&GroupTable> for GroupFile {
    fn from(g: &GroupTable) -> GroupFile {
        GroupFile {
            order: g.order(),
            mul: g.rows(),
            labels: g.labels().map(|ls| ls.to_vec()),
        }
    }
}

/// Builds a fully validated group from a loaded document (identity,
/// inverses, and every associativity triple are checked).
pub fn from_cayley_table(doc: &GroupFile) -> Result<GroupTable, GroupError> {
    from_cayley_table_with_cap(doc, DEFAULT_ORDER_CAP)
}

pub fn from_cayley_table_with_cap(doc: &GroupFile, cap: usize) -> Result<GroupTable, GroupError> {
    if doc.mul.len() != doc.order {
        return Err(GroupError::Parse(format!(
            "declared order {} but table has {} rows",
            doc.order,
            doc.mul.len()
        )));
    }
    GroupTable::from_rows(doc.mul.clone(), doc.labels.clone(), cap, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    #[test]
    fn round_trip_c3() {
        let c3 = make_cyclic(3).unwrap();
        let doc = GroupFile::from(&c3);
        let json = doc.to_json();
        let parsed = GroupFile::from_json(&json).unwrap();
        let g = from_cayley_table(&parsed).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.rows(), c3.rows());
        // byte-identical re-serialization
        assert_eq!(GroupFile::from(&g).to_json(), json);
    }

    #[test]
    fn reader_accepts_any_field_order() {
        let text = r#"{"labels": ["e", "x"], "mul": [[0, 1], [1, 0]], "order": 2}"#;
        let g = from_cayley_table(&GroupFile::from_json(text).unwrap()).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.label(1), Some("x"));

        // labels are optional
        let text = r#"{"order": 1, "mul": [[0]]}"#;
        let g = from_cayley_table(&GroupFile::from_json(text).unwrap()).unwrap();
        assert!(g.labels().is_none());
    }

    #[test]
    fn rejects_row_that_is_not_a_permutation() {
        // order 2 with mul[1][1] = 1: the second row repeats 1, so element 1
        // can have no inverse.
        let doc = GroupFile {
            order: 2,
            mul: vec![vec![0, 1], vec![1, 1]],
            labels: None,
        };
        assert!(matches!(
            from_cayley_table(&doc),
            Err(GroupError::RowNotPermutation(1))
        ));
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // A Latin square with two-sided identity 0 obtained from the C_6
        // table by an intercalate swap; it is a loop, not a group.
        let doc = GroupFile {
            order: 6,
            mul: vec![
                vec![0, 1, 2, 3, 4, 5],
                vec![1, 5, 3, 4, 2, 0],
                vec![2, 3, 4, 5, 0, 1],
                vec![3, 4, 5, 0, 1, 2],
                vec![4, 2, 0, 1, 5, 3],
                vec![5, 0, 1, 2, 3, 4],
            ],
            labels: None,
        };
        assert!(matches!(
            from_cayley_table(&doc),
            Err(GroupError::NotAssociative { a: 1, b: 1, c: 2 })
        ));
    }

    #[test]
    fn rejects_shape_and_range_problems() {
        let doc = GroupFile {
            order: 3,
            mul: vec![vec![0, 1, 2], vec![1, 2, 0]],
            labels: None,
        };
        assert!(matches!(from_cayley_table(&doc), Err(GroupError::Parse(_))));

        let doc = GroupFile {
            order: 2,
            mul: vec![vec![0, 1], vec![1, 7]],
            labels: None,
        };
        assert!(matches!(
            from_cayley_table(&doc),
            Err(GroupError::EntryOutOfRange { row: 1, col: 1, .. })
        ));

        let doc = GroupFile {
            order: 2,
            mul: vec![vec![0, 1], vec![1, 0]],
            labels: Some(vec!["e".into()]),
        };
        assert!(from_cayley_table(&doc).is_err());
    }

    #[test]
    fn cap_applies_to_loaded_tables() {
        let c3 = make_cyclic(3).unwrap();
        let doc = GroupFile::from(&c3);
        assert!(matches!(
            from_cayley_table_with_cap(&doc, 2),
            Err(GroupError::OrderExceedsCap { order: 3, cap: 2 })
        ));
    }
}
