//! Embedded reference tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE1: &str = include_str!("../fixtures/table1_reference.csv");
const TABLE2: &str = include_str!("../fixtures/table2_reference.csv");
const CONSTANTS: &str = include_str!("../fixtures/constants.csv");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    /// rank, or `>=7` for the rule row
    pub n: String,
    pub lattice: String,
    pub weyl_group: String,
    pub omega: String,
    pub modulus: u32,
    /// `|Ω|`, or `2^n` for the rule row
    pub value: String,
}

impl Table1Row {
    pub fn rank(&self) -> Option<usize> {
        self.n.parse().ok()
    }

    /// The expected value at rank `n`.
    pub fn value_at(&self, n: usize) -> Option<u64> {
        match self.value.as_str() {
            "2^n" => 1u64.checked_shl(n as u32),
            v => v.parse().ok(),
        }
    }

    pub fn is_rule(&self) -> bool {
        self.rank().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub name: String,
    #[serde(rename = "N")]
    pub n_type: String,
    #[serde(rename = "P")]
    pub p_type: String,
    pub order: usize,
    #[serde(rename = "rdim_Q")]
    pub rdim_q: u64,
    pub rdim_k: u64,
}

fn parse<T: for<'de> Deserialize<'de>>(name: &str, text: &str) -> Result<Vec<T>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|e| Error::Fixture(format!("{name}: {e}")))
}

pub fn table1_reference() -> Result<Vec<Table1Row>> {
    parse("table1_reference", TABLE1)
}

pub fn table2_reference() -> Result<Vec<Table2Row>> {
    parse("table2_reference", TABLE2)
}

pub fn constants() -> Result<BTreeMap<String, u64>> {
    #[derive(Deserialize)]
    struct Entry {
        key: String,
        value: u64,
    }
    Ok(parse::<Entry>("constants", CONSTANTS)?.into_iter().map(|e| (e.key, e.value)).collect())
}

pub fn constant(key: &str) -> Result<u64> {
    constants()?.get(key).copied().ok_or_else(|| Error::Fixture(format!("missing constant {key}")))
}

/// The symmetric-rank reference row for a lattice name; `B` maps to the rule row.
pub fn table1_row(lattice: &str) -> Result<Table1Row> {
    let key = match lattice.to_ascii_uppercase().as_str() {
        "BN" => "B".to_string(),
        s if s.starts_with('B') => "B".to_string(),
        s => s.to_string(),
    };
    table1_reference()?
        .into_iter()
        .find(|r| r.lattice == key)
        .ok_or_else(|| Error::Fixture(format!("no reference row for {lattice}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_parse() {
        let t1 = table1_reference().unwrap();
        assert_eq!(t1.len(), 7);
        assert_eq!(t1.iter().filter(|r| !r.is_rule()).count(), 6);
        assert_eq!(table1_row("B7").unwrap().value_at(7), Some(128));
        assert_eq!(table1_row("E6").unwrap().modulus, 3);
        let t2 = table2_reference().unwrap();
        assert_eq!(t2.len(), 26);
        let blocks = |n: &str, p: &str| t2.iter().filter(|r| r.n_type == n && r.p_type == p).count();
        assert_eq!(blocks("C2", "S4"), 4);
        assert_eq!(blocks("C2^2", "S4"), 9);
        assert_eq!(blocks("1", "A4"), 1);
    }

    #[test]
    fn constants_are_consistent() {
        let c = constants().unwrap();
        assert_eq!(c["c3_upper_factor_a"] * c["c3_upper_factor_b"], c["c3_upper"]);
        assert_eq!(c["c3_lower"], 15);
    }
}
