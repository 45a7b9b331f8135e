//! Packaged groups and character tables.

use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::chartab::CharacterTable;
use crate::constructions::{alternating, psigmal2, psl2, symmetric};
use crate::{Error, Group, Permutation, Result};

/// Generator file format: cycle notation over points `1..=degree`.
#[derive(Debug, Deserialize)]
pub struct GeneratorFile {
    pub degree: usize,
    pub generators: Vec<String>,
    #[serde(default)]
    pub name: Option<String>,
}

impl GeneratorFile {
    pub fn parse(text: &str) -> Result<GeneratorFile> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn build(&self) -> Result<Group> {
        let gens = self
            .generators
            .iter()
            .map(|s| Permutation::parse(s, self.degree))
            .collect::<Result<Vec<_>>>()?;
        Group::new(gens, self.degree)
    }
}

const GENERATOR_DATA: &[(&str, &str)] = &[
    ("J1", include_str!("../data/J1.json")),
    ("M11", include_str!("../data/M11.json")),
    ("Sz8", include_str!("../data/Sz8.json")),
    ("Sz8.3", include_str!("../data/Sz8.3.json")),
];

const TABLE_DATA: &[(&str, &str)] = &[
    ("Alt5", include_str!("../data/tables/Alt5.json")),
    ("Frob21", include_str!("../data/tables/Frob21.json")),
    ("J1", include_str!("../data/tables/J1.json")),
    ("M11", include_str!("../data/tables/M11.json")),
    ("PGammaL2_8", include_str!("../data/tables/PGammaL2_8.json")),
    ("SL2_32.5", include_str!("../data/tables/SL2_32.5.json")),
    ("Sym4", include_str!("../data/tables/Sym4.json")),
    ("Sz8.3", include_str!("../data/tables/Sz8.3.json")),
];

/// Registered names with their asserted orders.
pub const NAMED_GROUPS: &[(&str, u128)] = &[
    ("Alt5", 60),
    ("Alt6", 360),
    ("Frob21", 21),
    ("J1", 175_560),
    ("L2_7", 168),
    ("L3_2", 168),
    ("M11", 7_920),
    ("PGammaL2_8", 1_512),
    ("SL2_32", 32_736),
    ("SL2_32.5", 163_680),
    ("Sym4", 24),
    ("Sz8", 29_120),
    ("Sz8.3", 87_360),
];

pub fn frobenius21() -> Result<Group> {
    Group::from_cycles(&["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)"], 7)
}

/// `PSL₃(2)` on the seven points of the Fano plane with lines `{i, i+1, i+3}`.
pub fn psl3_2() -> Result<Group> {
    Group::from_cycles(&["(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)", "(1,2)(4,7)"], 7)
}

fn build_named(name: &str) -> Result<Group> {
    if let Some((_, text)) = GENERATOR_DATA.iter().find(|(n, _)| *n == name) {
        return GeneratorFile::parse(text)?.build();
    }
    match name {
        "Alt5" => alternating(5),
        "Alt6" => alternating(6),
        "Frob21" => frobenius21(),
        "L2_7" => psl2(7),
        "L3_2" => psl3_2(),
        "PGammaL2_8" => psigmal2(8, 3),
        "SL2_32" => psl2(32),
        "SL2_32.5" => psigmal2(32, 5),
        "Sym4" => symmetric(4),
        _ => Err(Error::UnknownGroup(name.to_string())),
    }
}

/// Builds a registered group and checks its order against the registry.
pub fn named_group(name: &str) -> Result<Group> {
    let expected = NAMED_GROUPS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|&(_, o)| o)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
    let g = build_named(name)?;
    if g.order() != expected {
        return Err(Error::OrderMismatch { name: name.to_string(), expected, actual: g.order() });
    }
    Ok(g)
}

pub fn table_names() -> impl Iterator<Item = &'static str> {
    TABLE_DATA.iter().map(|(n, _)| *n)
}

pub fn table_source(name: &str) -> Result<&'static str> {
    TABLE_DATA
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownGroup(name.to_string()))
}

/// Loads and validates a packaged character table.
pub fn named_table(name: &str) -> Result<CharacterTable> {
    CharacterTable::from_json(table_source(name)?)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// `(file, sha256)` for every packaged data file.
pub fn data_checksums() -> Vec<(String, String)> {
    let gens = GENERATOR_DATA.iter().map(|(n, t)| (format!("data/{n}.json"), sha256_hex(t.as_bytes())));
    let tables = TABLE_DATA.iter().map(|(n, t)| (format!("data/tables/{n}.json"), sha256_hex(t.as_bytes())));
    gens.chain(tables).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_registry_orders() {
        for name in ["Alt5", "Alt6", "Frob21", "L2_7", "L3_2", "M11", "PGammaL2_8", "Sym4"] {
            named_group(name).unwrap();
        }
        assert!(matches!(named_group("Monster"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn checksums_are_stable_hex() {
        let sums = data_checksums();
        assert_eq!(sums.len(), GENERATOR_DATA.len() + TABLE_DATA.len());
        assert!(sums.iter().all(|(_, h)| h.len() == 64));
    }
}
