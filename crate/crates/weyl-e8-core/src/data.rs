//! Shipped data files: the closed-form coefficient tables in the polynomial
//! JSON format and the generator recipe list, each pinned by a SHA-256
//! checksum so that accidental edits are caught at test time.

use crate::poly::{Poly, Var};
use sha2::{Digest, Sha256};
use std::fmt;

pub const AB_IN_MODULAR_JSON: &str = include_str!("../data/tables/ab_in_modular.json");
pub const CD_IN_MODULAR_JSON: &str = include_str!("../data/tables/cd_in_modular.json");
pub const MODULAR_IN_AB_JSON: &str = include_str!("../data/tables/modular_in_ab.json");
pub const MODULAR_IN_CD_JSON: &str = include_str!("../data/tables/modular_in_cd.json");
pub const P16_5_JSON: &str = include_str!("../data/tables/p16_5.json");
pub const CHECKSUMS: &str = include_str!("../data/checksums.txt");

#[derive(Debug, Clone, PartialEq)]
pub enum DataError {
    ChecksumMismatch { file: String, expected: String, actual: String },
    MissingChecksum(String),
    BadJson(String),
}

impl fmt::Display for DataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataError::ChecksumMismatch { file, expected, actual } => {
                write!(f, "checksum mismatch for {file}: expected {expected}, got {actual}")
            }
            DataError::MissingChecksum(file) => write!(f, "no checksum recorded for {file}"),
            DataError::BadJson(file) => write!(f, "malformed polynomial JSON in {file}"),
        }
    }
}

impl std::error::Error for DataError {}

fn embedded_files() -> Vec<(&'static str, &'static str)> {
    vec![
        ("tables/ab_in_modular.json", AB_IN_MODULAR_JSON),
        ("tables/cd_in_modular.json", CD_IN_MODULAR_JSON),
        ("tables/modular_in_ab.json", MODULAR_IN_AB_JSON),
        ("tables/modular_in_cd.json", MODULAR_IN_CD_JSON),
        ("tables/p16_5.json", P16_5_JSON),
        ("catalog.txt", crate::catalog::CATALOG_TEXT),
    ]
}

/// Verify the SHA-256 of every embedded data file against the manifest.
pub fn verify_checksums() -> Result<(), DataError> {
    for (name, contents) in embedded_files() {
        let line = CHECKSUMS
            .lines()
            .find(|l| l.ends_with(name))
            .ok_or_else(|| DataError::MissingChecksum(name.to_string()))?;
        let expected = line.split_whitespace().next().unwrap_or("").to_string();
        let actual = format!("{:x}", Sha256::digest(contents.as_bytes()));
        if expected != actual {
            return Err(DataError::ChecksumMismatch {
                file: name.to_string(),
                expected,
                actual,
            });
        }
    }
    Ok(())
}

/// Parse one of the table files into (variable, polynomial) pairs.
pub fn parse_table(json: &str) -> Result<Vec<(Var, Poly)>, DataError> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|_| DataError::BadJson("table".to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| DataError::BadJson("table".to_string()))?;
    let mut out = Vec::new();
    for (name, poly_json) in obj {
        let v = Var::from_name(name).ok_or_else(|| DataError::BadJson(name.clone()))?;
        let p = Poly::from_json(poly_json).map_err(|_| DataError::BadJson(name.clone()))?;
        out.push((v, p));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobi_ring::tables;

    #[test]
    fn checksums_match() {
        verify_checksums().unwrap();
    }

    fn same_table(json: &str, reference: Vec<(Var, Poly)>) {
        let mut parsed = parse_table(json).unwrap();
        parsed.sort_by_key(|(v, _)| *v);
        let mut reference = reference;
        reference.sort_by_key(|(v, _)| *v);
        assert_eq!(parsed.len(), reference.len());
        for ((v1, p1), (v2, p2)) in parsed.iter().zip(reference.iter()) {
            assert_eq!(v1, v2);
            assert_eq!(p1, p2, "table entry {}", v1.name());
        }
    }

    #[test]
    fn shipped_tables_agree_with_embedded_forms() {
        same_table(AB_IN_MODULAR_JSON, tables::ab_in_modular());
        same_table(CD_IN_MODULAR_JSON, tables::cd_in_modular());
        same_table(MODULAR_IN_AB_JSON, tables::modular_in_ab());
        same_table(MODULAR_IN_CD_JSON, tables::modular_in_cd());
        let p: serde_json::Value = serde_json::from_str(P16_5_JSON).unwrap();
        assert_eq!(Poly::from_json(&p).unwrap(), tables::p16_5());
    }
}
