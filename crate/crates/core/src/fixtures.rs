//! Reference facet-volume fixtures, embedded at build time and overridable
//! from a file. Fixture values feed verification reports only; no
//! computation path reads them.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exact::Int;
use crate::{Error, Result};

const EMBEDDED: &str = include_str!("../data/facet_fixtures.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawFixtures {
    pub version: u32,
    pub description: String,
    /// n (as string key) -> triangle rows of decimal strings.
    pub facet_triangles: BTreeMap<String, Vec<Vec<String>>>,
    pub triangle_provenance: BTreeMap<String, String>,
    /// n -> full palindromic diagonal as decimal strings.
    pub diagonals: BTreeMap<String, Vec<String>>,
    pub diagonal_provenance: BTreeMap<String, String>,
}

/// Parsed fixture data with big-integer values.
#[derive(Clone, Debug)]
pub struct Fixtures {
    pub triangles: BTreeMap<u32, Vec<Vec<Int>>>,
    pub triangle_provenance: BTreeMap<u32, String>,
    pub diagonals: BTreeMap<u32, Vec<Int>>,
    pub diagonal_provenance: BTreeMap<u32, String>,
}

impl Fixtures {
    pub fn from_raw(raw: &RawFixtures) -> Result<Self> {
        let parse_n = |key: &String| -> Result<u32> {
            key.parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad fixture key `{key}`")))
        };
        let parse_int = |s: &String| -> Result<Int> {
            Int::from_str(s).map_err(|_| Error::InvalidInput(format!("bad fixture value `{s}`")))
        };
        let mut triangles = BTreeMap::new();
        for (key, rows) in &raw.facet_triangles {
            let n = parse_n(key)?;
            let mut triangle = Vec::new();
            for (idx, row) in rows.iter().enumerate() {
                if row.len() != idx + 1 {
                    return Err(Error::InvalidInput(format!(
                        "fixture triangle for n={n} is not triangular"
                    )));
                }
                triangle.push(row.iter().map(parse_int).collect::<Result<Vec<_>>>()?);
            }
            if triangle.len() != (n as usize).saturating_sub(2) {
                return Err(Error::InvalidInput(format!(
                    "fixture triangle for n={n} has {} rows",
                    triangle.len()
                )));
            }
            triangles.insert(n, triangle);
        }
        let mut diagonals = BTreeMap::new();
        for (key, values) in &raw.diagonals {
            let n = parse_n(key)?;
            let diag = values.iter().map(parse_int).collect::<Result<Vec<_>>>()?;
            if diag.len() != (n as usize).saturating_sub(2) {
                return Err(Error::InvalidInput(format!(
                    "fixture diagonal for n={n} has length {}",
                    diag.len()
                )));
            }
            diagonals.insert(n, diag);
        }
        let mut triangle_provenance = BTreeMap::new();
        for (key, v) in &raw.triangle_provenance {
            triangle_provenance.insert(parse_n(key)?, v.clone());
        }
        let mut diagonal_provenance = BTreeMap::new();
        for (key, v) in &raw.diagonal_provenance {
            diagonal_provenance.insert(parse_n(key)?, v.clone());
        }
        Ok(Fixtures { triangles, triangle_provenance, diagonals, diagonal_provenance })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawFixtures = serde_json::from_str(text)?;
        Fixtures::from_raw(&raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Fixtures::from_json(&std::fs::read_to_string(path)?)
    }
}

/// The embedded fixture set.
pub fn embedded() -> &'static Fixtures {
    static FIXED: OnceLock<Fixtures> = OnceLock::new();
    FIXED.get_or_init(|| Fixtures::from_json(EMBEDDED).expect("embedded fixtures parse"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn embedded_fixtures_parse_and_shape_check() {
        let fx = embedded();
        assert_eq!(fx.triangles[&3], vec![vec![int(1)]]);
        assert_eq!(fx.triangles[&7][0], vec![int(840)]);
        assert_eq!(fx.diagonals[&10].len(), 8);
        // Diagonals are palindromic by construction.
        for (n, diag) in &fx.diagonals {
            let mut rev = diag.clone();
            rev.reverse();
            assert_eq!(&rev, diag, "n={n}");
        }
        // Triangle diagonals agree with the diagonal table where both exist.
        for (n, tri) in &fx.triangles {
            let from_tri: Vec<Int> =
                tri.iter().enumerate().map(|(i, row)| row[i].clone()).collect();
            assert_eq!(&from_tri, &fx.diagonals[n], "n={n}");
        }
    }
}
