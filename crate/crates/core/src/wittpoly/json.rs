//! Versioned JSON form of [`WittPolySet`].

use serde::{Deserialize, Serialize};

use super::{coordinate_vars, pair_algebra, witt_algebra, LiftStrategy, VariableOrder, WittPolySet};
use crate::error::{Error, Result};
use crate::ghost::check_prime;
use crate::ncpoly::{CPoly, NcPoly};

pub const DOCUMENT_FORMAT: &str = "ncwitt/witt-polys";
pub const DOCUMENT_VERSION: u32 = 1;
/// Largest `N` accepted when reading a document.
pub const MAX_DOCUMENT_LEVEL: usize = 16;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    format: String,
    version: u32,
    p: u32,
    #[serde(rename = "N")]
    level: usize,
    variable_order: Vec<String>,
    lift: LiftStrategy,
    s: Vec<String>,
    d: Vec<String>,
    s_comm: Vec<String>,
    d_comm: Vec<String>,
    r: Vec<String>,
    e: Vec<String>,
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

impl WittPolySet {
    pub fn to_json(&self) -> String {
        let doc = Document {
            format: DOCUMENT_FORMAT.to_string(),
            version: DOCUMENT_VERSION,
            p: self.p,
            level: self.level,
            variable_order: self.variable_order().to_vec(),
            lift: self.lift,
            s: strings(&self.s),
            d: strings(&self.d),
            s_comm: strings(&self.s_comm),
            d_comm: strings(&self.d_comm),
            r: strings(&self.r),
            e: strings(&self.e),
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
        text.push('\n');
        text
    }

    /// Reads a document written by [`to_json`](Self::to_json) and checks its
    /// invariants: `s0 = X0 + Y0`, `d0 = X0 - Y0`, commutative images match
    /// the `*_comm` lists, each polynomial is in canonical form for its lift,
    /// and `r`, `e` are the specialisations of `s`, `d`. Documents with
    /// `p = 2` are accepted.
    pub fn from_json(text: &str) -> Result<WittPolySet> {
        let doc: Document = serde_json::from_str(text)?;
        if doc.format != DOCUMENT_FORMAT || doc.version != DOCUMENT_VERSION {
            return Err(Error::Document(format!(
                "expected format {DOCUMENT_FORMAT:?} version {DOCUMENT_VERSION}, got {:?} version {}",
                doc.format, doc.version
            )));
        }
        check_prime(doc.p as u64, true)?;
        if doc.level > MAX_DOCUMENT_LEVEL {
            return Err(Error::Document(format!(
                "N = {} exceeds the supported maximum {MAX_DOCUMENT_LEVEL}",
                doc.level
            )));
        }
        let len = doc.level + 1;
        for (name, list) in [
            ("s", &doc.s),
            ("d", &doc.d),
            ("s_comm", &doc.s_comm),
            ("d_comm", &doc.d_comm),
            ("r", &doc.r),
            ("e", &doc.e),
        ] {
            if list.len() != len {
                return Err(Error::Document(format!(
                    "{name} has {} entries, expected {len}",
                    list.len()
                )));
            }
        }
        let algebra = witt_algebra(doc.level, &VariableOrder::Explicit(doc.variable_order))?;
        coordinate_vars(&algebra, doc.level)?;
        let pair = pair_algebra();
        let nc = |list: &[String], alg| list.iter().map(|t| NcPoly::parse(t, alg)).collect::<Result<Vec<_>>>();
        let comm = |list: &[String]| -> Result<Vec<CPoly>> {
            Ok(nc(list, &algebra)?.iter().map(NcPoly::commutative_image).collect())
        };
        let set = WittPolySet {
            p: doc.p,
            level: doc.level,
            lift: doc.lift,
            s: nc(&doc.s, &algebra)?,
            d: nc(&doc.d, &algebra)?,
            s_comm: comm(&doc.s_comm)?,
            d_comm: comm(&doc.d_comm)?,
            r: nc(&doc.r, &pair)?,
            e: nc(&doc.e, &pair)?,
            algebra: algebra.clone(),
            pair_algebra: pair.clone(),
        };
        set.validate()?;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wittpoly::GenerateOptions;

    #[test]
    fn round_trip() {
        for lift in [LiftStrategy::Necklace, LiftStrategy::Sorted] {
            let opts = GenerateOptions {
                lift,
                ..Default::default()
            };
            let w = WittPolySet::generate(3, 2, &opts).unwrap();
            let back = WittPolySet::from_json(&w.to_json()).unwrap();
            assert_eq!(back, w);
            assert_eq!(back.to_json(), w.to_json());
        }
    }

    #[test]
    fn rejects_tampering() {
        let json = WittPolySet::generate(3, 1, &GenerateOptions::default())
            .unwrap()
            .to_json();
        let tampered = [
            json.replace("\"r\": [\n    \"X + Y\"", "\"r\": [\n    \"X - Y\""),
            json.replace("\"version\": 1", "\"version\": 2"),
            json.replace("\"p\": 3", "\"p\": 9"),
            json.replace("\"N\": 1", "\"N\": 2"),
            json.replace("\"lift\": \"necklace\"", "\"lift\": \"fancy\""),
            json.replace("\"X1 + Y1 - X0^2*Y0 - X0*Y0^2\"", "\"X1 + Y1 - X0^2*Y0\""),
            json.replace('}', ", \"extra\": 1}"),
        ];
        for t in &tampered {
            assert_ne!(t, &json);
            assert!(WittPolySet::from_json(t).is_err(), "accepted:\n{t}");
        }
    }
}
