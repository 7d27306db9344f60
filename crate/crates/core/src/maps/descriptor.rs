use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{enumerate_maps, formal_derivative, inner_derivation, AdditiveMap, Law, Progress};
use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// Textual map selector: `trivial`, `inner:<element>`, `formal`,
/// `table:<path>` or `enumerate[:jordan]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapDescriptor {
    Trivial,
    Inner(String),
    Formal,
    Table(PathBuf),
    Enumerate { jordan: bool },
}

impl FromStr for MapDescriptor {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = |reason: &str| Error::MapDescriptor {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let (head, arg) = match text.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (text, None),
        };
        match (head, arg) {
            ("trivial", None) => Ok(MapDescriptor::Trivial),
            ("formal", None) => Ok(MapDescriptor::Formal),
            ("inner", Some(a)) if !a.trim().is_empty() => Ok(MapDescriptor::Inner(a.to_string())),
            ("table", Some(p)) if !p.is_empty() => Ok(MapDescriptor::Table(PathBuf::from(p))),
            ("enumerate", None) => Ok(MapDescriptor::Enumerate { jordan: false }),
            ("enumerate", Some("jordan")) => Ok(MapDescriptor::Enumerate { jordan: true }),
            ("inner" | "table", _) => Err(bad("missing argument")),
            _ => Err(bad(
                "expected trivial, inner:<element>, formal, table:<path> or enumerate[:jordan]",
            )),
        }
    }
}

impl fmt::Display for MapDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapDescriptor::Trivial => write!(f, "trivial"),
            MapDescriptor::Inner(a) => write!(f, "inner:{a}"),
            MapDescriptor::Formal => write!(f, "formal"),
            MapDescriptor::Table(p) => write!(f, "table:{}", p.display()),
            MapDescriptor::Enumerate { jordan: false } => write!(f, "enumerate"),
            MapDescriptor::Enumerate { jordan: true } => write!(f, "enumerate:jordan"),
        }
    }
}

/// A resolved map together with the name it is reported under.
#[derive(Debug, Clone)]
pub struct NamedMap {
    pub name: String,
    pub map: AdditiveMap,
}

impl MapDescriptor {
    /// Resolve to concrete maps; `enumerate` yields every match in canonical order.
    pub fn resolve(&self, ring: &FiniteRing, progress: Option<&Progress>) -> Result<Vec<NamedMap>> {
        let single = |map| {
            Ok(vec![NamedMap {
                name: self.to_string(),
                map,
            }])
        };
        match self {
            MapDescriptor::Trivial => single(AdditiveMap::zero(ring)),
            MapDescriptor::Inner(text) => {
                let a = ring.parse_element(text)?;
                single(inner_derivation(ring, a))
            }
            MapDescriptor::Formal => single(formal_derivative(ring)?),
            MapDescriptor::Table(path) => {
                let raw = std::fs::read_to_string(path).map_err(|e| Error::MapDescriptor {
                    text: self.to_string(),
                    reason: e.to_string(),
                })?;
                single(Self::table_from_json(ring, &raw).map_err(|e| Error::MapDescriptor {
                    text: self.to_string(),
                    reason: e.to_string(),
                })?)
            }
            MapDescriptor::Enumerate { jordan } => {
                let law = if *jordan { Law::Jordan } else { Law::Leibniz };
                Ok(enumerate_maps(ring, law, progress)
                    .into_iter()
                    .enumerate()
                    .map(|(i, map)| NamedMap {
                        name: format!("{self}#{i}"),
                        map,
                    })
                    .collect())
            }
        }
    }

    /// Parse a JSON array of image indices.
    pub fn table_from_json(ring: &FiniteRing, raw: &str) -> Result<AdditiveMap> {
        let indices: Vec<usize> = serde_json::from_str(raw).map_err(|e| Error::MapDescriptor {
            text: "table".into(),
            reason: e.to_string(),
        })?;
        AdditiveMap::from_indices(ring, &indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    #[test]
    fn parse_and_display() {
        for text in [
            "trivial",
            "inner:E11",
            "formal",
            "table:maps/d.json",
            "enumerate",
            "enumerate:jordan",
        ] {
            let d: MapDescriptor = text.parse().unwrap();
            assert_eq!(d.to_string(), text);
        }
        assert!("inner:".parse::<MapDescriptor>().is_err());
        assert!("enumerate:lie".parse::<MapDescriptor>().is_err());
        assert!("derivative".parse::<MapDescriptor>().is_err());
    }

    #[test]
    fn resolve_variants() {
        let r = FiniteRing::build(&RingSpec::zn(4)).unwrap();
        let maps = MapDescriptor::Enumerate { jordan: true }.resolve(&r, None).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[1].name, "enumerate:jordan#1");
        assert!(MapDescriptor::Formal.resolve(&r, None).is_err());
        assert!(MapDescriptor::Inner("9".into()).resolve(&r, None).is_err());

        let dir = std::env::temp_dir().join(format!("ringlab-desc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("double.json");
        std::fs::write(&path, "[0,2,0,2]").unwrap();
        let maps = MapDescriptor::Table(path.clone()).resolve(&r, None).unwrap();
        assert!(maps[0].map.is_jordan_derivation() && !maps[0].map.is_derivation());
        std::fs::write(&path, "[0,1,0,1]").unwrap();
        assert!(MapDescriptor::Table(path).resolve(&r, None).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
