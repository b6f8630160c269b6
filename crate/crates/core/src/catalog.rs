//! Catalog records and JSON persistence.
//!
//! The on-disk encoding of an S-ring is
//! `{"group":[n1,...],"basic_sets":[[[coords],...],...]}` with classes
//! sorted by their least representative and class 0 the identity class.

use crate::group::{make_group, AbelianGroup, Elem};
use crate::sring::{verify_sring, SRing};
use crate::{Result, SchurError, TOOL_VERSION};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

/// One enumerated or sampled S-ring with its annotations.
#[derive(Debug, Clone)]
pub struct CatalogRecord {
    pub ring: SRing,
    pub schurian: Option<bool>,
    pub stabilizer_orbits: Option<Vec<Vec<Elem>>>,
    pub e9_family: Option<String>,
    pub trichotomy: Option<String>,
    pub trichotomy_tags: Option<Vec<String>>,
    pub dense: Option<bool>,
    pub cyclotomic_witness_order: Option<u32>,
}

impl CatalogRecord {
    pub fn new(ring: SRing) -> Self {
        CatalogRecord {
            ring,
            schurian: None,
            stabilizer_orbits: None,
            e9_family: None,
            trichotomy: None,
            trichotomy_tags: None,
            dense: None,
            cyclotomic_witness_order: None,
        }
    }
}

/// A collection of records over one group.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub group: Arc<AbelianGroup>,
    pub records: Vec<CatalogRecord>,
    pub complete: bool,
    pub elapsed: Duration,
}

fn class_to_coords(g: &AbelianGroup, class: &[Elem]) -> Vec<Vec<u32>> {
    class.iter().map(|&e| g.coords(e).to_vec()).collect()
}

fn coords_to_class(g: &AbelianGroup, class: &[Vec<u32>]) -> Result<Vec<Elem>> {
    class
        .iter()
        .map(|coords| {
            if coords.len() != g.num_factors() {
                return Err(SchurError::Format(format!(
                    "element {coords:?} has wrong arity for group {g}"
                )));
            }
            for (c, o) in coords.iter().zip(g.orders()) {
                if c >= o {
                    return Err(SchurError::Format(format!(
                        "coordinate {c} out of range in {coords:?}"
                    )));
                }
            }
            Ok(g.elem(coords))
        })
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RecordJson {
    pub group: Vec<u32>,
    pub basic_sets: Vec<Vec<Vec<u32>>>,
    pub rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schurian: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer_orbits: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e9_family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trichotomy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trichotomy_tags: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dense: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cyclotomic_witness_order: Option<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CatalogJson {
    pub group: Vec<u32>,
    pub complete: bool,
    pub elapsed_s: f64,
    pub tool_version: String,
    pub records: Vec<RecordJson>,
}

impl Catalog {
    pub fn to_json(&self) -> CatalogJson {
        let g = &self.group;
        CatalogJson {
            group: g.orders().to_vec(),
            complete: self.complete,
            elapsed_s: self.elapsed.as_secs_f64(),
            tool_version: TOOL_VERSION.to_string(),
            records: self
                .records
                .iter()
                .map(|r| RecordJson {
                    group: g.orders().to_vec(),
                    basic_sets: r
                        .ring
                        .basic_sets()
                        .iter()
                        .map(|c| class_to_coords(g, c))
                        .collect(),
                    rank: r.ring.rank(),
                    schurian: r.schurian,
                    stabilizer_orbits: r
                        .stabilizer_orbits
                        .as_ref()
                        .map(|os| os.iter().map(|o| class_to_coords(g, o)).collect()),
                    e9_family: r.e9_family.clone(),
                    trichotomy: r.trichotomy.clone(),
                    trichotomy_tags: r.trichotomy_tags.clone(),
                    dense: r.dense,
                    cyclotomic_witness_order: r.cyclotomic_witness_order,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CatalogJson) -> Result<Catalog> {
        let group = make_group(&json.group)?;
        let mut records = Vec::with_capacity(json.records.len());
        for rj in &json.records {
            if rj.group != json.group {
                return Err(SchurError::Format(
                    "record group differs from catalog group".into(),
                ));
            }
            let classes: Result<Vec<Vec<Elem>>> = rj
                .basic_sets
                .iter()
                .map(|c| coords_to_class(&group, c))
                .collect();
            let ring = verify_sring(&group, &classes?)
                .map_err(|e| SchurError::Format(format!("record is not an S-ring: {e}")))?;
            if ring.rank() != rj.rank {
                return Err(SchurError::Format(format!(
                    "declared rank {} does not match {} classes",
                    rj.rank,
                    ring.rank()
                )));
            }
            let stabilizer_orbits = match &rj.stabilizer_orbits {
                None => None,
                Some(os) => Some(
                    os.iter()
                        .map(|o| coords_to_class(&group, o))
                        .collect::<Result<Vec<_>>>()?,
                ),
            };
            records.push(CatalogRecord {
                ring,
                schurian: rj.schurian,
                stabilizer_orbits,
                e9_family: rj.e9_family.clone(),
                trichotomy: rj.trichotomy.clone(),
                trichotomy_tags: rj.trichotomy_tags.clone(),
                dense: rj.dense,
                cyclotomic_witness_order: rj.cyclotomic_witness_order,
            });
        }
        Ok(Catalog {
            group,
            records,
            complete: json.complete,
            elapsed: Duration::from_secs_f64(json.elapsed_s.max(0.0)),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let json = self.to_json();
        let text = serde_json::to_string_pretty(&json)
            .map_err(|e| SchurError::Format(e.to_string()))?;
        std::fs::write(path, text + "\n").map_err(|e| SchurError::Io(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| SchurError::Io(e.to_string()))?;
        let json: CatalogJson =
            serde_json::from_str(&text).map_err(|e| SchurError::Format(e.to_string()))?;
        Catalog::from_json(&json)
    }
}

/// Standalone S-ring encoding, also used for closure seeds.
#[derive(Debug, Serialize, Deserialize)]
pub struct RingJson {
    pub group: Vec<u32>,
    pub basic_sets: Vec<Vec<Vec<u32>>>,
}

impl RingJson {
    pub fn of(ring: &SRing) -> RingJson {
        RingJson {
            group: ring.group().orders().to_vec(),
            basic_sets: ring
                .basic_sets()
                .iter()
                .map(|c| class_to_coords(ring.group(), c))
                .collect(),
        }
    }

    pub fn to_ring(&self) -> Result<SRing> {
        let group = make_group(&self.group)?;
        let classes: Result<Vec<Vec<Elem>>> = self
            .basic_sets
            .iter()
            .map(|c| coords_to_class(&group, c))
            .collect();
        verify_sring(&group, &classes?)
            .map_err(|e| SchurError::Format(format!("not an S-ring: {e}")))
    }

    /// Interpret the basic sets as disjoint seed blocks over the group.
    pub fn to_blocks(&self) -> Result<(Arc<AbelianGroup>, Vec<Vec<Elem>>)> {
        let group = make_group(&self.group)?;
        let blocks: Result<Vec<Vec<Elem>>> = self
            .basic_sets
            .iter()
            .map(|c| coords_to_class(&group, c))
            .collect();
        Ok((group, blocks?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{enumerate_srings, EnumerationTask};
    use crate::group::make_group;

    #[test]
    fn catalog_round_trip() {
        let g = make_group(&[3, 3]).unwrap();
        let mut cat = enumerate_srings(&EnumerationTask::new(&g)).unwrap();
        cat.records[0].schurian = Some(true);
        cat.records[1].e9_family = Some("cyclotomic".into());
        let json = serde_json::to_string(&cat.to_json()).unwrap();
        let parsed: CatalogJson = serde_json::from_str(&json).unwrap();
        let back = Catalog::from_json(&parsed).unwrap();
        assert_eq!(back.records.len(), cat.records.len());
        for (a, b) in back.records.iter().zip(&cat.records) {
            assert_eq!(a.ring, b.ring);
            assert_eq!(a.schurian, b.schurian);
            assert_eq!(a.e9_family, b.e9_family);
        }
    }

    #[test]
    fn malformed_record_rejected() {
        let json = r#"{
            "group": [4],
            "complete": true,
            "elapsed_s": 0.0,
            "tool_version": "_",
            "records": [
                {"group": [4], "basic_sets": [[[0]], [[1],[2]], [[3]]], "rank": 3}
            ]
        }"#;
        let parsed: CatalogJson = serde_json::from_str(json).unwrap();
        assert!(Catalog::from_json(&parsed).is_err());
    }
}
