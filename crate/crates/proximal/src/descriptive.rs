//! Descriptive proximity: nearness indexed by integer feature vectors.
//!
//! A feature table assigns every point a fixed-arity vector of quantized
//! probe readings. The description of a set is its set of feature vectors,
//! two sets are descriptively near when their descriptions intersect, and
//! the induced point space makes x near y exactly when their vectors are
//! equal. Equality is an equivalence, so induced spaces are disjoint
//! unions of cliques and pass the whole axiom battery.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homotopy::FiniteMap;
use crate::space::ProximitySpace;

/// A named probe with its quantization step. Raw readings are divided by
/// the step and rounded (halves away from zero) at ingestion; all
/// downstream comparisons are exact integer matches.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub name: String,
    pub step: f64,
}

impl ProbeSpec {
    pub fn new(name: impl Into<String>, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::Invalid(format!(
                "probe step must be positive, got {step}"
            )));
        }
        Ok(ProbeSpec {
            name: name.into(),
            step,
        })
    }

    pub fn quantize(&self, raw: f64) -> i64 {
        (raw / self.step).round() as i64
    }
}

/// Integer feature vectors for a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureTable {
    points: Vec<String>,
    arity: usize,
    features: Vec<Vec<i64>>,
    index: HashMap<String, usize>,
}

impl FeatureTable {
    pub fn build(arity: usize, rows: Vec<(String, Vec<i64>)>) -> Result<Self> {
        let mut points = Vec::with_capacity(rows.len());
        let mut features = Vec::with_capacity(rows.len());
        let mut index = HashMap::with_capacity(rows.len());
        for (point, vector) in rows {
            if vector.len() != arity {
                return Err(Error::ArityMismatch {
                    point,
                    expected: arity,
                    got: vector.len(),
                });
            }
            if index.insert(point.clone(), points.len()).is_some() {
                return Err(Error::DuplicatePoint(point));
            }
            points.push(point);
            features.push(vector);
        }
        Ok(FeatureTable {
            points,
            arity,
            features,
            index,
        })
    }

    /// Parses CSV rows of the form `point_id,reading,...` and quantizes
    /// each column with its probe. Blank lines are skipped.
    pub fn from_csv(text: &str, probes: &[ProbeSpec]) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut cells = line.split(',');
            let point = cells
                .next()
                .ok_or_else(|| Error::parse("row without a point id"))?
                .trim()
                .to_string();
            let raw: Vec<&str> = cells.collect();
            if raw.len() != probes.len() {
                return Err(Error::ArityMismatch {
                    point,
                    expected: probes.len(),
                    got: raw.len(),
                });
            }
            let mut vector = Vec::with_capacity(probes.len());
            for (cell, probe) in raw.iter().zip(probes) {
                let value: f64 = cell.trim().parse().map_err(|_| {
                    Error::parse(format!("bad reading `{}` for point `{point}`", cell.trim()))
                })?;
                vector.push(probe.quantize(value));
            }
            rows.push((point, vector));
        }
        Self::build(probes.len(), rows)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn vector(&self, i: usize) -> &[i64] {
        &self.features[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    /// The set of feature vectors over E, duplicates collapsed.
    pub fn description(&self, set: &BTreeSet<usize>) -> BTreeSet<Vec<i64>> {
        set.iter().map(|&i| self.features[i].clone()).collect()
    }

    /// Descriptive nearness: descriptions intersect. Either side empty
    /// gives false.
    pub fn d_near(&self, e: &BTreeSet<usize>, f: &BTreeSet<usize>) -> bool {
        let qe = self.description(e);
        let qf = self.description(f);
        !qe.is_disjoint(&qf)
    }

    /// Descriptive intersection or union: members of E union F whose
    /// vector lies in both descriptions, or in at least one.
    pub fn d_setop(&self, e: &BTreeSet<usize>, f: &BTreeSet<usize>, op: SetOp) -> BTreeSet<usize> {
        let qe = self.description(e);
        let qf = self.description(f);
        e.union(f)
            .copied()
            .filter(|&x| {
                let v = &self.features[x];
                match op {
                    SetOp::Intersection => qe.contains(v) && qf.contains(v),
                    SetOp::Union => qe.contains(v) || qf.contains(v),
                }
            })
            .collect()
    }

    /// Point space induced by the table: x near y when their vectors are
    /// equal.
    pub fn induce_space(&self, label: impl Into<String>) -> Result<ProximitySpace> {
        if self.points.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let mut pairs = Vec::new();
        for i in 0..self.len() {
            for j in (i + 1)..self.len() {
                if self.features[i] == self.features[j] {
                    pairs.push((self.points[i].clone(), self.points[j].clone()));
                }
            }
        }
        ProximitySpace::from_pairs(label.into(), self.points.clone(), &pairs)
    }

    pub fn to_doc(&self) -> FeatureDoc {
        FeatureDoc {
            points: self.points.clone(),
            arity: self.arity,
            features: self
                .points
                .iter()
                .zip(&self.features)
                .map(|(p, v)| (p.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn from_doc(doc: &FeatureDoc) -> Result<Self> {
        let by_name: BTreeMap<&String, &Vec<i64>> =
            doc.features.iter().map(|(p, v)| (p, v)).collect();
        let mut rows = Vec::with_capacity(doc.points.len());
        for point in &doc.points {
            let vector = by_name
                .get(point)
                .ok_or_else(|| Error::parse(format!("point `{point}` has no feature row")))?;
            rows.push((point.clone(), (*vector).clone()));
        }
        Self::build(doc.arity, rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("feature doc serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: FeatureDoc =
            serde_json::from_str(text).map_err(|e| Error::parse(e.to_string()))?;
        Self::from_doc(&doc)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOp {
    Intersection,
    Union,
}

/// Interchange document for a feature table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureDoc {
    pub points: Vec<String>,
    pub arity: usize,
    pub features: BTreeMap<String, Vec<i64>>,
}

/// Descriptive continuity of an assignment between two feature-equipped
/// carriers: pc of the induced map between induced spaces. Returns the
/// violating pairs, empty when dpc holds.
pub fn dpc_violations(
    assign: &[(String, String)],
    dom_table: &FeatureTable,
    cod_table: &FeatureTable,
) -> Result<Vec<(String, String)>> {
    let dom = Arc::new(dom_table.induce_space("dom")?);
    let cod = Arc::new(cod_table.induce_space("cod")?);
    let map = FiniteMap::from_assign_doc(dom.clone(), cod, assign)?;
    Ok(map
        .pc_violations()
        .into_iter()
        .map(|(x, y)| (dom.name(x).to_string(), dom.name(y).to_string()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> FeatureTable {
        FeatureTable::build(
            1,
            vec![
                ("p".into(), vec![1]),
                ("q".into(), vec![1]),
                ("r".into(), vec![2]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_rejects_bad_rows() {
        let err = FeatureTable::build(2, vec![("p".into(), vec![1])]).unwrap_err();
        assert!(matches!(err, Error::ArityMismatch { .. }));
        let err = FeatureTable::build(
            1,
            vec![("p".into(), vec![1]), ("p".into(), vec![2])],
        )
        .unwrap_err();
        assert_eq!(err, Error::DuplicatePoint("p".into()));
    }

    #[test]
    fn descriptions_deduplicate() {
        let t = table();
        let all: BTreeSet<usize> = [0, 1, 2].into();
        assert_eq!(t.description(&all).len(), 2);
        assert!(t.d_near(&[0].into(), &[1].into()));
        assert!(!t.d_near(&[0].into(), &[2].into()));
        assert!(!t.d_near(&BTreeSet::new(), &all));
    }

    #[test]
    fn setops_follow_membership_rule() {
        let t = table();
        let e: BTreeSet<usize> = [0, 2].into();
        let f: BTreeSet<usize> = [1].into();
        // Vector of r ([2]) is only in Q(E); p and q share [1].
        assert_eq!(t.d_setop(&e, &f, SetOp::Intersection), [0, 1].into());
        assert_eq!(t.d_setop(&e, &f, SetOp::Union), [0, 1, 2].into());
    }

    #[test]
    fn induced_space_is_a_union_of_cliques() {
        let t = table();
        let space = t.induce_space("desc").unwrap();
        assert!(space.near(0, 1));
        assert!(!space.near(0, 2));
        assert!(space.check_axioms().all_hold());
        let empty = FeatureTable::build(1, vec![]).unwrap();
        assert_eq!(
            empty.induce_space("e").unwrap_err(),
            Error::EmptyCarrier
        );
    }

    #[test]
    fn d_near_matches_induced_set_near_exhaustively() {
        let t = FeatureTable::build(
            1,
            vec![
                ("a".into(), vec![0]),
                ("b".into(), vec![1]),
                ("c".into(), vec![0]),
                ("d".into(), vec![2]),
                ("e".into(), vec![1]),
            ],
        )
        .unwrap();
        let space = t.induce_space("desc").unwrap();
        let n = t.len();
        for emask in 0..(1u32 << n) {
            for fmask in 0..(1u32 << n) {
                let e: BTreeSet<usize> = (0..n).filter(|i| emask >> i & 1 == 1).collect();
                let f: BTreeSet<usize> = (0..n).filter(|i| fmask >> i & 1 == 1).collect();
                assert_eq!(t.d_near(&e, &f), space.set_near(&e, &f));
            }
        }
    }

    #[test]
    fn csv_quantizes_per_probe() {
        let probes = vec![
            ProbeSpec::new("hue", 0.5).unwrap(),
            ProbeSpec::new("height", 2.0).unwrap(),
        ];
        let t = FeatureTable::from_csv("p,0.9,3.0\nq,1.1,5.0\n\nr,0.2,0.0\n", &probes).unwrap();
        assert_eq!(t.vector(0), &[2, 2]);
        assert_eq!(t.vector(1), &[2, 3]);
        assert_eq!(t.vector(2), &[0, 0]);
        assert!(ProbeSpec::new("bad", 0.0).is_err());
        assert!(FeatureTable::from_csv("p,1.0", &probes).is_err());
        assert!(FeatureTable::from_csv("p,x,1.0", &probes).is_err());
    }

    #[test]
    fn doc_round_trip() {
        let t = table();
        let back = FeatureTable::from_json(&t.to_json()).unwrap();
        assert_eq!(t, back);
    }
}
