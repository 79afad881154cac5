//! Maps between finite proximity spaces and the certificate types for
//! discrete homotopy.
//!
//! A homotopy between pc-maps f and g is a chain of maps h0..hk with
//! h0 = f, hk = g, every layer pc, and every consecutive pair satisfying
//! the one-step condition: x near x' implies h_i(x) near h_{i+1}(x').
//! Equivalently the chain is a pc-map on domain x interval(k). Certificates
//! store the full chain so a verdict can be re-verified independently of
//! how the search found it.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{ProximitySpace, SpaceDoc};

/// A total map between two finite proximity spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMap {
    domain: Arc<ProximitySpace>,
    codomain: Arc<ProximitySpace>,
    assign: Vec<u32>,
}

pub(crate) fn spaces_eq(a: &Arc<ProximitySpace>, b: &Arc<ProximitySpace>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteMap {
    pub fn new(
        domain: Arc<ProximitySpace>,
        codomain: Arc<ProximitySpace>,
        assign: Vec<u32>,
    ) -> Result<Self> {
        if assign.len() != domain.len() {
            return Err(Error::Invalid(format!(
                "assignment covers {} points, domain has {}",
                assign.len(),
                domain.len()
            )));
        }
        if let Some(&img) = assign.iter().find(|&&img| img as usize >= codomain.len()) {
            return Err(Error::Invalid(format!(
                "image index {img} outside the codomain"
            )));
        }
        Ok(FiniteMap {
            domain,
            codomain,
            assign,
        })
    }

    pub fn identity(space: Arc<ProximitySpace>) -> Self {
        let assign = (0..space.len() as u32).collect();
        FiniteMap {
            domain: space.clone(),
            codomain: space,
            assign,
        }
    }

    pub fn constant(
        domain: Arc<ProximitySpace>,
        codomain: Arc<ProximitySpace>,
        target: usize,
    ) -> Result<Self> {
        if target >= codomain.len() {
            return Err(Error::Invalid(format!(
                "constant target {target} outside the codomain"
            )));
        }
        let assign = vec![target as u32; domain.len()];
        Ok(FiniteMap {
            domain,
            codomain,
            assign,
        })
    }

    pub fn domain(&self) -> &Arc<ProximitySpace> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<ProximitySpace> {
        &self.codomain
    }

    pub fn assign(&self) -> &[u32] {
        &self.assign
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assign[i] as usize
    }

    pub fn same_signature(&self, other: &FiniteMap) -> bool {
        spaces_eq(&self.domain, &other.domain) && spaces_eq(&self.codomain, &other.codomain)
    }

    /// g.compose(f) is g after f.
    pub fn compose(&self, inner: &FiniteMap) -> Result<FiniteMap> {
        if !spaces_eq(&inner.codomain, &self.domain) {
            return Err(Error::SignatureMismatch);
        }
        let assign = inner.assign.iter().map(|&x| self.assign[x as usize]).collect();
        Ok(FiniteMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            assign,
        })
    }

    /// Restriction to a subspace of the domain. `sub` must be the subspace
    /// on `members` (same names, same order).
    pub fn restrict(&self, sub: &Arc<ProximitySpace>, members: &[usize]) -> FiniteMap {
        let assign = members.iter().map(|&i| self.assign[i]).collect();
        FiniteMap {
            domain: sub.clone(),
            codomain: self.codomain.clone(),
            assign,
        }
    }

    /// Replaces a structurally equal codomain with another space carrying a
    /// different relation on the same carrier (fineness transfers).
    pub fn with_codomain(&self, codomain: Arc<ProximitySpace>) -> Result<FiniteMap> {
        if codomain.points() != self.codomain.points() {
            return Err(Error::CarrierMismatch {
                left: self.codomain.label().to_string(),
                right: codomain.label().to_string(),
            });
        }
        Ok(FiniteMap {
            domain: self.domain.clone(),
            codomain,
            assign: self.assign.clone(),
        })
    }

    /// Same carrier swap on the domain side.
    pub fn with_domain(&self, domain: Arc<ProximitySpace>) -> Result<FiniteMap> {
        if domain.points() != self.domain.points() {
            return Err(Error::CarrierMismatch {
                left: self.domain.label().to_string(),
                right: domain.label().to_string(),
            });
        }
        Ok(FiniteMap {
            domain,
            codomain: self.codomain.clone(),
            assign: self.assign.clone(),
        })
    }

    /// All near pairs whose images break proximal continuity, canonical order.
    pub fn pc_violations(&self) -> Vec<(usize, usize)> {
        let mut bad = Vec::new();
        for x in 0..self.domain.len() {
            for &y in self.domain.neighbors(x) {
                let y = y as usize;
                if x < y && !self.codomain.near(self.apply(x), self.apply(y)) {
                    bad.push((x, y));
                }
            }
        }
        bad
    }

    pub fn is_pc(&self) -> bool {
        self.pc_violations().is_empty()
    }

    pub fn require_pc(&self) -> Result<()> {
        match self.pc_violations().first() {
            None => Ok(()),
            Some(&(x, y)) => Err(Error::NotPc(
                self.domain.name(x).to_string(),
                self.domain.name(y).to_string(),
            )),
        }
    }

    pub fn to_doc(&self) -> MapDoc {
        MapDoc {
            domain: self.domain.to_doc(),
            codomain: self.codomain.to_doc(),
            assign: (0..self.domain.len())
                .map(|i| {
                    (
                        self.domain.name(i).to_string(),
                        self.codomain.name(self.apply(i)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn from_doc(doc: &MapDoc) -> Result<FiniteMap> {
        let domain = Arc::new(ProximitySpace::from_doc(&doc.domain)?);
        let codomain = Arc::new(ProximitySpace::from_doc(&doc.codomain)?);
        Self::from_assign_doc(domain, codomain, &doc.assign)
    }

    /// Builds the assignment against already constructed spaces.
    pub fn from_assign_doc(
        domain: Arc<ProximitySpace>,
        codomain: Arc<ProximitySpace>,
        assign: &[(String, String)],
    ) -> Result<FiniteMap> {
        let mut table = vec![u32::MAX; domain.len()];
        for (from, to) in assign {
            let i = domain.index_of(from)?;
            let j = codomain.index_of(to)?;
            if table[i] != u32::MAX {
                return Err(Error::DuplicatePoint(from.clone()));
            }
            table[i] = j as u32;
        }
        if let Some(i) = table.iter().position(|&v| v == u32::MAX) {
            return Err(Error::parse(format!(
                "point `{}` has no image",
                domain.name(i)
            )));
        }
        FiniteMap::new(domain, codomain, table)
    }
}

/// Interchange document for a map, spaces embedded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapDoc {
    pub domain: SpaceDoc,
    pub codomain: SpaceDoc,
    pub assign: Vec<(String, String)>,
}

/// The discrete interval of length k: points "0".."k", consecutive near.
pub fn discrete_interval(k: usize) -> ProximitySpace {
    ProximitySpace::path(k + 1)
        .expect("interval carrier is nonempty")
        .relabel(format!("interval{k}"))
}

/// A point sequence with consecutive members near; loops make repetition
/// legal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCertificate {
    pub points: Vec<usize>,
}

impl PathCertificate {
    pub fn verify(&self, space: &ProximitySpace) -> bool {
        !self.points.is_empty()
            && self.points.iter().all(|&p| p < space.len())
            && self
                .points
                .windows(2)
                .all(|w| space.near(w[0], w[1]))
    }

    pub fn names(&self, space: &ProximitySpace) -> Vec<String> {
        self.points.iter().map(|&p| space.name(p).to_string()).collect()
    }
}

/// Full homotopy chain between two maps sharing a signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyCertificate {
    pub domain: Arc<ProximitySpace>,
    pub codomain: Arc<ProximitySpace>,
    /// Layer assignments; first is the source map, last the target.
    pub layers: Vec<Vec<u32>>,
}

impl HomotopyCertificate {
    /// Number of one-step transitions (k = layers - 1).
    pub fn steps(&self) -> usize {
        self.layers.len().saturating_sub(1)
    }

    pub fn layer_map(&self, i: usize) -> FiniteMap {
        FiniteMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            assign: self.layers[i].clone(),
        }
    }

    /// Reversed chain certifies the symmetric homotopy.
    pub fn reversed(&self) -> HomotopyCertificate {
        let mut layers = self.layers.clone();
        layers.reverse();
        HomotopyCertificate {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            layers,
        }
    }

    /// Concatenation certifies transitivity; the shared middle map appears
    /// once.
    pub fn concat(&self, next: &HomotopyCertificate) -> Result<HomotopyCertificate> {
        if !spaces_eq(&self.domain, &next.domain) || !spaces_eq(&self.codomain, &next.codomain) {
            return Err(Error::SignatureMismatch);
        }
        if self.layers.last() != next.layers.first() {
            return Err(Error::Invalid(
                "chains do not meet at a shared map".into(),
            ));
        }
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().skip(1).cloned());
        Ok(HomotopyCertificate {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            layers,
        })
    }

    /// Composes every layer with a pc-map into the domain; certifies the
    /// homotopy of the composed endpoints.
    pub fn precompose(&self, inner: &FiniteMap) -> Result<HomotopyCertificate> {
        if !spaces_eq(inner.codomain(), &self.domain) {
            return Err(Error::SignatureMismatch);
        }
        let layers = self
            .layers
            .iter()
            .map(|layer| inner.assign().iter().map(|&x| layer[x as usize]).collect())
            .collect();
        Ok(HomotopyCertificate {
            domain: inner.domain().clone(),
            codomain: self.codomain.clone(),
            layers,
        })
    }

    /// Composes a pc-map after every layer.
    pub fn postcompose(&self, outer: &FiniteMap) -> Result<HomotopyCertificate> {
        if !spaces_eq(outer.domain(), &self.codomain) {
            return Err(Error::SignatureMismatch);
        }
        let layers = self
            .layers
            .iter()
            .map(|layer| layer.iter().map(|&y| outer.assign()[y as usize]).collect())
            .collect();
        Ok(HomotopyCertificate {
            domain: self.domain.clone(),
            codomain: outer.codomain().clone(),
            layers,
        })
    }

    /// Restriction of every layer to a subspace of the domain.
    pub fn restrict(&self, sub: &Arc<ProximitySpace>, members: &[usize]) -> HomotopyCertificate {
        let layers = self
            .layers
            .iter()
            .map(|layer| members.iter().map(|&i| layer[i]).collect())
            .collect();
        HomotopyCertificate {
            domain: sub.clone(),
            codomain: self.codomain.clone(),
            layers,
        }
    }

    pub fn to_doc(&self) -> CertificateDoc {
        CertificateDoc {
            layers: self
                .layers
                .iter()
                .map(|layer| {
                    layer
                        .iter()
                        .enumerate()
                        .map(|(i, &img)| {
                            (
                                self.domain.name(i).to_string(),
                                self.codomain.name(img as usize).to_string(),
                            )
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_doc(
        domain: Arc<ProximitySpace>,
        codomain: Arc<ProximitySpace>,
        doc: &CertificateDoc,
    ) -> Result<HomotopyCertificate> {
        let mut layers = Vec::with_capacity(doc.layers.len());
        for layer in &doc.layers {
            let mut assign = vec![u32::MAX; domain.len()];
            for (from, to) in layer {
                assign[domain.index_of(from)?] = codomain.index_of(to)? as u32;
            }
            if assign.iter().any(|&v| v == u32::MAX) {
                return Err(Error::parse("certificate layer is not total"));
            }
            layers.push(assign);
        }
        Ok(HomotopyCertificate {
            domain,
            codomain,
            layers,
        })
    }
}

/// Layer assignments by point name, one entry per layer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub layers: Vec<BTreeMap<String, String>>,
}

/// Why a certificate failed verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "code", rename_all = "snake_case")]
pub enum CertificateDefect {
    SignatureMismatch,
    EmptyChain,
    EndpointMismatch { which: String },
    LayerNotPc { layer: usize, x: String, y: String },
    StepViolation { layer: usize, x: String, y: String },
}

/// Checks a chain end to end: endpoints, pc of every layer, and the
/// one-step condition between consecutive layers.
pub fn verify_homotopy(
    cert: &HomotopyCertificate,
    f: &FiniteMap,
    g: &FiniteMap,
) -> std::result::Result<(), CertificateDefect> {
    if !f.same_signature(g)
        || !spaces_eq(&cert.domain, f.domain())
        || !spaces_eq(&cert.codomain, f.codomain())
    {
        return Err(CertificateDefect::SignatureMismatch);
    }
    if cert.layers.is_empty() {
        return Err(CertificateDefect::EmptyChain);
    }
    let dom = &cert.domain;
    let cod = &cert.codomain;
    if cert.layers.iter().any(|layer| layer.len() != dom.len()) {
        return Err(CertificateDefect::SignatureMismatch);
    }
    if cert.layers[0] != f.assign() {
        return Err(CertificateDefect::EndpointMismatch {
            which: "first".into(),
        });
    }
    if cert.layers[cert.layers.len() - 1] != g.assign() {
        return Err(CertificateDefect::EndpointMismatch {
            which: "last".into(),
        });
    }
    for (idx, layer) in cert.layers.iter().enumerate() {
        for x in 0..dom.len() {
            for &y in dom.neighbors(x) {
                let y = y as usize;
                if x < y && !cod.near(layer[x] as usize, layer[y] as usize) {
                    return Err(CertificateDefect::LayerNotPc {
                        layer: idx,
                        x: dom.name(x).to_string(),
                        y: dom.name(y).to_string(),
                    });
                }
            }
        }
    }
    for idx in 1..cert.layers.len() {
        let a = &cert.layers[idx - 1];
        let b = &cert.layers[idx];
        if let Some((x, y)) = one_step_violation(dom, cod, a, b) {
            return Err(CertificateDefect::StepViolation {
                layer: idx - 1,
                x: dom.name(x).to_string(),
                y: dom.name(y).to_string(),
            });
        }
    }
    Ok(())
}

/// First near pair (x, y) with a(x) far from b(y), if any. The condition is
/// checked over ordered pairs, loops included.
pub(crate) fn one_step_violation(
    dom: &ProximitySpace,
    cod: &ProximitySpace,
    a: &[u32],
    b: &[u32],
) -> Option<(usize, usize)> {
    for x in 0..dom.len() {
        if !cod.near(a[x] as usize, b[x] as usize) {
            return Some((x, x));
        }
        for &y in dom.neighbors(x) {
            let y = y as usize;
            if !cod.near(a[x] as usize, b[y] as usize) {
                return Some((x, y));
            }
        }
    }
    None
}

/// Outcome of the bijectivity / pc / inverse pc battery.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCheck {
    pub bijective: bool,
    pub forward_pc: bool,
    pub inverse_pc: bool,
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        self.bijective && self.forward_pc && self.inverse_pc
    }
}

/// Proximity isomorphism test: bijective, pc, inverse pc.
pub fn iso_check(map: &FiniteMap) -> IsoCheck {
    let n = map.domain().len();
    let m = map.codomain().len();
    let mut seen = vec![false; m];
    let mut bijective = n == m;
    for x in 0..n {
        let y = map.apply(x);
        if seen[y] {
            bijective = false;
        }
        seen[y] = true;
    }
    bijective &= seen.iter().all(|&s| s);
    let forward_pc = map.is_pc();
    let inverse_pc = if bijective {
        let mut inv = vec![0u32; m];
        for x in 0..n {
            inv[map.apply(x)] = x as u32;
        }
        let back = FiniteMap {
            domain: map.codomain().clone(),
            codomain: map.domain().clone(),
            assign: inv,
        };
        back.is_pc()
    } else {
        false
    };
    IsoCheck {
        bijective,
        forward_pc,
        inverse_pc,
    }
}

/// Glues two maps over the union of their domains. When no union space is
/// supplied one is constructed: carrier is the name union, relation the
/// union of both relations, points absent from both relations stay far.
pub fn glue(
    f1: &FiniteMap,
    f2: &FiniteMap,
    union_space: Option<&Arc<ProximitySpace>>,
) -> Result<FiniteMap> {
    if !spaces_eq(f1.codomain(), f2.codomain()) {
        return Err(Error::CodomainMismatch);
    }
    let d1 = f1.domain();
    let d2 = f2.domain();
    for name in d2.points() {
        if let Ok(i1) = d1.index_of(name) {
            let i2 = d2.index_of(name).expect("name from iteration");
            if f1.apply(i1) != f2.apply(i2) {
                return Err(Error::DisagreeOnOverlap(name.clone()));
            }
        }
    }
    let union = match union_space {
        Some(u) => {
            for name in d1.points().iter().chain(d2.points()) {
                u.index_of(name)?;
            }
            u.clone()
        }
        None => {
            let mut points: Vec<String> = d1.points().to_vec();
            for name in d2.points() {
                if d1.index_of(name).is_err() {
                    points.push(name.clone());
                }
            }
            let mut pairs: Vec<(String, String)> = Vec::new();
            for space in [d1, d2] {
                for i in 0..space.len() {
                    for &j in space.neighbors(i) {
                        let j = j as usize;
                        if i < j {
                            pairs.push((
                                space.name(i).to_string(),
                                space.name(j).to_string(),
                            ));
                        }
                    }
                }
            }
            Arc::new(ProximitySpace::from_pairs(
                format!("{}+{}", d1.label(), d2.label()),
                points,
                &pairs,
            )?)
        }
    };
    let mut assign = vec![u32::MAX; union.len()];
    for (space, map) in [(d1, f1), (d2, f2)] {
        for i in 0..space.len() {
            let u = union.index_of(space.name(i))?;
            assign[u] = map.assign()[i];
        }
    }
    if assign.iter().any(|&v| v == u32::MAX) {
        return Err(Error::Invalid(
            "union space has points outside both domains".into(),
        ));
    }
    FiniteMap::new(union, f1.codomain().clone(), assign)
}

/// Subspace plus the index translation used to restrict maps onto it.
pub fn subspace_with_members(
    base: &ProximitySpace,
    members: &BTreeSet<usize>,
) -> Result<(Arc<ProximitySpace>, Vec<usize>)> {
    let sub = Arc::new(base.subspace(members)?);
    Ok((sub, members.iter().copied().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(space: ProximitySpace) -> Arc<ProximitySpace> {
        Arc::new(space)
    }

    #[test]
    fn pc_violations_are_reported_in_order() {
        let path = arc(ProximitySpace::path(3).unwrap());
        let disc = arc(ProximitySpace::discrete(
            "d",
            vec!["a".into(), "b".into(), "c".into()],
        )
        .unwrap());
        let id_like = FiniteMap::new(path.clone(), disc.clone(), vec![0, 1, 2]).unwrap();
        assert_eq!(id_like.pc_violations(), vec![(0, 1), (1, 2)]);
        assert!(matches!(id_like.require_pc(), Err(Error::NotPc(_, _))));
        let constant = FiniteMap::constant(path.clone(), disc, 1).unwrap();
        assert!(constant.is_pc());
    }

    #[test]
    fn every_map_into_indiscrete_is_pc() {
        let path = arc(ProximitySpace::path(4).unwrap());
        let ind = arc(ProximitySpace::indiscrete(
            "i",
            vec!["x".into(), "y".into()],
        )
        .unwrap());
        for code in 0..16u32 {
            let assign = (0..4).map(|i| (code >> i) & 1).collect();
            let map = FiniteMap::new(path.clone(), ind.clone(), assign).unwrap();
            assert!(map.is_pc());
        }
    }

    #[test]
    fn certificate_verifies_and_rejects_defects() {
        let path = arc(ProximitySpace::path(3).unwrap());
        let id = FiniteMap::identity(path.clone());
        let fold = HomotopyCertificate {
            domain: path.clone(),
            codomain: path.clone(),
            layers: vec![
                vec![0, 1, 2],
                vec![0, 1, 1],
                vec![0, 0, 1],
                vec![0, 0, 0],
            ],
        };
        let const0 = FiniteMap::constant(path.clone(), path.clone(), 0).unwrap();
        assert!(verify_homotopy(&fold, &id, &const0).is_ok());

        let wrong_end = verify_homotopy(&fold, &id, &id);
        assert!(matches!(
            wrong_end,
            Err(CertificateDefect::EndpointMismatch { .. })
        ));

        let broken = HomotopyCertificate {
            domain: path.clone(),
            codomain: path.clone(),
            layers: vec![vec![0, 1, 2], vec![0, 0, 0]],
        };
        assert!(matches!(
            verify_homotopy(&broken, &id, &const0),
            Err(CertificateDefect::StepViolation { .. })
        ));
    }

    #[test]
    fn certificate_algebra_round_trips() {
        let path = arc(ProximitySpace::path(3).unwrap());
        let id = FiniteMap::identity(path.clone());
        let const0 = FiniteMap::constant(path.clone(), path.clone(), 0).unwrap();
        let fold = HomotopyCertificate {
            domain: path.clone(),
            codomain: path.clone(),
            layers: vec![
                vec![0, 1, 2],
                vec![0, 1, 1],
                vec![0, 0, 1],
                vec![0, 0, 0],
            ],
        };
        assert!(verify_homotopy(&fold.reversed(), &const0, &id).is_ok());
        let both = fold.concat(&fold.reversed()).unwrap();
        assert!(verify_homotopy(&both, &id, &id).is_ok());
        let doc = fold.to_doc();
        let back = HomotopyCertificate::from_doc(path.clone(), path.clone(), &doc).unwrap();
        assert_eq!(back, fold);
    }

    #[test]
    fn iso_check_requires_relation_match() {
        let c4 = arc(ProximitySpace::cycle(4).unwrap());
        let rotation = FiniteMap::new(c4.clone(), c4.clone(), vec![1, 2, 3, 0]).unwrap();
        assert!(iso_check(&rotation).holds());
        let p4 = arc(ProximitySpace::path(4).unwrap());
        let relabel = FiniteMap::new(c4.clone(), p4, vec![0, 1, 2, 3]).unwrap();
        let check = iso_check(&relabel);
        assert!(check.bijective && !check.forward_pc);
        let squash = FiniteMap::new(c4.clone(), c4, vec![0, 0, 1, 1]).unwrap();
        assert!(!iso_check(&squash).bijective);
    }

    #[test]
    fn glue_unions_domains_and_checks_overlap() {
        let base = arc(ProximitySpace::path(4).unwrap());
        let left = base.subspace(&[0, 1, 2].into()).unwrap();
        let right = base.subspace(&[2, 3].into()).unwrap();
        let left = arc(left);
        let right = arc(right);
        let f_left = FiniteMap::new(left.clone(), base.clone(), vec![0, 1, 2]).unwrap();
        let f_right = FiniteMap::new(right.clone(), base.clone(), vec![2, 3]).unwrap();
        let glued = glue(&f_left, &f_right, Some(&base)).unwrap();
        assert_eq!(glued.assign(), FiniteMap::identity(base.clone()).assign());
        assert!(glued.is_pc());

        let f_bad = FiniteMap::new(right, base.clone(), vec![3, 3]).unwrap();
        assert_eq!(
            glue(&f_left, &f_bad, Some(&base)).unwrap_err(),
            Error::DisagreeOnOverlap("2".into())
        );

        let constructed = glue(&f_left, &f_right, None).unwrap();
        assert_eq!(constructed.domain().points(), base.points());
        assert!(constructed.is_pc());
    }

    #[test]
    fn interval_is_a_path_with_loops() {
        let i2 = discrete_interval(2);
        assert_eq!(i2.len(), 3);
        assert!(i2.near(0, 0) && i2.near(0, 1) && !i2.near(0, 2));
    }
}
