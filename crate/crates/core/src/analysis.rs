//! Separability and cyclic vertex connectivity of order supergraphs, run on
//! the direct graph and on the weighted quotient.
//!
//! Groups with at most `direct_threshold` elements are analyzed both ways
//! and the answers must match; larger groups, profile-only groups and
//! searches that hit the cycle limit use the quotient alone.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::cyclic::{
    cyclic_vertex_connectivity, is_cyclically_separable, quotient_cyclic_vertex_connectivity,
    quotient_is_cyclically_separable, verify_certificate, verify_quotient_certificate, Ckappa,
    CutsetCertificate, QuotientCertificate,
};
use crate::graph::{GraphError, SimpleGraph, VertexSet, DEFAULT_CYCLE_LIMIT};
use crate::group::{Limits, DEFAULT_ELEMENT_CAP};
use crate::groupspec::GroupInstance;
use crate::supergraph::{class_signature, order_quotient_graph, order_supergraph, QuotientOrderGraph};
use crate::{Error, Result};

pub const DEFAULT_DIRECT_THRESHOLD: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub element_cap: u64,
    /// Largest group analyzed on the direct graph as well as the quotient.
    pub direct_threshold: u64,
    pub cycle_limit: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            element_cap: DEFAULT_ELEMENT_CAP,
            direct_threshold: DEFAULT_DIRECT_THRESHOLD,
            cycle_limit: DEFAULT_CYCLE_LIMIT,
        }
    }
}

impl AnalysisConfig {
    pub fn limits(&self) -> Limits {
        Limits::with_cap(self.element_cap)
    }
}

/// Which representation produced an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComputePath {
    /// Direct graph and quotient, with matching answers.
    Both,
    Quotient,
    /// The direct search hit its cycle limit.
    QuotientAfterCycleLimit,
}

impl fmt::Display for ComputePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComputePath::Both => "both",
            ComputePath::Quotient => "quotient",
            ComputePath::QuotientAfterCycleLimit => "quotient-after-cycle-limit",
        })
    }
}

/// A cutset certificate with vertices named by element labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledCertificate {
    pub cutset: Vec<String>,
    pub witness_a: Vec<String>,
    pub witness_b: Vec<String>,
}

/// Cyclic vertex connectivity value; serializes as an integer or `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CkappaValue {
    Finite(u64),
    Infinite,
}

impl fmt::Display for CkappaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CkappaValue::Finite(v) => write!(f, "{v}"),
            CkappaValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for CkappaValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CkappaValue::Finite(v) => s.serialize_u64(*v),
            CkappaValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for CkappaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = CkappaValue;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"infinite\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<CkappaValue, E> {
                Ok(CkappaValue::Finite(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<CkappaValue, E> {
                match v {
                    "infinite" => Ok(CkappaValue::Infinite),
                    _ => Err(E::invalid_value(de::Unexpected::Str(v), &self)),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// The certificate document for a connectivity result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkappaDocument {
    pub cutset: Vec<String>,
    pub witness_a: Vec<String>,
    pub witness_b: Vec<String>,
    pub value: CkappaValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparabilityOutcome {
    pub separable: bool,
    pub path: ComputePath,
    pub certificate: Option<LabeledCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkappaOutcome {
    pub value: CkappaValue,
    pub path: ComputePath,
    pub certificate: Option<LabeledCertificate>,
}

impl CkappaOutcome {
    pub fn document(&self) -> CkappaDocument {
        let cert = self.certificate.clone().unwrap_or(LabeledCertificate {
            cutset: Vec::new(),
            witness_a: Vec::new(),
            witness_b: Vec::new(),
        });
        CkappaDocument {
            cutset: cert.cutset,
            witness_a: cert.witness_a,
            witness_b: cert.witness_b,
            value: self.value,
        }
    }
}

/// Both representations of one group's order supergraph.
pub struct Analysis<'a> {
    group: &'a GroupInstance,
    config: AnalysisConfig,
    quotient: QuotientOrderGraph,
    direct: Option<SimpleGraph>,
    /// Elements of each quotient node's order, ascending; empty for
    /// profile-only groups.
    classes: Vec<Vec<usize>>,
}

impl<'a> Analysis<'a> {
    /// Builds the quotient, and the direct graph when the group is concrete
    /// and small enough. The two are checked to agree class by class.
    pub fn new(group: &'a GroupInstance, config: AnalysisConfig) -> Result<Self> {
        if group.order() > config.element_cap {
            return Err(crate::group::GroupError::TooLarge {
                what: group.name().to_string(),
                limit: config.element_cap,
            }
            .into());
        }
        let quotient = order_quotient_graph(&group.profile());
        let mut classes = Vec::new();
        let mut direct = None;
        if let Some(g) = group.group() {
            classes = quotient
                .orders()
                .iter()
                .map(|&d| g.elements().filter(|&x| g.element_order(x) == d).collect())
                .collect();
            if g.order() as u64 <= config.direct_threshold {
                let graph = order_supergraph(g, config.direct_threshold)?;
                let expanded = quotient.expand(config.direct_threshold)?;
                let same = class_signature(&graph, g.orders()).is_some()
                    && class_signature(&graph, g.orders())
                        == class_signature(&expanded, &quotient.expanded_classes());
                if !same {
                    return Err(Error::PathMismatch(format!(
                        "{}: supergraph and expanded quotient differ",
                        group.name()
                    )));
                }
                direct = Some(graph);
            }
        }
        Ok(Self {
            group,
            config,
            quotient,
            direct,
            classes,
        })
    }

    pub fn quotient(&self) -> &QuotientOrderGraph {
        &self.quotient
    }

    pub fn direct(&self) -> Option<&SimpleGraph> {
        self.direct.as_ref()
    }

    /// Elements (or blow-up vertices for profile-only groups) over a node set.
    fn vertices_of(&self, nodes: &VertexSet) -> VertexSet {
        let blown = self.quotient.weighted().blown_up_vertices(nodes);
        if self.classes.is_empty() {
            return blown;
        }
        let offsets = self.quotient.weighted().offsets();
        blown
            .iter()
            .map(|v| {
                let node = offsets.partition_point(|&o| o <= v) - 1;
                self.classes[node][v - offsets[node]]
            })
            .collect()
    }

    fn name_vertices(&self, set: &VertexSet) -> Vec<String> {
        match self.group.group() {
            Some(g) => set.iter().map(|x| g.label(x)).collect(),
            None => {
                let offsets = self.quotient.weighted().offsets();
                set.iter()
                    .map(|v| {
                        let node = offsets.partition_point(|&o| o <= v) - 1;
                        format!("{}#{}", self.quotient.orders()[node], v - offsets[node])
                    })
                    .collect()
            }
        }
    }

    fn label_direct(&self, cert: &CutsetCertificate) -> LabeledCertificate {
        LabeledCertificate {
            cutset: self.name_vertices(&cert.cutset),
            witness_a: self.name_vertices(&cert.witness_a),
            witness_b: self.name_vertices(&cert.witness_b),
        }
    }

    fn lift(&self, cert: &QuotientCertificate) -> CutsetCertificate {
        CutsetCertificate {
            cutset: self.vertices_of(&cert.cutset),
            witness_a: self.vertices_of(&cert.witness_a),
            witness_b: self.vertices_of(&cert.witness_b),
        }
    }

    fn check_quotient(&self, cert: &QuotientCertificate) -> Result<()> {
        let ok = verify_quotient_certificate(self.quotient.weighted(), cert)
            && self
                .direct
                .as_ref()
                .is_none_or(|g| verify_certificate(g, &self.lift(cert)));
        if ok {
            Ok(())
        } else {
            Err(Error::PathMismatch(format!(
                "{}: quotient certificate does not verify",
                self.group.name()
            )))
        }
    }

    fn mismatch(&self, what: &str) -> Error {
        Error::PathMismatch(format!("{}: {what}", self.group.name()))
    }

    /// Runs the direct search if there is a direct graph; `None` means the
    /// quotient must answer alone.
    fn direct_attempt<T>(
        &self,
        run: impl FnOnce(&SimpleGraph, usize) -> std::result::Result<T, GraphError>,
    ) -> Result<(Option<T>, ComputePath)> {
        let Some(graph) = &self.direct else {
            return Ok((None, ComputePath::Quotient));
        };
        match run(graph, self.config.cycle_limit) {
            Ok(v) => Ok((Some(v), ComputePath::Both)),
            Err(GraphError::CycleLimitExceeded { .. }) => {
                Ok((None, ComputePath::QuotientAfterCycleLimit))
            }
            Err(e) => Err(e.into()),
        }
    }

    pub fn separability(&self) -> Result<SeparabilityOutcome> {
        let quotient = quotient_is_cyclically_separable(self.quotient.weighted());
        if let Some(cert) = &quotient {
            self.check_quotient(cert)?;
        }
        let (direct, path) = self.direct_attempt(is_cyclically_separable)?;
        let certificate = match direct {
            Some(found) => {
                if found.is_some() != quotient.is_some() {
                    return Err(self.mismatch("separability differs between paths"));
                }
                found.map(|cert| {
                    assert!(verify_certificate(self.direct.as_ref().expect("direct"), &cert));
                    self.label_direct(&cert)
                })
            }
            None => quotient.as_ref().map(|q| self.label_direct(&self.lift(q))),
        };
        Ok(SeparabilityOutcome {
            separable: certificate.is_some(),
            path,
            certificate,
        })
    }

    pub fn ckappa(&self) -> Result<CkappaOutcome> {
        let quotient = quotient_cyclic_vertex_connectivity(self.quotient.weighted());
        if let Some((_, cert)) = &quotient {
            self.check_quotient(cert)?;
        }
        let quotient_value = quotient
            .as_ref()
            .map_or(CkappaValue::Infinite, |(v, _)| CkappaValue::Finite(*v));
        let (direct, path) = self.direct_attempt(cyclic_vertex_connectivity)?;
        let (value, certificate) = match direct {
            Some(Ckappa::Finite(cert)) => {
                let value = CkappaValue::Finite(cert.size() as u64);
                if value != quotient_value {
                    return Err(self.mismatch("connectivity differs between paths"));
                }
                (value, Some(self.label_direct(&cert)))
            }
            Some(Ckappa::Infinite) => {
                if quotient_value != CkappaValue::Infinite {
                    return Err(self.mismatch("connectivity differs between paths"));
                }
                (CkappaValue::Infinite, None)
            }
            None => (
                quotient_value,
                quotient.as_ref().map(|(_, q)| self.label_direct(&self.lift(q))),
            ),
        };
        Ok(CkappaOutcome {
            value,
            path,
            certificate,
        })
    }
}
