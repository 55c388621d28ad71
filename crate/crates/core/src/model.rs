//! Combinatorial model of a TSS: leaves, zero curves, validation and the
//! labeled graph invariant.
//!
//! A surface is described by its two-dimensional symplectic leaves and the
//! zero curves separating them. Each curve records the leaf on its negative
//! side and the leaf on its positive side; the Poisson tensor changes sign
//! across a linear zero curve, so the two sides are distinct leaves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A two-dimensional symplectic leaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Leaf {
    pub id: String,
    pub genus: u32,
    /// Sign of the Poisson tensor relative to the surface orientation.
    pub sign: Sign,
    /// Signed regularized Liouville volume.
    #[serde(with = "rational::as_string")]
    pub volume: Rational,
    /// Boundary circles of the ambient surface lying in this leaf.
    pub free_boundary: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZeroCurve {
    pub id: String,
    /// Period of the modular flow along the curve.
    #[serde(with = "rational::as_string")]
    pub period: Rational,
    #[serde(rename = "neg")]
    pub neg_leaf: String,
    #[serde(rename = "pos")]
    pub pos_leaf: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TssSurface {
    pub closed: bool,
    pub leaves: Vec<Leaf>,
    pub curves: Vec<ZeroCurve>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown field: {0}")]
    UnknownField(String),
    #[error("duplicate id {0:?}")]
    DuplicateId(String),
    #[error("curve {curve:?} references missing leaf {leaf:?}")]
    DanglingReference { curve: String, leaf: String },
    #[error("curve {curve:?} has non-positive period {period}")]
    NonPositivePeriod { curve: String, period: String },
    #[error("invalid surface: {0}")]
    Invalid(ValidationReport),
}

/// One violated invariant of a [`TssSurface`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NoZeroCurves,
    DuplicateId { id: String },
    DanglingReference { curve: String, leaf: String },
    NonPositivePeriod { curve: String },
    SameLeafBothSides { curve: String },
    SignMismatch { curve: String, leaf: String, expected: Sign },
    VolumeSign { leaf: String },
    IsolatedLeaf { leaf: String },
    FreeBoundaryOnClosedSurface { leaf: String },
    EulerParity { sum: i64, free_boundary: u64 },
    Disconnected { components: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoZeroCurves => write!(f, "surface has no zero curves"),
            Violation::DuplicateId { id } => write!(f, "duplicate id {id:?}"),
            Violation::DanglingReference { curve, leaf } => {
                write!(f, "curve {curve:?} references missing leaf {leaf:?}")
            }
            Violation::NonPositivePeriod { curve } => {
                write!(f, "curve {curve:?} has non-positive period")
            }
            Violation::SameLeafBothSides { curve } => {
                write!(f, "curve {curve:?} bounds the same leaf on both sides")
            }
            Violation::SignMismatch {
                curve,
                leaf,
                expected,
            } => write!(
                f,
                "curve {curve:?}: leaf {leaf:?} should have sign {expected}"
            ),
            Violation::VolumeSign { leaf } => {
                write!(f, "leaf {leaf:?}: volume sign disagrees with leaf sign")
            }
            Violation::IsolatedLeaf { leaf } => {
                write!(f, "leaf {leaf:?} touches no zero curve and no boundary")
            }
            Violation::FreeBoundaryOnClosedSurface { leaf } => {
                write!(f, "leaf {leaf:?} has free boundary on a closed surface")
            }
            Violation::EulerParity { sum, free_boundary } => write!(
                f,
                "Euler sum {sum} has the wrong parity for {free_boundary} boundary circles"
            ),
            Violation::Disconnected { components } => {
                write!(f, "leaf/curve incidence graph has {components} components")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Parses a TSS document and checks its references.
///
/// The returned surface has unique ids, resolvable curve endpoints and
/// positive periods. The remaining invariants are checked by [`validate`].
pub fn parse_tss(text: &str) -> Result<TssSurface, ModelError> {
    let surface: TssSurface = serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        if message.starts_with("unknown field") {
            ModelError::UnknownField(message)
        } else {
            ModelError::Syntax {
                line: e.line(),
                column: e.column(),
                message,
            }
        }
    })?;

    let mut ids = BTreeSet::new();
    for id in surface
        .leaves
        .iter()
        .map(|l| &l.id)
        .chain(surface.curves.iter().map(|c| &c.id))
    {
        if !ids.insert(id) {
            return Err(ModelError::DuplicateId(id.clone()));
        }
    }
    for c in &surface.curves {
        for leaf in [&c.neg_leaf, &c.pos_leaf] {
            if surface.leaf_index(leaf).is_none() {
                return Err(ModelError::DanglingReference {
                    curve: c.id.clone(),
                    leaf: leaf.clone(),
                });
            }
        }
        if !c.period.is_positive() {
            return Err(ModelError::NonPositivePeriod {
                curve: c.id.clone(),
                period: rational::format_rational(&c.period),
            });
        }
    }
    Ok(surface)
}

impl TssSurface {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("surface serializes")
    }

    pub fn leaf_index(&self, id: &str) -> Option<usize> {
        self.leaves.iter().position(|l| l.id == id)
    }

    pub fn curve_index(&self, id: &str) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    /// Indices of the curves bounding leaf `leaf`, in curve order.
    pub fn incident_curves(&self, leaf: usize) -> Vec<usize> {
        let id = &self.leaves[leaf].id;
        self.curves
            .iter()
            .enumerate()
            .filter(|(_, c)| &c.neg_leaf == id || &c.pos_leaf == id)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn total_volume(&self) -> Rational {
        self.leaves.iter().map(|l| l.volume.clone()).sum()
    }

    pub fn total_free_boundary(&self) -> u64 {
        self.leaves.iter().map(|l| l.free_boundary as u64).sum()
    }

    /// Genus of the ambient surface: leaf genera plus the cycle rank of the
    /// leaf/curve graph.
    pub fn ambient_genus(&self) -> i64 {
        let leaf_genus: i64 = self.leaves.iter().map(|l| l.genus as i64).sum();
        leaf_genus + self.curves.len() as i64 - self.leaves.len() as i64 + 1
    }
}

/// Checks every surface invariant and lists the violations.
pub fn validate(s: &TssSurface) -> ValidationReport {
    let mut violations = Vec::new();
    if s.curves.is_empty() {
        violations.push(Violation::NoZeroCurves);
    }

    let mut seen = BTreeSet::new();
    for id in s
        .leaves
        .iter()
        .map(|l| &l.id)
        .chain(s.curves.iter().map(|c| &c.id))
    {
        if !seen.insert(id) {
            violations.push(Violation::DuplicateId { id: id.clone() });
        }
    }

    let leaf_by_id: BTreeMap<&str, usize> = s
        .leaves
        .iter()
        .enumerate()
        .map(|(i, l)| (l.id.as_str(), i))
        .collect();
    let mut touched = vec![false; s.leaves.len()];
    let mut endpoints = vec![0i64; s.leaves.len()];
    let mut uf = UnionFind::new(s.leaves.len());

    for c in &s.curves {
        if !c.period.is_positive() {
            violations.push(Violation::NonPositivePeriod {
                curve: c.id.clone(),
            });
        }
        if c.neg_leaf == c.pos_leaf {
            violations.push(Violation::SameLeafBothSides {
                curve: c.id.clone(),
            });
        }
        let mut ends = [None, None];
        for (slot, (leaf, expected)) in [(&c.neg_leaf, Sign::Minus), (&c.pos_leaf, Sign::Plus)]
            .into_iter()
            .enumerate()
        {
            match leaf_by_id.get(leaf.as_str()) {
                None => violations.push(Violation::DanglingReference {
                    curve: c.id.clone(),
                    leaf: leaf.clone(),
                }),
                Some(&i) => {
                    touched[i] = true;
                    endpoints[i] += 1;
                    ends[slot] = Some(i);
                    if s.leaves[i].sign != expected {
                        violations.push(Violation::SignMismatch {
                            curve: c.id.clone(),
                            leaf: leaf.clone(),
                            expected,
                        });
                    }
                }
            }
        }
        if let [Some(a), Some(b)] = ends {
            uf.union(a, b);
        }
    }

    for (i, l) in s.leaves.iter().enumerate() {
        let volume_ok = !l.volume.is_zero()
            && (l.volume.is_positive() == (l.sign == Sign::Plus));
        if !volume_ok {
            violations.push(Violation::VolumeSign { leaf: l.id.clone() });
        }
        if !touched[i] && l.free_boundary == 0 {
            violations.push(Violation::IsolatedLeaf { leaf: l.id.clone() });
        }
        if s.closed && l.free_boundary > 0 {
            violations.push(Violation::FreeBoundaryOnClosedSurface { leaf: l.id.clone() });
        }
    }

    // chi(P) = 2 - 2 g(P) - (free boundary circles), so the leaf sum has the
    // parity of the free boundary count (even when closed).
    let sum: i64 = s
        .leaves
        .iter()
        .enumerate()
        .map(|(i, l)| 2 - 2 * l.genus as i64 - endpoints[i] - l.free_boundary as i64)
        .sum();
    let free = s.total_free_boundary();
    if (sum - free as i64).rem_euclid(2) != 0 {
        violations.push(Violation::EulerParity {
            sum,
            free_boundary: free,
        });
    }

    let components = uf.components();
    if components > 1 {
        violations.push(Violation::Disconnected { components });
    }

    ValidationReport { violations }
}

/// Sum over leaves of `2 - 2g - b`, where `b` counts zero-curve ends and
/// free boundary circles of the leaf.
pub fn euler_characteristic(s: &TssSurface) -> i64 {
    (0..s.leaves.len())
        .map(|i| {
            let l = &s.leaves[i];
            2 - 2 * l.genus as i64 - s.incident_curves(i).len() as i64 - l.free_boundary as i64
        })
        .sum()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
    /// Free boundary circles of the leaf. Zero on closed surfaces.
    pub free_boundary: u32,
    pub sign: Sign,
}

/// A directed edge from the negative leaf (`tail`) to the positive leaf (`head`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub period: Rational,
}

/// Vertices are leaves labeled by genus, edges are zero curves labeled by
/// their modular period and oriented toward the positive leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().map(|v| serde_json::json!({
                "id": v.id,
                "genus": v.genus,
                "free_boundary": v.free_boundary,
                "sign": v.sign.to_string(),
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| serde_json::json!({
                "id": e.id,
                "tail": self.vertices[e.tail].id,
                "head": self.vertices[e.head].id,
                "period": rational::format_rational(&e.period),
            })).collect::<Vec<_>>(),
        })
    }
}

pub fn build_graph(s: &TssSurface) -> Result<LabeledGraph, ModelError> {
    let report = validate(s);
    if !report.is_valid() {
        return Err(ModelError::Invalid(report));
    }
    let vertices = s
        .leaves
        .iter()
        .map(|l| Vertex {
            id: l.id.clone(),
            genus: l.genus,
            free_boundary: l.free_boundary,
            sign: l.sign,
        })
        .collect();
    let edges = s
        .curves
        .iter()
        .map(|c| Edge {
            id: c.id.clone(),
            tail: s.leaf_index(&c.neg_leaf).expect("validated"),
            head: s.leaf_index(&c.pos_leaf).expect("validated"),
            period: c.period.clone(),
        })
        .collect();
    Ok(LabeledGraph { vertices, edges })
}
