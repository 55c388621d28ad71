//! Picard and static Picard groups of a TSS, and exact arithmetic on their
//! elements.
//!
//! `Pic(P) = (prod_curves T_{period} x prod_leaves M(L)) ⋊ G` where `G` is
//! the automorphism group of the labeled graph. An element is stored as
//! `(outer, angles, twists, words)`:
//!
//! - `outer`: an element of `G`,
//! - `angles[c]`: time along the modular flow of curve `c`, reduced mod the period,
//! - `twists[l][i]`: power of the Dehn twist about the `i`-th curve incident to leaf `l`,
//! - `words[l]`: a reduced word in the twist generators of the `PMod` part of leaf `l`.
//!
//! Products follow `(A, σ)(B, τ) = (A + σ·B, στ)`. The outer part acts by
//! permuting curves and leaves; an orientation reversing element also
//! negates twists and inverts each word letter, but never negates angles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::graph::{automorphism_group, AutomorphismGroup, GraphError, GraphMap, Witness};
use crate::mcg::{
    homology_action, mcg_structure, pmod_generators, FreeWord, GroupAtom, GroupDescription,
    Letter, McgError, SurfaceType, TwistLetter,
};
use crate::model::{build_graph, LabeledGraph, ModelError, TssSurface};
use crate::rational::{format_rational, parse_rational, rem_euclid, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PicardError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("leaf {leaf:?}: {source}")]
    Leaf { leaf: String, source: McgError },
    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
    #[error("unknown leaf {0:?}")]
    UnknownLeaf(String),
    #[error("curve {curve:?} does not bound leaf {leaf:?}")]
    NotIncident { leaf: String, curve: String },
    #[error("graph map is not an automorphism of the labeled graph")]
    NotAnAutomorphism,
    #[error("leaf {leaf:?} has {count} PMod generators, got index {generator}")]
    BadGenerator {
        leaf: String,
        generator: usize,
        count: usize,
    },
    #[error("element does not belong to this group: {0}")]
    Shape(String),
    #[error("bad element document: {0}")]
    Document(String),
}

/// One leaf's factor `M(L fix Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafFactor {
    pub id: String,
    pub surface: SurfaceType,
    pub group: GroupDescription,
    /// Indices of the incident curves, in twist-vector slot order.
    pub incident: Vec<usize>,
    /// Homology classes of the `PMod` twist generators.
    pub generators: Vec<Vec<i64>>,
}

impl LeafFactor {
    fn slot(&self, curve: usize) -> Option<usize> {
        self.incident.iter().position(|&c| c == curve)
    }

    /// Annulus with both circles on zero curves: the two boundary twists agree.
    fn is_annulus(&self) -> bool {
        self.surface == SurfaceType::new(0, 2, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PicardGroupDescription {
    pub surface: TssSurface,
    pub graph: LabeledGraph,
    pub periods: Vec<Rational>,
    pub leaves: Vec<LeafFactor>,
    pub outer: AutomorphismGroup,
    pub action_note: String,
}

fn leaf_factors(s: &TssSurface) -> Result<Vec<LeafFactor>, PicardError> {
    s.leaves
        .iter()
        .enumerate()
        .map(|(i, leaf)| {
            let incident = s.incident_curves(i);
            let surface = SurfaceType::new(leaf.genus, incident.len() as u32, leaf.free_boundary);
            let group = mcg_structure(surface).map_err(|source| PicardError::Leaf {
                leaf: leaf.id.clone(),
                source,
            })?;
            Ok(LeafFactor {
                id: leaf.id.clone(),
                surface,
                group,
                incident,
                generators: pmod_generators(surface),
            })
        })
        .collect()
}

/// `StatPic(P) = prod_leaves M(L fix Z)`.
pub fn static_picard(s: &TssSurface) -> Result<GroupDescription, PicardError> {
    build_graph(s)?;
    let leaves = leaf_factors(s)?;
    Ok(GroupDescription::product(
        leaves.iter().map(|l| &l.group),
        "product of M(L fix Z) over the leaves",
    ))
}

pub fn picard_group(s: &TssSurface) -> Result<PicardGroupDescription, PicardError> {
    let graph = build_graph(s)?;
    let leaves = leaf_factors(s)?;
    let outer = automorphism_group(&graph)?;
    let reversing = outer.elements.iter().filter(|m| m.reversal).count();
    let action_note = format!(
        "G = {} acts by permuting the curve and leaf factors along the graph maps; \
         {reversing} of its {} elements reverse orientation and act on twists by -1 \
         and on PMod letters by inversion; modular angles are permuted, never negated",
        outer.structure_name(),
        outer.order()
    );
    Ok(PicardGroupDescription {
        surface: s.clone(),
        periods: s.curves.iter().map(|c| c.period.clone()).collect(),
        graph,
        leaves,
        outer,
        action_note,
    })
}

impl PicardGroupDescription {
    /// Curve id to period.
    pub fn torus_factors(&self) -> BTreeMap<String, Rational> {
        self.graph
            .edges
            .iter()
            .map(|e| (e.id.clone(), e.period.clone()))
            .collect()
    }

    /// Leaf id to `M(L fix Z)`.
    pub fn leaf_factors(&self) -> BTreeMap<String, GroupDescription> {
        self.leaves
            .iter()
            .map(|l| (l.id.clone(), l.group.clone()))
            .collect()
    }

    /// The normal subgroup `prod T x prod M(L)` as one description.
    pub fn normal_part(&self) -> GroupDescription {
        let tori = self.periods.iter().map(|p| GroupAtom::Torus(p.clone()));
        let leaves = self.leaves.iter().flat_map(|l| l.group.atoms().iter().cloned());
        GroupDescription::new(tori.chain(leaves), "curve tori and leaf mapping class groups")
    }

    /// E.g. `(T_{44/7} x T_{44/7} x Z) ⋊ Z2`.
    pub fn pretty(&self) -> String {
        let parts: Vec<String> = self
            .normal_part()
            .atoms()
            .iter()
            .map(|a| a.to_string())
            .collect();
        let inner = parts.join(" x ");
        if self.outer.order() == 1 {
            inner
        } else {
            format!("({inner}) ⋊ {}", self.outer.structure_name())
        }
    }

    pub fn to_json(&self) -> Value {
        let leaves: serde_json::Map<String, Value> = self
            .leaves
            .iter()
            .map(|l| {
                let curves: Vec<&str> = l
                    .incident
                    .iter()
                    .map(|&c| self.graph.edges[c].id.as_str())
                    .collect();
                (
                    l.id.clone(),
                    json!({
                        "surface": l.surface,
                        "group": l.group,
                        "incident_curves": curves,
                        "pmod_generators": l.generators,
                    }),
                )
            })
            .collect();
        let witness = |m: &GraphMap| m.to_witness(&self.graph, &self.graph);
        json!({
            "torus_factors": self
                .torus_factors()
                .iter()
                .map(|(k, v)| (k.clone(), Value::from(format_rational(v))))
                .collect::<serde_json::Map<_, _>>(),
            "leaf_factors": leaves,
            "outer": {
                "order": self.outer.order(),
                "structure": self.outer.structure_name(),
                "elements": self.outer.elements.iter().map(witness).collect::<Vec<_>>(),
                "generators": self.outer.generators.iter().map(witness).collect::<Vec<_>>(),
            },
            "action_note": self.action_note,
            "pretty": self.pretty(),
            "relations": ["Pic(P) ≅ M(P, π)", "Pic(P) ≅ Out Poiss(P)"],
        })
    }

    fn leaf_index(&self, id: &str) -> Result<usize, PicardError> {
        self.graph
            .vertex_index(id)
            .ok_or_else(|| PicardError::UnknownLeaf(id.to_string()))
    }

    fn curve_index(&self, id: &str) -> Result<usize, PicardError> {
        self.graph
            .edge_index(id)
            .ok_or_else(|| PicardError::UnknownCurve(id.to_string()))
    }

    fn check(&self, a: &PicardElement) -> Result<(), PicardError> {
        let shape_ok = a.angles.len() == self.periods.len()
            && a.twists.len() == self.leaves.len()
            && a.words.len() == self.leaves.len()
            && a.twists
                .iter()
                .zip(&self.leaves)
                .all(|(t, l)| t.len() == l.incident.len());
        if !shape_ok {
            return Err(PicardError::Shape("component sizes differ".into()));
        }
        if !self.outer.contains(&a.outer) {
            return Err(PicardError::NotAnAutomorphism);
        }
        Ok(())
    }

    pub fn identity_element(&self) -> PicardElement {
        PicardElement {
            outer: self.outer.identity().clone(),
            angles: vec![Rational::zero(); self.periods.len()],
            twists: self.leaves.iter().map(|l| vec![0; l.incident.len()]).collect(),
            words: vec![FreeWord::empty(); self.leaves.len()],
        }
    }

    /// Time `t` along the modular flow of one curve, reduced mod its period.
    pub fn from_modular_flow(&self, curve: &str, t: &Rational) -> Result<PicardElement, PicardError> {
        let c = self.curve_index(curve)?;
        let mut e = self.identity_element();
        e.angles[c] = rem_euclid(t, &self.periods[c]);
        Ok(e)
    }

    /// `k`-th power of the Dehn twist about `curve`, inside the factor of `leaf`.
    pub fn from_boundary_twist(&self, leaf: &str, curve: &str, k: i64) -> Result<PicardElement, PicardError> {
        let l = self.leaf_index(leaf)?;
        let c = self.curve_index(curve)?;
        let slot = self.leaves[l].slot(c).ok_or_else(|| PicardError::NotIncident {
            leaf: leaf.to_string(),
            curve: curve.to_string(),
        })?;
        let mut e = self.identity_element();
        e.twists[l][slot] = k;
        Ok(e)
    }

    pub fn from_graph_automorphism(&self, m: &GraphMap) -> Result<PicardElement, PicardError> {
        if !self.outer.contains(m) {
            return Err(PicardError::NotAnAutomorphism);
        }
        let mut e = self.identity_element();
        e.outer = m.clone();
        Ok(e)
    }

    /// A word in the `PMod` generators of one leaf.
    pub fn from_pmod_word(&self, leaf: &str, word: FreeWord) -> Result<PicardElement, PicardError> {
        let l = self.leaf_index(leaf)?;
        let count = self.leaves[l].generators.len();
        if let Some(bad) = word.letters().iter().find(|x| x.generator >= count) {
            return Err(PicardError::BadGenerator {
                leaf: leaf.to_string(),
                generator: bad.generator,
                count,
            });
        }
        let mut e = self.identity_element();
        e.words[l] = word;
        Ok(e)
    }

    /// `σ·b`: the data of `b` moved along the outer element `m`.
    fn transport(&self, m: &GraphMap, b: &PicardElement) -> PicardElement {
        let mut out = self.identity_element();
        for (c, angle) in b.angles.iter().enumerate() {
            out.angles[m.edge_map[c]] = angle.clone();
        }
        let sign = if m.reversal { -1 } else { 1 };
        for (l, leaf) in self.leaves.iter().enumerate() {
            let target = m.vertex_map[l];
            for (slot, &c) in leaf.incident.iter().enumerate() {
                let to_slot = self.leaves[target]
                    .slot(m.edge_map[c])
                    .expect("automorphisms preserve incidence");
                out.twists[target][to_slot] = sign * b.twists[l][slot];
            }
            out.words[target] = if m.reversal {
                b.words[l].invert_letters()
            } else {
                b.words[l].clone()
            };
        }
        out
    }

    /// `a · b`.
    pub fn compose(&self, a: &PicardElement, b: &PicardElement) -> Result<PicardElement, PicardError> {
        self.check(a)?;
        self.check(b)?;
        let moved = self.transport(&a.outer, b);
        Ok(PicardElement {
            outer: a.outer.compose(&b.outer),
            angles: a
                .angles
                .iter()
                .zip(&moved.angles)
                .zip(&self.periods)
                .map(|((x, y), p)| rem_euclid(&(x + y), p))
                .collect(),
            twists: a
                .twists
                .iter()
                .zip(&moved.twists)
                .map(|(x, y)| x.iter().zip(y).map(|(i, j)| i + j).collect())
                .collect(),
            words: a
                .words
                .iter()
                .zip(&moved.words)
                .map(|(x, y)| x.concat(y))
                .collect(),
        })
    }

    pub fn invert(&self, a: &PicardElement) -> Result<PicardElement, PicardError> {
        self.check(a)?;
        let inv = a.outer.inverse();
        let negated = PicardElement {
            outer: self.outer.identity().clone(),
            angles: a
                .angles
                .iter()
                .zip(&self.periods)
                .map(|(x, p)| rem_euclid(&-x, p))
                .collect(),
            twists: a
                .twists
                .iter()
                .map(|t| t.iter().map(|k| -k).collect())
                .collect(),
            words: a.words.iter().map(|w| w.inverse()).collect(),
        };
        let mut out = self.transport(&inv, &negated);
        out.outer = inv;
        Ok(out)
    }

    /// Twist data modulo the relations inside each leaf factor: nothing for
    /// trivial factors, the sum for the annulus, the raw vector otherwise.
    fn twist_class(&self, l: usize, t: &[i64]) -> Vec<i64> {
        let leaf = &self.leaves[l];
        if leaf.group.is_trivial() {
            Vec::new()
        } else if leaf.is_annulus() {
            vec![t.iter().sum()]
        } else {
            t.to_vec()
        }
    }

    fn word_homology(&self, l: usize, w: &FreeWord) -> crate::HomologyMatrix {
        let leaf = &self.leaves[l];
        let letters: Vec<TwistLetter<BigInt>> = w
            .letters()
            .iter()
            .map(|x| TwistLetter {
                class: leaf.generators[x.generator].iter().map(|&v| BigInt::from(v)).collect(),
                power: x.exponent as i64,
            })
            .collect();
        homology_action(&letters, leaf.surface).expect("generator classes have the homology rank")
    }

    pub fn elements_equal(&self, a: &PicardElement, b: &PicardElement) -> Result<EqualityVerdict, PicardError> {
        self.check(a)?;
        self.check(b)?;
        if a.outer != b.outer {
            return Ok(EqualityVerdict::Distinct("outer parts differ".into()));
        }
        for (c, (x, y)) in a.angles.iter().zip(&b.angles).enumerate() {
            if x != y {
                return Ok(EqualityVerdict::Distinct(format!(
                    "angles differ on curve {}",
                    self.graph.edges[c].id
                )));
            }
        }
        for l in 0..self.leaves.len() {
            if self.twist_class(l, &a.twists[l]) != self.twist_class(l, &b.twists[l]) {
                return Ok(EqualityVerdict::Distinct(format!(
                    "boundary twists differ on leaf {}",
                    self.leaves[l].id
                )));
            }
        }
        let mut undecided = Vec::new();
        for l in 0..self.leaves.len() {
            if a.words[l] == b.words[l] {
                continue;
            }
            if self.word_homology(l, &a.words[l]) != self.word_homology(l, &b.words[l]) {
                return Ok(EqualityVerdict::Distinct(format!(
                    "homology actions differ on leaf {}",
                    self.leaves[l].id
                )));
            }
            undecided.push(self.leaves[l].id.clone());
        }
        if undecided.is_empty() {
            Ok(EqualityVerdict::Equal)
        } else {
            Ok(EqualityVerdict::Unknown(format!(
                "words differ but act equally on homology on leaves {}",
                undecided.join(", ")
            )))
        }
    }

    /// Image in the action on the leaf space: the outer part together with
    /// the rotations of the zero curves (0-dimensional leaves).
    pub fn leaf_space_image(&self, a: &PicardElement) -> Result<LeafSpaceImage, PicardError> {
        self.check(a)?;
        Ok(LeafSpaceImage {
            outer: a.outer.clone(),
            angles: a.angles.clone(),
        })
    }

    /// Whether `a` lies in the static Picard group.
    pub fn is_static(&self, a: &PicardElement) -> Result<bool, PicardError> {
        let img = self.leaf_space_image(a)?;
        Ok(img.outer.is_identity() && img.angles.iter().all(|x| x.is_zero()))
    }

    /// Composition in the image group `T^curves ⋊ G`.
    pub fn compose_images(&self, a: &LeafSpaceImage, b: &LeafSpaceImage) -> LeafSpaceImage {
        let mut moved = vec![Rational::zero(); self.periods.len()];
        for (c, x) in b.angles.iter().enumerate() {
            moved[a.outer.edge_map[c]] = x.clone();
        }
        LeafSpaceImage {
            outer: a.outer.compose(&b.outer),
            angles: a
                .angles
                .iter()
                .zip(&moved)
                .zip(&self.periods)
                .map(|((x, y), p)| rem_euclid(&(x + y), p))
                .collect(),
        }
    }

    pub fn element_to_json(&self, a: &PicardElement) -> Value {
        let doc = ElementDoc {
            outer: Some(a.outer.to_witness(&self.graph, &self.graph)),
            angles: a
                .angles
                .iter()
                .enumerate()
                .map(|(c, x)| (self.graph.edges[c].id.clone(), format_rational(x)))
                .collect(),
            twists: self
                .leaves
                .iter()
                .zip(&a.twists)
                .map(|(l, t)| {
                    let slots = l
                        .incident
                        .iter()
                        .zip(t)
                        .map(|(&c, &k)| (self.graph.edges[c].id.clone(), k))
                        .collect();
                    (l.id.clone(), slots)
                })
                .collect(),
            words: self
                .leaves
                .iter()
                .zip(&a.words)
                .map(|(l, w)| (l.id.clone(), w.letters().to_vec()))
                .collect(),
        };
        serde_json::to_value(doc).expect("element documents serialize")
    }

    /// Reads `{"outer", "angles", "twists", "words"}`; missing parts default
    /// to the identity.
    pub fn element_from_json(&self, v: &Value) -> Result<PicardElement, PicardError> {
        let doc: ElementDoc =
            serde_json::from_value(v.clone()).map_err(|e| PicardError::Document(e.to_string()))?;
        let mut e = self.identity_element();
        if let Some(w) = &doc.outer {
            e.outer = w.resolve(&self.graph, &self.graph)?;
            if !self.outer.contains(&e.outer) {
                return Err(PicardError::NotAnAutomorphism);
            }
        }
        for (curve, text) in &doc.angles {
            let c = self.curve_index(curve)?;
            let t = parse_rational(text).map_err(|err| PicardError::Document(err.to_string()))?;
            e.angles[c] = rem_euclid(&t, &self.periods[c]);
        }
        for (leaf, slots) in &doc.twists {
            let l = self.leaf_index(leaf)?;
            for (curve, &k) in slots {
                let c = self.curve_index(curve)?;
                let slot = self.leaves[l].slot(c).ok_or_else(|| PicardError::NotIncident {
                    leaf: leaf.clone(),
                    curve: curve.clone(),
                })?;
                e.twists[l][slot] = k;
            }
        }
        for (leaf, letters) in &doc.words {
            let l = self.leaf_index(leaf)?;
            let count = self.leaves[l].generators.len();
            let word = crate::mcg::free_reduce(letters, count).map_err(|_| {
                let bad = letters.iter().map(|x| x.generator).max().unwrap_or(0);
                PicardError::BadGenerator {
                    leaf: leaf.clone(),
                    generator: bad,
                    count,
                }
            })?;
            e.words[l] = word;
        }
        Ok(e)
    }

    /// A random element with angles of denominator at most 12, twists in
    /// `-5..=5` and, if `max_word_len > 0`, random words on leaves with `PMod` generators.
    pub fn random_element<R: Rng>(&self, rng: &mut R, max_word_len: usize) -> PicardElement {
        let outer = self.outer.elements[rng.gen_range(0..self.outer.order())].clone();
        let angles = self
            .periods
            .iter()
            .map(|p| {
                let den: i64 = rng.gen_range(1..=12);
                let num: i64 = rng.gen_range(-50..=50);
                rem_euclid(&Rational::new(num.into(), den.into()), p)
            })
            .collect();
        let twists = self
            .leaves
            .iter()
            .map(|l| l.incident.iter().map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let words = self
            .leaves
            .iter()
            .map(|l| {
                let rank = l.generators.len();
                if rank == 0 || max_word_len == 0 {
                    return FreeWord::empty();
                }
                let len = rng.gen_range(0..=max_word_len);
                let raw: Vec<Letter> = (0..len)
                    .map(|_| {
                        let e = if rng.gen_bool(0.5) { 1 } else { -1 };
                        Letter::new(rng.gen_range(0..rank), e).expect("unit exponent")
                    })
                    .collect();
                crate::mcg::free_reduce(&raw, rank).expect("generators in range")
            })
            .collect();
        PicardElement {
            outer,
            angles,
            twists,
            words,
        }
    }
}

/// A concrete element of `Pic(P)`, indexed like its description.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PicardElement {
    pub outer: GraphMap,
    pub angles: Vec<Rational>,
    pub twists: Vec<Vec<i64>>,
    pub words: Vec<FreeWord>,
}

impl PicardElement {
    pub fn has_words(&self) -> bool {
        self.words.iter().any(|w| !w.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafSpaceImage {
    pub outer: GraphMap,
    pub angles: Vec<Rational>,
}

impl LeafSpaceImage {
    pub fn is_identity(&self) -> bool {
        self.outer.is_identity() && self.angles.iter().all(|x| x.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqualityVerdict {
    Equal,
    Distinct(String),
    /// Words differ syntactically but no invariant separates them.
    Unknown(String),
}

impl EqualityVerdict {
    /// `true`, `false` or `"unknown"`.
    pub fn to_json(&self) -> Value {
        match self {
            EqualityVerdict::Equal => json!({ "result": true }),
            EqualityVerdict::Distinct(r) => json!({ "result": false, "reason": r }),
            EqualityVerdict::Unknown(r) => json!({ "result": "unknown", "reason": r }),
        }
    }
}

impl fmt::Display for EqualityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqualityVerdict::Equal => f.write_str("equal"),
            EqualityVerdict::Distinct(r) => write!(f, "distinct ({r})"),
            EqualityVerdict::Unknown(r) => write!(f, "unknown ({r})"),
        }
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ElementDoc {
    outer: Option<Witness>,
    angles: BTreeMap<String, String>,
    twists: BTreeMap<String, BTreeMap<String, i64>>,
    words: BTreeMap<String, Vec<Letter>>,
}

/// `true` when every leaf factor is cataloged without symbolic parts, so
/// that all element comparisons are decided.
pub fn fully_decidable(d: &PicardGroupDescription) -> bool {
    d.leaves.iter().all(|l| !l.group.has_symbolic_part())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn one_curve_cylinder() {
        let d = picard_group(&catalog::cylinder_one_curve(r(2, 1))).unwrap();
        assert_eq!(d.pretty(), "(T_{2}) ⋊ Z2");
        assert!(d.leaves.iter().all(|l| l.group.is_trivial()));
        assert!(static_picard(&d.surface).unwrap().is_trivial());
    }

    #[test]
    fn flow_reduces_mod_period() {
        let d = picard_group(&catalog::cylinder_one_curve(r(2, 1))).unwrap();
        let e = d.from_modular_flow("T", &r(5, 1)).unwrap();
        assert_eq!(e.angles, [r(1, 1)]);
        let e = d.from_modular_flow("T", &r(-1, 3)).unwrap();
        assert_eq!(e.angles, [r(5, 3)]);
        assert!(matches!(d.from_modular_flow("X", &r(1, 1)), Err(PicardError::UnknownCurve(_))));
    }

    #[test]
    fn twist_constructor_checks_incidence() {
        let d = picard_group(&catalog::cylinder_two_curves(r(3, 1), r(3, 1))).unwrap();
        let e = d.from_boundary_twist("L", "T1", 1).unwrap();
        assert_eq!(e.twists[1], [1, 0]);
        assert!(matches!(
            d.from_boundary_twist("Mm", "T2", 1),
            Err(PicardError::NotIncident { .. })
        ));
    }

    #[test]
    fn annulus_twists_agree() {
        let d = picard_group(&catalog::cylinder_two_curves(r(3, 1), r(3, 1))).unwrap();
        let a = d.from_boundary_twist("L", "T1", 1).unwrap();
        let b = d.from_boundary_twist("L", "T2", 1).unwrap();
        assert_eq!(d.elements_equal(&a, &b).unwrap(), EqualityVerdict::Equal);
        let c = d.from_boundary_twist("L", "T2", 2).unwrap();
        assert!(matches!(d.elements_equal(&a, &c).unwrap(), EqualityVerdict::Distinct(_)));
        // the Z generator composed n times is the n-fold twist
        let mut acc = d.identity_element();
        for _ in 0..4 {
            acc = d.compose(&acc, &a).unwrap();
        }
        assert_eq!(acc, d.from_boundary_twist("L", "T1", 4).unwrap());
    }

    #[test]
    fn disc_twists_are_trivial() {
        let d = picard_group(&catalog::sphere_equator(r(1, 1))).unwrap();
        let a = d.from_boundary_twist("N", "E", 3).unwrap();
        assert_eq!(d.elements_equal(&a, &d.identity_element()).unwrap(), EqualityVerdict::Equal);
    }

    #[test]
    fn reversal_negates_twists_not_angles() {
        let d = picard_group(&catalog::torus_parallel(2, r(1, 1))).unwrap();
        let flip = d
            .outer
            .elements
            .iter()
            .find(|m| m.reversal && m.vertex_map == [1, 0])
            .cloned()
            .expect("torus has a reversing vertex swap");
        let f = d.from_graph_automorphism(&flip).unwrap();
        let t = d.from_boundary_twist("L0", "T0", 1).unwrap();
        let conj = d
            .compose(&d.compose(&f, &t).unwrap(), &d.invert(&f).unwrap())
            .unwrap();
        let slot = d.leaves[1].slot(flip.edge_map[0]).unwrap();
        assert_eq!(conj.twists[1][slot], -1);
        let a = d.from_modular_flow("T0", &r(1, 3)).unwrap();
        let conj = d
            .compose(&d.compose(&f, &a).unwrap(), &d.invert(&f).unwrap())
            .unwrap();
        assert_eq!(conj.angles[flip.edge_map[0]], r(1, 3));
    }

    #[test]
    fn json_round_trip() {
        let d = picard_group(&catalog::torus_parallel(4, r(2, 1))).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let e = d.random_element(&mut rng, 0);
            let v = d.element_to_json(&e);
            assert_eq!(d.element_from_json(&v).unwrap(), e);
        }
        assert_eq!(d.element_from_json(&json!({})).unwrap(), d.identity_element());
        assert!(d.element_from_json(&json!({"bogus": 1})).is_err());
    }

    #[test]
    fn words_on_symbolic_leaves() {
        let d = picard_group(&catalog::genus2_separating(r(1, 1))).unwrap();
        assert!(!fully_decidable(&d));
        let a = d
            .from_pmod_word("A", FreeWord::generator_power(0, 1))
            .unwrap();
        let b = d
            .from_pmod_word("A", FreeWord::generator_power(1, 1))
            .unwrap();
        // twists about a_1 and b_1 act differently on H_1
        assert!(matches!(d.elements_equal(&a, &b).unwrap(), EqualityVerdict::Distinct(_)));
        // (ab)^6 acts trivially on H_1 of the one-holed torus but is not the empty word
        let ab = FreeWord::generator_power(0, 1).concat(&FreeWord::generator_power(1, 1));
        let mut six = FreeWord::empty();
        for _ in 0..6 {
            six = six.concat(&ab);
        }
        let c = d.from_pmod_word("A", six).unwrap();
        assert!(matches!(
            d.elements_equal(&c, &d.identity_element()).unwrap(),
            EqualityVerdict::Unknown(_)
        ));
        assert!(d.from_pmod_word("A", FreeWord::generator_power(9, 1)).is_err());
    }
}
