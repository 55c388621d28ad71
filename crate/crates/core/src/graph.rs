//! Label-preserving isomorphisms of labeled graphs and the decisions built
//! on them.
//!
//! Graphs coming from surfaces are small (a dozen leaves at most in
//! practice), so the search is an exhaustive backtrack over vertex
//! assignments, pruned by vertex labels and by the labeled edge multisets
//! between already assigned pairs. Parallel edges with equal labels are then
//! matched in every possible way.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{build_graph, LabeledGraph, ModelError, Sign, TssSurface};
use crate::rational::{format_rational, Rational};

pub const DEFAULT_MAX_VERTICES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_vertices: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_vertices: DEFAULT_MAX_VERTICES,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {vertices} vertices, above the brute-force cap of {cap}")]
    SizeGuard { vertices: usize, cap: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("automorphism list is not closed under {0}")]
    NotClosed(&'static str),
    #[error("witness does not describe an isomorphism: {0}")]
    BadWitness(String),
}

/// A bijection between the vertices and edges of two labeled graphs.
///
/// With `reversal` set the map flips every vertex sign and reverses every
/// edge; this is what an orientation-reversing diffeomorphism induces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphMap {
    pub reversal: bool,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl GraphMap {
    pub fn identity(vertices: usize, edges: usize) -> Self {
        GraphMap {
            reversal: false,
            vertex_map: (0..vertices).collect(),
            edge_map: (0..edges).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reversal
            && self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.edge_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            reversal: self.reversal ^ other.reversal,
            vertex_map: other.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: other.edge_map.iter().map(|&e| self.edge_map[e]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphMap {
        let mut vertex_map = vec![0; self.vertex_map.len()];
        for (i, &j) in self.vertex_map.iter().enumerate() {
            vertex_map[j] = i;
        }
        let mut edge_map = vec![0; self.edge_map.len()];
        for (i, &j) in self.edge_map.iter().enumerate() {
            edge_map[j] = i;
        }
        GraphMap {
            reversal: self.reversal,
            vertex_map,
            edge_map,
        }
    }

    /// Checks bijectivity, labels and incidence (respecting `reversal`).
    pub fn is_isomorphism(&self, from: &LabeledGraph, to: &LabeledGraph) -> bool {
        if self.vertex_map.len() != from.vertices.len()
            || self.edge_map.len() != from.edges.len()
            || from.vertices.len() != to.vertices.len()
            || from.edges.len() != to.edges.len()
        {
            return false;
        }
        let is_bijection = |m: &[usize], n: usize| {
            let set: BTreeSet<_> = m.iter().copied().collect();
            set.len() == n && m.iter().all(|&x| x < n)
        };
        if !is_bijection(&self.vertex_map, to.vertices.len())
            || !is_bijection(&self.edge_map, to.edges.len())
        {
            return false;
        }
        let vertices_ok = from.vertices.iter().enumerate().all(|(i, v)| {
            let w = &to.vertices[self.vertex_map[i]];
            let sign = if self.reversal { v.sign.flip() } else { v.sign };
            w.genus == v.genus && w.free_boundary == v.free_boundary && w.sign == sign
        });
        let edges_ok = from.edges.iter().enumerate().all(|(i, e)| {
            let f = &to.edges[self.edge_map[i]];
            let (tail, head) = (self.vertex_map[e.tail], self.vertex_map[e.head]);
            let ends = if self.reversal { (head, tail) } else { (tail, head) };
            f.period == e.period && (f.tail, f.head) == ends
        });
        vertices_ok && edges_ok
    }

    pub fn to_witness(&self, from: &LabeledGraph, to: &LabeledGraph) -> Witness {
        Witness {
            vertices: self
                .vertex_map
                .iter()
                .enumerate()
                .map(|(i, &j)| (from.vertices[i].id.clone(), to.vertices[j].id.clone()))
                .collect(),
            edges: self
                .edge_map
                .iter()
                .enumerate()
                .map(|(i, &j)| (from.edges[i].id.clone(), to.edges[j].id.clone()))
                .collect(),
            reversal: self.reversal,
        }
    }
}

/// Id-based form of a [`GraphMap`]:
/// `{"vertices": {id: id}, "edges": {id: id}, "reversal": bool}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Witness {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
    pub reversal: bool,
}

impl Witness {
    pub fn resolve(&self, from: &LabeledGraph, to: &LabeledGraph) -> Result<GraphMap, GraphError> {
        let lookup = |map: &BTreeMap<String, String>,
                      src: &dyn Fn(&str) -> Option<usize>,
                      dst: &dyn Fn(&str) -> Option<usize>,
                      n: usize|
         -> Result<Vec<usize>, GraphError> {
            let mut out = vec![usize::MAX; n];
            for (a, b) in map {
                let i = src(a).ok_or_else(|| GraphError::BadWitness(format!("unknown id {a:?}")))?;
                let j = dst(b).ok_or_else(|| GraphError::BadWitness(format!("unknown id {b:?}")))?;
                out[i] = j;
            }
            if out.contains(&usize::MAX) {
                return Err(GraphError::BadWitness("map is not total".into()));
            }
            Ok(out)
        };
        let map = GraphMap {
            reversal: self.reversal,
            vertex_map: lookup(
                &self.vertices,
                &|id| from.vertex_index(id),
                &|id| to.vertex_index(id),
                from.vertices.len(),
            )?,
            edge_map: lookup(
                &self.edges,
                &|id| from.edge_index(id),
                &|id| to.edge_index(id),
                from.edges.len(),
            )?,
        };
        if !map.is_isomorphism(from, to) {
            return Err(GraphError::BadWitness("labels or incidence not preserved".into()));
        }
        Ok(map)
    }
}

fn check_size(g: &LabeledGraph, config: &SearchConfig) -> Result<(), GraphError> {
    if g.vertices.len() > config.max_vertices {
        return Err(GraphError::SizeGuard {
            vertices: g.vertices.len(),
            cap: config.max_vertices,
        });
    }
    Ok(())
}

/// Sorted periods of the edges `a -> b`.
fn edge_bundle(g: &LabeledGraph, a: usize, b: usize) -> Vec<&Rational> {
    let mut v: Vec<_> = g
        .edges
        .iter()
        .filter(|e| e.tail == a && e.head == b)
        .map(|e| &e.period)
        .collect();
    v.sort();
    v
}

/// Labeled degree data of a vertex: periods of outgoing and incoming edges.
fn degree_signature(g: &LabeledGraph, v: usize) -> (Vec<&Rational>, Vec<&Rational>) {
    let mut out: Vec<_> = g.edges.iter().filter(|e| e.tail == v).map(|e| &e.period).collect();
    let mut inc: Vec<_> = g.edges.iter().filter(|e| e.head == v).map(|e| &e.period).collect();
    out.sort();
    inc.sort();
    (out, inc)
}

pub fn graph_isomorphisms(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    allow_reversal: bool,
) -> Result<Vec<GraphMap>, GraphError> {
    graph_isomorphisms_with(g1, g2, allow_reversal, &SearchConfig::default())
}

/// Every label-preserving isomorphism `g1 -> g2`, sorted, orientation
/// preserving maps first.
pub fn graph_isomorphisms_with(
    g1: &LabeledGraph,
    g2: &LabeledGraph,
    allow_reversal: bool,
    config: &SearchConfig,
) -> Result<Vec<GraphMap>, GraphError> {
    check_size(g1, config)?;
    check_size(g2, config)?;
    let mut found = Vec::new();
    if g1.vertices.len() != g2.vertices.len() || g1.edges.len() != g2.edges.len() {
        return Ok(found);
    }
    let modes: &[bool] = if allow_reversal { &[false, true] } else { &[false] };
    for &reversal in modes {
        let search = Search::new(g1, g2, reversal);
        let mut assignment = Vec::with_capacity(g1.vertices.len());
        let mut used = vec![false; g2.vertices.len()];
        search.extend(&mut assignment, &mut used, &mut found);
    }
    found.sort();
    Ok(found)
}

struct Search<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    reversal: bool,
    /// `candidates[u]`: vertices of `g2` whose labels match `u`.
    candidates: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g1: &'a LabeledGraph, g2: &'a LabeledGraph, reversal: bool) -> Self {
        let candidates = (0..g1.vertices.len())
            .map(|u| {
                let vu = &g1.vertices[u];
                let sign = if reversal { vu.sign.flip() } else { vu.sign };
                let (out_u, in_u) = degree_signature(g1, u);
                (0..g2.vertices.len())
                    .filter(|&v| {
                        let vv = &g2.vertices[v];
                        if vv.genus != vu.genus || vv.free_boundary != vu.free_boundary || vv.sign != sign {
                            return false;
                        }
                        let (out_v, in_v) = degree_signature(g2, v);
                        if reversal {
                            out_u == in_v && in_u == out_v
                        } else {
                            out_u == out_v && in_u == in_v
                        }
                    })
                    .collect()
            })
            .collect();
        Search {
            g1,
            g2,
            reversal,
            candidates,
        }
    }

    fn bundles_match(&self, u: usize, v: usize, u2: usize, v2: usize) -> bool {
        // Edges u -> u2 must land on v -> v2, or on v2 -> v under reversal.
        let (fwd, bwd) = if self.reversal {
            (edge_bundle(self.g2, v2, v), edge_bundle(self.g2, v, v2))
        } else {
            (edge_bundle(self.g2, v, v2), edge_bundle(self.g2, v2, v))
        };
        edge_bundle(self.g1, u, u2) == fwd && edge_bundle(self.g1, u2, u) == bwd
    }

    fn extend(&self, assignment: &mut Vec<usize>, used: &mut [bool], found: &mut Vec<GraphMap>) {
        let u = assignment.len();
        if u == self.g1.vertices.len() {
            self.match_edges(assignment, found);
            return;
        }
        for &v in &self.candidates[u] {
            if used[v] {
                continue;
            }
            let consistent = (0..u).all(|u2| self.bundles_match(u, v, u2, assignment[u2]));
            if !consistent {
                continue;
            }
            used[v] = true;
            assignment.push(v);
            self.extend(assignment, used, found);
            assignment.pop();
            used[v] = false;
        }
    }

    /// Enumerates every edge bijection compatible with a vertex assignment.
    fn match_edges(&self, vmap: &[usize], found: &mut Vec<GraphMap>) {
        let mut groups: BTreeMap<(usize, usize, &Rational), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, e) in self.g1.edges.iter().enumerate() {
            groups.entry((e.tail, e.head, &e.period)).or_default().0.push(i);
        }
        for (key, (_, targets)) in groups.iter_mut() {
            let (t, h) = (vmap[key.0], vmap[key.1]);
            let (t, h) = if self.reversal { (h, t) } else { (t, h) };
            targets.extend(
                self.g2
                    .edges
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| f.tail == t && f.head == h && &f.period == key.2)
                    .map(|(j, _)| j),
            );
        }
        let groups: Vec<(Vec<usize>, Vec<usize>)> = groups.into_values().collect();
        if groups.iter().any(|(s, t)| s.len() != t.len()) {
            return;
        }
        let mut edge_map = vec![0; self.g1.edges.len()];
        self.product(&groups, 0, &mut edge_map, vmap, found);
    }

    fn product(
        &self,
        groups: &[(Vec<usize>, Vec<usize>)],
        k: usize,
        edge_map: &mut Vec<usize>,
        vmap: &[usize],
        found: &mut Vec<GraphMap>,
    ) {
        if k == groups.len() {
            found.push(GraphMap {
                reversal: self.reversal,
                vertex_map: vmap.to_vec(),
                edge_map: edge_map.clone(),
            });
            return;
        }
        let (sources, targets) = &groups[k];
        for perm in permutations(targets.len()) {
            for (s, &p) in sources.iter().zip(&perm) {
                edge_map[*s] = targets[p];
            }
            self.product(groups, k + 1, edge_map, vmap, found);
        }
    }
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot exists");
        perm.swap(i - 1, j);
        perm[i..].reverse();
        out.push(perm.clone());
    }
}

/// The finite group of label-preserving automorphisms, reversals included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    /// All elements, identity first.
    pub elements: Vec<GraphMap>,
    pub generators: Vec<GraphMap>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, m: &GraphMap) -> bool {
        self.elements.contains(m)
    }

    pub fn identity(&self) -> &GraphMap {
        &self.elements[0]
    }

    pub fn element_order(m: &GraphMap) -> usize {
        let mut k = 1;
        let mut p = m.clone();
        while !p.is_identity() {
            p = m.compose(&p);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Short structural name: `1`, `Z2`, `Z{n}`, `Z2^k`, or `G{n}`.
    pub fn structure_name(&self) -> String {
        let n = self.order();
        if n == 1 {
            return "1".into();
        }
        if self.elements.iter().any(|m| Self::element_order(m) == n) {
            return format!("Z{n}");
        }
        if self.elements.iter().all(|m| Self::element_order(m) <= 2) && n.is_power_of_two() {
            return format!("Z2^{}", n.trailing_zeros());
        }
        format!("G{n}")
    }
}

fn closure(gens: &[GraphMap], identity: &GraphMap) -> HashSet<GraphMap> {
    let mut seen: HashSet<GraphMap> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

pub fn automorphism_group(g: &LabeledGraph) -> Result<AutomorphismGroup, GraphError> {
    automorphism_group_with(g, &SearchConfig::default())
}

pub fn automorphism_group_with(
    g: &LabeledGraph,
    config: &SearchConfig,
) -> Result<AutomorphismGroup, GraphError> {
    let mut elements = graph_isomorphisms_with(g, g, true, config)?;
    let identity = GraphMap::identity(g.vertices.len(), g.edges.len());
    let pos = elements
        .iter()
        .position(|m| *m == identity)
        .ok_or(GraphError::NotClosed("identity"))?;
    elements.remove(pos);
    elements.sort();
    elements.insert(0, identity.clone());

    let members: HashSet<&GraphMap> = elements.iter().collect();
    for a in &elements {
        if !members.contains(&a.inverse()) {
            return Err(GraphError::NotClosed("inverse"));
        }
        for b in &elements {
            if !members.contains(&a.compose(b)) {
                return Err(GraphError::NotClosed("composition"));
            }
        }
    }

    let mut generators = Vec::new();
    let mut generated = closure(&generators, &identity);
    for m in &elements {
        if !generated.contains(m) {
            generators.push(m.clone());
            generated = closure(&generators, &identity);
        }
    }
    Ok(AutomorphismGroup {
        elements,
        generators,
    })
}

/// Morita equivalence: an orientation-preserving labeled-graph isomorphism.
pub fn morita_equivalent(
    s1: &TssSurface,
    s2: &TssSurface,
) -> Result<(bool, Option<GraphMap>), GraphError> {
    let (g1, g2) = (build_graph(s1)?, build_graph(s2)?);
    let witness = graph_isomorphisms(&g1, &g2, false)?.into_iter().next();
    Ok((witness.is_some(), witness))
}

/// Classification up to orientation-preserving Poisson diffeomorphism:
/// Morita data plus equal total regularized volume.
pub fn isomorphic_tss(
    s1: &TssSurface,
    s2: &TssSurface,
) -> Result<(bool, Option<GraphMap>), GraphError> {
    if s1.total_volume() != s2.total_volume() {
        // still surface graph errors first
        build_graph(s1)?;
        build_graph(s2)?;
        return Ok((false, None));
    }
    morita_equivalent(s1, s2)
}

/// Like [`isomorphic_tss`] but the isomorphism must match leaf volumes one by one.
pub fn isomorphic_tss_strict(
    s1: &TssSurface,
    s2: &TssSurface,
) -> Result<(bool, Option<GraphMap>), GraphError> {
    let (g1, g2) = (build_graph(s1)?, build_graph(s2)?);
    let witness = graph_isomorphisms(&g1, &g2, false)?
        .into_iter()
        .find(|m| {
            m.vertex_map
                .iter()
                .enumerate()
                .all(|(i, &j)| s1.leaves[i].volume == s2.leaves[j].volume)
        });
    Ok((witness.is_some(), witness))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct VertexLabel<'a> {
    sign: Sign,
    genus: u32,
    free_boundary: u32,
    out: Vec<&'a Rational>,
    inc: Vec<&'a Rational>,
}

pub fn canonical_key(g: &LabeledGraph) -> Result<String, GraphError> {
    canonical_key_with(g, &SearchConfig::default())
}

/// A string equal for two graphs exactly when they are isomorphic without
/// reversal: the lexicographically least edge list over all vertex
/// orderings that sort the vertices by label.
pub fn canonical_key_with(g: &LabeledGraph, config: &SearchConfig) -> Result<String, GraphError> {
    check_size(g, config)?;
    let labels: Vec<VertexLabel> = (0..g.vertices.len())
        .map(|v| {
            let (out, inc) = degree_signature(g, v);
            let x = &g.vertices[v];
            VertexLabel {
                sign: x.sign,
                genus: x.genus,
                free_boundary: x.free_boundary,
                out,
                inc,
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..g.vertices.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match blocks.last_mut() {
            Some(b) if labels[b[0]] == labels[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }

    let mut best: Option<Vec<(usize, usize, &Rational)>> = None;
    let mut position = vec![0usize; g.vertices.len()];
    let block_perms: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| permutations(b.len())).collect();
    let mut idx = vec![0usize; blocks.len()];
    loop {
        let mut next = 0;
        for (b, block) in blocks.iter().enumerate() {
            for &p in &block_perms[b][idx[b]] {
                position[block[p]] = next;
                next += 1;
            }
        }
        let mut edges: Vec<(usize, usize, &Rational)> = g
            .edges
            .iter()
            .map(|e| (position[e.tail], position[e.head], &e.period))
            .collect();
        edges.sort();
        if best.as_ref().is_none_or(|b| edges < *b) {
            best = Some(edges);
        }
        // odometer over the per-block permutations
        let mut b = 0;
        loop {
            if b == blocks.len() {
                return Ok(render_key(&order, &labels, best.unwrap_or_default()));
            }
            idx[b] += 1;
            if idx[b] < block_perms[b].len() {
                break;
            }
            idx[b] = 0;
            b += 1;
        }
    }
}

fn render_key(order: &[usize], labels: &[VertexLabel], edges: Vec<(usize, usize, &Rational)>) -> String {
    let vs: Vec<String> = order
        .iter()
        .map(|&v| {
            let l = &labels[v];
            format!("{}g{}b{}", l.sign, l.genus, l.free_boundary)
        })
        .collect();
    let es: Vec<String> = edges
        .iter()
        .map(|(t, h, p)| format!("{t}>{h}:{}", format_rational(p)))
        .collect();
    format!("V[{}]E[{}]", vs.join(","), es.join(","))
}
