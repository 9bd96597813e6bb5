//! Commuting graphs on conjugacy classes.
//!
//! Vertices of `Γ(C)` are the elements of a class `C`; `x` and `y` are
//! adjacent when they commute, are distinct, and `xy⁻¹` or `yx⁻¹` lies in
//! `C`. The rational variant uses the rational class, which is closed under
//! inverses, so one membership test suffices there.

mod quads;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::{ConjugacyClass, PermGroup};
use crate::perm::Permutation;

pub use quads::{
    definitional_edge, normalization_bound, normalize_involution, quad_edge_oracle, EdgeKind,
    EdgeWitness, PairRelation,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Ordinary,
    Rational,
}

#[derive(Clone, Debug)]
pub struct ClassGraph {
    pub class: ConjugacyClass,
    pub kind: GraphKind,
    /// Sorted neighbor ids; vertex ids follow the sorted class order.
    pub adjacency: Vec<Vec<u32>>,
}

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn edge_in(class: &ConjugacyClass, x: &Permutation, y: &Permutation) -> bool {
    if x == y || !x.commutes_with(y) {
        return false;
    }
    let d = x.mul(&y.inverse());
    class.contains(&d) || class.contains(&d.inverse())
}

pub fn build_gamma(class: &ConjugacyClass, bounds: &Bounds) -> Result<ClassGraph> {
    build(class, GraphKind::Ordinary, bounds)
}

pub fn build_gamma_rational(class: &ConjugacyClass, bounds: &Bounds) -> Result<ClassGraph> {
    if !class.rational {
        return Err(Error::Precondition(
            "rational graph needs a rational class".into(),
        ));
    }
    build(class, GraphKind::Rational, bounds)
}

fn build(class: &ConjugacyClass, kind: GraphKind, bounds: &Bounds) -> Result<ClassGraph> {
    let n = class.len();
    if n > bounds.graph_pruned {
        return Err(Error::bound(
            "class graph size",
            n as u64,
            bounds.graph_pruned as u64,
        ));
    }
    let ord = class.element_order();
    if !is_prime(ord) {
        log::warn!("class graph on elements of non-prime order {ord}");
    }
    let adjacency = if n <= bounds.graph_all_pairs {
        all_pairs(class)
    } else {
        by_transport(class)
    };
    Ok(ClassGraph {
        class: class.clone(),
        kind,
        adjacency,
    })
}

fn all_pairs(class: &ConjugacyClass) -> Vec<Vec<u32>> {
    let els = &class.elements;
    (0..els.len())
        .into_par_iter()
        .map(|i| {
            (0..els.len())
                .filter(|&j| edge_in(class, &els[i], &els[j]))
                .map(|j| j as u32)
                .collect()
        })
        .collect()
}

// Neighbors of one seed per group class are found by a scan; they are then
// carried to every other vertex by the conjugator that reaches it, since
// adjacency is invariant under conjugation by the group.
fn by_transport(class: &ConjugacyClass) -> Vec<Vec<u32>> {
    let els = &class.elements;
    let gens = class.group.generators();
    let mut conj: Vec<Option<(usize, Permutation)>> = vec![None; els.len()];
    let mut seeds: Vec<(usize, Vec<u32>)> = Vec::new();
    for start in 0..els.len() {
        if conj[start].is_some() {
            continue;
        }
        let seed_id = seeds.len();
        let nbrs: Vec<u32> = (0..els.len())
            .into_par_iter()
            .filter(|&j| edge_in(class, &els[start], &els[j]))
            .map(|j| j as u32)
            .collect();
        seeds.push((start, nbrs));
        conj[start] = Some((seed_id, Permutation::identity(els[start].degree())));
        let mut queue = vec![start];
        let mut qi = 0;
        while qi < queue.len() {
            let v = queue[qi];
            let a = conj[v].as_ref().unwrap().1.clone();
            for g in gens {
                let w = class
                    .index_of(&els[v].conj(g))
                    .expect("class closed under conjugation");
                if conj[w].is_none() {
                    conj[w] = Some((seed_id, a.mul(g)));
                    queue.push(w);
                }
            }
            qi += 1;
        }
    }
    conj.into_par_iter()
        .map(|c| {
            let (seed, a) = c.unwrap();
            let mut out: Vec<u32> = seeds[seed]
                .1
                .iter()
                .map(|&u| class.index_of(&els[u as usize].conj(&a)).unwrap() as u32)
                .collect();
            out.sort_unstable();
            out
        })
        .collect()
}

impl ClassGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn vertex(&self, id: usize) -> &Permutation {
        &self.class.elements[id]
    }

    pub fn vertex_id(&self, g: &Permutation) -> Option<usize> {
        self.class.index_of(g)
    }

    pub fn neighbors(&self, id: usize) -> &[u32] {
        &self.adjacency[id]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&(b as u32)).is_ok()
    }

    /// The defining predicate, evaluated directly.
    pub fn edge_predicate(&self, x: &Permutation, y: &Permutation) -> bool {
        edge_in(&self.class, x, y)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(i, ns)| {
            ns.iter()
                .map(move |&j| (i, j as usize))
                .filter(|(i, j)| i < j)
        })
    }
}

/// Components as sorted vertex-id lists, ordered by least vertex.
pub fn connected_components(graph: &ClassGraph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            for &w in graph.neighbors(comp[i]) {
                let w = w as usize;
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn component_of(graph: &ClassGraph, id: usize) -> Vec<usize> {
    connected_components(graph)
        .into_iter()
        .find(|c| c.binary_search(&id).is_ok())
        .expect("components partition the vertices")
}

/// Subgroup generated by the component of `g`.
pub fn component_group(graph: &ClassGraph, g: &Permutation) -> Result<PermGroup> {
    let id = graph
        .vertex_id(g)
        .ok_or_else(|| Error::NotInGroup(format!("{g} is not a vertex of the class graph")))?;
    let elems: Vec<Permutation> = component_of(graph, id)
        .into_iter()
        .map(|v| graph.vertex(v).clone())
        .collect();
    PermGroup::from_elements(g.degree(), &elems)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentSummary {
    pub size: usize,
    pub group_order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub group: String,
    pub class_rep: String,
    pub kind: GraphKind,
    pub vertices: usize,
    pub edges: usize,
    pub components: Vec<ComponentSummary>,
}

pub fn graph_summary(graph: &ClassGraph, group_label: &str) -> GraphSummary {
    let degree = graph.class.representative.degree();
    let components = connected_components(graph)
        .into_iter()
        .map(|c| {
            let elems: Vec<Permutation> = c.iter().map(|&v| graph.vertex(v).clone()).collect();
            let h = PermGroup::from_elements(degree, &elems).expect("same degree");
            ComponentSummary {
                size: c.len(),
                group_order: h.order(),
            }
        })
        .collect();
    GraphSummary {
        group: group_label.to_string(),
        class_rep: graph.class.representative.to_string(),
        kind: graph.kind,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        components,
    }
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Colour vertices by connected component.
    pub components: bool,
}

const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn dot_export(graph: &ClassGraph, options: &DotOptions) -> String {
    let mut colour: HashMap<usize, usize> = HashMap::new();
    if options.components {
        for (ci, comp) in connected_components(graph).iter().enumerate() {
            for &v in comp {
                colour.insert(v, ci);
            }
        }
    }
    let mut out = String::from("graph gamma {\n");
    for v in 0..graph.vertex_count() {
        let label = graph.vertex(v).to_string();
        if let Some(&c) = colour.get(&v) {
            let _ = writeln!(
                out,
                "  v{v} [label=\"{label}\", style=filled, fillcolor=\"{}\", component={c}];",
                PALETTE[c % PALETTE.len()]
            );
        } else {
            let _ = writeln!(out, "  v{v} [label=\"{label}\"];");
        }
    }
    for (a, b) in graph.edges() {
        let _ = writeln!(out, "  v{a} -- v{b};");
    }
    out.push_str("}\n");
    out
}
