//! Structural coherence checking over named classes.
//!
//! The checker only looks at `SubClassOf`, `EquivalentClasses` and
//! `DisjointClasses` between named classes. It is sound for that fragment
//! and deliberately incomplete for OWL DL: domain/range interactions,
//! property characteristics and datatype clashes are not considered.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use thiserror::Error;

use crate::model::{Axiom, Iri, Ontology};

/// Printed in reports next to the unsatisfiable-class count.
pub const CHECKER_SCOPE: &str =
    "structural: named-class subsumption, equivalence and disjointness only (no domain/range or property reasoning)";

/// How many root classes get a justification in [`UnsatReport`].
pub const JUSTIFICATION_SAMPLE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("{0} is not a class of this ontology")]
    UnknownClass(Iri),
    #[error("{0} is satisfiable")]
    NotUnsatisfiable(Iri),
}

/// A node of the condensed hierarchy: a set of mutually subsuming classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

#[derive(Debug, Clone, Copy)]
struct ClassEdge {
    to: u32,
    axiom: u32,
}

/// The subsumption hierarchy with cycles collapsed.
///
/// Node ids are topologically ordered: every parent has a smaller id than
/// its children. Class ids follow IRI order.
#[derive(Debug, Clone)]
pub struct Taxonomy {
    classes: Vec<Iri>,
    class_index: HashMap<Iri, u32>,
    edges: Vec<Vec<ClassEdge>>,
    node_of: Vec<u32>,
    members: Vec<Vec<u32>>,
    parents: Vec<Vec<u32>>,
    children: Vec<Vec<u32>>,
    pre: Vec<u32>,
    post: Vec<u32>,
}

/// Iterative Tarjan. Components come out sinks first, i.e. superclasses
/// before their subclasses.
fn strongly_connected(edges: &[Vec<ClassEdge>]) -> Vec<Vec<u32>> {
    const UNSEEN: u32 = u32::MAX;
    let n = edges.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    let mut calls: Vec<(u32, usize)> = Vec::new();
    let mut counter = 0u32;
    let mut components = Vec::new();

    for root in 0..n as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        calls.push((root, 0));
        index[root as usize] = counter;
        low[root as usize] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root as usize] = true;

        while let Some(&mut (v, ref mut next)) = calls.last_mut() {
            let vi = v as usize;
            if let Some(edge) = edges[vi].get(*next) {
                *next += 1;
                let w = edge.to as usize;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w as u32);
                    on_stack[w] = true;
                    calls.push((w as u32, 0));
                } else if on_stack[w] {
                    low[vi] = low[vi].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent as usize] = low[parent as usize].min(low[vi]);
            }
            if low[vi] == index[vi] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("component on stack");
                    on_stack[w as usize] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.sort_unstable();
                components.push(component);
            }
        }
    }
    components
}

/// Builds the condensed hierarchy: one edge per `SubClassOf`, two per pair
/// of operands in `EquivalentClasses`. Built-in classes are left out.
pub fn classify(o: &Ontology) -> Taxonomy {
    let classes: Vec<Iri> = o.entities().of_kind(crate::model::EntityKind::Class).iter().cloned().collect();
    let class_index: HashMap<Iri, u32> = classes.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let mut edges: Vec<Vec<ClassEdge>> = vec![Vec::new(); classes.len()];

    let id = |iri: &Iri| class_index.get(iri).copied();
    for (ax_idx, axiom) in o.axioms().enumerate() {
        let axiom_id = ax_idx as u32;
        match axiom {
            Axiom::SubClassOf { sub, sup } => {
                if let (Some(a), Some(b)) = (id(sub), id(sup)) {
                    if a != b {
                        edges[a as usize].push(ClassEdge { to: b, axiom: axiom_id });
                    }
                }
            }
            Axiom::EquivalentClasses(ops) => {
                let ids: Vec<u32> = ops.iter().filter_map(id).collect();
                for &a in &ids {
                    for &b in &ids {
                        if a != b {
                            edges[a as usize].push(ClassEdge { to: b, axiom: axiom_id });
                        }
                    }
                }
            }
            _ => {}
        }
    }
    for adj in &mut edges {
        adj.sort_by_key(|e| (e.to, e.axiom));
        adj.dedup_by_key(|e| e.to);
    }

    let members = strongly_connected(&edges);
    let mut node_of = vec![0u32; classes.len()];
    for (node, comp) in members.iter().enumerate() {
        for &c in comp {
            node_of[c as usize] = node as u32;
        }
    }
    let mut parents: Vec<Vec<u32>> = vec![Vec::new(); members.len()];
    for (c, adj) in edges.iter().enumerate() {
        let from = node_of[c];
        for e in adj {
            let to = node_of[e.to as usize];
            if to != from {
                debug_assert!(to < from, "parents precede children");
                parents[from as usize].push(to);
            }
        }
    }
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); members.len()];
    for (n, ps) in parents.iter_mut().enumerate() {
        ps.sort_unstable();
        ps.dedup();
        for &p in ps.iter() {
            children[p as usize].push(n as u32);
        }
    }

    // interval labels over a spanning forest (first parent = tree parent)
    let mut tree_children: Vec<Vec<u32>> = vec![Vec::new(); members.len()];
    for (n, ps) in parents.iter().enumerate() {
        if let Some(&p) = ps.first() {
            tree_children[p as usize].push(n as u32);
        }
    }
    let mut pre = vec![0u32; members.len()];
    let mut post = vec![0u32; members.len()];
    let (mut pre_counter, mut post_counter) = (0u32, 0u32);
    let mut walk: Vec<(u32, usize)> = Vec::new();
    for root in (0..members.len() as u32).filter(|&n| parents[n as usize].is_empty()) {
        pre[root as usize] = pre_counter;
        pre_counter += 1;
        walk.push((root, 0));
        while let Some(&mut (v, ref mut next)) = walk.last_mut() {
            if let Some(&child) = tree_children[v as usize].get(*next) {
                *next += 1;
                pre[child as usize] = pre_counter;
                pre_counter += 1;
                walk.push((child, 0));
            } else {
                post[v as usize] = post_counter;
                post_counter += 1;
                walk.pop();
            }
        }
    }

    Taxonomy { classes, class_index, edges, node_of, members, parents, children, pre, post }
}

impl Taxonomy {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn node_count(&self) -> usize {
        self.members.len()
    }

    pub fn node_of(&self, class: &Iri) -> Option<NodeId> {
        self.class_index.get(class).map(|&c| NodeId(self.node_of[c as usize]))
    }

    pub fn members(&self, node: NodeId) -> impl Iterator<Item = &Iri> + '_ {
        self.members[node.0 as usize].iter().map(move |&c| &self.classes[c as usize])
    }

    pub fn parents(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.parents[node.0 as usize].iter().map(|&p| NodeId(p))
    }

    pub fn children(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.children[node.0 as usize].iter().map(|&p| NodeId(p))
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.members.len() as u32).map(NodeId)
    }

    /// Classes equivalent to `class` (itself included), in IRI order.
    pub fn equivalents(&self, class: &Iri) -> Vec<Iri> {
        self.node_of(class).map(|n| self.members(n).cloned().collect()).unwrap_or_default()
    }

    fn tree_contains(&self, ancestor: u32, descendant: u32) -> bool {
        let (a, d) = (ancestor as usize, descendant as usize);
        self.pre[a] <= self.pre[d] && self.post[d] <= self.post[a]
    }

    fn node_reaches(&self, sub: u32, sup: u32) -> bool {
        if sub == sup || self.tree_contains(sup, sub) {
            return true;
        }
        if sup > sub {
            return false;
        }
        // nodes with an id below `sup` sit above it and cannot lead back down
        let mut seen = HashSet::new();
        let mut todo = vec![sub];
        while let Some(n) = todo.pop() {
            for &p in &self.parents[n as usize] {
                if p == sup || self.tree_contains(sup, p) {
                    return true;
                }
                if p > sup && seen.insert(p) {
                    todo.push(p);
                }
            }
        }
        false
    }

    /// Node-level reachability, for callers that already hold node ids.
    pub fn node_subsumes(&self, sup: NodeId, sub: NodeId) -> bool {
        self.node_reaches(sub.0, sup.0)
    }

    /// Whether `sup` subsumes `sub` (reflexive). Unknown IRIs are only
    /// subsumed by themselves.
    pub fn subsumes(&self, sup: &Iri, sub: &Iri) -> bool {
        if sup == sub {
            return true;
        }
        match (self.node_of(sup), self.node_of(sub)) {
            (Some(a), Some(b)) => self.node_reaches(b.0, a.0),
            _ => false,
        }
    }

    /// All nodes above `node`, itself included, in ascending id order.
    pub fn ancestors(&self, node: NodeId) -> Vec<NodeId> {
        let mut seen = BTreeSet::from([node.0]);
        let mut todo = vec![node.0];
        while let Some(n) = todo.pop() {
            for &p in &self.parents[n as usize] {
                if seen.insert(p) {
                    todo.push(p);
                }
            }
        }
        seen.into_iter().map(NodeId).collect()
    }
}

/// Length in levels of the longest root-to-leaf chain of the condensed
/// hierarchy; 0 when there are no classes.
pub fn hierarchy_depth(t: &Taxonomy) -> usize {
    let mut level = vec![0usize; t.node_count()];
    let mut deepest = 0;
    for n in 0..t.node_count() {
        let l = 1 + t.parents[n].iter().map(|&p| level[p as usize]).max().unwrap_or(0);
        level[n] = l;
        deepest = deepest.max(l);
    }
    deepest
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub class: Iri,
    pub disjoint: (Iri, Iri),
    /// `class` up to `disjoint.0`.
    pub path1: Vec<Iri>,
    /// `class` up to `disjoint.1`.
    pub path2: Vec<Iri>,
    /// Axioms behind every edge of both paths, then the disjointness axiom.
    pub axioms: Vec<Axiom>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnsatReport {
    pub unsat: BTreeSet<Iri>,
    /// One representative class per unsatisfiable node whose parents are
    /// all satisfiable, in IRI order.
    pub roots: Vec<Iri>,
    /// Justifications for up to [`JUSTIFICATION_SAMPLE`] roots.
    pub justifications: BTreeMap<Iri, Justification>,
    unsat_nodes: Vec<bool>,
}

impl UnsatReport {
    pub fn is_coherent(&self) -> bool {
        self.unsat.is_empty()
    }

    pub fn len(&self) -> usize {
        self.unsat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.unsat.is_empty()
    }

    pub fn contains(&self, class: &Iri) -> bool {
        self.unsat.contains(class)
    }

    pub fn node_is_unsat(&self, node: NodeId) -> bool {
        self.unsat_nodes.get(node.0 as usize).copied().unwrap_or(false)
    }
}

/// Disjoint node pairs, as partner lists keyed by a dense id per node.
struct DisjointIndex {
    dense: HashMap<u32, u32>,
    partners: Vec<Vec<u32>>,
}

impl DisjointIndex {
    fn build(o: &Ontology, t: &Taxonomy) -> Self {
        let mut dense: HashMap<u32, u32> = HashMap::new();
        let mut partners: Vec<Vec<u32>> = Vec::new();
        for axiom in o.axioms() {
            let Axiom::DisjointClasses(ops) = axiom else { continue };
            let nodes: Vec<u32> = ops.iter().filter_map(|c| t.node_of(c)).map(|n| n.0).collect();
            for (i, &a) in nodes.iter().enumerate() {
                for &b in &nodes[i + 1..] {
                    let mut slot = |n: u32| {
                        let next = dense.len() as u32;
                        *dense.entry(n).or_insert_with(|| {
                            partners.push(Vec::new());
                            next
                        })
                    };
                    let (da, db) = (slot(a), slot(b));
                    partners[da as usize].push(db);
                    partners[db as usize].push(da);
                }
            }
        }
        for p in &mut partners {
            p.sort_unstable();
            p.dedup();
        }
        DisjointIndex { dense, partners }
    }

    fn clashes(&self, sorted: &[u32]) -> bool {
        sorted
            .iter()
            .any(|&d| self.partners[d as usize].iter().any(|p| sorted.binary_search(p).is_ok()))
    }
}

/// A class is unsatisfiable when two disjoint classes both subsume it.
/// Because subsumption is reflexive and transitive this covers classes
/// below or equivalent to an unsatisfiable class, and a node holding both
/// members of a disjoint pair.
pub fn unsatisfiable_classes(o: &Ontology, t: &Taxonomy) -> UnsatReport {
    let disjoint = DisjointIndex::build(o, t);
    let n = t.node_count();
    let mut unsat_nodes = vec![false; n];
    // disjoint-participating ancestors of each satisfiable node (sorted dense ids)
    let mut above: Vec<Option<Arc<[u32]>>> = vec![None; n];
    let empty: Arc<[u32]> = Arc::from(Vec::new());

    for node in 0..n {
        let parents = &t.parents[node];
        if parents.iter().any(|&p| unsat_nodes[p as usize]) {
            unsat_nodes[node] = true;
            continue;
        }
        let own = disjoint.dense.get(&(node as u32)).copied();
        if own.is_none() && parents.len() <= 1 {
            above[node] = Some(parents.first().map_or_else(
                || empty.clone(),
                |&p| above[p as usize].clone().expect("satisfiable parent"),
            ));
            continue;
        }
        let mut set: Vec<u32> = parents
            .iter()
            .flat_map(|&p| above[p as usize].as_deref().expect("satisfiable parent").iter().copied())
            .chain(own)
            .collect();
        set.sort_unstable();
        set.dedup();
        if disjoint.clashes(&set) {
            unsat_nodes[node] = true;
        } else {
            above[node] = Some(Arc::from(set));
        }
    }

    let mut unsat = BTreeSet::new();
    let mut roots = Vec::new();
    for node in 0..n {
        if !unsat_nodes[node] {
            continue;
        }
        let members = &t.members[node];
        unsat.extend(members.iter().map(|&c| t.classes[c as usize].clone()));
        if t.parents[node].iter().all(|&p| !unsat_nodes[p as usize]) {
            roots.push(t.classes[members[0] as usize].clone());
        }
    }
    roots.sort();
    let justifier = Justifier::new(o, t);
    let justifications = roots
        .iter()
        .take(JUSTIFICATION_SAMPLE)
        .filter_map(|c| justifier.justify(c).ok().map(|j| (c.clone(), j)))
        .collect();
    UnsatReport { unsat, roots, justifications, unsat_nodes }
}

/// Shortest witness for an unsatisfiable class: the disjoint pair reachable
/// with the fewest subsumption steps and one shortest path to each side.
/// Ties go to the lexicographically smaller IRIs.
pub fn justify_unsat(class: &Iri, o: &Ontology, t: &Taxonomy) -> Result<Justification, ReasonerError> {
    Justifier::new(o, t).justify(class)
}

/// [`justify_unsat`] for many classes, scanning the axioms once.
pub struct Justifier<'a> {
    o: &'a Ontology,
    t: &'a Taxonomy,
    // (axiom index, class ids of its operands)
    disjoint: Vec<(usize, Vec<u32>)>,
}

impl<'a> Justifier<'a> {
    pub fn new(o: &'a Ontology, t: &'a Taxonomy) -> Self {
        let disjoint = o
            .axioms()
            .enumerate()
            .filter_map(|(ax_idx, axiom)| {
                let Axiom::DisjointClasses(ops) = axiom else { return None };
                Some((ax_idx, ops.iter().filter_map(|c| t.class_index.get(c).copied()).collect()))
            })
            .collect();
        Justifier { o, t, disjoint }
    }

    pub fn justify(&self, class: &Iri) -> Result<Justification, ReasonerError> {
        let (o, t) = (self.o, self.t);
        let &start = t.class_index.get(class).ok_or_else(|| ReasonerError::UnknownClass(class.clone()))?;
        // class id -> (distance, predecessor, axiom of the incoming edge)
        let mut reached: HashMap<u32, (u32, u32, u32)> = HashMap::from([(start, (0, u32::MAX, u32::MAX))]);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            let d = reached[&c].0;
            for e in &t.edges[c as usize] {
                reached.entry(e.to).or_insert_with(|| {
                    queue.push_back(e.to);
                    (d + 1, c, e.axiom)
                });
            }
        }

        let mut best: Option<(u32, u32, u32, usize)> = None;
        for &(ax_idx, ref ids) in &self.disjoint {
            for (i, &a) in ids.iter().enumerate() {
                for &b in &ids[i + 1..] {
                    let (Some(ra), Some(rb)) = (reached.get(&a), reached.get(&b)) else { continue };
                    let candidate = (ra.0 + rb.0, a.min(b), a.max(b), ax_idx);
                    if best.is_none_or(|cur| candidate < cur) {
                        best = Some(candidate);
                    }
                }
            }
        }
        let Some((_, first, second, disjoint_axiom)) = best else {
            return Err(ReasonerError::NotUnsatisfiable(class.clone()));
        };

        let mut axioms: Vec<Axiom> = Vec::new();
        let trace = |target: u32, axioms: &mut Vec<Axiom>| -> Vec<Iri> {
            let mut ids = vec![target];
            let mut edge_axioms = Vec::new();
            let mut cur = target;
            while cur != start {
                let (_, prev, ax) = reached[&cur];
                edge_axioms.push(ax);
                ids.push(prev);
                cur = prev;
            }
            for ax in edge_axioms.into_iter().rev() {
                let axiom = o.axiom_at(ax as usize).expect("edge axiom").clone();
                if !axioms.contains(&axiom) {
                    axioms.push(axiom);
                }
            }
            ids.into_iter().rev().map(|c| t.classes[c as usize].clone()).collect()
        };
        let path1 = trace(first, &mut axioms);
        let path2 = trace(second, &mut axioms);
        axioms.push(o.axiom_at(disjoint_axiom).expect("disjoint axiom").clone());
        Ok(Justification {
            class: class.clone(),
            disjoint: (t.classes[first as usize].clone(), t.classes[second as usize].clone()),
            path1,
            path2,
            axioms,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum InconsistencyReason {
    /// An unsatisfiable class has an instance.
    UnsatisfiableInstance { class: Iri, individual: Iri },
    /// An individual (or its `SameIndividual` group) falls under two
    /// disjoint classes.
    DisjointTypes { individual: Iri, first: Iri, second: Iri },
    /// Two individuals are both the same and different.
    SameAndDifferent { first: Iri, second: Iri },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyVerdict {
    pub consistent: bool,
    pub reasons: Vec<InconsistencyReason>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Instance-level check run after [`unsatisfiable_classes`]. An incoherent
/// ontology without offending assertions is still consistent.
pub fn is_consistent(o: &Ontology, t: &Taxonomy, r: &UnsatReport) -> ConsistencyVerdict {
    let mut ids: HashMap<&Iri, usize> = HashMap::new();
    let mut names: Vec<&Iri> = Vec::new();
    fn intern<'a>(ids: &mut HashMap<&'a Iri, usize>, names: &mut Vec<&'a Iri>, i: &'a Iri) -> usize {
        *ids.entry(i).or_insert_with(|| {
            names.push(i);
            names.len() - 1
        })
    }

    let mut sames: Vec<(usize, usize)> = Vec::new();
    let mut differents: Vec<Vec<usize>> = Vec::new();
    let mut assertions: Vec<(usize, &Iri)> = Vec::new();
    for axiom in o.axioms() {
        match axiom {
            Axiom::SameIndividual(ops) => {
                let first = intern(&mut ids, &mut names, &ops[0]);
                for other in &ops[1..] {
                    sames.push((first, intern(&mut ids, &mut names, other)));
                }
            }
            Axiom::DifferentIndividuals(ops) => {
                differents.push(ops.iter().map(|i| intern(&mut ids, &mut names, i)).collect())
            }
            Axiom::ClassAssertion { class, individual } => {
                assertions.push((intern(&mut ids, &mut names, individual), class))
            }
            _ => {}
        }
    }
    let mut parent: Vec<usize> = (0..names.len()).collect();
    for (a, b) in sames {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }

    let mut reasons = BTreeSet::new();
    let mut groups: BTreeMap<usize, BTreeSet<NodeId>> = BTreeMap::new();
    for &(ind, class) in &assertions {
        if r.contains(class) {
            reasons.insert(InconsistencyReason::UnsatisfiableInstance {
                class: class.clone(),
                individual: names[ind].clone(),
            });
        } else if let Some(node) = t.node_of(class) {
            let root = find(&mut parent, ind);
            groups.entry(root).or_default().insert(node);
        }
    }

    let disjoint = DisjointIndex::build(o, t);
    for (root, nodes) in groups {
        if nodes.len() < 2 {
            continue;
        }
        let mut above: BTreeSet<NodeId> = BTreeSet::new();
        for &n in &nodes {
            above.extend(t.ancestors(n));
        }
        let by_dense: HashMap<u32, NodeId> =
            above.iter().filter_map(|n| disjoint.dense.get(&n.0).map(|&d| (d, *n))).collect();
        let hit = above.iter().find_map(|n| {
            let d = *disjoint.dense.get(&n.0)?;
            let p = disjoint.partners[d as usize].iter().find(|p| by_dense.contains_key(p))?;
            Some((*n, by_dense[p]))
        });
        if let Some((a, b)) = hit {
            let individual = (0..names.len())
                .filter(|&i| find(&mut parent, i) == root)
                .map(|i| names[i].clone())
                .min()
                .expect("group has members");
            let first = t.members(a).next().expect("non-empty node").clone();
            let second = t.members(b).next().expect("non-empty node").clone();
            let (first, second) = if first <= second { (first, second) } else { (second, first) };
            reasons.insert(InconsistencyReason::DisjointTypes { individual, first, second });
        }
    }

    for group in differents {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                if find(&mut parent, a) == find(&mut parent, b) {
                    let (x, y) = (names[a].clone(), names[b].clone());
                    let (first, second) = if x <= y { (x, y) } else { (y, x) };
                    reasons.insert(InconsistencyReason::SameAndDifferent { first, second });
                }
            }
        }
    }

    let reasons: Vec<_> = reasons.into_iter().collect();
    ConsistencyVerdict { consistent: reasons.is_empty(), reasons }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EntityKind;
    use crate::parser::parse_ontology;
    use proptest::prelude::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://t#{s}")).unwrap()
    }

    fn onto(body: &str) -> Ontology {
        let doc = format!("Prefix(:=<http://t#>)\nOntology(<http://t>\n{body}\n)");
        parse_ontology(&doc).unwrap().0
    }

    fn names(set: &BTreeSet<Iri>) -> Vec<&str> {
        set.iter().map(|i| i.local_name().unwrap()).collect()
    }

    /// Warshall closure plus a scan of every disjoint pair.
    fn oracle(o: &Ontology) -> BTreeSet<Iri> {
        let classes: Vec<Iri> = o.entities().of_kind(EntityKind::Class).iter().cloned().collect();
        let pos = |c: &Iri| classes.iter().position(|x| x == c);
        let n = classes.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        let mut disjoint = Vec::new();
        for a in o.axioms() {
            match a {
                Axiom::SubClassOf { sub, sup } => {
                    if let (Some(x), Some(y)) = (pos(sub), pos(sup)) {
                        reach[x][y] = true;
                    }
                }
                Axiom::EquivalentClasses(ops) | Axiom::DisjointClasses(ops) => {
                    let ids: Vec<usize> = ops.iter().filter_map(pos).collect();
                    for &x in &ids {
                        for &y in &ids {
                            if x == y {
                                continue;
                            }
                            if matches!(a, Axiom::EquivalentClasses(_)) {
                                reach[x][y] = true;
                            } else {
                                disjoint.push((x, y));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        (0..n)
            .filter(|&c| disjoint.iter().any(|&(x, y)| reach[c][x] && reach[c][y]))
            .map(|c| classes[c].clone())
            .collect()
    }

    #[test]
    fn chain_subsumption() {
        let o = onto("SubClassOf(:A :B) SubClassOf(:B :C)");
        let t = classify(&o);
        assert!(t.subsumes(&iri("C"), &iri("A")));
        assert!(!t.subsumes(&iri("A"), &iri("C")));
        assert!(t.subsumes(&iri("A"), &iri("A")));
        assert_eq!(hierarchy_depth(&t), 3);
    }

    #[test]
    fn equivalence_collapses() {
        let o = onto("EquivalentClasses(:A :B)");
        let t = classify(&o);
        assert_eq!(t.node_of(&iri("A")), t.node_of(&iri("B")));
        assert!(t.subsumes(&iri("A"), &iri("B")) && t.subsumes(&iri("B"), &iri("A")));
        assert_eq!(t.equivalents(&iri("B")), vec![iri("A"), iri("B")]);
        assert_eq!(hierarchy_depth(&t), 1);
    }

    #[test]
    fn depth_of_empty_ontology() {
        assert_eq!(hierarchy_depth(&classify(&onto(""))), 0);
    }

    #[test]
    fn diamond_reachability_off_the_spanning_tree() {
        let o = onto("SubClassOf(:D :B) SubClassOf(:D :C) SubClassOf(:B :A) SubClassOf(:C :Z) SubClassOf(:E :D)");
        let t = classify(&o);
        for (sup, sub) in [("A", "E"), ("Z", "E"), ("B", "D"), ("C", "D"), ("Z", "D")] {
            assert!(t.subsumes(&iri(sup), &iri(sub)), "{sup} should subsume {sub}");
        }
        assert!(!t.subsumes(&iri("A"), &iri("C")));
        assert!(!t.subsumes(&iri("E"), &iri("A")));
    }

    #[test]
    fn bridged_three_class_fixture() {
        let o = onto(
            "SubClassOf(:A1 :D1) SubClassOf(:A2 :D2) DisjointClasses(:D1 :D2) Declaration(Class(:C))\n\
             EquivalentClasses(:C :A1) EquivalentClasses(:C :A2)",
        );
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        assert_eq!(names(&r.unsat), ["A1", "A2", "C"]);
        assert_eq!(r.unsat, oracle(&o));
        assert_eq!(r.roots, vec![iri("A1")]);

        let j = justify_unsat(&iri("C"), &o, &t).unwrap();
        assert_eq!(j.disjoint, (iri("D1"), iri("D2")));
        assert_eq!(j.path1, vec![iri("C"), iri("A1"), iri("D1")]);
        assert_eq!(j.path2, vec![iri("C"), iri("A2"), iri("D2")]);
        assert!(j.axioms.contains(&Axiom::equivalent_classes(iri("C"), iri("A1")).unwrap()));
        assert!(j.axioms.contains(&Axiom::equivalent_classes(iri("C"), iri("A2")).unwrap()));
        assert_eq!(j.axioms.last(), Some(&Axiom::disjoint_classes(iri("D1"), iri("D2")).unwrap()));
        assert_eq!(j.axioms.len(), 5);
    }

    #[test]
    fn disjointness_alone_is_coherent() {
        let o = onto("DisjointClasses(:A :B)");
        let t = classify(&o);
        assert!(unsatisfiable_classes(&o, &t).is_coherent());
        assert_eq!(
            justify_unsat(&iri("A"), &o, &t),
            Err(ReasonerError::NotUnsatisfiable(iri("A")))
        );
        assert_eq!(
            justify_unsat(&iri("Q"), &o, &t),
            Err(ReasonerError::UnknownClass(iri("Q")))
        );
    }

    #[test]
    fn self_disjoint_node() {
        let o = onto("EquivalentClasses(:A :B) DisjointClasses(:A :B) SubClassOf(:S :A)");
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        assert_eq!(names(&r.unsat), ["A", "B", "S"]);
        let j = justify_unsat(&iri("A"), &o, &t).unwrap();
        assert_eq!(j.disjoint, (iri("A"), iri("B")));
        assert_eq!(j.path1, vec![iri("A")]);
        assert_eq!(j.path2, vec![iri("A"), iri("B")]);
    }

    #[test]
    fn derived_unsat_justification_prepends_path() {
        let o = onto("SubClassOf(:U :D1) SubClassOf(:U :D2) DisjointClasses(:D1 :D2) SubClassOf(:X :U)");
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        assert_eq!(names(&r.unsat), ["U", "X"]);
        assert_eq!(r.roots, vec![iri("U")]);
        let j = justify_unsat(&iri("X"), &o, &t).unwrap();
        assert_eq!(j.path1, vec![iri("X"), iri("U"), iri("D1")]);
    }

    #[test]
    fn consistency_unsat_instance() {
        let o = onto(
            "SubClassOf(:U :D1) SubClassOf(:U :D2) DisjointClasses(:D1 :D2) ClassAssertion(:U :i)",
        );
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        let v = is_consistent(&o, &t, &r);
        assert!(!v.consistent);
        assert_eq!(
            v.reasons,
            vec![InconsistencyReason::UnsatisfiableInstance { class: iri("U"), individual: iri("i") }]
        );
    }

    #[test]
    fn consistency_same_and_different() {
        let o = onto("SameIndividual(:i :j) SameIndividual(:j :k) DifferentIndividuals(:i :k)");
        let t = classify(&o);
        let v = is_consistent(&o, &t, &unsatisfiable_classes(&o, &t));
        assert_eq!(
            v.reasons,
            vec![InconsistencyReason::SameAndDifferent { first: iri("i"), second: iri("k") }]
        );
    }

    #[test]
    fn consistency_disjoint_types_through_same_individual() {
        let o = onto(
            "SubClassOf(:A :D1) SubClassOf(:B :D2) DisjointClasses(:D1 :D2)\n\
             ClassAssertion(:A :i) ClassAssertion(:B :j) SameIndividual(:i :j)",
        );
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        assert!(r.is_coherent());
        let v = is_consistent(&o, &t, &r);
        assert_eq!(
            v.reasons,
            vec![InconsistencyReason::DisjointTypes { individual: iri("i"), first: iri("D1"), second: iri("D2") }]
        );
    }

    #[test]
    fn incoherent_without_individuals_is_consistent() {
        let o = onto("SubClassOf(:U :D1) SubClassOf(:U :D2) DisjointClasses(:D1 :D2)");
        let t = classify(&o);
        let r = unsatisfiable_classes(&o, &t);
        assert!(!r.is_coherent());
        assert!(is_consistent(&o, &t, &r).consistent);
    }

    #[test]
    fn deep_chain_does_not_overflow() {
        let body: String = (0..50_000).map(|k| format!("SubClassOf(:C{} :C{})\n", k + 1, k)).collect();
        let o = onto(&body);
        let t = classify(&o);
        assert_eq!(hierarchy_depth(&t), 50_001);
        assert!(t.subsumes(&iri("C0"), &iri("C50000")));
    }

    fn arb_ontology() -> impl Strategy<Value = Ontology> {
        let edge = (0u8..3, 0u8..12, 0u8..12);
        prop::collection::vec(edge, 0..30).prop_map(|raw| {
            let mut o = Ontology::new(Iri::new("http://t").unwrap());
            for k in 0..12 {
                o.add_axiom(Axiom::Declaration(EntityKind::Class, iri(&format!("K{k}"))));
            }
            for (kind, a, b) in raw {
                let (a, b) = (iri(&format!("K{a}")), iri(&format!("K{b}")));
                let axiom = match kind {
                    0 => Some(Axiom::SubClassOf { sub: a, sup: b }),
                    1 => Axiom::equivalent_classes(a, b).ok(),
                    _ => Axiom::disjoint_classes(a, b).ok(),
                };
                if let Some(ax) = axiom {
                    o.add_axiom(ax);
                }
            }
            o
        })
    }

    proptest! {
        #[test]
        fn matches_closure_oracle(o in arb_ontology()) {
            let t = classify(&o);
            let r = unsatisfiable_classes(&o, &t);
            prop_assert_eq!(&r.unsat, &oracle(&o));
            for c in &r.unsat {
                let j = justify_unsat(c, &o, &t).unwrap();
                prop_assert_eq!(j.path1.first(), Some(c));
                prop_assert_eq!(j.path2.first(), Some(c));
                for ax in &j.axioms {
                    prop_assert!(o.contains(ax));
                }
            }
        }

        #[test]
        fn unsat_closed_downward_and_under_equivalence(o in arb_ontology()) {
            let t = classify(&o);
            let r = unsatisfiable_classes(&o, &t);
            let classes: Vec<Iri> = o.entities().of_kind(EntityKind::Class).iter().cloned().collect();
            for u in &r.unsat {
                for c in &classes {
                    if t.subsumes(u, c) {
                        prop_assert!(r.contains(c));
                    }
                }
            }
        }

        #[test]
        fn adding_axioms_never_shrinks_unsat(o in arb_ontology(), extra in arb_ontology()) {
            let before = unsatisfiable_classes(&o, &classify(&o)).unsat;
            let mut bigger = o.clone();
            for ax in extra.axioms() {
                bigger.add_axiom(ax.clone());
            }
            let after = unsatisfiable_classes(&bigger, &classify(&bigger)).unsat;
            prop_assert!(before.is_subset(&after));
        }

        #[test]
        fn subsumes_agrees_with_dfs(o in arb_ontology()) {
            let t = classify(&o);
            let classes: Vec<Iri> = o.entities().of_kind(EntityKind::Class).iter().cloned().collect();
            let mut up: HashMap<&Iri, Vec<&Iri>> = HashMap::new();
            for ax in o.axioms() {
                match ax {
                    Axiom::SubClassOf { sub, sup } => up.entry(sub).or_default().push(sup),
                    Axiom::EquivalentClasses(ops) => {
                        up.entry(&ops[0]).or_default().push(&ops[1]);
                        up.entry(&ops[1]).or_default().push(&ops[0]);
                    }
                    _ => {}
                }
            }
            for a in &classes {
                let mut seen: HashSet<&Iri> = HashSet::from([a]);
                let mut todo = vec![a];
                while let Some(x) = todo.pop() {
                    for &y in up.get(x).map(Vec::as_slice).unwrap_or(&[]) {
                        if seen.insert(y) {
                            todo.push(y);
                        }
                    }
                }
                for b in &classes {
                    prop_assert_eq!(t.subsumes(b, a), seen.contains(b));
                }
            }
        }
    }
}
