//! Independent reference implementations used as test oracles.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use ontobridge::{Axiom, Iri, Ontology};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn fixture_names(ext: &str) -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(ext))
        .collect();
    names.sort();
    names
}

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

const OWL_THING: &str = "http://www.w3.org/2002/07/owl#Thing";
const OWL_NOTHING: &str = "http://www.w3.org/2002/07/owl#Nothing";

/// Reflexive-transitive subsumption over named classes by Warshall on a
/// boolean matrix, and the unsatisfiable classes found by scanning every
/// disjoint pair against every class.
pub struct ClosureOracle {
    pub classes: Vec<Iri>,
    index: BTreeMap<Iri, usize>,
    reach: Vec<Vec<bool>>,
    disjoint: Vec<(usize, usize)>,
}

impl ClosureOracle {
    pub fn new(o: &Ontology) -> Self {
        let builtin = |i: &Iri| i.as_str() == OWL_THING || i.as_str() == OWL_NOTHING;
        let mut classes = BTreeSet::new();
        let mut edges = Vec::new();
        let mut disjoint_sets = Vec::new();
        for ax in o.axioms() {
            match ax {
                Axiom::Declaration(ontobridge::EntityKind::Class, c) if !builtin(c) => {
                    classes.insert(c.clone());
                }
                Axiom::SubClassOf { sub, sup } => {
                    for c in [sub, sup] {
                        if !builtin(c) {
                            classes.insert(c.clone());
                        }
                    }
                    if !builtin(sub) && !builtin(sup) {
                        edges.push((sub.clone(), sup.clone()));
                    }
                }
                Axiom::EquivalentClasses(ops) => {
                    let named: Vec<&Iri> = ops.iter().filter(|c| !builtin(c)).collect();
                    classes.extend(named.iter().map(|c| (*c).clone()));
                    for a in &named {
                        for b in &named {
                            edges.push(((*a).clone(), (*b).clone()));
                        }
                    }
                }
                Axiom::DisjointClasses(ops) => {
                    let named: Vec<Iri> = ops.iter().filter(|c| !builtin(c)).cloned().collect();
                    classes.extend(named.iter().cloned());
                    disjoint_sets.push(named);
                }
                _ => {}
            }
        }
        let classes: Vec<Iri> = classes.into_iter().collect();
        let index: BTreeMap<Iri, usize> = classes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let n = classes.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in &edges {
            reach[index[a]][index[b]] = true;
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
        let mut disjoint = Vec::new();
        for set in disjoint_sets {
            for (x, a) in set.iter().enumerate() {
                for b in &set[x + 1..] {
                    disjoint.push((index[a], index[b]));
                }
            }
        }
        ClosureOracle { classes, index, reach, disjoint }
    }

    /// Does `sup` subsume `sub`?
    pub fn subsumes(&self, sup: &Iri, sub: &Iri) -> bool {
        match (self.index.get(sub), self.index.get(sup)) {
            (Some(&a), Some(&b)) => self.reach[a][b],
            _ => sup == sub,
        }
    }

    pub fn unsat(&self) -> BTreeSet<Iri> {
        let mut out = BTreeSet::new();
        for (c, row) in self.reach.iter().enumerate() {
            if self.disjoint.iter().any(|&(a, b)| row[a] && row[b]) {
                out.insert(self.classes[c].clone());
            }
        }
        out
    }

    /// Longest chain of strictly increasing equivalence classes, counted in
    /// levels.
    pub fn depth(&self) -> usize {
        let n = self.classes.len();
        let mut memo: Vec<Option<usize>> = vec![None; n];
        fn go(c: usize, o: &ClosureOracle, memo: &mut Vec<Option<usize>>) -> usize {
            if let Some(d) = memo[c] {
                return d;
            }
            let n = o.classes.len();
            let mut best = 1;
            for s in 0..n {
                if o.reach[c][s] && !o.reach[s][c] {
                    best = best.max(1 + go(s, o, memo));
                }
            }
            memo[c] = Some(best);
            best
        }
        (0..n).map(|c| go(c, self, &mut memo)).max().unwrap_or(0)
    }
}

/// Output IRI written out by hand: base, slash, zero-padded index, hash,
/// local name.
pub fn expected_refactored(base: &str, index: usize, original: &str) -> String {
    let local = original.rsplit_once('#').map(|(_, l)| l).unwrap_or_else(|| original.rsplit_once('/').unwrap().1);
    format!("{base}/{index:03}#{local}")
}
