//! Seeded synthetic ontologies and alignments for tests and benchmarks.
//!
//! Classes are named `<base>#C<i>`; every generator is deterministic for a
//! given RNG state.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alignment::{Alignment, Relation};
use crate::integrator::PairAlignment;
use crate::model::{Axiom, Characteristic, EntityKind, Iri, Ontology};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entity(base: &str, prefix: &str, i: usize) -> Iri {
    Iri::new(format!("{base}#{prefix}{i}")).expect("synthetic IRI")
}

pub fn class_iri(base: &str, i: usize) -> Iri {
    entity(base, "C", i)
}

/// Random `SubClassOf`, `EquivalentClasses` and `DisjointClasses` axioms
/// over `classes` declared classes. Cycles and incoherence are likely.
pub fn random_ontology<R: Rng>(rng: &mut R, base: &str, classes: usize, axioms: usize) -> Ontology {
    let mut o = Ontology::new(Iri::new(base).expect("synthetic IRI"));
    for i in 0..classes {
        o.add_axiom(Axiom::Declaration(EntityKind::Class, class_iri(base, i)));
    }
    if classes < 2 {
        return o;
    }
    for _ in 0..axioms {
        let a = rng.gen_range(0..classes);
        let mut b = rng.gen_range(0..classes - 1);
        if b >= a {
            b += 1;
        }
        let (a, b) = (class_iri(base, a), class_iri(base, b));
        let axiom = match rng.gen_range(0..10) {
            0..=6 => Axiom::SubClassOf { sub: a, sup: b },
            7 => Axiom::equivalent_classes(a, b).expect("distinct"),
            _ => Axiom::disjoint_classes(a, b).expect("distinct"),
        };
        o.add_axiom(axiom);
    }
    o
}

/// A coherent ontology: a random tree over `classes` classes rooted at
/// `C0`, with `disjoint_pairs` disjointness axioms between siblings.
pub fn coherent_ontology<R: Rng>(rng: &mut R, base: &str, classes: usize, disjoint_pairs: usize) -> Ontology {
    let tree = random_tree(rng, classes);
    let mut o = Ontology::new(Iri::new(base).expect("synthetic IRI"));
    if classes > 0 {
        o.add_axiom(Axiom::Declaration(EntityKind::Class, class_iri(base, 0)));
    }
    for (i, &p) in tree.parent.iter().enumerate().skip(1) {
        o.add_axiom(Axiom::SubClassOf { sub: class_iri(base, i), sup: class_iri(base, p) });
    }
    for (a, b) in tree.sibling_pairs(rng, disjoint_pairs) {
        o.add_axiom(Axiom::disjoint_classes(class_iri(base, a), class_iri(base, b)).expect("distinct"));
    }
    o
}

struct Tree {
    parent: Vec<usize>,
    children: Vec<Vec<usize>>,
}

fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Tree {
    let mut parent = vec![0; n];
    let mut children = vec![Vec::new(); n];
    for i in 1..n {
        // bias toward recent nodes for some depth
        let lo = i.saturating_sub(1 + i / 2);
        let p = rng.gen_range(lo..i);
        parent[i] = p;
        children[p].push(i);
    }
    Tree { parent, children }
}

impl Tree {
    /// Up to `want` distinct sibling pairs (fewer if the tree has too few).
    fn sibling_pairs<R: Rng>(&self, rng: &mut R, want: usize) -> Vec<(usize, usize)> {
        let families: Vec<&Vec<usize>> = self.children.iter().filter(|c| c.len() >= 2).collect();
        let capacity: usize = families.iter().map(|c| c.len() * (c.len() - 1) / 2).sum();
        let want = want.min(capacity);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(want);
        while out.len() < want {
            let family = families[rng.gen_range(0..families.len())];
            let picked: Vec<&usize> = family.choose_multiple(rng, 2).collect();
            let (a, b) = (*picked[0].min(picked[1]), *picked[0].max(picked[1]));
            if seen.insert((a, b)) {
                out.push((a, b));
            }
        }
        out
    }
}

/// Alignment between the classes of two synthetic ontologies: `matches`
/// distinct cells `C<i> = C<i>` (for indices both share) with high
/// measures plus `noise` further distinct random equivalences with lower
/// measures.
pub fn noisy_alignment<R: Rng>(
    rng: &mut R,
    base1: &str,
    classes1: usize,
    base2: &str,
    classes2: usize,
    matches: usize,
    noise: usize,
) -> Alignment {
    let shared = classes1.min(classes2);
    let mut picks: Vec<usize> = (0..shared).collect();
    picks.shuffle(rng);
    let mut seen = std::collections::HashSet::new();
    let mut cells = Vec::with_capacity(matches + noise);
    for &i in picks.iter().take(matches) {
        seen.insert((i, i));
        cells.push((class_iri(base1, i), class_iri(base2, i), Relation::Equivalent, rng.gen_range(0.7..=1.0)));
    }
    let target = cells.len() + noise.min(classes1 * classes2 - seen.len());
    while cells.len() < target {
        let (a, b) = (rng.gen_range(0..classes1), rng.gen_range(0..classes2));
        if seen.insert((a, b)) {
            cells.push((class_iri(base1, a), class_iri(base2, b), Relation::Equivalent, rng.gen_range(0.1..0.7)));
        }
    }
    Alignment::from_cells(Iri::new(base1).expect("base"), Iri::new(base2).expect("base"), cells)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScaleSpec {
    pub classes: [usize; 3],
    pub logical_axioms: usize,
    pub cells: usize,
}

impl ScaleSpec {
    /// 250 000 classes, 370 000 logical axioms and 25 000 cells overall.
    pub const LARGE: ScaleSpec =
        ScaleSpec { classes: [100_000, 85_000, 65_000], logical_axioms: 370_000, cells: 25_000 };

    pub fn scaled(self, factor: f64) -> ScaleSpec {
        let s = |n: usize| ((n as f64 * factor).round() as usize).max(2);
        ScaleSpec {
            classes: self.classes.map(s),
            logical_axioms: s(self.logical_axioms),
            cells: s(self.cells),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ScaleSuite {
    pub ontologies: Vec<Ontology>,
    /// One alignment per pair (1,2), (1,3), (2,3).
    pub alignments: Vec<PairAlignment>,
}

pub const SCALE_BASES: [&str; 3] =
    ["http://synth.example/anatomy", "http://synth.example/fma", "http://synth.example/nci"];

/// Three tree-shaped ontologies whose logical axioms sum to
/// `spec.logical_axioms`: subclass edges first, then a mix of sibling
/// disjointness, object property axioms and class assertions. The cells
/// are split evenly over the three pairs; half of each pair's cells match
/// equal indices.
pub fn scale_suite(seed: u64, spec: ScaleSpec) -> ScaleSuite {
    let mut r = rng(seed);
    let total_classes: usize = spec.classes.iter().sum();
    let mut ontologies = Vec::with_capacity(3);
    let mut remaining = spec.logical_axioms;
    for (k, &n) in spec.classes.iter().enumerate() {
        let base = SCALE_BASES[k];
        let target = if k == 2 { remaining } else { spec.logical_axioms * n / total_classes };
        remaining -= target.min(remaining);
        ontologies.push(scale_ontology(&mut r, base, n, target));
    }
    let pairs = [(1, 2), (1, 3), (2, 3)];
    let alignments = pairs
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| {
            let cells = spec.cells / 3 + usize::from(p < spec.cells % 3);
            let (ni, nj) = (spec.classes[i - 1], spec.classes[j - 1]);
            let a = noisy_alignment(&mut r, SCALE_BASES[i - 1], ni, SCALE_BASES[j - 1], nj, cells / 2, cells - cells / 2);
            PairAlignment::new((i, j), a)
        })
        .collect();
    ScaleSuite { ontologies, alignments }
}

fn scale_ontology<R: Rng>(rng: &mut R, base: &str, classes: usize, logical: usize) -> Ontology {
    let tree = random_tree(rng, classes);
    let mut o = Ontology::new(Iri::new(base).expect("synthetic IRI"));
    o.add_axiom(Axiom::Declaration(EntityKind::Class, class_iri(base, 0)));
    let mut count = 0;
    for (i, &p) in tree.parent.iter().enumerate().skip(1) {
        if count >= logical {
            break;
        }
        count += usize::from(o.add_axiom(Axiom::SubClassOf { sub: class_iri(base, i), sup: class_iri(base, p) }));
    }
    let disjoint = tree.sibling_pairs(rng, logical.saturating_sub(count) / 2);
    for (a, b) in disjoint {
        count += usize::from(o.add_axiom(Axiom::disjoint_classes(class_iri(base, a), class_iri(base, b)).expect("distinct")));
    }
    let properties = (classes / 100).max(2);
    let mut i = 0usize;
    while count < logical {
        let p = entity(base, "p", i % properties);
        let axiom = match i % 4 {
            0 => Axiom::ClassAssertion { class: class_iri(base, rng.gen_range(0..classes)), individual: entity(base, "i", i) },
            1 => Axiom::ObjectPropertyDomain { property: p, class: class_iri(base, rng.gen_range(0..classes)) },
            2 => Axiom::ObjectPropertyRange { property: p, class: class_iri(base, rng.gen_range(0..classes)) },
            _ => match rng.gen_range(0..3) {
                0 => Axiom::PropertyCharacteristic { property: p, characteristic: Characteristic::Transitive },
                _ => Axiom::SubObjectPropertyOf { sub: p, sup: entity(base, "p", rng.gen_range(0..properties)) },
            },
        };
        count += usize::from(o.add_axiom(axiom));
        i += 1;
    }
    o
}
