//! Fixed example presentations and seeded random gentle families.

use crate::basis::{compute_basis, DEFAULT_MAX_LEN};
use crate::classify::{gentle_tilted_type_of, TiltedType};
use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relation};
use crate::quiver::{ArrowId, Quiver, VertexId};
use crate::relext::{auto_relext_gentle, ExtensionPair};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CorpusSpec {
    Kronecker,
    TriangleBypass,
    Cd { d: usize },
    TildeAExample,
    RandomGentleTree { vertices: usize, seed: u64 },
    RandomGentleCycle { vertices: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub pair: ExtensionPair,
}

pub fn kronecker() -> Presentation {
    Presentation::hereditary(Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap())
}

pub fn triangle_bypass() -> Presentation {
    Presentation::hereditary(
        Quiver::from_names(&["1", "2", "3"], &[("f", "1", "3"), ("g", "1", "2"), ("h", "2", "3")]).unwrap(),
    )
}

/// Zigzag of `d` zero relations `alpha_i.beta_i`: consecutive relations
/// share their source for odd `i` and their target for even `i`.
pub fn cd(d: usize) -> Result<Presentation> {
    if d == 0 {
        return Err(Error::InvalidPresentation("C_d needs d >= 1".into()));
    }
    let mut q = Quiver::new();
    let mut prev_source = String::new();
    let mut prev_target = String::new();
    for i in 1..=d {
        let source = if i % 2 == 0 {
            prev_source.clone()
        } else {
            format!("s{i}")
        };
        let target = if i % 2 == 1 && i > 1 {
            prev_target.clone()
        } else {
            format!("t{i}")
        };
        let middle = format!("m{i}");
        for v in [&source, &middle, &target] {
            if q.vertex_id(v).is_err() {
                q.add_vertex(v)?;
            }
        }
        q.add_arrow(&format!("alpha{i}"), &source, &middle)?;
        q.add_arrow(&format!("beta{i}"), &middle, &target)?;
        (prev_source, prev_target) = (source, target);
    }
    let mut p = Presentation::hereditary(q);
    for i in 1..=d {
        p = p.with_zero(&[&format!("alpha{i}"), &format!("beta{i}")])?;
    }
    Ok(p)
}

/// Six vertices on an unoriented hexagon with two zero relations.
pub fn tilde_a_example() -> Presentation {
    let q = Quiver::from_names(
        &["1", "2", "3", "4", "5", "6"],
        &[
            ("alpha", "4", "3"),
            ("beta", "3", "2"),
            ("gamma", "2", "1"),
            ("alpha'", "4", "5"),
            ("beta'", "5", "6"),
            ("gamma'", "6", "1"),
        ],
    )
    .unwrap();
    Presentation::hereditary(q)
        .with_zero(&["alpha", "beta"])
        .unwrap()
        .with_zero(&["alpha'", "beta'"])
        .unwrap()
}

/// Zero relations at a vertex: a set of (in, out) pairs such that every
/// arrow has at most one zero and at most one nonzero continuation there.
fn gentle_patterns(ins: &[ArrowId], outs: &[ArrowId]) -> Vec<Vec<(ArrowId, ArrowId)>> {
    let pairs: Vec<(ArrowId, ArrowId)> = ins.iter().flat_map(|&a| outs.iter().map(move |&b| (a, b))).collect();
    (0u32..1 << pairs.len())
        .map(|mask| {
            pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, p)| *p)
                .collect::<Vec<_>>()
        })
        .filter(|zero| {
            let ok = |count: &dyn Fn(bool) -> usize| count(true) <= 1 && count(false) <= 1;
            ins.iter()
                .all(|&a| ok(&|z| outs.iter().filter(|&&b| zero.contains(&(a, b)) == z).count()))
                && outs
                    .iter()
                    .all(|&b| ok(&|z| ins.iter().filter(|&&a| zero.contains(&(a, b)) == z).count()))
        })
        .collect()
}

fn with_random_relations(q: Quiver, rng: &mut ChaCha8Rng) -> Presentation {
    let mut relations = Vec::new();
    for v in q.vertices() {
        let ins: Vec<ArrowId> = q.arrows_into(v).collect();
        let outs: Vec<ArrowId> = q.arrows_from(v).collect();
        let patterns = gentle_patterns(&ins, &outs);
        if let Some(zero) = patterns.choose(rng) {
            for &(a, b) in zero {
                relations.push(Relation::monomial(q.path(q.source(a), &[a, b]).unwrap()));
            }
        }
    }
    Presentation::new(q, relations)
}

fn degree_ok(q: &Quiver, v: VertexId) -> bool {
    q.arrows_from(v).count() <= 2 && q.arrows_into(v).count() <= 2
}

fn add_oriented(q: &mut Quiver, name: &str, x: VertexId, y: VertexId, rng: &mut ChaCha8Rng) -> bool {
    let (s, t) = if rng.gen_bool(0.5) { (x, y) } else { (y, x) };
    q.add_arrow_ids(name, s, t).unwrap();
    degree_ok(q, s) && degree_ok(q, t)
}

fn random_tree_quiver(vertices: usize, rng: &mut ChaCha8Rng) -> Option<Quiver> {
    let mut q = Quiver::new();
    for i in 0..vertices {
        q.add_vertex(&format!("v{i}")).unwrap();
    }
    for i in 1..vertices {
        let parent = rng.gen_range(0..i);
        if !add_oriented(&mut q, &format!("a{i}"), VertexId(parent), VertexId(i), rng) {
            return None;
        }
    }
    Some(q)
}

/// A non-oriented cycle through the first `cycle` vertices with trees
/// hanging off it.
fn random_cycle_quiver(vertices: usize, rng: &mut ChaCha8Rng) -> Option<Quiver> {
    let cycle = rng.gen_range(2..=vertices);
    let mut q = Quiver::new();
    for i in 0..vertices {
        q.add_vertex(&format!("v{i}")).unwrap();
    }
    for i in 0..cycle {
        let next = (i + 1) % cycle;
        if !add_oriented(&mut q, &format!("c{i}"), VertexId(i), VertexId(next), rng) {
            return None;
        }
    }
    for i in cycle..vertices {
        let parent = rng.gen_range(0..i);
        if !add_oriented(&mut q, &format!("a{i}"), VertexId(parent), VertexId(i), rng) {
            return None;
        }
    }
    Some(q)
}

fn random_pair(
    vertices: usize,
    seed: u64,
    wanted: TiltedType,
    shape: fn(usize, &mut ChaCha8Rng) -> Option<Quiver>,
) -> Result<ExtensionPair> {
    if vertices < 2 {
        return Err(Error::InvalidPresentation(
            "random corpora need at least 2 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let Some(q) = shape(vertices, &mut rng) else { continue };
        let p = with_random_relations(q, &mut rng);
        let Ok(b) = compute_basis(&p, DEFAULT_MAX_LEN) else {
            continue;
        };
        if gentle_tilted_type_of(&b) == wanted {
            return auto_relext_gentle(&p);
        }
    }
}

/// Seeded gentle presentation on a tree, certified of type A, with its
/// relation-extension.
pub fn random_gentle_tree(vertices: usize, seed: u64) -> Result<ExtensionPair> {
    random_pair(vertices, seed, TiltedType::TypeA, random_tree_quiver)
}

/// Seeded gentle presentation with one unoriented cycle, certified of
/// type Ã, with its relation-extension.
pub fn random_gentle_cycle(vertices: usize, seed: u64) -> Result<ExtensionPair> {
    random_pair(vertices, seed, TiltedType::TypeATilde, random_cycle_quiver)
}

pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    let entry = |name: String, pair: ExtensionPair| CorpusEntry { name, pair };
    Ok(vec![match *spec {
        CorpusSpec::Kronecker => entry("kronecker".into(), ExtensionPair::identity(kronecker())),
        CorpusSpec::TriangleBypass => entry("triangle_bypass".into(), ExtensionPair::identity(triangle_bypass())),
        CorpusSpec::Cd { d } => entry(format!("cd_{d}"), auto_relext_gentle(&cd(d)?)?),
        CorpusSpec::TildeAExample => entry("tildeA_example".into(), auto_relext_gentle(&tilde_a_example())?),
        CorpusSpec::RandomGentleTree { vertices, seed } => entry(
            format!("random_gentle_tree_{vertices}_{seed}"),
            random_gentle_tree(vertices, seed)?,
        ),
        CorpusSpec::RandomGentleCycle { vertices, seed } => entry(
            format!("random_gentle_cycle_{vertices}_{seed}"),
            random_gentle_cycle(vertices, seed)?,
        ),
    }])
}
