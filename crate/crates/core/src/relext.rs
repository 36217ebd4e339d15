//! Relation-extensions: the quiver of `C~` obtained by adding one new arrow
//! `t(rho) -> s(rho)` for every relation `rho` of a system of relations of
//! `C`, the full extension for gentle tilted algebras, and consistency checks
//! for user-supplied extension pairs.

use crate::basis::{compute_basis, AlgebraBasis, DEFAULT_MAX_LEN};
use crate::classify::{gentle_tilted_type_of, is_gentle, TiltedType};
use crate::error::{Error, Result};
use crate::presentation::{validate, Presentation, Relation};
use crate::quiver::{search_walk_runs, ArrowId, Direction, Path, Quiver, Step, Walk};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// A generating set of the ideal, indexed by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemOfRelations {
    pub relations: Vec<Relation>,
}

impl SystemOfRelations {
    pub fn new(relations: Vec<Relation>) -> Self {
        Self { relations }
    }

    pub fn of(p: &Presentation) -> Self {
        Self::new(p.relations.clone())
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

/// A tilted presentation `C` together with its relation-extension `B`.
///
/// The relation list of `C` is the system of relations; `correspondence`
/// maps every new arrow of `B` to the index of the relation it comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPair {
    pub c: Presentation,
    pub b: Presentation,
    pub new_arrows: BTreeSet<ArrowId>,
    pub correspondence: BTreeMap<ArrowId, usize>,
}

impl ExtensionPair {
    /// The trivial pair `B = C` of a hereditary or otherwise unextended
    /// algebra.
    pub fn identity(c: Presentation) -> Self {
        Self {
            b: c.clone(),
            c,
            new_arrows: BTreeSet::new(),
            correspondence: BTreeMap::new(),
        }
    }

    pub fn is_new(&self, a: ArrowId) -> bool {
        self.new_arrows.contains(&a)
    }

    /// The `C` arrow with the same name as an old arrow of `B`.
    pub fn old_arrow_in_c(&self, a: ArrowId) -> Option<ArrowId> {
        if self.is_new(a) {
            return None;
        }
        self.c.quiver.arrow_id(self.b.quiver.arrow_name(a)).ok()
    }

    /// The relation of `C` that a new arrow corresponds to.
    pub fn defining_relation(&self, a: ArrowId) -> Option<&Relation> {
        self.correspondence.get(&a).and_then(|&i| self.c.relations.get(i))
    }

    /// Translates a path of `C` into `B` by arrow names.
    pub fn lift_path(&self, p: &Path) -> Result<Path> {
        let bq = &self.b.quiver;
        let source = bq.vertex_id(self.c.quiver.vertex_name(p.source))?;
        let arrows = p
            .arrows
            .iter()
            .map(|&a| bq.arrow_id(self.c.quiver.arrow_name(a)))
            .collect::<Result<Vec<_>>>()?;
        bq.path(source, &arrows)
    }

    /// Translates a path of `B` made of old arrows into `C`.
    pub fn restrict_path(&self, p: &Path) -> Option<Path> {
        let cq = &self.c.quiver;
        let source = cq.vertex_id(self.b.quiver.vertex_name(p.source)).ok()?;
        let arrows = p
            .arrows
            .iter()
            .map(|&a| self.old_arrow_in_c(a))
            .collect::<Option<Vec<_>>>()?;
        cq.path(source, &arrows).ok()
    }

    pub fn new_arrow_names(&self) -> Vec<String> {
        self.new_arrows
            .iter()
            .map(|&a| self.b.quiver.arrow_name(a).to_string())
            .collect()
    }
}

/// Quiver of the relation-extension with its tagging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelExtQuiver {
    pub quiver: Quiver,
    pub new_arrows: Vec<ArrowId>,
    /// new arrow -> relation index
    pub correspondence: BTreeMap<ArrowId, usize>,
}

fn fresh_name(q: &Quiver, index: usize) -> String {
    let mut name = format!("nw_{index}");
    while q.arrow_id(&name).is_ok() {
        name.push('_');
    }
    name
}

/// Same vertices, all arrows of `c`, and one new arrow `t(rho) -> s(rho)`
/// named `nw_<i>` for the `i`-th relation of `r`.
pub fn relext_quiver(c: &Presentation, r: &SystemOfRelations) -> Result<RelExtQuiver> {
    c.check()?;
    let candidate = Presentation::new(c.quiver.clone(), r.relations.clone());
    if let Some(d) = validate(&candidate).into_iter().next() {
        return Err(Error::InvalidSystem(d.to_string()));
    }
    let report = verify_system(c, r, false)?;
    if !report.generates {
        return Err(Error::InvalidSystem("does not generate the ideal".into()));
    }
    let mut quiver = c.quiver.clone();
    let mut new_arrows = Vec::new();
    let mut correspondence = BTreeMap::new();
    for (i, rel) in r.relations.iter().enumerate() {
        let name = fresh_name(&quiver, i);
        let a = quiver.add_arrow_ids(&name, rel.target(), rel.source())?;
        new_arrows.push(a);
        correspondence.insert(a, i);
    }
    Ok(RelExtQuiver {
        quiver,
        new_arrows,
        correspondence,
    })
}

/// Full relation-extension of a gentle tilted algebra of type A or Ã: every
/// zero relation `a.b` with new arrow `n` closes the 3-cycle bound by
/// `a.b`, `b.n` and `n.a`.
pub fn auto_relext_gentle(c: &Presentation) -> Result<ExtensionPair> {
    let cb = compute_basis(c, DEFAULT_MAX_LEN)?;
    if !matches!(gentle_tilted_type_of(&cb), TiltedType::TypeA | TiltedType::TypeATilde) {
        return Err(Error::NotGentleTilted);
    }
    let ext = relext_quiver(c, &SystemOfRelations::of(c))?;
    let mut relations = c.relations.clone();
    for (&n, &i) in &ext.correspondence {
        let rel = &c.relations[i].terms[0].1;
        let (a, b) = (rel.arrows[0], rel.arrows[1]);
        let q = &ext.quiver;
        relations.push(Relation::monomial(q.path(q.source(b), &[b, n])?));
        relations.push(Relation::monomial(q.path(q.source(n), &[n, a])?));
    }
    let b = Presentation::new(ext.quiver, relations);
    let bb = compute_basis(&b, DEFAULT_MAX_LEN)?;
    if !is_gentle(&bb) {
        return Err(Error::InvalidPair("constructed extension is not gentle".into()));
    }
    Ok(ExtensionPair {
        c: c.clone(),
        b,
        new_arrows: ext.new_arrows.into_iter().collect(),
        correspondence: ext.correspondence,
    })
}

/// Checks the structural invariants of a pair and searches `B` for a walk
/// `new . w . new` where `w` uses old arrows only and every maximal directed
/// run of `w` is nonzero in `C`.
pub fn validate_pair(pair: &ExtensionPair) -> Vec<String> {
    validate_pair_with(pair, DEFAULT_MAX_LEN)
}

pub fn validate_pair_with(pair: &ExtensionPair, max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for d in validate(&pair.c) {
        out.push(format!("C {d}"));
    }
    for d in validate(&pair.b) {
        out.push(format!("B {d}"));
    }
    let cq = &pair.c.quiver;
    let bq = &pair.b.quiver;

    let c_vertices: BTreeSet<&str> = cq.vertices().map(|v| cq.vertex_name(v)).collect();
    let b_vertices: BTreeSet<&str> = bq.vertices().map(|v| bq.vertex_name(v)).collect();
    if c_vertices != b_vertices {
        out.push("vertex sets of B and C differ".into());
    }

    let c_arrows: BTreeMap<&str, (&str, &str)> = cq
        .arrows()
        .map(|a| {
            (
                cq.arrow_name(a),
                (cq.vertex_name(cq.source(a)), cq.vertex_name(cq.target(a))),
            )
        })
        .collect();
    let b_old: BTreeMap<&str, (&str, &str)> = bq
        .arrows()
        .filter(|a| !pair.is_new(*a))
        .map(|a| {
            (
                bq.arrow_name(a),
                (bq.vertex_name(bq.source(a)), bq.vertex_name(bq.target(a))),
            )
        })
        .collect();
    if c_arrows != b_old {
        out.push("old arrows of B differ from the arrows of C".into());
    }

    let keys: BTreeSet<ArrowId> = pair.correspondence.keys().copied().collect();
    if keys != pair.new_arrows {
        out.push("correspondence keys differ from the new arrows".into());
    }
    let mut used = vec![0usize; pair.c.relations.len()];
    for (&a, &i) in &pair.correspondence {
        let name = bq.arrow_name(a);
        let Some(rel) = pair.c.relations.get(i) else {
            out.push(format!("new arrow {name} corresponds to missing relation {i}"));
            continue;
        };
        used[i] += 1;
        let (Some(rs), Some(rt)) = (
            rel.terms.first().map(|t| t.1.source),
            rel.terms.first().map(|t| t.1.target),
        ) else {
            continue;
        };
        if rs.0 >= cq.vertex_count() || rt.0 >= cq.vertex_count() {
            continue;
        }
        let ok =
            bq.vertex_name(bq.target(a)) == cq.vertex_name(rs) && bq.vertex_name(bq.source(a)) == cq.vertex_name(rt);
        if !ok {
            out.push(format!("new arrow {name} does not reverse relation {i}"));
        }
    }
    for (i, &n) in used.iter().enumerate() {
        if n != 1 {
            out.push(format!("relation {i} has {n} new arrows, expected 1"));
        }
    }

    if out.is_empty() || out.iter().all(|d| !d.starts_with('C')) {
        match compute_basis(&pair.c, max_len) {
            Ok(cb) => {
                if let Some((a, w, b)) = find_new_old_new_walk(pair, &cb) {
                    out.push(format!(
                        "walk {} {} {} joins two new arrows through a nonzero old walk",
                        bq.arrow_name(a),
                        w.display(bq),
                        bq.arrow_name(b)
                    ));
                }
            }
            Err(e) => out.push(format!("C: {e}")),
        }
    }
    out
}

/// First walk `a . w . b` with `a`, `b` new and `w` old, where every
/// directed run of `w` is nonzero in `C` and the runs meeting `a` and `b`
/// stay nonzero in `B`.
pub fn find_new_old_new_walk(pair: &ExtensionPair, c_basis: &AlgebraBasis) -> Option<(ArrowId, Walk, ArrowId)> {
    let b_basis = compute_basis(&pair.b, c_basis.max_len()).ok();
    let nonzero_in_b = |p: &Path| b_basis.as_ref().is_none_or(|bb| !bb.is_zero_path(p));
    let bq = &pair.b.quiver;
    let max_len = 2 * bq.arrow_count();
    let old_in_c: HashMap<ArrowId, ArrowId> = bq
        .arrows()
        .filter_map(|a| pair.old_arrow_in_c(a).map(|c| (a, c)))
        .collect();
    for &a in &pair.new_arrows {
        let mut hit = None;
        let walk = search_walk_runs(
            bq,
            bq.target(a),
            Some(Step::forward(a)),
            true,
            max_len,
            |x| old_in_c.contains_key(&x),
            |run| match pair.restrict_path(run) {
                Some(p) => !c_basis.is_zero_path(&p),
                None => nonzero_in_b(run),
            },
            |v, run| {
                hit = pair.new_arrows.iter().copied().find(|&n| {
                    bq.source(n) == v
                        && match run {
                            Some((Direction::Forward, p)) => bq.extend(p, n).is_some_and(|p| nonzero_in_b(&p)),
                            _ => true,
                        }
                });
                hit.is_some()
            },
        );
        if let (Some(w), Some(b)) = (walk, hit) {
            return Some((a, w, b));
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemReport {
    pub generates: bool,
    pub minimal: Option<bool>,
}

/// Compares the ideal generated by `r` with the ideal of `c`, and optionally
/// checks that no relation of `r` is redundant.
pub fn verify_system(c: &Presentation, r: &SystemOfRelations, check_minimal: bool) -> Result<SystemReport> {
    verify_system_with(c, r, check_minimal, DEFAULT_MAX_LEN)
}

pub fn verify_system_with(
    c: &Presentation,
    r: &SystemOfRelations,
    check_minimal: bool,
    max_len: usize,
) -> Result<SystemReport> {
    let cb = compute_basis(c, max_len)?;
    let with = |rels: Vec<Relation>| compute_basis(&Presentation::new(c.quiver.clone(), rels), max_len);

    let inside = r
        .relations
        .iter()
        .all(|rel| cb.reduce_combination(&rel.terms).is_zero());
    let covers = match with(r.relations.clone()) {
        Ok(rb) => c
            .relations
            .iter()
            .all(|rel| rb.reduce_combination(&rel.terms).is_zero()),
        Err(_) => false,
    };
    let minimal = check_minimal.then(|| {
        (0..r.len()).all(|i| {
            let mut rest = r.relations.clone();
            let dropped = rest.remove(i);
            match with(rest) {
                Ok(rb) => !rb.reduce_combination(&dropped.terms).is_zero(),
                Err(_) => true,
            }
        })
    });
    Ok(SystemReport {
        generates: inside && covers,
        minimal,
    })
}
