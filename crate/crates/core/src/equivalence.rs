//! Equivalence of new arrows through binomial relations of the extension,
//! the class count `n`, and the dimension checks built on it.

use crate::basis::{compute_basis, AlgebraBasis};
use crate::classify::is_schurian;
use crate::error::{Error, Result};
use crate::hochschild::{der0_basis, hh1_oracle, hh1_schurian, int0_dim};
use crate::monomial::hh1_monomial;
use crate::quiver::{ArrowId, Path};
use crate::relext::{validate_pair_with, ExtensionPair};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BinomialClassification {
    /// B-relation indices whose relation already lies in the ideal of C.
    pub inherited_relations: Vec<usize>,
    /// (B-relation index, new arrow of the first term, new arrow of the second).
    pub merging_pairs: Vec<(usize, ArrowId, ArrowId)>,
}

fn new_arrows_in(pair: &ExtensionPair, p: &Path) -> Vec<ArrowId> {
    p.arrows.iter().copied().filter(|&a| pair.is_new(a)).collect()
}

/// Sorts the binomial relations of B into those inherited from C and those
/// identifying two new arrows.
pub fn classify_binomials(
    pair: &ExtensionPair,
    _b_basis: &AlgebraBasis,
    c_basis: &AlgebraBasis,
) -> Result<BinomialClassification> {
    let mut out = BinomialClassification::default();
    for (index, rel) in pair.b.relations.iter().enumerate() {
        if !rel.is_binomial() {
            continue;
        }
        let first = new_arrows_in(pair, &rel.terms[0].1);
        let second = new_arrows_in(pair, &rel.terms[1].1);
        match (first.as_slice(), second.as_slice()) {
            ([], []) => {
                let restricted: Option<Vec<_>> = rel
                    .terms
                    .iter()
                    .map(|(c, p)| pair.restrict_path(p).map(|p| (c.clone(), p)))
                    .collect();
                let inside = restricted.is_some_and(|terms| c_basis.reduce_combination(&terms).is_zero());
                if !inside {
                    return Err(Error::BinomialShape {
                        index,
                        reason: "old binomial outside the ideal of C".into(),
                    });
                }
                out.inherited_relations.push(index);
            }
            ([a], [b]) => out.merging_pairs.push((index, *a, *b)),
            _ => {
                return Err(Error::BinomialShape {
                    index,
                    reason: format!("terms carry {} and {} new arrows", first.len(), second.len()),
                })
            }
        }
    }
    Ok(out)
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClasses {
    /// Sorted by representative name; each class lists its representative first.
    pub classes: Vec<Vec<ArrowId>>,
    pub n: usize,
    pub n_prime: usize,
    pub unions: usize,
    pub sim_already_transitive: bool,
}

impl EquivalenceClasses {
    pub fn representatives(&self) -> Vec<ArrowId> {
        self.classes.iter().map(|c| c[0]).collect()
    }
}

pub fn equivalence_classes(pair: &ExtensionPair, cls: &BinomialClassification) -> EquivalenceClasses {
    let arrows: Vec<ArrowId> = pair.new_arrows.iter().copied().collect();
    let slot: BTreeMap<ArrowId, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut uf = UnionFind::new(arrows.len());
    let mut unions = 0;
    for &(_, a, b) in &cls.merging_pairs {
        if uf.union(slot[&a], slot[&b]) {
            unions += 1;
        }
    }

    let name = |a: &ArrowId| pair.b.quiver.arrow_name(*a).to_string();
    let mut grouped: BTreeMap<usize, Vec<ArrowId>> = BTreeMap::new();
    for (i, &a) in arrows.iter().enumerate() {
        grouped.entry(uf.find(i)).or_default().push(a);
    }
    let mut classes: Vec<Vec<ArrowId>> = grouped
        .into_values()
        .map(|mut c| {
            c.sort_by_key(name);
            c
        })
        .collect();
    classes.sort_by_key(|c| name(&c[0]));

    let mut merging: Vec<usize> = cls.merging_pairs.iter().map(|m| m.0).collect();
    merging.dedup();
    EquivalenceClasses {
        n: classes.len(),
        sim_already_transitive: classes.iter().all(|c| c.len() <= 2),
        classes,
        n_prime: merging.len(),
        unions,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub hh1_c: usize,
    pub hh1_b: usize,
    pub dim_der0_c: usize,
    pub dim_der0_b: usize,
    pub dim_int0_c: usize,
    pub dim_int0_b: usize,
    pub n: usize,
    pub n_prime: usize,
    pub relation_count: usize,
    pub representatives: Vec<String>,
    pub b_monomial: bool,
    pub free_group_rank: Option<usize>,
    pub homology_rank: Option<usize>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Computes HH¹ on both sides of a pair, the class count `n`, and checks
/// the relations between them.
pub fn verify_theorem(pair: &ExtensionPair, assert_rep_finite: bool, max_len: usize) -> Result<VerificationReport> {
    let cb = compute_basis(&pair.c, max_len)?;
    let bb = compute_basis(&pair.b, max_len)?;
    if !is_schurian(&bb) {
        return Err(Error::NotSchurian);
    }
    if !bb.quiver().is_connected() {
        return Err(Error::NotConnected);
    }

    let diagnostics = validate_pair_with(pair, max_len);
    let cls = classify_binomials(pair, &bb, &cb)?;
    let eq = equivalence_classes(pair, &cls);

    let oracle_c = hh1_oracle(&cb);
    let oracle_b = hh1_oracle(&bb);
    let schurian_b = hh1_schurian(&bb)?;
    let b_monomial = pair.b.is_monomial();
    let monomial_b = if b_monomial { Some(hh1_monomial(&bb)?) } else { None };

    let (hh1_c, hh1_b, n) = (oracle_c.hh1_dim, oracle_b.hh1_dim, eq.n);
    let relation_count = pair.c.relations.len();
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        })
    };

    push("pair_valid", diagnostics.is_empty(), diagnostics.join("; "));
    let agree = schurian_b.hh1_dim == hh1_b && monomial_b.is_none_or(|m| m == hh1_b);
    push(
        "methods_agree",
        agree,
        match monomial_b {
            Some(m) => format!("oracle {hh1_b}, schurian {}, monomial {m}", schurian_b.hh1_dim),
            None => format!("oracle {hh1_b}, schurian {}", schurian_b.hh1_dim),
        },
    );
    push("identity", hh1_b == hh1_c + n, format!("{hh1_b} = {hh1_c} + {n}"));
    let (der_c, der_b) = (der0_basis(&cb).len(), oracle_b.dim_der0);
    let (int_c, int_b) = (int0_dim(&cb), oracle_b.dim_int0);
    push("der0_split", der_b == der_c + n, format!("{der_b} = {der_c} + {n}"));
    push("int0_equal", int_b == int_c, format!("{int_b} = {int_c}"));
    if hh1_c == 0 {
        push("hh1_equals_n", hh1_b == n, format!("{hh1_b} = {n}"));
    }
    if assert_rep_finite {
        push(
            "n_from_binomials",
            n + eq.n_prime == relation_count,
            format!("{n} = {relation_count} - {}", eq.n_prime),
        );
        push("sim_transitive", eq.sim_already_transitive, String::new());
    }
    if b_monomial {
        push(
            "monomial_sum",
            hh1_b == hh1_c + relation_count,
            format!("{hh1_b} = {hh1_c} + {relation_count}"),
        );
    }
    let hereditary_tree = pair.b.relations.is_empty() && pair.b.quiver.is_tree();
    push(
        "tree_criterion",
        (hh1_b == 0) == hereditary_tree,
        format!("hh1 {hh1_b}, hereditary tree {hereditary_tree}"),
    );

    let representatives = eq
        .representatives()
        .iter()
        .map(|&a| pair.b.quiver.arrow_name(a).to_string())
        .collect();
    Ok(VerificationReport {
        hh1_c,
        hh1_b,
        dim_der0_c: der_c,
        dim_der0_b: der_b,
        dim_int0_c: int_c,
        dim_int0_b: int_b,
        n,
        n_prime: eq.n_prime,
        relation_count,
        representatives,
        b_monomial,
        free_group_rank: assert_rep_finite.then_some(n),
        homology_rank: assert_rep_finite.then_some(n),
        checks,
    })
}
