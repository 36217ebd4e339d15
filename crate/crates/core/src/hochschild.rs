//! First Hochschild cohomology as normalized derivations modulo inner ones.
//!
//! The oracle works for any certified presentation: a normalized derivation
//! is fixed by its values on arrows, `delta(a)` lies in the block
//! `e_s(a) B e_t(a)`, and the Leibniz extension must kill every generating
//! relation. For schurian algebras each `delta(a)` is a multiple `lambda_a a`
//! and the constraints reduce to sums of `lambda` along relation terms.

use crate::basis::{AlgebraBasis, Element};
use crate::classify::{commutator_matrix, is_schurian};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank, Rational, RationalMatrix, RationalVector};
use crate::quiver::{ArrowId, Path};
use crate::relext::ExtensionPair;
use num::{One, Zero};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HH1Method {
    Oracle,
    Schurian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HH1Report {
    pub dim_der0: usize,
    pub dim_int0: usize,
    pub hh1_dim: usize,
    pub method: HH1Method,
}

impl HH1Report {
    fn new(dim_der0: usize, dim_int0: usize, method: HH1Method) -> Self {
        Self {
            dim_der0,
            dim_int0,
            hh1_dim: dim_der0 - dim_int0,
            method,
        }
    }
}

/// A normalized derivation given by its values on arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationValue {
    /// Indexed by arrow; each value is supported in the arrow's block.
    pub values: Vec<Element>,
}

impl DerivationValue {
    /// Block coordinates keyed by arrow name.
    pub fn assignment(&self, b: &AlgebraBasis) -> BTreeMap<String, RationalVector> {
        let q = b.quiver();
        q.arrows()
            .map(|a| {
                let block = b.block(q.source(a), q.target(a));
                let coords = block.iter().map(|&i| self.values[a.0].coeff(i)).collect();
                (q.arrow_name(a).to_string(), RationalVector { entries: coords })
            })
            .collect()
    }

    /// Leibniz extension to a path.
    pub fn apply_path(&self, b: &AlgebraBasis, p: &Path) -> Element {
        let q = b.quiver();
        let mut out = Element::zero();
        for (i, &a) in p.arrows.iter().enumerate() {
            let value = &self.values[a.0];
            if value.is_zero() {
                continue;
            }
            let left = q.path(p.source, &p.arrows[..i]).expect("prefix of a path");
            let right = q.path(q.target(a), &p.arrows[i + 1..]).expect("suffix of a path");
            let term = b.mul_path(&b.left_mul_path(&left, value), &right);
            out.add_scaled(&term, &Rational::one());
        }
        out
    }

    pub fn apply(&self, b: &AlgebraBasis, e: &Element) -> Element {
        let mut out = Element::zero();
        for (i, c) in e.iter() {
            out.add_scaled(&self.apply_path(b, b.basis_path(i)), c);
        }
        out
    }

    pub fn apply_combination(&self, b: &AlgebraBasis, terms: &[(Rational, Path)]) -> Element {
        let mut out = Element::zero();
        for (c, p) in terms {
            out.add_scaled(&self.apply_path(b, p), c);
        }
        out
    }

    /// `delta(u v) = delta(u) v + u delta(v)` for basis elements `u`, `v`.
    pub fn leibniz_holds(&self, b: &AlgebraBasis, u: usize, v: usize) -> bool {
        let (eu, ev) = (Element::basis(u), Element::basis(v));
        let lhs = self.apply(b, &b.mul(&eu, &ev));
        let mut rhs = b.mul(&self.apply(b, &eu), &ev);
        rhs.add_scaled(&b.mul(&eu, &self.apply(b, &ev)), &Rational::one());
        lhs == rhs
    }

    /// Every generating relation is sent to zero.
    pub fn kills_relations(&self, b: &AlgebraBasis) -> bool {
        b.presentation()
            .relations
            .iter()
            .all(|r| self.apply_combination(b, &r.terms).is_zero())
    }
}

/// Column layout of the unknowns: `(arrow, basis index)` per block entry.
fn unknowns(b: &AlgebraBasis) -> Vec<(ArrowId, usize)> {
    let q = b.quiver();
    q.arrows()
        .flat_map(|a| b.block(q.source(a), q.target(a)).iter().map(move |&i| (a, i)))
        .collect()
}

/// Basis of `Der_0`: kernel of the relation constraints on arrow values.
pub fn der0_basis(b: &AlgebraBasis) -> Vec<DerivationValue> {
    let q = b.quiver();
    let cols = unknowns(b);
    let dim = b.dimension();
    let relations = &b.presentation().relations;

    let mut rows = vec![vec![Rational::zero(); cols.len()]; relations.len() * dim];
    for (j, &(a, i)) in cols.iter().enumerate() {
        let mut values = vec![Element::zero(); q.arrow_count()];
        values[a.0] = Element::basis(i);
        let delta = DerivationValue { values };
        for (r, rel) in relations.iter().enumerate() {
            for (k, c) in delta.apply_combination(b, &rel.terms).iter() {
                rows[r * dim + k][j] = c.clone();
            }
        }
    }
    rows.retain(|row| row.iter().any(|c| !c.is_zero()));
    let m = RationalMatrix::from_rows(cols.len(), rows);
    kernel_basis(&m)
        .into_iter()
        .map(|v| {
            let mut values = vec![Element::zero(); q.arrow_count()];
            for (j, c) in v.entries.iter().enumerate() {
                let (a, i) = cols[j];
                values[a.0].add_term(i, c);
            }
            DerivationValue { values }
        })
        .collect()
}

/// Rank of `a -> (a x - x a)_x` over `a` in the local algebras.
pub fn int0_dim(b: &AlgebraBasis) -> usize {
    rank(&commutator_matrix(b).0)
}

pub fn hh1_oracle(b: &AlgebraBasis) -> HH1Report {
    HH1Report::new(der0_basis(b).len(), int0_dim(b), HH1Method::Oracle)
}

/// Linear constraints on `(lambda_a)` indexed by arrow: one row per relation
/// and basis coordinate of the symbolic reduction of `delta(rho)`.
pub fn diagonal_constraints(b: &AlgebraBasis) -> RationalMatrix {
    let n = b.quiver().arrow_count();
    let mut rows = Vec::new();
    for rel in &b.presentation().relations {
        let mut by_coord: BTreeMap<usize, Vec<Rational>> = BTreeMap::new();
        for (c, p) in &rel.terms {
            let reduced = b.reduce(p);
            for (k, x) in reduced.iter() {
                let row = by_coord.entry(k).or_insert_with(|| vec![Rational::zero(); n]);
                let weight = c * x;
                for a in &p.arrows {
                    row[a.0] += &weight;
                }
            }
        }
        rows.extend(by_coord.into_values().filter(|row| row.iter().any(|c| !c.is_zero())));
    }
    RationalMatrix::from_rows(n, rows)
}

/// Fast path for schurian connected algebras.
pub fn hh1_schurian(b: &AlgebraBasis) -> Result<HH1Report> {
    if !is_schurian(b) {
        return Err(Error::NotSchurian);
    }
    if !b.quiver().is_connected() {
        return Err(Error::NotConnected);
    }
    let q = b.quiver();
    let dim_der0 = q.arrow_count() - rank(&diagonal_constraints(b));
    Ok(HH1Report::new(dim_der0, q.vertex_count() - 1, HH1Method::Schurian))
}

/// `delta(a) = lambda_a a`, keyed by arrow name; absent names mean zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagonalDerivation {
    pub lambda: BTreeMap<String, Rational>,
}

impl DiagonalDerivation {
    pub fn get(&self, name: &str) -> Rational {
        self.lambda.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, name: &str, value: Rational) {
        self.lambda.insert(name.to_string(), value);
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.values().all(Zero::is_zero)
    }

    pub fn from_vector(b: &AlgebraBasis, v: &RationalVector) -> Self {
        let q = b.quiver();
        Self {
            lambda: q
                .arrows()
                .map(|a| (q.arrow_name(a).to_string(), v.entries[a.0].clone()))
                .collect(),
        }
    }

    pub fn to_vector(&self, b: &AlgebraBasis) -> RationalVector {
        let q = b.quiver();
        RationalVector {
            entries: q.arrows().map(|a| self.get(q.arrow_name(a))).collect(),
        }
    }

    /// Sum of `lambda` along the arrows of a path.
    pub fn path_weight(&self, names: impl IntoIterator<Item = impl AsRef<str>>) -> Rational {
        names.into_iter().map(|n| self.get(n.as_ref())).sum()
    }

    pub fn satisfies(&self, b: &AlgebraBasis) -> bool {
        diagonal_constraints(b).mul_vector(&self.to_vector(b)).is_zero()
    }

    pub fn to_derivation(&self, b: &AlgebraBasis) -> DerivationValue {
        let q = b.quiver();
        let values = q
            .arrows()
            .map(|a| b.reduce(&q.arrow_path(a)).scaled(&self.get(q.arrow_name(a))))
            .collect();
        DerivationValue { values }
    }
}

/// Basis of the diagonal derivations.
pub fn diagonal_der0_basis(b: &AlgebraBasis) -> Vec<DiagonalDerivation> {
    kernel_basis(&diagonal_constraints(b))
        .iter()
        .map(|v| DiagonalDerivation::from_vector(b, v))
        .collect()
}

/// `a = sum a_x e_x`, keyed by vertex name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InnerElement {
    pub coefficients: BTreeMap<String, Rational>,
}

impl InnerElement {
    fn get(&self, name: &str) -> Rational {
        self.coefficients.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    /// `delta_a(x) = a x - x a`, which is `(a_s - a_t) x` on an arrow.
    pub fn derivation(&self, b: &AlgebraBasis) -> DiagonalDerivation {
        let q = b.quiver();
        DiagonalDerivation {
            lambda: q
                .arrows()
                .map(|a| {
                    let s = self.get(q.vertex_name(q.source(a)));
                    let t = self.get(q.vertex_name(q.target(a)));
                    (q.arrow_name(a).to_string(), s - t)
                })
                .collect(),
        }
    }
}

fn arrow_names(pair: &ExtensionPair, p: &Path) -> Vec<String> {
    p.arrows
        .iter()
        .map(|&a| pair.c.quiver.arrow_name(a).to_string())
        .collect()
}

/// `-sum lambda_beta` over the defining relation of a new arrow.
fn defining_sum(pair: &ExtensionPair, delta: &DiagonalDerivation, a: ArrowId) -> Result<Rational> {
    let name = pair.b.quiver.arrow_name(a);
    let rel = pair
        .defining_relation(a)
        .ok_or_else(|| Error::NotNewArrow(name.to_string()))?;
    let mut sums = rel.terms.iter().map(|(_, p)| delta.path_weight(arrow_names(pair, p)));
    let first = sums.next().unwrap_or_else(Rational::zero);
    if sums.any(|s| s != first) {
        return Err(Error::AmbiguousDefiningSum(name.to_string()));
    }
    Ok(first)
}

/// Extends a diagonal derivation of `C` to `B`: old arrows keep `lambda`,
/// a new arrow gets minus the `lambda`-sum of a term of its relation.
pub fn extend_derivation(pair: &ExtensionPair, delta: &DiagonalDerivation) -> Result<DiagonalDerivation> {
    let bq = &pair.b.quiver;
    let mut out = DiagonalDerivation::default();
    for a in bq.arrows() {
        let name = bq.arrow_name(a);
        let value = if pair.is_new(a) {
            -defining_sum(pair, delta, a)?
        } else {
            delta.get(name)
        };
        out.set(name, value);
    }
    Ok(out)
}

/// Restriction of a diagonal derivation of `B` to the old arrows.
pub fn restrict_derivation(pair: &ExtensionPair, delta: &DiagonalDerivation) -> DiagonalDerivation {
    let cq = &pair.c.quiver;
    DiagonalDerivation {
        lambda: cq
            .arrows()
            .map(|a| (cq.arrow_name(a).to_string(), delta.get(cq.arrow_name(a))))
            .collect(),
    }
}

/// For each representative `a`, the coefficient of `a` in
/// `delta - extend(delta restricted to C)`, that is
/// `lambda_a + sum lambda_beta` over its defining relation.
pub fn project_new_components(
    pair: &ExtensionPair,
    delta: &DiagonalDerivation,
    reps: &[ArrowId],
) -> Result<RationalVector> {
    let restricted = restrict_derivation(pair, delta);
    let mut entries = Vec::with_capacity(reps.len());
    for &a in reps {
        if !pair.is_new(a) {
            return Err(Error::NotNewArrow(pair.b.quiver.arrow_name(a).to_string()));
        }
        let lambda = delta.get(pair.b.quiver.arrow_name(a));
        entries.push(lambda + defining_sum(pair, &restricted, a)?);
    }
    Ok(RationalVector { entries })
}
