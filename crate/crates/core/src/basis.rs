//! Certified finite bases of `kQ/I`.
//!
//! Basis representatives are the paths that survive row reduction when paths
//! are ordered by [`Quiver::path_cmp`] and the largest path of every ideal
//! element is eliminated first. The surviving ("standard") paths are closed
//! under taking prefixes, so the whole algebra structure is captured by a
//! right-multiplication table `(standard path, arrow) -> coordinates`.
//!
//! Two routes compute the same basis:
//!
//! * [`BasisMethod::Graded`] works degree by degree and is used whenever every
//!   relation is homogeneous. Degree `n` is spanned by `b.a` with `b` standard
//!   of degree `n - 1`, modulo `b'.rho` for relations `rho` of degree `k` and
//!   standard `b'` of degree `n - k`.
//! * [`BasisMethod::Truncated`] row-reduces every `(x, y)` block of the path
//!   space up to `max_len` against all `u.rho.v`; it handles arbitrary
//!   relations and serves as an independent check of the graded route.

use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalMatrix, RationalVector};
use crate::presentation::{Presentation, Relation};
use crate::quiver::{ArrowId, Path, Quiver, VertexId};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_MAX_LEN: usize = 24;

/// Sparse coordinates over the basis paths of an [`AlgebraBasis`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element(BTreeMap<usize, Rational>);

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: usize) -> Self {
        Self(BTreeMap::from([(i, Rational::one())]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.0.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn add_term(&mut self, i: usize, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(i).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_term(i, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        out
    }

    pub fn to_vector(&self, dim: usize) -> RationalVector {
        let mut v = RationalVector::zeros(dim);
        for (i, c) in self.iter() {
            v.entries[i] = c.clone();
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisMethod {
    Graded,
    Truncated,
}

/// A certified basis of a finite-dimensional bound quiver algebra.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    presentation: Presentation,
    max_len: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    trivial: Vec<usize>,
    nilpotency_degree: usize,
    right_mult: HashMap<(usize, ArrowId), Element>,
    blocks: BTreeMap<(VertexId, VertexId), Vec<usize>>,
}

/// Computes a certified basis, using the graded route when every relation is
/// homogeneous.
pub fn compute_basis(p: &Presentation, max_len: usize) -> Result<AlgebraBasis> {
    let method = if p.is_homogeneous() {
        BasisMethod::Graded
    } else {
        BasisMethod::Truncated
    };
    compute_basis_with(p, max_len, method)
}

pub fn compute_basis_with(p: &Presentation, max_len: usize, method: BasisMethod) -> Result<AlgebraBasis> {
    p.check()?;
    let raw = match method {
        BasisMethod::Graded => {
            if !p.is_homogeneous() {
                return Err(Error::InvalidPresentation(
                    "graded basis route needs homogeneous relations".into(),
                ));
            }
            graded(p, max_len)?
        }
        BasisMethod::Truncated => truncated(p, max_len)?,
    };
    Ok(AlgebraBasis::assemble(p.clone(), max_len, raw))
}

/// Basis data before the final reordering.
struct RawBasis {
    paths: Vec<Path>,
    right_mult: HashMap<(usize, ArrowId), Element>,
    nilpotency_degree: usize,
}

fn fold_arrows(right_mult: &HashMap<(usize, ArrowId), Element>, start: Element, arrows: &[ArrowId]) -> Element {
    let mut cur = start;
    for &a in arrows {
        let mut next = Element::zero();
        for (b, c) in cur.iter() {
            if let Some(img) = right_mult.get(&(b, a)) {
                next.add_scaled(img, c);
            }
        }
        cur = next;
        if cur.is_zero() {
            break;
        }
    }
    cur
}

fn graded(p: &Presentation, max_len: usize) -> Result<RawBasis> {
    let q = &p.quiver;
    let mut paths: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut by_degree: Vec<Vec<usize>> = vec![(0..paths.len()).collect()];
    let mut right_mult: HashMap<(usize, ArrowId), Element> = HashMap::new();

    for n in 1..=max_len {
        let prev = &by_degree[n - 1];
        let mut candidates: Vec<(usize, ArrowId, Path)> = prev
            .iter()
            .flat_map(|&b| {
                let path = &paths[b];
                q.arrows_from(path.target)
                    .map(move |a| (b, a, q.extend(path, a).expect("composable by construction")))
            })
            .collect();
        if candidates.is_empty() {
            return Ok(RawBasis {
                paths,
                right_mult,
                nilpotency_degree: n,
            });
        }
        candidates.sort_by(|x, y| q.path_cmp(&y.2, &x.2));
        let column: HashMap<(usize, ArrowId), usize> = candidates
            .iter()
            .enumerate()
            .map(|(j, (b, a, _))| ((*b, *a), j))
            .collect();

        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for rel in &p.relations {
            let k = rel.terms[0].1.len();
            if k > n {
                continue;
            }
            for &b in &by_degree[n - k] {
                if paths[b].target != rel.source() {
                    continue;
                }
                let mut row = vec![Rational::zero(); candidates.len()];
                for (c, w) in &rel.terms {
                    let (last, init) = w.arrows.split_last().expect("relation terms have length >= 2");
                    let prefix = fold_arrows(&right_mult, Element::basis(b), init);
                    for (b2, x) in prefix.iter() {
                        let j = column[&(b2, *last)];
                        row[j] += x * c;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }

        let cols = candidates.len();
        let (pivot_rows, free) = if rows.is_empty() {
            (Vec::new(), (0..cols).collect::<Vec<_>>())
        } else {
            let mut m = RationalMatrix::from_rows(cols, rows);
            let pivots = m.reduce_in_place();
            let mut is_pivot = vec![None; cols];
            for (r, &pc) in pivots.iter().enumerate() {
                is_pivot[pc] = Some(r);
            }
            let free: Vec<usize> = (0..cols).filter(|&j| is_pivot[j].is_none()).collect();
            let pivot_rows: Vec<(usize, Vec<(usize, Rational)>)> = pivots
                .iter()
                .enumerate()
                .map(|(r, &pc)| {
                    let tail = free
                        .iter()
                        .filter(|&&f| !m[(r, f)].is_zero())
                        .map(|&f| (f, -m[(r, f)].clone()))
                        .collect();
                    (pc, tail)
                })
                .collect();
            (pivot_rows, free)
        };

        let mut new_index = HashMap::new();
        let mut degree_n = Vec::new();
        for &f in &free {
            let id = paths.len();
            paths.push(candidates[f].2.clone());
            new_index.insert(f, id);
            degree_n.push(id);
            right_mult.insert((candidates[f].0, candidates[f].1), Element::basis(id));
        }
        for (pc, tail) in pivot_rows {
            let mut img = Element::zero();
            for (f, c) in tail {
                img.add_term(new_index[&f], &c);
            }
            if !img.is_zero() {
                right_mult.insert((candidates[pc].0, candidates[pc].1), img);
            }
        }
        if degree_n.is_empty() {
            return Ok(RawBasis {
                paths,
                right_mult,
                nilpotency_degree: n,
            });
        }
        by_degree.push(degree_n);
    }
    Err(Error::NotCertified(max_len))
}

fn truncated(p: &Presentation, max_len: usize) -> Result<RawBasis> {
    let q = &p.quiver;
    let all = q.enumerate_paths(max_len);
    let mut by_block: BTreeMap<(VertexId, VertexId), Vec<Path>> = BTreeMap::new();
    for path in &all {
        by_block
            .entry((path.source, path.target))
            .or_default()
            .push(path.clone());
    }

    // normal form of every path of length <= max_len, as (path, coeff) over
    // the standard paths of its block
    let mut standard: Vec<Path> = Vec::new();
    let mut normal_form: HashMap<Path, Vec<(Path, Rational)>> = HashMap::new();

    for (&(x, y), block) in &by_block {
        let mut cols: Vec<Path> = block.clone();
        cols.sort_by(|a, b| q.path_cmp(b, a));
        let col_of: HashMap<&Path, usize> = cols.iter().enumerate().map(|(j, p)| (p, j)).collect();

        let mut rows = Vec::new();
        for rel in &p.relations {
            let empty = Vec::new();
            let left = by_block.get(&(x, rel.source())).unwrap_or(&empty);
            let right = by_block.get(&(rel.target(), y)).unwrap_or(&empty);
            for u in left {
                for v in right {
                    if u.len() + v.len() + rel.min_len() > max_len {
                        continue;
                    }
                    if let Some(row) = sandwich_row(rel, u, v, max_len, &col_of) {
                        rows.push(row);
                    }
                }
            }
        }

        let n = cols.len();
        let mut pivot_of = vec![None; n];
        let mut m = RationalMatrix::from_rows(n, rows);
        let pivots = m.reduce_in_place();
        for (r, &pc) in pivots.iter().enumerate() {
            pivot_of[pc] = Some(r);
        }
        let free: Vec<usize> = (0..n).filter(|&j| pivot_of[j].is_none()).collect();
        for &f in &free {
            standard.push(cols[f].clone());
        }
        for (j, path) in cols.iter().enumerate() {
            let nf = match pivot_of[j] {
                None => vec![(path.clone(), Rational::one())],
                Some(r) => free
                    .iter()
                    .filter(|&&f| !m[(r, f)].is_zero())
                    .map(|&f| (cols[f].clone(), -m[(r, f)].clone()))
                    .collect(),
            };
            normal_form.insert(path.clone(), nf);
        }
    }

    let longest = standard.iter().map(Path::len).max().unwrap_or(0);
    let nilpotency_degree = (longest + 1..=max_len)
        .find(|&m| {
            all.iter()
                .filter(|path| path.len() == m)
                .all(|path| normal_form[path].is_empty())
        })
        .ok_or(Error::NotCertified(max_len))?;

    standard.sort_by(|a, b| q.path_cmp(a, b));
    let index: HashMap<&Path, usize> = standard.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut right_mult = HashMap::new();
    for (i, b) in standard.iter().enumerate() {
        for a in q.arrows_from(b.target) {
            let ba = q.extend(b, a).expect("composable");
            let Some(nf) = normal_form.get(&ba) else { continue };
            let mut img = Element::zero();
            for (path, c) in nf {
                img.add_term(index[path], c);
            }
            if !img.is_zero() {
                right_mult.insert((i, a), img);
            }
        }
    }
    Ok(RawBasis {
        paths: standard,
        right_mult,
        nilpotency_degree,
    })
}

/// Row for `u.rel.v`, dropping terms longer than `max_len`.
fn sandwich_row(
    rel: &Relation,
    u: &Path,
    v: &Path,
    max_len: usize,
    col_of: &HashMap<&Path, usize>,
) -> Option<Vec<Rational>> {
    let mut row = vec![Rational::zero(); col_of.len()];
    let mut any = false;
    for (c, w) in &rel.terms {
        let full = u.concat(w)?.concat(v)?;
        if full.len() > max_len {
            continue;
        }
        row[col_of[&full]] += c;
        any = true;
    }
    (any && row.iter().any(|x| !x.is_zero())).then_some(row)
}

impl AlgebraBasis {
    fn assemble(presentation: Presentation, max_len: usize, raw: RawBasis) -> Self {
        let q = &presentation.quiver;
        let mut order: Vec<usize> = (0..raw.paths.len()).collect();
        order.sort_by(|&a, &b| q.path_cmp(&raw.paths[a], &raw.paths[b]));
        let mut new_of_old = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_of_old[old] = new;
        }
        let paths: Vec<Path> = order.iter().map(|&old| raw.paths[old].clone()).collect();
        let right_mult = raw
            .right_mult
            .into_iter()
            .map(|((b, a), img)| {
                let mut remapped = Element::zero();
                for (i, c) in img.iter() {
                    remapped.add_term(new_of_old[i], c);
                }
                ((new_of_old[b], a), remapped)
            })
            .collect();
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let trivial = q.vertices().map(|v| index[&Path::trivial(v)]).collect();
        let mut blocks: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            blocks.entry((p.source, p.target)).or_default().push(i);
        }
        Self {
            presentation,
            max_len,
            paths,
            index,
            trivial,
            nilpotency_degree: raw.nilpotency_degree,
            right_mult,
            blocks,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn nilpotency_degree(&self) -> usize {
        self.nilpotency_degree
    }

    pub fn basis_paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    /// Index of a path when it is itself a basis representative.
    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn idempotent(&self, v: VertexId) -> usize {
        self.trivial[v.0]
    }

    /// Basis indices of `e_x B e_y`.
    pub fn block(&self, x: VertexId, y: VertexId) -> &[usize] {
        self.blocks.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn block_dim(&self, x: VertexId, y: VertexId) -> usize {
        self.block(x, y).len()
    }

    pub fn mul_arrow(&self, e: &Element, a: ArrowId) -> Element {
        fold_arrows(&self.right_mult, e.clone(), &[a])
    }

    pub fn mul_path(&self, e: &Element, p: &Path) -> Element {
        if p.is_trivial() {
            let mut out = Element::zero();
            for (i, c) in e.iter() {
                if self.paths[i].target == p.source {
                    out.add_term(i, c);
                }
            }
            return out;
        }
        let mut start = Element::zero();
        for (i, c) in e.iter() {
            if self.paths[i].target == p.source {
                start.add_term(i, c);
            }
        }
        fold_arrows(&self.right_mult, start, &p.arrows)
    }

    /// Coordinates of an arbitrary path.
    pub fn reduce(&self, p: &Path) -> Element {
        fold_arrows(&self.right_mult, Element::basis(self.trivial[p.source.0]), &p.arrows)
    }

    pub fn reduce_vector(&self, p: &Path) -> RationalVector {
        self.reduce(p).to_vector(self.dimension())
    }

    pub fn reduce_combination(&self, terms: &[(Rational, Path)]) -> Element {
        let mut out = Element::zero();
        for (c, p) in terms {
            out.add_scaled(&self.reduce(p), c);
        }
        out
    }

    pub fn is_zero_path(&self, p: &Path) -> bool {
        self.reduce(p).is_zero()
    }

    /// Product in the algebra.
    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (j, c) in y.iter() {
            out.add_scaled(&self.mul_path(x, &self.paths[j]), c);
        }
        out
    }

    /// `p * e` for a path `p` and an element `e`.
    pub fn left_mul_path(&self, p: &Path, e: &Element) -> Element {
        self.mul(&self.reduce(p), e)
    }

    pub fn display_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.iter()
            .map(|(i, c)| format!("{c}*{}", self.quiver().display_path(&self.paths[i])))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::presentation::term;

    fn bound_cycle() -> Presentation {
        let q = Quiver::from_names(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "2", "3"), ("delta", "3", "1")],
        )
        .unwrap();
        Presentation::hereditary(q)
            .with_zero(&["alpha", "beta"])
            .unwrap()
            .with_zero(&["beta", "delta"])
            .unwrap()
            .with_zero(&["delta", "alpha"])
            .unwrap()
    }

    fn names(b: &AlgebraBasis) -> Vec<String> {
        b.basis_paths().iter().map(|p| b.quiver().display_path(p)).collect()
    }

    #[test]
    fn bound_cycle_basis() {
        let b = compute_basis(&bound_cycle(), DEFAULT_MAX_LEN).unwrap();
        assert_eq!(b.dimension(), 6);
        assert_eq!(b.nilpotency_degree(), 2);
        assert_eq!(names(&b), ["e_1", "e_2", "e_3", "alpha", "beta", "delta"]);
    }

    #[test]
    fn kronecker_basis() {
        let q = Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap();
        let b = compute_basis(&Presentation::hereditary(q), DEFAULT_MAX_LEN).unwrap();
        assert_eq!(b.dimension(), 4);
    }

    #[test]
    fn free_loop_is_not_certified() {
        let q = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        let err = compute_basis(&Presentation::hereditary(q), 10).unwrap_err();
        assert_eq!(err, Error::NotCertified(10));
    }

    #[test]
    fn commutative_square() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let cd = q.path_from_names(&["c", "d"]).unwrap();
        let p = Presentation::new(q, vec![Relation::commutativity(ab.clone(), cd.clone())]);
        let b = compute_basis(&p, DEFAULT_MAX_LEN).unwrap();
        assert_eq!(b.dimension(), 9);
        // the larger of the two paths is rewritten into the smaller one
        assert_eq!(b.reduce(&cd), b.reduce(&ab));
        assert!(b.index_of(&ab).is_some());
        assert!(b.index_of(&cd).is_none());
    }

    #[test]
    fn non_homogeneous_relation_uses_truncation() {
        // a.b.c = 2 d.e, parallel paths of different length
        let q = Quiver::from_names(
            &["1", "2", "3", "4", "5"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "3", "5"),
                ("d", "1", "4"),
                ("e", "4", "5"),
            ],
        )
        .unwrap();
        let abc = q.path_from_names(&["a", "b", "c"]).unwrap();
        let de = q.path_from_names(&["d", "e"]).unwrap();
        let p = Presentation::new(q, vec![Relation::new(vec![term(1, abc.clone()), term(-2, de.clone())])]);
        let b = compute_basis(&p, DEFAULT_MAX_LEN).unwrap();
        assert_eq!(b.dimension(), 5 + 5 + 2 + 1);
        assert_eq!(b.reduce(&abc), b.reduce(&de).scaled(&rat(2)));
        assert!(compute_basis_with(&p, 10, BasisMethod::Graded).is_err());
    }

    #[test]
    fn truncated_route_matches_graded() {
        let b1 = compute_basis_with(&bound_cycle(), 8, BasisMethod::Graded).unwrap();
        let b2 = compute_basis_with(&bound_cycle(), 8, BasisMethod::Truncated).unwrap();
        assert_eq!(b1.basis_paths(), b2.basis_paths());
        assert_eq!(b1.nilpotency_degree(), b2.nilpotency_degree());
    }

    #[test]
    fn loop_with_square_zero() {
        let q = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        let p = Presentation::hereditary(q).with_zero(&["l", "l"]).unwrap();
        let b = compute_basis(&p, DEFAULT_MAX_LEN).unwrap();
        assert_eq!(b.dimension(), 2);
        assert_eq!(b.nilpotency_degree(), 2);
    }

    #[test]
    fn invalid_presentation_is_rejected() {
        let q = Quiver::from_names(&["1", "2"], &[("a", "1", "2")]).unwrap();
        let p = Presentation::new(q.clone(), vec![Relation::monomial(q.arrow_path(ArrowId(0)))]);
        assert!(matches!(compute_basis(&p, 5), Err(Error::InvalidPresentation(_))));
    }
}
