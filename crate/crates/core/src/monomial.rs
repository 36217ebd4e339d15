//! Combinatorial HH¹ for monomial algebras via parallel paths.
//!
//! With `N` the nonzero paths, the dimension is
//! `dim Z - |Q0||N| + |Q1||N| - |(Q1||N)_e| - rank R_g`.

use crate::basis::AlgebraBasis;
use crate::classify::center_dim;
use crate::error::{Error, Result};
use crate::linalg::{rank, rat, RationalMatrix};
use crate::quiver::{arrow_multiplicities, ArrowId, Path, VertexId};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelData {
    pub n: Vec<Path>,
    pub q0n: Vec<(VertexId, Path)>,
    pub q1n: Vec<(ArrowId, Path)>,
    /// Indices into `q1n`.
    pub q1n_g: Vec<usize>,
    pub q1n_a: Vec<usize>,
    pub q1n_e: Vec<usize>,
    /// Pairs (relation index, nonzero parallel path).
    pub rn: Vec<(usize, Path)>,
    pub rg_matrix: RationalMatrix,
}

impl ParallelData {
    pub fn g_or_a_count(&self) -> usize {
        let mut both: Vec<usize> = self.q1n_g.iter().chain(&self.q1n_a).copied().collect();
        both.sort_unstable();
        both.dedup();
        both.len()
    }
}

/// Replaces the arrow at `pos` of `rho` by `gamma`.
fn substitute(rho: &Path, pos: usize, gamma: &Path) -> Path {
    let mut arrows = rho.arrows[..pos].to_vec();
    arrows.extend(&gamma.arrows);
    arrows.extend(&rho.arrows[pos + 1..]);
    Path {
        source: rho.source,
        target: rho.target,
        arrows,
    }
}

fn relation_paths(b: &AlgebraBasis) -> Result<Vec<Path>> {
    let p = b.presentation();
    if !p.is_monomial() {
        return Err(Error::NotMonomial);
    }
    Ok(p.relations.iter().map(|r| r.terms[0].1.clone()).collect())
}

pub fn parallel_data(b: &AlgebraBasis) -> Result<ParallelData> {
    let rhos = relation_paths(b)?;
    let q = b.quiver();
    let n: Vec<Path> = b.basis_paths().to_vec();
    let parallel = |x: VertexId, y: VertexId| b.block(x, y).iter().map(|&i| b.basis_path(i).clone());

    let q0n: Vec<(VertexId, Path)> = q.vertices().flat_map(|x| parallel(x, x).map(move |p| (x, p))).collect();
    let q1n: Vec<(ArrowId, Path)> = q
        .arrows()
        .flat_map(|a| parallel(q.source(a), q.target(a)).map(move |p| (a, p)))
        .collect();
    let rn: Vec<(usize, Path)> = rhos
        .iter()
        .enumerate()
        .flat_map(|(i, r)| parallel(r.source, r.target).map(move |p| (i, p)))
        .collect();

    let occurrences = |a: ArrowId| -> Vec<(usize, usize)> {
        rhos.iter()
            .enumerate()
            .flat_map(|(r, rho)| {
                rho.arrows
                    .iter()
                    .enumerate()
                    .filter(move |(_, &x)| x == a)
                    .map(move |(pos, _)| (r, pos))
            })
            .collect()
    };

    let (mut q1n_g, mut q1n_a, mut q1n_e) = (Vec::new(), Vec::new(), Vec::new());
    for (i, (a, gamma)) in q1n.iter().enumerate() {
        let g = gamma.is_trivial() || gamma.arrows.first() == Some(a) || gamma.arrows.last() == Some(a);
        let aset = occurrences(*a)
            .into_iter()
            .all(|(r, pos)| b.is_zero_path(&substitute(&rhos[r], pos, gamma)));
        if g {
            q1n_g.push(i);
        }
        if aset {
            q1n_a.push(i);
        }
        if !g && !aset {
            q1n_e.push(i);
        }
    }

    let mut rg_matrix = RationalMatrix::zeros(q1n_g.len(), rn.len());
    for (row, &i) in q1n_g.iter().enumerate() {
        let (a, gamma) = &q1n[i];
        for (r, pos) in occurrences(*a) {
            let image = substitute(&rhos[r], pos, gamma);
            if b.is_zero_path(&image) {
                continue;
            }
            if let Some(col) = rn.iter().position(|(rr, p)| *rr == r && *p == image) {
                rg_matrix[(row, col)] += rat(1);
            }
        }
    }

    Ok(ParallelData {
        n,
        q0n,
        q1n,
        q1n_g,
        q1n_a,
        q1n_e,
        rn,
        rg_matrix,
    })
}

pub fn hh1_monomial(b: &AlgebraBasis) -> Result<usize> {
    let d = parallel_data(b)?;
    let value = center_dim(b) as i64 - d.q0n.len() as i64 + d.q1n.len() as i64
        - d.q1n_e.len() as i64
        - rank(&d.rg_matrix) as i64;
    usize::try_from(value).map_err(|_| Error::InvalidPresentation(format!("negative formula value {value}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsilonReport {
    pub epsilon: i64,
    pub epsilon_prime: usize,
    pub relation_count: usize,
    pub hh1_dim: usize,
    pub within_bounds: bool,
}

/// 2 with a double arrow; 1 with an arrow `x -> y` parallel to a nonzero
/// path of length at least two; 0 otherwise.
pub fn epsilon_prime(b: &AlgebraBasis) -> usize {
    let q = b.quiver();
    if arrow_multiplicities(q).values().any(|&m| m >= 2) {
        return 2;
    }
    let bypass = q.arrows().any(|a| {
        b.block(q.source(a), q.target(a))
            .iter()
            .any(|&i| b.basis_path(i).len() >= 2)
    });
    usize::from(bypass)
}

pub fn epsilon_report(b: &AlgebraBasis, relation_count: usize) -> Result<EpsilonReport> {
    let hh1_dim = hh1_monomial(b)?;
    let epsilon = hh1_dim as i64 - 1 - relation_count as i64;
    let epsilon_prime = epsilon_prime(b);
    Ok(EpsilonReport {
        epsilon,
        epsilon_prime,
        relation_count,
        hh1_dim,
        within_bounds: 0 <= epsilon && epsilon <= epsilon_prime as i64 && epsilon_prime <= 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{compute_basis, DEFAULT_MAX_LEN};
    use crate::hochschild::hh1_oracle;
    use crate::presentation::Presentation;
    use crate::quiver::Quiver;

    fn basis(p: &Presentation) -> AlgebraBasis {
        compute_basis(p, DEFAULT_MAX_LEN).unwrap()
    }

    fn kronecker() -> AlgebraBasis {
        basis(&Presentation::hereditary(
            Quiver::from_names(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap(),
        ))
    }

    fn triangle() -> AlgebraBasis {
        basis(&Presentation::hereditary(
            Quiver::from_names(&["1", "2", "3"], &[("f", "1", "3"), ("g", "1", "2"), ("h", "2", "3")]).unwrap(),
        ))
    }

    fn bound_cycle() -> AlgebraBasis {
        let q = Quiver::from_names(
            &["1", "2", "3"],
            &[("alpha", "1", "2"), ("beta", "2", "3"), ("delta", "3", "1")],
        )
        .unwrap();
        basis(
            &Presentation::hereditary(q)
                .with_zero(&["alpha", "beta"])
                .unwrap()
                .with_zero(&["beta", "delta"])
                .unwrap()
                .with_zero(&["delta", "alpha"])
                .unwrap(),
        )
    }

    fn sizes(d: &ParallelData) -> [usize; 5] {
        [d.q0n.len(), d.q1n.len(), d.q1n_g.len(), d.q1n_a.len(), d.q1n_e.len()]
    }

    #[test]
    fn kronecker_sets() {
        let d = parallel_data(&kronecker()).unwrap();
        assert_eq!(sizes(&d), [2, 4, 2, 4, 0]);
        assert_eq!(d.rg_matrix.rows(), 2);
        assert_eq!(d.rg_matrix.cols(), 0);
        assert_eq!(hh1_monomial(&kronecker()).unwrap(), 3);
    }

    #[test]
    fn bound_cycle_sets() {
        let d = parallel_data(&bound_cycle()).unwrap();
        assert_eq!(sizes(&d), [3, 3, 3, 3, 0]);
        assert!(d.rg_matrix.is_zero());
        assert_eq!(hh1_monomial(&bound_cycle()).unwrap(), 1);
    }

    #[test]
    fn triangle_sets() {
        let b = triangle();
        let d = parallel_data(&b).unwrap();
        assert_eq!(d.q0n.len(), 3);
        assert_eq!(d.q1n.len(), 4);
        assert_eq!(d.q1n_g.len(), 3);
        assert!(d.q1n_e.is_empty());
        let extra = d
            .q1n
            .iter()
            .any(|(a, p)| b.quiver().arrow_name(*a) == "f" && b.quiver().display_path(p) == "g.h");
        assert!(extra);
        assert_eq!(hh1_monomial(&b).unwrap(), 2);
    }

    #[test]
    fn set_identity() {
        for b in [kronecker(), triangle(), bound_cycle()] {
            let d = parallel_data(&b).unwrap();
            assert_eq!(d.q1n.len() - d.q1n_e.len(), d.g_or_a_count());
        }
    }

    #[test]
    fn epsilon_examples() {
        let k = epsilon_report(&kronecker(), 0).unwrap();
        assert_eq!((k.epsilon, k.epsilon_prime), (2, 2));
        let t = epsilon_report(&triangle(), 0).unwrap();
        assert_eq!((t.epsilon, t.epsilon_prime), (1, 1));
        assert!(k.within_bounds && t.within_bounds);
    }

    #[test]
    fn loop_with_square_zero() {
        let q = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        let b = basis(&Presentation::hereditary(q).with_zero(&["l", "l"]).unwrap());
        assert_eq!(hh1_monomial(&b).unwrap(), hh1_oracle(&b).hh1_dim);
    }

    #[test]
    fn repeated_arrow_in_relation() {
        // l^3 = 0: relation path contains the loop three times
        let q = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        let b = basis(&Presentation::hereditary(q).with_zero(&["l", "l", "l"]).unwrap());
        assert_eq!(hh1_monomial(&b).unwrap(), hh1_oracle(&b).hh1_dim);
    }

    #[test]
    fn non_monomial_rejected() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "4"), ("c", "1", "3"), ("d", "3", "4")],
        )
        .unwrap();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let cd = q.path_from_names(&["c", "d"]).unwrap();
        let p = Presentation::new(q, vec![crate::presentation::Relation::commutativity(ab, cd)]);
        assert_eq!(hh1_monomial(&basis(&p)).unwrap_err(), Error::NotMonomial);
    }
}
