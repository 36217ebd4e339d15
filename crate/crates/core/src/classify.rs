//! Structural classification of a certified algebra.

use crate::basis::{compute_basis, AlgebraBasis, Element, DEFAULT_MAX_LEN};
use crate::linalg::{Rational, RationalMatrix};
use crate::presentation::Presentation;
use crate::quiver::{search_walk, ArrowId, Direction, Step, Walk};
use num::Zero;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub admissible: bool,
    pub finite_dimensional: bool,
    pub dimension: usize,
    pub schurian: bool,
    pub monomial: bool,
    pub gentle: bool,
    pub triangular: bool,
    pub connected: bool,
}

pub fn classify(b: &AlgebraBasis) -> ClassReport {
    let q = b.quiver();
    ClassReport {
        // a certified basis only exists for validated relations with J^m in I
        admissible: true,
        finite_dimensional: true,
        dimension: b.dimension(),
        schurian: is_schurian(b),
        monomial: b.presentation().is_monomial(),
        gentle: is_gentle(b),
        triangular: q.is_acyclic(),
        connected: q.is_connected(),
    }
}

pub fn is_schurian(b: &AlgebraBasis) -> bool {
    let q = b.quiver();
    q.vertices().all(|x| q.vertices().all(|y| b.block_dim(x, y) <= 1))
}

/// The four gentle conditions, with membership `ab in I` decided in the
/// algebra.
pub fn is_gentle(b: &AlgebraBasis) -> bool {
    let p = b.presentation();
    let q = &p.quiver;
    let degrees_ok = q
        .vertices()
        .all(|x| q.arrows_from(x).count() <= 2 && q.arrows_into(x).count() <= 2);
    let quadratic = p.relations.iter().all(|r| r.is_monomial() && r.terms[0].1.len() == 2);
    if !degrees_ok || !quadratic {
        return false;
    }
    let zero = |a: ArrowId, c: ArrowId| {
        let path = q.path(q.source(a), &[a, c]).expect("composable");
        b.is_zero_path(&path)
    };
    q.arrows().all(|a| {
        let after: Vec<ArrowId> = q.arrows_from(q.target(a)).collect();
        let before: Vec<ArrowId> = q.arrows_into(q.source(a)).collect();
        let nonzero_after = after.iter().filter(|&&c| !zero(a, c)).count();
        let zero_after = after.len() - nonzero_after;
        let nonzero_before = before.iter().filter(|&&c| !zero(c, a)).count();
        let zero_before = before.len() - nonzero_before;
        nonzero_after <= 1 && zero_after <= 1 && nonzero_before <= 1 && zero_before <= 1
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TiltedType {
    TypeA,
    TypeATilde,
    NotApplicable,
}

/// Which of the gentle tilted families the presentation belongs to, judged
/// from the shape of its quiver and its zero relations.
pub fn gentle_tilted_type(p: &Presentation) -> TiltedType {
    match compute_basis(p, DEFAULT_MAX_LEN) {
        Ok(b) => gentle_tilted_type_of(&b),
        Err(_) => TiltedType::NotApplicable,
    }
}

pub fn gentle_tilted_type_of(b: &AlgebraBasis) -> TiltedType {
    let q = b.quiver();
    if !is_gentle(b) || !q.is_connected() || !q.is_acyclic() {
        return TiltedType::NotApplicable;
    }
    if has_overlapping_zero_relations(b.presentation()) || find_double_zero(b).is_some() {
        return TiltedType::NotApplicable;
    }
    match q.unoriented_cycle_count() {
        0 => TiltedType::TypeA,
        1 => {
            let cycle = q.cycle_vertices();
            let attached: Vec<ArrowId> = q
                .arrows()
                .filter(|&a| cycle.contains(&q.source(a)) != cycle.contains(&q.target(a)))
                .collect();
            let all_enter = attached.iter().all(|&a| cycle.contains(&q.target(a)));
            let all_leave = attached.iter().all(|&a| cycle.contains(&q.source(a)));
            if all_enter || all_leave {
                TiltedType::TypeATilde
            } else {
                TiltedType::NotApplicable
            }
        }
        _ => TiltedType::NotApplicable,
    }
}

/// Zero relations `a.b` and `b.c` sharing the arrow `b`.
pub fn has_overlapping_zero_relations(p: &Presentation) -> bool {
    let zeros: Vec<&[ArrowId]> = p
        .relations
        .iter()
        .filter(|r| r.is_monomial())
        .map(|r| r.terms[0].1.arrows.as_slice())
        .collect();
    zeros.iter().any(|r1| zeros.iter().any(|r2| r1.last() == r2.first()))
}

/// A double zero: zero relations `a.b` and `c.d` joined by a reduced walk
/// `a b w c d` whose middle part `w` has only nonzero directed runs.
/// Returns the two relation indices and the joining walk.
pub fn find_double_zero(b: &AlgebraBasis) -> Option<(usize, usize, Walk)> {
    let p = b.presentation();
    let q = &p.quiver;
    let zeros: Vec<(usize, ArrowId, ArrowId)> = p
        .relations
        .iter()
        .enumerate()
        .filter(|(_, r)| r.is_monomial() && r.terms[0].1.len() == 2)
        .map(|(i, r)| (i, r.terms[0].1.arrows[0], r.terms[0].1.arrows[1]))
        .collect();
    let max_len = 2 * q.arrow_count();
    for &(i, _, second) in &zeros {
        let mut hit = None;
        let walk = search_walk(
            q,
            q.target(second),
            Some(Step::forward(second)),
            max_len,
            |_| true,
            |run| !b.is_zero_path(run),
            |v, last| {
                let found = zeros.iter().find(|&&(_, first, _)| {
                    q.source(first) == v
                        && last
                            != Some(Step {
                                arrow: first,
                                direction: Direction::Inverse,
                            })
                });
                if let Some(&(j, _, _)) = found {
                    hit = Some(j);
                    true
                } else {
                    false
                }
            },
        );
        if let (Some(w), Some(j)) = (walk, hit) {
            return Some((i, j, w));
        }
    }
    None
}

/// Matrix of `z -> (z a - a z)` for `z` in the local blocks `e_x B e_x`,
/// one column per local basis element and one row per coordinate of every
/// arrow block. Returns the matrix and the local basis indices.
pub fn commutator_matrix(b: &AlgebraBasis) -> (RationalMatrix, Vec<usize>) {
    let q = b.quiver();
    let local: Vec<usize> = q.vertices().flat_map(|x| b.block(x, x).to_vec()).collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in q.arrows() {
        let arrow = b.reduce(&q.arrow_path(a));
        let coords = b.block(q.source(a), q.target(a));
        let images: Vec<Element> = local
            .iter()
            .map(|&z| {
                let z = Element::basis(z);
                b.mul(&z, &arrow).sub(&b.mul(&arrow, &z))
            })
            .collect();
        for &k in coords {
            rows.push(images.iter().map(|img| img.coeff(k)).collect());
        }
    }
    let rows: Vec<Vec<Rational>> = rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    (RationalMatrix::from_rows(local.len(), rows), local)
}

/// Dimension of the center of the algebra.
pub fn center_dim(b: &AlgebraBasis) -> usize {
    let (m, local) = commutator_matrix(b);
    local.len() - crate::linalg::rank(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn basis(p: &Presentation) -> AlgebraBasis {
        compute_basis(p, DEFAULT_MAX_LEN).unwrap()
    }

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

    fn kronecker() -> Presentation {
        Presentation::hereditary(Quiver::from_names(&["x", "y"], &[("a", "x", "y"), ("b", "x", "y")]).unwrap())
    }

    fn a2() -> Presentation {
        Presentation::hereditary(Quiver::from_names(&["1", "2"], &[("alpha", "1", "2")]).unwrap())
    }

    #[test]
    fn bound_cycle_flags() {
        let r = classify(&basis(&bound_cycle()));
        assert!(r.schurian && r.monomial && r.gentle && !r.triangular && r.connected);
        assert_eq!(r.dimension, 6);
    }

    #[test]
    fn kronecker_flags() {
        let r = classify(&basis(&kronecker()));
        assert!(!r.schurian);
        assert!(r.gentle && r.monomial && r.triangular);
    }

    #[test]
    fn a2_flags() {
        let r = classify(&basis(&a2()));
        assert!(r.schurian && r.monomial && r.gentle && r.triangular);
    }

    #[test]
    fn centers() {
        assert_eq!(center_dim(&basis(&bound_cycle())), 1);
        let point = Presentation::hereditary(Quiver::from_names(&["x"], &[]).unwrap());
        assert_eq!(center_dim(&basis(&point)), 1);
        let q = Quiver::from_names(&["x"], &[("l", "x", "x")]).unwrap();
        let dual_numbers = Presentation::hereditary(q).with_zero(&["l", "l"]).unwrap();
        assert_eq!(center_dim(&basis(&dual_numbers)), 2);
        assert_eq!(center_dim(&basis(&kronecker())), 1);
    }

    #[test]
    fn three_arrows_out_is_not_gentle() {
        let q = Quiver::from_names(
            &["0", "1", "2", "3"],
            &[("a", "0", "1"), ("b", "0", "2"), ("c", "0", "3")],
        )
        .unwrap();
        assert!(!is_gentle(&basis(&Presentation::hereditary(q))));
    }

    #[test]
    fn two_nonzero_continuations_is_not_gentle() {
        let q = Quiver::from_names(
            &["0", "1", "2", "3"],
            &[("a", "0", "1"), ("b", "1", "2"), ("c", "1", "3")],
        )
        .unwrap();
        assert!(!is_gentle(&basis(&Presentation::hereditary(q.clone()))));
        let fixed = Presentation::hereditary(q).with_zero(&["a", "b"]).unwrap();
        assert!(is_gentle(&basis(&fixed)));
    }

    #[test]
    fn double_zero_along_a_line() {
        // 1 -a-> 2 -b-> 3 -c-> 4 -d-> 5 -e-> 6, zeros a.b and d.e, joined by c
        let q = Quiver::from_names(
            &["1", "2", "3", "4", "5", "6"],
            &[
                ("a", "1", "2"),
                ("b", "2", "3"),
                ("c", "3", "4"),
                ("d", "4", "5"),
                ("e", "5", "6"),
            ],
        )
        .unwrap();
        let p = Presentation::hereditary(q)
            .with_zero(&["a", "b"])
            .unwrap()
            .with_zero(&["d", "e"])
            .unwrap();
        let b = basis(&p);
        let (i, j, w) = find_double_zero(&b).unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(w.display(b.quiver()), "c");
        assert_eq!(gentle_tilted_type(&p), TiltedType::NotApplicable);
    }

    #[test]
    fn zigzag_is_type_a() {
        // two relations sharing a source, as in the first members of the
        // zigzag family
        let q = Quiver::from_names(
            &["s", "m1", "t1", "m2", "t2"],
            &[
                ("a1", "s", "m1"),
                ("b1", "m1", "t1"),
                ("a2", "s", "m2"),
                ("b2", "m2", "t2"),
            ],
        )
        .unwrap();
        let p = Presentation::hereditary(q)
            .with_zero(&["a1", "b1"])
            .unwrap()
            .with_zero(&["a2", "b2"])
            .unwrap();
        assert_eq!(gentle_tilted_type(&p), TiltedType::TypeA);
    }

    #[test]
    fn overlapping_zeros_rejected() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "4")],
        )
        .unwrap();
        let p = Presentation::hereditary(q)
            .with_zero(&["a", "b"])
            .unwrap()
            .with_zero(&["b", "c"])
            .unwrap();
        assert!(has_overlapping_zero_relations(&p));
        assert_eq!(gentle_tilted_type(&p), TiltedType::NotApplicable);
    }

    #[test]
    fn hereditary_cycles() {
        assert_eq!(gentle_tilted_type(&kronecker()), TiltedType::TypeATilde);
        assert_eq!(gentle_tilted_type(&a2()), TiltedType::TypeA);
        // oriented cycle is not triangular
        assert_eq!(gentle_tilted_type(&bound_cycle()), TiltedType::NotApplicable);
    }
}
