//! Bound quiver presentations `kQ/I`.

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::quiver::{Path, Quiver, VertexId};
use num::{One, Zero};
use std::collections::HashSet;
use std::fmt;

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rational, Path)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rational, Path)>) -> Self {
        Self { terms }
    }

    /// A zero relation consisting of a single path.
    pub fn monomial(path: Path) -> Self {
        Self {
            terms: vec![(Rational::one(), path)],
        }
    }

    /// `path_a - path_b`.
    pub fn commutativity(a: Path, b: Path) -> Self {
        Self {
            terms: vec![(Rational::one(), a), (-Rational::one(), b)],
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() == 2
    }

    pub fn source(&self) -> VertexId {
        self.terms[0].1.source
    }

    pub fn target(&self) -> VertexId {
        self.terms[0].1.target
    }

    /// All terms have the same length.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.len() == w[1].1.len())
    }

    pub fn min_len(&self) -> usize {
        self.terms.iter().map(|(_, p)| p.len()).min().unwrap_or(0)
    }

    pub fn display(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (i, (c, p)) in self.terms.iter().enumerate() {
            let negative = *c < Rational::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if !magnitude.is_one() {
                out.push_str(&format!("{magnitude}*"));
            }
            out.push_str(&q.display_path(p));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Self {
        Self { quiver, relations }
    }

    pub fn hereditary(quiver: Quiver) -> Self {
        Self::new(quiver, Vec::new())
    }

    /// Adds the zero relation given by a dotted list of arrow names.
    pub fn with_zero(mut self, arrows: &[&str]) -> Result<Self> {
        let p = self.quiver.path_from_names(arrows)?;
        self.relations.push(Relation::monomial(p));
        Ok(self)
    }

    pub fn is_monomial(&self) -> bool {
        self.relations.iter().all(Relation::is_monomial)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Relation::is_homogeneous)
    }

    /// Fails with the first diagnostic when the presentation is invalid.
    pub fn check(&self) -> Result<()> {
        match validate(self).into_iter().next() {
            None => Ok(()),
            Some(d) => Err(Error::InvalidPresentation(d.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub relation: Option<usize>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Some(i) => write!(f, "relation {i}: {}", self.message),
            None => write!(f, "{}", self.message),
        }
    }
}

/// Checks every relation: nonempty, nonzero coefficients, distinct parallel
/// terms of length >= 2 whose arrows exist and compose.
pub fn validate(p: &Presentation) -> Vec<Diagnostic> {
    let q = &p.quiver;
    let mut out = Vec::new();
    let mut push = |i: usize, msg: &str| {
        out.push(Diagnostic {
            relation: Some(i),
            message: msg.to_string(),
        })
    };
    for (i, rel) in p.relations.iter().enumerate() {
        if rel.terms.is_empty() {
            push(i, "empty relation");
            continue;
        }
        let resolves = rel.terms.iter().all(|(_, path)| {
            path.source.0 < q.vertex_count()
                && path.arrows.iter().all(|a| a.0 < q.arrow_count())
                && q.path(path.source, &path.arrows).is_ok_and(|r| r == *path)
        });
        if !resolves {
            push(i, "path does not resolve in the quiver");
            continue;
        }
        if rel.terms.iter().any(|(c, _)| c.is_zero()) {
            push(i, "zero coefficient");
        }
        if rel.terms.iter().any(|(_, path)| path.len() < 2) {
            push(i, "relation term of length < 2");
        }
        let first = &rel.terms[0].1;
        if rel.terms.iter().any(|(_, path)| !path.is_parallel_to(first)) {
            push(i, "terms not parallel");
        }
        let distinct: HashSet<&Path> = rel.terms.iter().map(|(_, path)| path).collect();
        if distinct.len() != rel.terms.len() {
            push(i, "repeated term path");
        }
    }
    out
}

/// `sum v_x^2 - sum_{arrows x->y} v_x v_y + sum_{relations x->y} v_x v_y`.
pub fn tits_form(p: &Presentation, v: &[i64]) -> Result<Rational> {
    let q = &p.quiver;
    if v.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: q.vertex_count(),
            actual: v.len(),
        });
    }
    let mut total: i128 = v.iter().map(|&x| i128::from(x) * i128::from(x)).sum();
    for a in q.arrows() {
        total -= i128::from(v[q.source(a).0]) * i128::from(v[q.target(a).0]);
    }
    for rel in &p.relations {
        total += i128::from(v[rel.source().0]) * i128::from(v[rel.target().0]);
    }
    Ok(Rational::from_integer(total.into()))
}

/// Convenience: `c * path` with an integer coefficient.
pub fn term(c: i64, path: Path) -> (Rational, Path) {
    (rat(c), path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::ArrowId;

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

    #[test]
    fn valid_cycle() {
        assert!(validate(&bound_cycle()).is_empty());
    }

    #[test]
    fn short_term_rejected() {
        let q = Quiver::from_names(&["1", "2"], &[("alpha", "1", "2")]).unwrap();
        let p = Presentation::new(q.clone(), vec![Relation::monomial(q.arrow_path(ArrowId(0)))]);
        let d = validate(&p);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].message, "relation term of length < 2");
    }

    #[test]
    fn non_parallel_rejected() {
        let q = Quiver::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "4")],
        )
        .unwrap();
        let ab = q.path_from_names(&["a", "b"]).unwrap();
        let cd = q.path_from_names(&["c", "d"]).unwrap();
        let p = Presentation::new(q, vec![Relation::commutativity(ab, cd)]);
        let d = validate(&p);
        assert!(d.iter().any(|d| d.message == "terms not parallel"));
    }

    #[test]
    fn tits_values() {
        let p = bound_cycle();
        assert_eq!(tits_form(&p, &[0, 1, 0]).unwrap(), rat(1));
        let a2 = Presentation::hereditary(Quiver::from_names(&["1", "2"], &[("alpha", "1", "2")]).unwrap());
        assert_eq!(tits_form(&a2, &[1, 1]).unwrap(), rat(1));
        assert!(tits_form(&a2, &[1]).is_err());
    }

    #[test]
    fn tits_value_for_parallel_zero_relations() {
        // d parallel zero paths u -> m_i -> w, v_u = -1, v_w = 1, middles 0
        for d in 1..=5usize {
            let mut names = vec!["u".to_string(), "w".to_string()];
            names.extend((0..d).map(|i| format!("m{i}")));
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let arrows: Vec<(String, String, String)> = (0..d)
                .flat_map(|i| {
                    [
                        (format!("in{i}"), "u".to_string(), format!("m{i}")),
                        (format!("out{i}"), format!("m{i}"), "w".to_string()),
                    ]
                })
                .collect();
            let arrow_refs: Vec<(&str, &str, &str)> = arrows
                .iter()
                .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
                .collect();
            let mut p = Presentation::hereditary(Quiver::from_names(&refs, &arrow_refs).unwrap());
            for i in 0..d {
                p = p.with_zero(&[&format!("in{i}"), &format!("out{i}")]).unwrap();
            }
            let mut v = vec![-1, 1];
            v.extend(std::iter::repeat(0).take(d));
            assert_eq!(tits_form(&p, &v).unwrap(), rat(2 - d as i64));
        }
    }

    #[test]
    fn relation_display() {
        let q = Quiver::from_names(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "2"), ("d", "2", "3")],
        )
        .unwrap();
        let r = Relation::new(vec![
            term(2, q.path_from_names(&["a", "b"]).unwrap()),
            (crate::linalg::ratio(-1, 3), q.path_from_names(&["c", "d"]).unwrap()),
        ]);
        assert_eq!(r.display(&q), "2*a.b - 1/3*c.d");
    }
}
