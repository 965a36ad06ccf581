use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::error::{definition, Error, Result};
use crate::finring::{AlgebraMap, AlgebraPresentation, CompiledPoly, Elem, FiniteRing, RingHom};
use crate::fintop::FiniteMap;

use super::topring::TopRing;

/// An assignment of ring elements to the variables of a presentation.
pub type AffinePoint = Vec<Elem>;

/// Caps on brute-force enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Partial assignments visited during a single hom-set search.
    pub max_candidates: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_candidates: 1_000_000,
        }
    }
}

struct Search<'a> {
    ring: &'a FiniteRing,
    n: usize,
    // relations grouped by the last variable they mention
    checks: Vec<Vec<CompiledPoly>>,
    visited: &'a AtomicU64,
    limit: u64,
}

impl Search<'_> {
    fn visit(&self) -> Result<()> {
        if self.visited.fetch_add(1, Ordering::Relaxed) + 1 > self.limit {
            return Err(Error::Resource {
                what: "hom-set candidates".into(),
                limit: self.limit,
            });
        }
        Ok(())
    }

    fn ok_at(&self, depth: usize, assignment: &[Elem]) -> bool {
        self.checks[depth]
            .iter()
            .all(|p| p.eval(self.ring, assignment) == self.ring.zero())
    }

    fn extend(
        &self,
        depth: usize,
        assignment: &mut Vec<Elem>,
        out: &mut Vec<AffinePoint>,
    ) -> Result<()> {
        if depth == self.n {
            out.push(assignment.clone());
            return Ok(());
        }
        for r in self.ring.elements() {
            self.visit()?;
            assignment[depth] = r;
            if self.ok_at(depth + 1, assignment) {
                self.extend(depth + 1, assignment, out)?;
            }
        }
        assignment[depth] = 0;
        Ok(())
    }
}

/// All `k`-algebra maps `A → ring` (through `structure`), as assignments in
/// lexicographic order.
pub fn hom_points(
    a: &AlgebraPresentation,
    ring: &FiniteRing,
    structure: &RingHom,
    limits: SearchLimits,
) -> Result<Vec<AffinePoint>> {
    if structure.source() != a.base() || structure.target() != ring {
        return Err(definition(format!(
            "structure map {} → {} does not match algebra over {} and ring {}",
            structure.source().label(),
            structure.target().label(),
            a.base().label(),
            ring.label()
        )));
    }
    let n = a.num_variables();
    // checks[d] holds relations whose variables all lie below d
    let mut checks: Vec<Vec<CompiledPoly>> = (0..=n).map(|_| Vec::new()).collect();
    for r in a.relations() {
        let d = r.max_variable().map_or(0, |m| m + 1);
        checks[d].push(CompiledPoly::new(r, structure));
    }
    let visited = AtomicU64::new(0);
    let search = Search {
        ring,
        n,
        checks,
        visited: &visited,
        limit: limits.max_candidates,
    };
    if !search.ok_at(0, &vec![ring.zero(); n]) {
        return Ok(Vec::new());
    }
    if n == 0 {
        return Ok(vec![Vec::new()]);
    }
    let branches: Vec<Result<Vec<AffinePoint>>> = ring
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|r| {
            let mut out = Vec::new();
            let mut assignment = vec![ring.zero(); n];
            search.visit()?;
            assignment[0] = r;
            if search.ok_at(1, &assignment) {
                search.extend(1, &mut assignment, &mut out)?;
            }
            Ok(out)
        })
        .collect();
    let mut points = Vec::new();
    for b in branches {
        points.extend(b?);
    }
    Ok(points)
}

/// `X(R) = Hom_k(A, R)` for a topological ring.
pub fn hom_set(
    a: &AlgebraPresentation,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<Vec<AffinePoint>> {
    hom_points(a, r.ring(), r.structure(), limits)
}

/// Sends each `f ∈ a_points` to `f ∘ φ`, located inside `b_points` (both sorted).
pub fn induced_map_on(
    phi: &AlgebraMap,
    a_points: &[AffinePoint],
    b_points: &[AffinePoint],
    structure: &RingHom,
) -> Result<FiniteMap> {
    let ring = structure.target();
    let images: Vec<CompiledPoly> = phi
        .images()
        .iter()
        .map(|p| CompiledPoly::new(p, structure))
        .collect();
    let mut table = Vec::with_capacity(a_points.len());
    for f in a_points {
        let g: AffinePoint = images.iter().map(|p| p.eval(ring, f)).collect();
        match b_points.binary_search(&g) {
            Ok(i) => table.push(i),
            Err(_) => {
                return Err(definition(format!(
                    "algebra map sends point {f:?} to {g:?}, which violates the source relations"
                )))
            }
        }
    }
    FiniteMap::new(a_points.len(), b_points.len(), table)
}

/// The map `Hom(A, R) → Hom(B, R)` induced by `φ: B → A`.
pub fn induced_map(
    phi: &AlgebraMap,
    a: &AlgebraPresentation,
    b: &AlgebraPresentation,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<FiniteMap> {
    AlgebraMap::new(b, a, phi.images().to_vec())?;
    let ap = hom_set(a, r, limits)?;
    let bp = hom_set(b, r, limits)?;
    induced_map_on(phi, &ap, &bp, r.structure())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(n: usize) -> TopRing {
        TopRing::discrete(&FiniteRing::zmod(n).unwrap()).unwrap()
    }

    #[test]
    fn hom_set_examples() {
        let r = disc(6);
        let k = r.base().clone();
        let idem = AlgebraPresentation::parse(&k, &["x"], &["x^2 - x"]).unwrap();
        let pts = hom_set(&idem, &r, SearchLimits::default()).unwrap();
        assert_eq!(pts, vec![vec![0], vec![1], vec![3], vec![4]]);

        let gm = AlgebraPresentation::parse(&k, &["x", "y"], &["x*y - 1"]).unwrap();
        assert_eq!(
            hom_set(&gm, &r, SearchLimits::default()).unwrap(),
            vec![vec![1, 1], vec![5, 5]]
        );

        let pt = AlgebraPresentation::free(&k, &[]).unwrap();
        assert_eq!(
            hom_set(&pt, &r, SearchLimits::default()).unwrap(),
            vec![Vec::<Elem>::new()]
        );
    }

    #[test]
    fn constant_relation_empties_the_set() {
        let r = disc(6);
        let bad = AlgebraPresentation::parse(r.base(), &["x"], &["2"]).unwrap();
        assert!(hom_set(&bad, &r, SearchLimits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn candidate_cap() {
        let r = disc(9);
        let a4 = AlgebraPresentation::free(r.base(), &["a", "b", "c", "d"]).unwrap();
        let err = hom_set(
            &a4,
            &r,
            SearchLimits {
                max_candidates: 1000,
            },
        )
        .unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        assert_eq!(
            hom_set(&a4, &r, SearchLimits::default()).unwrap().len(),
            6561
        );
    }

    #[test]
    fn induced_squaring_map() {
        let r = TopRing::adic(&FiniteRing::zmod(4).unwrap(), &[2]).unwrap();
        let a = AlgebraPresentation::free(r.base(), &["T"]).unwrap();
        let phi = AlgebraMap::parse(&a, &a, &["T^2"]).unwrap();
        let f = induced_map(&phi, &a, &a, &r, SearchLimits::default()).unwrap();
        assert_eq!(f.table(), &[0, 1, 0, 1]);
    }

    #[test]
    fn mismatched_base_is_rejected() {
        let r = disc(6);
        let a = AlgebraPresentation::free(&FiniteRing::zmod(4).unwrap(), &["x"]).unwrap();
        assert!(hom_set(&a, &r, SearchLimits::default()).is_err());
    }
}
