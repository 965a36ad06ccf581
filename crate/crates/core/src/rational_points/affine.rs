use rayon::prelude::*;

use crate::error::{precondition, Error, Result};
use crate::finring::{AlgebraPresentation, CompiledPoly, Elem, FiniteRing};
use crate::fintop::{FiniteTopology, PointSet};

use super::homs::{hom_set, AffinePoint, SearchLimits};
use super::topring::TopRing;

/// A finite set of points with display labels and a topology on their indices.
#[derive(Clone, Debug)]
pub struct PointSpace<P> {
    pub points: Vec<P>,
    pub labels: Vec<String>,
    pub topology: FiniteTopology,
}

impl<P> PointSpace<P> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Display label of an affine point: `x=1,y=3`, or `pt` without variables.
pub fn affine_label(variables: &[String], point: &[Elem], ring: &FiniteRing) -> String {
    if variables.is_empty() {
        return "pt".to_string();
    }
    variables
        .iter()
        .zip(point)
        .map(|(v, &x)| format!("{v}={}", ring.element_label(x)))
        .collect::<Vec<_>>()
        .join(",")
}

fn satisfies(a: &AlgebraPresentation, r: &TopRing, p: &[Elem]) -> bool {
    p.len() == a.num_variables()
        && a.relations()
            .iter()
            .all(|rel| CompiledPoly::new(rel, r.structure()).eval(r.ring(), p) == r.ring().zero())
}

/// Decides `g ∈ N(f)` for the affine topology without checking the inputs.
///
/// The pairs `(a(g), a(f))` for `a ∈ A` form the subring of `R × R`
/// generated by the constants and the coordinate pairs; `g ∈ N(f)` iff each
/// such pair has `a(g)` in the minimal neighbourhood of `a(f)`.
fn specializes(r: &TopRing, g: &[Elem], f: &[Elem]) -> bool {
    let ring = r.ring();
    let top = r.topology();
    let n = ring.size();
    let good = |u: Elem, v: Elem| top.min_nbhd(v).contains(u);
    let mut seen = PointSet::empty(n * n);
    let mut elems: Vec<(Elem, Elem)> = Vec::new();
    let push = |u: Elem, v: Elem, seen: &mut PointSet, elems: &mut Vec<(Elem, Elem)>| -> bool {
        if seen.insert(u * n + v) {
            elems.push((u, v));
            return good(u, v);
        }
        true
    };
    for c in r.structure().table() {
        if !push(*c, *c, &mut seen, &mut elems) {
            return false;
        }
    }
    for (&u, &v) in g.iter().zip(f) {
        if !push(u, v, &mut seen, &mut elems) {
            return false;
        }
    }
    let mut i = 0;
    while i < elems.len() {
        let (u1, v1) = elems[i];
        for j in 0..=i {
            let (u2, v2) = elems[j];
            if !push(ring.add(u1, u2), ring.add(v1, v2), &mut seen, &mut elems)
                || !push(ring.mul(u1, u2), ring.mul(v1, v2), &mut seen, &mut elems)
            {
                return false;
            }
        }
        i += 1;
    }
    true
}

/// Whether `g` lies in every affine-open neighbourhood of `f` in `Hom(A, R)`.
pub fn affine_specialization(
    a: &AlgebraPresentation,
    r: &TopRing,
    g: &AffinePoint,
    f: &AffinePoint,
) -> Result<bool> {
    for p in [g, f] {
        if !satisfies(a, r, p) {
            return Err(precondition(format!("{p:?} is not a point of the algebra")));
        }
    }
    Ok(specializes(r, g, f))
}

/// Affine topology on the given points of `Hom(A, R)`.
pub fn affine_topology_on(points: &[AffinePoint], r: &TopRing) -> Result<FiniteTopology> {
    let m = points.len();
    let nbhds: Vec<PointSet> = points
        .par_iter()
        .map(|f| PointSet::from_indices(m, (0..m).filter(|&g| specializes(r, &points[g], f))))
        .collect();
    FiniteTopology::from_min_nbhds(nbhds)
        .map_err(|e| Error::Invariant(format!("affine specialization is not a preorder: {e}")))
}

/// `Hom(A, R)` with the coarsest topology making every evaluation map continuous.
pub fn affine_topology(
    a: &AlgebraPresentation,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<PointSpace<AffinePoint>> {
    let points = hom_set(a, r, limits)?;
    let topology = affine_topology_on(&points, r)?;
    let labels = points
        .iter()
        .map(|p| affine_label(a.variables(), p, r.ring()))
        .collect();
    Ok(PointSpace {
        points,
        labels,
        topology,
    })
}
