use crate::error::{precondition, Error, Result};
use crate::finring::{
    is_local, localize_presentation, pushout_presentation, AlgebraMap, AlgebraPresentation,
    FiniteRing, Polynomial, RingHom,
};
use crate::fintop::{FiniteMap, FiniteTopology, PointSet};
use crate::rational_points::{
    affine_topology, chart_data, hom_set, induced_map_on, Covering, PointSpace, RationalPoints,
    SchemePresentation, SearchLimits, TopRing,
};

use super::report::{AxiomReport, Witness};

fn labels_of(set: &PointSet, labels: &[String]) -> Vec<String> {
    set.iter().map(|i| labels[i].clone()).collect()
}

/// First point where two topologies on the same labelled set differ.
pub(crate) fn mismatch(
    expected: &FiniteTopology,
    actual: &FiniteTopology,
    labels: &[String],
) -> Option<Witness> {
    (0..expected.size())
        .find(|&x| expected.min_nbhd(x) != actual.min_nbhd(x))
        .map(|x| Witness::NeighborhoodMismatch {
            point: x,
            label: labels[x].clone(),
            expected: labels_of(expected.min_nbhd(x), labels),
            actual: labels_of(actual.min_nbhd(x), labels),
        })
}

/// Fibre product `X(R) ×_{Z(R)} Y(R)` is homeomorphic to `(X ×_Z Y)(R)`.
#[allow(clippy::too_many_arguments)]
pub fn check_f1_affine(
    c: &AlgebraPresentation,
    a: &AlgebraPresentation,
    b: &AlgebraPresentation,
    f: &AlgebraMap,
    g: &AlgebraMap,
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let p = pushout_presentation(c, a, b, f, g)?;
    let left = affine_topology(&p, r, limits)?;
    let xa = affine_topology(a, r, limits)?;
    let xb = affine_topology(b, r, limits)?;
    let xc = hom_set(c, r, limits)?;
    let pa = induced_map_on(f, &xa.points, &xc, r.structure())?;
    let pb = induced_map_on(g, &xb.points, &xc, r.structure())?;

    let nb = xb.len();
    let fibre = PointSet::from_indices(
        xa.len() * nb,
        (0..xa.len()).flat_map(|i| {
            let (pa, pb) = (&pa, &pb);
            (0..nb)
                .filter(move |&j| pa.apply(i) == pb.apply(j))
                .map(move |j| i * nb + j)
        }),
    );
    let right = xa.topology.product(&xb.topology).subspace(&fibre)?;
    let fibre_index: Vec<usize> = fibre.to_vec();

    let na = a.num_variables();
    let mut table = Vec::with_capacity(left.len());
    for pt in &left.points {
        let i = xa.points.binary_search(&pt[..na].to_vec());
        let j = xb.points.binary_search(&pt[na..].to_vec());
        let (Ok(i), Ok(j)) = (i, j) else {
            return Err(Error::Invariant(format!(
                "pushout point {pt:?} does not split into factor points"
            )));
        };
        let pos = fibre_index.binary_search(&(i * nb + j)).map_err(|_| {
            Error::Invariant(format!("pushout point {pt:?} is not in the fibre product"))
        })?;
        table.push(pos);
    }
    let canonical = FiniteMap::new(left.len(), fibre_index.len(), table)?;
    if !canonical.is_bijective() {
        return Err(Error::Invariant(
            "canonical map onto the fibre product is not bijective".into(),
        ));
    }
    let transported = left.topology.transport(&canonical)?;
    let right_labels: Vec<String> = {
        let inv = canonical.inverse()?;
        (0..fibre_index.len())
            .map(|q| left.labels[inv.apply(q)].clone())
            .collect()
    };
    Ok(match mismatch(&right, &transported, &right_labels) {
        None => AxiomReport::pass("F1", r.label(), probe),
        Some(w) => AxiomReport::fail("F1", r.label(), probe, w),
    })
}

/// `𝔸¹(R) → R`, `f ↦ f(T)` is a homeomorphism.
pub fn check_f2(r: &TopRing, limits: SearchLimits) -> Result<AxiomReport> {
    let a1 = AlgebraPresentation::free(r.base(), &["T"])?;
    let space = affine_topology(&a1, r, limits)?;
    // points of k[T] are [0], [1], …, so ev_T is the identity on indices
    let ev = FiniteMap::new(
        space.len(),
        r.ring().size(),
        space.points.iter().map(|p| p[0]).collect(),
    )?;
    let pushed = space.topology.transport(&ev)?;
    let labels: Vec<String> = r
        .ring()
        .elements()
        .map(|e| r.ring().element_label(e).to_string())
        .collect();
    Ok(match mismatch(r.topology(), &pushed, &labels) {
        None => AxiomReport::pass("F2", r.label(), "A1"),
        Some(w) => AxiomReport::fail("F2", r.label(), "A1", w),
    })
}

type Space = PointSpace<Vec<usize>>;

fn inclusion_space(
    sub: &AlgebraPresentation,
    ambient: &AlgebraPresentation,
    images: Vec<Polynomial>,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<(Space, Space, FiniteMap)> {
    let phi = AlgebraMap::new(ambient, sub, images)?;
    let y = affine_topology(sub, r, limits)?;
    let x = affine_topology(ambient, r, limits)?;
    let map = induced_map_on(&phi, &y.points, &x.points, r.structure())?;
    Ok((y, x, map))
}

/// The closed subscheme cut out by `extra` maps onto a closed subspace.
pub fn check_f3(
    a: &AlgebraPresentation,
    extra: &[Polynomial],
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let y_pres = a.with_relations(extra)?;
    let images = (0..a.num_variables())
        .map(|i| y_pres.variable(i))
        .collect::<Result<Vec<_>>>()?;
    let (y, x, incl) = inclusion_space(&y_pres, a, images, r, limits)?;
    let flags = incl.classify(&y.topology, &x.topology)?;
    if flags.closed_embedding {
        return Ok(AxiomReport::pass("F3", r.label(), probe));
    }
    let witness = if !flags.embedding {
        let point = incl
            .non_embedding_point(&y.topology, &x.topology)?
            .unwrap_or(0);
        Witness::NotEmbedding {
            point,
            label: y.labels[point].clone(),
        }
    } else {
        let image = incl.full_image();
        Witness::NotClosed {
            labels: labels_of(&image, &x.labels),
            image: image.to_vec(),
        }
    };
    Ok(AxiomReport::fail("F3", r.label(), probe, witness))
}

/// The principal open `D(h)` maps onto an open subspace, homeomorphically.
pub fn check_f4star(
    a: &AlgebraPresentation,
    h: &Polynomial,
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let y_pres = localize_presentation(a, h)?;
    let images = (0..a.num_variables())
        .map(|i| y_pres.variable(i))
        .collect::<Result<Vec<_>>>()?;
    let (y, x, incl) = inclusion_space(&y_pres, a, images, r, limits)?;
    let flags = incl.classify(&y.topology, &x.topology)?;
    if flags.embedding && flags.open {
        return Ok(AxiomReport::pass("F4*", r.label(), probe));
    }
    let image = incl.full_image();
    let witness = if !x.topology.is_open(&image) {
        Witness::NotOpen {
            labels: labels_of(&image, &x.labels),
            image: image.to_vec(),
        }
    } else if !flags.embedding {
        let point = incl
            .non_embedding_point(&y.topology, &x.topology)?
            .unwrap_or(0);
        Witness::NotEmbedding {
            point,
            label: y.labels[point].clone(),
        }
    } else {
        let point = incl.non_open_point(&y.topology, &x.topology)?.unwrap_or(0);
        let img = incl.image(y.topology.min_nbhd(point));
        Witness::NotOpen {
            labels: labels_of(&img, &x.labels),
            image: img.to_vec(),
        }
    };
    Ok(AxiomReport::fail("F4*", r.label(), probe, witness))
}

fn resolve_covering(x: &SchemePresentation, covering: Option<&Covering>) -> Covering {
    covering.cloned().unwrap_or_else(|| Covering::charts(x))
}

/// Every `R`-point lies in a single covering piece.
pub fn check_local_coverage(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let covering = resolve_covering(x, covering);
    let points = RationalPoints::new(x, r.ring(), r.structure(), limits)?;
    points.validate_covering(&covering)?;
    Ok(match points.uncovered_point(&covering)? {
        None => AxiomReport::pass("local-coverage", r.label(), probe),
        Some(i) => AxiomReport::fail(
            "local-coverage",
            r.label(),
            probe,
            Witness::Uncovered {
                point: i,
                label: points.label(&points.points()[i]),
            },
        ),
    })
}

/// Openness is detected on the covering pieces: the final topology along
/// the piece inclusions equals the chart topology.
pub fn check_f5(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let covering = resolve_covering(x, covering);
    let coverage = check_local_coverage(x, Some(&covering), r, probe, limits)?;
    if !coverage.passed() {
        return Ok(AxiomReport {
            axiom: "F5".into(),
            ..coverage
        });
    }
    let data = chart_data(x, Some(&covering), r, limits)?;
    let mut maps = Vec::new();
    let mut spaces = Vec::new();
    for piece in covering.pieces() {
        let space = affine_topology(&piece.presentation, r, limits)?;
        maps.push(data.points.piece_inclusion(piece, &space.points)?);
        spaces.push(space);
    }
    let tops: Vec<&FiniteTopology> = spaces.iter().map(|s| &s.topology).collect();
    let glued = FiniteTopology::final_topology(data.points.len(), &maps, &tops)?;
    let labels = data.points.labels();
    Ok(match mismatch(&data.topology, &glued, &labels) {
        None => AxiomReport::pass("F5", r.label(), probe),
        Some(w) => AxiomReport::fail("F5", r.label(), probe, w),
    })
}

/// `Ψ_R: U(R) → X(R)` is surjective and open for the chart topology.
pub fn check_f6(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    let data = chart_data(x, covering, r, limits)?;
    let labels = data.points.labels();
    let image = data.psi.full_image();
    if let Some(missing) = (0..data.points.len()).find(|&i| !image.contains(i)) {
        return Ok(AxiomReport::fail(
            "F6",
            r.label(),
            probe,
            Witness::NotSurjective {
                point: missing,
                label: labels[missing].clone(),
            },
        ));
    }
    Ok(
        match data
            .psi
            .non_open_point(&data.cover.topology, &data.topology)?
        {
            None => AxiomReport::pass("F6", r.label(), probe),
            Some(u) => {
                let img = data.psi.image(data.cover.topology.min_nbhd(u));
                AxiomReport::fail(
                    "F6",
                    r.label(),
                    probe,
                    Witness::ImageNotOpen {
                        point: u,
                        label: data.cover.labels[u].clone(),
                        image: labels_of(&img, &labels),
                    },
                )
            }
        },
    )
}

/// Projection of a product ring onto factor `t`.
fn product_projection(product: &FiniteRing, factors: &[&FiniteRing], t: usize) -> Result<RingHom> {
    let stride: usize = factors[t + 1..].iter().map(|f| f.size()).product();
    let size = factors[t].size();
    RingHom::new(
        product.clone(),
        factors[t].clone(),
        product.elements().map(|e| (e / stride) % size).collect(),
    )
}

/// For a finite product of local topological rings, the chart topology on
/// `X(∏ R_t)` is the product of the chart topologies on the `X(R_t)`.
pub fn check_product_analog(
    x: &SchemePresentation,
    factors: &[TopRing],
    probe: &str,
    limits: SearchLimits,
) -> Result<AxiomReport> {
    if factors.is_empty() {
        return Err(precondition("product of an empty factor list"));
    }
    if let Some(f) = factors.iter().find(|f| !is_local(f.ring())) {
        return Err(precondition(format!(
            "factor {} is not a local ring",
            f.label()
        )));
    }
    let k = x.base();
    let factors = factors
        .iter()
        .map(|f| f.with_base(k))
        .collect::<Result<Vec<_>>>()?;
    let product = TopRing::product(&factors)?.with_base(k)?;
    let whole = chart_data(x, None, &product, limits)?;
    let parts = factors
        .iter()
        .map(|f| chart_data(x, None, f, limits))
        .collect::<Result<Vec<_>>>()?;

    let rings: Vec<&FiniteRing> = factors.iter().map(|f| f.ring()).collect();
    let mut index = vec![0usize; whole.points.len()];
    for (t, part) in parts.iter().enumerate() {
        let proj = product_projection(product.ring(), &rings, t)?;
        let m = whole.points.map_along(&proj, &part.points)?;
        for (p, slot) in index.iter_mut().enumerate() {
            *slot = *slot * part.points.len() + m.apply(p);
        }
    }
    let total: usize = parts.iter().map(|p| p.points.len()).product();
    let bijection = FiniteMap::new(whole.points.len(), total, index)?;
    if !bijection.is_bijective() {
        return Err(Error::Invariant(
            "points over the product ring do not match tuples of factor points".into(),
        ));
    }
    let tops: Vec<FiniteTopology> = parts.iter().map(|p| p.topology.clone()).collect();
    let expected = FiniteTopology::product_all(&tops);
    let actual = whole.topology.transport(&bijection)?;
    let inv = bijection.inverse()?;
    let whole_labels = whole.points.labels();
    let labels: Vec<String> = (0..total)
        .map(|q| whole_labels[inv.apply(q)].clone())
        .collect();
    Ok(match mismatch(&expected, &actual, &labels) {
        None => AxiomReport::pass("product-analog", product.label(), probe),
        Some(w) => AxiomReport::fail("product-analog", product.label(), probe, w),
    })
}
