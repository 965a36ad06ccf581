use std::collections::BTreeMap;

use crate::error::{definition, Error, Result};
use crate::finring::{
    coproduct_offsets, coproduct_presentation, local_decomposition, CompiledPoly, Elem, FiniteRing,
    LocalDecomposition, RingHom,
};
use crate::fintop::{FiniteMap, FiniteTopology};

use super::affine::{affine_topology, PointSpace};
use super::homs::{hom_points, AffinePoint, SearchLimits};
use super::scheme::{CoverPiece, Covering, SchemePresentation};
use super::topring::TopRing;

/// Upper bound on the number of points assembled across local factors.
pub const MAX_POINTS: usize = 1 << 16;

/// An `R`-point of a glued scheme: for every local factor `R_j` of `R`, a
/// chart index and a point of that chart over `R_j`.
///
/// Coordinates are stored as elements of `R` (inside `e_j R`), and the chart
/// is always the least one the point's orbit under the gluings meets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemePoint {
    pub components: Vec<(usize, Vec<Elem>)>,
}

impl SchemePoint {
    /// The common chart of every component, if there is one.
    pub fn single_chart(&self) -> Option<usize> {
        let first = self.components.first()?.0;
        self.components
            .iter()
            .all(|c| c.0 == first)
            .then_some(first)
    }
}

#[derive(Debug)]
struct Factor {
    ring: FiniteRing,
    structure: RingHom,
    chart_points: Vec<Vec<AffinePoint>>,
    transitions: BTreeMap<(usize, usize), Vec<Option<usize>>>,
    // canonical factor points as (chart, index into chart_points)
    canonical: Vec<(usize, usize)>,
}

impl Factor {
    fn transition(&self, from: usize, to: usize, p: usize) -> Option<usize> {
        if from == to {
            return Some(p);
        }
        self.transitions.get(&(from, to)).and_then(|t| t[p])
    }

    fn canonical_of(&self, chart: usize, p: usize) -> (usize, usize) {
        (0..=chart)
            .find_map(|l| self.transition(chart, l, p).map(|q| (l, q)))
            .expect("a point reaches its own chart")
    }

    fn locate(&self, chart: usize, values: &[Elem]) -> Result<usize> {
        self.chart_points[chart]
            .binary_search_by(|p| p.as_slice().cmp(values))
            .map_err(|_| {
                Error::Invariant(format!(
                    "{values:?} is not a point of chart {chart} over {}",
                    self.ring.label()
                ))
            })
    }

    fn in_piece(&self, chart: usize, p: usize, piece: &CoverPiece) -> bool {
        self.transition(chart, piece.chart, p).is_some_and(|q| {
            let h = CompiledPoly::new(&piece.h, &self.structure);
            self.ring
                .is_unit(h.eval(&self.ring, &self.chart_points[piece.chart][q]))
        })
    }
}

/// The `R`-points of a glued scheme, computed factor by factor over the
/// local decomposition of `R`.
#[derive(Debug)]
pub struct RationalPoints {
    scheme: SchemePresentation,
    ring: FiniteRing,
    structure: RingHom,
    decomposition: LocalDecomposition,
    factors: Vec<Factor>,
    points: Vec<SchemePoint>,
}

impl RationalPoints {
    /// Enumerates chart points over every local factor, validates the gluing
    /// data on them and assembles canonical points.
    pub fn new(
        x: &SchemePresentation,
        ring: &FiniteRing,
        structure: &RingHom,
        limits: SearchLimits,
    ) -> Result<Self> {
        if structure.source() != x.base() || structure.target() != ring {
            return Err(definition(format!(
                "ring {} is not an algebra over the scheme's base {}",
                ring.label(),
                x.base().label()
            )));
        }
        let decomposition = local_decomposition(ring);
        let mut factors = Vec::with_capacity(decomposition.len());
        for proj in &decomposition.projections {
            factors.push(Self::factor(
                x,
                proj.target(),
                &structure.then(proj)?,
                limits,
            )?);
        }
        let mut rp = RationalPoints {
            scheme: x.clone(),
            ring: ring.clone(),
            structure: structure.clone(),
            decomposition,
            factors,
            points: Vec::new(),
        };
        rp.points = rp.assemble()?;
        Ok(rp)
    }

    fn factor(
        x: &SchemePresentation,
        ring: &FiniteRing,
        structure: &RingHom,
        limits: SearchLimits,
    ) -> Result<Factor> {
        let chart_points = x
            .charts()
            .iter()
            .map(|c| hom_points(c, ring, structure, limits))
            .collect::<Result<Vec<_>>>()?;
        let eval = |p: &crate::finring::Polynomial, a: &[Elem]| {
            CompiledPoly::new(p, structure).eval(ring, a)
        };

        let mut transitions = BTreeMap::new();
        for (&(i, l), g) in x.gluings() {
            let reverse = x.gluing(l, i).ok_or_else(|| {
                Error::Validation(format!("gluing from chart {i} to chart {l} has no reverse"))
            })?;
            let mut table = vec![None; chart_points[i].len()];
            for (pi, p) in chart_points[i].iter().enumerate() {
                let Some(inv) = ring.inverse(eval(&g.h, p)) else {
                    continue;
                };
                let mut local = p.clone();
                local.push(inv);
                let q: Vec<Elem> = g.images.iter().map(|img| eval(img, &local)).collect();
                if reverse
                    .localized
                    .relations()
                    .iter()
                    .any(|r| eval(r, &q) != ring.zero())
                {
                    return Err(Error::Validation(format!(
                        "gluing {i}→{l} sends {p:?} outside the overlap in chart {l} over {}",
                        ring.label()
                    )));
                }
                let nl = x.charts()[l].num_variables();
                let qi = chart_points[l]
                    .binary_search_by(|c| c.as_slice().cmp(&q[..nl]))
                    .map_err(|_| {
                        Error::Validation(format!(
                            "gluing {i}→{l} image {q:?} is not a chart point"
                        ))
                    })?;
                table[pi] = Some(qi);
            }
            transitions.insert((i, l), table);
        }
        let mut factor = Factor {
            ring: ring.clone(),
            structure: structure.clone(),
            chart_points,
            transitions,
            canonical: Vec::new(),
        };
        Self::validate_gluing(x, &factor)?;
        for i in 0..x.charts().len() {
            for p in 0..factor.chart_points[i].len() {
                if factor.canonical_of(i, p) == (i, p) {
                    factor.canonical.push((i, p));
                }
            }
        }
        Ok(factor)
    }

    fn validate_gluing(x: &SchemePresentation, f: &Factor) -> Result<()> {
        let m = x.charts().len();
        let label = f.ring.label();
        for (&(i, l), table) in &f.transitions {
            for (p, q) in table.iter().enumerate() {
                if let Some(q) = *q {
                    if f.transition(l, i, q) != Some(p) {
                        return Err(Error::Validation(format!(
                            "gluings {i}→{l} and {l}→{i} are not mutually inverse over {label}"
                        )));
                    }
                    for n in (0..m).filter(|&n| n != i && n != l) {
                        if let Some(r) = f.transition(l, n, q) {
                            if f.transition(i, n, p) != Some(r) {
                                return Err(Error::Validation(format!(
                                    "cocycle condition fails for charts {i}, {l}, {n} over {label}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn component(&self, j: usize, chart: usize, p: usize) -> (usize, Vec<Elem>) {
        let f = &self.factors[j];
        let (l, q) = f.canonical_of(chart, p);
        let values = f.chart_points[l][q]
            .iter()
            .map(|&v| self.decomposition.embed(j, v))
            .collect();
        (l, values)
    }

    fn assemble(&self) -> Result<Vec<SchemePoint>> {
        let total = self.factors.iter().try_fold(1usize, |acc, f| {
            acc.checked_mul(f.canonical.len())
                .filter(|&t| t <= MAX_POINTS)
        });
        if total.is_none() {
            return Err(Error::Resource {
                what: "scheme points".into(),
                limit: MAX_POINTS as u64,
            });
        }
        let per_factor: Vec<Vec<(usize, Vec<Elem>)>> = (0..self.factors.len())
            .map(|j| {
                let mut comps: Vec<_> = self.factors[j]
                    .canonical
                    .iter()
                    .map(|&(c, p)| self.component(j, c, p))
                    .collect();
                comps.sort();
                comps
            })
            .collect();
        let mut points = vec![SchemePoint {
            components: Vec::new(),
        }];
        for comps in &per_factor {
            points = points
                .into_iter()
                .flat_map(|pt| {
                    comps.iter().map(move |c| {
                        let mut next = pt.clone();
                        next.components.push(c.clone());
                        next
                    })
                })
                .collect();
        }
        Ok(points)
    }

    pub fn scheme(&self) -> &SchemePresentation {
        &self.scheme
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn structure(&self) -> &RingHom {
        &self.structure
    }

    pub fn decomposition(&self) -> &LocalDecomposition {
        &self.decomposition
    }

    pub fn points(&self) -> &[SchemePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &SchemePoint) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    /// Points of chart `chart` over the local factor `j`.
    pub fn factor_chart_points(&self, j: usize, chart: usize) -> &[AffinePoint] {
        &self.factors[j].chart_points[chart]
    }

    /// Display label: `chart0:s=2` when every factor uses one chart (the
    /// coordinates reassembled in `R`), otherwise `[chart0:s=3 | chart1:t=4]`.
    pub fn label(&self, p: &SchemePoint) -> String {
        let chart_label = |chart: usize, values: &[Elem]| {
            let vars = self.scheme.charts()[chart].variables();
            if vars.is_empty() {
                return format!("chart{chart}:pt");
            }
            let coords: Vec<String> = vars
                .iter()
                .zip(values)
                .map(|(v, &x)| format!("{v}={}", self.ring.element_label(x)))
                .collect();
            format!("chart{chart}:{}", coords.join(","))
        };
        if p.components.is_empty() {
            return "pt".to_string();
        }
        if let Some(chart) = p.single_chart() {
            let n = self.scheme.charts()[chart].num_variables();
            let values: Vec<Elem> = (0..n)
                .map(|v| {
                    p.components
                        .iter()
                        .fold(self.ring.zero(), |acc, c| self.ring.add(acc, c.1[v]))
                })
                .collect();
            return chart_label(chart, &values);
        }
        let parts: Vec<String> = p
            .components
            .iter()
            .map(|(c, v)| chart_label(*c, v))
            .collect();
        format!("[{}]", parts.join(" | "))
    }

    pub fn labels(&self) -> Vec<String> {
        self.points.iter().map(|p| self.label(p)).collect()
    }

    fn component_in_piece(
        &self,
        j: usize,
        comp: &(usize, Vec<Elem>),
        piece: &CoverPiece,
    ) -> Result<bool> {
        let f = &self.factors[j];
        let proj = &self.decomposition.projections[j];
        let values: Vec<Elem> = comp.1.iter().map(|&v| proj.apply(v)).collect();
        let p = f.locate(comp.0, &values)?;
        Ok(f.in_piece(comp.0, p, piece))
    }

    /// Checks that the pieces cover every point over every local factor.
    pub fn validate_covering(&self, covering: &Covering) -> Result<()> {
        if let Some(piece) = covering
            .pieces()
            .iter()
            .find(|p| p.presentation.base() != self.scheme.base())
        {
            return Err(definition(format!(
                "covering piece in chart {} has a different base",
                piece.chart
            )));
        }
        for (j, f) in self.factors.iter().enumerate() {
            for &(chart, p) in &f.canonical {
                if !covering
                    .pieces()
                    .iter()
                    .any(|piece| f.in_piece(chart, p, piece))
                {
                    let comp = self.component(j, chart, p);
                    return Err(Error::Validation(format!(
                        "covering misses the point {comp:?} of chart {chart} over the local factor {}",
                        f.ring.label()
                    )));
                }
            }
        }
        Ok(())
    }

    /// First point not contained in a single covering piece, if any.
    pub fn uncovered_point(&self, covering: &Covering) -> Result<Option<usize>> {
        for (idx, pt) in self.points.iter().enumerate() {
            let mut covered = false;
            for piece in covering.pieces() {
                let mut all = true;
                for (j, comp) in pt.components.iter().enumerate() {
                    if !self.component_in_piece(j, comp, piece)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(Some(idx));
            }
        }
        Ok(None)
    }

    fn factor_component(
        &self,
        j: usize,
        chart: usize,
        values_in_r: &[Elem],
    ) -> Result<(usize, Vec<Elem>)> {
        let proj = &self.decomposition.projections[j];
        let values: Vec<Elem> = values_in_r.iter().map(|&v| proj.apply(v)).collect();
        let p = self.factors[j].locate(chart, &values)?;
        Ok(self.component(j, chart, p))
    }

    fn find(&self, pt: SchemePoint) -> Result<usize> {
        self.index_of(&pt)
            .ok_or_else(|| Error::Invariant(format!("{pt:?} is not a canonical point")))
    }

    /// The point determined by an `R`-point of a single covering piece.
    pub fn piece_point(&self, piece: &CoverPiece, p: &[Elem]) -> Result<SchemePoint> {
        let n = self.scheme.charts()[piece.chart].num_variables();
        let components = (0..self.factors.len())
            .map(|j| self.factor_component(j, piece.chart, &p[..n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(SchemePoint { components })
    }

    /// `U_i(R) → X(R)` for the piece `piece`, on the given (sorted) piece points.
    pub fn piece_inclusion(
        &self,
        piece: &CoverPiece,
        piece_points: &[AffinePoint],
    ) -> Result<FiniteMap> {
        let table = piece_points
            .iter()
            .map(|p| self.find(self.piece_point(piece, p)?))
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::new(piece_points.len(), self.len(), table)
    }

    /// The point of `X(R)` determined by an `R`-point of the coproduct of the
    /// covering pieces: the idempotent coordinates select a piece per local factor.
    pub fn psi_point(&self, covering: &Covering, u: &[Elem]) -> Result<SchemePoint> {
        let pieces = covering.pieces();
        let presentations = covering.presentations();
        let offsets = coproduct_offsets(&presentations);
        let mut components = Vec::with_capacity(self.factors.len());
        for (j, proj) in self.decomposition.projections.iter().enumerate() {
            let one = proj.target().one();
            let selected: Vec<usize> = (0..pieces.len())
                .filter(|&p| proj.apply(u[p]) == one)
                .collect();
            let [p] = selected[..] else {
                return Err(Error::Invariant(format!(
                    "coproduct point {u:?} selects {} pieces over factor {j}",
                    selected.len()
                )));
            };
            let n = self.scheme.charts()[pieces[p].chart].num_variables();
            components.push(self.factor_component(
                j,
                pieces[p].chart,
                &u[offsets[p]..offsets[p] + n],
            )?);
        }
        Ok(SchemePoint { components })
    }

    /// `Ψ_R: U(R) → X(R)` on the given coproduct points.
    pub fn psi(&self, covering: &Covering, cover_points: &[AffinePoint]) -> Result<FiniteMap> {
        let table = cover_points
            .iter()
            .map(|u| self.find(self.psi_point(covering, u)?))
            .collect::<Result<Vec<_>>>()?;
        FiniteMap::new(cover_points.len(), self.len(), table)
    }

    /// `X(R) → X(S)` induced by a ring map `φ: R → S` compatible with the
    /// structure maps.
    pub fn map_along(&self, phi: &RingHom, target: &RationalPoints) -> Result<FiniteMap> {
        if phi.source() != &self.ring || phi.target() != &target.ring {
            return Err(definition("ring map does not match the point sets"));
        }
        let composed = self.structure.then(phi)?;
        if composed.table() != target.structure.table() {
            return Err(definition(
                "ring map is not compatible with the structure maps",
            ));
        }
        // factor l of S sits over the unique factor j of R with φ(e_j) ≡ 1 there
        let mut source_factor = Vec::with_capacity(target.factors.len());
        for (l, proj) in target.decomposition.projections.iter().enumerate() {
            let one = proj.target().one();
            let j = self
                .decomposition
                .idempotents
                .iter()
                .position(|&e| proj.apply(phi.apply(e)) == one)
                .ok_or_else(|| {
                    Error::Invariant(format!("no factor of the source lies under factor {l}"))
                })?;
            source_factor.push(j);
        }
        let mut table = Vec::with_capacity(self.len());
        for pt in &self.points {
            let components = source_factor
                .iter()
                .enumerate()
                .map(|(l, &j)| {
                    let (chart, values) = &pt.components[j];
                    let mapped: Vec<Elem> = values.iter().map(|&v| phi.apply(v)).collect();
                    target.factor_component(l, *chart, &mapped)
                })
                .collect::<Result<Vec<_>>>()?;
            table.push(target.find(SchemePoint { components })?);
        }
        FiniteMap::new(self.len(), target.len(), table)
    }
}

/// `X(R)` as canonical points ordered lexicographically.
pub fn scheme_points(
    x: &SchemePresentation,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<Vec<SchemePoint>> {
    Ok(RationalPoints::new(x, r.ring(), r.structure(), limits)?.points)
}

/// The coproduct of the covering pieces, its `R`-points with the affine
/// topology, `Ψ_R`, and the final topology along `Ψ_R`. `Ψ_R` need not be
/// surjective here; points outside its image get whatever the final
/// topology assigns them.
#[derive(Debug)]
pub struct ChartData {
    pub points: RationalPoints,
    pub covering: Covering,
    pub cover: PointSpace<AffinePoint>,
    pub psi: FiniteMap,
    pub topology: FiniteTopology,
}

impl ChartData {
    pub fn space(&self) -> PointSpace<SchemePoint> {
        PointSpace {
            points: self.points.points().to_vec(),
            labels: self.points.labels(),
            topology: self.topology.clone(),
        }
    }
}

pub fn chart_data(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<ChartData> {
    let points = RationalPoints::new(x, r.ring(), r.structure(), limits)?;
    let covering = covering.cloned().unwrap_or_else(|| Covering::charts(x));
    points.validate_covering(&covering)?;
    let u = coproduct_presentation(&covering.presentations())?;
    let cover = affine_topology(&u, r, limits)?;
    let psi = points.psi(&covering, &cover.points)?;
    let topology = FiniteTopology::final_topology(
        points.len(),
        std::slice::from_ref(&psi),
        &[&cover.topology],
    )?;
    Ok(ChartData {
        points,
        covering,
        cover,
        psi,
        topology,
    })
}

/// `X(R)` with the final topology along `Ψ_R` for the given covering (the
/// charts themselves by default).
pub fn chart_topology(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<PointSpace<SchemePoint>> {
    let data = chart_data(x, covering, r, limits)?;
    if !data.psi.is_surjective() {
        return Err(Error::Validation(
            "the covering does not surject onto the points".into(),
        ));
    }
    Ok(data.space())
}

/// The image of `Ψ_R`, sorted and deduplicated, computed from the coproduct's
/// hom set alone.
pub fn psi_image(
    x: &SchemePresentation,
    covering: Option<&Covering>,
    r: &TopRing,
    limits: SearchLimits,
) -> Result<Vec<SchemePoint>> {
    let points = RationalPoints::new(x, r.ring(), r.structure(), limits)?;
    let covering = covering.cloned().unwrap_or_else(|| Covering::charts(x));
    let u = coproduct_presentation(&covering.presentations())?;
    let mut image = hom_points(&u, r.ring(), r.structure(), limits)?
        .iter()
        .map(|p| points.psi_point(&covering, p))
        .collect::<Result<Vec<_>>>()?;
    image.sort();
    image.dedup();
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::AlgebraPresentation;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn p1(r: &TopRing) -> SchemePresentation {
        SchemePresentation::projective_line(r.base()).unwrap()
    }

    #[test]
    fn projective_line_counts() {
        for (n, count) in [(2, 3), (3, 4), (4, 6), (6, 12), (9, 12)] {
            let r = TopRing::discrete(&z(n)).unwrap();
            let pts = scheme_points(&p1(&r), &r, SearchLimits::default()).unwrap();
            assert_eq!(pts.len(), count, "P1 over Z/{n}");
        }
    }

    #[test]
    fn projective_line_over_z2_labels() {
        let r = TopRing::discrete(&z(2)).unwrap();
        let rp =
            RationalPoints::new(&p1(&r), r.ring(), r.structure(), SearchLimits::default()).unwrap();
        assert_eq!(rp.labels(), vec!["chart0:s=0", "chart0:s=1", "chart1:t=0"]);
    }

    #[test]
    fn mixed_points_over_z6() {
        let r = TopRing::discrete(&z(6)).unwrap();
        let rp =
            RationalPoints::new(&p1(&r), r.ring(), r.structure(), SearchLimits::default()).unwrap();
        let labels = rp.labels();
        assert!(labels.contains(&"chart0:s=5".to_string()));
        // factor ℤ/2 sits at idempotent 3, factor ℤ/3 at 4
        assert!(labels.contains(&"[chart1:t=0 | chart0:s=0]".to_string()));
        assert_eq!(labels.iter().filter(|l| l.starts_with('[')).count(), 5);
    }

    #[test]
    fn psi_image_matches_points() {
        for n in [2, 4, 6] {
            let r = TopRing::discrete(&z(n)).unwrap();
            let x = p1(&r);
            let pts = scheme_points(&x, &r, SearchLimits::default()).unwrap();
            assert_eq!(
                psi_image(&x, None, &r, SearchLimits::default()).unwrap(),
                pts
            );
        }
    }

    #[test]
    fn chart_topology_over_two_adic_z4() {
        let r = TopRing::adic(&z(4), &[2]).unwrap();
        let space = chart_topology(&p1(&r), None, &r, SearchLimits::default()).unwrap();
        assert_eq!(space.len(), 6);
        let s0 = space.index_of_label("chart0:s=0").unwrap();
        let s2 = space.index_of_label("chart0:s=2").unwrap();
        assert_eq!(space.topology.min_nbhd(s0).to_vec(), {
            let mut v = vec![s0, s2];
            v.sort();
            v
        });
    }

    #[test]
    fn discrete_ring_gives_discrete_chart_topology() {
        let r = TopRing::discrete(&z(2)).unwrap();
        assert!(chart_topology(&p1(&r), None, &r, SearchLimits::default())
            .unwrap()
            .topology
            .is_discrete());
    }

    #[test]
    fn spec_z6_with_two_principal_opens() {
        let r = TopRing::discrete(&z(6)).unwrap();
        let x = SchemePresentation::affine(AlgebraPresentation::free(r.base(), &[]).unwrap());
        let cov = Covering::parse(&x, &[(0, "3"), (0, "4")]).unwrap();
        let data = chart_data(&x, Some(&cov), &r, SearchLimits::default()).unwrap();
        assert_eq!(data.points.len(), 1);
        assert_eq!(data.cover.len(), 1);
        assert!(data.topology.is_discrete());
        assert_eq!(data.points.uncovered_point(&cov).unwrap(), Some(0));
        assert_eq!(data.points.labels(), vec!["chart0:pt"]);
    }

    #[test]
    fn bad_gluing_is_rejected() {
        // over ℤ/3 every unit is its own inverse, so use ℤ/5
        let r = TopRing::discrete(&z(5)).unwrap();
        let k = r.base();
        let mut x = SchemePresentation::new(vec![
            AlgebraPresentation::free(k, &["s"]).unwrap(),
            AlgebraPresentation::free(k, &["t"]).unwrap(),
        ])
        .unwrap();
        // t = s is not inverse to t ↦ 1/t
        x.glue_text(0, 1, "s", &["s", "u"]).unwrap();
        x.glue_text(1, 0, "t", &["u", "t"]).unwrap();
        let err = scheme_points(&x, &r, SearchLimits::default()).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));

        let mut y = x.clone();
        y.glue_text(0, 1, "s", &["u", "s"]).unwrap();
        let mut one_way = SchemePresentation::new(y.charts().to_vec()).unwrap();
        one_way.glue_text(0, 1, "s", &["u", "s"]).unwrap();
        assert!(matches!(
            scheme_points(&one_way, &r, SearchLimits::default()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn map_along_projection() {
        let r6 = TopRing::discrete(&z(6)).unwrap();
        let x = p1(&r6);
        let src =
            RationalPoints::new(&x, r6.ring(), r6.structure(), SearchLimits::default()).unwrap();
        let r2 = z(2);
        let s2 = RingHom::canonical(r6.base(), &r2).unwrap();
        let dst = RationalPoints::new(&x, &r2, &s2, SearchLimits::default()).unwrap();
        let phi = RingHom::new(z(6), r2.clone(), (0..6).map(|v| v % 2).collect()).unwrap();
        let f = src.map_along(&phi, &dst).unwrap();
        assert!(f.is_surjective());
    }
}
