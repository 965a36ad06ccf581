use std::collections::BTreeMap;
use std::fmt;

use crate::error::{definition, Result};
use crate::finring::{localize_presentation, AlgebraPresentation, FiniteRing, Polynomial};

/// Chart `i` glued to chart `j` along `D(h) ⊂ U_i`.
///
/// `images` are the images of the generators of `A_j[1/h_ji]` (chart `j`'s
/// variables followed by its inverse variable) as polynomials in
/// `A_i[1/h_ij]`.
#[derive(Clone, Debug)]
pub struct Gluing {
    pub h: Polynomial,
    pub localized: AlgebraPresentation,
    pub images: Vec<Polynomial>,
}

/// A scheme given by finitely many affine charts and gluing data.
#[derive(Clone)]
pub struct SchemePresentation {
    base: FiniteRing,
    charts: Vec<AlgebraPresentation>,
    gluings: BTreeMap<(usize, usize), Gluing>,
}

impl SchemePresentation {
    /// Disjoint union of `charts`; use [`SchemePresentation::glue`] to identify overlaps.
    pub fn new(charts: Vec<AlgebraPresentation>) -> Result<Self> {
        let base = charts
            .first()
            .ok_or_else(|| definition("a scheme needs at least one chart"))?
            .base()
            .clone();
        if charts.iter().any(|c| c.base() != &base) {
            return Err(definition("scheme charts must share a base ring"));
        }
        Ok(SchemePresentation {
            base,
            charts,
            gluings: BTreeMap::new(),
        })
    }

    pub fn affine(a: AlgebraPresentation) -> Self {
        SchemePresentation {
            base: a.base().clone(),
            charts: vec![a],
            gluings: BTreeMap::new(),
        }
    }

    /// Adds the gluing of chart `i` into chart `j` along `D(h)`, where `h` is
    /// a polynomial in chart `i` and `images` are polynomials in `A_i[1/h]`.
    /// The reverse gluing `(j, i)` must be added separately.
    pub fn glue(
        &mut self,
        i: usize,
        j: usize,
        h: Polynomial,
        images: Vec<Polynomial>,
    ) -> Result<()> {
        let m = self.charts.len();
        if i >= m || j >= m || i == j {
            return Err(definition(format!(
                "invalid gluing between charts {i} and {j}"
            )));
        }
        if h.variables() != self.charts[i].variables() {
            return Err(definition(format!(
                "gluing element must be a polynomial in chart {i}"
            )));
        }
        let localized = localize_presentation(&self.charts[i], &h)?;
        if images.len() != self.charts[j].num_variables() + 1 {
            return Err(definition(format!(
                "gluing {i}→{j} needs {} images, got {}",
                self.charts[j].num_variables() + 1,
                images.len()
            )));
        }
        if images
            .iter()
            .any(|p| p.variables() != localized.variables())
        {
            return Err(definition(format!(
                "gluing {i}→{j} images must be polynomials in {:?}",
                localized.variables()
            )));
        }
        self.gluings.insert(
            (i, j),
            Gluing {
                h,
                localized,
                images,
            },
        );
        Ok(())
    }

    /// Text form of [`SchemePresentation::glue`].
    pub fn glue_text(&mut self, i: usize, j: usize, h: &str, images: &[&str]) -> Result<()> {
        let chart = self
            .charts
            .get(i)
            .ok_or_else(|| definition(format!("no chart {i}")))?;
        let hp = chart.polynomial(h)?;
        let localized = localize_presentation(chart, &hp)?;
        let polys = images
            .iter()
            .map(|t| localized.polynomial(t))
            .collect::<Result<Vec<_>>>()?;
        self.glue(i, j, hp, polys)
    }

    /// `ℙ¹` over `k`: charts `k[s]` and `k[t]` glued by `t = 1/s`.
    pub fn projective_line(k: &FiniteRing) -> Result<Self> {
        let mut x = Self::new(vec![
            AlgebraPresentation::free(k, &["s"])?,
            AlgebraPresentation::free(k, &["t"])?,
        ])?;
        x.glue_text(0, 1, "s", &["u", "s"])?;
        x.glue_text(1, 0, "t", &["u", "t"])?;
        Ok(x)
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn charts(&self) -> &[AlgebraPresentation] {
        &self.charts
    }

    pub fn gluing(&self, i: usize, j: usize) -> Option<&Gluing> {
        self.gluings.get(&(i, j))
    }

    pub fn gluings(&self) -> impl Iterator<Item = (&(usize, usize), &Gluing)> {
        self.gluings.iter()
    }
}

impl fmt::Debug for SchemePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SchemePresentation")
            .field("charts", &self.charts)
            .field("gluings", &self.gluings.keys().collect::<Vec<_>>())
            .finish()
    }
}

/// A principal open `D(h)` of one chart.
#[derive(Clone, Debug)]
pub struct CoverPiece {
    pub chart: usize,
    pub h: Polynomial,
    pub presentation: AlgebraPresentation,
}

/// A finite family of principal opens of charts, meant to cover the scheme.
#[derive(Clone, Debug)]
pub struct Covering {
    pieces: Vec<CoverPiece>,
}

impl Covering {
    /// The charts themselves.
    pub fn charts(x: &SchemePresentation) -> Self {
        let pieces = x
            .charts
            .iter()
            .enumerate()
            .map(|(i, c)| CoverPiece {
                chart: i,
                h: Polynomial::constant(c.variables(), x.base.one(), &x.base),
                presentation: c.clone(),
            })
            .collect();
        Covering { pieces }
    }

    /// Pieces `D(h)` in the given charts. `h = 1` keeps the chart unlocalized.
    pub fn new(x: &SchemePresentation, pieces: Vec<(usize, Polynomial)>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(definition("a covering needs at least one piece"));
        }
        let one = x.base.one();
        let mut out = Vec::with_capacity(pieces.len());
        for (chart, h) in pieces {
            let a = x.charts.get(chart).ok_or_else(|| {
                definition(format!(
                    "covering refers to chart {chart}, but there are {}",
                    x.charts.len()
                ))
            })?;
            if h.variables() != a.variables() {
                return Err(definition(format!(
                    "covering element must be a polynomial in chart {chart}"
                )));
            }
            let presentation = if h == Polynomial::constant(a.variables(), one, &x.base) {
                a.clone()
            } else {
                localize_presentation(a, &h)?
            };
            out.push(CoverPiece {
                chart,
                h,
                presentation,
            });
        }
        Ok(Covering { pieces: out })
    }

    /// Text form of [`Covering::new`].
    pub fn parse(x: &SchemePresentation, pieces: &[(usize, &str)]) -> Result<Self> {
        let parsed = pieces
            .iter()
            .map(|&(c, h)| {
                let chart = x
                    .charts
                    .get(c)
                    .ok_or_else(|| definition(format!("no chart {c}")))?;
                Ok((c, chart.polynomial(h)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(x, parsed)
    }

    pub fn pieces(&self) -> &[CoverPiece] {
        &self.pieces
    }

    pub fn presentations(&self) -> Vec<AlgebraPresentation> {
        self.pieces.iter().map(|p| p.presentation.clone()).collect()
    }
}
