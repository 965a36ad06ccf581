use crate::error::Result;
use crate::finring::{AlgebraMap, AlgebraPresentation, FiniteRing, Polynomial};
use crate::rational_points::{Covering, SchemePresentation, TopRing};

/// Fibre-product probe `Spec A ×_{Spec C} Spec B`.
#[derive(Clone, Debug)]
pub struct F1Probe {
    pub name: String,
    pub c: AlgebraPresentation,
    pub a: AlgebraPresentation,
    pub b: AlgebraPresentation,
    pub f: AlgebraMap,
    pub g: AlgebraMap,
}

/// Closed subscheme of `Spec ambient` cut out by `extra`.
#[derive(Clone, Debug)]
pub struct ClosedProbe {
    pub name: String,
    pub ambient: AlgebraPresentation,
    pub extra: Vec<Polynomial>,
}

/// Principal open `D(h)` of `Spec ambient`.
#[derive(Clone, Debug)]
pub struct OpenProbe {
    pub name: String,
    pub ambient: AlgebraPresentation,
    pub h: Polynomial,
}

/// A scheme with an optional covering (its charts when absent).
#[derive(Clone, Debug)]
pub struct SchemeProbe {
    pub name: String,
    pub scheme: SchemePresentation,
    pub covering: Option<Covering>,
}

/// Finite probe families standing in for "all schemes" in the axioms.
#[derive(Clone, Debug)]
pub struct Battery {
    pub f1: Vec<F1Probe>,
    pub f3: Vec<ClosedProbe>,
    pub f4star: Vec<OpenProbe>,
    /// Probes for local coverage.
    pub coverage: Vec<SchemeProbe>,
    /// Every probe scheme, used for surjectivity of `Ψ_R` and discreteness checks.
    pub schemes: Vec<SchemeProbe>,
}

fn affine(name: &str, k: &FiniteRing, vars: &[&str], rels: &[&str]) -> Result<SchemeProbe> {
    Ok(SchemeProbe {
        name: name.into(),
        scheme: SchemePresentation::affine(AlgebraPresentation::parse(k, vars, rels)?),
        covering: None,
    })
}

/// 𝔸¹ with the covering `{D(T), D(T+1)}`.
pub fn affine_line_cover(k: &FiniteRing) -> Result<SchemeProbe> {
    let scheme = SchemePresentation::affine(AlgebraPresentation::free(k, &["T"])?);
    let covering = Covering::parse(&scheme, &[(0, "T"), (0, "T + 1")])?;
    Ok(SchemeProbe {
        name: "A1_DT_DT1".into(),
        scheme,
        covering: Some(covering),
    })
}

/// `Spec k` with the covering `{D(3), D(4)}`.
pub fn spec_d3_d4(k: &FiniteRing) -> Result<SchemeProbe> {
    let scheme = SchemePresentation::affine(AlgebraPresentation::free(k, &[])?);
    let covering = Covering::parse(&scheme, &[(0, "3"), (0, "4")])?;
    Ok(SchemeProbe {
        name: "Spec_D3D4".into(),
        scheme,
        covering: Some(covering),
    })
}

pub fn projective_line(k: &FiniteRing) -> Result<SchemeProbe> {
    Ok(SchemeProbe {
        name: "P1".into(),
        scheme: SchemePresentation::projective_line(k)?,
        covering: None,
    })
}

/// ℙ¹ with chart 0 split into `D(s)` and `D(s+1)`: a three-piece refinement
/// of the standard covering on local rings.
pub fn projective_line_refined(k: &FiniteRing) -> Result<SchemeProbe> {
    let scheme = SchemePresentation::projective_line(k)?;
    let covering = Covering::parse(&scheme, &[(0, "s"), (0, "s + 1"), (1, "1")])?;
    Ok(SchemeProbe {
        name: "P1_refined".into(),
        scheme,
        covering: Some(covering),
    })
}

impl Battery {
    /// The shipped battery over the base ring `k`.
    pub fn standard(k: &FiniteRing) -> Result<Self> {
        let point = AlgebraPresentation::free(k, &[])?;
        let kx = AlgebraPresentation::free(k, &["x"])?;
        let ky = AlgebraPresentation::free(k, &["y"])?;
        let kt = AlgebraPresentation::free(k, &["t"])?;
        let kxy = AlgebraPresentation::free(k, &["x", "y"])?;
        let k_t = AlgebraPresentation::free(k, &["T"])?;

        let f1 = vec![
            F1Probe {
                name: "A1xA1".into(),
                f: AlgebraMap::parse(&point, &kx, &[])?,
                g: AlgebraMap::parse(&point, &ky, &[])?,
                c: point.clone(),
                a: kx.clone(),
                b: ky.clone(),
            },
            F1Probe {
                name: "squares_over_A1".into(),
                f: AlgebraMap::parse(&kt, &kx, &["x^2"])?,
                g: AlgebraMap::parse(&kt, &ky, &["y^2"])?,
                c: kt,
                a: kx.clone(),
                b: ky,
            },
        ];
        let f3 = vec![
            ClosedProbe {
                name: "idempotents_in_A1".into(),
                extra: vec![kx.polynomial("x^2 - x")?],
                ambient: kx.clone(),
            },
            ClosedProbe {
                name: "diagonal_in_A2".into(),
                extra: vec![kxy.polynomial("y - x")?],
                ambient: kxy.clone(),
            },
            ClosedProbe {
                name: "origin_in_A1".into(),
                extra: vec![kx.variable(0)?],
                ambient: kx,
            },
        ];
        let f4star = vec![
            OpenProbe {
                name: "D(T)".into(),
                h: k_t.variable(0)?,
                ambient: k_t.clone(),
            },
            OpenProbe {
                name: "D(T+1)".into(),
                h: k_t.polynomial("T + 1")?,
                ambient: k_t,
            },
            OpenProbe {
                name: "D(x)_in_A2".into(),
                h: kxy.variable(0)?,
                ambient: kxy,
            },
        ];
        let coverage = vec![projective_line(k)?, affine_line_cover(k)?, spec_d3_d4(k)?];
        let schemes = vec![
            affine("A1", k, &["T"], &[])?,
            affine("A2", k, &["x", "y"], &[])?,
            affine("Gm", k, &["x", "y"], &["x*y - 1"])?,
            affine("Spec_k", k, &[], &[])?,
            affine("idempotent_locus", k, &["x"], &["x^2 - x"])?,
            projective_line(k)?,
            affine_line_cover(k)?,
            spec_d3_d4(k)?,
        ];
        Ok(Battery {
            f1,
            f3,
            f4star,
            coverage,
            schemes,
        })
    }
}

/// The shipped corpus of topologies on ℤ/4, ℤ/6, ℤ/2×ℤ/2 and ℤ/9, including
/// two topologies that are not ring topologies.
pub fn default_corpus() -> Result<Vec<TopRing>> {
    let z4 = FiniteRing::zmod(4)?;
    let z6 = FiniteRing::zmod(6)?;
    let z9 = FiniteRing::zmod(9)?;
    let z2 = FiniteRing::zmod(2)?;
    let z2z2 = FiniteRing::product(&[z2.clone(), z2])?;
    Ok(vec![
        TopRing::discrete(&z4)?.relabeled("Z4_discrete"),
        TopRing::indiscrete(&z4)?.relabeled("Z4_indiscrete"),
        TopRing::adic(&z4, &[2])?.relabeled("Z4_2adic"),
        TopRing::from_opens(&z4, &[vec![0]])?.relabeled("Z4_pt0"),
        TopRing::discrete(&z6)?.relabeled("Z6_discrete"),
        TopRing::indiscrete(&z6)?.relabeled("Z6_indiscrete"),
        TopRing::adic(&z6, &[2])?.relabeled("Z6_2adic"),
        TopRing::from_opens(&z6, &[vec![0, 3]])?.relabeled("Z6_open03"),
        TopRing::discrete(&z2z2)?.relabeled("Z2xZ2_discrete"),
        TopRing::indiscrete(&z2z2)?.relabeled("Z2xZ2_indiscrete"),
        TopRing::discrete(&z9)?.relabeled("Z9_discrete"),
        TopRing::adic(&z9, &[3])?.relabeled("Z9_3adic"),
        TopRing::indiscrete(&z9)?.relabeled("Z9_indiscrete"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_battery_shape() {
        let b = Battery::standard(&FiniteRing::zmod(4).unwrap()).unwrap();
        assert_eq!(
            (
                b.f1.len(),
                b.f3.len(),
                b.f4star.len(),
                b.coverage.len(),
                b.schemes.len()
            ),
            (2, 3, 3, 3, 8)
        );
        let names: Vec<&str> = b.schemes.iter().map(|s| s.name.as_str()).collect();
        assert!(names.contains(&"P1") && names.contains(&"Spec_D3D4"));
    }

    #[test]
    fn corpus_has_two_non_ring_topologies() {
        let corpus = default_corpus().unwrap();
        assert_eq!(corpus.len(), 13);
        let bad: Vec<&str> = corpus
            .iter()
            .filter(|r| !r.is_topological_ring())
            .map(|r| r.label())
            .collect();
        assert_eq!(bad, ["Z4_pt0", "Z6_open03"]);
    }
}
