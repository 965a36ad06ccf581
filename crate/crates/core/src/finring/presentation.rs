use std::fmt;

use crate::error::{definition, Result};

use super::parse::parse_polynomial;
use super::poly::Polynomial;
use super::ring::FiniteRing;

/// A finitely presented algebra `k[x₁..xₙ]/(r₁..rₘ)`.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    base: FiniteRing,
    variables: Vec<String>,
    relations: Vec<Polynomial>,
}

impl AlgebraPresentation {
    pub fn new(
        base: FiniteRing,
        variables: Vec<String>,
        relations: Vec<Polynomial>,
    ) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(definition(format!("variable `{v}` declared twice")));
            }
        }
        if let Some(r) = relations
            .iter()
            .find(|r| r.variables() != variables.as_slice())
        {
            return Err(definition(format!(
                "relation over {:?} does not match declared variables {:?}",
                r.variables(),
                variables
            )));
        }
        Ok(AlgebraPresentation {
            base,
            variables,
            relations,
        })
    }

    /// Builds a presentation from variable names and relation strings.
    pub fn parse(base: &FiniteRing, variables: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_polynomial(r, &vars, base))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base.clone(), vars, rels)
    }

    /// The polynomial ring `k[x₁..xₙ]` with no relations.
    pub fn free(base: &FiniteRing, variables: &[&str]) -> Result<Self> {
        Self::parse(base, variables, &[])
    }

    pub fn base(&self) -> &FiniteRing {
        &self.base
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Parses `text` as an element of this algebra.
    pub fn polynomial(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.variables, &self.base)
    }

    pub fn variable(&self, i: usize) -> Result<Polynomial> {
        Polynomial::variable(&self.variables, i, &self.base)
    }

    /// The same algebra with `extra` appended to the relations.
    pub fn with_relations(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut relations = self.relations.clone();
        relations.extend_from_slice(extra);
        Self::new(self.base.clone(), self.variables.clone(), relations)
    }
}

impl fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.display(&self.base))
            .collect();
        write!(
            f,
            "{}[{}]/({})",
            self.base.label(),
            self.variables.join(","),
            rels.join(", ")
        )
    }
}

/// An algebra map `B → A` given by the images of `B`'s generators as
/// polynomials in `A`'s variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    images: Vec<Polynomial>,
}

impl AlgebraMap {
    /// `source` is `B`, `target` is `A`.
    pub fn new(
        source: &AlgebraPresentation,
        target: &AlgebraPresentation,
        images: Vec<Polynomial>,
    ) -> Result<Self> {
        if images.len() != source.num_variables() {
            return Err(definition(format!(
                "algebra map needs {} generator images, got {}",
                source.num_variables(),
                images.len()
            )));
        }
        if images.iter().any(|p| p.variables() != target.variables()) {
            return Err(definition(
                "generator image mentions variables outside the target algebra",
            ));
        }
        Ok(AlgebraMap { images })
    }

    pub fn parse(
        source: &AlgebraPresentation,
        target: &AlgebraPresentation,
        images: &[&str],
    ) -> Result<Self> {
        let polys = images
            .iter()
            .map(|t| target.polynomial(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, polys)
    }

    pub fn identity(a: &AlgebraPresentation) -> Result<Self> {
        let images = (0..a.num_variables())
            .map(|i| a.variable(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMap { images })
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }
}

/// A variable name not in `taken`, trying `stem`, `stem1`, `stem2`, …
pub fn fresh_name(taken: &[String], stem: &str) -> String {
    if !taken.iter().any(|t| t == stem) {
        return stem.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded search")
}

/// `A[1/h]`: adjoins a fresh last variable `u` (renamed on collision) and the
/// relation `h·u − 1`.
pub fn localize_presentation(
    a: &AlgebraPresentation,
    h: &Polynomial,
) -> Result<AlgebraPresentation> {
    if h.variables() != a.variables() {
        return Err(definition(
            "localizing element must be a polynomial in the algebra's variables",
        ));
    }
    let k = a.base();
    let mut vars = a.variables.clone();
    vars.push(fresh_name(&a.variables, "u"));
    let old: Vec<usize> = (0..a.num_variables()).collect();
    let mut relations = a
        .relations
        .iter()
        .map(|r| r.embed(&vars, &old))
        .collect::<Result<Vec<_>>>()?;
    let u = Polynomial::variable(&vars, vars.len() - 1, k)?;
    let hu = h.embed(&vars, &old)?.mul(&u, k)?;
    relations.push(hu.sub(&Polynomial::constant(&vars, k.one(), k), k)?);
    AlgebraPresentation::new(k.clone(), vars, relations)
}

/// `A ⊗_C B` along `f: C → A` and `g: C → B`.
///
/// Variables are `A`'s followed by `B`'s; `B` names that collide get a `_b`
/// suffix.
pub fn pushout_presentation(
    c: &AlgebraPresentation,
    a: &AlgebraPresentation,
    b: &AlgebraPresentation,
    f: &AlgebraMap,
    g: &AlgebraMap,
) -> Result<AlgebraPresentation> {
    if a.base() != c.base() || b.base() != c.base() {
        return Err(definition("pushout requires a common base ring"));
    }
    // validate the maps against their claimed source and target
    AlgebraMap::new(c, a, f.images.clone())?;
    AlgebraMap::new(c, b, g.images.clone())?;

    let k = c.base();
    let mut vars = a.variables.clone();
    for v in &b.variables {
        let mut name = v.clone();
        while vars.contains(&name) || (b.variables.contains(&name) && &name != v) {
            name.push_str("_b");
        }
        vars.push(name);
    }
    let na = a.num_variables();
    let pos_a: Vec<usize> = (0..na).collect();
    let pos_b: Vec<usize> = (na..vars.len()).collect();
    let mut relations = Vec::new();
    for r in &a.relations {
        relations.push(r.embed(&vars, &pos_a)?);
    }
    for r in &b.relations {
        relations.push(r.embed(&vars, &pos_b)?);
    }
    for (fi, gi) in f.images.iter().zip(&g.images) {
        let d = fi.embed(&vars, &pos_a)?.sub(&gi.embed(&vars, &pos_b)?, k)?;
        if !d.is_zero() {
            relations.push(d);
        }
    }
    AlgebraPresentation::new(k.clone(), vars, relations)
}

/// Coordinate ring of the disjoint union `∐ Spec Aᵢ`, presented as `∏ Aᵢ`.
///
/// Variables: idempotents `e0..e{m-1}` first, then every chart's variables
/// renamed to `name@i`. Relations: `eᵢ² − eᵢ`, `eᵢeⱼ` (i<j), `Σeᵢ − 1`,
/// `x·(1 − eᵢ)` for chart variables, and `eᵢ·r` for chart relations.
pub fn coproduct_presentation(charts: &[AlgebraPresentation]) -> Result<AlgebraPresentation> {
    let first = charts
        .first()
        .ok_or_else(|| definition("coproduct of an empty chart list"))?;
    let k = first.base();
    if charts.iter().any(|c| c.base() != k) {
        return Err(definition("coproduct charts must share a base ring"));
    }
    let m = charts.len();
    let mut vars: Vec<String> = (0..m).map(|i| format!("e{i}")).collect();
    for (i, c) in charts.iter().enumerate() {
        vars.extend(c.variables.iter().map(|v| format!("{v}@{i}")));
    }
    let offsets = coproduct_offsets(charts);
    let e = (0..m)
        .map(|i| Polynomial::variable(&vars, i, k))
        .collect::<Result<Vec<_>>>()?;
    let one = Polynomial::constant(&vars, k.one(), k);

    let mut relations = Vec::new();
    for ei in &e {
        relations.push(ei.mul(ei, k)?.sub(ei, k)?);
    }
    for i in 0..m {
        for j in i + 1..m {
            relations.push(e[i].mul(&e[j], k)?);
        }
    }
    let sum = e
        .iter()
        .try_fold(Polynomial::zero(&vars), |acc, ei| acc.add(ei, k))?;
    relations.push(sum.sub(&one, k)?);
    for (i, c) in charts.iter().enumerate() {
        let not_ei = one.sub(&e[i], k)?;
        let positions: Vec<usize> = (offsets[i]..offsets[i] + c.num_variables()).collect();
        for &p in &positions {
            relations.push(Polynomial::variable(&vars, p, k)?.mul(&not_ei, k)?);
        }
        for r in &c.relations {
            relations.push(e[i].mul(&r.embed(&vars, &positions)?, k)?);
        }
    }
    AlgebraPresentation::new(k.clone(), vars, relations)
}

/// Index of the first variable of each chart inside [`coproduct_presentation`].
pub fn coproduct_offsets(charts: &[AlgebraPresentation]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(charts.len());
    let mut next = charts.len();
    for c in charts {
        offsets.push(next);
        next += c.num_variables();
    }
    offsets
}
