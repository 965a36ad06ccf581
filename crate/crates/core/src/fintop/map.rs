use crate::error::{definition, Result};

use super::pointset::PointSet;
use super::topology::FiniteTopology;

/// A set map `{0..domain_size} → {0..codomain_size}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteMap {
    codomain_size: usize,
    map: Vec<usize>,
}

/// Properties of a map between finite spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapFlags {
    pub continuous: bool,
    pub open: bool,
    pub injective: bool,
    pub embedding: bool,
    pub closed_embedding: bool,
}

impl FiniteMap {
    pub fn new(domain_size: usize, codomain_size: usize, map: Vec<usize>) -> Result<Self> {
        if map.len() != domain_size {
            return Err(definition("map table length differs from the domain size"));
        }
        if let Some(v) = map.iter().find(|&&v| v >= codomain_size) {
            return Err(definition(format!(
                "map value {v} outside codomain of size {codomain_size}"
            )));
        }
        Ok(FiniteMap { codomain_size, map })
    }

    pub fn identity(n: usize) -> Self {
        FiniteMap {
            codomain_size: n,
            map: (0..n).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(self.codomain_size, set.iter().map(|x| self.map[x]))
    }

    pub fn preimage(&self, set: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.map.len(),
            (0..self.map.len()).filter(|&x| set.contains(self.map[x])),
        )
    }

    pub fn full_image(&self) -> PointSet {
        self.image(&PointSet::full(self.map.len()))
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = PointSet::empty(self.codomain_size);
        self.map.iter().all(|&v| seen.insert(v))
    }

    pub fn is_surjective(&self) -> bool {
        self.full_image().is_full()
    }

    pub fn is_bijective(&self) -> bool {
        self.map.len() == self.codomain_size && self.is_injective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteMap) -> Result<FiniteMap> {
        if self.codomain_size != other.domain_size() {
            return Err(definition("cannot compose maps with mismatched sizes"));
        }
        Ok(FiniteMap {
            codomain_size: other.codomain_size,
            map: self.map.iter().map(|&x| other.map[x]).collect(),
        })
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> Result<FiniteMap> {
        if !self.is_bijective() {
            return Err(definition("only bijections can be inverted"));
        }
        let mut inv = vec![0; self.codomain_size];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(FiniteMap {
            codomain_size: self.map.len(),
            map: inv,
        })
    }

    fn check_sizes(&self, dom: &FiniteTopology, cod: &FiniteTopology) -> Result<()> {
        if dom.size() != self.map.len() || cod.size() != self.codomain_size {
            return Err(definition(format!(
                "map {}→{} does not match spaces of sizes {} and {}",
                self.map.len(),
                self.codomain_size,
                dom.size(),
                cod.size()
            )));
        }
        Ok(())
    }

    /// A point whose minimal neighbourhood is not mapped into the minimal
    /// neighbourhood of its image, if any.
    pub fn discontinuity(
        &self,
        dom: &FiniteTopology,
        cod: &FiniteTopology,
    ) -> Result<Option<usize>> {
        self.check_sizes(dom, cod)?;
        Ok((0..self.map.len()).find(|&x| {
            !self
                .image(dom.min_nbhd(x))
                .is_subset(cod.min_nbhd(self.map[x]))
        }))
    }

    pub fn is_continuous(&self, dom: &FiniteTopology, cod: &FiniteTopology) -> Result<bool> {
        Ok(self.discontinuity(dom, cod)?.is_none())
    }

    /// A domain point whose minimal neighbourhood has a non-open image, if any.
    /// Images of opens are unions of images of minimal neighbourhoods.
    pub fn non_open_point(
        &self,
        dom: &FiniteTopology,
        cod: &FiniteTopology,
    ) -> Result<Option<usize>> {
        self.check_sizes(dom, cod)?;
        Ok((0..self.map.len()).find(|&x| !cod.is_open(&self.image(dom.min_nbhd(x)))))
    }

    /// A domain point whose neighbourhood differs from the pullback of the
    /// subspace topology on the image, if any.
    pub fn non_embedding_point(
        &self,
        dom: &FiniteTopology,
        cod: &FiniteTopology,
    ) -> Result<Option<usize>> {
        self.check_sizes(dom, cod)?;
        Ok((0..self.map.len())
            .find(|&x| self.preimage(cod.min_nbhd(self.map[x])) != *dom.min_nbhd(x)))
    }

    pub fn classify(&self, dom: &FiniteTopology, cod: &FiniteTopology) -> Result<MapFlags> {
        let continuous = self.discontinuity(dom, cod)?.is_none();
        let open = self.non_open_point(dom, cod)?.is_none();
        let injective = self.is_injective();
        // for an injective map, N_dom(x) = f⁻¹(N_cod(f x)) at every x says both
        // that f is continuous and that the subspace topology pulls back to dom
        let embedding = injective && continuous && self.non_embedding_point(dom, cod)?.is_none();
        let closed_embedding = embedding && cod.is_closed(&self.full_image());
        Ok(MapFlags {
            continuous,
            open,
            injective,
            embedding,
            closed_embedding,
        })
    }
}

/// Continuity of `f` from `dom` to `cod`.
pub fn is_continuous(f: &FiniteMap, dom: &FiniteTopology, cod: &FiniteTopology) -> Result<bool> {
    f.is_continuous(dom, cod)
}

/// Continuity, openness, injectivity and (closed) embedding flags for `f`.
pub fn classify_map(f: &FiniteMap, dom: &FiniteTopology, cod: &FiniteTopology) -> Result<MapFlags> {
    f.classify(dom, cod)
}
