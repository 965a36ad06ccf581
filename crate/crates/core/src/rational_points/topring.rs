use crate::error::{definition, Result};
use crate::finring::{units, Elem, FiniteRing, RingHom};
use crate::fintop::{FiniteTopology, PointSet};

/// A finite ring with an arbitrary topology and a structure map from a base
/// ring `k`. The topology is not assumed to be compatible with the operations.
#[derive(Clone, Debug)]
pub struct TopRing {
    label: String,
    ring: FiniteRing,
    topology: FiniteTopology,
    structure: RingHom,
}

/// A pair of inputs at which a ring operation fails to be continuous:
/// some `(x, y)` near `(a, b)` is sent outside the neighbourhood of `a ∘ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperationWitness {
    pub multiplication: bool,
    pub at: (Elem, Elem),
    pub near: (Elem, Elem),
}

impl TopRing {
    pub fn new(
        label: impl Into<String>,
        ring: FiniteRing,
        topology: FiniteTopology,
        structure: RingHom,
    ) -> Result<Self> {
        if topology.size() != ring.size() {
            return Err(definition(format!(
                "topology on {} points attached to a ring with {} elements",
                topology.size(),
                ring.size()
            )));
        }
        if structure.target() != &ring {
            return Err(definition("structure map does not land in the ring"));
        }
        Ok(TopRing {
            label: label.into(),
            ring,
            topology,
            structure,
        })
    }

    /// Uses the canonical structure map from `ℤ/char(R)`.
    pub fn with_topology(
        label: impl Into<String>,
        ring: FiniteRing,
        topology: FiniteTopology,
    ) -> Result<Self> {
        let k = FiniteRing::zmod(ring.characteristic())?;
        let structure = RingHom::canonical(&k, &ring)?;
        Self::new(label, ring, topology, structure)
    }

    pub fn discrete(ring: &FiniteRing) -> Result<Self> {
        Self::with_topology(
            format!("{} discrete", ring.label()),
            ring.clone(),
            FiniteTopology::discrete(ring.size()),
        )
    }

    pub fn indiscrete(ring: &FiniteRing) -> Result<Self> {
        Self::with_topology(
            format!("{} indiscrete", ring.label()),
            ring.clone(),
            FiniteTopology::indiscrete(ring.size()),
        )
    }

    /// The `I`-adic topology for `I = (generators)`: the cosets of `I` form a basis.
    pub fn adic(ring: &FiniteRing, generators: &[Elem]) -> Result<Self> {
        ring.check_elems(generators)?;
        let ideal = ring.ideal(generators);
        let n = ring.size();
        let cosets: Vec<PointSet> = ring
            .elements()
            .map(|r| PointSet::from_indices(n, ideal.iter().map(|&i| ring.add(r, i))))
            .collect();
        let topology = FiniteTopology::from_subbasis(n, &cosets)?;
        let gens: Vec<&str> = generators.iter().map(|&g| ring.element_label(g)).collect();
        Self::with_topology(
            format!("{} ({})-adic", ring.label(), gens.join(",")),
            ring.clone(),
            topology,
        )
    }

    /// Topology given by an explicit family of open sets of ring elements.
    pub fn from_opens(ring: &FiniteRing, opens: &[Vec<Elem>]) -> Result<Self> {
        for o in opens {
            ring.check_elems(o)?;
        }
        let n = ring.size();
        let sets: Vec<PointSet> = opens
            .iter()
            .map(|o| PointSet::from_indices(n, o.iter().copied()))
            .collect();
        let topology = FiniteTopology::from_opens(n, &sets)?;
        Self::with_topology(format!("{} custom", ring.label()), ring.clone(), topology)
    }

    /// Product ring with the product topology and the canonical structure map.
    pub fn product(factors: &[TopRing]) -> Result<Self> {
        let rings: Vec<FiniteRing> = factors.iter().map(|f| f.ring.clone()).collect();
        let ring = FiniteRing::product(&rings)?;
        let tops: Vec<FiniteTopology> = factors.iter().map(|f| f.topology.clone()).collect();
        let topology = FiniteTopology::product_all(&tops);
        let label = factors
            .iter()
            .map(|f| f.label.as_str())
            .collect::<Vec<_>>()
            .join(" × ");
        Self::with_topology(label, ring, topology)
    }

    /// Replaces the structure map by the canonical one from the prime ring `k`.
    pub fn with_base(&self, k: &FiniteRing) -> Result<Self> {
        let structure = RingHom::canonical(k, &self.ring)?;
        Self::new(
            self.label.clone(),
            self.ring.clone(),
            self.topology.clone(),
            structure,
        )
    }

    pub fn relabeled(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn topology(&self) -> &FiniteTopology {
        &self.topology
    }

    pub fn structure(&self) -> &RingHom {
        &self.structure
    }

    pub fn base(&self) -> &FiniteRing {
        self.structure.source()
    }

    /// First point where addition or multiplication `R × R → R` fails to be
    /// continuous for the product topology.
    pub fn operation_discontinuity(&self) -> Option<OperationWitness> {
        let r = &self.ring;
        let t = &self.topology;
        for multiplication in [false, true] {
            let op = |a, b| {
                if multiplication {
                    r.mul(a, b)
                } else {
                    r.add(a, b)
                }
            };
            for a in r.elements() {
                for b in r.elements() {
                    let target = t.min_nbhd(op(a, b));
                    for x in t.min_nbhd(a).iter() {
                        if let Some(y) = t.min_nbhd(b).iter().find(|&y| !target.contains(op(x, y)))
                        {
                            return Some(OperationWitness {
                                multiplication,
                                at: (a, b),
                                near: (x, y),
                            });
                        }
                    }
                }
            }
        }
        None
    }

    /// Addition and multiplication are continuous.
    pub fn is_topological_ring(&self) -> bool {
        self.operation_discontinuity().is_none()
    }

    pub fn is_hausdorff_ring(&self) -> bool {
        self.is_topological_ring() && self.topology.is_hausdorff()
    }

    /// Units are open and inversion is continuous on them.
    pub fn has_open_unit_group(&self) -> bool {
        let r = &self.ring;
        let t = &self.topology;
        let u = PointSet::from_indices(r.size(), units(r));
        if !t.is_open(&u) {
            return false;
        }
        let continuous = u.iter().all(|a| {
            let inv_a = r.inverse(a).expect("unit");
            t.min_nbhd(a)
                .iter()
                .filter(|&x| u.contains(x))
                .all(|x| t.min_nbhd(inv_a).contains(r.inverse(x).expect("unit")))
        });
        continuous
    }
}

/// Free-function forms of the ring predicates.
pub fn is_topological_ring(r: &TopRing) -> bool {
    r.is_topological_ring()
}

pub fn is_hausdorff_ring(r: &TopRing) -> bool {
    r.is_hausdorff_ring()
}

pub fn has_open_unit_group(r: &TopRing) -> bool {
    r.has_open_unit_group()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    fn z4_pt0() -> TopRing {
        TopRing::from_opens(&z(4), &[vec![0]]).unwrap()
    }

    #[test]
    fn topological_ring_examples() {
        assert!(TopRing::adic(&z(4), &[2]).unwrap().is_topological_ring());
        let w = z4_pt0().operation_discontinuity().unwrap();
        assert!(!w.multiplication);
        assert!(TopRing::discrete(&z(6)).unwrap().is_topological_ring());
        assert!(TopRing::indiscrete(&z(6)).unwrap().is_topological_ring());
    }

    #[test]
    fn hausdorff_ring_examples() {
        assert!(TopRing::discrete(&z(6)).unwrap().is_hausdorff_ring());
        assert!(!TopRing::adic(&z(4), &[2]).unwrap().is_hausdorff_ring());
        assert!(!TopRing::indiscrete(&z(4)).unwrap().is_hausdorff_ring());
    }

    #[test]
    fn open_unit_group_examples() {
        assert!(TopRing::adic(&z(4), &[2]).unwrap().has_open_unit_group());
        assert!(!TopRing::indiscrete(&z(4)).unwrap().has_open_unit_group());
        assert!(TopRing::discrete(&z(9)).unwrap().has_open_unit_group());
    }

    #[test]
    fn adic_topology_is_cosets() {
        let t = TopRing::adic(&z(9), &[3]).unwrap();
        assert_eq!(t.topology().min_nbhd(1).to_vec(), vec![1, 4, 7]);
        assert_eq!(t.base().size(), 9);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        assert!(TopRing::with_topology("x", z(4), FiniteTopology::discrete(3)).is_err());
    }
}
