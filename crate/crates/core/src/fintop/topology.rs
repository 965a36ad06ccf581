use std::collections::BTreeSet;
use std::fmt;

use crate::error::{definition, Error, Result};

use super::map::FiniteMap;
use super::pointset::PointSet;

/// Upper bound for materializing the family of open sets.
pub const MAX_OPENS: usize = 1 << 16;

/// A topology on `{0, …, n-1}`.
///
/// Every finite topology is determined by the smallest open neighbourhood of
/// each point; the full family of opens is derived from it on demand since it
/// can be exponentially large.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    size: usize,
    min_nbhd: Vec<PointSet>,
}

/// Result of comparing two topologies on the same ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TopologyOrder {
    Equal,
    StrictlyFiner,
    StrictlyCoarser,
    Incomparable,
}

impl FiniteTopology {
    pub fn discrete(n: usize) -> Self {
        FiniteTopology {
            size: n,
            min_nbhd: (0..n).map(|i| PointSet::singleton(n, i)).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        FiniteTopology {
            size: n,
            min_nbhd: vec![PointSet::full(n); n],
        }
    }

    /// Builds a topology from its minimal neighbourhoods, checking that they
    /// come from a preorder (`x ∈ N(x)`, and `y ∈ N(x) ⇒ N(y) ⊆ N(x)`).
    pub fn from_min_nbhds(min_nbhd: Vec<PointSet>) -> Result<Self> {
        let n = min_nbhd.len();
        for (x, nx) in min_nbhd.iter().enumerate() {
            if nx.ground_len() != n {
                return Err(definition("neighbourhood over the wrong ground set"));
            }
            if !nx.contains(x) {
                return Err(definition(format!(
                    "point {x} is missing from its own neighbourhood"
                )));
            }
            if let Some(y) = nx.iter().find(|&y| !min_nbhd[y].is_subset(nx)) {
                return Err(definition(format!(
                    "neighbourhoods are not transitive: {y} ∈ N({x}) but N({y}) ⊄ N({x})"
                )));
            }
        }
        Ok(FiniteTopology { size: n, min_nbhd })
    }

    /// Builds a topology from an explicit family of open sets, which must be
    /// closed under pairwise union and intersection. `∅` and the full set are
    /// added if missing.
    pub fn from_opens(n: usize, opens: &[PointSet]) -> Result<Self> {
        let mut family: BTreeSet<PointSet> = opens.iter().cloned().collect();
        if family.iter().any(|o| o.ground_len() != n) {
            return Err(definition("open set over the wrong ground set"));
        }
        family.insert(PointSet::empty(n));
        family.insert(PointSet::full(n));
        let list: Vec<&PointSet> = family.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                let mut u = (*a).clone();
                u.union_with(b);
                let mut m = (*a).clone();
                m.intersect_with(b);
                if !family.contains(&u) || !family.contains(&m) {
                    return Err(definition(format!(
                        "open family is not closed under union and intersection at {a:?}, {b:?}"
                    )));
                }
            }
        }
        let min_nbhd = (0..n)
            .map(|x| {
                let mut acc = PointSet::full(n);
                for o in family.iter().filter(|o| o.contains(x)) {
                    acc.intersect_with(o);
                }
                acc
            })
            .collect();
        Ok(FiniteTopology { size: n, min_nbhd })
    }

    /// The coarsest topology in which every member of `subbasis` is open.
    pub fn from_subbasis(n: usize, subbasis: &[PointSet]) -> Result<Self> {
        if subbasis.iter().any(|s| s.ground_len() != n) {
            return Err(definition("subbasis member over the wrong ground set"));
        }
        let min_nbhd = (0..n)
            .map(|x| {
                let mut acc = PointSet::full(n);
                for s in subbasis.iter().filter(|s| s.contains(x)) {
                    acc.intersect_with(s);
                }
                acc
            })
            .collect();
        Ok(FiniteTopology { size: n, min_nbhd })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn min_nbhd(&self, x: usize) -> &PointSet {
        &self.min_nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.min_nbhd
    }

    pub fn is_open(&self, set: &PointSet) -> bool {
        set.iter().all(|x| self.min_nbhd[x].is_subset(set))
    }

    pub fn is_closed(&self, set: &PointSet) -> bool {
        self.is_open(&set.complement())
    }

    /// `g` specializes to `f`: `g` lies in every open set containing `f`.
    pub fn specializes(&self, g: usize, f: usize) -> bool {
        self.min_nbhd[f].contains(g)
    }

    /// Every open set, in ascending bitset order. Fails with a resource error
    /// beyond `limit` sets.
    pub fn opens(&self, limit: usize) -> Result<Vec<PointSet>> {
        let mut family = BTreeSet::new();
        family.insert(PointSet::empty(self.size));
        let mut frontier = vec![PointSet::empty(self.size)];
        while let Some(s) = frontier.pop() {
            for x in (0..self.size).filter(|&x| !s.contains(x)) {
                let mut t = s.clone();
                t.union_with(&self.min_nbhd[x]);
                if family.insert(t.clone()) {
                    if family.len() > limit {
                        return Err(Error::Resource {
                            what: "open set enumeration".into(),
                            limit: limit as u64,
                        });
                    }
                    frontier.push(t);
                }
            }
        }
        Ok(family.into_iter().collect())
    }

    pub fn is_discrete(&self) -> bool {
        self.min_nbhd.iter().all(|n| n.count() == 1)
    }

    pub fn is_indiscrete(&self) -> bool {
        self.min_nbhd.iter().all(|n| n.is_full())
    }

    /// Distinct points have disjoint neighbourhoods. On a finite space this
    /// holds exactly for the discrete topology.
    pub fn is_hausdorff(&self) -> bool {
        let separated = (0..self.size)
            .all(|x| (x + 1..self.size).all(|y| self.min_nbhd[x].is_disjoint(&self.min_nbhd[y])));
        debug_assert_eq!(separated, self.is_discrete());
        separated
    }

    /// Topology on `T₁ × T₂` with `(x, y)` at index `x·|T₂| + y`.
    pub fn product(&self, other: &FiniteTopology) -> FiniteTopology {
        let n = self.size * other.size;
        let min_nbhd = (0..n)
            .map(|p| {
                let (x, y) = (p / other.size.max(1), p % other.size.max(1));
                PointSet::from_indices(
                    n,
                    self.min_nbhd[x]
                        .iter()
                        .flat_map(|a| other.min_nbhd[y].iter().map(move |b| a * other.size + b)),
                )
            })
            .collect();
        FiniteTopology { size: n, min_nbhd }
    }

    /// Product of a list of topologies, first factor most significant.
    pub fn product_all(factors: &[FiniteTopology]) -> FiniteTopology {
        factors
            .iter()
            .fold(FiniteTopology::discrete(1), |acc, t| acc.product(t))
    }

    /// Subspace topology on `subset`, points renumbered in ascending order.
    pub fn subspace(&self, subset: &PointSet) -> Result<FiniteTopology> {
        if subset.ground_len() != self.size {
            return Err(definition("subset over the wrong ground set"));
        }
        let members = subset.to_vec();
        let mut position = vec![usize::MAX; self.size];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let k = members.len();
        let min_nbhd = members
            .iter()
            .map(|&m| {
                PointSet::from_indices(
                    k,
                    self.min_nbhd[m]
                        .iter()
                        .filter(|&y| subset.contains(y))
                        .map(|y| position[y]),
                )
            })
            .collect();
        Ok(FiniteTopology { size: k, min_nbhd })
    }

    /// Disjoint union; summands are laid out consecutively.
    pub fn disjoint_union(parts: &[FiniteTopology]) -> Result<FiniteTopology> {
        if parts.is_empty() {
            return Err(definition("disjoint union of an empty list"));
        }
        let n: usize = parts.iter().map(|t| t.size).sum();
        let mut min_nbhd = Vec::with_capacity(n);
        let mut offset = 0;
        for t in parts {
            for x in 0..t.size {
                min_nbhd.push(PointSet::from_indices(
                    n,
                    t.min_nbhd[x].iter().map(|y| y + offset),
                ));
            }
            offset += t.size;
        }
        Ok(FiniteTopology { size: n, min_nbhd })
    }

    /// The finest topology on `{0..codomain_size}` making every `maps[i]`
    /// continuous from `topologies[i]`. With no maps this is discrete.
    pub fn final_topology(
        codomain_size: usize,
        maps: &[FiniteMap],
        topologies: &[&FiniteTopology],
    ) -> Result<FiniteTopology> {
        if maps.len() != topologies.len() {
            return Err(definition("final topology needs one topology per map"));
        }
        // W is open iff f(x) ∈ W and y ∈ N(x) imply f(y) ∈ W: an edge f(x) → f(y).
        let mut edges: Vec<Vec<usize>> = vec![Vec::new(); codomain_size];
        for (f, t) in maps.iter().zip(topologies) {
            if f.codomain_size() != codomain_size {
                return Err(definition(
                    "maps into the final topology disagree on the codomain",
                ));
            }
            if f.domain_size() != t.size {
                return Err(definition("map domain size differs from its topology"));
            }
            for x in 0..t.size {
                for y in t.min_nbhd[x].iter() {
                    if f.apply(x) != f.apply(y) {
                        edges[f.apply(x)].push(f.apply(y));
                    }
                }
            }
        }
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        let min_nbhd = (0..codomain_size)
            .map(|p| {
                let mut seen = PointSet::singleton(codomain_size, p);
                let mut stack = vec![p];
                while let Some(q) = stack.pop() {
                    for &r in &edges[q] {
                        if seen.insert(r) {
                            stack.push(r);
                        }
                    }
                }
                seen
            })
            .collect();
        Ok(FiniteTopology {
            size: codomain_size,
            min_nbhd,
        })
    }

    /// Transports the topology along a bijection `self → codomain`.
    pub fn transport(&self, bijection: &FiniteMap) -> Result<FiniteTopology> {
        if bijection.domain_size() != self.size || !bijection.is_bijective() {
            return Err(definition(
                "transport requires a bijection out of this space",
            ));
        }
        let n = self.size;
        let mut min_nbhd = vec![PointSet::empty(n); n];
        for x in 0..n {
            min_nbhd[bijection.apply(x)] = bijection.image(&self.min_nbhd[x]);
        }
        Ok(FiniteTopology { size: n, min_nbhd })
    }

    /// Containment comparison of the open-set families.
    pub fn compare(&self, other: &FiniteTopology) -> Result<TopologyOrder> {
        if self.size != other.size {
            return Err(definition(format!(
                "cannot compare topologies on {} and {} points",
                self.size, other.size
            )));
        }
        let finer = (0..self.size).all(|x| self.min_nbhd[x].is_subset(&other.min_nbhd[x]));
        let coarser = (0..self.size).all(|x| other.min_nbhd[x].is_subset(&self.min_nbhd[x]));
        Ok(match (finer, coarser) {
            (true, true) => TopologyOrder::Equal,
            (true, false) => TopologyOrder::StrictlyFiner,
            (false, true) => TopologyOrder::StrictlyCoarser,
            (false, false) => TopologyOrder::Incomparable,
        })
    }

    /// Classes of mutually specializing points, each sorted, ordered by least member.
    pub fn specialization_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.size];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.size {
            if class_of[x] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = (x..self.size)
                .filter(|&y| self.specializes(x, y) && self.specializes(y, x))
                .collect();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        classes
    }
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTopology")
            .field("size", &self.size)
            .field("min_nbhd", &self.min_nbhd)
            .finish()
    }
}
