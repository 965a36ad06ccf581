//! Units, idempotents and the decomposition of a finite ring into local factors.

use crate::error::{precondition, Result};

use super::ring::{Elem, FiniteRing, RingHom};

/// All units of `ring`, ascending.
pub fn units(ring: &FiniteRing) -> Vec<Elem> {
    ring.elements().filter(|&r| ring.is_unit(r)).collect()
}

/// All idempotents of `ring`, ascending.
pub fn idempotents(ring: &FiniteRing) -> Vec<Elem> {
    ring.elements().filter(|&e| ring.mul(e, e) == e).collect()
}

/// Complete set of orthogonal primitive idempotents together with the local
/// factor rings `eᵢR` and the projections `r ↦ eᵢr`.
#[derive(Clone, Debug)]
pub struct LocalDecomposition {
    pub idempotents: Vec<Elem>,
    pub factors: Vec<FiniteRing>,
    pub projections: Vec<RingHom>,
    /// For each factor, the elements of `eᵢR` as indices of the original ring;
    /// position `j` holds the element with factor index `j`.
    pub embeddings: Vec<Vec<Elem>>,
}

impl LocalDecomposition {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Lifts a factor element back into the original ring.
    pub fn embed(&self, factor: usize, e: Elem) -> Elem {
        self.embeddings[factor][e]
    }

    /// The factor whose idempotent `e` covers: `e·fⱼ = fⱼ`. For an idempotent
    /// `e` the factor-wise components are 0 or 1, so this lists every such `j`.
    pub fn support(&self, ring: &FiniteRing, e: Elem) -> Vec<usize> {
        self.idempotents
            .iter()
            .enumerate()
            .filter(|&(_, &f)| ring.mul(e, f) == f)
            .map(|(j, _)| j)
            .collect()
    }
}

/// Decomposes `ring` into local rings along its primitive idempotents.
///
/// The factor list is empty only for the zero ring.
pub fn local_decomposition(ring: &FiniteRing) -> LocalDecomposition {
    let idem = idempotents(ring);
    let primitive: Vec<Elem> = idem
        .iter()
        .copied()
        .filter(|&e| e != ring.zero())
        .filter(|&e| {
            !idem
                .iter()
                .any(|&f| f != ring.zero() && f != e && ring.mul(e, f) == f)
        })
        .collect();

    let mut factors = Vec::with_capacity(primitive.len());
    let mut projections = Vec::with_capacity(primitive.len());
    let mut embeddings = Vec::with_capacity(primitive.len());
    for (j, &e) in primitive.iter().enumerate() {
        let mut members: Vec<Elem> = ring.elements().map(|r| ring.mul(e, r)).collect();
        members.sort_unstable();
        members.dedup();
        let mut position = vec![usize::MAX; ring.size()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let m = members.len();
        let add = (0..m * m)
            .map(|k| position[ring.add(members[k / m], members[k % m])])
            .collect();
        let mul = (0..m * m)
            .map(|k| position[ring.mul(members[k / m], members[k % m])])
            .collect();
        let labels = members
            .iter()
            .map(|&r| ring.element_label(r).to_string())
            .collect();
        let factor = FiniteRing::build(
            format!("{}·e{j}", ring.label()),
            m,
            add,
            mul,
            position[ring.zero()],
            position[e],
            labels,
        )
        .expect("a corner ring eR of a commutative ring is a ring");
        let table = ring.elements().map(|r| position[ring.mul(e, r)]).collect();
        projections.push(RingHom::new_unchecked(ring.clone(), factor.clone(), table));
        factors.push(factor);
        embeddings.push(members);
    }
    LocalDecomposition {
        idempotents: primitive,
        factors,
        projections,
        embeddings,
    }
}

/// A finite ring is local iff it has exactly one primitive idempotent.
pub fn is_local(ring: &FiniteRing) -> bool {
    local_decomposition(ring).len() == 1
}

/// Given `h₁ + … + hₙ = 1`, returns idempotents `eᵢ ∈ (hᵢ)` with `Σ eᵢ = 1`.
///
/// Every local factor is assigned to the least index whose `hᵢ` is a unit
/// there; `eᵢ` is the sum of the idempotents of its assigned factors.
pub fn idempotent_lift(ring: &FiniteRing, h: &[Elem]) -> Result<Vec<Elem>> {
    ring.check_elems(h)?;
    let total = h.iter().fold(ring.zero(), |acc, &x| ring.add(acc, x));
    if total != ring.one() {
        return Err(precondition(format!(
            "the given elements sum to {} rather than 1",
            ring.element_label(total)
        )));
    }
    let dec = local_decomposition(ring);
    let mut lifted = vec![ring.zero(); h.len()];
    for (j, proj) in dec.projections.iter().enumerate() {
        let factor = &dec.factors[j];
        // in a local ring a sum of non-units is a non-unit, so some hᵢ must be a unit
        let i = h
            .iter()
            .position(|&x| factor.is_unit(proj.apply(x)))
            .expect("images of a partition of unity in a local ring contain a unit");
        lifted[i] = ring.add(lifted[i], dec.idempotents[j]);
    }
    Ok(lifted)
}

/// Checks the three postconditions of [`idempotent_lift`] directly.
pub fn is_valid_lift(ring: &FiniteRing, h: &[Elem], e: &[Elem]) -> bool {
    h.len() == e.len()
        && e.iter().all(|&x| ring.mul(x, x) == x)
        && h.iter()
            .zip(e)
            .all(|(&hi, &ei)| ring.elements().any(|s| ring.mul(hi, s) == ei))
        && e.iter().fold(ring.zero(), |acc, &x| ring.add(acc, x)) == ring.one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteRing {
        FiniteRing::zmod(n).unwrap()
    }

    #[test]
    fn units_of_small_rings() {
        assert_eq!(units(&z(4)), vec![1, 3]);
        assert_eq!(units(&z(6)), vec![1, 5]);
        let p = FiniteRing::product(&[z(2), z(3)]).unwrap();
        let labels: Vec<&str> = units(&p).iter().map(|&u| p.element_label(u)).collect();
        assert_eq!(labels, vec!["(1,1)", "(1,2)"]);
    }

    #[test]
    fn idempotents_by_brute_force() {
        // oracle: e² = e over every element
        for n in [4, 6] {
            let r = z(n);
            let oracle: Vec<usize> = (0..n).filter(|&e| (e * e) % n == e).collect();
            assert_eq!(idempotents(&r), oracle);
        }
        assert_eq!(idempotents(&z(6)), vec![0, 1, 3, 4]);
        assert_eq!(idempotents(&z(4)), vec![0, 1]);
        let klein = FiniteRing::product(&[z(2), z(2)]).unwrap();
        assert_eq!(idempotents(&klein).len(), 4);
    }

    #[test]
    fn decomposition_examples() {
        let d4 = local_decomposition(&z(4));
        assert_eq!(d4.idempotents, vec![1]);
        assert_eq!(d4.factors[0].size(), 4);

        let d6 = local_decomposition(&z(6));
        assert_eq!(d6.idempotents, vec![3, 4]);
        let sizes: Vec<usize> = d6.factors.iter().map(|f| f.size()).collect();
        assert_eq!(sizes, vec![2, 3]);
        assert_eq!(d6.embeddings[1], vec![0, 2, 4]);

        let klein = FiniteRing::product(&[z(2), z(2)]).unwrap();
        let dk = local_decomposition(&klein);
        let labels: Vec<&str> = dk
            .idempotents
            .iter()
            .map(|&e| klein.element_label(e))
            .collect();
        assert_eq!(labels, vec!["(0,1)", "(1,0)"]);
        assert!(dk.factors.iter().all(|f| f.size() == 2));
    }

    #[test]
    fn zero_ring_has_no_factors() {
        let d = local_decomposition(&z(1));
        assert!(d.is_empty());
        assert_eq!(idempotent_lift(&z(1), &[0]).unwrap(), vec![0]);
    }

    #[test]
    fn lift_examples() {
        assert_eq!(idempotent_lift(&z(6), &[3, 4]).unwrap(), vec![3, 4]);
        assert_eq!(idempotent_lift(&z(4), &[3, 2]).unwrap(), vec![1, 0]);
        assert_eq!(idempotent_lift(&z(9), &[1]).unwrap(), vec![1]);
    }

    #[test]
    fn lift_rejects_non_partitions() {
        let err = idempotent_lift(&z(6), &[3, 3]).unwrap_err();
        assert!(matches!(err, crate::Error::Precondition(_)));
    }

    #[test]
    fn lift_ties_go_to_least_index() {
        // 1 = 1 + 0 + 0 in ℤ/5: the first term is a unit
        assert_eq!(idempotent_lift(&z(5), &[2, 4]).unwrap(), vec![1, 0]);
    }
}
