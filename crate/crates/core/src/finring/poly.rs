use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{definition, Error, Result};

use super::ring::{Elem, FiniteRing, RingHom};

/// Upper bound on the number of terms any polynomial operation may produce.
pub const MAX_TERMS: usize = 4096;

/// A sparse polynomial with coefficients in a finite base ring.
///
/// Coefficients are element indices of the base ring, which is not stored;
/// arithmetic takes it as an argument. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, Elem>,
}

impl Polynomial {
    pub fn zero(variables: &[String]) -> Self {
        Polynomial {
            variables: variables.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(variables: &[String], c: Elem, base: &FiniteRing) -> Self {
        let mut p = Self::zero(variables);
        if c != base.zero() {
            p.terms.insert(vec![0; variables.len()], c);
        }
        p
    }

    /// The polynomial consisting of the single variable at `index`.
    pub fn variable(variables: &[String], index: usize, base: &FiniteRing) -> Result<Self> {
        if index >= variables.len() {
            return Err(definition(format!("variable index {index} out of range")));
        }
        let mut exps = vec![0; variables.len()];
        exps[index] = 1;
        let mut p = Self::zero(variables);
        if base.one() != base.zero() {
            p.terms.insert(exps, base.one());
        }
        Ok(p)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms(
        variables: &[String],
        terms: impl IntoIterator<Item = (Vec<u32>, Elem)>,
        base: &FiniteRing,
    ) -> Result<Self> {
        let mut p = Self::zero(variables);
        for (exps, c) in terms {
            if exps.len() != variables.len() {
                return Err(definition(
                    "exponent vector length differs from the variable count",
                ));
            }
            base.check_elems(&[c])?;
            p.add_term(exps, c, base);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Elem, base: &FiniteRing) {
        match self.terms.entry(exps) {
            Entry::Occupied(mut slot) => {
                let v = base.add(*slot.get(), c);
                if v == base.zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = v;
                }
            }
            Entry::Vacant(slot) => {
                if c != base.zero() {
                    slot.insert(c);
                }
            }
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Elem)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest index of a variable occurring with positive exponent.
    pub fn max_variable(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.variables != other.variables {
            return Err(definition(format!(
                "polynomials over different variable lists: {:?} vs {:?}",
                self.variables, other.variables
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self, base: &FiniteRing) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c, base);
        }
        check_size(&out)?;
        Ok(out)
    }

    pub fn neg(&self, base: &FiniteRing) -> Self {
        Polynomial {
            variables: self.variables.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self, base: &FiniteRing) -> Result<Self> {
        self.add(&other.neg(base), base)
    }

    pub fn mul(&self, other: &Self, base: &FiniteRing) -> Result<Self> {
        self.check_same_vars(other)?;
        if self.terms.len().saturating_mul(other.terms.len()) > MAX_TERMS * 16 {
            return Err(Error::Resource {
                what: "polynomial product".into(),
                limit: MAX_TERMS as u64,
            });
        }
        let mut out = Self::zero(&self.variables);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let exps = ea
                    .iter()
                    .zip(eb)
                    .map(|(x, y)| x.checked_add(*y))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| Error::Resource {
                        what: "exponent overflow".into(),
                        limit: u32::MAX as u64,
                    })?;
                out.add_term(exps, base.mul(ca, cb), base);
            }
        }
        check_size(&out)?;
        Ok(out)
    }

    pub fn pow(&self, exp: u32, base: &FiniteRing) -> Result<Self> {
        let mut acc = Self::constant(&self.variables, base.one(), base);
        for _ in 0..exp {
            acc = acc.mul(self, base)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: Elem, base: &FiniteRing) -> Self {
        let mut out = Self::zero(&self.variables);
        for (e, &x) in &self.terms {
            out.add_term(e.clone(), base.mul(c, x), base);
        }
        out
    }

    /// Re-expresses the polynomial over `variables`, sending old variable `i`
    /// to new variable `positions[i]`.
    pub fn embed(&self, variables: &[String], positions: &[usize]) -> Result<Self> {
        if positions.len() != self.variables.len()
            || positions.iter().any(|&p| p >= variables.len())
        {
            return Err(definition(
                "variable embedding does not match the variable lists",
            ));
        }
        let mut seen = vec![false; variables.len()];
        for &p in positions {
            if std::mem::replace(&mut seen[p], true) {
                return Err(definition("variable embedding must be injective"));
            }
        }
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut ne = vec![0; variables.len()];
            for (i, &x) in e.iter().enumerate() {
                ne[positions[i]] += x;
            }
            terms.insert(ne, c);
        }
        Ok(Polynomial {
            variables: variables.to_vec(),
            terms,
        })
    }

    /// Substitutes `images[i]` for variable `i`. All images share one variable list.
    pub fn substitute(
        &self,
        images: &[Polynomial],
        target_vars: &[String],
        base: &FiniteRing,
    ) -> Result<Self> {
        if images.len() != self.variables.len() {
            return Err(definition("substitution must give one image per variable"));
        }
        if images.iter().any(|p| p.variables != target_vars) {
            return Err(definition(
                "substitution images must share the target variable list",
            ));
        }
        let mut out = Self::zero(target_vars);
        for (e, &c) in &self.terms {
            let mut term = Self::constant(target_vars, c, base);
            for (img, &x) in images.iter().zip(e) {
                if x > 0 {
                    term = term.mul(&img.pow(x, base)?, base)?;
                }
            }
            out = out.add(&term, base)?;
        }
        Ok(out)
    }

    /// Evaluates the polynomial at `assignment` in `structure.target()`,
    /// mapping coefficients through `structure`.
    pub fn eval(&self, assignment: &[Elem], structure: &RingHom) -> Result<Elem> {
        if assignment.len() < self.variables.len() {
            let missing = &self.variables[assignment.len()];
            return Err(definition(format!("unbound variable `{missing}`")));
        }
        let target = structure.target();
        target.check_elems(&assignment[..self.variables.len()])?;
        Ok(self.eval_unchecked(assignment, structure))
    }

    pub(crate) fn eval_unchecked(&self, assignment: &[Elem], structure: &RingHom) -> Elem {
        let r = structure.target();
        let mut acc = r.zero();
        for (e, &c) in &self.terms {
            let mut t = structure.apply(c);
            for (&x, &v) in e.iter().zip(assignment) {
                if x > 0 {
                    t = r.mul(t, r.pow(v, x));
                }
            }
            acc = r.add(acc, t);
        }
        acc
    }

    /// Human-readable form using the base ring's element labels.
    pub fn display(&self, base: &FiniteRing) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (e, &c)) in self.terms.iter().enumerate() {
            if n > 0 {
                out.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        self.variables[i].clone()
                    } else {
                        format!("{}^{x}", self.variables[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(base.element_label(c));
            } else {
                if c != base.one() {
                    let _ = write!(out, "{}*", base.element_label(c));
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

fn check_size(p: &Polynomial) -> Result<()> {
    if p.terms.len() > MAX_TERMS {
        return Err(Error::Resource {
            what: "polynomial term count".into(),
            limit: MAX_TERMS as u64,
        });
    }
    Ok(())
}

/// A polynomial flattened for repeated evaluation in one target ring.
#[derive(Clone, Debug)]
pub(crate) struct CompiledPoly {
    terms: Vec<(Elem, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub(crate) fn new(p: &Polynomial, structure: &RingHom) -> Self {
        let terms = p
            .terms
            .iter()
            .map(|(e, &c)| {
                let factors = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| (i, x))
                    .collect();
                (structure.apply(c), factors)
            })
            .collect();
        CompiledPoly { terms }
    }

    #[inline]
    pub(crate) fn eval(&self, r: &FiniteRing, assignment: &[Elem]) -> Elem {
        let mut acc = r.zero();
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, x) in factors {
                t = r.mul(t, r.pow(assignment[i], x));
            }
            acc = r.add(acc, t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn eval_examples() {
        let z4 = FiniteRing::zmod(4).unwrap();
        let id4 = RingHom::identity(&z4);
        let v = vars(&["x"]);
        let p = Polynomial::from_terms(&v, [(vec![2], 1), (vec![0], 3)], &z4).unwrap();
        assert_eq!(p.eval(&[2], &id4).unwrap(), 3);
        assert_eq!(Polynomial::zero(&v).eval(&[3], &id4).unwrap(), 0);

        let z6 = FiniteRing::zmod(6).unwrap();
        let id6 = RingHom::identity(&z6);
        let v2 = vars(&["x", "y"]);
        let q = Polynomial::from_terms(&v2, [(vec![1, 1], 1), (vec![0, 0], 5)], &z6).unwrap();
        assert_eq!(q.eval(&[5, 5], &id6).unwrap(), 0);
    }

    #[test]
    fn unbound_variable_is_an_error() {
        let z6 = FiniteRing::zmod(6).unwrap();
        let v2 = vars(&["x", "y"]);
        let q = Polynomial::variable(&v2, 1, &z6).unwrap();
        let err = q.eval(&[1], &RingHom::identity(&z6)).unwrap_err();
        assert_eq!(err, Error::Definition("unbound variable `y`".into()));
    }

    #[test]
    fn coefficients_go_through_structure_map() {
        let z12 = FiniteRing::zmod(12).unwrap();
        let z4 = FiniteRing::zmod(4).unwrap();
        let s = RingHom::canonical(&z12, &z4).unwrap();
        let v = vars(&["t"]);
        let p = Polynomial::from_terms(&v, [(vec![1], 7)], &z12).unwrap();
        assert_eq!(p.eval(&[1], &s).unwrap(), 3);
    }

    #[test]
    fn substitution_composes() {
        let z5 = FiniteRing::zmod(5).unwrap();
        let v = vars(&["t"]);
        let t = Polynomial::variable(&v, 0, &z5).unwrap();
        let t2 = t.mul(&t, &z5).unwrap();
        let one = Polynomial::constant(&v, 1, &z5);
        let t2p1 = t2.add(&one, &z5).unwrap();
        // (t²+1)∘(t²) = t⁴+1
        let composed = t2p1.substitute(std::slice::from_ref(&t2), &v, &z5).unwrap();
        let id = RingHom::identity(&z5);
        for x in 0..5 {
            assert_eq!(composed.eval(&[x], &id).unwrap(), (x * x * x * x + 1) % 5);
        }
        assert_eq!(t2.sub(&t2, &z5).unwrap(), Polynomial::zero(&v));
    }

    #[test]
    fn max_variable_ignores_zero_exponents() {
        let z3 = FiniteRing::zmod(3).unwrap();
        let v = vars(&["a", "b", "c"]);
        let p = Polynomial::from_terms(&v, [(vec![1, 2, 0], 1), (vec![0, 0, 0], 2)], &z3).unwrap();
        assert_eq!(p.max_variable(), Some(1));
        assert_eq!(Polynomial::constant(&v, 1, &z3).max_variable(), None);
    }
}
