//! Finite commutative rings, their structure theory, and finitely presented
//! algebras over them.

mod parse;
mod poly;
mod presentation;
mod ring;
mod structure;

pub use parse::{parse_polynomial, MAX_EXPONENT};
pub(crate) use poly::CompiledPoly;
pub use poly::{Polynomial, MAX_TERMS};
pub use presentation::{
    coproduct_offsets, coproduct_presentation, fresh_name, localize_presentation,
    pushout_presentation, AlgebraMap, AlgebraPresentation,
};
pub use ring::{Elem, FiniteRing, RingHom, MAX_RING_SIZE};
pub use structure::{
    idempotent_lift, idempotents, is_local, is_valid_lift, local_decomposition, units,
    LocalDecomposition,
};

/// Evaluates `p` at `assignment` in the target of `structure`.
pub fn eval_poly(p: &Polynomial, assignment: &[Elem], structure: &RingHom) -> crate::Result<Elem> {
    p.eval(assignment, structure)
}
