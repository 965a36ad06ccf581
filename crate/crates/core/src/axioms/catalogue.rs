use crate::error::Result;
use crate::finring::FiniteRing;

/// Pairwise non-isomorphic commutative rings of order 2 through 8: fields,
/// products, and local rings with nonzero nilradical.
pub fn small_rings() -> Result<Vec<FiniteRing>> {
    let z = FiniteRing::zmod;
    let f2 = z(2)?;
    let f2x2 = FiniteRing::truncated_polynomial(&f2, &[0, 0], "x")?;
    let f4 = FiniteRing::truncated_polynomial(&f2, &[1, 1], "x")?;
    let z4 = z(4)?;
    let z4x = FiniteRing::truncated_polynomial(&z4, &[0, 0], "x")?;
    // x lives at index 4 and 2x at index 8 in Z/4[x]/(m)
    let z4_2x_x2 = z4x.quotient(&[8])?;
    let z4_eisenstein = FiniteRing::truncated_polynomial(&z4, &[2, 0], "x")?.quotient(&[8])?;
    Ok(vec![
        f2.clone(),
        z(3)?,
        z4.clone(),
        f4.clone(),
        f2x2.clone(),
        FiniteRing::product(&[f2.clone(), f2.clone()])?,
        z(5)?,
        z(6)?,
        z(7)?,
        z(8)?,
        FiniteRing::truncated_polynomial(&f2, &[1, 1, 0], "x")?,
        FiniteRing::truncated_polynomial(&f2, &[0, 0, 0], "x")?,
        FiniteRing::square_zero_extension(&f2, 2)?,
        z4_2x_x2,
        z4_eisenstein,
        FiniteRing::product(&[z4, f2.clone()])?,
        FiniteRing::product(&[f2x2, f2.clone()])?,
        FiniteRing::product(&[f4, f2.clone()])?,
        FiniteRing::product(&[f2.clone(), f2.clone(), f2])?,
    ])
}
