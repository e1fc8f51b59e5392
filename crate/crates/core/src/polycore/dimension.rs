//! Codimension of homogeneous ideals via their leading-term ideals.
//!
//! For a monomial ideal the Krull dimension of the quotient is the size of the
//! largest set of variables containing the support of no generator; dually the
//! codimension is the size of the smallest variable set meeting every support.

use super::groebner::groebner;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Height of the ideal generated by homogeneous polynomials of positive degree.
pub fn ideal_codim(gens: &[Poly]) -> Result<usize> {
    let gens: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &gens {
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
        if g.is_constant() {
            return Err(Error::InvalidConstruction(format!(
                "generator {g} has degree zero"
            )));
        }
    }
    if gens.is_empty() {
        return Ok(0);
    }
    let gb = groebner(&gens)?;
    let supports: Vec<u128> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            m.support().fold(0u128, |acc, i| {
                assert!(i < 128, "more than 128 variables");
                acc | (1u128 << i)
            })
        })
        .collect();
    Ok(min_transversal(&supports))
}

/// Krull dimension of `K[x_0..x_{n-1}] / (gens)`.
pub fn krull_dimension(gens: &[Poly], n: usize) -> Result<usize> {
    Ok(n - ideal_codim(gens)?)
}

/// Size of the smallest variable set meeting every support set.
pub fn min_transversal(supports: &[u128]) -> usize {
    let mut sets: Vec<u128> = supports.to_vec();
    sets.sort_by_key(|s| s.count_ones());
    sets.dedup();
    let mut best = usize::MAX;
    search(&sets, 0, 0, &mut best);
    best
}

fn search(sets: &[u128], chosen: u128, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // smallest support not yet met
    let open = sets
        .iter()
        .filter(|&&s| s & chosen == 0)
        .min_by_key(|s| s.count_ones());
    match open {
        None => *best = size,
        Some(&s) => {
            let mut bits = s;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                search(sets, chosen | (1u128 << v), size + 1, best);
            }
        }
    }
}

/// Whether two homogeneous forms of positive degree are coprime, decided by
/// checking that they generate an ideal of height two.
pub fn coprime(a1: &Poly, a2: &Poly) -> Result<bool> {
    if a1.is_zero() || a2.is_zero() {
        return Err(Error::ZeroInput("coprimality needs nonzero forms".into()));
    }
    if a1.characteristic() != a2.characteristic() {
        return Err(Error::RingMismatch(
            a1.characteristic(),
            a2.characteristic(),
        ));
    }
    Ok(ideal_codim(&[a1.clone(), a2.clone()])? == 2)
}
