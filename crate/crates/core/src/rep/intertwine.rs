//! Module homomorphisms over GF(p), found by exact nullspace computations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{matrix, Representation};
use crate::error::{Error, Result};
use crate::polycore::{LinearSystem, Matrix, Monomial};

const SEED: u64 = 0x5eed_c0de;
const TRIES: usize = 64;

/// Adds the equations `(T A_V − A_W T)_{ij} = 0`, T unknown at columns
/// `base + k * dim V + l`, one equation per group monomial.
fn add_equivariance<K: Ord + Clone>(
    sys: &mut LinearSystem<K>,
    key: impl Fn(usize, usize, Monomial) -> K,
    v: &Representation,
    w: &Representation,
    base: usize,
) {
    let p = v.p();
    let (n, m) = (v.dim(), w.dim());
    for i in 0..m {
        for j in 0..n {
            for l in 0..n {
                for (mono, c) in v.action[l][j].terms() {
                    sys.add(key(i, j, mono.clone()), base + i * n + l, c);
                }
            }
            for k in 0..m {
                for (mono, c) in w.action[i][k].terms() {
                    sys.add(key(i, j, mono.clone()), base + k * n + j, (p - c) % p);
                }
            }
        }
    }
}

fn to_matrix(p: u32, rows: usize, cols: usize, v: &[u32]) -> Matrix {
    let mut t = Matrix::zeros(p, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            t.set(i, j, v[i * cols + j]);
        }
    }
    t
}

/// A basis of `Hom_G(V, W)`: matrices `T` (dim W × dim V) with `T A_V = A_W T`.
pub fn intertwiners(v: &Representation, w: &Representation) -> Result<Vec<Matrix>> {
    v.same_group(w)?;
    let (n, m) = (v.dim(), w.dim());
    let mut sys: LinearSystem<(usize, usize, Monomial)> = LinearSystem::new(v.p(), n * m);
    add_equivariance(&mut sys, |i, j, mo| (i, j, mo), v, w, 0);
    Ok(sys
        .nullspace()
        .iter()
        .map(|x| to_matrix(v.p(), m, n, x))
        .collect())
}

pub fn is_intertwiner(t: &Matrix, v: &Representation, w: &Representation) -> bool {
    if t.rows() != w.dim() || t.cols() != v.dim() || *v.group != *w.group {
        return false;
    }
    let p = v.p();
    let tm = matrix::constant(t);
    let lhs = matrix::mul(p, &tm, &v.action);
    let rhs = matrix::mul(p, &w.action, &tm);
    matrix::congruent(&v.group, &lhs, &rhs, 1)
}

/// An inclusion `U → W` together with an equivariant left inverse, proving
/// that U is a direct summand of W.
#[derive(Clone, Debug)]
pub struct SummandWitness {
    pub inclusion: Matrix,
    pub projection: Matrix,
}

impl SummandWitness {
    pub fn verify(&self, u: &Representation, w: &Representation) -> Result<()> {
        if !is_intertwiner(&self.inclusion, u, w) {
            return Err(Error::SummandWitness("inclusion is not equivariant".into()));
        }
        if !is_intertwiner(&self.projection, w, u) {
            return Err(Error::SummandWitness(
                "projection is not equivariant".into(),
            ));
        }
        if self.projection.mul(&self.inclusion) != Matrix::identity(u.p(), u.dim()) {
            return Err(Error::SummandWitness(
                "projection is not a left inverse".into(),
            ));
        }
        Ok(())
    }
}

/// Completes an equivariant inclusion `t: U → W` to a summand witness.
pub fn summand_witness(
    u: &Representation,
    w: &Representation,
    t: &Matrix,
) -> Result<SummandWitness> {
    if !is_intertwiner(t, u, w) {
        return Err(Error::SummandWitness("inclusion is not equivariant".into()));
    }
    let p = u.p();
    let (n, m) = (u.dim(), w.dim());
    // unknown P (n × m); equivariance P A_W = A_U P, and P t = I
    let mut sys: LinearSystem<(u8, usize, usize, Monomial)> = LinearSystem::new(p, n * m);
    add_equivariance(&mut sys, |i, j, mo| (0, i, j, mo), w, u, 0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                sys.add((1, i, j, Monomial::one()), i * m + k, t.get(k, j));
            }
            sys.add_rhs((1, i, j, Monomial::one()), (i == j) as u32);
        }
    }
    let sol = sys.solve();
    let x = sol
        .solution
        .ok_or_else(|| Error::SummandWitness("no equivariant left inverse exists".into()))?;
    let wit = SummandWitness {
        inclusion: t.clone(),
        projection: to_matrix(p, n, m, &x),
    };
    wit.verify(u, w)?;
    Ok(wit)
}

/// Deterministic candidates from a basis: the basis elements, then seeded random combinations.
fn candidates(basis: &[Matrix], p: u32) -> impl Iterator<Item = Matrix> + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let combos = (0..TRIES).map(move |_| {
        let mut acc = Matrix::zeros(p, basis[0].rows(), basis[0].cols());
        for b in basis {
            let c: u32 = rng.gen_range(0..p);
            for i in 0..acc.rows() {
                for j in 0..acc.cols() {
                    let v = (acc.get(i, j) as u64 + c as u64 * b.get(i, j) as u64) % p as u64;
                    acc.set(i, j, v as u32);
                }
            }
        }
        acc
    });
    basis.iter().cloned().chain(combos)
}

/// An equivariant embedding of U into W as a direct summand, if one is found.
pub fn find_embedding(u: &Representation, w: &Representation) -> Result<Option<SummandWitness>> {
    let basis = intertwiners(u, w)?;
    if basis.is_empty() {
        return Ok(None);
    }
    for t in candidates(&basis, u.p()) {
        if t.rank() == u.dim() {
            if let Ok(wit) = summand_witness(u, w, &t) {
                return Ok(Some(wit));
            }
        }
    }
    Ok(None)
}

/// An invertible intertwiner `V → W`, if one is found.
pub fn find_isomorphism(v: &Representation, w: &Representation) -> Result<Option<Matrix>> {
    if v.dim() != w.dim() {
        return Ok(None);
    }
    let basis = intertwiners(v, w)?;
    if basis.is_empty() {
        return Ok(None);
    }
    let found = candidates(&basis, v.p()).find(|t| t.rank() == v.dim());
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, BuiltinGroup};
    use crate::rep::{direct_sum, dual, symmetric_power};

    #[test]
    fn natural_sl2_is_self_dual() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let v = Representation::natural(&g).unwrap();
        let d = dual(&v).unwrap();
        let t = find_isomorphism(&v, &d).unwrap().unwrap();
        assert!(is_intertwiner(&t, &v, &d));
    }

    #[test]
    fn summand_of_a_sum() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let v = Representation::natural(&g).unwrap();
        let s2 = symmetric_power(&v, 2).unwrap();
        let sum = direct_sum(&s2, &v).unwrap();
        let wit = find_embedding(&v, &sum).unwrap().unwrap();
        wit.verify(&v, &sum).unwrap();
        // S²(K²) at p=2 has no summand isomorphic to its Frobenius submodule
        let g2 = builtin_group(BuiltinGroup::SL2, 2).unwrap();
        let v2 = Representation::natural(&g2).unwrap();
        let s = symmetric_power(&v2, 2).unwrap();
        let f = crate::rep::frobenius_power(&v2).unwrap();
        assert!(find_embedding(&f.rep, &s).unwrap().is_none());
    }

    #[test]
    fn hom_between_non_isomorphic_is_zero() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let v = Representation::natural(&g).unwrap();
        let t = Representation::trivial(&g, 1);
        assert!(intertwiners(&v, &t).unwrap().is_empty());
    }
}
