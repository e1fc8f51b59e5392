//! Constructions of new modules from old ones.

use std::collections::HashMap;

use super::{matrix, PolyMatrix, Provenance, Representation, Submodule};
use crate::cohom::Cocycle;
use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::polycore::{monomials_of_degree, Matrix, Monomial, Poly};

/// `V*` with action `A(σ⁻¹)ᵀ`.
pub fn dual(v: &Representation) -> Result<Representation> {
    let a = matrix::transpose(v.p(), &v.inverse_action());
    let labels = v.labels.iter().map(|l| format!("{l}*")).collect();
    let prov = Provenance::node("dual", vec![v.provenance.clone()]);
    Representation::new(v.group.clone(), a, labels, v.blocks.clone(), prov)
}

pub fn direct_sum(v: &Representation, w: &Representation) -> Result<Representation> {
    direct_sum_all(&[v.clone(), w.clone()])
}

pub fn direct_sum_all(parts: &[Representation]) -> Result<Representation> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidConstruction("empty direct sum".into()))?;
    for w in parts {
        first.same_group(w)?;
    }
    let p = first.p();
    let n: usize = parts.iter().map(|w| w.dim()).sum();
    let mut a = matrix::zeros(p, n, n);
    let mut labels = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut start = 0;
    for w in parts {
        for i in 0..w.dim() {
            for j in 0..w.dim() {
                a[start + i][start + j] = w.action[i][j].clone();
            }
        }
        labels.extend(w.labels.iter().cloned());
        blocks.extend(w.blocks.iter().copied());
        start += w.dim();
    }
    let prov = Provenance::node("sum", parts.iter().map(|w| w.provenance.clone()).collect());
    Representation::new(first.group.clone(), a, labels, blocks, prov)
}

/// `V ⊗ W` on the basis `v_i ⊗ w_k` in row-major order `(i, k)`.
pub fn tensor(v: &Representation, w: &Representation) -> Result<Representation> {
    v.same_group(w)?;
    let p = v.p();
    let (n, m) = (v.dim(), w.dim());
    let mut a = matrix::zeros(p, n * m, n * m);
    for i in 0..n {
        for j in 0..n {
            if v.action[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    a[i * m + k][j * m + l] = &v.action[i][j] * &w.action[k][l];
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(n * m);
    for x in &v.labels {
        for y in &w.labels {
            labels.push(format!("{x}⊗{y}"));
        }
    }
    let prov = Provenance::node("tensor", vec![v.provenance.clone(), w.provenance.clone()]);
    let blocks = if n * m == 0 { vec![] } else { vec![n * m] };
    Representation::new(v.group.clone(), a, labels, blocks, prov)
}

/// Degree-`d` monomials in `n` basis vectors: pure powers first, then the rest
/// in decreasing lexicographic order of exponents.
pub fn symmetric_basis(n: usize, d: u32) -> Vec<Monomial> {
    let exps = |m: &Monomial| (0..n).map(|i| m.exponent(i)).collect::<Vec<_>>();
    let mut pure: Vec<Monomial> = (0..n)
        .map(|i| {
            let mut e = vec![0u32; n];
            e[i] = d;
            Monomial::from_exponents(&e)
        })
        .collect();
    let mut rest: Vec<Monomial> = monomials_of_degree(n, d)
        .into_iter()
        .filter(|m| m.support().count() > 1)
        .collect();
    rest.sort_by_key(|m| std::cmp::Reverse(exps(m)));
    if d == 0 {
        return vec![Monomial::one()];
    }
    pure.append(&mut rest);
    pure
}

fn monomial_label(labels: &[String], m: &Monomial) -> String {
    let mut s = String::new();
    for (i, e) in m.exponents() {
        let l = &labels[i];
        let simple = l.chars().all(|c| c.is_alphanumeric());
        if simple {
            s.push_str(l);
        } else {
            s.push_str(&format!("({l})"));
        }
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// `S^d(V)` on [`symmetric_basis`].
pub fn symmetric_power(v: &Representation, d: u32) -> Result<Representation> {
    if d == 0 {
        return Err(Error::InvalidConstruction(
            "symmetric power of degree 0".into(),
        ));
    }
    let p = v.p();
    let n = v.dim();
    let g = &v.group;
    let basis = symmetric_basis(n, d);
    let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    // σ·e_i = Σ_j A_{ji} e_j, with the group coordinates placed after the e's
    let shifted = v.action_at(0, n);
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            let mut f = Poly::zero(p);
            for j in 0..n {
                f.add_assign_ref(&(&Poly::var(p, j) * &shifted[j][i]));
            }
            f
        })
        .collect();
    let mut a = matrix::zeros(p, basis.len(), basis.len());
    for (col, mu) in basis.iter().enumerate() {
        let img = Poly::term(p, mu.clone(), 1).substitute_with(&images, |q| g.reduce(&q, 1, n));
        for (nu, coef) in img.split_at(n) {
            let row = index[&nu];
            a[row][col] = coef.map_vars(|i| i - n);
        }
    }
    let labels = basis.iter().map(|m| monomial_label(&v.labels, m)).collect();
    let prov = Provenance::node(format!("sym{d}"), vec![v.provenance.clone()]);
    let blocks = if basis.is_empty() {
        vec![]
    } else {
        vec![basis.len()]
    };
    Representation::new(g.clone(), a, labels, blocks, prov)
}

/// The span of `e_i^p` inside `S^p(V)`, which is the first `dim V` coordinates.
pub fn frobenius_power(v: &Representation) -> Result<Submodule> {
    let p = v.p();
    let s = symmetric_power(v, p)?;
    let n = v.dim();
    let mut incl = Matrix::zeros(p, s.dim(), n);
    for i in 0..n {
        incl.set(i, i, 1);
    }
    let mut sub = Submodule::new(&s, incl)?;
    sub.rep.provenance = Provenance::node(format!("frob{p}"), vec![v.provenance.clone()]);
    Ok(sub)
}

fn check_ambient(v: &Representation, w: &Submodule) -> Result<()> {
    if w.ambient != *v {
        return Err(Error::InvalidSubmodule(
            "submodule of a different module".into(),
        ));
    }
    Ok(())
}

/// `V/W` on the complement coordinates, `Q = A_CC − I_C I_P⁻¹ A_PC`.
pub fn quotient(v: &Representation, w: &Submodule) -> Result<Representation> {
    check_ambient(v, w)?;
    let p = v.p();
    let c = &w.complement;
    let k = matrix::constant(&w.complement_map());
    let a_pc: PolyMatrix = w
        .pivots
        .iter()
        .map(|&i| c.iter().map(|&j| v.action[i][j].clone()).collect())
        .collect();
    let a_cc: PolyMatrix = c
        .iter()
        .map(|&i| c.iter().map(|&j| v.action[i][j].clone()).collect())
        .collect();
    let q = if w.dim() == 0 {
        a_cc
    } else {
        matrix::sub(&a_cc, &matrix::mul(p, &k, &a_pc))
    };
    let labels = c.iter().map(|&i| v.labels[i].clone()).collect();
    let prov = Provenance::node(
        "quotient",
        vec![v.provenance.clone(), w.rep.provenance.clone()],
    );
    let blocks = if c.is_empty() { vec![] } else { vec![c.len()] };
    let quot = Representation::new(v.group.clone(), q, labels, blocks, prov)?;
    let pi = matrix::constant(&w.projection());
    let lhs = matrix::mul(p, &pi, &v.action);
    let rhs = matrix::mul(p, &quot.action, &pi);
    if !matrix::congruent(&v.group, &lhs, &rhs, 1) {
        return Err(Error::InvalidSubmodule(
            "projection does not intertwine".into(),
        ));
    }
    Ok(quot)
}

/// `Hom_K(V, W)₀` with its verified identification with `W ⊗ (V/W)*`.
#[derive(Clone, Debug)]
pub struct Hom0 {
    pub rep: Representation,
    pub sub: Submodule,
    pub quotient: Representation,
    /// `W ⊗ (V/W)*`, built independently.
    pub tensor: Representation,
    /// Verified intertwiner `rep → tensor`.
    pub iso: Matrix,
}

impl Hom0 {
    /// Coordinates of a map `f: V → W` (dim W × dim V) vanishing on W: its
    /// complement columns, row-major.
    pub fn coordinates(&self, f: &[Vec<Poly>]) -> Vec<Poly> {
        let mut out = Vec::new();
        for row in f {
            for &j in &self.sub.complement {
                out.push(row[j].clone());
            }
        }
        out
    }
}

/// Maps `V → W` vanishing on `W`, acted on by conjugation `f ↦ σ_W f σ_V⁻¹`.
///
/// Basis `E_ij` (`i` a basis vector of W, `j` a complement coordinate) is the
/// map with complement columns the unit matrix at `(i, j)`.
pub fn hom0(v: &Representation, w: &Submodule) -> Result<Hom0> {
    check_ambient(v, w)?;
    let p = v.p();
    let g = &v.group;
    let quot = quotient(v, w)?;
    let m = w.dim();
    let c = w.complement.len();
    let pi = matrix::constant(&w.projection());
    let a_inv = v.inverse_action();
    let b = &w.rep.action;
    let mut act = matrix::zeros(p, m * c, m * c);
    for i in 0..m {
        for l in 0..c {
            // F = E_il · Π, a dim W × dim V matrix
            let mut e = matrix::zeros(p, m, c);
            e[i][l] = Poly::one(p);
            let f = matrix::mul(p, &e, &pi);
            let conj = matrix::mul(p, &matrix::mul(p, b, &f), &a_inv);
            for (k, row) in conj.iter().enumerate() {
                for (r, &j) in w.complement.iter().enumerate() {
                    act[k * c + r][i * c + l] = row[j].clone();
                }
            }
        }
    }
    let labels: Vec<String> = (0..m)
        .flat_map(|i| {
            let wl = w.rep.labels[i].clone();
            quot.labels
                .iter()
                .map(move |ql| format!("{wl}⊗{ql}*"))
                .collect::<Vec<_>>()
        })
        .collect();
    let prov = Provenance::node("hom0", vec![v.provenance.clone(), w.rep.provenance.clone()]);
    let blocks = if m * c == 0 { vec![] } else { vec![m * c] };
    let rep = Representation::new(g.clone(), act, labels, blocks, prov)?;
    let tensor_rep = if m * c == 0 {
        rep.clone()
    } else {
        tensor(&w.rep, &dual(&quot)?)?
    };
    let iso = Matrix::identity(p, m * c);
    if !super::is_intertwiner(&iso, &rep, &tensor_rep) {
        return Err(Error::InvalidConstruction(
            "Hom₀ is not isomorphic to W ⊗ (V/W)*".into(),
        ));
    }
    Ok(Hom0 {
        rep,
        sub: w.clone(),
        quotient: quot,
        tensor: tensor_rep,
        iso,
    })
}

/// The extension `Ũ = U ⊕ K` with `σ·(v, λ) = (σv + λ g_σ, λ)`.
pub fn extend_by_cocycle(g: &Cocycle) -> Result<Representation> {
    let u = &g.target;
    let p = u.p();
    let n = u.dim();
    let mut a = matrix::zeros(p, n + 1, n + 1);
    for i in 0..n {
        a[i][..n].clone_from_slice(&u.action[i]);
        a[i][n] = g.components[i].clone();
    }
    a[n][n] = Poly::one(p);
    let mut labels = u.labels.clone();
    labels.push("λ".into());
    let prov = Provenance::node("extend", vec![u.provenance.clone()]);
    Representation::new(u.group.clone(), a, labels, vec![n + 1], prov).map_err(|e| match e {
        Error::RepresentationLaw(m) => Error::CocycleIdentity(m),
        other => other,
    })
}

/// Restriction along a verified homomorphism `H → G`.
pub fn restrict(v: &Representation, h: &GroupHom) -> Result<Representation> {
    if *h.target != *v.group {
        return Err(Error::GroupMismatch(
            h.target.name.clone(),
            v.group.name.clone(),
        ));
    }
    let a = matrix::map(&v.action, |e| h.pullback(e));
    let prov = Provenance::node(
        format!("restrict[{}]", h.source.name),
        vec![v.provenance.clone()],
    );
    Representation::new(
        h.source.clone(),
        a,
        v.labels.clone(),
        v.blocks.clone(),
        prov,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, identity_hom, unipotent_embedding, BuiltinGroup};
    use crate::polycore::parse_poly;

    fn sl2(p: u32) -> Representation {
        Representation::natural(&builtin_group(BuiltinGroup::SL2, p).unwrap()).unwrap()
    }

    #[test]
    fn double_dual_is_identity() {
        let v = sl2(2);
        assert_eq!(dual(&dual(&v).unwrap()).unwrap().action, v.action);
    }

    #[test]
    fn sum_and_tensor_shapes() {
        let v = sl2(3);
        let s2 = symmetric_power(&v, 2).unwrap();
        assert_eq!(tensor(&v, &s2).unwrap().dim(), 6);
        let sum = direct_sum(&v, &s2).unwrap();
        assert_eq!(sum.blocks, vec![2, 3]);
        for i in 0..2 {
            for j in 2..5 {
                assert!(sum.action[i][j].is_zero() && sum.action[j][i].is_zero());
            }
        }
        let dsum = dual(&sum).unwrap();
        let sumd = direct_sum(&dual(&v).unwrap(), &dual(&s2).unwrap()).unwrap();
        assert_eq!(dsum.action, sumd.action);
    }

    #[test]
    fn symmetric_square_basis() {
        let s2 = symmetric_power(&sl2(2), 2).unwrap();
        assert_eq!(s2.labels, vec!["X^2", "Y^2", "XY"]);
        let s3 = symmetric_power(&sl2(3), 3).unwrap();
        assert_eq!(s3.labels, vec!["X^3", "Y^3", "X^2Y", "XY^2"]);
        assert_eq!(symmetric_power(&sl2(3), 1).unwrap().action, sl2(3).action);
    }

    #[test]
    fn ga_symmetric_square() {
        let ga = builtin_group(BuiltinGroup::Ga, 2).unwrap();
        let s2 = symmetric_power(&Representation::natural(&ga).unwrap(), 2).unwrap();
        // σ·Y² = (tX + Y)² = t²X² + Y² in characteristic 2
        let col: Vec<Poly> = s2.action.iter().map(|r| r[1].clone()).collect();
        assert_eq!(
            col,
            vec![parse_poly("x0^2", 2).unwrap(), Poly::one(2), Poly::zero(2)]
        );
    }

    #[test]
    fn frobenius_powers() {
        for p in [2, 3] {
            let f = frobenius_power(&sl2(p)).unwrap();
            assert_eq!(f.dim(), 2);
            assert_eq!(f.ambient.dim(), p as usize + 1);
        }
        let gm = builtin_group(BuiltinGroup::Gm, 3).unwrap();
        let nat = Representation::natural(&gm).unwrap();
        let v = direct_sum_all(&[nat.clone(), nat.clone(), nat]).unwrap();
        assert_eq!(frobenius_power(&v).unwrap().dim(), 3);
    }

    #[test]
    fn zero_dimensional_inputs() {
        let f = frobenius_power(&sl2(2)).unwrap();
        let line = quotient(&f.ambient, &f).unwrap();
        let f = frobenius_power(&line).unwrap();
        let zero = quotient(&f.ambient, &f).unwrap();
        assert_eq!(zero.dim(), 0);
        assert!(zero.blocks.is_empty());
        assert_eq!(symmetric_power(&zero, 2).unwrap().dim(), 0);
        assert_eq!(dual(&zero).unwrap().dim(), 0);
        assert_eq!(tensor(&zero, &line).unwrap().dim(), 0);
    }

    #[test]
    fn quotients() {
        let f = frobenius_power(&sl2(2)).unwrap();
        let q = quotient(&f.ambient, &f).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(q.labels, vec!["XY"]);
        let v = sl2(3);
        assert_eq!(
            quotient(&v, &Submodule::zero(&v).unwrap()).unwrap().action,
            v.action
        );
        let s2 = symmetric_power(&v, 2).unwrap();
        let sum = direct_sum(&v, &s2).unwrap();
        let mut incl = Matrix::zeros(3, 5, 2);
        incl.set(0, 0, 1);
        incl.set(1, 1, 1);
        let sub = Submodule::new(&sum, incl).unwrap();
        assert_eq!(quotient(&sum, &sub).unwrap().action, s2.action);
    }

    #[test]
    fn non_stable_subspace_is_rejected() {
        let s2 = symmetric_power(&sl2(2), 2).unwrap();
        let mut incl = Matrix::zeros(2, 3, 1);
        incl.set(2, 0, 1);
        assert!(matches!(
            Submodule::new(&s2, incl),
            Err(Error::InvalidSubmodule(_))
        ));
    }

    #[test]
    fn hom0_dimensions() {
        let f = frobenius_power(&sl2(2)).unwrap();
        let h = hom0(&f.ambient, &f).unwrap();
        assert_eq!(h.rep.dim(), 2);
        let v = sl2(3);
        let whole = Submodule::new(&v, Matrix::identity(3, 2)).unwrap();
        assert_eq!(hom0(&v, &whole).unwrap().rep.dim(), 0);
        let f3 = frobenius_power(&sl2(3)).unwrap();
        assert_eq!(hom0(&f3.ambient, &f3).unwrap().rep.dim(), 4);
    }

    #[test]
    fn restrictions() {
        let v = sl2(2);
        let h = unipotent_embedding(2).unwrap();
        let r = restrict(&v, &h).unwrap();
        assert_eq!(r.action, Representation::natural(&h.source).unwrap().action);
        let id = identity_hom(&v.group).unwrap();
        assert_eq!(restrict(&v, &id).unwrap().action, v.action);
        let s2 = symmetric_power(&v, 2).unwrap();
        let a = restrict(&s2, &h).unwrap();
        let b = symmetric_power(&r, 2).unwrap();
        assert_eq!(a.action, b.action);
        assert!(a.verify_laws());
    }
}
