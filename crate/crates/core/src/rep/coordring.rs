//! The action of G on `K[V] = S(V*)` by `σ·f = f∘σ⁻¹`.
//!
//! Polynomials in `K[V]` use variables `0..n` (`n = dim V`, coordinate `x_i`
//! dual to `e_i`). Mixed expressions carry group coordinates from variable `n`
//! on, generic point `j` at `n + j*c`.

use std::collections::HashMap;

use super::{matrix, Provenance, Representation};
use crate::error::Result;
use crate::group::Group;
use crate::polycore::{monomials_of_degree, Monomial, Poly};

/// Memoized `σ·μ` for monomials `μ` of `K[V]`.
#[derive(Clone, Debug)]
pub struct FunctionAction {
    pub group: Group,
    pub n: usize,
    pub blocks: Vec<usize>,
    /// `σ·x_i = Σ_j A(σ⁻¹)_{ij} x_j`, group point 0 at offset `n`.
    images: Vec<Poly>,
    cache: HashMap<Monomial, Poly>,
}

impl FunctionAction {
    pub fn new(v: &Representation) -> Self {
        let n = v.dim();
        let p = v.p();
        let inv = matrix::map(&v.inverse_action(), |e| e.shift_vars(n));
        let images = (0..n)
            .map(|i| {
                let mut f = Poly::zero(p);
                for j in 0..n {
                    f.add_assign_ref(&(&inv[i][j] * &Poly::var(p, j)));
                }
                f
            })
            .collect();
        Self {
            group: v.group.clone(),
            n,
            blocks: v.blocks.clone(),
            images,
            cache: HashMap::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.group.p
    }

    /// Normal form modulo the relations of `points` generic points at offset `n`.
    pub fn reduce(&self, f: &Poly, points: usize) -> Poly {
        self.group.reduce(f, points, self.n)
    }

    pub fn act_monomial(&mut self, m: &Monomial) -> Poly {
        if let Some(f) = self.cache.get(m) {
            return f.clone();
        }
        let out = match m.support().next() {
            None => Poly::one(self.p()),
            Some(i) => {
                let rest = Monomial::var(i).quotient_of(m).expect("x_i divides m");
                let base = self.act_monomial(&rest);
                self.reduce(&(&base * &self.images[i]), 1)
            }
        };
        self.cache.insert(m.clone(), out.clone());
        out
    }

    /// `σ·f` for `f ∈ K[V]`.
    pub fn act(&mut self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.p());
        for (m, c) in f.terms() {
            out.add_assign_ref(&self.act_monomial(m).scale(c));
        }
        out
    }

    /// `σ·f − f`.
    pub fn delta(&mut self, f: &Poly) -> Poly {
        &self.act(f) - f
    }

    pub fn is_invariant(&mut self, f: &Poly) -> bool {
        self.delta(f).is_zero()
    }

    /// Applies σ (point 0) to the `K[V]` part of a mixed polynomial whose group
    /// variables may belong to other points; reduces modulo `points` points.
    pub fn act_mixed(&self, f: &Poly, points: usize) -> Poly {
        f.substitute_with(&self.images, |q| self.reduce(&q, points))
    }

    pub fn multidegree(&self, m: &Monomial) -> Vec<u32> {
        m.block_degrees(&self.blocks)
    }
}

/// Monomials of `K[V]` of multidegree `alpha` with respect to `blocks`, in
/// decreasing monomial order.
pub fn monomials_of_multidegree(blocks: &[usize], alpha: &[u32]) -> Vec<Monomial> {
    assert_eq!(blocks.len(), alpha.len());
    let mut acc = vec![Monomial::one()];
    let mut start = 0;
    for (&b, &d) in blocks.iter().zip(alpha) {
        let part: Vec<Monomial> = monomials_of_degree(b, d)
            .into_iter()
            .map(|m| m.map_vars(|i| i + start))
            .collect();
        acc = acc
            .iter()
            .flat_map(|a| part.iter().map(move |q| a.mul(q)))
            .collect();
        start += b;
    }
    acc.sort_by(|a, b| b.cmp(a));
    acc
}

/// All multidegrees of total degree `d`, in decreasing lexicographic order.
pub fn multidegrees_of_total(parts: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(parts: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=d).rev() {
            prefix.push(first);
            rec(parts - 1, d - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(parts, d, &mut Vec::new(), &mut out);
    out
}

/// The multidegree-`alpha` part of `K[V]` as a module, on the basis of monomials
/// returned alongside it.
pub fn component_rep(v: &Representation, alpha: &[u32]) -> Result<(Representation, Vec<Monomial>)> {
    let p = v.p();
    let n = v.dim();
    let monos = monomials_of_multidegree(&v.blocks, alpha);
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut fa = FunctionAction::new(v);
    let mut a = matrix::zeros(p, monos.len(), monos.len());
    for (col, mu) in monos.iter().enumerate() {
        for (nu, coef) in fa.act_monomial(mu).split_at(n) {
            a[index[&nu]][col] = coef.map_vars(|i| i - n);
        }
    }
    let labels = monos
        .iter()
        .map(|m| Poly::term(p, m.clone(), 1).to_string())
        .collect();
    let blocks = if monos.is_empty() {
        vec![]
    } else {
        vec![monos.len()]
    };
    let tag = alpha
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let prov = Provenance::node(format!("K[V]_({tag})"), vec![v.provenance.clone()]);
    let rep = Representation::new_unchecked(v.group.clone(), a, labels, blocks, prov)?;
    Ok((rep, monos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, BuiltinGroup};
    use crate::polycore::parse_poly;
    use crate::rep::{direct_sum, dual};

    #[test]
    fn determinant_is_invariant() {
        let g = builtin_group(BuiltinGroup::SL2, 2).unwrap();
        let v = Representation::natural(&g).unwrap();
        let vv = direct_sum(&v, &v).unwrap();
        let mut fa = FunctionAction::new(&vv);
        assert!(fa.is_invariant(&parse_poly("x0*x3+x1*x2", 2).unwrap()));
        assert!(!fa.is_invariant(&parse_poly("x0*x3", 2).unwrap()));
    }

    #[test]
    fn degree_one_component_is_the_dual() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let v = Representation::natural(&g).unwrap();
        let (c, monos) = component_rep(&v, &[1]).unwrap();
        assert_eq!(monos, vec![Monomial::var(0), Monomial::var(1)]);
        assert_eq!(c.action, dual(&v).unwrap().action);
        let (c2, _) = component_rep(&v, &[3]).unwrap();
        assert!(c2.verify_laws());
    }

    #[test]
    fn multidegree_enumeration() {
        assert_eq!(monomials_of_multidegree(&[2, 3], &[1, 2]).len(), 12);
        assert_eq!(multidegrees_of_total(3, 2).len(), 6);
        assert_eq!(multidegrees_of_total(2, 1), vec![vec![1, 0], vec![0, 1]]);
    }
}
