//! Buchberger's algorithm under grevlex, with the product and chain criteria.

use std::collections::BTreeSet;

use super::caps::Caps;
use super::field::{inv_mod, mul_mod, neg_mod};
use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};

/// Generators of an ideal together with (optionally) its reduced Gröbner basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    pub p: u32,
    pub generators: Vec<Poly>,
    pub groebner: Option<Vec<Poly>>,
}

impl IdealBasis {
    pub fn basis(&self) -> Option<&[Poly]> {
        self.groebner.as_deref()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.groebner
            .as_ref()
            .map(|g| g.iter().any(|f| !f.is_zero() && f.is_constant()))
            .unwrap_or(false)
    }

    /// Ideal membership, via the normal form.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(normal_form(f, self)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner
            .iter()
            .flatten()
            .filter_map(|g| g.leading_monomial().cloned())
            .collect()
    }
}

/// Remainder of `f` under full multivariate division by the Gröbner basis of `rel`.
pub fn normal_form(f: &Poly, rel: &IdealBasis) -> Result<Poly> {
    if f.characteristic() != rel.p && !rel.generators.is_empty() {
        return Err(Error::RingMismatch(f.characteristic(), rel.p));
    }
    let gb = rel
        .groebner
        .as_ref()
        .ok_or_else(|| Error::InvalidConstruction("normal form needs a Gröbner basis".into()))?;
    Ok(reduce_by(f, gb))
}

/// Full reduction of `f` by an arbitrary list of polynomials.
pub fn reduce_by(f: &Poly, divisors: &[Poly]) -> Poly {
    let p = f.characteristic();
    if divisors.is_empty() {
        return f.clone();
    }
    let heads: Vec<(Monomial, u32)> = divisors
        .iter()
        .filter_map(|g| g.leading_term().map(|(m, c)| (m.clone(), inv_mod(c, p))))
        .collect();
    let divisors: Vec<&Poly> = divisors.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = f.clone();
    let mut rem = Poly::zero(p);
    while let Some((m, c)) = rest.pop_leading() {
        let hit = heads.iter().position(|(lm, _)| lm.divides(&m));
        match hit {
            Some(k) => {
                let (lm, lc_inv) = &heads[k];
                let q = lm.quotient_of(&m).expect("divisibility checked");
                let factor = neg_mod(mul_mod(c, *lc_inv, p), p);
                for (n, d) in divisors[k].terms().rev().skip(1) {
                    rest.add_term(n.mul(&q), mul_mod(factor, d, p));
                }
            }
            None => rem.add_term(m, c),
        }
    }
    rem
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let p = f.characteristic();
    let (mf, cf) = f.leading_term().expect("nonzero");
    let (mg, cg) = g.leading_term().expect("nonzero");
    let l = mf.lcm(mg);
    let a = f
        .mul_monomial(&mf.quotient_of(&l).unwrap())
        .scale(inv_mod(cf, p));
    let b = g
        .mul_monomial(&mg.quotient_of(&l).unwrap())
        .scale(inv_mod(cg, p));
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`, using the installed caps.
pub fn groebner(gens: &[Poly]) -> Result<IdealBasis> {
    groebner_with_caps(gens, Caps::current())
}

pub fn groebner_with_caps(gens: &[Poly], caps: Caps) -> Result<IdealBasis> {
    let p = match gens.first() {
        Some(g) => g.characteristic(),
        None => {
            return Ok(IdealBasis {
                p: 2,
                generators: vec![],
                groebner: Some(vec![]),
            });
        }
    };
    if let Some(bad) = gens.iter().find(|g| g.characteristic() != p) {
        return Err(Error::RingMismatch(p, bad.characteristic()));
    }
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let r = reduce_by(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let lcm_deg = |b: &[Poly], i: usize, j: usize| {
        b[i].leading_monomial()
            .unwrap()
            .lcm(b[j].leading_monomial().unwrap())
            .degree()
    };
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((lcm_deg(&basis, i, j), i, j));
        }
    }
    let is_pending = |pending: &BTreeSet<(u32, usize, usize)>, b: &[Poly], i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        pending.contains(&(lcm_deg(b, i, j), i, j))
    };
    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        let li = basis[i].leading_monomial().unwrap().clone();
        let lj = basis[j].leading_monomial().unwrap().clone();
        if li.coprime(&lj) {
            continue;
        }
        let l = li.lcm(&lj);
        if l.degree() as usize > caps.max_degree {
            return Err(Error::DeskScaleExceeded(format!(
                "S-polynomial degree {} above cap {}",
                l.degree(),
                caps.max_degree
            )));
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !is_pending(&pending, &basis, i, k)
                && !is_pending(&pending, &basis, j, k)
        });
        if chain {
            continue;
        }
        let s = reduce_by(&s_polynomial(&basis[i], &basis[j]), &basis);
        if s.is_zero() {
            continue;
        }
        if s.is_constant() {
            let one = Poly::one(p);
            return Ok(IdealBasis {
                p,
                generators: gens.to_vec(),
                groebner: Some(vec![one]),
            });
        }
        basis.push(s.monic());
        if basis.len() > caps.max_basis {
            return Err(Error::DeskScaleExceeded(format!(
                "Gröbner basis size above cap {}",
                caps.max_basis
            )));
        }
        let n = basis.len() - 1;
        for k in 0..n {
            pending.insert((lcm_deg(&basis, k, n), k, n));
        }
    }
    Ok(IdealBasis {
        p,
        generators: gens.to_vec(),
        groebner: Some(reduce_basis(basis)),
    })
}

/// Minimalizes and interreduces a Gröbner basis; output is sorted by leading monomial.
fn reduce_basis(mut basis: Vec<Poly>) -> Vec<Poly> {
    basis.sort_by(|a, b| a.leading_monomial().cmp(&b.leading_monomial()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let lm = g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|h| h.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (lm, lc) = {
            let (m, c) = minimal[i].leading_term().unwrap();
            (m.clone(), c)
        };
        let head = Poly::term(minimal[i].characteristic(), lm.clone(), lc as i64);
        let mut g = reduce_by(&(&minimal[i] - &head), &others);
        g.add_term(lm, lc);
        out.push(g.monic());
    }
    out
}

/// Checks Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner_basis(basis: &[Poly]) -> bool {
    for j in 0..basis.len() {
        for i in 0..j {
            if !reduce_by(&s_polynomial(&basis[i], &basis[j]), basis).is_zero() {
                return false;
            }
        }
    }
    true
}
