use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{add_mod, inv_mod, mul_mod, neg_mod, pow_mod, reduce_i64, FieldElement};
use super::monomial::Monomial;

/// A multivariate polynomial over GF(p).
///
/// Terms are kept in a map ordered by grevlex; zero coefficients are never stored.
/// Variables are plain indices, so polynomials in disjoint variable blocks can be
/// combined freely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Self {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, c: i64) -> Self {
        Self::term(p, Monomial::one(), c)
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn var(p: u32, i: usize) -> Self {
        Self::term(p, Monomial::var(i), 1)
    }

    pub fn term(p: u32, m: Monomial, c: i64) -> Self {
        let c = reduce_i64(c, p);
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { p, terms }
    }

    pub fn from_terms(p: u32, it: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut out = Self::zero(p);
        for (m, c) in it {
            out.add_term(m, c % p);
        }
        out
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| m.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Poly {
        Poly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    /// One past the largest variable index occurring.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p;
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = add_mod(*e.get(), c, p);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Poly) {
        self.check_ring(other);
        for (m, &c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn sub_assign_ref(&mut self, other: &Poly) {
        self.check_ring(other);
        for (m, &c) in &other.terms {
            self.add_term(m.clone(), neg_mod(c, self.p));
        }
    }

    /// `self += c * m * other`
    pub fn add_scaled_shifted(&mut self, c: u32, m: &Monomial, other: &Poly) {
        self.check_ring(other);
        if c == 0 {
            return;
        }
        for (n, &d) in &other.terms {
            self.add_term(m.mul(n), mul_mod(c, d, self.p));
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let c = c % self.p;
        if c == 0 {
            return Poly::zero(self.p);
        }
        Poly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, &d)| (m.clone(), mul_mod(c, d, self.p)))
                .collect(),
        }
    }

    pub fn scale_elem(&self, c: FieldElement) -> Poly {
        assert_eq!(c.characteristic(), self.p);
        self.scale(c.value())
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            p: self.p,
            terms: self.terms.iter().map(|(n, &c)| (n.mul(m), c)).collect(),
        }
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(inv_mod(c, self.p)),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`; variables without an image are kept.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        self.substitute_with(images, |q| q)
    }

    /// Substitution that applies `reduce` after every intermediate product, keeping
    /// expressions small when working modulo relations.
    pub fn substitute_with(&self, images: &[Poly], reduce: impl Fn(Poly) -> Poly) -> Poly {
        let p = self.p;
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(p);
        for (m, &c) in &self.terms {
            let mut term = Poly::term(p, Monomial::one(), c as i64);
            let mut kept = vec![0u32; m.width()];
            for (i, e) in m.exponents() {
                if i < images.len() {
                    let pw = powers
                        .entry((i, e))
                        .or_insert_with(|| reduce(images[i].pow(e)))
                        .clone();
                    term = reduce(&term * &pw);
                } else {
                    kept[i] = e;
                }
            }
            let kept = Monomial::from_exponents(&kept);
            if !kept.is_one() {
                term = term.mul_monomial(&kept);
            }
            out.add_assign_ref(&term);
        }
        reduce(out)
    }

    /// Evaluates variables `0..values.len()` at constants; other variables are kept.
    pub fn evaluate_partial(&self, values: &[u32]) -> Poly {
        let p = self.p;
        let mut out = Poly::zero(p);
        for (m, &c) in &self.terms {
            let mut coef = c;
            let mut kept = vec![0u32; m.width()];
            for (i, e) in m.exponents() {
                if i < values.len() {
                    coef = mul_mod(coef, pow_mod(values[i] % p, e as u64, p), p);
                } else {
                    kept[i] = e;
                }
            }
            out.add_term(Monomial::from_exponents(&kept), coef);
        }
        out
    }

    /// Renames variable `i` to `f(i)`.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Poly {
        let mut out = Poly::zero(self.p);
        for (m, &c) in &self.terms {
            out.add_term(m.map_vars(&f), c);
        }
        out
    }

    pub fn shift_vars(&self, offset: usize) -> Poly {
        if offset == 0 {
            return self.clone();
        }
        self.map_vars(|i| i + offset)
    }

    /// Views `self` as a polynomial in variables `0..n` with coefficients in the
    /// variables `>= n`. Coefficients keep their original variable indices.
    pub fn split_at(&self, n: usize) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let (lo, hi) = m.split_at(n);
            out.entry(lo)
                .or_insert_with(|| Poly::zero(self.p))
                .add_term(hi, c);
        }
        out
    }

    /// Keeps only terms whose monomial satisfies `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, &c)| (m.clone(), c))
                .collect(),
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u32)> {
        self.terms.pop_last()
    }

    fn check_ring(&self, other: &Poly) {
        assert_eq!(
            self.p, other.p,
            "polynomial ring mismatch: GF({}) vs GF({})",
            self.p, other.p
        );
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out.sub_assign_ref(rhs);
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), neg_mod(c, self.p)))
                .collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_ring(rhs);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(p);
        }
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, &ca) in &self.terms {
            for (b, &cb) in &rhs.terms {
                let e = acc.entry(a.mul(b)).or_insert(0);
                *e = add_mod(*e, mul_mod(ca, cb, p), p);
            }
        }
        Poly {
            p,
            terms: acc.into_iter().filter(|(_, c)| *c != 0).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
