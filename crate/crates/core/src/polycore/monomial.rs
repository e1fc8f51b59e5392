use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use smallvec::SmallVec;

type Exps = SmallVec<[u8; 24]>;

/// A monomial `x0^e0 * x1^e1 * ...`, stored without trailing zero exponents.
///
/// Monomials are totally ordered by graded reverse-lexicographic order.
#[derive(Clone, Debug, Default)]
pub struct Monomial {
    exps: Exps,
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v: Exps = exps
            .iter()
            .map(|&e| u8::try_from(e).expect("exponent exceeds 255"))
            .collect();
        trim(&mut v);
        let deg = v.iter().map(|&e| e as u32).sum();
        Self { exps: v, deg }
    }

    pub fn var(i: usize) -> Self {
        let mut v: Exps = SmallVec::from_elem(0, i + 1);
        v[i] = 1;
        Self { exps: v, deg: 1 }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps.get(i).copied().unwrap_or(0) as u32
    }

    /// One past the largest variable index occurring.
    #[inline]
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e as u32))
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut v: Exps = SmallVec::with_capacity(n);
        for i in 0..n {
            let e = self.exponent(i) + other.exponent(i);
            v.push(u8::try_from(e).expect("exponent exceeds 255"));
        }
        Monomial {
            exps: v,
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg || self.exps.len() > other.exps.len() {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut v: Exps = other.exps.clone();
        for (i, &e) in self.exps.iter().enumerate() {
            v[i] -= e;
        }
        trim(&mut v);
        Some(Monomial {
            exps: v,
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let v: Exps = (0..n)
            .map(|i| self.exponent(i).max(other.exponent(i)) as u8)
            .collect();
        let deg = v.iter().map(|&e| e as u32).sum();
        Monomial { exps: v, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exponents().map(|(i, _)| i)
    }

    /// Renumbers variables: variable `i` becomes `f(i)`.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Monomial {
        let mut pairs: Vec<(usize, u32)> = self.exponents().map(|(i, e)| (f(i), e)).collect();
        pairs.sort_unstable();
        let width = pairs.last().map(|(i, _)| i + 1).unwrap_or(0);
        let mut v = vec![0u32; width];
        for (i, e) in pairs {
            v[i] += e;
        }
        Monomial::from_exponents(&v)
    }

    /// Splits into the part on variables `< n` and the part on variables `>= n`.
    pub fn split_at(&self, n: usize) -> (Monomial, Monomial) {
        if self.exps.len() <= n {
            return (self.clone(), Monomial::one());
        }
        let mut lo: Exps = self.exps[..n].into();
        trim(&mut lo);
        let mut hi: Exps = SmallVec::from_elem(0, self.exps.len());
        hi[n..].copy_from_slice(&self.exps[n..]);
        trim(&mut hi);
        let dlo = lo.iter().map(|&e| e as u32).sum();
        (
            Monomial { exps: lo, deg: dlo },
            Monomial {
                exps: hi,
                deg: self.deg - dlo,
            },
        )
    }

    /// Total degree within each consecutive block of variables.
    pub fn block_degrees(&self, blocks: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(blocks.len());
        let mut start = 0;
        for &b in blocks {
            out.push((start..start + b).map(|i| self.exponent(i)).sum());
            start += b;
        }
        out
    }
}

fn trim(v: &mut Exps) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl Ord for Monomial {
    /// Graded reverse-lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        let n = self.exps.len().max(other.exps.len());
        for i in (0..n).rev() {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::one());
            }
            return;
        }
        if i == n - 1 {
            cur[i] = left;
            out.push(Monomial::from_exponents(cur));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}
