//! The polynomial text format shared by the CLI and every JSON payload.
//!
//! Terms are joined by `+` in decreasing grevlex order; each term is written
//! `c*x<i>^<e>*...` with `c` in `0..p`, the exponent omitted when it is one.
//! A constant term is just `c`, and the zero polynomial prints as `0`.

use std::fmt;

use super::monomial::Monomial;
use super::poly::Poly;
use crate::error::{Error, Result};

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, e) in m.exponents() {
                if e == 1 {
                    write!(f, "*x{i}")?;
                } else {
                    write!(f, "*x{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Parses the text format. Coefficients may be omitted (`x0*x1` means `1*x0*x1`)
/// and whitespace is ignored; coefficients are reduced mod `p`.
pub fn parse_poly(s: &str, p: u32) -> Result<Poly> {
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = |msg: &str| Error::Parse(format!("{msg} in {s:?}"));
    if cleaned.is_empty() {
        return Err(err("empty polynomial"));
    }
    let mut out = Poly::zero(p);
    for term in cleaned.split('+') {
        if term.is_empty() {
            return Err(err("empty term"));
        }
        let mut coef: u64 = 1;
        let mut exps: Vec<u32> = Vec::new();
        for factor in term.split('*') {
            if let Some(rest) = factor.strip_prefix('x') {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (rest, 1),
                };
                let idx: usize = idx.parse().map_err(|_| err("bad variable index"))?;
                if exps.len() <= idx {
                    exps.resize(idx + 1, 0);
                }
                exps[idx] += e;
            } else {
                let c: u64 = factor.parse().map_err(|_| err("bad coefficient"))?;
                coef = (coef * (c % p as u64)) % p as u64;
            }
        }
        out.add_term(Monomial::from_exponents(&exps), coef as u32);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_bit_exact() {
        let p = 3;
        let f = &(&Poly::var(p, 0).pow(2) * &Poly::var(p, 3)) + &Poly::constant(p, -1);
        assert_eq!(f.to_string(), "1*x0^2*x3+2");
        assert_eq!(Poly::zero(p).to_string(), "0");
        assert_eq!(Poly::var(p, 1).to_string(), "1*x1");
    }

    #[test]
    fn parses_loose_input() {
        let f = parse_poly(" x0*x1 + 2*x2^3 + 4", 3).unwrap();
        assert_eq!(f.to_string(), "2*x2^3+1*x0*x1+1");
        assert_eq!(parse_poly("0", 5).unwrap(), Poly::zero(5));
        assert!(parse_poly("x", 5).is_err());
        assert!(parse_poly("1++x0", 5).is_err());
    }
}
