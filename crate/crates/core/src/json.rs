//! Text encodings shared by the serialized forms.

use crate::error::Result;
use crate::polycore::{parse_poly, Poly};

pub const SCHEMA_VERSION: u32 = 1;

pub fn print_list(v: &[Poly]) -> Vec<String> {
    v.iter().map(|f| f.to_string()).collect()
}

pub fn print_matrix(m: &[Vec<Poly>]) -> Vec<Vec<String>> {
    m.iter().map(|row| print_list(row)).collect()
}

pub fn parse_list(v: &[String], p: u32) -> Result<Vec<Poly>> {
    v.iter().map(|s| parse_poly(s, p)).collect()
}

pub fn parse_matrix(m: &[Vec<String>], p: u32) -> Result<Vec<Vec<Poly>>> {
    m.iter().map(|row| parse_list(row, p)).collect()
}
