//! Algebraic groups given by coordinate rings with polynomial multiplication
//! and inversion maps.
//!
//! A generic point is a block of fresh variables, one per coordinate. Point `j`
//! placed at variable offset `o` uses variables `o + j*c .. o + (j+1)*c`, where
//! `c` is the number of coordinates, so identities "for all σ, τ ∈ G" become
//! polynomial identities modulo the relations of each block.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{parse_list, parse_matrix, print_list, print_matrix};
use crate::polycore::{groebner, normal_form, parse_poly, IdealBasis, Poly, PrimeField};

pub type Group = Arc<GroupPresentation>;

pub struct GroupPresentation {
    pub name: String,
    pub p: u32,
    pub coord_names: Vec<String>,
    /// Relations of one generic point, in variables `0..c`.
    pub relations: Vec<Poly>,
    pub unit: Vec<u32>,
    /// Coordinates of `στ` in variables `0..2c` (σ first, then τ).
    pub mult: Vec<Poly>,
    /// Coordinates of `σ⁻¹` in variables `0..c`.
    pub inv: Vec<Poly>,
    /// A faithful matrix representation, entries in variables `0..c`.
    pub natural: Vec<Vec<Poly>>,
    /// Declared, not computed.
    pub reductive: bool,
    /// Declared: the identity component is a torus.
    pub torus_identity_component: bool,
    ideals: Mutex<HashMap<(usize, usize), Arc<IdealBasis>>>,
}

impl fmt::Debug for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupPresentation")
            .field("name", &self.name)
            .field("p", &self.p)
            .field("coords", &self.coord_names)
            .finish()
    }
}

impl PartialEq for GroupPresentation {
    fn eq(&self, o: &Self) -> bool {
        self.name == o.name
            && self.p == o.p
            && self.coord_names == o.coord_names
            && self.relations == o.relations
            && self.unit == o.unit
            && self.mult == o.mult
            && self.inv == o.inv
            && self.natural == o.natural
            && self.reductive == o.reductive
            && self.torus_identity_component == o.torus_identity_component
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinGroup {
    SL2,
    Ga,
    Gm,
}

impl std::str::FromStr for BuiltinGroup {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SL2" | "sl2" => Ok(BuiltinGroup::SL2),
            "Ga" | "ga" | "GA" => Ok(BuiltinGroup::Ga),
            "Gm" | "gm" | "GM" => Ok(BuiltinGroup::Gm),
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }
}

impl GroupPresentation {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        p: u32,
        coord_names: Vec<String>,
        relations: Vec<Poly>,
        unit: Vec<u32>,
        mult: Vec<Poly>,
        inv: Vec<Poly>,
        natural: Vec<Vec<Poly>>,
        reductive: bool,
        torus_identity_component: bool,
    ) -> Result<Group> {
        PrimeField::new(p)?;
        let c = coord_names.len();
        if unit.len() != c || mult.len() != c || inv.len() != c {
            return Err(Error::GroupLaw("coordinate count mismatch".into()));
        }
        let n = natural.len();
        if natural.iter().any(|row| row.len() != n) {
            return Err(Error::GroupLaw("natural matrix is not square".into()));
        }
        let all = relations
            .iter()
            .chain(&mult)
            .chain(&inv)
            .chain(natural.iter().flatten());
        for f in all {
            if f.characteristic() != p {
                return Err(Error::RingMismatch(p, f.characteristic()));
            }
        }
        Ok(Arc::new(Self {
            name: name.into(),
            p,
            coord_names,
            relations,
            unit,
            mult,
            inv,
            natural,
            reductive,
            torus_identity_component,
            ideals: Mutex::new(HashMap::new()),
        }))
    }

    pub fn ncoords(&self) -> usize {
        self.coord_names.len()
    }

    pub fn natural_dim(&self) -> usize {
        self.natural.len()
    }

    /// Coordinates of generic point `point` at variable `offset`.
    pub fn point(&self, point: usize, offset: usize) -> Vec<Poly> {
        let c = self.ncoords();
        (0..c)
            .map(|i| Poly::var(self.p, offset + point * c + i))
            .collect()
    }

    pub fn unit_point(&self) -> Vec<Poly> {
        self.unit
            .iter()
            .map(|&u| Poly::constant(self.p, u as i64))
            .collect()
    }

    /// Relations of generic points `0..points` at `offset`, with a Gröbner basis.
    pub fn relation_ideal(&self, points: usize, offset: usize) -> Arc<IdealBasis> {
        let mut cache = self.ideals.lock().expect("ideal cache poisoned");
        cache
            .entry((points, offset))
            .or_insert_with(|| {
                let c = self.ncoords();
                let gens: Vec<Poly> = (0..points)
                    .flat_map(|j| {
                        self.relations
                            .iter()
                            .map(move |r| r.shift_vars(offset + j * c))
                    })
                    .collect();
                let mut basis = groebner(&gens).expect("relations of a builtin-size group");
                basis.p = self.p;
                Arc::new(basis)
            })
            .clone()
    }

    /// Normal form modulo the relations of points `0..points` at `offset`.
    pub fn reduce(&self, f: &Poly, points: usize, offset: usize) -> Poly {
        if self.relations.is_empty() {
            return f.clone();
        }
        let ideal = self.relation_ideal(points, offset);
        normal_form(f, &ideal).expect("same characteristic")
    }

    pub fn mult_of(&self, sigma: &[Poly], tau: &[Poly]) -> Vec<Poly> {
        let images: Vec<Poly> = sigma.iter().chain(tau).cloned().collect();
        self.mult.iter().map(|m| m.substitute(&images)).collect()
    }

    pub fn inv_of(&self, sigma: &[Poly]) -> Vec<Poly> {
        self.inv.iter().map(|m| m.substitute(sigma)).collect()
    }

    pub fn natural_at(&self, sigma: &[Poly]) -> Vec<Vec<Poly>> {
        self.natural
            .iter()
            .map(|row| row.iter().map(|e| e.substitute(sigma)).collect())
            .collect()
    }

    fn differs(&self, a: &[Poly], b: &[Poly], points: usize) -> bool {
        a.iter()
            .zip(b)
            .any(|(x, y)| !self.reduce(&(x - y), points, 0).is_zero())
    }

    /// Checks every presentation law symbolically; the first failure is reported.
    pub fn check_group_laws(&self) -> Result<()> {
        let law = |msg: &str| Err(Error::GroupLaw(format!("{}: {msg}", self.name)));
        let s = self.point(0, 0);
        let t = self.point(1, 0);
        let r = self.point(2, 0);
        let e = self.unit_point();
        for rel in &self.relations {
            if !rel.substitute(&e).is_zero() {
                return law("relation does not vanish at the unit");
            }
            let pulled = rel.substitute(&self.mult_of(&s, &t));
            if !self.reduce(&pulled, 2, 0).is_zero() {
                return law("multiplication leaves the group");
            }
            if !self
                .reduce(&rel.substitute(&self.inv_of(&s)), 1, 0)
                .is_zero()
            {
                return law("inversion leaves the group");
            }
        }
        if self.differs(&self.mult_of(&e, &s), &s, 1) || self.differs(&self.mult_of(&s, &e), &s, 1)
        {
            return law("unit is not neutral");
        }
        if self.differs(&self.mult_of(&s, &self.inv_of(&s)), &e, 1)
            || self.differs(&self.mult_of(&self.inv_of(&s), &s), &e, 1)
        {
            return law("inverse map is not an inverse");
        }
        let left = self.mult_of(&self.mult_of(&s, &t), &r);
        let right = self.mult_of(&s, &self.mult_of(&t, &r));
        if self.differs(&left, &right, 3) {
            return law("multiplication is not associative");
        }
        let n = self.natural_dim();
        let at_e = self.natural_at(&e);
        for i in 0..n {
            for j in 0..n {
                let want = Poly::constant(self.p, (i == j) as i64);
                if at_e[i][j] != want {
                    return law("natural matrix is not the identity at the unit");
                }
            }
        }
        let prod = self.natural_at(&self.mult_of(&s, &t));
        let ms = self.natural_at(&s);
        let mt = self.natural_at(&t);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Poly::zero(self.p);
                for k in 0..n {
                    acc.add_assign_ref(&(&ms[i][k] * &mt[k][j]));
                }
                if !self.reduce(&(&prod[i][j] - &acc), 2, 0).is_zero() {
                    return law("natural matrix is not multiplicative");
                }
            }
        }
        Ok(())
    }

    pub fn verify_group_laws(&self) -> bool {
        self.check_group_laws().is_ok()
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson {
            name: self.name.clone(),
            p: self.p,
            coordinates: self.coord_names.clone(),
            relations: print_list(&self.relations),
            unit: self.unit.clone(),
            mult: print_list(&self.mult),
            inv: print_list(&self.inv),
            natural: print_matrix(&self.natural),
            reductive: self.reductive,
            torus_identity_component: self.torus_identity_component,
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Group> {
        let p = j.p;
        GroupPresentation::new(
            j.name.clone(),
            p,
            j.coordinates.clone(),
            parse_list(&j.relations, p)?,
            j.unit.clone(),
            parse_list(&j.mult, p)?,
            parse_list(&j.inv, p)?,
            parse_matrix(&j.natural, p)?,
            j.reductive,
            j.torus_identity_component,
        )
    }
}

/// Serialized group presentation; polynomials use the text format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub p: u32,
    pub coordinates: Vec<String>,
    pub relations: Vec<String>,
    pub unit: Vec<u32>,
    pub mult: Vec<String>,
    pub inv: Vec<String>,
    pub natural: Vec<Vec<String>>,
    pub reductive: bool,
    pub torus_identity_component: bool,
}

/// SL₂, 𝔾ₐ or 𝔾ₘ over GF(p).
pub fn builtin_group(name: BuiltinGroup, p: u32) -> Result<Group> {
    PrimeField::new(p)?;
    let poly = |s: &str| parse_poly(s, p).expect("builtin polynomial");
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let m1 = (p - 1).to_string();
    match name {
        BuiltinGroup::SL2 => {
            // σ = [[a, b], [c, d]] with a,b,c,d = x0..x3; τ uses x4..x7
            let mult = vec![
                poly("x0*x4+x1*x6"),
                poly("x0*x5+x1*x7"),
                poly("x2*x4+x3*x6"),
                poly("x2*x5+x3*x7"),
            ];
            let inv = vec![
                poly("x3"),
                poly(&format!("{m1}*x1")),
                poly(&format!("{m1}*x2")),
                poly("x0"),
            ];
            GroupPresentation::new(
                "SL2",
                p,
                names(&["a", "b", "c", "d"]),
                vec![poly(&format!("x0*x3+{m1}*x1*x2+{m1}"))],
                vec![1, 0, 0, 1],
                mult,
                inv,
                vec![vec![poly("x0"), poly("x1")], vec![poly("x2"), poly("x3")]],
                true,
                false,
            )
        }
        BuiltinGroup::Ga => GroupPresentation::new(
            "Ga",
            p,
            names(&["t"]),
            vec![],
            vec![0],
            vec![poly("x0+x1")],
            vec![poly(&format!("{m1}*x0"))],
            vec![vec![poly("1"), poly("x0")], vec![poly("0"), poly("1")]],
            false,
            false,
        ),
        BuiltinGroup::Gm => GroupPresentation::new(
            "Gm",
            p,
            names(&["s", "u"]),
            vec![poly(&format!("x0*x1+{m1}"))],
            vec![1, 1],
            vec![poly("x0*x2"), poly("x1*x3")],
            vec![poly("x1"), poly("x0")],
            vec![vec![poly("x0")]],
            true,
            true,
        ),
    }
}

/// A verified homomorphism `H → G`, given by G's coordinates as polynomials in
/// the coordinates of one generic point of H.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Group,
    pub target: Group,
    pub coord_map: Vec<Poly>,
}

impl GroupHom {
    /// Pulls a polynomial in G's point-0 coordinates back to H's.
    pub fn pullback(&self, f: &Poly) -> Poly {
        self.source.reduce(&f.substitute(&self.coord_map), 1, 0)
    }

    fn map_point(&self, point: &[Poly]) -> Vec<Poly> {
        self.coord_map.iter().map(|f| f.substitute(point)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if *self.target != *next.source {
            return Err(Error::GroupMismatch(
                self.target.name.clone(),
                next.source.name.clone(),
            ));
        }
        let coord_map = next
            .coord_map
            .iter()
            .map(|f| f.substitute(&self.coord_map))
            .collect();
        homomorphism(&self.source, &next.target, coord_map)
    }
}

/// Verifies `coord_map` as a homomorphism `h → g` and returns it.
pub fn homomorphism(h: &Group, g: &Group, coord_map: Vec<Poly>) -> Result<GroupHom> {
    let fail = |msg: &str| {
        Err(Error::Homomorphism(format!(
            "{} -> {}: {msg}",
            h.name, g.name
        )))
    };
    if h.p != g.p {
        return Err(Error::RingMismatch(h.p, g.p));
    }
    if coord_map.len() != g.ncoords() {
        return fail("coordinate map has the wrong length");
    }
    let hom = GroupHom {
        source: h.clone(),
        target: g.clone(),
        coord_map,
    };
    for rel in &g.relations {
        if !hom.pullback(rel).is_zero() {
            return fail(&format!("relation {rel} does not pull back into the ideal"));
        }
    }
    let e = h.unit_point();
    let at_unit = hom.map_point(&e);
    if at_unit.iter().zip(g.unit_point()).any(|(a, b)| *a != b) {
        return fail("unit is not preserved");
    }
    let s = h.point(0, 0);
    let t = h.point(1, 0);
    let lhs = hom.map_point(&h.mult_of(&s, &t));
    let rhs = g.mult_of(&hom.map_point(&s), &hom.map_point(&t));
    if lhs
        .iter()
        .zip(&rhs)
        .any(|(a, b)| !h.reduce(&(a - b), 2, 0).is_zero())
    {
        return fail("multiplication is not preserved");
    }
    let lhs = hom.map_point(&h.inv_of(&s));
    let rhs = g.inv_of(&hom.map_point(&s));
    if lhs
        .iter()
        .zip(&rhs)
        .any(|(a, b)| !h.reduce(&(a - b), 1, 0).is_zero())
    {
        return fail("inversion is not preserved");
    }
    Ok(hom)
}

/// The embedding 𝔾ₐ → SL₂, `t ↦ [[1, t], [0, 1]]`.
pub fn unipotent_embedding(p: u32) -> Result<GroupHom> {
    let ga = builtin_group(BuiltinGroup::Ga, p)?;
    let sl2 = builtin_group(BuiltinGroup::SL2, p)?;
    let map = vec![Poly::one(p), Poly::var(p, 0), Poly::zero(p), Poly::one(p)];
    homomorphism(&ga, &sl2, map)
}

pub fn identity_hom(g: &Group) -> Result<GroupHom> {
    homomorphism(g, g, g.point(0, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_laws_hold() {
        for p in [2, 3, 5] {
            for name in [BuiltinGroup::SL2, BuiltinGroup::Ga, BuiltinGroup::Gm] {
                let g = builtin_group(name, p).unwrap();
                g.check_group_laws().unwrap();
            }
        }
    }

    #[test]
    fn sl2_inverse_gives_unit() {
        let g = builtin_group(BuiltinGroup::SL2, 2).unwrap();
        let s = g.point(0, 0);
        let prod = g.mult_of(&s, &g.inv_of(&s));
        let reduced: Vec<Poly> = prod.iter().map(|f| g.reduce(f, 1, 0)).collect();
        assert_eq!(reduced, g.unit_point());
    }

    #[test]
    fn ga_inverse_and_gm_mult() {
        let ga = builtin_group(BuiltinGroup::Ga, 3).unwrap();
        let t = ga.point(0, 0);
        assert_eq!(ga.mult_of(&t, &ga.inv_of(&t)), vec![Poly::zero(3)]);
        let gm = builtin_group(BuiltinGroup::Gm, 2).unwrap();
        let s = gm.point(0, 0);
        let u = gm.point(1, 0);
        assert_eq!(gm.mult_of(&s, &u)[0], &Poly::var(2, 0) * &Poly::var(2, 2));
    }

    #[test]
    fn corrupted_inverse_is_caught() {
        let p = 3;
        let g = builtin_group(BuiltinGroup::SL2, p).unwrap();
        let bad = GroupPresentation::new(
            "SL2-bad",
            p,
            g.coord_names.clone(),
            g.relations.clone(),
            g.unit.clone(),
            g.mult.clone(),
            vec![
                Poly::var(p, 3),
                Poly::var(p, 1),
                &Poly::zero(p) - &Poly::var(p, 2),
                Poly::var(p, 0),
            ],
            g.natural.clone(),
            true,
            false,
        )
        .unwrap();
        assert!(!bad.verify_group_laws());
    }

    #[test]
    fn embeddings() {
        let p = 3;
        let h = unipotent_embedding(p).unwrap();
        assert_eq!(h.pullback(&h.target.relations[0]), Poly::zero(p));
        let sl2 = builtin_group(BuiltinGroup::SL2, p).unwrap();
        let id = identity_hom(&sl2).unwrap();
        assert!(h.then(&id).is_ok());
        let ga = builtin_group(BuiltinGroup::Ga, p).unwrap();
        let bad = vec![Poly::one(p), Poly::var(p, 0), Poly::var(p, 0), Poly::one(p)];
        assert!(homomorphism(&ga, &sl2, bad).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let back = GroupPresentation::from_json(&g.to_json()).unwrap();
        assert_eq!(*back, *g);
        assert!(matches!(
            "SO3".parse::<BuiltinGroup>(),
            Err(Error::UnknownGroup(_))
        ));
    }
}
