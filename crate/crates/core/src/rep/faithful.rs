use super::Representation;
use crate::error::Result;
use crate::polycore::{groebner, Poly};

/// Whether the kernel of the action is trivial as a set of points: every
/// coordinate `x_j − u_j` must lie in the radical of the ideal generated by
/// the relations and the entries of `A(σ) − I` (Rabinowitsch trick).
pub fn is_faithful(v: &Representation) -> Result<bool> {
    let g = &v.group;
    let p = g.p;
    let c = g.ncoords();
    let mut gens: Vec<Poly> = g.relations.clone();
    for (i, row) in v.action.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let d = if i == j { e - &Poly::one(p) } else { e.clone() };
            if !d.is_zero() {
                gens.push(d);
            }
        }
    }
    let z = Poly::var(p, c);
    for (j, &u) in g.unit.iter().enumerate() {
        let shifted = &Poly::var(p, j) - &Poly::constant(p, u as i64);
        let mut ext = gens.clone();
        ext.push(&Poly::one(p) - &(&z * &shifted));
        if !groebner(&ext)?.is_unit_ideal() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin_group, BuiltinGroup};
    use crate::rep::{direct_sum, symmetric_power};

    #[test]
    fn faithfulness() {
        for p in [2, 3] {
            let g = builtin_group(BuiltinGroup::SL2, p).unwrap();
            let v = Representation::natural(&g).unwrap();
            assert!(is_faithful(&v).unwrap());
            assert!(!is_faithful(&Representation::trivial(&g, 2)).unwrap());
        }
        // the centre {±1} acts trivially on even degrees when p is odd
        let g = builtin_group(BuiltinGroup::SL2, 3).unwrap();
        let s2 = symmetric_power(&Representation::natural(&g).unwrap(), 2).unwrap();
        assert!(!is_faithful(&s2).unwrap());
        assert!(
            is_faithful(&direct_sum(&s2, &Representation::natural(&g).unwrap()).unwrap()).unwrap()
        );
        // over GF(2) the centre is trivial and S² is faithful pointwise
        let g2 = builtin_group(BuiltinGroup::SL2, 2).unwrap();
        let s2 = symmetric_power(&Representation::natural(&g2).unwrap(), 2).unwrap();
        assert!(is_faithful(&s2).unwrap());
        let ga = builtin_group(BuiltinGroup::Ga, 2).unwrap();
        assert!(is_faithful(&Representation::natural(&ga).unwrap()).unwrap());
        assert!(!is_faithful(&Representation::trivial(&ga, 1)).unwrap());
    }
}
