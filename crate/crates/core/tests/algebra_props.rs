use cmdef_core::cohom::{is_coboundary, is_coboundary_kv, Cocycle, KvCocycle};
use cmdef_core::group::{
    builtin_group, homomorphism, identity_hom, unipotent_embedding, BuiltinGroup, Group,
};
use cmdef_core::invariants::InvariantRing;
use cmdef_core::polycore::{LinearSystem, Matrix, Monomial, Poly};
use cmdef_core::rep::{
    direct_sum, dual, extend_by_cocycle, frobenius_power, matrix, monomials_of_multidegree,
    quotient, restrict, symmetric_power, tensor, FunctionAction, Representation,
};
use proptest::prelude::*;

const GROUPS: [BuiltinGroup; 3] = [BuiltinGroup::SL2, BuiltinGroup::Ga, BuiltinGroup::Gm];

fn group(name: BuiltinGroup, p: u32) -> Group {
    builtin_group(name, p).unwrap()
}

fn natural(name: BuiltinGroup, p: u32) -> Representation {
    Representation::natural(&group(name, p)).unwrap()
}

/// Applies a short program of functors to a stack seeded with the natural module.
fn compose(name: BuiltinGroup, p: u32, ops: &[u8]) -> Vec<Representation> {
    let base = natural(name, p);
    let mut stack = vec![base.clone()];
    let mut seen = vec![base.clone()];
    for &op in ops {
        let top = stack.last().unwrap().clone();
        let next = match op % 6 {
            0 => dual(&top).ok(),
            1 if top.dim() + base.dim() <= 9 => direct_sum(&top, &base).ok(),
            2 if top.dim() * base.dim() <= 9 => tensor(&top, &base).ok(),
            3 if top.dim() <= 2 => symmetric_power(&top, 2).ok(),
            4 => frobenius_power(&top)
                .ok()
                .map(|f| quotient(&f.ambient, &f).unwrap()),
            5 => Some(Representation::trivial(&top.group, 1)),
            _ => None,
        };
        if let Some(v) = next {
            seen.push(v.clone());
            stack.push(v);
        }
    }
    seen
}

fn coboundary_kv(v: &Representation, w: &Poly, alpha: &[u32]) -> KvCocycle {
    let poly = FunctionAction::new(v).delta(w);
    KvCocycle::new(v.clone(), poly, alpha.to_vec()).unwrap()
}

#[test]
fn builtin_group_laws() {
    for p in [2, 3, 5] {
        for g in GROUPS {
            assert!(group(g, p).verify_group_laws(), "{g:?} p={p}");
        }
    }
}

#[test]
fn composition_of_homomorphisms_is_verified() {
    for p in [2, 3, 5] {
        let u = unipotent_embedding(p).unwrap();
        let id = identity_hom(&u.target).unwrap();
        let c = u.then(&id).unwrap();
        assert_eq!(c.coord_map, u.coord_map);
        // Ga → Ga, t ↦ 2t (a homomorphism for every p), then into SL2
        let ga = group(BuiltinGroup::Ga, p);
        let dbl = homomorphism(&ga, &ga, vec![Poly::var(p, 0).scale(2 % p)]).unwrap();
        assert!(dbl.then(&u).is_ok());
        // the torus inside SL2
        let gm = group(BuiltinGroup::Gm, p);
        let sl2 = group(BuiltinGroup::SL2, p);
        let torus = homomorphism(
            &gm,
            &sl2,
            vec![
                Poly::var(p, 0),
                Poly::zero(p),
                Poly::zero(p),
                Poly::var(p, 1),
            ],
        )
        .unwrap();
        assert!(identity_hom(&gm).unwrap().then(&torus).is_ok());
        // t ↦ t² is not additive for p odd
        if p != 2 {
            assert!(homomorphism(&ga, &ga, vec![Poly::var(p, 0).pow(2)]).is_err());
        }
    }
}

#[test]
fn frobenius_power_is_a_submodule() {
    for p in [2, 3] {
        for g in GROUPS {
            let f = frobenius_power(&natural(g, p)).unwrap();
            assert_eq!(f.dim(), natural(g, p).dim());
            assert!(f.rep.verify_laws());
            // closure: A_S I − I B reduces to 0
            let i = matrix::constant(&f.inclusion);
            let lhs = matrix::mul(p, &f.ambient.action, &i);
            let rhs = matrix::mul(p, &i, &f.rep.action);
            assert!(matrix::congruent(&f.ambient.group, &lhs, &rhs, 1));
        }
    }
}

fn torus_module(p: u32, a: i32, b: i32) -> Representation {
    let gm = group(BuiltinGroup::Gm, p);
    let ch = |e: i32| {
        if e >= 0 {
            Poly::var(p, 0).pow(e as u32)
        } else {
            Poly::var(p, 1).pow((-e) as u32)
        }
    };
    let action = vec![vec![ch(a), Poly::zero(p)], vec![Poly::zero(p), ch(b)]];
    Representation::new(
        gm,
        action,
        vec!["e0".into(), "e1".into()],
        vec![2],
        cmdef_core::rep::Provenance::leaf(format!("diag({a},{b})")),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functor_compositions_satisfy_laws(
        g in prop::sample::select(GROUPS.to_vec()),
        p in prop::sample::select(vec![2u32, 3]),
        ops in prop::collection::vec(0u8..6, 1..4),
    ) {
        for v in compose(g, p, &ops) {
            prop_assert!(v.verify_laws(), "{}", v.provenance);
        }
    }

    #[test]
    fn dual_commutes_with_sum(
        g in prop::sample::select(GROUPS.to_vec()),
        p in prop::sample::select(vec![2u32, 3]),
        ops in prop::collection::vec(0u8..6, 0..3),
    ) {
        let vs = compose(g, p, &ops);
        let v = vs.last().unwrap();
        let w = natural(g, p);
        let lhs = dual(&direct_sum(v, &w).unwrap()).unwrap();
        let rhs = direct_sum(&dual(v).unwrap(), &dual(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs.action, rhs.action);
    }

    #[test]
    fn restriction_commutes_with_functors(
        p in prop::sample::select(vec![2u32, 3]),
        ops in prop::collection::vec(0u8..6, 0..3),
    ) {
        let h = unipotent_embedding(p).unwrap();
        let v = compose(BuiltinGroup::SL2, p, &ops).pop().unwrap();
        let rv = restrict(&v, &h).unwrap();
        prop_assert_eq!(restrict(&dual(&v).unwrap(), &h).unwrap().action, dual(&rv).unwrap().action);
        let s = direct_sum(&v, &v).unwrap();
        prop_assert_eq!(restrict(&s, &h).unwrap().action, direct_sum(&rv, &rv).unwrap().action);
        if v.dim() <= 3 {
            let nat = natural(BuiltinGroup::SL2, p);
            let rn = restrict(&nat, &h).unwrap();
            prop_assert_eq!(restrict(&tensor(&v, &nat).unwrap(), &h).unwrap().action, tensor(&rv, &rn).unwrap().action);
            prop_assert_eq!(
                restrict(&symmetric_power(&v, 2).unwrap(), &h).unwrap().action,
                symmetric_power(&rv, 2).unwrap().action
            );
        }
    }

    #[test]
    fn random_coboundaries_are_recognized(
        g in prop::sample::select(GROUPS.to_vec()),
        p in prop::sample::select(vec![2u32, 3]),
        ops in prop::collection::vec(0u8..6, 0..3),
        w in prop::collection::vec(0u32..3, 32),
    ) {
        let v = compose(g, p, &ops).pop().unwrap();
        prop_assume!(v.dim() <= w.len());
        let w: Vec<u32> = w[..v.dim()].iter().map(|x| x % p).collect();
        let c = Cocycle::coboundary(&v, &w);
        c.check_identity().unwrap();
        let ans = is_coboundary(&c);
        let found = ans.witness.clone().expect("coboundary must have a witness");
        prop_assert!(ans.evidence.solvable());
        // (σ − 1)found reproduces the input, so w − found is invariant
        prop_assert_eq!(&Cocycle::coboundary(&v, &found).components, &c.components);
        let diff: Vec<u32> = w.iter().zip(&found).map(|(a, b)| (a + p - b) % p).collect();
        prop_assert!(Cocycle::coboundary(&v, &diff).is_zero());
    }

    #[test]
    fn class_is_stable_under_coboundaries(
        p in prop::sample::select(vec![2u32, 3]),
        w in prop::collection::vec(0u32..3, 8),
    ) {
        let nat = natural(BuiltinGroup::SL2, p);
        let f = frobenius_power(&nat).unwrap();
        let (_, g) = cmdef_core::cohom::cocycle_from_projection(&f.ambient, &f, &f.pivot_retraction()).unwrap();
        let w: Vec<u32> = w[..g.target.dim()].iter().map(|x| x % p).collect();
        let shifted = g.add(&Cocycle::coboundary(&g.target, &w));
        prop_assert_eq!(is_coboundary(&g).is_coboundary(), is_coboundary(&shifted).is_coboundary());
        prop_assert!(!is_coboundary(&shifted).is_coboundary());
        let zero = Cocycle::zero(&g.target).add(&Cocycle::coboundary(&g.target, &w));
        prop_assert!(is_coboundary(&zero).is_coboundary());
    }

    #[test]
    fn graded_coboundaries_are_recognized(
        g in prop::sample::select(GROUPS.to_vec()),
        p in prop::sample::select(vec![2u32, 3]),
        coeffs in prop::collection::vec(0u32..3, 10),
    ) {
        let v = direct_sum(&natural(g, p), &natural(g, p)).unwrap();
        let alpha = [1, 1];
        let monos = monomials_of_multidegree(&v.blocks, &alpha);
        let w = Poly::from_terms(p, monos.into_iter().zip(coeffs.iter().map(|c| c % p)));
        let c = coboundary_kv(&v, &w, &alpha);
        let ans = is_coboundary_kv(&c).unwrap();
        let found = ans.witness.expect("graded coboundary must have a witness");
        let mut fa = FunctionAction::new(&v);
        prop_assert_eq!(fa.delta(&found), c.poly.clone());
        prop_assert!(fa.is_invariant(&(&w - &found)));
    }

    #[test]
    fn torus_cocycles_split(
        a in -2i32..=2, b in -2i32..=2, p in prop::sample::select(vec![2u32, 3]), c in 0u32..3,
    ) {
        let v = torus_module(p, a, b);
        let lines: Vec<Vec<u32>> = if a == b {
            vec![vec![1, c % p], vec![0, 1]]
        } else {
            vec![vec![1, 0], vec![0, 1]]
        };
        for line in lines {
            let sub = cmdef_core::rep::Submodule::new(&v, Matrix::from_columns(p, 2, &[line])).unwrap();
            let (_, g) = cmdef_core::cohom::cocycle_from_projection(&v, &sub, &sub.pivot_retraction()).unwrap();
            prop_assert!(is_coboundary(&g).is_coboundary());
        }
    }
}

/// Invariants of one multidegree, solved with the monomial columns in a
/// different order than the library uses.
fn slice_dim_reordered(v: &Representation, alpha: &[u32]) -> usize {
    let p = v.p();
    let mut monos = monomials_of_multidegree(&v.blocks, alpha);
    monos.reverse();
    let mut fa = FunctionAction::new(v);
    let mut sys: LinearSystem<Monomial> = LinearSystem::new(p, monos.len());
    for (col, mu) in monos.iter().enumerate() {
        for (m, c) in fa.delta(&Poly::term(p, mu.clone(), 1)).terms() {
            sys.add(m.clone(), col, c);
        }
    }
    sys.nullspace().len()
}

fn in_span(f: &Poly, basis: &[Poly]) -> bool {
    let p = f.characteristic();
    let mut sys: LinearSystem<Monomial> = LinearSystem::new(p, basis.len());
    for (col, b) in basis.iter().enumerate() {
        for (m, c) in b.terms() {
            sys.add(m.clone(), col, c);
        }
    }
    for (m, c) in f.terms() {
        sys.add_rhs(m.clone(), c);
    }
    sys.solve().solution.is_some()
}

#[test]
fn slices_reverify_and_multiply() {
    for p in [2, 3] {
        let nat = natural(BuiltinGroup::SL2, p);
        let v = direct_sum(
            &direct_sum(&nat, &nat).unwrap(),
            &symmetric_power(&nat, 2).unwrap(),
        )
        .unwrap();
        let ring = InvariantRing::new(&v);
        for alpha in [[1, 1, 0], [0, 0, 1], [0, 0, 2], [2, 0, 1], [1, 1, 1]] {
            let s = ring.multislice(&alpha).unwrap();
            for b in s.iter() {
                assert!(ring.is_invariant(b));
            }
            assert_eq!(s.len(), slice_dim_reordered(&v, &alpha), "p={p} {alpha:?}");
        }
        let a = ring.multislice(&[1, 1, 0]).unwrap();
        let b = ring.multislice(&[0, 0, 2]).unwrap();
        let prod_slice = ring.multislice(&[1, 1, 2]).unwrap();
        for x in a.iter() {
            for y in b.iter() {
                assert!(in_span(&(x * y), &prod_slice));
            }
        }
        let ga = natural(BuiltinGroup::Ga, p);
        let w = direct_sum(&ga, &ga).unwrap();
        let r = InvariantRing::new(&w);
        let h = r.hilbert_function(3).unwrap();
        for d in 0..=3u32 {
            let by_order: usize = cmdef_core::rep::coordring::multidegrees_of_total(2, d)
                .iter()
                .map(|al| slice_dim_reordered(&w, al))
                .sum();
            assert_eq!(h[d as usize], by_order);
        }
    }
}

#[test]
fn extensions_satisfy_laws() {
    for p in [2, 3] {
        let nat = natural(BuiltinGroup::SL2, p);
        let f = frobenius_power(&nat).unwrap();
        let (_, g) =
            cmdef_core::cohom::cocycle_from_projection(&f.ambient, &f, &f.pivot_retraction())
                .unwrap();
        let e = extend_by_cocycle(&g).unwrap();
        assert!(e.verify_laws());
        assert!(dual(&e).unwrap().verify_laws());
        assert!(restrict(&e, &unipotent_embedding(p).unwrap())
            .unwrap()
            .verify_laws());
    }
}
