use cmdef_core::polycore::{coprime, groebner, ideal_codim, normal_form, Matrix, Monomial, Poly};
use proptest::prelude::*;

const PRIMES: [u32; 3] = [2, 3, 5];

fn poly_strategy(
    p: u32,
    nvars: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_deg, nvars), 1..p);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let mut f = Poly::zero(p);
        for (mut exps, c) in terms {
            // keep total degree ≤ max_deg
            while exps.iter().sum::<u32>() > max_deg {
                let i = exps.iter().position(|&e| e > 0).unwrap();
                exps[i] -= 1;
            }
            f.add_term(Monomial::from_exponents(&exps), c);
        }
        f
    })
}

fn triple(nvars: usize, max_deg: u32) -> impl Strategy<Value = (Poly, Poly, Poly)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(move |p| {
        (
            poly_strategy(p, nvars, max_deg, 5),
            poly_strategy(p, nvars, max_deg, 5),
            poly_strategy(p, nvars, max_deg, 5),
        )
    })
}

/// Homogeneous form of degree `d` in `n` variables from a coefficient list.
fn form(p: u32, n: usize, d: u32, coeffs: &[u32]) -> Poly {
    let monos = cmdef_core::polycore::monomials_of_degree(n, d);
    Poly::from_terms(p, monos.into_iter().zip(coeffs.iter().map(|c| c % p)))
}

// Univariate polynomials over GF(p) as little-endian coefficient vectors.
fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv(a: u32, p: u32) -> u32 {
    (1..p)
        .find(|x| (a as u64 * *x as u64) % p as u64 == 1)
        .unwrap()
}

fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let lb = *b.last().unwrap();
    let li = inv(lb, p);
    while a.len() >= b.len() {
        let c = (*a.last().unwrap() as u64 * li as u64 % p as u64) as u32;
        let shift = a.len() - b.len();
        for (i, &bi) in b.iter().enumerate() {
            a[shift + i] = ((a[shift + i] as u64 + (p - c) as u64 * bi as u64) % p as u64) as u32;
        }
        a = trim(a);
    }
    a
}

fn ugcd_degree(a: Vec<u32>, b: Vec<u32>, p: u32) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Restriction of a form in ≤3 variables to the plane `x_i = u_i s + v_i t`,
/// as the coefficient list of `s^j t^(d-j)`.
fn restrict_to_plane(f: &Poly, u: &[u32], v: &[u32], d: u32) -> Vec<u32> {
    let p = f.characteristic();
    let s = Poly::var(p, 0);
    let t = Poly::var(p, 1);
    let images: Vec<Poly> = u
        .iter()
        .zip(v)
        .map(|(&a, &b)| &s.scale(a) + &t.scale(b))
        .collect();
    // variables 0..n of f are replaced; shift first so the images do not collide
    let shifted = f.shift_vars(2);
    let mut all = vec![s.clone(), t.clone()];
    all.extend(images);
    let g = shifted.substitute(&all);
    (0..=d)
        .map(|j| g.coefficient(&Monomial::from_exponents(&[j, d - j])))
        .collect()
}

/// Two binary forms of positive degree are coprime iff their dehomogenizations at
/// t = 1 have a constant gcd and t does not divide both.
fn binary_coprime(f: &[u32], g: &[u32], p: u32) -> bool {
    if f.iter().all(|&c| c == 0) || g.iter().all(|&c| c == 0) {
        return false;
    }
    let t_divides = |h: &[u32]| *h.last().unwrap() == 0;
    if t_divides(f) && t_divides(g) {
        return false;
    }
    ugcd_degree(f.to_vec(), g.to_vec(), p) == 0
}

/// Oracle: some plane restriction of (f, g) is coprime, which certifies gcd(f, g) = 1.
fn oracle_certifies_coprime(f: &Poly, g: &Poly, n: usize) -> bool {
    let p = f.characteristic();
    let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
    let vecs: Vec<Vec<u32>> = (0..p.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        })
        .collect();
    for u in &vecs {
        for v in &vecs {
            if binary_coprime(
                &restrict_to_plane(f, u, v, df),
                &restrict_to_plane(g, u, v, dg),
                p,
            ) {
                return true;
            }
        }
    }
    false
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((a, b, c) in triple(12, 8)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn normal_form_idempotent_and_linear(
        (gens, f, g) in prop::sample::select(PRIMES.to_vec()).prop_flat_map(|p| (
            prop::collection::vec(poly_strategy(p, 3, 3, 3), 1..=3),
            poly_strategy(p, 3, 4, 5),
            poly_strategy(p, 3, 4, 5),
        )),
        a in 0u32..5, b in 0u32..5,
    ) {
        let gb = groebner(&gens).unwrap();
        let nf = |h: &Poly| normal_form(h, &gb).unwrap();
        let p = f.characteristic();
        prop_assert_eq!(nf(&nf(&f)), nf(&f));
        let combo = &f.scale(a % p) + &g.scale(b % p);
        prop_assert_eq!(nf(&combo), &nf(&f).scale(a % p) + &nf(&g).scale(b % p));
        // the remainder differs from f by an ideal element
        let diff = &f - &nf(&f);
        prop_assert!(gb.contains(&diff).unwrap());
    }

    #[test]
    fn coprime_agrees_with_plane_oracle(
        p in prop::sample::select(vec![2u32, 3]),
        n in 2usize..=3,
        df in 1u32..=2, dg in 1u32..=2,
        cf in prop::collection::vec(0u32..5, 10),
        cg in prop::collection::vec(0u32..5, 10),
    ) {
        let f = form(p, n, df, &cf);
        let g = form(p, n, dg, &cg);
        prop_assume!(!f.is_zero() && !g.is_zero());
        if oracle_certifies_coprime(&f, &g, n) {
            prop_assert!(coprime(&f, &g).unwrap());
        }
    }

    #[test]
    fn common_factor_is_never_coprime(
        p in prop::sample::select(vec![2u32, 3]),
        ch in prop::collection::vec(0u32..5, 3),
        cf in prop::collection::vec(0u32..5, 6),
        cg in prop::collection::vec(0u32..5, 6),
    ) {
        let h = form(p, 3, 1, &ch);
        let f = &h * &form(p, 3, 1, &cf);
        let g = &h * &form(p, 3, 2, &cg);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert!(!coprime(&f, &g).unwrap());
        prop_assert!(!oracle_certifies_coprime(&f, &g, 3));
    }

    #[test]
    fn codim_of_linear_forms_is_their_rank(
        p in prop::sample::select(PRIMES.to_vec()),
        n in 2usize..=6,
        k in 1usize..=6,
        coeffs in prop::collection::vec(0u32..5, 36),
    ) {
        prop_assume!(k <= n);
        let rows: Vec<Vec<u32>> = (0..k).map(|i| (0..n).map(|j| coeffs[i * 6 + j] % p).collect()).collect();
        let forms: Vec<Poly> = rows.iter().map(|r| form(p, n, 1, r)).collect();
        let rank = Matrix::from_rows(p, &rows).rank();
        prop_assert_eq!(ideal_codim(&forms).unwrap(), rank);
    }
}

#[test]
fn generic_linear_forms_have_full_codim() {
    // x_0, …, x_{k-1} plus a dense form: always independent
    for p in PRIMES {
        for n in 2..=6usize {
            for k in 1..=n {
                let forms: Vec<Poly> = (0..k)
                    .map(|i| {
                        let mut f = Poly::var(p, i);
                        for j in k..n {
                            f.add_term(Monomial::var(j), ((i + j) as u32) % p);
                        }
                        f
                    })
                    .collect();
                assert_eq!(ideal_codim(&forms).unwrap(), k);
            }
        }
    }
}
