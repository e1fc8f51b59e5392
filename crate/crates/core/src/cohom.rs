//! First cohomology: cocycles valued in a module or in a multigraded component
//! of `K[V]`, coboundary tests by exact linear solving, and annihilators.

use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::invariants::InvariantRing;
use crate::polycore::{Caps, LinearSystem, Matrix, Monomial, Poly, RankEvidence};
use crate::rep::coordring::multidegrees_of_total;
use crate::rep::{
    component_rep, find_embedding, hom0, matrix, monomials_of_multidegree, restrict,
    FunctionAction, Hom0, Representation, Submodule, SummandWitness,
};

/// A cocycle `G → U`, one polynomial in the group coordinates per basis vector of U.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub target: Representation,
    pub components: Vec<Poly>,
}

impl Cocycle {
    /// Checks `g_e = 0` and `g_{στ} = σ g_τ + g_σ`.
    pub fn new(target: Representation, components: Vec<Poly>) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::CocycleIdentity(
                "component count differs from dimension".into(),
            ));
        }
        let g = &target.group;
        let components = components.iter().map(|f| g.reduce(f, 1, 0)).collect();
        let c = Cocycle { target, components };
        c.check_identity()?;
        Ok(c)
    }

    pub fn zero(target: &Representation) -> Self {
        Cocycle {
            target: target.clone(),
            components: vec![Poly::zero(target.p()); target.dim()],
        }
    }

    /// `σ ↦ (σ − 1)w`.
    pub fn coboundary(target: &Representation, w: &[u32]) -> Self {
        let p = target.p();
        let components = (0..target.dim())
            .map(|i| {
                let mut f = Poly::constant(p, (p - w[i] % p) as i64);
                for (j, &wj) in w.iter().enumerate() {
                    f.add_assign_ref(&target.action[i][j].scale(wj));
                }
                f
            })
            .collect();
        Cocycle {
            target: target.clone(),
            components,
        }
    }

    pub fn check_identity(&self) -> Result<()> {
        let u = &self.target;
        let g = &u.group;
        let p = u.p();
        let e = g.unit_point();
        if self.components.iter().any(|f| !f.substitute(&e).is_zero()) {
            return Err(Error::CocycleIdentity(
                "g does not vanish at the unit".into(),
            ));
        }
        let st = g.mult_of(&g.point(0, 0), &g.point(1, 0));
        let c = g.ncoords();
        let a = u.action_at(0, 0);
        for i in 0..u.dim() {
            let lhs = self.components[i].substitute_with(&st, |q| g.reduce(&q, 2, 0));
            let mut rhs = self.components[i].clone();
            for j in 0..u.dim() {
                rhs.add_assign_ref(&(&a[i][j] * &self.components[j].shift_vars(c)));
            }
            if !g.reduce(&(&lhs - &rhs), 2, 0).is_zero() {
                return Err(Error::CocycleIdentity(format!(
                    "component {i} fails g(στ) = σg(τ) + g(σ)"
                )));
            }
        }
        let _ = p;
        Ok(())
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Cocycle {
            target: self.target.clone(),
            components,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly::is_zero)
    }

    /// Push-forward along an intertwiner `t: U → W`.
    pub fn push(&self, t: &Matrix, w: &Representation) -> Result<Cocycle> {
        if !crate::rep::is_intertwiner(t, &self.target, w) {
            return Err(Error::SummandWitness(
                "push-forward map is not equivariant".into(),
            ));
        }
        let p = w.p();
        let col: Vec<Vec<Poly>> = self.components.iter().map(|f| vec![f.clone()]).collect();
        let img = matrix::mul(p, &matrix::constant(t), &col);
        Cocycle::new(w.clone(), img.into_iter().map(|r| r[0].clone()).collect())
    }

    /// Restriction along `h: H → G`.
    pub fn restrict(&self, h: &GroupHom) -> Result<Cocycle> {
        let target = restrict(&self.target, h)?;
        Cocycle::new(
            target,
            self.components.iter().map(|f| h.pullback(f)).collect(),
        )
    }
}

/// Outcome of a coboundary test: a verified witness, or none with rank evidence.
#[derive(Clone, Debug)]
pub struct CoboundaryAnswer<W> {
    pub witness: Option<W>,
    pub evidence: RankEvidence,
}

impl<W> CoboundaryAnswer<W> {
    pub fn is_coboundary(&self) -> bool {
        self.witness.is_some()
    }
}

/// Solves `(σ − 1)w = g_σ` for `w ∈ U`.
pub fn is_coboundary(g: &Cocycle) -> CoboundaryAnswer<Vec<u32>> {
    let u = &g.target;
    let p = u.p();
    let n = u.dim();
    let mut sys: LinearSystem<(usize, Monomial)> = LinearSystem::new(p, n);
    for i in 0..n {
        for j in 0..n {
            let mut e = u.action[i][j].clone();
            if i == j {
                e.sub_assign_ref(&Poly::one(p));
            }
            for (m, c) in e.terms() {
                sys.add((i, m.clone()), j, c);
            }
        }
        for (m, c) in g.components[i].terms() {
            sys.add_rhs((i, m.clone()), c);
        }
    }
    let sol = sys.solve();
    if let Some(w) = &sol.solution {
        let check = Cocycle::coboundary(u, w);
        assert_eq!(
            check.components, g.components,
            "coboundary witness failed re-verification"
        );
    }
    CoboundaryAnswer {
        witness: sol.solution,
        evidence: sol.evidence,
    }
}

/// The cocycle `g_σ = σ·ι − ι ∈ Hom(V, W)₀` of a retraction `ι: V → W`.
pub fn cocycle_from_projection(
    v: &Representation,
    w: &Submodule,
    iota: &Matrix,
) -> Result<(Hom0, Cocycle)> {
    if !w.is_retraction(iota) {
        return Err(Error::NotRetraction(
            "ι does not restrict to the identity on W".into(),
        ));
    }
    let p = v.p();
    let h = hom0(v, w)?;
    let io = matrix::constant(iota);
    let conj = matrix::mul(p, &matrix::mul(p, &w.rep.action, &io), &v.inverse_action());
    let diff = matrix::sub(&conj, &io);
    let g = Cocycle::new(h.rep.clone(), h.coordinates(&diff))?;
    Ok((h, g))
}

/// A cocycle valued in the multidegree-`multidegree` component of `K[V]`,
/// stored as one polynomial `Σ_μ g_μ(σ) μ` (group coordinates from variable `n`).
#[derive(Clone, Debug)]
pub struct KvCocycle {
    pub module: Representation,
    pub poly: Poly,
    pub multidegree: Vec<u32>,
}

impl KvCocycle {
    pub fn new(module: Representation, poly: Poly, multidegree: Vec<u32>) -> Result<Self> {
        let n = module.dim();
        if multidegree.len() != module.blocks.len() {
            return Err(Error::CocycleIdentity(
                "multidegree does not match the blocks".into(),
            ));
        }
        for (mono, _) in poly.split_at(n) {
            if mono.block_degrees(&module.blocks) != multidegree {
                return Err(Error::NonHomogeneous(format!("cocycle term in {mono:?}")));
            }
        }
        let poly = module.group.reduce(&poly, 1, n);
        let g = KvCocycle {
            module,
            poly,
            multidegree,
        };
        g.check_identity()?;
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.module.dim()
    }

    pub fn degree(&self) -> u32 {
        self.multidegree.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn check_identity(&self) -> Result<()> {
        let n = self.n();
        let grp = &self.module.group;
        let c = grp.ncoords();
        let p = grp.p;
        let x: Vec<Poly> = (0..n).map(|i| Poly::var(p, i)).collect();
        let mut at_unit = x.clone();
        at_unit.extend(grp.unit_point());
        if !self.poly.substitute(&at_unit).is_zero() {
            return Err(Error::CocycleIdentity(
                "g does not vanish at the unit".into(),
            ));
        }
        let mut at_prod = x;
        at_prod.extend(grp.mult_of(&grp.point(0, n), &grp.point(1, n)));
        let fa = FunctionAction::new(&self.module);
        let lhs = self.poly.substitute_with(&at_prod, |q| fa.reduce(&q, 2));
        let g_tau = self.poly.map_vars(|i| if i >= n { i + c } else { i });
        let rhs = &fa.act_mixed(&g_tau, 2) + &self.poly;
        if !fa.reduce(&(&lhs - &rhs), 2).is_zero() {
            return Err(Error::CocycleIdentity(
                "g(στ) differs from σg(τ) + g(σ)".into(),
            ));
        }
        Ok(())
    }

    /// Restriction along `h: H → G`; the polynomial keeps its `K[V]` variables.
    pub fn restrict(&self, h: &GroupHom) -> Result<KvCocycle> {
        let n = self.n();
        let p = self.module.p();
        let module = restrict(&self.module, h)?;
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(p, i)).collect();
        images.extend(h.coord_map.iter().map(|f| f.shift_vars(n)));
        let poly = self.poly.substitute(&images);
        KvCocycle::new(module, poly, self.multidegree.clone())
    }
}

fn add_to(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn check_cap(unknowns: usize) -> Result<()> {
    let cap = Caps::current().max_basis;
    if unknowns > cap {
        return Err(Error::DeskScaleExceeded(format!(
            "{unknowns} unknowns above cap {cap}"
        )));
    }
    Ok(())
}

/// Solves `(σ − 1)w = g_σ` for `w` in the multidegree component of g.
pub fn is_coboundary_kv(g: &KvCocycle) -> Result<CoboundaryAnswer<Poly>> {
    let mut fa = FunctionAction::new(&g.module);
    coboundary_in(&mut fa, &g.poly, &g.multidegree)
}

fn coboundary_in(
    fa: &mut FunctionAction,
    rhs: &Poly,
    alpha: &[u32],
) -> Result<CoboundaryAnswer<Poly>> {
    let p = fa.p();
    let monos = monomials_of_multidegree(&fa.blocks, alpha);
    check_cap(monos.len())?;
    let mut sys: LinearSystem<Monomial> = LinearSystem::new(p, monos.len());
    for (col, mu) in monos.iter().enumerate() {
        let d = fa.delta(&Poly::term(p, mu.clone(), 1));
        for (m, c) in d.terms() {
            sys.add(m.clone(), col, c);
        }
    }
    for (m, c) in rhs.terms() {
        sys.add_rhs(m.clone(), c);
    }
    let sol = sys.solve();
    let witness = sol.solution.map(|x| {
        let w = Poly::from_terms(p, monos.iter().cloned().zip(x));
        assert_eq!(
            fa.delta(&w),
            *rhs,
            "coboundary witness failed re-verification"
        );
        w
    });
    Ok(CoboundaryAnswer {
        witness,
        evidence: sol.evidence,
    })
}

/// Multidegree of a nonzero polynomial in `K[V]`, if it is multihomogeneous.
pub fn multidegree_of(f: &Poly, blocks: &[usize]) -> Option<Vec<u32>> {
    let mut it = f.terms().map(|(m, _)| m.block_degrees(blocks));
    let first = it.next()?;
    it.all(|d| d == first).then_some(first)
}

/// `(a g)_σ = a g_σ` for an invariant `a`.
pub fn multiply_invariant(a: &Poly, g: &KvCocycle) -> Result<KvCocycle> {
    let mut fa = FunctionAction::new(&g.module);
    if !fa.is_invariant(a) {
        return Err(Error::NotInvariant(a.to_string()));
    }
    if a.is_zero() {
        return Ok(KvCocycle {
            module: g.module.clone(),
            poly: a.clone(),
            multidegree: g.multidegree.clone(),
        });
    }
    let deg = multidegree_of(a, &g.module.blocks)
        .ok_or_else(|| Error::NonHomogeneous(format!("{a} is not multihomogeneous")))?;
    Ok(KvCocycle {
        module: g.module.clone(),
        poly: a * &g.poly,
        multidegree: add_to(&deg, &g.multidegree),
    })
}

/// A `b` with `a g_σ = (σ − 1)b`, if one exists.
pub fn annihilator_witness(a: &Poly, g: &KvCocycle) -> Result<Option<Poly>> {
    let ag = multiply_invariant(a, g)?;
    Ok(is_coboundary_kv(&ag)?.witness)
}

/// Invariants of multidegree `beta` annihilating the class of g.
pub fn annihilator_slice(ring: &InvariantRing, g: &KvCocycle, beta: &[u32]) -> Result<Vec<Poly>> {
    let p = g.module.p();
    let slice = ring.multislice(beta)?;
    if slice.is_empty() {
        return Ok(vec![]);
    }
    let target = add_to(beta, &g.multidegree);
    let monos = monomials_of_multidegree(&g.module.blocks, &target);
    let k = slice.len();
    check_cap(k + monos.len())?;
    let mut fa = FunctionAction::new(&g.module);
    // Σ t_k s_k g − Σ c_μ (σ − 1)μ = 0
    let mut sys: LinearSystem<Monomial> = LinearSystem::new(p, k + monos.len());
    for (col, s) in slice.iter().enumerate() {
        for (m, c) in (s * &g.poly).terms() {
            sys.add(m.clone(), col, c);
        }
    }
    for (col, mu) in monos.iter().enumerate() {
        for (m, c) in fa.delta(&Poly::term(p, mu.clone(), 1)).terms() {
            sys.add(m.clone(), k + col, (p - c) % p);
        }
    }
    let proj: Vec<Vec<u32>> = sys
        .nullspace()
        .into_iter()
        .map(|v| v[..k].to_vec())
        .collect();
    if proj.is_empty() {
        return Ok(vec![]);
    }
    let (r, pivots) = Matrix::from_rows(p, &proj).rref();
    Ok((0..pivots.len())
        .map(|row| {
            let mut f = Poly::zero(p);
            for (col, s) in slice.iter().enumerate() {
                f.add_assign_ref(&s.scale(r.get(row, col)));
            }
            f
        })
        .collect())
}

/// Basis of the degree-`d` part of the annihilator of g, collected over multidegrees.
pub fn annihilator_space(g: &KvCocycle, d: u32) -> Result<Vec<Poly>> {
    let ring = InvariantRing::new(&g.module);
    let mut out = Vec::new();
    for beta in multidegrees_of_total(g.module.blocks.len(), d) {
        out.extend(annihilator_slice(&ring, g, &beta)?);
    }
    Ok(out)
}

/// Pushes a module-valued cocycle into `K[V]_alpha` along a verified summand witness.
pub fn embed_in_coordinate_ring(
    g: &Cocycle,
    v: &Representation,
    alpha: &[u32],
    witness: &SummandWitness,
) -> Result<KvCocycle> {
    let (comp, monos) = component_rep(v, alpha)?;
    witness.verify(&g.target, &comp)?;
    let pushed = g.push(&witness.inclusion, &comp)?;
    let p = v.p();
    let n = v.dim();
    let mut poly = Poly::zero(p);
    for (mu, f) in monos.iter().zip(&pushed.components) {
        poly.add_assign_ref(&f.shift_vars(n).mul_monomial(mu));
    }
    KvCocycle::new(v.clone(), poly, alpha.to_vec())
}

/// Finds a summand witness for `U ⊆ K[V]_alpha` and embeds g along it.
pub fn embed_auto(
    g: &Cocycle,
    v: &Representation,
    alpha: &[u32],
) -> Result<(KvCocycle, SummandWitness)> {
    let (comp, _) = component_rep(v, alpha)?;
    let wit = find_embedding(&g.target, &comp)?
        .ok_or_else(|| Error::SummandWitness(format!("no summand of K[V]_{alpha:?} matches U")))?;
    let kv = embed_in_coordinate_ring(g, v, alpha, &wit)?;
    Ok((kv, wit))
}
