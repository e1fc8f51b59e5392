//! Named modules together with a nontrivial cocycle and annihilators.

use std::str::FromStr;

use super::{roberts_transfer, CertInputs, Condition};
use crate::cohom::{
    annihilator_slice, cocycle_from_projection, embed_auto, embed_in_coordinate_ring,
    is_coboundary, Cocycle, KvCocycle,
};
use crate::error::{Error, Result};
use crate::group::{builtin_group, BuiltinGroup};
use crate::invariants::InvariantRing;
use crate::polycore::{ideal_codim, Matrix, Poly};
use crate::rep::coordring::multidegrees_of_total;
use crate::rep::{
    component_rep, direct_sum_all, dual, extend_by_cocycle, find_embedding, find_isomorphism,
    frobenius_power, is_faithful, quotient, summand_witness, symmetric_power, Hom0, Representation,
    Submodule,
};

fn coarse(mut v: Representation) -> Representation {
    v.blocks = if v.dim() == 0 { vec![] } else { vec![v.dim()] };
    v
}

fn unit(len: usize, at: &[usize]) -> Vec<u32> {
    let mut a = vec![0; len];
    for &i in at {
        a[i] += 1;
    }
    a
}

/// `F^p(V) ⊂ S^p(V)`, `U = hom0(S^p(V), F^p(V))` and the cocycle of the
/// pivot retraction.
pub fn frobenius_cocycle(v: &Representation) -> Result<(Submodule, Hom0, Cocycle)> {
    let f = frobenius_power(v)?;
    let (h, g) = cocycle_from_projection(&f.ambient, &f, &f.pivot_retraction())?;
    Ok((f, h, g))
}

fn require_nontrivial(g: &Cocycle) -> Result<()> {
    if is_coboundary(g).is_coboundary() {
        return Err(Error::TrivialCocycle);
    }
    Ok(())
}

/// Embeds g into `K[V]_alpha`, trying the identity inclusion first.
fn embed(g: &Cocycle, v: &Representation, alpha: &[u32]) -> Result<KvCocycle> {
    let (comp, _) = component_rep(v, alpha)?;
    if comp.dim() == g.target.dim() {
        if let Ok(wit) = summand_witness(&g.target, &comp, &Matrix::identity(v.p(), comp.dim())) {
            return embed_in_coordinate_ring(g, v, alpha, &wit);
        }
    }
    if find_embedding(&g.target, &comp)?.is_none() {
        return Err(Error::SummandWitness(format!(
            "U is not a summand of K[V]_{alpha:?}"
        )));
    }
    Ok(embed_auto(g, v, alpha)?.0)
}

/// `U* ⊕ Ũ^k`, g in the degree-one part of `K[U*]`, annihilators the λ coordinates.
pub fn build_theorem47(g: &Cocycle, k: usize) -> Result<CertInputs> {
    require_nontrivial(g)?;
    let u = &g.target;
    let n = u.dim();
    let ut = extend_by_cocycle(g)?;
    let mut parts = vec![coarse(dual(u)?)];
    parts.extend(std::iter::repeat_n(ut, k));
    let v = direct_sum_all(&parts)?;
    let cocycle = embed(g, &v, &unit(k + 1, &[0]))?;
    let p = v.p();
    let annihilators = (0..k).map(|i| Poly::var(p, n + i * (n + 1) + n)).collect();
    Ok(CertInputs {
        name: format!("theorem47-k{k}"),
        cocycle,
        annihilators,
        condition: Condition::Reductive,
        notes: vec![],
    })
}

/// `((W ⊕) U* ⊕ Ũ)^k`, g in the first `U*` copy, annihilators the λ coordinates.
pub fn build_theorem48(g: &Cocycle, k: usize, w: Option<&Representation>) -> Result<CertInputs> {
    require_nontrivial(g)?;
    let u = &g.target;
    let n = u.dim();
    let mut block = Vec::new();
    if let Some(w) = w {
        block.push(coarse(w.clone()));
    }
    block.push(coarse(dual(u)?));
    block.push(extend_by_cocycle(g)?);
    let wdim = w.map_or(0, |w| w.dim());
    let size = wdim + 2 * n + 1;
    let per = block.len();
    let parts: Vec<Representation> = (0..k.max(1)).flat_map(|_| block.clone()).collect();
    let v = direct_sum_all(&parts)?;
    let cocycle = embed(g, &v, &unit(parts.len(), &[per - 2]))?;
    let p = v.p();
    let annihilators = (0..k)
        .map(|i| Poly::var(p, i * size + wdim + 2 * n))
        .collect();
    let name = if w.is_some() {
        format!("theorem48w-k{k}")
    } else {
        format!("theorem48-k{k}")
    };
    Ok(CertInputs {
        name,
        cocycle,
        annihilators,
        condition: Condition::Reductive,
        notes: vec![],
    })
}

/// `M_k = F^p(V)* ⊕ S^p(V)/F^p(V) ⊕ Ũ^k` with `U = hom0(S^p(V), F^p(V))`;
/// g sits in the bidegree `(1,1)` part of `K[M_k]`.
pub fn build_mk(v: &Representation, k: usize) -> Result<CertInputs> {
    if v.group.torus_identity_component {
        return Err(Error::InvalidConstruction(format!(
            "{} has a torus as identity component",
            v.group.name
        )));
    }
    if !is_faithful(v)? {
        return Err(Error::InvalidConstruction("V is not faithful".into()));
    }
    let (f, _, g) = frobenius_cocycle(v)?;
    require_nontrivial(&g)?;
    let mut parts = vec![coarse(dual(&f.rep)?), coarse(quotient(&f.ambient, &f)?)];
    let ut = extend_by_cocycle(&g)?;
    parts.extend(std::iter::repeat_n(ut, k));
    let m = direct_sum_all(&parts)?;
    if !is_faithful(&m)? {
        return Err(Error::InvalidConstruction("M_k is not faithful".into()));
    }
    let cocycle = embed(&g, &m, &unit(parts.len(), &[0, 1]))?;
    let p = m.p();
    let n = g.target.dim();
    let base = parts[0].dim() + parts[1].dim();
    let annihilators = (0..k)
        .map(|i| Poly::var(p, base + i * (n + 1) + n))
        .collect();
    Ok(CertInputs {
        name: format!("mk-k{k}"),
        cocycle,
        annihilators,
        condition: Condition::Reductive,
        notes: vec!["M_k re-checked faithful".into()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    Ex51,
    Ex52a,
    Ex52b,
    Thm52,
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ex51" => Ok(Example::Ex51),
            "ex52a" => Ok(Example::Ex52a),
            "ex52b" => Ok(Example::Ex52b),
            "thm52" => Ok(Example::Thm52),
            _ => Err(Error::InvalidSpec(format!("unknown example {s:?}"))),
        }
    }
}

impl Example {
    pub fn name(self) -> &'static str {
        match self {
            Example::Ex51 => "ex51",
            Example::Ex52a => "ex52a",
            Example::Ex52b => "ex52b",
            Example::Thm52 => "thm52",
        }
    }

    fn required_p(self) -> Option<u32> {
        match self {
            Example::Ex51 => Some(2),
            Example::Ex52a | Example::Ex52b => Some(3),
            Example::Thm52 => None,
        }
    }
}

/// The first invariant of each multidegree in `betas` annihilating g.
fn annihilators_at(g: &KvCocycle, betas: &[Vec<u32>]) -> Result<Vec<Poly>> {
    let ring = InvariantRing::new(&g.module);
    betas
        .iter()
        .map(|beta| {
            annihilator_slice(&ring, g, beta)?
                .into_iter()
                .next()
                .ok_or_else(|| {
                    Error::SearchFailed(format!("no annihilator of multidegree {beta:?}"))
                })
        })
        .collect()
}

pub fn build_example(ex: Example, p: u32, k: usize) -> Result<CertInputs> {
    if let Some(q) = ex.required_p() {
        if p != q {
            return Err(Error::InvalidSpec(format!(
                "{} needs p = {q}, got p = {p}",
                ex.name()
            )));
        }
    }
    let sl2 = builtin_group(BuiltinGroup::SL2, p)?;
    let nat = Representation::natural(&sl2)?;
    let (f, _, g) = frobenius_cocycle(&nat)?;
    let fp = coarse(f.rep.clone());
    let mut inputs = match ex {
        Example::Ex51 => {
            let mut parts = vec![fp];
            parts.extend(std::iter::repeat_n(f.ambient.clone(), k));
            let v = direct_sum_all(&parts)?;
            let kv = embed(&g, &v, &unit(k + 1, &[0]))?;
            let betas: Vec<Vec<u32>> = (0..k).map(|i| unit(k + 1, &[1 + i])).collect();
            let annihilators = annihilators_at(&kv, &betas)?;
            CertInputs {
                name: String::new(),
                cocycle: kv,
                annihilators,
                condition: Condition::Reductive,
                notes: vec![],
            }
        }
        Example::Ex52a | Example::Ex52b => {
            let (d, reps) = if ex == Example::Ex52a { (4, 1) } else { (2, 2) };
            let s = symmetric_power(&nat, d)?;
            let mut parts = vec![fp, nat.clone()];
            parts.extend(std::iter::repeat_n(s, k));
            let v = direct_sum_all(&parts)?;
            let kv = embed(&g, &v, &unit(k + 2, &[0, 1]))?;
            let betas: Vec<Vec<u32>> = (0..k).map(|i| unit(k + 2, &vec![2 + i; reps])).collect();
            let annihilators = annihilators_at(&kv, &betas)?;
            let mut notes = vec![];
            if ex == Example::Ex52b {
                let sd = self_duality_witness(&v)?.is_some();
                notes.push(format!("self-dual: {sd}"));
            }
            CertInputs {
                name: String::new(),
                cocycle: kv,
                annihilators,
                condition: Condition::Reductive,
                notes,
            }
        }
        Example::Thm52 => thm52(&nat, &fp, &g, k)?,
    };
    if inputs.name.is_empty() {
        inputs.name = format!("{}-p{p}-k{k}", ex.name());
    }
    Ok(inputs)
}

/// An invertible intertwiner `V → V*`, if one is found.
pub fn self_duality_witness(v: &Representation) -> Result<Option<Matrix>> {
    find_isomorphism(v, &dual(v)?)
}

/// Searches SL2 data on `⟨X,Y⟩ ⊕ F^p ⊕ k⟨X,Y⟩` and transfers it to Ga on
/// `F^p ⊕ k⟨X,Y⟩`. Annihilators are picked greedily from the annihilator
/// slices of degree one to four so that the height grows by one each time.
fn thm52(nat: &Representation, fp: &Representation, g: &Cocycle, k: usize) -> Result<CertInputs> {
    let mut parts = vec![nat.clone(), fp.clone()];
    parts.extend(std::iter::repeat_n(nat.clone(), k));
    let w = direct_sum_all(&parts)?;
    let len = parts.len();
    let alphas = [
        unit(len, &[1]),
        unit(len, &[0, 1]),
        unit(len, &[1, 2]),
        unit(len, &[1, 3]),
    ];
    let mut tried = Vec::new();
    for alpha in alphas {
        let kv = match embed(g, &w, &alpha) {
            Ok(kv) => kv,
            Err(e) => {
                tried.push(format!("{alpha:?}: {e}"));
                continue;
            }
        };
        let ring = InvariantRing::new(&w);
        let mut cands = Vec::new();
        for d in 1..=4 {
            for beta in multidegrees_of_total(len, d) {
                cands.extend(annihilator_slice(&ring, &kv, &beta)?);
            }
        }
        let mut chosen: Vec<Poly> = Vec::new();
        for c in cands {
            if chosen.len() == k {
                break;
            }
            let mut trial = chosen.clone();
            trial.push(c);
            if ideal_codim(&trial)? == trial.len() {
                chosen = trial;
            }
        }
        if chosen.len() < k {
            tried.push(format!(
                "{alpha:?}: only {} of {k} annihilators of independent height",
                chosen.len()
            ));
            continue;
        }
        let sl2 = CertInputs {
            name: format!("thm52-sl2-p{}-k{k}", w.p()),
            cocycle: kv,
            annihilators: chosen,
            condition: Condition::Reductive,
            notes: vec![],
        };
        match roberts_transfer(&sl2) {
            Ok(mut ga) => {
                ga.name = format!("thm52-p{}-k{k}", w.p());
                ga.notes.push(format!(
                    "unverified annotation: dim K[V]^Ga = {}, depth K[V]^Ga <= {}",
                    2 * k + 1,
                    k + 3
                ));
                return Ok(ga);
            }
            Err(e) => tried.push(format!("{alpha:?}: {e}")),
        }
    }
    Err(Error::SearchFailed(tried.join("; ")))
}
