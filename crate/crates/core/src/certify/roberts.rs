//! Passing from SL2 on `⟨X,Y⟩ ⊕ V'` to Ga on `V'` by evaluation at the
//! Ga-fixed vector X.

use super::{CertInputs, Condition, RobertsLift};
use crate::cohom::{is_coboundary_kv, KvCocycle};
use crate::error::{Error, Result};
use crate::group::{builtin_group, unipotent_embedding, BuiltinGroup};
use crate::polycore::{Monomial, Poly};
use crate::rep::{restrict, Provenance, Representation};

/// Whether block `b` is a copy of the natural module, uncoupled from the rest.
pub fn is_natural_block(v: &Representation, b: usize) -> bool {
    let Some(r) = v.block_ranges().get(b).cloned() else {
        return false;
    };
    if r.len() != 2 {
        return false;
    }
    let nat = &v.group.natural;
    if nat.len() != 2 {
        return false;
    }
    r.clone().enumerate().all(|(i, row)| {
        r.clone()
            .enumerate()
            .all(|(j, col)| v.action[row][col] == nat[i][j])
    })
}

pub fn natural_block(v: &Representation) -> Option<usize> {
    (0..v.blocks.len()).find(|&b| is_natural_block(v, b))
}

/// The module with block `b` removed.
pub fn drop_block(v: &Representation, b: usize) -> Result<Representation> {
    let r = v
        .block_ranges()
        .get(b)
        .cloned()
        .ok_or_else(|| Error::InvalidConstruction(format!("no block {b}")))?;
    let keep: Vec<usize> = (0..v.dim()).filter(|i| !r.contains(i)).collect();
    let action = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| v.action[i][j].clone()).collect())
        .collect();
    let labels = keep.iter().map(|&i| v.labels[i].clone()).collect();
    let mut blocks = v.blocks.clone();
    blocks.remove(b);
    let prov = Provenance::node(format!("drop[{b}]"), vec![v.provenance.clone()]);
    Representation::new_unchecked(v.group.clone(), action, labels, blocks, prov)
}

/// Sets `x_start = 1`, `x_{start+1} = 0` and renumbers the later variables
/// (group variables included) down by two.
pub fn specialize_at_x(f: &Poly, start: usize) -> Poly {
    let p = f.characteristic();
    let mut out = Poly::zero(p);
    for (m, c) in f.terms() {
        if m.exponent(start + 1) > 0 {
            continue;
        }
        let mut exps = vec![0u32; m.width().max(start + 2)];
        for (i, e) in m.exponents() {
            if i < start {
                exps[i] = e;
            } else if i > start + 1 {
                exps[i - 2] = e;
            }
        }
        out.add_term(Monomial::from_exponents(&exps), c);
    }
    out
}

/// Ga certificate inputs from SL2 inputs on a module with a natural summand:
/// restrict to `t ↦ (1 t; 0 1)`, evaluate that summand at X, and keep the SL2
/// annihilators as lifts. Nontriviality of the restricted cocycle is proved
/// afresh; a coboundary is reported as a failed transfer.
pub fn roberts_transfer(inputs: &CertInputs) -> Result<CertInputs> {
    let w = inputs.module();
    let p = w.p();
    if *w.group != *builtin_group(BuiltinGroup::SL2, p)? {
        return Err(Error::InvalidSpec(format!(
            "transfer needs an SL2 module, got {}",
            w.group.name
        )));
    }
    let b = natural_block(w)
        .ok_or_else(|| Error::TransferFailed("module has no natural summand".into()))?;
    let start = w.block_ranges()[b].start;
    let h = unipotent_embedding(p)?;
    let v_ga = drop_block(&restrict(w, &h)?, b)?;
    let g_ga = inputs.cocycle.restrict(&h)?;
    let mut multidegree = g_ga.multidegree.clone();
    multidegree.remove(b);
    let cocycle = KvCocycle::new(v_ga, specialize_at_x(&g_ga.poly, start), multidegree)?;
    if cocycle.is_zero() || is_coboundary_kv(&cocycle)?.is_coboundary() {
        return Err(Error::TransferFailed(
            "restricted cocycle is a coboundary".into(),
        ));
    }
    let annihilators = inputs
        .annihilators
        .iter()
        .map(|a| specialize_at_x(a, start))
        .collect();
    let mut notes = inputs.notes.clone();
    notes.push(format!(
        "Ga data obtained from {} by evaluating block {b} at X",
        inputs.name
    ));
    Ok(CertInputs {
        name: format!("{}-Ga", inputs.name),
        cocycle,
        annihilators,
        condition: Condition::Roberts(RobertsLift {
            sl2_module: w.clone(),
            natural_block: b,
            lifts: inputs.annihilators.clone(),
        }),
        notes,
    })
}
