//! Cohen–Macaulay defect certificates: premise checks, assembly, and
//! verification from serialized JSON alone.

mod builders;
mod roberts;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use builders::{
    build_example, build_mk, build_theorem47, build_theorem48, frobenius_cocycle,
    self_duality_witness, Example,
};
pub use roberts::{drop_block, natural_block, roberts_transfer, specialize_at_x};

use crate::cohom::{annihilator_witness, is_coboundary_kv, multidegree_of, KvCocycle};
use crate::error::{Error, Result};
use crate::group::{builtin_group, unipotent_embedding, BuiltinGroup};
use crate::invariants::{ambient_membership, InvariantRing};
use crate::json::SCHEMA_VERSION;
use crate::polycore::{coprime, ideal_codim, parse_poly, Poly, RankEvidence};
use crate::rep::{restrict, RepJson, Representation};

/// The premise checks a certificate depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Premise {
    Cocycle,
    Nontriviality,
    Annihilator,
    Phsop,
    WitnessM,
}

impl Premise {
    pub fn key(self) -> &'static str {
        match self {
            Premise::Cocycle => "cocycle",
            Premise::Nontriviality => "nontriviality",
            Premise::Annihilator => "annihilators",
            Premise::Phsop => "phsop",
            Premise::WitnessM => "witness m",
        }
    }

    pub const ALL: [Premise; 5] = [
        Premise::Cocycle,
        Premise::Nontriviality,
        Premise::Annihilator,
        Premise::Phsop,
        Premise::WitnessM,
    ];
}

impl fmt::Display for Premise {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Premise::Cocycle => "cocycle check failed",
            Premise::Nontriviality => "nontriviality check failed",
            Premise::Annihilator => "annihilator check failed",
            Premise::Phsop => "phsop check failed",
            Premise::WitnessM => "witness m check failed",
        };
        f.write_str(s)
    }
}

/// How the annihilators are shown to form a phsop in the invariant ring.
#[derive(Clone, Debug)]
pub enum Condition {
    /// Declared reductive group; phsop in `K[V]` suffices.
    Reductive,
    /// `a_1, a_2` coprime in `K[V]`; phsop in `K[V]^Ga` through SL2-invariant
    /// lifts on `⟨X,Y⟩ ⊕ V` that specialize to the `a_i` at `X`.
    Roberts(RobertsLift),
}

#[derive(Clone, Debug)]
pub struct RobertsLift {
    pub sl2_module: Representation,
    pub natural_block: usize,
    pub lifts: Vec<Poly>,
}

/// Everything `certify_cmdef` consumes.
#[derive(Clone, Debug)]
pub struct CertInputs {
    pub name: String,
    pub cocycle: KvCocycle,
    pub annihilators: Vec<Poly>,
    pub condition: Condition,
    pub notes: Vec<String>,
}

impl CertInputs {
    pub fn module(&self) -> &Representation {
        &self.cocycle.module
    }

    pub fn k(&self) -> usize {
        self.annihilators.len()
    }

    /// The same data with only the first `k` annihilators (and lifts).
    pub fn truncated(&self, k: usize) -> CertInputs {
        let mut out = self.clone();
        out.annihilators.truncate(k);
        if let Condition::Roberts(r) = &mut out.condition {
            r.lifts.truncate(k);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub noncoboundary_rank: RankEvidence,
    pub codim: usize,
    pub coprime: bool,
    pub nonmembership_rank: RankEvidence,
    /// Whether m lies in `(a_1, a_2) K[V]`; informational.
    pub ambient_membership: bool,
    pub determinant_triples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lift_codim: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub poly: String,
    pub multidegree: Vec<u32>,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionJson {
    /// `a`, `b_roberts` or `trivial`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sl2_module: Option<RepJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub natural_block: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lifts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub name: String,
    pub module: RepJson,
    pub k: usize,
    pub condition: ConditionJson,
    pub cocycle: CocycleJson,
    pub annihilators: Vec<String>,
    pub witnesses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    pub declared_facts: Vec<String>,
    /// Lower bound for the Cohen–Macaulay defect of `K[V]^G`.
    pub conclusion: u32,
    #[serde(default)]
    pub notes: Vec<String>,
}

/// Verified premise data.
#[derive(Clone, Debug)]
pub struct Premises {
    pub witnesses: Vec<Poly>,
    pub m: Poly,
    pub evidence: Evidence,
}

/// `m = a_1 b_2 − a_2 b_1`, checked to be invariant.
pub fn build_witness_m(
    ring: &InvariantRing,
    a1: &Poly,
    b1: &Poly,
    a2: &Poly,
    b2: &Poly,
) -> Result<Poly> {
    let m = &(a1 * b2) - &(a2 * b1);
    if !ring.is_invariant(&m) {
        return Err(Error::premise(
            Premise::WitnessM,
            "m = a1 b2 - a2 b1 is not invariant",
        ));
    }
    Ok(m)
}

/// `u_ij = a_i b_j − a_j b_i`.
fn u(a: &[Poly], b: &[Poly], i: usize, j: usize) -> Poly {
    &(&a[i] * &b[j]) - &(&a[j] * &b[i])
}

/// Checks `u_jl a_i − u_il a_j + u_ij a_l = 0` for all `i < j < l`; returns the number of triples.
pub fn determinant_identity(a: &[Poly], b: &[Poly]) -> Result<usize> {
    let k = a.len();
    let mut count = 0;
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                let lhs = &(&(&u(a, b, j, l) * &a[i]) - &(&u(a, b, i, l) * &a[j]))
                    + &(&u(a, b, i, j) * &a[l]);
                if !lhs.is_zero() {
                    return Err(Error::premise(
                        Premise::WitnessM,
                        format!("determinant identity fails at ({i},{j},{l})"),
                    ));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}

fn phsop(detail: impl Into<String>) -> Error {
    Error::premise(Premise::Phsop, detail)
}

fn check_roberts(inputs: &CertInputs, r: &RobertsLift) -> Result<usize> {
    let module = inputs.module();
    let p = module.p();
    let sl2 = builtin_group(BuiltinGroup::SL2, p)?;
    if *r.sl2_module.group != *sl2 || !sl2.reductive {
        return Err(phsop("lift module is not over the reductive builtin SL2"));
    }
    if !roberts::is_natural_block(&r.sl2_module, r.natural_block) {
        return Err(phsop(
            "lift module has no natural summand at the recorded block",
        ));
    }
    let h = unipotent_embedding(p)?;
    let rest = drop_block(&restrict(&r.sl2_module, &h)?, r.natural_block)?;
    if rest != *module {
        return Err(phsop(
            "module is not the Ga restriction of the lift module without its natural summand",
        ));
    }
    if r.lifts.len() != inputs.k() {
        return Err(phsop("one lift per annihilator is required"));
    }
    let ring = InvariantRing::new(&r.sl2_module);
    let start = r.sl2_module.block_ranges()[r.natural_block].start;
    for (lift, a) in r.lifts.iter().zip(&inputs.annihilators) {
        if !lift.is_homogeneous() || !ring.is_invariant(lift) {
            return Err(phsop(format!("lift {lift} is not an SL2 invariant")));
        }
        if specialize_at_x(lift, start) != *a {
            return Err(phsop(format!("lift {lift} does not specialize to {a}")));
        }
    }
    let c = ideal_codim(&r.lifts)?;
    if c != inputs.k() {
        return Err(phsop(format!(
            "lifts generate an ideal of height {c}, expected {}",
            inputs.k()
        )));
    }
    Ok(c)
}

/// Runs all premise checks in order. With `given`, the recorded witnesses and
/// m are checked instead of solved for.
pub fn check_premises(inputs: &CertInputs, given: Option<(&[Poly], &Poly)>) -> Result<Premises> {
    let g = &inputs.cocycle;
    let module = inputs.module();
    let k = inputs.k();
    if k < 2 {
        return Err(Error::InvalidSpec(
            "at least two annihilators are needed".into(),
        ));
    }

    g.check_identity()
        .map_err(|e| Error::premise(Premise::Cocycle, e.to_string()))?;
    if g.is_zero() {
        return Err(Error::premise(Premise::Nontriviality, "cocycle is zero"));
    }

    let ans = is_coboundary_kv(g)?;
    if ans.witness.is_some() {
        return Err(Error::premise(
            Premise::Nontriviality,
            "cocycle is a coboundary in its graded component",
        ));
    }

    let ring = InvariantRing::new(module);
    let mut witnesses = Vec::with_capacity(k);
    for (i, a) in inputs.annihilators.iter().enumerate() {
        let bad = |d: String| Error::premise(Premise::Annihilator, format!("a{}: {d}", i + 1));
        if a.is_zero() || a.is_constant() || multidegree_of(a, &module.blocks).is_none() {
            return Err(bad("not a multihomogeneous form of positive degree".into()));
        }
        if !ring.is_invariant(a) {
            return Err(bad(format!("{a} is not invariant")));
        }
        let b = match given {
            Some((bs, _)) => {
                let b = bs.get(i).ok_or_else(|| bad("missing witness".into()))?;
                if ring.delta(b) != a * &g.poly {
                    return Err(bad("witness does not satisfy a g = (σ - 1) b".into()));
                }
                b.clone()
            }
            None => {
                annihilator_witness(a, g)?.ok_or_else(|| bad("a g is not a coboundary".into()))?
            }
        };
        witnesses.push(b);
    }

    let a = &inputs.annihilators;
    let is_coprime = coprime(&a[0], &a[1])?;
    let codim = ideal_codim(a)?;
    let lift_codim = match &inputs.condition {
        Condition::Reductive => {
            if !module.group.reductive {
                return Err(phsop(format!(
                    "{} is not declared reductive",
                    module.group.name
                )));
            }
            if codim != k {
                return Err(phsop(format!(
                    "annihilators generate an ideal of height {codim}, expected {k}"
                )));
            }
            None
        }
        Condition::Roberts(r) => {
            if !is_coprime {
                return Err(phsop("a1 and a2 are not coprime"));
            }
            Some(check_roberts(inputs, r)?)
        }
    };

    let m = build_witness_m(&ring, &a[0], &witnesses[0], &a[1], &witnesses[1])?;
    if let Some((_, gm)) = given {
        if *gm != m {
            return Err(Error::premise(
                Premise::WitnessM,
                "recorded m differs from a1 b2 - a2 b1",
            ));
        }
    }
    let membership = ring.subring_membership(&m, &a[..2])?;
    if membership.witness.is_some() {
        return Err(Error::premise(
            Premise::WitnessM,
            "m lies in (a1, a2) inside the invariant ring",
        ));
    }
    let triples = determinant_identity(a, &witnesses)?;
    let ambient = ambient_membership(&m, &a[..2])?;

    Ok(Premises {
        witnesses,
        m,
        evidence: Evidence {
            noncoboundary_rank: ans.evidence,
            codim,
            coprime: is_coprime,
            nonmembership_rank: membership.evidence,
            ambient_membership: ambient,
            determinant_triples: triples,
            lift_codim,
        },
    })
}

fn declared_facts(inputs: &CertInputs) -> Vec<String> {
    let mut facts = Vec::new();
    match &inputs.condition {
        Condition::Reductive => facts.push(format!("{} is reductive", inputs.module().group.name)),
        Condition::Roberts(_) => {
            facts.push("SL2 is reductive".into());
            facts.push("K[<X,Y> + V]^SL2 = K[V]^Ga via evaluation at X".into());
        }
    }
    facts.push("annihilator bound: cmdef K[V]^G >= k - 2".into());
    facts
}

fn condition_json(c: &Condition) -> ConditionJson {
    match c {
        Condition::Reductive => ConditionJson {
            kind: "a".into(),
            sl2_module: None,
            natural_block: None,
            lifts: vec![],
        },
        Condition::Roberts(r) => ConditionJson {
            kind: "b_roberts".into(),
            sl2_module: Some(r.sl2_module.to_json()),
            natural_block: Some(r.natural_block),
            lifts: r.lifts.iter().map(|f| f.to_string()).collect(),
        },
    }
}

fn cocycle_json(g: &KvCocycle) -> CocycleJson {
    CocycleJson {
        poly: g.poly.to_string(),
        multidegree: g.multidegree.clone(),
        degree: g.degree(),
    }
}

fn strings(fs: &[Poly]) -> Vec<String> {
    fs.iter().map(|f| f.to_string()).collect()
}

fn trivial_certificate(inputs: &CertInputs) -> Certificate {
    let mut notes = inputs.notes.clone();
    notes.push(format!(
        "k = {} < 2: only the trivial bound cmdef >= 0 holds",
        inputs.k()
    ));
    Certificate {
        schema_version: SCHEMA_VERSION,
        name: inputs.name.clone(),
        module: inputs.module().to_json(),
        k: inputs.k(),
        condition: ConditionJson {
            kind: "trivial".into(),
            sl2_module: None,
            natural_block: None,
            lifts: vec![],
        },
        cocycle: cocycle_json(&inputs.cocycle),
        annihilators: strings(&inputs.annihilators),
        witnesses: vec![],
        m: None,
        evidence: None,
        declared_facts: vec![],
        conclusion: 0,
        notes,
    }
}

/// Verifies every premise and emits a certificate for `cmdef K[V]^G ≥ k − 2`.
/// For `k < 2` the certificate records the trivial bound 0.
pub fn certify_cmdef(inputs: &CertInputs) -> Result<Certificate> {
    if inputs.k() < 2 {
        return Ok(trivial_certificate(inputs));
    }
    let prem = check_premises(inputs, None)?;
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        name: inputs.name.clone(),
        module: inputs.module().to_json(),
        k: inputs.k(),
        condition: condition_json(&inputs.condition),
        cocycle: cocycle_json(&inputs.cocycle),
        annihilators: strings(&inputs.annihilators),
        witnesses: strings(&prem.witnesses),
        m: Some(prem.m.to_string()),
        evidence: Some(prem.evidence),
        declared_facts: declared_facts(inputs),
        conclusion: (inputs.k() - 2) as u32,
        notes: inputs.notes.clone(),
    })
}

/// One line of a verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub k: usize,
    pub conclusion: u32,
    pub checks: Vec<Check>,
}

fn parse_all(fs: &[String], p: u32) -> Result<Vec<Poly>> {
    fs.iter().map(|s| parse_poly(s, p)).collect()
}

fn mismatch(what: &str) -> Error {
    Error::EvidenceMismatch(what.into())
}

/// Rebuilds the certificate inputs from JSON alone.
pub fn inputs_from_certificate(cert: &Certificate) -> Result<CertInputs> {
    if cert.schema_version != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema version {} is not {SCHEMA_VERSION}",
            cert.schema_version
        )));
    }
    let module = Representation::from_json(&cert.module)?;
    let p = module.p();
    let poly = parse_poly(&cert.cocycle.poly, p)?;
    if cert.cocycle.degree != cert.cocycle.multidegree.iter().sum::<u32>() {
        return Err(mismatch("cocycle degree"));
    }
    // identity failures surface through the cocycle premise
    let cocycle = KvCocycle {
        module,
        poly,
        multidegree: cert.cocycle.multidegree.clone(),
    };
    if cocycle.multidegree.len() != cocycle.module.blocks.len() {
        return Err(Error::premise(
            Premise::Cocycle,
            "multidegree does not match the blocks",
        ));
    }
    let annihilators = parse_all(&cert.annihilators, p)?;
    if annihilators.len() != cert.k {
        return Err(mismatch("number of annihilators"));
    }
    let condition = match cert.condition.kind.as_str() {
        "a" | "trivial" => Condition::Reductive,
        "b_roberts" => {
            let sl2 = cert
                .condition
                .sl2_module
                .as_ref()
                .ok_or_else(|| Error::Schema("missing sl2_module".into()))?;
            let natural_block = cert
                .condition
                .natural_block
                .ok_or_else(|| Error::Schema("missing natural_block".into()))?;
            Condition::Roberts(RobertsLift {
                sl2_module: Representation::from_json(sl2)?,
                natural_block,
                lifts: parse_all(&cert.condition.lifts, p)?,
            })
        }
        other => return Err(Error::Schema(format!("unknown condition {other:?}"))),
    };
    Ok(CertInputs {
        name: cert.name.clone(),
        cocycle,
        annihilators,
        condition,
        notes: cert.notes.clone(),
    })
}

/// Re-runs every check from the serialized certificate. Fails with the first
/// failing premise, or with an evidence mismatch when recorded data disagrees
/// with recomputation.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    let inputs = inputs_from_certificate(cert)?;
    let mut checks = vec![Check {
        name: "module laws".into(),
        passed: true,
        detail: format!("dim {}", inputs.module().dim()),
    }];
    let report = |checks| VerifyReport {
        name: cert.name.clone(),
        k: cert.k,
        conclusion: cert.conclusion,
        checks,
    };
    if cert.condition.kind == "trivial" {
        if cert.k >= 2 {
            return Err(mismatch("trivial certificate with k >= 2"));
        }
        if cert.conclusion != 0 {
            return Err(mismatch("conclusion"));
        }
        checks.push(Check {
            name: "trivial bound".into(),
            passed: true,
            detail: "cmdef >= 0".into(),
        });
        return Ok(report(checks));
    }
    let p = inputs.module().p();
    let witnesses = parse_all(&cert.witnesses, p)?;
    let m = parse_poly(
        cert.m
            .as_deref()
            .ok_or_else(|| Error::Schema("missing m".into()))?,
        p,
    )?;
    let prem = check_premises(&inputs, Some((&witnesses, &m)))?;
    for premise in Premise::ALL {
        checks.push(Check {
            name: premise.key().into(),
            passed: true,
            detail: "ok".into(),
        });
    }
    if cert.evidence.as_ref() != Some(&prem.evidence) {
        return Err(mismatch("evidence block"));
    }
    checks.push(Check {
        name: "evidence".into(),
        passed: true,
        detail: "recomputed evidence matches".into(),
    });
    if cert.declared_facts != declared_facts(&inputs) {
        return Err(mismatch("declared facts"));
    }
    if cert.conclusion as usize != cert.k - 2 {
        return Err(mismatch("conclusion"));
    }
    checks.push(Check {
        name: "conclusion".into(),
        passed: true,
        detail: format!("cmdef >= {}", cert.conclusion),
    });
    Ok(report(checks))
}
