use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use cmdef_core::certify::{
    build_example, build_mk, build_theorem47, build_theorem48, certify_cmdef, frobenius_cocycle,
    roberts_transfer, verify_certificate, CertInputs, Certificate, Premise,
};
use cmdef_core::cohom::{annihilator_space, is_coboundary, is_coboundary_kv, KvCocycle};
use cmdef_core::group::{builtin_group, BuiltinGroup};
use cmdef_core::invariants::InvariantRing;
use cmdef_core::json::SCHEMA_VERSION;
use cmdef_core::polycore::{Caps, RankEvidence};
use cmdef_core::rep::{is_faithful, RepJson, Representation};
use cmdef_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "cmdef",
    version,
    about = "Cohen-Macaulay defect certificates for invariant rings over GF(p)"
)]
struct Cli {
    /// Maximum Gröbner basis size and graded system size.
    #[arg(long, global = true, env = "CMDEF_CAP_BASIS")]
    cap_basis: Option<usize>,
    /// Maximum degree reached during Gröbner computations.
    #[arg(long, global = true, env = "CMDEF_CAP_DEGREE")]
    cap_degree: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named module and write its JSON.
    Build(Source),
    /// Certify a lower bound for the Cohen-Macaulay defect.
    Certify(Source),
    /// Re-run every check of a certificate file.
    Verify { path: PathBuf },
    /// Invariant slices of a module.
    Invariants {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Coboundary and annihilator queries.
    Cohom {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        is_coboundary: bool,
        /// List the annihilators of the cocycle in degree `--degree`.
        #[arg(long)]
        annihilators: bool,
        #[arg(long)]
        degree: Option<u32>,
    },
}

#[derive(Args, Clone)]
struct Source {
    /// SL2, Ga or Gm. For ex52a/ex52b, Ga requests the transfer to the additive group.
    #[arg(long)]
    group: Option<String>,
    #[arg(short = 'p', default_value_t = 2)]
    p: u32,
    #[arg(short = 'k', default_value_t = 2)]
    k: usize,
    /// ex51, ex52a, ex52b or thm52.
    #[arg(long, conflicts_with = "theorem")]
    example: Option<String>,
    /// 4.7, 4.8 or 4.9, built from the natural module of the group.
    #[arg(long)]
    theorem: Option<String>,
    /// A module JSON written by `build`.
    #[arg(long, conflicts_with_all = ["example", "theorem"])]
    module: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Source {
    fn group(&self) -> Result<BuiltinGroup> {
        self.group.as_deref().unwrap_or("SL2").parse()
    }

    fn has_construction(&self) -> bool {
        self.example.is_some() || self.theorem.is_some()
    }

    fn inputs(&self) -> Result<CertInputs> {
        if let Some(name) = &self.example {
            let inputs = build_example(name.parse()?, self.p, self.k)?;
            return match self
                .group
                .as_deref()
                .map(str::parse::<BuiltinGroup>)
                .transpose()?
            {
                Some(BuiltinGroup::Ga) if inputs.module().group.name == "SL2" => {
                    roberts_transfer(&inputs)
                }
                Some(BuiltinGroup::Gm) => Err(Error::InvalidSpec(format!("{name} has no Gm form"))),
                _ => Ok(inputs),
            };
        }
        let theorem = self
            .theorem
            .as_deref()
            .ok_or_else(|| Error::InvalidSpec("no construction given".into()))?;
        let g = builtin_group(self.group()?, self.p)?;
        let nat = Representation::natural(&g)?;
        match theorem {
            "4.7" => build_theorem47(&frobenius_cocycle(&nat)?.2, self.k),
            "4.8" => build_theorem48(&frobenius_cocycle(&nat)?.2, self.k, None),
            "4.9" => build_mk(&nat, self.k),
            other => Err(Error::InvalidSpec(format!("unknown theorem {other:?}"))),
        }
    }

    fn module(&self) -> Result<Representation> {
        if let Some(path) = &self.module {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
            let doc: ModuleDoc = serde_json::from_str(&text)?;
            check_schema(doc.schema_version)?;
            return Representation::from_json(&doc.module);
        }
        if self.has_construction() {
            return Ok(self.inputs()?.module().clone());
        }
        Representation::natural(&builtin_group(self.group()?, self.p)?)
    }
}

fn check_schema(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema version {v} is not {SCHEMA_VERSION}"
        )));
    }
    Ok(())
}

#[derive(Serialize, serde::Deserialize)]
struct ModuleDoc {
    schema_version: u32,
    name: String,
    k: usize,
    dim: usize,
    faithful: bool,
    module: RepJson,
    cocycle: String,
    annihilators: Vec<String>,
    notes: Vec<String>,
}

#[derive(Serialize)]
struct SliceDoc {
    schema_version: u32,
    module: String,
    hilbert_function: Vec<usize>,
    slices: Vec<cmdef_core::invariants::SliceJson>,
}

#[derive(Serialize)]
struct CohomDoc {
    schema_version: u32,
    cocycle: String,
    result: &'static str,
    evidence: RankEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    annihilators: Option<Vec<String>>,
}

fn emit<T: Serialize>(value: &T, out: Option<&PathBuf>, summary: &str) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
            print!("{summary}");
        }
        None => {
            print!("{text}");
            eprint!("{summary}");
        }
    }
    Ok(())
}

fn build(src: &Source) -> Result<()> {
    let inputs = src.inputs()?;
    let v = inputs.module();
    let faithful = is_faithful(v)?;
    let mut notes = inputs.notes.clone();
    if inputs.k() < 2 {
        notes.push(format!(
            "k = {}: only the trivial bound cmdef >= 0 applies",
            inputs.k()
        ));
    }
    let doc = ModuleDoc {
        schema_version: SCHEMA_VERSION,
        name: inputs.name.clone(),
        k: inputs.k(),
        dim: v.dim(),
        faithful,
        module: v.to_json(),
        cocycle: inputs.cocycle.poly.to_string(),
        annihilators: inputs.annihilators.iter().map(|a| a.to_string()).collect(),
        notes: notes.clone(),
    };
    let mut summary = format!(
        "{}: {}-dimensional {} module, blocks {:?}, faithful: {faithful}\nbasis: {}\n",
        inputs.name,
        v.dim(),
        v.group.name,
        v.blocks,
        v.labels.join(" ")
    );
    for n in &notes {
        summary.push_str(&format!("note: {n}\n"));
    }
    emit(&doc, src.out.as_ref(), &summary)
}

fn certify(src: &Source) -> Result<()> {
    let cert = certify_cmdef(&src.inputs()?)?;
    let summary = format!(
        "{}: certified cmdef >= {} (k = {})\n",
        cert.name, cert.conclusion, cert.k
    );
    emit(&cert, src.out.as_ref(), &summary)
}

fn verify(path: &PathBuf) -> Result<()> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?;
    let cert: Certificate = serde_json::from_str(&text)?;
    let report = verify_certificate(&cert)?;
    for c in &report.checks {
        println!("PASS {}: {}", c.name, c.detail);
    }
    println!("{}: verified cmdef >= {}", report.name, report.conclusion);
    Ok(())
}

fn invariants(src: &Source, degree: Option<u32>, max_degree: Option<u32>) -> Result<()> {
    let v = src.module()?;
    let ring = InvariantRing::new(&v);
    let degrees: Vec<u32> = match (degree, max_degree) {
        (Some(d), _) => vec![d],
        (None, Some(m)) => (0..=m).collect(),
        (None, None) => vec![0, 1],
    };
    let slices: Vec<_> = degrees
        .iter()
        .map(|&d| ring.invariant_slice(d))
        .collect::<Result<_>>()?;
    let doc = SliceDoc {
        schema_version: SCHEMA_VERSION,
        module: v.provenance.to_string(),
        hilbert_function: slices.iter().map(|s| s.dim()).collect(),
        slices: slices.iter().map(|s| s.to_json()).collect(),
    };
    let summary: String = slices
        .iter()
        .map(|s| format!("degree {}: dimension {}\n", s.degree, s.dim()))
        .collect();
    emit(&doc, src.out.as_ref(), &summary)
}

fn cohom(src: &Source, annihilators: bool, degree: Option<u32>) -> Result<()> {
    let (poly, answer, witness, kv): (String, RankEvidence, Option<String>, Option<KvCocycle>) =
        if src.has_construction() {
            let inputs = src.inputs()?;
            let ans = is_coboundary_kv(&inputs.cocycle)?;
            (
                inputs.cocycle.poly.to_string(),
                ans.evidence,
                ans.witness.map(|w| w.to_string()),
                Some(inputs.cocycle),
            )
        } else {
            let nat = Representation::natural(&builtin_group(src.group()?, src.p)?)?;
            let (_, _, g) = frobenius_cocycle(&nat)?;
            let ans = is_coboundary(&g);
            let comps = g
                .components
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            let w = ans.witness.map(|w| format!("{w:?}"));
            (format!("[{comps}]"), ans.evidence, w, None)
        };
    let anns = match (annihilators, kv) {
        (true, Some(kv)) => Some(
            annihilator_space(&kv, degree.unwrap_or(1))?
                .iter()
                .map(|a| a.to_string())
                .collect(),
        ),
        (true, None) => {
            return Err(Error::InvalidSpec(
                "--annihilators needs --example or --theorem".into(),
            ))
        }
        _ => None,
    };
    let result = if witness.is_some() {
        "coboundary"
    } else {
        "nontrivial"
    };
    let summary = format!(
        "{result} (unknowns {}, rank {}, augmented rank {})\n",
        answer.unknowns, answer.rank, answer.rank_augmented
    );
    let doc = CohomDoc {
        schema_version: SCHEMA_VERSION,
        cocycle: poly,
        result,
        evidence: answer,
        witness,
        annihilators: anns,
    };
    emit(&doc, src.out.as_ref(), &summary)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Premise { premise, .. } => match premise {
            Premise::Cocycle => 10,
            Premise::Nontriviality => 11,
            Premise::Annihilator => 12,
            Premise::Phsop => 13,
            Premise::WitnessM => 14,
        },
        Error::TrivialCocycle => 11,
        Error::DeskScaleExceeded(_) => 3,
        Error::InvalidSpec(_)
        | Error::Parse(_)
        | Error::NotPrime(_)
        | Error::UnknownGroup(_)
        | Error::Schema(_)
        | Error::Json(_) => 2,
        Error::GroupLaw(_) | Error::RepresentationLaw(_) | Error::Homomorphism(_) => 15,
        Error::EvidenceMismatch(_) => 16,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::from_env();
    if let Some(b) = cli.cap_basis {
        caps.max_basis = b;
    }
    if let Some(d) = cli.cap_degree {
        caps.max_degree = d;
    }
    caps.install();
    let result = match &cli.command {
        Command::Build(src) => build(src),
        Command::Certify(src) => certify(src),
        Command::Verify { path } => verify(path),
        Command::Invariants {
            source,
            degree,
            max_degree,
        } => invariants(source, *degree, *max_degree),
        Command::Cohom {
            source,
            annihilators,
            degree,
            ..
        } => cohom(source, *annihilators, *degree),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("FAIL: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
