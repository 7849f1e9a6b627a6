//! `qcmap`: realize (anti-)commutation structures as Pauli strings.
//!
//! JSON goes to stdout, a one-line summary to stderr. Exit codes: 0 on success,
//! 1 when `certify` finds violations, 2 on input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;

use qcmap_core::schema::{
    report_json, AnticommutingSetJson, BlockCertificateJson, DecompositionJson, MappingJson,
    SpecJson, StarIsomorphismJson, KIND_BLOCKS, KIND_DECOMPOSITION, KIND_MAPPING, KIND_SET,
    KIND_STAR,
};
use qcmap_core::verify::RELATION_QUBIT_CAP;
use qcmap_core::{
    block_structure, check_anticommuting_set, check_block_certificate, check_decomposition,
    check_qca_relations, check_star_isomorphism, jordan_wigner, mapping_from_decomposition,
    max_anticommuting_set, pauli_to_pauli, run_splitting, DenseRep, Error, Mode, PauliString,
    PivotPolicy, QcaSpec, Report, StarIsomorphism, WedderburnDecomposition,
};

/// Longest word checked by `certify` on a star-isomorphism.
const STAR_WORD_CAP: usize = 6;

#[derive(Parser)]
#[command(
    name = "qcmap",
    version,
    about = "Quasi-Clifford algebra to qubit mapper"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Wedderburn decomposition of an algebra spec.
    Decompose {
        /// Spec JSON: {"m": .., "edges": [[i, j], ..], "k": [..]}, 1-based.
        #[arg(long)]
        spec: PathBuf,
        /// Pivot pairs to split first, e.g. `1,2:3,4`.
        #[arg(long)]
        pivots: Option<String>,
    },
    /// Qubit realization of an algebra spec.
    Map {
        #[arg(
            long,
            required_unless_present = "from_decomposition",
            conflicts_with = "from_decomposition"
        )]
        spec: Option<PathBuf>,
        /// Output of `decompose`.
        #[arg(long)]
        from_decomposition: Option<PathBuf>,
        #[arg(long, conflicts_with = "from_decomposition")]
        pivots: Option<String>,
        #[arg(long, default_value = "independent", value_parser = parse_mode)]
        mode: Mode,
        /// One `+` or `-` per central factor (scalar mode only).
        #[arg(long, allow_hyphen_values = true)]
        branch: Option<String>,
    },
    /// Star-isomorphism of the algebra generated by Hermitian Pauli strings.
    PauliMap {
        #[arg(required = true, allow_hyphen_values = true)]
        strings: Vec<String>,
    },
    /// Jordan-Wigner images of 2N Majorana operators.
    Jw { modes: usize },
    /// Maximal anti-commuting subset of the group generated by the strings.
    Maxacomm {
        #[arg(required = true, allow_hyphen_values = true)]
        strings: Vec<String>,
    },
    /// Block certificate for a list of Pauli strings.
    Blocks {
        /// Map the strings through `pauli-map` first and certify the images.
        #[arg(long)]
        reduce: bool,
        #[arg(required = true, allow_hyphen_values = true)]
        strings: Vec<String>,
    },
    /// Re-check the output of any other subcommand with the dense oracle.
    Certify { file: PathBuf },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_pivots(text: &str) -> anyhow::Result<Vec<(usize, usize)>> {
    let mut pivots = Vec::new();
    for part in text.split(':').filter(|p| !p.trim().is_empty()) {
        let (u, v) = part
            .split_once(',')
            .ok_or_else(|| anyhow!("pivot {part:?} is not of the form u,v"))?;
        let u: usize = u
            .trim()
            .parse()
            .with_context(|| format!("bad pivot index in {part:?}"))?;
        let v: usize = v
            .trim()
            .parse()
            .with_context(|| format!("bad pivot index in {part:?}"))?;
        if u == 0 || v == 0 {
            bail!("pivot indices are 1-based, got {part:?}");
        }
        pivots.push((u - 1, v - 1));
    }
    Ok(pivots)
}

fn parse_branch(text: &str) -> anyhow::Result<Vec<i8>> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(1),
            '-' | '−' => Ok(-1),
            other => Err(anyhow!("sign branch character {other:?} is not + or -")),
        })
        .collect()
}

fn parse_strings(strings: &[String]) -> anyhow::Result<Vec<PauliString>> {
    Ok(strings
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<_>, _>>()?)
}

fn policy(pivots: Option<&str>) -> anyhow::Result<PivotPolicy> {
    Ok(match pivots {
        Some(text) => PivotPolicy::Explicit(parse_pivots(text)?),
        None => PivotPolicy::LowestPair,
    })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn read_spec(path: &Path) -> anyhow::Result<QcaSpec> {
    let json: SpecJson = read_json(path)?;
    Ok(QcaSpec::try_from(&json)?)
}

fn seed() -> anyhow::Result<u64> {
    match std::env::var("QCMAP_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("QCMAP_SEED={v:?} is not an integer")),
        Err(_) => Ok(0),
    }
}

fn emit<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Library errors mention 0-based pivots; show them as the user typed them.
fn user_facing(err: anyhow::Error) -> anyhow::Error {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidPivot { u, v, reason }) => {
            anyhow!("invalid pivot {},{}: {reason}", u + 1, v + 1)
        }
        _ => err,
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Decompose { spec, pivots } => {
            let spec = read_spec(&spec)?;
            let dec = run_splitting(&spec, &policy(pivots.as_deref())?)?;
            eprintln!("{} pairs, {} central factors", dec.s(), dec.r());
            emit(&DecompositionJson::from(&dec))?;
        }
        Command::Map {
            spec,
            from_decomposition,
            pivots,
            mode,
            branch,
        } => {
            let dec = match (spec, from_decomposition) {
                (Some(spec), None) => {
                    run_splitting(&read_spec(&spec)?, &policy(pivots.as_deref())?)?
                }
                (None, Some(path)) => {
                    let json: DecompositionJson = read_json(&path)?;
                    if json.kind != KIND_DECOMPOSITION {
                        bail!(
                            "{} holds a {:?} document, not a decomposition",
                            path.display(),
                            json.kind
                        );
                    }
                    WedderburnDecomposition::try_from(&json)?
                }
                _ => unreachable!("clap enforces exactly one input"),
            };
            let branch = branch.as_deref().map(parse_branch).transpose()?;
            let mapping = mapping_from_decomposition(&dec, mode, branch.as_deref())?;
            eprintln!(
                "{} generators on {} qubits",
                mapping.images.len(),
                mapping.num_qubits()
            );
            emit(&MappingJson::from(&mapping))?;
        }
        Command::PauliMap { strings } => {
            let iso = pauli_to_pauli(&parse_strings(&strings)?)?;
            eprintln!(
                "{} generators, {} independent, {} -> {} qubits",
                iso.domain.len(),
                iso.independent.len(),
                iso.domain_qubits(),
                iso.image_qubits()
            );
            emit(&StarIsomorphismJson::from(&iso))?;
        }
        Command::Jw { modes } => {
            let mapping = jordan_wigner(modes)?;
            eprintln!(
                "{} Majorana operators on {} qubits",
                mapping.images.len(),
                mapping.num_qubits()
            );
            emit(&MappingJson::from(&mapping))?;
        }
        Command::Maxacomm { strings } => {
            let set = max_anticommuting_set(&parse_strings(&strings)?)?;
            eprintln!("anti-commuting set of size {}", set.len());
            emit(&AnticommutingSetJson::from(&set))?;
        }
        Command::Blocks { reduce, strings } => {
            let mut images = parse_strings(&strings)?;
            if reduce {
                images = pauli_to_pauli(&images)?.images;
            }
            let cert = block_structure(&images)?;
            eprintln!("{} blocks of size {}", cert.block_count, cert.block_size);
            emit(&BlockCertificateJson::new(&cert, &images))?;
        }
        Command::Certify { file } => {
            let report = certify(&file)?;
            eprintln!(
                "{}: {} violations",
                if report.passed { "passed" } else { "FAILED" },
                report.violations.len()
            );
            emit(&report_json(&report))?;
            if !report.passed {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn certify(path: &Path) -> anyhow::Result<Report> {
    let value: serde_json::Value = read_json(path)?;
    let kind = value
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| {
            anyhow!(
                "{} has no \"kind\" field; is it qcmap output?",
                path.display()
            )
        })?
        .to_owned();
    let report = match kind.as_str() {
        KIND_DECOMPOSITION => {
            let json: DecompositionJson = serde_json::from_value(value)?;
            check_decomposition(&json.decomposition_unchecked()?)?
        }
        KIND_MAPPING => {
            let json: MappingJson = serde_json::from_value(value)?;
            let (spec, images) = json.relations_input()?;
            check_qca_relations(&spec, &DenseRep::from_paulis(&images)?)?
        }
        KIND_STAR => {
            let json: StarIsomorphismJson = serde_json::from_value(value)?;
            let iso = StarIsomorphism::from_tables(json.domain, json.images)?;
            for qubits in [iso.domain_qubits(), iso.image_qubits()] {
                if qubits > RELATION_QUBIT_CAP {
                    return Err(Error::DimensionCap {
                        what: "star-isomorphism check",
                        qubits,
                        cap: RELATION_QUBIT_CAP,
                    }
                    .into());
                }
            }
            check_star_isomorphism(&iso, STAR_WORD_CAP, seed()?)?
        }
        KIND_SET => {
            let json: AnticommutingSetJson = serde_json::from_value(value)?;
            check_anticommuting_set(&json.set)?
        }
        KIND_BLOCKS => {
            let json: BlockCertificateJson = serde_json::from_value(value)?;
            check_block_certificate(&json.certificate()?, &json.images, seed()?)?
        }
        other => bail!("unknown document kind {other:?}"),
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("qcmap: error: {:#}", user_facing(err));
            ExitCode::from(2)
        }
    }
}
