//! JSON documents exchanged by the command-line front end.
//!
//! All generator, qubit, and pivot indices in these documents are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::maxacomm::AnticommutingSet;
use crate::pauli::PauliString;
use crate::qca::{
    monomial_square_sign, CentralFactor, Monomial, PairFactor, QcaSpec, WedderburnDecomposition,
};
use crate::qubit_map::{Mode, QubitMapping, StarIsomorphism};
use crate::verify::{BlockCertificate, Report, Violation};

fn one_based(pair: (usize, usize)) -> [usize; 2] {
    [pair.0 + 1, pair.1 + 1]
}

fn zero_based(index: usize, len: usize) -> Result<usize> {
    if index == 0 || index > len {
        return Err(Error::Invalid(format!("index {index} is not in 1..={len}")));
    }
    Ok(index - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecJson {
    pub m: usize,
    pub edges: Vec<[usize; 2]>,
    pub k: Vec<i8>,
}

impl From<&QcaSpec> for SpecJson {
    fn from(spec: &QcaSpec) -> Self {
        Self {
            m: spec.num_generators(),
            edges: spec.edges().into_iter().map(one_based).collect(),
            k: spec.squares().to_vec(),
        }
    }
}

impl TryFrom<&SpecJson> for QcaSpec {
    type Error = Error;

    fn try_from(json: &SpecJson) -> Result<Self> {
        if json.k.len() != json.m {
            return Err(Error::InvalidSpec(format!(
                "m = {} but k has {} entries",
                json.m,
                json.k.len()
            )));
        }
        let edges = json
            .edges
            .iter()
            .map(|&[i, j]| Ok((zero_based(i, json.m)?, zero_based(j, json.m)?)))
            .collect::<Result<Vec<_>>>()?;
        QcaSpec::from_edges(json.m, &edges, json.k.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialJson {
    /// Exponent bits, generator 1 first.
    pub e: String,
    pub p: u8,
}

impl From<&Monomial> for MonomialJson {
    fn from(m: &Monomial) -> Self {
        Self {
            e: m.exponents.to_string(),
            p: m.phase,
        }
    }
}

impl MonomialJson {
    fn to_monomial(&self, m: usize) -> Result<Monomial> {
        let e = BitVec::parse_bits(&self.e)
            .filter(|e| e.len() == m)
            .ok_or_else(|| Error::Invalid(format!("bad exponent string {:?}", self.e)))?;
        if self.p > 3 {
            return Err(Error::Invalid(format!(
                "phase power {} outside 0..=3",
                self.p
            )));
        }
        Ok(Monomial::new(e, self.p))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub gamma: MonomialJson,
    pub delta: MonomialJson,
    pub c: i8,
    pub d: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralJson {
    pub beta: MonomialJson,
    pub b: i8,
    pub origin: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub kind: String,
    pub spec: SpecJson,
    pub r: usize,
    pub s: usize,
    pub pairs: Vec<PairJson>,
    pub centrals: Vec<CentralJson>,
    pub transform: Vec<String>,
    pub pivot_log: Vec<[usize; 2]>,
}

pub const KIND_DECOMPOSITION: &str = "decomposition";
pub const KIND_MAPPING: &str = "mapping";
pub const KIND_STAR: &str = "star_isomorphism";
pub const KIND_SET: &str = "anticommuting_set";
pub const KIND_BLOCKS: &str = "block_certificate";

impl From<&WedderburnDecomposition> for DecompositionJson {
    fn from(dec: &WedderburnDecomposition) -> Self {
        Self {
            kind: KIND_DECOMPOSITION.into(),
            spec: SpecJson::from(&dec.spec),
            r: dec.r(),
            s: dec.s(),
            pairs: dec
                .pairs
                .iter()
                .map(|p| PairJson {
                    gamma: (&p.gamma).into(),
                    delta: (&p.delta).into(),
                    c: p.c,
                    d: p.d,
                })
                .collect(),
            centrals: dec
                .centrals
                .iter()
                .map(|c| CentralJson {
                    beta: (&c.beta).into(),
                    b: c.b,
                    origin: c.origin + 1,
                })
                .collect(),
            transform: dec.transform.rows().iter().map(|r| r.to_string()).collect(),
            pivot_log: dec.pivot_log.iter().copied().map(one_based).collect(),
        }
    }
}

impl TryFrom<&DecompositionJson> for WedderburnDecomposition {
    type Error = Error;

    /// Rebuilds a decomposition and re-checks all of its invariants.
    fn try_from(json: &DecompositionJson) -> Result<Self> {
        let dec = json.decomposition_unchecked()?;
        dec.check_invariants()?;
        Ok(dec)
    }
}

impl DecompositionJson {
    /// Rebuilds the decomposition after shape checks only; the algebra is left to the caller.
    pub fn decomposition_unchecked(&self) -> Result<WedderburnDecomposition> {
        let json = self;
        let spec = QcaSpec::try_from(&json.spec)?;
        let m = spec.num_generators();
        let pairs = json
            .pairs
            .iter()
            .map(|p| {
                Ok(PairFactor {
                    gamma: p.gamma.to_monomial(m)?,
                    delta: p.delta.to_monomial(m)?,
                    c: p.c,
                    d: p.d,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let centrals = json
            .centrals
            .iter()
            .map(|c| {
                Ok(CentralFactor {
                    beta: c.beta.to_monomial(m)?,
                    b: c.b,
                    origin: zero_based(c.origin, m)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rows = json
            .transform
            .iter()
            .map(|r| {
                BitVec::parse_bits(r)
                    .filter(|v| v.len() == m)
                    .ok_or_else(|| Error::Invalid(format!("bad transform row {r:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.len() != m {
            return Err(Error::Invalid(format!(
                "transform has {} rows, expected {m}",
                rows.len()
            )));
        }
        let pivot_log = json
            .pivot_log
            .iter()
            .map(|&[u, v]| Ok((zero_based(u, m)?, zero_based(v, m)?)))
            .collect::<Result<Vec<_>>>()?;
        if json.r != centrals.len() || json.s != pairs.len() {
            return Err(Error::Invalid("r/s do not match the listed factors".into()));
        }
        Ok(WedderburnDecomposition {
            spec,
            pairs,
            centrals,
            transform: BitMatrix::from_rows(m, rows),
            pivot_log,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingJson {
    pub kind: String,
    pub mode: Mode,
    pub qubits: usize,
    pub centrals: usize,
    pub images: Vec<PauliString>,
    pub pivots: Vec<[usize; 2]>,
    pub sign_branch: Vec<i8>,
    pub hermitized: Vec<usize>,
    pub spec: SpecJson,
}

impl From<&QubitMapping> for MappingJson {
    fn from(map: &QubitMapping) -> Self {
        Self {
            kind: KIND_MAPPING.into(),
            mode: map.mode,
            qubits: map.s,
            centrals: map.r,
            images: map.images.clone(),
            pivots: map.pivots.iter().copied().map(one_based).collect(),
            sign_branch: map.sign_branch.clone(),
            hermitized: map.hermitized.iter().map(|i| i + 1).collect(),
            spec: SpecJson::from(&map.spec),
        }
    }
}

impl MappingJson {
    /// The spec and the exact images (with Hermitization undone), ready for the oracle.
    pub fn relations_input(&self) -> Result<(QcaSpec, Vec<PauliString>)> {
        let spec = QcaSpec::try_from(&self.spec)?;
        let m = spec.num_generators();
        if self.images.len() != m {
            return Err(Error::Invalid(format!(
                "{} images for {m} generators",
                self.images.len()
            )));
        }
        let mut images = self.images.clone();
        for &h in &self.hermitized {
            let i = zero_based(h, m)?;
            images[i] = images[i].times_i_pow(3);
        }
        Ok((spec, images))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarIsomorphismJson {
    pub kind: String,
    pub domain: Vec<PauliString>,
    pub images: Vec<PauliString>,
    pub independent: Vec<usize>,
    pub pairs: usize,
    pub centrals: usize,
}

impl From<&StarIsomorphism> for StarIsomorphismJson {
    fn from(iso: &StarIsomorphism) -> Self {
        Self {
            kind: KIND_STAR.into(),
            domain: iso.domain.clone(),
            images: iso.images.clone(),
            independent: iso.independent.iter().map(|i| i + 1).collect(),
            pairs: iso.mapping.as_ref().map_or(0, |m| m.s),
            centrals: iso.mapping.as_ref().map_or(0, |m| m.r),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnticommutingSetJson {
    pub kind: String,
    pub set: Vec<PauliString>,
    pub s: usize,
    pub completion: Option<PauliString>,
    pub generators: Vec<PauliString>,
}

impl From<&AnticommutingSet> for AnticommutingSetJson {
    fn from(set: &AnticommutingSet) -> Self {
        Self {
            kind: KIND_SET.into(),
            set: set.elements.clone(),
            s: set.s,
            completion: set.completion().cloned(),
            generators: set.source_group_gens.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCertificateJson {
    pub kind: String,
    pub diagonal_coords: Vec<usize>,
    pub block_count: usize,
    pub block_size: usize,
    pub qubits: usize,
    pub images: Vec<PauliString>,
}

impl BlockCertificateJson {
    pub fn new(cert: &BlockCertificate, images: &[PauliString]) -> Self {
        Self {
            kind: KIND_BLOCKS.into(),
            diagonal_coords: cert.diagonal_coords.iter().map(|q| q + 1).collect(),
            block_count: cert.block_count,
            block_size: cert.block_size,
            qubits: cert.num_qubits,
            images: images.to_vec(),
        }
    }

    pub fn certificate(&self) -> Result<BlockCertificate> {
        let coords = self
            .diagonal_coords
            .iter()
            .map(|&q| zero_based(q, self.qubits))
            .collect::<Result<Vec<_>>>()?;
        Ok(BlockCertificate {
            diagonal_coords: coords,
            num_qubits: self.qubits,
            block_count: self.block_count,
            block_size: self.block_size,
        })
    }
}

/// Report with 1-based indices, as emitted by `certify`.
pub fn report_json(report: &Report) -> Report {
    Report {
        passed: report.passed,
        violations: report
            .violations
            .iter()
            .map(|v| Violation {
                kind: v.kind,
                indices: v.indices.iter().map(|i| i + 1).collect(),
            })
            .collect(),
    }
}

/// Square sign of a monomial as recorded in JSON, for callers validating by hand.
pub fn recorded_square(spec: &QcaSpec, m: &MonomialJson) -> Result<i8> {
    let mono = m.to_monomial(spec.num_generators())?;
    let base = monomial_square_sign(spec, &mono);
    Ok(if mono.phase % 2 == 1 { -base } else { base })
}
