//! Exact matrix oracle and certificates.
//!
//! Matrices are built from the 2×2 Pauli letters by Kronecker products and multiplied
//! with Gaussian-integer entries, so every check is exact. Storage is row-sparse since
//! all matrices here are (products of) tensor products of Pauli letters.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliString};
use crate::qca::{full_square_sign, monomial_chi, QcaSpec, WedderburnDecomposition};
use crate::qubit_map::{mapping_from_decomposition, Mode, QubitMapping, StarIsomorphism};

/// Qubit cap for relation checks.
pub const RELATION_QUBIT_CAP: usize = 12;
/// Qubit cap for span-level block certificates.
pub const BLOCK_QUBIT_CAP: usize = 6;

pub type Gauss = Complex<i64>;

const ZERO: Gauss = Complex::new(0, 0);
const ONE: Gauss = Complex::new(1, 0);
const I: Gauss = Complex::new(0, 1);

/// Exact square matrix with Gaussian-integer entries, stored as sorted sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    rows: Vec<Vec<(usize, Gauss)>>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            rows: (0..dim).map(|i| vec![(i, ONE)]).collect(),
        }
    }

    pub fn from_dense(entries: &[Vec<Gauss>]) -> Self {
        let dim = entries.len();
        let rows = entries
            .iter()
            .map(|row| {
                assert_eq!(row.len(), dim, "matrix must be square");
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != ZERO)
                    .map(|(j, v)| (j, *v))
                    .collect()
            })
            .collect();
        Self { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Gauss {
        self.rows[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map_or(ZERO, |pos| self.rows[i][pos].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<Gauss>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Gauss)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn scale(&self, c: Gauss) -> Self {
        if c == ZERO {
            return Self::zeros(self.dim);
        }
        Self {
            dim: self.dim,
            rows: self
                .rows
                .iter()
                .map(|row| row.iter().map(|&(j, v)| (j, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut acc: Vec<(usize, Gauss)> = a.iter().chain(b).copied().collect();
                acc.sort_by_key(|(j, _)| *j);
                let mut out: Vec<(usize, Gauss)> = Vec::with_capacity(acc.len());
                for (j, v) in acc {
                    match out.last_mut() {
                        Some((lj, lv)) if *lj == j => *lv += v,
                        _ => out.push((j, v)),
                    }
                }
                out.retain(|(_, v)| *v != ZERO);
                out
            })
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: HashMap<usize, Gauss> = HashMap::new();
                for &(k, a) in row {
                    for &(j, b) in &other.rows[k] {
                        *acc.entry(j).or_insert(ZERO) += a * b;
                    }
                }
                let mut out: Vec<(usize, Gauss)> =
                    acc.into_iter().filter(|(_, v)| *v != ZERO).collect();
                out.sort_by_key(|(j, _)| *j);
                out
            })
            .collect();
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn kron(&self, other: &Self) -> Self {
        let dim = self.dim * other.dim;
        let mut rows = Vec::with_capacity(dim);
        for arow in &self.rows {
            for brow in &other.rows {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for &(ja, va) in arow {
                    for &(jb, vb) in brow {
                        row.push((ja * other.dim + jb, va * vb));
                    }
                }
                rows.push(row);
            }
        }
        Self { dim, rows }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut rows: Vec<Vec<(usize, Gauss)>> = vec![Vec::new(); self.dim];
        for (i, j, v) in self.entries() {
            rows[j].push((i, v.conj()));
        }
        for row in &mut rows {
            row.sort_by_key(|(j, _)| *j);
        }
        Self {
            dim: self.dim,
            rows,
        }
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()) == Self::identity(self.dim)
    }

    /// `±1` if the matrix equals `±identity`.
    pub fn identity_sign(&self) -> Option<i8> {
        if *self == Self::identity(self.dim) {
            Some(1)
        } else if *self == Self::identity(self.dim).scale(-ONE) {
            Some(-1)
        } else {
            None
        }
    }

    /// Reorders tensor factors: the new qubit `a` is old qubit `order[a]`.
    pub fn permute_qubits(&self, order: &[usize]) -> Self {
        let n = order.len();
        assert_eq!(1usize << n, self.dim, "order must cover every qubit");
        let map = |old: usize| -> usize {
            let mut new = 0;
            for (a, &q) in order.iter().enumerate() {
                let bit = (old >> (n - 1 - q)) & 1;
                new |= bit << (n - 1 - a);
            }
            new
        };
        let mut rows: Vec<Vec<(usize, Gauss)>> = vec![Vec::new(); self.dim];
        for (i, j, v) in self.entries() {
            rows[map(i)].push((map(j), v));
        }
        for row in &mut rows {
            row.sort_by_key(|(j, _)| *j);
        }
        Self {
            dim: self.dim,
            rows,
        }
    }
}

fn letter_matrix(letter: Letter) -> ExactMatrix {
    let d = |a: [[Gauss; 2]; 2]| ExactMatrix::from_dense(&[a[0].to_vec(), a[1].to_vec()]);
    match letter {
        Letter::I => d([[ONE, ZERO], [ZERO, ONE]]),
        Letter::X => d([[ZERO, ONE], [ONE, ZERO]]),
        Letter::Y => d([[ZERO, -I], [I, ZERO]]),
        Letter::Z => d([[ONE, ZERO], [ZERO, -ONE]]),
    }
}

fn i_pow(p: u8) -> Gauss {
    [ONE, I, -ONE, -I][(p % 4) as usize]
}

/// Matrix of a Pauli string, qubit 0 being the most significant tensor factor.
pub fn pauli_matrix(p: &PauliString) -> ExactMatrix {
    let m = p.letters().fold(ExactMatrix::identity(1), |acc, l| {
        acc.kron(&letter_matrix(l))
    });
    m.scale(i_pow(p.phase()))
}

/// Explicit matrices of a list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseRep {
    pub dim: usize,
    pub mats: Vec<ExactMatrix>,
}

impl DenseRep {
    pub fn from_paulis(paulis: &[PauliString]) -> Result<Self> {
        let n = paulis.first().map_or(0, PauliString::num_qubits);
        if n > RELATION_QUBIT_CAP {
            return Err(Error::DimensionCap {
                what: "dense representation",
                qubits: n,
                cap: RELATION_QUBIT_CAP,
            });
        }
        if let Some(p) = paulis.iter().find(|p| p.num_qubits() != n) {
            return Err(Error::LengthMismatch {
                left: p.num_qubits(),
                right: n,
            });
        }
        Ok(Self {
            dim: 1 << n,
            mats: paulis.iter().map(pauli_matrix).collect(),
        })
    }
}

/// Matrices of the exact (pre-Hermitization) images of a mapping.
pub fn dense_generators(mapping: &QubitMapping) -> Result<DenseRep> {
    DenseRep::from_paulis(&mapping.exact_images())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ViolationKind {
    Square,
    Commutation,
    Star,
    Block,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            passed: violations.is_empty(),
            violations,
        }
    }

    pub fn merge(mut self, other: Report) -> Self {
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self
    }
}

/// Checks `M_i² = k_i·1` and `M_i M_j = (-1)^{χ_ij} M_j M_i` for every pair.
/// Violations are reported with 0-based generator indices.
pub fn check_qca_relations(spec: &QcaSpec, rep: &DenseRep) -> Result<Report> {
    let m = spec.num_generators();
    if rep.mats.len() != m {
        return Err(Error::Invalid(format!(
            "{} matrices for {m} generators",
            rep.mats.len()
        )));
    }
    let mut violations = Vec::new();
    for i in 0..m {
        let sq = rep.mats[i].mul(&rep.mats[i]);
        if sq.identity_sign() != Some(spec.k(i)) {
            violations.push(Violation {
                kind: ViolationKind::Square,
                indices: vec![i],
            });
        }
        for j in i + 1..m {
            let ij = rep.mats[i].mul(&rep.mats[j]);
            let ji = rep.mats[j].mul(&rep.mats[i]);
            let expected = if spec.chi(i, j) { ji.scale(-ONE) } else { ji };
            if ij != expected {
                violations.push(Violation {
                    kind: ViolationKind::Commutation,
                    indices: vec![i, j],
                });
            }
        }
    }
    Ok(Report::from_violations(violations))
}

/// Words over generator indices: exhaustive up to `cap` for at most four generators,
/// otherwise `samples` random words per length from a seeded generator.
fn words(generators: usize, cap: usize, seed: u64, samples: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    if generators == 0 {
        return out;
    }
    if generators <= 4 {
        let mut frontier = vec![Vec::new()];
        for _ in 0..cap {
            let next: Vec<Vec<usize>> = frontier
                .iter()
                .flat_map(|w: &Vec<usize>| {
                    (0..generators).map(move |g| {
                        let mut w = w.clone();
                        w.push(g);
                        w
                    })
                })
                .collect();
            out.extend(next.iter().cloned());
            frontier = next;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // every generator and every ordered pair first, then random longer words
        out.extend((0..generators).map(|g| vec![g]));
        for a in 0..generators {
            for b in 0..generators {
                out.push(vec![a, b]);
            }
        }
        for len in 3..=cap {
            for _ in 0..samples {
                out.push((0..len).map(|_| rng.gen_range(0..generators)).collect());
            }
        }
    }
    out
}

/// Checks that the map respects products (with exact phases) and the dagger on words
/// up to `word_length_cap`. Two words whose domain products agree up to a phase must
/// have image products that agree up to the same phase, and vice versa.
pub fn check_star_isomorphism(
    iso: &StarIsomorphism,
    word_length_cap: usize,
    seed: u64,
) -> Result<Report> {
    let g = iso.domain.len();
    if iso.images.len() != g {
        return Err(Error::Invalid(format!(
            "{g} domain generators but {} images",
            iso.images.len()
        )));
    }
    if g == 0 {
        return Ok(Report::from_violations(Vec::new()));
    }
    let dn = iso.domain[0].num_qubits();
    let inn = iso.images[0].num_qubits();
    let mut violations = Vec::new();
    let mut by_domain: HashMap<PauliString, (PauliString, PauliString, Vec<usize>)> =
        HashMap::new();
    let mut by_image: HashMap<PauliString, (PauliString, PauliString, Vec<usize>)> = HashMap::new();

    for word in words(g, word_length_cap, seed, 256) {
        let d = PauliString::product(dn, word.iter().map(|&t| &iso.domain[t]))?;
        let e = PauliString::product(inn, word.iter().map(|&t| &iso.images[t]))?;

        // dagger: (g_1 ⋯ g_k)† = g_k† ⋯ g_1†, and each g† is ±g for a Pauli string.
        let rev_d = PauliString::product(dn, word.iter().rev().map(|&t| &iso.domain[t]))?;
        let rev_e = PauliString::product(inn, word.iter().rev().map(|&t| &iso.images[t]))?;
        let sign: u8 = word
            .iter()
            .map(|&t| if iso.domain[t].is_hermitian() { 0 } else { 2 })
            .sum();
        debug_assert_eq!(d.dagger(), rev_d.times_i_pow(sign));
        if e.dagger() != rev_e.times_i_pow(sign) {
            violations.push(Violation {
                kind: ViolationKind::Star,
                indices: word.clone(),
            });
            continue;
        }

        let mut consistent = true;
        for (key, this, other, table) in [
            (d.unsigned(), &d, &e, &mut by_domain),
            (e.unsigned(), &e, &d, &mut by_image),
        ] {
            match table.get(&key) {
                Some((first_this, first_other, _)) => {
                    let omega = (this.phase() + 4 - first_this.phase()) % 4;
                    if *other != first_other.times_i_pow(omega) {
                        consistent = false;
                    }
                }
                None => {
                    table.insert(key, (this.clone(), other.clone(), word.clone()));
                }
            }
        }
        if !consistent {
            violations.push(Violation {
                kind: ViolationKind::Star,
                indices: word,
            });
        }
    }
    Ok(Report::from_violations(violations))
}

/// Tensor coordinates on which every image acts by `I` or `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockCertificate {
    /// 0-based qubit indices.
    pub diagonal_coords: Vec<usize>,
    pub num_qubits: usize,
    pub block_count: usize,
    pub block_size: usize,
}

impl BlockCertificate {
    /// Qubit order that puts the diagonal coordinates first.
    pub fn fronting_order(&self) -> Vec<usize> {
        let diag: BTreeSet<usize> = self.diagonal_coords.iter().copied().collect();
        self.diagonal_coords
            .iter()
            .copied()
            .chain((0..self.num_qubits).filter(|q| !diag.contains(q)))
            .collect()
    }

    /// Letter-level check of the certificate against a list of images.
    pub fn check_images(&self, images: &[PauliString]) -> Report {
        let mut violations = Vec::new();
        for (i, img) in images.iter().enumerate() {
            for &q in &self.diagonal_coords {
                if q >= img.num_qubits() || !matches!(img.letter(q), Letter::I | Letter::Z) {
                    violations.push(Violation {
                        kind: ViolationKind::Block,
                        indices: vec![i, q],
                    });
                }
            }
        }
        Report::from_violations(violations)
    }

    /// After fronting the diagonal coordinates, every nonzero entry of `matrix` must lie
    /// in one of the `block_count` diagonal blocks. Returns the offending `(row, col)`s.
    pub fn off_block_entries(&self, matrix: &ExactMatrix) -> Vec<(usize, usize)> {
        let permuted = matrix.permute_qubits(&self.fronting_order());
        permuted
            .entries()
            .filter(|(i, j, _)| i / self.block_size != j / self.block_size)
            .map(|(i, j, _)| (i, j))
            .collect()
    }
}

pub fn block_structure(images: &[PauliString]) -> Result<BlockCertificate> {
    let n = images
        .first()
        .ok_or(Error::Empty("image list"))?
        .num_qubits();
    if let Some(p) = images.iter().find(|p| p.num_qubits() != n) {
        return Err(Error::LengthMismatch {
            left: p.num_qubits(),
            right: n,
        });
    }
    let diagonal_coords: Vec<usize> = (0..n)
        .filter(|&q| images.iter().all(|p| !p.x_bits().get(q)))
        .collect();
    let d = diagonal_coords.len();
    Ok(BlockCertificate {
        diagonal_coords,
        num_qubits: n,
        block_count: 1 << d,
        block_size: 1 << (n - d),
    })
}

/// One Hamiltonian interaction term with its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianTerm {
    pub coefficient: i32,
    pub pauli: PauliString,
}

/// Terms of `H = -Σ_{ij ∈ E} (X_i Z_j + Z_i X_j)` over 0-based edges, in edge order.
pub fn hamiltonian_terms(edges: &[(usize, usize)], n: usize) -> Result<Vec<HamiltonianTerm>> {
    let mut terms = Vec::with_capacity(2 * edges.len());
    for &(i, j) in edges {
        for v in [i, j] {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, len: n });
            }
        }
        if i == j {
            return Err(Error::Invalid(format!("self-loop on vertex {i}")));
        }
        for (a, b) in [(Letter::X, Letter::Z), (Letter::Z, Letter::X)] {
            let mut letters = vec![Letter::I; n];
            letters[i] = a;
            letters[j] = b;
            terms.push(HamiltonianTerm {
                coefficient: -1,
                pauli: PauliString::from_letters(0, &letters),
            });
        }
    }
    Ok(terms)
}

/// A random Hermitian element of the real span of `images` and their pairwise
/// products, used to exercise block certificates.
pub fn random_span_element(images: &[PauliString], seed: u64) -> Result<ExactMatrix> {
    let n = images
        .first()
        .ok_or(Error::Empty("image list"))?
        .num_qubits();
    if n > BLOCK_QUBIT_CAP {
        return Err(Error::DimensionCap {
            what: "span certificate",
            qubits: n,
            cap: BLOCK_QUBIT_CAP,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms: Vec<PauliString> = images.to_vec();
    for a in images {
        for b in images {
            terms.push(a.mul(b)?.hermitized().0);
        }
    }
    let mut acc = ExactMatrix::zeros(1 << n);
    for t in &terms {
        let c: i64 = rng.gen_range(-5..=5);
        acc = acc.add(&pauli_matrix(t).scale(Complex::new(c, 0)));
    }
    Ok(acc)
}

/// Checks a decomposition against its spec. Recorded squares and the pair structure of
/// the decomposition generators are verified symbolically (indices are positions in the
/// transform); if those hold, the realized mapping goes through the dense oracle
/// (indices are spec generators).
pub fn check_decomposition(dec: &WedderburnDecomposition) -> Result<Report> {
    let spec = &dec.spec;
    let m = spec.num_generators();
    if dec.r() + 2 * dec.s() != m {
        return Err(Error::Invalid(format!(
            "decomposition lists {} factors for {m} generators",
            dec.r() + 2 * dec.s()
        )));
    }
    let gens = dec.generators();
    for (a, g) in gens.iter().enumerate() {
        if g.exponents.len() != m || g.exponents != *dec.transform.row(a) {
            return Err(Error::Invalid(format!(
                "transform row {a} does not match its factor"
            )));
        }
    }
    let mut violations = Vec::new();
    for (a, (g, sq)) in gens.iter().zip(dec.generator_squares()).enumerate() {
        if full_square_sign(spec, g) != sq {
            violations.push(Violation {
                kind: ViolationKind::Square,
                indices: vec![a],
            });
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            let paired = a < 2 * dec.s() && a % 2 == 0 && b == a + 1;
            if monomial_chi(spec, gens[a], gens[b])? != paired {
                violations.push(Violation {
                    kind: ViolationKind::Commutation,
                    indices: vec![a, b],
                });
            }
        }
    }
    if !violations.is_empty() {
        return Ok(Report::from_violations(violations));
    }
    let mapping = mapping_from_decomposition(dec, Mode::Independent, None)?;
    check_qca_relations(spec, &dense_generators(&mapping)?)
}

/// Dense check that the elements pairwise anti-commute and are odd in number.
/// An even-sized set is reported as a commutation violation with no indices.
pub fn check_anticommuting_set(elements: &[PauliString]) -> Result<Report> {
    let rep = DenseRep::from_paulis(elements)?;
    let mut violations = Vec::new();
    if elements.len().is_multiple_of(2) {
        violations.push(Violation {
            kind: ViolationKind::Commutation,
            indices: Vec::new(),
        });
    }
    for i in 0..rep.mats.len() {
        for j in i + 1..rep.mats.len() {
            let anti = rep.mats[i]
                .mul(&rep.mats[j])
                .add(&rep.mats[j].mul(&rep.mats[i]));
            if anti.entries().next().is_some() {
                violations.push(Violation {
                    kind: ViolationKind::Commutation,
                    indices: vec![i, j],
                });
            }
        }
    }
    Ok(Report::from_violations(violations))
}

/// Letter-level and span-level check of a block certificate. Off-block entries of a
/// random span element are reported as `[row, col]`; at most 16 are listed.
pub fn check_block_certificate(
    cert: &BlockCertificate,
    images: &[PauliString],
    seed: u64,
) -> Result<Report> {
    let n = cert.num_qubits;
    let d = cert.diagonal_coords.len();
    let distinct: BTreeSet<usize> = cert.diagonal_coords.iter().copied().collect();
    if distinct.len() != d || distinct.iter().any(|&q| q >= n) {
        return Err(Error::Invalid(
            "diagonal coordinates must be distinct qubits".into(),
        ));
    }
    let mut violations = Vec::new();
    if cert.block_count != 1 << d || cert.block_size != 1 << (n - d) {
        violations.push(Violation {
            kind: ViolationKind::Block,
            indices: Vec::new(),
        });
    }
    let report = cert.check_images(images);
    violations.extend(report.violations);
    if !violations.is_empty() {
        return Ok(Report::from_violations(violations));
    }
    let element = random_span_element(images, seed)?;
    violations.extend(
        cert.off_block_entries(&element)
            .into_iter()
            .take(16)
            .map(|(i, j)| Violation {
                kind: ViolationKind::Block,
                indices: vec![i, j],
            }),
    );
    Ok(Report::from_violations(violations))
}
