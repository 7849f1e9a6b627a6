//! Special quasi-Clifford algebras: generators `x_1 … x_m` with `x_i² = k_i ∈ {±1}`
//! and `x_j x_i = (-1)^{χ_ij} x_i x_j`, monomial arithmetic, and the splitting
//! procedure that brings the algebra into Wedderburn form.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::pauli::FrustrationGraph;

/// Abstract special quasi-Clifford algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct QcaSpec {
    chi: Vec<BitVec>,
    k: Vec<i8>,
}

impl QcaSpec {
    /// Builds and validates a spec from its anti-commutation matrix and squares.
    pub fn new(chi: Vec<Vec<bool>>, k: Vec<i8>) -> Result<Self> {
        let spec = Self {
            chi: chi.into_iter().map(BitVec::from_bools).collect(),
            k,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Builds a spec from 0-based edges of the anti-commutation graph.
    pub fn from_edges(m: usize, edges: &[(usize, usize)], k: Vec<i8>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidSpec("no generators".into()));
        }
        let graph = FrustrationGraph::from_edges(m, edges)?;
        Self::from_graph(&graph, k)
    }

    pub fn from_graph(graph: &FrustrationGraph, k: Vec<i8>) -> Result<Self> {
        let spec = Self {
            chi: (0..graph.num_vertices())
                .map(|i| graph.neighbors(i).clone())
                .collect(),
            k,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Complete anti-commutation graph on `m` generators, all squaring to `+1`.
    pub fn complete(m: usize) -> Result<Self> {
        let edges: Vec<_> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .collect();
        Self::from_edges(m, &edges, vec![1; m])
    }

    pub fn validate(&self) -> Result<()> {
        validate_spec(self)
    }

    pub fn num_generators(&self) -> usize {
        self.k.len()
    }

    pub fn chi(&self, i: usize, j: usize) -> bool {
        self.chi[i].get(j)
    }

    pub fn k(&self, i: usize) -> i8 {
        self.k[i]
    }

    pub fn squares(&self) -> &[i8] {
        &self.k
    }

    pub fn graph(&self) -> FrustrationGraph {
        // Edges come from a validated symmetric matrix.
        FrustrationGraph::from_edges(self.num_generators(), &self.edges()).expect("validated spec")
    }

    /// 0-based edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.num_generators();
        (0..m)
            .flat_map(|i| {
                self.chi[i]
                    .ones()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    /// The monomial `x_i`.
    pub fn generator(&self, i: usize) -> Monomial {
        Monomial::generator(self.num_generators(), i)
    }

    fn check_len(&self, a: &Monomial) -> Result<()> {
        if a.exponents.len() != self.num_generators() {
            return Err(Error::LengthMismatch {
                left: a.exponents.len(),
                right: self.num_generators(),
            });
        }
        Ok(())
    }

    /// `χ · e` as a bit vector: bit `i` is the commutation of `x_i` with the monomial `x^e`.
    fn chi_times(&self, e: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.num_generators());
        for j in e.ones() {
            out.xor_assign(&self.chi[j]);
        }
        out
    }
}

impl fmt::Debug for QcaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QcaSpec")
            .field("m", &self.num_generators())
            .field("edges", &self.edges())
            .field("k", &self.k)
            .finish()
    }
}

pub fn validate_spec(spec: &QcaSpec) -> Result<()> {
    let m = spec.k.len();
    if m == 0 {
        return Err(Error::InvalidSpec("no generators".into()));
    }
    if spec.chi.len() != m {
        return Err(Error::InvalidSpec(format!(
            "χ has {} rows but k has {m} entries",
            spec.chi.len()
        )));
    }
    for (i, row) in spec.chi.iter().enumerate() {
        if row.len() != m {
            return Err(Error::InvalidSpec(format!(
                "χ row {i} has length {}",
                row.len()
            )));
        }
        if row.get(i) {
            return Err(Error::InvalidSpec(format!("χ[{i}][{i}] is nonzero")));
        }
        if let Some(j) = row.ones().find(|&j| !spec.chi[j].get(i)) {
            return Err(Error::InvalidSpec(format!("χ[{i}][{j}] ≠ χ[{j}][{i}]")));
        }
    }
    if let Some((i, k)) = spec.k.iter().enumerate().find(|(_, &k)| k != 1 && k != -1) {
        return Err(Error::InvalidSpec(format!("k[{i}] = {k} is not ±1")));
    }
    Ok(())
}

/// `i^p · x_1^{e_1} ⋯ x_m^{e_m}` with generators in ascending order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exponents: BitVec,
    pub phase: u8,
}

impl Monomial {
    pub fn one(m: usize) -> Self {
        Self {
            exponents: BitVec::zeros(m),
            phase: 0,
        }
    }

    pub fn generator(m: usize, i: usize) -> Self {
        Self {
            exponents: BitVec::unit(m, i),
            phase: 0,
        }
    }

    pub fn new(exponents: BitVec, phase: u8) -> Self {
        Self {
            exponents,
            phase: phase & 3,
        }
    }

    pub fn times_i_pow(&self, k: u8) -> Self {
        Self::new(self.exponents.clone(), self.phase + k)
    }

    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.exponents == other.exponents
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = ["", "i", "-", "-i"][self.phase as usize];
        f.write_str(prefix)?;
        if self.exponents.is_zero() {
            return f.write_str("1");
        }
        let names: Vec<String> = self
            .exponents
            .ones()
            .map(|i| format!("x{}", i + 1))
            .collect();
        f.write_str(&names.join("·"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial({self})")
    }
}

/// Commutation bit of two monomials: the bilinear form `a·χ·b` over GF(2).
pub fn monomial_chi(spec: &QcaSpec, a: &Monomial, b: &Monomial) -> Result<bool> {
    spec.check_len(a)?;
    spec.check_len(b)?;
    Ok(a.exponents.dot(&spec.chi_times(&b.exponents)))
}

/// Exact product `a · b` brought back into canonical order.
pub fn monomial_mul(spec: &QcaSpec, a: &Monomial, b: &Monomial) -> Result<Monomial> {
    spec.check_len(a)?;
    spec.check_len(b)?;
    // Each x_j of b moves left past the x_i of a with i > j.
    let mut reorder = false;
    for j in b.exponents.ones() {
        for i in a.exponents.ones().filter(|&i| i > j) {
            reorder ^= spec.chi(i, j);
        }
    }
    let mut squares = false;
    for i in a.exponents.and(&b.exponents).ones() {
        squares ^= spec.k(i) == -1;
    }
    let phase = a.phase + b.phase + 2 * u8::from(reorder) + 2 * u8::from(squares);
    Ok(Monomial::new(a.exponents.xor(&b.exponents), phase))
}

/// Square of the phase-free part `x^e`: `(-1)^{Σ_{i<j} e_i e_j χ_ij} · Π k_i^{e_i}`.
pub fn monomial_square_sign(spec: &QcaSpec, a: &Monomial) -> i8 {
    let ones: Vec<usize> = a.exponents.ones().collect();
    let mut negative = false;
    for (pos, &i) in ones.iter().enumerate() {
        negative ^= spec.k(i) == -1;
        for &j in &ones[pos + 1..] {
            negative ^= spec.chi(i, j);
        }
    }
    if negative {
        -1
    } else {
        1
    }
}

/// Square of the full monomial including its phase, as a sign.
pub(crate) fn full_square_sign(spec: &QcaSpec, a: &Monomial) -> i8 {
    let base = monomial_square_sign(spec, a);
    // (i^p)² = (-1)^p
    if a.phase % 2 == 1 {
        -base
    } else {
        base
    }
}

/// One splitting step on the pivot pair `(u, v)`. Every other entry `y_i` is
/// multiplied on the left by the pivots it fails to commute with crosswise,
/// so that afterwards both pivots commute with it.
pub fn split_step(
    spec: &QcaSpec,
    current: &[Monomial],
    pivot: (usize, usize),
) -> Result<Vec<Monomial>> {
    let (u, v) = pivot;
    let len = current.len();
    for idx in [u, v] {
        if idx >= len {
            return Err(Error::IndexOutOfRange { index: idx, len });
        }
    }
    if u == v {
        return Err(Error::InvalidPivot {
            u,
            v,
            reason: "pivot entries must differ".into(),
        });
    }
    let (pu, pv) = (&current[u], &current[v]);
    if !monomial_chi(spec, pu, pv)? {
        return Err(Error::InvalidPivot {
            u,
            v,
            reason: "pivot pair commutes".into(),
        });
    }
    current
        .iter()
        .enumerate()
        .map(|(i, y)| {
            if i == u || i == v {
                return Ok(y.clone());
            }
            let with_u = monomial_chi(spec, y, pu)?;
            let with_v = monomial_chi(spec, y, pv)?;
            match (with_u, with_v) {
                (false, false) => Ok(y.clone()),
                (false, true) => monomial_mul(spec, pu, y),
                (true, false) => monomial_mul(spec, pv, y),
                (true, true) => monomial_mul(spec, &monomial_mul(spec, pu, pv)?, y),
            }
        })
        .collect()
}

/// How pivot pairs are chosen during splitting.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PivotPolicy {
    /// Lexicographically smallest anti-commuting pair among unprocessed entries.
    #[default]
    LowestPair,
    /// Use these 0-based pairs first, then continue with `LowestPair`.
    Explicit(Vec<(usize, usize)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairFactor {
    pub gamma: Monomial,
    pub delta: Monomial,
    /// `γ²`
    pub c: i8,
    /// `δ²`
    pub d: i8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralFactor {
    pub beta: Monomial,
    /// `β²`
    pub b: i8,
    /// Position of the originating generator.
    pub origin: usize,
}

/// Result of running the splitting procedure to completion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnDecomposition {
    pub spec: QcaSpec,
    pub pairs: Vec<PairFactor>,
    pub centrals: Vec<CentralFactor>,
    /// Rows are the exponent vectors of `γ_1, δ_1, …, γ_s, δ_s, β_1, …, β_r`.
    pub transform: BitMatrix,
    /// 0-based pivot pairs in the order they were used.
    pub pivot_log: Vec<(usize, usize)>,
}

impl WedderburnDecomposition {
    /// Number of two-generator factors.
    pub fn s(&self) -> usize {
        self.pairs.len()
    }

    /// Number of central factors.
    pub fn r(&self) -> usize {
        self.centrals.len()
    }

    /// Decomposition generators in the row order of `transform`.
    pub fn generators(&self) -> Vec<&Monomial> {
        self.pairs
            .iter()
            .flat_map(|p| [&p.gamma, &p.delta])
            .chain(self.centrals.iter().map(|c| &c.beta))
            .collect()
    }

    /// Squares of the decomposition generators in the row order of `transform`.
    pub fn generator_squares(&self) -> Vec<i8> {
        self.pairs
            .iter()
            .flat_map(|p| [p.c, p.d])
            .chain(self.centrals.iter().map(|c| c.b))
            .collect()
    }

    /// Checks every structural invariant against the originating spec.
    pub fn check_invariants(&self) -> Result<()> {
        let spec = &self.spec;
        let m = spec.num_generators();
        if self.r() + 2 * self.s() != m {
            return Err(Error::Invalid(format!(
                "r + 2s = {} + 2·{} ≠ m = {m}",
                self.r(),
                self.s()
            )));
        }
        if self.transform.inverse().is_none() {
            return Err(Error::Singular);
        }
        let gens = self.generators();
        for (a, ga) in gens.iter().enumerate() {
            if ga.exponents != *self.transform.row(a) {
                return Err(Error::Invalid(format!(
                    "transform row {a} does not match generator"
                )));
            }
            for (b, gb) in gens.iter().enumerate().skip(a + 1) {
                let paired = a < 2 * self.s() && a % 2 == 0 && b == a + 1;
                if monomial_chi(spec, ga, gb)? != paired {
                    return Err(Error::Invalid(format!(
                        "decomposition generators {a} and {b} have the wrong commutation"
                    )));
                }
            }
        }
        for (g, sq) in gens.iter().zip(self.generator_squares()) {
            if full_square_sign(spec, g) != sq {
                return Err(Error::Invalid(format!("recorded square of {g} is wrong")));
            }
        }
        Ok(())
    }
}

fn lowest_pair(
    spec: &QcaSpec,
    current: &[Monomial],
    processed: &[bool],
) -> Result<Option<(usize, usize)>> {
    let m = current.len();
    for u in (0..m).filter(|&u| !processed[u]) {
        for v in (u + 1..m).filter(|&v| !processed[v]) {
            if monomial_chi(spec, &current[u], &current[v])? {
                return Ok(Some((u, v)));
            }
        }
    }
    Ok(None)
}

/// Repeatedly splits anti-commuting pairs until only isolated entries remain.
pub fn run_splitting(spec: &QcaSpec, policy: &PivotPolicy) -> Result<WedderburnDecomposition> {
    spec.validate()?;
    let m = spec.num_generators();
    let mut current: Vec<Monomial> = (0..m).map(|i| spec.generator(i)).collect();
    let mut processed = vec![false; m];
    let mut pivot_log = Vec::new();

    let explicit: &[(usize, usize)] = match policy {
        PivotPolicy::Explicit(list) => list,
        PivotPolicy::LowestPair => &[],
    };
    for &(u, v) in explicit {
        for idx in [u, v] {
            if idx >= m {
                return Err(Error::IndexOutOfRange { index: idx, len: m });
            }
        }
        if processed[u] || processed[v] {
            return Err(Error::InvalidPivot {
                u,
                v,
                reason: "entry already split off".into(),
            });
        }
        current = split_step(spec, &current, (u, v))?;
        processed[u] = true;
        processed[v] = true;
        pivot_log.push((u, v));
    }
    while let Some((u, v)) = lowest_pair(spec, &current, &processed)? {
        current = split_step(spec, &current, (u, v))?;
        processed[u] = true;
        processed[v] = true;
        pivot_log.push((u, v));
    }

    let pairs: Vec<PairFactor> = pivot_log
        .iter()
        .map(|&(u, v)| PairFactor {
            c: full_square_sign(spec, &current[u]),
            d: full_square_sign(spec, &current[v]),
            gamma: current[u].clone(),
            delta: current[v].clone(),
        })
        .collect();
    let centrals: Vec<CentralFactor> = (0..m)
        .filter(|&i| !processed[i])
        .map(|i| CentralFactor {
            b: full_square_sign(spec, &current[i]),
            beta: current[i].clone(),
            origin: i,
        })
        .collect();
    let rows: Vec<BitVec> = pairs
        .iter()
        .flat_map(|p| [p.gamma.exponents.clone(), p.delta.exponents.clone()])
        .chain(centrals.iter().map(|c| c.beta.exponents.clone()))
        .collect();
    let dec = WedderburnDecomposition {
        spec: spec.clone(),
        pairs,
        centrals,
        transform: BitMatrix::from_rows(m, rows),
        pivot_log,
    };
    debug_assert!(dec.check_invariants().is_ok());
    Ok(dec)
}
