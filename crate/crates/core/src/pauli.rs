//! Phase-exact n-qubit Pauli strings in the symplectic (x, z) representation.
//!
//! A [`PauliString`] denotes `i^p · W_0 ⊗ … ⊗ W_{n-1}` with `W = I, X, Z, Y` for
//! `(x, z) = (0,0), (1,0), (0,1), (1,1)`. The letters are the Hermitian Pauli
//! matrices, so the whole phase lives in `p` and a string is Hermitian iff `p` is even.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::gf2::BitVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (false, true) => Letter::Z,
            (true, true) => Letter::Y,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Z => (false, true),
            Letter::Y => (true, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

/// Element of the n-qubit Pauli group with its phase tracked exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    phase: u8,
    x: BitVec,
    z: BitVec,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    /// Builds `i^phase · W(x, z)`; the phase is reduced mod 4.
    pub fn from_parts(phase: u8, x: BitVec, z: BitVec) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::LengthMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self {
            phase: phase & 3,
            x,
            z,
        })
    }

    pub fn from_letters(phase: u8, letters: &[Letter]) -> Self {
        let n = letters.len();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x.set(q, bx);
            z.set(q, bz);
        }
        Self {
            phase: phase & 3,
            x,
            z,
        }
    }

    /// A single letter on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut letters = vec![Letter::I; n];
        letters[q] = letter;
        Self::from_letters(0, &letters)
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    /// Phase power `p`, the string carries the factor `i^p`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.num_qubits()).map(|q| self.letter(q))
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_multiple_of(2)
    }

    /// True if the operator is `i^p · identity` for some p.
    pub fn is_scalar(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x.xor(&self.z).count_ones() + self.x.and(&self.z).count_ones()
    }

    /// Symplectic row `x ‖ z` of length 2n.
    pub fn symplectic_row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Returns the same string multiplied by `i^k`.
    pub fn times_i_pow(&self, k: u8) -> Self {
        Self {
            phase: (self.phase + k) & 3,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn negate(&self) -> Self {
        self.times_i_pow(2)
    }

    /// The same letters with phase power zero.
    pub fn unsigned(&self) -> Self {
        self.times_i_pow(4 - self.phase)
    }

    /// Conjugate transpose. Letters are Hermitian, so only the phase conjugates.
    pub fn dagger(&self) -> Self {
        Self {
            phase: (4 - self.phase) & 3,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::LengthMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// Exact operator product `self · other`.
    ///
    /// Both factors are rewritten as `i^{p + |x∧z|} X^x Z^z`; moving `Z^{z1}` past
    /// `X^{x2}` contributes `(-1)^{z1·x2}`, then the result is converted back.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let y1 = self.x.and(&self.z).count_ones();
        let y2 = other.x.and(&other.z).count_ones();
        let swap = if self.z.dot(&other.x) { 2 } else { 0 };
        let x = self.x.xor(&other.x);
        let z = self.z.xor(&other.z);
        let y = x.and(&z).count_ones();
        let q = self.phase as usize + other.phase as usize + y1 + y2 + swap + 4 * y - y;
        Ok(Self {
            phase: (q % 4) as u8,
            x,
            z,
        })
    }

    /// `true` iff the two strings anti-commute (symplectic product `x·z' + z·x'`).
    pub fn anticommutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.x.dot(&other.z) ^ self.z.dot(&other.x))
    }

    /// Commutation bit: 0 if `ab = ba`, 1 if `ab = -ba`.
    pub fn commutes(&self, other: &Self) -> Result<u8> {
        self.anticommutes(other).map(u8::from)
    }

    /// Sign of `self²`, which is always `±identity`.
    pub fn square_sign(&self) -> i8 {
        if self.phase.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Equality ignoring the phase.
    pub fn eq_up_to_phase(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Equality ignoring a global sign (but not a factor of `±i`).
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self.eq_up_to_phase(other) && (self.phase + 4 - other.phase).is_multiple_of(2)
    }

    /// Multiplies by `i` if the phase is `±i`, so the result is Hermitian.
    /// Returns the Hermitian string and whether an adjustment was made.
    pub fn hermitized(&self) -> (Self, bool) {
        if self.is_hermitian() {
            (self.clone(), false)
        } else {
            (self.times_i_pow(1), true)
        }
    }

    /// Product of a sequence of equal-length strings, in order.
    pub fn product<'a, I>(n: usize, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a PauliString>,
    {
        factors
            .into_iter()
            .try_fold(Self::identity(n), |acc, f| acc.mul(f))
    }

    fn letters_string(&self) -> String {
        self.letters().map(Letter::as_char).collect()
    }
}

pub fn parse_pauli(text: &str) -> Result<PauliString> {
    text.parse()
}

pub fn format_pauli(p: &PauliString) -> String {
    p.to_string()
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let err = |reason: &str| Error::ParsePauli {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let (phase, body) = if let Some(rest) = t.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = t.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = t.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = t.strip_prefix('+') {
            (0, rest)
        } else {
            (0, t)
        };
        if body.is_empty() {
            return Err(err("no Pauli letters"));
        }
        let letters = body
            .chars()
            .map(|c| {
                Letter::from_char(c).ok_or_else(|| {
                    if matches!(c, '+' | '-' | 'i') {
                        err("malformed phase prefix")
                    } else {
                        err(&format!("unknown character {c:?}"))
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliString::from_letters(phase, &letters))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.letters_string())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl serde::Serialize for PauliString {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Symmetric anti-commutation graph of a list of generators.
#[derive(Clone, PartialEq, Eq)]
pub struct FrustrationGraph {
    adj: Vec<BitVec>,
}

impl FrustrationGraph {
    pub fn empty(m: usize) -> Self {
        Self {
            adj: vec![BitVec::zeros(m); m],
        }
    }

    /// Builds a graph from 0-based edges. Self-loops and out-of-range vertices are rejected.
    pub fn from_edges(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(m);
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= m {
                    return Err(Error::IndexOutOfRange { index: v, len: m });
                }
            }
            if i == j {
                return Err(Error::Invalid(format!("self-loop on vertex {i}")));
            }
            g.adj[i].set(j, true);
            g.adj[j].set(i, true);
        }
        Ok(g)
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].get(j)
    }

    pub fn neighbors(&self, i: usize) -> &BitVec {
        &self.adj[i]
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let m = self.num_vertices();
        (0..m)
            .flat_map(|i| {
                self.adj[i]
                    .ones()
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }
}

impl fmt::Debug for FrustrationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FrustrationGraph({} vertices, edges {:?})",
            self.num_vertices(),
            self.edges()
        )
    }
}

pub fn frustration_graph(gens: &[PauliString]) -> Result<FrustrationGraph> {
    let first = gens.first().ok_or(Error::Empty("generator list"))?;
    let m = gens.len();
    let mut g = FrustrationGraph::empty(m);
    for i in 0..m {
        gens[i].check_len(first)?;
        for j in i + 1..m {
            if gens[i].anticommutes(&gens[j])? {
                g.adj[i].set(j, true);
                g.adj[j].set(i, true);
            }
        }
    }
    Ok(g)
}
