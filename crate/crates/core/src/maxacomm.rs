//! Maximal pairwise anti-commuting subsets of a Pauli group.

use crate::error::{Error, Result};
use crate::gf2::RowBasis;
use crate::pauli::PauliString;
use crate::qca::{run_splitting, Monomial, PivotPolicy, QcaSpec};

/// Pairwise anti-commuting elements of the group generated by `source_group_gens`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnticommutingSet {
    pub elements: Vec<PauliString>,
    pub source_group_gens: Vec<PauliString>,
    /// Number of `[γ, δ]` factors of the source group; the set has `2s + 1` elements.
    pub s: usize,
}

impl AnticommutingSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The element appended to complete the even-sized prefix, if any.
    pub fn completion(&self) -> Option<&PauliString> {
        (self.s > 0).then(|| self.elements.last()).flatten()
    }

    /// Checks pairwise anti-commutation, odd size, and (phase-blind) group membership.
    pub fn check_invariants(&self) -> Result<()> {
        if self.elements.len().is_multiple_of(2) {
            return Err(Error::Invalid(format!(
                "set has even size {}",
                self.elements.len()
            )));
        }
        for i in 0..self.elements.len() {
            for j in i + 1..self.elements.len() {
                if !self.elements[i].anticommutes(&self.elements[j])? {
                    return Err(Error::NotAnticommuting(i, j));
                }
            }
        }
        let n = self.elements[0].num_qubits();
        let mut basis = RowBasis::new(2 * n);
        for g in &self.source_group_gens {
            basis.insert(&g.symplectic_row());
        }
        if let Some(i) = self
            .elements
            .iter()
            .position(|e| !basis.contains(&e.symplectic_row()))
        {
            return Err(Error::Invalid(format!("element {i} is outside the group")));
        }
        Ok(())
    }
}

/// Ordered product of an even-sized anti-commuting set, made Hermitian. It is the
/// element that anti-commutes with every member.
pub fn completion_monomial(elems: &[PauliString]) -> Result<PauliString> {
    let first = elems.first().ok_or(Error::Empty("anti-commuting set"))?;
    if elems.len() % 2 == 1 {
        return Err(Error::OddCompletion(elems.len()));
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if !elems[i].anticommutes(&elems[j])? {
                return Err(Error::NotAnticommuting(i, j));
            }
        }
    }
    let product = PauliString::product(first.num_qubits(), elems)?;
    Ok(product.hermitized().0)
}

/// Concrete Pauli string of a monomial over the given generators: `i^p Π g_t^{e_t}`.
fn evaluate(monomial: &Monomial, gens: &[PauliString], n: usize) -> Result<PauliString> {
    let product = PauliString::product(n, monomial.exponents.ones().map(|t| &gens[t]))?;
    Ok(product.times_i_pow(monomial.phase))
}

/// Builds a maximal anti-commuting subset of `⟨gens⟩` of size `2s + 1`.
///
/// The group is split into `s` anti-commuting pairs `(z_1, z_2), …, (z_{2s-1}, z_{2s})`.
/// The set is `x_1 = z_1`, `x_2 = z_2`, then for `i ≥ 3` the prefix product of all
/// complete pairs before `z_i` times `z_i`, and finally the product of all `x_i`.
pub fn max_anticommuting_set(gens: &[PauliString]) -> Result<AnticommutingSet> {
    let n = gens
        .first()
        .ok_or(Error::Empty("generator list"))?
        .num_qubits();
    for (index, g) in gens.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(Error::LengthMismatch {
                left: g.num_qubits(),
                right: n,
            });
        }
        if !g.is_hermitian() {
            return Err(Error::NotHermitian {
                index,
                pauli: g.to_string(),
            });
        }
    }

    let mut basis = RowBasis::new(2 * n);
    let independent: Vec<PauliString> = gens
        .iter()
        .filter(|g| basis.insert(&g.symplectic_row()))
        .cloned()
        .collect();
    let singleton = || AnticommutingSet {
        elements: vec![gens[0].clone()],
        source_group_gens: gens.to_vec(),
        s: 0,
    };
    if independent.is_empty() {
        return Ok(singleton());
    }

    let m = independent.len();
    let mut edges = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if independent[a].anticommutes(&independent[b])? {
                edges.push((a, b));
            }
        }
    }
    let k = independent.iter().map(PauliString::square_sign).collect();
    let spec = QcaSpec::from_edges(m, &edges, k)?;
    let dec = run_splitting(&spec, &PivotPolicy::LowestPair)?;
    let s = dec.s();
    if s == 0 {
        return Ok(singleton());
    }

    let z: Vec<PauliString> = dec
        .pairs
        .iter()
        .flat_map(|p| [&p.gamma, &p.delta])
        .map(|mono| evaluate(mono, &independent, n))
        .collect::<Result<_>>()?;

    let mut elements = Vec::with_capacity(2 * s + 1);
    let mut prefix = PauliString::identity(n);
    for (idx, zi) in z.iter().enumerate() {
        // 1-based position i = idx + 1; prefix covers all complete pairs before z_i.
        if idx >= 2 && idx % 2 == 0 {
            prefix = prefix.mul(&z[idx - 2])?.mul(&z[idx - 1])?;
        }
        elements.push(prefix.mul(zi)?.hermitized().0);
    }
    elements.push(completion_monomial(&elements)?);

    let set = AnticommutingSet {
        elements,
        source_group_gens: gens.to_vec(),
        s,
    };
    debug_assert!(set.check_invariants().is_ok());
    Ok(set)
}
