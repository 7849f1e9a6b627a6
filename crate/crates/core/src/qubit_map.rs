//! Concrete qubit realizations of a Wedderburn decomposition.
//!
//! Each `[γ, δ]` factor becomes a qubit carrying `X` and `Z` (with a factor `i` where
//! the square is `-1`). Central `[β]` factors become either a scalar `±1`/`±i`
//! (scalar mode) or a `Z` on an extra qubit (independent mode). The original generators
//! are then recovered by inverting the change of generators with exact phases.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, RowBasis};
use crate::pauli::{Letter, PauliString};
use crate::qca::{
    monomial_mul, run_splitting, Monomial, PivotPolicy, QcaSpec, WedderburnDecomposition,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Central factors act as scalars; only the pair qubits are emitted.
    Scalar,
    /// Central factors act as `Z` on extra leading qubits, keeping generators independent.
    Independent,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scalar" => Ok(Mode::Scalar),
            "independent" => Ok(Mode::Independent),
            other => Err(Error::Invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// `i^{(1-sq)/2}`: the phase power that makes a Hermitian letter square to `sq`.
fn square_phase(sq: i8) -> u8 {
    if sq == 1 {
        0
    } else {
        1
    }
}

/// Qubit count of the realization for a decomposition with `s` pairs and `r` centrals.
/// Scalar mode always keeps at least one qubit so that images remain Pauli strings.
pub fn qubit_count(mode: Mode, s: usize, r: usize) -> usize {
    match mode {
        Mode::Scalar => s.max(1),
        Mode::Independent => (s + r).max(1),
    }
}

/// Images of the decomposition generators, in the row order of `dec.transform`.
///
/// Independent mode puts central `ℓ` on qubit `ℓ` and pair `j` on qubit `r + j`.
/// Scalar mode puts pair `j` on qubit `j` and sends central `ℓ` to
/// `sign_branch[ℓ] · i^{(1-b_ℓ)/2} · identity`.
pub fn assign_irreps(
    dec: &WedderburnDecomposition,
    mode: Mode,
    sign_branch: &[i8],
) -> Result<Vec<PauliString>> {
    let (s, r) = (dec.s(), dec.r());
    let expected = match mode {
        Mode::Scalar => r,
        Mode::Independent => 0,
    };
    if sign_branch.len() != expected {
        return Err(Error::SignBranchLength {
            expected,
            got: sign_branch.len(),
        });
    }
    if let Some(bad) = sign_branch.iter().find(|&&b| b != 1 && b != -1) {
        return Err(Error::Invalid(format!("sign branch entry {bad} is not ±1")));
    }
    let n = qubit_count(mode, s, r);
    let pair_offset = match mode {
        Mode::Scalar => 0,
        Mode::Independent => r,
    };
    let mut images = Vec::with_capacity(2 * s + r);
    for (j, pair) in dec.pairs.iter().enumerate() {
        let q = pair_offset + j;
        images.push(PauliString::single(n, q, Letter::X).times_i_pow(square_phase(pair.c)));
        images.push(PauliString::single(n, q, Letter::Z).times_i_pow(square_phase(pair.d)));
    }
    for (l, central) in dec.centrals.iter().enumerate() {
        let image = match mode {
            Mode::Independent => PauliString::single(n, l, Letter::Z),
            Mode::Scalar => {
                let base = PauliString::identity(n);
                if sign_branch[l] == -1 {
                    base.negate()
                } else {
                    base
                }
            }
        };
        images.push(image.times_i_pow(square_phase(central.b)));
    }
    Ok(images)
}

/// Inverse of the change-of-generators matrix over GF(2).
pub fn invert_relations(transform: &BitMatrix) -> Result<BitMatrix> {
    transform.inverse().ok_or(Error::Singular)
}

/// Assignment of each original generator to a Hermitian Pauli string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitMapping {
    pub spec: QcaSpec,
    pub mode: Mode,
    /// Number of `[γ, δ]` factors.
    pub s: usize,
    /// Number of central factors.
    pub r: usize,
    pub sign_branch: Vec<i8>,
    /// Hermitian images of `x_1 … x_m`.
    pub images: Vec<PauliString>,
    /// Generators whose exact image had phase `±i` and was multiplied by `i`.
    pub hermitized: Vec<usize>,
    /// Row `i` lists which decomposition generators multiply to `x_i`.
    pub inverse_transform: BitMatrix,
    /// 0-based pivot pairs used by the splitting.
    pub pivots: Vec<(usize, usize)>,
}

impl QubitMapping {
    pub fn num_qubits(&self) -> usize {
        self.images.first().map_or(0, PauliString::num_qubits)
    }

    /// Image of `x_i` before Hermitization. This is the operator that satisfies
    /// `x_i² = k_i` exactly.
    pub fn exact_image(&self, i: usize) -> PauliString {
        if self.hermitized.contains(&i) {
            self.images[i].times_i_pow(3)
        } else {
            self.images[i].clone()
        }
    }

    pub fn exact_images(&self) -> Vec<PauliString> {
        (0..self.images.len())
            .map(|i| self.exact_image(i))
            .collect()
    }

    /// Checks the relation invariants directly on the Pauli strings.
    pub fn check_invariants(&self) -> Result<()> {
        let m = self.spec.num_generators();
        if self.images.len() != m {
            return Err(Error::Invalid(format!(
                "{} images for {m} generators",
                self.images.len()
            )));
        }
        let exact = self.exact_images();
        for i in 0..m {
            if !self.images[i].is_hermitian() {
                return Err(Error::NotHermitian {
                    index: i,
                    pauli: self.images[i].to_string(),
                });
            }
            if exact[i].square_sign() != self.spec.k(i) {
                return Err(Error::Invalid(format!(
                    "image of x{} squares wrongly",
                    i + 1
                )));
            }
            for j in i + 1..m {
                if exact[i].anticommutes(&exact[j])? != self.spec.chi(i, j) {
                    return Err(Error::Invalid(format!(
                        "images of x{} and x{} have the wrong commutation",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Realizes a decomposition on qubits. `sign_branch = None` picks `+1` for every central in
/// scalar mode.
pub fn mapping_from_decomposition(
    dec: &WedderburnDecomposition,
    mode: Mode,
    sign_branch: Option<&[i8]>,
) -> Result<QubitMapping> {
    let spec = &dec.spec;
    let m = spec.num_generators();
    let default_branch = match mode {
        Mode::Scalar => vec![1; dec.r()],
        Mode::Independent => Vec::new(),
    };
    let branch = sign_branch.unwrap_or(&default_branch);
    let irreps = assign_irreps(dec, mode, branch)?;
    let inverse_transform = invert_relations(&dec.transform)?;
    let generators = dec.generators();
    let n = qubit_count(mode, dec.s(), dec.r());

    let mut images = Vec::with_capacity(m);
    let mut hermitized = Vec::new();
    for i in 0..m {
        let row = inverse_transform.row(i);
        let mut product = Monomial::one(m);
        let mut image = PauliString::identity(n);
        for t in row.ones() {
            product = monomial_mul(spec, &product, generators[t])?;
            image = image.mul(&irreps[t])?;
        }
        if product.exponents != spec.generator(i).exponents {
            return Err(Error::Singular);
        }
        // product = i^q x_i, so x_i = i^{-q} · product.
        let exact = image.times_i_pow(4 - product.phase);
        let (image, flipped) = exact.hermitized();
        if flipped {
            hermitized.push(i);
        }
        images.push(image);
    }
    let mapping = QubitMapping {
        spec: spec.clone(),
        mode,
        s: dec.s(),
        r: dec.r(),
        sign_branch: branch.to_vec(),
        images,
        hermitized,
        inverse_transform,
        pivots: dec.pivot_log.clone(),
    };
    debug_assert!(mapping.check_invariants().is_ok());
    Ok(mapping)
}

/// Splitting, irrep assignment, and inversion in one call.
pub fn qca_to_qubits(
    spec: &QcaSpec,
    policy: &PivotPolicy,
    mode: Mode,
    sign_branch: Option<&[i8]>,
) -> Result<QubitMapping> {
    let dec = run_splitting(spec, policy)?;
    mapping_from_decomposition(&dec, mode, sign_branch)
}

/// Realization of `2N` Majorana operators via the complete anti-commutation graph,
/// splitting pairs `(1,2), (3,4), …` in order.
pub fn jordan_wigner(modes: usize) -> Result<QubitMapping> {
    if modes == 0 {
        return Err(Error::Invalid(
            "Jordan-Wigner needs at least one mode".into(),
        ));
    }
    let spec = QcaSpec::complete(2 * modes)?;
    let pivots = (0..modes).map(|j| (2 * j, 2 * j + 1)).collect();
    qca_to_qubits(
        &spec,
        &PivotPolicy::Explicit(pivots),
        Mode::Independent,
        None,
    )
}

/// How an input generator is expressed through the independent generators:
/// `input = i^phase · Π_{t ∈ factors} input_t` (ascending `t`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub phase: u8,
    pub factors: Vec<usize>,
}

/// A product- and dagger-preserving map between Pauli algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarIsomorphism {
    pub domain: Vec<PauliString>,
    pub images: Vec<PauliString>,
    /// Per input, its expression through the independent inputs.
    pub phase_table: Vec<Expression>,
    /// Indices of the greedily chosen independent inputs.
    pub independent: Vec<usize>,
    /// Realization of the independent inputs' relations, when there is at least one.
    pub mapping: Option<QubitMapping>,
    basis: RowBasis,
}

impl StarIsomorphism {
    /// A map given only by its tables. `apply` works when the domain rows are independent
    /// up to the recorded dependencies; this constructor treats every entry as independent
    /// as far as they are, and derives the rest.
    pub fn from_tables(domain: Vec<PauliString>, images: Vec<PauliString>) -> Result<Self> {
        if domain.len() != images.len() {
            return Err(Error::Invalid(format!(
                "{} domain generators but {} images",
                domain.len(),
                images.len()
            )));
        }
        let n = domain.first().ok_or(Error::Empty("domain"))?.num_qubits();
        let (basis, independent, phase_table) = expressions(&domain, n)?;
        Ok(Self {
            domain,
            images,
            phase_table,
            independent,
            mapping: None,
            basis,
        })
    }

    pub fn domain_qubits(&self) -> usize {
        self.domain[0].num_qubits()
    }

    pub fn image_qubits(&self) -> usize {
        self.images[0].num_qubits()
    }

    /// Image of an arbitrary element of the domain group, or `None` if it lies outside.
    pub fn apply(&self, p: &PauliString) -> Result<Option<PauliString>> {
        let n = self.domain_qubits();
        if p.num_qubits() != n {
            return Err(Error::LengthMismatch {
                left: p.num_qubits(),
                right: n,
            });
        }
        let Some(combo) = self.basis.express(&p.symplectic_row()) else {
            return Ok(None);
        };
        let mut pre = PauliString::identity(n);
        let mut image = PauliString::identity(self.image_qubits());
        for c in combo {
            let t = self.independent[c];
            pre = pre.mul(&self.domain[t])?;
            image = image.mul(&self.images[t])?;
        }
        let omega = (p.phase() + 4 - pre.phase()) % 4;
        Ok(Some(image.times_i_pow(omega)))
    }
}

type Expressions = (RowBasis, Vec<usize>, Vec<Expression>);

/// Greedy GF(2) basis of the symplectic rows by ascending index, and each input's
/// exact expression through it.
fn expressions(gens: &[PauliString], n: usize) -> Result<Expressions> {
    let mut basis = RowBasis::new(2 * n);
    let mut independent = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.num_qubits() != n {
            return Err(Error::LengthMismatch {
                left: g.num_qubits(),
                right: n,
            });
        }
        if basis.insert(&g.symplectic_row()) {
            independent.push(i);
        }
    }
    let table = gens
        .iter()
        .map(|g| {
            let combo = basis
                .express(&g.symplectic_row())
                .expect("row is in its own span");
            let factors: Vec<usize> = combo.into_iter().map(|c| independent[c]).collect();
            let pre = PauliString::product(n, factors.iter().map(|&t| &gens[t]))?;
            Ok(Expression {
                phase: (g.phase() + 4 - pre.phase()) % 4,
                factors,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((basis, independent, table))
}

/// Star-isomorphism of the algebra generated by Hermitian Pauli strings onto its
/// Wedderburn form: pairs become `X`/`Z` on a qubit, central elements `Z` on leading
/// qubits. Dependent inputs receive the images forced by their exact expression.
pub fn pauli_to_pauli(gens: &[PauliString]) -> Result<StarIsomorphism> {
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
    let (basis, independent, phase_table) = expressions(gens, n)?;

    let (mapping, independent_images) = if independent.is_empty() {
        (None, Vec::new())
    } else {
        let m = independent.len();
        let mut edges = Vec::new();
        for a in 0..m {
            for b in a + 1..m {
                if gens[independent[a]].anticommutes(&gens[independent[b]])? {
                    edges.push((a, b));
                }
            }
        }
        let k = independent.iter().map(|&t| gens[t].square_sign()).collect();
        let spec = QcaSpec::from_edges(m, &edges, k)?;
        let mapping = qca_to_qubits(&spec, &PivotPolicy::LowestPair, Mode::Independent, None)?;
        let images = mapping.exact_images();
        (Some(mapping), images)
    };

    let image_n = independent_images
        .first()
        .map_or(1, PauliString::num_qubits);
    let images = phase_table
        .iter()
        .map(|expr| {
            let mut image = PauliString::identity(image_n);
            for t in &expr.factors {
                let pos = independent
                    .iter()
                    .position(|i| i == t)
                    .expect("factor is independent");
                image = image.mul(&independent_images[pos])?;
            }
            Ok(image.times_i_pow(expr.phase))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(StarIsomorphism {
        domain: gens.to_vec(),
        images,
        phase_table,
        independent,
        mapping,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn pentagon() -> QcaSpec {
        QcaSpec::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)], vec![1; 5]).unwrap()
    }

    fn assert_up_to_sign(images: &[PauliString], expected: &[&str]) {
        assert_eq!(images.len(), expected.len());
        for (img, e) in images.iter().zip(expected) {
            assert!(img.eq_up_to_sign(&p(e)), "{img} vs {e}");
        }
    }

    #[test]
    fn pentagon_scalar_irreps() {
        let dec = run_splitting(&pentagon(), &PivotPolicy::Explicit(vec![(0, 1), (2, 3)])).unwrap();
        let irreps = assign_irreps(&dec, Mode::Scalar, &[1]).unwrap();
        let shown: Vec<String> = irreps.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["XI", "ZI", "IX", "IZ", "iII"]);
        let minus = assign_irreps(&dec, Mode::Scalar, &[-1]).unwrap();
        assert_eq!(minus[4].to_string(), "-iII");
    }

    #[test]
    fn sign_branch_length_is_checked() {
        let dec = run_splitting(&pentagon(), &PivotPolicy::LowestPair).unwrap();
        assert!(matches!(
            assign_irreps(&dec, Mode::Scalar, &[]),
            Err(Error::SignBranchLength {
                expected: 1,
                got: 0
            })
        ));
        assert!(assign_irreps(&dec, Mode::Independent, &[1]).is_err());
    }

    #[test]
    fn central_in_independent_mode_is_z_on_fresh_qubit() {
        let spec = QcaSpec::from_edges(3, &[(0, 1)], vec![1; 3]).unwrap();
        let dec = run_splitting(&spec, &PivotPolicy::LowestPair).unwrap();
        let irreps = assign_irreps(&dec, Mode::Independent, &[]).unwrap();
        let shown: Vec<String> = irreps.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["IX", "IZ", "ZI"]);
    }

    #[test]
    fn invert_identity_and_pentagon() {
        assert_eq!(
            invert_relations(&BitMatrix::identity(4)).unwrap(),
            BitMatrix::identity(4)
        );
        let dec = run_splitting(&pentagon(), &PivotPolicy::Explicit(vec![(0, 1), (2, 3)])).unwrap();
        let inv = invert_relations(&dec.transform).unwrap();
        assert_eq!(inv.row(2).to_string(), "10100");
        assert_eq!(inv.row(4).to_string(), "01111");
        let singular = BitMatrix::zeros(2, 2);
        assert_eq!(invert_relations(&singular), Err(Error::Singular));
    }

    #[test]
    fn pentagon_scalar_mapping() {
        let policy = PivotPolicy::Explicit(vec![(0, 1), (2, 3)]);
        let map = qca_to_qubits(&pentagon(), &policy, Mode::Scalar, Some(&[1])).unwrap();
        assert_up_to_sign(&map.images, &["XI", "ZI", "XX", "IZ", "ZY"]);
        assert!(map.hermitized.is_empty());
        map.check_invariants().unwrap();
    }

    #[test]
    fn pentagon_independent_mapping() {
        let policy = PivotPolicy::Explicit(vec![(0, 1), (2, 3)]);
        let map = qca_to_qubits(&pentagon(), &policy, Mode::Independent, None).unwrap();
        assert_up_to_sign(&map.images, &["IXI", "IZI", "IXX", "IIZ", "ZZY"]);
        map.check_invariants().unwrap();
    }

    #[test]
    fn edgeless_independent_is_diagonal() {
        let spec = QcaSpec::from_edges(3, &[], vec![1; 3]).unwrap();
        let map = qca_to_qubits(&spec, &PivotPolicy::LowestPair, Mode::Independent, None).unwrap();
        let shown: Vec<String> = map.images.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["ZII", "IZI", "IIZ"]);
    }

    #[test]
    fn negative_squares_get_hermitized() {
        let spec = QcaSpec::from_edges(2, &[(0, 1)], vec![-1, 1]).unwrap();
        let map = qca_to_qubits(&spec, &PivotPolicy::LowestPair, Mode::Scalar, None).unwrap();
        assert_eq!(map.hermitized, vec![0]);
        assert!(map.images.iter().all(PauliString::is_hermitian));
        assert_eq!(map.exact_image(0).square_sign(), -1);
        map.check_invariants().unwrap();
    }

    #[test]
    fn jordan_wigner_small() {
        assert_up_to_sign(&jordan_wigner(1).unwrap().images, &["X", "Z"]);
        assert_up_to_sign(&jordan_wigner(2).unwrap().images, &["XI", "ZI", "YX", "YZ"]);
        assert!(jordan_wigner(0).is_err());
    }

    #[test]
    fn jordan_wigner_weights() {
        let map = jordan_wigner(4).unwrap();
        for j in 0..4 {
            assert_eq!(map.images[2 * j].weight(), j + 1);
        }
    }

    #[test]
    fn pauli_group_example() {
        let gens: Vec<_> = ["XXI", "XIX", "ZZI", "ZIZ"].iter().map(|s| p(s)).collect();
        let iso = pauli_to_pauli(&gens).unwrap();
        assert_up_to_sign(&iso.images, &["XI", "IX", "IZ", "ZI"]);
    }

    #[test]
    fn single_generator_maps_to_z() {
        let iso = pauli_to_pauli(&[p("Z")]).unwrap();
        assert_eq!(iso.images, vec![p("Z")]);
    }

    #[test]
    fn dependent_generator_gets_consistent_image() {
        let gens: Vec<_> = ["XZI", "ZXI", "XIZ", "ZIX", "IXZ", "IZX"]
            .iter()
            .map(|s| p(s))
            .collect();
        let iso = pauli_to_pauli(&gens).unwrap();
        assert_eq!(iso.independent, vec![0, 1, 2, 3, 4]);
        let expr = &iso.phase_table[5];
        assert_eq!(expr.factors, vec![0, 1, 2, 3, 4]);
        for (g, img) in gens.iter().zip(&iso.images) {
            assert_eq!(iso.apply(g).unwrap().as_ref(), Some(img));
        }
    }

    #[test]
    fn pauli_to_pauli_rejects_bad_input() {
        assert!(matches!(pauli_to_pauli(&[]), Err(Error::Empty(_))));
        assert!(matches!(
            pauli_to_pauli(&[p("iX")]),
            Err(Error::NotHermitian { .. })
        ));
        assert!(pauli_to_pauli(&[p("X"), p("XX")]).is_err());
    }
}
