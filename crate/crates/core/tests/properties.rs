use proptest::prelude::*;

use qcmap_core::schema::DecompositionJson;
use qcmap_core::verify::{check_star_isomorphism, pauli_matrix, random_span_element};
use qcmap_core::{
    block_structure, check_qca_relations, dense_generators, jordan_wigner,
    mapping_from_decomposition, monomial_chi, pauli_to_pauli, run_splitting, split_step,
    ExactMatrix, Letter, Mode, PauliString, PivotPolicy, QcaSpec, WedderburnDecomposition,
};

const LETTERS: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

fn pauli(n: usize) -> impl Strategy<Value = PauliString> {
    (prop::collection::vec(0..4usize, n), 0..4u8).prop_map(|(codes, phase)| {
        PauliString::from_letters(
            phase,
            &codes.iter().map(|&c| LETTERS[c]).collect::<Vec<_>>(),
        )
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = PauliString> {
    pauli(n).prop_map(|p| p.unsigned())
}

fn triple() -> impl Strategy<Value = (PauliString, PauliString, PauliString)> {
    (1..=4usize).prop_flat_map(|n| (pauli(n), pauli(n), pauli(n)))
}

fn spec() -> impl Strategy<Value = QcaSpec> {
    (1..=10usize)
        .prop_flat_map(|m| {
            (
                Just(m),
                prop::collection::vec(any::<bool>(), m * (m - 1) / 2),
                prop::collection::vec(prop::bool::ANY, m),
            )
        })
        .prop_map(|(m, upper, signs)| {
            let pairs = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v)));
            let edges: Vec<_> = pairs
                .zip(upper)
                .filter(|(_, e)| *e)
                .map(|(p, _)| p)
                .collect();
            let k = signs.into_iter().map(|s| if s { -1 } else { 1 }).collect();
            QcaSpec::from_edges(m, &edges, k).unwrap()
        })
}

fn generator_list(max_n: usize, max_g: usize) -> impl Strategy<Value = Vec<PauliString>> {
    (1..=max_n, 1..=max_g).prop_flat_map(|(n, g)| prop::collection::vec(hermitian(n), g))
}

proptest! {
    #[test]
    fn mul_is_associative_and_matches_dense((a, b, c) in triple()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(pauli_matrix(&ab), pauli_matrix(&a).mul(&pauli_matrix(&b)));
    }

    #[test]
    fn commutation_is_bilinear((a, b, c) in triple()) {
        let ab = a.mul(&b).unwrap();
        let lhs = ab.anticommutes(&c).unwrap();
        let rhs = a.anticommutes(&c).unwrap() ^ b.anticommutes(&c).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.anticommutes(&b).unwrap(), b.anticommutes(&a).unwrap());
    }

    #[test]
    fn commutation_matches_dense((a, b, _c) in triple()) {
        let (ma, mb) = (pauli_matrix(&a), pauli_matrix(&b));
        let sign = if a.anticommutes(&b).unwrap() { -1 } else { 1 };
        prop_assert_eq!(ma.mul(&mb), mb.mul(&ma).scale(num_complex::Complex::new(sign, 0)));
    }

    #[test]
    fn square_sign_matches_dense(p in (1..=4usize).prop_flat_map(pauli)) {
        let m = pauli_matrix(&p);
        prop_assert_eq!(m.mul(&m).identity_sign(), Some(p.square_sign()));
        prop_assert_eq!(p.is_hermitian(), m.is_hermitian());
        prop_assert!(m.is_unitary());
    }

    #[test]
    fn hermitized_is_hermitian_and_parallel(p in (1..=4usize).prop_flat_map(pauli)) {
        let (h, _) = p.hermitized();
        prop_assert!(h.is_hermitian());
        prop_assert!(h.eq_up_to_phase(&p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn splitting_invariants(spec in spec()) {
        let m = spec.num_generators();
        let dec = run_splitting(&spec, &PivotPolicy::LowestPair).unwrap();
        prop_assert_eq!(dec.r() + 2 * dec.s(), m);
        prop_assert!(dec.transform.inverse().is_some());
        dec.check_invariants().unwrap();
        // the center commutes with every original generator
        for central in &dec.centrals {
            for i in 0..m {
                prop_assert!(!monomial_chi(&spec, &central.beta, &spec.generator(i)).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn decoupling_is_idempotent(spec in spec()) {
        let m = spec.num_generators();
        let start: Vec<_> = (0..m).map(|i| spec.generator(i)).collect();
        let pivot = (0..m)
            .flat_map(|u| (u + 1..m).map(move |v| (u, v)))
            .find(|&(u, v)| spec.chi(u, v));
        if let Some((u, v)) = pivot {
            let once = split_step(&spec, &start, (u, v)).unwrap();
            for t in (0..m).filter(|&t| t != u && t != v) {
                prop_assert!(!monomial_chi(&spec, &once[u], &once[t]).unwrap());
                prop_assert!(!monomial_chi(&spec, &once[v], &once[t]).unwrap());
            }
            prop_assert_eq!(split_step(&spec, &once, (u, v)).unwrap(), once);
        }
    }

    #[test]
    fn mappings_pass_the_dense_oracle(spec in spec(), scalar in any::<bool>()) {
        let dec = run_splitting(&spec, &PivotPolicy::LowestPair).unwrap();
        let mode = if scalar { Mode::Scalar } else { Mode::Independent };
        let mapping = mapping_from_decomposition(&dec, mode, None).unwrap();
        mapping.check_invariants().unwrap();
        let report = check_qca_relations(&spec, &dense_generators(&mapping).unwrap()).unwrap();
        prop_assert!(report.passed, "{:?}", report.violations);
    }

    #[test]
    fn decomposition_json_roundtrips(spec in spec()) {
        let dec = run_splitting(&spec, &PivotPolicy::LowestPair).unwrap();
        let json = DecompositionJson::from(&dec);
        let text = serde_json::to_string(&json).unwrap();
        let back: DecompositionJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(WedderburnDecomposition::try_from(&back).unwrap(), dec);
    }

    #[test]
    fn pauli_maps_are_star_isomorphisms(gens in generator_list(4, 6)) {
        let iso = pauli_to_pauli(&gens).unwrap();
        let report = check_star_isomorphism(&iso, 4, 1).unwrap();
        prop_assert!(report.passed, "{:?}", report.violations);
        // products of inputs map to products of images
        let n = gens[0].num_qubits();
        let whole = PauliString::product(n, &gens).unwrap();
        let image = PauliString::product(iso.image_qubits(), &iso.images).unwrap();
        prop_assert_eq!(iso.apply(&whole).unwrap(), Some(image));
    }

    #[test]
    fn block_certificates_are_sound(images in generator_list(6, 5), seed in any::<u64>()) {
        let cert = block_structure(&images).unwrap();
        prop_assert!(cert.check_images(&images).passed);
        let element = random_span_element(&images, seed).unwrap();
        prop_assert!(element.is_hermitian());
        prop_assert!(cert.off_block_entries(&element).is_empty());
    }
}

#[test]
fn jordan_wigner_invariants() {
    for modes in 1..=8 {
        let mapping = jordan_wigner(modes).unwrap();
        let images = &mapping.images;
        assert_eq!(mapping.num_qubits(), modes);
        assert!(mapping.hermitized.is_empty());
        for (k, m) in images.iter().enumerate() {
            assert!(m.is_hermitian());
            assert_eq!(m.square_sign(), 1);
            assert_eq!(m.weight(), k / 2 + 1);
            for other in &images[k + 1..] {
                assert!(m.anticommutes(other).unwrap());
            }
        }
    }
    // dense anti-commutators vanish
    let rep: Vec<ExactMatrix> = jordan_wigner(3)
        .unwrap()
        .images
        .iter()
        .map(pauli_matrix)
        .collect();
    for (i, a) in rep.iter().enumerate() {
        for b in &rep[i + 1..] {
            assert!(a.mul(b).add(&b.mul(a)).entries().next().is_none());
        }
    }
}
