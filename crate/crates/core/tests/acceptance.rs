//! Acceptance suite: one test per criterion, each printing its own
//! pass/fail line via the harness.
//!
//! Expected states and matrices are frozen literals, not recomputed through
//! the code under test. Phases are encoded as '+', '-', 'i' (+i), 'j' (-i).

use num_complex::Complex64;
use qudit_core::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn phase(code: char) -> Complex64 {
    match code {
        '+' => c(1.0, 0.0),
        '-' => c(-1.0, 0.0),
        'i' => c(0.0, 1.0),
        'j' => c(0.0, -1.0),
        _ => panic!("unknown phase code {code}"),
    }
}

/// Builds `scale * sum phase|digits>` over two radix-`radix` wires.
fn ket_sum(radix: usize, scale: f64, terms: &[(char, &str)]) -> QuditState {
    let mut amps = vec![Complex64::ZERO; radix * radix];
    for &(code, digits) in terms {
        let label = DigitString::parse(radix, digits).unwrap();
        amps[label.linear_index()] += phase(code) * scale;
    }
    QuditState::new(radix, 2, amps, Tolerance::default()).unwrap()
}

fn generator(radix: usize, pairs: &[(usize, usize)]) -> Circuit {
    let spec =
        GeneratorSpec::new(pairs.iter().map(|&(h, k)| GateParams::new(h, k)).collect()).unwrap();
    entanglement_generator(radix, &spec).unwrap()
}

fn assert_state_eq(actual: &QuditState, expected: &QuditState, eps: f64, context: &str) {
    let tol = Tolerance::new(eps).unwrap();
    assert!(
        actual.approx_eq(expected, tol).unwrap(),
        "{context}: got {actual}, expected {expected}"
    );
}

/// Radix-4 output table of the three staged generators, 16 rows each:
/// single gate A(3,1), pair A(2,2) A(3,1), full A(1,3) A(2,2) A(3,1).
const TABLE_A31: [[(char, &str); 4]; 16] = [
    [('+', "00"), ('+', "10"), ('+', "20"), ('+', "31")],
    [('+', "01"), ('+', "11"), ('+', "21"), ('+', "32")],
    [('+', "02"), ('+', "12"), ('+', "22"), ('+', "33")],
    [('+', "03"), ('+', "13"), ('+', "23"), ('+', "30")],
    [('+', "00"), ('i', "10"), ('-', "20"), ('j', "31")],
    [('+', "01"), ('i', "11"), ('-', "21"), ('j', "32")],
    [('+', "02"), ('i', "12"), ('-', "22"), ('j', "33")],
    [('+', "03"), ('i', "13"), ('-', "23"), ('j', "30")],
    [('+', "00"), ('-', "10"), ('+', "20"), ('-', "31")],
    [('+', "01"), ('-', "11"), ('+', "21"), ('-', "32")],
    [('+', "02"), ('-', "12"), ('+', "22"), ('-', "33")],
    [('+', "03"), ('-', "13"), ('+', "23"), ('-', "30")],
    [('+', "00"), ('j', "10"), ('-', "20"), ('i', "31")],
    [('+', "01"), ('j', "11"), ('-', "21"), ('i', "32")],
    [('+', "02"), ('j', "12"), ('-', "22"), ('i', "33")],
    [('+', "03"), ('j', "13"), ('-', "23"), ('i', "30")],
];

const TABLE_A22_A31: [[(char, &str); 4]; 16] = [
    [('+', "00"), ('+', "10"), ('+', "22"), ('+', "31")],
    [('+', "01"), ('+', "11"), ('+', "23"), ('+', "32")],
    [('+', "02"), ('+', "12"), ('+', "20"), ('+', "33")],
    [('+', "03"), ('+', "13"), ('+', "21"), ('+', "30")],
    [('+', "00"), ('i', "10"), ('-', "22"), ('j', "31")],
    [('+', "01"), ('i', "11"), ('-', "23"), ('j', "32")],
    [('+', "02"), ('i', "12"), ('-', "20"), ('j', "33")],
    [('+', "03"), ('i', "13"), ('-', "21"), ('j', "30")],
    [('+', "00"), ('-', "10"), ('+', "22"), ('-', "31")],
    [('+', "01"), ('-', "11"), ('+', "23"), ('-', "32")],
    [('+', "02"), ('-', "12"), ('+', "20"), ('-', "33")],
    [('+', "03"), ('-', "13"), ('+', "21"), ('-', "30")],
    [('+', "00"), ('j', "10"), ('-', "22"), ('i', "31")],
    [('+', "01"), ('j', "11"), ('-', "23"), ('i', "32")],
    [('+', "02"), ('j', "12"), ('-', "20"), ('i', "33")],
    [('+', "03"), ('j', "13"), ('-', "21"), ('i', "30")],
];

const TABLE_FULL: [[(char, &str); 4]; 16] = [
    [('+', "00"), ('+', "13"), ('+', "22"), ('+', "31")],
    [('+', "01"), ('+', "10"), ('+', "23"), ('+', "32")],
    [('+', "02"), ('+', "11"), ('+', "20"), ('+', "33")],
    [('+', "03"), ('+', "12"), ('+', "21"), ('+', "30")],
    [('+', "00"), ('i', "13"), ('-', "22"), ('j', "31")],
    [('+', "01"), ('i', "10"), ('-', "23"), ('j', "32")],
    [('+', "02"), ('i', "11"), ('-', "20"), ('j', "33")],
    [('+', "03"), ('i', "12"), ('-', "21"), ('j', "30")],
    [('+', "00"), ('-', "13"), ('+', "22"), ('-', "31")],
    [('+', "01"), ('-', "10"), ('+', "23"), ('-', "32")],
    [('+', "02"), ('-', "11"), ('+', "20"), ('-', "33")],
    [('+', "03"), ('-', "12"), ('+', "21"), ('-', "30")],
    [('+', "00"), ('j', "13"), ('-', "22"), ('i', "31")],
    [('+', "01"), ('j', "10"), ('-', "23"), ('i', "32")],
    [('+', "02"), ('j', "11"), ('-', "20"), ('i', "33")],
    [('+', "03"), ('j', "12"), ('-', "21"), ('i', "30")],
];

#[test]
fn criterion_1_chrestenson_fidelity() {
    // Radix-4 transform, entrywise.
    let c4 = OperatorMatrix::chrestenson(4).unwrap();
    let rows: [[Complex64; 4]; 4] = [
        [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)],
        [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)],
        [c(1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        [c(1.0, 0.0), c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0)],
    ];
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            assert!(
                (c4.entry(i, j) - z * 0.5).norm() <= 1e-12,
                "C4 entry ({i},{j})"
            );
        }
    }

    // Radix-2 degenerate case: the Hadamard matrix.
    let h = OperatorMatrix::chrestenson(2).unwrap();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for (idx, expected) in [s, s, s, -s].iter().enumerate() {
        assert!((h.entry(idx / 2, idx % 2) - c(*expected, 0.0)).norm() <= 1e-12);
    }

    // Worked example: C4|0> is the uniform superposition with weight 1/2.
    let out = c4
        .apply(&QuditState::basis_digits(4, &[0]).unwrap())
        .unwrap();
    for a in out.amplitudes() {
        assert!((a - c(0.5, 0.0)).norm() <= 1e-12);
    }
}

#[test]
fn criterion_2_operator_fidelity() {
    // A(3,1) at radix 4: identity off the h=3 block, the +1 shift inside it.
    let a31 = OperatorMatrix::controlled_mod_add(4, GateParams::new(3, 1)).unwrap();
    let mut expected_ones: Vec<(usize, usize)> = (0..12).map(|i| (i, i)).collect();
    expected_ones.extend([(12, 15), (13, 12), (14, 13), (15, 14)]);
    for i in 0..16 {
        for j in 0..16 {
            let expected = if expected_ones.contains(&(i, j)) {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            assert_eq!(a31.entry(i, j), expected, "A31 entry ({i},{j})");
        }
    }

    // The three nontrivial radix-4 shift permutations, exactly.
    let shifts: [&[(usize, usize)]; 3] = [
        &[(0, 3), (1, 0), (2, 1), (3, 2)],
        &[(0, 2), (1, 3), (2, 0), (3, 1)],
        &[(0, 1), (1, 2), (2, 3), (3, 0)],
    ];
    for (k, ones) in shifts.iter().enumerate() {
        let m = OperatorMatrix::mod_add(4, k + 1).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if ones.contains(&(i, j)) {
                    Complex64::ONE
                } else {
                    Complex64::ZERO
                };
                assert_eq!(m.entry(i, j), expected, "M{} entry ({i},{j})", k + 1);
            }
        }
    }

    // Unitarity for every factory output, radix 2 through 6.
    for r in 2..=6usize {
        assert!(
            OperatorMatrix::chrestenson(r)
                .unwrap()
                .max_unitarity_deviation()
                <= 1e-12
        );
        for k in 0..r {
            assert!(
                OperatorMatrix::mod_add(r, k)
                    .unwrap()
                    .max_unitarity_deviation()
                    <= 1e-12
            );
            for h in 0..r {
                let a = OperatorMatrix::controlled_mod_add(r, GateParams::new(h, k)).unwrap();
                assert!(a.max_unitarity_deviation() <= 1e-12, "A({h},{k}) radix {r}");
            }
        }
    }
}

#[test]
fn criterion_3_table_reproduction() {
    let circuits = [
        (generator(4, &[(3, 1)]), &TABLE_A31),
        (generator(4, &[(3, 1), (2, 2)]), &TABLE_A22_A31),
        (generator(4, &[(3, 1), (2, 2), (1, 3)]), &TABLE_FULL),
    ];
    for (circuit, table) in &circuits {
        let outputs = circuit.table_outputs();
        assert_eq!(outputs.len(), 16);
        for ((label, actual), terms) in outputs.iter().zip(table.iter()) {
            let expected = ket_sum(4, 0.5, terms);
            assert_state_eq(actual, &expected, 1e-9, &format!("input |{label}>"));
        }
    }
}

#[test]
fn criterion_4_bell_degeneracy() {
    let circuit = generator(2, &[(1, 1)]);
    let w = std::f64::consts::FRAC_1_SQRT_2;
    let bell = |terms: &[(char, &str)]| ket_sum(2, w, terms);
    let expected = [
        bell(&[('+', "00"), ('+', "11")]), // B00
        bell(&[('+', "01"), ('+', "10")]), // B01
        bell(&[('+', "00"), ('-', "11")]), // B10
        bell(&[('+', "01"), ('-', "10")]), // B11
    ];
    for ((label, actual), want) in circuit.table_outputs().iter().zip(&expected) {
        assert_state_eq(actual, want, 1e-12, &format!("Bell input |{label}>"));
    }
}

#[test]
fn criterion_5_counting_verification() {
    let expected = [
        (2usize, 2u64, 2u64),
        (3, 12, 6),
        (4, 144, 24),
        (5, 2880, 120),
    ];
    for (r, forms, unique) in expected {
        let report = verify_counts(r, Tolerance::default()).unwrap();
        assert!(report.passed(), "radix {r} failures: {:?}", report.failures);
        assert_eq!(report.circuit_forms, Some(forms), "radix {r} circuit forms");
        assert_eq!(
            report.unique_transfers,
            Some(unique),
            "radix {r} unique transfers"
        );
        assert_eq!(report.formula_circuit_count, u128::from(forms));
        assert_eq!(report.formula_unique_count, u128::from(unique));

        let sizes = transfer_class_sizes(r).unwrap();
        let orderings: usize = (1..r).product();
        assert_eq!(sizes.len() as u64, unique);
        assert!(
            sizes.iter().all(|&s| s == orderings),
            "radix {r}: every transfer must be shared by exactly {orderings} orderings"
        );
    }
}

#[test]
fn criterion_6_full_generators_maximally_entangle() {
    for r in [3usize, 4] {
        let uniform = (r as f64).sqrt().recip();
        for circuit in enumerate_circuit_forms(r).unwrap() {
            for (label, output) in circuit.table_outputs() {
                let sd = schmidt_data(&output).unwrap();
                for &s in sd.singular_values() {
                    assert!(
                        (s - uniform).abs() <= 1e-9,
                        "radix {r} input |{label}>: singular value {s}"
                    );
                }
                for wire in 0..2 {
                    let rho = reduced_density(&output, wire).unwrap();
                    for (i, row) in rho.iter().enumerate() {
                        for (j, z) in row.iter().enumerate() {
                            let expected = if i == j { (r as f64).recip() } else { 0.0 };
                            assert!(
                                (z - c(expected, 0.0)).norm() <= 1e-9,
                                "radix {r} wire {wire} density ({i},{j})"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_7_rank_law() {
    use itertools::Itertools;
    let r = 4usize;
    for m in 1..=3usize {
        for controls in (0..r).combinations(m) {
            for addends in (1..r).permutations(m) {
                let pairs: Vec<(usize, usize)> = controls
                    .iter()
                    .zip(&addends)
                    .map(|(&h, &k)| (h, k))
                    .collect();
                let circuit = generator(r, &pairs);
                for (label, output) in circuit.table_outputs() {
                    let rank = schmidt_data(&output).unwrap().rank();
                    assert_eq!(
                        rank,
                        m + 1,
                        "spec {pairs:?} input |{label}>: rank {rank}, want {}",
                        m + 1
                    );
                }
            }
        }
    }
}

#[test]
fn criterion_8_partial_entanglement_report() {
    let single_gate = generator(4, &[(3, 1)])
        .run(&QuditState::basis_digits(4, &[0, 0]).unwrap())
        .unwrap();
    let report = correlation_report(&single_gate, Tolerance::default()).unwrap();
    assert_eq!(report.outcomes.len(), 2);

    let unpinned = &report.outcomes[0];
    assert_eq!(unpinned.outcome, 0);
    assert!(!unpinned.pinned);
    let third = 1.0 / 3.0f64.sqrt();
    let expected_conditional = QuditState::new(
        4,
        1,
        vec![c(third, 0.0), c(third, 0.0), c(third, 0.0), Complex64::ZERO],
        Tolerance::default(),
    )
    .unwrap();
    assert!(unpinned
        .conditional
        .approx_eq(&expected_conditional, Tolerance::new(1e-9).unwrap())
        .unwrap());

    let pinned = &report.outcomes[1];
    assert_eq!(pinned.outcome, 1);
    assert!(pinned.pinned);
    assert!(pinned
        .conditional
        .approx_eq(
            &QuditState::basis_digits(4, &[3]).unwrap(),
            Tolerance::new(1e-9).unwrap()
        )
        .unwrap());

    let tol = Tolerance::default();
    let two_gate = generator(4, &[(3, 1), (2, 2)])
        .run(&QuditState::basis_digits(4, &[0, 0]).unwrap())
        .unwrap();
    let full = generator(4, &[(3, 1), (2, 2), (1, 3)])
        .run(&QuditState::basis_digits(4, &[0, 0]).unwrap())
        .unwrap();
    assert_eq!(
        classify(&single_gate, tol).unwrap().class,
        EntanglementClass::PartiallyEntangled
    );
    assert_eq!(
        classify(&two_gate, tol).unwrap().class,
        EntanglementClass::PartiallyEntangled
    );
    assert_eq!(
        classify(&full, tol).unwrap().class,
        EntanglementClass::MaximallyEntangled
    );
}

#[test]
fn criterion_9_commutativity() {
    for r in 2..=5usize {
        assert!(
            verify_commutativity(r).unwrap(),
            "radix {r}: witness {:?}",
            commutativity_witness(r).unwrap()
        );
    }
}
