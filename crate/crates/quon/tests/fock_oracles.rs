//! Frozen matrix-model values: symmetrizers, twisted inner products,
//! creation/annihilation blocks, norms, moments, and the bridge between the
//! symbolic engines and direct matrix application.

use nalgebra::DMatrix;
use num_complex::Complex64;

use quon::fock::{
    annihilation_matrix, apply_word, creation_matrix, evaluate_normal_form, field_moments,
    inner_product, level_projector, operator_norm, projector_factor, symmetrizer, verify_bridge,
    verify_relations, Assignment, FockConfig, LevelVector, MParam,
};
use quon::symbolic::{normal_order_wick, OperatorSymbol, Word};
use quon::Error;

fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cfg(q: f64, m: u32, d: usize, n_max: usize) -> FockConfig {
    FockConfig::new(q, MParam::Finite(m), d, n_max).unwrap()
}

fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn config_rejects_out_of_range_parameters() {
    assert!(FockConfig::new(1.5, MParam::Finite(2), 2, 4).is_err());
    assert!(FockConfig::new(0.5, MParam::Finite(0), 2, 4).is_err());
    assert!(FockConfig::new(0.5, MParam::Finite(2), 5, 4).is_err());
    assert!(FockConfig::new(0.5, MParam::Finite(2), 0, 4).is_err());
    assert!(FockConfig::new(0.5, MParam::Finite(2), 2, 7).is_err());
}

#[test]
fn unbounded_m_acts_as_beyond_truncation() {
    let c = FockConfig::new(0.5, MParam::Unbounded, 2, 4).unwrap();
    assert_eq!(c.effective_m(), 5);
}

#[test]
fn symmetrizer_level_one_is_identity() {
    for q in [-1.0, -0.3, 0.0, 0.8, 1.0] {
        let c = cfg(q, 2, 3, 4);
        let s = symmetrizer(&c, 1).unwrap();
        assert_eq!(s.matrix(), &DMatrix::identity(3, 3));
    }
}

#[test]
fn symmetrizer_level_two_mixes_by_the_swap() {
    let c = cfg(0.3, 2, 2, 4);
    let s = symmetrizer(&c, 2).unwrap();
    let expected = DMatrix::from_row_slice(
        4,
        4,
        &[
            cx(1.3, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0),
            cx(0.0, 0.0), cx(1.0, 0.0), cx(0.3, 0.0), cx(0.0, 0.0),
            cx(0.0, 0.0), cx(0.3, 0.0), cx(1.0, 0.0), cx(0.0, 0.0),
            cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(1.3, 0.0),
        ],
    );
    assert!(max_abs_diff(s.matrix(), &expected) < 1e-14);
}

#[test]
fn symmetrizer_at_zero_q_is_identity() {
    let c = cfg(0.0, 3, 2, 4);
    for n in 0..=3 {
        let s = symmetrizer(&c, n).unwrap();
        let dim = 2usize.pow(n as u32);
        assert_eq!(s.matrix(), &DMatrix::identity(dim, dim));
    }
}

#[test]
fn symmetrizer_one_dimensional_level_two_is_one_plus_q() {
    let c = cfg(0.7, 2, 1, 4);
    let s = symmetrizer(&c, 2).unwrap();
    assert_eq!(s.matrix().nrows(), 1);
    assert!((s.matrix()[(0, 0)] - cx(1.7, 0.0)).norm() < 1e-14);
}

#[test]
fn symmetrizer_tail_rule_tensors_identity_on_leading_slots() {
    // m = 1 collapses every level to the identity
    let c = cfg(0.9, 1, 2, 4);
    let s = symmetrizer(&c, 3).unwrap();
    assert!(max_abs_diff(s.matrix(), &DMatrix::identity(8, 8)) < 1e-14);

    // m = 2, n = 3: two diagonal copies of the level-2 symmetrizer
    let c = cfg(0.4, 2, 2, 4);
    let s3 = symmetrizer(&c, 3).unwrap();
    let s2 = symmetrizer(&c, 2).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert!((s3.matrix()[(i, j)] - s2.matrix()[(i, j)]).norm() < 1e-14);
            assert!((s3.matrix()[(4 + i, 4 + j)] - s2.matrix()[(i, j)]).norm() < 1e-14);
            assert!(s3.matrix()[(i, 4 + j)].norm() < 1e-14);
        }
    }
}

#[test]
fn symmetrizer_rejects_levels_beyond_truncation() {
    let c = cfg(0.5, 2, 2, 3);
    assert!(symmetrizer(&c, 4).is_err());
}

#[test]
fn inner_product_level_one_is_standard() {
    let c = cfg(0.6, 2, 2, 4);
    let x = LevelVector::new(&c, 1, vec![cx(1.0, 0.0), cx(0.0, 2.0)]).unwrap();
    let y = LevelVector::new(&c, 1, vec![cx(3.0, 0.0), cx(0.0, -1.0)]).unwrap();
    let ip = inner_product(&c, 1, &x, &y).unwrap();
    assert!((ip - cx(1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn inner_product_of_a_square_tensor_picks_up_one_plus_q() {
    let c = cfg(0.3, 2, 2, 4);
    let f = [cx(0.6, 0.0), cx(0.8, 0.0)];
    let mut amps = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            amps.push(f[a] * f[b]);
        }
    }
    let x = LevelVector::new(&c, 2, amps).unwrap();
    let ip = inner_product(&c, 2, &x, &x).unwrap();
    assert!((ip - cx(1.3, 0.0)).norm() < 1e-12);
}

#[test]
fn antisymmetric_form_kills_square_tensors() {
    let c = cfg(-1.0, 2, 2, 4);
    let f = [cx(0.6, 0.0), cx(0.8, 0.0)];
    let mut amps = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            amps.push(f[a] * f[b]);
        }
    }
    let x = LevelVector::new(&c, 2, amps).unwrap();
    let ip = inner_product(&c, 2, &x, &x).unwrap();
    assert!(ip.norm() < 1e-12);
}

#[test]
fn creation_from_vacuum_is_the_vector_itself() {
    let c = cfg(0.5, 2, 2, 4);
    let f = [cx(2.0, 0.0), cx(0.0, 3.0)];
    let op = creation_matrix(&c, &f, 0).unwrap();
    assert_eq!((op.from_level(), op.to_level()), (0, 1));
    assert_eq!(op.matrix().shape(), (2, 1));
    let out = op.apply(&LevelVector::vacuum(&c)).unwrap();
    assert!((out.amplitudes()[0] - f[0]).norm() < 1e-14);
    assert!((out.amplitudes()[1] - f[1]).norm() < 1e-14);
}

#[test]
fn iterated_creation_builds_the_ordered_tensor() {
    let c = cfg(0.5, 2, 2, 4);
    let f1 = [cx(1.0, 0.0), cx(0.0, 0.0)];
    let f2 = [cx(0.0, 0.0), cx(1.0, 0.0)];
    // rightmost factor acts first: A⁺(f1)A⁺(f2)Φ = f1 ⊗ f2
    let first = creation_matrix(&c, &f2, 0).unwrap();
    let second = creation_matrix(&c, &f1, 1).unwrap();
    let out = second.apply(&first.apply(&LevelVector::vacuum(&c)).unwrap()).unwrap();
    let expect = [cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)];
    for (got, want) in out.amplitudes().iter().zip(expect) {
        assert!((got - want).norm() < 1e-14);
    }
}

#[test]
fn creation_rejects_overflowing_the_truncation() {
    let c = cfg(0.5, 2, 2, 3);
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    assert!(creation_matrix(&c, &f, 3).is_err());
}

#[test]
fn annihilation_level_one_is_the_inner_product() {
    let c = cfg(0.5, 2, 2, 4);
    let f = [cx(1.0, 0.0), cx(2.0, 0.0)];
    let g = LevelVector::new(&c, 1, vec![cx(3.0, 0.0), cx(4.0, 0.0)]).unwrap();
    let out = annihilation_matrix(&c, &f, 1).unwrap().apply(&g).unwrap();
    assert_eq!(out.level(), 0);
    assert!((out.amplitudes()[0] - cx(11.0, 0.0)).norm() < 1e-14);
}

#[test]
fn annihilation_below_the_cutoff_weights_slots_by_q_powers() {
    let c = cfg(0.5, 2, 2, 4);
    let f = [cx(2.0, 0.0), cx(3.0, 0.0)];
    // e0 ⊗ e1 at index 1
    let mut amps = vec![cx(0.0, 0.0); 4];
    amps[1] = cx(1.0, 0.0);
    let x = LevelVector::new(&c, 2, amps).unwrap();
    let out = annihilation_matrix(&c, &f, 2).unwrap().apply(&x).unwrap();
    // ⟨f,e0⟩ e1 + q ⟨f,e1⟩ e0 = 2·e1 + 0.5·3·e0
    assert!((out.amplitudes()[0] - cx(1.5, 0.0)).norm() < 1e-14);
    assert!((out.amplitudes()[1] - cx(2.0, 0.0)).norm() < 1e-14);
}

#[test]
fn annihilation_above_the_cutoff_deletes_only_the_first_slot() {
    let c = cfg(0.5, 1, 2, 4);
    let f = [cx(2.0, 0.0), cx(3.0, 0.0)];
    let mut amps = vec![cx(0.0, 0.0); 4];
    amps[1] = cx(1.0, 0.0); // e0 ⊗ e1, level 2 = m + 1
    let x = LevelVector::new(&c, 2, amps).unwrap();
    let out = annihilation_matrix(&c, &f, 2).unwrap().apply(&x).unwrap();
    assert!((out.amplitudes()[0] - cx(0.0, 0.0)).norm() < 1e-14);
    assert!((out.amplitudes()[1] - cx(2.0, 0.0)).norm() < 1e-14);
}

#[test]
fn annihilation_needs_a_particle() {
    let c = cfg(0.5, 2, 2, 4);
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    assert!(annihilation_matrix(&c, &f, 0).is_err());
}

#[test]
fn projector_factors_follow_the_level_cutoff() {
    assert_eq!(projector_factor(1, 0), 1.0);
    assert_eq!(projector_factor(0, 0), 0.0);
    assert_eq!(projector_factor(2, 3), 0.0);
    assert_eq!(projector_factor(-3, 1), 0.0);
    assert_eq!(projector_factor(5, 2), 1.0);

    let c = cfg(0.5, 2, 2, 4);
    let p = level_projector(&c, 2, 3).unwrap();
    assert_eq!(p.matrix(), &DMatrix::zeros(8, 8));
    let id = level_projector(&c, 1, 0).unwrap();
    assert_eq!(id.matrix(), &DMatrix::identity(1, 1));
}

#[test]
fn relation_residuals_vanish_on_sample_configs() {
    for (q, m) in [(0.0, 2), (1.0, 2), (-1.0, 2), (0.5, 1), (-0.7, 3)] {
        let c = cfg(q, m, 2, 4);
        let report = verify_relations(&c);
        assert!(report.pass, "q={q} m={m}: residual {}", report.max_residual);
        assert!(report.max_residual <= 1e-10);
    }
}

#[test]
fn antisymmetrizer_spectrum_splits_into_kernel_and_double() {
    let c = cfg(-1.0, 2, 2, 4);
    let s = symmetrizer(&c, 2).unwrap();
    let mut eigs: Vec<f64> = s
        .matrix()
        .clone()
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eigs.sort_by(f64::total_cmp);
    let expect = [0.0, 0.0, 0.0, 2.0];
    for (got, want) in eigs.iter().zip(expect) {
        assert!((got - want).abs() < 1e-12, "eigenvalues {eigs:?}");
    }
}

#[test]
fn operator_norm_matches_the_closed_form() {
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    let n = operator_norm(&cfg(1.0, 3, 2, 5), &f).unwrap();
    assert!((n - 3f64.sqrt()).abs() / 3f64.sqrt() < 1e-6);

    let n = operator_norm(&cfg(-0.5, 2, 2, 4), &f).unwrap();
    assert!((n - 1.0).abs() < 1e-6);

    let g = [cx(2.0, 0.0), cx(0.0, 0.0)];
    let n = operator_norm(&cfg(0.0, 2, 2, 4), &g).unwrap();
    assert!((n - 2.0).abs() < 1e-6);
}

#[test]
fn operator_norm_needs_enough_levels() {
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    assert!(operator_norm(&cfg(1.0, 3, 2, 3), &f).is_err());
    let c = FockConfig::new(1.0, MParam::Unbounded, 2, 4).unwrap();
    assert!(operator_norm(&c, &f).is_err());
}

#[test]
fn free_moments_are_catalan() {
    let c = cfg(0.0, 2, 2, 3);
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    let moments = field_moments(&c, &f, 6).unwrap();
    let expect = [0.0, 1.0, 0.0, 2.0, 0.0, 5.0];
    for (got, want) in moments.iter().zip(expect) {
        assert!((got - want).abs() < 1e-10, "moments {moments:?}");
    }
}

#[test]
fn antisymmetric_even_moments_are_powers_of_the_second() {
    let c = cfg(-1.0, 2, 2, 3);
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    let moments = field_moments(&c, &f, 6).unwrap();
    let expect = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
    for (got, want) in moments.iter().zip(expect) {
        assert!((got - want).abs() < 1e-10, "moments {moments:?}");
    }
}

#[test]
fn moments_beyond_twice_the_truncation_are_rejected() {
    let c = cfg(0.0, 2, 2, 3);
    let f = [cx(1.0, 0.0), cx(0.0, 0.0)];
    assert!(field_moments(&c, &f, 7).is_err());
}

fn two_label_assignment() -> Assignment {
    let mut assignment = Assignment::new();
    assignment.insert("f".to_string(), vec![cx(1.0, 0.0), cx(0.0, -2.0)]);
    assignment.insert("g".to_string(), vec![cx(0.5, 0.0), cx(0.0, 1.0)]);
    assignment
}

#[test]
fn word_application_matches_the_defining_pairing_on_the_vacuum() {
    let c = cfg(0.5, 2, 2, 4);
    let w = Word::new(
        2,
        vec![
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::creator("g"),
        ],
    )
    .unwrap();
    let assignment = two_label_assignment();
    let direct = apply_word(&c, &w, &assignment).unwrap();
    // ⟨f,g⟩ = conj(1)·0.5 + conj(−2i)·i = 0.5 + 2i·i = 0.5 − 2 = −1.5
    let block0 = direct.block(0).unwrap();
    assert!((block0.matrix()[(0, 0)] - cx(-1.5, 0.0)).norm() < 1e-12);
    // the creation step overflows from the top level
    assert!(direct.block(4).is_none());
    assert!(direct.block(3).is_some());
}

#[test]
fn projector_tokens_zero_out_high_levels_in_word_application() {
    let c = cfg(0.5, 2, 2, 4);
    let w = Word::new(
        2,
        vec![
            OperatorSymbol::projector(2),
            OperatorSymbol::creator("g"),
        ],
    )
    .unwrap();
    let assignment = two_label_assignment();
    let direct = apply_word(&c, &w, &assignment).unwrap();
    // level 0: p₂ g has factor 1 at level 1
    let b0 = direct.block(0).unwrap();
    assert!((b0.matrix()[(0, 0)] - cx(0.5, 0.0)).norm() < 1e-12);
    assert!((b0.matrix()[(1, 0)] - cx(0.0, 1.0)).norm() < 1e-12);
    // level 2: output level 3 ≥ 2 is cut
    let b2 = direct.block(2).unwrap();
    assert_eq!(b2.matrix(), &DMatrix::zeros(8, 4));
}

#[test]
fn normal_form_evaluation_matches_direct_application() {
    let c = cfg(0.5, 2, 2, 4);
    let assignment = two_label_assignment();
    let words = [
        vec![
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::creator("g"),
        ],
        vec![
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::creator("g"),
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::creator("g"),
        ],
        vec![
            OperatorSymbol::creator("g"),
            OperatorSymbol::projector(1),
            OperatorSymbol::annihilator("f"),
        ],
        vec![
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::projector(3),
            OperatorSymbol::creator("g"),
            OperatorSymbol::annihilator("f"),
        ],
    ];
    for factors in words {
        let w = Word::new(2, factors).unwrap();
        let nf = normal_order_wick(&w).unwrap();
        let direct = apply_word(&c, &w, &assignment).unwrap();
        let labels = w.core_labels();
        let evaluated = evaluate_normal_form(&c, &nf, &labels, &assignment).unwrap();
        for (n, block) in direct.blocks() {
            let other = evaluated.block(*n).expect("evaluation covers direct levels");
            assert!(
                max_abs_diff(block.matrix(), other.matrix()) < 1e-12,
                "level {n} of {w:?}"
            );
        }
    }
}

#[test]
fn evaluation_requires_every_label_assigned() {
    let c = cfg(0.5, 2, 2, 4);
    let w = Word::new(
        2,
        vec![
            OperatorSymbol::annihilator("h"),
            OperatorSymbol::creator("g"),
        ],
    )
    .unwrap();
    let assignment = two_label_assignment();
    assert!(matches!(
        apply_word(&c, &w, &assignment),
        Err(Error::Invalid(_))
    ));
    let nf = normal_order_wick(&w).unwrap();
    let labels = w.core_labels();
    assert!(matches!(
        evaluate_normal_form(&c, &nf, &labels, &assignment),
        Err(Error::Invalid(_))
    ));
}

#[test]
fn evaluation_requires_matching_algebra_parameter() {
    let c = cfg(0.5, 3, 2, 4);
    let w = Word::new(
        2,
        vec![
            OperatorSymbol::annihilator("f"),
            OperatorSymbol::creator("g"),
        ],
    )
    .unwrap();
    let assignment = two_label_assignment();
    assert!(matches!(
        apply_word(&c, &w, &assignment),
        Err(Error::Invalid(_))
    ));
}

#[test]
fn randomized_bridge_suite_passes() {
    let report = verify_bridge(60, 7).unwrap();
    assert!(report.pass, "residual {}", report.max_residual);
    assert!(report.max_residual <= 1e-9);
}
