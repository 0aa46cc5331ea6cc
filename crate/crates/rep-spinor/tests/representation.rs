use ga_core::{Blade, Cx, Dyadic, Quat, Scalar, Signature};
use idempotent_factory::{Mode, Mv};
use rand::{rngs::StdRng, Rng, SeedableRng};
use rep_spinor::*;

fn build(p: usize, q: usize, mode: Mode) -> Representation {
    Representation::build(Signature::new(p, q).unwrap(), mode, None).unwrap()
}

fn all_sigs(max_n: usize) -> Vec<(usize, usize)> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |p| (p, n - p))).collect()
}

fn random_mv(sig: Signature, mode: Mode, rng: &mut StdRng) -> Mv {
    let mut x = Mv::zero(sig);
    for b in sig.blades() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let re = Dyadic::from_int(rng.gen_range(-3..=3));
        let im = if mode == Mode::Complex { Dyadic::from_int(rng.gen_range(-3..=3)) } else { Dyadic::ZERO };
        x = &x + &Mv::term(sig, b, Cx::new(re, im));
    }
    x
}

#[test]
fn generator_matrices_satisfy_clifford_relations() {
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(6) {
            let r = build(p, q, mode);
            let g = r.generators().unwrap();
            let dim = r.dim();
            let id = RepMatrix::identity(dim, r.kind(), r.block());
            for a in 0..g.len() {
                for b in 0..g.len() {
                    let ac = &(&g[a] * &g[b]) + &(&g[b] * &g[a]);
                    let metric = if a != b {
                        0
                    } else if a < p {
                        2
                    } else {
                        -2
                    };
                    let expect = id.scale(Quat::real(Dyadic::from_int(metric)));
                    assert_eq!(ac, expect, "Cl({p},{q}) {mode} e{} e{}", a + 1, b + 1);
                }
                if r.block().is_some() {
                    assert!(g[a].is_block_diagonal());
                }
            }
        }
    }
}

#[test]
fn representation_is_multiplicative() {
    let mut rng = StdRng::seed_from_u64(7);
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(5) {
            let r = build(p, q, mode);
            let blades = r.blade_matrices().unwrap();
            let sig = r.signature();
            for _ in 0..4 {
                let x = random_mv(sig, mode, &mut rng);
                let y = random_mv(sig, mode, &mut rng);
                let lhs = r.rep_from_blades(&blades, &(&x * &y));
                let rhs = &r.rep_from_blades(&blades, &x) * &r.rep_from_blades(&blades, &y);
                assert_eq!(lhs, rhs, "Cl({p},{q}) {mode}");
                assert_eq!(r.rep(&x).unwrap(), r.rep_from_blades(&blades, &x));
            }
        }
    }
}

#[test]
fn real_representation_is_faithful_on_blades() {
    // Blade matrices are ± distinct signed permutation-like matrices; a
    // collision between two blades would mean the representation loses them.
    for (p, q) in all_sigs(6) {
        let r = build(p, q, Mode::Real);
        if r.block().is_some() {
            continue;
        }
        let mats = r.blade_matrices().unwrap();
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                assert_ne!(mats[a], mats[b], "Cl({p},{q})");
                assert_ne!(mats[a], mats[b].scale(Quat::real(-Dyadic::ONE)), "Cl({p},{q})");
            }
        }
    }
}

#[test]
fn spinor_frame_maps_to_first_column_units() {
    // X = S(r)·S(1)† is the matrix unit E_r1 of its block
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(6) {
            let r = build(p, q, mode);
            let frame = r.spinor_frame().unwrap();
            let m = r.m();
            for e in frame.elements.iter().filter(|e| e.unit == 0) {
                let got = r.rep(&e.value).unwrap();
                let (row, col) = (e.block * m + e.generator, e.block * m);
                for i in 0..r.dim() {
                    for j in 0..r.dim() {
                        if mode == Mode::Complex && (i >= m || j >= m) {
                            continue;
                        }
                        let expect = if (i, j) == (row, col) { Quat::one() } else { Quat::zero() };
                        assert_eq!(got.get(i, j), expect, "Cl({p},{q}) {mode} X{}", e.generator + 1);
                    }
                }
            }
        }
    }
}

#[test]
fn worked_matrices_cl22() {
    let r = build(2, 2, Mode::Real);
    assert_eq!(r.basis().classification(), "R(4)");
    let g = r.generators().unwrap();
    assert_eq!(g[0].to_string(), "E11 - E22 - E33 + E44");
    assert_eq!(g[3].to_string(), "-E13 + E24 + E31 - E42");
    let frame = r.spinor_frame().unwrap();
    assert_eq!(spinor_text(&frame, "P1"), "(s1 + s2e2 + s3e4 + s4e24)P1");
    assert_eq!(r.spinor_matrix_form(&frame).unwrap().to_string(), "s1E11 + s2E21 + s3E31 + s4E41");
}

#[test]
fn worked_matrices_small() {
    let r = build(0, 1, Mode::Real);
    assert_eq!(r.generator(1).unwrap().to_string(), "iE11");
    let r = build(2, 0, Mode::Real);
    let g = r.generators().unwrap();
    assert_eq!(g[0].to_string(), "E11 - E22");
    assert_eq!(g[1].to_string(), "E12 + E21");
    let r = build(4, 0, Mode::Real);
    assert_eq!(r.generator(3).unwrap().to_string(), "-q1E12 + q1E21");
    assert!(r.generator(5).is_err());
    assert!(r.generator(0).is_err());
}

#[test]
fn complex_odd_spinor_matrix() {
    let r = build(3, 0, Mode::Complex);
    let frame = r.spinor_frame().unwrap();
    assert_eq!(frame.len(), 4);
    assert!(!frame.complex_coefficients);
    assert_eq!(
        r.spinor_matrix_form(&frame).unwrap().to_string(),
        "(s1 + is2)E11 + (s3 + is4)E21 + (s1 - is2)E33 + (-s3 + is4)E43"
    );
}

#[test]
fn norm_formula_examples() {
    let expect = [
        (2, 2, Mode::Real, "-<e34 rev(Ψ) e34 Ψ>"),
        (2, 0, Mode::Real, "<rev(Ψ) Ψ>"),
        (1, 3, Mode::Complex, "<e1 rev(Ψ)* e1 Ψ>"),
    ];
    for (p, q, mode, text) in expect {
        let r = build(p, q, mode);
        let frame = r.spinor_frame().unwrap();
        let f = find_norm_formula(&r, &frame).unwrap();
        assert_eq!(f.to_string(), text);
        let c = f.evaluate(&frame).as_scaled_identity().unwrap();
        assert_eq!(c, Dyadic::pow2(-(r.k() as i32)));
    }
}

#[test]
fn norm_formula_exists_everywhere() {
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(6) {
            let r = build(p, q, mode);
            let frame = r.spinor_frame().unwrap();
            let f = find_norm_formula(&r, &frame).unwrap_or_else(|| panic!("Cl({p},{q}) {mode}"));
            assert_eq!(f.evaluate(&frame).as_scaled_identity(), Some(Dyadic::pow2(-(r.k() as i32))));
        }
    }
}

#[test]
fn hermitian_norm_equals_trace_norm() {
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(6) {
            let r = build(p, q, mode);
            let frame = r.spinor_frame().unwrap();
            let h = hermitian_form(&frame);
            let t = trace_form(&r, &frame).unwrap();
            assert_eq!(h.as_scaled_identity(), Some(Dyadic::pow2(-(r.k() as i32))), "Cl({p},{q}) {mode}");
            assert_eq!(h.as_scaled_identity(), t.as_scaled_identity(), "Cl({p},{q}) {mode}");
        }
    }
}

#[test]
fn concrete_spinor_norms_agree() {
    let mut rng = StdRng::seed_from_u64(11);
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(5) {
            let r = build(p, q, mode);
            let frame = r.spinor_frame().unwrap();
            let coeffs: Vec<Cx> = (0..frame.len())
                .map(|_| {
                    let re = Dyadic::from_int(rng.gen_range(-4..=4));
                    let im =
                        if frame.complex_coefficients { Dyadic::from_int(rng.gen_range(-4..=4)) } else { Dyadic::ZERO };
                    Cx::new(re, im)
                })
                .collect();
            let psi = assemble_spinor(&coeffs, &r).unwrap();
            let sum: Dyadic = coeffs.iter().fold(Dyadic::ZERO, |a, c| a + c.norm_sq());
            let expect = sum * Dyadic::pow2(-(r.k() as i32));
            assert_eq!(hermitian_norm_sq(&psi), Cx::real(expect));
            let mat = spinor_matrix(&psi).unwrap();
            assert_eq!(trace_norm_sq(&mat, trace_normalization(&r) as usize), expect);
            let f = find_norm_formula(&r, &frame).unwrap();
            assert_eq!(f.apply(&psi.value), Cx::real(expect));
        }
    }
}

#[test]
fn spinor_coefficient_count_is_checked() {
    let r = build(2, 2, Mode::Real);
    assert!(matches!(assemble_spinor(&[Cx::one(); 3], &r), Err(RepError::CoefficientCount { expected: 4, got: 3 })));
    assert!(matches!(assemble_spinor(&[Cx::I; 4], &r), Err(RepError::ComplexCoefficient)));
    let other = Mv::blade(Signature::new(3, 0).unwrap(), Blade::generator(1));
    assert!(matches!(r.rep(&other), Err(RepError::Signature)));
}

#[test]
fn frame_elements_are_single_blades() {
    for mode in [Mode::Real, Mode::Complex] {
        for (p, q) in all_sigs(6) {
            let r = build(p, q, mode);
            let frame = r.spinor_frame().unwrap();
            let blocks = frame.block_idempotents.len();
            for e in &frame.elements {
                let unit = e.coeff;
                assert!(unit == Cx::one() || unit == -Cx::one() || unit == Cx::I || unit == -Cx::I);
                let v = (&Mv::blade(r.signature(), e.blade) * &frame.block_idempotents[e.block]).scale(e.coeff);
                assert_eq!(v, e.value);
            }
            assert!(blocks >= 1);
        }
    }
}
