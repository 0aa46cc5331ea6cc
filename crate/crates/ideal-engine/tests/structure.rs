use ga_core::{Blade, Cx, Scalar, Signature};
use ideal_engine::*;
use idempotent_factory::{default_family, Mode, Mv};

fn signatures(max_n: usize) -> Vec<Signature> {
    (1..=max_n).flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap())).collect()
}

fn build(s: Signature, mode: Mode) -> (LeftIdeal, DivisionRing, SpinorBasis) {
    let f = default_family(s, mode);
    let l = left_ideal(f.primitive()).unwrap();
    let r = two_sided_ideal(f.primitive(), mode).unwrap();
    let b = spinor_basis(&l, &r);
    (l, r, b)
}

#[test]
fn left_ideal_is_closed_under_generators() {
    for s in signatures(6) {
        for mode in [Mode::Real, Mode::Complex] {
            let (l, _, _) = build(s, mode);
            for i in 1..=s.n() {
                let e = Mv::blade(s, Blade::generator(i));
                for x in l.elements() {
                    let y = &e * &x.value;
                    assert!(l.locate(&y).is_some(), "{s} {mode} e{i}·{}", x.name);
                    assert_eq!(&y * l.idempotent(), y);
                }
            }
        }
    }
}

#[test]
fn ring_axioms_hold() {
    for s in signatures(6) {
        for mode in [Mode::Real, Mode::Complex] {
            let (l, r, _) = build(s, mode);
            let p = l.idempotent();
            let one = &r.units[0].value;
            assert_eq!(one, p);
            for u in &r.units {
                assert_eq!(&(one * &u.value), &u.value);
                assert_eq!(&(&u.value * one), &u.value);
            }
            match (mode, r.kind) {
                (Mode::Real, RingKind::C) => {
                    let i = &r.units[1].value;
                    assert_eq!(&(i * i), &-p);
                }
                (Mode::Real, RingKind::H) => {
                    let q: Vec<&Mv> = r.units[1..].iter().map(|u| &u.value).collect();
                    for x in &q {
                        assert_eq!(&(*x * *x), &-p, "{s}");
                    }
                    assert_eq!(&(q[0] * q[1]), q[2]);
                    assert_eq!(&(q[1] * q[0]), &-q[2]);
                }
                (Mode::Complex, _) if r.split() => {
                    let u = &r.units[1].value;
                    assert_eq!(&(u * u), &-p);
                    // u commutes with P e_T P for every blade
                    for b in s.blades() {
                        let k = &(p * &Mv::blade(s, b)) * p;
                        assert_eq!(&k * u, u * &k, "{s}");
                    }
                }
                _ => {}
            }
        }
    }
}

#[test]
fn bott_dimension_identity() {
    for s in signatures(6) {
        let (_, r, b) = build(s, Mode::Real);
        let twice = if b.semisimple() { 2 } else { 1 };
        assert_eq!(b.m() * b.m() * r.kind.real_dim() * twice, 1 << s.n(), "{s}");
        let (_, _, bc) = build(s, Mode::Complex);
        let twice = if bc.semisimple() { 2 } else { 1 };
        assert_eq!(bc.m() * bc.m() * twice, 1 << s.n(), "{s} complex");
    }
}

#[test]
fn generators_are_independent_over_the_ring() {
    for s in signatures(6) {
        let (l, r, b) = build(s, Mode::Real);
        let count = l.elements().len();
        assert_eq!(b.m() * r.kind.real_dim(), count, "{s}");
    }
}

#[test]
fn dedup_is_sign_stable() {
    for s in signatures(5) {
        for mode in [Mode::Real, Mode::Complex] {
            let (l, r, b) = build(s, mode);
            let flips: Vec<Cx> =
                (0..l.elements().len()).map(|i| if i % 2 == 1 { -Cx::one() } else { Cx::one() }).collect();
            let b2 = spinor_basis(&l.rescaled(&flips), &r);
            assert_eq!(b.names(), b2.names(), "{s} {mode}");
        }
    }
}
