use ga_core::{Blade, Dyadic, Multivector, Signature};
use proptest::prelude::*;

type Mv = Multivector<Dyadic>;

fn signatures(max_n: usize) -> Vec<Signature> {
    (0..=max_n).flat_map(|n| (0..=n).map(move |p| Signature::new(p, n - p).unwrap())).collect()
}

#[test]
fn generators_anticommute_and_square_to_metric() {
    for s in signatures(6) {
        for i in 1..=s.n() {
            for j in 1..=s.n() {
                let ei = Mv::blade(s, Blade::generator(i));
                let ej = Mv::blade(s, Blade::generator(j));
                let sum = &(&ei * &ej) + &(&ej * &ei);
                let want = if i == j { Mv::scalar(s, Dyadic::from_int(2 * s.metric(i) as i64)) } else { Mv::zero(s) };
                assert_eq!(sum, want, "{s} e{i} e{j}");
            }
        }
    }
}

#[test]
fn sharp_is_identity_in_euclidean_signatures() {
    for n in 0..=6 {
        let s = Signature::new(n, 0).unwrap();
        for b in s.blades() {
            let e = Mv::blade(s, b);
            assert_eq!(e.sharp(), e);
        }
    }
}

fn arb_mv(s: Signature) -> impl Strategy<Value = Mv> {
    prop::collection::vec((0..s.dim() as u32, -4i128..5, 0u32..3), 0..8).prop_map(move |ts| {
        Mv::from_terms(s, ts.into_iter().map(|(m, n, e)| (Blade::from_mask(m), Dyadic::new(n, e)))).unwrap()
    })
}

fn arb_sig_and_triple() -> impl Strategy<Value = (Mv, Mv, Mv)> {
    (0usize..=5, 0usize..=5).prop_flat_map(|(p, q)| {
        let s = Signature::new(p, q).unwrap();
        (arb_mv(s), arb_mv(s), arb_mv(s))
    })
}

proptest! {
    #[test]
    fn associative_and_distributive((a, b, c) in arb_sig_and_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn involutions_respect_products((a, b, _c) in arb_sig_and_triple()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.reverse(), &b.reverse() * &a.reverse());
        prop_assert_eq!(ab.grade_involution(), &a.grade_involution() * &b.grade_involution());
        prop_assert_eq!(ab.clifford_conjugate(), &b.clifford_conjugate() * &a.clifford_conjugate());
        prop_assert_eq!(ab.sharp(), &a.sharp() * &b.sharp());
    }

    #[test]
    fn involutions_are_involutive((a, _b, _c) in arb_sig_and_triple()) {
        prop_assert_eq!(a.reverse().reverse(), a.clone());
        prop_assert_eq!(a.grade_involution().grade_involution(), a.clone());
        prop_assert_eq!(a.clifford_conjugate().clifford_conjugate(), a.clone());
        prop_assert_eq!(a.sharp().sharp(), a.clone());
        prop_assert_eq!(a.clifford_conjugate(), a.grade_involution().reverse());
    }
}
