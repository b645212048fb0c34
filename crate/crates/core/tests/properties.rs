//! Randomized invariants over the named systems and a few small graphs.

use std::sync::Arc;

use proptest::prelude::*;
use racg::coxeter::{catalog, CoxeterSystem, GeneratorId, Side, Word};
use racg::hecke::{ExactHecke, HeckeAlgebra};
use racg::laurent::LaurentPoly;
use racg::oracle;
use racg::rational::{int, parse_rational, ratio};

fn systems() -> Vec<CoxeterSystem> {
    vec![
        catalog::free_product(3),
        catalog::z2_free_z2_squared(),
        catalog::pentagon(),
        catalog::path(4),
        catalog::cycle(4),
    ]
}

fn system_and_word(max_len: usize) -> impl Strategy<Value = (usize, Vec<u8>)> {
    (0..systems().len(), prop::collection::vec(any::<u8>(), 0..=max_len))
}

fn word(sys: &CoxeterSystem, raw: &[u8]) -> Word {
    Word(raw.iter().map(|&x| GeneratorId(x % sys.rank() as u8)).collect())
}

fn hecke(sys: &Arc<CoxeterSystem>, raw: &[(Vec<u8>, i8, i8)]) -> ExactHecke {
    let alg = HeckeAlgebra::exact(sys.clone());
    let mut out = alg.zero();
    for (w, c, e) in raw {
        let w = sys.normalize(&word(sys, w)).unwrap();
        let coeff = LaurentPoly::monomial(int(*c as i64), (*e % 3) as i32);
        out = out.add(&alg.term(w, coeff)).unwrap();
    }
    out
}

fn hecke_terms() -> impl Strategy<Value = Vec<(Vec<u8>, i8, i8)>> {
    prop::collection::vec((prop::collection::vec(any::<u8>(), 0..=4), -3i8..=3, -2i8..=2), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_matches_oracle((i, raw) in system_and_word(7)) {
        let sys = &systems()[i];
        let w = word(sys, &raw);
        prop_assert_eq!(sys.normalize(&w).unwrap(), oracle::brute_force_element(sys, &w).unwrap());
    }

    #[test]
    fn normal_form_is_idempotent_and_parity_preserving((i, raw) in system_and_word(16)) {
        let sys = &systems()[i];
        let w = word(sys, &raw);
        let e = sys.normalize(&w).unwrap();
        prop_assert_eq!(sys.normalize(&Word(e.letters().to_vec())).unwrap(), e.clone());
        prop_assert_eq!(e.len() % 2, w.len() % 2);
        prop_assert!(e.len() <= w.len());
    }

    #[test]
    fn lengths_and_inverses((i, a) in system_and_word(10), b in prop::collection::vec(any::<u8>(), 0..=10)) {
        let sys = &systems()[i];
        let a = sys.normalize(&word(sys, &a)).unwrap();
        let b = sys.normalize(&word(sys, &b)).unwrap();
        let ab = sys.multiply(&a, &b).unwrap();
        prop_assert!(ab.len() <= a.len() + b.len());
        prop_assert_eq!((a.len() + b.len() - ab.len()) % 2, 0);
        let inv = sys.inverse(&a);
        prop_assert_eq!(inv.len(), a.len());
        prop_assert!(sys.multiply(&a, &inv).unwrap().is_identity());
        prop_assert_eq!(sys.inverse(&ab), sys.multiply(&sys.inverse(&b), &inv).unwrap());
    }

    #[test]
    fn descents_match_length_drops((i, raw) in system_and_word(12)) {
        let sys = &systems()[i];
        let w = sys.normalize(&word(sys, &raw)).unwrap();
        for s in sys.generators() {
            let (ws, dr) = sys.mult_gen(&w, s, Side::Right);
            let (sw, dl) = sys.mult_gen(&w, s, Side::Left);
            prop_assert_eq!(dr == -1, sys.right_descents(&w).contains(s));
            prop_assert_eq!(dl == -1, sys.left_descents(&w).contains(s));
            prop_assert_eq!(ws.len() as i64, w.len() as i64 + dr as i64);
            prop_assert_eq!(sw.len() as i64, w.len() as i64 + dl as i64);
        }
    }

    #[test]
    fn regular_join_is_length_additive((i, v) in system_and_word(6), w in prop::collection::vec(any::<u8>(), 0..=6)) {
        let sys = &systems()[i];
        prop_assume!(sys.is_irreducible() && !sys.is_finite());
        let v = sys.normalize(&word(sys, &v)).unwrap();
        let w = sys.normalize(&word(sys, &w)).unwrap();
        let u = sys.regular_join(&v, &w).unwrap();
        let vuw = sys.multiply(&sys.multiply(&v, &u).unwrap(), &w).unwrap();
        prop_assert_eq!(vuw.len(), v.len() + u.len() + w.len());
    }

    #[test]
    fn shortest_coset_rep_is_minimal((i, raw) in system_and_word(8)) {
        let sys = &systems()[i];
        let w = sys.normalize(&word(sys, &raw)).unwrap();
        for pair in sys.infinite_pairs() {
            let info = sys.shortest_rep(pair, &w).unwrap();
            prop_assert!(info.w0.len() <= w.len());
            prop_assert_eq!(&info.w0, &sys.brute_force_min_rep(pair, &w, w.len() + 2).unwrap());
        }
    }

    #[test]
    fn hecke_star_and_j_are_compatible(i in 0..3usize, a in hecke_terms(), b in hecke_terms()) {
        let sys = Arc::new(systems()[i].clone());
        let a = hecke(&sys, &a);
        let b = hecke(&sys, &b);
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.star(), b.star().mul(&a.star()).unwrap());
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(ab.j_iso(), a.j_iso().mul(&b.j_iso()).unwrap());
        prop_assert_eq!(a.j_iso().star(), a.star().j_iso());
    }

    #[test]
    fn specialization_is_a_homomorphism(i in 0..3usize, a in hecke_terms(), b in hecke_terms(), q in 0.1f64..4.0) {
        let sys = Arc::new(systems()[i].clone());
        let a = hecke(&sys, &a);
        let b = hecke(&sys, &b);
        let exact = a.mul(&b).unwrap().specialize(q);
        let numeric = a.specialize(q).mul(&b.specialize(q)).unwrap();
        let scale = 1.0 + exact.max_abs_coefficient();
        prop_assert!(exact.sub(&numeric).unwrap().max_abs_coefficient() <= 1e-9 * scale);
    }

    #[test]
    fn generator_quadratic_relation(i in 0..3usize, s in any::<u8>()) {
        let sys = Arc::new(systems()[i].clone());
        let alg = HeckeAlgebra::exact(sys.clone());
        let ts = alg.generator(GeneratorId(s % sys.rank() as u8));
        let lhs = ts.mul(&ts).unwrap();
        let rhs = alg.unit().add(&ts.scale(&LaurentPoly::hecke_p())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rational_text_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = ratio(n, d);
        prop_assert_eq!(parse_rational(&x.to_string()).unwrap(), x);
    }
}
