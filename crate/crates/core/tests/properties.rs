mod oracle;

use khlab::diagram::sites;
use khlab::frobenius::FrobeniusAlgebra;
use khlab::snf::smith_normal_form;
use khlab::{
    bracket_q, build_complex, jones, khovanov_homology, parse_diagram, parse_pd, BraidWord, Coefficients, Complex,
    Integer, KnotDiagram, Move, SparseMatrix, DEFAULT_CAP,
};
use oracle::p_of;
use proptest::prelude::*;

fn braid() -> impl Strategy<Value = BraidWord> {
    (2usize..=4).prop_flat_map(|n| {
        let letter = (1..n as i32).prop_flat_map(|k| prop_oneof![Just(k), Just(-k)]);
        prop::collection::vec(letter, 0..=6).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn diagram() -> impl Strategy<Value = KnotDiagram> {
    braid().prop_map(|b| b.close())
}

fn unit() -> impl Strategy<Value = Complex> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex::from_polar(1.0, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn braid_text_round_trips(b in braid()) {
        let back: BraidWord = b.to_string().parse().unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn pd_text_round_trips(d in diagram()) {
        prop_assert_eq!(parse_pd(&d.to_pd()).unwrap(), d.clone());
        prop_assert_eq!(parse_diagram(&d.to_pd()).unwrap(), d);
    }

    #[test]
    fn mirror_negates_writhe_and_inverts_q(d in diagram(), q in unit()) {
        let m = d.mirror();
        prop_assert_eq!(m.writhe(), -d.writhe());
        prop_assert_eq!((m.n_plus(), m.n_minus()), (d.n_minus(), d.n_plus()));
        let jm = jones(&m, DEFAULT_CAP).unwrap().eval(q);
        let jd = jones(&d, DEFAULT_CAP).unwrap().eval(q.inv());
        prop_assert!((jm - jd).norm() < 1e-9);
    }

    #[test]
    fn state_sum_matches_skein(d in diagram()) {
        prop_assert_eq!(p_of(&bracket_q(&d, DEFAULT_CAP).unwrap()), oracle::skein_bracket_q(&d));
    }

    #[test]
    fn complexes_square_to_zero(d in diagram()) {
        for alg in [FrobeniusAlgebra::Khovanov, FrobeniusAlgebra::Lee] {
            let cx = build_complex::<i64>(&d, alg, DEFAULT_CAP).unwrap();
            prop_assert!(cx.check_d_squared().is_ok());
        }
        let cx = build_complex::<i64>(&d, FrobeniusAlgebra::Khovanov, DEFAULT_CAP).unwrap();
        prop_assert!(cx.respects_quantum_grading(true));
        prop_assert_eq!(p_of(&cx.euler_polynomial()), oracle::skein_bracket_q(&d));
    }

    #[test]
    fn universal_coefficients(d in diagram()) {
        let z = khovanov_homology(&d, Coefficients::Integers, DEFAULT_CAP).unwrap();
        let q = khovanov_homology(&d, Coefficients::Rationals, DEFAULT_CAP).unwrap();
        let f2 = khovanov_homology(&d, Coefficients::F2, DEFAULT_CAP).unwrap();
        let two = |i: i32, j: i32| z.torsion(i, j).iter().filter(|t| t.is_power_of_two()).count();
        let keys: std::collections::BTreeSet<(i32, i32)> =
            z.entries().keys().chain(f2.entries().keys()).chain(q.entries().keys()).copied().collect();
        for (i, j) in keys {
            prop_assert_eq!(q.rank(i, j), z.rank(i, j));
            prop_assert_eq!(f2.rank(i, j), z.rank(i, j) + two(i, j) + two(i + 1, j));
        }
        prop_assert_eq!(p_of(&q.poincare().at_t_minus_one()), p_of(&jones(&d, DEFAULT_CAP).unwrap()));
    }

    #[test]
    fn mirror_reflects_rational_homology(d in diagram()) {
        let a = khovanov_homology(&d, Coefficients::Rationals, DEFAULT_CAP).unwrap();
        let b = khovanov_homology(&d.mirror(), Coefficients::Rationals, DEFAULT_CAP).unwrap();
        prop_assert_eq!(b, a.reflected());
    }

    #[test]
    fn trace_identity(d in diagram(), q in unit()) {
        let u = khlab::quantum::build_unitary(&d, q, DEFAULT_CAP).unwrap();
        let j = jones(&d, DEFAULT_CAP).unwrap().eval(q);
        prop_assert!((u.trace() - j).norm() < 1e-9);
    }

    #[test]
    fn smith_form_matches_minors(rows in 1usize..=4, cols in 1usize..=4, seed in prop::collection::vec(-6i64..=6, 16)) {
        let dense: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c]).collect()).collect();
        let m = SparseMatrix::<Integer>::from_dense(
            &dense.iter().map(|r| r.iter().map(|&v| Integer::from(v)).collect()).collect::<Vec<_>>(),
        );
        let got: Vec<String> = smith_normal_form(&m).invariants.iter().map(|v| v.to_string()).collect();
        let wide: Vec<Vec<i128>> = dense.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
        let want: Vec<String> = oracle::brute_invariants(&wide).iter().map(|v| v.abs().to_string()).collect();
        prop_assert_eq!(got, want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn moves_preserve_homology(b in braid(), pick in any::<prop::sample::Index>(), r1 in any::<bool>()) {
        let d = b.close();
        prop_assume!(d.crossing_count() <= 5);
        let mv = if r1 { Move::R1Plus } else { Move::R2 };
        let moved: Vec<KnotDiagram> = sites(&d, mv).into_iter().filter_map(|s| d.apply(mv, s).ok()).collect();
        prop_assume!(!moved.is_empty());
        let e = pick.get(&moved);
        for coeff in [Coefficients::Rationals, Coefficients::F2] {
            let a = khovanov_homology(&d, coeff, DEFAULT_CAP).unwrap();
            let b = khovanov_homology(e, coeff, DEFAULT_CAP).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
