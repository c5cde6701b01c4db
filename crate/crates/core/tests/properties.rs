mod common;

use proptest::prelude::*;
use serde_json::{json, Value};

use common::{rank_mod_p, rank_over_q, tuples_avoiding};
use higher_cohomology::dims::{bar_n, check_signature, n_g, sequence_consistency};
use higher_cohomology::es::{pn_matrix_exact, Mat2};
use higher_cohomology::finite::{augmentation_powers, stabilization_report, FiniteGroup, ModuleRep};
use higher_cohomology::linear::{rank, rat, Field, PrimeField, Rational, Rationals, Subspace};
use higher_cohomology::magnus::{expand_word, Monomial, MonomialSpace, TruncatedSeries, Word};
use higher_cohomology::surface::{is_admissible, relator_ideal_image, rewrite_normal_form, GenusContext};
use higher_cohomology::workbench::report::stable_json;

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6).prop_flat_map(|cols| prop::collection::vec(prop::collection::vec(-3i64..=3, cols), 0..6))
}

fn to_q(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

fn cols(rows: &[Vec<i64>]) -> usize {
    rows.first().map_or(1, Vec::len)
}

fn signed_word(max_gen: i64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..=max_gen, any::<bool>()).prop_map(|(g, inv)| if inv { -g } else { g }), 0..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn span_matches_rank_oracle_and_is_idempotent(rows in int_matrix()) {
        let n = cols(&rows);
        let u = Subspace::span(Rationals, &to_q(&rows), n).unwrap();
        prop_assert_eq!(u.dim(), rank_over_q(&rows));
        let again = Subspace::span(Rationals, u.basis(), n).unwrap();
        prop_assert_eq!(&again, &u);
        for r in to_q(&rows) {
            prop_assert!(u.contains(&r).unwrap());
        }
    }

    #[test]
    fn sum_is_span_of_union(a in int_matrix(), extra in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..4)) {
        let n = cols(&a);
        let b: Vec<Vec<i64>> = extra.into_iter().map(|r| r[..n].to_vec()).collect();
        let u = Subspace::span(Rationals, &to_q(&a), n).unwrap();
        let w = Subspace::span(Rationals, &to_q(&b), n).unwrap();
        let uw = u.sum(&w).unwrap();
        prop_assert_eq!(&uw, &w.sum(&u).unwrap());
        let stacked: Vec<Vec<i64>> = a.iter().chain(&b).cloned().collect();
        prop_assert_eq!(uw.dim(), rank_over_q(&stacked));
        prop_assert!(u.is_subspace_of(&uw).unwrap() && w.is_subspace_of(&uw).unwrap());
    }

    #[test]
    fn prime_field_rank_matches_oracle(rows in int_matrix(), pi in 0usize..4) {
        let p = [2u32, 3, 5, 7][pi];
        let f = PrimeField::new(p).unwrap();
        let reduced: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p as i64) as u32).collect()).collect();
        let r = rank(f, &reduced, cols(&rows)).unwrap();
        prop_assert_eq!(r, rank_mod_p(&rows, p as i64));
        prop_assert!(r <= rank(Rationals, &to_q(&rows), cols(&rows)).unwrap());
    }

    #[test]
    fn magnus_expansion_is_multiplicative(u in signed_word(3, 5), v in signed_word(3, 5)) {
        let cap = 4;
        let (wu, wv) = (Word::from_signed(&u).unwrap(), Word::from_signed(&v).unwrap());
        let lhs = expand_word(&wu.concat(&wv), cap, 3).unwrap();
        let rhs = expand_word(&wu, cap, 3).unwrap().mul(&expand_word(&wv, cap, 3).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let inv = expand_word(&wu.inverse(), cap, 3).unwrap();
        prop_assert_eq!(expand_word(&wu, cap, 3).unwrap().mul(&inv).unwrap(), TruncatedSeries::one(cap));
    }

    #[test]
    fn normal_form_is_a_projection(
        g in 1usize..=2,
        terms in prop::collection::vec((prop::collection::vec(1usize..=4, 0..=3), -3i64..=3), 0..6),
    ) {
        let cap = 3;
        let letters = 2 * g;
        let series = TruncatedSeries::from_terms(
            cap,
            terms.into_iter().map(|(m, c)| (Monomial(m.into_iter().map(|x| (x - 1) % letters + 1).collect()), rat(c))),
        );
        let ctx = GenusContext::new(g, cap).unwrap();
        let nf = rewrite_normal_form(&series, &ctx).unwrap();
        prop_assert!(nf.series().terms().all(|(m, _)| is_admissible(&m.0)));
        prop_assert_eq!(rewrite_normal_form(nf.series(), &ctx).unwrap(), nf.clone());
        // The difference lies in the relator ideal.
        let space = MonomialSpace::new(letters, cap);
        let diff = &series - nf.series();
        prop_assert!(relator_ideal_image(g, cap).unwrap().contains(&space.vector(&diff).unwrap()).unwrap());
    }

    #[test]
    fn finite_tower_routes_agree(n in 2usize..8, fi in 0usize..4, q_max in 1usize..4, dihedral in any::<bool>()) {
        let gp = if dihedral {
            // Dihedral group of order 2n acting on n points.
            let r: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            let s: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
            FiniteGroup::from_permutations("D", &[r, s]).unwrap()
        } else {
            FiniteGroup::cyclic(n).unwrap()
        };
        fn check<F: Field>(gp: &FiniteGroup, f: F, q_max: usize) -> Result<(), TestCaseError> {
            let report = stabilization_report(gp, &ModuleRep::regular(gp, f.clone()).unwrap(), q_max).unwrap();
            prop_assert!(report.routes_agree && report.ascending);
            prop_assert!(report.passes());
            let powers = augmentation_powers(gp, f, q_max).unwrap();
            prop_assert_eq!(powers[0].dim(), gp.order() - 1);
            for w in powers.windows(2) {
                prop_assert!(w[1].is_subspace_of(&w[0]).unwrap());
            }
            Ok(())
        }
        match fi {
            0 => check(&gp, Rationals, q_max)?,
            k => check(&gp, PrimeField::new([2, 3, 5][k - 1]).unwrap(), q_max)?,
        }
    }

    #[test]
    fn dimension_identities(g in 0u64..=4, s in 0u64..=4, ni in 0usize..3, q in 1u32..=5) {
        prop_assume!(check_signature(g, s).is_ok() && 2 * g + s > 2 || (g, s) == (1, 0));
        let n = [0, 2, 4][ni];
        prop_assert_eq!(n_g(g, q), tuples_avoiding(g, q));
        prop_assert_eq!(bar_n(g, q) - bar_n(g, q - 1), n_g(g, q));
        let report = sequence_consistency(g, s, n, q).unwrap();
        prop_assert!(report.all_hold());
    }

    #[test]
    fn stable_json_round_trips(
        ints in prop::collection::vec(any::<i32>(), 0..4),
        floats in prop::collection::vec(-1e6f64..1e6, 0..4),
        key in "k_[a-z]{1,6}",
    ) {
        let v = json!({ key.clone(): { "ints": ints, "floats": floats, "s": "x\"y" }, "z": null });
        let text = stable_json(&v);
        let back: Value = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(stable_json(&back), text);
        prop_assert_eq!(&back[&key]["ints"], &v[&key]["ints"]);
        for (a, b) in back[&key]["floats"].as_array().unwrap().iter().zip(v[&key]["floats"].as_array().unwrap()) {
            let (a, b) = (a.as_f64().unwrap(), b.as_f64().unwrap());
            prop_assert!((a - b).abs() <= 1e-12 * b.abs().max(1e-300));
        }
    }
}

fn gamma0_11_word_matrix(word: &[usize]) -> Mat2 {
    let gens = [Mat2::new(1, 1, 0, 1), Mat2::new(7, -2, 11, -3), Mat2::new(8, -3, 11, -4)];
    word.iter().fold(Mat2::IDENTITY, |acc, &k| {
        let g = if k < 3 { gens[k] } else { gens[k - 3].inverse() };
        acc.mul(&g).unwrap()
    })
}

fn exact_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &b[k][j]).sum()).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pn_is_a_representation(u in prop::collection::vec(0usize..6, 0..4), v in prop::collection::vec(0usize..6, 0..4), ni in 0usize..3) {
        let n = [0, 2, 4][ni];
        let (a, b) = (gamma0_11_word_matrix(&u), gamma0_11_word_matrix(&v));
        let ab = pn_matrix_exact(&a.mul(&b).unwrap(), n).unwrap();
        prop_assert_eq!(ab, exact_mul(&pn_matrix_exact(&a, n).unwrap(), &pn_matrix_exact(&b, n).unwrap()));
        prop_assert_eq!(pn_matrix_exact(&a.neg(), n).unwrap(), pn_matrix_exact(&a, n).unwrap());
    }
}
