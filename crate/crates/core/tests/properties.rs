mod common;

use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

use nl_dichromate::exact::{
    det_rat, det_sign_eps, rank_rat, rat, standard_form, EpsMatrix, EpsPoly, RatMatrix,
};
use nl_dichromate::om::{
    cocircuits, dual_realization, nonneg_face_lattice, RealizedOM, SignVector,
};
use nl_dichromate::poly::TriPoly;
use nl_dichromate::union::minor;

fn int_matrix(rows: usize, cols: usize, range: i64) -> impl Strategy<Value = RatMatrix> {
    prop::collection::vec(-range..=range, rows * cols)
        .prop_map(move |v| RatMatrix::new(rows, cols, v.into_iter().map(rat).collect()).unwrap())
}

fn any_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| int_matrix(r, c, 3))
}

fn eps_poly() -> impl Strategy<Value = EpsPoly> {
    prop::collection::vec((0u32..4, -3i64..=3), 0..3)
        .prop_map(|t| EpsPoly::from_terms(t.into_iter().map(|(d, c)| (d, rat(c)))))
}

fn eps_square(n: usize) -> impl Strategy<Value = EpsMatrix> {
    prop::collection::vec(eps_poly(), n * n).prop_map(move |e| EpsMatrix::new(n, n, e).unwrap())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn parity(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Determinant over `ℚ[ε]` by the Leibniz formula.
fn leibniz(m: &EpsMatrix) -> EpsPoly {
    let n = m.rows();
    let mut total = EpsPoly::zero();
    for p in permutations(n) {
        let mut term = EpsPoly::constant(rat(parity(&p)));
        for (i, &j) in p.iter().enumerate() {
            term = &term * m.get(i, j);
        }
        total = &total + &term;
    }
    total
}

/// A realized matroid from a random matrix with at least one nonzero entry.
fn realized(max_rows: usize, max_cols: usize) -> impl Strategy<Value = RealizedOM> {
    any_matrix(max_rows, max_cols)
        .prop_filter("needs a nonzero entry", |m| rank_rat(m) > 0)
        .prop_map(|m| RealizedOM::from_rat_matrix(&m).unwrap())
}

fn tri_poly() -> impl Strategy<Value = TriPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -4i64..=4), 0..5).prop_map(|t| {
        let mut p = TriPoly::zero();
        for (e, c) in t {
            p.add_term(e, c.into());
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn eps_determinant_sign_matches_leibniz(m in (1usize..=4).prop_flat_map(eps_square)) {
        prop_assert_eq!(det_sign_eps(&m).unwrap(), leibniz(&m).sign_near_zero());
    }

    #[test]
    fn constant_eps_determinant_matches_rational(m in (1usize..=5).prop_flat_map(|n| int_matrix(n, n, 4))) {
        let want = det_rat(&m).unwrap();
        let sign = if want.is_positive() { 1 } else if want.is_negative() { -1 } else { 0 };
        prop_assert_eq!(det_sign_eps(&EpsMatrix::from_rat(&m)).unwrap(), sign);
    }

    #[test]
    fn rank_equals_transpose_rank(m in any_matrix(5, 6)) {
        prop_assert_eq!(rank_rat(&m), rank_rat(&m.transpose()));
    }

    #[test]
    fn standard_form_basis_is_independent(m in any_matrix(4, 6)) {
        prop_assume!(rank_rat(&m) > 0);
        let sf = standard_form(&m, None).unwrap();
        let r = sf.rank();
        prop_assert_eq!(r, rank_rat(&m));
        let basis = m.select_columns(sf.basis());
        prop_assert_eq!(rank_rat(&basis), r);
        // same column matroid and orientation as the input
        let mut inverse = vec![0; sf.perm.len()];
        for (k, &e) in sf.perm.iter().enumerate() {
            inverse[e] = k;
        }
        let back = RealizedOM::from_rat_matrix(&sf.matrix().select_columns(&inverse)).unwrap();
        let orig = RealizedOM::from_rat_matrix(&m).unwrap();
        prop_assert_eq!(back.chirotope(), orig.chirotope());
    }

    #[test]
    fn chirotope_alternates(om in realized(3, 6), seed in any::<u64>()) {
        let r = om.rank();
        prop_assume!(r >= 2);
        let chi = om.chirotope();
        let n = om.ground_size();
        let mut tuple: Vec<usize> = (0..r).map(|i| ((seed >> (8 * i)) as usize) % n).collect();
        let before = chi.sign_of(&tuple);
        tuple.swap(0, 1);
        prop_assert_eq!(chi.sign_of(&tuple), -before);
    }

    #[test]
    fn cocircuit_supports_are_minimal(om in realized(3, 6)) {
        let c = cocircuits(&om);
        for d in &c {
            for e in &c {
                let (a, b) = (d.support(), e.support());
                prop_assert!(!(a != b && a & b == a), "{} inside {}", d, e);
            }
        }
    }

    #[test]
    fn double_dual_keeps_chirotope(om in realized(3, 6)) {
        let h = standard_form(&om.to_rat().unwrap(), None).unwrap();
        let base = RealizedOM::from_rat_matrix(&h.matrix()).unwrap();
        let once = dual_realization(&base).unwrap();
        // (−Cᵀ | I) has its identity block last, so dualize it in general form
        let again = once.dual().unwrap();
        prop_assert_eq!(again.chirotope().bases(), base.chirotope().bases());
        prop_assert_eq!(again.chirotope(), base.chirotope());
    }

    #[test]
    fn composition_closure_is_stable(om in realized(3, 6)) {
        let lattice = nonneg_face_lattice(&om).unwrap();
        let positive: Vec<SignVector> = cocircuits(&om).into_iter().filter(|d| d.is_nonnegative()).collect();
        for x in lattice.elements() {
            for d in &positive {
                prop_assert!(lattice.contains(&x.compose(d).unwrap()));
            }
        }
    }

    #[test]
    fn lattice_rank_is_chain_length(om in realized(3, 6)) {
        let lattice = nonneg_face_lattice(&om).unwrap();
        let ranks: Vec<usize> = lattice.iter().map(|(_, r, _)| r).collect();
        prop_assert_eq!(ranks, lattice.chain_lengths());
        prop_assert!(lattice.mobius_identity_failures().is_empty());
    }

    #[test]
    fn trivial_minor_is_identity(om in realized(3, 6)) {
        let same = minor(&om, 0, 0).unwrap();
        prop_assert_eq!(same.chirotope(), om.chirotope());
    }

    #[test]
    fn composition_is_associative(v in prop::collection::vec(-1i8..=1, 18)) {
        let sv = |s: &[i8]| SignVector::from_signs(&s.iter().map(|&x| nl_dichromate::om::Sign::from_i8(x)).collect::<Vec<_>>());
        let (a, b, c) = (sv(&v[..6]), sv(&v[6..12]), sv(&v[12..]));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn polynomial_ring_laws(a in tri_poly(), b in tri_poly(), c in tri_poly()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in tri_poly(), b in tri_poly(), x in -3i64..=3, y in -3i64..=3, z in -3i64..=3) {
        prop_assert_eq!((&a * &b).evaluate(x, y, z), a.evaluate(x, y, z) * b.evaluate(x, y, z));
        prop_assert_eq!(a.specialize(y, z).evaluate(x, 0, 0), a.evaluate(x, y, z));
    }

    #[test]
    fn polynomial_json_round_trip(a in tri_poly()) {
        prop_assert_eq!(&TriPoly::from_json(&a.to_json()).unwrap(), &a);
        let shown = a.to_string();
        prop_assert_eq!(shown == "0", a.is_zero());
    }
}

#[test]
fn big_coefficients_stay_exact() {
    let p = TriPoly::from_x_coeffs(&[i64::MAX, 1]);
    let sq = &p * &p;
    let want = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
    assert_eq!(sq.coeff((0, 0, 0)), want);
}

#[test]
fn suite_matroids_stay_within_six_elements() {
    let suite = common::matroid_suite();
    assert!(suite.len() >= 20);
    assert!(suite.iter().all(|(_, m)| m.ground_size() <= 6));
}
