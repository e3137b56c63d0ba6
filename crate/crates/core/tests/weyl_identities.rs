//! Cross-checks of the operator-identity verifiers at desk scale: every
//! report here is compared against an independent route (direct polynomial
//! application, hand-frozen values, or the character side).

use hurwitz_core::matrix::{seeded_ac_pair, seeded_invertible, ExactMatrix};
use hurwitz_core::scalar::{int, ratio, Scalar};
use hurwitz_core::weyl::{
    commutator_residuals, verify_commutator, verify_lemma_l1, verify_mmn_eigen,
    verify_schur_pairing, verify_star, verify_three_point, BSide, CostCaps, FockPoly, NormalOp,
    PolyMatrix, VarSpace,
};
use hurwitz_core::{Error, Partition};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn caps() -> CostCaps {
    CostCaps::default()
}

/// Direct-application reference for the commutator: apply both orders to
/// every monomial of degree <= dmax and collect nonzero differences.
fn direct_commutator_residuals(
    op_l: &NormalOp,
    op_r: &NormalOp,
    dmax: u32,
) -> Vec<(u32, String, FockPoly)> {
    let space = op_l.space();
    let n = space.n as usize;
    let nv = n * n;
    // Enumerate monomials of each degree as exponent vectors.
    fn monos(nv: usize, deg: u32) -> Vec<Vec<u32>> {
        fn rec(nv: usize, i: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == nv {
                if left == 0 {
                    out.push(acc.clone());
                }
                return;
            }
            for e in 0..=left {
                acc.push(e);
                rec(nv, i + 1, left - e, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(nv, 0, deg, &mut Vec::new(), &mut out);
        out
    }
    let mut residuals = Vec::new();
    for deg in 0..=dmax {
        for exps in monos(nv, deg) {
            let mut f = FockPoly::one(space);
            for (var, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    let (row, col) = ((var / n) as u8, (var % n) as u8);
                    f = &f * &FockPoly::var(space, 0, row, col);
                }
            }
            let a = op_l.apply(&op_r.apply(&f).unwrap()).unwrap();
            let b = op_r.apply(&op_l.apply(&f).unwrap()).unwrap();
            let diff = &a - &b;
            if !diff.is_zero() {
                residuals.push((deg, format!("{f}"), diff));
            }
        }
    }
    residuals
}

#[test]
fn commutator_matrix_route_matches_direct_application() {
    // Commuting pair: B = A.
    let a = seeded_invertible(2, 11);
    let h_mu = NormalOp::powersum_hamiltonian(&p("[2]"), &a, &caps()).unwrap();
    let h_nu = NormalOp::powersum_hamiltonian(&p("[1,1]"), &a, &caps()).unwrap();
    let (res, _) = commutator_residuals(&h_mu, &h_nu, 3).unwrap();
    assert!(res.is_empty());
    assert!(direct_commutator_residuals(&h_mu, &h_nu, 3).is_empty());

    // Non-commuting pair: independent generic A and B. Both routes must
    // see a residual on the same degrees.
    let b = seeded_invertible(2, 12);
    let h_b = NormalOp::powersum_hamiltonian(&p("[1]"), &b, &caps()).unwrap();
    let h_a = NormalOp::powersum_hamiltonian(&p("[1]"), &a, &caps()).unwrap();
    let (res, _) = commutator_residuals(&h_b, &h_a, 2).unwrap();
    let direct = direct_commutator_residuals(&h_b, &h_a, 2);
    assert!(!res.is_empty());
    assert!(!direct.is_empty());
    let matrix_degrees: std::collections::BTreeSet<u32> = res.iter().map(|r| r.degree).collect();
    let direct_degrees: std::collections::BTreeSet<u32> =
        direct.iter().map(|(d, _, _)| *d).collect();
    assert_eq!(matrix_degrees, direct_degrees);
}

#[test]
fn commutator_reports() {
    let a = seeded_invertible(2, 7);
    // An operator commutes with itself.
    let r = verify_commutator(&p("[2]"), &p("[2]"), &a, BSide::SameAsA, 3, &caps()).unwrap();
    assert!(r.is_exact());
    // The two cases with a commutation guarantee: B = A and B = I.
    let r = verify_commutator(&p("[1]"), &p("[2]"), &a, BSide::SameAsA, 3, &caps()).unwrap();
    assert!(r.is_exact(), "{:?}", r.residual_terms);
    let r = verify_commutator(&p("[2]"), &p("[1,1]"), &a, BSide::Identity, 3, &caps()).unwrap();
    assert!(r.is_exact(), "{:?}", r.residual_terms);
    // Generic independent B is exposed for exploration and does fail.
    let b = seeded_invertible(2, 8);
    let r = verify_commutator(&p("[1]"), &p("[1]"), &a, BSide::Matrix(&b), 2, &caps()).unwrap();
    assert!(!r.is_exact());
    assert!(!r.residual_terms.is_empty());
    assert!(r.details["max_residual"] != "0");
}

#[test]
fn schur_hamiltonians_commute_with_powersum_hamiltonians() {
    let shapes = ["[1]", "[2]", "[1,1]", "[3]", "[2,1]", "[1,1,1]"];
    // Exhaustive at n = 2 over all shapes of weight <= 3.
    for seed in [21u64, 22] {
        let a = seeded_invertible(2, seed);
        let schur_ops: Vec<NormalOp> = shapes
            .iter()
            .map(|s| NormalOp::schur_hamiltonian(&p(s), &a, &caps()).unwrap())
            .collect();
        for mu in &shapes {
            let h_op = NormalOp::powersum_hamiltonian(&p(mu), &a, &caps()).unwrap();
            for (s, lam) in schur_ops.iter().zip(&shapes) {
                let (res, _) = commutator_residuals(&h_op, s, 3).unwrap();
                assert!(res.is_empty(), "seed={seed} mu={mu} lambda={lam}");
            }
        }
        for (i, s1) in schur_ops.iter().enumerate() {
            for s2 in &schur_ops[i..] {
                let (res, _) = commutator_residuals(s1, s2, 3).unwrap();
                assert!(res.is_empty(), "schur-schur seed={seed}");
            }
        }
    }
    // Spot checks at n = 3.
    let a = seeded_invertible(3, 23);
    let s_op = NormalOp::schur_hamiltonian(&p("[2,1]"), &a, &caps()).unwrap();
    for mu in ["[2]", "[3]"] {
        let h_op = NormalOp::powersum_hamiltonian(&p(mu), &a, &caps()).unwrap();
        let (res, _) = commutator_residuals(&h_op, &s_op, 3).unwrap();
        assert!(res.is_empty(), "n=3 mu={mu}");
    }
}

#[test]
fn lemma_l1_reports() {
    // d = 1: both sides are tr(FC).
    for n in [2usize, 3] {
        let f = seeded_invertible(n, 31);
        let c = seeded_invertible(n, 32);
        let r = verify_lemma_l1(&p("[1]"), &p("[1]"), &f, &c, &caps()).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.details["lhs"], f.mul(&c).unwrap().trace().to_string());
    }
    // Mixed profiles at d = 2.
    let f = seeded_invertible(2, 33);
    let c = seeded_invertible(2, 34);
    let r = verify_lemma_l1(&p("[2]"), &p("[1,1]"), &f, &c, &caps()).unwrap();
    assert!(r.is_exact());
    // Degree mismatch: pairing vanishes and the sum is empty.
    let r = verify_lemma_l1(&p("[2]"), &p("[2,1]"), &f, &c, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["lhs"], "0");
    assert!(r.details.contains_key("note"));
}

#[test]
fn schur_pairing_reports() {
    let f = seeded_invertible(2, 41);
    let c = seeded_invertible(2, 42);
    let r = verify_schur_pairing(&p("[1]"), &p("[1]"), &c, &f, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["lhs"], c.mul(&f).unwrap().trace().to_string());

    // Orthogonality: different shapes pair to zero.
    let r = verify_schur_pairing(&p("[2]"), &p("[1,1]"), &c, &f, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["lhs"], "0");

    // lambda = mu = (2) on identity matrices: 2 s_(2)(I_n)/1 = n(n+1).
    for n in [2usize, 3] {
        let id = ExactMatrix::identity(n);
        let r = verify_schur_pairing(&p("[2]"), &p("[2]"), &id, &id, &caps()).unwrap();
        assert!(r.is_exact());
        let expect = int((n * (n + 1)) as i64);
        assert_eq!(r.details["lhs"], expect.to_string());
    }
}

#[test]
fn three_point_reports() {
    // d = 1: action produces tr(ZAC) with coefficient 1.
    let a = seeded_invertible(2, 51);
    let c = seeded_invertible(2, 52);
    let r = verify_three_point(&p("[1]"), &p("[1]"), &a, &c, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["mode"], "coefficient-extraction");
    assert!(r.details["coefficient [1]"].starts_with("extracted 1,"));

    // The worked d = 2 example: H((2),(1,1),(2)) = 1/2, the other vanishes.
    let id = ExactMatrix::identity(2);
    let r = verify_three_point(&p("[2]"), &p("[1,1]"), &id, &id, &caps()).unwrap();
    assert!(r.is_exact(), "{:?}", r.residual_terms);
    assert_eq!(r.details["mode"], "coefficient-extraction");
    assert!(r.details["coefficient [2]"].starts_with("extracted 1/2,"));
    assert!(r.details["coefficient [1,1]"].starts_with("extracted 0,"));

    // Weight mismatch is a reported precondition violation.
    assert!(matches!(
        verify_three_point(&p("[2]"), &p("[2,1]"), &id, &id, &caps()),
        Err(Error::WeightMismatch(_))
    ));

    // Size below the degree degrades to the evaluated identity.
    let id1 = ExactMatrix::identity(1);
    let r = verify_three_point(&p("[2]"), &p("[2]"), &id1, &id1, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["mode"], "evaluated-identity");
}

#[test]
fn mmn_eigen_anchors() {
    let id = ExactMatrix::identity(2);
    let cases = [
        ("[1,1]", "[2]", int(2)),
        ("[2]", "[2]", int(2)),
        ("[2]", "[1,1]", int(-2)),
    ];
    for (delta, lambda, eigen) in cases {
        let r = verify_mmn_eigen(&p(delta), &p(lambda), &id, &id, &caps()).unwrap();
        assert!(r.is_exact(), "delta={delta} lambda={lambda}");
        assert_eq!(r.details["eigenvalue"], eigen.to_string());
        assert_eq!(r.details["eigenvalue_measured"], eigen.to_string());
    }
}

#[test]
fn mmn_eigen_with_generated_fixed_point_pairs() {
    for n in [2usize, 3] {
        for seed in [61u64, 62] {
            let (a, c) = seeded_ac_pair(n, n.min(2), seed);
            for (delta, lambda) in [("[2]", "[2]"), ("[2]", "[1,1]"), ("[1,1]", "[1,1]")] {
                let r = verify_mmn_eigen(&p(delta), &p(lambda), &a, &c, &caps()).unwrap();
                assert!(r.is_exact(), "n={n} seed={seed} {delta} {lambda}");
                assert!(
                    r.details.contains_key("eigenvalue_measured"),
                    "degenerate run n={n} seed={seed} {delta} {lambda}"
                );
            }
        }
    }
}

#[test]
fn mmn_eigen_preconditions() {
    let a = seeded_invertible(2, 71);
    let c = seeded_invertible(2, 72);
    // Generic A, C do not satisfy AC = C.
    assert!(matches!(
        verify_mmn_eigen(&p("[2]"), &p("[2]"), &a, &c, &caps()),
        Err(Error::Precondition(_))
    ));
    let id = ExactMatrix::identity(2);
    assert!(matches!(
        verify_mmn_eigen(&p("[2]"), &p("[3]"), &id, &id, &caps()),
        Err(Error::WeightMismatch(_))
    ));
    assert!(matches!(
        verify_mmn_eigen(&p("[1,1,1]"), &p("[1,1,1]"), &id, &id, &caps()),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn star_one_leg_degenerates_to_mmn() {
    let id = ExactMatrix::identity(2);
    for (mu, lambda, eigen) in [
        ("[2]", "[2]", int(2)),
        ("[2]", "[1,1]", int(-2)),
        ("[1,1]", "[2]", int(2)),
    ] {
        let r = verify_star(
            &p(lambda),
            &[p(mu)],
            std::slice::from_ref(&id),
            std::slice::from_ref(&id),
            &caps(),
        )
        .unwrap();
        assert!(r.is_exact(), "mu={mu} lambda={lambda}");
        assert_eq!(r.details["prefactor_measured"], eigen.to_string());
        assert_eq!(
            r.details["prefactor_per_leg_eigenvalues"],
            eigen.to_string()
        );
        let mmn = verify_mmn_eigen(&p(mu), &p(lambda), &id, &id, &caps()).unwrap();
        assert_eq!(mmn.details["eigenvalue"], r.details["prefactor_measured"]);
    }
}

#[test]
fn star_two_legs() {
    let id = ExactMatrix::identity(2);
    let ids = [id.clone(), id.clone()];
    // lambda = (1): eigenvalue product 1 * 1 on tr(Z1 Z2).
    let r = verify_star(&p("[1]"), &[p("[1]"), p("[1]")], &ids, &ids, &caps()).unwrap();
    assert!(r.is_exact());
    assert_eq!(r.details["prefactor_measured"], "1");
    assert_eq!(r.details["proportional"], "true");

    // Degree 2: per-leg eigenvalues (2!/dim)chi_lambda(mu_i) multiply.
    // lambda = (2): chi at (2) and at (1,1) are both 1, so 2 * 2 = 4.
    let r = verify_star(&p("[2]"), &[p("[2]"), p("[1,1]")], &ids, &ids, &caps()).unwrap();
    assert!(r.is_exact(), "{:?}", r.residual_terms);
    let expect: Scalar = int(4);
    assert_eq!(r.details["prefactor_measured"], expect.to_string());
    assert_eq!(
        r.details["prefactor_per_leg_eigenvalues"],
        expect.to_string()
    );
    // The single dim-fraction form would give (1/2) * 1 * 1 = 1/2 instead.
    assert_eq!(
        r.details["prefactor_if_single_dim_fraction"],
        ratio(1, 2).to_string()
    );

    // lambda = (1,1): chi at (2) is -1, so the product is 2 * (-2) = -4.
    let r = verify_star(&p("[1,1]"), &[p("[2]"), p("[1,1]")], &ids, &ids, &caps()).unwrap();
    assert!(r.is_exact(), "{:?}", r.residual_terms);
    assert_eq!(r.details["prefactor_measured"], int(-4).to_string());
}

#[test]
fn degree_preservation_and_vacuum() {
    let a = seeded_invertible(3, 81);
    for mu in ["[1]", "[2]", "[2,1]", "[3]"] {
        let op = NormalOp::powersum_hamiltonian(&p(mu), &a, &caps()).unwrap();
        assert!(op.is_degree_preserving(), "mu={mu}");
        let space = VarSpace::single(3);
        let z = PolyMatrix::vars(space, 0);
        let f = &z.trace() * &z.mul(&z).trace();
        let img = op.apply(&f).unwrap();
        if !img.is_zero() {
            assert_eq!(img.homogeneous_degree(), Some(3), "mu={mu}");
        }
        assert!(op.apply(&FockPoly::one(space)).unwrap().is_zero());
    }
}

#[test]
fn reports_serialize_deterministically() {
    let id = ExactMatrix::identity(2);
    let r = verify_mmn_eigen(&p("[2]"), &p("[2]"), &id, &id, &caps()).unwrap();
    let a = serde_json::to_string_pretty(&r).unwrap();
    let r2 = verify_mmn_eigen(&p("[2]"), &p("[2]"), &id, &id, &caps()).unwrap();
    let b = serde_json::to_string_pretty(&r2).unwrap();
    assert_eq!(a, b);
    assert!(a.contains("\"identity\": \"mmn\""));
    assert!(a.contains("exact-zero"));
}
