//! Property tests for the mathematical invariants of the solver.

use proptest::prelude::*;

use slnn_core::basis::{eval_basis, orthogonality_defect, BasisOrder};
use slnn_core::expr::Expr;
use slnn_core::network::{forward, Activation, NetworkParams};
use slnn_core::problem::ProblemSpec;
use slnn_core::train::{loss, make_grid};
use slnn_core::trial::{trial_eval, IvpConditions};

fn order(m: usize) -> BasisOrder {
    BasisOrder::new(m).unwrap()
}

proptest! {
    /// (k+1) L_{k+1} = (2k+1)(2 eta - 1) L_k - k L_{k-1} for every interior k.
    #[test]
    fn basis_recurrence_consistency(eta in 0.0f64..=1.0, m in 3usize..=12) {
        let e = eval_basis(order(m), eta).unwrap();
        let x = 2.0 * eta - 1.0;
        for k in 1..m - 1 {
            let lhs = (k as f64 + 1.0) * e.values[k + 1];
            let rhs = (2.0 * k as f64 + 1.0) * x * e.values[k] - k as f64 * e.values[k - 1];
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() / scale < 1e-13);
        }
    }

    /// d1 matches a central difference of the values; d2 likewise of d1.
    #[test]
    fn basis_derivatives_match_finite_differences(eta in 0.01f64..0.99, m in 1usize..=10) {
        let h = 1e-6;
        let c = eval_basis(order(m), eta).unwrap();
        let p = eval_basis(order(m), eta + h).unwrap();
        let q = eval_basis(order(m), eta - h).unwrap();
        for k in 0..m {
            let fd1 = (p.values[k] - q.values[k]) / (2.0 * h);
            let tol = 1e-6 * c.d1[k].abs().max(fd1.abs()).max(1.0);
            prop_assert!((c.d1[k] - fd1).abs() < tol);
            let fd2 = (p.d1[k] - q.d1[k]) / (2.0 * h);
            let tol = 1e-6 * c.d2[k].abs().max(fd2.abs()).max(1.0);
            prop_assert!((c.d2[k] - fd2).abs() < tol);
        }
    }

    /// The trial solution pins the initial conditions for any weights.
    #[test]
    fn trial_initial_conditions_exact(
        ws in prop::collection::vec(-5.0f64..5.0, 1..8),
        g0 in -3.0f64..3.0,
        g1 in -3.0f64..3.0,
    ) {
        let conds = IvpConditions { a: 0.0, g0, g1 };
        let m = ws.len();
        let params = NetworkParams::new(ws, Activation::Tanh);
        let basis = eval_basis(order(m), 0.0).unwrap();
        let t = trial_eval(&conds, &params, &basis, 0.0).unwrap();
        prop_assert_eq!(t.xi, g0);
        prop_assert_eq!(t.dxi, g1);
        prop_assert!(t.xi_dw.iter().all(|&g| g == 0.0));
        prop_assert!(t.dxi_dw.iter().all(|&g| g == 0.0));
    }

    /// Identity activation makes the network exactly linear in the weights.
    #[test]
    fn identity_network_is_linear(ws in prop::collection::vec(-2.0f64..2.0, 1..6), eta in 0.0f64..=1.0) {
        let m = ws.len();
        let basis = eval_basis(order(m), eta).unwrap();
        let single = forward(&NetworkParams::new(ws.clone(), Activation::Identity), &basis).unwrap();
        let doubled_w: Vec<f64> = ws.iter().map(|w| 2.0 * w).collect();
        let doubled = forward(&NetworkParams::new(doubled_w, Activation::Identity), &basis).unwrap();
        prop_assert_eq!(doubled.n, 2.0 * single.n);
        prop_assert_eq!(doubled.dn, 2.0 * single.dn);
        prop_assert_eq!(doubled.d2n, 2.0 * single.d2n);
    }

    /// Symbolic xi-derivative agrees with a central difference in xi.
    #[test]
    fn symbolic_derivative_matches_numeric(eta in 0.1f64..0.9, xi in 0.1f64..0.9) {
        for src in [
            "xi^5",
            "xi",
            "6 + 12*eta + eta^2 + eta^3",
            "sin(xi)*eta",
            "cos(xi) + exp(xi)*eta",
            "ln(xi)/xi",
            "sqrt(xi) - xi^2/3",
            "xi*eta - xi/(1 + xi)",
        ] {
            let e = Expr::parse(src).unwrap();
            let d = e.differentiate_xi();
            let h = 1e-6;
            let fd = (e.eval(eta, xi + h).unwrap() - e.eval(eta, xi - h).unwrap()) / (2.0 * h);
            let sym = d.eval(eta, xi).unwrap();
            let tol = 1e-6 * sym.abs().max(fd.abs()).max(1.0);
            prop_assert!((sym - fd).abs() < tol, "{}: {} vs {}", src, sym, fd);
        }
    }

    /// Evaluation is deterministic: identical inputs, bitwise-identical output.
    #[test]
    fn expr_eval_deterministic(eta in 0.0f64..1.0, xi in 0.1f64..2.0) {
        let e = Expr::parse("xi^5 + sin(eta)*cos(xi) - exp(eta)/sqrt(xi)").unwrap();
        let a = e.eval(eta, xi).unwrap();
        let b = e.eval(eta, xi).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
    }

    /// Loss is invariant (to rounding) under permutation of the grid.
    #[test]
    fn loss_permutation_invariant(ws in prop::collection::vec(-1.0f64..1.0, 5), rot in 0usize..10) {
        let problem = ProblemSpec::builtin("example1").unwrap();
        let grid = make_grid(&problem, 10).unwrap();
        let mut rotated = grid.clone();
        rotated.rotate_left(rot % grid.len());
        let params = NetworkParams::new(ws, Activation::Tanh);
        let a = loss(&problem, &problem.conditions, &params, &grid).unwrap();
        let b = loss(&problem, &problem.conditions, &params, &rotated).unwrap();
        let tol = 1e-12 * a.abs().max(1.0);
        prop_assert!((a - b).abs() <= tol);
    }
}

#[test]
fn pretty_print_round_trip_corpus() {
    let corpus = [
        "xi^5",
        "xi",
        "eta",
        "1",
        "0.25",
        "2e3",
        "6 + 12*eta + eta^2 + eta^3",
        "(1 + eta^2/3)^(-1/2)",
        "eta^2 + eta^3",
        "-xi",
        "--xi",
        "-xi^2",
        "xi - eta - 1",
        "xi - (eta - 1)",
        "xi*(eta + 1)",
        "xi*eta + 1",
        "(xi + 1)/(eta + 2)",
        "xi/eta/2",
        "xi/(eta/2)",
        "sin(xi)",
        "cos(eta*xi)",
        "exp(-eta)",
        "ln(xi + 1)",
        "sqrt(eta)*sqrt(xi)",
        "sin(cos(exp(xi)))",
        "xi^2^2",
        "(xi + eta)^3",
        "(-xi)^2",
        "2*xi + 3*eta - 4/xi",
        "1 + 2 + 3 + 4",
        "1 - 2 - 3 - 4",
        "2*3*4",
        "2/3/4",
        "xi^0.5",
        "xi^-2",
        "eta*xi*eta",
        "sin(xi)/cos(xi)",
        "exp(xi^2)",
        "1/(1 + exp(-xi))",
        "sqrt(1 + xi^2)",
        "eta^3 - 3*eta^2 + 3*eta - 1",
        "(((xi)))",
        "-(xi + eta)",
        "xi - -eta",
        "0.5*xi^4 - 0.25*xi^2",
        "ln(exp(xi))",
        "cos(xi)^2 + sin(xi)^2",
        "eta/3 + xi/7",
        "2^3",
        "xi*2 + eta*3",
        "(xi^2 + eta^2)^(1/2)",
    ];
    assert!(corpus.len() >= 50);
    for src in corpus {
        let parsed = Expr::parse(src).unwrap();
        let printed = parsed.to_string();
        let reparsed = Expr::parse(&printed).unwrap();
        assert_eq!(parsed, reparsed, "`{src}` printed as `{printed}`");
    }
}

#[test]
fn orthogonality_defect_small_for_all_orders() {
    for m in 1..=10 {
        let defect = orthogonality_defect(order(m), 64).unwrap();
        assert!(defect <= 1e-12, "m = {m}: defect {defect:e}");
    }
}

#[test]
fn exact_solutions_satisfy_the_residual() {
    // closed-form derivatives, independent of the trial-solution machinery
    struct Closed {
        name: &'static str,
        xi: fn(f64) -> f64,
        dxi: fn(f64) -> f64,
        d2xi: fn(f64) -> f64,
    }
    let cases = [
        Closed {
            name: "example1",
            // xi = (1 + eta^2/3)^(-1/2)
            xi: |e| (1.0 + e * e / 3.0).powf(-0.5),
            dxi: |e| -e / 3.0 * (1.0 + e * e / 3.0).powf(-1.5),
            d2xi: |e| {
                let u = 1.0 + e * e / 3.0;
                -u.powf(-1.5) / 3.0 + e * e / 3.0 * u.powf(-2.5)
            },
        },
        Closed {
            name: "example2",
            xi: |e| e * e + e * e * e,
            dxi: |e| 2.0 * e + 3.0 * e * e,
            d2xi: |e| 2.0 + 6.0 * e,
        },
    ];
    let mut state = 0x9E37u64;
    for case in cases {
        let problem = ProblemSpec::builtin(case.name).unwrap();
        for _ in 0..50 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            let eta = 0.05 + 0.95 * ((state >> 11) as f64 / (1u64 << 53) as f64);
            let trial = slnn_core::trial::TrialEval {
                xi: (case.xi)(eta),
                dxi: (case.dxi)(eta),
                d2xi: (case.d2xi)(eta),
                xi_dw: vec![],
                dxi_dw: vec![],
                d2xi_dw: vec![],
            };
            let res = problem.residual(eta, &trial).unwrap();
            assert!(res.r.abs() <= 1e-10, "{}: |r| = {:e} at eta = {eta}", case.name, res.r);
            assert_eq!(res.df_ddxi, -2.0 / eta);
        }
    }
}

#[test]
fn df_dxi_matches_finite_difference_of_f() {
    // df/dxi = -dg/dxi; residual reports +dg/dxi
    let h = 1e-6;
    for name in ["example1", "example2"] {
        let problem = ProblemSpec::builtin(name).unwrap();
        for i in 1..=20 {
            let eta = i as f64 / 20.0;
            let xi = 0.2 + 0.03 * i as f64;
            let mk = |x: f64| slnn_core::trial::TrialEval {
                xi: x,
                dxi: 0.3,
                d2xi: 0.1,
                xi_dw: vec![],
                dxi_dw: vec![],
                d2xi_dw: vec![],
            };
            let center = problem.residual(eta, &mk(xi)).unwrap();
            // f = d2xi - r, so fd of f in xi = -(r(+h) - r(-h)) / 2h
            let rp = problem.residual(eta, &mk(xi + h)).unwrap().r;
            let rm = problem.residual(eta, &mk(xi - h)).unwrap().r;
            let df_dxi_fd = -(rp - rm) / (2.0 * h);
            let expected = -center.df_dxi;
            let tol = 1e-6 * expected.abs().max(df_dxi_fd.abs()).max(1.0);
            assert!((expected - df_dxi_fd).abs() < tol, "{name} at eta {eta}");
        }
    }
}
