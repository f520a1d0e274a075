//! Independent brute-force oracles for the constructive solver: the
//! coboundary equations of a step are assembled as one dense stacked
//! linear system and solved by the test-local eliminator, then compared
//! against the constructive splitting solution and the pipeline output.

mod common;

use num_traits::Zero;

use rlift::catalog;
use rlift::cohochschild::{d_on_leg, solve_sigma};
use rlift::enveloping::exponents_of_degree;
use rlift::liftengine::{construct_lift, defects, extend, initial_lift};
use rlift::{AlgebraContext, Rat, Scalar, TruncatedElement};

fn q(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

/// Assemble and solve the stacked system
/// `(d (x) id) sigma = -alpha`, `(id (x) d) sigma = -beta`,
/// `(eps (x) id) sigma = (id (x) eps) sigma = 0`
/// on the full degree-`n` coefficient space, densely.
fn dense_sigma(
    dim: usize,
    cap: usize,
    alpha: &TruncatedElement<Rat>,
    beta: &TruncatedElement<Rat>,
    n: usize,
) -> TruncatedElement<Rat> {
    let unknowns = exponents_of_degree(2 * dim, n);
    let rows3 = exponents_of_degree(3 * dim, n);
    let rows1 = exponents_of_degree(dim, n);
    let total_rows = 2 * rows3.len() + 2 * rows1.len();
    let mut rows: Vec<Vec<Rat>> = vec![Vec::with_capacity(unknowns.len()); total_rows];
    let mut rhs: Vec<Rat> = Vec::with_capacity(total_rows);
    for key in &rows3 {
        rhs.push(-alpha.coefficient(key));
    }
    for key in &rows3 {
        rhs.push(-beta.coefficient(key));
    }
    rhs.extend(std::iter::repeat(Rat::zero()).take(2 * rows1.len()));

    for key in &unknowns {
        let m = TruncatedElement::monomial(dim, 2, cap, key.clone(), q(1, 1));
        let d1 = d_on_leg(&m, 1);
        let d2 = d_on_leg(&m, 2);
        let cu1 = m.counit_on_leg(2); // (id (x) eps): keeps leg 1
        let cu2 = m.counit_on_leg(1);
        let mut r = 0usize;
        for k in &rows3 {
            rows[r].push(d1.coefficient(k));
            r += 1;
        }
        for k in &rows3 {
            rows[r].push(d2.coefficient(k));
            r += 1;
        }
        for k in &rows1 {
            rows[r].push(cu1.coefficient(k));
            r += 1;
        }
        for k in &rows1 {
            rows[r].push(cu2.coefficient(k));
            r += 1;
        }
    }

    let x = common::dense_solve_unique(&rows, &rhs)
        .expect("stacked system must be consistent with a unique solution");
    let mut sigma = TruncatedElement::zero(dim, 2, cap);
    for (key, v) in unknowns.into_iter().zip(x) {
        sigma.add_term(key, v);
    }
    sigma
}

#[test]
fn constructive_sigma_matches_dense_solve_sl2() {
    // run the first step to reach degree 4, where the sl2 correction is
    // nonzero, and compare three routes: the constructive splitting, the
    // dense stacked solve, and the pipeline's final graded component
    let ctx = AlgebraContext::build(catalog::sl2::<Rat>(), 5).unwrap();
    let st3 = initial_lift(&ctx);
    let (st4, step3) = extend(&ctx, &st3, None, None).unwrap();
    // degree 3: both defects vanish for the standard r, so sigma_3 = 0
    assert!(step3.alpha.is_zero() && step3.beta.is_zero());
    assert!(step3.sigma.is_zero());

    let (alpha, beta) = defects(&ctx, &st4).unwrap();
    assert!(!alpha.is_zero());
    let constructive = solve_sigma(&alpha, &beta, 4, None).unwrap();
    let dense = dense_sigma(3, 5, &alpha, &beta, 4);
    assert_eq!(constructive, dense);
    assert!(!dense.is_zero());

    let lift = construct_lift(&ctx).unwrap();
    assert_eq!(lift.rho.graded_component(4), dense);
}

#[test]
fn constructive_sigma_matches_dense_solve_solvable2() {
    let ctx = AlgebraContext::build(catalog::solvable2::<Rat>(), 4).unwrap();
    let st3 = initial_lift(&ctx);
    let (st4, _) = extend(&ctx, &st3, None, None).unwrap();
    let (alpha, beta) = defects(&ctx, &st4).unwrap();
    let constructive = solve_sigma(&alpha, &beta, 4, None).unwrap();
    let dense = dense_sigma(2, 4, &alpha, &beta, 4);
    assert_eq!(constructive, dense);
    let lift = construct_lift(&ctx).unwrap();
    assert_eq!(lift.rho.graded_component(4), dense);
    assert!(!dense.is_zero());
}

#[test]
fn degree_three_stacked_system_yields_zero_for_sl2() {
    // the degree-3 instance for the standard r: the unique solution of the
    // stacked system is zero, independently confirming the vanishing
    // degree-3 component of the lift
    let ctx = AlgebraContext::build(catalog::sl2::<Rat>(), 5).unwrap();
    let st3 = initial_lift(&ctx);
    let (alpha, beta) = defects(&ctx, &st3).unwrap();
    let sigma = dense_sigma(3, 5, &alpha, &beta, 3);
    assert!(sigma.is_zero());
}
