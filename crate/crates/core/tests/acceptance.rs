//! Acceptance suite: every criterion runs at its stated tolerance (all
//! residuals are tested for identical zero; arithmetic is exact rational)
//! and prints one pass/fail line.

mod common;

use std::time::Instant;


use rlift::braiding::{
    braiding_difference, braiding_from_lift, check_braiding_axioms, wx_second_order,
};
use rlift::catalog;
use rlift::cbh::{bk_term, star};
use rlift::cohochschild::cohomology_check;
use rlift::enveloping::{exponents_of_degree, Straightener};
use rlift::formalgroup::key_degree;
use rlift::liebialg::LieBialgebra;
use rlift::liftengine::{
    cabling_residuals, check_lift_axioms, construct_lift, construct_lift_with, qt_defect,
    LiftOptions,
};
use rlift::{AlgebraContext, Element, Rat, Scalar, TruncatedElement};

fn q(n: i64, d: i64) -> Rat {
    Rat::from_ratio(n, d)
}

fn report(name: &str, pass: bool, start: Instant) {
    println!(
        "ACCEPTANCE {}: {} ({:.2?})",
        name,
        if pass { "PASS" } else { "FAIL" },
        start.elapsed()
    );
    assert!(pass, "acceptance criterion {name} failed");
}

/// Criterion 1: for abelian g of dim <= 4 with arbitrary rational r, the
/// constructed lift is r itself at every cap <= 8, with all axiom
/// residuals identically zero.
#[test]
fn criterion_1_trivial_lift_identity() {
    let start = Instant::now();
    let mut pass = true;
    let mut seed = 3i64;
    for dim in 1..=4usize {
        let mut r = vec![vec![q(0, 1); dim]; dim];
        for row in r.iter_mut() {
            for v in row.iter_mut() {
                seed = (seed * 7 + 5) % 97;
                *v = q(seed - 48, 1 + (seed % 4));
            }
        }
        let caps: &[usize] = match dim {
            1 => &[3, 5, 8],
            2 => &[4, 8],
            3 => &[5],
            _ => &[4],
        };
        for &cap in caps {
            let ctx = AlgebraContext::build(catalog::abelian::<Rat>(dim, r.clone()), cap).unwrap();
            let lift = construct_lift(&ctx).unwrap();
            pass &= lift.rho == ctx.r_element();
            pass &= check_lift_axioms(&ctx, &lift.rho).pass();
        }
    }
    report("1 trivial-lift identity (abelian, N<=8)", pass, start);
}

/// Criterion 2: sl2 end to end at N = 5: all lift axioms and the
/// quasitriangularity defect identically zero, and the degree-3 component
/// of rho matches an independent brute-force dense solve of the degree-3
/// instance of the cabling identities.
#[test]
fn criterion_2_sl2_end_to_end() {
    let start = Instant::now();
    let ctx = AlgebraContext::build(catalog::sl2::<Rat>(), 5).unwrap();
    let lift = construct_lift(&ctx).unwrap();
    let rep = check_lift_axioms(&ctx, &lift.rho);
    let mut pass = rep.pass();
    pass &= qt_defect(&ctx, &lift.rho).unwrap().is_zero();

    // Independent degree-3 oracle: rho = r + sigma with unknown sigma
    // ranging over all of S^3(g + g); the degree-3 part of both cabling
    // residuals and both counit conditions is affine in sigma. Assemble the
    // dense system from basis probes and solve it with the test-local
    // elimination below; the solution must be unique and equal the
    // degree-3 component of the constructed lift.
    let r = ctx.r_element();
    let degree3_keys: Vec<Vec<u16>> = exponents_of_degree(6, 3);
    let residual3 = |rho: &Element| -> Vec<Rat> {
        let (a, b) = cabling_residuals(&ctx, rho, 3).unwrap();
        let mut out = Vec::new();
        for key in exponents_of_degree(9, 3) {
            out.push(a.coefficient(&key));
        }
        for key in exponents_of_degree(9, 3) {
            out.push(b.coefficient(&key));
        }
        // counit conditions in degree 3
        for leg in 1..=2 {
            let cu = rho.counit_on_leg(leg).graded_component(3);
            for key in exponents_of_degree(3, 3) {
                out.push(cu.coefficient(&key));
            }
        }
        out
    };
    let base = residual3(&r);
    let nrows = base.len();
    let mut rows: Vec<Vec<Rat>> = vec![Vec::with_capacity(degree3_keys.len()); nrows];
    for key in &degree3_keys {
        let probe = r.add(&TruncatedElement::monomial(3, 2, 5, key.clone(), q(1, 1)));
        for (i, (v, b)) in residual3(&probe).into_iter().zip(&base).enumerate() {
            rows[i].push(v - b.clone());
        }
    }
    let rhs: Vec<Rat> = base.iter().map(|b| -b.clone()).collect();
    // unique solution required; compare coefficientwise against the lift
    let solution = common::dense_solve_unique(&rows, &rhs);
    match solution {
        None => pass = false,
        Some(x) => {
            let mut sigma3 = ctx.zero(2);
            for (key, v) in degree3_keys.iter().zip(x) {
                sigma3.add_term(key.clone(), v);
            }
            pass &= sigma3 == lift.rho.graded_component(3);
        }
    }
    report("2 sl2 end-to-end at N=5 (axioms, qt defect, degree-3 oracle)", pass, start);
}

/// Criterion 3: rerunning sl2 with perturbed lift sections (random
/// degree-n additions with vanishing leg counits, 5 seeds) yields
/// coefficient-identical rho at N = 5.
#[test]
fn criterion_3_uniqueness_under_section_perturbation() {
    let start = Instant::now();
    let ctx = AlgebraContext::build(catalog::sl2::<Rat>(), 5).unwrap();
    let base = construct_lift(&ctx).unwrap();
    let mut pass = true;
    for seed in [2u64, 3, 5, 8, 13] {
        let perturbed = construct_lift_with(
            &ctx,
            &LiftOptions {
                keep_trail: false,
                perturb_seed: Some(seed),
                pivot_seed: Some(seed.wrapping_mul(0x9e37)),
            },
        )
        .unwrap();
        pass &= perturbed.rho == base.rho;
    }
    // tower consistency: the cap-4 run is the truncation of the cap-5 run
    let ctx4 = AlgebraContext::build(catalog::sl2::<Rat>(), 4).unwrap();
    let lift4 = construct_lift(&ctx4).unwrap();
    pass &= lift4.rho == base.rho.with_cap(4);
    report("3 uniqueness under perturbed sections (5 seeds)", pass, start);
}

/// Criterion 4: the braiding exp(V_rho) for sl2 at N = 5 passes all four
/// axioms with exact-zero residuals, and its [R - id] mixed block equals
/// the dressing-expansion second order on all 9 basis pairs.
#[test]
fn criterion_4_braiding_axioms_and_wx_agreement() {
    let start = Instant::now();
    let l = catalog::sl2::<Rat>();
    let wx = wx_second_order(&l);
    let ctx = AlgebraContext::build(l, 5).unwrap();
    let lift = construct_lift(&ctx).unwrap();
    let b = braiding_from_lift(&ctx, &lift.rho).unwrap();
    let rep = check_braiding_axioms(&ctx, &b);
    let mut pass = rep.pass();
    for p in 0..3 {
        for qq in 0..3 {
            pass &= b.mixed_block(p, qq) == *wx.pair(p, qq);
        }
    }
    report("4 braiding axioms and second-order dressing agreement", pass, start);
}

/// Criterion 5: cohomology dimensions for validated 3- and 4-dimensional
/// Lie algebras: dim H0 = d in degree 1, dim H1 = d(d-1)/2 in degree 2,
/// zero in degrees 3..6. (The complex lives on the symmetric coalgebra, so
/// the Jacobi-validated bracket enters only through the ambient setup.)
#[test]
fn criterion_5_cohomology_dimensions() {
    let start = Instant::now();
    let mut pass = true;
    for weights in [vec![1i64, -2], vec![3, 5, -1]] {
        let bracket = catalog::diag_solvable_bracket::<Rat>(&weights);
        let d = weights.len() + 1;
        let l = LieBialgebra::new(bracket, vec![vec![q(0, 1); d]; d], None).unwrap();
        pass &= rlift::liebialg::tensor4_nonzeros(&rlift::liebialg::jacobi_residual(&l.bracket))
            == 0;
        pass &= cohomology_check::<Rat>(d, 1) == (d, 0);
        pass &= cohomology_check::<Rat>(d, 2) == (0, d * (d - 1) / 2);
        for n in 3..=6 {
            pass &= cohomology_check::<Rat>(d, n) == (0, 0);
        }
    }
    report("5 cohomology dimensions (d = 3, 4; degrees 1..6)", pass, start);
}

/// Criterion 6: across acceptance runs, every (alpha, beta) emitted by the
/// defect computation satisfies the cocycle conditions with zero residual,
/// logged and asserted at every step.
#[test]
fn criterion_6_cocycle_conditions_every_step() {
    let start = Instant::now();
    let mut pass = true;
    let mut steps = 0usize;
    for (l, cap) in [
        (catalog::sl2::<Rat>(), 5),
        (catalog::solvable2::<Rat>(), 5),
        (catalog::book3::<Rat>(), 4),
    ] {
        let ctx = AlgebraContext::build(l, cap).unwrap();
        let lift = construct_lift(&ctx).unwrap();
        for step in &lift.trail {
            steps += 1;
            pass &= step.cocycle_residuals == [0usize; 6];
            println!(
                "  step n={}: cocycle residual counts {:?}",
                step.n, step.cocycle_residuals
            );
        }
    }
    pass &= steps > 0;
    report("6 cocycle-condition theorem at every step", pass, start);
}

/// Criterion 7: engine soundness suite on d <= 3, N <= 5: coassociativity,
/// counit, Hopf filtration, Poisson filtration, Leibniz/Jacobi, star
/// associativity, top-degree star linearity, disjoint-leg star
/// commutativity, and the coproduct cross-check against the
/// enveloping-algebra transpose.
#[test]
fn criterion_7_engine_soundness() {
    let start = Instant::now();
    let mut pass = true;

    for (l, cap) in [
        (catalog::solvable2::<Rat>(), 5),
        (catalog::sl2::<Rat>(), 4),
        (
            catalog::abelian::<Rat>(3, vec![vec![q(1, 3); 3], vec![q(0, 1); 3], vec![q(2, 1); 3]]),
            4,
        ),
    ] {
        let dim = l.dim;
        // context construction itself runs the CBH-vs-dual-transpose
        // cross-check up to degree min(N, 4) and hard-errors on mismatch
        let ctx = AlgebraContext::build(l, cap).unwrap();

        // coassociativity, counit axioms, Hopf filtration on every basis monomial
        for key in ctx.basis(1) {
            let m = TruncatedElement::monomial(dim, 1, cap, key.clone(), q(1, 1));
            let dm = ctx.coproduct(&m);
            pass &= ctx.coproduct_on_leg(&dm, 1) == ctx.coproduct_on_leg(&dm, 2);
            pass &= dm.counit_on_leg(1) == m && dm.counit_on_leg(2) == m;
            pass &= dm.filtration_degree().unwrap_or(usize::MAX) >= key_degree(&key);
        }

        // random elements for the remaining identities
        let mut mk = |legs: usize, seed: u64, min_deg: usize| -> Element {
            let mut state = seed;
            let mut out = ctx.zero(legs);
            for key in ctx.basis(legs) {
                if key_degree(&key) < min_deg {
                    continue;
                }
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = (state >> 33) % 7;
                if v < 2 {
                    out.add_term(key.clone(), q((state >> 40) as i64 % 5 - 2, 1 + (v as i64)));
                }
            }
            out
        };

        // Poisson filtration, Leibniz, Jacobi
        let f = mk(1, 11, 1);
        let g = mk(1, 22, 1);
        let h = mk(1, 33, 1);
        let fd = f.filtration_degree().unwrap_or(cap + 1);
        let gd = g.filtration_degree().unwrap_or(cap + 1);
        let br = ctx.poisson(&f, &g);
        if let Some(bd) = br.filtration_degree() {
            pass &= bd + 1 >= fd + gd;
        }
        let leib = ctx
            .poisson(&f, &g.multiply(&h))
            .sub(&ctx.poisson(&f, &g).multiply(&h))
            .sub(&g.multiply(&ctx.poisson(&f, &h)));
        pass &= leib.is_zero();
        let jac = ctx
            .poisson(&f, &ctx.poisson(&g, &h))
            .add(&ctx.poisson(&g, &ctx.poisson(&h, &f)))
            .add(&ctx.poisson(&h, &ctx.poisson(&f, &g)));
        pass &= jac.is_zero();

        // star associativity and the B_2 anchor on 2-leg elements in m^2
        let a = mk(2, 44, 2);
        let b = mk(2, 55, 2);
        let c = mk(2, 66, 2);
        let left = star(&ctx, &star(&ctx, &a, &b).unwrap(), &c).unwrap();
        let right = star(&ctx, &a, &star(&ctx, &b, &c).unwrap()).unwrap();
        pass &= left == right;
        pass &= bk_term(&ctx, 2, &a, &b).unwrap() == ctx.poisson(&a, &b).scale(&q(1, 2));

        // top-degree star linearity
        let top_key = {
            let mut k = vec![0u16; 2 * dim];
            k[0] = (cap - 1) as u16;
            k[dim] = 1;
            k
        };
        let top = TruncatedElement::monomial(dim, 2, cap, top_key, q(5, 3));
        let ab = star(&ctx, &a, &b).unwrap();
        pass &= star(&ctx, &a, &b.add(&top)).unwrap() == ab.add(&top);
        pass &= star(&ctx, &a.add(&top), &b).unwrap() == ab.add(&top);

        // disjoint-leg star commutativity on 4 legs
        let rho = ctx.r_element();
        let p13 = rho.insert(4, &[1, 3]);
        let p24 = rho.insert(4, &[2, 4]);
        pass &= star(&ctx, &p13, &p24).unwrap() == star(&ctx, &p24, &p13).unwrap();

        // the dual-transpose cross-check again, through the public tables:
        // coefficient of x^a (x) x^b in Delta(x^e) equals
        // <x^e, Sym(xi^b) Sym(xi^a)> e!/(a! b!)
        let mut st = Straightener::new(ctx.dual());
        let table = ctx.copoisson();
        for key in ctx.basis(2) {
            let (ka, kb) = (key[..dim].to_vec(), key[dim..].to_vec());
            let prod = st.multiply(&table.sym_words[&kb], &table.sym_words[&ka]);
            let s = st.sym_inverse(&prod);
            let fact = |e: &[u16]| -> Rat {
                let mut f = q(1, 1);
                for &x in e {
                    f = f * rlift::scalar::factorial::<Rat>(x as usize);
                }
                f
            };
            for e in ctx.basis(1) {
                if key_degree(&e) > 4.min(cap) {
                    continue;
                }
                let m = TruncatedElement::monomial(dim, 1, cap, e.clone(), q(1, 1));
                let lhs = ctx.coproduct(&m).coefficient(&key);
                let rhs = s.get(&e).cloned().unwrap_or_else(|| q(0, 1)) * fact(&e)
                    / (fact(&ka) * fact(&kb));
                pass &= lhs == rhs;
            }
        }
    }
    report("7 engine soundness suite (d<=3, N<=5)", pass, start);
}

/// Companion to criterion 3/4: two pipeline runs with different solver
/// pivoting produce the identical braiding (difference exactly zero).
#[test]
fn braiding_difference_of_perturbed_pipelines_is_zero() {
    let start = Instant::now();
    let ctx = AlgebraContext::build(catalog::sl2::<Rat>(), 4).unwrap();
    let b0 = braiding_from_lift(&ctx, &construct_lift(&ctx).unwrap().rho).unwrap();
    let alt = construct_lift_with(
        &ctx,
        &LiftOptions {
            keep_trail: false,
            perturb_seed: Some(77),
            pivot_seed: Some(101),
        },
    )
    .unwrap();
    let b1 = braiding_from_lift(&ctx, &alt.rho).unwrap();
    let diff = braiding_difference(&ctx, &b0, &b1);
    let pass = diff.operator.is_zero() && diff.leading.is_none();
    report("uniqueness: braidings from perturbed pipelines coincide", pass, start);
}
