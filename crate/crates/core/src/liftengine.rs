//! Degree-by-degree construction of the lift of the classical r-matrix.
//!
//! A state at degree `n` is a two-leg element satisfying the lift axioms
//! modulo `m^n` (stored at the full cap, zero in degrees >= n). One step
//! computes the cabling defects `alpha`, `beta` of the zero-padded section,
//! verifies the cocycle conditions they must satisfy, solves the coboundary
//! equations for the unique degree-`n` correction with vanishing leg
//! counits, and adds it. Starting from the r-matrix itself in degree 2, the
//! iteration reaches the cap with every axiom holding exactly there.

use crate::cbh::{self, star};
use crate::cohochschild::{d2_pair, d_on_leg, solve_sigma};
use crate::error::{EngineError, Result};
use crate::formalgroup::{key_degree, AlgebraContext, TruncatedElement};
use crate::report::AxiomReport;
use crate::rngutil::splitmix64;
use crate::scalar::Scalar;

/// Audit record of one successive-approximation step.
#[derive(Debug, Clone)]
pub struct LiftStep<S> {
    pub n: usize,
    pub alpha: TruncatedElement<S>,
    pub beta: TruncatedElement<S>,
    pub sigma: TruncatedElement<S>,
    /// Residual term counts of the five cocycle conditions and the counit
    /// conditions on `(alpha, beta)`, in order: compatibility, two
    /// d2-closures, two leg symmetries, counits. All zero on every valid run.
    pub cocycle_residuals: [usize; 6],
}

/// Lift state: `rho` satisfies the lift axioms modulo `m^n`.
#[derive(Debug, Clone)]
pub struct LiftState<S> {
    pub n: usize,
    pub rho: TruncatedElement<S>,
}

/// Constructed lift with its audit trail.
#[derive(Debug, Clone)]
pub struct Lift<S> {
    pub rho: TruncatedElement<S>,
    pub trail: Vec<LiftStep<S>>,
}

#[derive(Debug, Clone, Default)]
pub struct LiftOptions {
    /// Retain per-step audit records.
    pub keep_trail: bool,
    /// Perturb the zero-padding section by a seeded counit-free cochain at
    /// every step (the result must not change; used by uniqueness checks).
    pub perturb_seed: Option<u64>,
    /// Shuffle elimination order inside the coboundary solver (the result
    /// must not change).
    pub pivot_seed: Option<u64>,
}

/// The seed state: the r-matrix as a degree-2 element, a lift modulo `m^3`.
pub fn initial_lift<S: Scalar>(ctx: &AlgebraContext<S>) -> LiftState<S> {
    LiftState {
        n: 3,
        rho: ctx.r_element(),
    }
}

/// Both cabling residuals of `rho`, truncated past `max_deg`.
pub fn cabling_residuals<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho: &TruncatedElement<S>,
    max_deg: usize,
) -> Result<(TruncatedElement<S>, TruncatedElement<S>)> {
    let r13 = rho.insert(3, &[1, 3]);
    let r23 = rho.insert(3, &[2, 3]);
    let r12 = rho.insert(3, &[1, 2]);
    let a = ctx
        .coproduct_on_leg(rho, 1)
        .sub(&star(ctx, &r13, &r23)?)
        .truncate_to_degree(max_deg);
    let b = ctx
        .coproduct_on_leg(rho, 2)
        .sub(&star(ctx, &r13, &r12)?)
        .truncate_to_degree(max_deg);
    Ok((a, b))
}

fn defects_of<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho_tilde: &TruncatedElement<S>,
    n: usize,
) -> Result<(TruncatedElement<S>, TruncatedElement<S>)> {
    let (a, b) = cabling_residuals(ctx, rho_tilde, n)?;
    for (name, f) in [("alpha", &a), ("beta", &b)] {
        if !f.truncate_to_degree(n - 1).is_zero() {
            return Err(EngineError::Invariant(format!(
                "{name} has terms below degree {n}: state is not a lift mod m^{n}"
            )));
        }
        for leg in 1..=3 {
            if !f.counit_on_leg(leg).is_zero() {
                return Err(EngineError::Invariant(format!(
                    "{name} has a nonvanishing counit on leg {leg}"
                )));
            }
        }
    }
    Ok((a, b))
}

/// The defects `alpha = (Delta (x) id)(rho~) - rho~^{1,3} * rho~^{2,3}` and
/// `beta = (id (x) Delta)(rho~) - rho~^{1,3} * rho~^{1,2}` of the
/// zero-padded section, reduced modulo `m^{n+1}`; each is homogeneous of
/// degree `n` with vanishing leg counits (asserted).
pub fn defects<S: Scalar>(
    ctx: &AlgebraContext<S>,
    state: &LiftState<S>,
) -> Result<(TruncatedElement<S>, TruncatedElement<S>)> {
    defects_of(ctx, &state.rho, state.n)
}

fn cocycle_residual_counts<S: Scalar>(
    alpha: &TruncatedElement<S>,
    beta: &TruncatedElement<S>,
) -> [usize; 6] {
    let c1 = d_on_leg(alpha, 3).sub(&d_on_leg(beta, 1)).len();
    let c2a = d2_pair(alpha, 1).len();
    let c2b = d2_pair(beta, 2).len();
    let c3a = alpha.permute_legs(&[2, 1, 3]).sub(alpha).len();
    let c3b = beta.permute_legs(&[1, 3, 2]).sub(beta).len();
    let cu: usize = (1..=3)
        .map(|l| alpha.counit_on_leg(l).len() + beta.counit_on_leg(l).len())
        .sum();
    [c1, c2a, c2b, c3a, c3b, cu]
}

/// One successive-approximation step `n -> n+1`. An optional homogeneous
/// degree-`n` perturbation with vanishing leg counits may replace the
/// zero-padding section; the result is the same (uniqueness of the
/// correction), which the caller may assert.
pub fn extend<S: Scalar>(
    ctx: &AlgebraContext<S>,
    state: &LiftState<S>,
    section_perturbation: Option<&TruncatedElement<S>>,
    pivot_seed: Option<u64>,
) -> Result<(LiftState<S>, LiftStep<S>)> {
    let n = state.n;
    assert!(n <= ctx.cap(), "cannot extend past the cap");
    let rho_tilde = match section_perturbation {
        None => state.rho.clone(),
        Some(tau) => {
            assert_eq!(tau.legs(), 2, "perturbation must be two-leg");
            assert!(
                tau.terms().all(|(k, _)| key_degree(k) == n),
                "perturbation must be homogeneous of the current degree"
            );
            assert!(
                tau.counit_on_leg(1).is_zero() && tau.counit_on_leg(2).is_zero(),
                "perturbation must have vanishing leg counits"
            );
            state.rho.add(tau)
        }
    };

    let (alpha, beta) = defects_of(ctx, &rho_tilde, n)?;
    let cocycle_residuals = cocycle_residual_counts(&alpha, &beta);
    if cocycle_residuals.iter().any(|&c| c != 0) {
        return Err(EngineError::CocycleCondition(format!(
            "defect conditions violated at degree {n}: residual counts {cocycle_residuals:?}"
        )));
    }
    let sigma = solve_sigma(&alpha, &beta, n, pivot_seed)?;
    let rho_next = rho_tilde.add(&sigma);

    // the projection back to degree < n recovers the previous state
    if rho_next.truncate_to_degree(n - 1) != state.rho.truncate_to_degree(n - 1) {
        return Err(EngineError::Invariant(
            "lower-degree coefficients changed across a step".into(),
        ));
    }
    // postcondition: the cabling identities now hold one degree further,
    // i.e. with every residual term of degree <= n gone
    let (a, b) = cabling_residuals(ctx, &rho_next, n)?;
    if !a.is_zero() || !b.is_zero() {
        return Err(EngineError::Invariant(format!(
            "extension failed to satisfy the cabling identities mod m^{}",
            n + 1
        )));
    }

    Ok((
        LiftState {
            n: n + 1,
            rho: rho_next,
        },
        LiftStep {
            n,
            alpha,
            beta,
            sigma,
            cocycle_residuals,
        },
    ))
}

/// Construct the lift up to the context cap with default options.
pub fn construct_lift<S: Scalar>(ctx: &AlgebraContext<S>) -> Result<Lift<S>> {
    construct_lift_with(
        ctx,
        &LiftOptions {
            keep_trail: true,
            ..LiftOptions::default()
        },
    )
}

/// Construct the lift up to the context cap.
pub fn construct_lift_with<S: Scalar>(
    ctx: &AlgebraContext<S>,
    options: &LiftOptions,
) -> Result<Lift<S>> {
    let mut state = initial_lift(ctx);
    let mut trail = Vec::new();
    while state.n <= ctx.cap() {
        let tau = options.perturb_seed.map(|seed| {
            random_counit_free::<S>(ctx.dim(), ctx.cap(), state.n, seed ^ (state.n as u64) << 17)
        });
        let (next, step) = extend(ctx, &state, tau.as_ref(), options.pivot_seed)?;
        if options.keep_trail {
            trail.push(step);
        }
        state = next;
    }
    Ok(Lift {
        rho: state.rho,
        trail,
    })
}

/// A deterministic homogeneous degree-`n` two-leg cochain with vanishing
/// leg counits, from a seed.
pub fn random_counit_free<S: Scalar>(
    dim: usize,
    cap: usize,
    n: usize,
    seed: u64,
) -> TruncatedElement<S> {
    let mut state = seed.wrapping_mul(0x2545f4914f6cdd1d) ^ 0xdeadbeefcafef00d;
    let mut out = TruncatedElement::zero(dim, 2, cap);
    let mut candidates = Vec::new();
    for key in crate::enveloping::exponents_of_degree(2 * dim, n) {
        let leg1: usize = key[..dim].iter().map(|&e| e as usize).sum();
        if leg1 == 0 || leg1 == n {
            continue;
        }
        candidates.push(key);
    }
    // sparse support keeps downstream star products cheap
    for key in &candidates {
        let v = splitmix64(&mut state);
        if v % 4 != 0 {
            continue;
        }
        let num = (v >> 8) as i64 % 9 - 4;
        let den = 1 + ((v >> 32) % 4) as i64;
        out.add_term(key.clone(), S::from_ratio(num, den));
    }
    if out.is_zero() && !candidates.is_empty() {
        let v = splitmix64(&mut state);
        let idx = (v % candidates.len() as u64) as usize;
        out.add_term(candidates[idx].clone(), S::from_ratio(1, 2));
    }
    out
}

/// Exact residuals for the four lift axioms of `rho` at the context cap:
/// both counits, the coproduct intertwining through `exp(V_rho)` (implied
/// by the others for a valid lift, checked independently), both cabling
/// identities, and the degree-2 leading term.
pub fn check_lift_axioms<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho: &TruncatedElement<S>,
) -> AxiomReport {
    let mut rep = AxiomReport::new();
    rep.push("lift.counit_left", rho.counit_on_leg(1).len());
    rep.push("lift.counit_right", rho.counit_on_leg(2).len());

    match cbh::hamiltonian(ctx, rho).and_then(|v| cbh::exp_operator(&v)) {
        Ok(op) => {
            let mut residual_terms = 0;
            for key in ctx.basis(1) {
                let m = TruncatedElement::monomial(ctx.dim(), 1, ctx.cap(), key, S::one());
                let dm = ctx.coproduct(&m);
                residual_terms += dm.flip().sub(&op.apply(&dm)).len();
            }
            rep.push("lift.coproduct_intertwine", residual_terms);
        }
        Err(_) => rep.push_flag("lift.coproduct_intertwine", false),
    }

    match cabling_residuals(ctx, rho, ctx.cap()) {
        Ok((a, b)) => {
            rep.push("lift.cabling_left", a.len());
            rep.push("lift.cabling_right", b.len());
        }
        Err(_) => {
            rep.push_flag("lift.cabling_left", false);
            rep.push_flag("lift.cabling_right", false);
        }
    }

    rep.push(
        "lift.leading_term",
        rho.graded_component(2).sub(&ctx.r_element()).len(),
    );
    rep
}

/// The quasitriangularity defect
/// `psi = rho^{1,2} * rho^{1,3} * rho^{2,3} - rho^{2,3} * rho^{1,3} * rho^{1,2}`;
/// identically zero for a valid lift. Requires both leg counits of `rho`
/// to vanish.
pub fn qt_defect<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho: &TruncatedElement<S>,
) -> Result<TruncatedElement<S>> {
    if !rho.counit_on_leg(1).is_zero() || !rho.counit_on_leg(2).is_zero() {
        return Err(EngineError::StarOperand(
            rho.filtration_degree().unwrap_or(0),
        ));
    }
    let r12 = rho.insert(3, &[1, 2]);
    let r13 = rho.insert(3, &[1, 3]);
    let r23 = rho.insert(3, &[2, 3]);
    let lhs = star(ctx, &star(ctx, &r12, &r13)?, &r23)?;
    let rhs = star(ctx, &star(ctx, &r23, &r13)?, &r12)?;
    Ok(lhs.sub(&rhs))
}
