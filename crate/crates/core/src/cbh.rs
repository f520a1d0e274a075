//! Campbell-Baker-Hausdorff machinery: the graded series kernel, the star
//! product on the square of the maximal ideal, Hamiltonian derivations and
//! exponentials of filtered operators.
//!
//! One kernel serves two clients: the group law of the dual Lie algebra
//! (bracket = dual Lie bracket on polynomial coefficients) and the star
//! product `f * g = f + g + 1/2 {f,g} + ... + B_k(f,g) + ...` (bracket =
//! Poisson). `B_k` is the total-degree-k Lie polynomial of the series,
//! produced by the exact Bernoulli-number recursion
//! `(n+1) z_{n+1} = 1/2 [x - y, z_n]
//!  + sum_{p>=1, 2p<=n} B_{2p}/(2p)! sum_{k_1+..+k_{2p}=n} [z_{k_1}, [.., [z_{k_{2p}}, x+y]..]]`.

use std::collections::BTreeMap;

use crate::error::{EngineError, Result};
use crate::formalgroup::{key_degree, AlgebraContext, TruncatedElement};
use crate::scalar::{factorial, Scalar};

/// Bernoulli numbers `B_0..B_n` (convention `B_1 = -1/2`).
pub fn bernoulli_numbers<S: Scalar>(up_to: usize) -> Vec<S> {
    let mut b: Vec<S> = Vec::with_capacity(up_to + 1);
    for m in 0..=up_to {
        if m == 0 {
            b.push(S::one());
            continue;
        }
        // B_m = -1/(m+1) * sum_{j<m} C(m+1, j) B_j
        let mut acc = S::zero();
        for (j, bj) in b.iter().enumerate() {
            acc = acc + crate::scalar::binomial::<S>(m + 1, j) * bj.clone();
        }
        b.push(-acc / S::from_int((m + 1) as i64));
    }
    b
}

/// A graded Lie algebra presented through its vector-space operations, for
/// the series kernel.
pub trait LieSeriesSpace<S: Scalar> {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &S) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.scale(b, &-S::one()))
    }
}

/// The homogeneous components `z_1, ..., z_count` of `log(exp x exp y)`,
/// graded by the number of letters.
pub fn cbh_components<S: Scalar, Sp: LieSeriesSpace<S>>(
    space: &Sp,
    x: &Sp::Elem,
    y: &Sp::Elem,
    count: usize,
) -> Vec<Sp::Elem> {
    if count == 0 {
        return Vec::new();
    }
    let bern = bernoulli_numbers::<S>(count + 1);
    let x_plus_y = space.add(x, y);
    let x_minus_y = space.sub(x, y);
    let mut z: Vec<Sp::Elem> = vec![space.add(x, y)];

    for n in 1..count {
        // adjoint sums A_m(w) = sum_{k_1+..+k_m = w} [z_{k_1}, [.., [z_{k_m}, x+y]..]]
        // built on z_1..z_{n}
        let mut adj: Vec<Vec<Option<Sp::Elem>>> = vec![vec![None; n + 1]; n + 1];
        adj[0][0] = Some(x_plus_y.clone());
        for m in 1..=n {
            for w in m..=n {
                let mut acc = space.zero();
                for k in 1..=(w - m + 1) {
                    if let Some(prev) = &adj[m - 1][w - k] {
                        acc = space.add(&acc, &space.bracket(&z[k - 1], prev));
                    }
                }
                adj[m][w] = Some(acc);
            }
        }

        let mut acc = space.scale(
            &space.bracket(&x_minus_y, &z[n - 1]),
            &S::from_ratio(1, 2),
        );
        let mut p = 1;
        while 2 * p <= n {
            let coeff = bern[2 * p].clone() / factorial::<S>(2 * p);
            if let Some(a) = &adj[2 * p][n] {
                acc = space.add(&acc, &space.scale(a, &coeff));
            }
            p += 1;
        }
        z.push(space.scale(&acc, &(S::one() / S::from_int((n + 1) as i64))));
    }
    z
}

/// The truncated algebra as a Lie algebra under the Poisson bracket.
struct PoissonSpace<'a, S> {
    ctx: &'a AlgebraContext<S>,
    legs: usize,
}

impl<'a, S: Scalar> LieSeriesSpace<S> for PoissonSpace<'a, S> {
    type Elem = TruncatedElement<S>;

    fn zero(&self) -> TruncatedElement<S> {
        self.ctx.zero(self.legs)
    }

    fn add(&self, a: &TruncatedElement<S>, b: &TruncatedElement<S>) -> TruncatedElement<S> {
        a.add(b)
    }

    fn scale(&self, a: &TruncatedElement<S>, c: &S) -> TruncatedElement<S> {
        a.scale(c)
    }

    fn bracket(&self, a: &TruncatedElement<S>, b: &TruncatedElement<S>) -> TruncatedElement<S> {
        self.ctx.poisson(a, b)
    }

    fn is_zero(&self, a: &TruncatedElement<S>) -> bool {
        a.is_zero()
    }
}

fn require_star_operand<S: Scalar>(f: &TruncatedElement<S>) -> Result<()> {
    match f.filtration_degree() {
        Some(d) if d < 2 => Err(EngineError::StarOperand(d)),
        _ => Ok(()),
    }
}

/// CBH star product `f * g` for operands of filtration degree >= 2. The
/// series is finite on the truncation because `B_k(m^2, m^2) c m^{k+1}`.
pub fn star<S: Scalar>(
    ctx: &AlgebraContext<S>,
    f: &TruncatedElement<S>,
    g: &TruncatedElement<S>,
) -> Result<TruncatedElement<S>> {
    require_star_operand(f)?;
    require_star_operand(g)?;
    assert_eq!(f.legs(), g.legs(), "leg mismatch");
    let space = PoissonSpace {
        ctx,
        legs: f.legs(),
    };
    let count = ctx.cap().saturating_sub(1).max(1);
    let zs = cbh_components(&space, f, g, count);
    let mut out = ctx.zero(f.legs());
    for z in &zs {
        out = out.add(z);
    }
    Ok(out)
}

/// The homogeneous CBH Lie polynomial `B_k(f, g)` evaluated with the
/// Poisson bracket; `B_1 = f + g`, `B_2 = 1/2 {f, g}`.
pub fn bk_term<S: Scalar>(
    ctx: &AlgebraContext<S>,
    k: usize,
    f: &TruncatedElement<S>,
    g: &TruncatedElement<S>,
) -> Result<TruncatedElement<S>> {
    assert!(k >= 1, "B_k needs k >= 1");
    require_star_operand(f)?;
    require_star_operand(g)?;
    let space = PoissonSpace {
        ctx,
        legs: f.legs(),
    };
    let zs = cbh_components(&space, f, g, k);
    Ok(zs.into_iter().last().unwrap())
}

/// Linear endomorphism of the truncated algebra, stored column-wise on the
/// monomial basis, with its filtration shift (image of `m^a` lies in
/// `m^{a+shift}`).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator<S> {
    dim: usize,
    legs: usize,
    cap: usize,
    shift: usize,
    cols: BTreeMap<Vec<u16>, TruncatedElement<S>>,
}

impl<S: Scalar> TruncatedOperator<S> {
    pub fn identity(ctx: &AlgebraContext<S>, legs: usize) -> Self {
        Self::from_images(ctx, legs, 0, |key| {
            TruncatedElement::monomial(ctx.dim(), legs, ctx.cap(), key.to_vec(), S::one())
        })
    }

    /// Build from the images of all basis monomials. The declared shift is
    /// verified against every column.
    pub fn from_images(
        ctx: &AlgebraContext<S>,
        legs: usize,
        shift: usize,
        mut image: impl FnMut(&[u16]) -> TruncatedElement<S>,
    ) -> Self {
        let mut cols = BTreeMap::new();
        for key in ctx.basis(legs) {
            let img = image(&key);
            if let Some(fd) = img.filtration_degree() {
                assert!(
                    fd >= key_degree(&key) + shift,
                    "image violates declared filtration shift"
                );
            }
            if !img.is_zero() {
                cols.insert(key, img);
            }
        }
        Self {
            dim: ctx.dim(),
            legs,
            cap: ctx.cap(),
            shift,
            cols,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn col(&self, key: &[u16]) -> TruncatedElement<S> {
        self.cols
            .get(key)
            .cloned()
            .unwrap_or_else(|| TruncatedElement::zero(self.dim, self.legs, self.cap))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn apply(&self, f: &TruncatedElement<S>) -> TruncatedElement<S> {
        assert_eq!(f.legs(), self.legs, "leg mismatch");
        assert_eq!(f.cap(), self.cap, "cap mismatch");
        let mut out = TruncatedElement::zero(self.dim, self.legs, self.cap);
        for (k, c) in f.terms() {
            if let Some(col) = self.cols.get(k) {
                out = out.add(&col.scale(c));
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs);
        assert_eq!(self.cap, other.cap);
        let mut cols = self.cols.clone();
        for (k, v) in &other.cols {
            let merged = match cols.get(k) {
                Some(cur) => cur.add(v),
                None => v.clone(),
            };
            if merged.is_zero() {
                cols.remove(k);
            } else {
                cols.insert(k.clone(), merged);
            }
        }
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            shift: self.shift.min(other.shift),
            cols,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self {
                dim: self.dim,
                legs: self.legs,
                cap: self.cap,
                shift: self.shift,
                cols: BTreeMap::new(),
            };
        }
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            shift: self.shift,
            cols: self
                .cols
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(c)))
                .collect(),
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.legs, other.legs);
        assert_eq!(self.cap, other.cap);
        let mut cols = BTreeMap::new();
        for (k, v) in &other.cols {
            let img = self.apply(v);
            if !img.is_zero() {
                cols.insert(k.clone(), img);
            }
        }
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            shift: self.shift + other.shift,
            cols,
        }
    }

    /// Largest `s` such that every column of degree-`a` input has image in
    /// `m^{a+s}`; `None` for the zero operator.
    pub fn observed_shift(&self) -> Option<usize> {
        self.cols
            .iter()
            .filter_map(|(k, v)| v.filtration_degree().map(|fd| fd.saturating_sub(key_degree(k))))
            .min()
    }
}

/// The Hamiltonian derivation `V_rho = {rho, -}` as an operator; requires
/// `rho` of filtration degree >= 2 so that the shift is >= 1.
pub fn hamiltonian<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho: &TruncatedElement<S>,
) -> Result<TruncatedOperator<S>> {
    require_star_operand(rho)?;
    Ok(TruncatedOperator::from_images(ctx, rho.legs(), 1, |key| {
        let m = TruncatedElement::monomial(ctx.dim(), rho.legs(), ctx.cap(), key.to_vec(), S::one());
        ctx.poisson(rho, &m)
    }))
}

/// Exponential of a filtered derivation of shift >= 1: a finite sum on the
/// truncation, giving a filtered automorphism acting as the identity on
/// `m/m^2`.
pub fn exp_operator<S: Scalar>(op: &TruncatedOperator<S>) -> Result<TruncatedOperator<S>> {
    if op.shift() < 1 {
        return Err(EngineError::ExpShift);
    }
    let dim = op.dim();
    let legs = op.legs();
    let cap = op.cap();
    let mut cols = BTreeMap::new();
    for key in crate::formalgroup::monomial_basis(dim, legs, cap) {
        let mono = TruncatedElement::monomial(dim, legs, cap, key.clone(), S::one());
        let mut acc = mono.clone();
        let mut term = mono;
        let mut m = 1i64;
        loop {
            term = op.apply(&term).scale(&(S::one() / S::from_int(m)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
            m += 1;
        }
        if !acc.is_zero() {
            cols.insert(key, acc);
        }
    }
    Ok(TruncatedOperator {
        dim,
        legs,
        cap,
        shift: 0,
        cols,
    })
}

/// Adjoint action of the CBH group element of `rho`: returns
/// `exp(V_rho)(f)`, which is the meaning of `rho * f * (-rho)`.
pub fn star_conjugate<S: Scalar>(
    ctx: &AlgebraContext<S>,
    rho: &TruncatedElement<S>,
    f: &TruncatedElement<S>,
) -> Result<TruncatedElement<S>> {
    require_star_operand(rho)?;
    let mut acc = f.clone();
    let mut term = f.clone();
    let mut m = 1i64;
    loop {
        term = ctx.poisson(rho, &term).scale(&(S::one() / S::from_int(m)));
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term);
        m += 1;
    }
    Ok(acc)
}

/// Apply a 2-leg operator to legs `(i, j)` of a `k`-leg element, acting as
/// the identity on the remaining legs. Realized by conjugating the
/// trailing-identity embedding with leg permutations.
pub fn apply_on_legs<S: Scalar>(
    op: &TruncatedOperator<S>,
    f: &TruncatedElement<S>,
    legs: (usize, usize),
) -> TruncatedElement<S> {
    assert_eq!(op.legs(), 2, "operator must act on two legs");
    let k = f.legs();
    let (i, j) = legs;
    assert!(i != j && i >= 1 && i <= k && j >= 1 && j <= k, "bad leg pair");
    // permutation sending leg i -> 1, leg j -> 2, the rest in order
    let mut perm = vec![0usize; k];
    perm[i - 1] = 1;
    perm[j - 1] = 2;
    let mut next = 3;
    for l in 1..=k {
        if l != i && l != j {
            perm[l - 1] = next;
            next += 1;
        }
    }
    let moved = f.permute_legs(&perm);
    // apply op (x) id on the first two legs
    let d = f.dim();
    let cap = f.cap();
    let mut out = TruncatedElement::zero(d, k, cap);
    for (key, c) in moved.terms() {
        let head = key[..2 * d].to_vec();
        let rest = &key[2 * d..];
        let rest_deg: usize = rest.iter().map(|&e| e as usize).sum();
        let col = op.col(&head);
        for (k2, c2) in col.terms() {
            if key_degree(k2) + rest_deg > cap {
                continue;
            }
            let mut new_key = Vec::with_capacity(key.len());
            new_key.extend_from_slice(k2);
            new_key.extend_from_slice(rest);
            out.add_term(new_key, c.clone() * c2.clone());
        }
    }
    // inverse permutation
    let mut inv = vec![0usize; k];
    for l in 1..=k {
        inv[perm[l - 1] - 1] = l;
    }
    out.permute_legs(&inv)
}
