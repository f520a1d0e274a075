//! The truncated Hopf-Poisson function algebra of powers of the dual formal
//! group, in exponential coordinates.
//!
//! A `k`-leg element is a polynomial function on the k-th power of the dual
//! group, truncated past total degree `cap`: a sparse map from exponent
//! vectors of length `k * dim` to nonzero scalars. The coordinates of leg
//! `l` occupy the block `[(l-1)*dim, l*dim)`.
//!
//! The coproduct is substitution of the Campbell-Baker-Hausdorff group law
//! of the dual Lie algebra into the coordinates; the counit is evaluation
//! at the origin; the Poisson bracket is the transpose of the co-Poisson
//! cobracket of the enveloping algebra through the fixed pairing, extended
//! to products as a biderivation and to several legs leg-wise.

use std::collections::BTreeMap;

use crate::cbh::{cbh_components, LieSeriesSpace};
use crate::enveloping::{exponents_of_degree, CoPoissonTable, Straightener};
use crate::error::{EngineError, Result};
use crate::liebialg::{DualLieAlgebra, LieBialgebra};
use crate::scalar::{factorial, Scalar};

/// Sparse element of `O_{(G*)^k} / m^{cap+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedElement<S> {
    dim: usize,
    legs: usize,
    cap: usize,
    terms: BTreeMap<Vec<u16>, S>,
}

pub fn key_degree(key: &[u16]) -> usize {
    key.iter().map(|&e| e as usize).sum()
}

impl<S: Scalar> TruncatedElement<S> {
    pub fn zero(dim: usize, legs: usize, cap: usize) -> Self {
        assert!(legs >= 1, "at least one leg");
        Self {
            dim,
            legs,
            cap,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, legs: usize, cap: usize, value: S) -> Self {
        let mut out = Self::zero(dim, legs, cap);
        out.add_term(vec![0; dim * legs], value);
        out
    }

    pub fn one(dim: usize, legs: usize, cap: usize) -> Self {
        Self::constant(dim, legs, cap, S::one())
    }

    /// The coordinate function `x_var` on leg `leg` (1-based leg).
    pub fn coordinate(dim: usize, legs: usize, cap: usize, leg: usize, var: usize) -> Self {
        assert!(leg >= 1 && leg <= legs, "leg out of range");
        assert!(var < dim, "variable out of range");
        let mut key = vec![0u16; dim * legs];
        key[(leg - 1) * dim + var] = 1;
        let mut out = Self::zero(dim, legs, cap);
        out.add_term(key, S::one());
        out
    }

    pub fn monomial(dim: usize, legs: usize, cap: usize, key: Vec<u16>, coeff: S) -> Self {
        let mut out = Self::zero(dim, legs, cap);
        out.add_term(key, coeff);
        out
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &S)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &[u16]) -> S {
        self.terms.get(key).cloned().unwrap_or_else(S::zero)
    }

    /// Add a term; keys past the cap are silently dropped, zero sums pruned.
    pub fn add_term(&mut self, key: Vec<u16>, coeff: S) {
        assert_eq!(key.len(), self.dim * self.legs, "key width mismatch");
        if coeff.is_zero() || key_degree(&key) > self.cap {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let val = o.get().clone() + coeff;
                if val.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = val;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        assert_eq!(self.legs, other.legs, "leg mismatch");
        assert_eq!(self.cap, other.cap, "cap mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.legs, self.cap);
        }
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Commutative product, truncated past the cap.
    pub fn multiply(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let mut out = Self::zero(self.dim, self.legs, self.cap);
        for (ka, ca) in &self.terms {
            let da = key_degree(ka);
            for (kb, cb) in &other.terms {
                if da + key_degree(kb) > self.cap {
                    continue;
                }
                let key: Vec<u16> = ka.iter().zip(kb).map(|(&a, &b)| a + b).collect();
                out.add_term(key, ca.clone() * cb.clone());
            }
        }
        out
    }

    /// The homogeneous component of total degree `n`.
    pub fn graded_component(&self, n: usize) -> Self {
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| key_degree(k) == n)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Drop every term of total degree above `j`, keeping the cap.
    pub fn truncate_to_degree(&self, j: usize) -> Self {
        Self {
            dim: self.dim,
            legs: self.legs,
            cap: self.cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| key_degree(k) <= j)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Reinterpret at a new cap; coefficient-preserving when the cap grows,
    /// truncating when it shrinks.
    pub fn with_cap(&self, cap: usize) -> Self {
        Self {
            dim: self.dim,
            legs: self.legs,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| key_degree(k) <= cap)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Minimal total degree of a nonzero term; `None` for the zero element.
    pub fn filtration_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| key_degree(k)).min()
    }

    /// Evaluation at the origin: the constant coefficient.
    pub fn counit(&self) -> S {
        self.coefficient(&vec![0; self.dim * self.legs])
    }

    /// Apply the counit to one leg (1-based), producing a `(legs-1)`-leg
    /// element: keep the terms constant in that leg and delete the block.
    pub fn counit_on_leg(&self, leg: usize) -> Self {
        assert!(leg >= 1 && leg <= self.legs, "leg out of range");
        assert!(self.legs >= 2, "use counit() on single-leg elements");
        let d = self.dim;
        let mut out = Self::zero(d, self.legs - 1, self.cap);
        let lo = (leg - 1) * d;
        for (k, c) in &self.terms {
            if k[lo..lo + d].iter().all(|&e| e == 0) {
                let mut key = Vec::with_capacity(k.len() - d);
                key.extend_from_slice(&k[..lo]);
                key.extend_from_slice(&k[lo + d..]);
                out.add_term(key, c.clone());
            }
        }
        out
    }

    /// Relabel legs into a wider product: `map[l-1]` is the (1-based) target
    /// leg of source leg `l`. The map must be injective into `1..=target_legs`.
    pub fn insert(&self, target_legs: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.legs, "map must cover every leg");
        assert!(target_legs >= self.legs, "target has too few legs");
        let mut seen = vec![false; target_legs];
        for &t in map {
            assert!(t >= 1 && t <= target_legs, "target leg out of range");
            assert!(!seen[t - 1], "leg map must be injective");
            seen[t - 1] = true;
        }
        let d = self.dim;
        let mut out = Self::zero(d, target_legs, self.cap);
        for (k, c) in &self.terms {
            let mut key = vec![0u16; d * target_legs];
            for (l, &t) in map.iter().enumerate() {
                key[(t - 1) * d..t * d].copy_from_slice(&k[l * d..(l + 1) * d]);
            }
            out.add_term(key, c.clone());
        }
        out
    }

    /// Permute legs: `perm[l-1]` is the new position of leg `l`.
    pub fn permute_legs(&self, perm: &[usize]) -> Self {
        self.insert(self.legs, perm)
    }

    /// Swap the two legs of a 2-leg element.
    pub fn flip(&self) -> Self {
        assert_eq!(self.legs, 2, "flip acts on 2-leg elements");
        self.permute_legs(&[2, 1])
    }

    /// Total degree of the block of leg `leg` in `key`.
    pub fn leg_degree(&self, key: &[u16], leg: usize) -> usize {
        let d = self.dim;
        key[(leg - 1) * d..leg * d]
            .iter()
            .map(|&e| e as usize)
            .sum()
    }
}

/// All monomial keys over `legs * dim` variables with total degree <= cap,
/// in lexicographic order.
pub fn monomial_basis(dim: usize, legs: usize, cap: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for n in 0..=cap {
        out.extend(exponents_of_degree(dim * legs, n));
    }
    out.sort();
    out
}

/// Precomputed structure tables for one `(g, cap)`: the group law of the
/// dual Lie algebra, the coproduct of every basis monomial, the Poisson
/// brackets of coordinate functions, and the co-Poisson table used to
/// derive them. Immutable after construction.
#[derive(Debug, Clone)]
pub struct AlgebraContext<S> {
    bialgebra: LieBialgebra<S>,
    dual: DualLieAlgebra<S>,
    cap: usize,
    /// group law coordinates: `w_i(xi, eta)` as 2-leg elements
    group_law: Vec<TruncatedElement<S>>,
    /// coproduct of each 1-leg basis monomial
    coproduct: BTreeMap<Vec<u16>, TruncatedElement<S>>,
    /// `{x_i, x_j}` as 1-leg elements
    poisson_gen: Vec<Vec<TruncatedElement<S>>>,
    copoisson: CoPoissonTable<S>,
}

/// The dual Lie algebra with polynomial coefficients, as a graded Lie
/// algebra for the CBH kernel.
struct DualGroupSpace<'a, S> {
    dual: &'a DualLieAlgebra<S>,
    dim: usize,
    cap: usize,
}

/// Vector of polynomial coefficients, one per dual basis direction.
#[derive(Clone)]
struct DualVec<S>(Vec<TruncatedElement<S>>);

impl<'a, S: Scalar> LieSeriesSpace<S> for DualGroupSpace<'a, S> {
    type Elem = DualVec<S>;

    fn zero(&self) -> DualVec<S> {
        DualVec(vec![TruncatedElement::zero(self.dim, 2, self.cap); self.dim])
    }

    fn add(&self, a: &DualVec<S>, b: &DualVec<S>) -> DualVec<S> {
        DualVec(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| x.add(y))
                .collect(),
        )
    }

    fn scale(&self, a: &DualVec<S>, c: &S) -> DualVec<S> {
        DualVec(a.0.iter().map(|x| x.scale(c)).collect())
    }

    fn is_zero(&self, a: &DualVec<S>) -> bool {
        a.0.iter().all(|x| x.is_zero())
    }

    fn bracket(&self, u: &DualVec<S>, v: &DualVec<S>) -> DualVec<S> {
        let mut out = self.zero();
        for a in 0..self.dim {
            if u.0[a].is_zero() {
                continue;
            }
            for b in 0..self.dim {
                if v.0[b].is_zero() {
                    continue;
                }
                let prod = u.0[a].multiply(&v.0[b]);
                if prod.is_zero() {
                    continue;
                }
                for k in 0..self.dim {
                    let coef = self.dual.bracket[a][b][k].clone();
                    if !coef.is_zero() {
                        out.0[k] = out.0[k].add(&prod.scale(&coef));
                    }
                }
            }
        }
        out
    }
}

impl<S: Scalar> AlgebraContext<S> {
    /// Build the context. Requires `cap >= 3`; fails if the dual bracket is
    /// not a Lie bracket or if the coproduct cross-check against the
    /// enveloping-algebra transpose does not hold (a convention bug).
    pub fn build(bialgebra: LieBialgebra<S>, cap: usize) -> Result<Self> {
        if cap < 3 {
            return Err(EngineError::Shape(format!(
                "truncation degree must be >= 3, got {cap}"
            )));
        }
        let dual = bialgebra.dual()?;
        let dim = bialgebra.dim;

        // group law by the CBH series of the dual Lie algebra
        let space = DualGroupSpace {
            dual: &dual,
            dim,
            cap,
        };
        let xi = DualVec(
            (0..dim)
                .map(|i| TruncatedElement::coordinate(dim, 2, cap, 1, i))
                .collect(),
        );
        let eta = DualVec(
            (0..dim)
                .map(|i| TruncatedElement::coordinate(dim, 2, cap, 2, i))
                .collect(),
        );
        // Leg 1 is the *right* group factor: the coproduct pairs as
        // <Delta f, u (x) v> = <f, v u>. This orientation is forced by the
        // op-coproduct axiom once the Poisson bracket of coordinates is
        // anchored to the Lie bracket with the plus sign.
        let zs = cbh_components(&space, &eta, &xi, cap);
        let mut group_law = vec![TruncatedElement::zero(dim, 2, cap); dim];
        for z in &zs {
            for i in 0..dim {
                group_law[i] = group_law[i].add(&z.0[i]);
            }
        }

        // coproduct table in degree order: Delta(x^e) = Delta(x^{e'}) * w_i
        let mut coproduct: BTreeMap<Vec<u16>, TruncatedElement<S>> = BTreeMap::new();
        for n in 0..=cap {
            for e in exponents_of_degree(dim, n) {
                let value = if n == 0 {
                    TruncatedElement::one(dim, 2, cap)
                } else {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    let mut prev = e.clone();
                    prev[i] -= 1;
                    coproduct[&prev].multiply(&group_law[i])
                };
                coproduct.insert(e, value);
            }
        }

        // Poisson brackets of coordinates by duality with the co-Poisson
        // cobracket: coeff of x^e in {x_i, x_j} is
        // <x_i (x) x_j, delta_U(Sym xi^e)> / e!
        let copoisson = CoPoissonTable::build(&bialgebra, &dual, cap);
        let mut poisson_gen =
            vec![vec![TruncatedElement::zero(dim, 1, cap); dim]; dim];
        for (e, d_sym) in &copoisson.delta_sym {
            if key_degree(e) == 0 {
                continue;
            }
            let mut efact = S::one();
            for &x in e {
                efact = efact * factorial::<S>(x as usize);
            }
            for ((u, v), c) in &d_sym.terms {
                let lu = &copoisson.linear_part[u];
                let lv = &copoisson.linear_part[v];
                for i in 0..dim {
                    if lu[i].is_zero() {
                        continue;
                    }
                    for j in 0..dim {
                        if lv[j].is_zero() {
                            continue;
                        }
                        let val = c.clone() * lu[i].clone() * lv[j].clone() / efact.clone();
                        poisson_gen[i][j].add_term(e.clone(), val);
                    }
                }
            }
        }

        let ctx = Self {
            bialgebra,
            dual,
            cap,
            group_law,
            coproduct,
            poisson_gen,
            copoisson,
        };
        ctx.check_conventions()?;
        Ok(ctx)
    }

    /// Convention guards: the degree-1 part of `{x_i, x_j}` must be the Lie
    /// bracket, the generator table antisymmetric, and the coproduct must
    /// agree with the transpose of enveloping-algebra multiplication up to
    /// degree `min(cap, 4)`.
    fn check_conventions(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let anti = self.poisson_gen[i][j].add(&self.poisson_gen[j][i]);
                if !anti.is_zero() {
                    return Err(EngineError::Invariant(format!(
                        "poisson generator table not antisymmetric at ({i},{j})"
                    )));
                }
                let lin = self.poisson_gen[i][j].graded_component(1);
                for k in 0..d {
                    let mut key = vec![0u16; d];
                    key[k] = 1;
                    if lin.coefficient(&key) != self.bialgebra.bracket[i][j][k] {
                        return Err(EngineError::Invariant(format!(
                            "degree-1 part of {{x_{i}, x_{j}}} differs from the Lie bracket"
                        )));
                    }
                }
            }
        }

        let check_deg = self.cap.min(4);
        let mut st = Straightener::new(&self.dual);
        let mut efacts: BTreeMap<Vec<u16>, S> = BTreeMap::new();
        for (e, _) in self.coproduct.iter() {
            let mut f = S::one();
            for &x in e {
                f = f * factorial::<S>(x as usize);
            }
            efacts.insert(e.clone(), f);
        }
        for pair in monomial_basis(self.dim(), 2, self.cap) {
            let (a, b) = (pair[..d].to_vec(), pair[d..].to_vec());
            let sym_a = self.copoisson.sym_words[&a].clone();
            let sym_b = self.copoisson.sym_words[&b].clone();
            let prod = st.multiply(&sym_b, &sym_a);
            let s = st.sym_inverse(&prod);
            let abfact = efacts[&a].clone() * efacts[&b].clone();
            for (e, delta_e) in self.coproduct.iter() {
                if key_degree(e) > check_deg {
                    continue;
                }
                let lhs = delta_e.coefficient(&pair);
                let rhs = s.get(e).cloned().unwrap_or_else(S::zero) * efacts[e].clone()
                    / abfact.clone();
                if lhs != rhs {
                    return Err(EngineError::CrossCheck(format!(
                        "Delta(x^{e:?}) at {pair:?}: CBH route {lhs} vs dual route {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.bialgebra.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn bialgebra(&self) -> &LieBialgebra<S> {
        &self.bialgebra
    }

    pub fn dual(&self) -> &DualLieAlgebra<S> {
        &self.dual
    }

    pub fn copoisson(&self) -> &CoPoissonTable<S> {
        &self.copoisson
    }

    /// Group-law coordinates `w_i(xi, eta)` (the CBH cache).
    pub fn group_law(&self) -> &[TruncatedElement<S>] {
        &self.group_law
    }

    pub fn zero(&self, legs: usize) -> TruncatedElement<S> {
        TruncatedElement::zero(self.dim(), legs, self.cap)
    }

    pub fn one(&self, legs: usize) -> TruncatedElement<S> {
        TruncatedElement::one(self.dim(), legs, self.cap)
    }

    pub fn coordinate(&self, legs: usize, leg: usize, var: usize) -> TruncatedElement<S> {
        TruncatedElement::coordinate(self.dim(), legs, self.cap, leg, var)
    }

    /// The r-matrix as a degree-2 two-leg element `sum r[i][j] x_i (x) x_j`.
    pub fn r_element(&self) -> TruncatedElement<S> {
        let d = self.dim();
        let mut out = self.zero(2);
        for i in 0..d {
            for j in 0..d {
                let c = self.bialgebra.r[i][j].clone();
                if c.is_zero() {
                    continue;
                }
                let mut key = vec![0u16; 2 * d];
                key[i] = 1;
                key[d + j] += 1;
                out.add_term(key, c);
            }
        }
        out
    }

    pub fn basis(&self, legs: usize) -> Vec<Vec<u16>> {
        monomial_basis(self.dim(), legs, self.cap)
    }

    /// Coproduct of a 1-leg element.
    pub fn coproduct(&self, f: &TruncatedElement<S>) -> TruncatedElement<S> {
        assert_eq!(f.legs(), 1);
        self.coproduct_on_leg(f, 1)
    }

    /// Apply the coproduct to leg `leg` (1-based), renumbering the legs to
    /// the right; a `k`-leg element becomes a `(k+1)`-leg element.
    pub fn coproduct_on_leg(
        &self,
        f: &TruncatedElement<S>,
        leg: usize,
    ) -> TruncatedElement<S> {
        assert!(leg >= 1 && leg <= f.legs(), "leg out of range");
        assert_eq!(f.dim(), self.dim());
        assert_eq!(f.cap(), self.cap);
        let d = self.dim();
        let legs = f.legs();
        let mut out = TruncatedElement::zero(d, legs + 1, self.cap);
        for (k, c) in f.terms() {
            let block = k[(leg - 1) * d..leg * d].to_vec();
            let rest_deg = key_degree(k) - key_degree(&block);
            let image = &self.coproduct[&block];
            for (k2, c2) in image.terms() {
                if key_degree(k2) + rest_deg > self.cap {
                    continue;
                }
                let mut key = vec![0u16; d * (legs + 1)];
                key[..(leg - 1) * d].copy_from_slice(&k[..(leg - 1) * d]);
                key[(leg - 1) * d..(leg + 1) * d].copy_from_slice(k2);
                key[(leg + 1) * d..].copy_from_slice(&k[leg * d..]);
                out.add_term(key, c.clone() * c2.clone());
            }
        }
        out
    }

    /// Poisson bracket; legs carry the product Poisson structure, so the
    /// bracket acts leg-wise through the generator table and the Leibniz
    /// rule.
    pub fn poisson(
        &self,
        f: &TruncatedElement<S>,
        g: &TruncatedElement<S>,
    ) -> TruncatedElement<S> {
        f.assert_compatible(g);
        assert_eq!(f.dim(), self.dim());
        let d = self.dim();
        let legs = f.legs();
        let mut out = TruncatedElement::zero(d, legs, self.cap);
        for (ka, ca) in f.terms() {
            let da = key_degree(ka);
            for (kb, cb) in g.terms() {
                let db = key_degree(kb);
                if da + db < 2 {
                    continue;
                }
                let cab = ca.clone() * cb.clone();
                for leg in 0..legs {
                    for i in 0..d {
                        let ei = ka[leg * d + i];
                        if ei == 0 {
                            continue;
                        }
                        for j in 0..d {
                            let ej = kb[leg * d + j];
                            if ej == 0 || self.poisson_gen[i][j].is_zero() {
                                continue;
                            }
                            let scale =
                                cab.clone() * S::from_int(ei as i64) * S::from_int(ej as i64);
                            let mut base: Vec<u16> =
                                ka.iter().zip(kb).map(|(&a, &b)| a + b).collect();
                            base[leg * d + i] -= 1;
                            base[leg * d + j] -= 1;
                            let base_deg = da + db - 2;
                            for (kp, cp) in self.poisson_gen[i][j].terms() {
                                if base_deg + key_degree(kp) > self.cap {
                                    continue;
                                }
                                let mut key = base.clone();
                                for (v, &e) in kp.iter().enumerate() {
                                    key[leg * d + v] += e;
                                }
                                out.add_term(key, scale.clone() * cp.clone());
                            }
                        }
                    }
                }
            }
        }
        out
    }
}
