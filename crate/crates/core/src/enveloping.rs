//! PBW machinery for the enveloping algebra of the dual Lie algebra:
//! straightening, symmetrization and its inverse, the primitive coproduct
//! and the co-Poisson cobracket extended by the co-Leibniz rule.
//!
//! PBW basis words are weakly increasing index sequences; since a weakly
//! increasing word is determined by its letter multiset, basis keys are
//! stored as exponent vectors of length `dim`.
//!
//! Pairing convention between S(g) and S(g*) (fixed globally):
//! `<x_1...x_m, xi_1...xi_n> = delta_{mn} sum_{s in S_n} prod_i <x_i, xi_{s(i)}>`
//! (no `1/n!`), so `<x^a, xi^b> = delta_{ab} a!`. Symmetrization carries the
//! `1/n!` prefactor, making `Sym(xi^n) = xi^n`.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::liebialg::{DualLieAlgebra, LieBialgebra};
use crate::scalar::{factorial, Scalar};

/// Element of the enveloping algebra in the PBW basis: weakly increasing
/// words keyed by their exponent vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PbwElement<S> {
    pub terms: BTreeMap<Vec<u16>, S>,
}

/// Element of the tensor square of the enveloping algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorSquare<S> {
    pub terms: BTreeMap<(Vec<u16>, Vec<u16>), S>,
}

impl<S: Scalar> PbwElement<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0u16; dim], S::one());
        Self { terms }
    }

    pub fn monomial(exp: Vec<u16>, coeff: S) -> Self {
        let mut e = Self::zero();
        e.add_term(exp, coeff);
        e
    }

    pub fn add_term(&mut self, exp: Vec<u16>, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum word length among the terms.
    pub fn max_len(&self) -> usize {
        self.terms
            .keys()
            .map(|k| k.iter().map(|&e| e as usize).sum())
            .max()
            .unwrap_or(0)
    }
}

impl<S: Scalar> TensorSquare<S> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: (Vec<u16>, Vec<u16>), coeff: S) {
        if coeff.is_zero() {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tensor-square flip `u (x) v -> v (x) u`.
    pub fn flip(&self) -> Self {
        let mut out = Self::zero();
        for ((u, v), c) in &self.terms {
            out.add_term((v.clone(), u.clone()), c.clone());
        }
        out
    }
}

pub fn word_from_exp(exp: &[u16]) -> Vec<usize> {
    let mut w = Vec::new();
    for (i, &e) in exp.iter().enumerate() {
        for _ in 0..e {
            w.push(i);
        }
    }
    w
}

pub fn exp_from_word(word: &[usize], dim: usize) -> Vec<u16> {
    let mut e = vec![0u16; dim];
    for &l in word {
        e[l] += 1;
    }
    e
}

/// PBW straightening with memoization, shared across a batch of calls.
pub struct Straightener<'a, S> {
    dual: &'a DualLieAlgebra<S>,
    memo: HashMap<Vec<usize>, PbwElement<S>>,
    sym_memo: HashMap<Vec<u16>, PbwElement<S>>,
    sym_inv_memo: HashMap<Vec<u16>, BTreeMap<Vec<u16>, S>>,
}

impl<'a, S: Scalar> Straightener<'a, S> {
    pub fn new(dual: &'a DualLieAlgebra<S>) -> Self {
        Self {
            dual,
            memo: HashMap::new(),
            sym_memo: HashMap::new(),
            sym_inv_memo: HashMap::new(),
        }
    }

    /// Rewrite an arbitrary word into the weakly increasing PBW basis using
    /// `xi eta = eta xi + [xi, eta]*`. Exact; terminates because correction
    /// terms are strictly shorter.
    pub fn normalize(&mut self, word: &[usize]) -> PbwElement<S> {
        for l in word {
            assert!(*l < self.dual.dim, "index out of range");
        }
        self.normalize_inner(word)
    }

    fn normalize_inner(&mut self, word: &[usize]) -> PbwElement<S> {
        let descent = word.windows(2).position(|w| w[0] > w[1]);
        let Some(p) = descent else {
            return PbwElement::monomial(exp_from_word(word, self.dual.dim), S::one());
        };
        if let Some(hit) = self.memo.get(word) {
            return hit.clone();
        }
        let mut swapped = word.to_vec();
        swapped.swap(p, p + 1);
        let mut out = self.normalize_inner(&swapped);
        let (a, b) = (word[p], word[p + 1]);
        for k in 0..self.dual.dim {
            let coef = self.dual.bracket[a][b][k].clone();
            if coef.is_zero() {
                continue;
            }
            let mut shorter = Vec::with_capacity(word.len() - 1);
            shorter.extend_from_slice(&word[..p]);
            shorter.push(k);
            shorter.extend_from_slice(&word[p + 2..]);
            out = out.add(&self.normalize_inner(&shorter).scale(&coef));
        }
        self.memo.insert(word.to_vec(), out.clone());
        out
    }

    /// Product in the enveloping algebra, bilinear over PBW terms.
    pub fn multiply(&mut self, a: &PbwElement<S>, b: &PbwElement<S>) -> PbwElement<S> {
        let mut out = PbwElement::zero();
        for (ka, ca) in &a.terms {
            let wa = word_from_exp(ka);
            for (kb, cb) in &b.terms {
                let mut w = wa.clone();
                w.extend(word_from_exp(kb));
                let prod = self.normalize_inner(&w).scale(&(ca.clone() * cb.clone()));
                out = out.add(&prod);
            }
        }
        out
    }

    /// Product in the tensor square, componentwise.
    pub fn multiply_square(&mut self, a: &TensorSquare<S>, b: &TensorSquare<S>) -> TensorSquare<S> {
        let mut out = TensorSquare::zero();
        for ((ua, va), ca) in &a.terms {
            for ((ub, vb), cb) in &b.terms {
                let mut wu = word_from_exp(ua);
                wu.extend(word_from_exp(ub));
                let mut wv = word_from_exp(va);
                wv.extend(word_from_exp(vb));
                let left = self.normalize_inner(&wu);
                let right = self.normalize_inner(&wv);
                let c = ca.clone() * cb.clone();
                for (ku, cu) in &left.terms {
                    for (kv, cv) in &right.terms {
                        out.add_term(
                            (ku.clone(), kv.clone()),
                            c.clone() * cu.clone() * cv.clone(),
                        );
                    }
                }
            }
        }
        out
    }

    /// Symmetrization of a commutative monomial, in the PBW basis:
    /// `Sym(xi_{i1}...xi_{in}) = (1/n!) sum_{s in S_n} xi_{i s(1)}...xi_{i s(n)}`.
    pub fn sym_map(&mut self, exp: &[u16]) -> PbwElement<S> {
        if let Some(hit) = self.sym_memo.get(exp) {
            return hit.clone();
        }
        let word = word_from_exp(exp);
        let n = word.len();
        if n == 0 {
            return PbwElement::unit(self.dual.dim);
        }
        // distinct arrangements of the multiset, each weighted e!/n!
        let mut weight = S::one();
        for &e in exp {
            weight = weight * factorial::<S>(e as usize);
        }
        weight = weight / factorial::<S>(n);
        let mut out = PbwElement::zero();
        let mut arrangement = word;
        loop {
            out = out.add(&self.normalize_inner(&arrangement).scale(&weight));
            if !next_permutation(&mut arrangement) {
                break;
            }
        }
        self.sym_memo.insert(exp.to_vec(), out.clone());
        out
    }

    /// Inverse of `sym_map` (Sym is a filtered isomorphism): the commutative
    /// polynomial `q` with `Sym(q) = p`, extracted degree by degree.
    pub fn sym_inverse(&mut self, p: &PbwElement<S>) -> BTreeMap<Vec<u16>, S> {
        let mut out: BTreeMap<Vec<u16>, S> = BTreeMap::new();
        for (k, c) in &p.terms {
            let inv = self.sym_inverse_word(k);
            for (km, cm) in inv {
                add_comm_term(&mut out, km, cm * c.clone());
            }
        }
        out
    }

    fn sym_inverse_word(&mut self, exp: &[u16]) -> BTreeMap<Vec<u16>, S> {
        if let Some(hit) = self.sym_inv_memo.get(exp) {
            return hit.clone();
        }
        // Sym(m_w) = w + tail with strictly shorter tail words, so
        // sym_inverse(w) = m_w - sym_inverse(tail).
        let sym = self.sym_map(exp);
        let mut tail = sym;
        tail.add_term(exp.to_vec(), -S::one());
        let mut out: BTreeMap<Vec<u16>, S> = BTreeMap::new();
        out.insert(exp.to_vec(), S::one());
        for (k, c) in tail.terms.clone() {
            debug_assert!(
                k.iter().map(|&e| e as usize).sum::<usize>()
                    < exp.iter().map(|&e| e as usize).sum::<usize>()
            );
            let inv = self.sym_inverse_word(&k);
            for (km, cm) in inv {
                add_comm_term(&mut out, km, -(cm * c.clone()));
            }
        }
        self.sym_inv_memo.insert(exp.to_vec(), out.clone());
        out
    }
}

fn add_comm_term<S: Scalar>(map: &mut BTreeMap<Vec<u16>, S>, key: Vec<u16>, coeff: S) {
    if coeff.is_zero() {
        return;
    }
    match map.entry(key) {
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

/// Next lexicographic permutation in place; false when wrapped around.
fn next_permutation(arr: &mut [usize]) -> bool {
    if arr.len() < 2 {
        return false;
    }
    let mut i = arr.len() - 1;
    while i > 0 && arr[i - 1] >= arr[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = arr.len() - 1;
    while arr[j] <= arr[i - 1] {
        j -= 1;
    }
    arr.swap(i - 1, j);
    arr[i..].reverse();
    true
}

/// Primitive coproduct of a PBW basis word: expanding
/// `prod (xi (x) 1 + 1 (x) xi)` over a sorted word keeps both factors
/// sorted, so no straightening is needed.
pub fn u_coproduct<S: Scalar>(exp: &[u16]) -> TensorSquare<S> {
    let mut out = TensorSquare::zero();
    let mut split = vec![0u16; exp.len()];
    loop {
        let mut coeff = S::one();
        for i in 0..exp.len() {
            coeff = coeff * crate::scalar::binomial::<S>(exp[i] as usize, split[i] as usize);
        }
        let rest: Vec<u16> = exp.iter().zip(&split).map(|(&e, &v)| e - v).collect();
        out.add_term((split.clone(), rest), coeff);
        // next subexponent vector
        let mut i = 0;
        loop {
            if i == exp.len() {
                return out;
            }
            if split[i] < exp[i] {
                split[i] += 1;
                break;
            }
            split[i] = 0;
            i += 1;
        }
    }
}

/// One-shot PBW straightening (fresh memo); see [`Straightener::normalize`].
pub fn pbw_normalize<S: Scalar>(dual: &DualLieAlgebra<S>, word: &[usize]) -> PbwElement<S> {
    Straightener::new(dual).normalize(word)
}

/// Precomputed co-Poisson data for one `(g, N)`: the cobracket
/// `delta_U: U(g*) -> U(g*) (x) U(g*)` extending the dual of the bracket of
/// g by the co-Leibniz rule `delta(ab) = delta(a) Delta(b) + Delta(a) delta(b)`,
/// tabulated on every PBW word and every symmetrized basis monomial of
/// length <= N.
#[derive(Debug, Clone)]
pub struct CoPoissonTable<S> {
    pub dim: usize,
    pub max_len: usize,
    /// delta_U on PBW basis words.
    pub delta_word: BTreeMap<Vec<u16>, TensorSquare<S>>,
    /// delta_U on symmetrized basis monomials `Sym(xi^e)`.
    pub delta_sym: BTreeMap<Vec<u16>, TensorSquare<S>>,
    /// `Sym(xi^e)` in the PBW basis.
    pub sym_words: BTreeMap<Vec<u16>, PbwElement<S>>,
    /// Degree-1 component of `sym_inverse` of each PBW word.
    pub linear_part: BTreeMap<Vec<u16>, Vec<S>>,
}

impl<S: Scalar> CoPoissonTable<S> {
    /// Single-threaded build step; the table is immutable afterwards.
    pub fn build(bialgebra: &LieBialgebra<S>, dual: &DualLieAlgebra<S>, max_len: usize) -> Self {
        let dim = bialgebra.dim;
        let mut st = Straightener::new(dual);

        // delta on generators: <delta_U(xi^k), x_a (x) x_b> = c[a][b][k]
        let mut delta_gen: Vec<TensorSquare<S>> = Vec::with_capacity(dim);
        for k in 0..dim {
            let mut t = TensorSquare::zero();
            for a in 0..dim {
                for b in 0..dim {
                    let coef = bialgebra.bracket[a][b][k].clone();
                    if !coef.is_zero() {
                        t.add_term((unit_exp(dim, a), unit_exp(dim, b)), coef);
                    }
                }
            }
            delta_gen.push(t);
        }

        let mut delta_word: BTreeMap<Vec<u16>, TensorSquare<S>> = BTreeMap::new();
        let mut delta_sym: BTreeMap<Vec<u16>, TensorSquare<S>> = BTreeMap::new();
        let mut sym_words: BTreeMap<Vec<u16>, PbwElement<S>> = BTreeMap::new();
        let mut linear_part: BTreeMap<Vec<u16>, Vec<S>> = BTreeMap::new();

        for n in 0..=max_len {
            for exp in exponents_of_degree(dim, n) {
                // delta_U on the word, peeling the first letter
                let d_w = if n == 0 {
                    TensorSquare::zero()
                } else if n == 1 {
                    let k = exp.iter().position(|&e| e > 0).unwrap();
                    delta_gen[k].clone()
                } else {
                    let word = word_from_exp(&exp);
                    let first = word[0];
                    let rest = exp_from_word(&word[1..], dim);
                    let d_first = &delta_gen[first];
                    let cop_rest = u_coproduct::<S>(&rest);
                    let d_rest = delta_word.get(&rest).expect("built in length order");
                    let cop_first = u_coproduct::<S>(&unit_exp(dim, first));
                    let part1 = st.multiply_square(d_first, &cop_rest);
                    let part2 = st.multiply_square(&cop_first, d_rest);
                    part1.add(&part2)
                };
                delta_word.insert(exp.clone(), d_w);

                let sym = st.sym_map(&exp);
                let mut d_sym = TensorSquare::zero();
                for (w, c) in &sym.terms {
                    d_sym = d_sym.add(&delta_word.get(w).expect("within length bound").scale(c));
                }
                delta_sym.insert(exp.clone(), d_sym);
                sym_words.insert(exp.clone(), sym);

                let inv = st.sym_inverse_word(&exp);
                let mut lin = vec![S::zero(); dim];
                for (k, c) in &inv {
                    if k.iter().map(|&e| e as usize).sum::<usize>() == 1 {
                        let i = k.iter().position(|&e| e > 0).unwrap();
                        lin[i] = c.clone();
                    }
                }
                linear_part.insert(exp, lin);
            }
        }

        Self {
            dim,
            max_len,
            delta_word,
            delta_sym,
            sym_words,
            linear_part,
        }
    }

    /// The co-Poisson cobracket of an arbitrary PBW element within the
    /// tabulated range.
    pub fn cobracket(&self, p: &PbwElement<S>) -> TensorSquare<S> {
        let mut out = TensorSquare::zero();
        for (k, c) in &p.terms {
            let d = self
                .delta_word
                .get(k)
                .unwrap_or_else(|| panic!("word beyond tabulated length {}", self.max_len));
            out = out.add(&d.scale(c));
        }
        out
    }
}

pub fn unit_exp(dim: usize, i: usize) -> Vec<u16> {
    let mut e = vec![0u16; dim];
    e[i] = 1;
    e
}

/// All exponent vectors over `vars` variables with total degree exactly `n`.
pub fn exponents_of_degree(vars: usize, n: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; vars];
    fill_degree(&mut out, &mut cur, 0, n);
    out
}

fn fill_degree(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, pos: usize, left: usize) {
    if pos == cur.len() {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if pos == cur.len() - 1 {
        cur[pos] = left as u16;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for v in 0..=left {
        cur[pos] = v as u16;
        fill_degree(out, cur, pos + 1, left - v);
    }
    cur[pos] = 0;
}
