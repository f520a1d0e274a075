//! Quasitriangular Lie bialgebra input data and its validation gate.
//!
//! The input is a Lie algebra given by structure constants `c[i][j][k]`,
//! meaning `[e_i, e_j] = sum_k c[i][j][k] e_k`, together with an r-matrix
//! `r = sum r[i][j] e_i (x) e_j`. The cobracket is derived as
//! `delta(x) = [r, x(x)1 + 1(x)x]` and the Lie bracket on the dual space by
//! transposing it. The validation gate checks antisymmetry, Jacobi, the
//! classical Yang-Baxter equation, invariance of `r + r^{2,1}`, co-Jacobi
//! and the cocycle identity, all as exact zero tests on residual tensors.

use crate::error::{EngineError, Result};
use crate::report::AxiomReport;
use crate::scalar::Scalar;

/// Rank-3 structure tensor, indexed `t[i][j][k]`.
pub type Tensor3<S> = Vec<Vec<Vec<S>>>;
/// Rank-4 residual tensor.
pub type Tensor4<S> = Vec<Vec<Vec<Vec<S>>>>;
/// Square rational matrix.
pub type Matrix<S> = Vec<Vec<S>>;

pub fn zero_tensor3<S: Scalar>(d: usize) -> Tensor3<S> {
    vec![vec![vec![S::zero(); d]; d]; d]
}

fn zero_tensor4<S: Scalar>(d: usize) -> Tensor4<S> {
    vec![vec![vec![vec![S::zero(); d]; d]; d]; d]
}

pub fn tensor3_nonzeros<S: Scalar>(t: &Tensor3<S>) -> usize {
    t.iter()
        .flatten()
        .flatten()
        .filter(|v| !v.is_zero())
        .count()
}

pub fn tensor4_nonzeros<S: Scalar>(t: &Tensor4<S>) -> usize {
    t.iter()
        .flatten()
        .flatten()
        .flatten()
        .filter(|v| !v.is_zero())
        .count()
}

/// The input datum: a finite-dimensional quasitriangular Lie bialgebra.
#[derive(Debug, Clone)]
pub struct LieBialgebra<S> {
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `bracket[i][j][k]`: coefficient of `e_k` in `[e_i, e_j]`.
    pub bracket: Tensor3<S>,
    /// `r[i][j]`: coefficient of `e_i (x) e_j` in the r-matrix.
    pub r: Matrix<S>,
    /// `cobracket[k][i][j]`: coefficient of `e_i (x) e_j` in `delta(e_k)`.
    /// Derived from `r` and cached at construction.
    pub cobracket: Tensor3<S>,
}

/// The Lie algebra on the dual space, with `<[xi, eta]*, x> = <xi(x)eta, delta(x)>`.
#[derive(Debug, Clone)]
pub struct DualLieAlgebra<S> {
    pub dim: usize,
    /// `bracket[a][b][k]`: coefficient of `xi^k` in `[xi^a, xi^b]*`.
    pub bracket: Tensor3<S>,
}

impl<S: Scalar> LieBialgebra<S> {
    /// Build the datum from structure constants and the r-matrix; derives and
    /// caches the cobracket. Only shapes are checked here -- run
    /// [`LieBialgebra::validate`] for the mathematical gate.
    pub fn new(
        bracket: Tensor3<S>,
        r: Matrix<S>,
        basis_names: Option<Vec<String>>,
    ) -> Result<Self> {
        let dim = bracket.len();
        if dim == 0 {
            return Err(EngineError::Shape("dimension must be positive".into()));
        }
        if bracket.iter().any(|p| p.len() != dim)
            || bracket.iter().flatten().any(|q| q.len() != dim)
        {
            return Err(EngineError::Shape(format!(
                "bracket tensor is not {dim}x{dim}x{dim}"
            )));
        }
        if r.len() != dim || r.iter().any(|row| row.len() != dim) {
            return Err(EngineError::Shape(format!("r-matrix is not {dim}x{dim}")));
        }
        let basis_names = match basis_names {
            Some(names) => {
                if names.len() != dim {
                    return Err(EngineError::Shape(format!(
                        "expected {dim} basis names, got {}",
                        names.len()
                    )));
                }
                names
            }
            None => (1..=dim).map(|i| format!("e{i}")).collect(),
        };
        let cobracket = cobracket_from_r(&bracket, &r);
        Ok(Self {
            dim,
            basis_names,
            bracket,
            r,
            cobracket,
        })
    }

    /// The left-hand side of the classical Yang-Baxter equation,
    /// `[r^{1,2},r^{1,3}] + [r^{1,2},r^{2,3}] + [r^{1,3},r^{2,3}]`,
    /// as an element of g (x) g (x) g; zero iff `r` solves CYBE.
    pub fn cybe_residual(&self) -> Tensor3<S> {
        let d = self.dim;
        let c = &self.bracket;
        let r = &self.r;
        let mut out = zero_tensor3::<S>(d);
        for a in 0..d {
            for b in 0..d {
                for cc in 0..d {
                    let mut acc = S::zero();
                    // [r^{1,2}, r^{1,3}] -> sum_{i,k} r[i][b] r[k][c] c[i][k][a]
                    for i in 0..d {
                        for k in 0..d {
                            if !c[i][k][a].is_zero() {
                                acc = acc
                                    + r[i][b].clone() * r[k][cc].clone() * c[i][k][a].clone();
                            }
                        }
                    }
                    // [r^{1,2}, r^{2,3}] -> sum_{j,k} r[a][j] r[k][c] c[j][k][b]
                    for j in 0..d {
                        for k in 0..d {
                            if !c[j][k][b].is_zero() {
                                acc = acc
                                    + r[a][j].clone() * r[k][cc].clone() * c[j][k][b].clone();
                            }
                        }
                    }
                    // [r^{1,3}, r^{2,3}] -> sum_{j,l} r[a][j] r[b][l] c[j][l][c]
                    for j in 0..d {
                        for l in 0..d {
                            if !c[j][l][cc].is_zero() {
                                acc = acc
                                    + r[a][j].clone() * r[b][l].clone() * c[j][l][cc].clone();
                            }
                        }
                    }
                    out[a][b][cc] = acc;
                }
            }
        }
        out
    }

    /// Exact residual tensors for every hypothesis of the construction.
    pub fn validate(&self) -> ValidationReport<S> {
        let d = self.dim;
        let c = &self.bracket;
        let g = &self.cobracket;

        let mut bracket_antisymmetry = zero_tensor3::<S>(d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    bracket_antisymmetry[i][j][k] = c[i][j][k].clone() + c[j][i][k].clone();
                }
            }
        }

        let jacobi = jacobi_residual(c);

        let mut cobracket_antisymmetry = zero_tensor3::<S>(d);
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    cobracket_antisymmetry[k][i][j] = g[k][i][j].clone() + g[k][j][i].clone();
                }
            }
        }

        // co-Jacobi of gamma == Jacobi of the transposed bracket on g*
        let bs = dual_bracket_tensor(g);
        let co_jacobi = jacobi_residual(&bs);

        // cocycle: delta([x_i,x_j]) - x_i . delta(x_j) + x_j . delta(x_i),
        // where x acts by ad_x (x) 1 + 1 (x) ad_x.
        let mut cocycle = zero_tensor4::<S>(d);
        for i in 0..d {
            for j in 0..d {
                for a in 0..d {
                    for b in 0..d {
                        let mut acc = S::zero();
                        for m in 0..d {
                            if !c[i][j][m].is_zero() {
                                acc = acc + c[i][j][m].clone() * g[m][a][b].clone();
                            }
                        }
                        // minus (ad_i (x) 1 + 1 (x) ad_i) delta(x_j)
                        for p in 0..d {
                            acc = acc - g[j][p][b].clone() * c[i][p][a].clone();
                            acc = acc - g[j][a][p].clone() * c[i][p][b].clone();
                        }
                        // plus (ad_j (x) 1 + 1 (x) ad_j) delta(x_i)
                        for p in 0..d {
                            acc = acc + g[i][p][b].clone() * c[j][p][a].clone();
                            acc = acc + g[i][a][p].clone() * c[j][p][b].clone();
                        }
                        cocycle[i][j][a][b] = acc;
                    }
                }
            }
        }

        let cybe = self.cybe_residual();

        // invariance of t = r + r^{2,1}: [t, x_k (x) 1 + 1 (x) x_k] = 0
        let mut t = vec![vec![S::zero(); d]; d];
        for a in 0..d {
            for b in 0..d {
                t[a][b] = self.r[a][b].clone() + self.r[b][a].clone();
            }
        }
        let symmetric_invariance = cobracket_from_r(c, &t);

        ValidationReport {
            bracket_antisymmetry,
            jacobi,
            cobracket_antisymmetry,
            co_jacobi,
            cocycle,
            cybe,
            symmetric_invariance,
        }
    }

    /// The dual Lie algebra; rejects inputs whose cobracket fails co-Jacobi.
    pub fn dual(&self) -> Result<DualLieAlgebra<S>> {
        let bs = dual_bracket_tensor(&self.cobracket);
        let jac = jacobi_residual(&bs);
        if tensor4_nonzeros(&jac) != 0 {
            return Err(EngineError::Validation(
                "co-Jacobi fails: the dual bracket is not a Lie bracket".into(),
            ));
        }
        Ok(DualLieAlgebra {
            dim: self.dim,
            bracket: bs,
        })
    }
}

/// Derived cobracket: `gamma[k][a][b]` is the coefficient of `e_a (x) e_b`
/// in `[r, e_k (x) 1 + 1 (x) e_k]`.
pub fn cobracket_from_r<S: Scalar>(bracket: &Tensor3<S>, r: &Matrix<S>) -> Tensor3<S> {
    let d = bracket.len();
    let mut g = zero_tensor3::<S>(d);
    for k in 0..d {
        for a in 0..d {
            for b in 0..d {
                let mut acc = S::zero();
                for i in 0..d {
                    if !bracket[i][k][a].is_zero() {
                        acc = acc + r[i][b].clone() * bracket[i][k][a].clone();
                    }
                }
                for j in 0..d {
                    if !bracket[j][k][b].is_zero() {
                        acc = acc + r[a][j].clone() * bracket[j][k][b].clone();
                    }
                }
                g[k][a][b] = acc;
            }
        }
    }
    g
}

/// Transpose of the cobracket: `bs[a][b][k] = gamma[k][a][b]`.
pub fn dual_bracket_tensor<S: Scalar>(cobracket: &Tensor3<S>) -> Tensor3<S> {
    let d = cobracket.len();
    let mut bs = zero_tensor3::<S>(d);
    for a in 0..d {
        for b in 0..d {
            for k in 0..d {
                bs[a][b][k] = cobracket[k][a][b].clone();
            }
        }
    }
    bs
}

/// `J[i][j][k][l]`: coefficient of `e_l` in
/// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
pub fn jacobi_residual<S: Scalar>(c: &Tensor3<S>) -> Tensor4<S> {
    let d = c.len();
    let mut out = zero_tensor4::<S>(d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    let mut acc = S::zero();
                    for m in 0..d {
                        acc = acc + c[i][j][m].clone() * c[m][k][l].clone();
                        acc = acc + c[j][k][m].clone() * c[m][i][l].clone();
                        acc = acc + c[k][i][m].clone() * c[m][j][l].clone();
                    }
                    out[i][j][k][l] = acc;
                }
            }
        }
    }
    out
}

impl<S: Scalar> DualLieAlgebra<S> {
    pub fn is_abelian(&self) -> bool {
        tensor3_nonzeros(&self.bracket) == 0
    }

    pub fn jacobi_residual(&self) -> Tensor4<S> {
        jacobi_residual(&self.bracket)
    }
}

/// Exact residuals for every hypothesis; pass iff all are identically zero.
#[derive(Debug, Clone)]
pub struct ValidationReport<S> {
    pub bracket_antisymmetry: Tensor3<S>,
    pub jacobi: Tensor4<S>,
    pub cobracket_antisymmetry: Tensor3<S>,
    pub co_jacobi: Tensor4<S>,
    pub cocycle: Tensor4<S>,
    pub cybe: Tensor3<S>,
    /// `[r + r^{2,1}, x (x) 1 + 1 (x) x]` per basis vector.
    pub symmetric_invariance: Tensor3<S>,
}

impl<S: Scalar> ValidationReport<S> {
    pub fn pass(&self) -> bool {
        self.report().pass()
    }

    pub fn report(&self) -> AxiomReport {
        let mut rep = AxiomReport::new();
        rep.push(
            "bialgebra.antisymmetry",
            tensor3_nonzeros(&self.bracket_antisymmetry),
        );
        rep.push("bialgebra.jacobi", tensor4_nonzeros(&self.jacobi));
        rep.push(
            "bialgebra.cobracket_antisymmetry",
            tensor3_nonzeros(&self.cobracket_antisymmetry),
        );
        rep.push("bialgebra.co_jacobi", tensor4_nonzeros(&self.co_jacobi));
        rep.push("bialgebra.cocycle", tensor4_nonzeros(&self.cocycle));
        rep.push("bialgebra.cybe", tensor3_nonzeros(&self.cybe));
        rep.push(
            "bialgebra.r_plus_r21_invariance",
            tensor3_nonzeros(&self.symmetric_invariance),
        );
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::catalog;
    use crate::Rat;

    fn q(n: i64, d: i64) -> Rat {
        Rat::from_ratio(n, d)
    }

    #[test]
    fn abelian_passes() {
        let mut r = vec![vec![q(0, 1); 3]; 3];
        r[0][2] = q(7, 2);
        r[1][1] = q(-1, 3);
        let l = catalog::abelian::<Rat>(3, r);
        assert!(l.validate().pass());
        assert_eq!(tensor3_nonzeros(&l.cybe_residual()), 0);
        assert_eq!(tensor3_nonzeros(&l.cobracket), 0);
    }

    #[test]
    fn sl2_passes_gate() {
        let l = catalog::sl2::<Rat>();
        let rep = l.validate();
        assert!(rep.pass(), "{}", rep.report());
    }

    #[test]
    fn non_antisymmetric_bracket_fails() {
        // c[1][2][3] = c[2][1][3] = 1 violates antisymmetry by construction
        let mut c = zero_tensor3::<Rat>(3);
        c[0][1][2] = q(1, 1);
        c[1][0][2] = q(1, 1);
        let l = LieBialgebra::new(c, vec![vec![q(0, 1); 3]; 3], None).unwrap();
        let rep = l.validate();
        assert!(!rep.pass());
        assert!(tensor3_nonzeros(&rep.bracket_antisymmetry) > 0);
    }

    #[test]
    fn sl2_cybe_examples() {
        // standard r solves CYBE; r = h (x) e does not, with residual -2 h(x)e(x)e
        let l = catalog::sl2::<Rat>();
        assert_eq!(tensor3_nonzeros(&l.cybe_residual()), 0);

        let mut r = vec![vec![q(0, 1); 3]; 3];
        r[0][1] = q(1, 1); // h (x) e with basis order (h, e, f)
        let bad = LieBialgebra::new(l.bracket.clone(), r, None).unwrap();
        let res = bad.cybe_residual();
        assert_eq!(res[0][1][1], q(-2, 1));
        assert_eq!(tensor3_nonzeros(&res), 1);
    }

    #[test]
    fn cobracket_matches_term_by_term_commutator() {
        // independent oracle: expand [r, x(x)1 + 1(x)x] term by term in g (x) g
        let l = catalog::sl2::<Rat>();
        let d = l.dim;
        for k in 0..d {
            let mut expect = vec![vec![q(0, 1); d]; d];
            for i in 0..d {
                for j in 0..d {
                    let rij = l.r[i][j].clone();
                    if rij.is_zero() {
                        continue;
                    }
                    // [e_i, e_k] (x) e_j
                    for a in 0..d {
                        expect[a][j] =
                            expect[a][j].clone() + rij.clone() * l.bracket[i][k][a].clone();
                    }
                    // e_i (x) [e_j, e_k]
                    for b in 0..d {
                        expect[i][b] =
                            expect[i][b].clone() + rij.clone() * l.bracket[j][k][b].clone();
                    }
                }
            }
            for a in 0..d {
                for b in 0..d {
                    assert_eq!(l.cobracket[k][a][b], expect[a][b], "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn cobracket_zero_for_zero_r() {
        let l = LieBialgebra::new(
            catalog::sl2::<Rat>().bracket,
            vec![vec![q(0, 1); 3]; 3],
            None,
        )
        .unwrap();
        assert_eq!(tensor3_nonzeros(&l.cobracket), 0);
    }

    #[test]
    fn sl2_cobracket_values() {
        // delta(h) = 0, delta(e) = 1/2 (h(x)e - e(x)h), delta(f) = 1/2 (h(x)f - f(x)h)
        let l = catalog::sl2::<Rat>();
        assert!(l.cobracket[0].iter().flatten().all(|v| v.is_zero()));
        assert_eq!(l.cobracket[1][0][1], q(1, 2));
        assert_eq!(l.cobracket[1][1][0], q(-1, 2));
        assert_eq!(l.cobracket[2][0][2], q(1, 2));
        assert_eq!(l.cobracket[2][2][0], q(-1, 2));
    }

    #[test]
    fn dual_bracket_is_transposed_cobracket() {
        let l = catalog::sl2::<Rat>();
        let dual = l.dual().unwrap();
        for a in 0..3 {
            for b in 0..3 {
                for k in 0..3 {
                    assert_eq!(dual.bracket[a][b][k], l.cobracket[k][a][b]);
                }
            }
        }
        // pairing identity <[xi,eta]*, x> = <xi (x) eta, delta(x)> on all triples
        // is the same transposition, so nothing further to check exactly.
        assert_eq!(tensor4_nonzeros(&dual.jacobi_residual()), 0);
    }

    #[test]
    fn dual_of_dim1_is_abelian() {
        let l = catalog::abelian::<Rat>(1, vec![vec![q(5, 3)]]);
        assert!(l.dual().unwrap().is_abelian());
    }

    #[test]
    fn invariance_fails_for_non_quasitriangular_r() {
        // sl2 with r = h (x) e: t = r + r^21 is not invariant
        let l = catalog::sl2::<Rat>();
        let mut r = vec![vec![q(0, 1); 3]; 3];
        r[0][1] = q(1, 1);
        let bad = LieBialgebra::new(l.bracket, r, None).unwrap();
        let rep = bad.validate();
        assert!(tensor3_nonzeros(&rep.symmetric_invariance) > 0);
        assert!(!rep.pass());
    }

    #[test]
    fn family_cobrackets_satisfy_cojacobi_and_cocycle() {
        for l in [
            catalog::solvable2::<Rat>(),
            catalog::sl2::<Rat>(),
            catalog::book3::<Rat>(),
            catalog::sl2_scaled::<Rat>(q(3, 7)),
        ] {
            let rep = l.validate();
            assert!(rep.pass(), "{}", rep.report());
        }
    }
}
