//! Ready-made small quasitriangular Lie bialgebras.
//!
//! Used throughout the test suites; handy as demo inputs. All of them pass
//! the validation gate exactly.

use crate::liebialg::{zero_tensor3, LieBialgebra, Matrix, Tensor3};
use crate::scalar::Scalar;

/// Abelian Lie algebra of the given dimension with an arbitrary r-matrix.
pub fn abelian<S: Scalar>(dim: usize, r: Matrix<S>) -> LieBialgebra<S> {
    LieBialgebra::new(zero_tensor3::<S>(dim), r, None).expect("valid shapes")
}

/// The 2-dimensional nonabelian Lie algebra `[x, y] = y` with the triangular
/// r-matrix `r = x (x) y - y (x) x`.
pub fn solvable2<S: Scalar>() -> LieBialgebra<S> {
    let mut c = zero_tensor3::<S>(2);
    c[0][1][1] = S::one();
    c[1][0][1] = -S::one();
    let mut r = vec![vec![S::zero(); 2]; 2];
    r[0][1] = S::one();
    r[1][0] = -S::one();
    LieBialgebra::new(c, r, Some(vec!["x".into(), "y".into()])).expect("valid shapes")
}

/// sl2 with basis `(h, e, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`,
/// and the standard r-matrix `r = e (x) f + h (x) h / 4`.
pub fn sl2<S: Scalar>() -> LieBialgebra<S> {
    sl2_scaled(S::one())
}

/// sl2 with the standard r-matrix scaled by `mu` (CYBE is quadratic in r, so
/// every scaling is again quasitriangular).
pub fn sl2_scaled<S: Scalar>(mu: S) -> LieBialgebra<S> {
    let two = S::from_int(2);
    let mut c = zero_tensor3::<S>(3);
    c[0][1][1] = two.clone(); // [h, e] = 2e
    c[1][0][1] = -two.clone();
    c[0][2][2] = -two.clone(); // [h, f] = -2f
    c[2][0][2] = two;
    c[1][2][0] = S::one(); // [e, f] = h
    c[2][1][0] = -S::one();
    let mut r = vec![vec![S::zero(); 3]; 3];
    r[1][2] = mu.clone();
    r[0][0] = mu * S::from_ratio(1, 4);
    LieBialgebra::new(c, r, Some(vec!["h".into(), "e".into(), "f".into()])).expect("valid shapes")
}

/// The 3-dimensional "book" algebra `[h,x] = x`, `[h,y] = y`, `[x,y] = 0`
/// with `r = h (x) x - x (x) h`.
pub fn book3<S: Scalar>() -> LieBialgebra<S> {
    let mut c = zero_tensor3::<S>(3);
    c[0][1][1] = S::one();
    c[1][0][1] = -S::one();
    c[0][2][2] = S::one();
    c[2][0][2] = -S::one();
    let mut r = vec![vec![S::zero(); 3]; 3];
    r[0][1] = S::one();
    r[1][0] = -S::one();
    LieBialgebra::new(c, r, Some(vec!["h".into(), "x".into(), "y".into()])).expect("valid shapes")
}

/// Structure constants of a diagonal solvable algebra `[h, x_i] = w_i x_i`
/// on `1 + weights.len()` generators. Jacobi holds for every weight vector;
/// used to generate validated Lie algebras of small dimension.
pub fn diag_solvable_bracket<S: Scalar>(weights: &[i64]) -> Tensor3<S> {
    let d = weights.len() + 1;
    let mut c = zero_tensor3::<S>(d);
    for (idx, &w) in weights.iter().enumerate() {
        let i = idx + 1;
        c[0][i][i] = S::from_int(w);
        c[i][0][i] = -S::from_int(w);
    }
    c
}

/// Heisenberg bracket `[x, y] = z` (for negative tests: the skew r-matrix
/// `x (x) y - y (x) x` fails CYBE on it).
pub fn heisenberg_bracket<S: Scalar>() -> Tensor3<S> {
    let mut c = zero_tensor3::<S>(3);
    c[0][1][2] = S::one();
    c[1][0][2] = -S::one();
    c
}
