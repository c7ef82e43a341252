//! Named algebras used throughout the tests and bundled as documents.

use crate::algebra::BiHomAlgebra;
use crate::document::AlgebraDocument;
use crate::error::Result;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::Tensor3;

/// `k[x]/(x^2)` on the basis `e1 = 1`, `e2 = x`, identity structure maps.
pub fn dual_numbers() -> BiHomAlgebra {
    let one = Scalar::one();
    BiHomAlgebra::untwisted(Tensor3::from_entries(2, &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one)]))
}

/// `x d/dx` on `k[x]/(x^2)`: `e1 -> 0`, `e2 -> e2`.
pub fn dual_numbers_derivation() -> Matrix {
    Matrix::diagonal(&[Scalar::zero(), Scalar::one()])
}

/// The derivation-twisted product on the dual numbers with
/// `alpha = diag(1, a)`, `beta = diag(1, b)`: the only nonzero product is
/// `e1 e2 = b e2`.
pub fn n_ab(a: i64, b: i64) -> BiHomAlgebra {
    let mu = Tensor3::from_entries(2, &[(0, 1, 1, Scalar::from_int(b))]);
    BiHomAlgebra::new(mu, diag(&[1, a]), diag(&[1, b])).expect("2x2 maps")
}

/// The three-dimensional Heisenberg bracket `[e1, e2] = e3`.
pub fn heisenberg() -> BiHomAlgebra {
    BiHomAlgebra::untwisted(Tensor3::from_entries(3, &[(0, 1, 2, Scalar::one()), (1, 0, 2, Scalar::from_int(-1))]))
}

/// The one-dimensional algebra `e e = e`.
pub fn unit_line() -> BiHomAlgebra {
    BiHomAlgebra::untwisted(Tensor3::from_entries(1, &[(0, 0, 0, Scalar::one())]))
}

pub fn diag(entries: &[i64]) -> Matrix {
    Matrix::diagonal(&entries.iter().map(|&v| Scalar::from_int(v)).collect::<Vec<_>>())
}

/// Bundled documents as `(file name, contents)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("zero1.alg", include_str!("../corpus/zero1.alg")),
    ("zero2.alg", include_str!("../corpus/zero2.alg")),
    ("zero3.alg", include_str!("../corpus/zero3.alg")),
    ("dual_numbers.alg", include_str!("../corpus/dual_numbers.alg")),
    ("n11.alg", include_str!("../corpus/n11.alg")),
    ("n23.alg", include_str!("../corpus/n23.alg")),
    ("unit_line.alg", include_str!("../corpus/unit_line.alg")),
    ("heisenberg.alg", include_str!("../corpus/heisenberg.alg")),
    ("involutive.alg", include_str!("../corpus/involutive.alg")),
    ("quadratic_f5.alg", include_str!("../corpus/quadratic_f5.alg")),
    ("xi_deformation.alg", include_str!("../corpus/xi_deformation.alg")),
    ("swap_twist.alg", include_str!("../corpus/swap_twist.alg")),
];

pub fn bundled(name: &str) -> Option<Result<AlgebraDocument>> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| AlgebraDocument::parse(text))
}

/// Every bundled document, parsed.
pub fn all_bundled() -> Result<Vec<(&'static str, AlgebraDocument)>> {
    BUNDLED.iter().map(|(n, text)| Ok((*n, AlgebraDocument::parse(text)?))).collect()
}
