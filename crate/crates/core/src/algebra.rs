//! Finite-dimensional algebras given by structure constants, with a pair of
//! structure maps.

use std::fmt;
use std::str::FromStr;

use crate::error::{ensure_dim, Error, Result};
use crate::matrix::{vector, Matrix, Vector};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tensor::Tensor3;

/// Class an algebra has been verified to belong to.
///
/// Tags are metadata attached by constructions after their output has been
/// rechecked; operations never trust a tag and re-verify what they need.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Kind {
    #[default]
    Untagged,
    Associative,
    Lie,
    Novikov,
    BiHomAssociative,
    BiHomLie,
    BiHomNovikov,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Untagged,
        Kind::Associative,
        Kind::Lie,
        Kind::Novikov,
        Kind::BiHomAssociative,
        Kind::BiHomLie,
        Kind::BiHomNovikov,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Untagged => "untagged",
            Kind::Associative => "associative",
            Kind::Lie => "lie",
            Kind::Novikov => "novikov",
            Kind::BiHomAssociative => "bihom-associative",
            Kind::BiHomLie => "bihom-lie",
            Kind::BiHomNovikov => "bihom-novikov",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::Validation(format!("unknown algebra kind {s:?}")))
    }
}

/// `(A, mu, alpha, beta)` with `e_i e_j = sum_k c[i][j][k] e_k`.
///
/// Only dimensions are validated on construction. Commutation and
/// multiplicativity of the structure maps are properties the checkers report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomAlgebra {
    mu: Tensor3,
    alpha: Matrix,
    beta: Matrix,
    kind: Kind,
}

impl BiHomAlgebra {
    pub fn new(mu: Tensor3, alpha: Matrix, beta: Matrix) -> Result<Self> {
        let n = mu.dim();
        for m in [&alpha, &beta] {
            ensure_dim(n, m.rows())?;
            ensure_dim(n, m.cols())?;
        }
        Ok(BiHomAlgebra { mu, alpha, beta, kind: Kind::Untagged })
    }

    /// Product with identity structure maps.
    pub fn untwisted(mu: Tensor3) -> Self {
        let n = mu.dim();
        BiHomAlgebra { mu, alpha: Matrix::identity(n), beta: Matrix::identity(n), kind: Kind::Untagged }
    }

    pub fn zero(n: usize) -> Self {
        Self::untwisted(Tensor3::zeros(n))
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    pub fn mu(&self) -> &Tensor3 {
        &self.mu
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub(crate) fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    /// Same product, different structure maps; the tag is dropped.
    pub fn with_maps(&self, alpha: Matrix, beta: Matrix) -> Result<Self> {
        Self::new(self.mu.clone(), alpha, beta)
    }

    /// Attaches `kind` after running the matching checker.
    pub fn tagged(self, kind: Kind) -> Result<Self> {
        let report = crate::axioms::check_kind(&self, kind)?;
        if report.passed() {
            Ok(self.with_kind(kind))
        } else {
            Err(Error::PrerequisiteFailed(format!("{kind} check: {}", report.summary())))
        }
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        ensure_dim(self.dim(), x.len())?;
        ensure_dim(self.dim(), y.len())?;
        Ok(self.mu.apply(x, y))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        self.mu.apply(x, y)
    }

    pub fn basis(&self) -> Vec<Vector> {
        (0..self.dim()).map(|i| vector::unit(self.dim(), i)).collect()
    }

    /// Both structure maps invertible.
    pub fn is_regular(&self) -> bool {
        self.alpha.rank() == self.dim() && self.beta.rank() == self.dim()
    }

    pub fn is_involutive(&self) -> bool {
        self.alpha.pow(2).is_identity() && self.beta.pow(2).is_identity()
    }

    /// `(alpha^-1 beta, alpha beta^-1)`, the twists appearing in the
    /// sub-adjacent bracket and the coboundaries.
    pub fn twists(&self) -> Result<(Matrix, Matrix)> {
        let a_inv = self.alpha.invert()?;
        let b_inv = self.beta.invert()?;
        Ok((&a_inv * &self.beta, &self.alpha * &b_inv))
    }

    /// `x y - alpha^-1 beta(y) . alpha beta^-1(x)`.
    pub fn subadjacent_bracket_value(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        let (ab, ba) = self.twists()?;
        Ok(vector::sub(&self.mul(x, y), &self.mul(&ab.apply(y), &ba.apply(x))))
    }

    pub fn opposite_twisted_product(&self, x: &[Scalar], y: &[Scalar], twist: Twist) -> Result<Vector> {
        ensure_dim(self.dim(), x.len())?;
        ensure_dim(self.dim(), y.len())?;
        match twist {
            Twist::None => Ok(self.mul(y, x)),
            Twist::Inverse => {
                let (ab, ba) = self.twists()?;
                Ok(self.mul(&ab.apply(y), &ba.apply(x)))
            }
        }
    }
}

/// How [`BiHomAlgebra::opposite_twisted_product`] twists its arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    /// `y x`
    None,
    /// `alpha^-1 beta(y) . alpha beta^-1(x)`
    Inverse,
}

fn ensure_square(a: &BiHomAlgebra, m: &Matrix) -> Result<()> {
    ensure_dim(a.dim(), m.rows())?;
    ensure_dim(a.dim(), m.cols())
}

/// `M(e_i e_j) = M(e_i) M(e_j)` on all basis pairs.
pub fn is_morphism(a: &BiHomAlgebra, m: &Matrix) -> Result<CheckReport> {
    ensure_square(a, m)?;
    let mut report = CheckReport::new();
    record_multiplicativity(a, m, "morphism", &mut report);
    Ok(report)
}

pub(crate) fn record_multiplicativity(a: &BiHomAlgebra, m: &Matrix, name: &str, report: &mut CheckReport) {
    let n = a.dim();
    let images: Vec<Vector> = (0..n).map(|i| m.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.apply(a.mu.basis_value(i, j));
            let rhs = a.mul(&images[i], &images[j]);
            report.expect_eq(name, &[i, j], lhs, rhs);
        }
    }
}

/// Leibniz rule `D(xy) = D(x) y + x D(y)` on all basis pairs.
pub fn is_derivation(a: &BiHomAlgebra, d: &Matrix) -> Result<CheckReport> {
    ensure_square(a, d)?;
    let n = a.dim();
    let basis = a.basis();
    let images: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = d.apply(a.mu.basis_value(i, j));
            let rhs = vector::add(&a.mul(&images[i], &basis[j]), &a.mul(&basis[i], &images[j]));
            report.expect_eq("derivation", &[i, j], lhs, rhs);
        }
    }
    Ok(report)
}

pub fn commutes(m: &Matrix, n: &Matrix) -> Result<bool> {
    ensure_dim(m.rows(), m.cols())?;
    ensure_dim(m.rows(), n.rows())?;
    ensure_dim(n.rows(), n.cols())?;
    Ok(m * n == n * m)
}

pub(crate) fn record_commutation(m: &Matrix, n: &Matrix, name: &str, report: &mut CheckReport) {
    let mn = m * n;
    let nm = n * m;
    for j in 0..m.cols() {
        report.expect_eq(name, &[j], mn.column(j), nm.column(j));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn e(n: usize, i: usize) -> Vector {
        vector::unit(n, i)
    }

    fn ints(v: &[i64]) -> Vector {
        v.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn multiply_examples() {
        let z = BiHomAlgebra::zero(2);
        assert_eq!(z.multiply(&e(2, 0), &e(2, 1)).unwrap(), ints(&[0, 0]));
        let d2 = corpus::dual_numbers();
        assert_eq!(d2.multiply(&e(2, 0), &e(2, 1)).unwrap(), ints(&[0, 1]));
        assert_eq!(d2.multiply(&ints(&[1, 1]), &ints(&[1, 1])).unwrap(), ints(&[1, 2]));
        assert_eq!(
            d2.multiply(&ints(&[1, 1, 1]), &ints(&[1, 1])),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn morphism_examples() {
        let d2 = corpus::dual_numbers();
        assert!(is_morphism(&d2, &Matrix::identity(2)).unwrap().passed());
        for a in [-3, 0, 2, 7] {
            let m = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(a)]);
            assert!(is_morphism(&d2, &m).unwrap().passed());
        }
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        let report = is_morphism(&d2, &swap).unwrap();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().indices, vec![0, 0]);
        assert!(is_morphism(&d2, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn derivation_examples() {
        let d2 = corpus::dual_numbers();
        assert!(is_derivation(&d2, &Matrix::zeros(2, 2)).unwrap().passed());
        assert!(is_derivation(&d2, &corpus::dual_numbers_derivation()).unwrap().passed());
        let report = is_derivation(&d2, &Matrix::identity(2)).unwrap();
        assert_eq!(report.first_failure().unwrap().indices, vec![0, 0]);
    }

    #[test]
    fn commutes_examples() {
        let d12 = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(2)]);
        let d13 = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(3)]);
        assert!(commutes(&Matrix::identity(2), &Matrix::from_ints(&[&[4, 5], &[6, 7]])).unwrap());
        assert!(commutes(&d12, &d13).unwrap());
        let nil = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(!commutes(&nil, &d12).unwrap());
        assert!(commutes(&nil, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn opposite_twisted_product_examples() {
        let n11 = corpus::n_ab(1, 1);
        let x = e(2, 0);
        let y = e(2, 1);
        assert_eq!(n11.opposite_twisted_product(&x, &y, Twist::Inverse).unwrap(), n11.multiply(&y, &x).unwrap());
        let z = BiHomAlgebra::zero(2);
        assert!(vector::is_zero(&z.opposite_twisted_product(&x, &y, Twist::Inverse).unwrap()));
        // N(2,3): alpha^-1 beta(e1) . alpha beta^-1(e2) = e1 . (2/3) e2 = 2 e2
        let n23 = corpus::n_ab(2, 3);
        assert_eq!(n23.opposite_twisted_product(&y, &x, Twist::Inverse).unwrap(), ints(&[0, 2]));
        let singular = n23.with_maps(Matrix::zeros(2, 2), Matrix::identity(2)).unwrap();
        assert_eq!(singular.opposite_twisted_product(&x, &y, Twist::Inverse), Err(Error::SingularMatrix));
        assert!(singular.opposite_twisted_product(&x, &y, Twist::None).is_ok());
    }
}
