//! Constructions producing new algebras or brackets from given data.
//!
//! Every construction checks its hypotheses, tabulates the new product on the
//! basis, and rechecks the output. The output carries the target [`Kind`] tag
//! only when that recheck passes; otherwise it is returned untagged so the
//! caller can inspect it.

use crate::algebra::{is_derivation, is_morphism, BiHomAlgebra, Kind};
use crate::axioms::{check_bihom_novikov, check_classical, check_commutative_associative, check_kind, ClassicalKind};
use crate::error::{ensure_dim, Error, Result};
use crate::matrix::{vector, Matrix};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tensor::Tensor3;

pub(crate) fn require(report: CheckReport, hypothesis: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::PrerequisiteFailed(format!("{hypothesis}: {}", report.summary())))
    }
}

pub(crate) fn require_bihom_novikov(alg: &BiHomAlgebra) -> Result<()> {
    require(check_bihom_novikov(alg), "input is not BiHom-Novikov")
}

fn require_square(alg: &BiHomAlgebra, m: &Matrix) -> Result<()> {
    ensure_dim(alg.dim(), m.rows())?;
    ensure_dim(alg.dim(), m.cols())
}

/// Tags `alg` with `kind` when the matching checker passes.
pub(crate) fn tag_checked(alg: BiHomAlgebra, kind: Kind) -> BiHomAlgebra {
    match check_kind(&alg, kind) {
        Ok(r) if r.passed() => alg.with_kind(kind),
        _ => alg.with_kind(Kind::Untagged),
    }
}

/// `[x, y] = xy - alpha^-1 beta(y) . alpha beta^-1(x)` with the same
/// structure maps.
pub fn subadjacent_bracket(alg: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    require_bihom_novikov(alg)?;
    let (ab, ba) = alg.twists()?;
    let n = alg.dim();
    let bracket = Tensor3::from_basis_fn(n, |i, j| {
        vector::sub(alg.mu().basis_value(i, j), &alg.mul(&ab.column(j), &ba.column(i)))
    });
    let out = BiHomAlgebra::new(bracket, alg.alpha().clone(), alg.beta().clone())?;
    Ok(tag_checked(out, Kind::BiHomLie))
}

/// Argument order of the collapsed product on an involutive algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CollapseOrder {
    /// `x * y = alpha(x) beta(y)`
    #[default]
    AlphaBeta,
    /// `x * y = beta(x) alpha(y)`
    BetaAlpha,
}

impl CollapseOrder {
    pub fn as_str(self) -> &'static str {
        match self {
            CollapseOrder::AlphaBeta => "alpha-beta",
            CollapseOrder::BetaAlpha => "beta-alpha",
        }
    }
}

fn collapsed_product(alg: &BiHomAlgebra, order: CollapseOrder) -> Tensor3 {
    let (left, right) = match order {
        CollapseOrder::AlphaBeta => (alg.alpha(), alg.beta()),
        CollapseOrder::BetaAlpha => (alg.beta(), alg.alpha()),
    };
    alg.mu().sandwich(&Matrix::identity(alg.dim()), left, right)
}

/// Untwists an involutive BiHom-Novikov algebra into a plain product
/// (identity structure maps), tagged `novikov` when the classical check passes.
pub fn involutive_collapse(alg: &BiHomAlgebra, order: CollapseOrder) -> Result<BiHomAlgebra> {
    require_bihom_novikov(alg)?;
    if !alg.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    let out = BiHomAlgebra::untwisted(collapsed_product(alg, order));
    Ok(tag_checked(out, Kind::Novikov))
}

/// Novikov verdict of the collapse for both argument orders.
pub fn collapse_order_verdicts(alg: &BiHomAlgebra) -> Result<[(CollapseOrder, bool); 2]> {
    let verdict = |order| -> Result<(CollapseOrder, bool)> {
        Ok((order, involutive_collapse(alg, order)?.kind() == Kind::Novikov))
    };
    Ok([verdict(CollapseOrder::AlphaBeta)?, verdict(CollapseOrder::BetaAlpha)?])
}

fn require_structure_pair(alg: &BiHomAlgebra, alpha: &Matrix, beta: &Matrix) -> Result<()> {
    require_square(alg, alpha)?;
    require_square(alg, beta)?;
    if alpha * beta != beta * alpha {
        return Err(Error::PrerequisiteFailed("alpha and beta do not commute".into()));
    }
    require(is_morphism(alg, alpha)?, "alpha is not multiplicative")?;
    require(is_morphism(alg, beta)?, "beta is not multiplicative")
}

/// `x * y = alpha(x) beta(y)` on a Novikov algebra (its own structure maps
/// are ignored), with structure maps `alpha`, `beta`.
pub fn yau_twist(alg: &BiHomAlgebra, alpha: &Matrix, beta: &Matrix) -> Result<BiHomAlgebra> {
    require(check_classical(alg, ClassicalKind::Novikov)?, "input is not Novikov")?;
    require_structure_pair(alg, alpha, beta)?;
    let mu = alg.mu().sandwich(&Matrix::identity(alg.dim()), alpha, beta);
    let out = BiHomAlgebra::new(mu, alpha.clone(), beta.clone())?;
    Ok(tag_checked(out, Kind::BiHomNovikov))
}

/// `[x, y]' = [alpha^-1(x), beta^-1(y)]` for the sub-adjacent bracket, with
/// identity structure maps; tagged `lie` when the classical check passes.
pub fn regular_lie_bracket(alg: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    require_bihom_novikov(alg)?;
    let a_inv = alg.alpha().invert()?;
    let b_inv = alg.beta().invert()?;
    let n = alg.dim();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(alg.subadjacent_bracket_value(&a_inv.column(i), &b_inv.column(j))?);
        }
    }
    let mu = Tensor3::from_basis_fn(n, |i, j| table[i * n + j].clone());
    Ok(tag_checked(BiHomAlgebra::untwisted(mu), Kind::Lie))
}

/// Data for the derivation-twisted product `x * y = alpha(x) D(beta(y))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationData {
    pub alpha: Matrix,
    pub beta: Matrix,
    pub derivation: Matrix,
}

impl DerivationData {
    pub fn untwisted(derivation: Matrix) -> Self {
        let n = derivation.rows();
        DerivationData { alpha: Matrix::identity(n), beta: Matrix::identity(n), derivation }
    }
}

fn require_derivation_hypotheses(base: &BiHomAlgebra, data: &DerivationData) -> Result<()> {
    require(check_commutative_associative(base), "product is not commutative associative")?;
    require_structure_pair(base, &data.alpha, &data.beta)?;
    require_square(base, &data.derivation)?;
    require(is_derivation(base, &data.derivation)?, "D is not a derivation")?;
    let d = &data.derivation;
    if d * &data.alpha != &data.alpha * d {
        return Err(Error::PrerequisiteFailed("D does not commute with alpha".into()));
    }
    if d * &data.beta != &data.beta * d {
        return Err(Error::PrerequisiteFailed("D does not commute with beta".into()));
    }
    Ok(())
}

/// `x * y = alpha(x) D(beta(y))` on a commutative associative product.
/// The structure maps of `base` are ignored; no unit is assumed.
pub fn derivation_product(base: &BiHomAlgebra, data: &DerivationData) -> Result<BiHomAlgebra> {
    require_derivation_hypotheses(base, data)?;
    let d_beta = &data.derivation * &data.beta;
    let mu = base.mu().sandwich(&Matrix::identity(base.dim()), &data.alpha, &d_beta);
    let out = BiHomAlgebra::new(mu, data.alpha.clone(), data.beta.clone())?;
    Ok(tag_checked(out, Kind::BiHomNovikov))
}

/// Which commutative term is added in the one-parameter family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum XiTerm {
    /// `xi alpha(x) beta(y)`: the family stays BiHom-Novikov for every `xi`.
    #[default]
    Twisted,
    /// `xi x y`: only BiHom-Novikov in general when `alpha = beta = id`.
    Plain,
}

impl XiTerm {
    pub fn as_str(self) -> &'static str {
        match self {
            XiTerm::Twisted => "twisted",
            XiTerm::Plain => "plain",
        }
    }
}

/// The commutative term added per unit of `xi`, as a bilinear map.
pub fn xi_term(base: &BiHomAlgebra, data: &DerivationData, term: XiTerm) -> Tensor3 {
    match term {
        XiTerm::Twisted => base.mu().sandwich(&Matrix::identity(base.dim()), &data.alpha, &data.beta),
        XiTerm::Plain => base.mu().clone(),
    }
}

/// `x *_xi y = alpha(x) D(beta(y)) + xi (term)`.
pub fn xi_family(base: &BiHomAlgebra, data: &DerivationData, xi: &Scalar, term: XiTerm) -> Result<BiHomAlgebra> {
    require_derivation_hypotheses(base, data)?;
    let d_beta = &data.derivation * &data.beta;
    let star = base.mu().sandwich(&Matrix::identity(base.dim()), &data.alpha, &d_beta);
    let mu = &star + &xi_term(base, data, term).scale(xi);
    let out = BiHomAlgebra::new(mu, data.alpha.clone(), data.beta.clone())?;
    Ok(tag_checked(out, Kind::BiHomNovikov))
}

/// A linear operator with a weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotaBaxterData {
    pub operator: Matrix,
    pub weight: Scalar,
}

/// `P(x)P(y) = P(P(x)y + xP(y) + weight xy)` on basis pairs, plus `P`
/// commuting with both structure maps.
pub fn rota_baxter_check(alg: &BiHomAlgebra, rb: &RotaBaxterData) -> Result<CheckReport> {
    require_square(alg, &rb.operator)?;
    let p = &rb.operator;
    let n = alg.dim();
    let basis = alg.basis();
    let images: Vec<_> = (0..n).map(|i| p.column(i)).collect();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = alg.mul(&images[i], &images[j]);
            let mut inner = vector::add(&alg.mul(&images[i], &basis[j]), &alg.mul(&basis[i], &images[j]));
            vector::axpy(&mut inner, &rb.weight, alg.mu().basis_value(i, j));
            report.expect_eq("rota-baxter", &[i, j], lhs, p.apply(&inner));
        }
    }
    crate::algebra::record_commutation(p, alg.alpha(), "P alpha = alpha P", &mut report);
    crate::algebra::record_commutation(p, alg.beta(), "P beta = beta P", &mut report);
    Ok(report)
}

/// `x o y = P(x) y + x P(y) + weight x y` with the same structure maps.
pub fn rota_baxter_product(alg: &BiHomAlgebra, rb: &RotaBaxterData) -> Result<BiHomAlgebra> {
    require_bihom_novikov(alg)?;
    require(rota_baxter_check(alg, rb)?, "not a Rota-Baxter operator commuting with alpha and beta")?;
    let id = Matrix::identity(alg.dim());
    let mu = &(&alg.mu().sandwich(&id, &rb.operator, &id) + &alg.mu().sandwich(&id, &id, &rb.operator))
        + &alg.mu().scale(&rb.weight);
    let out = BiHomAlgebra::new(mu, alg.alpha().clone(), alg.beta().clone())?;
    Ok(tag_checked(out, Kind::BiHomNovikov))
}
