//! Bilinear forms on algebras: invariance, compatibility with the structure
//! maps, the induced forms on brackets, centers and lower central series.

use serde::Serialize;

use crate::algebra::{BiHomAlgebra, Kind};
use crate::axioms::check_bihom_novikov;
use crate::constructions::{involutive_collapse, tag_checked, CollapseOrder};
use crate::error::{ensure_dim, Error, Result};
use crate::matrix::{span_basis, vector, Matrix, Vector};
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::tensor::Tensor3;

/// `B(e_i, e_j)` stored as the entry `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        ensure_dim(matrix.rows(), matrix.cols())?;
        Ok(BilinearForm { matrix })
    }

    pub fn identity(n: usize) -> Self {
        BilinearForm { matrix: Matrix::identity(n) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        vector::dot(x, &self.matrix.apply(y))
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// `B(m x, y) = B(x, m y)`, i.e. `m^T B = B m`.
    pub fn is_compatible(&self, m: &Matrix) -> bool {
        &m.transpose() * &self.matrix == &self.matrix * m
    }
}

/// Every property of a form, each decided independently.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormProperties {
    pub symmetric: bool,
    pub nondegenerate: bool,
    /// `B([b x, a y], a z) = B(a x, [b y, a z])` with
    /// `[b x, a y] = b(x)a(y) - b(y)a(x)`.
    pub alphabeta_invariant: bool,
    /// `B(a x, b(y)a(z)) = B(b(x)a(y), a z)`.
    pub novikov_invariant: bool,
    pub alpha_compatible: bool,
    pub beta_compatible: bool,
}

fn frame(alg: &BiHomAlgebra) -> (Vec<Vector>, Vec<Vector>) {
    let n = alg.dim();
    ((0..n).map(|i| alg.alpha().column(i)).collect(), (0..n).map(|i| alg.beta().column(i)).collect())
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
}

fn scalar_vec(s: Scalar) -> Vector {
    vec![s]
}

/// Eq. `B(a x, b(y)a(z)) = B(b(x)a(y), a z)` on basis triples.
pub fn novikov_invariance_report(alg: &BiHomAlgebra, form: &BilinearForm) -> Result<CheckReport> {
    ensure_dim(alg.dim(), form.dim())?;
    let (a, b) = frame(alg);
    let mut report = CheckReport::new();
    for (i, j, k) in triples(alg.dim()) {
        let lhs = form.eval(&a[i], &alg.mul(&b[j], &a[k]));
        let rhs = form.eval(&alg.mul(&b[i], &a[j]), &a[k]);
        report.expect_eq("novikov invariance", &[i, j, k], scalar_vec(lhs), scalar_vec(rhs));
    }
    Ok(report)
}

/// BiHom-Lie invariance `B([b x, a y], a z) = B(a x, [b y, a z])` for a
/// bracket given by `bracket(u, v) = [u, v]`.
fn lie_invariance_report(
    alg: &BiHomAlgebra,
    form: &BilinearForm,
    bracket: impl Fn(&[Scalar], &[Scalar]) -> Vector,
) -> CheckReport {
    let (a, b) = frame(alg);
    let mut report = CheckReport::new();
    for (i, j, k) in triples(alg.dim()) {
        let lhs = form.eval(&bracket(&b[i], &a[j]), &a[k]);
        let rhs = form.eval(&a[i], &bracket(&b[j], &a[k]));
        report.expect_eq("bihom-lie invariance", &[i, j, k], scalar_vec(lhs), scalar_vec(rhs));
    }
    report
}

/// Bracket `[b x, a y] = b(x)a(y) - b(y)a(x)` of a BiHom-Novikov algebra,
/// evaluated on basis indices.
fn novikov_bracket_report(alg: &BiHomAlgebra, form: &BilinearForm) -> CheckReport {
    let (a, b) = frame(alg);
    let mut report = CheckReport::new();
    let br = |x: usize, y: usize| vector::sub(&alg.mul(&b[x], &a[y]), &alg.mul(&b[y], &a[x]));
    for (i, j, k) in triples(alg.dim()) {
        let lhs = form.eval(&br(i, j), &a[k]);
        let rhs = form.eval(&a[i], &br(j, k));
        report.expect_eq("bihom-lie invariance", &[i, j, k], scalar_vec(lhs), scalar_vec(rhs));
    }
    report
}

pub fn form_properties(alg: &BiHomAlgebra, form: &BilinearForm) -> Result<FormProperties> {
    ensure_dim(alg.dim(), form.dim())?;
    Ok(FormProperties {
        symmetric: form.is_symmetric(),
        nondegenerate: form.is_nondegenerate(),
        alphabeta_invariant: novikov_bracket_report(alg, form).passed(),
        novikov_invariant: novikov_invariance_report(alg, form)?.passed(),
        alpha_compatible: form.is_compatible(alg.alpha()),
        beta_compatible: form.is_compatible(alg.beta()),
    })
}

/// BiHom-Novikov with invertible maps, and `B` symmetric, nondegenerate and
/// Novikov-invariant. Failures name the first violated condition.
pub fn quadratic_novikov_report(alg: &BiHomAlgebra, form: &BilinearForm) -> Result<CheckReport> {
    ensure_dim(alg.dim(), form.dim())?;
    let mut report = check_bihom_novikov(alg);
    let flag = |report: &mut CheckReport, ok: bool, name: &str| {
        if !ok {
            report.push(crate::report::Failure {
                identity: name.to_string(),
                indices: vec![],
                lhs: vec![],
                rhs: vec![],
            });
        }
    };
    flag(&mut report, alg.is_regular(), "structure maps invertible");
    flag(&mut report, form.is_symmetric(), "form symmetric");
    flag(&mut report, form.is_nondegenerate(), "form nondegenerate");
    report.merge(novikov_invariance_report(alg, form)?);
    Ok(report)
}

pub fn is_quadratic_novikov(alg: &BiHomAlgebra, form: &BilinearForm) -> Result<bool> {
    Ok(quadratic_novikov_report(alg, form)?.passed())
}

fn require_quadratic(alg: &BiHomAlgebra, form: &BilinearForm, compatible: bool) -> Result<()> {
    let report = quadratic_novikov_report(alg, form)?;
    if !report.passed() {
        return Err(Error::PrerequisiteFailed(format!("not quadratic BiHom-Novikov: {}", report.summary())));
    }
    if compatible && !(form.is_compatible(alg.alpha()) && form.is_compatible(alg.beta())) {
        return Err(Error::PrerequisiteFailed("form is not compatible with alpha and beta".into()));
    }
    Ok(())
}

/// Properties of a form on a bracket algebra (the product read as a bracket).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuadraticLieProperties {
    pub bihom_lie: bool,
    pub symmetric: bool,
    pub nondegenerate: bool,
    pub invariant: bool,
    pub alpha_compatible: bool,
    pub beta_compatible: bool,
}

impl QuadraticLieProperties {
    pub fn all(&self) -> bool {
        self.bihom_lie
            && self.symmetric
            && self.nondegenerate
            && self.invariant
            && self.alpha_compatible
            && self.beta_compatible
    }
}

pub fn quadratic_lie_properties(bracket: &BiHomAlgebra, form: &BilinearForm) -> Result<QuadraticLieProperties> {
    ensure_dim(bracket.dim(), form.dim())?;
    Ok(QuadraticLieProperties {
        bihom_lie: crate::axioms::check_bihom_lie(bracket).passed(),
        symmetric: form.is_symmetric(),
        nondegenerate: form.is_nondegenerate(),
        invariant: lie_invariance_report(bracket, form, |u, v| bracket.mul(u, v)).passed(),
        alpha_compatible: form.is_compatible(bracket.alpha()),
        beta_compatible: form.is_compatible(bracket.beta()),
    })
}

/// `B_alpha(x, y) = B(alpha x, y)`, matrix `alpha^T B`.
pub fn alpha_form(alg: &BiHomAlgebra, form: &BilinearForm) -> BilinearForm {
    BilinearForm { matrix: &alg.alpha().transpose() * form.matrix() }
}

/// The sub-adjacent bracket with `B_alpha` and the properties it is
/// expected to have.
pub fn induced_form(
    alg: &BiHomAlgebra,
    form: &BilinearForm,
) -> Result<(BiHomAlgebra, BilinearForm, QuadraticLieProperties)> {
    require_quadratic(alg, form, true)?;
    let bracket = crate::constructions::subadjacent_bracket(alg)?;
    let b_alpha = alpha_form(alg, form);
    let props = quadratic_lie_properties(&bracket, &b_alpha)?;
    Ok((bracket, b_alpha, props))
}

/// `[x, y]' = [alpha x, beta y]` for the sub-adjacent bracket, with `B_alpha`.
/// Invariance is rechecked as `B_alpha([b x, a y]', a z) = B_alpha(a x, [b y, a z]')`;
/// the BiHom-Lie verdict for the new bracket is recorded, not required.
pub fn quadratic_hom_lie_bracket(
    alg: &BiHomAlgebra,
    form: &BilinearForm,
) -> Result<(BiHomAlgebra, BilinearForm, QuadraticLieProperties)> {
    require_quadratic(alg, form, true)?;
    let n = alg.dim();
    let mut table = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            table.push(alg.subadjacent_bracket_value(&alg.alpha().column(i), &alg.beta().column(j))?);
        }
    }
    let mu = Tensor3::from_basis_fn(n, |i, j| table[i * n + j].clone());
    let out = BiHomAlgebra::new(mu, alg.alpha().clone(), alg.beta().clone())?;
    let out = tag_checked(out, Kind::BiHomLie);
    let b_alpha = alpha_form(alg, form);
    let props = quadratic_lie_properties(&out, &b_alpha)?;
    Ok((out, b_alpha, props))
}

/// Collapse of an involutive quadratic algebra together with the verdict of
/// classical invariance `B(x, y * z) = B(x * y, z)` for the collapsed product.
pub fn involutive_quadratic_collapse(
    alg: &BiHomAlgebra,
    form: &BilinearForm,
    order: CollapseOrder,
) -> Result<(BiHomAlgebra, BilinearForm, bool)> {
    if !alg.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    require_quadratic(alg, form, true)?;
    let out = involutive_collapse(alg, order)?;
    let invariant = novikov_invariance_report(&out, form)?.passed();
    Ok((out, form.clone(), invariant))
}

/// Basis of `{x : x e_j = e_j x = 0 for all j}`.
pub fn center(alg: &BiHomAlgebra) -> Vec<Vector> {
    let n = alg.dim();
    // row (side, j, k): coefficient of v_i in (v e_j)_k or (e_j v)_k
    let mut rows = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for k in 0..n {
            rows.push((0..n).map(|i| alg.mu().get(i, j, k).clone()).collect::<Vector>());
            rows.push((0..n).map(|i| alg.mu().get(j, i, k).clone()).collect::<Vector>());
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    Matrix::from_rows(rows).expect("rows of equal length").kernel_basis()
}

pub fn in_center(alg: &BiHomAlgebra, v: &[Scalar]) -> bool {
    alg.basis().iter().all(|e| vector::is_zero(&alg.mul(v, e)) && vector::is_zero(&alg.mul(e, v)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotencyReport {
    /// Bases of `A^0, A^1, ...` as computed.
    pub series: Vec<Vec<Vector>>,
    /// Smallest `i` with `A^i = 0`, if reached.
    pub class: Option<usize>,
}

impl NilpotencyReport {
    pub fn dimensions(&self) -> Vec<usize> {
        self.series.iter().map(Vec::len).collect()
    }
}

/// `A^0 = A`, `A^i = [A, A^{i-1}]` for the product of `bracket`, until the
/// series hits zero, stabilizes, or `max_steps` terms past `A^0` are computed.
pub fn lower_central_series(bracket: &BiHomAlgebra, max_steps: usize) -> NilpotencyReport {
    let n = bracket.dim();
    let basis = bracket.basis();
    let mut series = vec![basis.clone()];
    if n == 0 {
        return NilpotencyReport { series, class: Some(0) };
    }
    for step in 1..=max_steps {
        let prev = series.last().expect("nonempty");
        let spanning: Vec<Vector> = basis.iter().flat_map(|x| prev.iter().map(move |y| bracket.mul(x, y))).collect();
        let next = span_basis(n, &spanning);
        let stable = next.len() == prev.len();
        let done = next.is_empty();
        series.push(next);
        if done {
            return NilpotencyReport { series, class: Some(step) };
        }
        if stable {
            break;
        }
    }
    NilpotencyReport { series, class: None }
}

/// Every `[beta(e_i), alpha(e_j)]` lies in the center, and the lower central
/// series of the sub-adjacent bracket vanishes by step 2.
pub fn check_bracket_nilpotency(alg: &BiHomAlgebra, form: &BilinearForm) -> Result<CheckReport> {
    require_quadratic(alg, form, false)?;
    let (a, b) = frame(alg);
    let n = alg.dim();
    let e = alg.basis();
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            let br = alg.subadjacent_bracket_value(&b[i], &a[j])?;
            for (k, ek) in e.iter().enumerate() {
                report.expect_zero("bracket in center (right)", &[i, j, k], alg.mul(&br, ek));
                report.expect_zero("bracket in center (left)", &[i, j, k], alg.mul(ek, &br));
            }
        }
    }
    let bracket = crate::constructions::subadjacent_bracket(alg)?;
    let lcs = lower_central_series(&bracket, 3);
    if !matches!(lcs.class, Some(c) if c <= 2) {
        let witness = lcs.series.get(2).and_then(|s| s.first()).cloned().unwrap_or_default();
        report.expect_zero("2-step nilpotent", &[2], witness);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{diag, dual_numbers, heisenberg, n_ab};

    fn form(rows: &[&[i64]]) -> BilinearForm {
        BilinearForm::new(Matrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn form_properties_examples() {
        let all = form_properties(&BiHomAlgebra::zero(2), &BilinearForm::identity(2)).unwrap();
        assert!(all.symmetric && all.nondegenerate && all.alphabeta_invariant);
        assert!(all.novikov_invariant && all.alpha_compatible && all.beta_compatible);
        let n11 = form_properties(&n_ab(1, 1), &BilinearForm::identity(2)).unwrap();
        assert!(!n11.novikov_invariant);
        assert!(n11.symmetric && n11.nondegenerate);
        let zero_form = form_properties(&n_ab(1, 1), &BilinearForm::new(Matrix::zeros(2, 2)).unwrap()).unwrap();
        assert!(!zero_form.nondegenerate);
        assert!(form_properties(&n_ab(1, 1), &BilinearForm::identity(3)).is_err());
    }

    #[test]
    fn novikov_invariance_failure_on_n11() {
        let report = novikov_invariance_report(&n_ab(1, 1), &BilinearForm::identity(2)).unwrap();
        // B(e1, e2 e2) = 0 but B(e1 e2, e2) = B(e2, e2) = 1
        let f = report.first_failure().unwrap();
        assert_eq!(f.indices, vec![0, 1, 1]);
        assert_eq!((f.lhs[0].clone(), f.rhs[0].clone()), (Scalar::zero(), Scalar::one()));
    }

    #[test]
    fn induced_form_examples() {
        let zero = BiHomAlgebra::zero(2).with_maps(diag(&[1, 2]), Matrix::identity(2)).unwrap();
        let (_, b, props) = induced_form(&zero, &BilinearForm::identity(2)).unwrap();
        assert_eq!(b.matrix(), &diag(&[1, 2]));
        assert!(props.all());
        let (_, same, _) = induced_form(&BiHomAlgebra::zero(2), &form(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(same.matrix(), &Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        assert!(matches!(induced_form(&n_ab(1, 1), &BilinearForm::identity(2)), Err(Error::PrerequisiteFailed(_))));
    }

    #[test]
    fn quadratic_hom_lie_bracket_examples() {
        let zero = BiHomAlgebra::zero(2).with_maps(diag(&[1, -1]), diag(&[2, 3])).unwrap();
        let b = form(&[&[1, 0], &[0, 1]]);
        let (br, _, props) = quadratic_hom_lie_bracket(&zero, &b).unwrap();
        assert!(br.mu().is_zero());
        assert!(props.invariant && props.symmetric && props.nondegenerate);
    }

    #[test]
    fn involutive_quadratic_collapse_examples() {
        let zero = BiHomAlgebra::zero(2).with_maps(diag(&[1, -1]), Matrix::identity(2)).unwrap();
        let (out, _, invariant) =
            involutive_quadratic_collapse(&zero, &BilinearForm::identity(2), CollapseOrder::AlphaBeta).unwrap();
        assert!(out.mu().is_zero());
        assert_eq!(out.kind(), Kind::Novikov);
        assert!(invariant);
        assert_eq!(
            involutive_quadratic_collapse(&n_ab(2, 3), &BilinearForm::identity(2), CollapseOrder::AlphaBeta),
            Err(Error::NotInvolutive)
        );
    }

    #[test]
    fn center_examples() {
        assert_eq!(center(&BiHomAlgebra::zero(2)).len(), 2);
        assert!(center(&n_ab(1, 1)).is_empty());
        assert!(center(&dual_numbers()).is_empty());
        let z = center(&heisenberg());
        assert_eq!(z, vec![vector::unit(3, 2)]);
        for v in &z {
            assert!(in_center(&heisenberg(), v));
        }
    }

    #[test]
    fn lower_central_series_examples() {
        let abelian = lower_central_series(&BiHomAlgebra::zero(2), 5);
        assert_eq!(abelian.class, Some(1));
        let heis = lower_central_series(&heisenberg(), 5);
        assert_eq!(heis.dimensions(), vec![3, 1, 0]);
        assert_eq!(heis.class, Some(2));
        let b = crate::constructions::subadjacent_bracket(&n_ab(1, 1)).unwrap();
        let lcs = lower_central_series(&b, 5);
        assert_eq!(lcs.dimensions(), vec![2, 1, 1]);
        assert_eq!(lcs.class, None);
    }

    #[test]
    fn bracket_nilpotency_examples() {
        assert!(check_bracket_nilpotency(&BiHomAlgebra::zero(2), &BilinearForm::identity(2)).unwrap().passed());
        assert!(matches!(
            check_bracket_nilpotency(&n_ab(1, 1), &BilinearForm::identity(2)),
            Err(Error::PrerequisiteFailed(_))
        ));
    }
}
