//! Truncated one-parameter formal deformations `g_t = G_0 + G_1 t + ... + G_N t^N`,
//! their equations order by order, transport along formal isomorphisms, and
//! comparison of infinitesimals in `H^2`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::BiHomAlgebra;
use crate::cohomology::{self, circ, cochain1_report, cochain2_report, Variant};
use crate::error::{ensure_dim, Error, Result};
use crate::matrix::{vector, Matrix, Vector};
use crate::report::CheckReport;
use crate::tensor::{Tensor3, Tensor4};

pub const DEFAULT_ORDER: usize = 4;

/// Degree-zero term of a deformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum G0Convention {
    /// `G_0(x, y) = x y`
    #[default]
    Plain,
    /// `G_0(x, y) = alpha^-1 beta(x) y`
    AlphaInvBetaTwisted,
}

impl G0Convention {
    pub fn as_str(self) -> &'static str {
        match self {
            G0Convention::Plain => "plain",
            G0Convention::AlphaInvBetaTwisted => "alpha-inv-beta-twisted",
        }
    }
}

impl fmt::Display for G0Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for G0Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [G0Convention::Plain, G0Convention::AlphaInvBetaTwisted]
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Validation(format!("unknown degree-zero convention {s:?}")))
    }
}

/// `terms[i]` is `G_{i+1}`; the order is `terms.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    pub base: BiHomAlgebra,
    pub terms: Vec<Tensor3>,
    pub convention: G0Convention,
}

impl TruncatedDeformation {
    pub fn new(base: BiHomAlgebra, terms: Vec<Tensor3>, convention: G0Convention) -> Result<Self> {
        for t in &terms {
            ensure_dim(base.dim(), t.dim())?;
        }
        Ok(TruncatedDeformation { base, terms, convention })
    }

    /// All `G_i = 0` up to `order`.
    pub fn null(base: BiHomAlgebra, order: usize) -> Self {
        let n = base.dim();
        TruncatedDeformation { base, terms: vec![Tensor3::zeros(n); order], convention: G0Convention::Plain }
    }

    pub fn with_convention(mut self, convention: G0Convention) -> Self {
        self.convention = convention;
        self
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn g0(&self) -> Result<Tensor3> {
        match self.convention {
            G0Convention::Plain => Ok(self.base.mu().clone()),
            G0Convention::AlphaInvBetaTwisted => {
                let (ab, _) = self.base.twists()?;
                Ok(self.base.mu().sandwich(&Matrix::identity(self.base.dim()), &ab, &Matrix::identity(self.base.dim())))
            }
        }
    }

    /// `G_0, G_1, ..., G_N`.
    pub fn series(&self) -> Result<Vec<Tensor3>> {
        let mut out = vec![self.g0()?];
        out.extend(self.terms.iter().cloned());
        Ok(out)
    }

    /// Same base and convention, terms cut or zero-padded to `order`.
    pub fn truncated(&self, order: usize) -> Self {
        let mut terms: Vec<Tensor3> = self.terms.iter().take(order).cloned().collect();
        terms.resize(order, Tensor3::zeros(self.base.dim()));
        TruncatedDeformation { base: self.base.clone(), terms, convention: self.convention }
    }
}

/// `phi_t = id + phi_1 t + ... + phi_N t^N`; `terms[i]` is `phi_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalIsomorphism {
    pub terms: Vec<Matrix>,
}

impl FormalIsomorphism {
    pub fn identity(n: usize, order: usize) -> Self {
        FormalIsomorphism { terms: vec![Matrix::zeros(n, n); order] }
    }

    /// `phi_0 = id` followed by the given terms, padded with zeros to `order`.
    pub fn series(&self, n: usize, order: usize) -> Vec<Matrix> {
        let mut out = vec![Matrix::identity(n)];
        out.extend(self.terms.iter().take(order).cloned());
        out.resize(order + 1, Matrix::zeros(n, n));
        out
    }

    /// Coefficients of `phi_t^-1` up to `t^order`:
    /// `psi_0 = id`, `psi_m = -sum_{i=1..m} phi_i psi_{m-i}`.
    pub fn inverse(&self, n: usize, order: usize) -> FormalIsomorphism {
        let phi = self.series(n, order);
        let mut psi = vec![Matrix::identity(n)];
        for m in 1..=order {
            let mut acc = Matrix::zeros(n, n);
            for i in 1..=m {
                acc = &acc - &(&phi[i] * &psi[m - i]);
            }
            psi.push(acc);
        }
        FormalIsomorphism { terms: psi.split_off(1) }
    }
}

fn add4(acc: &mut Tensor4, t: &Tensor4) {
    *acc = &*acc + t;
}

/// Right-commutativity term `G_i(G_j(x, y), alpha z) - G_i(G_j(x, z), alpha y)`.
fn right_commutativity(alg: &BiHomAlgebra, gi: &Tensor3, gj: &Tensor3) -> Tensor4 {
    let n = alg.dim();
    let a: Vec<_> = (0..n).map(|i| alg.alpha().column(i)).collect();
    Tensor4::from_basis_fn(n, |x, y, z| {
        vector::sub(&gi.apply(gj.basis_value(x, y), &a[z]), &gi.apply(gj.basis_value(x, z), &a[y]))
    })
}

fn record_residual(report: &mut CheckReport, name: &str, degree: usize, residual: &Tensor4) {
    let n = residual.dim();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                report.expect_zero(name, &[degree, x, y, z], residual.basis_value(x, y, z).to_vec());
            }
        }
    }
}

fn require_base(base: &BiHomAlgebra) -> Result<()> {
    crate::constructions::require_bihom_novikov(base)
}

/// The deformation equations in degrees `0..=max_degree`. Failure indices
/// are `[degree, x, y, z]` for the degree-`m` sums of right-commutativity
/// and composition terms, and `[term, i, j]` for the cochain condition.
pub fn verify_deformation_to(d: &TruncatedDeformation, max_degree: usize) -> Result<CheckReport> {
    require_base(&d.base)?;
    let g = d.series()?;
    let max_degree = max_degree.min(d.order());
    let mut report = CheckReport::new();
    for (idx, term) in g.iter().enumerate().skip(1).take(max_degree) {
        for mut failure in cochain2_report(&d.base, term)?.failures {
            failure.identity = format!("G_{idx} {}", failure.identity);
            failure.indices.insert(0, idx);
            report.push(failure);
        }
    }
    let n = d.base.dim();
    for m in 0..=max_degree {
        let mut rc = Tensor4::zeros(n);
        let mut comp = Tensor4::zeros(n);
        for i in 0..=m {
            let j = m - i;
            add4(&mut rc, &right_commutativity(&d.base, &g[i], &g[j]));
            add4(&mut comp, &circ(&d.base, &g[i], &g[j]));
        }
        record_residual(&mut report, "right-commutativity", m, &rc);
        record_residual(&mut report, "composition", m, &comp);
    }
    Ok(report)
}

pub fn verify_deformation(d: &TruncatedDeformation) -> Result<CheckReport> {
    verify_deformation_to(d, d.order())
}

/// `delta2 G_1 = 0` in the composition variant, after degree-one verification.
pub fn infinitesimal_is_cocycle(d: &TruncatedDeformation) -> Result<CheckReport> {
    let pre = verify_deformation_to(d, 1)?;
    if !pre.passed() {
        return Err(Error::PrerequisiteFailed(format!("degree-one deformation equations: {}", pre.summary())));
    }
    let g1 = d.terms.first().cloned().unwrap_or_else(|| Tensor3::zeros(d.base.dim()));
    let residual = cohomology::delta2(&d.base, &g1, Variant::Composition)?;
    let mut report = CheckReport::new();
    record_residual(&mut report, "delta2 G_1", 1, &residual);
    Ok(report)
}

/// `g'_t = phi_t^-1 g_t (phi_t x, phi_t y)` modulo `t^{N+1}`.
pub fn apply_equivalence(d: &TruncatedDeformation, phi: &FormalIsomorphism) -> Result<TruncatedDeformation> {
    let n = d.base.dim();
    for f in &phi.terms {
        let report = cochain1_report(&d.base, f)?;
        if !report.passed() {
            return Err(Error::PrerequisiteFailed(format!(
                "phi does not commute with the structure maps: {}",
                report.summary()
            )));
        }
    }
    let order = d.order();
    let g = d.series()?;
    let ph = phi.series(n, order);
    let mut psi = vec![Matrix::identity(n)];
    psi.extend(phi.inverse(n, order).terms);
    let mut terms = Vec::with_capacity(order);
    for m in 1..=order {
        let mut acc = Tensor3::zeros(n);
        for a in 0..=m {
            for b in 0..=m - a {
                for c in 0..=m - a - b {
                    let e = m - a - b - c;
                    if psi[a].is_zero() || ph[c].is_zero() || ph[e].is_zero() || g[b].is_zero() {
                        continue;
                    }
                    acc = &acc + &g[b].sandwich(&psi[a], &ph[c], &ph[e]);
                }
            }
        }
        terms.push(acc);
    }
    Ok(TruncatedDeformation { base: d.base.clone(), terms, convention: d.convention })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassComparison {
    pub cohomologous: bool,
    /// `f` with `delta1 f = G_1 - G'_1`.
    pub witness: Option<Matrix>,
}

/// Solves `delta1 f = G_1 - G'_1` over `C^1`, free coordinates set to zero.
pub fn g1_class_compare(d1: &TruncatedDeformation, d2: &TruncatedDeformation) -> Result<ClassComparison> {
    if d1.base != d2.base || d1.convention != d2.convention {
        return Err(Error::PrerequisiteFailed("deformations have different bases".into()));
    }
    for d in [d1, d2] {
        let report = verify_deformation_to(d, 1)?;
        if !report.passed() {
            return Err(Error::PrerequisiteFailed(format!("degree-one deformation equations: {}", report.summary())));
        }
    }
    let base = &d1.base;
    let n = base.dim();
    let first = |d: &TruncatedDeformation| d.terms.first().cloned().unwrap_or_else(|| Tensor3::zeros(n));
    let diff = &first(d1) - &first(d2);
    let c1 = cohomology::cochain_space(base, 1)?;
    let d1m = cohomology::delta1_matrix(base, &c1)?;
    if c1.dimension() == 0 {
        let zero = diff.is_zero();
        return Ok(ClassComparison { cohomologous: zero, witness: zero.then(|| Matrix::zeros(n, n)) });
    }
    match d1m.solve(diff.coords())? {
        Some(coeffs) => {
            let witness = cohomology::coords_to_matrix(n, &c1.combine(&coeffs));
            Ok(ClassComparison { cohomologous: true, witness: Some(witness) })
        }
        None => Ok(ClassComparison { cohomologous: false, witness: None }),
    }
}

/// Basis (ambient coordinates) of the bilinear maps `G_1` for which
/// `G_0 + G_1 t` satisfies the deformation equations modulo `t^2`.
pub fn infinitesimal_space(base: &BiHomAlgebra, convention: G0Convention) -> Result<Vec<Vector>> {
    require_base(base)?;
    let n = base.dim();
    let g0 = TruncatedDeformation::null(base.clone(), 0).with_convention(convention).g0()?;
    let c2 = cohomology::cochain_space(base, 2)?;
    let columns: Vec<_> = (0..c2.dimension())
        .map(|idx| {
            let g1 = c2.map2(idx);
            let rc = &right_commutativity(base, &g0, &g1) + &right_commutativity(base, &g1, &g0);
            let comp = &circ(base, &g0, &g1) + &circ(base, &g1, &g0);
            let mut col = rc.coords().to_vec();
            col.extend(comp.coords().iter().cloned());
            col
        })
        .collect();
    if columns.is_empty() {
        return Ok(Vec::new());
    }
    let system = Matrix::from_columns(2 * n.pow(4), &columns)?;
    Ok(system.kernel_basis().iter().map(|k| c2.combine(k)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub dim_h2: usize,
    pub rigid_certificate: bool,
    pub note: &'static str,
}

pub const RIGIDITY_NOTE: &str =
    "dim H^2 = 0 is sufficient for analytic rigidity; a nonzero H^2 does not show that a nontrivial deformation exists";

pub fn rigidity_report(alg: &BiHomAlgebra) -> Result<RigidityReport> {
    let dims = cohomology::h2_dimension(alg, Variant::Composition)?;
    Ok(RigidityReport { dim_h2: dims.dim_h2, rigid_certificate: dims.dim_h2 == 0, note: RIGIDITY_NOTE })
}

/// `G_1 = delta1 f` as a one-term deformation.
pub fn coboundary_deformation(base: &BiHomAlgebra, f: &Matrix, order: usize) -> Result<TruncatedDeformation> {
    let mut d = TruncatedDeformation::null(base.clone(), order.max(1));
    d.terms[0] = cohomology::delta1(base, f)?;
    Ok(d)
}
