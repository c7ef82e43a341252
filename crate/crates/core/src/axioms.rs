//! Membership tests for the algebra classes: BiHom-associative, BiHom-Lie,
//! BiHom-Novikov, and their untwisted counterparts.
//!
//! Every identity is multilinear, so it is checked on basis tuples only.
//! Each BiHom checker first records the structural hypotheses (commuting
//! maps, multiplicativity) so a report shows which layer broke.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{record_commutation, record_multiplicativity, BiHomAlgebra, Kind};
use crate::error::{Error, Result};
use crate::matrix::{vector, Matrix, Vector};
use crate::report::CheckReport;

/// Basis images under the maps the identities use, computed once per check.
pub(crate) struct Frame {
    pub n: usize,
    pub e: Vec<Vector>,
    pub a: Vec<Vector>,
    pub b: Vec<Vector>,
    pub ab: Vec<Vector>,
    pub aa: Vec<Vector>,
    pub bb: Vec<Vector>,
}

impl Frame {
    pub fn new(alg: &BiHomAlgebra) -> Self {
        let n = alg.dim();
        let cols = |m: &Matrix| (0..n).map(|i| m.column(i)).collect::<Vec<_>>();
        Frame {
            n,
            e: alg.basis(),
            a: cols(alg.alpha()),
            b: cols(alg.beta()),
            ab: cols(&(alg.alpha() * alg.beta())),
            aa: cols(&alg.alpha().pow(2)),
            bb: cols(&alg.beta().pow(2)),
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> {
        let n = self.n;
        (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
    }
}

pub(crate) fn record_structure_maps(alg: &BiHomAlgebra, report: &mut CheckReport) {
    record_commutation(alg.alpha(), alg.beta(), "alpha beta = beta alpha", report);
    record_multiplicativity(alg, alg.alpha(), "alpha multiplicative", report);
    record_multiplicativity(alg, alg.beta(), "beta multiplicative", report);
}

/// `alpha(a)(a'a'') = (aa')beta(a'')` plus the structure-map hypotheses.
pub fn check_bihom_associative(alg: &BiHomAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    record_structure_maps(alg, &mut report);
    let f = Frame::new(alg);
    for (i, j, k) in f.triples() {
        let lhs = alg.mul(&f.a[i], &alg.mul(&f.e[j], &f.e[k]));
        let rhs = alg.mul(&alg.mul(&f.e[i], &f.e[j]), &f.b[k]);
        report.expect_eq("bihom-associativity", &[i, j, k], lhs, rhs);
    }
    report
}

/// Reads the product as a bracket and checks BiHom skew-symmetry and the
/// BiHom-Jacobi identity.
pub fn check_bihom_lie(alg: &BiHomAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    record_structure_maps(alg, &mut report);
    let f = Frame::new(alg);
    for (i, j) in f.pairs() {
        let lhs = alg.mul(&f.b[i], &f.a[j]);
        let rhs = vector::neg(&alg.mul(&f.b[j], &f.a[i]));
        report.expect_eq("bihom-skew-symmetry", &[i, j], lhs, rhs);
    }
    for (i, j, k) in f.triples() {
        let term = |x: usize, y: usize, z: usize| alg.mul(&f.bb[x], &alg.mul(&f.b[y], &f.a[z]));
        let sum = vector::add(&vector::add(&term(i, j, k), &term(j, k, i)), &term(k, i, j));
        report.expect_zero("bihom-jacobi", &[i, j, k], sum);
    }
    report
}

/// Commuting multiplicative maps, twisted right-commutativity
/// `(xy)alpha(z) = (xz)alpha(y)` and twisted left-symmetry.
pub fn check_bihom_novikov(alg: &BiHomAlgebra) -> CheckReport {
    let mut report = CheckReport::new();
    record_structure_maps(alg, &mut report);
    let f = Frame::new(alg);
    for (i, j, k) in f.triples() {
        let lhs = alg.mul(&alg.mul(&f.e[i], &f.e[j]), &f.a[k]);
        let rhs = alg.mul(&alg.mul(&f.e[i], &f.e[k]), &f.a[j]);
        report.expect_eq("bihom right-commutativity", &[i, j, k], lhs, rhs);
    }
    for (i, j, k) in f.triples() {
        let side = |x: usize, y: usize| {
            vector::sub(&alg.mul(&alg.mul(&f.b[x], &f.a[y]), &f.b[k]), &alg.mul(&f.ab[x], &alg.mul(&f.a[y], &f.e[k])))
        };
        report.expect_eq("bihom left-symmetry", &[i, j, k], side(i, j), side(j, i));
    }
    report
}

/// Untwisted classes. The structure maps are ignored except for
/// [`ClassicalKind::HomNovikov`], which reads its single map from `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalKind {
    Associative,
    Commutative,
    Lie,
    Novikov,
    HomNovikov,
}

impl ClassicalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassicalKind::Associative => "associative",
            ClassicalKind::Commutative => "commutative",
            ClassicalKind::Lie => "lie",
            ClassicalKind::Novikov => "novikov",
            ClassicalKind::HomNovikov => "hom-novikov",
        }
    }
}

impl fmt::Display for ClassicalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassicalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            ClassicalKind::Associative,
            ClassicalKind::Commutative,
            ClassicalKind::Lie,
            ClassicalKind::Novikov,
            ClassicalKind::HomNovikov,
        ]
        .into_iter()
        .find(|k| k.as_str() == s)
        .ok_or_else(|| Error::Validation(format!("unknown classical class {s:?}")))
    }
}

pub fn check_classical(alg: &BiHomAlgebra, kind: ClassicalKind) -> Result<CheckReport> {
    let mut report = CheckReport::new();
    let f = Frame::new(alg);
    let m = |x: &[_], y: &[_]| alg.mul(x, y);
    match kind {
        ClassicalKind::Associative => {
            for (i, j, k) in f.triples() {
                let lhs = m(&m(&f.e[i], &f.e[j]), &f.e[k]);
                let rhs = m(&f.e[i], &m(&f.e[j], &f.e[k]));
                report.expect_eq("associativity", &[i, j, k], lhs, rhs);
            }
        }
        ClassicalKind::Commutative => {
            for (i, j) in f.pairs().filter(|(i, j)| i < j) {
                report.expect_eq("commutativity", &[i, j], m(&f.e[i], &f.e[j]), m(&f.e[j], &f.e[i]));
            }
        }
        ClassicalKind::Lie => {
            for (i, j) in f.pairs().filter(|(i, j)| i <= j) {
                let lhs = m(&f.e[i], &f.e[j]);
                let rhs = vector::neg(&m(&f.e[j], &f.e[i]));
                if i == j {
                    report.expect_zero("alternating", &[i, i], lhs);
                } else {
                    report.expect_eq("antisymmetry", &[i, j], lhs, rhs);
                }
            }
            for (i, j, k) in f.triples() {
                let term = |x: usize, y: usize, z: usize| m(&m(&f.e[x], &f.e[y]), &f.e[z]);
                let sum = vector::add(&vector::add(&term(i, j, k), &term(j, k, i)), &term(k, i, j));
                report.expect_zero("jacobi", &[i, j, k], sum);
            }
        }
        ClassicalKind::Novikov => novikov_identities(alg, &f, &f.e, &mut report),
        ClassicalKind::HomNovikov => {
            if alg.alpha() != alg.beta() {
                return Err(Error::MapsNotEqual);
            }
            record_multiplicativity(alg, alg.alpha(), "alpha multiplicative", &mut report);
            novikov_identities(alg, &f, &f.a, &mut report);
        }
    }
    Ok(report)
}

/// `(xy)t(z) = (xz)t(y)` and `(xy)t(z) - t(x)(yz) = (yx)t(z) - t(y)(xz)`
/// where `t` maps basis vector `i` to `twist[i]`.
fn novikov_identities(alg: &BiHomAlgebra, f: &Frame, twist: &[Vector], report: &mut CheckReport) {
    let m = |x: &[_], y: &[_]| alg.mul(x, y);
    for (i, j, k) in f.triples() {
        let lhs = m(&m(&f.e[i], &f.e[j]), &twist[k]);
        let rhs = m(&m(&f.e[i], &f.e[k]), &twist[j]);
        report.expect_eq("right-commutativity", &[i, j, k], lhs, rhs);
    }
    for (i, j, k) in f.triples() {
        let side =
            |x: usize, y: usize| vector::sub(&m(&m(&f.e[x], &f.e[y]), &twist[k]), &m(&twist[x], &m(&f.e[y], &f.e[k])));
        report.expect_eq("left-symmetry", &[i, j, k], side(i, j), side(j, i));
    }
}

/// The two cyclic identities satisfied by the bracket
/// `[beta(x), alpha(y)] := beta(x)alpha(y) - beta(y)alpha(x)`:
///
/// * `[b x, a y] a^2(z) + [b y, a z] a^2(x) + [b z, a x] a^2(y) = 0`
/// * `b^2(z) [b x, a y] + b^2(x) [b y, a z] + b^2(y) [b z, a x] = 0`
///
/// Requires a BiHom-Novikov algebra with invertible `alpha`.
pub fn check_cyclic_bracket_identities(alg: &BiHomAlgebra) -> Result<CheckReport> {
    let pre = check_bihom_novikov(alg);
    if !pre.passed() {
        return Err(Error::PrerequisiteFailed(format!("bihom-novikov check: {}", pre.summary())));
    }
    alg.alpha().invert()?;
    let f = Frame::new(alg);
    let bracket = |x: usize, y: usize| vector::sub(&alg.mul(&f.b[x], &f.a[y]), &alg.mul(&f.b[y], &f.a[x]));
    let mut report = CheckReport::new();
    for (i, j, k) in f.triples() {
        let right = |x, y, z: usize| alg.mul(&bracket(x, y), &f.aa[z]);
        let sum = vector::add(&vector::add(&right(i, j, k), &right(j, k, i)), &right(k, i, j));
        report.expect_zero("cyclic bracket identity (right)", &[i, j, k], sum);
    }
    for (i, j, k) in f.triples() {
        let left = |x, y, z: usize| alg.mul(&f.bb[z], &bracket(x, y));
        let sum = vector::add(&vector::add(&left(i, j, k), &left(j, k, i)), &left(k, i, j));
        report.expect_zero("cyclic bracket identity (left)", &[i, j, k], sum);
    }
    Ok(report)
}

/// Dispatches to the checker for a [`Kind`]. Untagged always passes.
pub fn check_kind(alg: &BiHomAlgebra, kind: Kind) -> Result<CheckReport> {
    Ok(match kind {
        Kind::Untagged => CheckReport::new(),
        Kind::Associative => check_classical(alg, ClassicalKind::Associative)?,
        Kind::Lie => check_classical(alg, ClassicalKind::Lie)?,
        Kind::Novikov => check_classical(alg, ClassicalKind::Novikov)?,
        Kind::BiHomAssociative => check_bihom_associative(alg),
        Kind::BiHomLie => check_bihom_lie(alg),
        Kind::BiHomNovikov => check_bihom_novikov(alg),
    })
}

/// Commutative and associative, the input class for the derivation-twisted
/// product.
pub fn check_commutative_associative(alg: &BiHomAlgebra) -> CheckReport {
    let mut report = check_classical(alg, ClassicalKind::Commutative).expect("no map requirement");
    report.merge(check_classical(alg, ClassicalKind::Associative).expect("no map requirement"));
    report
}
