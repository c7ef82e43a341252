//! Exhaustive search for small instances over a prime field.
//!
//! Candidates are screened with plain `u32` arithmetic modulo `p`; every
//! survivor is then rebuilt as exact [`Scalar`]s and rechecked by the library
//! checkers, and a copy lifted to the rationals (each residue read as the
//! integer in `(-p/2, p/2]`) is kept when it passes the same checks exactly.
//!
//! Structure-map pairs are enumerated up to simultaneous conjugation, and
//! with `reduce` on, instances are reported once per isomorphism class
//! (and, for forms, up to scaling of the form). Results are ordered by their
//! canonical encoding, independent of thread scheduling.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BiHomAlgebra, Kind};
use crate::axioms::{check_bihom_novikov, check_classical, ClassicalKind};
use crate::cohomology::{h2_dimension, Variant};
use crate::constructions::{rota_baxter_check, RotaBaxterData};
use crate::document::AlgebraDocument;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::quadratic::{is_quadratic_novikov, BilinearForm};
use crate::scalar::{symmetric_lift, Field, Scalar};
use crate::tensor::Tensor3;

pub const MAX_DIMENSION: usize = 3;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    QuadraticNovikov,
    Rigid,
    RotaBaxter,
}

impl Target {
    pub fn as_str(self) -> &'static str {
        match self {
            Target::QuadraticNovikov => "quadratic-novikov",
            Target::Rigid => "rigid",
            Target::RotaBaxter => "rota-baxter",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Target::QuadraticNovikov, Target::Rigid, Target::RotaBaxter]
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Validation(format!("unknown search target {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub dimension: usize,
    pub prime: u32,
    pub target: Target,
    /// Maximum number of (alpha, beta, product) or operator candidates.
    pub budget: u64,
    /// Report one instance per isomorphism class.
    pub reduce: bool,
    /// Base algebra and weight for [`Target::RotaBaxter`].
    pub rota_baxter: Option<(BiHomAlgebra, Scalar)>,
}

impl SearchSpec {
    pub fn new(dimension: usize, prime: u32, target: Target) -> Self {
        SearchSpec { dimension, prime, target, budget: DEFAULT_BUDGET, reduce: true, rota_baxter: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub modular: AlgebraDocument,
    pub lifted: Option<AlgebraDocument>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub structure_pairs: usize,
    pub explored: u64,
    pub screened: usize,
    /// Screened candidates the exact recheck rejected; nonzero means the
    /// fast path and the library disagree.
    pub rejected_by_exact: usize,
    pub reported: usize,
    pub lifted: usize,
    /// Rigidity candidates with a nonzero second cohomology.
    pub nonzero_h2: usize,
    pub complex_broken: usize,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub instances: Vec<Instance>,
    /// Rigidity candidates whose cochain complex fails over `F_p`.
    pub complex_broken: Vec<AlgebraDocument>,
    pub stats: SearchStats,
}

pub fn search(spec: &SearchSpec) -> Result<SearchOutcome> {
    if spec.dimension == 0 || spec.dimension > MAX_DIMENSION {
        return Err(Error::Validation(format!("search dimension must be in 1..={MAX_DIMENSION}")));
    }
    let field = Field::prime(spec.prime)?;
    let ctx = Ctx { n: spec.dimension, p: spec.prime };
    match spec.target {
        Target::QuadraticNovikov | Target::Rigid => structure_search(spec, &ctx, field),
        Target::RotaBaxter => rota_baxter_search(spec, &ctx, field),
    }
}

/// Arithmetic on `n x n` data modulo `p`. Matrices are row-major; tensors
/// use the `(i, j, k)` layout of [`Tensor3`].
struct Ctx {
    n: usize,
    p: u32,
}

type Mat = Vec<u32>;

impl Ctx {
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    fn inv(&self, a: u32) -> u32 {
        (1..self.p).find(|&b| self.mul(a, b) == 1).expect("nonzero residue")
    }

    fn mat_mul(&self, a: &[u32], b: &[u32]) -> Mat {
        let n = self.n;
        let mut out = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s += a[r * n + k] * b[k * n + c];
                }
                out[r * n + c] = s % self.p;
            }
        }
        out
    }

    #[cfg(test)]
    fn identity(&self) -> Mat {
        let n = self.n;
        (0..n * n).map(|i| u32::from(i / n == i % n)).collect()
    }

    fn apply(&self, m: &[u32], v: &[u32]) -> Vec<u32> {
        let n = self.n;
        (0..n).map(|r| (0..n).map(|c| m[r * n + c] * v[c]).sum::<u32>() % self.p).collect()
    }

    fn column(&self, m: &[u32], c: usize) -> Vec<u32> {
        (0..self.n).map(|r| m[r * self.n + c]).collect()
    }

    fn bilinear(&self, mu: &[u32], x: &[u32], y: &[u32]) -> Vec<u32> {
        let n = self.n;
        let mut out = vec![0u32; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                let c = x[i] * y[j] % self.p;
                if c == 0 {
                    continue;
                }
                let base = (i * n + j) * n;
                for k in 0..n {
                    out[k] = (out[k] + c * mu[base + k]) % self.p;
                }
            }
        }
        out
    }

    fn sub_vec(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, self.neg(y))).collect()
    }

    /// Row-reduces in place and returns the pivot columns.
    fn rref(&self, rows: &mut [Vec<u32>], cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows.len() {
                break;
            }
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = self.inv(rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..cols {
                        let sub = self.mul(f, rows[r][k]);
                        rows[i][k] = self.add(rows[i][k], self.neg(sub));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn kernel(&self, mut rows: Vec<Vec<u32>>, cols: usize) -> Vec<Vec<u32>> {
        let pivots = self.rref(&mut rows, cols);
        (0..cols)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = vec![0; cols];
                v[f] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(rows[row][f]);
                }
                v
            })
            .collect()
    }

    fn rank(&self, m: &[u32]) -> usize {
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = (0..n).map(|r| m[r * n..(r + 1) * n].to_vec()).collect();
        self.rref(&mut rows, n).len()
    }

    fn invert(&self, m: &[u32]) -> Option<Mat> {
        let n = self.n;
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|r| {
                let mut row = m[r * n..(r + 1) * n].to_vec();
                row.extend((0..n).map(|c| u32::from(c == r)));
                row
            })
            .collect();
        let pivots = self.rref(&mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(rows.iter().flat_map(|row| row[n..].to_vec()).collect())
    }

    /// Every vector of length `len` over `F_p`, in lexicographic order.
    fn all_vectors(&self, len: usize) -> Vec<Vec<u32>> {
        let total = (self.p as usize).pow(len as u32);
        (0..total).map(|idx| self.digits(idx as u64, len)).collect()
    }

    fn digits(&self, mut idx: u64, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % self.p as u64) as u32;
            idx /= self.p as u64;
        }
        v
    }

    fn combine(&self, basis: &[Vec<u32>], coeffs: &[u32], len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for (b, &c) in basis.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(b) {
                *o = (*o + c * x) % self.p;
            }
        }
        out
    }

    fn general_linear(&self) -> Vec<Mat> {
        self.all_vectors(self.n * self.n).into_iter().filter(|m| self.rank(m) == self.n).collect()
    }

    /// `g m g^-1`
    fn conjugate(&self, g: &[u32], g_inv: &[u32], m: &[u32]) -> Mat {
        self.mat_mul(&self.mat_mul(g, m), g_inv)
    }

    /// `g mu(g^-1 x, g^-1 y)`
    fn transport_product(&self, g: &[u32], g_inv: &[u32], mu: &[u32]) -> Vec<u32> {
        let n = self.n;
        let cols: Vec<Vec<u32>> = (0..n).map(|i| self.column(g_inv, i)).collect();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                out.extend(self.apply(g, &self.bilinear(mu, &cols[i], &cols[j])));
            }
        }
        out
    }

    /// `B(g^-1 x, g^-1 y)`, matrix `g^-T B g^-1`.
    fn transport_form(&self, g_inv: &[u32], b: &[u32]) -> Mat {
        let n = self.n;
        let t: Mat = (0..n * n).map(|i| g_inv[(i % n) * n + i / n]).collect();
        self.mat_mul(&self.mat_mul(&t, b), g_inv)
    }

    /// `M mu(x, y) = mu(M x, M y)` as linear constraints on `mu`, one column
    /// per coordinate of `mu`.
    fn multiplicativity_rows(&self, m: &[u32], rows: &mut Vec<Vec<u32>>) {
        let n = self.n;
        let len = n * n * n;
        let start = rows.len();
        rows.extend((0..len).map(|_| vec![0; len]));
        for (col, unit) in (0..len).map(|c| (c, unit_vec(len, c))).collect::<Vec<_>>() {
            let lhs: Vec<u32> = (0..n * n).flat_map(|ij| self.apply(m, &unit[ij * n..(ij + 1) * n])).collect();
            let rhs = self.transport_product_raw(m, &unit);
            for (r, v) in self.sub_vec(&lhs, &rhs).into_iter().enumerate() {
                rows[start + r][col] = v;
            }
        }
    }

    /// `mu(M x, M y)` tabulated on basis pairs.
    fn transport_product_raw(&self, m: &[u32], mu: &[u32]) -> Vec<u32> {
        let n = self.n;
        let cols: Vec<Vec<u32>> = (0..n).map(|i| self.column(m, i)).collect();
        let mut out = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                out.extend(self.bilinear(mu, &cols[i], &cols[j]));
            }
        }
        out
    }

    fn is_bihom_novikov(&self, mu: &[u32], a: &[u32], b: &[u32]) -> bool {
        let n = self.n;
        let e: Vec<Vec<u32>> = (0..n).map(|i| unit_vec(n, i)).collect();
        let ac: Vec<Vec<u32>> = (0..n).map(|i| self.column(a, i)).collect();
        let bc: Vec<Vec<u32>> = (0..n).map(|i| self.column(b, i)).collect();
        let ab = self.mat_mul(a, b);
        let abc: Vec<Vec<u32>> = (0..n).map(|i| self.column(&ab, i)).collect();
        let m = |x: &[u32], y: &[u32]| self.bilinear(mu, x, y);
        for i in 0..n {
            for j in 0..n {
                let ij = &mu[(i * n + j) * n..(i * n + j + 1) * n];
                for k in 0..n {
                    let ik = &mu[(i * n + k) * n..(i * n + k + 1) * n];
                    if m(ij, &ac[k]) != m(ik, &ac[j]) {
                        return false;
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let side = |x: usize, y: usize| {
                        self.sub_vec(&m(&m(&bc[x], &ac[y]), &bc[k]), &m(&abc[x], &m(&ac[y], &e[k])))
                    };
                    if side(i, j) != side(j, i) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Symmetric forms satisfying `B(a x, b(y)a(z)) = B(b(x)a(y), a z)`, as a
    /// kernel basis over the upper-triangular coordinates.
    fn invariant_forms(&self, mu: &[u32], a: &[u32], b: &[u32]) -> Vec<Vec<u32>> {
        let n = self.n;
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|r| (r..n).map(move |s| (r, s))).collect();
        let slot = |r: usize, s: usize| slots.iter().position(|&x| x == (r.min(s), r.max(s))).expect("slot");
        let ac: Vec<Vec<u32>> = (0..n).map(|i| self.column(a, i)).collect();
        let bc: Vec<Vec<u32>> = (0..n).map(|i| self.column(b, i)).collect();
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut row = vec![0u32; slots.len()];
                    let mut add = |u: &[u32], v: &[u32], sign: bool| {
                        for r in 0..n {
                            for s in 0..n {
                                let c = self.mul(u[r], v[s]);
                                let c = if sign { c } else { self.neg(c) };
                                let idx = slot(r, s);
                                row[idx] = self.add(row[idx], c);
                            }
                        }
                    };
                    add(&ac[i], &self.bilinear(mu, &bc[j], &ac[k]), true);
                    add(&self.bilinear(mu, &bc[i], &ac[j]), &ac[k], false);
                    rows.push(row);
                }
            }
        }
        let basis = self.kernel(rows, slots.len());
        basis
            .iter()
            .map(|v| {
                let mut m = vec![0; n * n];
                for (idx, &(r, s)) in slots.iter().enumerate() {
                    m[r * n + s] = v[idx];
                    m[s * n + r] = v[idx];
                }
                m
            })
            .collect()
    }
}

fn unit_vec(len: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

/// A commuting pair of invertible maps, one per conjugacy orbit, with the
/// subgroup fixing it.
struct PairOrbit {
    alpha: Mat,
    beta: Mat,
    stabilizer: Vec<(Mat, Mat)>,
}

fn pair_orbits(ctx: &Ctx, group: &[(Mat, Mat)]) -> Vec<PairOrbit> {
    let n = ctx.n;
    let invertible: Vec<&Mat> = group.iter().map(|(g, _)| g).collect();
    let mut seen: HashSet<(Mat, Mat)> = HashSet::new();
    let mut out = Vec::new();
    for &a in &invertible {
        for &b in &invertible {
            if ctx.mat_mul(a, b) != ctx.mat_mul(b, a) || seen.contains(&(a.clone(), b.clone())) {
                continue;
            }
            let mut stabilizer = Vec::new();
            for (g, g_inv) in group {
                let image = (ctx.conjugate(g, g_inv, a), ctx.conjugate(g, g_inv, b));
                if image.0 == *a && image.1 == *b {
                    stabilizer.push((g.clone(), g_inv.clone()));
                }
                seen.insert(image);
            }
            out.push(PairOrbit { alpha: a.clone(), beta: b.clone(), stabilizer });
        }
    }
    debug_assert!(out.iter().all(|o| o.alpha.len() == n * n));
    out
}

/// A screened candidate in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Candidate {
    alpha: Mat,
    beta: Mat,
    mu: Vec<u32>,
    form: Option<Mat>,
}

fn canonical(ctx: &Ctx, orbit: &PairOrbit, mu: &[u32], form: Option<&[u32]>, reduce: bool) -> Candidate {
    let make =
        |mu: Vec<u32>, form: Option<Mat>| Candidate { alpha: orbit.alpha.clone(), beta: orbit.beta.clone(), mu, form };
    if !reduce {
        return make(mu.to_vec(), form.map(<[u32]>::to_vec));
    }
    let mut best: Option<Candidate> = None;
    for (g, g_inv) in &orbit.stabilizer {
        let mu2 = ctx.transport_product(g, g_inv, mu);
        let forms: Vec<Option<Mat>> = match form {
            None => vec![None],
            Some(b) => {
                let moved = ctx.transport_form(g_inv, b);
                (1..ctx.p).map(|c| Some(moved.iter().map(|&x| ctx.mul(x, c)).collect())).collect()
            }
        };
        for f in forms {
            let cand = make(mu2.clone(), f);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.expect("stabilizer contains the identity")
}

fn structure_search(spec: &SearchSpec, ctx: &Ctx, field: Field) -> Result<SearchOutcome> {
    let n = ctx.n;
    let len = n * n * n;
    let group: Vec<(Mat, Mat)> = ctx
        .general_linear()
        .into_iter()
        .map(|g| {
            let inv = ctx.invert(&g).expect("invertible");
            (g, inv)
        })
        .collect();
    let orbits = pair_orbits(ctx, &group);
    let mut stats = SearchStats { structure_pairs: orbits.len(), ..SearchStats::default() };
    let mut found: BTreeSet<Candidate> = BTreeSet::new();
    let quadratic = spec.target == Target::QuadraticNovikov;
    for orbit in &orbits {
        let mut rows = Vec::new();
        ctx.multiplicativity_rows(&orbit.alpha, &mut rows);
        ctx.multiplicativity_rows(&orbit.beta, &mut rows);
        let basis = ctx.kernel(rows, len);
        let count = (ctx.p as u64).saturating_pow(basis.len() as u32);
        if stats.explored.saturating_add(count) > spec.budget {
            return Err(Error::BudgetExceeded {
                budget: spec.budget,
                explored: stats.explored,
                survivors: found.len(),
            });
        }
        stats.explored += count;
        let hits: Vec<Candidate> = (0..count)
            .into_par_iter()
            .flat_map_iter(|idx| {
                let coeffs = ctx.digits(idx, basis.len());
                let mu = ctx.combine(&basis, &coeffs, len);
                let mut out = Vec::new();
                if !ctx.is_bihom_novikov(&mu, &orbit.alpha, &orbit.beta) {
                    return out.into_iter();
                }
                if quadratic {
                    let forms = ctx.invariant_forms(&mu, &orbit.alpha, &orbit.beta);
                    let total = (ctx.p as u64).pow(forms.len() as u32);
                    for fidx in 0..total {
                        let b = ctx.combine(&forms, &ctx.digits(fidx, forms.len()), n * n);
                        if ctx.rank(&b) == n {
                            out.push(canonical(ctx, orbit, &mu, Some(&b), spec.reduce));
                        }
                    }
                } else {
                    out.push(canonical(ctx, orbit, &mu, None, spec.reduce));
                }
                out.into_iter()
            })
            .collect();
        stats.screened += hits.len();
        found.extend(hits);
    }
    let candidates: Vec<Candidate> = found.into_iter().collect();
    let verified: Vec<Verdict> =
        candidates.par_iter().map(|c| verify_structure(spec, ctx, field, c)).collect::<Result<_>>()?;
    let mut instances = Vec::new();
    let mut complex_broken = Vec::new();
    for v in verified {
        match v {
            Verdict::Accepted(inst) => instances.push(*inst),
            Verdict::Rejected => stats.rejected_by_exact += 1,
            Verdict::NotRigid => stats.nonzero_h2 += 1,
            Verdict::ComplexBroken(doc) => complex_broken.push(*doc),
        }
    }
    stats.reported = instances.len();
    stats.lifted = instances.iter().filter(|i| i.lifted.is_some()).count();
    stats.complex_broken = complex_broken.len();
    Ok(SearchOutcome { instances, complex_broken, stats })
}

fn to_matrix(ctx: &Ctx, m: &[u32], lift: impl Fn(u32) -> Scalar) -> Matrix {
    Matrix::from_fn(ctx.n, ctx.n, |r, c| lift(m[r * ctx.n + c]))
}

fn to_tensor(ctx: &Ctx, mu: &[u32], lift: impl Fn(u32) -> Scalar) -> Tensor3 {
    Tensor3::from_coords(ctx.n, mu.iter().map(|&v| lift(v)).collect()).expect("n^3 coordinates")
}

fn structure_document(
    spec: &SearchSpec,
    ctx: &Ctx,
    field: Field,
    c: &Candidate,
    lift: impl Fn(u32) -> Scalar + Copy,
) -> Result<AlgebraDocument> {
    let alg =
        BiHomAlgebra::new(to_tensor(ctx, &c.mu, lift), to_matrix(ctx, &c.alpha, lift), to_matrix(ctx, &c.beta, lift))?;
    let mut doc = AlgebraDocument::new(field, alg);
    if let Some(b) = &c.form {
        doc.bilinear_form = Some(BilinearForm::new(to_matrix(ctx, b, lift))?);
    }
    doc.provenance.insert("search.target".into(), spec.target.as_str().into());
    doc.provenance.insert("search.field".into(), format!("prime:{}", ctx.p));
    Ok(doc)
}

enum Verdict {
    Accepted(Box<Instance>),
    Rejected,
    NotRigid,
    /// The `F_p` complex fails `delta2 delta1 = 0`, so no dimension of `H^2`
    /// is reported.
    ComplexBroken(Box<AlgebraDocument>),
}

enum Recheck {
    Pass(AlgebraDocument),
    Fail,
    NotRigid,
    Broken(AlgebraDocument),
}

/// Exact recheck of a screened candidate over `F_p` and, after lifting, over
/// the rationals.
fn verify_structure(spec: &SearchSpec, ctx: &Ctx, field: Field, c: &Candidate) -> Result<Verdict> {
    let p = ctx.p;
    let modular = structure_document(spec, ctx, field, c, move |v| Scalar::modular(v as i64, p))?;
    let modular = match finish_structure(spec, modular)? {
        Recheck::Pass(doc) => doc,
        Recheck::Fail => return Ok(Verdict::Rejected),
        Recheck::NotRigid => return Ok(Verdict::NotRigid),
        Recheck::Broken(doc) => return Ok(Verdict::ComplexBroken(Box::new(doc))),
    };
    let lifted_doc = structure_document(spec, ctx, Field::Rational, c, move |v| {
        symmetric_lift(&Scalar::modular(v as i64, p)).expect("residue")
    })?;
    let lifted = match finish_structure(spec, lifted_doc)? {
        Recheck::Pass(mut l) => {
            l.provenance.insert("search.lifted".into(), "true".into());
            Some(l)
        }
        _ => None,
    };
    Ok(Verdict::Accepted(Box::new(Instance { modular, lifted })))
}

fn finish_structure(spec: &SearchSpec, mut doc: AlgebraDocument) -> Result<Recheck> {
    let alg = &doc.algebra;
    let ok = match spec.target {
        Target::QuadraticNovikov => is_quadratic_novikov(alg, doc.bilinear_form.as_ref().expect("form"))?,
        Target::Rigid => {
            if !check_bihom_novikov(alg).passed() {
                return Ok(Recheck::Fail);
            }
            match h2_dimension(alg, Variant::Composition) {
                Ok(dims) if dims.dim_h2 > 0 => return Ok(Recheck::NotRigid),
                Ok(_) => true,
                Err(Error::ComplexBroken { .. }) => return Ok(Recheck::Broken(doc)),
                Err(e) => return Err(e),
            }
        }
        Target::RotaBaxter => unreachable!("operator search"),
    };
    if !ok {
        return Ok(Recheck::Fail);
    }
    let associative = check_classical(alg, ClassicalKind::Associative)?.passed();
    doc.provenance.insert("associative".into(), associative.to_string());
    doc.algebra = doc.algebra.clone().tagged(Kind::BiHomNovikov)?;
    doc.expected = vec![Kind::BiHomNovikov];
    Ok(Recheck::Pass(doc))
}

fn rota_baxter_search(spec: &SearchSpec, ctx: &Ctx, field: Field) -> Result<SearchOutcome> {
    let (base, weight) = spec
        .rota_baxter
        .as_ref()
        .ok_or_else(|| Error::Validation("rota-baxter search needs a base algebra and a weight".into()))?;
    if base.dim() != ctx.n {
        return Err(Error::DimensionMismatch { expected: ctx.n, found: base.dim() });
    }
    let reduce = |s: &Scalar| -> Result<u32> {
        match field.embed(s) {
            Some(Scalar::Modular { value, .. }) => Ok(value),
            _ => Err(Error::Validation(format!("scalar {s} has no image in {field}"))),
        }
    };
    let n = ctx.n;
    let mu: Vec<u32> = base.mu().coords().iter().map(reduce).collect::<Result<_>>()?;
    let a: Mat = base.alpha().entries().iter().map(reduce).collect::<Result<_>>()?;
    let b: Mat = base.beta().entries().iter().map(reduce).collect::<Result<_>>()?;
    let lambda = reduce(weight)?;
    let total = (ctx.p as u64).saturating_pow((n * n) as u32);
    if total > spec.budget {
        return Err(Error::BudgetExceeded { budget: spec.budget, explored: 0, survivors: 0 });
    }
    let e: Vec<Vec<u32>> = (0..n).map(|i| unit_vec(n, i)).collect();
    let hits: Vec<Mat> = (0..total)
        .into_par_iter()
        .filter_map(|idx| {
            let op = ctx.digits(idx, n * n);
            if ctx.mat_mul(&op, &a) != ctx.mat_mul(&a, &op) || ctx.mat_mul(&op, &b) != ctx.mat_mul(&b, &op) {
                return None;
            }
            let pc: Vec<Vec<u32>> = (0..n).map(|i| ctx.column(&op, i)).collect();
            for i in 0..n {
                for j in 0..n {
                    let lhs = ctx.bilinear(&mu, &pc[i], &pc[j]);
                    let mut inner = ctx.bilinear(&mu, &pc[i], &e[j]);
                    for (x, y) in inner.iter_mut().zip(ctx.bilinear(&mu, &e[i], &pc[j])) {
                        *x = ctx.add(*x, y);
                    }
                    for (x, &y) in inner.iter_mut().zip(&mu[(i * n + j) * n..(i * n + j + 1) * n]) {
                        *x = ctx.add(*x, ctx.mul(lambda, y));
                    }
                    if lhs != ctx.apply(&op, &inner) {
                        return None;
                    }
                }
            }
            Some(op)
        })
        .collect();
    let mut stats = SearchStats { explored: total, screened: hits.len(), ..SearchStats::default() };
    let p = ctx.p;
    let modular_base = BiHomAlgebra::new(
        to_tensor(ctx, &mu, move |v| Scalar::modular(v as i64, p)),
        to_matrix(ctx, &a, move |v| Scalar::modular(v as i64, p)),
        to_matrix(ctx, &b, move |v| Scalar::modular(v as i64, p)),
    )?;
    let modular_weight = Scalar::modular(lambda as i64, p);
    let mut instances = Vec::new();
    for op in &hits {
        let rb = RotaBaxterData {
            operator: to_matrix(ctx, op, move |v| Scalar::modular(v as i64, p)),
            weight: modular_weight.clone(),
        };
        if !rota_baxter_check(&modular_base, &rb)?.passed() {
            stats.rejected_by_exact += 1;
            continue;
        }
        let mut doc = AlgebraDocument::new(field, modular_base.clone());
        doc.rota_baxter = Some(rb);
        doc.provenance.insert("search.target".into(), spec.target.as_str().into());
        doc.provenance.insert("search.field".into(), field.tag());
        let lifted_rb = RotaBaxterData {
            operator: to_matrix(ctx, op, move |v| symmetric_lift(&Scalar::modular(v as i64, p)).expect("residue")),
            weight: weight.clone(),
        };
        let lifted = if base.mu().coords().iter().all(|s| s.modulus().is_none())
            && rota_baxter_check(base, &lifted_rb)?.passed()
        {
            let mut l = AlgebraDocument::new(Field::Rational, base.clone());
            l.rota_baxter = Some(lifted_rb);
            l.provenance = doc.provenance.clone();
            l.provenance.insert("search.lifted".into(), "true".into());
            Some(l)
        } else {
            None
        };
        instances.push(Instance { modular: doc, lifted });
    }
    stats.reported = instances.len();
    stats.lifted = instances.iter().filter(|i| i.lifted.is_some()).count();
    Ok(SearchOutcome { instances, complex_broken: Vec::new(), stats })
}

/// Counts of each `provenance` value under `key` across instances.
pub fn tally(instances: &[Instance], key: &str) -> BTreeMap<String, usize> {
    let mut out = BTreeMap::new();
    for inst in instances {
        if let Some(v) = inst.modular.provenance.get(key) {
            *out.entry(v.clone()).or_insert(0) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::n_ab;
    use crate::quadratic::check_bracket_nilpotency;

    #[test]
    fn modular_kernel_and_inverse() {
        let ctx = Ctx { n: 2, p: 5 };
        let m = vec![1, 2, 3, 4];
        let inv = ctx.invert(&m).unwrap();
        assert_eq!(ctx.mat_mul(&m, &inv), ctx.identity());
        assert!(ctx.invert(&[1, 2, 2, 4]).is_none());
        let k = ctx.kernel(vec![vec![1, 2, 0], vec![0, 0, 1]], 3);
        assert_eq!(k, vec![vec![3, 1, 0]]);
        assert_eq!(ctx.general_linear().len(), 480);
    }

    #[test]
    fn pair_orbits_cover_all_commuting_pairs() {
        let ctx = Ctx { n: 2, p: 3 };
        let group: Vec<(Mat, Mat)> = ctx
            .general_linear()
            .into_iter()
            .map(|g| {
                let i = ctx.invert(&g).unwrap();
                (g, i)
            })
            .collect();
        let orbits = pair_orbits(&ctx, &group);
        let total: usize = orbits.iter().map(|o| group.len() / o.stabilizer.len()).sum();
        let commuting = group
            .iter()
            .flat_map(|(a, _)| group.iter().map(move |(b, _)| (a, b)))
            .filter(|(a, b)| ctx.mat_mul(a, b) == ctx.mat_mul(b, a))
            .count();
        assert_eq!(total, commuting);
    }

    #[test]
    fn one_dimensional_quadratic_search() {
        let out = search(&SearchSpec::new(1, 5, Target::QuadraticNovikov)).unwrap();
        assert_eq!(out.stats.rejected_by_exact, 0);
        // zero product with each (alpha, beta), plus e e = e with identity maps
        let zero = out.instances.iter().filter(|i| i.modular.algebra.mu().is_zero()).count();
        assert_eq!(zero, 16);
        assert_eq!(out.instances.len(), 17);
        for inst in &out.instances {
            let form = inst.modular.bilinear_form.as_ref().unwrap();
            assert!(check_bracket_nilpotency(&inst.modular.algebra, form).unwrap().passed());
        }
    }

    #[test]
    fn unreduced_search_reports_every_form() {
        let mut spec = SearchSpec::new(1, 3, Target::QuadraticNovikov);
        spec.reduce = false;
        let out = search(&spec).unwrap();
        // zero product: 4 map pairs x 2 forms; e e = c e (c = 1, 2) with identity maps x 2 forms
        assert_eq!(out.instances.len(), 12);
    }

    #[test]
    fn budget_is_enforced() {
        let mut spec = SearchSpec::new(2, 3, Target::QuadraticNovikov);
        spec.budget = 10;
        assert!(matches!(search(&spec), Err(Error::BudgetExceeded { budget: 10, .. })));
    }

    #[test]
    fn rigid_search_finds_the_unit_line() {
        let out = search(&SearchSpec::new(1, 3, Target::Rigid)).unwrap();
        assert!(out
            .instances
            .iter()
            .any(|i| i.lifted.as_ref().is_some_and(|l| l.algebra.mu() == crate::corpus::unit_line().mu())));
    }

    #[test]
    fn rota_baxter_search_finds_the_identity() {
        let mut spec = SearchSpec::new(2, 3, Target::RotaBaxter);
        spec.rota_baxter = Some((n_ab(1, 1), Scalar::from_int(-1)));
        let out = search(&spec).unwrap();
        assert!(out.instances.iter().any(|i| i.modular.rota_baxter.as_ref().unwrap().operator.is_identity()));
        assert_eq!(out.stats.rejected_by_exact, 0);
    }
}
