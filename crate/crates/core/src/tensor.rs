//! Structure-constant tensors.
//!
//! [`Tensor3`] stores a bilinear map `A x A -> A` as `c[i][j][k]` with
//! `f(e_i, e_j) = sum_k c[i][j][k] e_k`; [`Tensor4`] stores a trilinear map
//! the same way with coordinates `(i, j, k, l)`. Flattened coordinates are
//! lexicographic in the index tuple.

use std::ops::{Add, Sub};

use crate::error::{ensure_dim, Result};
use crate::matrix::{vector, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vector::zeros(n * n * n) }
    }

    /// Tabulates a bilinear map from its values on basis pairs.
    pub fn from_basis_fn(n: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut data = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                assert_eq!(v.len(), n, "basis value has wrong length");
                data.extend(v);
            }
        }
        Tensor3 { n, data }
    }

    /// Tabulates a bilinear map given on arbitrary vectors.
    pub fn from_bilinear(n: usize, mut f: impl FnMut(&[Scalar], &[Scalar]) -> Vector) -> Self {
        Self::from_basis_fn(n, |i, j| f(&vector::unit(n, i), &vector::unit(n, j)))
    }

    pub fn from_coords(n: usize, coords: Vec<Scalar>) -> Result<Self> {
        ensure_dim(n * n * n, coords.len())?;
        Ok(Tensor3 { n, data: coords })
    }

    /// Sparse constructor from `(i, j, k, c)` entries; repeated entries add up.
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut t = Self::zeros(n);
        for (i, j, k, c) in entries {
            let idx = t.index(*i, *j, *k);
            t.data[idx] += c;
        }
        t
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.data[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Scalar) {
        let idx = self.index(i, j, k);
        self.data[idx] = v;
    }

    /// `f(e_i, e_j)` as a coordinate slice.
    pub fn basis_value(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.n + j) * self.n;
        &self.data[start..start + self.n]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    /// Bilinear evaluation. Panics on wrong-length inputs.
    pub fn apply(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        assert!(x.len() == self.n && y.len() == self.n, "vector length does not match tensor dimension");
        let mut out = vector::zeros(self.n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                vector::axpy(&mut out, &(xi * yj), self.basis_value(i, j));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Tensor3 { n: self.n, data: vector::scale(c, &self.data) }
    }

    /// Tabulates `(x, y) -> outer(f(left x, right y))`.
    pub fn sandwich(&self, outer: &Matrix, left: &Matrix, right: &Matrix) -> Self {
        let n = self.n;
        Self::from_basis_fn(n, |i, j| outer.apply(&self.apply(&left.column(i), &right.column(j))))
    }

    /// Nonzero entries in index order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> + '_ {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(idx, c)| (idx / (n * n), (idx / n) % n, idx % n, c))
    }
}

impl<'a> Add<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;
    fn add(self, rhs: &'a Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n);
        Tensor3 { n: self.n, data: vector::add(&self.data, &rhs.data) }
    }
}

impl<'a> Sub<&'a Tensor3> for &'a Tensor3 {
    type Output = Tensor3;
    fn sub(self, rhs: &'a Tensor3) -> Tensor3 {
        assert_eq!(self.n, rhs.n);
        Tensor3 { n: self.n, data: vector::sub(&self.data, &rhs.data) }
    }
}

/// A trilinear map `A x A x A -> A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor4 {
    n: usize,
    data: Vec<Scalar>,
}

impl Tensor4 {
    pub fn zeros(n: usize) -> Self {
        Tensor4 { n, data: vector::zeros(n * n * n * n) }
    }

    pub fn from_basis_fn(n: usize, mut f: impl FnMut(usize, usize, usize) -> Vector) -> Self {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = f(i, j, k);
                    assert_eq!(v.len(), n, "basis value has wrong length");
                    data.extend(v);
                }
            }
        }
        Tensor4 { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Scalar {
        &self.data[((i * self.n + j) * self.n + k) * self.n + l]
    }

    pub fn basis_value(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let start = ((i * self.n + j) * self.n + k) * self.n;
        &self.data[start..start + self.n]
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        vector::is_zero(&self.data)
    }

    pub fn apply(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = vector::zeros(self.n);
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    vector::axpy(&mut out, &(&xy * zk), self.basis_value(i, j, k));
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Tensor4> for &'a Tensor4 {
    type Output = Tensor4;
    fn add(self, rhs: &'a Tensor4) -> Tensor4 {
        assert_eq!(self.n, rhs.n);
        Tensor4 { n: self.n, data: vector::add(&self.data, &rhs.data) }
    }
}

impl<'a> Sub<&'a Tensor4> for &'a Tensor4 {
    type Output = Tensor4;
    fn sub(self, rhs: &'a Tensor4) -> Tensor4 {
        assert_eq!(self.n, rhs.n);
        Tensor4 { n: self.n, data: vector::sub(&self.data, &rhs.data) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_and_bilinear_evaluation() {
        let one = Scalar::one();
        // k[x]/(x^2)
        let t = Tensor3::from_entries(2, &[(0, 0, 0, one.clone()), (0, 1, 1, one.clone()), (1, 0, 1, one.clone())]);
        let s = vec![one.clone(), one.clone()];
        assert_eq!(t.apply(&s, &s), vec![one.clone(), Scalar::from_int(2)]);
        let listed: Vec<_> = t.nonzero_entries().map(|(i, j, k, _)| (i, j, k)).collect();
        assert_eq!(listed, vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        let back = Tensor3::from_bilinear(2, |x, y| t.apply(x, y));
        assert_eq!(back, t);
    }
}
