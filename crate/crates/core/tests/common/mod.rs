//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use bihom_core::{BiHomAlgebra, Matrix, Scalar, Tensor3};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A commutative associative algebra with commuting multiplicative maps and
/// a derivation commuting with both, all in a random basis.
#[derive(Clone, Debug)]
pub struct Sample {
    pub algebra: BiHomAlgebra,
    pub alpha: Matrix,
    pub beta: Matrix,
    pub derivation: Matrix,
}

enum Block {
    /// `k[x]/(x^m)` on `1, x, ..., x^(m-1)`; `m = 1` is an idempotent line.
    Truncated(usize),
    /// A line with zero product.
    Null,
}

fn scale_choice(rng: &mut ChaCha8Rng, invertible: bool) -> Scalar {
    let choices: &[(i64, i64)] = if invertible {
        &[(1, 1), (2, 1), (-1, 1), (3, 1), (1, 2)]
    } else {
        &[(1, 1), (2, 1), (-1, 1), (0, 1), (1, 2)]
    };
    let (p, q) = *choices.choose(rng).unwrap();
    Scalar::ratio(p, q)
}

/// Block sum of truncated polynomial algebras and null lines. With
/// `invertible` set, both structure maps are invertible.
pub fn comm_assoc_sample(rng: &mut ChaCha8Rng, max_dim: usize, invertible: bool) -> Sample {
    let n = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left);
        blocks.push(if size == 1 && rng.gen_bool(0.3) { Block::Null } else { Block::Truncated(size) });
        left -= size;
    }
    let mut mu = Tensor3::zeros(n);
    let mut alpha = vec![Scalar::zero(); n];
    let mut beta = vec![Scalar::zero(); n];
    let mut der = vec![Scalar::zero(); n];
    let mut offset = 0;
    for block in &blocks {
        match *block {
            Block::Truncated(m) => {
                for i in 0..m {
                    for j in 0..m - i {
                        mu.set(offset + i, offset + j, offset + i + j, Scalar::one());
                    }
                }
                let a = scale_choice(rng, invertible);
                let b = scale_choice(rng, invertible);
                let d = Scalar::from_int(rng.gen_range(-2..=2));
                let mut pa = Scalar::one();
                let mut pb = Scalar::one();
                for i in 0..m {
                    alpha[offset + i] = pa.clone();
                    beta[offset + i] = pb.clone();
                    der[offset + i] = &Scalar::from_int(i as i64) * &d;
                    pa = &pa * &a;
                    pb = &pb * &b;
                }
                offset += m;
            }
            Block::Null => {
                alpha[offset] = scale_choice(rng, invertible);
                beta[offset] = scale_choice(rng, invertible);
                der[offset] = Scalar::from_int(rng.gen_range(-2..=2));
                offset += 1;
            }
        }
    }
    let (g, g_inv) = change_of_basis(rng, n);
    let conj = |d: &[Scalar]| &(&g * &Matrix::diagonal(d)) * &g_inv;
    Sample {
        algebra: BiHomAlgebra::untwisted(mu.sandwich(&g, &g_inv, &g_inv)),
        alpha: conj(&alpha),
        beta: conj(&beta),
        derivation: conj(&der),
    }
}

/// A product of elementary matrices and its inverse.
pub fn change_of_basis(rng: &mut ChaCha8Rng, n: usize) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(n);
    if n > 1 {
        for _ in 0..2 * n {
            let r = rng.gen_range(0..n);
            let mut c = rng.gen_range(0..n - 1);
            if c >= r {
                c += 1;
            }
            let mut e = Matrix::identity(n);
            e.set(r, c, Scalar::from_int(*[-1, 1, 2].choose(rng).unwrap()));
            g = &e * &g;
        }
    }
    let g_inv = g.invert().expect("elementary product");
    (g, g_inv)
}

/// A table with few nonzero small-integer entries.
pub fn sparse_table(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Tensor3 {
    let mut mu = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if rng.gen_bool(density) {
                    mu.set(i, j, k, Scalar::from_int(*[-1, 1, 2].choose(rng).unwrap()));
                }
            }
        }
    }
    mu
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Matrix {
    Matrix::from_fn(n, n, |_, _| Scalar::from_int(rng.gen_range(-range..=range)))
}

pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, 2);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_coeffs(rng: &mut ChaCha8Rng, len: usize) -> Vec<Scalar> {
    (0..len).map(|_| Scalar::from_int(rng.gen_range(-3..=3))).collect()
}
