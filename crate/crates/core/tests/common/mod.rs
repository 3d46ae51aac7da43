//! Deterministic instance generators shared by the integration tests.

use num_complex::Complex64;

use krein::decomposition::canonical_decomposition;
use krein::numerics::{hermitian_eig, ComplexMatrix};
use krein::space::{KVector, KreinSpace};

/// SplitMix64: tiny, seedable, reproducible forever.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn usize_in(&mut self, lo: usize, hi: usize) -> usize {
        lo + (self.next_u64() as usize) % (hi - lo + 1)
    }

    /// Standard normal via Box-Muller.
    pub fn normal(&mut self) -> f64 {
        let u1 = self.uniform().max(1e-12);
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }
}

/// A random Hermitian matrix with entries of unit scale.
pub fn random_hermitian(rng: &mut Rng, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = if i == j {
                Complex64::new(rng.normal(), 0.0)
            } else {
                rng.complex_normal()
            };
            m.set(i, j, v);
            m.set(j, i, v.conj());
        }
    }
    m
}

/// A random unitary matrix: the eigenvector basis of a random
/// Hermitian matrix.
pub fn random_unitary(rng: &mut Rng, n: usize) -> ComplexMatrix {
    hermitian_eig(&random_hermitian(rng, n))
        .expect("random Hermitian matrices diagonalize")
        .eigenvectors
}

/// A random nondegenerate space of the given dimension and signature:
/// eigenvalues drawn with magnitude in [0.3, 3] and the requested signs,
/// conjugated by a random unitary.
pub fn random_space(rng: &mut Rng, dim: usize, positives: usize) -> KreinSpace {
    let u = random_unitary(rng, dim);
    let mut lambda = Vec::with_capacity(dim);
    for i in 0..dim {
        let mag = rng.range(0.3, 3.0);
        lambda.push(if i < positives { mag } else { -mag });
    }
    let mut scaled = u.clone();
    for (j, &l) in lambda.iter().enumerate() {
        for i in 0..dim {
            scaled.set(i, j, u.get(i, j) * l);
        }
    }
    let gram = scaled.mul(&u.adjoint()).unwrap().hermitian_part();
    KreinSpace::new(gram).expect("constructed Gram is nondegenerate")
}

/// A random indefinite space with dim in [2, max_dim].
pub fn random_indefinite_space(rng: &mut Rng, max_dim: usize) -> KreinSpace {
    let dim = rng.usize_in(2, max_dim);
    let positives = rng.usize_in(1, dim - 1);
    random_space(rng, dim, positives)
}

pub fn random_vector(rng: &mut Rng, dim: usize) -> KVector {
    KVector::new((0..dim).map(|_| rng.complex_normal()).collect())
}

/// A random vector whose squared form value is clearly away from the
/// neutrality band.
pub fn random_non_neutral(rng: &mut Rng, space: &KreinSpace) -> KVector {
    loop {
        let x = random_vector(rng, space.dim());
        let q = space.quad_form(&x).unwrap();
        if q.abs() > 1e-2 * x.euclidean_norm().powi(2) * space.gram_frobenius() {
            return x;
        }
    }
}

/// An exactly neutral vector: unit-form combinations of one canonical
/// positive and one canonical negative direction.
pub fn random_neutral(rng: &mut Rng, space: &KreinSpace) -> KVector {
    let canon = canonical_decomposition(space).unwrap();
    let combine = |basis: &ComplexMatrix, rng: &mut Rng| -> KVector {
        loop {
            let coeffs: Vec<Complex64> = (0..basis.cols()).map(|_| rng.complex_normal()).collect();
            let mut v = vec![Complex64::new(0.0, 0.0); basis.rows()];
            for (j, c) in coeffs.iter().enumerate() {
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi += basis.get(i, j) * c;
                }
            }
            let v = KVector::new(v);
            if space.quad_form(&v).unwrap().abs() > 1e-6 {
                return v;
            }
        }
    };
    let u = combine(canon.basis_plus(), rng);
    let w = combine(canon.basis_minus(), rng);
    let qu = space.quad_form(&u).unwrap();
    let qw = space.quad_form(&w).unwrap();
    let u = u.scale(Complex64::new(1.0 / qu.sqrt(), 0.0));
    let w = w.scale(Complex64::new(1.0 / (-qw).sqrt(), 0.0));
    u.add(&w)
}
