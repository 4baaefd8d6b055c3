//! Explicit complex matrices for single-site operators. Used only as an
//! independent check of the label arithmetic.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{CliffordSpec, WeylLabel};

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        DenseMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Complex64) {
        self.data[r * self.dim + c] = x;
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.dim), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn max_distance(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

pub fn omega(d: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / d as f64)
}

pub fn tau(d: u32) -> Complex64 {
    if d % 2 == 1 {
        Complex64::from_polar(1.0, PI * (d as f64 + 1.0) / d as f64)
    } else {
        Complex64::from_polar(1.0, PI / d as f64)
    }
}

pub fn tau_pow(d: u32, t: i64) -> Complex64 {
    let t = t.rem_euclid(2 * d as i64);
    tau(d).powu(t as u32)
}

pub fn pauli_z(d: u32) -> DenseMatrix {
    let mut m = DenseMatrix::zeros(d as usize);
    for z in 0..d as usize {
        m.set(z, z, omega(d).powu(z as u32));
    }
    m
}

pub fn pauli_x(d: u32) -> DenseMatrix {
    let n = d as usize;
    let mut m = DenseMatrix::zeros(n);
    for z in 0..n {
        m.set((z + 1) % n, z, Complex64::new(1.0, 0.0));
    }
    m
}

/// `τ^{-ab} Z^a X^b` for integer labels.
pub fn weyl_matrix(d: u32, a: i64, b: i64) -> DenseMatrix {
    let di = d as i64;
    let z = pauli_z(d).pow(a.rem_euclid(di) as u32);
    let x = pauli_x(d).pow(b.rem_euclid(di) as u32);
    z.mul(&x).scale(tau_pow(d, -a * b))
}

pub fn label_matrix(w: &WeylLabel) -> DenseMatrix {
    weyl_matrix(w.d, w.v[0] as i64, w.v[1] as i64).scale(tau_pow(w.d, w.tau_exp as i64))
}

/// A unitary with `U Z U† = W_{Ce1}` and `U X U† = W_{Ce2}`, fixed up to a
/// global phase. Built from an eigenvector of `W_{Ce1}` with eigenvalue 1.
pub fn symplectic_unitary(d: u32, c: [[u32; 2]; 2]) -> DenseMatrix {
    let n = d as usize;
    let w1 = weyl_matrix(d, c[0][0] as i64, c[1][0] as i64);
    let w2 = weyl_matrix(d, c[0][1] as i64, c[1][1] as i64);
    // projector onto the +1 eigenspace applied to basis vectors
    let projector = (0..d).fold(DenseMatrix::zeros(n), |acc, j| {
        let p = w1.pow(j);
        DenseMatrix {
            dim: n,
            data: acc.data.iter().zip(&p.data).map(|(a, b)| a + b).collect(),
        }
    });
    let phi0 = (0..n)
        .map(|s| (0..n).map(|r| projector.get(r, s)).collect::<Vec<_>>())
        .find(|col| col.iter().map(|x| x.norm_sqr()).sum::<f64>() > 1e-6)
        .expect("W has eigenvalue 1");
    let norm = phi0.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let mut col: Vec<Complex64> = phi0.iter().map(|x| x / norm).collect();
    let mut u = DenseMatrix::zeros(n);
    for j in 0..n {
        for (r, x) in col.iter().enumerate() {
            u.set(r, j, *x);
        }
        col = w2.apply(&col);
    }
    u
}

pub fn clifford_matrix(v: &CliffordSpec) -> DenseMatrix {
    let d = v.d();
    symplectic_unitary(d, v.c.c)
        .mul(&weyl_matrix(d, v.x[0] as i64, v.x[1] as i64))
        .scale(tau_pow(d, v.tau_exp as i64))
}
