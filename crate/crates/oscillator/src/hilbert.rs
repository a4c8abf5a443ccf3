//! Dense vectors and operators on the Hilbert space `C(F_p)`.
//!
//! The inner product is conjugate-linear in the *second* slot:
//! `<u, v> = sum_t u(t) * conj(v(t))`. Everything downstream (projections,
//! expansion coefficients, Gram matrices) sticks to that convention.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

pub type Complex64 = num_complex::Complex<f64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// `e^{i theta}` — the only place trigonometry enters the crate.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64 { re: Float::cos(theta), im: Float::sin(theta) }
}

/// `i^q`, exactly (no trigonometry), reduced mod 4.
#[inline]
pub fn i_power(q: u64) -> Complex64 {
    match q % 4 {
        0 => Complex64 { re: 1.0, im: 0.0 },
        1 => Complex64 { re: 0.0, im: 1.0 },
        2 => Complex64 { re: -1.0, im: 0.0 },
        _ => Complex64 { re: 0.0, im: -1.0 },
    }
}

/// A vector in `C(F_p)`, indexed by the least residues `0..p`.
#[derive(Debug, Clone, PartialEq)]
pub struct CVector {
    data: Vec<Complex64>,
}

impl CVector {
    pub fn zeros(n: usize) -> CVector {
        CVector { data: alloc::vec![ZERO; n] }
    }

    /// The delta function at `t`.
    pub fn delta(n: usize, t: usize) -> CVector {
        let mut v = CVector::zeros(n);
        v.data[t] = ONE;
        v
    }

    pub fn from_vec(data: Vec<Complex64>) -> CVector {
        CVector { data }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> Complex64) -> CVector {
        CVector { data: (0..n).map(f).collect() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn at(&self, t: usize) -> Complex64 {
        self.data[t]
    }

    #[inline]
    pub fn set(&mut self, t: usize, value: Complex64) {
        self.data[t] = value;
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `<self, other>`, conjugate-linear in `other`.
    pub fn inner(&self, other: &CVector) -> Complex64 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.data.iter().zip(&other.data).map(|(a, b)| a * b.conj()).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        Float::sqrt(self.norm_sq())
    }

    pub fn scale(&self, alpha: Complex64) -> CVector {
        CVector { data: self.data.iter().map(|z| alpha * z).collect() }
    }

    /// `self += alpha * other`, in place.
    pub fn scaled_add(&mut self, alpha: Complex64, other: &CVector) {
        assert_eq!(self.len(), other.len(), "length mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn sub(&self, other: &CVector) -> CVector {
        assert_eq!(self.len(), other.len(), "length mismatch");
        CVector { data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }

    pub fn normalized(&self) -> Result<CVector> {
        let n = self.norm();
        if n < 1e-300 {
            return Err(Error::ZeroVector);
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// `self` minus its orthogonal projection onto the span of `basis`
    /// (assumed orthonormal). The subtraction runs twice: the second pass
    /// clears the first's cancellation error, so even residuals many orders
    /// of magnitude below the input stay numerically orthogonal.
    pub fn orthogonalized(&self, basis: &[CVector]) -> CVector {
        let mut v = self.clone();
        for _ in 0..2 {
            for b in basis {
                let overlap = v.inner(b);
                v.scaled_add(-overlap, b);
            }
        }
        v
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CVector) -> f64 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Rotates the global phase so the pivot entry becomes real and positive,
    /// canonicalizing a vector that is otherwise defined only up to phase.
    /// The pivot is the first entry within a relative `1e-9` of the largest
    /// modulus — a tolerance rather than a strict maximum, because exact-tie
    /// twins (e.g. `|v(-t)| = |v(t)|` for DFT eigenvectors) would otherwise
    /// be ranked by floating-point noise.
    pub fn phase_normalized(&self) -> Result<CVector> {
        let max = self.max_abs();
        if max < 1e-300 {
            return Err(Error::ZeroVector);
        }
        let cutoff = max * (1.0 - 1e-9);
        let pivot = *self
            .data
            .iter()
            .find(|z| z.norm() >= cutoff)
            .expect("an entry attains the maximum");
        Ok(self.scale(pivot.conj().unscale(pivot.norm())))
    }
}

/// A dense operator on `C(F_p)`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    n: usize,
    data: Vec<Complex64>,
}

impl Operator {
    pub fn zeros(n: usize) -> Operator {
        Operator { n, data: alloc::vec![ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Operator {
        let mut a = Operator::zeros(n);
        for j in 0..n {
            a.data[j * n + j] = ONE;
        }
        a
    }

    /// Builds from an entry function `(row, col) -> value`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Operator {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Operator { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.n + col] = value;
    }

    #[inline]
    pub fn add_to(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.n + col] += value;
    }

    pub fn matvec(&self, v: &CVector) -> CVector {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        CVector::from_fn(self.n, |r| {
            let row = &self.data[r * self.n..(r + 1) * self.n];
            row.iter().zip(v.as_slice()).map(|(a, x)| a * x).sum()
        })
    }

    pub fn mul(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Operator::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a == ZERO {
                    continue;
                }
                let rhs_row = &rhs.data[k * n..(k + 1) * n];
                let out_row = &mut out.data[r * n..(r + 1) * n];
                for (o, b) in out_row.iter_mut().zip(rhs_row) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Operator {
        Operator::from_fn(self.n, |r, c| self.at(c, r).conj())
    }

    pub fn scale(&self, alpha: Complex64) -> Operator {
        Operator { n: self.n, data: self.data.iter().map(|z| alpha * z).collect() }
    }

    pub fn add(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Operator {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self += alpha * other`, in place.
    pub fn scaled_add(&mut self, alpha: Complex64, other: &Operator) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += alpha * b;
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|j| self.data[j * self.n + j]).sum()
    }

    pub fn column(&self, col: usize) -> CVector {
        CVector::from_fn(self.n, |r| self.at(r, col))
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |(A A* - I)_{rc}|` — zero exactly when the operator is unitary.
    pub fn deviation_from_unitary(&self) -> f64 {
        self.mul(&self.adjoint()).deviation_from_identity()
    }

    pub fn deviation_from_identity(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for c in 0..self.n {
                let expect = if r == c { ONE } else { ZERO };
                worst = worst.max((self.at(r, c) - expect).norm());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_product_is_conjugate_linear_in_second_slot() {
        let u = CVector::from_vec(alloc::vec![Complex64::new(1.0, 2.0), Complex64::new(0.0, 1.0)]);
        let v = CVector::from_vec(alloc::vec![Complex64::new(3.0, -1.0), Complex64::new(2.0, 0.0)]);
        let alpha = Complex64::new(0.5, -1.5);
        let lhs = u.inner(&v.scale(alpha));
        let rhs = alpha.conj() * u.inner(&v);
        assert!((lhs - rhs).norm() < 1e-14);
        // <u, u> is the squared norm.
        assert!((u.inner(&u).re - u.norm_sq()).abs() < 1e-14);
        assert!(u.inner(&u).im.abs() < 1e-16);
    }

    #[test]
    fn delta_vectors_are_orthonormal() {
        for t in 0..5 {
            for s in 0..5 {
                let d = CVector::delta(5, t).inner(&CVector::delta(5, s));
                let expect = if t == s { 1.0 } else { 0.0 };
                assert!((d - Complex64::new(expect, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn matvec_matches_mul() {
        let a = Operator::from_fn(4, |r, c| Complex64::new((r * 7 + c) as f64, (r + c * 3) as f64));
        let b = Operator::from_fn(4, |r, c| Complex64::new((r + c) as f64, (r * c) as f64 / 2.0));
        let v = CVector::from_fn(4, |t| Complex64::new(t as f64, -1.0));
        let lhs = a.mul(&b).matvec(&v);
        let rhs = a.matvec(&b.matvec(&v));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn adjoint_and_trace() {
        let a = Operator::from_fn(3, |r, c| Complex64::new(r as f64, c as f64));
        let adj = a.adjoint();
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(adj.at(r, c), a.at(c, r).conj());
            }
        }
        let tr = a.trace();
        assert!((tr - Complex64::new(0.0 + 1.0 + 2.0, 0.0 + 1.0 + 2.0)).norm() < 1e-15);
    }

    #[test]
    fn identity_is_unitary() {
        assert!(Operator::identity(6).deviation_from_unitary() < 1e-16);
        let mut nearly = Operator::identity(6);
        nearly.set(2, 3, Complex64::new(1e-3, 0.0));
        assert!(nearly.deviation_from_unitary() > 5e-4);
    }

    #[test]
    fn phase_normalization_pins_largest_entry() {
        let v = CVector::from_vec(alloc::vec![
            Complex64::new(0.1, 0.2),
            Complex64::new(0.0, -0.9),
            Complex64::new(0.3, 0.0),
        ]);
        let w = v.phase_normalized().unwrap();
        let pivot = w.at(1);
        assert!(pivot.im.abs() < 1e-15);
        assert!(pivot.re > 0.0);
        // Same vector up to phase: norms of entries preserved.
        for t in 0..3 {
            assert!((w.at(t).norm() - v.at(t).norm()).abs() < 1e-15);
        }
        assert!(CVector::zeros(4).phase_normalized().is_err());
        assert!(CVector::zeros(4).normalized().is_err());
    }

    #[test]
    fn gram_schmidt_building_blocks() {
        let mut v = CVector::from_fn(5, |t| Complex64::new(1.0, t as f64));
        let u = CVector::delta(5, 2);
        let coeff = v.inner(&u);
        v.scaled_add(-coeff, &u);
        assert!(v.inner(&u).norm() < 1e-14);
    }

    #[test]
    fn cis_lands_on_unit_circle() {
        for k in 0..17 {
            let z = cis(2.0 * core::f64::consts::PI * k as f64 / 17.0);
            assert!((z.norm() - 1.0).abs() < 1e-15);
        }
        assert!((cis(0.0) - ONE).norm() < 1e-16);
    }
}
