//! `SL2(F_p)`, the Heisenberg group `H = V x F_p` over the symplectic plane
//! `V = F_p^2`, and the standard realization `pi` of the Heisenberg group on
//! `C(F_p)` with central character `psi(z) = e^{2 pi i z / p}`.
//!
//! Vectors in `V` are written `(tau, w)` and matrices act on columns:
//! `g (tau, w)^T`. The symplectic form is `omega((tau, w), (tau', w')) =
//! tau w' - w tau'`, and the factor `1/2` in the Heisenberg product is the
//! residue `(p+1)/2`.

use alloc::vec::Vec;

use crate::arith::{FpElem, Prime};
use crate::error::{Error, Result};
use crate::hilbert::{cis, CVector, Complex64, Operator};

/// A 2x2 matrix over `F_p` with no determinant constraint; the Cayley
/// transform and eigenvector computations live here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mat2 {
    pub a: FpElem,
    pub b: FpElem,
    pub c: FpElem,
    pub d: FpElem,
}

impl Mat2 {
    pub fn det(&self) -> FpElem {
        self.a * self.d - self.b * self.c
    }

    pub fn add_identity(&self) -> Mat2 {
        let one = FpElem::one(self.a.prime());
        Mat2 { a: self.a + one, b: self.b, c: self.c, d: self.d + one }
    }

    pub fn apply(&self, v: (FpElem, FpElem)) -> (FpElem, FpElem) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }
}

/// An element of `SL2(F_p)`: `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sl2Elem {
    a: FpElem,
    b: FpElem,
    c: FpElem,
    d: FpElem,
}

impl Sl2Elem {
    pub fn new(a: FpElem, b: FpElem, c: FpElem, d: FpElem) -> Result<Sl2Elem> {
        if (a * d - b * c).value() != 1 {
            return Err(Error::NotUnimodular);
        }
        Ok(Sl2Elem { a, b, c, d })
    }

    pub fn identity(p: Prime) -> Sl2Elem {
        let (o, z) = (FpElem::one(p), FpElem::zero(p));
        Sl2Elem { a: o, b: z, c: z, d: o }
    }

    /// The Weyl element `[[0, 1], [-1, 0]]`, a fourth root of the identity.
    pub fn weyl(p: Prime) -> Sl2Elem {
        let (o, z) = (FpElem::one(p), FpElem::zero(p));
        Sl2Elem { a: z, b: o, c: -o, d: z }
    }

    /// `diag(a, a^{-1})` for `a != 0`.
    pub fn diagonal(a: FpElem) -> Sl2Elem {
        let inv = a.inv().expect("diagonal torus element needs a unit");
        let z = FpElem::zero(a.prime());
        Sl2Elem { a, b: z, c: z, d: inv }
    }

    /// `[[1, 0], [c, 1]]`.
    pub fn lower_unipotent(c: FpElem) -> Sl2Elem {
        let (o, z) = (FpElem::one(c.prime()), FpElem::zero(c.prime()));
        Sl2Elem { a: o, b: z, c, d: o }
    }

    /// `[[1, b], [0, 1]]`.
    pub fn upper_unipotent(b: FpElem) -> Sl2Elem {
        let (o, z) = (FpElem::one(b.prime()), FpElem::zero(b.prime()));
        Sl2Elem { a: o, b, c: z, d: o }
    }

    /// Completes a nonzero top row `(a, b)` to an element of `SL2`. The
    /// solutions form a line; `free` picks the point on it. As `(a, b, free)`
    /// ranges over (nonzero row) x `F_p` this hits every element exactly once,
    /// which makes uniform sampling trivial for callers holding an RNG.
    pub fn from_top_row(a: FpElem, b: FpElem, free: FpElem) -> Result<Sl2Elem> {
        if !a.is_zero() {
            let c = free;
            let d = (FpElem::one(a.prime()) + b * c) * a.inv().unwrap();
            Sl2Elem::new(a, b, c, d)
        } else if !b.is_zero() {
            let c = -b.inv().unwrap();
            Sl2Elem::new(a, b, c, free)
        } else {
            Err(Error::NotUnimodular)
        }
    }

    #[inline]
    pub fn a(&self) -> FpElem {
        self.a
    }
    #[inline]
    pub fn b(&self) -> FpElem {
        self.b
    }
    #[inline]
    pub fn c(&self) -> FpElem {
        self.c
    }
    #[inline]
    pub fn d(&self) -> FpElem {
        self.d
    }

    pub fn prime(&self) -> Prime {
        self.a.prime()
    }

    pub fn det(&self) -> FpElem {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> FpElem {
        self.a + self.d
    }

    pub fn mat(&self) -> Mat2 {
        Mat2 { a: self.a, b: self.b, c: self.c, d: self.d }
    }

    pub fn inv(&self) -> Sl2Elem {
        Sl2Elem { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn pow(&self, mut exp: u64) -> Sl2Elem {
        let mut base = *self;
        let mut acc = Sl2Elem::identity(self.prime());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a.value() == 1 && self.d.value() == 1
    }

    /// Column action on the symplectic plane.
    pub fn apply_vec(&self, v: (FpElem, FpElem)) -> (FpElem, FpElem) {
        (self.a * v.0 + self.b * v.1, self.c * v.0 + self.d * v.1)
    }

    /// Entries as raw residues `[a, b, c, d]`, used as a lookup key.
    pub fn key(&self) -> [u64; 4] {
        [self.a.value(), self.b.value(), self.c.value(), self.d.value()]
    }
}

impl core::ops::Mul for Sl2Elem {
    type Output = Sl2Elem;
    fn mul(self, rhs: Sl2Elem) -> Sl2Elem {
        Sl2Elem {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }
}

impl core::fmt::Display for Sl2Elem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `omega((tau, w), (tau', w')) = tau w' - w tau'`.
pub fn symplectic_form(u: (FpElem, FpElem), v: (FpElem, FpElem)) -> FpElem {
    u.0 * v.1 - u.1 * v.0
}

/// An element `(tau, w, z)` of the Heisenberg group `V x F_p` with product
/// `(v, z)(v', z') = (v + v', z + z' + omega(v, v')/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeisElem {
    pub tau: FpElem,
    pub w: FpElem,
    pub z: FpElem,
}

impl HeisElem {
    pub fn new(tau: FpElem, w: FpElem, z: FpElem) -> HeisElem {
        HeisElem { tau, w, z }
    }

    pub fn identity(p: Prime) -> HeisElem {
        let z = FpElem::zero(p);
        HeisElem { tau: z, w: z, z }
    }

    pub fn vector(&self) -> (FpElem, FpElem) {
        (self.tau, self.w)
    }

    pub fn mul(&self, rhs: &HeisElem) -> HeisElem {
        HeisElem {
            tau: self.tau + rhs.tau,
            w: self.w + rhs.w,
            z: self.z + rhs.z + symplectic_form(self.vector(), rhs.vector()).half(),
        }
    }

    pub fn inv(&self) -> HeisElem {
        HeisElem { tau: -self.tau, w: -self.w, z: -self.z }
    }
}

/// `SL2` acts on the Heisenberg group through the plane, fixing the center:
/// `g (v, z) = (g v, z)`. This is by automorphisms because `g` preserves the
/// symplectic form.
pub fn sp_action(g: &Sl2Elem, h: &HeisElem) -> HeisElem {
    let (tau, w) = g.apply_vec(h.vector());
    HeisElem { tau, w, z: h.z }
}

/// Lookup table for the additive character `psi(k) = e^{2 pi i k / p}`.
///
/// Indices are exact residues, so two expressions that agree mod p produce
/// bit-identical phases.
#[derive(Debug, Clone)]
pub struct PsiTable {
    p: Prime,
    roots: Vec<Complex64>,
}

impl PsiTable {
    pub fn new(p: Prime) -> PsiTable {
        let n = p.get();
        let step = 2.0 * core::f64::consts::PI / n as f64;
        let roots = (0..n).map(|k| cis(step * k as f64)).collect();
        PsiTable { p, roots }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn psi(&self, k: u64) -> Complex64 {
        self.roots[(k % self.p.get()) as usize]
    }

    #[inline]
    pub fn psi_elem(&self, k: FpElem) -> Complex64 {
        debug_assert_eq!(k.prime(), self.p);
        self.roots[k.value() as usize]
    }
}

/// The standard realization of the Heisenberg group on `C(F_p)`:
/// translations in `tau`, modulations in `w`, the center acting by `psi`.
/// Concretely `[pi(tau, w, z) f](t) = psi(z + tau w / 2 + w t) f(t + tau)`.
pub fn pi_operator(h: &HeisElem) -> Operator {
    let psi = PsiTable::new(h.tau.prime());
    pi_operator_with(h, &psi)
}

/// Same as [`pi_operator`], reusing a phase table across many builds.
pub fn pi_operator_with(h: &HeisElem, psi: &PsiTable) -> Operator {
    let p = psi.prime().get();
    let n = p as usize;
    let base = h.z + (h.tau * h.w).half();
    let mut out = Operator::zeros(n);
    for t in 0..p {
        let col = (t + h.tau.value()) % p;
        let phase = psi.psi(base.value() + h.w.value() * t);
        out.set(t as usize, col as usize, phase);
    }
    out
}

/// Applies `pi(h)` to a vector without forming the matrix.
pub fn pi_apply(h: &HeisElem, f: &CVector, psi: &PsiTable) -> CVector {
    let p = psi.prime().get();
    assert_eq!(f.len() as u64, p, "vector length must equal p");
    let base = h.z + (h.tau * h.w).half();
    CVector::from_fn(p as usize, |t| {
        let t = t as u64;
        let src = ((t + h.tau.value()) % p) as usize;
        psi.psi(base.value() + h.w.value() * t) * f.at(src)
    })
}

/// The discrete Fourier transform on `C(F_p)` as a dense unitary matrix:
/// `F[w, t] = psi(w t) / sqrt(p)`.
pub fn dft_matrix(p: Prime) -> Operator {
    let psi = PsiTable::new(p);
    let n = p.get();
    let scale = 1.0 / num_traits::Float::sqrt(n as f64);
    Operator::from_fn(n as usize, |w, t| psi.psi(w as u64 * t as u64).scale(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn p5() -> Prime {
        Prime::new(5).unwrap()
    }

    fn all_sl2(p: Prime) -> Vec<Sl2Elem> {
        let mut out = Vec::new();
        for a in 0..p.get() {
            for b in 0..p.get() {
                for c in 0..p.get() {
                    for d in 0..p.get() {
                        if let Ok(g) =
                            Sl2Elem::new(p.elem(a), p.elem(b), p.elem(c), p.elem(d))
                        {
                            out.push(g);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn sl2_group_axioms_exhaustive_p5() {
        let p = p5();
        let elems = all_sl2(p);
        assert_eq!(elems.len() as u64, p.get() * (p.get() * p.get() - 1));
        let e = Sl2Elem::identity(p);
        for g in &elems {
            assert_eq!(*g * g.inv(), e);
            assert_eq!(g.inv() * *g, e);
            assert_eq!(g.det().value(), 1);
        }
        let w = Sl2Elem::weyl(p);
        assert_eq!(w.pow(4), e);
        let minus_one =
            Sl2Elem::new(p.elem_i64(-1), p.elem(0), p.elem(0), p.elem_i64(-1)).unwrap();
        assert_eq!(w.pow(2), minus_one);
    }

    #[test]
    fn from_top_row_enumerates_sl2_bijectively() {
        let p = p5();
        let mut seen = BTreeSet::new();
        for a in 0..p.get() {
            for b in 0..p.get() {
                for free in 0..p.get() {
                    match Sl2Elem::from_top_row(p.elem(a), p.elem(b), p.elem(free)) {
                        Ok(g) => {
                            assert!(seen.insert(g.key()));
                        }
                        Err(_) => assert!(a == 0 && b == 0),
                    }
                }
            }
        }
        assert_eq!(seen.len() as u64, p.get() * (p.get() * p.get() - 1));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let p = Prime::new(13).unwrap();
        let g = Sl2Elem::new(p.elem(2), p.elem(3), p.elem(3), p.elem(5)).unwrap();
        let mut acc = Sl2Elem::identity(p);
        for e in 0..10 {
            assert_eq!(g.pow(e), acc);
            acc = acc * g;
        }
    }

    #[test]
    fn heisenberg_group_axioms() {
        let p = p5();
        let h = |t: i64, w: i64, z: i64| {
            HeisElem::new(p.elem_i64(t), p.elem_i64(w), p.elem_i64(z))
        };
        let e = HeisElem::identity(p);
        let samples = [h(1, 2, 0), h(3, 0, 4), h(2, 2, 1), h(0, 4, 3), h(4, 1, 2)];
        for x in &samples {
            assert_eq!(x.mul(&x.inv()), e);
            assert_eq!(x.inv().mul(x), e);
            for y in &samples {
                for z in &samples {
                    assert_eq!(x.mul(y).mul(z), x.mul(&y.mul(z)));
                }
            }
        }
        // The commutator lands in the center and measures the symplectic form.
        let x = h(1, 0, 0);
        let y = h(0, 1, 0);
        let comm = x.mul(&y).mul(&x.inv()).mul(&y.inv());
        assert_eq!(comm, h(0, 0, 1));
    }

    #[test]
    fn sp_action_is_by_automorphisms() {
        let p = p5();
        let g = Sl2Elem::new(p.elem(2), p.elem(1), p.elem(1), p.elem(1)).unwrap();
        let xs = [
            HeisElem::new(p.elem(1), p.elem(2), p.elem(3)),
            HeisElem::new(p.elem(4), p.elem(0), p.elem(1)),
            HeisElem::new(p.elem(2), p.elem(3), p.elem(0)),
        ];
        for x in &xs {
            for y in &xs {
                let lhs = sp_action(&g, &x.mul(y));
                let rhs = sp_action(&g, x).mul(&sp_action(&g, y));
                assert_eq!(lhs, rhs);
            }
        }
        // Symplectic form preserved.
        for x in &xs {
            for y in &xs {
                assert_eq!(
                    symplectic_form(g.apply_vec(x.vector()), g.apply_vec(y.vector())),
                    symplectic_form(x.vector(), y.vector())
                );
            }
        }
    }

    #[test]
    fn psi_is_an_additive_character() {
        let p = Prime::new(7).unwrap();
        let psi = PsiTable::new(p);
        for a in 0..7 {
            for b in 0..7 {
                let lhs = psi.psi(a) * psi.psi(b);
                let rhs = psi.psi(a + b);
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
        assert!((psi.psi(0) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((psi.psi(7) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn pi_is_a_representation_p5() {
        let p = p5();
        let psi = PsiTable::new(p);
        let mut hs = Vec::new();
        for tau in 0..5 {
            for w in 0..5 {
                hs.push(HeisElem::new(p.elem(tau), p.elem(w), p.elem((tau * w + 1) % 5)));
            }
        }
        for x in &hs {
            for y in &hs {
                let lhs = pi_operator_with(x, &psi).mul(&pi_operator_with(y, &psi));
                let rhs = pi_operator_with(&x.mul(y), &psi);
                assert!(lhs.max_abs_diff(&rhs) < 1e-12, "x = {x:?}, y = {y:?}");
            }
        }
    }

    #[test]
    fn pi_building_blocks() {
        let p = p5();
        let psi = PsiTable::new(p);
        // Central elements act by the scalar psi(z).
        let central = pi_operator(&HeisElem::new(p.elem(0), p.elem(0), p.elem(3)));
        let scaled = Operator::identity(5).scale(psi.psi(3));
        assert!(central.max_abs_diff(&scaled) < 1e-15);
        // Translation part: pi(tau, 0, 0) delta_x = delta_{x - tau}.
        let tr = pi_operator(&HeisElem::new(p.elem(2), p.elem(0), p.elem(0)));
        let moved = tr.matvec(&CVector::delta(5, 2));
        assert!(moved.max_abs_diff(&CVector::delta(5, 0)) < 1e-15);
        // Modulation part: pi(0, w, 0) multiplies by psi(w t).
        let md = pi_operator(&HeisElem::new(p.elem(0), p.elem(3), p.elem(0)));
        for t in 0..5u64 {
            let v = md.matvec(&CVector::delta(5, t as usize));
            assert!((v.at(t as usize) - psi.psi(3 * t)).norm() < 1e-15);
        }
        // Unitarity across a few elements.
        for h in [
            HeisElem::new(p.elem(1), p.elem(2), p.elem(3)),
            HeisElem::new(p.elem(4), p.elem(4), p.elem(0)),
        ] {
            assert!(pi_operator(&h).deviation_from_unitary() < 1e-14);
        }
    }

    #[test]
    fn pi_apply_matches_matrix() {
        let p = Prime::new(13).unwrap();
        let psi = PsiTable::new(p);
        let f = CVector::from_fn(13, |t| Complex64::new(t as f64 * 0.3 - 1.0, 1.7 - t as f64));
        for h in [
            HeisElem::new(p.elem(5), p.elem(2), p.elem(7)),
            HeisElem::new(p.elem(0), p.elem(11), p.elem(1)),
            HeisElem::new(p.elem(12), p.elem(0), p.elem(0)),
        ] {
            let via_matrix = pi_operator_with(&h, &psi).matvec(&f);
            let direct = pi_apply(&h, &f, &psi);
            assert!(via_matrix.max_abs_diff(&direct) < 1e-13);
        }
    }

    #[test]
    fn dft_matrix_is_unitary_fourth_root() {
        for q in [5u64, 7, 13] {
            let p = Prime::new(q).unwrap();
            let f = dft_matrix(p);
            assert!(f.deviation_from_unitary() < 1e-13);
            let f2 = f.mul(&f);
            let f4 = f2.mul(&f2);
            assert!(f4.deviation_from_identity() < 1e-12, "F^4 != 1 at p = {q}");
            // F^2 is the parity operator f(t) -> f(-t).
            let parity = Operator::from_fn(q as usize, |r, c| {
                if (r + c) % q as usize == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            assert!(f2.max_abs_diff(&parity) < 1e-13);
        }
    }
}
