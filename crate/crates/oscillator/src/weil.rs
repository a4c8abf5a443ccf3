//! The Weil representation `rho: SL2(F_p) -> U(C(F_p))`.
//!
//! For *generic* elements — those with `g - 1` invertible, equivalently
//! `tr(g) != 2` — the operator is built from an explicit kernel on the
//! symplectic plane via the Cayley transform. The remaining elements are
//! reached by multiplicativity: factor `g` into two generic pieces and
//! multiply the operators. A factored chirp/Fourier/scaling path applies
//! `rho(g)` to a vector in `O(p log p)` without forming any matrix.
//!
//! Normalization is pinned by three cross-checks, all enforced in tests:
//! the kernel/operator correspondence inverts the trace pairing exactly,
//! `rho` is unitary and multiplicative, and `F = C rho(w)` with
//! `C = i^{(p-1)/2}` for the Weyl element `w` and the DFT `F`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::arith::{legendre, FpElem, Prime};
use crate::error::{Error, Result};
use crate::fft::{BluesteinPlan, Sign};
use crate::group::{symplectic_form, Mat2, PsiTable, Sl2Elem};
use crate::hilbert::{i_power, CVector, Complex64, Operator, ZERO};

/// `kappa(g) = (g + 1)(g - 1)^{-1}` over `F_p`, defined exactly for generic
/// `g`. Since `det g = 1`, the condition `det(g - 1) != 0` is `tr(g) != 2`.
pub fn cayley(g: &Sl2Elem) -> Result<Mat2> {
    let p = g.prime();
    let one = FpElem::one(p);
    let det_gm1 = p.elem(2) - g.trace();
    if det_gm1.is_zero() {
        return Err(Error::NonGenericElement);
    }
    let idet = det_gm1.inv().unwrap();
    // (g + 1) * adj(g - 1) / det(g - 1)
    let (pa, pb, pc, pd) = (g.a() + one, g.b(), g.c(), g.d() + one);
    let (qa, qb, qc, qd) = (g.d() - one, -g.b(), -g.c(), g.a() - one);
    Ok(Mat2 {
        a: (pa * qa + pb * qc) * idet,
        b: (pa * qb + pb * qd) * idet,
        c: (pc * qa + pd * qc) * idet,
        d: (pc * qb + pd * qd) * idet,
    })
}

/// The scalar `C = i^{(p-1)/2}` relating the DFT to the Weyl element:
/// `F = C rho(w)`.
pub fn weyl_phase_constant(p: Prime) -> Complex64 {
    i_power((p.get() - 1) / 2)
}

/// The kernel of `rho(g)` on the symplectic plane: the `z = 0` slice
/// `K_g(v) = (sigma(-1)/p) sigma(det(kappa(g)+1)) psi(omega(kappa(g)v, v)/4)`,
/// with `sigma` the Legendre symbol and `1/4` the modular inverse. The full
/// kernel on the Heisenberg group is recovered through central equivariance,
/// which [`operator_from_kernel`] folds into its normalization.
#[derive(Debug, Clone)]
pub struct WeilKernel {
    p: Prime,
    g: Option<Sl2Elem>,
    values: Vec<Complex64>,
}

impl WeilKernel {
    pub fn prime(&self) -> Prime {
        self.p
    }

    /// The group element this kernel was derived from, when there is one
    /// (kernels produced by [`weyl_transform`] belong to a bare operator).
    pub fn group_element(&self) -> Option<Sl2Elem> {
        self.g
    }

    #[inline]
    pub fn value(&self, tau: u64, u: u64) -> Complex64 {
        let p = self.p.get();
        self.values[((tau % p) * p + (u % p)) as usize]
    }

    pub fn value_elem(&self, v: (FpElem, FpElem)) -> Complex64 {
        self.value(v.0.value(), v.1.value())
    }

    pub fn max_abs_diff(&self, other: &WeilKernel) -> f64 {
        assert_eq!(self.p, other.p);
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Evaluates the generic-element kernel formula.
pub fn weil_kernel(g: &Sl2Elem) -> Result<WeilKernel> {
    let p = g.prime();
    let kappa = cayley(g)?;
    let dk = kappa.add_identity().det();
    debug_assert!(!dk.is_zero(), "det(kappa + 1) = 4/det(g - 1) cannot vanish");
    let sign = legendre(p.elem_i64(-1)) * legendre(dk);
    let scale = sign as f64 / p.get() as f64;
    let quarter = FpElem::one(p).half().half();
    let psi = PsiTable::new(p);
    let n = p.get();
    let mut values = Vec::with_capacity((n * n) as usize);
    for tau in 0..n {
        for u in 0..n {
            let v = (p.elem(tau), p.elem(u));
            let kv = kappa.apply(v);
            let idx = quarter * symplectic_form(kv, v);
            values.push(psi.psi_elem(idx).scale(scale));
        }
    }
    Ok(WeilKernel { p, g: Some(*g), values })
}

/// Reassembles the operator from its plane kernel:
/// `A = sum_{v in V} K(v) pi(v, 0)`, the central directions having been
/// averaged into the kernel's `1/p`. Entrywise,
/// `A[t, x] = sum_u K(x - t, u) psi((x - t) u / 2 + u t)`.
pub fn operator_from_kernel(kernel: &WeilKernel) -> Operator {
    let p = kernel.p.get();
    let psi = PsiTable::new(kernel.p);
    let half = kernel.p.half();
    Operator::from_fn(p as usize, |t, x| {
        let (t, x) = (t as u64, x as u64);
        let tau = (x + p - t) % p;
        let base = half * tau % p;
        let mut acc = ZERO;
        for u in 0..p {
            // (base + t) u stays below 2^63 for p < 2^31.
            acc += kernel.value(tau, u) * psi.psi((base + t) * u);
        }
        acc
    })
}

/// Inverts [`operator_from_kernel`] through the trace pairing:
/// `K_A(tau, u) = (1/p) sum_t A[t, t + tau] psi(-tau u / 2 - u t)`.
pub fn weyl_transform(a: &Operator, p: Prime) -> WeilKernel {
    let n = p.get();
    assert_eq!(a.dim() as u64, n, "operator dimension must equal p");
    let psi = PsiTable::new(p);
    let half = p.half();
    let inv_p = 1.0 / n as f64;
    let mut values = Vec::with_capacity((n * n) as usize);
    for tau in 0..n {
        let base = half * tau % n;
        for u in 0..n {
            let mut acc = ZERO;
            for t in 0..n {
                let idx = (base + t) * u % n;
                acc += a.at(t as usize, ((t + tau) % n) as usize) * psi.psi(n - idx);
            }
            values.push(acc.scale(inv_p));
        }
    }
    WeilKernel { p, g: None, values }
}

/// The Weil representation as a dense operator. Generic elements go through
/// the kernel formula; the identity is immediate; the remaining non-generic
/// elements factor into two generic pieces, deterministically.
pub fn rho(g: &Sl2Elem) -> Operator {
    if g.trace().value() != 2 {
        return operator_from_kernel(&weil_kernel(g).unwrap());
    }
    if g.is_identity() {
        return Operator::identity(g.prime().as_usize());
    }
    let (left, right) = generic_factor(g);
    let a = operator_from_kernel(&weil_kernel(&left).unwrap());
    let b = operator_from_kernel(&weil_kernel(&right).unwrap());
    a.mul(&b)
}

/// Deterministic factorization `g = (g h^{-1}) h` with both factors generic,
/// taking the first suitable `h` in a fixed enumeration of `SL2`. Because the
/// representation is unique, the resulting product does not depend on which
/// `h` is found (tested directly).
pub fn generic_factor(g: &Sl2Elem) -> (Sl2Elem, Sl2Elem) {
    let p = g.prime();
    for a in 0..p.get() {
        for b in 0..p.get() {
            for free in 0..p.get() {
                let Ok(h) = Sl2Elem::from_top_row(p.elem(a), p.elem(b), p.elem(free)) else {
                    continue;
                };
                let left = *g * h.inv();
                if h.trace().value() != 2 && left.trace().value() != 2 {
                    return (left, h);
                }
            }
        }
    }
    unreachable!("generic factorizations exist for every element when p >= 5")
}

/// Exact trace of `rho(g)` without building the operator, for the elements
/// where a closed form exists: `sigma(-1) sigma(det(kappa(g)+1))` when `g` is
/// generic and `p` at the identity. Non-generic non-identity elements (the
/// unipotent classes, which never occur inside a torus) fall back to the
/// dense build.
pub fn rho_trace(g: &Sl2Elem) -> Complex64 {
    let p = g.prime();
    if g.trace().value() != 2 {
        let kappa = cayley(g).unwrap();
        let s = legendre(p.elem_i64(-1)) * legendre(kappa.add_identity().det());
        Complex64::new(s as f64, 0.0)
    } else if g.is_identity() {
        Complex64::new(p.get() as f64, 0.0)
    } else {
        rho(g).trace()
    }
}

/// The factored form of `rho(g)` for `g = [[a, b], [c, d]]` with `b != 0`:
///
/// `rho(g) = global_phase * M_chirp1 * F * M_chirp2 * S_scale`
///
/// where `(S_a f)(x) = f(a x)`, `M` is pointwise multiplication, and `F` is
/// the unitary DFT. Derived from `g = l(d/b) diag(b, 1/b) w l(a/b)` (lower
/// unipotents `l`, Weyl element `w`) together with the generator images of
/// `rho`; validated entrywise against the dense kernel operator in tests.
#[derive(Debug, Clone)]
pub struct BruhatFactors {
    /// `psi(-(d/b) x^2 / 2)`, applied after the DFT.
    pub chirp1: Vec<Complex64>,
    /// `psi(-(a b) x^2 / 2)`, applied before the DFT.
    pub chirp2: Vec<Complex64>,
    /// The argument scaling `x -> scale * x` applied first.
    pub scale: FpElem,
    /// `sigma(b) / C`, a unit scalar.
    pub global_phase: Complex64,
}

pub fn bruhat_factor(g: &Sl2Elem) -> Result<BruhatFactors> {
    bruhat_factor_with(g, &PsiTable::new(g.prime()))
}

/// Same as [`bruhat_factor`], reusing a phase table across many elements.
pub fn bruhat_factor_with(g: &Sl2Elem, psi: &PsiTable) -> Result<BruhatFactors> {
    let p = g.prime();
    if g.b().is_zero() {
        return Err(Error::MonomialElement);
    }
    let alpha1 = -(g.d() * g.b().inv().unwrap()).half();
    let alpha2 = -(g.a() * g.b()).half();
    let chirp = |alpha: FpElem| -> Vec<Complex64> {
        (0..p.get())
            .map(|x| {
                let x = p.elem(x);
                psi.psi_elem(alpha * x * x)
            })
            .collect()
    };
    let sigma_b = legendre(g.b()) as f64;
    let global_phase = weyl_phase_constant(p).conj().scale(sigma_b);
    Ok(BruhatFactors {
        chirp1: chirp(alpha1),
        chirp2: chirp(alpha2),
        scale: g.b(),
        global_phase,
    })
}

impl BruhatFactors {
    /// Applies the factored operator with the supplied positive-sign
    /// length-`p` Fourier plan; the DFT's `1/sqrt(p)` is included here.
    pub fn apply(&self, f: &CVector, dft: &BluesteinPlan) -> CVector {
        let p = self.scale.prime().get();
        assert_eq!(f.len() as u64, p, "vector length must equal p");
        assert_eq!(dft.len() as u64, p, "plan length must equal p");
        let b = self.scale.value();
        let buf: Vec<Complex64> = (0..p)
            .map(|s| self.chirp2[s as usize] * f.at(((b * s) % p) as usize))
            .collect();
        let spec = dft.apply(&buf);
        let norm = 1.0 / Float::sqrt(p as f64);
        CVector::from_fn(p as usize, |x| {
            self.global_phase * self.chirp1[x] * spec[x].scale(norm)
        })
    }
}

/// Reusable machinery for applying `rho(g)` to vectors in `O(p log p)`.
#[derive(Debug, Clone)]
pub struct RhoApplyPlan {
    p: Prime,
    psi: PsiTable,
    dft: BluesteinPlan,
}

impl RhoApplyPlan {
    pub fn new(p: Prime) -> RhoApplyPlan {
        RhoApplyPlan {
            p,
            psi: PsiTable::new(p),
            dft: BluesteinPlan::new(p.as_usize(), Sign::Positive),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `rho(g) f`. Elements with `b != 0` go through the chirp/Fourier
    /// factorization; lower-triangular elements act monomially as
    /// `sigma(a) psi(-(c/a) x^2 / 2) f(x/a)`.
    pub fn apply(&self, g: &Sl2Elem, f: &CVector) -> CVector {
        let p = self.p.get();
        assert_eq!(g.prime(), self.p, "element and plan moduli differ");
        assert_eq!(f.len() as u64, p, "vector length must equal p");
        if g.b().is_zero() {
            let a_inv = g.a().inv().expect("b = 0 and det = 1 force a != 0");
            let alpha = -(g.c() * a_inv).half();
            let sigma_a = legendre(g.a()) as f64;
            return CVector::from_fn(p as usize, |x| {
                let xe = self.p.elem(x as u64);
                let phase = self.psi.psi_elem(alpha * xe * xe).scale(sigma_a);
                phase * f.at((a_inv.value() * x as u64 % p) as usize)
            });
        }
        let factors = bruhat_factor_with(g, &self.psi).unwrap();
        factors.apply(f, &self.dft)
    }
}

/// One-shot convenience for [`RhoApplyPlan::apply`].
pub fn rho_apply_fast(g: &Sl2Elem, f: &CVector) -> CVector {
    RhoApplyPlan::new(g.prime()).apply(g, f)
}
