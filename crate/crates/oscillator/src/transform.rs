//! The oscillator transform: coefficients of a signal against the canonical
//! eigenbasis, computed three ways.
//!
//! * [`dot_direct`] — inner products against an explicitly built basis;
//!   `O(p^2)` once the basis exists.
//! * [`dot_integral`] — group-integral form: pair `f` with the orbit of a
//!   test vector under the torus and extract characters; never builds the
//!   basis.
//! * [`fot`] / [`FotPlan`] — the fast path for `p = 1 (mod 4)`. The torus is
//!   conjugated onto the diagonal, where its action is coordinate
//!   permutation; the transform collapses to one factored Weil-operator
//!   apply, a multiplicative reindexing, and a Mellin transform, all
//!   `O(p log p)` by chirp-z. For `p = 3 (mod 4)` no torus-diagonalizing
//!   conjugation exists over `F_p` and [`FotPlan::new`] reports
//!   [`Error::FastPathUnavailable`].
//!
//! The naive counterparts ([`dft_naive`], [`mellin_naive`],
//! [`FotPlan::naive_reference`]) share every convention with the fast ones
//! but run their Fourier stages as quadratic-time sums; they are the
//! reference points for correctness and benchmark comparisons.

use alloc::vec::Vec;

use num_traits::Float;

use crate::arith::{inv_mod, primitive_root, Prime};
use crate::error::{Error, Result};
use crate::fft::{naive_fourier_sum, BluesteinPlan, Sign};
use crate::group::Sl2Elem;
use crate::hilbert::{CVector, Complex64};
use crate::spectral::EigenBasis;
use crate::tori::{
    characters, conjugated_generator_exponent, conjugator_to_diagonal, diagonal_torus,
    weyl_centralizer, Torus, TorusChar,
};
use crate::weil::{bruhat_factor, BruhatFactors, RhoApplyPlan};

/// The unitary DFT `(1/sqrt(p)) sum_t e^{2 pi i w t / p} f(t)`, evaluated
/// through a chirp-z plan in `O(p log p)`.
pub fn dft(p: Prime, f: &CVector) -> CVector {
    assert_eq!(f.len(), p.as_usize(), "vector length must equal p");
    let plan = BluesteinPlan::new(p.as_usize(), Sign::Positive);
    let norm = 1.0 / Float::sqrt(p.get() as f64);
    let spec = plan.apply(f.as_slice());
    CVector::from_vec(spec.into_iter().map(|z| z.scale(norm)).collect())
}

/// [`dft`] as a quadratic-time reference sum.
pub fn dft_naive(p: Prime, f: &CVector) -> CVector {
    assert_eq!(f.len(), p.as_usize(), "vector length must equal p");
    let norm = 1.0 / Float::sqrt(p.get() as f64);
    let spec = naive_fourier_sum(f.as_slice(), Sign::Positive);
    CVector::from_vec(spec.into_iter().map(|z| z.scale(norm)).collect())
}

/// A signal on the multiplicative group `F_p^x`: `values[x - 1] = f(x)` for
/// `x = 1, ..., p - 1`.
#[derive(Debug, Clone)]
pub struct MultSignal {
    p: Prime,
    values: Vec<Complex64>,
}

impl MultSignal {
    pub fn new(p: Prime, values: Vec<Complex64>) -> MultSignal {
        assert_eq!(values.len() as u64, p.get() - 1, "need p - 1 values");
        MultSignal { p, values }
    }

    /// Restriction of a function on `F_p` to the multiplicative group;
    /// `f(0)` is dropped.
    pub fn from_full(p: Prime, f: &CVector) -> MultSignal {
        assert_eq!(f.len(), p.as_usize(), "vector length must equal p");
        MultSignal { p, values: (1..p.as_usize()).map(|x| f.at(x)).collect() }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    /// `f(x)` for `1 <= x < p`.
    pub fn value(&self, x: u64) -> Complex64 {
        assert!(x >= 1 && x < self.p.get(), "x must lie in the multiplicative group");
        self.values[(x - 1) as usize]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// Reorders a multiplicative signal along powers of the smallest primitive
/// root: output `m` holds `f(r^m)`.
fn dlog_ordered(signal: &MultSignal) -> Vec<Complex64> {
    let p = signal.prime().get();
    let r = primitive_root(signal.prime()).value();
    let mut y = Vec::with_capacity((p - 1) as usize);
    let mut x = 1u64;
    for _ in 0..p - 1 {
        y.push(signal.value(x));
        x = x * r % p;
    }
    y
}

/// The Mellin transform on `F_p^x`:
/// `M[f](chi_k) = (1/(p-1)) sum_x conj(chi_k(x)) f(x)`,
/// with `chi_k(r^m) = e^{2 pi i k m / (p-1)}` indexed against the smallest
/// primitive root `r`. Output index `k` runs over `0..p-1`. `O(p log p)`.
pub fn mellin(signal: &MultSignal) -> Vec<Complex64> {
    let y = dlog_ordered(signal);
    let plan = BluesteinPlan::new(y.len(), Sign::Negative);
    let inv_n = 1.0 / y.len() as f64;
    plan.apply(&y).into_iter().map(|z| z.scale(inv_n)).collect()
}

/// [`mellin`] as a quadratic-time reference sum.
pub fn mellin_naive(signal: &MultSignal) -> Vec<Complex64> {
    let y = dlog_ordered(signal);
    let inv_n = 1.0 / y.len() as f64;
    naive_fourier_sum(&y, Sign::Negative).into_iter().map(|z| z.scale(inv_n)).collect()
}

/// One coefficient of the oscillator transform, labelled by the character
/// and the slot inside its character space.
#[derive(Debug, Clone, Copy)]
pub struct DotEntry {
    pub character: TorusChar,
    pub slot: usize,
    pub value: Complex64,
}

/// The full coefficient list of a signal against an eigenbasis.
#[derive(Debug, Clone)]
pub struct DotCoefficients {
    p: Prime,
    entries: Vec<DotEntry>,
}

impl DotCoefficients {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn entries(&self) -> &[DotEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, chi_index: u64, slot: usize) -> Option<Complex64> {
        self.entries
            .iter()
            .find(|e| e.character.index() == chi_index && e.slot == slot)
            .map(|e| e.value)
    }

    /// Sum of squared coefficient moduli; equals the squared signal norm
    /// when the underlying basis is complete (Parseval).
    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.value.norm_sqr()).sum()
    }
}

/// Coefficients by direct pairing: `a(chi, slot) = <f, phi_(chi, slot)>`.
pub fn dot_direct(basis: &EigenBasis, f: &CVector) -> DotCoefficients {
    assert_eq!(f.len(), basis.prime().as_usize(), "vector length must equal p");
    let entries = basis
        .entries()
        .iter()
        .map(|e| DotEntry { character: e.character, slot: e.slot, value: f.inner(&e.vector) })
        .collect();
    DotCoefficients { p: basis.prime(), entries }
}

/// Inverse of [`dot_direct`]: resynthesizes the signal from its labelled
/// coefficients.
pub fn reconstruct(basis: &EigenBasis, coeffs: &DotCoefficients) -> CVector {
    assert_eq!(basis.prime(), coeffs.prime(), "basis and coefficients disagree on p");
    let mut f = CVector::zeros(basis.prime().as_usize());
    for d in coeffs.entries() {
        let entry = basis
            .find(d.character.index(), d.slot)
            .expect("coefficient label missing from the basis");
        f.scaled_add(d.value, &entry.vector);
    }
    f
}

/// The integral form of the transform: for each character,
/// `Theta[f](chi) = (1/|T|) sum_g conj(chi(g)) <f, rho(g^{-1}) phi>`,
/// which equals `<f, P_chi phi>`. With `phi` the sum of the eigenbasis, the
/// value at `chi` is the coefficient sum over that character's slots. The
/// orbit is computed with factored applies; characters are extracted with
/// one length-`|T|` chirp-z pass.
pub fn dot_integral(t: &Torus, phi: &CVector, f: &CVector) -> Vec<(TorusChar, Complex64)> {
    let p = t.prime().as_usize();
    assert_eq!(phi.len(), p, "test-vector length must equal p");
    assert_eq!(f.len(), p, "vector length must equal p");
    let n = t.order();
    let plan = RhoApplyPlan::new(t.prime());
    let mut h = Vec::with_capacity(n as usize);
    for m in 0..n {
        let u = plan.apply(&t.power((n - m) % n), phi);
        h.push(f.inner(&u));
    }
    let fourier = BluesteinPlan::new(n as usize, Sign::Negative);
    let spec = fourier.apply(&h);
    let inv_n = 1.0 / n as f64;
    characters(t)
        .into_iter()
        .enumerate()
        .map(|(k, chi)| (chi, spec[k].scale(inv_n)))
        .collect()
}

/// [`BruhatFactors::apply`] with the Fourier stage as a quadratic sum; the
/// deliberately slow engine behind [`FotPlan::naive_reference`].
fn apply_bruhat_naive(factors: &BruhatFactors, f: &CVector) -> CVector {
    let p = factors.scale.prime().get();
    let b = factors.scale.value();
    let buf: Vec<Complex64> = (0..p)
        .map(|s| factors.chirp2[s as usize] * f.at(((b * s) % p) as usize))
        .collect();
    let spec = naive_fourier_sum(&buf, Sign::Positive);
    let norm = 1.0 / Float::sqrt(p as f64);
    CVector::from_fn(p as usize, |x| factors.global_phase * factors.chirp1[x] * spec[x].scale(norm))
}

/// Precomputed state for the fast oscillator transform at `p = 1 (mod 4)`.
///
/// The pipeline evaluates `Theta[f](chi) = <f, P_chi phi>` for every
/// character of the Weyl-centralizer torus at once, with
/// `phi = rho(s^{-1}) delta_1` and `s` the canonical conjugation onto the
/// diagonal torus:
///
/// 1. `u = rho(s) f` — one factored apply, `O(p log p)`;
/// 2. `y(j) = (-1)^j u(r^j)` — the diagonal orbit pairing collapses to
///    sampling `u` along powers of the primitive root `r`, `O(p)`;
/// 3. a length-`(p-1)` Fourier pass over `y` — `O(p log p)`;
/// 4. index relabeling: the diagonal character line `k'` feeds the torus
///    character `k = k' m0 (mod p-1)`, where `s` carries the torus generator
///    to the `m0`-th power of the diagonal one.
#[derive(Debug, Clone)]
pub struct FotPlan {
    torus: Torus,
    conjugator: Sl2Elem,
    forward: BruhatFactors,
    backward: BruhatFactors,
    dft_plan: BluesteinPlan,
    mellin_plan: BluesteinPlan,
    root: u64,
    index_inverse: u64,
}

impl FotPlan {
    pub fn new(p: Prime) -> Result<FotPlan> {
        if p.get() % 4 != 1 {
            return Err(Error::FastPathUnavailable(p.get()));
        }
        let torus = weyl_centralizer(p);
        let conjugator = conjugator_to_diagonal(&torus)?;
        let diagonal = diagonal_torus(p);
        let m0 = conjugated_generator_exponent(&conjugator, &diagonal, &torus)?;
        let n = p.get() - 1;
        let index_inverse = inv_mod(m0, n).expect("conjugation carries generator to generator");
        let forward = bruhat_factor(&conjugator)?;
        let backward = bruhat_factor(&conjugator.inv())?;
        Ok(FotPlan {
            torus,
            conjugator,
            forward,
            backward,
            dft_plan: BluesteinPlan::new(p.as_usize(), Sign::Positive),
            mellin_plan: BluesteinPlan::new(n as usize, Sign::Negative),
            root: primitive_root(p).value(),
            index_inverse,
        })
    }

    pub fn prime(&self) -> Prime {
        self.torus.prime()
    }

    pub fn torus(&self) -> &Torus {
        &self.torus
    }

    pub fn conjugator(&self) -> Sl2Elem {
        self.conjugator
    }

    /// The implicit test vector `rho(s^{-1}) delta_1`.
    pub fn test_vector(&self) -> CVector {
        let delta = CVector::delta(self.prime().as_usize(), 1);
        self.backward.apply(&delta, &self.dft_plan)
    }

    /// The fast transform: all `p - 1` character values in `O(p log p)`.
    pub fn apply(&self, f: &CVector) -> Vec<(TorusChar, Complex64)> {
        let u = self.forward.apply(f, &self.dft_plan);
        self.spectrum(&u, false)
    }

    /// The same pipeline with both Fourier stages as quadratic sums:
    /// `O(p^2)` time, `O(p)` memory, identical conventions. The honest
    /// baseline for correctness and speedup measurements.
    pub fn naive_reference(&self, f: &CVector) -> Vec<(TorusChar, Complex64)> {
        let u = apply_bruhat_naive(&self.forward, f);
        self.spectrum(&u, true)
    }

    fn spectrum(&self, u: &CVector, naive: bool) -> Vec<(TorusChar, Complex64)> {
        let p = self.prime().get();
        let n = p - 1;
        let mut y = Vec::with_capacity(n as usize);
        let mut x = 1u64;
        let mut sign = 1.0f64;
        for _ in 0..n {
            y.push(u.at(x as usize).scale(sign));
            x = x * self.root % p;
            sign = -sign;
        }
        let spec = if naive {
            naive_fourier_sum(&y, Sign::Negative)
        } else {
            self.mellin_plan.apply(&y)
        };
        let inv_n = 1.0 / n as f64;
        (0..n)
            .map(|k| {
                let diag_index = (n - k * self.index_inverse % n) % n;
                (TorusChar::new(k, n), spec[diag_index as usize].scale(inv_n))
            })
            .collect()
    }
}

/// One-shot fast oscillator transform; see [`FotPlan`].
pub fn fot(p: Prime, f: &CVector) -> Result<Vec<(TorusChar, Complex64)>> {
    Ok(FotPlan::new(p)?.apply(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::dft_matrix;
    use crate::hilbert::cis;
    use crate::spectral::dft_eigenbasis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> CVector {
        CVector::from_fn(n, |_| Complex64 {
            re: rng.gen_range(-1.0..1.0),
            im: rng.gen_range(-1.0..1.0),
        })
    }

    #[test]
    fn dft_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [5u64, 13, 29] {
            let pr = p(q);
            let f = random_vector(q as usize, &mut rng);
            let fast = dft(pr, &f);
            let naive = dft_naive(pr, &f);
            let dense = dft_matrix(pr).matvec(&f);
            assert!(fast.max_abs_diff(&naive) < 1e-12);
            assert!(fast.max_abs_diff(&dense) < 1e-12);
            assert!((fast.norm() - f.norm()).abs() < 1e-12, "unitary");
        }
    }

    #[test]
    fn mellin_routes_agree_and_characters_are_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let pr = p(13);
        let n = 12u64;
        let signal = MultSignal::new(pr, (0..n).map(|_| random_vector(1, &mut rng).at(0)).collect());
        let fast = mellin(&signal);
        let naive = mellin_naive(&signal);
        assert_eq!(fast.len(), 12);
        for (a, b) in fast.iter().zip(&naive) {
            assert!((a - b).norm() < 1e-12);
        }
        // mellin(chi_t) picks out index t with value 1.
        let r = primitive_root(pr);
        for t in 0..n {
            let mut values = alloc::vec![Complex64 { re: 0.0, im: 0.0 }; n as usize];
            for m in 0..n {
                let x = r.pow(m).value();
                values[(x - 1) as usize] =
                    cis(2.0 * core::f64::consts::PI * (t * m % n) as f64 / n as f64);
            }
            let spec = mellin(&MultSignal::new(pr, values));
            for (k, z) in spec.iter().enumerate() {
                let expect = if k as u64 == t { 1.0 } else { 0.0 };
                assert!((z - Complex64 { re: expect, im: 0.0 }).norm() < 1e-10, "t={t}, k={k}");
            }
        }
    }

    #[test]
    fn direct_coefficients_invert_and_satisfy_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let pr = p(13);
        let basis = dft_eigenbasis(pr);
        let f = random_vector(13, &mut rng);
        let coeffs = dot_direct(&basis, &f);
        assert_eq!(coeffs.len(), 13);
        assert!((coeffs.norm_sq() - f.norm_sq()).abs() < 1e-9, "parseval");
        let back = reconstruct(&basis, &coeffs);
        assert!(back.max_abs_diff(&f) < 1e-10, "reconstruction");
        // Coefficients of a basis vector form a delta.
        let e3 = &basis.entries()[3];
        let c3 = dot_direct(&basis, &e3.vector);
        for d in c3.entries() {
            let expect = if d.character == e3.character && d.slot == e3.slot { 1.0 } else { 0.0 };
            assert!((d.value - Complex64 { re: expect, im: 0.0 }).norm() < 1e-10);
        }
    }

    #[test]
    fn direct_coefficients_are_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let pr = p(17);
        let basis = dft_eigenbasis(pr);
        let f = random_vector(17, &mut rng);
        let g = random_vector(17, &mut rng);
        let alpha = Complex64 { re: 0.6, im: -1.1 };
        let mut combo = f.scale(alpha);
        combo.scaled_add(Complex64 { re: 1.0, im: 0.0 }, &g);
        let ca = dot_direct(&basis, &combo);
        let cf = dot_direct(&basis, &f);
        let cg = dot_direct(&basis, &g);
        for ((a, b), c) in ca.entries().iter().zip(cf.entries()).zip(cg.entries()) {
            assert!((a.value - (alpha * b.value + c.value)).norm() < 1e-10);
        }
    }

    #[test]
    fn integral_form_matches_direct_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for q in [5u64, 13] {
            let pr = p(q);
            let basis = dft_eigenbasis(pr);
            let t = weyl_centralizer(pr);
            let phi = basis.test_vector();
            let f = random_vector(q as usize, &mut rng);
            let direct = dot_direct(&basis, &f);
            for (chi, value) in dot_integral(&t, &phi, &f) {
                let expect = if chi.is_quadratic() {
                    direct.get(chi.index(), 0).unwrap() + direct.get(chi.index(), 1).unwrap()
                } else {
                    direct.get(chi.index(), 0).unwrap()
                };
                assert!((value - expect).norm() < 1e-9, "p={q}, chi={}", chi.index());
            }
        }
    }

    #[test]
    fn fast_transform_matches_integral_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for q in [5u64, 13, 17] {
            let pr = p(q);
            let plan = FotPlan::new(pr).unwrap();
            let phi = plan.test_vector();
            assert!((phi.norm() - 1.0).abs() < 1e-10, "rho(s^-1) is unitary");
            let f = random_vector(q as usize, &mut rng);
            let fast = plan.apply(&f);
            let integral = dot_integral(plan.torus(), &phi, &f);
            assert_eq!(fast.len(), integral.len());
            for ((chi_f, a), (chi_i, b)) in fast.iter().zip(&integral) {
                assert_eq!(chi_f, chi_i);
                assert!((a - b).norm() < 1e-9, "p={q}, chi={}", chi_f.index());
            }
        }
    }

    #[test]
    fn fast_transform_reconciles_with_direct_coefficients() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let pr = p(13);
        let plan = FotPlan::new(pr).unwrap();
        let basis = dft_eigenbasis(pr);
        let phi = plan.test_vector();
        let f = random_vector(13, &mut rng);
        let fast = plan.apply(&f);
        let direct = dot_direct(&basis, &f);
        for (chi, value) in fast {
            let mut predicted = Complex64 { re: 0.0, im: 0.0 };
            for e in basis.entries().iter().filter(|e| e.character == chi) {
                let scale = phi.inner(&e.vector);
                predicted += scale.conj() * direct.get(chi.index(), e.slot).unwrap();
            }
            assert!((value - predicted).norm() < 1e-9, "chi={}", chi.index());
        }
    }

    #[test]
    fn naive_reference_matches_fast_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        for q in [5u64, 29] {
            let pr = p(q);
            let plan = FotPlan::new(pr).unwrap();
            let f = random_vector(q as usize, &mut rng);
            let fast = plan.apply(&f);
            let naive = plan.naive_reference(&f);
            for ((_, a), (_, b)) in fast.iter().zip(&naive) {
                assert!((a - b).norm() < 1e-10, "p={q}");
            }
        }
    }

    #[test]
    fn fast_transform_is_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let pr = p(17);
        let plan = FotPlan::new(pr).unwrap();
        let f = random_vector(17, &mut rng);
        let g = random_vector(17, &mut rng);
        let alpha = Complex64 { re: -0.3, im: 0.8 };
        let mut combo = f.scale(alpha);
        combo.scaled_add(Complex64 { re: 1.0, im: 0.0 }, &g);
        let ca = plan.apply(&combo);
        let cf = plan.apply(&f);
        let cg = plan.apply(&g);
        for (((_, a), (_, b)), (_, c)) in ca.iter().zip(&cf).zip(&cg) {
            assert!((a - (alpha * b + c)).norm() < 1e-10);
        }
    }

    #[test]
    fn fast_path_refuses_p_three_mod_four() {
        let pr = p(7);
        assert!(matches!(FotPlan::new(pr), Err(Error::FastPathUnavailable(7))));
        let f = CVector::delta(7, 1);
        assert!(matches!(fot(pr, &f), Err(Error::FastPathUnavailable(7))));
        assert!(matches!(FotPlan::new(p(11)), Err(Error::FastPathUnavailable(11))));
        assert!(FotPlan::new(p(13)).is_ok());
    }
}
