//! Fourier summation kernels: a naive quadratic reference, an iterative
//! power-of-two FFT, and a Bluestein (chirp-z) plan that evaluates the sum
//! `out[k] = sum_x f(x) e^{sign 2 pi i k x / n}` for arbitrary length `n`.
//!
//! One algorithm covers every length that appears here — the prime length `p`
//! for the DFT and the composite length `p - 1` for the multiplicative
//! transform — so there is no special-casing by factorization.
//!
//! All chirp phases are indexed by exact residues: `k x` is split as
//! `(k^2 + x^2 - (k - x)^2) / 2`, and the squares are reduced mod `2n` before
//! touching floating point. Two index expressions that agree mod `2n` thus
//! produce bit-identical phase factors.

use alloc::vec::Vec;

use crate::hilbert::{cis, Complex64, ZERO};

/// Sign of the exponent in the Fourier sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

/// Direct `O(n^2)` evaluation of `out[k] = sum_x f(x) e^{sign 2 pi i kx/n}`,
/// unnormalized. The reference implementation everything fast is tested
/// against, and the baseline for benchmark comparisons.
pub fn naive_fourier_sum(input: &[Complex64], sign: Sign) -> Vec<Complex64> {
    let n = input.len();
    let dir = match sign {
        Sign::Positive => 1.0,
        Sign::Negative => -1.0,
    };
    let step = dir * 2.0 * core::f64::consts::PI / n as f64;
    let roots: Vec<Complex64> = (0..n).map(|j| cis(step * j as f64)).collect();
    (0..n)
        .map(|k| (0..n).map(|x| input[x] * roots[(k * x) % n]).sum())
        .collect()
}

/// Iterative radix-2 Cooley-Tukey transform with a precomputed twiddle table.
/// Forward is the `e^{-2 pi i jk/len}` convention; inverse includes `1/len`.
#[derive(Debug, Clone)]
struct Pow2Fft {
    len: usize,
    // roots[j] = e^{-2 pi i j / len} for j < len/2.
    roots: Vec<Complex64>,
}

impl Pow2Fft {
    fn new(len: usize) -> Pow2Fft {
        assert!(len.is_power_of_two(), "length must be a power of two");
        let step = -2.0 * core::f64::consts::PI / len as f64;
        let roots = (0..len / 2).map(|j| cis(step * j as f64)).collect();
        Pow2Fft { len, roots }
    }

    fn run(&self, buf: &mut [Complex64], invert: bool) {
        let n = self.len;
        assert_eq!(buf.len(), n);
        if n == 1 {
            return;
        }
        let mut j = 0usize;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut len = 2usize;
        while len <= n {
            let stride = n / len;
            let half = len / 2;
            for start in (0..n).step_by(len) {
                for k in 0..half {
                    let mut w = self.roots[k * stride];
                    if invert {
                        w = w.conj();
                    }
                    let u = buf[start + k];
                    let v = buf[start + k + half] * w;
                    buf[start + k] = u + v;
                    buf[start + k + half] = u - v;
                }
            }
            len <<= 1;
        }
        if invert {
            let scale = 1.0 / n as f64;
            for z in buf.iter_mut() {
                *z = z.scale(scale);
            }
        }
    }
}

/// Chirp-z evaluation of the length-`n` Fourier sum as one circular
/// convolution of power-of-two length. Build once per `(n, sign)`, apply to
/// many inputs; each application costs `O(n log n)`.
#[derive(Debug, Clone)]
pub struct BluesteinPlan {
    n: usize,
    conv_len: usize,
    fft: Pow2Fft,
    // chirp[k] = e^{sign pi i k^2 / n}, indexed by k^2 reduced mod 2n.
    chirp: Vec<Complex64>,
    // Forward FFT of the symmetric counter-chirp kernel.
    kernel_fft: Vec<Complex64>,
}

impl BluesteinPlan {
    pub fn new(n: usize, sign: Sign) -> BluesteinPlan {
        assert!(n >= 1);
        let two_n = 2 * n as u64;
        // Unit table of order 2n: unit[j] = e^{pi i j / n}.
        let step = core::f64::consts::PI / n as f64;
        let unit: Vec<Complex64> = (0..two_n).map(|j| cis(step * j as f64)).collect();
        let sq = |k: u64| (k * k) % two_n;
        let signed = |j: u64, s: Sign| match s {
            Sign::Positive => j,
            Sign::Negative => (two_n - j) % two_n,
        };
        let opposite = match sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        };

        let chirp: Vec<Complex64> =
            (0..n as u64).map(|k| unit[signed(sq(k), sign) as usize]).collect();

        let conv_len = (2 * n - 1).next_power_of_two();
        let fft = Pow2Fft::new(conv_len);
        let mut kernel = alloc::vec![ZERO; conv_len];
        for m in 0..n as u64 {
            let value = unit[signed(sq(m), opposite) as usize];
            kernel[m as usize] = value;
            if m > 0 {
                kernel[conv_len - m as usize] = value;
            }
        }
        fft.run(&mut kernel, false);
        BluesteinPlan { n, conv_len, fft, chirp, kernel_fft: kernel }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Evaluates `out[k] = sum_x input[x] e^{sign 2 pi i kx/n}`, unnormalized.
    pub fn apply(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.n, "input length must match the plan");
        let mut buf = alloc::vec![ZERO; self.conv_len];
        for (k, (x, c)) in input.iter().zip(&self.chirp).enumerate() {
            buf[k] = x * c;
        }
        self.fft.run(&mut buf, false);
        for (b, k) in buf.iter_mut().zip(&self.kernel_fft) {
            *b *= k;
        }
        self.fft.run(&mut buf, true);
        (0..self.n).map(|k| buf[k] * self.chirp[k]).collect()
    }
}
