//! Weil representation of `SL2(F_p)` in the standard realization on `C(F_p)`,
//! together with the spectral machinery it supports: maximal tori and their
//! characters, canonical eigenbases for the discrete Fourier transform, the
//! discrete oscillator transform (expansion in such an eigenbasis), and an
//! `O(p log p)` fast path for primes `p = 1 (mod 4)`.
//!
//! The crate is `no_std` (with `alloc`); everything file- or terminal-shaped
//! lives in the companion `oscillator-cli` crate.
//!
//! Numerical layer: vectors and operators are dense over `Complex<f64>`.
//! Scalars from the finite field are exact (`u64` arithmetic mod `p`), and all
//! roots of unity are evaluated from exact integer indices, so floating error
//! enters only through trigonometry and accumulation — the tolerances quoted
//! on the verification routines reflect that.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod arith;
pub mod error;
pub mod fft;
pub mod group;
pub mod hilbert;
pub mod spectral;
pub mod tori;
pub mod transform;
pub mod weil;

pub use arith::{DlogTable, Fp2Elem, FpElem, Prime};
pub use error::Error;
pub use group::{HeisElem, Sl2Elem};
pub use hilbert::{CVector, Complex64, Operator};
pub use spectral::{dft_eigenbasis, oracle_diagonalize, EigenBasis, Eigenvalue, Multiplicities};
pub use tori::{Torus, TorusChar};
pub use transform::{DotCoefficients, FotPlan};
pub use weil::rho;
