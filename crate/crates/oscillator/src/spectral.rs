//! Spectral decomposition of `C(F_p)` under a maximal torus, and the
//! canonical DFT eigenbasis it induces.
//!
//! Under `rho` restricted to a torus `T`, the space splits as a direct sum of
//! character spaces `H_chi`. The dimension law: every `H_chi` is a line,
//! except at the quadratic character, which carries a plane for split `T` and
//! vanishes for non-split `T`. Character vectors picked deterministically
//! from each line assemble, for `T` the centralizer of the Weyl element, into
//! an orthonormal eigenbasis of the DFT, since `F = C rho(w)`.
//!
//! Everything here is cross-checked against a brute-force oracle
//! ([`oracle_diagonalize`]) that knows nothing about the representation: it
//! diagonalizes the explicit DFT matrix through its polynomial spectral
//! projectors `(1/4) sum_k conj(lambda)^k F^k`.

use alloc::vec::Vec;

use crate::arith::Prime;
use crate::error::{Error, Result};
use crate::fft::{BluesteinPlan, Sign};
use crate::group::{dft_matrix, Sl2Elem};
use crate::hilbert::{CVector, Complex64, Operator, ZERO};
use crate::tori::{characters, weyl_centralizer, SplitType, Torus, TorusChar};
use crate::weil::{rho, rho_trace, RhoApplyPlan};

/// Projections with norm below this are treated as zero when hunting for a
/// seed vector whose projection spans a character line.
const SEED_NORM_TOL: f64 = 1e-8;

/// Largest prime the brute-force oracle accepts by default; `O(p^3)` dense
/// matrix products put a natural ceiling on it.
pub const DEFAULT_ORACLE_BUDGET: u64 = 199;

/// A fourth root of unity — an eigenvalue of the DFT or of `rho(w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Eigenvalue {
    One,
    MinusOne,
    I,
    MinusI,
}

impl Eigenvalue {
    pub const ALL: [Eigenvalue; 4] = [
        Eigenvalue::One,
        Eigenvalue::MinusOne,
        Eigenvalue::I,
        Eigenvalue::MinusI,
    ];

    pub fn value(self) -> Complex64 {
        match self {
            Eigenvalue::One => Complex64 { re: 1.0, im: 0.0 },
            Eigenvalue::MinusOne => Complex64 { re: -1.0, im: 0.0 },
            Eigenvalue::I => Complex64 { re: 0.0, im: 1.0 },
            Eigenvalue::MinusI => Complex64 { re: 0.0, im: -1.0 },
        }
    }

    /// `i^q` as an eigenvalue.
    pub fn from_quarter_turn(q: u64) -> Eigenvalue {
        match q % 4 {
            0 => Eigenvalue::One,
            1 => Eigenvalue::I,
            2 => Eigenvalue::MinusOne,
            _ => Eigenvalue::MinusI,
        }
    }

    pub fn quarter_turn(self) -> u64 {
        match self {
            Eigenvalue::One => 0,
            Eigenvalue::I => 1,
            Eigenvalue::MinusOne => 2,
            Eigenvalue::MinusI => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Eigenvalue::One => "1",
            Eigenvalue::MinusOne => "-1",
            Eigenvalue::I => "i",
            Eigenvalue::MinusI => "-i",
        }
    }

    pub fn from_label(s: &str) -> Option<Eigenvalue> {
        match s {
            "1" => Some(Eigenvalue::One),
            "-1" => Some(Eigenvalue::MinusOne),
            "i" => Some(Eigenvalue::I),
            "-i" => Some(Eigenvalue::MinusI),
            _ => None,
        }
    }
}

impl core::fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Eigenvalue multiplicities, one count per fourth root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Multiplicities {
    pub one: u64,
    pub minus_one: u64,
    pub i: u64,
    pub minus_i: u64,
}

impl Multiplicities {
    pub fn get(&self, lambda: Eigenvalue) -> u64 {
        match lambda {
            Eigenvalue::One => self.one,
            Eigenvalue::MinusOne => self.minus_one,
            Eigenvalue::I => self.i,
            Eigenvalue::MinusI => self.minus_i,
        }
    }

    fn by_quarter_turn(&self, q: u64) -> u64 {
        self.get(Eigenvalue::from_quarter_turn(q))
    }

    pub fn total(&self) -> u64 {
        self.one + self.minus_one + self.i + self.minus_i
    }
}

impl core::fmt::Display for Multiplicities {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}, {}, {}, {})", self.one, self.minus_one, self.i, self.minus_i)
    }
}

/// The dimension of `H_chi` dictated by the split type: lines everywhere,
/// with the quadratic character carrying 2 (split) or 0 (non-split).
pub fn char_dimension_law(split: SplitType, chi: &TorusChar) -> usize {
    match (split, chi.is_quadratic()) {
        (SplitType::Split, true) => 2,
        (SplitType::NonSplit, true) => 0,
        _ => 1,
    }
}

/// `dim H_chi` for every character, from projector traces evaluated with the
/// closed-form operator traces (`tr rho(g) = +-1` off the identity, `p` at
/// it). The traces are provably integers; drift beyond 1e-6 is reported
/// rather than rounded away.
pub fn char_dimensions(t: &Torus) -> Result<Vec<usize>> {
    let n = t.order();
    let traces: Vec<Complex64> = (0..n).map(|m| rho_trace(&t.power(m))).collect();
    characters(t)
        .iter()
        .map(|chi| {
            let mut acc = ZERO;
            for (m, tr) in traces.iter().enumerate() {
                acc += chi.eval_at_exponent(m as u64).conj() * tr;
            }
            round_dimension(acc.scale(1.0 / n as f64))
        })
        .collect()
}

/// `dim H_chi` for a single character, same route as [`char_dimensions`].
pub fn char_dimension(t: &Torus, chi: &TorusChar) -> Result<usize> {
    assert_eq!(chi.order(), t.order(), "character belongs to a different torus");
    let n = t.order();
    let mut acc = ZERO;
    for m in 0..n {
        acc += chi.eval_at_exponent(m).conj() * rho_trace(&t.power(m));
    }
    round_dimension(acc.scale(1.0 / n as f64))
}

fn round_dimension(trace: Complex64) -> Result<usize> {
    let nearest = float_round(trace.re);
    if float_abs(trace.re - nearest) > 1e-6
        || float_abs(trace.im) > 1e-6
        || !(0.0..=2.0).contains(&nearest)
    {
        return Err(Error::NumericalFailure("projector trace drifted from {0, 1, 2}"));
    }
    Ok(nearest as usize)
}

// f64's inherent rounding methods live in std; these stay available without it.
fn float_round(x: f64) -> f64 {
    num_traits::Float::round(x)
}

fn float_abs(x: f64) -> f64 {
    num_traits::Float::abs(x)
}

/// The characters with nonzero character space: everything, minus the
/// quadratic character when the torus is non-split.
pub fn spectral_support(t: &Torus) -> Vec<TorusChar> {
    let dims = char_dimensions(t).expect("projector traces are exact integers");
    characters(t)
        .into_iter()
        .zip(dims)
        .filter(|(_, d)| *d > 0)
        .map(|(chi, _)| chi)
        .collect()
}

/// The orthogonal projector onto `H_chi`:
/// `P_chi = (1/|T|) sum_g conj(chi(g)) rho(g)`, built densely.
pub fn projector(t: &Torus, chi: &TorusChar) -> Operator {
    assert_eq!(chi.order(), t.order(), "character belongs to a different torus");
    let n = t.order();
    let p = t.prime().as_usize();
    let mut acc = Operator::zeros(p);
    for m in 0..n {
        let coeff = chi.eval_at_exponent(m).conj().scale(1.0 / n as f64);
        acc.scaled_add(coeff, &rho(&t.power(m)));
    }
    acc
}

/// Traces of all `|T|` projectors with every `rho(g)` built densely — the
/// heavyweight counterpart of [`char_dimensions`], sharing none of its
/// closed-form shortcuts.
pub fn projector_traces_dense(t: &Torus) -> Vec<(TorusChar, f64)> {
    let n = t.order();
    let traces: Vec<Complex64> = (0..n).map(|m| rho(&t.power(m)).trace()).collect();
    characters(t)
        .iter()
        .map(|chi| {
            let mut acc = ZERO;
            for (m, tr) in traces.iter().enumerate() {
                acc += chi.eval_at_exponent(m as u64).conj() * tr;
            }
            (*chi, acc.re / n as f64)
        })
        .collect()
}

/// The deterministic seed chain delta_1, delta_0, delta_2, delta_3, ...
fn seed_delta(p: usize, rank: usize) -> CVector {
    let t = match rank {
        0 => 1,
        1 => 0,
        r => r,
    };
    CVector::delta(p, t)
}

/// The unit vector spanning a one-dimensional `H_chi`, phase-normalized.
/// Projections of the seed chain are taken until one is numerically nonzero.
pub fn character_vector(t: &Torus, chi: &TorusChar) -> Result<CVector> {
    match char_dimension(t, chi)? {
        0 => return Err(Error::EmptyCharacterSpace),
        1 => {}
        _ => return Err(Error::NotOneDimensional),
    }
    let p = t.prime().as_usize();
    let proj = projector(t, chi);
    for rank in 0..p {
        let v = proj.matvec(&seed_delta(p, rank));
        if v.norm() >= SEED_NORM_TOL {
            return v.normalized()?.phase_normalized();
        }
    }
    Err(Error::NumericalFailure("projector annihilated the entire seed chain"))
}

/// A character space with an explicit orthonormal basis.
#[derive(Debug, Clone)]
pub struct CharSpace {
    pub character: TorusChar,
    pub dimension: usize,
    pub basis: Vec<CVector>,
}

/// `H_chi` with its basis built from the seed chain: project, orthogonalize
/// against what's already chosen, keep when numerically nonzero.
pub fn character_space(t: &Torus, chi: &TorusChar) -> Result<CharSpace> {
    let dimension = char_dimension(t, chi)?;
    let p = t.prime().as_usize();
    let proj = projector(t, chi);
    let mut basis: Vec<CVector> = Vec::with_capacity(dimension);
    let mut rank = 0;
    while basis.len() < dimension && rank < p {
        let v = proj.matvec(&seed_delta(p, rank)).orthogonalized(&basis);
        rank += 1;
        if v.norm() >= SEED_NORM_TOL {
            basis.push(v.normalized()?.phase_normalized()?);
        }
    }
    if basis.len() < dimension {
        return Err(Error::NumericalFailure("seed chain exhausted before the space was spanned"));
    }
    Ok(CharSpace { character: chi.clone(), dimension, basis })
}

/// One labelled vector of an [`EigenBasis`]: the character it belongs to,
/// its slot inside that character space (nonzero only on the split quadratic
/// plane), and its DFT eigenvalue.
#[derive(Debug, Clone)]
pub struct EigenEntry {
    pub character: TorusChar,
    pub slot: usize,
    pub eigenvalue: Eigenvalue,
    pub vector: CVector,
}

/// The canonical DFT eigenbasis: `p` orthonormal vectors indexed by the
/// characters of the Weyl-centralizer torus, each an eigenvector of the DFT
/// with eigenvalue `C chi(w)`.
#[derive(Debug, Clone)]
pub struct EigenBasis {
    p: Prime,
    entries: Vec<EigenEntry>,
}

impl EigenBasis {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[EigenEntry] {
        &self.entries
    }

    pub fn find(&self, chi_index: u64, slot: usize) -> Option<&EigenEntry> {
        self.entries
            .iter()
            .find(|e| e.character.index() == chi_index && e.slot == slot)
    }

    /// The sum of all basis vectors; the canonical test vector for
    /// integral-form transforms.
    pub fn test_vector(&self) -> CVector {
        let mut phi = CVector::zeros(self.p.as_usize());
        for e in &self.entries {
            phi.scaled_add(Complex64 { re: 1.0, im: 0.0 }, &e.vector);
        }
        phi
    }

    /// Counts of the eigenvalue labels across the basis.
    pub fn multiplicities(&self) -> Multiplicities {
        let mut m = Multiplicities { one: 0, minus_one: 0, i: 0, minus_i: 0 };
        for e in &self.entries {
            match e.eigenvalue {
                Eigenvalue::One => m.one += 1,
                Eigenvalue::MinusOne => m.minus_one += 1,
                Eigenvalue::I => m.i += 1,
                Eigenvalue::MinusI => m.minus_i += 1,
            }
        }
        m
    }
}

/// All `|T|` character projections of `seed` at once: the orbit
/// `rho(generator^m) seed` is computed by the factored fast path, and a
/// length-`|T|` Fourier sum across the orbit at each coordinate assembles
/// every `P_chi seed` simultaneously. `O(|T| p log p)` total.
pub fn character_projections(t: &Torus, seed: &CVector) -> Vec<CVector> {
    let n = t.order() as usize;
    let p = t.prime().as_usize();
    assert_eq!(seed.len(), p, "seed length must equal p");
    let plan = RhoApplyPlan::new(t.prime());
    let orbit: Vec<CVector> = (0..n).map(|m| plan.apply(&t.power(m as u64), seed)).collect();
    let fourier = BluesteinPlan::new(n, Sign::Negative);
    let inv_n = 1.0 / n as f64;
    let mut out = alloc::vec![CVector::zeros(p); n];
    let mut buf = alloc::vec![ZERO; n];
    for x in 0..p {
        for (m, v) in orbit.iter().enumerate() {
            buf[m] = v.at(x);
        }
        let spec = fourier.apply(&buf);
        for (k, value) in spec.into_iter().enumerate() {
            out[k].set(x, value.scale(inv_n));
        }
    }
    out
}

/// `chi(w)` in exact quarter turns: `w` has order 4, so its exponent `m_w`
/// satisfies `4 m_w = 0 (mod |T|)` and `chi(w) = i^(k j)` with
/// `j = 4 m_w / |T|`.
fn char_weyl_quarter_turn(t: &Torus, chi: &TorusChar) -> u64 {
    let mw = t
        .element_exponent(&Sl2Elem::weyl(t.prime()))
        .expect("the torus contains the Weyl element");
    debug_assert_eq!(4 * mw % t.order(), 0);
    let j = 4 * mw / t.order();
    chi.index() * j % 4
}

/// The canonical eigenbasis for the standard Weyl-centralizer torus.
pub fn dft_eigenbasis(p: Prime) -> EigenBasis {
    eigenbasis_for(&weyl_centralizer(p)).expect("the centralizer torus always yields a basis")
}

/// The eigenbasis construction for any torus containing the Weyl element
/// (in practice: [`weyl_centralizer`] or a re-generated copy of it).
///
/// Vectors are projections of the deterministic seed chain, one line per
/// character; on the split quadratic plane two seeds are orthonormalized in
/// chain order. Each vector is unit and phase-normalized; its eigenvalue
/// label is `C chi(w)`, computed in exact integer arithmetic.
pub fn eigenbasis_for(t: &Torus) -> Result<EigenBasis> {
    let p = t.prime();
    assert!(
        t.contains(&Sl2Elem::weyl(p)),
        "eigenvalue labels need the Weyl element inside the torus"
    );
    let n = t.order();
    let dim = p.as_usize();
    let c_turn = (p.get() - 1) / 2;

    let mut projections: Vec<Option<Vec<CVector>>> = alloc::vec![None; dim];
    let mut project = |rank: usize, k: u64, t: &Torus| -> CVector {
        if projections[rank].is_none() {
            projections[rank] = Some(character_projections(t, &seed_delta(dim, rank)));
        }
        projections[rank].as_ref().unwrap()[k as usize].clone()
    };

    let mut entries = Vec::with_capacity(dim);
    for k in 0..n {
        let chi = TorusChar::new(k, n);
        let space_dim = char_dimension_law(t.split_type(), &chi);
        if space_dim == 0 {
            continue;
        }
        let eigenvalue =
            Eigenvalue::from_quarter_turn(c_turn + char_weyl_quarter_turn(t, &chi));
        let mut rank = 0;
        let mut taken: Vec<CVector> = Vec::with_capacity(space_dim);
        while taken.len() < space_dim {
            if rank >= dim {
                return Err(Error::NumericalFailure("seed chain exhausted building the basis"));
            }
            let v = project(rank, k, t).orthogonalized(&taken);
            rank += 1;
            if v.norm() >= SEED_NORM_TOL {
                taken.push(v.normalized()?.phase_normalized()?);
            }
        }
        for (slot, vector) in taken.into_iter().enumerate() {
            entries.push(EigenEntry { character: chi, slot, eigenvalue, vector });
        }
    }
    if entries.len() != dim {
        return Err(Error::NumericalFailure("eigenbasis does not have p vectors"));
    }
    Ok(EigenBasis { p, entries })
}

/// Multiplicities of `rho(w)` by character counting: each character of the
/// centralizer torus contributes its space's dimension to the eigenvalue
/// `chi(w)`.
pub fn multiplicities_rho_w(p: Prime) -> Multiplicities {
    let t = weyl_centralizer(p);
    let mut counts = [0u64; 4];
    for chi in characters(&t) {
        let d = char_dimension_law(t.split_type(), &chi) as u64;
        counts[char_weyl_quarter_turn(&t, &chi) as usize] += d;
    }
    Multiplicities {
        one: counts[0],
        i: counts[1],
        minus_one: counts[2],
        minus_i: counts[3],
    }
}

/// The closed-form table for `rho(w)` multiplicities `(m_1, m_-1, m_i, m_-i)`
/// by residue of `p` mod 8.
///
/// Derivation, with `sigma` the quadratic character of the centralizer
/// torus: every value of `chi(w)` among the `|T|` characters is taken
/// equally often; the quadratic line is a plane when split (adding 1 to the
/// count at `sigma(w)`) and empty when non-split (removing 1 at `sigma(w)`),
/// and `sigma(w) = +1` exactly when `p = +-1 (mod 8)`. Cross-checked per
/// prime against the counting route and the brute-force oracle.
pub fn multiplicities_rho_w_closed_form(p: Prime) -> Multiplicities {
    let k = p.get() / 8;
    let (one, minus_one, i, minus_i) = match p.get() % 8 {
        1 => (2 * k + 1, 2 * k, 2 * k, 2 * k),
        3 => (2 * k + 1, 2 * k, 2 * k + 1, 2 * k + 1),
        5 => (2 * k + 1, 2 * k + 2, 2 * k + 1, 2 * k + 1),
        7 => (2 * k + 1, 2 * k + 2, 2 * k + 2, 2 * k + 2),
        _ => unreachable!("odd prime"),
    };
    Multiplicities { one, minus_one, i, minus_i }
}

/// DFT multiplicities from the `rho(w)` count through `F = C rho(w)`:
/// an `F`-eigenvector for `mu` is a `rho(w)`-eigenvector for `C^{-1} mu`,
/// so `n_mu = m_(C^{-1} mu)`.
pub fn multiplicities_dft(p: Prime) -> Multiplicities {
    let m = multiplicities_rho_w(p);
    let c_turn = (p.get() - 1) / 2 % 4;
    let inv_turn = (4 - c_turn) % 4;
    let mut counts = [0u64; 4];
    for (q, slot) in counts.iter_mut().enumerate() {
        *slot = m.by_quarter_turn(q as u64 + inv_turn);
    }
    Multiplicities {
        one: counts[0],
        i: counts[1],
        minus_one: counts[2],
        minus_i: counts[3],
    }
}

/// The closed-form DFT table `(n_1, n_-1, n_i, n_-i)` by residue mod 4.
pub fn multiplicities_dft_closed_form(p: Prime) -> Multiplicities {
    let l = p.get() / 4;
    let (one, minus_one, i, minus_i) = match p.get() % 4 {
        1 => (l + 1, l, l, l),
        3 => (l + 1, l + 1, l + 1, l),
        _ => unreachable!("odd prime"),
    };
    Multiplicities { one, minus_one, i, minus_i }
}

/// Brute-force spectral data for the DFT matrix, independent of all the
/// representation machinery: multiplicities, spectral projectors, and an
/// explicit eigenvector family, from nothing but `F` and its powers.
#[derive(Debug, Clone)]
pub struct DftOracle {
    p: Prime,
    multiplicities: Multiplicities,
    projectors: [Operator; 4],
    eigenvectors: Vec<(Eigenvalue, CVector)>,
}

impl DftOracle {
    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn multiplicities(&self) -> Multiplicities {
        self.multiplicities
    }

    pub fn projector(&self, lambda: Eigenvalue) -> &Operator {
        &self.projectors[lambda.quarter_turn() as usize]
    }

    pub fn eigenvectors(&self) -> &[(Eigenvalue, CVector)] {
        &self.eigenvectors
    }

    /// `||P_lambda v - v||_2` — zero exactly when `v` lies in the
    /// `lambda`-eigenspace.
    pub fn eigenspace_residual(&self, lambda: Eigenvalue, v: &CVector) -> f64 {
        self.projector(lambda).matvec(v).sub(v).norm()
    }
}

/// [`oracle_diagonalize_with_budget`] at the default budget.
pub fn oracle_diagonalize(p: Prime) -> Result<DftOracle> {
    oracle_diagonalize_with_budget(p, DEFAULT_ORACLE_BUDGET)
}

/// Diagonalizes the explicit DFT matrix by brute force. `F` has order 4, so
/// `P_lambda = (1/4) sum_k conj(lambda)^k F^k` are its spectral projectors;
/// multiplicities are their traces (checked to be integers within 1e-6), and
/// eigenvectors come from orthonormalizing projector columns. Every vector
/// is verified: `||F v - lambda v|| <= 1e-8`.
pub fn oracle_diagonalize_with_budget(p: Prime, budget: u64) -> Result<DftOracle> {
    if p.get() > budget {
        return Err(Error::OracleBudgetExceeded { p: p.get(), budget });
    }
    let n = p.as_usize();
    let f1 = dft_matrix(p);
    let f2 = f1.mul(&f1);
    let f3 = f2.mul(&f1);
    let f4 = f2.mul(&f2);
    if f4.deviation_from_identity() > 1e-10 {
        return Err(Error::NumericalFailure("F^4 drifted from the identity"));
    }
    let powers = [Operator::identity(n), f1.clone(), f2, f3];

    // Both arrays are indexed by quarter turn: [1, i, -1, -i].
    let mut projectors: Vec<Option<Operator>> = alloc::vec![None; 4];
    let mut mults = [0u64; 4];
    for lambda in Eigenvalue::ALL {
        let lam = lambda.value();
        let mut acc = Operator::zeros(n);
        let mut coeff = Complex64 { re: 0.25, im: 0.0 };
        for f_pow in &powers {
            acc.scaled_add(coeff, f_pow);
            coeff *= lam.conj();
        }
        let tr = acc.trace();
        let nearest = float_round(tr.re);
        if float_abs(tr.re - nearest) > 1e-6 || float_abs(tr.im) > 1e-6 || nearest < 0.0 {
            return Err(Error::NumericalFailure("projector trace drifted from an integer"));
        }
        mults[lambda.quarter_turn() as usize] = nearest as u64;
        projectors[lambda.quarter_turn() as usize] = Some(acc);
    }
    let multiplicities = Multiplicities {
        one: mults[0],
        i: mults[1],
        minus_one: mults[2],
        minus_i: mults[3],
    };
    if multiplicities.total() != p.get() {
        return Err(Error::NumericalFailure("multiplicities do not sum to p"));
    }

    let mut eigenvectors = Vec::with_capacity(n);
    for lambda in Eigenvalue::ALL {
        let proj = projectors[lambda.quarter_turn() as usize]
            .as_ref()
            .expect("all four projectors were built");
        let want = multiplicities.get(lambda) as usize;
        // Pivoted Gram-Schmidt over the projector columns: always take the
        // column with the largest remaining residual. Scanning columns in
        // index order instead is numerically hopeless here — the residual
        // norms collapse geometrically long before the space is spanned.
        let mut candidates: Vec<CVector> = (0..n).map(|c| proj.column(c)).collect();
        let mut taken: Vec<CVector> = Vec::with_capacity(want);
        while taken.len() < want {
            let (best, best_norm) = candidates
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.norm()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("candidate pool is never empty");
            if best_norm < 1e-6 {
                return Err(Error::NumericalFailure(
                    "projector columns did not span the eigenspace",
                ));
            }
            let v = candidates.swap_remove(best).orthogonalized(&taken).normalized()?;
            for cand in &mut candidates {
                let overlap = cand.inner(&v);
                cand.scaled_add(-overlap, &v);
            }
            taken.push(v);
        }
        for v in taken {
            let residual = f1.matvec(&v).sub(&v.scale(lambda.value())).norm();
            if residual > 1e-8 {
                return Err(Error::NumericalFailure("oracle eigenvector failed its residual check"));
            }
            eigenvectors.push((lambda, v));
        }
    }

    let projectors: [Operator; 4] = match projectors
        .into_iter()
        .map(|p| p.expect("all four projectors were built"))
        .collect::<Vec<_>>()
        .try_into()
    {
        Ok(arr) => arr,
        Err(_) => unreachable!("exactly four eigenvalues"),
    };
    Ok(DftOracle { p, multiplicities, projectors, eigenvectors })
}
