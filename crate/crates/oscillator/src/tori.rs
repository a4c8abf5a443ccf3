//! Maximal tori of `SL2(F_p)` and their character groups.
//!
//! Three families are constructed concretely: the diagonal torus, the
//! norm-one torus of the quadratic extension (always non-split), and the
//! centralizer of the Weyl element — the torus behind the DFT eigenbasis,
//! split exactly when `p = 1 (mod 4)`.
//!
//! Every torus here is cyclic of order `p - 1` (split) or `p + 1`
//! (non-split). Characters are indexed against the stored generator, so the
//! generator search is deterministic: elements are enumerated in a fixed
//! order and the first with full order wins.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arith::{
    has_full_order, primitive_root, quadratic_nonresidue, sqrt_minus_one, FpElem, Prime,
};
use crate::error::{Error, Result};
use crate::hilbert::{cis, Complex64};
use crate::group::Sl2Elem;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitType {
    Split,
    NonSplit,
}

/// Which family a torus came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorusKind {
    /// `{diag(a, 1/a)}`.
    Diagonal,
    /// Norm-one elements of `F_{p^2}`, realized as `[[a, b D], [b, a]]`.
    NormOne,
    /// The centralizer of the Weyl element: `[[a, b], [-b, a]]`, `a^2 + b^2 = 1`.
    WeylCentralizer,
}

/// A maximal torus: a cyclic commutative subgroup of order `p -/+ 1`,
/// with a fixed element enumeration, a fixed generator, and a discrete-log
/// table over its elements. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Torus {
    p: Prime,
    kind: TorusKind,
    split_type: SplitType,
    elements: Vec<Sl2Elem>,
    generator: Sl2Elem,
    order: u64,
    powers: Vec<Sl2Elem>,
    exponent_of: BTreeMap<[u64; 4], u64>,
}

impl Torus {
    fn build(p: Prime, kind: TorusKind, elements: Vec<Sl2Elem>) -> Torus {
        let order = elements.len() as u64;
        debug_assert!(order == p.get() - 1 || order == p.get() + 1);
        let split_type = if order == p.get() - 1 { SplitType::Split } else { SplitType::NonSplit };
        let generator = *elements
            .iter()
            .find(|g| has_full_order(|e| g.pow(e), order, Sl2Elem::is_identity))
            .expect("a cyclic group contains a generator");
        let (powers, exponent_of) = walk_powers(generator, order);
        Torus { p, kind, split_type, elements, generator, order, powers, exponent_of }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn kind(&self) -> TorusKind {
        self.kind
    }

    pub fn split_type(&self) -> SplitType {
        self.split_type
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> Sl2Elem {
        self.generator
    }

    /// The elements in their fixed enumeration order (not power order).
    pub fn elements(&self) -> &[Sl2Elem] {
        &self.elements
    }

    /// `generator^m`, precomputed.
    pub fn power(&self, m: u64) -> Sl2Elem {
        self.powers[(m % self.order) as usize]
    }

    pub fn contains(&self, g: &Sl2Elem) -> bool {
        self.exponent_of.contains_key(&g.key())
    }

    /// The exponent `m` with `generator^m = g`.
    pub fn element_exponent(&self, g: &Sl2Elem) -> Result<u64> {
        self.exponent_of.get(&g.key()).copied().ok_or(Error::NotInTorus)
    }

    /// The index of the unique quadratic character.
    pub fn quadratic_index(&self) -> u64 {
        self.order / 2
    }

    /// The same torus re-indexed against a different generator. Character
    /// indices are generator-relative, so this changes every index map —
    /// used to check that downstream constructions are canonical in the ways
    /// they claim to be.
    pub fn with_generator(&self, generator: Sl2Elem) -> Result<Torus> {
        if !self.contains(&generator) {
            return Err(Error::NotInTorus);
        }
        if !has_full_order(|e| generator.pow(e), self.order, Sl2Elem::is_identity) {
            return Err(Error::NotAGenerator);
        }
        let (powers, exponent_of) = walk_powers(generator, self.order);
        Ok(Torus {
            p: self.p,
            kind: self.kind,
            split_type: self.split_type,
            elements: self.elements.clone(),
            generator,
            order: self.order,
            powers,
            exponent_of,
        })
    }
}

fn walk_powers(generator: Sl2Elem, order: u64) -> (Vec<Sl2Elem>, BTreeMap<[u64; 4], u64>) {
    let mut powers = Vec::with_capacity(order as usize);
    let mut exponent_of = BTreeMap::new();
    let mut x = Sl2Elem::identity(generator.prime());
    for m in 0..order {
        powers.push(x);
        exponent_of.insert(x.key(), m);
        x = x * generator;
    }
    debug_assert!(x.is_identity());
    (powers, exponent_of)
}

/// The diagonal torus `{diag(a, 1/a) : a != 0}`, split of order `p - 1`.
/// Its generator is `diag(r, 1/r)` with `r` the smallest primitive root.
pub fn diagonal_torus(p: Prime) -> Torus {
    let elements = (1..p.get()).map(|a| Sl2Elem::diagonal(p.elem(a))).collect();
    let t = Torus::build(p, TorusKind::Diagonal, elements);
    debug_assert_eq!(t.generator, Sl2Elem::diagonal(primitive_root(p)));
    t
}

/// The norm-one torus of the quadratic extension `F_p(sqrt(D))`, `D` the
/// smallest non-residue: matrices `[[a, b D], [b, a]]` with `a^2 - D b^2 = 1`.
/// Non-split of order `p + 1`.
pub fn nonsplit_torus(p: Prime) -> Torus {
    let delta = quadratic_nonresidue(p);
    let mut elements = Vec::with_capacity(p.as_usize() + 1);
    for a in 0..p.get() {
        for b in 0..p.get() {
            let (ae, be) = (p.elem(a), p.elem(b));
            if (ae * ae - delta * be * be).value() == 1 {
                elements.push(
                    Sl2Elem::new(ae, be * delta, be, ae).expect("norm-one element has det 1"),
                );
            }
        }
    }
    assert_eq!(elements.len() as u64, p.get() + 1, "norm-one group has p + 1 elements");
    Torus::build(p, TorusKind::NormOne, elements)
}

/// The centralizer of the Weyl element: `{[[a, b], [-b, a]] : a^2 + b^2 = 1}`.
/// Split of order `p - 1` when `p = 1 (mod 4)` (where `-1` is a square),
/// non-split of order `p + 1` otherwise.
pub fn weyl_centralizer(p: Prime) -> Torus {
    let mut elements = Vec::new();
    for a in 0..p.get() {
        for b in 0..p.get() {
            let (ae, be) = (p.elem(a), p.elem(b));
            if (ae * ae + be * be).value() == 1 {
                elements.push(Sl2Elem::new(ae, be, -be, ae).expect("unit circle has det 1"));
            }
        }
    }
    let t = Torus::build(p, TorusKind::WeylCentralizer, elements);
    debug_assert_eq!(
        matches!(t.split_type, SplitType::Split),
        p.get() % 4 == 1,
        "the circle group splits exactly when -1 is a square"
    );
    debug_assert!(t.contains(&Sl2Elem::weyl(p)));
    t
}

/// An element `s` with `s T s^{-1} = A` (the diagonal torus), defined for
/// split tori. The diagonal torus maps by the identity; for the Weyl
/// centralizer `s^{-1}` has columns the eigenvectors `(1, i)` and `c (1, -i)`
/// of `w`, the second scaled by `c = -1/(2i)` so the determinant is 1. The
/// construction is fixed so that everything keyed to it (character indexing,
/// fast-transform output order) is stable across runs.
pub fn conjugator_to_diagonal(t: &Torus) -> Result<Sl2Elem> {
    if t.split_type == SplitType::NonSplit {
        return Err(Error::NonSplitTorus);
    }
    match t.kind {
        TorusKind::Diagonal => Ok(Sl2Elem::identity(t.p)),
        TorusKind::WeylCentralizer => {
            let p = t.p;
            let i = sqrt_minus_one(p)?;
            let c = -(p.elem(2) * i).inv().unwrap();
            // m = [[1, c], [i, -c i]] has det -2ci = 1; s = m^{-1} = adj(m).
            let s = Sl2Elem::new(-(c * i), -c, -i, FpElem::one(p))
                .expect("adjugate of a det-1 matrix");
            debug_assert!({
                let w = Sl2Elem::weyl(p);
                let conj = s * w * s.inv();
                conj.b().is_zero() && conj.c().is_zero() && conj.a() == i
            });
            Ok(s)
        }
        TorusKind::NormOne => unreachable!("the norm-one torus is never split"),
    }
}

/// A character of a torus, evaluated through exponents against the torus
/// generator: `chi_k(generator^m) = e^{2 pi i k m / order}`. Index `order/2`
/// is the quadratic character.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TorusChar {
    index: u64,
    order: u64,
}

impl TorusChar {
    pub fn new(index: u64, order: u64) -> TorusChar {
        TorusChar { index: index % order, order }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }

    pub fn is_quadratic(&self) -> bool {
        self.order % 2 == 0 && self.index == self.order / 2
    }

    /// `chi(generator^m)`; the phase index is reduced exactly before any
    /// floating-point evaluation.
    pub fn eval_at_exponent(&self, m: u64) -> Complex64 {
        let idx = self.index * (m % self.order) % self.order;
        cis(2.0 * core::f64::consts::PI * idx as f64 / self.order as f64)
    }

    pub fn eval(&self, t: &Torus, g: &Sl2Elem) -> Result<Complex64> {
        assert_eq!(self.order, t.order(), "character belongs to a different torus");
        Ok(self.eval_at_exponent(t.element_exponent(g)?))
    }
}

/// All `|T|` characters, in index order.
pub fn characters(t: &Torus) -> Vec<TorusChar> {
    (0..t.order()).map(|k| TorusChar::new(k, t.order())).collect()
}

/// Transports a character along a conjugation. Given `s` with
/// `s (target) s^{-1} = source` and `chi` a character of `source`, returns
/// the character `g -> chi(s g s^{-1})` of `target`. Bijective on character
/// groups; fixes the trivial and quadratic characters.
pub fn adjoint_character_map(
    s: &Sl2Elem,
    chi: &TorusChar,
    source: &Torus,
    target: &Torus,
) -> Result<TorusChar> {
    assert_eq!(chi.order(), source.order(), "character must live on the source torus");
    assert_eq!(source.order(), target.order(), "conjugate tori have equal orders");
    let m0 = conjugated_generator_exponent(s, source, target)?;
    Ok(TorusChar::new(chi.index() * m0 % source.order(), source.order()))
}

/// The exponent `m0` with `s (target.generator) s^{-1} = source.generator^m0`;
/// the index map underlying [`adjoint_character_map`]. Coprime to the order,
/// since conjugation by `s` carries generator to generator.
pub fn conjugated_generator_exponent(
    s: &Sl2Elem,
    source: &Torus,
    target: &Torus,
) -> Result<u64> {
    let conj = *s * target.generator() * s.inv();
    source.element_exponent(&conj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::legendre;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn all_sl2(pr: Prime) -> Vec<Sl2Elem> {
        let mut out = Vec::new();
        for a in 0..pr.get() {
            for b in 0..pr.get() {
                for free in 0..pr.get() {
                    if let Ok(g) = Sl2Elem::from_top_row(pr.elem(a), pr.elem(b), pr.elem(free)) {
                        out.push(g);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn torus_orders() {
        for q in [5u64, 7, 13, 17, 29] {
            let pr = p(q);
            assert_eq!(diagonal_torus(pr).order(), q - 1);
            assert_eq!(nonsplit_torus(pr).order(), q + 1);
            let tw = weyl_centralizer(pr);
            if q % 4 == 1 {
                assert_eq!(tw.order(), q - 1);
                assert_eq!(tw.split_type(), SplitType::Split);
            } else {
                assert_eq!(tw.order(), q + 1);
                assert_eq!(tw.split_type(), SplitType::NonSplit);
            }
        }
    }

    #[test]
    fn tori_are_cyclic_commutative_groups() {
        let pr = p(13);
        for t in [diagonal_torus(pr), nonsplit_torus(pr), weyl_centralizer(pr)] {
            let n = t.order();
            // The generator's powers enumerate the whole torus.
            assert_eq!(t.powers.len() as u64, n);
            for g in t.elements() {
                assert!(t.contains(g));
                let m = t.element_exponent(g).unwrap();
                assert_eq!(t.power(m), *g);
                assert_eq!(g.det().value(), 1);
            }
            assert!(t.generator().pow(n).is_identity());
            // Commutativity.
            for x in t.elements() {
                for y in t.elements() {
                    assert_eq!(*x * *y, *y * *x);
                }
            }
        }
    }

    #[test]
    fn diagonal_generator_is_smallest_primitive_root() {
        for q in [5u64, 7, 13, 17] {
            let pr = p(q);
            let t = diagonal_torus(pr);
            assert_eq!(t.generator(), Sl2Elem::diagonal(primitive_root(pr)));
        }
    }

    #[test]
    fn nonsplit_torus_contains_minus_one() {
        let pr = p(7);
        let t = nonsplit_torus(pr);
        let minus_one =
            Sl2Elem::new(pr.elem_i64(-1), pr.elem(0), pr.elem(0), pr.elem_i64(-1)).unwrap();
        assert!(t.contains(&minus_one));
        // -1 is the unique element of order 2: exponent n/2.
        assert_eq!(t.element_exponent(&minus_one).unwrap(), t.order() / 2);
    }

    #[test]
    fn weyl_element_has_order_four_in_its_centralizer() {
        for q in [5u64, 7, 13] {
            let pr = p(q);
            let t = weyl_centralizer(pr);
            let w = Sl2Elem::weyl(pr);
            assert!(t.contains(&w));
            let m = t.element_exponent(&w).unwrap();
            // w has order 4, so its exponent is order/4 or 3 order/4.
            assert_eq!(m * 4 % t.order(), 0);
            assert!(!w.pow(2).is_identity());
            assert!(w.pow(4).is_identity());
        }
    }

    #[test]
    fn maximality_proxy_exhaustive() {
        for q in [5u64, 13] {
            let pr = p(q);
            let ambient = all_sl2(pr);
            for t in [diagonal_torus(pr), nonsplit_torus(pr), weyl_centralizer(pr)] {
                for g in &ambient {
                    let commutes_with_all =
                        t.elements().iter().all(|x| *g * *x == *x * *g);
                    assert_eq!(
                        commutes_with_all,
                        t.contains(g),
                        "p={q}, kind={:?}, g={g}",
                        t.kind()
                    );
                }
            }
        }
    }

    #[test]
    fn conjugator_diagonalizes_the_weyl_centralizer() {
        // p = 5: s w s^{-1} = diag(i, -i) with i = 2.
        let pr = p(5);
        let t = weyl_centralizer(pr);
        let s = conjugator_to_diagonal(&t).unwrap();
        let conj = s * Sl2Elem::weyl(pr) * s.inv();
        assert_eq!(conj, Sl2Elem::diagonal(pr.elem(2)));

        for q in [5u64, 13, 17, 29] {
            let pr = p(q);
            let t = weyl_centralizer(pr);
            let a = diagonal_torus(pr);
            let s = conjugator_to_diagonal(&t).unwrap();
            for g in t.elements() {
                let conj = s * *g * s.inv();
                assert!(conj.b().is_zero() && conj.c().is_zero(), "p={q}, g={g}");
                assert!(a.contains(&conj));
            }
            // Conjugation is an isomorphism onto the diagonal torus.
            let mut seen = alloc::collections::BTreeSet::new();
            for g in t.elements() {
                assert!(seen.insert((s * *g * s.inv()).key()));
            }
            assert_eq!(seen.len() as u64, t.order());
        }
    }

    #[test]
    fn conjugator_edge_cases() {
        let pr = p(5);
        assert_eq!(
            conjugator_to_diagonal(&diagonal_torus(pr)),
            Ok(Sl2Elem::identity(pr))
        );
        assert_eq!(conjugator_to_diagonal(&nonsplit_torus(pr)), Err(Error::NonSplitTorus));
        let pr7 = p(7);
        assert_eq!(
            conjugator_to_diagonal(&weyl_centralizer(pr7)),
            Err(Error::NonSplitTorus)
        );
    }

    #[test]
    fn characters_form_the_dual_group() {
        let pr = p(13);
        for t in [diagonal_torus(pr), weyl_centralizer(pr)] {
            let chars = characters(&t);
            assert_eq!(chars.len() as u64, t.order());
            assert!(chars[0].is_trivial());
            let sigma = chars[t.quadratic_index() as usize];
            assert!(sigma.is_quadratic());
            // sigma(generator) = -1.
            assert!((sigma.eval_at_exponent(1) - Complex64::new(-1.0, 0.0)).norm() < 1e-14);
            for chi in &chars {
                // Homomorphism through exponents.
                for m1 in [0u64, 1, 5, 7] {
                    for m2 in [2u64, 3, 11] {
                        let lhs = chi.eval_at_exponent(m1) * chi.eval_at_exponent(m2);
                        let rhs = chi.eval_at_exponent(m1 + m2);
                        assert!((lhs - rhs).norm() < 1e-13);
                    }
                }
                // Orthogonality: nontrivial characters sum to zero.
                let total: Complex64 = (0..t.order()).map(|m| chi.eval_at_exponent(m)).sum();
                if chi.is_trivial() {
                    assert!((total.re - t.order() as f64).abs() < 1e-10);
                } else {
                    assert!(total.norm() < 1e-10, "chi index {}", chi.index());
                }
            }
        }
    }

    #[test]
    fn quadratic_character_matches_legendre_on_diagonal_torus() {
        let pr = p(17);
        let t = diagonal_torus(pr);
        let sigma = TorusChar::new(t.quadratic_index(), t.order());
        for a in 1..17u64 {
            let g = Sl2Elem::diagonal(pr.elem(a));
            let val = sigma.eval(&t, &g).unwrap();
            let expect = legendre(pr.elem(a)) as f64;
            assert!((val - Complex64::new(expect, 0.0)).norm() < 1e-12, "a = {a}");
        }
    }

    #[test]
    fn adjoint_map_transports_characters() {
        for q in [5u64, 13, 29] {
            let pr = p(q);
            let t = weyl_centralizer(pr);
            let a = diagonal_torus(pr);
            let s = conjugator_to_diagonal(&t).unwrap();
            let m0 = conjugated_generator_exponent(&s, &a, &t).unwrap();
            // m0 is a unit mod the order: the map is bijective.
            assert_eq!(num_integer_gcd(m0, t.order()), 1);
            for chi in characters(&a) {
                let moved = adjoint_character_map(&s, &chi, &a, &t).unwrap();
                assert!(chi.is_trivial() == moved.is_trivial());
                assert!(chi.is_quadratic() == moved.is_quadratic());
                // Defining property: moved(g) = chi(s g s^{-1}).
                for g in t.elements().iter().step_by(3) {
                    let lhs = moved.eval(&t, g).unwrap();
                    let rhs = chi.eval(&a, &(s * *g * s.inv())).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12, "p={q}, chi={}", chi.index());
                }
            }
            // Round trip back to A is the identity on characters.
            let s_inv = s.inv();
            for chi in characters(&a) {
                let there = adjoint_character_map(&s, &chi, &a, &t).unwrap();
                let back = adjoint_character_map(&s_inv, &there, &t, &a).unwrap();
                assert_eq!(back.index(), chi.index());
            }
        }
    }

    fn num_integer_gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = a % b;
            a = b;
            b = r;
        }
        a
    }

    #[test]
    fn regenerating_with_another_generator_preserves_the_set() {
        let pr = p(13);
        let t = weyl_centralizer(pr);
        // The last full-order element gives a different but valid indexing.
        let alt = *t
            .elements()
            .iter()
            .rev()
            .find(|g| has_full_order(|e| g.pow(e), t.order(), Sl2Elem::is_identity))
            .unwrap();
        let t2 = t.with_generator(alt).unwrap();
        assert_eq!(t2.generator(), alt);
        assert_eq!(t2.order(), t.order());
        for g in t.elements() {
            assert!(t2.contains(g));
        }
        // Errors: non-member and non-generator.
        assert_eq!(
            t.with_generator(Sl2Elem::diagonal(pr.elem(2))).err(),
            Some(Error::NotInTorus)
        );
        assert_eq!(
            t.with_generator(Sl2Elem::identity(pr)).err(),
            Some(Error::NotAGenerator)
        );
    }
}
