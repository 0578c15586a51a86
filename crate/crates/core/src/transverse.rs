//! Fiberwise exterior algebra on the model space `R^{2n} ⊕ R^s`.
//!
//! Covector `e^i` (1-based, `i <= 2n`) is bit `i - 1` of a monomial mask and
//! `η_j` (1-based, `j <= s`) is bit `2n + j - 1`. A monomial is the wedge of
//! its covectors in increasing bit order. The symplectic form is
//! `ω = Σ e^{2i-1} ∧ e^{2i}`, the metric is the standard one, and
//! `J e_{2i-1} = e_{2i}`, `J e_{2i} = -e_{2i-1}`.
//!
//! The transverse operators (`L`, `Λ`, `*ₛ`, `*_b`, `J`) act on multivectors
//! whose support avoids the `η` bits; they panic otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{int, kernel_basis, Matrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("frame mismatch: {0:?} vs {1:?}")]
    FrameMismatch(Frame, Frame),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("index {index} out of range for {frame:?}")]
    IndexOutOfRange { index: usize, frame: Frame },
}

/// Shape of the model space: complex transverse dimension `n` and corank `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frame {
    pub n: usize,
    pub s: usize,
}

impl Frame {
    pub fn transverse(n: usize) -> Self {
        Frame { n, s: 0 }
    }

    pub fn new(n: usize, s: usize) -> Self {
        assert!(2 * n + s <= 64, "model space too large for a 64-bit mask");
        Frame { n, s }
    }

    pub fn dim(&self) -> usize {
        2 * self.n + self.s
    }

    pub fn transverse_mask(&self) -> u64 {
        low_bits(2 * self.n)
    }

    pub fn full_mask(&self) -> u64 {
        low_bits(self.dim())
    }

    /// Mask of `η_j`, 1-based.
    pub fn eta_bit(&self, j: usize) -> u64 {
        assert!((1..=self.s).contains(&j));
        1 << (2 * self.n + j - 1)
    }

    /// All transverse monomials of degree `k`, in increasing mask order.
    pub fn transverse_monomials(&self, k: usize) -> Vec<u64> {
        monomials(2 * self.n, k)
    }
}

fn low_bits(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Masks with exactly `k` bits among the lowest `width`, ascending.
pub fn monomials(width: usize, k: usize) -> Vec<u64> {
    (0..=low_bits(width))
        .filter(|m| m.count_ones() as usize == k)
        .collect()
}

/// Sign of `e^a ∧ e^b` relative to the increasing monomial `e^{a|b}`, or
/// `None` when the monomials share a covector.
pub fn wedge_sign(a: u64, b: u64) -> Option<i64> {
    if a & b != 0 {
        return None;
    }
    // Each bit y of b has to move past the bits of a above it.
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        swaps += (a >> y).count_ones();
        rest &= rest - 1;
    }
    Some(if swaps.is_multiple_of(2) { 1 } else { -1 })
}

/// Inversion parity of the concatenation of two disjoint increasing index
/// lists, as a sign.
pub fn shuffle_sign(first: u64, second: u64) -> i64 {
    wedge_sign(first, second).expect("disjoint masks")
}

/// Homogeneous element of the exterior algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    frame: Frame,
    degree: usize,
    terms: BTreeMap<u64, Rational>,
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&mask, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if mask == 0 {
                write!(f, "1")?;
            }
            let names: Vec<String> = (0..64)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| {
                    if b < 2 * self.frame.n {
                        format!("e{}", b + 1)
                    } else {
                        format!("η{}", b - 2 * self.frame.n + 1)
                    }
                })
                .collect();
            write!(f, "{}", names.join("∧"))?;
        }
        Ok(())
    }
}

impl Multivector {
    pub fn zero(frame: Frame, degree: usize) -> Self {
        Multivector {
            frame,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(frame: Frame) -> Self {
        Self::monomial(frame, 0, Rational::one())
    }

    /// `coeff · e^mask`. Panics if `mask` uses bits outside the frame.
    pub fn monomial(frame: Frame, mask: u64, coeff: Rational) -> Self {
        assert_eq!(mask & !frame.full_mask(), 0, "mask outside the frame");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Multivector {
            frame,
            degree: mask.count_ones() as usize,
            terms,
        }
    }

    /// The covector `e^i`, 1-based.
    pub fn e(frame: Frame, i: usize) -> Self {
        assert!((1..=2 * frame.n).contains(&i));
        Self::monomial(frame, 1 << (i - 1), Rational::one())
    }

    /// The covector `η_j`, 1-based.
    pub fn eta(frame: Frame, j: usize) -> Self {
        Self::monomial(frame, frame.eta_bit(j), Rational::one())
    }

    /// Builds a homogeneous element from `(mask, coefficient)` pairs.
    pub fn from_terms(
        frame: Frame,
        degree: usize,
        terms: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(frame, degree);
        for (mask, c) in terms {
            if mask & !frame.full_mask() != 0 {
                return Err(AlgebraError::IndexOutOfRange {
                    index: 63 - mask.leading_zeros() as usize,
                    frame,
                });
            }
            if mask.count_ones() as usize != degree {
                return Err(AlgebraError::DegreeMismatch(
                    degree,
                    mask.count_ones() as usize,
                ));
            }
            out.add_term(mask, c);
        }
        Ok(out)
    }

    /// Coordinates over the given monomial list.
    pub fn from_coordinates(
        frame: Frame,
        degree: usize,
        basis: &[u64],
        coords: &[Rational],
    ) -> Self {
        let mut out = Self::zero(frame, degree);
        for (&m, c) in basis.iter().zip(coords) {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn coordinates(&self, basis: &[u64]) -> Vec<Rational> {
        basis.iter().map(|m| self.coefficient(*m)).collect()
    }

    fn add_term(&mut self, mask: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        let slot = self.terms.entry(mask).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u64) -> Rational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_transverse(&self) -> bool {
        let t = self.frame.transverse_mask();
        self.terms.keys().all(|m| m & !t == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.frame, self.degree);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.frame != other.frame {
            return Err(AlgebraError::FrameMismatch(self.frame, other.frame));
        }
        if self.degree != other.degree {
            return Err(AlgebraError::DegreeMismatch(self.degree, other.degree));
        }
        let mut out = self.clone();
        for (m, x) in &other.terms {
            out.add_term(*m, x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Same coefficients viewed in a larger frame with the same `n`.
    pub fn embed(&self, frame: Frame) -> Self {
        assert_eq!(frame.n, self.frame.n);
        assert!(self.is_transverse() || frame.s >= self.frame.s);
        Multivector {
            frame,
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }

    /// Sum of `f(mask) · coeff` over the terms of `self`.
    fn map_monomials(&self, degree: usize, f: impl Fn(u64) -> Vec<(u64, Rational)>) -> Self {
        let mut out = Self::zero(self.frame, degree);
        for (m, c) in &self.terms {
            for (m2, c2) in f(*m) {
                out.add_term(m2, c * c2);
            }
        }
        out
    }

    fn assert_transverse(&self) {
        assert!(
            self.is_transverse(),
            "operator is only defined on transverse forms, got {self}"
        );
    }
}

pub fn wedge(a: &Multivector, b: &Multivector) -> Result<Multivector, AlgebraError> {
    if a.frame != b.frame {
        return Err(AlgebraError::FrameMismatch(a.frame, b.frame));
    }
    let mut out = Multivector::zero(a.frame, a.degree + b.degree);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            if let Some(sign) = wedge_sign(*ma, *mb) {
                out.add_term(ma | mb, ca * cb * int(sign));
            }
        }
    }
    Ok(out)
}

/// The symplectic form `ω` in the given frame.
pub fn omega(frame: Frame) -> Multivector {
    let mut out = Multivector::zero(frame, 2);
    for i in 0..frame.n {
        out.add_term(0b11 << (2 * i), Rational::one());
    }
    out
}

/// `ω^n / n!`, which equals `e^1 ∧ … ∧ e^{2n}`.
pub fn volume(frame: Frame) -> Multivector {
    Multivector::monomial(frame, frame.transverse_mask(), Rational::one())
}

pub fn lefschetz_l(a: &Multivector) -> Multivector {
    a.assert_transverse();
    wedge(&omega(a.frame), a).expect("same frame")
}

/// The symplectic partner of a transverse bit: `e^{2i-1} <-> e^{2i}`.
fn partner(bit: u32) -> u32 {
    bit ^ 1
}

/// Pairing of covectors induced by `ω^{-1}` (the inverse of the matrix of
/// `ω`): `G(e^{2i-1}, e^{2i}) = -1`, `G(e^{2i}, e^{2i-1}) = 1`.
fn covector_pairing(row: u32, col: u32) -> i64 {
    if partner(row) != col {
        0
    } else if row.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// `det G(e^b_i, e^a_j)` for increasing index lists `b`, `a`.
fn pairing_det(b: u64, a: u64) -> i64 {
    let bs: Vec<u32> = bits(b);
    let as_: Vec<u32> = bits(a);
    if bs.len() != as_.len() {
        return 0;
    }
    // Each row has at most one nonzero entry, so the determinant is a
    // single signed product.
    let mut perm = Vec::with_capacity(bs.len());
    let mut prod = 1;
    for &r in &bs {
        let Some(j) = as_.iter().position(|&c| c == partner(r)) else {
            return 0;
        };
        perm.push(j);
        prod *= covector_pairing(r, as_[j]);
    }
    prod * permutation_sign(&perm)
}

fn bits(mask: u64) -> Vec<u32> {
    (0..64).filter(|b| mask >> b & 1 == 1).collect()
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn partner_mask(mask: u64) -> u64 {
    bits(mask)
        .into_iter()
        .fold(0, |acc, b| acc | 1 << partner(b))
}

/// Symplectic star: `b ∧ *ₛa = G(b, a) · ω^n/n!` for every `k`-form `b`,
/// where `G` is the pairing on `k`-forms induced by `ω^{-1}`.
pub fn symplectic_star(a: &Multivector) -> Multivector {
    a.assert_transverse();
    let t = a.frame.transverse_mask();
    a.map_monomials(2 * a.frame.n - a.degree, |m| {
        // Only b = partner(m) pairs nontrivially with e^m.
        let b = partner_mask(m);
        let c = t & !b;
        let coeff = shuffle_sign(b, c) * pairing_det(b, m);
        vec![(c, int(coeff))]
    })
}

/// Metric Hodge star on the transverse factor with volume `ω^n/n!`.
pub fn hodge_star_transverse(a: &Multivector) -> Multivector {
    a.assert_transverse();
    let t = a.frame.transverse_mask();
    a.map_monomials(2 * a.frame.n - a.degree, |m| {
        let c = t & !m;
        vec![(c, int(shuffle_sign(m, c)))]
    })
}

/// Pullback along `J`: `(Jα)(X_1, …, X_k) = α(JX_1, …, JX_k)`.
pub fn j_action(a: &Multivector) -> Multivector {
    a.assert_transverse();
    a.map_monomials(a.degree, |m| {
        // J e^{2i-1} = -e^{2i}, J e^{2i} = e^{2i-1}
        let mut sign = 1;
        let mut acc: u64 = 0;
        for b in bits(m) {
            let (image, s) = if b % 2 == 0 { (b + 1, -1) } else { (b - 1, 1) };
            match wedge_sign(acc, 1 << image) {
                Some(w) => sign *= s * w,
                None => return vec![],
            }
            acc |= 1 << image;
        }
        vec![(acc, int(sign))]
    })
}

/// `Λ = *ₛ L *ₛ`.
pub fn lambda_op(a: &Multivector) -> Multivector {
    a.assert_transverse();
    if a.degree < 2 {
        return Multivector::zero(a.frame, 0);
    }
    if a.degree > 2 * a.frame.n {
        return Multivector::zero(a.frame, a.degree - 2);
    }
    symplectic_star(&lefschetz_l(&symplectic_star(a)))
}

/// Metric pairing of forms in the orthonormal monomial basis.
pub fn metric(a: &Multivector, b: &Multivector) -> Rational {
    a.terms()
        .map(|(m, c)| c * b.coefficient(m))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Matrix of a linear operator from transverse `k_in`-forms to `k_out`-forms.
pub fn operator_matrix(
    n: usize,
    k_in: usize,
    k_out: usize,
    op: impl Fn(&Multivector) -> Multivector,
) -> Matrix {
    let frame = Frame::transverse(n);
    let src = frame.transverse_monomials(k_in);
    let dst = frame.transverse_monomials(k_out);
    let columns: Vec<Vec<Rational>> = src
        .iter()
        .map(|&m| op(&Multivector::monomial(frame, m, Rational::one())).coordinates(&dst))
        .collect();
    Matrix::from_columns(dst.len(), &columns)
}

/// Primitive `k`-forms, i.e. the kernel of `Λ`, as multivectors.
pub fn primitive_forms(n: usize, k: usize) -> Vec<Multivector> {
    let frame = Frame::transverse(n);
    if k > n {
        return Vec::new();
    }
    let basis = frame.transverse_monomials(k);
    if k < 2 {
        return basis
            .iter()
            .map(|&m| Multivector::monomial(frame, m, Rational::one()))
            .collect();
    }
    let lam = operator_matrix(n, k, k - 2, lambda_op);
    kernel_basis(&lam)
        .vectors()
        .iter()
        .map(|v| Multivector::from_coordinates(frame, k, &basis, v))
        .collect()
}

pub fn l_power(a: &Multivector, i: usize) -> Multivector {
    (0..i).fold(a.clone(), |acc, _| lefschetz_l(&acc))
}

/// Unique decomposition `a = Σ_i L^i β_i` with every `β_i` primitive of
/// degree `deg a - 2i`. Zero components are omitted.
pub fn primitive_decompose(a: &Multivector) -> Vec<(usize, Multivector)> {
    a.assert_transverse();
    let n = a.frame.n;
    let r = a.degree;
    let frame = Frame::transverse(n);
    let local = a.embed_transverse();
    let target = frame.transverse_monomials(r);

    let mut blocks: Vec<(usize, Vec<Multivector>)> = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for i in 0..=r / 2 {
        let prims = primitive_forms(n, r - 2 * i);
        for p in &prims {
            columns.push(l_power(p, i).coordinates(&target));
        }
        blocks.push((i, prims));
    }
    let m = Matrix::from_columns(target.len(), &columns);
    let coeffs = m
        .solve(&local.coordinates(&target))
        .expect("Lefschetz decomposition of forms always exists");

    let mut out = Vec::new();
    let mut offset = 0;
    for (i, prims) in blocks {
        let mut beta = Multivector::zero(frame, r - 2 * i);
        for (p, c) in prims.iter().zip(&coeffs[offset..]) {
            beta = beta.add(&p.scale(c)).expect("same frame and degree");
        }
        offset += prims.len();
        if !beta.is_zero() {
            out.push((i, beta.embed(a.frame)));
        }
    }
    out
}

impl Multivector {
    fn embed_transverse(&self) -> Multivector {
        Multivector {
            frame: Frame::transverse(self.frame.n),
            degree: self.degree,
            terms: self.terms.clone(),
        }
    }
}

/// Hodge star on the full space, oriented by `η_1 ∧ … ∧ η_s ∧ ω^n/n!`.
///
/// Since `2n` is even that orientation form is the increasing monomial of
/// all covectors.
pub fn full_hodge_star(a: &Multivector) -> Multivector {
    let full = a.frame.full_mask();
    a.map_monomials(a.frame.dim() - a.degree, |m| {
        let c = full & !m;
        vec![(c, int(shuffle_sign(m, c)))]
    })
}

/// `η_{i_1} ∧ … ∧ η_{i_k}` for the increasing indices in `subset` (bit
/// `j - 1` selects `η_j`).
pub fn eta_product(frame: Frame, subset: u64) -> Multivector {
    Multivector::monomial(frame, subset << (2 * frame.n), Rational::one())
}

/// One case where `*(η_I ∧ α)` disagrees with the predicted expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarMismatch {
    pub alpha: u64,
    pub subset: u64,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarCheck {
    pub n: usize,
    pub s: usize,
    pub cases: usize,
    pub mismatches: Vec<StarMismatch>,
}

impl StarCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exhaustively compares `*(η_I ∧ α)` with
/// `(-1)^{inv(I, I^c) + (s - |I|) r} η_{I^c} ∧ *_b α` for every transverse
/// monomial `α` of degree `r` and every `I ⊆ {1..s}`, and checks
/// `** = (-1)^{k(N-k)}` on every monomial of the full space.
pub fn check_star_relation(n: usize, s: usize) -> StarCheck {
    let frame = Frame::new(n, s);
    let all_eta = low_bits(s);
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for r in 0..=2 * n {
        for alpha in frame.transverse_monomials(r) {
            let a = Multivector::monomial(frame, alpha, Rational::one());
            let star_b = hodge_star_transverse(&a);
            for subset in 0..=all_eta {
                let complement = all_eta & !subset;
                let k = subset.count_ones() as usize;
                let lhs = full_hodge_star(&wedge(&eta_product(frame, subset), &a).expect("frame"));
                let parity = if ((s - k) * r).is_multiple_of(2) { 1 } else { -1 };
                let sign = shuffle_sign(subset, complement) * parity;
                let rhs = wedge(&eta_product(frame, complement), &star_b)
                    .expect("frame")
                    .scale(&int(sign));
                cases += 1;
                if lhs != rhs {
                    mismatches.push(StarMismatch {
                        alpha,
                        subset,
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    let dim = frame.dim();
    for k in 0..=dim {
        for m in monomials(dim, k) {
            let a = Multivector::monomial(frame, m, Rational::one());
            let twice = full_hodge_star(&full_hodge_star(&a));
            let expected = if (k * (dim - k)).is_multiple_of(2) {
                a.clone()
            } else {
                a.scale(&int(-1))
            };
            cases += 1;
            if twice != expected {
                mismatches.push(StarMismatch {
                    alpha: m,
                    subset: u64::MAX,
                    lhs: twice.to_string(),
                    rhs: expected.to_string(),
                });
            }
        }
    }
    StarCheck {
        n,
        s,
        cases,
        mismatches,
    }
}
