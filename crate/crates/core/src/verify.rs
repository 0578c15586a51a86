//! Executable checks of the structure theorems for the invariant-forms
//! spectral sequence, with closed-form expected values.
//!
//! Each check returns a [`VerificationReport`] whose outcome is `Pass` iff
//! the expected and actual tables agree entrywise. When the hypotheses of a
//! theorem do not hold for the given model the outcome is
//! `HypothesisViolated` instead: the theorems are conditionals and say
//! nothing about such models.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    eta_monomial, eta_wedge, ComplexError, EtaPoly, InvariantComplex, InvariantElement,
    StructureType,
};
use crate::lefschetz::LefschetzModule;
use crate::linalg::{binomial, int, kernel_basis, LinalgError, Matrix, Rational, Subspace};
use crate::spectral::{Convergence, EngineError, FilteredComplex};
use crate::transverse::shuffle_sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("degree {degree}: intermediate value {value} is negative; input is not the Betti sequence of such a manifold")]
    Negative { degree: usize, value: i64 },
    #[error("degree {degree}: value {value} should vanish; input is not the Betti sequence of such a manifold")]
    NonzeroTail { degree: usize, value: i64 },
    #[error("expected {expected} Betti numbers, found {found}")]
    Length { expected: usize, found: usize },
    #[error("corank s must be at least 1")]
    ZeroCorank,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail,
    HypothesisViolated(String),
}

/// One labelled row of a dimension table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimRow {
    pub label: String,
    pub values: Vec<usize>,
}

impl DimRow {
    pub fn new(label: impl Into<String>, values: Vec<usize>) -> Self {
        DimRow {
            label: label.into(),
            values,
        }
    }

    fn flag(label: impl Into<String>, holds: bool) -> Self {
        DimRow::new(label, vec![usize::from(holds)])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub outcome: Outcome,
    pub expected: Vec<DimRow>,
    pub actual: Vec<DimRow>,
    /// Human-readable descriptions of the entries that disagree.
    pub witnesses: Vec<String>,
}

impl VerificationReport {
    /// Builds a report whose outcome is decided by entrywise comparison.
    pub fn compare(theorem: &str, expected: Vec<DimRow>, actual: Vec<DimRow>) -> Self {
        let mut witnesses = Vec::new();
        for (e, a) in expected.iter().zip(&actual) {
            if e.values != a.values {
                witnesses.push(format!(
                    "{}: expected {:?}, found {:?}",
                    e.label, e.values, a.values
                ));
            }
        }
        if expected.len() != actual.len() {
            witnesses.push(format!(
                "{} expected rows, {} actual rows",
                expected.len(),
                actual.len()
            ));
        }
        let outcome = if witnesses.is_empty() {
            Outcome::Pass
        } else {
            Outcome::Fail
        };
        VerificationReport {
            theorem: theorem.to_string(),
            outcome,
            expected,
            actual,
            witnesses,
        }
    }

    pub fn hypothesis_violated(theorem: &str, reason: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.to_string(),
            outcome: Outcome::HypothesisViolated(reason.into()),
            expected: Vec::new(),
            actual: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }
}

pub const SECOND_PAGE: &str = "second-page";
pub const KERNEL_D2: &str = "kernel-d2";
pub const S_TYPE_COHOMOLOGY: &str = "s-type-cohomology";
pub const C_TYPE_COHOMOLOGY: &str = "c-type-cohomology";
pub const HARMONIC_S: &str = "harmonic-basis-s";
pub const HARMONIC_C: &str = "harmonic-basis-c";
pub const STAR_DUALITY: &str = "star-duality";
pub const ABUTMENT: &str = "abutment";

fn choose(a: usize, b: usize) -> usize {
    binomial(a as i64, b as i64) as usize
}

fn require_s_type(c: &InvariantComplex) -> Result<(), String> {
    if c.structure_type() != StructureType::S {
        return Err("every λ_i must equal 1".into());
    }
    require_hlp(c.base())
}

fn require_hlp(base: &LefschetzModule) -> Result<(), String> {
    match base.hlp_failure() {
        None => Ok(()),
        Some(k) => Err(format!("hard Lefschetz fails: L^{k} is not an isomorphism")),
    }
}

/// `E_2^{p,q} ≅ H^p ⊗ Λ^q⟨η⟩` and `d_0 = d_1 = 0`, for any `λ`'s.
pub fn verify_e2(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    let pages = c.filtered_complex()?.pages_through(2)?;
    Ok(e2_report(c, &pages[0], &pages[1], &pages[2]))
}

fn e2_report(
    c: &InvariantComplex,
    e0: &crate::spectral::SpectralPage,
    e1: &crate::spectral::SpectralPage,
    e2: &crate::spectral::SpectralPage,
) -> VerificationReport {
    let s = c.s();
    let base = c.base();
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    for p in 0..=base.top_degree() {
        let label = format!("dim E_2^(p={p}, q=0..={s})");
        expected.push(DimRow::new(
            label.clone(),
            (0..=s).map(|q| base.dim(p) * choose(s, q)).collect(),
        ));
        actual.push(DimRow::new(
            label,
            (0..=s).map(|q| e2.dim(p, q as i64)).collect(),
        ));
    }
    // Cells outside 0 <= q <= s must be empty.
    let stray: usize = e2
        .cells
        .iter()
        .filter(|(&(_, q), _)| q < 0 || q > s as i64)
        .map(|(_, cell)| cell.dim)
        .sum();
    expected.push(DimRow::new("dim of cells with q outside 0..=s", vec![0]));
    actual.push(DimRow::new(
        "dim of cells with q outside 0..=s",
        vec![stray],
    ));
    expected.push(DimRow::flag("d_0 = 0", true));
    actual.push(DimRow::flag("d_0 = 0", e0.differentials_vanish()));
    expected.push(DimRow::flag("d_1 = 0", true));
    actual.push(DimRow::flag("d_1 = 0", e1.differentials_vanish()));
    VerificationReport::compare(SECOND_PAGE, expected, actual)
}

/// Kernel of `d_2^{p,q}` from the engine, next to the subspace the lemma
/// describes, both in the coordinates of the cell `E_2^{p,q}`.
#[derive(Debug, Clone)]
pub struct KernelD2 {
    pub actual: Subspace,
    pub lemma_span: Subspace,
    pub expected_dim: usize,
}

impl KernelD2 {
    pub fn passed(&self) -> bool {
        self.actual.dim() == self.expected_dim && self.actual == self.lemma_span
    }
}

/// `Ker d_2^{p,q}` is spanned by `(η_1 - η_{i_1})…(η_1 - η_{i_q}) ⊗ h` with
/// `h ∈ H^p` together with `η_I ⊗ κ` with `κ ∈ Ker L`; at `q = 0` it is the
/// whole cell.
pub fn kernel_d2(c: &InvariantComplex, p: usize, q: usize) -> Result<KernelD2, VerifyError> {
    require_s_type(c).map_err(VerifyError::Hypothesis)?;
    let page = c.filtered_complex()?.compute_page(2)?;
    let cell = page
        .cell(p, q as i64)
        .ok_or_else(|| VerifyError::Hypothesis(format!("no cell at (p, q) = ({p}, {q})")))?;
    let actual = kernel_basis(&cell.d_r);
    let base = c.base();
    let s = c.s();
    let (zp, hp) = (base.kernel_l(p).dim(), base.dim(p));
    let expected_dim = if q == 0 {
        hp
    } else {
        choose(s, q) * zp + choose(s - 1, q) * (hp - zp)
    };

    let mut vectors = Vec::new();
    if q == 0 {
        for h in identity_columns(hp) {
            vectors.push(c.tensor(&eta_monomial(0), p, &h));
        }
    } else {
        for subset in subsets_of_rest(s, q) {
            let poly = difference_product(subset);
            for h in identity_columns(hp) {
                vectors.push(c.tensor(&poly, p, &h));
            }
        }
        for mask in (0u64..1 << s).filter(|m| m.count_ones() as usize == q) {
            for kappa in base.kernel_l(p).vectors() {
                vectors.push(c.tensor(&eta_monomial(mask), p, kappa));
            }
        }
    }
    let lemma_span = Subspace::from_vectors(
        cell.dim,
        vectors
            .iter()
            .map(|v| cell.quotient.project_vector(&v.coeffs)),
    );
    Ok(KernelD2 {
        actual,
        lemma_span,
        expected_dim,
    })
}

fn identity_columns(d: usize) -> Vec<Vec<Rational>> {
    Matrix::identity(d).columns()
}

/// `q`-subsets of `{2..s}` as η-masks.
fn subsets_of_rest(s: usize, q: usize) -> Vec<u64> {
    (0u64..1 << s)
        .filter(|m| m & 1 == 0 && m.count_ones() as usize == q)
        .collect()
}

/// `(η_1 - η_{i_1})…(η_1 - η_{i_q})` for the indices in `subset ⊆ {2..s}`.
pub fn difference_product(subset: u64) -> EtaPoly {
    let mut out = eta_monomial(0);
    let mut rest = subset;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        let factor: EtaPoly = [(1u64, Rational::one()), (bit, -Rational::one())].into();
        out = eta_wedge(&out, &factor);
        rest &= rest - 1;
    }
    out
}

/// `dim_k = Σ_{q=0}^{s-1} C(s-1, q) (pdim[k-q] + zdim[k-q-1])` for
/// `k = 0..=2n+s`, where `pdim` are the primitive and `zdim` the `Ker L`
/// dimensions of the base.
pub fn expected_dims_main_s(base: &LefschetzModule, s: usize) -> Result<Vec<usize>, VerifyError> {
    require_hlp(base).map_err(VerifyError::Hypothesis)?;
    if s == 0 {
        return Err(VerifyError::ZeroCorank);
    }
    let pdim = base.primitive_dims();
    let zdim = base.kernel_l_dims();
    let at = |v: &[usize], i: i64| {
        if i < 0 {
            0
        } else {
            v.get(i as usize).copied().unwrap_or(0)
        }
    };
    Ok((0..=base.top_degree() + s)
        .map(|k| {
            (0..s)
                .map(|q| {
                    let j = k as i64 - q as i64;
                    choose(s - 1, q) * (at(&pdim, j) + at(&zdim, j - 1))
                })
                .sum()
        })
        .collect())
}

/// `dim_k = Σ_q C(s, q) dims[k-q]`.
pub fn expected_dims_main_c(base: &LefschetzModule, s: usize) -> Vec<usize> {
    (0..=base.top_degree() + s)
        .map(|k| (0..=s.min(k)).map(|q| choose(s, q) * base.dim(k - q)).sum())
        .collect()
}

fn degeneration_report(
    theorem: &str,
    bound: usize,
    expected_dims: Vec<usize>,
    conv: &Convergence,
    fc: &FilteredComplex,
) -> VerificationReport {
    let top = fc.top_degree();
    let totals = conv.infinity_page().total_dims(top);
    let stable = format!("degenerates by page {bound}");
    let expected = vec![
        DimRow::flag(stable.clone(), true),
        DimRow::new("E_inf totals", expected_dims.clone()),
        DimRow::new("H(model)", expected_dims),
    ];
    let actual = vec![
        DimRow::flag(stable, conv.stable_at <= bound),
        DimRow::new("E_inf totals", totals),
        DimRow::new("H(model)", fc.cohomology_dims()),
    ];
    let mut report = VerificationReport::compare(theorem, expected, actual);
    if conv.stable_at > bound {
        report
            .witnesses
            .push(format!("stable at page {}", conv.stable_at));
    }
    report
}

/// Degeneration at `E_3` and `H = Λ_{PH}⟨η_1-η_2, …⟩ ⊕ η_1 Λ_{Ker L}⟨η_2, …⟩`
/// in dimensions.
pub fn verify_main_s(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    if let Err(reason) = require_s_type(c) {
        return Ok(VerificationReport::hypothesis_violated(
            S_TYPE_COHOMOLOGY,
            reason,
        ));
    }
    let fc = c.filtered_complex()?;
    let conv = fc.run_to_convergence()?;
    main_s_report(c, &fc, &conv)
}

fn main_s_report(
    c: &InvariantComplex,
    fc: &FilteredComplex,
    conv: &Convergence,
) -> Result<VerificationReport, VerifyError> {
    let expected = expected_dims_main_s(c.base(), c.s())?;
    Ok(degeneration_report(
        S_TYPE_COHOMOLOGY,
        3,
        expected,
        conv,
        fc,
    ))
}

/// Degeneration at `E_2` and `H = H_b ⊗ Λ⟨η⟩` in dimensions, with no
/// Lefschetz hypothesis.
pub fn verify_main_c(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    if c.structure_type() != StructureType::C {
        return Ok(VerificationReport::hypothesis_violated(
            C_TYPE_COHOMOLOGY,
            "every λ_i must equal 0",
        ));
    }
    let fc = c.filtered_complex()?;
    let conv = fc.run_to_convergence()?;
    Ok(main_c_report(c, &fc, &conv))
}

fn main_c_report(
    c: &InvariantComplex,
    fc: &FilteredComplex,
    conv: &Convergence,
) -> VerificationReport {
    let expected = expected_dims_main_c(c.base(), c.s());
    degeneration_report(C_TYPE_COHOMOLOGY, 2, expected, conv, fc)
}

fn check_length(betti: &[usize], expected: usize) -> Result<(), VerifyError> {
    if betti.len() != expected {
        return Err(VerifyError::Length {
            expected,
            found: betti.len(),
        });
    }
    Ok(())
}

fn non_negative(degree: usize, value: i64) -> Result<usize, VerifyError> {
    usize::try_from(value).map_err(|_| VerifyError::Negative { degree, value })
}

/// Primitive and basic Betti numbers of the base recovered from the de Rham
/// Betti numbers `B[0..=2n+s]` of an 𝒮-type model:
/// `pdim[k] = B[k] - Σ_{i<k} C(s-1, k-i) pdim[i]` for `k <= n`, then the
/// Lefschetz decomposition gives `b[r] = Σ_i pdim[r-2i]` for `r <= n` and
/// `b[r] = b[2n-r]` above.
pub fn primitive_betti_from_derham(
    betti: &[usize],
    s: usize,
    n: usize,
) -> Result<(Vec<usize>, Vec<usize>), VerifyError> {
    if s == 0 {
        return Err(VerifyError::ZeroCorank);
    }
    check_length(betti, 2 * n + s + 1)?;
    let mut pdim: Vec<usize> = Vec::with_capacity(n + 1);
    for (k, &betti_k) in betti.iter().enumerate().take(n + 1) {
        let correction: i64 = (0..k)
            .map(|i| binomial(s as i64 - 1, (k - i) as i64) as i64 * pdim[i] as i64)
            .sum();
        pdim.push(non_negative(k, betti_k as i64 - correction)?);
    }
    let mut basic = vec![0; 2 * n + 1];
    for r in 0..=n {
        basic[r] = (0..=r / 2).map(|i| pdim[r - 2 * i]).sum();
    }
    for r in n + 1..=2 * n {
        basic[r] = basic[2 * n - r];
    }
    Ok((pdim, basic))
}

/// Basic Betti numbers recovered from the de Rham Betti numbers
/// `B[0..=2n+s]` of a 𝒞-type model: `b[k] = B[k] - Σ_{i<k} C(s, k-i) b[i]`.
///
/// The recursion runs over the whole input; its last `s` values must vanish
/// (the base lives in degrees `0..=2n`) and are dropped from the result.
pub fn basic_betti_from_derham(betti: &[usize], s: usize) -> Result<Vec<usize>, VerifyError> {
    if s == 0 {
        return Err(VerifyError::ZeroCorank);
    }
    if betti.len() < s + 1 {
        return Err(VerifyError::Length {
            expected: s + 1,
            found: betti.len(),
        });
    }
    let mut b: Vec<usize> = Vec::with_capacity(betti.len());
    for (k, &betti_k) in betti.iter().enumerate() {
        let correction: i64 = (0..k)
            .map(|i| binomial(s as i64, (k - i) as i64) as i64 * b[i] as i64)
            .sum();
        b.push(non_negative(k, betti_k as i64 - correction)?);
    }
    let keep = betti.len() - s;
    if let Some((degree, &value)) = b.iter().enumerate().skip(keep).find(|(_, &v)| v != 0) {
        return Err(VerifyError::NonzeroTail {
            degree,
            value: value as i64,
        });
    }
    b.truncate(keep);
    Ok(b)
}

/// Every `η_I ⊗ h`, ordered by total degree.
pub fn harmonic_basis_c(c: &InvariantComplex) -> Result<Vec<InvariantElement>, VerifyError> {
    if c.structure_type() != StructureType::C {
        return Err(VerifyError::Hypothesis("every λ_i must equal 0".into()));
    }
    Ok((0..=c.top_degree())
        .flat_map(|k| {
            identity_columns(c.dim(k))
                .into_iter()
                .map(move |coeffs| InvariantElement { degree: k, coeffs })
        })
        .collect())
}

#[derive(Debug, Clone)]
pub struct HarmonicBasisS {
    /// `(η_1 - η_{i_1})…(η_1 - η_{i_q}) ⊗ β` with `β` primitive.
    pub part_a: Vec<InvariantElement>,
    /// `η_1 η_I ⊗ κ` with `I ⊆ {2..s}` and `κ ∈ Ker L`.
    pub part_b: Vec<InvariantElement>,
}

pub fn harmonic_basis_s(c: &InvariantComplex) -> Result<HarmonicBasisS, VerifyError> {
    require_s_type(c).map_err(VerifyError::Hypothesis)?;
    let base = c.base();
    let s = c.s();
    let mut part_a = Vec::new();
    let mut part_b = Vec::new();
    for q in 0..s {
        for subset in subsets_of_rest(s, q) {
            let poly = difference_product(subset);
            for p in 0..=base.n() {
                for beta in base.primitive_subspace(p).vectors() {
                    part_a.push(c.tensor(&poly, p, beta));
                }
            }
            for p in 0..=base.top_degree() {
                for kappa in base.kernel_l(p).vectors() {
                    part_b.push(c.tensor(&eta_monomial(subset | 1), p, kappa));
                }
            }
        }
    }
    part_a.sort_by_key(|e| e.degree);
    part_b.sort_by_key(|e| e.degree);
    Ok(HarmonicBasisS { part_a, part_b })
}

fn count_by_degree(elements: &[InvariantElement], top: usize) -> Vec<usize> {
    let mut out = vec![0; top + 1];
    for e in elements {
        out[e.degree] += 1;
    }
    out
}

/// Closedness, counts, and independence of the classes of `elements`.
fn basis_report(
    theorem: &str,
    c: &InvariantComplex,
    groups: &[(&str, &[InvariantElement], Vec<usize>)],
) -> Result<VerificationReport, VerifyError> {
    let top = c.top_degree();
    let cohomology = c.cohomology()?;
    let mut expected = Vec::new();
    let mut actual = Vec::new();
    let mut all: Vec<&InvariantElement> = Vec::new();
    for (name, elements, formula) in groups {
        expected.push(DimRow::new(
            format!("{name} elements per degree"),
            formula.clone(),
        ));
        actual.push(DimRow::new(
            format!("{name} elements per degree"),
            count_by_degree(elements, top),
        ));
        all.extend(elements.iter());
    }
    let mut closed = vec![0; top + 1];
    let mut classes: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); top + 1];
    for e in &all {
        if c.differential(e).is_zero() {
            closed[e.degree] += 1;
            classes[e.degree].push(cohomology[e.degree].quotient.project_vector(&e.coeffs));
        }
    }
    let counts: Vec<usize> = (0..=top)
        .map(|k| all.iter().filter(|e| e.degree == k).count())
        .collect();
    let dims: Vec<usize> = cohomology.iter().map(|g| g.dim).collect();
    let ranks: Vec<usize> = classes
        .into_iter()
        .zip(&dims)
        .map(|(vs, &d)| Subspace::from_vectors(d, vs).dim())
        .collect();
    expected.push(DimRow::new("closed elements per degree", counts));
    actual.push(DimRow::new("closed elements per degree", closed));
    expected.push(DimRow::new("rank of classes per degree", dims));
    actual.push(DimRow::new("rank of classes per degree", ranks));
    Ok(VerificationReport::compare(theorem, expected, actual))
}

/// The 𝒞-type basis consists of cocycles whose classes form a basis of
/// every `H^k`.
pub fn verify_harmonic_basis_c(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    let elements = match harmonic_basis_c(c) {
        Ok(e) => e,
        Err(VerifyError::Hypothesis(reason)) => {
            return Ok(VerificationReport::hypothesis_violated(HARMONIC_C, reason))
        }
        Err(e) => return Err(e),
    };
    basis_report(
        HARMONIC_C,
        c,
        &[("basis", &elements, expected_dims_main_c(c.base(), c.s()))],
    )
}

/// Per-degree sizes of the two halves of the 𝒮-type basis:
/// `Σ_q C(s-1, q) pdim[k-q]` and `Σ_q C(s-1, q) zdim[k-q-1]`.
pub fn harmonic_counts_s(base: &LefschetzModule, s: usize) -> (Vec<usize>, Vec<usize>) {
    let pdim = base.primitive_dims();
    let zdim = base.kernel_l_dims();
    let at = |v: &[usize], i: i64| {
        if i < 0 {
            0
        } else {
            v.get(i as usize).copied().unwrap_or(0)
        }
    };
    let top = base.top_degree() + s;
    let count = |v: &[usize], shift: i64| -> Vec<usize> {
        (0..=top)
            .map(|k| {
                (0..s)
                    .map(|q| choose(s - 1, q) * at(v, k as i64 - q as i64 - shift))
                    .sum()
            })
            .collect()
    };
    (count(&pdim, 0), count(&zdim, 1))
}

/// The 𝒮-type basis consists of cocycles whose classes form a basis of
/// every `H^k`, with the predicted number of elements in each half.
pub fn verify_harmonic_basis_s(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    if let Err(reason) = require_s_type(c) {
        return Ok(VerificationReport::hypothesis_violated(HARMONIC_S, reason));
    }
    let basis = harmonic_basis_s(c)?;
    let (count_a, count_b) = harmonic_counts_s(c.base(), c.s());
    basis_report(
        HARMONIC_S,
        c,
        &[
            ("part A", &basis.part_a, count_a),
            ("part B", &basis.part_b, count_b),
        ],
    )
}

/// Block star on a hard Lefschetz base: writing `H` as the direct sum of
/// the `L^i P^j`, it sends `L^i b` to `L^{n-i-j} b` for each basis vector
/// `b` of `P^j`. Returns the matrices `H^d -> H^{2n-d}`.
pub fn block_star(base: &LefschetzModule) -> Result<Vec<Matrix>, VerifyError> {
    require_hlp(base).map_err(VerifyError::Hypothesis)?;
    let n = base.n();
    let top = base.top_degree();
    // adapted[d] lists (j, basis index, i) for the columns of the basis of H^d
    let mut adapted: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
    let mut columns: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); top + 1];
    for j in 0..=n {
        for (b_index, b) in base.primitive_subspace(j).vectors().iter().enumerate() {
            let mut v = b.clone();
            for i in 0..=n - j {
                let d = j + 2 * i;
                adapted[d].push((j, b_index, i));
                columns[d].push(v.clone());
                v = base.apply_l(d, &v);
            }
        }
    }
    let bases: Vec<Matrix> = (0..=top)
        .map(|d| Matrix::from_columns(base.dim(d), &columns[d]))
        .collect();
    (0..=top)
        .map(|d| {
            let target = top - d;
            let mut perm = Matrix::zeros(base.dim(target), base.dim(d));
            for (col, &(j, b, i)) in adapted[d].iter().enumerate() {
                let row = adapted[target]
                    .iter()
                    .position(|&t| t == (j, b, n - i - j))
                    .expect("the dual block exists");
                perm[(row, col)] = int(1);
            }
            Ok(bases[target].mul(&perm).mul(&bases[d].inverse()?))
        })
        .collect()
}

/// `★(η_I ⊗ h) = (-1)^{inv(I, I^c) + (s-|I|) r} η_{I^c} ⊗ ★_b h` for
/// `h ∈ H^r`.
pub fn model_star(
    c: &InvariantComplex,
    base_star: &[Matrix],
    x: &InvariantElement,
) -> InvariantElement {
    let s = c.s();
    let all = (1u64 << s) - 1;
    let target = c.top_degree() - x.degree;
    let mut coeffs = vec![Rational::zero(); c.dim(target)];
    for (e, coeff) in c.basis(x.degree).iter().zip(&x.coeffs) {
        if coeff.is_zero() {
            continue;
        }
        let complement = all & !e.eta;
        let q = e.eta.count_ones() as usize;
        let mut sign = shuffle_sign(e.eta, complement);
        if (s - q) * e.basic_degree % 2 == 1 {
            sign = -sign;
        }
        let image = base_star[e.basic_degree].column(e.index);
        let y = c.tensor(
            &eta_monomial(complement),
            c.top_degree() - x.degree - (s - q),
            &image,
        );
        for (slot, v) in coeffs.iter_mut().zip(y.coeffs) {
            *slot += coeff * int(sign) * v;
        }
    }
    InvariantElement {
        degree: target,
        coeffs,
    }
}

/// The model star sends the span of the part-A classes in degree `k`
/// isomorphically onto the part-B classes in degree `2n+s-k`, read in
/// `H^{2n+s-k}` modulo the part-A classes there.
pub fn model_star_duality(c: &InvariantComplex) -> Result<VerificationReport, VerifyError> {
    if let Err(reason) = require_s_type(c) {
        return Ok(VerificationReport::hypothesis_violated(
            STAR_DUALITY,
            reason,
        ));
    }
    let star = block_star(c.base())?;
    let basis = harmonic_basis_s(c)?;
    let cohomology = c.cohomology()?;
    let top = c.top_degree();
    let in_degree = |v: &[InvariantElement], k: usize| -> Vec<InvariantElement> {
        v.iter().filter(|e| e.degree == k).cloned().collect()
    };

    let mut sizes_a = Vec::new();
    let mut sizes_b = Vec::new();
    let mut closed = Vec::new();
    let mut ranks = Vec::new();
    for k in 0..=top {
        let dual = top - k;
        let a_k = in_degree(&basis.part_a, k);
        let images: Vec<InvariantElement> = a_k.iter().map(|a| model_star(c, &star, a)).collect();
        closed.push(
            images
                .iter()
                .filter(|y| c.differential(y).is_zero())
                .count(),
        );
        let group = &cohomology[dual];
        let project = |e: &InvariantElement| group.quotient.project_vector(&e.coeffs);
        let a_dual: Vec<Vec<Rational>> =
            in_degree(&basis.part_a, dual).iter().map(project).collect();
        let floor = Subspace::from_vectors(group.dim, a_dual.clone()).dim();
        let with_images = Subspace::from_vectors(
            group.dim,
            a_dual.into_iter().chain(images.iter().map(project)),
        )
        .dim();
        sizes_a.push(a_k.len());
        sizes_b.push(in_degree(&basis.part_b, dual).len());
        ranks.push(with_images - floor);
    }
    let expected = vec![
        DimRow::new("part B classes in degree 2n+s-k", sizes_b),
        DimRow::new("closed star images of part A", sizes_a.clone()),
        DimRow::new("rank of star(part A) modulo part A", sizes_a),
    ];
    let actual = vec![
        DimRow::new(
            "part B classes in degree 2n+s-k",
            expected[1].values.clone(),
        ),
        DimRow::new("closed star images of part A", closed),
        DimRow::new("rank of star(part A) modulo part A", ranks),
    ];
    Ok(VerificationReport::compare(STAR_DUALITY, expected, actual))
}

/// `Σ_{p+q=k} dim E_∞^{p,q} = dim H^k(model)`.
fn abutment_report(fc: &FilteredComplex, conv: &Convergence) -> VerificationReport {
    let expected = vec![DimRow::new("H(model)", fc.cohomology_dims())];
    let actual = vec![DimRow::new(
        "E_inf totals",
        conv.infinity_page().total_dims(fc.top_degree()),
    )];
    let mut report = VerificationReport::compare(ABUTMENT, expected, actual);
    report.expected[0].label = "E_inf totals".into();
    report
}

/// Engine run plus every check that applies to the model's `λ` pattern.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub structure: StructureType,
    pub convergence: Convergence,
    pub cohomology_dims: Vec<usize>,
    pub reports: Vec<VerificationReport>,
}

impl Analysis {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| !r.failed())
    }
}

pub fn analyze(c: &InvariantComplex) -> Result<Analysis, VerifyError> {
    let fc = c.filtered_complex()?;
    let conv = fc.run_to_convergence()?;
    let early: Vec<_> = (conv.pages.len()..3)
        .map(|r| fc.compute_page(r))
        .collect::<Result<_, _>>()?;
    let page = |r: usize| {
        conv.pages
            .get(r)
            .unwrap_or_else(|| &early[r - conv.pages.len()])
    };
    let mut reports = vec![
        abutment_report(&fc, &conv),
        e2_report(c, page(0), page(1), page(2)),
    ];
    let structure = c.structure_type();
    match structure {
        StructureType::S => {
            if let Err(reason) = require_hlp(c.base()) {
                for theorem in [S_TYPE_COHOMOLOGY, HARMONIC_S, STAR_DUALITY] {
                    reports.push(VerificationReport::hypothesis_violated(
                        theorem,
                        reason.clone(),
                    ));
                }
            } else {
                reports.push(main_s_report(c, &fc, &conv)?);
                reports.push(verify_harmonic_basis_s(c)?);
                reports.push(model_star_duality(c)?);
            }
        }
        StructureType::C => {
            reports.push(main_c_report(c, &fc, &conv));
            reports.push(verify_harmonic_basis_c(c)?);
        }
        StructureType::Mixed => {}
    }
    Ok(Analysis {
        structure,
        cohomology_dims: fc.cohomology_dims(),
        convergence: conv,
        reports,
    })
}
