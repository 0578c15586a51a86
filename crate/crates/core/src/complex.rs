//! Formal model of the invariant-forms complex `H_b ⊗ Λ⟨η_1, …, η_s⟩`.
//!
//! The basic part carries the zero differential and `dη_i = λ_i ω`. With the
//! `η`'s written to the left of the basic class, `d` is the derivation
//!
//! ```text
//! d(η_{i_1} … η_{i_q} ⊗ h) = Σ_m (-1)^{m-1} λ_{i_m} η_{I \ i_m} ⊗ L h.
//! ```
//!
//! The filtration is by basic degree: `F^p` is spanned by `η_I ⊗ h` with
//! `deg h >= p`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lefschetz::LefschetzModule;
use crate::linalg::{
    binomial, int, kernel_basis, quotient, LinalgError, Matrix, Quotient, Rational, Subspace,
};
use crate::spectral::{EngineError, FilteredComplex};
use crate::transverse::wedge_sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("corank s must be at least 1")]
    ZeroCorank,
    #[error("expected {expected} lambdas, found {found}")]
    LambdaCount { expected: usize, found: usize },
    #[error("corank {0} is too large")]
    CorankTooLarge(usize),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which theorem family a model falls under, read off from the `λ`'s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StructureType {
    /// every `dη_i = ω`
    S,
    /// every `η_i` closed
    C,
    /// anything else
    Mixed,
}

/// `η_I ⊗ h` with `I` a bitmask (bit `j - 1` is `η_j`) and `h` the
/// `index`-th basis class of `H^{basic_degree}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub basic_degree: usize,
    pub eta: u64,
    pub index: usize,
}

impl BasisElement {
    pub fn total_degree(&self) -> usize {
        self.basic_degree + self.eta.count_ones() as usize
    }
}

/// Homogeneous element, coordinates over `InvariantComplex::basis(degree)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantElement {
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

impl InvariantElement {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Polynomial in the `η`'s: bitmask -> coefficient.
pub type EtaPoly = BTreeMap<u64, Rational>;

/// Product in `Λ⟨η_1, …, η_s⟩`.
pub fn eta_wedge(a: &EtaPoly, b: &EtaPoly) -> EtaPoly {
    let mut out = EtaPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if let Some(sign) = wedge_sign(*ma, *mb) {
                let slot = out.entry(ma | mb).or_insert_with(Rational::zero);
                *slot += ca * cb * int(sign);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The single monomial `η_I`.
pub fn eta_monomial(mask: u64) -> EtaPoly {
    EtaPoly::from([(mask, Rational::one())])
}

#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub dim: usize,
    /// `Ker d / Im d` with chosen representative cocycles.
    pub quotient: Quotient,
}

impl CohomologyGroup {
    pub fn representatives(&self) -> Subspace {
        Subspace::from_vectors(
            self.quotient.ambient.ambient_dim(),
            self.quotient.representatives(),
        )
    }
}

#[derive(Debug, Clone)]
pub struct InvariantComplex {
    base: LefschetzModule,
    s: usize,
    lambdas: Vec<Rational>,
    basis: Vec<Vec<BasisElement>>,
    positions: Vec<HashMap<BasisElement, usize>>,
    differentials: Vec<Matrix>,
}

impl InvariantComplex {
    pub fn build_model(
        base: LefschetzModule,
        s: usize,
        lambdas: Vec<Rational>,
    ) -> Result<Self, ComplexError> {
        if s == 0 {
            return Err(ComplexError::ZeroCorank);
        }
        if s > 16 {
            return Err(ComplexError::CorankTooLarge(s));
        }
        if lambdas.len() != s {
            return Err(ComplexError::LambdaCount {
                expected: s,
                found: lambdas.len(),
            });
        }
        let top = base.top_degree() + s;
        let mut basis = vec![Vec::new(); top + 1];
        for p in 0..=base.top_degree() {
            for eta in 0u64..(1 << s) {
                for index in 0..base.dim(p) {
                    let e = BasisElement {
                        basic_degree: p,
                        eta,
                        index,
                    };
                    basis[e.total_degree()].push(e);
                }
            }
        }
        for b in &mut basis {
            b.sort();
        }
        let positions: Vec<HashMap<BasisElement, usize>> = basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, e)| (*e, i)).collect())
            .collect();

        let mut differentials = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let rows = basis.get(k + 1).map_or(0, Vec::len);
            let mut d = Matrix::zeros(rows, basis[k].len());
            for (col, e) in basis[k].iter().enumerate() {
                if e.eta == 0 || e.basic_degree + 2 > base.top_degree() {
                    continue;
                }
                let lh = base.l_map(e.basic_degree).column(e.index);
                let mut position = 0;
                for (j, lambda) in lambdas.iter().enumerate().take(s) {
                    if e.eta >> j & 1 == 0 {
                        continue;
                    }
                    // (-1)^{m-1} for the m-th η in increasing order
                    let sign = if position % 2 == 0 { int(1) } else { int(-1) };
                    position += 1;
                    let coeff = lambda * sign;
                    if coeff.is_zero() {
                        continue;
                    }
                    for (t, c) in lh.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let target = BasisElement {
                            basic_degree: e.basic_degree + 2,
                            eta: e.eta & !(1 << j),
                            index: t,
                        };
                        let row = positions[k + 1][&target];
                        d[(row, col)] += &coeff * c;
                    }
                }
            }
            differentials.push(d);
        }
        Ok(InvariantComplex {
            base,
            s,
            lambdas,
            basis,
            positions,
            differentials,
        })
    }

    pub fn base(&self) -> &LefschetzModule {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    pub fn structure_type(&self) -> StructureType {
        if self.lambdas.iter().all(One::is_one) {
            StructureType::S
        } else if self.lambdas.iter().all(Zero::is_zero) {
            StructureType::C
        } else {
            StructureType::Mixed
        }
    }

    /// `2n + s`.
    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.basis.get(k).map_or(0, Vec::len)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Vec::len).collect()
    }

    pub fn basis(&self, k: usize) -> &[BasisElement] {
        &self.basis[k]
    }

    pub fn position(&self, e: &BasisElement) -> Option<usize> {
        self.positions.get(e.total_degree())?.get(e).copied()
    }

    pub fn differential_matrix(&self, k: usize) -> &Matrix {
        &self.differentials[k]
    }

    pub fn differential(&self, x: &InvariantElement) -> InvariantElement {
        InvariantElement {
            degree: x.degree + 1,
            coeffs: self.differentials[x.degree].mul_vec(&x.coeffs),
        }
    }

    /// `Σ_I c_I η_I ⊗ h` for a class `h ∈ H^p` and an `η`-polynomial whose
    /// monomials all have length `q`.
    pub fn tensor(&self, eta: &EtaPoly, p: usize, class: &[Rational]) -> InvariantElement {
        let q = eta.keys().next().map_or(0, |m| m.count_ones() as usize);
        let degree = p + q;
        let mut coeffs = vec![Rational::zero(); self.dim(degree)];
        for (mask, c) in eta {
            assert_eq!(
                mask.count_ones() as usize,
                q,
                "η-polynomial must be homogeneous"
            );
            for (index, x) in class.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let e = BasisElement {
                    basic_degree: p,
                    eta: *mask,
                    index,
                };
                coeffs[self.positions[degree][&e]] += c * x;
            }
        }
        InvariantElement { degree, coeffs }
    }

    /// `F^p` in total degree `k`.
    pub fn filtration_subspace(&self, p: usize, k: usize) -> Subspace {
        Subspace::coordinate(
            self.dim(k),
            self.basis[k]
                .iter()
                .enumerate()
                .filter(|(_, e)| e.basic_degree >= p)
                .map(|(i, _)| i),
        )
    }

    pub fn filtered_complex(&self) -> Result<FilteredComplex, ComplexError> {
        let max_p = self.base.top_degree();
        let filtration = (0..=self.top_degree())
            .map(|k| {
                (0..=max_p)
                    .map(|p| self.filtration_subspace(p, k))
                    .collect()
            })
            .collect();
        Ok(FilteredComplex::new(
            self.dims(),
            self.differentials.clone(),
            filtration,
        )?)
    }

    /// `Ker d / Im d` in every degree.
    pub fn cohomology(&self) -> Result<Vec<CohomologyGroup>, ComplexError> {
        (0..=self.top_degree())
            .map(|k| {
                let cycles = kernel_basis(&self.differentials[k]);
                let boundaries = if k == 0 {
                    Subspace::zero(self.dim(0))
                } else {
                    crate::linalg::image_basis(&self.differentials[k - 1])
                };
                let q = quotient(&cycles, &boundaries)?;
                Ok(CohomologyGroup {
                    degree: k,
                    dim: q.dim(),
                    quotient: q,
                })
            })
            .collect()
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>, ComplexError> {
        Ok(self.cohomology()?.iter().map(|g| g.dim).collect())
    }

    /// `Σ_q C(s, q) dim H^{k-q}` for each total degree `k`.
    pub fn expected_chain_dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|k| {
                (0..=self.s.min(k))
                    .map(|q| binomial(self.s as i64, q as i64) as usize * self.base.dim(k - q))
                    .sum()
            })
            .collect()
    }
}
