//! Spectral sequence of a finite filtered cochain complex.
//!
//! Pages are computed directly from the filtration:
//!
//! ```text
//! Z = F^p C^k ∩ d^{-1}(F^{p+r} C^{k+1})
//! B = (F^{p+1} C^k ∩ Z) + (d(F^{p-r+1} C^{k-1}) ∩ F^p C^k)
//! E_r^{p,q} = Z / B,   k = p + q
//! ```
//!
//! and `d_r` is the map induced by `d` on these subquotients.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{induced_map, preimage, quotient, LinalgError, Matrix, Quotient, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(
        "differential in degree {degree} should be {rows}x{cols}, found {found_rows}x{found_cols}"
    )]
    DifferentialShape {
        degree: usize,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("d∘d ≠ 0 starting in degree {degree}")]
    NotAComplex { degree: usize },
    #[error("malformed filtration at F^{p} C^{degree}: {reason}")]
    MalformedFiltration {
        degree: usize,
        p: usize,
        reason: &'static str,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Cochain complex `C^0 -> … -> C^top` with a finite decreasing filtration
/// `C^k = F^0 C^k ⊇ F^1 C^k ⊇ … ⊇ F^{max_p} C^k ⊇ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    dims: Vec<usize>,
    d: Vec<Matrix>,
    filtration: Vec<Vec<Subspace>>,
    max_p: usize,
}

impl FilteredComplex {
    /// `d[k]` maps `C^k -> C^{k+1}` (the last one is `0 x dims[top]`), and
    /// `filtration[k][p] = F^p C^k` for `p = 0..=max_p`.
    pub fn new(
        dims: Vec<usize>,
        d: Vec<Matrix>,
        filtration: Vec<Vec<Subspace>>,
    ) -> Result<Self, EngineError> {
        let top = dims.len().saturating_sub(1);
        for (k, m) in d.iter().enumerate() {
            let rows = dims.get(k + 1).copied().unwrap_or(0);
            if m.rows() != rows || m.cols() != dims[k] {
                return Err(EngineError::DifferentialShape {
                    degree: k,
                    rows,
                    cols: dims[k],
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        if d.len() != dims.len() {
            return Err(EngineError::DifferentialShape {
                degree: d.len().min(top),
                rows: 0,
                cols: 0,
                found_rows: 0,
                found_cols: 0,
            });
        }
        for k in 0..top {
            if !d[k + 1].mul(&d[k]).is_zero() {
                return Err(EngineError::NotAComplex { degree: k });
            }
        }
        if filtration.len() != dims.len() {
            return Err(EngineError::MalformedFiltration {
                degree: filtration.len(),
                p: 0,
                reason: "one filtration per degree is required",
            });
        }
        let max_p = filtration.first().map_or(0, |f| f.len().saturating_sub(1));
        for (k, levels) in filtration.iter().enumerate() {
            if levels.len() != max_p + 1 {
                return Err(EngineError::MalformedFiltration {
                    degree: k,
                    p: levels.len(),
                    reason: "every degree needs the same number of filtration levels",
                });
            }
            if levels[0] != Subspace::full(dims[k]) {
                return Err(EngineError::MalformedFiltration {
                    degree: k,
                    p: 0,
                    reason: "F^0 must be the whole space",
                });
            }
            for (p, f) in levels.iter().enumerate() {
                if f.ambient_dim() != dims[k] {
                    return Err(EngineError::MalformedFiltration {
                        degree: k,
                        p,
                        reason: "ambient dimension does not match the chain space",
                    });
                }
                if p > 0 && !levels[p - 1].contains(f) {
                    return Err(EngineError::MalformedFiltration {
                        degree: k,
                        p,
                        reason: "filtration is not decreasing",
                    });
                }
                if k < top && !filtration[k + 1][p].contains(&f.image_under(&d[k])?) {
                    return Err(EngineError::MalformedFiltration {
                        degree: k,
                        p,
                        reason: "d does not preserve the filtration",
                    });
                }
            }
        }
        Ok(FilteredComplex {
            dims,
            d,
            filtration,
            max_p,
        })
    }

    /// `F^0 = C`, `F^1 = 0`.
    pub fn trivially_filtered(dims: Vec<usize>, d: Vec<Matrix>) -> Result<Self, EngineError> {
        let filtration = dims.iter().map(|&n| vec![Subspace::full(n)]).collect();
        Self::new(dims, d, filtration)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn max_filtration(&self) -> usize {
        self.max_p
    }

    pub fn differential(&self, k: usize) -> &Matrix {
        &self.d[k]
    }

    /// `F^p C^k`, zero past the last level.
    pub fn level(&self, p: usize, k: usize) -> Subspace {
        match self.filtration[k].get(p) {
            Some(f) => f.clone(),
            None => Subspace::zero(self.dims[k]),
        }
    }

    /// Cohomology dimensions from ranks alone.
    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.d.iter().map(Matrix::rank).collect();
        (0..self.dims.len())
            .map(|k| self.dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect()
    }

    fn cell_quotient(&self, r: usize, p: usize, k: usize) -> Result<Quotient, EngineError> {
        let fp = self.level(p, k);
        let z = if k < self.top_degree() {
            fp.intersect(&preimage(&self.d[k], &self.level(p + r, k + 1))?)?
        } else {
            fp.clone()
        };
        let mut b = self.level(p + 1, k).intersect(&z)?;
        if k > 0 {
            let src = self.level((p + 1).saturating_sub(r), k - 1);
            let boundaries = src.image_under(&self.d[k - 1])?.intersect(&fp)?;
            b = b.sum(&boundaries)?;
        }
        Ok(quotient(&z, &b)?)
    }

    /// The page `E_r` with all of its differentials.
    pub fn compute_page(&self, r: usize) -> Result<SpectralPage, EngineError> {
        let top = self.top_degree();
        let keys: Vec<(usize, usize)> = (0..=self.max_p)
            .flat_map(|p| (0..=top).map(move |k| (p, k)))
            .collect();
        let quotients: Vec<Quotient> = keys
            .par_iter()
            .map(|&(p, k)| self.cell_quotient(r, p, k))
            .collect::<Result<_, _>>()?;
        let by_key: BTreeMap<(usize, usize), &Quotient> =
            keys.iter().copied().zip(quotients.iter()).collect();

        let differentials: Vec<Matrix> =
            keys.par_iter()
                .map(|&(p, k)| {
                    let src = by_key[&(p, k)];
                    if k == top {
                        return Ok(Matrix::zeros(0, src.dim()));
                    }
                    match by_key.get(&(p + r, k + 1)) {
                        Some(dst) => Ok(induced_map(&self.d[k], src, dst)?),
                        // the target lies past the last filtration level
                        None => {
                            debug_assert!(src.section.columns().iter().all(|v| self.d[k]
                                .mul_vec(v)
                                .iter()
                                .all(num_traits::Zero::is_zero)));
                            Ok(Matrix::zeros(0, src.dim()))
                        }
                    }
                })
                .collect::<Result<_, EngineError>>()?;

        let mut cells = BTreeMap::new();
        for ((&(p, k), q), dr) in keys.iter().zip(quotients).zip(differentials) {
            cells.insert(
                (p, k as i64 - p as i64),
                Cell {
                    dim: q.dim(),
                    quotient: q,
                    d_r: dr,
                },
            );
        }
        Ok(SpectralPage { r, cells })
    }

    /// Computes pages until the spectral sequence has degenerated and
    /// reports the first page from which every differential vanishes.
    ///
    /// `dim E_{r+1} < dim E_r` whenever some `d_r` is nonzero, and the limit
    /// has the total dimension of `H`, so the first page whose total
    /// dimension equals `dim H` is the stable one.
    pub fn run_to_convergence(&self) -> Result<Convergence, EngineError> {
        let target: usize = self.cohomology_dims().iter().sum();
        let last = self.max_p + 2;
        let mut pages = Vec::new();
        for r in 0..=last {
            let page = self.compute_page(r)?;
            let total: usize = page.cells.values().map(|c| c.dim).sum();
            pages.push(page);
            if total == target {
                break;
            }
        }
        let stable_at = pages.len() - 1;
        assert!(
            pages[stable_at].differentials_vanish(),
            "a page of the size of the abutment must have zero differentials"
        );
        Ok(Convergence { pages, stable_at })
    }

    /// Every page up to and including `E_r`.
    pub fn pages_through(&self, r: usize) -> Result<Vec<SpectralPage>, EngineError> {
        (0..=r).map(|i| self.compute_page(i)).collect()
    }

    /// `Σ_{p+q=k} dim E_∞^{p,q} = dim H^k` for every `k`.
    pub fn check_abutment(&self) -> Result<bool, EngineError> {
        let conv = self.run_to_convergence()?;
        Ok(conv.infinity_page().total_dims(self.top_degree()) == self.cohomology_dims())
    }
}

/// One cell `E_r^{p,q}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// `Z / B` with representatives inside `F^p C^{p+q}`.
    pub quotient: Quotient,
    /// `d_r: E_r^{p,q} -> E_r^{p+r, q-r+1}`.
    pub d_r: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub cells: BTreeMap<(usize, i64), Cell>,
}

impl SpectralPage {
    pub fn cell(&self, p: usize, q: i64) -> Option<&Cell> {
        self.cells.get(&(p, q))
    }

    pub fn dim(&self, p: usize, q: i64) -> usize {
        self.cell(p, q).map_or(0, |c| c.dim)
    }

    pub fn differentials_vanish(&self) -> bool {
        self.cells.values().all(|c| c.d_r.is_zero())
    }

    /// Nonzero cells as `(p, q, dim)`.
    pub fn dim_table(&self) -> Vec<(usize, i64, usize)> {
        self.cells
            .iter()
            .filter(|(_, c)| c.dim > 0)
            .map(|(&(p, q), c)| (p, q, c.dim))
            .collect()
    }

    /// `Σ_{p+q=k} dim E^{p,q}` for `k = 0..=top`.
    pub fn total_dims(&self, top: usize) -> Vec<usize> {
        let mut out = vec![0; top + 1];
        for (&(p, q), c) in &self.cells {
            let k = p as i64 + q;
            if (0..=top as i64).contains(&k) {
                out[k as usize] += c.dim;
            }
        }
        out
    }

    /// Dimension grid `grid[q][p]` over `p = 0..=max_p`, `q = q_min..=q_max`
    /// (rows listed from `q_min`).
    pub fn grid(&self) -> PageGrid {
        let max_p = self.cells.keys().map(|k| k.0).max().unwrap_or(0);
        let nonzero: Vec<i64> = self
            .cells
            .iter()
            .filter(|(_, c)| c.dim > 0)
            .map(|(k, _)| k.1)
            .collect();
        let q_min = nonzero.iter().copied().min().unwrap_or(0).min(0);
        let q_max = nonzero.iter().copied().max().unwrap_or(0).max(0);
        let rows = (q_min..=q_max)
            .map(|q| (0..=max_p).map(|p| self.dim(p, q)).collect())
            .collect();
        PageGrid {
            r: self.r,
            q_min,
            rows,
        }
    }
}

/// Serializable page summary: `rows[i][p] = dim E_r^{p, q_min + i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageGrid {
    pub r: usize,
    pub q_min: i64,
    pub rows: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Convergence {
    pub pages: Vec<SpectralPage>,
    pub stable_at: usize,
}

impl Convergence {
    pub fn infinity_page(&self) -> &SpectralPage {
        self.pages.last().expect("at least one page")
    }
}

/// `dim E_{r+1}^{p,q} = dim Ker d_r^{p,q} - rank d_r^{p-r,q+r-1}` on every
/// cell. Returns the offending cells.
pub fn page_turning_violations(page: &SpectralPage, next: &SpectralPage) -> Vec<(usize, i64)> {
    let r = page.r as i64;
    page.cells
        .iter()
        .filter_map(|(&(p, q), cell)| {
            let kernel = cell.dim - cell.d_r.rank();
            let incoming = (p as i64 - r >= 0)
                .then(|| page.cell((p as i64 - r) as usize, q + r - 1))
                .flatten()
                .map_or(0, |c| c.d_r.rank());
            (next.dim(p, q) != kernel - incoming).then_some((p, q))
        })
        .collect()
}
