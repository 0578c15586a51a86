//! Finite models of basic cohomology `H^0 ⊕ … ⊕ H^{2n}` with the operator
//! `L` (cup product with the transverse symplectic class).

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{int, kernel_basis, LinalgError, Matrix, Rational, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LefschetzError {
    #[error("expected {expected} degree dimensions (0..=2n), found {found}")]
    DimsLength { expected: usize, found: usize },
    #[error("expected {expected} L maps, found {found}")]
    MapsLength { expected: usize, found: usize },
    #[error("L map in degree {degree} should be {rows}x{cols}, found {found_rows}x{found_cols}")]
    MapShape {
        degree: usize,
        rows: usize,
        cols: usize,
        found_rows: usize,
        found_cols: usize,
    },
    #[error("degree {degree} is outside 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("vector has {found} coordinates, H^{degree} has dimension {expected}")]
    VectorLength {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("hard Lefschetz fails: L^{k} is not an isomorphism H^(n-{k}) -> H^(n+{k})")]
    HlpViolated { k: usize },
    #[error("primitive dimensions must have n + 1 entries with primitive_dims[0] >= 1")]
    BadPrimitiveDims,
    #[error("no Lefschetz block can be broken for these primitive dimensions")]
    NothingToBreak,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Graded vector space `H^0..H^{2n}` with `L: H^p -> H^{p+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzModule {
    n: usize,
    dims: Vec<usize>,
    l_maps: Vec<Matrix>,
    labels: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub hlp: bool,
    pub failing_degree: Option<usize>,
    pub primitive_dims: Vec<usize>,
    pub kernel_l_dims: Vec<usize>,
}

impl LefschetzModule {
    /// `l_maps[p]` is the `dims[p+2] x dims[p]` matrix of `L` on `H^p`; for
    /// `p + 2 > 2n` it must be `0 x dims[p]`.
    pub fn new(n: usize, dims: Vec<usize>, l_maps: Vec<Matrix>) -> Result<Self, LefschetzError> {
        let top = 2 * n;
        if dims.len() != top + 1 {
            return Err(LefschetzError::DimsLength {
                expected: top + 1,
                found: dims.len(),
            });
        }
        if l_maps.len() != top + 1 {
            return Err(LefschetzError::MapsLength {
                expected: top + 1,
                found: l_maps.len(),
            });
        }
        for (p, m) in l_maps.iter().enumerate() {
            let rows = dims.get(p + 2).copied().unwrap_or(0);
            if m.rows() != rows || m.cols() != dims[p] {
                return Err(LefschetzError::MapShape {
                    degree: p,
                    rows,
                    cols: dims[p],
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
        }
        Ok(LefschetzModule {
            n,
            dims,
            l_maps,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Vec<String>>) -> Self {
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[Vec<String>]> {
        self.labels.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        2 * self.n
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim H^p`, zero outside `0..=2n`.
    pub fn dim(&self, p: usize) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn l_map(&self, p: usize) -> &Matrix {
        &self.l_maps[p]
    }

    pub fn l_maps(&self) -> &[Matrix] {
        &self.l_maps
    }

    /// `L^k: H^p -> H^{p+2k}`.
    pub fn l_power(&self, p: usize, k: usize) -> Matrix {
        let mut acc = Matrix::identity(self.dim(p));
        for step in 0..k {
            let deg = p + 2 * step;
            if deg > self.top_degree() {
                return Matrix::zeros(0, self.dim(p));
            }
            acc = self.l_maps[deg].mul(&acc);
        }
        acc
    }

    pub fn apply_l(&self, p: usize, v: &[Rational]) -> Vec<Rational> {
        self.l_maps[p].mul_vec(v)
    }

    fn check_degree(&self, p: usize) -> Result<(), LefschetzError> {
        if p > self.top_degree() {
            return Err(LefschetzError::DegreeOutOfRange {
                degree: p,
                top: self.top_degree(),
            });
        }
        Ok(())
    }

    /// Smallest `k` for which `L^k: H^{n-k} -> H^{n+k}` is not an
    /// isomorphism.
    pub fn hlp_failure(&self) -> Option<usize> {
        (0..=self.n).find(|&k| {
            let src = self.n - k;
            let m = self.l_power(src, k);
            m.rows() != m.cols() || m.rank() != m.cols()
        })
    }

    pub fn is_hlp(&self) -> bool {
        self.hlp_failure().is_none()
    }

    pub fn check_hard_lefschetz(&self) -> LefschetzReport {
        let failing_degree = self.hlp_failure();
        LefschetzReport {
            hlp: failing_degree.is_none(),
            failing_degree,
            primitive_dims: (0..=self.top_degree())
                .map(|p| self.primitive_subspace(p).dim())
                .collect(),
            kernel_l_dims: (0..=self.top_degree())
                .map(|p| self.kernel_l(p).dim())
                .collect(),
        }
    }

    /// `Ker(L^{n-p+1}) ⊆ H^p` for `p <= n`, and zero above the middle degree.
    pub fn primitive_subspace(&self, p: usize) -> Subspace {
        if p > self.n {
            return Subspace::zero(self.dim(p));
        }
        kernel_basis(&self.l_power(p, self.n - p + 1))
    }

    /// `Ker(L: H^p -> H^{p+2})`.
    pub fn kernel_l(&self, p: usize) -> Subspace {
        kernel_basis(&self.l_maps[p])
    }

    /// `L^{p-n} PH^{2n-p}` for `p >= n`. Under hard Lefschetz this equals
    /// `kernel_l(p)`.
    pub fn kernel_l_from_primitives(&self, p: usize) -> Option<Subspace> {
        if p < self.n || p > self.top_degree() {
            return None;
        }
        let src = 2 * self.n - p;
        self.primitive_subspace(src)
            .image_under(&self.l_power(src, p - self.n))
            .ok()
    }

    pub fn primitive_dims(&self) -> Vec<usize> {
        (0..=self.n)
            .map(|p| self.primitive_subspace(p).dim())
            .collect()
    }

    pub fn kernel_l_dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|p| self.kernel_l(p).dim())
            .collect()
    }

    /// Homological orientability of the model: `dim H^{2n} = 1`.
    pub fn check_top_degree(&self) -> bool {
        self.dims[self.top_degree()] == 1
    }

    /// Writes `v ∈ H^p` as `Σ_i L^i β_i` with `β_i` primitive of degree
    /// `p - 2i`. Zero components are omitted. Requires hard Lefschetz.
    pub fn lefschetz_decompose_class(
        &self,
        p: usize,
        v: &[Rational],
    ) -> Result<Vec<(usize, Vec<Rational>)>, LefschetzError> {
        self.check_degree(p)?;
        if v.len() != self.dim(p) {
            return Err(LefschetzError::VectorLength {
                degree: p,
                expected: self.dim(p),
                found: v.len(),
            });
        }
        if let Some(k) = self.hlp_failure() {
            return Err(LefschetzError::HlpViolated { k });
        }
        let mut blocks = Vec::new();
        let mut columns = Vec::new();
        for i in 0..=p / 2 {
            let j = p - 2 * i;
            if j > self.n {
                continue;
            }
            let prim = self.primitive_subspace(j);
            let lift = self.l_power(j, i);
            for b in prim.vectors() {
                columns.push(lift.mul_vec(b));
            }
            blocks.push((i, prim));
        }
        let m = Matrix::from_columns(self.dim(p), &columns);
        let coeffs = m.solve(v).ok_or(LefschetzError::HlpViolated { k: 0 })?;
        let mut out = Vec::new();
        let mut offset = 0;
        for (i, prim) in blocks {
            let j = p - 2 * i;
            let mut beta = vec![Rational::zero(); self.dim(j)];
            for (b, c) in prim.vectors().iter().zip(&coeffs[offset..]) {
                for (x, y) in beta.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            offset += prim.dim();
            if beta.iter().any(|x| !x.is_zero()) {
                out.push((i, beta));
            }
        }
        Ok(out)
    }

    /// `Σ_i L^i β_i` in `H^p`.
    pub fn reconstruct_class(
        &self,
        p: usize,
        components: &[(usize, Vec<Rational>)],
    ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim(p)];
        for (i, beta) in components {
            let lifted = self.l_power(p - 2 * i, *i).mul_vec(beta);
            for (x, y) in out.iter_mut().zip(lifted) {
                *x += y;
            }
        }
        out
    }

    /// Conjugates every `L_p` by the graded automorphism `g`:
    /// `L'_p = g_{p+2} L_p g_p^{-1}`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<Self, LefschetzError> {
        let inverses: Vec<Matrix> = g.iter().map(Matrix::inverse).collect::<Result<_, _>>()?;
        let l_maps = (0..=self.top_degree())
            .map(|p| {
                if p + 2 > self.top_degree() {
                    self.l_maps[p].clone()
                } else {
                    g[p + 2].mul(&self.l_maps[p]).mul(&inverses[p])
                }
            })
            .collect();
        Self::new(self.n, self.dims.clone(), l_maps)
    }
}

/// Degree of the `(j, i)` block `L^i P^j`.
fn block_degree(j: usize, i: usize) -> usize {
    j + 2 * i
}

/// Layout of the free module: for each degree, the list of
/// `(j, i, offset)` blocks in order of increasing `j`.
fn free_layout(n: usize, pdims: &[usize]) -> Vec<Vec<(usize, usize, usize)>> {
    let mut layout = vec![Vec::new(); 2 * n + 1];
    for j in 0..pdims.len() {
        for i in 0..=n - j {
            layout[block_degree(j, i)].push((j, i, 0));
        }
    }
    for blocks in &mut layout {
        blocks.sort();
        let mut off = 0;
        for b in blocks.iter_mut() {
            b.2 = off;
            off += pdims[b.0];
        }
    }
    layout
}

fn validate_pdims(n: usize, pdims: &[usize]) -> Result<(), LefschetzError> {
    if pdims.len() != n + 1 || pdims[0] == 0 {
        return Err(LefschetzError::BadPrimitiveDims);
    }
    Ok(())
}

/// The free module `H^r = ⊕_{j + 2i = r, i <= n - j} L^i P^j` with `L`
/// shifting `i -> i + 1`. `broken` lists `(j, i)` blocks whose `L` is set
/// to zero.
fn free_module_with(
    n: usize,
    pdims: &[usize],
    broken: &[(usize, usize)],
) -> Result<LefschetzModule, LefschetzError> {
    validate_pdims(n, pdims)?;
    let layout = free_layout(n, pdims);
    let dims: Vec<usize> = layout
        .iter()
        .map(|bl| bl.iter().map(|b| pdims[b.0]).sum())
        .collect();
    let mut l_maps: Vec<Matrix> = (0..=2 * n)
        .map(|p| Matrix::zeros(dims.get(p + 2).copied().unwrap_or(0), dims[p]))
        .collect();
    for (p, blocks) in layout.iter().enumerate() {
        for &(j, i, off) in blocks {
            if i + 1 > n - j || broken.contains(&(j, i)) {
                continue;
            }
            let (_, _, dst_off) = *layout[p + 2]
                .iter()
                .find(|b| b.0 == j && b.1 == i + 1)
                .expect("next block exists");
            for c in 0..pdims[j] {
                l_maps[p][(dst_off + c, off + c)] = int(1);
            }
        }
    }
    let labels = layout
        .iter()
        .map(|blocks| {
            blocks
                .iter()
                .flat_map(|&(j, i, _)| {
                    (0..pdims[j]).map(move |c| match i {
                        0 => format!("p{j}.{c}"),
                        1 => format!("L p{j}.{c}"),
                        _ => format!("L^{i} p{j}.{c}"),
                    })
                })
                .collect()
        })
        .collect();
    Ok(LefschetzModule::new(n, dims, l_maps)?.with_labels(labels))
}

/// Unconjugated free hard-Lefschetz module on the given primitive blocks.
pub fn free_hlp_module(n: usize, pdims: &[usize]) -> Result<LefschetzModule, LefschetzError> {
    free_module_with(n, pdims, &[])
}

fn random_unipotent(rng: &mut ChaCha8Rng, d: usize) -> Matrix {
    let mut upper = Matrix::identity(d);
    let mut lower = Matrix::identity(d);
    for i in 0..d {
        for j in i + 1..d {
            upper[(i, j)] = int(rng.gen_range(-2..=2));
            lower[(j, i)] = int(rng.gen_range(-1..=1));
        }
    }
    upper.mul(&lower)
}

fn randomly_conjugate(
    module: &LefschetzModule,
    rng: &mut ChaCha8Rng,
) -> Result<LefschetzModule, LefschetzError> {
    let g: Vec<Matrix> = module
        .dims()
        .iter()
        .map(|&d| random_unipotent(rng, d))
        .collect();
    module.conjugate(&g)
}

/// Seeded hard-Lefschetz module with the given primitive dimensions
/// (`primitive_dims[j] = dim PH^j`, `j = 0..=n`), conjugated by a random
/// unipotent graded automorphism so that `L` has no visible block structure.
pub fn generate_hlp_module(
    seed: u64,
    n: usize,
    primitive_dims: &[usize],
) -> Result<LefschetzModule, LefschetzError> {
    let free = free_hlp_module(n, primitive_dims)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    randomly_conjugate(&free, &mut rng)
}

/// Like [`generate_hlp_module`] but with one `L` block zeroed, so hard
/// Lefschetz fails while the dimensions stay symmetric.
pub fn generate_non_hlp_module(
    seed: u64,
    n: usize,
    primitive_dims: &[usize],
) -> Result<LefschetzModule, LefschetzError> {
    validate_pdims(n, primitive_dims)?;
    let candidates: Vec<(usize, usize)> = (0..=n)
        .filter(|&j| primitive_dims[j] > 0)
        .flat_map(|j| (0..n - j).map(move |i| (j, i)))
        .collect();
    if candidates.is_empty() {
        return Err(LefschetzError::NothingToBreak);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = candidates[rng.gen_range(0..candidates.len())];
    let broken = free_module_with(n, primitive_dims, &[pick])?;
    randomly_conjugate(&broken, &mut rng)
}

/// Arbitrary module: random dimensions in `0..=max_dim` (with
/// `dims[0] >= 1`) and random integer `L` matrices. Usually not hard
/// Lefschetz.
pub fn generate_random_module(seed: u64, n: usize, max_dim: usize) -> LefschetzModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = max_dim.max(1);
    let dims: Vec<usize> = (0..=2 * n)
        .map(|p| {
            if p == 0 {
                rng.gen_range(1..=max_dim)
            } else {
                rng.gen_range(0..=max_dim)
            }
        })
        .collect();
    let l_maps = (0..=2 * n)
        .map(|p| {
            let rows = dims.get(p + 2).copied().unwrap_or(0);
            let mut m = Matrix::zeros(rows, dims[p]);
            for i in 0..rows {
                for j in 0..dims[p] {
                    m[(i, j)] = int(rng.gen_range(-2..=2));
                }
            }
            m
        })
        .collect();
    LefschetzModule::new(n, dims, l_maps).expect("shapes are consistent by construction")
}

/// Random primitive dimensions for `n`, each in `0..=max`, with at least
/// one class in degree 0.
pub fn random_primitive_dims(rng: &mut impl Rng, n: usize, max: usize) -> Vec<usize> {
    let max = max.max(1);
    (0..=n)
        .map(|j| {
            if j == 0 {
                rng.gen_range(1..=max)
            } else {
                rng.gen_range(0..=max)
            }
        })
        .collect()
}

/// Standard textbook bases used by the presets.
pub mod standard {
    use super::*;

    /// `H(point)`, `n = 0`.
    pub fn point() -> LefschetzModule {
        LefschetzModule::new(0, vec![1], vec![Matrix::zeros(0, 1)])
            .expect("valid")
            .with_labels(vec![vec!["1".into()]])
    }

    /// `H(CP^1)` with `L 1 = ω`.
    pub fn cp1() -> LefschetzModule {
        LefschetzModule::new(
            1,
            vec![1, 0, 1],
            vec![
                Matrix::from_i64(&[&[1]]),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 1),
            ],
        )
        .expect("valid")
        .with_labels(vec![vec!["1".into()], vec![], vec!["ω".into()]])
    }

    /// `H(CP^2)` with `L 1 = ω`, `L ω = ω²`.
    pub fn cp2() -> LefschetzModule {
        LefschetzModule::new(
            2,
            vec![1, 0, 1, 0, 1],
            vec![
                Matrix::from_i64(&[&[1]]),
                Matrix::zeros(0, 0),
                Matrix::from_i64(&[&[1]]),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 1),
            ],
        )
        .expect("valid")
        .with_labels(vec![
            vec!["1".into()],
            vec![],
            vec!["ω".into()],
            vec![],
            vec!["ω²".into()],
        ])
    }

    /// `H(S^2 x S^2)` with `ω = a + b`, `a² = b² = 0`, `ab` the top class.
    pub fn s2_x_s2() -> LefschetzModule {
        LefschetzModule::new(
            2,
            vec![1, 0, 2, 0, 1],
            vec![
                Matrix::from_i64(&[&[1], &[1]]),
                Matrix::zeros(0, 0),
                Matrix::from_i64(&[&[1, 1]]),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 1),
            ],
        )
        .expect("valid")
        .with_labels(vec![
            vec!["1".into()],
            vec![],
            vec!["a".into(), "b".into()],
            vec![],
            vec!["ab".into()],
        ])
    }

    /// `H(T^2)` with `ω = dx ∧ dy`.
    pub fn t2() -> LefschetzModule {
        LefschetzModule::new(
            1,
            vec![1, 2, 1],
            vec![
                Matrix::from_i64(&[&[1]]),
                Matrix::zeros(0, 2),
                Matrix::zeros(0, 1),
            ],
        )
        .expect("valid")
        .with_labels(vec![
            vec!["1".into()],
            vec!["dx".into(), "dy".into()],
            vec!["dx∧dy".into()],
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::standard::*;
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn hard_lefschetz_examples() {
        let r = cp1().check_hard_lefschetz();
        assert!(r.hlp);
        assert_eq!(r.failing_degree, None);

        let broken = LefschetzModule::new(
            1,
            vec![1, 0, 1],
            vec![
                Matrix::zeros(1, 1),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 1),
            ],
        )
        .unwrap();
        let r = broken.check_hard_lefschetz();
        assert!(!r.hlp);
        assert_eq!(r.failing_degree, Some(1));

        let m = generate_hlp_module(7, 2, &[1, 2, 1]).unwrap();
        assert_eq!(m.dims(), &[1, 2, 2, 2, 1]);
        assert!(m.check_hard_lefschetz().hlp);
    }

    #[test]
    fn primitive_examples() {
        let m = generate_hlp_module(3, 2, &[1, 1, 2]).unwrap();
        assert_eq!(m.primitive_subspace(0), Subspace::full(1));
        assert_eq!(cp2().primitive_subspace(2).dim(), 0);
        for p in 0..=4 {
            if p == 2 {
                assert_eq!(m.primitive_subspace(2), m.kernel_l(2));
            }
        }
        assert_eq!(s2_x_s2().primitive_dims(), vec![1, 0, 1]);
    }

    #[test]
    fn kernel_l_examples() {
        assert_eq!(cp1().kernel_l(0).dim(), 0);
        assert_eq!(cp1().kernel_l(2), Subspace::full(1));
        assert_eq!(cp2().kernel_l(3).dim(), 0);
    }

    #[test]
    fn generate_examples() {
        let m = generate_hlp_module(1, 0, &[1]).unwrap();
        assert_eq!(m.dims(), &[1]);
        let m = generate_hlp_module(1, 1, &[1, 0]).unwrap();
        assert_eq!(m.dims(), &[1, 0, 1]);
        let m = generate_hlp_module(1, 2, &[1, 0, 1]).unwrap();
        assert_eq!(m.dims(), &[1, 0, 2, 0, 1]);
        assert!(m.check_top_degree());
        assert!(matches!(
            generate_hlp_module(1, 2, &[0, 1, 1]),
            Err(LefschetzError::BadPrimitiveDims)
        ));
        // deterministic
        assert_eq!(
            generate_hlp_module(99, 3, &[2, 1, 0, 2]).unwrap(),
            generate_hlp_module(99, 3, &[2, 1, 0, 2]).unwrap()
        );
    }

    #[test]
    fn non_hlp_generator_fails_hlp() {
        for seed in 0..20 {
            let m = generate_non_hlp_module(seed, 2, &[1, 1, 1]).unwrap();
            assert!(!m.is_hlp());
            assert_eq!(m.dims(), &[1, 1, 2, 1, 1]);
        }
        assert_eq!(
            generate_non_hlp_module(0, 1, &[0, 2]),
            Err(LefschetzError::BadPrimitiveDims)
        );
    }

    #[test]
    fn top_degree_examples() {
        assert!(cp1().check_top_degree());
        let m = LefschetzModule::new(
            1,
            vec![1, 0, 0],
            vec![
                Matrix::zeros(0, 1),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 0),
            ],
        )
        .unwrap();
        assert!(!m.check_top_degree());
    }

    #[test]
    fn decompose_examples() {
        let m = generate_hlp_module(11, 2, &[1, 0, 2]).unwrap();
        let prim = m.primitive_subspace(2);
        let v = prim.vectors()[0].clone();
        assert_eq!(
            m.lefschetz_decompose_class(2, &v).unwrap(),
            vec![(0, v.clone())]
        );

        let w = m.primitive_subspace(0).vectors()[0].clone();
        let lw = m.apply_l(0, &w);
        assert_eq!(m.lefschetz_decompose_class(2, &lw).unwrap(), vec![(1, w)]);

        let v: Vec<Rational> = vec![ratio(3, 2), int(-1), int(4)];
        let parts = m.lefschetz_decompose_class(2, &v).unwrap();
        assert_eq!(m.reconstruct_class(2, &parts), v);
        for (i, beta) in &parts {
            assert!(m.primitive_subspace(2 - 2 * i).contains_vector(beta));
        }

        let broken = generate_non_hlp_module(0, 1, &[1, 0]).unwrap();
        assert!(matches!(
            broken.lefschetz_decompose_class(0, &[int(1)]),
            Err(LefschetzError::HlpViolated { .. })
        ));
    }

    #[test]
    fn shape_validation() {
        let err = LefschetzModule::new(1, vec![1, 0, 1], vec![Matrix::zeros(1, 1)]).unwrap_err();
        assert!(matches!(err, LefschetzError::MapsLength { .. }));
        let err = LefschetzModule::new(
            1,
            vec![1, 0, 1],
            vec![
                Matrix::zeros(2, 1),
                Matrix::zeros(0, 0),
                Matrix::zeros(0, 1),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, LefschetzError::MapShape { degree: 0, .. }));
    }

    #[test]
    fn standard_models_have_hlp() {
        for m in [point(), cp1(), cp2(), s2_x_s2(), t2()] {
            assert!(m.is_hlp(), "{m:?}");
        }
    }
}
