//! Acceptance suite: one PASS/FAIL line per criterion, with pinned seeds,
//! tolerances (all comparisons are exact), and runtime limits.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::time::{Duration, Instant};

use common::{bits, c_model, e2_model, oracle_star, oracle_wedge, s_model, BaseKind, SuiteModel};
use invariant_sseq::lefschetz::generate_hlp_module;
use invariant_sseq::linalg::{ratio, Rational};
use invariant_sseq::model::preset;
use invariant_sseq::spectral::FilteredComplex;
use invariant_sseq::transverse::{
    check_star_relation, eta_product, full_hodge_star, hodge_star_transverse, j_action, l_power,
    lambda_op, lefschetz_l, metric, primitive_decompose, symplectic_star, wedge, Frame,
    Multivector,
};
use invariant_sseq::verify::{
    basic_betti_from_derham, expected_dims_main_c, expected_dims_main_s, model_star_duality,
    primitive_betti_from_derham, verify_e2, verify_harmonic_basis_c, verify_harmonic_basis_s,
    verify_main_c, verify_main_s,
};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const E2_SEEDS: u64 = 200;
const S_SEEDS: u64 = 100;
const C_SEEDS: u64 = 100;
const DECOMPOSE_SAMPLES: usize = 1000;

const E2_LIMIT: Duration = Duration::from_secs(60);
const S_LIMIT: Duration = Duration::from_secs(300);
const C_LIMIT: Duration = Duration::from_secs(60);
const STAR_LIMIT: Duration = Duration::from_secs(30);

struct Criterion {
    id: usize,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn choose(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
}

fn within(elapsed: Duration, limit: Duration) -> (bool, String) {
    (
        elapsed < limit,
        format!(
            "{:.1} s, limit {} s",
            elapsed.as_secs_f64(),
            limit.as_secs()
        ),
    )
}

/// `Σ_q C(s-1, q) (pdim[k-q] + zdim[k-q-1])` with `zdim[d] = pdim[2n-d]`
/// for `d >= n`: on a free hard Lefschetz module the kernel of `L` is
/// spanned by the tops `L^{n-j} b` of the strings.
fn oracle_main_s(n: usize, s: usize, pdims: &[usize]) -> Vec<usize> {
    let pdim = |j: i64| {
        if (0..=n as i64).contains(&j) {
            pdims[j as usize]
        } else {
            0
        }
    };
    let zdim = |d: i64| {
        if d >= n as i64 && d <= 2 * n as i64 {
            pdims[2 * n - d as usize]
        } else {
            0
        }
    };
    (0..=2 * n + s)
        .map(|k| {
            (0..s)
                .map(|q| {
                    let j = k as i64 - q as i64;
                    choose(s - 1, q) * (pdim(j) + zdim(j - 1))
                })
                .sum()
        })
        .collect()
}

fn oracle_convolution(dims: &[usize], s: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len() + s];
    for (p, d) in dims.iter().enumerate() {
        for q in 0..=s {
            out[p + q] += d * choose(s, q);
        }
    }
    out
}

fn base_dims_from_primitives(n: usize, pdims: &[usize]) -> Vec<usize> {
    let mut dims = vec![0; 2 * n + 1];
    for (j, &d) in pdims.iter().enumerate() {
        for i in 0..=n - j {
            dims[j + 2 * i] += d;
        }
    }
    dims
}

fn criterion_second_page(models: &[SuiteModel], elapsed_models: Duration) -> Criterion {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in models {
        let c = &m.complex;
        let report = verify_e2(c).unwrap();
        let e2 = c.filtered_complex().unwrap().compute_page(2).unwrap();
        let oracle_ok = (0..=c.base().top_degree()).all(|p| {
            (0..=c.s()).all(|q| e2.dim(p, q as i64) == c.base().dim(p) * choose(c.s(), q))
        });
        if !report.passed() || !oracle_ok {
            failures.push(m.seed);
        }
    }
    let (fast, timing) = within(start.elapsed() + elapsed_models, E2_LIMIT);
    Criterion {
        id: 1,
        name: "second page is H_b ⊗ Λ⟨η⟩ with d_0 = d_1 = 0",
        passed: failures.is_empty() && fast,
        detail: format!(
            "{}/{} models exact; failing seeds {:?}; {timing}",
            models.len() - failures.len(),
            models.len(),
            failures
        ),
    }
}

fn criterion_s_type(models: &[SuiteModel]) -> Criterion {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut max_stable = 0;
    for m in models {
        let c = &m.complex;
        let pdims = m.primitive_dims.as_ref().unwrap();
        let oracle = oracle_main_s(c.n(), c.s(), pdims);
        let report = verify_main_s(c).unwrap();
        let conv = c.filtered_complex().unwrap().run_to_convergence().unwrap();
        max_stable = max_stable.max(conv.stable_at);
        let ok = report.passed()
            && expected_dims_main_s(c.base(), c.s()).unwrap() == oracle
            && conv.infinity_page().total_dims(c.top_degree()) == oracle
            && c.cohomology_dims().unwrap() == oracle
            && conv.stable_at <= 3;
        if !ok {
            failures.push(m.seed);
        }
    }
    let (fast, timing) = within(start.elapsed(), S_LIMIT);
    Criterion {
        id: 2,
        name: "S-type: degenerates by E_3, H = Λ_PH⟨η_1-η_i⟩ ⊕ η_1 Λ_KerL⟨η_i⟩",
        passed: failures.is_empty() && fast,
        detail: format!(
            "{}/{} models exact; latest degeneration page {max_stable}; failing seeds {:?}; {timing}",
            models.len() - failures.len(),
            models.len(),
            failures
        ),
    }
}

fn criterion_c_type(models: &[SuiteModel]) -> Criterion {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut without_hlp = 0;
    for m in models {
        let c = &m.complex;
        if !c.base().is_hlp() {
            without_hlp += 1;
        }
        let oracle = oracle_convolution(c.base().dims(), c.s());
        let report = verify_main_c(c).unwrap();
        let conv = c.filtered_complex().unwrap().run_to_convergence().unwrap();
        let ok = report.passed()
            && expected_dims_main_c(c.base(), c.s()) == oracle
            && conv.infinity_page().total_dims(c.top_degree()) == oracle
            && conv.stable_at <= 2;
        if !ok {
            failures.push(m.seed);
        }
    }
    let (fast, timing) = within(start.elapsed(), C_LIMIT);
    Criterion {
        id: 3,
        name: "C-type: degenerates by E_2, H = H_b ⊗ Λ⟨η⟩, no Lefschetz hypothesis",
        passed: failures.is_empty() && fast && without_hlp > 0,
        detail: format!(
            "{}/{} models exact ({without_hlp} without hard Lefschetz); failing seeds {:?}; {timing}",
            models.len() - failures.len(),
            models.len(),
            failures
        ),
    }
}

fn criterion_recursions(s_models: &[SuiteModel], c_models: &[SuiteModel]) -> Criterion {
    let mut checked = 0;
    let mut failures = Vec::new();
    for m in s_models {
        let c = &m.complex;
        let pdims = m.primitive_dims.clone().unwrap();
        let basic = base_dims_from_primitives(c.n(), &pdims);
        for betti in [
            expected_dims_main_s(c.base(), c.s()).unwrap(),
            c.cohomology_dims().unwrap(),
        ] {
            checked += 1;
            let got = primitive_betti_from_derham(&betti, c.s(), c.n()).ok();
            if got != Some((pdims.clone(), basic.clone())) || basic != c.base().dims() {
                failures.push(format!("S seed {}", m.seed));
            }
        }
    }
    for m in c_models {
        let c = &m.complex;
        for betti in [
            expected_dims_main_c(c.base(), c.s()),
            c.cohomology_dims().unwrap(),
        ] {
            checked += 1;
            if basic_betti_from_derham(&betti, c.s()).ok().as_deref() != Some(c.base().dims()) {
                failures.push(format!("C seed {}", m.seed));
            }
        }
    }
    Criterion {
        id: 4,
        name: "Betti recursions recover primitive / basic dimensions",
        passed: failures.is_empty(),
        detail: format!("{checked} round trips; failures {failures:?}"),
    }
}

fn criterion_presets() -> Criterion {
    let known: [(&str, &[usize]); 6] = [
        ("hopf-s3", &[1, 0, 0, 1]),
        ("s5", &[1, 0, 0, 0, 0, 1]),
        ("s2xs3", &[1, 0, 1, 1, 0, 1]),
        ("torus-t3", &[1, 3, 3, 1]),
        ("torus-t4", &[1, 4, 6, 4, 1]),
        ("s3xs1", &[1, 1, 0, 1, 1]),
    ];
    let mut wrong = Vec::new();
    for (name, betti) in known {
        let report = invariant_sseq::cli::run_report(&preset(name).unwrap(), None).unwrap();
        if report.cohomology != betti || !report.passed {
            wrong.push(format!("{name}: {:?}", report.cohomology));
        }
    }
    Criterion {
        id: 5,
        name: "presets reproduce known Betti numbers",
        passed: wrong.is_empty(),
        detail: format!("{} presets; mismatches {wrong:?}", known.len()),
    }
}

fn criterion_star() -> Criterion {
    let start = Instant::now();
    let mut cases = 0;
    let mut mismatches = Vec::new();
    for n in 0..=2usize {
        for s in 0..=3usize {
            let frame = Frame::new(n, s);
            let width = 2 * n + s;
            let all_eta = (1u64 << s) - 1;
            for r in 0..=2 * n {
                for alpha in frame.transverse_monomials(r) {
                    let (sign_b, alpha_c) = oracle_star(2 * n, alpha);
                    for subset in 0..=all_eta {
                        cases += 1;
                        let complement = all_eta & !subset;
                        // left side: * (η_I ∧ e_α) straight from the definition
                        let (w1, m) = oracle_wedge(subset << (2 * n), alpha);
                        let (w2, star_m) = oracle_star(width, m);
                        let lhs = (w1 * w2, star_m);
                        // right side: the sign rule applied to η_{I^c} ∧ *_b e_α
                        let inv = bits(subset)
                            .iter()
                            .map(|a| bits(complement).iter().filter(|b| a > b).count())
                            .sum::<usize>();
                        let k = subset.count_ones() as usize;
                        let exponent = inv + (s - k) * r;
                        let (w3, rhs_mask) = oracle_wedge(complement << (2 * n), alpha_c);
                        let sign = if exponent.is_multiple_of(2) { 1 } else { -1 };
                        let rhs = (sign * sign_b * w3, rhs_mask);
                        // library star on the same element
                        let element = wedge(
                            &eta_product(frame, subset),
                            &Multivector::monomial(frame, alpha, Rational::one()),
                        )
                        .unwrap();
                        let lib = full_hodge_star(&element);
                        let lib_ok = lib.terms().count() == 1
                            && lib.coefficient(lhs.1) == Rational::from_integer(lhs.0.into());
                        if lhs != rhs || !lib_ok {
                            mismatches.push((n, s, alpha, subset));
                        }
                    }
                }
            }
            if !check_star_relation(n, s).passed() {
                mismatches.push((n, s, u64::MAX, u64::MAX));
            }
        }
    }
    let (fast, timing) = within(start.elapsed(), STAR_LIMIT);
    Criterion {
        id: 6,
        name: "star relation *(η_I∧α) = ±η_{I^c}∧*_b α, bit-exact",
        passed: mismatches.is_empty() && fast,
        detail: format!("{cases} (n ≤ 2, s ≤ 3, α, I) cases; mismatches {mismatches:?}; {timing}"),
    }
}

fn criterion_operators() -> Criterion {
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 0..=3usize {
        let frame = Frame::transverse(n);
        for r in 0..=2 * n {
            for m in frame.transverse_monomials(r) {
                cases += 1;
                let a = Multivector::monomial(frame, m, Rational::one());
                let star_s = symplectic_star(&a);
                let star_b = hodge_star_transverse(&a);
                let (sign, comp) = oracle_star(2 * n, m);
                let sign_sq = if r * (2 * n - r) % 2 == 0 { 1 } else { -1 };
                let ok = symplectic_star(&star_s) == a
                    && hodge_star_transverse(&star_b)
                        == a.scale(&Rational::from_integer(sign_sq.into()))
                    && star_b
                        == Multivector::monomial(frame, comp, Rational::from_integer(sign.into()))
                    && j_action(&star_s) == star_b;
                if !ok {
                    failures.push((n, m));
                }
                if r + 2 <= 2 * n {
                    let la = lefschetz_l(&a);
                    for b in frame.transverse_monomials(r + 2) {
                        let bv = Multivector::monomial(frame, b, Rational::one());
                        if metric(&la, &bv) != metric(&a, &lambda_op(&bv)) {
                            failures.push((n, b));
                        }
                    }
                }
            }
        }
    }
    Criterion {
        id: 7,
        name: "*_s² = id, *_b² = (-1)^{r(2n-r)}, J*_s = *_b, Λ adjoint to L",
        passed: failures.is_empty(),
        detail: format!(
            "{cases} monomials for n ≤ 3, every pairing for adjointness; failures {failures:?}"
        ),
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=5))
}

fn criterion_decompositions() -> Criterion {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut form_failures = 0;
    for _ in 0..DECOMPOSE_SAMPLES {
        let n = rng.gen_range(1..=3);
        let frame = Frame::transverse(n);
        let r = rng.gen_range(0..=2 * n);
        let basis = frame.transverse_monomials(r);
        let coords: Vec<Rational> = basis
            .iter()
            .map(|_| {
                if rng.gen_bool(0.6) {
                    random_rational(&mut rng)
                } else {
                    Rational::zero()
                }
            })
            .collect();
        let a = Multivector::from_coordinates(frame, r, &basis, &coords);
        let parts = primitive_decompose(&a);
        let mut sum = Multivector::zero(frame, r);
        let mut ok = true;
        for (i, beta) in &parts {
            ok &= beta.degree() + 2 * i == r && beta.degree() <= n && lambda_op(beta).is_zero();
            sum = sum.add(&l_power(beta, *i)).unwrap();
        }
        if !(ok && sum == a) {
            form_failures += 1;
        }
    }
    let mut class_failures = 0;
    for _ in 0..DECOMPOSE_SAMPLES {
        let n = rng.gen_range(1..=4);
        let pdims: Vec<usize> = (0..=n)
            .map(|j| rng.gen_range(usize::from(j == 0)..=2))
            .collect();
        let module = generate_hlp_module(rng.gen(), n, &pdims).unwrap();
        let p = rng.gen_range(0..=2 * n);
        let v: Vec<Rational> = (0..module.dim(p))
            .map(|_| random_rational(&mut rng))
            .collect();
        let parts = module.lefschetz_decompose_class(p, &v).unwrap();
        let primitive = parts
            .iter()
            .all(|(i, beta)| module.primitive_subspace(p - 2 * i).contains_vector(beta));
        if !(primitive && module.reconstruct_class(p, &parts) == v) {
            class_failures += 1;
        }
    }
    Criterion {
        id: 8,
        name: "Lefschetz decompositions of forms and classes are exact and primitive",
        passed: form_failures == 0 && class_failures == 0,
        detail: format!(
            "{DECOMPOSE_SAMPLES} forms ({form_failures} failures), {DECOMPOSE_SAMPLES} classes ({class_failures} failures)"
        ),
    }
}

fn criterion_harmonic(s_models: &[SuiteModel], c_models: &[SuiteModel]) -> Criterion {
    let start = Instant::now();
    let mut failures = Vec::new();
    for m in s_models {
        let basis = verify_harmonic_basis_s(&m.complex).unwrap();
        let duality = model_star_duality(&m.complex).unwrap();
        if !basis.passed() || !duality.passed() {
            failures.push(format!("S seed {}", m.seed));
        }
    }
    for m in c_models {
        if !verify_harmonic_basis_c(&m.complex).unwrap().passed() {
            failures.push(format!("C seed {}", m.seed));
        }
    }
    Criterion {
        id: 9,
        name: "harmonic bases: cocycles, predicted counts, independent classes, star duality",
        passed: failures.is_empty(),
        detail: format!(
            "{} S-type and {} C-type models; failures {failures:?}; {:.1} s",
            s_models.len(),
            c_models.len(),
            start.elapsed().as_secs_f64()
        ),
    }
}

fn criterion_engine(all: &[&SuiteModel]) -> Criterion {
    let mut failures = Vec::new();
    for m in all {
        let c = &m.complex;
        let fc = c.filtered_complex().unwrap();
        let abutment = fc.check_abutment().unwrap();
        let d = (0..=c.top_degree())
            .map(|k| c.differential_matrix(k).clone())
            .collect();
        let trivial = FilteredComplex::trivially_filtered(c.dims(), d).unwrap();
        let conv = trivial.run_to_convergence().unwrap();
        let e1 = trivial.compute_page(1).unwrap().total_dims(c.top_degree());
        let plain = c.cohomology_dims().unwrap();
        if !abutment || conv.stable_at > 1 || e1 != plain || fc.cohomology_dims() != plain {
            failures.push(m.seed);
        }
    }
    Criterion {
        id: 10,
        name: "engine: E_∞ abuts to H, trivial filtration gives H at E_1",
        passed: failures.is_empty(),
        detail: format!(
            "{} filtered complexes; failing seeds {failures:?}",
            all.len()
        ),
    }
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let e2_models: Vec<SuiteModel> = (0..E2_SEEDS).map(e2_model).collect();
    let e2_build = start.elapsed();
    let s_models: Vec<SuiteModel> = (0..S_SEEDS).map(s_model).collect();
    let c_models: Vec<SuiteModel> = (0..C_SEEDS).map(c_model).collect();
    assert!(s_models.iter().all(|m| m.kind == BaseKind::HardLefschetz));

    let mut results = vec![
        criterion_second_page(&e2_models, e2_build),
        criterion_s_type(&s_models),
        criterion_c_type(&c_models),
        criterion_recursions(&s_models, &c_models),
        criterion_presets(),
        criterion_star(),
        criterion_operators(),
        criterion_decompositions(),
        criterion_harmonic(&s_models, &c_models),
    ];
    let all: Vec<&SuiteModel> = e2_models.iter().chain(&s_models).chain(&c_models).collect();
    results.push(criterion_engine(&all));

    for c in &results {
        println!(
            "criterion {:>2} [{}] {} — {}",
            c.id,
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    println!("total {:.1} s", start.elapsed().as_secs_f64());
    let failed: Vec<usize> = results.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
