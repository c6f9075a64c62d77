//! Seeded property checks shared by the property tests and the acceptance run.
//!
//! Each check draws 100 cases from a proptest runner with a fixed seed and
//! returns the first counterexample as an error string.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use filtered_lie::cli::build_model;
use filtered_lie::cochains::{Chain, ChainComplex, Cochain, CochainComplex, FilteredHom, HomSpace, Splitting};
use filtered_lie::exactla::{int, unit_vec, zero_vec, Matrix, Rational, Subspace, Vector};
use filtered_lie::normcond::{
    adjoint_codifferential, condition_from_codifferential, kostant_codifferential, AdjointKind, Codifferential,
    FilteredPair, InnerProduct, Normalizer,
};

pub const CASES: u32 = 100;

/// A catalog algebra with its natural codifferential, when it has one.
pub struct Case {
    pub name: String,
    pub pair: FilteredPair,
    pub inner: Option<(InnerProduct, AdjointKind)>,
    pub codiff: Option<Codifferential>,
}

fn build(model: &str, params: &[(&str, &str)], kostant: bool) -> Vec<Case> {
    let params: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    let target = build_model(model, &params).expect("catalog model");
    target
        .members
        .into_iter()
        .map(|m| {
            let pair = FilteredPair::new(m.alg).expect("filtered pair");
            let codiff = if kostant {
                Some(kostant_codifferential(&pair).expect("kostant"))
            } else {
                m.inner
                    .as_ref()
                    .map(|(ip, kind)| adjoint_codifferential(&pair, ip, *kind).expect("adjoint"))
            };
            Case {
                name: m.name,
                pair,
                inner: m.inner,
                codiff,
            }
        })
        .collect()
}

/// The catalog used by the property checks.
pub fn catalog() -> &'static [Case] {
    static CATALOG: OnceLock<Vec<Case>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let mut v = Vec::new();
        v.extend(build("parabolic", &[("type", "sl2")], true));
        v.extend(build("parabolic", &[("type", "sl3")], true));
        v.extend(build("parabolic", &[("type", "sl3"), ("crossed", "1")], true));
        v.extend(build("parabolic", &[("type", "sp4")], true));
        v.extend(build("ode", &[("k", "3"), ("m", "1")], false));
        v.extend(build("ode", &[("k", "1"), ("m", "1")], false));
        v.extend(build("ode", &[("k", "2"), ("m", "1")], false));
        v.extend(build("heisenberg", &[("d", "3")], false));
        v.extend(build("heisenberg", &[("d", "5")], false));
        v.extend(build("free", &[("g", "2"), ("s", "3")], false));
        v.extend(build("bryant", &[], false));
        v.extend(build("abelian", &[("n", "3")], false));
        v.extend(build("contact_csp", &[("n", "4")], false));
        v.extend(build("mutation_triple", &[("n", "2")], false));
        v
    })
}

pub fn case(name: &str) -> &'static Case {
    catalog().iter().find(|c| c.name == name).unwrap_or_else(|| panic!("no catalog case {name}"))
}

fn runner(seed: u64) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn run<S: Strategy>(seed: u64, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    runner(seed).run(&strategy, test).map_err(|e| e.to_string())
}

/// Sparse vectors of small integers on `coords`, up to `max_terms` entries.
fn sparse_on(len: usize, coords: Vec<usize>, max_terms: usize) -> BoxedStrategy<Vector> {
    if coords.is_empty() {
        return Just(zero_vec(len)).boxed();
    }
    prop::collection::vec((prop::sample::select(coords), -4i64..=4), 1..=max_terms)
        .prop_map(move |entries| {
            let mut v = zero_vec(len);
            for (c, x) in entries {
                v[c] += int(x);
            }
            v
        })
        .boxed()
}

fn sparse(len: usize, max_terms: usize) -> BoxedStrategy<Vector> {
    sparse_on(len, (0..len).collect(), max_terms)
}

/// Representative matrices of random splittings of the filtration of `pair`.
fn splitting_strategy(pair: &FilteredPair) -> BoxedStrategy<Splitting> {
    let f = pair.alg.clone();
    let n = f.dim();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|t| (0..n).map(move |r| (r, t)))
        .filter(|&(r, t)| f.index_of(r) > f.index_of(t))
        .collect();
    prop::collection::vec(-2i64..=2, slots.len())
        .prop_map(move |xs| {
            let mut reps = Matrix::identity(n);
            for (&(r, t), x) in slots.iter().zip(xs) {
                reps[(r, t)] = int(x);
            }
            Splitting::from_representatives(&f, reps).expect("unitriangular representatives")
        })
        .boxed()
}

fn arities(cx: &CochainComplex, top: usize) -> Vec<usize> {
    (0..=top).filter(|&k| k + 2 <= cx.args().len()).collect()
}

/// `d d = 0` on random cochains of `C^k(m, gr g)`, `k = 0, 1, 2`.
pub fn dd_zero(c: &Case, seed: u64) -> Result<(), String> {
    let cx = c.pair.complex();
    for k in arities(cx, 2) {
        let dim = cx.space(k).dim();
        run(seed + k as u64, sparse(dim, 12), |phi| {
            let once = cx.apply_differential(k, &phi);
            let twice = cx.apply_differential(k + 1, &once);
            prop_assert!(twice.iter().all(Zero::is_zero), "d d phi != 0 for k = {}", k);
            Ok(())
        })?;
    }
    Ok(())
}

/// The homology complex of the negative part acting on `gr g`.
fn negative_homology(pair: &FilteredPair) -> ChainComplex {
    let gr = &pair.gr;
    let neg = gr.negative_indices();
    let basis: Vec<Vector> = neg.iter().map(|&i| unit_vec(gr.dim(), i)).collect();
    let degrees = neg.iter().map(|&i| gr.degree(i)).collect();
    ChainComplex::new(gr.alg.clone(), gr.degrees().to_vec(), basis, degrees).expect("m is a subalgebra")
}

/// `delta delta = 0` on random chains of `Lambda^k m (x) gr g`, `k = 2, 3`.
pub fn delta_delta_zero(c: &Case, seed: u64) -> Result<(), String> {
    let hx = negative_homology(&c.pair);
    let r = c.pair.gr.negative_indices().len();
    for k in (2..=3).filter(|&k| k <= r) {
        let dim = hx.space(k).dim();
        run(seed + k as u64, sparse(dim, 12), |v| {
            let once = hx.boundary(&Chain::new(k, v)).expect("chain of the right size");
            let twice = hx.boundary(&once).expect("chain of the right size");
            prop_assert!(twice.is_zero(), "delta delta != 0 for k = {}", k);
            Ok(())
        })?;
    }
    Ok(())
}

/// `d` maps cochains homogeneous of degree `l` to cochains homogeneous of degree `l`.
pub fn homogeneity_preserved(c: &Case, seed: u64) -> Result<(), String> {
    let cx = c.pair.complex();
    for k in arities(cx, 2) {
        let src = cx.space(k);
        let dst = cx.space(k + 1);
        let Some((lo, hi)) = src.weight_range() else { continue };
        let strategy = (lo..=hi).prop_flat_map({
            let src = src.clone();
            move |l| sparse_on(src.dim(), src.coords_of_weight(l), 8).prop_map(move |v| (l, v))
        });
        run(seed + k as u64, strategy, |(l, v)| {
            let image = cx.differential(&Cochain::new(k, v));
            prop_assert!(image.is_homogeneous_of(&dst, l), "d does not preserve homogeneity {}", l);
            Ok(())
        })?;
    }
    Ok(())
}

/// For a random splitting, `gr_l` on `L^l` (coordinates of weight `>= l`)
/// has rank `dim C_l` and nullity `dim L^(l+1)`, and `gr_l` of a lift is
/// the identity.
pub fn gr_dimension_identities(c: &Case, seed: u64) -> Result<(), String> {
    let pair = &c.pair;
    for k in [1usize, 2] {
        let space = pair.space(k);
        let Some((lo, hi)) = space.weight_range() else { continue };
        run(seed + k as u64, splitting_strategy(pair), |s| {
            for l in lo..=hi {
                let exact = space.coords_of_weight(l);
                let above: Vec<usize> = (0..space.dim()).filter(|&c| space.weight(c) >= l).collect();
                let cols: Vec<Vector> = above
                    .iter()
                    .map(|&c| {
                        let alpha = FilteredHom::new(k, unit_vec(space.dim(), c));
                        let g = s.gr_ell(&space, &alpha, l).expect("alpha lies in L^l");
                        exact.iter().map(|&e| g.values[e].clone()).collect()
                    })
                    .collect();
                let m = Matrix::from_columns(exact.len(), &cols);
                let rank = m.rank();
                prop_assert_eq!(rank, exact.len(), "gr_{} not onto C^{}_{}", l, k, l);
                prop_assert_eq!(above.len() - rank, above.len() - exact.len(), "kernel of gr_{}", l);
                for &e in &exact {
                    let beta = Cochain::new(k, unit_vec(space.dim(), e));
                    let back = s.gr_ell(&space, &s.lift(&space, &beta), l).expect("lift lies in L^l");
                    prop_assert_eq!(back, beta);
                }
            }
            Ok(())
        })?;
    }
    Ok(())
}

/// Determinant by cofactor expansion; the matrices here are at most 3 x 3.
fn det(m: &[Vec<Rational>]) -> Rational {
    match m.len() {
        0 => Rational::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Rational::zero();
            for j in 0..n {
                let minor: Vec<Vec<Rational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// `<phi, psi>` on `Lambda^k V* (x) W` for the Gram matrix `vinv` of `V*`
/// and `w` of `W`, with `phi`, `psi` in the coordinates of `space`; `args`
/// maps argument positions of the space to rows of `vinv`.
fn hom_pairing(space: &HomSpace, args: &[usize], vinv: &Matrix, w: &Matrix, phi: &[Rational], psi: &[Rational]) -> Rational {
    let nv = space.n_values();
    let tuples = space.tuple_index().tuples();
    let mut acc = Rational::zero();
    for (s, ts) in tuples.iter().enumerate() {
        for (t, tt) in tuples.iter().enumerate() {
            let block: Vec<Vec<Rational>> = ts
                .iter()
                .map(|&a| tt.iter().map(|&b| vinv[(args[a], args[b])].clone()).collect())
                .collect();
            let minor = det(&block);
            if minor.is_zero() {
                continue;
            }
            for a in 0..nv {
                let x = &phi[s * nv + a];
                if x.is_zero() {
                    continue;
                }
                for b in 0..nv {
                    let y = &psi[t * nv + b];
                    if !y.is_zero() && !w[(a, b)].is_zero() {
                        acc += x * &minor * &w[(a, b)] * y;
                    }
                }
            }
        }
    }
    acc
}

/// `<d a, b> = <a, d* b>` for the adjoint codifferential of the case.
///
/// The inner product on `(g/p)*` is the restriction of the inverse Gram
/// matrix to the negative indices (the inverse of the orthocomplement form).
/// For the horizontal kind `d` is that of `C^*(g, g)` applied to the
/// horizontal extension of `a`.
pub fn adjoint_identity(c: &Case, seed: u64) -> Result<(), String> {
    let (Some((ip, kind)), Some(codiff)) = (&c.inner, &c.codiff) else {
        return Err(format!("{} has no adjoint codifferential", c.name));
    };
    let pair = &c.pair;
    let g = &ip.gram;
    let ginv = g.inverse().expect("inner product");
    let neg = pair.neg_indices().to_vec();
    let full = CochainComplex::full(&pair.alg.alg, pair.alg.index()).expect("full complex");
    for k in [2usize, 3] {
        let src = pair.space(k - 1);
        let dst = pair.space(k);
        if dst.dim() == 0 {
            continue;
        }
        let d_star = codiff.matrix(k);
        let strategy = (sparse(src.dim(), 8), sparse(dst.dim(), 8));
        run(seed + k as u64, strategy, |(a, b)| {
            let rhs = hom_pairing(&src, &neg, &ginv, g, &a, &d_star.mul_vec(&b));
            let lhs = match kind {
                AdjointKind::Graded => {
                    let da = pair.complex().apply_differential(k - 1, &a);
                    hom_pairing(&dst, &neg, &ginv, g, &da, &b)
                }
                AdjointKind::Horizontal => {
                    let fsrc = full.space(k - 1);
                    let fdst = full.space(k);
                    let embed = |space: &HomSpace, fs: &HomSpace, v: &[Rational]| {
                        let mut out = zero_vec(fs.dim());
                        for (c, x) in v.iter().enumerate() {
                            let (ti, val) = space.split(c);
                            let t: Vec<usize> = space.tuple_index().tuple(ti).iter().map(|&p| neg[p]).collect();
                            out[fs.coord(fs.tuple_index().position(&t).expect("tuple"), val)] = x.clone();
                        }
                        out
                    };
                    let da = full.apply_differential(k - 1, &embed(&src, &fsrc, &a));
                    let all: Vec<usize> = (0..pair.dim()).collect();
                    hom_pairing(&fdst, &all, &ginv, g, &da, &embed(&dst, &fdst, &b))
                }
            };
            prop_assert_eq!(lhs, rhs, "adjoint identity fails for k = {}", k);
            Ok(())
        })?;
    }
    Ok(())
}

fn normalization(c: &Case) -> Result<Subspace, String> {
    let codiff = c.codiff.as_ref().ok_or_else(|| format!("{} has no codifferential", c.name))?;
    Ok(condition_from_codifferential(&c.pair, codiff).map_err(|e| e.to_string())?.0)
}

/// Normalizing twice changes nothing, and the pieces add back up.
pub fn normalize_idempotent(c: &Case, seed: u64) -> Result<(), String> {
    let n = normalization(c)?;
    let pair = &c.pair;
    let space = pair.space(2);
    let positive: Vec<usize> = (0..space.dim()).filter(|&c| space.weight(c) >= 1).collect();
    let strategy = (splitting_strategy(pair), sparse_on(space.dim(), positive, 16));
    run(seed, strategy, |(s, v)| {
        let normalizer = Normalizer::new(pair, &n, s).expect("normalization condition");
        let v = FilteredHom::new(2, v);
        let out = normalizer.normalize(&v).expect("normalizes");
        prop_assert!(n.contains(&out.v_norm.values), "normalized part not in N");
        let mut sum = out.v_norm.clone();
        for (_, b) in &out.removed {
            sum = sum.add(b);
        }
        prop_assert_eq!(&sum, &v);
        let again = normalizer.normalize(&out.v_norm).expect("normalizes");
        prop_assert_eq!(&again.v_norm, &out.v_norm);
        prop_assert!(again.corrections_vanish(), "nonzero correction on a normalized form");
        Ok(())
    })
}

/// `n + b` with `n` in `gr_l(N^l)` and `b` in `im d` decomposes back into
/// `(n, b)`, also when `N` is presented with its basis reversed.
pub fn decomposition_unique(c: &Case, seed: u64) -> Result<(), String> {
    let n = normalization(c)?;
    let pair = &c.pair;
    let reversed = Subspace::span(n.ambient_dim(), n.basis().iter().rev().cloned());
    let split = Splitting::canonical(&pair.alg);
    let forward = Normalizer::new(pair, &n, split.clone()).map_err(|e| e.to_string())?;
    let backward = Normalizer::new(pair, &reversed, split).map_err(|e| e.to_string())?;
    for l in 1..=pair.max_homogeneity() {
        let gr_n = pair.graded_part(2, &n, l);
        let d = pair.complex().differential_block(1, l).map_err(|e| e.to_string())?;
        let strategy = (
            prop::collection::vec(-3i64..=3, gr_n.dim()),
            prop::collection::vec(-3i64..=3, d.cols()),
        );
        run(seed + l as u64, strategy, |(cn, cb)| {
            let mut np = zero_vec(gr_n.ambient_dim());
            for (v, x) in gr_n.basis().iter().zip(&cn) {
                filtered_lie::exactla::axpy(&mut np, &int(*x), v);
            }
            let x: Vector = cb.iter().map(|&t| int(t)).collect();
            let bp = if d.cols() == 0 { zero_vec(d.rows()) } else { d.mul_vec(&x) };
            let w: Vector = np.iter().zip(&bp).map(|(a, b)| a + b).collect();
            let one = forward.decompose(l, &w).expect("decomposes");
            let two = backward.decompose(l, &w).expect("decomposes");
            prop_assert_eq!(&one, &(np.clone(), bp.clone()));
            prop_assert_eq!(&two, &one);
            Ok(())
        })?;
    }
    Ok(())
}

/// The action of `g^0` on `L(Lambda^k(g/p), g)` is a Lie algebra action:
/// `A.(B.f) - B.(A.f) = [A, B].f`.
pub fn action_is_leibniz(c: &Case, seed: u64) -> Result<(), String> {
    let pair = &c.pair;
    let g0 = pair.g0_basis();
    if g0.is_empty() {
        return Ok(());
    }
    let dim = pair.dim();
    let combo = move |cs: Vec<i64>| -> Vector {
        let mut v = zero_vec(dim);
        for (b, x) in g0.iter().zip(cs) {
            filtered_lie::exactla::axpy(&mut v, &int(x), b);
        }
        v
    };
    let n0 = pair.g0_basis().len();
    for k in [1usize, 2] {
        let space = pair.space(k);
        let strategy = (
            prop::collection::vec(-2i64..=2, n0),
            prop::collection::vec(-2i64..=2, n0),
            sparse(space.dim(), 8),
        );
        run(seed + k as u64, strategy, |(a, b, f)| {
            let (a, b) = (combo(a), combo(b));
            let f = FilteredHom::new(k, f);
            let act = |x: &[Rational], f: &FilteredHom| pair.module_action(x, f).expect("g^0 element");
            let lhs = act(&a, &act(&b, &f)).sub(&act(&b, &act(&a, &f)));
            let ab = pair.alg.alg.bracket(&a, &b);
            prop_assert_eq!(lhs, act(&ab, &f));
            Ok(())
        })?;
    }
    Ok(())
}
