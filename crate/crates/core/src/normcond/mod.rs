//! Normalization conditions, negligible submodules and codifferentials for a
//! filtered Lie algebra `g` with `p = g^0`, plus the pointwise normalization
//! solve.
//!
//! `L(Lambda^k(g/p), g)` and `C^k(m, gr g)` share coordinates (see
//! [`crate::cochains::HomSpace`]), so `gr_l` of a map homogeneous of degree
//! `>= l` is its restriction to the weight `l` coordinates.
//!
//! Invariance under `P` is checked infinitesimally, as stability under the
//! action of a basis of `g^0`. This is exact for connected `P` only.

mod codiff;
mod inner;

pub use codiff::{
    adjoint_codifferential, check_codifferential, condition_from_codifferential, kostant_codifferential,
    AdjointKind, CodiffReport, Codifferential, DisjointRow,
};
pub use inner::{extend_by_derivations, ode_inner_product, subriemannian_inner_product, InnerProduct};

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::cochains::{sort_with_sign, Cochain, CochainComplex, FilteredHom, HomSpace, Splitting};
use crate::error::{Error, Result};
use crate::exactla::{zero_vec, CoordinateSolver, Matrix, Rational, Reducer, Subspace, Vector};
use crate::liealg::{FilteredLieAlgebra, GradedLieAlgebra};

/// A filtered Lie algebra with its associated graded and the cochain
/// complex `C^*(m, gr g)`.
#[derive(Clone, Debug)]
pub struct FilteredPair {
    pub alg: FilteredLieAlgebra,
    pub gr: GradedLieAlgebra,
    complex: CochainComplex,
    neg: Vec<usize>,
}

impl FilteredPair {
    pub fn new(alg: FilteredLieAlgebra) -> Result<FilteredPair> {
        let gr = alg.associated_graded()?;
        let complex = CochainComplex::on_negative_part(&gr)?;
        let neg = alg.neg_indices();
        Ok(FilteredPair { alg, gr, complex, neg })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    /// Basis indices of `g` representing the basis of `g/p`.
    pub fn neg_indices(&self) -> &[usize] {
        &self.neg
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn space(&self, k: usize) -> HomSpace {
        self.complex.space(k)
    }

    /// `2 mu + nu`, the largest homogeneity a nonzero 2-cochain can have.
    pub fn max_homogeneity(&self) -> i32 {
        2 * self.alg.depth() + self.alg.height()
    }

    /// Unit vectors of the adapted basis of `g^0`.
    pub fn g0_basis(&self) -> Vec<Vector> {
        self.alg
            .p_indices()
            .into_iter()
            .map(|i| crate::exactla::unit_vec(self.dim(), i))
            .collect()
    }

    /// Matrix of `f -> A.f` on `L(Lambda^k(g/p), g)`:
    /// `(A.f)(X_1..X_k) = [A, f(X_1..X_k)] - sum_i f(.., [A, X_i] + p, ..)`.
    pub fn action_matrix(&self, k: usize, a: &[Rational]) -> Result<Matrix> {
        if self.neg.iter().any(|&i| !a[i].is_zero()) {
            return Err(Error::NotContained("module action needs an element of g^0".into()));
        }
        let space = self.space(k);
        let n = self.dim();
        let ad = self.alg.alg.ad(a);
        let r = self.neg.len();
        // rho[(row, col)]: coefficient of e_neg[row] in [A, e_neg[col]]
        let rho = ad.submatrix(&self.neg, &self.neg);
        let mut m = Matrix::zeros(space.dim(), space.dim());
        for coord in 0..space.dim() {
            let (ti, b) = space.split(coord);
            for c in 0..n {
                let x = &ad[(c, b)];
                if !x.is_zero() {
                    m[(space.coord(ti, c), coord)] += x;
                }
            }
            let t = space.tuple_index().tuple(ti).to_vec();
            for (slot, &row) in t.iter().enumerate() {
                for col in 0..r {
                    let x = &rho[(row, col)];
                    if x.is_zero() {
                        continue;
                    }
                    let mut u = t.clone();
                    u[slot] = col;
                    if let Some(s) = sort_with_sign(&mut u) {
                        let ui = space.tuple_index().position(&u).expect("valid tuple");
                        let v = x * Rational::from_integer(s.into());
                        m[(space.coord(ui, b), coord)] -= v;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn module_action(&self, a: &[Rational], f: &FilteredHom) -> Result<FilteredHom> {
        Ok(FilteredHom::new(f.arity, self.action_matrix(f.arity, a)?.mul_vec(&f.values)))
    }

    /// First basis element of `g^0` (as an index into [`Self::g0_basis`])
    /// whose action does not preserve `s`.
    pub fn invariance_violation(&self, k: usize, s: &Subspace) -> Result<Option<usize>> {
        for (q, a) in self.g0_basis().iter().enumerate() {
            let act = self.action_matrix(k, a)?;
            if !s.basis().iter().all(|v| s.contains(&act.mul_vec(v))) {
                return Ok(Some(q));
            }
        }
        Ok(None)
    }

    /// `gr_l(S cap L^l)` in the coordinates `space(k).coords_of_weight(l)`.
    pub fn graded_part(&self, k: usize, s: &Subspace, l: i32) -> Subspace {
        let space = self.space(k);
        let ge = Subspace::coordinate(space.dim(), (0..space.dim()).filter(|&c| space.weight(c) >= l));
        let coords = space.coords_of_weight(l);
        let part = s.intersect(&ge);
        Subspace::span(coords.len(), part.basis().iter().map(|v| coords.iter().map(|&c| v[c].clone()).collect()))
    }

    /// `H^k_l(m, gr g)`.
    pub fn cohomology_dim(&self, k: usize, l: i32) -> Result<usize> {
        self.complex.cohomology_dim(k, l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationRow {
    pub l: i32,
    pub dim_gr_n: usize,
    pub dim_image: usize,
    pub dim_c2: usize,
    pub complementary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationReport {
    pub invariant: bool,
    pub rows: Vec<NormalizationRow>,
}

impl NormalizationReport {
    pub fn passed(&self) -> bool {
        self.invariant && self.rows.iter().all(|r| r.complementary)
    }
}

/// Checks that `N` in `L(Lambda^2(g/p), g)` is `g^0`-invariant and that
/// `gr_l(N^l)` is complementary to `im(d)` in `C^2_l` for `l = 1..2mu+nu`.
pub fn check_normalization(pair: &FilteredPair, n: &Subspace) -> Result<NormalizationReport> {
    let invariant = pair.invariance_violation(2, n)?.is_none();
    let mut rows = Vec::new();
    for l in 1..=pair.max_homogeneity() {
        let grn = pair.graded_part(2, n, l);
        let im = pair.complex.differential_block(1, l)?.image();
        let dim_c2 = im.ambient_dim();
        let complementary = grn.intersect(&im).is_zero() && grn.dim() + im.dim() == dim_c2;
        rows.push(NormalizationRow {
            l,
            dim_gr_n: grn.dim(),
            dim_image: im.dim(),
            dim_c2,
            complementary,
        });
    }
    Ok(NormalizationReport { invariant, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegligibleRow {
    pub l: i32,
    pub dim_gr_ntilde: usize,
    pub dim_kernel: usize,
    pub dim_c2: usize,
    pub trivial_intersection: bool,
    pub complementary: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegligibleReport {
    pub contained: bool,
    pub invariant: bool,
    pub rows: Vec<NegligibleRow>,
}

impl NegligibleReport {
    pub fn negligible(&self) -> bool {
        self.contained && self.invariant && self.rows.iter().all(|r| r.trivial_intersection)
    }

    pub fn maximal(&self) -> bool {
        self.negligible() && self.rows.iter().all(|r| r.complementary)
    }
}

/// Checks `Ntilde` inside `N`: invariance and `gr_l(Ntilde^l) cap ker(d) = 0`;
/// maximality additionally asks for `gr_l(Ntilde^l) + ker(d) = C^2_l`.
pub fn check_negligible(pair: &FilteredPair, ntilde: &Subspace, n: &Subspace) -> Result<NegligibleReport> {
    let contained = n.contains_subspace(ntilde);
    let invariant = pair.invariance_violation(2, ntilde)?.is_none();
    let mut rows = Vec::new();
    for l in 1..=pair.max_homogeneity() {
        let grt = pair.graded_part(2, ntilde, l);
        let ker = pair.complex.differential_block(2, l)?.kernel();
        let dim_c2 = ker.ambient_dim();
        let trivial_intersection = grt.intersect(&ker).is_zero();
        rows.push(NegligibleRow {
            l,
            dim_gr_ntilde: grt.dim(),
            dim_kernel: ker.dim(),
            dim_c2,
            trivial_intersection,
            complementary: trivial_intersection && grt.dim() + ker.dim() == dim_c2,
        });
    }
    Ok(NegligibleReport { contained, invariant, rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRow {
    pub l: i32,
    pub quotient: usize,
    pub h2: usize,
}

/// `dim gr_l(N / Ntilde)` next to `dim H^2_l` for `l = 1..2mu+nu`.
/// Requires `Ntilde` to be a maximal negligible submodule of `N`.
pub fn quotient_dims(pair: &FilteredPair, n: &Subspace, ntilde: &Subspace) -> Result<Vec<QuotientRow>> {
    if !check_negligible(pair, ntilde, n)?.maximal() {
        return Err(Error::Precondition("quotient dimensions need a maximal negligible submodule".into()));
    }
    let mut rows = Vec::new();
    for l in 1..=pair.max_homogeneity() {
        let quotient = pair.graded_part(2, n, l).dim() - pair.graded_part(2, ntilde, l).dim();
        rows.push(QuotientRow {
            l,
            quotient,
            h2: pair.cohomology_dim(2, l)?,
        });
    }
    Ok(rows)
}

/// Per-degree data for splitting `C^2_l = gr_l(N^l) + im(d)`.
#[derive(Clone, Debug)]
struct DegreeData {
    coords: Vec<usize>,
    /// elements of `N^l` whose `gr_l` form a basis of `gr_l(N^l)`
    n_lifts: Vec<Vector>,
    /// basis of `im(d)` in block coordinates, with preimages in `C^1_l` block coordinates
    image: Vec<Vector>,
    preimages: Vec<Vector>,
    coords1: Vec<usize>,
    solver: CoordinateSolver,
}

/// Result of [`Normalizer::normalize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub v_norm: FilteredHom,
    /// `(l, h_l)` with `d(gr_l h_l)` the image part removed at step `l`.
    pub corrections: Vec<(i32, FilteredHom)>,
    /// `(l, b_l)`: lifts of the removed image parts; `v = v_norm + sum b_l`.
    pub removed: Vec<(i32, FilteredHom)>,
}

impl Normalized {
    pub fn corrections_vanish(&self) -> bool {
        self.corrections.iter().all(|(_, h)| h.is_zero())
    }
}

/// Degree-by-degree normalization of a 2-form into a normalization condition.
#[derive(Clone, Debug)]
pub struct Normalizer<'a> {
    pair: &'a FilteredPair,
    splitting: Splitting,
    degrees: BTreeMap<i32, DegreeData>,
}

impl<'a> Normalizer<'a> {
    /// Fails unless `n` passes [`check_normalization`].
    pub fn new(pair: &'a FilteredPair, n: &Subspace, splitting: Splitting) -> Result<Normalizer<'a>> {
        if !check_normalization(pair, n)?.passed() {
            return Err(Error::Precondition("not a normalization condition".into()));
        }
        let space = pair.space(2);
        let space1 = pair.space(1);
        let mut degrees = BTreeMap::new();
        for l in 1..=pair.max_homogeneity() {
            let coords = space.coords_of_weight(l);
            let coords1 = space1.coords_of_weight(l);
            let ge = Subspace::coordinate(space.dim(), (0..space.dim()).filter(|&c| space.weight(c) >= l));
            let nl = n.intersect(&ge);
            let mut red = Reducer::new();
            let mut n_lifts = Vec::new();
            let mut columns = Vec::new();
            for v in nl.canonical_basis() {
                let g: Vector = coords.iter().map(|&c| v[c].clone()).collect();
                if red.insert(&g) {
                    columns.push(g);
                    n_lifts.push(v);
                }
            }
            let d = pair.complex.differential_block(1, l)?;
            let e = d.echelon();
            let image: Vec<Vector> = e.pivots.iter().map(|&c| d.column(c)).collect();
            let preimages: Vec<Vector> = e.pivots.iter().map(|&c| crate::exactla::unit_vec(coords1.len(), c)).collect();
            columns.extend(image.iter().cloned());
            let solver = CoordinateSolver::new(Matrix::from_columns(coords.len(), &columns))?;
            degrees.insert(
                l,
                DegreeData {
                    coords,
                    n_lifts,
                    image,
                    preimages,
                    coords1,
                    solver,
                },
            );
        }
        Ok(Normalizer { pair, splitting, degrees })
    }

    /// `w = n + b` with `n` in `gr_l(N^l)` and `b` in `im(d)`, block coordinates.
    pub fn decompose(&self, l: i32, w: &[Rational]) -> Result<(Vector, Vector)> {
        let data = self.degrees.get(&l).ok_or_else(|| Error::Precondition(format!("degree {l} out of range")))?;
        let c = data
            .solver
            .solve(w)
            .ok_or_else(|| Error::Internal("normalization condition does not span".into()))?;
        let nn = data.n_lifts.len();
        let mut npart = zero_vec(w.len());
        for (q, lift) in data.n_lifts.iter().enumerate() {
            let g: Vector = data.coords.iter().map(|&cc| lift[cc].clone()).collect();
            crate::exactla::axpy(&mut npart, &c[q], &g);
        }
        let mut bpart = zero_vec(w.len());
        for (q, v) in data.image.iter().enumerate() {
            crate::exactla::axpy(&mut bpart, &c[nn + q], v);
        }
        Ok((npart, bpart))
    }

    /// Splits off the normalized part of `v`, homogeneous of degree `>= 1`.
    ///
    /// At step `l`, `gr_l` of the residual is written as `n + b`; a fixed
    /// lift of `n` into `N^l` and the splitting lift of `b` are subtracted,
    /// and `h_l` is recorded with `d(gr_l h_l) = b`.
    pub fn normalize(&self, v: &FilteredHom) -> Result<Normalized> {
        let space = self.pair.space(2);
        let space1 = self.pair.space(1);
        if v.arity != 2 || v.values.len() != space.dim() {
            return Err(Error::DimensionMismatch("normalize expects a 2-form".into()));
        }
        if let Some(h) = v.homogeneity(&space) {
            if h < 1 {
                return Err(Error::NotHomogeneous { required: 1, actual: h });
            }
        }
        let mut r = v.clone();
        let mut v_norm = FilteredHom::zero(&space);
        let mut corrections = Vec::new();
        let mut removed = Vec::new();
        for (&l, data) in &self.degrees {
            let w = self.splitting.gr_ell(&space, &r, l)?;
            let block: Vector = data.coords.iter().map(|&c| w.values[c].clone()).collect();
            let c = data
                .solver
                .solve(&block)
                .ok_or_else(|| Error::Internal("normalization condition does not span".into()))?;
            let nn = data.n_lifts.len();
            let mut ntil = zero_vec(space.dim());
            for (q, lift) in data.n_lifts.iter().enumerate() {
                crate::exactla::axpy(&mut ntil, &c[q], lift);
            }
            let mut b = Cochain::zero(&space);
            let mut x = Cochain::zero(&space1);
            for q in 0..data.image.len() {
                let coef = &c[nn + q];
                for (i, &cc) in data.coords.iter().enumerate() {
                    let t = &data.image[q][i];
                    if !t.is_zero() {
                        b.values[cc] += coef * t;
                    }
                }
                for (i, &cc) in data.coords1.iter().enumerate() {
                    let t = &data.preimages[q][i];
                    if !t.is_zero() {
                        x.values[cc] += coef * t;
                    }
                }
            }
            let ntil = FilteredHom::new(2, ntil);
            let btil = self.splitting.lift(&space, &b);
            let h = self.splitting.lift(&space1, &x);
            r = r.sub(&ntil).sub(&btil);
            v_norm = v_norm.add(&ntil);
            corrections.push((l, h));
            removed.push((l, btil));
        }
        if !r.is_zero() {
            return Err(Error::Internal("residual survives past the top homogeneity".into()));
        }
        Ok(Normalized {
            v_norm,
            corrections,
            removed,
        })
    }
}

/// One-shot [`Normalizer::normalize`].
pub fn normalize_pointwise(pair: &FilteredPair, v: &FilteredHom, n: &Subspace, splitting: &Splitting) -> Result<Normalized> {
    Normalizer::new(pair, n, splitting.clone())?.normalize(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, unit_vec};
    use crate::models::{parabolic_grading, SimpleType};

    fn borel_sl3() -> FilteredPair {
        let g = parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap();
        FilteredPair::new(FilteredLieAlgebra::from_graded(&g)).unwrap()
    }

    #[test]
    fn action_of_zero_and_leibniz() {
        let pair = borel_sl3();
        let n = pair.dim();
        let space = pair.space(2);
        let f = FilteredHom::new(2, (0..space.dim()).map(|i| int((i as i64 * 5) % 7 - 3)).collect());
        assert!(pair.module_action(&zero_vec(n), &f).unwrap().is_zero());
        let p = pair.alg.p_indices();
        let (a, b) = (unit_vec(n, p[0]), unit_vec(n, p[3]));
        let ab = pair.alg.alg.bracket(&a, &b);
        let lhs = pair.module_action(&ab, &f).unwrap();
        let af = pair.module_action(&a, &f).unwrap();
        let bf = pair.module_action(&b, &f).unwrap();
        let rhs = pair.module_action(&a, &bf).unwrap().sub(&pair.module_action(&b, &af).unwrap());
        assert_eq!(lhs, rhs);
        assert!(pair.module_action(&unit_vec(n, pair.neg_indices()[0]), &f).is_err());
    }

    #[test]
    fn whole_space_and_zero_fail_as_normalization_conditions() {
        let pair = borel_sl3();
        let dim = pair.space(2).dim();
        let full = check_normalization(&pair, &Subspace::full(dim)).unwrap();
        assert!(full.invariant && !full.passed());
        let zero = check_normalization(&pair, &Subspace::zero(dim)).unwrap();
        assert!(!zero.passed());
    }
}
