use num_traits::{One, Zero};

use super::{Cochain, HomSpace, TupleIndex};
use crate::error::{Error, Result};
use crate::exactla::{zero_vec, Matrix, Rational, Subspace, Vector};
use crate::liealg::FilteredLieAlgebra;

/// Element of `L(Lambda^k(g/p), g)` in the coordinates of [`HomSpace`]:
/// arguments run over the negative-index basis vectors (a basis of `g/p`),
/// values over the whole adapted basis of `g`.
///
/// Homogeneity of degree `>= l` is exactly support on coordinates of weight `>= l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredHom {
    pub arity: usize,
    pub values: Vector,
}

impl FilteredHom {
    pub fn new(arity: usize, values: Vector) -> FilteredHom {
        FilteredHom { arity, values }
    }

    pub fn zero(space: &HomSpace) -> FilteredHom {
        FilteredHom::new(space.arity(), zero_vec(space.dim()))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Largest `l` with the map homogeneous of degree `>= l`; `None` for zero.
    pub fn homogeneity(&self, space: &HomSpace) -> Option<i32> {
        (0..self.values.len())
            .filter(|&c| !self.values[c].is_zero())
            .map(|c| space.weight(c))
            .min()
    }

    pub fn is_homogeneous_geq(&self, space: &HomSpace, l: i32) -> bool {
        self.homogeneity(space).map_or(true, |h| h >= l)
    }

    pub fn add(&self, other: &FilteredHom) -> FilteredHom {
        FilteredHom::new(self.arity, crate::exactla::add_vec(&self.values, &other.values))
    }

    pub fn sub(&self, other: &FilteredHom) -> FilteredHom {
        FilteredHom::new(self.arity, crate::exactla::sub_vec(&self.values, &other.values))
    }
}

/// `Lambda^k m`: entry `(S, T)` is the minor of `m` on rows `S`, columns `T`,
/// with tuples ordered as in [`TupleIndex`].
pub fn exterior_power(m: &Matrix, k: usize) -> Matrix {
    let rows = TupleIndex::new(k, m.rows());
    let cols = TupleIndex::new(k, m.cols());
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (i, s) in rows.tuples().iter().enumerate() {
        for (j, t) in cols.tuples().iter().enumerate() {
            let d = m.submatrix(s, t).determinant();
            if !d.is_zero() {
                out[(i, j)] = d;
            }
        }
    }
    out
}

/// Choice of subspaces `W_i` with `g^i = W_i + g^(i+1)`.
///
/// Stored as the matrix `R` whose column `t` is the representative `r_t`:
/// the unique element of `W_(index t)` congruent to `e_t` modulo
/// `g^(index t + 1)`. The canonical splitting has `R = 1`. `R^-1` is the
/// map `g -> gr(g)` sending `W_i` onto `gr_i(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    index: Vec<i32>,
    neg: Vec<usize>,
    reps: Matrix,
    inv: Matrix,
}

impl Splitting {
    /// `W_i` spanned by the basis vectors of index exactly `i`.
    pub fn canonical(f: &FilteredLieAlgebra) -> Splitting {
        let n = f.dim();
        Splitting {
            index: f.index().to_vec(),
            neg: f.neg_indices(),
            reps: Matrix::identity(n),
            inv: Matrix::identity(n),
        }
    }

    /// From representatives, column `t` congruent to `e_t` modulo `g^(index t + 1)`.
    pub fn from_representatives(f: &FilteredLieAlgebra, reps: Matrix) -> Result<Splitting> {
        let n = f.dim();
        if reps.rows() != n || reps.cols() != n {
            return Err(Error::DimensionMismatch("splitting needs an n x n representative matrix".into()));
        }
        let idx = f.index();
        for t in 0..n {
            for r in 0..n {
                let want = if r == t { Rational::one() } else { Rational::zero() };
                if idx[r] <= idx[t] && reps[(r, t)] != want {
                    return Err(Error::Precondition(format!(
                        "representative of {} is not congruent to it modulo the next filtration step",
                        f.alg.label(t)
                    )));
                }
            }
        }
        let inv = reps.inverse().ok_or_else(|| Error::Internal("unitriangular matrix not invertible".into()))?;
        Ok(Splitting {
            index: idx.to_vec(),
            neg: f.neg_indices(),
            reps,
            inv,
        })
    }

    /// From complements: `complements[q]` is `W_i` for the `q`-th distinct
    /// index `i` in increasing order.
    pub fn from_complements(f: &FilteredLieAlgebra, complements: &[Subspace]) -> Result<Splitting> {
        let n = f.dim();
        let mut levels: Vec<i32> = f.index().to_vec();
        levels.sort_unstable();
        levels.dedup();
        if complements.len() != levels.len() {
            return Err(Error::DimensionMismatch(format!("{} complements for {} filtration steps", complements.len(), levels.len())));
        }
        let mut reps = Matrix::zeros(n, n);
        for (&i, w) in levels.iter().zip(complements) {
            let exact: Vec<usize> = (0..n).filter(|&b| f.index_of(b) == i).collect();
            let gi = f.component(i);
            if w.dim() != exact.len() || !gi.contains_subspace(w) {
                return Err(Error::Precondition(format!("W_{i} is not a complement of g^{} in g^{i}", i + 1)));
            }
            // W_i -> gr_i is the restriction to the exact-index coordinates
            let proj = Matrix::from_columns(exact.len(), &w.basis().iter().map(|v| exact.iter().map(|&b| v[b].clone()).collect()).collect::<Vec<Vector>>());
            let pinv = proj
                .inverse()
                .ok_or_else(|| Error::Precondition(format!("W_{i} meets g^{}", i + 1)))?;
            for (q, &t) in exact.iter().enumerate() {
                let mut r = zero_vec(n);
                for (a, v) in w.basis().iter().enumerate() {
                    crate::exactla::axpy(&mut r, &pinv[(a, q)], v);
                }
                for (row, x) in r.into_iter().enumerate() {
                    reps[(row, t)] = x;
                }
            }
        }
        Splitting::from_representatives(f, reps)
    }

    pub fn representatives(&self) -> &Matrix {
        &self.reps
    }

    pub fn representative(&self, t: usize) -> Vector {
        self.reps.column(t)
    }

    /// `W_i`.
    pub fn complement(&self, i: i32) -> Subspace {
        let n = self.index.len();
        Subspace::span(n, (0..n).filter(|&t| self.index[t] == i).map(|t| self.reps.column(t)))
    }

    fn neg_block(m: &Matrix, neg: &[usize]) -> Matrix {
        m.submatrix(neg, neg)
    }

    /// The degree `l` cochain induced by `alpha`, homogeneous of degree `>= l`:
    /// evaluate on representatives and take the class in the component of
    /// the expected degree.
    pub fn gr_ell(&self, space: &HomSpace, alpha: &FilteredHom, l: i32) -> Result<Cochain> {
        if let Some(h) = alpha.homogeneity(space) {
            if h < l {
                return Err(Error::NotHomogeneous { required: l, actual: h });
            }
        }
        let k = alpha.arity;
        let n = space.n_values();
        let lam = exterior_power(&Self::neg_block(&self.reps, &self.neg), k);
        let tuples = space.tuple_index();
        let mut out = zero_vec(space.dim());
        for (ti, t) in tuples.tuples().iter().enumerate() {
            let mut val = zero_vec(n);
            for si in 0..tuples.len() {
                let c = &lam[(si, ti)];
                if !c.is_zero() {
                    crate::exactla::axpy(&mut val, c, &alpha.values[si * n..(si + 1) * n]);
                }
            }
            let s: i32 = t.iter().map(|&p| self.index[self.neg[p]]).sum::<i32>() + l;
            for (b, x) in val.into_iter().enumerate() {
                if self.index[b] == s {
                    out[ti * n + b] = x;
                }
            }
        }
        Ok(Cochain::new(k, out))
    }

    /// A map homogeneous of degree `>= l` whose `gr_l` is `beta`, for `beta`
    /// homogeneous of degree `l`: `R . beta . (R^-1 on g/p)^k`.
    pub fn lift(&self, space: &HomSpace, beta: &Cochain) -> FilteredHom {
        let k = beta.arity;
        let n = space.n_values();
        let lam = exterior_power(&Self::neg_block(&self.inv, &self.neg), k);
        let tuples = space.tuple_index();
        let mut out = zero_vec(space.dim());
        for ti in 0..tuples.len() {
            let mut val = zero_vec(n);
            for si in 0..tuples.len() {
                let c = &lam[(si, ti)];
                if !c.is_zero() {
                    crate::exactla::axpy(&mut val, c, &beta.values[si * n..(si + 1) * n]);
                }
            }
            let mapped = self.reps.mul_vec(&val);
            out[ti * n..(ti + 1) * n].clone_from_slice(&mapped);
        }
        FilteredHom::new(k, out)
    }
}

/// Linear map between filtered spaces whose filtrations are given by
/// coordinate weights: `V^i` is spanned by coordinates of weight `>= i`.
#[derive(Clone, Debug)]
pub struct FilteredMap {
    pub matrix: Matrix,
    pub src_weights: Vec<i32>,
    pub dst_weights: Vec<i32>,
}

impl FilteredMap {
    pub fn new(matrix: Matrix, src_weights: Vec<i32>, dst_weights: Vec<i32>) -> Result<FilteredMap> {
        if matrix.cols() != src_weights.len() || matrix.rows() != dst_weights.len() {
            return Err(Error::DimensionMismatch("filtered map weights do not match the matrix".into()));
        }
        Ok(FilteredMap {
            matrix,
            src_weights,
            dst_weights,
        })
    }

    /// First entry `(row, col)` sending a coordinate to a lower filtration step.
    pub fn compatibility_violation(&self) -> Option<(usize, usize)> {
        for r in 0..self.matrix.rows() {
            for c in 0..self.matrix.cols() {
                if !self.matrix[(r, c)].is_zero() && self.dst_weights[r] < self.src_weights[c] {
                    return Some((r, c));
                }
            }
        }
        None
    }

    pub fn is_compatible(&self) -> bool {
        self.compatibility_violation().is_none()
    }

    /// The induced degree 0 map on associated gradeds, same coordinates.
    pub fn gr0(&self) -> Matrix {
        let mut m = Matrix::zeros(self.matrix.rows(), self.matrix.cols());
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if self.dst_weights[r] == self.src_weights[c] {
                    m[(r, c)] = self.matrix[(r, c)].clone();
                }
            }
        }
        m
    }

    fn thresholds(&self) -> Vec<i32> {
        let mut t: Vec<i32> = self.src_weights.iter().chain(&self.dst_weights).copied().collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// First threshold `i` with `im(Phi) & W^i != Phi(V^i)`, compared as spans.
    pub fn image_homogeneity_violation(&self) -> Option<i32> {
        let image = self.matrix.image();
        for i in self.thresholds() {
            let wi = Subspace::coordinate(self.dst_weights.len(), (0..self.dst_weights.len()).filter(|&r| self.dst_weights[r] >= i));
            let cols: Vec<usize> = (0..self.src_weights.len()).filter(|&c| self.src_weights[c] >= i).collect();
            let restricted = self.matrix.select_cols(&cols).image();
            if image.intersect(&wi) != restricted {
                return Some(i);
            }
        }
        None
    }

    pub fn is_image_homogeneous(&self) -> bool {
        self.image_homogeneity_violation().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::CochainComplex;
    use crate::exactla::{int, rat};
    use crate::models::ode_algebra;

    fn sheared(f: &FilteredLieAlgebra) -> Splitting {
        let n = f.dim();
        let mut r = Matrix::identity(n);
        for t in 0..n {
            for s in 0..n {
                if f.index_of(s) > f.index_of(t) {
                    r[(s, t)] = rat(((s * 3 + t * 5) % 7) as i64 - 3, 2);
                }
            }
        }
        Splitting::from_representatives(f, r).unwrap()
    }

    #[test]
    fn lift_then_gr_is_identity() {
        let f = ode_algebra(2, 1).unwrap();
        let cx = CochainComplex::on_negative_part(&f.associated_graded().unwrap()).unwrap();
        let sp = sheared(&f);
        for k in 1..=2 {
            let space = cx.space(k);
            for l in 0..=3 {
                let coords = space.coords_of_weight(l);
                let mut beta = Cochain::zero(&space);
                for (q, &c) in coords.iter().enumerate() {
                    beta.values[c] = int(q as i64 % 4 - 1);
                }
                let alpha = sp.lift(&space, &beta);
                assert!(alpha.is_homogeneous_geq(&space, l));
                assert_eq!(sp.gr_ell(&space, &alpha, l).unwrap(), beta);
                // the quotient class does not depend on the splitting
                let canon = Splitting::canonical(&f);
                assert_eq!(canon.gr_ell(&space, &alpha, l).unwrap(), beta);
            }
        }
    }

    #[test]
    fn gr_ell_rejects_low_homogeneity() {
        let f = ode_algebra(1, 1).unwrap();
        let cx = CochainComplex::on_negative_part(&f.associated_graded().unwrap()).unwrap();
        let space = cx.space(1);
        let c = space.coords_of_weight(-1)[0];
        let mut a = FilteredHom::zero(&space);
        a.values[c] = int(1);
        let sp = Splitting::canonical(&f);
        assert!(matches!(sp.gr_ell(&space, &a, 0), Err(Error::NotHomogeneous { .. })));
        assert!(sp.gr_ell(&space, &a, -1).unwrap().values[c] == int(1));
    }

    #[test]
    fn complements_round_trip() {
        let f = ode_algebra(1, 1).unwrap();
        let sp = sheared(&f);
        let mut levels: Vec<i32> = f.index().to_vec();
        levels.sort_unstable();
        levels.dedup();
        let ws: Vec<Subspace> = levels.iter().map(|&i| sp.complement(i)).collect();
        assert_eq!(Splitting::from_complements(&f, &ws).unwrap(), sp);
    }

    #[test]
    fn image_homogeneity_counterexample() {
        // degree 0 vector goes to the degree 1 vector, degree 1 vector to 0
        let m = Matrix::from_i64_rows(&[vec![0, 0], vec![1, 0]]);
        let phi = FilteredMap::new(m, vec![0, 1], vec![0, 1]).unwrap();
        assert!(phi.is_compatible());
        assert_eq!(phi.image_homogeneity_violation(), Some(1));
        let id = FilteredMap::new(Matrix::identity(2), vec![0, 1], vec![0, 1]).unwrap();
        assert!(id.is_image_homogeneous());
        let zero = FilteredMap::new(Matrix::zeros(2, 2), vec![0, 1], vec![0, 1]).unwrap();
        assert!(zero.is_image_homogeneous());
    }

    #[test]
    fn exterior_square_of_diagonal() {
        let d = Matrix::from_i64_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        let l = exterior_power(&d, 2);
        assert_eq!(l[(0, 0)], int(6));
        assert_eq!(l[(1, 1)], int(10));
        assert_eq!(l[(2, 2)], int(15));
        assert!(l[(0, 1)].is_zero());
    }
}
