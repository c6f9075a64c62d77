use num_traits::{One, Zero};

use super::{axpy, is_zero_vec, Matrix, Rational, Vector};
use crate::error::{Error, Result};

/// Incremental row reduction used to test membership in a growing span.
#[derive(Clone, Debug, Default)]
pub struct Reducer {
    rows: Vec<(usize, Vector)>,
}

impl Reducer {
    pub fn new() -> Reducer {
        Reducer::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after subtracting the stored rows.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let c = -w[*p].clone();
                axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn is_in_span(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it is independent of the stored rows; returns whether it was added.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &w[p];
        for x in w.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push((p, w));
        true
    }
}

/// Linear subspace of `Q^n`, stored by a basis of independent vectors.
///
/// Equality is span equality.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
    reducer: Reducer,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Vec::new(),
            reducer: Reducer::new(),
        }
    }

    pub fn full(ambient: usize) -> Subspace {
        Subspace::from_independent(ambient, (0..ambient).map(|i| super::unit_vec(ambient, i)).collect())
    }

    /// Span of `vectors`; a maximal independent prefix-greedy subset is kept as basis.
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let mut s = Subspace::zero(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            if s.reducer.insert(&v) {
                s.basis.push(v);
            }
        }
        s
    }

    /// Caller guarantees independence; used after elimination.
    pub(crate) fn from_independent(ambient: usize, basis: Vec<Vector>) -> Subspace {
        let mut reducer = Reducer::new();
        for v in &basis {
            let added = reducer.insert(v);
            debug_assert!(added, "basis vectors are not independent");
        }
        Subspace {
            ambient,
            basis,
            reducer,
        }
    }

    /// Span of standard basis vectors at `indices`.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Subspace {
        Subspace::span(ambient, indices.into_iter().map(|i| super::unit_vec(ambient, i)))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// `ambient x dim` matrix whose columns are the basis.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reducer.is_in_span(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        self.basis_matrix().solve_preimage(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let a = self.basis_matrix();
        let b = other.basis_matrix().scale(&-Rational::one());
        let k = a.hstack(&b).kernel();
        let d = self.dim();
        Subspace::span(
            self.ambient,
            k.basis().iter().map(|c| a.mul_vec(&c[..d])),
        )
    }

    /// Image under the linear map `m`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        Subspace::span(m.rows(), self.basis.iter().map(|v| m.mul_vec(v)))
    }

    /// Vectors whose image under `m` lies in `target`, within this subspace.
    pub fn preimage_within(&self, m: &Matrix, target: &Subspace) -> Subspace {
        let b = self.basis_matrix();
        let mb = m.mul(&b);
        let q = target.annihilator_rows();
        if q.rows() == 0 {
            return self.clone();
        }
        let k = q.mul(&mb).kernel();
        Subspace::span(self.ambient, k.basis().iter().map(|c| b.mul_vec(c)))
    }

    /// Basis in reduced echelon form; coordinate subspaces get unit vectors.
    pub fn canonical_basis(&self) -> Vec<Vector> {
        if self.is_zero() {
            return Vec::new();
        }
        self.basis_matrix().transpose().echelon().rows
    }

    pub fn solver(&self) -> CoordinateSolver {
        CoordinateSolver::new(self.basis_matrix()).expect("subspace basis is independent")
    }

    /// Rows spanning the annihilator of this subspace: `q * v = 0` iff `v` is in the span.
    pub fn annihilator_rows(&self) -> Matrix {
        if self.is_zero() {
            return Matrix::identity(self.ambient);
        }
        let bt = self.basis_matrix().transpose();
        let k = bt.kernel();
        if k.is_zero() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(k.basis().to_vec())
    }
}

/// Fast coordinates with respect to a fixed independent family.
///
/// Picks rows where the family is invertible once, then each query is a
/// matrix-vector product plus a membership check.
#[derive(Clone, Debug)]
pub struct CoordinateSolver {
    family: Matrix,
    rows: Vec<usize>,
    inverse: Matrix,
}

impl CoordinateSolver {
    pub fn new(family: Matrix) -> Result<CoordinateSolver> {
        let e = family.transpose().echelon();
        if e.rank() != family.cols() {
            return Err(Error::DimensionMismatch("coordinate family is not independent".into()));
        }
        let rows = e.pivots.clone();
        let inverse = family
            .select_rows(&rows)
            .inverse()
            .ok_or_else(|| Error::Internal("pivot block not invertible".into()))?;
        Ok(CoordinateSolver { family, rows, inverse })
    }

    pub fn dim(&self) -> usize {
        self.family.cols()
    }

    /// Coordinates of `v`, or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[Rational]) -> Option<Vector> {
        let picked: Vector = self.rows.iter().map(|&r| v[r].clone()).collect();
        let c = self.inverse.mul_vec(&picked);
        if self.family.mul_vec(&c).as_slice() == v {
            Some(c)
        } else {
            None
        }
    }
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient
            && self.dim() == other.dim()
            && self.contains_subspace(other)
    }
}

impl Eq for Subspace {}

/// Complement of `s` inside `t`, built by adding basis vectors of `t` in order.
pub fn complement(s: &Subspace, t: &Subspace) -> Result<Subspace> {
    if !t.contains_subspace(s) {
        return Err(Error::NotContained("complement: first subspace is not contained in the second".into()));
    }
    let mut r = s.reducer.clone();
    let mut out = Vec::new();
    for v in t.basis() {
        if r.insert(v) {
            out.push(v.clone());
        }
    }
    Ok(Subspace::from_independent(s.ambient, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, unit_vec};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let s = Subspace::span(3, vec![v(&[1, 0, 1]), v(&[2, 0, 2]), v(&[0, 1, 0])]);
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&v(&[3, 5, 3])));
        assert!(!s.contains(&v(&[1, 0, 0])));
    }

    #[test]
    fn equality_is_span_equality() {
        let a = Subspace::span(2, vec![v(&[1, 1])]);
        let b = Subspace::span(2, vec![v(&[-3, -3])]);
        assert_eq!(a, b);
        assert_ne!(a, Subspace::full(2));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::span(3, vec![v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&b), Subspace::span(3, vec![v(&[0, 1, 0])]));
        assert_eq!(a.sum(&b), Subspace::full(3));
    }

    #[test]
    fn complement_is_greedy_in_basis_order() {
        let s = Subspace::span(2, vec![unit_vec(2, 0)]);
        let c = complement(&s, &Subspace::full(2)).unwrap();
        assert_eq!(c.basis(), &[unit_vec(2, 1)]);
        assert!(complement(&Subspace::full(2), &s).is_err());
    }

    #[test]
    fn preimage_within_subspace() {
        // Projection onto the first coordinate; preimage of zero inside the plane z = 0.
        let m = Matrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let plane = Subspace::span(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let p = plane.preimage_within(&m, &Subspace::zero(3));
        assert_eq!(p, Subspace::span(3, vec![v(&[0, 1, 0])]));
    }

    #[test]
    fn solver_matches_coordinates() {
        let s = Subspace::span(4, vec![v(&[1, 1, 0, 2]), v(&[0, 1, 1, 0])]);
        let solver = s.solver();
        assert_eq!(solver.solve(&v(&[2, 5, 3, 4])), Some(v(&[2, 3])));
        assert_eq!(solver.solve(&v(&[1, 0, 0, 0])), None);
        assert_eq!(s.canonical_basis(), vec![v(&[1, 0, -1, 2]), v(&[0, 1, 1, 0])]);
    }

    #[test]
    fn coordinates_in_basis() {
        let s = Subspace::span(3, vec![v(&[1, 1, 0]), v(&[0, 1, 1])]);
        assert_eq!(s.coordinates(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(s.coordinates(&v(&[1, 0, 0])), None);
    }
}
