//! Lie algebras given by structure constants, with gradings and filtrations.

mod filtered;
mod graded;

pub use filtered::{continue_filtration, continued_components, FilteredLieAlgebra};
pub use graded::GradedLieAlgebra;


use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{zero_vec, CoordinateSolver, Matrix, Rational, Subspace, Vector};

/// Sparse linear combination of basis vectors, sorted by index, no zero coefficients.
pub type Terms = Vec<(usize, Rational)>;

/// Finite dimensional Lie algebra over Q in a fixed basis.
///
/// Only brackets with `i < j` are supplied; antisymmetry is built in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    table: Vec<Terms>,
}

fn canonical_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> Terms {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in terms {
        *acc.entry(k).or_insert_with(Rational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

pub fn terms_of(v: &[Rational]) -> Terms {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

impl LieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j] = sum c_k e_k`.
    ///
    /// Each unordered pair may appear once; `i > j` is accepted and negated.
    pub fn new(labels: Vec<String>, brackets: impl IntoIterator<Item = (usize, usize, Terms)>) -> Result<LieAlgebra> {
        let n = labels.len();
        let mut table = vec![Terms::new(); n * n];
        let mut seen = vec![false; n * n];
        for (i, j, terms) in brackets {
            if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::DimensionMismatch(format!("bracket [{i}, {j}] refers to a basis index out of range")));
            }
            if i == j {
                if terms.iter().all(|(_, c)| c.is_zero()) {
                    continue;
                }
                return Err(Error::Precondition(format!("bracket [{i}, {i}] must vanish")));
            }
            let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
            if seen[a * n + b] {
                return Err(Error::Precondition(format!("bracket of basis pair ({a}, {b}) given twice")));
            }
            seen[a * n + b] = true;
            let t = canonical_terms(terms.into_iter().map(|(k, c)| (k, if sign > 0 { c } else { -c })));
            table[b * n + a] = t.iter().map(|(k, c)| (*k, -c.clone())).collect();
            table[a * n + b] = t;
        }
        Ok(LieAlgebra { labels, table })
    }

    pub fn abelian(labels: Vec<String>) -> LieAlgebra {
        let n = labels.len();
        LieAlgebra {
            labels,
            table: vec![Terms::new(); n * n],
        }
    }

    /// Matrix Lie algebra spanned by `mats`; brackets are commutators.
    pub fn from_matrices(labels: Vec<String>, mats: &[Matrix]) -> Result<LieAlgebra> {
        if labels.len() != mats.len() {
            return Err(Error::DimensionMismatch("one label per matrix required".into()));
        }
        let Some(first) = mats.first() else {
            return Ok(LieAlgebra::abelian(labels));
        };
        let flat_len = first.rows() * first.cols();
        let family: Vec<Vector> = mats.iter().map(|m| m.flat().to_vec()).collect();
        let solver = CoordinateSolver::new(Matrix::from_columns(flat_len, &family))?;
        let mut brackets = Vec::new();
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                let c = mats[i].commutator(&mats[j]);
                let coords = solver.solve(c.flat()).ok_or_else(|| {
                    Error::Precondition(format!("span of matrices is not closed: [{}, {}]", labels[i], labels[j]))
                })?;
                brackets.push((i, j, terms_of(&coords)));
            }
        }
        LieAlgebra::new(labels, brackets)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(&self, labels: Vec<String>) -> LieAlgebra {
        assert_eq!(labels.len(), self.dim());
        LieAlgebra {
            labels,
            table: self.table.clone(),
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Terms {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket_basis_vec(&self, i: usize, j: usize) -> Vector {
        let mut v = zero_vec(self.dim());
        for (k, c) in self.bracket_basis(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// `ad(e_i)`: column `j` holds `[e_i, e_j]`.
    pub fn ad_basis(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            for (k, c) in self.bracket_basis(i, j) {
                m[(*k, j)] = c.clone();
            }
        }
        m
    }

    pub fn ad(&self, x: &[Rational]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += a * c;
                }
            }
        }
        m
    }

    /// Brackets `[e_i, e_j]` with `i < j` that are nonzero.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &Terms)> + '_ {
        let n = self.dim();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j))).filter_map(move |(i, j)| {
            let t = self.bracket_basis(i, j);
            (!t.is_empty()).then_some((i, j, t))
        })
    }

    fn bracket_terms_with_basis(&self, terms: &Terms, k: usize, out: &mut Vector) {
        for (s, c) in terms {
            for (t, d) in self.bracket_basis(*s, k) {
                out[*t] += c * d;
            }
        }
    }

    /// First basis triple `i < j < k` violating the Jacobi identity.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = zero_vec(n);
                    self.bracket_terms_with_basis(self.bracket_basis(i, j), k, &mut acc);
                    self.bracket_terms_with_basis(self.bracket_basis(j, k), i, &mut acc);
                    self.bracket_terms_with_basis(self.bracket_basis(k, i), j, &mut acc);
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> bool {
        self.jacobi_violation().is_none()
    }

    /// `B_ij = tr(ad e_i ad e_j)`.
    pub fn killing_form(&self) -> Matrix {
        let n = self.dim();
        let ads: Vec<Matrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                b[(i, j)] = t.clone();
                b[(j, i)] = t;
            }
        }
        b
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows = Vec::new();
        for b in 0..n {
            let ad = self.ad_basis(b);
            for r in 0..n {
                rows.push(ad.row(r).to_vec());
            }
        }
        if rows.is_empty() {
            return Subspace::zero(0);
        }
        Matrix::from_rows(rows).kernel()
    }

    /// `{X : [X, S] in S}`.
    pub fn normalizer(&self, s: &Subspace) -> Subspace {
        let n = self.dim();
        let q = s.annihilator_rows();
        if q.rows() == 0 {
            return Subspace::full(n);
        }
        let mut stacked: Option<Matrix> = None;
        for v in s.basis() {
            // [X, v] = -ad(v) X
            let block = q.mul(&self.ad(v));
            stacked = Some(match stacked {
                None => block,
                Some(m) => m.vstack(&block),
            });
        }
        match stacked {
            None => Subspace::full(n),
            Some(m) => m.kernel(),
        }
    }

    /// Same algebra in the basis `new_basis` (coordinates in the old basis).
    pub fn change_basis(&self, new_basis: &[Vector], labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if new_basis.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch("change of basis needs dim many vectors and labels".into()));
        }
        let p = Matrix::from_columns(n, new_basis);
        let inv = p
            .inverse()
            .ok_or_else(|| Error::Precondition("new basis is not a basis".into()))?;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let br = self.bracket(&new_basis[i], &new_basis[j]);
                brackets.push((i, j, terms_of(&inv.mul_vec(&br))));
            }
        }
        LieAlgebra::new(labels, brackets)
    }

    /// Restriction to the basis vectors `indices`, which must span a subalgebra.
    pub fn subalgebra(&self, indices: &[usize]) -> Result<LieAlgebra> {
        let mut pos = vec![None; self.dim()];
        for (p, &i) in indices.iter().enumerate() {
            pos[i] = Some(p);
        }
        let mut brackets = Vec::new();
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate().skip(a + 1) {
                let mut t = Terms::new();
                for (k, c) in self.bracket_basis(i, j) {
                    let p = pos[*k].ok_or_else(|| {
                        Error::Precondition(format!("[{}, {}] leaves the chosen basis subset", self.label(i), self.label(j)))
                    })?;
                    t.push((p, c.clone()));
                }
                brackets.push((a, b, t));
            }
        }
        LieAlgebra::new(indices.iter().map(|&i| self.labels[i].clone()).collect(), brackets)
    }

    /// Same structure constants, labels ignored.
    pub fn same_structure(&self, other: &LieAlgebra) -> bool {
        self.table == other.table
    }

    /// Image of `x` under `ad(e_i)` accumulated into `out` with weight `c`.
    pub(crate) fn add_bracket_basis(&self, out: &mut [Rational], c: &Rational, i: usize, j: usize) {
        for (k, d) in self.bracket_basis(i, j) {
            out[*k] += c * d;
        }
    }

    pub(crate) fn bracket_basis_with(&self, i: usize, y: &[Rational]) -> Vector {
        let mut out = zero_vec(self.dim());
        for (j, b) in y.iter().enumerate() {
            if !b.is_zero() {
                self.add_bracket_basis(&mut out, b, i, j);
            }
        }
        out
    }
}

/// Matrix Lie algebra helper: `E_ij` in `gl(n)`.
pub fn elementary(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = Rational::from_integer(1.into());
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn sl2() -> LieAlgebra {
        // basis e, h, f
        LieAlgebra::new(
            vec!["e".into(), "h".into(), "f".into()],
            vec![
                (0, 1, vec![(0, int(-2))]),
                (0, 2, vec![(1, int(1))]),
                (1, 2, vec![(2, int(-2))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn antisymmetry_is_structural() {
        let g = sl2();
        assert_eq!(g.bracket_basis(1, 0), &vec![(0, int(2))]);
        assert!(g.bracket_basis(2, 2).is_empty());
    }

    #[test]
    fn sl2_is_a_lie_algebra() {
        assert!(sl2().check_jacobi());
    }

    #[test]
    fn killing_form_of_sl2() {
        let b = sl2().killing_form();
        assert_eq!(b[(1, 1)], int(8));
        assert_eq!(b[(0, 2)], int(4));
        assert_eq!(b[(0, 0)], int(0));
    }

    #[test]
    fn jacobi_failure_reports_a_triple() {
        // [a,b] = a, [b,c] = b, [a,c] = 0 : not a Lie algebra.
        let bad = LieAlgebra::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1, vec![(0, int(1))]), (1, 2, vec![(1, int(1))])],
        )
        .unwrap();
        assert_eq!(bad.jacobi_violation(), Some((0, 1, 2)));
    }

    #[test]
    fn from_matrices_matches_hand_table() {
        let e = elementary(2, 0, 1);
        let f = elementary(2, 1, 0);
        let h = elementary(2, 0, 0).sub(&elementary(2, 1, 1));
        let g = LieAlgebra::from_matrices(vec!["e".into(), "h".into(), "f".into()], &[e, h, f]).unwrap();
        assert!(g.same_structure(&sl2()));
    }

    #[test]
    fn center_and_normalizer() {
        let g = sl2();
        assert_eq!(g.center().dim(), 0);
        let borel = Subspace::coordinate(3, [0, 1]);
        assert_eq!(g.normalizer(&borel), borel);
        let heis = LieAlgebra::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![(0, 1, vec![(2, int(1))])],
        )
        .unwrap();
        assert_eq!(heis.center(), Subspace::coordinate(3, [2]));
    }

    #[test]
    fn change_of_basis_preserves_jacobi() {
        let g = sl2();
        let nb = vec![
            vec![int(1), int(1), int(0)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(2), int(1)],
        ];
        let h = g.change_basis(&nb, vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert!(h.check_jacobi());
        assert_eq!(h.killing_form().determinant(), g.killing_form().determinant());
    }
}
