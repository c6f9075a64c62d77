use std::collections::BTreeMap;

use num_traits::Zero;

use super::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace};

/// Lie algebra with a degree attached to every basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    pub alg: LieAlgebra,
    degrees: Vec<i32>,
}

impl GradedLieAlgebra {
    pub fn new(alg: LieAlgebra, degrees: Vec<i32>) -> Result<GradedLieAlgebra> {
        if degrees.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} degrees for a {}-dimensional algebra",
                degrees.len(),
                alg.dim()
            )));
        }
        Ok(GradedLieAlgebra { alg, degrees })
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    /// First basis pair whose bracket has a component outside degree `deg i + deg j`.
    pub fn graded_violation(&self) -> Option<(usize, usize)> {
        self.alg.nonzero_brackets().find_map(|(i, j, t)| {
            let d = self.degrees[i] + self.degrees[j];
            t.iter().any(|(k, _)| self.degrees[*k] != d).then_some((i, j))
        })
    }

    pub fn check_graded(&self) -> bool {
        self.graded_violation().is_none()
    }

    pub fn degree_dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &d in &self.degrees {
            *m.entry(d).or_insert(0) += 1;
        }
        m
    }

    pub fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }

    pub fn negative_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] < 0).collect()
    }

    /// `mu`: the largest `d` with a nonzero component of degree `-d` (0 if none).
    pub fn depth(&self) -> i32 {
        self.degrees.iter().map(|&d| -d).max().unwrap_or(0).max(0)
    }

    /// Largest degree present (0 if none positive).
    pub fn top_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0).max(0)
    }

    /// Negative part `m`, relabelled only by restriction.
    pub fn negative_part(&self) -> Result<GradedLieAlgebra> {
        let idx = self.negative_indices();
        let alg = self.alg.subalgebra(&idx)?;
        GradedLieAlgebra::new(alg, idx.iter().map(|&i| self.degrees[i]).collect())
    }

    /// Whether the degree `-1` part generates every negative degree part.
    pub fn is_fundamental(&self) -> bool {
        let n = self.dim();
        let gens = self.indices_of_degree(-1);
        let neg = self.negative_indices();
        let mut span = Subspace::coordinate(n, gens.iter().copied());
        loop {
            let mut vectors: Vec<_> = span.basis().to_vec();
            for &a in &gens {
                for v in span.basis() {
                    vectors.push(self.alg.bracket_basis_with(a, v));
                }
            }
            let next = Subspace::span(n, vectors);
            if next.dim() == span.dim() {
                break;
            }
            span = next;
        }
        span == Subspace::coordinate(n, neg)
    }

    /// Degree `d` derivations, as a subspace of `n x n` matrices flattened row-major.
    pub fn graded_derivations(&self, d: i32) -> Subspace {
        let n = self.dim();
        // unknown (r, c): coefficient of e_r in D e_c, allowed when deg r = deg c + d
        let unknowns: Vec<(usize, usize)> = (0..n)
            .flat_map(|c| (0..n).map(move |r| (r, c)))
            .filter(|&(r, c)| self.degrees[r] == self.degrees[c] + d)
            .collect();
        let mut col_of = vec![None; n * n];
        for (u, &(r, c)) in unknowns.iter().enumerate() {
            col_of[r * n + c] = Some(u);
        }
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                // D[e_a, e_b] - [D e_a, e_b] - [e_a, D e_b], one row per output index
                let mut block = vec![vec![Rational::zero(); unknowns.len()]; n];
                for (s, cs) in self.alg.bracket_basis(a, b) {
                    for t in 0..n {
                        if let Some(u) = col_of[t * n + *s] {
                            block[t][u] += cs;
                        }
                    }
                }
                for r in 0..n {
                    if let Some(u) = col_of[r * n + a] {
                        for (t, c) in self.alg.bracket_basis(r, b) {
                            block[*t][u] -= c;
                        }
                    }
                    if let Some(u) = col_of[r * n + b] {
                        for (t, c) in self.alg.bracket_basis(a, r) {
                            block[*t][u] -= c;
                        }
                    }
                }
                rows.extend(block.into_iter().filter(|row| row.iter().any(|x| !x.is_zero())));
            }
        }
        let kernel = if rows.is_empty() {
            Subspace::full(unknowns.len())
        } else {
            Matrix::from_rows(rows).kernel()
        };
        Subspace::span(
            n * n,
            kernel.basis().iter().map(|k| {
                let mut flat = vec![Rational::zero(); n * n];
                for (u, x) in k.iter().enumerate() {
                    let (r, c) = unknowns[u];
                    flat[r * n + c] = x.clone();
                }
                flat
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;

    fn heisenberg3() -> GradedLieAlgebra {
        let alg = LieAlgebra::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![(0, 1, vec![(2, int(1))])],
        )
        .unwrap();
        GradedLieAlgebra::new(alg, vec![-1, -1, -2]).unwrap()
    }

    #[test]
    fn heisenberg_grading() {
        let h = heisenberg3();
        assert!(h.check_graded());
        assert!(h.is_fundamental());
        assert_eq!(h.depth(), 2);
        let bad = GradedLieAlgebra::new(h.alg.clone(), vec![-1, -1, -1]).unwrap();
        assert_eq!(bad.graded_violation(), Some((0, 1)));
    }

    #[test]
    fn degree_zero_derivations_of_heisenberg() {
        // gl(2) acting on the generators, trace on the center: dimension 4.
        assert_eq!(heisenberg3().graded_derivations(0).dim(), 4);
    }

    #[test]
    fn abelian_plane_has_all_endomorphisms() {
        let alg = LieAlgebra::abelian(vec!["a".into(), "b".into()]);
        let g = GradedLieAlgebra::new(alg, vec![-1, -1]).unwrap();
        assert_eq!(g.graded_derivations(0).dim(), 4);
        assert!(g.is_fundamental());
    }

    #[test]
    fn non_fundamental_example() {
        // R in degree -1 plus R in degree -2 with zero bracket.
        let alg = LieAlgebra::abelian(vec!["a".into(), "b".into()]);
        let g = GradedLieAlgebra::new(alg, vec![-1, -2]).unwrap();
        assert!(!g.is_fundamental());
    }
}
