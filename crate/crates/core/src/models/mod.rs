//! Catalog of concrete algebras used by the examples, tests and the CLI.

mod free;
mod mutation;
mod ode;
mod parabolic;

pub use free::free_nilpotent;
pub use mutation::{mutation_triple, MutationSign};
pub use ode::{ode_algebra, OdeBasis};
pub use parabolic::{parabolic_grading, SimpleType};

use crate::error::{Error, Result};
use crate::exactla::{int, rat, CoordinateSolver, Matrix, Rational, Subspace, Vector};
use crate::liealg::{terms_of, GradedLieAlgebra, LieAlgebra};

/// `R^n` in degree `-1`.
pub fn abelian(n: usize) -> GradedLieAlgebra {
    let labels = (1..=n).map(|i| format!("x{i}")).collect();
    GradedLieAlgebra::new(LieAlgebra::abelian(labels), vec![-1; n]).expect("degrees match")
}

/// Heisenberg algebra of dimension `d = 2k + 1`: `[x_i, y_i] = z`.
pub fn heisenberg(d: usize) -> Result<GradedLieAlgebra> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::Precondition(format!("Heisenberg dimension must be odd and at least 3, got {d}")));
    }
    let k = (d - 1) / 2;
    let mut labels: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    labels.extend((1..=k).map(|i| format!("y{i}")));
    labels.push("z".into());
    let brackets = (0..k).map(|i| (i, k + i, vec![(2 * k, int(1))]));
    let alg = LieAlgebra::new(labels, brackets.collect::<Vec<_>>())?;
    let mut degrees = vec![-1; 2 * k];
    degrees.push(-2);
    GradedLieAlgebra::new(alg, degrees)
}

/// Symbol of generic rank 3 distributions on 6-manifolds: `R^3 + Lambda^2 R^3`.
pub fn bryant() -> GradedLieAlgebra {
    let labels = ["e1", "e2", "e3", "e12", "e13", "e23"].map(String::from).to_vec();
    let brackets = vec![
        (0, 1, vec![(3, int(1))]),
        (0, 2, vec![(4, int(1))]),
        (1, 2, vec![(5, int(1))]),
    ];
    let alg = LieAlgebra::new(labels, brackets).expect("valid table");
    GradedLieAlgebra::new(alg, vec![-1, -1, -1, -2, -2, -2]).expect("degrees match")
}

/// Symbol of a contact projective type structure in dimension `n = 2k`
/// together with its degree zero algebra `csp(n)`.
///
/// `m_-1 = R^n` with the standard symplectic form `b`, `m_-2` is the kernel
/// of `b` on `Lambda^2 R^n`, and `[X, Y] = X ^ Y - b(X, Y) b~` with
/// `b~ = (1/k) sum e_t ^ e_(t+k)`.
pub fn contact_csp(n: usize) -> Result<(GradedLieAlgebra, Subspace)> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!("contact dimension must be even and positive, got {n}")));
    }
    let k = n / 2;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let pair_pos = |i: usize, j: usize| pairs.iter().position(|&p| p == (i, j)).expect("pair exists");
    let symplectic = |i: usize, j: usize| j == i + k;

    let mut labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let mut family: Vec<Vector> = Vec::new();
    for &(i, j) in &pairs {
        if !symplectic(i, j) {
            let mut v = vec![Rational::from_integer(0.into()); pairs.len()];
            v[pair_pos(i, j)] = int(1);
            family.push(v);
            labels.push(format!("e{}e{}", i + 1, j + 1));
        }
    }
    for t in 1..k {
        let mut v = vec![Rational::from_integer(0.into()); pairs.len()];
        v[pair_pos(0, k)] = int(1);
        v[pair_pos(t, t + k)] = int(-1);
        family.push(v);
        labels.push(format!("w1-w{}", t + 1));
    }
    let solver = CoordinateSolver::new(Matrix::from_columns(pairs.len(), &family))?;

    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut w = vec![Rational::from_integer(0.into()); pairs.len()];
            w[pair_pos(i, j)] = int(1);
            if symplectic(i, j) {
                for t in 0..k {
                    w[pair_pos(t, t + k)] -= rat(1, k as i64);
                }
            }
            let c = solver
                .solve(&w)
                .ok_or_else(|| Error::Internal("bracket outside Lambda^2_0".into()))?;
            let terms = terms_of(&c).into_iter().map(|(p, x)| (n + p, x)).collect();
            brackets.push((i, j, terms));
        }
    }
    let dim = labels.len();
    let alg = LieAlgebra::new(labels, brackets)?;
    let mut degrees = vec![-1; n];
    degrees.resize(dim, -2);
    let m = GradedLieAlgebra::new(alg, degrees)?;
    let g0 = m.graded_derivations(0);
    Ok((m, g0))
}

/// Degree zero derivations of `m` that are skew for the standard inner
/// product on `m_-1`; the sub-Riemannian structure algebra.
pub fn skew_derivations(m: &GradedLieAlgebra) -> Subspace {
    let n = m.dim();
    let der = m.graded_derivations(0);
    let gens = m.indices_of_degree(-1);
    let mut rows = Vec::new();
    for (a, &i) in gens.iter().enumerate() {
        for &j in gens.iter().skip(a) {
            // D[i][j] + D[j][i] = 0 on m_-1
            let mut row = vec![Rational::from_integer(0.into()); n * n];
            row[i * n + j] += int(1);
            row[j * n + i] += int(1);
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return der;
    }
    let q = Matrix::from_rows(rows);
    let b = der.basis_matrix();
    let k = q.mul(&b).kernel();
    Subspace::span(n * n, k.basis().iter().map(|c| b.mul_vec(c)))
}

/// `so(n)` as skew matrices `E_ij - E_ji`, `i < j`.
pub fn so_matrices(n: usize) -> (Vec<String>, Vec<Matrix>) {
    let mut labels = Vec::new();
    let mut mats = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            labels.push(format!("A{}{}", i + 1, j + 1));
            mats.push(crate::liealg::elementary(n, i, j).sub(&crate::liealg::elementary(n, j, i)));
        }
    }
    (labels, mats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_dims() {
        let h = heisenberg(5).unwrap();
        assert_eq!(h.degree_dims().into_iter().collect::<Vec<_>>(), vec![(-2, 1), (-1, 4)]);
        assert!(h.check_graded() && h.alg.check_jacobi() && h.is_fundamental());
        assert!(heisenberg(4).is_err());
    }

    #[test]
    fn bryant_symbol() {
        let b = bryant();
        assert_eq!(b.degree_dims().into_iter().collect::<Vec<_>>(), vec![(-2, 3), (-1, 3)]);
        assert_eq!(b.graded_derivations(0).dim(), 9);
    }

    #[test]
    fn contact_projective_symbol() {
        let (m, g0) = contact_csp(4).unwrap();
        assert_eq!(m.degree_dims().into_iter().collect::<Vec<_>>(), vec![(-2, 5), (-1, 4)]);
        assert!(m.alg.check_jacobi() && m.check_graded() && m.is_fundamental());
        // csp(4) = sp(4) + R
        assert_eq!(g0.dim(), 11);
        let (m2, _) = contact_csp(2).unwrap();
        assert_eq!(m2.dim(), 2);
        assert!(m2.alg.nonzero_brackets().next().is_none());
    }

    #[test]
    fn sub_riemannian_structure_algebra() {
        let h = heisenberg(3).unwrap();
        assert_eq!(skew_derivations(&h).dim(), 1);
        assert_eq!(skew_derivations(&abelian(3)).dim(), 3);
    }
}
