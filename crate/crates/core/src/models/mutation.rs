use crate::error::{Error, Result};
use crate::liealg::{elementary, FilteredLieAlgebra, LieAlgebra};

use super::so_matrices;

/// Sign of `[(0, v), (0, w)]` in the block presentation `(A, v)`, `A` in `o(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationSign {
    /// `o(n+1)`.
    Positive,
    /// `euc(n) = o(n) x| R^n`.
    Flat,
    /// `o(n, 1)`.
    Negative,
}

fn mutation(n: usize, sign: MutationSign) -> Result<FilteredLieAlgebra> {
    let (mut labels, small) = so_matrices(n);
    let big = n + 1;
    let embed = |a: &crate::exactla::Matrix| {
        let mut m = crate::exactla::Matrix::zeros(big, big);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = a[(i, j)].clone();
            }
        }
        m
    };
    let mut mats: Vec<_> = small.iter().map(embed).collect();
    for i in 0..n {
        labels.push(format!("v{}", i + 1));
        let up = elementary(big, i, n);
        let down = elementary(big, n, i);
        mats.push(match sign {
            MutationSign::Positive => up.sub(&down),
            MutationSign::Flat => up,
            MutationSign::Negative => up.add(&down),
        });
    }
    let so_dim = n * (n - 1) / 2;
    let mut index = vec![0; so_dim];
    index.extend(std::iter::repeat(-1).take(n));
    FilteredLieAlgebra::new(LieAlgebra::from_matrices(labels, &mats)?, index)
}

/// `o(n+1)`, `euc(n)` and `o(n, 1)` with `g^0 = o(n)` and `g/g^0 = R^n`.
///
/// All three share the associated graded algebra `R^n + o(n)`.
pub fn mutation_triple(n: usize) -> Result<[FilteredLieAlgebra; 3]> {
    if n < 2 {
        return Err(Error::Precondition("mutation triple needs n >= 2".into()));
    }
    Ok([
        mutation(n, MutationSign::Positive)?,
        mutation(n, MutationSign::Flat)?,
        mutation(n, MutationSign::Negative)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_three_algebras_differ() {
        let [o, e, l] = mutation_triple(2).unwrap();
        assert!(!o.alg.same_structure(&e.alg));
        assert!(!o.alg.same_structure(&l.alg));
        // [v1, v2] vanishes only in the flat model
        assert!(e.alg.bracket_basis(1, 2).is_empty());
        assert!(!o.alg.bracket_basis(1, 2).is_empty());
    }

    #[test]
    fn all_are_filtered_lie_algebras() {
        for n in 2..=3 {
            for g in mutation_triple(n).unwrap() {
                assert!(g.alg.check_jacobi());
                assert!(g.check_filtered());
            }
        }
    }
}
