use std::collections::HashMap;

use num_traits::Zero;

use super::{sort_with_sign, HomSpace};
use crate::error::{Error, Result};
use crate::exactla::{zero_vec, Matrix, Rational, Subspace, Vector};
use crate::liealg::LieAlgebra;

/// Chain in `Lambda^k a (x) g`, coordinates as in [`HomSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub arity: usize,
    pub values: Vector,
}

impl Chain {
    pub fn new(arity: usize, values: Vector) -> Chain {
        Chain { arity, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }
}

/// Homology chain complex `Lambda^* a (x) g` of a subalgebra `a` of `g`
/// (given by an arbitrary basis `z_1..z_r`) with coefficients in the
/// adjoint module.
///
/// Chains of arity `k` share coordinates with cochains on `r` arguments:
/// `z_T (x) e_b` has weight `deg(e_b) + sum deg(z_t)`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    alg: LieAlgebra,
    value_degrees: Vec<i32>,
    sub_degrees: Vec<i32>,
    /// `ad(z_a)` on `g`.
    action: Vec<Matrix>,
    /// `[z_a, z_b]` in `z` coordinates, for `a < b`, nonzero entries.
    brackets: HashMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl ChainComplex {
    pub fn new(alg: LieAlgebra, value_degrees: Vec<i32>, sub_basis: Vec<Vector>, sub_degrees: Vec<i32>) -> Result<ChainComplex> {
        let n = alg.dim();
        if value_degrees.len() != n || sub_degrees.len() != sub_basis.len() {
            return Err(Error::DimensionMismatch("chain complex degrees".into()));
        }
        let span = Subspace::span(n, sub_basis.iter().cloned());
        if span.dim() != sub_basis.len() {
            return Err(Error::Precondition("subalgebra basis is not linearly independent".into()));
        }
        let solver = crate::exactla::CoordinateSolver::new(Matrix::from_columns(n, &sub_basis))?;
        let mut brackets = HashMap::new();
        for a in 0..sub_basis.len() {
            for b in a + 1..sub_basis.len() {
                let br = alg.bracket(&sub_basis[a], &sub_basis[b]);
                let coords = solver
                    .solve(&br)
                    .ok_or_else(|| Error::NotContained("subalgebra is not closed under the bracket".into()))?;
                let nz: Vec<(usize, Rational)> =
                    coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !nz.is_empty() {
                    brackets.insert((a, b), nz);
                }
            }
        }
        let action = sub_basis.iter().map(|z| alg.ad(z)).collect();
        Ok(ChainComplex {
            alg,
            value_degrees,
            sub_degrees,
            action,
            brackets,
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn space(&self, k: usize) -> HomSpace {
        HomSpace::new(
            k,
            self.sub_degrees.iter().map(|d| -d).collect(),
            self.value_degrees.clone(),
        )
    }

    /// Boundary of one coordinate vector of `C_k`, as sparse coordinates of `C_(k-1)`:
    ///
    /// `sum_i (-1)^i z_(T - t_i) (x) [z_(t_i), e_b]
    ///  + sum_(i<j) (-1)^(i+j) [z_(t_i), z_(t_j)] ^ z_(T - t_i - t_j) (x) e_b`
    /// with positions counted from 1.
    pub fn boundary_of_unit(&self, src: &HomSpace, dst: &HomSpace, coord: usize) -> Vec<(usize, Rational)> {
        let (ti, b) = src.split(coord);
        let t = src.tuple_index().tuple(ti).to_vec();
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        for (q, &tq) in t.iter().enumerate() {
            let rest: Vec<usize> = t.iter().copied().filter(|&x| x != tq).collect();
            let di = dst.tuple_index().position(&rest).expect("subtuple");
            // 1-based position q+1
            let sign = if q % 2 == 0 { -1 } else { 1 };
            let col = &self.action[tq];
            for r in 0..col.rows() {
                let c = &col[(r, b)];
                if !c.is_zero() {
                    *acc.entry(dst.coord(di, r)).or_insert_with(Rational::zero) += c * Rational::from_integer(sign.into());
                }
            }
        }
        for q in 0..t.len() {
            for s in q + 1..t.len() {
                let Some(br) = self.brackets.get(&(t[q], t[s])) else {
                    continue;
                };
                let rest: Vec<usize> = t
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != q && p != s)
                    .map(|(_, &x)| x)
                    .collect();
                let sign_qs = if (q + s) % 2 == 0 { 1 } else { -1 };
                for (c, coef) in br {
                    let mut tup = vec![*c];
                    tup.extend(&rest);
                    if let Some(sg) = sort_with_sign(&mut tup) {
                        let di = dst.tuple_index().position(&tup).expect("valid tuple");
                        *acc.entry(dst.coord(di, b)).or_insert_with(Rational::zero) +=
                            coef * Rational::from_integer((sign_qs * sg).into());
                    }
                }
            }
        }
        let mut v: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn boundary(&self, chain: &Chain) -> Result<Chain> {
        if chain.arity == 0 {
            return Err(Error::Precondition("no boundary below arity 0".into()));
        }
        let src = self.space(chain.arity);
        let dst = self.space(chain.arity - 1);
        let mut out = zero_vec(dst.dim());
        for (coord, x) in chain.values.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in self.boundary_of_unit(&src, &dst, coord) {
                out[i] += x * c;
            }
        }
        Ok(Chain::new(chain.arity - 1, out))
    }

    /// Matrix of `C_k -> C_(k-1)`, `k >= 1`.
    pub fn boundary_matrix(&self, k: usize) -> Matrix {
        assert!(k >= 1, "boundary_matrix needs k >= 1");
        let src = self.space(k);
        let dst = self.space(k - 1);
        let mut m = Matrix::zeros(dst.dim(), src.dim());
        for coord in 0..src.dim() {
            for (i, c) in self.boundary_of_unit(&src, &dst, coord) {
                m[(i, coord)] = c;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, unit_vec};
    use crate::models::{parabolic_grading, SimpleType};

    #[test]
    fn boundary_squares_to_zero_on_borel_nilradical() {
        let g = parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap();
        let pos: Vec<usize> = (0..g.dim()).filter(|&i| g.degree(i) > 0).collect();
        let basis: Vec<Vector> = pos.iter().map(|&i| unit_vec(g.dim(), i)).collect();
        let degs = pos.iter().map(|&i| g.degree(i)).collect();
        let cx = ChainComplex::new(g.alg.clone(), g.degrees().to_vec(), basis, degs).unwrap();
        for k in 2..=3 {
            let d = cx.boundary_matrix(k - 1).mul(&cx.boundary_matrix(k));
            assert!(d.is_zero(), "k={k}");
        }
        let c = Chain::new(2, (0..cx.space(2).dim()).map(|i| int(i as i64 % 3 - 1)).collect());
        let b = cx.boundary(&c).unwrap();
        assert!(cx.boundary(&b).unwrap().is_zero());
    }

    #[test]
    fn non_closed_subspace_is_rejected() {
        let g = parabolic_grading(SimpleType::Sl(2), &[1]).unwrap();
        let basis = vec![unit_vec(3, 0), unit_vec(3, 2)];
        assert!(ChainComplex::new(g.alg.clone(), g.degrees().to_vec(), basis, vec![1, -1]).is_err());
    }
}
