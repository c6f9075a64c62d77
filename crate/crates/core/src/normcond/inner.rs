use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace};
use crate::liealg::{elementary, GradedLieAlgebra, LieAlgebra};
use crate::models::{ode_algebra, OdeBasis};
use crate::prolong::tanaka_prolongation_labeled;

/// Positive definite symmetric bilinear form, by its Gram matrix in the basis of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerProduct {
    pub gram: Matrix,
}

impl InnerProduct {
    /// Checks symmetry and positivity of the leading principal minors.
    pub fn new(gram: Matrix) -> Result<InnerProduct> {
        if gram.rows() != gram.cols() || gram != gram.transpose() {
            return Err(Error::Degenerate("Gram matrix is not symmetric".into()));
        }
        for k in 1..=gram.rows() {
            let idx: Vec<usize> = (0..k).collect();
            if gram.submatrix(&idx, &idx).determinant() <= Rational::zero() {
                return Err(Error::Degenerate(format!("leading minor of size {k} is not positive")));
            }
        }
        Ok(InnerProduct { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        crate::exactla::dot(x, &self.gram.mul_vec(y))
    }

    /// Inner product on `g/p` from the orthocomplement of `p`:
    /// `G_nn - G_np G_pp^-1 G_pn`.
    pub fn quotient_gram(&self, neg: &[usize], p: &[usize]) -> Result<Matrix> {
        let g = &self.gram;
        let gpp = g
            .submatrix(p, p)
            .inverse()
            .ok_or_else(|| Error::Degenerate("inner product degenerate on p".into()))?;
        Ok(g.submatrix(neg, neg).sub(&g.submatrix(neg, p).mul(&gpp).mul(&g.submatrix(p, neg))))
    }

    /// `ad(a)` is skew: `<[a, x], y> + <x, [a, y]> = 0`.
    pub fn is_invariant(&self, alg: &LieAlgebra, a: &[Rational]) -> bool {
        let ad = alg.ad(a);
        ad.transpose().mul(&self.gram).add(&self.gram.mul(&ad)).is_zero()
    }

    /// No pairing between basis vectors of different degree.
    pub fn is_block_diagonal(&self, degrees: &[i32]) -> bool {
        (0..self.dim()).all(|r| (0..self.dim()).all(|c| degrees[r] == degrees[c] || self.gram[(r, c)].is_zero()))
    }
}

fn trace_pairing(x: &Matrix, y: &Matrix) -> Rational {
    x.transpose().mul(y).trace()
}

/// Inner product on `ode_algebra(k, m)` compatible with transposition.
///
/// On `sl(2)` and `gl(m)` it is `tr(X^T Y)`. On `V_k (x) R^m` it is diagonal
/// in the monomial basis; the weights are solved from
/// `<X.v, w> = <v, X^T.w>` for `X = e, f, h`, normalized so the highest
/// weight vector has norm 1.
pub fn ode_inner_product(k: usize, m: usize) -> Result<InnerProduct> {
    let g = ode_algebra(k, m)?;
    let b = OdeBasis { k, m };
    let n = g.dim();
    let mut gram = Matrix::zeros(n, n);
    let sl2 = [elementary(2, 0, 1), elementary(2, 0, 0).sub(&elementary(2, 1, 1)), elementary(2, 1, 0)];
    for (i, x) in sl2.iter().enumerate() {
        for (j, y) in sl2.iter().enumerate() {
            gram[(i, j)] = trace_pairing(x, y);
        }
    }
    for a in 0..m {
        for c in 0..m {
            for a2 in 0..m {
                for c2 in 0..m {
                    gram[(b.gl(a, c), b.gl(a2, c2))] = trace_pairing(&elementary(m, a, c), &elementary(m, a2, c2));
                }
            }
        }
    }
    // unknown weight w_i on v(i, .); transpose pairs e <-> f, h <-> h
    let pairs = [(OdeBasis::E, OdeBasis::F), (OdeBasis::F, OdeBasis::E), (OdeBasis::H, OdeBasis::H)];
    let coef = |x: usize, i: usize, j: usize| -> Rational {
        g.alg
            .bracket_basis(x, b.v(i, 0))
            .iter()
            .find(|(t, _)| *t == b.v(j, 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    };
    let mut rows = Vec::new();
    for &(x, xt) in &pairs {
        for i in 0..=k {
            for j in 0..=k {
                // <X v_i, v_j> - <v_i, X^T v_j> = 0
                let mut row = vec![Rational::zero(); k + 1];
                row[j] += coef(x, i, j);
                row[i] -= coef(xt, j, i);
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let homogeneous = Matrix::from_rows(rows.clone());
    if homogeneous.kernel().dim() != 1 {
        return Err(Error::Internal("adjointness constraints do not fix the weights up to scale".into()));
    }
    let mut norm = vec![Rational::zero(); k + 1];
    norm[0] = Rational::one();
    rows.push(norm);
    let mut rhs = vec![Rational::zero(); rows.len()];
    *rhs.last_mut().expect("normalization row") = Rational::one();
    let w = Matrix::from_rows(rows)
        .solve_preimage(&rhs)
        .ok_or_else(|| Error::Internal("adjointness constraints are inconsistent".into()))?;
    for i in 0..=k {
        for a in 0..m {
            gram[(b.v(i, a), b.v(i, a))] = w[i].clone();
        }
    }
    InnerProduct::new(gram)
}

/// `m + g0` as a graded Lie algebra, `g0` a subalgebra of degree 0 derivations.
pub fn extend_by_derivations(m: &GradedLieAlgebra, g0: &Subspace, labels: Vec<String>) -> Result<GradedLieAlgebra> {
    let total = tanaka_prolongation_labeled(m, g0, labels, 0)?.total;
    if let Some((i, j, k)) = total.alg.jacobi_violation() {
        return Err(Error::Jacobi { i, j, k });
    }
    Ok(total)
}

/// Inner product on `g = m + g0` built from an inner product `b` on `m_-1`.
///
/// `m_-2` gets the inner product of the orthocomplement of the kernel of
/// the bracket `Lambda^2 m_-1 -> m_-2`, with
/// `<x^y, u^w> = <x,u><y,w> - <x,w><y,u>`; each further `m_-i` is handled
/// the same way through `m_-1 (x) m_-(i-1) -> m_-i`. On `g0` it is minus the
/// trace form of the action on `m_-1`.
pub fn subriemannian_inner_product(
    m: &GradedLieAlgebra,
    b: &Matrix,
    g0: &Subspace,
    g0_labels: Vec<String>,
) -> Result<(GradedLieAlgebra, InnerProduct)> {
    let n = m.dim();
    if m.degrees().iter().any(|&d| d >= 0) {
        return Err(Error::Precondition("m must be negatively graded".into()));
    }
    if !m.is_fundamental() {
        return Err(Error::Precondition("m is not generated by its degree -1 part".into()));
    }
    let gens = m.indices_of_degree(-1);
    InnerProduct::new(b.clone())?;
    if b.rows() != gens.len() {
        return Err(Error::DimensionMismatch("inner product on m_-1 has the wrong size".into()));
    }
    let mats: Vec<Matrix> = g0.basis().iter().map(|v| Matrix::from_flat(n, v)).collect();
    let restricted: Vec<Matrix> = mats.iter().map(|d| d.submatrix(&gens, &gens)).collect();
    for d in &restricted {
        if !d.transpose().mul(b).add(&b.mul(d)).is_zero() {
            return Err(Error::Precondition("g0 is not skew on m_-1".into()));
        }
    }
    let g = extend_by_derivations(m, g0, g0_labels)?;
    let dim = g.dim();
    let mut gram = Matrix::zeros(dim, dim);
    let mut blocks: Vec<(Vec<usize>, Matrix)> = vec![(gens.clone(), b.clone())];
    for i in 2..=m.depth() {
        let target = m.indices_of_degree(-i);
        // (tensor basis pairs, gram on the tensor space)
        let (pairs, h): (Vec<(usize, usize)>, Matrix) = if i == 2 {
            let pairs: Vec<(usize, usize)> = (0..gens.len())
                .flat_map(|x| (x + 1..gens.len()).map(move |y| (x, y)))
                .collect();
            let mut h = Matrix::zeros(pairs.len(), pairs.len());
            for (r, &(x, y)) in pairs.iter().enumerate() {
                for (c, &(u, w)) in pairs.iter().enumerate() {
                    h[(r, c)] = &b[(x, u)] * &b[(y, w)] - &b[(x, w)] * &b[(y, u)];
                }
            }
            (pairs.into_iter().map(|(x, y)| (gens[x], gens[y])).collect(), h)
        } else {
            let (prev, pg) = blocks.last().expect("previous block");
            let mut pairs = Vec::new();
            for &x in &gens {
                for &y in prev {
                    pairs.push((x, y));
                }
            }
            let h = {
                let mut h = Matrix::zeros(pairs.len(), pairs.len());
                for r in 0..pairs.len() {
                    for c in 0..pairs.len() {
                        let (xr, yr) = (r / prev.len(), r % prev.len());
                        let (xc, yc) = (c / prev.len(), c % prev.len());
                        h[(r, c)] = &b[(xr, xc)] * &pg[(yr, yc)];
                    }
                }
                h
            };
            (pairs, h)
        };
        let mut br = Matrix::zeros(target.len(), pairs.len());
        for (c, &(x, y)) in pairs.iter().enumerate() {
            for (t, v) in m.alg.bracket_basis(x, y) {
                let r = target
                    .iter()
                    .position(|z| z == t)
                    .ok_or_else(|| Error::Internal("bracket leaves the expected degree".into()))?;
                br[(r, c)] = v.clone();
            }
        }
        let hinv = h
            .inverse()
            .ok_or_else(|| Error::Degenerate("induced tensor inner product is degenerate".into()))?;
        let gi = br
            .mul(&hinv)
            .mul(&br.transpose())
            .inverse()
            .ok_or_else(|| Error::Precondition(format!("bracket onto degree -{i} is not surjective")))?;
        blocks.push((target, gi));
    }
    for (idx, blk) in &blocks {
        for (r, &x) in idx.iter().enumerate() {
            for (c, &y) in idx.iter().enumerate() {
                gram[(x, y)] = blk[(r, c)].clone();
            }
        }
    }
    for (a, da) in restricted.iter().enumerate() {
        for (c, dc) in restricted.iter().enumerate() {
            gram[(n + a, n + c)] = -da.mul(dc).trace();
        }
    }
    let ip = InnerProduct::new(gram)?;
    for a in 0..g0.dim() {
        let e = crate::exactla::unit_vec(dim, n + a);
        if !ip.is_invariant(&g.alg, &e) {
            return Err(Error::Internal("induced inner product is not invariant".into()));
        }
    }
    Ok((g, ip))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, rat};
    use crate::models::{abelian, heisenberg, skew_derivations};
    use num_integer::binomial;

    #[test]
    fn ode_weights_are_inverse_binomials() {
        for k in 1..=4 {
            let ip = ode_inner_product(k, 1).unwrap();
            let b = OdeBasis { k, m: 1 };
            for i in 0..=k {
                assert_eq!(ip.gram[(b.v(i, 0), b.v(i, 0))], rat(1, binomial(k as i64, i as i64)));
            }
            assert_eq!(ip.gram[(OdeBasis::E, OdeBasis::E)], int(1));
            assert_eq!(ip.gram[(OdeBasis::H, OdeBasis::H)], int(2));
            assert_eq!(ip.gram[(OdeBasis::F, OdeBasis::F)], int(1));
        }
    }

    #[test]
    fn ode_inner_product_is_graded_and_transpose_compatible() {
        let g = ode_algebra(3, 2).unwrap();
        let ip = ode_inner_product(3, 2).unwrap();
        assert!(ip.is_block_diagonal(g.index()));
        // <e.v, w> = <v, f.w> on the V block
        let b = OdeBasis { k: 3, m: 2 };
        let ade = g.alg.ad_basis(OdeBasis::E);
        let adf = g.alg.ad_basis(OdeBasis::F);
        for i in 0..=3 {
            for j in 0..=3 {
                let (v, w) = (b.v(i, 1), b.v(j, 1));
                let lhs = ip.pairing(&ade.column(v), &crate::exactla::unit_vec(g.dim(), w));
                let rhs = ip.pairing(&crate::exactla::unit_vec(g.dim(), v), &adf.column(w));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn heisenberg_center_gets_norm_one() {
        let h = heisenberg(3).unwrap();
        let so = skew_derivations(&h);
        let (g, ip) = subriemannian_inner_product(&h, &Matrix::identity(2), &so, vec!["J".into()]).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(ip.gram[(2, 2)], int(1));
        assert_eq!(ip.gram[(3, 3)], int(2));
    }

    #[test]
    fn plane_with_rotations() {
        let m = abelian(2);
        let so = skew_derivations(&m);
        let (_, ip) = subriemannian_inner_product(&m, &Matrix::identity(2), &so, vec!["J".into()]).unwrap();
        assert_eq!(ip.gram[(0, 0)], int(1));
        assert!(ip.gram[(0, 1)].is_zero());
        assert!(ip.gram[(2, 2)] > Rational::zero());
    }

    #[test]
    fn non_skew_structure_algebra_is_rejected() {
        let m = abelian(2);
        let gl = m.graded_derivations(0);
        let labels = (0..gl.dim()).map(|i| format!("D{i}")).collect();
        assert!(subriemannian_inner_product(&m, &Matrix::identity(2), &gl, labels).is_err());
    }

    #[test]
    fn rejects_indefinite_grams() {
        let g = Matrix::from_i64_rows(&[vec![1, 2], vec![2, 1]]);
        assert!(InnerProduct::new(g).is_err());
    }
}
