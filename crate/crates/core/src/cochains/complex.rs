use std::collections::HashMap;

use num_traits::Zero;

use super::{sort_with_sign, HomSpace};
use crate::error::{Error, Result};
use crate::exactla::{zero_vec, Matrix, Rational, Vector};
use crate::liealg::{GradedLieAlgebra, LieAlgebra};

/// Cochain of arity `k`, stored as coordinates in the matching [`HomSpace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub arity: usize,
    pub values: Vector,
}

impl Cochain {
    pub fn zero(space: &HomSpace) -> Cochain {
        Cochain {
            arity: space.arity(),
            values: zero_vec(space.dim()),
        }
    }

    pub fn new(arity: usize, values: Vector) -> Cochain {
        Cochain { arity, values }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// Value on argument positions in any order: `(sign, value slice)`, or
    /// `None` when an argument repeats.
    pub fn value_at<'a>(&'a self, space: &HomSpace, args: &[usize]) -> Option<(i32, &'a [Rational])> {
        let mut t = args.to_vec();
        let sign = sort_with_sign(&mut t)?;
        let ti = space.tuple_index().position(&t)?;
        let n = space.n_values();
        Some((sign, &self.values[ti * n..(ti + 1) * n]))
    }

    /// Smallest weight carrying a nonzero coordinate; `None` for zero.
    pub fn homogeneity(&self, space: &HomSpace) -> Option<i32> {
        (0..self.values.len())
            .filter(|&c| !self.values[c].is_zero())
            .map(|c| space.weight(c))
            .min()
    }

    /// Supported on weight `l` only.
    pub fn is_homogeneous_of(&self, space: &HomSpace, l: i32) -> bool {
        (0..self.values.len()).all(|c| self.values[c].is_zero() || space.weight(c) == l)
    }

    /// Part of weight exactly `l`.
    pub fn component(&self, space: &HomSpace, l: i32) -> Cochain {
        let values = (0..self.values.len())
            .map(|c| {
                if space.weight(c) == l {
                    self.values[c].clone()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Cochain::new(self.arity, values)
    }
}

/// Cochain complex `C^*(a, g)` of a subalgebra `a` spanned by some basis
/// vectors of `g`, with values in `g` under the adjoint action.
///
/// With `a = m` the negative part of a graded algebra this is the complex
/// computing `H^*(m, gr g)`; with `a = g` it is the full complex `C^*(g, g)`.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    alg: LieAlgebra,
    degrees: Vec<i32>,
    args: Vec<usize>,
    arg_pos: Vec<Option<usize>>,
    /// For argument position `c`: pairs `x < y` with `[a_x, a_y]` having coefficient on `a_c`.
    by_output: Vec<Vec<(usize, usize, Rational)>>,
}

impl CochainComplex {
    pub fn new(alg: LieAlgebra, degrees: Vec<i32>, args: Vec<usize>) -> Result<CochainComplex> {
        let n = alg.dim();
        if degrees.len() != n {
            return Err(Error::DimensionMismatch("one degree per basis vector required".into()));
        }
        let mut arg_pos = vec![None; n];
        for (p, &a) in args.iter().enumerate() {
            if a >= n || arg_pos[a].is_some() {
                return Err(Error::Precondition("argument basis indices must be distinct and in range".into()));
            }
            arg_pos[a] = Some(p);
        }
        let mut by_output = vec![Vec::new(); args.len()];
        for (x, &ax) in args.iter().enumerate() {
            for (y, &ay) in args.iter().enumerate().skip(x + 1) {
                for (c, coef) in alg.bracket_basis(ax, ay) {
                    let cp = arg_pos[*c].ok_or_else(|| {
                        Error::Precondition(format!(
                            "argument vectors do not span a subalgebra: [{}, {}]",
                            alg.label(ax),
                            alg.label(ay)
                        ))
                    })?;
                    by_output[cp].push((x, y, coef.clone()));
                }
            }
        }
        Ok(CochainComplex {
            alg,
            degrees,
            args,
            arg_pos,
            by_output,
        })
    }

    /// `C^*(m, g)` for the negative part `m` of a graded algebra.
    pub fn on_negative_part(g: &GradedLieAlgebra) -> Result<CochainComplex> {
        CochainComplex::new(g.alg.clone(), g.degrees().to_vec(), g.negative_indices())
    }

    /// `C^*(g, g)` with weights from `degrees`.
    pub fn full(alg: &LieAlgebra, degrees: &[i32]) -> Result<CochainComplex> {
        CochainComplex::new(alg.clone(), degrees.to_vec(), (0..alg.dim()).collect())
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Basis indices of the argument subalgebra, in argument-position order.
    pub fn args(&self) -> &[usize] {
        &self.args
    }

    pub fn arg_position(&self, basis_index: usize) -> Option<usize> {
        self.arg_pos[basis_index]
    }

    pub fn space(&self, k: usize) -> HomSpace {
        HomSpace::new(
            k,
            self.args.iter().map(|&a| self.degrees[a]).collect(),
            self.degrees.clone(),
        )
    }

    /// The differential evaluated pointwise from its defining formula.
    pub fn differential(&self, phi: &Cochain) -> Cochain {
        let k = phi.arity;
        let src = self.space(k);
        let dst = self.space(k + 1);
        let n = self.alg.dim();
        let mut out = zero_vec(dst.dim());
        for (ti, x) in dst.tuple_index().tuples().iter().enumerate() {
            let mut acc = zero_vec(n);
            for i in 0..=k {
                let rest: Vec<usize> = x.iter().enumerate().filter(|&(q, _)| q != i).map(|(_, &p)| p).collect();
                if let Some((s, v)) = phi.value_at(&src, &rest) {
                    let sign = if i % 2 == 0 { s } else { -s };
                    let br = self.alg.bracket_basis_with(self.args[x[i]], v);
                    let c = Rational::from_integer(sign.into());
                    crate::exactla::axpy(&mut acc, &c, &br);
                }
            }
            for i in 0..=k {
                for j in i + 1..=k {
                    let rest: Vec<usize> = x
                        .iter()
                        .enumerate()
                        .filter(|&(q, _)| q != i && q != j)
                        .map(|(_, &p)| p)
                        .collect();
                    for (c, coef) in self.alg.bracket_basis(self.args[x[i]], self.args[x[j]]) {
                        let cp = self.arg_pos[*c].expect("closed subalgebra");
                        let mut t = vec![cp];
                        t.extend(&rest);
                        if let Some((s, v)) = phi.value_at(&src, &t) {
                            let sign = if (i + j) % 2 == 0 { s } else { -s };
                            let w = coef * Rational::from_integer(sign.into());
                            crate::exactla::axpy(&mut acc, &w, v);
                        }
                    }
                }
            }
            out[ti * n..(ti + 1) * n].clone_from_slice(&acc);
        }
        Cochain::new(k + 1, out)
    }

    /// Differential of one coordinate vector of `C^k`, as sparse coordinates of `C^(k+1)`.
    pub fn differential_of_unit(&self, src: &HomSpace, dst: &HomSpace, coord: usize) -> Vec<(usize, Rational)> {
        let (ti, b) = src.split(coord);
        let t = src.tuple_index().tuple(ti).to_vec();
        let r = self.args.len();
        let mut acc: HashMap<usize, Rational> = HashMap::new();
        let mut add = |key: usize, c: Rational| {
            *acc.entry(key).or_insert_with(Rational::zero) += c;
        };
        // (-1)^i [X_i, phi(..X_i omitted..)]
        for x in (0..r).filter(|x| !t.contains(x)) {
            let mut xs = t.clone();
            xs.push(x);
            xs.sort_unstable();
            let i = xs.iter().position(|&p| p == x).expect("inserted");
            let di = dst.tuple_index().position(&xs).expect("valid tuple");
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (out, c) in self.alg.bracket_basis(self.args[x], b) {
                add(dst.coord(di, *out), c * Rational::from_integer(sign.into()));
            }
        }
        // (-1)^(i+j) phi([X_i, X_j], ..X_i, X_j omitted..)
        for (p, &c) in t.iter().enumerate() {
            let rest: Vec<usize> = t.iter().copied().filter(|&q| q != c).collect();
            let sign_c = if p % 2 == 0 { 1 } else { -1 };
            for (x, y, coef) in &self.by_output[c] {
                if rest.contains(x) || rest.contains(y) {
                    continue;
                }
                let mut xs = rest.clone();
                xs.push(*x);
                xs.push(*y);
                xs.sort_unstable();
                let i = xs.iter().position(|q| q == x).expect("inserted");
                let j = xs.iter().position(|q| q == y).expect("inserted");
                let sign = sign_c * if (i + j) % 2 == 0 { 1 } else { -1 };
                let di = dst.tuple_index().position(&xs).expect("valid tuple");
                add(dst.coord(di, b), coef * Rational::from_integer(sign.into()));
            }
        }
        let mut v: Vec<(usize, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    /// Differential of a coordinate vector, assembled from unit differentials.
    pub fn apply_differential(&self, k: usize, values: &[Rational]) -> Vector {
        let src = self.space(k);
        let dst = self.space(k + 1);
        let mut out = zero_vec(dst.dim());
        for (coord, x) in values.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, c) in self.differential_of_unit(&src, &dst, coord) {
                out[i] += x * c;
            }
        }
        out
    }

    /// Matrix of `C^k -> C^(k+1)` in coordinates.
    pub fn differential_matrix(&self, k: usize) -> Matrix {
        let src = self.space(k);
        let dst = self.space(k + 1);
        let mut m = Matrix::zeros(dst.dim(), src.dim());
        for coord in 0..src.dim() {
            for (i, c) in self.differential_of_unit(&src, &dst, coord) {
                m[(i, coord)] = c;
            }
        }
        m
    }

    /// Matrix of `C^k_l -> C^(k+1)_l`; rows and columns follow `coords_of_weight(l)`.
    pub fn differential_block(&self, k: usize, l: i32) -> Result<Matrix> {
        let src = self.space(k);
        let dst = self.space(k + 1);
        let cols = src.coords_of_weight(l);
        let rows = dst.coords_of_weight(l);
        let row_of: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (j, &coord) in cols.iter().enumerate() {
            for (i, c) in self.differential_of_unit(&src, &dst, coord) {
                let r = row_of.get(&i).ok_or_else(|| {
                    Error::Precondition("differential does not preserve homogeneity; is the algebra graded?".into())
                })?;
                m[(*r, j)] = c;
            }
        }
        Ok(m)
    }

    /// `dim H^k_l`.
    pub fn cohomology_dim(&self, k: usize, l: i32) -> Result<usize> {
        let d = self.differential_block(k, l)?;
        let kernel = d.cols() - d.rank();
        let image = if k == 0 {
            0
        } else {
            self.differential_block(k - 1, l)?.rank()
        };
        Ok(kernel - image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int;
    use crate::models::{heisenberg, parabolic_grading, SimpleType};

    fn sample(space: &HomSpace, seed: i64) -> Cochain {
        let values = (0..space.dim()).map(|i| int(((i as i64 * 7 + seed) % 5) - 2)).collect();
        Cochain::new(space.arity(), values)
    }

    #[test]
    fn both_differentials_agree_and_square_to_zero() {
        let g = parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap();
        let cx = CochainComplex::on_negative_part(&g).unwrap();
        for k in 0..3 {
            let phi = sample(&cx.space(k), k as i64 + 3);
            let d1 = cx.differential(&phi);
            assert_eq!(d1.values, cx.apply_differential(k, &phi.values));
            let dd = cx.differential(&d1);
            assert!(dd.is_zero(), "dd != 0 in arity {k}");
        }
    }

    #[test]
    fn full_complex_squares_to_zero() {
        let g = parabolic_grading(SimpleType::Sl(2), &[1]).unwrap();
        let cx = CochainComplex::full(&g.alg, g.degrees()).unwrap();
        let d1 = cx.differential_matrix(1);
        let d2 = cx.differential_matrix(2);
        assert!(d2.mul(&d1).is_zero());
    }

    #[test]
    fn heisenberg_cohomology_in_degree_zero() {
        // H^0(m, m) is the center; H^1_0(m, m) = der_0(m) / ad(m_0) = der_0.
        let h = heisenberg(3).unwrap();
        let cx = CochainComplex::on_negative_part(&h).unwrap();
        assert_eq!(cx.cohomology_dim(0, -2).unwrap(), 1);
        assert_eq!(cx.cohomology_dim(1, 0).unwrap(), 4);
    }
}
