use crate::error::{Error, Result};
use crate::exactla::int;
use crate::liealg::{FilteredLieAlgebra, LieAlgebra, Terms};

/// Positions of the named basis vectors of [`ode_algebra`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OdeBasis {
    pub k: usize,
    pub m: usize,
}

impl OdeBasis {
    pub const E: usize = 0;
    pub const H: usize = 1;
    pub const F: usize = 2;

    pub fn dim(&self) -> usize {
        3 + self.m * self.m + self.m * (self.k + 1)
    }

    /// `E_ab` in `gl(m)`, zero based.
    pub fn gl(&self, a: usize, b: usize) -> usize {
        3 + a * self.m + b
    }

    /// `x^(k-i) y^i (x) eps_a`, zero based `a`.
    pub fn v(&self, i: usize, a: usize) -> usize {
        3 + self.m * self.m + i * self.m + a
    }
}

/// `(sl(2) + gl(m)) x| (V_k (x) R^m)`, the model for systems of `m` ordinary
/// differential equations of order `k + 1`.
///
/// `V_k` is realized on monomials `x^(k-i) y^i` with `e = x d/dy`,
/// `f = y d/dx`, `h = x d/dx - y d/dy`. Filtration indices: `e` 1, `h` and
/// `gl(m)` 0, `f` -1, and the monomial `x^(k-i) y^i` sits at `-(i+1)`.
pub fn ode_algebra(k: usize, m: usize) -> Result<FilteredLieAlgebra> {
    if k == 0 || m == 0 {
        return Err(Error::Precondition("ode algebra needs k >= 1 and m >= 1".into()));
    }
    let b = OdeBasis { k, m };
    let (e, h, f) = (OdeBasis::E, OdeBasis::H, OdeBasis::F);
    let mut labels = vec!["e".to_string(), "h".into(), "f".into()];
    for a in 0..m {
        for c in 0..m {
            labels.push(format!("E{}{}", a + 1, c + 1));
        }
    }
    for i in 0..=k {
        for a in 0..m {
            labels.push(format!("v{}_{}", i, a + 1));
        }
    }
    let ki = k as i64;
    let mut br: Vec<(usize, usize, Terms)> = vec![
        (e, h, vec![(e, int(-2))]),
        (e, f, vec![(h, int(1))]),
        (h, f, vec![(f, int(-2))]),
    ];
    for a in 0..m {
        for c in 0..m {
            for a2 in 0..m {
                for c2 in 0..m {
                    let (x, y) = (b.gl(a, c), b.gl(a2, c2));
                    if x >= y {
                        continue;
                    }
                    // [E_ac, E_a2c2] = d(c,a2) E_ac2 - d(c2,a) E_a2c
                    let mut t = Vec::new();
                    if c == a2 {
                        t.push((b.gl(a, c2), int(1)));
                    }
                    if c2 == a {
                        t.push((b.gl(a2, c), int(-1)));
                    }
                    br.push((x, y, t));
                }
            }
        }
    }
    for i in 0..=k {
        let ii = i as i64;
        for a in 0..m {
            let v = b.v(i, a);
            if i >= 1 {
                br.push((e, v, vec![(b.v(i - 1, a), int(ii))]));
            }
            if i < k {
                br.push((f, v, vec![(b.v(i + 1, a), int(ki - ii))]));
            }
            if 2 * i != k {
                br.push((h, v, vec![(v, int(ki - 2 * ii))]));
            }
            for a2 in 0..m {
                // E_(a2,a) v_(i,a) = v_(i,a2)
                br.push((b.gl(a2, a), v, vec![(b.v(i, a2), int(1))]));
            }
        }
    }
    let alg = LieAlgebra::new(labels, br)?;
    let mut index = vec![1, 0, -1];
    index.extend(std::iter::repeat(0).take(m * m));
    for i in 0..=k {
        index.extend(std::iter::repeat(-(i as i32) - 1).take(m));
    }
    FilteredLieAlgebra::new(alg, index)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_axioms() {
        for k in 1..=3 {
            for m in 1..=2 {
                let g = ode_algebra(k, m).unwrap();
                assert_eq!(g.dim(), 3 + m * m + m * (k + 1));
                assert!(g.alg.check_jacobi(), "jacobi k={k} m={m}");
                assert!(g.check_filtered());
                assert_eq!(g.depth(), k as i32 + 1);
                assert_eq!(g.height(), 1);
            }
        }
    }

    #[test]
    fn associated_graded_dimensions() {
        let gr = ode_algebra(3, 2).unwrap().associated_graded().unwrap();
        let dims: Vec<(i32, usize)> = gr.degree_dims().into_iter().collect();
        assert_eq!(dims, vec![(-4, 2), (-3, 2), (-2, 2), (-1, 3), (0, 5), (1, 1)]);
    }

    #[test]
    fn the_filtration_comes_from_a_grading() {
        let g = ode_algebra(2, 1).unwrap();
        let gr = g.associated_graded().unwrap();
        assert!(gr.alg.same_structure(&g.alg));
    }
}
