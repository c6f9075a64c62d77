use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{denominator_lcm, Matrix, Rational, Vector};

/// Reduced row echelon form of a rational matrix.
///
/// Forward elimination runs fraction-free (Bareiss) on rows cleared of
/// denominators; only the final back substitution divides.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    /// Nonzero rows, each with a leading 1 in its pivot column.
    pub rows: Vec<Vector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn of(m: &Matrix) -> Echelon {
        let cols = m.cols();
        let mut a: Vec<Vec<BigInt>> = (0..m.rows())
            .map(|r| integer_row(m.row(r)))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = bareiss(&mut a, cols);
        let rank = pivots.len();
        a.truncate(rank);

        let mut rows: Vec<Vector> = a
            .into_iter()
            .zip(&pivots)
            .map(|(row, &p)| {
                let lead = row[p].clone();
                row.into_iter()
                    .map(|x| {
                        if x.is_zero() {
                            Rational::zero()
                        } else {
                            Rational::new(x, lead.clone())
                        }
                    })
                    .collect()
            })
            .collect();

        for r in (0..rank).rev() {
            let p = pivots[r];
            let (above, rest) = rows.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                if row[p].is_zero() {
                    continue;
                }
                let c = row[p].clone();
                for j in p..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &c * &pivot_row[j];
                    }
                }
            }
        }
        Echelon { cols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// One kernel vector per free column, with a 1 in that column.
    pub fn kernel_vectors(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[f].is_zero() {
                        v[p] = -row[f].clone();
                    }
                }
                v
            })
            .collect()
    }
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let l = denominator_lcm(row);
    row.iter()
        .map(|x| {
            if x.is_zero() {
                BigInt::zero()
            } else {
                x.numer() * (&l / x.denom())
            }
        })
        .collect()
}

/// Fraction-free forward elimination in place. Returns pivot columns; rows
/// `0..rank` of `a` hold the echelon form afterwards.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> Vec<usize> {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let scaled = if row[j].is_zero() {
                    None
                } else {
                    Some(piv * &row[j])
                };
                let cross = if factor.is_zero() || pivot_row[j].is_zero() {
                    None
                } else {
                    Some(&factor * &pivot_row[j])
                };
                row[j] = match (scaled, cross) {
                    (None, None) => continue,
                    (Some(s), None) => s / &prev,
                    (None, Some(x)) => -x / &prev,
                    (Some(s), Some(x)) => (s - x) / &prev,
                };
            }
        }
        prev = pivot_row[c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, rat};

    #[test]
    fn rref_of_small_matrix() {
        let m = Matrix::from_i64_rows(&[vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]]);
        let e = Echelon::of(&m);
        assert_eq!(e.pivots, vec![0, 2]);
        assert_eq!(e.rows[0], vec![int(1), int(2), int(0)]);
        assert_eq!(e.rows[1], vec![int(0), int(0), int(1)]);
    }

    #[test]
    fn fractional_entries() {
        let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 6)]]);
        assert_eq!(Echelon::of(&m).rank(), 1);
        let k = Echelon::of(&m).kernel_vectors();
        assert_eq!(k, vec![vec![rat(-2, 3), int(1)]]);
    }
}
