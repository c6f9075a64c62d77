use std::collections::HashMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{int, CoordinateSolver, Matrix, Rational, Vector};
use crate::liealg::{terms_of, GradedLieAlgebra, LieAlgebra};

#[derive(Clone, Copy, Debug)]
enum HallWord {
    Letter(usize),
    Bracket(usize, usize),
}

type Poly = HashMap<Vec<u8>, Rational>;

fn commutator(p: &Poly, q: &Poly, max_len: usize) -> Poly {
    let mut out = Poly::new();
    for (u, a) in p {
        for (v, b) in q {
            if u.len() + v.len() > max_len {
                continue;
            }
            let ab = a * b;
            let mut uv = u.clone();
            uv.extend(v);
            *out.entry(uv).or_insert_with(Rational::zero) += &ab;
            let mut vu = v.clone();
            vu.extend(u);
            *out.entry(vu).or_insert_with(Rational::zero) -= &ab;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Free nilpotent Lie algebra on `g` generators of step `s`, in a Hall basis.
///
/// Hall words are ordered by length and then by creation; `[u, v]` is kept
/// when `u > v` and, for `u = [u', u'']`, `u'' <= v`. Brackets are computed
/// by expanding Hall words in the free associative algebra truncated at
/// length `s`.
pub fn free_nilpotent(g: usize, s: usize) -> Result<GradedLieAlgebra> {
    if g == 0 || s == 0 {
        return Err(Error::Precondition("free nilpotent algebra needs g >= 1 and s >= 1".into()));
    }
    if g > 255 {
        return Err(Error::Precondition("too many generators".into()));
    }
    let mut words: Vec<HallWord> = (0..g).map(HallWord::Letter).collect();
    let mut len: Vec<usize> = vec![1; g];
    for l in 2..=s {
        let existing = words.len();
        for u in 0..existing {
            for v in 0..existing {
                if len[u] + len[v] != l || u <= v {
                    continue;
                }
                let ok = match words[u] {
                    HallWord::Letter(_) => true,
                    HallWord::Bracket(_, right) => right <= v,
                };
                if ok {
                    words.push(HallWord::Bracket(u, v));
                    len.push(l);
                }
            }
        }
    }

    let mut polys: Vec<Poly> = Vec::with_capacity(words.len());
    let mut labels: Vec<String> = Vec::with_capacity(words.len());
    for w in &words {
        match *w {
            HallWord::Letter(a) => {
                polys.push(Poly::from([(vec![a as u8], int(1))]));
                labels.push(format!("x{}", a + 1));
            }
            HallWord::Bracket(u, v) => {
                let p = commutator(&polys[u], &polys[v], s);
                polys.push(p);
                labels.push(format!("[{},{}]", labels[u], labels[v]));
            }
        }
    }

    // Coordinates of each length-l word space, with a solver per length.
    let mut word_index: Vec<HashMap<Vec<u8>, usize>> = vec![HashMap::new(); s + 1];
    for p in &polys {
        for w in p.keys() {
            let next = word_index[w.len()].len();
            word_index[w.len()].entry(w.clone()).or_insert(next);
        }
    }
    let to_vec = |p: &Poly, l: usize| -> Vector {
        let mut v = vec![Rational::zero(); word_index[l].len()];
        for (w, c) in p {
            if let Some(&i) = word_index[l].get(w) {
                v[i] = c.clone();
            }
        }
        v
    };
    let mut solvers: Vec<Option<(Vec<usize>, CoordinateSolver)>> = vec![None; s + 1];
    for (l, slot) in solvers.iter_mut().enumerate().skip(1) {
        let members: Vec<usize> = (0..words.len()).filter(|&i| len[i] == l).collect();
        let cols: Vec<Vector> = members.iter().map(|&i| to_vec(&polys[i], l)).collect();
        let solver = CoordinateSolver::new(Matrix::from_columns(word_index[l].len(), &cols))
            .map_err(|_| Error::Internal("Hall words are not independent".into()))?;
        *slot = Some((members, solver));
    }

    let mut brackets = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            let l = len[i] + len[j];
            if l > s {
                continue;
            }
            let p = commutator(&polys[i], &polys[j], s);
            if p.is_empty() {
                continue;
            }
            if p.keys().any(|w| !word_index[l].contains_key(w)) {
                return Err(Error::Internal("bracket outside the Hall span".into()));
            }
            let (members, solver) = solvers[l].as_ref().expect("solver for every length");
            let c = solver
                .solve(&to_vec(&p, l))
                .ok_or_else(|| Error::Internal("bracket outside the Hall span".into()))?;
            let terms = terms_of(&c).into_iter().map(|(p, x)| (members[p], x)).collect();
            brackets.push((i, j, terms));
        }
    }
    let alg = LieAlgebra::new(labels, brackets)?;
    GradedLieAlgebra::new(alg, len.iter().map(|&l| -(l as i32)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(n: usize) -> i64 {
        let mut n = n;
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }

    /// Dimension of the degree `n` part of the free Lie algebra on `g` letters.
    fn witt(g: usize, n: usize) -> usize {
        let total: i64 = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| mobius(d) * (g as i64).pow((n / d) as u32))
            .sum();
        (total / n as i64) as usize
    }

    #[test]
    fn hall_basis_dimensions_match_witt() {
        for (g, s) in [(2, 3), (2, 5), (3, 3), (3, 4), (4, 2)] {
            let f = free_nilpotent(g, s).unwrap();
            let dims = f.degree_dims();
            for l in 1..=s {
                assert_eq!(dims.get(&-(l as i32)).copied().unwrap_or(0), witt(g, l), "g={g} s={s} l={l}");
            }
            assert!(f.alg.check_jacobi());
            assert!(f.check_graded());
            assert!(f.is_fundamental());
        }
    }

    #[test]
    fn engel_type_free_algebra() {
        let f = free_nilpotent(2, 3).unwrap();
        assert_eq!(f.degree_dims().into_iter().collect::<Vec<_>>(), vec![(-3, 2), (-2, 1), (-1, 2)]);
        assert_eq!(f.alg.label(2), "[x2,x1]");
    }
}
