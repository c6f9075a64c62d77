//! Chevalley-Eilenberg cochains and Lie algebra homology chains.
//!
//! Alternating `k`-linear maps are stored by their values on strictly
//! increasing tuples of argument basis vectors, tuples in lexicographic
//! order, so a coordinate is `tuple_index * n_values + value_index`.

mod complex;
mod filtered;
mod homology;

pub use complex::{Cochain, CochainComplex};
pub use filtered::{exterior_power, FilteredHom, FilteredMap, Splitting};
pub use homology::{Chain, ChainComplex};

use std::collections::HashMap;

/// Strictly increasing `k`-tuples from `0..r` in lexicographic order.
#[derive(Clone, Debug)]
pub struct TupleIndex {
    k: usize,
    tuples: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
}

impl TupleIndex {
    pub fn new(k: usize, r: usize) -> TupleIndex {
        let mut tuples = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..r {
                cur.push(i);
                rec(i + 1, r, k, cur, out);
                cur.pop();
            }
        }
        rec(0, r, k, &mut cur, &mut tuples);
        let lookup = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        TupleIndex { k, tuples, lookup }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<usize>] {
        &self.tuples
    }

    /// Index of a strictly increasing tuple.
    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.lookup.get(t).copied()
    }
}

/// Sorts `t` in place; returns the sign of the sorting permutation, or
/// `None` if an entry repeats.
pub fn sort_with_sign(t: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && t[j - 1] == t[j] {
            return None;
        }
    }
    if t.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// Coordinates of alternating maps `Lambda^k A -> V` with graded argument
/// and value bases.
///
/// The weight of coordinate `(tuple, value)` is
/// `deg(value) - sum of deg(arguments)`; a map is homogeneous of degree `l`
/// exactly when it is supported on coordinates of weight `l`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    tuples: TupleIndex,
    arg_degrees: Vec<i32>,
    value_degrees: Vec<i32>,
}

impl HomSpace {
    pub fn new(k: usize, arg_degrees: Vec<i32>, value_degrees: Vec<i32>) -> HomSpace {
        HomSpace {
            tuples: TupleIndex::new(k, arg_degrees.len()),
            arg_degrees,
            value_degrees,
        }
    }

    pub fn arity(&self) -> usize {
        self.tuples.arity()
    }

    pub fn dim(&self) -> usize {
        self.tuples.len() * self.value_degrees.len()
    }

    pub fn n_values(&self) -> usize {
        self.value_degrees.len()
    }

    pub fn n_args(&self) -> usize {
        self.arg_degrees.len()
    }

    pub fn tuple_index(&self) -> &TupleIndex {
        &self.tuples
    }

    pub fn coord(&self, tuple: usize, value: usize) -> usize {
        tuple * self.n_values() + value
    }

    /// `(tuple index, value index)` of a coordinate.
    pub fn split(&self, coord: usize) -> (usize, usize) {
        (coord / self.n_values(), coord % self.n_values())
    }

    pub fn weight(&self, coord: usize) -> i32 {
        let (t, b) = self.split(coord);
        self.value_degrees[b] - self.tuples.tuple(t).iter().map(|&p| self.arg_degrees[p]).sum::<i32>()
    }

    pub fn weights(&self) -> Vec<i32> {
        (0..self.dim()).map(|c| self.weight(c)).collect()
    }

    pub fn coords_of_weight(&self, l: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&c| self.weight(c) == l).collect()
    }

    /// Smallest and largest weight present, `None` for the zero space.
    pub fn weight_range(&self) -> Option<(i32, i32)> {
        let w = self.weights();
        Some((*w.iter().min()?, *w.iter().max()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_are_lexicographic() {
        let t = TupleIndex::new(2, 4);
        assert_eq!(t.len(), 6);
        assert_eq!(t.tuple(0), &[0, 1]);
        assert_eq!(t.tuple(5), &[2, 3]);
        assert_eq!(t.position(&[1, 3]), Some(4));
        assert_eq!(TupleIndex::new(0, 3).len(), 1);
        assert_eq!(TupleIndex::new(4, 3).len(), 0);
    }

    #[test]
    fn permutation_signs() {
        let mut t = vec![2, 0, 1];
        assert_eq!(sort_with_sign(&mut t), Some(1));
        assert_eq!(t, vec![0, 1, 2]);
        let mut t = vec![1, 0];
        assert_eq!(sort_with_sign(&mut t), Some(-1));
        let mut t = vec![3, 1, 3];
        assert_eq!(sort_with_sign(&mut t), None);
    }

    #[test]
    fn weights_of_coordinates() {
        // arguments of degree -1, -2; values of degree -2, 0
        let s = HomSpace::new(1, vec![-1, -2], vec![-2, 0]);
        assert_eq!(s.weights(), vec![-1, 1, 0, 2]);
        assert_eq!(s.coords_of_weight(0), vec![2]);
    }
}
