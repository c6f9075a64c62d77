use num_traits::{One, Zero};

use super::{GradedLieAlgebra, LieAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{complement, unit_vec, Matrix, Subspace, Vector};

/// Lie algebra with an adapted basis: `g^i` is spanned by the basis vectors
/// of filtration index at least `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredLieAlgebra {
    pub alg: LieAlgebra,
    index: Vec<i32>,
}

impl FilteredLieAlgebra {
    pub fn new(alg: LieAlgebra, index: Vec<i32>) -> Result<FilteredLieAlgebra> {
        if index.len() != alg.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} filtration indices for a {}-dimensional algebra",
                index.len(),
                alg.dim()
            )));
        }
        Ok(FilteredLieAlgebra { alg, index })
    }

    /// The filtration induced by a grading.
    pub fn from_graded(g: &GradedLieAlgebra) -> FilteredLieAlgebra {
        FilteredLieAlgebra {
            alg: g.alg.clone(),
            index: g.degrees().to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn index(&self) -> &[i32] {
        &self.index
    }

    pub fn index_of(&self, i: usize) -> i32 {
        self.index[i]
    }

    /// `mu`.
    pub fn depth(&self) -> i32 {
        self.index.iter().map(|&d| -d).max().unwrap_or(0).max(0)
    }

    /// `nu`: largest index present, 0 if the filtration has no positive part.
    pub fn height(&self) -> i32 {
        self.index.iter().copied().max().unwrap_or(0).max(0)
    }

    /// Basis indices spanning `g^0`.
    pub fn p_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.index[i] >= 0).collect()
    }

    /// Basis indices whose classes form a basis of `g/g^0`.
    pub fn neg_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.index[i] < 0).collect()
    }

    /// `g^i`.
    pub fn component(&self, i: i32) -> Subspace {
        Subspace::coordinate(self.dim(), (0..self.dim()).filter(|&b| self.index[b] >= i))
    }

    pub fn filtration_violation(&self) -> Option<(usize, usize)> {
        self.alg.nonzero_brackets().find_map(|(i, j, t)| {
            let d = self.index[i] + self.index[j];
            t.iter().any(|(k, _)| self.index[*k] < d).then_some((i, j))
        })
    }

    pub fn check_filtered(&self) -> bool {
        self.filtration_violation().is_none()
    }

    /// Same basis, bracket truncated to the component of degree exactly `i + j`.
    pub fn associated_graded(&self) -> Result<GradedLieAlgebra> {
        if let Some((i, j)) = self.filtration_violation() {
            return Err(Error::NotFiltered { i, j });
        }
        let brackets = self.alg.nonzero_brackets().map(|(i, j, t)| {
            let d = self.index[i] + self.index[j];
            (i, j, t.iter().filter(|(k, _)| self.index[*k] == d).cloned().collect())
        });
        let labels = (0..self.dim())
            .map(|i| format!("gr_{}({})", self.index[i], self.alg.label(i)))
            .collect();
        let alg = LieAlgebra::new(labels, brackets.collect::<Vec<_>>())?;
        GradedLieAlgebra::new(alg, self.index.clone())
    }

    /// Largest ideal of `g` inside `g^0`; condition (A) asks for zero.
    pub fn max_ideal_in(&self) -> Subspace {
        let n = self.dim();
        let mut ideal = self.component(0);
        let ads: Vec<Matrix> = (0..n).map(|b| self.alg.ad_basis(b)).collect();
        loop {
            if ideal.is_zero() {
                return ideal;
            }
            let q = ideal.annihilator_rows();
            if q.rows() == 0 {
                return ideal;
            }
            let w = ideal.basis_matrix();
            let mut stacked: Option<Matrix> = None;
            for ad in &ads {
                let block = q.mul(&ad.mul(&w));
                stacked = Some(match stacked {
                    None => block,
                    Some(m) => m.vstack(&block),
                });
            }
            let k = stacked.expect("nonempty algebra").kernel();
            let next = Subspace::span(n, k.basis().iter().map(|c| w.mul_vec(c)));
            if next.dim() == ideal.dim() {
                return ideal;
            }
            ideal = next;
        }
    }

    pub fn condition_a(&self) -> bool {
        self.max_ideal_in().is_zero()
    }

    /// `{A in within : ad(A) g^i in g^(i+shift) for all i < 0}`.
    pub fn shifted_stabilizer(&self, within: &Subspace, shift: i32) -> Subspace {
        let levels: Vec<i32> = self.index.iter().map(|&i| i.min(-1)).collect();
        let comp = |k: i32| self.component(k);
        stabilizer(&self.alg, within, &levels, shift, &comp)
    }

    /// Condition (B): the stabilizer with shift 1 inside `g^0` is exactly `g^1`.
    pub fn condition_b(&self) -> bool {
        self.shifted_stabilizer(&self.component(0), 1) == self.component(1)
    }
}

/// Elements `A` of `within` with `[A, e_b]` in `component(levels[b] + shift)` for every `b`.
fn stabilizer(
    alg: &LieAlgebra,
    within: &Subspace,
    levels: &[i32],
    shift: i32,
    component: &dyn Fn(i32) -> Subspace,
) -> Subspace {
    let n = alg.dim();
    if within.is_zero() {
        return within.clone();
    }
    let w = within.basis_matrix();
    let mut rows: Vec<Vector> = Vec::new();
    for (b, &lvl) in levels.iter().enumerate() {
        let target = component(lvl + shift);
        let q = target.annihilator_rows();
        if q.rows() == 0 {
            continue;
        }
        let block = q.mul(&alg.ad_basis(b)).mul(&w);
        for r in 0..block.rows() {
            let row = block.row(r);
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row.to_vec());
            }
        }
    }
    if rows.is_empty() {
        return within.clone();
    }
    let k = Matrix::from_rows(rows).kernel();
    Subspace::span(n, k.basis().iter().map(|c| w.mul_vec(c)))
}

/// Positive filtration components `g^1, g^2, ...` determined by the
/// non-positive part.
///
/// `nonpos[b]` is the filtration index of basis vector `b`, clipped to at
/// most 0. Each step keeps the `X` in `g^j` with `ad(X) g^i` in `g^(i+j+1)`
/// for all `i < 0`. Returns the nonzero components; an ineffective tail is an
/// error.
pub fn continued_components(alg: &LieAlgebra, nonpos: &[i32]) -> Result<Vec<Subspace>> {
    let n = alg.dim();
    if nonpos.len() != n {
        return Err(Error::DimensionMismatch("one index per basis vector required".into()));
    }
    if nonpos.iter().any(|&i| i > 0) {
        return Err(Error::Precondition("indices must be non-positive".into()));
    }
    for (i, j, t) in alg.nonzero_brackets() {
        let d = nonpos[i] + nonpos[j];
        if t.iter().any(|(k, _)| nonpos[*k] < d) {
            return Err(Error::NotFiltered { i, j });
        }
    }
    let coordinate = |k: i32| Subspace::coordinate(n, (0..n).filter(|&b| nonpos[b] >= k));
    let levels: Vec<i32> = nonpos.iter().map(|&i| i.min(-1)).collect();
    let mut comps: Vec<Subspace> = vec![coordinate(0)];
    loop {
        let j = comps.len() as i32 - 1;
        let current = comps.last().expect("g^0 present").clone();
        let known = comps.clone();
        let component = move |k: i32| {
            if k <= 0 {
                coordinate(k)
            } else {
                known
                    .get(k as usize)
                    .cloned()
                    .unwrap_or_else(|| Subspace::zero(n))
            }
        };
        let next = stabilizer(alg, &current, &levels, j + 1, &component);
        if next.is_zero() {
            break;
        }
        if next.dim() == current.dim() {
            return Err(Error::Ineffective { dim: next.dim() });
        }
        comps.push(next);
    }
    Ok(comps.into_iter().skip(1).collect())
}

/// Full filtered algebra from the non-positive part.
///
/// The basis is kept when every continued component is spanned by basis
/// vectors; otherwise the non-negative part is rebased on an adapted basis.
pub fn continue_filtration(alg: &LieAlgebra, nonpos: &[i32]) -> Result<FilteredLieAlgebra> {
    let n = alg.dim();
    let comps = continued_components(alg, nonpos)?;
    let mut index = nonpos.to_vec();
    let mut chain = vec![Subspace::coordinate(n, (0..n).filter(|&b| nonpos[b] >= 0))];
    chain.extend(comps);
    chain.push(Subspace::zero(n));

    let mut level_vectors: Vec<(i32, Vector)> = Vec::new();
    for j in 0..chain.len() - 1 {
        let top = Subspace::span(n, chain[j].canonical_basis());
        let c = complement(&chain[j + 1], &top)?;
        for v in c.basis() {
            level_vectors.push((j as i32, v.clone()));
        }
    }

    let unit_position = |v: &Vector| -> Option<usize> {
        let nz: Vec<usize> = (0..n).filter(|&i| !v[i].is_zero()).collect();
        (nz.len() == 1 && v[nz[0]].is_one()).then(|| nz[0])
    };
    if level_vectors.iter().all(|(_, v)| unit_position(v).is_some()) {
        for (lvl, v) in &level_vectors {
            index[unit_position(v).expect("checked")] = *lvl;
        }
        return FilteredLieAlgebra::new(alg.clone(), index);
    }

    let mut basis: Vec<Vector> = Vec::new();
    let mut labels = Vec::new();
    let mut new_index = Vec::new();
    for b in (0..n).filter(|&b| nonpos[b] < 0) {
        basis.push(unit_vec(n, b));
        labels.push(alg.label(b).to_string());
        new_index.push(nonpos[b]);
    }
    for (p, (lvl, v)) in level_vectors.iter().enumerate() {
        labels.push(match unit_position(v) {
            Some(b) => alg.label(b).to_string(),
            None => format!("c{lvl}_{p}"),
        });
        basis.push(v.clone());
        new_index.push(*lvl);
    }
    FilteredLieAlgebra::new(alg.change_basis(&basis, labels)?, new_index)
}
