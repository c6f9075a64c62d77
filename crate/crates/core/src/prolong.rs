//! Tanaka prolongation of a pair `(m, g0)` and the full-prolongation tests.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::cochains::CochainComplex;
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace, Vector};
use crate::liealg::{FilteredLieAlgebra, GradedLieAlgebra, LieAlgebra, Terms};

/// Outcome of running the prolongation up to a cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteType {
    /// The prolongation stops; the top nonzero degree is given.
    Finite(i32),
    /// No termination certificate within the cap. Never a claim of infinite type.
    UnknownAt(usize),
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::Finite(n) => write!(f, "FINITE({n})"),
            FiniteType::UnknownAt(c) => write!(f, "UNKNOWN_AT({c})"),
        }
    }
}

/// One positive component `g_i`: each basis element is recorded by its
/// values on the basis of `m`, as sparse vectors in the basis of `total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongationComponent {
    pub degree: i32,
    pub maps: Vec<Vec<Terms>>,
}

impl ProlongationComponent {
    pub fn dim(&self) -> usize {
        self.maps.len()
    }
}

#[derive(Clone, Debug)]
pub struct ProlongationResult {
    /// Computed components `g_1, g_2, ...` including the trailing zero ones.
    pub components: Vec<ProlongationComponent>,
    pub finite: FiniteType,
    /// `m + g0 + g_1 + ...` with basis ordered by component. When the cap is
    /// reached this is a truncation and brackets of degree above the cap are
    /// missing.
    pub total: GradedLieAlgebra,
}

impl ProlongationResult {
    pub fn positive_dims(&self) -> Vec<usize> {
        self.components.iter().map(ProlongationComponent::dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.total.dim()
    }
}

/// Sparse bracket table that grows one component at a time.
struct Builder {
    labels: Vec<String>,
    degrees: Vec<i32>,
    /// `[e_i, e_j]` for `i < j`; absent means zero.
    table: HashMap<(usize, usize), Terms>,
}

fn add_terms(acc: &mut BTreeMap<usize, Rational>, t: &Terms, c: &Rational) {
    for (k, v) in t {
        *acc.entry(*k).or_insert_with(Rational::zero) += c * v;
    }
}

fn collect(acc: BTreeMap<usize, Rational>) -> Terms {
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

impl Builder {
    fn dim(&self) -> usize {
        self.labels.len()
    }

    fn bracket_basis(&self, i: usize, j: usize) -> Terms {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Vec::new(),
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(|t| t.iter().map(|(k, v)| (*k, -v)).collect())
                .unwrap_or_default(),
        }
    }

    fn bracket(&self, x: &Terms, y: &Terms) -> Terms {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                add_terms(&mut acc, &self.bracket_basis(*i, *j), &(a * b));
            }
        }
        collect(acc)
    }

    fn set(&mut self, i: usize, j: usize, t: Terms) {
        if t.is_empty() {
            return;
        }
        if i < j {
            self.table.insert((i, j), t);
        } else {
            self.table.insert((j, i), t.into_iter().map(|(k, v)| (k, -v)).collect());
        }
    }

    fn of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == d).collect()
    }
}

/// Tanaka prolongation of `(m, g0)` with `g0` given as a subspace of degree
/// zero derivations of `m`, flattened `n x n` matrices as in
/// [`GradedLieAlgebra::graded_derivations`].
///
/// `m` must be negatively graded. Components are added up to `cap`. For a
/// fundamental `m` the first zero component ends the recursion; otherwise
/// `depth(m)` consecutive zero components are required, since a map of
/// degree `i` sends `m_(-j)` into `g_(i-j)`.
pub fn tanaka_prolongation(m: &GradedLieAlgebra, g0: &Subspace, cap: usize) -> Result<ProlongationResult> {
    let labels = (1..=g0.dim()).map(|a| format!("D{a}")).collect();
    tanaka_prolongation_labeled(m, g0, labels, cap)
}

/// Default cap `2 (depth + dim m)`.
pub fn default_cap(m: &GradedLieAlgebra) -> usize {
    2 * (m.depth() as usize + m.dim())
}

/// As [`tanaka_prolongation`] with labels for the basis of `g0`.
pub fn tanaka_prolongation_labeled(
    m: &GradedLieAlgebra,
    g0: &Subspace,
    g0_labels: Vec<String>,
    cap: usize,
) -> Result<ProlongationResult> {
    let n = m.dim();
    if m.degrees().iter().any(|&d| d >= 0) {
        return Err(Error::Precondition("m must be negatively graded".into()));
    }
    if !m.check_graded() {
        return Err(Error::Precondition("m is not graded".into()));
    }
    if g0.ambient_dim() != n * n || g0_labels.len() != g0.dim() {
        return Err(Error::DimensionMismatch("g0 must live in n x n matrices with one label per basis vector".into()));
    }
    if !m.graded_derivations(0).contains_subspace(g0) {
        return Err(Error::NotDerivation("g0 is not made of degree 0 derivations".into()));
    }
    let mats: Vec<Matrix> = g0.basis().iter().map(|v| Matrix::from_flat(n, v)).collect();
    let g0_solver = g0.solver();
    let mut b = Builder {
        labels: m.alg.labels().to_vec(),
        degrees: m.degrees().to_vec(),
        table: HashMap::new(),
    };
    for (i, j, t) in m.alg.nonzero_brackets() {
        b.set(i, j, t.clone());
    }
    b.labels.extend(g0_labels);
    b.degrees.extend(std::iter::repeat(0).take(g0.dim()));
    for (a, d) in mats.iter().enumerate() {
        for x in 0..n {
            let t: Terms = (0..n).filter(|&r| !d[(r, x)].is_zero()).map(|r| (r, d[(r, x)].clone())).collect();
            b.set(n + a, x, t);
        }
        for (a2, d2) in mats.iter().enumerate().skip(a + 1) {
            let c = d.commutator(d2);
            let coords = g0_solver
                .solve(c.flat())
                .ok_or_else(|| Error::NotDerivation("g0 is not closed under the commutator".into()))?;
            let t: Terms = coords
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (n + k, v))
                .collect();
            b.set(n + a, n + a2, t);
        }
    }

    let needed_zeros = if m.is_fundamental() { 1 } else { m.depth().max(1) as usize };
    let mut components = Vec::new();
    let mut zero_streak = 0;
    let mut finite = FiniteType::UnknownAt(cap);
    for i in 1..=cap as i32 {
        let comp = next_component(&mut b, n, i)?;
        let empty = comp.maps.is_empty();
        components.push(comp);
        if empty {
            zero_streak += 1;
            if zero_streak >= needed_zeros {
                finite = FiniteType::Finite(i - zero_streak as i32);
                break;
            }
        } else {
            zero_streak = 0;
        }
    }

    let brackets: Vec<(usize, usize, Terms)> = b.table.iter().map(|(&(i, j), t)| (i, j, t.clone())).collect();
    let alg = LieAlgebra::new(b.labels.clone(), brackets)?;
    let total = GradedLieAlgebra::new(alg, b.degrees.clone())?;
    // Truncation at the cap drops brackets of degree above the cap, so the
    // Jacobi identity is only expected once the recursion has terminated.
    if let (FiniteType::Finite(_), Some((i, j, k))) = (finite, total.alg.jacobi_violation()) {
        return Err(Error::Jacobi { i, j, k });
    }
    if !total.check_graded() {
        return Err(Error::Internal("prolongation is not graded".into()));
    }
    Ok(ProlongationResult { components, finite, total })
}

/// Solves for `g_i` and appends it, with all brackets of total degree `i`.
fn next_component(b: &mut Builder, n: usize, i: i32) -> Result<ProlongationComponent> {
    // unknown (x, t): coefficient of e_t in phi(e_x), deg t = deg x + i
    let mut unknowns = HashMap::new();
    let mut unknown_list = Vec::new();
    for x in 0..n {
        for t in b.of_degree(b.degrees[x] + i) {
            unknowns.insert((x, t), unknown_list.len());
            unknown_list.push((x, t));
        }
    }
    let nu = unknown_list.len();
    // phi([x, y]) - [phi(x), y] - [x, phi(y)] = 0, one row per (pair, output)
    let mut rows: HashMap<(usize, usize, usize), Vec<(usize, Rational)>> = HashMap::new();
    for x in 0..n {
        for y in x + 1..n {
            for (z, c) in b.bracket_basis(x, y) {
                for t in b.of_degree(b.degrees[z] + i) {
                    let u = unknowns[&(z, t)];
                    rows.entry((x, y, t)).or_default().push((u, c.clone()));
                }
            }
            for (&(src, t), &u) in &unknowns {
                if src == x {
                    for (s, c) in b.bracket_basis(t, y) {
                        rows.entry((x, y, s)).or_default().push((u, -c));
                    }
                } else if src == y {
                    for (s, c) in b.bracket_basis(x, t) {
                        rows.entry((x, y, s)).or_default().push((u, -c));
                    }
                }
            }
        }
    }
    let mut keys: Vec<_> = rows.keys().copied().collect();
    keys.sort_unstable();
    let mut mat = Matrix::zeros(keys.len(), nu);
    for (r, key) in keys.iter().enumerate() {
        for (u, c) in &rows[key] {
            mat[(r, *u)] += c;
        }
    }
    let kernel = mat.kernel();
    let solutions: Vec<Vector> = kernel.canonical_basis();
    let start = b.dim();
    let to_terms = |v: &Vector| -> Vec<Terms> {
        let mut per_x: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
        for (u, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (x, t) = unknown_list[u];
                per_x[x].insert(t, c.clone());
            }
        }
        per_x.into_iter().map(collect).collect()
    };
    let maps: Vec<Vec<Terms>> = solutions.iter().map(to_terms).collect();
    for (a, phi) in maps.iter().enumerate() {
        b.labels.push(format!("g{i}_{}", a + 1));
        b.degrees.push(i);
        for (x, t) in phi.iter().enumerate() {
            b.set(start + a, x, t.clone());
        }
    }
    if maps.is_empty() {
        return Ok(ProlongationComponent { degree: i, maps });
    }
    // Remaining brackets of degree i: [u, v] with deg u + deg v = i, both
    // nonnegative, determined by [[u, v], x] = [u, [v, x]] - [v, [u, x]].
    let solver = crate::exactla::CoordinateSolver::new(Matrix::from_columns(nu, &solutions))?;
    let nonneg: Vec<usize> = (n..b.dim()).collect();
    let mut new_brackets = Vec::new();
    for (pu, &u) in nonneg.iter().enumerate() {
        for &v in &nonneg[pu + 1..] {
            if b.degrees[u] + b.degrees[v] != i {
                continue;
            }
            let mut flat = vec![Rational::zero(); nu];
            for x in 0..n {
                let eu = vec![(u, Rational::from_integer(1.into()))];
                let ev = vec![(v, Rational::from_integer(1.into()))];
                let vx = b.bracket_basis(v, x);
                let ux = b.bracket_basis(u, x);
                let mut acc = BTreeMap::new();
                add_terms(&mut acc, &b.bracket(&eu, &vx), &Rational::from_integer(1.into()));
                add_terms(&mut acc, &b.bracket(&ev, &ux), &Rational::from_integer((-1).into()));
                for (t, c) in collect(acc) {
                    let col = unknowns
                        .get(&(x, t))
                        .ok_or_else(|| Error::Internal("bracket leaves the expected degree".into()))?;
                    flat[*col] = c;
                }
            }
            let coords = solver
                .solve(&flat)
                .ok_or_else(|| Error::Internal("bracket of prolongation elements is not a derivation".into()))?;
            let t: Terms = coords
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (start + k, c))
                .collect();
            new_brackets.push((u, v, t));
        }
    }
    for (u, v, t) in new_brackets {
        b.set(u, v, t);
    }
    Ok(ProlongationComponent { degree: i, maps })
}

/// Finite-type verdict of `(m, g0)` within `cap`.
pub fn is_finite_type(m: &GradedLieAlgebra, g0: &Subspace, cap: usize) -> Result<FiniteType> {
    Ok(tanaka_prolongation(m, g0, cap)?.finite)
}

/// `(m, ad_m(gr_0), labels of gr_0)` for a graded algebra.
///
/// Errors if `ad_m` is not injective on `gr_0`, since `g0` is then not a
/// subspace of derivations of `m` faithfully.
pub fn symbol_pair(gr: &GradedLieAlgebra) -> Result<(GradedLieAlgebra, Subspace, Vec<String>)> {
    let m = gr.negative_part()?;
    let neg = gr.negative_indices();
    let zero = gr.indices_of_degree(0);
    let n = neg.len();
    let mut vecs = Vec::new();
    for &a in &zero {
        let mut d = vec![Rational::zero(); n * n];
        for (c, &ec) in neg.iter().enumerate() {
            for (k, v) in gr.alg.bracket_basis(a, ec) {
                let r = neg
                    .iter()
                    .position(|x| x == k)
                    .ok_or_else(|| Error::Precondition("degree 0 part does not preserve m".into()))?;
                d[r * n + c] = v.clone();
            }
        }
        vecs.push(d);
    }
    let g0 = Subspace::span(n * n, vecs.clone());
    if g0.dim() != vecs.len() {
        return Err(Error::Precondition("ad_m is not injective on the degree 0 part".into()));
    }
    // keep the gr_0 basis order so labels match
    let g0 = Subspace::from_independent(n * n, vecs);
    let labels = zero.iter().map(|&a| gr.alg.label(a).to_string()).collect();
    Ok((m, g0, labels))
}

/// Prolongation of the symbol pair `(m, gr_0)` of a filtered algebra.
pub fn prolong_filtered(f: &FilteredLieAlgebra, cap: Option<usize>) -> Result<ProlongationResult> {
    let gr = f.associated_graded()?;
    let (m, g0, labels) = symbol_pair(&gr)?;
    let cap = cap.unwrap_or_else(|| default_cap(&m));
    tanaka_prolongation_labeled(&m, &g0, labels, cap)
}

fn h1_vanishes(f: &FilteredLieAlgebra, from: i32) -> Result<bool> {
    let gr = f.associated_graded()?;
    let cx = CochainComplex::on_negative_part(&gr)?;
    let top = gr.depth() + gr.top_degree();
    for l in from..=top {
        if cx.cohomology_dim(1, l)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `gr(g)` is the full prolongation of `(m, gr_0)`: `H^1(m, gr g)_l = 0` for `l > 0`.
pub fn check_full_prolongation_pair(f: &FilteredLieAlgebra) -> Result<bool> {
    h1_vanishes(f, 1)
}

/// `gr(g)` is the full prolongation of `m`: `H^1(m, gr g)_l = 0` for `l >= 0`.
pub fn check_full_prolongation_of_m(f: &FilteredLieAlgebra) -> Result<bool> {
    h1_vanishes(f, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{abelian, heisenberg, ode_algebra, skew_derivations};

    fn dims(r: &ProlongationResult) -> Vec<(i32, usize)> {
        r.total.degree_dims().into_iter().collect()
    }

    #[test]
    fn euclidean_pair_has_no_prolongation() {
        let m = abelian(3);
        let so = skew_derivations(&m);
        let r = tanaka_prolongation(&m, &so, 4).unwrap();
        assert_eq!(r.total_dim(), 6);
        assert_eq!(r.finite, FiniteType::Finite(0));
        assert_eq!(r.positive_dims(), vec![0]);
    }

    #[test]
    fn conformal_pair_prolongs_once() {
        // co(3) on R^3: prolongation is so(4, 1) graded -1, 0, 1
        let m = abelian(3);
        let mut gens: Vec<Vector> = skew_derivations(&m).basis().to_vec();
        gens.push(Matrix::identity(3).flat().to_vec());
        let co = Subspace::span(9, gens);
        let r = tanaka_prolongation(&m, &co, 5).unwrap();
        assert_eq!(dims(&r), vec![(-1, 3), (0, 4), (1, 3)]);
        assert_eq!(r.finite, FiniteType::Finite(1));
    }

    #[test]
    fn line_with_gl1_never_terminates() {
        let m = abelian(1);
        let gl = Subspace::full(1);
        let r = tanaka_prolongation(&m, &gl, 5).unwrap();
        assert_eq!(r.finite, FiniteType::UnknownAt(5));
        assert_eq!(r.positive_dims(), vec![1; 5]);
        assert_eq!(tanaka_prolongation(&m, &gl, 0).unwrap().finite, FiniteType::UnknownAt(0));
    }

    #[test]
    fn heisenberg_with_full_degree_zero_is_infinite_within_cap() {
        // contact structures: infinite type
        let h = heisenberg(3).unwrap();
        let der = h.graded_derivations(0);
        let r = tanaka_prolongation(&h, &der, 3).unwrap();
        assert_eq!(r.finite, FiniteType::UnknownAt(3));
    }

    #[test]
    fn ode_symbol_prolongations() {
        let r = prolong_filtered(&ode_algebra(3, 1).unwrap(), None).unwrap();
        assert_eq!(r.total_dim(), 8);
        assert_eq!(r.positive_dims()[0], 1);
        let r = prolong_filtered(&ode_algebra(2, 1).unwrap(), None).unwrap();
        assert_eq!(r.total_dim(), 10);
        assert_eq!(r.finite, FiniteType::Finite(3));
        assert_eq!(prolong_filtered(&ode_algebra(1, 1).unwrap(), None).unwrap().total_dim(), 8);
        assert_eq!(prolong_filtered(&ode_algebra(1, 2).unwrap(), None).unwrap().total_dim(), 15);
    }

    #[test]
    fn full_prolongation_verdicts() {
        assert!(check_full_prolongation_pair(&ode_algebra(3, 1).unwrap()).unwrap());
        assert!(check_full_prolongation_pair(&ode_algebra(2, 2).unwrap()).unwrap());
        assert!(!check_full_prolongation_pair(&ode_algebra(1, 1).unwrap()).unwrap());
        assert!(!check_full_prolongation_of_m(&ode_algebra(3, 1).unwrap()).unwrap());
    }
}
