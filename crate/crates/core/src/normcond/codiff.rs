use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{inner::InnerProduct, FilteredPair};
use crate::cochains::{exterior_power, ChainComplex, CochainComplex, FilteredMap};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Rational, Subspace, Vector};

/// Maps `d2: L(Lambda^2(g/p), g) -> L(g/p, g)` and `d3: L(Lambda^3(g/p), g) -> L(Lambda^2(g/p), g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codifferential {
    pub d2: Matrix,
    pub d3: Matrix,
}

impl Codifferential {
    pub fn matrix(&self, k: usize) -> &Matrix {
        match k {
            2 => &self.d2,
            3 => &self.d3,
            _ => panic!("codifferential is defined for k = 2, 3"),
        }
    }
}

/// One disjointness test in homogeneity `l`: `ker(gr0 d_k) cap im(d)` in
/// `C^k_l` (`kernel_side`) or `im(gr0 d_k) cap ker(d)` in `C^(k-1)_l`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjointRow {
    pub k: usize,
    pub l: i32,
    pub kernel_side: bool,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodiffReport {
    pub equivariant: bool,
    pub filtration: bool,
    pub square_zero: bool,
    pub image_homogeneous: bool,
    pub disjoint: bool,
    pub rows: Vec<DisjointRow>,
    pub failures: Vec<String>,
}

impl CodiffReport {
    pub fn passed(&self) -> bool {
        self.equivariant && self.filtration && self.square_zero && self.image_homogeneous && self.disjoint
    }
}

/// Runs the five codifferential checks, each reported separately.
pub fn check_codifferential(pair: &FilteredPair, c: &Codifferential) -> Result<CodiffReport> {
    let spaces: Vec<_> = (0..=3).map(|k| pair.space(k)).collect();
    for k in 2..=3 {
        let d = c.matrix(k);
        if d.cols() != spaces[k].dim() || d.rows() != spaces[k - 1].dim() {
            return Err(Error::DimensionMismatch(format!("d{k} has the wrong shape")));
        }
    }
    let mut failures = Vec::new();

    let mut equivariant = true;
    for (q, a) in pair.g0_basis().iter().enumerate() {
        for k in 2..=3 {
            let lhs = c.matrix(k).mul(&pair.action_matrix(k, a)?);
            let rhs = pair.action_matrix(k - 1, a)?.mul(c.matrix(k));
            if lhs != rhs {
                equivariant = false;
                failures.push(format!("d{k} does not commute with the action of {}", pair.alg.alg.label(pair.alg.p_indices()[q])));
            }
        }
    }

    let maps: Vec<FilteredMap> = (2..=3)
        .map(|k| FilteredMap::new(c.matrix(k).clone(), spaces[k].weights(), spaces[k - 1].weights()))
        .collect::<Result<_>>()?;
    let mut filtration = true;
    for (k, m) in (2..=3).zip(&maps) {
        if let Some((r, col)) = m.compatibility_violation() {
            filtration = false;
            failures.push(format!("d{k} lowers homogeneity: coordinate {col} -> {r}"));
        }
    }

    let square_zero = c.d2.mul(&c.d3).is_zero();
    if !square_zero {
        failures.push("d2 d3 != 0".into());
    }

    let mut image_homogeneous = true;
    if filtration {
        for (k, m) in (2..=3).zip(&maps) {
            if let Some(i) = m.image_homogeneity_violation() {
                image_homogeneous = false;
                failures.push(format!("d{k} is not image-homogeneous at step {i}"));
            }
        }
    } else {
        image_homogeneous = false;
    }

    let mut rows = Vec::new();
    let cx = pair.complex();
    let mut ls: Vec<i32> = (1..=3).flat_map(|k| spaces[k].weights()).collect();
    ls.sort_unstable();
    ls.dedup();
    for (k, m) in (2..=3).zip(&maps) {
        let g0 = m.gr0();
        for &l in &ls {
            let cols = spaces[k].coords_of_weight(l);
            let rws = spaces[k - 1].coords_of_weight(l);
            let block = g0.submatrix(&rws, &cols);
            let ker_side = block.kernel().intersect(&cx.differential_block(k - 1, l)?.image()).is_zero();
            let im_side = block.image().intersect(&cx.differential_block(k - 1, l)?.kernel()).is_zero();
            for (kernel_side, ok) in [(true, ker_side), (false, im_side)] {
                if !ok {
                    failures.push(format!(
                        "gr0 d{k} is not disjoint from the differential in homogeneity {l} ({})",
                        if kernel_side { "kernel side" } else { "image side" }
                    ));
                }
                rows.push(DisjointRow { k, l, kernel_side, ok });
            }
        }
    }
    let disjoint = rows.iter().all(|r| r.ok);
    Ok(CodiffReport {
        equivariant,
        filtration,
        square_zero,
        image_homogeneous,
        disjoint,
        rows,
        failures,
    })
}

/// `N = ker(d2)` and `Ntilde = im(d3)`, after checking `c`.
pub fn condition_from_codifferential(pair: &FilteredPair, c: &Codifferential) -> Result<(Subspace, Subspace)> {
    let report = check_codifferential(pair, c)?;
    if !report.passed() {
        return Err(Error::Precondition(format!("not a codifferential: {}", report.failures.join("; "))));
    }
    Ok((c.d2.kernel(), c.d3.image()))
}

/// The Lie algebra homology differential of `p_+` with values in `g`,
/// transported to `L(Lambda^k(g/p), g)` through the Killing form pairing of
/// `g/p` with `p_+`.
///
/// Needs a nondegenerate Killing form and `p_+ = g^1`, where `p_+` is the
/// Killing annihilator of `p`.
pub fn kostant_codifferential(pair: &FilteredPair) -> Result<Codifferential> {
    let g = &pair.alg;
    let n = g.dim();
    let b = g.alg.killing_form();
    if b.determinant().is_zero() {
        return Err(Error::Degenerate("Killing form is degenerate".into()));
    }
    let p = g.p_indices();
    let pplus = b.select_rows(&p).kernel();
    if pplus != g.component(1) {
        return Err(Error::Precondition("Killing annihilator of p differs from g^1".into()));
    }
    let neg = pair.neg_indices();
    let pos: Vec<usize> = (0..n).filter(|&i| g.index_of(i) >= 1).collect();
    // pairing[s][a] = B(e_neg[s], e_pos[a]); z_t = sum_a (pairing^-1)[a][t] e_pos[a]
    let pairing = b.submatrix(neg, &pos);
    let inv = pairing
        .inverse()
        .ok_or_else(|| Error::Degenerate("Killing form does not pair g/p with p_+".into()))?;
    let z: Vec<Vector> = (0..neg.len())
        .map(|t| {
            let mut v = crate::exactla::zero_vec(n);
            for (a, &e) in pos.iter().enumerate() {
                v[e] = inv[(a, t)].clone();
            }
            v
        })
        .collect();
    let degrees: Vec<i32> = neg.iter().map(|&i| -g.index_of(i)).collect();
    let cx = ChainComplex::new(g.alg.clone(), g.index().to_vec(), z, degrees)?;
    Ok(Codifferential {
        d2: cx.boundary_matrix(2),
        d3: cx.boundary_matrix(3),
    })
}

/// Which differential the adjoint is taken of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdjointKind {
    /// `d` of `C^*(m, gr g)` on `L(Lambda^k(g/p), g)`, for `g` isomorphic to `gr g`.
    Graded,
    /// `d` of `C^*(g, g)` restricted to horizontal forms; the adjoint must
    /// map horizontal forms to horizontal forms (checked).
    Horizontal,
}

type Sparse = Vec<(usize, Rational)>;

/// `kron(a, b) x` for `x` sparse, in coordinates `tuple * nb + value`.
fn apply_kron(a: &Matrix, b: &Matrix, x: &[(usize, Rational)]) -> Sparse {
    let nb = b.rows();
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in x {
        let (t, vb) = (c / nb, c % nb);
        for s in 0..a.rows() {
            let ea = &a[(s, t)];
            if ea.is_zero() {
                continue;
            }
            let f = v * ea;
            for r in 0..nb {
                let eb = &b[(r, vb)];
                if !eb.is_zero() {
                    *acc.entry(s * nb + r).or_insert_with(Rational::zero) += &f * eb;
                }
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Columns `cols` of `H_(k-1)^-1 d_(k-1)^T H_k` on the complex `cx`, where
/// `H_j = Lambda^j(v_gram^-1) (x) w_gram` is the Gram matrix induced on
/// `Lambda^j V* (x) W`. Built column by column so that no dense Gram matrix
/// of a hom space is formed.
fn adjoint_columns(cx: &CochainComplex, k: usize, v_gram: &Matrix, w_gram: &Matrix, cols: &[usize]) -> Result<Vec<Sparse>> {
    let degenerate = || Error::Degenerate("inner product is degenerate".into());
    let vinv = v_gram.inverse().ok_or_else(degenerate)?;
    let winv = w_gram.inverse().ok_or_else(degenerate)?;
    let hk = exterior_power(&vinv, k);
    let hinv = exterior_power(v_gram, k - 1);
    let src = cx.space(k - 1);
    let dst = cx.space(k);
    // rows of d_(k-1), i.e. columns of its transpose
    let mut rows: Vec<Sparse> = vec![Vec::new(); dst.dim()];
    for j in 0..src.dim() {
        for (i, c) in cx.differential_of_unit(&src, &dst, j) {
            rows[i].push((j, c));
        }
    }
    let mut out = Vec::with_capacity(cols.len());
    for &c in cols {
        let y = apply_kron(&hk, w_gram, &[(c, Rational::one())]);
        let mut z: BTreeMap<usize, Rational> = BTreeMap::new();
        for (i, yi) in &y {
            for (j, d) in &rows[*i] {
                *z.entry(*j).or_insert_with(Rational::zero) += yi * d;
            }
        }
        let z: Sparse = z.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.push(apply_kron(&hinv, &winv, &z));
    }
    Ok(out)
}

/// Adjoint of the differential with respect to the inner products induced
/// by `ip` on the hom spaces. `g/p` carries the inner product of the
/// orthocomplement of `p`.
pub fn adjoint_codifferential(pair: &FilteredPair, ip: &InnerProduct, kind: AdjointKind) -> Result<Codifferential> {
    let n = pair.dim();
    if ip.dim() != n {
        return Err(Error::DimensionMismatch("inner product dimension".into()));
    }
    let g = &ip.gram;
    let neg = pair.neg_indices();
    let p = pair.alg.p_indices();
    let mut ds = Vec::new();
    for k in 2..=3 {
        let src = pair.space(k);
        let dst = pair.space(k - 1);
        let mut d = Matrix::zeros(dst.dim(), src.dim());
        match kind {
            AdjointKind::Graded => {
                let q = ip.quotient_gram(neg, &p)?;
                let all: Vec<usize> = (0..src.dim()).collect();
                for (c, col) in adjoint_columns(pair.complex(), k, &q, g, &all)?.into_iter().enumerate() {
                    for (r, x) in col {
                        d[(r, c)] = x;
                    }
                }
            }
            AdjointKind::Horizontal => {
                let full = CochainComplex::full(&pair.alg.alg, pair.alg.index())?;
                let src_full = full.space(k);
                let dst_full = full.space(k - 1);
                let embed = |space: &crate::cochains::HomSpace, fs: &crate::cochains::HomSpace| -> Vec<usize> {
                    (0..space.dim())
                        .map(|c| {
                            let (ti, b) = space.split(c);
                            let t: Vec<usize> = space.tuple_index().tuple(ti).iter().map(|&x| neg[x]).collect();
                            fs.coord(fs.tuple_index().position(&t).expect("horizontal tuple"), b)
                        })
                        .collect()
                };
                let cols = embed(&src, &src_full);
                let rows: BTreeMap<usize, usize> = embed(&dst, &dst_full).into_iter().enumerate().map(|(i, r)| (r, i)).collect();
                for (c, col) in adjoint_columns(&full, k, g, g, &cols)?.into_iter().enumerate() {
                    for (r, x) in col {
                        let &ri = rows.get(&r).ok_or_else(|| {
                            Error::Precondition(format!("adjoint of d on C^{}(g, g) leaves the horizontal forms", k - 1))
                        })?;
                        d[(ri, c)] = x;
                    }
                }
            }
        }
        ds.push(d);
    }
    let d3 = ds.pop().expect("two maps");
    let d2 = ds.pop().expect("two maps");
    Ok(Codifferential { d2, d3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::FilteredLieAlgebra;
    use crate::models::{heisenberg, ode_algebra, parabolic_grading, skew_derivations, SimpleType};
    use crate::normcond::{check_negligible, check_normalization, ode_inner_product, quotient_dims, subriemannian_inner_product};

    fn parabolic(ty: SimpleType, crossed: &[usize]) -> FilteredPair {
        FilteredPair::new(FilteredLieAlgebra::from_graded(&parabolic_grading(ty, crossed).unwrap())).unwrap()
    }

    fn assert_full_story(pair: &FilteredPair, c: &Codifferential) {
        let report = check_codifferential(pair, c).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let (n, nt) = condition_from_codifferential(pair, c).unwrap();
        assert!(check_normalization(pair, &n).unwrap().passed());
        assert!(check_negligible(pair, &nt, &n).unwrap().maximal());
        for row in quotient_dims(pair, &n, &nt).unwrap() {
            assert_eq!(row.quotient, row.h2, "l = {}", row.l);
        }
    }

    #[test]
    fn kostant_on_sl2_is_vacuous() {
        let pair = parabolic(SimpleType::Sl(2), &[1]);
        let c = kostant_codifferential(&pair).unwrap();
        assert_eq!(c.d2.cols(), 0);
        assert!(check_codifferential(&pair, &c).unwrap().passed());
    }

    #[test]
    fn kostant_on_sl3() {
        for crossed in [&[1, 2][..], &[1][..]] {
            let pair = parabolic(SimpleType::Sl(3), crossed);
            assert_full_story(&pair, &kostant_codifferential(&pair).unwrap());
        }
    }

    #[test]
    fn kostant_needs_semisimple() {
        let pair = FilteredPair::new(ode_algebra(1, 1).unwrap()).unwrap();
        assert!(matches!(kostant_codifferential(&pair), Err(Error::Degenerate(_))));
    }

    #[test]
    fn ode_adjoint_codifferential() {
        let pair = FilteredPair::new(ode_algebra(3, 1).unwrap()).unwrap();
        let ip = ode_inner_product(3, 1).unwrap();
        let c = adjoint_codifferential(&pair, &ip, AdjointKind::Horizontal).unwrap();
        assert_full_story(&pair, &c);
    }

    #[test]
    fn zero_maps_are_not_a_codifferential() {
        let pair = FilteredPair::new(ode_algebra(3, 1).unwrap()).unwrap();
        let s: Vec<_> = (1..=3).map(|k| pair.space(k).dim()).collect();
        let c = Codifferential {
            d2: Matrix::zeros(s[0], s[1]),
            d3: Matrix::zeros(s[1], s[2]),
        };
        let r = check_codifferential(&pair, &c).unwrap();
        assert!(r.equivariant && r.filtration && r.square_zero && r.image_homogeneous);
        assert!(!r.disjoint);
    }

    #[test]
    fn subriemannian_heisenberg() {
        let h = heisenberg(3).unwrap();
        let so = skew_derivations(&h);
        let (g, ip) = subriemannian_inner_product(&h, &Matrix::identity(2), &so, vec!["J".into()]).unwrap();
        let pair = FilteredPair::new(FilteredLieAlgebra::from_graded(&g)).unwrap();
        let c = adjoint_codifferential(&pair, &ip, AdjointKind::Graded).unwrap();
        assert_full_story(&pair, &c);
    }
}
