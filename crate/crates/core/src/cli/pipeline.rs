//! The verification pipeline behind `filtered-lie report`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::catalog::{CodiffChoice, Member, Target};
use super::report::{rational_list, Check, Report, Section, Status, Table};
use crate::cochains::{FilteredHom, Splitting};
use crate::error::{Error, Result};
use crate::exactla::{int, Matrix, Subspace, Vector};
use crate::liealg::{continued_components, GradedLieAlgebra};
use crate::normcond::{
    adjoint_codifferential, check_codifferential, check_negligible, check_normalization,
    condition_from_codifferential, kostant_codifferential, quotient_dims, subriemannian_inner_product, AdjointKind,
    Codifferential, FilteredPair, InnerProduct, Normalizer,
};
use crate::prolong::{prolong_filtered, symbol_pair, FiniteType};

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    /// Overrides the target's default codifferential.
    pub codiff: Option<CodiffChoice>,
    pub prolong: bool,
    pub prolong_cap: Option<usize>,
    /// Homogeneity range shown in the per-degree tables.
    pub degrees: Option<(i32, i32)>,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> PipelineOptions {
        PipelineOptions {
            codiff: None,
            prolong: true,
            prolong_cap: None,
            degrees: None,
            seed: 0,
        }
    }
}

impl PipelineOptions {
    fn shows(&self, l: i32) -> bool {
        self.degrees.map_or(true, |(a, b)| a <= l && l <= b)
    }
}

const STAGES: &[&str] = &[
    "jacobi",
    "filtered",
    "associated_graded",
    "condition_a",
    "condition_b",
    "continuation",
    "h1",
    "prolongation",
    "codifferential",
    "normalization",
    "negligible",
    "quotient",
    "supplied_normalization",
    "supplied_negligible",
    "normalize",
];

fn skip_rest(s: &mut Section, because: &str) {
    for name in STAGES {
        if s.get(name).is_none() {
            s.push(Check::skip(name, because));
        }
    }
}

fn vectors(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| rational_list(v)).collect())
}

/// Runs every stage on every member of the target.
pub fn run_pipeline(target: &Target, opts: &PipelineOptions) -> Report {
    let choice = opts.codiff.clone().unwrap_or_else(|| target.default_codiff.clone());
    let mut sections: Vec<Section> = target.members.iter().map(|m| run_member(m, &choice, opts)).collect();
    if target.compare_graded {
        sections.push(compare_graded(target));
    }
    let mut params = target.params.clone();
    params.push(("codiff".into(), choice.name().into()));
    Report {
        target: target.name.clone(),
        params,
        seed: opts.seed,
        sections,
    }
}

fn compare_graded(target: &Target) -> Section {
    let mut s = Section::new("graded_comparison");
    let grs: Vec<Result<GradedLieAlgebra>> = target.members.iter().map(|m| m.alg.associated_graded()).collect();
    let first = &target.members[0];
    let mut table = Table::new(&["member", "same_gr"]);
    let mut all = true;
    for (m, gr) in target.members.iter().zip(&grs) {
        let same = match (gr, &grs[0]) {
            (Ok(a), Ok(b)) => a.degrees() == b.degrees() && a.alg.same_structure(&b.alg),
            _ => false,
        };
        all &= same;
        table.push(vec![json!(m.name), json!(same)]);
    }
    s.push(
        Check::new(
            "gr_equal",
            Status::from_bool(all),
            if all {
                format!("all members share the associated graded algebra of {}", first.name)
            } else {
                "associated graded algebras differ".to_string()
            },
        )
        .with_table("structure constants in adapted bases", table),
    );
    s
}

fn run_member(member: &Member, choice: &CodiffChoice, opts: &PipelineOptions) -> Section {
    let f = &member.alg;
    let mut s = Section::new(member.name.clone());

    if let Some((i, j, k)) = f.alg.jacobi_violation() {
        s.push(
            Check::new("jacobi", Status::Fail, format!("fails on basis triple ({i}, {j}, {k})")).with("witness", json!([i, j, k])),
        );
        skip_rest(&mut s, "jacobi");
        return s;
    }
    s.push(Check::new("jacobi", Status::Pass, format!("holds on all basis triples, dim {}", f.dim())));

    if let Some((i, j)) = f.filtration_violation() {
        s.push(
            Check::new(
                "filtered",
                Status::Fail,
                format!("[{}, {}] leaves g^{}", f.alg.label(i), f.alg.label(j), f.index_of(i) + f.index_of(j)),
            )
            .with("witness", json!([i, j])),
        );
        skip_rest(&mut s, "filtered");
        return s;
    }
    let graded = GradedLieAlgebra::new(f.alg.clone(), f.index().to_vec()).is_ok_and(|g| g.check_graded());
    s.push(
        Check::new("filtered", Status::Pass, format!("depth {}, height {}, graded {graded}", f.depth(), f.height()))
            .with("depth", json!(f.depth()))
            .with("height", json!(f.height()))
            .with("graded", json!(graded)),
    );

    let pair = match FilteredPair::new(f.clone()) {
        Ok(p) => {
            let mut t = Table::new(&["degree", "dim"]);
            for (d, n) in p.gr.degree_dims() {
                t.push(vec![json!(d), json!(n)]);
            }
            s.push(Check::new("associated_graded", Status::Pass, "bracket induced on gr(g)").with_table("gr dims", t));
            p
        }
        Err(e) => {
            s.push(Check::new("associated_graded", Status::Fail, e.to_string()));
            skip_rest(&mut s, "associated_graded");
            return s;
        }
    };

    let ideal = f.max_ideal_in();
    s.push(
        Check::new(
            "condition_a",
            Status::from_bool(ideal.is_zero()),
            format!("largest ideal of g inside g^0 has dim {}", ideal.dim()),
        )
        .with("witness", vectors(ideal.basis())),
    );
    let stab = f.shifted_stabilizer(&f.component(0), 1);
    let g1 = f.component(1);
    s.push(
        Check::new(
            "condition_b",
            Status::from_bool(stab == g1),
            format!("stabilizer dim {}, g^1 dim {}", stab.dim(), g1.dim()),
        )
        .with("witness", vectors(stab.basis())),
    );

    s.push(continuation(f));
    let h1 = h1_stage(&pair, opts);
    let full_pair = h1.data.get("full_prolongation_pair").and_then(Value::as_bool);
    s.push(h1);
    s.push(prolongation(&pair, opts, full_pair));

    let codiff = match choice {
        CodiffChoice::None => {
            s.push(Check::new("codifferential", Status::Skip, "no codifferential selected"));
            None
        }
        _ => match build_codifferential(&pair, member, choice).and_then(|c| check_codifferential(&pair, &c).map(|r| (c, r))) {
            Ok((c, r)) => {
                // only failing rows are listed; the count is in the data
                let mut t = Table::new(&["k", "l", "side", "trivial"]);
                for row in r.rows.iter().filter(|row| !row.ok && opts.shows(row.l)) {
                    let side = if row.kernel_side { "ker gr0 d_k / im d" } else { "im gr0 d_k / ker d" };
                    t.push(vec![json!(row.k), json!(row.l), json!(side), json!(row.ok)]);
                }
                let check = Check::new(
                    "codifferential",
                    Status::from_bool(r.passed()),
                    format!(
                        "{}: equivariant {}, filtration {}, square zero {}, image homogeneous {}, disjoint {}",
                        choice.name(),
                        r.equivariant,
                        r.filtration,
                        r.square_zero,
                        r.image_homogeneous,
                        r.disjoint
                    ),
                )
                .with("kind", json!(choice.name()))
                .with("equivariant", json!(r.equivariant))
                .with("filtration", json!(r.filtration))
                .with("square_zero", json!(r.square_zero))
                .with("image_homogeneous", json!(r.image_homogeneous))
                .with("disjoint", json!(r.disjoint))
                .with("failures", json!(r.failures))
                .with("disjointness_rows", json!(r.rows.len()));
                let check = if t.rows.is_empty() { check } else { check.with_table("failing disjointness rows", t) };
                let ok = r.passed();
                s.push(check);
                ok.then_some(c)
            }
            Err(e) => {
                s.push(Check::new("codifferential", Status::Fail, format!("{}: {e}", choice.name())));
                None
            }
        },
    };

    let mut normalization: Option<Subspace> = None;
    match &codiff {
        Some(c) => match condition_stages(&pair, c, opts) {
            Ok((checks, n)) => {
                for check in checks {
                    s.push(check);
                }
                normalization = n;
            }
            Err(e) => s.push(Check::new("normalization", Status::Fail, e.to_string())),
        },
        None => {
            let why = if *choice == CodiffChoice::None {
                "skipped: no codifferential selected".to_string()
            } else {
                "skipped: codifferential did not pass".to_string()
            };
            for name in ["normalization", "negligible", "quotient"] {
                s.push(Check::new(name, Status::Skip, why.clone()));
            }
        }
    }

    let supplied = supplied_stages(&pair, member, &mut s);
    let n = normalization.or(supplied);
    match n {
        Some(n) => s.push(normalize_demo(&pair, &n, opts.seed)),
        None => s.push(Check::new("normalize", Status::Skip, "skipped: no normalization condition available")),
    }
    skip_rest(&mut s, "a previous stage");
    s
}

fn continuation(f: &crate::liealg::FilteredLieAlgebra) -> Check {
    let nonpos: Vec<i32> = f.index().iter().map(|&i| i.min(0)).collect();
    match continued_components(&f.alg, &nonpos) {
        Ok(comps) => {
            let height = f.height().max(0) as usize;
            let top = comps.len().max(height);
            let mut t = Table::new(&["j", "declared", "continued", "equal"]);
            let mut ok = true;
            for j in 1..=top {
                let declared = f.component(j as i32);
                let cont = comps.get(j - 1).cloned().unwrap_or_else(|| Subspace::zero(f.dim()));
                let eq = declared == cont;
                ok &= eq;
                t.push(vec![json!(j), json!(declared.dim()), json!(cont.dim()), json!(eq)]);
            }
            Check::new(
                "continuation",
                Status::from_bool(ok),
                format!("continued filtration has {} positive steps, declared {height}", comps.len()),
            )
            .with_table("components g^j", t)
        }
        Err(e) => Check::new("continuation", Status::Fail, e.to_string()),
    }
}

fn h1_stage(pair: &FilteredPair, opts: &PipelineOptions) -> Check {
    let top = pair.gr.depth() + pair.gr.top_degree();
    let mut t = Table::new(&["l", "H1"]);
    let mut pair_ok = true;
    let mut m_ok = true;
    for l in 0..=top {
        let d = match pair.cohomology_dim(1, l) {
            Ok(d) => d,
            Err(e) => return Check::new("h1", Status::Fail, e.to_string()),
        };
        if d != 0 {
            m_ok = false;
            if l > 0 {
                pair_ok = false;
            }
        }
        if opts.shows(l) {
            t.push(vec![json!(l), json!(d)]);
        }
    }
    Check::new(
        "h1",
        Status::Info,
        format!("full prolongation of (m, gr_0): {pair_ok}; of m: {m_ok}"),
    )
    .with("full_prolongation_pair", json!(pair_ok))
    .with("full_prolongation_of_m", json!(m_ok))
    .with_table("H^1(m, gr g)_l", t)
}

fn prolongation(pair: &FilteredPair, opts: &PipelineOptions, full_pair: Option<bool>) -> Check {
    if !opts.prolong {
        return Check::new("prolongation", Status::Skip, "disabled");
    }
    let r = match prolong_filtered(&pair.alg, opts.prolong_cap) {
        Ok(r) => r,
        Err(e) => return Check::new("prolongation", Status::Fail, e.to_string()),
    };
    let dims = r.total.degree_dims();
    let mut t = Table::new(&["degree", "prolongation", "gr"]);
    let gr_dims = pair.gr.degree_dims();
    let mut keys: Vec<i32> = dims.keys().chain(gr_dims.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();
    for d in &keys {
        t.push(vec![json!(d), json!(dims.get(d).copied().unwrap_or(0)), json!(gr_dims.get(d).copied().unwrap_or(0))]);
    }
    let matches = dims == gr_dims;
    let (status, note) = match (full_pair, &r.finite) {
        (Some(true), FiniteType::Finite(_)) => (
            Status::from_bool(matches),
            if matches { "equals gr(g) as H^1 predicts" } else { "differs from gr(g) although H^1 vanishes" },
        ),
        _ => (Status::Info, if matches { "equals gr(g)" } else { "differs from gr(g)" }),
    };
    Check::new("prolongation", status, format!("{}, total dim {}, {note}", r.finite, r.total_dim()))
        .with("finite_type", json!(r.finite.to_string()))
        .with("total_dim", json!(r.total_dim()))
        .with_table("dims", t)
}

/// Sub-Riemannian inner product for a graded algebra `m + g0` whose basis
/// lists the pieces in any order; `g0` must act skew on `m_-1` for the
/// standard inner product.
fn graded_subriemannian(pair: &FilteredPair) -> Result<InnerProduct> {
    if pair.alg.height() > 0 || pair.gr.alg != pair.alg.alg {
        return Err(Error::Precondition("subriem needs a graded algebra m + g0 without positive part".into()));
    }
    let (m, g0, labels) = symbol_pair(&pair.gr)?;
    let b = Matrix::identity(m.indices_of_degree(-1).len());
    let (_, ip) = subriemannian_inner_product(&m, &b, &g0, labels)?;
    let mut order = pair.gr.negative_indices();
    order.extend(pair.gr.indices_of_degree(0));
    let n = pair.dim();
    let mut gram = Matrix::zeros(n, n);
    for (a, &oa) in order.iter().enumerate() {
        for (b, &ob) in order.iter().enumerate() {
            gram[(oa, ob)] = ip.gram[(a, b)].clone();
        }
    }
    let ip = InnerProduct::new(gram)?;
    for a in pair.g0_basis() {
        if !ip.is_invariant(&pair.alg.alg, &a) {
            return Err(Error::Internal("transported inner product is not invariant".into()));
        }
    }
    Ok(ip)
}

fn build_codifferential(pair: &FilteredPair, member: &Member, choice: &CodiffChoice) -> Result<Codifferential> {
    match choice {
        CodiffChoice::Kostant => kostant_codifferential(pair),
        CodiffChoice::Ode => match &member.inner {
            Some((ip, AdjointKind::Horizontal)) => adjoint_codifferential(pair, ip, AdjointKind::Horizontal),
            _ => Err(Error::Precondition("the ode codifferential needs the ode target".into())),
        },
        CodiffChoice::Subriem => match &member.inner {
            Some((ip, AdjointKind::Graded)) => adjoint_codifferential(pair, ip, AdjointKind::Graded),
            _ => adjoint_codifferential(pair, &graded_subriemannian(pair)?, AdjointKind::Graded),
        },
        CodiffChoice::Given(c) => {
            let (c2, c1) = (pair.space(2).dim(), pair.space(1).dim());
            let c3 = pair.space(3).dim();
            if (c.d2.rows(), c.d2.cols(), c.d3.rows(), c.d3.cols()) != (c1, c2, c2, c3) {
                return Err(Error::DimensionMismatch(format!(
                    "d2 must be {c1} x {c2} and d3 {c2} x {c3}"
                )));
            }
            Ok((**c).clone())
        }
        CodiffChoice::None => Err(Error::Precondition("no codifferential selected".into())),
    }
}

fn condition_stages(pair: &FilteredPair, c: &Codifferential, opts: &PipelineOptions) -> Result<(Vec<Check>, Option<Subspace>)> {
    let (n, nt) = condition_from_codifferential(pair, c)?;
    let mut out = Vec::new();
    let norm = check_normalization(pair, &n)?;
    let mut t = Table::new(&["l", "gr_l N", "im d", "complementary"]);
    for r in norm.rows.iter().filter(|r| opts.shows(r.l)) {
        t.push(vec![json!(r.l), json!(r.dim_gr_n), json!(r.dim_image), json!(r.complementary)]);
    }
    out.push(
        Check::new(
            "normalization",
            Status::from_bool(norm.passed()),
            format!("N = ker d2 has dim {}, invariant {}", n.dim(), norm.invariant),
        )
        .with("dim", json!(n.dim()))
        .with_table("gr_l N against im d", t),
    );
    let neg = check_negligible(pair, &nt, &n)?;
    let mut t = Table::new(&["l", "gr_l Ntilde", "ker d", "trivial", "complementary"]);
    for r in neg.rows.iter().filter(|r| opts.shows(r.l)) {
        t.push(vec![
            json!(r.l),
            json!(r.dim_gr_ntilde),
            json!(r.dim_kernel),
            json!(r.trivial_intersection),
            json!(r.complementary),
        ]);
    }
    out.push(
        Check::new(
            "negligible",
            Status::from_bool(neg.maximal()),
            format!(
                "Ntilde = im d3 has dim {}, contained {}, invariant {}, negligible {}, maximal {}",
                nt.dim(),
                neg.contained,
                neg.invariant,
                neg.negligible(),
                neg.maximal()
            ),
        )
        .with("dim", json!(nt.dim()))
        .with_table("gr_l Ntilde against ker d", t),
    );
    if neg.maximal() {
        let rows = quotient_dims(pair, &n, &nt)?;
        let ok = rows.iter().all(|r| r.quotient == r.h2);
        let mut t = Table::new(&["l", "N/Ntilde", "H2"]);
        for r in rows.iter().filter(|r| opts.shows(r.l)) {
            t.push(vec![json!(r.l), json!(r.quotient), json!(r.h2)]);
        }
        out.push(
            Check::new(
                "quotient",
                Status::from_bool(ok),
                if ok { "gr_l(N/Ntilde) matches H^2_l in every degree" } else { "gr_l(N/Ntilde) differs from H^2_l" },
            )
            .with_table("N/Ntilde against H^2(m, gr g)_l", t),
        );
    } else {
        out.push(Check::skip("quotient", "negligible"));
    }
    Ok((out, norm.passed().then_some(n)))
}

fn supplied_stages(pair: &FilteredPair, member: &Member, s: &mut Section) -> Option<Subspace> {
    let dim = pair.space(2).dim();
    let subspace = |vs: &[Vector]| -> Result<Subspace> {
        if let Some(v) = vs.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(format!("vector of length {} in a space of dim {dim}", v.len())));
        }
        Ok(Subspace::span(dim, vs.to_vec()))
    };
    let Some(nv) = &member.n else {
        s.push(Check::new("supplied_normalization", Status::Skip, "no N supplied"));
        s.push(Check::new("supplied_negligible", Status::Skip, "no Ntilde supplied"));
        return None;
    };
    let n = match subspace(nv).and_then(|n| check_normalization(pair, &n).map(|r| (n, r))) {
        Ok((n, r)) => {
            s.push(Check::new(
                "supplied_normalization",
                Status::from_bool(r.passed()),
                format!("supplied N of dim {}, invariant {}", n.dim(), r.invariant),
            ));
            r.passed().then_some(n)
        }
        Err(e) => {
            s.push(Check::new("supplied_normalization", Status::Fail, e.to_string()));
            None
        }
    };
    match (&member.ntilde, &n) {
        (Some(tv), Some(n)) => match subspace(tv).and_then(|t| check_negligible(pair, &t, n)) {
            Ok(r) => s.push(Check::new(
                "supplied_negligible",
                Status::from_bool(r.negligible()),
                format!("negligible {}, maximal {}", r.negligible(), r.maximal()),
            )),
            Err(e) => s.push(Check::new("supplied_negligible", Status::Fail, e.to_string())),
        },
        (Some(_), None) => s.push(Check::skip("supplied_negligible", "supplied_normalization")),
        (None, _) => s.push(Check::new("supplied_negligible", Status::Skip, "no Ntilde supplied")),
    }
    n
}

/// Normalizes a random 2-form of homogeneity at least 1 against `n`, using a
/// random splitting, and checks the result.
fn normalize_demo(pair: &FilteredPair, n: &Subspace, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = &pair.alg;
    let dim = f.dim();
    let mut reps = Matrix::identity(dim);
    for t in 0..dim {
        for r in 0..dim {
            if f.index_of(r) > f.index_of(t) {
                reps[(r, t)] = int(rng.gen_range(-2..=2));
            }
        }
    }
    let splitting = match Splitting::from_representatives(f, reps) {
        Ok(s) => s,
        Err(e) => return Check::new("normalize", Status::Fail, e.to_string()),
    };
    let space = pair.space(2);
    let mut v = FilteredHom::zero(&space);
    for c in 0..space.dim() {
        if space.weight(c) >= 1 {
            v.values[c] = int(rng.gen_range(-3..=3));
        }
    }
    let run = || -> Result<(bool, bool, bool, FilteredHom)> {
        let normalizer = Normalizer::new(pair, n, splitting.clone())?;
        let out = normalizer.normalize(&v)?;
        let in_n = n.contains(&out.v_norm.values);
        let mut sum = out.v_norm.clone();
        for (_, b) in &out.removed {
            sum = sum.add(b);
        }
        let reconstructs = sum == v;
        let again = normalizer.normalize(&out.v_norm)?;
        let idempotent = again.v_norm == out.v_norm && again.corrections_vanish();
        Ok((in_n, reconstructs, idempotent, out.v_norm))
    };
    match run() {
        Ok((in_n, reconstructs, idempotent, v_norm)) => {
            let nonzero = v.values.iter().filter(|x| !x.is_zero()).count();
            Check::new(
                "normalize",
                Status::from_bool(in_n && reconstructs && idempotent),
                format!(
                    "random 2-form with {nonzero} nonzero entries: normalized part in N {in_n}, \
                     v = v_norm + removed {reconstructs}, idempotent {idempotent}"
                ),
            )
            .with("seed", json!(seed))
            .with("v", rational_list(&v.values))
            .with("v_norm", rational_list(&v_norm.values))
        }
        Err(e) => Check::new("normalize", Status::Fail, e.to_string()).with("v", rational_list(&v.values)),
    }
}
