//! Adjoint codifferentials for sub-Riemannian symbols with their skew derivations.

use filtered_lie::exactla::Matrix;
use filtered_lie::liealg::{FilteredLieAlgebra, GradedLieAlgebra};
use filtered_lie::models::{bryant, free_nilpotent, heisenberg, skew_derivations};
use filtered_lie::normcond::{
    adjoint_codifferential, check_codifferential, condition_from_codifferential, subriemannian_inner_product, AdjointKind,
    FilteredPair,
};

fn run(name: &str, m: &GradedLieAlgebra) {
    let so = skew_derivations(m);
    let labels = (1..=so.dim()).map(|i| format!("A{i}")).collect();
    let b = Matrix::identity(m.indices_of_degree(-1).len());
    let (g, ip) = subriemannian_inner_product(m, &b, &so, labels).unwrap();
    let pair = FilteredPair::new(FilteredLieAlgebra::from_graded(&g)).unwrap();
    let c = adjoint_codifferential(&pair, &ip, AdjointKind::Graded).unwrap();
    let r = check_codifferential(&pair, &c).unwrap();
    let (n, nt) = condition_from_codifferential(&pair, &c).unwrap();
    println!(
        "{name:<14} dim m {:>2}  dim g0 {}  codifferential {}  dim N {}  dim Ntilde {}",
        m.dim(),
        so.dim(),
        if r.passed() { "ok" } else { "FAILED" },
        n.dim(),
        nt.dim()
    );
}

fn main() {
    run("heisenberg(3)", &heisenberg(3).unwrap());
    run("heisenberg(5)", &heisenberg(5).unwrap());
    run("free(2,3)", &free_nilpotent(2, 3).unwrap());
    run("bryant", &bryant());
}
