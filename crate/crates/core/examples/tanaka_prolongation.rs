//! Tanaka prolongation of the symbol of a few filtered algebras.

use filtered_lie::liealg::FilteredLieAlgebra;
use filtered_lie::models::{ode_algebra, parabolic_grading, SimpleType};
use filtered_lie::prolong::{check_full_prolongation_pair, prolong_filtered};

fn run(name: &str, f: &FilteredLieAlgebra) {
    let r = prolong_filtered(f, None).unwrap();
    println!(
        "{name:<10} g_+ dims {:?}  total {:>2}  {}  full prolongation: {}",
        r.positive_dims(),
        r.total_dim(),
        r.finite,
        check_full_prolongation_pair(f).unwrap()
    );
}

fn main() {
    for (k, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        run(&format!("ode({k},{m})"), &ode_algebra(k, m).unwrap());
    }
    let g = parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap();
    run("sl3/Borel", &FilteredLieAlgebra::from_graded(&g));
    // |1|-graded sl3: the prolongation does not stop
    let g = parabolic_grading(SimpleType::Sl(3), &[1]).unwrap();
    run("sl3/[1]", &FilteredLieAlgebra::from_graded(&g));
}
