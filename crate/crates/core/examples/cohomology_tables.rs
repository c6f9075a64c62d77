//! Tables of dim H^k(m, gr g)_l for a few models.

use filtered_lie::cochains::CochainComplex;
use filtered_lie::liealg::GradedLieAlgebra;
use filtered_lie::models::{heisenberg, ode_algebra, parabolic_grading, SimpleType};

fn table(name: &str, g: &GradedLieAlgebra) {
    let cx = CochainComplex::on_negative_part(g).unwrap();
    println!("{name}");
    for k in 0..=2 {
        let (lo, hi) = cx.space(k).weight_range().unwrap_or((0, 0));
        let row: Vec<String> = (lo..=hi)
            .filter_map(|l| {
                let h = cx.cohomology_dim(k, l).unwrap();
                (h > 0).then(|| format!("{l}:{h}"))
            })
            .collect();
        println!("  H^{k}  {}", row.join("  "));
    }
}

fn main() {
    table("sl3/Borel", &parabolic_grading(SimpleType::Sl(3), &[1, 2]).unwrap());
    table("sp4/Borel", &parabolic_grading(SimpleType::Sp4, &[1, 2]).unwrap());
    table("ode(3,1)", &ode_algebra(3, 1).unwrap().associated_graded().unwrap());
    // m alone, values in m
    table("heisenberg(5)", &heisenberg(5).unwrap());
}
