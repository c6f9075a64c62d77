//! The Kostant codifferential on parabolic geometries and the normalization it defines.

use filtered_lie::liealg::FilteredLieAlgebra;
use filtered_lie::models::{parabolic_grading, SimpleType};
use filtered_lie::normcond::{check_codifferential, condition_from_codifferential, kostant_codifferential, quotient_dims, FilteredPair};

fn main() {
    for (name, ty, crossed) in [
        ("sl3/Borel", SimpleType::Sl(3), vec![1, 2]),
        ("sl3/[1]", SimpleType::Sl(3), vec![1]),
        ("sp4/Borel", SimpleType::Sp4, vec![1, 2]),
        ("sl4/[2]", SimpleType::Sl(4), vec![2]),
    ] {
        let g = parabolic_grading(ty, &crossed).unwrap();
        let pair = FilteredPair::new(FilteredLieAlgebra::from_graded(&g)).unwrap();
        let c = kostant_codifferential(&pair).unwrap();
        let r = check_codifferential(&pair, &c).unwrap();
        let (n, nt) = condition_from_codifferential(&pair, &c).unwrap();
        println!(
            "{name:<10} equivariant {} filtration {} square zero {} homogeneous {} disjoint {}",
            r.equivariant, r.filtration, r.square_zero, r.image_homogeneous, r.disjoint
        );
        let rows: Vec<String> = quotient_dims(&pair, &n, &nt)
            .unwrap()
            .iter()
            .filter(|q| q.quotient > 0)
            .map(|q| format!("l={}: {}", q.l, q.quotient))
            .collect();
        println!("           dim N {}  dim Ntilde {}  gr(N/Ntilde) {}", n.dim(), nt.dim(), rows.join(", "));
    }
}
