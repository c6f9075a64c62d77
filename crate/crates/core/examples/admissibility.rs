//! Conditions (A) and (B) and the continued filtration on ODE and Borel models.

use filtered_lie::liealg::{continued_components, FilteredLieAlgebra};
use filtered_lie::models::{ode_algebra, parabolic_grading, SimpleType};

fn describe(name: &str, f: &FilteredLieAlgebra) {
    let nonpos: Vec<i32> = f.index().iter().map(|&i| i.min(0)).collect();
    let comps = continued_components(&f.alg, &nonpos).expect("continuation");
    let dims: Vec<usize> = comps.iter().map(|c| c.dim()).collect();
    let declared: Vec<usize> = (1..=f.height()).map(|j| f.component(j).dim()).collect();
    println!(
        "{name:<12} dim {:>2}  depth {}  (A) {}  (B) {}  continued {:?}  declared {:?}",
        f.dim(),
        f.depth(),
        f.condition_a(),
        f.condition_b(),
        dims,
        declared
    );
}

fn main() {
    for n in [2, 3, 4] {
        let crossed: Vec<usize> = (1..n).collect();
        let g = parabolic_grading(SimpleType::Sl(n), &crossed).unwrap();
        describe(&format!("sl{n}/Borel"), &FilteredLieAlgebra::from_graded(&g));
    }
    for k in 1..=3 {
        for m in 1..=2 {
            describe(&format!("ode({k},{m})"), &ode_algebra(k, m).unwrap());
        }
    }
}
