//! Writes a model to the JSON algebra format and reads it back.

use filtered_lie::cli::AlgebraFile;
use filtered_lie::liealg::FilteredLieAlgebra;
use filtered_lie::models::{parabolic_grading, SimpleType};

fn main() {
    let g = parabolic_grading(SimpleType::Sl(2), &[1]).unwrap();
    let f = FilteredLieAlgebra::from_graded(&g);
    let text = AlgebraFile::from_algebra("sl2/Borel", &f).to_json();
    println!("{text}");
    let parsed = AlgebraFile::from_json(&text).unwrap().parse().unwrap();
    println!("round trip preserves the algebra: {}", parsed.alg == f);

    // a corrupted structure constant is caught by the Jacobi check
    let mut bad = AlgebraFile::from_json(&text).unwrap();
    bad.brackets[0].terms[0].den = filtered_lie::cli::IntLit::Small(3);
    match bad.parse() {
        Ok(_) => println!("corrupted file accepted"),
        Err(e) => println!("corrupted file rejected: {e}"),
    }
}
