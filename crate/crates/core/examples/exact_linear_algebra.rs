//! Exact rational kernels, images and subspace operations.

use filtered_lie::exactla::{display_rational, rat, Matrix, Subspace};

fn show(v: &[filtered_lie::exactla::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(display_rational).collect();
    format!("({})", parts.join(", "))
}

fn main() {
    let a = Matrix::from_i64_rows(&[vec![1, 2, 3, 4], vec![2, 4, 7, 9], vec![3, 6, 10, 13]]);
    println!("rank = {}", a.rank());
    println!("determinant of the leading 2x2 block = {}", a.submatrix(&[0, 1], &[0, 2]).determinant());
    for v in a.kernel().basis() {
        println!("kernel vector {}  ->  {}", show(v), show(&a.mul_vec(v)));
    }

    let h = Matrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]).scale(&rat(1, 3));
    let inv = h.inverse().expect("invertible");
    println!("inverse of H = {:?}", inv.columns().iter().map(|c| show(c)).collect::<Vec<_>>());

    let s = Subspace::coordinate(4, [0, 1]);
    let t = a.kernel();
    println!("dim(s) = {}, dim(ker a) = {}", s.dim(), t.dim());
    println!("dim(s + ker a) = {}, dim(s cap ker a) = {}", s.sum(&t).dim(), s.intersect(&t).dim());
}
