//! Normalization condition for the ODE model from an invariant inner product.

use filtered_lie::models::ode_algebra;
use filtered_lie::normcond::{
    adjoint_codifferential, check_codifferential, check_negligible, check_normalization, condition_from_codifferential,
    ode_inner_product, quotient_dims, AdjointKind, FilteredPair,
};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("usize"));
    let k = args.next().unwrap_or(3);
    let m = args.next().unwrap_or(1);
    let pair = FilteredPair::new(ode_algebra(k, m).unwrap()).unwrap();
    let ip = ode_inner_product(k, m).unwrap();
    println!("ode({k},{m}): dim {}, inner product invariant under g0: {}", pair.dim(), {
        pair.g0_basis().iter().all(|a| ip.is_invariant(&pair.alg.alg, a))
    });
    let c = adjoint_codifferential(&pair, &ip, AdjointKind::Horizontal).unwrap();
    let r = check_codifferential(&pair, &c).unwrap();
    println!("codifferential passes: {}", r.passed());
    let (n, nt) = condition_from_codifferential(&pair, &c).unwrap();
    let nr = check_normalization(&pair, &n).unwrap();
    let tr = check_negligible(&pair, &nt, &n).unwrap();
    println!("N = ker d2: dim {}, normalization {}", n.dim(), nr.passed());
    println!("Ntilde = im d3: dim {}, maximal negligible {}", nt.dim(), tr.maximal());
    for q in quotient_dims(&pair, &n, &nt).unwrap() {
        println!("  l = {:>2}  dim gr(N/Ntilde) = {}  dim H^2 = {}", q.l, q.quotient, q.h2);
    }
}
