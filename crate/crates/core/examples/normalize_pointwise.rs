//! Normalizes a random 2-form degree by degree and checks the result.

use filtered_lie::cochains::{FilteredHom, Splitting};
use filtered_lie::exactla::{display_rational, int, Matrix};
use filtered_lie::models::ode_algebra;
use filtered_lie::normcond::{
    adjoint_codifferential, condition_from_codifferential, ode_inner_product, AdjointKind, FilteredPair, Normalizer,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pair = FilteredPair::new(ode_algebra(2, 1).unwrap()).unwrap();
    let ip = ode_inner_product(2, 1).unwrap();
    let c = adjoint_codifferential(&pair, &ip, AdjointKind::Horizontal).unwrap();
    let (n, _) = condition_from_codifferential(&pair, &c).unwrap();

    // a non-canonical splitting: each basis vector picks up deeper components
    let f = &pair.alg;
    let mut reps = Matrix::identity(f.dim());
    for t in 0..f.dim() {
        for r in 0..f.dim() {
            if f.index_of(r) > f.index_of(t) {
                reps[(r, t)] = int(rng.gen_range(-2..=2));
            }
        }
    }
    let splitting = Splitting::from_representatives(f, reps).unwrap();

    let space = pair.space(2);
    let mut v = FilteredHom::zero(&space);
    for i in 0..space.dim() {
        if space.weight(i) >= 1 {
            v.values[i] = int(rng.gen_range(-3..=3));
        }
    }
    let normalizer = Normalizer::new(&pair, &n, splitting).unwrap();
    let out = normalizer.normalize(&v).unwrap();
    for (l, b) in &out.removed {
        let nz = b.values.iter().filter(|x| !x.is_zero()).count();
        println!("step l = {l}: removed {nz} nonzero entries");
    }
    let mut sum = out.v_norm.clone();
    for (_, b) in &out.removed {
        sum = sum.add(b);
    }
    println!("normalized form lies in N: {}", n.contains(&out.v_norm.values));
    println!("v = v_norm + removed parts: {}", sum == v);
    let again = normalizer.normalize(&out.v_norm).unwrap();
    println!("normalizing again changes nothing: {}", again.v_norm == out.v_norm && again.corrections_vanish());
    let shown: Vec<String> = out.v_norm.values.iter().filter(|x| !x.is_zero()).take(8).map(display_rational).collect();
    println!("first nonzero entries of v_norm: {}", shown.join(" "));
}
