//! Three non-isomorphic filtered algebras with the same associated graded.

use filtered_lie::models::mutation_triple;

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let members = mutation_triple(n).unwrap();
    let names = [format!("o({})", n + 1), format!("euc({n})"), format!("o({n},1)")];
    let grs: Vec<_> = members.iter().map(|f| f.associated_graded().unwrap()).collect();
    for (name, f) in names.iter().zip(&members) {
        let killing = f.alg.killing_form();
        println!("{name:<8} dim {}  Killing form rank {}", f.dim(), killing.rank());
    }
    for i in 0..3 {
        for j in i + 1..3 {
            println!(
                "{} vs {}: same algebra {}, same gr {}",
                names[i],
                names[j],
                members[i].alg.same_structure(&members[j].alg),
                grs[i].alg.same_structure(&grs[j].alg) && grs[i].degrees() == grs[j].degrees()
            );
        }
    }
}
