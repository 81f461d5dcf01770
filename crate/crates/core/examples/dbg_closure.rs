use nsverify_core::channels::{collective_dephasing, Axis};
use nsverify_core::opspace::{commutant, OperatorSpace};
use nsverify_core::ComplexMatrix;

fn main() {
    let mut gens = Vec::new();
    gens.extend(collective_dephasing(Axis::X, 3).kraus().to_vec());
    gens.extend(collective_dephasing(Axis::Y, 3).kraus().to_vec());
    gens.push(ComplexMatrix::identity(8));
    let mut cur = OperatorSpace::span_of(&gens, 1e-9).unwrap();
    println!("round 0: dim {}", cur.dim());
    for round in 1..6 {
        let prods = cur.product_span(&cur).unwrap();
        println!("  products span dim {}", prods.dim());
        let next = cur.union_span(&prods).unwrap().union_span(&cur.dagger_span()).unwrap();
        println!("round {round}: dim {}", next.dim());
        if next.dim() == cur.dim() { break; }
        cur = next;
    }
    // independent check via rank of stacked products
    let alg = nsverify_core::spin::build_collective_algebra();
    println!("A_c dim {}", alg.dim());
    let comm = commutant(alg.space());
    println!("A_c' dim {}", comm.dim());
    // gram residual of the closure basis
    println!("closure gram residual {:.3e}", cur.gram_residual());
}
