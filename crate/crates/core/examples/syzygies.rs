// Minimal compatibility operators of `D_0`, found degree by degree and
// compared with the dimensions predicted by the partitions.

use kdirac::syzygy::{equivariance_closure, predicted_new, OperatorStack};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (k, n) = (2, 2);
    let mut stack = OperatorStack::new(k, n)?;
    for round in 0..3 {
        let stage = stack.discover_next(4 - round)?;
        println!("syzygies of D{}:", stage.j);
        for r in stage.search.records() {
            let p = predicted_new(k, n, stage.j, r.degree);
            println!(
                "  degree {}: {:5} unknowns, rank {:5}, new {} (predicted {:?}, {})",
                r.degree, r.unknowns, r.rank, r.new_count, p, r.method
            );
            if p.is_some_and(|p| p != r.new_count) {
                return Err("generator count disagrees with prediction".into());
            }
        }
    }
    for op in &stack.ops {
        println!("{}: {} -> {}, order {}", op.name, op.source_dim(), op.target_dim(), op.order);
    }
    for (j, zero) in stack.composite_zero()? {
        println!("D{} o D{j} = 0: {zero}", j + 1);
    }

    let gens = stack.stages[0].search.generators_of_degree(2);
    let rep = equivariance_closure(&gens, k, n)?;
    println!("g_0 closure of the {} degree-2 rows: {}", rep.span_dim, rep.closure_dim);
    let rep = equivariance_closure(&gens[1..], k, n)?;
    println!("after dropping one row: {} -> {}", rep.span_dim, rep.closure_dim);
    if rep.invariant {
        return Err("a truncated generator set cannot be invariant".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
