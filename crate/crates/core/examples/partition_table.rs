// Symmetric partitions `S^k`, their cover pairs and the module dimensions
// attached to them.

use kdirac::partitions::{cover_pairs, dims_table, enumerate_sk};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for k in 2..=3 {
        println!("S^{k}:");
        for (j, level) in enumerate_sk(k, k) {
            let names: Vec<String> = level.iter().map(ToString::to_string).collect();
            println!("  j={j}: {}", names.join(", "));
        }
        for p in cover_pairs(k, k)? {
            println!("  {} < {}  order {}", p.source, p.target, p.order);
        }
    }

    let table = dims_table(2, 2, 3)?;
    println!("k=2, n=2: dim V_j = {:?}", table.level_dims);
    for row in &table.modules {
        println!("  {:8} q={} dim V={:3} E={:>4} jets {:?}", row.partition, row.q, row.dim_v, row.eigenvalue, row.shifted_jet_dims);
    }
    if table.level_dims != [4, 8, 8, 4] {
        return Err("unexpected level dimensions".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
