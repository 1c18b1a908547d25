// `D_0` on `G_-` and its descended constant-coefficient form on `U`, with
// the matrices between homogeneous slices.

use kdirac::dirac::{build_d0_affine, build_d0_flat, descend, descend_suite, gr_matrix};
use kdirac::exactla::rank;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let affine = build_d0_affine(2, 2)?;
    let flat = build_d0_flat(2, 2)?;
    println!("D0: {} -> {}, order {}", flat.source_dim(), flat.target_dim(), flat.order);
    println!("affine terms {}, flat terms {}", affine.op.terms().len(), flat.op.terms().len());
    if descend(&affine)?.op != flat.op {
        return Err("descend(D0 affine) differs from D0 flat".into());
    }

    for d in 0..=3 {
        let m = gr_matrix(&flat, d, false)?;
        println!("gr^{d}: {} x {}, rank {}", m.rows(), m.cols(), rank(&m));
    }
    for c in descend_suite(2, 2, 3)? {
        println!("{:>5} {:28} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
        if !c.pass {
            return Err(format!("{} failed", c.name).into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
