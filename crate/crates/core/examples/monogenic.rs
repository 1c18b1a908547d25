// Dimensions of homogeneous polynomial solutions of the k-Dirac operator.

use kdirac::dirac::build_d0_flat;
use kdirac::syzygy::solution_dims;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (k, n) in [(2, 2), (2, 3), (3, 3)] {
        let d0 = build_d0_flat(k, n)?;
        let dims = solution_dims(&d0, &[0, 1, 2])?;
        let ker: Vec<usize> = dims.iter().map(|r| r.kernel_dim).collect();
        println!("k={k} n={n}: {ker:?}");
        if ker[0] != 1 << n {
            return Err("constants are solutions".into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
