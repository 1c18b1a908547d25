// Exactness of the discovered complex in homogeneous degrees, with a
// matrix cache on disk.

use kdirac::cli::MatrixCache;
use kdirac::syzygy::{verify_exactness_with, OperatorStack};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut stack = OperatorStack::new(2, 2)?;
    stack.discover_next(3)?;
    stack.discover_next(2)?;

    let dir = std::env::temp_dir().join(format!("kdirac-example-{}", std::process::id()));
    let cache = MatrixCache::open(&dir)?;
    for (spot, degrees) in [(1, 2..=4), (2, 1..=3)] {
        let degrees: Vec<usize> = degrees.collect();
        for r in verify_exactness_with(&cache, &stack, spot, &degrees)? {
            println!("spot {} degree {}: rank {:5} kernel {:5} {}", r.spot, r.degree, r.rank, r.kernel_dim, r.method);
            if !r.pass {
                return Err("not exact".into());
            }
        }
    }
    println!("{} cached matrices in {}", std::fs::read_dir(&dir)?.count(), dir.display());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
