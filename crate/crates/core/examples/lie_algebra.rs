// The graded algebra `so(h)` with `g_-2 + g_-1 + g_0 + g_1 + g_2`.

use kdirac::liealg::{bracket, graded_basis, lower_tensor, verify_suite};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (k, n) = (2, 2);
    for g in -2..=2 {
        println!("dim g_{g} = {}", graded_basis(k, n, g).len());
    }

    // [e^1 (x) eps_1, e^2 (x) eps_1] lands in g_-2
    let x = lower_tensor(k, n, 0, 0);
    let y = lower_tensor(k, n, 1, 0);
    let z = bracket(&x, &y)?;
    println!("[X, Y] has grade {:?}", z.homogeneous_grade());

    let mut ok = true;
    for c in verify_suite(k, n)? {
        println!("{:>5} {:24} {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
        ok &= c.pass;
    }
    if !ok {
        return Err("Lie algebra suite failed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
