// PBW monomials of `U(g_-)` paired with weighted polynomial slices.

use kdirac::polydiff::{duality_matrix, duality_suite, Space};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let space = Space::new(2, 2);
    let m = duality_matrix(&space, 2, 2)?;
    println!("U_2 x P_2: {} x {}", m.rows(), m.cols());
    for rec in duality_suite(2, 2, 3)? {
        println!("r={} s={} {:3}x{:<3} rank {:3} {}", rec.r, rec.s, rec.rows, rec.cols, rec.rank, if rec.pass { "ok" } else { "FAIL" });
        if !rec.pass {
            return Err("pairing is degenerate".into());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
