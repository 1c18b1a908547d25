// Fock-space gamma matrices for `Cl(2n)` and the spin action of `so(2n)`.

use kdirac::clifford::{SpinorSpace, CLIFFORD_SIGN};
use kdirac::exactla::{ExactMatrix, Scalar};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = SpinorSpace::build(2)?;
    println!("dim S = {}, convention {CLIFFORD_SIGN}", s.dim());
    println!("even {:?}, odd {:?}", s.even(), s.odd());
    for (a, g) in s.gammas().iter().enumerate() {
        println!("gamma_{} =", a + 1);
        for r in 0..g.rows() {
            let row: Vec<String> = g.row_dense(r).iter().map(|v| format!("{:>3}", v.to_string())).collect();
            println!("  [{}]", row.join(" "));
        }
    }

    let minus_one = ExactMatrix::identity(s.dim()).scale(&Scalar::from_int(-1));
    for a in 0..4 {
        for b in 0..4 {
            let ab = s.gamma(a).mul(s.gamma(b))?;
            let ba = s.gamma(b).mul(s.gamma(a))?;
            let anti = ab.add(&ba)?;
            let want = if a == b { minus_one.scale(&Scalar::from_int(2)) } else { ExactMatrix::zeros(s.dim(), s.dim()) };
            if anti != want {
                return Err(format!("anticommutator ({a},{b}) is wrong").into());
            }
        }
    }
    println!("gamma_a gamma_b + gamma_b gamma_a = -2 delta_ab: ok");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
