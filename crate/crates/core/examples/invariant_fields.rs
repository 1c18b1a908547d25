// Left-invariant fields on `G_-` in exponential coordinates and their
// brackets.

use kdirac::exactla::Scalar;
use kdirac::liealg::BasisLabel;
use kdirac::polydiff::{field_bracket_suite, left_invariant_field, Polynomial, Space};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let space = Space::new(2, 2);
    let names: Vec<String> = (0..space.nvars()).map(|v| space.var_name(v)).collect();
    println!("coordinates: {}", names.join(" "));

    let l = left_invariant_field(&space, &BasisLabel::LowerTensor { i: 0, alpha: 0 })?;
    let y12 = Polynomial::scalar_monomial(space.unit(space.y(0, 1)), Scalar::one());
    let image = l.apply(&y12)?;
    println!("L_(e1 x eps1) y12 = {:?}", image.terms());

    let (checks, c) = field_bracket_suite(2, 2)?;
    for ch in &checks {
        println!("{:>5} {:24} {}", if ch.pass { "ok" } else { "FAIL" }, ch.name, ch.detail);
    }
    if c != Some(Scalar::one()) || checks.iter().any(|c| !c.pass) {
        return Err("field brackets disagree with the algebra".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
