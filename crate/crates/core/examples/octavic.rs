//! Degree-3 covariants of binary octavics that vanish on products of two
//! fourth powers.

use transvect::covariant::{derive_vanishing_ratio, octavic_ratio_problems, octavic_suite, octavic_table};
use transvect::scalar::int;
use transvect::SparsePoly;

fn main() -> transvect::Result<()> {
    let t = octavic_table(&[])?;
    let special = SparsePoly::from_powers(&t, int(1), &[("x1", 4), ("x2", 4)])?;
    for (basis, published) in octavic_ratio_problems() {
        let names: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
        let r = derive_vanishing_ratio(&basis, &special, true)?;
        println!("{:?}: {}:{}  (published {}:{})", names, r[0], r[1], published[0], published[1]);
    }
    let rep = octavic_suite(5, 1)?;
    let zeros = rep.rows.iter().filter(|r| r.result_is_zero).count();
    println!("{zeros}/{} evaluations vanish; generic nonzero: {}; pass: {}", rep.rows.len(), rep.generic_nonzero, rep.pass);
    println!("order-mixing variant vanishes: {}", rep.display_variant_vanishes);
    Ok(())
}
