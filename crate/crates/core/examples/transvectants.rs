//! The Omega process, polarization and transvectants of binary forms.

use transvect::omega::{binary_table, omega_power, polarize, transvect, X, Y};
use transvect::SparsePoly;

fn main() -> transvect::Result<()> {
    let t = binary_table(&[])?;
    let f = SparsePoly::parse(&t, "1/1 * x1^3 + 2/1 * x1^1 * x2^2 + -1/1 * x2^3")?;
    let g = SparsePoly::parse(&t, "1/1 * x1^2 + -3/1 * x1^1 * x2^1")?;

    for k in 0..=2 {
        println!("(f,g)_{k} = {}", transvect(&f, &g, k, true)?);
    }
    // the Hessian is the second transvectant of f with itself
    println!("(f,f)_2 = {}", transvect(&f, &f, 2, false)?);
    println!("(f,f)_1 = {}", transvect(&f, &f, 1, false)?);

    let polar = polarize(&f, &X, &Y, 1, true)?;
    println!("polar   = {polar}");

    let w = SparsePoly::parse(&t, "1/1 * x1^1 * y2^1 + -1/1 * x2^1 * y1^1")?;
    println!("Omega^3 omega^3 = {}", omega_power(&w.pow(3), 3)?);
    Ok(())
}
