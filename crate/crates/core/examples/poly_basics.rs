//! Exact sparse polynomials: arithmetic, derivatives, substitution and the
//! two serializations.

use transvect::scalar::ratio;
use transvect::{SparsePoly, VarTable};

fn main() -> transvect::Result<()> {
    let t = VarTable::new(["x1", "x2"])?;
    let x1 = SparsePoly::var(&t, "x1")?;
    let x2 = SparsePoly::var(&t, "x2")?;

    let f = (&x1 + &x2).pow(3);
    println!("(x1 + x2)^3      = {f}");
    println!("d/dx1 twice      = {}", f.derive("x1", 2)?);

    let half = SparsePoly::constant(&t, ratio(1, 2));
    let g = f.substitute(&[("x2", &x1 * &half)])?;
    println!("x2 := x1/2       = {g}");

    let text = f.to_string();
    assert_eq!(SparsePoly::parse(&t, &text)?, f);
    let json = serde_json::to_string(&f.to_structured()).expect("serializable");
    println!("structured       = {json}");
    Ok(())
}
