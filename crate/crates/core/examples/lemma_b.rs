//! The second nonvanishing constant, the existence choice, and the six-step
//! recipe for the induction map.

use transvect::hypergeo::n2_closed;
use transvect::lemma::{existence_choice, lemma_b_direct, u_r_recipe};
use transvect::scalar::{fmt_short, int};
use transvect::{SparsePoly, VarTable};

fn main() -> transvect::Result<()> {
    let (r, e) = (2, 2);
    for pp in 0..=(r + 1) * e / 2 {
        let p = existence_choice(r, e, pp)?;
        println!(
            "p'={pp} -> p={p}: direct={} closed={}",
            fmt_short(&lemma_b_direct(r, e, pp, p)?),
            fmt_short(&n2_closed(r, e, pp, p)?)
        );
    }

    let t = VarTable::new(["x1", "x2"])?;
    let c = SparsePoly::parse(&t, "1/1 * x1^2 + 1/1 * x2^2")?;
    let d = SparsePoly::parse(&t, "1/1 * x1^2 + -1/1 * x1^1 * x2^1")?;
    // r = 2, d = 2, p = 1: C has order rd - 4p = 0, so use a constant
    let c0 = SparsePoly::constant(&t, int(1));
    println!("u_2^(1,1)(1 (x) D) = {}", u_r_recipe(&c0, &d, 2, 1, 1)?);
    println!("u_2^(0,1)(C (x) D) = {}", u_r_recipe(&c.pow(2), &d, 2, 0, 1)?);
    Ok(())
}
