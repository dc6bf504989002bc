//! Plethysm characters and the degree-r piece of the ideal.

use transvect::characters::{decompose, ideal_char, ox_char, plethysm_weights, schur_dim, ternary_dim_report, Partition};

fn main() -> transvect::Result<()> {
    for (r, d) in [(2, 2), (3, 4), (3, 8), (4, 6)] {
        let s = decompose(&plethysm_weights(r, d))?;
        println!("S_{r}(S_{d}) = {s}");
        println!("  symmetric square part: {}", ox_char(r, d / 2));
        println!("  ideal: {}", ideal_char(r, d)?);
    }
    let lambda = Partition::new(vec![9, 3])?;
    println!("dim S_(9,3) C^3 = {}", schur_dim(&lambda, 3));
    let rep = ternary_dim_report();
    println!("{} = {} + {}  ({})", rep.plethysm, rep.symmetric_square, rep.ideal, rep.pass);
    Ok(())
}
