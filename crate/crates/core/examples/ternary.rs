//! Bracket concomitants of ternary quartics by letter insertion.

use transvect::ternary::{double_line_concomitants, eval_ternary_concomitant, generic_quartic, symbolic_double_lines};

fn main() -> transvect::Result<()> {
    let pair = symbolic_double_lines()?;
    let generic = generic_quartic(7)?;
    for c in double_line_concomitants() {
        let on_pair = eval_ternary_concomitant(&c, &pair)?;
        let on_generic = eval_ternary_concomitant(&c, &generic)?;
        println!("{c:<40} pair: {:<5} generic terms: {}", on_pair.is_zero(), on_generic.len());
    }
    Ok(())
}
