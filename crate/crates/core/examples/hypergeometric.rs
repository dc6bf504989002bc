//! Terminating hypergeometric sums and the closed forms they evaluate to.

use transvect::hypergeo::{
    chu_vandermonde, dixon_terminating, j_closed, j_direct, n1_closed, n1_closed_high_printed, n1_via_3f2,
    n1_via_dixon, n2_closed, terminating_2f1,
};
use transvect::scalar::{fmt_short, int};

fn main() -> transvect::Result<()> {
    let (n, b, c) = (4, int(3), int(5));
    println!("2F1(-4, 3; 5; 1) = {} = {}", fmt_short(&terminating_2f1(&int(-4), &b, &c)?), fmt_short(&chu_vandermonde(n, &b, &c)?));
    println!("3F2[-2, -3, -4; 2, 3; 1] = {}", fmt_short(&dixon_terminating(1, -3, -4)?));

    println!("{:>2} {:>2} {:>14} {:>14} {:>14} {:>14}", "e", "p", "alternating", "3F2", "closed", "printed 2nd");
    for e in 1..=5u32 {
        for p in 0..=e {
            let printed = if 2 * p >= e { fmt_short(&n1_closed_high_printed(e, p)) } else { "-".into() };
            println!(
                "{e:>2} {p:>2} {:>14} {:>14} {:>14} {:>14}",
                fmt_short(&n1_via_dixon(e, p)?),
                fmt_short(&n1_via_3f2(e, p)?),
                fmt_short(&n1_closed(e, p)?),
                printed,
            );
        }
    }

    for (s, p) in [(3, 1), (5, 2), (7, 3)] {
        println!("J({s},{p}) = {} = {}", fmt_short(&j_direct(s, p)), fmt_short(&j_closed(s, p)?));
    }
    println!("N^II(2,2,3,1) = {}", fmt_short(&n2_closed(2, 2, 3, 1)?));
    Ok(())
}
