//! Omega^(2p) Q(x)^e Q(y)^e at y = x, compared across all routes.

use transvect::lemma::lemma_a_report;
use transvect::scalar::fmt_short;

fn main() -> transvect::Result<()> {
    for e in 1..=4 {
        for p in 0..=e {
            let r = lemma_a_report(e, p, 2)?;
            println!(
                "e={e} p={p}  direct={}  graphs={}  alternating={}  closed={}  generic-Q={:?}  agree={}",
                fmt_short(&r.n_direct_special),
                fmt_short(&r.n_graphs),
                fmt_short(&r.n_dixon),
                fmt_short(&r.n_closed),
                r.proportionality_ok,
                r.agree(),
            );
        }
    }
    Ok(())
}
