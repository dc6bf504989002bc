//! Symbolic bracket expressions for ternary forms and their evaluation by
//! letter insertion: expand in the components of the symbolic letters, then
//! apply `F(d/d alpha) F(d/d beta) F(d/d gamma)`.

use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::covariant::random_rational;
use crate::error::{Error, Result};
use crate::poly::{apply_diff_operator, SparsePoly, VarTable};
use crate::scalar::int;

pub const TX: [&str; 3] = ["x1", "x2", "x3"];
pub const TU: [&str; 3] = ["u1", "u2", "u3"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    Alpha,
    Beta,
    Gamma,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Alpha, Letter::Beta, Letter::Gamma];

    fn vars(self) -> [&'static str; 3] {
        match self {
            Letter::Alpha => ["a1", "a2", "a3"],
            Letter::Beta => ["b1", "b2", "b3"],
            Letter::Gamma => ["g1", "g2", "g3"],
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Letter::Alpha => "α",
            Letter::Beta => "β",
            Letter::Gamma => "γ",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BracketFactor {
    /// `(α β γ)`
    Full,
    /// `(l m u)`
    Mixed(Letter, Letter),
    /// `l_x`
    Linear(Letter),
}

impl fmt::Display for BracketFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketFactor::Full => write!(f, "(α β γ)"),
            BracketFactor::Mixed(a, b) => write!(f, "({} {} u)", a.symbol(), b.symbol()),
            BracketFactor::Linear(a) => write!(f, "{}_x", a.symbol()),
        }
    }
}

/// A formal product of bracket factors with exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymbolicBracketExpr(pub Vec<(BracketFactor, u32)>);

impl SymbolicBracketExpr {
    /// Degree of the product in the components of `letter`.
    pub fn letter_degree(&self, letter: Letter) -> u32 {
        self.0
            .iter()
            .map(|(f, k)| {
                let uses = match f {
                    BracketFactor::Full => 1,
                    BracketFactor::Mixed(a, b) => (*a == letter) as u32 + (*b == letter) as u32,
                    BracketFactor::Linear(a) => (*a == letter) as u32,
                };
                uses * k
            })
            .sum()
    }

    /// `(order in x, class in u)`.
    pub fn order_class(&self) -> (u32, u32) {
        let mut o = (0, 0);
        for (f, k) in &self.0 {
            match f {
                BracketFactor::Linear(_) => o.0 += k,
                BracketFactor::Mixed(..) => o.1 += k,
                BracketFactor::Full => {}
            }
        }
        o
    }
}

impl fmt::Display for SymbolicBracketExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(b, k)| if *k == 1 { b.to_string() } else { format!("{b}^{k}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The five concomitants of degree 3 in the coefficients of a quartic that
/// vanish exactly on pairs of double lines.
pub fn double_line_concomitants() -> Vec<SymbolicBracketExpr> {
    use BracketFactor::*;
    use Letter::*;
    vec![
        SymbolicBracketExpr(vec![(Linear(Alpha), 2), (Linear(Beta), 3), (Linear(Gamma), 1), (Mixed(Alpha, Gamma), 2), (Mixed(Beta, Gamma), 1)]),
        SymbolicBracketExpr(vec![(Linear(Alpha), 2), (Linear(Beta), 2), (Linear(Gamma), 2), (Full, 2)]),
        SymbolicBracketExpr(vec![(Linear(Alpha), 2), (Linear(Beta), 1), (Mixed(Beta, Gamma), 2), (Mixed(Alpha, Gamma), 1), (Full, 1)]),
        SymbolicBracketExpr(vec![(Linear(Alpha), 1), (Linear(Beta), 1), (Mixed(Alpha, Gamma), 1), (Mixed(Beta, Gamma), 1), (Full, 2)]),
        SymbolicBracketExpr(vec![(Full, 4)]),
    ]
}

fn det3(t: &Arc<VarTable>, rows: [[&str; 3]; 3]) -> Result<SparsePoly> {
    let v = |i: usize, j: usize| SparsePoly::var(t, rows[i][j]);
    let mut out = SparsePoly::zero(t);
    for (p, sign) in [([0, 1, 2], 1), ([1, 2, 0], 1), ([2, 0, 1], 1), ([0, 2, 1], -1), ([1, 0, 2], -1), ([2, 1, 0], -1)] {
        let term = &(&v(0, p[0])? * &v(1, p[1])?) * &v(2, p[2])?;
        out = &out + &term.scale(&int(sign));
    }
    Ok(out)
}

fn factor_poly(t: &Arc<VarTable>, f: BracketFactor) -> Result<SparsePoly> {
    match f {
        BracketFactor::Full => det3(t, [Letter::Alpha.vars(), Letter::Beta.vars(), Letter::Gamma.vars()]),
        BracketFactor::Mixed(a, b) => det3(t, [a.vars(), b.vars(), TU]),
        BracketFactor::Linear(a) => {
            let mut out = SparsePoly::zero(t);
            for (l, x) in a.vars().iter().zip(TX) {
                out = &out + &(&SparsePoly::var(t, l)? * &SparsePoly::var(t, x)?);
            }
            Ok(out)
        }
    }
}

/// Expands the bracket product over the letter components, `x` and `u`.
pub fn expand_brackets(expr: &SymbolicBracketExpr, t: &Arc<VarTable>) -> Result<SparsePoly> {
    let mut out = SparsePoly::one(t);
    for (f, k) in &expr.0 {
        out = out.try_mul(&factor_poly(t, *f)?.pow(*k))?;
    }
    Ok(out)
}

/// Evaluates `expr` on the ternary form `f` (in `x1, x2, x3`; other variables
/// of its table are coefficients). The result is a polynomial in `x`, `u` and
/// those coefficients.
pub fn eval_ternary_concomitant(expr: &SymbolicBracketExpr, f: &SparsePoly) -> Result<SparsePoly> {
    let deg = f
        .homogeneous_degree(&f.indices(&TX)?)?
        .ok_or_else(|| Error::NotHomogeneous("zero ground form".into()))?;
    for l in Letter::ALL {
        let found = expr.letter_degree(l);
        if found != deg {
            return Err(Error::LetterDegree { letter: l.symbol().into(), expected: deg, found });
        }
    }
    let coeff_vars: Vec<String> = f.table().names().iter().filter(|n| !TX.contains(&n.as_str())).cloned().collect();
    let mut names: Vec<String> = Letter::ALL.iter().flat_map(|l| l.vars()).chain(TX).chain(TU).map(String::from).collect();
    names.extend(coeff_vars.iter().cloned());
    let work = VarTable::new(names)?;
    let mut acc = expand_brackets(expr, &work)?;
    for l in Letter::ALL {
        let slots: Vec<(&str, &str)> = TX.iter().copied().zip(l.vars()).collect();
        acc = apply_diff_operator(f, &slots, &acc)?;
        if acc.is_zero() {
            break;
        }
    }
    let out_names: Vec<String> = TX.iter().chain(TU.iter()).map(|s| s.to_string()).chain(coeff_vars).collect();
    acc.reembed(&VarTable::new(out_names)?)
}

pub fn ternary_table(extra: &[&str]) -> Result<Arc<VarTable>> {
    VarTable::new(TX.iter().chain(extra.iter()).copied())
}

/// `(L1 L2)^2` with `L1 = p1 x1 + p2 x2 + p3 x3`, `L2 = q1 x1 + q2 x2 + q3 x3` symbolic.
pub fn symbolic_double_lines() -> Result<SparsePoly> {
    let t = ternary_table(&["p1", "p2", "p3", "q1", "q2", "q3"])?;
    let lin = |c: [&str; 3]| -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(&t);
        for (ci, x) in c.iter().zip(TX) {
            out = &out + &(&SparsePoly::var(&t, ci)? * &SparsePoly::var(&t, x)?);
        }
        Ok(out)
    };
    Ok((&lin(["p1", "p2", "p3"])? * &lin(["q1", "q2", "q3"])?).pow(2))
}

fn random_line(rng: &mut ChaCha8Rng, t: &Arc<VarTable>) -> SparsePoly {
    loop {
        let c: Vec<_> = (0..3).map(|_| random_rational(rng)).collect();
        let l = SparsePoly::linear(t, &TX, &c).expect("ternary variables");
        if !l.is_zero() {
            return l;
        }
    }
}

/// A fixed quartic with pseudo-random coefficients in `1..=9`.
pub fn generic_quartic(seed: u64) -> Result<SparsePoly> {
    use rand::Rng;
    let t = ternary_table(&[])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SparsePoly::zero(&t);
    for i in 0..=4u16 {
        for j in 0..=4 - i {
            let c = int(rng.gen_range(1..=9));
            out = &out + &SparsePoly::from_powers(&t, c, &[("x1", i), ("x2", j), ("x3", 4 - i - j)])?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryRow {
    pub expression: String,
    pub specialization: String,
    pub result_is_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernaryReport {
    pub seed: u64,
    pub trials: usize,
    pub rows: Vec<TernaryRow>,
    pub locus_all_zero: bool,
    pub generic_nonzero: bool,
    pub pass: bool,
}

/// All five concomitants on `trials` random pairs of double lines and one
/// symbolic pair, and the full bracket on a generic quartic.
pub fn ternary_suite(trials: usize, seed: u64) -> Result<TernaryReport> {
    let concs = double_line_concomitants();
    let t = ternary_table(&[])?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut specs: Vec<(String, SparsePoly)> = vec![("(p_x q_x)^2".into(), symbolic_double_lines()?)];
    for _ in 0..trials {
        let (l1, l2) = (random_line(&mut rng, &t), random_line(&mut rng, &t));
        specs.push((format!("(({l1}) ({l2}))^2"), (&l1 * &l2).pow(2)));
    }
    let cells: Vec<(usize, usize)> = (0..specs.len()).flat_map(|s| (0..concs.len()).map(move |c| (s, c))).collect();
    let zero: Vec<bool> = cells
        .par_iter()
        .map(|&(s, c)| eval_ternary_concomitant(&concs[c], &specs[s].1).map(|p| p.is_zero()))
        .collect::<Result<_>>()?;
    let mut rows: Vec<TernaryRow> = cells
        .iter()
        .zip(&zero)
        .map(|(&(s, c), &z)| TernaryRow {
            expression: concs[c].to_string(),
            specialization: specs[s].0.clone(),
            result_is_zero: z,
        })
        .collect();
    let locus_all_zero = zero.iter().all(|&z| z);
    let generic = generic_quartic(seed)?;
    let full = &concs[4];
    let generic_nonzero = !eval_ternary_concomitant(full, &generic)?.is_zero();
    rows.push(TernaryRow {
        expression: full.to_string(),
        specialization: format!("generic quartic (seed {seed})"),
        result_is_zero: !generic_nonzero,
    });
    Ok(TernaryReport { seed, trials, rows, locus_all_zero, generic_nonzero, pass: locus_all_zero && generic_nonzero })
}
