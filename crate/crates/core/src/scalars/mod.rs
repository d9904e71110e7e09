//! Exact arithmetic in Q(q1, q2): Laurent polynomials, rational functions,
//! quantum integers and numeric specialization.

mod laurent;
mod parse;
mod ratfunc;

pub use laurent::{rat, rat_to_f64, LaurentPoly2, Rat};
pub use parse::{parse_ratfunc, parse_ratfunc_with};
pub use ratfunc::RatFunc2;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    VanishingDenominator,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Balanced quantum integer [n] in q_which, as a Laurent polynomial.
pub fn qint(n: u32, which: u8) -> RatFunc2 {
    let n = n as i32;
    let terms = (0..n).map(|k| {
        let e = n - 1 - 2 * k;
        let exps = if which == 1 { (e, 0) } else { (0, e) };
        (exps, rat(1))
    });
    RatFunc2::from_poly(LaurentPoly2::from_terms(terms))
}

/// [2]_1 [2]_2, the value of a loop of X.
pub fn delta() -> RatFunc2 {
    &qint(2, 1) * &qint(2, 2)
}

/// d1^a d2^b with d_i = [2]_i, for nonnegative exponents.
pub fn loop_weight(a: u32, b: u32) -> RatFunc2 {
    let d1 = qint(2, 1).numerator().pow(a);
    let d2 = qint(2, 2).numerator().pow(b);
    RatFunc2::from_poly(&d1 * &d2)
}
