//! Braidings on the generator X⊗X: the explicit braid morphism, the eight
//! classes, Yang–Baxter, ρ(σ) = σ⁻¹, twists and the α-system.
//!
//! Braid morphisms live over Q(s1, s2): the two formal variables of
//! [`RatFunc2`] are read as s1, s2 and q_i := −s_i^{2 e_i}.

use num::complex::Complex64;
use num::{BigInt, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::model::{make_cap, make_cup, make_e, make_id2, make_p, make_q, make_r, ModelError, ProdMorphism};
use crate::scalars::{delta, loop_weight, qint, rat, Rat, RatFunc2};
use crate::tl::TLDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidingError {
    #[error("invalid braiding parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("morphism is not invertible")]
    NotInvertible,
    #[error("left and right curls differ")]
    CurlMismatch,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
}

/// One braiding class: s1² = −q1^{e1}, s2² = −q2^{e2}, with `sign` the sign
/// of s2 relative to the formal variable (s1 is the formal variable itself,
/// which fixes the representative modulo simultaneous negation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BraidingParams {
    pub e1: i8,
    pub e2: i8,
    pub sign: i8,
}

fn unit_sign(x: i8) -> bool {
    x == 1 || x == -1
}

impl BraidingParams {
    pub fn new(e1: i8, e2: i8, sign: i8) -> Result<Self, BraidingError> {
        if !(unit_sign(e1) && unit_sign(e2) && unit_sign(sign)) {
            return Err(BraidingError::Params(format!("({e1}, {e2}, {sign}) must all be ±1")));
        }
        Ok(Self { e1, e2, sign })
    }

    /// The eight classes.
    pub fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(8);
        for e1 in [1, -1] {
            for e2 in [1, -1] {
                for sign in [1, -1] {
                    out.push(Self { e1, e2, sign });
                }
            }
        }
        out
    }

    fn subst(&self) -> ((Rat, i32, i32), (Rat, i32, i32)) {
        ((rat(-1), 2 * self.e1 as i32, 0), (rat(-1), 0, 2 * self.e2 as i32))
    }

    /// Rewrites a scalar of Q(q1, q2) in the variables s1, s2.
    pub fn lift(&self, c: &RatFunc2) -> RatFunc2 {
        let (m1, m2) = self.subst();
        c.substitute_monomials(&m1, &m2)
    }

    pub fn lift_morphism(&self, m: &ProdMorphism) -> ProdMorphism {
        m.map_coeffs(|c| self.lift(c))
    }

    pub fn s1(&self) -> RatFunc2 {
        RatFunc2::var(1)
    }

    pub fn s2(&self) -> RatFunc2 {
        RatFunc2::var(2).scale_int(self.sign as i64)
    }

    /// q_which as an element of Q(s1, s2).
    pub fn q(&self, which: u8) -> RatFunc2 {
        self.lift(&RatFunc2::var(which))
    }

    pub fn loop_weight(&self, l1: usize, l2: usize) -> RatFunc2 {
        self.lift(&loop_weight(l1 as u32, l2 as u32))
    }

    pub fn compose(&self, f: &ProdMorphism, g: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
        f.compose_with(g, &|a, b| self.loop_weight(a, b))
    }

    pub fn trace(&self, f: &ProdMorphism) -> Result<RatFunc2, ModelError> {
        f.trace_with(&|a, b| self.loop_weight(a, b))
    }

    /// Values of the formal variables (S1, S2) over the point (q1, q2),
    /// using principal square roots.
    pub fn formal_point(&self, q1: Complex64, q2: Complex64) -> (Complex64, Complex64) {
        ((-q1.powi(self.e1 as i32)).sqrt(), (-q2.powi(self.e2 as i32)).sqrt())
    }

    /// The actual (s1, s2) over the point (q1, q2).
    pub fn s_values(&self, q1: Complex64, q2: Complex64) -> (Complex64, Complex64) {
        let (a, b) = self.formal_point(q1, q2);
        (a, b * self.sign as f64)
    }

    pub fn describe(&self) -> String {
        let pm = |e: i8| if e > 0 { "" } else { "^-1" };
        let sg = if self.sign > 0 { "+" } else { "-" };
        format!("s1^2 = -q1{}, s2^2 = -q2{}, s2 sign {sg}", pm(self.e1), pm(self.e2))
    }
}

trait ScaleInt {
    fn scale_int(&self, n: i64) -> Self;
}

impl ScaleInt for RatFunc2 {
    fn scale_int(&self, n: i64) -> Self {
        self * &RatFunc2::from_int(n)
    }
}

/// σ = s1s2 id + ((s1²/[2]_1 + s2²/[2]_2 + 1)/(s1s2)) e + ([2]_2 s1/s2) P + ([2]_1 s2/s1) Q.
pub fn braid(p: &BraidingParams) -> ProdMorphism {
    let (s1, s2) = (p.s1(), p.s2());
    let d1 = p.lift(&qint(2, 1));
    let d2 = p.lift(&qint(2, 2));
    let s1s2 = &s1 * &s2;
    let ce = &(&(&(&s1 * &s1) / &d1) + &(&(&s2 * &s2) / &d2)) + &RatFunc2::one();
    let ce = &ce / &s1s2;
    let cp = &(&d2 * &s1) / &s2;
    let cq = &(&d1 * &s2) / &s1;
    let terms = [
        make_id2().scale(&s1s2),
        p.lift_morphism(&make_e()).scale(&ce),
        p.lift_morphism(&make_p()).scale(&cp),
        p.lift_morphism(&make_q()).scale(&cq),
    ];
    terms.iter().fold(ProdMorphism::zero(2, 2), |acc, t| &acc + t)
}

/// The idempotents e/δ, P, Q, R of End(X⊗X), over Q(s1, s2).
pub fn idempotent_basis(p: &BraidingParams) -> [ProdMorphism; 4] {
    let e = make_e().scale(&delta().inv().expect("nonzero"));
    [e, make_p(), make_q(), make_r()].map(|m| p.lift_morphism(&m))
}

/// Coordinates (α_1, α_P, α_Q, α_R) of m in the idempotent basis.
pub fn idempotent_coords(p: &BraidingParams, m: &ProdMorphism) -> Result<[RatFunc2; 4], BraidingError> {
    if (m.source(), m.target()) != (2, 2) {
        return Err(ModelError::Shape("expected End(X⊗X)".into()).into());
    }
    let basis = idempotent_basis(p);
    let mut out: [RatFunc2; 4] = Default::default();
    for (k, z) in basis.iter().enumerate() {
        // Z m = α_Z Z, so tr(Z m) = α_Z tr(Z)
        let tz = p.trace(z)?;
        let tzm = p.trace(&p.compose(z, m)?)?;
        out[k] = &tzm / &tz;
    }
    let recon = basis.iter().zip(&out).fold(ProdMorphism::zero(2, 2), |acc, (z, a)| &acc + &z.scale(a));
    if recon != *m {
        return Err(ModelError::NotInSpan.into());
    }
    Ok(out)
}

/// σ⁻¹, inverting on the idempotent basis.
pub fn inverse(p: &BraidingParams, m: &ProdMorphism) -> Result<ProdMorphism, BraidingError> {
    let alpha = idempotent_coords(p, m)?;
    let basis = idempotent_basis(p);
    let mut out = ProdMorphism::zero(2, 2);
    for (z, a) in basis.iter().zip(&alpha) {
        let inv = a.inv().map_err(|_| BraidingError::NotInvertible)?;
        out = &out + &z.scale(&inv);
    }
    Ok(out)
}

/// (σ⊗1)(1⊗σ)(σ⊗1) = (1⊗σ)(σ⊗1)(1⊗σ) in End(X⊗3).
pub fn check_ybe(p: &BraidingParams, sigma: &ProdMorphism) -> Result<bool, BraidingError> {
    let id1 = ProdMorphism::identity(1);
    let a = sigma.tensor(&id1);
    let b = id1.tensor(sigma);
    let lhs = p.compose(&p.compose(&a, &b)?, &a)?;
    let rhs = p.compose(&p.compose(&b, &a)?, &b)?;
    Ok(lhs == rhs)
}

/// ρ(σ) = σ⁻¹, with σ σ⁻¹ = id checked on the way.
pub fn check_inverse_fourier(p: &BraidingParams, sigma: &ProdMorphism) -> Result<bool, BraidingError> {
    let inv = inverse(p, sigma)?;
    if p.compose(sigma, &inv)? != make_id2() {
        return Err(BraidingError::NotInvertible);
    }
    Ok(sigma.rotate() == inv)
}

fn scalar_of_id1(m: &ProdMorphism) -> Option<RatFunc2> {
    let id = TLDiagram::identity(1);
    let c = m.coeff(&id, &id);
    (m.scale(&c.inv().ok()?) == ProdMorphism::identity(1)).then_some(c)
}

/// Curl of σ closed on the left: (cap⊗1)(1⊗σ)(cup⊗1).
pub fn left_curl(p: &BraidingParams, sigma: &ProdMorphism) -> Result<RatFunc2, BraidingError> {
    let id1 = ProdMorphism::identity(1);
    let m = p.compose(&make_cap().tensor(&id1), &p.compose(&id1.tensor(sigma), &make_cup().tensor(&id1))?)?;
    scalar_of_id1(&m).ok_or(BraidingError::NotInvertible)
}

/// Curl of σ closed on the right: (1⊗cap)(σ⊗1)(1⊗cup).
pub fn right_curl(p: &BraidingParams, sigma: &ProdMorphism) -> Result<RatFunc2, BraidingError> {
    let id1 = ProdMorphism::identity(1);
    let m = p.compose(&id1.tensor(&make_cap()), &p.compose(&sigma.tensor(&id1), &id1.tensor(&make_cup()))?)?;
    scalar_of_id1(&m).ok_or(BraidingError::NotInvertible)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twists {
    pub theta_1: RatFunc2,
    pub theta_p: RatFunc2,
    pub theta_q: RatFunc2,
    pub theta_r: RatFunc2,
    pub theta_x: RatFunc2,
}

impl Twists {
    pub fn vector(&self) -> [&RatFunc2; 4] {
        [&self.theta_1, &self.theta_p, &self.theta_q, &self.theta_r]
    }
}

/// θ_X from the curl; θ_Z = θ_X² · (eigenvalue of σ² on Z).
pub fn twists(p: &BraidingParams, sigma: &ProdMorphism) -> Result<Twists, BraidingError> {
    let theta_x = left_curl(p, sigma)?;
    if right_curl(p, sigma)? != theta_x {
        return Err(BraidingError::CurlMismatch);
    }
    let sq = p.compose(sigma, sigma)?;
    let ev = idempotent_coords(p, &sq)?;
    let t2 = &theta_x * &theta_x;
    let [a, b, c, d] = ev.map(|x| &x * &t2);
    Ok(Twists { theta_1: a, theta_p: b, theta_q: c, theta_r: d, theta_x })
}

/// (1, q1⁴, q2⁴, (q1q2)⁴) over Q(s1, s2).
pub fn normalized_twists(p: &BraidingParams) -> [RatFunc2; 4] {
    let q1 = p.q(1).pow(4);
    let q2 = p.q(2).pow(4);
    let r = &q1 * &q2;
    [RatFunc2::one(), q1, q2, r]
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub e1: i8,
    pub e2: i8,
    pub sign: i8,
    pub description: String,
    pub ybe: bool,
    pub inverse_fourier: bool,
    pub twists: Vec<String>,
    /// The twists as monomials q1^a q2^b, where they are of that form.
    pub twists_q: Vec<String>,
    pub theta_x: String,
    pub normalized_twists: bool,
}

/// Full symbolic check of one class.
pub fn class_report(p: &BraidingParams) -> Result<ClassReport, BraidingError> {
    let sigma = braid(p);
    let ybe = check_ybe(p, &sigma)?;
    let inverse_fourier = check_inverse_fourier(p, &sigma)?;
    let t = twists(p, &sigma)?;
    let norm = normalized_twists(p);
    let names = ["s1", "s2"];
    Ok(ClassReport {
        e1: p.e1,
        e2: p.e2,
        sign: p.sign,
        description: p.describe(),
        ybe,
        inverse_fourier,
        twists: t.vector().iter().map(|x| x.display_with(names)).collect(),
        twists_q: t.vector().iter().map(|x| as_q_monomial(p, x)).collect(),
        theta_x: t.theta_x.display_with(names),
        normalized_twists: t.vector().iter().zip(&norm).all(|(a, b)| *a == b),
    })
}

fn as_q_monomial(p: &BraidingParams, x: &RatFunc2) -> String {
    for a in -8..=8 {
        for b in -8..=8 {
            let m = &p.q(1).pow(a) * &p.q(2).pow(b);
            if m == *x {
                let f = |n: &str, e: i32| match e {
                    0 => String::new(),
                    1 => n.to_string(),
                    _ => format!("{n}^{e}"),
                };
                let s = [f("q1", a), f("q2", b)].into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join("*");
                return if s.is_empty() { "1".into() } else { s };
            }
        }
    }
    x.display_with(["s1", "s2"])
}

/// A braiding class specialized at numeric (q1, q2).
#[derive(Clone, Debug, Serialize)]
pub struct NumericClass {
    pub params: BraidingParams,
    pub s1: [f64; 2],
    pub s2: [f64; 2],
    pub alphas: [[f64; 2]; 4],
}

fn c2(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Idempotent-basis eigenvalues of σ at a numeric point.
pub fn numeric_alphas(p: &BraidingParams, q1: Complex64, q2: Complex64, tol: f64) -> Result<[Complex64; 4], BraidingError> {
    let alpha = idempotent_coords(p, &braid(p))?;
    let (a, b) = p.formal_point(q1, q2);
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (o, x) in out.iter_mut().zip(&alpha) {
        *o = x.specialize(a, b, tol).map_err(|e| BraidingError::Degenerate(e.to_string()))?;
    }
    Ok(out)
}

/// The distinct braidings at (q1, q2). Two classes coincide when their
/// eigenvalues agree on every summand of X⊗X of nonzero dimension, since
/// summands of dimension zero vanish in the semisimple quotient.
pub fn enumerate_braidings(q1: Complex64, q2: Complex64, tol: f64) -> Result<Vec<NumericClass>, BraidingError> {
    if q1.norm() < tol || q2.norm() < tol {
        return Err(BraidingError::Degenerate("q must be nonzero".into()));
    }
    let dims = [
        Complex64::new(1.0, 0.0),
        qint(3, 1).specialize(q1, q2, tol).map_err(|e| BraidingError::Degenerate(e.to_string()))?,
        qint(3, 2).specialize(q1, q2, tol).map_err(|e| BraidingError::Degenerate(e.to_string()))?,
        (&qint(3, 1) * &qint(3, 2)).specialize(q1, q2, tol).map_err(|e| BraidingError::Degenerate(e.to_string()))?,
    ];
    let live: Vec<bool> = dims.iter().map(|d| d.norm() > tol).collect();
    let mut out: Vec<NumericClass> = Vec::new();
    for p in BraidingParams::all() {
        let al = numeric_alphas(&p, q1, q2, tol)?;
        let same = |o: &NumericClass| {
            (0..4).filter(|&k| live[k]).all(|k| {
                let b = Complex64::new(o.alphas[k][0], o.alphas[k][1]);
                (al[k] - b).norm() <= tol * (1.0 + al[k].norm())
            })
        };
        if out.iter().any(same) {
            continue;
        }
        let (s1, s2) = p.s_values(q1, q2);
        out.push(NumericClass { params: p, s1: c2(s1), s2: c2(s2), alphas: al.map(c2) });
    }
    Ok(out)
}

/// A solution of the α-system: α_P = ε_P q1² α_1, α_Q = ε_Q q2² α_1,
/// α_R = ε_R (q1q2)² α_1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaSolution {
    pub eps_p: i8,
    pub eps_q: i8,
    pub eps_r: i8,
    /// α_1² in Q(q1, q2).
    pub alpha_1_squared: RatFunc2,
    /// α_1 in Q(s1, s2) with q_i = −s_i², when α_1² has a square root there.
    pub alpha_1: Option<RatFunc2>,
}

impl AlphaSolution {
    /// (α_1, α_P, α_Q, α_R) over Q(s1, s2) with q_i = −s_i².
    pub fn alphas(&self) -> Option<[RatFunc2; 4]> {
        let a1 = self.alpha_1.clone()?;
        let p = BraidingParams { e1: 1, e2: 1, sign: 1 };
        let (q1, q2) = (p.q(1), p.q(2));
        let q1s = &q1 * &q1;
        let q2s = &q2 * &q2;
        let ap = &a1 * &q1s.scale_int(self.eps_p as i64);
        let aq = &a1 * &q2s.scale_int(self.eps_q as i64);
        let ar = &a1 * &(&q1s * &q2s).scale_int(self.eps_r as i64);
        Some([a1, ap, aq, ar])
    }
}

/// The four equations ρ(σ) = σ⁻¹ as A_k α_1² = B_k, for fixed signs.
pub fn alpha_equations(eps: [i8; 3]) -> [(RatFunc2, RatFunc2); 4] {
    let [ep, eq, er] = eps.map(|e| RatFunc2::from_int(e as i64));
    let q1 = RatFunc2::var(1);
    let q2 = RatFunc2::var(2);
    let one = RatFunc2::one();
    let d1 = qint(2, 1);
    let d2 = qint(2, 2);
    let dl = delta();
    // α_Z = c_Z α_1
    let cp = &ep * &(&q1 * &q1);
    let cq = &eq * &(&q2 * &q2);
    let cr = &er * &(&(&q1 * &q1) * &(&q2 * &q2));
    let inv = |x: &RatFunc2| x.inv().expect("nonzero");
    let d1s = &d1 * &d1;
    let d2s = &d2 * &d2;
    let a1 = &(&(&one - &cp) - &cq) + &cr;
    let b1 = &dl / &cr;
    let a2 = &(&(&(&cp / &d2s) + &(&cq / &d1s)) + &(&cr * &(&(&one - &inv(&d1s)) - &inv(&d2s)))) * &dl;
    let b2 = &one - &inv(&cr);
    let a3 = &(&cq - &cr) * &(&d2 / &d1);
    let b3 = &inv(&cp) - &inv(&cr);
    let a4 = &(&cp - &cr) * &(&d1 / &d2);
    let b4 = &inv(&cq) - &inv(&cr);
    [(a1, b1), (a2, b2), (a3, b3), (a4, b4)]
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let isqrt = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rat::new(isqrt(r.numer())?, isqrt(r.denom())?))
}

/// Square root of c·s1^a·s2^b when it exists in Q(s1, s2).
fn monomial_sqrt(x: &RatFunc2) -> Option<RatFunc2> {
    let n = x.numerator();
    let d = x.denominator();
    if !n.is_monomial() || !d.is_monomial() {
        return None;
    }
    let ((na, nb), nc) = n.leading()?;
    let ((da, db), dc) = d.leading()?;
    let (a, b) = (na - da, nb - db);
    if a % 2 != 0 || b % 2 != 0 {
        return None;
    }
    let c = rat_sqrt(&(nc / dc))?;
    Some(RatFunc2::from_poly(crate::scalars::LaurentPoly2::monomial(c, a / 2, b / 2)))
}

/// Solves the α-system over Q(q1, q2) for all eight sign choices. Each
/// consistent choice yields two solutions, one per square root of α_1².
pub fn solve_alpha_system() -> Result<Vec<AlphaSolution>, BraidingError> {
    let mut out = Vec::new();
    let to_s = BraidingParams { e1: 1, e2: 1, sign: 1 };
    for eps in sign_triples() {
        let eqs = alpha_equations(eps);
        let Some((a, b)) = eqs.iter().find(|(a, _)| !a.is_zero()) else {
            if eqs.iter().all(|(_, b)| b.is_zero()) {
                return Err(BraidingError::Degenerate(format!("α_1 unconstrained for signs {eps:?}")));
            }
            continue;
        };
        let x = b / a;
        if !eqs.iter().all(|(a, b)| &(a * &x) == b) {
            continue;
        }
        let root = monomial_sqrt(&to_s.lift(&x));
        for branch in [1i64, -1] {
            out.push(AlphaSolution {
                eps_p: eps[0],
                eps_q: eps[1],
                eps_r: eps[2],
                alpha_1_squared: x.clone(),
                alpha_1: root.as_ref().map(|r| r.scale_int(branch)),
            });
        }
    }
    Ok(out)
}

fn sign_triples() -> Vec<[i8; 3]> {
    let mut v = Vec::new();
    for a in [1, -1] {
        for b in [1, -1] {
            for c in [1, -1] {
                v.push([a, b, c]);
            }
        }
    }
    v
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericAlphaSolution {
    pub eps_p: i8,
    pub eps_q: i8,
    pub eps_r: i8,
    pub alpha_1: [f64; 2],
}

/// The α-system at numeric (q1, q2). Points where q_i² has order dividing
/// four, or where the signs leave α_1 unconstrained, are rejected.
pub fn solve_alpha_system_at(q1: Complex64, q2: Complex64, tol: f64) -> Result<Vec<NumericAlphaSolution>, BraidingError> {
    for q in [q1, q2] {
        if q.norm() < tol || (q.powi(8) - 1.0).norm() < tol {
            return Err(BraidingError::Degenerate(format!("q = {q} has q^8 = 1")));
        }
    }
    let ev = |r: &RatFunc2| r.specialize(q1, q2, tol).map_err(|e| BraidingError::Degenerate(e.to_string()));
    let mut out = Vec::new();
    for eps in sign_triples() {
        let mut eqs = Vec::with_capacity(4);
        for (a, b) in alpha_equations(eps) {
            eqs.push((ev(&a)?, ev(&b)?));
        }
        let small = |z: Complex64, scale: f64| z.norm() <= tol * (1.0 + scale);
        let Some(&(a, b)) = eqs.iter().find(|(a, _)| !small(*a, 0.0)) else {
            if eqs.iter().all(|(_, b)| small(*b, 0.0)) {
                return Err(BraidingError::Degenerate(format!("α_1 unconstrained for signs {eps:?}")));
            }
            continue;
        };
        let x = b / a;
        if !eqs.iter().all(|&(a, b)| small(a * x - b, (a * x).norm() + b.norm())) {
            continue;
        }
        let r = x.sqrt();
        for z in [r, -r] {
            out.push(NumericAlphaSolution { eps_p: eps[0], eps_q: eps[1], eps_r: eps[2], alpha_1: c2(z) });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn id_coefficient_is_s1s2() {
        let p = BraidingParams::new(1, 1, -1).unwrap();
        let s = braid(&p);
        let id = TLDiagram::identity(2);
        let e = TLDiagram::cupcap(2, 0);
        // P and Q carry no (id, id) component
        assert_eq!(s.coeff(&id, &id), &p.s1() * &p.s2());
        assert!(!s.coeff(&e, &e).is_zero());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(BraidingParams::new(2, 1, 1).is_err());
        assert_eq!(BraidingParams::all().len(), 8);
    }

    #[test]
    fn monomial_roots() {
        let x = RatFunc2::from_poly(crate::scalars::LaurentPoly2::monomial(rat(4) / rat(9), -6, 2));
        let r = monomial_sqrt(&x).unwrap();
        assert_eq!(&r * &r, x);
        assert!(monomial_sqrt(&x.scale_int(-1)).is_none());
        assert!(monomial_sqrt(&RatFunc2::var(1)).is_none());
    }
}
