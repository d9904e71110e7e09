use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{One, Zero};

use super::laurent::{uni, LaurentPoly2, Rat};
use super::ScalarError;

/// Element of Q(q1, q2).
///
/// The denominator is kept as a product of normalized atoms (monic,
/// nonconstant polynomials with minimal exponents zero). Fractions are not
/// fully reduced; equality is decided on a common denominator.
#[derive(Clone, Debug)]
pub struct RatFunc2 {
    num: LaurentPoly2,
    den: BTreeMap<LaurentPoly2, u32>,
}

impl Default for RatFunc2 {
    fn default() -> Self {
        Self::zero()
    }
}

/// Splits a nonzero Laurent polynomial into a monomial unit and atoms.
fn factor(p: &LaurentPoly2) -> (LaurentPoly2, Vec<LaurentPoly2>) {
    let (a, b) = p.min_exponents().expect("factor of zero");
    let shifted = p.shift(-a, -b);
    let lc = shifted.leading().unwrap().1.clone();
    let monic = shifted.scale(&lc.recip());
    let unit = LaurentPoly2::monomial(lc, a, b);
    if monic.is_monomial() {
        return (unit, vec![]);
    }
    match split_separable(&monic) {
        Some((g, h)) => (unit, vec![g, h]),
        None => (unit, vec![monic]),
    }
}

/// If `p` (monic, min exponents zero, genuinely bivariate) equals g(q1)·h(q2),
/// returns the monic factors.
fn split_separable(p: &LaurentPoly2) -> Option<(LaurentPoly2, LaurentPoly2)> {
    let (v1, v2) = p.variables();
    if !(v1 && v2) {
        return None;
    }
    let ((a0, b0), c0) = p.leading().map(|(e, c)| (e, c.clone()))?;
    let mut xs: Vec<i32> = p.terms().map(|(e, _)| e.0).collect();
    let mut ys: Vec<i32> = p.terms().map(|(e, _)| e.1).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    for &a in &xs {
        for &b in &ys {
            if p.coeff(a, b) * &c0 != p.coeff(a, b0) * p.coeff(a0, b) {
                return None;
            }
        }
    }
    let g = LaurentPoly2::from_terms(xs.iter().map(|&a| ((a, 0), p.coeff(a, b0))));
    let h = LaurentPoly2::from_terms(ys.iter().map(|&b| ((0, b), p.coeff(a0, b) / &c0)));
    let gl = g.leading().unwrap().1.clone();
    let hl = h.leading().unwrap().1.clone();
    Some((g.scale(&gl.recip()), h.scale(&hl.recip())))
}

fn univariate_var(p: &LaurentPoly2) -> Option<u8> {
    match p.variables() {
        (true, false) => Some(1),
        (false, true) => Some(2),
        _ => None,
    }
}

fn to_dense(p: &LaurentPoly2, var: u8) -> Vec<Rat> {
    let deg = p
        .terms()
        .map(|(e, _)| if var == 1 { e.0 } else { e.1 })
        .max()
        .unwrap_or(0);
    let mut v = vec![Rat::zero(); deg as usize + 1];
    for (e, c) in p.terms() {
        let k = if var == 1 { e.0 } else { e.1 };
        v[k as usize] = c.clone();
    }
    v
}

fn from_dense(v: &[Rat], var: u8) -> LaurentPoly2 {
    LaurentPoly2::from_terms(v.iter().enumerate().map(|(k, c)| {
        let e = if var == 1 { (k as i32, 0) } else { (0, k as i32) };
        (e, c.clone())
    }))
}

/// Inserts an atom while keeping univariate atoms of each variable coprime.
fn insert_atom(den: &mut BTreeMap<LaurentPoly2, u32>, atom: LaurentPoly2, exp: u32) {
    if exp == 0 {
        return;
    }
    if let Some(e) = den.get_mut(&atom) {
        *e += exp;
        return;
    }
    if let Some(var) = univariate_var(&atom) {
        let fa = to_dense(&atom, var);
        let clash = den.iter().find_map(|(g, &eg)| {
            if univariate_var(g) != Some(var) {
                return None;
            }
            let fg = to_dense(g, var);
            let h = uni::gcd(&fa, &fg);
            if uni::is_constant(&h) {
                None
            } else {
                Some((g.clone(), eg, h, fg))
            }
        });
        if let Some((g, eg, h, fg)) = clash {
            den.remove(&g);
            let hp = from_dense(&h, var);
            let g_rest = from_dense(&uni::monic(div_dense(&fg, &h)), var);
            let a_rest = from_dense(&uni::monic(div_dense(&fa, &h)), var);
            insert_atom(den, hp, exp + eg);
            if !g_rest.is_monomial() {
                insert_atom(den, g_rest, eg);
            }
            if !a_rest.is_monomial() {
                insert_atom(den, a_rest, exp);
            }
            return;
        }
    }
    den.insert(atom, exp);
}

fn div_dense(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db).max(1)];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1].clone() / &b[db];
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        r.pop();
    }
    uni::trim(&mut q);
    q
}

impl RatFunc2 {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly2::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly2::one())
    }

    pub fn from_poly(p: LaurentPoly2) -> Self {
        Self {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly2::from_int(n))
    }

    pub fn from_rat(r: Rat) -> Self {
        Self::from_poly(LaurentPoly2::constant(r))
    }

    pub fn var(which: u8) -> Self {
        Self::from_poly(LaurentPoly2::var(which))
    }

    /// `num / den`, or an error when `den` is zero.
    pub fn from_parts(num: LaurentPoly2, den: &LaurentPoly2) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(&Self::from_poly(num) * &Self::from_poly(den.clone()).inv()?)
    }

    pub fn numerator(&self) -> &LaurentPoly2 {
        &self.num
    }

    /// The expanded denominator polynomial.
    pub fn denominator(&self) -> LaurentPoly2 {
        let mut d = LaurentPoly2::one();
        for (a, &e) in &self.den {
            d = &d * &a.pow(e);
        }
        d
    }

    /// Denominator atoms with multiplicities.
    pub fn denominator_atoms(&self) -> impl Iterator<Item = (&LaurentPoly2, u32)> {
        self.den.iter().map(|(a, e)| (a, *e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if it is a rational constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    fn cancel(mut self) -> Self {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let atoms: Vec<LaurentPoly2> = self.den.keys().cloned().collect();
        for a in atoms {
            let mut e = self.den[&a];
            while e > 0 {
                match self.num.div_exact(&a) {
                    Some(q) => {
                        self.num = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.den.remove(&a);
            } else {
                self.den.insert(a, e);
            }
        }
        self
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.num.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (unit, atoms) = factor(&self.num);
        let (&(a, b), c) = unit.terms().next().unwrap();
        let mut num = LaurentPoly2::monomial(c.recip(), -a, -b);
        for (atom, &e) in &self.den {
            num = &num * &atom.pow(e);
        }
        let mut den = BTreeMap::new();
        for atom in atoms {
            insert_atom(&mut den, atom, 1);
        }
        Ok(Self { num, den }.cancel())
    }

    pub fn pow(&self, n: i32) -> Self {
        if n < 0 {
            return self.inv().expect("negative power of zero").pow(-n);
        }
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Applies q_which -> q_which^{-1}.
    pub fn invert_variable(&self, which: u8) -> Self {
        let num = Self::from_poly(self.num.invert_variable(which));
        let mut den = Self::one();
        for (a, &e) in &self.den {
            den = &den * &Self::from_poly(a.invert_variable(which)).pow(e as i32);
        }
        &num / &den
    }

    /// Substitutes each variable by a monomial `c * x1^a * x2^b`.
    pub fn substitute_monomials(&self, m1: &(Rat, i32, i32), m2: &(Rat, i32, i32)) -> Self {
        let num = Self::from_poly(self.num.substitute_monomials(m1, m2));
        let mut den = Self::one();
        for (a, &e) in &self.den {
            den = &den * &Self::from_poly(a.substitute_monomials(m1, m2)).pow(e as i32);
        }
        &num / &den
    }

    /// Evaluates at (z1, z2).
    pub fn specialize(&self, z1: Complex64, z2: Complex64, tol: f64) -> Result<Complex64, ScalarError> {
        let mut d = Complex64::new(1.0, 0.0);
        let mut scale = 1.0;
        for (a, &e) in &self.den {
            d *= a.eval(z1, z2).powi(e as i32);
            scale *= a.abs_scale(z1, z2).powi(e as i32);
        }
        if !(d.norm() > tol * scale) {
            return Err(ScalarError::VanishingDenominator);
        }
        Ok(self.num.eval(z1, z2) / d)
    }

    pub fn display_with(&self, names: [&str; 2]) -> String {
        if self.den.is_empty() {
            if let Some(c) = self.num.as_constant() {
                return c.to_string();
            }
            return format!("({})", self.num.display_with(names));
        }
        format!(
            "({})/({})",
            self.num.display_with(names),
            self.denominator().display_with(names)
        )
    }
}

impl fmt::Display for RatFunc2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["q1", "q2"]))
    }
}

impl PartialEq for RatFunc2 {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for RatFunc2 {}

impl From<LaurentPoly2> for RatFunc2 {
    fn from(p: LaurentPoly2) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for RatFunc2 {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a RatFunc2> for &'a RatFunc2 {
    type Output = RatFunc2;
    fn add(self, rhs: &RatFunc2) -> RatFunc2 {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFunc2 {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            }
            .cancel();
        }
        let mut den = self.den.clone();
        for (a, &e) in &rhs.den {
            let x = den.entry(a.clone()).or_insert(0);
            *x = (*x).max(e);
        }
        let lift = |f: &RatFunc2| {
            let mut n = f.num.clone();
            for (a, &e) in &den {
                let have = f.den.get(a).copied().unwrap_or(0);
                if e > have {
                    n = &n * &a.pow(e - have);
                }
            }
            n
        };
        let num = &lift(self) + &lift(rhs);
        RatFunc2 { num, den }.cancel()
    }
}

impl<'a> Sub<&'a RatFunc2> for &'a RatFunc2 {
    type Output = RatFunc2;
    fn sub(self, rhs: &RatFunc2) -> RatFunc2 {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc2> for &'a RatFunc2 {
    type Output = RatFunc2;
    fn mul(self, rhs: &RatFunc2) -> RatFunc2 {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc2::zero();
        }
        let mut den = self.den.clone();
        for (a, &e) in &rhs.den {
            insert_atom(&mut den, a.clone(), e);
        }
        let num = &self.num * &rhs.num;
        if den.is_empty() {
            return RatFunc2 { num, den };
        }
        RatFunc2 { num, den }.cancel()
    }
}

impl<'a> Div<&'a RatFunc2> for &'a RatFunc2 {
    type Output = RatFunc2;
    fn div(self, rhs: &RatFunc2) -> RatFunc2 {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        RatFunc2 {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc2 {
    type Output = RatFunc2;
    fn neg(self) -> RatFunc2 {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<RatFunc2> for RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, rhs: RatFunc2) -> RatFunc2 { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RatFunc2> for RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, rhs: &RatFunc2) -> RatFunc2 { (&self).$m(rhs) }
        }
        impl<'a> $tr<RatFunc2> for &'a RatFunc2 {
            type Output = RatFunc2;
            fn $m(self, rhs: RatFunc2) -> RatFunc2 { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl std::iter::Sum for RatFunc2 {
    fn sum<I: Iterator<Item = RatFunc2>>(iter: I) -> Self {
        iter.fold(RatFunc2::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RatFunc2 {
    fn product<I: Iterator<Item = RatFunc2>>(iter: I) -> Self {
        iter.fold(RatFunc2::one(), |a, b| a * b)
    }
}
