use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: fall back to a ratio of f64s
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Laurent polynomial in two commuting variables over the rationals.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly2 {
    terms: BTreeMap<(i32, i32), Rat>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn monomial(c: Rat, e1: i32, e2: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((e1, e2), c);
        }
        Self { terms }
    }

    /// The variable q1 (`which == 1`) or q2 (`which == 2`).
    pub fn var(which: u8) -> Self {
        match which {
            1 => Self::monomial(Rat::one(), 1, 0),
            2 => Self::monomial(Rat::one(), 0, 1),
            _ => panic!("variable index must be 1 or 2"),
        }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), Rat)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&(i32, i32), &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e1: i32, e2: i32) -> Rat {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Rat::zero)
    }

    /// The constant value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, e: (i32, i32), c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn sub_scaled_shifted(&mut self, g: &Self, c: &Rat, a: i32, b: i32) {
        for (&(e1, e2), gc) in &g.terms {
            self.add_term((e1 + a, e2 + b), -(gc * c));
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn shift(&self, a: i32, b: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(e1, e2), c)| ((e1 + a, e2 + b), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponents over the support.
    pub fn min_exponents(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys();
        let &(mut a, mut b) = it.next()?;
        for &(e1, e2) in it {
            a = a.min(e1);
            b = b.min(e2);
        }
        Some((a, b))
    }

    pub fn max_exponents(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys();
        let &(mut a, mut b) = it.next()?;
        for &(e1, e2) in it {
            a = a.max(e1);
            b = b.max(e2);
        }
        Some((a, b))
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<((i32, i32), &Rat)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces q_which by q_which^{-1}.
    pub fn invert_variable(&self, which: u8) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(e1, e2), c)| {
                    let e = if which == 1 { (-e1, e2) } else { (e1, -e2) };
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes each variable by a monomial `c * q1^a * q2^b`.
    pub fn substitute_monomials(&self, m1: &(Rat, i32, i32), m2: &(Rat, i32, i32)) -> Self {
        let mut out = Self::zero();
        for (&(e1, e2), c) in &self.terms {
            let coeff = c * rat_pow(&m1.0, e1) * rat_pow(&m2.0, e2);
            out.add_term((m1.1 * e1 + m2.1 * e2, m1.2 * e1 + m2.2 * e2), coeff);
        }
        out
    }

    /// Which single variable occurs (0 for a constant), or None if both do.
    pub fn variables(&self) -> (bool, bool) {
        let mut v1 = false;
        let mut v2 = false;
        for &(e1, e2) in self.terms.keys() {
            v1 |= e1 != 0;
            v2 |= e2 != 0;
        }
        (v1, v2)
    }

    /// Exact quotient `self / g` if it is a Laurent polynomial.
    pub fn div_exact(&self, g: &Self) -> Option<Self> {
        if g.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (fa, fb) = self.min_exponents()?;
        let (ga, gb) = g.min_exponents()?;
        let mut rem = self.shift(-fa, -fb);
        let gn = g.shift(-ga, -gb);
        let (gmax_a, gmax_b) = gn.max_exponents()?;
        let (rmax_a, rmax_b) = rem.max_exponents()?;
        if rmax_a < gmax_a || rmax_b < gmax_b {
            return None;
        }
        let (glt, glc) = gn.leading().map(|(e, c)| (e, c.clone()))?;
        let mut q = Self::zero();
        while let Some((lt, lc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            let (a, b) = (lt.0 - glt.0, lt.1 - glt.1);
            if a < 0 || b < 0 {
                return None;
            }
            let c = lc / &glc;
            rem.sub_scaled_shifted(&gn, &c, a, b);
            q.add_term((a, b), c);
        }
        Some(q.shift(fa - ga, fb - gb))
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(e1, e2), c)| z1.powi(e1) * z2.powi(e2) * rat_to_f64(c))
            .sum()
    }

    /// Sum of |c|·|z1|^e1·|z2|^e2; the magnitude scale used for vanishing tests.
    pub fn abs_scale(&self, z1: Complex64, z2: Complex64) -> f64 {
        self.terms
            .iter()
            .map(|(&(e1, e2), c)| z1.norm().powi(e1) * z2.norm().powi(e2) * rat_to_f64(c).abs())
            .sum()
    }

    pub fn display_with(&self, names: [&str; 2]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (&(e1, e2), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            for (e, name) in [(e1, names[0]), (e2, names[1])] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                s.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    s.push_str(&a.to_string());
                    s.push('*');
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }
}

pub(crate) fn rat_pow(c: &Rat, e: i32) -> Rat {
    if e >= 0 {
        num::pow(c.clone(), e as usize)
    } else {
        num::pow(c.recip(), (-e) as usize)
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(["q1", "q2"]))
    }
}

impl<'a> Add<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LaurentPoly2> for &'a LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for (&(a1, a2), x) in &self.terms {
            for (&(b1, b2), y) in &rhs.terms {
                out.add_term((a1 + b1, a2 + b2), x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

/// Dense univariate polynomial helpers used to keep univariate denominator
/// atoms pairwise coprime.
pub(crate) mod uni {
    use super::Rat;
    use num::Zero;

    pub fn trim(p: &mut Vec<Rat>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = &b[db];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r[r.len() - 1].clone() / lb;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn monic(mut p: Vec<Rat>) -> Vec<Rat> {
        if let Some(l) = p.last().cloned() {
            for c in p.iter_mut() {
                *c /= &l;
            }
        }
        p
    }

    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn is_constant(p: &[Rat]) -> bool {
        p.len() <= 1
    }
}
