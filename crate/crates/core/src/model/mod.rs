//! The Deligne-product matrix model: End(X^k) = TL_k(q1) ⊗ TL_k(q2).

mod gram;
mod net;
mod verify;

pub use gram::{gram_rank, gram_rank_with, Pairing};
pub use net::{NetEnd, PlanarNet};
pub use verify::{
    bottom_cap, left_closure, q_sandwich, right_closure, top_cap, triangle_net, triangle_rhs, triangle_rhs_pair,
    triangle_rhs_strand, verify_presentation, x_projection, Gen, RelationCheck, Report,
};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalars::{delta, loop_weight, qint, RatFunc2};
use crate::tl::{jw, TLDiagram, TLElement, TlError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("singular linear system")]
    Singular,
    #[error("element is not in the span of the basis")]
    NotInSpan,
    #[error("invalid planar net: {0}")]
    Net(String),
    #[error("specialization failed: {0}")]
    Specialize(String),
    #[error("the two trace pairings give different ranks ({0} vs {1})")]
    PairingMismatch(usize, usize),
}

impl From<TlError> for ModelError {
    fn from(e: TlError) -> Self {
        ModelError::Shape(e.to_string())
    }
}

pub type Pair = (TLDiagram, TLDiagram);

/// A morphism X^source -> X^target of the matrix model.
#[derive(Clone, Debug)]
pub struct ProdMorphism {
    source: usize,
    target: usize,
    combo: BTreeMap<Pair, RatFunc2>,
}

impl PartialEq for ProdMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl fmt::Display for ProdMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), c)) in self.combo.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{} [{} ⊠ {}]", c, a, b)?;
        }
        Ok(())
    }
}

impl ProdMorphism {
    pub fn zero(source: usize, target: usize) -> Self {
        Self { source, target, combo: BTreeMap::new() }
    }

    pub fn from_pair(a: TLDiagram, b: TLDiagram, c: RatFunc2) -> Self {
        assert_eq!((a.bottom(), a.top()), (b.bottom(), b.top()), "factor shapes differ");
        let mut m = Self::zero(a.bottom(), a.top());
        m.add_term((a, b), c);
        m
    }

    pub fn identity(k: usize) -> Self {
        Self::from_pair(TLDiagram::identity(k), TLDiagram::identity(k), RatFunc2::one())
    }

    /// x ⊠ y for x in TL(q1), y in TL(q2).
    pub fn boxtimes(x: &TLElement, y: &TLElement) -> Result<Self, ModelError> {
        if x.which() != 1 || y.which() != 2 {
            return Err(ModelError::Shape("boxtimes wants a q1 factor and a q2 factor".into()));
        }
        if (x.source(), x.target()) != (y.source(), y.target()) {
            return Err(ModelError::Shape("factor shapes differ".into()));
        }
        let mut m = Self::zero(x.source(), x.target());
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                m.add_term((a.clone(), b.clone()), ca * cb);
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Pair, &RatFunc2)> {
        self.combo.iter()
    }

    pub fn len(&self) -> usize {
        self.combo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn coeff(&self, a: &TLDiagram, b: &TLDiagram) -> RatFunc2 {
        self.combo.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(RatFunc2::zero)
    }

    /// The scalar of a morphism 0 -> 0.
    pub fn as_scalar(&self) -> Option<RatFunc2> {
        if self.source != 0 || self.target != 0 {
            return None;
        }
        Some(self.combo.values().cloned().sum())
    }

    pub(crate) fn add_term(&mut self, k: Pair, c: RatFunc2) {
        if c.is_zero() {
            return;
        }
        match self.combo.get_mut(&k) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.combo.remove(&k);
                }
            }
            None => {
                self.combo.insert(k, c);
            }
        }
    }

    fn check_same(&self, o: &Self) -> Result<(), ModelError> {
        if (self.source, self.target) != (o.source, o.target) {
            return Err(ModelError::Shape(format!(
                "{}->{} vs {}->{}",
                self.source, self.target, o.source, o.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, ModelError> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (k, c) in &o.combo {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, ModelError> {
        self.add(&o.scale(&RatFunc2::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc2) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (k, x) in &self.combo {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Self) -> Result<Self, ModelError> {
        self.compose_with(g, &|l1, l2| loop_weight(l1 as u32, l2 as u32))
    }

    /// `self ∘ g` with closed loops weighted by `weight(l1, l2)`, for
    /// coefficients living in a field other than Q(q1, q2).
    pub fn compose_with(&self, g: &Self, weight: &dyn Fn(usize, usize) -> RatFunc2) -> Result<Self, ModelError> {
        if g.target != self.source {
            return Err(ModelError::Shape(format!(
                "compose {}->{} after {}->{}",
                self.source, self.target, g.source, g.target
            )));
        }
        let mut out = Self::zero(g.source, self.target);
        for ((fa, fb), fc) in &self.combo {
            for ((ga, gb), gc) in &g.combo {
                let (a, l1) = fa.compose(ga)?;
                let (b, l2) = fb.compose(gb)?;
                out.add_term((a, b), &(fc * gc) * &weight(l1, l2));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, g: &Self) -> Self {
        let mut out = Self::zero(self.source + g.source, self.target + g.target);
        for ((fa, fb), fc) in &self.combo {
            for ((ga, gb), gc) in &g.combo {
                out.add_term((fa.tensor(ga), fb.tensor(gb)), fc * gc);
            }
        }
        out
    }

    pub fn trace(&self) -> Result<RatFunc2, ModelError> {
        self.trace_with(&|l1, l2| loop_weight(l1 as u32, l2 as u32))
    }

    pub fn trace_with(&self, weight: &dyn Fn(usize, usize) -> RatFunc2) -> Result<RatFunc2, ModelError> {
        if self.source != self.target {
            return Err(ModelError::Shape(format!("trace of {}->{}", self.source, self.target)));
        }
        let mut acc = RatFunc2::zero();
        for ((a, b), c) in &self.combo {
            acc = &acc + &(c * &weight(a.trace_loops()?, b.trace_loops()?));
        }
        Ok(acc)
    }

    /// One-click rotation ρ, applied to both factors.
    pub fn rotate(&self) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for ((a, b), c) in &self.combo {
            out.add_term((a.rotate(), b.rotate()), c.clone());
        }
        out
    }

    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.target, self.source);
        for ((a, b), c) in &self.combo {
            out.add_term((a.flip(), b.flip()), c.clone());
        }
        out
    }

    /// Applies a function to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc2) -> RatFunc2) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (k, c) in &self.combo {
            out.add_term(k.clone(), f(c));
        }
        out
    }
}

impl std::ops::Add for &ProdMorphism {
    type Output = ProdMorphism;
    fn add(self, o: &ProdMorphism) -> ProdMorphism {
        ProdMorphism::add(self, o).expect("shape mismatch")
    }
}

impl std::ops::Sub for &ProdMorphism {
    type Output = ProdMorphism;
    fn sub(self, o: &ProdMorphism) -> ProdMorphism {
        ProdMorphism::sub(self, o).expect("shape mismatch")
    }
}

impl std::ops::Neg for &ProdMorphism {
    type Output = ProdMorphism;
    fn neg(self) -> ProdMorphism {
        self.scale(&RatFunc2::from_int(-1))
    }
}

impl std::ops::Mul for &ProdMorphism {
    type Output = ProdMorphism;
    fn mul(self, o: &ProdMorphism) -> ProdMorphism {
        self.compose(o).expect("shape mismatch")
    }
}

pub fn make_e() -> ProdMorphism {
    ProdMorphism::from_pair(TLDiagram::cupcap(2, 0), TLDiagram::cupcap(2, 0), RatFunc2::one())
}

pub fn make_id2() -> ProdMorphism {
    ProdMorphism::identity(2)
}

/// P = f2 ⊠ (e / [2]_2).
pub fn make_p() -> ProdMorphism {
    let e2 = TLElement::e(2, 2, 0).scale(&qint(2, 2).inv().unwrap());
    ProdMorphism::boxtimes(&jw(2, 1), &e2).unwrap()
}

/// Q = (e / [2]_1) ⊠ f2.
pub fn make_q() -> ProdMorphism {
    let e1 = TLElement::e(1, 2, 0).scale(&qint(2, 1).inv().unwrap());
    ProdMorphism::boxtimes(&e1, &jw(2, 2)).unwrap()
}

/// R = id − e/δ − P − Q.
pub fn make_r() -> ProdMorphism {
    let e = make_e().scale(&delta().inv().unwrap());
    &(&(&make_id2() - &e) - &make_p()) - &make_q()
}

/// The cup 1 -> X⊗X.
pub fn make_cup() -> ProdMorphism {
    ProdMorphism::from_pair(TLDiagram::cup(), TLDiagram::cup(), RatFunc2::one())
}

/// The cap X⊗X -> 1.
pub fn make_cap() -> ProdMorphism {
    ProdMorphism::from_pair(TLDiagram::cap(), TLDiagram::cap(), RatFunc2::one())
}

/// x ⋆ y = ρ(ρ(x) ρ(y)).
pub fn convolve(x: &ProdMorphism, y: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    for m in [x, y] {
        if (m.source, m.target) != (2, 2) {
            return Err(ModelError::Shape("convolution is defined on End(X⊗X)".into()));
        }
    }
    Ok(x.rotate().compose(&y.rotate())?.rotate())
}

/// The ∘-basis (id, e, P, Q) of End(X⊗X).
pub fn end2_basis() -> [ProdMorphism; 4] {
    [make_id2(), make_e(), make_p(), make_q()]
}

/// Coordinates of m in the basis (id, e, P, Q), from the trace pairing.
pub fn decompose_end2(m: &ProdMorphism) -> Result<[RatFunc2; 4], ModelError> {
    if (m.source, m.target) != (2, 2) {
        return Err(ModelError::Shape("decompose_end2 wants End(X⊗X)".into()));
    }
    let basis = end2_basis();
    let mut a: Vec<Vec<RatFunc2>> = Vec::new();
    for bi in &basis {
        let mut row = Vec::new();
        for bj in &basis {
            row.push(bi.compose(bj)?.trace()?);
        }
        row.push(bi.compose(m)?.trace()?);
        a.push(row);
    }
    let c = solve(a)?;
    let mut recon = ProdMorphism::zero(2, 2);
    for (ci, bi) in c.iter().zip(basis.iter()) {
        recon = &recon + &bi.scale(ci);
    }
    if recon != *m {
        return Err(ModelError::NotInSpan);
    }
    Ok([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
}

/// Gaussian elimination on an augmented matrix over Q(q1, q2).
pub(crate) fn solve(mut a: Vec<Vec<RatFunc2>>) -> Result<Vec<RatFunc2>, ModelError> {
    let n = a.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(ModelError::Singular)?;
        a.swap(col, piv);
        let inv = a[col][col].inv().map_err(|_| ModelError::Singular)?;
        for k in col..=n {
            a[col][k] = &a[col][k] * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in col..=n {
                    let t = &a[col][k] * &f;
                    a[r][k] = &a[r][k] - &t;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}

/// The four minimal ⋆-idempotents, δ = [2]_1[2]_2.
pub fn star_idempotents() -> [ProdMorphism; 4] {
    let d = delta();
    let d1 = qint(2, 1);
    let d2 = qint(2, 2);
    let id_d = make_id2().scale(&d.inv().unwrap());
    let e = make_e();
    let p = make_p();
    let q = make_q();
    let one = RatFunc2::one();
    let z2 = &(&(-&id_d) + &e.scale(&(d2.pow(2)).inv().unwrap())) + &q.scale(&(&d1 / &d2));
    let z3 = &(&(-&id_d) + &e.scale(&(d1.pow(2)).inv().unwrap())) + &p.scale(&(&d2 / &d1));
    let c = &(&one - &d1.pow(-2)) - &d2.pow(-2);
    let z4 = &(&(&id_d + &e.scale(&c)) - &p.scale(&(&d2 / &d1))) - &q.scale(&(&d1 / &d2));
    [id_d, z2, z3, z4]
}
