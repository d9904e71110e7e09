//! The one-parameter Temperley–Lieb category: planar pairings, composition
//! with loop removal, tensor, trace, rotation and Jones–Wenzl projections.
//!
//! Boundary points are numbered counterclockwise around the rectangle from
//! the bottom-left corner: bottom points left to right, then top points right
//! to left.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{LazyLock, Mutex};

use thiserror::Error;

use crate::scalars::{qint, RatFunc2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid pairing: {0}")]
    Pairing(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bottom,
    Top,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLDiagram {
    bottom: usize,
    top: usize,
    pairing: Vec<u8>,
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Bracket rendering: the pairs in ccw index order, e.g. `2|2 (0 3)(1 2)`.
impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{} ", self.bottom, self.top)?;
        for (i, &j) in self.pairing.iter().enumerate() {
            if i < j as usize {
                write!(f, "({} {})", i, j)?;
            }
        }
        Ok(())
    }
}

impl TLDiagram {
    pub fn new(bottom: usize, top: usize, pairing: Vec<usize>) -> Result<Self, TlError> {
        let n = bottom + top;
        if pairing.len() != n || n % 2 == 1 {
            return Err(TlError::Pairing(format!("{} points for shape {bottom}|{top}", pairing.len())));
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j >= n || j == i || pairing[j] != i {
                return Err(TlError::Pairing(format!("point {i} is not properly paired")));
            }
        }
        for (a, &b) in pairing.iter().enumerate() {
            for (c, &d) in pairing.iter().enumerate() {
                if a < b && c < d && a < c && c < b && b < d {
                    return Err(TlError::Pairing(format!("pairs ({a},{b}) and ({c},{d}) cross")));
                }
            }
        }
        Ok(Self { bottom, top, pairing: pairing.into_iter().map(|x| x as u8).collect() })
    }

    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(usize, usize)]) -> Result<Self, TlError> {
        let n = bottom + top;
        let mut p = vec![usize::MAX; n];
        for &(a, b) in pairs {
            if a >= n || b >= n || p[a] != usize::MAX || p[b] != usize::MAX {
                return Err(TlError::Pairing(format!("bad pair ({a},{b})")));
            }
            p[a] = b;
            p[b] = a;
        }
        Self::new(bottom, top, p)
    }

    fn raw(bottom: usize, top: usize, pairing: Vec<u8>) -> Self {
        Self { bottom, top, pairing }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn points(&self) -> usize {
        self.bottom + self.top
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i] as usize
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.points()).filter(|&i| i < self.partner(i)).map(|i| (i, self.partner(i))).collect()
    }

    /// ccw index of the point at `pos` (counted from the left) on `side`.
    pub fn index_of(bottom: usize, top: usize, side: Side, pos: usize) -> usize {
        match side {
            Side::Bottom => pos,
            Side::Top => bottom + top - 1 - pos,
        }
    }

    pub fn side_of(bottom: usize, top: usize, i: usize) -> (Side, usize) {
        if i < bottom {
            (Side::Bottom, i)
        } else {
            (Side::Top, bottom + top - 1 - i)
        }
    }

    pub fn identity(k: usize) -> Self {
        let p = (0..2 * k).map(|i| (2 * k - 1 - i) as u8).collect();
        Self::raw(k, k, p)
    }

    /// Cup-cap on strands `i`, `i + 1` of `k` strands (0-based).
    pub fn cupcap(k: usize, i: usize) -> Self {
        assert!(i + 1 < k, "cup-cap position out of range");
        let mut p: Vec<u8> = Self::identity(k).pairing;
        let b0 = i;
        let b1 = i + 1;
        let t0 = Self::index_of(k, k, Side::Top, i);
        let t1 = Self::index_of(k, k, Side::Top, i + 1);
        p[b0] = b1 as u8;
        p[b1] = b0 as u8;
        p[t0] = t1 as u8;
        p[t1] = t0 as u8;
        Self::raw(k, k, p)
    }

    /// The cup 0 -> 2.
    pub fn cup() -> Self {
        Self::raw(0, 2, vec![1, 0])
    }

    /// The cap 2 -> 0.
    pub fn cap() -> Self {
        Self::raw(2, 0, vec![1, 0])
    }

    /// `self ∘ g` (g first), with the number of closed loops removed.
    pub fn compose(&self, g: &Self) -> Result<(Self, usize), TlError> {
        if g.top != self.bottom {
            return Err(TlError::Shape(format!("compose {}|{} after {}|{}", self.bottom, self.top, g.bottom, g.top)));
        }
        let (a, b, c) = (g.bottom, g.top, self.top);
        let n = a + c;
        let mut out = vec![0u8; n];
        let mut seen_mid = vec![false; b];
        // (in_f, index)
        let to_result = |in_f: bool, j: usize| -> Option<usize> {
            if in_f {
                if j >= b {
                    let pos = b + c - 1 - j;
                    Some(a + c - 1 - pos)
                } else {
                    None
                }
            } else if j < a {
                Some(j)
            } else {
                None
            }
        };
        for r in 0..n {
            let (mut in_f, mut idx) = if r < a { (false, r) } else { (true, b + c - 1 - (a + c - 1 - r)) };
            loop {
                let j = if in_f { self.partner(idx) } else { g.partner(idx) };
                if let Some(res) = to_result(in_f, j) {
                    out[r] = res as u8;
                    break;
                }
                if in_f {
                    seen_mid[j] = true;
                    in_f = false;
                    idx = a + b - 1 - j;
                } else {
                    let pos = a + b - 1 - j;
                    seen_mid[pos] = true;
                    in_f = true;
                    idx = pos;
                }
            }
        }
        let mut loops = 0;
        for start in 0..b {
            if seen_mid[start] {
                continue;
            }
            loops += 1;
            let mut pos = start;
            while !seen_mid[pos] {
                seen_mid[pos] = true;
                let j = self.partner(pos);
                seen_mid[j] = true;
                pos = a + b - 1 - g.partner(a + b - 1 - j);
            }
        }
        Ok((Self::raw(a, c, out), loops))
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &Self) -> Self {
        let bottom = self.bottom + other.bottom;
        let top = self.top + other.top;
        let mut p = vec![0u8; bottom + top];
        let map = |d: &Self, left: bool, i: usize| -> usize {
            let (side, pos) = Self::side_of(d.bottom, d.top, i);
            let off = if left {
                0
            } else {
                match side {
                    Side::Bottom => self.bottom,
                    Side::Top => self.top,
                }
            };
            Self::index_of(bottom, top, side, pos + off)
        };
        for i in 0..self.points() {
            p[map(self, true, i)] = map(self, true, self.partner(i)) as u8;
        }
        for i in 0..other.points() {
            p[map(other, false, i)] = map(other, false, other.partner(i)) as u8;
        }
        Self::raw(bottom, top, p)
    }

    /// Number of loops in the closure joining bottom position p to top position p.
    pub fn trace_loops(&self) -> Result<usize, TlError> {
        if self.bottom != self.top {
            return Err(TlError::Shape(format!("trace of {}|{}", self.bottom, self.top)));
        }
        let k = self.bottom;
        let n = 2 * k;
        let across = |i: usize| n - 1 - i;
        let mut seen = vec![false; n];
        let mut loops = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut i = s;
            while !seen[i] {
                let j = self.partner(i);
                seen[i] = true;
                seen[j] = true;
                i = across(j);
            }
        }
        Ok(loops)
    }

    /// One-click counterclockwise rotation: point p+1 becomes point p, so the
    /// first bottom point moves to the last (top-left) position.
    pub fn rotate(&self) -> Self {
        let n = self.points();
        let p = (0..n)
            .map(|i| ((self.partner((i + 1) % n) + n - 1) % n) as u8)
            .collect();
        Self::raw(self.bottom, self.top, p)
    }

    /// Reflection in a horizontal line: Hom(a, b) -> Hom(b, a).
    pub fn flip(&self) -> Self {
        let (b, t) = (self.bottom, self.top);
        let map = |i: usize| {
            let (side, pos) = Self::side_of(b, t, i);
            let s2 = if side == Side::Bottom { Side::Top } else { Side::Bottom };
            Self::index_of(t, b, s2, pos)
        };
        let mut p = vec![0u8; b + t];
        for i in 0..b + t {
            p[map(i)] = map(self.partner(i)) as u8;
        }
        Self::raw(t, b, p)
    }
}

/// All non-crossing perfect matchings of `n` points in order.
pub fn noncrossing_matchings(n: usize) -> Vec<Vec<usize>> {
    fn rec(pts: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pts.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = pts[0];
        for k in (1..pts.len()).step_by(2) {
            let b = pts[k];
            cur[a] = b;
            cur[b] = a;
            let inner = &pts[1..k];
            let outer = &pts[k + 1..];
            let mut inner_out = Vec::new();
            rec(inner, cur, &mut inner_out);
            for m in inner_out {
                let mut c2 = m.clone();
                let mut outs = Vec::new();
                rec(outer, &mut c2, &mut outs);
                out.extend(outs);
            }
        }
    }
    if n % 2 == 1 {
        return vec![];
    }
    let pts: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    rec(&pts, &mut vec![0; n], &mut out);
    out
}

/// Basis of Hom(X^a, X^b).
pub fn hom_basis(a: usize, b: usize) -> Vec<TLDiagram> {
    noncrossing_matchings(a + b)
        .into_iter()
        .map(|m| TLDiagram::raw(a, b, m.into_iter().map(|x| x as u8).collect()))
        .collect()
}

/// Basis of End(X^k); its length is the k-th Catalan number.
pub fn tl_basis(k: usize) -> Vec<TLDiagram> {
    hom_basis(k, k)
}

/// Formal linear combination of diagrams with a common shape.
#[derive(Clone, Debug)]
pub struct TLElement {
    which: u8,
    source: usize,
    target: usize,
    combo: BTreeMap<TLDiagram, RatFunc2>,
}

impl PartialEq for TLElement {
    fn eq(&self, other: &Self) -> bool {
        self.which == other.which
            && self.source == other.source
            && self.target == other.target
            && self.sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

fn loop_power(which: u8, loops: usize) -> RatFunc2 {
    RatFunc2::from_poly(qint(2, which).numerator().pow(loops as u32))
}

impl TLElement {
    pub fn zero(which: u8, source: usize, target: usize) -> Self {
        Self { which, source, target, combo: BTreeMap::new() }
    }

    pub fn from_diagram(which: u8, d: TLDiagram) -> Self {
        Self::from_terms(which, d.bottom, d.top, [(d, RatFunc2::one())])
    }

    pub fn from_terms<I: IntoIterator<Item = (TLDiagram, RatFunc2)>>(which: u8, source: usize, target: usize, it: I) -> Self {
        let mut e = Self::zero(which, source, target);
        for (d, c) in it {
            assert_eq!((d.bottom, d.top), (source, target), "diagram shape");
            e.add_term(d, c);
        }
        e
    }

    pub fn identity(which: u8, k: usize) -> Self {
        Self::from_diagram(which, TLDiagram::identity(k))
    }

    /// The cup-cap e_i on strands i, i+1 (0-based) of k strands.
    pub fn e(which: u8, k: usize, i: usize) -> Self {
        Self::from_diagram(which, TLDiagram::cupcap(k, i))
    }

    pub fn which(&self) -> u8 {
        self.which
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TLDiagram, &RatFunc2)> {
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

    pub fn coeff(&self, d: &TLDiagram) -> RatFunc2 {
        self.combo.get(d).cloned().unwrap_or_else(RatFunc2::zero)
    }

    fn add_term(&mut self, d: TLDiagram, c: RatFunc2) {
        if c.is_zero() {
            return;
        }
        match self.combo.get_mut(&d) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.combo.remove(&d);
                }
            }
            None => {
                self.combo.insert(d, c);
            }
        }
    }

    fn check_same(&self, o: &Self) -> Result<(), TlError> {
        if self.which != o.which || self.source != o.source || self.target != o.target {
            return Err(TlError::Shape("operands differ in parameter or shape".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self, TlError> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (d, c) in &o.combo {
            out.add_term(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, TlError> {
        self.add(&o.scale(&RatFunc2::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc2) -> Self {
        let mut out = Self::zero(self.which, self.source, self.target);
        for (d, x) in &self.combo {
            out.add_term(d.clone(), x * c);
        }
        out
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Self) -> Result<Self, TlError> {
        if self.which != g.which {
            return Err(TlError::Shape("different parameters".into()));
        }
        if g.target != self.source {
            return Err(TlError::Shape(format!("compose {}->{} after {}->{}", self.source, self.target, g.source, g.target)));
        }
        let mut out = Self::zero(self.which, g.source, self.target);
        for (fd, fc) in &self.combo {
            for (gd, gc) in &g.combo {
                let (d, loops) = fd.compose(gd)?;
                out.add_term(d, &(fc * gc) * &loop_power(self.which, loops));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, g: &Self) -> Result<Self, TlError> {
        if self.which != g.which {
            return Err(TlError::Shape("different parameters".into()));
        }
        let mut out = Self::zero(self.which, self.source + g.source, self.target + g.target);
        for (fd, fc) in &self.combo {
            for (gd, gc) in &g.combo {
                out.add_term(fd.tensor(gd), fc * gc);
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> Result<RatFunc2, TlError> {
        if self.source != self.target {
            return Err(TlError::Shape(format!("trace of {}->{}", self.source, self.target)));
        }
        let mut acc = RatFunc2::zero();
        for (d, c) in &self.combo {
            acc = &acc + &(c * &loop_power(self.which, d.trace_loops()?));
        }
        Ok(acc)
    }

    pub fn rotate(&self) -> Self {
        let mut out = Self::zero(self.which, self.source, self.target);
        for (d, c) in &self.combo {
            out.add_term(d.rotate(), c.clone());
        }
        out
    }

    pub fn flip(&self) -> Self {
        let mut out = Self::zero(self.which, self.target, self.source);
        for (d, c) in &self.combo {
            out.add_term(d.flip(), c.clone());
        }
        out
    }
}

static JW_CACHE: LazyLock<Mutex<HashMap<(usize, u8), TLElement>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

/// Jones–Wenzl projection on n strands, by Wenzl's recursion.
pub fn jw(n: usize, which: u8) -> TLElement {
    assert!(n >= 1, "jw needs at least one strand");
    if let Some(v) = JW_CACHE.lock().unwrap().get(&(n, which)) {
        return v.clone();
    }
    let value = if n == 1 {
        TLElement::identity(which, 1)
    } else {
        let prev = jw(n - 1, which).tensor(&TLElement::identity(which, 1)).unwrap();
        let e = TLElement::e(which, n, n - 2);
        let ratio = &qint(n as u32 - 1, which) / &qint(n as u32, which);
        let corr = prev.compose(&e).unwrap().compose(&prev).unwrap();
        prev.sub(&corr.scale(&ratio)).unwrap()
    };
    JW_CACHE.lock().unwrap().insert((n, which), value.clone());
    value
}
