//! Loop, monogon, bigon and triangle reduction of closed diagrams.

use std::collections::{BTreeMap, HashMap};

use super::{Coupon, Dart, SkeinDiagram, SkeinError, Slot};
use crate::scalars::{delta, qint, RatFunc2};

/// Which small face to reduce next.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// A face with the fewest sides, first in traversal order.
    #[default]
    SmallestFace,
    /// A face touching the highest-numbered coupon.
    Innermost,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducibleFace {
    FreeLoop,
    /// A self-edge joining legs `leg - 1` and `leg` of `coupon`.
    Monogon { coupon: usize, leg: u8 },
    /// Face darts in φ-orbit order.
    Bigon([Dart; 2]),
    Triangle([Dart; 3]),
}

/// A linear combination of diagrams up to canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkeinElement {
    terms: BTreeMap<SkeinDiagram, RatFunc2>,
}

impl SkeinElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: &SkeinDiagram) -> Self {
        let mut x = Self::zero();
        x.add_term(d, RatFunc2::one());
        x
    }

    pub fn add_term(&mut self, d: &SkeinDiagram, c: RatFunc2) {
        if c.is_zero() {
            return;
        }
        let key = d.canonical();
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x = &*x + &c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkeinDiagram, &RatFunc2)> {
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

    pub fn coeff(&self, d: &SkeinDiagram) -> RatFunc2 {
        self.terms.get(&d.canonical()).cloned().unwrap_or_else(RatFunc2::zero)
    }
}

fn is_t_type(d: &SkeinDiagram, (c, j): Dart) -> bool {
    (j + d.coupons[c].offset).is_multiple_of(2)
}

pub fn find_reducible_face(d: &SkeinDiagram) -> Result<ReducibleFace, SkeinError> {
    find_reducible_face_with(d, Strategy::default())
}

pub fn find_reducible_face_with(d: &SkeinDiagram, strategy: Strategy) -> Result<ReducibleFace, SkeinError> {
    if !d.is_closed() {
        return Err(SkeinError::Open);
    }
    if d.free_loops > 0 {
        return Ok(ReducibleFace::FreeLoop);
    }
    if d.coupons.is_empty() {
        return Err(SkeinError::Empty);
    }
    let faces = d.faces();
    let top = |f: &Vec<Dart>| f.iter().map(|x| x.0).max().unwrap_or(0);
    let pick = |cands: Vec<&Vec<Dart>>| -> Option<Vec<Dart>> {
        match strategy {
            Strategy::SmallestFace => cands.into_iter().min_by_key(|f| f.len()).cloned(),
            Strategy::Innermost => cands
                .into_iter()
                .rev()
                .max_by_key(|f| (top(f), std::cmp::Reverse(f.len())))
                .cloned(),
        }
    };
    if let Some(f) = pick(faces.iter().filter(|f| f.len() == 1).collect()) {
        return Ok(ReducibleFace::Monogon { coupon: f[0].0, leg: f[0].1 });
    }
    let small: Vec<&Vec<Dart>> = faces.iter().filter(|f| f.len() == 2 || f.len() == 3).collect();
    let f = pick(small).ok_or(SkeinError::NoReducibleFace)?;
    // without self-edges the coupons around a small face are distinct
    debug_assert!(f.iter().all(|a| f.iter().filter(|b| b.0 == a.0).count() == 1));
    Ok(match f.len() {
        2 => ReducibleFace::Bigon([f[0], f[1]]),
        _ => ReducibleFace::Triangle([f[0], f[1], f[2]]),
    })
}

#[derive(Clone, Copy, Debug)]
enum Inner {
    Bd(usize),
    New(usize, u8),
}

struct Replacement {
    coupons: Vec<Coupon>,
    inner: Vec<Inner>,
    edges: Vec<((usize, u8), (usize, u8))>,
}

impl Replacement {
    fn strands(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut inner = vec![Inner::Bd(0); n];
        for &(a, b) in pairs {
            inner[a] = Inner::Bd(b);
            inner[b] = Inner::Bd(a);
        }
        Self { coupons: Vec::new(), inner, edges: Vec::new() }
    }
}

/// Replaces the coupons `removed` by `rep`, where `bpts` lists the legs of the
/// removed coupons that lead out of the region, in counterclockwise order.
fn splice(d: &SkeinDiagram, removed: &[usize], bpts: &[Dart], rep: &Replacement) -> SkeinDiagram {
    let n = d.coupons.len();
    let mut map = vec![usize::MAX; n];
    let mut coupons = Vec::with_capacity(n - removed.len() + rep.coupons.len());
    for c in 0..n {
        if !removed.contains(&c) {
            map[c] = coupons.len();
            coupons.push(d.coupons[c]);
        }
    }
    let kept = coupons.len();
    coupons.extend(rep.coupons.iter().copied());
    let bmap: HashMap<Dart, usize> = bpts.iter().enumerate().map(|(k, &p)| (p, k)).collect();

    enum End {
        Leg(usize, u8),
        Bd(usize),
    }
    let outer = |k: usize| -> End {
        let (c, j) = bpts[k];
        match d.link[c][j as usize] {
            Slot::Leg(c2, j2) if map[c2] != usize::MAX => End::Leg(map[c2], j2),
            Slot::Leg(c2, j2) => End::Bd(*bmap.get(&(c2, j2)).expect("region edge leaves through a boundary point")),
            Slot::Boundary(_) => unreachable!("closed diagram"),
        }
    };
    let inner = |k: usize| -> End {
        match rep.inner[k] {
            Inner::Bd(l) => End::Bd(l),
            Inner::New(i, j) => End::Leg(kept + i, j),
        }
    };
    let mut marked = vec![false; bpts.len()];
    // leaves b_k on side `out` and returns the leg reached
    let walk = |mut k: usize, mut out: bool, marked: &mut Vec<bool>| -> (usize, u8) {
        loop {
            marked[k] = true;
            match if out { outer(k) } else { inner(k) } {
                End::Leg(c, j) => return (c, j),
                End::Bd(l) => {
                    marked[l] = true;
                    k = l;
                    out = !out;
                }
            }
        }
    };

    let mut link = vec![[Slot::Boundary(usize::MAX); 4]; coupons.len()];
    for c in 0..n {
        if map[c] == usize::MAX {
            continue;
        }
        for j in 0..4u8 {
            link[map[c]][j as usize] = match d.link[c][j as usize] {
                Slot::Leg(c2, j2) if map[c2] != usize::MAX => Slot::Leg(map[c2], j2),
                Slot::Leg(c2, j2) => {
                    let (a, b) = walk(bmap[&(c2, j2)], false, &mut marked);
                    Slot::Leg(a, b)
                }
                Slot::Boundary(_) => unreachable!("closed diagram"),
            };
        }
    }
    for (k, inn) in rep.inner.iter().enumerate() {
        if let Inner::New(i, j) = *inn {
            let (a, b) = walk(k, true, &mut marked);
            link[kept + i][j as usize] = Slot::Leg(a, b);
        }
    }
    for &((a, ja), (b, jb)) in &rep.edges {
        link[kept + a][ja as usize] = Slot::Leg(kept + b, jb);
        link[kept + b][jb as usize] = Slot::Leg(kept + a, ja);
    }
    let mut loops = 0;
    for k in 0..bpts.len() {
        if marked[k] {
            continue;
        }
        loops += 1;
        let mut cur = k;
        loop {
            marked[cur] = true;
            let l = match inner(cur) {
                End::Bd(l) => l,
                End::Leg(..) => unreachable!("leg ends were resolved"),
            };
            marked[l] = true;
            match outer(l) {
                End::Bd(m) if !marked[m] => cur = m,
                End::Bd(_) => break,
                End::Leg(..) => unreachable!("leg ends were resolved"),
            }
        }
    }
    SkeinDiagram::from_raw(coupons, link, d.free_loops + loops)
}

fn sub4(a: u8, b: u8) -> u8 {
    (a + 8 - b % 4) % 4
}

/// Splits an S-type coupon by the Fourier equation. Returns the two
/// coupon-free branches with their scalars and the scalar of the branch
/// where the coupon is replaced in place by the other generator.
fn fourier_split(d: &SkeinDiagram, c: usize) -> (Vec<(SkeinDiagram, RatFunc2)>, RatFunc2) {
    let cp = d.coupons[c];
    let l = cp.label;
    let (dl, dother) = (qint(2, l.which()), qint(2, l.other().which()));
    let f = cp.offset + 1;
    let bpts: Vec<Dart> = (0..4).map(|j| (c, j)).collect();
    let leg = |x: u8| sub4(x, f) as usize;
    let id = Replacement::strands(4, &[(leg(1), leg(0)), (leg(2), leg(3))]);
    let e = Replacement::strands(4, &[(leg(1), leg(2)), (leg(3), leg(0))]);
    let branches = vec![
        (splice(d, &[c], &bpts, &id), -delta().inv().expect("nonzero")),
        (splice(d, &[c], &bpts, &e), dother.pow(-2)),
    ];
    (branches, &dl / &dother)
}

pub fn reduce_step(d: &SkeinDiagram) -> Result<SkeinElement, SkeinError> {
    reduce_step_with(d, Strategy::default())
}

/// One rewriting step; every diagram in the result has a smaller measure.
pub fn reduce_step_with(d: &SkeinDiagram, strategy: Strategy) -> Result<SkeinElement, SkeinError> {
    let face = find_reducible_face_with(d, strategy)?;
    let mut out = SkeinElement::zero();
    let dinv = delta().inv().expect("nonzero");
    match face {
        ReducibleFace::FreeLoop => {
            out.add_term(&d.with_free_loops(d.free_loops - 1), delta());
        }
        ReducibleFace::Monogon { coupon, leg } => {
            if !is_t_type(d, (coupon, leg)) {
                let bpts = [(coupon, (leg + 1) % 4), (coupon, (leg + 2) % 4)];
                let rep = Replacement::strands(2, &[(0, 1)]);
                let scale = &qint(3, d.coupons[coupon].label.which()) * &dinv;
                out.add_term(&splice(d, &[coupon], &bpts, &rep), scale);
            }
        }
        ReducibleFace::Bigon(darts) => polygon(d, &darts, &mut out),
        ReducibleFace::Triangle(darts) => polygon(d, &darts, &mut out),
    }
    Ok(out)
}

fn polygon(d: &SkeinDiagram, darts: &[Dart], out: &mut SkeinElement) {
    let mut cur = d.clone();
    let mut coef = RatFunc2::one();
    for &dart in darts {
        if is_t_type(&cur, dart) {
            continue;
        }
        let (branches, keep) = fourier_split(&cur, dart.0);
        for (b, s) in branches {
            out.add_term(&b, &coef * &s);
        }
        coef = &coef * &keep;
        let cp = cur.coupons[dart.0];
        cur.coupons[dart.0] = Coupon::new(cp.label.other(), cp.offset + 1);
    }
    let label = cur.coupons[darts[0].0].label;
    if darts.iter().any(|x| cur.coupons[x.0].label != label) {
        return;
    }
    let removed: Vec<usize> = darts.iter().map(|x| x.0).collect();
    // region boundary, counterclockwise: dart 0, then the rest in reverse
    let mut bpts = Vec::with_capacity(2 * darts.len());
    for k in std::iter::once(0).chain((1..darts.len()).rev()) {
        let (c, j) = darts[k];
        bpts.push((c, (j + 1) % 4));
        bpts.push((c, (j + 2) % 4));
    }
    let fresh = Coupon::new(label, 0);
    // box point p of a fresh offset-0 coupon is leg p + 1
    let at = |p: usize| ((p + 1) % 4) as u8;
    if darts.len() == 2 {
        let rep = Replacement { coupons: vec![fresh], inner: (0..4).map(|p| Inner::New(0, at(p))).collect(), edges: vec![] };
        out.add_term(&splice(&cur, &removed, &bpts, &rep), coef);
        return;
    }
    let mut inner = vec![Inner::Bd(1), Inner::Bd(0)];
    inner.extend((0..4).map(|p| Inner::New(0, at(p))));
    let strand = Replacement { coupons: vec![fresh], inner, edges: vec![] };
    let mut inner = vec![Inner::New(1, at(2))];
    inner.extend((1..4).map(|p| Inner::New(0, at(p))));
    inner.push(Inner::New(1, at(0)));
    inner.push(Inner::New(1, at(1)));
    let pair = Replacement { coupons: vec![fresh, fresh], inner, edges: vec![((0, at(0)), (1, at(3)))] };
    let dinv = delta().inv().expect("nonzero");
    out.add_term(&splice(&cur, &removed, &bpts, &strand), -&(&coef * &dinv));
    out.add_term(&splice(&cur, &removed, &bpts, &pair), coef);
}

pub fn evaluate(d: &SkeinDiagram) -> Result<RatFunc2, SkeinError> {
    evaluate_with(d, Strategy::default())
}

/// Reduces a closed diagram to a scalar, merging equal diagrams as it goes.
pub fn evaluate_with(d: &SkeinDiagram, strategy: Strategy) -> Result<RatFunc2, SkeinError> {
    if !d.is_closed() {
        return Err(SkeinError::Open);
    }
    let dl = delta();
    let mut pending: BTreeMap<(usize, SkeinDiagram), RatFunc2> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<(usize, SkeinDiagram), RatFunc2>, d: &SkeinDiagram, c: RatFunc2| {
        let c = &c * &dl.pow(d.free_loops as i32);
        let key = (d.coupons.len(), d.with_free_loops(0).canonical());
        let e = pending.entry(key).or_insert_with(RatFunc2::zero);
        *e = &*e + &c;
    };
    push(&mut pending, d, RatFunc2::one());
    let mut total = RatFunc2::zero();
    while let Some(((n, dd), c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        if n == 0 {
            total = &total + &c;
            continue;
        }
        for (d2, c2) in reduce_step_with(&dd, strategy)?.terms() {
            push(&mut pending, d2, &c * c2);
        }
    }
    Ok(total)
}
