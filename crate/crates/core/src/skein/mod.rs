//! Closed and open P/Q-labeled planar 4-valent diagrams.
//!
//! A coupon has four legs numbered counterclockwise. With offset `o`, leg `j`
//! sits at box point `(j + o + 3) mod 4` of the generator, where box points
//! run counterclockwise from the bottom-left corner. Offsets only matter
//! mod 2 because ρ² = id.

mod io;
mod random;
mod reduce;

pub use io::{parse, serialize};
pub use random::{random_antiprism, random_closed_diagram};
pub use reduce::{
    evaluate, evaluate_with, find_reducible_face, find_reducible_face_with, reduce_step, reduce_step_with,
    ReducibleFace, SkeinElement, Strategy,
};

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{make_p, make_q, ModelError, NetEnd, PlanarNet, ProdMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("malformed diagram: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("rotation system is not planar: component with V - E + F = {0}")]
    NonPlanar(i64),
    #[error("odd number of boundary points ({0})")]
    OddBoundary(usize),
    #[error("diagram has boundary; only closed diagrams can be evaluated")]
    Open,
    #[error("empty diagram has no reducible face")]
    Empty,
    #[error("no reducible face found in a nonempty closed diagram")]
    NoReducibleFace,
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    P,
    Q,
}

impl Label {
    /// Index of the Temperley–Lieb factor carrying the Jones–Wenzl projection.
    pub fn which(self) -> u8 {
        match self {
            Label::P => 1,
            Label::Q => 2,
        }
    }

    pub fn other(self) -> Label {
        match self {
            Label::P => Label::Q,
            Label::Q => Label::P,
        }
    }

    pub fn morphism(self) -> ProdMorphism {
        match self {
            Label::P => make_p(),
            Label::Q => make_q(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coupon {
    pub label: Label,
    pub offset: u8,
}

impl Coupon {
    pub fn new(label: Label, offset: u8) -> Self {
        Self { label, offset: offset % 2 }
    }

    /// Box point of leg `j`.
    pub fn box_point(&self, j: u8) -> usize {
        ((j + self.offset + 3) % 4) as usize
    }

    /// Leg sitting at box point `b`.
    pub fn leg_at(&self, b: usize) -> u8 {
        (b as u8 + 5 - self.offset) % 4
    }
}

/// A leg: (coupon index, leg index).
pub type Dart = (usize, u8);

/// What a leg is attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Leg(usize, u8),
    Boundary(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkeinDiagram {
    coupons: Vec<Coupon>,
    link: Vec<[Slot; 4]>,
    boundary: Vec<Dart>,
    free_loops: u32,
    source: usize,
}

impl fmt::Display for SkeinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serialize(self))
    }
}

impl SkeinDiagram {
    pub fn empty() -> Self {
        Self { coupons: Vec::new(), link: Vec::new(), boundary: Vec::new(), free_loops: 0, source: 0 }
    }

    /// Builds and validates a diagram. `boundary` lists dangling legs in
    /// counterclockwise order; the first `source` of them form the bottom.
    pub fn new(
        coupons: Vec<Coupon>,
        edges: &[(Dart, Dart)],
        free_loops: u32,
        boundary: Vec<Dart>,
        source: Option<usize>,
    ) -> Result<Self, SkeinError> {
        let n = coupons.len();
        if boundary.len() % 2 == 1 {
            return Err(SkeinError::OddBoundary(boundary.len()));
        }
        let source = source.unwrap_or(boundary.len() / 2);
        if source > boundary.len() {
            return Err(SkeinError::Invalid("source exceeds boundary size".into()));
        }
        let mut link: Vec<[Option<Slot>; 4]> = vec![[None; 4]; n];
        let mut attach = |d: Dart, s: Slot| -> Result<(), SkeinError> {
            let (c, j) = d;
            if c >= n || j >= 4 {
                return Err(SkeinError::Invalid(format!("leg ({c}, {j}) does not exist")));
            }
            if link[c][j as usize].is_some() {
                return Err(SkeinError::Invalid(format!("leg ({c}, {j}) used twice")));
            }
            link[c][j as usize] = Some(s);
            Ok(())
        };
        for &(a, b) in edges {
            if a == b {
                return Err(SkeinError::Invalid(format!("edge from leg {a:?} to itself")));
            }
            attach(a, Slot::Leg(b.0, b.1))?;
            attach(b, Slot::Leg(a.0, a.1))?;
        }
        for (i, &d) in boundary.iter().enumerate() {
            attach(d, Slot::Boundary(i))?;
        }
        let mut full = Vec::with_capacity(n);
        for (c, l) in link.into_iter().enumerate() {
            let mut arr = [Slot::Boundary(0); 4];
            for j in 0..4 {
                arr[j] = l[j].ok_or_else(|| SkeinError::Invalid(format!("leg ({c}, {j}) is unattached")))?;
            }
            full.push(arr);
        }
        let coupons = coupons.into_iter().map(|c| Coupon::new(c.label, c.offset)).collect();
        let d = Self { coupons, link: full, boundary, free_loops, source };
        d.check_planar()?;
        Ok(d)
    }

    pub(crate) fn from_raw(coupons: Vec<Coupon>, link: Vec<[Slot; 4]>, free_loops: u32) -> Self {
        Self { coupons, link, boundary: Vec::new(), free_loops, source: 0 }
    }

    pub fn coupons(&self) -> &[Coupon] {
        &self.coupons
    }

    pub fn coupon_count(&self) -> usize {
        self.coupons.len()
    }

    pub fn partner(&self, c: usize, j: u8) -> Slot {
        self.link[c][j as usize]
    }

    pub fn boundary(&self) -> &[Dart] {
        &self.boundary
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn is_closed(&self) -> bool {
        self.boundary.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.coupons.is_empty() && self.free_loops == 0 && self.boundary.is_empty()
    }

    pub fn with_free_loops(&self, f: u32) -> Self {
        let mut d = self.clone();
        d.free_loops = f;
        d
    }

    /// Edges between legs, each listed once with the smaller leg first.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        let mut out = Vec::new();
        for (c, l) in self.link.iter().enumerate() {
            for (j, s) in l.iter().enumerate() {
                if let Slot::Leg(c2, j2) = *s {
                    if (c, j as u8) < (c2, j2) {
                        out.push(((c, j as u8), (c2, j2)));
                    }
                }
            }
        }
        out
    }

    /// (coupon count, free loops), compared lexicographically; strictly
    /// decreases along every branch of a reduction step, since only the
    /// free-loop rule keeps the coupon count.
    pub fn measure(&self) -> (usize, u32) {
        (self.coupons.len(), self.free_loops)
    }

    /// φ = σ∘α on darts of a closed diagram: follow the edge, then turn to
    /// the next leg counterclockwise.
    fn next_dart(&self, d: Dart) -> Option<Dart> {
        match self.link[d.0][d.1 as usize] {
            Slot::Leg(c, j) => Some((c, (j + 1) % 4)),
            Slot::Boundary(_) => None,
        }
    }

    /// Faces of a closed diagram as dart cycles under φ.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![[false; 4]; self.coupons.len()];
        let mut out = Vec::new();
        for c in 0..self.coupons.len() {
            for j in 0..4u8 {
                if seen[c][j as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (c, j);
                loop {
                    if seen[d.0][d.1 as usize] {
                        break;
                    }
                    seen[d.0][d.1 as usize] = true;
                    face.push(d);
                    match self.next_dart(d) {
                        Some(n) => d = n,
                        None => break,
                    }
                }
                out.push(face);
            }
        }
        out
    }

    /// Checks V − E + F = 2 on each connected component; for open diagrams
    /// the outer disk is an extra vertex whose legs run clockwise.
    pub fn check_planar(&self) -> Result<(), SkeinError> {
        let n = self.coupons.len();
        let nb = self.boundary.len();
        let inf = n;
        let has_inf = nb > 0;
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let nx = p[y];
                p[y] = r;
                y = nx;
            }
            r
        }
        for c in 0..n {
            for j in 0..4 {
                let o = match self.link[c][j] {
                    Slot::Leg(c2, _) => c2,
                    Slot::Boundary(_) => inf,
                };
                let (a, b) = (find(&mut parent, c), find(&mut parent, o));
                parent[a] = b;
            }
        }
        // darts: (c, j) for coupons, (inf, i) for boundary points
        let alpha = |v: usize, k: usize| -> (usize, usize) {
            if v == inf {
                let (c, j) = self.boundary[k];
                (c, j as usize)
            } else {
                match self.link[v][k] {
                    Slot::Leg(c, j) => (c, j as usize),
                    Slot::Boundary(i) => (inf, i),
                }
            }
        };
        let sigma = |v: usize, k: usize| -> (usize, usize) {
            if v == inf {
                (inf, (k + nb - 1) % nb)
            } else {
                (v, (k + 1) % 4)
            }
        };
        let mut verts: BTreeMap<usize, i64> = BTreeMap::new();
        let mut halfedges: BTreeMap<usize, i64> = BTreeMap::new();
        let mut faces: BTreeMap<usize, i64> = BTreeMap::new();
        let mut seen_c = vec![[false; 4]; n];
        let mut seen_inf = vec![false; nb];
        let all: Vec<(usize, usize)> = (0..n)
            .flat_map(|c| (0..4).map(move |j| (c, j)))
            .chain((0..nb).map(|i| (inf, i)))
            .collect();
        for v in 0..n {
            *verts.entry(find(&mut parent, v)).or_default() += 1;
            *halfedges.entry(find(&mut parent, v)).or_default() += 4;
        }
        if has_inf {
            *verts.entry(find(&mut parent, inf)).or_default() += 1;
            *halfedges.entry(find(&mut parent, inf)).or_default() += nb as i64;
        }
        for &(v, k) in &all {
            let seen = |v: usize, k: usize, sc: &Vec<[bool; 4]>, si: &Vec<bool>| if v == inf { si[k] } else { sc[v][k] };
            if seen(v, k, &seen_c, &seen_inf) {
                continue;
            }
            *faces.entry(find(&mut parent, v)).or_default() += 1;
            let (mut cv, mut ck) = (v, k);
            while !seen(cv, ck, &seen_c, &seen_inf) {
                if cv == inf {
                    seen_inf[ck] = true;
                } else {
                    seen_c[cv][ck] = true;
                }
                let (av, ak) = alpha(cv, ck);
                (cv, ck) = sigma(av, ak);
            }
        }
        for (root, v) in verts {
            let e = halfedges[&root] / 2;
            let f = faces.get(&root).copied().unwrap_or(0);
            let chi = v - e + f;
            if chi != 2 {
                return Err(SkeinError::NonPlanar(chi));
            }
        }
        Ok(())
    }

    /// Canonical representative: coupons renumbered by breadth-first search
    /// from the lexicographically smallest rooted traversal of each component,
    /// legs rotated so the entry leg is leg 0 (adjusting offsets).
    pub fn canonical(&self) -> SkeinDiagram {
        let n = self.coupons.len();
        let mut comp_of = vec![usize::MAX; n];
        // boundary-attached part, traversed from the boundary in order
        let mut fixed_order: Vec<usize> = Vec::new();
        let mut rot = vec![0u8; n];
        for &(c, j) in &self.boundary {
            if comp_of[c] == usize::MAX {
                self.bfs(c, j, &mut comp_of, &mut rot, &mut fixed_order, 0);
            }
        }
        let mut comps: Vec<(Vec<u32>, usize, u8)> = Vec::new();
        let mut mark = vec![usize::MAX; n];
        for c in 0..n {
            if comp_of[c] != usize::MAX || mark[c] != usize::MAX {
                continue;
            }
            let mut members = Vec::new();
            let mut tmp_rot = vec![0u8; n];
            self.bfs(c, 0, &mut mark, &mut tmp_rot, &mut members, 1);
            let mut best: Option<(Vec<u32>, usize, u8)> = None;
            for &m in &members {
                for r in 0..4u8 {
                    let code = self.component_code(m, r, members.len());
                    if best.as_ref().is_none_or(|b| code < b.0) {
                        best = Some((code, m, r));
                    }
                }
            }
            comps.push(best.expect("nonempty component"));
        }
        comps.sort();
        let mut order = fixed_order;
        for (_, m, r) in comps {
            self.bfs(m, r, &mut comp_of, &mut rot, &mut order, 0);
        }
        let mut idx = vec![0usize; n];
        for (i, &c) in order.iter().enumerate() {
            idx[c] = i;
        }
        let mut coupons = Vec::with_capacity(n);
        let mut link = Vec::with_capacity(n);
        for &c in &order {
            let cp = self.coupons[c];
            coupons.push(Coupon::new(cp.label, cp.offset + rot[c]));
            let mut arr = [Slot::Boundary(0); 4];
            for k in 0..4u8 {
                let j = (rot[c] + k) % 4;
                arr[k as usize] = match self.link[c][j as usize] {
                    Slot::Leg(c2, j2) => Slot::Leg(idx[c2], (j2 + 4 - rot[c2]) % 4),
                    b => b,
                };
            }
            link.push(arr);
        }
        let boundary = self.boundary.iter().map(|&(c, j)| (idx[c], (j + 4 - rot[c]) % 4)).collect();
        SkeinDiagram { coupons, link, boundary, free_loops: self.free_loops, source: self.source }
    }

    /// Breadth-first numbering from root dart (c, r); `tag` marks visited.
    fn bfs(&self, c: usize, r: u8, visited: &mut [usize], rot: &mut [u8], order: &mut Vec<usize>, tag: usize) {
        let start = order.len();
        visited[c] = tag;
        rot[c] = r;
        order.push(c);
        let mut i = start;
        while i < order.len() {
            let u = order[i];
            for k in 0..4u8 {
                let j = (rot[u] + k) % 4;
                if let Slot::Leg(v, jv) = self.link[u][j as usize] {
                    if visited[v] == usize::MAX {
                        visited[v] = tag;
                        rot[v] = jv;
                        order.push(v);
                    }
                }
            }
            i += 1;
        }
    }

    fn component_code(&self, c: usize, r: u8, size: usize) -> Vec<u32> {
        let n = self.coupons.len();
        let mut idx = vec![usize::MAX; n];
        let mut rot = vec![0u8; n];
        let mut order = Vec::with_capacity(size);
        self.bfs(c, r, &mut idx, &mut rot, &mut order, 0);
        for (i, &u) in order.iter().enumerate() {
            idx[u] = i;
        }
        let mut code = Vec::with_capacity(10 * size);
        for &u in &order {
            let cp = self.coupons[u];
            code.push(cp.label as u32);
            code.push(((cp.offset + rot[u]) % 2) as u32);
            for k in 0..4u8 {
                let j = (rot[u] + k) % 4;
                if let Slot::Leg(v, jv) = self.link[u][j as usize] {
                    code.push(idx[v] as u32);
                    code.push(((jv + 4 - rot[v]) % 4) as u32);
                }
            }
        }
        code
    }

    /// Relabels coupons by `perm` (old index -> new index) and rotates the
    /// legs of coupon c by `shift[c]`, adjusting offsets so the diagram is
    /// unchanged as a morphism.
    pub fn relabeled(&self, perm: &[usize], shift: &[u8]) -> SkeinDiagram {
        let n = self.coupons.len();
        assert!(perm.len() == n && shift.len() == n);
        let newleg = |c: usize, j: u8| (j + 4 - shift[c] % 4) % 4;
        let mut coupons = vec![Coupon::new(Label::P, 0); n];
        let mut link = vec![[Slot::Boundary(0); 4]; n];
        for c in 0..n {
            let cp = self.coupons[c];
            coupons[perm[c]] = Coupon::new(cp.label, cp.offset + shift[c] % 4);
            for j in 0..4u8 {
                link[perm[c]][newleg(c, j) as usize] = match self.link[c][j as usize] {
                    Slot::Leg(c2, j2) => Slot::Leg(perm[c2], newleg(c2, j2)),
                    b => b,
                };
            }
        }
        let boundary = self.boundary.iter().map(|&(c, j)| (perm[c], newleg(c, j))).collect();
        SkeinDiagram { coupons, link, boundary, free_loops: self.free_loops, source: self.source }
    }

    /// The planar net of this diagram in the matrix model.
    pub fn to_net(&self) -> PlanarNet {
        let boxes = self.coupons.iter().map(|c| c.label as usize).collect();
        let mut net = PlanarNet::new(vec![make_p(), make_q()], boxes, self.boundary.len(), self.source);
        for ((c, j), (c2, j2)) in self.edges() {
            let a = NetEnd::Box(c, self.coupons[c].box_point(j));
            let b = NetEnd::Box(c2, self.coupons[c2].box_point(j2));
            net.connect(a, b);
        }
        for (i, &(c, j)) in self.boundary.iter().enumerate() {
            net.connect(NetEnd::Box(c, self.coupons[c].box_point(j)), NetEnd::Boundary(i));
        }
        net.free_loops = self.free_loops;
        net
    }
}

/// The functor into the matrix model: substitutes P and Q for the coupons.
pub fn phi(d: &SkeinDiagram) -> Result<ProdMorphism, SkeinError> {
    Ok(d.to_net().evaluate()?)
}

/// Scalar value of a closed diagram under `phi`.
pub fn phi_scalar(d: &SkeinDiagram) -> Result<crate::scalars::RatFunc2, SkeinError> {
    if !d.is_closed() {
        return Err(SkeinError::Open);
    }
    Ok(phi(d)?.as_scalar().expect("closed diagram gives a scalar"))
}

/// `phi` extended linearly.
pub fn phi_element(x: &SkeinElement) -> Result<ProdMorphism, SkeinError> {
    let mut acc: Option<ProdMorphism> = None;
    for (d, c) in x.terms() {
        let m = phi(d)?.scale(c);
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m)?,
        });
    }
    Ok(acc.unwrap_or_else(|| ProdMorphism::zero(0, 0)))
}
