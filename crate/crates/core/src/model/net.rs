//! Planar networks of 2-boxes evaluated in the matrix model.

use std::collections::HashMap;

use super::{ModelError, ProdMorphism};
use crate::scalars::{delta, loop_weight, RatFunc2};
use crate::tl::TLDiagram;

/// An endpoint in a planar net: box point `p` (0..4, ccw from bottom-left)
/// of box `b`, or boundary point `i` (ccw from bottom-left of the outer disk).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NetEnd {
    Box(usize, usize),
    Boundary(usize),
}

/// Boxes labeled by elements of End(X⊗X), wired by strands, inside a disk.
/// The caller is responsible for planarity of the wiring.
#[derive(Clone, Debug)]
pub struct PlanarNet {
    pub kinds: Vec<ProdMorphism>,
    pub boxes: Vec<usize>,
    pub edges: Vec<(NetEnd, NetEnd)>,
    pub boundary: usize,
    pub source: usize,
    pub free_loops: u32,
}

impl PlanarNet {
    pub fn new(kinds: Vec<ProdMorphism>, boxes: Vec<usize>, boundary: usize, source: usize) -> Self {
        Self { kinds, boxes, edges: Vec::new(), boundary, source, free_loops: 0 }
    }

    pub fn connect(&mut self, a: NetEnd, b: NetEnd) -> &mut Self {
        self.edges.push((a, b));
        self
    }

    fn node(&self, e: NetEnd) -> Result<usize, ModelError> {
        match e {
            NetEnd::Box(b, p) if b < self.boxes.len() && p < 4 => Ok(4 * b + p),
            NetEnd::Boundary(i) if i < self.boundary => Ok(4 * self.boxes.len() + i),
            _ => Err(ModelError::Net(format!("endpoint {e:?} out of range"))),
        }
    }

    /// Φ of the net: a morphism X^source -> X^(boundary - source).
    pub fn evaluate(&self) -> Result<ProdMorphism, ModelError> {
        if self.source > self.boundary {
            return Err(ModelError::Net("source larger than boundary".into()));
        }
        for &k in &self.boxes {
            let m = self.kinds.get(k).ok_or_else(|| ModelError::Net(format!("unknown kind {k}")))?;
            if (m.source(), m.target()) != (2, 2) {
                return Err(ModelError::Net("boxes must be endomorphisms of X⊗X".into()));
            }
        }
        let nb = self.boxes.len();
        let nodes = 4 * nb + self.boundary;
        let mut link = vec![usize::MAX; nodes];
        for &(a, b) in &self.edges {
            let (x, y) = (self.node(a)?, self.node(b)?);
            if x == y || link[x] != usize::MAX || link[y] != usize::MAX {
                return Err(ModelError::Net(format!("endpoint used twice in {a:?}-{b:?}")));
            }
            link[x] = y;
            link[y] = x;
        }
        if link.contains(&usize::MAX) {
            return Err(ModelError::Net("dangling endpoint".into()));
        }

        let kind_terms: Vec<Vec<(&TLDiagram, &TLDiagram, &RatFunc2)>> = self
            .kinds
            .iter()
            .map(|m| m.terms().map(|((a, b), c)| (a, b, c)).collect())
            .collect();
        let mut offsets = vec![0usize; self.kinds.len()];
        let mut total = 0;
        for (k, t) in kind_terms.iter().enumerate() {
            offsets[k] = total;
            total += t.len();
        }
        if self.boxes.iter().any(|&k| kind_terms[k].is_empty()) {
            return Ok(ProdMorphism::zero(self.source, self.boundary - self.source));
        }

        type Key = (Vec<u8>, usize, usize, Vec<u8>, Vec<u8>);
        let mut counts: HashMap<Key, i64> = HashMap::new();
        let mut choice = vec![0usize; nb];
        let mut inner = vec![[0usize; 2]; nodes];
        loop {
            let mut used = vec![0u8; total];
            for (b, &k) in self.boxes.iter().enumerate() {
                let (d1, d2, _) = kind_terms[k][choice[b]];
                used[offsets[k] + choice[b]] += 1;
                for p in 0..4 {
                    inner[4 * b + p] = [4 * b + d1.partner(p), 4 * b + d2.partner(p)];
                }
            }
            let mut result = [Vec::new(), Vec::new()];
            let mut loops = [0usize; 2];
            for f in 0..2 {
                let (m, l) = self.trace_factor(&link, &inner, f);
                result[f] = m;
                loops[f] = l;
            }
            let [r1, r2] = result;
            *counts.entry((used, loops[0], loops[1], r1, r2)).or_insert(0) += 1;

            let mut i = 0;
            loop {
                if i == nb {
                    break;
                }
                choice[i] += 1;
                if choice[i] < kind_terms[self.boxes[i]].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == nb {
                break;
            }
        }

        let flat: Vec<&RatFunc2> = kind_terms.iter().flat_map(|t| t.iter().map(|x| x.2)).collect();
        let mut pow_cache: HashMap<(usize, u8), RatFunc2> = HashMap::new();
        let target = self.boundary - self.source;
        let mut out = ProdMorphism::zero(self.source, target);
        let free = delta().pow(self.free_loops as i32);
        for ((used, l1, l2, r1, r2), n) in counts {
            let mut c = &RatFunc2::from_int(n) * &loop_weight(l1 as u32, l2 as u32);
            for (t, &u) in used.iter().enumerate() {
                if u > 0 {
                    let p = pow_cache.entry((t, u)).or_insert_with(|| flat[t].pow(u as i32));
                    c = &c * &*p;
                }
            }
            let d1 = TLDiagram::new(self.source, target, r1.iter().map(|&x| x as usize).collect())
                .map_err(|e| ModelError::Net(format!("non-planar wiring: {e}")))?;
            let d2 = TLDiagram::new(self.source, target, r2.iter().map(|&x| x as usize).collect())
                .map_err(|e| ModelError::Net(format!("non-planar wiring: {e}")))?;
            out.add_term((d1, d2), &c * &free);
        }
        Ok(out)
    }

    /// Boundary matching and loop count in factor `f` for one choice of terms.
    fn trace_factor(&self, link: &[usize], inner: &[[usize; 2]], f: usize) -> (Vec<u8>, usize) {
        let base = 4 * self.boxes.len();
        let nodes = link.len();
        let mut seen = vec![false; nodes];
        let mut matching = vec![0u8; self.boundary];
        for i in 0..self.boundary {
            let start = base + i;
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut cur = link[start];
            loop {
                seen[cur] = true;
                if cur >= base {
                    matching[i] = (cur - base) as u8;
                    matching[cur - base] = i as u8;
                    break;
                }
                let nxt = inner[cur][f];
                seen[nxt] = true;
                cur = link[nxt];
            }
        }
        let mut loops = 0;
        for s in 0..base {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut cur = s;
            while !seen[cur] {
                seen[cur] = true;
                let nxt = inner[cur][f];
                seen[nxt] = true;
                cur = link[nxt];
            }
        }
        (matching, loops)
    }
}
