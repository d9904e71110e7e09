//! Random closed diagrams built from stacked cups, caps and coupons.

use rand::Rng;

use super::{Coupon, Label, SkeinDiagram, Slot};

/// Wiring graph: coupon legs have one wire, arc nodes have two.
struct Wires {
    legs: Vec<[Option<usize>; 4]>,
    arcs: Vec<Vec<Node>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Node {
    Leg(usize, u8),
    Arc(usize),
}

impl Wires {
    fn wire(&mut self, a: Node, b: Node) {
        for (x, y) in [(a, b), (b, a)] {
            match x {
                Node::Leg(c, j) => self.legs[c][j as usize] = Some(self.encode(y)),
                Node::Arc(i) => self.arcs[i].push(y),
            }
        }
    }

    fn encode(&self, n: Node) -> usize {
        match n {
            Node::Leg(c, j) => 4 * c + j as usize,
            Node::Arc(i) => usize::MAX - i,
        }
    }

    fn decode(&self, x: usize) -> Node {
        if x >= usize::MAX - self.arcs.len() {
            Node::Arc(usize::MAX - x)
        } else {
            Node::Leg(x / 4, (x % 4) as u8)
        }
    }
}

/// A random closed diagram with at most `max_coupons` coupons (at least one
/// when `max_coupons > 0`), drawn layer by layer so it is planar by
/// construction. Diagrams with self-edges are mostly resampled, since a
/// self-edge is reduced away in one step.
pub fn random_closed_diagram<R: Rng + ?Sized>(rng: &mut R, max_coupons: usize) -> SkeinDiagram {
    if max_coupons >= 6 && rng.gen_bool(0.15) {
        let n = if max_coupons >= 8 && rng.gen_bool(0.5) { 4 } else { 3 };
        return random_antiprism(rng, n);
    }
    let keep_any = rng.gen_bool(0.2);
    let mut d = layered(rng, max_coupons);
    for _ in 0..200 {
        if keep_any || !has_self_edge(&d) {
            break;
        }
        d = layered(rng, max_coupons);
    }
    d
}

/// The n-antiprism (octahedron for n = 3) with random labels, offsets and
/// leg numbering; every vertex touches two triangles and no face is smaller.
pub fn random_antiprism<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SkeinDiagram {
    use std::f64::consts::TAU;
    let m = 2 * n;
    let pos: Vec<(f64, f64)> = (0..m)
        .map(|v| {
            let (r, a) = if v < n { (1.0, TAU * v as f64 / n as f64) } else { (3.0, TAU * ((v - n) as f64 + 0.5) / n as f64) };
            (r * a.cos(), r * a.sin())
        })
        .collect();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut add = |a: usize, b: usize| {
        nbrs[a].push(b);
        nbrs[b].push(a);
    };
    for i in 0..n {
        add(i, (i + 1) % n);
        add(n + i, n + (i + 1) % n);
        add(i, n + i);
        add((i + 1) % n, n + i);
    }
    let rot: Vec<u8> = (0..m).map(|_| rng.gen_range(0..4)).collect();
    let mut legs: Vec<Vec<usize>> = Vec::with_capacity(m);
    for v in 0..m {
        let mut ns = nbrs[v].clone();
        let ang = |u: usize| (pos[u].1 - pos[v].1).atan2(pos[u].0 - pos[v].0);
        ns.sort_by(|&a, &b| ang(a).total_cmp(&ang(b)));
        ns.rotate_left(rot[v] as usize);
        legs.push(ns);
    }
    let coupons: Vec<Coupon> = (0..m)
        .map(|_| Coupon::new(if rng.gen_bool(0.5) { Label::P } else { Label::Q }, rng.gen_range(0..2)))
        .collect();
    let mut link = vec![[Slot::Boundary(usize::MAX); 4]; m];
    for v in 0..m {
        for (j, &u) in legs[v].iter().enumerate() {
            let k = legs[u].iter().position(|&x| x == v).expect("symmetric adjacency");
            link[v][j] = Slot::Leg(u, k as u8);
        }
    }
    SkeinDiagram::from_raw(coupons, link, 0)
}

fn has_self_edge(d: &SkeinDiagram) -> bool {
    d.edges().iter().any(|(a, b)| a.0 == b.0)
}

fn layered<R: Rng + ?Sized>(rng: &mut R, max_coupons: usize) -> SkeinDiagram {
    let target = if max_coupons == 0 { 0 } else { rng.gen_range(1..=max_coupons) };
    let mut coupons = Vec::new();
    let mut w = Wires { legs: Vec::new(), arcs: Vec::new() };
    let mut strands: Vec<Node> = Vec::new();
    let max_width = 8;
    while coupons.len() < target {
        let n = strands.len();
        let op = if n < 2 { 0 } else { rng.gen_range(0..6) };
        match op {
            0 | 1 if n + 2 <= max_width || n < 2 => {
                // a cup: two fresh arc ends joined below
                let i = rng.gen_range(0..=n);
                let (a, b) = (w.arcs.len(), w.arcs.len() + 1);
                w.arcs.push(Vec::new());
                w.arcs.push(Vec::new());
                w.wire(Node::Arc(a), Node::Arc(b));
                strands.splice(i..i, [Node::Arc(a), Node::Arc(b)]);
            }
            2 if n > 2 => {
                let i = rng.gen_range(0..n - 1);
                let (a, b) = (strands[i], strands[i + 1]);
                w.wire(a, b);
                strands.drain(i..i + 2);
            }
            _ => {
                let i = rng.gen_range(0..n - 1);
                let label = if rng.gen_bool(0.5) { Label::P } else { Label::Q };
                let cp = Coupon::new(label, rng.gen_range(0..2));
                let c = coupons.len();
                coupons.push(cp);
                w.legs.push([None; 4]);
                let leg = |b: usize| Node::Leg(c, cp.leg_at(b));
                w.wire(strands[i], leg(0));
                w.wire(strands[i + 1], leg(1));
                strands[i] = leg(3);
                strands[i + 1] = leg(2);
            }
        }
    }
    while !strands.is_empty() {
        let i = rng.gen_range(0..strands.len() - 1);
        let (a, b) = (strands[i], strands[i + 1]);
        w.wire(a, b);
        strands.drain(i..i + 2);
    }
    resolve(coupons, &w)
}

/// Collapses arc nodes into leg-to-leg edges and free loops.
fn resolve(coupons: Vec<Coupon>, w: &Wires) -> SkeinDiagram {
    let n = coupons.len();
    let mut link = vec![[Slot::Boundary(usize::MAX); 4]; n];
    let mut seen_arc = vec![false; w.arcs.len()];
    for c in 0..n {
        for j in 0..4u8 {
            let mut prev = Node::Leg(c, j);
            let mut cur = w.decode(w.legs[c][j as usize].expect("every leg is wired"));
            while let Node::Arc(i) = cur {
                seen_arc[i] = true;
                let next = if w.arcs[i][0] == prev { w.arcs[i][1] } else { w.arcs[i][0] };
                prev = cur;
                cur = next;
            }
            if let Node::Leg(c2, j2) = cur {
                link[c][j as usize] = Slot::Leg(c2, j2);
            }
        }
    }
    let mut loops = 0;
    for s in 0..w.arcs.len() {
        if seen_arc[s] {
            continue;
        }
        loops += 1;
        let mut prev = Node::Arc(s);
        let mut cur = w.arcs[s][0];
        seen_arc[s] = true;
        while let Node::Arc(i) = cur {
            if seen_arc[i] && i == s {
                break;
            }
            seen_arc[i] = true;
            let next = if w.arcs[i][0] == prev { w.arcs[i][1] } else { w.arcs[i][0] };
            prev = cur;
            cur = next;
        }
    }
    SkeinDiagram::from_raw(coupons, link, loops)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn antiprisms_have_only_triangles_and_two_ngons() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [3, 4] {
            let d = random_antiprism(&mut rng, n);
            d.check_planar().unwrap();
            let mut sizes: Vec<usize> = d.faces().iter().map(|f| f.len()).collect();
            sizes.sort();
            let mut expect = vec![3; 2 * n];
            expect.extend([n, n]);
            expect.sort();
            assert_eq!(sizes, expect);
        }
    }

    #[test]
    fn random_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let d = random_closed_diagram(&mut rng, 8);
            assert!(d.coupon_count() >= 1 && d.coupon_count() <= 8);
            d.check_planar().unwrap();
            assert!(d.faces().iter().any(|f| f.len() <= 3));
            let back = crate::skein::parse(&crate::skein::serialize(&d)).unwrap();
            assert_eq!(back, d);
        }
    }
}
