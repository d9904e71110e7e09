//! Checks of the generators-and-relations presentation inside the matrix model.

use serde::Serialize;

use super::{
    make_cap, make_cup, make_e, make_id2, make_p, make_q, ModelError, NetEnd, PlanarNet, ProdMorphism,
};
use crate::scalars::{delta, qint, RatFunc2};

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub id: String,
    pub description: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<RelationCheck>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, id: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.id == id)
    }

    fn push(&mut self, id: &str, description: &str, lhs: Result<ProdMorphism, ModelError>, rhs: ProdMorphism) {
        let (pass, witness) = match lhs {
            Ok(l) => match l.sub(&rhs) {
                Ok(d) if d.is_zero() => (true, None),
                Ok(d) => (false, Some(format!("lhs - rhs = {d}"))),
                Err(e) => (false, Some(e.to_string())),
            },
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(RelationCheck { id: id.into(), description: description.into(), pass, witness });
    }

    fn push_scalar(&mut self, id: &str, description: &str, lhs: Result<RatFunc2, ModelError>, rhs: RatFunc2) {
        let (pass, witness) = match lhs {
            Ok(l) if l == rhs => (true, None),
            Ok(l) => (false, Some(format!("lhs = {l}, rhs = {rhs}"))),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(RelationCheck { id: id.into(), description: description.into(), pass, witness });
    }

    fn push_all(&mut self, id: &str, description: &str, parts: Vec<(String, Result<ProdMorphism, ModelError>, ProdMorphism)>) {
        let mut failures = Vec::new();
        for (name, lhs, rhs) in parts {
            let ok = match &lhs {
                Ok(l) => l.sub(&rhs).map(|d| d.is_zero()).unwrap_or(false),
                Err(_) => false,
            };
            if !ok {
                failures.push(name);
            }
        }
        let pass = failures.is_empty();
        let witness = (!pass).then(|| format!("failing cases: {}", failures.join(", ")));
        self.checks.push(RelationCheck { id: id.into(), description: description.into(), pass, witness });
    }
}

fn id1() -> ProdMorphism {
    ProdMorphism::identity(1)
}

/// Top, bottom, left and right closures of a 2-box.
pub fn top_cap(x: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    make_cap().compose(x)
}

pub fn bottom_cap(x: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    x.compose(&make_cup())
}

/// (cap ⊗ 1)(1 ⊗ x)(cup ⊗ 1)
pub fn left_closure(x: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    make_cap().tensor(&id1()).compose(&id1().tensor(x))?.compose(&make_cup().tensor(&id1()))
}

/// (1 ⊗ cap)(x ⊗ 1)(1 ⊗ cup)
pub fn right_closure(x: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    id1().tensor(&make_cap()).compose(&x.tensor(&id1()))?.compose(&id1().tensor(&make_cup()))
}

/// Which generator a box carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    P,
    Q,
}

impl Gen {
    fn morphism(self) -> ProdMorphism {
        match self {
            Gen::P => make_p(),
            Gen::Q => make_q(),
        }
    }

    fn name(self) -> char {
        match self {
            Gen::P => 'P',
            Gen::Q => 'Q',
        }
    }
}

/// A triangle of three boxes, each presenting its bottom or top pair to the
/// inner face, read as X^3 -> X^3 with boundary relabeled by `r` clicks.
pub fn triangle_net(labels: [Gen; 3], r: usize) -> PlanarNet {
    let kinds = labels.iter().map(|g| g.morphism()).collect();
    let mut net = PlanarNet::new(kinds, vec![0, 1, 2], 6, 3);
    let (a, b, c) = (0, 1, 2);
    let bx = NetEnd::Box;
    net.connect(bx(a, 3), bx(b, 0));
    net.connect(bx(b, 1), bx(c, 0));
    net.connect(bx(c, 1), bx(a, 2));
    let ring = [bx(a, 0), bx(a, 1), bx(c, 2), bx(c, 3), bx(b, 2), bx(b, 3)];
    for (k, &end) in ring.iter().enumerate() {
        net.connect(end, bd(k, r));
    }
    net
}

fn bd(k: usize, r: usize) -> NetEnd {
    NetEnd::Boundary((k + 6 - r % 6) % 6)
}

/// The strand-plus-box term of the triangle relation.
pub fn triangle_rhs_strand(label: Gen, r: usize) -> PlanarNet {
    let mut net = PlanarNet::new(vec![label.morphism()], vec![0], 6, 3);
    net.connect(bd(0, r), bd(1, r));
    for p in 0..4 {
        net.connect(NetEnd::Box(0, p), bd(2 + p, r));
    }
    net
}

/// The two-box term of the triangle relation.
pub fn triangle_rhs_pair(label: Gen, r: usize) -> PlanarNet {
    let mut net = PlanarNet::new(vec![label.morphism()], vec![0, 0], 6, 3);
    let (al, be) = (0, 1);
    for p in 1..4 {
        net.connect(NetEnd::Box(al, p), bd(p, r));
    }
    net.connect(NetEnd::Box(be, 0), bd(4, r));
    net.connect(NetEnd::Box(be, 1), bd(5, r));
    net.connect(NetEnd::Box(be, 2), bd(0, r));
    net.connect(NetEnd::Box(al, 0), NetEnd::Box(be, 3));
    net
}

/// The value the triangle relation assigns to `triangle_net(labels, r)`.
pub fn triangle_rhs(labels: [Gen; 3], r: usize) -> Result<ProdMorphism, ModelError> {
    if labels[0] != labels[1] || labels[1] != labels[2] {
        return Ok(ProdMorphism::zero(3, 3));
    }
    let s = triangle_rhs_strand(labels[0], r).evaluate()?;
    let t = triangle_rhs_pair(labels[0], r).evaluate()?;
    Ok(&t - &s.scale(&delta().inv().expect("nonzero")))
}

fn triangle_case(labels: [Gen; 3], r: usize) -> (String, Result<ProdMorphism, ModelError>, ProdMorphism) {
    let name: String = labels.iter().map(|g| g.name()).collect();
    let rhs = triangle_rhs(labels, r).unwrap_or_else(|_| ProdMorphism::zero(3, 3));
    (format!("{name}@{r}"), triangle_net(labels, r).evaluate(), rhs)
}

/// (Q⊗1)(1⊗x)(Q⊗1) in End(X^3).
pub fn q_sandwich(x: &ProdMorphism) -> Result<ProdMorphism, ModelError> {
    let q1 = make_q().tensor(&id1());
    q1.compose(&id1().tensor(x))?.compose(&q1)
}

/// Projection onto the X summand of the image of Q⊗1.
pub fn x_projection() -> Result<ProdMorphism, ModelError> {
    Ok(q_sandwich(&make_e())?.scale(&(&delta() / &qint(3, 2))))
}

/// Verifies relations (a) through (e) and the QPQ identity.
pub fn verify_presentation() -> Report {
    let mut r = Report::default();
    let d = delta();
    let dinv = d.inv().expect("nonzero");
    let (p, q, e, id) = (make_p(), make_q(), make_e(), make_id2());
    let (d1, d2) = (qint(2, 1), qint(2, 2));
    let zero2 = ProdMorphism::zero(2, 2);

    r.push_scalar("a", "circle = [2]_1[2]_2", id1().trace(), d.clone());
    r.push("b1", "P^2 = P", p.compose(&p), p.clone());
    r.push("b2", "Q^2 = Q", q.compose(&q), q.clone());
    r.push("b3", "PQ = 0", p.compose(&q), zero2.clone());
    r.push("b4", "QP = 0", q.compose(&p), zero2.clone());

    let rho_p = &(&id.scale(&-&dinv) + &e.scale(&d2.pow(-2))) + &q.scale(&(&d1 / &d2));
    let rho_q = &(&id.scale(&-&dinv) + &e.scale(&d1.pow(-2))) + &p.scale(&(&d2 / &d1));
    r.push("c1", "rho(P) = -id/d + e/[2]_2^2 + ([2]_1/[2]_2) Q", Ok(p.rotate()), rho_p);
    r.push("c2", "rho(Q) = -id/d + e/[2]_1^2 + ([2]_2/[2]_1) P", Ok(q.rotate()), rho_q);

    let zero_up = ProdMorphism::zero(2, 0);
    let zero_down = ProdMorphism::zero(0, 2);
    let side_p = id1().scale(&(&qint(3, 1) * &dinv));
    let side_q = id1().scale(&(&qint(3, 2) * &dinv));
    r.push("d1", "top cap of P = 0", top_cap(&p), zero_up.clone());
    r.push("d2", "bottom cap of P = 0", bottom_cap(&p), zero_down.clone());
    r.push("d3", "top cap of Q = 0", top_cap(&q), zero_up);
    r.push("d4", "bottom cap of Q = 0", bottom_cap(&q), zero_down);
    r.push("d5", "left closure of P = [3]_1/([2]_1[2]_2) id", left_closure(&p), side_p.clone());
    r.push("d6", "right closure of P = [3]_1/([2]_1[2]_2) id", right_closure(&p), side_p);
    r.push("d7", "left closure of Q = [3]_2/([2]_1[2]_2) id", left_closure(&q), side_q.clone());
    r.push("d8", "right closure of Q = [3]_2/([2]_1[2]_2) id", right_closure(&q), side_q);

    use Gen::{P, Q};
    r.push_all("e1", "triangle PPP = -strand term/d + two-box term", vec![triangle_case([P, P, P], 0)]);
    r.push_all("e2", "triangle QQQ = -strand term/d + two-box term", vec![triangle_case([Q, Q, Q], 0)]);
    r.push_all(
        "e3",
        "triangles with two P and one Q vanish",
        [[P, P, Q], [P, Q, P], [Q, P, P]].into_iter().map(|l| triangle_case(l, 0)).collect(),
    );
    r.push_all(
        "e4",
        "triangles with one P and two Q vanish",
        [[Q, Q, P], [Q, P, Q], [P, Q, Q]].into_iter().map(|l| triangle_case(l, 0)).collect(),
    );
    let all_labels: Vec<[Gen; 3]> = (0..8)
        .map(|m| [0, 1, 2].map(|i| if m >> i & 1 == 0 { P } else { Q }))
        .collect();
    r.push_all(
        "e5",
        "triangle relations after a 2- or 4-click rotation",
        [2, 4].iter().flat_map(|&rot| all_labels.iter().map(move |&l| triangle_case(l, rot))).collect(),
    );

    let qpq = q_sandwich(&p);
    let qeq = q_sandwich(&e);
    r.push(
        "qpq1",
        "(Q⊗1)(1⊗P)(Q⊗1) = [3]_1/([2]_1[2]_2) (Q⊗1)(1⊗e)(Q⊗1)",
        qpq.clone(),
        qeq.map(|m| m.scale(&(&qint(3, 1) * &dinv))).unwrap_or_else(|_| ProdMorphism::zero(3, 3)),
    );
    match (x_projection(), qpq) {
        (Ok(pi), Ok(qpq)) => {
            r.push("qpq2", "the X projection is idempotent", pi.compose(&pi), pi.clone());
            let q1 = make_q().tensor(&id1());
            r.push("qpq3", "the X projection lies under Q⊗1", pi.compose(&q1), pi.clone());
            r.push_scalar("qpq4", "the X projection has trace [2]_1[2]_2", pi.trace(), d.clone());
            let mu = qpq.trace().and_then(|t| {
                let tp = pi.trace()?;
                tp.inv().map(|i| &t * &i).map_err(|_| ModelError::Singular)
            });
            match mu {
                Ok(mu) => {
                    r.push("qpq5", "QPQ = (trace ratio) times the X projection", Ok(qpq), pi.scale(&mu));
                    let expect = &(&qint(3, 1) * &qint(3, 2)) * &d.pow(-2);
                    r.push_scalar("qpq6", "the trace ratio is [3]_1[3]_2/([2]_1[2]_2)^2", Ok(mu), expect);
                }
                Err(e) => r.push("qpq5", "QPQ = (trace ratio) times the X projection", Err(e), ProdMorphism::zero(3, 3)),
            }
        }
        (Err(e), _) | (_, Err(e)) => r.push("qpq2", "the X projection is idempotent", Err(e), ProdMorphism::zero(3, 3)),
    }
    r
}
