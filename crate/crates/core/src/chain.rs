//! The minimal chain of quadrilaterals between `1/0` and a target fraction.
//!
//! The Farey triangles pair up across their unique odd/odd edge into
//! quadrilaterals, the images of `Q = {1/0, 0/1, 1/2, 1/1}` under the level-2
//! congruence subgroup. The chain for `p/q` is the sequence of such quads that
//! contain the Farey triangles crossed by the geodesic from `1/0` to `p/q`.
//! Those triangles are exactly the Stern–Brocot triangles `(l, r, l ⊕ r)`
//! met when descending from the root to `p/q`, which we recover by walking
//! back through parents.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{is_ccw, Fraction};
use crate::path::EdgePath;

/// The two orbits of Farey edges under the quad group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeKind {
    /// At least one endpoint has even denominator (a side of some quad).
    A,
    /// Both endpoints have odd denominator: the diagonal of a quad.
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Fraction,
    pub v: Fraction,
}

impl Edge {
    pub fn new(u: Fraction, v: Fraction) -> Result<Edge> {
        if !u.is_farey_neighbor(&v) {
            return Err(Error::not_neighbors(u, v));
        }
        Ok(Edge { u, v })
    }

    pub fn kind(&self) -> EdgeKind {
        edge_kind_unchecked(&self.u, &self.v)
    }
}

pub fn edge_kind(u: &Fraction, v: &Fraction) -> Result<EdgeKind> {
    if !u.is_farey_neighbor(v) {
        return Err(Error::not_neighbors(u.clone(), v.clone()));
    }
    Ok(edge_kind_unchecked(u, v))
}

fn edge_kind_unchecked(u: &Fraction, v: &Fraction) -> EdgeKind {
    if u.is_knot() && v.is_knot() {
        EdgeKind::C
    } else {
        EdgeKind::A
    }
}

/// Which side of a directed path a triangle lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A quadrilateral `g·Q` with corners in counter-clockwise order
/// `a/c, b/d, (a+2b)/(c+2d), (a+b)/(c+d)` where `c` is even and `ad − bc = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    corners: [Fraction; 4],
}

impl std::fmt::Debug for Quad {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.corners.iter()).finish()
    }
}

impl Quad {
    pub fn fundamental() -> Quad {
        Quad {
            corners: [
                Fraction::infinity(),
                Fraction::zero(),
                Fraction::from_reduced(BigInt::one(), BigInt::from(2)),
                Fraction::one(),
            ],
        }
    }

    /// The quad `g·Q` for `g = [[a, b], [c, d]]`.
    pub fn from_matrix(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> Result<Quad> {
        if !c.is_even() || (a * d - b * c) != BigInt::one() {
            return Err(Error::Inconsistent(format!("[[{a}, {b}], [{c}, {d}]] is not in the quad group")));
        }
        let two = BigInt::from(2);
        Ok(Quad {
            corners: [
                Fraction::from_vector(a.clone(), c.clone()),
                Fraction::from_vector(b.clone(), d.clone()),
                Fraction::from_vector(a + &two * b, c + &two * d),
                Fraction::from_vector(a + b, c + d),
            ],
        })
    }

    /// The quad containing the Farey triangle with the given vertices.
    pub fn containing(triangle: &[Fraction; 3]) -> Result<Quad> {
        for i in 0..3 {
            let (x, y) = (&triangle[i], &triangle[(i + 1) % 3]);
            if !x.is_farey_neighbor(y) {
                return Err(Error::not_neighbors(x.clone(), y.clone()));
            }
        }
        let evens: Vec<&Fraction> = triangle.iter().filter(|f| f.is_link()).collect();
        let [even] = evens[..] else {
            return Err(Error::Inconsistent(format!(
                "Farey triangle {triangle:?} should have exactly one even denominator"
            )));
        };
        let odds: Vec<&Fraction> = triangle.iter().filter(|f| f.is_knot()).collect();
        let (o1, o2) = (odds[0], odds[1]);
        // The two common neighbors of a Farey edge are the sum and the difference.
        let sum = Fraction::from_vector(o1.num() + o2.num(), o1.den() + o2.den());
        let diff = Fraction::from_vector(o1.num() - o2.num(), o1.den() - o2.den());
        let other = if &sum == even { diff } else { sum };

        let mut corners = vec![even.clone(), o1.clone(), o2.clone(), other];
        corners.sort();
        // Start at the even corner with the smaller denominator.
        let start = (0..4)
            .filter(|&i| corners[i].is_link())
            .min_by(|&i, &j| corners[i].den().cmp(corners[j].den()))
            .expect("two even corners");
        corners.rotate_left(start);
        let quad = Quad { corners: corners.try_into().expect("four corners") };
        quad.matrix()?;
        Ok(quad)
    }

    pub fn corners(&self) -> &[Fraction; 4] {
        &self.corners
    }

    /// The C-type diagonal joining the two odd corners.
    pub fn diagonal(&self) -> (&Fraction, &Fraction) {
        (&self.corners[1], &self.corners[3])
    }

    /// The matrix `[[a, b], [c, d]]` with `c` even and `ad − bc = 1` mapping `Q` onto this quad.
    pub fn matrix(&self) -> Result<[BigInt; 4]> {
        let (e, o) = (&self.corners[0], &self.corners[1]);
        let (mut a, mut c) = (e.num().clone(), e.den().clone());
        let (b, d) = (o.num().clone(), o.den().clone());
        if (&a * &d - &b * &c).is_negative() {
            a = -a;
            c = -c;
        }
        let rebuilt = Quad::from_matrix(&a, &b, &c, &d)?;
        if rebuilt.corners != self.corners {
            return Err(Error::Inconsistent(format!("corners {:?} are not the image of Q in order", self.corners)));
        }
        Ok([a, b, c, d])
    }

    /// The two Farey triangles, `{a/c, b/d, (a+b)/(c+d)}` and `{b/d, (a+2b)/(c+2d), (a+b)/(c+d)}`.
    pub fn triangles(&self) -> [[Fraction; 3]; 2] {
        let c = &self.corners;
        [[c[0].clone(), c[1].clone(), c[3].clone()], [c[1].clone(), c[2].clone(), c[3].clone()]]
    }

    pub fn has_corner(&self, f: &Fraction) -> bool {
        self.corners.contains(f)
    }
}

impl Serialize for Quad {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.corners.serialize(serializer)
    }
}

/// The Farey triangles crossed by the geodesic from `1/0` to `target`, in order.
///
/// Each triangle is `(left parent, right parent, child)`. The count equals the
/// sum of the partial quotients of `target`'s regular continued fraction.
pub fn strip_triangles(target: &Fraction) -> Result<Vec<[Fraction; 3]>> {
    target.check_unit_interior()?;
    // Stern–Brocot descent from the triangle (0/1, 1/0, 1/1).
    let mut left = Fraction::zero();
    let mut right = Fraction::infinity();
    let mut tris = Vec::new();
    loop {
        let child = left.mediant(&right)?;
        let done = child == *target;
        let go_left = *target < child;
        tris.push([left.clone(), right.clone(), child.clone()]);
        if done {
            return Ok(tris);
        }
        if go_left {
            right = child;
        } else {
            left = child;
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadChain {
    target: Fraction,
    quads: Vec<Quad>,
    attach_edges: Vec<(Fraction, Fraction)>,
    strip: Vec<[Fraction; 3]>,
    vertices: Vec<Fraction>,
}

impl QuadChain {
    /// Builds the chain. `0/1` and `1/1` give the empty chain.
    pub fn new(target: &Fraction) -> Result<QuadChain> {
        if *target == Fraction::zero() || *target == Fraction::one() {
            return Ok(QuadChain {
                target: target.clone(),
                quads: Vec::new(),
                attach_edges: Vec::new(),
                strip: Vec::new(),
                vertices: vec![target.clone(), Fraction::infinity()],
            });
        }
        let strip = strip_triangles(target)?;
        let mut quads: Vec<Quad> = Vec::new();
        for t in &strip {
            let quad = Quad::containing(t)?;
            if quads.last() != Some(&quad) {
                quads.push(quad);
            }
        }
        let mut attach_edges = Vec::with_capacity(quads.len().saturating_sub(1));
        for pair in quads.windows(2) {
            let shared: Vec<Fraction> = pair[0].corners().iter().filter(|c| pair[1].has_corner(c)).cloned().collect();
            match &shared[..] {
                [x, y] if x.is_farey_neighbor(y) => attach_edges.push((x.clone(), y.clone())),
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "quads {:?} and {:?} do not share an edge",
                        pair[0], pair[1]
                    )))
                }
            }
        }
        let set: BTreeSet<Fraction> = quads.iter().flat_map(|q| q.corners().iter().cloned()).collect();
        if !set.contains(target) {
            return Err(Error::Inconsistent(format!("{target} is not a corner of its chain")));
        }
        Ok(QuadChain { target: target.clone(), quads, attach_edges, strip, vertices: set.into_iter().collect() })
    }

    pub fn target(&self) -> &Fraction {
        &self.target
    }

    pub fn quads(&self) -> &[Quad] {
        &self.quads
    }

    pub fn attach_edges(&self) -> &[(Fraction, Fraction)] {
        &self.attach_edges
    }

    /// The triangles crossed by the geodesic from `1/0` to the target.
    pub fn strip(&self) -> &[[Fraction; 3]] {
        &self.strip
    }

    /// All chain vertices in counter-clockwise (increasing, `1/0` last) order.
    pub fn vertices(&self) -> &[Fraction] {
        &self.vertices
    }

    pub fn contains_vertex(&self, f: &Fraction) -> bool {
        self.vertices.binary_search(f).is_ok()
    }

    pub fn triangles(&self) -> Vec<[Fraction; 3]> {
        self.quads.iter().flat_map(|q| q.triangles()).collect()
    }

    /// Perimeter from `1/0` to the target, counter-clockwise.
    pub fn lower_perimeter(&self) -> Result<EdgePath> {
        let mut v = vec![Fraction::infinity()];
        v.extend(self.vertices.iter().take_while(|f| *f <= &self.target).cloned());
        EdgePath::from_vertices(v)
    }

    /// Perimeter from `1/0` to the target, clockwise.
    pub fn upper_perimeter(&self) -> Result<EdgePath> {
        let mut v = vec![Fraction::infinity()];
        v.extend(self.vertices.iter().rev().filter(|f| !f.is_infinity() && *f > &self.target).cloned());
        v.push(self.target.clone());
        EdgePath::from_vertices(v)
    }

    pub fn lower_minimal_path(&self) -> Result<EdgePath> {
        shortcut_even_corners(&self.lower_perimeter()?)
    }

    pub fn upper_minimal_path(&self) -> Result<EdgePath> {
        shortcut_even_corners(&self.upper_perimeter()?)
    }

    /// Every `(triangle, side)` pair for which a triangle move applies to `path`.
    pub fn applicable_moves(&self, path: &EdgePath) -> Vec<([Fraction; 3], Side)> {
        let pos: HashMap<&Fraction, usize> = path.vertices().iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut out = Vec::new();
        for t in self.triangles() {
            if let Ok(side) = classify_move(path, &pos, &t) {
                out.push((t, side.side));
            }
        }
        out
    }

    /// Replaces one path edge of `triangle` by its other two edges, or two
    /// consecutive path edges by the third. `side` must be the side of the
    /// original path the triangle lies on.
    pub fn triangle_move(&self, path: &EdgePath, triangle: &[Fraction; 3], side: Side) -> Result<EdgePath> {
        if !self.triangles().iter().any(|t| same_triangle(t, triangle)) {
            return Err(Error::InvalidMove(format!("{triangle:?} is not a triangle of the chain")));
        }
        let pos: HashMap<&Fraction, usize> = path.vertices().iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mv = classify_move(path, &pos, triangle)?;
        if mv.side != side {
            return Err(Error::InvalidMove(format!("{triangle:?} lies on the {:?} of the path", mv.side)));
        }
        let mut v = path.vertices().to_vec();
        match mv.action {
            Action::Insert { at, vertex } => v.insert(at, vertex),
            Action::Remove { at } => {
                v.remove(at);
            }
        }
        EdgePath::from_vertices(v)
    }
}

fn same_triangle(a: &[Fraction; 3], b: &[Fraction; 3]) -> bool {
    a.iter().all(|x| b.contains(x))
}

enum Action {
    Insert { at: usize, vertex: Fraction },
    Remove { at: usize },
}

struct Move {
    side: Side,
    action: Action,
}

fn classify_move(path: &EdgePath, pos: &HashMap<&Fraction, usize>, t: &[Fraction; 3]) -> Result<Move> {
    let idx: Vec<Option<usize>> = t.iter().map(|f| pos.get(f).copied()).collect();
    let on_path: Vec<usize> = idx.iter().flatten().copied().collect();
    let verts = path.vertices();
    match on_path.len() {
        3 => {
            let mut p = on_path.clone();
            p.sort_unstable();
            if p[1] == p[0] + 1 && p[2] == p[1] + 1 {
                let (u, w, v) = (&verts[p[0]], &verts[p[1]], &verts[p[2]]);
                let side = if is_ccw(u, w, v) { Side::Left } else { Side::Right };
                Ok(Move { side, action: Action::Remove { at: p[1] } })
            } else {
                Err(Error::InvalidMove("triangle vertices are on the path but not consecutive".into()))
            }
        }
        2 => {
            let (i, j) = (on_path[0].min(on_path[1]), on_path[0].max(on_path[1]));
            if j != i + 1 {
                return Err(Error::InvalidMove("triangle has no edge on the path".into()));
            }
            let w =
                t.iter().zip(&idx).find(|(_, k)| k.is_none()).map(|(f, _)| f.clone()).expect("one vertex off the path");
            let side = if is_ccw(&verts[i], &verts[j], &w) { Side::Left } else { Side::Right };
            Ok(Move { side, action: Action::Insert { at: j, vertex: w } })
        }
        _ => Err(Error::InvalidMove("triangle has no edge on the path".into())),
    }
}

/// Replaces each `u, e, w` with `e` an even-denominator corner and `u, w`
/// adjacent by the diagonal `u, w`.
fn shortcut_even_corners(path: &EdgePath) -> Result<EdgePath> {
    let v = path.vertices();
    let mut out: Vec<Fraction> = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        out.push(v[i].clone());
        if i + 2 < v.len() && i > 0 && v[i + 1].is_link() && v[i].is_farey_neighbor(&v[i + 2]) {
            i += 2;
        } else {
            i += 1;
        }
    }
    EdgePath::from_vertices(out)
}

pub fn lower_minimal_path(target: &Fraction) -> Result<EdgePath> {
    QuadChain::new(target)?.lower_minimal_path()
}

pub fn upper_minimal_path(target: &Fraction) -> Result<EdgePath> {
    QuadChain::new(target)?.upper_minimal_path()
}

impl Serialize for QuadChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("QuadChain", 2)?;
        s.serialize_field("target", &self.target)?;
        s.serialize_field("quads", &self.quads)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::frac;

    fn q(cs: [(i64, i64); 4]) -> Vec<Fraction> {
        cs.iter().map(|&(n, d)| frac(n, d)).collect()
    }

    #[test]
    fn fundamental_quad() {
        let f = Quad::fundamental();
        let [a, b, c, d] = f.matrix().unwrap();
        assert_eq!([a, b, c, d], [1, 0, 0, 1].map(BigInt::from));
        assert_eq!(f.diagonal(), (&frac(0, 1), &frac(1, 1)));
    }

    #[test]
    fn chain_of_one_half_is_q() {
        let c = QuadChain::new(&frac(1, 2)).unwrap();
        assert_eq!(c.quads(), &[Quad::fundamental()]);
        assert!(c.attach_edges().is_empty());
    }

    #[test]
    fn chain_of_two_fifths() {
        let c = QuadChain::new(&frac(2, 5)).unwrap();
        let corners: Vec<Vec<Fraction>> = c.quads().iter().map(|q| q.corners().to_vec()).collect();
        assert_eq!(
            corners,
            vec![
                q([(1, 0), (0, 1), (1, 2), (1, 1)]),
                q([(1, 2), (0, 1), (1, 4), (1, 3)]),
                q([(1, 2), (1, 3), (3, 8), (2, 5)]),
            ]
        );
        assert_eq!(c.attach_edges(), &[(frac(0, 1), frac(1, 2)), (frac(1, 2), frac(1, 3))]);
    }

    #[test]
    fn chain_of_13_34() {
        let c = QuadChain::new(&frac(13, 34)).unwrap();
        assert_eq!(c.quads().len(), 5);
        assert_eq!(c.strip().len(), 8);
        let last = c.quads().last().unwrap();
        assert!(last.has_corner(&frac(13, 34)));
        assert_eq!(c.vertices().len(), 2 * 5 + 2);
    }

    #[test]
    fn degenerate_targets() {
        for t in [frac(0, 1), frac(1, 1)] {
            let c = QuadChain::new(&t).unwrap();
            assert!(c.quads().is_empty());
            let lo = c.lower_minimal_path().unwrap();
            let up = c.upper_minimal_path().unwrap();
            assert_eq!(lo, up);
            assert_eq!(lo.vertices(), &[Fraction::infinity(), t]);
        }
        assert!(QuadChain::new(&frac(3, 2)).is_err());
        assert!(QuadChain::new(&frac(-1, 2)).is_err());
    }

    #[test]
    fn edge_kinds() {
        assert_eq!(edge_kind(&frac(0, 1), &frac(1, 1)).unwrap(), EdgeKind::C);
        assert_eq!(edge_kind(&frac(0, 1), &frac(1, 2)).unwrap(), EdgeKind::A);
        assert_eq!(edge_kind(&frac(1, 3), &frac(2, 5)).unwrap(), EdgeKind::C);
        assert_eq!(edge_kind(&frac(1, 0), &frac(0, 1)).unwrap(), EdgeKind::A);
        assert!(edge_kind(&frac(1, 2), &frac(3, 8)).is_err());
        let quad = Quad::containing(&[frac(1, 3), frac(1, 2), frac(2, 5)]).unwrap();
        assert_eq!(quad.corners().to_vec(), q([(1, 2), (1, 3), (3, 8), (2, 5)]));
        assert_eq!(quad.diagonal(), (&frac(1, 3), &frac(2, 5)));
    }

    #[test]
    fn extreme_paths_of_small_targets() {
        let v = |p: &EdgePath| p.vertices().iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(v(&lower_minimal_path(&frac(1, 2)).unwrap()), "1/0 0/1 1/2");
        assert_eq!(v(&upper_minimal_path(&frac(1, 2)).unwrap()), "1/0 1/1 1/2");

        let lo = lower_minimal_path(&frac(2, 5)).unwrap();
        let up = upper_minimal_path(&frac(2, 5)).unwrap();
        assert_eq!(v(&lo), "1/0 0/1 1/3 2/5");
        assert_eq!(v(&up), "1/0 1/1 1/2 2/5");
        assert_eq!((lo.m(), up.m()), (-2, 2));

        let lo = lower_minimal_path(&frac(3, 8)).unwrap();
        let up = upper_minimal_path(&frac(3, 8)).unwrap();
        assert_eq!((lo.r(), lo.turns()), (0, &[3, 3][..]));
        assert_eq!((up.r(), up.turns()), (1, &[-2, -3, -2][..]));
        assert_eq!((lo.m(), up.m()), (-2, 3));
    }

    #[test]
    fn quad_invariants_hold_along_chains() {
        for qd in 2..=60i64 {
            for p in 1..qd {
                if num_integer::gcd(p, qd) != 1 {
                    continue;
                }
                let c = QuadChain::new(&frac(p, qd)).unwrap();
                assert_eq!(c.quads()[0], Quad::fundamental());
                for quad in c.quads() {
                    let [a, b, cc, d] = quad.matrix().unwrap();
                    assert!(cc.is_even());
                    assert_eq!(&a * &d - &b * &cc, BigInt::one());
                    let (x, y) = quad.diagonal();
                    assert!(x.is_knot() && y.is_knot());
                    let cs = quad.corners();
                    assert!(cs[0].is_link() && cs[2].is_link());
                }
                // Non-consecutive quads meet in at most one vertex.
                for i in 0..c.quads().len() {
                    for j in i + 2..c.quads().len() {
                        let shared = c.quads()[i].corners().iter().filter(|x| c.quads()[j].has_corner(x)).count();
                        assert!(shared <= 1, "{p}/{qd}: quads {i} and {j}");
                    }
                }
                assert_eq!(c.vertices().len(), 2 * c.quads().len() + 2);
            }
        }
    }

    #[test]
    fn triangle_move_example() {
        let chain = QuadChain::new(&frac(1, 2)).unwrap();
        let path = EdgePath::from_vertices(vec![frac(1, 0), frac(0, 1), frac(1, 2)]).unwrap();
        let tri = [frac(0, 1), frac(1, 2), frac(1, 1)];
        let moved = chain.triangle_move(&path, &tri, Side::Left).unwrap();
        assert_eq!(moved.vertices(), &[frac(1, 0), frac(0, 1), frac(1, 1), frac(1, 2)]);
        assert_eq!(moved.m(), path.m() + 1);
        assert!(chain.triangle_move(&path, &tri, Side::Right).is_err());

        let back = chain.triangle_move(&moved, &tri, Side::Right).unwrap();
        assert_eq!(back, path);

        let outside = [frac(0, 1), frac(1, 3), frac(1, 2)];
        assert!(matches!(chain.triangle_move(&path, &outside, Side::Left), Err(Error::InvalidMove(_))));
    }

    #[test]
    fn every_move_on_13_34_shifts_m_by_one() {
        let chain = QuadChain::new(&frac(13, 34)).unwrap();
        let mut paths = vec![chain.lower_minimal_path().unwrap(), chain.upper_minimal_path().unwrap()];
        paths.extend(crate::path::enumerate_minimal_paths(&frac(13, 34), 1000).unwrap());
        let mut checked = 0;
        for p in &paths {
            for (t, side) in chain.applicable_moves(p) {
                let moved = chain.triangle_move(p, &t, side).unwrap();
                let delta = if side == Side::Left { 1 } else { -1 };
                assert_eq!(moved.m(), p.m() + delta);
                checked += 1;
            }
        }
        assert!(checked > 20);
    }

    #[test]
    fn chain_json() {
        let c = QuadChain::new(&frac(1, 2)).unwrap();
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"target":"1/2","quads":[["1/0","0/1","1/2","1/1"]]}"#);
    }
}
