//! Edge paths in the Farey diagram starting at `1/0`.
//!
//! A path `1/0, r/1, p₁/q₁, …, p/q` corresponds to the continued fraction
//! `p/q = r + 1/(b₁ − 1/(b₂ − … − 1/b_k))` whose partial sums are the
//! successive vertices. The `bᵢ` are the turning numbers: a positive `bᵢ`
//! turns left across `bᵢ` triangles, a negative one turns right.
//!
//! Internally the vertices are lifted to integer vectors `v₋₁ = (−1, 0)`,
//! `v₀ = (r, 1)`, with signs chosen so `det(vᵢ₋₁, vᵢ) = −1`. Then
//! `vᵢ = bᵢ·vᵢ₋₁ − vᵢ₋₂` and `bᵢ = det(vᵢ, vᵢ₋₂)`.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::chain::QuadChain;
use crate::error::{Error, Result};
use crate::fraction::Fraction;

/// Default cap on the number of materialized minimal paths.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

type Vector = (BigInt, BigInt);

fn vdet(x: &Vector, y: &Vector) -> BigInt {
    &x.0 * &y.1 - &y.0 * &x.1
}

fn infinity_vector() -> Vector {
    (BigInt::from(-1), BigInt::zero())
}

/// Lift `f` to the vector `w` with `det(prev, w) = −1`.
fn lift_after(prev: &Vector, f: &Fraction) -> Vector {
    let w = (f.num().clone(), f.den().clone());
    if vdet(prev, &w) == BigInt::from(-1) {
        w
    } else {
        (-w.0, -w.1)
    }
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgePath {
    vertices: Vec<Fraction>,
    r: i64,
    turns: Vec<i64>,
}

impl std::fmt::Debug for EdgePath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {:?})", self.r, self.turns)
    }
}

impl EdgePath {
    /// Validates a vertex list and derives its turning numbers.
    pub fn from_vertices(vertices: Vec<Fraction>) -> Result<EdgePath> {
        if vertices.len() < 2 {
            return Err(Error::MalformedPath("a path needs at least one edge".into()));
        }
        if !vertices[0].is_infinity() {
            return Err(Error::MalformedPath(format!("path starts at {} instead of 1/0", vertices[0])));
        }
        if !vertices[1].den().is_one() {
            return Err(Error::MalformedPath(format!("second vertex {} is not an integer", vertices[1])));
        }
        let mut seen = HashSet::with_capacity(vertices.len());
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::MalformedPath(format!("vertex {v} repeats")));
            }
        }
        for w in vertices.windows(2) {
            if !w[0].is_farey_neighbor(&w[1]) {
                return Err(Error::not_neighbors(w[0].clone(), w[1].clone()));
            }
        }
        let r = to_i64(vertices[1].num())?;
        let mut lifted: Vec<Vector> = Vec::with_capacity(vertices.len());
        lifted.push(infinity_vector());
        for f in &vertices[1..] {
            let w = lift_after(lifted.last().expect("non-empty"), f);
            lifted.push(w);
        }
        let turns = (2..lifted.len()).map(|i| to_i64(&vdet(&lifted[i], &lifted[i - 2]))).collect::<Result<Vec<_>>>()?;
        Ok(EdgePath { vertices, r, turns })
    }

    /// The path whose partial sums are `r + [b₁, …, bᵢ]`.
    pub fn from_turning(r: i64, turns: &[i64]) -> Result<EdgePath> {
        let mut prev2 = infinity_vector();
        let mut prev1: Vector = (BigInt::from(r), BigInt::one());
        let mut vertices = vec![Fraction::infinity(), Fraction::integer(r)];
        for (i, &b) in turns.iter().enumerate() {
            if b == 0 {
                return Err(Error::ZeroTurn(i + 1));
            }
            let b = BigInt::from(b);
            let next = (&b * &prev1.0 - &prev2.0, &b * &prev1.1 - &prev2.1);
            if next.1.is_zero() {
                return Err(Error::DegeneratePartialSum(i + 1));
            }
            vertices.push(Fraction::from_vector(next.0.clone(), next.1.clone()));
            prev2 = std::mem::replace(&mut prev1, next);
        }
        let path = EdgePath::from_vertices(vertices)?;
        debug_assert_eq!(path.turns, turns);
        Ok(path)
    }

    pub fn vertices(&self) -> &[Fraction] {
        &self.vertices
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn turns(&self) -> &[i64] {
        &self.turns
    }

    pub fn turning_numbers(&self) -> (i64, &[i64]) {
        (self.r, &self.turns)
    }

    pub fn end(&self) -> &Fraction {
        self.vertices.last().expect("paths are non-empty")
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Fraction, &Fraction)> {
        self.vertices.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// No two consecutive edges in one triangle: every `|bᵢ| >= 2`.
    pub fn is_minimal(&self) -> bool {
        self.turns.iter().all(|b| b.abs() >= 2)
    }

    pub fn is_even(&self) -> bool {
        self.turns.iter().all(|b| b % 2 == 0)
    }

    /// Sum of edge determinants, skipping edges at `1/0`.
    pub fn m(&self) -> i64 {
        self.edges()
            .filter(|(u, v)| !u.is_infinity() && !v.is_infinity())
            .map(|(u, v)| if u.det(v).is_positive() { 1 } else { -1 })
            .sum()
    }

    /// Counts of positive and negative turning numbers.
    pub fn n_plus_minus(&self) -> (i64, i64) {
        let plus = self.turns.iter().filter(|&&b| b > 0).count() as i64;
        (plus, self.turns.len() as i64 - plus)
    }

    pub fn extend(&self, next: Fraction) -> Result<EdgePath> {
        let mut v = self.vertices.clone();
        v.push(next);
        EdgePath::from_vertices(v)
    }
}

impl Serialize for EdgePath {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EdgePath", 4)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("turns", &self.turns)?;
        s.serialize_field("vertices", &self.vertices)?;
        s.serialize_field("m", &self.m())?;
        s.end()
    }
}

// ---------------------------------------------------------------------------
// Even paths

/// Shared-prefix path node; each even path extends an even path of a parent.
struct Node {
    vertex: Fraction,
    lifted: Vector,
    prev: Option<Rc<Node>>,
    m: i64,
    n_plus: i64,
    n_minus: i64,
}

impl Drop for Node {
    // Unlink iteratively; the default drop recurses once per path vertex.
    fn drop(&mut self) {
        let mut next = self.prev.take();
        while let Some(rc) = next {
            match Rc::try_unwrap(rc) {
                Ok(mut node) => next = node.prev.take(),
                Err(_) => break,
            }
        }
    }
}

impl Node {
    fn root(r: Fraction) -> Rc<Node> {
        let inf = Rc::new(Node {
            vertex: Fraction::infinity(),
            lifted: infinity_vector(),
            prev: None,
            m: 0,
            n_plus: 0,
            n_minus: 0,
        });
        let lifted = lift_after(&inf.lifted, &r);
        Rc::new(Node { vertex: r, lifted, prev: Some(inf), m: 0, n_plus: 0, n_minus: 0 })
    }

    /// Extends by `next`, returning the new node and its turning number.
    fn extend(self: &Rc<Node>, next: &Fraction) -> Result<(Rc<Node>, BigInt)> {
        if !self.vertex.is_farey_neighbor(next) {
            return Err(Error::not_neighbors(self.vertex.clone(), next.clone()));
        }
        let lifted = lift_after(&self.lifted, next);
        let before = self.prev.as_ref().expect("extended nodes have a predecessor");
        let b = vdet(&lifted, &before.lifted);
        let step = if self.vertex.det(next).is_positive() { 1 } else { -1 };
        let node = Node {
            vertex: next.clone(),
            lifted,
            prev: Some(Rc::clone(self)),
            m: self.m + step,
            n_plus: self.n_plus + i64::from(b.is_positive()),
            n_minus: self.n_minus + i64::from(b.is_negative()),
        };
        Ok((Rc::new(node), b))
    }

    fn to_path(&self) -> Result<EdgePath> {
        let mut v = vec![self.vertex.clone()];
        let mut cur = self.prev.as_ref();
        while let Some(n) = cur {
            v.push(n.vertex.clone());
            cur = n.prev.as_ref();
        }
        v.reverse();
        EdgePath::from_vertices(v)
    }
}

#[derive(Clone)]
enum Even {
    Knot(Rc<Node>),
    /// `[e⁰, e¹]`: via the parent with even, resp. odd, numerator.
    Link([Rc<Node>; 2]),
}

/// Summary of an even path without its vertex list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvenStats {
    pub m: i64,
    pub n_plus: i64,
    pub n_minus: i64,
}

impl From<&Node> for EvenStats {
    fn from(n: &Node) -> Self {
        EvenStats { m: n.m, n_plus: n.n_plus, n_minus: n.n_minus }
    }
}

/// Memoized even paths. Ancestors are resolved with an explicit stack since
/// the parent recursion can be as deep as the denominator.
#[derive(Default)]
pub struct EvenPaths {
    memo: HashMap<Fraction, Even>,
}

impl EvenPaths {
    pub fn new() -> Self {
        Self::default()
    }

    fn resolve(&mut self, target: &Fraction) -> Result<Even> {
        if !(target.num().is_zero() || (target.num().is_positive() && target.num() <= target.den()))
            || target.is_infinity()
        {
            return Err(Error::OutOfRange {
                fraction: target.clone(),
                reason: "even paths are computed for 0 <= p/q <= 1",
            });
        }
        let mut stack = vec![target.clone()];
        while let Some(f) = stack.last().cloned() {
            if self.memo.contains_key(&f) {
                stack.pop();
                continue;
            }
            if f.den().is_one() {
                self.memo.insert(f.clone(), Even::Knot(Node::root(f)));
                stack.pop();
                continue;
            }
            let (l, r) = f.parents()?;
            let missing: Vec<Fraction> =
                [l.clone(), r.clone()].into_iter().filter(|p| !self.memo.contains_key(p)).collect();
            let needed: Vec<Fraction> = if f.is_knot() {
                // Only the link parent matters for a knot.
                missing.into_iter().filter(|p| p.is_link()).collect()
            } else {
                missing
            };
            if !needed.is_empty() {
                stack.extend(needed);
                continue;
            }
            let entry = if f.is_knot() {
                let link = if l.is_link() { &l } else { &r };
                let Some(Even::Link(ends)) = self.memo.get(link) else {
                    return Err(Error::Inconsistent(format!("{link} should be a link")));
                };
                let mut found = Vec::new();
                for e in ends {
                    let (node, b) = e.extend(&f)?;
                    if b.is_even() {
                        found.push(node);
                    }
                }
                match <[Rc<Node>; 1]>::try_from(found) {
                    Ok([node]) => Even::Knot(node),
                    Err(found) => {
                        return Err(Error::Inconsistent(format!(
                            "{f}: {} even extensions through link parent {link}",
                            found.len()
                        )))
                    }
                }
            } else {
                let mut slots: [Option<Rc<Node>>; 2] = [None, None];
                for p in [&l, &r] {
                    let Some(Even::Knot(e)) = self.memo.get(p) else {
                        return Err(Error::Inconsistent(format!("{p} should be a knot")));
                    };
                    let (node, b) = e.extend(&f)?;
                    if b.is_odd() {
                        return Err(Error::Inconsistent(format!(
                            "extending e({p}) to {f} gives odd turning number {b}"
                        )));
                    }
                    let parity = usize::from(p.num().is_odd());
                    slots[parity] = Some(node);
                }
                match slots {
                    [Some(e0), Some(e1)] => Even::Link([e0, e1]),
                    _ => {
                        return Err(Error::Inconsistent(format!(
                            "parents of {f} do not have numerators of opposite parity"
                        )))
                    }
                }
            };
            self.memo.insert(f, entry);
            stack.pop();
        }
        Ok(self.memo[target].clone())
    }

    /// `e(p/q)` for odd `q`.
    pub fn knot(&mut self, target: &Fraction) -> Result<EdgePath> {
        self.knot_node(target)?.to_path()
    }

    /// `(e⁰(p/q), e¹(p/q))` for even `q`.
    pub fn link(&mut self, target: &Fraction) -> Result<(EdgePath, EdgePath)> {
        let [e0, e1] = self.link_nodes(target)?;
        Ok((e0.to_path()?, e1.to_path()?))
    }

    pub fn knot_stats(&mut self, target: &Fraction) -> Result<EvenStats> {
        Ok(EvenStats::from(&*self.knot_node(target)?))
    }

    pub fn link_stats(&mut self, target: &Fraction) -> Result<[EvenStats; 2]> {
        let [e0, e1] = self.link_nodes(target)?;
        Ok([EvenStats::from(&*e0), EvenStats::from(&*e1)])
    }

    fn knot_node(&mut self, target: &Fraction) -> Result<Rc<Node>> {
        if !target.is_knot() {
            return Err(Error::OutOfRange { fraction: target.clone(), reason: "expected an odd denominator" });
        }
        match self.resolve(target)? {
            Even::Knot(n) => Ok(n),
            Even::Link(_) => unreachable!("odd denominators resolve to knots"),
        }
    }

    fn link_nodes(&mut self, target: &Fraction) -> Result<[Rc<Node>; 2]> {
        if !target.is_link() {
            return Err(Error::OutOfRange { fraction: target.clone(), reason: "expected an even denominator" });
        }
        match self.resolve(target)? {
            Even::Link(n) => Ok(n),
            Even::Knot(_) => unreachable!("even denominators resolve to links"),
        }
    }
}

/// The unique even path from `1/0` to a knot fraction.
pub fn even_path_knot(target: &Fraction) -> Result<EdgePath> {
    EvenPaths::new().knot(target)
}

/// `(e⁰, e¹)`, the two even paths to a link fraction.
pub fn even_paths_link(target: &Fraction) -> Result<(EdgePath, EdgePath)> {
    EvenPaths::new().link(target)
}

// ---------------------------------------------------------------------------
// Minimal paths

struct ChainGraph {
    vertices: Vec<Fraction>,
    adj: Vec<Vec<usize>>,
    start: usize,
    target: usize,
}

impl ChainGraph {
    fn new(chain: &QuadChain) -> Result<ChainGraph> {
        let target = chain.target();
        target.check_unit_interior()?;
        let vertices = chain.vertices().to_vec();
        let index: HashMap<&Fraction, usize> = vertices.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for t in chain.triangles() {
            for k in 0..3 {
                let (a, b) = (index[&t[k]], index[&t[(k + 1) % 3]]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(ChainGraph { start: index[&Fraction::infinity()], target: index[target], vertices, adj })
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

/// Every minimal path from `1/0` to `target`, sorted by `(r, turns)`.
///
/// Depth-first search over the chain; a step `u → w` after `t → u` is
/// allowed when `t` and `w` are not adjacent. Fails with
/// [`Error::CapExceeded`] once more than `cap` paths are found.
pub fn enumerate_minimal_paths(target: &Fraction, cap: usize) -> Result<Vec<EdgePath>> {
    enumerate_chain_paths(&QuadChain::new(target)?, cap)
}

/// [`enumerate_minimal_paths`] for an already built chain.
pub fn enumerate_chain_paths(chain: &QuadChain, cap: usize) -> Result<Vec<EdgePath>> {
    let g = ChainGraph::new(chain)?;
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut on_path = vec![false; g.vertices.len()];
    let mut path = vec![g.start];
    on_path[g.start] = true;
    // Each frame remembers how far through its adjacency list it got.
    let mut cursor = vec![0usize];
    while let Some(&cur) = path.last() {
        let depth = path.len() - 1;
        let at = cursor[depth];
        if cur == g.target || at >= g.adj[cur].len() {
            if cur == g.target && at == 0 {
                found.push(path.clone());
                if found.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
            on_path[cur] = false;
            path.pop();
            cursor.pop();
            continue;
        }
        cursor[depth] += 1;
        let next = g.adj[cur][at];
        if on_path[next] {
            continue;
        }
        if depth >= 1 && g.adjacent(path[depth - 1], next) {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        cursor.push(0);
    }
    let mut paths = found
        .into_iter()
        .map(|p| EdgePath::from_vertices(p.into_iter().map(|i| g.vertices[i].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;
    paths.sort_by(|a, b| (a.r, &a.turns).cmp(&(b.r, &b.turns)));
    Ok(paths)
}

/// Number of minimal paths without materializing them.
///
/// Each vertex of a minimal path is a parent of the next, so denominators
/// increase strictly and the `(previous, current)` edge states form a DAG.
pub fn count_minimal_paths(target: &Fraction) -> Result<u128> {
    count_chain_paths(&QuadChain::new(target)?)
}

/// [`count_minimal_paths`] for an already built chain.
pub fn count_chain_paths(chain: &QuadChain) -> Result<u128> {
    let g = ChainGraph::new(chain)?;
    let n = g.vertices.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| g.vertices[b].den().cmp(g.vertices[a].den()));
    let larger = |a: usize, b: usize| g.vertices[b].den() > g.vertices[a].den();
    // count[(u, v)] = minimal continuations from v to the target having arrived from u.
    let mut count: HashMap<(usize, usize), u128> = HashMap::new();
    for &v in &order {
        for &u in &g.adj[v] {
            if !larger(u, v) {
                continue;
            }
            let total = if v == g.target {
                1
            } else {
                let mut acc: u128 = 0;
                for &w in &g.adj[v] {
                    if larger(v, w) && !g.adjacent(u, w) {
                        let c = count.get(&(v, w)).copied().unwrap_or(0);
                        acc = acc.checked_add(c).ok_or_else(|| Error::Overflow("path count".into()))?;
                    }
                }
                acc
            };
            count.insert((u, v), total);
        }
    }
    let mut total: u128 = 0;
    for &r in &g.adj[g.start] {
        total = total
            .checked_add(count.get(&(g.start, r)).copied().unwrap_or(0))
            .ok_or_else(|| Error::Overflow("path count".into()))?;
    }
    Ok(total)
}

/// Regular continued fraction `[0; a₁, …, a_n]` of `0 < p/q < 1`, with `a_n >= 2`.
pub fn regular_partial_quotients(target: &Fraction) -> Result<Vec<i64>> {
    target.check_unit_interior()?;
    let (mut num, mut den) = (target.den().clone(), target.num().clone());
    let mut out = Vec::new();
    while !den.is_zero() {
        let (a, rem) = num.div_rem(&den);
        out.push(to_i64(&a)?);
        num = std::mem::replace(&mut den, rem);
    }
    Ok(out)
}

/// The path with turning numbers `(0, [a₁, −a₂, a₃, …])`, alternating in sign.
///
/// It threads the strip of triangles between the two extreme minimal paths
/// and its `Σ|bᵢ|` is the crossing number.
pub fn alternating_turning_path(target: &Fraction) -> Result<EdgePath> {
    let a = regular_partial_quotients(target)?;
    let turns: Vec<i64> = a.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x } else { -x }).collect();
    EdgePath::from_turning(0, &turns)
}
