//! Checkerboard surfaces of alternating link diagrams.
//!
//! A diagram is reduced to what the slope count needs: for each crossing,
//! which component passes over, which passes under, and the sign. The
//! surface with right-twisted bands has slope `αᵢ + 2Pᵢ` on component `i`
//! and the left-twisted one has `−αᵢ − 2Nᵢ`, where `αᵢ` counts crossings in
//! which `i` passes over another component and `Pᵢ`, `Nᵢ` count positive and
//! negative self-crossings of `i`.
//!
//! [`four_plat_diagram`] and [`pretzel_diagram`] build planar diagrams and
//! trace their strands to obtain that data.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::path::regular_partial_quotients;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over: usize,
    pub under: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    pub n: usize,
    pub crossings: Vec<Crossing>,
    /// Asserted by whoever built the diagram; not checked here.
    #[serde(default)]
    pub reduced_alternating: bool,
}

impl LinkDiagram {
    pub fn new(n: usize, crossings: Vec<Crossing>, reduced_alternating: bool) -> Result<LinkDiagram> {
        let d = LinkDiagram { n, crossings, reduced_alternating };
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(s: &str) -> Result<LinkDiagram> {
        let d: LinkDiagram = serde_json::from_str(s).map_err(|e| Error::InvalidDiagram(e.to_string()))?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDiagram("a diagram needs at least one component".into()));
        }
        if self.crossings.is_empty() {
            return Err(Error::InvalidDiagram("a diagram needs at least one crossing".into()));
        }
        for (k, c) in self.crossings.iter().enumerate() {
            if !(1..=self.n).contains(&c.over) || !(1..=self.n).contains(&c.under) {
                return Err(Error::InvalidDiagram(format!("crossing {k} names a component outside 1..={}", self.n)));
            }
            if c.sign != 1 && c.sign != -1 {
                return Err(Error::InvalidDiagram(format!("crossing {k} has sign {}", c.sign)));
            }
        }
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// The mirror image: every crossing changes over and under.
    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            n: self.n,
            crossings: self
                .crossings
                .iter()
                .map(|c| Crossing { over: c.under, under: c.over, sign: -c.sign })
                .collect(),
            reduced_alternating: self.reduced_alternating,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckerboardSlopes {
    /// Right-twisted surface, one slope per component.
    pub s: Vec<i64>,
    /// Left-twisted surface.
    pub t: Vec<i64>,
}

impl CheckerboardSlopes {
    /// Slopes of the mirror image: `(s, t) ↦ (−t, −s)`.
    pub fn mirror(&self) -> CheckerboardSlopes {
        CheckerboardSlopes { s: self.t.iter().map(|x| -x).collect(), t: self.s.iter().map(|x| -x).collect() }
    }

    /// `Σ(sᵢ − tᵢ)`.
    pub fn total_difference(&self) -> i64 {
        self.s.iter().zip(&self.t).map(|(s, t)| s - t).sum()
    }
}

pub fn checkerboard_slopes(d: &LinkDiagram) -> Result<CheckerboardSlopes> {
    d.validate()?;
    let mut s = vec![0i64; d.n];
    let mut t = vec![0i64; d.n];
    for c in &d.crossings {
        let (o, u) = (c.over - 1, c.under - 1);
        if o != u {
            s[o] += 1;
            t[o] -= 1;
        } else if c.sign > 0 {
            s[o] += 2;
        } else {
            t[o] -= 2;
        }
    }
    Ok(CheckerboardSlopes { s, t })
}

/// Whether each surface has the same slope on every component.
pub fn is_diagonal(cs: &CheckerboardSlopes) -> (bool, bool) {
    let all_equal = |v: &[i64]| v.windows(2).all(|w| w[0] == w[1]);
    (all_equal(&cs.s), all_equal(&cs.t))
}

/// `|Σ(sᵢ − tᵢ)| = 2·cr`.
pub fn slope_sum_identity(d: &LinkDiagram) -> Result<bool> {
    let cs = checkerboard_slopes(d)?;
    Ok(cs.total_difference().unsigned_abs() == 2 * d.crossings.len() as u64)
}

/// When both surfaces are diagonal, `s − t >= (2/n)·cr`, in the form
/// `n·(s − t) >= 2·cr`. `None` when a surface is not diagonal.
pub fn diagonal_lower_bound(d: &LinkDiagram) -> Result<Option<bool>> {
    let cs = checkerboard_slopes(d)?;
    Ok(match is_diagonal(&cs) {
        (true, true) => Some(d.n as i64 * (cs.s[0] - cs.t[0]) >= 2 * d.crossings.len() as i64),
        _ => None,
    })
}

// ---------------------------------------------------------------------------
// Planar diagrams

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Corner {
    NW,
    NE,
    SW,
    SE,
}

impl Corner {
    fn position(self) -> (i64, i64) {
        match self {
            Corner::NW => (-1, 1),
            Corner::NE => (1, 1),
            Corner::SW => (-1, -1),
            Corner::SE => (1, -1),
        }
    }

    fn opposite(self) -> Corner {
        match self {
            Corner::NW => Corner::SE,
            Corner::SE => Corner::NW,
            Corner::NE => Corner::SW,
            Corner::SW => Corner::NE,
        }
    }
}

/// Which diagonal of a crossing carries the over strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Over {
    /// The strand between `NW` and `SE`.
    Falling,
    /// The strand between `SW` and `NE`.
    Rising,
}

#[derive(Debug, Clone, Copy)]
struct Port {
    /// Across the crossing, or along a cap for cap ports.
    inner: usize,
    /// Along an arc of the diagram.
    outer: usize,
    at: Option<(usize, Corner)>,
}

/// Crossings with four ports each, joined by arcs; arcs never cross.
#[derive(Default)]
struct Planar {
    ports: Vec<Port>,
    over: Vec<Over>,
}

const UNSET: usize = usize::MAX;

/// A component index and the direction it crosses in.
type StrandVisit = (usize, (i64, i64));

impl Planar {
    /// Returns the ports `[NW, NE, SW, SE]` of a new crossing.
    fn crossing(&mut self, over: Over) -> [usize; 4] {
        let id = self.over.len();
        self.over.push(over);
        let base = self.ports.len();
        let corners = [Corner::NW, Corner::NE, Corner::SW, Corner::SE];
        for c in corners {
            let partner = corners.iter().position(|&x| x == c.opposite()).expect("four corners");
            self.ports.push(Port { inner: base + partner, outer: UNSET, at: Some((id, c)) });
        }
        [base, base + 1, base + 2, base + 3]
    }

    /// Two ports joined by an arc that carries no crossing.
    fn cap(&mut self) -> [usize; 2] {
        let base = self.ports.len();
        self.ports.push(Port { inner: base + 1, outer: UNSET, at: None });
        self.ports.push(Port { inner: base, outer: UNSET, at: None });
        [base, base + 1]
    }

    fn join(&mut self, a: usize, b: usize) {
        debug_assert!(self.ports[a].outer == UNSET && self.ports[b].outer == UNSET);
        self.ports[a].outer = b;
        self.ports[b].outer = a;
    }

    /// Traces every component, starting each from the first unvisited port
    /// in `starts` and then in port order.
    fn trace(&self, starts: &[usize]) -> Result<Traced> {
        if self.ports.iter().any(|p| p.outer == UNSET) {
            return Err(Error::InvalidDiagram("an arc end is left open".into()));
        }
        let mut seen = vec![false; self.ports.len()];
        // For each crossing: (component, direction) of its falling and rising strands.
        let mut strands: Vec<[Option<StrandVisit>; 2]> = vec![[None, None]; self.over.len()];
        let mut sequences: Vec<Vec<bool>> = Vec::new();
        let order = starts.iter().copied().chain(0..self.ports.len());
        for start in order {
            if seen[start] {
                continue;
            }
            let component = sequences.len();
            let mut passes = Vec::new();
            let mut cur = start;
            loop {
                let exit = self.ports[cur].inner;
                seen[cur] = true;
                seen[exit] = true;
                if let (Some((id, from)), Some((_, to))) = (self.ports[cur].at, self.ports[exit].at) {
                    let (a, b) = (from.position(), to.position());
                    let dir = (b.0 - a.0, b.1 - a.1);
                    let falling = matches!(from, Corner::NW | Corner::SE);
                    strands[id][usize::from(!falling)] = Some((component, dir));
                    passes.push(falling == (self.over[id] == Over::Falling));
                }
                cur = self.ports[exit].outer;
                if cur == start {
                    break;
                }
            }
            sequences.push(passes);
        }
        let alternating = sequences
            .iter()
            .all(|s| s.is_empty() || (s.len() % 2 == 0 && (0..s.len()).all(|i| s[i] != s[(i + 1) % s.len()])));
        let crossings = strands
            .iter()
            .zip(&self.over)
            .map(|(st, over)| {
                let [Some(falling), Some(rising)] = *st else {
                    return Err(Error::InvalidDiagram("a crossing strand was never traversed".into()));
                };
                let (o, u) = match over {
                    Over::Falling => (falling, rising),
                    Over::Rising => (rising, falling),
                };
                let cross = o.1 .0 * u.1 .1 - o.1 .1 * u.1 .0;
                Ok(Crossing { over: o.0 + 1, under: u.0 + 1, sign: if cross > 0 { 1 } else { -1 } })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Traced { components: sequences.len(), crossings, alternating })
    }
}

struct Traced {
    components: usize,
    crossings: Vec<Crossing>,
    alternating: bool,
}

impl Traced {
    fn into_diagram(self) -> Result<LinkDiagram> {
        if !self.alternating {
            return Err(Error::Inconsistent("generated diagram is not alternating".into()));
        }
        LinkDiagram::new(self.components, self.crossings, true)
    }
}

/// The alternating 4-plat diagram of the 2-bridge link `p/q`.
///
/// Four horizontal strands, numbered 1 to 4 from the top, are capped off in
/// pairs `(1, 2)` and `(3, 4)` at both ends. Between the caps sit twist
/// regions `σ₂^{a₁} σ₁^{−a₂} σ₂^{a₃} …` read from the regular continued
/// fraction `[0; a₁, …, a_m]`, with `a_m` split as `a_m − 1, 1` when `m` is
/// even. Components are numbered in the order they are met from the top
/// left strand, then the third strand, each oriented left to right there.
pub fn four_plat_diagram(target: &Fraction) -> Result<LinkDiagram> {
    let mut a = regular_partial_quotients(target)?;
    if a.len() % 2 == 0 {
        let last = a.pop().expect("non-empty expansion");
        a.push(last - 1);
        a.push(1);
    }
    let mut g = Planar::default();
    let [l1, l2] = g.cap();
    let [l3, l4] = g.cap();
    // `open[k]` is the port at the current right end of strand position k + 1.
    let mut open = [l1, l2, l3, l4];
    for (i, &count) in a.iter().enumerate() {
        // σ₂ twists are positive (falling strand over), σ₁ twists negative.
        let (k, over) = if i % 2 == 0 { (1, Over::Falling) } else { (0, Over::Rising) };
        for _ in 0..count {
            let [nw, ne, sw, se] = g.crossing(over);
            g.join(open[k], nw);
            g.join(open[k + 1], sw);
            open[k] = ne;
            open[k + 1] = se;
        }
    }
    let [r1, r2] = g.cap();
    let [r3, r4] = g.cap();
    g.join(open[0], r1);
    g.join(open[1], r2);
    g.join(open[2], r3);
    g.join(open[3], r4);
    // Start at the cap port below strand 1 so the trace heads right along strand 1.
    g.trace(&[l2, l4])?.into_diagram()
}

/// The standard pretzel diagram with vertical twist columns.
///
/// All twist counts must be nonzero and share a sign, so that the diagram
/// is alternating.
pub fn pretzel_diagram(twists: &[i64]) -> Result<LinkDiagram> {
    if twists.is_empty() || twists.contains(&0) {
        return Err(Error::InvalidDiagram("pretzel twist counts must be nonzero".into()));
    }
    if !(twists.iter().all(|&t| t > 0) || twists.iter().all(|&t| t < 0)) {
        return Err(Error::InvalidDiagram("pretzel twist counts of mixed sign give a non-alternating diagram".into()));
    }
    let mut g = Planar::default();
    // Per column: top-left, top-right, bottom-left, bottom-right ports.
    let mut columns = Vec::with_capacity(twists.len());
    for &t in twists {
        let over = if t > 0 { Over::Falling } else { Over::Rising };
        let n = t.unsigned_abs().to_usize().ok_or_else(|| Error::Overflow(t.to_string()))?;
        let [nw, ne, mut sw, mut se] = g.crossing(over);
        for _ in 1..n {
            let [nw2, ne2, sw2, se2] = g.crossing(over);
            g.join(sw, nw2);
            g.join(se, ne2);
            sw = sw2;
            se = se2;
        }
        columns.push([nw, ne, sw, se]);
    }
    let k = columns.len();
    for i in 0..k - 1 {
        g.join(columns[i][1], columns[i + 1][0]);
        g.join(columns[i][3], columns[i + 1][2]);
    }
    g.join(columns[0][0], columns[k - 1][1]);
    g.join(columns[0][2], columns[k - 1][3]);
    g.trace(&[])?.into_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fraction::frac;

    fn c(over: usize, under: usize, sign: i8) -> Crossing {
        Crossing { over, under, sign }
    }

    #[test]
    fn hand_entered_diagrams() {
        let hopf = LinkDiagram::new(2, vec![c(1, 2, 1), c(2, 1, 1)], true).unwrap();
        let cs = checkerboard_slopes(&hopf).unwrap();
        assert_eq!(cs, CheckerboardSlopes { s: vec![1, 1], t: vec![-1, -1] });
        assert_eq!(is_diagonal(&cs), (true, true));
        assert!(slope_sum_identity(&hopf).unwrap());

        let trefoil = LinkDiagram::new(1, vec![c(1, 1, 1); 3], true).unwrap();
        assert_eq!(checkerboard_slopes(&trefoil).unwrap(), CheckerboardSlopes { s: vec![6], t: vec![0] });

        let single = LinkDiagram::new(1, vec![c(1, 1, -1)], false).unwrap();
        assert!(slope_sum_identity(&single).unwrap());
    }

    #[test]
    fn invalid_diagrams() {
        assert!(LinkDiagram::new(1, vec![], true).is_err());
        assert!(LinkDiagram::new(0, vec![c(1, 1, 1)], true).is_err());
        assert!(LinkDiagram::new(2, vec![c(1, 3, 1)], true).is_err());
        assert!(LinkDiagram::new(1, vec![c(1, 1, 0)], true).is_err());
        assert!(LinkDiagram::from_json(r#"{"n": 1, "crossings": []}"#).is_err());
        assert!(LinkDiagram::from_json("not json").is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"n":2,"crossings":[{"over":1,"under":2,"sign":1},{"over":2,"under":1,"sign":-1}],"reduced_alternating":true}"#;
        let d = LinkDiagram::from_json(text).unwrap();
        assert_eq!(d.crossing_count(), 2);
        assert_eq!(serde_json::to_string(&d).unwrap(), text);
    }

    #[test]
    fn mirror_swaps_surfaces() {
        let d = four_plat_diagram(&frac(3, 8)).unwrap();
        let cs = checkerboard_slopes(&d).unwrap();
        assert_eq!(checkerboard_slopes(&d.mirror()).unwrap(), cs.mirror());
        assert_eq!(cs.mirror().mirror(), cs);
    }

    #[test]
    fn small_four_plats() {
        let hopf = four_plat_diagram(&frac(1, 2)).unwrap();
        assert_eq!((hopf.n, hopf.crossing_count()), (2, 2));
        assert!(hopf.crossings.iter().all(|x| x.over != x.under));

        let trefoil = four_plat_diagram(&frac(1, 3)).unwrap();
        assert_eq!((trefoil.n, trefoil.crossing_count()), (1, 3));
        let signs: Vec<i8> = trefoil.crossings.iter().map(|x| x.sign).collect();
        assert!(signs.iter().all(|&s| s == signs[0]));
        assert_eq!(checkerboard_slopes(&trefoil).unwrap(), CheckerboardSlopes { s: vec![6], t: vec![0] });

        let whitehead = four_plat_diagram(&frac(3, 8)).unwrap();
        assert_eq!((whitehead.n, whitehead.crossing_count()), (2, 5));
    }

    #[test]
    fn four_plat_component_counts() {
        for q in 2..=60i64 {
            for p in 1..q {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let d = four_plat_diagram(&frac(p, q)).unwrap();
                assert_eq!(d.n, if q % 2 == 0 { 2 } else { 1 }, "{p}/{q}");
                assert!(slope_sum_identity(&d).unwrap());
            }
        }
    }

    #[test]
    fn pretzels() {
        let d = pretzel_diagram(&[2, 2]).unwrap();
        assert_eq!(d.crossing_count(), 4);
        let d = pretzel_diagram(&[3]).unwrap();
        assert_eq!((d.crossing_count(), d.n), (3, 1));
        let d = pretzel_diagram(&[3, 2, 3, 2, 3, 2]).unwrap();
        assert_eq!((d.crossing_count(), d.n), (15, 3));
        let cs = checkerboard_slopes(&d).unwrap();
        assert_eq!(is_diagonal(&cs), (true, true));
        let pair = (cs.s[0], cs.t[0]);
        assert!(pair == (8, -2) || pair == (2, -8), "{cs:?}");
        assert!(slope_sum_identity(&d).unwrap());
        assert_eq!(diagonal_lower_bound(&d).unwrap(), Some(true));

        assert!(pretzel_diagram(&[3, -2]).is_err());
        assert!(pretzel_diagram(&[3, 0]).is_err());
        assert!(pretzel_diagram(&[]).is_err());
        assert_eq!(pretzel_diagram(&[-3, -3, -3]).unwrap().crossing_count(), 9);
    }
}
