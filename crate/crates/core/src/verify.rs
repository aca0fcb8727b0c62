//! Exhaustive checks of the identities behind the slope computations.
//!
//! Every check sweeps all reduced `p/q` with `0 < p < q <= max_q` and stops
//! at its first counterexample. Internal errors raised while evaluating a
//! case count as counterexamples.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::chain::{edge_kind, EdgeKind, QuadChain, Side};
use crate::checkerboard::{checkerboard_slopes, diagonal_lower_bound, four_plat_diagram, slope_sum_identity};
use crate::error::Result;
use crate::fraction::Fraction;
use crate::path::{alternating_turning_path, enumerate_chain_paths, EdgePath, EvenPaths, DEFAULT_PATH_CAP};
use crate::slopes::{epsilon, sigmas, slope_report};
use crate::survey::fractions_up_to;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Lemmas,
    Theorems,
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(Suite::All),
            "lemmas" => Ok(Suite::Lemmas),
            "theorems" => Ok(Suite::Theorems),
            _ => Err(format!("unknown suite {s:?}; expected all, lemmas or theorems")),
        }
    }
}

/// Deliberate corruption used to check that the verifier notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Adds one to `σ₀` of every even-denominator fraction.
    Sigma0OffByOne,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_q: u64,
    pub suite: Suite,
    pub fault: Option<Fault>,
    /// Checkerboard checks stop at this denominator.
    pub checkerboard_max_q: u64,
}

impl VerifyOptions {
    pub fn new(max_q: u64, suite: Suite) -> Self {
        VerifyOptions { max_q, suite, fault: None, checkerboard_max_q: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(c) => write!(f, "FAIL {} after {} cases: {c}", self.name, self.cases),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A case either holds, or fails with a description.
type Case = std::result::Result<(), String>;

fn run(name: &'static str, items: &[Fraction], mut case: impl FnMut(&Fraction) -> Result<Case>) -> CheckOutcome {
    let mut cases = 0;
    for f in items {
        cases += 1;
        let failure = match case(f) {
            Ok(Ok(())) => continue,
            Ok(Err(msg)) => msg,
            Err(e) => format!("error: {e}"),
        };
        return CheckOutcome { name, cases, counterexample: Some(format!("{f}: {failure}")) };
    }
    CheckOutcome { name, cases, counterexample: None }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Case {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Sigma {
    fault: Option<Fault>,
}

impl Sigma {
    fn of(&self, f: &Fraction) -> Result<(i64, i64)> {
        let (s0, s1) = sigmas(f)?;
        Ok(match self.fault {
            Some(Fault::Sigma0OffByOne) if f.is_link() && !f.is_infinity() => (s0 + 1, s1),
            _ => (s0, s1),
        })
    }
}

pub fn verify(opts: &VerifyOptions) -> VerifyReport {
    let items = fractions_up_to(opts.max_q);
    let mut checks = Vec::new();
    if matches!(opts.suite, Suite::All | Suite::Lemmas) {
        checks.extend(lemma_checks(&items, opts));
    }
    if matches!(opts.suite, Suite::All | Suite::Theorems) {
        checks.extend(theorem_checks(&items, opts));
    }
    VerifyReport { checks }
}

fn moves_are_unit_steps(chain: &QuadChain, path: &EdgePath) -> Result<Case> {
    for (tri, side) in chain.applicable_moves(path) {
        let moved = chain.triangle_move(path, &tri, side)?;
        let expected = match side {
            Side::Left => 1,
            Side::Right => -1,
        };
        if moved.m() - path.m() != expected {
            return Ok(Err(format!("{side:?} move across {tri:?} on {path:?} changes m by {}", moved.m() - path.m())));
        }
    }
    Ok(Ok(()))
}

fn m_matches_turns(path: &EdgePath) -> Case {
    let (np, nm) = path.n_plus_minus();
    ensure(-path.m() == np - nm, || format!("{path:?}: m = {}, n+ = {np}, n- = {nm}", path.m()))
}

fn lemma_checks(items: &[Fraction], opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let sigma = Sigma { fault: opts.fault };
    let mut out = Vec::new();

    out.push(run("triangle moves change m by one", items, |f| {
        let chain = QuadChain::new(f)?;
        for start in [chain.lower_minimal_path()?, chain.upper_minimal_path()?, alternating_turning_path(f)?] {
            if let Err(e) = moves_are_unit_steps(&chain, &start)? {
                return Ok(Err(e));
            }
            for (tri, side) in chain.applicable_moves(&start) {
                let next = chain.triangle_move(&start, &tri, side)?;
                if let Err(e) = moves_are_unit_steps(&chain, &next)? {
                    return Ok(Err(e));
                }
            }
        }
        Ok(Ok(()))
    }));

    out.push(run("extreme path determinants", items, |f| {
        let chain = QuadChain::new(f)?;
        let lower = chain.lower_minimal_path()?;
        let upper = chain.upper_minimal_path()?;
        for (path, sign) in [(&lower, -1), (&upper, 1)] {
            for (u, v) in path.edges().skip(1) {
                if u.det(v) != sign.into() {
                    return Ok(Err(format!("edge {u} -> {v} of {path:?} has determinant {}", u.det(v))));
                }
            }
        }
        let (i, j) = (upper.edge_count() as i64, lower.edge_count() as i64);
        Ok(ensure(upper.m() == i - 1 && lower.m() == 1 - j, || {
            format!("m(upper) = {}, {i} edges; m(lower) = {}, {j} edges", upper.m(), lower.m())
        }))
    }));

    out.push(run("m equals n- minus n+", items, |f| {
        let chain = QuadChain::new(f)?;
        let mut paths = match enumerate_chain_paths(&chain, DEFAULT_PATH_CAP) {
            Ok(p) => p,
            Err(crate::error::Error::CapExceeded { .. }) => {
                vec![chain.lower_minimal_path()?, chain.upper_minimal_path()?]
            }
            Err(e) => return Err(e),
        };
        let lower = chain.lower_minimal_path()?;
        let upper = chain.upper_minimal_path()?;
        for start in [&lower, &upper] {
            for (tri, side) in chain.applicable_moves(start) {
                paths.push(chain.triangle_move(start, &tri, side)?);
            }
        }
        Ok(paths.iter().try_for_each(m_matches_turns))
    }));

    out.push(run("epsilon palindrome", items, |f| {
        let (p, q) = f.to_i64_pair().expect("small");
        let sign = if p % 2 == 1 { 1 } else { -1 };
        for i in 1..q as u64 {
            let (a, b) = (epsilon(f, i)?, epsilon(f, q as u64 - i)?);
            if a != sign * b {
                return Ok(Err(format!("epsilon_{i} = {a}, epsilon_{} = {b}", q as u64 - i)));
            }
        }
        Ok(Ok(()))
    }));

    out.push(run("odd q: sigma0 = (-1)^(p+1) sigma1", items, |f| {
        if f.is_link() {
            return Ok(Ok(()));
        }
        let (s0, s1) = sigma.of(f)?;
        let sign = if f.num().is_odd() { 1 } else { -1 };
        Ok(ensure(s0 == sign * s1, || format!("sigma0 = {s0}, sigma1 = {s1}")))
    }));

    out.push(run("parents share epsilon prefixes", items, |f| {
        let (l, r) = f.parents()?;
        for parent in [&l, &r] {
            let (_, d) = parent.to_i64_pair().expect("small");
            for i in 1..d as u64 {
                if epsilon(parent, i)? != epsilon(f, i)? {
                    return Ok(Err(format!("epsilon_{i} differs from parent {parent}")));
                }
            }
        }
        Ok(Ok(()))
    }));

    out.push(run("sigma sums of children", items, |f| {
        let (a, b) = f.parents()?;
        let (s0, s1) = sigma.of(f)?;
        let (a0, a1) = sigma.of(&a)?;
        let (b0, b1) = sigma.of(&b)?;
        let at = format!("parents {a}, {b}");
        if f.is_link() {
            let sign_a = if a.num().is_even() { 1 } else { -1 };
            Ok(ensure(s0 == a0 + b0 && s1 == a1 + b1 + sign_a, || {
                format!("{at}: sigma = ({s0}, {s1}), parents ({a0}, {a1}) and ({b0}, {b1})")
            }))
        } else {
            let sign_p = if f.num().is_odd() { 1 } else { -1 };
            let expected = if a.is_knot() { a0 + sign_p * b1 } else { b0 + sign_p * a1 };
            Ok(ensure(s0 == expected, || format!("{at}: sigma0 = {s0}, expected {expected}")))
        }
    }));

    out.push(run("even path m against sigma", items, |f| {
        let mut even = EvenPaths::new();
        let (s0, s1) = sigma.of(f)?;
        if f.is_knot() {
            let e = even.knot_stats(f)?;
            Ok(ensure(e.m == 2 * s0, || format!("m(e) = {}, sigma0 = {s0}", e.m)))
        } else {
            let [e0, e1] = even.link_stats(f)?;
            Ok(ensure(e0.m == s0 - s1 && e1.m == s0 + s1, || {
                format!("m(e0) = {}, m(e1) = {}, sigma = ({s0}, {s1})", e0.m, e1.m)
            }))
        }
    }));
    out
}

fn theorem_checks(items: &[Fraction], opts: &VerifyOptions) -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    out.push(run("three slope formulas agree", items, |f| {
        let r = slope_report(f, DEFAULT_PATH_CAP)?;
        Ok(ensure(r.slopes.len() as u128 == r.path_count || r.truncated, || "path count mismatch".into()))
    }));

    out.push(run("diameter equals (2/n) crossing number", items, |f| {
        let r = slope_report(f, DEFAULT_PATH_CAP)?;
        let parity_ok = r.components == 2 || r.slopes.iter().all(|s| s.slope % 2 == 0);
        Ok(ensure(r.diameter * i64::from(r.components) == 2 * r.crossing_number && parity_ok, || {
            format!("diameter {}, crossing number {}, n = {}", r.diameter, r.crossing_number, r.components)
        }))
    }));

    out.push(run("crossing number three ways", items, |f| {
        let chain = QuadChain::new(f)?;
        let (lower, upper) = (chain.lower_minimal_path()?, chain.upper_minimal_path()?);
        let by_m = upper.m() - lower.m();
        let by_edges = (upper.edge_count() + lower.edge_count()) as i64 - 2;
        let alt = alternating_turning_path(f)?;
        let by_turns: i64 = alt.turns().iter().map(|b| b.abs()).sum();
        Ok(ensure(by_m == by_edges && by_m == by_turns, || {
            format!("m difference {by_m}, i + j - 2 = {by_edges}, alternating sum {by_turns}")
        }))
    }));

    out.push(run("even minimal paths", items, |f| {
        let chain = QuadChain::new(f)?;
        let evens: Vec<EdgePath> = match enumerate_chain_paths(&chain, DEFAULT_PATH_CAP) {
            Ok(paths) => paths.into_iter().filter(EdgePath::is_even).collect(),
            Err(crate::error::Error::CapExceeded { .. }) => return Ok(Ok(())),
            Err(e) => return Err(e),
        };
        let mut memo = EvenPaths::new();
        let expected: Vec<(EdgePath, Option<bool>)> = if f.is_knot() {
            vec![(memo.knot(f)?, None)]
        } else {
            let (e0, e1) = memo.link(f)?;
            vec![(e0, Some(false)), (e1, Some(true))]
        };
        if evens.len() != expected.len() {
            return Ok(Err(format!("{} even minimal paths", evens.len())));
        }
        for (e, odd_parent) in &expected {
            if !evens.contains(e) {
                return Ok(Err(format!("{e:?} is not among the even minimal paths")));
            }
            let v = e.vertices();
            if let Some(odd) = odd_parent {
                if v[v.len() - 2].num().is_odd() != *odd {
                    return Ok(Err(format!("{e:?} arrives through the wrong parent")));
                }
            }
            for (a, b) in e.edges().skip(1) {
                if edge_kind(a, b)? == EdgeKind::C {
                    return Ok(Err(format!("{e:?} uses the C-type edge {a} -> {b}")));
                }
            }
        }
        Ok(Ok(()))
    }));

    let plats: Vec<Fraction> = items.iter().filter(|f| f.den() <= &opts.checkerboard_max_q.into()).cloned().collect();
    out.push(run("4-plat checkerboard slopes", &plats, |f| {
        let d = four_plat_diagram(f)?;
        let cs = checkerboard_slopes(&d)?;
        if d.n != if f.is_knot() { 1 } else { 2 } {
            return Ok(Err(format!("{} components", d.n)));
        }
        if !slope_sum_identity(&d)? {
            return Ok(Err(format!("slope sum identity fails for {cs:?}")));
        }
        if diagonal_lower_bound(&d)? == Some(false) {
            return Ok(Err(format!("diagonal surfaces {cs:?} beat the lower bound")));
        }
        if f.is_knot() {
            let r = slope_report(f, 1)?;
            if (cs.s[0], cs.t[0]) != (r.slope_max, r.slope_min) {
                return Ok(Err(format!("{cs:?} against slope range [{}, {}]", r.slope_min, r.slope_max)));
            }
        }
        Ok(Ok(()))
    }));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clean_run_passes() {
        let report = verify(&VerifyOptions::new(40, Suite::All));
        assert!(report.passed(), "{report}");
        assert_eq!(report.checks.len(), 13);
        assert!(report.checks.iter().all(|c| c.cases > 0));
    }

    #[test]
    fn empty_range_passes() {
        let report = verify(&VerifyOptions::new(1, Suite::All));
        assert!(report.passed());
        assert!(report.checks.iter().all(|c| c.cases == 0));
    }

    #[test]
    fn fault_is_caught_by_sigma_recursion() {
        let mut opts = VerifyOptions::new(20, Suite::Lemmas);
        opts.fault = Some(Fault::Sigma0OffByOne);
        let report = verify(&opts);
        assert!(!report.passed());
        let fail = report.first_failure().unwrap();
        assert_eq!(fail.name, "sigma sums of children");
        assert_eq!(fail.counterexample.as_deref().unwrap().split(':').next(), Some("1/2"));
        assert!(fail.counterexample.as_deref().unwrap().contains("parents 0/1, 1/1"));
    }

    #[test]
    fn suites_parse() {
        assert_eq!("lemmas".parse::<Suite>(), Ok(Suite::Lemmas));
        assert!("everything".parse::<Suite>().is_err());
        assert_eq!(verify(&VerifyOptions::new(10, Suite::Theorems)).checks.len(), 5);
    }
}
